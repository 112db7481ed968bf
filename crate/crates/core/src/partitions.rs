//! Partitions (Young-diagram board shapes), exact rook-placement counting,
//! dilation, feasibility, and brute-force oracles.
//!
//! Conventions used everywhere in this crate: a partition `[p1, p2, ...]`
//! is weakly decreasing; rows of the board are numbered from the top, so
//! row `i` (1-based) has `parts[n - i]` boxes and the bottom row is the
//! longest. A shape with exactly `n` parts and first part `n` is called a
//! *board*; a board is *feasible* when it admits at least one placement,
//! which happens exactly when `parts[i] >= n - i` for 0-based `i`.

use std::fmt;
use std::str::FromStr;

use num_bigint::BigUint;
use num_integer::binomial;
use serde::{Deserialize, Serialize};

use crate::{Error, Result};

/// Default cap for [`brute_force_rook_placements`].
pub const BRUTE_FORCE_CAP: u64 = 9;
/// Default cap for [`enumerate_boards`] and [`enumerate_feasible_boards`].
pub const ENUMERATION_CAP: u64 = 14;

/// A weakly decreasing sequence of positive integers.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(try_from = "Vec<u64>", into = "Vec<u64>")]
pub struct Partition {
    parts: Vec<u64>,
}

impl Partition {
    pub fn new(parts: Vec<u64>) -> Result<Self> {
        for w in parts.windows(2) {
            if w[0] < w[1] {
                return Err(Error::MalformedPartition(format!(
                    "parts must be weakly decreasing, got {} before {}",
                    w[0], w[1]
                )));
            }
        }
        if parts.iter().any(|&p| p == 0) {
            return Err(Error::MalformedPartition("parts must be positive".into()));
        }
        Ok(Self { parts })
    }

    /// The `n x n` square shape `[n, n, ..., n]`.
    pub fn square(n: u64) -> Self {
        Self {
            parts: vec![n; n as usize],
        }
    }

    pub fn parts(&self) -> &[u64] {
        &self.parts
    }

    pub fn num_parts(&self) -> usize {
        self.parts.len()
    }

    pub fn is_empty(&self) -> bool {
        self.parts.is_empty()
    }

    /// Number of boxes in row `i` counted from the top (1-based).
    pub fn row_len_from_top(&self, i: usize) -> u64 {
        self.parts[self.parts.len() - i]
    }

    /// Exactly `n` parts with first part `n`.
    pub fn is_board(&self) -> bool {
        !self.parts.is_empty() && self.parts[0] as usize == self.parts.len()
    }

    /// Board shape admitting at least one placement: `parts[i] >= n - i`.
    pub fn is_feasible(&self) -> bool {
        self.is_board()
            && self
                .parts
                .iter()
                .enumerate()
                .all(|(i, &p)| p >= (self.parts.len() - i) as u64)
    }

    fn require_board(&self) -> Result<usize> {
        if self.is_board() {
            Ok(self.parts.len())
        } else {
            Err(Error::NotABoard)
        }
    }

    fn require_feasible(&self) -> Result<usize> {
        let n = self.require_board()?;
        if self.is_feasible() {
            Ok(n)
        } else {
            Err(Error::InfeasibleShape)
        }
    }

    /// Replace every box by an `m x m` block: part `p` becomes `m` copies
    /// of `m * p`.
    pub fn dilate(&self, m: u64) -> Partition {
        assert!(m >= 1, "dilation factor must be positive");
        let mut parts = Vec::with_capacity(self.parts.len() * m as usize);
        for &p in &self.parts {
            for _ in 0..m {
                parts.push(m * p);
            }
        }
        Partition { parts }
    }

    /// Transpose of the diagram.
    pub fn conjugate(&self) -> Partition {
        if self.parts.is_empty() {
            return Partition { parts: Vec::new() };
        }
        let cols = self.parts[0] as usize;
        let mut parts = Vec::with_capacity(cols);
        for j in 1..=cols as u64 {
            parts.push(self.parts.iter().take_while(|&&p| p >= j).count() as u64);
        }
        Partition { parts }
    }

    /// Shortest maximal run of equal steps in the boundary path
    /// `R^{r_1} D^{d_1} R^{r_2} ...` from `(0, n)` to `(n, 0)`.
    pub fn minimum_run(&self) -> Result<u64> {
        let n = self.require_feasible()?;
        let mut runs: Vec<u64> = Vec::new();
        let mut right_run = 0u64;
        for i in 0..n {
            right_run += 1;
            let next = if i + 1 < n { self.parts[i + 1] } else { 0 };
            let down = self.parts[i] - next;
            if down > 0 {
                runs.push(right_run);
                runs.push(down);
                right_run = 0;
            }
        }
        Ok(runs.into_iter().min().expect("boundary has at least two runs"))
    }

    /// 0-based indices `i` such that the boundary path meets the open
    /// anti-diagonal segment at `(i + 1, n - i - 1)`.
    ///
    /// For a feasible board the path touches that lattice point exactly
    /// when `parts[i + 1] == n - i - 1` (1-based: `lambda_{i+1} = n - i`).
    pub fn ground_bumps(&self) -> Result<Vec<usize>> {
        let n = self.require_feasible()?;
        Ok((0..n.saturating_sub(1))
            .filter(|&i| self.parts[i + 1] == (n - i - 1) as u64)
            .collect())
    }

    /// Split the boundary path at every ground bump and return the
    /// bump-free components as standalone board shapes.
    ///
    /// The component between bump heights `n - a` and `n - b` (`a < b`)
    /// keeps parts `a..b` lowered by `n - b`; its first part equals its
    /// part count, and concatenating the component paths recovers the
    /// original shape.
    pub fn ground_bump_decomposition(&self) -> Result<Vec<Partition>> {
        let n = self.require_feasible()?;
        let bumps = self.ground_bumps()?;
        let mut cuts = Vec::with_capacity(bumps.len() + 2);
        cuts.push(0usize);
        cuts.extend(bumps.iter().map(|&i| i + 1));
        cuts.push(n);
        let mut components = Vec::with_capacity(cuts.len() - 1);
        for w in cuts.windows(2) {
            let (start, end) = (w[0], w[1]);
            let drop = (n - end) as u64;
            let parts: Vec<u64> = self.parts[start..end].iter().map(|&p| p - drop).collect();
            components.push(Partition { parts });
        }
        Ok(components)
    }
}

impl fmt::Display for Partition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut first = true;
        for p in &self.parts {
            if !first {
                write!(f, ",")?;
            }
            write!(f, "{p}")?;
            first = false;
        }
        Ok(())
    }
}

impl FromStr for Partition {
    type Err = Error;

    /// Parse the CLI text format: comma-separated descending integers,
    /// e.g. `4,3,3,2`.
    fn from_str(s: &str) -> Result<Self> {
        let parts = s
            .split(',')
            .map(|tok| {
                tok.trim()
                    .parse::<u64>()
                    .map_err(|_| Error::MalformedPartition(format!("bad part {tok:?}")))
            })
            .collect::<Result<Vec<u64>>>()?;
        Partition::new(parts)
    }
}

impl TryFrom<Vec<u64>> for Partition {
    type Error = Error;

    fn try_from(parts: Vec<u64>) -> Result<Self> {
        Partition::new(parts)
    }
}

impl From<Partition> for Vec<u64> {
    fn from(p: Partition) -> Vec<u64> {
        p.parts
    }
}

/// A permutation restricted to a board shape, stored as the 1-based column
/// of the rook in each row, rows numbered from the top.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct RookPlacement {
    cols: Vec<u32>,
}

impl RookPlacement {
    pub fn new(cols: Vec<u32>) -> Result<Self> {
        let n = cols.len() as u32;
        let mut seen = vec![false; cols.len()];
        for &c in &cols {
            if c == 0 || c > n || seen[(c - 1) as usize] {
                return Err(Error::MalformedPartition(format!(
                    "cols {cols:?} is not a permutation of 1..={n}"
                )));
            }
            seen[(c - 1) as usize] = true;
        }
        Ok(Self { cols })
    }

    pub fn n(&self) -> usize {
        self.cols.len()
    }

    /// 1-based column of the rook in (1-based, top-indexed) row `i`.
    pub fn col(&self, i: usize) -> u32 {
        self.cols[i - 1]
    }

    pub fn cols(&self) -> &[u32] {
        &self.cols
    }

    /// Support condition: the rook in row `i` lies within the row's boxes.
    pub fn fits(&self, shape: &Partition) -> bool {
        shape.num_parts() == self.cols.len()
            && (1..=self.cols.len()).all(|i| u64::from(self.col(i)) <= shape.row_len_from_top(i))
    }
}

/// `prod_i (lambda_i - (n - i))`, the number of placements of a board
/// shape. Factors are consumed left to right and any nonpositive factor
/// makes the count exactly zero, matching the combinatorial truth for
/// infeasible shapes.
pub fn count_rook_placements(shape: &Partition) -> Result<BigUint> {
    let n = shape.require_board()?;
    let mut acc = BigUint::from(1u32);
    for (idx, &p) in shape.parts().iter().enumerate() {
        let factor = p as i64 - (n - 1 - idx) as i64;
        if factor <= 0 {
            return Ok(BigUint::ZERO);
        }
        acc *= BigUint::from(factor as u64);
    }
    Ok(acc)
}

/// `m!^n * prod_i C(m * (lambda_i - (n - i)), m)`, the placement count of
/// the `m`-fold dilation of a board shape. Agrees with
/// [`count_rook_placements`] applied to [`Partition::dilate`] in all
/// cases, including the zero-clamped infeasible ones.
pub fn count_rook_placements_dilated(shape: &Partition, m: u64) -> Result<BigUint> {
    assert!(m >= 1, "dilation factor must be positive");
    let n = shape.require_board()?;
    let mut acc = BigUint::from(1u32);
    for (idx, &p) in shape.parts().iter().enumerate() {
        let factor = p as i64 - (n - 1 - idx) as i64;
        if factor <= 0 {
            return Ok(BigUint::ZERO);
        }
        acc *= binomial(BigUint::from(m * factor as u64), BigUint::from(m));
    }
    let m_factorial: BigUint = (1..=m).map(BigUint::from).product();
    Ok(acc * m_factorial.pow(n as u32))
}

/// `sum_i log(lambda_i - (n - i))` with Kahan compensation; requires a
/// feasible shape so every factor is strictly positive.
pub fn log_count_rook_placements(shape: &Partition) -> Result<f64> {
    let n = shape.require_board()?;
    let mut sum = 0.0f64;
    let mut comp = 0.0f64;
    for (idx, &p) in shape.parts().iter().enumerate() {
        let factor = p as i64 - (n - 1 - idx) as i64;
        if factor <= 0 {
            return Err(Error::LogOfZeroCount(factor));
        }
        let term = (factor as f64).ln();
        let y = term - comp;
        let t = sum + y;
        comp = (t - sum) - y;
        sum = t;
    }
    Ok(sum)
}

/// Exhaustive list of all placements of the shape, in lexicographic order
/// of the `cols` vector. Intended as a test oracle; capped at
/// [`BRUTE_FORCE_CAP`] rows.
pub fn brute_force_rook_placements(shape: &Partition) -> Result<Vec<RookPlacement>> {
    brute_force_rook_placements_with_cap(shape, BRUTE_FORCE_CAP)
}

pub fn brute_force_rook_placements_with_cap(
    shape: &Partition,
    cap: u64,
) -> Result<Vec<RookPlacement>> {
    let n = shape.require_board()?;
    if n as u64 > cap {
        return Err(Error::CapExceeded {
            what: "brute-force board size",
            requested: n as u64,
            cap,
        });
    }
    let mut out = Vec::new();
    let mut cols = Vec::with_capacity(n);
    let mut used = vec![false; n + 1];
    fn recurse(
        shape: &Partition,
        n: usize,
        row: usize,
        cols: &mut Vec<u32>,
        used: &mut Vec<bool>,
        out: &mut Vec<RookPlacement>,
    ) {
        if row > n {
            out.push(RookPlacement {
                cols: cols.clone(),
            });
            return;
        }
        let limit = shape.row_len_from_top(row);
        for c in 1..=limit.min(n as u64) as usize {
            if !used[c] {
                used[c] = true;
                cols.push(c as u32);
                recurse(shape, n, row + 1, cols, used, out);
                cols.pop();
                used[c] = false;
            }
        }
    }
    recurse(shape, n, 1, &mut cols, &mut used, &mut out);
    Ok(out)
}

/// All board shapes of size `n` (exactly `n` parts, first part `n`),
/// streamed in descending lexicographic order starting from the square.
pub fn enumerate_boards(n: u64) -> Result<BoardIter> {
    enumerate_boards_with_cap(n, ENUMERATION_CAP)
}

pub fn enumerate_boards_with_cap(n: u64, cap: u64) -> Result<BoardIter> {
    if n > cap {
        return Err(Error::CapExceeded {
            what: "board size",
            requested: n,
            cap,
        });
    }
    Ok(BoardIter::new(n, false))
}

/// The feasible board shapes of size `n`, in the same order.
pub fn enumerate_feasible_boards(n: u64) -> Result<BoardIter> {
    enumerate_feasible_boards_with_cap(n, ENUMERATION_CAP)
}

pub fn enumerate_feasible_boards_with_cap(n: u64, cap: u64) -> Result<BoardIter> {
    if n > cap {
        return Err(Error::CapExceeded {
            what: "board size",
            requested: n,
            cap,
        });
    }
    Ok(BoardIter::new(n, true))
}

/// Odometer over weakly decreasing part vectors with per-position lower
/// bounds (1 for all boards, `n - i` for feasible ones).
pub struct BoardIter {
    current: Option<Vec<u64>>,
    lower: Vec<u64>,
}

impl BoardIter {
    fn new(n: u64, feasible_only: bool) -> Self {
        if n == 0 {
            return Self {
                current: None,
                lower: Vec::new(),
            };
        }
        let lower: Vec<u64> = (0..n)
            .map(|i| if feasible_only { n - i } else { 1 })
            .collect();
        Self {
            current: Some(vec![n; n as usize]),
            lower,
        }
    }
}

impl Iterator for BoardIter {
    type Item = Partition;

    fn next(&mut self) -> Option<Partition> {
        let parts = self.current.as_mut()?;
        let item = Partition {
            parts: parts.clone(),
        };
        // Decrement the rightmost position still above its lower bound,
        // then reset the suffix to the largest values allowed.
        let mut pos = None;
        for i in (1..parts.len()).rev() {
            if parts[i] > self.lower[i] {
                pos = Some(i);
                break;
            }
        }
        match pos {
            Some(i) => {
                parts[i] -= 1;
                for j in i + 1..parts.len() {
                    parts[j] = parts[i];
                }
            }
            None => self.current = None,
        }
        Some(item)
    }
}
