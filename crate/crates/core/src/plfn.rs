//! Weakly decreasing piecewise linear profiles on `[0, 1]` and their
//! discretization to board shapes.
//!
//! Two representations exist. [`PiecewiseLinearFn`] is the general class:
//! exact rational breakpoints, per-piece slope/intercept, and explicit
//! values at breakpoints (which may differ from both one-sided limits).
//! It is generic over the coefficient scalar: [`ExactPlf`] keeps every
//! quantity an exact rational, [`FloatPlf`] admits irrational slopes and
//! values at the cost of float arithmetic. [`CombinatorialFn`] is the
//! integer subclass on the `1/k` grid whose members discretize with zero
//! rounding error; it is the input type for the sharp asymptotics.

use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::{Deserialize, Serialize};

use crate::partitions::Partition;
use crate::ratio::{format_ratio, ratio_from_u64};
use crate::{Error, Result};

/// Float-backed ceilings snap to the nearest integer when within this
/// distance of one, since an exact ceiling of an irrational value is not
/// decidable from its double approximation.
pub const CEIL_SNAP_TOLERANCE: f64 = 1e-9;

/// Scalar type for piece coefficients and function values: exact rationals
/// or doubles.
pub trait Coefficient:
    Clone
    + PartialEq
    + PartialOrd
    + Add<Output = Self>
    + Sub<Output = Self>
    + Mul<Output = Self>
    + Neg<Output = Self>
    + Zero
    + One
{
    const FLOAT_BACKED: bool;

    fn from_ratio(r: &BigRational) -> Self;
    fn to_f64(&self) -> f64;
    /// Smallest integer `>= self` (snapped for the float-backed variant).
    fn ceil_to_i64(&self) -> i64;
}

impl Coefficient for BigRational {
    const FLOAT_BACKED: bool = false;

    fn from_ratio(r: &BigRational) -> Self {
        r.clone()
    }

    fn to_f64(&self) -> f64 {
        crate::ratio::ratio_to_f64(self)
    }

    fn ceil_to_i64(&self) -> i64 {
        self.ceil().to_integer().to_i64().expect("ceiling fits i64")
    }
}

impl Coefficient for f64 {
    const FLOAT_BACKED: bool = true;

    fn from_ratio(r: &BigRational) -> Self {
        crate::ratio::ratio_to_f64(r)
    }

    fn to_f64(&self) -> f64 {
        *self
    }

    fn ceil_to_i64(&self) -> i64 {
        let nearest = self.round();
        if (self - nearest).abs() < CEIL_SNAP_TOLERANCE {
            nearest as i64
        } else {
            self.ceil() as i64
        }
    }
}

/// One linear piece `x -> slope * x + intercept`.
#[derive(Debug, Clone, PartialEq)]
pub struct Piece<S> {
    pub slope: S,
    pub intercept: S,
}

impl<S: Coefficient> Piece<S> {
    fn value_at(&self, x: &BigRational) -> S {
        self.slope.clone() * S::from_ratio(x) + self.intercept.clone()
    }

    fn is_constant_one(&self) -> bool {
        self.slope.is_zero() && self.intercept.is_one()
    }
}

/// Membership axioms for the admissible profile class, in the order they
/// are reported by [`PiecewiseLinearFn::validate_class_p`].
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum Axiom {
    /// Slopes are nonpositive and breakpoint values sit between the
    /// one-sided limits.
    WeaklyDecreasing,
    /// The function is identically 1 on an initial interval.
    InitialPlateau,
    /// `0 < f(x) <= 1` everywhere.
    UnitRange,
    /// `f(1) > 0`.
    PositiveAtOne,
    /// `lim_{x -> a+} f(x) > 1 - a` for every interior `a`.
    RightLimitsAboveAntidiagonal,
}

#[derive(Debug, Clone, Serialize)]
pub struct AxiomCheck {
    pub axiom: Axiom,
    pub passed: bool,
    /// First violating point, when the axiom fails.
    pub detail: Option<String>,
}

#[derive(Debug, Clone, Serialize)]
pub struct ValidationReport {
    pub checks: Vec<AxiomCheck>,
}

impl ValidationReport {
    pub fn is_valid(&self) -> bool {
        self.checks.iter().all(|c| c.passed)
    }

    pub fn first_failure(&self) -> Option<&AxiomCheck> {
        self.checks.iter().find(|c| !c.passed)
    }
}

/// A piecewise linear profile with exact rational breakpoints in `(0, 1)`.
///
/// Piece `i` governs the open interval between breakpoints `i - 1` and
/// `i` (with 0 and 1 as implicit outer endpoints); the function's value at
/// a breakpoint is stored explicitly and may differ from both one-sided
/// limits. The value at `x = 1` is the last piece's value there.
#[derive(Debug, Clone, PartialEq)]
pub struct PiecewiseLinearFn<S> {
    breakpoints: Vec<BigRational>,
    pieces: Vec<Piece<S>>,
    breakpoint_values: Vec<S>,
}

pub type ExactPlf = PiecewiseLinearFn<BigRational>;
pub type FloatPlf = PiecewiseLinearFn<f64>;

impl<S: Coefficient> PiecewiseLinearFn<S> {
    pub fn new(
        breakpoints: Vec<BigRational>,
        pieces: Vec<Piece<S>>,
        breakpoint_values: Vec<S>,
    ) -> Result<Self> {
        if pieces.len() != breakpoints.len() + 1 {
            return Err(Error::InvalidFunction(format!(
                "need {} pieces for {} breakpoints, got {}",
                breakpoints.len() + 1,
                breakpoints.len(),
                pieces.len()
            )));
        }
        if breakpoint_values.len() != breakpoints.len() {
            return Err(Error::InvalidFunction(
                "need one explicit value per breakpoint".into(),
            ));
        }
        let zero = BigRational::zero();
        let one = BigRational::one();
        for w in breakpoints.windows(2) {
            if w[0] >= w[1] {
                return Err(Error::InvalidFunction(
                    "breakpoints must be strictly increasing".into(),
                ));
            }
        }
        if let (Some(first), Some(last)) = (breakpoints.first(), breakpoints.last()) {
            if *first <= zero || *last >= one {
                return Err(Error::InvalidFunction(
                    "breakpoints must lie strictly inside (0, 1)".into(),
                ));
            }
        }
        Ok(Self {
            breakpoints,
            pieces,
            breakpoint_values,
        })
    }

    /// The profile that is identically 1.
    pub fn constant_one() -> Self {
        Self {
            breakpoints: Vec::new(),
            pieces: vec![Piece {
                slope: S::zero(),
                intercept: S::one(),
            }],
            breakpoint_values: Vec::new(),
        }
    }

    pub fn breakpoints(&self) -> &[BigRational] {
        &self.breakpoints
    }

    pub fn pieces(&self) -> &[Piece<S>] {
        &self.pieces
    }

    pub fn breakpoint_values(&self) -> &[S] {
        &self.breakpoint_values
    }

    /// Endpoints `(left, right)` of piece `i`'s interval.
    pub fn piece_interval(&self, i: usize) -> (BigRational, BigRational) {
        let left = if i == 0 {
            BigRational::zero()
        } else {
            self.breakpoints[i - 1].clone()
        };
        let right = if i == self.breakpoints.len() {
            BigRational::one()
        } else {
            self.breakpoints[i].clone()
        };
        (left, right)
    }

    fn check_domain(x: &BigRational) -> Result<()> {
        if *x < BigRational::zero() || *x > BigRational::one() {
            return Err(Error::IndexOutOfRange(format!(
                "query point {} outside [0, 1]",
                format_ratio(x)
            )));
        }
        Ok(())
    }

    /// Index of the piece whose open interval contains `x`, or the
    /// breakpoint index when `x` is a breakpoint.
    fn locate(&self, x: &BigRational) -> Located {
        match self.breakpoints.binary_search_by(|b| b.cmp(x)) {
            Ok(j) => Located::Breakpoint(j),
            Err(j) => Located::Piece(j),
        }
    }

    /// `f(x)`, honoring explicit breakpoint values.
    pub fn evaluate(&self, x: &BigRational) -> Result<S> {
        Self::check_domain(x)?;
        Ok(match self.locate(x) {
            Located::Breakpoint(j) => self.breakpoint_values[j].clone(),
            Located::Piece(i) => self.pieces[i].value_at(x),
        })
    }

    /// `lim_{x -> a+} f(x)` for `a` in `[0, 1)`.
    pub fn right_limit(&self, a: &BigRational) -> Result<S> {
        Self::check_domain(a)?;
        if *a >= BigRational::one() {
            return Err(Error::IndexOutOfRange(
                "right limit needs a point in [0, 1)".into(),
            ));
        }
        Ok(match self.locate(a) {
            Located::Breakpoint(j) => self.pieces[j + 1].value_at(a),
            Located::Piece(i) => self.pieces[i].value_at(a),
        })
    }

    /// `lim_{x -> a-} f(x)` for `a` in `(0, 1]`.
    pub fn left_limit(&self, a: &BigRational) -> Result<S> {
        Self::check_domain(a)?;
        if *a <= BigRational::zero() {
            return Err(Error::IndexOutOfRange(
                "left limit needs a point in (0, 1]".into(),
            ));
        }
        Ok(match self.locate(a) {
            Located::Breakpoint(j) => self.pieces[j].value_at(a),
            Located::Piece(i) => self.pieces[i].value_at(a),
        })
    }

    /// Check the class axioms one by one; failures report the first
    /// violating point instead of erroring.
    pub fn validate_class_p(&self) -> ValidationReport {
        let mut checks = Vec::with_capacity(5);

        // Weakly decreasing: nonpositive slopes, and at each breakpoint
        // left limit >= value >= right limit.
        let mut detail = None;
        for (i, piece) in self.pieces.iter().enumerate() {
            if piece.slope > S::zero() {
                let (left, _) = self.piece_interval(i);
                detail = Some(format!("positive slope on piece starting at {}", format_ratio(&left)));
                break;
            }
        }
        if detail.is_none() {
            for (j, rho) in self.breakpoints.iter().enumerate() {
                let left = self.pieces[j].value_at(rho);
                let right = self.pieces[j + 1].value_at(rho);
                let value = &self.breakpoint_values[j];
                if left < *value || *value < right {
                    detail = Some(format!("value out of order at {}", format_ratio(rho)));
                    break;
                }
            }
        }
        checks.push(AxiomCheck {
            axiom: Axiom::WeaklyDecreasing,
            passed: detail.is_none(),
            detail,
        });

        // Initial plateau: the first piece is identically 1.
        let plateau_ok = self.pieces[0].is_constant_one();
        checks.push(AxiomCheck {
            axiom: Axiom::InitialPlateau,
            passed: plateau_ok,
            detail: (!plateau_ok).then(|| "first piece is not identically 1".into()),
        });

        // Unit range: every attained or one-sided-limit value is in (0, 1].
        let mut detail = None;
        'range: for (i, piece) in self.pieces.iter().enumerate() {
            let (left, right) = self.piece_interval(i);
            for x in [&left, &right] {
                let v = piece.value_at(x);
                if v <= S::zero() || v > S::one() {
                    detail = Some(format!("value {} at {}", v.to_f64(), format_ratio(x)));
                    break 'range;
                }
            }
        }
        if detail.is_none() {
            for (j, v) in self.breakpoint_values.iter().enumerate() {
                if *v <= S::zero() || *v > S::one() {
                    detail = Some(format!(
                        "breakpoint value {} at {}",
                        v.to_f64(),
                        format_ratio(&self.breakpoints[j])
                    ));
                    break;
                }
            }
        }
        checks.push(AxiomCheck {
            axiom: Axiom::UnitRange,
            passed: detail.is_none(),
            detail,
        });

        // f(1) > 0.
        let one = BigRational::one();
        let at_one = self.pieces.last().expect("at least one piece").value_at(&one);
        let positive = at_one > S::zero();
        checks.push(AxiomCheck {
            axiom: Axiom::PositiveAtOne,
            passed: positive,
            detail: (!positive).then(|| format!("f(1) = {}", at_one.to_f64())),
        });

        // Right limits strictly above the anti-diagonal. On each piece the
        // gap g(x) = f_i(x) + x - 1 is linear, so it is positive on the
        // open interval iff both endpoint limits are >= 0 and not both
        // zero; at an interior left endpoint the limit must be strictly
        // positive because that point itself is queried.
        let mut detail = None;
        for (i, piece) in self.pieces.iter().enumerate() {
            let (left, right) = self.piece_interval(i);
            let g_left = piece.value_at(&left) + S::from_ratio(&left) - S::one();
            let g_right = piece.value_at(&right) + S::from_ratio(&right) - S::one();
            if i > 0 && g_left <= S::zero() {
                detail = Some(format!("right limit at a = {}", format_ratio(&left)));
                break;
            }
            if g_right < S::zero() || (g_right.is_zero() && g_left.is_zero()) {
                detail = Some(format!(
                    "right limits approaching a = {}",
                    format_ratio(&right)
                ));
                break;
            }
        }
        checks.push(AxiomCheck {
            axiom: Axiom::RightLimitsAboveAntidiagonal,
            passed: detail.is_none(),
            detail,
        });

        ValidationReport { checks }
    }

    fn require_valid(&self) -> Result<()> {
        let report = self.validate_class_p();
        match report.first_failure() {
            None => Ok(()),
            Some(check) => Err(Error::InvalidFunction(format!(
                "class axiom {:?} fails: {}",
                check.axiom,
                check.detail.as_deref().unwrap_or("")
            ))),
        }
    }

    /// End of the initial plateau: the supremum of `x` with `f = 1` on
    /// `[0, x]`.
    fn plateau_end(&self) -> BigRational {
        let mut end = BigRational::zero();
        for (i, piece) in self.pieces.iter().enumerate() {
            if !piece.is_constant_one() {
                break;
            }
            let (_, right) = self.piece_interval(i);
            end = right;
            if i < self.breakpoint_values.len() && !self.breakpoint_values[i].is_one() {
                break;
            }
        }
        end
    }

    /// The loft: the largest `eps` such that `f = 1` on `[0, eps]` and
    /// `f(x) > 1 - x + eps` beyond, as the supremum of the admissible set.
    ///
    /// Computed in closed form: the supremum equals the smaller of the
    /// plateau end `P` and the infimum of the gap `f(x) + x - 1` over
    /// `[P, 1]`, and the infimum of a piecewise linear function is the
    /// minimum over piece-endpoint limits, explicit breakpoint values, and
    /// the endpoints themselves.
    pub fn loft(&self) -> Result<S> {
        self.require_valid()?;
        let plateau = self.plateau_end();
        let mut best = S::from_ratio(&plateau);

        let gap = |value: S, x: &BigRational| value + S::from_ratio(x) - S::one();
        let mut consider = |candidate: S| {
            if candidate < best {
                best = candidate;
            }
        };

        consider(gap(self.evaluate(&plateau)?, &plateau));
        for (i, piece) in self.pieces.iter().enumerate() {
            let (left, right) = self.piece_interval(i);
            if right <= plateau {
                continue;
            }
            let from = if left < plateau { &plateau } else { &left };
            consider(gap(piece.value_at(from), from));
            consider(gap(piece.value_at(&right), &right));
        }
        for (j, rho) in self.breakpoints.iter().enumerate() {
            if *rho >= plateau {
                consider(gap(self.breakpoint_values[j].clone(), rho));
            }
        }
        let one = BigRational::one();
        consider(gap(self.pieces.last().expect("nonempty").value_at(&one), &one));
        Ok(best)
    }

    /// Every breakpoint times `n` must be an integer.
    fn check_grid(&self, n: u64) -> Result<()> {
        let n_rat = ratio_from_u64(n);
        for rho in &self.breakpoints {
            if !(rho * &n_rat).is_integer() {
                return Err(Error::GridMismatch {
                    n,
                    breakpoint: format_ratio(rho),
                });
            }
        }
        Ok(())
    }

    /// The `n`-part board shape with parts `ceil(n * f(i/n))`.
    pub fn young_diagram(&self, n: u64) -> Result<Partition> {
        self.require_valid()?;
        self.check_grid(n)?;
        let mut parts = Vec::with_capacity(n as usize);
        for i in 1..=n {
            let x = BigRational::new(BigInt::from(i), BigInt::from(n));
            let scaled = self.evaluate(&x)? * S::from_ratio(&ratio_from_u64(n));
            let part = scaled.ceil_to_i64();
            if part <= 0 {
                return Err(Error::InvalidFunction(format!(
                    "nonpositive part at row {i}"
                )));
            }
            parts.push(part as u64);
        }
        Partition::new(parts)
    }

    /// `R(f, n)`: the total log-inflation caused by the ceilings in
    /// [`Self::young_diagram`]. Zero exactly when every `n * f(i/n)` is an
    /// integer; always nonnegative.
    pub fn rounding_discrepancy(&self, n: u64) -> Result<f64> {
        self.require_valid()?;
        self.check_grid(n)?;
        let mut sum = 0.0f64;
        let mut comp = 0.0f64;
        for i in 1..=n {
            let x = BigRational::new(BigInt::from(i), BigInt::from(n));
            let scaled = self.evaluate(&x)? * S::from_ratio(&ratio_from_u64(n));
            let ceil = scaled.ceil_to_i64() as f64;
            let exact = scaled.to_f64() + i as f64 - n as f64;
            let term = (ceil + i as f64 - n as f64).ln() - exact.ln();
            let y = term - comp;
            let t = sum + y;
            comp = (t - sum) - y;
            sum = t;
        }
        Ok(sum)
    }
}

enum Located {
    Breakpoint(usize),
    Piece(usize),
}

/// Raw serde image of [`CombinatorialFn`]; `k` may be omitted and is then
/// inferred from the number of values.
#[derive(Debug, Clone, Serialize, Deserialize)]
struct CombinatorialFnRaw {
    #[serde(default)]
    k: Option<u32>,
    values: Vec<i64>,
    slopes: Vec<i64>,
}

/// A profile on the `1/k` grid with integer data: `values[i] = k * f((i+1)/k)`
/// and nonpositive integer `slopes[i]` on the half-open piece
/// `((i)/k, (i+1)/k]`. Upper semicontinuity makes these profiles
/// left-continuous, and their `young_diagram` has zero rounding
/// discrepancy on multiples of `k`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(try_from = "CombinatorialFnRaw", into = "CombinatorialFnRaw")]
pub struct CombinatorialFn {
    k: u32,
    values: Vec<i64>,
    slopes: Vec<i64>,
}

impl CombinatorialFn {
    pub fn new(k: u32, values: Vec<i64>, slopes: Vec<i64>) -> Result<Self> {
        let bad = |msg: String| Err(Error::InvalidFunction(msg));
        if k == 0 {
            return bad("k must be positive".into());
        }
        if values.len() != k as usize || slopes.len() != k as usize {
            return bad(format!("need exactly k = {k} values and slopes"));
        }
        let k_i = i64::from(k);
        if values[0] != k_i || slopes[0] != 0 {
            return bad("first piece must be identically 1".into());
        }
        for (idx, (&v, &s)) in values.iter().zip(&slopes).enumerate() {
            let i = idx as i64 + 1; // 1-based piece index
            if s > 0 {
                return bad(format!("slope {s} on piece {i} is positive"));
            }
            if v < 1 || v > k_i {
                return bad(format!("value {v} on piece {i} outside [1, k]"));
            }
            if i < k_i && v + i <= k_i {
                return bad(format!("sample value at {i}/{k} touches the anti-diagonal"));
            }
            if i >= 2 {
                if v - s + (i - 1) <= k_i {
                    return bad(format!(
                        "right limit entering piece {i} touches the anti-diagonal"
                    ));
                }
                if values[idx - 1] < v - s {
                    return bad(format!("upper semicontinuity fails at {}/{k}", i - 1));
                }
            }
        }
        Ok(Self { k, values, slopes })
    }

    /// The constant profile `f = 1`.
    pub fn constant_one(k: u32) -> Self {
        let mut values = vec![i64::from(k); k as usize];
        values[0] = i64::from(k);
        Self {
            k,
            values,
            slopes: vec![0; k as usize],
        }
    }

    /// Straight descent `f(x) = min(1 + 1/k - x, 1)`: slope `-1` after the
    /// plateau. Attains the smallest possible linear coefficient `B`.
    pub fn ramp(k: u32) -> Self {
        let k_i = i64::from(k);
        let values = (1..=k_i).map(|i| if i == 1 { k_i } else { k_i + 1 - i }).collect();
        let slopes = (1..=k_i).map(|i| if i == 1 { 0 } else { -1 }).collect();
        Self {
            k,
            values,
            slopes,
        }
    }

    /// Unit-step staircase `f(x) = min(1 + (2 - ceil(kx))/k, 1)`: constant
    /// pieces dropping by `1/k` at each grid point. Attains the largest
    /// possible constant coefficient `D`.
    pub fn staircase(k: u32) -> Self {
        let k_i = i64::from(k);
        let values = (1..=k_i).map(|i| if i == 1 { k_i } else { k_i + 2 - i }).collect();
        Self {
            k,
            values,
            slopes: vec![0; k as usize],
        }
    }

    pub fn k(&self) -> u32 {
        self.k
    }

    pub fn values(&self) -> &[i64] {
        &self.values
    }

    pub fn slopes(&self) -> &[i64] {
        &self.slopes
    }

    /// `k * f(i/k)` for 1-based `i`.
    pub fn value(&self, i: usize) -> i64 {
        self.values[i - 1]
    }

    pub fn slope(&self, i: usize) -> i64 {
        self.slopes[i - 1]
    }

    /// `k * lim_{x -> ((i-1)/k)+} f(x)` for piece `i >= 1`.
    pub fn right_limit_numerator(&self, i: usize) -> i64 {
        self.value(i) - self.slope(i)
    }

    /// Downward jump `k * (f(i/k) - lim_{x -> (i/k)+} f(x))` at the grid
    /// point `i/k`, for `1 <= i <= k - 1`.
    pub fn jump(&self, i: usize) -> i64 {
        self.value(i) - self.right_limit_numerator(i + 1)
    }

    /// The grid point index of the piece containing `x`, i.e. `ceil(k x)`
    /// (1-based), for `x` in `(0, 1]`.
    fn piece_of(&self, x: &BigRational) -> usize {
        let scaled = x * ratio_from_u64(u64::from(self.k));
        let i = scaled.ceil().to_integer().to_usize().expect("piece index fits");
        i.clamp(1, self.k as usize)
    }

    pub fn evaluate(&self, x: &BigRational) -> Result<BigRational> {
        if *x < BigRational::zero() || *x > BigRational::one() {
            return Err(Error::IndexOutOfRange("query point outside [0, 1]".into()));
        }
        if x.is_zero() {
            return Ok(BigRational::one());
        }
        let i = self.piece_of(x);
        let k = ratio_from_u64(u64::from(self.k));
        let kx = x * &k;
        let v = BigRational::from_integer(BigInt::from(self.value(i)));
        let mu = BigRational::from_integer(BigInt::from(self.slope(i)));
        Ok((v + mu * (kx - BigRational::from_integer(BigInt::from(i as i64)))) / k)
    }

    pub fn right_limit(&self, a: &BigRational) -> Result<BigRational> {
        if *a < BigRational::zero() || *a >= BigRational::one() {
            return Err(Error::IndexOutOfRange(
                "right limit needs a point in [0, 1)".into(),
            ));
        }
        let k = ratio_from_u64(u64::from(self.k));
        let ka = a * &k;
        let i = ka.floor().to_integer().to_usize().expect("piece index fits") + 1;
        let v = BigRational::from_integer(BigInt::from(self.value(i)));
        let mu = BigRational::from_integer(BigInt::from(self.slope(i)));
        Ok((v + mu * (ka - BigRational::from_integer(BigInt::from(i as i64)))) / k)
    }

    /// Discretize on a grid of `n` rows, `n` a multiple of `k`. Every part
    /// is an exact integer (no rounding happens).
    pub fn young_diagram(&self, n: u64) -> Result<Partition> {
        if n == 0 || n % u64::from(self.k) != 0 {
            return Err(Error::GridMismatch {
                n,
                breakpoint: format!("1/{}", self.k),
            });
        }
        let q = (n / u64::from(self.k)) as i64;
        let mut parts = Vec::with_capacity(n as usize);
        for i in 1..=n as i64 {
            let p = (i + q - 1) / q; // ceil(i/q), the piece index
            let part = q * self.value(p as usize) + self.slope(p as usize) * (i - p * q);
            debug_assert!(part > 0);
            parts.push(part as u64);
        }
        Partition::new(parts)
    }

    /// Lift to the general representation with exact rational data.
    pub fn to_plf(&self) -> ExactPlf {
        let k = i64::from(self.k);
        let breakpoints: Vec<BigRational> = (1..k)
            .map(|i| BigRational::new(BigInt::from(i), BigInt::from(k)))
            .collect();
        let pieces: Vec<Piece<BigRational>> = (1..=k as usize)
            .map(|i| {
                let slope = BigRational::from_integer(BigInt::from(self.slope(i)));
                let intercept = BigRational::new(
                    BigInt::from(self.value(i) - self.slope(i) * i as i64),
                    BigInt::from(k),
                );
                Piece { slope, intercept }
            })
            .collect();
        let breakpoint_values: Vec<BigRational> = (1..k as usize)
            .map(|i| BigRational::new(BigInt::from(self.value(i)), BigInt::from(k)))
            .collect();
        PiecewiseLinearFn::new(breakpoints, pieces, breakpoint_values)
            .expect("grid profiles lift to structurally valid functions")
    }
}

impl TryFrom<CombinatorialFnRaw> for CombinatorialFn {
    type Error = Error;

    fn try_from(raw: CombinatorialFnRaw) -> Result<Self> {
        let k = raw.k.unwrap_or(raw.values.len() as u32);
        CombinatorialFn::new(k, raw.values, raw.slopes)
    }
}

impl From<CombinatorialFn> for CombinatorialFnRaw {
    fn from(f: CombinatorialFn) -> Self {
        CombinatorialFnRaw {
            k: Some(f.k),
            values: f.values,
            slopes: f.slopes,
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ratio::ratio;

    /// The profile from the worked irrational example: 1 on `[0, 1/2)`,
    /// value `1/sqrt 2` at `1/2`, then slope `-1/sqrt 7`.
    pub(crate) fn irrational_example() -> FloatPlf {
        let half = 0.5f64;
        let v = 1.0 / 2f64.sqrt();
        let slope = -1.0 / 7f64.sqrt();
        PiecewiseLinearFn::new(
            vec![ratio(1, 2)],
            vec![
                Piece { slope: 0.0, intercept: 1.0 },
                Piece { slope, intercept: v - slope * half },
            ],
            vec![v],
        )
        .unwrap()
    }

    /// The step-function non-member: 1 on `[0, 1/2]`, then 1/2.
    fn step_non_example() -> ExactPlf {
        PiecewiseLinearFn::new(
            vec![ratio(1, 2)],
            vec![
                Piece { slope: BigRational::zero(), intercept: BigRational::one() },
                Piece { slope: BigRational::zero(), intercept: ratio(1, 2) },
            ],
            vec![BigRational::one()],
        )
        .unwrap()
    }

    #[test]
    fn constant_one_is_valid() {
        let f = ExactPlf::constant_one();
        assert!(f.validate_class_p().is_valid());
        assert_eq!(f.loft().unwrap(), BigRational::one());
        assert_eq!(f.evaluate(&ratio(37, 100)).unwrap(), BigRational::one());
    }

    #[test]
    fn irrational_example_is_valid() {
        let f = irrational_example();
        assert!(f.validate_class_p().is_valid());
        let v = f.evaluate(&ratio(1, 2)).unwrap();
        assert!((v - 1.0 / 2f64.sqrt()).abs() < 1e-15);
        let r = f.right_limit(&ratio(1, 2)).unwrap();
        assert!((r - (1.0 / 2f64.sqrt() - 0.5 / 7f64.sqrt())).abs() < 1e-15);
    }

    #[test]
    fn step_function_fails_at_one_half() {
        let report = step_non_example().validate_class_p();
        assert!(!report.is_valid());
        let failure = report.first_failure().unwrap();
        assert_eq!(failure.axiom, Axiom::RightLimitsAboveAntidiagonal);
        assert!(failure.detail.as_deref().unwrap().contains("1/2"));
    }

    #[test]
    fn ramp_loft_is_one_over_k() {
        for k in 2..=6u32 {
            let f = CombinatorialFn::ramp(k).to_plf();
            assert_eq!(f.loft().unwrap(), ratio(1, i64::from(k)));
        }
    }

    #[test]
    fn loft_bounds_hold_on_grid_profiles() {
        // Spot-check the monotone consistency x >= f(x)+x-1 >= min(x, loft).
        for f in [
            CombinatorialFn::constant_one(3),
            CombinatorialFn::ramp(4),
            CombinatorialFn::staircase(5),
            CombinatorialFn::new(3, vec![3, 3, 1], vec![0, 0, -2]).unwrap(),
        ] {
            let plf = f.to_plf();
            let loft = plf.loft().unwrap();
            assert!(loft >= ratio(1, i64::from(f.k())));
            for j in 0..=100 {
                let x = ratio(j, 100);
                let gap = plf.evaluate(&x).unwrap() + &x - BigRational::one();
                assert!(x >= gap, "x {j}/100");
                assert!(gap >= std::cmp::min(x.clone(), loft.clone()), "x {j}/100");
            }
        }
    }

    #[test]
    fn young_diagram_examples() {
        let f = ExactPlf::constant_one();
        assert_eq!(f.young_diagram(3).unwrap(), Partition::square(3));

        let ramp2 = CombinatorialFn::ramp(2).to_plf();
        assert_eq!(
            ramp2.young_diagram(4).unwrap(),
            Partition::new(vec![4, 4, 3, 2]).unwrap()
        );
        // ... and the integer fast path agrees.
        assert_eq!(
            CombinatorialFn::ramp(2).young_diagram(4).unwrap(),
            Partition::new(vec![4, 4, 3, 2]).unwrap()
        );

        let f = irrational_example();
        assert!(matches!(f.young_diagram(3), Err(Error::GridMismatch { .. })));
        let d = f.young_diagram(8).unwrap();
        assert!(d.is_feasible());
        // ceil(8 * f(5/8)) with f(5/8) = 1/sqrt2 - (5/8)/sqrt7
        assert_eq!(d.parts()[4], 4);
    }

    #[test]
    fn rounding_discrepancy_vanishes_on_grid_profiles() {
        assert_eq!(ExactPlf::constant_one().rounding_discrepancy(7).unwrap(), 0.0);
        for k in 1..=4u32 {
            for f in crate::combinatorics::enumerate_pk(k).unwrap() {
                let plf = f.to_plf();
                for n in [k, 2 * k, 4 * k] {
                    assert_eq!(plf.rounding_discrepancy(u64::from(n)).unwrap(), 0.0);
                    assert!(plf.young_diagram(u64::from(n)).unwrap().is_feasible());
                }
            }
        }
    }

    #[test]
    fn rounding_discrepancy_is_bounded_for_irrational_example() {
        let f = irrational_example();
        let mut n = 2u64;
        while n <= 512 {
            let r = f.rounding_discrepancy(n).unwrap();
            assert!(r >= 0.0, "N = {n}");
            assert!(r < 10.0, "N = {n}: R = {r}");
            n *= 2;
        }
    }

    #[test]
    fn grid_profile_invariants_enforced() {
        assert!(CombinatorialFn::new(3, vec![3, 3, 2], vec![0, 0, -1]).is_ok());
        // First piece must be flat at 1.
        assert!(CombinatorialFn::new(3, vec![2, 2, 2], vec![0, 0, 0]).is_err());
        // Sample point on the anti-diagonal.
        assert!(CombinatorialFn::new(3, vec![3, 1, 1], vec![0, 0, 0]).is_err());
        // Upper semicontinuity violated (upward jump).
        assert!(CombinatorialFn::new(3, vec![3, 2, 3], vec![0, -1, 0]).is_err());
        // Right limit touching the anti-diagonal.
        assert!(CombinatorialFn::new(3, vec![3, 3, 1], vec![0, 0, -1]).is_err());
    }

    #[test]
    fn grid_profile_evaluation_and_limits() {
        let f = CombinatorialFn::new(3, vec![3, 3, 1], vec![0, 0, -2]).unwrap();
        assert_eq!(f.right_limit(&ratio(2, 3)).unwrap(), BigRational::one());
        assert_eq!(f.evaluate(&ratio(1, 1)).unwrap(), ratio(1, 3));
        assert_eq!(f.evaluate(&ratio(0, 1)).unwrap(), BigRational::one());
        // Left continuity: the value at a grid point belongs to the piece
        // ending there.
        let f = CombinatorialFn::new(3, vec![3, 3, 2], vec![0, 0, -1]).unwrap();
        let plf = f.to_plf();
        for i in 1..=3i64 {
            let a = ratio(i, 3);
            assert_eq!(plf.evaluate(&a).unwrap(), plf.left_limit(&a).unwrap());
            assert_eq!(f.evaluate(&a).unwrap(), plf.evaluate(&a).unwrap());
        }
    }

    #[test]
    fn lifted_grid_profiles_pass_validation() {
        for k in 1..=5u32 {
            for f in crate::combinatorics::enumerate_pk(k).unwrap() {
                let report = f.to_plf().validate_class_p();
                assert!(report.is_valid(), "{f:?}: {:?}", report.first_failure());
            }
        }
    }

    #[test]
    fn combinatorial_fn_json_round_trip() {
        let f = CombinatorialFn::new(3, vec![3, 3, 1], vec![0, 0, -2]).unwrap();
        let json = serde_json::to_string(&f).unwrap();
        assert!(json.contains("\"values\":[3,3,1]"));
        let back: CombinatorialFn = serde_json::from_str(&json).unwrap();
        assert_eq!(back, f);
        // k may be inferred.
        let inferred: CombinatorialFn =
            serde_json::from_str(r#"{"values":[3,3,2],"slopes":[0,0,-1]}"#).unwrap();
        assert_eq!(inferred.k(), 3);
        // Invalid data is rejected at parse time.
        assert!(serde_json::from_str::<CombinatorialFn>(r#"{"values":[3,1,1],"slopes":[0,0,0]}"#).is_err());
    }
}
