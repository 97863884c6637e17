//! Exact and precision-tracked real numbers.
//!
//! [`RealValue`] is the number type used everywhere else in the crate. It has
//! three carriers:
//!
//! * [`RealValue::Rational`], an arbitrary-size reduced fraction;
//! * [`RealValue::Surd`], a quadratic irrational `(a + b√d)/c` in canonical form;
//! * [`RealValue::Approx`], a [`PrecisionReal`]: an enclosure that can be
//!   refined by spending a budget of bits.
//!
//! Arithmetic between rationals and surds over one radicand stays exact.
//! Anything else degrades to a `PrecisionReal`. Comparisons and floors of
//! exact values are exact; for interval values they refine until decided or
//! fail with [`Error::PrecisionExhausted`].

mod interval;
mod precision;
mod surd;
mod text;

pub use interval::{ln_enclosure, root_enclosure, round_dyadic, Interval};
pub use precision::{evaluate, Expr, PrecisionReal, INITIAL_PRECISION};
pub use surd::{QuadraticSurd, SurdOrRational};
pub use text::{format_decimal, parse_real};

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{Signed, ToPrimitive, Zero};
use std::cmp::Ordering;
use std::fmt;
use std::sync::Arc;

use crate::error::{Error, Result};

/// Budget given to interval values created by mixing exact values from
/// distinct quadratic fields. Such values are never equal, so refinement
/// always terminates well inside this.
pub const EXACT_MIX_BUDGET: u32 = 1 << 16;

#[derive(Debug, Clone)]
pub enum RealValue {
    Rational(BigRational),
    Surd(QuadraticSurd),
    Approx(PrecisionReal),
}

/// Equality of exact values is structural on canonical forms. An interval
/// value is never equal to anything, itself included.
impl PartialEq for RealValue {
    fn eq(&self, other: &Self) -> bool {
        match (self, other) {
            (RealValue::Rational(x), RealValue::Rational(y)) => x == y,
            (RealValue::Surd(x), RealValue::Surd(y)) => x == y,
            _ => false,
        }
    }
}

impl From<SurdOrRational> for RealValue {
    fn from(v: SurdOrRational) -> Self {
        match v {
            SurdOrRational::Rational(r) => RealValue::Rational(r),
            SurdOrRational::Surd(s) => RealValue::Surd(s),
        }
    }
}

impl From<BigRational> for RealValue {
    fn from(r: BigRational) -> Self {
        RealValue::Rational(r)
    }
}

impl From<i64> for RealValue {
    fn from(n: i64) -> Self {
        RealValue::Rational(BigRational::from_integer(n.into()))
    }
}

impl From<BigInt> for RealValue {
    fn from(n: BigInt) -> Self {
        RealValue::Rational(BigRational::from_integer(n))
    }
}

impl From<PrecisionReal> for RealValue {
    fn from(p: PrecisionReal) -> Self {
        RealValue::Approx(p)
    }
}

/// Canonical `(a + b√d)/c`; rational when `b = 0` or `d` is a perfect square.
pub fn surd_normalize(a: BigInt, b: BigInt, c: BigInt, d: BigInt) -> Result<RealValue> {
    QuadraticSurd::normalize(a, b, c, d).map(RealValue::from)
}

impl RealValue {
    pub fn rational(n: i64, d: i64) -> Result<RealValue> {
        if d == 0 {
            return Err(Error::ZeroDenominator);
        }
        Ok(RealValue::Rational(BigRational::new(n.into(), d.into())))
    }

    /// Shorthand for [`surd_normalize`] on small integers.
    pub fn surd(a: i64, b: i64, c: i64, d: i64) -> Result<RealValue> {
        surd_normalize(a.into(), b.into(), c.into(), d.into())
    }

    /// Interval values get a fresh refinement budget; exact values are unchanged.
    pub fn with_budget(&self, budget: u32) -> RealValue {
        match self {
            RealValue::Approx(p) => RealValue::Approx(p.with_budget(budget)),
            exact => exact.clone(),
        }
    }

    pub fn is_exact(&self) -> bool {
        !matches!(self, RealValue::Approx(_))
    }

    pub fn as_rational(&self) -> Option<&BigRational> {
        match self {
            RealValue::Rational(r) => Some(r),
            _ => None,
        }
    }

    fn exact(&self) -> Option<SurdOrRational> {
        match self {
            RealValue::Rational(r) => Some(SurdOrRational::Rational(r.clone())),
            RealValue::Surd(s) => Some(SurdOrRational::Surd(s.clone())),
            RealValue::Approx(_) => None,
        }
    }

    pub(crate) fn to_expr(&self) -> Arc<Expr> {
        match self {
            RealValue::Rational(r) => Arc::new(Expr::Exact(r.clone())),
            RealValue::Surd(s) => Arc::new(Expr::Surd(s.clone())),
            RealValue::Approx(p) => p.expr().clone(),
        }
    }

    fn approx_params(&self) -> Option<(u32, u32)> {
        match self {
            RealValue::Approx(p) => Some((p.precision(), p.budget())),
            _ => None,
        }
    }

    /// Precision/budget for a value derived from `xs`: the highest precision
    /// and the smallest budget among interval operands.
    fn derived_params(xs: &[&RealValue]) -> (u32, u32) {
        let params: Vec<_> = xs.iter().filter_map(|x| x.approx_params()).collect();
        if params.is_empty() {
            return (INITIAL_PRECISION, EXACT_MIX_BUDGET);
        }
        let prec = params.iter().map(|p| p.0).max().unwrap();
        let budget = params.iter().map(|p| p.1).min().unwrap();
        (prec, budget)
    }

    fn combine(
        &self,
        o: &RealValue,
        make: impl FnOnce(Arc<Expr>, Arc<Expr>) -> Expr,
    ) -> Result<RealValue> {
        let (prec, budget) = Self::derived_params(&[self, o]);
        let e = Arc::new(make(self.to_expr(), o.to_expr()));
        PrecisionReal::from_expr(e, prec, budget).map(RealValue::Approx)
    }

    pub fn add(&self, o: &RealValue) -> Result<RealValue> {
        if let (Some(x), Some(y)) = (self.exact(), o.exact()) {
            if let Some(z) = x.add(&y) {
                return Ok(z.into());
            }
        }
        self.combine(o, Expr::Add)
    }

    pub fn neg(&self) -> RealValue {
        match self {
            RealValue::Rational(r) => RealValue::Rational(-r),
            RealValue::Surd(s) => RealValue::Surd(s.neg()),
            RealValue::Approx(p) => {
                let (prec, budget) = (p.precision(), p.budget());
                let e = Arc::new(Expr::Neg(p.expr().clone()));
                // negation of a bounded enclosure is bounded
                RealValue::Approx(PrecisionReal::from_expr(e, prec, budget).expect("bounded"))
            }
        }
    }

    pub fn sub(&self, o: &RealValue) -> Result<RealValue> {
        if let (Some(x), Some(y)) = (self.exact(), o.exact()) {
            if let Some(z) = x.add(&y.neg()) {
                return Ok(z.into());
            }
        }
        self.combine(o, Expr::Sub)
    }

    pub fn mul(&self, o: &RealValue) -> Result<RealValue> {
        if let (Some(x), Some(y)) = (self.exact(), o.exact()) {
            if let Some(z) = x.mul(&y) {
                return Ok(z.into());
            }
        }
        self.combine(o, Expr::Mul)
    }

    pub fn div(&self, o: &RealValue) -> Result<RealValue> {
        if let RealValue::Rational(r) = o {
            if r.is_zero() {
                return Err(Error::DivisionByZero);
            }
        }
        if let (Some(x), Some(y)) = (self.exact(), o.exact()) {
            if let Some(z) = x.mul(&y.recip()?) {
                return Ok(z.into());
            }
        }
        self.combine(o, Expr::Div)
    }

    pub fn recip(&self) -> Result<RealValue> {
        RealValue::from(1).div(self)
    }

    pub fn mul_int(&self, k: &BigInt) -> Result<RealValue> {
        self.mul(&RealValue::from(k.clone()))
    }

    /// Sign of the value. Exact for exact values; an interval value is refined
    /// until its enclosure excludes zero, and is never reported as zero.
    pub fn signum(&self) -> Result<Ordering> {
        match self {
            RealValue::Rational(r) => Ok(r.cmp(&BigRational::zero())),
            RealValue::Surd(s) => Ok(s.signum()),
            RealValue::Approx(p) => p.decide(|iv| {
                if iv.lo.is_positive() {
                    Some(Ordering::Greater)
                } else if iv.hi.is_negative() {
                    Some(Ordering::Less)
                } else {
                    None
                }
            }),
        }
    }

    /// Floor. See [`real_floor`].
    pub fn floor(&self) -> Result<BigInt> {
        match self {
            RealValue::Rational(r) => Ok(r.floor().to_integer()),
            RealValue::Surd(s) => Ok(s.floor()),
            RealValue::Approx(p) => p.decide(|iv| {
                let lo = iv.lo.floor().to_integer();
                let hi = iv.hi.floor().to_integer();
                (lo == hi).then_some(lo)
            }),
        }
    }

    /// An enclosure of the value at about `bits` bits.
    pub fn enclose(&self, bits: u32) -> Interval {
        match self {
            RealValue::Rational(r) => Interval::point(r.clone()),
            RealValue::Surd(s) => s.enclose(bits),
            RealValue::Approx(p) => p.enclosure().clone(),
        }
    }

    /// Nearest `f64`; for display and diagnostics only.
    pub fn to_f64(&self) -> f64 {
        let r = match self {
            RealValue::Rational(r) => r.clone(),
            RealValue::Surd(s) => {
                let iv = s.enclose(64);
                (iv.lo + iv.hi) / BigRational::from_integer(2.into())
            }
            RealValue::Approx(p) => p.midpoint(),
        };
        r.to_f64().unwrap_or(f64::NAN)
    }
}

/// Three-way comparison.
///
/// Exact operands get an exact answer (operands from distinct quadratic
/// fields are separated by refinement, which always terminates since they
/// cannot be equal). Interval operands are refined until the enclosures
/// separate; equality is never affirmed for them.
pub fn real_compare(x: &RealValue, y: &RealValue) -> Result<Ordering> {
    x.sub(y)?.signum()
}

/// Greatest integer not exceeding `x`.
pub fn real_floor(x: &RealValue) -> Result<BigInt> {
    x.floor()
}

impl fmt::Display for RealValue {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&text::format_real(self))
    }
}
