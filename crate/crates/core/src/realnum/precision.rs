//! Precision-tracked reals: an expression DAG plus a current enclosure and a
//! budget of refinement bits.

use num_rational::BigRational;
use num_traits::{Signed, Zero};
use std::collections::HashMap;
use std::fmt;
use std::sync::Arc;

use super::interval::{ln_enclosure, root_enclosure, Interval};
use super::surd::QuadraticSurd;
use crate::error::{Error, Result};

/// Working precision (bits) of a freshly created value.
pub const INITIAL_PRECISION: u32 = 64;

/// How a real is computed; evaluated to an enclosure at any precision.
#[derive(Debug)]
pub enum Expr {
    Exact(BigRational),
    Surd(QuadraticSurd),
    /// A fixed enclosure that cannot be narrowed further (decimal seeds, explicit bounds).
    Bounds(Interval),
    Root {
        degree: u32,
        radicand: BigRational,
    },
    Neg(Arc<Expr>),
    Add(Arc<Expr>, Arc<Expr>),
    Sub(Arc<Expr>, Arc<Expr>),
    Mul(Arc<Expr>, Arc<Expr>),
    Div(Arc<Expr>, Arc<Expr>),
    Ln(Arc<Expr>),
}

type Memo = HashMap<*const Expr, Option<Interval>>;

fn eval(e: &Arc<Expr>, w: u32, memo: &mut Memo) -> Option<Interval> {
    let key = Arc::as_ptr(e);
    if let Some(v) = memo.get(&key) {
        return v.clone();
    }
    let guard = w + 8;
    let out = match e.as_ref() {
        Expr::Exact(x) => Some(Interval::point(x.clone())),
        Expr::Surd(s) => Some(s.enclose(guard)),
        Expr::Bounds(iv) => Some(iv.clone()),
        Expr::Root { degree, radicand } => Some(root_enclosure(radicand, *degree, guard)),
        Expr::Neg(x) => eval(x, w, memo).map(|i| i.neg()),
        Expr::Add(x, y) => {
            let (x, y) = (eval(x, w, memo)?, eval(y, w, memo)?);
            Some(x.add(&y, guard))
        }
        Expr::Sub(x, y) => {
            let (x, y) = (eval(x, w, memo)?, eval(y, w, memo)?);
            Some(x.sub(&y, guard))
        }
        Expr::Mul(x, y) => {
            let (x, y) = (eval(x, w, memo)?, eval(y, w, memo)?);
            Some(x.mul(&y, guard))
        }
        Expr::Div(x, y) => {
            let (x, y) = (eval(x, w, memo)?, eval(y, w, memo)?);
            x.div(&y, guard)
        }
        Expr::Ln(x) => {
            let x = eval(x, w, memo)?;
            if !x.lo.is_positive() {
                None
            } else {
                let lo = ln_enclosure(&x.lo, guard).lo;
                let hi = ln_enclosure(&x.hi, guard).hi;
                Some(Interval::new(lo, hi))
            }
        }
    };
    memo.insert(key, out.clone());
    out
}

/// Enclosure of `e` at working precision `w`, `None` when some division or
/// logarithm could not be bounded at this precision.
pub fn evaluate(e: &Arc<Expr>, w: u32) -> Option<Interval> {
    eval(e, w, &mut HashMap::new())
}

/// A real known through an enclosure `[low, high]` that can be narrowed by
/// spending refinement bits from `budget`.
///
/// Equality with another value is never affirmed, only refuted.
#[derive(Clone)]
pub struct PrecisionReal {
    expr: Arc<Expr>,
    enclosure: Interval,
    precision: u32,
    budget: u32,
}

impl fmt::Debug for PrecisionReal {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("PrecisionReal")
            .field("low", &self.enclosure.lo.to_string())
            .field("high", &self.enclosure.hi.to_string())
            .field("precision", &self.precision)
            .field("budget", &self.budget)
            .finish()
    }
}

impl PrecisionReal {
    /// Build from an expression, evaluating at `precision` and refining (within
    /// `budget`) until the enclosure is bounded.
    pub fn from_expr(expr: Arc<Expr>, precision: u32, budget: u32) -> Result<Self> {
        let mut precision = precision.max(8);
        let mut budget = budget;
        loop {
            if let Some(enclosure) = evaluate(&expr, precision) {
                return Ok(PrecisionReal {
                    expr,
                    enclosure,
                    precision,
                    budget,
                });
            }
            if budget == 0 {
                return Err(Error::PrecisionExhausted(
                    "enclosure unbounded (division by an interval containing zero)".into(),
                ));
            }
            let step = budget.min(precision);
            budget -= step;
            precision += step;
        }
    }

    /// An explicit interval that can never be refined; the budget is still
    /// spent by refinement attempts.
    pub fn from_bounds(low: BigRational, high: BigRational, budget: u32) -> Self {
        let (low, high) = if low <= high {
            (low, high)
        } else {
            (high, low)
        };
        let iv = Interval::new(low, high);
        PrecisionReal {
            expr: Arc::new(Expr::Bounds(iv.clone())),
            enclosure: iv,
            precision: INITIAL_PRECISION,
            budget,
        }
    }

    /// Same value with the remaining refinement budget replaced.
    pub fn with_budget(&self, budget: u32) -> Self {
        PrecisionReal {
            budget,
            ..self.clone()
        }
    }

    /// Real `degree`-th root of a rational, refinable to any precision within `budget`.
    pub fn root(radicand: BigRational, degree: u32, budget: u32) -> Result<Self> {
        if degree == 0 {
            return Err(Error::OutOfRange("root degree must be positive".into()));
        }
        if radicand.is_negative() && degree.is_multiple_of(2) {
            return Err(Error::NegativeRadicand);
        }
        Self::from_expr(
            Arc::new(Expr::Root { degree, radicand }),
            INITIAL_PRECISION,
            budget,
        )
    }

    pub fn low(&self) -> &BigRational {
        &self.enclosure.lo
    }
    pub fn high(&self) -> &BigRational {
        &self.enclosure.hi
    }
    pub fn budget(&self) -> u32 {
        self.budget
    }
    pub fn precision(&self) -> u32 {
        self.precision
    }
    pub fn enclosure(&self) -> &Interval {
        &self.enclosure
    }
    pub(crate) fn expr(&self) -> &Arc<Expr> {
        &self.expr
    }

    /// Spend refinement bits to narrow the enclosure. Never widens; the budget
    /// strictly decreases. Fails only when the budget is already zero.
    pub fn refine(&self) -> Result<PrecisionReal> {
        if self.budget == 0 {
            return Err(Error::PrecisionExhausted(format!(
                "budget spent, enclosure [{}, {}]",
                self.enclosure.lo, self.enclosure.hi
            )));
        }
        let step = self.budget.min(self.precision);
        let precision = self.precision + step;
        let enclosure = match evaluate(&self.expr, precision) {
            Some(iv) => iv.intersect(&self.enclosure),
            None => self.enclosure.clone(),
        };
        Ok(PrecisionReal {
            expr: self.expr.clone(),
            enclosure,
            precision,
            budget: self.budget - step,
        })
    }

    /// Refine until `decide` returns an answer or the budget runs out.
    pub fn decide<T>(&self, mut decide: impl FnMut(&Interval) -> Option<T>) -> Result<T> {
        let mut cur = self.clone();
        loop {
            if let Some(t) = decide(&cur.enclosure) {
                return Ok(t);
            }
            cur = cur.refine()?;
        }
    }

    /// Refine until the enclosure is no wider than `width` (or the budget runs out).
    pub fn refine_to_width(&self, width: &BigRational) -> Result<PrecisionReal> {
        let mut cur = self.clone();
        while &cur.enclosure.width() > width {
            cur = cur.refine()?;
        }
        Ok(cur)
    }

    /// Midpoint of the current enclosure.
    pub fn midpoint(&self) -> BigRational {
        (&self.enclosure.lo + &self.enclosure.hi) / BigRational::from_integer(2.into())
    }

    pub fn is_point(&self) -> bool {
        self.enclosure.width().is_zero()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn rat(n: i64, d: i64) -> BigRational {
        BigRational::new(n.into(), d.into())
    }

    #[test]
    fn refinement_narrows_and_spends_budget() {
        let x = PrecisionReal::root(rat(2, 1), 2, 128).unwrap();
        let y = x.refine().unwrap();
        assert!(y.budget() < x.budget());
        assert!(y.low() >= x.low() && y.high() <= x.high());
        assert!(y.enclosure().width() < x.enclosure().width());
    }

    #[test]
    fn bounds_exhaust() {
        let x = PrecisionReal::from_bounds(rat(1414, 1000), rat(1415, 1000), 0);
        assert!(matches!(x.refine(), Err(Error::PrecisionExhausted(_))));
        let y = PrecisionReal::from_bounds(rat(1414, 1000), rat(1415, 1000), 10);
        let z = y.refine().unwrap();
        assert_eq!(z.enclosure(), y.enclosure());
        assert!(z.budget() < 10);
    }

    #[test]
    fn division_needs_refinement() {
        // 1 / (root2 - 1.4142135) needs more than a handful of bits
        let two = Arc::new(Expr::Root {
            degree: 2,
            radicand: rat(2, 1),
        });
        let c = Arc::new(Expr::Exact(rat(14142135, 10000000)));
        let diff = Arc::new(Expr::Sub(two, c));
        let q = Arc::new(Expr::Div(Arc::new(Expr::Exact(rat(1, 1))), diff));
        assert!(PrecisionReal::from_expr(q.clone(), 8, 0).is_err());
        let v = PrecisionReal::from_expr(q, 8, 64).unwrap();
        assert!(v.low() > &rat(1_000_000, 1));
    }
}
