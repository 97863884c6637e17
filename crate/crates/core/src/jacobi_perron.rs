//! The Jacobi-Perron algorithm.
//!
//! A vector `θ = (θ1, ..., θ_{n-1})` is mapped to digits `b_i = floor(θ_i)`
//! and, with fractional parts `f_i = θ_i - b_i`, to the successor
//!
//! ```text
//! θ' = (f2/f1, f3/f1, ..., f_{n-1}/f1, 1/f1)
//! ```
//!
//! which solves `θ1 = b1 + 1/θ'_{n-1}` and `θ_i = b_i + θ'_{i-1}/θ'_{n-1}`.
//! Each step has the `n×n` matrix
//!
//! ```text
//! ( 0 0 ... 0 1       )
//! ( 1 0 ... 0 b1      )
//! ( 0 1 ... 0 b2      )
//! (       ...         )
//! ( 0 0 ... 1 b_{n-1} )
//! ```
//!
//! with `(1, θ) ∝ M(b⁰) ... M(bᵏ⁻¹) (1, θ⁽ᵏ⁾)`. Convergents are the ordered
//! products seeded at the identity; the image of `(0, ..., 0, 1)` (the last
//! column) gives the approximation `(A1/A0, ..., A_{n-1}/A0)` of `θ`.
//! For `n = 2` this is the regular continued fraction.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};
use serde_json::{json, Value};

use crate::error::{Error, Result};
use crate::json::{int_json, real_json};
use crate::matrix::{IntMatrix, UnimodularMatrix};
use crate::realnum::RealValue;

/// Digits `(b1, ..., b_{n-1})` of one step.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct JPDigitVector(pub Vec<BigInt>);

impl JPDigitVector {
    pub fn from_i64(v: &[i64]) -> Self {
        JPDigitVector(v.iter().map(|&x| x.into()).collect())
    }

    pub fn digits(&self) -> &[BigInt] {
        &self.0
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct JPExpansion {
    pub n: usize,
    pub steps: Vec<JPDigitVector>,
    /// A degenerate step (zero first fractional part) ended the expansion.
    pub terminated: bool,
    /// The depth limit was reached first.
    pub truncated: bool,
}

impl JPExpansion {
    pub fn to_json(&self) -> Value {
        json!({
            "n": self.n,
            "steps": self.steps.iter()
                .map(|s| Value::Array(s.0.iter().map(int_json).collect()))
                .collect::<Vec<_>>(),
            "terminated": self.terminated,
            "truncated": self.truncated,
        })
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct JPConvergent {
    pub matrix: UnimodularMatrix,
    pub k: usize,
}

impl JPConvergent {
    /// The convergent column `A (0, ..., 0, 1)ᵀ`.
    pub fn column(&self) -> Vec<BigInt> {
        self.matrix.matrix().column(self.matrix.dim() - 1)
    }

    /// `(A1/A0, ..., A_{n-1}/A0)` from the convergent column.
    pub fn ratios(&self) -> Result<Vec<BigRational>> {
        let col = self.column();
        if col[0].is_zero() {
            return Err(Error::ZeroLeadingEntry);
        }
        Ok(col[1..]
            .iter()
            .map(|a| BigRational::new(a.clone(), col[0].clone()))
            .collect())
    }

    pub fn to_json(&self) -> Value {
        let ratio = match self.ratios() {
            Ok(r) => Value::Array(
                r.iter()
                    .map(|x| Value::String(format!("{}/{}", x.numer(), x.denom())))
                    .collect(),
            ),
            Err(_) => Value::Null,
        };
        json!({
            "k": self.k,
            "matrix": self.matrix.to_json(),
            "ratio": ratio,
        })
    }
}

/// One Jacobi-Perron step on `θ` (length `n - 1 >= 1`).
pub fn jp_step(theta: &[RealValue]) -> Result<(JPDigitVector, Vec<RealValue>)> {
    if theta.is_empty() {
        return Err(Error::DimensionMismatch {
            expected: 1,
            got: 0,
        });
    }
    let digits = theta
        .iter()
        .map(|t| t.floor())
        .collect::<Result<Vec<_>>>()?;
    let fracs = theta
        .iter()
        .zip(&digits)
        .map(|(t, b)| t.sub(&RealValue::from(b.clone())))
        .collect::<Result<Vec<_>>>()?;
    if matches!(&fracs[0], RealValue::Rational(r) if r.is_zero()) {
        return Err(Error::DegenerateStep);
    }
    let f1 = &fracs[0];
    let mut next = fracs[1..]
        .iter()
        .map(|f| f.div(f1))
        .collect::<Result<Vec<_>>>()?;
    next.push(f1.recip()?);
    Ok((JPDigitVector(digits), next))
}

/// Iterates [`jp_step`] up to `max_depth` times.
pub fn jp_expand(theta: &[RealValue], max_depth: usize) -> Result<JPExpansion> {
    let n = theta.len() + 1;
    if n < 2 {
        return Err(Error::DimensionMismatch {
            expected: 2,
            got: n,
        });
    }
    let mut steps = Vec::new();
    let mut cur = theta.to_vec();
    while steps.len() < max_depth {
        match jp_step(&cur) {
            Ok((b, next)) => {
                steps.push(b);
                cur = next;
            }
            Err(Error::DegenerateStep) => {
                return Ok(JPExpansion {
                    n,
                    steps,
                    terminated: true,
                    truncated: false,
                })
            }
            Err(Error::PrecisionExhausted(msg)) => {
                return Err(Error::PrecisionExhausted(format!(
                    "at Jacobi-Perron step {}: {msg}",
                    steps.len()
                )))
            }
            Err(e) => return Err(e),
        }
    }
    Ok(JPExpansion {
        n,
        steps,
        terminated: false,
        truncated: true,
    })
}

/// The `n×n` step matrix of a digit vector.
pub fn jp_step_matrix(b: &JPDigitVector, n: usize) -> Result<UnimodularMatrix> {
    if n < 2 || b.0.len() != n - 1 {
        return Err(Error::DimensionMismatch {
            expected: n.saturating_sub(1),
            got: b.0.len(),
        });
    }
    let mut m = IntMatrix::from_rows(vec![vec![BigInt::zero(); n]; n])?;
    m.set(0, n - 1, BigInt::one());
    for i in 1..n {
        m.set(i, i - 1, BigInt::one());
        m.set(i, n - 1, b.0[i - 1].clone());
    }
    UnimodularMatrix::new(m)
}

/// Product of the first `k` step matrices; the identity at `k = 0`.
pub fn jp_convergents(e: &JPExpansion, k: usize) -> Result<JPConvergent> {
    if k > e.steps.len() {
        return Err(Error::NotEnoughSteps {
            available: e.steps.len(),
            requested: k,
        });
    }
    let mut a = UnimodularMatrix::identity(e.n);
    for b in &e.steps[..k] {
        a = &a * &jp_step_matrix(b, e.n)?;
    }
    Ok(JPConvergent { matrix: a, k })
}

/// Approximation of `θ` read from the `k`-th convergent column.
pub fn jp_reconstruct(e: &JPExpansion, k: usize) -> Result<Vec<RealValue>> {
    Ok(jp_convergents(e, k)?
        .ratios()?
        .into_iter()
        .map(RealValue::Rational)
        .collect())
}

pub fn reconstruction_json(values: &[RealValue]) -> Value {
    Value::Array(values.iter().map(real_json).collect())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::realnum::parse_real;
    use crate::regular_cf::cf_expand;

    fn cube_roots() -> Vec<RealValue> {
        vec![
            parse_real("root:3:2~256").unwrap(),
            parse_real("root:3:4~256").unwrap(),
        ]
    }

    #[test]
    fn step_examples() {
        let r2 = RealValue::surd(0, 1, 1, 2).unwrap();
        let (b, next) = jp_step(&[r2]).unwrap();
        assert_eq!(b, JPDigitVector::from_i64(&[1]));
        assert_eq!(next, vec![RealValue::surd(1, 1, 1, 2).unwrap()]);

        let (b, next) = jp_step(&cube_roots()).unwrap();
        assert_eq!(b, JPDigitVector::from_i64(&[1, 1]));
        // f1 = ∛2 - 1, f2 = ∛4 - 1
        let f1 = 2f64.cbrt() - 1.0;
        let f2 = 4f64.cbrt() - 1.0;
        assert!((next[0].to_f64() - f2 / f1).abs() < 1e-12);
        assert!((next[1].to_f64() - 1.0 / f1).abs() < 1e-12);
        assert!((next[0].to_f64() - 2.2599).abs() < 1e-4);
        assert!((next[1].to_f64() - 3.8473).abs() < 1e-4);

        let rat = [RealValue::from(2), RealValue::rational(7, 3).unwrap()];
        assert_eq!(jp_step(&rat), Err(Error::DegenerateStep));
    }

    #[test]
    fn expand_examples() {
        let r2 = RealValue::surd(0, 1, 1, 2).unwrap();
        let e = jp_expand(std::slice::from_ref(&r2), 5).unwrap();
        let digits: Vec<_> = e.steps.iter().map(|s| s.0[0].clone()).collect();
        assert_eq!(digits, cf_expand(&r2, 100).unwrap().digits(5));
        assert!(e.truncated && !e.terminated);

        let e = jp_expand(&cube_roots(), 1).unwrap();
        assert_eq!(e.steps, vec![JPDigitVector::from_i64(&[1, 1])]);

        let rat = [
            RealValue::rational(3, 2).unwrap(),
            RealValue::rational(4, 3).unwrap(),
        ];
        let e = jp_expand(&rat, 10).unwrap();
        assert!(e.terminated && !e.truncated);
        assert_eq!(
            e.steps,
            vec![
                JPDigitVector::from_i64(&[1, 1]),
                JPDigitVector::from_i64(&[0, 2])
            ]
        );
    }

    #[test]
    fn step_matrix_examples() {
        let m = jp_step_matrix(&JPDigitVector::from_i64(&[1, 1]), 3).unwrap();
        assert_eq!(m.to_string(), "[[0,0,1],[1,0,1],[0,1,1]]");
        let m = jp_step_matrix(&JPDigitVector::from_i64(&[7]), 2).unwrap();
        assert_eq!(m, UnimodularMatrix::from_2x2(0, 1, 1, 7).unwrap());
        let m = jp_step_matrix(&JPDigitVector::from_i64(&[0, 0]), 3).unwrap();
        assert_eq!(m.to_string(), "[[0,0,1],[1,0,0],[0,1,0]]");
        assert!(matches!(
            jp_step_matrix(&JPDigitVector::from_i64(&[1]), 3),
            Err(Error::DimensionMismatch { .. })
        ));
    }

    #[test]
    fn convergent_examples() {
        let r2 = RealValue::surd(0, 1, 1, 2).unwrap();
        let e = jp_expand(&[r2], 10).unwrap();
        assert_eq!(
            jp_convergents(&e, 0).unwrap().matrix,
            UnimodularMatrix::identity(2)
        );
        assert_eq!(
            jp_convergents(&e, 1).unwrap().matrix,
            jp_step_matrix(&e.steps[0], 2).unwrap()
        );
        let r = jp_reconstruct(&e, 4).unwrap();
        assert_eq!(r, vec![RealValue::rational(17, 12).unwrap()]);
        assert_eq!(jp_reconstruct(&e, 0), Err(Error::ZeroLeadingEntry));
        assert!(matches!(
            jp_convergents(&e, 11),
            Err(Error::NotEnoughSteps { .. })
        ));
        let dump = jp_convergents(&e, 4).unwrap().to_json().to_string();
        assert_eq!(
            dump,
            r#"{"k":4,"matrix":[[5,12],[7,17]],"ratio":["17/12"]}"#
        );
    }

    #[test]
    fn cube_root_reconstruction() {
        let e = jp_expand(&cube_roots(), 20).unwrap();
        let r = jp_reconstruct(&e, 20).unwrap();
        assert!((r[0].to_f64() - 1.2599210498948732).abs() < 1e-6);
        assert!((r[1].to_f64() - 1.5874010519681994).abs() < 1e-6);
        // every non-initial step has last digit at least 1
        assert!(e.steps[1..].iter().all(|s| s.0[1] >= BigInt::one()));
    }

    #[test]
    fn json_form() {
        let rat = [
            RealValue::rational(3, 2).unwrap(),
            RealValue::rational(4, 3).unwrap(),
        ];
        let e = jp_expand(&rat, 10).unwrap();
        assert_eq!(
            e.to_json().to_string(),
            r#"{"n":3,"steps":[[1,1],[0,2]],"terminated":true,"truncated":false}"#
        );
    }
}
