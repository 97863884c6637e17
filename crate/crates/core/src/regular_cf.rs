//! Regular continued fractions `x = a0 + 1/(a1 + 1/(a2 + ...))`.
//!
//! Convergents are carried as products of the elementary matrices
//! `T(a) = (0 1; 1 a)`:
//!
//! ```text
//! T(a0) T(a1) ... T(ak) = ( q_{k-1}  q_k )
//!                         ( p_{k-1}  p_k )
//! ```
//!
//! so the columns of the partial product hold consecutive convergents. Two
//! irrationals are GL(2,Z)-equivalent exactly when their expansions share a
//! tail; for quadratic surds this is decided by comparing minimal periods up to
//! rotation.

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use serde_json::{json, Value};
use std::collections::HashMap;
use std::fmt;

use crate::error::{Error, Result};
use crate::json::int_json;
use crate::matrix::{IntMatrix, UnimodularMatrix};
use crate::realnum::{QuadraticSurd, RealValue};
use crate::Decision;

/// Digits of a regular continued fraction: finite, eventually periodic, or cut
/// off at a depth limit.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct CFExpansion {
    pub preperiod: Vec<BigInt>,
    pub period: Option<Vec<BigInt>>,
    pub truncated: bool,
}

impl CFExpansion {
    pub fn finite(digits: Vec<BigInt>) -> Self {
        CFExpansion {
            preperiod: digits,
            period: None,
            truncated: false,
        }
    }

    pub fn from_i64(preperiod: &[i64], period: Option<&[i64]>) -> Self {
        CFExpansion {
            preperiod: preperiod.iter().map(|&x| x.into()).collect(),
            period: period.map(|p| p.iter().map(|&x| x.into()).collect()),
            truncated: false,
        }
    }

    /// Number of digits available, `None` when periodic (unbounded).
    pub fn len(&self) -> Option<usize> {
        match self.period {
            Some(_) => None,
            None => Some(self.preperiod.len()),
        }
    }

    pub fn is_empty(&self) -> bool {
        self.len() == Some(0)
    }

    /// The `i`-th partial quotient, unrolling the period.
    pub fn digit(&self, i: usize) -> Option<&BigInt> {
        if i < self.preperiod.len() {
            return Some(&self.preperiod[i]);
        }
        let p = self.period.as_ref()?;
        Some(&p[(i - self.preperiod.len()) % p.len()])
    }

    /// The first `k` digits (fewer if the expansion is shorter).
    pub fn digits(&self, k: usize) -> Vec<BigInt> {
        (0..k).map_while(|i| self.digit(i).cloned()).collect()
    }

    pub fn to_json(&self) -> Value {
        json!({
            "preperiod": self.preperiod.iter().map(int_json).collect::<Vec<_>>(),
            "period": self.period.as_ref().map(|p| p.iter().map(int_json).collect::<Vec<_>>()),
            "truncated": self.truncated,
        })
    }

    /// Parses the `[a0;a1,a2,(p1,p2)]` form produced by `Display`.
    pub fn parse(s: &str) -> Result<CFExpansion> {
        let s: String = s.chars().filter(|c| !c.is_whitespace()).collect();
        let body = s
            .strip_prefix('[')
            .and_then(|t| t.strip_suffix(']'))
            .ok_or_else(|| Error::Parse(format!("expansion must be bracketed: `{s}`")))?;
        let (body, truncated) = match body.strip_suffix(",...") {
            Some(b) => (b.to_string(), true),
            None => match body.strip_suffix("...") {
                Some(b) => (b.trim_end_matches([',', ';']).to_string(), true),
                None => (body.to_string(), false),
            },
        };
        let (pre, per) = match body.find('(') {
            Some(i) => {
                let inner = body[i + 1..]
                    .strip_suffix(')')
                    .ok_or_else(|| Error::Parse("period must close the expansion".into()))?;
                (body[..i].to_string(), Some(inner.to_string()))
            }
            None => (body, None),
        };
        let ints = |t: &str| -> Result<Vec<BigInt>> {
            t.split([',', ';'])
                .filter(|x| !x.is_empty())
                .map(|x| {
                    x.parse::<BigInt>()
                        .map_err(|_| Error::Parse(format!("invalid digit `{x}`")))
                })
                .collect()
        };
        let preperiod = ints(&pre)?;
        let period = per.as_deref().map(ints).transpose()?;
        if matches!(&period, Some(p) if p.is_empty()) {
            return Err(Error::Parse("empty period".into()));
        }
        Ok(CFExpansion {
            preperiod,
            period,
            truncated,
        })
    }
}

impl fmt::Display for CFExpansion {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let join = |v: &[BigInt]| {
            v.iter()
                .map(|x| x.to_string())
                .collect::<Vec<_>>()
                .join(",")
        };
        write!(f, "[")?;
        let mut first = true;
        for (i, a) in self.preperiod.iter().enumerate() {
            if i == 1 {
                write!(f, ";")?;
            } else if i > 1 {
                write!(f, ",")?;
            }
            write!(f, "{a}")?;
            first = false;
        }
        if let Some(p) = &self.period {
            if !first {
                write!(f, "{}", if self.preperiod.len() == 1 { ";" } else { "," })?;
            }
            write!(f, "({})", join(p))?;
        }
        if self.truncated {
            let sep = match self.preperiod.len() {
                0 => "",
                1 => ";",
                _ => ",",
            };
            write!(f, "{sep}...")?;
        }
        write!(f, "]")
    }
}

/// One convergent `p/q` together with the partial product `T(a0)...T(ai)`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Convergent {
    pub p: BigInt,
    pub q: BigInt,
    pub t_product: UnimodularMatrix,
}

impl Convergent {
    pub fn value(&self) -> BigRational {
        BigRational::new(self.p.clone(), self.q.clone())
    }
}

/// The elementary factor `(0 1; 1 a)`.
pub fn elementary(a: &BigInt) -> UnimodularMatrix {
    let m = IntMatrix::from_rows(vec![
        vec![BigInt::zero(), BigInt::one()],
        vec![BigInt::one(), a.clone()],
    ])
    .expect("2x2");
    UnimodularMatrix::new(m).expect("det -1")
}

fn expand_rational(r: &BigRational, max_depth: usize) -> CFExpansion {
    let (mut p, mut q) = (r.numer().clone(), r.denom().clone());
    let mut digits = Vec::new();
    while !q.is_zero() {
        if digits.len() == max_depth {
            return CFExpansion {
                preperiod: digits,
                period: None,
                truncated: true,
            };
        }
        let (a, rem) = p.div_mod_floor(&q);
        digits.push(a);
        p = std::mem::replace(&mut q, rem);
    }
    CFExpansion::finite(digits)
}

fn expand_surd(x: &QuadraticSurd, max_depth: usize) -> CFExpansion {
    let mut seen: HashMap<QuadraticSurd, usize> = HashMap::new();
    let mut digits = Vec::new();
    let mut cur = x.clone();
    loop {
        if let Some(&j) = seen.get(&cur) {
            let period = digits.split_off(j);
            return CFExpansion {
                preperiod: digits,
                period: Some(period),
                truncated: false,
            };
        }
        if digits.len() == max_depth {
            return CFExpansion {
                preperiod: digits,
                period: None,
                truncated: true,
            };
        }
        // a0 always stays in the preperiod
        if !digits.is_empty() {
            seen.insert(cur.clone(), digits.len());
        }
        let a = cur.floor();
        let frac = match cur.add_rational(&BigRational::from_integer(-&a)) {
            crate::realnum::SurdOrRational::Surd(s) => s,
            _ => unreachable!("an irrational minus an integer is irrational"),
        };
        digits.push(a);
        cur = frac.recip();
    }
}

fn expand_approx(x: &RealValue, max_depth: usize) -> Result<CFExpansion> {
    let mut digits = Vec::new();
    let mut cur = x.clone();
    while digits.len() < max_depth {
        let step = cur.floor().and_then(|a| {
            let next = cur.sub(&RealValue::from(a.clone()))?.recip()?;
            Ok((a, next))
        });
        match step {
            Ok((a, next)) => {
                digits.push(a);
                cur = next;
            }
            Err(e @ Error::PrecisionExhausted(_)) if digits.is_empty() => return Err(e),
            Err(Error::PrecisionExhausted(_)) => break,
            Err(e) => return Err(e),
        }
    }
    Ok(CFExpansion {
        preperiod: digits,
        period: None,
        truncated: true,
    })
}

/// Regular continued fraction of `x`.
///
/// Rationals give the finite canonical expansion (never ending in 1 unless it
/// is `[1]`), surds give preperiod and minimal period found by exact repetition
/// of the Gauss-map state after `a0` (`φ = [1;(1)]`, `1 + √2 = [2;(2)]`),
/// interval values give digits until `max_depth` or
/// until the enclosure no longer pins a digit down (`truncated` is set; an
/// error is returned only if not even `a0` can be determined).
pub fn cf_expand(x: &RealValue, max_depth: usize) -> Result<CFExpansion> {
    match x {
        RealValue::Rational(r) => Ok(expand_rational(r, max_depth)),
        RealValue::Surd(s) => Ok(expand_surd(s, max_depth)),
        RealValue::Approx(_) => expand_approx(x, max_depth),
    }
}

/// Convergents `0..=k` with their partial products.
pub fn cf_convergents(e: &CFExpansion, k: usize) -> Result<Vec<Convergent>> {
    let digits = e.digits(k + 1);
    if digits.len() < k + 1 {
        return Err(Error::NotEnoughDigits {
            available: digits.len(),
            requested: k + 1,
        });
    }
    let (mut p_prev, mut p) = (BigInt::zero(), BigInt::one());
    let (mut q_prev, mut q) = (BigInt::one(), BigInt::zero());
    let mut t = UnimodularMatrix::identity(2);
    let mut out = Vec::with_capacity(k + 1);
    for a in &digits {
        let p_next = a * &p + &p_prev;
        let q_next = a * &q + &q_prev;
        p_prev = std::mem::replace(&mut p, p_next);
        q_prev = std::mem::replace(&mut q, q_next);
        t = &t * &elementary(a);
        out.push(Convergent {
            p: p.clone(),
            q: q.clone(),
            t_product: t.clone(),
        });
    }
    Ok(out)
}

/// Evaluates a finite digit list bottom-up.
pub fn evaluate_digits(digits: &[BigInt]) -> Option<BigRational> {
    let (last, rest) = digits.split_last()?;
    let mut acc = BigRational::from_integer(last.clone());
    for a in rest.iter().rev() {
        if acc.is_zero() {
            return None;
        }
        acc = BigRational::from_integer(a.clone()) + acc.recip();
    }
    Some(acc)
}

/// `(a x + b) / (c x + d)` for a 2×2 unimodular `m`.
pub fn mobius_apply(m: &UnimodularMatrix, x: &RealValue) -> Result<RealValue> {
    if m.dim() != 2 {
        return Err(Error::DimensionMismatch {
            expected: 2,
            got: m.dim(),
        });
    }
    let (a, b, c, d) = m.entries_2x2();
    let num = x.mul_int(a)?.add(&RealValue::from(b.clone()))?;
    let den = x.mul_int(c)?.add(&RealValue::from(d.clone()))?;
    if let RealValue::Rational(r) = &den {
        if r.is_zero() {
            return Err(Error::PoleAtInput);
        }
    }
    num.div(&den)
}

/// `true` when `a` and `b` have equal length and `b` is a rotation of `a`.
pub(crate) fn is_rotation(a: &[BigInt], b: &[BigInt]) -> bool {
    a.len() == b.len()
        && (0..a.len().max(1)).any(|r| (0..a.len()).all(|i| a[(i + r) % a.len()] == b[i]))
}

/// Limit on Gauss-map steps used when deciding equivalence of surds.
const SURD_PERIOD_LIMIT: usize = 1 << 20;

/// GL(2,Z)-equivalence of two reals.
///
/// Rationals form one class. Quadratic surds are compared exactly through
/// their minimal periods. For interval values no tail equality can be proved,
/// so the answer is `Unknown`, with a note on what the first `depth_budget`
/// digits show.
pub fn gl2_equivalent(x: &RealValue, y: &RealValue, depth_budget: usize) -> Decision {
    use RealValue::*;
    match (x, y) {
        (Rational(_), Rational(_)) => Decision::Yes,
        (Rational(_), Surd(_)) | (Surd(_), Rational(_)) => Decision::No,
        (Surd(s), Surd(t)) => {
            if s.d() != t.d() {
                return Decision::No;
            }
            let limit = SURD_PERIOD_LIMIT.max(depth_budget);
            let (ex, ey) = (expand_surd(s, limit), expand_surd(t, limit));
            match (&ex.period, &ey.period) {
                (Some(p), Some(q)) => {
                    if is_rotation(p, q) {
                        Decision::Yes
                    } else {
                        Decision::No
                    }
                }
                _ => Decision::Unknown(format!("period longer than {limit} digits")),
            }
        }
        _ => {
            let note = match (cf_expand(x, depth_budget), cf_expand(y, depth_budget)) {
                (Ok(ex), Ok(ey)) => match common_tail(&ex.preperiod, &ey.preperiod, 8) {
                    Some((i, j)) => format!(
                        "digits agree from offsets {i} and {j} up to depth {depth_budget}; tails cannot be proved equal for interval data"
                    ),
                    None => format!("no common tail within {depth_budget} digits"),
                },
                (Err(e), _) | (_, Err(e)) => format!("expansion failed: {e}"),
            };
            Decision::Unknown(note)
        }
    }
}

/// Offsets `(i, j)` such that `a[i..]` and `b[j..]` agree on an overlap of at
/// least `min_overlap` digits, smallest `i + j` first.
pub fn common_tail(a: &[BigInt], b: &[BigInt], min_overlap: usize) -> Option<(usize, usize)> {
    let mut best: Option<(usize, usize)> = None;
    for i in 0..a.len() {
        for j in 0..b.len() {
            let overlap = (a.len() - i).min(b.len() - j);
            if overlap < min_overlap {
                continue;
            }
            if (0..overlap).all(|t| a[i + t] == b[j + t])
                && best.is_none_or(|(bi, bj)| i + j < bi + bj)
            {
                best = Some((i, j));
            }
        }
    }
    best
}

/// Euclidean factorization of a non-negative 2×2 unimodular matrix into
/// elementary factors: returns `[a0, ..., ak]` with `T(a0)...T(ak) = m`.
///
/// Interior digits are at least 1; a 0 can appear only first or last. With
/// `pad_parity`, the factor list is made non-empty and of even length using
/// `T(0)² = I`. Since `det T(a) = -1`, the factor count of `m` is even iff
/// `det m = 1`, so padding a determinant -1 matrix fails with
/// [`Error::ParityUnreachable`].
pub fn factor_unimodular(m: &UnimodularMatrix, pad_parity: bool) -> Result<Vec<BigInt>> {
    if m.dim() != 2 {
        return Err(Error::DimensionMismatch {
            expected: 2,
            got: m.dim(),
        });
    }
    if !m.matrix().is_nonnegative() {
        return Err(Error::NotFactorable("negative entries".into()));
    }
    let (x, y, z, w) = m.entries_2x2();
    // columns c1 = (x, z), c2 = (y, w); peeling T(a) on the right maps
    // [c1 | c2] to [c2 - a c1 | c1]
    let (mut c1, mut c2) = ((x.clone(), z.clone()), (y.clone(), w.clone()));
    let one = BigInt::one();
    let zero = BigInt::zero();
    let mut rev = Vec::new();
    loop {
        let is_identity = c1 == (one.clone(), zero.clone()) && c2 == (zero.clone(), one.clone());
        if is_identity {
            break;
        }
        let is_swap = c1 == (zero.clone(), one.clone()) && c2 == (one.clone(), zero.clone());
        if is_swap {
            rev.push(BigInt::zero());
            break;
        }
        let mut bound: Option<BigInt> = None;
        for (num, den) in [(&c2.0, &c1.0), (&c2.1, &c1.1)] {
            if den.is_positive() {
                let q = num / den;
                bound = Some(bound.map_or(q.clone(), |b| b.min(q)));
            }
        }
        let a = bound.ok_or_else(|| Error::NotFactorable("zero column".into()))?;
        if a.is_zero() {
            if rev.last().is_some_and(|l: &BigInt| l.is_zero()) {
                return Err(Error::NotFactorable("Euclidean reduction stalled".into()));
            }
            rev.push(BigInt::zero());
            std::mem::swap(&mut c1, &mut c2);
            continue;
        }
        let next = (&c2.0 - &a * &c1.0, &c2.1 - &a * &c1.1);
        c2 = std::mem::replace(&mut c1, next);
        rev.push(a);
    }
    rev.reverse();
    if pad_parity {
        if m.det().is_negative() {
            return Err(Error::ParityUnreachable);
        }
        if rev.is_empty() {
            rev = vec![BigInt::zero(), BigInt::zero()];
        }
    }
    Ok(rev)
}

/// Ordered product `T(a0)...T(ak)`; the identity for an empty list.
pub fn elementary_product(digits: &[BigInt]) -> UnimodularMatrix {
    digits.iter().fold(UnimodularMatrix::identity(2), |acc, a| {
        &acc * &elementary(a)
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn ints(v: &[i64]) -> Vec<BigInt> {
        v.iter().map(|&x| x.into()).collect()
    }

    fn phi() -> RealValue {
        RealValue::surd(1, 1, 2, 5).unwrap()
    }

    #[test]
    fn expand_examples() {
        let e = cf_expand(&RealValue::rational(3, 2).unwrap(), 100).unwrap();
        assert_eq!(e, CFExpansion::from_i64(&[1, 2], None));
        assert_eq!(
            cf_expand(&phi(), 100).unwrap(),
            CFExpansion::from_i64(&[1], Some(&[1]))
        );
        let r2 = RealValue::surd(0, 1, 1, 2).unwrap();
        assert_eq!(
            cf_expand(&r2, 100).unwrap(),
            CFExpansion::from_i64(&[1], Some(&[2]))
        );
        assert_eq!(cf_expand(&r2, 100).unwrap().to_string(), "[1;(2)]");
    }

    #[test]
    fn purely_periodic_and_negative() {
        // the integer part is kept out of the period: 1 + √2 = [2;(2)]
        let x = RealValue::surd(1, 1, 1, 2).unwrap();
        let e = cf_expand(&x, 100).unwrap();
        assert_eq!(e, CFExpansion::from_i64(&[2], Some(&[2])));
        assert_eq!(CFExpansion::from_i64(&[], Some(&[2])).to_string(), "[(2)]");
        let neg = cf_expand(&RealValue::rational(-3, 2).unwrap(), 100).unwrap();
        assert_eq!(neg.preperiod, ints(&[-2, 2]));
        // √7 = [2;(1,1,1,4)]
        let s7 = cf_expand(&RealValue::surd(0, 1, 1, 7).unwrap(), 100).unwrap();
        assert_eq!(s7.to_string(), "[2;(1,1,1,4)]");
        assert_eq!(CFExpansion::parse("[2;(1,1,1,4)]").unwrap(), s7);
    }

    #[test]
    fn truncation_and_interval_digits() {
        let e = cf_expand(&phi(), 0).unwrap();
        assert!(e.truncated);
        let e = cf_expand(&RealValue::rational(355, 113).unwrap(), 2).unwrap();
        assert!(e.truncated);
        assert_eq!(e.preperiod, ints(&[3, 7]));
        let root2 = crate::realnum::parse_real("root:2:2~256").unwrap();
        let e = cf_expand(&root2, 30).unwrap();
        assert!(e.truncated);
        assert_eq!(e.preperiod[0], 1.into());
        assert!(e.preperiod[1..].iter().all(|d| *d == 2.into()));
        assert_eq!(e.preperiod.len(), 30);
        let dec = crate::realnum::parse_real("dec:1.41421356~64").unwrap();
        let e = cf_expand(&dec, 50).unwrap();
        assert!(e.truncated && e.preperiod.len() < 50 && e.preperiod.len() > 3);
        let ambiguous = crate::realnum::parse_real("dec:2.0~0").unwrap();
        assert!(matches!(
            cf_expand(&ambiguous, 5),
            Err(Error::PrecisionExhausted(_))
        ));
    }

    #[test]
    fn convergent_examples() {
        let e = CFExpansion::finite(ints(&[1, 1, 1]));
        let c = cf_convergents(&e, 2).unwrap();
        let pq: Vec<_> = c.iter().map(|c| (c.p.clone(), c.q.clone())).collect();
        assert_eq!(
            pq,
            vec![
                (1.into(), 1.into()),
                (2.into(), 1.into()),
                (3.into(), 2.into())
            ]
        );
        let c = cf_convergents(&CFExpansion::finite(ints(&[2])), 0).unwrap();
        assert_eq!(
            c[0].t_product,
            UnimodularMatrix::from_2x2(0, 1, 1, 2).unwrap()
        );
        assert_eq!((c[0].p.clone(), c[0].q.clone()), (2.into(), 1.into()));
        let c = cf_convergents(&CFExpansion::finite(ints(&[1, 2])), 1).unwrap();
        assert_eq!(
            c[1].t_product,
            UnimodularMatrix::from_2x2(1, 2, 1, 3).unwrap()
        );
        assert!(matches!(
            cf_convergents(&CFExpansion::finite(ints(&[1, 2])), 2),
            Err(Error::NotEnoughDigits {
                available: 2,
                requested: 3
            })
        ));
    }

    #[test]
    fn equivalence_examples() {
        assert_eq!(gl2_equivalent(&phi(), &phi(), 50), Decision::Yes);
        let m = UnimodularMatrix::from_2x2(2, 1, 1, 1).unwrap();
        let image = mobius_apply(&m, &phi()).unwrap();
        assert_eq!(gl2_equivalent(&phi(), &image, 50), Decision::Yes);
        let r2 = RealValue::surd(0, 1, 1, 2).unwrap();
        assert_eq!(gl2_equivalent(&r2, &phi(), 50), Decision::No);
        // √8 lives in Q(√2) but in a different class
        let r8 = RealValue::surd(0, 1, 1, 8).unwrap();
        assert_eq!(gl2_equivalent(&r2, &r8, 50), Decision::No);
        assert_eq!(
            gl2_equivalent(&RealValue::rational(3, 7).unwrap(), &RealValue::from(5), 5),
            Decision::Yes
        );
        assert_eq!(gl2_equivalent(&RealValue::from(5), &phi(), 5), Decision::No);
        let approx = crate::realnum::parse_real("root:2:2~128").unwrap();
        assert!(matches!(
            gl2_equivalent(&approx, &r2, 20),
            Decision::Unknown(_)
        ));
    }

    #[test]
    fn mobius_examples() {
        let id = UnimodularMatrix::identity(2);
        assert_eq!(mobius_apply(&id, &phi()).unwrap(), phi());
        let swap = UnimodularMatrix::from_2x2(0, 1, 1, 0).unwrap();
        assert_eq!(
            mobius_apply(&swap, &phi()).unwrap(),
            RealValue::surd(-1, 1, 2, 5).unwrap()
        );
        let shift = UnimodularMatrix::from_2x2(1, 1, 0, 1).unwrap();
        assert_eq!(
            mobius_apply(&shift, &RealValue::rational(3, 2).unwrap()).unwrap(),
            RealValue::rational(5, 2).unwrap()
        );
        let m = UnimodularMatrix::from_2x2(1, 0, 2, 1).unwrap();
        assert_eq!(
            mobius_apply(&m, &RealValue::rational(-1, 2).unwrap()),
            Err(Error::PoleAtInput)
        );
    }

    #[test]
    fn factor_examples() {
        let m = UnimodularMatrix::from_2x2(0, 1, 1, 2).unwrap();
        assert_eq!(factor_unimodular(&m, false).unwrap(), ints(&[2]));
        let m = UnimodularMatrix::from_2x2(1, 2, 1, 3).unwrap();
        assert_eq!(factor_unimodular(&m, false).unwrap(), ints(&[1, 2]));
        let id = UnimodularMatrix::identity(2);
        assert_eq!(factor_unimodular(&id, false).unwrap(), ints(&[]));
        assert_eq!(factor_unimodular(&id, true).unwrap(), ints(&[0, 0]));
        assert_eq!(elementary_product(&ints(&[0, 0])), id);
        let m = UnimodularMatrix::from_2x2(2, 1, 1, 1).unwrap();
        let f = factor_unimodular(&m, false).unwrap();
        assert_eq!(f, ints(&[0, 1, 1, 0]));
        assert_eq!(elementary_product(&f), m);
        let neg = UnimodularMatrix::from_2x2(1, -1, 0, 1).unwrap();
        assert!(matches!(
            factor_unimodular(&neg, false),
            Err(Error::NotFactorable(_))
        ));
        let odd = UnimodularMatrix::from_2x2(0, 1, 1, 3).unwrap();
        assert_eq!(factor_unimodular(&odd, true), Err(Error::ParityUnreachable));
    }

    #[test]
    fn parse_display_forms() {
        for s in [
            "[1;2]",
            "[5]",
            "[(1,2)]",
            "[1;(2)]",
            "[0;1,(3,4)]",
            "[1;2,2,...]",
        ] {
            assert_eq!(CFExpansion::parse(s).unwrap().to_string(), s);
        }
        assert!(CFExpansion::parse("[1;()]").is_err());
        let e = CFExpansion::from_i64(&[1], Some(&[1]));
        assert_eq!(
            e.to_json().to_string(),
            r#"{"preperiod":[1],"period":[1],"truncated":false}"#
        );
    }

    fn arb_rational() -> impl Strategy<Value = BigRational> {
        (-100_000i64..100_000, 1i64..100_000)
            .prop_map(|(p, q)| BigRational::new(p.into(), q.into()))
    }

    proptest! {
        #[test]
        fn rational_round_trip(r in arb_rational()) {
            let e = cf_expand(&RealValue::Rational(r.clone()), 1000).unwrap();
            prop_assert!(!e.truncated);
            prop_assert_eq!(evaluate_digits(&e.preperiod).unwrap(), r);
            let n = e.preperiod.len();
            prop_assert!(n == 1 || e.preperiod[n - 1] != BigInt::one());
            prop_assert!(e.preperiod[1..].iter().all(|d| d.is_positive()));
        }

        #[test]
        fn factorization_inverts_product(digits in prop::collection::vec(1i64..30, 0..12), lead in 0i64..5, trail_zero in any::<bool>()) {
            let mut ds: Vec<BigInt> = std::iter::once(lead).chain(digits).map(BigInt::from).collect();
            if trail_zero { ds.push(BigInt::zero()); }
            let m = elementary_product(&ds);
            let f = factor_unimodular(&m, false).unwrap();
            prop_assert_eq!(elementary_product(&f), m);
        }

        #[test]
        fn convergent_columns_and_bound(a in 1i64..40, b in 1i64..8, c in 1i64..10, d in prop::sample::select(vec![2i64, 3, 5, 7, 11, 13])) {
            let x = RealValue::surd(a, b, c, d).unwrap();
            let e = cf_expand(&x, 100).unwrap();
            let convs = cf_convergents(&e, 20).unwrap();
            let (mut pp, mut qp) = (BigInt::one(), BigInt::zero());
            for cv in &convs {
                let t = cv.t_product.matrix();
                prop_assert_eq!(t.column(0), vec![qp.clone(), pp.clone()]);
                prop_assert_eq!(t.column(1), vec![cv.q.clone(), cv.p.clone()]);
                // |x - p/q| < 1/q²
                let err = x.sub(&RealValue::Rational(cv.value())).unwrap();
                let bound = RealValue::Rational(BigRational::new(BigInt::one(), &cv.q * &cv.q));
                prop_assert_eq!(crate::realnum::real_compare(&err.neg(), &bound).unwrap(), std::cmp::Ordering::Less);
                prop_assert_eq!(crate::realnum::real_compare(&err, &bound).unwrap(), std::cmp::Ordering::Less);
                pp = cv.p.clone();
                qp = cv.q.clone();
            }
        }
    }
}
