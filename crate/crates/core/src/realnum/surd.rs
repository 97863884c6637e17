//! Quadratic irrationals `(a + b√d) / c` in canonical form.

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use std::cmp::Ordering;

use super::interval::Interval;
use crate::error::{Error, Result};

/// A quadratic irrational `(a + b√d) / c`.
///
/// Always canonical: `c > 0`, `d > 1` squarefree, `b != 0` and
/// `gcd(a, b, c) = 1`. Two surds are equal iff their fields are equal.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct QuadraticSurd {
    a: BigInt,
    b: BigInt,
    c: BigInt,
    d: BigInt,
}

/// Either a rational or an irrational surd; the result of normalizing `(a + b√d)/c`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub enum SurdOrRational {
    Rational(BigRational),
    Surd(QuadraticSurd),
}

/// Split `d = s² · core` with `core` squarefree. Trial division; fine for the
/// radicand sizes that occur in practice.
pub(crate) fn squarefree_split(d: &BigInt) -> (BigInt, BigInt) {
    let mut rest = d.clone();
    let mut square = BigInt::one();
    let mut core = BigInt::one();
    let mut p = BigInt::from(2);
    while &p * &p <= rest {
        let mut e = 0u32;
        while rest.is_multiple_of(&p) {
            rest /= &p;
            e += 1;
        }
        if e > 0 {
            square *= p.pow(e / 2);
            if e % 2 == 1 {
                core *= &p;
            }
        }
        p += if p == BigInt::from(2) { 1 } else { 2 };
    }
    core *= rest;
    (square, core)
}

impl QuadraticSurd {
    /// Canonical value of `(a + b√d) / c`.
    pub fn normalize(a: BigInt, b: BigInt, c: BigInt, d: BigInt) -> Result<SurdOrRational> {
        if c.is_zero() {
            return Err(Error::ZeroDenominator);
        }
        if d.is_negative() {
            return Err(Error::NegativeRadicand);
        }
        if b.is_zero() || d.is_zero() {
            return Ok(SurdOrRational::Rational(BigRational::new(a, c)));
        }
        let (square, core) = squarefree_split(&d);
        let b = b * square;
        if core.is_one() {
            return Ok(SurdOrRational::Rational(BigRational::new(a + b, c)));
        }
        let (mut a, mut b, mut c) = (a, b, c);
        if c.is_negative() {
            a = -a;
            b = -b;
            c = -c;
        }
        let g = a.gcd(&b).gcd(&c);
        Ok(SurdOrRational::Surd(QuadraticSurd {
            a: a / &g,
            b: b / &g,
            c: c / &g,
            d: core,
        }))
    }

    pub(crate) fn from_parts(a: BigInt, b: BigInt, c: BigInt, d: &BigInt) -> SurdOrRational {
        // d is already squarefree here; c may be any non-zero sign
        let (mut a, mut b, mut c) = (a, b, c);
        if b.is_zero() {
            return SurdOrRational::Rational(BigRational::new(a, c));
        }
        if c.is_negative() {
            a = -a;
            b = -b;
            c = -c;
        }
        let g = a.gcd(&b).gcd(&c);
        SurdOrRational::Surd(QuadraticSurd {
            a: a / &g,
            b: b / &g,
            c: c / &g,
            d: d.clone(),
        })
    }

    pub fn a(&self) -> &BigInt {
        &self.a
    }
    pub fn b(&self) -> &BigInt {
        &self.b
    }
    pub fn c(&self) -> &BigInt {
        &self.c
    }
    pub fn d(&self) -> &BigInt {
        &self.d
    }

    /// Sign of `a + b√d` for squarefree `d > 1` and `b != 0` (never zero).
    fn numerator_sign(a: &BigInt, b: &BigInt, d: &BigInt) -> Ordering {
        if b.is_zero() {
            return a.cmp(&BigInt::zero());
        }
        let b_pos = b.is_positive();
        if (!a.is_negative() && b_pos) || (!a.is_positive() && !b_pos) {
            return if b_pos {
                Ordering::Greater
            } else {
                Ordering::Less
            };
        }
        // opposite signs: the larger magnitude wins
        let a2 = a * a;
        let b2d = b * b * d;
        if a2 > b2d {
            a.cmp(&BigInt::zero())
        } else {
            b.cmp(&BigInt::zero())
        }
    }

    /// Sign of the value; never `Equal` since the value is irrational.
    pub fn signum(&self) -> Ordering {
        Self::numerator_sign(&self.a, &self.b, &self.d)
    }

    pub fn floor(&self) -> BigInt {
        // floor(b√d) from the integer square root of b²d, which is never a square
        let r = (&self.b * &self.b * &self.d).sqrt();
        let fb = if self.b.is_positive() { r } else { -r - 1 };
        (&self.a + fb).div_floor(&self.c)
    }

    pub fn neg(&self) -> QuadraticSurd {
        QuadraticSurd {
            a: -&self.a,
            b: -&self.b,
            c: self.c.clone(),
            d: self.d.clone(),
        }
    }

    pub fn conjugate(&self) -> QuadraticSurd {
        QuadraticSurd {
            a: self.a.clone(),
            b: -&self.b,
            c: self.c.clone(),
            d: self.d.clone(),
        }
    }

    pub fn add_rational(&self, r: &BigRational) -> SurdOrRational {
        let (p, q) = (r.numer(), r.denom());
        Self::from_parts(&self.a * q + p * &self.c, &self.b * q, &self.c * q, &self.d)
    }

    pub fn mul_rational(&self, r: &BigRational) -> SurdOrRational {
        let (p, q) = (r.numer(), r.denom());
        Self::from_parts(&self.a * p, &self.b * p, &self.c * q, &self.d)
    }

    /// `None` when the radicands differ.
    pub fn add(&self, o: &QuadraticSurd) -> Option<SurdOrRational> {
        if self.d != o.d {
            return None;
        }
        Some(Self::from_parts(
            &self.a * &o.c + &o.a * &self.c,
            &self.b * &o.c + &o.b * &self.c,
            &self.c * &o.c,
            &self.d,
        ))
    }

    pub fn mul(&self, o: &QuadraticSurd) -> Option<SurdOrRational> {
        if self.d != o.d {
            return None;
        }
        Some(Self::from_parts(
            &self.a * &o.a + &self.b * &o.b * &self.d,
            &self.a * &o.b + &self.b * &o.a,
            &self.c * &o.c,
            &self.d,
        ))
    }

    /// `c / (a + b√d)`, rationalized by the conjugate. The norm is non-zero
    /// because the value is irrational.
    pub fn recip(&self) -> QuadraticSurd {
        let norm = &self.a * &self.a - &self.b * &self.b * &self.d;
        match Self::from_parts(&self.c * &self.a, -(&self.c * &self.b), norm, &self.d) {
            SurdOrRational::Surd(s) => s,
            SurdOrRational::Rational(_) => {
                unreachable!("reciprocal of an irrational is irrational")
            }
        }
    }

    /// Enclosure at about `w` bits.
    pub fn enclose(&self, w: u32) -> Interval {
        let shift = w as u64 + 2;
        let scaled = (&self.b * &self.b * &self.d) << (2 * shift);
        let r = scaled.sqrt();
        let (lo_b, hi_b) = if self.b.is_positive() {
            (r.clone(), r + 1)
        } else {
            (-r.clone() - 1, -r)
        };
        let den = &self.c << shift;
        let base = &self.a << shift;
        Interval::new(
            BigRational::new(&base + lo_b, den.clone()),
            BigRational::new(base + hi_b, den),
        )
        .rounded(w)
    }

    /// Primitive integer quadratic `A x² + B x + C` with this surd as a root.
    pub fn minimal_polynomial(&self) -> (BigInt, BigInt, BigInt) {
        // (c x - a)² = b² d
        let a2 = &self.c * &self.c;
        let b2 = BigInt::from(-2) * &self.a * &self.c;
        let c2 = &self.a * &self.a - &self.b * &self.b * &self.d;
        let g = a2.gcd(&b2).gcd(&c2);
        (a2 / &g, b2 / &g, c2 / &g)
    }

    /// Discriminant of the primitive minimal polynomial; invariant under GL(2,Z).
    pub fn discriminant(&self) -> BigInt {
        let (a, b, c) = self.minimal_polynomial();
        &b * &b - BigInt::from(4) * a * c
    }
}

impl SurdOrRational {
    pub fn add(&self, o: &SurdOrRational) -> Option<SurdOrRational> {
        use SurdOrRational::*;
        Some(match (self, o) {
            (Rational(x), Rational(y)) => Rational(x + y),
            (Rational(x), Surd(s)) | (Surd(s), Rational(x)) => s.add_rational(x),
            (Surd(s), Surd(t)) => s.add(t)?,
        })
    }

    pub fn neg(&self) -> SurdOrRational {
        match self {
            SurdOrRational::Rational(x) => SurdOrRational::Rational(-x),
            SurdOrRational::Surd(s) => SurdOrRational::Surd(s.neg()),
        }
    }

    pub fn mul(&self, o: &SurdOrRational) -> Option<SurdOrRational> {
        use SurdOrRational::*;
        Some(match (self, o) {
            (Rational(x), Rational(y)) => Rational(x * y),
            (Rational(x), Surd(s)) | (Surd(s), Rational(x)) => s.mul_rational(x),
            (Surd(s), Surd(t)) => s.mul(t)?,
        })
    }

    pub fn recip(&self) -> Result<SurdOrRational> {
        match self {
            SurdOrRational::Rational(x) if x.is_zero() => Err(Error::DivisionByZero),
            SurdOrRational::Rational(x) => Ok(SurdOrRational::Rational(x.recip())),
            SurdOrRational::Surd(s) => Ok(SurdOrRational::Surd(s.recip())),
        }
    }
}
