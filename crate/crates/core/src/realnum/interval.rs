//! Closed rational intervals with outward dyadic rounding.
//!
//! Endpoints are rounded to `w` significant bits after every operation so that
//! sizes stay bounded while the enclosure property is preserved.

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Interval {
    pub lo: BigRational,
    pub hi: BigRational,
}

fn bit_len(x: &BigInt) -> i64 {
    x.bits() as i64
}

fn pow2(e: u64) -> BigInt {
    BigInt::one() << e
}

/// Round `r` to a dyadic with about `w` significant bits; `up` picks the direction.
pub fn round_dyadic(r: &BigRational, w: u32, up: bool) -> BigRational {
    if r.is_zero() {
        return r.clone();
    }
    let (n, d) = (r.numer(), r.denom());
    let e = bit_len(n) - bit_len(d);
    let shift = w as i64 - e;
    let (num, den) = if shift >= 0 {
        (n << shift as u64, d.clone())
    } else {
        (n.clone(), d << (-shift) as u64)
    };
    let m = if up {
        num.div_ceil(&den)
    } else {
        num.div_floor(&den)
    };
    if shift >= 0 {
        BigRational::new(m, pow2(shift as u64))
    } else {
        BigRational::from_integer(m << (-shift) as u64)
    }
}

impl Interval {
    pub fn point(x: BigRational) -> Self {
        Interval {
            lo: x.clone(),
            hi: x,
        }
    }

    pub fn new(lo: BigRational, hi: BigRational) -> Self {
        debug_assert!(lo <= hi);
        Interval { lo, hi }
    }

    pub fn width(&self) -> BigRational {
        &self.hi - &self.lo
    }

    pub fn rounded(self, w: u32) -> Self {
        Interval {
            lo: round_dyadic(&self.lo, w, false),
            hi: round_dyadic(&self.hi, w, true),
        }
    }

    pub fn contains_zero(&self) -> bool {
        !self.lo.is_positive() && !self.hi.is_negative()
    }

    pub fn neg(&self) -> Self {
        Interval {
            lo: -&self.hi,
            hi: -&self.lo,
        }
    }

    pub fn add(&self, o: &Self, w: u32) -> Self {
        Interval::new(&self.lo + &o.lo, &self.hi + &o.hi).rounded(w)
    }

    pub fn sub(&self, o: &Self, w: u32) -> Self {
        Interval::new(&self.lo - &o.hi, &self.hi - &o.lo).rounded(w)
    }

    pub fn mul(&self, o: &Self, w: u32) -> Self {
        let c = [
            &self.lo * &o.lo,
            &self.lo * &o.hi,
            &self.hi * &o.lo,
            &self.hi * &o.hi,
        ];
        let lo = c.iter().min().unwrap().clone();
        let hi = c.iter().max().unwrap().clone();
        Interval::new(lo, hi).rounded(w)
    }

    /// `None` when the divisor straddles zero.
    pub fn div(&self, o: &Self, w: u32) -> Option<Self> {
        if o.contains_zero() {
            return None;
        }
        let inv = Interval::new(o.hi.recip(), o.lo.recip());
        Some(self.mul(&inv, w))
    }

    /// Intersection with a previous enclosure of the same value.
    pub fn intersect(&self, o: &Self) -> Self {
        let lo = if self.lo > o.lo { &self.lo } else { &o.lo };
        let hi = if self.hi < o.hi { &self.hi } else { &o.hi };
        if lo <= hi {
            Interval::new(lo.clone(), hi.clone())
        } else {
            // Disjoint enclosures cannot happen for sound inputs; keep the newer one.
            self.clone()
        }
    }
}

/// Enclosure of the real `degree`-th root of a rational at `w` bits.
pub fn root_enclosure(radicand: &BigRational, degree: u32, w: u32) -> Interval {
    if radicand.is_negative() {
        // only odd degrees reach here
        return root_enclosure(&-radicand, degree, w).neg();
    }
    let scale = pow2(w as u64 * degree as u64);
    let scaled = radicand * BigRational::from_integer(scale);
    let lo_int = scaled.floor().to_integer().nth_root(degree);
    let hi_int = scaled.ceil().to_integer().nth_root(degree) + 1;
    let den = pow2(w as u64);
    Interval::new(
        BigRational::new(lo_int, den.clone()),
        BigRational::new(hi_int, den),
    )
}

/// Fixed-point `atanh(y)` for `0 <= y <= 1/3`, `y` given scaled by `2^frac`.
/// Returns the scaled approximation and an error bound in units of `2^-frac`.
fn atanh_fixed(y: &BigInt, frac: u64) -> (BigInt, BigInt) {
    let y2 = (y * y) >> frac;
    let mut term = y.clone();
    let mut sum = BigInt::zero();
    let mut j: u64 = 0;
    while !term.is_zero() {
        sum += &term / BigInt::from(2 * j + 1);
        term = (&term * &y2) >> frac;
        j += 1;
    }
    (sum, BigInt::from(8 * (j + 4)))
}

/// Rigorous enclosure of `ln(r)` for rational `r > 0`, accurate to roughly `2^-w`.
pub fn ln_enclosure(r: &BigRational, w: u32) -> Interval {
    assert!(r.is_positive(), "logarithm of a non-positive number");
    let frac = w as u64 + 40;
    let one = pow2(frac);

    let mut k = bit_len(r.numer()) - bit_len(r.denom());
    let mut m = if k >= 0 {
        r / BigRational::from_integer(pow2(k as u64))
    } else {
        r * BigRational::from_integer(pow2((-k) as u64))
    };
    let two = BigRational::from_integer(BigInt::from(2));
    while m < BigRational::one() {
        m *= &two;
        k -= 1;
    }
    while m >= two {
        m /= &two;
        k += 1;
    }

    // y = (m - 1) / (m + 1) in [0, 1/3)
    let y_rat = (&m - BigRational::one()) / (&m + BigRational::one());
    let y = (y_rat * BigRational::from_integer(one.clone()))
        .floor()
        .to_integer();
    let (at, at_err) = atanh_fixed(&y, frac);
    let third = &one / BigInt::from(3);
    let (ln2_half, ln2_err) = atanh_fixed(&third, frac);

    let k_big = BigInt::from(k);
    let approx = (at << 1u32) + (&ln2_half << 1u32) * &k_big;
    let err = (at_err << 1u32) + (ln2_err << 1u32) * (k_big.abs() + 1) + BigInt::from(16);
    let den = one;
    Interval::new(
        BigRational::new(&approx - &err, den.clone()),
        BigRational::new(&approx + &err, den),
    )
}
