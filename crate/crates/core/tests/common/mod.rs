//! Oracles written independently of the library code paths they check.
#![allow(dead_code)]

use num_bigint::BigInt;
use num_integer::{Integer, Roots};
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use rand::Rng;
use rand_chacha::ChaCha8Rng;

use perron::{RealValue, UnimodularMatrix};

pub fn int(x: i64) -> BigInt {
    BigInt::from(x)
}

pub fn rat(n: i64, d: i64) -> BigRational {
    BigRational::new(n.into(), d.into())
}

/// Row-major product of square integer matrices.
pub fn mat_mul(a: &[Vec<BigInt>], b: &[Vec<BigInt>]) -> Vec<Vec<BigInt>> {
    let n = a.len();
    (0..n)
        .map(|i| {
            (0..n)
                .map(|j| (0..n).map(|k| &a[i][k] * &b[k][j]).sum())
                .collect()
        })
        .collect()
}

pub fn identity(n: usize) -> Vec<Vec<BigInt>> {
    (0..n)
        .map(|i| {
            (0..n)
                .map(|j| {
                    if i == j {
                        BigInt::one()
                    } else {
                        BigInt::zero()
                    }
                })
                .collect()
        })
        .collect()
}

/// Cofactor expansion along the first row.
pub fn det(m: &[Vec<BigInt>]) -> BigInt {
    let n = m.len();
    if n == 1 {
        return m[0][0].clone();
    }
    let mut acc = BigInt::zero();
    for j in 0..n {
        let minor: Vec<Vec<BigInt>> = m[1..]
            .iter()
            .map(|r| {
                r.iter()
                    .enumerate()
                    .filter(|&(c, _)| c != j)
                    .map(|(_, x)| x.clone())
                    .collect()
            })
            .collect();
        let term = &m[0][j] * det(&minor);
        if j % 2 == 0 {
            acc += term;
        } else {
            acc -= term;
        }
    }
    acc
}

pub fn rows(m: &UnimodularMatrix) -> Vec<Vec<BigInt>> {
    m.matrix().rows()
}

/// `(0 1; 1 a)`.
pub fn t(a: &BigInt) -> Vec<Vec<BigInt>> {
    vec![vec![int(0), int(1)], vec![int(1), a.clone()]]
}

/// Jacobi-Perron step matrix built directly from its shape.
pub fn jp_matrix(b: &[BigInt]) -> Vec<Vec<BigInt>> {
    let n = b.len() + 1;
    let mut m = vec![vec![int(0); n]; n];
    m[0][n - 1] = int(1);
    for i in 1..n {
        m[i][i - 1] = int(1);
        m[i][n - 1] = b[i - 1].clone();
    }
    m
}

/// Bottom-up evaluation of a finite continued fraction.
pub fn cf_value(digits: &[BigInt]) -> BigRational {
    let mut acc: Option<BigRational> = None;
    for a in digits.iter().rev() {
        let a = BigRational::from_integer(a.clone());
        acc = Some(match acc {
            None => a,
            Some(x) => a + x.recip(),
        });
    }
    acc.expect("non-empty")
}

/// Discriminant of the primitive integer minimal polynomial of
/// `(a + b√d)/c`: from `c²x² - 2ac·x + (a² - b²d)`.
pub fn surd_discriminant(a: &BigInt, b: &BigInt, c: &BigInt, d: &BigInt) -> BigInt {
    let p2 = c * c;
    let p1: BigInt = -(a * c * BigInt::from(2));
    let p0 = a * a - b * b * d;
    let g = p2.gcd(&p1).gcd(&p0);
    let (p2, p1, p0) = (p2 / &g, p1 / &g, p0 / &g);
    &p1 * &p1 - p2 * p0 * 4
}

/// Random quadratic surd `(a + b√d)/c` with `d` not a square. Returns the
/// value with the raw parameters.
pub fn random_surd(rng: &mut ChaCha8Rng) -> (RealValue, [i64; 4]) {
    loop {
        let a = rng.gen_range(-20..=20);
        let b = rng.gen_range(1..=5) * if rng.gen_bool(0.5) { 1 } else { -1 };
        let c = rng.gen_range(1..=10);
        let d = rng.gen_range(2..=30);
        let r = d.sqrt();
        if r * r == d {
            continue;
        }
        let v = RealValue::surd(a, b, c, d).unwrap();
        if let RealValue::Surd(_) = v {
            return (v, [a, b, c, d]);
        }
    }
}

/// Random 2×2 integer matrix of determinant ±1 with entries in `[-10, 10]`.
pub fn random_gl2(rng: &mut ChaCha8Rng) -> UnimodularMatrix {
    loop {
        let (a, b, c) = (
            rng.gen_range(-10i64..=10),
            rng.gen_range(-10i64..=10),
            rng.gen_range(-10i64..=10),
        );
        if a == 0 {
            continue;
        }
        let e = if rng.gen_bool(0.5) { 1 } else { -1 };
        // a d - b c = e
        if (e + b * c) % a != 0 {
            continue;
        }
        let d = (e + b * c) / a;
        if d.abs() <= 10 {
            return UnimodularMatrix::from_2x2(a, b, c, d).unwrap();
        }
    }
}

/// Floor and ceiling of `k`-th root of `x · 10^(k·digits)`, as rational
/// bounds on `x^(1/k)`.
pub fn root_bounds(x: i64, k: u32, digits: u32) -> (BigRational, BigRational) {
    let scale = BigInt::from(10).pow(digits);
    let big = BigInt::from(x) * scale.pow(k);
    let lo = big.nth_root(k);
    let hi = if lo.pow(k) == big {
        lo.clone()
    } else {
        &lo + 1
    };
    (
        BigRational::new(lo, scale.clone()),
        BigRational::new(hi, scale),
    )
}

/// Lower and upper bounds of `cosh(y)` for rational `0 <= y <= 1` from the
/// Taylor series; the tail after the `y^(2N)/(2N)!` term is at most that term.
pub fn cosh_bounds(y: &BigRational, terms: usize) -> (BigRational, BigRational) {
    let y2 = y * y;
    let mut term = BigRational::one();
    let mut sum = BigRational::zero();
    for k in 0..terms {
        sum += &term;
        let k2 = BigInt::from(2 * k as i64 + 1) * BigInt::from(2 * k as i64 + 2);
        term = &term * &y2 / BigRational::from_integer(k2);
    }
    let upper = &sum + &term * BigRational::from_integer(2.into());
    (sum, upper)
}

/// Bracket of `arccosh(x)` for rational `1 < x < cosh(1)` by bisection.
pub fn arccosh_bracket(x: &BigRational, steps: usize) -> (BigRational, BigRational) {
    let (mut lo, mut hi) = (BigRational::zero(), BigRational::one());
    for _ in 0..steps {
        let mid = (&lo + &hi) / BigRational::from_integer(2.into());
        let (cl, cu) = cosh_bounds(&mid, 30);
        if &cu < x {
            lo = mid;
        } else if &cl > x {
            hi = mid;
        } else {
            break;
        }
    }
    (lo, hi)
}

pub fn abs(x: &BigRational) -> BigRational {
    x.abs()
}

/// Smallest-sum offsets `(i, j)` with `a[i..]` and `b[j..]` agreeing on at
/// least `overlap` digits.
pub fn tail_offsets(
    a: &[BigInt],
    b: &[BigInt],
    overlap: usize,
    max_offset: usize,
) -> Option<(usize, usize)> {
    let mut best = None;
    for i in 0..=max_offset.min(a.len()) {
        for j in 0..=max_offset.min(b.len()) {
            let len = (a.len() - i).min(b.len() - j);
            if len >= overlap && a[i..i + len] == b[j..j + len] {
                match best {
                    Some((bi, bj)) if bi + bj <= i + j => {}
                    _ => best = Some((i, j)),
                }
            }
        }
    }
    best
}
