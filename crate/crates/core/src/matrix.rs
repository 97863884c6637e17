//! Square integer matrices and the unimodular newtype.

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use serde_json::Value;
use std::fmt;
use std::ops::Mul;

use crate::error::{Error, Result};
use crate::json::int_json;

/// Dense square matrix over `BigInt`, row-major.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct IntMatrix {
    n: usize,
    data: Vec<BigInt>,
}

impl IntMatrix {
    pub fn identity(n: usize) -> Self {
        let mut data = vec![BigInt::zero(); n * n];
        for i in 0..n {
            data[i * n + i] = BigInt::one();
        }
        IntMatrix { n, data }
    }

    pub fn from_rows(rows: Vec<Vec<BigInt>>) -> Result<Self> {
        let n = rows.len();
        if n == 0 {
            return Err(Error::Parse("empty matrix".into()));
        }
        let mut data = Vec::with_capacity(n * n);
        for r in rows {
            if r.len() != n {
                return Err(Error::DimensionMismatch {
                    expected: n,
                    got: r.len(),
                });
            }
            data.extend(r);
        }
        Ok(IntMatrix { n, data })
    }

    pub fn from_i64(rows: &[&[i64]]) -> Result<Self> {
        Self::from_rows(
            rows.iter()
                .map(|r| r.iter().map(|&x| BigInt::from(x)).collect())
                .collect(),
        )
    }

    pub fn dim(&self) -> usize {
        self.n
    }

    pub fn get(&self, i: usize, j: usize) -> &BigInt {
        &self.data[i * self.n + j]
    }

    pub fn set(&mut self, i: usize, j: usize, v: BigInt) {
        self.data[i * self.n + j] = v;
    }

    pub fn rows(&self) -> Vec<Vec<BigInt>> {
        self.data.chunks(self.n).map(|r| r.to_vec()).collect()
    }

    pub fn column(&self, j: usize) -> Vec<BigInt> {
        (0..self.n).map(|i| self.get(i, j).clone()).collect()
    }

    pub fn trace(&self) -> BigInt {
        (0..self.n).map(|i| self.get(i, i)).sum()
    }

    pub fn is_nonnegative(&self) -> bool {
        self.data.iter().all(|x| !x.is_negative())
    }

    /// Fraction-free (Bareiss) determinant.
    pub fn det(&self) -> BigInt {
        let n = self.n;
        let mut m = self.data.clone();
        let mut sign = BigInt::one();
        let mut prev = BigInt::one();
        for k in 0..n.saturating_sub(1) {
            if m[k * n + k].is_zero() {
                match (k + 1..n).find(|&i| !m[i * n + k].is_zero()) {
                    Some(i) => {
                        for j in 0..n {
                            m.swap(k * n + j, i * n + j);
                        }
                        sign = -sign;
                    }
                    None => return BigInt::zero(),
                }
            }
            for i in k + 1..n {
                for j in k + 1..n {
                    let v = &m[i * n + j] * &m[k * n + k] - &m[i * n + k] * &m[k * n + j];
                    m[i * n + j] = v / &prev;
                }
            }
            prev = m[k * n + k].clone();
        }
        sign * &m[n * n - 1]
    }

    /// Exact inverse when it has integer entries (i.e. `det = ±1`).
    pub fn inverse(&self) -> Result<IntMatrix> {
        let n = self.n;
        let mut a: Vec<Vec<BigRational>> = (0..n)
            .map(|i| {
                (0..2 * n)
                    .map(|j| {
                        if j < n {
                            BigRational::from_integer(self.get(i, j).clone())
                        } else if j - n == i {
                            BigRational::one()
                        } else {
                            BigRational::zero()
                        }
                    })
                    .collect()
            })
            .collect();
        for col in 0..n {
            let piv = (col..n)
                .find(|&r| !a[r][col].is_zero())
                .ok_or_else(|| Error::NotUnimodular("0".into()))?;
            a.swap(col, piv);
            let p = a[col][col].clone();
            for v in a[col].iter_mut() {
                *v /= &p;
            }
            for r in 0..n {
                if r != col && !a[r][col].is_zero() {
                    let f = a[r][col].clone();
                    for j in 0..2 * n {
                        let t = &a[col][j] * &f;
                        a[r][j] -= t;
                    }
                }
            }
        }
        let mut out = IntMatrix::identity(n);
        for (i, row) in a.iter().enumerate() {
            for j in 0..n {
                let v = &row[n + j];
                if !v.is_integer() {
                    return Err(Error::NotUnimodular(self.det().to_string()));
                }
                out.set(i, j, v.to_integer());
            }
        }
        Ok(out)
    }

    /// Entries reduced into `[0, m)`.
    pub fn reduce_mod(&self, m: &BigInt) -> IntMatrix {
        IntMatrix {
            n: self.n,
            data: self.data.iter().map(|x| x.mod_floor(m)).collect(),
        }
    }

    pub fn apply(&self, v: &[BigInt]) -> Vec<BigInt> {
        (0..self.n)
            .map(|i| (0..self.n).map(|j| self.get(i, j) * &v[j]).sum())
            .collect()
    }

    pub fn to_json(&self) -> Value {
        Value::Array(
            self.data
                .chunks(self.n)
                .map(|r| Value::Array(r.iter().map(int_json).collect()))
                .collect(),
        )
    }

    /// Parses `[[a,b],[c,d]]` (any square size).
    pub fn parse(s: &str) -> Result<IntMatrix> {
        let s: String = s.chars().filter(|c| !c.is_whitespace()).collect();
        let inner = s
            .strip_prefix('[')
            .and_then(|t| t.strip_suffix(']'))
            .ok_or_else(|| Error::Parse(format!("matrix must look like [[a,b],[c,d]]: `{s}`")))?;
        let mut rows = Vec::new();
        let mut rest = inner;
        while !rest.is_empty() {
            let body = rest
                .strip_prefix('[')
                .ok_or_else(|| Error::Parse(format!("expected `[` in `{rest}`")))?;
            let close = body
                .find(']')
                .ok_or_else(|| Error::Parse("unclosed matrix row".into()))?;
            let row = body[..close]
                .split(',')
                .map(|t| {
                    t.parse::<BigInt>()
                        .map_err(|_| Error::Parse(format!("invalid matrix entry `{t}`")))
                })
                .collect::<Result<Vec<_>>>()?;
            rows.push(row);
            rest = &body[close + 1..];
            rest = rest.strip_prefix(',').unwrap_or(rest);
        }
        IntMatrix::from_rows(rows)
    }
}

impl Mul for &IntMatrix {
    type Output = IntMatrix;

    fn mul(self, o: &IntMatrix) -> IntMatrix {
        assert_eq!(self.n, o.n, "matrix dimensions differ");
        let n = self.n;
        let mut data = vec![BigInt::zero(); n * n];
        for i in 0..n {
            for k in 0..n {
                let a = &self.data[i * n + k];
                if a.is_zero() {
                    continue;
                }
                for j in 0..n {
                    data[i * n + j] += a * &o.data[k * n + j];
                }
            }
        }
        IntMatrix { n, data }
    }
}

impl fmt::Display for IntMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[")?;
        for (i, r) in self.data.chunks(self.n).enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "[")?;
            for (j, x) in r.iter().enumerate() {
                if j > 0 {
                    write!(f, ",")?;
                }
                write!(f, "{x}")?;
            }
            write!(f, "]")?;
        }
        write!(f, "]")
    }
}

/// An integer matrix of determinant ±1; checked at construction.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct UnimodularMatrix(IntMatrix);

impl UnimodularMatrix {
    pub fn new(m: IntMatrix) -> Result<Self> {
        let d = m.det();
        if d.abs().is_one() {
            Ok(UnimodularMatrix(m))
        } else {
            Err(Error::NotUnimodular(d.to_string()))
        }
    }

    /// 2×2 from entries `(a b; c d)`.
    pub fn from_2x2(a: i64, b: i64, c: i64, d: i64) -> Result<Self> {
        Self::new(IntMatrix::from_i64(&[&[a, b], &[c, d]])?)
    }

    pub fn identity(n: usize) -> Self {
        UnimodularMatrix(IntMatrix::identity(n))
    }

    pub fn parse(s: &str) -> Result<Self> {
        Self::new(IntMatrix::parse(s)?)
    }

    pub fn matrix(&self) -> &IntMatrix {
        &self.0
    }

    pub fn into_matrix(self) -> IntMatrix {
        self.0
    }

    pub fn dim(&self) -> usize {
        self.0.dim()
    }

    pub fn det(&self) -> BigInt {
        self.0.det()
    }

    pub fn trace(&self) -> BigInt {
        self.0.trace()
    }

    pub fn get(&self, i: usize, j: usize) -> &BigInt {
        self.0.get(i, j)
    }

    pub fn inverse(&self) -> UnimodularMatrix {
        UnimodularMatrix(
            self.0
                .inverse()
                .expect("unimodular matrices are invertible"),
        )
    }

    /// `(a, b, c, d)` of a 2×2 matrix.
    pub fn entries_2x2(&self) -> (&BigInt, &BigInt, &BigInt, &BigInt) {
        assert_eq!(self.dim(), 2, "not a 2x2 matrix");
        (
            self.get(0, 0),
            self.get(0, 1),
            self.get(1, 0),
            self.get(1, 1),
        )
    }

    pub fn to_json(&self) -> Value {
        self.0.to_json()
    }
}

impl Mul for &UnimodularMatrix {
    type Output = UnimodularMatrix;

    fn mul(self, o: &UnimodularMatrix) -> UnimodularMatrix {
        UnimodularMatrix(&self.0 * &o.0)
    }
}

impl fmt::Display for UnimodularMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        self.0.fmt(f)
    }
}
