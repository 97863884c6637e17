//! Unimodular 2×2 matrices acting on the upper half plane.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};
use serde_json::{json, Value};
use std::fmt;
use std::sync::Arc;

use crate::error::{Error, Result};
use crate::realnum::{surd_normalize, Expr, PrecisionReal, RealValue};
use crate::regular_cf::{cf_convergents, CFExpansion};

pub use crate::matrix::UnimodularMatrix;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ElementClass {
    Elliptic,
    Parabolic,
    Hyperbolic,
}

impl fmt::Display for ElementClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            ElementClass::Elliptic => "elliptic",
            ElementClass::Parabolic => "parabolic",
            ElementClass::Hyperbolic => "hyperbolic",
        })
    }
}

/// Level `N >= 1` of the principal congruence subgroup Γ(N).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CongruenceLevel(BigInt);

impl CongruenceLevel {
    pub fn new(n: impl Into<BigInt>) -> Result<Self> {
        let n = n.into();
        if n < BigInt::one() {
            return Err(Error::OutOfRange(format!(
                "congruence level must be >= 1, got {n}"
            )));
        }
        Ok(CongruenceLevel(n))
    }

    pub fn value(&self) -> &BigInt {
        &self.0
    }
}

/// A point of the boundary `R ∪ {∞}`.
#[derive(Debug, Clone, PartialEq)]
pub enum BoundaryPoint {
    Infinity,
    Finite(RealValue),
}

impl fmt::Display for BoundaryPoint {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            BoundaryPoint::Infinity => f.write_str("infinity"),
            BoundaryPoint::Finite(x) => x.fmt(f),
        }
    }
}

fn require_2x2(g: &UnimodularMatrix) -> Result<()> {
    if g.dim() != 2 {
        return Err(Error::DimensionMismatch {
            expected: 2,
            got: g.dim(),
        });
    }
    Ok(())
}

/// Classification by `|tr g|` against 2. Applied to the absolute trace for
/// either sign of the determinant.
pub fn classify_element(g: &UnimodularMatrix) -> ElementClass {
    let t = g.trace().abs();
    let two = BigInt::from(2);
    match t.cmp(&two) {
        std::cmp::Ordering::Less => ElementClass::Elliptic,
        std::cmp::Ordering::Equal => ElementClass::Parabolic,
        std::cmp::Ordering::Greater => ElementClass::Hyperbolic,
    }
}

/// Boundary fixed points: roots of `c z² + (d - a) z - b = 0`, plus `∞` when
/// `c = 0`. Hyperbolic elements give two points, parabolic ones a single point.
pub fn fixed_points(g: &UnimodularMatrix) -> Result<Vec<BoundaryPoint>> {
    require_2x2(g)?;
    if classify_element(g) == ElementClass::Elliptic {
        return Err(Error::EllipticInput);
    }
    let (a, b, c, d) = g.entries_2x2();
    if c.is_zero() {
        if a == d {
            if b.is_zero() {
                return Err(Error::IdentityInput);
            }
            return Ok(vec![BoundaryPoint::Infinity]);
        }
        let z = RealValue::Rational(num_rational::BigRational::new(b.clone(), d - a));
        return Ok(vec![BoundaryPoint::Infinity, BoundaryPoint::Finite(z)]);
    }
    let disc = (d - a) * (d - a) + BigInt::from(4) * b * c;
    let two_c = BigInt::from(2) * c;
    if disc.is_zero() {
        let z = RealValue::Rational(num_rational::BigRational::new(a - d, two_c));
        return Ok(vec![BoundaryPoint::Finite(z)]);
    }
    let plus = surd_normalize(a - d, BigInt::one(), two_c.clone(), disc.clone())?;
    let minus = surd_normalize(a - d, -BigInt::one(), two_c, disc)?;
    Ok(vec![
        BoundaryPoint::Finite(plus),
        BoundaryPoint::Finite(minus),
    ])
}

/// Translation length `2·arccosh(|tr g| / 2)` of a hyperbolic element along
/// its axis, as an interval evaluated at `precision` bits that can be refined
/// by another `precision` bits.
///
/// Uses `arccosh(t/2) = ln((t + √(t² - 4)) / 2)`; the argument is an exact
/// quadratic surd.
pub fn axis_length(g: &UnimodularMatrix, precision: u32) -> Result<PrecisionReal> {
    require_2x2(g)?;
    if classify_element(g) != ElementClass::Hyperbolic {
        return Err(Error::NotHyperbolic);
    }
    let t = g.trace().abs();
    let x = surd_normalize(t.clone(), BigInt::one(), BigInt::from(2), &t * &t - 4)?;
    let ln = Arc::new(Expr::Ln(x.to_expr()));
    let two = Arc::new(Expr::Exact(num_rational::BigRational::from_integer(
        2.into(),
    )));
    PrecisionReal::from_expr(Arc::new(Expr::Mul(two, ln)), precision, precision)
}

/// `g ≡ I (mod N)`, the congruence pattern `(1+Np, Nq; Nr, 1+Ns)`, ignoring
/// the determinant.
pub fn congruent_to_identity(g: &UnimodularMatrix, level: &CongruenceLevel) -> bool {
    if g.dim() != 2 {
        return false;
    }
    let n = level.value();
    let (a, b, c, d) = g.entries_2x2();
    (a - 1u32).is_multiple_of(n)
        && b.is_multiple_of(n)
        && c.is_multiple_of(n)
        && (d - 1u32).is_multiple_of(n)
}

/// Membership in Γ(N) ⊂ SL(2,Z). Determinant −1 matrices are not members.
pub fn gamma_membership(g: &UnimodularMatrix, level: &CongruenceLevel) -> bool {
    g.det().is_one() && congruent_to_identity(g, level)
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct AuditRecord {
    pub k: usize,
    pub matrix: UnimodularMatrix,
    pub member: bool,
}

impl AuditRecord {
    pub fn to_json(&self) -> Value {
        json!({
            "k": self.k,
            "matrix": self.matrix.to_json(),
            "member": self.member,
        })
    }
}

/// Audits the partial products `T_k = T(a0)...T(ak)`, `k < depth`, against
/// level `N`.
///
/// `member` reports the congruence pattern `T_k ≡ I (mod N)`. For `N >= 3`
/// this forces `det T_k = 1`, so it coincides with [`gamma_membership`]; at
/// `N = 1` every product passes, and at `N = 2` a determinant −1 product
/// congruent to the identity is reported as a member too.
pub fn legendre_audit(
    e: &CFExpansion,
    level: &CongruenceLevel,
    depth: usize,
) -> Result<Vec<AuditRecord>> {
    if depth == 0 {
        return Ok(Vec::new());
    }
    let convs = cf_convergents(e, depth - 1)?;
    Ok(convs
        .into_iter()
        .enumerate()
        .map(|(k, c)| {
            let member = congruent_to_identity(&c.t_product, level);
            AuditRecord {
                k,
                matrix: c.t_product,
                member,
            }
        })
        .collect())
}

/// Plain-text table of an audit.
pub fn audit_table(records: &[AuditRecord]) -> String {
    let mut out = String::from("k\tmatrix\tmember\n");
    for r in records {
        out.push_str(&format!("{}\t{}\t{}\n", r.k, r.matrix, r.member));
    }
    out
}
