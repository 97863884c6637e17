//! Totally ordered dimension groups realized as `Zλ1 + ... + Zλn ⊂ R`.
//!
//! A group element is an integer vector `x`; its image is `Σ xᵢλᵢ` and the
//! positive cone is `{x : image >= 0}`. For exact data (rationals and
//! quadratic surds) images live in the Q-span of square roots of squarefree
//! integers, which is where rational dependence and basis changes are decided.

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde_json::{json, Value};
use std::cmp::Ordering;
use std::collections::BTreeMap;
use std::fmt;

use crate::error::{Error, Result};
use crate::jacobi_perron::{jp_expand, jp_step, jp_step_matrix};
use crate::json::{int_json, real_json};
use crate::matrix::{IntMatrix, UnimodularMatrix};
use crate::realnum::{parse_real, RealValue};
use crate::regular_cf::{cf_expand, common_tail, elementary, gl2_equivalent};
use crate::Decision;

/// An element of `Z^n`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct GroupElement(pub Vec<BigInt>);

impl GroupElement {
    pub fn from_i64(v: &[i64]) -> Self {
        GroupElement(v.iter().map(|&x| x.into()).collect())
    }

    pub fn basis(n: usize, i: usize) -> Self {
        let mut v = vec![BigInt::zero(); n];
        v[i] = BigInt::one();
        GroupElement(v)
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn is_zero(&self) -> bool {
        self.0.iter().all(Zero::is_zero)
    }

    pub fn neg(&self) -> Self {
        GroupElement(self.0.iter().map(|x| -x).collect())
    }

    pub fn add(&self, o: &Self) -> Self {
        GroupElement(self.0.iter().zip(&o.0).map(|(a, b)| a + b).collect())
    }

    pub fn sub(&self, o: &Self) -> Self {
        self.add(&o.neg())
    }

    pub fn scale(&self, k: &BigInt) -> Self {
        GroupElement(self.0.iter().map(|x| x * k).collect())
    }

    pub fn to_json(&self) -> Value {
        Value::Array(self.0.iter().map(int_json).collect())
    }

    /// Parses `[1,-2,0]`.
    pub fn parse(s: &str) -> Result<Self> {
        let s = s.trim();
        let inner = s
            .strip_prefix('[')
            .and_then(|t| t.strip_suffix(']'))
            .ok_or_else(|| Error::Parse(format!("group element must look like [1,0]: `{s}`")))?;
        if inner.trim().is_empty() {
            return Ok(GroupElement(Vec::new()));
        }
        inner
            .split(',')
            .map(|t| {
                t.trim()
                    .parse::<BigInt>()
                    .map_err(|_| Error::Parse(format!("invalid coordinate `{}`", t.trim())))
            })
            .collect::<Result<Vec<_>>>()
            .map(GroupElement)
    }
}

impl fmt::Display for GroupElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[")?;
        for (i, x) in self.0.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{x}")?;
        }
        write!(f, "]")
    }
}

/// Rational linear relations among the `λᵢ`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Dependence {
    /// Exact data with no relation: the image map is injective.
    Independent,
    /// `Σ xᵢλᵢ = 0` for the witness, proved exactly.
    Dependent(GroupElement),
    /// Interval data: every nonzero vector with coordinates in `[-bound, bound]`
    /// has an image of decided sign.
    NoSmallRelation { bound: u32 },
    /// Interval data where this candidate's image could not be separated from 0.
    Unresolved(GroupElement),
}

impl Dependence {
    pub fn is_dependent(&self) -> bool {
        matches!(self, Dependence::Dependent(_))
    }

    pub fn to_json(&self) -> Value {
        match self {
            Dependence::Independent => json!({"status": "independent"}),
            Dependence::Dependent(w) => json!({"status": "dependent", "witness": w.to_json()}),
            Dependence::NoSmallRelation { bound } => {
                json!({"status": "no_small_relation", "bound": bound})
            }
            Dependence::Unresolved(w) => json!({"status": "unresolved", "candidate": w.to_json()}),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ConeSign {
    Positive,
    Zero,
    Negative,
}

impl ConeSign {
    pub fn in_cone(self) -> bool {
        self != ConeSign::Negative
    }
}

impl From<Ordering> for ConeSign {
    fn from(o: Ordering) -> Self {
        match o {
            Ordering::Less => ConeSign::Negative,
            Ordering::Equal => ConeSign::Zero,
            Ordering::Greater => ConeSign::Positive,
        }
    }
}

impl fmt::Display for ConeSign {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            ConeSign::Positive => "positive",
            ConeSign::Zero => "zero",
            ConeSign::Negative => "negative",
        })
    }
}

/// Finite sum `Σ q_m √m` over squarefree `m >= 1`, coefficients nonzero.
/// The square roots of distinct squarefree integers are linearly independent
/// over Q, so equality of these sums is structural.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
struct Radicals(BTreeMap<BigInt, BigRational>);

impl Radicals {
    fn from_real(x: &RealValue) -> Option<Radicals> {
        let mut r = Radicals::default();
        match x {
            RealValue::Rational(q) => r.push(BigInt::one(), q.clone()),
            RealValue::Surd(s) => {
                r.push(
                    BigInt::one(),
                    BigRational::new(s.a().clone(), s.c().clone()),
                );
                r.push(
                    s.d().clone(),
                    BigRational::new(s.b().clone(), s.c().clone()),
                );
            }
            RealValue::Approx(_) => return None,
        }
        Some(r)
    }

    fn push(&mut self, m: BigInt, q: BigRational) {
        if q.is_zero() {
            return;
        }
        let e = self.0.entry(m.clone()).or_insert_with(BigRational::zero);
        *e += q;
        if e.is_zero() {
            self.0.remove(&m);
        }
    }

    fn add(&self, o: &Radicals) -> Radicals {
        let mut r = self.clone();
        for (m, q) in &o.0 {
            r.push(m.clone(), q.clone());
        }
        r
    }

    fn scale(&self, k: &BigInt) -> Radicals {
        let mut r = Radicals::default();
        for (m, q) in &self.0 {
            r.push(m.clone(), q * BigRational::from_integer(k.clone()));
        }
        r
    }

    /// `√m1·√m2 = g·√(m1 m2 / g²)` with `g = gcd(m1, m2)`.
    fn mul(&self, o: &Radicals) -> Radicals {
        let mut r = Radicals::default();
        for (m1, q1) in &self.0 {
            for (m2, q2) in &o.0 {
                let g = m1.gcd(m2);
                let m = (m1 / &g) * (m2 / &g);
                r.push(m, q1 * q2 * BigRational::from_integer(g));
            }
        }
        r
    }

    fn is_zero(&self) -> bool {
        self.0.is_empty()
    }
}

/// Coordinates of each vector over the union of their supports; one row per
/// square root, one column per vector.
fn coordinate_matrix(vs: &[Radicals]) -> Vec<Vec<BigRational>> {
    let mut keys: Vec<&BigInt> = vs.iter().flat_map(|v| v.0.keys()).collect();
    keys.sort();
    keys.dedup();
    keys.iter()
        .map(|k| {
            vs.iter()
                .map(|v| v.0.get(*k).cloned().unwrap_or_else(BigRational::zero))
                .collect()
        })
        .collect()
}

/// Reduced row echelon form in place; returns the pivot columns.
fn rref(a: &mut [Vec<BigRational>], cols: usize) -> Vec<usize> {
    let mut pivots = Vec::new();
    let mut row = 0;
    for col in 0..cols {
        let Some(p) = (row..a.len()).find(|&r| !a[r][col].is_zero()) else {
            continue;
        };
        a.swap(row, p);
        let pv = a[row][col].clone();
        for v in a[row].iter_mut() {
            *v /= &pv;
        }
        for r in 0..a.len() {
            if r != row && !a[r][col].is_zero() {
                let f = a[r][col].clone();
                for j in 0..a[r].len() {
                    let t = &a[row][j] * &f;
                    a[r][j] -= t;
                }
            }
        }
        pivots.push(col);
        row += 1;
    }
    pivots
}

/// Primitive integer vector with first nonzero entry positive.
fn primitive(v: &[BigRational]) -> Vec<BigInt> {
    let l = v.iter().fold(BigInt::one(), |acc, q| acc.lcm(q.denom()));
    let mut ints: Vec<BigInt> = v
        .iter()
        .map(|q| (q * BigRational::from_integer(l.clone())).to_integer())
        .collect();
    let g = ints.iter().fold(BigInt::zero(), |acc, x| acc.gcd(x));
    if !g.is_zero() {
        for x in ints.iter_mut() {
            *x /= &g;
        }
    }
    if ints
        .iter()
        .find(|x| !x.is_zero())
        .is_some_and(|x| x.is_negative())
    {
        for x in ints.iter_mut() {
            *x = -&*x;
        }
    }
    ints
}

/// Q-rank and, if deficient, one primitive integer relation.
fn exact_relation(vs: &[Radicals]) -> (usize, Option<Vec<BigInt>>) {
    let n = vs.len();
    let mut a = coordinate_matrix(vs);
    let pivots = rref(&mut a, n);
    let Some(free) = (0..n).find(|c| !pivots.contains(c)) else {
        return (n, None);
    };
    let mut v = vec![BigRational::zero(); n];
    v[free] = BigRational::one();
    for (r, &pc) in pivots.iter().enumerate() {
        v[pc] = -a[r][free].clone();
    }
    (pivots.len(), Some(primitive(&v)))
}

/// Solves `Σ xⱼ colsⱼ = rhs` over Q when the solution is unique.
fn solve_unique(cols: &[Radicals], rhs: &Radicals) -> Option<Vec<BigRational>> {
    let n = cols.len();
    let mut all = cols.to_vec();
    all.push(rhs.clone());
    let mut a = coordinate_matrix(&all);
    let pivots = rref(&mut a, n + 1);
    if pivots.contains(&n) || pivots.len() != n {
        return None;
    }
    Some((0..n).map(|i| a[i][n].clone()).collect())
}

/// A module `Zλ1 + ... + Zλn` with its slope vector and order unit.
#[derive(Debug, Clone)]
pub struct ModuleRep {
    lambda: Vec<RealValue>,
    theta: Vec<RealValue>,
    unit: GroupElement,
    dependence: Dependence,
    q_rank: Option<usize>,
}

impl ModuleRep {
    pub fn n(&self) -> usize {
        self.lambda.len()
    }

    pub fn lambda(&self) -> &[RealValue] {
        &self.lambda
    }

    /// `θᵢ = λ_{i+1} / λ1`.
    pub fn theta(&self) -> &[RealValue] {
        &self.theta
    }

    pub fn order_unit(&self) -> &GroupElement {
        &self.unit
    }

    pub fn dependence(&self) -> &Dependence {
        &self.dependence
    }

    /// Dimension of the Q-span of the `λᵢ` (exact data only).
    pub fn q_rank(&self) -> Option<usize> {
        self.q_rank
    }

    pub fn is_exact(&self) -> bool {
        self.lambda.iter().all(RealValue::is_exact)
    }

    fn radicals(&self) -> Option<Vec<Radicals>> {
        self.lambda.iter().map(Radicals::from_real).collect()
    }

    fn check_len(&self, x: &GroupElement) -> Result<()> {
        if x.len() != self.n() {
            return Err(Error::DimensionMismatch {
                expected: self.n(),
                got: x.len(),
            });
        }
        Ok(())
    }

    /// `Σ xᵢλᵢ`.
    pub fn image(&self, x: &GroupElement) -> Result<RealValue> {
        self.check_len(x)?;
        let mut acc = RealValue::from(0);
        for (c, l) in x.0.iter().zip(&self.lambda) {
            if !c.is_zero() {
                acc = acc.add(&l.mul_int(c)?)?;
            }
        }
        Ok(acc)
    }

    pub fn to_json(&self) -> Value {
        json!({
            "n": self.n(),
            "lambda": self.lambda.iter().map(real_json).collect::<Vec<_>>(),
            "theta": self.theta.iter().map(real_json).collect::<Vec<_>>(),
            "unit": self.unit.to_json(),
            "dependence": self.dependence.to_json(),
        })
    }

    /// Parses `module:{lambda:[...], unit:[...]}`; `unit` may be omitted.
    pub fn parse(s: &str) -> Result<ModuleRep> {
        let (lambda, unit) = parse_module_literal(s)?;
        build_module(lambda, unit)
    }
}

/// Splits on commas outside any brackets or parentheses.
fn split_top_level(s: &str) -> Vec<&str> {
    let mut out = Vec::new();
    let (mut depth, mut start) = (0i32, 0);
    for (i, ch) in s.char_indices() {
        match ch {
            '(' | '[' | '{' => depth += 1,
            ')' | ']' | '}' => depth -= 1,
            ',' if depth == 0 => {
                out.push(&s[start..i]);
                start = i + 1;
            }
            _ => {}
        }
    }
    out.push(&s[start..]);
    out
}

pub fn parse_module_literal(s: &str) -> Result<(Vec<RealValue>, Option<GroupElement>)> {
    let bad = || {
        Error::Parse(format!(
            "module literal must look like module:{{lambda:[...], unit:[...]}}: `{s}`"
        ))
    };
    let body = s
        .trim()
        .strip_prefix("module:")
        .map(str::trim)
        .and_then(|t| t.strip_prefix('{'))
        .and_then(|t| t.strip_suffix('}'))
        .ok_or_else(bad)?;
    let (mut lambda, mut unit) = (None, None);
    for field in split_top_level(body) {
        let (key, value) = field.split_once(':').ok_or_else(bad)?;
        let value = value.trim();
        match key.trim() {
            "lambda" => {
                let inner = value
                    .strip_prefix('[')
                    .and_then(|t| t.strip_suffix(']'))
                    .ok_or_else(bad)?;
                lambda = Some(
                    split_top_level(inner)
                        .into_iter()
                        .map(|t| parse_real(t.trim()))
                        .collect::<Result<Vec<_>>>()?,
                );
            }
            "unit" => unit = Some(GroupElement::parse(value)?),
            other => return Err(Error::Parse(format!("unknown module field `{other}`"))),
        }
    }
    Ok((lambda.ok_or_else(bad)?, unit))
}

/// Coefficient bound used when searching for relations among interval data.
const APPROX_RELATION_BOUND: u32 = 3;

fn box_vectors(n: usize, bound: i64) -> impl Iterator<Item = GroupElement> {
    let side = (2 * bound + 1) as usize;
    let total = side.pow(n as u32);
    (0..total).map(move |mut idx| {
        let mut v = Vec::with_capacity(n);
        for _ in 0..n {
            v.push(BigInt::from((idx % side) as i64 - bound));
            idx /= side;
        }
        GroupElement(v)
    })
}

fn approx_dependence(lambda: &[RealValue]) -> Dependence {
    let n = lambda.len();
    let bound = if n <= 4 { APPROX_RELATION_BOUND } else { 1 };
    let tmp = ModuleRep {
        lambda: lambda.to_vec(),
        theta: Vec::new(),
        unit: GroupElement::basis(n, 0),
        dependence: Dependence::Independent,
        q_rank: None,
    };
    for x in box_vectors(n, bound as i64) {
        // one of x, -x suffices
        if x.is_zero()
            || x.0
                .iter()
                .find(|c| !c.is_zero())
                .is_some_and(|c| c.is_negative())
        {
            continue;
        }
        match tmp.image(&x).and_then(|v| v.signum()) {
            Ok(Ordering::Equal) => return Dependence::Dependent(x),
            Ok(_) => {}
            Err(_) => return Dependence::Unresolved(x),
        }
    }
    Dependence::NoSmallRelation { bound }
}

/// Builds the module over `λ`. The default order unit is `e1` when `λ1 > 0`
/// and `-e1` otherwise.
pub fn build_module(lambda: Vec<RealValue>, order_unit: Option<GroupElement>) -> Result<ModuleRep> {
    let n = lambda.len();
    if n < 2 {
        return Err(Error::DimensionMismatch {
            expected: 2,
            got: n,
        });
    }
    let lead = lambda[0].signum()?;
    if lead == Ordering::Equal {
        return Err(Error::ZeroLeading);
    }
    let theta = lambda[1..]
        .iter()
        .map(|l| l.div(&lambda[0]))
        .collect::<Result<Vec<_>>>()?;
    let (dependence, q_rank) = match lambda
        .iter()
        .map(Radicals::from_real)
        .collect::<Option<Vec<_>>>()
    {
        Some(rs) => match exact_relation(&rs) {
            (r, Some(w)) => (Dependence::Dependent(GroupElement(w)), Some(r)),
            (r, None) => (Dependence::Independent, Some(r)),
        },
        None => (approx_dependence(&lambda), None),
    };
    let mut m = ModuleRep {
        lambda,
        theta,
        unit: GroupElement::basis(n, 0),
        dependence,
        q_rank,
    };
    match order_unit {
        Some(u) => {
            if m.image(&u)?.signum()? != Ordering::Greater {
                return Err(Error::NonPositiveUnit);
            }
            m.unit = u;
        }
        None if lead == Ordering::Less => m.unit = m.unit.neg(),
        None => {}
    }
    Ok(m)
}

/// Sign of the image of `x`. Zero is reported only when it is exact.
pub fn cone_contains(m: &ModuleRep, x: &GroupElement) -> Result<ConeSign> {
    m.check_len(x)?;
    if x.is_zero() {
        return Ok(ConeSign::Zero);
    }
    if let Some(rs) = m.radicals() {
        let img =
            x.0.iter()
                .zip(&rs)
                .fold(Radicals::default(), |acc, (c, r)| acc.add(&r.scale(c)));
        if img.is_zero() {
            return Ok(ConeSign::Zero);
        }
    }
    Ok(m.image(x)?.signum()?.into())
}

/// The state normalized at the order unit: `f(x) = image(x) / image(u)`.
pub fn state_eval(m: &ModuleRep, x: &GroupElement) -> Result<RealValue> {
    m.image(x)?.div(&m.image(&m.unit)?)
}

/// Outcome of [`order_iso`]: the decision and, for a `Yes` found by basis
/// search, a unimodular `A` with `λ_b ∝ A λ_a`.
#[derive(Debug, Clone, PartialEq)]
pub struct IsoResult {
    pub decision: Decision,
    pub witness: Option<UnimodularMatrix>,
}

impl IsoResult {
    fn bare(decision: Decision) -> Self {
        IsoResult {
            decision,
            witness: None,
        }
    }

    pub fn to_json(&self) -> Value {
        let mut v = json!({ "decision": self.decision.as_str() });
        if let Decision::Unknown(note) = &self.decision {
            v["note"] = Value::String(note.clone());
        }
        if let Some(w) = &self.witness {
            v["witness"] = w.to_json();
        }
        v
    }
}

/// Largest search box `[-b, b]^n` kept under this many first rows.
const BASIS_SEARCH_CELLS: usize = 4096;

fn basis_bound(n: usize, budget: usize) -> i64 {
    let mut b = 0i64;
    while (b as usize) < budget
        && ((2 * b + 3) as usize)
            .checked_pow(n as u32)
            .is_some_and(|c| c <= BASIS_SEARCH_CELLS)
    {
        b += 1;
    }
    b
}

/// Looks for `A ∈ GL(n, Z)` with `λ_b = s·A·λ_a`, `s ≠ 0`, first row of `A`
/// within the box. For each first row `r1` the scalar is fixed and the other
/// rows solve the linear systems `rᵢ·λ_a · λ_b1 = λ_bi · (r1·λ_a)` exactly.
fn search_basis(la: &[Radicals], lb: &[Radicals], bound: i64) -> Option<UnimodularMatrix> {
    let n = la.len();
    let cols: Vec<Radicals> = la.iter().map(|l| l.mul(&lb[0])).collect();
    for r1 in box_vectors(n, bound) {
        let v =
            r1.0.iter()
                .zip(la)
                .fold(Radicals::default(), |acc, (c, l)| acc.add(&l.scale(c)));
        if v.is_zero() {
            continue;
        }
        let mut rows = vec![r1.0.clone()];
        for lbi in &lb[1..] {
            let Some(sol) =
                solve_unique(&cols, &lbi.mul(&v)).filter(|s| s.iter().all(BigRational::is_integer))
            else {
                rows.clear();
                break;
            };
            rows.push(sol.iter().map(BigRational::to_integer).collect());
        }
        if rows.len() == n {
            if let Ok(a) = IntMatrix::from_rows(rows).and_then(UnimodularMatrix::new) {
                return Some(a);
            }
        }
    }
    None
}

/// Order isomorphism of two modules of equal rank, as groups with their
/// total order (order units are not required to correspond).
///
/// Rank 2 reduces to GL(2,Z)-equivalence of the slopes. In higher rank this is
/// a semi-decision: `budget` bounds the basis-change search box and the
/// Jacobi-Perron depth compared.
pub fn order_iso(a: &ModuleRep, b: &ModuleRep, budget: usize) -> Result<IsoResult> {
    if a.n() != b.n() {
        return Err(Error::RankMismatch(a.n(), b.n()));
    }
    let n = a.n();
    if n == 2 {
        return Ok(IsoResult::bare(gl2_equivalent(
            &a.theta[0],
            &b.theta[0],
            budget,
        )));
    }
    if let (Some(ra), Some(rb)) = (a.q_rank, b.q_rank) {
        if ra != rb {
            return Ok(IsoResult::bare(Decision::No));
        }
    }
    if let (Some(la), Some(lb)) = (a.radicals(), b.radicals()) {
        if a.q_rank == Some(n) {
            if let Some(w) = search_basis(&la, &lb, basis_bound(n, budget)) {
                return Ok(IsoResult {
                    decision: Decision::Yes,
                    witness: Some(w),
                });
            }
        }
    }
    jp_tail_compare(a, b, budget)
}

/// Runs Jacobi-Perron on both slope vectors. Exactly equal states at steps
/// `i` and `j` give the witness `P_b(j) · P_a(i)⁻¹`; matching digit tails
/// alone are reported but prove nothing.
fn jp_tail_compare(a: &ModuleRep, b: &ModuleRep, depth: usize) -> Result<IsoResult> {
    let n = a.n();
    let run = |theta: &[RealValue]| -> (Vec<UnimodularMatrix>, Vec<Vec<RealValue>>, Vec<BigInt>) {
        let mut prods = vec![UnimodularMatrix::identity(n)];
        let mut states = vec![theta.to_vec()];
        let mut digits = Vec::new();
        while states.len() <= depth {
            let Ok((d, next)) = jp_step(states.last().expect("non-empty")) else {
                break;
            };
            let Ok(step) = jp_step_matrix(&d, n) else {
                break;
            };
            let p = prods.last().expect("non-empty") * &step;
            prods.push(p);
            digits.extend(d.0);
            states.push(next);
        }
        (prods, states, digits)
    };
    let (pa, sa, da) = run(&a.theta);
    let (pb, sb, db) = run(&b.theta);
    for (i, x) in sa.iter().enumerate() {
        for (j, y) in sb.iter().enumerate() {
            if x.iter().all(RealValue::is_exact) && x == y {
                let w = &pb[j] * &pa[i].inverse();
                return Ok(IsoResult {
                    decision: Decision::Yes,
                    witness: Some(w),
                });
            }
        }
    }
    let note = match common_tail(&da, &db, 4 * (n - 1)) {
        Some((i, j)) => format!(
            "no basis change found; Jacobi-Perron digits agree from offsets {i} and {j} within depth {depth}"
        ),
        None => format!("no basis change found and no common Jacobi-Perron tail within depth {depth}"),
    };
    Ok(IsoResult::bare(Decision::Unknown(note)))
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ChainSource {
    RegularCf,
    JacobiPerron,
}

impl ChainSource {
    pub fn as_str(self) -> &'static str {
        match self {
            ChainSource::RegularCf => "regular_cf",
            ChainSource::JacobiPerron => "jacobi_perron",
        }
    }
}

/// Simplicial approximation `Z^n → Z^n → ...` along step matrices.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SimplicialChain {
    pub n: usize,
    pub matrices: Vec<UnimodularMatrix>,
    pub source: ChainSource,
    /// The expansion ended (or stopped being decidable) before the depth.
    pub truncated: bool,
}

impl SimplicialChain {
    /// Ordered product of the chain; the identity for an empty chain.
    pub fn product(&self) -> UnimodularMatrix {
        self.matrices
            .iter()
            .fold(UnimodularMatrix::identity(self.n), |acc, m| &acc * m)
    }

    /// The digit stream read off the last columns.
    pub fn digits(&self) -> Vec<BigInt> {
        self.matrices
            .iter()
            .flat_map(|m| (1..self.n).map(move |i| m.get(i, self.n - 1).clone()))
            .collect()
    }

    pub fn to_json(&self) -> Value {
        json!({
            "source": self.source.as_str(),
            "n": self.n,
            "truncated": self.truncated,
            "matrices": self.matrices.iter().map(UnimodularMatrix::to_json).collect::<Vec<_>>(),
        })
    }
}

/// The chain of the module's slope: elementary factors `(0 1; 1 a_k)` of the
/// regular continued fraction of `θ1` when `n = 2`, Jacobi-Perron step
/// matrices of `θ` otherwise. Negative slopes have no non-negative chain.
pub fn simplicial_chain(m: &ModuleRep, depth: usize) -> Result<SimplicialChain> {
    let n = m.n();
    for t in &m.theta {
        if t.signum()? == Ordering::Less {
            return Err(Error::NegativeDigit);
        }
    }
    if n == 2 {
        let e = cf_expand(&m.theta[0], depth)?;
        let digits = e.digits(depth);
        let truncated = digits.len() < depth;
        return Ok(SimplicialChain {
            n,
            matrices: digits.iter().map(elementary).collect(),
            source: ChainSource::RegularCf,
            truncated,
        });
    }
    let e = jp_expand(&m.theta, depth)?;
    let matrices = e
        .steps
        .iter()
        .map(|b| jp_step_matrix(b, n))
        .collect::<Result<Vec<_>>>()?;
    Ok(SimplicialChain {
        n,
        truncated: matrices.len() < depth,
        matrices,
        source: ChainSource::JacobiPerron,
    })
}

/// `n = 2g + |λ| - 1`.
pub fn rank_from_topology(genus: u64, principal_regions: u64) -> Result<u64> {
    if genus < 2 {
        return Err(Error::OutOfRange(format!(
            "genus must be >= 2, got {genus}"
        )));
    }
    if principal_regions < 1 {
        return Err(Error::OutOfRange(format!(
            "principal region count must be >= 1, got {principal_regions}"
        )));
    }
    genus
        .checked_mul(2)
        .and_then(|x| x.checked_add(principal_regions - 1))
        .ok_or_else(|| Error::OutOfRange("rank overflows".into()))
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Violation {
    pub axiom: &'static str,
    pub witness: Vec<GroupElement>,
}

impl Violation {
    pub fn to_json(&self) -> Value {
        json!({
            "axiom": self.axiom,
            "witness": self.witness.iter().map(GroupElement::to_json).collect::<Vec<_>>(),
        })
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct RieszReport {
    pub samples: usize,
    pub checks: usize,
    pub violations: Vec<Violation>,
    /// Comparisons abandoned with `PrecisionExhausted`.
    pub precision_incidents: usize,
}

impl RieszReport {
    pub fn to_json(&self) -> Value {
        json!({
            "samples": self.samples,
            "checks": self.checks,
            "violations": self.violations.iter().map(Violation::to_json).collect::<Vec<_>>(),
            "precision_incidents": self.precision_incidents,
        })
    }
}

/// Seed of the audit sampler, so reports are reproducible.
pub const RIESZ_SEED: u64 = 0x005e_ed0f_c0de;

const MAX_VIOLATIONS: usize = 32;

/// Samples elements with coordinates in `[-bound, bound]` and checks the
/// ordered-group axioms: cone closure, `P ∩ (-P) = {0}`, unperforation for
/// multipliers up to 10, and interpolation with `w = max(u, v)`. A known
/// exact rational relation is always included in the samples.
pub fn riesz_audit(m: &ModuleRep, sample_count: usize, coordinate_bound: u64) -> RieszReport {
    let n = m.n();
    let bound = coordinate_bound.min(i64::MAX as u64) as i64;
    let mut rng = ChaCha8Rng::seed_from_u64(RIESZ_SEED);
    let mut draw = || {
        GroupElement(
            (0..n)
                .map(|_| BigInt::from(rng.gen_range(-bound..=bound)))
                .collect(),
        )
    };
    let mut report = RieszReport {
        samples: sample_count,
        ..Default::default()
    };
    let sign = |x: &GroupElement, report: &mut RieszReport| match cone_contains(m, x) {
        Ok(s) => Some(s),
        Err(_) => {
            report.precision_incidents += 1;
            None
        }
    };
    let record = |report: &mut RieszReport, axiom: &'static str, witness: Vec<GroupElement>| {
        if report.violations.len() < MAX_VIOLATIONS {
            report.violations.push(Violation { axiom, witness });
        }
    };

    let mut planted = match m.dependence() {
        Dependence::Dependent(w) => Some(w.clone()),
        _ => None,
    };
    for _ in 0..sample_count {
        let x = planted.take().unwrap_or_else(&mut draw);
        let y = draw();

        // P + P ⊆ P
        if let (Some(sx), Some(sy)) = (sign(&x, &mut report), sign(&y, &mut report)) {
            if sx.in_cone() && sy.in_cone() {
                report.checks += 1;
                if let Some(s) = sign(&x.add(&y), &mut report) {
                    if !s.in_cone() {
                        record(&mut report, "cone_closure", vec![x.clone(), y.clone()]);
                    }
                }
            }
        }

        // P ∩ (-P) = {0}
        if let (Some(sx), Some(sn)) = (sign(&x, &mut report), sign(&x.neg(), &mut report)) {
            report.checks += 1;
            if sx.in_cone() && sn.in_cone() && !x.is_zero() {
                record(&mut report, "antisymmetry", vec![x.clone()]);
            }
        }

        // k x >= 0 implies x >= 0
        if let Some(sx) = sign(&x, &mut report) {
            for k in 1..=10u32 {
                report.checks += 1;
                if let Some(sk) = sign(&x.scale(&BigInt::from(k)), &mut report) {
                    if sk.in_cone() && !sx.in_cone() {
                        record(&mut report, "unperforation", vec![x.clone()]);
                        break;
                    }
                }
            }
        }

        // u, v <= s, t  ⇒  u, v <= w <= s, t
        let mut four = vec![x, y, draw(), draw()];
        let mut failed = false;
        let mut cmp = |p: &GroupElement, q: &GroupElement, report: &mut RieszReport| match sign(
            &p.sub(q),
            report,
        ) {
            Some(ConeSign::Negative) => Ordering::Less,
            Some(ConeSign::Zero) => Ordering::Equal,
            Some(ConeSign::Positive) => Ordering::Greater,
            None => {
                failed = true;
                Ordering::Equal
            }
        };
        four.sort_by(|p, q| cmp(p, q, &mut report));
        if !failed {
            report.checks += 1;
            let w = four[1].clone();
            let le = |p: &GroupElement, q: &GroupElement, report: &mut RieszReport| {
                sign(&q.sub(p), report).map(ConeSign::in_cone)
            };
            let ok = [
                le(&four[0], &w, &mut report),
                le(&four[1], &w, &mut report),
                le(&w, &four[2], &mut report),
                le(&w, &four[3], &mut report),
            ];
            if ok.contains(&Some(false)) {
                record(&mut report, "interpolation", four.clone());
            }
        }
    }
    report
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::jacobi_perron::jp_convergents;
    use crate::regular_cf::{cf_convergents, mobius_apply};
    use proptest::prelude::*;

    fn phi() -> RealValue {
        RealValue::surd(1, 1, 2, 5).unwrap()
    }

    fn module(ls: Vec<RealValue>) -> ModuleRep {
        build_module(ls, None).unwrap()
    }

    fn cube_module() -> ModuleRep {
        module(vec![
            RealValue::from(1),
            parse_real("root:3:2~256").unwrap(),
            parse_real("root:3:4~256").unwrap(),
        ])
    }

    #[test]
    fn build_examples() {
        let m = module(vec![RealValue::from(1), phi()]);
        assert_eq!(m.theta(), &[phi()]);
        assert_eq!(m.order_unit(), &GroupElement::from_i64(&[1, 0]));
        assert_eq!(m.dependence(), &Dependence::Independent);

        let d = module(vec![RealValue::from(2), RealValue::from(1)]);
        assert_eq!(d.theta(), &[RealValue::rational(1, 2).unwrap()]);
        assert_eq!(
            d.dependence(),
            &Dependence::Dependent(GroupElement::from_i64(&[1, -2]))
        );

        let c = cube_module();
        assert_eq!(c.order_unit(), &GroupElement::from_i64(&[1, 0, 0]));
        assert!(matches!(c.dependence(), Dependence::NoSmallRelation { .. }));

        let neg = module(vec![RealValue::from(-1), phi()]);
        assert_eq!(neg.order_unit(), &GroupElement::from_i64(&[-1, 0]));
        assert_eq!(
            build_module(vec![RealValue::from(0), phi()], None).unwrap_err(),
            Error::ZeroLeading
        );
        assert_eq!(
            build_module(
                vec![RealValue::from(1), phi()],
                Some(GroupElement::from_i64(&[1, -1]))
            )
            .unwrap_err(),
            Error::NonPositiveUnit
        );
    }

    #[test]
    fn mixed_radicals_are_exact() {
        let l = vec![
            RealValue::from(1),
            RealValue::surd(0, 1, 1, 2).unwrap(),
            RealValue::surd(0, 1, 1, 3).unwrap(),
        ];
        assert_eq!(module(l).dependence(), &Dependence::Independent);
        let l = vec![
            RealValue::from(1),
            RealValue::surd(0, 1, 1, 2).unwrap(),
            RealValue::surd(3, 2, 1, 2).unwrap(),
        ];
        assert_eq!(
            module(l).dependence(),
            &Dependence::Dependent(GroupElement::from_i64(&[3, 2, -1]))
        );
    }

    #[test]
    fn cone_and_state_examples() {
        // slope α = φ in the (k, l) ↦ αk + l convention: λ = (φ, 1)
        let m = module(vec![phi(), RealValue::from(1)]);
        let c = |v: &[i64]| cone_contains(&m, &GroupElement::from_i64(v)).unwrap();
        assert_eq!(c(&[1, 0]), ConeSign::Positive);
        assert_eq!(c(&[-1, 2]), ConeSign::Positive);
        assert_eq!(c(&[1, -2]), ConeSign::Negative);
        assert_eq!(c(&[0, 0]), ConeSign::Zero);

        let g = module(vec![RealValue::from(1), phi()]);
        let s = |v: &[i64]| state_eval(&g, &GroupElement::from_i64(v)).unwrap();
        assert_eq!(s(&[1, 0]), RealValue::from(1));
        assert_eq!(s(&[-1, 2]), RealValue::surd(0, 1, 1, 5).unwrap());
        assert_eq!(s(&[0, 0]), RealValue::from(0));
        // (k, l) ↦ φk + l with unit l = 1: f(-1, 2) = 2 - φ
        let kl = build_module(
            vec![phi(), RealValue::from(1)],
            Some(GroupElement::from_i64(&[0, 1])),
        )
        .unwrap();
        assert_eq!(
            state_eval(&kl, &GroupElement::from_i64(&[-1, 2])).unwrap(),
            RealValue::surd(3, -1, 2, 5).unwrap()
        );
        assert!(cone_contains(&g, &GroupElement::from_i64(&[1])).is_err());

        let d = module(vec![RealValue::from(2), RealValue::from(1)]);
        assert_eq!(
            cone_contains(&d, &GroupElement::from_i64(&[1, -2])).unwrap(),
            ConeSign::Zero
        );
    }

    #[test]
    fn order_iso_examples() {
        let g = module(vec![RealValue::from(1), phi()]);
        assert_eq!(order_iso(&g, &g, 20).unwrap().decision, Decision::Yes);
        let image = mobius_apply(&UnimodularMatrix::from_2x2(2, 1, 1, 1).unwrap(), &phi()).unwrap();
        let h = module(vec![RealValue::from(1), image]);
        assert_eq!(order_iso(&g, &h, 20).unwrap().decision, Decision::Yes);
        let r2 = module(vec![
            RealValue::from(1),
            RealValue::surd(0, 1, 1, 2).unwrap(),
        ]);
        assert_eq!(order_iso(&r2, &g, 20).unwrap().decision, Decision::No);
        assert_eq!(
            order_iso(&g, &cube_module(), 5).unwrap_err(),
            Error::RankMismatch(2, 3)
        );
    }

    #[test]
    fn order_iso_rank_three_exact() {
        let s2 = RealValue::surd(0, 1, 1, 2).unwrap();
        let s3 = RealValue::surd(0, 1, 1, 3).unwrap();
        let a = module(vec![RealValue::from(1), s2.clone(), s3.clone()]);
        // λ' = (1 + √2, √3, 1) is A·λ for A = ((1,1,0),(0,0,1),(1,0,0))
        let b = module(vec![
            s2.add(&RealValue::from(1)).unwrap(),
            s3.clone(),
            RealValue::from(1),
        ]);
        let r = order_iso(&a, &b, 4).unwrap();
        assert_eq!(r.decision, Decision::Yes);
        let w = r.witness.unwrap();
        assert!(w.det().abs().is_one());
        // rank separates
        let c = module(vec![
            RealValue::from(1),
            s2.clone(),
            s2.mul_int(&2.into()).unwrap(),
        ]);
        assert_eq!(order_iso(&a, &c, 4).unwrap().decision, Decision::No);
        // the cube-root field is not reachable from √2, √3: unknown
        let u = order_iso(&a, &cube_module(), 2).unwrap();
        assert!(matches!(u.decision, Decision::Unknown(_)));
    }

    #[test]
    fn chain_examples() {
        let g = module(vec![RealValue::from(1), phi()]);
        let c = simplicial_chain(&g, 3).unwrap();
        assert_eq!(c.matrices, vec![elementary(&1.into()); 3]);
        assert_eq!(c.source, ChainSource::RegularCf);

        let r2 = module(vec![
            RealValue::from(1),
            RealValue::surd(0, 1, 1, 2).unwrap(),
        ]);
        let digits: Vec<BigInt> = simplicial_chain(&r2, 3).unwrap().digits();
        assert_eq!(digits, vec![1.into(), 2.into(), 2.into()]);

        let cube = simplicial_chain(&cube_module(), 1).unwrap();
        assert_eq!(
            cube.matrices,
            vec![UnimodularMatrix::parse("[[0,0,1],[1,0,1],[0,1,1]]").unwrap()]
        );
        assert_eq!(cube.source, ChainSource::JacobiPerron);

        let neg = module(vec![RealValue::from(1), phi().neg()]);
        assert_eq!(simplicial_chain(&neg, 3).unwrap_err(), Error::NegativeDigit);

        let rat = module(vec![RealValue::from(3), RealValue::from(7)]);
        let c = simplicial_chain(&rat, 10).unwrap();
        assert!(c.truncated);
        assert_eq!(c.matrices.len(), 2);
        assert_eq!(
            c.to_json().to_string(),
            r#"{"source":"regular_cf","n":2,"truncated":true,"matrices":[[[0,1],[1,2]],[[0,1],[1,3]]]}"#
        );
    }

    #[test]
    fn chain_products_match_convergents() {
        let r2 = module(vec![
            RealValue::from(1),
            RealValue::surd(0, 1, 1, 2).unwrap(),
        ]);
        let e = cf_expand(&r2.theta()[0], 20).unwrap();
        let convs = cf_convergents(&e, 19).unwrap();
        for k in 1..=20 {
            let c = simplicial_chain(&r2, k).unwrap();
            assert_eq!(c.product(), convs[k - 1].t_product);
        }
        let cube = cube_module();
        let e = jp_expand(cube.theta(), 12).unwrap();
        for k in 0..=12 {
            let c = simplicial_chain(&cube, k).unwrap();
            assert_eq!(c.product(), jp_convergents(&e, k).unwrap().matrix);
        }
    }

    #[test]
    fn rank_examples() {
        assert_eq!(rank_from_topology(2, 1).unwrap(), 4);
        assert_eq!(rank_from_topology(3, 2).unwrap(), 7);
        assert_eq!(rank_from_topology(2, 4).unwrap(), 7);
        assert!(rank_from_topology(1, 1).is_err());
        assert!(rank_from_topology(2, 0).is_err());
        assert!(rank_from_topology(u64::MAX, 2).is_err());
    }

    #[test]
    fn riesz_examples() {
        let g = module(vec![RealValue::from(1), phi()]);
        let r = riesz_audit(&g, 200, 50);
        assert!(r.violations.is_empty(), "{:?}", r.violations);
        assert_eq!(r.precision_incidents, 0);
        assert!(r.checks > 200);

        let d = module(vec![RealValue::from(2), RealValue::from(1)]);
        let r = riesz_audit(&d, 10, 50);
        assert!(r
            .violations
            .iter()
            .any(|v| v.axiom == "antisymmetry"
                && v.witness == vec![GroupElement::from_i64(&[1, -2])]));

        let r2 = module(vec![
            RealValue::from(1),
            RealValue::surd(0, 1, 1, 2).unwrap(),
        ]);
        let g = GroupElement::from_i64(&[-1, 1]);
        assert_eq!(cone_contains(&r2, &g).unwrap(), ConeSign::Positive);
        assert_eq!(
            cone_contains(&r2, &g.scale(&5.into())).unwrap(),
            ConeSign::Positive
        );
        assert_eq!(riesz_audit(&r2, 50, 20), riesz_audit(&r2, 50, 20));
    }

    #[test]
    fn module_literal() {
        let m = ModuleRep::parse("module:{lambda:[1, surd:(1+sqrt(5))/2], unit:[1,0]}").unwrap();
        assert_eq!(m.theta(), &[phi()]);
        let m = ModuleRep::parse("module:{lambda:[1,root:3:2~128,root:3:4~128]}").unwrap();
        assert_eq!(m.n(), 3);
        assert!(ModuleRep::parse("module:{lambda:[1]}").is_err());
        assert!(matches!(
            ModuleRep::parse("lambda:[1,2]"),
            Err(Error::Parse(_))
        ));
        assert!(matches!(
            ModuleRep::parse("module:{lambda:[1,2], color:[1]}"),
            Err(Error::Parse(_))
        ));
        assert_eq!(
            GroupElement::parse("[3, -4]").unwrap().to_string(),
            "[3,-4]"
        );
    }

    fn small_surd() -> impl Strategy<Value = RealValue> {
        (
            -20i64..20,
            prop_oneof![1i64..6, -5i64..0],
            1i64..8,
            prop::sample::select(vec![2i64, 3, 5, 6, 7]),
        )
            .prop_map(|(a, b, c, d)| RealValue::surd(a, b, c, d).unwrap())
    }

    fn coords(n: usize) -> impl Strategy<Value = GroupElement> {
        prop::collection::vec(-10i64..=10, n).prop_map(|v| GroupElement::from_i64(&v))
    }

    proptest! {
        #[test]
        fn state_is_additive(s in small_surd(), x in coords(2), y in coords(2)) {
            let m = module(vec![RealValue::from(1), s]);
            let fx = state_eval(&m, &x).unwrap();
            let fy = state_eval(&m, &y).unwrap();
            prop_assert_eq!(state_eval(&m, &x.add(&y)).unwrap(), fx.add(&fy).unwrap());
            if cone_contains(&m, &x).unwrap().in_cone() {
                prop_assert!(fx.signum().unwrap() != Ordering::Less);
            }
        }

        #[test]
        fn cone_is_antisymmetric(s in small_surd(), x in coords(2)) {
            let m = module(vec![RealValue::from(1), s]);
            let sx = cone_contains(&m, &x).unwrap();
            let sn = cone_contains(&m, &x.neg()).unwrap();
            match sx {
                ConeSign::Positive => prop_assert_eq!(sn, ConeSign::Negative),
                ConeSign::Negative => prop_assert_eq!(sn, ConeSign::Positive),
                ConeSign::Zero => prop_assert!(x.is_zero()),
            }
        }
    }

    #[test]
    fn zero_only_at_origin() {
        for s in [
            phi(),
            RealValue::surd(0, 1, 1, 2).unwrap(),
            RealValue::surd(-7, 3, 4, 13).unwrap(),
        ] {
            let m = module(vec![RealValue::from(1), s]);
            for x in box_vectors(2, 10) {
                let z = cone_contains(&m, &x).unwrap() == ConeSign::Zero;
                assert_eq!(z, x.is_zero());
            }
        }
    }
}
