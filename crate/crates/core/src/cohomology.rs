//! Rack and quandle chain complexes, cochains, cocycles and homology.
//!
//! Chains are formal integer combinations of tuples of quandle elements. The
//! quandle complex is the quotient by degenerate tuples (`x_i = x_{i+1}`);
//! its bases consist of the non-degenerate tuples in lexicographic order.
//! Cochain values are stored additively in the coefficient group.

use std::collections::BTreeMap;
use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, ToPrimitive, Zero};
use serde::{Deserialize, Serialize};
use serde_json::Value;
use thiserror::Error;

use crate::linalg;
use crate::quandle::FiniteQuandle;

/// Default refusal threshold for chain-group bases.
pub const DEFAULT_BASIS_LIMIT: usize = 200_000;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum CohomologyError {
    #[error("tuple {0:?} has an entry outside the quandle")]
    TupleOutOfRange(Vec<usize>),
    #[error("arity mismatch: expected {expected}, found {found}")]
    ArityMismatch { expected: usize, found: usize },
    #[error("coefficient groups differ: {0} vs {1}")]
    CoefficientMismatch(CoefficientGroup, CoefficientGroup),
    #[error("cochain is defined over a quandle of order {found}, expected {expected}")]
    QuandleMismatch { expected: usize, found: usize },
    #[error("unsupported coefficient group {0} for this operation")]
    UnsupportedCoefficient(CoefficientGroup),
    #[error("basis of size {size} exceeds the limit {limit}")]
    SizeLimitExceeded { limit: usize, size: usize },
    #[error("nonzero value on degenerate tuple {0:?}")]
    DegenerateValue(Vec<usize>),
    #[error("value {value} is not an element of {group}")]
    InvalidValue { value: String, group: CoefficientGroup },
    #[error("modulus must be at least 2, got {0}")]
    InvalidModulus(u64),
    #[error("cocycle routes disagree (coboundary: {coboundary}, direct identity: {direct})")]
    RouteDisagreement { coboundary: bool, direct: bool },
    #[error("malformed cochain: {0}")]
    Malformed(String),
}

type Result<T> = std::result::Result<T, CohomologyError>;

/// Coefficient group of cochains, written additively.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum CoefficientGroup {
    ZMod(u64),
    Integer,
    Rational,
}

impl fmt::Display for CoefficientGroup {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            CoefficientGroup::ZMod(m) => write!(f, "Z/{m}"),
            CoefficientGroup::Integer => write!(f, "Z"),
            CoefficientGroup::Rational => write!(f, "Q"),
        }
    }
}

impl CoefficientGroup {
    pub fn zmod(m: u64) -> Result<Self> {
        if m < 2 {
            return Err(CohomologyError::InvalidModulus(m));
        }
        Ok(CoefficientGroup::ZMod(m))
    }

    /// Canonical representative of `value`, or an error if it is not an element.
    pub fn normalize(&self, value: BigRational) -> Result<BigRational> {
        match self {
            CoefficientGroup::Rational => Ok(value),
            CoefficientGroup::Integer if value.is_integer() => Ok(value),
            CoefficientGroup::ZMod(m) if value.is_integer() => {
                Ok(BigRational::from_integer(value.to_integer().mod_floor(&BigInt::from(*m))))
            }
            _ => Err(CohomologyError::InvalidValue { value: value.to_string(), group: *self }),
        }
    }

    pub fn to_json(&self) -> CoeffJson {
        match self {
            CoefficientGroup::ZMod(m) => CoeffJson { mode: "zmod".into(), m: Some(*m) },
            CoefficientGroup::Integer => CoeffJson { mode: "int".into(), m: None },
            CoefficientGroup::Rational => CoeffJson { mode: "rational".into(), m: None },
        }
    }

    pub fn from_json(json: &CoeffJson) -> Result<Self> {
        match (json.mode.as_str(), json.m) {
            ("zmod", Some(m)) => Self::zmod(m),
            ("zmod", None) => Err(CohomologyError::Malformed("zmod needs a modulus".into())),
            ("int", _) => Ok(CoefficientGroup::Integer),
            ("rational", _) => Ok(CoefficientGroup::Rational),
            (other, _) => Err(CohomologyError::Malformed(format!("unknown coefficient mode {other:?}"))),
        }
    }

    /// Parses CLI spellings: `q`, `z`, `zM` (e.g. `z3`).
    pub fn parse(text: &str) -> Result<Self> {
        match text {
            "q" | "Q" | "rational" => Ok(CoefficientGroup::Rational),
            "z" | "Z" | "int" => Ok(CoefficientGroup::Integer),
            _ => {
                let digits = text.strip_prefix('z').or_else(|| text.strip_prefix('Z'));
                match digits.and_then(|d| d.parse::<u64>().ok()) {
                    Some(m) => Self::zmod(m),
                    None => Err(CohomologyError::Malformed(format!("unknown coefficient group {text:?}"))),
                }
            }
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CoeffJson {
    pub mode: String,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub m: Option<u64>,
}

pub fn is_degenerate(tuple: &[usize]) -> bool {
    tuple.windows(2).any(|w| w[0] == w[1])
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum ChainKind {
    Rack,
    Quandle,
}

/// Lexicographically ordered basis of `C_n` for a quandle of a given order.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct TupleSpace {
    pub order: usize,
    pub arity: usize,
    pub kind: ChainKind,
}

impl TupleSpace {
    pub fn new(order: usize, arity: usize, kind: ChainKind) -> Self {
        TupleSpace { order, arity, kind }
    }

    /// Number of basis tuples, saturating on overflow.
    pub fn len(&self) -> usize {
        if self.arity == 0 {
            return 1;
        }
        let (n, k) = (self.order, self.arity as u32);
        match self.kind {
            ChainKind::Rack => n.saturating_pow(k),
            ChainKind::Quandle => n.saturating_mul((n.saturating_sub(1)).saturating_pow(k - 1)),
        }
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    pub fn check_limit(&self, limit: usize) -> Result<usize> {
        let size = self.len();
        if size > limit {
            return Err(CohomologyError::SizeLimitExceeded { limit, size });
        }
        Ok(size)
    }

    /// Position of `tuple` in the basis; `None` if degenerate in the quandle
    /// kind. Entries must already be in range.
    #[inline]
    pub fn index(&self, tuple: &[usize]) -> Option<usize> {
        debug_assert_eq!(tuple.len(), self.arity);
        match self.kind {
            ChainKind::Rack => Some(tuple.iter().fold(0, |acc, &x| acc * self.order + x)),
            ChainKind::Quandle => {
                let mut acc = *tuple.first()?;
                for w in tuple.windows(2) {
                    if w[0] == w[1] {
                        return None;
                    }
                    let r = if w[1] < w[0] { w[1] } else { w[1] - 1 };
                    acc = acc * (self.order - 1) + r;
                }
                Some(acc)
            }
        }
    }

    pub fn tuple(&self, mut index: usize) -> Vec<usize> {
        let mut out = vec![0; self.arity];
        match self.kind {
            ChainKind::Rack => {
                for slot in out.iter_mut().rev() {
                    *slot = index % self.order;
                    index /= self.order;
                }
            }
            ChainKind::Quandle => {
                let base = self.order - 1;
                let mut digits = vec![0; self.arity];
                for d in digits.iter_mut().skip(1).rev() {
                    *d = index % base;
                    index /= base;
                }
                digits[0] = index;
                out[0] = digits[0];
                for i in 1..self.arity {
                    out[i] = if digits[i] < out[i - 1] { digits[i] } else { digits[i] + 1 };
                }
            }
        }
        out
    }

    pub fn iter(&self) -> impl Iterator<Item = Vec<usize>> + '_ {
        (0..self.len()).map(move |i| self.tuple(i))
    }
}

/// Calls `emit(face, coefficient)` for every term of `∂(tuple)`:
/// `Σ_{i=2}^{n} (−1)^i [(x_1..x̂_i..x_n) − (x_1▷x_i, .., x_{i−1}▷x_i, x_{i+1}, .., x_n)]`.
pub fn for_each_boundary_term(q: &FiniteQuandle, tuple: &[usize], mut emit: impl FnMut(&[usize], i64)) {
    let n = tuple.len();
    if n <= 1 {
        return;
    }
    let mut face = Vec::with_capacity(n - 1);
    for i in 1..n {
        // 0-based i corresponds to the 1-based index i + 1
        let sign = if (i + 1) % 2 == 0 { 1 } else { -1 };
        face.clear();
        face.extend_from_slice(&tuple[..i]);
        face.extend_from_slice(&tuple[i + 1..]);
        emit(&face, sign);
        let pivot = tuple[i];
        for x in face[..i].iter_mut() {
            *x = q.op(*x, pivot);
        }
        emit(&face, -sign);
    }
}

fn check_range(order: usize, tuple: &[usize]) -> Result<()> {
    if tuple.iter().any(|&x| x >= order) {
        return Err(CohomologyError::TupleOutOfRange(tuple.to_vec()));
    }
    Ok(())
}

/// A chain in `C_n^R(X)` or `C_n^Q(X)`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ChainVector {
    pub arity: usize,
    pub kind: ChainKind,
    terms: BTreeMap<Vec<usize>, BigInt>,
}

impl ChainVector {
    pub fn zero(arity: usize, kind: ChainKind) -> Self {
        ChainVector { arity, kind, terms: BTreeMap::new() }
    }

    pub fn basis(tuple: Vec<usize>, kind: ChainKind) -> Self {
        let mut v = Self::zero(tuple.len(), kind);
        v.add_term(&tuple, BigInt::one());
        v
    }

    /// Adds `coeff · tuple`; degenerate tuples vanish in the quandle kind.
    pub fn add_term(&mut self, tuple: &[usize], coeff: BigInt) {
        assert_eq!(tuple.len(), self.arity, "tuple arity");
        if coeff.is_zero() || (self.kind == ChainKind::Quandle && is_degenerate(tuple)) {
            return;
        }
        let entry = self.terms.entry(tuple.to_vec()).or_insert_with(BigInt::zero);
        *entry += coeff;
        if entry.is_zero() {
            self.terms.remove(tuple);
        }
    }

    pub fn terms(&self) -> &BTreeMap<Vec<usize>, BigInt> {
        &self.terms
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    /// True if every term is a degenerate tuple.
    pub fn is_degenerate_supported(&self) -> bool {
        self.terms.keys().all(|t| is_degenerate(t))
    }
}

/// `∂_n`, extended linearly. Arity drops by one; chains of arity ≤ 1 map to zero.
pub fn boundary(q: &FiniteQuandle, v: &ChainVector) -> Result<ChainVector> {
    let mut out = ChainVector::zero(v.arity.saturating_sub(1), v.kind);
    if v.arity <= 1 {
        return Ok(out);
    }
    for (tuple, coeff) in &v.terms {
        check_range(q.order(), tuple)?;
        for_each_boundary_term(q, tuple, |face, sign| out.add_term(face, coeff * sign));
    }
    Ok(out)
}

/// Integer matrix of `∂_n` on the quandle complex: rows index `C_{n−1}`,
/// columns index `C_n`, both in lexicographic order.
pub fn boundary_matrix(q: &FiniteQuandle, arity: usize, limit: usize) -> Result<Vec<Vec<i64>>> {
    let src = TupleSpace::new(q.order(), arity, ChainKind::Quandle);
    let dst = TupleSpace::new(q.order(), arity.saturating_sub(1), ChainKind::Quandle);
    let cols = src.check_limit(limit)?;
    let rows = dst.check_limit(limit)?;
    let mut m = vec![vec![0i64; cols]; rows];
    if arity <= 1 {
        return Ok(m);
    }
    for (j, tuple) in src.iter().enumerate() {
        for_each_boundary_term(q, &tuple, |face, sign| {
            if let Some(i) = dst.index(face) {
                m[i][j] += sign;
            }
        });
    }
    Ok(m)
}

/// Matrix of `δ: C^{n} → C^{n+1}`, the transpose of `∂_{n+1}`.
fn coboundary_matrix(q: &FiniteQuandle, arity: usize, limit: usize) -> Result<(Vec<Vec<i64>>, usize)> {
    let cols = TupleSpace::new(q.order(), arity, ChainKind::Quandle).check_limit(limit)?;
    let rows_space = TupleSpace::new(q.order(), arity + 1, ChainKind::Quandle);
    rows_space.check_limit(limit)?;
    let dst = TupleSpace::new(q.order(), arity, ChainKind::Quandle);
    let m = rows_space
        .iter()
        .map(|tuple| {
            let mut row = vec![0i64; cols];
            for_each_boundary_term(q, &tuple, |face, sign| {
                if let Some(j) = dst.index(face) {
                    row[j] += sign;
                }
            });
            row
        })
        .collect();
    Ok((m, cols))
}

/// A quandle cochain: a homomorphism `C_n^Q(X) → A`, stored by its values on
/// non-degenerate tuples. Absent tuples are zero.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Cochain {
    arity: usize,
    coeff: CoefficientGroup,
    order: usize,
    values: BTreeMap<Vec<usize>, BigRational>,
}

/// `{"arity": n, "coeff": {...}, "values": [[[t1, ..., tn], value], ...]}`.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct CochainJson {
    pub arity: usize,
    pub coeff: CoeffJson,
    pub values: Vec<(Vec<usize>, Value)>,
}

/// Encodes a coefficient value: integers as JSON numbers when they fit in
/// `i64`, everything else as a `"p/q"` (or `"p"`) string.
pub fn scalar_to_json(value: &BigRational, coeff: CoefficientGroup) -> Value {
    if coeff != CoefficientGroup::Rational && value.is_integer() {
        if let Some(i) = value.to_integer().to_i64() {
            return Value::from(i);
        }
    }
    Value::from(value.to_string())
}

pub fn scalar_from_json(value: &Value) -> Result<BigRational> {
    let bad = || CohomologyError::Malformed(format!("cannot read {value} as a number"));
    match value {
        Value::Number(n) => {
            if let Some(i) = n.as_i64() {
                Ok(BigRational::from_integer(i.into()))
            } else if let Some(u) = n.as_u64() {
                Ok(BigRational::from_integer(u.into()))
            } else {
                Err(bad())
            }
        }
        Value::String(s) => parse_rational(s).ok_or_else(bad),
        _ => Err(bad()),
    }
}

pub fn parse_rational(text: &str) -> Option<BigRational> {
    let text = text.trim();
    match text.split_once('/') {
        Some((p, q)) => {
            let p: BigInt = p.trim().parse().ok()?;
            let q: BigInt = q.trim().parse().ok()?;
            (!q.is_zero()).then(|| BigRational::new(p, q))
        }
        None => text.parse::<BigInt>().ok().map(BigRational::from_integer),
    }
}

impl Cochain {
    pub fn zero(order: usize, arity: usize, coeff: CoefficientGroup) -> Self {
        Cochain { arity, coeff, order, values: BTreeMap::new() }
    }

    pub fn arity(&self) -> usize {
        self.arity
    }

    pub fn coeff(&self) -> CoefficientGroup {
        self.coeff
    }

    pub fn order(&self) -> usize {
        self.order
    }

    pub fn values(&self) -> &BTreeMap<Vec<usize>, BigRational> {
        &self.values
    }

    pub fn is_zero(&self) -> bool {
        self.values.is_empty()
    }

    pub fn space(&self) -> TupleSpace {
        TupleSpace::new(self.order, self.arity, ChainKind::Quandle)
    }

    /// Sets the value on a tuple. Zero on a degenerate tuple is accepted
    /// silently; anything else there is an error.
    pub fn set(&mut self, tuple: &[usize], value: BigRational) -> Result<()> {
        if tuple.len() != self.arity {
            return Err(CohomologyError::ArityMismatch { expected: self.arity, found: tuple.len() });
        }
        check_range(self.order, tuple)?;
        let value = self.coeff.normalize(value)?;
        if is_degenerate(tuple) {
            if value.is_zero() {
                return Ok(());
            }
            return Err(CohomologyError::DegenerateValue(tuple.to_vec()));
        }
        if value.is_zero() {
            self.values.remove(tuple);
        } else {
            self.values.insert(tuple.to_vec(), value);
        }
        Ok(())
    }

    pub fn get(&self, tuple: &[usize]) -> BigRational {
        self.values.get(tuple).cloned().unwrap_or_else(BigRational::zero)
    }

    /// Dense values in basis order.
    pub fn to_dense(&self) -> Vec<BigRational> {
        let space = self.space();
        let mut out = vec![BigRational::zero(); space.len()];
        for (t, v) in &self.values {
            out[space.index(t).expect("stored tuples are non-degenerate")] = v.clone();
        }
        out
    }

    pub fn from_dense(order: usize, arity: usize, coeff: CoefficientGroup, dense: &[BigRational]) -> Result<Self> {
        let space = TupleSpace::new(order, arity, ChainKind::Quandle);
        let mut c = Cochain::zero(order, arity, coeff);
        for (i, v) in dense.iter().enumerate() {
            if !v.is_zero() {
                c.set(&space.tuple(i), v.clone())?;
            }
        }
        Ok(c)
    }

    fn check_compatible(&self, other: &Cochain) -> Result<()> {
        if self.arity != other.arity {
            return Err(CohomologyError::ArityMismatch { expected: self.arity, found: other.arity });
        }
        if self.coeff != other.coeff {
            return Err(CohomologyError::CoefficientMismatch(self.coeff, other.coeff));
        }
        if self.order != other.order {
            return Err(CohomologyError::QuandleMismatch { expected: self.order, found: other.order });
        }
        Ok(())
    }

    pub fn add(&self, other: &Cochain) -> Result<Cochain> {
        self.check_compatible(other)?;
        let mut out = self.clone();
        for (t, v) in &other.values {
            let sum = out.get(t) + v;
            out.set(t, sum)?;
        }
        Ok(out)
    }

    pub fn neg(&self) -> Cochain {
        let mut out = Cochain::zero(self.order, self.arity, self.coeff);
        for (t, v) in &self.values {
            out.set(t, -v.clone()).expect("negation stays in the group");
        }
        out
    }

    pub fn sub(&self, other: &Cochain) -> Result<Cochain> {
        self.add(&other.neg())
    }

    pub fn to_json(&self) -> CochainJson {
        CochainJson {
            arity: self.arity,
            coeff: self.coeff.to_json(),
            values: self.values.iter().map(|(t, v)| (t.clone(), scalar_to_json(v, self.coeff))).collect(),
        }
    }

    /// Reads the JSON form for a quandle of the given order.
    pub fn from_json(json: &CochainJson, order: usize) -> Result<Self> {
        let coeff = CoefficientGroup::from_json(&json.coeff)?;
        let mut c = Cochain::zero(order, json.arity, coeff);
        for (tuple, value) in &json.values {
            let v = scalar_from_json(value)?;
            let sum = c.get(tuple) + v;
            c.set(tuple, sum)?;
        }
        Ok(c)
    }

    fn check_quandle(&self, q: &FiniteQuandle) -> Result<()> {
        if self.order != q.order() {
            return Err(CohomologyError::QuandleMismatch { expected: q.order(), found: self.order });
        }
        Ok(())
    }
}

/// Accumulates cochain evaluations; `i64` residues for small moduli, exact
/// rationals otherwise.
enum Dense {
    Small { m: i64, values: Vec<i64> },
    Exact(Vec<BigRational>),
}

impl Dense {
    fn new(c: &Cochain) -> Self {
        match c.coeff {
            CoefficientGroup::ZMod(m) if m < (1 << 30) => Dense::Small {
                m: m as i64,
                values: c.to_dense().iter().map(|v| v.to_integer().to_i64().expect("reduced residue")).collect(),
            },
            _ => Dense::Exact(c.to_dense()),
        }
    }

    /// Evaluates `Σ sign · c(tuple)` over the provided terms and reports
    /// whether the result is zero in the group.
    fn vanishes(&self, space: &TupleSpace, terms: &mut dyn FnMut(&mut dyn FnMut(&[usize], i64))) -> bool {
        match self {
            Dense::Small { m, values } => {
                let mut acc = 0i64;
                terms(&mut |t, s| {
                    if let Some(i) = space.index(t) {
                        acc += s * values[i];
                    }
                });
                acc.rem_euclid(*m) == 0
            }
            Dense::Exact(values) => {
                let mut acc = BigRational::zero();
                terms(&mut |t, s| {
                    if let Some(i) = space.index(t) {
                        if !values[i].is_zero() {
                            if s > 0 {
                                acc += &values[i];
                            } else {
                                acc -= &values[i];
                            }
                        }
                    }
                });
                acc.is_zero()
            }
        }
    }

    fn evaluate(&self, space: &TupleSpace, terms: &mut dyn FnMut(&mut dyn FnMut(&[usize], i64))) -> BigRational {
        match self {
            Dense::Small { m, values } => {
                let mut acc = 0i64;
                terms(&mut |t, s| {
                    if let Some(i) = space.index(t) {
                        acc += s * values[i];
                    }
                });
                BigRational::from_integer(acc.rem_euclid(*m).into())
            }
            Dense::Exact(values) => {
                let mut acc = BigRational::zero();
                terms(&mut |t, s| {
                    if let Some(i) = space.index(t) {
                        acc += &values[i] * BigRational::from_integer(s.into());
                    }
                });
                acc
            }
        }
    }
}

/// `(δc)(t) = c(∂t)` on every non-degenerate `(n+1)`-tuple.
pub fn coboundary(q: &FiniteQuandle, c: &Cochain) -> Result<Cochain> {
    c.check_quandle(q)?;
    let src = c.space();
    let dst = TupleSpace::new(q.order(), c.arity + 1, ChainKind::Quandle);
    dst.check_limit(DEFAULT_BASIS_LIMIT)?;
    let dense = Dense::new(c);
    let mut out = Cochain::zero(q.order(), c.arity + 1, c.coeff);
    if c.is_zero() {
        return Ok(out);
    }
    for t in dst.iter() {
        let v = dense.evaluate(&src, &mut |emit| for_each_boundary_term(q, &t, |f, s| emit(f, s)));
        if !v.is_zero() {
            out.set(&t, v)?;
        }
    }
    Ok(out)
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CocycleCheck {
    pub is_cocycle: bool,
    /// First non-degenerate tuple (lexicographic) where the coboundary is nonzero.
    pub witness: Option<Vec<usize>>,
}

/// First tuple violating the explicit 2- or 3-cocycle identity, scanning all
/// tuples (degenerate ones included) in lexicographic order.
fn direct_identity_violation(q: &FiniteQuandle, c: &Cochain, dense: &Dense) -> Option<Vec<usize>> {
    let n = q.order();
    let space = c.space();
    let op = |a, b| q.op(a, b);
    match c.arity {
        2 => {
            for p in 0..n {
                for qq in 0..n {
                    for r in 0..n {
                        // φ(p,r) + φ(p▷r, q▷r) − φ(p,q) − φ(p▷q, r)
                        let ok = dense.vanishes(&space, &mut |emit| {
                            emit(&[p, r], 1);
                            emit(&[op(p, r), op(qq, r)], 1);
                            emit(&[p, qq], -1);
                            emit(&[op(p, qq), r], -1);
                        });
                        if !ok {
                            return Some(vec![p, qq, r]);
                        }
                    }
                }
            }
            None
        }
        3 => {
            for p in 0..n {
                for qq in 0..n {
                    for r in 0..n {
                        for s in 0..n {
                            let ok = dense.vanishes(&space, &mut |emit| {
                                emit(&[p, qq, r], 1);
                                emit(&[op(p, r), op(qq, r), s], 1);
                                emit(&[p, r, s], 1);
                                emit(&[op(p, qq), r, s], -1);
                                emit(&[p, qq, s], -1);
                                emit(&[op(p, s), op(qq, s), op(r, s)], -1);
                            });
                            if !ok {
                                return Some(vec![p, qq, r, s]);
                            }
                        }
                    }
                }
            }
            None
        }
        _ => None,
    }
}

/// Decides `δc = 0`. For arities 2 and 3 the explicit cocycle identity is
/// evaluated independently and must agree.
pub fn is_quandle_cocycle(q: &FiniteQuandle, c: &Cochain) -> Result<CocycleCheck> {
    c.check_quandle(q)?;
    if c.arity == 0 {
        return Err(CohomologyError::ArityMismatch { expected: 1, found: 0 });
    }
    let src = c.space();
    let dst = TupleSpace::new(q.order(), c.arity + 1, ChainKind::Quandle);
    dst.check_limit(DEFAULT_BASIS_LIMIT)?;
    let dense = Dense::new(c);
    let mut witness = None;
    for t in dst.iter() {
        let ok = dense.vanishes(&src, &mut |emit| for_each_boundary_term(q, &t, |f, s| emit(f, s)));
        if !ok {
            witness = Some(t);
            break;
        }
    }
    let via_coboundary = witness.is_none();
    if matches!(c.arity, 2 | 3) {
        let via_identity = direct_identity_violation(q, c, &dense).is_none();
        if via_identity != via_coboundary {
            return Err(CohomologyError::RouteDisagreement { coboundary: via_coboundary, direct: via_identity });
        }
    }
    Ok(CocycleCheck { is_cocycle: via_coboundary, witness })
}

/// A generating set of the cocycles of the given arity.
///
/// Over Q this is a basis (exact elimination); over Z/m it comes from the
/// integer Smith normal form of the coboundary matrix reduced mod m.
pub fn cocycle_space(q: &FiniteQuandle, arity: usize, coeff: CoefficientGroup) -> Result<Vec<Cochain>> {
    cocycle_space_limited(q, arity, coeff, DEFAULT_BASIS_LIMIT)
}

pub fn cocycle_space_limited(q: &FiniteQuandle, arity: usize, coeff: CoefficientGroup, limit: usize) -> Result<Vec<Cochain>> {
    if arity == 0 {
        return Err(CohomologyError::ArityMismatch { expected: 1, found: 0 });
    }
    let (delta, cols) = coboundary_matrix(q, arity, limit)?;
    match coeff {
        CoefficientGroup::Rational => linalg::nullspace_rational(&delta, cols)
            .into_iter()
            .map(|v| Cochain::from_dense(q.order(), arity, coeff, &v))
            .collect(),
        CoefficientGroup::ZMod(m) => linalg::kernel_mod(&delta, cols, &BigInt::from(m))
            .into_iter()
            .map(|v| {
                let v: Vec<BigRational> = v.into_iter().map(BigRational::from_integer).collect();
                Cochain::from_dense(q.order(), arity, coeff, &v)
            })
            .collect(),
        CoefficientGroup::Integer => Err(CohomologyError::UnsupportedCoefficient(coeff)),
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct HomologyResult {
    pub free_rank: usize,
    /// Invariant factors ≥ 2 in divisibility order.
    pub torsion: Vec<BigInt>,
}

impl HomologyResult {
    /// `{"free_rank": r, "torsion": [d1, ...]}`
    pub fn to_json(&self) -> Value {
        let torsion: Vec<Value> = self
            .torsion
            .iter()
            .map(|d| d.to_i64().map(Value::from).unwrap_or_else(|| Value::from(d.to_string())))
            .collect();
        serde_json::json!({ "free_rank": self.free_rank, "torsion": torsion })
    }
}

/// `H_n^Q(X; Z) = ker ∂_n / im ∂_{n+1}` via Smith normal form.
pub fn quandle_homology(q: &FiniteQuandle, n: usize) -> Result<HomologyResult> {
    quandle_homology_limited(q, n, DEFAULT_BASIS_LIMIT)
}

pub fn quandle_homology_limited(q: &FiniteQuandle, n: usize, limit: usize) -> Result<HomologyResult> {
    if n == 0 {
        return Err(CohomologyError::ArityMismatch { expected: 1, found: 0 });
    }
    let dim = TupleSpace::new(q.order(), n, ChainKind::Quandle).check_limit(limit)?;
    TupleSpace::new(q.order(), n + 1, ChainKind::Quandle).check_limit(limit)?;
    let rank_n = if n == 1 {
        0
    } else {
        linalg::smith_normal_form(&boundary_matrix(q, n, limit)?, dim, false).rank()
    };
    let upper = boundary_matrix(q, n + 1, limit)?;
    let upper_cols = TupleSpace::new(q.order(), n + 1, ChainKind::Quandle).len();
    let snf = linalg::smith_normal_form(&upper, upper_cols, false);
    Ok(HomologyResult { free_rank: dim - rank_n - snf.rank(), torsion: snf.torsion() })
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Cohomologous {
    pub equivalent: bool,
    /// `ψ` with `c1 − c2 = δψ` when equivalent.
    pub witness: Option<Cochain>,
}

/// Decides whether `c1 − c2` is a coboundary by solving `δψ = c1 − c2` exactly.
pub fn cohomologous(q: &FiniteQuandle, c1: &Cochain, c2: &Cochain) -> Result<Cohomologous> {
    c1.check_compatible(c2)?;
    c1.check_quandle(q)?;
    let diff = c1.sub(c2)?;
    let arity = c1.arity;
    if arity <= 1 {
        // δ from 0-cochains vanishes (∂_1 = 0)
        let equivalent = diff.is_zero();
        return Ok(Cohomologous { equivalent, witness: None });
    }
    let (delta, cols) = coboundary_matrix(q, arity - 1, DEFAULT_BASIS_LIMIT)?;
    let rhs = diff.to_dense();
    let solution: Option<Vec<BigRational>> = match c1.coeff {
        CoefficientGroup::Rational => linalg::solve_rational(&delta, cols, &rhs),
        CoefficientGroup::Integer => {
            let rhs: Vec<BigInt> = rhs.iter().map(|v| v.to_integer()).collect();
            linalg::solve_integer(&delta, cols, &rhs, None).map(|x| x.into_iter().map(BigRational::from_integer).collect())
        }
        CoefficientGroup::ZMod(m) => {
            let rhs: Vec<BigInt> = rhs.iter().map(|v| v.to_integer()).collect();
            linalg::solve_integer(&delta, cols, &rhs, Some(&BigInt::from(m)))
                .map(|x| x.into_iter().map(BigRational::from_integer).collect())
        }
    };
    match solution {
        Some(psi) => {
            let psi = Cochain::from_dense(q.order(), arity - 1, c1.coeff, &psi)?;
            Ok(Cohomologous { equivalent: true, witness: Some(psi) })
        }
        None => Ok(Cohomologous { equivalent: false, witness: None }),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::quandle::{dihedral_quandle, trivial_quandle};

    fn r(x: i64) -> BigRational {
        BigRational::from_integer(x.into())
    }

    #[test]
    fn tuple_space_indexing_is_lexicographic() {
        for kind in [ChainKind::Rack, ChainKind::Quandle] {
            let s = TupleSpace::new(4, 3, kind);
            let tuples: Vec<_> = s.iter().collect();
            assert_eq!(tuples.len(), s.len());
            assert!(tuples.windows(2).all(|w| w[0] < w[1]));
            for (i, t) in tuples.iter().enumerate() {
                assert_eq!(s.index(t), Some(i));
            }
        }
        assert_eq!(TupleSpace::new(3, 2, ChainKind::Quandle).index(&[1, 1]), None);
    }

    #[test]
    fn boundary_examples() {
        let d3 = dihedral_quandle(3);
        assert!(boundary(&d3, &ChainVector::basis(vec![2], ChainKind::Rack)).unwrap().is_zero());
        let b = boundary(&d3, &ChainVector::basis(vec![0, 1], ChainKind::Rack)).unwrap();
        let expected: BTreeMap<Vec<usize>, BigInt> = [(vec![0], BigInt::one()), (vec![2], -BigInt::one())].into();
        assert_eq!(b.terms(), &expected);
        let t2 = trivial_quandle(2);
        assert!(boundary(&t2, &ChainVector::basis(vec![0, 1], ChainKind::Rack)).unwrap().is_zero());
        assert_eq!(
            boundary(&d3, &ChainVector::basis(vec![0, 5], ChainKind::Rack)),
            Err(CohomologyError::TupleOutOfRange(vec![0, 5]))
        );
    }

    #[test]
    fn coboundary_of_one_cochain() {
        let d3 = dihedral_quandle(3);
        let z3 = CoefficientGroup::ZMod(3);
        let mut psi = Cochain::zero(3, 1, z3);
        psi.set(&[0], r(1)).unwrap();
        psi.set(&[1], r(2)).unwrap();
        let d = coboundary(&d3, &psi).unwrap();
        for p in 0..3 {
            for qq in 0..3 {
                if p == qq {
                    continue;
                }
                let expect = z3.normalize(psi.get(&[p]) - psi.get(&[d3.op(p, qq)])).unwrap();
                assert_eq!(d.get(&[p, qq]), expect);
            }
        }
        assert!(coboundary(&d3, &d).unwrap().is_zero());
        assert!(coboundary(&d3, &Cochain::zero(3, 2, z3)).unwrap().is_zero());
    }

    #[test]
    fn non_cocycle_has_witness() {
        let d3 = dihedral_quandle(3);
        let mut phi = Cochain::zero(3, 2, CoefficientGroup::ZMod(3));
        phi.set(&[0, 1], r(1)).unwrap();
        let check = is_quandle_cocycle(&d3, &phi).unwrap();
        assert!(!check.is_cocycle);
        let w = check.witness.unwrap();
        let (p, qq, rr) = (w[0], w[1], w[2]);
        let lhs = phi.get(&[p, rr]) + phi.get(&[d3.op(p, rr), d3.op(qq, rr)]);
        let rhs = phi.get(&[p, qq]) + phi.get(&[d3.op(p, qq), rr]);
        assert_ne!(CoefficientGroup::ZMod(3).normalize(lhs - rhs).unwrap(), r(0));
    }

    #[test]
    fn degenerate_values_rejected() {
        let mut c = Cochain::zero(3, 2, CoefficientGroup::Rational);
        assert!(c.set(&[1, 1], r(0)).is_ok());
        assert_eq!(c.set(&[1, 1], r(2)), Err(CohomologyError::DegenerateValue(vec![1, 1])));
        assert!(matches!(
            Cochain::zero(3, 2, CoefficientGroup::ZMod(3)).set(&[0, 1], BigRational::new(1.into(), 2.into())),
            Err(CohomologyError::InvalidValue { .. })
        ));
    }

    #[test]
    fn trivial_quandle_cocycles_are_everything() {
        let t2 = trivial_quandle(2);
        let basis = cocycle_space(&t2, 2, CoefficientGroup::Rational).unwrap();
        assert_eq!(basis.len(), 2);
        assert_eq!(
            cocycle_space(&t2, 2, CoefficientGroup::Integer),
            Err(CohomologyError::UnsupportedCoefficient(CoefficientGroup::Integer))
        );
    }

    #[test]
    fn homology_of_small_quandles() {
        let one = trivial_quandle(1);
        assert_eq!(quandle_homology(&one, 3).unwrap(), HomologyResult { free_rank: 0, torsion: vec![] });
        assert_eq!(quandle_homology(&one, 1).unwrap().free_rank, 1);
        let d3 = dihedral_quandle(3);
        let h2 = quandle_homology(&d3, 2).unwrap();
        assert_eq!(h2, HomologyResult { free_rank: 0, torsion: vec![] });
        let h3 = quandle_homology(&d3, 3).unwrap();
        assert_eq!(h3, HomologyResult { free_rank: 0, torsion: vec![BigInt::from(3)] });
        assert!(matches!(
            quandle_homology_limited(&d3, 4, 10),
            Err(CohomologyError::SizeLimitExceeded { limit: 10, .. })
        ));
    }

    #[test]
    fn cohomologous_basics() {
        let d3 = dihedral_quandle(3);
        let z3 = CoefficientGroup::ZMod(3);
        let mut psi = Cochain::zero(3, 1, z3);
        psi.set(&[2], r(1)).unwrap();
        let d = coboundary(&d3, &psi).unwrap();
        let zero = Cochain::zero(3, 2, z3);
        let res = cohomologous(&d3, &d, &zero).unwrap();
        assert!(res.equivalent);
        assert_eq!(coboundary(&d3, &res.witness.unwrap()).unwrap(), d);
        assert!(cohomologous(&d3, &d, &d).unwrap().equivalent);
        let q_zero = Cochain::zero(3, 2, CoefficientGroup::Rational);
        assert!(matches!(cohomologous(&d3, &d, &q_zero), Err(CohomologyError::CoefficientMismatch(..))));
    }

    #[test]
    fn scalar_json_round_trip() {
        let v = BigRational::new((-3).into(), 4.into());
        assert_eq!(scalar_to_json(&v, CoefficientGroup::Rational), Value::from("-3/4"));
        assert_eq!(scalar_from_json(&Value::from("-3/4")).unwrap(), v);
        assert_eq!(scalar_to_json(&r(2), CoefficientGroup::ZMod(3)), Value::from(2));
        assert!(parse_rational("1/0").is_none());
    }
}
