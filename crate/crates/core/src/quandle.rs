//! Finite quandles and racks stored as explicit operation tables.
//!
//! Elements are the dense indices `0..order`. The table entry `(a, b)` holds
//! `a ▷ b`; the inverse operation `a ▷⁻¹ b` (the unique `x` with `x ▷ b = a`)
//! is derived once at construction because coloring propagation uses it on
//! every crossing.

use serde::{Deserialize, Serialize};
use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum QuandleError {
    #[error("empty operation table")]
    Empty,
    #[error("row {row} has length {len}, expected {order}")]
    NotSquare { row: usize, len: usize, order: usize },
    #[error("entry ({row}, {col}) = {value} is outside 0..{order}")]
    EntryOutOfRange { row: usize, col: usize, value: usize, order: usize },
    #[error("declared order {declared} does not match table size {actual}")]
    OrderMismatch { declared: usize, actual: usize },
    #[error("not idempotent: {0} ▷ {0} != {0}")]
    NotIdempotent(usize),
    #[error("right translation by {0} is not a bijection")]
    ColumnNotBijective(usize),
    #[error("not self-distributive at ({0}, {1}, {2})")]
    NotSelfDistributive(usize, usize, usize),
    #[error("not a group: {0}")]
    NotAGroup(GroupViolation),
    #[error("exponent must be positive")]
    ZeroExponent,
}

/// The first group axiom found to fail, with its witness.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum GroupViolation {
    #[error("no identity element")]
    NoIdentity,
    #[error("element {0} has no inverse")]
    NoInverse(usize),
    #[error("associativity fails at ({0}, {1}, {2})")]
    NotAssociative(usize, usize, usize),
}

/// A validated finite quandle.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FiniteQuandle {
    name: String,
    order: usize,
    op: Vec<usize>,
    inv: Vec<usize>,
}

/// On-disk form: `{"name": ..., "order": n, "table": [[...], ...]}`.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct QuandleJson {
    #[serde(default)]
    pub name: String,
    pub order: usize,
    pub table: Vec<Vec<usize>>,
}

fn check_shape(table: &[Vec<usize>]) -> Result<usize, QuandleError> {
    let n = table.len();
    if n == 0 {
        return Err(QuandleError::Empty);
    }
    for (row, entries) in table.iter().enumerate() {
        if entries.len() != n {
            return Err(QuandleError::NotSquare { row, len: entries.len(), order: n });
        }
        for (col, &value) in entries.iter().enumerate() {
            if value >= n {
                return Err(QuandleError::EntryOutOfRange { row, col, value, order: n });
            }
        }
    }
    Ok(n)
}

fn check_columns(table: &[Vec<usize>]) -> Result<(), QuandleError> {
    let n = table.len();
    let mut seen = vec![false; n];
    for b in 0..n {
        seen.iter_mut().for_each(|s| *s = false);
        for row in table {
            let v = row[b];
            if seen[v] {
                return Err(QuandleError::ColumnNotBijective(b));
            }
            seen[v] = true;
        }
    }
    Ok(())
}

fn check_distributive(table: &[Vec<usize>]) -> Result<(), QuandleError> {
    let n = table.len();
    for a in 0..n {
        for b in 0..n {
            for c in 0..n {
                let lhs = table[table[a][b]][c];
                let rhs = table[table[a][c]][table[b][c]];
                if lhs != rhs {
                    return Err(QuandleError::NotSelfDistributive(a, b, c));
                }
            }
        }
    }
    Ok(())
}

/// Returns the first rack axiom violation, or `None` if the table is a rack.
///
/// Idempotence is not required. Shape errors are reported as violations too.
pub fn rack_violation(table: &[Vec<usize>]) -> Option<QuandleError> {
    check_shape(table)
        .and_then(|_| check_columns(table))
        .and_then(|_| check_distributive(table))
        .err()
}

pub fn is_rack(table: &[Vec<usize>]) -> bool {
    rack_violation(table).is_none()
}

impl FiniteQuandle {
    /// Validates the quandle axioms in the order idempotence, column
    /// bijectivity, self-distributivity; the first failure is returned.
    pub fn new(name: impl Into<String>, table: Vec<Vec<usize>>) -> Result<Self, QuandleError> {
        let n = check_shape(&table)?;
        for (a, row) in table.iter().enumerate() {
            if row[a] != a {
                return Err(QuandleError::NotIdempotent(a));
            }
        }
        check_columns(&table)?;
        check_distributive(&table)?;

        let mut op = Vec::with_capacity(n * n);
        for row in &table {
            op.extend_from_slice(row);
        }
        let mut inv = vec![0; n * n];
        for a in 0..n {
            for b in 0..n {
                inv[op[a * n + b] * n + b] = a;
            }
        }
        Ok(FiniteQuandle { name: name.into(), order: n, op, inv })
    }

    pub fn from_json(json: QuandleJson) -> Result<Self, QuandleError> {
        if json.order != json.table.len() {
            return Err(QuandleError::OrderMismatch { declared: json.order, actual: json.table.len() });
        }
        Self::new(json.name, json.table)
    }

    pub fn to_json(&self) -> QuandleJson {
        QuandleJson { name: self.name.clone(), order: self.order, table: self.table() }
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn order(&self) -> usize {
        self.order
    }

    /// `a ▷ b`
    #[inline]
    pub fn op(&self, a: usize, b: usize) -> usize {
        self.op[a * self.order + b]
    }

    /// `a ▷⁻¹ b`
    #[inline]
    pub fn inv(&self, a: usize, b: usize) -> usize {
        self.inv[a * self.order + b]
    }

    /// `a ▷^sign b` for `sign = ±1`.
    #[inline]
    pub fn act(&self, a: usize, b: usize, sign: i8) -> usize {
        if sign >= 0 {
            self.op(a, b)
        } else {
            self.inv(a, b)
        }
    }

    pub fn table(&self) -> Vec<Vec<usize>> {
        self.op.chunks(self.order).map(<[usize]>::to_vec).collect()
    }

    pub fn inverse_table(&self) -> Vec<Vec<usize>> {
        self.inv.chunks(self.order).map(<[usize]>::to_vec).collect()
    }
}

/// `a ▷ b = 2b − a mod m`.
pub fn dihedral_quandle(m: usize) -> FiniteQuandle {
    assert!(m >= 1, "dihedral quandle needs m >= 1");
    let table = (0..m).map(|a| (0..m).map(|b| (2 * b + m - a) % m).collect()).collect();
    FiniteQuandle::new(format!("dihedral{m}"), table).expect("dihedral table is a quandle")
}

/// `a ▷ b = a`.
pub fn trivial_quandle(m: usize) -> FiniteQuandle {
    assert!(m >= 1, "trivial quandle needs m >= 1");
    let table = (0..m).map(|a| vec![a; m]).collect();
    FiniteQuandle::new(format!("trivial{m}"), table).expect("trivial table is a quandle")
}

fn validate_group(table: &[Vec<usize>]) -> Result<(usize, Vec<usize>), QuandleError> {
    let n = check_shape(table)?;
    let identity = (0..n)
        .find(|&e| (0..n).all(|x| table[e][x] == x && table[x][e] == x))
        .ok_or(QuandleError::NotAGroup(GroupViolation::NoIdentity))?;
    for a in 0..n {
        for b in 0..n {
            for c in 0..n {
                if table[table[a][b]][c] != table[a][table[b][c]] {
                    return Err(QuandleError::NotAGroup(GroupViolation::NotAssociative(a, b, c)));
                }
            }
        }
    }
    let mut inverse = vec![0; n];
    for (a, slot) in inverse.iter_mut().enumerate() {
        *slot = (0..n)
            .find(|&b| table[a][b] == identity && table[b][a] == identity)
            .ok_or(QuandleError::NotAGroup(GroupViolation::NoInverse(a)))?;
    }
    Ok((identity, inverse))
}

/// Conjugation quandle of a finite group: `a ▷ b = b^(−e) · a · b^e`.
pub fn conjugation_quandle(group_table: &[Vec<usize>], exponent: usize) -> Result<FiniteQuandle, QuandleError> {
    if exponent == 0 {
        return Err(QuandleError::ZeroExponent);
    }
    let (identity, inverse) = validate_group(group_table)?;
    let n = group_table.len();
    let mul = |x: usize, y: usize| group_table[x][y];
    let power = |b: usize| (0..exponent).fold(identity, |acc, _| mul(acc, b));
    let table = (0..n)
        .map(|a| {
            (0..n)
                .map(|b| {
                    let be = power(b);
                    mul(mul(inverse[be], a), be)
                })
                .collect()
        })
        .collect();
    FiniteQuandle::new(format!("conj{n}^{exponent}"), table)
}

/// Multiplication table of the symmetric group on `k` letters, elements in
/// lexicographic order of their one-line notation, composition `(p·q)(i) = p(q(i))`.
pub fn symmetric_group_table(k: usize) -> Vec<Vec<usize>> {
    let mut perms: Vec<Vec<usize>> = Vec::new();
    let mut current: Vec<usize> = (0..k).collect();
    loop {
        perms.push(current.clone());
        // next permutation in lexicographic order
        let Some(i) = (1..k).rev().find(|&i| current[i - 1] < current[i]) else { break };
        let j = (i..k).rev().find(|&j| current[j] > current[i - 1]).unwrap();
        current.swap(i - 1, j);
        current[i..].reverse();
    }
    let index = |p: &[usize]| perms.iter().position(|q| q == p).unwrap();
    perms
        .iter()
        .map(|p| {
            perms
                .iter()
                .map(|q| {
                    let composed: Vec<usize> = (0..k).map(|i| p[q[i]]).collect();
                    index(&composed)
                })
                .collect()
        })
        .collect()
}

/// Multiplication table of the cyclic group Z_m.
pub fn cyclic_group_table(m: usize) -> Vec<Vec<usize>> {
    (0..m).map(|a| (0..m).map(|b| (a + b) % m).collect()).collect()
}
