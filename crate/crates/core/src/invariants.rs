//! Boltzmann weights, state-sums and the partition function.
//!
//! Weights are kept additively: the weight of a coloring is the exponent
//! `E = Σ ε·φ(s, y)` over crossings, where `y` colors the over-arc and `s` is
//! the incoming under-arc at positive crossings and the outgoing one at
//! negative crossings. The multiplicative reading `B = t^E` (modular
//! coefficients) or `B = exp(E)` (rational coefficients) is applied only when
//! printing and in the partition function.

use std::collections::BTreeMap;
use std::fmt::Write as _;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, ToPrimitive, Zero};
use rayon::prelude::*;
use serde_json::{json, Value};
use thiserror::Error;

use crate::cohomology::{is_quandle_cocycle, scalar_to_json, Cochain, CoefficientGroup, CohomologyError};
use crate::coloring::{check_coloring, enumerate_colorings, ColoringError};
use crate::diagram::Diagram;
use crate::quandle::FiniteQuandle;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum InvariantError {
    #[error("cochain is not a quandle cocycle (fails at {0:?})")]
    NotACocycle(Vec<usize>),
    #[error("weights need a 2-cochain, got arity {0}")]
    ArityMismatch(usize),
    #[error(transparent)]
    InvalidColoring(#[from] ColoringError),
    #[error(transparent)]
    Cohomology(#[from] CohomologyError),
    #[error("operation needs rational coefficients, got {0}")]
    UnsupportedCoefficient(CoefficientGroup),
    #[error("exponents over {0} have no real value")]
    NonRationalExponents(CoefficientGroup),
    #[error("temperature {0} is not positive")]
    NonPositiveTemperature(f64),
    #[error("Boltzmann constant {0} is not positive")]
    NonPositiveConstant(f64),
    #[error("temperature grid must be finite, positive and strictly increasing")]
    InvalidGrid,
    #[error("symmetric function order must be at least 1")]
    ZeroOrder,
}

type Result<T> = std::result::Result<T, InvariantError>;

/// Multiset of weight exponents: exponent ↦ number of colorings.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct StateSum {
    pub coeff: CoefficientGroup,
    pub terms: BTreeMap<BigRational, u64>,
}

impl StateSum {
    pub fn new(coeff: CoefficientGroup) -> Self {
        StateSum { coeff, terms: BTreeMap::new() }
    }

    pub fn insert(&mut self, exponent: BigRational, count: u64) {
        *self.terms.entry(exponent).or_default() += count;
    }

    pub fn merge(mut self, other: StateSum) -> StateSum {
        for (e, n) in other.terms {
            self.insert(e, n);
        }
        self
    }

    /// Total multiplicity, i.e. the number of colorings.
    pub fn total(&self) -> u64 {
        self.terms.values().sum()
    }

    /// `{"coeff": ..., "terms": [[exponent, multiplicity], ...]}`
    pub fn to_json(&self) -> Value {
        let terms: Vec<Value> =
            self.terms.iter().map(|(e, n)| json!([scalar_to_json(e, self.coeff), n])).collect();
        json!({ "coeff": self.coeff.to_json(), "terms": terms })
    }

    /// The weights written multiplicatively, with explicit multiplicities.
    pub fn multiset_json(&self) -> Value {
        let weights: Vec<Value> = self
            .terms
            .iter()
            .map(|(e, n)| {
                json!({
                    "weight": monomial(e, self.coeff),
                    "exponent": scalar_to_json(e, self.coeff),
                    "multiplicity": n,
                })
            })
            .collect();
        json!({ "coeff": self.coeff.to_json(), "weights": weights })
    }

    /// Group-ring element such as `3 + 6·t^2` or `2·exp(0) + 2·exp(-1)`.
    pub fn display(&self) -> String {
        let mut out = String::new();
        for (i, (e, n)) in self.terms.iter().enumerate() {
            if i > 0 {
                out.push_str(" + ");
            }
            let _ = write!(out, "{n}");
            if !(e.is_zero() && !matches!(self.coeff, CoefficientGroup::Rational)) {
                let _ = write!(out, "·{}", monomial(e, self.coeff));
            }
        }
        out
    }
}

fn monomial(e: &BigRational, coeff: CoefficientGroup) -> String {
    match coeff {
        CoefficientGroup::Rational => format!("exp({e})"),
        _ => format!("t^{e}"),
    }
}

fn require_weight_cocycle(q: &FiniteQuandle, phi: &Cochain) -> Result<()> {
    if phi.arity() != 2 {
        return Err(InvariantError::ArityMismatch(phi.arity()));
    }
    let check = is_quandle_cocycle(q, phi)?;
    if !check.is_cocycle {
        return Err(InvariantError::NotACocycle(check.witness.unwrap_or_default()));
    }
    Ok(())
}

/// Dense `φ(a, b)` lookup.
struct PhiTable {
    order: usize,
    values: Vec<BigRational>,
    coeff: CoefficientGroup,
}

impl PhiTable {
    fn new(phi: &Cochain) -> Self {
        let n = phi.order();
        let mut values = vec![BigRational::zero(); n * n];
        for (t, v) in phi.values() {
            values[t[0] * n + t[1]] = v.clone();
        }
        PhiTable { order: n, values, coeff: phi.coeff() }
    }

    fn weight(&self, d: &Diagram, coloring: &[usize]) -> BigRational {
        let mut sum = BigRational::zero();
        for x in 0..d.crossing_count() {
            let (i, o, out) = d.crossing_arcs(x);
            let sign = d.sign(x);
            let s = if sign > 0 { coloring[i] } else { coloring[out] };
            let v = &self.values[s * self.order + coloring[o]];
            if sign > 0 {
                sum += v;
            } else {
                sum -= v;
            }
        }
        match self.coeff {
            CoefficientGroup::ZMod(m) => {
                let m = BigInt::from(m);
                let r = ((sum.to_integer() % &m) + &m) % &m;
                BigRational::from_integer(r)
            }
            _ => sum,
        }
    }
}

pub fn boltzmann_weight(d: &Diagram, q: &FiniteQuandle, coloring: &[usize], phi: &Cochain) -> Result<BigRational> {
    require_weight_cocycle(q, phi)?;
    check_coloring(d, q, coloring)?;
    Ok(PhiTable::new(phi).weight(d, coloring))
}

/// Sums weights over all colorings. Weight evaluation runs on the current
/// rayon pool; the result does not depend on the thread count.
pub fn state_sum(d: &Diagram, q: &FiniteQuandle, phi: &Cochain) -> Result<StateSum> {
    require_weight_cocycle(q, phi)?;
    let table = PhiTable::new(phi);
    let colorings = enumerate_colorings(d, q);
    let coeff = phi.coeff();
    Ok(colorings
        .par_iter()
        .fold(
            || StateSum::new(coeff),
            |mut acc, c| {
                acc.insert(table.weight(d, c), 1);
                acc
            },
        )
        .reduce(|| StateSum::new(coeff), StateSum::merge))
}

/// The multiset of Boltzmann weights; same object as [`state_sum`].
pub fn weight_multiset(d: &Diagram, q: &FiniteQuandle, phi: &Cochain) -> Result<StateSum> {
    state_sum(d, q, phi)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SymmetricKind {
    Power,
    Elementary,
}

/// A symmetric function of the weights as an exact group-ring element
/// `Σ c·exp(E)` together with its floating-point value.
#[derive(Debug, Clone, PartialEq)]
pub struct SymmetricValue {
    pub terms: BTreeMap<BigRational, BigInt>,
    pub value: f64,
}

impl SymmetricValue {
    pub fn to_json(&self) -> Value {
        let terms: Vec<Value> = self
            .terms
            .iter()
            .map(|(e, c)| json!([scalar_to_json(e, CoefficientGroup::Rational), c.to_string()]))
            .collect();
        json!({ "terms": terms, "value": self.value })
    }
}

fn to_f64(r: &BigRational) -> f64 {
    r.to_f64().unwrap_or(f64::NAN)
}

/// `p_k = Σ B^k` or `e_k` (the `k`-th elementary symmetric polynomial) on
/// the weights `B = exp(E)`, one per coloring.
pub fn symmetric_function(ss: &StateSum, kind: SymmetricKind, order: usize) -> Result<SymmetricValue> {
    if ss.coeff != CoefficientGroup::Rational {
        return Err(InvariantError::UnsupportedCoefficient(ss.coeff));
    }
    if order == 0 {
        return Err(InvariantError::ZeroOrder);
    }
    let terms: BTreeMap<BigRational, BigInt> = match kind {
        SymmetricKind::Power => {
            let k = BigRational::from_integer(order.into());
            ss.terms.iter().map(|(e, n)| (e * &k, BigInt::from(*n))).collect()
        }
        SymmetricKind::Elementary => {
            // coefficient of t^k in Π (1 + t·exp(E))^m
            let mut poly: Vec<BTreeMap<BigRational, BigInt>> = vec![BTreeMap::new(); order + 1];
            poly[0].insert(BigRational::zero(), BigInt::one());
            for (e, &m) in &ss.terms {
                let mut next: Vec<BTreeMap<BigRational, BigInt>> = vec![BTreeMap::new(); order + 1];
                for (i, layer) in poly.iter().enumerate() {
                    let mut binom = BigInt::one();
                    for j in 0..=(order - i).min(m as usize) {
                        if j > 0 {
                            binom = binom * BigInt::from(m - j as u64 + 1) / BigInt::from(j);
                        }
                        let shift = e * BigRational::from_integer(j.into());
                        for (exp, c) in layer {
                            *next[i + j].entry(exp + &shift).or_default() += c * &binom;
                        }
                    }
                }
                poly = next;
            }
            poly.pop().unwrap_or_default()
        }
    };
    let value = terms.iter().map(|(e, c)| c.to_f64().unwrap_or(f64::NAN) * to_f64(e).exp()).sum();
    Ok(SymmetricValue { terms, value })
}

/// `Z(T) = Σ exp(−E / (k·T))` at each temperature, summed in ascending
/// exponent order.
pub fn partition_function(ss: &StateSum, temperatures: &[f64], k: f64) -> Result<Vec<(f64, f64)>> {
    if ss.coeff != CoefficientGroup::Rational {
        return Err(InvariantError::NonRationalExponents(ss.coeff));
    }
    if !(k > 0.0 && k.is_finite()) {
        return Err(InvariantError::NonPositiveConstant(k));
    }
    if let Some(&t) = temperatures.iter().find(|t| !(**t > 0.0)) {
        return Err(InvariantError::NonPositiveTemperature(t));
    }
    let energies: Vec<(f64, f64)> = ss.terms.iter().map(|(e, n)| (to_f64(e), *n as f64)).collect();
    Ok(temperatures
        .iter()
        .map(|&t| {
            let beta = 1.0 / (k * t);
            let z = energies.iter().fold(0.0, |acc, (e, n)| acc + n * (-e * beta).exp());
            (t, z)
        })
        .collect())
}

/// `steps` temperatures from `tmin` to `tmax`, evenly or geometrically spaced.
pub fn temperature_grid(tmin: f64, tmax: f64, steps: usize, log: bool) -> Result<Vec<f64>> {
    if !(tmin > 0.0) {
        return Err(InvariantError::NonPositiveTemperature(tmin));
    }
    if !(tmin.is_finite() && tmax.is_finite()) || steps == 0 || (steps > 1 && tmax <= tmin) {
        return Err(InvariantError::InvalidGrid);
    }
    if steps == 1 {
        return Ok(vec![tmin]);
    }
    let last = (steps - 1) as f64;
    let grid: Vec<f64> = (0..steps)
        .map(|i| {
            let f = i as f64 / last;
            if i + 1 == steps {
                tmax
            } else if log {
                tmin * (tmax / tmin).powf(f)
            } else {
                tmin + (tmax - tmin) * f
            }
        })
        .collect();
    if grid.windows(2).any(|w| w[1] <= w[0]) {
        return Err(InvariantError::InvalidGrid);
    }
    Ok(grid)
}

/// CSV with header `T,Z`; values use the shortest exact decimal form.
pub fn curve_to_csv(curve: &[(f64, f64)]) -> String {
    let mut out = String::from("T,Z\n");
    for (t, z) in curve {
        let _ = writeln!(out, "{t},{z}");
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::diagram::parse_pd;
    use crate::quandle::{dihedral_quandle, trivial_quandle};

    fn r(n: i64) -> BigRational {
        BigRational::from_integer(n.into())
    }

    #[test]
    fn hopf_trivial_quandle() {
        let d = parse_pd(r#"{"crossings": [[4,1,3,2],[2,3,1,4]], "components": [[1,2],[3,4]]}"#).unwrap();
        let q = trivial_quandle(2);
        let mut psi = Cochain::zero(2, 2, CoefficientGroup::Rational);
        psi.set(&[0, 1], r(1)).unwrap();
        let ss = state_sum(&d, &q, &psi).unwrap();
        let eps = d.sign(0) as i64;
        assert_eq!(ss.terms, BTreeMap::from([(r(0), 2), (r(eps), 2)]));
        let z = partition_function(&ss, &[0.5, 2.0], 1.0).unwrap();
        for (t, v) in z {
            let want = 2.0 + 2.0 * (-(eps as f64) / t).exp();
            assert!((v - want).abs() <= 1e-12 * want);
        }
    }

    #[test]
    fn zero_cocycle_and_errors() {
        let d = parse_pd("PD[X[1,4,2,5], X[3,6,4,1], X[5,2,6,3]]").unwrap();
        let q = dihedral_quandle(3);
        let zero = Cochain::zero(3, 2, CoefficientGroup::ZMod(3));
        let ss = state_sum(&d, &q, &zero).unwrap();
        assert_eq!(ss.terms, BTreeMap::from([(r(0), 9)]));
        assert!(matches!(
            partition_function(&ss, &[1.0], 1.0),
            Err(InvariantError::NonRationalExponents(_))
        ));
        let mut bad = Cochain::zero(3, 2, CoefficientGroup::Rational);
        bad.set(&[0, 1], r(1)).unwrap();
        assert!(matches!(state_sum(&d, &q, &bad), Err(InvariantError::NotACocycle(_))));
    }

    #[test]
    fn symmetric_functions() {
        let mut ss = StateSum::new(CoefficientGroup::Rational);
        ss.insert(r(0), 2);
        ss.insert(r(1), 1);
        // weights 1, 1, e
        let p2 = symmetric_function(&ss, SymmetricKind::Power, 2).unwrap();
        assert!((p2.value - (2.0 + (2.0f64).exp())).abs() < 1e-12);
        let e2 = symmetric_function(&ss, SymmetricKind::Elementary, 2).unwrap();
        assert_eq!(e2.terms, BTreeMap::from([(r(0), BigInt::from(1)), (r(1), BigInt::from(2))]));
        let e1 = symmetric_function(&ss, SymmetricKind::Elementary, 1).unwrap();
        let p1 = symmetric_function(&ss, SymmetricKind::Power, 1).unwrap();
        assert_eq!(e1.terms, p1.terms);
        let e4 = symmetric_function(&ss, SymmetricKind::Elementary, 4).unwrap();
        assert!(e4.terms.is_empty());
    }

    #[test]
    fn grids() {
        assert_eq!(temperature_grid(1.0, 10.0, 10, false).unwrap()[9], 10.0);
        assert!(temperature_grid(0.0, 1.0, 3, false).is_err());
        assert!(temperature_grid(2.0, 1.0, 3, true).is_err());
        assert_eq!(curve_to_csv(&[(1.0, 3.0)]), "T,Z\n1,3\n");
    }
}
