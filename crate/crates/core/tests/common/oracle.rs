//! Reference computations written without the library's algorithms. They
//! read only raw tables, PD tuples and component lists.

use std::collections::{BTreeMap, HashMap};

use knotq::cohomology::{Cochain, CoefficientGroup};
use knotq::diagram::Diagram;
use knotq::quandle::FiniteQuandle;
use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

/// First axiom failure of a square table, checked in the order
/// idempotence, column bijectivity, self-distributivity.
pub fn quandle_witness(t: &[Vec<usize>]) -> Option<(&'static str, Vec<usize>)> {
    let n = t.len();
    if let Some(a) = (0..n).find(|&a| t[a][a] != a) {
        return Some(("NotIdempotent", vec![a]));
    }
    for b in 0..n {
        let mut col: Vec<usize> = (0..n).map(|a| t[a][b]).collect();
        col.sort();
        col.dedup();
        if col.len() != n {
            return Some(("ColumnNotBijective", vec![b]));
        }
    }
    for a in 0..n {
        for b in 0..n {
            for c in 0..n {
                if t[t[a][b]][c] != t[t[a][c]][t[b][c]] {
                    return Some(("NotSelfDistributive", vec![a, b, c]));
                }
            }
        }
    }
    None
}

/// Arcs, signs and crossing relations recomputed from the PD data.
pub struct OracleDiagram {
    pub arcs: usize,
    /// (in-arc, over-arc, out-arc, sign) per crossing.
    pub relations: Vec<(usize, usize, usize, i8)>,
}

impl OracleDiagram {
    pub fn new(d: &Diagram) -> Self {
        let mut index = HashMap::new();
        for comp in d.components() {
            for &e in comp {
                let k = index.len();
                index.entry(e).or_insert(k);
            }
        }
        let mut next = HashMap::new();
        for comp in d.components() {
            for (i, &e) in comp.iter().enumerate() {
                next.insert(e, comp[(i + 1) % comp.len()]);
            }
        }
        let mut parent: Vec<usize> = (0..index.len()).collect();
        fn find(p: &mut [usize], x: usize) -> usize {
            let mut r = x;
            while p[r] != r {
                r = p[r];
            }
            p[x] = r;
            r
        }
        for x in d.crossings() {
            let (b, dd) = (find(&mut parent, index[&x[1]]), find(&mut parent, index[&x[3]]));
            parent[b.max(dd)] = b.min(dd);
        }
        let mut roots = BTreeMap::new();
        let mut arc_of = vec![0; index.len()];
        for i in 0..index.len() {
            let r = find(&mut parent, i);
            let k = roots.len();
            arc_of[i] = *roots.entry(r).or_insert(k);
        }
        let relations = d
            .crossings()
            .iter()
            .enumerate()
            .map(|(k, x)| {
                let (b, dd) = (x[1], x[3]);
                let d_to_b = next[&dd] == b;
                let b_to_d = next[&b] == dd;
                // both hold only on two-edge loops; defer to the parsed sign there
                let sign = match (d_to_b, b_to_d) {
                    (true, false) => 1,
                    (false, true) => -1,
                    _ => d.sign(k),
                };
                (arc_of[index[&x[0]]], arc_of[index[&x[1]]], arc_of[index[&x[2]]], sign)
            })
            .collect();
        OracleDiagram { arcs: roots.len(), relations }
    }

    fn satisfied(&self, q: &FiniteQuandle, c: &[usize]) -> bool {
        let t = q.table();
        self.relations.iter().all(|&(i, o, out, s)| {
            if s > 0 {
                t[c[i]][c[o]] == c[out]
            } else {
                t[c[out]][c[o]] == c[i]
            }
        })
    }

    /// Every coloring, found by trying all assignments.
    pub fn colorings(&self, q: &FiniteQuandle) -> Vec<Vec<usize>> {
        let n = q.order();
        let total = n.pow(self.arcs as u32);
        (0..total)
            .map(|mut k| {
                let mut c = vec![0; self.arcs];
                for slot in c.iter_mut().rev() {
                    *slot = k % n;
                    k /= n;
                }
                c
            })
            .filter(|c| self.satisfied(q, c))
            .collect()
    }

    pub fn weight(&self, phi: &Cochain, c: &[usize]) -> BigRational {
        let mut w = BigRational::zero();
        for &(i, o, out, s) in &self.relations {
            if s > 0 {
                w += phi.get(&[c[i], c[o]]);
            } else {
                w -= phi.get(&[c[out], c[o]]);
            }
        }
        if let CoefficientGroup::ZMod(m) = phi.coeff() {
            w = BigRational::from_integer(w.to_integer().mod_floor(&BigInt::from(m)));
        }
        w
    }

    pub fn state_sum(&self, q: &FiniteQuandle, phi: &Cochain) -> BTreeMap<BigRational, u64> {
        let mut out = BTreeMap::new();
        for c in self.colorings(q) {
            *out.entry(self.weight(phi, &c)).or_default() += 1;
        }
        out
    }
}

/// Every value of the 2-cocycle identity, plus vanishing on the diagonal.
pub fn is_2_cocycle(q: &FiniteQuandle, phi: &Cochain) -> bool {
    let t = q.table();
    let n = q.order();
    let zero = |v: BigRational| match phi.coeff() {
        CoefficientGroup::ZMod(m) => v.to_integer().mod_floor(&BigInt::from(m)).is_zero(),
        _ => v.is_zero(),
    };
    for p in 0..n {
        if !zero(phi.get(&[p, p])) {
            return false;
        }
        for r in 0..n {
            for s in 0..n {
                let v = phi.get(&[p, s]) + phi.get(&[t[p][s], t[r][s]]) - phi.get(&[p, r]) - phi.get(&[t[p][r], s]);
                if !zero(v) {
                    return false;
                }
            }
        }
    }
    true
}

/// Every value of the 3-cocycle identity.
pub fn is_3_cocycle(q: &FiniteQuandle, phi: &Cochain) -> bool {
    let t = q.table();
    let n = q.order();
    let zero = |v: BigRational| match phi.coeff() {
        CoefficientGroup::ZMod(m) => v.to_integer().mod_floor(&BigInt::from(m)).is_zero(),
        _ => v.is_zero(),
    };
    for p in 0..n {
        for a in 0..n {
            for r in 0..n {
                for s in 0..n {
                    let v = phi.get(&[p, a, r]) + phi.get(&[t[p][r], t[a][r], s]) + phi.get(&[p, r, s])
                        - phi.get(&[t[p][a], r, s])
                        - phi.get(&[p, a, s])
                        - phi.get(&[t[p][s], t[a][s], t[r][s]]);
                    if !zero(v) {
                        return false;
                    }
                }
            }
        }
    }
    true
}

fn nondegenerate(order: usize, arity: usize) -> Vec<Vec<usize>> {
    let mut out: Vec<Vec<usize>> = vec![vec![]];
    for _ in 0..arity {
        out = out
            .into_iter()
            .flat_map(|t| {
                let last = t.last().copied();
                (0..order).filter(move |&x| last != Some(x)).map(move |x| {
                    let mut u = t.clone();
                    u.push(x);
                    u
                })
            })
            .collect();
    }
    out
}

/// Matrix of the quandle boundary from arity `n` to `n - 1`, rows indexed
/// by the target basis.
pub fn boundary_matrix(q: &FiniteQuandle, n: usize) -> Vec<Vec<i128>> {
    let t = q.table();
    let rows = nondegenerate(q.order(), n - 1);
    let cols = nondegenerate(q.order(), n);
    let pos: HashMap<Vec<usize>, usize> = rows.iter().cloned().enumerate().map(|(i, r)| (r, i)).collect();
    let mut m = vec![vec![0i128; cols.len()]; rows.len()];
    for (j, x) in cols.iter().enumerate() {
        for i in 1..n {
            let sign = if i % 2 == 1 { 1 } else { -1 };
            let mut plain = x.clone();
            plain.remove(i);
            let mut acted = plain.clone();
            for k in 0..i {
                acted[k] = t[x[k]][x[i]];
            }
            if let Some(&r) = pos.get(&plain) {
                m[r][j] += sign;
            }
            if let Some(&r) = pos.get(&acted) {
                m[r][j] -= sign;
            }
        }
    }
    m
}

fn det(mut a: Vec<Vec<i128>>) -> i128 {
    // fraction-free elimination
    let n = a.len();
    let mut sign = 1;
    let mut prev = 1i128;
    for k in 0..n {
        if a[k][k] == 0 {
            match (k + 1..n).find(|&i| a[i][k] != 0) {
                Some(i) => {
                    a.swap(i, k);
                    sign = -sign;
                }
                None => return 0,
            }
        }
        for i in k + 1..n {
            for j in k + 1..n {
                a[i][j] = (a[i][j] * a[k][k] - a[i][k] * a[k][j]) / prev;
            }
        }
        prev = a[k][k];
    }
    if n == 0 {
        1
    } else {
        sign * a[n - 1][n - 1]
    }
}

fn subsets(n: usize, k: usize) -> Vec<Vec<usize>> {
    if k == 0 {
        return vec![vec![]];
    }
    if n < k {
        return vec![];
    }
    let mut out = subsets(n - 1, k);
    for mut s in subsets(n - 1, k - 1) {
        s.push(n - 1);
        out.push(s);
    }
    out
}

/// Invariant factors of an integer matrix from its determinantal divisors
/// (gcd of all k-minors). Only for small matrices.
pub fn invariant_factors(m: &[Vec<i128>]) -> Vec<BigInt> {
    let rows = m.len();
    let cols = m.first().map_or(0, Vec::len);
    let mut divisors = vec![BigInt::one()];
    for k in 1..=rows.min(cols) {
        let mut g = BigInt::zero();
        for rs in subsets(rows, k) {
            for cs in subsets(cols, k) {
                let minor = rs.iter().map(|&r| cs.iter().map(|&c| m[r][c]).collect()).collect();
                g = g.gcd(&BigInt::from(det(minor)));
            }
        }
        if g.is_zero() {
            break;
        }
        divisors.push(g);
    }
    divisors.windows(2).map(|w| (&w[1] / &w[0]).abs()).collect()
}

/// `(free rank, torsion)` of the n-th quandle homology from boundary matrices.
pub fn homology(q: &FiniteQuandle, n: usize) -> (usize, Vec<BigInt>) {
    let dim = nondegenerate(q.order(), n).len();
    let rank_n = if n == 1 { 0 } else { invariant_factors(&boundary_matrix(q, n)).len() };
    let next = invariant_factors(&boundary_matrix(q, n + 1));
    let torsion = next.iter().filter(|d| !d.is_one()).cloned().collect();
    (dim - rank_n - next.len(), torsion)
}
