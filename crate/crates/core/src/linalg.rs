//! Exact linear algebra over Z and Q.
//!
//! Smith normal form runs first on `i128` with checked arithmetic and falls
//! back to arbitrary precision when an intermediate value overflows, so the
//! common case (sparse ±1 boundary matrices) stays fast while torsion is never
//! corrupted.

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{CheckedAdd, CheckedMul, CheckedSub, One, Signed, Zero};

/// `P · A · Q = diag(d_1, ..., d_r, 0, ...)` with `d_i | d_{i+1}`, `d_i > 0`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SmithForm {
    pub rows: usize,
    pub cols: usize,
    /// Nonzero invariant factors, in divisibility order.
    pub diagonal: Vec<BigInt>,
    /// Row transform (rows × rows), present when requested.
    pub p: Option<Vec<Vec<BigInt>>>,
    /// Column transform (cols × cols), present when requested.
    pub q: Option<Vec<Vec<BigInt>>>,
}

impl SmithForm {
    pub fn rank(&self) -> usize {
        self.diagonal.len()
    }

    /// Invariant factors greater than one.
    pub fn torsion(&self) -> Vec<BigInt> {
        self.diagonal.iter().filter(|d| !d.is_one()).cloned().collect()
    }
}

trait Entry: Clone + Integer + Signed + CheckedAdd + CheckedSub + CheckedMul + Zero + One {}
impl Entry for i128 {}
impl Entry for BigInt {}

struct Overflow;

fn identity<T: Entry>(n: usize) -> Vec<Vec<T>> {
    (0..n)
        .map(|i| (0..n).map(|j| if i == j { T::one() } else { T::zero() }).collect())
        .collect()
}

/// row[dst] -= factor * row[src], columns from `from` on.
fn row_axpy<T: Entry>(m: &mut [Vec<T>], dst: usize, src: usize, factor: &T, from: usize) -> Result<(), Overflow> {
    let (a, b) = if dst < src {
        let (lo, hi) = m.split_at_mut(src);
        (&mut lo[dst], &hi[0])
    } else {
        let (lo, hi) = m.split_at_mut(dst);
        (&mut hi[0], &lo[src])
    };
    for (x, y) in a[from..].iter_mut().zip(&b[from..]) {
        if y.is_zero() {
            continue;
        }
        let prod = y.checked_mul(factor).ok_or(Overflow)?;
        *x = x.checked_sub(&prod).ok_or(Overflow)?;
    }
    Ok(())
}

/// col[dst] -= factor * col[src] over rows `from..`.
fn col_axpy<T: Entry>(m: &mut [Vec<T>], dst: usize, src: usize, factor: &T, from: usize) -> Result<(), Overflow> {
    for row in m[from..].iter_mut() {
        if row[src].is_zero() {
            continue;
        }
        let prod = row[src].checked_mul(factor).ok_or(Overflow)?;
        row[dst] = row[dst].checked_sub(&prod).ok_or(Overflow)?;
    }
    Ok(())
}

fn swap_cols<T>(m: &mut [Vec<T>], i: usize, j: usize) {
    if i != j {
        for row in m.iter_mut() {
            row.swap(i, j);
        }
    }
}

struct Work<T> {
    a: Vec<Vec<T>>,
    p: Option<Vec<Vec<T>>>,
    q: Option<Vec<Vec<T>>>,
}

impl<T: Entry> Work<T> {
    fn swap_rows(&mut self, i: usize, j: usize) {
        self.a.swap(i, j);
        if let Some(p) = &mut self.p {
            p.swap(i, j);
        }
    }

    fn swap_cols(&mut self, i: usize, j: usize) {
        swap_cols(&mut self.a, i, j);
        if let Some(q) = &mut self.q {
            swap_cols(q, i, j);
        }
    }

    fn row_op(&mut self, dst: usize, src: usize, factor: &T, from: usize) -> Result<(), Overflow> {
        row_axpy(&mut self.a, dst, src, factor, from)?;
        if let Some(p) = &mut self.p {
            row_axpy(p, dst, src, factor, 0)?;
        }
        Ok(())
    }

    fn col_op(&mut self, dst: usize, src: usize, factor: &T, from: usize) -> Result<(), Overflow> {
        col_axpy(&mut self.a, dst, src, factor, from)?;
        if let Some(q) = &mut self.q {
            col_axpy(q, dst, src, factor, 0)?;
        }
        Ok(())
    }

    fn negate_row(&mut self, i: usize) {
        for x in self.a[i].iter_mut() {
            *x = -x.clone();
        }
        if let Some(p) = &mut self.p {
            for x in p[i].iter_mut() {
                *x = -x.clone();
            }
        }
    }
}

fn smith_generic<T: Entry>(input: Vec<Vec<T>>, cols: usize, track: bool) -> Result<(Vec<T>, Work<T>), Overflow> {
    let rows = input.len();
    let mut w = Work {
        a: input,
        p: track.then(|| identity(rows)),
        q: track.then(|| identity(cols)),
    };
    let mut diag = Vec::new();
    let mut t = 0;
    while t < rows.min(cols) {
        // smallest nonzero entry of the trailing block
        let mut best: Option<(usize, usize)> = None;
        for i in t..rows {
            for j in t..cols {
                let v = &w.a[i][j];
                if !v.is_zero() && best.map_or(true, |(bi, bj)| v.abs() < w.a[bi][bj].abs()) {
                    best = Some((i, j));
                    if v.abs().is_one() {
                        break;
                    }
                }
            }
            if best.is_some_and(|(bi, bj)| w.a[bi][bj].abs().is_one()) {
                break;
            }
        }
        let Some((pi, pj)) = best else { break };
        w.swap_rows(t, pi);
        w.swap_cols(t, pj);

        loop {
            let mut clean = true;
            for i in t + 1..rows {
                if w.a[i][t].is_zero() {
                    continue;
                }
                let factor = w.a[i][t].div_floor(&w.a[t][t]);
                w.row_op(i, t, &factor, t)?;
                if !w.a[i][t].is_zero() {
                    clean = false;
                }
            }
            for j in t + 1..cols {
                if w.a[t][j].is_zero() {
                    continue;
                }
                let factor = w.a[t][j].div_floor(&w.a[t][t]);
                w.col_op(j, t, &factor, t)?;
                if !w.a[t][j].is_zero() {
                    clean = false;
                }
            }
            if !clean {
                // a remainder smaller than the pivot survived: make it the pivot
                let mut best = (t, t);
                for i in t + 1..rows {
                    if !w.a[i][t].is_zero() && w.a[i][t].abs() < w.a[best.0][best.1].abs() {
                        best = (i, t);
                    }
                }
                for j in t + 1..cols {
                    if !w.a[t][j].is_zero() && w.a[t][j].abs() < w.a[best.0][best.1].abs() {
                        best = (t, j);
                    }
                }
                w.swap_rows(t, best.0);
                w.swap_cols(t, best.1);
                continue;
            }
            let pivot = w.a[t][t].clone();
            let offender = (t + 1..rows).find(|&i| w.a[i][t + 1..].iter().any(|x| !x.is_multiple_of(&pivot)));
            match offender {
                Some(i) => {
                    let minus_one = -T::one();
                    w.row_op(t, i, &minus_one, t)?;
                }
                None => break,
            }
        }
        if w.a[t][t].is_negative() {
            w.negate_row(t);
        }
        diag.push(w.a[t][t].clone());
        t += 1;
    }
    Ok((diag, w))
}

fn to_big(m: Vec<Vec<i128>>) -> Vec<Vec<BigInt>> {
    m.into_iter().map(|r| r.into_iter().map(BigInt::from).collect()).collect()
}

/// Smith normal form of an integer matrix given as rows.
pub fn smith_normal_form(matrix: &[Vec<i64>], cols: usize, track: bool) -> SmithForm {
    let rows = matrix.len();
    let small: Vec<Vec<i128>> = matrix.iter().map(|r| r.iter().map(|&x| x as i128).collect()).collect();
    if let Ok((diag, w)) = smith_generic(small, cols, track) {
        return SmithForm {
            rows,
            cols,
            diagonal: diag.into_iter().map(BigInt::from).collect(),
            p: w.p.map(to_big),
            q: w.q.map(to_big),
        };
    }
    let big: Vec<Vec<BigInt>> = matrix.iter().map(|r| r.iter().map(|&x| BigInt::from(x)).collect()).collect();
    smith_normal_form_big(big, cols, track)
}

pub fn smith_normal_form_big(matrix: Vec<Vec<BigInt>>, cols: usize, track: bool) -> SmithForm {
    let rows = matrix.len();
    let Ok((diagonal, w)) = smith_generic(matrix, cols, track) else {
        unreachable!("arbitrary precision arithmetic does not overflow")
    };
    SmithForm { rows, cols, diagonal, p: w.p, q: w.q }
}

/// Reduced row echelon form over Q; returns pivot columns.
pub fn rref(m: &mut [Vec<BigRational>], cols: usize) -> Vec<usize> {
    let mut pivots = Vec::new();
    let mut r = 0;
    for c in 0..cols {
        if r == m.len() {
            break;
        }
        let Some(pr) = (r..m.len()).find(|&i| !m[i][c].is_zero()) else { continue };
        m.swap(r, pr);
        let inv = m[r][c].recip();
        for x in m[r][c..].iter_mut() {
            *x = &*x * &inv;
        }
        let pivot_row = m[r].clone();
        for (i, row) in m.iter_mut().enumerate() {
            if i == r || row[c].is_zero() {
                continue;
            }
            let f = row[c].clone();
            for (x, y) in row[c..].iter_mut().zip(&pivot_row[c..]) {
                if !y.is_zero() {
                    *x -= &f * y;
                }
            }
        }
        pivots.push(c);
        r += 1;
    }
    pivots
}

/// Basis of `{x : M x = 0}` over Q, one vector per free column.
pub fn nullspace_rational(matrix: &[Vec<i64>], cols: usize) -> Vec<Vec<BigRational>> {
    let mut m: Vec<Vec<BigRational>> = matrix
        .iter()
        .map(|r| r.iter().map(|&x| BigRational::from_integer(x.into())).collect())
        .collect();
    let pivots = rref(&mut m, cols);
    let mut is_pivot = vec![false; cols];
    for &p in &pivots {
        is_pivot[p] = true;
    }
    (0..cols)
        .filter(|&c| !is_pivot[c])
        .map(|free| {
            let mut v = vec![BigRational::zero(); cols];
            v[free] = BigRational::one();
            for (row, &pc) in pivots.iter().enumerate() {
                v[pc] = -m[row][free].clone();
            }
            v
        })
        .collect()
}

/// Rank over Q.
pub fn rank_rational(matrix: &[Vec<i64>], cols: usize) -> usize {
    smith_normal_form(matrix, cols, false).rank()
}

/// One solution of `M x = b` over Q, if any.
pub fn solve_rational(matrix: &[Vec<i64>], cols: usize, rhs: &[BigRational]) -> Option<Vec<BigRational>> {
    let mut m: Vec<Vec<BigRational>> = matrix
        .iter()
        .zip(rhs)
        .map(|(r, b)| {
            let mut row: Vec<BigRational> = r.iter().map(|&x| BigRational::from_integer(x.into())).collect();
            row.push(b.clone());
            row
        })
        .collect();
    let pivots = rref(&mut m, cols + 1);
    if pivots.last() == Some(&cols) {
        return None;
    }
    let mut x = vec![BigRational::zero(); cols];
    for (row, &pc) in pivots.iter().enumerate() {
        x[pc] = m[row][cols].clone();
    }
    Some(x)
}

fn mat_vec(m: &[Vec<BigInt>], v: &[BigInt]) -> Vec<BigInt> {
    m.iter()
        .map(|row| row.iter().zip(v).filter(|(a, _)| !a.is_zero()).map(|(a, b)| a * b).sum())
        .collect()
}

/// Generators of `{x ∈ (Z/m)^cols : M x ≡ 0 mod m}`, entries in `0..m`.
pub fn kernel_mod(matrix: &[Vec<i64>], cols: usize, modulus: &BigInt) -> Vec<Vec<BigInt>> {
    let snf = smith_normal_form(matrix, cols, true);
    let q = snf.q.as_ref().expect("tracked");
    let mut gens = Vec::new();
    for i in 0..cols {
        let scale = match snf.diagonal.get(i) {
            Some(d) => modulus / d.gcd(modulus),
            None => BigInt::one(),
        };
        if (&scale % modulus).is_zero() {
            continue;
        }
        let v: Vec<BigInt> = q.iter().map(|row| (&row[i] * &scale).mod_floor(modulus)).collect();
        if v.iter().any(|x| !x.is_zero()) {
            gens.push(v);
        }
    }
    gens
}

/// Solves `M x ≡ b (mod m)`, or exactly over Z when `modulus` is `None`.
pub fn solve_integer(matrix: &[Vec<i64>], cols: usize, rhs: &[BigInt], modulus: Option<&BigInt>) -> Option<Vec<BigInt>> {
    let snf = smith_normal_form(matrix, cols, true);
    let p = snf.p.as_ref().expect("tracked");
    let q = snf.q.as_ref().expect("tracked");
    let pb = mat_vec(p, rhs);
    let mut y = vec![BigInt::zero(); cols];
    for (i, c) in pb.iter().enumerate() {
        match (snf.diagonal.get(i), modulus) {
            (Some(d), None) => {
                if !c.is_multiple_of(d) {
                    return None;
                }
                y[i] = c / d;
            }
            (Some(d), Some(m)) => {
                let g = d.gcd(m);
                if !c.is_multiple_of(&g) {
                    return None;
                }
                let m_red = m / &g;
                let d_red = (d / &g).mod_floor(&m_red);
                let inv = mod_inverse(&d_red, &m_red)?;
                y[i] = ((c / &g) * inv).mod_floor(&m_red);
            }
            (None, None) => {
                if !c.is_zero() {
                    return None;
                }
            }
            (None, Some(m)) => {
                if !c.is_multiple_of(m) {
                    return None;
                }
            }
        }
    }
    let mut x = mat_vec(q, &y);
    if let Some(m) = modulus {
        for v in x.iter_mut() {
            *v = v.mod_floor(m);
        }
    }
    Some(x)
}

fn mod_inverse(a: &BigInt, m: &BigInt) -> Option<BigInt> {
    if m.is_one() {
        return Some(BigInt::zero());
    }
    let e = a.extended_gcd(m);
    e.gcd.is_one().then(|| e.x.mod_floor(m))
}
