//! Quandle colorings of diagrams.
//!
//! A coloring assigns a quandle element to every arc so that at each crossing
//! `x_out = x_in ▷^ε y`, where `y` colors the over-arc and `ε` is the sign.
//! Colorings are vectors indexed by arc id and are always reported in
//! lexicographic order.

use rayon::prelude::*;
use thiserror::Error;

use crate::diagram::Diagram;
use crate::quandle::FiniteQuandle;

pub type Coloring = Vec<usize>;

pub const DEFAULT_BRUTE_FORCE_LIMIT: u128 = 10_000_000;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ColoringError {
    #[error("coloring has {found} entries, diagram has {expected} arcs")]
    WrongLength { expected: usize, found: usize },
    #[error("color {0} is not an element of the quandle")]
    ColorOutOfRange(usize),
    #[error("coloring violates the relation at crossing {0}")]
    InvalidColoring(usize),
    #[error("brute force would try {size} assignments, limit is {limit}")]
    SizeLimitExceeded { limit: u128, size: u128 },
}

/// Checks the crossing relations; returns the first violated crossing.
pub fn check_coloring(d: &Diagram, q: &FiniteQuandle, coloring: &[usize]) -> Result<(), ColoringError> {
    if coloring.len() != d.arc_count() {
        return Err(ColoringError::WrongLength { expected: d.arc_count(), found: coloring.len() });
    }
    if let Some(&c) = coloring.iter().find(|&&c| c >= q.order()) {
        return Err(ColoringError::ColorOutOfRange(c));
    }
    for x in 0..d.crossing_count() {
        let (i, o, out) = d.crossing_arcs(x);
        if q.act(coloring[i], coloring[o], d.sign(x)) != coloring[out] {
            return Err(ColoringError::InvalidColoring(x));
        }
    }
    Ok(())
}

pub fn is_coloring(d: &Diagram, q: &FiniteQuandle, coloring: &[usize]) -> bool {
    check_coloring(d, q, coloring).is_ok()
}

const UNSET: usize = usize::MAX;

#[derive(Clone, Copy)]
struct Rel {
    input: usize,
    over: usize,
    output: usize,
    sign: i8,
}

struct Search<'a> {
    q: &'a FiniteQuandle,
    rels: Vec<Rel>,
    by_arc: Vec<Vec<usize>>,
    colors: Vec<usize>,
    trail: Vec<usize>,
    queue: Vec<usize>,
}

impl<'a> Search<'a> {
    fn new(d: &Diagram, q: &'a FiniteQuandle) -> Self {
        let rels: Vec<Rel> = (0..d.crossing_count())
            .map(|x| {
                let (input, over, output) = d.crossing_arcs(x);
                Rel { input, over, output, sign: d.sign(x) }
            })
            .collect();
        let mut by_arc = vec![Vec::new(); d.arc_count()];
        for (x, r) in rels.iter().enumerate() {
            for a in [r.input, r.over, r.output] {
                if !by_arc[a].contains(&x) {
                    by_arc[a].push(x);
                }
            }
        }
        Search { q, rels, by_arc, colors: vec![UNSET; d.arc_count()], trail: Vec::new(), queue: Vec::new() }
    }

    fn set(&mut self, arc: usize, color: usize) {
        self.colors[arc] = color;
        self.trail.push(arc);
        self.queue.extend_from_slice(&self.by_arc[arc]);
    }

    fn undo(&mut self, mark: usize) {
        while self.trail.len() > mark {
            let a = self.trail.pop().unwrap();
            self.colors[a] = UNSET;
        }
        self.queue.clear();
    }

    /// Breadth-first propagation from the queued crossings; false on conflict.
    fn propagate(&mut self) -> bool {
        let mut head = 0;
        while head < self.queue.len() {
            let r = self.rels[self.queue[head]];
            head += 1;
            let (i, o, out) = (self.colors[r.input], self.colors[r.over], self.colors[r.output]);
            if o == UNSET {
                continue;
            }
            if i != UNSET {
                let want = self.q.act(i, o, r.sign);
                if out == UNSET {
                    self.set(r.output, want);
                } else if out != want {
                    self.queue.clear();
                    return false;
                }
            } else if out != UNSET {
                self.set(r.input, self.q.act(out, o, -r.sign));
            }
        }
        self.queue.clear();
        true
    }

    /// Over-arcs that would fire a crossing come first, then the lowest free arc.
    fn choose(&self) -> Option<usize> {
        let mut best: Option<usize> = None;
        for r in &self.rels {
            if self.colors[r.over] == UNSET
                && (self.colors[r.input] != UNSET || self.colors[r.output] != UNSET)
                && best.map_or(true, |b| r.over < b)
            {
                best = Some(r.over);
            }
        }
        best.or_else(|| self.colors.iter().position(|&c| c == UNSET))
    }

    fn run(&mut self, visit: &mut impl FnMut(&[usize])) {
        let Some(arc) = self.choose() else {
            visit(&self.colors);
            return;
        };
        for c in 0..self.q.order() {
            let mark = self.trail.len();
            self.set(arc, c);
            if self.propagate() {
                self.run(visit);
            }
            self.undo(mark);
        }
    }

    fn run_rooted(&mut self, root: usize, color: usize, visit: &mut impl FnMut(&[usize])) {
        self.set(root, color);
        if self.propagate() {
            self.run(visit);
        }
        self.undo(0);
    }
}

/// Runs the search for one value of arc 0; workers own disjoint prefixes.
fn search_branch(d: &Diagram, q: &FiniteQuandle, color: usize, visit: &mut impl FnMut(&[usize])) {
    let mut s = Search::new(d, q);
    s.run_rooted(0, color, visit);
}

/// All colorings, sorted lexicographically. Branches on the color of arc 0
/// run on the current rayon pool; output does not depend on thread count.
pub fn enumerate_colorings(d: &Diagram, q: &FiniteQuandle) -> Vec<Coloring> {
    let parts: Vec<Vec<Coloring>> = (0..q.order())
        .into_par_iter()
        .map(|c| {
            let mut out = Vec::new();
            search_branch(d, q, c, &mut |col| out.push(col.to_vec()));
            out.sort_unstable();
            out
        })
        .collect();
    parts.into_iter().flatten().collect()
}

/// Single-threaded enumeration with the same output as [`enumerate_colorings`].
pub fn enumerate_colorings_sequential(d: &Diagram, q: &FiniteQuandle) -> Vec<Coloring> {
    let mut out = Vec::new();
    for c in 0..q.order() {
        search_branch(d, q, c, &mut |col| out.push(col.to_vec()));
    }
    out.sort_unstable();
    out
}

pub fn count_colorings(d: &Diagram, q: &FiniteQuandle) -> u64 {
    (0..q.order())
        .into_par_iter()
        .map(|c| {
            let mut n = 0u64;
            search_branch(d, q, c, &mut |_| n += 1);
            n
        })
        .sum()
}

pub fn brute_force_colorings(d: &Diagram, q: &FiniteQuandle) -> Result<Vec<Coloring>, ColoringError> {
    brute_force_colorings_limited(d, q, DEFAULT_BRUTE_FORCE_LIMIT)
}

/// Tries every arc-color vector in lexicographic order.
pub fn brute_force_colorings_limited(d: &Diagram, q: &FiniteQuandle, limit: u128) -> Result<Vec<Coloring>, ColoringError> {
    let n = d.arc_count();
    let k = q.order();
    let size = (k as u128).checked_pow(n as u32).unwrap_or(u128::MAX);
    if size > limit {
        return Err(ColoringError::SizeLimitExceeded { limit, size });
    }
    let mut out = Vec::new();
    let mut v = vec![0usize; n];
    loop {
        if is_coloring(d, q, &v) {
            out.push(v.clone());
        }
        // odometer, last arc fastest
        let mut i = n;
        loop {
            if i == 0 {
                return Ok(out);
            }
            i -= 1;
            v[i] += 1;
            if v[i] < k {
                break;
            }
            v[i] = 0;
        }
    }
}
