//! Reidemeister moves as rewrites of PD diagrams, with coloring transport.
//!
//! Every move returns the rewritten diagram (edges renumbered consecutively in
//! component order), a correspondence telling which source edge each target
//! edge inherits its color from, and the move that undoes it.

use std::collections::{BTreeMap, BTreeSet, HashMap, HashSet, VecDeque};

use rand::seq::SliceRandom;
use rand::Rng;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::coloring::{check_coloring, Coloring, ColoringError};
use crate::diagram::{Diagram, DiagramError, EdgeSide, Side, SLOT_A, SLOT_B, SLOT_C, SLOT_D};
use crate::quandle::FiniteQuandle;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum MoveError {
    #[error("site {site} does not match the move pattern: {reason}")]
    PatternMismatch { site: String, reason: String },
    #[error("coloring is not valid on the source diagram: {0}")]
    InvalidColoring(ColoringError),
    #[error("could not determine the transported color of arc {0}")]
    TransportFailed(usize),
    #[error(transparent)]
    Diagram(#[from] DiagramError),
}

type Result<T> = std::result::Result<T, MoveError>;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct CrossingSite {
    pub crossing: usize,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct KinkVariant {
    pub sign: i8,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct PairSite {
    pub under: EdgeSide,
    pub over: EdgeSide,
}

#[derive(Debug, Clone, Copy, Default, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct NoVariant {}

/// `{"kind": ..., "site": {...}, "variant": {...}}`
///
/// * `R1_insert`: site is the edge side whose face receives the kink; variant
///   carries the crossing sign.
/// * `R1_delete`: site is the kink crossing.
/// * `R2_insert`: the over edge is pushed across the under edge; both sides
///   must border the same face.
/// * `R2_delete`: any side of the bigon face.
/// * `R3`: any side of the triangle face.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(tag = "kind")]
pub enum MoveSpec {
    #[serde(rename = "R1_insert")]
    R1Insert { site: EdgeSide, variant: KinkVariant },
    #[serde(rename = "R1_delete")]
    R1Delete {
        site: CrossingSite,
        #[serde(default)]
        variant: NoVariant,
    },
    #[serde(rename = "R2_insert")]
    R2Insert {
        site: PairSite,
        #[serde(default)]
        variant: NoVariant,
    },
    #[serde(rename = "R2_delete")]
    R2Delete {
        site: EdgeSide,
        #[serde(default)]
        variant: NoVariant,
    },
    #[serde(rename = "R3")]
    R3 {
        site: EdgeSide,
        #[serde(default)]
        variant: NoVariant,
    },
}

impl MoveSpec {
    pub fn r1_insert(edge: usize, side: Side, sign: i8) -> Self {
        MoveSpec::R1Insert { site: EdgeSide { edge, side }, variant: KinkVariant { sign } }
    }

    pub fn r1_delete(crossing: usize) -> Self {
        MoveSpec::R1Delete { site: CrossingSite { crossing }, variant: NoVariant {} }
    }

    pub fn r2_insert(under: EdgeSide, over: EdgeSide) -> Self {
        MoveSpec::R2Insert { site: PairSite { under, over }, variant: NoVariant {} }
    }

    pub fn r2_delete(site: EdgeSide) -> Self {
        MoveSpec::R2Delete { site, variant: NoVariant {} }
    }

    pub fn r3(site: EdgeSide) -> Self {
        MoveSpec::R3 { site, variant: NoVariant {} }
    }

    pub fn kind(&self) -> &'static str {
        match self {
            MoveSpec::R1Insert { .. } => "R1_insert",
            MoveSpec::R1Delete { .. } => "R1_delete",
            MoveSpec::R2Insert { .. } => "R2_insert",
            MoveSpec::R2Delete { .. } => "R2_delete",
            MoveSpec::R3 { .. } => "R3",
        }
    }

    fn site_text(&self) -> String {
        let v = serde_json::to_value(self).expect("move JSON");
        v["site"].to_string()
    }

    fn mismatch(&self, reason: impl Into<String>) -> MoveError {
        MoveError::PatternMismatch { site: self.site_text(), reason: reason.into() }
    }
}

/// Which source edge each target edge takes its color from (`None` for
/// edges whose color is recomputed from the crossing relations).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Correspondence {
    /// Indexed by target edge id; entry 0 unused.
    pub edge_source: Vec<Option<usize>>,
    /// Source arc id to target arc id, for arcs that keep a carried edge.
    pub arc_map: Vec<Option<usize>>,
}

#[derive(Debug, Clone)]
pub struct MoveOutcome {
    pub diagram: Diagram,
    pub correspondence: Correspondence,
    pub inverse: MoveSpec,
}

/// Working copy with free edge ids; renumbered on completion.
struct Raw {
    crossings: Vec<[usize; 4]>,
    components: Vec<Vec<usize>>,
    carry: HashMap<usize, Option<usize>>,
    next: usize,
}

impl Raw {
    fn from(d: &Diagram) -> Self {
        let carry = (1..=d.edge_count()).map(|e| (e, Some(e))).collect();
        Raw {
            crossings: d.crossings().to_vec(),
            components: d.components().to_vec(),
            carry,
            next: d.edge_count() + 1,
        }
    }

    fn fresh(&mut self, source: Option<usize>) -> usize {
        let id = self.next;
        self.next += 1;
        self.carry.insert(id, source);
        id
    }

    fn replace_in_component(&mut self, edge: usize, with: &[usize]) {
        for comp in &mut self.components {
            if let Some(p) = comp.iter().position(|&e| e == edge) {
                comp.splice(p..=p, with.iter().copied());
                return;
            }
        }
    }

    /// Builds the renumbered diagram. Returns it with the old-to-new edge map.
    fn finish(self, source: &Diagram) -> Result<(Diagram, Correspondence, HashMap<usize, usize>)> {
        let mut map = HashMap::new();
        for e in self.components.iter().flatten() {
            let id = map.len() + 1;
            map.insert(*e, id);
        }
        let crossings: Vec<[usize; 4]> = self.crossings.iter().map(|cr| cr.map(|e| map[&e])).collect();
        let components: Vec<Vec<usize>> =
            self.components.iter().map(|c| c.iter().map(|e| map[e]).collect()).collect();
        let diagram = Diagram::new(crossings, components)?;

        let mut edge_source = vec![None; diagram.edge_count() + 1];
        for (old, new) in &map {
            edge_source[*new] = self.carry.get(old).copied().flatten();
        }
        let mut arc_map = vec![None; source.arc_count()];
        for (e, src) in edge_source.iter().enumerate() {
            if let Some(s) = src {
                arc_map[source.arc_of_edge(*s)].get_or_insert(diagram.arc_of_edge(e));
            }
        }
        Ok((diagram, Correspondence { edge_source, arc_map }, map))
    }
}

fn partner(pos: usize) -> usize {
    (pos + 2) % 4
}

fn is_over(pos: usize) -> bool {
    pos == SLOT_B || pos == SLOT_D
}

/// Removes crossings, merging the edges of every pass through them.
/// Each merged edge inherits the color of its first non-interior member.
/// Also returns the working id each source edge was merged into.
fn delete_crossings(
    d: &Diagram,
    removed: &[usize],
    interior: &[usize],
    spec: &MoveSpec,
) -> Result<(Raw, HashMap<usize, usize>)> {
    let n = d.edge_count();
    let mut class: Vec<usize> = (0..=n).collect();
    fn find(c: &mut [usize], x: usize) -> usize {
        let mut r = x;
        while c[r] != r {
            r = c[r];
        }
        c[x] = r;
        r
    }
    for &x in removed {
        let cr = d.crossings()[x];
        for (p, q) in [(SLOT_A, SLOT_C), (SLOT_B, SLOT_D)] {
            let (ra, rb) = (find(&mut class, cr[p]), find(&mut class, cr[q]));
            class[ra.max(rb)] = ra.min(rb);
        }
    }
    let roots: Vec<usize> = (0..=n).map(|e| find(&mut class, e)).collect();

    let mut raw = Raw { crossings: Vec::new(), components: Vec::new(), carry: HashMap::new(), next: 1 };
    let mut new_id: HashMap<usize, usize> = HashMap::new();
    for comp in d.components() {
        let len = comp.len();
        // start at a run boundary so no run wraps
        let start = (0..len).find(|&i| roots[comp[i]] != roots[comp[(i + len - 1) % len]]).unwrap_or(0);
        let mut out = Vec::new();
        let mut i = 0;
        while i < len {
            let e = comp[(start + i) % len];
            let r = roots[e];
            if new_id.contains_key(&r) {
                return Err(spec.mismatch("merged strand is not contiguous"));
            }
            let mut members = vec![e];
            while i + 1 < len && roots[comp[(start + i + 1) % len]] == r {
                i += 1;
                members.push(comp[(start + i) % len]);
            }
            i += 1;
            let source = members.iter().copied().find(|m| !interior.contains(m)).unwrap_or(members[0]);
            let id = raw.fresh(Some(source));
            new_id.insert(r, id);
            out.push(id);
        }
        raw.components.push(out);
    }
    let removed: BTreeSet<usize> = removed.iter().copied().collect();
    for (x, cr) in d.crossings().iter().enumerate() {
        if !removed.contains(&x) {
            raw.crossings.push(cr.map(|e| new_id[&roots[e]]));
        }
    }
    let merged = (1..=n).map(|e| (e, new_id[&roots[e]])).collect();
    Ok((raw, merged))
}

/// The `(edge, slot position)` of a kink loop at the crossing, if any.
fn kink_loop(d: &Diagram, x: usize) -> Option<(usize, usize)> {
    let cr = d.crossings()[x];
    (0..4).find(|&i| cr[i] == cr[(i + 1) % 4]).map(|i| (cr[i], i))
}

fn apply_r1_insert(d: &Diagram, spec: &MoveSpec, site: EdgeSide, sign: i8) -> Result<MoveOutcome> {
    let e = site.edge;
    if e == 0 || e > d.edge_count() {
        return Err(spec.mismatch("no such edge"));
    }
    if sign != 1 && sign != -1 {
        return Err(spec.mismatch("kink sign must be 1 or -1"));
    }
    let mut raw = Raw::from(d);
    let free = d.head(e).is_none();
    let e1 = raw.fresh(Some(e));
    let l = raw.fresh(None);
    let e2 = if free { e1 } else { raw.fresh(Some(e)) };
    if !free {
        let (t, h) = (d.tail(e).unwrap(), d.head(e).unwrap());
        raw.crossings[t.crossing][t.pos] = e1;
        raw.crossings[h.crossing][h.pos] = e2;
    }
    let kink = match (site.side, sign) {
        (Side::Right, -1) => [e1, l, l, e2],
        (Side::Right, _) => [l, l, e2, e1],
        (Side::Left, 1) => [e1, e2, l, l],
        (Side::Left, _) => [l, e1, e2, l],
    };
    raw.crossings.push(kink);
    let run = if free { vec![e1, l] } else { vec![e1, l, e2] };
    raw.replace_in_component(e, &run);
    let x = raw.crossings.len() - 1;
    let (diagram, correspondence, _) = raw.finish(d)?;
    Ok(MoveOutcome { diagram, correspondence, inverse: MoveSpec::r1_delete(x) })
}

fn apply_r1_delete(d: &Diagram, spec: &MoveSpec, x: usize) -> Result<MoveOutcome> {
    if x >= d.crossing_count() {
        return Err(spec.mismatch("no such crossing"));
    }
    let Some((l, i)) = kink_loop(d, x) else {
        return Err(spec.mismatch("crossing has no one-sided loop"));
    };
    let side = if i <= 1 { Side::Right } else { Side::Left };
    let (raw, merged) = delete_crossings(d, &[x], &[l], spec)?;
    let (diagram, correspondence, map) = raw.finish(d)?;
    let edge = map[&merged[&l]];
    Ok(MoveOutcome { diagram, correspondence, inverse: MoveSpec::r1_insert(edge, side, d.sign(x)) })
}

fn apply_r2_insert(d: &Diagram, spec: &MoveSpec, site: PairSite) -> Result<MoveOutcome> {
    let (eu, eo) = (site.under.edge, site.over.edge);
    let n = d.edge_count();
    if eu == 0 || eu > n || eo == 0 || eo > n {
        return Err(spec.mismatch("no such edge"));
    }
    if eu == eo {
        return Err(spec.mismatch("under and over edges must differ"));
    }
    if d.face_of(site.under) != d.face_of(site.over) {
        return Err(spec.mismatch("edge sides do not border a common face"));
    }
    let east = site.under.side == Side::Left;
    let descend_first = site.over.side == Side::Right;
    let mut raw = Raw::from(d);
    let u_free = d.head(eu).is_none();
    let o_free = d.head(eo).is_none();
    let u1 = raw.fresh(Some(eu));
    let um = raw.fresh(None);
    let u2 = if u_free { u1 } else { raw.fresh(Some(eu)) };
    let o1 = raw.fresh(Some(eo));
    let ot = raw.fresh(Some(eo));
    let o2 = if o_free { o1 } else { raw.fresh(Some(eo)) };
    for (e, first, last) in [(eu, u1, u2), (eo, o1, o2)] {
        if let (Some(t), Some(h)) = (d.tail(e), d.head(e)) {
            raw.crossings[t.crossing][t.pos] = first;
            raw.crossings[h.crossing][h.pos] = last;
        }
    }
    let (n1, n2) = if descend_first { (o1, o2) } else { (o2, o1) };
    let (x1, x2) = if east {
        ([u1, ot, um, n1], [um, ot, u2, n2])
    } else {
        ([um, n1, u2, ot], [u1, n2, um, ot])
    };
    raw.crossings.push(x1);
    raw.crossings.push(x2);
    let run = if u_free { vec![u1, um] } else { vec![u1, um, u2] };
    raw.replace_in_component(eu, &run);
    let run = if o_free { vec![o1, ot] } else { vec![o1, ot, o2] };
    raw.replace_in_component(eo, &run);
    let (diagram, correspondence, map) = raw.finish(d)?;
    let inverse = MoveSpec::r2_delete(EdgeSide { edge: map[&um], side: site.under.side.flip() });
    Ok(MoveOutcome { diagram, correspondence, inverse })
}

/// The bigon's `(under edge, its bigon side, over edge, its bigon side, corners)`.
fn bigon(d: &Diagram, spec: &MoveSpec, site: EdgeSide) -> Result<(EdgeSide, EdgeSide, [usize; 2])> {
    let f = d.face_of(site).ok_or_else(|| spec.mismatch("no such edge side"))?;
    let face = &d.faces()[f];
    if face.sides.len() != 2 || face.corners[0] == face.corners[1] {
        return Err(spec.mismatch("face is not a bigon"));
    }
    let mut under = None;
    let mut over = None;
    for s in &face.sides {
        let (t, h) = (d.tail(s.edge).unwrap(), d.head(s.edge).unwrap());
        match (is_over(t.pos), is_over(h.pos)) {
            (false, false) => under = Some(*s),
            (true, true) => over = Some(*s),
            _ => {}
        }
    }
    let (Some(u), Some(o)) = (under, over) else {
        return Err(spec.mismatch("bigon strands are not one over and one under"));
    };
    let corners = [face.corners[0], face.corners[1]];
    if d.sign(corners[0]) == d.sign(corners[1]) {
        return Err(spec.mismatch("bigon crossings have equal signs"));
    }
    Ok((u, o, corners))
}

fn apply_r2_delete(d: &Diagram, spec: &MoveSpec, site: EdgeSide) -> Result<MoveOutcome> {
    let (u, o, corners) = bigon(d, spec, site)?;
    let (raw, merged) = delete_crossings(d, &corners, &[u.edge, o.edge], spec)?;
    let (diagram, correspondence, map) = raw.finish(d)?;
    let (new_u, new_o) = (map[&merged[&u.edge]], map[&merged[&o.edge]]);
    let inverse = MoveSpec::r2_insert(
        EdgeSide { edge: new_u, side: u.side.flip() },
        EdgeSide { edge: new_o, side: o.side.flip() },
    );
    Ok(MoveOutcome { diagram, correspondence, inverse })
}

struct Strand {
    edge: usize,
    level: usize,
}

fn triangle(d: &Diagram, spec: &MoveSpec, site: EdgeSide) -> Result<Vec<Strand>> {
    let f = d.face_of(site).ok_or_else(|| spec.mismatch("no such edge side"))?;
    let face = &d.faces()[f];
    let corners: BTreeSet<usize> = face.corners.iter().copied().collect();
    let edges: BTreeSet<usize> = face.sides.iter().map(|s| s.edge).collect();
    if face.sides.len() != 3 || corners.len() != 3 || edges.len() != 3 {
        return Err(spec.mismatch("face is not a triangle"));
    }
    let mut strands: Vec<Strand> = face
        .sides
        .iter()
        .map(|s| {
            let (t, h) = (d.tail(s.edge).unwrap(), d.head(s.edge).unwrap());
            Strand { edge: s.edge, level: is_over(t.pos) as usize + is_over(h.pos) as usize }
        })
        .collect();
    strands.sort_by_key(|s| s.level);
    if strands.iter().map(|s| s.level).collect::<Vec<_>>() != [0, 1, 2] {
        return Err(spec.mismatch("triangle has no top, middle and bottom strand"));
    }
    Ok(strands)
}

fn apply_r3(d: &Diagram, spec: &MoveSpec, site: EdgeSide) -> Result<MoveOutcome> {
    let strands = triangle(d, spec, site)?;
    let mut raw = Raw::from(d);
    for s in &strands {
        let (t, h) = (d.tail(s.edge).unwrap(), d.head(s.edge).unwrap());
        let s_in = d.crossings()[t.crossing][partner(t.pos)];
        let s_out = d.crossings()[h.crossing][partner(h.pos)];
        raw.crossings[t.crossing][partner(t.pos)] = s.edge;
        raw.crossings[t.crossing][t.pos] = s_out;
        raw.crossings[h.crossing][h.pos] = s_in;
        raw.crossings[h.crossing][partner(h.pos)] = s.edge;
        if s.level < 2 {
            raw.carry.insert(s.edge, None);
        }
    }
    let (diagram, correspondence, map) = raw.finish(d)?;
    let tri: BTreeSet<usize> = strands.iter().map(|s| map[&s.edge]).collect();
    let top = map[&strands[2].edge];
    let side = [Side::Left, Side::Right]
        .into_iter()
        .map(|side| EdgeSide { edge: top, side })
        .find(|s| {
            let face = &diagram.faces()[diagram.face_of(*s).unwrap()];
            face.sides.len() == 3 && face.sides.iter().all(|x| tri.contains(&x.edge))
        })
        .ok_or_else(|| spec.mismatch("rewritten triangle not found"))?;
    Ok(MoveOutcome { diagram, correspondence, inverse: MoveSpec::r3(side) })
}

pub fn apply_move(d: &Diagram, spec: &MoveSpec) -> Result<MoveOutcome> {
    match *spec {
        MoveSpec::R1Insert { site, variant } => apply_r1_insert(d, spec, site, variant.sign),
        MoveSpec::R1Delete { site, .. } => apply_r1_delete(d, spec, site.crossing),
        MoveSpec::R2Insert { site, .. } => apply_r2_insert(d, spec, site),
        MoveSpec::R2Delete { site, .. } => apply_r2_delete(d, spec, site),
        MoveSpec::R3 { site, .. } => apply_r3(d, spec, site),
    }
}

/// Carries a coloring of the source diagram across a move.
pub fn transport_coloring(
    q: &FiniteQuandle,
    source: &Diagram,
    coloring: &[usize],
    outcome: &MoveOutcome,
) -> Result<Coloring> {
    check_coloring(source, q, coloring).map_err(MoveError::InvalidColoring)?;
    let target = &outcome.diagram;
    let mut colors: Vec<Option<usize>> = vec![None; target.arc_count()];
    for (e, src) in outcome.correspondence.edge_source.iter().enumerate() {
        if let Some(s) = src {
            let c = coloring[source.arc_of_edge(*s)];
            let arc = target.arc_of_edge(e);
            match colors[arc] {
                None => colors[arc] = Some(c),
                Some(old) if old != c => return Err(MoveError::TransportFailed(arc)),
                _ => {}
            }
        }
    }
    let mut changed = true;
    while changed {
        changed = false;
        for x in 0..target.crossing_count() {
            let (i, o, out) = target.crossing_arcs(x);
            let sign = target.sign(x);
            let Some(y) = colors[o] else { continue };
            match (colors[i], colors[out]) {
                (Some(a), None) => {
                    colors[out] = Some(q.act(a, y, sign));
                    changed = true;
                }
                (None, Some(b)) => {
                    colors[i] = Some(q.act(b, y, -sign));
                    changed = true;
                }
                _ => {}
            }
        }
    }
    let result: Coloring = colors
        .iter()
        .enumerate()
        .map(|(a, c)| c.ok_or(MoveError::TransportFailed(a)))
        .collect::<Result<_>>()?;
    if let Err(ColoringError::InvalidColoring(x)) = check_coloring(target, q, &result) {
        let (_, _, out) = target.crossing_arcs(x);
        return Err(MoveError::TransportFailed(out));
    }
    Ok(result)
}

/// Every site at which some move applies.
pub fn candidate_moves(d: &Diagram) -> Vec<MoveSpec> {
    let mut out = Vec::new();
    for edge in 1..=d.edge_count() {
        for side in [Side::Left, Side::Right] {
            for sign in [1, -1] {
                out.push(MoveSpec::r1_insert(edge, side, sign));
            }
        }
    }
    for x in 0..d.crossing_count() {
        if kink_loop(d, x).is_some() {
            out.push(MoveSpec::r1_delete(x));
        }
    }
    for face in d.faces() {
        for &u in &face.sides {
            for &o in &face.sides {
                if u.edge != o.edge {
                    out.push(MoveSpec::r2_insert(u, o));
                }
            }
        }
        let first = face.sides[0];
        match face.sides.len() {
            2 => {
                let spec = MoveSpec::r2_delete(first);
                if bigon(d, &spec, first).is_ok() {
                    out.push(spec);
                }
            }
            3 => {
                let spec = MoveSpec::r3(first);
                if triangle(d, &spec, first).is_ok() {
                    out.push(spec);
                }
            }
            _ => {}
        }
    }
    out
}

/// Picks a move kind uniformly among those with a site, then a site.
pub fn random_move<R: Rng + ?Sized>(d: &Diagram, rng: &mut R) -> Option<MoveSpec> {
    let mut by_kind: BTreeMap<&'static str, Vec<MoveSpec>> = BTreeMap::new();
    for m in candidate_moves(d) {
        by_kind.entry(m.kind()).or_default().push(m);
    }
    let kinds: Vec<_> = by_kind.values().collect();
    let sites = kinds.choose(rng)?;
    sites.choose(rng).copied()
}

/// Breadth-first search over move sequences of length at most `depth`,
/// starting from a colored diagram. Stops after `max_states` distinct states.
pub fn orbit_explore(
    q: &FiniteQuandle,
    d: &Diagram,
    coloring: &[usize],
    depth: usize,
    max_states: usize,
) -> Result<Vec<(Diagram, Coloring)>> {
    check_coloring(d, q, coloring).map_err(MoveError::InvalidColoring)?;
    let mut seen: HashSet<(String, Coloring)> = HashSet::new();
    let mut out = Vec::new();
    let mut queue = VecDeque::new();
    seen.insert((d.to_json_string(), coloring.to_vec()));
    out.push((d.clone(), coloring.to_vec()));
    queue.push_back((d.clone(), coloring.to_vec(), 0));
    while let Some((cur, col, level)) = queue.pop_front() {
        if level == depth {
            continue;
        }
        for spec in candidate_moves(&cur) {
            if out.len() >= max_states {
                return Ok(out);
            }
            let outcome = apply_move(&cur, &spec)?;
            let next = transport_coloring(q, &cur, &col, &outcome)?;
            if seen.insert((outcome.diagram.to_json_string(), next.clone())) {
                out.push((outcome.diagram.clone(), next.clone()));
                queue.push_back((outcome.diagram, next, level + 1));
            }
        }
    }
    Ok(out)
}

/// Equality up to edge renumbering and choice of starting edge per component.
pub fn same_up_to_renumbering(a: &Diagram, b: &Diagram) -> bool {
    renumbering_between(a, b).is_some()
}

/// An edge map (indexed by edges of `a`) carrying `a` onto `b` by rotating
/// each component, if one exists.
pub fn renumbering_between(a: &Diagram, b: &Diagram) -> Option<Vec<usize>> {
    let la: Vec<usize> = a.components().iter().map(Vec::len).collect();
    let lb: Vec<usize> = b.components().iter().map(Vec::len).collect();
    if la != lb || a.crossing_count() != b.crossing_count() {
        return None;
    }
    let mut target: Vec<[usize; 4]> = b.crossings().to_vec();
    target.sort_unstable();
    let mut offsets = vec![0usize; la.len()];
    loop {
        let mut map = vec![0usize; a.edge_count() + 1];
        for (ci, comp) in a.components().iter().enumerate() {
            let bc = &b.components()[ci];
            for (k, &e) in comp.iter().enumerate() {
                map[e] = bc[(k + offsets[ci]) % bc.len()];
            }
        }
        let mut mapped: Vec<[usize; 4]> = a.crossings().iter().map(|cr| cr.map(|e| map[e])).collect();
        mapped.sort_unstable();
        if mapped == target {
            return Some(map);
        }
        let mut i = 0;
        loop {
            if i == offsets.len() {
                return None;
            }
            offsets[i] += 1;
            if offsets[i] < la[i] {
                break;
            }
            offsets[i] = 0;
            i += 1;
        }
    }
}
