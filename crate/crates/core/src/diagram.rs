//! Oriented knot and link diagrams in planar-diagram (PD) form.
//!
//! A crossing `[a, b, c, d]` lists its four edges counterclockwise starting
//! from the incoming under-edge `a`; `c` is the outgoing under-edge and
//! `{b, d}` are the over-edges. The crossing is positive when the over-strand
//! runs from `d` to `b`. Edges are numbered from 1; components list their
//! edges cyclically in orientation order. A component with a single edge and
//! no crossings is a free circle.
//!
//! Faces come from the rotation system (the slot order) and planarity is
//! certified by an Euler characteristic check on every connected piece.

use std::collections::{BTreeMap, HashMap};

use serde::{Deserialize, Serialize};
use thiserror::Error;

/// Slot positions within a crossing record.
pub const SLOT_A: usize = 0;
pub const SLOT_B: usize = 1;
pub const SLOT_C: usize = 2;
pub const SLOT_D: usize = 3;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum DiagramError {
    #[error("syntax error at byte {position}: {message}")]
    SyntaxError { position: usize, message: String },
    #[error("edge {0} must appear exactly twice among the crossings")]
    EdgeCountMismatch(usize),
    #[error("edge {0} is missing from, repeated in, or outside the component lists")]
    ComponentMismatch(usize),
    #[error("empty component")]
    EmptyComponent,
    #[error("crossing {0}: outgoing under-edge does not follow the incoming one")]
    UnderStrandMismatch(usize),
    #[error("crossing {0}: over-edges are not consecutive along a component")]
    OverStrandMismatch(usize),
    #[error("crossing {0}: direction of the over-strand cannot be determined")]
    AmbiguousOverDirection(usize),
    #[error("edge {0} does not have exactly one incoming and one outgoing end")]
    EdgeDirectionMismatch(usize),
    #[error("rotation system is not planar (Euler characteristic {euler} on the piece containing crossing {crossing})")]
    NonPlanarRotation { crossing: usize, euler: i64 },
    #[error("crossing label {0} does not occur exactly once over and once under")]
    UnpairedCrossing(u64),
    #[error("crossing label {0} carries conflicting signs")]
    SignConflict(u64),
    #[error("invalid diagram JSON: {0}")]
    Json(String),
}

type Result<T> = std::result::Result<T, DiagramError>;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Side {
    Left,
    Right,
}

impl Side {
    pub fn flip(self) -> Side {
        match self {
            Side::Left => Side::Right,
            Side::Right => Side::Left,
        }
    }
}

/// One side of an edge, relative to the edge's orientation.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct EdgeSide {
    pub edge: usize,
    pub side: Side,
}

/// A slot of a crossing: `(crossing index, position 0..4)`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Slot {
    pub crossing: usize,
    pub pos: usize,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Arc {
    pub id: usize,
    /// Member edges in strand order.
    pub edges: Vec<usize>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Face {
    /// Boundary edge sides in traversal order (the face lies on each side).
    pub sides: Vec<EdgeSide>,
    /// Crossings met at the end of each traversed side.
    pub corners: Vec<usize>,
}

/// `out = input ▷^exponent over` read at one crossing.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct Relation {
    pub crossing: usize,
    pub output: usize,
    pub input: usize,
    pub over: usize,
    pub exponent: i8,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Presentation {
    pub generators: Vec<usize>,
    pub relations: Vec<Relation>,
}

/// The JSON form: `{"crossings": [[a,b,c,d], ...], "components": [[e1, ...], ...]}`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct DiagramJson {
    pub crossings: Vec<[usize; 4]>,
    pub components: Vec<Vec<usize>>,
}

/// A validated diagram with its derived structure.
#[derive(Debug, Clone)]
pub struct Diagram {
    crossings: Vec<[usize; 4]>,
    components: Vec<Vec<usize>>,
    successor: Vec<usize>,
    component_of: Vec<usize>,
    head: Vec<Option<Slot>>,
    tail: Vec<Option<Slot>>,
    signs: Vec<i8>,
    arcs: Vec<Arc>,
    edge_arc: Vec<usize>,
    faces: Vec<Face>,
    side_face: HashMap<EdgeSide, usize>,
}

impl PartialEq for Diagram {
    fn eq(&self, other: &Self) -> bool {
        self.crossings == other.crossings && self.components == other.components
    }
}

impl Eq for Diagram {}

struct UnionFind(Vec<usize>);

impl UnionFind {
    fn new(n: usize) -> Self {
        UnionFind((0..n).collect())
    }

    fn find(&mut self, x: usize) -> usize {
        let mut r = x;
        while self.0[r] != r {
            r = self.0[r];
        }
        let mut y = x;
        while self.0[y] != r {
            let next = self.0[y];
            self.0[y] = r;
            y = next;
        }
        r
    }

    fn union(&mut self, a: usize, b: usize) {
        let (ra, rb) = (self.find(a), self.find(b));
        if ra != rb {
            self.0[ra.max(rb)] = ra.min(rb);
        }
    }
}

impl Diagram {
    pub fn new(crossings: Vec<[usize; 4]>, components: Vec<Vec<usize>>) -> Result<Self> {
        let edge_count: usize = components.iter().map(Vec::len).sum();
        if components.is_empty() || components.iter().any(Vec::is_empty) {
            return Err(DiagramError::EmptyComponent);
        }

        let mut successor = vec![0; edge_count + 1];
        let mut component_of = vec![usize::MAX; edge_count + 1];
        for (ci, comp) in components.iter().enumerate() {
            for (k, &e) in comp.iter().enumerate() {
                if e == 0 || e > edge_count || component_of[e] != usize::MAX {
                    return Err(DiagramError::ComponentMismatch(e));
                }
                component_of[e] = ci;
                successor[e] = comp[(k + 1) % comp.len()];
            }
        }

        let mut occurrences = vec![0usize; edge_count + 1];
        for (x, cr) in crossings.iter().enumerate() {
            for &e in cr {
                if e == 0 || e > edge_count {
                    return Err(DiagramError::ComponentMismatch(e));
                }
                occurrences[e] += 1;
                let _ = x;
            }
        }
        for e in 1..=edge_count {
            let free = components[component_of[e]].len() == 1 && occurrences[e] == 0;
            if occurrences[e] != 2 && !free {
                return Err(DiagramError::EdgeCountMismatch(e));
            }
        }

        let mut head: Vec<Option<Slot>> = vec![None; edge_count + 1];
        let mut tail: Vec<Option<Slot>> = vec![None; edge_count + 1];
        let set = |v: &mut Vec<Option<Slot>>, e: usize, s: Slot| -> Result<()> {
            if v[e].is_some() {
                return Err(DiagramError::EdgeDirectionMismatch(e));
            }
            v[e] = Some(s);
            Ok(())
        };

        for (x, cr) in crossings.iter().enumerate() {
            if successor[cr[SLOT_A]] != cr[SLOT_C] {
                return Err(DiagramError::UnderStrandMismatch(x));
            }
            set(&mut head, cr[SLOT_A], Slot { crossing: x, pos: SLOT_A })?;
            set(&mut tail, cr[SLOT_C], Slot { crossing: x, pos: SLOT_C })?;
        }

        // over_in[x] = slot position of the incoming over-edge
        let mut over_in: Vec<Option<usize>> = vec![None; crossings.len()];
        let mut pending = Vec::new();
        for (x, cr) in crossings.iter().enumerate() {
            let (b, d) = (cr[SLOT_B], cr[SLOT_D]);
            match (successor[d] == b, successor[b] == d) {
                (true, false) => over_in[x] = Some(SLOT_D),
                (false, true) => over_in[x] = Some(SLOT_B),
                (false, false) => return Err(DiagramError::OverStrandMismatch(x)),
                (true, true) => pending.push(x),
            }
        }
        for x in 0..crossings.len() {
            if let Some(pos) = over_in[x] {
                let cr = &crossings[x];
                let out = if pos == SLOT_D { SLOT_B } else { SLOT_D };
                set(&mut head, cr[pos], Slot { crossing: x, pos })?;
                set(&mut tail, cr[out], Slot { crossing: x, pos: out })?;
            }
        }
        // two-edge components: the other end of each edge decides
        while !pending.is_empty() {
            let mut progress = false;
            let mut still = Vec::new();
            for &x in &pending {
                let cr = &crossings[x];
                let (b, d) = (cr[SLOT_B], cr[SLOT_D]);
                let choice = if b == d {
                    None
                } else if head[b].is_some() || tail[d].is_some() {
                    Some(SLOT_D)
                } else if tail[b].is_some() || head[d].is_some() {
                    Some(SLOT_B)
                } else {
                    None
                };
                match choice {
                    Some(pos) => {
                        let out = if pos == SLOT_D { SLOT_B } else { SLOT_D };
                        set(&mut head, cr[pos], Slot { crossing: x, pos })?;
                        set(&mut tail, cr[out], Slot { crossing: x, pos: out })?;
                        over_in[x] = Some(pos);
                        progress = true;
                    }
                    None => still.push(x),
                }
            }
            if !progress {
                return Err(DiagramError::AmbiguousOverDirection(still[0]));
            }
            pending = still;
        }
        for e in 1..=edge_count {
            if occurrences[e] == 2 && (head[e].is_none() || tail[e].is_none()) {
                return Err(DiagramError::EdgeDirectionMismatch(e));
            }
        }
        let signs: Vec<i8> = over_in.iter().map(|p| if *p == Some(SLOT_D) { 1 } else { -1 }).collect();

        let mut d = Diagram {
            crossings,
            components,
            successor,
            component_of,
            head,
            tail,
            signs,
            arcs: Vec::new(),
            edge_arc: Vec::new(),
            faces: Vec::new(),
            side_face: HashMap::new(),
        };
        d.build_arcs();
        d.build_faces()?;
        Ok(d)
    }

    fn build_arcs(&mut self) {
        let n = self.edge_count();
        let mut uf = UnionFind::new(n + 1);
        for cr in &self.crossings {
            uf.union(cr[SLOT_B], cr[SLOT_D]);
        }
        let mut classes: BTreeMap<usize, Vec<usize>> = BTreeMap::new();
        for e in 1..=n {
            classes.entry(uf.find(e)).or_default().push(e);
        }
        // representatives are class minima, so this iterates by smallest edge
        let mut arcs = Vec::new();
        let mut edge_arc = vec![usize::MAX; n + 1];
        for (_, members) in classes {
            let start = members
                .iter()
                .copied()
                .find(|&e| self.tail[e].is_some_and(|s| s.pos == SLOT_C))
                .unwrap_or_else(|| {
                    let comp = &self.components[self.component_of[members[0]]];
                    comp[0]
                });
            let mut edges = vec![start];
            let mut e = start;
            while !self.head[e].is_some_and(|s| s.pos == SLOT_A) {
                e = self.successor[e];
                if e == start {
                    break;
                }
                edges.push(e);
            }
            debug_assert_eq!(edges.len(), members.len());
            let id = arcs.len();
            for &e in &edges {
                edge_arc[e] = id;
            }
            arcs.push(Arc { id, edges });
        }
        self.arcs = arcs;
        self.edge_arc = edge_arc;
    }

    fn other_end(&self, slot: Slot) -> Slot {
        let e = self.crossings[slot.crossing][slot.pos];
        let (h, t) = (self.head[e].unwrap(), self.tail[e].unwrap());
        if h == slot {
            t
        } else {
            h
        }
    }

    fn build_faces(&mut self) -> Result<()> {
        let c = self.crossings.len();
        let mut seen = vec![[false; 4]; c];
        let mut faces = Vec::new();
        for x in 0..c {
            for pos in 0..4 {
                if seen[x][pos] {
                    continue;
                }
                let start = Slot { crossing: x, pos };
                let mut cur = start;
                let mut face = Face { sides: Vec::new(), corners: Vec::new() };
                loop {
                    seen[cur.crossing][cur.pos] = true;
                    let e = self.crossings[cur.crossing][cur.pos];
                    let end = self.other_end(cur);
                    let forward = self.tail[e] == Some(cur);
                    face.sides.push(EdgeSide { edge: e, side: if forward { Side::Right } else { Side::Left } });
                    face.corners.push(end.crossing);
                    cur = Slot { crossing: end.crossing, pos: (end.pos + 1) % 4 };
                    if cur == start {
                        break;
                    }
                }
                faces.push(face);
            }
        }
        for comp in &self.components {
            if comp.len() == 1 && self.head[comp[0]].is_none() {
                for side in [Side::Left, Side::Right] {
                    faces.push(Face { sides: vec![EdgeSide { edge: comp[0], side }], corners: vec![] });
                }
            }
        }

        // Euler check on each connected piece with crossings
        let mut uf = UnionFind::new(c);
        for e in 1..=self.edge_count() {
            if let (Some(h), Some(t)) = (self.head[e], self.tail[e]) {
                uf.union(h.crossing, t.crossing);
            }
        }
        let mut euler: BTreeMap<usize, i64> = BTreeMap::new();
        for x in 0..c {
            *euler.entry(uf.find(x)).or_default() += 1; // vertex
        }
        for e in 1..=self.edge_count() {
            if let Some(h) = self.head[e] {
                *euler.entry(uf.find(h.crossing)).or_default() -= 1;
            }
        }
        for f in &faces {
            if let Some(&x) = f.corners.first() {
                *euler.entry(uf.find(x)).or_default() += 1;
            }
        }
        if let Some((&root, &chi)) = euler.iter().find(|(_, &chi)| chi != 2) {
            return Err(DiagramError::NonPlanarRotation { crossing: root, euler: chi });
        }

        let mut side_face = HashMap::new();
        for (i, f) in faces.iter().enumerate() {
            for s in &f.sides {
                side_face.insert(*s, i);
            }
        }
        self.faces = faces;
        self.side_face = side_face;
        Ok(())
    }

    pub fn from_json(json: DiagramJson) -> Result<Self> {
        Diagram::new(json.crossings, json.components)
    }

    pub fn to_json(&self) -> DiagramJson {
        DiagramJson { crossings: self.crossings.clone(), components: self.components.clone() }
    }

    /// Compact JSON text; parsing it back yields an equal diagram.
    pub fn to_json_string(&self) -> String {
        serde_json::to_string(&self.to_json()).expect("diagram JSON")
    }

    pub fn crossings(&self) -> &[[usize; 4]] {
        &self.crossings
    }

    pub fn components(&self) -> &[Vec<usize>] {
        &self.components
    }

    pub fn crossing_count(&self) -> usize {
        self.crossings.len()
    }

    pub fn edge_count(&self) -> usize {
        self.successor.len() - 1
    }

    pub fn successor(&self, edge: usize) -> usize {
        self.successor[edge]
    }

    pub fn component_of(&self, edge: usize) -> usize {
        self.component_of[edge]
    }

    /// Slot where the edge enters a crossing (`None` for free circles).
    pub fn head(&self, edge: usize) -> Option<Slot> {
        self.head[edge]
    }

    /// Slot where the edge leaves a crossing.
    pub fn tail(&self, edge: usize) -> Option<Slot> {
        self.tail[edge]
    }

    pub fn sign(&self, crossing: usize) -> i8 {
        self.signs[crossing]
    }

    pub fn signs(&self) -> &[i8] {
        &self.signs
    }

    pub fn writhe(&self) -> i64 {
        self.signs.iter().map(|&s| s as i64).sum()
    }

    /// Slot positions `(incoming, outgoing)` of the over-strand.
    pub fn over_slots(&self, crossing: usize) -> (usize, usize) {
        if self.signs[crossing] > 0 {
            (SLOT_D, SLOT_B)
        } else {
            (SLOT_B, SLOT_D)
        }
    }

    pub fn arcs(&self) -> &[Arc] {
        &self.arcs
    }

    pub fn arc_count(&self) -> usize {
        self.arcs.len()
    }

    pub fn arc_of_edge(&self, edge: usize) -> usize {
        self.edge_arc[edge]
    }

    /// `(incoming under arc, over arc, outgoing under arc)` at a crossing.
    pub fn crossing_arcs(&self, crossing: usize) -> (usize, usize, usize) {
        let cr = &self.crossings[crossing];
        (self.edge_arc[cr[SLOT_A]], self.edge_arc[cr[SLOT_B]], self.edge_arc[cr[SLOT_C]])
    }

    pub fn faces(&self) -> &[Face] {
        &self.faces
    }

    pub fn face_of(&self, side: EdgeSide) -> Option<usize> {
        self.side_face.get(&side).copied()
    }

    pub fn fundamental_presentation(&self) -> Presentation {
        let relations = (0..self.crossings.len())
            .map(|x| {
                let (input, over, output) = self.crossing_arcs(x);
                Relation { crossing: x, output, input, over, exponent: self.signs[x] }
            })
            .collect();
        Presentation { generators: (0..self.arcs.len()).collect(), relations }
    }

    /// Signed Gauss code, one line per component, crossing `i` labelled
    /// `i + 1`. Crossingless components have no Gauss representation and
    /// produce `None`.
    pub fn to_gauss(&self) -> Option<String> {
        let mut out = String::new();
        for comp in &self.components {
            let mut tokens = Vec::new();
            for k in 0..comp.len() {
                let prev = comp[(k + comp.len() - 1) % comp.len()];
                let h = self.head[prev]?;
                let kind = if h.pos == SLOT_A { 'U' } else { 'O' };
                let sign = if self.signs[h.crossing] > 0 { '+' } else { '-' };
                tokens.push(format!("{kind}{}{sign}", h.crossing + 1));
            }
            out.push_str(&tokens.join(" "));
            out.push('\n');
        }
        Some(out)
    }

    /// Same diagram with every component's orientation reversed.
    pub fn reversed(&self) -> Diagram {
        let crossings = self.crossings.iter().map(|&[a, b, c, d]| [c, d, a, b]).collect();
        let components = self
            .components
            .iter()
            .map(|comp| comp.iter().rev().copied().collect())
            .collect();
        Diagram::new(crossings, components).expect("reversal preserves validity")
    }

    /// Reflection in the plane: every crossing changes sign.
    pub fn mirrored(&self) -> Diagram {
        let crossings = self.crossings.iter().map(|&[a, b, c, d]| [a, d, c, b]).collect();
        Diagram::new(crossings, self.components.clone()).expect("mirror preserves validity")
    }
}

struct Scanner<'a> {
    text: &'a [u8],
    pos: usize,
}

impl<'a> Scanner<'a> {
    fn skip_ws(&mut self) {
        while self.pos < self.text.len() && self.text[self.pos].is_ascii_whitespace() {
            self.pos += 1;
        }
    }

    fn err(&self, message: impl Into<String>) -> DiagramError {
        DiagramError::SyntaxError { position: self.pos, message: message.into() }
    }

    fn eat(&mut self, token: &str) -> bool {
        self.skip_ws();
        if self.text[self.pos..].starts_with(token.as_bytes()) {
            self.pos += token.len();
            true
        } else {
            false
        }
    }

    fn expect(&mut self, token: &str) -> Result<()> {
        if self.eat(token) {
            Ok(())
        } else {
            Err(self.err(format!("expected {token:?}")))
        }
    }

    fn number(&mut self) -> Result<usize> {
        self.skip_ws();
        let start = self.pos;
        while self.pos < self.text.len() && self.text[self.pos].is_ascii_digit() {
            self.pos += 1;
        }
        std::str::from_utf8(&self.text[start..self.pos])
            .unwrap()
            .parse()
            .map_err(|_| DiagramError::SyntaxError { position: start, message: "expected an edge number".into() })
    }
}

/// Parses classic `PD[X[a,b,c,d], ...]` text. Knots only: the single
/// component is `1, 2, ..., 2c`; `PD[]` is the crossingless unknot.
pub fn parse_pd_classic(text: &str) -> Result<Diagram> {
    let mut s = Scanner { text: text.as_bytes(), pos: 0 };
    let wrapped = s.eat("PD");
    if wrapped {
        s.expect("[")?;
    }
    let mut crossings = Vec::new();
    loop {
        s.skip_ws();
        if !s.eat("X") {
            break;
        }
        s.expect("[")?;
        let mut cr = [0; 4];
        for (i, slot) in cr.iter_mut().enumerate() {
            if i > 0 {
                s.expect(",")?;
            }
            *slot = s.number()?;
        }
        s.expect("]")?;
        crossings.push(cr);
        if !s.eat(",") {
            break;
        }
    }
    if wrapped {
        s.expect("]")?;
    }
    s.skip_ws();
    if s.pos != s.text.len() {
        return Err(s.err("unexpected trailing input"));
    }
    let edges = (2 * crossings.len()).max(1);
    Diagram::new(crossings, vec![(1..=edges).collect()])
}

/// Parses either the JSON form or classic PD text.
pub fn parse_pd(text: &str) -> Result<Diagram> {
    if text.trim_start().starts_with('{') {
        let json: DiagramJson = serde_json::from_str(text).map_err(|e| DiagramError::Json(e.to_string()))?;
        Diagram::from_json(json)
    } else {
        parse_pd_classic(text)
    }
}

struct Passage {
    label: u64,
    over: bool,
    sign: i8,
    incoming: usize,
    outgoing: usize,
}

/// Parses an oriented signed Gauss code, one component per line, tokens such
/// as `O1+ U2-`. Crossings are numbered by ascending label.
pub fn parse_gauss(text: &str) -> Result<Diagram> {
    let mut passages: Vec<Passage> = Vec::new();
    let mut components = Vec::new();
    let mut next_edge = 1;
    let mut offset = 0;
    for line in text.split_inclusive('\n') {
        let mut tokens = Vec::new();
        let mut pos = 0;
        for piece in line.split(|c: char| c.is_whitespace() || c == ',') {
            if !piece.is_empty() {
                let at = offset + line[pos..].find(piece).map_or(0, |i| i + pos);
                tokens.push((at, piece));
                pos = at - offset + piece.len();
            }
        }
        offset += line.len();
        if tokens.is_empty() {
            continue;
        }
        let base = next_edge;
        let k = tokens.len();
        for (j, (at, tok)) in tokens.into_iter().enumerate() {
            let bad = |m: &str| DiagramError::SyntaxError { position: at, message: format!("{m} in {tok:?}") };
            let mut chars = tok.chars();
            let over = match chars.next() {
                Some('O' | 'o') => true,
                Some('U' | 'u') => false,
                _ => return Err(bad("expected O or U")),
            };
            let rest: String = chars.collect();
            let (digits, sign) = if let Some(d) = rest.strip_suffix('+') {
                (d, 1)
            } else if let Some(d) = rest.strip_suffix('-').or_else(|| rest.strip_suffix('\u{2212}')) {
                (d, -1)
            } else {
                return Err(bad("expected a trailing sign"));
            };
            let label: u64 = digits.parse().map_err(|_| bad("expected a crossing label"))?;
            passages.push(Passage {
                label,
                over,
                sign,
                incoming: base + (j + k - 1) % k,
                outgoing: base + j,
            });
        }
        components.push((base..base + k).collect::<Vec<_>>());
        next_edge += k;
    }

    let mut by_label: BTreeMap<u64, Vec<&Passage>> = BTreeMap::new();
    for p in &passages {
        by_label.entry(p.label).or_default().push(p);
    }
    let mut crossings = Vec::new();
    for (label, ps) in by_label {
        let (Some(o), Some(u)) = (ps.iter().find(|p| p.over), ps.iter().find(|p| !p.over)) else {
            return Err(DiagramError::UnpairedCrossing(label));
        };
        if ps.len() != 2 {
            return Err(DiagramError::UnpairedCrossing(label));
        }
        if o.sign != u.sign {
            return Err(DiagramError::SignConflict(label));
        }
        crossings.push(if o.sign > 0 {
            [u.incoming, o.outgoing, u.outgoing, o.incoming]
        } else {
            [u.incoming, o.incoming, u.outgoing, o.outgoing]
        });
    }
    Diagram::new(crossings, components)
}

/// Reads a diagram in any supported notation: JSON, classic PD, or Gauss code.
pub fn parse_any(text: &str) -> Result<Diagram> {
    let t = text.trim_start();
    if t.starts_with('{') || t.starts_with("PD") || t.starts_with('X') {
        parse_pd(text)
    } else {
        parse_gauss(text)
    }
}
