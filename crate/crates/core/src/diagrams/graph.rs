//! Uni-trivalent graphs at the half-edge level, and their signed canonical
//! form.
//!
//! A graph is a list of trivalent vertices. Each vertex owns three slots, and
//! the order in which they are stored is the vertex's cyclic orientation.
//! A slot either carries a colored leg (a univalent vertex) or is joined by an
//! edge to another slot. Struts and vertex-free circles cannot be expressed,
//! which matches the strutless spaces the engine works in.

use std::fmt;

/// Index of a leg color inside a [`super::SpaceBasis`].
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct ColorId(pub u8);

/// What a slot is attached to.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum End {
    Slot { vertex: u16, slot: u8 },
    Leg(ColorId),
}

impl End {
    pub fn slot(vertex: usize, slot: usize) -> Self {
        End::Slot {
            vertex: vertex as u16,
            slot: slot as u8,
        }
    }
}

/// A possibly disconnected uni-trivalent graph with oriented vertices.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Default)]
pub struct DiagramGraph {
    ends: Vec<[End; 3]>,
}

/// Location of a slot.
pub type Loc = (usize, usize);

impl DiagramGraph {
    pub fn new() -> Self {
        Self::default()
    }

    /// Builds from per-vertex slot lists; edges must be listed from both sides.
    pub fn from_ends(ends: Vec<[End; 3]>) -> Self {
        let g = Self { ends };
        debug_assert!(g.is_consistent(), "inconsistent graph {g:?}");
        g
    }

    pub fn vertex_count(&self) -> usize {
        self.ends.len()
    }

    /// Internal degree: the number of trivalent vertices.
    pub fn degree(&self) -> usize {
        self.ends.len()
    }

    pub fn ends(&self) -> &[[End; 3]] {
        &self.ends
    }

    pub fn end(&self, (v, s): Loc) -> End {
        self.ends[v][s]
    }

    pub fn is_consistent(&self) -> bool {
        self.ends.iter().enumerate().all(|(v, slots)| {
            slots.iter().enumerate().all(|(s, e)| match *e {
                End::Leg(_) => true,
                End::Slot { vertex, slot } => {
                    let (w, t) = (vertex as usize, slot as usize);
                    w < self.ends.len()
                        && t < 3
                        && (w, t) != (v, s)
                        && self.ends[w][t] == End::slot(v, s)
                }
            })
        })
    }

    /// Adds a vertex whose slots are all legs; returns its index.
    pub fn add_tripod(&mut self, colors: [ColorId; 3]) -> usize {
        self.ends.push(colors.map(End::Leg));
        self.ends.len() - 1
    }

    /// Joins two slots by an edge, overwriting whatever they held.
    pub fn join(&mut self, a: Loc, b: Loc) {
        self.ends[a.0][a.1] = End::slot(b.0, b.1);
        self.ends[b.0][b.1] = End::slot(a.0, a.1);
    }

    pub fn set_leg(&mut self, a: Loc, color: ColorId) {
        self.ends[a.0][a.1] = End::Leg(color);
    }

    /// Slot locations carrying legs, in vertex order.
    pub fn legs(&self) -> Vec<(Loc, ColorId)> {
        let mut out = Vec::new();
        for (v, slots) in self.ends.iter().enumerate() {
            for (s, e) in slots.iter().enumerate() {
                if let End::Leg(c) = e {
                    out.push(((v, s), *c));
                }
            }
        }
        out
    }

    pub fn leg_count(&self) -> usize {
        self.legs().len()
    }

    /// Glues two legs into one edge. Gluing two legs of the same vertex
    /// produces a self-loop, which is fine here and vanishes on reduction.
    pub fn glue_legs(&mut self, a: Loc, b: Loc) {
        debug_assert!(matches!(self.end(a), End::Leg(_)));
        debug_assert!(matches!(self.end(b), End::Leg(_)));
        self.join(a, b);
    }

    /// Disjoint union; the vertices of `other` are appended.
    pub fn disjoint_union(&self, other: &DiagramGraph) -> DiagramGraph {
        let off = self.ends.len();
        let mut ends = self.ends.clone();
        ends.extend(other.ends.iter().map(|slots| {
            slots.map(|e| match e {
                End::Slot { vertex, slot } => End::Slot {
                    vertex: vertex + off as u16,
                    slot,
                },
                leg => leg,
            })
        }));
        DiagramGraph { ends }
    }

    /// Reverses the cyclic orientation at one vertex.
    pub fn flipped(&self, v: usize) -> DiagramGraph {
        let mut ends = self.ends.clone();
        let [a, b, c] = ends[v];
        ends[v] = [a, c, b];
        // partners pointing at slots 1 and 2 of `v` must follow the swap
        for slots in ends.iter_mut() {
            for e in slots.iter_mut() {
                if let End::Slot { vertex, slot } = e {
                    if *vertex as usize == v && *slot != 0 {
                        *slot = 3 - *slot;
                    }
                }
            }
        }
        DiagramGraph { ends }
    }

    /// Recolors legs through `f`.
    pub fn recolored(&self, f: impl Fn(ColorId) -> ColorId) -> DiagramGraph {
        DiagramGraph {
            ends: self.ends.iter().map(|s| s.map(|e| match e {
                End::Leg(c) => End::Leg(f(c)),
                e => e,
            })).collect(),
        }
    }

    pub fn has_self_loop(&self) -> bool {
        self.ends.iter().enumerate().any(|(v, slots)| {
            slots
                .iter()
                .any(|e| matches!(e, End::Slot { vertex, .. } if *vertex as usize == v))
        })
    }

    /// Splits into connected components.
    pub fn components(&self) -> Vec<DiagramGraph> {
        let n = self.ends.len();
        let mut comp = vec![usize::MAX; n];
        let mut count = 0;
        for root in 0..n {
            if comp[root] != usize::MAX {
                continue;
            }
            let mut stack = vec![root];
            comp[root] = count;
            while let Some(v) = stack.pop() {
                for e in &self.ends[v] {
                    if let End::Slot { vertex, .. } = e {
                        let w = *vertex as usize;
                        if comp[w] == usize::MAX {
                            comp[w] = count;
                            stack.push(w);
                        }
                    }
                }
            }
            count += 1;
        }
        if count <= 1 {
            return if n == 0 { vec![] } else { vec![self.clone()] };
        }
        let mut index = vec![0usize; n];
        let mut sizes = vec![0usize; count];
        for v in 0..n {
            index[v] = sizes[comp[v]];
            sizes[comp[v]] += 1;
        }
        let mut parts: Vec<Vec<[End; 3]>> = sizes.iter().map(|&s| Vec::with_capacity(s)).collect();
        for v in 0..n {
            parts[comp[v]].push(self.ends[v].map(|e| match e {
                End::Slot { vertex, slot } => End::Slot {
                    vertex: index[vertex as usize] as u16,
                    slot,
                },
                leg => leg,
            }));
        }
        parts.into_iter().map(|ends| DiagramGraph { ends }).collect()
    }

    pub fn is_connected(&self) -> bool {
        self.components().len() <= 1
    }

    /// Signed canonical form of a connected graph; `None` when the graph
    /// vanishes by AS (self-loop, or an orientation-reversing automorphism).
    pub fn canonical(&self) -> Option<(CanonKey, i8)> {
        canonicalize(self)
    }
}

impl fmt::Display for DiagramGraph {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (v, slots) in self.ends.iter().enumerate() {
            if v > 0 {
                write!(f, " ")?;
            }
            write!(f, "{v}(")?;
            for (s, e) in slots.iter().enumerate() {
                if s > 0 {
                    write!(f, ",")?;
                }
                match e {
                    End::Slot { vertex, slot } => write!(f, "{vertex}.{slot}")?,
                    End::Leg(c) => write!(f, "L{}", c.0)?,
                }
            }
            write!(f, ")")?;
        }
        Ok(())
    }
}

/// Canonical encoding of a connected oriented graph. It is itself a valid
/// slot list: vertex `i` occupies entries `3i..3i+3` in its canonical
/// cyclic order.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct CanonKey(pub(crate) Box<[End]>);

impl CanonKey {
    pub fn graph(&self) -> DiagramGraph {
        DiagramGraph {
            ends: self
                .0
                .chunks(3)
                .map(|c| [c[0], c[1], c[2]])
                .collect(),
        }
    }

    pub fn degree(&self) -> usize {
        self.0.len() / 3
    }
}

// Orderings of a vertex's three slots: rotations are even, reflections odd.
const ORDERINGS: [([usize; 3], bool); 6] = [
    ([0, 1, 2], false),
    ([1, 2, 0], false),
    ([2, 0, 1], false),
    ([0, 2, 1], true),
    ([2, 1, 0], true),
    ([1, 0, 2], true),
];

fn canonicalize(g: &DiagramGraph) -> Option<(CanonKey, i8)> {
    if g.has_self_loop() {
        return None;
    }
    let n = g.ends.len();
    assert!(n > 0, "empty graph has no canonical form");
    debug_assert!(g.is_connected());

    let mut best: Option<Vec<End>> = None;
    let mut best_odd = false;
    let mut ambiguous = false;
    let mut out = Vec::with_capacity(3 * n);
    let mut run = Run::new(n);

    for start in 0..n {
        for &(perm, odd0) in &ORDERINGS {
            for bits in 0u32..(1 << (n - 1)) {
                out.clear();
                let Some(odd) = run.encode(g, start, perm, odd0, bits, best.as_deref(), &mut out)
                else {
                    continue;
                };
                match &best {
                    Some(b) if out.as_slice() == b.as_slice() => {
                        if odd != best_odd {
                            ambiguous = true;
                        }
                    }
                    _ => {
                        best = Some(out.clone());
                        best_odd = odd;
                        ambiguous = false;
                    }
                }
            }
        }
    }
    if ambiguous {
        return None;
    }
    let key = CanonKey(best.expect("at least one run").into_boxed_slice());
    Some((key, if best_odd { -1 } else { 1 }))
}

struct Run {
    label: Vec<usize>,
    order: Vec<[usize; 3]>,
    pos: Vec<[usize; 3]>,
    queue: Vec<usize>,
}

impl Run {
    fn new(n: usize) -> Self {
        Self {
            label: vec![usize::MAX; n],
            order: vec![[0; 3]; n],
            pos: vec![[0; 3]; n],
            queue: Vec::with_capacity(n),
        }
    }

    fn set_order(&mut self, v: usize, order: [usize; 3]) {
        self.order[v] = order;
        for (i, &s) in order.iter().enumerate() {
            self.pos[v][s] = i;
        }
    }

    /// Breadth-first relabeling from `start`. Each newly reached vertex puts
    /// the arrival slot first; bit `i` of `bits` picks the order of the other
    /// two for the `i`-th discovered vertex. Returns the orientation parity,
    /// or `None` as soon as the encoding exceeds `bound`.
    #[allow(clippy::too_many_arguments)]
    fn encode(
        &mut self,
        g: &DiagramGraph,
        start: usize,
        perm: [usize; 3],
        odd0: bool,
        bits: u32,
        bound: Option<&[End]>,
        out: &mut Vec<End>,
    ) -> Option<bool> {
        self.label.iter_mut().for_each(|l| *l = usize::MAX);
        self.queue.clear();
        self.queue.push(start);
        self.label[start] = 0;
        self.set_order(start, perm);
        let mut odd = odd0;
        let mut bit = 0;
        let mut tight = bound.is_some();
        let mut head = 0;
        while head < self.queue.len() {
            let w = self.queue[head];
            head += 1;
            for i in 0..3 {
                let s = self.order[w][i];
                let e = match g.ends[w][s] {
                    End::Leg(c) => End::Leg(c),
                    End::Slot { vertex, slot } => {
                        let (y, x) = (vertex as usize, slot as usize);
                        if self.label[y] == usize::MAX {
                            self.label[y] = self.queue.len();
                            self.queue.push(y);
                            let flip = bits >> bit & 1 == 1;
                            bit += 1;
                            let order = if flip {
                                odd = !odd;
                                [x, (x + 2) % 3, (x + 1) % 3]
                            } else {
                                [x, (x + 1) % 3, (x + 2) % 3]
                            };
                            self.set_order(y, order);
                        }
                        End::slot(self.label[y], self.pos[y][x])
                    }
                };
                if tight {
                    let b = bound.expect("tight implies bound")[out.len()];
                    match e.cmp(&b) {
                        std::cmp::Ordering::Greater => return None,
                        std::cmp::Ordering::Less => tight = false,
                        std::cmp::Ordering::Equal => {}
                    }
                }
                out.push(e);
            }
        }
        // with fewer discoveries than bits, larger masks repeat smaller ones
        if bits >> bit != 0 {
            return None;
        }
        Some(odd)
    }
}
