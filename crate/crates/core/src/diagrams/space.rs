//! Enumeration of connected diagrams, the AS/IHX quotient, and the basis
//! object every element points back to.

use std::collections::{BTreeMap, BTreeSet, HashMap};
use std::fmt::Write as _;
use std::sync::{Arc, Mutex};

use num_traits::{One, Zero};

use super::graph::{CanonKey, ColorId, DiagramGraph, End, Loc};
use super::named;
use crate::{Error, Q, Result};

/// Largest supported truncation degree.
pub const DEGREE_BOUND: usize = 6;

/// A connected basis diagram of the quotient.
#[derive(Debug, Clone)]
pub struct ConnectedClass {
    pub key: CanonKey,
    pub degree: usize,
    /// Leg count per color, indexed by [`ColorId`].
    pub legs: Vec<usize>,
}

impl ConnectedClass {
    pub fn graph(&self) -> DiagramGraph {
        self.key.graph()
    }

    pub fn leg_count(&self) -> usize {
        self.legs.iter().sum()
    }
}

pub(crate) type Terms = BTreeMap<super::Monomial, Q>;

#[derive(Default)]
pub(crate) struct Caches {
    pub pair: HashMap<(super::Monomial, super::Monomial, Vec<ColorId>), Arc<Terms>>,
    pub gauss: HashMap<(super::Monomial, Vec<ColorId>), Arc<Vec<(Vec<(ColorId, ColorId)>, Terms)>>>,
    pub recolor: HashMap<(super::Monomial, ColorId, ColorId), Arc<Terms>>,
}

/// The truncated quotient of strutless Jacobi diagrams with legs colored by
/// a fixed color set, modulo AS and IHX.
///
/// Only connected diagrams are enumerated and reduced; a general element is a
/// polynomial in the connected basis classes.
pub struct SpaceBasis {
    colors: Vec<String>,
    cap: usize,
    classes: Vec<ConnectedClass>,
    reduction: HashMap<CanonKey, Vec<(usize, Q)>>,
    graphs_seen: usize,
    relations: usize,
    pub(crate) caches: Mutex<Caches>,
}

impl std::fmt::Debug for SpaceBasis {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.debug_struct("SpaceBasis")
            .field("colors", &self.colors)
            .field("cap", &self.cap)
            .field("classes", &self.classes.len())
            .finish()
    }
}

impl SpaceBasis {
    pub fn colors(&self) -> &[String] {
        &self.colors
    }

    pub fn cap(&self) -> usize {
        self.cap
    }

    pub fn color(&self, name: &str) -> Result<ColorId> {
        self.colors
            .iter()
            .position(|c| c == name)
            .map(|i| ColorId(i as u8))
            .ok_or_else(|| Error::UnknownColor(name.to_string()))
    }

    pub fn color_name(&self, c: ColorId) -> &str {
        &self.colors[c.0 as usize]
    }

    /// Connected basis classes, in a deterministic order.
    pub fn classes(&self) -> &[ConnectedClass] {
        &self.classes
    }

    pub fn class(&self, id: usize) -> &ConnectedClass {
        &self.classes[id]
    }

    /// Number of canonical nonzero connected graphs that were enumerated.
    pub fn enumerated(&self) -> usize {
        self.graphs_seen
    }

    /// Number of independent relations found.
    pub fn relation_rank(&self) -> usize {
        self.relations
    }

    /// Connected classes without legs of the given degree.
    pub fn closed_classes(&self, degree: usize) -> Vec<usize> {
        (0..self.classes.len())
            .filter(|&i| self.classes[i].degree == degree && self.classes[i].leg_count() == 0)
            .collect()
    }

    /// Expresses a connected canonical graph in the connected basis.
    pub(crate) fn reduce_key(&self, key: &CanonKey) -> Result<&[(usize, Q)]> {
        if key.degree() > self.cap {
            return Err(Error::DegreeTooLarge {
                requested: key.degree(),
                bound: self.cap,
            });
        }
        match self.reduction.get(key) {
            Some(v) => Ok(v),
            None => Err(Error::UnknownColor(format!("graph {key:?} uses a color outside this space"))),
        }
    }

    /// Dimension of the full (disconnected) space in each degree, restricted
    /// to diagrams without legs.
    pub fn closed_dimensions(&self) -> Vec<usize> {
        let closed: Vec<usize> = (0..self.classes.len())
            .filter(|&i| self.classes[i].leg_count() == 0)
            .collect();
        let mut dims = vec![0usize; self.cap + 1];
        // partitions of the degree into closed connected classes
        fn count(classes: &[ConnectedClass], ids: &[usize], start: usize, left: usize) -> usize {
            if left == 0 {
                return 1;
            }
            let mut total = 0;
            for (j, &id) in ids.iter().enumerate().skip(start) {
                let d = classes[id].degree;
                if d <= left {
                    total += count(classes, ids, j, left - d);
                }
            }
            total
        }
        for (d, slot) in dims.iter_mut().enumerate() {
            *slot = count(&self.classes, &closed, 0, d);
        }
        dims
    }

    /// Plain-text listing of the basis, one class per line.
    pub fn dump(&self) -> String {
        let mut out = String::new();
        let _ = writeln!(out, "colors {:?} cap {}", self.colors, self.cap);
        for (i, c) in self.classes.iter().enumerate() {
            let _ = writeln!(out, "{i} deg={} legs={:?} {}", c.degree, c.legs, c.graph());
        }
        out
    }
}

/// Builds the quotient space for the given leg colors up to `max_degree`.
pub fn build_space(colors: &[&str], max_degree: usize) -> Result<Arc<SpaceBasis>> {
    if max_degree > DEGREE_BOUND {
        return Err(Error::DegreeTooLarge {
            requested: max_degree,
            bound: DEGREE_BOUND,
        });
    }
    if colors.len() > 8 {
        return Err(Error::InvalidInput("at most 8 colors are supported".into()));
    }
    let unique: BTreeSet<&&str> = colors.iter().collect();
    if unique.len() != colors.len() {
        return Err(Error::InvalidInput("duplicate color".into()));
    }
    let ncolors = colors.len();

    let mut graphs: BTreeSet<CanonKey> = BTreeSet::new();
    for t in 1..=max_degree {
        for g in enumerate_raw(t, ncolors) {
            if let Some((key, _)) = g.canonical() {
                graphs.insert(key);
            }
        }
    }

    let preferred = preferred_keys(ncolors, max_degree);

    // group by degree and leg colors; IHX preserves both
    let mut groups: BTreeMap<(usize, Vec<usize>), Vec<CanonKey>> = BTreeMap::new();
    for key in &graphs {
        groups
            .entry((key.degree(), leg_counts(key, ncolors)))
            .or_default()
            .push(key.clone());
    }

    let mut classes = Vec::new();
    let mut reduction = HashMap::new();
    let mut relations = 0;
    for ((degree, legs), mut keys) in groups {
        keys.sort_by(|a, b| {
            let ra = preferred.get(a).copied().unwrap_or(usize::MAX);
            let rb = preferred.get(b).copied().unwrap_or(usize::MAX);
            ra.cmp(&rb).then_with(|| a.cmp(b))
        });
        let column: HashMap<&CanonKey, usize> = keys.iter().enumerate().map(|(i, k)| (k, i)).collect();
        let mut echelon = Echelon::default();
        for key in &keys {
            for rel in ihx_relations(&key.graph()) {
                let mut row: BTreeMap<usize, Q> = BTreeMap::new();
                for (k, s) in rel {
                    let c = column[&k];
                    let e = row.entry(c).or_insert_with(Q::zero);
                    *e += Q::from_integer(s.into());
                    if e.is_zero() {
                        row.remove(&c);
                    }
                }
                echelon.insert(row);
            }
        }
        relations += echelon.rows.len();
        let mut free_index = HashMap::new();
        for (c, key) in keys.iter().enumerate() {
            if !echelon.pivots.contains_key(&c) {
                free_index.insert(c, classes.len());
                classes.push(ConnectedClass {
                    key: key.clone(),
                    degree,
                    legs: legs.clone(),
                });
            }
        }
        for (c, key) in keys.iter().enumerate() {
            let combo = match echelon.pivots.get(&c) {
                None => vec![(free_index[&c], Q::one())],
                Some(&r) => echelon.rows[r]
                    .iter()
                    .filter(|(&col, _)| col != c)
                    .map(|(col, v)| (free_index[col], -v.clone()))
                    .collect(),
            };
            reduction.insert(key.clone(), combo);
        }
    }

    Ok(Arc::new(SpaceBasis {
        colors: colors.iter().map(|s| s.to_string()).collect(),
        cap: max_degree,
        graphs_seen: graphs.len(),
        classes,
        reduction,
        relations,
        caches: Mutex::new(Caches::default()),
    }))
}

fn leg_counts(key: &CanonKey, ncolors: usize) -> Vec<usize> {
    let mut legs = vec![0; ncolors];
    for e in key.0.iter() {
        if let End::Leg(c) = e {
            legs[c.0 as usize] += 1;
        }
    }
    legs
}

fn preferred_keys(ncolors: usize, cap: usize) -> HashMap<CanonKey, usize> {
    let mut out = HashMap::new();
    let mut push = |g: DiagramGraph| {
        if g.degree() <= cap {
            if let Some((k, _)) = g.canonical() {
                let n = out.len();
                out.entry(k).or_insert(n);
            }
        }
    };
    push(named::theta_graph());
    push(named::theta_two_graph());
    for c in 0..ncolors {
        let c = ColorId(c as u8);
        for n in (2..=cap).step_by(2) {
            push(named::wheel_graph(c, n));
        }
        push(named::barbell_graph(c));
    }
    out
}

/// Row echelon form over Q, kept fully reduced.
#[derive(Default)]
struct Echelon {
    rows: Vec<BTreeMap<usize, Q>>,
    pivots: HashMap<usize, usize>,
}

impl Echelon {
    fn insert(&mut self, mut row: BTreeMap<usize, Q>) {
        let hits: Vec<(usize, Q)> = row
            .iter()
            .filter(|(c, _)| self.pivots.contains_key(c))
            .map(|(c, v)| (*c, v.clone()))
            .collect();
        for (c, f) in hits {
            let pr = &self.rows[self.pivots[&c]];
            for (col, v) in pr {
                let e = row.entry(*col).or_insert_with(Q::zero);
                *e -= &f * v;
                if e.is_zero() {
                    row.remove(col);
                }
            }
        }
        // the pivot is the least preferred column, so preferred ones stay free
        let Some((&p, lead)) = row.iter().next_back() else {
            return;
        };
        let lead = lead.clone();
        for v in row.values_mut() {
            *v /= &lead;
        }
        for other in &mut self.rows {
            if let Some(f) = other.get(&p).cloned() {
                for (col, v) in &row {
                    let e = other.entry(*col).or_insert_with(Q::zero);
                    *e -= &f * v;
                    if e.is_zero() {
                        other.remove(col);
                    }
                }
            }
        }
        self.pivots.insert(p, self.rows.len());
        self.rows.push(row);
    }
}

/// All loopless connected graphs on `t` trivalent vertices, with legs filling
/// the free slots and colored by every multiset per vertex. Vertices are
/// sorted by internal degree, which every isomorphism class admits.
fn enumerate_raw(t: usize, ncolors: usize) -> Vec<DiagramGraph> {
    let pairs: Vec<(usize, usize)> = (0..t)
        .flat_map(|i| (i + 1..t).map(move |j| (i, j)))
        .collect();
    let mut mult = vec![0usize; pairs.len()];
    let mut deg = vec![0usize; t];
    let mut out = Vec::new();
    multigraphs(&pairs, 0, &mut mult, &mut deg, &mut |mult, deg| {
        if deg.windows(2).any(|w| w[0] < w[1]) || !connected(t, &pairs, mult) {
            return;
        }
        if ncolors == 0 && deg.iter().any(|&d| d < 3) {
            return;
        }
        let mut g = DiagramGraph::from_ends(vec![[End::Leg(ColorId(0)); 3]; t]);
        let mut next = vec![0usize; t];
        for (e, &(i, j)) in pairs.iter().enumerate() {
            for _ in 0..mult[e] {
                g.join((i, next[i]), (j, next[j]));
                next[i] += 1;
                next[j] += 1;
            }
        }
        let choices: Vec<Vec<Vec<u8>>> = deg
            .iter()
            .map(|&d| multisets(3 - d, ncolors))
            .collect();
        let mut pick = vec![0usize; t];
        loop {
            let mut h = g.clone();
            for v in 0..t {
                for (i, &c) in choices[v][pick[v]].iter().enumerate() {
                    h.set_leg((v, deg[v] + i), ColorId(c));
                }
            }
            out.push(h);
            let mut v = 0;
            while v < t {
                pick[v] += 1;
                if pick[v] < choices[v].len() {
                    break;
                }
                pick[v] = 0;
                v += 1;
            }
            if v == t {
                break;
            }
        }
    });
    out
}

fn multigraphs(
    pairs: &[(usize, usize)],
    e: usize,
    mult: &mut Vec<usize>,
    deg: &mut Vec<usize>,
    visit: &mut impl FnMut(&[usize], &[usize]),
) {
    if e == pairs.len() {
        visit(mult, deg);
        return;
    }
    let (i, j) = pairs[e];
    // vertex i sees no further pairs after this one when j is last
    for m in 0..=3 {
        if deg[i] + m > 3 || deg[j] + m > 3 {
            break;
        }
        if j == deg.len() - 1 && i > 0 && deg[i] + m > deg[i - 1] {
            break;
        }
        mult[e] = m;
        deg[i] += m;
        deg[j] += m;
        multigraphs(pairs, e + 1, mult, deg, visit);
        deg[i] -= m;
        deg[j] -= m;
    }
    mult[e] = 0;
}

fn connected(t: usize, pairs: &[(usize, usize)], mult: &[usize]) -> bool {
    let mut seen = vec![false; t];
    let mut stack = vec![0];
    seen[0] = true;
    while let Some(v) = stack.pop() {
        for (e, &(i, j)) in pairs.iter().enumerate() {
            if mult[e] == 0 {
                continue;
            }
            let w = if i == v {
                j
            } else if j == v {
                i
            } else {
                continue;
            };
            if !seen[w] {
                seen[w] = true;
                stack.push(w);
            }
        }
    }
    seen.into_iter().all(|s| s)
}

fn multisets(size: usize, ncolors: usize) -> Vec<Vec<u8>> {
    fn go(size: usize, from: usize, n: usize, cur: &mut Vec<u8>, out: &mut Vec<Vec<u8>>) {
        if cur.len() == size {
            out.push(cur.clone());
            return;
        }
        for c in from..n {
            cur.push(c as u8);
            go(size, c, n, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    go(size, 0, ncolors, &mut Vec::new(), &mut out);
    out
}

/// The Jacobi relations of a connected graph, one per internal edge, as
/// signed canonical terms (vanishing terms dropped).
pub(crate) fn ihx_relations(g: &DiagramGraph) -> Vec<Vec<(CanonKey, i32)>> {
    let mut out = Vec::new();
    for u in 0..g.vertex_count() {
        for su in 0..3 {
            let End::Slot { vertex, slot } = g.end((u, su)) else {
                continue;
            };
            let (v, sv) = (vertex as usize, slot as usize);
            if (u, su) > (v, sv) || u == v {
                continue;
            }
            let rel: Vec<(CanonKey, i32)> = jacobi_terms(g, (u, su), (v, sv))
                .into_iter()
                .filter_map(|h| h.canonical().map(|(k, s)| (k, s as i32)))
                .collect();
            if !rel.is_empty() {
                out.push(rel);
            }
        }
    }
    out
}

impl DiagramGraph {
    /// The three terms of the IHX relation at the edge leaving slot `at`,
    /// or `None` when `at` carries a leg or a self-loop.
    pub fn ihx_terms(&self, at: Loc) -> Option<[DiagramGraph; 3]> {
        let End::Slot { vertex, slot } = self.end(at) else {
            return None;
        };
        let other = (vertex as usize, slot as usize);
        if other.0 == at.0 {
            return None;
        }
        Some(jacobi_terms(self, at, other))
    }
}

/// The three graphs obtained from the edge `e = (u,su)-(v,sv)` by the
/// Jacobi identity: with `u = (e,a,b)` and `v = (e,c,d)` in cyclic order,
/// `(e,a,b|e,c,d) + (e,b,c|e,a,d) + (e,c,a|e,b,d) = 0`.
pub(crate) fn jacobi_terms(g: &DiagramGraph, (u, su): (usize, usize), (v, sv): (usize, usize)) -> [DiagramGraph; 3] {
    let ports = [
        (u, (su + 1) % 3),
        (u, (su + 2) % 3),
        (v, (sv + 1) % 3),
        (v, (sv + 2) % 3),
    ];
    const A: usize = 0;
    const B: usize = 1;
    const C: usize = 2;
    const D: usize = 3;
    let configs = [[A, B, C, D], [B, C, A, D], [C, A, B, D]];
    configs.map(|cfg| {
        // new location of each port
        let mut place = [(0usize, 0usize); 4];
        place[cfg[0]] = (u, 1);
        place[cfg[1]] = (u, 2);
        place[cfg[2]] = (v, 1);
        place[cfg[3]] = (v, 2);
        let map = |e: End| -> End {
            match e {
                End::Slot { vertex, slot } => {
                    let loc = (vertex as usize, slot as usize);
                    match ports.iter().position(|&p| p == loc) {
                        Some(k) => End::slot(place[k].0, place[k].1),
                        None if loc == (u, su) => End::slot(u, 0),
                        None if loc == (v, sv) => End::slot(v, 0),
                        None => e,
                    }
                }
                leg => leg,
            }
        };
        let mut ends: Vec<[End; 3]> = g.ends().iter().map(|s| s.map(map)).collect();
        ends[u][0] = End::slot(v, 0);
        ends[v][0] = End::slot(u, 0);
        for k in 0..4 {
            let (w, s) = place[k];
            ends[w][s] = map(g.end(ports[k]));
        }
        DiagramGraph::from_ends(ends)
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn enumeration_small_counts() {
        // one vertex, three legs of one color: vanishes by AS
        let b = build_space(&["k"], 1).unwrap();
        assert!(b.classes().is_empty());
        let b = build_space(&["a", "b", "c"], 1).unwrap();
        // tripods with three distinct colors survive, others vanish
        assert_eq!(b.classes().len(), 1);
    }

    #[test]
    fn closed_dimensions_through_four() {
        let b = build_space(&[], 4).unwrap();
        assert_eq!(b.closed_dimensions(), vec![1, 0, 1, 0, 2]);
    }

    #[test]
    fn jacobi_terms_are_consistent() {
        let g = named::barbell_graph(ColorId(0));
        for u in 0..g.vertex_count() {
            for s in 0..3 {
                if let End::Slot { vertex, slot } = g.end((u, s)) {
                    for h in jacobi_terms(&g, (u, s), (vertex as usize, slot as usize)) {
                        assert!(h.is_consistent(), "{h}");
                    }
                }
            }
        }
    }

    #[test]
    fn rejects_large_degree() {
        assert!(matches!(
            build_space(&["k"], 7),
            Err(Error::DegreeTooLarge { .. })
        ));
    }
}
