use std::collections::BTreeMap;
use std::fmt;
use std::sync::Arc;

use num_bigint::BigInt;
use num_traits::{One, Zero};

use super::graph::{ColorId, DiagramGraph, Loc};
use super::space::{SpaceBasis, Terms};
use crate::rational::fmt_q;
use crate::{Error, Q, Result};

/// A product of connected basis classes, stored as sorted class ids.
/// The empty monomial is the empty diagram.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Default)]
pub struct Monomial(pub(crate) Vec<u32>);

impl Monomial {
    pub fn empty() -> Self {
        Monomial(Vec::new())
    }

    pub fn classes(&self) -> &[u32] {
        &self.0
    }

    fn times(&self, other: &Monomial) -> Monomial {
        let mut v = self.0.clone();
        v.extend_from_slice(&other.0);
        v.sort_unstable();
        Monomial(v)
    }
}

/// Symmetric strut coefficients `(x, y) -> c`; the associated Gaussian is
/// `exp(sum over unordered pairs {x, y} of c * strut(x, y))`.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct QuadraticForm {
    entries: BTreeMap<(ColorId, ColorId), Q>,
}

impl QuadraticForm {
    pub fn new() -> Self {
        Self::default()
    }

    /// The form `c * (x, x)`.
    pub fn diagonal(x: ColorId, c: Q) -> Self {
        let mut f = Self::new();
        f.set(x, x, c);
        f
    }

    pub fn set(&mut self, x: ColorId, y: ColorId, c: Q) {
        let k = if x <= y { (x, y) } else { (y, x) };
        if c.is_zero() {
            self.entries.remove(&k);
        } else {
            self.entries.insert(k, c);
        }
    }

    pub fn get(&self, x: ColorId, y: ColorId) -> Q {
        let k = if x <= y { (x, y) } else { (y, x) };
        self.entries.get(&k).cloned().unwrap_or_else(Q::zero)
    }

    pub fn is_zero(&self) -> bool {
        self.entries.is_empty()
    }

    pub fn add(&self, other: &QuadraticForm) -> QuadraticForm {
        let mut out = self.clone();
        for (&(x, y), c) in &other.entries {
            out.set(x, y, out.get(x, y) + c);
        }
        out
    }

    pub fn scale(&self, f: &Q) -> QuadraticForm {
        let mut out = QuadraticForm::new();
        for (&(x, y), c) in &self.entries {
            out.set(x, y, c * f);
        }
        out
    }

    /// Colors touched by the form, sorted.
    pub fn colors(&self) -> Vec<ColorId> {
        let mut v: Vec<ColorId> = self.entries.keys().flat_map(|&(x, y)| [x, y]).collect();
        v.sort();
        v.dedup();
        v
    }

    /// Weight of one matched pair of legs: the two ends of an `(x, x)` strut
    /// can be attached in two ways.
    fn weight(&self, x: ColorId, y: ColorId) -> Q {
        let c = self.get(x, y);
        if x == y {
            c * Q::from_integer(BigInt::from(2))
        } else {
            c
        }
    }
}

/// A finite linear combination of monomials over a fixed [`SpaceBasis`].
#[derive(Clone)]
pub struct DiagramElement {
    basis: Arc<SpaceBasis>,
    terms: Terms,
}

impl PartialEq for DiagramElement {
    fn eq(&self, other: &Self) -> bool {
        Arc::ptr_eq(&self.basis, &other.basis) && self.terms == other.terms
    }
}

impl fmt::Debug for DiagramElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

impl fmt::Display for DiagramElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        for (i, (m, c)) in self.terms.iter().enumerate() {
            if i > 0 {
                write!(f, " + ")?;
            }
            write!(f, "({})", fmt_q(c))?;
            if m.0.is_empty() {
                write!(f, "*1")?;
            }
            for id in &m.0 {
                write!(f, "*D{id}")?;
            }
        }
        Ok(())
    }
}

fn add_into(terms: &mut Terms, m: Monomial, c: Q) {
    if c.is_zero() {
        return;
    }
    use std::collections::btree_map::Entry;
    match terms.entry(m) {
        Entry::Vacant(e) => {
            e.insert(c);
        }
        Entry::Occupied(mut e) => {
            *e.get_mut() += c;
            if e.get().is_zero() {
                e.remove();
            }
        }
    }
}

impl DiagramElement {
    pub fn zero(basis: &Arc<SpaceBasis>) -> Self {
        Self {
            basis: basis.clone(),
            terms: Terms::new(),
        }
    }

    /// The empty diagram, unit of the product.
    pub fn one(basis: &Arc<SpaceBasis>) -> Self {
        Self::monomial(basis, Monomial::empty(), Q::one())
    }

    pub fn monomial(basis: &Arc<SpaceBasis>, m: Monomial, c: Q) -> Self {
        let mut e = Self::zero(basis);
        if basis.monomial_degree(&m) <= basis.cap() {
            add_into(&mut e.terms, m, c);
        }
        e
    }

    /// The class of a graph in the quotient.
    pub fn from_graph(basis: &Arc<SpaceBasis>, g: &DiagramGraph) -> Result<Self> {
        if g.degree() > basis.cap() {
            return Err(Error::DegreeTooLarge {
                requested: g.degree(),
                bound: basis.cap(),
            });
        }
        for (_, c) in g.legs() {
            if c.0 as usize >= basis.colors().len() {
                return Err(Error::UnknownColor(format!("#{}", c.0)));
            }
        }
        Ok(Self {
            basis: basis.clone(),
            terms: basis.evaluate(g)?,
        })
    }

    pub(crate) fn from_terms(basis: &Arc<SpaceBasis>, terms: Terms) -> Self {
        Self {
            basis: basis.clone(),
            terms,
        }
    }

    pub fn basis(&self) -> &Arc<SpaceBasis> {
        &self.basis
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Monomial, &Q)> {
        self.terms.iter()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn coefficient(&self, m: &Monomial) -> Q {
        self.terms.get(m).cloned().unwrap_or_else(Q::zero)
    }

    pub fn constant_term(&self) -> Q {
        self.coefficient(&Monomial::empty())
    }

    /// Coefficient of `target` in `self`, where `target` is a nonzero
    /// multiple of a single monomial.
    pub fn coefficient_of(&self, target: &DiagramElement) -> Result<Q> {
        self.same_basis(target)?;
        let mut it = target.terms.iter();
        match (it.next(), it.next()) {
            (Some((m, c)), None) => Ok(self.coefficient(m) / c),
            _ => Err(Error::InvalidInput(
                "coefficient extraction needs a single-monomial target".into(),
            )),
        }
    }

    /// True when no monomial carries legs.
    pub fn is_closed(&self) -> bool {
        self.terms.keys().all(|m| self.basis.monomial_legs(m) == 0)
    }

    /// Part of degree exactly `d`.
    pub fn homogeneous(&self, d: usize) -> DiagramElement {
        let terms = self
            .terms
            .iter()
            .filter(|(m, _)| self.basis.monomial_degree(m) == d)
            .map(|(m, c)| (m.clone(), c.clone()))
            .collect();
        Self::from_terms(&self.basis, terms)
    }

    /// Drops everything of degree above `d`.
    pub fn truncate(&self, d: usize) -> DiagramElement {
        let terms = self
            .terms
            .iter()
            .filter(|(m, _)| self.basis.monomial_degree(m) <= d)
            .map(|(m, c)| (m.clone(), c.clone()))
            .collect();
        Self::from_terms(&self.basis, terms)
    }

    fn same_basis(&self, other: &DiagramElement) -> Result<()> {
        if Arc::ptr_eq(&self.basis, &other.basis) {
            Ok(())
        } else {
            Err(Error::BasisMismatch)
        }
    }

    pub fn add(&self, other: &DiagramElement) -> Result<DiagramElement> {
        self.same_basis(other)?;
        let mut terms = self.terms.clone();
        for (m, c) in &other.terms {
            add_into(&mut terms, m.clone(), c.clone());
        }
        Ok(Self::from_terms(&self.basis, terms))
    }

    pub fn sub(&self, other: &DiagramElement) -> Result<DiagramElement> {
        self.add(&other.neg())
    }

    pub fn neg(&self) -> DiagramElement {
        self.scale(&-Q::one())
    }

    pub fn scale(&self, f: &Q) -> DiagramElement {
        if f.is_zero() {
            return Self::zero(&self.basis);
        }
        let terms = self.terms.iter().map(|(m, c)| (m.clone(), c * f)).collect();
        Self::from_terms(&self.basis, terms)
    }

    /// Disjoint-union product, truncated at the cap.
    pub fn product(&self, other: &DiagramElement) -> Result<DiagramElement> {
        self.same_basis(other)?;
        let b = &self.basis;
        let mut terms = Terms::new();
        for (m1, c1) in &self.terms {
            let d1 = b.monomial_degree(m1);
            for (m2, c2) in &other.terms {
                if d1 + b.monomial_degree(m2) > b.cap() {
                    continue;
                }
                add_into(&mut terms, m1.times(m2), c1 * c2);
            }
        }
        Ok(Self::from_terms(b, terms))
    }

    /// Truncated exponential; the constant term must vanish.
    pub fn exp(&self) -> Result<DiagramElement> {
        if !self.constant_term().is_zero() {
            return Err(Error::ConstantTerm);
        }
        let mut result = Self::one(&self.basis);
        let mut power = Self::one(&self.basis);
        let mut n = 1i64;
        loop {
            power = power.product(self)?.scale(&Q::new(BigInt::one(), BigInt::from(n)));
            if power.is_zero() {
                break;
            }
            result = result.add(&power)?;
            n += 1;
        }
        Ok(result)
    }

    /// Multiplicative inverse by a terminating geometric series; needs a
    /// nonzero constant term.
    pub fn inverse(&self) -> Result<DiagramElement> {
        let c = self.constant_term();
        if c.is_zero() {
            return Err(Error::InvalidInput("element has no constant term".into()));
        }
        let inv_c = c.recip();
        // self = c (1 + x)
        let x = self.scale(&inv_c).sub(&Self::one(&self.basis))?;
        let minus_x = x.neg();
        let mut result = Self::one(&self.basis);
        let mut power = Self::one(&self.basis);
        loop {
            power = power.product(&minus_x)?;
            if power.is_zero() {
                break;
            }
            result = result.add(&power)?;
        }
        Ok(result.scale(&inv_c))
    }

    /// Glues all legs of the `shared` colors of `self` to those of `other`,
    /// summed over every color-preserving bijection. Monomials whose leg
    /// counts differ in some shared color contribute nothing.
    pub fn pair(&self, other: &DiagramElement, shared: &[ColorId]) -> Result<DiagramElement> {
        self.same_basis(other)?;
        let b = &self.basis;
        let mut shared = shared.to_vec();
        shared.sort();
        shared.dedup();
        let mut terms = Terms::new();
        for (m1, c1) in &self.terms {
            for (m2, c2) in &other.terms {
                let glued = b.pair_monomials(m1, m2, &shared)?;
                let f = c1 * c2;
                for (m, c) in glued.iter() {
                    add_into(&mut terms, m.clone(), c * &f);
                }
            }
        }
        Ok(Self::from_terms(b, terms))
    }

    /// `∂_{exp(q)}`: glues struts of `q` to some of the legs, summed over all
    /// partial matchings of the legs whose colors `q` touches.
    pub fn apply_gaussian(&self, q: &QuadraticForm) -> Result<DiagramElement> {
        if q.is_zero() {
            return Ok(self.clone());
        }
        let b = &self.basis;
        let colors = q.colors();
        for c in &colors {
            if c.0 as usize >= b.colors().len() {
                return Err(Error::UnknownColor(format!("#{}", c.0)));
            }
        }
        let mut terms = Terms::new();
        for (m, c) in &self.terms {
            for (pairs, glued) in b.gaussian_monomial(m, &colors)?.iter() {
                let mut w = c.clone();
                for &(x, y) in pairs {
                    w *= q.weight(x, y);
                }
                if w.is_zero() {
                    continue;
                }
                for (gm, gc) in glued {
                    add_into(&mut terms, gm.clone(), gc * &w);
                }
            }
        }
        Ok(Self::from_terms(b, terms))
    }

    /// Recolors `from` legs as `to` and multiplies every monomial by
    /// `factor^m`, where `m` is its number of `from` legs.
    pub fn relabel_scale(&self, from: ColorId, to: ColorId, factor: &Q) -> Result<DiagramElement> {
        let b = &self.basis;
        for c in [from, to] {
            if c.0 as usize >= b.colors().len() {
                return Err(Error::UnknownColor(format!("#{}", c.0)));
            }
        }
        let mut terms = Terms::new();
        for (m, c) in &self.terms {
            let n = b.monomial_color_legs(m, from);
            let f = c * pow(factor, n);
            if f.is_zero() {
                continue;
            }
            if from == to || n == 0 {
                add_into(&mut terms, m.clone(), f);
            } else {
                for (rm, rc) in b.recolor_monomial(m, from, to)?.iter() {
                    add_into(&mut terms, rm.clone(), rc * &f);
                }
            }
        }
        Ok(Self::from_terms(b, terms))
    }

    /// Re-expresses the element in another space that contains all of its
    /// diagrams, matching colors by name.
    pub fn transfer(&self, target: &Arc<SpaceBasis>) -> Result<DiagramElement> {
        let src = &self.basis;
        let map: Vec<ColorId> = src
            .colors()
            .iter()
            .map(|name| target.color(name))
            .collect::<Result<_>>()
            .or_else(|e| {
                if self.is_closed() {
                    Ok(vec![ColorId(0); src.colors().len()])
                } else {
                    Err(e)
                }
            })?;
        let mut out = DiagramElement::zero(target);
        for (m, c) in &self.terms {
            if src.monomial_degree(m) > target.cap() {
                continue;
            }
            let g = src.monomial_graph(m).recolored(|c| map[c.0 as usize]);
            let e = DiagramElement::from_graph(target, &g)?.scale(c);
            out = out.add(&e)?;
        }
        Ok(out)
    }
}

fn pow(x: &Q, n: usize) -> Q {
    let mut r = Q::one();
    for _ in 0..n {
        r *= x;
    }
    r
}

impl SpaceBasis {
    pub fn monomial_degree(&self, m: &Monomial) -> usize {
        m.0.iter().map(|&i| self.class(i as usize).degree).sum()
    }

    pub fn monomial_legs(&self, m: &Monomial) -> usize {
        m.0.iter().map(|&i| self.class(i as usize).leg_count()).sum()
    }

    fn monomial_color_legs(&self, m: &Monomial, c: ColorId) -> usize {
        m.0.iter()
            .map(|&i| self.class(i as usize).legs[c.0 as usize])
            .sum()
    }

    /// A representative graph: the disjoint union of the class graphs.
    pub fn monomial_graph(&self, m: &Monomial) -> DiagramGraph {
        m.0.iter().fold(DiagramGraph::new(), |g, &i| {
            g.disjoint_union(&self.class(i as usize).graph())
        })
    }

    /// Reduces an arbitrary graph to monomial terms; degree must fit.
    pub(crate) fn evaluate(&self, g: &DiagramGraph) -> Result<Terms> {
        let mut terms = Terms::new();
        terms.insert(Monomial::empty(), Q::one());
        for comp in g.components() {
            let Some((key, sign)) = comp.canonical() else {
                return Ok(Terms::new());
            };
            let combo = self.reduce_key(&key)?;
            let mut next = Terms::new();
            for (m, c) in &terms {
                for (id, v) in combo {
                    let mut ids = m.0.clone();
                    ids.push(*id as u32);
                    ids.sort_unstable();
                    let mut coeff = c * v;
                    if sign < 0 {
                        coeff = -coeff;
                    }
                    add_into(&mut next, Monomial(ids), coeff);
                }
            }
            terms = next;
            if terms.is_empty() {
                break;
            }
        }
        Ok(terms)
    }

    fn pair_monomials(&self, m1: &Monomial, m2: &Monomial, shared: &[ColorId]) -> Result<Arc<Terms>> {
        for &c in shared {
            if self.monomial_color_legs(m1, c) != self.monomial_color_legs(m2, c) {
                return Ok(Arc::new(Terms::new()));
            }
        }
        if self.monomial_degree(m1) + self.monomial_degree(m2) > self.cap() {
            return Ok(Arc::new(Terms::new()));
        }
        let key = (m1.clone(), m2.clone(), shared.to_vec());
        if let Some(t) = self.caches.lock().expect("cache lock").pair.get(&key) {
            return Ok(t.clone());
        }
        let g1 = self.monomial_graph(m1);
        let g2 = self.monomial_graph(m2);
        let union = g1.disjoint_union(&g2);
        let off = g1.vertex_count();
        let legs1 = g1.legs();
        let legs2: Vec<(Loc, ColorId)> = g2
            .legs()
            .into_iter()
            .map(|((v, s), c)| ((v + off, s), c))
            .collect();
        let by_color = |legs: &[(Loc, ColorId)], c: ColorId| -> Vec<Loc> {
            legs.iter().filter(|(_, x)| *x == c).map(|(l, _)| *l).collect()
        };
        let groups: Vec<(Vec<Loc>, Vec<Loc>)> = shared
            .iter()
            .map(|&c| (by_color(&legs1, c), by_color(&legs2, c)))
            .collect();
        let mut terms = Terms::new();
        let mut err = None;
        for_each_bijection(&groups, &mut |pairs| {
            if err.is_some() {
                return;
            }
            let mut g = union.clone();
            for &(a, b) in pairs {
                g.glue_legs(a, b);
            }
            match self.evaluate(&g) {
                Ok(t) => {
                    for (m, c) in t {
                        add_into(&mut terms, m, c);
                    }
                }
                Err(e) => err = Some(e),
            }
        });
        if let Some(e) = err {
            return Err(e);
        }
        let terms = Arc::new(terms);
        self.caches
            .lock()
            .expect("cache lock")
            .pair
            .insert(key, terms.clone());
        Ok(terms)
    }

    #[allow(clippy::type_complexity)]
    fn gaussian_monomial(
        &self,
        m: &Monomial,
        colors: &[ColorId],
    ) -> Result<Arc<Vec<(Vec<(ColorId, ColorId)>, Terms)>>> {
        let key = (m.clone(), colors.to_vec());
        if let Some(t) = self.caches.lock().expect("cache lock").gauss.get(&key) {
            return Ok(t.clone());
        }
        let g = self.monomial_graph(m);
        let legs: Vec<(Loc, ColorId)> = g
            .legs()
            .into_iter()
            .filter(|(_, c)| colors.contains(c))
            .collect();
        let mut grouped: BTreeMap<Vec<(ColorId, ColorId)>, Terms> = BTreeMap::new();
        let mut err = None;
        for_each_partial_matching(legs.len(), &mut |matching| {
            if err.is_some() {
                return;
            }
            let mut sig: Vec<(ColorId, ColorId)> = matching
                .iter()
                .map(|&(i, j)| {
                    let (x, y) = (legs[i].1, legs[j].1);
                    if x <= y {
                        (x, y)
                    } else {
                        (y, x)
                    }
                })
                .collect();
            sig.sort();
            let mut h = g.clone();
            for &(i, j) in matching {
                h.glue_legs(legs[i].0, legs[j].0);
            }
            match self.evaluate(&h) {
                Ok(t) => {
                    let entry = grouped.entry(sig).or_default();
                    for (m, c) in t {
                        add_into(entry, m, c);
                    }
                }
                Err(e) => err = Some(e),
            }
        });
        if let Some(e) = err {
            return Err(e);
        }
        let out = Arc::new(grouped.into_iter().collect::<Vec<_>>());
        self.caches
            .lock()
            .expect("cache lock")
            .gauss
            .insert(key, out.clone());
        Ok(out)
    }

    fn recolor_monomial(&self, m: &Monomial, from: ColorId, to: ColorId) -> Result<Arc<Terms>> {
        let key = (m.clone(), from, to);
        if let Some(t) = self.caches.lock().expect("cache lock").recolor.get(&key) {
            return Ok(t.clone());
        }
        let g = self
            .monomial_graph(m)
            .recolored(|c| if c == from { to } else { c });
        let t = Arc::new(self.evaluate(&g)?);
        self.caches
            .lock()
            .expect("cache lock")
            .recolor
            .insert(key, t.clone());
        Ok(t)
    }
}

/// Calls `f` once per tuple of bijections `left[i] -> right[i]`.
fn for_each_bijection(groups: &[(Vec<Loc>, Vec<Loc>)], f: &mut impl FnMut(&[(Loc, Loc)])) {
    fn go(
        groups: &[(Vec<Loc>, Vec<Loc>)],
        gi: usize,
        pos: usize,
        used: &mut Vec<bool>,
        acc: &mut Vec<(Loc, Loc)>,
        f: &mut impl FnMut(&[(Loc, Loc)]),
    ) {
        if gi == groups.len() {
            f(acc);
            return;
        }
        let (left, right) = &groups[gi];
        if pos == left.len() {
            let mut fresh = vec![false; groups.get(gi + 1).map_or(0, |g| g.1.len())];
            go(groups, gi + 1, 0, &mut fresh, acc, f);
            return;
        }
        for j in 0..right.len() {
            if used[j] {
                continue;
            }
            used[j] = true;
            acc.push((left[pos], right[j]));
            go(groups, gi, pos + 1, used, acc, f);
            acc.pop();
            used[j] = false;
        }
    }
    let mut used = vec![false; groups.first().map_or(0, |g| g.1.len())];
    go(groups, 0, 0, &mut used, &mut Vec::new(), f);
}

/// Calls `f` once per partial matching of `0..n` (including the empty one).
fn for_each_partial_matching(n: usize, f: &mut impl FnMut(&[(usize, usize)])) {
    fn go(n: usize, i: usize, used: &mut Vec<bool>, acc: &mut Vec<(usize, usize)>, f: &mut impl FnMut(&[(usize, usize)])) {
        if i == n {
            f(acc);
            return;
        }
        if used[i] {
            go(n, i + 1, used, acc, f);
            return;
        }
        // leave i unmatched
        go(n, i + 1, used, acc, f);
        used[i] = true;
        for j in i + 1..n {
            if !used[j] {
                used[j] = true;
                acc.push((i, j));
                go(n, i + 1, used, acc, f);
                acc.pop();
                used[j] = false;
            }
        }
        used[i] = false;
    }
    go(n, 0, &mut vec![false; n], &mut Vec::new(), f);
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn partial_matchings_are_counted() {
        // telephone numbers 1, 1, 2, 4, 10, 26
        for (n, expect) in [(0, 1), (1, 1), (2, 2), (3, 4), (4, 10), (5, 26)] {
            let mut count = 0;
            for_each_partial_matching(n, &mut |_| count += 1);
            assert_eq!(count, expect);
        }
    }

    #[test]
    fn bijections_are_counted() {
        let l = |n: usize| (0..n).map(|i| (i, 0)).collect::<Vec<Loc>>();
        let mut count = 0;
        for_each_bijection(&[(l(3), l(3)), (l(2), l(2))], &mut |_| count += 1);
        assert_eq!(count, 12);
    }

    #[test]
    fn form_weights() {
        let k = ColorId(0);
        let f = QuadraticForm::diagonal(k, Q::new(1.into(), 2.into()));
        assert_eq!(f.weight(k, k), Q::one());
        assert!(f.scale(&Q::zero()).is_zero());
        assert!(f.add(&f.scale(&-Q::one())).is_zero());
    }
}
