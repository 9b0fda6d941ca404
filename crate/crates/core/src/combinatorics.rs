//! Circular-graph primitives: crossings of chords of a convex polygon,
//! perfect matchings and their parity, detection of bounded crossing number,
//! enumeration of the maximal graphs avoiding a `(k+1)`-fold crossing, and
//! accordion paths inside them.

use std::fmt;

use serde::de::Error as _;
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::cyclic::norm;
use crate::{Error, Result};

/// A chord `{i, j}` of the polygon on vertices `1..=n`, stored with `i < j`.
/// The ambient `n` is carried by context.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Edge {
    i: usize,
    j: usize,
}

impl Edge {
    pub fn new(i: usize, j: usize) -> Result<Self> {
        if i == j {
            return Err(Error::DegenerateEdge(i));
        }
        let (i, j) = if i < j { (i, j) } else { (j, i) };
        if i == 0 {
            return Err(Error::InvalidInput("vertex labels are 1-based".into()));
        }
        Ok(Edge { i, j })
    }

    pub fn i(&self) -> usize {
        self.i
    }

    pub fn j(&self) -> usize {
        self.j
    }

    pub fn endpoints(&self) -> [usize; 2] {
        [self.i, self.j]
    }

    pub fn contains(&self, v: usize) -> bool {
        self.i == v || self.j == v
    }

    pub fn shares_vertex(&self, other: &Edge) -> bool {
        self.contains(other.i) || self.contains(other.j)
    }

    /// Cyclic length `min(j - i, n - j + i)`.
    pub fn cyclic_len(&self, n: usize) -> usize {
        (self.j - self.i).min(n - self.j + self.i)
    }

    /// Relevant means cyclic length at least `k + 1`; irrelevant chords lie in
    /// every maximal `(k+1)`-crossing-free graph.
    pub fn is_relevant(&self, n: usize, k: usize) -> bool {
        self.cyclic_len(n) >= k + 1
    }

    /// Strict interleaving of endpoints on the circle.
    pub fn crosses(&self, other: &Edge) -> bool {
        let (a, b) = (self.i, self.j);
        let (c, d) = (other.i, other.j);
        (a < c && c < b && b < d) || (c < a && a < d && d < b)
    }

    /// Shift both endpoints by `r` modulo `n`.
    pub fn rotate(&self, r: i64, n: usize) -> Edge {
        let a = norm(self.i as i64 + r, n);
        let b = norm(self.j as i64 + r, n);
        Edge::new(a, b).expect("rotation preserves distinctness")
    }

    fn check_range(&self, n: usize) -> Result<()> {
        if self.j > n {
            return Err(Error::VertexOutOfRange { vertex: self.j, n });
        }
        Ok(())
    }
}

impl fmt::Display for Edge {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{{{},{}}}", self.i, self.j)
    }
}

impl Serialize for Edge {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        [self.i, self.j].serialize(s)
    }
}

impl<'de> Deserialize<'de> for Edge {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let [i, j] = <[usize; 2]>::deserialize(d)?;
        Edge::new(i, j).map_err(D::Error::custom)
    }
}

/// A duplicate-free sorted collection of chords on `1..=n`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct EdgeSet {
    n: usize,
    edges: Vec<Edge>,
}

impl EdgeSet {
    pub fn new(n: usize, mut edges: Vec<Edge>) -> Result<Self> {
        for e in &edges {
            e.check_range(n)?;
        }
        edges.sort();
        edges.dedup();
        Ok(EdgeSet { n, edges })
    }

    pub fn empty(n: usize) -> Self {
        EdgeSet { n, edges: Vec::new() }
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn len(&self) -> usize {
        self.edges.len()
    }

    pub fn is_empty(&self) -> bool {
        self.edges.is_empty()
    }

    pub fn edges(&self) -> &[Edge] {
        &self.edges
    }

    pub fn contains(&self, e: &Edge) -> bool {
        self.edges.binary_search(e).is_ok()
    }

    pub fn insert(&mut self, e: Edge) -> Result<()> {
        e.check_range(self.n)?;
        if let Err(pos) = self.edges.binary_search(&e) {
            self.edges.insert(pos, e);
        }
        Ok(())
    }

    /// The chords of cyclic length at least `k + 1`.
    pub fn relevant(&self, k: usize) -> Vec<Edge> {
        self.edges.iter().filter(|e| e.is_relevant(self.n, k)).copied().collect()
    }
}

/// All `C(n, 2)` chords, in lexicographic order.
pub fn all_edges(n: usize) -> Vec<Edge> {
    let mut out = Vec::with_capacity(n * (n - 1) / 2);
    for i in 1..=n {
        for j in i + 1..=n {
            out.push(Edge { i, j });
        }
    }
    out
}

/// The chords of cyclic length at most `k`, which belong to every maximal
/// `(k+1)`-crossing-free graph.
pub fn irrelevant_edges(n: usize, k: usize) -> Vec<Edge> {
    all_edges(n).into_iter().filter(|e| e.cyclic_len(n) <= k).collect()
}

/// Size of the largest set of mutually crossing chords in `g`, by
/// branch-and-bound clique search on the crossing relation.
pub fn max_crossing_size(g: &EdgeSet) -> usize {
    let edges = g.edges();
    let mut best = 0;
    let mut stack: Vec<Edge> = Vec::new();
    fn extend(edges: &[Edge], start: usize, stack: &mut Vec<Edge>, best: &mut usize) {
        if stack.len() > *best {
            *best = stack.len();
        }
        for idx in start..edges.len() {
            // Bound: even taking every remaining edge cannot beat `best`.
            if stack.len() + (edges.len() - idx) <= *best {
                return;
            }
            let e = edges[idx];
            if stack.iter().all(|f| f.crosses(&e)) {
                stack.push(e);
                extend(edges, idx + 1, stack, best);
                stack.pop();
            }
        }
    }
    extend(edges, 0, &mut stack, &mut best);
    best
}

/// Whether `g` contains no set of `k + 1` mutually crossing chords.
pub fn is_k_free(g: &EdgeSet, k: usize) -> bool {
    !exists_mutual_crossing(g.edges(), k + 1, None)
}

/// True when `cands` contains `need` mutually crossing edges, optionally all
/// required to cross every edge of `across`.
pub(crate) fn exists_mutual_crossing(cands: &[Edge], need: usize, across: Option<&[Edge]>) -> bool {
    if need == 0 {
        return true;
    }
    let pool: Vec<Edge> = match across {
        None => cands.to_vec(),
        Some(req) => cands
            .iter()
            .filter(|e| req.iter().all(|r| r.crosses(e)))
            .copied()
            .collect(),
    };
    fn rec(pool: &[Edge], start: usize, picked: &mut Vec<Edge>, need: usize) -> bool {
        if picked.len() == need {
            return true;
        }
        for idx in start..pool.len() {
            if picked.len() + (pool.len() - idx) < need {
                return false;
            }
            let e = pool[idx];
            if picked.iter().all(|f| f.crosses(&e)) {
                picked.push(e);
                if rec(pool, idx + 1, picked, need) {
                    picked.pop();
                    return true;
                }
                picked.pop();
            }
        }
        false
    }
    rec(&pool, 0, &mut Vec::new(), need)
}

/// Parity of a perfect matching: the parity of its number of crossing pairs.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Parity {
    Even,
    Odd,
}

impl Parity {
    pub fn sign(&self) -> i8 {
        match self {
            Parity::Even => 1,
            Parity::Odd => -1,
        }
    }

    pub fn flip(&self) -> Parity {
        match self {
            Parity::Even => Parity::Odd,
            Parity::Odd => Parity::Even,
        }
    }
}

/// A perfect matching of an even vertex subset, stored as pairs sorted by
/// smaller endpoint.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub struct Matching {
    pairs: Vec<Edge>,
}

impl Matching {
    pub fn new(mut pairs: Vec<Edge>) -> Result<Self> {
        pairs.sort();
        let mut seen = std::collections::BTreeSet::new();
        for e in &pairs {
            for v in e.endpoints() {
                if !seen.insert(v) {
                    return Err(Error::InvalidInput(format!(
                        "vertex {v} appears in two pairs"
                    )));
                }
            }
        }
        Ok(Matching { pairs })
    }

    pub fn pairs(&self) -> &[Edge] {
        &self.pairs
    }

    /// Sorted ground set.
    pub fn ground(&self) -> Vec<usize> {
        let mut g: Vec<usize> = self.pairs.iter().flat_map(|e| e.endpoints()).collect();
        g.sort_unstable();
        g
    }

    pub fn contains_pair(&self, e: &Edge) -> bool {
        self.pairs.binary_search(e).is_ok()
    }

    /// Number of crossing pairs, reduced mod 2.
    pub fn parity(&self) -> Parity {
        let mut c = 0usize;
        for (a, e) in self.pairs.iter().enumerate() {
            for f in &self.pairs[a + 1..] {
                if e.crosses(f) {
                    c += 1;
                }
            }
        }
        if c % 2 == 0 {
            Parity::Even
        } else {
            Parity::Odd
        }
    }
}

/// Every perfect matching of the even ground set `u`, in lexicographic order
/// of the sorted pair list; there are `(|u| - 1)!!` of them.
pub fn matchings(u: &[usize]) -> Result<Vec<Matching>> {
    let mut ground = u.to_vec();
    ground.sort_unstable();
    ground.dedup();
    if ground.len() != u.len() {
        return Err(Error::InvalidInput("duplicate vertices in ground set".into()));
    }
    if ground.len() % 2 != 0 {
        return Err(Error::OddGroundSet);
    }
    let mut out = Vec::new();
    let mut pairs: Vec<Edge> = Vec::new();
    fn rec(remaining: &[usize], pairs: &mut Vec<Edge>, out: &mut Vec<Matching>) {
        if remaining.is_empty() {
            out.push(Matching { pairs: pairs.clone() });
            return;
        }
        let first = remaining[0];
        for idx in 1..remaining.len() {
            let partner = remaining[idx];
            let rest: Vec<usize> = remaining[1..]
                .iter()
                .copied()
                .filter(|&v| v != partner)
                .collect();
            pairs.push(Edge { i: first, j: partner });
            rec(&rest, pairs, out);
            pairs.pop();
        }
    }
    rec(&ground, &mut pairs, &mut out);
    Ok(out)
}

/// Among the three matchings of four points, the one that crosses; the other
/// two are crossing-free.
fn other_matchings_of_four(e: &Edge, f: &Edge) -> [(Edge, Edge); 2] {
    let mut v: Vec<usize> = e.endpoints().into_iter().chain(f.endpoints()).collect();
    v.sort_unstable();
    let [a, b, c, d] = [v[0], v[1], v[2], v[3]];
    let all = [
        (Edge { i: a, j: b }, Edge { i: c, j: d }),
        (Edge { i: a, j: c }, Edge { i: b, j: d }),
        (Edge { i: a, j: d }, Edge { i: b, j: c }),
    ];
    let current = if e < f { (*e, *f) } else { (*f, *e) };
    let mut rest = all.into_iter().filter(|p| *p != current);
    [rest.next().unwrap(), rest.next().unwrap()]
}

/// Replaces the pairs `e, f` of `m` by one of the two other matchings of their
/// four endpoints; `variant` selects among the replacements in lexicographic
/// order (1 or 2). The parity flips exactly when one of the removed or
/// inserted pairs is a crossing.
pub fn swap(m: &Matching, e: &Edge, f: &Edge, variant: usize) -> Result<Matching> {
    if !m.contains_pair(e) {
        return Err(Error::EdgeNotInMatching(*e));
    }
    if !m.contains_pair(f) {
        return Err(Error::EdgeNotInMatching(*f));
    }
    if e == f {
        return Err(Error::SwapPairsNotDisjoint);
    }
    let options = other_matchings_of_four(e, f);
    let (p, q) = match variant {
        1 => options[0],
        2 => options[1],
        _ => return Err(Error::InvalidInput(format!("swap variant must be 1 or 2, got {variant}"))),
    };
    let mut pairs: Vec<Edge> = m
        .pairs
        .iter()
        .filter(|x| *x != e && *x != f)
        .copied()
        .collect();
    pairs.push(p);
    pairs.push(q);
    Matching::new(pairs)
}

/// Common cardinality of the maximal `(k+1)`-crossing-free graphs on `[n]`.
pub fn k_triangulation_size(n: usize, k: usize) -> usize {
    k * (2 * n - 2 * k - 1)
}

/// Whether `t` is a maximal `(k+1)`-crossing-free graph.
pub fn is_k_triangulation(t: &EdgeSet, k: usize) -> bool {
    if !is_k_free(t, k) {
        return false;
    }
    for e in all_edges(t.n()) {
        if !t.contains(&e) && !exists_mutual_crossing(t.edges(), k, Some(&[e])) {
            return false;
        }
    }
    true
}

/// Enumerates every maximal `(k+1)`-crossing-free graph on `[n]` exactly once,
/// in lexicographic order of the sorted edge list. Depth-first search over the
/// relevant chords; irrelevant chords are always present.
pub fn enumerate_k_triangulations(n: usize, k: usize) -> Result<Vec<EdgeSet>> {
    if k == 0 {
        return Err(Error::InvalidInput("k must be at least 1".into()));
    }
    if n < 2 * k + 1 {
        return Err(Error::RegimeTooSmall { n, k, min: 2 * k + 1 });
    }
    let relevant: Vec<Edge> = all_edges(n)
        .into_iter()
        .filter(|e| e.is_relevant(n, k))
        .collect();
    let base = irrelevant_edges(n, k);

    struct Dfs<'a> {
        relevant: &'a [Edge],
        base: &'a [Edge],
        n: usize,
        k: usize,
        out: Vec<EdgeSet>,
    }

    impl Dfs<'_> {
        // An excluded edge stays excluded legitimately only if a k-crossing,
        // all of whose edges cross it, can still be formed.
        fn blockable(&self, e: &Edge, chosen: &[Edge], next: usize) -> bool {
            let mut avail = chosen.to_vec();
            avail.extend_from_slice(&self.relevant[next..]);
            exists_mutual_crossing(&avail, self.k, Some(&[*e]))
        }

        fn blocked(&self, e: &Edge, chosen: &[Edge]) -> bool {
            exists_mutual_crossing(chosen, self.k, Some(&[*e]))
        }

        fn run(&mut self, idx: usize, chosen: &mut Vec<Edge>, excluded: &mut Vec<Edge>) {
            if idx == self.relevant.len() {
                if excluded.iter().all(|e| self.blocked(e, chosen)) {
                    let mut edges = self.base.to_vec();
                    edges.extend_from_slice(chosen);
                    self.out.push(EdgeSet::new(self.n, edges).expect("valid edges"));
                }
                return;
            }
            let e = self.relevant[idx];
            if !exists_mutual_crossing(chosen, self.k, Some(&[e])) {
                chosen.push(e);
                self.run(idx + 1, chosen, excluded);
                chosen.pop();
            }
            if self.blockable(&e, chosen, idx + 1) {
                excluded.push(e);
                self.run(idx + 1, chosen, excluded);
                excluded.pop();
            }
        }
    }

    let mut dfs = Dfs { relevant: &relevant, base: &base, n, k, out: Vec::new() };
    dfs.run(0, &mut Vec::new(), &mut Vec::new());
    let mut out = dfs.out;
    out.sort_by(|a, b| a.edges().cmp(b.edges()));
    Ok(out)
}

/// Checks the defining local conditions of an accordion: consecutive edges
/// share a vertex and the free endpoints around each interior edge cross it.
pub fn is_accordion(seq: &[Edge]) -> bool {
    if seq.is_empty() {
        return false;
    }
    for w in seq.windows(2) {
        let shared: Vec<usize> = w[0]
            .endpoints()
            .into_iter()
            .filter(|v| w[1].contains(*v))
            .collect();
        if shared.len() != 1 {
            return false;
        }
    }
    for idx in 1..seq.len().saturating_sub(1) {
        let mid = seq[idx];
        let a = seq[idx - 1].endpoints().into_iter().find(|v| !mid.contains(*v));
        let b = seq[idx + 1].endpoints().into_iter().find(|v| !mid.contains(*v));
        match (a, b) {
            (Some(a), Some(b)) if a != b => {
                let ab = Edge::new(a, b).expect("distinct");
                if !ab.crosses(&mid) {
                    return false;
                }
            }
            _ => return false,
        }
    }
    true
}

/// A sequence of edges of `t` from `e` to `f` in which consecutive edges share
/// a vertex and every interior edge is crossed by the chord through its
/// neighbours' free endpoints. Requires `e, f` in `t` non-crossing; `t` must
/// be a maximal `(k+1)`-crossing-free graph for the construction to succeed.
pub fn accordion(t: &EdgeSet, e: &Edge, f: &Edge) -> Result<Vec<Edge>> {
    if !t.contains(e) {
        return Err(Error::EdgeNotInGraph(*e));
    }
    if !t.contains(f) {
        return Err(Error::EdgeNotInGraph(*f));
    }
    if e.crosses(f) {
        return Err(Error::EdgesCross(*e, *f));
    }
    let k = max_crossing_size(t);
    let n = t.n();
    let budget = n * n;
    accordion_rec(t, n, k, *e, *f, budget)
}

fn accordion_rec(t: &EdgeSet, n: usize, k: usize, e: Edge, f: Edge, budget: usize) -> Result<Vec<Edge>> {
    if budget == 0 {
        return Err(Error::AccordionNotFound(e, f));
    }
    if e == f {
        return Ok(vec![e]);
    }
    if e.shares_vertex(&f) {
        return Ok(vec![e, f]);
    }
    // Rotate labels so that f nests inside the span of e.
    let rot = (0..n as i64)
        .find(|&r| {
            let er = e.rotate(r, n);
            let fr = f.rotate(r, n);
            er.i() <= fr.i() && fr.j() <= er.j()
        })
        .ok_or(Error::EdgesCross(e, f))?;
    let er = e.rotate(rot, n);
    let fr = f.rotate(rot, n);
    let bridge = Edge::new(er.i(), fr.j()).expect("distinct endpoints").rotate(-rot, n);

    if t.contains(&bridge) {
        let seq = vec![e, bridge, f];
        if is_accordion(&seq) {
            return Ok(seq);
        }
        return Err(Error::AccordionNotFound(e, f));
    }

    // The bridge is missing, so by maximality some k-crossing of t crosses it.
    // Its successor inside the enlarged crossing is the stepping stone.
    let mut candidates: Vec<Edge> = Vec::new();
    let crossers: Vec<Edge> = t.edges().iter().filter(|x| x.crosses(&bridge)).copied().collect();
    collect_crossings_through(&crossers, bridge, k + 1, &mut Vec::new(), 0, &mut |full| {
        if let Some(g) = successor_in_crossing(full, &bridge) {
            if !candidates.contains(&g) {
                candidates.push(g);
            }
        }
    });
    candidates.sort();
    for g in candidates {
        if g.crosses(&e) || g.crosses(&f) {
            continue;
        }
        let (Ok(left), Ok(right)) = (
            accordion_rec(t, n, k, e, g, budget - 1),
            accordion_rec(t, n, k, g, f, budget - 1),
        ) else {
            continue;
        };
        let mut seq = left;
        seq.extend_from_slice(&right[1..]);
        if is_accordion(&seq) {
            return Ok(seq);
        }
    }
    Err(Error::AccordionNotFound(e, f))
}

/// Enumerates the `size`-element sets of mutually crossing edges that contain
/// `through`, with the remaining edges drawn from `pool`.
fn collect_crossings_through(
    pool: &[Edge],
    through: Edge,
    size: usize,
    picked: &mut Vec<Edge>,
    start: usize,
    emit: &mut impl FnMut(&[Edge]),
) {
    if picked.len() + 1 == size {
        let mut full = picked.clone();
        full.push(through);
        full.sort();
        emit(&full);
        return;
    }
    for idx in start..pool.len() {
        let e = pool[idx];
        if picked.iter().all(|x| x.crosses(&e)) {
            picked.push(e);
            collect_crossings_through(pool, through, size, picked, idx + 1, emit);
            picked.pop();
        }
    }
}

/// For a set of `m` mutually crossing edges written in normal form
/// (pairing the `i`-th smallest endpoint with the `(i+m)`-th), the edge
/// following `of` in the cyclic order.
fn successor_in_crossing(crossing: &[Edge], of: &Edge) -> Option<Edge> {
    let m = crossing.len();
    let mut verts: Vec<usize> = crossing.iter().flat_map(|e| e.endpoints()).collect();
    verts.sort_unstable();
    let ordered: Vec<Edge> = (0..m)
        .map(|i| Edge { i: verts[i], j: verts[i + m] })
        .collect();
    let pos = ordered.iter().position(|e| e == of)?;
    Some(ordered[(pos + 1) % m])
}
