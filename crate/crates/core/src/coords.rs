//! The two linear coordinate systems on edge-indexed weight vectors (the
//! "matching" coordinates `v` and the "edge" coordinates `w` related by the
//! side-separation transform), four-point positivity, and the explicit
//! simplicial weight cone selecting the `(k+1)`-crossing as leading matching
//! in every `(2k+2)`-point sub-Pfaffian.
//!
//! A vector in the `v` basis assigns weights to matchings additively; the `w`
//! basis records the chord weights whose side-separation sums produce `v`.
//! The two bases are exchanged by mutually inverse integer-linear transforms,
//! so every test here is an exact sign condition.

use std::collections::BTreeMap;
use std::fmt;

use num_traits::Zero;
use serde::de::Error as _;
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::combinatorics::{all_edges, exists_mutual_crossing, matchings, Edge, EdgeSet, Matching};
use crate::cyclic::{arc_contains, norm, pred, succ};
use crate::rational::{format_rat, parse_rat, Rat};
use crate::{Error, Result};

/// Which linear coordinates the entries of a [`WeightVector`] are expressed in.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Basis {
    V,
    W,
}

/// An exact-rational vector indexed by the chords of the `n`-gon; absent
/// entries are zero.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct WeightVector {
    n: usize,
    basis: Basis,
    entries: BTreeMap<Edge, Rat>,
}

impl WeightVector {
    pub fn zero(n: usize, basis: Basis) -> Self {
        WeightVector { n, basis, entries: BTreeMap::new() }
    }

    pub fn from_entries<I: IntoIterator<Item = (Edge, Rat)>>(
        n: usize,
        basis: Basis,
        entries: I,
    ) -> Result<Self> {
        let mut v = WeightVector::zero(n, basis);
        for (e, r) in entries {
            if e.j() > n {
                return Err(Error::VertexOutOfRange { vertex: e.j(), n });
            }
            if !r.is_zero() {
                let cur = v.entries.entry(e).or_insert_with(Rat::zero);
                *cur += r;
                if cur.is_zero() {
                    v.entries.remove(&e);
                }
            }
        }
        Ok(v)
    }

    /// Basis unit vector at `e`.
    pub fn unit(n: usize, basis: Basis, e: Edge) -> Result<Self> {
        Self::from_entries(n, basis, [(e, Rat::from_integer(1.into()))])
    }

    /// Indicator of the star of vertex `x` in the `v` coordinates; these span
    /// the lineality space of all the cones in this module.
    pub fn vertex_star(n: usize, x: usize) -> Result<Self> {
        let mut entries = Vec::new();
        for y in 1..=n {
            if y != x {
                entries.push((Edge::new(x, y)?, Rat::from_integer(1.into())));
            }
        }
        Self::from_entries(n, Basis::V, entries)
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn basis(&self) -> Basis {
        self.basis
    }

    pub fn get(&self, e: &Edge) -> Rat {
        self.entries.get(e).cloned().unwrap_or_else(Rat::zero)
    }

    pub fn set(&mut self, e: Edge, r: Rat) {
        if r.is_zero() {
            self.entries.remove(&e);
        } else {
            self.entries.insert(e, r);
        }
    }

    pub fn iter(&self) -> impl Iterator<Item = (&Edge, &Rat)> {
        self.entries.iter()
    }

    pub fn support(&self) -> Vec<Edge> {
        self.entries.keys().copied().collect()
    }

    pub fn is_zero(&self) -> bool {
        self.entries.is_empty()
    }

    pub fn scaled(&self, r: &Rat) -> Self {
        let entries = self
            .entries
            .iter()
            .map(|(e, x)| (*e, x * r))
            .filter(|(_, x)| !x.is_zero())
            .collect();
        WeightVector { n: self.n, basis: self.basis, entries }
    }

    pub fn neg(&self) -> Self {
        self.scaled(&Rat::from_integer((-1).into()))
    }

    pub fn plus(&self, other: &WeightVector) -> Result<Self> {
        if self.n != other.n || self.basis != other.basis {
            return Err(Error::DimensionMismatch(
                "weight vectors must share n and basis".into(),
            ));
        }
        Self::from_entries(
            self.n,
            self.basis,
            self.entries
                .iter()
                .chain(other.entries.iter())
                .map(|(e, r)| (*e, r.clone())),
        )
    }

    /// View in the `v` coordinates, converting if necessary.
    pub fn to_v(&self) -> WeightVector {
        match self.basis {
            Basis::V => self.clone(),
            Basis::W => separation_vector(self).expect("basis checked"),
        }
    }

    /// View in the `w` coordinates, converting if necessary.
    pub fn to_w(&self) -> WeightVector {
        match self.basis {
            Basis::V => inverse_separation(self).expect("basis checked"),
            Basis::W => self.clone(),
        }
    }

    /// Total `v`-weight of a matching.
    pub fn matching_weight(&self, m: &Matching) -> Rat {
        debug_assert_eq!(self.basis, Basis::V);
        m.pairs().iter().map(|e| self.get(e)).sum()
    }
}

impl fmt::Display for WeightVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let b = match self.basis {
            Basis::V => "v",
            Basis::W => "w",
        };
        write!(f, "[{b}; n={}]", self.n)?;
        for (e, r) in &self.entries {
            write!(f, " {e}={}", format_rat(r))?;
        }
        Ok(())
    }
}

impl Serialize for WeightVector {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        #[derive(Serialize)]
        struct Repr {
            n: usize,
            basis: Basis,
            entries: BTreeMap<String, String>,
        }
        let entries = self
            .entries
            .iter()
            .map(|(e, r)| (format!("{},{}", e.i(), e.j()), format_rat(r)))
            .collect();
        Repr { n: self.n, basis: self.basis, entries }.serialize(s)
    }
}

impl<'de> Deserialize<'de> for WeightVector {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        #[derive(Deserialize)]
        struct Repr {
            n: usize,
            basis: Basis,
            #[serde(default)]
            entries: BTreeMap<String, String>,
        }
        let repr = Repr::deserialize(d)?;
        let mut entries = Vec::new();
        for (key, val) in repr.entries {
            let (i, j) = key
                .split_once(',')
                .ok_or_else(|| D::Error::custom(format!("bad edge key {key:?}")))?;
            let i: usize = i.trim().parse().map_err(D::Error::custom)?;
            let j: usize = j.trim().parse().map_err(D::Error::custom)?;
            let e = Edge::new(i, j).map_err(D::Error::custom)?;
            entries.push((e, parse_rat(&val).map_err(D::Error::custom)?));
        }
        WeightVector::from_entries(repr.n, repr.basis, entries).map_err(D::Error::custom)
    }
}

/// Whether the chord `e` separates the polygon sides `a` and `b` (side `a`
/// joins vertices `a-1` and `a`): exactly one endpoint of `e` lies on the
/// cyclic arc from `a` to `b-1`.
pub(crate) fn separates(e: &Edge, a: usize, b: usize, n: usize) -> bool {
    let hi = pred(b, n);
    arc_contains(e.i(), a, hi, n) != arc_contains(e.j(), a, hi, n)
}

/// The side-separation transform: entry `{a,b}` of the result sums the `w`
/// weights of the chords separating sides `a` and `b`.
pub fn separation_vector(w: &WeightVector) -> Result<WeightVector> {
    if w.basis != Basis::W {
        return Err(Error::InvalidInput("separation_vector expects the w basis".into()));
    }
    let n = w.n;
    let mut out = Vec::new();
    for pair in all_edges(n) {
        let mut sum = Rat::zero();
        for (e, x) in &w.entries {
            if separates(e, pair.i(), pair.j(), n) {
                sum += x;
            }
        }
        if !sum.is_zero() {
            out.push((pair, sum));
        }
    }
    WeightVector::from_entries(n, Basis::V, out)
}

fn v_entry(v: &WeightVector, a: i64, b: i64) -> Rat {
    let n = v.n;
    let a = norm(a, n);
    let b = norm(b, n);
    if a == b {
        return Rat::zero(); // diagonal entries vanish by convention
    }
    v.get(&Edge::new(a, b).expect("distinct"))
}

/// Inverse of [`separation_vector`]:
/// `2 w_{a,b} = v_{a,b} + v_{a+1,b+1} - v_{a,b+1} - v_{a+1,b}` cyclically.
pub fn inverse_separation(v: &WeightVector) -> Result<WeightVector> {
    if v.basis != Basis::V {
        return Err(Error::InvalidInput("inverse_separation expects the v basis".into()));
    }
    let n = v.n;
    let half = Rat::new(1.into(), 2.into());
    let mut out = Vec::new();
    for e in all_edges(n) {
        let (a, b) = (e.i() as i64, e.j() as i64);
        let x = v_entry(v, a, b) + v_entry(v, a + 1, b + 1)
            - v_entry(v, a, b + 1)
            - v_entry(v, a + 1, b);
        let w = x * &half;
        if !w.is_zero() {
            out.push((e, w));
        }
    }
    WeightVector::from_entries(n, Basis::W, out)
}

/// Four-point positivity via the irredundant description: every chord of
/// cyclic length at least two has nonnegative `w` coordinate.
pub fn is_fp_positive(v: &WeightVector) -> bool {
    let w = v.to_w();
    let n = w.n;
    all_edges(n)
        .into_iter()
        .filter(|e| e.cyclic_len(n) >= 2)
        .all(|e| w.get(&e) >= Rat::zero())
}

/// Four-point positivity straight from the defining `2 C(n,4)` inequalities;
/// oracle for [`is_fp_positive`].
pub fn is_fp_positive_fourpoint(v: &WeightVector) -> bool {
    let v = v.to_v();
    let n = v.n;
    for a in 1..=n {
        for a2 in a + 1..=n {
            for b in a2 + 1..=n {
                for b2 in b + 1..=n {
                    let cross = v_entry(&v, a as i64, b as i64) + v_entry(&v, a2 as i64, b2 as i64);
                    let nested = v_entry(&v, a as i64, a2 as i64) + v_entry(&v, b as i64, b2 as i64);
                    let boundary =
                        v_entry(&v, a as i64, b2 as i64) + v_entry(&v, a2 as i64, b as i64);
                    if cross < nested || cross < boundary {
                        return false;
                    }
                }
            }
        }
    }
    true
}

/// Label of a linear form on the `v` coordinates.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase", tag = "kind", content = "at")]
pub enum FormLabel {
    /// Nonnegativity of a single `w` coordinate.
    Long(Edge),
    /// Window sum of `w` coordinates around a short chord.
    Short(Edge),
    /// Alternating sum along an even closed walk.
    Cycle(Vec<usize>),
}

/// An exact linear form on weight vectors in the `v` coordinates.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LinearForm {
    pub n: usize,
    pub label: FormLabel,
    coeffs: BTreeMap<Edge, Rat>,
}

impl LinearForm {
    pub fn new(n: usize, label: FormLabel, coeffs: BTreeMap<Edge, Rat>) -> Self {
        let coeffs = coeffs.into_iter().filter(|(_, c)| !c.is_zero()).collect();
        LinearForm { n, label, coeffs }
    }

    pub fn coeffs(&self) -> &BTreeMap<Edge, Rat> {
        &self.coeffs
    }

    pub fn eval(&self, v: &WeightVector) -> Rat {
        let v = v.to_v();
        self.coeffs.iter().map(|(e, c)| c * v.get(e)).sum()
    }
}

impl Serialize for LinearForm {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        #[derive(Serialize)]
        struct Repr<'a> {
            n: usize,
            label: &'a FormLabel,
            coeffs: BTreeMap<String, String>,
        }
        let coeffs = self
            .coeffs
            .iter()
            .map(|(e, r)| (format!("{},{}", e.i(), e.j()), format_rat(r)))
            .collect();
        Repr { n: self.n, label: &self.label, coeffs }.serialize(s)
    }
}

/// Adds to `acc` the `v`-coefficients expressing the `w` coordinate of `edge`.
fn add_w_form(acc: &mut BTreeMap<Edge, Rat>, edge: &Edge, n: usize, scale: &Rat) {
    let half = Rat::new(1.into(), 2.into()) * scale;
    let (a, b) = (edge.i() as i64, edge.j() as i64);
    let mut add = |x: i64, y: i64, sgn: i64| {
        let xn = norm(x, n);
        let yn = norm(y, n);
        if xn == yn {
            return;
        }
        let e = Edge::new(xn, yn).expect("distinct");
        let c = acc.entry(e).or_insert_with(Rat::zero);
        *c += &half * Rat::from_integer(sgn.into());
        if c.is_zero() {
            acc.remove(&e);
        }
    };
    add(a, b, 1);
    add(a + 1, b + 1, 1);
    add(a, b + 1, -1);
    add(a + 1, b, -1);
}

/// Orients `{i,j}` so that the arc walked upward from the first to the second
/// endpoint is the short side. Unique whenever the cyclic length is `< n/2`.
fn short_side_oriented(e: &Edge, n: usize) -> (usize, usize) {
    let len = e.cyclic_len(n);
    if e.j() - e.i() == len {
        (e.i(), e.j())
    } else {
        (e.j(), e.i())
    }
}

/// Facet form of the simplicial weight cone for the label `{i,j}`.
fn facet_form(label: &Edge, n: usize, k: usize) -> LinearForm {
    let len = label.cyclic_len(n);
    let mut coeffs = BTreeMap::new();
    let one = Rat::from_integer(1.into());
    if len >= k + 1 {
        add_w_form(&mut coeffs, label, n, &one);
        LinearForm::new(n, FormLabel::Long(*label), coeffs)
    } else {
        // Sum of the w coordinates over all chords of length at most k+1
        // whose short side contains the label.
        let (i, j) = short_side_oriented(label, n);
        for t in 0..=(k + 1 - len) {
            for s in 0..=(k + 1 - len - t) {
                let a = norm(i as i64 - t as i64, n);
                let b = norm(j as i64 + s as i64, n);
                let e = Edge::new(a, b).expect("distinct");
                add_w_form(&mut coeffs, &e, n, &one);
            }
        }
        LinearForm::new(n, FormLabel::Short(*label), coeffs)
    }
}

/// Ray opposite to the facet labelled `{i,j}`: the `w` basis unit for long
/// labels, the negative `v` basis unit at `{i+1, j}` for the rest.
fn ray_for_label(label: &Edge, n: usize, k: usize) -> Result<WeightVector> {
    let len = label.cyclic_len(n);
    if len >= k + 2 {
        separation_vector(&WeightVector::unit(n, Basis::W, *label)?)
    } else {
        let (i, j) = short_side_oriented(label, n);
        let e = Edge::new(succ(i, n), j)?;
        Ok(WeightVector::unit(n, Basis::V, e)?.neg())
    }
}

/// Explicit description of the simplicial weight cone: lineality basis, one
/// ray and one facet per chord of cyclic length at least two.
#[derive(Debug, Clone, Serialize)]
pub struct ConeDescription {
    pub n: usize,
    pub k: usize,
    pub lineality: Vec<WeightVector>,
    pub rays: Vec<(Edge, WeightVector)>,
    pub facets: Vec<LinearForm>,
}

/// The simplicial cone of weight vectors giving every `(2k+2)`-point
/// sub-Pfaffian its crossing matching as a maximum. Requires `n >= 2k+3`;
/// at `n = 2k+2` the cone is not simplicial and only the cycle-inequality
/// description applies.
pub fn grobner_cone(n: usize, k: usize) -> Result<ConeDescription> {
    if k == 0 {
        return Err(Error::InvalidInput("k must be at least 1".into()));
    }
    if n < 2 * k + 2 {
        return Err(Error::RegimeTooSmall { n, k, min: 2 * k + 2 });
    }
    if n == 2 * k + 2 {
        return Err(Error::NonSimplicialRegime);
    }
    let labels: Vec<Edge> = all_edges(n)
        .into_iter()
        .filter(|e| e.cyclic_len(n) >= 2)
        .collect();
    let lineality = (1..=n)
        .map(|x| WeightVector::vertex_star(n, x))
        .collect::<Result<Vec<_>>>()?;
    let rays = labels
        .iter()
        .map(|e| Ok((*e, ray_for_label(e, n, k)?)))
        .collect::<Result<Vec<_>>>()?;
    let facets = labels.iter().map(|e| facet_form(e, n, k)).collect();
    Ok(ConeDescription { n, k, lineality, rays, facets })
}

/// Membership in the simplicial weight cone by its facet description.
pub fn in_grobner_cone(v: &WeightVector, k: usize) -> Result<bool> {
    let cone = grobner_cone(v.n(), k)?;
    Ok(violated_facets(&cone, v).is_empty())
}

/// Labels of the facets violated by `v` (empty means membership).
pub fn violated_facets(cone: &ConeDescription, v: &WeightVector) -> Vec<Edge> {
    let v = v.to_v();
    cone.facets
        .iter()
        .filter(|f| f.eval(&v) < Rat::zero())
        .map(|f| match &f.label {
            FormLabel::Long(e) | FormLabel::Short(e) => *e,
            FormLabel::Cycle(_) => unreachable!("facet labels are edges"),
        })
        .collect()
}

/// The set of facet labels strict at `v`: the support graph of the face of
/// the cone containing `v` in its relative interior.
pub fn cone_face_of(v: &WeightVector, k: usize) -> Result<EdgeSet> {
    let cone = grobner_cone(v.n(), k)?;
    let vv = v.to_v();
    let violated = violated_facets(&cone, &vv);
    if !violated.is_empty() {
        return Err(Error::OutsideCone(violated));
    }
    let strict: Vec<Edge> = cone
        .facets
        .iter()
        .filter(|f| f.eval(&vv) > Rat::zero())
        .map(|f| match &f.label {
            FormLabel::Long(e) | FormLabel::Short(e) => *e,
            FormLabel::Cycle(_) => unreachable!(),
        })
        .collect();
    EdgeSet::new(v.n(), strict)
}

/// All subsets of `{1..n}` of size `m`, lexicographically.
pub fn vertex_subsets(n: usize, m: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    let mut cur = Vec::with_capacity(m);
    fn rec(n: usize, m: usize, start: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if cur.len() == m {
            out.push(cur.clone());
            return;
        }
        for x in start..=n {
            if n - x + 1 + cur.len() < m {
                break;
            }
            cur.push(x);
            rec(n, m, x + 1, cur, out);
            cur.pop();
        }
    }
    rec(n, m, 1, &mut cur, &mut out);
    out
}

/// The unique maximal mutually-crossing matching on a sorted even vertex set:
/// the `i`-th smallest endpoint pairs with the `(i + half)`-th.
pub fn crossing_matching(u: &[usize]) -> Result<Matching> {
    if u.len() % 2 != 0 {
        return Err(Error::OddGroundSet);
    }
    let mut s = u.to_vec();
    s.sort_unstable();
    let half = s.len() / 2;
    let pairs = (0..half)
        .map(|i| Edge::new(s[i], s[i + half]))
        .collect::<Result<Vec<_>>>()?;
    Matching::new(pairs)
}

/// Whether `crossing` (a set of mutually crossing chords) extends to a set of
/// `k + 1` mutually crossing chords inside `[n]`.
fn crossing_extendable(crossing: &[Edge], n: usize, k: usize) -> bool {
    if crossing.len() >= k + 1 {
        return crossing.len() == k + 1;
    }
    exists_mutual_crossing(&all_edges(n), k + 1 - crossing.len(), Some(crossing))
}

/// The alternating-sum forms over even closed walks whose positive edges form
/// an `l`-crossing extendable to a `(k+1)`-crossing, `2 <= l <= k+1`. Their
/// nonnegativity describes the weight cone for every `n >= 2k+2`.
pub fn cycle_inequalities(n: usize, k: usize) -> Result<Vec<LinearForm>> {
    if k == 0 {
        return Err(Error::InvalidInput("k must be at least 1".into()));
    }
    if n < 2 * k + 2 {
        return Err(Error::RegimeTooSmall { n, k, min: 2 * k + 2 });
    }
    let mut out = Vec::new();
    for l in 2..=(k + 1) {
        for subset in vertex_subsets(n, 2 * l) {
            let crossing = crossing_matching(&subset)?;
            if !crossing_extendable(crossing.pairs(), n, k) {
                continue;
            }
            for m in matchings(&subset)? {
                if m.pairs().iter().any(|e| crossing.contains_pair(e)) {
                    continue;
                }
                let Some(walk) = single_cycle_walk(&crossing, &m) else {
                    continue;
                };
                let mut coeffs: BTreeMap<Edge, Rat> = BTreeMap::new();
                for e in crossing.pairs() {
                    *coeffs.entry(*e).or_insert_with(Rat::zero) += Rat::from_integer(1.into());
                }
                for e in m.pairs() {
                    *coeffs.entry(*e).or_insert_with(Rat::zero) -= Rat::from_integer(1.into());
                }
                out.push(LinearForm::new(n, FormLabel::Cycle(walk), coeffs));
            }
        }
    }
    Ok(out)
}

/// When the union of two disjoint perfect matchings of the same ground set is
/// a single alternating cycle, the walk starting at the smallest vertex along
/// its `crossing` edge; `None` otherwise.
fn single_cycle_walk(crossing: &Matching, other: &Matching) -> Option<Vec<usize>> {
    let ground = crossing.ground();
    let total = ground.len();
    let partner = |m: &Matching, x: usize| -> usize {
        m.pairs()
            .iter()
            .find(|e| e.contains(x))
            .map(|e| if e.i() == x { e.j() } else { e.i() })
            .expect("perfect matching")
    };
    let start = ground[0];
    let mut walk = vec![start];
    let mut cur = start;
    let mut use_crossing = true;
    loop {
        let nxt = if use_crossing {
            partner(crossing, cur)
        } else {
            partner(other, cur)
        };
        if nxt == start {
            break;
        }
        walk.push(nxt);
        cur = nxt;
        use_crossing = !use_crossing;
    }
    if walk.len() == total {
        Some(walk)
    } else {
        None
    }
}

/// Cone membership by the full cycle-inequality family; the brute-force
/// oracle for [`in_grobner_cone`], and the only description at `n = 2k+2`.
pub fn in_grobner_cone_cycles(v: &WeightVector, k: usize) -> Result<bool> {
    let forms = cycle_inequalities(v.n(), k)?;
    let v = v.to_v();
    Ok(forms.iter().all(|f| f.eval(&v) >= Rat::zero()))
}
