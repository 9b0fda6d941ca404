//! The max-plus side: matrices over the rationals extended by a bottom
//! element `-inf`, tropical determinants and rank, membership in the
//! prevariety cut out by the `(2k+2)`-point sub-Pfaffian hypersurfaces (the
//! maximum matching weight attained at least twice), its crossing-free part
//! inside the weight cone, and the sign-balance certificate for positivity.
//!
//! Everything is decided by exact comparisons of rationals; `-inf` is
//! absorbing for addition and neutral for the maximum.

use std::collections::BTreeMap;
use std::fmt;

use num_traits::{Signed, Zero};
use serde::de::Error as _;
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::combinatorics::{is_k_free, matchings, Edge, EdgeSet, Matching, Parity};
use crate::coords::{
    crossing_matching, in_grobner_cone, in_grobner_cone_cycles, vertex_subsets, Basis,
    WeightVector,
};
use crate::par::{par_all, seq_all};
use crate::rational::{format_rat, parse_rat, Rat};
use crate::{Error, Result};

/// A rational extended with the bottom element `-inf`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TropicalScalar(pub Option<Rat>);

impl TropicalScalar {
    pub fn bottom() -> Self {
        TropicalScalar(None)
    }

    pub fn finite(r: Rat) -> Self {
        TropicalScalar(Some(r))
    }

    pub fn is_bottom(&self) -> bool {
        self.0.is_none()
    }

    /// Tropical multiplication: ordinary addition, with bottom absorbing.
    pub fn add(&self, other: &TropicalScalar) -> TropicalScalar {
        match (&self.0, &other.0) {
            (Some(a), Some(b)) => TropicalScalar(Some(a + b)),
            _ => TropicalScalar(None),
        }
    }

    /// Tropical addition: the maximum, with bottom neutral.
    pub fn max(&self, other: &TropicalScalar) -> TropicalScalar {
        match (&self.0, &other.0) {
            (Some(a), Some(b)) => TropicalScalar(Some(a.max(b).clone())),
            (Some(a), None) => TropicalScalar(Some(a.clone())),
            (None, b) => TropicalScalar(b.clone()),
        }
    }
}

impl fmt::Display for TropicalScalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match &self.0 {
            None => write!(f, "-inf"),
            Some(r) => write!(f, "{}", format_rat(r)),
        }
    }
}

impl Serialize for TropicalScalar {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.serialize_str(&self.to_string())
    }
}

impl<'de> Deserialize<'de> for TropicalScalar {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let s = String::deserialize(d)?;
        if s.trim() == "-inf" {
            Ok(TropicalScalar(None))
        } else {
            Ok(TropicalScalar(Some(parse_rat(&s).map_err(D::Error::custom)?)))
        }
    }
}

/// Rectangular matrix over the tropical semiring.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TropicalMatrix {
    rows: usize,
    cols: usize,
    entries: Vec<TropicalScalar>,
}

impl TropicalMatrix {
    pub fn new(rows: usize, cols: usize, entries: Vec<TropicalScalar>) -> Result<Self> {
        if entries.len() != rows * cols {
            return Err(Error::DimensionMismatch(format!(
                "expected {} entries, got {}",
                rows * cols,
                entries.len()
            )));
        }
        Ok(TropicalMatrix { rows, cols, entries })
    }

    pub fn from_rationals(rows: &[Vec<Rat>]) -> Result<Self> {
        let r = rows.len();
        let c = rows.first().map_or(0, |x| x.len());
        let mut entries = Vec::with_capacity(r * c);
        for row in rows {
            if row.len() != c {
                return Err(Error::DimensionMismatch("ragged rows".into()));
            }
            entries.extend(row.iter().cloned().map(TropicalScalar::finite));
        }
        TropicalMatrix::new(r, c, entries)
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    /// Zero-based access.
    pub fn get(&self, i: usize, j: usize) -> &TropicalScalar {
        &self.entries[i * self.cols + j]
    }

    pub fn is_finite(&self) -> bool {
        self.entries.iter().all(|x| !x.is_bottom())
    }

    pub fn max_abs(&self) -> Rat {
        let mut best = Rat::zero();
        for x in &self.entries {
            if let Some(r) = &x.0 {
                let a = r.abs();
                if a > best {
                    best = a;
                }
            }
        }
        best
    }

    fn minor(&self, rsel: &[usize], csel: &[usize]) -> TropicalMatrix {
        let mut entries = Vec::with_capacity(rsel.len() * csel.len());
        for &i in rsel {
            for &j in csel {
                entries.push(self.get(i, j).clone());
            }
        }
        TropicalMatrix { rows: rsel.len(), cols: csel.len(), entries }
    }
}

impl Serialize for TropicalMatrix {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        #[derive(Serialize)]
        struct Repr {
            rows: usize,
            cols: usize,
            entries: Vec<Vec<String>>,
        }
        let entries = (0..self.rows)
            .map(|i| (0..self.cols).map(|j| self.get(i, j).to_string()).collect())
            .collect();
        Repr { rows: self.rows, cols: self.cols, entries }.serialize(s)
    }
}

impl<'de> Deserialize<'de> for TropicalMatrix {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        #[derive(Deserialize)]
        struct Repr {
            rows: usize,
            cols: usize,
            entries: Vec<Vec<String>>,
        }
        let repr = Repr::deserialize(d)?;
        let mut entries = Vec::with_capacity(repr.rows * repr.cols);
        if repr.entries.len() != repr.rows {
            return Err(D::Error::custom("row count mismatch"));
        }
        for row in &repr.entries {
            if row.len() != repr.cols {
                return Err(D::Error::custom("column count mismatch"));
            }
            for cell in row {
                if cell.trim() == "-inf" {
                    entries.push(TropicalScalar(None));
                } else {
                    entries
                        .push(TropicalScalar(Some(parse_rat(cell).map_err(D::Error::custom)?)));
                }
            }
        }
        TropicalMatrix::new(repr.rows, repr.cols, entries).map_err(D::Error::custom)
    }
}

/// All matchings of `u` attaining the maximum `v`-weight, with parities, in
/// lexicographic order.
pub fn max_matchings(v: &WeightVector, u: &[usize]) -> Result<Vec<(Matching, Parity)>> {
    let v = v.to_v();
    let all = matchings(u)?;
    let mut best: Option<Rat> = None;
    let mut weights = Vec::with_capacity(all.len());
    for m in &all {
        let w = v.matching_weight(m);
        if best.as_ref().map_or(true, |b| w > *b) {
            best = Some(w.clone());
        }
        weights.push(w);
    }
    let best = best.ok_or(Error::InvalidInput("empty ground set".into()))?;
    Ok(all
        .into_iter()
        .zip(weights)
        .filter(|(_, w)| *w == best)
        .map(|(m, _)| {
            let p = m.parity();
            (m, p)
        })
        .collect())
}

fn check_prevariety_regime(n: usize, k: usize) -> Result<()> {
    if k == 0 {
        return Err(Error::InvalidInput("k must be at least 1".into()));
    }
    if n < 2 * k + 2 {
        return Err(Error::RegimeTooSmall { n, k, min: 2 * k + 2 });
    }
    Ok(())
}

fn tie_on_subset(v: &WeightVector, u: &[usize]) -> bool {
    max_matchings(v, u).map(|m| m.len() >= 2).unwrap_or(false)
}

/// Membership in the tropical prevariety: on every `(2k+2)`-subset the
/// maximum matching weight is attained at least twice.
pub fn in_prevariety(v: &WeightVector, k: usize) -> Result<bool> {
    check_prevariety_regime(v.n(), k)?;
    let v = v.to_v();
    let subsets = vertex_subsets(v.n(), 2 * k + 2);
    Ok(par_all(&subsets, |u| tie_on_subset(&v, u)))
}

/// Sequential variant of [`in_prevariety`], kept for comparison benchmarks.
pub fn in_prevariety_seq(v: &WeightVector, k: usize) -> Result<bool> {
    check_prevariety_regime(v.n(), k)?;
    let v = v.to_v();
    let subsets = vertex_subsets(v.n(), 2 * k + 2);
    Ok(seq_all(&subsets, |u| tie_on_subset(&v, u)))
}

fn in_cone_any_regime(v: &WeightVector, k: usize) -> Result<bool> {
    if v.n() == 2 * k + 2 {
        in_grobner_cone_cycles(v, k)
    } else {
        in_grobner_cone(v, k)
    }
}

/// Membership in the crossing-free part: inside the weight cone and in the
/// prevariety. For `n >= 2k+3` this is decided twice — directly, and via the
/// support of the `w` coordinates being `(k+1)`-free — and the two routes
/// must agree.
pub fn in_pv_plus(v: &WeightVector, k: usize) -> Result<bool> {
    check_prevariety_regime(v.n(), k)?;
    let n = v.n();
    if !in_cone_any_regime(v, k)? {
        return Ok(false);
    }
    let route_a = in_prevariety(v, k)?;
    if n == 2 * k + 2 {
        return Ok(route_a);
    }
    let w = v.to_w();
    let relevant_support: Vec<Edge> = w
        .support()
        .into_iter()
        .filter(|e| e.is_relevant(n, k))
        .collect();
    let route_b = is_k_free(&EdgeSet::new(n, relevant_support)?, k);
    if route_a != route_b {
        return Err(Error::VerificationFailed(format!(
            "prevariety membership ({route_a}) and free-support test ({route_b}) disagree on {v}"
        )));
    }
    Ok(route_a)
}

/// The matching obtained from the crossing matching of `u` by swapping the
/// consecutive crossing edges at positions `l, l+1` (cyclically).
fn consecutive_swap(u: &[usize], l: usize) -> Result<Matching> {
    let m = u.len();
    let half = m / 2;
    let at = |idx: usize| u[idx % m];
    let mut pairs: Vec<Edge> = (0..half)
        .map(|i| Edge::new(at(i), at(i + half)))
        .collect::<Result<_>>()?;
    // remove {a_l, a_{l+half}} and {a_{l+1}, a_{l+half+1}}, insert the pair
    // that does not recreate a crossing at those positions
    let e1 = Edge::new(at(l), at(l + half))?;
    let e2 = Edge::new(at(l + 1), at(l + half + 1))?;
    pairs.retain(|e| *e != e1 && *e != e2);
    pairs.push(Edge::new(at(l), at(l + half + 1))?);
    pairs.push(Edge::new(at(l + 1), at(l + half))?);
    Matching::new(pairs)
}

/// For `v` in the crossing-free part and `|u| = 2k+2`: the crossing matching
/// of `u` attains the maximum, and so does one of its consecutive swaps.
pub fn second_max_is_swap(v: &WeightVector, k: usize, u: &[usize]) -> Result<bool> {
    if u.len() != 2 * k + 2 {
        return Err(Error::InvalidInput(format!(
            "subset size must be 2k+2 = {}, got {}",
            2 * k + 2,
            u.len()
        )));
    }
    if !in_pv_plus(v, k)? {
        return Err(Error::InvalidInput(
            "second_max_is_swap requires a vector in the crossing-free part".into(),
        ));
    }
    let mut u = u.to_vec();
    u.sort_unstable();
    let maxm = max_matchings(v, &u)?;
    let cross = crossing_matching(&u)?;
    if !maxm.iter().any(|(m, _)| *m == cross) {
        return Ok(false);
    }
    for l in 0..u.len() {
        let swapped = consecutive_swap(&u, l)?;
        if swapped != cross && maxm.iter().any(|(m, _)| *m == swapped) {
            return Ok(true);
        }
    }
    Ok(false)
}

fn balanced_on_subset(v: &WeightVector, u: &[usize]) -> bool {
    match max_matchings(v, u) {
        Ok(ms) => {
            let even = ms.iter().filter(|(_, p)| *p == Parity::Even).count();
            even * 2 == ms.len()
        }
        Err(_) => false,
    }
}

/// Sign-balance certificate: on every `(2k+2)`-subset the maximum matchings
/// split evenly between the two parities. Equivalently the leading form of
/// each sub-Pfaffian vanishes at the all-ones point, which witnesses
/// membership in the totally positive part.
pub fn is_balanced(v: &WeightVector, k: usize) -> Result<bool> {
    check_prevariety_regime(v.n(), k)?;
    let v = v.to_v();
    let subsets = vertex_subsets(v.n(), 2 * k + 2);
    Ok(par_all(&subsets, |u| balanced_on_subset(&v, u)))
}

/// Sequential variant of [`is_balanced`], kept for comparison benchmarks.
pub fn is_balanced_seq(v: &WeightVector, k: usize) -> Result<bool> {
    check_prevariety_regime(v.n(), k)?;
    let v = v.to_v();
    let subsets = vertex_subsets(v.n(), 2 * k + 2);
    Ok(seq_all(&subsets, |u| balanced_on_subset(&v, u)))
}

fn permutations(m: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    let mut cur: Vec<usize> = Vec::with_capacity(m);
    let mut used = vec![false; m];
    fn rec(m: usize, cur: &mut Vec<usize>, used: &mut [bool], out: &mut Vec<Vec<usize>>) {
        if cur.len() == m {
            out.push(cur.clone());
            return;
        }
        for x in 0..m {
            if !used[x] {
                used[x] = true;
                cur.push(x);
                rec(m, cur, used, out);
                cur.pop();
                used[x] = false;
            }
        }
    }
    rec(m, &mut cur, &mut used, &mut out);
    out
}

/// Maximum over permutations of the diagonal-product weight, and whether it
/// is attained at least twice. An all-bottom maximum reports a tie.
pub fn tropical_determinant(m: &TropicalMatrix) -> Result<(TropicalScalar, bool)> {
    if m.rows() != m.cols() {
        return Err(Error::NotSquare { rows: m.rows(), cols: m.cols() });
    }
    let size = m.rows();
    let mut best = TropicalScalar::bottom();
    let mut count = 0usize;
    for perm in permutations(size) {
        let mut term = TropicalScalar::finite(Rat::zero());
        for (i, &j) in perm.iter().enumerate() {
            term = term.add(m.get(i, j));
        }
        if term.is_bottom() {
            continue;
        }
        if best.is_bottom() || term.0 > best.0 {
            best = term;
            count = 1;
        } else if term == best {
            count += 1;
        }
    }
    if best.is_bottom() {
        // no finite permutation at all: degenerate, counted as singular
        return Ok((TropicalScalar::bottom(), true));
    }
    Ok((best, count >= 2))
}

/// Whether the square matrix is tropically regular: the determinant maximum
/// is finite and attained exactly once.
pub fn is_tropically_regular(m: &TropicalMatrix) -> Result<bool> {
    let (val, tie) = tropical_determinant(m)?;
    Ok(!val.is_bottom() && !tie)
}

/// Largest size of a tropically regular square minor.
pub fn tropical_rank(m: &TropicalMatrix) -> usize {
    let maxr = m.rows().min(m.cols());
    let mut best = 0;
    for r in 1..=maxr {
        let row_sets = vertex_subsets(m.rows(), r);
        let col_sets = vertex_subsets(m.cols(), r);
        let mut regular = false;
        'outer: for rs in &row_sets {
            let rs0: Vec<usize> = rs.iter().map(|x| x - 1).collect();
            for cs in &col_sets {
                let cs0: Vec<usize> = cs.iter().map(|x| x - 1).collect();
                let minor = m.minor(&rs0, &cs0);
                if is_tropically_regular(&minor).unwrap_or(false) {
                    regular = true;
                    break 'outer;
                }
            }
        }
        if regular {
            best = r;
        } else {
            break;
        }
    }
    best
}

/// Edge-indexed vector over the tropical semiring, used for the symmetrized
/// embedding of a rectangular matrix.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct TropicalWeightVector {
    pub n: usize,
    pub entries: BTreeMap<String, TropicalScalar>,
}

impl TropicalWeightVector {
    /// Conversion to an ordinary weight vector; fails when a bottom entry is
    /// present.
    pub fn to_weight_vector(&self) -> Result<WeightVector> {
        let mut entries = Vec::new();
        for (key, val) in &self.entries {
            let (i, j) = key
                .split_once(',')
                .ok_or_else(|| Error::InvalidInput(format!("bad edge key {key}")))?;
            let e = Edge::new(
                i.parse().map_err(|_| Error::InvalidInput("bad edge key".into()))?,
                j.parse().map_err(|_| Error::InvalidInput("bad edge key".into()))?,
            )?;
            match &val.0 {
                None => return Err(Error::UnexpectedBottom(format!("entry {key}"))),
                Some(r) => entries.push((e, r.clone())),
            }
        }
        WeightVector::from_entries(self.n, Basis::V, entries)
    }
}

/// The symmetrized embedding of an `n1 x n2` tropical matrix on `n1 + n2`
/// vertices: the bipartite block carries the matrix, the two diagonal blocks
/// carry `m_{i1} + m_{j1} - K` (respectively `m_{1i} + m_{1j} - K`), or
/// bottom when `K` is infinite.
pub fn sym_construction(m: &TropicalMatrix, k_const: Option<&Rat>) -> Result<TropicalWeightVector> {
    let (n1, n2) = (m.rows(), m.cols());
    let n = n1 + n2;
    if n1 == 0 || n2 == 0 {
        return Err(Error::DimensionMismatch("empty matrix".into()));
    }
    if k_const.is_some() && !m.is_finite() {
        return Err(Error::UnexpectedBottom(
            "finite K requires a finite-entried matrix".into(),
        ));
    }
    let mut entries = BTreeMap::new();
    for i in 1..=n {
        for j in i + 1..=n {
            let key = format!("{i},{j}");
            let val = if i <= n1 && j > n1 {
                m.get(i - 1, j - n1 - 1).clone()
            } else if j <= n1 {
                match k_const {
                    None => TropicalScalar::bottom(),
                    Some(kc) => m
                        .get(i - 1, 0)
                        .add(m.get(j - 1, 0))
                        .add(&TropicalScalar::finite(-kc.clone())),
                }
            } else {
                match k_const {
                    None => TropicalScalar::bottom(),
                    Some(kc) => m
                        .get(0, i - n1 - 1)
                        .add(m.get(0, j - n1 - 1))
                        .add(&TropicalScalar::finite(-kc.clone())),
                }
            };
            entries.insert(key, val);
        }
    }
    Ok(TropicalWeightVector { n, entries })
}

/// An offset large enough that, on every balanced `(2k+2)`-subset of the
/// symmetrized embedding, no maximum matching touches the diagonal blocks:
/// starts from `1 + 4(k+1)(1 + max |m|)` and doubles until the exhaustive
/// check passes.
pub fn choose_k_offset(m: &TropicalMatrix, k: usize) -> Result<Rat> {
    if !m.is_finite() {
        return Err(Error::UnexpectedBottom("choose_k_offset needs a finite matrix".into()));
    }
    let one = Rat::from_integer(1.into());
    let mut kc = &one
        + Rat::from_integer((4 * (k + 1) as i64).into()) * (&one + m.max_abs());
    for _ in 0..32 {
        if diagonal_free_on_balanced_subsets(m, k, &kc)? {
            return Ok(kc);
        }
        kc = &kc * Rat::from_integer(2.into());
    }
    Err(Error::NotGeneric("no sufficiently large offset found".into()))
}

/// Exhaustively verifies that every maximum matching of every balanced
/// `(2k+2)`-subset avoids the diagonal blocks of the symmetrized embedding.
pub fn diagonal_free_on_balanced_subsets(m: &TropicalMatrix, k: usize, kc: &Rat) -> Result<bool> {
    let (n1, n2) = (m.rows(), m.cols());
    let n = n1 + n2;
    if n < 2 * k + 2 {
        return Err(Error::RegimeTooSmall { n, k, min: 2 * k + 2 });
    }
    let v = sym_construction(m, Some(kc))?.to_weight_vector()?;
    let same_block = |e: &Edge| (e.i() <= n1) == (e.j() <= n1);
    for u in vertex_subsets(n, 2 * k + 2) {
        let left = u.iter().filter(|&&x| x <= n1).count();
        if left != k + 1 {
            continue;
        }
        for (mm, _) in max_matchings(&v, &u)? {
            if mm.pairs().iter().any(same_block) {
                return Ok(false);
            }
        }
    }
    Ok(true)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::coords::separation_vector;
    use crate::rational::rat;

    fn e(i: usize, j: usize) -> Edge {
        Edge::new(i, j).unwrap()
    }

    fn v_from(n: usize, pairs: &[((usize, usize), i64)]) -> WeightVector {
        WeightVector::from_entries(
            n,
            Basis::V,
            pairs.iter().map(|((i, j), c)| (e(*i, *j), rat(*c))),
        )
        .unwrap()
    }

    /// The fixed positive example: six unit entries on a hexagon.
    fn positive_example() -> WeightVector {
        v_from(
            6,
            &[
                ((1, 3), 1),
                ((2, 3), 1),
                ((2, 4), 1),
                ((4, 5), 1),
                ((5, 6), 1),
                ((1, 6), 1),
            ],
        )
    }

    #[test]
    fn max_matchings_examples() {
        let w = WeightVector::unit(4, Basis::W, e(1, 3)).unwrap();
        let v = separation_vector(&w).unwrap();
        let ms = max_matchings(&v, &[1, 2, 3, 4]).unwrap();
        assert_eq!(ms.len(), 2);
        let sets: Vec<&Matching> = ms.iter().map(|(m, _)| m).collect();
        assert!(sets.iter().any(|m| m.pairs() == [e(1, 2), e(3, 4)]));
        assert!(sets.iter().any(|m| m.pairs() == [e(1, 3), e(2, 4)]));
        for (m, _) in &ms {
            assert_eq!(v.matching_weight(m), rat(2));
        }

        let zero = WeightVector::zero(6, Basis::V);
        assert_eq!(max_matchings(&zero, &[1, 2, 3, 4, 5, 6]).unwrap().len(), 15);

        let ms = max_matchings(&positive_example(), &[1, 2, 3, 4, 5, 6]).unwrap();
        assert_eq!(ms.len(), 2);
        let sets: Vec<&Matching> = ms.iter().map(|(m, _)| m).collect();
        assert!(sets.iter().any(|m| m.pairs() == [e(1, 3), e(2, 4), e(5, 6)]));
        assert!(sets.iter().any(|m| m.pairs() == [e(1, 6), e(2, 3), e(4, 5)]));
    }

    #[test]
    fn prevariety_membership() {
        assert!(in_prevariety(&positive_example(), 2).unwrap());
        assert!(in_prevariety_seq(&positive_example(), 2).unwrap());

        // support containing a full crossing gives a strict maximum somewhere
        let w = WeightVector::from_entries(
            6,
            Basis::W,
            [(e(1, 4), rat(2)), (e(2, 5), rat(3)), (e(3, 6), rat(5))],
        )
        .unwrap();
        let v = separation_vector(&w).unwrap();
        assert!(!in_prevariety(&v, 2).unwrap());

        // lineality: every matching of every subset has equal weight
        let star = WeightVector::vertex_star(7, 4).unwrap();
        assert!(in_prevariety(&star, 2).unwrap());
    }

    #[test]
    fn pv_plus_routes() {
        // generic positive weights on a maximal crossing-free support
        let ts = crate::combinatorics::enumerate_k_triangulations(7, 2).unwrap();
        let t = &ts[3];
        let entries: Vec<(Edge, Rat)> = t
            .relevant(2)
            .into_iter()
            .enumerate()
            .map(|(i, edge)| (edge, rat(2 + 3 * i as i64)))
            .collect();
        let w = WeightVector::from_entries(7, Basis::W, entries).unwrap();
        let v = separation_vector(&w).unwrap();
        assert!(in_pv_plus(&v, 2).unwrap());

        // the positive example is in the prevariety but not the cone
        assert!(!in_pv_plus(&positive_example(), 2).unwrap());

        // a single relevant chord
        let w = WeightVector::unit(7, Basis::W, e(1, 4)).unwrap();
        let v = separation_vector(&w).unwrap();
        assert!(in_pv_plus(&v, 2).unwrap());
    }

    #[test]
    fn relabelled_positive_example_never_swaps() {
        // prevariety membership is permutation-invariant, and under every
        // vertex relabelling the two maximum matchings of the hexagon
        // example stay disjoint: the second maximum is never a consecutive
        // swap of the crossing. (Some relabellings do land on the boundary
        // of the weight cone, where the crossing ties for the maximum.)
        let v = positive_example();
        let mut on_boundary = 0;
        for perm in permutations(6) {
            let relabeled = WeightVector::from_entries(
                6,
                Basis::V,
                v.iter().map(|(e, r)| {
                    (
                        Edge::new(perm[e.i() - 1] + 1, perm[e.j() - 1] + 1).unwrap(),
                        r.clone(),
                    )
                }),
            )
            .unwrap();
            assert!(in_prevariety(&relabeled, 2).unwrap());
            let ms = max_matchings(&relabeled, &[1, 2, 3, 4, 5, 6]).unwrap();
            assert_eq!(ms.len(), 2, "perm {perm:?}");
            let (m1, _) = &ms[0];
            let (m2, _) = &ms[1];
            assert!(
                m1.pairs().iter().all(|e| !m2.contains_pair(e)),
                "maxima share a pair under perm {perm:?}"
            );
            if in_pv_plus(&relabeled, 2).unwrap() {
                on_boundary += 1;
                // membership here forces the crossing among the maxima yet
                // no consecutive swap joins it
                let cross = crate::coords::crossing_matching(&[1, 2, 3, 4, 5, 6]).unwrap();
                assert!(ms.iter().any(|(m, _)| *m == cross));
                assert!(!second_max_is_swap(&relabeled, 2, &[1, 2, 3, 4, 5, 6]).unwrap());
            }
        }
        assert!(on_boundary > 0, "some relabelling reaches the cone boundary");
    }

    #[test]
    fn second_max_examples() {
        let w = WeightVector::unit(4, Basis::W, e(1, 3)).unwrap();
        let v = separation_vector(&w).unwrap();
        assert!(second_max_is_swap(&v, 1, &[1, 2, 3, 4]).unwrap());

        let star = WeightVector::vertex_star(6, 2).unwrap();
        assert!(second_max_is_swap(&star, 1, &[1, 2, 4, 6]).unwrap());
        assert!(second_max_is_swap(&star, 2, &[1, 2, 3, 4, 5, 6]).unwrap());

        // precondition enforced
        assert!(second_max_is_swap(&positive_example(), 2, &[1, 2, 3, 4, 5, 6]).is_err());
    }

    #[test]
    fn balance_examples() {
        // the positive example: one matching of each parity
        assert!(is_balanced(&positive_example(), 2).unwrap());
        assert!(is_balanced_seq(&positive_example(), 2).unwrap());

        // generic triangulation support is balanced
        let ts = crate::combinatorics::enumerate_k_triangulations(6, 1).unwrap();
        let entries: Vec<(Edge, Rat)> = ts[5]
            .relevant(1)
            .into_iter()
            .enumerate()
            .map(|(i, edge)| (edge, rat(3 + 2 * i as i64)))
            .collect();
        let w = WeightVector::from_entries(6, Basis::W, entries).unwrap();
        let v = separation_vector(&w).unwrap();
        assert!(is_balanced(&v, 1).unwrap());

        // a unique maximum matching on some subset is unbalanced
        let w = WeightVector::from_entries(
            6,
            Basis::W,
            [(e(1, 4), rat(2)), (e(2, 5), rat(3)), (e(3, 6), rat(5))],
        )
        .unwrap();
        let v = separation_vector(&w).unwrap();
        assert!(!is_balanced(&v, 2).unwrap());
    }

    fn tm(rows: usize, cols: usize, cells: &[&str]) -> TropicalMatrix {
        let entries = cells
            .iter()
            .map(|s| {
                if *s == "-inf" {
                    TropicalScalar::bottom()
                } else {
                    TropicalScalar::finite(crate::rational::parse_rat(s).unwrap())
                }
            })
            .collect();
        TropicalMatrix::new(rows, cols, entries).unwrap()
    }

    #[test]
    fn determinant_examples() {
        let (val, tie) = tropical_determinant(&tm(2, 2, &["0", "0", "0", "0"])).unwrap();
        assert_eq!(val, TropicalScalar::finite(rat(0)));
        assert!(tie);

        let (val, tie) = tropical_determinant(&tm(2, 2, &["0", "-inf", "-inf", "0"])).unwrap();
        assert_eq!(val, TropicalScalar::finite(rat(0)));
        assert!(!tie);

        let (val, tie) = tropical_determinant(&tm(2, 2, &["0", "1", "1", "0"])).unwrap();
        assert_eq!(val, TropicalScalar::finite(rat(2)));
        assert!(!tie);

        let (val, tie) = tropical_determinant(&tm(1, 1, &["-inf"])).unwrap();
        assert!(val.is_bottom());
        assert!(tie);
    }

    #[test]
    fn rank_examples() {
        assert_eq!(tropical_rank(&tm(3, 3, &["0"; 9])), 1);
        let id4 = tm(
            4,
            4,
            &[
                "0", "-inf", "-inf", "-inf", "-inf", "0", "-inf", "-inf", "-inf", "-inf", "0",
                "-inf", "-inf", "-inf", "-inf", "0",
            ],
        );
        assert_eq!(tropical_rank(&id4), 4);
        assert_eq!(tropical_rank(&tm(2, 2, &["0"; 4])), 1);
        // invariance under adding a constant to a row
        let m = tm(3, 3, &["0", "1", "2", "5", "3", "4", "1", "0", "2"]);
        let shifted = tm(3, 3, &["7", "8", "9", "5", "3", "4", "1", "0", "2"]);
        assert_eq!(tropical_rank(&m), tropical_rank(&shifted));
    }

    #[test]
    fn sym_examples() {
        let v = sym_construction(&tm(1, 1, &["0"]), Some(&rat(5))).unwrap();
        assert_eq!(v.entries.get("1,2"), Some(&TropicalScalar::finite(rat(0))));
        assert_eq!(v.entries.len(), 1);

        let v = sym_construction(&tm(2, 2, &["0"; 4]), Some(&rat(10))).unwrap();
        for key in ["1,3", "1,4", "2,3", "2,4"] {
            assert_eq!(v.entries.get(key), Some(&TropicalScalar::finite(rat(0))), "{key}");
        }
        for key in ["1,2", "3,4"] {
            assert_eq!(v.entries.get(key), Some(&TropicalScalar::finite(rat(-10))), "{key}");
        }

        let v = sym_construction(&tm(2, 2, &["0"; 4]), None).unwrap();
        assert!(v.entries.get("1,2").unwrap().is_bottom());
        assert!(!v.entries.get("1,3").unwrap().is_bottom());
        assert!(v.to_weight_vector().is_err());
    }

    #[test]
    fn high_rank_matrix_leaves_prevariety() {
        // a tropically regular 3x3: its symmetrized vector must fail
        // membership at k = 2 for the certified offset
        let m = tm(3, 3, &["0", "0", "0", "0", "1", "3", "0", "3", "9"]);
        assert_eq!(tropical_rank(&m), 3);
        let kc = choose_k_offset(&m, 2).unwrap();
        let v = sym_construction(&m, Some(&kc)).unwrap().to_weight_vector().unwrap();
        assert!(!in_prevariety(&v, 2).unwrap());
    }

    #[test]
    fn offset_formula_and_membership() {
        let m = tm(2, 2, &["0"; 4]);
        let kc = choose_k_offset(&m, 1).unwrap();
        assert_eq!(kc, rat(9));
        let v = sym_construction(&m, Some(&kc)).unwrap().to_weight_vector().unwrap();
        assert_eq!(tropical_rank(&m), 1);
        assert!(in_prevariety(&v, 1).unwrap());

        // offset grows at most linearly with the entries
        let m10 = tm(2, 2, &["10", "10", "10", "10"]);
        let k1 = choose_k_offset(&m10, 1).unwrap();
        assert_eq!(k1, rat(1) + rat(8) * rat(11));

        // a singular 3x3 with spread entries
        let m = tm(3, 3, &["0", "1", "2", "1", "2", "3", "2", "3", "4"]);
        assert_eq!(tropical_rank(&m), 1);
        let kc = choose_k_offset(&m, 2).unwrap();
        let v = sym_construction(&m, Some(&kc)).unwrap().to_weight_vector().unwrap();
        assert!(in_prevariety(&v, 2).unwrap());
    }

    #[test]
    fn tropical_matrix_json_shape() {
        let m = tm(2, 3, &["0", "-inf", "1/2", "3", "-2", "0"]);
        let s = serde_json::to_string(&m).unwrap();
        assert_eq!(
            s,
            r#"{"rows":2,"cols":3,"entries":[["0","-inf","1/2"],["3","-2","0"]]}"#
        );
        let back: TropicalMatrix = serde_json::from_str(&s).unwrap();
        assert_eq!(back, m);
    }
}
