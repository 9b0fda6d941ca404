//! Exact classical algebra: Pfaffians of antisymmetric rational matrices,
//! signed-matching sub-Pfaffian polynomials with their leading forms under a
//! weight vector, the bilinear rank-`2k` parametrization and its Jacobian
//! (a hyperconnectivity matrix), randomized generic-rank certificates for the
//! row matroid, and unique low-rank completion of band data.

use std::collections::BTreeMap;
use std::fmt;

use num_bigint::BigInt;
use num_traits::{One, Zero};
use rand::Rng;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::de::Error as _;
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::combinatorics::{all_edges, matchings, max_crossing_size, Edge, EdgeSet};
use crate::coords::{Basis, WeightVector};
use crate::par::{par_map, seq_map};
use crate::rational::{determinant_bareiss, format_rat, matrix_rank, parse_rat, Rat};
use crate::{Error, Result};

/// Antisymmetric rational matrix stored by its strictly upper entries;
/// `A[j][i] = -A[i][j]`, zero diagonal, absent entries are zero.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct AntisymmetricMatrix {
    n: usize,
    upper: BTreeMap<(usize, usize), Rat>,
}

impl AntisymmetricMatrix {
    pub fn new(n: usize) -> Self {
        AntisymmetricMatrix { n, upper: BTreeMap::new() }
    }

    pub fn from_upper<I: IntoIterator<Item = ((usize, usize), Rat)>>(
        n: usize,
        entries: I,
    ) -> Result<Self> {
        let mut m = AntisymmetricMatrix::new(n);
        for ((i, j), r) in entries {
            if i == j {
                return Err(Error::DegenerateEdge(i));
            }
            if i > j {
                return Err(Error::InvalidInput(format!(
                    "upper entries need i < j, got ({i},{j})"
                )));
            }
            if j > n {
                return Err(Error::VertexOutOfRange { vertex: j, n });
            }
            if i == 0 {
                return Err(Error::InvalidInput("indices are 1-based".into()));
            }
            if !r.is_zero() {
                m.upper.insert((i, j), r);
            }
        }
        Ok(m)
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn get(&self, i: usize, j: usize) -> Rat {
        if i == j {
            return Rat::zero();
        }
        if i < j {
            self.upper.get(&(i, j)).cloned().unwrap_or_else(Rat::zero)
        } else {
            -self.upper.get(&(j, i)).cloned().unwrap_or_else(Rat::zero)
        }
    }

    pub fn set(&mut self, i: usize, j: usize, r: Rat) {
        debug_assert!(i != j && i >= 1 && i.max(j) <= self.n);
        let (key, val) = if i < j { ((i, j), r) } else { ((j, i), -r) };
        if val.is_zero() {
            self.upper.remove(&key);
        } else {
            self.upper.insert(key, val);
        }
    }

    pub fn upper(&self) -> &BTreeMap<(usize, usize), Rat> {
        &self.upper
    }

    pub fn to_dense(&self) -> Vec<Vec<Rat>> {
        (1..=self.n)
            .map(|i| (1..=self.n).map(|j| self.get(i, j)).collect())
            .collect()
    }

    /// The submatrix on the (1-based, sorted) index list, relabelled 1..m.
    pub fn submatrix(&self, idx: &[usize]) -> AntisymmetricMatrix {
        let mut m = AntisymmetricMatrix::new(idx.len());
        for (a, &i) in idx.iter().enumerate() {
            for (b, &j) in idx.iter().enumerate().skip(a + 1) {
                m.set(a + 1, b + 1, self.get(i, j));
            }
        }
        m
    }

    pub fn rank(&self) -> usize {
        matrix_rank(&self.to_dense())
    }
}

impl Serialize for AntisymmetricMatrix {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        #[derive(Serialize)]
        struct Repr {
            n: usize,
            upper: BTreeMap<String, String>,
        }
        let upper = self
            .upper
            .iter()
            .map(|((i, j), r)| (format!("{i},{j}"), format_rat(r)))
            .collect();
        Repr { n: self.n, upper }.serialize(s)
    }
}

impl<'de> Deserialize<'de> for AntisymmetricMatrix {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        #[derive(Deserialize)]
        struct Repr {
            n: usize,
            #[serde(default)]
            upper: BTreeMap<String, String>,
        }
        let repr = Repr::deserialize(d)?;
        let mut entries = Vec::new();
        for (key, val) in repr.upper {
            let (i, j) = key
                .split_once(',')
                .ok_or_else(|| D::Error::custom(format!("bad index key {key:?}")))?;
            let i: usize = i.trim().parse().map_err(D::Error::custom)?;
            let j: usize = j.trim().parse().map_err(D::Error::custom)?;
            entries.push(((i, j), parse_rat(&val).map_err(D::Error::custom)?));
        }
        AntisymmetricMatrix::from_upper(repr.n, entries).map_err(D::Error::custom)
    }
}

/// Signed sum over perfect matchings, computed by recursive expansion along
/// the first remaining row. Requires even size.
pub fn pfaffian(a: &AntisymmetricMatrix) -> Result<Rat> {
    if a.n() % 2 != 0 {
        return Err(Error::OddPfaffian(a.n()));
    }
    let idx: Vec<usize> = (1..=a.n()).collect();
    Ok(pf_rec(&idx, a))
}

fn pf_rec(idx: &[usize], a: &AntisymmetricMatrix) -> Rat {
    if idx.is_empty() {
        return Rat::one();
    }
    let first = idx[0];
    let mut total = Rat::zero();
    for t in 1..idx.len() {
        let coeff = a.get(first, idx[t]);
        if coeff.is_zero() {
            continue;
        }
        let rest: Vec<usize> = idx[1..]
            .iter()
            .copied()
            .filter(|&x| x != idx[t])
            .collect();
        let sub = pf_rec(&rest, a);
        let term = coeff * sub;
        if t % 2 == 1 {
            total += term;
        } else {
            total -= term;
        }
    }
    total
}

/// The same value as a plain signed sum over all matchings; the oracle for
/// [`pfaffian`].
pub fn pfaffian_matching_sum(a: &AntisymmetricMatrix) -> Result<Rat> {
    if a.n() % 2 != 0 {
        return Err(Error::OddPfaffian(a.n()));
    }
    let ground: Vec<usize> = (1..=a.n()).collect();
    let mut total = Rat::zero();
    for m in matchings(&ground)? {
        let mut prod = Rat::one();
        for e in m.pairs() {
            prod *= a.get(e.i(), e.j());
        }
        if m.parity().sign() < 0 {
            total -= prod;
        } else {
            total += prod;
        }
    }
    Ok(total)
}

/// Exact determinant via fraction-free elimination.
pub fn determinant(a: &AntisymmetricMatrix) -> Result<Rat> {
    determinant_bareiss(&a.to_dense())
}

/// A squarefree-by-construction product of edge variables with multiplicity,
/// sorted; the term monomials of (products of) sub-Pfaffians.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord)]
pub struct Monomial(Vec<Edge>);

impl Monomial {
    pub fn new(mut edges: Vec<Edge>) -> Self {
        edges.sort();
        Monomial(edges)
    }

    pub fn one() -> Self {
        Monomial(Vec::new())
    }

    pub fn edges(&self) -> &[Edge] {
        &self.0
    }

    pub fn degree(&self) -> usize {
        self.0.len()
    }

    pub fn mul(&self, other: &Monomial) -> Monomial {
        let mut v = self.0.clone();
        v.extend_from_slice(&other.0);
        Monomial::new(v)
    }

    /// Multiset divisibility.
    pub fn divides(&self, other: &Monomial) -> bool {
        let mut rest = other.0.clone();
        for e in &self.0 {
            match rest.iter().position(|x| x == e) {
                Some(p) => {
                    rest.remove(p);
                }
                None => return false,
            }
        }
        true
    }

    /// Quotient of multisets; caller must ensure divisibility.
    pub fn div(&self, other: &Monomial) -> Monomial {
        let mut rest = self.0.clone();
        for e in &other.0 {
            let p = rest.iter().position(|x| x == e).expect("divisible");
            rest.remove(p);
        }
        Monomial(rest)
    }

    /// Total weight under a `v`-basis weight vector, with multiplicity.
    pub fn weight(&self, v: &WeightVector) -> Rat {
        self.0.iter().map(|e| v.get(e)).sum()
    }

    pub fn distinct_edges(&self) -> Vec<Edge> {
        let mut d = self.0.clone();
        d.dedup();
        d
    }

    /// Whether the distinct edges contain `size` mutually crossing chords.
    pub fn contains_crossing(&self, size: usize, n: usize) -> bool {
        let set = EdgeSet::new(n, self.distinct_edges()).expect("valid edges");
        max_crossing_size(&set) >= size
    }
}

impl fmt::Display for Monomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0.is_empty() {
            return write!(f, "1");
        }
        for (idx, e) in self.0.iter().enumerate() {
            if idx > 0 {
                write!(f, "*")?;
            }
            write!(f, "x{}{}", e.i(), e.j())?;
        }
        Ok(())
    }
}

/// Sparse exact polynomial in the edge variables.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct SparsePolynomial {
    terms: BTreeMap<Monomial, Rat>,
}

impl SparsePolynomial {
    pub fn zero() -> Self {
        SparsePolynomial::default()
    }

    pub fn add_term(&mut self, m: Monomial, c: Rat) {
        if c.is_zero() {
            return;
        }
        use std::collections::btree_map::Entry;
        match self.terms.entry(m) {
            Entry::Vacant(slot) => {
                slot.insert(c);
            }
            Entry::Occupied(mut slot) => {
                *slot.get_mut() += c;
                if slot.get().is_zero() {
                    slot.remove();
                }
            }
        }
    }

    pub fn terms(&self) -> &BTreeMap<Monomial, Rat> {
        &self.terms
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn mul_monomial(&self, m: &Monomial, c: &Rat) -> SparsePolynomial {
        let mut out = SparsePolynomial::zero();
        for (mono, coeff) in &self.terms {
            out.add_term(mono.mul(m), coeff * c);
        }
        out
    }

    pub fn plus(&self, other: &SparsePolynomial) -> SparsePolynomial {
        let mut out = self.clone();
        for (m, c) in &other.terms {
            out.add_term(m.clone(), c.clone());
        }
        out
    }

    /// Value at the all-ones point: the coefficient sum.
    pub fn eval_all_ones(&self) -> Rat {
        self.terms.values().sum()
    }

    /// The terms of maximum `v`-weight.
    pub fn initial_form(&self, v: &WeightVector) -> SparsePolynomial {
        let v = v.to_v();
        let mut best: Option<Rat> = None;
        for m in self.terms.keys() {
            let w = m.weight(&v);
            if best.as_ref().map_or(true, |b| w > *b) {
                best = Some(w);
            }
        }
        let Some(best) = best else {
            return SparsePolynomial::zero();
        };
        let mut out = SparsePolynomial::zero();
        for (m, c) in &self.terms {
            if m.weight(&v) == best {
                out.add_term(m.clone(), c.clone());
            }
        }
        out
    }

    /// The unique maximum-weight term; errors when the maximum ties.
    pub fn leading_term(&self, v: &WeightVector) -> Result<(Monomial, Rat)> {
        let ini = self.initial_form(v);
        if ini.is_zero() {
            return Err(Error::InvalidInput("leading term of the zero polynomial".into()));
        }
        if ini.len() > 1 {
            return Err(Error::NotGeneric(format!(
                "weight vector ties {} monomials at the top",
                ini.len()
            )));
        }
        let (m, c) = ini.terms.into_iter().next().expect("nonempty");
        Ok((m, c))
    }
}

impl fmt::Display for SparsePolynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        for (idx, (m, c)) in self.terms.iter().enumerate() {
            if idx > 0 {
                write!(f, " + ")?;
            }
            write!(f, "({})*{}", format_rat(c), m)?;
        }
        Ok(())
    }
}

/// The signed-matching polynomial of the even vertex set `u`: one term per
/// perfect matching, coefficient `+1` or `-1` by crossing parity.
pub fn sub_pfaffian(u: &[usize]) -> Result<SparsePolynomial> {
    let mut out = SparsePolynomial::zero();
    for m in matchings(u)? {
        let sign = Rat::from_integer(BigInt::from(m.parity().sign()));
        out.add_term(Monomial::new(m.pairs().to_vec()), sign);
    }
    Ok(out)
}

/// The maximum-weight part of the signed-matching polynomial of `u`.
pub fn pfaffian_initial_form(v: &WeightVector, u: &[usize]) -> Result<SparsePolynomial> {
    Ok(sub_pfaffian(u)?.initial_form(v))
}

/// The S-polynomial of the signed-matching polynomials of `u1` and `u2` with
/// leading terms taken under `v`: both are scaled to cancel the least common
/// multiple of the two leading monomials.
pub fn s_polynomial(v: &WeightVector, u1: &[usize], u2: &[usize]) -> Result<SparsePolynomial> {
    let f = sub_pfaffian(u1)?;
    let g = sub_pfaffian(u2)?;
    let (mf, cf) = f.leading_term(v)?;
    let (mg, cg) = g.leading_term(v)?;
    // lcm of squarefree monomials: union of the edge sets
    let mut union = mf.edges().to_vec();
    for e in mg.edges() {
        if !union.contains(e) {
            union.push(*e);
        }
    }
    let lcm = Monomial::new(union);
    let lhs = f.mul_monomial(&lcm.div(&mf), &(Rat::one() / cf));
    let rhs = g.mul_monomial(&lcm.div(&mg), &(-Rat::one() / cg));
    Ok(lhs.plus(&rhs))
}

/// Whether the `v`-leading term of the S-polynomial of the two sub-Pfaffians
/// contains `k + 1` mutually crossing chords. A zero S-polynomial (in
/// particular `u1 == u2`) counts as vacuously true.
pub fn s_polynomial_leading_check(
    v: &WeightVector,
    u1: &[usize],
    u2: &[usize],
    k: usize,
) -> Result<bool> {
    let s = s_polynomial(v, u1, u2)?;
    if s.is_zero() {
        return Ok(true);
    }
    let (m, _) = s.leading_term(v)?;
    Ok(m.contains_crossing(k + 1, v.n()))
}

/// Structured certificate produced by [`ugb_counterexample`].
#[derive(Debug, Clone, Serialize)]
pub struct UgbReport {
    pub n: usize,
    pub weights: WeightVector,
    pub f_vertices: Vec<usize>,
    pub g_vertices: Vec<usize>,
    pub in_f: Vec<Edge>,
    pub in_g: Vec<Edge>,
    pub h_leading_monomial: Vec<Edge>,
    pub h_leading_weight: String,
    pub subsets_scanned: usize,
    pub divisor_exists: bool,
}

/// A fixed weight vector on nine vertices for which no six-point
/// signed-matching polynomial has its leading monomial dividing the leading
/// monomial of the combination `x12*x34*g - x47*x89*f`; the resulting leading
/// ideal therefore needs a polynomial outside the generating family.
pub fn ugb_counterexample() -> Result<UgbReport> {
    let n = 9;
    let e = |i, j| Edge::new(i, j).expect("valid");
    let two = Rat::from_integer(2.into());
    let one = Rat::one();
    let ten = Rat::from_integer(10.into());
    let v = WeightVector::from_entries(
        n,
        Basis::V,
        [
            (e(1, 2), two.clone()),
            (e(3, 4), two.clone()),
            (e(5, 6), two.clone()),
            (e(4, 7), two.clone()),
            (e(8, 9), two),
            (e(5, 8), one.clone()),
            (e(6, 9), one),
            (e(1, 7), ten.clone()),
            (e(2, 8), ten.clone()),
            (e(3, 9), ten),
        ],
    )?;

    let fu: Vec<usize> = (1..=6).collect();
    let gu: Vec<usize> = (4..=9).collect();
    let f = sub_pfaffian(&fu)?;
    let g = sub_pfaffian(&gu)?;
    let (mf, cf) = f.leading_term(&v)?;
    let (mg, cg) = g.leading_term(&v)?;
    if mf != Monomial::new(vec![e(1, 2), e(3, 4), e(5, 6)]) {
        return Err(Error::VerificationFailed(format!("unexpected leading term {mf}")));
    }
    if mg != Monomial::new(vec![e(4, 7), e(5, 6), e(8, 9)]) {
        return Err(Error::VerificationFailed(format!("unexpected leading term {mg}")));
    }

    // h = x12*x34*g - x47*x89*f, scaled so the top terms cancel exactly
    let m12_34 = Monomial::new(vec![e(1, 2), e(3, 4)]);
    let m47_89 = Monomial::new(vec![e(4, 7), e(8, 9)]);
    let h = g
        .mul_monomial(&m12_34, &(Rat::one() / cg))
        .plus(&f.mul_monomial(&m47_89, &(-Rat::one() / cf)));
    let (mh, _) = h.leading_term(&v)?;
    let expected = Monomial::new(vec![e(1, 2), e(3, 4), e(4, 7), e(5, 8), e(6, 9)]);
    if mh != expected {
        return Err(Error::VerificationFailed(format!(
            "leading monomial of the combination is {mh}"
        )));
    }
    let weight = mh.weight(&v.to_v());
    if weight != Rat::from_integer(8.into()) {
        return Err(Error::VerificationFailed(format!("leading weight {weight} != 8")));
    }

    // scan every six-point subset: does some maximum-weight matching divide?
    let subsets = crate::coords::vertex_subsets(n, 6);
    let mut divisor_exists = false;
    for u in &subsets {
        for (m, _) in crate::tropical::max_matchings(&v, u)? {
            if Monomial::new(m.pairs().to_vec()).divides(&mh) {
                divisor_exists = true;
            }
        }
    }
    if divisor_exists {
        return Err(Error::VerificationFailed(
            "a six-point leading monomial divides the combination's leading monomial".into(),
        ));
    }

    Ok(UgbReport {
        n,
        weights: v,
        f_vertices: fu,
        g_vertices: gu,
        in_f: mf.edges().to_vec(),
        in_g: mg.edges().to_vec(),
        h_leading_monomial: mh.edges().to_vec(),
        h_leading_weight: format_rat(&weight),
        subsets_scanned: subsets.len(),
        divisor_exists,
    })
}

/// The antisymmetric matrix `sum_l (a_l[i] b_l[j] - a_l[j] b_l[i])` built from
/// the interleaved vectors `a_1, b_1, ..., a_k, b_k`; its rank is at most `2k`.
pub fn parametrize(vectors: &[Vec<Rat>]) -> Result<AntisymmetricMatrix> {
    if vectors.is_empty() || vectors.len() % 2 != 0 {
        return Err(Error::DimensionMismatch(
            "need an even, positive number of vectors".into(),
        ));
    }
    let n = vectors[0].len();
    if vectors.iter().any(|v| v.len() != n) {
        return Err(Error::DimensionMismatch("vectors must share their length".into()));
    }
    let mut m = AntisymmetricMatrix::new(n);
    for i in 1..=n {
        for j in i + 1..=n {
            let mut x = Rat::zero();
            for pair in vectors.chunks_exact(2) {
                let (a, b) = (&pair[0], &pair[1]);
                x += &a[i - 1] * &b[j - 1] - &a[j - 1] * &b[i - 1];
            }
            m.set(i, j, x);
        }
    }
    Ok(m)
}

/// A configuration of `n` rational points in fixed dimension.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PointConfiguration {
    pub dim: usize,
    pub points: Vec<Vec<Rat>>,
}

impl PointConfiguration {
    pub fn new(dim: usize, points: Vec<Vec<Rat>>) -> Result<Self> {
        if points.iter().any(|p| p.len() != dim) {
            return Err(Error::DimensionMismatch("point dimensions differ".into()));
        }
        Ok(PointConfiguration { dim, points })
    }

    pub fn n(&self) -> usize {
        self.points.len()
    }
}

/// Row of the pair `{i, j}` (with `i < j`): point `j` in block `i`, the
/// negated point `i` in block `j`, zero elsewhere.
fn hyperconnectivity_row(p: &PointConfiguration, e: &Edge) -> Vec<Rat> {
    let (n, d) = (p.n(), p.dim);
    let mut row = vec![Rat::zero(); n * d];
    let (i, j) = (e.i(), e.j());
    for t in 0..d {
        row[(i - 1) * d + t] = p.points[j - 1][t].clone();
        row[(j - 1) * d + t] = -p.points[i - 1][t].clone();
    }
    row
}

/// The `C(n,2) x (n*d)` matrix whose rows, in lexicographic edge order, are
/// the hyperconnectivity rows of the configuration.
pub fn hyperconnectivity_matrix(p: &PointConfiguration) -> Vec<Vec<Rat>> {
    all_edges(p.n())
        .iter()
        .map(|e| hyperconnectivity_row(p, e))
        .collect()
}

/// The rows indexed by a chosen edge set.
pub fn hyperconnectivity_rows(p: &PointConfiguration, edges: &[Edge]) -> Vec<Vec<Rat>> {
    edges.iter().map(|e| hyperconnectivity_row(p, e)).collect()
}

/// The Jacobian of [`parametrize`] at the given vectors, rows in
/// lexicographic edge order, columns grouped per vertex as
/// `(a_1, b_1, ..., a_k, b_k)`. Coincides with the hyperconnectivity matrix
/// of the configuration `p_x = (b_1[x], -a_1[x], ..., b_k[x], -a_k[x])`.
pub fn parametrization_jacobian(vectors: &[Vec<Rat>]) -> Result<Vec<Vec<Rat>>> {
    if vectors.is_empty() || vectors.len() % 2 != 0 {
        return Err(Error::DimensionMismatch(
            "need an even, positive number of vectors".into(),
        ));
    }
    let k = vectors.len() / 2;
    let n = vectors[0].len();
    let d = 2 * k;
    let mut rows = Vec::new();
    for e in all_edges(n) {
        let (i, j) = (e.i(), e.j());
        let mut row = vec![Rat::zero(); n * d];
        for l in 0..k {
            let a = &vectors[2 * l];
            let b = &vectors[2 * l + 1];
            // block i: d/d a_l[i] = b_l[j], d/d b_l[i] = -a_l[j]
            row[(i - 1) * d + 2 * l] = b[j - 1].clone();
            row[(i - 1) * d + 2 * l + 1] = -a[j - 1].clone();
            // block j: d/d a_l[j] = -b_l[i], d/d b_l[j] = a_l[i]
            row[(j - 1) * d + 2 * l] = -b[i - 1].clone();
            row[(j - 1) * d + 2 * l + 1] = a[i - 1].clone();
        }
        rows.push(row);
    }
    Ok(rows)
}

const COORD_BOUND: i64 = 1 << 20;

fn random_configuration(n: usize, dim: usize, rng: &mut ChaCha8Rng) -> PointConfiguration {
    let points = (0..n)
        .map(|_| {
            (0..dim)
                .map(|_| Rat::from_integer(rng.gen_range(-COORD_BOUND..=COORD_BOUND).into()))
                .collect()
        })
        .collect();
    PointConfiguration { dim, points }
}

fn rank_one_trial(s: &EdgeSet, k: usize, seed: u64) -> usize {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let p = random_configuration(s.n(), 2 * k, &mut rng);
    matrix_rank(&hyperconnectivity_rows(&p, s.edges()))
}

/// Best rank of the rows of `s` over `trials` random configurations in
/// dimension `2k`: a probabilistic lower-bound certificate for the generic
/// rank, which it attains with overwhelming probability.
pub fn matroid_rank(s: &EdgeSet, k: usize, trials: usize, seed: u64) -> usize {
    let seeds: Vec<u64> = (0..trials as u64).map(|t| seed ^ t.wrapping_mul(0x9e3779b97f4a7c15)).collect();
    par_map(&seeds, |&t| rank_one_trial(s, k, t)).into_iter().max().unwrap_or(0)
}

/// Sequential variant of [`matroid_rank`], kept for comparison benchmarks.
pub fn matroid_rank_seq(s: &EdgeSet, k: usize, trials: usize, seed: u64) -> usize {
    let seeds: Vec<u64> = (0..trials as u64).map(|t| seed ^ t.wrapping_mul(0x9e3779b97f4a7c15)).collect();
    seq_map(&seeds, |&t| rank_one_trial(s, k, t)).into_iter().max().unwrap_or(0)
}

/// The band pattern on `[n]` for parameter `k`: every pair whose smaller
/// index is at most `2k`.
pub fn band_pattern(n: usize, k: usize) -> Vec<(usize, usize)> {
    let mut out = Vec::new();
    for i in 1..=(2 * k).min(n) {
        for j in i + 1..=n {
            out.push((i, j));
        }
    }
    out
}

/// Unique rank-`2k` antisymmetric completion of band data: the entries with a
/// row index in the first `2k` rows are prescribed, and each remaining entry
/// `(i, j)` is solved from the vanishing of the signed-matching sum on
/// `[2k] ∪ {i, j}`, which is linear in it. Requires the leading `2k x 2k`
/// matching sum to be nonzero.
pub fn complete_band(
    known: &BTreeMap<(usize, usize), Rat>,
    n: usize,
    k: usize,
) -> Result<AntisymmetricMatrix> {
    if n < 2 * k + 1 {
        return Err(Error::RegimeTooSmall { n, k, min: 2 * k + 1 });
    }
    let pattern = band_pattern(n, k);
    for key in known.keys() {
        if !(key.0 < key.1 && key.1 <= n) {
            return Err(Error::BandPatternMismatch(format!("bad index pair {key:?}")));
        }
        if key.0 > 2 * k {
            return Err(Error::BandPatternMismatch(format!(
                "entry {key:?} lies outside the first {} rows",
                2 * k
            )));
        }
    }
    for key in &pattern {
        if !known.contains_key(key) {
            return Err(Error::BandPatternMismatch(format!("missing entry {key:?}")));
        }
    }

    let mut m = AntisymmetricMatrix::new(n);
    for (&(i, j), r) in known {
        m.set(i, j, r.clone());
    }
    let lead: Vec<usize> = (1..=2 * k).collect();
    let lead_pf = pfaffian(&m.submatrix(&lead))?;
    if lead_pf.is_zero() {
        return Err(Error::NonGenericBand);
    }

    for i in 2 * k + 1..=n {
        for j in i + 1..=n {
            let mut idx = lead.clone();
            idx.push(i);
            idx.push(j);
            let mut sub = m.submatrix(&idx);
            // the unknown sits at relabelled position (2k+1, 2k+2)
            sub.set(2 * k + 1, 2 * k + 2, Rat::zero());
            let b = pfaffian(&sub)?;
            sub.set(2 * k + 1, 2 * k + 2, Rat::one());
            let a = pfaffian(&sub)? - &b;
            if a.is_zero() {
                return Err(Error::NonGenericBand);
            }
            m.set(i, j, -b / a);
        }
    }

    if m.rank() > 2 * k {
        return Err(Error::VerificationFailed(format!(
            "completed matrix has rank {} > {}",
            m.rank(),
            2 * k
        )));
    }
    Ok(m)
}
