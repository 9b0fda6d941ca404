//! Projection of the crossing-free part to a complete simplicial fan in
//! `R^{n-3}`, one fan per seed triangulation: integer sign vectors of edges
//! against the seed's flip quadrilaterals, exact linear projection with the
//! lineality space as kernel, flip-circuit validation with explicit
//! right-hand sides, and the resulting simple polytope.
//!
//! The sign vector of an edge records, along the accordion of seed edges it
//! crosses, where that path turns one way or the other; the projection of the
//! corresponding `w` basis unit reproduces the same vector, which is the
//! exact content of the validation tests.

use std::collections::BTreeMap;

use num_traits::{One, Signed, Zero};
use serde::Serialize;

use crate::combinatorics::{all_edges, enumerate_k_triangulations, is_k_triangulation, Edge, EdgeSet};
use crate::coords::{Basis, WeightVector};
use crate::cyclic::norm;
use crate::par::{par_map, seq_map};
use crate::rational::{format_rat, matrix_rank, solve_square, unique_column_dependence, Rat};
use crate::tropical::in_pv_plus;
use crate::{Error, Result};

/// The quadrilateral of a diagonal: `(u, x, v, y)` where `{u,v}` is the
/// diagonal, `x` is the apex on the arc from `u` up to `v` and `y` the apex
/// on the complementary arc.
fn quadrilateral(t: &EdgeSet, delta: &Edge) -> Result<(usize, usize, usize, usize)> {
    if !t.contains(delta) {
        return Err(Error::EdgeNotInGraph(*delta));
    }
    let (u, v) = (delta.i(), delta.j());
    let mut inner = None;
    let mut outer = None;
    for x in 1..=t.n() {
        if x == u || x == v {
            continue;
        }
        let a = Edge::new(u.min(x), u.max(x)).expect("distinct");
        let b = Edge::new(v.min(x), v.max(x)).expect("distinct");
        if t.contains(&a) && t.contains(&b) {
            if u < x && x < v {
                inner = Some(x);
            } else {
                outer = Some(x);
            }
        }
    }
    match (inner, outer) {
        (Some(x), Some(y)) => Ok((u, x, v, y)),
        _ => Err(Error::InvalidInput(format!(
            "{delta} is not an interior diagonal of the triangulation"
        ))),
    }
}

/// Whether the chord drawn from just after vertex `a` to just after vertex
/// `b` crosses the edge `s`: exactly one endpoint of `s` lies on the cyclic
/// arc `a+1 ..= b`.
fn separates_shifted(s: &Edge, a: usize, b: usize, n: usize) -> bool {
    let from = norm(a as i64 + 1, n);
    let inside = |x: usize| crate::cyclic::arc_contains(x, from, b, n);
    inside(s.i()) != inside(s.j())
}

/// Crossing sign of the edge `{a,b}` against the diagonal `delta` of the seed
/// triangulation: `+1` or `-1` when the edge traverses the quadrilateral of
/// `delta` through one or the other pair of opposite sides, `0` otherwise.
pub fn crossing_sign(t: &EdgeSet, delta: &Edge, edge: &Edge) -> Result<i8> {
    let n = t.n();
    if delta.cyclic_len(n) < 2 {
        return Err(Error::InvalidInput(format!("{delta} is a boundary edge, not a diagonal")));
    }
    let (u, x, v, y) = quadrilateral(t, delta)?;
    let (a, b) = (edge.i(), edge.j());
    let side = |p: usize, q: usize| {
        let e = Edge::new(p.min(q), p.max(q)).expect("distinct");
        separates_shifted(&e, a, b, n)
    };
    let forward = side(u, x) && side(v, y);
    let backward = side(x, v) && side(y, u);
    Ok(match (forward, backward) {
        (true, false) => 1,
        (false, true) => -1,
        (false, false) => 0,
        (true, true) => unreachable!("a chord cannot cross all four sides"),
    })
}

/// Integer sign vector of an edge with respect to a seed triangulation,
/// indexed by the seed's diagonals in lexicographic order.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct GVector {
    pub edge: Edge,
    pub diagonals: Vec<Edge>,
    pub coords: Vec<i8>,
}

/// Validates that `t` is a triangulation (a maximal crossing-free graph).
fn check_triangulation(t: &EdgeSet) -> Result<()> {
    if t.n() < 4 || !is_k_triangulation(t, 1) {
        return Err(Error::NotATriangulation { n: t.n(), k: 1 });
    }
    Ok(())
}

/// The crossing-sign vector of `edge` over all diagonals of `t`.
pub fn g_vector(t: &EdgeSet, edge: &Edge) -> Result<GVector> {
    check_triangulation(t)?;
    let diagonals = t.relevant(1);
    let coords = diagonals
        .iter()
        .map(|d| crossing_sign(t, d, edge))
        .collect::<Result<Vec<i8>>>()?;
    Ok(GVector { edge: *edge, diagonals, coords })
}

/// Exact projector onto the seed coordinates: restriction to the entries of
/// `t` followed by the linear map killing the lineality space and sending the
/// restricted basis unit of each diagonal to the corresponding standard basis
/// vector.
pub struct Projector {
    t: EdgeSet,
    t_edges: Vec<Edge>,
    diagonals: Vec<Edge>,
    /// Row-major matrix whose columns are the restricted basis units.
    basis_rows: Vec<Vec<Rat>>,
}

impl Projector {
    pub fn new(t: &EdgeSet) -> Result<Self> {
        check_triangulation(t)?;
        let t_edges = t.edges().to_vec();
        let diagonals = t.relevant(1);
        let mut basis_columns: Vec<Vec<Rat>> = Vec::with_capacity(t_edges.len());
        for e in &t_edges {
            let w = crate::coords::separation_vector(&WeightVector::unit(t.n(), Basis::W, *e)?)?;
            basis_columns.push(t_edges.iter().map(|c| w.get(c)).collect());
        }
        let basis_rows: Vec<Vec<Rat>> = (0..t_edges.len())
            .map(|r| basis_columns.iter().map(|c| c[r].clone()).collect())
            .collect();
        // The restricted units must form a basis; this doubles as a check of
        // the dimension count of the lineality decomposition.
        if matrix_rank(&basis_rows) != t_edges.len() {
            return Err(Error::VerificationFailed(
                "restricted basis units are linearly dependent".into(),
            ));
        }
        Ok(Projector { t: t.clone(), t_edges, diagonals, basis_rows })
    }

    pub fn seed(&self) -> &EdgeSet {
        &self.t
    }

    pub fn diagonals(&self) -> &[Edge] {
        &self.diagonals
    }

    /// The projection of an arbitrary vector, without the membership check.
    pub fn apply(&self, v: &WeightVector) -> Result<Vec<Rat>> {
        let v = v.to_v();
        let rhs: Vec<Rat> = self.t_edges.iter().map(|e| v.get(e)).collect();
        let coeffs = solve_square(&self.basis_rows, &rhs)
            .ok_or_else(|| Error::VerificationFailed("projection basis became singular".into()))?;
        Ok(self
            .diagonals
            .iter()
            .map(|d| {
                let pos = self.t_edges.binary_search(d).expect("diagonal is a seed edge");
                coeffs[pos].clone()
            })
            .collect())
    }
}

/// Projection of a vector of the crossing-free part to the seed coordinates;
/// errors when `v` is not in the crossing-free part.
pub fn project(v: &WeightVector, t: &EdgeSet) -> Result<Vec<Rat>> {
    if !in_pv_plus(v, 1)? {
        return Err(Error::OutsidePositivePart(format!("{v}")));
    }
    Projector::new(t)?.apply(v)
}

/// A complete simplicial fan given by integer ray generators and one cone per
/// triangulation.
#[derive(Debug, Clone, Serialize)]
pub struct FanDescription {
    pub dim: usize,
    pub rays: Vec<Vec<i64>>,
    /// Edge label attached to each ray (the first edge producing it).
    pub ray_labels: Vec<Edge>,
    /// One cone per triangulation, as sorted ray indices.
    pub cones: Vec<Vec<usize>>,
}

fn ray_of(g: &GVector) -> Vec<i64> {
    g.coords.iter().map(|&c| c as i64).collect()
}

/// The fan with one ray per relevant edge (sign vectors against the seed) and
/// one simplicial cone per triangulation.
pub fn build_fan(t: &EdgeSet) -> Result<FanDescription> {
    check_triangulation(t)?;
    let n = t.n();
    let dim = n - 3;
    let mut rays: Vec<Vec<i64>> = Vec::new();
    let mut ray_labels: Vec<Edge> = Vec::new();
    let mut index: BTreeMap<Edge, usize> = BTreeMap::new();
    for e in all_edges(n).into_iter().filter(|e| e.cyclic_len(n) >= 2) {
        let ray = ray_of(&g_vector(t, &e)?);
        match rays.iter().position(|r| *r == ray) {
            Some(pos) => {
                index.insert(e, pos);
            }
            None => {
                rays.push(ray);
                ray_labels.push(e);
                index.insert(e, rays.len() - 1);
            }
        }
    }
    let mut cones = Vec::new();
    for t2 in enumerate_k_triangulations(n, 1)? {
        let mut cone: Vec<usize> = t2.relevant(1).iter().map(|d| index[d]).collect();
        cone.sort_unstable();
        cone.dedup();
        if cone.len() != dim {
            return Err(Error::VerificationFailed(format!(
                "cone of {t2:?} is not simplicial"
            )));
        }
        let cols: Vec<Vec<Rat>> = (0..dim)
            .map(|r| cone.iter().map(|&c| Rat::from_integer(rays[c][r].into())).collect())
            .collect();
        if matrix_rank(&cols) != dim {
            return Err(Error::VerificationFailed(format!(
                "rays of the cone of {t2:?} are dependent"
            )));
        }
        cones.push(cone);
    }
    Ok(FanDescription { dim, rays, ray_labels, cones })
}

/// Right-hand side attached to the facet of an edge: `(j - i) * (n + i - j)`.
pub fn facet_rhs(e: &Edge, n: usize) -> Rat {
    let l = (e.j() - e.i()) as i64;
    Rat::from_integer((l * (n as i64 - l)).into())
}

/// The diagonal replacing `delta` when it is flipped inside its quadrilateral.
pub fn flip(t: &EdgeSet, delta: &Edge) -> Result<(EdgeSet, Edge)> {
    let (u, x, v, y) = quadrilateral(t, delta)?;
    let _ = (u, v);
    let inserted = Edge::new(x.min(y), x.max(y))?;
    let mut edges: Vec<Edge> = t.edges().iter().filter(|e| *e != delta).copied().collect();
    edges.push(inserted);
    Ok((EdgeSet::new(t.n(), edges)?, inserted))
}

/// One flip between adjacent cones: the unique linear dependence among the
/// union of their rays, normalized to be positive on the two exchanged rays,
/// and the induced right-hand-side inequality.
#[derive(Debug, Clone, Serialize)]
pub struct CircuitCheck {
    pub removed: Edge,
    pub inserted: Edge,
    /// Edges supporting the circuit with their coefficients.
    pub support: Vec<(Edge, String)>,
    pub sign_pattern_ok: bool,
    pub rhs_sum: String,
    pub rhs_positive: bool,
}

/// Validation report for a fan: every flip circuit with its sign pattern and
/// right-hand-side check.
#[derive(Debug, Clone, Serialize)]
pub struct FanReport {
    pub n: usize,
    pub seed: Vec<Edge>,
    pub flips: usize,
    pub circuits: Vec<CircuitCheck>,
    pub all_ok: bool,
}

fn circuit_for_flip(
    n: usize,
    proj: &BTreeMap<Edge, Vec<Rat>>,
    t1: &EdgeSet,
    removed: &Edge,
    inserted: &Edge,
) -> Result<CircuitCheck> {
    let dim = n - 3;
    let mut support_edges: Vec<Edge> = t1
        .relevant(1)
        .into_iter()
        .filter(|d| d != removed)
        .collect();
    support_edges.push(*removed);
    support_edges.push(*inserted);
    // matrix with the union's rays as columns
    let cols: Vec<&Vec<Rat>> = support_edges.iter().map(|e| &proj[e]).collect();
    let m: Vec<Vec<Rat>> = (0..dim)
        .map(|r| cols.iter().map(|c| c[r].clone()).collect())
        .collect();
    let dep = unique_column_dependence(&m)
        .ok_or_else(|| Error::VerificationFailed("flip dependence is not one-dimensional".into()))?;

    let pos_removed = support_edges.len() - 2;
    let pos_inserted = support_edges.len() - 1;
    if dep[pos_removed].is_zero() || dep[pos_inserted].is_zero() {
        return Err(Error::VerificationFailed("not a circuit: an exchanged ray is absent".into()));
    }
    let scale = if dep[pos_removed].is_negative() {
        -Rat::one()
    } else {
        Rat::one()
    };
    let dep: Vec<Rat> = dep.into_iter().map(|c| c * &scale).collect();
    let sign_pattern_ok = dep[pos_inserted].is_positive();

    // the circuit must live on the flip quadrilateral
    let mut quad_vertices: Vec<usize> = removed.endpoints().into_iter().collect();
    quad_vertices.extend(inserted.endpoints());
    quad_vertices.sort_unstable();
    let wrong_support = support_edges.iter().zip(&dep).any(|(e, c)| {
        !c.is_zero()
            && !(quad_vertices.contains(&e.i()) && quad_vertices.contains(&e.j()))
    });
    if wrong_support {
        return Err(Error::VerificationFailed("not a circuit: support leaves the flip quadrilateral".into()));
    }

    let rhs_sum: Rat = support_edges
        .iter()
        .zip(&dep)
        .map(|(e, c)| c * facet_rhs(e, n))
        .sum();
    let support: Vec<(Edge, String)> = support_edges
        .iter()
        .zip(&dep)
        .filter(|(_, c)| !c.is_zero())
        .map(|(e, c)| (*e, format_rat(c)))
        .collect();
    Ok(CircuitCheck {
        removed: *removed,
        inserted: *inserted,
        support,
        sign_pattern_ok,
        rhs_positive: rhs_sum.is_positive(),
        rhs_sum: format_rat(&rhs_sum),
    })
}

fn validate_fan_impl(f: &FanDescription, t: &EdgeSet, parallel: bool) -> Result<FanReport> {
    check_triangulation(t)?;
    let n = t.n();
    // exact ray vectors per edge label
    let mut proj: BTreeMap<Edge, Vec<Rat>> = BTreeMap::new();
    for e in all_edges(n).into_iter().filter(|e| e.cyclic_len(n) >= 2) {
        let g = g_vector(t, &e)?;
        proj.insert(e, g.coords.iter().map(|&c| Rat::from_integer(c.into())).collect());
    }
    // agreement with the fan's integer rays
    for (ray, label) in f.rays.iter().zip(&f.ray_labels) {
        let expect: Vec<Rat> = ray.iter().map(|&c| Rat::from_integer(c.into())).collect();
        if proj[label] != expect {
            return Err(Error::VerificationFailed(format!(
                "fan ray for {label} does not match the seed"
            )));
        }
    }

    let triangulations = enumerate_k_triangulations(n, 1)?;
    let mut tasks: Vec<(EdgeSet, Edge, Edge)> = Vec::new();
    for t1 in &triangulations {
        for d in t1.relevant(1) {
            let (t2, inserted) = flip(t1, &d)?;
            // each unordered flip once
            if t1.edges() < t2.edges() {
                tasks.push((t1.clone(), d, inserted));
            }
        }
    }
    let run = |(t1, d, ins): &(EdgeSet, Edge, Edge)| circuit_for_flip(n, &proj, t1, d, ins);
    let circuits: Vec<Result<CircuitCheck>> = if parallel {
        par_map(&tasks, run)
    } else {
        seq_map(&tasks, run)
    };
    let mut out = Vec::with_capacity(circuits.len());
    for c in circuits {
        out.push(c?);
    }
    let all_ok = out.iter().all(|c| c.sign_pattern_ok && c.rhs_positive);
    Ok(FanReport {
        n,
        seed: t.edges().to_vec(),
        flips: out.len(),
        circuits: out,
        all_ok,
    })
}

/// Validates the fan built from `t`: for every flip between adjacent
/// triangulations, the unique ray dependence is a circuit supported on the
/// flip quadrilateral, positive on the exchanged rays, and the right-hand
/// sides sum positively against it.
pub fn validate_fan(f: &FanDescription, t: &EdgeSet) -> Result<FanReport> {
    validate_fan_impl(f, t, true)
}

/// Sequential variant of [`validate_fan`], kept for comparison benchmarks.
pub fn validate_fan_seq(f: &FanDescription, t: &EdgeSet) -> Result<FanReport> {
    validate_fan_impl(f, t, false)
}

/// H-representation of the polytope realizing the fan, together with its
/// vertices (one per triangulation) and the antiparallel facet pairs.
#[derive(Debug, Clone, Serialize)]
pub struct PolytopeH {
    pub dim: usize,
    /// `(facet edge, normal, rhs)` with the normal in the seed coordinates.
    pub inequalities: Vec<(Edge, Vec<i64>, String)>,
    /// One vertex per triangulation, in enumeration order.
    pub vertices: Vec<Vec<String>>,
    /// Pairs of facet labels with opposite normals, one pair per seed diagonal.
    pub parallel_pairs: Vec<(Edge, Edge)>,
}

/// The polytope with one facet per relevant edge (`g`-vector normals, shifted
/// product right-hand sides) and one simple vertex per triangulation.
pub fn associahedron_polytope(t: &EdgeSet) -> Result<PolytopeH> {
    check_triangulation(t)?;
    let n = t.n();
    let dim = n - 3;
    let labels: Vec<Edge> = all_edges(n)
        .into_iter()
        .filter(|e| e.cyclic_len(n) >= 2)
        .collect();
    let mut normals: BTreeMap<Edge, Vec<Rat>> = BTreeMap::new();
    let mut inequalities = Vec::new();
    for e in &labels {
        let g = g_vector(t, e)?;
        let normal: Vec<Rat> = g.coords.iter().map(|&c| Rat::from_integer(c.into())).collect();
        inequalities.push((*e, ray_of(&g), format_rat(&facet_rhs(e, n))));
        normals.insert(*e, normal);
    }

    let mut vertices = Vec::new();
    for t2 in enumerate_k_triangulations(n, 1)? {
        let diags = t2.relevant(1);
        let rows: Vec<Vec<Rat>> = diags.iter().map(|d| normals[d].clone()).collect();
        let rhs: Vec<Rat> = diags.iter().map(|d| facet_rhs(d, n)).collect();
        let x = solve_square(&rows, &rhs)
            .ok_or_else(|| Error::VerificationFailed("vertex system is singular".into()))?;
        // the vertex satisfies every other inequality strictly
        for e in &labels {
            let val: Rat = normals[e].iter().zip(&x).map(|(a, b)| a * b).sum();
            let bound = facet_rhs(e, n);
            if diags.contains(e) {
                if val != bound {
                    return Err(Error::VerificationFailed(format!(
                        "vertex of {t2:?} is not tight on {e}"
                    )));
                }
            } else if val >= bound {
                return Err(Error::VerificationFailed(format!(
                    "vertex of {t2:?} violates or saturates the facet of {e}"
                )));
            }
        }
        vertices.push(x.iter().map(format_rat).collect());
    }

    // every seed diagonal has an antiparallel partner among its rotations
    let mut parallel_pairs = Vec::new();
    for d in t.relevant(1) {
        let gneg: Vec<Rat> = normals[&d].iter().map(|c| -c.clone()).collect();
        let partner = [-1i64, 1]
            .into_iter()
            .map(|r| d.rotate(r, n))
            .find(|p| normals.get(p) == Some(&gneg));
        match partner {
            Some(p) => parallel_pairs.push((d, p)),
            None => {
                return Err(Error::VerificationFailed(format!(
                    "no rotated antiparallel facet for {d}"
                )))
            }
        }
    }

    Ok(PolytopeH { dim, inequalities, vertices, parallel_pairs })
}

/// OFF-format text for a three-dimensional polytope (`n = 6`): float vertex
/// coordinates, facets as vertex cycles ordered around each face.
pub fn polytope_off(p: &PolytopeH) -> Result<String> {
    if p.dim != 3 {
        return Err(Error::DimensionMismatch(format!(
            "OFF output needs dimension 3, got {}",
            p.dim
        )));
    }
    let verts: Vec<[f64; 3]> = p
        .vertices
        .iter()
        .map(|v| {
            let mut out = [0f64; 3];
            for (slot, s) in out.iter_mut().zip(v) {
                let r = crate::rational::parse_rat(s).expect("stored rationals parse");
                *slot = rat_to_f64(&r);
            }
            out
        })
        .collect();
    let mut faces: Vec<Vec<usize>> = Vec::new();
    for (_, normal, rhs) in &p.inequalities {
        let rhs = rat_to_f64(&crate::rational::parse_rat(rhs).expect("parse"));
        let nf: Vec<f64> = normal.iter().map(|&c| c as f64).collect();
        let mut on_face: Vec<usize> = Vec::new();
        for (idx, v) in verts.iter().enumerate() {
            let val: f64 = nf.iter().zip(v).map(|(a, b)| a * b).sum();
            if (val - rhs).abs() < 1e-9 {
                on_face.push(idx);
            }
        }
        if on_face.len() >= 3 {
            order_face_cycle(&verts, &nf, &mut on_face);
            faces.push(on_face);
        }
    }
    let mut out = String::from("OFF\n");
    out.push_str(&format!("{} {} 0\n", verts.len(), faces.len()));
    for v in &verts {
        out.push_str(&format!("{} {} {}\n", v[0], v[1], v[2]));
    }
    for f in &faces {
        out.push_str(&f.len().to_string());
        for idx in f {
            out.push_str(&format!(" {idx}"));
        }
        out.push('\n');
    }
    Ok(out)
}

fn rat_to_f64(r: &Rat) -> f64 {
    let num: f64 = r.numer().to_string().parse().unwrap_or(0.0);
    let den: f64 = r.denom().to_string().parse().unwrap_or(1.0);
    num / den
}

fn order_face_cycle(verts: &[[f64; 3]], normal: &[f64], face: &mut [usize]) {
    let c = face.iter().fold([0f64; 3], |mut acc, &i| {
        for t in 0..3 {
            acc[t] += verts[i][t] / face.len() as f64;
        }
        acc
    });
    // any direction orthogonal to the normal
    let mut u = [normal[1], -normal[0], 0.0];
    if u.iter().map(|x| x * x).sum::<f64>() < 1e-12 {
        u = [0.0, normal[2], -normal[1]];
    }
    let w = [
        normal[1] * u[2] - normal[2] * u[1],
        normal[2] * u[0] - normal[0] * u[2],
        normal[0] * u[1] - normal[1] * u[0],
    ];
    face.sort_by(|&a, &b| {
        let ang = |i: usize| {
            let d = [verts[i][0] - c[0], verts[i][1] - c[1], verts[i][2] - c[2]];
            let x: f64 = d.iter().zip(&u).map(|(p, q)| p * q).sum();
            let y: f64 = d.iter().zip(&w).map(|(p, q)| p * q).sum();
            y.atan2(x)
        };
        ang(a).partial_cmp(&ang(b)).expect("finite angles")
    });
}
