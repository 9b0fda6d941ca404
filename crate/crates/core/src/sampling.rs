//! Seeded random generators for exercising the exact machinery: maximal
//! `(k+1)`-crossing-free graphs by greedy completion, strictly positive
//! integer chord weights, and weight vectors with prescribed support shape.
//! Weights are drawn uniformly from `[1, 2^20]`; when a genericity condition
//! degenerates the draw is repeated, at most sixteen times.

use rand::seq::SliceRandom;
use rand::Rng;
use rand_chacha::ChaCha8Rng;

use crate::combinatorics::{
    all_edges, exists_mutual_crossing, irrelevant_edges, matchings, Edge, EdgeSet,
};
use crate::coords::{crossing_matching, separation_vector, vertex_subsets, Basis, WeightVector};
use crate::rational::Rat;
use crate::{Error, Result};

/// Upper bound for sampled integer weights.
pub const WEIGHT_BOUND: i64 = 1 << 20;

const RETRIES: usize = 16;

/// A maximal `(k+1)`-crossing-free graph obtained by inserting the relevant
/// chords in random order.
pub fn random_k_triangulation(n: usize, k: usize, rng: &mut ChaCha8Rng) -> Result<EdgeSet> {
    if n < 2 * k + 1 {
        return Err(Error::RegimeTooSmall { n, k, min: 2 * k + 1 });
    }
    let mut relevant: Vec<Edge> = all_edges(n)
        .into_iter()
        .filter(|e| e.is_relevant(n, k))
        .collect();
    relevant.shuffle(rng);
    let mut chosen: Vec<Edge> = Vec::new();
    for e in relevant {
        if !exists_mutual_crossing(&chosen, k, Some(&[e])) {
            chosen.push(e);
        }
    }
    let mut edges = irrelevant_edges(n, k);
    edges.extend(chosen);
    EdgeSet::new(n, edges)
}

/// Strictly positive integer weights on the given chords, in the `w` basis.
pub fn positive_weights_on(
    n: usize,
    edges: &[Edge],
    rng: &mut ChaCha8Rng,
) -> Result<WeightVector> {
    WeightVector::from_entries(
        n,
        Basis::W,
        edges
            .iter()
            .map(|e| (*e, Rat::from_integer(rng.gen_range(1..=WEIGHT_BOUND).into()))),
    )
}

fn distinct_matching_weights(v: &WeightVector, k: usize) -> bool {
    for u in vertex_subsets(v.n(), 2 * k + 2) {
        let mut weights: Vec<Rat> = matchings(&u)
            .expect("even subset")
            .iter()
            .map(|m| v.matching_weight(m))
            .collect();
        weights.sort();
        if weights.windows(2).any(|w| w[0] == w[1]) {
            return false;
        }
    }
    true
}

/// A four-point-positive vector (in the `v` basis) giving pairwise distinct
/// weights to the matchings of every `(2k+2)`-subset.
pub fn generic_fp_positive(n: usize, k: usize, rng: &mut ChaCha8Rng) -> Result<WeightVector> {
    let edges = all_edges(n);
    for _ in 0..RETRIES {
        let w = positive_weights_on(n, &edges, rng)?;
        let v = separation_vector(&w)?;
        if distinct_matching_weights(&v, k) {
            return Ok(v);
        }
    }
    Err(Error::NotGeneric(
        "no draw gave pairwise distinct matching weights".into(),
    ))
}

/// A vector (in the `v` basis) whose `w` support is the relevant part of a
/// random maximal `(k+1)`-crossing-free graph, with strictly positive weights.
pub fn triangulation_support_vector(
    n: usize,
    k: usize,
    rng: &mut ChaCha8Rng,
) -> Result<(EdgeSet, WeightVector)> {
    let t = random_k_triangulation(n, k, rng)?;
    let w = positive_weights_on(n, &t.relevant(k), rng)?;
    Ok((t, separation_vector(&w)?))
}

/// A vector (in the `v` basis) whose `w` support contains a full
/// `(k+1)`-crossing, with strictly positive weights.
pub fn crossing_support_vector(
    n: usize,
    k: usize,
    rng: &mut ChaCha8Rng,
) -> Result<WeightVector> {
    if n < 2 * k + 2 {
        return Err(Error::RegimeTooSmall { n, k, min: 2 * k + 2 });
    }
    let mut verts: Vec<usize> = (1..=n).collect();
    verts.shuffle(rng);
    let mut u: Vec<usize> = verts[..2 * k + 2].to_vec();
    u.sort_unstable();
    let mut support = crossing_matching(&u)?.pairs().to_vec();
    let pool = all_edges(n);
    for _ in 0..3 {
        let extra = pool[rng.gen_range(0..pool.len())];
        if !support.contains(&extra) {
            support.push(extra);
        }
    }
    let w = positive_weights_on(n, &support, rng)?;
    separation_vector(&w)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::combinatorics::{is_k_triangulation, max_crossing_size};
    use rand::SeedableRng;

    #[test]
    fn random_triangulations_are_triangulations() {
        let mut rng = ChaCha8Rng::seed_from_u64(17);
        for (n, k) in [(7usize, 1usize), (8, 2), (9, 3)] {
            for _ in 0..5 {
                let t = random_k_triangulation(n, k, &mut rng).unwrap();
                assert!(is_k_triangulation(&t, k), "n={n} k={k}");
            }
        }
    }

    #[test]
    fn crossing_support_contains_crossing() {
        let mut rng = ChaCha8Rng::seed_from_u64(18);
        for _ in 0..5 {
            let v = crossing_support_vector(8, 2, &mut rng).unwrap();
            let supp = v.to_w().support();
            let set = EdgeSet::new(8, supp).unwrap();
            assert!(max_crossing_size(&set) >= 3);
        }
    }

    #[test]
    fn generic_vectors_are_fp_positive_and_generic() {
        let mut rng = ChaCha8Rng::seed_from_u64(19);
        let v = generic_fp_positive(6, 1, &mut rng).unwrap();
        assert!(crate::coords::is_fp_positive(&v));
        assert!(distinct_matching_weights(&v, 1));
    }
}
