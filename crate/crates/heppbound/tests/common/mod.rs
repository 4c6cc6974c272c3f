//! Shared constructions for the test suite.
#![allow(dead_code)]

use heppbound::{EdgeSubset, Graph, Matroid, Rational};
use rand::Rng;
use rand_chacha::ChaCha8Rng;

pub fn q(n: i64, d: i64) -> Rational {
    Rational::new(n, d)
}

pub fn qi(n: i64) -> Rational {
    Rational::from_int(n)
}

/// Two vertices joined by three internally disjoint paths with `i`, `j`
/// and `k` edges (the family of all biconnected two-loop graphs).
pub fn theta_graph(i: usize, j: usize, k: usize) -> Graph {
    let mut edges = Vec::new();
    let mut next = 2;
    for len in [i, j, k] {
        assert!(len >= 1);
        let mut prev = 0;
        for step in 0..len {
            let to = if step + 1 == len {
                1
            } else {
                let v = next;
                next += 1;
                v
            };
            edges.push((prev, to));
            prev = to;
        }
    }
    Graph::new(next, edges)
}

/// The smallest non-graphic regular matroid: ten GF(2) columns
/// `e_i + e_j + e_k` over five rows, for `i < j < k`.
pub fn r10() -> Matroid {
    let mut columns = Vec::new();
    for i in 0..5u64 {
        for j in (i + 1)..5 {
            for k in (j + 1)..5 {
                columns.push(1 << i | 1 << j | 1 << k);
            }
        }
    }
    Matroid::linear_gf2(columns).unwrap()
}

/// The Fano plane as a GF(2) matroid: all nonzero columns over three rows.
pub fn fano() -> Matroid {
    Matroid::linear_gf2((1..8).collect()).unwrap()
}

/// Glue two graphs along an edge of each (deleting both glue edges).
pub fn graph_two_sum(a: &Graph, e: usize, b: &Graph, f: usize) -> Graph {
    let (ae_u, ae_v) = a.edge(e);
    let (bf_u, bf_v) = b.edge(f);
    let mut edges: Vec<(usize, usize)> = a
        .edges()
        .iter()
        .enumerate()
        .filter(|&(i, _)| i != e)
        .map(|(_, &uv)| uv)
        .collect();
    let mut glued = Graph::new(a.vertex_count(), edges.drain(..).collect());
    let mut b_edges: Vec<(usize, usize)> = b
        .edges()
        .iter()
        .enumerate()
        .filter(|&(i, _)| i != f)
        .map(|(_, &uv)| uv)
        .collect();
    let other = Graph::new(b.vertex_count(), b_edges.drain(..).collect());
    glued.glue(&other, &[(ae_u, bf_u), (ae_v, bf_v)]);
    glued
}

/// Random nonzero rational with numerator in `[-bound, bound]` and small
/// denominator.
pub fn random_rational(rng: &mut ChaCha8Rng, bound: i64) -> Rational {
    loop {
        let n = rng.gen_range(-bound..=bound);
        if n == 0 {
            continue;
        }
        let d = rng.gen_range(1..=4);
        return Rational::new(n, d);
    }
}

/// Random index vector avoiding zero indices, zero dual indices and all
/// vanishing proper degrees of convergence (so every algorithm is defined).
pub fn generic_indices(rng: &mut ChaCha8Rng, m: &Matroid) -> Vec<Rational> {
    let n = m.size();
    'outer: loop {
        let a: Vec<Rational> = (0..n).map(|_| random_rational(rng, 12)).collect();
        let total: Rational = a.iter().cloned().sum();
        let loops = m.loops_total();
        if loops == 0 {
            continue;
        }
        let d2 = total / qi(loops as i64);
        if d2.is_zero() {
            continue;
        }
        for e in 0..n {
            if (&d2 - &a[e]).is_zero() {
                continue 'outer;
            }
        }
        for mask in 1..EdgeSubset::full(n).0 {
            let subset = EdgeSubset(mask);
            let mut sum = Rational::zero();
            for e in subset.iter() {
                sum += &a[e];
            }
            let sdc = sum - &d2 * &qi(m.corank(subset) as i64);
            if sdc.is_zero() {
                continue 'outer;
            }
        }
        return a;
    }
}
