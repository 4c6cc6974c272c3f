//! Symmetry properties beyond the acceptance suite: excess bookkeeping,
//! series/parallel reductions as degenerate splits, a constructed
//! ten-vertex twist, and the split involution.

mod common;

use common::*;
use heppbound::engine::sdc;
use heppbound::symmetry::{
    self, apply_twist, check_fourier_split, excess, fourier_split, FourierSplitSpec, Transposition,
    TwistSpec,
};
use heppbound::*;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

#[test]
fn excess_bookkeeping_identity() {
    // for a connected vertex-induced subgraph, twice its degree of
    // convergence is the sum of inner excesses plus the dual indices of the
    // cut minus the dimension
    let mut rng = ChaCha8Rng::seed_from_u64(0xe0e0);
    for g in [Graph::complete(4), Graph::wheel(4), Graph::complete(5)] {
        let m = Matroid::graphic(g.clone());
        let n = g.edge_count();
        for _ in 0..10 {
            let a: Vec<Rational> = (0..n).map(|_| qi(rng.gen_range(1i64..=9))).collect();
            let iv = IndexVector::new(&m, a.clone()).unwrap();
            let d2 = iv.half_dim().unwrap().clone();
            for vmask in 1u64..(1 << g.vertex_count()) - 1 {
                let inside: Vec<usize> = (0..g.vertex_count())
                    .filter(|v| vmask >> v & 1 == 1)
                    .collect();
                let induced = EdgeSubset::from_elems((0..n).filter(|&e| {
                    let (x, y) = g.edge(e);
                    inside.contains(&x) && inside.contains(&y)
                }));
                if induced.is_empty() || !g.edges_connected(induced) {
                    continue;
                }
                if g.support(induced).len() != inside.len() {
                    continue;
                }
                let cut = EdgeSubset::from_elems((0..n).filter(|&e| {
                    let (x, y) = g.edge(e);
                    inside.contains(&x) != inside.contains(&y)
                }));
                let mut rhs = Rational::zero();
                for &v in &inside {
                    rhs += excess(&g, &a, &d2, v);
                }
                for e in cut.iter() {
                    rhs += &d2 - &a[e];
                }
                rhs -= &d2 + &d2;
                assert_eq!(sdc(&m, &iv, induced) + sdc(&m, &iv, induced), rhs);
            }
        }
    }
}

#[test]
fn series_and_parallel_reductions() {
    // replacing one edge of the bubble by two in series gives the triangle;
    // by two in parallel gives the triple bond
    let mut rng = ChaCha8Rng::seed_from_u64(0x3e3e);
    for _ in 0..10 {
        let a1 = qi(rng.gen_range(1i64..=9));
        let a2 = qi(rng.gen_range(1i64..=9));
        let rest = qi(rng.gen_range(1i64..=9));
        // series: triangle with indices (a1, a2, rest)
        let c3 = Matroid::graphic(Graph::cycle(3));
        let Ok(iv) = IndexVector::new(&c3, vec![a1.clone(), a2.clone(), rest.clone()]) else {
            continue;
        };
        let Ok(HeppValue::Finite(lhs)) = hepp_flag_recursion(&c3, &iv) else {
            continue;
        };
        let c2 = Matroid::graphic(Graph::bond(2));
        let Ok(iv2) = IndexVector::new(&c2, vec![&a1 + &a2, rest.clone()]) else {
            continue;
        };
        let Ok(HeppValue::Finite(reduced)) = hepp_flag_recursion(&c2, &iv2) else {
            continue;
        };
        assert_eq!(lhs, (&a1 + &a2) / (&a1 * &a2) * reduced);
        // parallel: triple bond with indices (a1, a2, rest)
        let b3 = Matroid::graphic(Graph::bond(3));
        let Ok(iv3) = IndexVector::new(&b3, vec![a1.clone(), a2.clone(), rest.clone()]) else {
            continue;
        };
        let Ok(HeppValue::Finite(lhs)) = hepp_flag_recursion(&b3, &iv3) else {
            continue;
        };
        let d2 = iv3.half_dim().unwrap().clone();
        let merged = &(&a1 + &a2) - &d2;
        let Ok(iv2) = IndexVector::new(&c2, vec![merged, rest.clone()]) else {
            continue;
        };
        let Ok(HeppValue::Finite(reduced)) = hepp_flag_recursion(&c2, &iv2) else {
            continue;
        };
        let dual1 = &d2 - &a1;
        let dual2 = &d2 - &a2;
        assert_eq!(lhs, (&dual1 + &dual2) / (&dual1 * &dual2) * reduced);
    }
}

/// A 4-regular ten-vertex graph with a 4-separation whose twist is a
/// different graph; all vertex deletions of graph and twist share one
/// unit-index Hepp bound.
#[test]
fn ten_vertex_twist_unit_values() {
    // side S: quad p,q,r,s = 0,1,2,3 on an alternating ring through
    // 4..7 with an inner ring; side T: two hubs 8, 9 wired asymmetrically
    let mut edges = vec![
        (0, 4),
        (4, 1),
        (1, 5),
        (5, 2),
        (2, 6),
        (6, 3),
        (3, 7),
        (7, 0),
        (4, 5),
        (5, 6),
        (6, 7),
        (7, 4),
    ];
    let side_t_start = edges.len();
    edges.extend([
        (0, 8),
        (1, 8),
        (2, 8),
        (8, 9),
        (0, 9),
        (1, 9),
        (3, 9),
        (2, 3),
    ]);
    let g = Graph::new(10, edges.clone());
    for v in 0..10 {
        assert_eq!(g.degree(v), 4, "vertex {v}");
    }
    let spec = TwistSpec {
        graph: g.clone(),
        quad: [0, 1, 2, 3],
        side_t: EdgeSubset::from_elems(side_t_start..edges.len()),
        transposition: Transposition::PqRs,
    };
    let twisted = apply_twist(&spec).unwrap();
    assert_ne!(twisted, g, "transposition must move edges");
    let mut values = Vec::new();
    for graph in [&g, &twisted] {
        for v in 0..graph.vertex_count() {
            let (del, _) = graph.delete_vertex(v);
            let m = Matroid::graphic(del);
            let value = engine::hepp_unit(&m).unwrap().expect_finite().clone();
            values.push(value);
        }
    }
    assert!(
        values.windows(2).all(|w| w[0] == w[1]),
        "mixed deletion values {values:?}"
    );
}

#[test]
fn fourier_split_involution() {
    // splitting the triangle side of the complete graph and then splitting
    // the inserted star back recovers equal Hepp bounds throughout
    let k4 = Graph::new(4, vec![(1, 2), (0, 3), (2, 0), (1, 3), (0, 1), (2, 3)]);
    let star = Graph::new(4, vec![(0, 3), (1, 3), (2, 3)]);
    let triangle = Graph::new(3, vec![(1, 2), (2, 0), (0, 1)]);
    let spec = FourierSplitSpec {
        graph: k4.clone(),
        side_s: EdgeSubset::from_elems([0, 2, 4]),
        terminals: [0, 1, 2],
        dual_side: star,
        dual_terminals: [0, 1, 2],
    };
    let (split, position) = fourier_split(&spec).unwrap();
    assert_eq!(split.edge_count(), 6);
    // the star edges now sit where the triangle edges were listed
    let star_edges = EdgeSubset::from_elems([0, 2, 4].iter().map(|&e| position[e]));
    let back = FourierSplitSpec {
        graph: split,
        side_s: star_edges,
        terminals: [0, 1, 2],
        dual_side: triangle,
        dual_terminals: [0, 1, 2],
    };
    let report = check_fourier_split(&back, 5, 0x1717).unwrap();
    assert!(report.passed(), "{:?}", report.witnesses);
}

#[test]
fn product_check_reduces_for_cycles_and_bonds() {
    // gluing a triangle performs a series operation; gluing a triple bond a
    // parallel one; both factor through the product identity
    let k4 = Matroid::graphic(Graph::complete(4));
    let c3 = Matroid::graphic(Graph::cycle(3));
    let b3 = Matroid::graphic(Graph::bond(3));
    let report = symmetry::check_product(&k4, 0, &c3, 0, 4, 0x51).unwrap();
    assert!(report.passed(), "{:?}", report.witnesses);
    let report = symmetry::check_product(&k4, 0, &b3, 0, 4, 0x52).unwrap();
    assert!(report.passed(), "{:?}", report.witnesses);
}

#[test]
fn completion_struct_is_conformal() {
    for g in [Graph::complete(4), Graph::wheel(4)] {
        let completion = symmetry::complete_4regular(&g).unwrap();
        let h = &completion.completed;
        let unit = vec![Rational::one(); h.edge_count()];
        for v in 0..h.vertex_count() {
            assert!(excess(h, &unit, &qi(2), v).is_zero(), "vertex {v}");
        }
        for (_, index) in &completion.added_edges {
            assert!(index.is_one());
        }
    }
}
