//! Geometry properties: facet-vertex incidences of the polar, sector
//! decomposition totals, cone membership, and export shape.

mod common;

use common::*;
use heppbound::engine::sdc;
use heppbound::polytope::{
    convergence_cone_contains, export_v, newton_facets, newton_vertices, polar_vertices,
    support_function, tree_decomposition,
};
use heppbound::*;

fn geometry_corpus() -> Vec<(String, Matroid)> {
    vec![
        ("C4".into(), Matroid::graphic(Graph::cycle(4))),
        ("B4".into(), Matroid::graphic(Graph::bond(4))),
        ("K4".into(), Matroid::graphic(Graph::complete(4))),
        ("theta222".into(), Matroid::graphic(theta_graph(2, 2, 2))),
        ("U42".into(), Matroid::uniform(4, 2)),
        ("U63".into(), Matroid::uniform(6, 3)),
        ("F7".into(), fano()),
        ("W4".into(), Matroid::graphic(Graph::wheel(4))),
    ]
}

#[test]
fn polar_vertex_count_is_singular_count() {
    for (name, m) in geometry_corpus() {
        let iv = IndexVector::unit(&m).unwrap();
        let sing = m.singular_submatroids().unwrap();
        for chart in [0, m.size() - 1] {
            let polar = polar_vertices(&m, &iv, chart).unwrap();
            assert_eq!(polar.vertices.len(), sing.len(), "{name} chart {chart}");
        }
    }
}

#[test]
fn polar_vertices_saturate_spanning_facets() {
    // the vertex labelled by a singular subset saturates exactly the
    // facets of bases that span it, and sits strictly inside the rest
    for (name, m) in geometry_corpus() {
        if m.size() > 8 {
            continue;
        }
        let n = m.size();
        let iv = IndexVector::unit(&m).unwrap();
        let d2 = iv.half_dim().unwrap().clone();
        let bases = m.bases(100_000).unwrap();
        let chart = n - 1;
        let sing = m.singular_submatroids().unwrap();
        let polar = polar_vertices(&m, &iv, chart).unwrap();
        for (gamma, vertex) in sing.iter().zip(&polar.vertices) {
            for basis in &bases {
                // facet normal with the chart coordinate dropped
                let co = basis.complement(n);
                let mut dot = Rational::zero();
                let mut k = 0;
                for e in 0..n {
                    if e == chart {
                        continue;
                    }
                    let coord = iv.value(e)
                        - &if co.contains(e) {
                            d2.clone()
                        } else {
                            Rational::zero()
                        };
                    dot += &vertex[k] * &coord;
                    k += 1;
                }
                let spans = m.rank(gamma.intersect(*basis)) == m.rank(*gamma);
                if spans {
                    assert!(dot.is_one(), "{name}: expected saturation");
                } else {
                    assert!(dot < Rational::one(), "{name}: expected interior");
                }
            }
        }
    }
}

#[test]
fn tree_totals_match_engine() {
    let mut corpus = geometry_corpus();
    corpus.push(("theta333".into(), Matroid::graphic(theta_graph(3, 3, 3))));
    for (name, m) in corpus {
        if m.size() > 9 {
            continue;
        }
        match tree_decomposition(&m) {
            Ok(decomp) => {
                let total: Rational = decomp.iter().map(|(_, v)| v.clone()).sum();
                let engine_value = engine::hepp_unit(&m).unwrap().expect_finite().clone();
                assert_eq!(total, engine_value, "{name}");
                // one bucket per basis
                assert_eq!(
                    decomp.len(),
                    m.bases(1_000_000).unwrap().len(),
                    "{name}: bucket count"
                );
                for (tree, value) in &decomp {
                    assert_eq!(m.corank(*tree), 0, "{name}: bucket is independent");
                    assert_eq!(m.rank(*tree), m.full_rank(), "{name}: bucket spans");
                    assert!(value.is_positive(), "{name}");
                }
            }
            Err(_) => {
                // members that are not unit-index primitive are skipped by
                // the decomposition
                let iv = IndexVector::unit(&m).unwrap();
                let not_plog = (1..m.ground().0).any(|mask| {
                    let s = EdgeSubset(mask);
                    !sdc(&m, &iv, s).is_positive()
                });
                assert!(not_plog, "{name}: decomposition refused a primitive input");
            }
        }
    }
}

#[test]
fn unit_vectors_sit_in_the_polar() {
    // plus/minus coordinate vectors have support value at most one for
    // unit-index primitive members
    for (name, m) in [
        ("K4".to_string(), Matroid::graphic(Graph::complete(4))),
        ("W4".to_string(), Matroid::graphic(Graph::wheel(4))),
        ("U63".to_string(), Matroid::uniform(6, 3)),
        ("R10".to_string(), r10()),
    ] {
        let iv = IndexVector::unit(&m).unwrap();
        for e in 0..m.size() {
            for sign in [1i64, -1] {
                let mut y = vec![Rational::zero(); m.size()];
                y[e] = qi(sign);
                let value = support_function(&m, &iv, &y);
                assert!(value <= qi(1), "{name} direction {sign}*e_{e}");
            }
        }
    }
}

#[test]
fn support_function_on_indicators_is_sdc() {
    for (name, m) in geometry_corpus() {
        let iv = IndexVector::unit(&m).unwrap();
        for mask in 1..=m.ground().0 {
            let subset = EdgeSubset(mask);
            let y: Vec<Rational> = (0..m.size())
                .map(|e| if subset.contains(e) { qi(1) } else { qi(0) })
                .collect();
            assert_eq!(
                support_function(&m, &iv, &y),
                sdc(&m, &iv, subset),
                "{name} at {subset:?}"
            );
            if m.size() > 6 {
                break;
            }
        }
    }
}

#[test]
fn averaged_bases_vector_lies_in_the_cone() {
    for (name, m) in geometry_corpus() {
        let n = m.size();
        let bases = m.bases(100_000).unwrap();
        let mut o = vec![Rational::zero(); n];
        for basis in &bases {
            for e in basis.complement(n).iter() {
                o[e] += qi(1);
            }
        }
        assert!(convergence_cone_contains(&m, &o).unwrap().is_ok(), "{name}");
    }
}

#[test]
fn newton_facets_and_vertices_are_consistent() {
    for (name, m) in geometry_corpus() {
        if m.size() > 7 {
            continue;
        }
        let iv = IndexVector::unit(&m).unwrap();
        let v = newton_vertices(&m, &iv).unwrap();
        let h = newton_facets(&m, &iv).unwrap();
        // every vertex satisfies every facet inequality and the hyperplane
        for vertex in &v.vertices {
            for (normal, offset) in &h.inequalities {
                let dot: Rational = normal.iter().zip(vertex).map(|(a, b)| a * b).sum();
                assert!(dot <= *offset, "{name}");
            }
            let total: Rational = vertex.iter().cloned().sum();
            assert!(total.is_zero(), "{name}: hyperplane");
        }
        // every facet is attained by some vertex
        for (normal, offset) in &h.inequalities {
            let attained = v.vertices.iter().any(|vertex| {
                let dot: Rational = normal.iter().zip(vertex).map(|(a, b)| a * b).sum();
                dot == *offset
            });
            assert!(attained, "{name}: loose facet");
        }
    }
}

#[test]
fn newton_dimension_is_edges_minus_components() {
    // affine dimension of the vertex set: full in the hyperplane exactly
    // for connected matroids
    let connected = Matroid::graphic(Graph::complete(4));
    let split = Matroid::graphic(Graph::new(
        6,
        vec![(0, 1), (1, 2), (2, 0), (3, 4), (4, 5), (5, 3)],
    ));
    for (m, expect) in [(&connected, 6 - 1), (&split, 6 - 2)] {
        let a: Vec<Rational> = vec![qi(1); 6];
        let loops = m.loops_total();
        // use the raw construction: a - d2 * complement indicators
        let d2 = qi(6) / qi(loops as i64);
        let bases = m.bases(10_000).unwrap();
        let vertices: Vec<Vec<Rational>> = bases
            .iter()
            .map(|basis| {
                (0..6)
                    .map(|e| {
                        if basis.contains(e) {
                            a[e].clone()
                        } else {
                            &a[e] - &d2
                        }
                    })
                    .collect()
            })
            .collect();
        // affine rank: rank of the difference space
        let base = &vertices[0];
        let rows: Vec<Vec<Rational>> = vertices[1..]
            .iter()
            .map(|v| v.iter().zip(base).map(|(x, y)| x - y).collect())
            .collect();
        let mut rank = 0;
        let mut mat = rows;
        for col in 0..6 {
            let Some(pivot) = (rank..mat.len()).find(|&r| !mat[r][col].is_zero()) else {
                continue;
            };
            mat.swap(rank, pivot);
            let inv = mat[rank][col].recip().unwrap();
            for x in mat[rank].iter_mut() {
                *x *= &inv;
            }
            for r in 0..mat.len() {
                if r != rank && !mat[r][col].is_zero() {
                    let factor = mat[r][col].clone();
                    for c in 0..6 {
                        let delta = &factor * &mat[rank][c];
                        mat[r][c] -= &delta;
                    }
                }
            }
            rank += 1;
        }
        assert_eq!(rank, expect);
    }
}

#[test]
fn export_row_counts() {
    let m = Matroid::uniform(4, 2);
    let iv = IndexVector::unit(&m).unwrap();
    let polar = polar_vertices(&m, &iv, 3).unwrap();
    let text = export_v(&polar);
    assert!(text.contains("begin\n 8 4 rational"));
    let lines: Vec<&str> = text.lines().collect();
    assert_eq!(lines.first(), Some(&"V-representation"));
    assert_eq!(lines.last(), Some(&"end"));
}
