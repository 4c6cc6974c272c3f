//! Engine behaviour on the worked examples: unit values, general-index
//! formulas, fixed-dimension sub-evaluations, lines and residues, the
//! position-space variant, and duality.

mod common;

use common::*;
use heppbound::engine::{closed_form_at, closed_form_unit, hepp_position_line, sdc, ClosedForm};
use heppbound::*;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

fn unit_hepp(m: &Matroid, algo: Algorithm) -> Rational {
    let iv = IndexVector::unit(m).unwrap();
    hepp(m, &iv, algo).unwrap().expect_finite().clone()
}

const ALL_ALGOS: [Algorithm; 4] = [
    Algorithm::FlagRecursion,
    Algorithm::FlatsRecursion,
    Algorithm::CyclicFlats,
    Algorithm::SectorOracle,
];

#[test]
fn k4_unit_is_84_by_every_algorithm() {
    let m = Matroid::graphic(Graph::complete(4));
    for algo in ALL_ALGOS {
        assert_eq!(unit_hepp(&m, algo), qi(84), "{algo:?}");
    }
}

#[test]
fn sdc_values_on_k4() {
    let m = Matroid::graphic(Graph::complete(4));
    let iv = IndexVector::unit(&m).unwrap();
    // triangle and square subgraphs of K4 at unit indices in d = 4
    let triangle = EdgeSubset::from_elems([0, 1, 3]);
    let square = EdgeSubset::from_elems([1, 2, 3, 4]);
    assert_eq!(sdc(&m, &iv, triangle), qi(1));
    assert_eq!(sdc(&m, &iv, square), qi(2));
    // edge complements have five edges and two loops
    let complement = m.ground().remove(0);
    assert_eq!(sdc(&m, &iv, complement), qi(1));
    assert_eq!(sdc(&m, &iv, m.ground()), qi(0));
}

#[test]
fn cycles_and_bonds_unit() {
    for n in 2..=8 {
        let c = Matroid::graphic(Graph::cycle(n));
        assert_eq!(unit_hepp(&c, Algorithm::FlagRecursion), qi(n as i64));
        let b = Matroid::graphic(Graph::bond(n));
        assert_eq!(
            unit_hepp(&b, Algorithm::FlatsRecursion),
            closed_form_unit(ClosedForm::Bond(n)).unwrap()
        );
    }
}

#[test]
fn bubble_general_indices() {
    let m = Matroid::graphic(Graph::bond(2));
    let mut rng = ChaCha8Rng::seed_from_u64(7);
    for _ in 0..5 {
        let a = generic_indices(&mut rng, &m);
        let iv = IndexVector::new(&m, a.clone()).unwrap();
        let expect = (&a[0] + &a[1]) / (&a[0] * &a[1]);
        for algo in ALL_ALGOS {
            assert_eq!(
                hepp(&m, &iv, algo).unwrap().expect_finite(),
                &expect,
                "{algo:?}"
            );
        }
    }
}

#[test]
fn two_disjoint_edges_vanish() {
    let g = Graph::new(4, vec![(0, 1), (2, 3)]);
    let m = Matroid::graphic(g);
    let iv = IndexVector::new(&m, vec![qi(1), qi(-1)]).unwrap();
    assert_eq!(hepp_sector_oracle(&m, &iv).unwrap().expect_finite(), &qi(0));
    assert_eq!(
        hepp_flag_recursion(&m, &iv).unwrap().expect_finite(),
        &qi(0)
    );
}

#[test]
fn forest_constraint_flagged() {
    let m = Matroid::uniform(2, 2);
    assert!(matches!(
        IndexVector::new(&m, vec![qi(1), qi(1)]),
        Err(EngineError::ForestConstraint)
    ));
    assert!(IndexVector::new(&m, vec![qi(2), qi(-2)]).is_ok());
}

#[test]
fn uniform_42_unit_is_12() {
    let m = Matroid::uniform(4, 2);
    for algo in ALL_ALGOS {
        assert_eq!(unit_hepp(&m, algo), qi(12), "{algo:?}");
    }
}

#[test]
fn theta_graphs_in_fixed_dimension_four() {
    // sub-evaluations in d = 4 as they appear inside larger computations
    let d222 = Matroid::graphic(theta_graph(2, 2, 2));
    let unit6 = vec![qi(1); 6];
    assert_eq!(
        hepp_in_dimension(&d222, &unit6, &qi(2))
            .unwrap()
            .expect_finite(),
        &qi(12)
    );
    let d313 = Matroid::graphic(theta_graph(3, 1, 3));
    let unit7 = vec![qi(1); 7];
    assert_eq!(
        hepp_in_dimension(&d313, &unit7, &qi(2))
            .unwrap()
            .expect_finite(),
        &q(27, 2)
    );
}

#[test]
fn r10_unit_is_1890() {
    let m = r10();
    assert_eq!(m.size(), 10);
    assert_eq!(m.full_rank(), 5);
    assert!(m.is_connected());
    assert_eq!(unit_hepp(&m, Algorithm::FlagRecursion), qi(1890));
}

#[test]
fn k4_general_indices_match_cyclic_flat_closed_form() {
    // closed form: sum over the four triangles Z of
    //   a_Z / (prod_{e in Z} a_e * prod_{e not in Z} a*_e)
    //     * (a_Z / sdc(Z) + sum_{e in Z} a_e/a*_e)
    // plus, over the three non-adjacent pairs Z,
    //   a*_{K4\Z} / (prod_{e in Z} a_e * prod_{e not in Z} a*_e)
    let m = Matroid::graphic(Graph::complete(4));
    let triangles = [
        EdgeSubset::from_elems([0, 1, 3]),
        EdgeSubset::from_elems([0, 2, 4]),
        EdgeSubset::from_elems([1, 2, 5]),
        EdgeSubset::from_elems([3, 4, 5]),
    ];
    let pairs = [
        EdgeSubset::from_elems([0, 5]),
        EdgeSubset::from_elems([1, 4]),
        EdgeSubset::from_elems([2, 3]),
    ];
    let mut rng = ChaCha8Rng::seed_from_u64(11);
    for _ in 0..5 {
        let a = generic_indices(&mut rng, &m);
        let iv = IndexVector::new(&m, a.clone()).unwrap();
        let d2 = iv.half_dim().unwrap().clone();
        let dual = |e: usize| &d2 - &a[e];
        let prods = |z: EdgeSubset| {
            let mut den = Rational::one();
            for e in z.iter() {
                den *= &a[e];
            }
            for e in z.complement(6).iter() {
                den *= dual(e);
            }
            den
        };
        let mut expect = Rational::zero();
        for z in triangles {
            let az: Rational = z.iter().map(|e| a[e].clone()).sum();
            let mut inner = &az / &sdc(&m, &iv, z);
            for e in z.iter() {
                inner += &a[e] / &dual(e);
            }
            expect += &az / &prods(z) * inner;
        }
        for z in pairs {
            let dual_sum: Rational = z.complement(6).iter().map(dual).sum();
            expect += dual_sum / prods(z);
        }
        for algo in ALL_ALGOS {
            assert_eq!(
                hepp(&m, &iv, algo).unwrap().expect_finite(),
                &expect,
                "{algo:?}"
            );
        }
    }
}

#[test]
fn line_restriction_of_bubble() {
    let m = Matroid::graphic(Graph::bond(2));
    let line = IndexLine::new(vec![qi(0), qi(1)], vec![qi(1), qi(0)]);
    let f = hepp_line(&m, &line).unwrap();
    // (t+1)/t
    let expect = UniRatFunc::new(
        UniPoly::from_coeffs(vec![qi(1), qi(1)]),
        UniPoly::from_coeffs(vec![qi(0), qi(1)]),
    )
    .unwrap();
    assert_eq!(f, expect);
}

#[test]
fn k4_line_residues_match_contraction_and_deletion() {
    let m = Matroid::graphic(Graph::complete(4));
    // a(t) = (t,1,1,1,1,1): the residue at t = 0 is the value of the
    // contraction at unit indices
    let line = IndexLine::new(
        vec![qi(0), qi(1), qi(1), qi(1), qi(1), qi(1)],
        vec![qi(1), qi(0), qi(0), qi(0), qi(0), qi(0)],
    );
    let f = hepp_line(&m, &line).unwrap();
    let contracted = m.contract(EdgeSubset::singleton(0));
    let unit = IndexVector::unit(&contracted).unwrap();
    let expect = hepp_flag_recursion(&contracted, &unit)
        .unwrap()
        .expect_finite()
        .clone();
    // sdc({0}) = t along the line, derivative 1
    assert_eq!(f.residue_simple(&qi(0)).unwrap(), expect);

    // second pole family: sdc(K4\e)(t) = 0. Along a(t) = (t,1,1,1,1,1) we
    // have d/2 = (t+5)/3 and sdc(K4\0) = 5 - 2(t+5)/3, zero at t = 5/2;
    // the residue there matches the deletion at the frozen indices.
    let t0 = q(5, 2);
    let deletion = m.delete(EdgeSubset::singleton(0));
    let frozen = line.at(&t0);
    let del_iv = IndexVector::new(&deletion, frozen[1..].to_vec()).unwrap();
    let expect_del = hepp_flag_recursion(&deletion, &del_iv)
        .unwrap()
        .expect_finite()
        .clone();
    // near t0: sdc(K4\0)(t) = w'(t - t0), so the t-residue carries 1/w'
    // with w' = d sdc(K4\0)/dt = -2/3
    let residue = f.residue_simple(&t0).unwrap() * q(-2, 3);
    assert_eq!(residue, expect_del);
}

#[test]
fn degenerate_line_rejected() {
    let m = Matroid::graphic(Graph::bond(2));
    // first index identically zero along the line
    let line = IndexLine::new(vec![qi(0), qi(1)], vec![qi(0), qi(1)]);
    assert!(matches!(
        hepp_line(&m, &line),
        Err(EngineError::DegenerateLine)
    ));
}

#[test]
fn position_space_values() {
    let k4 = Matroid::graphic(Graph::complete(4));
    let iv = IndexVector::unit(&k4).unwrap();
    assert_eq!(
        hepp_position(&k4, &iv, Algorithm::FlagRecursion)
            .unwrap()
            .expect_finite(),
        &qi(42)
    );
    let mut rng = ChaCha8Rng::seed_from_u64(3);
    // bonds are constant one in position space; cycles give the ratio of
    // dual to plain index products
    for n in [2usize, 3, 4, 5] {
        let b = Matroid::graphic(Graph::bond(n));
        let a = generic_indices(&mut rng, &b);
        let iv = IndexVector::new(&b, a).unwrap();
        assert_eq!(
            hepp_position(&b, &iv, Algorithm::FlagRecursion)
                .unwrap()
                .expect_finite(),
            &qi(1),
            "bond {n}"
        );
        let c = Matroid::graphic(Graph::cycle(n));
        let a = generic_indices(&mut rng, &c);
        let iv = IndexVector::new(&c, a.clone()).unwrap();
        let d2 = iv.half_dim().unwrap();
        let mut expect = Rational::one();
        for e in 0..n {
            expect = expect * (d2 - &a[e]) / a[e].clone();
        }
        assert_eq!(
            hepp_position(&c, &iv, Algorithm::FlagRecursion)
                .unwrap()
                .expect_finite(),
            &expect,
            "cycle {n}"
        );
    }
}

#[test]
fn duality_swaps_indices() {
    let mut rng = ChaCha8Rng::seed_from_u64(5);
    let cases = vec![
        Matroid::graphic(Graph::complete(4)),
        Matroid::graphic(theta_graph(2, 1, 2)),
        Matroid::uniform(5, 2),
        fano(),
    ];
    for m in cases {
        let dual = m.dual();
        for _ in 0..3 {
            let a = generic_indices(&mut rng, &m);
            let iv = IndexVector::new(&m, a).unwrap();
            let astar = iv.dual_values().unwrap();
            let dual_iv = IndexVector::new(&dual, astar).unwrap();
            assert_eq!(
                hepp_flag_recursion(&dual, &dual_iv)
                    .unwrap()
                    .expect_finite(),
                hepp_flag_recursion(&m, &iv).unwrap().expect_finite(),
                "{m:?}"
            );
        }
    }
}

#[test]
fn dual_index_closed_forms_at_general_points() {
    // the uniform closed form with general indices agrees with the engine
    let m = Matroid::uniform(5, 3);
    let mut rng = ChaCha8Rng::seed_from_u64(13);
    for _ in 0..5 {
        let a = generic_indices(&mut rng, &m);
        let iv = IndexVector::new(&m, a.clone()).unwrap();
        assert_eq!(
            &closed_form_at(ClosedForm::Uniform(5, 3), &a).unwrap(),
            hepp_flag_recursion(&m, &iv).unwrap().expect_finite()
        );
    }
}

#[test]
fn position_line_limit_exists_at_d_zero() {
    // along a line onto the hyperplane where the dimension vanishes, the
    // position-space value stays finite
    let m = Matroid::graphic(Graph::cycle(3));
    let base = vec![qi(1), qi(2), qi(-3)];
    let line = IndexLine::new(base, vec![qi(1), qi(1), qi(1)]);
    let f = hepp_position_line(&m, &line).unwrap();
    let at_zero = f.eval_at(&qi(0)).unwrap();
    // cycles have beta invariant one; with rank 2 the limit is (-1)^3 * 1
    assert_eq!(at_zero, qi(-1));
}
