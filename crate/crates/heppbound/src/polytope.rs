//! Newton polytope and polar: vertex and facet descriptions, the support
//! function via the greedy algorithm, spanning-tree sector decomposition,
//! convergence-cone membership, and export to cdd-style polyhedra files.

use std::collections::HashMap;

use thiserror::Error;

use crate::arith::Rational;
use crate::engine::IndexVector;
use crate::matroid::{EdgeSubset, Matroid};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum PolytopeError {
    #[error("matroid is not connected")]
    NotConnected,
    #[error("more than {0} bases")]
    TooManyBases(usize),
    #[error("indices lie on the pole locus of subset {0:?}")]
    OnPoleLocus(EdgeSubset),
    #[error("not primitive logarithmic at unit indices; witness {0:?}")]
    NotPLog(EdgeSubset),
    #[error("input exceeds the size limit {0}")]
    SizeLimit(usize),
}

/// Vertex description of a polyhedron, with optional lineality directions.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PolytopeV {
    pub ambient_dim: usize,
    pub vertices: Vec<Vec<Rational>>,
    pub lineality: Vec<Vec<Rational>>,
}

/// Facet description: inequalities `normal . y <= offset` plus equalities.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PolytopeH {
    pub ambient_dim: usize,
    pub inequalities: Vec<(Vec<Rational>, Rational)>,
    pub equalities: Vec<(Vec<Rational>, Rational)>,
}

fn indicator(subset: EdgeSubset, n: usize) -> Vec<Rational> {
    (0..n)
        .map(|e| {
            if subset.contains(e) {
                Rational::one()
            } else {
                Rational::zero()
            }
        })
        .collect()
}

const BASES_CAP: usize = 200_000;

/// Vertices of the Newton polytope: one per basis, `a - (d/2) * indicator
/// of the basis complement`.
pub fn newton_vertices(m: &Matroid, iv: &IndexVector) -> Result<PolytopeV, PolytopeError> {
    if !m.is_connected() {
        return Err(PolytopeError::NotConnected);
    }
    let n = m.size();
    let d2 = iv.half_dim().cloned().unwrap_or_else(Rational::zero);
    let bases = m
        .bases(BASES_CAP)
        .map_err(|_| PolytopeError::TooManyBases(BASES_CAP))?;
    let mut vertices: Vec<Vec<Rational>> = bases
        .iter()
        .map(|basis| {
            let co = basis.complement(n);
            (0..n)
                .map(|e| {
                    let shift = if co.contains(e) {
                        d2.clone()
                    } else {
                        Rational::zero()
                    };
                    iv.value(e) - &shift
                })
                .collect()
        })
        .collect();
    vertices.sort();
    vertices.dedup();
    Ok(PolytopeV {
        ambient_dim: n,
        vertices,
        lineality: vec![],
    })
}

/// Facet description of the Newton polytope: one inequality per singular
/// subset, plus the all-ones hyperplane equality.
pub fn newton_facets(m: &Matroid, iv: &IndexVector) -> Result<PolytopeH, PolytopeError> {
    let n = m.size();
    let sing = m
        .singular_submatroids()
        .map_err(|_| PolytopeError::NotConnected)?;
    let inequalities = sing
        .into_iter()
        .map(|subset| (indicator(subset, n), crate::engine::sdc(m, iv, subset)))
        .collect();
    Ok(PolytopeH {
        ambient_dim: n,
        inequalities,
        equalities: vec![(vec![Rational::one(); n], Rational::zero())],
    })
}

/// Vertices of the polar sliced by the chart hyperplane `y_chart = 0`, one
/// per singular subset; the chart coordinate is dropped, so vectors live in
/// dimension `N - 1`.
pub fn polar_vertices(
    m: &Matroid,
    iv: &IndexVector,
    chart_edge: usize,
) -> Result<PolytopeV, PolytopeError> {
    let n = m.size();
    assert!(chart_edge < n);
    let sing = m
        .singular_submatroids()
        .map_err(|_| PolytopeError::NotConnected)?;
    let mut vertices = Vec::with_capacity(sing.len());
    for subset in sing {
        let omega = crate::engine::sdc(m, iv, subset);
        if omega.is_zero() {
            return Err(PolytopeError::OnPoleLocus(subset));
        }
        let scale = omega.recip().unwrap();
        let vector = if subset.contains(chart_edge) {
            let co = subset.complement(n);
            (0..n)
                .filter(|&e| e != chart_edge)
                .map(|e| {
                    if co.contains(e) {
                        -&scale
                    } else {
                        Rational::zero()
                    }
                })
                .collect()
        } else {
            (0..n)
                .filter(|&e| e != chart_edge)
                .map(|e| {
                    if subset.contains(e) {
                        scale.clone()
                    } else {
                        Rational::zero()
                    }
                })
                .collect()
        };
        vertices.push(vector);
    }
    Ok(PolytopeV {
        ambient_dim: n - 1,
        vertices,
        lineality: vec![],
    })
}

/// Support function of the Newton polytope at `y`: `y . a` plus `d/2`
/// times the greedy maximum of `y . basis` over bases, minus the total.
/// Greedy tie-break is lexicographic in the edge index.
pub fn support_function(m: &Matroid, iv: &IndexVector, y: &[Rational]) -> Rational {
    let n = m.size();
    assert_eq!(y.len(), n);
    let d2 = match iv.half_dim() {
        Some(d2) => d2.clone(),
        None => {
            // loopless: the support function degenerates to the plain form
            return y.iter().zip(iv.values()).map(|(yi, ai)| yi * ai).sum();
        }
    };
    // maximum-weight basis under weights y via the greedy algorithm
    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by(|&i, &j| y[j].cmp(&y[i]).then(i.cmp(&j)));
    let mut chosen = EdgeSubset::EMPTY;
    let mut best = Rational::zero();
    for e in order {
        if m.rank(chosen.insert(e)) > m.rank(chosen) {
            chosen = chosen.insert(e);
            best += &y[e];
        }
    }
    let dot_a: Rational = y.iter().zip(iv.values()).map(|(yi, ai)| yi * ai).sum();
    let total: Rational = y.iter().cloned().sum();
    dot_a + d2 * (best - total)
}

/// True when every singular subset converges strictly at the given raw
/// indices (with the induced dimension); otherwise the first violating
/// subset is the witness.
pub fn convergence_cone_contains(
    m: &Matroid,
    raw: &[Rational],
) -> Result<Result<(), EdgeSubset>, PolytopeError> {
    if !m.is_connected() {
        return Err(PolytopeError::NotConnected);
    }
    let n = m.size();
    assert_eq!(raw.len(), n);
    let loops = m.loops_total();
    let total: Rational = raw.iter().cloned().sum();
    let d2 = if loops == 0 {
        Rational::zero()
    } else {
        total / Rational::from_int(loops as i64)
    };
    let sing = m
        .singular_submatroids()
        .map_err(|_| PolytopeError::NotConnected)?;
    for subset in sing {
        let mut sum = Rational::zero();
        for e in subset.iter() {
            sum += &raw[e];
        }
        let sdc = sum - &d2 * &Rational::from_int(m.corank(subset) as i64);
        if !sdc.is_positive() {
            return Ok(Err(subset));
        }
    }
    Ok(Ok(()))
}

const TREE_DECOMP_LIMIT: usize = 10;

/// Exact contribution of each basis (spanning tree) to the unit-index Hepp
/// bound: every edge order is binned by its greedy tree, and the sector
/// values accumulate per tree. The values sum to the Hepp bound.
pub fn tree_decomposition(m: &Matroid) -> Result<Vec<(EdgeSubset, Rational)>, PolytopeError> {
    let n = m.size();
    if n > TREE_DECOMP_LIMIT {
        return Err(PolytopeError::SizeLimit(TREE_DECOMP_LIMIT));
    }
    if !m.is_connected() {
        return Err(PolytopeError::NotConnected);
    }
    let loops = m.loops_total() as i64;
    if loops == 0 || n as i64 == loops {
        return Err(PolytopeError::NotPLog(m.ground()));
    }
    // scaled unit-index degree: loops * sdc = |subset| * loops - n * corank
    let scaled = |subset: EdgeSubset| -> i64 {
        subset.len() as i64 * loops - n as i64 * m.corank(subset) as i64
    };
    for mask in 1..m.ground().0 {
        if scaled(EdgeSubset(mask)) <= 0 {
            return Err(PolytopeError::NotPLog(EdgeSubset(mask)));
        }
    }
    let mut buckets: HashMap<u64, Rational> = HashMap::new();
    let mut order: Vec<usize> = Vec::with_capacity(n);
    let mut used = EdgeSubset::EMPTY;
    walk(m, &scaled, &mut order, &mut used, &mut buckets, 1, loops);
    let mut out: Vec<(EdgeSubset, Rational)> = buckets
        .into_iter()
        .map(|(k, v)| (EdgeSubset(k), v))
        .collect();
    out.sort_by_key(|(t, _)| t.0);
    Ok(out)
}

fn walk(
    m: &Matroid,
    scaled: &impl Fn(EdgeSubset) -> i64,
    order: &mut Vec<usize>,
    used: &mut EdgeSubset,
    buckets: &mut HashMap<u64, Rational>,
    product: i64,
    loops: i64,
) {
    let n = m.size();
    if order.len() == n {
        // greedy tree of this order: edges that do not increase the corank
        let mut prefix = EdgeSubset::EMPTY;
        let mut tree = EdgeSubset::EMPTY;
        for &e in order.iter() {
            let next = prefix.insert(e);
            if m.corank(next) == m.corank(prefix) {
                tree = tree.insert(e);
            }
            prefix = next;
        }
        // sector value: product over proper prefixes of 1/sdc, with the
        // scaling loops^(n-1) undone
        let value = Rational::from_int(loops).pow((n - 1) as i32) / Rational::from_int(product);
        *buckets.entry(tree.0).or_default() += value;
        return;
    }
    for e in 0..n {
        if used.contains(e) {
            continue;
        }
        let next = used.insert(e);
        let factor = if next.len() == n { 1 } else { scaled(next) };
        order.push(e);
        *used = next;
        walk(m, scaled, order, used, buckets, product * factor, loops);
        order.pop();
        *used = used.remove(e);
    }
}

/// cdd-style text export. Vertex files list `1 v...` rows (and `0 r...`
/// lineality rows flagged in a `linearity` line); facet files list rows
/// `b -A` meaning `b - A.y >= 0`, equalities flagged in `linearity`.
pub fn export_v(p: &PolytopeV) -> String {
    let mut out = String::new();
    out.push_str("V-representation\n");
    if !p.lineality.is_empty() {
        out.push_str("linearity");
        out.push_str(&format!(" {}", p.lineality.len()));
        for k in 0..p.lineality.len() {
            out.push_str(&format!(" {}", k + 1));
        }
        out.push('\n');
    }
    out.push_str("begin\n");
    out.push_str(&format!(
        " {} {} rational\n",
        p.lineality.len() + p.vertices.len(),
        p.ambient_dim + 1
    ));
    for line in &p.lineality {
        out.push_str(" 0");
        for x in line {
            out.push_str(&format!(" {}", x));
        }
        out.push('\n');
    }
    for v in &p.vertices {
        out.push_str(" 1");
        for x in v {
            out.push_str(&format!(" {}", x));
        }
        out.push('\n');
    }
    out.push_str("end\n");
    out
}

pub fn export_h(p: &PolytopeH) -> String {
    let mut out = String::new();
    out.push_str("H-representation\n");
    if !p.equalities.is_empty() {
        out.push_str("linearity");
        out.push_str(&format!(" {}", p.equalities.len()));
        for k in 0..p.equalities.len() {
            out.push_str(&format!(" {}", k + 1));
        }
        out.push('\n');
    }
    out.push_str("begin\n");
    out.push_str(&format!(
        " {} {} rational\n",
        p.equalities.len() + p.inequalities.len(),
        p.ambient_dim + 1
    ));
    let mut write_row = |normal: &[Rational], offset: &Rational| {
        let mut row = format!(" {}", offset);
        for x in normal {
            row.push_str(&format!(" {}", -x));
        }
        row.push('\n');
        out.push_str(&row);
    };
    for (normal, offset) in &p.equalities {
        write_row(normal, offset);
    }
    for (normal, offset) in &p.inequalities {
        write_row(normal, offset);
    }
    out.push_str("end\n");
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::matroid::Graph;

    fn qi(n: i64) -> Rational {
        Rational::from_int(n)
    }

    #[test]
    fn newton_vertices_of_u42() {
        let m = Matroid::uniform(4, 2);
        let iv = IndexVector::unit(&m).unwrap();
        let p = newton_vertices(&m, &iv).unwrap();
        assert_eq!(p.vertices.len(), 6);
        // each vertex is a +-1 vector with two entries of each sign
        for v in &p.vertices {
            let plus = v.iter().filter(|x| **x == qi(1)).count();
            let minus = v.iter().filter(|x| **x == qi(-1)).count();
            assert_eq!((plus, minus), (2, 2));
        }
    }

    #[test]
    fn newton_facets_of_k4() {
        let m = Matroid::graphic(Graph::complete(4));
        let iv = IndexVector::unit(&m).unwrap();
        let h = newton_facets(&m, &iv).unwrap();
        assert_eq!(h.inequalities.len(), 16);
        assert_eq!(h.equalities.len(), 1);
    }

    #[test]
    fn polar_vertices_of_u42() {
        let m = Matroid::uniform(4, 2);
        let iv = IndexVector::unit(&m).unwrap();
        let p = polar_vertices(&m, &iv, 3).unwrap();
        assert_eq!(p.ambient_dim, 3);
        assert_eq!(p.vertices.len(), 8);
        let expect: Vec<Vec<Rational>> = vec![
            vec![qi(1), qi(0), qi(0)],
            vec![qi(0), qi(1), qi(0)],
            vec![qi(0), qi(0), qi(1)],
            vec![qi(-1), qi(-1), qi(-1)],
            vec![qi(-1), qi(0), qi(0)],
            vec![qi(0), qi(-1), qi(0)],
            vec![qi(0), qi(0), qi(-1)],
            vec![qi(1), qi(1), qi(1)],
        ];
        for v in expect {
            assert!(p.vertices.contains(&v), "missing {v:?}");
        }
    }

    #[test]
    fn bubble_polar_is_a_segment() {
        let m = Matroid::graphic(Graph::bond(2));
        let a = vec![Rational::new(1, 1), Rational::new(3, 1)];
        let iv = IndexVector::new(&m, a).unwrap();
        let p = polar_vertices(&m, &iv, 1).unwrap();
        // segment [-1/a2, 1/a1] in the chart without y2
        assert_eq!(p.vertices.len(), 2);
        assert!(p.vertices.contains(&vec![qi(1)]));
        assert!(p.vertices.contains(&vec![Rational::new(-1, 3)]));
    }

    #[test]
    fn support_function_examples() {
        let m = Matroid::graphic(Graph::complete(4));
        let iv = IndexVector::unit(&m).unwrap();
        // at the indicator of a subset, the support function is its sdc
        for subset in [
            EdgeSubset::from_elems([0, 1, 3]),
            EdgeSubset::from_elems([0]),
            EdgeSubset::from_elems([1, 2, 3, 4]),
        ] {
            let y = indicator(subset, 6);
            assert_eq!(
                support_function(&m, &iv, &y),
                crate::engine::sdc(&m, &iv, subset)
            );
        }
        // all-ones direction gives zero
        let ones = vec![qi(1); 6];
        assert_eq!(support_function(&m, &iv, &ones), qi(0));
    }

    #[test]
    fn convergence_cone_checks() {
        let m = Matroid::graphic(Graph::complete(4));
        let unit = vec![qi(1); 6];
        assert!(convergence_cone_contains(&m, &unit).unwrap().is_ok());
        let mut bad = unit.clone();
        bad[0] = qi(0);
        let witness = convergence_cone_contains(&m, &bad).unwrap().unwrap_err();
        assert_eq!(witness, EdgeSubset::from_elems([0]));
    }

    #[test]
    fn tree_decomposition_of_k4() {
        let m = Matroid::graphic(Graph::complete(4));
        let decomp = tree_decomposition(&m).unwrap();
        assert_eq!(decomp.len(), 16);
        let mut sixes = 0;
        let mut fives = 0;
        let mut total = Rational::zero();
        for (_, v) in &decomp {
            if *v == qi(6) {
                sixes += 1;
            } else if *v == qi(5) {
                fives += 1;
            }
            total += v.clone();
        }
        // stars contribute 6, paths contribute 5
        assert_eq!((sixes, fives), (4, 12));
        assert_eq!(total, qi(84));
    }

    #[test]
    fn tree_decomposition_of_cycles() {
        for n in 3..=6 {
            let m = Matroid::graphic(Graph::cycle(n));
            let decomp = tree_decomposition(&m).unwrap();
            assert_eq!(decomp.len(), n);
            for (_, v) in &decomp {
                assert_eq!(v, &qi(1), "cycle {n}");
            }
        }
    }

    #[test]
    fn export_formats() {
        let m = Matroid::graphic(Graph::bond(2));
        let iv = IndexVector::unit(&m).unwrap();
        let v = newton_vertices(&m, &iv).unwrap();
        let text = export_v(&v);
        assert!(text.starts_with("V-representation\nbegin\n 2 3 rational\n"));
        assert!(text.ends_with("end\n"));
        let h = newton_facets(&m, &iv).unwrap();
        let text = export_h(&h);
        assert!(text.contains("H-representation"));
        assert!(text.contains("linearity 1 1"));
    }
}
