//! Graph surgeries realizing the period symmetries, with executable
//! equality checks: completion of a graph to a regular one and invariance
//! across vertex deletions, the 2-sum product, the twist along a
//! 4-separation, and the Fourier split along a 3-separation.

use std::collections::BTreeSet;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;
use thiserror::Error;

use crate::arith::{Rational, UniRatFunc};
use crate::engine::{
    hepp_flag_recursion, hepp_flats_recursion, hepp_position, hepp_position_line, Algorithm,
    EngineError, HeppValue, IndexLine, IndexVector,
};
use crate::linalg::kernel_basis;
use crate::matroid::{EdgeSubset, Graph, Matroid, MatroidError};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum SymmetryError {
    #[error("vertex {0} has degree above four")]
    DegreeExceeded(usize),
    #[error("graph is not regular of the required degree")]
    NotRegular,
    #[error("the two sides do not meet in exactly the named vertices")]
    InvalidSeparation,
    #[error("conformality constraints admit no usable solution")]
    NoConformalSolution,
    #[error("constraint space admits no usable sample")]
    ConstraintInfeasible,
    #[error(transparent)]
    Matroid(#[from] MatroidError),
    #[error(transparent)]
    Engine(#[from] EngineError),
}

/// Outcome of a symmetry check: the computed value set and, on failure, a
/// pair of differing exact values.
#[derive(Debug, Clone, Serialize)]
pub struct Report {
    pub status: Status,
    pub values: Vec<(String, String)>,
    pub witnesses: Vec<String>,
    /// Dimension of the solved constraint space, where one was solved.
    pub constraint_dim: Option<usize>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Status {
    Pass,
    Fail,
}

impl Report {
    pub fn passed(&self) -> bool {
        self.status == Status::Pass
    }
}

/// Excess of a vertex: the dimension minus the sum of dual indices of the
/// incident edges (self-loops incident twice).
pub fn excess(g: &Graph, a: &[Rational], d2: &Rational, v: usize) -> Rational {
    let mut acc = d2 + d2;
    for (e, &(x, y)) in g.edges().iter().enumerate() {
        let m = (x == v) as i64 + (y == v) as i64;
        if m > 0 {
            acc -= &(Rational::from_int(m) * (d2 - &a[e]));
        }
    }
    acc
}

/// Completion of a graph to a 4-regular one by a single extra vertex.
#[derive(Debug, Clone)]
pub struct Completion {
    pub original: Graph,
    pub completed: Graph,
    /// `(vertex, index)` per added edge, in insertion order.
    pub added_edges: Vec<(usize, Rational)>,
}

/// Add a vertex and enough unit-index edges to make every original vertex
/// degree four.
pub fn complete_4regular(g: &Graph) -> Result<Completion, SymmetryError> {
    for v in 0..g.vertex_count() {
        if g.degree(v) > 4 {
            return Err(SymmetryError::DegreeExceeded(v));
        }
    }
    let mut completed = g.clone();
    let hub = completed.add_vertex();
    let mut added_edges = Vec::new();
    for v in 0..g.vertex_count() {
        for _ in g.degree(v)..4 {
            completed.add_edge(v, hub);
            added_edges.push((v, Rational::one()));
        }
    }
    Ok(Completion {
        original: g.clone(),
        completed,
        added_edges,
    })
}

/// Unit-index Hepp bounds of all vertex deletions of a 4-regular graph.
/// Passes when every finite value agrees; deletions that hit a pole are
/// listed separately.
pub fn check_completion(h: &Graph) -> Result<Report, SymmetryError> {
    for v in 0..h.vertex_count() {
        if h.degree(v) != 4 {
            return Err(SymmetryError::NotRegular);
        }
    }
    let mut values = Vec::new();
    let mut finite: Vec<Rational> = Vec::new();
    for v in 0..h.vertex_count() {
        let (g, _) = h.delete_vertex(v);
        let m = Matroid::graphic(g);
        let iv = IndexVector::unit(&m).map_err(SymmetryError::Engine)?;
        match hepp_flats_recursion(&m, &iv)? {
            HeppValue::Finite(q) => {
                let position = hepp_position(&m, &iv, Algorithm::FlatsRecursion)?;
                let pos_str = match position {
                    HeppValue::Finite(p) => p.to_string(),
                    HeppValue::Pole(s) => format!("pole at {s:?}"),
                };
                values.push((format!("delete {v}"), format!("{q} (position {pos_str})")));
                finite.push(q);
            }
            HeppValue::Pole(s) => {
                values.push((format!("delete {v}"), format!("pole at {s:?}")));
            }
        }
    }
    let all_equal = finite.windows(2).all(|w| w[0] == w[1]);
    let witnesses = if all_equal {
        vec![]
    } else {
        let distinct: BTreeSet<String> = finite.iter().map(|q| q.to_string()).collect();
        distinct.into_iter().take(2).collect()
    };
    Ok(Report {
        status: if all_equal {
            Status::Pass
        } else {
            Status::Fail
        },
        values,
        witnesses,
        constraint_dim: None,
    })
}

/// Which double transposition of the quad `(p,q,r,s)` to apply.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Transposition {
    PqRs,
    PrQs,
    PsQr,
}

#[derive(Debug, Clone)]
pub struct TwistSpec {
    pub graph: Graph,
    pub quad: [usize; 4],
    pub side_t: EdgeSubset,
    pub transposition: Transposition,
}

impl TwistSpec {
    fn permutation(&self) -> impl Fn(usize) -> usize + '_ {
        let [p, q, r, s] = self.quad;
        let pairs = match self.transposition {
            Transposition::PqRs => [(p, q), (r, s)],
            Transposition::PrQs => [(p, r), (q, s)],
            Transposition::PsQr => [(p, s), (q, r)],
        };
        move |v| {
            for (x, y) in pairs {
                if v == x {
                    return y;
                }
                if v == y {
                    return x;
                }
            }
            v
        }
    }

    fn validate(&self) -> Result<(), SymmetryError> {
        let g = &self.graph;
        let side_s = self.side_t.complement(g.edge_count());
        let verts =
            |subset: EdgeSubset| -> BTreeSet<usize> { g.support(subset).into_iter().collect() };
        let shared: BTreeSet<usize> = verts(self.side_t)
            .intersection(&verts(side_s))
            .copied()
            .collect();
        let quad: BTreeSet<usize> = self.quad.iter().copied().collect();
        if shared != quad || quad.len() != 4 {
            return Err(SymmetryError::InvalidSeparation);
        }
        Ok(())
    }
}

/// Perform the double transposition on the chosen side.
pub fn apply_twist(spec: &TwistSpec) -> Result<Graph, SymmetryError> {
    spec.validate()?;
    let perm = spec.permutation();
    let edges = spec
        .graph
        .edges()
        .iter()
        .enumerate()
        .map(|(i, &(u, v))| {
            if spec.side_t.contains(i) {
                (perm(u), perm(v))
            } else {
                (u, v)
            }
        })
        .collect();
    Ok(Graph::new(spec.graph.vertex_count(), edges))
}

/// Conformality constraint rows for a graph over unknowns
/// `(a_1, ..., a_N, d/2)`.
fn conformal_rows(g: &Graph) -> Vec<Vec<Rational>> {
    let n = g.edge_count();
    let mut rows = Vec::new();
    for v in 0..g.vertex_count() {
        let mut row = vec![Rational::zero(); n + 1];
        let mut degree = 0i64;
        for (e, &(x, y)) in g.edges().iter().enumerate() {
            let m = (x == v) as i64 + (y == v) as i64;
            if m > 0 {
                row[e] = Rational::from_int(m);
                degree += m;
            }
        }
        row[n] = Rational::from_int(2 - degree);
        rows.push(row);
    }
    rows
}

fn sample_from_basis(rng: &mut ChaCha8Rng, basis: &[Vec<Rational>], ncols: usize) -> Vec<Rational> {
    let mut out = vec![Rational::zero(); ncols];
    for vec in basis {
        let c = Rational::from_int(rng.gen_range(-5i64..=5));
        for (slot, x) in out.iter_mut().zip(vec) {
            *slot += &c * x;
        }
    }
    out
}

/// Compare the position-space Hepp bounds of all vertex deletions of a
/// graph and its twist, as exact rational functions along random lines in
/// the joint conformal space, plus the unit point when both graphs are
/// regular.
pub fn check_twist(spec: &TwistSpec, lines: usize, seed: u64) -> Result<Report, SymmetryError> {
    let twisted = apply_twist(spec)?;
    let g = &spec.graph;
    let n = g.edge_count();
    let mut rows = conformal_rows(g);
    rows.extend(conformal_rows(&twisted));
    let basis = kernel_basis(rows, n + 1);
    if basis.is_empty() {
        return Err(SymmetryError::NoConformalSolution);
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut values = Vec::new();
    let mut witnesses = Vec::new();
    let mut checked_lines = 0;
    let mut attempts = 0;
    while checked_lines < lines && attempts < 64 * lines {
        attempts += 1;
        let base = sample_from_basis(&mut rng, &basis, n + 1);
        let dir = sample_from_basis(&mut rng, &basis, n + 1);
        match twist_line_values(g, &twisted, &base, &dir) {
            Some(line_values) => {
                checked_lines += 1;
                let first = &line_values[0].1;
                for (label, f) in &line_values {
                    if f != first {
                        witnesses.push(format!("{}: {:?}", line_values[0].0, first));
                        witnesses.push(format!("{label}: {f:?}"));
                    }
                }
            }
            None => continue,
        }
    }
    if checked_lines < lines {
        return Err(SymmetryError::ConstraintInfeasible);
    }
    values.push(("conformal lines checked".into(), checked_lines.to_string()));
    // unit point for regular graphs
    let degree = g.degree(0);
    let regular = (0..g.vertex_count()).all(|v| g.degree(v) == degree)
        && (0..twisted.vertex_count()).all(|v| twisted.degree(v) == degree)
        && degree > 2;
    if regular {
        let mut unit_values: Vec<Rational> = Vec::new();
        for (label, graph) in [("base", g), ("twist", &twisted)] {
            for v in 0..graph.vertex_count() {
                let (del, _) = graph.delete_vertex(v);
                let m = Matroid::graphic(del);
                let iv = IndexVector::unit(&m)?;
                if let HeppValue::Finite(q) = hepp_position(&m, &iv, Algorithm::FlatsRecursion)? {
                    values.push((format!("{label} delete {v}"), q.to_string()));
                    unit_values.push(q);
                }
            }
        }
        if !unit_values.windows(2).all(|w| w[0] == w[1]) {
            let distinct: BTreeSet<String> = unit_values.iter().map(|q| q.to_string()).collect();
            witnesses.extend(distinct.into_iter().take(2));
        }
    }
    Ok(Report {
        status: if witnesses.is_empty() {
            Status::Pass
        } else {
            Status::Fail
        },
        values,
        witnesses,
        constraint_dim: Some(basis.len()),
    })
}

/// All deletion values of both graphs along one conformal line, or `None`
/// when the line degenerates.
fn twist_line_values(
    g: &Graph,
    twisted: &Graph,
    base: &[Rational],
    dir: &[Rational],
) -> Option<Vec<(String, UniRatFunc)>> {
    let mut out = Vec::new();
    for (label, graph) in [("base", g), ("twist", twisted)] {
        for v in 0..graph.vertex_count() {
            let (del, kept) = graph.delete_vertex(v);
            let m = Matroid::graphic(del);
            if !m.is_connected() {
                // deletion values vanish identically on conformal space
                out.push((format!("{label}\\{v}"), UniRatFunc::zero()));
                continue;
            }
            let line = IndexLine::new(
                kept.iter().map(|&e| base[e].clone()).collect(),
                kept.iter().map(|&e| dir[e].clone()).collect(),
            );
            match hepp_position_line(&m, &line) {
                Ok(f) => out.push((format!("{label}\\{v}"), f)),
                Err(_) => return None,
            }
        }
    }
    Some(out)
}

#[derive(Debug, Clone)]
pub struct FourierSplitSpec {
    pub graph: Graph,
    pub side_s: EdgeSubset,
    pub terminals: [usize; 3],
    /// Externally planar dual of the restriction to `side_s`; its `k`-th
    /// edge corresponds to the `k`-th element of `side_s` in index order.
    pub dual_side: Graph,
    pub dual_terminals: [usize; 3],
}

impl FourierSplitSpec {
    fn validate(&self) -> Result<(), SymmetryError> {
        let g = &self.graph;
        if self.dual_side.edge_count() != self.side_s.len() {
            return Err(SymmetryError::InvalidSeparation);
        }
        let side_t = self.side_s.complement(g.edge_count());
        let vs: BTreeSet<usize> = g.support(self.side_s).into_iter().collect();
        let vt: BTreeSet<usize> = g.support(side_t).into_iter().collect();
        let shared: BTreeSet<usize> = vs.intersection(&vt).copied().collect();
        let terminals: BTreeSet<usize> = self.terminals.iter().copied().collect();
        if shared != terminals || terminals.len() != 3 {
            return Err(SymmetryError::InvalidSeparation);
        }
        Ok(())
    }
}

/// Replace one side of a 3-separation by its supplied dual, gluing along
/// the matched terminals. Returns the new graph and, per original edge
/// index, its index in the new graph.
pub fn fourier_split(spec: &FourierSplitSpec) -> Result<(Graph, Vec<usize>), SymmetryError> {
    spec.validate()?;
    let g = &spec.graph;
    let n = g.edge_count();
    let side_t = spec.side_s.complement(n);
    let mut out = Graph::new(g.vertex_count(), vec![]);
    let mut position = vec![usize::MAX; n];
    for e in side_t.iter() {
        let (u, v) = g.edge(e);
        position[e] = out.edge_count();
        out.add_edge(u, v);
    }
    // glue the dual side, identifying its terminals with the originals
    let identify: Vec<(usize, usize)> = spec
        .terminals
        .iter()
        .zip(&spec.dual_terminals)
        .map(|(&here, &there)| (here, there))
        .collect();
    let base_count = out.edge_count();
    out.glue(&spec.dual_side, &identify);
    for (k, e) in spec.side_s.iter().enumerate() {
        position[e] = base_count + k;
    }
    Ok((out, position))
}

/// Verify the split identity at sampled points of the constraint space
/// where both sides carry half the dimension: the Hepp bound of the split
/// graph with dualized side indices equals the original.
pub fn check_fourier_split(
    spec: &FourierSplitSpec,
    samples: usize,
    seed: u64,
) -> Result<Report, SymmetryError> {
    let (split, position) = fourier_split(spec)?;
    let g = &spec.graph;
    let n = g.edge_count();
    let m = Matroid::graphic(g.clone());
    let m_split = Matroid::graphic(split);
    let loops = m.loops_total() as i64;
    let loops_s = m.corank(spec.side_s) as i64;
    // sdc(S) = d/2 over unknowns a: sum_S a - (loops(S)+1)/loops(G) * sum a = 0
    let mut row = vec![Rational::zero(); n];
    let shift = Rational::new(loops_s + 1, loops);
    for e in 0..n {
        let member = if spec.side_s.contains(e) {
            Rational::one()
        } else {
            Rational::zero()
        };
        row[e] = member - &shift;
    }
    let basis = kernel_basis(vec![row], n);
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut values = Vec::new();
    let mut witnesses = Vec::new();
    let mut done = 0;
    let mut attempts = 0;
    while done < samples && attempts < 64 * samples {
        attempts += 1;
        let a = sample_from_basis(&mut rng, &basis, n);
        let Ok(iv) = IndexVector::new(&m, a.clone()) else {
            continue;
        };
        let Some(d2) = iv.half_dim().cloned() else {
            continue;
        };
        if d2.is_zero() {
            continue;
        }
        let Ok(HeppValue::Finite(original)) = hepp_flag_recursion(&m, &iv) else {
            continue;
        };
        // transport the indices: dual side gets dualized values
        let mut split_a = vec![Rational::zero(); n];
        for e in 0..n {
            let value = if spec.side_s.contains(e) {
                &d2 - &a[e]
            } else {
                a[e].clone()
            };
            split_a[position[e]] = value;
        }
        let Ok(split_iv) = IndexVector::new(&m_split, split_a) else {
            continue;
        };
        let Ok(HeppValue::Finite(mapped)) = hepp_flag_recursion(&m_split, &split_iv) else {
            continue;
        };
        done += 1;
        values.push((format!("sample {done}"), original.to_string()));
        if original != mapped {
            witnesses.push(original.to_string());
            witnesses.push(mapped.to_string());
        }
    }
    if done < samples {
        return Err(SymmetryError::ConstraintInfeasible);
    }
    Ok(Report {
        status: if witnesses.is_empty() {
            Status::Pass
        } else {
            Status::Fail
        },
        values,
        witnesses,
        constraint_dim: Some(basis.len()),
    })
}

/// Verify multiplicativity of the position-space Hepp bound over a 2-sum,
/// at the unit point and at sampled rational index assignments.
pub fn check_product(
    a: &Matroid,
    e: usize,
    b: &Matroid,
    f: usize,
    samples: usize,
    seed: u64,
) -> Result<Report, SymmetryError> {
    let m = Matroid::two_sum(a, e, b, f)?;
    let na = a.size() - 1;
    let nb = b.size() - 1;
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut values = Vec::new();
    let mut witnesses = Vec::new();
    let mut done = 0;
    let mut attempts = 0;
    let run = |xs: Vec<Rational>,
               label: String,
               values: &mut Vec<(String, String)>,
               witnesses: &mut Vec<String>|
     -> Result<bool, SymmetryError> {
        let Ok(iv) = IndexVector::new(&m, xs.clone()) else {
            return Ok(false);
        };
        let Ok(HeppValue::Finite(whole)) = hepp_position(&m, &iv, Algorithm::FlagRecursion) else {
            return Ok(false);
        };
        let d2 = iv.half_dim().unwrap().clone();
        // glue indices: the degree of convergence of the opposite side
        let side_b = EdgeSubset::from_elems(na..na + nb);
        let side_a = side_b.complement(na + nb);
        let sdc_of = |side: EdgeSubset| -> Rational {
            let mut total = Rational::zero();
            for i in side.iter() {
                total += &xs[i];
            }
            total - &d2 * &Rational::from_int(m.corank(side) as i64)
        };
        let glue_a = sdc_of(side_b);
        let glue_b = sdc_of(side_a);
        // rebuild full index vectors on the summands
        let mut a_vals = vec![Rational::zero(); a.size()];
        let mut pos = 0;
        for i in 0..a.size() {
            if i == e {
                a_vals[i] = glue_a.clone();
            } else {
                a_vals[i] = xs[pos].clone();
                pos += 1;
            }
        }
        let mut b_vals = vec![Rational::zero(); b.size()];
        let mut pos = 0;
        for i in 0..b.size() {
            if i == f {
                b_vals[i] = glue_b.clone();
            } else {
                b_vals[i] = xs[na + pos].clone();
                pos += 1;
            }
        }
        let Ok(iv_a) = IndexVector::new(a, a_vals) else {
            return Ok(false);
        };
        let Ok(iv_b) = IndexVector::new(b, b_vals) else {
            return Ok(false);
        };
        let Ok(HeppValue::Finite(left)) = hepp_position(a, &iv_a, Algorithm::FlagRecursion) else {
            return Ok(false);
        };
        let Ok(HeppValue::Finite(right)) = hepp_position(b, &iv_b, Algorithm::FlagRecursion) else {
            return Ok(false);
        };
        let product = &left * &right;
        values.push((label, format!("{whole} = {left} * {right}")));
        if whole != product {
            witnesses.push(whole.to_string());
            witnesses.push(product.to_string());
        }
        Ok(true)
    };
    // unit point first
    run(
        vec![Rational::one(); na + nb],
        "unit".into(),
        &mut values,
        &mut witnesses,
    )?;
    while done < samples && attempts < 64 * samples {
        attempts += 1;
        let xs: Vec<Rational> = (0..na + nb)
            .map(|_| Rational::from_int(rng.gen_range(1i64..=9)))
            .collect();
        if run(
            xs,
            format!("sample {}", done + 1),
            &mut values,
            &mut witnesses,
        )? {
            done += 1;
        }
    }
    if done < samples {
        return Err(SymmetryError::ConstraintInfeasible);
    }
    Ok(Report {
        status: if witnesses.is_empty() {
            Status::Pass
        } else {
            Status::Fail
        },
        values,
        witnesses,
        constraint_dim: None,
    })
}
