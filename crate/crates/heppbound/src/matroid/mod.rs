//! Graphs, matroids as rank oracles, their realizations, minors, sums, and
//! the structural queries (bridges, flats, cyclic flats, connectivity,
//! singular submatroids) the evaluation engines are built on.

mod graph;
mod structure;
mod subset;

pub use graph::{Graph, UnionFind};
pub use subset::EdgeSubset;

use std::collections::HashMap;
use std::fmt;
use std::sync::{Arc, Mutex};

use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum MatroidError {
    #[error("ground sets are capped at 64 elements (got {0})")]
    TooLarge(usize),
    #[error("2-sum requires connected parts with at least 3 elements and valid glue edges")]
    TwoSumPrecondition,
    #[error("subset has a bridge, expected a bridgeless set")]
    NotBridgeless,
    #[error("matroid is not connected")]
    NotConnected,
    #[error("empty or invalid basis list")]
    BadBasisList,
}

/// A matroid given by a rank oracle over a ground set of at most 64
/// elements, tagged with the realization it was built from. Values are
/// immutable; the rank cache is internally synchronized, so a `Matroid` can
/// be shared and queried concurrently.
#[derive(Clone)]
pub struct Matroid {
    inner: Arc<Inner>,
}

struct Inner {
    n: usize,
    kind: Kind,
    rank_cache: Mutex<HashMap<u64, u32>>,
}

enum Kind {
    Graphic(Graph),
    Uniform {
        rank: u32,
    },
    BasisList {
        bases: Vec<EdgeSubset>,
    },
    LinearGf2 {
        columns: Vec<u64>,
    },
    Dual(Matroid),
    /// Minor of `parent`: contract `contracted`, then keep `kept` (parent
    /// indices, in order) as the new ground set.
    Minor {
        parent: Matroid,
        contracted: EdgeSubset,
        kept: Vec<usize>,
    },
    DirectSum(Matroid, Matroid),
    /// 2-sum along `e` in `a` and `f` in `b`; ground set is a\e then b\f.
    TwoSum {
        a: Matroid,
        e: usize,
        b: Matroid,
        f: usize,
        a_kept: Vec<usize>,
        b_kept: Vec<usize>,
    },
}

impl Matroid {
    fn build(n: usize, kind: Kind) -> Result<Matroid, MatroidError> {
        if n > 64 {
            return Err(MatroidError::TooLarge(n));
        }
        Ok(Matroid {
            inner: Arc::new(Inner {
                n,
                kind,
                rank_cache: Mutex::new(HashMap::new()),
            }),
        })
    }

    pub fn graphic(graph: Graph) -> Matroid {
        Matroid::build(graph.edge_count(), Kind::Graphic(graph)).expect("graph too large")
    }

    pub fn uniform(n: usize, r: usize) -> Matroid {
        assert!(r <= n, "uniform rank exceeds size");
        Matroid::build(n, Kind::Uniform { rank: r as u32 }).expect("ground set too large")
    }

    pub fn from_bases(n: usize, bases: Vec<EdgeSubset>) -> Result<Matroid, MatroidError> {
        if bases.is_empty() {
            return Err(MatroidError::BadBasisList);
        }
        let size = bases[0].len();
        let full = EdgeSubset::full(n);
        if !bases
            .iter()
            .all(|b| b.len() == size && b.is_subset_of(full))
        {
            return Err(MatroidError::BadBasisList);
        }
        Matroid::build(n, Kind::BasisList { bases })
    }

    /// Columns of a 0/1 matrix over GF(2); column `i` is the bitmask of its
    /// rows. Ground-set element `i` is column `i`.
    pub fn linear_gf2(columns: Vec<u64>) -> Result<Matroid, MatroidError> {
        let n = columns.len();
        Matroid::build(n, Kind::LinearGf2 { columns })
    }

    pub fn dual(&self) -> Matroid {
        Matroid::build(self.size(), Kind::Dual(self.clone())).unwrap()
    }

    pub fn delete(&self, removed: EdgeSubset) -> Matroid {
        self.minor(removed, EdgeSubset::EMPTY)
    }

    pub fn contract(&self, contracted: EdgeSubset) -> Matroid {
        self.minor(EdgeSubset::EMPTY, contracted)
    }

    /// Restriction to `subset` = deletion of its complement.
    pub fn restrict(&self, subset: EdgeSubset) -> Matroid {
        self.delete(subset.complement(self.size()))
    }

    pub fn minor(&self, deleted: EdgeSubset, contracted: EdgeSubset) -> Matroid {
        // graphic matroids stay graphic under minors, keeping fast paths
        if let Kind::Graphic(g) = &self.inner.kind {
            let keep: Vec<usize> = (0..self.size())
                .filter(|&e| !deleted.contains(e) && !contracted.contains(e))
                .collect();
            let contracted_graph = g.contract_edges(contracted);
            // contract_edges drops contracted edges and keeps the rest in
            // order; remove the deleted ones as well
            let deleted_after: Vec<usize> = (0..self.size())
                .filter(|&e| !contracted.contains(e))
                .enumerate()
                .filter(|&(_, orig)| deleted.contains(orig))
                .map(|(pos, _)| pos)
                .collect();
            let mut edges = Vec::new();
            for (pos, &(u, v)) in contracted_graph.edges().iter().enumerate() {
                if !deleted_after.contains(&pos) {
                    edges.push((u, v));
                }
            }
            debug_assert_eq!(edges.len(), keep.len());
            return Matroid::graphic(Graph::new(contracted_graph.vertex_count(), edges));
        }
        let kept: Vec<usize> = (0..self.size())
            .filter(|&e| !deleted.contains(e) && !contracted.contains(e))
            .collect();
        Matroid::build(
            kept.len(),
            Kind::Minor {
                parent: self.clone(),
                contracted,
                kept,
            },
        )
        .unwrap()
    }

    pub fn direct_sum(a: &Matroid, b: &Matroid) -> Result<Matroid, MatroidError> {
        Matroid::build(a.size() + b.size(), Kind::DirectSum(a.clone(), b.clone()))
    }

    /// 2-sum gluing `e` in `a` to `f` in `b`; the new ground set lists the
    /// elements of `a` without `e` first (in order), then those of `b`
    /// without `f`.
    pub fn two_sum(a: &Matroid, e: usize, b: &Matroid, f: usize) -> Result<Matroid, MatroidError> {
        if a.size() < 3 || b.size() < 3 || e >= a.size() || f >= b.size() {
            return Err(MatroidError::TwoSumPrecondition);
        }
        if !a.is_connected() || !b.is_connected() {
            return Err(MatroidError::TwoSumPrecondition);
        }
        let a_kept: Vec<usize> = (0..a.size()).filter(|&x| x != e).collect();
        let b_kept: Vec<usize> = (0..b.size()).filter(|&x| x != f).collect();
        Matroid::build(
            a_kept.len() + b_kept.len(),
            Kind::TwoSum {
                a: a.clone(),
                e,
                b: b.clone(),
                f,
                a_kept,
                b_kept,
            },
        )
    }

    pub fn size(&self) -> usize {
        self.inner.n
    }

    pub fn ground(&self) -> EdgeSubset {
        EdgeSubset::full(self.size())
    }

    /// Underlying graph for graphic realizations.
    pub fn graph(&self) -> Option<&Graph> {
        match &self.inner.kind {
            Kind::Graphic(g) => Some(g),
            _ => None,
        }
    }

    /// Rank of an edge subset, memoized per matroid instance.
    pub fn rank(&self, subset: EdgeSubset) -> u32 {
        debug_assert!(subset.is_subset_of(self.ground()));
        if subset.is_empty() {
            return 0;
        }
        if let Some(&r) = self.inner.rank_cache.lock().unwrap().get(&subset.0) {
            return r;
        }
        let r = self.rank_uncached(subset);
        self.inner.rank_cache.lock().unwrap().insert(subset.0, r);
        r
    }

    fn rank_uncached(&self, subset: EdgeSubset) -> u32 {
        match &self.inner.kind {
            Kind::Graphic(g) => g.rank(subset),
            Kind::Uniform { rank } => (subset.len() as u32).min(*rank),
            Kind::BasisList { bases } => bases
                .iter()
                .map(|b| b.intersect(subset).len() as u32)
                .max()
                .unwrap(),
            Kind::LinearGf2 { columns } => {
                let mut pivots: Vec<u64> = Vec::new();
                for e in subset.iter() {
                    let mut col = columns[e];
                    for &p in &pivots {
                        let low = p & p.wrapping_neg();
                        if col & low != 0 {
                            col ^= p;
                        }
                    }
                    if col != 0 {
                        pivots.push(col);
                    }
                }
                pivots.len() as u32
            }
            Kind::Dual(primal) => {
                let n = primal.size();
                let co = subset.complement(n);
                subset.len() as u32 + primal.rank(co) - primal.rank(EdgeSubset::full(n))
            }
            Kind::Minor {
                parent,
                contracted,
                kept,
            } => {
                let lifted = EdgeSubset::from_elems(subset.iter().map(|e| kept[e]));
                parent.rank(lifted.union(*contracted)) - parent.rank(*contracted)
            }
            Kind::DirectSum(a, b) => {
                let na = a.size();
                let low = subset.intersect(EdgeSubset::full(na));
                let high = EdgeSubset(subset.0 >> na).intersect(EdgeSubset::full(b.size()));
                a.rank(low) + b.rank(high)
            }
            Kind::TwoSum {
                a,
                e,
                b,
                f,
                a_kept,
                b_kept,
            } => {
                let na = a_kept.len();
                let xa =
                    EdgeSubset::from_elems(subset.iter().filter(|&x| x < na).map(|x| a_kept[x]));
                let xb = EdgeSubset::from_elems(
                    subset.iter().filter(|&x| x >= na).map(|x| b_kept[x - na]),
                );
                let plain = a.rank(xa) + b.rank(xb);
                let glued = a.rank(xa.insert(*e)) + b.rank(xb.insert(*f)) - 1;
                plain.min(glued)
            }
        }
    }

    pub fn full_rank(&self) -> u32 {
        self.rank(self.ground())
    }

    /// Corank (loop number) of a subset: `|subset| - rank(subset)`.
    pub fn corank(&self, subset: EdgeSubset) -> u32 {
        subset.len() as u32 - self.rank(subset)
    }

    pub fn loops_total(&self) -> u32 {
        self.corank(self.ground())
    }
}

impl fmt::Debug for Matroid {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let kind = match &self.inner.kind {
            Kind::Graphic(_) => "graphic",
            Kind::Uniform { .. } => "uniform",
            Kind::BasisList { .. } => "basis_list",
            Kind::LinearGf2 { .. } => "linear_gf2",
            Kind::Dual(_) => "dual",
            Kind::Minor { .. } => "minor",
            Kind::DirectSum(..) => "direct_sum",
            Kind::TwoSum { .. } => "two_sum",
        };
        write!(f, "Matroid({}, n={})", kind, self.size())
    }
}
