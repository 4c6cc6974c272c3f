//! Structural queries on matroids: connectivity, bridges, the bridgeless
//! lattice, flats and hyperplanes, cyclic flats, circuits and singular
//! submatroids.

use std::collections::HashSet;

use super::{EdgeSubset, Matroid, MatroidError, UnionFind};

impl Matroid {
    /// Rank in the quotient by `contracted`, for subsets disjoint from it.
    pub fn quotient_rank(&self, contracted: EdgeSubset, subset: EdgeSubset) -> u32 {
        debug_assert!(subset.intersect(contracted).is_empty());
        self.rank(subset.union(contracted)) - self.rank(contracted)
    }

    fn view_closure(
        &self,
        contracted: EdgeSubset,
        ground: EdgeSubset,
        subset: EdgeSubset,
    ) -> EdgeSubset {
        let r = self.quotient_rank(contracted, subset);
        let mut out = subset;
        for e in ground.minus(subset).iter() {
            if self.quotient_rank(contracted, subset.insert(e)) == r {
                out = out.insert(e);
            }
        }
        out
    }

    /// Closure (span) of `subset` inside the full matroid.
    pub fn closure(&self, subset: EdgeSubset) -> EdgeSubset {
        self.view_closure(EdgeSubset::EMPTY, self.ground(), subset)
    }

    /// The bridges of `subset`: elements whose removal lowers its rank,
    /// i.e. elements of `subset` lying in none of its circuits.
    pub fn bridges(&self, subset: EdgeSubset) -> EdgeSubset {
        let r = self.rank(subset);
        EdgeSubset::from_elems(subset.iter().filter(|&e| self.rank(subset.remove(e)) < r))
    }

    /// The largest bridgeless subset of `subset` (the union of its
    /// circuits).
    pub fn interior(&self, subset: EdgeSubset) -> EdgeSubset {
        subset.minus(self.bridges(subset))
    }

    pub fn is_bridgeless(&self, subset: EdgeSubset) -> bool {
        self.bridges(subset).is_empty()
    }

    /// Maximal bridgeless subsets of a bridgeless `subset` with corank one
    /// less. Elements are grouped into classes under `e ~ f` iff removing
    /// both drops the rank; the children are the class complements.
    pub fn bridgeless_children(&self, subset: EdgeSubset) -> Result<Vec<EdgeSubset>, MatroidError> {
        if !self.is_bridgeless(subset) || self.corank(subset) == 0 {
            return Err(MatroidError::NotBridgeless);
        }
        let elems = subset.elems();
        let r = self.rank(subset);
        let mut uf = UnionFind::new(elems.len());
        for i in 0..elems.len() {
            for j in (i + 1)..elems.len() {
                let both = subset.remove(elems[i]).remove(elems[j]);
                if self.rank(both) < r {
                    uf.union(i, j);
                }
            }
        }
        let mut classes: Vec<(usize, EdgeSubset)> = Vec::new();
        for (i, &e) in elems.iter().enumerate() {
            let root = uf.find(i);
            match classes.iter_mut().find(|(r0, _)| *r0 == root) {
                Some((_, class)) => *class = class.insert(e),
                None => classes.push((root, EdgeSubset::singleton(e))),
            }
        }
        Ok(classes.into_iter().map(|(_, c)| subset.minus(c)).collect())
    }

    /// Connected components of the restriction to `subset`, via transitive
    /// closure of the fundamental circuits of one maximal independent set.
    pub fn components_of(&self, subset: EdgeSubset) -> Vec<EdgeSubset> {
        self.components_view(EdgeSubset::EMPTY, subset)
    }

    /// Components of the minor (contract `contracted`, restrict to
    /// `ground`).
    pub fn components_view(&self, contracted: EdgeSubset, ground: EdgeSubset) -> Vec<EdgeSubset> {
        let elems = ground.elems();
        if elems.is_empty() {
            return vec![];
        }
        // greedy basis of the view
        let mut basis = EdgeSubset::EMPTY;
        for &e in &elems {
            if self.quotient_rank(contracted, basis.insert(e))
                > self.quotient_rank(contracted, basis)
            {
                basis = basis.insert(e);
            }
        }
        let r = self.quotient_rank(contracted, basis);
        let pos = |e: usize| elems.binary_search(&e).unwrap();
        let mut uf = UnionFind::new(elems.len());
        for &e in &elems {
            if basis.contains(e) {
                continue;
            }
            // fundamental circuit of e: elements b of the basis with
            // (basis - b) + e still spanning
            for b in basis.iter() {
                if self.quotient_rank(contracted, basis.remove(b).insert(e)) == r {
                    uf.union(pos(e), pos(b));
                }
            }
        }
        let mut roots: Vec<(usize, EdgeSubset)> = Vec::new();
        for (i, &e) in elems.iter().enumerate() {
            let root = uf.find(i);
            match roots.iter_mut().find(|(r0, _)| *r0 == root) {
                Some((_, c)) => *c = c.insert(e),
                None => roots.push((root, EdgeSubset::singleton(e))),
            }
        }
        let mut comps: Vec<EdgeSubset> = roots.into_iter().map(|(_, c)| c).collect();
        comps.sort();
        comps
    }

    pub fn components(&self) -> Vec<EdgeSubset> {
        self.components_of(self.ground())
    }

    /// A matroid with at least one element is connected when it cannot be
    /// split into two rank-additive parts. The empty matroid counts as not
    /// connected.
    pub fn is_connected(&self) -> bool {
        self.size() > 0 && self.components().len() == 1
    }

    pub fn subset_connected(&self, subset: EdgeSubset) -> bool {
        !subset.is_empty() && self.components_of(subset).len() == 1
    }

    pub fn quotient_connected(&self, contracted: EdgeSubset) -> bool {
        let ground = contracted.complement(self.size());
        !ground.is_empty() && self.components_view(contracted, ground).len() == 1
    }

    /// Flats of the restriction to `ground`, grouped by rank `0..=r`.
    pub fn flats_by_rank(&self, ground: EdgeSubset) -> Vec<Vec<EdgeSubset>> {
        self.flats_by_rank_view(EdgeSubset::EMPTY, ground)
    }

    fn flats_by_rank_view(
        &self,
        contracted: EdgeSubset,
        ground: EdgeSubset,
    ) -> Vec<Vec<EdgeSubset>> {
        let r = self.quotient_rank(contracted, ground) as usize;
        let mut levels: Vec<Vec<EdgeSubset>> = Vec::with_capacity(r + 1);
        let bottom = self.view_closure(contracted, ground, EdgeSubset::EMPTY);
        levels.push(vec![bottom]);
        for _ in 0..r {
            let prev = levels.last().unwrap();
            let mut next: HashSet<EdgeSubset> = HashSet::new();
            for &flat in prev {
                for e in ground.minus(flat).iter() {
                    next.insert(self.view_closure(contracted, ground, flat.insert(e)));
                }
            }
            let mut level: Vec<EdgeSubset> = next.into_iter().collect();
            level.sort();
            levels.push(level);
        }
        levels
    }

    /// Rank-one flats of the full matroid (parallel classes, with loops
    /// absorbed).
    pub fn flats_rank1(&self) -> Vec<EdgeSubset> {
        let mut out: HashSet<EdgeSubset> = HashSet::new();
        for e in 0..self.size() {
            if self.rank(EdgeSubset::singleton(e)) == 1 {
                out.insert(self.closure(EdgeSubset::singleton(e)));
            }
        }
        let mut v: Vec<EdgeSubset> = out.into_iter().collect();
        v.sort();
        v
    }

    /// Hyperplanes of the restriction to `subset`: its flats of rank one
    /// less. Graphic matroids with a graph-connected subset use vertex
    /// bipartitions; everything else descends the flat lattice.
    pub fn hyperplanes_of(&self, subset: EdgeSubset) -> Vec<EdgeSubset> {
        if self.rank(subset) == 0 {
            return vec![];
        }
        if let Some(g) = self.graph() {
            if g.edges_connected(subset) {
                return self.graphic_hyperplanes(subset);
            }
        }
        let levels = self.flats_by_rank(subset);
        levels[levels.len() - 2].clone()
    }

    fn graphic_hyperplanes(&self, subset: EdgeSubset) -> Vec<EdgeSubset> {
        let g = self.graph().unwrap();
        let support = g.support(subset);
        let k = support.len();
        if k < 2 {
            // only self-loops: sole hyperplane is the loop set minus rank,
            // but rank 0 was already excluded, so this cannot happen
            return vec![];
        }
        let vpos = |v: usize| support.binary_search(&v).unwrap();
        let mut out = HashSet::new();
        // fix support[0] on the first side
        for split in 0..(1u64 << (k - 1)) {
            let side = split << 1; // bit i = side of support[i], bit 0 = 0
            let mut flat = EdgeSubset::EMPTY;
            let mut cut = Vec::new();
            for e in subset.iter() {
                let (u, v) = g.edge(e);
                let su = side >> vpos(u) & 1;
                let sv = side >> vpos(v) & 1;
                if su == sv {
                    flat = flat.insert(e);
                } else {
                    cut.push(e);
                }
            }
            if cut.is_empty() {
                continue;
            }
            // both induced sides must be connected within the subset
            let side_a =
                EdgeSubset::from_elems(flat.iter().filter(|&e| side >> vpos(g.edge(e).0) & 1 == 0));
            let side_b = flat.minus(side_a);
            let verts_a = (0..k).filter(|&i| side >> i & 1 == 0).count();
            let verts_b = k - verts_a;
            let conn = |part: EdgeSubset, nverts: usize| -> bool {
                if nverts <= 1 {
                    return true;
                }
                // connected iff the part spans its side in one piece
                g.edges_connected(part) && g.support(part).len() == nverts
            };
            if conn(side_a, verts_a) && conn(side_b, verts_b) {
                out.insert(flat);
            }
        }
        let mut v: Vec<EdgeSubset> = out.into_iter().collect();
        v.sort();
        v
    }

    /// Hyperplanes of the minor (contract `contracted`, restrict to
    /// `ground`) that are independent there.
    pub fn independent_view_hyperplanes(
        &self,
        contracted: EdgeSubset,
        ground: EdgeSubset,
    ) -> Vec<EdgeSubset> {
        if self.quotient_rank(contracted, ground) == 0 {
            return vec![];
        }
        let levels = self.flats_by_rank_view(contracted, ground);
        levels[levels.len() - 2]
            .iter()
            .copied()
            .filter(|&h| self.quotient_rank(contracted, h) == h.len() as u32)
            .collect()
    }

    /// Hyperplanes of the full matroid that are independent sets.
    pub fn independent_hyperplanes(&self) -> Vec<EdgeSubset> {
        self.independent_view_hyperplanes(EdgeSubset::EMPTY, self.ground())
    }

    /// Cyclic flats (bridgeless flats) of the restriction to `ground`,
    /// enumerated through the flat lattice.
    pub fn cyclic_flats_of(&self, ground: EdgeSubset) -> Vec<EdgeSubset> {
        let mut out: Vec<EdgeSubset> = self
            .flats_by_rank(ground)
            .into_iter()
            .flatten()
            .filter(|&f| self.is_bridgeless(f))
            .collect();
        out.sort_by_key(|s| (s.len(), s.0));
        out.dedup();
        out
    }

    pub fn cyclic_flats(&self) -> Vec<EdgeSubset> {
        self.cyclic_flats_of(self.ground())
    }

    /// Circuits whose rank equals the rank of the matroid, i.e. circuits of
    /// size `rank + 1`.
    pub fn hamiltonian_circuits(&self) -> Vec<EdgeSubset> {
        let r = self.full_rank();
        let mut out = Vec::new();
        let mut stack = vec![(EdgeSubset::EMPTY, 0usize)];
        while let Some((set, from)) = stack.pop() {
            if set.len() == (r + 1) as usize {
                if set.iter().all(|e| self.rank(set.remove(e)) == r) {
                    out.push(set);
                }
                continue;
            }
            let remaining = (r + 1) as usize - set.len();
            for e in from..self.size() {
                if self.size() - e < remaining {
                    break;
                }
                stack.push((set.insert(e), e + 1));
            }
        }
        out.sort();
        out
    }

    /// The singular submatroids: nonempty proper subsets that are connected
    /// with connected quotient. These label all simple poles of the Hepp
    /// bound, the facets of the Newton polytope and the polar vertices.
    /// Output is sorted by (size, bitmask).
    pub fn singular_submatroids(&self) -> Result<Vec<EdgeSubset>, MatroidError> {
        if !self.is_connected() {
            return Err(MatroidError::NotConnected);
        }
        let n = self.size();
        let mut out = Vec::new();
        for mask in 1..EdgeSubset::full(n).0 {
            let subset = EdgeSubset(mask);
            if self.subset_connected(subset) && self.quotient_connected(subset) {
                out.push(subset);
            }
        }
        out.sort_by_key(|s| (s.len(), s.0));
        Ok(out)
    }

    /// All bases, failing once more than `cap` are found.
    pub fn bases(&self, cap: usize) -> Result<Vec<EdgeSubset>, MatroidError> {
        let r = self.full_rank();
        let mut out = Vec::new();
        let mut stack = vec![(EdgeSubset::EMPTY, 0usize)];
        while let Some((set, from)) = stack.pop() {
            if set.len() == r as usize {
                out.push(set);
                if out.len() > cap {
                    return Err(MatroidError::TooLarge(out.len()));
                }
                continue;
            }
            let need = r as usize - set.len();
            for e in from..self.size() {
                if self.size() - e < need {
                    break;
                }
                if self.rank(set.insert(e)) > self.rank(set) {
                    stack.push((set.insert(e), e + 1));
                }
            }
        }
        out.sort();
        Ok(out)
    }

    pub fn basis_count(&self, cap: usize) -> Result<usize, MatroidError> {
        Ok(self.bases(cap)?.len())
    }
}
