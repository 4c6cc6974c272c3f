//! Bridgeless-flag recursion: a memoized top-down traversal of the lattice
//! of bridgeless subsets. For a subset `g` with one loop the accumulated
//! flag weight is the sum of its indices; above that, each bridgeless child
//! `c` (corank one less) contributes `index_sum(g \ c) * weight(c) / sdc(c)`.
//! The Hepp bound is the top weight divided by the product of all indices.

use std::collections::HashMap;

use crate::arith::Rational;
use crate::matroid::EdgeSubset;

use super::{Ctx, Scalar, ZeroDen};

pub(crate) fn flag_value<S: Scalar>(ctx: &Ctx<'_, S>) -> Result<S, ZeroDen> {
    let ground = ctx.m.ground();
    let mut memo: HashMap<u64, S> = HashMap::new();
    let top = weight(ctx, ground, &mut memo)?;
    let mut denom = S::one();
    for e in 0..ctx.m.size() {
        if !ctx.a[e].invertible() {
            return Err(ZeroDen::Index(e));
        }
        denom = denom.mul(&ctx.a[e]);
    }
    Ok(top.div(&denom))
}

fn weight<S: Scalar>(
    ctx: &Ctx<'_, S>,
    subset: EdgeSubset,
    memo: &mut HashMap<u64, S>,
) -> Result<S, ZeroDen> {
    if let Some(v) = memo.get(&subset.0) {
        return Ok(v.clone());
    }
    let value = if ctx.m.corank(subset) == 1 {
        ctx.index_sum(subset)
    } else {
        let mut acc = S::zero();
        for child in ctx.m.bridgeless_children(subset).expect("bridgeless") {
            let den = ctx.sdc(child);
            if !den.invertible() {
                return Err(ZeroDen::Sdc(child));
            }
            let num = ctx.index_sum(subset.minus(child));
            let w = weight(ctx, child, memo)?;
            acc = acc.add(&num.mul(&w).div(&den));
        }
        acc
    };
    memo.insert(subset.0, value.clone());
    Ok(value)
}

/// Unit-index fast path: all degrees of convergence are integers after
/// scaling by the loop number, so the denominators stay in machine words.
pub(crate) fn flag_value_unit(ctx: &Ctx<'_, Rational>) -> Result<Rational, ZeroDen> {
    let m = ctx.m;
    let n = m.size() as i64;
    let loops = m.loops_total() as i64;
    debug_assert!(loops >= 1);
    // scaled sdc: loops * sdc(g) = |g| * loops - n * corank(g)
    let ssdc = |subset: EdgeSubset| subset.len() as i64 * loops - n * m.corank(subset) as i64;
    let mut memo: HashMap<u64, Rational> = HashMap::new();
    let top = unit_weight(ctx, m.ground(), loops, &ssdc, &mut memo)?;
    Ok(top)
}

fn unit_weight(
    ctx: &Ctx<'_, Rational>,
    subset: EdgeSubset,
    loops: i64,
    ssdc: &impl Fn(EdgeSubset) -> i64,
    memo: &mut HashMap<u64, Rational>,
) -> Result<Rational, ZeroDen> {
    if let Some(v) = memo.get(&subset.0) {
        return Ok(v.clone());
    }
    let value = if ctx.m.corank(subset) == 1 {
        Rational::from_int(subset.len() as i64)
    } else {
        let mut acc = Rational::zero();
        for child in ctx.m.bridgeless_children(subset).expect("bridgeless") {
            let den = ssdc(child);
            if den == 0 {
                return Err(ZeroDen::Sdc(child));
            }
            let num = (subset.len() - child.len()) as i64 * loops;
            let w = unit_weight(ctx, child, loops, ssdc, memo)?;
            acc += w * Rational::new(num, den);
        }
        acc
    };
    memo.insert(subset.0, value.clone());
    Ok(value)
}
