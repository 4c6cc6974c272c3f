//! Hepp bound from flats: a memoized recursion over hyperplanes (minimal
//! cuts, for graphs) with dual-index numerators, and its refinement over
//! the lattice of cyclic flats.

use std::collections::HashMap;

use crate::matroid::EdgeSubset;

use super::{Ctx, Scalar, ZeroDen};

/// Recursion over hyperplanes: for a connected subset the value is the sum
/// over its hyperplanes of the dual-index factor of the cut times the
/// product over the hyperplane's components of value/sdc.
pub(crate) fn flats_value<S: Scalar>(ctx: &Ctx<'_, S>) -> Result<S, ZeroDen> {
    let mut memo: HashMap<u64, S> = HashMap::new();
    phi(ctx, ctx.m.ground(), &mut memo)
}

fn phi<S: Scalar>(
    ctx: &Ctx<'_, S>,
    subset: EdgeSubset,
    memo: &mut HashMap<u64, S>,
) -> Result<S, ZeroDen> {
    if let Some(v) = memo.get(&subset.0) {
        return Ok(v.clone());
    }
    let mut acc = S::zero();
    for hyperplane in ctx.m.hyperplanes_of(subset) {
        let cut = subset.minus(hyperplane);
        let mut num = S::zero();
        let mut den = S::one();
        for e in cut.iter() {
            let dual = ctx.dual_index(e);
            if !dual.invertible() {
                return Err(ZeroDen::DualIndex(e));
            }
            num = num.add(&dual);
            den = den.mul(&dual);
        }
        let mut term = num.div(&den);
        for component in ctx.m.components_of(hyperplane) {
            let sdc = ctx.sdc(component);
            if !sdc.invertible() {
                return Err(ZeroDen::Sdc(component));
            }
            let value = phi(ctx, component, memo)?;
            term = term.mul(&value.div(&sdc));
        }
        acc = acc.add(&term);
    }
    memo.insert(subset.0, acc.clone());
    Ok(acc)
}

/// Recursion over cyclic flats: the value of a connected subset sums, over
/// its proper cyclic flats Z, the product of component values of Z times a
/// factor collecting all hyperplanes whose interior is Z (a sum over
/// independent hyperplanes of the quotient).
pub(crate) fn cyclic_flats_value<S: Scalar>(ctx: &Ctx<'_, S>) -> Result<S, ZeroDen> {
    let mut memo: HashMap<u64, S> = HashMap::new();
    psi(ctx, ctx.m.ground(), &mut memo)
}

fn psi<S: Scalar>(
    ctx: &Ctx<'_, S>,
    subset: EdgeSubset,
    memo: &mut HashMap<u64, S>,
) -> Result<S, ZeroDen> {
    if let Some(v) = memo.get(&subset.0) {
        return Ok(v.clone());
    }
    let mut acc = S::zero();
    for z in ctx.m.cyclic_flats_of(subset) {
        if z == subset {
            continue;
        }
        let mut weight = S::one();
        for component in ctx.m.components_of(z) {
            let sdc = ctx.sdc(component);
            if !sdc.invertible() {
                return Err(ZeroDen::Sdc(component));
            }
            let value = psi(ctx, component, memo)?;
            weight = weight.mul(&value.div(&sdc));
        }
        let factor = quotient_factor(ctx, z, subset.minus(z))?;
        acc = acc.add(&weight.mul(&factor));
    }
    memo.insert(subset.0, acc.clone());
    Ok(acc)
}

/// Sum over independent hyperplanes H of the quotient ground set: dual-sum
/// of the complement over (product of indices on H) * (product of dual
/// indices off H). Empty when the quotient is disconnected.
fn quotient_factor<S: Scalar>(
    ctx: &Ctx<'_, S>,
    contracted: EdgeSubset,
    ground: EdgeSubset,
) -> Result<S, ZeroDen> {
    let mut acc = S::zero();
    for h in ctx.m.independent_view_hyperplanes(contracted, ground) {
        let rest = ground.minus(h);
        let mut num = S::zero();
        let mut den = S::one();
        for e in rest.iter() {
            let dual = ctx.dual_index(e);
            if !dual.invertible() {
                return Err(ZeroDen::DualIndex(e));
            }
            num = num.add(&dual);
            den = den.mul(&dual);
        }
        for e in h.iter() {
            if !ctx.a[e].invertible() {
                return Err(ZeroDen::Index(e));
            }
            den = den.mul(&ctx.a[e]);
        }
        acc = acc.add(&num.div(&den));
    }
    Ok(acc)
}
