//! Brute-force oracle: the factorial sum over all edge orders, evaluated
//! exactly by a subset dynamic program that groups orders by their prefix
//! sets. This is the reference every other algorithm is tested against.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::arith::{Rational, UniRatFunc};
use crate::matroid::{EdgeSubset, Matroid};

use super::{point_ctx, Ctx, EngineError, HeppValue, IndexLine, IndexVector, Scalar, ZeroDen};

const ORACLE_LIMIT: usize = 10;

/// Sum over all `N!` edge orders of the reciprocal product of the proper
/// prefix degrees of convergence. Orders sharing a prefix set are grouped,
/// so the run time is `O(2^N * N)` instead of factorial.
///
/// If some prefix degree vanishes at the requested point, the sum is
/// re-evaluated along a random rational perturbation line and read off at
/// its base point; only a genuinely singular point reports a pole.
pub fn hepp_sector_oracle(m: &Matroid, iv: &IndexVector) -> Result<HeppValue, EngineError> {
    if iv.values().len() != m.size() {
        return Err(EngineError::IndexLength {
            expected: m.size(),
            got: iv.values().len(),
        });
    }
    if m.size() > ORACLE_LIMIT {
        return Err(EngineError::SizeLimit(ORACLE_LIMIT));
    }
    if m.size() == 1 {
        return Ok(HeppValue::Finite(Rational::one()));
    }
    let ctx = point_ctx(m, iv);
    match prefix_sum(&ctx) {
        Ok(v) => Ok(HeppValue::Finite(v)),
        Err(ZeroDen::Sdc(_)) => perturbed_value(m, iv),
        Err(_) => unreachable!("oracle divides only by prefix degrees"),
    }
}

fn prefix_sum<S: Scalar>(ctx: &Ctx<'_, S>) -> Result<S, ZeroDen> {
    let n = ctx.m.size();
    let full = EdgeSubset::full(n);
    // weight(mask) = sum over orders of mask of 1 / prod of sdc over all
    // nonempty prefixes (including mask itself)
    let mut weight: Vec<S> = vec![S::zero(); 1 << n];
    weight[0] = S::one();
    for mask in 1..(1u64 << n) {
        if mask == full.0 {
            continue;
        }
        let subset = EdgeSubset(mask);
        let den = ctx.sdc(subset);
        if !den.invertible() {
            return Err(ZeroDen::Sdc(subset));
        }
        let mut acc = S::zero();
        for e in subset.iter() {
            acc = acc.add(&weight[(mask & !(1u64 << e)) as usize]);
        }
        weight[mask as usize] = acc.div(&den);
    }
    // the final prefix (the full set) carries no denominator
    let mut total = S::zero();
    for e in 0..n {
        total = total.add(&weight[(full.0 & !(1u64 << e)) as usize]);
    }
    Ok(total)
}

/// Retry along `a + t * v` for random small integer directions `v`; exact
/// cancellations between sectors survive, so the base-point value exists
/// unless the point lies on a genuine pole.
fn perturbed_value(m: &Matroid, iv: &IndexVector) -> Result<HeppValue, EngineError> {
    let mut rng = ChaCha8Rng::seed_from_u64(0x4845_5050);
    let n = m.size();
    let loops = m.loops_total();
    for _ in 0..16 {
        let direction: Vec<Rational> = (0..n)
            .map(|_| Rational::from_int(rng.gen_range(1..=23)))
            .collect();
        let dir_sum: Rational = direction.iter().cloned().sum();
        let d2 = if loops == 0 {
            UniRatFunc::zero()
        } else {
            let base_sum: Rational = iv.values().iter().cloned().sum();
            UniRatFunc::from_poly(crate::arith::UniPoly::linear(
                base_sum / Rational::from_int(loops as i64),
                dir_sum / Rational::from_int(loops as i64),
            ))
        };
        let a: Vec<UniRatFunc> = (0..n)
            .map(|e| {
                UniRatFunc::from_poly(crate::arith::UniPoly::linear(
                    iv.value(e).clone(),
                    direction[e].clone(),
                ))
            })
            .collect();
        let ctx = Ctx { m, a, d2 };
        let f = match prefix_sum(&ctx) {
            Ok(f) => f,
            Err(_) => continue, // degenerate direction, pick another
        };
        return match f.eval_at(&Rational::zero()) {
            Ok(v) => Ok(HeppValue::Finite(v)),
            Err(_) => Ok(HeppValue::Pole(pole_witness(m, iv))),
        };
    }
    // every direction degenerated; treat as a pole at the witness
    Ok(HeppValue::Pole(pole_witness(m, iv)))
}

/// A singular subset whose degree of convergence vanishes at the point.
fn pole_witness(m: &Matroid, iv: &IndexVector) -> EdgeSubset {
    let ctx = point_ctx(m, iv);
    if let Ok(sing) = m.singular_submatroids() {
        for subset in sing {
            if ctx.sdc(subset).is_zero() {
                return subset;
            }
        }
    }
    // fall back to any vanishing proper subset
    for mask in 1..m.ground().0 {
        let subset = EdgeSubset(mask);
        if ctx.sdc(subset).is_zero() {
            return subset;
        }
    }
    EdgeSubset::EMPTY
}

/// Oracle restricted to a line, as an exact rational function. Used by
/// tests; sizes beyond 8 edges are rejected.
pub fn sector_oracle_line(m: &Matroid, line: &IndexLine) -> Result<UniRatFunc, EngineError> {
    if m.size() > 8 {
        return Err(EngineError::SizeLimit(8));
    }
    let loops = m.loops_total();
    let base_sum: Rational = line.base.iter().cloned().sum();
    let dir_sum: Rational = line.direction.iter().cloned().sum();
    let d2 = if loops == 0 {
        UniRatFunc::zero()
    } else {
        UniRatFunc::from_poly(crate::arith::UniPoly::linear(
            base_sum / Rational::from_int(loops as i64),
            dir_sum / Rational::from_int(loops as i64),
        ))
    };
    let a: Vec<UniRatFunc> = (0..m.size())
        .map(|e| UniRatFunc::from_poly(line.index_poly(e)))
        .collect();
    let ctx = Ctx { m, a, d2 };
    prefix_sum(&ctx).map_err(|_| EngineError::DegenerateLine)
}
