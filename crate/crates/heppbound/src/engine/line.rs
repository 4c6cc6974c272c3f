//! Restriction of the Hepp bound to a one-parameter index line, as an exact
//! univariate rational function. All poles are simple, located where the
//! degree of convergence of a singular subset vanishes along the line.

use crate::arith::{Rational, UniPoly, UniRatFunc};
use crate::matroid::Matroid;

use super::{flag, flats, Ctx, EngineError, IndexLine};

/// Restrict the Hepp bound to the line, with rational-function arithmetic
/// in the line parameter. The recursion runs over bridgeless subsets when
/// the loop number is at most the rank and over flats otherwise (the two
/// lattices grow with the loop number and the rank, respectively). Fails
/// when the matroid is disconnected or some required denominator vanishes
/// identically along the line.
pub fn hepp_line(m: &Matroid, line: &IndexLine) -> Result<UniRatFunc, EngineError> {
    if line.len() != m.size() {
        return Err(EngineError::IndexLength {
            expected: m.size(),
            got: line.len(),
        });
    }
    if !m.is_connected() {
        return Err(EngineError::NotConnected);
    }
    if m.size() == 1 {
        return Ok(UniRatFunc::one());
    }
    let ctx = line_ctx(m, line);
    for a in &ctx.a {
        if a.is_zero() {
            return Err(EngineError::DegenerateLine);
        }
    }
    let value = if m.loops_total() <= m.full_rank() {
        flag::flag_value(&ctx)
    } else {
        flats::flats_value(&ctx)
    };
    value.map_err(|_| EngineError::DegenerateLine)
}

/// The position-space Hepp bound along a line:
/// `(prod of dual indices) / (d/2)` times the Hepp bound.
pub fn hepp_position_line(m: &Matroid, line: &IndexLine) -> Result<UniRatFunc, EngineError> {
    let value = hepp_line(m, line)?;
    let ctx = line_ctx(m, line);
    if ctx.d2.is_zero() {
        return Err(EngineError::DegenerateLine);
    }
    let mut prefactor = ctx.d2.recip().map_err(|_| EngineError::DegenerateLine)?;
    for e in 0..m.size() {
        prefactor = &prefactor * &ctx.dual_index(e);
    }
    Ok(&prefactor * &value)
}

fn line_ctx<'a>(m: &'a Matroid, line: &IndexLine) -> Ctx<'a, UniRatFunc> {
    let loops = m.loops_total();
    let d2 = if loops == 0 {
        UniRatFunc::zero()
    } else {
        let base_sum: Rational = line.base.iter().cloned().sum();
        let dir_sum: Rational = line.direction.iter().cloned().sum();
        let l = Rational::from_int(loops as i64);
        UniRatFunc::from_poly(UniPoly::linear(base_sum / l.clone(), dir_sum / l))
    };
    let a = (0..m.size())
        .map(|e| UniRatFunc::from_poly(line.index_poly(e)))
        .collect();
    Ctx { m, a, d2 }
}
