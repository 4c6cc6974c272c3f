//! The Hepp bound itself: evaluation at rational index vectors, along
//! one-parameter index lines, by four independent algorithms, plus closed
//! forms, residues and the position-space variant.

mod closed;
mod flag;
mod flats;
mod line;
mod sector;

pub use closed::{
    binomial, closed_form_at, closed_form_unit, factorial, wheel_hepp_series, ClosedForm,
};
pub use line::{hepp_line, hepp_position_line};
pub use sector::{hepp_sector_oracle, sector_oracle_line};

use thiserror::Error;

use crate::arith::{Rational, UniPoly, UniRatFunc};
use crate::matroid::{EdgeSubset, Matroid};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum EngineError {
    #[error("index vector length {got} does not match ground set size {expected}")]
    IndexLength { expected: usize, got: usize },
    #[error("forest indices must sum to zero")]
    ForestConstraint,
    #[error("index of edge {0} is zero")]
    ZeroIndex(usize),
    #[error("dual index of edge {0} is zero")]
    ZeroDualIndex(usize),
    #[error("matroid is not connected")]
    NotConnected,
    #[error("a required denominator vanishes identically along the line")]
    DegenerateLine,
    #[error("input exceeds the size limit {0} for this algorithm")]
    SizeLimit(usize),
    #[error("parameter out of range for the requested closed form")]
    ParameterRange,
}

/// Outcome of an exact evaluation: either a finite rational value, or the
/// flag of a subset whose superficial degree of convergence vanished while
/// it was needed as a denominator.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum HeppValue {
    Finite(Rational),
    Pole(EdgeSubset),
}

impl HeppValue {
    pub fn finite(&self) -> Option<&Rational> {
        match self {
            HeppValue::Finite(q) => Some(q),
            HeppValue::Pole(_) => None,
        }
    }

    pub fn expect_finite(&self) -> &Rational {
        self.finite().expect("unexpected pole")
    }
}

/// Per-edge rational indices with the logarithmic-divergence constraint
/// built in: for a matroid with loops the half dimension is induced as
/// `(sum of indices) / loop number`; a loopless (forest) matroid instead
/// requires the indices to sum to zero.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct IndexVector {
    values: Vec<Rational>,
    half_dim: Option<Rational>,
}

impl IndexVector {
    pub fn new(m: &Matroid, values: Vec<Rational>) -> Result<IndexVector, EngineError> {
        if values.len() != m.size() {
            return Err(EngineError::IndexLength {
                expected: m.size(),
                got: values.len(),
            });
        }
        let total: Rational = values.iter().cloned().sum();
        let loops = m.loops_total();
        if loops == 0 {
            if !total.is_zero() {
                return Err(EngineError::ForestConstraint);
            }
            return Ok(IndexVector {
                values,
                half_dim: None,
            });
        }
        let half_dim = total / Rational::from_int(loops as i64);
        Ok(IndexVector {
            values,
            half_dim: Some(half_dim),
        })
    }

    pub fn unit(m: &Matroid) -> Result<IndexVector, EngineError> {
        IndexVector::new(m, vec![Rational::one(); m.size()])
    }

    pub fn values(&self) -> &[Rational] {
        &self.values
    }

    pub fn value(&self, e: usize) -> &Rational {
        &self.values[e]
    }

    /// Induced `d/2`; `None` for forests.
    pub fn half_dim(&self) -> Option<&Rational> {
        self.half_dim.as_ref()
    }

    pub fn is_unit(&self) -> bool {
        self.values.iter().all(Rational::is_one)
    }

    /// Dual indices `d/2 - a_e` (requires an induced dimension).
    pub fn dual_values(&self) -> Option<Vec<Rational>> {
        let d2 = self.half_dim.as_ref()?;
        Some(self.values.iter().map(|a| d2 - a).collect())
    }
}

/// Index line `a(t) = base + t * direction`, along which every superficial
/// degree of convergence is an affine polynomial in `t`.
#[derive(Debug, Clone)]
pub struct IndexLine {
    pub base: Vec<Rational>,
    pub direction: Vec<Rational>,
}

impl IndexLine {
    pub fn new(base: Vec<Rational>, direction: Vec<Rational>) -> IndexLine {
        assert_eq!(base.len(), direction.len());
        IndexLine { base, direction }
    }

    pub fn len(&self) -> usize {
        self.base.len()
    }

    pub fn is_empty(&self) -> bool {
        self.base.is_empty()
    }

    pub fn at(&self, t: &Rational) -> Vec<Rational> {
        self.base
            .iter()
            .zip(&self.direction)
            .map(|(b, v)| b + &(v * t))
            .collect()
    }

    /// The index of edge `e` as a polynomial in `t`.
    pub fn index_poly(&self, e: usize) -> UniPoly {
        UniPoly::linear(self.base[e].clone(), self.direction[e].clone())
    }
}

/// Scalars the evaluation engines run over: exact rationals for point
/// evaluation, univariate rational functions for evaluation along a line,
/// first-order jets for one-sided limits.
pub trait Scalar: Clone + PartialEq {
    fn zero() -> Self;
    fn one() -> Self;
    fn from_int(n: i64) -> Self;
    fn is_zero(&self) -> bool;
    /// May this scalar appear as a denominator?
    fn invertible(&self) -> bool {
        !self.is_zero()
    }
    fn add(&self, other: &Self) -> Self;
    fn sub(&self, other: &Self) -> Self;
    fn mul(&self, other: &Self) -> Self;
    /// Division; the caller has already excluded non-invertible divisors.
    fn div(&self, other: &Self) -> Self;
}

/// First-order jet `value + derivative * eps` with `eps^2 = 0`, for exact
/// limits along a line without full rational-function arithmetic.
#[derive(Debug, Clone, PartialEq, Eq)]
pub(crate) struct Jet {
    pub val: Rational,
    pub der: Rational,
}

impl Jet {
    pub fn new(val: Rational, der: Rational) -> Jet {
        Jet { val, der }
    }

    pub fn constant(val: Rational) -> Jet {
        Jet {
            val,
            der: Rational::zero(),
        }
    }
}

impl Scalar for Jet {
    fn zero() -> Self {
        Jet::constant(Rational::zero())
    }
    fn one() -> Self {
        Jet::constant(Rational::one())
    }
    fn from_int(n: i64) -> Self {
        Jet::constant(Rational::from_int(n))
    }
    fn is_zero(&self) -> bool {
        self.val.is_zero() && self.der.is_zero()
    }
    fn invertible(&self) -> bool {
        !self.val.is_zero()
    }
    fn add(&self, other: &Self) -> Self {
        Jet::new(&self.val + &other.val, &self.der + &other.der)
    }
    fn sub(&self, other: &Self) -> Self {
        Jet::new(&self.val - &other.val, &self.der - &other.der)
    }
    fn mul(&self, other: &Self) -> Self {
        Jet::new(
            &self.val * &other.val,
            &self.val * &other.der + &self.der * &other.val,
        )
    }
    fn div(&self, other: &Self) -> Self {
        let val = &self.val / &other.val;
        let der = (&self.der * &other.val - &self.val * &other.der) / (&other.val * &other.val);
        Jet::new(val, der)
    }
}

impl Scalar for Rational {
    fn zero() -> Self {
        Rational::zero()
    }
    fn one() -> Self {
        Rational::one()
    }
    fn from_int(n: i64) -> Self {
        Rational::from_int(n)
    }
    fn is_zero(&self) -> bool {
        Rational::is_zero(self)
    }
    fn add(&self, other: &Self) -> Self {
        self + other
    }
    fn sub(&self, other: &Self) -> Self {
        self - other
    }
    fn mul(&self, other: &Self) -> Self {
        self * other
    }
    fn div(&self, other: &Self) -> Self {
        self / other
    }
}

impl Scalar for UniRatFunc {
    fn zero() -> Self {
        UniRatFunc::zero()
    }
    fn one() -> Self {
        UniRatFunc::one()
    }
    fn from_int(n: i64) -> Self {
        UniRatFunc::constant(Rational::from_int(n))
    }
    fn is_zero(&self) -> bool {
        UniRatFunc::is_zero(self)
    }
    fn add(&self, other: &Self) -> Self {
        self + other
    }
    fn sub(&self, other: &Self) -> Self {
        self - other
    }
    fn mul(&self, other: &Self) -> Self {
        self * other
    }
    fn div(&self, other: &Self) -> Self {
        self / other
    }
}

/// Shared evaluation context: a matroid, one scalar index per edge, and the
/// half dimension entering every degree-of-convergence denominator.
pub(crate) struct Ctx<'a, S: Scalar> {
    pub m: &'a Matroid,
    pub a: Vec<S>,
    pub d2: S,
}

impl<'a, S: Scalar> Ctx<'a, S> {
    pub fn index_sum(&self, subset: EdgeSubset) -> S {
        let mut acc = S::zero();
        for e in subset.iter() {
            acc = acc.add(&self.a[e]);
        }
        acc
    }

    /// Superficial degree of convergence of `subset`.
    pub fn sdc(&self, subset: EdgeSubset) -> S {
        let loops = self.m.corank(subset);
        let sum = self.index_sum(subset);
        if loops == 0 {
            return sum;
        }
        sum.sub(&self.d2.mul(&S::from_int(loops as i64)))
    }

    pub fn dual_index(&self, e: usize) -> S {
        self.d2.sub(&self.a[e])
    }
}

/// Internal marker for a vanishing denominator, with the subset or edge it
/// belongs to.
#[derive(Debug, Clone, PartialEq, Eq)]
pub(crate) enum ZeroDen {
    Sdc(EdgeSubset),
    Index(usize),
    DualIndex(usize),
}

/// Map a vanishing denominator from a point evaluation into the public
/// outcome: degree-of-convergence zeros are pole flags, index zeros are
/// errors.
fn point_outcome(res: Result<Rational, ZeroDen>) -> Result<HeppValue, EngineError> {
    match res {
        Ok(v) => Ok(HeppValue::Finite(v)),
        Err(ZeroDen::Sdc(subset)) => Ok(HeppValue::Pole(subset)),
        Err(ZeroDen::Index(e)) => Err(EngineError::ZeroIndex(e)),
        Err(ZeroDen::DualIndex(e)) => Err(EngineError::ZeroDualIndex(e)),
    }
}

/// Evaluation algorithms. The bridgeless-flag recursion is the canonical
/// path; the factorial sector sum is the brute-force oracle the others are
/// tested against.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Algorithm {
    FlagRecursion,
    FlatsRecursion,
    CyclicFlats,
    SectorOracle,
}

/// Superficial degree of convergence of `subset` for the given indices.
pub fn sdc(m: &Matroid, iv: &IndexVector, subset: EdgeSubset) -> Rational {
    let ctx = point_ctx(m, iv);
    ctx.sdc(subset)
}

pub(crate) fn point_ctx<'a>(m: &'a Matroid, iv: &IndexVector) -> Ctx<'a, Rational> {
    Ctx {
        m,
        a: iv.values().to_vec(),
        d2: iv.half_dim().cloned().unwrap_or_else(Rational::zero),
    }
}

/// Hepp bound by the bridgeless-flag recursion. Disconnected matroids give
/// zero; a single edge gives one.
pub fn hepp_flag_recursion(m: &Matroid, iv: &IndexVector) -> Result<HeppValue, EngineError> {
    check_len(m, iv)?;
    if !m.is_connected() {
        return Ok(HeppValue::Finite(Rational::zero()));
    }
    if m.size() == 1 {
        return Ok(HeppValue::Finite(Rational::one()));
    }
    for (e, a) in iv.values().iter().enumerate() {
        if a.is_zero() {
            return Err(EngineError::ZeroIndex(e));
        }
    }
    let ctx = point_ctx(m, iv);
    if iv.is_unit() {
        // degrees of convergence are machine integers after scaling by the
        // loop number
        return point_outcome(flag::flag_value_unit(&ctx));
    }
    point_outcome(flag::flag_value(&ctx))
}

/// Hepp bound in a fixed dimension (the logarithmic constraint lifted), by
/// the bridgeless-flag recursion.
pub fn hepp_in_dimension(
    m: &Matroid,
    values: &[Rational],
    d2: &Rational,
) -> Result<HeppValue, EngineError> {
    if values.len() != m.size() {
        return Err(EngineError::IndexLength {
            expected: m.size(),
            got: values.len(),
        });
    }
    if !m.is_connected() {
        return Ok(HeppValue::Finite(Rational::zero()));
    }
    if m.size() == 1 {
        return Ok(HeppValue::Finite(Rational::one()));
    }
    for (e, a) in values.iter().enumerate() {
        if a.is_zero() {
            return Err(EngineError::ZeroIndex(e));
        }
    }
    let ctx = Ctx {
        m,
        a: values.to_vec(),
        d2: d2.clone(),
    };
    point_outcome(flag::flag_value(&ctx))
}

/// Hepp bound by the recursion over flats (minimal cuts, for graphs).
pub fn hepp_flats_recursion(m: &Matroid, iv: &IndexVector) -> Result<HeppValue, EngineError> {
    check_len(m, iv)?;
    if !m.is_connected() {
        return Ok(HeppValue::Finite(Rational::zero()));
    }
    if m.size() == 1 {
        return Ok(HeppValue::Finite(Rational::one()));
    }
    let ctx = point_ctx(m, iv);
    for e in 0..m.size() {
        if ctx.dual_index(e).is_zero() {
            return Err(EngineError::ZeroDualIndex(e));
        }
    }
    point_outcome(flats::flats_value(&ctx))
}

/// Hepp bound by the recursion over the lattice of cyclic flats.
pub fn hepp_cyclic_flats(m: &Matroid, iv: &IndexVector) -> Result<HeppValue, EngineError> {
    check_len(m, iv)?;
    if !m.is_connected() {
        return Ok(HeppValue::Finite(Rational::zero()));
    }
    if m.size() == 1 {
        return Ok(HeppValue::Finite(Rational::one()));
    }
    let ctx = point_ctx(m, iv);
    for e in 0..m.size() {
        if ctx.a[e].is_zero() {
            return Err(EngineError::ZeroIndex(e));
        }
        if ctx.dual_index(e).is_zero() {
            return Err(EngineError::ZeroDualIndex(e));
        }
    }
    point_outcome(flats::cyclic_flats_value(&ctx))
}

/// Hepp bound with the recursion lattice picked by shape: bridgeless flags
/// when the loop number does not exceed the rank, flats otherwise.
pub fn hepp_auto(m: &Matroid, iv: &IndexVector) -> Result<HeppValue, EngineError> {
    if m.loops_total() <= m.full_rank() {
        hepp_flag_recursion(m, iv)
    } else {
        hepp_flats_recursion(m, iv)
    }
}

/// Unit-index Hepp bound, handling forests (constant 1 for a single edge,
/// 0 otherwise) without an index vector.
pub fn hepp_unit(m: &Matroid) -> Result<HeppValue, EngineError> {
    if m.loops_total() == 0 {
        let value = if m.size() == 1 {
            Rational::one()
        } else {
            Rational::zero()
        };
        return Ok(HeppValue::Finite(value));
    }
    let iv = IndexVector::unit(m)?;
    hepp_auto(m, &iv)
}

/// Limit of the position-space Hepp bound approaching zero dimension along
/// `a(t) = base + t * (1,...,1)`, for a connected matroid and a base point
/// with zero total and no vanishing subset sum. Since the Hepp bound
/// vanishes to first order there, first-order jets give the limit exactly.
pub fn position_limit_at_zero_dimension(
    m: &Matroid,
    base: &[Rational],
) -> Result<Rational, EngineError> {
    let n = m.size();
    let loops = m.loops_total();
    if base.len() != n {
        return Err(EngineError::IndexLength {
            expected: n,
            got: base.len(),
        });
    }
    if !m.is_connected() || n < 2 || loops == 0 {
        return Err(EngineError::NotConnected);
    }
    let slope = Rational::new(n as i64, loops as i64);
    let d2 = Jet::new(Rational::zero(), slope.clone());
    let a: Vec<Jet> = base
        .iter()
        .map(|b| Jet::new(b.clone(), Rational::one()))
        .collect();
    let ctx = Ctx { m, a, d2 };
    let h = flag::flag_value(&ctx).map_err(|_| EngineError::DegenerateLine)?;
    if !h.val.is_zero() {
        return Err(EngineError::DegenerateLine);
    }
    let mut prefactor = Rational::one();
    for b in base {
        prefactor *= -b;
    }
    Ok(prefactor * h.der / slope)
}

pub fn hepp(m: &Matroid, iv: &IndexVector, algo: Algorithm) -> Result<HeppValue, EngineError> {
    match algo {
        Algorithm::FlagRecursion => hepp_flag_recursion(m, iv),
        Algorithm::FlatsRecursion => hepp_flats_recursion(m, iv),
        Algorithm::CyclicFlats => hepp_cyclic_flats(m, iv),
        Algorithm::SectorOracle => hepp_sector_oracle(m, iv),
    }
}

/// Position-space Hepp bound: `(prod dual indices) / (d/2)` times the Hepp
/// bound. A single edge gives one, anything disconnected gives zero.
pub fn hepp_position(
    m: &Matroid,
    iv: &IndexVector,
    algo: Algorithm,
) -> Result<HeppValue, EngineError> {
    check_len(m, iv)?;
    if m.size() == 1 {
        return Ok(HeppValue::Finite(Rational::one()));
    }
    if !m.is_connected() {
        return Ok(HeppValue::Finite(Rational::zero()));
    }
    let value = hepp(m, iv, algo)?;
    let d2 = iv
        .half_dim()
        .cloned()
        .ok_or(EngineError::ForestConstraint)?;
    if d2.is_zero() {
        // the Hepp bound vanishes at d = 0; the position-space value there
        // is a limit, computed along a line instead
        return Err(EngineError::DegenerateLine);
    }
    match value {
        HeppValue::Pole(s) => Ok(HeppValue::Pole(s)),
        HeppValue::Finite(h) => {
            let mut prefactor = d2.recip().unwrap();
            for e in 0..m.size() {
                prefactor *= &d2 - iv.value(e);
            }
            Ok(HeppValue::Finite(prefactor * h))
        }
    }
}

fn check_len(m: &Matroid, iv: &IndexVector) -> Result<(), EngineError> {
    if iv.values().len() != m.size() {
        return Err(EngineError::IndexLength {
            expected: m.size(),
            got: iv.values().len(),
        });
    }
    Ok(())
}
