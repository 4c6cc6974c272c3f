//! Improved period bounds: the rational bounds from bridgeless or flat
//! flags with the counting numerator dropped, and the sharper log-weighted
//! bound whose coefficients are exact integer-log combinations.

use std::collections::{BTreeMap, HashMap};
use std::fmt;

use thiserror::Error;

use crate::arith::Rational;
use crate::matroid::{EdgeSubset, Matroid};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum BoundsError {
    #[error("not primitive logarithmic at unit indices; witness subset {0:?}")]
    NotPLog(EdgeSubset),
    #[error("parameter out of range")]
    ParameterRange,
}

/// Exact polynomial in logarithms of primes with rational coefficients.
/// Keys are sorted multisets of prime arguments; the empty key is the
/// rational constant term.
#[derive(Clone, PartialEq, Eq, Default)]
pub struct LogPoly {
    terms: BTreeMap<Vec<u32>, Rational>,
}

impl LogPoly {
    pub fn zero() -> LogPoly {
        LogPoly::default()
    }

    pub fn constant(q: Rational) -> LogPoly {
        let mut p = LogPoly::zero();
        p.add_term(vec![], q);
        p
    }

    pub fn log_of(k: u32) -> LogPoly {
        // reduce ln(k) to prime logarithms
        let mut p = LogPoly::zero();
        let mut rest = k;
        let mut factor = 2;
        while factor * factor <= rest {
            while rest.is_multiple_of(factor) {
                p.add_term(vec![factor], Rational::one());
                rest /= factor;
            }
            factor += 1;
        }
        if rest > 1 {
            p.add_term(vec![rest], Rational::one());
        }
        p
    }

    fn add_term(&mut self, key: Vec<u32>, coeff: Rational) {
        if coeff.is_zero() {
            return;
        }
        use std::collections::btree_map::Entry;
        match self.terms.entry(key) {
            Entry::Vacant(slot) => {
                slot.insert(coeff);
            }
            Entry::Occupied(mut slot) => {
                *slot.get_mut() += coeff;
                if slot.get().is_zero() {
                    slot.remove();
                }
            }
        }
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn add(&self, other: &LogPoly) -> LogPoly {
        let mut out = self.clone();
        for (k, v) in &other.terms {
            out.add_term(k.clone(), v.clone());
        }
        out
    }

    pub fn mul(&self, other: &LogPoly) -> LogPoly {
        let mut out = LogPoly::zero();
        for (ka, va) in &self.terms {
            for (kb, vb) in &other.terms {
                let mut key = ka.clone();
                key.extend_from_slice(kb);
                key.sort_unstable();
                out.add_term(key, va * vb);
            }
        }
        out
    }

    pub fn scale(&self, q: &Rational) -> LogPoly {
        let mut out = LogPoly::zero();
        for (k, v) in &self.terms {
            out.add_term(k.clone(), v * q);
        }
        out
    }

    pub fn to_f64(&self) -> f64 {
        self.terms
            .iter()
            .map(|(key, coeff)| {
                key.iter().map(|&p| (p as f64).ln()).product::<f64>() * coeff.to_f64()
            })
            .sum()
    }

    /// Coefficient of a (sorted) log monomial.
    pub fn coeff(&self, key: &[u32]) -> Rational {
        self.terms.get(key).cloned().unwrap_or_default()
    }
}

impl fmt::Display for LogPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut parts = Vec::new();
        for (key, coeff) in &self.terms {
            let logs: Vec<String> = key.iter().map(|p| format!("ln({p})")).collect();
            if logs.is_empty() {
                parts.push(coeff.to_string());
            } else if coeff.is_one() {
                parts.push(logs.join("*"));
            } else {
                parts.push(format!("({})*{}", coeff, logs.join("*")));
            }
        }
        write!(f, "{}", parts.join(" + "))
    }
}

impl fmt::Debug for LogPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

/// The one-loop weight of size `n`: exact log combination plus float.
#[derive(Debug, Clone)]
pub struct CCoefficient {
    pub n: usize,
    pub exact_form: LogPoly,
    pub float_value: f64,
}

/// Weight of a one-loop block with `n` edges: one for `n <= 2`, and for
/// larger `n` an alternating binomial combination of `ln k`.
pub fn c_coefficient(n: usize) -> CCoefficient {
    assert!(n >= 1);
    let exact = if n <= 2 {
        LogPoly::constant(Rational::one())
    } else {
        let mut acc = LogPoly::zero();
        let fact: Rational = Rational::from_bigint(crate::engine::factorial(n - 3));
        for k in 2..=n {
            let sign = if (k + n + 1).is_multiple_of(2) { 1 } else { -1 };
            let coeff = Rational::from_bigint(crate::engine::binomial(n, k))
                * Rational::from_bigint(num::BigInt::from(k).pow((n - 2) as u32))
                * Rational::from_int(sign)
                / fact.clone();
            acc = acc.add(&LogPoly::log_of(k as u32).scale(&coeff));
        }
        acc
    };
    let float_value = exact.to_f64();
    CCoefficient {
        n,
        exact_form: exact,
        float_value,
    }
}

/// Direct numeric evaluation of the one-loop weight as an integral: the
/// density of a sum of `n-1` uniform variables against `1/(1+s)^2`,
/// integrated by composite Gauss-Legendre quadrature.
pub fn c_coefficient_quadrature(n: usize) -> f64 {
    assert!(n >= 1);
    if n == 1 {
        return 1.0;
    }
    let m = n - 1; // number of uniform variables
    let density = |s: f64| -> f64 {
        // Irwin-Hall density
        let mut acc = 0.0;
        let mut binom = 1.0;
        for k in 0..=(s.floor() as usize).min(m) {
            let sign = if k % 2 == 0 { 1.0 } else { -1.0 };
            acc += sign * binom * (s - k as f64).powi(m as i32 - 1);
            binom = binom * (m - k) as f64 / (k + 1) as f64;
        }
        let mut fact = 1.0;
        for j in 2..m {
            fact *= j as f64;
        }
        acc / fact
    };
    let (nodes, weights) = gauss_legendre(48);
    let mut total = 0.0;
    for piece in 0..m {
        let (a, b) = (piece as f64, piece as f64 + 1.0);
        let mid = 0.5 * (a + b);
        let half = 0.5 * (b - a);
        for (x, w) in nodes.iter().zip(&weights) {
            let s = mid + half * x;
            total += w * half * density(s) / ((1.0 + s) * (1.0 + s));
        }
    }
    n as f64 * total
}

/// Gauss-Legendre nodes and weights on [-1, 1] by Newton iteration.
fn gauss_legendre(n: usize) -> (Vec<f64>, Vec<f64>) {
    let mut nodes = vec![0.0; n];
    let mut weights = vec![0.0; n];
    let m = n.div_ceil(2);
    for i in 0..m {
        let mut x = (std::f64::consts::PI * (i as f64 + 0.75) / (n as f64 + 0.5)).cos();
        let mut dp = 0.0;
        for _ in 0..100 {
            // Legendre P_n(x) and derivative by recurrence
            let mut p0 = 1.0;
            let mut p1 = x;
            for k in 2..=n {
                let p2 = ((2 * k - 1) as f64 * x * p1 - (k - 1) as f64 * p0) / k as f64;
                p0 = p1;
                p1 = p2;
            }
            dp = n as f64 * (x * p1 - p0) / (x * x - 1.0);
            let dx = p1 / dp;
            x -= dx;
            if dx.abs() < 1e-15 {
                break;
            }
        }
        nodes[i] = -x;
        nodes[n - 1 - i] = x;
        let w = 2.0 / ((1.0 - x * x) * dp * dp);
        weights[i] = w;
        weights[n - 1 - i] = w;
    }
    (nodes, weights)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum FlagKind {
    Bridgeless,
    Flat,
}

/// Check the unit-index primitive-logarithmic condition in four dimensions:
/// the ground set has twice as many edges as loops, and every singular
/// subset converges strictly. Returns the scaled integer degrees.
fn check_plog(m: &Matroid) -> Result<(), BoundsError> {
    if !m.is_connected() || m.size() < 2 {
        return Err(BoundsError::NotPLog(EdgeSubset::EMPTY));
    }
    if m.size() as u32 != 2 * m.loops_total() {
        return Err(BoundsError::NotPLog(m.ground()));
    }
    for subset in m.singular_submatroids().expect("connected") {
        if unit_sdc(m, subset) <= 0 {
            return Err(BoundsError::NotPLog(subset));
        }
    }
    Ok(())
}

/// Unit-index degree of convergence in d = 4 (an integer).
fn unit_sdc(m: &Matroid, subset: EdgeSubset) -> i64 {
    subset.len() as i64 - 2 * m.corank(subset) as i64
}

/// Rational improved bound: the flag sum with the counting numerator
/// removed, over bridgeless flags or over flags of flats.
pub fn hepp_one(m: &Matroid, kind: FlagKind) -> Result<Rational, BoundsError> {
    check_plog(m)?;
    match kind {
        FlagKind::Bridgeless => {
            let mut memo = HashMap::new();
            Ok(one_bridgeless(m, m.ground(), &mut memo))
        }
        FlagKind::Flat => {
            let mut memo = HashMap::new();
            Ok(one_flat(m, m.ground(), &mut memo))
        }
    }
}

fn one_bridgeless(m: &Matroid, subset: EdgeSubset, memo: &mut HashMap<u64, Rational>) -> Rational {
    if let Some(v) = memo.get(&subset.0) {
        return v.clone();
    }
    let value = if m.corank(subset) == 1 {
        Rational::one()
    } else {
        let mut acc = Rational::zero();
        for child in m.bridgeless_children(subset).expect("bridgeless") {
            let den = Rational::from_int(unit_sdc(m, child));
            acc += one_bridgeless(m, child, memo) / den;
        }
        acc
    };
    memo.insert(subset.0, value.clone());
    value
}

fn one_flat(m: &Matroid, flat: EdgeSubset, memo: &mut HashMap<u64, Rational>) -> Rational {
    if let Some(v) = memo.get(&flat.0) {
        return v.clone();
    }
    let value = if m.rank(flat) <= 1 {
        Rational::one()
    } else {
        let mut acc = Rational::zero();
        for hyperplane in m.hyperplanes_of(flat) {
            let den = Rational::from_int(unit_sdc(m, hyperplane));
            acc += one_flat(m, hyperplane, memo) / den;
        }
        acc
    };
    memo.insert(flat.0, value.clone());
    value
}

/// Log-weighted bound over bridgeless flags: each flag carries the product
/// of one-loop weights of its block sizes. Exact internally; the float is
/// taken once at the end.
pub fn hepp_one_loop_exact(m: &Matroid) -> Result<LogPoly, BoundsError> {
    check_plog(m)?;
    let coeffs: Vec<LogPoly> = (0..=m.size())
        .map(|k| {
            if k == 0 {
                LogPoly::constant(Rational::one())
            } else {
                c_coefficient(k).exact_form
            }
        })
        .collect();
    let mut memo = HashMap::new();
    Ok(one_loop_rec(m, m.ground(), &coeffs, &mut memo))
}

pub fn hepp_one_loop(m: &Matroid) -> Result<f64, BoundsError> {
    Ok(hepp_one_loop_exact(m)?.to_f64())
}

fn one_loop_rec(
    m: &Matroid,
    subset: EdgeSubset,
    coeffs: &[LogPoly],
    memo: &mut HashMap<u64, LogPoly>,
) -> LogPoly {
    if let Some(v) = memo.get(&subset.0) {
        return v.clone();
    }
    let value = if m.corank(subset) == 1 {
        coeffs[subset.len()].clone()
    } else {
        let mut acc = LogPoly::zero();
        for child in m.bridgeless_children(subset).expect("bridgeless") {
            let den = Rational::from_int(unit_sdc(m, child));
            let sub = one_loop_rec(m, child, coeffs, memo);
            let term = sub
                .mul(&coeffs[subset.len() - child.len()])
                .scale(&den.recip().unwrap());
            acc = acc.add(&term);
        }
        acc
    };
    memo.insert(subset.0, value.clone());
    value
}

/// Closed form for the improved bound of the wheel with `n` spokes.
pub fn hepp_one_wheel(n: usize) -> Result<Rational, BoundsError> {
    if n < 3 {
        return Err(BoundsError::ParameterRange);
    }
    use crate::engine::binomial;
    let mut sum = Rational::zero();
    for k in 1..=n {
        let term = binomial(2 * n - 2 * k, n - k)
            * binomial(2 * k, k)
            * num::BigInt::from(k)
            * num::BigInt::from(5).pow((n - k) as u32);
        sum += Rational::from_bigint(term);
    }
    let scale = Rational::from_bigint(num::BigInt::from(4).pow(n as u32));
    let head = Rational::new(-(n as i64) * (n as i64 - 3), 2 * (n as i64 - 2));
    Ok(head + Rational::from_int(2) * sum / scale)
}
