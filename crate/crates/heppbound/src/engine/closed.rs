//! Closed forms for cycles, bonds, uniform matroids, wheels and complete
//! graphs. These are regression formulas for tests and tables, never the
//! computation path for general inputs.

use num::BigInt;

use crate::arith::Rational;
use crate::matroid::EdgeSubset;

use super::EngineError;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ClosedForm {
    Cycle(usize),
    Bond(usize),
    Uniform(usize, usize),
    Wheel(usize),
    Complete(usize),
}

pub fn factorial(n: usize) -> BigInt {
    let mut acc = BigInt::from(1);
    for k in 2..=n {
        acc *= k;
    }
    acc
}

pub fn binomial(n: usize, k: usize) -> BigInt {
    if k > n {
        return BigInt::from(0);
    }
    let k = k.min(n - k);
    let mut acc = BigInt::from(1);
    for i in 0..k {
        acc = acc * (n - i) / (i + 1);
    }
    acc
}

/// Unit-index value of the closed form.
pub fn closed_form_unit(kind: ClosedForm) -> Result<Rational, EngineError> {
    match kind {
        ClosedForm::Cycle(n) => {
            if n < 1 {
                return Err(EngineError::ParameterRange);
            }
            Ok(Rational::from_int(n as i64))
        }
        ClosedForm::Bond(n) => {
            if n < 2 {
                return Err(EngineError::ParameterRange);
            }
            // n * (n-1)^(n-1)
            let mut acc = Rational::from_int(n as i64);
            acc *= Rational::from_int((n - 1) as i64).pow(n as i32 - 1);
            Ok(acc)
        }
        ClosedForm::Uniform(n, r) => {
            if r == 0 || r >= n {
                return Err(EngineError::ParameterRange);
            }
            let loops = n - r;
            // n! / ((r-1)! loops!) * (loops/r)^loops
            let num = factorial(n);
            let den = factorial(r - 1) * factorial(loops);
            let ratio = Rational::new(loops as i64, r as i64).pow(loops as i32);
            Ok(Rational::from_bigint(num) / Rational::from_bigint(den) * ratio)
        }
        ClosedForm::Wheel(n) => {
            if n < 3 {
                return Err(EngineError::ParameterRange);
            }
            let mut sum = Rational::zero();
            for k in 1..=n {
                let term = binomial(2 * n - 2 * k, n - k)
                    * binomial(2 * k, k)
                    * BigInt::from(k)
                    * BigInt::from(9).pow((n - k) as u32);
                sum += Rational::from_bigint(term);
            }
            let scale = Rational::from_bigint(BigInt::from(4).pow((n - 1) as u32));
            Ok(Rational::new(2 * n as i64, n as i64 - 2) + sum / scale)
        }
        ClosedForm::Complete(n) => {
            if n < 3 {
                return Err(EngineError::ParameterRange);
            }
            // quadratic recursion over cut sizes, in dimension 2n/(n-2)
            let d2 = Rational::new(n as i64, n as i64 - 2);
            let omega = |k: usize| -> Rational {
                Rational::from_bigint(binomial(k, 2))
                    - &d2 * &Rational::from_bigint(binomial(k - 1, 2))
            };
            let mut f: Vec<Rational> = vec![Rational::zero(); n + 1];
            f[2] = Rational::one();
            for k in 3..=n {
                let mut acc = Rational::from_int(k as i64) * &f[k - 1] / omega(k - 1);
                for i in 2..=(k - 2) {
                    acc +=
                        Rational::from_int(i as i64) * &f[i] / omega(i) * &f[k - i] / omega(k - i);
                }
                f[k] = acc;
            }
            let loops = binomial(n - 1, 2)
                .try_into()
                .map(|l: u32| l)
                .map_err(|_| EngineError::ParameterRange)?;
            let scale = (&d2 - &Rational::one()).pow(-(loops as i32));
            Ok(Rational::from_bigint(factorial(n - 1)) * scale * f[n].clone())
        }
    }
}

/// General-index value of the closed form; available for cycles, bonds and
/// uniform matroids (wheels and complete graphs are unit-index formulas).
pub fn closed_form_at(kind: ClosedForm, a: &[Rational]) -> Result<Rational, EngineError> {
    let nonzero = |q: &Rational, e: usize| -> Result<(), EngineError> {
        if q.is_zero() {
            Err(EngineError::ZeroIndex(e))
        } else {
            Ok(())
        }
    };
    match kind {
        ClosedForm::Cycle(n) => {
            if n < 1 || a.len() != n {
                return Err(EngineError::ParameterRange);
            }
            let total: Rational = a.iter().cloned().sum();
            let mut den = Rational::one();
            for (e, q) in a.iter().enumerate() {
                nonzero(q, e)?;
                den *= q;
            }
            Ok(total / den)
        }
        ClosedForm::Bond(n) => {
            if n < 2 || a.len() != n {
                return Err(EngineError::ParameterRange);
            }
            let total: Rational = a.iter().cloned().sum();
            let d2 = total / Rational::from_int((n - 1) as i64);
            let mut den = Rational::one();
            for (e, q) in a.iter().enumerate() {
                let dual = &d2 - q;
                if dual.is_zero() {
                    return Err(EngineError::ZeroDualIndex(e));
                }
                den *= dual;
            }
            Ok(d2 / den)
        }
        ClosedForm::Uniform(n, r) => {
            if r == 0 || r >= n || a.len() != n {
                return Err(EngineError::ParameterRange);
            }
            let loops = (n - r) as i64;
            let total: Rational = a.iter().cloned().sum();
            let d2 = total / Rational::from_int(loops);
            // sum over r-subsets: index sum over the subset divided by the
            // product of its indices and the dual indices off it
            let mut acc = Rational::zero();
            for subset in EdgeSubset::full(n).subsets() {
                if subset.len() != r {
                    continue;
                }
                let mut num = Rational::zero();
                let mut den = Rational::one();
                for e in subset.iter() {
                    nonzero(&a[e], e)?;
                    num += &a[e];
                    den *= &a[e];
                }
                for e in subset.complement(n).iter() {
                    let dual = &d2 - &a[e];
                    if dual.is_zero() {
                        return Err(EngineError::ZeroDualIndex(e));
                    }
                    den *= dual;
                }
                acc += num / den;
            }
            Ok(acc)
        }
        ClosedForm::Wheel(_) | ClosedForm::Complete(_) => Err(EngineError::ParameterRange),
    }
}

/// Coefficients `0..=max_n` of the wheel generating function
/// `2z/(1-z) - 4z - 14z^2 - 4z^2 log(1-z) + 2z((1-9z)(1-z)^3)^(-1/2)`.
pub fn wheel_hepp_series(max_n: usize) -> Vec<Rational> {
    use series::*;
    let len = max_n + 1;
    let mut acc = vec![Rational::zero(); len];
    // 2z/(1-z)
    for (k, c) in acc.iter_mut().enumerate().skip(1) {
        let _ = k;
        *c += Rational::from_int(2);
    }
    if len > 1 {
        acc[1] -= Rational::from_int(4);
    }
    if len > 2 {
        acc[2] -= Rational::from_int(14);
    }
    // -4 z^2 log(1-z)
    let log = log_one_minus(len);
    for k in 2..len {
        let term = &log[k - 2] * &Rational::from_int(-4);
        acc[k] += term;
    }
    // 2z (1-9z)^(-1/2) (1-z)^(-3/2)
    let p = binomial_series(Rational::from_int(-9), Rational::new(-1, 2), len);
    let q = binomial_series(Rational::from_int(-1), Rational::new(-3, 2), len);
    let pq = mul(&p, &q, len);
    for k in 1..len {
        acc[k] += Rational::from_int(2) * &pq[k - 1];
    }
    acc
}

/// Exact power-series helpers over the rationals.
pub(crate) mod series {
    use crate::arith::Rational;

    /// Coefficients of `(1 + c z)^alpha` up to `len` terms.
    pub fn binomial_series(c: Rational, alpha: Rational, len: usize) -> Vec<Rational> {
        let mut out = Vec::with_capacity(len);
        let mut cur = Rational::one();
        out.push(cur.clone());
        for k in 1..len {
            let factor =
                (&alpha - &Rational::from_int(k as i64 - 1)) / Rational::from_int(k as i64);
            cur = cur * &c * &factor;
            out.push(cur.clone());
        }
        out
    }

    /// Coefficients of `log(1 - z)` up to `len` terms.
    pub fn log_one_minus(len: usize) -> Vec<Rational> {
        let mut out = vec![Rational::zero()];
        for k in 1..len {
            out.push(Rational::new(-1, k as i64));
        }
        out
    }

    pub fn mul(a: &[Rational], b: &[Rational], len: usize) -> Vec<Rational> {
        let mut out = vec![Rational::zero(); len];
        for (i, x) in a.iter().enumerate().take(len) {
            if x.is_zero() {
                continue;
            }
            for (j, y) in b.iter().enumerate().take(len - i) {
                let prod = x * y;
                out[i + j] += prod;
            }
        }
        out
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q(n: i64, d: i64) -> Rational {
        Rational::new(n, d)
    }

    #[test]
    fn wheel_units() {
        assert_eq!(closed_form_unit(ClosedForm::Wheel(3)).unwrap(), q(84, 1));
        assert_eq!(closed_form_unit(ClosedForm::Wheel(4)).unwrap(), q(572, 1));
        assert_eq!(closed_form_unit(ClosedForm::Wheel(5)).unwrap(), q(13240, 3));
        assert_eq!(closed_form_unit(ClosedForm::Wheel(6)).unwrap(), q(35463, 1));
    }

    #[test]
    fn wheel_series_matches_formula() {
        let series = wheel_hepp_series(8);
        assert!(series[0].is_zero());
        assert!(series[1].is_zero());
        assert!(series[2].is_zero());
        for n in 3..=8 {
            assert_eq!(
                series[n],
                closed_form_unit(ClosedForm::Wheel(n)).unwrap(),
                "wheel {n}"
            );
        }
    }

    #[test]
    fn complete_graph_units() {
        assert_eq!(closed_form_unit(ClosedForm::Complete(3)).unwrap(), q(3, 1));
        assert_eq!(closed_form_unit(ClosedForm::Complete(4)).unwrap(), q(84, 1));
        // 5 * 3^7 * 53 / 2^5
        assert_eq!(
            closed_form_unit(ClosedForm::Complete(5)).unwrap(),
            q(5 * 2187 * 53, 32)
        );
        // 2^16 * 3^2 * 5 * 13
        assert_eq!(
            closed_form_unit(ClosedForm::Complete(6)).unwrap(),
            q(65536 * 9 * 5 * 13, 1)
        );
    }

    #[test]
    fn uniform_units() {
        assert_eq!(
            closed_form_unit(ClosedForm::Uniform(4, 2)).unwrap(),
            q(12, 1)
        );
        // cycles and bonds as uniform matroids
        assert_eq!(
            closed_form_unit(ClosedForm::Uniform(5, 4)).unwrap(),
            closed_form_unit(ClosedForm::Cycle(5)).unwrap()
        );
        assert_eq!(
            closed_form_unit(ClosedForm::Uniform(5, 1)).unwrap(),
            closed_form_unit(ClosedForm::Bond(5)).unwrap()
        );
        assert!(closed_form_unit(ClosedForm::Uniform(4, 0)).is_err());
        assert!(closed_form_unit(ClosedForm::Uniform(4, 4)).is_err());
    }

    #[test]
    fn closed_form_general_indices() {
        // cycle: (a1+a2)/(a1 a2)
        let v = closed_form_at(ClosedForm::Cycle(2), &[q(1, 2), q(3, 1)]).unwrap();
        assert_eq!(v, q(7, 3));
        // uniform with unit indices matches the unit formula
        let unit = vec![Rational::one(); 5];
        assert_eq!(
            closed_form_at(ClosedForm::Uniform(5, 2), &unit).unwrap(),
            closed_form_unit(ClosedForm::Uniform(5, 2)).unwrap()
        );
        assert_eq!(
            closed_form_at(ClosedForm::Bond(4), &unit[..4]).unwrap(),
            closed_form_unit(ClosedForm::Bond(4)).unwrap()
        );
    }
}
