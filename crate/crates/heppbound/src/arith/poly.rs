use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use serde::{Deserialize, Serialize};

use super::Rational;

/// Univariate polynomial over the rationals, coefficients stored lowest
/// degree first. The highest-degree coefficient is nonzero unless the
/// polynomial is zero (empty coefficient list).
#[derive(Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(transparent)]
pub struct UniPoly {
    coeffs: Vec<Rational>,
}

impl UniPoly {
    pub fn zero() -> Self {
        UniPoly { coeffs: vec![] }
    }

    pub fn one() -> Self {
        UniPoly::constant(Rational::one())
    }

    pub fn constant(c: Rational) -> Self {
        UniPoly::from_coeffs(vec![c])
    }

    /// The monomial `t`.
    pub fn var() -> Self {
        UniPoly::from_coeffs(vec![Rational::zero(), Rational::one()])
    }

    /// `c0 + c1 t`.
    pub fn linear(c0: Rational, c1: Rational) -> Self {
        UniPoly::from_coeffs(vec![c0, c1])
    }

    pub fn from_coeffs(mut coeffs: Vec<Rational>) -> Self {
        while coeffs.last().is_some_and(Rational::is_zero) {
            coeffs.pop();
        }
        UniPoly { coeffs }
    }

    pub fn coeffs(&self) -> &[Rational] {
        &self.coeffs
    }

    pub fn coeff(&self, k: usize) -> Rational {
        self.coeffs.get(k).cloned().unwrap_or_else(Rational::zero)
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn is_one(&self) -> bool {
        self.coeffs.len() == 1 && self.coeffs[0].is_one()
    }

    /// Degree, or `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn leading(&self) -> Option<&Rational> {
        self.coeffs.last()
    }

    pub fn eval(&self, t: &Rational) -> Rational {
        let mut acc = Rational::zero();
        for c in self.coeffs.iter().rev() {
            acc = acc * t + c;
        }
        acc
    }

    pub fn derivative(&self) -> UniPoly {
        if self.coeffs.len() <= 1 {
            return UniPoly::zero();
        }
        let coeffs = self
            .coeffs
            .iter()
            .enumerate()
            .skip(1)
            .map(|(k, c)| Rational::from_int(k as i64) * c)
            .collect();
        UniPoly::from_coeffs(coeffs)
    }

    pub fn scale(&self, c: &Rational) -> UniPoly {
        if c.is_zero() {
            return UniPoly::zero();
        }
        UniPoly::from_coeffs(self.coeffs.iter().map(|x| x * c).collect())
    }

    /// Divide by the leading coefficient.
    pub fn monic(&self) -> UniPoly {
        match self.leading() {
            None => UniPoly::zero(),
            Some(lead) => {
                let inv = lead.recip().unwrap();
                self.scale(&inv)
            }
        }
    }

    /// Exact Euclidean division: `(quotient, remainder)` with
    /// `deg(remainder) < deg(divisor)`. Panics on a zero divisor.
    pub fn div_rem(&self, divisor: &UniPoly) -> (UniPoly, UniPoly) {
        assert!(!divisor.is_zero(), "polynomial division by zero");
        let dlead = divisor.leading().unwrap();
        let dinv = dlead.recip().unwrap();
        let ddeg = divisor.degree().unwrap();
        let mut rem = self.coeffs.clone();
        if rem.len() < divisor.coeffs.len() {
            return (UniPoly::zero(), self.clone());
        }
        let qlen = rem.len() - ddeg;
        let mut quot = vec![Rational::zero(); qlen];
        for k in (0..qlen).rev() {
            let q = &rem[k + ddeg] * &dinv;
            if !q.is_zero() {
                for (j, d) in divisor.coeffs.iter().enumerate() {
                    let delta = &q * d;
                    rem[k + j] -= &delta;
                }
            }
            quot[k] = q;
        }
        (UniPoly::from_coeffs(quot), UniPoly::from_coeffs(rem))
    }

    /// Monic greatest common divisor. Computed over the integers with a
    /// content-normalized pseudo-remainder sequence, which keeps the
    /// coefficients from exploding on long Euclidean chains.
    pub fn gcd(&self, other: &UniPoly) -> UniPoly {
        if self.is_zero() {
            return other.monic();
        }
        if other.is_zero() {
            return self.monic();
        }
        let mut a = primitive_int(self);
        let mut b = primitive_int(other);
        if a.len() < b.len() {
            std::mem::swap(&mut a, &mut b);
        }
        while !b.is_empty() {
            let r = primitive_pseudo_rem(&a, &b);
            a = b;
            b = r;
        }
        let coeffs = a.into_iter().map(Rational::from_bigint).collect::<Vec<_>>();
        UniPoly::from_coeffs(coeffs).monic()
    }

    /// Multiplicity of `t0` as a root.
    pub fn root_order(&self, t0: &Rational) -> usize {
        if self.is_zero() {
            return usize::MAX;
        }
        let factor = UniPoly::linear(-t0.clone(), Rational::one());
        let mut order = 0;
        let mut cur = self.clone();
        loop {
            let (q, r) = cur.div_rem(&factor);
            if !r.is_zero() {
                return order;
            }
            order += 1;
            cur = q;
        }
    }
}

/// Integer coefficients with content one (sign normalized to a positive
/// leading coefficient).
fn primitive_int(p: &UniPoly) -> Vec<num::BigInt> {
    use num::Integer;
    let mut lcm = num::BigInt::from(1);
    for c in p.coeffs() {
        lcm = lcm.lcm(c.denom());
    }
    let ints: Vec<num::BigInt> = p
        .coeffs()
        .iter()
        .map(|c| c.numer() * (&lcm / c.denom()))
        .collect();
    primitive_part(ints)
}

fn primitive_part(mut ints: Vec<num::BigInt>) -> Vec<num::BigInt> {
    use num::{Integer, Signed, Zero};
    while ints.last().is_some_and(Zero::is_zero) {
        ints.pop();
    }
    if ints.is_empty() {
        return ints;
    }
    let mut content = num::BigInt::from(0);
    for c in &ints {
        content = content.gcd(c);
    }
    if ints.last().unwrap().is_negative() {
        content = -content;
    }
    for c in ints.iter_mut() {
        *c = &*c / &content;
    }
    ints
}

/// Primitive part of the pseudo-remainder of `a` by `b` (both primitive,
/// `b` nonzero, `deg a >= deg b`).
fn primitive_pseudo_rem(a: &[num::BigInt], b: &[num::BigInt]) -> Vec<num::BigInt> {
    use num::Zero;
    let db = b.len() - 1;
    let lead = b[db].clone();
    let mut r = a.to_vec();
    loop {
        while r.last().is_some_and(Zero::is_zero) {
            r.pop();
        }
        if r.len() <= db {
            break;
        }
        let dr = r.len() - 1;
        let top = r[dr].clone();
        for c in r.iter_mut() {
            *c *= &lead;
        }
        let shift = dr - db;
        for j in 0..=db {
            r[shift + j] -= &top * &b[j];
        }
    }
    primitive_part(r)
}

impl fmt::Debug for UniPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let terms: Vec<String> = self
            .coeffs
            .iter()
            .enumerate()
            .filter(|(_, c)| !c.is_zero())
            .map(|(k, c)| match k {
                0 => format!("{}", c),
                1 => format!("({})*t", c),
                _ => format!("({})*t^{}", c, k),
            })
            .collect();
        write!(f, "{}", terms.join(" + "))
    }
}

impl Add for &UniPoly {
    type Output = UniPoly;
    fn add(self, rhs: &UniPoly) -> UniPoly {
        let n = self.coeffs.len().max(rhs.coeffs.len());
        let coeffs = (0..n).map(|k| self.coeff(k) + rhs.coeff(k)).collect();
        UniPoly::from_coeffs(coeffs)
    }
}

impl Sub for &UniPoly {
    type Output = UniPoly;
    fn sub(self, rhs: &UniPoly) -> UniPoly {
        let n = self.coeffs.len().max(rhs.coeffs.len());
        let coeffs = (0..n).map(|k| self.coeff(k) - rhs.coeff(k)).collect();
        UniPoly::from_coeffs(coeffs)
    }
}

impl Mul for &UniPoly {
    type Output = UniPoly;
    fn mul(self, rhs: &UniPoly) -> UniPoly {
        if self.is_zero() || rhs.is_zero() {
            return UniPoly::zero();
        }
        let mut coeffs = vec![Rational::zero(); self.coeffs.len() + rhs.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in rhs.coeffs.iter().enumerate() {
                let prod = a * b;
                coeffs[i + j] += prod;
            }
        }
        UniPoly::from_coeffs(coeffs)
    }
}

impl Neg for &UniPoly {
    type Output = UniPoly;
    fn neg(self) -> UniPoly {
        UniPoly::from_coeffs(self.coeffs.iter().map(|c| -c).collect())
    }
}
