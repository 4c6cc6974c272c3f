use std::fmt;
use std::ops::{Add, Div, Mul, Neg, Sub};

use serde::{Deserialize, Serialize};

use super::{ArithError, Rational, UniPoly};

/// Univariate rational function in canonical form: the denominator is monic
/// and nonzero, and numerator and denominator are coprime. Equality is
/// therefore structural.
#[derive(Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct UniRatFunc {
    num: UniPoly,
    den: UniPoly,
}

impl UniRatFunc {
    /// Build `num/den` in canonical form. Fails if `den` is zero.
    pub fn new(num: UniPoly, den: UniPoly) -> Result<Self, ArithError> {
        if den.is_zero() {
            return Err(ArithError::DivisionByZero);
        }
        if num.is_zero() {
            return Ok(UniRatFunc {
                num: UniPoly::zero(),
                den: UniPoly::one(),
            });
        }
        let trivial = num.degree() == Some(0) || den.degree() == Some(0);
        let (num, den) = if trivial {
            (num, den)
        } else {
            let g = num.gcd(&den);
            if g.degree() == Some(0) {
                (num, den)
            } else {
                (num.div_rem(&g).0, den.div_rem(&g).0)
            }
        };
        let lead_inv = den.leading().unwrap().recip().unwrap();
        Ok(UniRatFunc {
            num: num.scale(&lead_inv),
            den: den.monic(),
        })
    }

    pub fn zero() -> Self {
        UniRatFunc {
            num: UniPoly::zero(),
            den: UniPoly::one(),
        }
    }

    pub fn one() -> Self {
        UniRatFunc {
            num: UniPoly::one(),
            den: UniPoly::one(),
        }
    }

    pub fn constant(c: Rational) -> Self {
        UniRatFunc {
            num: UniPoly::constant(c),
            den: UniPoly::one(),
        }
    }

    pub fn from_poly(p: UniPoly) -> Self {
        UniRatFunc {
            num: p,
            den: UniPoly::one(),
        }
    }

    pub fn num(&self) -> &UniPoly {
        &self.num
    }

    pub fn den(&self) -> &UniPoly {
        &self.den
    }

    pub fn is_zero(&self) -> bool {
        self.num.is_zero()
    }

    pub fn is_constant(&self) -> bool {
        self.num.degree().is_none_or(|d| d == 0) && self.den.is_one()
    }

    pub fn recip(&self) -> Result<UniRatFunc, ArithError> {
        UniRatFunc::new(self.den.clone(), self.num.clone())
    }

    /// Division with the zero-function case reported instead of panicking.
    pub fn checked_div(&self, other: &UniRatFunc) -> Result<UniRatFunc, ArithError> {
        if other.is_zero() {
            return Err(ArithError::DivisionByZero);
        }
        Ok(self / other)
    }

    /// Exact value at `t0`; fails when the denominator vanishes there.
    pub fn eval_at(&self, t0: &Rational) -> Result<Rational, ArithError> {
        let d = self.den.eval(t0);
        if d.is_zero() {
            return Err(ArithError::PoleAtPoint);
        }
        Ok(self.num.eval(t0) / d)
    }

    /// Residue at a simple pole `t0`, computed exactly as
    /// `num(t0) / den'(t0)`. Fails unless the denominator has a zero of
    /// order exactly one at `t0`.
    pub fn residue_simple(&self, t0: &Rational) -> Result<Rational, ArithError> {
        let order = self.den.root_order(t0);
        if order != 1 {
            return Err(ArithError::NotSimplePole { order });
        }
        Ok(self.num.eval(t0) / self.den.derivative().eval(t0))
    }

    /// The rational roots of the denominator (all pole locations, since the
    /// engine only ever produces denominators splitting into rational linear
    /// factors), each with its multiplicity.
    pub fn poles(&self) -> Vec<(Rational, usize)> {
        let mut out = Vec::new();
        let mut den = self.den.clone();
        // rational root search on a monic polynomial with rational
        // coefficients: clear denominators, then test divisors of the
        // constant term scaled by divisors of the leading coefficient
        while let Some(deg) = den.degree() {
            if deg == 0 {
                break;
            }
            match rational_root(&den) {
                Some(root) => {
                    let factor = UniPoly::linear(-root.clone(), Rational::one());
                    let mut mult = 0;
                    loop {
                        let (q, r) = den.div_rem(&factor);
                        if !r.is_zero() {
                            break;
                        }
                        mult += 1;
                        den = q;
                    }
                    out.push((root, mult));
                }
                None => break,
            }
        }
        out.sort_by(|a, b| a.0.cmp(&b.0));
        out
    }
}

/// One rational root of `p`, if any.
fn rational_root(p: &UniPoly) -> Option<Rational> {
    use num::bigint::BigInt;
    use num::Integer;
    // clear denominators to integer coefficients
    let mut lcm = BigInt::from(1);
    for c in p.coeffs() {
        lcm = lcm.lcm(c.denom());
    }
    let ints: Vec<BigInt> = p
        .coeffs()
        .iter()
        .map(|c| c.numer() * (&lcm / c.denom()))
        .collect();
    let lead = ints.last().cloned()?;
    // strip factors of t
    let low = ints.iter().position(|c| !num::Zero::is_zero(c))?;
    if low > 0 {
        return Some(Rational::zero());
    }
    let constant = ints[0].clone();
    for p_div in divisors(&constant) {
        for q_div in divisors(&lead) {
            for sign in [1i64, -1] {
                let cand = Rational::from_big(&p_div * BigInt::from(sign), q_div.clone());
                if p.eval(&cand).is_zero() {
                    return Some(cand);
                }
            }
        }
    }
    None
}

fn divisors(n: &num::bigint::BigInt) -> Vec<num::bigint::BigInt> {
    use num::bigint::BigInt;
    use num::Signed;
    let n = n.abs();
    if num::Zero::is_zero(&n) {
        return vec![BigInt::from(1)];
    }
    let mut out = Vec::new();
    let mut d = BigInt::from(1);
    while &d * &d <= n {
        if num::Zero::is_zero(&(&n % &d)) {
            out.push(d.clone());
            let q = &n / &d;
            if q != d {
                out.push(q);
            }
        }
        d += 1;
    }
    out
}

impl fmt::Debug for UniRatFunc {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({:?})/({:?})", self.num, self.den)
    }
}

impl Add for &UniRatFunc {
    type Output = UniRatFunc;
    fn add(self, rhs: &UniRatFunc) -> UniRatFunc {
        // split off the common denominator factor first to keep the gcd
        // normalization small
        let g = self.den.gcd(&rhs.den);
        let left = rhs.den.div_rem(&g).0;
        let right = self.den.div_rem(&g).0;
        let num = &(&self.num * &left) + &(&rhs.num * &right);
        UniRatFunc::new(num, &self.den * &left).unwrap()
    }
}

impl Sub for &UniRatFunc {
    type Output = UniRatFunc;
    fn sub(self, rhs: &UniRatFunc) -> UniRatFunc {
        let g = self.den.gcd(&rhs.den);
        let left = rhs.den.div_rem(&g).0;
        let right = self.den.div_rem(&g).0;
        let num = &(&self.num * &left) - &(&rhs.num * &right);
        UniRatFunc::new(num, &self.den * &left).unwrap()
    }
}

impl Mul for &UniRatFunc {
    type Output = UniRatFunc;
    fn mul(self, rhs: &UniRatFunc) -> UniRatFunc {
        // cross-cancel before multiplying out
        let ga = self.num.gcd(&rhs.den);
        let gb = rhs.num.gcd(&self.den);
        let na = self.num.div_rem(&ga).0;
        let nb = rhs.num.div_rem(&gb).0;
        let da = self.den.div_rem(&gb).0;
        let db = rhs.den.div_rem(&ga).0;
        UniRatFunc::new(&na * &nb, &da * &db).unwrap()
    }
}

impl Div for &UniRatFunc {
    type Output = UniRatFunc;
    fn div(self, rhs: &UniRatFunc) -> UniRatFunc {
        assert!(!rhs.is_zero(), "rational function division by zero");
        self * &rhs.recip().unwrap()
    }
}

impl Neg for &UniRatFunc {
    type Output = UniRatFunc;
    fn neg(self) -> UniRatFunc {
        UniRatFunc {
            num: -&self.num,
            den: self.den.clone(),
        }
    }
}
