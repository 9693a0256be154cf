//! Unreduced rational functions: a numerator/denominator pair of
//! polynomials. No GCD reduction is performed anywhere; equality is
//! cross-multiplication. Denominator factors that are known exactly
//! (powers of the original Q) may be stripped with `reduce_by`.

use std::collections::BTreeMap;
use std::fmt;

use crate::error::PolyError;
use crate::gauss::GaussRat;
use crate::poly::Poly;
use crate::var::Var;

#[derive(Debug, Clone, serde::Serialize)]
pub struct RatFn {
    pub num: Poly,
    pub den: Poly,
}

impl RatFn {
    pub fn new(num: Poly, den: Poly) -> Result<Self, PolyError> {
        if den.is_zero() {
            return Err(PolyError::ZeroDenominator);
        }
        Ok(RatFn { num, den })
    }

    pub fn from_poly(p: Poly) -> Self {
        RatFn {
            num: p,
            den: Poly::one(),
        }
    }

    pub fn zero() -> Self {
        RatFn::from_poly(Poly::zero())
    }

    pub fn is_zero(&self) -> bool {
        self.num.is_zero()
    }

    /// The numerator, when the denominator is the constant 1 (or a
    /// nonzero constant, which is folded in).
    pub fn as_poly(&self) -> Option<Poly> {
        let c = self.den.as_constant()?;
        let inv = c.inverse().ok()?;
        Some(self.num.scale(&inv))
    }

    pub fn add(&self, other: &RatFn) -> RatFn {
        RatFn {
            num: self.num.mul(&other.den).add(&other.num.mul(&self.den)),
            den: self.den.mul(&other.den),
        }
    }

    pub fn sub(&self, other: &RatFn) -> RatFn {
        RatFn {
            num: self.num.mul(&other.den).sub(&other.num.mul(&self.den)),
            den: self.den.mul(&other.den),
        }
    }

    pub fn mul(&self, other: &RatFn) -> RatFn {
        RatFn {
            num: self.num.mul(&other.num),
            den: self.den.mul(&other.den),
        }
    }

    pub fn mul_poly(&self, p: &Poly) -> RatFn {
        RatFn {
            num: self.num.mul(p),
            den: self.den.clone(),
        }
    }

    pub fn div(&self, other: &RatFn) -> Result<RatFn, PolyError> {
        if other.num.is_zero() {
            return Err(PolyError::ZeroDenominator);
        }
        Ok(RatFn {
            num: self.num.mul(&other.den),
            den: self.den.mul(&other.num),
        })
    }

    pub fn neg(&self) -> RatFn {
        RatFn {
            num: self.num.neg(),
            den: self.den.clone(),
        }
    }

    pub fn scale(&self, c: &GaussRat) -> RatFn {
        RatFn {
            num: self.num.scale(c),
            den: self.den.clone(),
        }
    }

    pub fn pow(&self, e: u32) -> RatFn {
        RatFn {
            num: self.num.pow(e),
            den: self.den.pow(e),
        }
    }

    /// Strips common factors `g` shared by numerator and denominator,
    /// via exact division. The result is equal under cross-multiplication.
    pub fn reduce_by(&self, g: &Poly) -> RatFn {
        if g.is_zero() || g.is_constant() {
            return self.clone();
        }
        let (n, kn) = self.num.strip_factor(g);
        if kn == 0 {
            return self.clone();
        }
        let (d, kd) = self.den.strip_factor(g);
        if kd == 0 {
            return self.clone();
        }
        let k = kn.min(kd);
        RatFn {
            num: n.mul(&g.pow(kn - k)),
            den: d.mul(&g.pow(kd - k)),
        }
    }

    /// Formal partial derivative via the quotient rule; denominator squares.
    pub fn partial(&self, v: Var) -> RatFn {
        RatFn {
            num: self
                .num
                .partial(v)
                .mul(&self.den)
                .sub(&self.num.mul(&self.den.partial(v))),
            den: self.den.pow(2),
        }
    }

    pub fn substitute_poly(&self, map: &BTreeMap<Var, Poly>) -> Result<RatFn, PolyError> {
        RatFn::new(
            self.num.substitute_poly(map),
            self.den.substitute_poly(map),
        )
    }

    pub fn eval(&self, map: &BTreeMap<Var, GaussRat>) -> Result<GaussRat, PolyError> {
        let d = self.den.eval(map)?;
        if d.is_zero() {
            return Err(PolyError::ZeroDenominator);
        }
        let n = self.num.eval(map)?;
        Ok(&n * &d.inverse().expect("nonzero denominator value"))
    }

    /// Equality as rational functions: `num1*den2 == num2*den1`.
    pub fn equiv(&self, other: &RatFn) -> bool {
        self.num.mul(&other.den) == other.num.mul(&self.den)
    }
}

impl PartialEq for RatFn {
    fn eq(&self, other: &Self) -> bool {
        self.equiv(other)
    }
}

impl fmt::Display for RatFn {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if let Some(p) = self.as_poly() {
            return write!(f, "{p}");
        }
        write!(f, "({}) / ({})", self.num, self.den)
    }
}

/// Substitution of rational-function images into a polynomial. The
/// result carries the product of the needed denominator powers; no
/// reduction is attempted.
pub fn substitute_ratfn(f: &Poly, map: &BTreeMap<Var, RatFn>) -> Result<RatFn, PolyError> {
    // image denominators and the maximum power each is needed at
    let mut dmax: BTreeMap<Var, u32> = BTreeMap::new();
    for v in f.vars() {
        if let Some(img) = map.get(&v) {
            if img.den.is_zero() {
                return Err(PolyError::ZeroDenominator);
            }
            dmax.insert(v, f.degree_in(v));
        }
    }
    let mut den = Poly::one();
    for (v, d) in &dmax {
        den = den.mul(&map[v].den.pow(*d));
    }
    let mut num = Poly::zero();
    for (m, c) in f.terms() {
        let mut t = Poly::constant(c.clone());
        let mut residual = crate::var::Monomial::one();
        let mut used: BTreeMap<Var, u32> = BTreeMap::new();
        for (v, e) in m.iter() {
            match map.get(&v) {
                Some(img) => {
                    t = t.mul(&img.num.pow(e));
                    used.insert(v, e);
                }
                None => residual = residual.mul(&crate::var::Monomial::var_pow(v, e)),
            }
        }
        // pad with denominator powers so every term sits over the pooled `den`
        for (v, d) in &dmax {
            let e = used.get(v).copied().unwrap_or(0);
            t = t.mul(&map[v].den.pow(*d - e));
        }
        num = num.add(&t.mul_term(&residual, &GaussRat::one()));
    }
    if den.is_zero() {
        return Err(PolyError::ZeroDenominator);
    }
    Ok(RatFn { num, den })
}
