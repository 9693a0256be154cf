//! Sparse multivariate polynomials over Q(i).
//!
//! The zero polynomial is the empty term map; no zero coefficients are
//! ever stored, so equality is structural. Terms live in a BTreeMap
//! keyed by graded-lex monomials, which fixes iteration and printing
//! order once and for all.

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use std::collections::{BTreeMap, BTreeSet};
use std::fmt;

use crate::error::PolyError;
use crate::gauss::GaussRat;
use crate::var::{Monomial, Var};

#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct Poly {
    terms: BTreeMap<Monomial, GaussRat>,
}

impl Poly {
    pub fn zero() -> Self {
        Poly {
            terms: BTreeMap::new(),
        }
    }

    pub fn one() -> Self {
        Poly::constant(GaussRat::one())
    }

    pub fn constant(c: GaussRat) -> Self {
        let mut terms = BTreeMap::new();
        if !c.is_zero() {
            terms.insert(Monomial::one(), c);
        }
        Poly { terms }
    }

    pub fn from_int(n: i64) -> Self {
        Poly::constant(GaussRat::from_int(n))
    }

    pub fn var(v: Var) -> Self {
        Poly::term(Monomial::var(v), GaussRat::one())
    }

    pub fn term(m: Monomial, c: GaussRat) -> Self {
        let mut terms = BTreeMap::new();
        if !c.is_zero() {
            terms.insert(m, c);
        }
        Poly { terms }
    }

    pub fn from_terms(pairs: impl IntoIterator<Item = (Monomial, GaussRat)>) -> Self {
        let mut p = Poly::zero();
        for (m, c) in pairs {
            p.add_term(m, c);
        }
        p
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_constant(&self) -> bool {
        self.terms.len() <= 1 && self.terms.keys().all(|m| m.is_one())
    }

    /// The constant value, if this polynomial is a constant.
    pub fn as_constant(&self) -> Option<GaussRat> {
        if self.is_zero() {
            Some(GaussRat::zero())
        } else if self.is_constant() {
            self.terms.values().next().cloned()
        } else {
            None
        }
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    pub fn terms(&self) -> std::collections::btree_map::Iter<'_, Monomial, GaussRat> {
        self.terms.iter()
    }

    pub fn coeff(&self, m: &Monomial) -> GaussRat {
        self.terms.get(m).cloned().unwrap_or_else(GaussRat::zero)
    }

    /// Leading term in graded-lex order.
    pub fn leading(&self) -> Option<(&Monomial, &GaussRat)> {
        self.terms.iter().next_back()
    }

    pub fn total_degree(&self) -> u32 {
        self.terms
            .keys()
            .map(|m| m.total_degree())
            .max()
            .unwrap_or(0)
    }

    pub fn degree_in(&self, v: Var) -> u32 {
        self.terms.keys().map(|m| m.exponent(v)).max().unwrap_or(0)
    }

    pub fn vars(&self) -> BTreeSet<Var> {
        self.terms
            .keys()
            .flat_map(|m| m.iter().map(|(v, _)| v))
            .collect()
    }

    fn add_term(&mut self, m: Monomial, c: GaussRat) {
        if c.is_zero() {
            return;
        }
        match self.terms.get_mut(&m) {
            Some(existing) => {
                let sum = &*existing + &c;
                if sum.is_zero() {
                    self.terms.remove(&m);
                } else {
                    *existing = sum;
                }
            }
            None => {
                self.terms.insert(m, c);
            }
        }
    }

    pub fn add(&self, other: &Poly) -> Poly {
        let mut out = self.clone();
        for (m, c) in &other.terms {
            out.add_term(m.clone(), c.clone());
        }
        out
    }

    pub fn sub(&self, other: &Poly) -> Poly {
        let mut out = self.clone();
        for (m, c) in &other.terms {
            out.add_term(m.clone(), -c);
        }
        out
    }

    pub fn neg(&self) -> Poly {
        Poly {
            terms: self.terms.iter().map(|(m, c)| (m.clone(), -c)).collect(),
        }
    }

    pub fn scale(&self, c: &GaussRat) -> Poly {
        if c.is_zero() {
            return Poly::zero();
        }
        Poly {
            terms: self
                .terms
                .iter()
                .map(|(m, k)| (m.clone(), k * c))
                .collect(),
        }
    }

    pub fn mul(&self, other: &Poly) -> Poly {
        let mut out = Poly::zero();
        // iterate the smaller operand outside
        let (small, big) = if self.terms.len() <= other.terms.len() {
            (self, other)
        } else {
            (other, self)
        };
        for (ma, ca) in &small.terms {
            for (mb, cb) in &big.terms {
                out.add_term(ma.mul(mb), ca * cb);
            }
        }
        out
    }

    pub fn mul_term(&self, m: &Monomial, c: &GaussRat) -> Poly {
        if c.is_zero() {
            return Poly::zero();
        }
        Poly {
            terms: self
                .terms
                .iter()
                .map(|(mm, cc)| (mm.mul(m), cc * c))
                .collect(),
        }
    }

    pub fn pow(&self, e: u32) -> Poly {
        let mut out = Poly::one();
        let mut base = self.clone();
        let mut e = e;
        while e > 0 {
            if e & 1 == 1 {
                out = out.mul(&base);
            }
            e >>= 1;
            if e > 0 {
                base = base.mul(&base);
            }
        }
        out
    }

    /// Formal partial derivative. Variables other than `v` are inert.
    pub fn partial(&self, v: Var) -> Poly {
        let mut out = Poly::zero();
        for (m, c) in &self.terms {
            let e = m.exponent(v);
            if e == 0 {
                continue;
            }
            let reduced = m.div(&Monomial::var(v)).expect("positive exponent");
            out.add_term(reduced, &c.clone() * &GaussRat::from_int(e as i64));
        }
        out
    }

    /// Substitution with polynomial images. Unmapped variables map to
    /// themselves.
    pub fn substitute_poly(&self, map: &BTreeMap<Var, Poly>) -> Poly {
        let mut out = Poly::zero();
        for (m, c) in &self.terms {
            let mut term = Poly::constant(c.clone());
            let mut residual = Monomial::one();
            for (v, e) in m.iter() {
                match map.get(&v) {
                    Some(image) => term = term.mul(&image.pow(e)),
                    None => residual = residual.mul(&Monomial::var_pow(v, e)),
                }
            }
            out = out.add(&term.mul_term(&residual, &GaussRat::one()));
        }
        out
    }

    /// Evaluates at a point; every variable occurring in `self` must be
    /// bound in `map`.
    pub fn eval(&self, map: &BTreeMap<Var, GaussRat>) -> Result<GaussRat, PolyError> {
        let mut out = GaussRat::zero();
        for (m, c) in &self.terms {
            let mut val = c.clone();
            for (v, e) in m.iter() {
                let x = map
                    .get(&v)
                    .ok_or_else(|| PolyError::UnboundVariable(v.to_string()))?;
                for _ in 0..e {
                    val = &val * x;
                }
            }
            out = &out + &val;
        }
        Ok(out)
    }

    /// Exact polynomial division: returns `h` with `h * g == self`,
    /// or `NotDivisible` when no such polynomial exists.
    pub fn exact_div(&self, g: &Poly) -> Result<Poly, PolyError> {
        if g.is_zero() {
            return Err(PolyError::ZeroDivisor);
        }
        let (lt_m, lt_c) = g.leading().expect("nonzero divisor");
        let lt_c_inv = lt_c.inverse().expect("nonzero leading coefficient");
        let mut rem = self.clone();
        let mut quot = Poly::zero();
        while !rem.is_zero() {
            let (rm, rc) = rem.leading().expect("nonzero remainder");
            let qm = rm.div(lt_m).ok_or(PolyError::NotDivisible)?;
            let qc = &rc.clone() * &lt_c_inv;
            quot.add_term(qm.clone(), qc.clone());
            rem = rem.sub(&g.mul_term(&qm, &qc));
        }
        Ok(quot)
    }

    /// Repeatedly divides by `g` while exactly divisible; returns the
    /// reduced polynomial and the number of factors removed.
    pub fn strip_factor(&self, g: &Poly) -> (Poly, u32) {
        let mut cur = self.clone();
        let mut count = 0;
        loop {
            if cur.is_zero() {
                return (cur, count);
            }
            match cur.exact_div(g) {
                Ok(q) => {
                    cur = q;
                    count += 1;
                }
                Err(_) => return (cur, count),
            }
        }
    }

    /// Collects by the variables selected by `pred`: returns a map from
    /// block monomials to coefficient polynomials containing no
    /// variables of the block. Re-expanding the map reproduces `self`.
    pub fn collect_by(&self, pred: impl Fn(Var) -> bool + Copy) -> BTreeMap<Monomial, Poly> {
        let mut out: BTreeMap<Monomial, Poly> = BTreeMap::new();
        for (m, c) in &self.terms {
            let (inside, outside) = m.split(pred);
            out.entry(inside)
                .or_insert_with(Poly::zero)
                .add_term(outside, c.clone());
        }
        out.retain(|_, p| !p.is_zero());
        out
    }

    /// Divides out the rational content and fixes the phase so that the
    /// leading coefficient is `1`, `i`, or has positive real part with
    /// integral coprime coefficients overall. Returns (primitive part,
    /// content) with `self == primitive.scale(content)`.
    pub fn normalize_content(&self) -> (Poly, GaussRat) {
        if self.is_zero() {
            return (Poly::zero(), GaussRat::one());
        }
        // gcd of all integer numerators over lcm of denominators
        let mut num_gcd = BigInt::zero();
        let mut den_lcm = BigInt::one();
        for c in self.terms.values() {
            for r in [&c.re, &c.im] {
                if !r.is_zero() {
                    num_gcd = num_gcd.gcd(r.numer());
                    den_lcm = den_lcm.lcm(r.denom());
                }
            }
        }
        let content_rat = BigRational::new(num_gcd, den_lcm);
        let mut content = GaussRat::new(content_rat, BigRational::zero());
        let mut prim = self.scale(&content.inverse().expect("nonzero content"));
        // phase: make the leading coefficient's first nonzero part positive,
        // and real when the real part vanishes
        let (_, lc) = prim.leading().expect("nonzero polynomial");
        let phase = if lc.re.is_zero() {
            if lc.im.is_positive() {
                GaussRat::new(BigRational::zero(), -BigRational::one()) // divide by i
            } else {
                GaussRat::i()
            }
        } else if lc.re.is_negative() {
            -&GaussRat::one()
        } else {
            GaussRat::one()
        };
        if !phase.is_one() {
            prim = prim.scale(&phase);
            content = &content * &phase.inverse().expect("unit phase");
        }
        (prim, content)
    }
}

impl fmt::Display for Poly {
    /// Canonical text form: terms in descending graded-lex order.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for (m, c) in self.terms.iter().rev() {
            let (sign, mag) = if c.is_real() && c.re.is_negative() {
                ("-", -c)
            } else {
                ("+", c.clone())
            };
            if first {
                if sign == "-" {
                    write!(f, "-")?;
                }
                first = false;
            } else {
                write!(f, " {} ", sign)?;
            }
            let coeff_str = if mag.is_one() && !m.is_one() {
                None
            } else if mag.is_real() || mag.re.is_zero() {
                Some(mag.to_string())
            } else {
                Some(format!("({})", mag))
            };
            match (coeff_str, m.is_one()) {
                (Some(cs), true) => write!(f, "{cs}")?,
                (Some(cs), false) => write!(f, "{cs}*{m}")?,
                (None, _) => write!(f, "{m}")?,
            }
        }
        Ok(())
    }
}

impl serde::Serialize for Poly {
    /// `{"terms":[{"exps":{"z11":2},"coeff":{"re":"1","im":"0"}}, ...]}`
    /// with terms in canonical (ascending graded-lex) order.
    fn serialize<S: serde::Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        use serde::ser::{SerializeMap, SerializeSeq, SerializeStruct};

        struct Exps<'a>(&'a Monomial);
        impl serde::Serialize for Exps<'_> {
            fn serialize<S: serde::Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
                let mut map = s.serialize_map(None)?;
                for (v, e) in self.0.iter() {
                    map.serialize_entry(&v.to_string(), &e)?;
                }
                map.end()
            }
        }

        struct Term<'a>(&'a Monomial, &'a GaussRat);
        impl serde::Serialize for Term<'_> {
            fn serialize<S: serde::Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
                let mut st = s.serialize_struct("Term", 2)?;
                st.serialize_field("exps", &Exps(self.0))?;
                st.serialize_field("coeff", self.1)?;
                st.end()
            }
        }

        struct Terms<'a>(&'a Poly);
        impl serde::Serialize for Terms<'_> {
            fn serialize<S: serde::Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
                let mut seq = s.serialize_seq(Some(self.0.terms.len()))?;
                for (m, c) in &self.0.terms {
                    seq.serialize_element(&Term(m, c))?;
                }
                seq.end()
            }
        }

        let mut st = s.serialize_struct("Poly", 1)?;
        st.serialize_field("terms", &Terms(self))?;
        st.end()
    }
}
