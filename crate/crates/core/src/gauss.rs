//! Exact Gaussian-rational arithmetic: the field Q(i) over unbounded integers.
//!
//! Every coefficient in the system lives here. `num_rational::BigRational`
//! keeps denominators positive and in lowest terms after every operation,
//! so equality is structural.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};
use std::str::FromStr;

use crate::error::ArithError;

/// An element of Q(i): `re + im*i` with exact rational parts.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct GaussRat {
    pub re: BigRational,
    pub im: BigRational,
}

impl GaussRat {
    pub fn new(re: BigRational, im: BigRational) -> Self {
        GaussRat { re, im }
    }

    pub fn zero() -> Self {
        GaussRat {
            re: BigRational::zero(),
            im: BigRational::zero(),
        }
    }

    pub fn one() -> Self {
        GaussRat {
            re: BigRational::one(),
            im: BigRational::zero(),
        }
    }

    /// The imaginary unit.
    pub fn i() -> Self {
        GaussRat {
            re: BigRational::zero(),
            im: BigRational::one(),
        }
    }

    pub fn from_int(n: i64) -> Self {
        GaussRat {
            re: BigRational::from_integer(BigInt::from(n)),
            im: BigRational::zero(),
        }
    }

    pub fn from_ratio(num: i64, den: i64) -> Self {
        assert!(den != 0, "zero denominator");
        GaussRat {
            re: BigRational::new(BigInt::from(num), BigInt::from(den)),
            im: BigRational::zero(),
        }
    }

    pub fn is_zero(&self) -> bool {
        self.re.is_zero() && self.im.is_zero()
    }

    pub fn is_one(&self) -> bool {
        self.re.is_one() && self.im.is_zero()
    }

    pub fn is_real(&self) -> bool {
        self.im.is_zero()
    }

    pub fn conj(&self) -> Self {
        GaussRat {
            re: self.re.clone(),
            im: -self.im.clone(),
        }
    }

    /// |a|^2 = re^2 + im^2, a nonnegative rational.
    pub fn norm_sq(&self) -> BigRational {
        &self.re * &self.re + &self.im * &self.im
    }

    /// Multiplicative inverse: conjugate over norm.
    pub fn inverse(&self) -> Result<Self, ArithError> {
        if self.is_zero() {
            return Err(ArithError::DivisionByZero);
        }
        let n = self.norm_sq();
        Ok(GaussRat {
            re: &self.re / &n,
            im: -&self.im / &n,
        })
    }

    pub fn div(&self, other: &Self) -> Result<Self, ArithError> {
        Ok(self * &other.inverse()?)
    }

    /// Parses "a/b+c/d*i" style strings (the output of `Display`);
    /// accepts "i", "-i", "3", "3/5", "3+4*i", "-1/2*i", etc.
    pub fn parse(s: &str) -> Result<Self, ArithError> {
        let s: String = s.chars().filter(|c| !c.is_whitespace()).collect();
        if s.is_empty() {
            return Err(ArithError::BadLiteral(s));
        }
        // split into at most two signed parts
        let mut parts: Vec<String> = Vec::new();
        let mut cur = String::new();
        for (k, c) in s.chars().enumerate() {
            if (c == '+' || c == '-') && k > 0 && !cur.is_empty() {
                parts.push(cur.clone());
                cur.clear();
            }
            cur.push(c);
        }
        parts.push(cur);
        let mut out = GaussRat::zero();
        for p in parts {
            out = &out + &Self::parse_part(&p)?;
        }
        Ok(out)
    }

    fn parse_part(p: &str) -> Result<Self, ArithError> {
        let bad = || ArithError::BadLiteral(p.to_string());
        if let Some(rest) = p.strip_suffix("*i").or_else(|| p.strip_suffix('i')) {
            let body = if rest.is_empty() || rest == "+" {
                BigRational::one()
            } else if rest == "-" {
                -BigRational::one()
            } else {
                BigRational::from_str(rest).map_err(|_| bad())?
            };
            Ok(GaussRat {
                re: BigRational::zero(),
                im: body,
            })
        } else {
            Ok(GaussRat {
                re: BigRational::from_str(p).map_err(|_| bad())?,
                im: BigRational::zero(),
            })
        }
    }
}

fn fmt_rat(r: &BigRational) -> String {
    if r.denom().is_one() {
        r.numer().to_string()
    } else {
        format!("{}/{}", r.numer(), r.denom())
    }
}

impl fmt::Display for GaussRat {
    /// "a/b+c/d*i" with zero parts omitted; "i" and "-i" unadorned.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        if !self.re.is_zero() {
            write!(f, "{}", fmt_rat(&self.re))?;
            first = false;
        }
        if !self.im.is_zero() {
            let im = &self.im;
            if first {
                if im.is_one() {
                    write!(f, "i")?;
                } else if (-im).is_one() {
                    write!(f, "-i")?;
                } else {
                    write!(f, "{}*i", fmt_rat(im))?;
                }
            } else if im.is_positive() {
                if im.is_one() {
                    write!(f, "+i")?;
                } else {
                    write!(f, "+{}*i", fmt_rat(im))?;
                }
            } else if (-im).is_one() {
                write!(f, "-i")?;
            } else {
                write!(f, "{}*i", fmt_rat(im))?;
            }
        }
        Ok(())
    }
}

impl Add for &GaussRat {
    type Output = GaussRat;
    fn add(self, rhs: &GaussRat) -> GaussRat {
        GaussRat {
            re: &self.re + &rhs.re,
            im: &self.im + &rhs.im,
        }
    }
}

impl Sub for &GaussRat {
    type Output = GaussRat;
    fn sub(self, rhs: &GaussRat) -> GaussRat {
        GaussRat {
            re: &self.re - &rhs.re,
            im: &self.im - &rhs.im,
        }
    }
}

impl Mul for &GaussRat {
    type Output = GaussRat;
    fn mul(self, rhs: &GaussRat) -> GaussRat {
        GaussRat {
            re: &self.re * &rhs.re - &self.im * &rhs.im,
            im: &self.re * &rhs.im + &self.im * &rhs.re,
        }
    }
}

impl Neg for &GaussRat {
    type Output = GaussRat;
    fn neg(self) -> GaussRat {
        GaussRat {
            re: -self.re.clone(),
            im: -self.im.clone(),
        }
    }
}

impl serde::Serialize for GaussRat {
    fn serialize<S: serde::Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        use serde::ser::SerializeStruct;
        let mut st = s.serialize_struct("GaussRat", 2)?;
        st.serialize_field("re", &fmt_rat(&self.re))?;
        st.serialize_field("im", &fmt_rat(&self.im))?;
        st.end()
    }
}
