//! Variables and monomials.
//!
//! The variable order is fixed: all Z before all P before all Q before
//! all X before auxiliary variables, each block lexicographic by index.
//! Monomials compare in graded lexicographic order over that variable
//! order, which makes printing and map iteration deterministic.

use std::cmp::Ordering;
use std::fmt;

/// A variable of the system.
///
/// `Z(i,j)` are the matrix coefficients z_ij, `P(j)`/`Q(k)` the symbolic
/// coefficient vectors, `X(m)` the Euclidean/Minkowski coordinates
/// (x1..x4 on the sphere side, x0..x3 on the Minkowski side).
/// `Aux` variables are internal: formal expansion parameters and the
/// free parameters of the conjecture substitution.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Var {
    Z(u8, u8),
    P(u8),
    Q(u8),
    X(u8),
    Aux(u8),
}

/// Parameterization variables s, t, a, b (conjecture substitution).
pub const AUX_S: Var = Var::Aux(0);
pub const AUX_T: Var = Var::Aux(1);
pub const AUX_A: Var = Var::Aux(2);
pub const AUX_B: Var = Var::Aux(3);
/// Scaling variable for homogeneity / circle-descent checks.
pub const AUX_U: Var = Var::Aux(4);
/// Formal curve parameter for the basis-oracle derivatives.
pub const AUX_EPS: Var = Var::Aux(5);

impl Var {
    pub fn is_z(&self) -> bool {
        matches!(self, Var::Z(_, _))
    }

    pub fn is_x(&self) -> bool {
        matches!(self, Var::X(_))
    }

    pub fn is_pq(&self) -> bool {
        matches!(self, Var::P(_) | Var::Q(_))
    }
}

impl fmt::Display for Var {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Var::Z(i, j) => write!(f, "z{i}{j}"),
            Var::P(j) => write!(f, "p{j}"),
            Var::Q(k) => write!(f, "q{k}"),
            Var::X(m) => write!(f, "x{m}"),
            Var::Aux(0) => write!(f, "s"),
            Var::Aux(1) => write!(f, "t"),
            Var::Aux(2) => write!(f, "a"),
            Var::Aux(3) => write!(f, "b"),
            Var::Aux(4) => write!(f, "u"),
            Var::Aux(5) => write!(f, "eps"),
            Var::Aux(n) => write!(f, "aux{n}"),
        }
    }
}

/// A sparse monomial: variables with positive exponents, sorted by `Var`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Default)]
pub struct Monomial {
    exps: Vec<(Var, u32)>,
}

impl Monomial {
    /// The empty monomial (constant 1).
    pub fn one() -> Self {
        Monomial { exps: Vec::new() }
    }

    pub fn var(v: Var) -> Self {
        Monomial { exps: vec![(v, 1)] }
    }

    pub fn var_pow(v: Var, e: u32) -> Self {
        if e == 0 {
            Monomial::one()
        } else {
            Monomial { exps: vec![(v, e)] }
        }
    }

    /// Builds from unsorted (var, exp) pairs, merging duplicates and
    /// dropping zero exponents.
    pub fn from_pairs(pairs: impl IntoIterator<Item = (Var, u32)>) -> Self {
        let mut exps: Vec<(Var, u32)> = Vec::new();
        for (v, e) in pairs {
            if e == 0 {
                continue;
            }
            exps.push((v, e));
        }
        exps.sort_by_key(|&(v, _)| v);
        let mut merged: Vec<(Var, u32)> = Vec::with_capacity(exps.len());
        for (v, e) in exps {
            match merged.last_mut() {
                Some((lv, le)) if *lv == v => *le += e,
                _ => merged.push((v, e)),
            }
        }
        Monomial { exps: merged }
    }

    pub fn is_one(&self) -> bool {
        self.exps.is_empty()
    }

    pub fn iter(&self) -> impl Iterator<Item = (Var, u32)> + '_ {
        self.exps.iter().copied()
    }

    pub fn exponent(&self, v: Var) -> u32 {
        self.exps
            .iter()
            .find(|&&(w, _)| w == v)
            .map(|&(_, e)| e)
            .unwrap_or(0)
    }

    pub fn total_degree(&self) -> u32 {
        self.exps.iter().map(|&(_, e)| e).sum()
    }

    pub fn degree_where(&self, pred: impl Fn(Var) -> bool) -> u32 {
        self.exps
            .iter()
            .filter(|&&(v, _)| pred(v))
            .map(|&(_, e)| e)
            .sum()
    }

    pub fn mul(&self, other: &Monomial) -> Monomial {
        let mut out = Vec::with_capacity(self.exps.len() + other.exps.len());
        let (mut a, mut b) = (self.exps.iter().peekable(), other.exps.iter().peekable());
        loop {
            match (a.peek(), b.peek()) {
                (Some(&&(va, ea)), Some(&&(vb, eb))) => match va.cmp(&vb) {
                    Ordering::Less => {
                        out.push((va, ea));
                        a.next();
                    }
                    Ordering::Greater => {
                        out.push((vb, eb));
                        b.next();
                    }
                    Ordering::Equal => {
                        out.push((va, ea + eb));
                        a.next();
                        b.next();
                    }
                },
                (Some(&&p), None) => {
                    out.push(p);
                    a.next();
                }
                (None, Some(&&p)) => {
                    out.push(p);
                    b.next();
                }
                (None, None) => break,
            }
        }
        Monomial { exps: out }
    }

    /// Exact monomial quotient, `None` when `other` does not divide `self`.
    pub fn div(&self, other: &Monomial) -> Option<Monomial> {
        let mut out = Vec::with_capacity(self.exps.len());
        let mut b = other.exps.iter().peekable();
        for &(v, e) in &self.exps {
            let eb = match b.peek() {
                Some(&&(vb, eb)) if vb == v => {
                    b.next();
                    eb
                }
                _ => 0,
            };
            if eb > e {
                return None;
            }
            if e - eb > 0 {
                out.push((v, e - eb));
            }
        }
        if b.next().is_some() {
            return None; // divisor has a variable self lacks
        }
        Some(Monomial { exps: out })
    }

    /// Splits into (part matching `pred`, rest).
    pub fn split(&self, pred: impl Fn(Var) -> bool) -> (Monomial, Monomial) {
        let (inside, outside): (Vec<_>, Vec<_>) =
            self.exps.iter().copied().partition(|&(v, _)| pred(v));
        (Monomial { exps: inside }, Monomial { exps: outside })
    }
}

impl Ord for Monomial {
    /// Graded lexicographic: total degree first, then lex over the
    /// fixed variable order (greater exponent at the earliest
    /// differing variable wins).
    fn cmp(&self, other: &Self) -> Ordering {
        match self.total_degree().cmp(&other.total_degree()) {
            Ordering::Equal => {}
            ord => return ord,
        }
        let (mut a, mut b) = (self.exps.iter(), other.exps.iter());
        loop {
            match (a.next(), b.next()) {
                (Some(&(va, ea)), Some(&(vb, eb))) => match va.cmp(&vb) {
                    // self has a positive exponent at an earlier variable
                    Ordering::Less => return Ordering::Greater,
                    Ordering::Greater => return Ordering::Less,
                    Ordering::Equal => match ea.cmp(&eb) {
                        Ordering::Equal => {}
                        ord => return ord,
                    },
                },
                (Some(_), None) | (None, Some(_)) => {
                    // equal total degree rules this out
                    unreachable!("equal-degree monomials with mismatched support exhausted")
                }
                (None, None) => return Ordering::Equal,
            }
        }
    }
}

impl PartialOrd for Monomial {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Display for Monomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_one() {
            return write!(f, "1");
        }
        let mut first = true;
        for (v, e) in self.iter() {
            if !first {
                write!(f, "*")?;
            }
            first = false;
            if e == 1 {
                write!(f, "{v}")?;
            } else {
                write!(f, "{v}^{e}")?;
            }
        }
        Ok(())
    }
}
