//! LaTeX rendering for certificates: z_{11}, p_1, \frac{..}{..},
//! matching the usual notation so output can be read against printed
//! formulas side by side.

use num_traits::{One, Signed, Zero};

use crate::gauss::GaussRat;
use crate::poly::Poly;
use crate::ratfn::RatFn;
use crate::var::{Monomial, Var};

pub fn latex_var(v: Var) -> String {
    match v {
        Var::Z(i, j) => format!("z_{{{i}{j}}}"),
        Var::P(j) => format!("p_{{{j}}}"),
        Var::Q(k) => format!("q_{{{k}}}"),
        Var::X(m) => format!("x_{{{m}}}"),
        other => other.to_string(),
    }
}

fn latex_rat(r: &num_rational::BigRational) -> String {
    if r.denom().is_one() {
        r.numer().to_string()
    } else if r.is_negative() {
        format!("-\\frac{{{}}}{{{}}}", -r.numer(), r.denom())
    } else {
        format!("\\frac{{{}}}{{{}}}", r.numer(), r.denom())
    }
}

pub fn latex_gauss(c: &GaussRat) -> String {
    if c.is_zero() {
        return "0".into();
    }
    if c.im.is_zero() {
        return latex_rat(&c.re);
    }
    if c.re.is_zero() {
        if c.im.is_one() {
            return "i".into();
        }
        if (-c.im.clone()).is_one() {
            return "-i".into();
        }
        return format!("{} i", latex_rat(&c.im));
    }
    let im = if c.im.is_one() {
        "+ i".into()
    } else if (-c.im.clone()).is_one() {
        "- i".into()
    } else if c.im.is_negative() {
        format!("- {} i", latex_rat(&(-c.im.clone())))
    } else {
        format!("+ {} i", latex_rat(&c.im))
    };
    format!("\\left({} {}\\right)", latex_rat(&c.re), im)
}

pub fn latex_monomial(m: &Monomial) -> String {
    if m.is_one() {
        return "1".into();
    }
    m.iter()
        .map(|(v, e)| {
            if e == 1 {
                latex_var(v)
            } else {
                format!("{}^{{{e}}}", latex_var(v))
            }
        })
        .collect::<Vec<_>>()
        .join("")
}

pub fn latex_poly(p: &Poly) -> String {
    if p.is_zero() {
        return "0".into();
    }
    let mut out = String::new();
    let mut first = true;
    for (m, c) in p.terms().rev() {
        let negative_real = c.im.is_zero() && c.re.is_negative();
        let mag = if negative_real { -c } else { c.clone() };
        if first {
            if negative_real {
                out.push('-');
            }
            first = false;
        } else if negative_real {
            out.push_str(" - ");
        } else {
            out.push_str(" + ");
        }
        if m.is_one() {
            out.push_str(&latex_gauss(&mag));
        } else if mag.is_one() {
            out.push_str(&latex_monomial(m));
        } else {
            out.push_str(&latex_gauss(&mag));
            out.push_str(&latex_monomial(m));
        }
    }
    out
}

pub fn latex_ratfn(f: &RatFn) -> String {
    if let Some(p) = f.as_poly() {
        return latex_poly(&p);
    }
    format!(
        "\\frac{{{}}}{{{}}}",
        latex_poly(&f.num),
        latex_poly(&f.den)
    )
}

/// A representation matrix with π-style entries, as a bmatrix.
pub fn latex_matrix(entries: &[Vec<Poly>]) -> String {
    let rows: Vec<String> = entries
        .iter()
        .map(|row| {
            row.iter()
                .map(latex_poly)
                .collect::<Vec<_>>()
                .join(" & ")
        })
        .collect();
    format!("\\begin{{bmatrix}}\n{}\n\\end{{bmatrix}}", rows.join(" \\\\\n"))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn poly_rendering() {
        let p = crate::parse::parse_poly("2*z11*z21 - z12^2 + 1/2*i").unwrap();
        let s = latex_poly(&p);
        assert!(s.contains("z_{11}"), "{s}");
        assert!(s.contains("z_{12}^{2}"), "{s}");
        assert!(s.contains("\\frac{1}{2} i"), "{s}");
    }

    #[test]
    fn ratfn_rendering() {
        let f = crate::parse::parse_ratfn("z11/(q1*z21)").unwrap();
        let s = latex_ratfn(&f);
        assert!(s.starts_with("\\frac{"), "{s}");
        assert!(s.contains("q_{1}"), "{s}");
    }
}
