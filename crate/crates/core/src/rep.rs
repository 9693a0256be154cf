//! The (n+1)-dimensional irreducible representation of SU(2) as a
//! matrix of polynomials in z11, z12, z21, z22.
//!
//! Column α lists the coefficients of
//!     (z11·X + z21·Y)^(n+1-α) · (z12·X + z22·Y)^(α-1)
//! in the monomial basis X^(n+1-j) Y^(j-1); entry (j,α) is the
//! coefficient of X^(n+1-j) Y^(j-1). Indices are 1-based. No
//! unitarizing row factors are applied, matching the convention in
//! which the n = 2 matrix has (2,1) entry 2·z11·z21.

use crate::error::VerifyError;
use crate::gauss::GaussRat;
use crate::poly::Poly;
use crate::var::Var;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RepMatrix {
    pub n: usize,
    /// (n+1)×(n+1), row-major, entry (j,α) at `entries[j-1][α-1]`.
    pub entries: Vec<Vec<Poly>>,
}

impl RepMatrix {
    pub fn dim(&self) -> usize {
        self.n + 1
    }

    /// 1-based entry access.
    pub fn entry(&self, j: usize, alpha: usize) -> &Poly {
        &self.entries[j - 1][alpha - 1]
    }
}

/// The symmetric-power matrix of an arbitrary polynomial 2×2 matrix
/// `[[a, b], [c, d]]`. Used both to build π_n and to spot-check
/// multiplicativity on matrices with fresh-variable entries.
pub fn rep_of_matrix(n: usize, a: &Poly, b: &Poly, c: &Poly, d: &Poly) -> Vec<Vec<Poly>> {
    assert!(n >= 1);
    let dim = n + 1;
    let mut cols: Vec<Vec<Poly>> = Vec::with_capacity(dim);
    for alpha in 1..=dim {
        // (aX + cY)^(n+1-α) (bX + dY)^(α-1), expanded in X, Y
        let first = binomial_expand(a, c, n + 1 - alpha);
        let second = binomial_expand(b, d, alpha - 1);
        // convolve: coefficient of X^(n+1-j) Y^(j-1)
        let mut col = vec![Poly::zero(); dim];
        for (ya, pa) in first.iter().enumerate() {
            for (yb, pb) in second.iter().enumerate() {
                let j = ya + yb; // total Y-degree
                col[j] = col[j].add(&pa.mul(pb));
            }
        }
        cols.push(col);
    }
    // transpose columns into row-major entries
    (0..dim)
        .map(|j| (0..dim).map(|alpha| cols[alpha][j].clone()).collect())
        .collect()
}

/// Coefficients of (uX + vY)^k by Y-degree: index m holds C(k,m) u^(k-m) v^m.
fn binomial_expand(u: &Poly, v: &Poly, k: usize) -> Vec<Poly> {
    let mut out = Vec::with_capacity(k + 1);
    let mut binom = GaussRat::one();
    for m in 0..=k {
        out.push(u.pow((k - m) as u32).mul(&v.pow(m as u32)).scale(&binom));
        // C(k,m+1) = C(k,m)·(k-m)/(m+1)
        binom = &binom * &GaussRat::from_ratio((k - m) as i64, (m + 1) as i64);
    }
    out
}

/// π_n in the z-variables of the 2×2 group.
pub fn build_rep(n: usize) -> RepMatrix {
    let z = |i, j| Poly::var(Var::Z(i, j));
    RepMatrix {
        n,
        entries: rep_of_matrix(n, &z(1, 1), &z(1, 2), &z(2, 1), &z(2, 2)),
    }
}

/// Coefficient mode for the P and Q contractions.
#[derive(Debug, Clone)]
pub enum CoeffMode {
    /// Symbolic p_j / q_k variables.
    Symbolic,
    /// A concrete vector of length n+1.
    Concrete(Vec<GaussRat>),
    /// Arbitrary polynomial coefficients (parameterized families).
    Polys(Vec<Poly>),
}

/// P(z) = Σ_j p_j π^n_{jα} and Q(z) = Σ_k q_k π^n_{kβ}.
pub fn build_p_q(
    n: usize,
    p_mode: &CoeffMode,
    q_mode: &CoeffMode,
    alpha: usize,
    beta: usize,
) -> Result<(Poly, Poly), VerifyError> {
    let rep = build_rep(n);
    let p = contract_column(&rep, p_mode, alpha, |j| Var::P(j as u8))?;
    let q = contract_column(&rep, q_mode, beta, |k| Var::Q(k as u8))?;
    Ok((p, q))
}

pub fn contract_column(
    rep: &RepMatrix,
    mode: &CoeffMode,
    col: usize,
    sym: impl Fn(usize) -> Var,
) -> Result<Poly, VerifyError> {
    let dim = rep.dim();
    if col < 1 || col > dim {
        return Err(VerifyError::BadIndex(format!(
            "column {col} outside 1..={dim}"
        )));
    }
    let mut out = Poly::zero();
    for j in 1..=dim {
        let coeff = match mode {
            CoeffMode::Symbolic => Poly::var(sym(j)),
            CoeffMode::Concrete(v) => {
                if v.len() != dim {
                    return Err(VerifyError::BadIndex(format!(
                        "coefficient vector has length {}, need {dim}",
                        v.len()
                    )));
                }
                Poly::constant(v[j - 1].clone())
            }
            CoeffMode::Polys(v) => {
                if v.len() != dim {
                    return Err(VerifyError::BadIndex(format!(
                        "coefficient vector has length {}, need {dim}",
                        v.len()
                    )));
                }
                v[j - 1].clone()
            }
        };
        out = out.add(&coeff.mul(rep.entry(j, col)));
    }
    Ok(out)
}

/// Product of two polynomial matrices.
pub fn mat_mul_poly(a: &[Vec<Poly>], b: &[Vec<Poly>]) -> Vec<Vec<Poly>> {
    let n = a.len();
    (0..n)
        .map(|i| {
            (0..n)
                .map(|j| {
                    let mut s = Poly::zero();
                    for k in 0..n {
                        s = s.add(&a[i][k].mul(&b[k][j]));
                    }
                    s
                })
                .collect()
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn z(i: u8, j: u8) -> Poly {
        Poly::var(Var::Z(i, j))
    }

    #[test]
    fn pi1_is_standard_matrix() {
        let rep = build_rep(1);
        assert_eq!(*rep.entry(1, 1), z(1, 1));
        assert_eq!(*rep.entry(1, 2), z(1, 2));
        assert_eq!(*rep.entry(2, 1), z(2, 1));
        assert_eq!(*rep.entry(2, 2), z(2, 2));
    }

    #[test]
    fn pi2_known_entries() {
        let rep = build_rep(2);
        assert_eq!(
            *rep.entry(2, 1),
            z(1, 1).mul(&z(2, 1)).scale(&GaussRat::from_int(2))
        );
        assert_eq!(
            *rep.entry(2, 2),
            z(1, 1).mul(&z(2, 2)).add(&z(1, 2).mul(&z(2, 1)))
        );
    }

    #[test]
    fn pi3_entry_3_2() {
        // z21 (2 z11 z22 + z12 z21)
        let rep = build_rep(3);
        let expect = z(2, 1).mul(
            &z(1, 1)
                .mul(&z(2, 2))
                .scale(&GaussRat::from_int(2))
                .add(&z(1, 2).mul(&z(2, 1))),
        );
        assert_eq!(*rep.entry(3, 2), expect);
    }

    #[test]
    fn pi4_entry_3_3() {
        // z11² z22² + 4 z11 z12 z21 z22 + z12² z21²
        let rep = build_rep(4);
        let expect = z(1, 1)
            .pow(2)
            .mul(&z(2, 2).pow(2))
            .add(
                &z(1, 1)
                    .mul(&z(1, 2))
                    .mul(&z(2, 1))
                    .mul(&z(2, 2))
                    .scale(&GaussRat::from_int(4)),
            )
            .add(&z(1, 2).pow(2).mul(&z(2, 1).pow(2)));
        assert_eq!(*rep.entry(3, 3), expect);
    }

    #[test]
    fn entries_homogeneous_of_degree_n() {
        for n in 1..=5 {
            let rep = build_rep(n);
            for j in 1..=rep.dim() {
                for alpha in 1..=rep.dim() {
                    let e = rep.entry(j, alpha);
                    for (m, _) in e.terms() {
                        assert_eq!(m.total_degree(), n as u32);
                    }
                }
            }
        }
    }

    #[test]
    fn rep_of_identity_is_identity() {
        for n in 1..=4 {
            let m = rep_of_matrix(n, &Poly::one(), &Poly::zero(), &Poly::zero(), &Poly::one());
            for (i, row) in m.iter().enumerate() {
                for (j, e) in row.iter().enumerate() {
                    if i == j {
                        assert_eq!(*e, Poly::one());
                    } else {
                        assert!(e.is_zero());
                    }
                }
            }
        }
    }

    #[test]
    fn multiplicative_on_symbolic_matrices() {
        // A uses z11,z12,z21,z22; B uses fresh variables z33,z34,z43,z44
        let (a, b, c, d) = (z(1, 1), z(1, 2), z(2, 1), z(2, 2));
        let (e, f, g, h) = (z(3, 3), z(3, 4), z(4, 3), z(4, 4));
        for n in 2..=3 {
            let ra = rep_of_matrix(n, &a, &b, &c, &d);
            let rb = rep_of_matrix(n, &e, &f, &g, &h);
            // AB = [[ae+bg, af+bh], [ce+dg, cf+dh]]
            let rab = rep_of_matrix(
                n,
                &a.mul(&e).add(&b.mul(&g)),
                &a.mul(&f).add(&b.mul(&h)),
                &c.mul(&e).add(&d.mul(&g)),
                &c.mul(&f).add(&d.mul(&h)),
            );
            assert_eq!(mat_mul_poly(&ra, &rb), rab);
        }
    }

    #[test]
    fn symbolic_p_q_columns() {
        // n=2, α=1, symbolic: p1 z11² + 2 p2 z11 z21 + p3 z21²
        let (p, _) = build_p_q(2, &CoeffMode::Symbolic, &CoeffMode::Symbolic, 1, 1).unwrap();
        let expect = Poly::var(Var::P(1))
            .mul(&z(1, 1).pow(2))
            .add(
                &Poly::var(Var::P(2))
                    .mul(&z(1, 1))
                    .mul(&z(2, 1))
                    .scale(&GaussRat::from_int(2)),
            )
            .add(&Poly::var(Var::P(3)).mul(&z(2, 1).pow(2)));
        assert_eq!(p, expect);

        // n=1, α=2, p=(1,0) → z12
        let (p, _) = build_p_q(
            1,
            &CoeffMode::Concrete(vec![GaussRat::one(), GaussRat::zero()]),
            &CoeffMode::Symbolic,
            2,
            1,
        )
        .unwrap();
        assert_eq!(p, z(1, 2));

        // n=3, β=1, symbolic: q1 z11³ + 3 q2 z11² z21 + 3 q3 z11 z21² + q4 z21³
        let (_, q) = build_p_q(3, &CoeffMode::Symbolic, &CoeffMode::Symbolic, 2, 1).unwrap();
        let expect = Poly::var(Var::Q(1))
            .mul(&z(1, 1).pow(3))
            .add(
                &Poly::var(Var::Q(2))
                    .mul(&z(1, 1).pow(2))
                    .mul(&z(2, 1))
                    .scale(&GaussRat::from_int(3)),
            )
            .add(
                &Poly::var(Var::Q(3))
                    .mul(&z(1, 1))
                    .mul(&z(2, 1).pow(2))
                    .scale(&GaussRat::from_int(3)),
            )
            .add(&Poly::var(Var::Q(4)).mul(&z(2, 1).pow(3)));
        assert_eq!(q, expect);

        // index out of range
        assert!(build_p_q(2, &CoeffMode::Symbolic, &CoeffMode::Symbolic, 5, 1).is_err());
    }
}
