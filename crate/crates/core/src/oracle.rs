//! Independent route to τ and κ through the orthonormal basis of u(n):
//!     τ(f) = Σ_Z Z²(f) - [Z,Zᵗ]_g(f),   κ(f,h) = Σ_Z Z(f) Z(h),
//! with Z(f)(p) = d/ds f(p·exp(sZ))|_{s=0}.
//!
//! The derivatives are taken symbolically: substitute
//! z ↦ z(I + εM + ε²M²/2) for a formal parameter ε and read off the
//! ε-coefficients, which is exact for first and second derivatives at
//! ε = 0. Basis elements are stored as c·M with M Gaussian-integral so
//! that all products of two derivative factors stay rational; the 1/√2
//! normalization only ever appears squared.
//!
//! This route is a test oracle for the partial-derivative engine in
//! `ops`; it shares no code with it past the polynomial layer.

use std::collections::BTreeMap;

use crate::error::OpError;
use crate::gauss::GaussRat;
use crate::poly::Poly;
use crate::var::{Monomial, Var, AUX_EPS};

/// One element c·M of the orthonormal basis of u(n): `matrix` is M
/// (Gaussian-integral entries) and `norm_sq` is c².
#[derive(Debug, Clone)]
pub struct LieBasisElement {
    pub matrix: Vec<Vec<GaussRat>>,
    pub norm_sq: GaussRat,
}

fn zero_matrix(n: usize) -> Vec<Vec<GaussRat>> {
    vec![vec![GaussRat::zero(); n]; n]
}

fn mat_mul(a: &[Vec<GaussRat>], b: &[Vec<GaussRat>]) -> Vec<Vec<GaussRat>> {
    let n = a.len();
    let mut out = zero_matrix(n);
    for i in 0..n {
        for j in 0..n {
            let mut s = GaussRat::zero();
            for k in 0..n {
                s = &s + &(&a[i][k] * &b[k][j]);
            }
            out[i][j] = s;
        }
    }
    out
}

fn mat_transpose(a: &[Vec<GaussRat>]) -> Vec<Vec<GaussRat>> {
    let n = a.len();
    let mut out = zero_matrix(n);
    for i in 0..n {
        for j in 0..n {
            out[i][j] = a[j][i].clone();
        }
    }
    out
}

fn mat_is_zero(a: &[Vec<GaussRat>]) -> bool {
    a.iter().all(|row| row.iter().all(|c| c.is_zero()))
}

fn mat_sub(a: &[Vec<GaussRat>], b: &[Vec<GaussRat>]) -> Vec<Vec<GaussRat>> {
    let n = a.len();
    let mut out = zero_matrix(n);
    for i in 0..n {
        for j in 0..n {
            out[i][j] = &a[i][j] - &b[i][j];
        }
    }
    out
}

/// Re trace(A B*) as an exact rational, for the orthonormality check.
fn re_trace_ab_star(a: &[Vec<GaussRat>], b: &[Vec<GaussRat>]) -> GaussRat {
    let n = a.len();
    let mut s = GaussRat::zero();
    for i in 0..n {
        for j in 0..n {
            s = &s + &(&a[i][j] * &b[i][j].conj());
        }
    }
    GaussRat::new(s.re, num_rational::BigRational::from_integer(0.into()))
}

/// The canonical orthonormal basis {Y_rs, iX_rs | r<s} ∪ {iD_t} of
/// u(n), stored unnormalized with the squared norm factor split off.
pub fn u_n_basis(n: usize) -> Vec<LieBasisElement> {
    let mut out = Vec::new();
    let half = GaussRat::from_ratio(1, 2);
    for r in 0..n {
        for s in (r + 1)..n {
            // Y_rs = (E_rs - E_sr)/√2
            let mut m = zero_matrix(n);
            m[r][s] = GaussRat::one();
            m[s][r] = -&GaussRat::one();
            out.push(LieBasisElement {
                matrix: m,
                norm_sq: half.clone(),
            });
            // iX_rs = i(E_rs + E_sr)/√2
            let mut m = zero_matrix(n);
            m[r][s] = GaussRat::i();
            m[s][r] = GaussRat::i();
            out.push(LieBasisElement {
                matrix: m,
                norm_sq: half.clone(),
            });
        }
    }
    for t in 0..n {
        // iD_t = iE_tt
        let mut m = zero_matrix(n);
        m[t][t] = GaussRat::i();
        out.push(LieBasisElement {
            matrix: m,
            norm_sq: GaussRat::one(),
        });
    }
    out
}

/// Checks the structural facts the oracle relies on, exactly:
/// each element is skew-Hermitian, the basis is orthonormal for
/// g(Z,W) = Re trace(ZW*), and every bracket [Z,Zᵗ] vanishes (so the
/// connection term of the basis formula drops out).
pub fn assert_basis_facts(n: usize) {
    let basis = u_n_basis(n);
    assert_eq!(basis.len(), n * n, "u(n) has dimension n²");
    for (idx, el) in basis.iter().enumerate() {
        let m = &el.matrix;
        // skew-Hermitian: M + M^* = 0
        for i in 0..n {
            for j in 0..n {
                assert!(
                    (&m[i][j] + &m[j][i].conj()).is_zero(),
                    "element {idx} is not skew-Hermitian"
                );
            }
        }
        // [M, Mᵗ] = 0
        let mt = mat_transpose(m);
        assert!(
            mat_is_zero(&mat_sub(&mat_mul(m, &mt), &mat_mul(&mt, m))),
            "element {idx} has nonvanishing [Z,Zᵗ]"
        );
        // unit norm: c² Re tr(M M*) = 1
        let g = &el.norm_sq * &re_trace_ab_star(m, m);
        assert!(g.is_one(), "element {idx} is not unit norm");
    }
    for i in 0..basis.len() {
        for j in (i + 1)..basis.len() {
            assert!(
                re_trace_ab_star(&basis[i].matrix, &basis[j].matrix).is_zero(),
                "elements {i},{j} are not orthogonal"
            );
        }
    }
}

/// The substitution z ↦ z(I + εM + ε²M²/2) as a map on z-variables.
fn flow_map(n: usize, m: &[Vec<GaussRat>]) -> BTreeMap<Var, Poly> {
    let m2 = mat_mul(m, m);
    let half = GaussRat::from_ratio(1, 2);
    let eps = Monomial::var(AUX_EPS);
    let eps2 = Monomial::var_pow(AUX_EPS, 2);
    let mut map = BTreeMap::new();
    for j in 1..=n {
        for alpha in 1..=n {
            // z_jα + ε Σ_β z_jβ M_βα + ε²/2 Σ_β z_jβ (M²)_βα
            let mut img = Poly::var(Var::Z(j as u8, alpha as u8));
            for beta in 1..=n {
                let zjb = Monomial::var(Var::Z(j as u8, beta as u8));
                let c1 = m[beta - 1][alpha - 1].clone();
                if !c1.is_zero() {
                    img = img.add(&Poly::term(zjb.mul(&eps), c1));
                }
                let c2 = &m2[beta - 1][alpha - 1] * &half;
                if !c2.is_zero() {
                    img = img.add(&Poly::term(zjb.mul(&eps2), c2));
                }
            }
            map.insert(Var::Z(j as u8, alpha as u8), img);
        }
    }
    map
}

/// The ε¹ and ε² coefficients of f(z(I + εM + ε²M²/2)).
fn flow_coeffs(n: usize, f: &Poly, m: &[Vec<GaussRat>]) -> (Poly, Poly) {
    let g = f.substitute_poly(&flow_map(n, m));
    let by_eps = g.collect_by(|v| v == AUX_EPS);
    let c1 = by_eps
        .get(&Monomial::var(AUX_EPS))
        .cloned()
        .unwrap_or_else(Poly::zero);
    let c2 = by_eps
        .get(&Monomial::var_pow(AUX_EPS, 2))
        .cloned()
        .unwrap_or_else(Poly::zero);
    (c1, c2)
}

fn check_indices(n: usize, f: &Poly) -> Result<(), OpError> {
    for v in f.vars() {
        if let Var::Z(i, j) = v {
            if i as usize > n || j as usize > n || i == 0 || j == 0 {
                return Err(OpError::IndexOutOfRange(v.to_string(), n));
            }
        }
    }
    Ok(())
}

/// τ(f) summed over the orthonormal basis. The bracket term is absent
/// because `assert_basis_facts` proves it vanishes element by element.
pub fn tau_oracle(n: usize, f: &Poly) -> Result<Poly, OpError> {
    check_indices(n, f)?;
    assert_basis_facts(n);
    let mut out = Poly::zero();
    for el in u_n_basis(n) {
        let (_, c2) = flow_coeffs(n, f, &el.matrix);
        // Z²(f) = c² · 2 · (ε² coefficient)
        out = out.add(&c2.scale(&(&el.norm_sq * &GaussRat::from_int(2))));
    }
    Ok(out)
}

/// κ(f,h) = Σ Z(f) Z(h) over the orthonormal basis.
pub fn kappa_oracle(n: usize, f: &Poly, h: &Poly) -> Result<Poly, OpError> {
    check_indices(n, f)?;
    check_indices(n, h)?;
    assert_basis_facts(n);
    let mut out = Poly::zero();
    for el in u_n_basis(n) {
        let (df, _) = flow_coeffs(n, f, &el.matrix);
        let (dh, _) = flow_coeffs(n, h, &el.matrix);
        out = out.add(&df.mul(&dh).scale(&el.norm_sq));
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ops::GroupContext;

    fn z(i: u8, j: u8) -> Poly {
        Poly::var(Var::Z(i, j))
    }

    #[test]
    fn basis_facts_hold() {
        assert_basis_facts(2);
        assert_basis_facts(3);
    }

    #[test]
    fn oracle_matches_generator_rules() {
        assert_eq!(
            tau_oracle(2, &z(1, 1)).unwrap(),
            z(1, 1).scale(&GaussRat::from_int(-2))
        );
        assert_eq!(
            kappa_oracle(2, &z(1, 1), &z(1, 1)).unwrap(),
            z(1, 1).pow(2).neg()
        );
        assert!(kappa_oracle(2, &z(1, 1).pow(3), &Poly::one())
            .unwrap()
            .is_zero());
    }

    #[test]
    fn oracle_matches_engine_on_pi2_entry() {
        let ctx = GroupContext::u2();
        let f = z(1, 1).mul(&z(2, 2)).add(&z(1, 2).mul(&z(2, 1)));
        assert_eq!(tau_oracle(2, &f).unwrap(), ctx.tau(&f).unwrap());
        assert_eq!(
            tau_oracle(2, &f).unwrap(),
            f.scale(&GaussRat::from_int(-6))
        );
    }

    #[test]
    fn oracle_matches_engine_on_mixed_poly() {
        let ctx = GroupContext::u2();
        let f = z(1, 1)
            .pow(2)
            .mul(&z(2, 1))
            .add(&z(1, 2).mul(&z(2, 2)).scale(&GaussRat::from_ratio(3, 7)))
            .add(&Poly::var(Var::P(1)).mul(&z(2, 1)));
        let h = z(2, 2).pow(3).sub(&z(1, 1).mul(&z(1, 2)));
        assert_eq!(tau_oracle(2, &f).unwrap(), ctx.tau(&f).unwrap());
        assert_eq!(
            kappa_oracle(2, &f, &h).unwrap(),
            ctx.kappa(&f, &h).unwrap()
        );
    }
}
