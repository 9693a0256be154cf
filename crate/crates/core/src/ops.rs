//! The tension field τ and conformality operator κ on polynomials in
//! the matrix coefficients of U(n), and their extension to unreduced
//! rational functions.
//!
//! τ on a polynomial is computed from first and second partials with
//! the generator rules
//!     τ(z_jα)         = -n z_jα
//!     κ(z_jα, z_kβ)  = -z_kα z_jβ
//! so that
//!     τ(f) = -Σ ∂²f/∂z_ij ∂z_kl · z_kj z_il  -  n Σ ∂f/∂z_ij · z_ij.
//! Variables outside the Z block (p, q, x and parameters) are inert.

use crate::error::OpError;
use crate::gauss::GaussRat;
use crate::poly::Poly;
use crate::ratfn::RatFn;
use crate::var::Var;

/// Ambient group size for the operators: the n of U(n). All SU(2) work
/// uses n = 2, but the rules are kept general.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct GroupContext {
    pub n_group: usize,
}

impl GroupContext {
    pub fn new(n_group: usize) -> Self {
        GroupContext { n_group }
    }

    pub fn u2() -> Self {
        GroupContext { n_group: 2 }
    }

    fn check_indices(&self, f: &Poly) -> Result<(), OpError> {
        for v in f.vars() {
            if let Var::Z(i, j) = v {
                if i as usize > self.n_group || j as usize > self.n_group || i == 0 || j == 0 {
                    return Err(OpError::IndexOutOfRange(v.to_string(), self.n_group));
                }
            }
        }
        Ok(())
    }

    /// All z-variables of the ambient group.
    pub fn z_vars(&self) -> Vec<Var> {
        let n = self.n_group as u8;
        (1..=n)
            .flat_map(|i| (1..=n).map(move |j| Var::Z(i, j)))
            .collect()
    }

    /// τ of a polynomial.
    pub fn tau(&self, f: &Poly) -> Result<Poly, OpError> {
        self.check_indices(f)?;
        let mut out = Poly::zero();
        let vars = self.z_vars();
        // second-order part: -Σ f_{z_ij z_kl} z_kj z_il
        for &vij in &vars {
            let fij = f.partial(vij);
            if fij.is_zero() {
                continue;
            }
            let Var::Z(i, j) = vij else { unreachable!() };
            for &vkl in &vars {
                let fijkl = fij.partial(vkl);
                if fijkl.is_zero() {
                    continue;
                }
                let Var::Z(k, l) = vkl else { unreachable!() };
                let gen = Poly::var(Var::Z(k, j)).mul(&Poly::var(Var::Z(i, l)));
                out = out.sub(&fijkl.mul(&gen));
            }
            // first-order part: -n f_{z_ij} z_ij
            out = out.sub(
                &fij.mul(&Poly::var(vij))
                    .scale(&GaussRat::from_int(self.n_group as i64)),
            );
        }
        Ok(out)
    }

    /// κ of two polynomials; symmetric bilinear.
    pub fn kappa(&self, f: &Poly, h: &Poly) -> Result<Poly, OpError> {
        self.check_indices(f)?;
        self.check_indices(h)?;
        let mut out = Poly::zero();
        let vars = self.z_vars();
        for &vij in &vars {
            let fij = f.partial(vij);
            if fij.is_zero() {
                continue;
            }
            let Var::Z(i, j) = vij else { unreachable!() };
            for &vkl in &vars {
                let hkl = h.partial(vkl);
                if hkl.is_zero() {
                    continue;
                }
                let Var::Z(k, l) = vkl else { unreachable!() };
                let gen = Poly::var(Var::Z(k, j)).mul(&Poly::var(Var::Z(i, l)));
                out = out.sub(&fij.mul(&hkl).mul(&gen));
            }
        }
        Ok(out)
    }

    /// τ of an unreduced quotient P/Q:
    ///     Q³ τ(f) = Q² τ(P) - 2Q κ(P,Q) + 2P κ(Q,Q) - PQ τ(Q).
    /// The result keeps the explicit Q³ denominator.
    pub fn tau_ratfn(&self, f: &RatFn) -> Result<RatFn, OpError> {
        let (p, q) = (&f.num, &f.den);
        let num = q
            .pow(2)
            .mul(&self.tau(p)?)
            .sub(&q.mul(&self.kappa(p, q)?).scale(&GaussRat::from_int(2)))
            .add(&p.mul(&self.kappa(q, q)?).scale(&GaussRat::from_int(2)))
            .sub(&p.mul(q).mul(&self.tau(q)?));
        Ok(RatFn {
            num,
            den: q.pow(3),
        })
    }

    /// τ of a quotient with common Q-powers stripped afterwards.
    /// Equal to `tau_ratfn` under cross-multiplication; much smaller.
    pub fn tau_ratfn_reduced(&self, f: &RatFn) -> Result<RatFn, OpError> {
        let base = f.den.clone();
        Ok(self.tau_ratfn(f)?.reduce_by(&base))
    }

    /// The bitension field τ²(f) = τ(τ(f)). Intermediate results are
    /// reduced by exact division with powers of the original
    /// denominator, which leaves the value unchanged.
    pub fn bitension(&self, f: &RatFn) -> Result<RatFn, OpError> {
        let base = f.den.clone();
        let t1 = self.tau_ratfn(f)?.reduce_by(&base);
        Ok(self.tau_ratfn(&t1)?.reduce_by(&base))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn z(i: u8, j: u8) -> Poly {
        Poly::var(Var::Z(i, j))
    }

    #[test]
    fn generator_rule_tau() {
        let ctx = GroupContext::u2();
        assert_eq!(
            ctx.tau(&z(1, 1)).unwrap(),
            z(1, 1).scale(&GaussRat::from_int(-2))
        );
    }

    #[test]
    fn tau_of_pi2_middle_entry() {
        // f = z11 z22 + z12 z21 is the (2,2) entry of the 3-dimensional
        // representation; τ(f) = -6 f.
        let ctx = GroupContext::u2();
        let f = z(1, 1).mul(&z(2, 2)).add(&z(1, 2).mul(&z(2, 1)));
        assert_eq!(ctx.tau(&f).unwrap(), f.scale(&GaussRat::from_int(-6)));
    }

    #[test]
    fn tau_of_constant_is_zero() {
        let ctx = GroupContext::u2();
        assert!(ctx.tau(&Poly::from_int(5)).unwrap().is_zero());
    }

    #[test]
    fn tau_index_out_of_range() {
        let ctx = GroupContext::u2();
        assert!(ctx.tau(&z(3, 1)).is_err());
    }

    #[test]
    fn generator_rule_kappa() {
        let ctx = GroupContext::u2();
        // κ(z11, z11) = -z11²
        assert_eq!(ctx.kappa(&z(1, 1), &z(1, 1)).unwrap(), z(1, 1).pow(2).neg());
        // κ(z11, z22) = -z21 z12
        assert_eq!(
            ctx.kappa(&z(1, 1), &z(2, 2)).unwrap(),
            z(2, 1).mul(&z(1, 2)).neg()
        );
        // κ(f, 1) = 0
        assert!(ctx
            .kappa(&z(1, 1).mul(&z(2, 2)), &Poly::one())
            .unwrap()
            .is_zero());
    }

    #[test]
    fn tau_ratfn_polynomial_case() {
        let ctx = GroupContext::u2();
        let f = RatFn::from_poly(z(1, 1).mul(&z(1, 2)));
        let t = ctx.tau_ratfn(&f).unwrap();
        assert!(t.equiv(&RatFn::from_poly(ctx.tau(&f.num).unwrap())));
    }

    #[test]
    fn bitension_of_harmonic_is_zero() {
        let ctx = GroupContext::u2();
        // p1 z11 + p2 z21 over q1 z11 + q2 z21 (same column) is harmonic
        let p = Poly::var(Var::P(1))
            .mul(&z(1, 1))
            .add(&Poly::var(Var::P(2)).mul(&z(2, 1)));
        let q = Poly::var(Var::Q(1))
            .mul(&z(1, 1))
            .add(&Poly::var(Var::Q(2)).mul(&z(2, 1)));
        let f = RatFn::new(p, q).unwrap();
        let t = ctx.tau_ratfn(&f).unwrap();
        assert!(t.is_zero());
        assert!(ctx.bitension(&f).unwrap().is_zero());
    }

    #[test]
    fn bitension_of_constant_is_zero() {
        let ctx = GroupContext::u2();
        let f = RatFn::from_poly(Poly::from_int(3));
        assert!(ctx.bitension(&f).unwrap().is_zero());
    }
}
