//! The flat-space realizations: S³ ⊂ R⁴ with the Laplace operator and
//! H³ inside Minkowski R⁴₁ with the d'Alembert wave operator, plus the
//! radial-lift equality checks and the duality substitution
//! x₀ ↦ -i·x₀. Together these give an end-to-end validation path that
//! is independent of the group-side operators.

use std::collections::BTreeMap;

use crate::error::PolyError;
use crate::gauss::GaussRat;
use crate::poly::Poly;
use crate::ratfn::RatFn;
use crate::var::Var;

/// A formal second-order operator Σ sign_m ∂²/∂x_m².
#[derive(Debug, Clone)]
pub struct FlatOperator {
    pub signature: Vec<(Var, i8)>,
}

impl FlatOperator {
    /// The Laplace operator on R⁴ in the sphere-side coordinates x1..x4.
    pub fn euclidean() -> Self {
        FlatOperator {
            signature: (1..=4).map(|m| (Var::X(m), 1)).collect(),
        }
    }

    /// The wave operator on Minkowski R⁴₁ in coordinates x0..x3,
    /// signature (-,+,+,+).
    pub fn minkowski() -> Self {
        let mut signature = vec![(Var::X(0), -1i8)];
        signature.extend((1..=3).map(|m| (Var::X(m), 1)));
        FlatOperator { signature }
    }

    /// Applies the operator to an unreduced quotient. All four
    /// second-derivative terms share the structural denominator
    /// den⁴, so the sum stays on one denominator; common den-factors
    /// are stripped afterwards by exact division.
    pub fn apply(&self, f: &RatFn) -> RatFn {
        let den = &f.den;
        let den2 = den.pow(2);
        let den4 = den2.pow(2);
        let mut num = Poly::zero();
        for &(v, sign) in &self.signature {
            let d1 = f.partial(v); // num over den²
            let d2 = RatFn {
                num: d1.num.partial(v).mul(&den2).sub(&d1.num.mul(&den2.partial(v))),
                den: den4.clone(),
            };
            num = if sign > 0 {
                num.add(&d2.num)
            } else {
                num.sub(&d2.num)
            };
        }
        RatFn { num, den: den4 }.reduce_by(den)
    }
}

/// |x|² = x1² + x2² + x3² + x4² (sphere-side coordinates).
pub fn euclid_norm_sq() -> Poly {
    (1..=4).fold(Poly::zero(), |acc, m| acc.add(&Poly::var(Var::X(m)).pow(2)))
}

/// The Lorentz form (x,x)_L = -x0² + x1² + x2² + x3².
pub fn lorentz_form() -> Poly {
    let mut out = Poly::var(Var::X(0)).pow(2).neg();
    for m in 1..=3 {
        out = out.add(&Poly::var(Var::X(m)).pow(2));
    }
    out
}

/// The identification of SU(2) with the unit quaternions:
/// z11 ↦ x1+ix2, z12 ↦ x3+ix4, z21 ↦ -x3+ix4, z22 ↦ x1-ix2.
pub fn embed_map() -> BTreeMap<Var, Poly> {
    let x = |m| Poly::var(Var::X(m));
    let i = GaussRat::i();
    let mut map = BTreeMap::new();
    map.insert(Var::Z(1, 1), x(1).add(&x(2).scale(&i)));
    map.insert(Var::Z(1, 2), x(3).add(&x(4).scale(&i)));
    map.insert(Var::Z(2, 1), x(3).neg().add(&x(4).scale(&i)));
    map.insert(Var::Z(2, 2), x(1).sub(&x(2).scale(&i)));
    map
}

/// Rewrites a rational function in 2×2 z-variables as a function of
/// the Euclidean coordinates x1..x4.
pub fn embed_su2(f: &RatFn) -> Result<RatFn, PolyError> {
    f.substitute_poly(&embed_map())
}

/// The duality substitution. Sphere-side functions (coordinates
/// x1..x4) are first re-indexed to x0..x3 and then x0 ↦ -i·x0;
/// a function already in x0..x3 only receives x0 ↦ -i·x0, so applying
/// the map twice amounts to x0 ↦ -x0.
pub fn dualize(f: &RatFn) -> Result<RatFn, PolyError> {
    let uses_x4 = f
        .num
        .vars()
        .into_iter()
        .chain(f.den.vars())
        .any(|v| v == Var::X(4));
    let minus_i_x0 = Poly::var(Var::X(0)).scale(&-&GaussRat::i());
    let mut map = BTreeMap::new();
    if uses_x4 {
        map.insert(Var::X(1), minus_i_x0);
        map.insert(Var::X(2), Poly::var(Var::X(1)));
        map.insert(Var::X(3), Poly::var(Var::X(2)));
        map.insert(Var::X(4), Poly::var(Var::X(3)));
    } else {
        map.insert(Var::X(0), minus_i_x0);
    }
    f.substitute_poly(&map)
}

/// Deterministic exact rational points on the upper hyperboloid
/// (x,x)_L = -1, x0 > 0: for u > v ≥ 1,
/// (x0, r) = ((u²+v²)/(u²-v²), 2uv/(u²-v²)) satisfies x0² - r² = 1,
/// and r is spread over (x1, x2) with a rational circle point.
pub fn hyperbolic_points(count: usize) -> Vec<[GaussRat; 4]> {
    let mut out = Vec::with_capacity(count);
    let mut u: i64 = 2;
    'outer: loop {
        for v in 1..u {
            let du = u * u - v * v;
            let x0 = GaussRat::from_ratio(u * u + v * v, du);
            let r = GaussRat::from_ratio(2 * u * v, du);
            // (c, d) on the unit circle spreads r over two slots
            for j in [1i64, 2] {
                let dc = j * j + 1;
                let c = GaussRat::from_ratio(2 * j, dc);
                let d = GaussRat::from_ratio(j * j - 1, dc);
                out.push([x0.clone(), &r * &c, &r * &d, GaussRat::zero()]);
                if out.len() >= count {
                    break 'outer;
                }
            }
        }
        u += 1;
    }
    out
}

pub fn x_point_map(x: &[GaussRat; 4], start_index: u8) -> BTreeMap<Var, GaussRat> {
    x.iter()
        .enumerate()
        .map(|(m, v)| (Var::X(start_index + m as u8), v.clone()))
        .collect()
}

/// Per-sample outcome of a lift equality check.
#[derive(Debug, Clone, serde::Serialize)]
pub struct LiftReport {
    pub x: Vec<String>,
    pub group_route: String,
    pub flat_route: String,
    pub equal: bool,
}

/// Compares τ(f) computed on the group with |x|²·Δ(f̂) at one exact
/// unit-norm sample. `tau_f` is the group-side tension field in
/// z-variables, `delta_fhat` the flat Laplacian of the embedded
/// function, `extra` binds non-z/x variables at both.
///
/// The metric g(Z, W) = Re tr(Z W*) restricted to the group is twice
/// the round metric of the unit sphere (|dz11|² + ... = 2|dx|² on the
/// tangent space), so the radial-projection identity carries the
/// constant conformal factor: 2 τ(f) = |x|² Δ f̂ at |x| = 1.
pub fn lift_check_sphere(
    tau_f: &RatFn,
    delta_fhat: &RatFn,
    x: &[GaussRat; 4],
    extra: &BTreeMap<Var, GaussRat>,
) -> Result<LiftReport, PolyError> {
    // |x|² = 1 at a unit sample, so the dilation factor drops out
    let mut zmap = crate::verify::su2_point_map(x);
    zmap.extend(extra.iter().map(|(k, v)| (*k, v.clone())));
    let group = tau_f.eval(&zmap)?;
    let mut xmap = x_point_map(x, 1);
    xmap.extend(extra.iter().map(|(k, v)| (*k, v.clone())));
    let flat = delta_fhat.eval(&xmap)?;
    let two = GaussRat::from_int(2);
    Ok(LiftReport {
        x: x.iter().map(|v| v.to_string()).collect(),
        group_route: group.to_string(),
        flat_route: flat.to_string(),
        equal: &two * &group == flat,
    })
}

/// The symbolic sphere-side bitension identity: |x|²Δ(|x|²Δ f̂) has
/// identically zero numerator. Returns the composed field.
pub fn sphere_bitension(fhat: &RatFn) -> RatFn {
    let delta = FlatOperator::euclidean();
    let inner = delta.apply(fhat).mul_poly(&euclid_norm_sq());
    delta.apply(&inner).mul_poly(&euclid_norm_sq())
}

/// The Minkowski-side composition -|x|_L² □(-|x|_L² □ f̂*).
pub fn hyperbolic_bitension(fstar: &RatFn) -> RatFn {
    let box_op = FlatOperator::minkowski();
    let l = lorentz_form();
    let inner = box_op.apply(fstar).mul_poly(&l).neg();
    box_op.apply(&inner).mul_poly(&l).neg()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::var::Monomial;

    fn x(m: u8) -> Poly {
        Poly::var(Var::X(m))
    }

    #[test]
    fn laplacian_of_norm_sq() {
        let f = RatFn::from_poly(euclid_norm_sq());
        let got = FlatOperator::euclidean().apply(&f);
        assert!(got.equiv(&RatFn::from_poly(Poly::from_int(8))));
    }

    #[test]
    fn wave_operator_of_x0_sq() {
        let f = RatFn::from_poly(x(0).pow(2));
        let got = FlatOperator::minkowski().apply(&f);
        assert!(got.equiv(&RatFn::from_poly(Poly::from_int(-2))));
    }

    #[test]
    fn holomorphic_reciprocal_is_flat_harmonic() {
        // Δ(1/(x3 + i x4)) = 0 away from the pole
        let den = x(3).add(&x(4).scale(&GaussRat::i()));
        let f = RatFn::new(Poly::one(), den).unwrap();
        let got = FlatOperator::euclidean().apply(&f);
        assert!(got.num.is_zero());
    }

    #[test]
    fn embed_determinant_is_norm_sq() {
        let det = crate::verify::det_poly();
        let got = embed_su2(&RatFn::from_poly(det)).unwrap();
        assert!(got.equiv(&RatFn::from_poly(euclid_norm_sq())));
    }

    #[test]
    fn embed_constant_unchanged() {
        let c = RatFn::from_poly(Poly::from_int(7));
        assert!(embed_su2(&c).unwrap().equiv(&c));
    }

    #[test]
    fn dualize_reindexes_and_rotates() {
        // x1² ↦ (-i x0)² = -x0² for a sphere-side function using x4
        let f = RatFn::from_poly(x(1).pow(2).add(&x(4)));
        let got = dualize(&f).unwrap();
        let expect = RatFn::from_poly(x(0).pow(2).neg().add(&x(3)));
        assert!(got.equiv(&expect));
    }

    #[test]
    fn dualize_twice_flips_x0() {
        let f = RatFn::from_poly(x(0).pow(3).add(&x(1)));
        let got = dualize(&dualize(&f).unwrap()).unwrap();
        let expect = RatFn::from_poly(x(0).pow(3).neg().add(&x(1)));
        assert!(got.equiv(&expect));
        // and a function independent of x0 is unchanged
        let g = RatFn::from_poly(x(1).mul(&x(2)));
        assert!(dualize(&g).unwrap().equiv(&g));
    }

    #[test]
    fn lorentz_form_from_dualized_norm() {
        // |x|² with x1 ↦ -i x0 re-indexing reproduces -(x,x)_L... the
        // substitution sends x1²+x2²+x3²+x4² to -x0²+x1²+x2²+x3².
        let got = dualize(&RatFn::from_poly(euclid_norm_sq())).unwrap();
        assert!(got.equiv(&RatFn::from_poly(lorentz_form())));
    }

    #[test]
    fn hyperbolic_points_on_sheet() {
        for p in hyperbolic_points(10) {
            let l = &(&(&p[1] * &p[1]) + &(&p[2] * &p[2])) + &(&p[3] * &p[3]);
            let val = &l - &(&p[0] * &p[0]);
            assert_eq!(val, GaussRat::from_int(-1));
            assert!(p[0].re > num_rational::BigRational::from_integer(0.into()));
        }
    }

    #[test]
    fn monomial_display_used_in_reports() {
        let m = Monomial::from_pairs([(Var::X(1), 2)]);
        assert_eq!(m.to_string(), "x1^2");
    }
}
