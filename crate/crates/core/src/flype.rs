//! Skeleton calculus for tangles: two-particle irreducible (2PI) and
//! reducible (2PR) parts, and the tangle series `Γ̃` counted up to flypes.
//!
//! With `Γ` the connected tangles and `D` the 2PI ones,
//!
//! ```text
//! D = Γ(1 - Γ)/(1 + Γ),        Γ = ½[1 - D - √((1 - D)² - 4D)].
//! ```
//!
//! Writing `D = g + ζ`, the skeletons `ζ` are expressed through `Γ` alone
//! using the one-matrix solution, and the flype-corrected series solves
//!
//! ```text
//! Γ̃ = ½[(1 + g - ζ) - √((1 - g + ζ)² - 8ζ - 8g²/(1 - g))],   ζ = ζ[Γ̃].
//! ```
//!
//! Squaring once and taking the norm over `√(1 - 4Γ̃)` leaves a quintic
//! `P(g, Γ̃) = 0`, whose discriminant locates the dominant singularity.

use thiserror::Error;

use crate::onematrix::gamma_reduced_series;
use crate::poly::{discriminant_y, BiPoly, Poly, QuadraticIrrational, RealRoot};
use crate::rational::{frac, q};
use crate::series::{eval_bipoly, AlgebraicSystem, Series, SeriesError};

const SINGULARITY_TOL: f64 = 1e-10;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum FlypeError {
    #[error("fixed-point and quintic solutions disagree at order {order}")]
    BranchMismatch { order: usize },
    #[error("exact singularity {exact} and fold point {numeric} differ by more than {SINGULARITY_TOL:e}")]
    SingularityMismatch { exact: f64, numeric: f64 },
    #[error("fold-point iteration did not converge")]
    NoConvergence,
    #[error("discriminant has no positive root")]
    NoSingularity,
    #[error("singularity is not a quadratic irrational")]
    NotQuadratic,
    #[error(transparent)]
    Series(#[from] SeriesError),
}

/// `D = Γ(1 - Γ)/(1 + Γ)`.
pub fn d_of_gamma(gamma: &Series) -> Result<Series, FlypeError> {
    let n = gamma.order();
    let one = Series::one(n);
    Ok((gamma * &(&one - gamma)).div(&(&one + gamma))?)
}

/// `Γ = ½[1 - D - √((1 - D)² - 4D)]`, the inverse of [`d_of_gamma`].
pub fn gamma_of_d(d: &Series) -> Result<Series, FlypeError> {
    let one_minus = (-d).add_constant(&q(1));
    let radicand = &(&one_minus * &one_minus) - &d.scale(&q(4));
    Ok((&one_minus - &radicand.sqrt()?).scale(&frac(1, 2)))
}

/// `ζ[Γ] = Γ(1 - Γ)/(1 + Γ) - ½(1 + 10Γ - 2Γ² - (1 - 4Γ)^{3/2})/(Γ + 2)³`.
pub fn zeta_of_gamma(gamma: &Series) -> Result<Series, FlypeError> {
    let s = gamma.scale(&q(-4)).add_constant(&q(1)).sqrt()?;
    let s3 = &(&s * &s) * &s;
    let numerator = &(&gamma.scale(&q(10)) - &(gamma * gamma).scale(&q(2))).add_constant(&q(1)) - &s3;
    let denominator = gamma.add_constant(&q(2)).pow(3);
    Ok(&d_of_gamma(gamma)? - &numerator.div(&denominator)?.scale(&frac(1, 2)))
}

/// `Γ̃{g, ζ}`: the flype-corrected tangle function for given skeletons.
pub fn gamma_tilde_of_zeta(zeta: &Series) -> Result<Series, FlypeError> {
    let n = zeta.order();
    let g = Series::var(n);
    let one_minus_g = (-&g).add_constant(&q(1));
    let a = &one_minus_g + zeta;
    let twist = (&g * &g).scale(&q(8)).div(&one_minus_g)?;
    let radicand = &(&(&a * &a) - &zeta.scale(&q(8))) - &twist;
    let b = (&g - zeta).add_constant(&q(1));
    Ok((&b - &radicand.sqrt()?).scale(&frac(1, 2)))
}

/// `Γ̃{g, ζ[y]} - y`; vanishes on the flype-corrected series.
pub fn implicit_residual(y: &Series) -> Result<Series, FlypeError> {
    Ok(&gamma_tilde_of_zeta(&zeta_of_gamma(y)?)? - y)
}

/// Solves `Γ̃ = Γ̃{g, ζ[Γ̃]}` by plain iteration from `0`. Since `ζ[y] = O(y⁴)`
/// every pass fixes at least one more coefficient.
pub fn gamma_tilde_fixed_point(order: usize) -> Result<Series, FlypeError> {
    let mut y = Series::zero(order);
    for _ in 0..=order + 1 {
        let next = gamma_tilde_of_zeta(&zeta_of_gamma(&y)?)?;
        if next == y {
            return Ok(y);
        }
        y = next;
    }
    Ok(y)
}

/// The part of the implicit relation that is free of `s = √(1 - 4y)`, and
/// the coefficient of `s`, after clearing denominators:
/// `A + s·B = 0` with
///
/// ```text
/// A = 2(y+2)³[g(1-g)(1-y) + 2g²] - (1-g)(1+y)(1 + 10y - 2y²)
/// B = (1-g)(1+y)(1-4y)
/// ```
///
/// This is the squared relation `(1-g)(y-1)(y-g) + 2g² + ζ(1-g)(1+y) = 0`
/// with `ζ[y]` inserted.
pub fn radical_parts() -> (BiPoly, BiPoly) {
    let y = BiPoly::y();
    let g = BiPoly::g();
    let one = BiPoly::from_q(q(1));
    let c = |v: i64| BiPoly::from_q(q(v));
    let one_minus_g = &one - &g;
    let one_plus_y = &one + &y;
    let cube = (&y + &c(2)).pow(3);
    let bracket = &(&(&g * &one_minus_g) * &(&one - &y)) + &(&c(2) * &(&g * &g));
    let quad = &(&one + &(&c(10) * &y)) - &(&c(2) * &(&y * &y));
    let a = &(&c(2) * &(&cube * &bracket)) - &(&(&one_minus_g * &one_plus_y) * &quad);
    let b = &(&one_minus_g * &one_plus_y) * &(&one - &(&c(4) * &y));
    (a, b)
}

/// Eliminated relation `P(g, Γ̃) = 0`, of degree five in `Γ̃`.
///
/// The norm `A² - (1-4y)B²` is the resultant in `s` of `A + sB` and
/// `s² - (1 - 4y)`; it equals `4(y+2)³ P`.
pub fn quintic() -> BiPoly {
    let (a, b) = radical_parts();
    let s2 = BiPoly::from_terms(&[(0, 0, 1), (0, 1, -4)]);
    let mut norm = &(&a * &a) - &(&s2 * &(&b * &b));
    for _ in 0..3 {
        norm = norm.div_linear_y(&q(-2)).expect("(y + 2)³ divides the norm");
    }
    norm.primitive()
}

pub fn quintic_system() -> AlgebraicSystem {
    AlgebraicSystem::new(quintic(), q(0)).expect("quintic passes through the origin")
}

/// Flype-corrected tangles, computed by fixed-point iteration on the
/// unsquared relation and by Newton iteration on the quintic. The two must
/// coincide.
pub fn gamma_tilde(order: usize) -> Result<Series, FlypeError> {
    let fixed = gamma_tilde_fixed_point(order)?;
    let newton = quintic_system().solve(order)?;
    if let Some(k) = (0..=order).find(|&k| fixed.coeff(k) != newton.coeff(k)) {
        return Err(FlypeError::BranchMismatch { order: k });
    }
    Ok(newton)
}

/// The series of the skeleton calculus built on the reduced tangles.
#[derive(Debug, Clone, PartialEq)]
pub struct SkeletonFunctions {
    pub gamma: Series,
    pub d_2pi: Series,
    pub zeta: Series,
    pub gamma_tilde: Series,
}

impl SkeletonFunctions {
    pub fn compute(order: usize) -> Result<Self, FlypeError> {
        let gamma = gamma_reduced_series(order)?;
        let d_2pi = d_of_gamma(&gamma)?;
        let zeta = zeta_of_gamma(&gamma)?;
        Ok(SkeletonFunctions {
            gamma,
            d_2pi,
            zeta,
            gamma_tilde: gamma_tilde(order)?,
        })
    }

    /// First order at which flype classes are strictly fewer than diagrams.
    pub fn first_flype_order(&self) -> Option<usize> {
        (0..=self.gamma.order()).find(|&k| self.gamma_tilde.coeff(k) < self.gamma.coeff(k))
    }
}

/// Dominant singularity of `Γ̃(g)`.
#[derive(Debug, Clone)]
pub struct FlypeSingularity {
    /// Discriminant of the quintic in `Γ̃`.
    pub discriminant: Poly,
    /// Square-free factor of the discriminant defining `g̃_c`.
    pub factor: Poly,
    pub root: RealRoot,
    pub g_c: QuadraticIrrational,
    /// `1/g̃_c`.
    pub growth: QuadraticIrrational,
    /// `g̃_c` located as a fold of the implicit relation.
    pub numeric_g_c: f64,
    /// `Γ̃(g̃_c)` at the fold.
    pub numeric_gamma_c: f64,
    pub agreement: f64,
}

/// `A + sB` rewritten in `(g, s)` through `y = (1 - s²)/4`. Along the branch
/// through `(0, 1)` the singularity of `Γ̃` is a fold of this curve.
pub fn uniformized_relation() -> BiPoly {
    let (a, b) = radical_parts();
    let y_of_s = Poly::new(vec![frac(1, 4), q(0), frac(-1, 4)]);
    &a.substitute_y(&y_of_s) + &(&BiPoly::y() * &b.substitute_y(&y_of_s))
}

/// Fold of `E(g, s) = 0` reached from `(g, s) = (0, 1)`: continuation in `s`
/// solving for `g`, then Newton on `E = ∂E/∂s = 0`.
pub fn fold_point() -> Result<(f64, f64), FlypeError> {
    let e = uniformized_relation();
    let e_s = e.derivative_y();
    let e_g = e.derivative_g();
    let e_ss = e_s.derivative_y();
    let e_sg = e_s.derivative_g();

    let mut g = 0.0;
    const STEPS: usize = 200;
    for k in 1..=STEPS {
        let s = 1.0 - 0.98 * k as f64 / STEPS as f64;
        for _ in 0..50 {
            let dg = e.eval_f64(g, s) / e_g.eval_f64(g, s);
            g -= dg;
            if dg.abs() < 1e-15 {
                break;
            }
        }
    }
    let mut s = 0.02;
    for _ in 0..100 {
        let (f1, f2) = (e.eval_f64(g, s), e_s.eval_f64(g, s));
        let (j11, j12) = (e_g.eval_f64(g, s), e_s.eval_f64(g, s));
        let (j21, j22) = (e_sg.eval_f64(g, s), e_ss.eval_f64(g, s));
        let det = j11 * j22 - j12 * j21;
        if det == 0.0 || !det.is_finite() {
            return Err(FlypeError::NoConvergence);
        }
        let dg = (f1 * j22 - f2 * j12) / det;
        let ds = (j11 * f2 - j21 * f1) / det;
        g -= dg;
        s -= ds;
        if dg.abs() < 1e-16 && ds.abs() < 1e-14 {
            return Ok((g, s));
        }
    }
    if e.eval_f64(g, s).abs() < 1e-12 && e_s.eval_f64(g, s).abs() < 1e-12 {
        return Ok((g, s));
    }
    Err(FlypeError::NoConvergence)
}

pub fn flype_singularity() -> Result<FlypeSingularity, FlypeError> {
    let discriminant = discriminant_y(&quintic());
    let mut root = discriminant
        .smallest_positive_root()
        .ok_or(FlypeError::NoSingularity)?;
    root.refine(&frac(1, 1_000_000_000_000));
    let factor = root
        .defining_factor(&discriminant)
        .ok_or(FlypeError::NoSingularity)?;
    let g_c = root.closed_form(&factor).ok_or(FlypeError::NotQuadratic)?;
    let growth = g_c.recip();
    let (numeric_g_c, s) = fold_point()?;
    let agreement = (numeric_g_c - g_c.to_f64()).abs();
    if agreement.is_nan() || agreement > SINGULARITY_TOL {
        return Err(FlypeError::SingularityMismatch {
            exact: g_c.to_f64(),
            numeric: numeric_g_c,
        });
    }
    Ok(FlypeSingularity {
        discriminant,
        factor,
        root,
        g_c,
        growth,
        numeric_g_c,
        numeric_gamma_c: (1.0 - s * s) / 4.0,
        agreement,
    })
}

/// Evaluates the quintic along a series; zero on `Γ̃`.
pub fn quintic_residual(y: &Series) -> Series {
    eval_bipoly(&quintic(), y)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn ints(s: &Series) -> Vec<i64> {
        s.coeffs()
            .iter()
            .map(|c| {
                assert!(c.is_integer(), "non-integer coefficient {c}");
                c.to_integer().try_into().unwrap()
            })
            .collect()
    }

    #[test]
    fn two_pi_of_single_vertex() {
        assert_eq!(d_of_gamma(&Series::zero(4)).unwrap(), Series::zero(4));
        assert_eq!(ints(&d_of_gamma(&Series::var(3)).unwrap()), vec![0, 1, -2, 2]);
    }

    #[test]
    fn fully_reducible_skeletons() {
        let gamma = gamma_of_d(&Series::var(4)).unwrap();
        assert_eq!(ints(&gamma), vec![0, 1, 2, 6, 22]);
        assert_eq!(gamma_of_d(&Series::zero(3)).unwrap(), Series::zero(3));
    }

    #[test]
    fn round_trip() {
        let gamma = Series::from_ints(&[0, 1, 2, 6]);
        assert_eq!(gamma_of_d(&d_of_gamma(&gamma).unwrap()).unwrap(), gamma);
        let gamma = gamma_reduced_series(10).unwrap();
        assert_eq!(gamma_of_d(&d_of_gamma(&gamma).unwrap()).unwrap(), gamma);
    }

    #[test]
    fn zeta_vanishes_at_zero() {
        assert_eq!(zeta_of_gamma(&Series::zero(5)).unwrap(), Series::zero(5));
    }

    #[test]
    fn skeletons_of_reduced_tangles() {
        let gamma = gamma_reduced_series(8).unwrap();
        let zeta = zeta_of_gamma(&gamma).unwrap();
        let d = d_of_gamma(&gamma).unwrap();
        assert_eq!(zeta, &d - &Series::var(8));
        assert_eq!(ints(&zeta), vec![0, 0, 0, 0, 0, 1, 10, 74, 492]);
    }

    #[test]
    fn gamma_tilde_values() {
        let gt = gamma_tilde(13).unwrap();
        assert_eq!(
            ints(&gt),
            vec![0, 1, 2, 4, 10, 29, 98, 372, 1538, 6755, 30996, 146982, 715120, 3552254]
        );
        assert!(implicit_residual(&gt).unwrap().is_zero());
        assert!(quintic_residual(&gt).is_zero());
    }

    #[test]
    fn quintic_is_frozen() {
        let expected = BiPoly::from_terms(&[
            (4, 5, 1), (4, 4, 8), (4, 3, 25), (4, 2, 38), (4, 1, 28), (4, 0, 8),
            (3, 5, -2), (3, 4, -14), (3, 3, -16), (3, 2, 15), (3, 1, 36), (3, 0, 17),
            (2, 5, 1), (2, 4, 8), (2, 3, -14), (2, 2, -30), (2, 1, -5), (2, 0, 8),
            (1, 4, -2), (1, 3, 8), (1, 2, -1), (1, 1, -12), (1, 0, -1),
            (0, 3, 1), (0, 2, 2), (0, 1, 1),
        ]);
        assert_eq!(quintic(), expected);
        assert_eq!(quintic().lc_y(), Poly::from_ints(&[0, 0, 1, -2, 1]));
    }

    #[test]
    fn skeleton_bundle() {
        let sk = SkeletonFunctions::compute(8).unwrap();
        assert_eq!(sk.first_flype_order(), Some(3));
        for k in 0..=2 {
            assert_eq!(sk.gamma_tilde.coeff(k), sk.gamma.coeff(k));
        }
        assert_eq!(sk.d_2pi, &Series::var(8) + &sk.zeta);
    }

    #[test]
    fn singularity() {
        let sing = flype_singularity().unwrap();
        assert_eq!(sing.factor, Poly::from_ints(&[-20, 101, 135]));
        assert_eq!(sing.growth.to_string(), "(101 + √21001)/40");
        let expected = (21001f64.sqrt() - 101.0) / 270.0;
        assert!((sing.g_c.to_f64() - expected).abs() < 1e-15);
        assert!(sing.agreement < 1e-10);
        assert!((sing.numeric_gamma_c - 0.25).abs() < 1e-6);
        assert!(sing.growth.to_f64() < 6.75);
    }
}
