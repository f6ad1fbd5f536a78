//! Planar solution of the quartic one-matrix model
//! `exp N tr(-t/2 M² + g/4 M⁴)`.
//!
//! Everything is expressed through the endpoint parameter `a²` of the
//! eigenvalue support `[-2a, 2a]`:
//!
//! * raw model (`t = 1`): `3g a⁴ - a² + 1 = 0`, i.e. `a² = (1 - √(1-12g))/(6g)`;
//! * reduced model (`t = t(g)` fixed by `G₂(t, g) = 1`): `27g = (a²-1)(4-a²)²`
//!   with `t = a²(4-a²)/3`.
//!
//! From the resolvent one reads off `G₂ = a²(4-a²)/3`, `G₄ = a⁴(3-a²)` and the
//! connected four-point function `Γ = G₄ - 2G₂² = a⁴(a²-1)(5-2a²)/9`.
//!
//! Series routines are exact; numeric routines work in `f64` and are only
//! used for the spectral density and for reporting.

use num_complex::Complex64;
use num_traits::Zero;
use thiserror::Error;

use crate::numeric::{integrate_legendre, integrate_semicircle};
use crate::poly::BiPoly;
use crate::rational::{frac, q, Q};
use crate::series::{AlgebraicSystem, Series, SeriesError};

/// Radius of convergence of the raw model.
pub const RAW_CRITICAL_G: f64 = 1.0 / 12.0;
/// Radius of convergence of the reduced model.
pub const REDUCED_CRITICAL_G: f64 = 4.0 / 27.0;

const RESIDUAL_TOL: f64 = 1e-10;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum OneMatrixError {
    #[error("g = {g} lies beyond the critical coupling {critical}")]
    BeyondCritical { g: f64, critical: f64 },
    #[error("λ = {lambda} lies outside the support [-{edge}, {edge}]")]
    OutsideSupport { lambda: f64, edge: f64 },
    #[error("residual {0:e} of the endpoint equation exceeds tolerance")]
    Residual(f64),
    #[error(transparent)]
    Series(#[from] SeriesError),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Variant {
    /// `t = 1`
    Raw,
    /// `t = t(g)` with `G₂(t(g), g) = 1`
    Reduced,
}

/// A coupling together with the normalization of the quadratic term.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ModelPoint {
    pub g: f64,
    pub variant: Variant,
}

impl ModelPoint {
    pub fn new(g: f64, variant: Variant) -> Result<Self, OneMatrixError> {
        let critical = match variant {
            Variant::Raw => RAW_CRITICAL_G,
            Variant::Reduced => REDUCED_CRITICAL_G,
        };
        if g.is_nan() || g > critical {
            return Err(OneMatrixError::BeyondCritical { g, critical });
        }
        Ok(ModelPoint { g, variant })
    }

    pub fn a2(&self) -> Result<f64, OneMatrixError> {
        match self.variant {
            Variant::Raw => a2_raw(self.g),
            Variant::Reduced => a2_reduced(self.g),
        }
    }

    pub fn t(&self) -> Result<f64, OneMatrixError> {
        match self.variant {
            Variant::Raw => Ok(1.0),
            Variant::Reduced => t_of_g(self.g),
        }
    }
}

// ---------------------------------------------------------------------------
// Exact series
// ---------------------------------------------------------------------------

/// `3g y² - y + 1 = 0`, branch `y(0) = 1`: the raw endpoint `a²(g)`.
pub fn raw_endpoint_system() -> AlgebraicSystem {
    AlgebraicSystem::new(BiPoly::from_terms(&[(1, 2, 3), (0, 1, -1), (0, 0, 1)]), q(1))
        .expect("valid branch")
}

/// `27g - (y-1)(4-y)² = 0`, branch `y(0) = 1`: the reduced endpoint.
pub fn reduced_endpoint_system() -> AlgebraicSystem {
    AlgebraicSystem::new(
        BiPoly::from_terms(&[(1, 0, 27), (0, 0, 16), (0, 1, -24), (0, 2, 9), (0, 3, -1)]),
        q(1),
    )
    .expect("valid branch")
}

/// `a²(g) = (1 - √(1-12g))/(6g)`.
pub fn a2_raw_series(order: usize) -> Result<Series, SeriesError> {
    let mut arg = Series::one(order + 1);
    arg = &arg + &Series::var(order + 1).scale(&q(-12));
    let numerator = (&Series::one(order + 1) - &arg.sqrt()?).shift_down(1)?;
    Ok(numerator.scale(&frac(1, 6)))
}

/// `G₂ = a²(4 - a²)/3` as a function of the endpoint series.
pub fn g2_of_endpoint(a2: &Series) -> Series {
    let four_minus = (-a2).add_constant(&q(4));
    (a2 * &four_minus).scale(&frac(1, 3))
}

/// `G₄ = a⁴(3 - a²)`.
pub fn g4_of_endpoint(a2: &Series) -> Series {
    let three_minus = (-a2).add_constant(&q(3));
    &(a2 * a2) * &three_minus
}

/// `Γ = a⁴(a² - 1)(5 - 2a²)/9`.
pub fn gamma_of_endpoint(a2: &Series) -> Series {
    let minus_one = a2.add_constant(&q(-1));
    let five_minus = a2.scale(&q(-2)).add_constant(&q(5));
    (&(a2 * a2) * &(&minus_one * &five_minus)).scale(&frac(1, 9))
}

/// `F = ½ log a² - (a² - 1)(9 - a²)/24`.
pub fn free_energy_of_endpoint(a2: &Series) -> Result<Series, SeriesError> {
    let minus_one = a2.add_constant(&q(-1));
    let nine_minus = (-a2).add_constant(&q(9));
    Ok(&a2.log()?.scale(&frac(1, 2)) - &(&minus_one * &nine_minus).scale(&frac(1, 24)))
}

pub fn g2_raw_series(order: usize) -> Result<Series, SeriesError> {
    Ok(g2_of_endpoint(&a2_raw_series(order)?))
}

pub fn g4_raw_series(order: usize) -> Result<Series, SeriesError> {
    Ok(g4_of_endpoint(&a2_raw_series(order)?))
}

pub fn gamma_raw_series(order: usize) -> Result<Series, SeriesError> {
    Ok(gamma_of_endpoint(&a2_raw_series(order)?))
}

pub fn free_energy_raw_series(order: usize) -> Result<Series, SeriesError> {
    free_energy_of_endpoint(&a2_raw_series(order)?)
}

/// Reduced endpoint `a²(g)` from the cubic, by series Newton iteration.
pub fn a2_reduced_series(order: usize) -> Result<Series, SeriesError> {
    reduced_endpoint_system().solve(order)
}

/// `t(g) = a²(4 - a²)/3` on the reduced branch.
pub fn t_series(order: usize) -> Result<Series, SeriesError> {
    Ok(g2_of_endpoint(&a2_reduced_series(order)?))
}

/// Reduced tangles `Γ(t(g), g) = Γ(1, g/t²)/t²`.
pub fn gamma_reduced_series(order: usize) -> Result<Series, SeriesError> {
    let a2 = a2_reduced_series(order)?;
    let t = g2_of_endpoint(&a2);
    gamma_of_endpoint(&a2).div(&(&t * &t))
}

/// Reduced link diagrams: `dF/dg = ¼ G₄(t(g), g) = ¼(Γ_reduced + 2)`, `F(0) = 0`.
pub fn free_energy_reduced_series(order: usize) -> Result<Series, SeriesError> {
    if order == 0 {
        return Ok(Series::zero(0));
    }
    let gamma = gamma_reduced_series(order - 1)?;
    Ok(gamma.add_constant(&q(2)).scale(&frac(1, 4)).integrate())
}

/// `G₂(t, g) = (1/t) G₂(1, g/t²)` for a renormalization series `t(g)` with
/// `t(0) ≠ 0`.
pub fn g2_scaled(t: &Series, order: usize) -> Result<Series, SeriesError> {
    let t = t.truncate(order);
    let inner = Series::var(order).div(&(&t * &t))?;
    g2_raw_series(order)?.compose(&inner)?.div(&t)
}

/// `G₂` of the model with fixed quadratic coefficient `t`, solved directly:
/// `3g y² - t y + 1 = 0` with `y(0) = 1/t`, and `G₂ = t y² - 4g y³`.
pub fn g2_fixed_t(t: &Q, order: usize) -> Result<Series, SeriesError> {
    let rel = BiPoly::new(vec![
        crate::poly::Poly::one(),
        crate::poly::Poly::constant(-t.clone()),
        crate::poly::Poly::from_ints(&[0, 3]),
    ]);
    let y = AlgebraicSystem::new(rel, t.recip())?.solve(order)?;
    let y2 = &y * &y;
    let g = Series::var(order);
    Ok(&y2.scale(t) - &(&(&g * &y2) * &y).scale(&q(4)))
}

// ---------------------------------------------------------------------------
// Numeric evaluation
// ---------------------------------------------------------------------------

fn check_raw(g: f64) -> Result<(), OneMatrixError> {
    if g.is_nan() || g > RAW_CRITICAL_G {
        return Err(OneMatrixError::BeyondCritical {
            g,
            critical: RAW_CRITICAL_G,
        });
    }
    Ok(())
}

/// `a²(g)` for `g ≤ 1/12`, in the cancellation-free form `2/(1 + √(1-12g))`.
pub fn a2_raw(g: f64) -> Result<f64, OneMatrixError> {
    check_raw(g)?;
    let a2 = 2.0 / (1.0 + (1.0 - 12.0 * g).max(0.0).sqrt());
    let residual = 3.0 * g * a2 * a2 - a2 + 1.0;
    if residual.abs() > RESIDUAL_TOL {
        return Err(OneMatrixError::Residual(residual));
    }
    Ok(a2)
}

pub fn g2_raw(g: f64) -> Result<f64, OneMatrixError> {
    let a2 = a2_raw(g)?;
    Ok(a2 * (4.0 - a2) / 3.0)
}

pub fn g4_raw(g: f64) -> Result<f64, OneMatrixError> {
    let a2 = a2_raw(g)?;
    Ok(a2 * a2 * (3.0 - a2))
}

pub fn gamma_raw(g: f64) -> Result<f64, OneMatrixError> {
    let a2 = a2_raw(g)?;
    Ok(a2 * a2 * (a2 - 1.0) * (5.0 - 2.0 * a2) / 9.0)
}

pub fn free_energy_raw(g: f64) -> Result<f64, OneMatrixError> {
    let a2 = a2_raw(g)?;
    Ok(0.5 * a2.ln() - (a2 - 1.0) * (9.0 - a2) / 24.0)
}

fn cubic(a2: f64) -> f64 {
    (a2 - 1.0) * (4.0 - a2) * (4.0 - a2)
}

/// Reduced `a²(g)` for `g ≤ 4/27`, following the real branch from `a² = 1`
/// at `g = 0` in small coupling steps. Each step is a safeguarded Newton
/// solve bracketed by the previous point and the fold at `a² = 2`.
pub fn a2_reduced(g: f64) -> Result<f64, OneMatrixError> {
    if g.is_nan() || g > REDUCED_CRITICAL_G {
        return Err(OneMatrixError::BeyondCritical {
            g,
            critical: REDUCED_CRITICAL_G,
        });
    }
    const STEPS: usize = 32;
    let mut a2 = 1.0;
    for k in 1..=STEPS {
        let target = 27.0 * g * k as f64 / STEPS as f64;
        let (mut lo, mut hi) = if target >= cubic(a2) { (a2, 2.0) } else { (a2 - 1.0, a2) };
        while cubic(lo) > target {
            lo -= 1.0;
        }
        let mut x = a2.clamp(lo, hi);
        for _ in 0..200 {
            let f = cubic(x) - target;
            if f == 0.0 {
                break;
            }
            if f < 0.0 {
                lo = x;
            } else {
                hi = x;
            }
            let df = (4.0 - x) * (6.0 - 3.0 * x);
            let newton = x - f / df;
            x = if df != 0.0 && newton > lo && newton < hi {
                newton
            } else {
                0.5 * (lo + hi)
            };
            if hi - lo < 1e-15 {
                break;
            }
        }
        a2 = x;
    }
    let residual = cubic(a2) - 27.0 * g;
    if residual.abs() > RESIDUAL_TOL {
        return Err(OneMatrixError::Residual(residual));
    }
    Ok(a2)
}

pub fn t_of_g(g: f64) -> Result<f64, OneMatrixError> {
    let a2 = a2_reduced(g)?;
    Ok(a2 * (4.0 - a2) / 3.0)
}

fn gamma_reduced_of_endpoint(a2: f64) -> f64 {
    (a2 - 1.0) * (5.0 - 2.0 * a2) / ((4.0 - a2) * (4.0 - a2))
}

pub fn gamma_reduced(g: f64) -> Result<f64, OneMatrixError> {
    Ok(gamma_reduced_of_endpoint(a2_reduced(g)?))
}

/// `∫₀^g ¼(2 + Γ_reduced)`, integrated in the endpoint variable where
/// `dg = (4-a²)(2-a²)/9 da²` keeps the integrand smooth up to `g = 4/27`.
pub fn free_energy_reduced(g: f64) -> Result<f64, OneMatrixError> {
    let end = a2_reduced(g)?;
    let integrand =
        |a2: f64| 0.25 * (2.0 + gamma_reduced_of_endpoint(a2)) * (4.0 - a2) * (2.0 - a2) / 9.0;
    Ok(integrate_legendre(integrand, 1.0, end, 48))
}

/// Endpoint of the eigenvalue support together with the coupling.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SpectralData {
    pub g: f64,
    pub a2: f64,
}

impl SpectralData {
    pub fn new(g: f64) -> Result<Self, OneMatrixError> {
        Ok(SpectralData { g, a2: a2_raw(g)? })
    }

    pub fn support(&self) -> (f64, f64) {
        let edge = 2.0 * self.a2.sqrt();
        (-edge, edge)
    }

    fn prefactor(&self, lambda: f64) -> f64 {
        -0.5 * self.g * lambda * lambda + 0.5 - self.g * self.a2
    }

    /// `ω(λ) = λ/2 - gλ³/2 - (-gλ²/2 + 1/2 - g a²) √(λ² - 4a²)`, with the
    /// branch `√(λ² - 4a²) = λ √(1 - 4a²/λ²)` so that `ω(λ) ~ 1/λ` at infinity.
    pub fn resolvent(&self, lambda: Complex64) -> Complex64 {
        let g = self.g;
        let root = lambda * (Complex64::new(1.0, 0.0) - 4.0 * self.a2 / (lambda * lambda)).sqrt();
        let pre = Complex64::new(0.5 - g * self.a2, 0.0) - 0.5 * g * lambda * lambda;
        0.5 * lambda - 0.5 * g * lambda * lambda * lambda - pre * root
    }

    /// Boundary value `ω(λ + i0)` on the cut.
    pub fn resolvent_on_cut(&self, lambda: f64) -> Result<Complex64, OneMatrixError> {
        let (_, edge) = self.support();
        if lambda.abs() > edge {
            return Err(OneMatrixError::OutsideSupport { lambda, edge });
        }
        let g = self.g;
        let root = Complex64::new(0.0, (4.0 * self.a2 - lambda * lambda).max(0.0).sqrt());
        Ok(Complex64::new(0.5 * lambda - 0.5 * g * lambda.powi(3), 0.0)
            - self.prefactor(lambda) * root)
    }

    /// `ρ(λ) = |Im ω(λ + i0)|/π`.
    pub fn density(&self, lambda: f64) -> Result<f64, OneMatrixError> {
        Ok(self.resolvent_on_cut(lambda)?.im.abs() / std::f64::consts::PI)
    }

    /// `∫ λ^k ρ(λ) dλ` by Gauss–Chebyshev quadrature on the support.
    pub fn moment(&self, k: i32) -> f64 {
        let (_, edge) = self.support();
        // λ = edge·x, ρ(λ) dλ = (1/π) pre(λ) edge² √(1-x²) dx
        let f = |x: f64| {
            let lambda = edge * x;
            lambda.powi(k) * self.prefactor(lambda) * edge * edge / std::f64::consts::PI
        };
        integrate_semicircle(f, 64)
    }
}

pub fn density(g: f64, lambda: f64) -> Result<f64, OneMatrixError> {
    SpectralData::new(g)?.density(lambda)
}

pub fn resolvent(g: f64, lambda: Complex64) -> Result<Complex64, OneMatrixError> {
    if lambda.is_zero() {
        return Ok(Complex64::new(f64::NAN, f64::NAN));
    }
    Ok(SpectralData::new(g)?.resolvent(lambda))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::to_f64;

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
    fn raw_series_values() {
        // 3^k Catalan(k)
        assert_eq!(ints(&a2_raw_series(3).unwrap()), vec![1, 3, 18, 135]);
        assert_eq!(ints(&g2_raw_series(3).unwrap()), vec![1, 2, 9, 54]);
        assert_eq!(ints(&gamma_raw_series(4).unwrap()), vec![0, 1, 10, 90, 810]);
        let f = free_energy_raw_series(4).unwrap();
        assert_eq!(f.coeffs(), &[q(0), frac(1, 2), frac(9, 8), frac(9, 2), frac(189, 8)]);
    }

    #[test]
    fn four_point_is_derivative_of_free_energy() {
        let f = free_energy_raw_series(9).unwrap();
        let g4 = g4_raw_series(8).unwrap();
        assert_eq!(f.derivative(), g4.scale(&frac(1, 4)));
    }

    #[test]
    fn reduced_series_values() {
        let t = t_series(6).unwrap();
        assert_eq!(ints(&t), vec![1, 2, 1, 2, 6, 22, 91]);
        let gamma = gamma_reduced_series(8).unwrap();
        assert_eq!(ints(&gamma), vec![0, 1, 2, 6, 22, 91, 408, 1938, 9614]);
        let f = free_energy_reduced_series(5).unwrap();
        assert_eq!(
            f.coeffs(),
            &[q(0), frac(1, 2), frac(1, 8), frac(1, 6), frac(3, 8), frac(11, 10)]
        );
    }

    #[test]
    fn reduced_free_energy_by_two_routes() {
        // dF/dg = F_raw'(g/t²)/t² must agree with ¼(Γ_reduced + 2).
        let order = 10;
        let t = t_series(order).unwrap();
        let t2 = &t * &t;
        let inner = Series::var(order).div(&t2).unwrap();
        let fprime = free_energy_raw_series(order + 1).unwrap().derivative();
        let lhs = fprime.compose(&inner).unwrap().div(&t2).unwrap();
        let rhs = free_energy_reduced_series(order + 1).unwrap().derivative();
        assert_eq!(lhs, rhs);
    }

    #[test]
    fn scaling_identity() {
        for t in [frac(1, 2), q(2), frac(3, 5)] {
            let direct = g2_fixed_t(&t, 10).unwrap();
            let scaled = g2_scaled(&Series::constant(t.clone(), 10), 10).unwrap();
            assert_eq!(direct, scaled, "t = {t}");
        }
    }

    #[test]
    fn reduced_constraint_holds() {
        let t = t_series(10).unwrap();
        assert_eq!(g2_scaled(&t, 10).unwrap(), Series::one(10));
    }

    #[test]
    fn numeric_endpoints() {
        assert_eq!(a2_raw(0.0).unwrap(), 1.0);
        assert!((a2_raw(1.0 / 12.0).unwrap() - 2.0).abs() < 1e-15);
        assert!(matches!(a2_raw(0.1), Err(OneMatrixError::BeyondCritical { .. })));
        assert_eq!(gamma_raw(0.0).unwrap(), 0.0);
        assert_eq!(free_energy_raw(0.0).unwrap(), 0.0);
        assert_eq!(t_of_g(0.0).unwrap(), 1.0);
        assert!((a2_reduced(4.0 / 27.0).unwrap() - 2.0).abs() < 1e-6);
        assert!(matches!(a2_reduced(0.15), Err(OneMatrixError::BeyondCritical { .. })));
        assert!(ModelPoint::new(0.2, Variant::Reduced).is_err());
        let p = ModelPoint::new(0.1, Variant::Reduced).unwrap();
        assert!((p.t().unwrap() - t_of_g(0.1).unwrap()).abs() < 1e-15);
    }

    #[test]
    fn numeric_matches_series() {
        let order = 40;
        type Check = (Series, Box<dyn Fn(f64) -> f64>, f64);
        let checks: Vec<Check> = vec![
            (a2_raw_series(order).unwrap(), Box::new(|g| a2_raw(g).unwrap()), 0.03),
            (free_energy_raw_series(order).unwrap(), Box::new(|g| free_energy_raw(g).unwrap()), 0.03),
            (gamma_raw_series(order).unwrap(), Box::new(|g| gamma_raw(g).unwrap()), 0.03),
            (t_series(order).unwrap(), Box::new(|g| t_of_g(g).unwrap()), 0.05),
            (gamma_reduced_series(order).unwrap(), Box::new(|g| gamma_reduced(g).unwrap()), 0.05),
            (
                free_energy_reduced_series(order).unwrap(),
                Box::new(|g| free_energy_reduced(g).unwrap()),
                0.05,
            ),
        ];
        for (s, f, g) in checks {
            let partial: f64 = s
                .coeffs()
                .iter()
                .enumerate()
                .map(|(k, c)| to_f64(c) * g.powi(k as i32))
                .sum();
            assert!((partial - f(g)).abs() < 1e-12, "{partial} vs {}", f(g));
        }
    }

    #[test]
    fn semicircle_at_zero_coupling() {
        let sd = SpectralData::new(0.0).unwrap();
        for x in [-1.9, -0.5, 0.0, 1.2] {
            let wigner = (4.0f64 - x * x).sqrt() / (2.0 * std::f64::consts::PI);
            assert!((sd.density(x).unwrap() - wigner).abs() < 1e-14);
        }
        assert!(matches!(sd.density(2.5), Err(OneMatrixError::OutsideSupport { .. })));
    }

    #[test]
    fn resolvent_branch() {
        let sd = SpectralData::new(0.05).unwrap();
        // ω(λ) ~ 1/λ + G₂/λ³ far away.
        let lambda = Complex64::new(1e3, 0.0);
        let w = sd.resolvent(lambda);
        assert!((w.re * 1e3 - 1.0).abs() < 1e-5);
        // Approaching the cut from above reproduces the boundary value.
        let x = 0.7;
        let near = sd.resolvent(Complex64::new(x, 1e-9));
        let on = sd.resolvent_on_cut(x).unwrap();
        assert!((near - on).norm() < 1e-6);
        let below = sd.resolvent(Complex64::new(-x, 1e-9));
        assert!(below.im < 0.0);
    }

    #[test]
    fn moments_match_closed_forms() {
        let g = 1.0 / 20.0;
        let sd = SpectralData::new(g).unwrap();
        assert!((sd.moment(0) - 1.0).abs() < 1e-9);
        assert!((sd.moment(2) - g2_raw(g).unwrap()).abs() < 1e-9);
        assert!((sd.moment(4) - g4_raw(g).unwrap()).abs() < 1e-9);
    }
}
