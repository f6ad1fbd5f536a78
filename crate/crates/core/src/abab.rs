//! Two-colour model: `α/4 tr(A⁴ + B⁴) + β/2 tr (AB)²`-type couplings, on the
//! counting line `α = β = g` where it coincides with the O(2) loop model.
//!
//! Only the critical endpoint is available in closed form:
//! `g_c = π(π-4)²/16` and `t_c = G₂(1, 1/(4π)) = (π/2)(4-π)`, with
//! `g_c/t_c² = 1/(4π)`. The series side comes from the oracle at `n = 2`.

use std::f64::consts::PI;

use serde::Serialize;

use crate::oracle::{normalization, rescale, Oracle, OracleError};
use crate::rational::q;
use crate::series::Series;

#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct TwoColorPoint {
    pub alpha: f64,
    pub beta: f64,
    pub t: f64,
}

impl TwoColorPoint {
    pub fn on_counting_line(g: f64, t: f64) -> Self {
        TwoColorPoint { alpha: g, beta: g, t }
    }

    pub fn is_on_counting_line(&self) -> bool {
        self.alpha == self.beta
    }

    /// Coupling seen by the model with unit quadratic term.
    pub fn effective_coupling(&self) -> f64 {
        self.beta / (self.t * self.t)
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct CriticalConstants {
    pub g_c: f64,
    pub t_c: f64,
    pub growth: f64,
}

impl CriticalConstants {
    pub fn point(&self) -> TwoColorPoint {
        TwoColorPoint::on_counting_line(self.g_c, self.t_c)
    }
}

pub fn critical_constants() -> CriticalConstants {
    let g_c = PI * (PI - 4.0).powi(2) / 16.0;
    CriticalConstants {
        g_c,
        t_c: PI / 2.0 * (4.0 - PI),
        growth: 16.0 / (PI * (PI - 4.0).powi(2)),
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct TwoColorSeries {
    /// `F(2, g)` with `t = 1`.
    pub raw_free_energy: Series,
    /// `G₂(1, g)` at `n = 2`.
    pub g2: Series,
    /// `t(g)` with `G₂(t(g), g) = 1`.
    pub t: Series,
    /// `G₂(t(g), g)`, identically 1.
    pub reduced_g2: Series,
    /// `F` with `dF/dg = F'(1, g/t²)/t²`, `F(0) = 0`.
    pub reduced_free_energy: Series,
}

pub fn two_color_series(order: usize, oracle: &Oracle) -> Result<TwoColorSeries, OracleError> {
    let n = q(2);
    let raw_free_energy = oracle.free_energy_series(order, &n)?;
    let g2 = oracle.g2_series(order, &n)?;
    let t = normalization(&g2)?;
    let reduced_g2 = rescale(&g2, &t, 1)?;
    let reduced_free_energy = if order == 0 {
        Series::zero(0)
    } else {
        let slope = raw_free_energy.derivative();
        rescale(&slope, &t.truncate(order - 1), 2)?.integrate()
    };
    Ok(TwoColorSeries {
        raw_free_energy,
        g2,
        t,
        reduced_g2,
        reduced_free_energy,
    })
}
