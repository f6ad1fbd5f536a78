//! Counting sequences, their ratio-method asymptotics, and the table of
//! growth constants.

use std::io::{Read, Write};

use num_bigint::BigInt;
use num_traits::{Signed, Zero};
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::abab;
use crate::flype::{self, FlypeError};
use crate::onematrix;
use crate::oracle::{Oracle, OracleError, VertexType};
use crate::poly::{discriminant_y, BiPoly, QuadraticIrrational};
use crate::rational::{to_f64, to_pq, Q};
use crate::series::{Series, SeriesError};

#[derive(Debug, Error)]
pub enum CensusError {
    #[error("need at least {needed} nonzero terms, got {got}")]
    TooShort { needed: usize, got: usize },
    #[error("term {index} is zero after the sequence has started")]
    ZeroTerm { index: usize },
    #[error("term {index} changes sign")]
    SignChange { index: usize },
    #[error("{0}")]
    Io(String),
    #[error(transparent)]
    Series(#[from] SeriesError),
    #[error(transparent)]
    Oracle(#[from] OracleError),
    #[error(transparent)]
    Flype(#[from] FlypeError),
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Provenance {
    ClosedForm,
    Oracle,
    ImplicitSolve,
}

/// Coefficients `c_p` indexed by crossing number `p`.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct CountingSequence {
    pub name: String,
    #[serde(serialize_with = "serialize_rationals")]
    pub coefficients: Vec<Q>,
    pub provenance: Provenance,
}

fn serialize_rationals<S: serde::Serializer>(v: &[Q], s: S) -> Result<S::Ok, S::Error> {
    s.collect_seq(v.iter().map(to_pq))
}

impl CountingSequence {
    pub fn new(name: &str, series: &Series, provenance: Provenance) -> Self {
        CountingSequence {
            name: name.to_string(),
            coefficients: series.coeffs().to_vec(),
            provenance,
        }
    }

    pub fn len(&self) -> usize {
        self.coefficients.len()
    }

    pub fn is_empty(&self) -> bool {
        self.coefficients.is_empty()
    }

    /// First index where two sequences differ, over their common range.
    pub fn first_difference(&self, other: &CountingSequence) -> Option<usize> {
        self.coefficients
            .iter()
            .zip(&other.coefficients)
            .position(|(a, b)| a != b)
    }

    pub fn write_csv<W: Write>(&self, out: W) -> Result<(), CensusError> {
        let mut w = csv::Writer::from_writer(out);
        let io = |e: csv::Error| CensusError::Io(e.to_string());
        w.write_record(["p", "coefficient"]).map_err(io)?;
        for (p, c) in self.coefficients.iter().enumerate() {
            w.write_record([p.to_string(), to_pq(c)]).map_err(io)?;
        }
        w.flush().map_err(|e| CensusError::Io(e.to_string()))
    }
}

/// Reduced link diagrams, from the closed form.
pub fn reduced_link_diagrams(order: usize) -> Result<CountingSequence, CensusError> {
    Ok(CountingSequence::new(
        "reduced link diagrams",
        &onematrix::free_energy_reduced_series(order)?,
        Provenance::ClosedForm,
    ))
}

pub fn reduced_tangles(order: usize) -> Result<CountingSequence, CensusError> {
    Ok(CountingSequence::new(
        "reduced tangles",
        &onematrix::gamma_reduced_series(order)?,
        Provenance::ClosedForm,
    ))
}

pub fn flype_classes(order: usize) -> Result<CountingSequence, CensusError> {
    Ok(CountingSequence::new(
        "flype classes of tangles",
        &flype::gamma_tilde(order)?,
        Provenance::ImplicitSolve,
    ))
}

/// One extrapolation step of the ratio method.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct Extrapolant {
    pub p: usize,
    pub ratio: f64,
    pub growth: f64,
    pub exponent: f64,
}

/// `c_p ≈ C μ^p p^θ`: `growth = μ`, `exponent = θ`.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct AsymptoticEstimate {
    pub growth: f64,
    pub exponent: f64,
    pub diagnostics: Vec<Extrapolant>,
}

/// Default number of ratios in each polynomial fit, minus one.
pub const EXTRAPOLATION_DEGREE: usize = 2;

/// Ratio method with the default quadratic extrapolation.
pub fn ratio_asymptotics(seq: &CountingSequence) -> Result<AsymptoticEstimate, CensusError> {
    ratio_asymptotics_with(seq, EXTRAPOLATION_DEGREE)
}

/// Ratios `r_p = c_p/c_{p-1} = μ(1 + θ/p + O(p⁻²))`. The last `degree + 1`
/// ratios at each `p` are fitted by a polynomial in `1/p`; its value at 0
/// estimates `μ` and its slope there `μθ`.
pub fn ratio_asymptotics_with(
    seq: &CountingSequence,
    degree: usize,
) -> Result<AsymptoticEstimate, CensusError> {
    let start = seq
        .coefficients
        .iter()
        .position(|c| !c.is_zero())
        .unwrap_or(seq.len());
    let terms = &seq.coefficients[start..];
    let needed = (degree + 2).max(6);
    if terms.len() < needed {
        return Err(CensusError::TooShort {
            needed,
            got: terms.len(),
        });
    }
    let positive = terms[0].is_positive();
    for (i, c) in terms.iter().enumerate() {
        if c.is_zero() {
            return Err(CensusError::ZeroTerm { index: start + i });
        }
        if c.is_positive() != positive {
            return Err(CensusError::SignChange { index: start + i });
        }
    }
    let ratios: Vec<(usize, f64)> = (1..terms.len())
        .map(|i| (start + i, to_f64(&(&terms[i] / &terms[i - 1]))))
        .collect();
    let mut diagnostics = Vec::new();
    for w in ratios.windows(degree + 1) {
        let xs: Vec<f64> = w.iter().map(|&(p, _)| 1.0 / p as f64).collect();
        let ys: Vec<f64> = w.iter().map(|&(_, r)| r).collect();
        let (value, slope) = lagrange_at_zero(&xs, &ys);
        let &(p, ratio) = w.last().expect("nonempty window");
        diagnostics.push(Extrapolant {
            p,
            ratio,
            growth: value,
            exponent: slope / value,
        });
    }
    let last = diagnostics.last().expect("at least one extrapolant");
    Ok(AsymptoticEstimate {
        growth: last.growth,
        exponent: last.exponent,
        diagnostics,
    })
}

/// Ratio method with the exponent held at a known value `θ`:
/// `μ_p = r_p · p/(p + θ)`. Useful when too few terms are available to fit
/// both parameters; `exponent` in the result is `θ` itself.
pub fn ratio_growth_fixed_exponent(
    seq: &CountingSequence,
    exponent: f64,
) -> Result<AsymptoticEstimate, CensusError> {
    let free = ratio_asymptotics_with(seq, 0)?;
    let diagnostics: Vec<Extrapolant> = free
        .diagnostics
        .into_iter()
        .map(|e| Extrapolant {
            growth: e.ratio * e.p as f64 / (e.p as f64 + exponent),
            exponent,
            ..e
        })
        .collect();
    let last = diagnostics.last().expect("at least one ratio");
    Ok(AsymptoticEstimate {
        growth: last.growth,
        exponent,
        diagnostics,
    })
}

/// Value and derivative at 0 of the interpolating polynomial.
fn lagrange_at_zero(xs: &[f64], ys: &[f64]) -> (f64, f64) {
    let n = xs.len();
    let (mut value, mut slope) = (0.0, 0.0);
    for i in 0..n {
        let mut l0 = 1.0;
        for j in (0..n).filter(|&j| j != i) {
            l0 *= -xs[j] / (xs[i] - xs[j]);
        }
        let mut dl = 0.0;
        for k in (0..n).filter(|&k| k != i) {
            let mut term = 1.0 / (xs[i] - xs[k]);
            for j in (0..n).filter(|&j| j != i && j != k) {
                term *= -xs[j] / (xs[i] - xs[j]);
            }
            dl += term;
        }
        value += ys[i] * l0;
        slope += ys[i] * dl;
    }
    (value, slope)
}

/// `F^k_p`: coefficient of `n^k g^p` in the planar free energy, i.e. link
/// diagrams with `p` crossings and `k` components weighted by symmetry.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct ComponentTable {
    /// `rows[p][k]`, with row 0 empty.
    #[serde(serialize_with = "serialize_rows")]
    pub rows: Vec<Vec<Q>>,
}

fn serialize_rows<S: serde::Serializer>(rows: &[Vec<Q>], s: S) -> Result<S::Ok, S::Error> {
    s.collect_seq(rows.iter().map(|r| r.iter().map(to_pq).collect::<Vec<_>>()))
}

impl ComponentTable {
    pub fn get(&self, p: usize, k: usize) -> Q {
        self.rows
            .get(p)
            .and_then(|r| r.get(k))
            .cloned()
            .unwrap_or_else(Q::zero)
    }

    /// Single-component (knot) diagrams, `F¹_p`.
    pub fn knots(&self) -> Vec<Q> {
        (0..self.rows.len()).map(|p| self.get(p, 1)).collect()
    }

    /// `Σ_k F^k_p`, the `n = 1` specialization.
    pub fn totals(&self) -> Vec<Q> {
        self.rows.iter().map(|r| r.iter().sum()).collect()
    }

    pub fn write_csv<W: Write>(&self, out: W) -> Result<(), CensusError> {
        let mut w = csv::Writer::from_writer(out);
        let io = |e: csv::Error| CensusError::Io(e.to_string());
        w.write_record(["p", "components", "coefficient"]).map_err(io)?;
        for (p, row) in self.rows.iter().enumerate() {
            for (k, c) in row.iter().enumerate() {
                if !c.is_zero() {
                    w.write_record([p.to_string(), k.to_string(), to_pq(c)]).map_err(io)?;
                }
            }
        }
        w.flush().map_err(|e| CensusError::Io(e.to_string()))
    }
}

pub fn component_decomposition(order: usize, oracle: &Oracle) -> Result<ComponentTable, CensusError> {
    let mut rows = vec![Vec::new()];
    for p in 1..=order {
        let poly = oracle.free_energy_poly(&[(VertexType::Crossing, p)])?;
        rows.push(poly.coeffs().to_vec());
    }
    Ok(ComponentTable { rows })
}

/// One line of the constants table. Conjecture rows carry no reference.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct ConstantRow {
    pub name: String,
    pub reference_value: Option<f64>,
    pub computed_value: f64,
    pub abs_error: Option<f64>,
    pub anchor: String,
}

impl ConstantRow {
    fn new(name: &str, reference: Option<f64>, computed: f64, anchor: &str) -> Self {
        ConstantRow {
            name: name.to_string(),
            reference_value: reference,
            computed_value: computed,
            abs_error: reference.map(|r| (r - computed).abs()),
            anchor: anchor.to_string(),
        }
    }
}

/// Smallest positive root of `disc_y(P)` in closed form.
pub fn critical_point(relation: &BiPoly) -> Option<QuadraticIrrational> {
    let disc = discriminant_y(relation);
    let mut root = disc.smallest_positive_root()?;
    root.refine(&Q::new(BigInt::from(1), BigInt::from(10).pow(15)));
    let factor = root.defining_factor(&disc)?;
    root.closed_form(&factor)
}

/// Exponent `-2 - 1/ν` with `n = -2cos(πν)`, for `|n| ≤ 2`.
pub fn conjectured_exponent(n: f64) -> f64 {
    let nu = (-n / 2.0).acos() / std::f64::consts::PI;
    -2.0 - 1.0 / nu
}

pub const REDUCED_RATIO_TERMS: usize = 12;

/// Expected exponent of the two-colour counts, `p^-3` up to a logarithm.
pub const TWO_COLOR_EXPONENT: f64 = -3.0;

/// Growth of reduced two-colour link diagrams from the oracle terms through
/// `order`, by the ratio method with the exponent fixed at `-3`.
pub fn two_color_growth(order: usize, oracle: &Oracle) -> Result<AsymptoticEstimate, CensusError> {
    let s = abab::two_color_series(order, oracle)?;
    let seq = CountingSequence::new("reduced two-color link diagrams", &s.reduced_free_energy, Provenance::Oracle);
    ratio_growth_fixed_exponent(&seq, TWO_COLOR_EXPONENT)
}

/// Every growth constant recomputed, beside its reference value.
pub fn constants_report() -> Result<Vec<ConstantRow>, CensusError> {
    let mut rows = Vec::new();

    let raw = critical_point(onematrix::raw_endpoint_system().relation())
        .expect("raw discriminant has a positive root");
    rows.push(ConstantRow::new(
        "raw one-matrix g_c",
        Some(1.0 / 12.0),
        raw.to_f64(),
        "exact: discriminant of 3g a^4 - a^2 + 1",
    ));
    rows.push(ConstantRow::new(
        "raw one-matrix growth",
        Some(12.0),
        raw.recip().to_f64(),
        "exact: 1/g_c",
    ));

    let reduced = critical_point(onematrix::reduced_endpoint_system().relation())
        .expect("reduced discriminant has a positive root");
    rows.push(ConstantRow::new(
        "reduced g_c",
        Some(4.0 / 27.0),
        reduced.to_f64(),
        "exact: discriminant of 27g - (a^2-1)(4-a^2)^2",
    ));
    rows.push(ConstantRow::new(
        "reduced growth",
        Some(6.75),
        reduced.recip().to_f64(),
        "exact: 1/g_c",
    ));
    let est = ratio_asymptotics(&reduced_link_diagrams(REDUCED_RATIO_TERMS)?)?;
    rows.push(ConstantRow::new(
        "reduced growth (ratio method)",
        Some(6.75),
        est.growth,
        "ratio method, 12 terms of reduced link diagrams",
    ));
    rows.push(ConstantRow::new(
        "reduced exponent (ratio method)",
        Some(-3.5),
        est.exponent,
        "ratio method, 12 terms of reduced link diagrams",
    ));

    let sing = flype::flype_singularity()?;
    rows.push(ConstantRow::new(
        "flype g_c",
        Some((21001f64.sqrt() - 101.0) / 270.0),
        sing.g_c.to_f64(),
        &format!("exact: root of {} in disc(quintic)", sing.factor),
    ));
    rows.push(ConstantRow::new(
        "flype g_c (fold point)",
        Some((21001f64.sqrt() - 101.0) / 270.0),
        sing.numeric_g_c,
        "numeric: fold of the uniformized relation",
    ));
    rows.push(ConstantRow::new(
        "flype growth",
        Some(6.14793),
        sing.growth.to_f64(),
        &format!("exact: {}", sing.growth),
    ));

    let cc = abab::critical_constants();
    rows.push(ConstantRow::new(
        "two-color g_c",
        Some(0.144683),
        cc.g_c,
        "closed form: pi (pi - 4)^2 / 16",
    ));
    rows.push(ConstantRow::new(
        "two-color t_c",
        Some(std::f64::consts::FRAC_PI_2 * (4.0 - std::f64::consts::PI)),
        cc.t_c,
        "closed form: G2(1, 1/(4 pi))",
    ));
    rows.push(ConstantRow::new(
        "two-color growth",
        Some(6.91167),
        cc.growth,
        "closed form: 16 / (pi (pi - 4)^2)",
    ));
    let oracle = Oracle::new();
    let est = two_color_growth(oracle.ceiling(), &oracle)?;
    rows.push(ConstantRow::new(
        "two-color growth (ratio method)",
        Some(6.91167),
        est.growth,
        "ratio method on oracle terms, exponent fixed at -3",
    ));
    rows.push(ConstantRow::new(
        "two-color g_c/t_c^2",
        Some(1.0 / (4.0 * std::f64::consts::PI)),
        cc.g_c / (cc.t_c * cc.t_c),
        "identity: 1/(4 pi)",
    ));

    for (label, n) in [("n = 0, knots", 0.0), ("n = 1, links", 1.0), ("n = 2, two colors", 2.0)] {
        rows.push(ConstantRow::new(
            &format!("conjecture: O(n) exponent, {label}"),
            None,
            conjectured_exponent(n),
            "conjecture: -2 - 1/nu with n = -2 cos(pi nu)",
        ));
    }
    rows.push(ConstantRow::new(
        "conjecture: two-color exponent class",
        None,
        -3.0,
        "expected class p^-3 log p; not fitted",
    ));
    Ok(rows)
}

pub fn write_constants_csv<W: Write>(rows: &[ConstantRow], out: W) -> Result<(), CensusError> {
    let mut w = csv::Writer::from_writer(out);
    for r in rows {
        w.serialize(r).map_err(|e| CensusError::Io(e.to_string()))?;
    }
    w.flush().map_err(|e| CensusError::Io(e.to_string()))
}

/// A user-supplied value shown next to the computed one.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct SideBySide {
    pub name: String,
    pub user_value: f64,
    pub computed_value: Option<f64>,
}

#[derive(Deserialize)]
struct UserRow {
    name: String,
    value: f64,
}

/// Reads a CSV with columns `name, value` and pairs each row with the
/// computed constant of the same name, if any.
pub fn side_by_side<R: Read>(rows: &[ConstantRow], input: R) -> Result<Vec<SideBySide>, CensusError> {
    let mut rdr = csv::Reader::from_reader(input);
    rdr.deserialize::<UserRow>()
        .map(|r| {
            let r = r.map_err(|e| CensusError::Io(e.to_string()))?;
            let computed = rows.iter().find(|c| c.name == r.name).map(|c| c.computed_value);
            Ok(SideBySide {
                name: r.name,
                user_value: r.value,
                computed_value: computed,
            })
        })
        .collect()
}

/// Outcome of comparing a closed form against the oracle.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct CrossCheck {
    pub name: String,
    pub orders: usize,
    /// First differing coefficient: `(index, closed form, oracle)`.
    pub mismatch: Option<(usize, String, String)>,
}

impl CrossCheck {
    fn compare(name: &str, closed: &Series, oracle: &Series) -> Self {
        let orders = closed.order().min(oracle.order());
        let mismatch = (0..=orders)
            .find(|&k| closed.coeff(k) != oracle.coeff(k))
            .map(|k| (k, to_pq(closed.coeff(k)), to_pq(oracle.coeff(k))));
        CrossCheck {
            name: name.to_string(),
            orders,
            mismatch,
        }
    }

    pub fn passed(&self) -> bool {
        self.mismatch.is_none()
    }
}

/// Closed forms against oracle counts through `vmax` vertices: raw `F`,
/// `G₂`, `G₄`, `Γ`, the reduced `t` and `Γ`, and the `n = 1` sum of the
/// component decomposition.
pub fn crosscheck(vmax: usize, oracle: &Oracle) -> Result<Vec<CrossCheck>, CensusError> {
    let one = Q::from_integer(BigInt::from(1));
    let f = oracle.free_energy_series(vmax, &one)?;
    let g2 = oracle.g2_series(vmax, &one)?;
    let g4 = oracle.g4_series(vmax)?;
    let gamma = &g4 - &(&g2 * &g2).scale(&Q::from_integer(BigInt::from(2)));
    let t = crate::oracle::normalization(&g2)?;
    let gamma_red = crate::oracle::rescale(&gamma, &t, 2)?;
    let comps = component_decomposition(vmax, oracle)?;
    let mut totals = comps.totals();
    totals[0] = Q::zero();
    Ok(vec![
        CrossCheck::compare("free energy", &onematrix::free_energy_raw_series(vmax)?, &f),
        CrossCheck::compare("two-point", &onematrix::g2_raw_series(vmax)?, &g2),
        CrossCheck::compare("four-point", &onematrix::g4_raw_series(vmax)?, &g4),
        CrossCheck::compare("tangles", &onematrix::gamma_raw_series(vmax)?, &gamma),
        CrossCheck::compare("reduced normalization", &onematrix::t_series(vmax)?, &t),
        CrossCheck::compare("reduced tangles", &onematrix::gamma_reduced_series(vmax)?, &gamma_red),
        CrossCheck::compare("components at n = 1", &f, &Series::new(totals)),
    ])
}
