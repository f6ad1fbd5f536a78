//! Brute-force Wick-pairing oracle.
//!
//! Gluings of labeled 4-valent vertices are classified by genus, number of
//! strands and connectivity. Coefficients of the planar free energy and of
//! the two- and four-point functions follow by dividing labeled counts by
//! the vertex symmetry factors, so no automorphism group is ever computed.
//!
//! Three routes produce counts:
//!
//! * [`Mode::All`]: every pairing, for the `(4V-1)!!` identity;
//! * [`Mode::Planar`]: labeled pairings, pruned as soon as the genus of the
//!   partial map becomes positive;
//! * [`Mode::ConnectedPlanar`]: canonical rooted generation, converted to
//!   labeled counts by the exact group-order factor.

mod labeled;
mod layout;
mod rooted;

use std::collections::BTreeMap;
use std::fmt;
use std::io::Write;

use num_bigint::BigInt;
use num_traits::{One, Zero};
use serde::Serialize;
use thiserror::Error;

use crate::poly::Poly;
use crate::rational::{factorial, q, Q};
use crate::series::{Series, SeriesError};

use layout::{count_cycles, Layout};

pub const DEFAULT_CEILING: usize = 6;
pub const THREADS_ENV: &str = "LINKCENSUS_THREADS";

#[derive(Debug, Error)]
pub enum OracleError {
    #[error("V = {v} exceeds the enumeration ceiling {ceiling}")]
    AboveCeiling { v: usize, ceiling: usize },
    #[error("invalid thread count {0:?}")]
    Threads(String),
    #[error("thread pool: {0}")]
    Pool(String),
    #[error("invalid pairing: {0}")]
    InvalidPairing(String),
    #[error("CSV output: {0}")]
    Csv(String),
    #[error(transparent)]
    Series(#[from] SeriesError),
}

/// Four-valent vertex kinds. Legs are numbered `0..4` in cyclic order.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub enum VertexType {
    /// `tr (M_a M_b)²`: the strand entering leg `j` leaves through `j + 2`.
    Crossing,
    /// `tr M_a² M_b²`: legs `0, 1` and `2, 3` carry one strand each.
    Tangency,
}

impl VertexType {
    pub fn name(&self) -> &'static str {
        match self {
            VertexType::Crossing => "crossing",
            VertexType::Tangency => "tangency",
        }
    }

    pub fn coupling(&self) -> &'static str {
        match self {
            VertexType::Crossing => "g",
            VertexType::Tangency => "h",
        }
    }

    pub fn pattern(&self) -> &'static str {
        match self {
            VertexType::Crossing => "abab",
            VertexType::Tangency => "aabb",
        }
    }

    /// Strand transition: the leg through which a strand entering `leg` exits.
    pub fn transition(&self, leg: usize) -> usize {
        match self {
            VertexType::Crossing => (leg + 2) % 4,
            VertexType::Tangency => leg ^ 1,
        }
    }

    /// Order of the rotation group preserving the pattern; also the
    /// symmetry factor in the vertex weight.
    pub fn symmetry(&self) -> u64 {
        match self {
            VertexType::Crossing => 4,
            VertexType::Tangency => 2,
        }
    }

    /// Representatives of legs modulo the pattern-preserving rotations.
    pub fn entry_legs(&self) -> &'static [usize] {
        match self {
            VertexType::Crossing => &[0],
            VertexType::Tangency => &[0, 1],
        }
    }

    pub fn parse(s: &str) -> Option<VertexType> {
        match s {
            "crossing" | "abab" => Some(VertexType::Crossing),
            "tangency" | "aabb" => Some(VertexType::Tangency),
            _ => None,
        }
    }
}

/// The vertex kinds available to a model, each with its own coupling.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct VertexModel {
    types: Vec<VertexType>,
}

impl VertexModel {
    pub fn new(types: Vec<VertexType>) -> Option<Self> {
        let mut sorted = types.clone();
        sorted.sort();
        sorted.dedup();
        (!types.is_empty() && sorted.len() == types.len()).then_some(VertexModel { types })
    }

    pub fn single_color() -> Self {
        VertexModel {
            types: vec![VertexType::Crossing],
        }
    }

    pub fn two_types() -> Self {
        VertexModel {
            types: vec![VertexType::Crossing, VertexType::Tangency],
        }
    }

    pub fn types(&self) -> &[VertexType] {
        &self.types
    }

    /// Every way of distributing `v` vertices over the kinds.
    pub fn compositions(&self, v: usize) -> Vec<Vec<(VertexType, usize)>> {
        fn rec(types: &[VertexType], left: usize, acc: &mut Vec<(VertexType, usize)>, out: &mut Vec<Vec<(VertexType, usize)>>) {
            match types {
                [] => {}
                [last] => {
                    acc.push((*last, left));
                    out.push(acc.clone());
                    acc.pop();
                }
                [first, rest @ ..] => {
                    for k in (0..=left).rev() {
                        acc.push((*first, k));
                        rec(rest, left - k, acc, out);
                        acc.pop();
                    }
                }
            }
        }
        let mut out = Vec::new();
        rec(&self.types, v, &mut Vec::new(), &mut out);
        out
    }
}

/// Marked external vertex: `tr M²` or `tr M⁴` inserted in the expectation.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub enum Boundary {
    Closed,
    TwoLegs,
    FourLegs,
}

impl Boundary {
    pub fn legs(&self) -> usize {
        match self {
            Boundary::Closed => 0,
            Boundary::TwoLegs => 2,
            Boundary::FourLegs => 4,
        }
    }

    fn transition(&self, leg: usize) -> usize {
        match self {
            Boundary::Closed => leg,
            Boundary::TwoLegs => leg ^ 1,
            Boundary::FourLegs => (leg + 2) % 4,
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub enum Mode {
    All,
    Planar,
    ConnectedPlanar,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub struct Cell {
    pub genus: usize,
    pub strands: usize,
    pub connected: bool,
}

/// A complete gluing of vertices without boundary: dart `4v + j` is leg `j`
/// of vertex `v`, and `matching` is a fixed-point-free involution.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PairingDiagram {
    vertex_types: Vec<VertexType>,
    matching: Vec<usize>,
}

impl PairingDiagram {
    pub fn new(vertex_types: Vec<VertexType>, matching: Vec<usize>) -> Result<Self, OracleError> {
        let n = 4 * vertex_types.len();
        if matching.len() != n {
            return Err(OracleError::InvalidPairing(format!(
                "{} darts for {} vertices",
                matching.len(),
                vertex_types.len()
            )));
        }
        for (d, &e) in matching.iter().enumerate() {
            if e >= n || e == d || matching[e] != d {
                return Err(OracleError::InvalidPairing(format!("dart {d} ↦ {e}")));
            }
        }
        Ok(PairingDiagram {
            vertex_types,
            matching,
        })
    }

    pub fn num_vertices(&self) -> usize {
        self.vertex_types.len()
    }

    pub fn vertex_types(&self) -> &[VertexType] {
        &self.vertex_types
    }

    pub fn matching(&self) -> &[usize] {
        &self.matching
    }

    fn layout(&self) -> Layout {
        Layout::new(&self.vertex_types, Boundary::Closed)
    }

    pub fn faces(&self) -> usize {
        let l = self.layout();
        let phi: Vec<usize> = self.matching.iter().map(|&e| l.sigma[e]).collect();
        count_cycles(&phi)
    }

    pub fn strands(&self) -> usize {
        let l = self.layout();
        let psi: Vec<usize> = self.matching.iter().map(|&e| l.tau[e]).collect();
        count_cycles(&psi) / 2
    }

    pub fn components(&self) -> usize {
        let mut uf = layout::RollbackUnionFind::new(self.num_vertices());
        for (d, &e) in self.matching.iter().enumerate() {
            uf.union(d / 4, e / 4);
        }
        uf.components
    }

    /// `V - E + F` with `E = 2V`.
    pub fn euler_characteristic(&self) -> i64 {
        self.faces() as i64 - self.num_vertices() as i64
    }

    /// Sum of the genera of the components.
    pub fn genus(&self) -> usize {
        (2 * self.components() as i64 - self.euler_characteristic()) as usize / 2
    }

    pub fn cell(&self) -> Cell {
        Cell {
            genus: self.genus(),
            strands: self.strands(),
            connected: self.components() == 1,
        }
    }

    /// Moves vertex `v` to `perm[v]` and turns its legs by `turns[v]` steps.
    /// Turns must preserve the vertex pattern.
    pub fn relabel(&self, perm: &[usize], turns: &[usize]) -> Result<Self, OracleError> {
        let n = self.num_vertices();
        let mut types = vec![VertexType::Crossing; n];
        for v in 0..n {
            let t = self.vertex_types[v];
            if !turns[v].is_multiple_of(4 / t.symmetry() as usize) {
                return Err(OracleError::InvalidPairing(format!(
                    "turn {} breaks the {} pattern",
                    turns[v],
                    t.pattern()
                )));
            }
            types[perm[v]] = t;
        }
        let map = |d: usize| 4 * perm[d / 4] + (d % 4 + turns[d / 4]) % 4;
        let mut matching = vec![0; 4 * n];
        for (d, &e) in self.matching.iter().enumerate() {
            matching[map(d)] = map(e);
        }
        PairingDiagram::new(types, matching)
    }
}

/// Exact labeled counts for one distribution of vertex kinds.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CountTable {
    pub type_counts: Vec<(VertexType, usize)>,
    pub boundary: Boundary,
    pub mode: Mode,
    pub cells: BTreeMap<Cell, u128>,
}

impl CountTable {
    pub fn vertices(&self) -> usize {
        self.type_counts.iter().map(|(_, c)| c).sum()
    }

    pub fn total(&self) -> u128 {
        self.cells.values().sum()
    }

    pub fn get(&self, genus: usize, strands: usize, connected: bool) -> u128 {
        self.cells
            .get(&Cell {
                genus,
                strands,
                connected,
            })
            .copied()
            .unwrap_or(0)
    }

    /// Connected genus-zero counts indexed by number of strands.
    pub fn connected_planar(&self) -> BTreeMap<usize, u128> {
        self.cells
            .iter()
            .filter(|(c, _)| c.genus == 0 && c.connected)
            .map(|(c, &n)| (c.strands, n))
            .collect()
    }

    /// `Π_T s_T^{V_T} V_T!`, the labeling weight of this vertex content.
    pub fn symmetry_factor(&self) -> BigInt {
        symmetry_factor(&self.type_counts)
    }

    pub fn type_counts_label(&self) -> String {
        self.type_counts
            .iter()
            .map(|(t, c)| format!("{}:{c}", t.name()))
            .collect::<Vec<_>>()
            .join(";")
    }
}

fn symmetry_factor(type_counts: &[(VertexType, usize)]) -> BigInt {
    type_counts.iter().fold(BigInt::one(), |acc, &(t, c)| {
        acc * BigInt::from(t.symmetry()).pow(c as u32) * factorial(c as u64)
    })
}

/// CSV with columns `V, vertex_type_counts, genus, strands, connected, count`.
pub fn write_csv<W: Write>(tables: &[CountTable], out: W) -> Result<(), OracleError> {
    let mut w = csv::Writer::from_writer(out);
    let err = |e: csv::Error| OracleError::Csv(e.to_string());
    w.write_record(["V", "vertex_type_counts", "genus", "strands", "connected", "count"])
        .map_err(err)?;
    for t in tables {
        for (cell, count) in &t.cells {
            w.write_record([
                t.vertices().to_string(),
                t.type_counts_label(),
                cell.genus.to_string(),
                cell.strands.to_string(),
                cell.connected.to_string(),
                count.to_string(),
            ])
            .map_err(err)?;
        }
    }
    w.flush().map_err(|e| OracleError::Csv(e.to_string()))
}

impl fmt::Display for CountTable {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "V = {} ({})", self.vertices(), self.type_counts_label())?;
        for (c, n) in &self.cells {
            writeln!(
                f,
                "  h={} k={} {}: {n}",
                c.genus,
                c.strands,
                if c.connected { "connected" } else { "disconnected" }
            )?;
        }
        Ok(())
    }
}

/// Enumeration front end: ceiling and thread count.
#[derive(Clone, Debug)]
pub struct Oracle {
    ceiling: usize,
    threads: Option<usize>,
}

impl Default for Oracle {
    fn default() -> Self {
        Oracle {
            ceiling: DEFAULT_CEILING,
            threads: None,
        }
    }
}

impl Oracle {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn with_ceiling(mut self, ceiling: usize) -> Self {
        self.ceiling = ceiling;
        self
    }

    pub fn with_threads(mut self, threads: usize) -> Self {
        self.threads = Some(threads.max(1));
        self
    }

    pub fn ceiling(&self) -> usize {
        self.ceiling
    }

    /// Explicit setting, else `LINKCENSUS_THREADS`, else hardware parallelism.
    pub fn threads(&self) -> Result<usize, OracleError> {
        if let Some(t) = self.threads {
            return Ok(t);
        }
        match std::env::var(THREADS_ENV) {
            Ok(s) => match s.trim().parse::<usize>() {
                Ok(t) if t > 0 => Ok(t),
                _ => Err(OracleError::Threads(s)),
            },
            Err(_) => Ok(std::thread::available_parallelism().map_or(1, |n| n.get())),
        }
    }

    fn pool(&self) -> Result<rayon::ThreadPool, OracleError> {
        rayon::ThreadPoolBuilder::new()
            .num_threads(self.threads()?)
            .build()
            .map_err(|e| OracleError::Pool(e.to_string()))
    }

    fn check(&self, v: usize) -> Result<(), OracleError> {
        if v > self.ceiling {
            return Err(OracleError::AboveCeiling {
                v,
                ceiling: self.ceiling,
            });
        }
        Ok(())
    }

    /// Counts for a fixed number of vertices of each kind.
    pub fn count(
        &self,
        type_counts: &[(VertexType, usize)],
        boundary: Boundary,
        mode: Mode,
    ) -> Result<CountTable, OracleError> {
        let v: usize = type_counts.iter().map(|(_, c)| c).sum();
        self.check(v)?;
        let cells = match mode {
            Mode::All | Mode::Planar => {
                let types: Vec<VertexType> = type_counts
                    .iter()
                    .flat_map(|&(t, c)| std::iter::repeat_n(t, c))
                    .collect();
                let layout = Layout::new(&types, boundary);
                let edges = layout.darts() / 2;
                let raw = labeled::enumerate(&layout, mode == Mode::Planar, &self.pool()?);
                let mut cells = BTreeMap::new();
                for ((faces, psi, comps), n) in raw {
                    let chi = layout.num_vertices as i64 - edges as i64 + faces as i64;
                    let genus = (2 * comps as i64 - chi) / 2;
                    *cells
                        .entry(Cell {
                            genus: genus as usize,
                            strands: psi / 2,
                            connected: comps == 1,
                        })
                        .or_default() += n;
                }
                cells
            }
            Mode::ConnectedPlanar => {
                let types: Vec<VertexType> = type_counts.iter().map(|&(t, _)| t).collect();
                let counts: Vec<usize> = type_counts.iter().map(|&(_, c)| c).collect();
                let canonical = rooted::generate(&types, &counts, boundary);
                let mut factor = symmetry_factor(type_counts);
                if boundary == Boundary::Closed {
                    if let Some(&(t0, c0)) = type_counts.iter().find(|(_, c)| *c > 0) {
                        factor /= BigInt::from(t0.symmetry() * c0 as u64);
                    }
                }
                let factor: u128 = factor.try_into().expect("labeling factor fits in u128");
                canonical
                    .into_iter()
                    .map(|(psi, n)| {
                        (
                            Cell {
                                genus: 0,
                                strands: psi / 2,
                                connected: true,
                            },
                            n * factor,
                        )
                    })
                    .collect()
            }
        };
        Ok(CountTable {
            type_counts: type_counts.to_vec(),
            boundary,
            mode,
            cells,
        })
    }

    /// One table per distribution of `v` vertices over the model's kinds.
    pub fn enumerate(&self, v: usize, model: &VertexModel, mode: Mode) -> Result<Vec<CountTable>, OracleError> {
        self.check(v)?;
        model
            .compositions(v)
            .into_iter()
            .map(|tc| self.count(&tc, Boundary::Closed, mode))
            .collect()
    }

    /// Planar free-energy coefficient of `g^V` for single-kind vertices, as a
    /// polynomial in `n`: `Σ_k c_k n^k / (4^V V!)`.
    pub fn free_energy_poly(&self, type_counts: &[(VertexType, usize)]) -> Result<Poly, OracleError> {
        let table = self.count(type_counts, Boundary::Closed, Mode::ConnectedPlanar)?;
        Ok(free_energy_coeffs(&table))
    }

    /// `F(n, g) = Σ_V f_V(n) g^V` with crossing vertices only, `f_0 = 0`.
    pub fn free_energy_series(&self, vmax: usize, n: &Q) -> Result<Series, OracleError> {
        let mut coeffs = vec![Q::zero()];
        for v in 1..=vmax {
            coeffs.push(self.free_energy_poly(&[(VertexType::Crossing, v)])?.eval(n));
        }
        Ok(Series::new(coeffs))
    }

    /// Coefficient of `g^V` in `G₂ = ⟨tr M²⟩/N` as a polynomial in `n`. The
    /// strand through the marked insertion keeps its colour: weight `n^{k-1}`.
    pub fn g2_poly(&self, v: usize) -> Result<Poly, OracleError> {
        let table = self.count(&[(VertexType::Crossing, v)], Boundary::TwoLegs, Mode::ConnectedPlanar)?;
        let w = Q::from_integer(table.symmetry_factor());
        let mut c = vec![Q::zero(); 2 * v + 2];
        for (k, count) in table.connected_planar() {
            c[k - 1] += Q::from_integer(BigInt::from(count)) / &w;
        }
        Ok(Poly::new(c))
    }

    pub fn g2_series(&self, vmax: usize, n: &Q) -> Result<Series, OracleError> {
        (0..=vmax)
            .map(|v| Ok(self.g2_poly(v)?.eval(n)))
            .collect::<Result<Vec<_>, _>>()
            .map(Series::new)
    }

    /// `G₄ = ⟨tr M⁴⟩/N` for the single-colour model.
    pub fn g4_series(&self, vmax: usize) -> Result<Series, OracleError> {
        (0..=vmax)
            .map(|v| {
                let table = self.count(&[(VertexType::Crossing, v)], Boundary::FourLegs, Mode::ConnectedPlanar)?;
                let total: u128 = table.connected_planar().values().sum();
                Ok(Q::new(BigInt::from(total), table.symmetry_factor()))
            })
            .collect::<Result<Vec<_>, OracleError>>()
            .map(Series::new)
    }

    /// Connected four-point function `Γ = G₄ - 2G₂²`.
    pub fn gamma_series(&self, vmax: usize) -> Result<Series, OracleError> {
        let g2 = self.g2_series(vmax, &q(1))?;
        Ok(&self.g4_series(vmax)? - &(&g2 * &g2).scale(&q(2)))
    }
}

/// `Σ_k c_k n^k / Π_T s_T^{V_T} V_T!` over connected planar cells.
pub fn free_energy_coeffs(table: &CountTable) -> Poly {
    let w = Q::from_integer(table.symmetry_factor());
    let planar = table.connected_planar();
    let top = planar.keys().max().copied().unwrap_or(0);
    let mut c = vec![Q::zero(); top + 1];
    for (k, count) in planar {
        c[k] += Q::from_integer(BigInt::from(count)) / &w;
    }
    Poly::new(c)
}

/// Normalization `t(g)` enforcing `G₂(t, g) = 1`, from the series of
/// `G₂(1, g)`: iterates `t ← G₂(1, g/t²)`, gaining one order per pass.
pub fn normalization(g2: &Series) -> Result<Series, SeriesError> {
    let order = g2.order();
    let g = Series::var(order);
    let mut t = Series::one(order);
    for _ in 0..=order {
        let next = g2.compose(&g.div(&(&t * &t))?)?;
        if next == t {
            break;
        }
        t = next;
    }
    Ok(t)
}

/// `X(t(g), g) = X(1, g/t²)/t^{power}` for a series `X(1, g)`.
pub fn rescale(x: &Series, t: &Series, power: u32) -> Result<Series, SeriesError> {
    let g = Series::var(x.order());
    x.compose(&g.div(&(t * t))?)?.div(&t.pow(power))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::{double_factorial_odd, frac};

    fn oracle() -> Oracle {
        Oracle::new().with_threads(1)
    }

    #[test]
    fn single_vertex_table() {
        let t = oracle()
            .count(&[(VertexType::Crossing, 1)], Boundary::Closed, Mode::All)
            .unwrap();
        assert_eq!(t.get(0, 1, true), 2);
        assert_eq!(t.get(1, 2, true), 1);
        assert_eq!(t.total(), 3);
    }

    #[test]
    fn double_factorial_small() {
        for v in 1..=3 {
            let t = oracle()
                .count(&[(VertexType::Crossing, v)], Boundary::Closed, Mode::All)
                .unwrap();
            assert_eq!(BigInt::from(t.total()), double_factorial_odd(4 * v as u64 - 1));
        }
    }

    #[test]
    fn three_routes_agree() {
        let o = oracle();
        for tc in VertexModel::two_types().compositions(3) {
            let all = o.count(&tc, Boundary::Closed, Mode::All).unwrap();
            let planar = o.count(&tc, Boundary::Closed, Mode::Planar).unwrap();
            let rooted = o.count(&tc, Boundary::Closed, Mode::ConnectedPlanar).unwrap();
            let genus0 = |t: &CountTable| -> BTreeMap<Cell, u128> {
                t.cells.iter().filter(|(c, _)| c.genus == 0).map(|(c, n)| (*c, *n)).collect()
            };
            assert_eq!(genus0(&all), planar.cells);
            assert_eq!(all.connected_planar(), rooted.connected_planar());
        }
        for b in [Boundary::TwoLegs, Boundary::FourLegs] {
            for v in 0..=2 {
                let tc = [(VertexType::Crossing, v)];
                let all = o.count(&tc, b, Mode::All).unwrap();
                let rooted = o.count(&tc, b, Mode::ConnectedPlanar).unwrap();
                assert_eq!(all.connected_planar(), rooted.connected_planar());
            }
        }
    }

    #[test]
    fn free_energy_first_terms() {
        let o = oracle();
        assert_eq!(
            o.free_energy_poly(&[(VertexType::Crossing, 1)]).unwrap(),
            Poly::new(vec![q(0), frac(1, 2)])
        );
        let f = o.free_energy_series(3, &q(1)).unwrap();
        assert_eq!(f.coeffs(), &[q(0), frac(1, 2), frac(9, 8), frac(9, 2)]);
        let g2 = o.g2_series(3, &q(1)).unwrap();
        assert_eq!(g2, Series::from_ints(&[1, 2, 9, 54]));
        let gamma = o.gamma_series(2).unwrap();
        assert_eq!(gamma, Series::from_ints(&[0, 1, 10]));
    }

    #[test]
    fn reduced_tangles_from_counts() {
        let o = oracle();
        let t = normalization(&o.g2_series(3, &q(1)).unwrap()).unwrap();
        assert_eq!(t, Series::from_ints(&[1, 2, 1, 2]));
        let gamma = rescale(&o.gamma_series(3).unwrap(), &t, 2).unwrap();
        assert_eq!(gamma, Series::from_ints(&[0, 1, 2, 6]));
    }

    #[test]
    fn tangency_weight() {
        // At n = 1 both kinds are the same vertex, with h/2 against g/4.
        let o = oracle();
        let f = o.free_energy_series(3, &q(1)).unwrap();
        for tc in VertexModel::two_types().compositions(3) {
            let (v, w) = (tc[0].1, tc[1].1);
            let c = o.free_energy_poly(&tc).unwrap().eval(&q(1));
            let binom = factorial(3) / (factorial(v as u64) * factorial(w as u64));
            let expected = f.coeff(3) * Q::from_integer(binom * BigInt::from(2).pow(w as u32));
            assert_eq!(c, expected, "{tc:?}");
        }
    }

    #[test]
    fn ceiling_and_threads() {
        let o = Oracle::new().with_ceiling(2);
        assert!(matches!(
            o.count(&[(VertexType::Crossing, 3)], Boundary::Closed, Mode::All),
            Err(OracleError::AboveCeiling { v: 3, ceiling: 2 })
        ));
        assert_eq!(Oracle::new().with_threads(3).threads().unwrap(), 3);
    }

    #[test]
    fn diagram_invariants() {
        // Figure-eight on one vertex and its non-planar sibling.
        let d = PairingDiagram::new(vec![VertexType::Crossing], vec![1, 0, 3, 2]).unwrap();
        assert_eq!(d.cell(), Cell { genus: 0, strands: 1, connected: true });
        let d = PairingDiagram::new(vec![VertexType::Crossing], vec![2, 3, 0, 1]).unwrap();
        assert_eq!(d.cell(), Cell { genus: 1, strands: 2, connected: true });
        assert!(PairingDiagram::new(vec![VertexType::Crossing], vec![0, 2, 1, 3]).is_err());
        let t = PairingDiagram::new(vec![VertexType::Tangency], vec![1, 0, 3, 2]).unwrap();
        assert!(t.relabel(&[0], &[1]).is_err());
        assert_eq!(t.relabel(&[0], &[2]).unwrap().cell(), t.cell());
    }
}
