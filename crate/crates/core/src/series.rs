//! Truncated formal power series with exact rational coefficients.
//!
//! A [`Series`] of order `n` knows the coefficients of `g^0 … g^n`. Every
//! binary operation truncates to the smaller order of its operands, so
//! precision is never invented. Algebraic series are obtained from an
//! [`AlgebraicSystem`] by Newton iteration.

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_traits::{One, Zero};
use serde::{Deserialize, Deserializer, Serialize, Serializer};
use thiserror::Error;

use crate::poly::{BiPoly, Poly};
use crate::rational::{parse_rational, q, rational_sqrt, to_pq, Q};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum SeriesError {
    #[error("division by a series with zero constant term")]
    ZeroConstantDivisor,
    #[error("composition needs an inner series with zero constant term, found {0}")]
    NonzeroInnerConstant(String),
    #[error("reversion needs s(0) = 0 and s'(0) != 0")]
    NotInvertible,
    #[error("constant term {0} is not the square of a rational")]
    NotASquare(String),
    #[error("logarithm needs constant term 1, found {0}")]
    LogConstant(String),
    #[error("branch point {branch} does not satisfy P(0, y) = 0 (residual {residual})")]
    NotOnCurve { branch: String, residual: String },
    #[error("singular Jacobian: dP/dy vanishes at (g, y) = (0, {0})")]
    SingularJacobian(String),
    #[error("Newton iteration did not reach a zero residual after {0} steps")]
    NoConvergence(usize),
    #[error("malformed series: {0}")]
    Malformed(String),
}

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Series {
    coeffs: Vec<Q>,
    var: String,
}

impl Series {
    /// Builds a series of order `coeffs.len() - 1`. An empty vector gives the
    /// zero series of order 0.
    pub fn new(mut coeffs: Vec<Q>) -> Self {
        if coeffs.is_empty() {
            coeffs.push(Q::zero());
        }
        Series {
            coeffs,
            var: "g".to_string(),
        }
    }

    pub fn from_ints(c: &[i64]) -> Self {
        Series::new(c.iter().map(|&v| q(v)).collect())
    }

    pub fn zero(order: usize) -> Self {
        Series::new(vec![Q::zero(); order + 1])
    }

    pub fn constant(c: Q, order: usize) -> Self {
        let mut s = Series::zero(order);
        s.coeffs[0] = c;
        s
    }

    pub fn one(order: usize) -> Self {
        Series::constant(Q::one(), order)
    }

    /// The variable itself, `g + O(g^{order+1})`.
    pub fn var(order: usize) -> Self {
        let mut s = Series::zero(order);
        if order >= 1 {
            s.coeffs[1] = Q::one();
        }
        s
    }

    /// Truncation of a polynomial.
    pub fn from_poly(p: &Poly, order: usize) -> Self {
        Series::new((0..=order).map(|i| p.coeff(i)).collect())
    }

    pub fn with_var(mut self, var: &str) -> Self {
        self.var = var.to_string();
        self
    }

    pub fn var_name(&self) -> &str {
        &self.var
    }

    pub fn order(&self) -> usize {
        self.coeffs.len() - 1
    }

    pub fn coeffs(&self) -> &[Q] {
        &self.coeffs
    }

    pub fn coeff(&self, i: usize) -> &Q {
        &self.coeffs[i]
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(Zero::is_zero)
    }

    /// Index of the first nonzero coefficient, if any.
    pub fn valuation(&self) -> Option<usize> {
        self.coeffs.iter().position(|c| !c.is_zero())
    }

    pub fn truncate(&self, order: usize) -> Series {
        let order = order.min(self.order());
        Series {
            coeffs: self.coeffs[..=order].to_vec(),
            var: self.var.clone(),
        }
    }

    fn same_var(&self, coeffs: Vec<Q>) -> Series {
        Series {
            coeffs,
            var: self.var.clone(),
        }
    }

    pub fn scale(&self, c: &Q) -> Series {
        self.same_var(self.coeffs.iter().map(|a| a * c).collect())
    }

    pub fn add_constant(&self, c: &Q) -> Series {
        let mut out = self.clone();
        out.coeffs[0] += c;
        out
    }

    /// Multiplicative inverse; requires a nonzero constant term.
    pub fn recip(&self) -> Result<Series, SeriesError> {
        let c0 = &self.coeffs[0];
        if c0.is_zero() {
            return Err(SeriesError::ZeroConstantDivisor);
        }
        let inv0 = c0.recip();
        let n = self.order();
        let mut r = vec![Q::zero(); n + 1];
        r[0] = inv0.clone();
        for k in 1..=n {
            let mut acc = Q::zero();
            for i in 1..=k {
                acc += &self.coeffs[i] * &r[k - i];
            }
            r[k] = -acc * &inv0;
        }
        Ok(self.same_var(r))
    }

    pub fn div(&self, rhs: &Series) -> Result<Series, SeriesError> {
        let n = self.order().min(rhs.order());
        Ok(&self.truncate(n) * &rhs.truncate(n).recip()?)
    }

    pub fn pow(&self, e: u32) -> Series {
        let mut acc = Series::one(self.order()).with_var(&self.var);
        for _ in 0..e {
            acc = &acc * self;
        }
        acc
    }

    /// `outer(inner(g))`, truncated at the smaller order.
    pub fn compose(&self, inner: &Series) -> Result<Series, SeriesError> {
        if !inner.coeffs[0].is_zero() {
            return Err(SeriesError::NonzeroInnerConstant(to_pq(&inner.coeffs[0])));
        }
        let n = self.order().min(inner.order());
        let inner = inner.truncate(n);
        let mut acc = Series::zero(n).with_var(&inner.var);
        for c in self.coeffs[..=n].iter().rev() {
            acc = (&acc * &inner).add_constant(c);
        }
        Ok(acc)
    }

    /// Compositional inverse `r` with `self(r(g)) = g`.
    pub fn reversion(&self) -> Result<Series, SeriesError> {
        if !self.coeffs[0].is_zero() || self.order() < 1 || self.coeffs[1].is_zero() {
            return Err(SeriesError::NotInvertible);
        }
        // Solve Σ_j s_j y^j - g = 0 around y = 0.
        let mut rel: Vec<Poly> = self
            .coeffs
            .iter()
            .map(|c| Poly::constant(c.clone()))
            .collect();
        rel[0] = Poly::from_ints(&[0, -1]);
        let sys = AlgebraicSystem::new(BiPoly::new(rel), Q::zero())?;
        Ok(sys.solve(self.order())?.with_var(&self.var))
    }

    /// Square root with positive constant term.
    pub fn sqrt(&self) -> Result<Series, SeriesError> {
        let r0 = rational_sqrt(&self.coeffs[0])
            .filter(|r| !r.is_zero())
            .ok_or_else(|| SeriesError::NotASquare(to_pq(&self.coeffs[0])))?;
        let n = self.order();
        let two_r0_inv = (q(2) * &r0).recip();
        let mut r = vec![Q::zero(); n + 1];
        r[0] = r0;
        for k in 1..=n {
            let mut acc = self.coeffs[k].clone();
            for i in 1..k {
                acc -= &r[i] * &r[k - i];
            }
            r[k] = acc * &two_r0_inv;
        }
        Ok(self.same_var(r))
    }

    pub fn derivative(&self) -> Series {
        if self.order() == 0 {
            return self.same_var(vec![Q::zero()]);
        }
        self.same_var(
            self.coeffs
                .iter()
                .enumerate()
                .skip(1)
                .map(|(i, c)| c * q(i as i64))
                .collect(),
        )
    }

    /// Term-by-term antiderivative with zero constant. The result is one order
    /// higher, since every coefficient of the integral is known.
    pub fn integrate(&self) -> Series {
        let mut out = Vec::with_capacity(self.coeffs.len() + 1);
        out.push(Q::zero());
        out.extend(
            self.coeffs
                .iter()
                .enumerate()
                .map(|(i, c)| c / q(i as i64 + 1)),
        );
        self.same_var(out)
    }

    /// `log(s)` for `s(0) = 1`.
    pub fn log(&self) -> Result<Series, SeriesError> {
        if !self.coeffs[0].is_one() {
            return Err(SeriesError::LogConstant(to_pq(&self.coeffs[0])));
        }
        if self.order() == 0 {
            return Ok(self.same_var(vec![Q::zero()]));
        }
        let quotient = self.derivative().div(&self.truncate(self.order() - 1))?;
        Ok(quotient.integrate())
    }

    /// Divides by `g^k`, dropping `k` known coefficients. The first `k`
    /// coefficients must vanish.
    pub fn shift_down(&self, k: usize) -> Result<Series, SeriesError> {
        if self.coeffs.iter().take(k).any(|c| !c.is_zero()) || k > self.order() {
            return Err(SeriesError::ZeroConstantDivisor);
        }
        Ok(self.same_var(self.coeffs[k..].to_vec()))
    }

    /// Multiplies by `g^k` keeping the order.
    pub fn shift_up(&self, k: usize) -> Series {
        let n = self.order();
        let mut out = vec![Q::zero(); n + 1];
        if k <= n {
            out[k..].clone_from_slice(&self.coeffs[..=n - k]);
        }
        self.same_var(out)
    }
}

impl fmt::Display for Series {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut first = true;
        for (i, c) in self.coeffs.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            if !first {
                write!(f, " + ")?;
            }
            first = false;
            match i {
                0 => write!(f, "{}", to_pq(c))?,
                1 => write!(f, "{}·{}", to_pq(c), self.var)?,
                _ => write!(f, "{}·{}^{}", to_pq(c), self.var, i)?,
            }
        }
        if first {
            write!(f, "0")?;
        }
        write!(f, " + O({}^{})", self.var, self.order() + 1)
    }
}

fn binop(a: &Series, b: &Series, f: impl Fn(&Q, &Q) -> Q) -> Series {
    let n = a.order().min(b.order());
    a.same_var((0..=n).map(|i| f(&a.coeffs[i], &b.coeffs[i])).collect())
}

impl Add for &Series {
    type Output = Series;
    fn add(self, rhs: &Series) -> Series {
        binop(self, rhs, |x, y| x + y)
    }
}

impl Sub for &Series {
    type Output = Series;
    fn sub(self, rhs: &Series) -> Series {
        binop(self, rhs, |x, y| x - y)
    }
}

impl Neg for &Series {
    type Output = Series;
    fn neg(self) -> Series {
        self.same_var(self.coeffs.iter().map(|c| -c).collect())
    }
}

impl Mul for &Series {
    type Output = Series;
    fn mul(self, rhs: &Series) -> Series {
        let n = self.order().min(rhs.order());
        let mut out = vec![Q::zero(); n + 1];
        for (i, a) in self.coeffs[..=n].iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in rhs.coeffs[..=n - i].iter().enumerate() {
                if !b.is_zero() {
                    out[i + j] += a * b;
                }
            }
        }
        self.same_var(out)
    }
}

macro_rules! forward_owned {
    ($tr:ident, $m:ident) => {
        impl $tr for Series {
            type Output = Series;
            fn $m(self, rhs: Series) -> Series {
                (&self).$m(&rhs)
            }
        }
    };
}
forward_owned!(Add, add);
forward_owned!(Sub, sub);
forward_owned!(Mul, mul);

#[derive(Serialize, Deserialize)]
struct SeriesJson {
    var: String,
    order: usize,
    coeffs: Vec<String>,
}

impl Serialize for Series {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        SeriesJson {
            var: self.var.clone(),
            order: self.order(),
            coeffs: self.coeffs.iter().map(to_pq).collect(),
        }
        .serialize(serializer)
    }
}

impl<'de> Deserialize<'de> for Series {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> Result<Self, D::Error> {
        use serde::de::Error;
        let raw = SeriesJson::deserialize(deserializer)?;
        if raw.coeffs.len() != raw.order + 1 {
            return Err(D::Error::custom(SeriesError::Malformed(format!(
                "order {} needs {} coefficients, found {}",
                raw.order,
                raw.order + 1,
                raw.coeffs.len()
            ))));
        }
        let coeffs = raw
            .coeffs
            .iter()
            .map(|s| parse_rational(s))
            .collect::<Result<Vec<_>, _>>()
            .map_err(D::Error::custom)?;
        Ok(Series::new(coeffs).with_var(&raw.var))
    }
}

/// Evaluates `P(g, y(g))` as a series, with `g` the series variable.
pub fn eval_bipoly(p: &BiPoly, y: &Series) -> Series {
    let n = y.order();
    p.coeffs()
        .iter()
        .rev()
        .fold(Series::zero(n), |acc, c| &(&acc * y) + &Series::from_poly(c, n))
}

/// A branch `y(g)` of the curve `P(g, y) = 0`, selected by `y(0)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AlgebraicSystem {
    relation: BiPoly,
    branch_point: Q,
}

impl AlgebraicSystem {
    /// Checks `P(0, b) = 0` and `∂P/∂y (0, b) ≠ 0`.
    pub fn new(relation: BiPoly, branch_point: Q) -> Result<Self, SeriesError> {
        let residual = relation.eval(&Q::zero(), &branch_point);
        if !residual.is_zero() {
            return Err(SeriesError::NotOnCurve {
                branch: to_pq(&branch_point),
                residual: to_pq(&residual),
            });
        }
        if relation
            .derivative_y()
            .eval(&Q::zero(), &branch_point)
            .is_zero()
        {
            return Err(SeriesError::SingularJacobian(to_pq(&branch_point)));
        }
        Ok(AlgebraicSystem {
            relation,
            branch_point,
        })
    }

    pub fn relation(&self) -> &BiPoly {
        &self.relation
    }

    pub fn branch_point(&self) -> &Q {
        &self.branch_point
    }

    /// The unique series `y` with `y(0) = branch_point` and
    /// `P(g, y) = O(g^{order+1})`.
    pub fn solve(&self, order: usize) -> Result<Series, SeriesError> {
        newton_solve(self, order)
    }
}

/// Newton iteration `y ← y − P(g,y)/P_y(g,y)` on truncated series. The
/// residual is verified to vanish to the requested order before returning.
pub fn newton_solve(sys: &AlgebraicSystem, order: usize) -> Result<Series, SeriesError> {
    let dp = sys.relation.derivative_y();
    let mut y = Series::constant(sys.branch_point.clone(), order);
    // Quadratic convergence: correct digits double each step.
    let max_steps = 2 * (usize::BITS - order.leading_zeros()) as usize + 4;
    for _ in 0..max_steps {
        let residual = eval_bipoly(&sys.relation, &y);
        if residual.is_zero() {
            return Ok(y);
        }
        let slope = eval_bipoly(&dp, &y);
        y = &y - &residual.div(&slope)?;
    }
    if eval_bipoly(&sys.relation, &y).is_zero() {
        Ok(y)
    } else {
        Err(SeriesError::NoConvergence(max_steps))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::frac;

    fn s(c: &[i64]) -> Series {
        Series::from_ints(c)
    }

    #[test]
    fn ring_examples() {
        assert_eq!(&s(&[1, 1, 0]) * &s(&[1, -1, 0]), s(&[1, 0, -1]));
        assert_eq!(s(&[1, 0, 0, 0]).div(&s(&[1, -1, 0, 0])).unwrap(), s(&[1, 1, 1, 1]));
        // long division by hand: (1 + 2g + 9g^2)/(1 + g) = 1 + g + 8g^2
        assert_eq!(s(&[1, 2, 9]).div(&s(&[1, 1, 0])).unwrap(), s(&[1, 1, 8]));
        assert_eq!(
            s(&[1, 2]).div(&s(&[0, 1])),
            Err(SeriesError::ZeroConstantDivisor)
        );
    }

    #[test]
    fn truncation_takes_min_order() {
        let p = &s(&[1, 1, 1, 1, 1]) + &s(&[1, 1]);
        assert_eq!(p.order(), 1);
        let p = &s(&[1, 1, 1, 1, 1]) * &s(&[1, 1, 1]);
        assert_eq!(p, s(&[1, 2, 3]));
    }

    #[test]
    fn composition_examples() {
        let g = Series::var(4);
        assert_eq!(s(&[0, 1, 1, 0, 0]).compose(&g).unwrap(), s(&[0, 1, 1, 0, 0]));
        let geometric = s(&[1, 1, 1, 1, 1]);
        assert_eq!(geometric.compose(&s(&[0, 0, 1, 0, 0])).unwrap(), s(&[1, 0, 1, 0, 1]));
        assert!(matches!(
            geometric.compose(&s(&[1, 1, 0, 0, 0])),
            Err(SeriesError::NonzeroInnerConstant(_))
        ));
    }

    #[test]
    fn reversion_examples() {
        assert_eq!(Series::var(5).reversion().unwrap(), Series::var(5));
        // g - g^2 inverts to the Catalan generating function shifted by one.
        assert_eq!(s(&[0, 1, -1, 0, 0]).reversion().unwrap(), s(&[0, 1, 1, 2, 5]));
        let x = s(&[0, 1, 3, 1, 0, 0, 0, 0]);
        let r = x.reversion().unwrap();
        assert_eq!(x.compose(&r).unwrap(), Series::var(7));
        assert_eq!(s(&[1, 1]).reversion(), Err(SeriesError::NotInvertible));
        assert_eq!(s(&[0, 0, 1]).reversion(), Err(SeriesError::NotInvertible));
    }

    #[test]
    fn sqrt_examples() {
        // binomial expansion of (1 - 12 g)^{1/2}
        assert_eq!(s(&[1, -12, 0, 0]).sqrt().unwrap(), s(&[1, -6, -18, -108]));
        assert_eq!(s(&[1]).sqrt().unwrap(), s(&[1]));
        let x = s(&[1, 1, 1, 0, 0, 0, 0]);
        let r = x.sqrt().unwrap();
        assert_eq!(&r * &r, x);
        assert_eq!(
            Series::new(vec![frac(9, 4), q(1)]).sqrt().unwrap().coeff(0),
            &frac(3, 2)
        );
        assert!(matches!(s(&[2, 1]).sqrt(), Err(SeriesError::NotASquare(_))));
        assert!(matches!(s(&[0, 1]).sqrt(), Err(SeriesError::NotASquare(_))));
    }

    #[test]
    fn log_and_integrate() {
        // log(1/(1-g)) = g + g^2/2 + g^3/3
        let l = s(&[1, 1, 1, 1]).log().unwrap();
        assert_eq!(l.coeffs(), &[q(0), q(1), frac(1, 2), frac(1, 3)]);
        assert_eq!(s(&[1, 2, 3]).integrate(), s(&[0, 1, 1, 1]));
        assert!(s(&[2, 1]).log().is_err());
    }

    #[test]
    fn newton_examples() {
        // y^2 - (1 + g), branch 1
        let p = BiPoly::from_terms(&[(0, 2, 1), (0, 0, -1), (1, 0, -1)]);
        let y = AlgebraicSystem::new(p, q(1)).unwrap().solve(2).unwrap();
        assert_eq!(y.coeffs(), &[q(1), frac(1, 2), frac(-1, 8)]);
        assert_eq!(y, s(&[1, 1, 0]).sqrt().unwrap());

        // y - g (1 + y)^2, branch 0: shifted Catalan numbers
        let p = BiPoly::from_terms(&[(0, 1, 1), (1, 0, -1), (1, 1, -2), (1, 2, -1)]);
        let y = AlgebraicSystem::new(p, q(0)).unwrap().solve(4).unwrap();
        assert_eq!(y, s(&[0, 1, 2, 5, 14]));

        // 27 g - (y - 1)(4 - y)^2, branch 1
        let p = BiPoly::from_terms(&[(1, 0, 27), (0, 0, 16), (0, 1, -24), (0, 2, 9), (0, 3, -1)]);
        let y = AlgebraicSystem::new(p, q(1)).unwrap().solve(3).unwrap();
        assert_eq!(y, s(&[1, 3, 6, 21]));
    }

    #[test]
    fn algebraic_system_validation() {
        let p = BiPoly::from_terms(&[(0, 2, 1), (0, 0, -1), (1, 0, -1)]);
        assert!(matches!(
            AlgebraicSystem::new(p.clone(), q(2)),
            Err(SeriesError::NotOnCurve { .. })
        ));
        // y^2 - g has a double root at the origin.
        let p = BiPoly::from_terms(&[(0, 2, 1), (1, 0, -1)]);
        assert_eq!(
            AlgebraicSystem::new(p, q(0)),
            Err(SeriesError::SingularJacobian("0/1".into()))
        );
    }

    #[test]
    fn json_schema() {
        let x = Series::new(vec![q(1), frac(-3, 2), q(0)]);
        let text = serde_json::to_string(&x).unwrap();
        assert_eq!(text, r#"{"var":"g","order":2,"coeffs":["1/1","-3/2","0/1"]}"#);
        let back: Series = serde_json::from_str(r#"{"var":"g","order":2,"coeffs":["1","-3/2","0"]}"#).unwrap();
        assert_eq!(back, x);
        assert!(serde_json::from_str::<Series>(r#"{"var":"g","order":3,"coeffs":["1"]}"#).is_err());
        assert!(serde_json::from_str::<Series>(r#"{"var":"g","order":0,"coeffs":["0.5"]}"#).is_err());
    }
}
