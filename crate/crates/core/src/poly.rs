//! Exact polynomial algebra over the rationals.
//!
//! [`Poly`] is a dense univariate polynomial in `g`; [`BiPoly`] is a
//! polynomial in `y` whose coefficients are [`Poly`]s in `g`. Together they
//! carry the elimination work needed for algebraic generating functions:
//! resultants and discriminants over `Q[g]`, square-free decomposition, and
//! isolation of real roots by Sturm sequences.

use std::cmp::Ordering;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use crate::rational::{q, to_f64, Q};

/// Dense polynomial with rational coefficients, lowest degree first.
/// The coefficient vector never carries trailing zeros.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Default)]
pub struct Poly {
    coeffs: Vec<Q>,
}

impl Poly {
    pub fn zero() -> Self {
        Poly { coeffs: Vec::new() }
    }

    pub fn one() -> Self {
        Poly::constant(Q::one())
    }

    pub fn constant(c: Q) -> Self {
        Poly::new(vec![c])
    }

    /// The monomial `x`.
    pub fn x() -> Self {
        Poly::new(vec![Q::zero(), Q::one()])
    }

    pub fn new(mut coeffs: Vec<Q>) -> Self {
        while coeffs.last().is_some_and(Zero::is_zero) {
            coeffs.pop();
        }
        Poly { coeffs }
    }

    pub fn from_ints(c: &[i64]) -> Self {
        Poly::new(c.iter().map(|&v| q(v)).collect())
    }

    pub fn coeffs(&self) -> &[Q] {
        &self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn coeff(&self, i: usize) -> Q {
        self.coeffs.get(i).cloned().unwrap_or_else(Q::zero)
    }

    /// Leading coefficient; zero for the zero polynomial.
    pub fn lc(&self) -> Q {
        self.coeffs.last().cloned().unwrap_or_else(Q::zero)
    }

    pub fn eval(&self, x: &Q) -> Q {
        self.coeffs
            .iter()
            .rev()
            .fold(Q::zero(), |acc, c| acc * x + c)
    }

    pub fn eval_f64(&self, x: f64) -> f64 {
        self.coeffs
            .iter()
            .rev()
            .fold(0.0, |acc, c| acc * x + to_f64(c))
    }

    pub fn derivative(&self) -> Poly {
        Poly::new(
            self.coeffs
                .iter()
                .enumerate()
                .skip(1)
                .map(|(i, c)| c * q(i as i64))
                .collect(),
        )
    }

    pub fn scale(&self, c: &Q) -> Poly {
        Poly::new(self.coeffs.iter().map(|a| a * c).collect())
    }

    pub fn monic(&self) -> Poly {
        if self.is_zero() {
            return Poly::zero();
        }
        self.scale(&self.lc().recip())
    }

    /// Euclidean division. Panics on division by the zero polynomial.
    pub fn div_rem(&self, d: &Poly) -> (Poly, Poly) {
        let dd = d.degree().expect("division by zero polynomial");
        let lc_inv = d.lc().recip();
        let mut rem = self.coeffs.clone();
        if rem.len() <= dd {
            return (Poly::zero(), self.clone());
        }
        let mut quo = vec![Q::zero(); rem.len() - dd];
        for k in (0..quo.len()).rev() {
            let c = &rem[k + dd] * &lc_inv;
            if !c.is_zero() {
                for (j, dc) in d.coeffs.iter().enumerate() {
                    rem[k + j] -= &c * dc;
                }
            }
            quo[k] = c;
        }
        rem.truncate(dd);
        (Poly::new(quo), Poly::new(rem))
    }

    /// Quotient of a division known to be exact.
    pub fn exact_div(&self, d: &Poly) -> Option<Poly> {
        let (quo, rem) = self.div_rem(d);
        rem.is_zero().then_some(quo)
    }

    /// Monic greatest common divisor.
    pub fn gcd(&self, other: &Poly) -> Poly {
        let (mut a, mut b) = (self.clone(), other.clone());
        while !b.is_zero() {
            let r = a.div_rem(&b).1;
            a = b;
            b = r;
        }
        a.monic()
    }

    /// Scales to integer coefficients with unit content and positive leading
    /// coefficient. Roots are unchanged.
    pub fn primitive(&self) -> Poly {
        if self.is_zero() {
            return Poly::zero();
        }
        let lcm = self
            .coeffs
            .iter()
            .fold(BigInt::one(), |acc, c| acc.lcm(c.denom()));
        let ints: Vec<BigInt> = self
            .coeffs
            .iter()
            .map(|c| (c * Q::from_integer(lcm.clone())).to_integer())
            .collect();
        let mut content = ints.iter().fold(BigInt::zero(), |acc, c| acc.gcd(c));
        if ints.last().is_some_and(|c| c.is_negative()) {
            content = -content;
        }
        Poly::new(
            ints.into_iter()
                .map(|c| Q::from_integer(c / &content))
                .collect(),
        )
    }

    /// Yun's square-free decomposition: returns `(f_i, i)` with
    /// `self = c · Π f_i^i`, each `f_i` square-free, monic and pairwise coprime.
    pub fn squarefree_decomposition(&self) -> Vec<(Poly, usize)> {
        let mut out = Vec::new();
        if self.degree().unwrap_or(0) == 0 {
            return out;
        }
        let f = self.monic();
        let df = f.derivative();
        let a0 = f.gcd(&df);
        let mut b = f.exact_div(&a0).expect("gcd divides");
        let mut c = df.exact_div(&a0).expect("gcd divides");
        let mut d = &c - &b.derivative();
        let mut i = 1;
        while b.degree().unwrap_or(0) > 0 {
            let a = b.gcd(&d);
            b = b.exact_div(&a).expect("gcd divides");
            c = d.exact_div(&a).expect("gcd divides");
            d = &c - &b.derivative();
            if a.degree().unwrap_or(0) > 0 {
                out.push((a, i));
            }
            i += 1;
        }
        out
    }

    /// Square-free part `f / gcd(f, f')`, monic.
    pub fn squarefree_part(&self) -> Poly {
        let g = self.gcd(&self.derivative());
        self.exact_div(&g).expect("gcd divides").monic()
    }

    fn sturm_sequence(&self) -> Vec<Poly> {
        let mut seq = vec![self.clone(), self.derivative()];
        loop {
            let n = seq.len();
            if seq[n - 1].is_zero() {
                seq.pop();
                break;
            }
            let r = seq[n - 2].div_rem(&seq[n - 1]).1;
            if r.is_zero() {
                break;
            }
            seq.push(-&r);
        }
        seq
    }

    fn sign_variations(seq: &[Poly], x: &Q) -> usize {
        let signs: Vec<Ordering> = seq
            .iter()
            .map(|p| p.eval(x).cmp(&Q::zero()))
            .filter(|s| *s != Ordering::Equal)
            .collect();
        signs.windows(2).filter(|w| w[0] != w[1]).count()
    }

    /// Number of distinct real roots in the half-open interval `(lo, hi]`.
    pub fn count_roots(&self, lo: &Q, hi: &Q) -> usize {
        let seq = self.sturm_sequence();
        Self::sign_variations(&seq, lo).saturating_sub(Self::sign_variations(&seq, hi))
    }

    /// Cauchy bound: every real root lies in `[-B, B]`.
    pub fn root_bound(&self) -> Q {
        let lc = self.lc().abs();
        let m = self.coeffs[..self.coeffs.len() - 1]
            .iter()
            .map(|c| c.abs() / &lc)
            .max()
            .unwrap_or_else(Q::zero);
        m + Q::one()
    }

    /// Smallest root in `(0, ∞)` of this polynomial, isolated exactly.
    pub fn smallest_positive_root(&self) -> Option<RealRoot> {
        if self.degree().unwrap_or(0) == 0 {
            return None;
        }
        let sf = self.squarefree_part();
        let seq = sf.sturm_sequence();
        let count = |a: &Q, b: &Q| {
            Self::sign_variations(&seq, a).saturating_sub(Self::sign_variations(&seq, b))
        };
        let mut lo = Q::zero();
        let mut hi = sf.root_bound();
        if count(&lo, &hi) == 0 {
            return None;
        }
        while count(&lo, &hi) > 1 {
            let mid = (&lo + &hi) / q(2);
            if count(&lo, &mid) >= 1 {
                hi = mid;
            } else {
                lo = mid;
            }
        }
        Some(RealRoot { poly: sf, lo, hi })
    }
}

impl fmt::Display for Poly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for (i, c) in self.coeffs.iter().enumerate().rev() {
            if c.is_zero() {
                continue;
            }
            let (sign, mag) = if c.is_negative() { ("-", -c) } else { ("+", c.clone()) };
            if first {
                if sign == "-" {
                    write!(f, "-")?;
                }
            } else {
                write!(f, " {sign} ")?;
            }
            first = false;
            match (i, mag.is_one()) {
                (0, _) => write!(f, "{mag}")?,
                (1, true) => write!(f, "g")?,
                (1, false) => write!(f, "{mag}*g")?,
                (_, true) => write!(f, "g^{i}")?,
                (_, false) => write!(f, "{mag}*g^{i}")?,
            }
        }
        Ok(())
    }
}

impl Add for &Poly {
    type Output = Poly;
    fn add(self, rhs: &Poly) -> Poly {
        let n = self.coeffs.len().max(rhs.coeffs.len());
        Poly::new((0..n).map(|i| self.coeff(i) + rhs.coeff(i)).collect())
    }
}

impl Sub for &Poly {
    type Output = Poly;
    fn sub(self, rhs: &Poly) -> Poly {
        let n = self.coeffs.len().max(rhs.coeffs.len());
        Poly::new((0..n).map(|i| self.coeff(i) - rhs.coeff(i)).collect())
    }
}

impl Neg for &Poly {
    type Output = Poly;
    fn neg(self) -> Poly {
        Poly::new(self.coeffs.iter().map(|c| -c).collect())
    }
}

impl Mul for &Poly {
    type Output = Poly;
    fn mul(self, rhs: &Poly) -> Poly {
        if self.is_zero() || rhs.is_zero() {
            return Poly::zero();
        }
        let mut out = vec![Q::zero(); self.coeffs.len() + rhs.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in rhs.coeffs.iter().enumerate() {
                out[i + j] += a * b;
            }
        }
        Poly::new(out)
    }
}

macro_rules! forward_owned {
    ($tr:ident, $m:ident) => {
        impl $tr for Poly {
            type Output = Poly;
            fn $m(self, rhs: Poly) -> Poly {
                (&self).$m(&rhs)
            }
        }
    };
}
forward_owned!(Add, add);
forward_owned!(Sub, sub);
forward_owned!(Mul, mul);

/// A real algebraic number: the unique root of the square-free `poly` in the
/// half-open interval `(lo, hi]`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RealRoot {
    pub poly: Poly,
    pub lo: Q,
    pub hi: Q,
}

impl RealRoot {
    /// Bisects until `hi - lo <= tol`. Collapses to a point if a rational root
    /// is hit exactly.
    pub fn refine(&mut self, tol: &Q) {
        if self.poly.eval(&self.hi).is_zero() {
            self.lo = self.hi.clone();
            return;
        }
        while &self.hi - &self.lo > *tol {
            let mid = (&self.lo + &self.hi) / q(2);
            let pm = self.poly.eval(&mid);
            if pm.is_zero() {
                self.lo = mid.clone();
                self.hi = mid;
                return;
            }
            let ph = self.poly.eval(&self.hi);
            if pm.is_positive() == ph.is_positive() {
                self.hi = mid;
            } else {
                self.lo = mid;
            }
        }
    }

    pub fn to_f64(&self) -> f64 {
        let mut r = self.clone();
        r.refine(&Q::new(BigInt::one(), BigInt::from(2).pow(80)));
        to_f64(&((&r.lo + &r.hi) / q(2)))
    }

    /// True if `other` (any polynomial) vanishes at this root.
    pub fn is_root_of(&self, other: &Poly) -> bool {
        let g = self.poly.gcd(other);
        g.degree().unwrap_or(0) > 0 && g.count_roots(&self.lo, &self.hi) == 1
    }

    /// Minimal-degree factor among the square-free decomposition of `p` that
    /// vanishes here, made primitive.
    pub fn defining_factor(&self, p: &Poly) -> Option<Poly> {
        p.squarefree_decomposition()
            .into_iter()
            .map(|(f, _)| f)
            .filter(|f| f.count_roots(&self.lo, &self.hi) == 1)
            .map(|f| f.primitive())
            .min_by_key(|f| f.degree())
    }

    /// Closed form when the defining factor has degree one or two.
    pub fn closed_form(&self, factor: &Poly) -> Option<QuadraticIrrational> {
        match factor.degree()? {
            1 => Some(QuadraticIrrational::rational(
                -factor.coeff(0) / factor.coeff(1),
            )),
            2 => {
                let (a, b, c) = (factor.coeff(2), factor.coeff(1), factor.coeff(0));
                let disc = &b * &b - q(4) * &a * &c;
                if disc.is_negative() {
                    return None;
                }
                let two_a = q(2) * &a;
                let plus = QuadraticIrrational::new(-&b / &two_a, two_a.recip(), disc.clone());
                let minus = QuadraticIrrational::new(-&b / &two_a, -two_a.recip(), disc);
                let mid = to_f64(&((&self.lo + &self.hi) / q(2)));
                let pick = if (plus.to_f64() - mid).abs() <= (minus.to_f64() - mid).abs() {
                    plus
                } else {
                    minus
                };
                Some(pick)
            }
            _ => None,
        }
    }
}

/// `a + b·√d` with rational `a`, `b` and a nonnegative rational radicand.
/// The radicand is kept square-free and integral where possible.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct QuadraticIrrational {
    pub a: Q,
    pub b: Q,
    pub d: Q,
}

impl QuadraticIrrational {
    pub fn rational(a: Q) -> Self {
        QuadraticIrrational {
            a,
            b: Q::zero(),
            d: Q::zero(),
        }
    }

    pub fn new(a: Q, b: Q, d: Q) -> Self {
        // √(n/m) = √(n·m)/m, then pull square factors out of n·m.
        let (n, m) = (d.numer().clone(), d.denom().clone());
        let mut rad = &n * &m;
        let mut b = b / Q::from_integer(m);
        let mut f = BigInt::from(2);
        while &f * &f <= rad && f < BigInt::from(100_000) {
            let sq = &f * &f;
            while (&rad % &sq).is_zero() {
                rad /= &sq;
                b *= Q::from_integer(f.clone());
            }
            f += 1;
        }
        if rad.is_one() {
            return QuadraticIrrational::rational(a + b);
        }
        if rad.is_zero() || b.is_zero() {
            return QuadraticIrrational::rational(a);
        }
        QuadraticIrrational {
            a,
            b,
            d: Q::from_integer(rad),
        }
    }

    pub fn is_rational(&self) -> bool {
        self.b.is_zero()
    }

    pub fn recip(&self) -> Self {
        if self.is_rational() {
            return QuadraticIrrational::rational(self.a.recip());
        }
        let norm = &self.a * &self.a - &self.b * &self.b * &self.d;
        QuadraticIrrational::new(&self.a / &norm, -&self.b / &norm, self.d.clone())
    }

    pub fn to_f64(&self) -> f64 {
        to_f64(&self.a) + to_f64(&self.b) * to_f64(&self.d).sqrt()
    }
}

impl fmt::Display for QuadraticIrrational {
    /// Renders as `(p + q√d)/r` with integers, or `p/r` when rational.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_rational() {
            return write!(f, "{}", self.a);
        }
        let r = self.a.denom().lcm(self.b.denom());
        let p = (&self.a * Q::from_integer(r.clone())).to_integer();
        let s = (&self.b * Q::from_integer(r.clone())).to_integer();
        let sign = if s.is_negative() { "-" } else { "+" };
        let s = s.abs();
        let sq = if s.is_one() { String::new() } else { s.to_string() };
        if r.is_one() {
            write!(f, "{p} {sign} {sq}√{}", self.d)
        } else {
            write!(f, "({p} {sign} {sq}√{})/{r}", self.d)
        }
    }
}

/// Polynomial in `y` with coefficients in `Q[g]`: `Σ_j c_j(g) y^j`.
#[derive(Clone, Debug, PartialEq, Eq, Default)]
pub struct BiPoly {
    coeffs: Vec<Poly>,
}

impl BiPoly {
    pub fn new(mut coeffs: Vec<Poly>) -> Self {
        while coeffs.last().is_some_and(Poly::is_zero) {
            coeffs.pop();
        }
        BiPoly { coeffs }
    }

    pub fn zero() -> Self {
        BiPoly::new(Vec::new())
    }

    pub fn constant(p: Poly) -> Self {
        BiPoly::new(vec![p])
    }

    /// The variable `y`.
    pub fn y() -> Self {
        BiPoly::new(vec![Poly::zero(), Poly::one()])
    }

    /// The variable `g` (as a polynomial constant in `y`).
    pub fn g() -> Self {
        BiPoly::constant(Poly::x())
    }

    pub fn from_q(c: Q) -> Self {
        BiPoly::constant(Poly::constant(c))
    }

    /// Builds from `(g-power, y-power, coefficient)` triples.
    pub fn from_terms(terms: &[(usize, usize, i64)]) -> Self {
        let dy = terms.iter().map(|t| t.1).max().map_or(0, |d| d + 1);
        let mut rows: Vec<Vec<Q>> = vec![Vec::new(); dy];
        for &(i, j, c) in terms {
            let row = &mut rows[j];
            if row.len() <= i {
                row.resize(i + 1, Q::zero());
            }
            row[i] += q(c);
        }
        BiPoly::new(rows.into_iter().map(Poly::new).collect())
    }

    pub fn coeffs(&self) -> &[Poly] {
        &self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn degree_y(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn degree_g(&self) -> usize {
        self.coeffs
            .iter()
            .filter_map(Poly::degree)
            .max()
            .unwrap_or(0)
    }

    pub fn coeff(&self, j: usize) -> Poly {
        self.coeffs.get(j).cloned().unwrap_or_default()
    }

    pub fn lc_y(&self) -> Poly {
        self.coeffs.last().cloned().unwrap_or_default()
    }

    pub fn derivative_y(&self) -> BiPoly {
        BiPoly::new(
            self.coeffs
                .iter()
                .enumerate()
                .skip(1)
                .map(|(j, c)| c.scale(&q(j as i64)))
                .collect(),
        )
    }

    pub fn derivative_g(&self) -> BiPoly {
        BiPoly::new(self.coeffs.iter().map(Poly::derivative).collect())
    }

    pub fn pow(&self, e: usize) -> BiPoly {
        (0..e).fold(BiPoly::from_q(Q::one()), |acc, _| &acc * self)
    }

    pub fn eval(&self, g: &Q, y: &Q) -> Q {
        self.coeffs
            .iter()
            .rev()
            .fold(Q::zero(), |acc, c| acc * y + c.eval(g))
    }

    pub fn eval_f64(&self, g: f64, y: f64) -> f64 {
        self.coeffs
            .iter()
            .rev()
            .fold(0.0, |acc, c| acc * y + c.eval_f64(g))
    }

    /// Specializes `g`, leaving a polynomial in `y`.
    pub fn at_g(&self, g: &Q) -> Poly {
        Poly::new(self.coeffs.iter().map(|c| c.eval(g)).collect())
    }

    /// Substitutes `y := s(y)` for a univariate rational polynomial `s` in the
    /// new variable.
    pub fn substitute_y(&self, s: &Poly) -> BiPoly {
        let sb = BiPoly::new(s.coeffs().iter().map(|c| Poly::constant(c.clone())).collect());
        self.coeffs.iter().rev().fold(BiPoly::zero(), |acc, c| {
            &(&acc * &sb) + &BiPoly::constant(c.clone())
        })
    }

    /// Exact division by `(y - r)`; `None` if it does not divide.
    pub fn div_linear_y(&self, r: &Q) -> Option<BiPoly> {
        let n = self.coeffs.len();
        if n == 0 {
            return Some(BiPoly::zero());
        }
        let rp = Poly::constant(r.clone());
        let mut quo = vec![Poly::zero(); n - 1];
        let mut carry = Poly::zero();
        for j in (1..n).rev() {
            carry = &self.coeffs[j] + &(&carry * &rp);
            quo[j - 1] = carry.clone();
        }
        let rem = &self.coeffs[0] + &(&carry * &rp);
        rem.is_zero().then(|| BiPoly::new(quo))
    }

    /// Divides out the `Q[g]`-content and normalizes to integer coefficients.
    pub fn primitive(&self) -> BiPoly {
        let content = self
            .coeffs
            .iter()
            .fold(Poly::zero(), |acc, c| if acc.is_zero() { c.monic() } else { acc.gcd(c) });
        if content.is_zero() {
            return BiPoly::zero();
        }
        let reduced: Vec<Poly> = self
            .coeffs
            .iter()
            .map(|c| c.exact_div(&content).expect("content divides"))
            .collect();
        // Rational normalization across all coefficients.
        let flat: Vec<Q> = reduced.iter().flat_map(|c| c.coeffs().iter().cloned()).collect();
        let lcm = flat.iter().fold(BigInt::one(), |acc, c| acc.lcm(c.denom()));
        let mut gcd = flat
            .iter()
            .map(|c| (c * Q::from_integer(lcm.clone())).to_integer())
            .fold(BigInt::zero(), |acc, c| acc.gcd(&c));
        let lead = reduced.last().map(Poly::lc).unwrap_or_else(Q::one);
        if lead.is_negative() {
            gcd = -gcd;
        }
        let factor = Q::new(lcm, gcd);
        BiPoly::new(reduced.iter().map(|c| c.scale(&factor)).collect())
    }
}

impl fmt::Display for BiPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for (j, c) in self.coeffs.iter().enumerate().rev() {
            if c.is_zero() {
                continue;
            }
            if !first {
                write!(f, " + ")?;
            }
            first = false;
            match j {
                0 => write!(f, "({c})")?,
                1 => write!(f, "({c})*y")?,
                _ => write!(f, "({c})*y^{j}")?,
            }
        }
        Ok(())
    }
}

impl Add for &BiPoly {
    type Output = BiPoly;
    fn add(self, rhs: &BiPoly) -> BiPoly {
        let n = self.coeffs.len().max(rhs.coeffs.len());
        BiPoly::new((0..n).map(|j| &self.coeff(j) + &rhs.coeff(j)).collect())
    }
}

impl Sub for &BiPoly {
    type Output = BiPoly;
    fn sub(self, rhs: &BiPoly) -> BiPoly {
        let n = self.coeffs.len().max(rhs.coeffs.len());
        BiPoly::new((0..n).map(|j| &self.coeff(j) - &rhs.coeff(j)).collect())
    }
}

impl Neg for &BiPoly {
    type Output = BiPoly;
    fn neg(self) -> BiPoly {
        BiPoly::new(self.coeffs.iter().map(|c| -c).collect())
    }
}

impl Mul for &BiPoly {
    type Output = BiPoly;
    fn mul(self, rhs: &BiPoly) -> BiPoly {
        if self.is_zero() || rhs.is_zero() {
            return BiPoly::zero();
        }
        let mut out = vec![Poly::zero(); self.coeffs.len() + rhs.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            for (j, b) in rhs.coeffs.iter().enumerate() {
                out[i + j] = &out[i + j] + &(a * b);
            }
        }
        BiPoly::new(out)
    }
}

impl Add for BiPoly {
    type Output = BiPoly;
    fn add(self, rhs: BiPoly) -> BiPoly {
        &self + &rhs
    }
}

impl Sub for BiPoly {
    type Output = BiPoly;
    fn sub(self, rhs: BiPoly) -> BiPoly {
        &self - &rhs
    }
}

impl Mul for BiPoly {
    type Output = BiPoly;
    fn mul(self, rhs: BiPoly) -> BiPoly {
        &self * &rhs
    }
}

/// Determinant over `Q[g]` by fraction-free (Bareiss) elimination.
fn bareiss_det(mut m: Vec<Vec<Poly>>) -> Poly {
    let n = m.len();
    if n == 0 {
        return Poly::one();
    }
    let mut negate = false;
    let mut prev = Poly::one();
    for k in 0..n - 1 {
        if m[k][k].is_zero() {
            match (k + 1..n).find(|&i| !m[i][k].is_zero()) {
                Some(i) => {
                    m.swap(k, i);
                    negate = !negate;
                }
                None => return Poly::zero(),
            }
        }
        for i in k + 1..n {
            for j in k + 1..n {
                let num = &(&m[i][j] * &m[k][k]) - &(&m[i][k] * &m[k][j]);
                m[i][j] = num.exact_div(&prev).expect("Bareiss division is exact");
            }
        }
        prev = m[k][k].clone();
    }
    let det = m[n - 1][n - 1].clone();
    if negate {
        -&det
    } else {
        det
    }
}

/// Resultant with respect to `y` of two polynomials in `Q[g][y]`, via the
/// Sylvester matrix.
pub fn resultant_y(a: &BiPoly, b: &BiPoly) -> Poly {
    let (Some(m), Some(n)) = (a.degree_y(), b.degree_y()) else {
        return Poly::zero();
    };
    if m == 0 && n == 0 {
        return Poly::one();
    }
    let size = m + n;
    let mut rows = Vec::with_capacity(size);
    for i in 0..n {
        let mut row = vec![Poly::zero(); size];
        for j in 0..=m {
            row[i + j] = a.coeff(m - j);
        }
        rows.push(row);
    }
    for i in 0..m {
        let mut row = vec![Poly::zero(); size];
        for j in 0..=n {
            row[i + j] = b.coeff(n - j);
        }
        rows.push(row);
    }
    bareiss_det(rows)
}

/// Discriminant with respect to `y`:
/// `(-1)^{n(n-1)/2} · Res_y(P, ∂P/∂y) / lc_y(P)`.
pub fn discriminant_y(p: &BiPoly) -> Poly {
    let n = p.degree_y().unwrap_or(0);
    let res = resultant_y(p, &p.derivative_y());
    let disc = res
        .exact_div(&p.lc_y())
        .expect("leading coefficient divides the resultant");
    if (n * (n.saturating_sub(1)) / 2) % 2 == 1 {
        -&disc
    } else {
        disc
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::frac;

    #[test]
    fn division_and_gcd() {
        let a = Poly::from_ints(&[-1, 0, 1]); // g^2 - 1
        let b = Poly::from_ints(&[1, 1]); // g + 1
        let (quo, rem) = a.div_rem(&b);
        assert_eq!(quo, Poly::from_ints(&[-1, 1]));
        assert!(rem.is_zero());
        let c = Poly::from_ints(&[2, 3, 1]); // (g+1)(g+2)
        assert_eq!(a.gcd(&c), b);
    }

    #[test]
    fn yun_decomposition() {
        // (g-1)^3 (g+2) g^2
        let gm1 = Poly::from_ints(&[-1, 1]);
        let gp2 = Poly::from_ints(&[2, 1]);
        let x = Poly::x();
        let p = &(&(&(&gm1 * &gm1) * &gm1) * &gp2) * &(&x * &x);
        let dec = p.squarefree_decomposition();
        assert_eq!(dec, vec![(gp2, 1), (x, 2), (gm1, 3)]);
    }

    #[test]
    fn sturm_counts() {
        // (g-1)(g-2)(g+3)
        let p = Poly::from_ints(&[6, -7, 0, 1]);
        assert_eq!(p.count_roots(&q(0), &q(10)), 2);
        assert_eq!(p.count_roots(&q(-10), &q(10)), 3);
        assert_eq!(p.count_roots(&q(1), &q(2)), 1);
        let r = p.smallest_positive_root().unwrap();
        assert!(r.lo < q(1) && q(1) <= r.hi);
    }

    #[test]
    fn quadratic_root_closed_form() {
        // 135 g^2 + 101 g - 20
        let p = Poly::from_ints(&[-20, 101, 135]);
        let mut r = p.smallest_positive_root().unwrap();
        r.refine(&frac(1, 1_000_000_000_000));
        let cf = r.closed_form(&p).unwrap();
        assert!((cf.to_f64() - (21001f64.sqrt() - 101.0) / 270.0).abs() < 1e-15);
        assert_eq!(cf.recip().to_string(), "(101 + √21001)/40");
    }

    #[test]
    fn radicand_simplification() {
        let x = QuadraticIrrational::new(q(0), q(1), q(12));
        assert_eq!(x.b, q(2));
        assert_eq!(x.d, q(3));
        assert!(QuadraticIrrational::new(q(1), q(1), q(4)).is_rational());
    }

    #[test]
    fn resultant_of_linear_forms() {
        // Res_y(y - g, y - 2) = g - 2 up to sign convention: det [[1, -g], [1, -2]] = -2 + g
        let a = BiPoly::from_terms(&[(0, 1, 1), (1, 0, -1)]);
        let b = BiPoly::from_terms(&[(0, 1, 1), (0, 0, -2)]);
        assert_eq!(resultant_y(&a, &b), Poly::from_ints(&[-2, 1]));
    }

    #[test]
    fn discriminant_of_quadratic() {
        // y^2 + g y + 1 → g^2 - 4
        let p = BiPoly::from_terms(&[(0, 2, 1), (1, 1, 1), (0, 0, 1)]);
        assert_eq!(discriminant_y(&p), Poly::from_ints(&[-4, 0, 1]));
        // 3 g y^2 - y + 1 → 1 - 12 g
        let p = BiPoly::from_terms(&[(1, 2, 3), (0, 1, -1), (0, 0, 1)]);
        assert_eq!(discriminant_y(&p), Poly::from_ints(&[1, -12]));
    }

    #[test]
    fn linear_division_in_y() {
        // (y + 2)(y - g)
        let p = BiPoly::from_terms(&[(0, 2, 1), (0, 1, 2), (1, 1, -1), (1, 0, -2)]);
        let quo = p.div_linear_y(&q(-2)).unwrap();
        assert_eq!(quo, BiPoly::from_terms(&[(0, 1, 1), (1, 0, -1)]));
        assert!(quo.div_linear_y(&q(-2)).is_none());
    }

    #[test]
    fn primitive_normalization() {
        let p = Poly::new(vec![frac(-1, 2), frac(3, 4)]);
        assert_eq!(p.primitive(), Poly::from_ints(&[-2, 3]));
        let b = BiPoly::from_terms(&[(1, 1, 2), (2, 0, -4)]); // 2g y - 4 g^2
        assert_eq!(b.primitive(), BiPoly::from_terms(&[(0, 1, 1), (1, 0, -2)]));
    }
}
