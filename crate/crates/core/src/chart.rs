//! Exact polynomial functions on a single chart `R^n` and polynomial vector fields.
//!
//! Coefficients are arbitrary-precision rationals, so equality is exact and
//! structural: a [`Poly`] never stores a zero coefficient and keeps its terms in
//! graded lexicographic order.

use std::cmp::Ordering;
use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, AddAssign, Mul, Neg, Sub};

use num::{BigInt, BigRational, One, Signed, Zero};

use crate::error::{Error, Result};

pub type Rational = BigRational;

pub fn rat(n: i64, d: i64) -> Rational {
    BigRational::new(BigInt::from(n), BigInt::from(d))
}

pub fn int(n: i64) -> Rational {
    BigRational::from_integer(BigInt::from(n))
}

/// Chart dimension and the truncation degree of the Lie-Rinehart filtration.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct ChartSpec {
    pub dim: usize,
    pub max_degree: usize,
}

impl ChartSpec {
    pub fn new(dim: usize, max_degree: usize) -> Result<Self> {
        if dim == 0 {
            return Err(Error::InvalidChart("dim must be at least 1".into()));
        }
        if max_degree == 0 {
            return Err(Error::InvalidChart("max_degree must be at least 1".into()));
        }
        Ok(ChartSpec { dim, max_degree })
    }
}

/// Exponent vector ordered graded-lexicographically.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct Monomial(pub Vec<u32>);

impl Monomial {
    pub fn one(n: usize) -> Self {
        Monomial(vec![0; n])
    }

    pub fn var(n: usize, i: usize) -> Self {
        let mut e = vec![0; n];
        e[i] = 1;
        Monomial(e)
    }

    pub fn degree(&self) -> u32 {
        self.0.iter().sum()
    }

    pub fn mul(&self, other: &Monomial) -> Monomial {
        Monomial(self.0.iter().zip(&other.0).map(|(a, b)| a + b).collect())
    }
}

impl Ord for Monomial {
    fn cmp(&self, other: &Self) -> Ordering {
        self.degree().cmp(&other.degree()).then_with(|| self.0.cmp(&other.0))
    }
}

impl PartialOrd for Monomial {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

/// Element of `Q[x0..x{n-1}]`.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Poly {
    nvars: usize,
    terms: BTreeMap<Monomial, Rational>,
}

impl Poly {
    pub fn zero(nvars: usize) -> Self {
        Poly {
            nvars,
            terms: BTreeMap::new(),
        }
    }

    pub fn constant(nvars: usize, c: Rational) -> Self {
        Poly::monomial(nvars, Monomial::one(nvars), c)
    }

    pub fn one(nvars: usize) -> Self {
        Poly::constant(nvars, Rational::one())
    }

    pub fn var(nvars: usize, i: usize) -> Self {
        Poly::monomial(nvars, Monomial::var(nvars, i), Rational::one())
    }

    pub fn monomial(nvars: usize, m: Monomial, c: Rational) -> Self {
        assert_eq!(m.0.len(), nvars, "monomial length must match chart");
        let mut terms = BTreeMap::new();
        if !c.is_zero() {
            terms.insert(m, c);
        }
        Poly { nvars, terms }
    }

    pub fn nvars(&self) -> usize {
        self.nvars
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    /// Terms in increasing graded-lex order.
    pub fn terms(&self) -> impl DoubleEndedIterator<Item = (&Monomial, &Rational)> {
        self.terms.iter()
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    pub fn degree(&self) -> Option<u32> {
        self.terms.keys().map(Monomial::degree).max()
    }

    /// The constant value, if the polynomial has no variable terms.
    pub fn as_constant(&self) -> Option<Rational> {
        match self.terms.len() {
            0 => Some(Rational::zero()),
            1 => {
                let (m, c) = self.terms.iter().next().unwrap();
                (m.degree() == 0).then(|| c.clone())
            }
            _ => None,
        }
    }

    fn add_term(&mut self, m: Monomial, c: Rational) {
        if c.is_zero() {
            return;
        }
        use std::collections::btree_map::Entry;
        match self.terms.entry(m) {
            Entry::Vacant(v) => {
                v.insert(c);
            }
            Entry::Occupied(mut o) => {
                *o.get_mut() += c;
                if o.get().is_zero() {
                    o.remove();
                }
            }
        }
    }

    pub fn scale(&self, c: &Rational) -> Poly {
        if c.is_zero() {
            return Poly::zero(self.nvars);
        }
        Poly {
            nvars: self.nvars,
            terms: self.terms.iter().map(|(m, a)| (m.clone(), a * c)).collect(),
        }
    }

    pub fn pow(&self, e: u32) -> Poly {
        let mut acc = Poly::one(self.nvars);
        for _ in 0..e {
            acc = &acc * self;
        }
        acc
    }

    /// Partial derivative with respect to `x_i`.
    pub fn derive(&self, i: usize) -> Result<Poly> {
        if i >= self.nvars {
            return Err(Error::IndexOutOfRange {
                index: i,
                bound: self.nvars,
            });
        }
        Ok(self.derive_unchecked(i))
    }

    pub(crate) fn derive_unchecked(&self, i: usize) -> Poly {
        let mut out = Poly::zero(self.nvars);
        for (m, c) in &self.terms {
            let e = m.0[i];
            if e == 0 {
                continue;
            }
            let mut m2 = m.clone();
            m2.0[i] -= 1;
            out.add_term(m2, c * int(e as i64));
        }
        out
    }

    /// Evaluate at a rational point.
    pub fn eval(&self, point: &[Rational]) -> Rational {
        let mut acc = Rational::zero();
        for (m, c) in &self.terms {
            let mut t = c.clone();
            for (x, &e) in point.iter().zip(&m.0) {
                for _ in 0..e {
                    t *= x;
                }
            }
            acc += t;
        }
        acc
    }

    /// Relabel variables into a chart of dimension `target` via `map[old] = new`.
    pub fn relabel(&self, target: usize, map: &[usize]) -> Poly {
        let mut out = Poly::zero(target);
        for (m, c) in &self.terms {
            let mut e = vec![0; target];
            for (old, &new) in map.iter().enumerate() {
                e[new] = m.0[old];
            }
            out.add_term(Monomial(e), c.clone());
        }
        out
    }

    /// Whether printing this polynomial as a coefficient needs parentheses.
    pub(crate) fn is_atomic(&self) -> bool {
        self.terms.len() <= 1
    }
}

impl fmt::Display for Poly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        for (idx, (m, c)) in self.terms.iter().rev().enumerate() {
            let neg = c.is_negative();
            let abs = c.abs();
            if idx == 0 {
                if neg {
                    write!(f, "-")?;
                }
            } else if neg {
                write!(f, " - ")?;
            } else {
                write!(f, " + ")?;
            }
            let vars: Vec<String> =
                m.0.iter()
                    .enumerate()
                    .filter(|(_, &e)| e > 0)
                    .map(|(i, &e)| if e == 1 { format!("x{i}") } else { format!("x{i}^{e}") })
                    .collect();
            if vars.is_empty() {
                write!(f, "{abs}")?;
            } else if abs.is_one() {
                write!(f, "{}", vars.join("*"))?;
            } else {
                write!(f, "{abs}*{}", vars.join("*"))?;
            }
        }
        Ok(())
    }
}

impl fmt::Debug for Poly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Poly({self})")
    }
}

impl<'a> Add<&'a Poly> for &'a Poly {
    type Output = Poly;
    fn add(self, rhs: &Poly) -> Poly {
        assert_eq!(self.nvars, rhs.nvars, "chart mismatch");
        let mut out = self.clone();
        for (m, c) in &rhs.terms {
            out.add_term(m.clone(), c.clone());
        }
        out
    }
}

impl AddAssign<&Poly> for Poly {
    fn add_assign(&mut self, rhs: &Poly) {
        assert_eq!(self.nvars, rhs.nvars, "chart mismatch");
        for (m, c) in &rhs.terms {
            self.add_term(m.clone(), c.clone());
        }
    }
}

impl<'a> Sub<&'a Poly> for &'a Poly {
    type Output = Poly;
    fn sub(self, rhs: &Poly) -> Poly {
        assert_eq!(self.nvars, rhs.nvars, "chart mismatch");
        let mut out = self.clone();
        for (m, c) in &rhs.terms {
            out.add_term(m.clone(), -c.clone());
        }
        out
    }
}

impl<'a> Mul<&'a Poly> for &'a Poly {
    type Output = Poly;
    fn mul(self, rhs: &Poly) -> Poly {
        assert_eq!(self.nvars, rhs.nvars, "chart mismatch");
        let mut out = Poly::zero(self.nvars);
        for (m1, c1) in &self.terms {
            for (m2, c2) in &rhs.terms {
                out.add_term(m1.mul(m2), c1 * c2);
            }
        }
        out
    }
}

impl Neg for &Poly {
    type Output = Poly;
    fn neg(self) -> Poly {
        self.scale(&-Rational::one())
    }
}

macro_rules! owned_ops {
    ($t:ty) => {
        impl Add for $t {
            type Output = $t;
            fn add(self, rhs: $t) -> $t {
                &self + &rhs
            }
        }
        impl Sub for $t {
            type Output = $t;
            fn sub(self, rhs: $t) -> $t {
                &self - &rhs
            }
        }
        impl Neg for $t {
            type Output = $t;
            fn neg(self) -> $t {
                -&self
            }
        }
    };
}

owned_ops!(Poly);

impl Mul for Poly {
    type Output = Poly;
    fn mul(self, rhs: Poly) -> Poly {
        &self * &rhs
    }
}

/// Polynomial vector field `sum_i coeffs[i] * d_i`.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct VField {
    coeffs: Vec<Poly>,
}

impl VField {
    pub fn zero(n: usize) -> Self {
        VField {
            coeffs: vec![Poly::zero(n); n],
        }
    }

    /// Coordinate field `d_i`.
    pub fn coord(n: usize, i: usize) -> Self {
        let mut v = VField::zero(n);
        v.coeffs[i] = Poly::one(n);
        v
    }

    pub fn new(coeffs: Vec<Poly>) -> Result<Self> {
        let n = coeffs.len();
        if n == 0 {
            return Err(Error::InvalidChart("vector field needs at least one coordinate".into()));
        }
        if let Some(p) = coeffs.iter().find(|p| p.nvars() != n) {
            return Err(Error::ChartMismatch {
                left: n,
                right: p.nvars(),
            });
        }
        Ok(VField { coeffs })
    }

    pub fn dim(&self) -> usize {
        self.coeffs.len()
    }

    pub fn coeffs(&self) -> &[Poly] {
        &self.coeffs
    }

    pub fn coeff(&self, i: usize) -> &Poly {
        &self.coeffs[i]
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(Poly::is_zero)
    }

    pub fn scale_poly(&self, f: &Poly) -> VField {
        VField {
            coeffs: self.coeffs.iter().map(|c| c * f).collect(),
        }
    }

    fn check(&self, other_dim: usize) -> Result<()> {
        if self.dim() != other_dim {
            return Err(Error::ChartMismatch {
                left: self.dim(),
                right: other_dim,
            });
        }
        Ok(())
    }

    /// `v(f) = sum_i v^i df/dx_i`.
    pub fn apply(&self, f: &Poly) -> Result<Poly> {
        self.check(f.nvars())?;
        Ok(self.apply_unchecked(f))
    }

    pub(crate) fn apply_unchecked(&self, f: &Poly) -> Poly {
        let mut out = Poly::zero(self.dim());
        for (i, c) in self.coeffs.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            out += &(c * &f.derive_unchecked(i));
        }
        out
    }

    /// Classical Lie bracket, `[u,v]^i = u(v^i) - v(u^i)`.
    pub fn bracket(&self, other: &VField) -> Result<VField> {
        self.check(other.dim())?;
        Ok(VField {
            coeffs: (0..self.dim())
                .map(|i| &self.apply_unchecked(&other.coeffs[i]) - &other.apply_unchecked(&self.coeffs[i]))
                .collect(),
        })
    }

    /// Push forward along the coordinate inclusion `R^m -> R^target`,
    /// `embedding[old] = new`, strictly increasing.
    pub fn pushforward(&self, target: usize, embedding: &[usize]) -> Result<VField> {
        let m = self.dim();
        if embedding.len() != m {
            return Err(Error::InvalidEmbedding(format!(
                "embedding has {} entries for a field on R^{m}",
                embedding.len()
            )));
        }
        if embedding.iter().any(|&j| j >= target) {
            return Err(Error::InvalidEmbedding(format!(
                "embedding index out of range for R^{target}"
            )));
        }
        if embedding.windows(2).any(|w| w[0] >= w[1]) {
            return Err(Error::InvalidEmbedding("embedding must be strictly increasing".into()));
        }
        let mut coeffs = vec![Poly::zero(target); target];
        for (old, &new) in embedding.iter().enumerate() {
            coeffs[new] = self.coeffs[old].relabel(target, embedding);
        }
        Ok(VField { coeffs })
    }
}

impl<'a> Add<&'a VField> for &'a VField {
    type Output = VField;
    fn add(self, rhs: &VField) -> VField {
        VField {
            coeffs: self.coeffs.iter().zip(&rhs.coeffs).map(|(a, b)| a + b).collect(),
        }
    }
}

impl<'a> Sub<&'a VField> for &'a VField {
    type Output = VField;
    fn sub(self, rhs: &VField) -> VField {
        VField {
            coeffs: self.coeffs.iter().zip(&rhs.coeffs).map(|(a, b)| a - b).collect(),
        }
    }
}

impl Neg for &VField {
    type Output = VField;
    fn neg(self) -> VField {
        VField {
            coeffs: self.coeffs.iter().map(|a| -a).collect(),
        }
    }
}

owned_ops!(VField);

/// Writes `coeff*name` with sign handling; used by every field-like printer.
pub(crate) fn write_scaled(f: &mut fmt::Formatter<'_>, first: bool, coeff: &Poly, name: &str) -> fmt::Result {
    // a single negative term prints its sign outside
    let (neg, body) = match coeff.terms().next() {
        Some((_, c)) if coeff.num_terms() == 1 && c.is_negative() => (true, -coeff),
        _ => (false, coeff.clone()),
    };
    if first {
        if neg {
            write!(f, "-")?;
        }
    } else if neg {
        write!(f, " - ")?;
    } else {
        write!(f, " + ")?;
    }
    if body.as_constant().is_some_and(|c| c.is_one()) {
        write!(f, "{name}")
    } else if body.is_atomic() {
        write!(f, "{body}*{name}")
    } else {
        write!(f, "({body})*{name}")
    }
}

impl fmt::Display for VField {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut first = true;
        for (i, c) in self.coeffs.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            write_scaled(f, first, c, &format!("d{i}"))?;
            first = false;
        }
        if first {
            write!(f, "0")?;
        }
        Ok(())
    }
}

impl fmt::Debug for VField {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "VField({self})")
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn x(n: usize, i: usize) -> Poly {
        Poly::var(n, i)
    }

    #[test]
    fn derive_examples() {
        let f = &(&x(2, 0) * &x(2, 0)) * &x(2, 1);
        let want = (&x(2, 0) * &x(2, 1)).scale(&int(2));
        assert_eq!(f.derive(0).unwrap(), want);
        assert!(Poly::one(2).derive(1).unwrap().is_zero());
        assert!(x(2, 1).derive(0).unwrap().is_zero());
        assert!(matches!(f.derive(2), Err(Error::IndexOutOfRange { .. })));
    }

    #[test]
    fn derive_matches_finite_difference_quotient() {
        // f = x0^2 x1: the difference quotient (f(p+h e0) - f(p))/h = 2 x0 x1 + h x1
        let f = &(&x(2, 0) * &x(2, 0)) * &x(2, 1);
        let p = [rat(3, 2), rat(-2, 3)];
        let h = rat(1, 1000);
        let shifted = [&p[0] + &h, p[1].clone()];
        let dq = (f.eval(&shifted) - f.eval(&p)) / &h;
        let exact = f.derive(0).unwrap().eval(&p);
        assert_eq!(dq - &exact, &h * &p[1]);
    }

    #[test]
    fn apply_examples() {
        let d0 = VField::coord(2, 0);
        assert_eq!(d0.apply(&x(2, 0).pow(2)).unwrap(), x(2, 0).scale(&int(2)));
        let v = VField::coord(2, 1).scale_poly(&x(2, 0));
        assert!(v.apply(&x(2, 0)).unwrap().is_zero());
        let w = &VField::coord(2, 0).scale_poly(&x(2, 1)) + &VField::coord(2, 1);
        let got = w.apply(&(&x(2, 0) * &x(2, 1))).unwrap();
        assert_eq!(got, &x(2, 1).pow(2) + &x(2, 0));
    }

    #[test]
    fn bracket_examples() {
        let d0 = VField::coord(2, 0);
        let d1 = VField::coord(2, 1);
        assert!(d0.bracket(&d1).unwrap().is_zero());
        assert_eq!(d0.bracket(&d1.scale_poly(&x(2, 0))).unwrap(), d1);
        let a = d0.scale_poly(&x(2, 1));
        let b = d1.scale_poly(&x(2, 0));
        let want = &d1.scale_poly(&x(2, 1)) - &d0.scale_poly(&x(2, 0));
        assert_eq!(a.bracket(&b).unwrap(), want);
        assert!(d0.bracket(&VField::coord(3, 0)).is_err());
    }

    #[test]
    fn pushforward_relabels() {
        let v = VField::coord(1, 0);
        assert_eq!(v.pushforward(2, &[0]).unwrap(), VField::coord(2, 0));
        let w = VField::coord(1, 0).scale_poly(&x(1, 0));
        assert_eq!(
            w.pushforward(2, &[1]).unwrap(),
            VField::coord(2, 1).scale_poly(&x(2, 1))
        );
        // functoriality: R^1 -> R^2 -> R^3
        let step = w.pushforward(2, &[1]).unwrap().pushforward(3, &[0, 2]).unwrap();
        assert_eq!(step, w.pushforward(3, &[2]).unwrap());
        assert!(w.pushforward(2, &[2]).is_err());
        assert!(VField::coord(2, 0).pushforward(3, &[1, 1]).is_err());
    }

    #[test]
    fn printing() {
        let v =
            &VField::coord(2, 1).scale_poly(&x(2, 0)) - &VField::coord(2, 0).scale_poly(&Poly::constant(2, rat(1, 2)));
        assert_eq!(v.to_string(), "-1/2*d0 + x0*d1");
        let p = &(&x(2, 0).pow(2) * &x(2, 1)) - &Poly::constant(2, rat(1, 2));
        assert_eq!(p.to_string(), "x0^2*x1 - 1/2");
    }
}
