//! Polyvector fields `sum_I f_I d_{i_1} ^ .. ^ d_{i_k}` in the coordinate basis,
//! with the wedge product and the Schouten bracket.
//!
//! The grade-`k` slice sits in cohomological degree `1 - k`: the bracket has
//! degree 0 and the wedge has degree -1.

use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Neg, Sub};

use serde_json::{json, Map, Value};

use crate::chart::{int, write_scaled, Poly, VField};
use crate::error::{Error, Result};
use crate::subset::Subset;

#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Polyvector {
    nvars: usize,
    /// Sorted coordinate index set to coefficient; the grade is the set size.
    terms: BTreeMap<Subset, Poly>,
}

/// Sign of the shuffle bringing `a ++ b` into increasing order (0 if they meet).
fn shuffle_sign(a: Subset, b: Subset) -> i64 {
    if !a.is_disjoint(b) {
        return 0;
    }
    let inversions: usize = a.iter().map(|i| b.iter().filter(|&j| j < i).count()).sum();
    if inversions.is_multiple_of(2) {
        1
    } else {
        -1
    }
}

impl Polyvector {
    pub fn zero(nvars: usize) -> Self {
        Polyvector {
            nvars,
            terms: BTreeMap::new(),
        }
    }

    /// `c d_{idx[0]} ^ d_{idx[1]} ^ ..` in any index order.
    pub fn monomial(nvars: usize, idx: &[usize], c: Poly) -> Result<Self> {
        let mut out = Self::zero(nvars);
        let mut set = Subset::EMPTY;
        let mut sign = 1;
        for &i in idx {
            if i >= nvars {
                return Err(Error::IndexOutOfRange { index: i, bound: nvars });
            }
            sign *= shuffle_sign(set, Subset::singleton(i));
            set = set.insert(i);
        }
        if sign != 0 && !idx.is_empty() {
            out.add_term(set, c.scale(&int(sign)));
        }
        Ok(out)
    }

    pub fn from_field(v: &VField) -> Self {
        let mut out = Self::zero(v.dim());
        for (i, c) in v.coeffs().iter().enumerate() {
            out.add_term(Subset::singleton(i), c.clone());
        }
        out
    }

    /// `v_1 ^ .. ^ v_k`.
    pub fn wedge_fields(nvars: usize, fields: &[VField]) -> Result<Self> {
        let mut out: Option<Polyvector> = None;
        for v in fields {
            if v.dim() != nvars {
                return Err(Error::ChartMismatch {
                    left: nvars,
                    right: v.dim(),
                });
            }
            let p = Self::from_field(v);
            out = Some(match out {
                None => p,
                Some(acc) => acc.wedge(&p)?,
            });
        }
        Ok(out.unwrap_or_else(|| Self::zero(nvars)))
    }

    fn add_term(&mut self, set: Subset, c: Poly) {
        if c.is_zero() {
            return;
        }
        use std::collections::btree_map::Entry;
        match self.terms.entry(set) {
            Entry::Vacant(v) => {
                v.insert(c);
            }
            Entry::Occupied(mut o) => {
                *o.get_mut() += &c;
                if o.get().is_zero() {
                    o.remove();
                }
            }
        }
    }

    pub fn nvars(&self) -> usize {
        self.nvars
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    /// Coefficient of `d_I` for a sorted index set `I`.
    pub fn coeff(&self, set: Subset) -> Poly {
        self.terms.get(&set).cloned().unwrap_or_else(|| Poly::zero(self.nvars))
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Subset, &Poly)> {
        self.terms.iter()
    }

    pub fn grade_part(&self, k: usize) -> Polyvector {
        Polyvector {
            nvars: self.nvars,
            terms: self
                .terms
                .iter()
                .filter(|(s, _)| s.len() == k)
                .map(|(s, c)| (*s, c.clone()))
                .collect(),
        }
    }

    /// Grades occurring with a nonzero part, ascending.
    pub fn grades(&self) -> Vec<usize> {
        let mut g: Vec<usize> = self.terms.keys().map(|s| s.len()).collect();
        g.sort_unstable();
        g.dedup();
        g
    }

    /// The common grade of a homogeneous nonzero polyvector.
    pub fn grade(&self) -> Result<usize> {
        match self.grades().as_slice() {
            [k] => Ok(*k),
            _ => Err(Error::Inhomogeneous),
        }
    }

    /// Cohomological degree `1 - k` of a homogeneous polyvector of grade `k`.
    pub fn degree(&self) -> Result<i64> {
        Ok(1 - self.grade()? as i64)
    }

    pub fn scale_poly(&self, f: &Poly) -> Polyvector {
        let mut out = Self::zero(self.nvars);
        for (s, c) in &self.terms {
            out.add_term(*s, c * f);
        }
        out
    }

    fn check(&self, other: &Polyvector) -> Result<()> {
        if self.nvars != other.nvars {
            return Err(Error::ChartMismatch {
                left: self.nvars,
                right: other.nvars,
            });
        }
        Ok(())
    }

    pub fn wedge(&self, other: &Polyvector) -> Result<Polyvector> {
        self.check(other)?;
        let mut out = Self::zero(self.nvars);
        for (a, f) in &self.terms {
            for (b, g) in &other.terms {
                let sign = shuffle_sign(*a, *b);
                if sign != 0 {
                    out.add_term(a.union(*b), (f * g).scale(&int(sign)));
                }
            }
        }
        Ok(out)
    }

    /// Factors `(f d_{i_1}), d_{i_2}, ..` of a basis term.
    fn factors(&self, set: Subset, c: &Poly) -> Vec<VField> {
        set.iter()
            .enumerate()
            .map(|(pos, i)| {
                let v = VField::coord(self.nvars, i);
                if pos == 0 {
                    v.scale_poly(c)
                } else {
                    v
                }
            })
            .collect()
    }

    /// Schouten bracket, bilinear extension of
    /// `[a_1^..^a_p, b_1^..^b_q] = sum_{r,s} (-1)^(r+s) [a_r,b_s] ^ a_1..^a_r..a_p ^ b_1..^b_s..b_q`.
    pub fn schouten(&self, other: &Polyvector) -> Result<Polyvector> {
        self.check(other)?;
        let n = self.nvars;
        let mut out = Self::zero(n);
        for (a, f) in &self.terms {
            let af = self.factors(*a, f);
            for (b, g) in &other.terms {
                let bf = other.factors(*b, g);
                for (r, ar) in af.iter().enumerate() {
                    for (s, bs) in bf.iter().enumerate() {
                        let br = ar.bracket(bs)?;
                        if br.is_zero() {
                            continue;
                        }
                        let mut fields = vec![br];
                        fields.extend(af.iter().enumerate().filter(|(t, _)| *t != r).map(|(_, v)| v.clone()));
                        fields.extend(bf.iter().enumerate().filter(|(t, _)| *t != s).map(|(_, v)| v.clone()));
                        let mut term = Self::wedge_fields(n, &fields)?;
                        if (r + s) % 2 == 1 {
                            term = -&term;
                        }
                        out = &out + &term;
                    }
                }
            }
        }
        Ok(out)
    }

    pub fn to_json(&self) -> Value {
        let mut grades: BTreeMap<usize, Vec<Value>> = BTreeMap::new();
        for (s, c) in &self.terms {
            let factors: Vec<String> = s.iter().map(|i| format!("d{i}")).collect();
            grades
                .entry(s.len())
                .or_default()
                .push(json!({"factors": factors, "coeff": c.to_string()}));
        }
        let mut m = Map::new();
        for (k, v) in grades {
            m.insert(k.to_string(), Value::Array(v));
        }
        json!({ "grades": m })
    }
}

impl<'a> Add<&'a Polyvector> for &'a Polyvector {
    type Output = Polyvector;
    fn add(self, rhs: &Polyvector) -> Polyvector {
        assert_eq!(self.nvars, rhs.nvars, "chart mismatch");
        let mut out = self.clone();
        for (s, c) in &rhs.terms {
            out.add_term(*s, c.clone());
        }
        out
    }
}

impl<'a> Sub<&'a Polyvector> for &'a Polyvector {
    type Output = Polyvector;
    fn sub(self, rhs: &Polyvector) -> Polyvector {
        self + &(-rhs)
    }
}

impl Neg for &Polyvector {
    type Output = Polyvector;
    fn neg(self) -> Polyvector {
        Polyvector {
            nvars: self.nvars,
            terms: self.terms.iter().map(|(s, c)| (*s, -c)).collect(),
        }
    }
}

impl fmt::Display for Polyvector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        for (idx, (s, c)) in self.terms.iter().enumerate() {
            let name: Vec<String> = s.iter().map(|i| format!("d{i}")).collect();
            write_scaled(f, idx == 0, c, &name.join(" ^ "))?;
        }
        Ok(())
    }
}

impl fmt::Debug for Polyvector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Polyvector({self})")
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn x(n: usize, i: usize) -> Poly {
        Poly::var(n, i)
    }

    fn d(n: usize, idx: &[usize]) -> Polyvector {
        Polyvector::monomial(n, idx, Poly::one(n)).unwrap()
    }

    #[test]
    fn wedge_examples() {
        assert!(d(2, &[0]).wedge(&d(2, &[0])).unwrap().is_zero());
        let v = Polyvector::from_field(&VField::coord(2, 1).scale_poly(&x(2, 0)));
        assert_eq!(d(2, &[0]).wedge(&v).unwrap(), d(2, &[0, 1]).scale_poly(&x(2, 0)));
        assert_eq!(d(2, &[1, 0]), -&d(2, &[0, 1]));
        let p = d(3, &[0, 1]).wedge(&d(3, &[2])).unwrap();
        assert_eq!(p, d(3, &[0, 1, 2]));
        assert_eq!(p.degree().unwrap(), -2);
        assert_eq!(d(3, &[0, 1]).degree().unwrap() + d(3, &[2]).degree().unwrap() - 1, -2);
    }

    #[test]
    fn degrees() {
        assert_eq!(d(2, &[0]).degree().unwrap(), 0);
        assert_eq!(d(2, &[0, 1]).degree().unwrap(), -1);
        assert!((&d(2, &[0]) + &d(2, &[0, 1])).degree().is_err());
        assert!(Polyvector::zero(2).degree().is_err());
    }

    #[test]
    fn schouten_examples() {
        let a = VField::new(vec![x(2, 1), x(2, 0).pow(2)]).unwrap();
        let b = VField::new(vec![&x(2, 0) * &x(2, 1), Poly::one(2)]).unwrap();
        let got = Polyvector::from_field(&a)
            .schouten(&Polyvector::from_field(&b))
            .unwrap();
        assert_eq!(got, Polyvector::from_field(&a.bracket(&b).unwrap()));

        let e = Polyvector::from_field(&VField::coord(2, 0).scale_poly(&x(2, 0)));
        assert_eq!(e.schouten(&d(2, &[0, 1])).unwrap(), -&d(2, &[0, 1]));
    }

    #[test]
    fn printing() {
        assert_eq!(d(2, &[0, 1]).to_string(), "d0 ^ d1");
        let p = &d(2, &[0, 1]).scale_poly(&(&x(2, 0) + &Poly::one(2))) + &d(2, &[1]);
        assert_eq!(p.to_string(), "(x0 + 1)*d0 ^ d1 + d1");
        assert_eq!(Polyvector::zero(2).to_string(), "0");
        assert_eq!(
            d(2, &[0, 1]).to_json().to_string(),
            r#"{"grades":{"2":[{"coeff":"1","factors":["d0","d1"]}]}}"#
        );
    }
}
