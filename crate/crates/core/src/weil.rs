//! Weil algebras `W_k = R[e_0..e_{k-1}]/(e_i^2)` with polynomial coefficients,
//! and k-fields written as algebra morphisms `A -> W_k (x) A`.
//!
//! A k-field given by its subset-indexed components `{a_phi}` acts on `f` by
//! the operator formula: the `e_phi` part of the image of `f` is the sum, over
//! all partitions of `phi` into blocks `B_1 < .. < B_r` (subset-lex order), of
//! `a_{B_r}( .. a_{B_1}(f))`.

use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Sub};

use serde_json::{Map, Value};

use crate::chart::{Poly, VField};
use crate::error::{Error, Result};
use crate::groupoid::{embed_classical, KField};
use crate::subset::{Subset, MAX_ARITY};

/// Element `sum_phi parts[phi] e_phi` of `W_k (x) A`.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct WeilElem {
    arity: usize,
    nvars: usize,
    parts: BTreeMap<Subset, Poly>,
}

impl WeilElem {
    pub fn zero(arity: usize, nvars: usize) -> Self {
        WeilElem {
            arity,
            nvars,
            parts: BTreeMap::new(),
        }
    }

    /// `f` times the unit.
    pub fn scalar(arity: usize, f: Poly) -> Self {
        Self::term(arity, Subset::EMPTY, f)
    }

    /// `f e_phi`.
    pub fn term(arity: usize, phi: Subset, f: Poly) -> Self {
        assert!(phi.bound() <= arity, "subset out of range");
        let mut out = Self::zero(arity, f.nvars());
        out.add_part(phi, f);
        out
    }

    /// The generator `e_i`.
    pub fn epsilon(arity: usize, nvars: usize, i: usize) -> Self {
        Self::term(arity, Subset::singleton(i), Poly::one(nvars))
    }

    pub fn from_parts(arity: usize, nvars: usize, parts: impl IntoIterator<Item = (Subset, Poly)>) -> Result<Self> {
        if arity > MAX_ARITY {
            return Err(Error::IndexOutOfRange {
                index: arity,
                bound: MAX_ARITY,
            });
        }
        let mut out = Self::zero(arity, nvars);
        for (phi, f) in parts {
            if phi.bound() > arity {
                return Err(Error::IndexOutOfRange {
                    index: phi.bound() - 1,
                    bound: arity,
                });
            }
            if f.nvars() != nvars {
                return Err(Error::ChartMismatch {
                    left: nvars,
                    right: f.nvars(),
                });
            }
            out.add_part(phi, f);
        }
        Ok(out)
    }

    fn add_part(&mut self, phi: Subset, f: Poly) {
        if f.is_zero() {
            return;
        }
        use std::collections::btree_map::Entry;
        match self.parts.entry(phi) {
            Entry::Vacant(v) => {
                v.insert(f);
            }
            Entry::Occupied(mut o) => {
                *o.get_mut() += &f;
                if o.get().is_zero() {
                    o.remove();
                }
            }
        }
    }

    pub fn arity(&self) -> usize {
        self.arity
    }

    pub fn nvars(&self) -> usize {
        self.nvars
    }

    pub fn is_zero(&self) -> bool {
        self.parts.is_empty()
    }

    pub fn part(&self, phi: Subset) -> Poly {
        self.parts.get(&phi).cloned().unwrap_or_else(|| Poly::zero(self.nvars))
    }

    pub fn parts(&self) -> impl Iterator<Item = (&Subset, &Poly)> {
        self.parts.iter()
    }

    /// Product with `e_i^2 = 0`: `parts[chi] = sum_{phi + psi = chi, disjoint} a[phi] b[psi]`.
    pub fn mul(&self, other: &WeilElem) -> Result<WeilElem> {
        if self.arity != other.arity {
            return Err(Error::ArityMismatch {
                left: self.arity,
                right: other.arity,
            });
        }
        Ok(self.mul_unchecked(other))
    }

    pub(crate) fn mul_unchecked(&self, other: &WeilElem) -> WeilElem {
        let mut out = Self::zero(self.arity, self.nvars);
        for (phi, a) in &self.parts {
            for (psi, b) in &other.parts {
                if phi.is_disjoint(*psi) {
                    out.add_part(phi.union(*psi), a * b);
                }
            }
        }
        out
    }

    pub fn scale(&self, f: &Poly) -> WeilElem {
        let mut out = Self::zero(self.arity, self.nvars);
        for (phi, a) in &self.parts {
            out.add_part(*phi, a * f);
        }
        out
    }

    /// Set `e_i = 0` and close the gap in the indices.
    pub fn set_zero(&self, i: usize) -> WeilElem {
        let mut out = Self::zero(self.arity - 1, self.nvars);
        for (phi, a) in &self.parts {
            if !phi.contains(i) {
                out.add_part(phi.delete_index(i), a.clone());
            }
        }
        out
    }

    /// View in `W_{arity}` for a larger arity, optionally shifting generators `e_i -> e_{i+shift}`.
    pub fn embed(&self, arity: usize, shift: usize) -> WeilElem {
        assert!(self.arity + shift <= arity);
        let mut out = Self::zero(arity, self.nvars);
        for (phi, a) in &self.parts {
            out.add_part(phi.shift(shift), a.clone());
        }
        out
    }

    /// JSON object keyed by comma-joined subsets; `""` is the unit part.
    pub fn to_json(&self) -> Value {
        let mut m = Map::new();
        for (phi, a) in &self.parts {
            m.insert(phi.key(), Value::String(a.to_string()));
        }
        Value::Object(m)
    }
}

impl<'a> Add<&'a WeilElem> for &'a WeilElem {
    type Output = WeilElem;
    fn add(self, rhs: &WeilElem) -> WeilElem {
        assert_eq!(self.arity, rhs.arity, "arity mismatch");
        let mut out = self.clone();
        for (phi, a) in &rhs.parts {
            out.add_part(*phi, a.clone());
        }
        out
    }
}

impl<'a> Sub<&'a WeilElem> for &'a WeilElem {
    type Output = WeilElem;
    fn sub(self, rhs: &WeilElem) -> WeilElem {
        assert_eq!(self.arity, rhs.arity, "arity mismatch");
        let mut out = self.clone();
        for (phi, a) in &rhs.parts {
            out.add_part(*phi, -a);
        }
        out
    }
}

impl fmt::Display for WeilElem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.parts.is_empty() {
            return write!(f, "0");
        }
        for (idx, (phi, a)) in self.parts.iter().enumerate() {
            if idx > 0 {
                write!(f, " + ")?;
            }
            if phi.is_empty() {
                write!(f, "({a})")?;
            } else {
                let eps: Vec<String> = phi.iter().map(|i| format!("e{i}")).collect();
                write!(f, "({a})*{}", eps.join("*"))?;
            }
        }
        Ok(())
    }
}

impl fmt::Debug for WeilElem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "WeilElem[{}]({self})", self.arity)
    }
}

/// Unital algebra morphism `A -> W_k (x) A` whose unit part is the identity,
/// stored by the images of the coordinate functions.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct WeilMorphism {
    arity: usize,
    images: Vec<WeilElem>,
}

impl WeilMorphism {
    pub fn new(arity: usize, images: Vec<WeilElem>) -> Result<Self> {
        let n = images.len();
        for (i, w) in images.iter().enumerate() {
            if w.arity != arity {
                return Err(Error::ArityMismatch {
                    left: arity,
                    right: w.arity,
                });
            }
            if w.nvars != n {
                return Err(Error::ChartMismatch {
                    left: n,
                    right: w.nvars,
                });
            }
            if w.part(Subset::EMPTY) != Poly::var(n, i) {
                return Err(Error::InvalidWeilMorphism(format!(
                    "unit part of the image of x{i} must be x{i}, got {}",
                    w.part(Subset::EMPTY)
                )));
            }
        }
        Ok(WeilMorphism { arity, images })
    }

    /// The morphism `f -> f` (zero k-field).
    pub fn identity(arity: usize, nvars: usize) -> Self {
        WeilMorphism {
            arity,
            images: (0..nvars)
                .map(|i| WeilElem::scalar(arity, Poly::var(nvars, i)))
                .collect(),
        }
    }

    pub fn arity(&self) -> usize {
        self.arity
    }

    pub fn nvars(&self) -> usize {
        self.images.len()
    }

    pub fn coordinate_images(&self) -> &[WeilElem] {
        &self.images
    }

    /// Image of an arbitrary polynomial by multiplicative extension.
    pub fn image(&self, f: &Poly) -> WeilElem {
        let n = self.nvars();
        let mut powers: Vec<Vec<WeilElem>> = vec![vec![WeilElem::scalar(self.arity, Poly::one(n))]; n];
        let mut out = WeilElem::zero(self.arity, n);
        for (m, c) in f.terms() {
            let mut t = WeilElem::scalar(self.arity, Poly::constant(n, c.clone()));
            for (i, &e) in m.0.iter().enumerate() {
                while powers[i].len() <= e as usize {
                    let next = powers[i].last().unwrap().mul_unchecked(&self.images[i]);
                    powers[i].push(next);
                }
                t = t.mul_unchecked(&powers[i][e as usize]);
            }
            out = &out + &t;
        }
        out
    }

    /// Set `e_i = 0` in every image.
    pub fn set_zero(&self, i: usize) -> WeilMorphism {
        WeilMorphism {
            arity: self.arity - 1,
            images: self.images.iter().map(|w| w.set_zero(i)).collect(),
        }
    }
}

/// All partitions of `phi` into nonempty blocks, each sorted in subset-lex order.
pub fn ordered_partitions(phi: Subset) -> Vec<Vec<Subset>> {
    fn rec(rest: Subset, acc: &mut Vec<Subset>, out: &mut Vec<Vec<Subset>>) {
        if rest.is_empty() {
            let mut blocks = acc.clone();
            blocks.sort();
            out.push(blocks);
            return;
        }
        let first = rest.iter().next().unwrap();
        let others = rest.remove(first);
        // every subset S of `others`, including empty, joins `first`
        let mut sub = others.bits();
        loop {
            let block = Subset::from_bits(sub).insert(first);
            acc.push(block);
            rec(rest.difference(block), acc, out);
            acc.pop();
            if sub == 0 {
                break;
            }
            sub = (sub - 1) & others.bits();
        }
    }
    let mut out = Vec::new();
    rec(phi, &mut Vec::new(), &mut out);
    out
}

fn compose_on(blocks: &[Subset], comps: &BTreeMap<Subset, VField>, f: &Poly) -> Poly {
    let mut g = f.clone();
    for b in blocks {
        match comps.get(b) {
            Some(a) if !a.is_zero() => g = a.apply_unchecked(&g),
            _ => return Poly::zero(f.nvars()),
        }
        if g.is_zero() {
            break;
        }
    }
    g
}

/// The operator formula applied directly to `f`.
pub fn operator_image(arity: usize, comps: &BTreeMap<Subset, VField>, f: &Poly) -> WeilElem {
    let mut out = WeilElem::scalar(arity, f.clone());
    for phi in Subset::all_nonempty(arity) {
        let mut part = Poly::zero(f.nvars());
        for blocks in ordered_partitions(phi) {
            part += &compose_on(&blocks, comps, f);
        }
        out.add_part(phi, part);
    }
    out
}

fn check_components(arity: usize, nvars: usize, comps: &BTreeMap<Subset, VField>) -> Result<()> {
    for (phi, a) in comps {
        if phi.is_empty() || phi.bound() > arity {
            return Err(Error::IndexOutOfRange {
                index: phi.bound().saturating_sub(1),
                bound: arity,
            });
        }
        if a.dim() != nvars {
            return Err(Error::ChartMismatch {
                left: nvars,
                right: a.dim(),
            });
        }
    }
    Ok(())
}

/// Weil morphism of a classical decomposition `{a_phi}`.
pub fn decomposition_to_weil(arity: usize, nvars: usize, comps: &BTreeMap<Subset, VField>) -> Result<WeilMorphism> {
    check_components(arity, nvars, comps)?;
    let images = (0..nvars)
        .map(|i| operator_image(arity, comps, &Poly::var(nvars, i)))
        .collect();
    WeilMorphism::new(arity, images)
}

/// Recover `{a_phi}` by induction on `|phi|`.
pub fn weil_to_decomposition(w: &WeilMorphism) -> BTreeMap<Subset, VField> {
    let k = w.arity;
    let n = w.nvars();
    let mut by_size: Vec<Subset> = Subset::all_nonempty(k);
    by_size.sort_by_key(|s| (s.len(), *s));
    let mut comps: BTreeMap<Subset, VField> = BTreeMap::new();
    for phi in by_size {
        let coeffs: Vec<Poly> = (0..n)
            .map(|i| {
                let x = Poly::var(n, i);
                let mut val = w.images[i].part(phi);
                for blocks in ordered_partitions(phi) {
                    if blocks.len() >= 2 {
                        val = &val - &compose_on(&blocks, &comps, &x);
                    }
                }
                val
            })
            .collect();
        let a = VField::new(coeffs).expect("dimensions agree");
        if !a.is_zero() {
            comps.insert(phi, a);
        }
    }
    comps
}

/// Weil morphism of a k-field with classical components.
pub fn kfield_to_weil(nu: &KField) -> Result<WeilMorphism> {
    decomposition_to_weil(nu.arity(), nu.nvars(), &nu.classical_components()?)
}

/// Classical k-field of a Weil morphism.
pub fn weil_to_kfield(w: &WeilMorphism) -> KField {
    embed_classical(w.arity, w.nvars(), &weil_to_decomposition(w)).expect("components in range")
}

/// A morphism `g: V_m -> W_m`, given by the images of the generators of `V_m`.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct CupFactorization {
    arity: usize,
    images: Vec<WeilElem>,
}

impl CupFactorization {
    /// Checks `g(e_i) g(e_j) = 0` for all `i, j`, the defining relation of `V_m`.
    pub fn new(arity: usize, images: Vec<WeilElem>) -> Result<Self> {
        for w in &images {
            if w.arity != arity {
                return Err(Error::ArityMismatch {
                    left: arity,
                    right: w.arity,
                });
            }
        }
        for i in 0..images.len() {
            for j in i..images.len() {
                if !images[i].mul_unchecked(&images[j]).is_zero() {
                    return Err(Error::InvalidFactorization { i, j });
                }
            }
        }
        Ok(CupFactorization { arity, images })
    }

    /// `g(e_j) = e_j`; a valid factorization only when `m = 1`.
    pub fn canonical(arity: usize, nvars: usize) -> Result<Self> {
        Self::new(arity, (0..arity).map(|j| WeilElem::epsilon(arity, nvars, j)).collect())
    }

    pub fn arity(&self) -> usize {
        self.arity
    }

    pub fn images(&self) -> &[WeilElem] {
        &self.images
    }
}

/// Cup product at the Weil level: `f -> x(f) + sum_j h(g(e_j)) e_0..e_{k-1} beta_j(f)`,
/// where `h` shifts generator indices by `k`.
pub fn weil_cup(x: &WeilMorphism, g: &CupFactorization, betas: &[VField]) -> Result<WeilMorphism> {
    let k = x.arity;
    let m = g.arity;
    let n = x.nvars();
    if betas.len() != g.images.len() {
        return Err(Error::ArityMismatch {
            left: g.images.len(),
            right: betas.len(),
        });
    }
    if let Some(b) = betas.iter().find(|b| b.dim() != n) {
        return Err(Error::ChartMismatch {
            left: n,
            right: b.dim(),
        });
    }
    let total = k + m;
    let top = WeilElem::term(total, Subset::full(k), Poly::one(n));
    let lifts: Vec<WeilElem> = g.images.iter().map(|e| e.embed(total, k).mul_unchecked(&top)).collect();
    let images = (0..n)
        .map(|i| {
            let xi = Poly::var(n, i);
            let mut img = x.images[i].embed(total, 0);
            for (lift, beta) in lifts.iter().zip(betas) {
                img = &img + &lift.scale(&beta.apply_unchecked(&xi));
            }
            img
        })
        .collect();
    WeilMorphism::new(total, images)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::chart::int;

    fn x(n: usize, i: usize) -> Poly {
        Poly::var(n, i)
    }

    fn s(v: &[usize]) -> Subset {
        Subset::from_indices(v.iter().copied())
    }

    #[test]
    fn nilpotent_generators() {
        let e0 = WeilElem::epsilon(2, 2, 0);
        assert!(e0.mul(&e0).unwrap().is_zero());
        assert!(e0.mul(&WeilElem::epsilon(3, 2, 0)).is_err());
    }

    #[test]
    fn product_example() {
        let one = WeilElem::scalar(2, Poly::one(2));
        let a = &one + &WeilElem::term(2, s(&[0]), x(2, 1));
        let b = &one + &WeilElem::term(2, s(&[1]), x(2, 0));
        let got = a.mul(&b).unwrap();
        let want = WeilElem::from_parts(
            2,
            2,
            [
                (Subset::EMPTY, Poly::one(2)),
                (s(&[0]), x(2, 1)),
                (s(&[1]), x(2, 0)),
                (s(&[0, 1]), &x(2, 0) * &x(2, 1)),
            ],
        )
        .unwrap();
        assert_eq!(got, want);
        assert_eq!(got, b.mul(&a).unwrap());
    }

    #[test]
    fn partitions_of_three() {
        let p = ordered_partitions(s(&[0, 1, 2]));
        assert_eq!(p.len(), 5);
        // the block order is subset-lex ascending
        assert!(p.contains(&vec![s(&[0, 2]), s(&[1])]));
        assert!(p.contains(&vec![s(&[0]), s(&[1, 2])]));
    }

    #[test]
    fn one_field_is_first_jet() {
        let a = VField::coord(2, 0).scale_poly(&x(2, 1));
        let comps = BTreeMap::from([(s(&[0]), a.clone())]);
        let f = &x(2, 0).pow(2) + &x(2, 1);
        let img = operator_image(1, &comps, &f);
        assert_eq!(img.part(Subset::EMPTY), f);
        assert_eq!(img.part(s(&[0])), a.apply(&f).unwrap());
        let w = decomposition_to_weil(1, 2, &comps).unwrap();
        assert_eq!(weil_to_decomposition(&w), comps);
    }

    #[test]
    fn second_order_part_matches_total_lift_action() {
        // e0e1-part = a01(f) + a1(a0(f))
        let n = 2;
        let a0 = VField::coord(n, 0).scale_poly(&x(n, 1));
        let a1 = &VField::coord(n, 1) + &VField::coord(n, 0).scale_poly(&x(n, 0));
        let a01 = VField::coord(n, 1).scale_poly(&x(n, 0).pow(2));
        let comps = BTreeMap::from([(s(&[0]), a0.clone()), (s(&[1]), a1.clone()), (s(&[0, 1]), a01.clone())]);
        let f = &(&x(n, 0) * &x(n, 1)) + &x(n, 1).pow(3);
        let img = decomposition_to_weil(2, n, &comps).unwrap().image(&f);
        let want = &a01.apply(&f).unwrap() + &a1.apply(&a0.apply(&f).unwrap()).unwrap();
        assert_eq!(img.part(s(&[0, 1])), want);
        assert_eq!(img, operator_image(2, &comps, &f));
    }

    #[test]
    fn rejects_bad_unit_part() {
        let bad = WeilElem::scalar(1, &x(1, 0) + &Poly::one(1));
        assert!(WeilMorphism::new(1, vec![bad]).is_err());
    }

    #[test]
    fn canonical_factorization_only_for_one_generator() {
        assert!(CupFactorization::canonical(1, 2).is_ok());
        assert!(matches!(
            CupFactorization::canonical(2, 2),
            Err(Error::InvalidFactorization { i: 0, j: 1 })
        ));
    }

    #[test]
    fn cup_with_one_field_is_vertical_lift() {
        let n = 2;
        let a = VField::coord(n, 0);
        let b = VField::coord(n, 1).scale_poly(&x(n, 0));
        let xw = decomposition_to_weil(1, n, &BTreeMap::from([(s(&[0]), a.clone())])).unwrap();
        let g = CupFactorization::canonical(1, n).unwrap();
        let cup = weil_cup(&xw, &g, std::slice::from_ref(&b)).unwrap();
        let comps = weil_to_decomposition(&cup);
        assert_eq!(comps, BTreeMap::from([(s(&[0]), a), (s(&[0, 1]), b.clone())]));

        // zero derivation pads with zero components
        let zero = weil_cup(&xw, &g, &[VField::zero(n)]).unwrap();
        assert_eq!(weil_to_decomposition(&zero).len(), 1);

        // k = 2, m = 1: beta lands at {0,1,2} only
        let x2 = decomposition_to_weil(
            2,
            n,
            &BTreeMap::from([
                (s(&[0]), VField::coord(n, 0)),
                (s(&[1]), VField::coord(n, 1).scale_poly(&int_poly(n, 3))),
            ]),
        )
        .unwrap();
        let c2 = weil_to_decomposition(&weil_cup(&x2, &g, std::slice::from_ref(&b)).unwrap());
        assert_eq!(c2.get(&s(&[0, 1, 2])), Some(&b));
        assert!(c2.keys().all(|k| !k.contains(2) || *k == s(&[0, 1, 2])));
    }

    #[test]
    fn kfield_dictionary() {
        let n = 2;
        let comps = BTreeMap::from([
            (s(&[0]), VField::coord(n, 0)),
            (s(&[1]), VField::coord(n, 1).scale_poly(&x(n, 0))),
            (s(&[0, 1]), VField::coord(n, 0).scale_poly(&x(n, 1))),
        ]);
        let nu = embed_classical(2, n, &comps).unwrap();
        let w = kfield_to_weil(&nu).unwrap();
        assert_eq!(weil_to_kfield(&w), nu);
        let faced = crate::groupoid::face(&nu, 0).unwrap();
        assert_eq!(w.set_zero(0), kfield_to_weil(&faced).unwrap());
        let free = KField::from_elem(
            crate::free_lr::RelativeSpec::free(crate::chart::ChartSpec::new(n, 3).unwrap())
                .bracket(
                    &crate::free_lr::FreeLRElem::generator(n, 0),
                    &crate::free_lr::FreeLRElem::generator(n, 1),
                )
                .unwrap(),
        );
        assert!(matches!(kfield_to_weil(&free), Err(Error::NonClassical { .. })));
    }

    fn int_poly(n: usize, c: i64) -> Poly {
        Poly::constant(n, int(c))
    }
}
