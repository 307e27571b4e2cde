//! k-fields of the full infinitesimal groupoid: subset-indexed families
//! `{a_phi}` of free Lie-Rinehart elements, with faces, additions over faces,
//! strong differences, cup and composition products, the two symmetric-group
//! actions, homotopy maps and the reduction to polyvector fields.

use std::collections::{BTreeMap, HashSet, VecDeque};
use std::fmt;

use serde_json::{json, Map, Value};

use crate::chart::VField;
use crate::error::{Error, Result};
use crate::free_lr::{FreeLRElem, RelativeSpec};
use crate::polyvector::Polyvector;
use crate::subset::{Subset, MAX_ARITY};

/// Which bracket enters the correction terms of the symmetric-group action.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Flavor {
    /// The free bracket `[[-,-]]`.
    Free,
    /// The second bracket `[-,-]`.
    Lie,
}

impl fmt::Display for Flavor {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Flavor::Free => "free",
            Flavor::Lie => "lie",
        })
    }
}

/// The swap `sigma_ij` with `i < j`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct Transposition {
    i: usize,
    j: usize,
}

impl Transposition {
    pub fn new(i: usize, j: usize, arity: usize) -> Result<Self> {
        if j >= arity {
            return Err(Error::IndexOutOfRange { index: j, bound: arity });
        }
        if i >= j {
            return Err(Error::MalformedWord(format!(
                "transposition needs i < j, got ({i},{j})"
            )));
        }
        Ok(Transposition { i, j })
    }

    pub fn i(&self) -> usize {
        self.i
    }

    pub fn j(&self) -> usize {
        self.j
    }
}

#[derive(Clone, PartialEq, Eq, Hash)]
pub struct KField {
    arity: usize,
    nvars: usize,
    components: BTreeMap<Subset, FreeLRElem>,
}

impl KField {
    pub fn zero(arity: usize, nvars: usize) -> Self {
        KField {
            arity,
            nvars,
            components: BTreeMap::new(),
        }
    }

    pub fn new(arity: usize, nvars: usize, comps: impl IntoIterator<Item = (Subset, FreeLRElem)>) -> Result<Self> {
        if arity == 0 {
            return Err(Error::ArityTooSmall { needed: 1, got: 0 });
        }
        if arity > MAX_ARITY {
            return Err(Error::IndexOutOfRange {
                index: arity,
                bound: MAX_ARITY,
            });
        }
        let mut out = Self::zero(arity, nvars);
        for (phi, a) in comps {
            if phi.is_empty() || phi.bound() > arity {
                return Err(Error::IndexOutOfRange {
                    index: phi.bound().saturating_sub(1),
                    bound: arity,
                });
            }
            if a.nvars() != nvars {
                return Err(Error::ChartMismatch {
                    left: nvars,
                    right: a.nvars(),
                });
            }
            out.set(phi, a);
        }
        Ok(out)
    }

    /// A 1-field.
    pub fn from_field(v: &VField) -> Self {
        let mut out = Self::zero(1, v.dim());
        out.set(Subset::singleton(0), FreeLRElem::from_vfield(v));
        out
    }

    pub fn from_elem(u: FreeLRElem) -> Self {
        let mut out = Self::zero(1, u.nvars());
        out.set(Subset::singleton(0), u);
        out
    }

    fn set(&mut self, phi: Subset, a: FreeLRElem) {
        if a.is_zero() {
            self.components.remove(&phi);
        } else {
            self.components.insert(phi, a);
        }
    }

    pub fn arity(&self) -> usize {
        self.arity
    }

    pub fn nvars(&self) -> usize {
        self.nvars
    }

    pub fn component(&self, phi: Subset) -> FreeLRElem {
        self.components
            .get(&phi)
            .cloned()
            .unwrap_or_else(|| FreeLRElem::zero(self.nvars))
    }

    /// Nonzero components in subset-lex order.
    pub fn components(&self) -> impl Iterator<Item = (&Subset, &FreeLRElem)> {
        self.components.iter()
    }

    pub fn support(&self) -> Vec<Subset> {
        self.components.keys().copied().collect()
    }

    pub fn is_zero(&self) -> bool {
        self.components.is_empty()
    }

    /// Every component is a classical vector field.
    pub fn is_classical(&self) -> bool {
        self.components.values().all(FreeLRElem::is_classical)
    }

    pub fn flavor_name(&self) -> &'static str {
        if self.is_classical() {
            "classical"
        } else {
            "free"
        }
    }

    pub fn classical_components(&self) -> Result<BTreeMap<Subset, VField>> {
        self.components
            .iter()
            .map(|(phi, a)| {
                if a.is_classical() {
                    Ok((*phi, a.degree_one_part()))
                } else {
                    Err(Error::NonClassical { subset: *phi })
                }
            })
            .collect()
    }

    /// Componentwise projection to classical fields.
    pub fn project(&self) -> KField {
        let mut out = Self::zero(self.arity, self.nvars);
        for (phi, a) in &self.components {
            out.set(*phi, FreeLRElem::from_vfield(&a.anchor()));
        }
        out
    }

    pub fn to_json(&self) -> Value {
        let mut comps = Map::new();
        for (phi, a) in &self.components {
            comps.insert(phi.key(), a.to_json());
        }
        json!({"arity": self.arity, "flavor": self.flavor_name(), "components": comps})
    }

    fn check_same_shape(&self, other: &KField) -> Result<()> {
        if self.nvars != other.nvars {
            return Err(Error::ChartMismatch {
                left: self.nvars,
                right: other.nvars,
            });
        }
        if self.arity != other.arity {
            return Err(Error::ArityMismatch {
                left: self.arity,
                right: other.arity,
            });
        }
        Ok(())
    }
}

impl fmt::Display for KField {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "field({}", self.arity)?;
        for (phi, a) in &self.components {
            write!(f, ", {phi}: {a}")?;
        }
        write!(f, ")")
    }
}

impl fmt::Debug for KField {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

/// Include a classical decomposition `{a_phi}` as a k-field.
pub fn embed_classical(arity: usize, nvars: usize, comps: &BTreeMap<Subset, VField>) -> Result<KField> {
    KField::new(
        arity,
        nvars,
        comps.iter().map(|(phi, v)| (*phi, FreeLRElem::from_vfield(v))),
    )
}

/// Restriction to the face `e_i = 0`.
pub fn face(nu: &KField, i: usize) -> Result<KField> {
    if i >= nu.arity {
        return Err(Error::IndexOutOfRange {
            index: i,
            bound: nu.arity,
        });
    }
    if nu.arity == 1 {
        return Err(Error::ArityTooSmall { needed: 2, got: 1 });
    }
    let mut out = KField::zero(nu.arity - 1, nu.nvars);
    for (phi, a) in &nu.components {
        if !phi.contains(i) {
            out.set(phi.delete_index(i), a.clone());
        }
    }
    Ok(out)
}

/// Addition over the `(k-1)`-face `psi`.
pub fn add_over_face(mu: &KField, nu: &KField, psi: Subset) -> Result<KField> {
    mu.check_same_shape(nu)?;
    let k = mu.arity;
    if psi.bound() > k || psi.len() + 1 != k {
        return Err(Error::Type(format!(
            "{psi} is not a face of codimension one in arity {k}"
        )));
    }
    let mut out = KField::zero(k, mu.nvars);
    for phi in Subset::all_nonempty(k) {
        let (a, b) = (mu.component(phi), nu.component(phi));
        if phi.is_subset_of(psi) {
            if a != b {
                return Err(Error::FaceMismatch { subset: phi });
            }
            out.set(phi, a);
        } else {
            out.set(phi, &a + &b);
        }
    }
    Ok(out)
}

/// Strong difference of two k-fields sharing their boundary away from `{i, j}`.
pub fn strong_diff(mu: &KField, nu: &KField, i: usize, j: usize) -> Result<KField> {
    mu.check_same_shape(nu)?;
    let k = mu.arity;
    if k < 2 {
        return Err(Error::ArityTooSmall { needed: 2, got: k });
    }
    Transposition::new(i, j, k)?;
    let both = Subset::from_indices([i, j]);
    for phi in Subset::all_nonempty(k) {
        if !both.is_subset_of(phi) && mu.component(phi) != nu.component(phi) {
            return Err(Error::BoundaryMismatch { subset: phi });
        }
    }
    let mut out = KField::zero(k - 1, mu.nvars);
    for chi in Subset::all_nonempty(k) {
        if chi.contains(j) {
            continue;
        }
        let value = if chi.contains(i) {
            let full = chi.insert(j);
            &mu.component(full) - &nu.component(full)
        } else {
            mu.component(chi)
        };
        out.set(chi.delete_index(j), value);
    }
    Ok(out)
}

/// Cup product in decomposition form: `mu` on the first block, and each
/// component `nu_psi` placed at `{0..k-1}` together with `psi` shifted by `k`.
/// Defined when the nonzero components of `nu` pairwise intersect.
pub fn cup(mu: &KField, nu: &KField) -> Result<KField> {
    check_chart(mu, nu)?;
    let supp = nu.support();
    for (a, p) in supp.iter().enumerate() {
        for q in &supp[a + 1..] {
            if p.is_disjoint(*q) {
                return Err(Error::CupUndefined { left: *p, right: *q });
            }
        }
    }
    let k = mu.arity;
    let mut out = KField::zero(k + nu.arity, mu.nvars);
    out.components = mu.components.clone();
    let base = Subset::full(k);
    for (psi, b) in &nu.components {
        out.set(base.union(psi.shift(k)), b.clone());
    }
    Ok(out)
}

/// Composition product: `mu` on the first block, `nu` on the shifted block, mixed components zero.
pub fn compose(mu: &KField, nu: &KField) -> Result<KField> {
    check_chart(mu, nu)?;
    let k = mu.arity;
    let mut out = KField::zero(k + nu.arity, mu.nvars);
    out.components = mu.components.clone();
    for (psi, b) in &nu.components {
        out.set(psi.shift(k), b.clone());
    }
    Ok(out)
}

fn check_chart(mu: &KField, nu: &KField) -> Result<()> {
    if mu.nvars != nu.nvars {
        return Err(Error::ChartMismatch {
            left: mu.nvars,
            right: nu.nvars,
        });
    }
    if mu.arity + nu.arity > MAX_ARITY {
        return Err(Error::IndexOutOfRange {
            index: mu.arity + nu.arity,
            bound: MAX_ARITY,
        });
    }
    Ok(())
}

fn flavored_bracket(spec: &RelativeSpec, flavor: Flavor, a: &FreeLRElem, b: &FreeLRElem) -> Result<FreeLRElem> {
    match flavor {
        Flavor::Free => spec.bracket(a, b),
        Flavor::Lie => spec.lie_bracket(a, b),
    }
}

/// Decompositions `phi = phi' + phi''` with `phi' < phi''` and `s(phi') > s(phi'')`.
fn correction_pairs(phi: Subset, perm: &[usize]) -> Vec<(Subset, Subset)> {
    let mut out: Vec<(Subset, Subset)> = phi
        .proper_nonempty_subsets()
        .map(|p| (p, phi.difference(p)))
        .filter(|(p, q)| p < q && p.permute(perm) > q.permute(perm))
        .collect();
    out.sort();
    out
}

/// One step of the action for an involution `perm`:
/// `a'_phi = a_{s(phi)}` if `s(phi) != phi`, else `a_phi + sum [a_phi', a_phi'']`.
fn act_involution(spec: &RelativeSpec, perm: &[usize], nu: &KField, flavor: Flavor) -> Result<KField> {
    let mut out = KField::zero(nu.arity, nu.nvars);
    for phi in Subset::all_nonempty(nu.arity) {
        let image = phi.permute(perm);
        if image != phi {
            out.set(phi, nu.component(image));
            continue;
        }
        let mut value = nu.component(phi);
        for (p, q) in correction_pairs(phi, perm) {
            if let (Some(a), Some(b)) = (nu.components.get(&p), nu.components.get(&q)) {
                value = &value + &flavored_bracket(spec, flavor, a, b)?;
            }
        }
        out.set(phi, spec.normalize(&value)?);
    }
    Ok(out)
}

fn swap_perm(k: usize, i: usize, j: usize) -> Vec<usize> {
    let mut perm: Vec<usize> = (0..k).collect();
    perm.swap(i, j);
    perm
}

/// Action of a word `s_{w_1} .. s_{w_r}` of adjacent transpositions
/// `s_g = sigma_{g,g+1}`, applied rightmost first.
pub fn act(spec: &RelativeSpec, word: &[usize], nu: &KField, flavor: Flavor) -> Result<KField> {
    if let Some(&g) = word.iter().find(|&&g| g + 1 >= nu.arity) {
        return Err(Error::MalformedWord(format!(
            "generator {g} needs arity at least {}, got {}",
            g + 2,
            nu.arity
        )));
    }
    let mut out = nu.clone();
    for &g in word.iter().rev() {
        out = act_involution(spec, &swap_perm(nu.arity, g, g + 1), &out, flavor)?;
    }
    Ok(out)
}

/// The action formula applied directly to the transposition `sigma_ij`.
pub fn act_transposition(spec: &RelativeSpec, t: Transposition, nu: &KField, flavor: Flavor) -> Result<KField> {
    if t.j >= nu.arity {
        return Err(Error::IndexOutOfRange {
            index: t.j,
            bound: nu.arity,
        });
    }
    act_involution(spec, &swap_perm(nu.arity, t.i, t.j), nu, flavor)
}

/// `h_ij(nu)`: strong difference of the free and the lie action of `sigma_ij`.
pub fn homotopy(spec: &RelativeSpec, nu: &KField, i: usize, j: usize) -> Result<KField> {
    if nu.arity < 2 {
        return Err(Error::ArityTooSmall {
            needed: 2,
            got: nu.arity,
        });
    }
    let t = Transposition::new(i, j, nu.arity)?;
    let free = act_transposition(spec, t, nu, Flavor::Free)?;
    let lie = act_transposition(spec, t, nu, Flavor::Lie)?;
    strong_diff(&free, &lie, i, j)
}

/// Where the free and lie actions of `sigma_ij` first disagree, and the
/// decomposition `left + right` of that component responsible for it.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct HomotopyWitness {
    pub i: usize,
    pub j: usize,
    pub component: Subset,
    pub left: Subset,
    pub right: Subset,
}

impl fmt::Display for HomotopyWitness {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({},{},{},{})", self.i, self.j, self.left, self.right)
    }
}

impl From<HomotopyWitness> for Error {
    fn from(w: HomotopyWitness) -> Error {
        Error::NotClosed {
            i: w.i,
            j: w.j,
            component: w.component,
            left: w.left,
            right: w.right,
        }
    }
}

/// `None` when every `sigma_ij` acts identically in both flavors.
pub fn is_trivial_homotopy(spec: &RelativeSpec, nu: &KField) -> Result<Option<HomotopyWitness>> {
    let k = nu.arity;
    for i in 0..k {
        for j in i + 1..k {
            let t = Transposition { i, j };
            let free = act_transposition(spec, t, nu, Flavor::Free)?;
            let lie = act_transposition(spec, t, nu, Flavor::Lie)?;
            if free == lie {
                continue;
            }
            let phi = Subset::all_nonempty(k)
                .into_iter()
                .find(|phi| free.component(*phi) != lie.component(*phi))
                .expect("fields differ somewhere");
            let perm = swap_perm(k, i, j);
            let pairs = correction_pairs(phi, &perm);
            let mut nonzero = pairs
                .iter()
                .filter(|(p, q)| nu.components.contains_key(p) && nu.components.contains_key(q));
            let mut culprit = None;
            for (p, q) in nonzero.clone() {
                let (a, b) = (&nu.components[p], &nu.components[q]);
                if spec.bracket(a, b)? != spec.lie_bracket(a, b)? {
                    culprit = Some((*p, *q));
                    break;
                }
            }
            let (left, right) = culprit.or_else(|| nonzero.next().copied()).unwrap_or((phi, phi));
            return Ok(Some(HomotopyWitness {
                i,
                j,
                component: phi,
                left,
                right,
            }));
        }
    }
    Ok(None)
}

fn on_flag(nu: &KField) -> bool {
    nu.components.keys().all(|phi| *phi == Subset::full(phi.bound()))
}

/// Cohomology class of `nu` as a decomposable polyvector.
pub fn reduce_to_polyvector(spec: &RelativeSpec, nu: &KField) -> Result<Polyvector> {
    let free = spec.fully_free().with_max_degree(spec.max_degree().max(2));
    let classical = nu.project();
    if let Some(w) = is_trivial_homotopy(&free, &classical)? {
        return Err(w.into());
    }
    let k = nu.arity;
    let start: Vec<usize> = (0..k).collect();
    let mut seen: HashSet<Vec<usize>> = HashSet::from([start.clone()]);
    let mut queue = VecDeque::from([(start, classical)]);
    let mut flagged = None;
    while let Some((perm, field)) = queue.pop_front() {
        if on_flag(&field) {
            flagged = Some(field);
            break;
        }
        for g in 0..k.saturating_sub(1) {
            let mut next = perm.clone();
            next.swap(g, g + 1);
            if seen.insert(next.clone()) {
                queue.push_back((next, act(&free, &[g], &field, Flavor::Lie)?));
            }
        }
    }
    let field = flagged.ok_or(Error::NotFlagReducible)?;
    let mut chain: Vec<VField> = Vec::new();
    for r in 1..=k {
        let v = field.component(Subset::full(r)).degree_one_part();
        if !v.is_zero() && !chain.contains(&v) {
            chain.push(v);
        }
    }
    Polyvector::wedge_fields(nu.nvars, &chain)
}

/// The Lie derivative recipe on thin 2-fields: transpose `beta x alpha` with the
/// lie action, then take the strong difference with `alpha x beta`.
pub fn lie_derivative_thin(spec: &RelativeSpec, beta: &VField, alpha: &VField) -> Result<VField> {
    let (a, b) = (KField::from_field(alpha), KField::from_field(beta));
    let moved = act(spec, &[0], &compose(&b, &a)?, Flavor::Lie)?;
    let diff = strong_diff(&moved, &compose(&a, &b)?, 0, 1)?;
    Ok(diff.component(Subset::singleton(0)).anchor())
}
