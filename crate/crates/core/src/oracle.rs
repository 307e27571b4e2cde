//! Independent brute-force verifiers and the seeded random sampler.
//!
//! Each oracle recomputes its value along a different route from the code it
//! checks: operator images by enumerating set partitions as restricted growth
//! strings, brackets by the coordinate formula, Lyndon counts by the necklace
//! formula, and the low-degree relative quotient by explicit linear algebra.

use std::collections::BTreeMap;
use std::fmt;

use num::{One, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde_json::{json, Value};

use crate::chart::{Monomial, Poly, Rational, VField};
use crate::error::{Error, Result};
use crate::free_lr::{FreeLRElem, RelativeSpec};
use crate::groupoid::KField;
use crate::lyndon::{lyndon_basis, LyndonWord};
use crate::subset::Subset;
use crate::weil::{kfield_to_weil, WeilElem};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CheckFailure {
    pub inputs: String,
    pub expected: String,
    pub got: String,
}

/// Outcome of one named check: passes iff `failures` is empty.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CheckReport {
    pub name: String,
    pub cases: usize,
    pub failures: Vec<CheckFailure>,
}

impl CheckReport {
    pub fn new(name: impl Into<String>) -> Self {
        CheckReport {
            name: name.into(),
            cases: 0,
            failures: Vec::new(),
        }
    }

    /// Record one case; the descriptions are only rendered on failure.
    pub fn case(
        &mut self,
        ok: bool,
        inputs: impl FnOnce() -> String,
        expected: impl fmt::Display,
        got: impl fmt::Display,
    ) {
        self.cases += 1;
        if !ok {
            self.failures.push(CheckFailure {
                inputs: inputs(),
                expected: expected.to_string(),
                got: got.to_string(),
            });
        }
    }

    /// Record a case that compares two values for equality.
    pub fn compare<T: PartialEq + fmt::Display>(&mut self, inputs: impl FnOnce() -> String, expected: &T, got: &T) {
        let ok = expected == got;
        self.case(ok, inputs, expected, got);
    }

    pub fn fail(&mut self, inputs: impl Into<String>, expected: impl fmt::Display, got: impl fmt::Display) {
        let inputs = inputs.into();
        self.case(false, || inputs, expected, got);
    }

    pub fn passed(&self) -> bool {
        self.failures.is_empty()
    }

    /// The report of the same check with its verdict negated.
    pub fn inverted(mut self) -> Self {
        if self.failures.is_empty() {
            self.failures.push(CheckFailure {
                inputs: "inverted oracle".into(),
                expected: "a disagreement".into(),
                got: format!("agreement on all {} cases", self.cases),
            });
        } else {
            self.failures.clear();
        }
        self
    }

    pub fn to_json(&self) -> Value {
        let failures: Vec<Value> = self
            .failures
            .iter()
            .map(|f| json!({"inputs": f.inputs, "expected": f.expected, "got": f.got}))
            .collect();
        json!({"name": self.name, "cases": self.cases, "failures": failures})
    }
}

impl fmt::Display for CheckReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.passed() {
            write!(f, "PASS {} ({} cases)", self.name, self.cases)
        } else {
            write!(
                f,
                "FAIL {} ({} of {} cases failed)",
                self.name,
                self.failures.len(),
                self.cases
            )?;
            let first = &self.failures[0];
            write!(
                f,
                "\n  inputs: {}\n  expected: {}\n  got: {}",
                first.inputs, first.expected, first.got
            )
        }
    }
}

/// Deterministic source of random test data.
pub struct Sampler {
    rng: ChaCha8Rng,
}

impl Sampler {
    pub fn new(seed: u64) -> Self {
        Sampler {
            rng: ChaCha8Rng::seed_from_u64(seed),
        }
    }

    pub fn rng(&mut self) -> &mut ChaCha8Rng {
        &mut self.rng
    }

    /// Nonzero rational with numerator and denominator bounded by 9.
    pub fn rational(&mut self) -> Rational {
        let mut num = self.rng.gen_range(1..=9i64);
        if self.rng.gen_bool(0.5) {
            num = -num;
        }
        Rational::new(num.into(), self.rng.gen_range(1..=9i64).into())
    }

    /// Up to three terms of total degree at most `max_deg`; never zero.
    pub fn poly(&mut self, n: usize, max_deg: u32) -> Poly {
        loop {
            let mut p = Poly::zero(n);
            for _ in 0..self.rng.gen_range(1..=3) {
                let deg = self.rng.gen_range(0..=max_deg);
                let mut exps = vec![0u32; n];
                for _ in 0..deg {
                    exps[self.rng.gen_range(0..n)] += 1;
                }
                let c = self.rational();
                p += &Poly::monomial(n, Monomial(exps), c);
            }
            if !p.is_zero() {
                return p;
            }
        }
    }

    /// Nonzero field with coefficients of degree at most 2.
    pub fn vfield(&mut self, n: usize) -> VField {
        loop {
            let coeffs: Vec<Poly> = (0..n)
                .map(|_| {
                    if self.rng.gen_bool(0.6) {
                        self.poly(n, 2)
                    } else {
                        Poly::zero(n)
                    }
                })
                .collect();
            let v = VField::new(coeffs).expect("dimensions agree");
            if !v.is_zero() {
                return v;
            }
        }
    }

    /// Classical k-field whose components are present with probability `density`.
    pub fn classical_kfield(&mut self, k: usize, n: usize, density: f64) -> KField {
        let comps: Vec<(Subset, FreeLRElem)> = Subset::all_nonempty(k)
            .into_iter()
            .filter_map(|phi| {
                if self.rng.gen_bool(density) {
                    Some((phi, FreeLRElem::from_vfield(&self.vfield(n))))
                } else {
                    None
                }
            })
            .collect();
        KField::new(k, n, comps).expect("valid components")
    }

    /// Classical k-field with every component nonzero.
    pub fn full_kfield(&mut self, k: usize, n: usize) -> KField {
        self.classical_kfield(k, n, 1.0)
    }

    /// Element of the fully free algebra with words of length at most `max_len`.
    pub fn free_elem(&mut self, n: usize, max_len: usize) -> FreeLRElem {
        let mut out = FreeLRElem::from_vfield(&self.vfield(n));
        for len in 2..=max_len {
            for w in lyndon_basis(n, len) {
                if self.rng.gen_bool(0.4) {
                    let c = self.poly(n, 1);
                    out = &out + &FreeLRElem::monomial(n, w).scale_poly(&c);
                }
            }
        }
        out
    }

    /// k-field with free components of word length at most 2.
    pub fn free_kfield(&mut self, k: usize, n: usize) -> KField {
        let comps: Vec<(Subset, FreeLRElem)> = Subset::all_nonempty(k)
            .into_iter()
            .filter_map(|phi| {
                if self.rng.gen_bool(0.6) {
                    Some((phi, self.free_elem(n, 2)))
                } else {
                    None
                }
            })
            .collect();
        KField::new(k, n, comps).expect("valid components")
    }

    /// Uniformly random permutation of `0..k`, as `perm[old] = new`.
    pub fn permutation(&mut self, k: usize) -> Vec<usize> {
        let mut p: Vec<usize> = (0..k).collect();
        for i in (1..k).rev() {
            let j = self.rng.gen_range(0..=i);
            p.swap(i, j);
        }
        p
    }
}

/// Reduced word in adjacent transpositions `s_g = (g g+1)` for `perm`,
/// written so that applying it rightmost first realizes `perm`.
pub fn permutation_word(perm: &[usize]) -> Vec<usize> {
    let mut p = perm.to_vec();
    let mut word = Vec::new();
    // bubble sort records the generators that undo p
    while let Some(g) = (0..p.len().saturating_sub(1)).find(|&g| p[g] > p[g + 1]) {
        p.swap(g, g + 1);
        word.push(g);
    }
    word.reverse();
    word
}

/// `[u, v]^i = u(v^i) - v(u^i)`, written out in coordinates.
pub fn oracle_bracket(u: &VField, v: &VField) -> VField {
    let n = u.dim();
    let apply = |w: &VField, f: &Poly| {
        let mut acc = Poly::zero(n);
        for j in 0..n {
            let df = f.derive(j).expect("index in range");
            acc += &(w.coeff(j) * &df);
        }
        acc
    };
    let coeffs = (0..n).map(|i| &apply(u, v.coeff(i)) - &apply(v, u.coeff(i))).collect();
    VField::new(coeffs).expect("dimensions agree")
}

fn mobius(mut m: u64) -> i64 {
    let mut result = 1;
    let mut p = 2;
    while p * p <= m {
        if m.is_multiple_of(p) {
            m /= p;
            if m.is_multiple_of(p) {
                return 0;
            }
            result = -result;
        }
        p += 1;
    }
    if m > 1 {
        result = -result;
    }
    result
}

/// Necklace formula `(1/d) sum_{e | d} mu(e) n^(d/e)` for the number of
/// Lyndon words of length `d` over `n` letters.
pub fn oracle_lyndon_count(n: u64, d: u64) -> u64 {
    let total: i128 = (1..=d)
        .filter(|e| d.is_multiple_of(*e))
        .map(|e| mobius(e) as i128 * (n as i128).pow((d / e) as u32))
        .sum();
    (total / d as i128) as u64
}

/// All set partitions of `elems`, via restricted growth strings.
fn set_partitions(elems: &[usize]) -> Vec<Vec<Subset>> {
    let m = elems.len();
    let mut out = Vec::new();
    let mut labels = vec![0usize; m];
    loop {
        let blocks = labels.iter().max().map_or(0, |b| b + 1);
        let mut parts = vec![Subset::EMPTY; blocks];
        for (pos, &b) in labels.iter().enumerate() {
            parts[b] = parts[b].insert(elems[pos]);
        }
        out.push(parts);
        // next restricted growth string
        let mut pos = m;
        loop {
            if pos <= 1 {
                return out;
            }
            pos -= 1;
            let prefix_max = labels[..pos].iter().copied().max().unwrap_or(0);
            if labels[pos] <= prefix_max {
                labels[pos] += 1;
                for l in labels.iter_mut().skip(pos + 1) {
                    *l = 0;
                }
                break;
            }
        }
    }
}

/// Operator-formula image of `f` evaluated from scratch; `corrupt` doubles the
/// composite terms of the `e0 e1` part.
pub fn brute_operator_image(k: usize, comps: &BTreeMap<Subset, VField>, f: &Poly, corrupt: bool) -> WeilElem {
    let n = f.nvars();
    let mut parts = vec![(Subset::EMPTY, f.clone())];
    for bits in 1u32..(1 << k) {
        let phi = Subset::from_bits(bits);
        let elems: Vec<usize> = phi.iter().collect();
        let mut total = Poly::zero(n);
        for mut blocks in set_partitions(&elems) {
            blocks.sort();
            let mut g = f.clone();
            for b in &blocks {
                g = match comps.get(b) {
                    Some(a) => a.apply(&g).expect("same chart"),
                    None => Poly::zero(n),
                };
            }
            if corrupt && bits == 0b11 && blocks.len() > 1 {
                g = &g + &g;
            }
            total += &g;
        }
        parts.push((phi, total));
    }
    WeilElem::from_parts(k, n, parts).expect("valid parts")
}

fn multiplicativity(nu: &KField, trials: usize, sampler: &mut Sampler, corrupt: bool) -> Result<CheckReport> {
    let k = nu.arity();
    if k > 3 {
        return Err(Error::Type(format!(
            "multiplicativity oracle expects arity at most 3, got {k}"
        )));
    }
    let comps = nu.classical_components()?;
    let w = kfield_to_weil(nu)?;
    let n = nu.nvars();
    let mut report = CheckReport::new("multiplicativity");
    // coordinate pairs first, then random polynomials
    let mut pairs: Vec<(Poly, Poly)> = (0..n)
        .flat_map(|i| (i..n).map(move |j| (Poly::var(n, i), Poly::var(n, j))))
        .collect();
    pairs.extend((0..trials).map(|_| (sampler.poly(n, 2), sampler.poly(n, 2))));
    for (f, g) in pairs {
        let of = brute_operator_image(k, &comps, &f, corrupt);
        let og = brute_operator_image(k, &comps, &g, corrupt);
        let ofg = brute_operator_image(k, &comps, &(&f * &g), corrupt);
        let prod = of.mul(&og)?;
        report.compare(|| format!("nu = {nu}, f = {f}, g = {g}"), &prod, &ofg);
        report.compare(|| format!("nu = {nu}, f = {f}"), &of, &w.image(&f));
    }
    Ok(report)
}

/// Checks `D(fg) = D(f) D(g)` for the operator formula and its agreement with
/// `kfield_to_weil(nu)`, on all coordinate pairs and on random `f, g` of degree at most 2.
pub fn oracle_multiplicativity(nu: &KField, trials: usize, sampler: &mut Sampler) -> Result<CheckReport> {
    multiplicativity(nu, trials, sampler, false)
}

/// The same check with the composite part of the `e0 e1` coefficient doubled.
pub fn oracle_multiplicativity_corrupted(nu: &KField, trials: usize, sampler: &mut Sampler) -> Result<CheckReport> {
    let mut r = multiplicativity(nu, trials, sampler, true)?;
    r.name = "multiplicativity (corrupted)".into();
    Ok(r)
}

/// Rank of a list of sparse rational rows.
pub fn sparse_rank(rows: Vec<BTreeMap<usize, Rational>>) -> usize {
    let mut pivots: BTreeMap<usize, BTreeMap<usize, Rational>> = BTreeMap::new();
    for mut row in rows {
        loop {
            row.retain(|_, c| !c.is_zero());
            let Some((&lead, lc)) = row.iter().next() else { break };
            let lc = lc.clone();
            match pivots.get(&lead) {
                Some(p) => {
                    let factor = &lc / &p[&lead];
                    for (col, c) in p {
                        let e = row.entry(*col).or_insert_with(Rational::zero);
                        *e -= &factor * c;
                    }
                }
                None => {
                    let inv = Rational::one() / &lc;
                    let normed = row.into_iter().map(|(col, c)| (col, c * &inv)).collect();
                    pivots.insert(lead, normed);
                    break;
                }
            }
        }
    }
    pivots.len()
}

/// Outcome of the low-degree quotient check.
#[derive(Clone, Debug)]
pub struct QuotientReport {
    pub report: CheckReport,
    /// Total rank of the quotient over the coefficient algebra.
    pub rank: usize,
    /// Rank of the top-degree slice.
    pub slice_rank: usize,
}

const TRUNCATION: u32 = 3;

fn monomials_upto(n: usize, deg: u32) -> Vec<Monomial> {
    let mut out = vec![Monomial(vec![0; n])];
    for _ in 0..deg {
        let mut next = out.clone();
        for m in &out {
            for i in 0..n {
                let mut e = m.0.clone();
                e[i] += 1;
                next.push(Monomial(e));
            }
        }
        next.sort();
        next.dedup();
        out = next;
    }
    out.retain(|m| m.degree() <= deg);
    out
}

#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord)]
enum Symbol {
    One(Monomial, usize),
    Two(Monomial, usize, Monomial, usize),
}

fn mono_add(a: &Monomial, b: &Monomial) -> Monomial {
    a.mul(b)
}

/// Builds `R(M, g)_{<= d}` for `d <= 2` as the span of formal symbols
/// `x^a d_i` and `[x^a d_i, x^b d_j]` (coefficient degree truncated at 3)
/// modulo antisymmetry, `[x, f y] - [f x, y] = x(f) y + y(f) x`, and
/// `[g, x] = g(x)` for vertical `g`; then checks the normal form of
/// `spec` kills every relation and has the same dimension as the quotient.
pub fn oracle_quotient_lowdegree(spec: &RelativeSpec, d: usize) -> Result<QuotientReport> {
    if d == 0 || d > 2 {
        return Err(Error::Type(format!("quotient oracle supports degree 1 or 2, got {d}")));
    }
    let n = spec.dim();
    let nf_spec = spec.with_max_degree(spec.max_degree().max(d));
    let monos = monomials_upto(n, TRUNCATION);
    let mut symbols: Vec<Symbol> = Vec::new();
    for a in &monos {
        for i in 0..n {
            symbols.push(Symbol::One(a.clone(), i));
        }
    }
    if d == 2 {
        for a in &monos {
            for b in &monos {
                if a.degree() + b.degree() <= TRUNCATION {
                    for i in 0..n {
                        for j in 0..n {
                            symbols.push(Symbol::Two(a.clone(), i, b.clone(), j));
                        }
                    }
                }
            }
        }
    }
    let index: BTreeMap<Symbol, usize> = symbols.iter().cloned().enumerate().map(|(p, s)| (s, p)).collect();

    let field = |a: &Monomial, i: usize| VField::coord(n, i).scale_poly(&Poly::monomial(n, a.clone(), Rational::one()));
    let add = |row: &mut BTreeMap<usize, Rational>, s: Symbol, c: Rational| {
        *row.entry(index[&s]).or_insert_with(Rational::zero) += c;
    };
    // degree-1 symbols of a classical field
    let add_field = |row: &mut BTreeMap<usize, Rational>, v: &VField, sign: &Rational| {
        for i in 0..n {
            for (m, c) in v.coeff(i).terms() {
                *row.entry(index[&Symbol::One(m.clone(), i)])
                    .or_insert_with(Rational::zero) += c * sign;
            }
        }
    };

    let mut relations: Vec<BTreeMap<usize, Rational>> = Vec::new();
    if d == 2 {
        let one = Rational::one();
        let minus = -Rational::one();
        for s in &symbols {
            if let Symbol::Two(a, i, b, j) = s {
                let mut row = BTreeMap::new();
                add(&mut row, s.clone(), one.clone());
                add(&mut row, Symbol::Two(b.clone(), *j, a.clone(), *i), one.clone());
                relations.push(row);
                for c in &monos {
                    if a.degree() + b.degree() + c.degree() > TRUNCATION || c.degree() == 0 {
                        continue;
                    }
                    let (x, y) = (field(a, *i), field(b, *j));
                    let f = Poly::monomial(n, c.clone(), one.clone());
                    let mut row = BTreeMap::new();
                    add(&mut row, Symbol::Two(a.clone(), *i, mono_add(b, c), *j), one.clone());
                    add(&mut row, Symbol::Two(mono_add(a, c), *i, b.clone(), *j), minus.clone());
                    add_field(&mut row, &y.scale_poly(&x.apply(&f)?), &minus);
                    add_field(&mut row, &x.scale_poly(&y.apply(&f)?), &minus);
                    relations.push(row);
                }
                if spec.vertical().contains(i) {
                    let mut row = BTreeMap::new();
                    add(&mut row, s.clone(), one.clone());
                    add_field(&mut row, &oracle_bracket(&field(a, *i), &field(b, *j)), &minus);
                    relations.push(row);
                }
            }
        }
    }

    // normal form coordinates: (word, monomial)
    let mut coords: BTreeMap<(LyndonWord, Monomial), usize> = BTreeMap::new();
    let mut normal_rows = Vec::new();
    let mut images = Vec::new();
    for s in &symbols {
        let elem = match s {
            Symbol::One(a, i) => FreeLRElem::from_vfield(&field(a, *i)),
            Symbol::Two(a, i, b, j) => nf_spec.bracket(
                &FreeLRElem::from_vfield(&field(a, *i)),
                &FreeLRElem::from_vfield(&field(b, *j)),
            )?,
        };
        let mut row = BTreeMap::new();
        for (w, c) in elem.terms() {
            for (m, r) in c.terms() {
                let next = coords.len();
                let col = *coords.entry((w.clone(), m.clone())).or_insert(next);
                row.insert(col, r.clone());
            }
        }
        normal_rows.push(row.clone());
        images.push(row);
    }

    let mut report = CheckReport::new(format!("quotient n={n} vertical={:?} d={d}", spec.vertical()));
    for rel in &relations {
        let mut image: BTreeMap<usize, Rational> = BTreeMap::new();
        for (sym, c) in rel {
            for (col, r) in &images[*sym] {
                *image.entry(*col).or_insert_with(Rational::zero) += c * r;
            }
        }
        image.retain(|_, c| !c.is_zero());
        let describe = || {
            rel.iter()
                .map(|(s, c)| format!("{c}*{:?}", symbols[*s]))
                .collect::<Vec<_>>()
                .join(" + ")
        };
        report.case(
            image.is_empty(),
            describe,
            "0",
            format!("{} nonzero coordinates", image.len()),
        );
    }
    let quotient_dim = symbols.len() - sparse_rank(relations);
    let normal_dim = sparse_rank(normal_rows);
    report.case(
        quotient_dim == normal_dim,
        || "dimension of the quotient vs the normal-form span".into(),
        normal_dim,
        quotient_dim,
    );
    let m = monos.len();
    let rank = quotient_dim / m;
    report.case(
        quotient_dim.is_multiple_of(m),
        || "quotient is free over the truncated coefficients".into(),
        format!("multiple of {m}"),
        quotient_dim,
    );
    let slice_rank = if d == 1 { rank } else { rank.saturating_sub(n) };
    Ok(QuotientReport {
        report,
        rank,
        slice_rank,
    })
}

/// Disjoint pair of nonzero components whose fields are not proportional;
/// `None` means every homotopy of the classical field `nu` is trivial.
pub fn disjoint_pair_witness(nu: &KField) -> Result<Option<(Subset, Subset)>> {
    let comps = nu.classical_components()?;
    let keys: Vec<&Subset> = comps.keys().collect();
    for (p, phi) in keys.iter().enumerate() {
        for psi in &keys[p + 1..] {
            if phi.is_disjoint(**psi) && !proportional(&comps[*phi], &comps[*psi]) {
                return Ok(Some((**phi, **psi)));
            }
        }
    }
    Ok(None)
}

/// `a ^ b = 0`, i.e. all 2x2 minors of the coefficient matrix vanish.
fn proportional(a: &VField, b: &VField) -> bool {
    let n = a.dim();
    (0..n).all(|p| (p + 1..n).all(|q| (a.coeff(p) * b.coeff(q)) == (a.coeff(q) * b.coeff(p))))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::chart::ChartSpec;
    use num::Signed;

    #[test]
    fn necklace_counts() {
        assert_eq!(oracle_lyndon_count(2, 3), 2);
        assert_eq!(oracle_lyndon_count(1, 2), 0);
        assert_eq!(oracle_lyndon_count(3, 4), 18);
        for n in 1..=3 {
            for d in 1..=6 {
                assert_eq!(
                    oracle_lyndon_count(n, d) as usize,
                    lyndon_basis(n as usize, d as usize).len()
                );
            }
        }
    }

    #[test]
    fn coordinate_bracket() {
        let n = 2;
        let b = VField::coord(n, 1).scale_poly(&Poly::var(n, 0));
        assert_eq!(oracle_bracket(&VField::coord(n, 0), &b), VField::coord(n, 1));
        assert!(oracle_bracket(&b, &b).is_zero());
    }

    #[test]
    fn partitions_count_bell_numbers() {
        let counts: Vec<usize> = (1..=5)
            .map(|m| set_partitions(&(0..m).collect::<Vec<_>>()).len())
            .collect();
        assert_eq!(counts, [1, 2, 5, 15, 52]);
    }

    #[test]
    fn multiplicativity_and_negative_control() {
        let mut s = Sampler::new(7);
        let nu = s.full_kfield(2, 2);
        assert!(oracle_multiplicativity(&nu, 5, &mut s).unwrap().passed());
        assert!(!oracle_multiplicativity_corrupted(&nu, 5, &mut s).unwrap().passed());
        assert!(oracle_multiplicativity(&KField::zero(3, 2), 3, &mut s)
            .unwrap()
            .passed());
    }

    #[test]
    fn permutation_words_realize_permutations() {
        let mut s = Sampler::new(3);
        for _ in 0..20 {
            let p = s.permutation(4);
            let word = permutation_word(&p);
            // apply the word rightmost first to the identity labelling
            let mut q: Vec<usize> = (0..4).collect();
            for &g in word.iter().rev() {
                for v in q.iter_mut() {
                    if *v == g {
                        *v = g + 1;
                    } else if *v == g + 1 {
                        *v = g;
                    }
                }
            }
            assert_eq!(q, p);
        }
    }

    #[test]
    fn quotient_examples() {
        let chart = ChartSpec::new(2, 4).unwrap();
        let all = oracle_quotient_lowdegree(&RelativeSpec::tangent(chart), 2).unwrap();
        assert!(all.report.passed(), "{}", all.report);
        assert_eq!(all.rank, 2);
        let free = oracle_quotient_lowdegree(&RelativeSpec::free(chart), 2).unwrap();
        assert!(free.report.passed(), "{}", free.report);
        assert_eq!(free.rank, 2 + oracle_lyndon_count(2, 2) as usize);
        let rel = oracle_quotient_lowdegree(&RelativeSpec::new(chart, [1]).unwrap(), 2).unwrap();
        assert!(rel.report.passed(), "{}", rel.report);
        assert_eq!(rel.slice_rank, 0);
        assert!(oracle_quotient_lowdegree(&RelativeSpec::free(chart), 3).is_err());
    }

    #[test]
    fn sampler_bounds() {
        let mut s = Sampler::new(1);
        for _ in 0..50 {
            let r = s.rational();
            assert!(!r.is_zero());
            assert!(r.numer().abs() <= 9.into() && *r.denom() <= 9.into());
        }
    }
}
