//! The verification suite run by `igc check` and the acceptance tests.
//!
//! Every check is tagged with the acceptance criterion it covers and draws
//! its random inputs from its own seeded [`Sampler`].

use std::collections::BTreeMap;

use crate::chart::{ChartSpec, VField};
use crate::error::Result;
use crate::free_lr::{project_to_lie, FreeLRElem, RelativeSpec};
use crate::groupoid::{
    act, compose, cup, embed_classical, homotopy, is_trivial_homotopy, lie_derivative_thin, reduce_to_polyvector,
    strong_diff, Flavor, KField,
};
use crate::lyndon::lyndon_basis;
use crate::oracle::{
    disjoint_pair_witness, oracle_bracket, oracle_lyndon_count, oracle_multiplicativity,
    oracle_multiplicativity_corrupted, oracle_quotient_lowdegree, permutation_word, CheckReport, Sampler,
};
use crate::polyvector::Polyvector;
use crate::subset::Subset;
use crate::weil::{kfield_to_weil, weil_to_kfield};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CheckConfig {
    pub seed: u64,
    pub max_degree: usize,
    /// Name of a check whose verdict is negated.
    pub invert: Option<String>,
}

impl Default for CheckConfig {
    fn default() -> Self {
        CheckConfig {
            seed: 0,
            max_degree: 4,
            invert: None,
        }
    }
}

type Runner = fn(&mut Sampler, &CheckConfig) -> Result<CheckReport>;

pub struct Check {
    pub name: &'static str,
    pub criterion: u8,
    run: Runner,
}

/// All checks, in criterion order.
pub fn checks() -> Vec<Check> {
    let c = |name, criterion, run: Runner| Check { name, criterion, run };
    vec![
        c("weil.multiplicativity", 1, multiplicativity),
        c("weil.negative_control", 1, negative_control),
        c("weil.roundtrip", 2, roundtrip),
        c("weil.two_field_part", 2, two_field_part),
        c("groupoid.action_relations.free", 3, |s, cfg| {
            action_relations(s, cfg, Flavor::Free)
        }),
        c("groupoid.action_relations.lie", 3, |s, cfg| {
            action_relations(s, cfg, Flavor::Lie)
        }),
        c("groupoid.two_field_permutation", 3, two_field_permutation),
        c("groupoid.strong_difference_bracket", 4, strong_difference_bracket),
        c("free_lr.jacobi", 5, jacobi),
        c("free_lr.defining_relation", 5, defining_relation),
        c("free_lr.necklace_ranks", 5, necklace_ranks),
        c("free_lr.relative_special_cases", 6, relative_special_cases),
        c("free_lr.quotient_lowdegree", 6, quotient_lowdegree),
        c("groupoid.homotopy", 7, homotopy_check),
        c("groupoid.trivial_homotopy", 8, trivial_homotopy),
        c("polyvector.reduction", 9, reduction),
        c("polyvector.schouten", 9, schouten),
        c("groupoid.s_invariance", 10, s_invariance),
        c("oracle.bracket", 4, bracket_agreement),
    ]
}

impl Check {
    pub fn run(&self, cfg: &CheckConfig) -> CheckReport {
        let seed = cfg.seed.wrapping_mul(0x9E37_79B9_7F4A_7C15).wrapping_add(
            self.name
                .bytes()
                .fold(0u64, |h, b| h.wrapping_mul(31).wrapping_add(b as u64)),
        );
        let mut sampler = Sampler::new(seed);
        let mut report = match (self.run)(&mut sampler, cfg) {
            Ok(r) => r,
            Err(e) => {
                let mut r = CheckReport::new(self.name);
                r.fail("check aborted", "completion", e);
                r
            }
        };
        report.name = self.name.to_string();
        if cfg.invert.as_deref() == Some(self.name) {
            report = report.inverted();
        }
        report
    }
}

pub fn run_suite(cfg: &CheckConfig) -> Vec<CheckReport> {
    checks().iter().map(|c| c.run(cfg)).collect()
}

fn spec(n: usize, max_degree: usize) -> RelativeSpec {
    RelativeSpec::free(ChartSpec::new(n, max_degree).expect("positive dimensions"))
}

fn multiplicativity(s: &mut Sampler, _: &CheckConfig) -> Result<CheckReport> {
    let mut report = CheckReport::new("");
    for t in 0..100 {
        let k = 1 + t % 3;
        let n = 2 + t % 2;
        let nu = s.classical_kfield(k, n, 0.7);
        let r = oracle_multiplicativity(&nu, 2, s)?;
        report.cases += r.cases;
        report.failures.extend(r.failures);
    }
    Ok(report)
}

fn negative_control(s: &mut Sampler, _: &CheckConfig) -> Result<CheckReport> {
    let mut report = CheckReport::new("");
    for t in 0..10 {
        let nu = s.full_kfield(2 + t % 2, 2);
        let r = oracle_multiplicativity_corrupted(&nu, 3, s)?;
        report.case(
            !r.passed(),
            || format!("corrupted nu = {nu}"),
            "a failure",
            "all cases passed",
        );
    }
    Ok(report)
}

fn roundtrip(s: &mut Sampler, _: &CheckConfig) -> Result<CheckReport> {
    let mut report = CheckReport::new("");
    for t in 0..100 {
        let nu = s.classical_kfield(1 + t % 3, 2 + t % 2, 0.7);
        let back = weil_to_kfield(&kfield_to_weil(&nu)?);
        report.compare(|| format!("nu = {nu}"), &nu, &back);
    }
    Ok(report)
}

fn two_field_part(s: &mut Sampler, _: &CheckConfig) -> Result<CheckReport> {
    let mut report = CheckReport::new("");
    let both = Subset::from_indices([0, 1]);
    for _ in 0..20 {
        let n = 2;
        let (a0, a1, a01) = (s.vfield(n), s.vfield(n), s.vfield(n));
        let comps = BTreeMap::from([
            (Subset::singleton(0), a0.clone()),
            (Subset::singleton(1), a1.clone()),
            (both, a01.clone()),
        ]);
        let nu = embed_classical(2, n, &comps)?;
        let f = s.poly(n, 3);
        let got = kfield_to_weil(&nu)?.image(&f).part(both);
        let want = &a01.apply(&f)? + &a1.apply(&a0.apply(&f)?)?;
        report.compare(|| format!("nu = {nu}, f = {f}"), &want, &got);
    }
    Ok(report)
}

fn action_relations(s: &mut Sampler, cfg: &CheckConfig, flavor: Flavor) -> Result<CheckReport> {
    let mut report = CheckReport::new("");
    let sp = spec(2, cfg.max_degree.max(8));
    for k in [3usize, 4] {
        for t in 0..50 {
            let nu = if t % 2 == 0 {
                s.classical_kfield(k, 2, 0.6)
            } else {
                s.free_kfield(k, 2)
            };
            let run = |w: &[usize]| act(&sp, w, &nu, flavor);
            for g in 0..k - 1 {
                report.compare(|| format!("s{g}^2 on {nu}"), &nu, &run(&[g, g])?);
            }
            for g in 0..k - 2 {
                let left = run(&[g, g + 1, g])?;
                let right = run(&[g + 1, g, g + 1])?;
                report.compare(|| format!("braid at {g} on {nu}"), &left, &right);
            }
            if k == 4 {
                report.compare(|| format!("s0 s2 on {nu}"), &run(&[0, 2])?, &run(&[2, 0])?);
            }
        }
    }
    Ok(report)
}

fn two_field_permutation(s: &mut Sampler, cfg: &CheckConfig) -> Result<CheckReport> {
    let mut report = CheckReport::new("");
    let n = 3;
    let sp = spec(n, cfg.max_degree);
    for _ in 0..20 {
        let (a0, a1, a01) = (s.vfield(n), s.vfield(n), s.vfield(n));
        let field = |p: &VField, q: &VField, r: &VField| {
            embed_classical(
                2,
                n,
                &BTreeMap::from([
                    (Subset::singleton(0), p.clone()),
                    (Subset::singleton(1), q.clone()),
                    (Subset::from_indices([0, 1]), r.clone()),
                ]),
            )
        };
        let nu = field(&a0, &a1, &a01)?;
        let want = field(&a1, &a0, &(&a01 + &oracle_bracket(&a0, &a1)))?;
        report.compare(|| format!("nu = {nu}"), &want, &act(&sp, &[0], &nu, Flavor::Lie)?);
    }
    Ok(report)
}

fn strong_difference_bracket(s: &mut Sampler, cfg: &CheckConfig) -> Result<CheckReport> {
    let mut report = CheckReport::new("");
    let n = 3;
    let sp = spec(n, cfg.max_degree);
    for _ in 0..50 {
        let (a, b) = (s.vfield(n), s.vfield(n));
        let (fa, fb) = (KField::from_field(&a), KField::from_field(&b));
        let moved = act(&sp, &[0], &compose(&fa, &fb)?, Flavor::Lie)?;
        let diff = strong_diff(&moved, &compose(&fb, &fa)?, 0, 1)?;
        let got = project_to_lie(&diff.component(Subset::singleton(0)));
        report.compare(|| format!("alpha = {a}, beta = {b}"), &oracle_bracket(&a, &b), &got);
        let thin = lie_derivative_thin(&sp, &b, &a)?;
        report.compare(
            || format!("thin: beta = {b}, alpha = {a}"),
            &oracle_bracket(&b, &a),
            &thin,
        );
    }
    Ok(report)
}

fn bracket_agreement(s: &mut Sampler, _: &CheckConfig) -> Result<CheckReport> {
    let mut report = CheckReport::new("");
    for t in 0..200 {
        let n = 1 + t % 3;
        let (a, b) = (s.vfield(n), s.vfield(n));
        report.compare(|| format!("u = {a}, v = {b}"), &oracle_bracket(&a, &b), &a.bracket(&b)?);
    }
    Ok(report)
}

fn jacobi(s: &mut Sampler, cfg: &CheckConfig) -> Result<CheckReport> {
    let mut report = CheckReport::new("");
    for t in 0..20 {
        let n = 2 + t % 2;
        let sp = spec(n, cfg.max_degree);
        let (u, v, w) = (s.free_elem(n, 2), s.free_elem(n, 1), s.free_elem(n, 1));
        let br = |p: &FreeLRElem, q: &FreeLRElem| sp.bracket(p, q);
        report.case(br(&u, &u)?.is_zero(), || format!("[[u,u]], u = {u}"), 0, br(&u, &u)?);
        let j = &(&br(&u, &br(&v, &w)?)? + &br(&v, &br(&w, &u)?)?) + &br(&w, &br(&u, &v)?)?;
        report.case(j.is_zero(), || format!("u = {u}, v = {v}, w = {w}"), 0, &j);
    }
    Ok(report)
}

fn defining_relation(s: &mut Sampler, cfg: &CheckConfig) -> Result<CheckReport> {
    let mut report = CheckReport::new("");
    for t in 0..50 {
        let n = 2 + t % 2;
        let sp = spec(n, cfg.max_degree);
        let (x, y, f) = (s.free_elem(n, 2), s.free_elem(n, 2), s.poly(n, 2));
        let lhs = &sp.bracket(&x, &y.scale_poly(&f))? - &sp.bracket(&x.scale_poly(&f), &y)?;
        let xf = x.anchor().apply(&f)?;
        let yf = y.anchor().apply(&f)?;
        let rhs = &y.scale_poly(&xf) + &x.scale_poly(&yf);
        report.compare(|| format!("x = {x}, y = {y}, f = {f}"), &rhs, &lhs);
    }
    Ok(report)
}

fn necklace_ranks(_: &mut Sampler, _: &CheckConfig) -> Result<CheckReport> {
    let mut report = CheckReport::new("");
    for n in 1..=3usize {
        for d in 1..=5usize {
            let want = oracle_lyndon_count(n as u64, d as u64) as usize;
            report.compare(|| format!("n = {n}, d = {d}"), &want, &lyndon_basis(n, d).len());
        }
    }
    Ok(report)
}

fn relative_special_cases(s: &mut Sampler, cfg: &CheckConfig) -> Result<CheckReport> {
    let mut report = CheckReport::new("");
    for t in 0..20 {
        let n = 2 + t % 2;
        let chart = ChartSpec::new(n, cfg.max_degree)?;
        let tangent = RelativeSpec::tangent(chart);
        let (a, b) = (s.vfield(n), s.vfield(n));
        let got = tangent.bracket(&FreeLRElem::from_vfield(&a), &FreeLRElem::from_vfield(&b))?;
        let want = FreeLRElem::from_vfield(&oracle_bracket(&a, &b));
        report.compare(|| format!("vertical = all, a = {a}, b = {b}"), &want, &got);

        let free = RelativeSpec::new(chart, [])?;
        report.case(free.is_fully_free(), || "vertical = {}".into(), true, false);
        let top = free.bracket(&FreeLRElem::generator(n, 0), &FreeLRElem::generator(n, 1))?;
        let word = lyndon_basis(n, 2)[0].clone();
        report.compare(
            || "vertical = {}, [[d0,d1]]".into(),
            &FreeLRElem::monomial(n, word),
            &top,
        );
    }
    Ok(report)
}

fn quotient_lowdegree(_: &mut Sampler, cfg: &CheckConfig) -> Result<CheckReport> {
    let mut report = CheckReport::new("");
    let n = 2;
    let chart = ChartSpec::new(n, cfg.max_degree.max(2))?;
    let cases = [
        (RelativeSpec::tangent(chart), Some(n), None),
        (
            RelativeSpec::free(chart),
            Some(n + oracle_lyndon_count(n as u64, 2) as usize),
            None,
        ),
        (RelativeSpec::new(chart, [1])?, None, Some(0)),
    ];
    for (sp, rank, slice) in cases {
        let q = oracle_quotient_lowdegree(&sp, 2)?;
        report.cases += q.report.cases;
        report.failures.extend(q.report.failures);
        if let Some(r) = rank {
            report.compare(|| format!("rank, vertical = {:?}", sp.vertical()), &r, &q.rank);
        }
        if let Some(r) = slice {
            report.compare(
                || format!("slice rank, vertical = {:?}", sp.vertical()),
                &r,
                &q.slice_rank,
            );
        }
    }
    Ok(report)
}

/// `[[a,b]] - [a,b] = sum_{p<q} (a^p b^q - a^q b^p) F[dp,dq]` for classical `a, b`.
fn wedge_part(a: &VField, b: &VField) -> Result<FreeLRElem> {
    let n = a.dim();
    let mut terms = Vec::new();
    for p in 0..n {
        for q in p + 1..n {
            let c = &(a.coeff(p) * b.coeff(q)) - &(a.coeff(q) * b.coeff(p));
            terms.push((vec![p as u8, q as u8], c));
        }
    }
    FreeLRElem::from_terms(n, terms)
}

fn homotopy_check(s: &mut Sampler, cfg: &CheckConfig) -> Result<CheckReport> {
    let mut report = CheckReport::new("");
    for t in 0..20 {
        let n = 2 + t % 2;
        let sp = spec(n, cfg.max_degree);
        let nu = s.full_kfield(2, n);
        let comps = nu.classical_components()?;
        let (a0, a1) = (&comps[&Subset::singleton(0)], &comps[&Subset::singleton(1)]);
        let h = homotopy(&sp, &nu, 0, 1)?;
        let want = KField::from_elem(wedge_part(a0, a1)?);
        report.compare(|| format!("nu = {nu}"), &want, &h);
        report.case(
            h.project().is_zero(),
            || format!("projection, nu = {nu}"),
            0,
            h.project(),
        );
    }
    let sp = spec(2, cfg.max_degree);
    for k in 2..=5usize {
        let nu = s.classical_kfield(k, 2, 0.5);
        let mut count = 0;
        for i in 0..k {
            for j in 0..k {
                if homotopy(&sp, &nu, i, j).is_ok() {
                    count += 1;
                }
            }
        }
        report.compare(
            || format!("number of homotopy maps at arity {k}"),
            &(k * (k - 1) / 2),
            &count,
        );
    }
    Ok(report)
}

/// A cup-chain `a_1 u (a_2 u (.. u a_k))`.
fn cup_chain(fields: &[VField]) -> Result<KField> {
    let mut iter = fields.iter().rev();
    let mut acc = KField::from_field(iter.next().expect("nonempty chain"));
    for v in iter {
        acc = cup(&KField::from_field(v), &acc)?;
    }
    Ok(acc)
}

fn trivial_homotopy(s: &mut Sampler, cfg: &CheckConfig) -> Result<CheckReport> {
    let mut report = CheckReport::new("");
    for t in 0..100 {
        let n = 2 + t % 2;
        let k = 2 + t % 3;
        let sp = spec(n, cfg.max_degree);
        let nu = if t % 4 == 3 {
            let fields: Vec<VField> = (0..k).map(|_| s.vfield(n)).collect();
            cup_chain(&fields)?
        } else {
            s.classical_kfield(k, n, 0.4)
        };
        let definitional = is_trivial_homotopy(&sp, &nu)?.is_none();
        let pairs = disjoint_pair_witness(&nu)?.is_none();
        report.compare(|| format!("nu = {nu}"), &pairs, &definitional);
    }
    Ok(report)
}

fn reduction(s: &mut Sampler, cfg: &CheckConfig) -> Result<CheckReport> {
    let mut report = CheckReport::new("");
    for t in 0..20 {
        let n = 3;
        let k = 1 + t % 4;
        let sp = spec(n, cfg.max_degree);
        let fields: Vec<VField> = (0..k).map(|_| s.vfield(n)).collect();
        let nu = cup_chain(&fields)?;
        let want = Polyvector::wedge_fields(n, &fields)?;
        report.compare(|| format!("nu = {nu}"), &want, &reduce_to_polyvector(&sp, &nu)?);
        let word = permutation_word(&s.permutation(k));
        let moved = act(&sp, &word, &nu, Flavor::Lie)?;
        report.compare(
            || format!("{word:?} applied to {nu}"),
            &want,
            &reduce_to_polyvector(&sp, &moved)?,
        );

        let a = KField::from_field(&fields[0]);
        let zero = KField::zero(1, n);
        let base = Polyvector::from_field(&fields[0]);
        for (label, chain) in [
            ("a u 0", cup(&a, &zero)?),
            ("a u a", cup(&a, &a)?),
            ("0 u a", cup(&zero, &a)?),
        ] {
            report.compare(
                || format!("{label}, a = {}", fields[0]),
                &base,
                &reduce_to_polyvector(&sp, &chain)?,
            );
        }
    }
    Ok(report)
}

fn random_monomial(s: &mut Sampler, n: usize) -> Result<Polyvector> {
    use rand::seq::SliceRandom;
    use rand::Rng;
    let grade = s.rng().gen_range(1..=3usize.min(n));
    let mut idx: Vec<usize> = (0..n).collect();
    idx.shuffle(s.rng());
    idx.truncate(grade);
    let c = s.poly(n, 2);
    Polyvector::monomial(n, &idx, c)
}

/// `(-1)^e p`.
fn flip(p: &Polyvector, e: usize) -> Polyvector {
    if e.is_multiple_of(2) {
        p.clone()
    } else {
        -p
    }
}

fn schouten(s: &mut Sampler, _: &CheckConfig) -> Result<CheckReport> {
    let mut report = CheckReport::new("");
    let n = 3;
    for _ in 0..20 {
        let (a, b) = (s.vfield(n), s.vfield(n));
        let got = Polyvector::from_field(&a).schouten(&Polyvector::from_field(&b))?;
        report.compare(
            || format!("a = {a}, b = {b}"),
            &Polyvector::from_field(&oracle_bracket(&a, &b)),
            &got,
        );
    }
    for _ in 0..50 {
        let (p, q, r) = (random_monomial(s, n)?, random_monomial(s, n)?, random_monomial(s, n)?);
        let (gp, gq) = (p.grade()?, q.grade()?);
        let inputs = || format!("P = {p}, Q = {q}, R = {r}");

        let pq = p.schouten(&q)?;
        let qp = q.schouten(&p)?;
        report.compare(inputs, &pq, &-&flip(&qp, (gp - 1) * (gq - 1)));

        let lhs = p.schouten(&q.schouten(&r)?)?;
        let rhs = &pq.schouten(&r)? + &flip(&q.schouten(&p.schouten(&r)?)?, (gp - 1) * (gq - 1));
        report.compare(inputs, &rhs, &lhs);

        let lhs = p.schouten(&q.wedge(&r)?)?;
        let rhs = &pq.wedge(&r)? + &flip(&q.wedge(&p.schouten(&r)?)?, (gp - 1) * gq);
        report.compare(inputs, &rhs, &lhs);

        if !pq.is_zero() {
            report.compare(inputs, &(p.degree()? + q.degree()?), &pq.degree()?);
        }
        let pw = p.wedge(&q)?;
        if !pw.is_zero() {
            report.compare(inputs, &(p.degree()? + q.degree()? - 1), &pw.degree()?);
        }
    }
    Ok(report)
}

fn shifted(word: &[usize], by: usize) -> Vec<usize> {
    word.iter().map(|g| g + by).collect()
}

fn s_invariance(s: &mut Sampler, cfg: &CheckConfig) -> Result<CheckReport> {
    let mut report = CheckReport::new("");
    let n = 2;
    let sp = spec(n, cfg.max_degree.max(6));
    for t in 0..50 {
        let (k, m) = [(1, 1), (2, 1), (1, 2), (2, 2), (3, 1)][t % 5];
        let flavor = if t % 2 == 0 { Flavor::Lie } else { Flavor::Free };
        let wk = permutation_word(&s.permutation(k));
        let wm = permutation_word(&s.permutation(m));
        let mut both = wk.clone();
        both.extend(shifted(&wm, k));

        let mu = s.classical_kfield(k, n, 0.7);
        let nu = s.classical_kfield(m, n, 0.7);
        let left = compose(&act(&sp, &wk, &mu, flavor)?, &act(&sp, &wm, &nu, flavor)?)?;
        let right = act(&sp, &both, &compose(&mu, &nu)?, flavor)?;
        report.compare(
            || format!("compose, {wk:?} x {wm:?}, {flavor}, mu = {mu}, nu = {nu}"),
            &right,
            &left,
        );

        let fields: Vec<VField> = (0..m).map(|_| s.vfield(n)).collect();
        let y = cup_chain(&fields)?;
        let left = cup(&act(&sp, &wk, &mu, flavor)?, &act(&sp, &wm, &y, flavor)?)?;
        let right = act(&sp, &both, &cup(&mu, &y)?, flavor)?;
        report.compare(
            || format!("cup, {wk:?} x {wm:?}, {flavor}, x = {mu}, y = {y}"),
            &right,
            &left,
        );
    }
    Ok(report)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn names_are_unique() {
        let mut names: Vec<&str> = checks().iter().map(|c| c.name).collect();
        names.sort_unstable();
        names.dedup();
        assert_eq!(names.len(), checks().len());
    }

    #[test]
    fn inversion_flips_one_check() {
        let cfg = CheckConfig {
            invert: Some("free_lr.necklace_ranks".into()),
            ..CheckConfig::default()
        };
        let check = checks()
            .into_iter()
            .find(|c| c.name == "free_lr.necklace_ranks")
            .unwrap();
        assert!(check.run(&CheckConfig::default()).passed());
        assert!(!check.run(&cfg).passed());
    }
}
