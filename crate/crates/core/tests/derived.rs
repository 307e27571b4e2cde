//! Worked values recomputed here by independent means.

use std::collections::HashMap;

use igc::chart::rat;
use igc::oracle::Sampler;
use igc::parse::{parse_expr, Env, Value};
use igc::{
    cup, homotopy, lyndon_basis, reduce_to_polyvector, ChartSpec, FreeLRElem, KField, Poly, Polyvector, RelativeSpec,
    Subset, VField,
};

fn spec(n: usize) -> RelativeSpec {
    RelativeSpec::free(ChartSpec::new(n, 4).unwrap())
}

fn eval(n: usize, src: &str) -> Value {
    let s = spec(n);
    parse_expr(
        src,
        &Env {
            spec: &s,
            bindings: &HashMap::new(),
        },
        1,
    )
    .unwrap()
}

/// `[u, v]^i = sum_k u^k d_k v^i - v^k d_k u^i`, written out coefficientwise.
fn bracket_by_hand(u: &VField, v: &VField) -> VField {
    let n = u.dim();
    let coeffs = (0..n)
        .map(|i| {
            let mut c = Poly::zero(n);
            for k in 0..n {
                c = &c + &(u.coeff(k) * &v.coeff(i).derive(k).unwrap());
                c = &c - &(v.coeff(k) * &u.coeff(i).derive(k).unwrap());
            }
            c
        })
        .collect();
    VField::new(coeffs).unwrap()
}

fn is_lyndon_by_rotation(w: &[u8]) -> bool {
    (1..w.len()).all(|r| {
        let rot: Vec<u8> = w[r..].iter().chain(&w[..r]).copied().collect();
        w < rot.as_slice()
    })
}

fn all_words(n: u8, len: usize) -> Vec<Vec<u8>> {
    let mut words = vec![Vec::new()];
    for _ in 0..len {
        words = words
            .into_iter()
            .flat_map(|w| {
                (0..n).map(move |a| {
                    let mut w = w.clone();
                    w.push(a);
                    w
                })
            })
            .collect();
    }
    words
}

#[test]
fn parsed_field_literal() {
    let want = VField::new(vec![Poly::constant(2, rat(-1, 2)), Poly::var(2, 0)]).unwrap();
    assert_eq!(eval(2, "x0*d1 - (1/2)*d0"), Value::Field(want));
}

#[test]
fn parsed_free_bracket_follows_leibniz() {
    // F[a, f b] = f F[a, b] + a(f) b with a = d0, f = x0, b = d1.
    let n = 2;
    let s = spec(n);
    let d0 = FreeLRElem::generator(n, 0);
    let d1 = FreeLRElem::generator(n, 1);
    let base = s.bracket(&d0, &d1).unwrap();
    let want = &base.scale_poly(&Poly::var(n, 0)) + &d1;
    assert_eq!(eval(n, "F[d0, x0*d1]"), Value::Free(want));
}

#[test]
fn parsed_cup_places_components() {
    let got = eval(2, "cup(d0, x0*d1)").as_kfield(2).unwrap();
    assert_eq!(got.arity(), 2);
    assert_eq!(got.component(Subset::singleton(0)), FreeLRElem::generator(2, 0));
    assert!(got.component(Subset::singleton(1)).is_zero());
    let x0d1 = VField::coord(2, 1).scale_poly(&Poly::var(2, 0));
    assert_eq!(got.component(Subset::full(2)), FreeLRElem::from_vfield(&x0d1));
}

#[test]
fn coordinate_bracket_matches_hand_formula() {
    let mut s = Sampler::new(7);
    for _ in 0..50 {
        let (u, v) = (s.vfield(3), s.vfield(3));
        assert_eq!(u.bracket(&v).unwrap(), bracket_by_hand(&u, &v));
    }
    let d0 = VField::coord(2, 0);
    let x0d1 = VField::coord(2, 1).scale_poly(&Poly::var(2, 0));
    assert_eq!(d0.bracket(&x0d1).unwrap(), VField::coord(2, 1));
}

#[test]
fn lyndon_counts_by_rotation() {
    for n in 1..=3u8 {
        for len in 1..=5 {
            let want = all_words(n, len).iter().filter(|w| is_lyndon_by_rotation(w)).count();
            assert_eq!(lyndon_basis(n as usize, len).len(), want, "n={n} len={len}");
        }
    }
}

#[test]
fn cup_of_coordinate_fields_reduces_to_wedge() {
    let s = spec(2);
    let nu = cup(
        &KField::from_field(&VField::coord(2, 0)),
        &KField::from_field(&VField::coord(2, 1)),
    )
    .unwrap();
    let want = Polyvector::monomial(2, &[0, 1], Poly::one(2)).unwrap();
    assert_eq!(reduce_to_polyvector(&s, &nu).unwrap(), want);
}

#[test]
fn homotopy_of_two_field_is_bracket_defect() {
    // h(a0, a1, a01) = F[a0, a1] - [a0, a1]; with a0 = d0, a1 = x0 d1 the defect is x0 F[d0, d1].
    let s = spec(2);
    let nu = eval(2, "field(2, {0}: d0, {1}: x0*d1, {0,1}: x1*d0)")
        .as_kfield(2)
        .unwrap();
    let h = homotopy(&s, &nu, 0, 1).unwrap();
    let base = s
        .bracket(&FreeLRElem::generator(2, 0), &FreeLRElem::generator(2, 1))
        .unwrap();
    assert_eq!(h.arity(), 1);
    assert_eq!(h.component(Subset::singleton(0)), base.scale_poly(&Poly::var(2, 0)));
}

/// `(L_X P)^{ij} = X(P^{ij}) - P^{kj} d_k X^i - P^{ik} d_k X^j` for a bivector `P`.
fn lie_derivative_bivector(x: &VField, p: &Polyvector) -> Polyvector {
    let n = x.dim();
    let entry = |i: usize, j: usize| -> Poly {
        if i == j {
            return Poly::zero(n);
        }
        let c = p.coeff(Subset::from_indices([i, j]));
        if i < j {
            c
        } else {
            -&c
        }
    };
    let mut out = Polyvector::zero(n);
    for i in 0..n {
        for j in (i + 1)..n {
            let mut c = x.apply(&entry(i, j)).unwrap();
            for k in 0..n {
                c = &c - &(&entry(k, j) * &x.coeff(i).derive(k).unwrap());
                c = &c - &(&entry(i, k) * &x.coeff(j).derive(k).unwrap());
            }
            out = &out + &Polyvector::monomial(n, &[i, j], c).unwrap();
        }
    }
    out
}

#[test]
fn schouten_with_a_field_is_lie_derivative() {
    let mut s = Sampler::new(11);
    for _ in 0..30 {
        let x = s.vfield(3);
        let p = Polyvector::wedge_fields(3, &[s.vfield(3), s.vfield(3)]).unwrap();
        let got = Polyvector::from_field(&x).schouten(&p).unwrap();
        assert_eq!(got, lie_derivative_bivector(&x, &p));
    }
    let e = Polyvector::from_field(&VField::coord(2, 0).scale_poly(&Poly::var(2, 0)));
    let d01 = Polyvector::monomial(2, &[0, 1], Poly::one(2)).unwrap();
    assert_eq!(e.schouten(&d01).unwrap(), -&d01);
}
