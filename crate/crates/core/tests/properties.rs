use std::collections::HashMap;

use proptest::prelude::*;

use igc::chart::int;
use igc::oracle::Sampler;
use igc::parse::{parse_expr, Env, Value};
use igc::{act, compose, cup, face, kfield_to_weil, weil_to_kfield, ChartSpec, Flavor, Polyvector, RelativeSpec};

fn spec(n: usize) -> RelativeSpec {
    RelativeSpec::free(ChartSpec::new(n, 4).unwrap())
}

/// Room for the brackets produced by acting on degree-2 components.
fn wide(n: usize) -> RelativeSpec {
    RelativeSpec::free(ChartSpec::new(n, 8).unwrap())
}

fn reparse(n: usize, v: &Value) -> Value {
    let s = spec(n);
    parse_expr(
        &v.to_string(),
        &Env {
            spec: &s,
            bindings: &HashMap::new(),
        },
        1,
    )
    .unwrap()
}

fn flavor(lie: bool) -> Flavor {
    if lie {
        Flavor::Lie
    } else {
        Flavor::Free
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn free_bracket_alternates_and_satisfies_jacobi(seed: u64) {
        let mut s = Sampler::new(seed);
        let sp = spec(2);
        let (a, b, c) = (s.free_elem(2, 1), s.free_elem(2, 1), s.free_elem(2, 1));
        let ab = sp.bracket(&a, &b).unwrap();
        prop_assert!((&ab + &sp.bracket(&b, &a).unwrap()).is_zero());
        prop_assert!(sp.bracket(&a, &a).unwrap().is_zero());
        let j = &(&sp.bracket(&a, &sp.bracket(&b, &c).unwrap()).unwrap()
            + &sp.bracket(&b, &sp.bracket(&c, &a).unwrap()).unwrap())
            + &sp.bracket(&c, &ab).unwrap();
        prop_assert!(j.is_zero());
    }

    #[test]
    fn anchor_is_a_bracket_homomorphism(seed: u64) {
        let mut s = Sampler::new(seed);
        let sp = spec(3);
        let (a, b) = (s.free_elem(3, 2), s.free_elem(3, 1));
        let lhs = sp.bracket(&a, &b).unwrap().anchor();
        prop_assert_eq!(lhs, a.anchor().bracket(&b.anchor()).unwrap());
    }

    #[test]
    fn adjacent_swaps_are_involutions(seed: u64, k in 2usize..=4, lie: bool) {
        let mut s = Sampler::new(seed);
        let sp = wide(2);
        let nu = s.free_kfield(k, 2);
        let g = (seed as usize) % (k - 1);
        let twice = act(&sp, &[g, g], &nu, flavor(lie)).unwrap();
        prop_assert_eq!(twice, nu);
    }

    #[test]
    fn braid_relation(seed: u64, lie: bool) {
        let mut s = Sampler::new(seed);
        let sp = wide(2);
        let nu = s.free_kfield(3, 2);
        let l = act(&sp, &[0, 1, 0], &nu, flavor(lie)).unwrap();
        let r = act(&sp, &[1, 0, 1], &nu, flavor(lie)).unwrap();
        prop_assert_eq!(l, r);
    }

    #[test]
    fn weil_dictionary_roundtrips(seed: u64, k in 1usize..=3) {
        let mut s = Sampler::new(seed);
        let nu = s.classical_kfield(k, 2, 0.7);
        let back = weil_to_kfield(&kfield_to_weil(&nu).unwrap());
        prop_assert_eq!(back, nu);
    }

    #[test]
    fn faces_of_cup_and_compose(seed: u64) {
        let mut s = Sampler::new(seed);
        let mu = s.classical_kfield(2, 2, 1.0);
        let nu = s.classical_kfield(1, 2, 1.0);
        let c = compose(&mu, &nu).unwrap();
        prop_assert_eq!(face(&c, 2).unwrap(), mu.clone());
        let q = cup(&mu, &nu).unwrap();
        prop_assert_eq!(face(&q, 2).unwrap(), mu);
    }

    #[test]
    fn wedge_is_graded_commutative(seed: u64) {
        let mut s = Sampler::new(seed);
        let p = Polyvector::wedge_fields(3, &[s.vfield(3), s.vfield(3)]).unwrap();
        let q = Polyvector::from_field(&s.vfield(3));
        prop_assert_eq!(p.wedge(&q).unwrap(), q.wedge(&p).unwrap());
        let r = Polyvector::from_field(&s.vfield(3));
        prop_assert_eq!(q.wedge(&r).unwrap(), -&r.wedge(&q).unwrap());
    }

    #[test]
    fn schouten_is_a_graded_biderivation(seed: u64) {
        let mut s = Sampler::new(seed);
        let x = Polyvector::from_field(&s.vfield(2));
        let p = Polyvector::from_field(&s.vfield(2));
        let q = Polyvector::from_field(&s.vfield(2));
        let lhs = x.schouten(&p.wedge(&q).unwrap()).unwrap();
        let rhs = &x.schouten(&p).unwrap().wedge(&q).unwrap() + &p.wedge(&x.schouten(&q).unwrap()).unwrap();
        prop_assert_eq!(lhs, rhs);
        prop_assert_eq!(x.schouten(&p).unwrap(), -&p.schouten(&x).unwrap());
    }

    #[test]
    fn printed_values_reparse(seed: u64, k in 1usize..=3) {
        let mut s = Sampler::new(seed);
        let values = [
            Value::Poly(s.poly(2, 3)),
            Value::Field(s.vfield(2)),
            Value::Free(s.free_elem(2, 3).scale_poly(&igc::Poly::constant(2, int(-3)))),
            Value::KField(s.free_kfield(k, 2)),
            Value::Polyvector(Polyvector::wedge_fields(2, &[s.vfield(2), s.vfield(2)]).unwrap()),
        ];
        for v in &values {
            let back = reparse(2, v);
            // Classical free elements print as fields and zeros as `0`.
            let back = match v {
                Value::Poly(_) => back,
                Value::Field(_) => Value::Field(back.as_field(2).unwrap()),
                Value::Free(_) => Value::Free(back.as_free(2).unwrap()),
                Value::KField(_) => Value::KField(back.as_kfield(2).unwrap()),
                Value::Polyvector(_) => Value::Polyvector(back.as_polyvector(2).unwrap()),
            };
            prop_assert_eq!(&back, v);
        }
    }
}
