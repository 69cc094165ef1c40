use std::sync::Arc;

use proptest::prelude::*;
use qclass_core::obstruction::{block_sizes, euler_product};
use qclass_core::{
    expand_euler, preset_cpn, qc_cup, qmul, rat, virtual_index, BaseModel, BaseRingElement,
    ManifoldModel, Monomial, NovikovScalar, ObstructionPoly, ObstructionRingElement, QCClass,
    QuantumElement, Rational,
};

fn small_rational() -> impl Strategy<Value = Rational> {
    (-6i64..=6, 1i64..=4).prop_map(|(n, d)| rat(n, d))
}

fn nonzero_rational() -> impl Strategy<Value = Rational> {
    (prop_oneof![-5i64..=-1, 1i64..=5], 1i64..=3).prop_map(|(n, d)| rat(n, d))
}

fn scalar() -> impl Strategy<Value = NovikovScalar> {
    prop::collection::vec((nonzero_rational(), -3i64..=3, small_rational()), 0..5).prop_map(
        |terms| {
            NovikovScalar::from_terms(terms.into_iter().map(|(c, q, t)| (Monomial::new(q, t), c)))
        },
    )
}

fn nonzero_scalar() -> impl Strategy<Value = NovikovScalar> {
    scalar().prop_filter("nonzero", |s| !s.is_zero())
}

fn cpn(n: usize) -> Arc<ManifoldModel> {
    Arc::new(preset_cpn(n).unwrap())
}

fn element(n: usize) -> impl Strategy<Value = QuantumElement> {
    prop::collection::vec((0..=n, -2i64..=2, -2i64..=2, nonzero_rational()), 0..4).prop_map(
        move |terms| {
            let m = cpn(n);
            terms.into_iter().fold(QuantumElement::zero(&m), |acc, (i, q, t, c)| {
                let s = NovikovScalar::monomial(c, q, rat(t, 2));
                acc.add(&QuantumElement::monomial(&m, i, 0, rat(0, 1)).scale(&s)).unwrap()
            })
        },
    )
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(128))]

    #[test]
    fn novikov_ring_axioms(a in scalar(), b in scalar(), c in scalar()) {
        prop_assert_eq!(&a + &b, &b + &a);
        prop_assert_eq!(&(&a + &b) + &c, &a + &(&b + &c));
        prop_assert_eq!(&a * &b, &b * &a);
        prop_assert_eq!(&(&a * &b) * &c, &a * &(&b * &c));
        prop_assert_eq!(&a * &(&b + &c), &(&a * &b) + &(&a * &c));
        prop_assert_eq!(&a + &NovikovScalar::zero(), a.clone());
        prop_assert_eq!(&a * &NovikovScalar::one(), a.clone());
        prop_assert!((&a - &a).is_zero());
        prop_assert_eq!(-(-a.clone()), a);
    }

    #[test]
    fn valuation_of_sum(a in nonzero_scalar(), b in nonzero_scalar()) {
        let (va, vb) = (a.valuation().unwrap(), b.valuation().unwrap());
        let sum = &a + &b;
        if sum.is_zero() {
            prop_assert_eq!(&va, &vb);
        } else {
            let v = sum.valuation().unwrap();
            prop_assert!(v <= va.clone().max(vb.clone()));
            if va != vb {
                prop_assert_eq!(v, va.max(vb));
            }
        }
    }

    #[test]
    fn valuation_of_product(a in nonzero_scalar(), b in nonzero_scalar()) {
        let p = &a * &b;
        prop_assert!(!p.is_zero());
        prop_assert_eq!(p.valuation().unwrap(), a.valuation().unwrap() + b.valuation().unwrap());
    }

    #[test]
    fn truncation(a in scalar(), b in scalar(), floor in small_rational()) {
        let ta = a.truncate(&floor);
        prop_assert_eq!(ta.truncate(&floor), ta.clone());
        prop_assert_eq!((&a + &b).truncate(&floor), &ta + &b.truncate(&floor));
        prop_assert!(ta.min_t().is_none_or(|t| t >= floor));
    }

    #[test]
    fn scalar_text_round_trip(a in scalar()) {
        let text = a.to_string();
        let back: NovikovScalar = text.parse().unwrap();
        prop_assert_eq!(&back, &a);
        prop_assert_eq!(back.to_string(), text);
    }

    #[test]
    fn element_text_round_trip(x in element(3)) {
        let back = QuantumElement::parse(&x.model, &x.to_string()).unwrap();
        prop_assert_eq!(back, x);
    }

    #[test]
    fn quantum_product_is_associative(n in 1usize..=4, seed in any::<u64>()) {
        let m = cpn(n);
        let pick = |k: u64| QuantumElement::basis(&m, (k % (n as u64 + 1)) as usize);
        let (a, b, c) = (pick(seed), pick(seed >> 8), pick(seed >> 16));
        let left = qmul(&qmul(&a, &b).unwrap(), &c).unwrap();
        let right = qmul(&a, &qmul(&b, &c).unwrap()).unwrap();
        prop_assert_eq!(left, right);
    }

    #[test]
    fn quantum_product_is_bilinear(x in element(2), y in element(2), z in element(2)) {
        let lhs = qmul(&x, &y.add(&z).unwrap()).unwrap();
        let rhs = qmul(&x, &y).unwrap().add(&qmul(&x, &z).unwrap()).unwrap();
        prop_assert_eq!(lhs, rhs);
    }

    #[test]
    fn euler_expansion_reassembles(weights in prop::collection::vec(-5i64..=0, 0..=5)) {
        let free = euler_product(&weights);
        let nvars = weights.len() + 1;
        let e = ObstructionRingElement {
            free: free.clone(),
            reduced: BaseRingElement::one(0),
            substitution: Vec::new(),
        };
        let ek = ObstructionPoly::var(nvars, 0);
        let mut sum = ObstructionPoly::zero(nvars);
        for (p, a) in expand_euler(&e) {
            let mut power = ObstructionPoly::one(nvars);
            for _ in 0..p {
                power = power.mul(&ek);
            }
            sum = sum.add(&power.mul(&a));
        }
        prop_assert_eq!(sum, free);
        let index = virtual_index(&weights).unwrap();
        prop_assert_eq!(expand_euler(&e)[0].0 as i64, index / 2);
        prop_assert_eq!(block_sizes(&weights).len(), weights.len());
    }
}

#[test]
fn classical_limit_keeps_zero_class_terms() {
    for n in 1..=4 {
        let m = cpn(n);
        let c = Arc::new(m.classical());
        for i in 0..=n {
            for j in 0..=n {
                let quantum = qmul(&QuantumElement::basis(&m, i), &QuantumElement::basis(&m, j)).unwrap();
                let classical = qmul(&QuantumElement::basis(&c, i), &QuantumElement::basis(&c, j)).unwrap();
                let limit: Vec<_> = quantum
                    .coeffs()
                    .iter()
                    .map(|(k, s)| (*k, s.truncate(&rat(0, 1))))
                    .filter(|(_, s)| !s.is_zero())
                    .collect();
                let expected: Vec<_> = classical.coeffs().iter().map(|(k, s)| (*k, s.clone())).collect();
                assert_eq!(limit, expected, "p{i} * p{j} in cpn:{n}");
            }
        }
    }
}

#[test]
fn qc_classes_over_a_point_multiply_like_the_fiber() {
    let m = cpn(2);
    let base = BaseModel::point();
    for i in 0..=2 {
        for j in 0..=2 {
            let (x, y) = (QuantumElement::basis(&m, i), QuantumElement::basis(&m, j));
            let pt = qclass_core::HomologyClass::basis(base.homology(), 0);
            let cx = QCClass::tensor(&base, &pt, &x).unwrap();
            let cy = QCClass::tensor(&base, &pt, &y).unwrap();
            let prod = qc_cup(&cx, &cy).unwrap();
            assert_eq!(qclass_core::psi(&prod).unwrap(), qmul(&x, &y).unwrap());
        }
    }
}
