use std::collections::BTreeMap;

use num::BigRational;
use proptest::prelude::*;

use osp_core::closed_forms::{f_lt, f_lt_params, Normalization};
use osp_core::linalg::Echelon;
use osp_core::props::{check_delta_eta_shift, check_grading};
use osp_core::rep::{Part, Rep, RepConfig};
use osp_core::slice::{singular_vectors, Analyzer, SliceKey, Within};
use osp_core::superpoly::{
    apply_operator, derive, mono_mul, q, Action, Monomial, Polynomial, SuperOperator, Var, VariableSignature,
};
use osp_core::weights::PolySpan;

fn signature() -> impl Strategy<Value = VariableSignature> {
    (1usize..=3, 0usize..=4).prop_map(|(b, f)| VariableSignature::new(b, f).unwrap())
}

fn monomial(sig: VariableSignature) -> impl Strategy<Value = Monomial> {
    let mask_bound = 1u64 << sig.num_fermionic;
    (prop::collection::vec(0u32..=3, sig.num_bosonic), 0..mask_bound).prop_map(|(e, m)| Monomial::new(e, m))
}

fn polynomial(sig: VariableSignature) -> impl Strategy<Value = Polynomial> {
    prop::collection::vec((monomial(sig), -3i64..=3), 0..5).prop_map(move |terms| {
        let mut p = Polynomial::zero(sig);
        for (m, c) in terms {
            p.add_term(m, q(c));
        }
        p
    })
}

fn action(sig: VariableSignature) -> impl Strategy<Value = Action> {
    let b = sig.num_bosonic;
    let f = sig.num_fermionic.max(1);
    let fermionic = sig.num_fermionic > 0;
    (0usize..4, 0..b, 0..f).prop_map(move |(kind, i, p)| match (kind, fermionic) {
        (0, _) | (2, false) => Action::MulBos(i),
        (1, _) | (3, false) => Action::DerBos(i),
        (2, true) => Action::MulFerm(p),
        _ => Action::DerFerm(p),
    })
}

fn operator(sig: VariableSignature) -> impl Strategy<Value = SuperOperator> {
    prop::collection::vec((-3i64..=3, prop::collection::vec(action(sig), 0..3)), 0..3).prop_map(|atoms| {
        atoms
            .into_iter()
            .fold(SuperOperator::zero(), |acc, (c, chain)| acc.plus(SuperOperator::atom(q(c), chain)))
    })
}

fn mono_poly(sig: VariableSignature, m: &Monomial) -> Polynomial {
    Polynomial::monomial(sig, m.clone(), q(1))
}

fn with_sig<S: Strategy>(f: impl Fn(VariableSignature) -> S) -> impl Strategy<Value = (VariableSignature, S::Value)> {
    signature().prop_flat_map(move |sig| (Just(sig), f(sig)))
}

fn small_config() -> impl Strategy<Value = RepConfig> {
    (any::<bool>(), 1usize..=2, 1usize..=2, any::<bool>(), 0usize..16).prop_map(|(odd, m1, n, primed, bits)| {
        if primed {
            let t: Vec<usize> = (1..=2 * n).filter(|i| bits & (1 << (i - 1)) != 0).collect();
            RepConfig::aprime(odd, m1, n, &t).unwrap()
        } else {
            RepConfig::a(odd, m1, n, bits % (m1 + 1)).unwrap()
        }
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn monomial_product_is_supercommutative((sig, (a, b)) in with_sig(|s| (monomial(s), monomial(s)))) {
        let ab = mono_mul(&a, &b).unwrap();
        let ba = mono_mul(&b, &a).unwrap();
        match (ab, ba) {
            (None, None) => {}
            (Some((na, ma)), Some((nb, mb))) => {
                prop_assert_eq!(ma, mb);
                let odd = a.is_odd() && b.is_odd();
                prop_assert_eq!(na ^ nb, odd);
            }
            _ => prop_assert!(false, "only one order vanished in {:?}", sig),
        }
    }

    #[test]
    fn product_is_associative((sig, (a, b, c)) in with_sig(|s| (polynomial(s), polynomial(s), polynomial(s)))) {
        let left = a.mul(&b).unwrap().mul(&c).unwrap();
        let right = a.mul(&b.mul(&c).unwrap()).unwrap();
        prop_assert_eq!(left, right, "{:?}", sig);
    }

    #[test]
    fn graded_leibniz_rule((sig, (a, b, i)) in with_sig(|s| (monomial(s), monomial(s), 0..s.num_bosonic + s.num_fermionic))) {
        let var = if i < sig.num_bosonic { Var::Bos(i) } else { Var::Ferm(i - sig.num_bosonic) };
        let (pa, pb) = (mono_poly(sig, &a), mono_poly(sig, &b));
        let lhs = derive(&pa.mul(&pb).unwrap(), var).unwrap();
        let first = derive(&pa, var).unwrap().mul(&pb).unwrap();
        let second = pa.mul(&derive(&pb, var).unwrap()).unwrap();
        let sign = if matches!(var, Var::Ferm(_)) && a.is_odd() { q(-1) } else { q(1) };
        prop_assert_eq!(lhs, first.add(&second.scale(&sign)));
    }

    #[test]
    fn operators_act_linearly((sig, (op1, op2, p, r, c)) in with_sig(|s| (operator(s), operator(s), polynomial(s), polynomial(s), -4i64..=4))) {
        let c = q(c);
        let sum = op1.clone().plus(op2.clone());
        prop_assert_eq!(
            apply_operator(&sum, &p).unwrap(),
            apply_operator(&op1, &p).unwrap().add(&apply_operator(&op2, &p).unwrap())
        );
        prop_assert_eq!(
            apply_operator(&op1, &p.add(&r.scale(&c))).unwrap(),
            apply_operator(&op1, &p).unwrap().add(&apply_operator(&op1, &r).unwrap().scale(&c))
        );
        prop_assert_eq!(apply_operator(&op1.clone().scaled(&c), &p).unwrap(), apply_operator(&op1, &p).unwrap().scale(&c), "{:?}", sig);
    }

    #[test]
    fn text_form_round_trips((sig, p) in with_sig(polynomial)) {
        prop_assert_eq!(Polynomial::parse(sig, &p.to_string()).unwrap(), p);
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(24))]

    #[test]
    fn cartan_elements_act_diagonally(cfg in small_config(), seed in any::<u64>()) {
        let rep = Rep::new(&cfg).unwrap();
        for m in osp_core::props::random_monomials(cfg.signature(), 8, 3, seed) {
            let p = mono_poly(cfg.signature(), &m);
            for op in rep.part_ops(Part::Cartan) {
                let img = op.apply(&p);
                prop_assert!(img.is_zero() || img.proportional(&p), "{}: {} -> {}", cfg, p, img);
            }
            prop_assert!(rep.weight_of(&p).is_ok());
        }
    }

    #[test]
    fn grading_and_laplacian_shifts(cfg in small_config(), seed in any::<u64>()) {
        let o = check_grading(&cfg, 8, seed).unwrap();
        prop_assert!(o.passed(), "{}: {:?}", cfg, o.failures);
        if osp_core::rep::delta_eta(&cfg).is_ok() {
            let o = check_delta_eta_shift(&cfg, 8, seed).unwrap();
            prop_assert!(o.passed(), "{}: {:?}", cfg, o.failures);
        }
    }

    #[test]
    fn echelon_span_ignores_row_order(rows in prop::collection::vec(prop::collection::vec(-3i64..=3, 6), 1..7), perm in any::<u64>()) {
        let sparse: Vec<Vec<(usize, num::BigInt)>> = rows
            .iter()
            .map(|r| r.iter().enumerate().filter(|(_, c)| **c != 0).map(|(i, c)| (i, num::BigInt::from(*c))).collect())
            .collect();
        let mut shuffled = sparse.clone();
        let len = shuffled.len();
        for i in 0..len {
            shuffled.swap(i, (perm as usize >> (i % 16)) % len);
        }
        let mut a = Echelon::new();
        let mut b = Echelon::new();
        for r in sparse.iter().filter(|r| !r.is_empty()) {
            a.insert(r.clone());
        }
        for r in shuffled.iter().filter(|r| !r.is_empty()) {
            b.insert(r.clone());
        }
        prop_assert_eq!(a.reduced_basis(), b.reduced_basis());
    }

    #[test]
    fn generated_submodules_grow_with_the_window(cfg in small_config(), k in -1i64..=2, seed in any::<u64>()) {
        let an = Analyzer::new(&cfg).unwrap();
        let small = an.slice(k, 5);
        let pool = small.count_upto(3);
        prop_assume!(pool > 0);
        let g = small.to_poly(&[((seed as usize) % pool, BigRational::from_integer(1.into()))]);
        let lo = an.generate_in(&small, std::slice::from_ref(&g)).unwrap().truncated(3);
        let big = an.slice(k, 7);
        let hi = an.generate_in(&big, std::slice::from_ref(&g)).unwrap();
        for v in lo.basis() {
            prop_assert!(hi.contains(&v), "{} k={} generator {}: {} lost", cfg, k, g, v);
        }
    }
}

#[test]
fn singular_vectors_are_annihilated_weight_vectors() {
    for cfg in [
        RepConfig::a(false, 1, 1, 0).unwrap(),
        RepConfig::a(false, 2, 1, 1).unwrap(),
        RepConfig::a(true, 1, 1, 1).unwrap(),
        RepConfig::aprime(false, 1, 2, &[1, 2]).unwrap(),
    ] {
        let rep = Rep::new(&cfg).unwrap();
        for k in 0..=2 {
            for v in singular_vectors(&SliceKey::new(&cfg, k, 4), Part::Positive, Within::A).unwrap() {
                assert!(rep.weight_of(&v).is_ok(), "{cfg} k={k}: {v}");
                assert!(rep.part_ops(Part::Positive).iter().all(|op| op.apply(&v).is_zero()), "{cfg} k={k}: {v}");
            }
        }
    }
}

#[test]
fn even_singular_harmonics_match_closed_forms() {
    for (m1, n) in [(2, 1), (2, 2), (3, 1)] {
        let cfg = RepConfig::a(false, m1, n, 0).unwrap();
        let rep = Rep::new(&cfg).unwrap();
        for k in 1..=3 {
            let found = singular_vectors(&SliceKey::new(&cfg, k, k as u32), Part::PositiveEven, Within::H).unwrap();
            let closed: Vec<Polynomial> = f_lt_params(&cfg, k)
                .into_iter()
                .map(|(l, t)| f_lt(&cfg, k, l, t, Normalization::Integral).unwrap())
                .collect();
            let group = |ps: &[Polynomial]| {
                let mut m: BTreeMap<String, Vec<Polynomial>> = BTreeMap::new();
                for p in ps {
                    m.entry(rep.weight_of(p).unwrap().to_string()).or_default().push(p.clone());
                }
                m
            };
            let (a, b) = (group(&found), group(&closed));
            assert_eq!(a.keys().collect::<Vec<_>>(), b.keys().collect::<Vec<_>>(), "{} k={k}", cfg.id());
            for (w, ps) in &a {
                let (sa, sb) = (PolySpan::from_polys(ps), PolySpan::from_polys(&b[w]));
                assert!(sa.contains_span(&sb) && sb.contains_span(&sa), "{} k={k} weight {w}", cfg.id());
            }
        }
    }
}

#[test]
fn abelian_rotation_part_adds_a_lowest_harmonic() {
    // so(2) has no positive root, so x2^k-type vectors are also annihilated.
    let cfg = RepConfig::a(false, 1, 1, 0).unwrap();
    let rep = Rep::new(&cfg).unwrap();
    let found = singular_vectors(&SliceKey::new(&cfg, 1, 1), Part::PositiveEven, Within::H).unwrap();
    let weights: Vec<String> = found.iter().map(|p| rep.weight_of(p).unwrap().to_string()).collect();
    assert!(weights.contains(&"(-1|0)".to_string()), "{weights:?}");
    assert_eq!(f_lt_params(&cfg, 1).len() + 1, found.len());
}
