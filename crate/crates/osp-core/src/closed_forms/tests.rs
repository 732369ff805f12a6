use super::*;
use crate::rep::{delta_eta, k_degree, RepConfig};

fn harmonic(cfg: &RepConfig, p: &Polynomial) -> bool {
    let (d, _) = delta_eta(cfg).unwrap();
    d.apply(p).is_zero()
}

fn homogeneous_k(cfg: &RepConfig, p: &Polynomial, k: i64) -> bool {
    p.terms.keys().all(|m| k_degree(cfg, m) == k)
}

#[test]
fn f_lt_is_harmonic_even_and_odd() {
    for odd in [false, true] {
        for (m1, n) in [(1, 1), (2, 1), (1, 2), (2, 2)] {
            let cfg = RepConfig::a(odd, m1, n, 0).unwrap();
            for k in 0..5 {
                for (l, t) in f_lt_params(&cfg, k) {
                    let p = f_lt(&cfg, k, l, t, Normalization::Integral).unwrap();
                    assert!(!p.is_zero(), "{} k={k} l={l} t={t}", cfg.id());
                    assert!(harmonic(&cfg, &p), "{} k={k} l={l} t={t}", cfg.id());
                    assert!(homogeneous_k(&cfg, &p, k));
                }
            }
        }
    }
}

#[test]
fn ladders_hold_in_repaired_reading() {
    for (m1, n) in [(1, 1), (2, 1), (1, 2), (2, 2), (3, 2)] {
        let cfg = RepConfig::a(false, m1, n, 0).unwrap();
        for k in 1..6 {
            for t in 1..=n as i64 {
                if let Ok(id) = ladder_down(&cfg, k, t) {
                    assert!(id.holds(), "down {} k={k} t={t}", cfg.id());
                }
            }
            for (l, t) in f_lt_params(&cfg, k) {
                if let Ok(id) = ladder_up(&cfg, k, l, t, Normalization::Integral, false) {
                    assert!(id.holds(), "up {} k={k} l={l} t={t}", cfg.id());
                }
            }
        }
    }
}

#[test]
fn literal_ascending_ladder_fails() {
    let cfg = RepConfig::a(false, 2, 2, 0).unwrap();
    let id = ladder_up(&cfg, 4, 1, 0, Normalization::Integral, true).unwrap();
    assert!(!id.holds());
}

#[test]
fn repaired_unswapped_basis_is_harmonic() {
    for (m1, n) in [(1, 1), (2, 1), (1, 2), (2, 2)] {
        let cfg = RepConfig::a(false, m1, n, 0).unwrap();
        for k in 1..4 {
            for (label, p) in basis_unswapped(&cfg, k, Reading::Repaired).unwrap() {
                assert!(harmonic(&cfg, &p), "{} k={k} {:?}", cfg.id(), label);
                assert!(homogeneous_k(&cfg, &p, k));
            }
        }
    }
}

#[test]
fn partly_swapped_stream_is_harmonic() {
    for (m1, n, r) in [(2, 1, 1), (2, 2, 1), (3, 1, 1), (3, 1, 2)] {
        let cfg = RepConfig::a(false, m1, n, r).unwrap();
        for k in -2..3 {
            for (label, p) in basis_partly_swapped(&cfg, k, 4).unwrap() {
                assert!(harmonic(&cfg, &p), "{} k={k} {:?}", cfg.id(), label);
                assert!(homogeneous_k(&cfg, &p, k));
            }
        }
    }
}

#[test]
fn index_set_examples() {
    let sig = RepConfig::a(false, 1, 1, 1).unwrap().signature();
    assert_eq!(h_kls(sig, &IndexTupleI::zero(1, 1)).unwrap(), Polynomial::one(sig));
    let mut t = IndexTupleI::zero(1, 1);
    t.set_s(1, 1, 1);
    assert_eq!(h_kls(sig, &t).unwrap(), Polynomial::parse(sig, "x2 - x1 t1 t2").unwrap());
    let members = enumerate_i(1, 1, 1, 3);
    assert!(members.iter().any(|t| t.lt == vec![1, 0] && t.s == vec![0] && t.kt == vec![0]));
    assert!(enumerate_i(1, 1, 2, 8).is_empty());
    let mut bad = IndexTupleI::zero(2, 1);
    bad.kt[0] = 1;
    bad.set_s(2, 1, 1);
    match bad.validate() {
        Err(OspError::Clause(c)) => assert_eq!(c, "k_t s_{p,q}=0 for t<p"),
        other => panic!("{other:?}"),
    }
}

#[test]
fn fully_swapped_basis_matches_kernel() {
    for (m1, n) in [(1, 1), (1, 2), (2, 1)] {
        let cfg = RepConfig::a(false, m1, n, m1).unwrap();
        for k in -2..=n as i64 + 1 {
            let c = check_basis_fully_swapped(&cfg, k, 6).unwrap();
            assert!(c.passed(), "{} k={k}: {:?}", cfg.id(), c.failing_rows().collect::<Vec<_>>());
        }
    }
}

#[test]
fn unswapped_and_partly_swapped_bases_match_kernel() {
    for (m1, n) in [(1, 1), (2, 1), (1, 2)] {
        let cfg = RepConfig::a(false, m1, n, 0).unwrap();
        for k in 1..4 {
            let c = check_basis_unswapped(&cfg, k, k as u32, Reading::Repaired).unwrap();
            assert!(c.passed(), "{} k={k}: {c:?}", cfg.id());
        }
    }
    let cfg = RepConfig::a(false, 2, 1, 1).unwrap();
    for k in -1..3 {
        let c = check_basis_partly_swapped(&cfg, k, 5).unwrap();
        assert!(c.passed(), "k={k}: {:?}", c.failing_rows().collect::<Vec<_>>());
    }
}

#[test]
fn literal_unswapped_basis_fails_once_two_contractions_occur() {
    let cfg = RepConfig::a(false, 2, 1, 0).unwrap();
    assert!(check_basis_unswapped(&cfg, 2, 2, Reading::Literal).unwrap().passed());
    let c = check_basis_unswapped(&cfg, 4, 4, Reading::Literal).unwrap();
    assert!(c.not_harmonic > 0);
}

#[test]
fn case3_generators_are_harmonic() {
    let cfg = RepConfig::a(false, 2, 1, 1).unwrap();
    for k in -1..4 {
        for (l, p, s) in case3_params(&cfg, k, 3) {
            for fam in [Case3Family::F, Case3Family::G] {
                let v = case3(&cfg, fam, l, p, s).unwrap();
                assert!(harmonic(&cfg, &v) && homogeneous_k(&cfg, &v, k), "{fam:?} {l} {p} {s}");
            }
        }
    }
    let cfg = RepConfig::a(false, 3, 1, 1).unwrap();
    for k in -1..3 {
        for (l, p, s) in case3_params(&cfg, k, 3) {
            let v = case3(&cfg, Case3Family::H, l, p, s).unwrap();
            assert!(harmonic(&cfg, &v) && homogeneous_k(&cfg, &v, k), "h {l} {p} {s}");
        }
    }
}

#[test]
fn case3_identities() {
    let cfg = RepConfig::a(false, 2, 1, 1).unwrap();
    for k in 0..4 {
        for (l, p, s) in case3_params(&cfg, k, 3) {
            for fam in [Case3Family::F, Case3Family::G] {
                assert!(case3_raising(&cfg, fam, l, p, s).unwrap().holds(), "{fam:?} {l} {p} {s}");
            }
        }
    }
    for (m1, r) in [(3, 1), (4, 1)] {
        let cfg = RepConfig::a(false, m1, 1, r).unwrap();
        for k in 0..3 {
            for (l, p, s) in case3_params(&cfg, k, 3) {
                if l == 0 {
                    continue;
                }
                assert!(h_lowering(&cfg, l, p, s).unwrap().holds());
                assert!(h_recurrence(&cfg, l, p, s, RecurrenceReading::Repaired).unwrap().holds());
                let printed = h_recurrence(&cfg, l, p, s, RecurrenceReading::IndexRepaired).unwrap().holds();
                assert_eq!(printed, l == 1 && p == 0, "{l} {p} {s}");
            }
        }
    }
}

#[test]
fn odd_table_vectors_are_singular_and_harmonic() {
    for (m1, n) in [(1, 1), (1, 2), (2, 1)] {
        for r in 0..=m1 {
            let cfg = RepConfig::a(true, m1, n, r).unwrap();
            for k in -2..=(2 * n as i64 + 2) {
                let Ok(c) = check_odd_hw(&cfg, k, Reading::Repaired) else { continue };
                assert!(c.nonzero && c.in_a_k && c.annihilated && c.harmonic, "{c:?}");
            }
        }
    }
}

#[test]
fn odd_table_literal_middle_row_has_wrong_degree() {
    let cfg = RepConfig::a(true, 1, 2, 1).unwrap();
    assert!(!check_odd_hw(&cfg, 3, Reading::Literal).unwrap().in_a_k);
    assert!(check_odd_hw(&cfg, 4, Reading::Literal).unwrap().in_a_k);
}

#[test]
fn odd_table_weights_against_cartan_eigenvalues() {
    let cfg = RepConfig::a(true, 2, 1, 0).unwrap();
    assert!(check_odd_hw(&cfg, 3, Reading::Literal).unwrap().weight_matches);
    let cfg = RepConfig::a(true, 1, 1, 0).unwrap();
    let c = check_odd_hw(&cfg, 2, Reading::Literal).unwrap();
    assert_eq!(c.weight.as_deref(), Some("(2|0)"));
    assert_eq!(c.table_weight, "(1|0)");
}

#[test]
fn g_pq_times_thetas_is_harmonic() {
    for n in [1usize, 2] {
        let cfg = RepConfig::a(true, 1, n, 1).unwrap();
        let sig = cfg.signature();
        for k in n as i64 + 1..n as i64 + 4 {
            let v = g_pq(&cfg, k - n as i64, k - n as i64 - 1).unwrap().mul(&theta_run(sig, 1, n).unwrap()).unwrap();
            assert!(harmonic(&cfg, &v) && homogeneous_k(&cfg, &v, k), "n={n} k={k}");
        }
    }
}

#[test]
fn two_streams_split_each_piece() {
    for (m1, n) in [(1, 2), (2, 1), (2, 2)] {
        for level in 0..4 {
            let c = check_two_stream_level(m1, n, level).unwrap();
            assert!(c.passed(), "m1={m1} n={n} {c:?}");
        }
    }
    let sig = aprime_normal(2, 1).unwrap().signature();
    let top = theta_run(sig, 1, 2).unwrap();
    let seeds = two_stream_level(2, 1, 2).unwrap();
    assert!(seeds.iter().any(|e| e.t == 0 && e.q == 2 && e.stream == Stream::Top && e.vector.proportional(&top)));
}

#[test]
fn family_ids_round_trip_and_evaluate() {
    let id: ClosedFamilyId = "f_lt:even:k=3,l=1,t=0".parse().unwrap();
    assert_eq!(id.family, ClosedFamily::FLtEven);
    assert_eq!(id.to_string(), "f_lt:even:k=3,l=1,m1=1,n=1,t=0");
    assert_eq!(id.to_string().parse::<ClosedFamilyId>().unwrap(), id);
    assert_eq!(id.evaluate().unwrap().len(), 1);
    let f0: ClosedFamilyId = "f_lt:even:k=2,l=0,t=0".parse().unwrap();
    let sig = f0.config().unwrap().signature();
    assert!(f0.evaluate().unwrap()[0].proportional(&Polynomial::parse(sig, "x1^2").unwrap()));
    let h: ClosedFamilyId = "h_kls:s=1".parse().unwrap();
    assert_eq!(h.evaluate().unwrap()[0], Polynomial::parse(sig, "x2 - x1 t1 t2").unwrap());
    let fl: ClosedFamilyId = "f_lps:l=0,p=2,s=1".parse().unwrap();
    let sig = fl.config().unwrap().signature();
    assert_eq!(fl.evaluate().unwrap()[0], Polynomial::parse(sig, "x2^2 x1 t1").unwrap());
    assert!("f_lt:even:k=3,l=5,t=0".parse::<ClosedFamilyId>().unwrap().evaluate().is_err());
    assert!("f_lt:even:k=3,zz=1".parse::<ClosedFamilyId>().is_err());
    assert!("nope:k=1".parse::<ClosedFamilyId>().is_err());
    assert!("h_kls:kt=1,s=1".parse::<ClosedFamilyId>().unwrap().evaluate().is_ok());
    assert!(matches!(
        "h_kls:m1=2,kt=1/0,s=0/1".parse::<ClosedFamilyId>().unwrap().evaluate(),
        Err(OspError::Clause(_))
    ));
}
