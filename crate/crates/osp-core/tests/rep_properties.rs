use osp_core::props::{check_delta_eta_commute, check_delta_eta_shift, check_grading, check_rep_property};
use osp_core::rep::RepConfig;

fn grid() -> Vec<RepConfig> {
    let mut out = Vec::new();
    for odd in [false, true] {
        for m1 in 1..=2 {
            for n in 1..=2 {
                for r in 0..=m1 {
                    out.push(RepConfig::a(odd, m1, n, r).unwrap());
                }
                let subsets: Vec<Vec<usize>> = (0u32..(1 << (2 * n)))
                    .map(|bits| (1..=2 * n).filter(|i| bits & (1 << (i - 1)) != 0).collect())
                    .collect();
                for t in subsets {
                    out.push(RepConfig::aprime(odd, m1, n, &t).unwrap());
                }
            }
        }
    }
    out
}

#[test]
fn homomorphism_identity_on_small_configs() {
    for cfg in grid().into_iter().filter(|c| c.m1 == 1 && c.n == 1) {
        let o = check_rep_property(&cfg, 10, 1).unwrap();
        assert!(o.passed(), "{}: {:?}", cfg, o.failures);
    }
}

#[test]
fn grading_is_preserved() {
    for cfg in grid() {
        let o = check_grading(&cfg, 10, 2).unwrap();
        assert!(o.passed(), "{}: {:?}", cfg, o.failures);
    }
}

#[test]
fn laplacian_pair_is_invariant_where_defined() {
    for cfg in grid() {
        if osp_core::rep::delta_eta(&cfg).is_err() {
            continue;
        }
        let o = check_delta_eta_commute(&cfg, 10, 3).unwrap();
        assert!(o.passed(), "{}: {:?}", cfg, o.failures);
        let o = check_delta_eta_shift(&cfg, 10, 3).unwrap();
        assert!(o.passed(), "{}: {:?}", cfg, o.failures);
    }
}

#[test]
fn conjugation_matches_operator_spans() {
    use osp_core::linalg::poly_rank;
    use osp_core::props::random_monomials;
    use osp_core::rep::{AprimeConjugation, Rep};
    use osp_core::superpoly::Polynomial;
    for t in [vec![1, 4], vec![2, 3], vec![3, 4]] {
        let cfg = RepConfig::aprime(false, 1, 2, &t).unwrap();
        let conj = AprimeConjugation::new(&cfg).unwrap();
        let norm = AprimeConjugation::normal_config(&cfg).unwrap();
        let (rt, rn) = (Rep::new(&cfg).unwrap(), Rep::new(&norm).unwrap());
        for m in random_monomials(cfg.signature(), 10, 2, 5) {
            let p = Polynomial::monomial(cfg.signature(), m, osp_core::superpoly::q(1));
            let own: Vec<Polynomial> = rt.ops.iter().map(|o| o.apply(&p)).collect();
            let pn = conj.to_normal(&p);
            let via: Vec<Polynomial> = rn.ops.iter().map(|o| conj.from_normal(&o.apply(&pn))).collect();
            let mut both = own.clone();
            both.extend(via.iter().cloned());
            assert_eq!(poly_rank(&own), poly_rank(&both), "T={t:?}");
            assert_eq!(poly_rank(&via), poly_rank(&both), "T={t:?}");
        }
    }
}
