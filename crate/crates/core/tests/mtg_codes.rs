mod common;

use common::{el, matrix_from_rows, params, rng, same, EXAMPLE1_H, EXAMPLE2_H};
use itertools::Itertools;
use mtg::attack::{random_instance, InstanceConfig};
use mtg::codes::{
    build_code, build_expurgated, build_parity_check, distance_criterion_check, mds_matrix_criterion, min_distance_bruteforce,
    mtrs_generator, same_code, syndrome_congruence_check, tower_distance_guarantee, Codebook, CodeError, MtgParams, MtrsParams,
    Twist,
};
use mtg::gf::{towers, FieldSpec, Felt};
use mtg::linalg::FMatrix;
use proptest::prelude::*;
use std::sync::Arc;

#[test]
fn three_row_twisted_matrix_matches_worked_example() {
    let p = params("example1.params");
    let h = build_parity_check(&p).unwrap();
    assert_eq!(h, matrix_from_rows(&p.field, &EXAMPLE1_H));
}

#[test]
fn single_twist_over_f256_matches_worked_example() {
    let p = params("example2.params");
    let h = build_parity_check(&p).unwrap();
    assert_eq!(h, matrix_from_rows(&p.field, &EXAMPLE2_H));
    // the code is at least two-dimensional over F_4
    assert!(build_code(&p).unwrap().k() >= 2);
}

#[test]
fn params_text_round_trip() {
    for name in ["example1.params", "example2.params", "example3.params", "qc_f9.params"] {
        let p = params(name);
        let again = MtgParams::from_text(&p.to_text()).unwrap();
        assert_eq!(again, p, "{name}");
        assert_eq!(again.to_text(), p.to_text());
    }
}

#[test]
fn malformed_parameter_files() {
    for text in ["", "FIELD 2 1,1,1\nSUPPORT\n1\n", "SUPPORT\n1\n", "FIELD 2 1,1,1\nFIELD 2 1,1,1\n", "garbage"] {
        assert!(MtgParams::from_text(text).is_err(), "{text:?}");
    }
    let good = common::fixture("example1.params");
    assert!(MtgParams::from_text(&good.replace("LEVELS q=1 s0=2", "LEVELS q=1 s0=2 r=0")).is_err());
    assert!(MtgParams::from_text(&good.replace("b+1 (a+1)b+1", "b+1 b+1")).is_err());
}

#[test]
fn parameter_validation() {
    let p = params("example2.params");
    let spec = p.field.clone();
    let mut bad = p.clone();
    bad.twists[0].hook = 3;
    assert!(matches!(build_parity_check(&bad), Err(CodeError::ParamViolation(_))));

    let mut bad = p.clone();
    bad.twists.push(Twist { degree: 1, hook: 2, eta: el(&spec, "c") });
    assert!(matches!(bad.validate(), Err(CodeError::ParamViolation(_))));

    // put a root of g into the support
    let roots = p.goppa.roots_by_search(&spec);
    if let Some(&r) = roots.first() {
        let mut bad = p.clone();
        bad.support[3] = r;
        assert_eq!(bad.validate(), Err(CodeError::GoppaRootInSupport { index: 3 }));
    }

    let mut bad = p.clone();
    bad.support.clear();
    assert!(bad.validate().is_err());

    let mut bad = p.clone();
    bad.base = 3;
    assert!(bad.validate().is_err());
}

#[test]
fn zero_twist_coefficient_gives_the_classical_code() {
    let mut p = params("example2.params");
    let classical = build_code(&p.classical()).unwrap();
    p.twists[0].eta = Felt::zero(p.top());
    assert!(same_code(&build_code(&p).unwrap(), &classical));
}

#[test]
fn expurgated_code_has_zero_sum() {
    let p = params("example3.params");
    let full = build_code(&p).unwrap();
    let sub = build_expurgated(&p).unwrap();
    assert!(sub.k() + 1 >= full.k() && sub.k() <= full.k());
    assert!(full.generator.row_space_contains(&sub.generator, full.spec()));
    let spec = sub.spec();
    for row in sub.generator.row_vecs() {
        assert!(row.iter().fold(Felt::zero(p.base), |acc, &x| spec.add(acc, x)).is_zero());
    }
}

fn tower_config() -> impl Strategy<Value = (InstanceConfig, u64)> {
    let cells = vec![
        (towers::f2_4_16_256(), 1usize, 2usize, 10usize, 3usize, (1usize, 1usize)),
        (towers::f2_4_16_256(), 1, 2, 12, 4, (1, 2)),
        (towers::f2_32_1024(), 0, 1, 14, 2, (1, 0)),
        (towers::f2_32_1024(), 0, 1, 16, 3, (2, 1)),
        (towers::f3_9_81(), 0, 1, 8, 2, (1, 1)),
    ];
    (proptest::sample::select(cells), any::<u64>()).prop_map(|((f, base, s0, n, t, tw), seed)| {
        (InstanceConfig { field: Arc::new(f), base, s0, n, t, twist: Some(tw) }, seed)
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(40))]

    #[test]
    fn generator_satisfies_both_definitions((cfg, seed) in tower_config()) {
        let mut r = rng(seed);
        let p = random_instance(&cfg, &mut r).unwrap();
        let code = build_code(&p).unwrap();
        let spec = code.spec();
        prop_assert!(code.k() + p.m() * p.t() >= p.n());
        let zero_product = code.h_expanded.mul(&code.generator.transpose(), spec).unwrap();
        prop_assert!(zero_product.row_vecs().iter().flatten().all(|x| x.is_zero()));
        for row in code.generator.row_vecs() {
            prop_assert!(syndrome_congruence_check(&p, &row).unwrap());
        }
        // random words: congruence and parity check agree
        for _ in 0..20 {
            let w: Vec<Felt> = (0..p.n()).map(|_| spec.random(p.base, &mut r)).collect();
            prop_assert_eq!(syndrome_congruence_check(&p, &w).unwrap(), code.is_codeword(&w));
        }
    }

    #[test]
    fn tower_guarantee_implies_distance((cfg, seed) in tower_config()) {
        let p = random_instance(&cfg, &mut rng(seed)).unwrap();
        prop_assert!(tower_distance_guarantee(&p));
        prop_assert!(distance_criterion_check(&p, 1 << 20).unwrap());
        let code = build_code(&p).unwrap();
        if let Ok(Some(d)) = min_distance_bruteforce(&code, 1 << 16) {
            prop_assert!(d > p.t());
        }
    }
}

/// Every `t` columns of `H` independent, checked directly on minors.
fn minors_nonsingular(h: &FMatrix, t: usize, spec: &FieldSpec) -> bool {
    (0..h.cols()).combinations(t).all(|idx| h.restrict_columns(&idx).unwrap().rank(spec) == t)
}

#[test]
fn distance_criterion_matches_column_minors() {
    let mut r = rng(11);
    let mut seen = [0usize; 2];
    for trial in 0..60 {
        // short supports over F_16 so that both outcomes occur
        let f = Arc::new(towers::f2_4_16());
        let cfg = InstanceConfig { field: f.clone(), base: 0, s0: 2, n: 3 + trial % 4, t: 2, twist: Some((1, trial % 2)) };
        let p = random_instance(&cfg, &mut r).unwrap();
        let h = build_parity_check(&p).unwrap();
        let expected = minors_nonsingular(&h, p.t(), &f);
        let got = distance_criterion_check(&p, 1 << 20).unwrap();
        assert_eq!(got, expected, "trial {trial}");
        seen[got as usize] += 1;
        if got {
            let d = min_distance_bruteforce(&build_code(&p).unwrap(), 1 << 20).unwrap();
            assert!(d.is_none_or(|d| d > p.t()));
        }
    }
    assert!(seen[0] > 0 && seen[1] > 0, "both outcomes should occur: {seen:?}");
}

#[test]
fn mds_criterion_matches_generator_minors() {
    let f = towers::f2_4_16();
    let level = 2;
    let alpha: Vec<Felt> = (1..9).map(|v| f.elem(level, v).unwrap()).collect();
    let mut agree = 0;
    for eta_v in 0..16 {
        let params = MtrsParams {
            level,
            k: 3,
            alpha: alpha.clone(),
            twists: vec![Twist { degree: 1, hook: 1, eta: f.elem(level, eta_v).unwrap() }],
        };
        let g = mtrs_generator(&params, &f).unwrap();
        let expected = minors_nonsingular(&g, 3, &f);
        assert_eq!(mds_matrix_criterion(&params, &f, 1 << 20).unwrap(), expected, "eta = {eta_v}");
        agree += 1;
    }
    assert_eq!(agree, 16);
}

#[test]
fn brute_force_bounds_and_codebook() {
    let code = build_code(&params("example3.params")).unwrap();
    assert_eq!(min_distance_bruteforce(&code, 15), Err(CodeError::TooLarge { count: 16, bound: 15 }));
    let book = Codebook::new(&code, 1 << 10).unwrap();
    assert_eq!(book.len(), 1 << code.k());
    assert_eq!(book.min_distance(), min_distance_bruteforce(&code, 1 << 10).unwrap());
    for w in book.iter() {
        assert!(code.is_codeword(w));
    }
    let w = book.word(3).to_vec();
    let (d, hits) = book.nearest(&w);
    assert_eq!(d, 0);
    assert!(same(&hits[0], &w));
}

#[test]
fn zero_code_has_no_distance() {
    // t = 3 over F_1024 with m = 10 and n = 20 - the expanded parity check
    // has full column rank once n is small enough
    let mut p = params("example3.params");
    p.support.truncate(6);
    let code = build_code(&p).unwrap();
    assert_eq!(code.k(), 0);
    assert_eq!(min_distance_bruteforce(&code, 1 << 10).unwrap(), None);
}
