mod common;

use common::{code, el, fixture, poly, rng, same};
use mtg::attack::{random_instance, InstanceConfig};
use mtg::codes::{build_code, Codebook, MtgCode, Twist};
use mtg::decoder::{key_equation_residual, op_count_profile, Branch, CaseBStrategy, DecodeError, Decoder, ProfileRow};
use mtg::gf::{towers, Felt};
use mtg::pkc::random_error;
use mtg::poly::Poly;
use proptest::prelude::*;
use std::sync::Arc;

fn received(c: &MtgCode, name: &str) -> Vec<Felt> {
    let spec = c.spec();
    fixture(name).split_whitespace().map(|s| spec.parse(s, c.params.base).unwrap()).collect()
}

fn add(c: &MtgCode, x: &[Felt], y: &[Felt]) -> Vec<Felt> {
    x.iter().zip(y).map(|(&a, &b)| c.spec().add(a, b)).collect()
}

#[test]
fn binary_single_error_worked_example() {
    let c = code("example3.params");
    let spec = c.spec();
    let y = received(&c, "example3.received");
    let rep = Decoder::new(&c).unwrap().with_transcript(true).decode(&y).unwrap();
    let tr = rep.transcript.as_ref().unwrap();

    let eta = el(spec, "a^3c+a^17");
    let s_pi = Poly::new(vec![spec.add(spec.mul(eta, el(spec, "a^11")), el(spec, "a^4")), el(spec, "a^27"), el(spec, "a^19")], 2);
    assert_eq!(tr.s_pi.as_ref(), Some(&s_pi));
    assert_eq!(tr.steps[0].0, poly(spec, "a^20, a^12"));
    assert_eq!(tr.sigma.as_ref(), Some(&poly(spec, "a^8, 1")));
    // tau is pinned by s_pi sigma mod x^3
    let tau = poly(spec, "a^22c+a^27, a^14c+a^28");
    assert_eq!(tr.tau.as_ref(), Some(&tau));
    assert!(key_equation_residual(&s_pi, &poly(spec, "a^8, 1"), &tau, 3, spec).is_zero());
    assert_eq!(tr.positions, vec![0]);
    assert!(rep.error[0].is_one() && rep.weight() == 1);
    assert_eq!(rep.branch, Branch::A);
    assert_eq!(rep.nu, Some(1));
    // the first row of the printed generator matrix
    let first_row: Vec<Felt> = "1 0 0 1 0 0 0 1 0 1 1 0 1 0 0 0 1 1 0 0".split(' ').map(|s| spec.parse(s, 0).unwrap()).collect();
    assert!(same(&rep.codeword, &first_row));
    assert!(c.is_codeword(&first_row));

    let text = tr.to_text(spec);
    assert!(text.starts_with("mtg-decode-transcript v1\n"));
    for line in ["branch = A", "J = {1}", "e_1 = 1", "nu = 1"] {
        assert!(text.lines().any(|l| l == line), "missing {line:?} in\n{text}");
    }
}

#[test]
fn quaternary_single_error_worked_example() {
    let c = code("example2.params");
    let spec = c.spec();
    let y = received(&c, "example2.received");
    let dec = Decoder::new(&c).unwrap().with_transcript(true);
    let syn = dec.compute_syndrome(&y, spec).unwrap();
    let u = el(spec, "(a+1)b+a");
    assert_eq!(syn.s, vec![u, spec.add(spec.mul(u, el(spec, "c")), u), u]);
    let s_pi = syn.s_pi.clone().unwrap();
    assert_eq!(s_pi, syn.s_poly);

    let rep = dec.decode(&y).unwrap();
    let tr = rep.transcript.unwrap();
    let sigma = tr.sigma.unwrap();
    let tau = tr.tau.unwrap();
    assert_eq!(sigma, poly(spec, "1, 1"));
    // ((a+1)b+a)(c(x-1)+1)
    let expected_tau = poly(spec, "c+1, c").scale(u, spec);
    assert_eq!(tau, expected_tau);
    assert!(key_equation_residual(&s_pi, &sigma, &tau, 3, spec).is_zero());
    assert_eq!(tr.positions, vec![13]);
    assert_eq!(rep.error[13].value(), el(spec, "a").value());
    assert!(c.is_codeword(&rep.codeword));
}

#[test]
fn rejects_malformed_words() {
    let c = code("example2.params");
    let dec = Decoder::new(&c).unwrap();
    let spec = c.spec();
    assert_eq!(dec.decode(&[]).unwrap_err(), DecodeError::LengthMismatch { got: 0, expected: 14 });
    let mut y = received(&c, "example2.received");
    y[4] = el(spec, "b");
    assert_eq!(dec.decode(&y).unwrap_err(), DecodeError::SymbolOutsideAlphabet(4));

    let mut p = c.params.clone();
    p.twists = vec![Twist { degree: 1, hook: 0, eta: el(spec, "c") }, Twist { degree: 2, hook: 1, eta: el(spec, "c") }];
    let two = build_code(&p).unwrap();
    assert_eq!(Decoder::new(&two).unwrap_err(), DecodeError::UnsupportedTwistCount(2));
}

#[test]
fn codewords_take_the_zero_branch() {
    let c = code("example3.params");
    let rep = Decoder::new(&c).unwrap().with_transcript(true).decode(c.generator.row(2)).unwrap();
    assert_eq!(rep.branch, Branch::Zero);
    assert_eq!(rep.weight(), 0);
    assert!(rep.transcript.unwrap().to_text(c.spec()).contains("branch = zero syndrome"));
}

/// Cells spanning tower splits, non-tower twists (constant swept) and
/// classical codes, with odd and even `t`.
fn cell() -> impl Strategy<Value = InstanceConfig> {
    let cells = vec![
        (towers::f2_32_1024(), 0usize, 1usize, 20usize, 3usize, Some((1usize, 1usize))),
        (towers::f2_32_1024(), 0, 1, 24, 4, Some((1, 2))),
        (towers::f2_4_16_256(), 1, 2, 12, 4, Some((1, 1))),
        (towers::f2_4_16_256(), 1, 2, 14, 3, Some((2, 0))),
        (towers::f2_4_16(), 0, 2, 12, 4, Some((1, 3))),
        (towers::f3_9_81(), 0, 1, 8, 2, Some((1, 1))),
        (towers::f2_32_1024(), 0, 1, 20, 4, None),
    ];
    proptest::sample::select(cells).prop_map(|(f, base, s0, n, t, twist)| InstanceConfig { field: Arc::new(f), base, s0, n, t, twist })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(120))]

    #[test]
    fn recovers_every_error_up_to_half_t(cfg in cell(), seed in any::<u64>()) {
        let mut r = rng(seed);
        let p = random_instance(&cfg, &mut r).unwrap();
        let c = build_code(&p).unwrap();
        let spec = c.spec();
        let msg: Vec<Felt> = (0..c.k()).map(|_| spec.random(p.base, &mut r)).collect();
        let cw = c.encode(&msg);
        let w = rand::Rng::gen_range(&mut r, 0..=p.t() / 2);
        let e = random_error(spec, p.base, p.n(), w, &mut r);
        let y = add(&c, &cw, &e);
        for strategy in [CaseBStrategy::RootVote, CaseBStrategy::Sweep] {
            let rep = Decoder::new(&c).unwrap().with_case_b(strategy).with_transcript(true).decode(&y).unwrap();
            prop_assert!(same(&rep.codeword, &cw));
            prop_assert!(same(&rep.error, &e));
            prop_assert_eq!(rep.weight(), w);
            // an error at the support point 0 has its locator root at infinity
            let at_zero = (0..p.n()).any(|i| !e[i].is_zero() && p.support[i].is_zero());
            let expected_branch = match w {
                0 => Branch::Zero,
                w if 2 * w == p.t() => Branch::B,
                _ => Branch::A,
            };
            if !at_zero {
                prop_assert_eq!(rep.branch, expected_branch);
            }
            let tr = rep.transcript.unwrap();
            if w > 0 {
                let (sigma, tau) = (tr.sigma.unwrap(), tr.tau.unwrap());
                prop_assert_eq!(sigma.degree(), w as isize - at_zero as isize);
                if let Some(s_pi) = tr.s_pi {
                    prop_assert!(key_equation_residual(&s_pi, &sigma, &tau, p.t(), spec).is_zero());
                }
                let mut pos: Vec<usize> = (0..p.n()).filter(|&i| !e[i].is_zero()).collect();
                pos.sort_unstable();
                let mut got = tr.positions.clone();
                got.sort_unstable();
                prop_assert_eq!(got, pos);
            }
        }
    }
}

#[test]
fn agrees_with_nearest_codeword_search() {
    let mut r = rng(77);
    let cfg = InstanceConfig { field: Arc::new(towers::f2_4_16_256()), base: 1, s0: 2, n: 12, t: 4, twist: Some((1, 1)) };
    let mut checked = 0;
    while checked < 30 {
        let p = random_instance(&cfg, &mut r).unwrap();
        let c = build_code(&p).unwrap();
        let Ok(book) = Codebook::new(&c, 1 << 16) else { continue };
        let spec = c.spec();
        let dec = Decoder::new(&c).unwrap();
        for _ in 0..20 {
            let i = rand::Rng::gen_range(&mut r, 0..book.len());
            let e = random_error(spec, p.base, p.n(), 2, &mut r);
            let y = add(&c, book.word(i), &e);
            let rep = dec.decode(&y).unwrap();
            let (d, hits) = book.nearest(&y);
            assert_eq!(d, 2);
            assert_eq!(hits.len(), 1);
            assert!(same(&hits[0], &rep.codeword));
        }
        checked += 1;
    }
}

#[test]
fn operation_counts_grow_with_length() {
    let mut r = rng(3);
    let f = Arc::new(towers::f2_32_1024());
    let mut rows: Vec<ProfileRow> = Vec::new();
    for n in [16, 24, 31] {
        let cfg = InstanceConfig { field: f.clone(), base: 0, s0: 1, n, t: 4, twist: Some((1, 1)) };
        let c = build_code(&random_instance(&cfg, &mut r).unwrap()).unwrap();
        rows.push(op_count_profile(&c, 20, &mut r).unwrap());
    }
    assert!(rows.windows(2).all(|w| w[1].mean_syndrome > w[0].mean_syndrome));
    for row in &rows {
        assert!(row.mean_mul_add >= row.mean_syndrome + row.mean_eea);
        assert_eq!(row.to_csv().split(',').count(), ProfileRow::CSV_HEADER.split(',').count());
    }
}
