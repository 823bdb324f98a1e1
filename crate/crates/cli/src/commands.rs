use std::fmt::Write as _;
use std::fs;
use std::path::Path;

use mtg::attack::{
    advanced_mtg_candidates, basic_mtg_recover, fp_bound_table, random_instance, support_recovery_probe, AttackError,
    AttackInstance, FpCell, FpRow, ProbeConfig, ProbeReport,
};
use mtg::codes::{build_code, min_distance_bruteforce, tower_distance_guarantee, CodeError, MtgCode, MtgParams};
use mtg::decoder::{op_count_profile, DecodeError, Decoder, ProfileRow};
use mtg::gf::{FieldSpec, Felt};
use mtg::pkc::{
    ciphertext_from_text, ciphertext_to_text, decrypt as pkc_decrypt, encrypt as pkc_encrypt, keygen as pkc_keygen,
    rng_for, sample_error, KeygenConfig, PkcError, PublicKey, SecretKey, Stream,
};
use mtg::qc::{build_qc_code, permutation_preserves, QcError, QcKey, QcSpec};

use crate::config::KvConfig;
use crate::{
    BuildArgs, CliError, DecodeArgs, DecryptArgs, DistanceArgs, EncryptArgs, ExperimentArgs, KeygenArgs, QcBuildArgs,
    RecoverArgs,
};

fn read(path: &Path) -> Result<String, CliError> {
    fs::read_to_string(path).map_err(|e| CliError::input(format!("{}: {e}", path.display())))
}

fn write(path: &Path, text: &str) -> Result<(), CliError> {
    fs::write(path, text).map_err(|e| CliError::input(format!("{}: {e}", path.display())))
}

fn write_or_print(path: Option<&Path>, text: &str) -> Result<(), CliError> {
    match path {
        Some(p) => write(p, text),
        None => {
            print!("{text}");
            Ok(())
        }
    }
}

fn code_err(e: CodeError) -> CliError {
    match e {
        CodeError::TooLarge { .. } => CliError::Bound(e.to_string()),
        _ => CliError::input(e.to_string()),
    }
}

fn decode_err(e: DecodeError) -> CliError {
    match e {
        DecodeError::DecodeFailure(_) | DecodeError::UnexpectedDegree { .. } => CliError::failure(e.to_string()),
        _ => CliError::input(e.to_string()),
    }
}

fn pkc_err(e: PkcError) -> CliError {
    match e {
        PkcError::DecryptFailure(_) => CliError::failure(e.to_string()),
        PkcError::Decode(d) => decode_err(d),
        PkcError::Code(c) => code_err(c),
        _ => CliError::input(e.to_string()),
    }
}

fn attack_err(e: AttackError) -> CliError {
    match e {
        AttackError::NoCandidate | AttackError::MultipleCandidates(_) => CliError::failure(e.to_string()),
        AttackError::Code(c) => code_err(c),
        _ => CliError::input(e.to_string()),
    }
}

fn qc_err(e: QcError) -> CliError {
    match e {
        QcError::Code(c) => code_err(c),
        _ => CliError::input(e.to_string()),
    }
}

fn load_code(path: &Path) -> Result<MtgCode, CliError> {
    let params = MtgParams::from_text(&read(path)?).map_err(code_err)?;
    build_code(&params).map_err(code_err)
}

fn word_text(w: &[Felt], spec: &FieldSpec) -> String {
    ciphertext_to_text(w, spec)
}

fn read_word(path: &Path, spec: &FieldSpec, level: usize) -> Result<Vec<Felt>, CliError> {
    ciphertext_from_text(&read(path)?, spec, level).map_err(|e| CliError::input(format!("{}: {e}", path.display())))
}

fn distance_line(code: &MtgCode, bound: u128) -> String {
    match min_distance_bruteforce(code, bound) {
        Ok(Some(d)) => format!("d = {d}"),
        Ok(None) => "d = none (zero code)".into(),
        Err(e) => format!("d = skipped ({e})"),
    }
}

pub fn code_build(a: &BuildArgs) -> Result<(), CliError> {
    let code = load_code(&a.params)?;
    let spec = code.spec();
    let p = &code.params;
    let mut report = String::new();
    let _ = writeln!(report, "n = {}", code.n());
    let _ = writeln!(report, "k = {}", code.k());
    let _ = writeln!(report, "t = {}", code.t());
    let _ = writeln!(report, "q = {}", p.q());
    let _ = writeln!(report, "m = {}", p.m());
    let _ = writeln!(report, "twists = {}", p.twists.len());
    let guaranteed = tower_distance_guarantee(p);
    let _ = writeln!(report, "tower distance guarantee (d >= t + 1) = {guaranteed}");
    let _ = writeln!(report, "{}", distance_line(&code, a.bound));
    let files = [
        ("H.txt", code.h.to_text(spec)),
        ("H_expanded.txt", code.h_expanded.to_text(spec)),
        ("G.txt", code.generator.to_text(spec)),
        ("report.txt", report.clone()),
    ];
    fs::create_dir_all(&a.out).map_err(|e| CliError::input(format!("{}: {e}", a.out.display())))?;
    for (name, text) in files {
        write(&a.out.join(name), &text)?;
    }
    print!("{report}");
    Ok(())
}

pub fn code_decode(a: &DecodeArgs) -> Result<(), CliError> {
    let code = load_code(&a.params)?;
    let spec = code.spec();
    let r = read_word(&a.input, spec, spec.top())?;
    let dec = Decoder::new(&code).map_err(decode_err)?.with_transcript(a.transcript.is_some());
    let report = dec.decode(&r);
    if let (Some(path), Ok(rep)) = (&a.transcript, &report) {
        if let Some(t) = &rep.transcript {
            write(path, &t.to_text(spec))?;
        }
    }
    let report = report.map_err(decode_err)?;
    if let Some(out) = &a.out {
        write(out, &word_text(&report.error, spec))?;
    }
    print!("{}", word_text(&report.codeword, spec));
    Ok(())
}

pub fn code_distance(a: &DistanceArgs) -> Result<(), CliError> {
    let code = load_code(&a.params)?;
    match min_distance_bruteforce(&code, a.bound).map_err(code_err)? {
        Some(d) => println!("{d}"),
        None => println!("none"),
    }
    Ok(())
}

pub fn keygen(a: &KeygenArgs) -> Result<(), CliError> {
    let cfg = KvConfig::parse(&read(&a.params)?)?;
    let inst = cfg.instance()?;
    let (twist_degree, hook) = inst.twist.ok_or_else(|| CliError::input("keys need a twist"))?;
    let kc = KeygenConfig { field: inst.field, base: inst.base, s0: inst.s0, n: inst.n, t: inst.t, twist_degree, hook };
    let (pk, sk) = pkc_keygen(&kc, a.seed).map_err(pkc_err)?;
    let (pub_text, sec_text) = (pk.to_text(), sk.to_text());
    write(&a.out.with_extension("pub"), &pub_text)?;
    write(&a.out.with_extension("sec"), &sec_text)?;
    println!("n = {}, k = {}, t = {}, weight = {}", pk.n, pk.k, pk.t, pk.weight());
    Ok(())
}

pub fn encrypt(a: &EncryptArgs) -> Result<(), CliError> {
    let pk = PublicKey::from_text(&read(&a.key)?).map_err(pkc_err)?;
    let spec = pk.field.as_ref();
    let e = match (&a.input, a.seed) {
        (Some(path), _) => read_word(path, spec, pk.base)?,
        (None, Some(seed)) => {
            let e = sample_error(spec, pk.base, pk.n, pk.weight(), seed).map_err(pkc_err)?;
            if let Some(path) = &a.error_out {
                write(path, &word_text(&e, spec))?;
            }
            e
        }
        (None, None) => return Err(CliError::input("give --in or --seed")),
    };
    let c = pkc_encrypt(&pk, &e).map_err(pkc_err)?;
    write(&a.out, &ciphertext_to_text(&c, spec))
}

pub fn decrypt(a: &DecryptArgs) -> Result<(), CliError> {
    let sk = SecretKey::from_text(&read(&a.key)?).map_err(pkc_err)?;
    let spec = sk.params.field.as_ref();
    let c = read_word(&a.input, spec, sk.params.base)?;
    let e = pkc_decrypt(&sk, &c).map_err(pkc_err)?;
    write(&a.out, &word_text(&e, spec))
}

/// Config: instance keys plus `eps` and `j` (list).
pub fn attack_fp_rate(a: &ExperimentArgs) -> Result<(), CliError> {
    let cfg = KvConfig::parse(&read(&a.params)?)?;
    let instance = cfg.instance()?;
    let eps = cfg.get_or("eps", instance.n)?;
    let cells: Vec<FpCell> = cfg.list::<usize>("j")?.into_iter().map(|j| FpCell { instance: instance.clone(), eps, j, trials: a.trials }).collect();
    let rows = fp_bound_table(&cells, &mut rng_for(a.seed, Stream::Experiment)).map_err(attack_err)?;
    let mut out = format!("{}\n", FpRow::CSV_HEADER);
    for r in rows {
        out.push_str(&r.to_csv());
        out.push('\n');
    }
    write_or_print(a.out.as_deref(), &out)
}

pub fn attack_recover(a: &RecoverArgs) -> Result<(), CliError> {
    let code = load_code(&a.params)?;
    let n = code.n();
    let known = a.known.unwrap_or(n);
    if known == 0 || known > n {
        return Err(CliError::input(format!("--known must be in 1..={n}")));
    }
    let inst = AttackInstance::from_params(&code.params, code.h_expanded.clone(), (0..known).collect());
    let spec = code.spec();
    let mut rng = rng_for(a.seed, Stream::Experiment);
    let mut out = String::from("candidate,true_goppa\n");
    if known == n {
        let g = basic_mtg_recover(&inst, &mut rng).map_err(attack_err)?;
        let _ = writeln!(out, "{},{}", g.to_text(spec), inst.is_true_goppa(&g));
    } else {
        let report = advanced_mtg_candidates(&inst, &mut rng).map_err(attack_err)?;
        if report.candidates.is_empty() {
            return Err(CliError::failure("no candidate passes the syndrome test"));
        }
        for g in &report.candidates {
            let _ = writeln!(out, "{},{}", g.to_text(spec), inst.is_true_goppa(g));
        }
    }
    write_or_print(a.out.as_deref(), &out)
}

/// Config: instance keys plus `eps`, `trials_per_instance`, `enumerate`.
pub fn attack_support_probe(a: &ExperimentArgs) -> Result<(), CliError> {
    let cfg = KvConfig::parse(&read(&a.params)?)?;
    let instance = cfg.instance()?;
    let probe = ProbeConfig {
        eps: cfg.get("eps")?,
        trials: a.trials,
        trials_per_instance: cfg.get_or("trials_per_instance", 100)?,
        enumerate_trials: cfg.get_or("enumerate", 0)?,
        instance,
    };
    let report = support_recovery_probe(&probe, &mut rng_for(a.seed, Stream::Experiment)).map_err(attack_err)?;
    write_or_print(a.out.as_deref(), &format!("{}\n{}\n", ProbeReport::CSV_HEADER, report.to_csv()))
}

pub fn qc_build(a: &QcBuildArgs) -> Result<(), CliError> {
    let spec = QcSpec::from_text(&read(&a.params)?).map_err(qc_err)?;
    let qc = build_qc_code(&spec).map_err(qc_err)?;
    let key = QcKey::new(&spec, &qc).ok_or_else(|| CliError::failure("parity check is not invariant under the involution"))?;
    let code = &qc.code;
    let mut report = String::new();
    let _ = writeln!(report, "n = {}", code.n());
    let _ = writeln!(report, "k = {}", code.k());
    let _ = writeln!(report, "t = {}", code.t());
    let _ = writeln!(report, "{}", distance_line(code, a.bound));
    let _ = writeln!(report, "quasi-cyclic order = {}", qc.order);
    let _ = writeln!(report, "involution in PAut = {}", permutation_preserves(code, &qc.perm));
    let _ = writeln!(report, "packed rows = {} of {}", key.packed.reps.rows(), key.packed.unpack().rows());
    fs::create_dir_all(&a.out).map_err(|e| CliError::input(format!("{}: {e}", a.out.display())))?;
    write(&a.out.join("code.params"), &code.params.to_text())?;
    write(&a.out.join("qc.key"), &key.to_text())?;
    write(&a.out.join("report.txt"), &report)?;
    print!("{report}");
    Ok(())
}

/// Config: instance keys with `n` and `t` as lists; one row per pair.
pub fn bench_decode(a: &ExperimentArgs) -> Result<(), CliError> {
    let cfg = KvConfig::parse(&read(&a.params)?)?;
    let ns: Vec<usize> = cfg.list("n")?;
    let ts: Vec<usize> = cfg.list("t")?;
    let mut rng = rng_for(a.seed, Stream::Experiment);
    let mut out = format!("{}\n", ProfileRow::CSV_HEADER);
    for &n in &ns {
        for &t in &ts {
            let inst = cfg.instance_sized(n, t)?;
            let params = random_instance(&inst, &mut rng).map_err(attack_err)?;
            let code = build_code(&params).map_err(code_err)?;
            let row = op_count_profile(&code, a.trials, &mut rng).map_err(decode_err)?;
            out.push_str(&row.to_csv());
            out.push('\n');
        }
    }
    write_or_print(a.out.as_deref(), &out)
}
