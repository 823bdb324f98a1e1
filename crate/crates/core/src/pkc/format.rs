//! Text formats for keys and ciphertexts.
//!
//! ```text
//! mtg-public-key v1
//! rng = chacha20
//! field = 2 1,0,1,0,0,1 10000,10000,10000 names=ac
//! base = 0
//! n = 12
//! ...
//! [matrix]
//! 8 12
//! 1 0 1 ...
//! ```
//!
//! A header line, `key = value` pairs, then bracketed sections whose bodies
//! are kept verbatim. A ciphertext is one line of space-separated symbols.

use std::sync::Arc;

use super::{PkcError, PublicKey, SecretKey, RNG_ID};
use crate::codes::MtgParams;
use crate::gf::{FieldSpec, Felt};
use crate::linalg::FMatrix;

pub const PUBLIC_HEADER: &str = "mtg-public-key v1";
pub const SECRET_HEADER: &str = "mtg-secret-key v1";

fn ferr(msg: impl Into<String>) -> PkcError {
    PkcError::Format(msg.into())
}

/// Generic header / key-value / section container shared by the key formats.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct KeyFile {
    pub header: String,
    pub values: Vec<(String, String)>,
    pub sections: Vec<(String, String)>,
}

impl KeyFile {
    pub fn new(header: &str) -> KeyFile {
        KeyFile { header: header.to_string(), ..Default::default() }
    }

    pub fn set(&mut self, key: &str, value: impl ToString) {
        self.values.push((key.to_string(), value.to_string()));
    }

    pub fn add_section(&mut self, name: &str, body: impl Into<String>) {
        self.sections.push((name.to_string(), body.into()));
    }

    pub fn get(&self, key: &str) -> Result<&str, PkcError> {
        self.values.iter().find(|(k, _)| k == key).map(|(_, v)| v.as_str()).ok_or_else(|| ferr(format!("missing key {key}")))
    }

    pub fn get_usize(&self, key: &str) -> Result<usize, PkcError> {
        self.get(key)?.parse().map_err(|_| ferr(format!("{key} is not an integer")))
    }

    pub fn get_u64(&self, key: &str) -> Result<u64, PkcError> {
        self.get(key)?.parse().map_err(|_| ferr(format!("{key} is not an integer")))
    }

    pub fn section(&self, name: &str) -> Result<&str, PkcError> {
        self.sections.iter().find(|(n, _)| n == name).map(|(_, b)| b.as_str()).ok_or_else(|| ferr(format!("missing section [{name}]")))
    }

    pub fn to_text(&self) -> String {
        let mut out = format!("{}\n", self.header);
        for (k, v) in &self.values {
            out.push_str(&format!("{k} = {v}\n"));
        }
        for (name, body) in &self.sections {
            out.push_str(&format!("[{name}]\n{body}"));
            if !body.ends_with('\n') {
                out.push('\n');
            }
        }
        out
    }

    /// Parses a file and checks its header line.
    pub fn parse(text: &str, header: &str) -> Result<KeyFile, PkcError> {
        let mut lines = text.lines();
        let first = lines.next().unwrap_or("").trim();
        if first != header {
            return Err(ferr(format!("expected header `{header}`, found `{first}`")));
        }
        let mut kf = KeyFile::new(header);
        for line in lines {
            let trimmed = line.trim();
            if let Some(name) = trimmed.strip_prefix('[').and_then(|s| s.strip_suffix(']')) {
                if kf.sections.iter().any(|(n, _)| n == name) {
                    return Err(ferr(format!("duplicate section [{name}]")));
                }
                kf.sections.push((name.to_string(), String::new()));
            } else if let Some((_, body)) = kf.sections.last_mut() {
                body.push_str(line);
                body.push('\n');
            } else if trimmed.is_empty() || trimmed.starts_with('#') {
                continue;
            } else {
                let (k, v) = trimmed.split_once('=').ok_or_else(|| ferr(format!("expected key = value: {trimmed}")))?;
                kf.values.push((k.trim().to_string(), v.trim().to_string()));
            }
        }
        Ok(kf)
    }
}

fn check_rng(kf: &KeyFile) -> Result<(), PkcError> {
    let rng = kf.get("rng")?;
    if rng != RNG_ID {
        return Err(ferr(format!("unsupported generator {rng}")));
    }
    Ok(())
}

fn parse_twist(s: &str) -> Result<(usize, usize), PkcError> {
    let mut it = s.split_whitespace().map(|x| x.parse::<usize>());
    match (it.next(), it.next(), it.next()) {
        (Some(Ok(d)), Some(Ok(h)), None) => Ok((d, h)),
        _ => Err(ferr(format!("twist must be `degree hook`: {s}"))),
    }
}

impl PublicKey {
    pub fn to_text(&self) -> String {
        let mut kf = KeyFile::new(PUBLIC_HEADER);
        kf.set("rng", RNG_ID);
        kf.set("field", self.field.to_text());
        kf.set("base", self.base);
        kf.set("n", self.n);
        kf.set("k", self.k);
        kf.set("t", self.t);
        kf.set("twist", format!("{} {}", self.twist_degree, self.hook));
        kf.add_section("matrix", self.h_pub.to_text(&self.field));
        kf.to_text()
    }

    pub fn from_text(text: &str) -> Result<PublicKey, PkcError> {
        let kf = KeyFile::parse(text, PUBLIC_HEADER)?;
        check_rng(&kf)?;
        let field = Arc::new(FieldSpec::from_text(kf.get("field")?).map_err(|e| ferr(e.to_string()))?);
        let base = kf.get_usize("base")?;
        if base > field.top() {
            return Err(ferr("base level above the tower top"));
        }
        let (n, k, t) = (kf.get_usize("n")?, kf.get_usize("k")?, kf.get_usize("t")?);
        let (twist_degree, hook) = parse_twist(kf.get("twist")?)?;
        let h_pub = FMatrix::from_text(kf.section("matrix")?, &field, base)?;
        if h_pub.cols() != n {
            return Err(ferr(format!("matrix has {} columns, n = {n}", h_pub.cols())));
        }
        if h_pub.rows() + k != n {
            return Err(ferr(format!("matrix has {} rows, expected n - k = {}", h_pub.rows(), n.saturating_sub(k))));
        }
        Ok(PublicKey { field, base, n, k, t, twist_degree, hook, h_pub })
    }
}

impl SecretKey {
    pub fn to_text(&self) -> String {
        let spec = self.params.field.as_ref();
        let mut kf = KeyFile::new(SECRET_HEADER);
        kf.set("rng", RNG_ID);
        kf.set("seed", self.seed);
        kf.set("field", spec.to_text());
        kf.set("n", self.params.n());
        kf.set("k", self.code().k());
        kf.set("t", self.params.t());
        let pk = self.public_key();
        kf.set("twist", format!("{} {}", pk.twist_degree, pk.hook));
        kf.add_section("params", self.params.to_text());
        kf.add_section("scramble", self.scramble.to_text(spec));
        let perm: Vec<String> = self.perm.iter().map(|p| p.to_string()).collect();
        kf.add_section("perm", perm.join(" "));
        kf.to_text()
    }

    pub fn from_text(text: &str) -> Result<SecretKey, PkcError> {
        let kf = KeyFile::parse(text, SECRET_HEADER)?;
        check_rng(&kf)?;
        let seed = kf.get_u64("seed")?;
        let params = MtgParams::from_text(kf.section("params")?)?;
        let scramble = FMatrix::from_text(kf.section("scramble")?, &params.field, params.base)?;
        let perm = kf
            .section("perm")?
            .split_whitespace()
            .map(|s| s.parse::<usize>().map_err(|_| ferr(format!("bad perm entry {s}"))))
            .collect::<Result<Vec<_>, _>>()?;
        let sk = SecretKey::from_parts(params, scramble, perm, seed)?;
        let pk = sk.public_key();
        let header_ok = kf.get("field")? == sk.params.field.to_text()
            && kf.get_usize("n")? == sk.params.n()
            && kf.get_usize("k")? == sk.code().k()
            && kf.get_usize("t")? == sk.params.t()
            && parse_twist(kf.get("twist")?)? == (pk.twist_degree, pk.hook);
        if !header_ok {
            return Err(ferr("secret key header disagrees with [params]"));
        }
        Ok(sk)
    }
}

/// One line of symbols.
pub fn ciphertext_to_text(c: &[Felt], spec: &FieldSpec) -> String {
    let parts: Vec<String> = c.iter().map(|&x| spec.format(x)).collect();
    parts.join(" ") + "\n"
}

pub fn ciphertext_from_text(text: &str, spec: &FieldSpec, level: usize) -> Result<Vec<Felt>, PkcError> {
    text.split_whitespace().map(|s| spec.parse(s, level).map_err(|e| ferr(e.to_string()))).collect()
}
