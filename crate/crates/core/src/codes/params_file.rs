//! Text form of [`MtgParams`].
//!
//! ```text
//! FIELD 2 1,0,1,0,0,1 10000,10000,10000 names=ac
//! LEVELS q=0 s0=1
//! SUPPORT
//! 01 001 ...
//! GOPPA
//! 00011,0100,...
//! TWISTS
//! 1 1 0000000001
//! ```
//!
//! Elements may be digit strings or expressions in the generator names;
//! `#` starts a comment. Hooks are 0-based. Output always uses digit strings.

use std::sync::Arc;

use super::{CodeError, MtgParams, Twist};
use crate::gf::FieldSpec;
use crate::poly::Poly;

const SECTIONS: [&str; 5] = ["FIELD", "LEVELS", "SUPPORT", "GOPPA", "TWISTS"];

fn perr(msg: impl Into<String>) -> CodeError {
    CodeError::Parse(msg.into())
}

impl MtgParams {
    pub fn to_text(&self) -> String {
        let spec = &self.field;
        let mut out = format!("FIELD {}\nLEVELS q={} s0={}\nSUPPORT\n", spec.to_text(), self.base, self.s0);
        let support: Vec<String> = self.support.iter().map(|&a| spec.format(a)).collect();
        for chunk in support.chunks(8) {
            out.push_str(&chunk.join(" "));
            out.push('\n');
        }
        out.push_str("GOPPA\n");
        out.push_str(&self.goppa.to_text(spec));
        out.push_str("\nTWISTS\n");
        for tw in &self.twists {
            out.push_str(&format!("{} {} {}\n", tw.degree, tw.hook, spec.format(tw.eta)));
        }
        out
    }

    /// Parses and validates a parameter file.
    pub fn from_text(text: &str) -> Result<MtgParams, CodeError> {
        let mut sections: Vec<(&str, String)> = Vec::new();
        for raw in text.lines() {
            let line = raw.split('#').next().unwrap_or("").trim();
            if line.is_empty() {
                continue;
            }
            let head = line.split_whitespace().next().unwrap_or("");
            if SECTIONS.contains(&head) {
                if sections.iter().any(|(name, _)| *name == head) {
                    return Err(perr(format!("duplicate section {head}")));
                }
                sections.push((head, line[head.len()..].trim().to_string()));
            } else {
                let (_, body) = sections.last_mut().ok_or_else(|| perr(format!("content before any section: {line}")))?;
                body.push('\n');
                body.push_str(line);
            }
        }
        let get = |name: &str| sections.iter().find(|(n, _)| *n == name).map(|(_, b)| b.as_str());
        let field_text = get("FIELD").ok_or_else(|| perr("missing FIELD"))?;
        let field = Arc::new(FieldSpec::from_text(&field_text.replace('\n', " "))?);
        let top = field.top();

        let (mut base, mut s0) = (0, top);
        for tok in get("LEVELS").unwrap_or("").split_whitespace() {
            let (key, val) = tok.split_once('=').ok_or_else(|| perr(format!("bad LEVELS entry {tok}")))?;
            let val: usize = val.parse().map_err(|_| perr(format!("bad level {val}")))?;
            match key {
                "q" => base = val,
                "s0" => s0 = val,
                _ => return Err(perr(format!("unknown LEVELS key {key}"))),
            }
        }
        if base > top || s0 > top {
            return Err(perr("level index above the tower top"));
        }

        let support = get("SUPPORT")
            .ok_or_else(|| perr("missing SUPPORT"))?
            .split_whitespace()
            .map(|s| field.parse(s, top))
            .collect::<Result<Vec<_>, _>>()?;
        let goppa_text: String = get("GOPPA").ok_or_else(|| perr("missing GOPPA"))?.split_whitespace().collect();
        let goppa = Poly::parse(&goppa_text, &field, top)?;

        let mut twists = Vec::new();
        for line in get("TWISTS").unwrap_or("").lines().filter(|l| !l.trim().is_empty()) {
            let parts: Vec<&str> = line.split_whitespace().collect();
            if parts.len() < 3 {
                return Err(perr(format!("twist line needs t h eta: {line}")));
            }
            let degree = parts[0].parse().map_err(|_| perr(format!("bad twist degree {}", parts[0])))?;
            let hook = parts[1].parse().map_err(|_| perr(format!("bad hook {}", parts[1])))?;
            let eta = field.parse(&parts[2..].join(""), top)?;
            twists.push(Twist { degree, hook, eta });
        }
        let params = MtgParams { field, base, s0, support, goppa, twists };
        params.validate()?;
        Ok(params)
    }
}
