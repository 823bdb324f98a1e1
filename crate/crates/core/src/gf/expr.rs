//! Expression syntax for field elements: sums and products of integers and
//! generator names with `^` powers, implicit multiplication and parentheses,
//! e.g. `(a+1)b+a`, `a^3c+a^17`, `2z+1`.

use super::{FieldSpec, Felt, GfError};

struct Parser<'a> {
    spec: &'a FieldSpec,
    src: &'a str,
    chars: Vec<char>,
    pos: usize,
    level: usize,
}

impl<'a> Parser<'a> {
    fn err(&self, reason: &str) -> GfError {
        GfError::parse(self.src, format!("{reason} at offset {}", self.pos))
    }

    fn peek(&mut self) -> Option<char> {
        while self.chars.get(self.pos).is_some_and(|c| c.is_whitespace()) {
            self.pos += 1;
        }
        self.chars.get(self.pos).copied()
    }

    fn expr(&mut self) -> Result<Felt, GfError> {
        let mut acc = Felt::zero(self.level);
        let mut negate = false;
        if self.peek() == Some('-') {
            self.pos += 1;
            negate = true;
        }
        loop {
            let t = self.term()?;
            acc = if negate { self.spec.sub(acc, t) } else { self.spec.add(acc, t) };
            match self.peek() {
                Some('+') => negate = false,
                Some('-') => negate = true,
                _ => return Ok(acc),
            }
            self.pos += 1;
        }
    }

    fn term(&mut self) -> Result<Felt, GfError> {
        let mut acc = self.factor()?;
        loop {
            match self.peek() {
                Some('*') => {
                    self.pos += 1;
                    let f = self.factor()?;
                    acc = self.spec.mul(acc, f);
                }
                Some(c) if c == '(' || c.is_ascii_alphanumeric() => {
                    let f = self.factor()?;
                    acc = self.spec.mul(acc, f);
                }
                _ => return Ok(acc),
            }
        }
    }

    fn number(&mut self) -> Result<u64, GfError> {
        let start = self.pos;
        while self.chars.get(self.pos).is_some_and(|c| c.is_ascii_digit()) {
            self.pos += 1;
        }
        let s: String = self.chars[start..self.pos].iter().collect();
        s.parse().map_err(|_| self.err("expected a number"))
    }

    fn factor(&mut self) -> Result<Felt, GfError> {
        let base = match self.peek() {
            Some('(') => {
                self.pos += 1;
                let e = self.expr()?;
                if self.peek() != Some(')') {
                    return Err(self.err("expected `)`"));
                }
                self.pos += 1;
                e
            }
            Some(c) if c.is_ascii_digit() => {
                let n = self.number()?;
                Felt::raw(self.level, n % self.spec.p)
            }
            Some(c) if c.is_alphabetic() => {
                self.pos += 1;
                let stage = (1..=self.spec.top())
                    .find(|&l| self.spec.name(l) == c)
                    .ok_or_else(|| self.err(&format!("unknown generator `{c}`")))?;
                if stage > self.level {
                    return Err(self.err(&format!("generator `{c}` is above the requested level")));
                }
                self.spec.generator(stage).at(self.level)
            }
            _ => return Err(self.err("expected a factor")),
        };
        if self.peek() == Some('^') {
            self.pos += 1;
            self.peek();
            let e = self.number()?;
            return Ok(self.spec.pow(base, e));
        }
        Ok(base)
    }
}

pub(super) fn parse_expr(spec: &FieldSpec, s: &str, level: usize) -> Result<Felt, GfError> {
    let mut p = Parser { spec, src: s, chars: s.chars().collect(), pos: 0, level };
    let v = p.expr()?;
    if p.peek().is_some() {
        return Err(p.err("trailing input"));
    }
    Ok(v.at(level))
}

pub(super) fn display(spec: &FieldSpec, x: Felt) -> String {
    let level = spec.min_level(x);
    if level == 0 {
        return x.value().to_string();
    }
    let name = spec.name(level);
    let coeffs = spec.coords(x.at(level), level - 1);
    let mut terms = Vec::new();
    for (k, c) in coeffs.iter().enumerate().rev() {
        if c.is_zero() {
            continue;
        }
        let mono = match k {
            0 => String::new(),
            1 => name.to_string(),
            _ => format!("{name}^{k}"),
        };
        let cs = display(spec, *c);
        terms.push(match (k, c.is_one()) {
            (0, _) => cs,
            (_, true) => mono,
            _ if cs.contains('+') => format!("({cs}){mono}"),
            _ => format!("{cs}{mono}"),
        });
    }
    if terms.is_empty() {
        "0".into()
    } else {
        terms.join("+")
    }
}
