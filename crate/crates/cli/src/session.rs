//! Session files:
//!
//! ```text
//! # Fermat cubic over F_2
//! p = 2
//! vars = x, y, z
//! modulus = x^3 + y^3 + z^3
//! ideal I = x, y
//! e_max = 5
//! ```

use std::sync::Arc;

use starchains::{ClosureConfig, Ideal, MonomialOrder, PolyRing, Polynomial, QuotientRing};

use crate::CliError;

/// One polynomial list entry with the column where it starts.
#[derive(Clone, Debug, PartialEq, Eq)]
struct Located {
    line: usize,
    col: usize,
    text: String,
}

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct Session {
    pub p: u64,
    pub variables: Vec<String>,
    modulus: Vec<Located>,
    ideals: Vec<(String, Vec<Located>)>,
    pub e_max: Option<u32>,
    pub e0_max: Option<u32>,
}

fn parse_error(line: usize, col: usize, msg: impl Into<String>) -> CliError {
    CliError::Parse(format!("line {line}, column {col}: {}", msg.into()))
}

fn is_name(s: &str) -> bool {
    let mut chars = s.chars();
    chars.next().is_some_and(|c| c.is_ascii_alphabetic() || c == '_')
        && chars.all(|c| c.is_ascii_alphanumeric() || c == '_')
}

/// Splits `a, b, c` keeping 1-based columns relative to the whole line.
fn split_list(line: usize, rhs: &str, offset: usize) -> Result<Vec<Located>, CliError> {
    let mut out = Vec::new();
    let mut start = 0;
    for piece in rhs.split(',') {
        let lead = piece.len() - piece.trim_start().len();
        let text = piece.trim();
        let col = offset + rhs[..start].chars().count() + piece[..lead].chars().count() + 1;
        if text.is_empty() {
            return Err(parse_error(line, col, "empty list entry"));
        }
        out.push(Located { line, col, text: text.to_string() });
        start += piece.len() + 1;
    }
    Ok(out)
}

fn parse_int<T: std::str::FromStr>(line: usize, col: usize, text: &str, what: &str) -> Result<T, CliError> {
    text.trim().parse().map_err(|_| parse_error(line, col, format!("{what} must be a non-negative integer")))
}

impl Session {
    pub fn parse(text: &str) -> Result<Self, CliError> {
        let mut s = Session::default();
        let mut seen_p = false;
        for (idx, raw) in text.lines().enumerate() {
            let line = idx + 1;
            let content = raw.split('#').next().unwrap_or("");
            if content.trim().is_empty() {
                continue;
            }
            let Some(eq) = content.find('=') else {
                let col = content.len() - content.trim_start().len() + 1;
                return Err(parse_error(line, col, "expected `key = value`"));
            };
            let lhs = content[..eq].trim();
            let rhs = &content[eq + 1..];
            let rhs_col = content[..eq + 1].chars().count();
            let value_col = rhs_col + rhs.chars().count() - rhs.trim_start().chars().count() + 1;
            let mut words = lhs.split_whitespace();
            match (words.next(), words.next(), words.next()) {
                (Some("p"), None, _) => {
                    s.p = parse_int(line, value_col, rhs, "p")?;
                    seen_p = true;
                }
                (Some("vars"), None, _) => {
                    let vars = split_list(line, rhs, rhs_col)?;
                    for v in &vars {
                        if !is_name(&v.text) {
                            return Err(parse_error(line, v.col, format!("`{}` is not a variable name", v.text)));
                        }
                    }
                    s.variables = vars.into_iter().map(|v| v.text).collect();
                }
                (Some("modulus"), None, _) => s.modulus = split_list(line, rhs, rhs_col)?,
                (Some("ideal"), Some(name), None) => {
                    if !is_name(name) {
                        return Err(parse_error(line, 7, format!("`{name}` is not an ideal name")));
                    }
                    if s.ideals.iter().any(|(n, _)| n == name) {
                        return Err(parse_error(line, 7, format!("ideal `{name}` defined twice")));
                    }
                    s.ideals.push((name.to_string(), split_list(line, rhs, rhs_col)?));
                }
                (Some("e_max"), None, _) => s.e_max = Some(parse_int(line, value_col, rhs, "e_max")?),
                (Some("e0_max"), None, _) => s.e0_max = Some(parse_int(line, value_col, rhs, "e0_max")?),
                _ => return Err(parse_error(line, 1, format!("unknown setting `{lhs}`"))),
            }
        }
        if !seen_p {
            return Err(CliError::Parse("missing `p = <prime>`".into()));
        }
        if s.variables.is_empty() {
            return Err(CliError::Parse("missing `vars = ...`".into()));
        }
        Ok(s)
    }

    pub fn ideal_names(&self) -> Vec<&str> {
        self.ideals.iter().map(|(n, _)| n.as_str()).collect()
    }

    /// Resolves the ring and every named ideal.
    pub fn build(&self) -> Result<Workspace, CliError> {
        let names: Vec<&str> = self.variables.iter().map(|s| s.as_str()).collect();
        let ambient = PolyRing::new(self.p, &names, MonomialOrder::Grevlex)?;
        let parse = |loc: &Located| -> Result<Polynomial, CliError> {
            ambient.parse(&loc.text).map_err(|e| match e {
                starchains::Error::Parse { pos, msg } => parse_error(loc.line, loc.col + pos, msg),
                starchains::Error::UnknownVariable(v) => parse_error(loc.line, loc.col, format!("unknown variable `{v}`")),
                other => other.into(),
            })
        };
        let modulus = self.modulus.iter().map(parse).collect::<Result<Vec<_>, _>>()?;
        let name = if modulus.is_empty() { "S".to_string() } else { "S/Q".to_string() };
        let ring = QuotientRing::new(&ambient, modulus, name)?;
        let mut ideals = Vec::new();
        for (n, gens) in &self.ideals {
            let polys = gens.iter().map(parse).collect::<Result<Vec<_>, _>>()?;
            if let Some(f) = polys.iter().find(|f| !f.is_homogeneous()) {
                return Err(CliError::Core(starchains::Error::NotHomogeneous(format!("generator {f} of ideal {n}"))));
            }
            ideals.push((n.clone(), Ideal::new(&ring, polys)?));
        }
        let mut cfg = ClosureConfig::default();
        if let Some(e) = self.e_max {
            cfg.e_max = e;
        }
        if let Some(e) = self.e0_max {
            cfg.e0_max = e;
        }
        cfg.validate()?;
        Ok(Workspace { ring, ideals, cfg, modulus_len: self.modulus.len() })
    }
}

/// A session resolved into ring elements.
#[derive(Debug)]
pub struct Workspace {
    pub ring: Arc<QuotientRing>,
    pub ideals: Vec<(String, Ideal)>,
    pub cfg: ClosureConfig,
    pub modulus_len: usize,
}

impl Workspace {
    pub fn ideal(&self, name: &str) -> Result<&Ideal, CliError> {
        self.ideals
            .iter()
            .find(|(n, _)| n == name)
            .map(|(_, i)| i)
            .ok_or_else(|| CliError::Usage(format!("no ideal named `{name}` in the session")))
    }

    pub fn parse_poly(&self, text: &str) -> Result<Polynomial, CliError> {
        self.ring.parse(text).map_err(|e| match e {
            starchains::Error::Parse { pos, msg } => CliError::Parse(format!("--f column {}: {msg}", pos + 1)),
            other => other.into(),
        })
    }
}
