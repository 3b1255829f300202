//! Job files.
//!
//! ```text
//! # comment
//! ring Q[x,y,z] params[t]        # or Fp(1048583)[x,y]
//! let I = <y*z, x*z, x*y>        # ideal; ⟨ ⟩ also accepted
//! let f = x^3 + y^3 + t*x*y      # polynomial
//! set seed 7                     # seed, trials, k, samples, max-degree, ...
//! cmd segre I
//! ```
//!
//! `let` may be omitted (`I = <x, y>`). Errors carry the 1-based line and
//! column of the offending character.

use std::sync::Arc;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::ideal::Ideal;
use crate::ring::{parse_polynomial_at, FieldSpec, PolyRing, Polynomial};

#[derive(Clone, Debug)]
pub enum Definition {
    Ideal(Vec<Polynomial>),
    Polynomial(Polynomial),
}

impl Definition {
    pub fn as_ideal(&self, ring: &Arc<PolyRing>) -> Ideal {
        match self {
            Definition::Ideal(gens) => Ideal::new(ring, gens.clone()),
            Definition::Polynomial(f) => Ideal::new(ring, vec![f.clone()]),
        }
    }

    /// A one-generator ideal also counts as a polynomial.
    pub fn as_polynomial(&self) -> Option<&Polynomial> {
        match self {
            Definition::Polynomial(f) => Some(f),
            Definition::Ideal(gens) if gens.len() == 1 => Some(&gens[0]),
            Definition::Ideal(_) => None,
        }
    }
}

impl Serialize for Definition {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        #[derive(Serialize)]
        #[serde(tag = "kind", rename_all = "snake_case")]
        enum Echo {
            Ideal { generators: Vec<String> },
            Polynomial { value: String },
        }
        let echo = match self {
            Definition::Ideal(gens) => Echo::Ideal {
                generators: gens.iter().map(Polynomial::to_string).collect(),
            },
            Definition::Polynomial(f) => Echo::Polynomial {
                value: f.to_string(),
            },
        };
        echo.serialize(s)
    }
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize)]
pub struct Settings {
    pub seed: Option<u64>,
    pub trials: Option<usize>,
    pub k: Option<usize>,
    pub samples: Option<String>,
    pub max_degree: Option<u32>,
    pub max_basis_size: Option<usize>,
    pub max_reductions: Option<u64>,
}

impl Settings {
    /// Fields set in `other` win.
    pub fn overridden_by(&self, other: &Settings) -> Settings {
        Settings {
            seed: other.seed.or(self.seed),
            trials: other.trials.or(self.trials),
            k: other.k.or(self.k),
            samples: other.samples.clone().or_else(|| self.samples.clone()),
            max_degree: other.max_degree.or(self.max_degree),
            max_basis_size: other.max_basis_size.or(self.max_basis_size),
            max_reductions: other.max_reductions.or(self.max_reductions),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CommandLine {
    pub name: String,
    pub args: Vec<String>,
    pub line: usize,
}

#[derive(Clone, Debug)]
pub struct JobSpec {
    pub ring: Arc<PolyRing>,
    /// The field named on the `ring` line, before any override.
    pub declared_field: FieldSpec,
    pub definitions: Vec<(String, Definition)>,
    pub command: Option<CommandLine>,
    pub settings: Settings,
}

impl JobSpec {
    pub fn get(&self, name: &str) -> Option<&Definition> {
        self.definitions
            .iter()
            .find(|(n, _)| n == name)
            .map(|(_, d)| d)
    }

    /// Parses `text`; with `field` set, polynomials are read over that field
    /// instead of the declared one.
    pub fn parse(text: &str, field: Option<FieldSpec>) -> Result<JobSpec> {
        let mut ring: Option<(Arc<PolyRing>, FieldSpec)> = None;
        let mut definitions: Vec<(String, Definition)> = Vec::new();
        let mut command = None;
        let mut settings = Settings::default();

        for (idx, raw) in text.lines().enumerate() {
            let line = idx + 1;
            let body = match raw.find('#') {
                Some(p) => &raw[..p],
                None => raw,
            };
            let mut cur = Cursor::new(body, line);
            cur.skip_ws();
            if cur.at_end() {
                continue;
            }
            let word_col = cur.column();
            let word = cur.ident().ok_or_else(|| cur.error("expected a statement"))?;
            match word.as_str() {
                "ring" => {
                    if ring.is_some() {
                        return Err(syntax(line, word_col, "ring declared twice"));
                    }
                    if !definitions.is_empty() {
                        return Err(syntax(line, word_col, "ring must precede definitions"));
                    }
                    let (declared, r) = parse_ring(&mut cur, field)?;
                    ring = Some((r, declared));
                }
                "set" => parse_setting(&mut cur, &mut settings)?,
                "cmd" => {
                    if command.is_some() {
                        return Err(syntax(line, word_col, "more than one cmd line"));
                    }
                    cur.skip_ws();
                    let name = cur
                        .word()
                        .ok_or_else(|| cur.error("expected a command name"))?;
                    let mut args = Vec::new();
                    loop {
                        cur.skip_ws();
                        if cur.at_end() {
                            break;
                        }
                        args.push(cur.ident().ok_or_else(|| cur.error("expected a name"))?);
                    }
                    command = Some(CommandLine { name, args, line });
                }
                _ => {
                    let (name, name_col) = if word == "let" {
                        cur.skip_ws();
                        let col = cur.column();
                        let n = cur.ident().ok_or_else(|| cur.error("expected a name"))?;
                        (n, col)
                    } else {
                        (word, word_col)
                    };
                    cur.skip_ws();
                    if !cur.eat('=') {
                        return Err(cur.error("expected `=`"));
                    }
                    let (r, _) = ring
                        .as_ref()
                        .ok_or_else(|| syntax(line, name_col, "definition before the ring line"))?;
                    if definitions.iter().any(|(n, _)| *n == name) {
                        return Err(syntax(line, name_col, &format!("`{name}` defined twice")));
                    }
                    if r.var_index(&name).is_some() {
                        return Err(syntax(
                            line,
                            name_col,
                            &format!("`{name}` is already a ring variable"),
                        ));
                    }
                    let def = parse_definition(&mut cur, r)?;
                    definitions.push((name, def));
                }
            }
        }

        let (ring, declared_field) =
            ring.ok_or_else(|| syntax(text.lines().count().max(1), 1, "missing ring line"))?;
        if let Some(c) = &command {
            for a in &c.args {
                if !definitions.iter().any(|(n, _)| n == a) {
                    return Err(syntax(c.line, 1, &format!("`{a}` is not defined")));
                }
            }
        }
        Ok(JobSpec {
            ring,
            declared_field,
            definitions,
            command,
            settings,
        })
    }
}

fn syntax(line: usize, column: usize, message: &str) -> Error {
    Error::Syntax {
        line,
        column,
        message: message.to_string(),
    }
}

struct Cursor<'a> {
    chars: Vec<(usize, char)>,
    text: &'a str,
    pos: usize,
    line: usize,
}

impl<'a> Cursor<'a> {
    fn new(text: &'a str, line: usize) -> Self {
        Cursor {
            chars: text.char_indices().collect(),
            text,
            pos: 0,
            line,
        }
    }

    fn column(&self) -> usize {
        self.pos + 1
    }

    fn error(&self, message: &str) -> Error {
        syntax(self.line, self.column(), message)
    }

    fn at_end(&self) -> bool {
        self.pos >= self.chars.len()
    }

    fn peek(&self) -> Option<char> {
        self.chars.get(self.pos).map(|&(_, c)| c)
    }

    fn skip_ws(&mut self) {
        while self.peek().is_some_and(char::is_whitespace) {
            self.pos += 1;
        }
    }

    fn eat(&mut self, c: char) -> bool {
        if self.peek() == Some(c) {
            self.pos += 1;
            true
        } else {
            false
        }
    }

    fn expect(&mut self, c: char) -> Result<()> {
        self.skip_ws();
        if self.eat(c) {
            Ok(())
        } else {
            Err(self.error(&format!("expected `{c}`")))
        }
    }

    fn ident(&mut self) -> Option<String> {
        let start = self.pos;
        match self.peek() {
            Some(c) if c.is_alphabetic() || c == '_' => self.pos += 1,
            _ => return None,
        }
        while self
            .peek()
            .is_some_and(|c| c.is_alphanumeric() || c == '_')
        {
            self.pos += 1;
        }
        Some(self.slice(start, self.pos).to_string())
    }

    /// A run of non-whitespace characters.
    fn word(&mut self) -> Option<String> {
        let start = self.pos;
        while self.peek().is_some_and(|c| !c.is_whitespace()) {
            self.pos += 1;
        }
        (self.pos > start).then(|| self.slice(start, self.pos).to_string())
    }

    fn number(&mut self) -> Result<u64> {
        self.skip_ws();
        let col = self.column();
        let start = self.pos;
        while self.peek().is_some_and(|c| c.is_ascii_digit()) {
            self.pos += 1;
        }
        self.slice(start, self.pos)
            .parse()
            .map_err(|_| syntax(self.line, col, "expected a non-negative integer"))
    }

    fn slice(&self, from: usize, to: usize) -> &'a str {
        let a = self.byte(from);
        let b = self.byte(to);
        &self.text[a..b]
    }

    fn byte(&self, pos: usize) -> usize {
        self.chars.get(pos).map_or(self.text.len(), |&(b, _)| b)
    }

    fn rest(&self) -> &'a str {
        &self.text[self.byte(self.pos)..]
    }

    fn finish(&mut self) -> Result<()> {
        self.skip_ws();
        if self.at_end() {
            Ok(())
        } else {
            Err(self.error("unexpected trailing input"))
        }
    }

    fn name_list(&mut self) -> Result<Vec<String>> {
        self.expect('[')?;
        let mut names = Vec::new();
        self.skip_ws();
        if self.eat(']') {
            return Ok(names);
        }
        loop {
            self.skip_ws();
            names.push(self.ident().ok_or_else(|| self.error("expected a variable name"))?);
            self.skip_ws();
            if self.eat(']') {
                return Ok(names);
            }
            if !self.eat(',') {
                return Err(self.error("expected `,` or `]`"));
            }
        }
    }
}

fn parse_ring(cur: &mut Cursor, field: Option<FieldSpec>) -> Result<(FieldSpec, Arc<PolyRing>)> {
    cur.skip_ws();
    let col = cur.column();
    let name = cur.ident().ok_or_else(|| cur.error("expected a field"))?;
    let declared = match name.as_str() {
        "Q" | "QQ" => FieldSpec::Rationals,
        "Fp" | "GF" => {
            cur.expect('(')?;
            let p = cur.number()?;
            cur.expect(')')?;
            FieldSpec::prime_field(p).map_err(|e| syntax(cur.line, col, &e.to_string()))?
        }
        other => return Err(syntax(cur.line, col, &format!("unknown field `{other}`"))),
    };
    let vars_col = cur.column();
    let vars = cur.name_list()?;
    if vars.is_empty() {
        return Err(syntax(cur.line, vars_col, "a ring needs at least one variable"));
    }
    cur.skip_ws();
    let mut params = Vec::new();
    if !cur.at_end() {
        let col = cur.column();
        match cur.ident().as_deref() {
            Some("params") => params = cur.name_list()?,
            _ => return Err(syntax(cur.line, col, "expected `params[...]`")),
        }
    }
    cur.finish()?;
    let ring = PolyRing::with_params(&vars, &params, field.unwrap_or(declared))
        .map_err(|e| syntax(cur.line, vars_col, &e.to_string()))?;
    Ok((declared, ring))
}

fn parse_setting(cur: &mut Cursor, settings: &mut Settings) -> Result<()> {
    cur.skip_ws();
    let col = cur.column();
    let key = cur.word().ok_or_else(|| cur.error("expected a setting name"))?;
    match key.as_str() {
        "seed" => settings.seed = Some(cur.number()?),
        "trials" => {
            cur.skip_ws();
            let c = cur.column();
            let t = cur.number()?;
            if t == 0 {
                return Err(syntax(cur.line, c, "trials must be at least 1"));
            }
            settings.trials = Some(t as usize);
        }
        "k" => settings.k = Some(cur.number()? as usize),
        "max-degree" => settings.max_degree = Some(cur.number()? as u32),
        "max-basis-size" => settings.max_basis_size = Some(cur.number()? as usize),
        "max-reductions" => settings.max_reductions = Some(cur.number()?),
        "samples" => {
            cur.skip_ws();
            let rest = cur.rest().trim();
            if rest.is_empty() {
                return Err(cur.error("expected samples such as `t=0;t=1`"));
            }
            settings.samples = Some(rest.to_string());
            cur.pos = cur.chars.len();
        }
        other => return Err(syntax(cur.line, col, &format!("unknown setting `{other}`"))),
    }
    cur.finish()
}

fn parse_definition(cur: &mut Cursor, ring: &Arc<PolyRing>) -> Result<Definition> {
    cur.skip_ws();
    let close = match cur.peek() {
        Some('<') => '>',
        Some('⟨') => '⟩',
        _ => {
            let col = cur.column();
            let text = cur.rest();
            if text.trim().is_empty() {
                return Err(cur.error("expected an expression"));
            }
            return parse_polynomial_at(text, ring, cur.line, col).map(Definition::Polynomial);
        }
    };
    cur.pos += 1;
    let mut gens = Vec::new();
    let mut depth = 0usize;
    let mut start = cur.pos;
    loop {
        let Some(c) = cur.peek() else {
            return Err(cur.error(&format!("missing `{close}`")));
        };
        match c {
            '(' => depth += 1,
            ')' => depth = depth.saturating_sub(1),
            _ => {}
        }
        if depth == 0 && (c == ',' || c == close) {
            let piece = cur.slice(start, cur.pos);
            if !piece.trim().is_empty() {
                gens.push(parse_polynomial_at(piece, ring, cur.line, start + 1)?);
            } else if c == ',' || !gens.is_empty() {
                return Err(syntax(cur.line, start + 1, "empty generator"));
            }
            cur.pos += 1;
            if c == close {
                break;
            }
            start = cur.pos;
        } else {
            cur.pos += 1;
        }
    }
    cur.finish()?;
    Ok(Definition::Ideal(gens))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn err_pos(text: &str) -> (usize, usize) {
        match JobSpec::parse(text, None) {
            Err(Error::Syntax { line, column, .. }) => (line, column),
            Err(Error::UnknownVariable { line, column, .. }) => (line, column),
            other => panic!("expected a syntax error, got {other:?}"),
        }
    }

    #[test]
    fn full_job() {
        let job = JobSpec::parse(
            "# fixture\nring Q[x,y,z] params[t]\nlet I = <y*z, x*z, x*y>\nf = x^3 + t*y  # poly\n\
             set seed 9\nset samples t=0;t=1\ncmd segre I\n",
            None,
        )
        .unwrap();
        assert_eq!(job.ring.z_vars(), ["x", "y", "z"]);
        assert_eq!(job.ring.param_vars(), ["t"]);
        assert!(matches!(job.get("I"), Some(Definition::Ideal(g)) if g.len() == 3));
        assert!(matches!(job.get("f"), Some(Definition::Polynomial(_))));
        assert_eq!(job.settings.seed, Some(9));
        assert_eq!(job.settings.samples.as_deref(), Some("t=0;t=1"));
        let cmd = job.command.unwrap();
        assert_eq!((cmd.name.as_str(), cmd.args.as_slice()), ("segre", &["I".to_string()][..]));
    }

    #[test]
    fn angle_brackets_and_nesting() {
        let job = JobSpec::parse("ring Q[x,y]\nlet I = ⟨(x+y)^2, x*(y-1/2)⟩", None).unwrap();
        assert!(matches!(job.get("I"), Some(Definition::Ideal(g)) if g.len() == 2));
        let job = JobSpec::parse("ring Q[x,y]\nlet Z = <>", None).unwrap();
        assert!(matches!(job.get("Z"), Some(Definition::Ideal(g)) if g.is_empty()));
    }

    #[test]
    fn prime_field_and_override() {
        let job = JobSpec::parse("ring Fp(1048583)[x]\nlet f = x/2", None).unwrap();
        assert_eq!(job.ring.field(), FieldSpec::PrimeField { p: 1048583 });
        let q = JobSpec::parse("ring Q[x]\nlet f = x", Some(job.ring.field())).unwrap();
        assert_eq!(q.declared_field, FieldSpec::Rationals);
        assert_eq!(q.ring.field(), FieldSpec::PrimeField { p: 1048583 });
    }

    #[test]
    fn error_positions() {
        assert_eq!(err_pos("ring Q[x,y]\nlet I = <x, y^>"), (2, 15));
        assert_eq!(err_pos("ring Q[x,y]\nlet f = x + w"), (2, 13));
        assert_eq!(err_pos("ring Q[x,y]\nlet I = <x, y"), (2, 14));
        assert_eq!(err_pos("let I = <x>"), (1, 5));
        assert_eq!(err_pos("ring Q[x]\nlet f = x\nlet f = x^2"), (3, 5));
        assert_eq!(err_pos("ring R[x]"), (1, 6));
        assert_eq!(err_pos("ring Fp(65537)[x]"), (1, 6));
        assert_eq!(err_pos("ring Q[x]\ncmd segre I"), (2, 1));
        assert_eq!(err_pos("ring Q[x]\nset trials 0"), (2, 12));
        assert_eq!(err_pos("ring Q[x]\nfrobnicate"), (2, 11));
    }
}
