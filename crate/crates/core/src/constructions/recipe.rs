//! Line-oriented construction recipes.
//!
//! ```text
//! # comments run to the end of the line
//! a = ci r=3 style=monomial
//! b = apolar x1^2 + x2^2 + x3^2
//! tensor a (apolar-generic 4 2)
//! embed 8
//! link-general 2 2 2 2 2 2 2 2
//! ```
//!
//! Each line is `[name =] step`; `_` names the previous result and parenthesized
//! steps may appear wherever an operand is expected. Steps:
//!
//! | step | result |
//! |---|---|
//! | `ci r=N [style=monomial\|random] [seed=S]` | quadric complete intersection |
//! | `apolar [vars=N] F` | apolar ideal of the dual form `F` |
//! | `apolar-generic N E` | apolar ideal of a random form of degree `E` in `N` variables |
//! | `apolar-squares N` | apolar ideal of `y1^2 + ... + yN^2` |
//! | `tensor A B` | tensor product |
//! | `group r=N i=K` | group table algebra |
//! | `embed N [A]` | add the variables up to `xN` as generators |
//! | `link-general D1 ... Dr [A]` | link by a general complete intersection of those degrees |
//! | `link ci=PATH [A]` | link by the generators listed in a file |
//! | `cut [A]` | Gorenstein cut to `(1,r,1)` |
//! | `colon F` | colon of the previous result by the form `F` |
//! | `load PATH` | read an ideal file |
//!
//! Random choices in step `k` of line `n` use `seed + (n << 16) + k`.

use std::collections::HashMap;
use std::path::{Path, PathBuf};

use crate::algebra::{max_var_index, parse_poly_at, Field, PolyRing};
use crate::error::{Error, Result};
use crate::ideal::{Ideal, RingHeader};
use crate::ideal_ops::colon_form;

use super::{
    apolar_ideal, embed, gorenstein_cut, group_table_algebra, link, link_general, quadric_ci,
    tensor_algebras, CiStyle, DualForm, LinkStep,
};

struct Runner<K: Field> {
    field: K,
    seed: u64,
    base_dir: Option<PathBuf>,
    env: HashMap<String, Ideal<K>>,
    prev: Option<Ideal<K>>,
    line: usize,
    counter: u64,
}

fn is_ident(s: &str) -> bool {
    let mut chars = s.chars();
    matches!(chars.next(), Some(c) if c.is_ascii_alphabetic() || c == '_')
        && chars.all(|c| c.is_ascii_alphanumeric() || c == '_')
}

/// Splits on top-level whitespace, keeping parenthesized groups whole.
fn split_top(s: &str) -> std::result::Result<Vec<String>, String> {
    let mut out = Vec::new();
    let mut cur = String::new();
    let mut depth = 0i32;
    for c in s.chars() {
        match c {
            '(' => {
                depth += 1;
                cur.push(c);
            }
            ')' => {
                depth -= 1;
                if depth < 0 {
                    return Err("unbalanced ')'".into());
                }
                cur.push(c);
            }
            c if c.is_whitespace() && depth == 0 => {
                if !cur.is_empty() {
                    out.push(std::mem::take(&mut cur));
                }
            }
            c => cur.push(c),
        }
    }
    if depth != 0 {
        return Err("unbalanced '('".into());
    }
    if !cur.is_empty() {
        out.push(cur);
    }
    Ok(out)
}

impl<K: Field> Runner<K> {
    fn err(&self, message: impl Into<String>) -> Error {
        Error::Recipe {
            line: self.line,
            message: message.into(),
        }
    }

    fn wrap(&self, e: Error) -> Error {
        match e {
            Error::Parse { .. } | Error::Recipe { .. } => e,
            other => self.err(other.to_string()),
        }
    }

    fn step_seed(&mut self) -> u64 {
        self.counter += 1;
        self.seed
            .wrapping_add((self.line as u64) << 16)
            .wrapping_add(self.counter)
    }

    fn previous(&self) -> Result<Ideal<K>> {
        self.prev.clone().ok_or_else(|| self.err("no previous result for '_'"))
    }

    fn operand(&mut self, tok: &str) -> Result<Ideal<K>> {
        if let Some(inner) = tok.strip_prefix('(').and_then(|t| t.strip_suffix(')')) {
            return self.eval(inner);
        }
        if tok == "_" {
            return self.previous();
        }
        self.env
            .get(tok)
            .cloned()
            .ok_or_else(|| self.err(format!("unknown name '{tok}'")))
    }

    fn optional_operand(&mut self, toks: &[String]) -> Result<Ideal<K>> {
        match toks {
            [] => self.previous(),
            [t] => self.operand(t),
            _ => Err(self.err("too many operands")),
        }
    }

    fn number<T: std::str::FromStr>(&self, s: &str, what: &str) -> Result<T> {
        s.parse().map_err(|_| self.err(format!("expected a number for {what}, got '{s}'")))
    }

    fn options(&self, toks: &[String]) -> Result<HashMap<String, String>> {
        let mut out = HashMap::new();
        for t in toks {
            let Some((k, v)) = t.split_once('=') else {
                return Err(self.err(format!("expected key=value, got '{t}'")));
            };
            out.insert(k.to_string(), v.to_string());
        }
        Ok(out)
    }

    fn path(&self, p: &str) -> PathBuf {
        match &self.base_dir {
            Some(dir) if Path::new(p).is_relative() => dir.join(p),
            _ => PathBuf::from(p),
        }
    }

    fn eval(&mut self, src: &str) -> Result<Ideal<K>> {
        let src = src.trim();
        let (head, rest) = match src.split_once(char::is_whitespace) {
            Some((h, r)) => (h, r.trim()),
            None => (src, ""),
        };
        let toks = split_top(rest).map_err(|m| self.err(m))?;
        match head {
            "ci" => {
                let opts = self.options(&toks)?;
                let r: usize = self.number(opts.get("r").ok_or_else(|| self.err("ci needs r="))?, "r")?;
                let style = match opts.get("style").map(String::as_str) {
                    None | Some("monomial") => CiStyle::Monomial,
                    Some("random") => {
                        let seed = match opts.get("seed") {
                            Some(s) => self.number(s, "seed")?,
                            None => self.step_seed(),
                        };
                        CiStyle::Random(seed)
                    }
                    Some(other) => return Err(self.err(format!("unknown style '{other}'"))),
                };
                quadric_ci(&self.field, r, style).map_err(|e| self.wrap(e))
            }
            "apolar" => {
                let (vars, text) = match rest.strip_prefix("vars=") {
                    Some(t) => {
                        let (n, poly) = t.split_once(char::is_whitespace).unwrap_or((t, ""));
                        (Some(self.number::<usize>(n, "vars")?), poly)
                    }
                    None => (None, rest),
                };
                let n = vars.unwrap_or_else(|| max_var_index(text)).max(1);
                let ring = PolyRing::graded(n, self.field.clone()).map_err(|e| self.wrap(e))?;
                let poly = parse_poly_at(&ring, text, self.line)?;
                let form = DualForm::new(poly).map_err(|e| self.wrap(e))?;
                apolar_ideal(&form).map_err(|e| self.wrap(e))
            }
            "apolar-generic" => {
                let [n, e] = toks.as_slice() else {
                    return Err(self.err("usage: apolar-generic N E"));
                };
                let n: usize = self.number(n, "N")?;
                let e: u32 = self.number(e, "E")?;
                let seed = self.step_seed();
                let form = DualForm::generic(&self.field, n, e, seed).map_err(|e| self.wrap(e))?;
                Ok(apolar_ideal(&form).map_err(|e| self.wrap(e))?.with_meta("seed", seed))
            }
            "apolar-squares" => {
                let [n] = toks.as_slice() else {
                    return Err(self.err("usage: apolar-squares N"));
                };
                let n: usize = self.number(n, "N")?;
                let form = DualForm::sum_of_squares(&self.field, n).map_err(|e| self.wrap(e))?;
                apolar_ideal(&form).map_err(|e| self.wrap(e))
            }
            "tensor" => {
                let [a, b] = toks.as_slice() else {
                    return Err(self.err("usage: tensor A B"));
                };
                let a = self.operand(a)?;
                let b = self.operand(b)?;
                tensor_algebras(&a, &b).map_err(|e| self.wrap(e))
            }
            "group" => {
                let opts = self.options(&toks)?;
                let r: usize = self.number(opts.get("r").ok_or_else(|| self.err("group needs r="))?, "r")?;
                let i: usize = self.number(opts.get("i").ok_or_else(|| self.err("group needs i="))?, "i")?;
                group_table_algebra(&self.field, r, i).map_err(|e| self.wrap(e))
            }
            "embed" => {
                let Some((n, more)) = toks.split_first() else {
                    return Err(self.err("usage: embed N [A]"));
                };
                let n: usize = self.number(n, "N")?;
                let a = self.optional_operand(more)?;
                embed(&a, n).map_err(|e| self.wrap(e))
            }
            "link-general" => {
                let split = toks.iter().position(|t| t.parse::<u32>().is_err()).unwrap_or(toks.len());
                let degrees = toks[..split]
                    .iter()
                    .map(|t| self.number(t, "degree"))
                    .collect::<Result<Vec<u32>>>()?;
                let a = self.optional_operand(&toks[split..])?;
                let seed = self.step_seed();
                link_general(&a, &degrees, seed)
                    .and_then(|j| j.minimalize())
                    .map_err(|e| self.wrap(e))
            }
            "link" => {
                let Some((spec, more)) = toks.split_first() else {
                    return Err(self.err("usage: link ci=PATH [A]"));
                };
                let Some(p) = spec.strip_prefix("ci=") else {
                    return Err(self.err("usage: link ci=PATH [A]"));
                };
                let a = self.optional_operand(more)?;
                let path = self.path(p);
                let text = std::fs::read_to_string(&path)
                    .map_err(|e| self.err(format!("{}: {e}", path.display())))?;
                let ci = Ideal::parse(a.ring(), &text)?;
                let step = LinkStep {
                    ci_gens: ci.gens().to_vec(),
                    note: format!("from {}", path.display()),
                };
                link(&a, &step)
                    .and_then(|j| j.minimalize())
                    .map_err(|e| self.wrap(e))
            }
            "cut" => {
                let a = self.optional_operand(&toks)?;
                let seed = self.step_seed();
                gorenstein_cut(&a, seed).map_err(|e| self.wrap(e))
            }
            "colon" => {
                let a = self.previous()?;
                let f = parse_poly_at(a.ring(), rest, self.line)?;
                colon_form(&a, &f).map_err(|e| self.wrap(e))
            }
            "load" => {
                let [p] = toks.as_slice() else {
                    return Err(self.err("usage: load PATH"));
                };
                let path = self.path(p);
                let text = std::fs::read_to_string(&path)
                    .map_err(|e| self.err(format!("{}: {e}", path.display())))?;
                let n = RingHeader::read(&text).vars_or_scan(&text);
                let ring = PolyRing::graded(n, self.field.clone()).map_err(|e| self.wrap(e))?;
                Ideal::parse(&ring, &text)
            }
            t if t.starts_with('(') => self.operand(src),
            t if t == "_" || self.env.contains_key(t) => {
                if !rest.is_empty() {
                    return Err(self.err(format!("unexpected '{rest}'")));
                }
                self.operand(t)
            }
            other => Err(self.err(format!("unknown step '{other}'"))),
        }
    }
}

/// Runs a recipe and returns the result of its last step.
pub fn run_recipe<K: Field>(field: &K, text: &str, seed: u64, base_dir: Option<&Path>) -> Result<Ideal<K>> {
    let mut runner = Runner {
        field: field.clone(),
        seed,
        base_dir: base_dir.map(Path::to_path_buf),
        env: HashMap::new(),
        prev: None,
        line: 0,
        counter: 0,
    };
    for (i, raw) in text.lines().enumerate() {
        runner.line = i + 1;
        runner.counter = 0;
        let line = raw.split('#').next().unwrap_or("").trim();
        if line.is_empty() {
            continue;
        }
        let (name, expr) = match line.split_once('=') {
            Some((lhs, rhs)) if is_ident(lhs.trim()) => (Some(lhs.trim().to_string()), rhs),
            _ => (None, line),
        };
        let result = runner.eval(expr)?;
        if let Some(n) = name {
            runner.env.insert(n, result.clone());
        }
        runner.prev = Some(result);
    }
    let out = runner.prev.ok_or_else(|| Error::Recipe {
        line: 0,
        message: "empty recipe".into(),
    })?;
    Ok(out.with_meta("recipe-seed", seed))
}
