//! Command interpreter behind the `igc` binary.

use std::collections::HashMap;

use serde_json::{json, Value as Json};

use crate::error::{Error, Result};
use crate::free_lr::RelativeSpec;
use crate::groupoid::{self, Flavor};
use crate::parse::{is_bindable, parse_expr, Env, Value};
use crate::suite::{checks, CheckConfig};

/// Exit status when the verification suite reports a failing check.
pub const CHECK_FAILED: i32 = 3;

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, clap::ValueEnum)]
pub enum Format {
    #[default]
    Text,
    Json,
}

/// Result of one command.
#[derive(Clone, Debug, PartialEq)]
pub struct Output {
    pub text: String,
    pub json: Json,
    pub exit_code: i32,
}

impl Output {
    fn value(v: &Value) -> Self {
        Output {
            text: v.to_string(),
            json: v.to_json(),
            exit_code: 0,
        }
    }

    pub fn render(&self, format: Format) -> String {
        match format {
            Format::Text => self.text.clone(),
            Format::Json => self.json.to_string(),
        }
    }
}

pub struct Session {
    spec: RelativeSpec,
    bindings: HashMap<String, Value>,
    pub format: Format,
    pub seed: u64,
}

/// Split a command line on whitespace outside quotes and brackets.
pub fn tokenize(line: &str) -> Result<Vec<String>> {
    let mut out = Vec::new();
    let mut cur = String::new();
    let mut depth = 0i32;
    let mut quote: Option<char> = None;
    let mut started = false;
    for c in line.chars() {
        match quote {
            Some(q) if c == q => quote = None,
            Some(_) => cur.push(c),
            None => match c {
                '"' | '\'' => {
                    quote = Some(c);
                    started = true;
                }
                c if c.is_whitespace() && depth == 0 => {
                    if started {
                        out.push(std::mem::take(&mut cur));
                        started = false;
                    }
                }
                _ => {
                    match c {
                        '(' | '[' | '{' => depth += 1,
                        ')' | ']' | '}' => depth -= 1,
                        _ => {}
                    }
                    cur.push(c);
                    started = true;
                }
            },
        }
    }
    if quote.is_some() {
        return Err(Error::Usage("unterminated quote".into()));
    }
    if started {
        out.push(cur);
    }
    Ok(out)
}

fn parse_flavor(s: &str) -> Result<Flavor> {
    match s {
        "free" => Ok(Flavor::Free),
        "lie" => Ok(Flavor::Lie),
        _ => Err(Error::Usage(format!("expected `free` or `lie`, got `{s}`"))),
    }
}

fn parse_index(s: &str) -> Result<usize> {
    s.parse()
        .map_err(|_| Error::Usage(format!("expected a nonnegative integer, got `{s}`")))
}

/// `0,1,0` (adjacent generators, rightmost applied first) or `id`.
fn parse_word(s: &str) -> Result<Vec<usize>> {
    if s == "id" {
        return Ok(Vec::new());
    }
    s.split(',').map(|g| parse_index(g.trim())).collect()
}

fn want(args: &[String], n: usize, usage: &str) -> Result<()> {
    if args.len() == n {
        Ok(())
    } else {
        Err(Error::Usage(usage.to_string()))
    }
}

impl Session {
    pub fn new(spec: RelativeSpec) -> Self {
        Session {
            spec,
            bindings: HashMap::new(),
            format: Format::Text,
            seed: 0,
        }
    }

    pub fn spec(&self) -> &RelativeSpec {
        &self.spec
    }

    pub fn binding(&self, name: &str) -> Option<&Value> {
        self.bindings.get(name)
    }

    pub fn parse(&self, src: &str, line: usize) -> Result<Value> {
        let env = Env {
            spec: &self.spec,
            bindings: &self.bindings,
        };
        parse_expr(src, &env, line)
    }

    fn kfield(&self, src: &str, line: usize) -> Result<groupoid::KField> {
        self.parse(src, line)?.as_kfield(self.spec.dim())
    }

    /// Run one tokenized command.
    pub fn run(&mut self, tokens: &[String], line: usize) -> Result<Output> {
        let Some((cmd, args)) = tokens.split_first() else {
            return Err(Error::Usage("empty command".into()));
        };
        let n = self.spec.dim();
        let value = |v: Value| Ok(Output::value(&v));
        match cmd.as_str() {
            "bracket" => {
                want(args, 3, "bracket (free|lie) e1 e2")?;
                let a = self.parse(&args[1], line)?.as_free(n)?;
                let b = self.parse(&args[2], line)?.as_free(n)?;
                let r = match parse_flavor(&args[0])? {
                    Flavor::Free => self.spec.bracket(&a, &b)?,
                    Flavor::Lie => self.spec.lie_bracket(&a, &b)?,
                };
                value(Value::Free(r))
            }
            "act" => {
                want(args, 3, "act <word> (free|lie) e")?;
                let word = parse_word(&args[0])?;
                let flavor = parse_flavor(&args[1])?;
                let nu = self.kfield(&args[2], line)?;
                value(Value::KField(groupoid::act(&self.spec, &word, &nu, flavor)?))
            }
            "cup" | "compose" => {
                want(args, 2, &format!("{cmd} e1 e2"))?;
                let a = self.kfield(&args[0], line)?;
                let b = self.kfield(&args[1], line)?;
                let r = if cmd == "cup" {
                    groupoid::cup(&a, &b)?
                } else {
                    groupoid::compose(&a, &b)?
                };
                value(Value::KField(r))
            }
            "sdiff" => {
                want(args, 4, "sdiff e1 e2 i j")?;
                let a = self.kfield(&args[0], line)?;
                let b = self.kfield(&args[1], line)?;
                let (i, j) = (parse_index(&args[2])?, parse_index(&args[3])?);
                value(Value::KField(groupoid::strong_diff(&a, &b, i, j)?))
            }
            "face" => {
                want(args, 2, "face e i")?;
                let a = self.kfield(&args[0], line)?;
                value(Value::KField(groupoid::face(&a, parse_index(&args[1])?)?))
            }
            "homotopy" => {
                want(args, 3, "homotopy e i j")?;
                let a = self.kfield(&args[0], line)?;
                let (i, j) = (parse_index(&args[1])?, parse_index(&args[2])?);
                value(Value::KField(groupoid::homotopy(&self.spec, &a, i, j)?))
            }
            "trivial?" => {
                want(args, 1, "trivial? e")?;
                let a = self.kfield(&args[0], line)?;
                Ok(match groupoid::is_trivial_homotopy(&self.spec, &a)? {
                    None => Output {
                        text: "true".into(),
                        json: json!({"trivial": true}),
                        exit_code: 0,
                    },
                    Some(w) => Output {
                        text: format!("false  witness: {w}"),
                        json: json!({
                            "trivial": false,
                            "witness": {
                                "i": w.i,
                                "j": w.j,
                                "component": w.component.to_string(),
                                "left": w.left.to_string(),
                                "right": w.right.to_string(),
                            }
                        }),
                        exit_code: 0,
                    },
                })
            }
            "reduce" => {
                want(args, 1, "reduce e")?;
                let a = self.kfield(&args[0], line)?;
                value(Value::Polyvector(groupoid::reduce_to_polyvector(&self.spec, &a)?))
            }
            "schouten" | "wedge" => {
                want(args, 2, &format!("{cmd} p q"))?;
                let p = self.parse(&args[0], line)?.as_polyvector(n)?;
                let q = self.parse(&args[1], line)?.as_polyvector(n)?;
                let r = if cmd == "schouten" {
                    p.schouten(&q)?
                } else {
                    p.wedge(&q)?
                };
                value(Value::Polyvector(r))
            }
            "eval" => {
                want(args, 1, "eval e")?;
                value(self.parse(&args[0], line)?)
            }
            "let" => self.run_let(args, line),
            "check" => self.run_check(args),
            other => Err(Error::Usage(format!("unknown command `{other}`"))),
        }
    }

    fn run_let(&mut self, args: &[String], line: usize) -> Result<Output> {
        let joined = args.join(" ");
        let (name, src) = joined
            .split_once('=')
            .ok_or_else(|| Error::Usage("let id = expr".into()))?;
        let name = name.trim();
        if !is_bindable(name) {
            return Err(Error::Usage(format!("`{name}` cannot be bound")));
        }
        let v = self.parse(src.trim(), line)?;
        let out = Output {
            text: format!("{name} = {v}"),
            json: json!({"name": name, "value": v.to_json()}),
            exit_code: 0,
        };
        self.bindings.insert(name.to_string(), v);
        Ok(out)
    }

    fn run_check(&self, args: &[String]) -> Result<Output> {
        let mut cfg = CheckConfig {
            seed: self.seed,
            max_degree: self.spec.max_degree(),
            invert: None,
        };
        let mut it = args.iter();
        while let Some(flag) = it.next() {
            let val = it
                .next()
                .ok_or_else(|| Error::Usage(format!("`{flag}` needs a value")))?;
            match flag.as_str() {
                "--max-degree" => cfg.max_degree = parse_index(val)?,
                "--seed" => cfg.seed = val.parse().map_err(|_| Error::Usage(format!("bad seed `{val}`")))?,
                "--invert" => {
                    if !checks().iter().any(|c| c.name == val) {
                        return Err(Error::Usage(format!("no check named `{val}`")));
                    }
                    cfg.invert = Some(val.clone());
                }
                _ => return Err(Error::Usage(format!("unknown check option `{flag}`"))),
            }
        }
        if cfg.max_degree < 2 {
            return Err(Error::Usage("check needs --max-degree at least 2".into()));
        }
        let reports: Vec<_> = checks().iter().map(|c| c.run(&cfg)).collect();
        let failed = reports.iter().filter(|r| !r.passed()).count();
        let mut text: Vec<String> = reports.iter().map(|r| r.to_string()).collect();
        text.push(format!("{} of {} checks passed", reports.len() - failed, reports.len()));
        Ok(Output {
            text: text.join("\n"),
            json: json!({
                "seed": cfg.seed,
                "max_degree": cfg.max_degree,
                "passed": failed == 0,
                "checks": reports.iter().map(|r| r.to_json()).collect::<Vec<_>>(),
            }),
            exit_code: if failed == 0 { 0 } else { CHECK_FAILED },
        })
    }

    /// Run a script: one command per line, `#` starts a comment. Stops at the first error.
    pub fn run_script(&mut self, src: &str) -> (Vec<Output>, Option<Error>) {
        let mut outs = Vec::new();
        for (idx, raw) in src.lines().enumerate() {
            let line = raw.split('#').next().unwrap_or("").trim();
            if line.is_empty() {
                continue;
            }
            match tokenize(line).and_then(|t| self.run(&t, idx + 1)) {
                Ok(o) => outs.push(o),
                Err(e) => return (outs, Some(e)),
            }
        }
        (outs, None)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::chart::ChartSpec;

    fn session() -> Session {
        Session::new(RelativeSpec::free(ChartSpec::new(2, 4).unwrap()))
    }

    fn run(s: &mut Session, line: &str) -> Result<String> {
        Ok(s.run(&tokenize(line)?, 1)?.text)
    }

    #[test]
    fn tokenizer() {
        assert_eq!(
            tokenize(r#"cup "d0 + d1" field(2, {0}: d0)"#).unwrap(),
            vec!["cup", "d0 + d1", "field(2, {0}: d0)"]
        );
        assert_eq!(tokenize("eval ''").unwrap(), vec!["eval", ""]);
        assert!(tokenize("eval \"d0").is_err());
    }

    #[test]
    fn documented_commands() {
        let mut s = session();
        assert_eq!(run(&mut s, r#"bracket lie "d0" "x0*d1""#).unwrap(), "d1");
        assert_eq!(run(&mut s, r#"reduce "cup(d0, d1)""#).unwrap(), "d0 ^ d1");
        assert_eq!(
            run(&mut s, r#"trivial? "compose(d0, x0*d1)""#).unwrap(),
            "false  witness: (0,1,{0},{1})"
        );
        assert_eq!(run(&mut s, r#"trivial? "cup(d0, d1)""#).unwrap(), "true");
    }

    #[test]
    fn bindings_persist() {
        let mut s = session();
        assert_eq!(run(&mut s, "let a = x0*d1").unwrap(), "a = x0*d1");
        assert_eq!(run(&mut s, "bracket free d0 a").unwrap(), "x0*F[d0,d1] + d1");
        assert!(matches!(run(&mut s, "let d0 = d1"), Err(Error::Usage(_))));
        assert!(matches!(run(&mut s, "eval b"), Err(Error::UnknownIdentifier(_))));
    }

    #[test]
    fn operation_errors_surface() {
        let mut s = session();
        let e = run(&mut s, "reduce compose(d0,x0*d1)").unwrap_err();
        assert!(matches!(e, Error::NotClosed { .. }));
        assert_eq!(e.exit_code(), 2);
        assert!(matches!(run(&mut s, "frobnicate"), Err(Error::Usage(_))));
        assert!(matches!(run(&mut s, "act 0 sideways d0"), Err(Error::Usage(_))));
    }

    #[test]
    fn act_and_face() {
        let mut s = session();
        assert_eq!(
            run(&mut s, "act 0 lie cup(d0,d1)").unwrap(),
            run(&mut s, "eval field(2, {1}: d0, {0,1}: d1)").unwrap()
        );
        assert_eq!(run(&mut s, "act id free d0").unwrap(), "field(1, {0}: d0)");
        assert_eq!(run(&mut s, "face cup(d0,d1) 1").unwrap(), "field(1, {0}: d0)");
    }

    #[test]
    fn script_reports_line() {
        let mut s = session();
        let (outs, err) = s.run_script("let a = d0\n# comment\n\neval \"a +\"\n eval a");
        assert_eq!(outs.len(), 1);
        assert!(matches!(err, Some(Error::Parse { line: 4, .. })));
    }
}
