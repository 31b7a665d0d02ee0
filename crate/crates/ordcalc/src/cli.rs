//! Command-line front end.
//!
//! Settings are resolved as: command-line flag, then `ORDCALC_*` environment
//! variable, then the key=value config file, then the built-in default.

use std::cmp::Ordering;
use std::collections::HashMap;
use std::ffi::OsString;
use std::io::Write;
use std::path::{Path, PathBuf};

use clap::{Args, Parser, Subcommand};
use serde_json::{json, Value};

use crate::bar::{chi_bar, compare_bar, dom_ind_bar, fundseq_bar, ht, star_bar, valid_bar};
use crate::error::{OrdError, Result};
use crate::fundseq::{chi, dom_ind, fundseq, support, FsOutcome};
use crate::harness::{self, UniverseSpec};
use crate::iso::{f, g};
use crate::norms::{bracket_walk, cnorm, gnorm, hardy, norm_bar, walk_length, HardyBudget};
use crate::order::{compare_t, fixpoint_f, localization, star, valid_t};
use crate::term::{nat_to_term, parse, OrdTerm, SystemTag};

/// Exit status when a checked property has a counterexample.
pub const EXIT_PROPERTY: i32 = 4;
const EXIT_USAGE: i32 = 1;

const STACK_SIZE: usize = 256 << 20;

#[derive(Debug, Parser)]
#[command(name = "ordcalc", version, about = "Ordinal notation calculator and law checker")]
struct Cli {
    /// Read terms in (and report for) the simultaneous system.
    #[arg(long, global = true)]
    bar: bool,
    /// Emit one JSON object per result.
    #[arg(long, global = true)]
    json: bool,
    /// Print trailing finite parts as decimals.
    #[arg(long, global = true)]
    pretty: bool,
    /// key=value settings file (also ORDCALC_CONFIG).
    #[arg(long, global = true, value_name = "FILE")]
    config: Option<PathBuf>,
    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Debug, Subcommand)]
enum Cmd {
    /// Parse and normalize a term.
    Parse { term: String },
    /// Compare two terms.
    Cmp { a: String, b: String },
    /// Largest level-k collapse subterm.
    Star { term: String, k: u32 },
    /// Localization of a collapse term at its own level.
    Loc { term: String },
    /// Fixed-point predicate F_j(delta, eta).
    Fixp { delta: String, eta: String, j: u32 },
    /// Fundamental-sequence element term[zeta].
    Fs { term: String, zeta: String },
    /// Cofinality indicator chi_i.
    Chi { i: u32, term: String },
    /// Domain indicator.
    Dom { term: String },
    /// Support term of a collapse term.
    Support { term: String },
    /// Canonical norm.
    Norm { term: String },
    /// Number of [0] steps down to zero.
    Gnorm { term: String },
    /// Hardy function H_term(n).
    Hardy {
        term: String,
        n: u64,
        #[arg(long)]
        max_steps: Option<u64>,
        #[arg(long)]
        max_value: Option<u64>,
    },
    /// Bracket walk term[n:k].
    Walk { term: String, n: u64, k: u64 },
    /// Stepwise term to its simultaneous image.
    ToBar { term: String },
    /// Simultaneous term to its stepwise preimage.
    ToStep { term: String },
    /// Height of a simultaneous term.
    Ht { term: String },
    /// Run the property suite and print one JSON report per line.
    Check(CheckArgs),
}

#[derive(Debug, Args)]
struct CheckArgs {
    #[arg(long)]
    max_norm: Option<u64>,
    #[arg(long)]
    max_level: Option<u32>,
    #[arg(long)]
    n_cap: Option<u64>,
    /// Comma-separated property ids, or `all`.
    #[arg(long)]
    suite: Option<String>,
    /// List property ids and statements instead of running.
    #[arg(long)]
    list: bool,
}

/// Layered settings lookup.
struct Settings {
    file: HashMap<String, String>,
    env: HashMap<String, String>,
}

impl Settings {
    fn load(path: Option<&Path>, env: HashMap<String, String>) -> std::result::Result<Self, String> {
        let path = path.map(Path::to_path_buf).or_else(|| env.get("ORDCALC_CONFIG").map(PathBuf::from));
        let mut file = HashMap::new();
        if let Some(p) = path {
            let text = std::fs::read_to_string(&p).map_err(|e| format!("cannot read {}: {e}", p.display()))?;
            for (no, line) in text.lines().enumerate() {
                let line = line.trim();
                if line.is_empty() || line.starts_with('#') {
                    continue;
                }
                let (k, v) = line
                    .split_once('=')
                    .ok_or_else(|| format!("{}:{}: expected key=value", p.display(), no + 1))?;
                file.insert(k.trim().to_string(), v.trim().to_string());
            }
        }
        Ok(Settings { file, env })
    }

    fn raw(&self, key: &str) -> Option<&String> {
        self.env.get(&format!("ORDCALC_{}", key.to_uppercase())).or_else(|| self.file.get(key))
    }

    fn get<T: std::str::FromStr>(&self, flag: Option<T>, key: &str, default: T) -> std::result::Result<T, String> {
        if let Some(v) = flag {
            return Ok(v);
        }
        match self.raw(key) {
            Some(s) => s.parse().map_err(|_| format!("bad value `{s}` for setting {key}")),
            None => Ok(default),
        }
    }
}

/// Runs the tool with the process environment and standard streams.
pub fn run<I, T>(args: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let env: HashMap<String, String> = std::env::vars().collect();
    let args: Vec<OsString> = args.into_iter().map(Into::into).collect();
    // deep terms recurse deeply; give the work a roomy stack
    let worker = std::thread::Builder::new().stack_size(STACK_SIZE).spawn(move || {
        let (mut out, mut err) = (Vec::new(), Vec::new());
        let code = run_with(args, env, &mut out, &mut err);
        (code, out, err)
    });
    let (code, out, err) = worker.expect("spawn worker").join().expect("worker panicked");
    let _ = std::io::stdout().write_all(&out);
    let _ = std::io::stderr().write_all(&err);
    code
}

/// Runs the tool against explicit streams and environment.
pub fn run_with(
    args: Vec<OsString>,
    env: HashMap<String, String>,
    out: &mut dyn Write,
    err: &mut dyn Write,
) -> i32 {
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_USAGE } else { 0 };
            let text = e.render().to_string();
            let _ = if e.use_stderr() { write!(err, "{text}") } else { write!(out, "{text}") };
            return code;
        }
    };
    let settings = match Settings::load(cli.config.as_deref(), env) {
        Ok(s) => s,
        Err(msg) => {
            let _ = writeln!(err, "error: {msg}");
            return EXIT_USAGE;
        }
    };
    let ctx = Ctx { bar: cli.bar, json: cli.json, pretty: cli.pretty, settings };
    let result = match &cli.cmd {
        Cmd::Check(a) => return ctx.check(a, out, err),
        cmd => ctx.dispatch(cmd),
    };
    match result {
        Ok(Reply { text, json }) => {
            let _ = if ctx.json { writeln!(out, "{json}") } else { writeln!(out, "{text}") };
            0
        }
        Err(Failure::Usage(msg)) => {
            let _ = writeln!(err, "error: {msg}");
            EXIT_USAGE
        }
        Err(Failure::Ord(e)) => {
            if ctx.json {
                let _ = writeln!(out, "{}", json!({ "error": e.to_string(), "exit_code": e.exit_code() }));
            }
            let _ = writeln!(err, "error: {e}");
            e.exit_code()
        }
    }
}

enum Failure {
    Usage(String),
    Ord(OrdError),
}

impl From<OrdError> for Failure {
    fn from(e: OrdError) -> Self {
        Failure::Ord(e)
    }
}

struct Reply {
    text: String,
    json: Value,
}

struct Ctx {
    bar: bool,
    json: bool,
    pretty: bool,
    settings: Settings,
}

fn ord_symbol(o: Ordering) -> &'static str {
    match o {
        Ordering::Less => "<",
        Ordering::Equal => "=",
        Ordering::Greater => ">",
    }
}

impl Ctx {
    fn sys(&self) -> SystemTag {
        if self.bar {
            SystemTag::Simultaneous
        } else {
            SystemTag::Stepwise
        }
    }

    fn show(&self, a: &OrdTerm) -> String {
        if self.pretty {
            a.pretty()
        } else {
            a.to_string()
        }
    }

    fn term(&self, text: &str) -> Result<OrdTerm> {
        self.term_in(text, self.sys())
    }

    fn term_in(&self, text: &str, sys: SystemTag) -> Result<OrdTerm> {
        let a = parse(text, sys)?;
        let ok = match sys {
            SystemTag::Stepwise => valid_t(&a),
            SystemTag::Simultaneous => valid_bar(&a),
        };
        if ok {
            Ok(a)
        } else {
            Err(OrdError::Invalid(a.to_string()))
        }
    }

    fn term_reply(&self, input: &str, key: &str, v: &OrdTerm) -> Reply {
        let s = self.show(v);
        Reply { json: json!({ "input": input, key: s }), text: s }
    }

    fn budget(&self, steps: Option<u64>, value: Option<u64>) -> std::result::Result<HardyBudget, Failure> {
        let d = HardyBudget::default();
        Ok(HardyBudget {
            max_steps: self.settings.get(steps, "max_steps", d.max_steps).map_err(Failure::Usage)?,
            max_value: self.settings.get(value, "max_value", d.max_value).map_err(Failure::Usage)?,
        })
    }

    fn dispatch(&self, cmd: &Cmd) -> std::result::Result<Reply, Failure> {
        Ok(match cmd {
            Cmd::Parse { term } => {
                let a = self.term(term)?;
                let sys = a.system().unwrap_or(self.sys());
                Reply {
                    text: self.show(&a),
                    json: json!({
                        "input": term,
                        "term": a.to_string(),
                        "pretty": a.pretty(),
                        "system": sys.to_string(),
                        "cnorm": cnorm(&a),
                    }),
                }
            }
            Cmd::Cmp { a, b } => {
                let (x, y) = (self.term(a)?, self.term(b)?);
                let o = if self.bar { compare_bar(&x, &y)? } else { compare_t(&x, &y)? };
                let sym = ord_symbol(o);
                Reply { text: sym.to_string(), json: json!({ "a": a, "b": b, "result": sym }) }
            }
            Cmd::Star { term, k } => {
                let a = self.term(term)?;
                let s = if self.bar { star_bar(&a, *k) } else { star(&a, *k) };
                let mut r = self.term_reply(term, "result", &s);
                r.json["k"] = json!(k);
                r
            }
            Cmd::Loc { term } => {
                let a = self.term(term)?;
                let level = a.level().ok_or_else(|| OrdError::Domain(format!("{a} is not a collapse term")))?;
                let loc = localization(&a, level)?;
                let entries: Vec<String> = loc.entries.iter().map(|e| self.show(e)).collect();
                Reply {
                    text: entries.join("\n"),
                    json: json!({ "input": term, "level": level, "entries": entries }),
                }
            }
            Cmd::Fixp { delta, eta, j } => {
                let (d, e) = (self.term(delta)?, self.term(eta)?);
                let v = fixpoint_f(&d, &e, *j)?;
                Reply { text: v.to_string(), json: json!({ "delta": delta, "eta": eta, "j": j, "result": v }) }
            }
            Cmd::Fs { term, zeta } => {
                let a = self.term(term)?;
                let z = match zeta.trim().parse::<u64>() {
                    Ok(n) => nat_to_term(n, self.sys()),
                    Err(_) => self.term(zeta)?,
                };
                let o: FsOutcome = if self.bar { fundseq_bar(&a, &z)? } else { fundseq(&a, &z)? };
                let result = self.show(&o.value);
                Reply {
                    json: json!({
                        "input": term,
                        "zeta": zeta,
                        "clause": format!("{:?}", o.case.clause),
                        "support": self.show(&o.case.support),
                        "result": result,
                    }),
                    text: result,
                }
            }
            Cmd::Chi { i, term } => {
                let a = self.term(term)?;
                let v = if self.bar { chi_bar(*i, &a)? } else { chi(*i, &a)? };
                Reply { text: v.to_string(), json: json!({ "input": term, "i": i, "result": v }) }
            }
            Cmd::Dom { term } => {
                let a = self.term(term)?;
                let v = if self.bar { dom_ind_bar(&a)? } else { dom_ind(&a)? };
                Reply { text: v.to_string(), json: json!({ "input": term, "result": v }) }
            }
            Cmd::Support { term } => {
                let a = self.term(term)?;
                let s = if self.bar { f(&support(&g(&a)?)?)? } else { support(&a)? };
                self.term_reply(term, "result", &s)
            }
            Cmd::Norm { term } => {
                let a = self.term(term)?;
                let v = if self.bar { norm_bar(&a)? } else { cnorm(&a) };
                Reply { text: v.to_string(), json: json!({ "input": term, "result": v }) }
            }
            Cmd::Gnorm { term } => {
                let a = self.term(term)?;
                let v = gnorm(&a)?;
                Reply { text: v.to_string(), json: json!({ "input": term, "result": v }) }
            }
            Cmd::Hardy { term, n, max_steps, max_value } => {
                let a = self.stepwise(term)?;
                let budget = self.budget(*max_steps, *max_value)?;
                let v = hardy(&a, *n, budget)?;
                Reply { text: v.to_string(), json: json!({ "input": term, "n": n, "result": v }) }
            }
            Cmd::Walk { term, n, k } => {
                let a = self.stepwise(term)?;
                let budget = self.budget(None, None)?;
                if *k > n.saturating_add(budget.max_steps) {
                    return Err(OrdError::Budget { term: a.to_string(), n: *n, steps: budget.max_steps }.into());
                }
                let v = bracket_walk(&a, *n, *k)?;
                let mut r = self.term_reply(term, "result", &v);
                r.json["n"] = json!(n);
                r.json["k"] = json!(k);
                if v.is_zero() {
                    r.json["length"] = json!(walk_length(&a, *n, budget)?);
                }
                r
            }
            Cmd::ToBar { term } => {
                let a = self.term_in(term, SystemTag::Stepwise)?;
                let b = f(&a)?;
                Reply {
                    text: self.show(&b),
                    json: json!({ "stepwise": self.show(&a), "simultaneous": self.show(&b) }),
                }
            }
            Cmd::ToStep { term } => {
                let b = self.term_in(term, SystemTag::Simultaneous)?;
                let a = g(&b)?;
                Reply {
                    text: self.show(&a),
                    json: json!({ "stepwise": self.show(&a), "simultaneous": self.show(&b) }),
                }
            }
            Cmd::Ht { term } => {
                let b = self.term_in(term, SystemTag::Simultaneous)?;
                let v = ht(&b);
                Reply { text: v.to_string(), json: json!({ "input": term, "result": v }) }
            }
            Cmd::Check(_) => unreachable!("handled by check"),
        })
    }

    /// Hardy and walks take stepwise terms; `--bar` input goes through `g`.
    fn stepwise(&self, text: &str) -> Result<OrdTerm> {
        let a = self.term(text)?;
        if self.bar {
            g(&a)
        } else {
            Ok(a)
        }
    }

    fn check(&self, a: &CheckArgs, out: &mut dyn Write, err: &mut dyn Write) -> i32 {
        let usage = |err: &mut dyn Write, msg: String| {
            let _ = writeln!(err, "error: {msg}");
            EXIT_USAGE
        };
        if a.list {
            for p in harness::registry() {
                let _ = if self.json {
                    writeln!(out, "{}", json!({ "property_id": p.id, "statement": p.statement }))
                } else {
                    writeln!(out, "{:<26} {}", p.id, p.statement)
                };
            }
            return 0;
        }
        let s = &self.settings;
        let max_norm = match s.get(a.max_norm, "max_norm", harness::DEFAULT_MAX_NORM) {
            Ok(0) => return usage(err, "max_norm must be at least 1".into()),
            Ok(v) => v,
            Err(m) => return usage(err, m),
        };
        let max_level = match s.get(a.max_level, "max_level", harness::DEFAULT_MAX_LEVEL) {
            Ok(v) => v,
            Err(m) => return usage(err, m),
        };
        let n_cap = match s.get(a.n_cap, "n_cap", harness::DEFAULT_N_CAP) {
            Ok(v) => v,
            Err(m) => return usage(err, m),
        };
        let suite = a.suite.clone().or_else(|| s.raw("suite").cloned()).unwrap_or_else(|| "all".into());
        let ids: Vec<String> = suite.split(',').map(|x| x.trim().to_string()).filter(|x| !x.is_empty()).collect();
        let which = match harness::select(&ids) {
            Ok(w) => w,
            Err(m) => return usage(err, m),
        };
        let spec = UniverseSpec::new(self.sys(), max_norm, max_level);
        let mut code = 0;
        for r in harness::run_suite(&spec, &which, n_cap) {
            if !r.passed() {
                code = EXIT_PROPERTY;
            }
            let _ = writeln!(out, "{}", serde_json::to_string(&r).expect("report serializes"));
        }
        code
    }
}
