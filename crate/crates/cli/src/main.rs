use std::fs;
use std::io::{self, Read};
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};

use symlog_core::bridge::{big_t, context_e, context_f, term_e, term_f};
use symlog_core::lexer::ParseError;
use symlog_core::lmm::{parse_lmm_sequent, parse_lmm_term, typecheck_lmm, LmmSequent, LmmTerm, Sort};
use symlog_core::lmm_reduce::{normalize_lmm, LmmNormalization, LmmStrategy};
use symlog_core::sym::{parse_sym_context, parse_sym_term, typecheck_sym, SymContext, SymTerm};
use symlog_core::sym_reduce::{
    default_fuel, longest_reduction_betapi, normalize, NormalStatus, Normalization, SnStatus, Strategy,
    DEFAULT_BUDGET,
};
use symlog_core::testgen::{GenConfig, LmmGen, SymGen};
use symlog_core::verify::{run_suite, SuiteOptions, SUITES};

#[derive(Parser)]
#[command(name = "symlog", version, about = "Typecheck, reduce and translate terms of λSym and λ̄μμ̃*")]
struct Cli {
    /// Calculus of the input term.
    #[arg(long, value_enum, default_value_t = Calc::Sym, global = true)]
    calc: Calc,
    /// Typing context (λSym) or l-variable bindings (λ̄μμ̃*): `x:A, y:B`, or `@file`.
    #[arg(long, global = true)]
    ctx: Option<String>,
    /// r-variable bindings for λ̄μμ̃*: `al:A, be:B`, or `@file`.
    #[arg(long, global = true)]
    rctx: Option<String>,
    /// Emit JSON instead of text.
    #[arg(long, global = true)]
    json: bool,
    /// Require an explicit --seed for randomized commands.
    #[arg(long, global = true)]
    strict: bool,
    #[arg(long, global = true)]
    seed: Option<u64>,
    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Calc {
    Sym,
    Lmm,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Dir {
    E,
    F,
    #[value(name = "T")]
    T,
}

#[derive(Subcommand)]
enum Cmd {
    /// Parse and typecheck a term.
    Check {
        /// The term, `@file`, or `-` for stdin (the default).
        term: Option<String>,
    },
    /// Print a trace of at most `steps` reduction steps.
    Reduce {
        term: Option<String>,
        #[arg(long, default_value_t = 1)]
        steps: usize,
        /// lo | ri | random for λSym; mutilde | mu | random for λ̄μμ̃*.
        #[arg(long)]
        strategy: Option<String>,
    },
    /// Reduce to normal form and print the trace as JSON.
    Normalize {
        term: Option<String>,
        #[arg(long)]
        fuel: Option<usize>,
        #[arg(long)]
        strategy: Option<String>,
    },
    /// Translate between the calculi: `e` (λ̄μμ̃* to λSym), `f` (λSym to
    /// λ̄μμ̃*) or `T` (λ̄μμ̃* to λ̄μμ̃*).
    Translate {
        term: Option<String>,
        #[arg(long, value_enum)]
        dir: Dir,
    },
    /// Run a named property suite over generated samples.
    Verify {
        #[arg(long)]
        suite: String,
        #[arg(long, default_value_t = 100)]
        samples: usize,
        #[arg(long)]
        max_size: Option<usize>,
        #[arg(long)]
        fuel: Option<usize>,
        #[arg(long)]
        budget: Option<usize>,
    },
    /// Length of the longest βπ-reduction of a λSym term.
    Longest {
        term: Option<String>,
        #[arg(long, default_value_t = DEFAULT_BUDGET)]
        budget: usize,
    },
    /// Emit generated well-typed terms, one per line.
    Gen {
        #[arg(long, default_value_t = 10)]
        samples: usize,
        #[arg(long, default_value_t = 20)]
        max_size: usize,
    },
}

enum Failure {
    /// Bad input: usage, parse or type errors.
    Input(String),
    Verification,
    Exhausted,
}

type Outcome = Result<(), Failure>;

fn input(msg: impl Into<String>) -> Failure {
    Failure::Input(msg.into())
}

fn read_arg(arg: Option<&str>) -> Result<String, Failure> {
    match arg {
        None | Some("-") => {
            let mut s = String::new();
            io::stdin().read_to_string(&mut s).map_err(|e| input(format!("reading stdin: {e}")))?;
            Ok(s)
        }
        Some(a) => match a.strip_prefix('@') {
            Some(path) => fs::read_to_string(path).map_err(|e| input(format!("reading {path}: {e}"))),
            None => Ok(a.to_string()),
        },
    }
}

fn parse_error(what: &str, e: ParseError) -> Failure {
    input(format!("{what}:{e}"))
}

struct Session {
    cli_ctx: Option<String>,
    cli_rctx: Option<String>,
    json: bool,
}

impl Session {
    fn sym_ctx(&self) -> Result<SymContext, Failure> {
        let src = read_arg(Some(self.cli_ctx.as_deref().unwrap_or("")))?;
        parse_sym_context(&src).map_err(|e| parse_error("context", e))
    }

    fn lmm_seq(&self) -> Result<LmmSequent, Failure> {
        let gamma = read_arg(Some(self.cli_ctx.as_deref().unwrap_or("")))?;
        let delta = read_arg(Some(self.cli_rctx.as_deref().unwrap_or("")))?;
        let g = parse_lmm_sequent(&gamma, "").map_err(|e| parse_error("ctx", e))?;
        let d = parse_lmm_sequent("", &delta).map_err(|e| parse_error("rctx", e))?;
        Ok(LmmSequent {
            gamma: g.gamma,
            delta: d.delta,
        })
    }

    fn sym_input(&self, term: Option<&str>) -> Result<(SymContext, SymTerm), Failure> {
        let ctx = self.sym_ctx()?;
        let src = read_arg(term)?;
        let m = parse_sym_term(&src).map_err(|e| parse_error("term", e))?;
        typecheck_sym(&ctx, &m).map_err(|e| input(format!("type error: {e}")))?;
        Ok((ctx, m))
    }

    fn lmm_input(&self, term: Option<&str>) -> Result<(LmmSequent, LmmTerm), Failure> {
        let seq = self.lmm_seq()?;
        let src = read_arg(term)?;
        let u = parse_lmm_term(&src).map_err(|e| parse_error("term", e))?;
        typecheck_lmm(&seq, &u).map_err(|e| input(format!("type error: {e}")))?;
        Ok((seq, u))
    }
}

macro_rules! out {
    ($($arg:tt)*) => {{
        use std::io::Write;
        if writeln!(io::stdout(), $($arg)*).is_err() {
            std::process::exit(0);
        }
    }};
}

fn print_json(v: &Value) {
    out!("{}", serde_json::to_string_pretty(v).expect("JSON values serialize"));
}

fn sort_name(s: Sort) -> &'static str {
    match s {
        Sort::L => "l",
        Sort::R => "r",
        Sort::C => "c",
    }
}

fn check(s: &Session, calc: Calc, term: Option<&str>) -> Outcome {
    match calc {
        Calc::Sym => {
            let (ctx, m) = s.sym_input(term)?;
            let (ty, _) = typecheck_sym(&ctx, &m).expect("checked on input");
            if s.json {
                print_json(&json!({ "term": m.to_string(), "type": ty.to_string() }));
            } else {
                out!("{ty}");
            }
        }
        Calc::Lmm => {
            let (seq, u) = s.lmm_input(term)?;
            let ty = typecheck_lmm(&seq, &u).expect("checked on input");
            if s.json {
                let ty = ty.map(|t| t.to_string());
                print_json(&json!({ "term": u.to_string(), "sort": sort_name(u.sort()), "type": ty }));
            } else {
                match ty {
                    Some(t) => out!("{t}"),
                    None => out!("OK"),
                }
            }
        }
    }
    Ok(())
}

fn sym_strategy(name: Option<&str>, seed: u64) -> Result<Strategy, Failure> {
    let name = name.unwrap_or("lo");
    Strategy::parse(name, seed).ok_or_else(|| input(format!("unknown λSym strategy `{name}` (lo, ri, random)")))
}

fn lmm_strategy(name: Option<&str>, seed: u64) -> Result<LmmStrategy, Failure> {
    let name = name.unwrap_or("mutilde");
    LmmStrategy::parse(name, seed)
        .ok_or_else(|| input(format!("unknown λ̄μμ̃* strategy `{name}` (mutilde, mu, random)")))
}

fn print_sym_trace(n: &Normalization) {
    out!("{}", n.trace.start);
    for st in &n.trace.steps {
        out!("  --{}--> {}", st.occ, st.result);
    }
}

fn print_lmm_trace(n: &LmmNormalization) {
    out!("{}", n.trace.start);
    for st in &n.trace.steps {
        out!("  --{}--> {}", st.occ, st.result);
    }
}

fn reduce(s: &Session, calc: Calc, term: Option<&str>, steps: usize, strategy: Option<&str>, seed: u64) -> Outcome {
    match calc {
        Calc::Sym => {
            let (ctx, m) = s.sym_input(term)?;
            let st = sym_strategy(strategy, seed)?;
            let n = normalize(&m, Some(&ctx), st, steps).map_err(|e| input(e.to_string()))?;
            if s.json {
                print_json(&n.trace.to_json());
            } else {
                print_sym_trace(&n);
            }
        }
        Calc::Lmm => {
            let (_, u) = s.lmm_input(term)?;
            let st = lmm_strategy(strategy, seed)?;
            let n = normalize_lmm(&u, st, steps);
            if s.json {
                print_json(&n.trace.to_json());
            } else {
                print_lmm_trace(&n);
            }
        }
    }
    Ok(())
}

fn normalize_cmd(s: &Session, calc: Calc, term: Option<&str>, fuel: usize, strategy: Option<&str>, seed: u64) -> Outcome {
    let (exhausted, report) = match calc {
        Calc::Sym => {
            let (ctx, m) = s.sym_input(term)?;
            let st = sym_strategy(strategy, seed)?;
            let n = normalize(&m, Some(&ctx), st, fuel).map_err(|e| input(e.to_string()))?;
            let exhausted = n.status == NormalStatus::FuelExhausted;
            let v = json!({
                "status": if exhausted { "fuel-exhausted" } else { "normal" },
                "steps": n.trace.len(),
                "start": n.trace.start.to_string(),
                "normal_form": n.trace.end().to_string(),
                "trace": n.trace.to_json(),
            });
            (exhausted, v)
        }
        Calc::Lmm => {
            let (_, u) = s.lmm_input(term)?;
            let st = lmm_strategy(strategy, seed)?;
            let n = normalize_lmm(&u, st, fuel);
            let v = json!({
                "status": if n.exhausted { "fuel-exhausted" } else { "normal" },
                "steps": n.trace.len(),
                "start": n.trace.start.to_string(),
                "normal_form": n.trace.end().to_string(),
                "trace": n.trace.to_json(),
            });
            (n.exhausted, v)
        }
    };
    print_json(&report);
    if exhausted {
        Err(Failure::Exhausted)
    } else {
        Ok(())
    }
}

fn translate(s: &Session, term: Option<&str>, dir: Dir) -> Outcome {
    let bridge = |e: symlog_core::bridge::BridgeError| input(e.to_string());
    let (image, context) = match dir {
        Dir::E => {
            let (seq, u) = s.lmm_input(term)?;
            (term_e(&seq, &u).map_err(bridge)?.to_string(), context_e(&seq).map_err(bridge)?.to_string())
        }
        Dir::F => {
            let (ctx, m) = s.sym_input(term)?;
            (term_f(&ctx, &m).map_err(bridge)?.to_string(), context_f(&ctx).map_err(bridge)?.to_string())
        }
        Dir::T => {
            let (seq, u) = s.lmm_input(term)?;
            (big_t(&seq, &u).map_err(bridge)?.to_string(), context_f(&context_e(&seq).map_err(bridge)?).map_err(bridge)?.to_string())
        }
    };
    if s.json {
        print_json(&json!({ "term": image, "context": context }));
    } else {
        out!("{image}");
    }
    Ok(())
}

fn verify(s: &Session, suite: &str, samples: usize, seed: u64, opts: SuiteOptions) -> Outcome {
    let report = run_suite(suite, samples, seed, &opts)
        .map_err(|e| input(format!("{e}; known suites: {}", SUITES.join(", "))))?;
    if s.json {
        print_json(&report.to_json());
    } else {
        out!("{}", report.summary());
        for f in &report.failures {
            out!("  {f}");
        }
        out!("{}", if report.ok() { "PASS" } else { "FAIL" });
    }
    if report.ok() {
        Ok(())
    } else if report.exhausted == report.failures.len() {
        Err(Failure::Exhausted)
    } else {
        Err(Failure::Verification)
    }
}

fn longest(s: &Session, calc: Calc, term: Option<&str>, budget: usize) -> Outcome {
    if calc != Calc::Sym {
        return Err(input("longest is defined for λSym terms only"));
    }
    let (_, m) = s.sym_input(term)?;
    let r = longest_reduction_betapi(&m, budget);
    if s.json {
        print_json(&json!({
            "status": r.status.name(),
            "eta": r.eta,
            "cxty": r.cxty,
            "visited": r.visited,
            "witness": r.witness.as_ref().map(|t| t.to_json()),
        }));
    } else {
        match r.eta {
            Some(n) => out!("{n}"),
            None => out!("{}", r.status.name()),
        }
    }
    match r.status {
        SnStatus::Normalizing => Ok(()),
        SnStatus::FuelExhausted => Err(Failure::Exhausted),
        SnStatus::CycleFound => Err(Failure::Verification),
    }
}

fn gen(s: &Session, calc: Calc, samples: usize, max_size: usize, seed: u64) -> Outcome {
    if max_size == 0 {
        return Err(input("--max-size must be at least 1"));
    }
    let cfg = GenConfig::new(seed, max_size);
    match calc {
        Calc::Sym => {
            let mut g = SymGen::new(cfg);
            for _ in 0..samples {
                let (ctx, m, ty) = g.sample();
                if s.json {
                    out!("{}", json!({ "ctx": ctx.to_string(), "term": m.to_string(), "type": ty.to_string() }));
                } else {
                    out!("{m}");
                }
            }
        }
        Calc::Lmm => {
            let mut g = LmmGen::new(cfg);
            for _ in 0..samples {
                let (seq, u) = g.sample();
                if s.json {
                    let side = |m: &std::collections::BTreeMap<String, symlog_core::lmm::LmmType>| {
                        m.iter().map(|(x, a)| format!("{x}:{a}")).collect::<Vec<_>>().join(", ")
                    };
                    out!(
                        "{}",
                        json!({ "ctx": side(&seq.gamma), "rctx": side(&seq.delta), "term": u.to_string(), "sort": sort_name(u.sort()) })
                    );
                } else {
                    out!("{u}");
                }
            }
        }
    }
    Ok(())
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let s = Session {
        cli_ctx: cli.ctx.clone(),
        cli_rctx: cli.rctx.clone(),
        json: cli.json,
    };
    let needs_seed = match &cli.cmd {
        Cmd::Verify { samples, .. } | Cmd::Gen { samples, .. } => *samples > 0,
        Cmd::Reduce { strategy, .. } | Cmd::Normalize { strategy, .. } => strategy.as_deref() == Some("random"),
        _ => false,
    };
    let result = if cli.strict && needs_seed && cli.seed.is_none() {
        Err(input("--strict requires an explicit --seed for randomized commands"))
    } else {
        let seed = cli.seed.unwrap_or(0);
        match &cli.cmd {
            Cmd::Check { term } => check(&s, cli.calc, term.as_deref()),
            Cmd::Reduce { term, steps, strategy } => reduce(&s, cli.calc, term.as_deref(), *steps, strategy.as_deref(), seed),
            Cmd::Normalize { term, fuel, strategy } => {
                let fuel = fuel.unwrap_or_else(default_fuel);
                normalize_cmd(&s, cli.calc, term.as_deref(), fuel, strategy.as_deref(), seed)
            }
            Cmd::Translate { term, dir } => translate(&s, term.as_deref(), *dir),
            Cmd::Verify { suite, samples, max_size, fuel, budget } => {
                let opts = SuiteOptions {
                    max_size: *max_size,
                    fuel: *fuel,
                    budget: *budget,
                };
                verify(&s, suite, *samples, seed, opts)
            }
            Cmd::Longest { term, budget } => longest(&s, cli.calc, term.as_deref(), *budget),
            Cmd::Gen { samples, max_size } => gen(&s, cli.calc, *samples, *max_size, seed),
        }
    };
    match result {
        Ok(()) => ExitCode::SUCCESS,
        Err(Failure::Input(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(2)
        }
        Err(Failure::Verification) => ExitCode::from(1),
        Err(Failure::Exhausted) => {
            eprintln!("error: budget exhausted");
            ExitCode::from(3)
        }
    }
}
