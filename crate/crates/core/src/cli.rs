//! Command-line driver. Flags override values read from `--config`; every
//! command emits one JSON document carrying `"schema": 1`.

use std::path::PathBuf;

use clap::{Parser, ValueEnum};
use serde::{Deserialize, Serialize};
use serde_json::{json, Value};

use crate::bicharacter::ExpMatrix;
use crate::error::{Error, Result};
use crate::exchangesolver::{btilde_for_tau, d_per_index, quantum_matrix_btilde};
use crate::mutation::{mutate_seed, ExchangeMatrix, Seed};
use crate::orealgebra::{quantum_matrix_preset, PBWElement, Presentation};
use crate::primeseq::{chain_pairs, pi_f_data, rescale_generators, u_element, Rescaling};
use crate::schubertdata::{parse_word, verify_uw_compat, CartanData, WordData};
use crate::verify::{verify_presentation, verify_schubert, Report};
use crate::xicombinatorics::{gamma_seeds, one_based, verify_chain, TauFrame};

pub const SCHEMA: u32 = 1;

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Preset {
    QuantumMatrices,
    Schubert,
    Custom,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Command {
    Primes,
    Intervals,
    Bmatrix,
    Frames,
    Mutate,
    Chain,
    Schubert,
    Verify,
}

#[derive(Parser, Debug, Default)]
#[command(
    name = "qcluster",
    version,
    about = "Quantum cluster structures on iterated Ore extensions"
)]
pub struct Args {
    /// TOML file with the same keys as the flags below.
    #[arg(long)]
    pub config: Option<PathBuf>,
    #[arg(long, value_enum)]
    pub preset: Option<Preset>,
    #[arg(long)]
    pub m: Option<usize>,
    #[arg(long)]
    pub n: Option<usize>,
    /// Cartan type letter, A to G.
    #[arg(long = "type")]
    pub cartan_type: Option<char>,
    #[arg(long)]
    pub rank: Option<usize>,
    /// Reduced word, 1-based letters separated by commas.
    #[arg(long)]
    pub word: Option<String>,
    /// Presentation file for the custom preset.
    #[arg(long)]
    pub file: Option<PathBuf>,
    #[arg(long, value_enum)]
    pub cmd: Option<Command>,
    /// 1-based indices to mutate at, in order.
    #[arg(long, value_delimiter = ',')]
    pub mutations: Option<Vec<usize>>,
    #[arg(long)]
    pub out: Option<PathBuf>,
    #[arg(long)]
    pub seed: Option<u64>,
    #[arg(long)]
    pub jobs: Option<usize>,
}

/// A fully resolved run.
#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct RunConfig {
    pub preset: Option<Preset>,
    pub m: Option<usize>,
    pub n: Option<usize>,
    #[serde(rename = "type")]
    pub cartan_type: Option<char>,
    pub rank: Option<usize>,
    pub word: Option<String>,
    pub file: Option<PathBuf>,
    pub cmd: Option<Command>,
    #[serde(default)]
    pub mutations: Vec<usize>,
    pub out: Option<PathBuf>,
    #[serde(default)]
    pub seed: u64,
    pub jobs: Option<usize>,
}

impl RunConfig {
    pub fn from_args(args: &Args) -> Result<Self> {
        let mut c = match &args.config {
            Some(path) => {
                let text =
                    std::fs::read_to_string(path).map_err(|e| Error::Parse(format!("{}: {e}", path.display())))?;
                toml::from_str(&text).map_err(|e| Error::Parse(e.to_string()))?
            }
            None => RunConfig::default(),
        };
        macro_rules! over {
            ($($f:ident),*) => { $( if args.$f.is_some() { c.$f = args.$f.clone(); } )* };
        }
        over!(preset, m, n, cartan_type, rank, word, file, cmd, out, jobs);
        if let Some(v) = &args.mutations {
            c.mutations = v.clone();
        }
        if let Some(s) = args.seed {
            c.seed = s;
        }
        Ok(c)
    }
}

/// Exit status: 0 pass, 1 check failure, 2 input error.
pub fn exit_code(e: &Error) -> i32 {
    match e {
        Error::Check(_) | Error::Incompatible(_) | Error::InexactDivision(_) | Error::LinearSystem(_) => 1,
        _ => 2,
    }
}

enum Algebra {
    Matrices(usize, usize, Presentation),
    Custom(Presentation),
    Schubert(CartanData, Vec<usize>),
}

fn load(c: &RunConfig) -> Result<Algebra> {
    let need = |v: Option<usize>, what: &str| v.ok_or_else(|| Error::Parse(format!("--{what} is required")));
    match c.preset.ok_or_else(|| Error::Parse("--preset is required".into()))? {
        Preset::QuantumMatrices => {
            let (m, n) = (need(c.m, "m")?, need(c.n, "n")?);
            if m == 0 || n == 0 {
                return Err(Error::Parse("m and n must be positive".into()));
            }
            Ok(Algebra::Matrices(m, n, quantum_matrix_preset(m, n)?))
        }
        Preset::Custom => {
            let path = c
                .file
                .as_ref()
                .ok_or_else(|| Error::Parse("--file is required".into()))?;
            let text = std::fs::read_to_string(path).map_err(|e| Error::Parse(format!("{}: {e}", path.display())))?;
            Ok(Algebra::Custom(Presentation::from_toml(&text)?))
        }
        Preset::Schubert => {
            let t = c.cartan_type.ok_or_else(|| Error::Parse("--type is required".into()))?;
            let cd = CartanData::new(t, need(c.rank, "rank")?)?;
            let word = parse_word(
                c.word
                    .as_deref()
                    .ok_or_else(|| Error::Parse("--word is required".into()))?,
            )?;
            Ok(Algebra::Schubert(cd, word))
        }
    }
}

fn exp_json(m: &ExpMatrix) -> Value {
    json!(m
        .entries()
        .iter()
        .map(|r| r.iter().map(|x| x.to_string()).collect::<Vec<_>>())
        .collect::<Vec<_>>())
}

fn elem_json(p: &Presentation, a: &PBWElement) -> Value {
    json!({
        "terms": a.dump().into_iter().map(|(f, c)| json!([f, c])).collect::<Vec<_>>(),
        "text": p.render(a),
    })
}

fn bmatrix_json(b: &ExchangeMatrix) -> Value {
    json!({ "ex": one_based(&b.ex), "b": b.b })
}

fn opt_json(v: &[Option<usize>]) -> Value {
    json!(v.iter().map(|x| x.map(|k| k + 1)).collect::<Vec<_>>())
}

fn seed_json(p: &Presentation, s: &Seed<PBWElement>) -> Value {
    json!({
        "r": exp_json(&s.frame.r),
        "exchange": bmatrix_json(&s.b),
        "images": s.frame.images.iter().map(|a| elem_json(p, a)).collect::<Vec<_>>(),
    })
}

/// FNV-1a over the canonical JSON text of a seed.
fn seed_hash(v: &Value) -> String {
    let mut h: u64 = 0xcbf29ce484222325;
    for b in v.to_string().bytes() {
        h ^= u64::from(b);
        h = h.wrapping_mul(0x100000001b3);
    }
    format!("{h:016x}")
}

fn frame_json(p: &Presentation, f: &TauFrame, b: &ExchangeMatrix) -> Value {
    json!({
        "tau": one_based(&f.tau),
        "tau_bullet": one_based(&f.tau_bullet),
        "intervals": f.intervals.iter().map(|&(a, b)| [a + 1, b + 1]).collect::<Vec<_>>(),
        "r": exp_json(&f.r),
        "exchange": bmatrix_json(b),
        "images": f.images.iter().map(|a| elem_json(p, a)).collect::<Vec<_>>(),
    })
}

fn report_json(r: &Report) -> Value {
    json!({
        "passed": r.passed(),
        "checks": r.checks.iter().map(|c| json!({"name": c.name, "passed": c.passed, "detail": c.detail})).collect::<Vec<_>>(),
    })
}

fn initial_seed(resc: &Rescaling) -> Result<(Seed<PBWElement>, Vec<i64>)> {
    let p = &resc.presentation;
    let eta = &resc.primes.eta;
    let d = d_per_index(p, eta)?;
    let f = crate::xicombinatorics::frame_for_tau(p, &resc.intervals, &(0..p.n()).collect::<Vec<_>>())?;
    let b = btilde_for_tau(p, eta, &f, &d)?;
    Ok((Seed { frame: f.toric(), b }, d))
}

fn cmd_name(c: Command) -> String {
    serde_json::to_value(c)
        .ok()
        .and_then(|v| v.as_str().map(String::from))
        .unwrap_or_default()
}

/// Runs one command; the JSON is produced even when a check fails, in which
/// case the returned code is 1.
pub fn run(c: &RunConfig) -> Result<(i32, Value)> {
    let cmd = c.cmd.ok_or_else(|| Error::Parse("--cmd is required".into()))?;
    let alg = load(c)?;
    let mut out = json!({ "schema": SCHEMA, "command": cmd_name(cmd) });
    let mut code = 0;
    let (p, matrix) = match &alg {
        Algebra::Schubert(cd, word) => {
            let body = match cmd {
                Command::Schubert | Command::Bmatrix => {
                    let wd = WordData::new(cd, word)?;
                    let rep = verify_uw_compat(cd, word)?;
                    if !rep.passed() {
                        code = 1;
                    }
                    json!({
                        "type": cd.name,
                        "word": one_based(word),
                        "roots": wd.roots,
                        "exchange": bmatrix_json(&rep.btilde),
                        "r": exp_json(&rep.r),
                        "lambda": exp_json(&wd.lambda(cd)),
                        "report": {
                            "passed": rep.passed(),
                            "scalar_failures": rep.scalar_failures.iter().map(|&(k, l)| [k + 1, l + 1]).collect::<Vec<_>>(),
                            "grading_failures": one_based(&rep.grading_failures),
                            "skew_symmetrizable": rep.skew_symmetrizable,
                        },
                    })
                }
                Command::Verify => {
                    let rep = verify_schubert(cd, word);
                    if !rep.passed() {
                        code = 1;
                    }
                    report_json(&rep)
                }
                _ => return Err(Error::Parse(format!("{} needs an algebra preset", cmd_name(cmd)))),
            };
            out["result"] = body;
            return Ok((code, out));
        }
        Algebra::Matrices(m, n, p) => (p, Some((*m, *n))),
        Algebra::Custom(p) => (p, None),
    };
    if cmd == Command::Verify {
        let rep = verify_presentation(p, c.seed, matrix);
        out["result"] = report_json(&rep);
        return Ok((if rep.passed() { 0 } else { 1 }, out));
    }
    if cmd == Command::Schubert {
        return Err(Error::Parse("schubert needs --preset schubert".into()));
    }
    let resc = rescale_generators(p)?;
    let q = &resc.presentation;
    let eta = &resc.primes.eta;
    let body = match cmd {
        Command::Primes => json!({
            "n": q.n(),
            "labels": q.labels(),
            "gamma": resc.gamma.iter().map(|g| g.to_string()).collect::<Vec<_>>(),
            "eta": eta.eta,
            "p": opt_json(&eta.p),
            "s": opt_json(&eta.s),
            "rank": eta.rank(),
            "ebar": (0..q.n()).map(|k| eta.ebar(k)).collect::<Vec<_>>(),
            "y": resc.primes.y.iter().map(|a| elem_json(q, a)).collect::<Vec<_>>(),
            "ybar": resc.primes.ybar.iter().map(|a| elem_json(q, a)).collect::<Vec<_>>(),
            "c": resc.primes.c.iter().map(|c| c.as_ref().map(|a| elem_json(q, a))).collect::<Vec<_>>(),
        }),
        Command::Intervals => {
            let iv = &resc.intervals;
            let items = chain_pairs(eta)
                .into_iter()
                .map(|(i, m)| {
                    let top = eta.s_pow(i, m).expect("chain pair");
                    let (pi, f) = pi_f_data(q, iv, i, m)?;
                    Ok(json!({
                        "i": i + 1, "m": m, "top": top + 1,
                        "y": elem_json(q, &iv.y(i, top)?),
                        "u": elem_json(q, &u_element(q, iv, i, m)?),
                        "pi": pi.to_string(),
                        "f": f,
                    }))
                })
                .collect::<Result<Vec<_>>>()?;
            json!({ "intervals": items })
        }
        Command::Bmatrix => {
            let (seed, d) = initial_seed(&resc)?;
            let closed = matrix.map(|(m, n)| quantum_matrix_btilde(m, n) == seed.b);
            if closed == Some(false) {
                code = 1;
            }
            json!({ "ex": one_based(&seed.b.ex), "b": seed.b.b, "d": d, "closed_form_match": closed })
        }
        Command::Frames | Command::Chain => {
            let d = d_per_index(q, eta)?;
            let seeds = gamma_seeds(q, &resc.intervals, &d)?;
            if cmd == Command::Frames {
                json!({ "frames": seeds.iter().map(|(f, b)| frame_json(q, f, b)).collect::<Vec<_>>() })
            } else {
                match verify_chain(q, &seeds) {
                    Ok(steps) => json!({
                        "passed": true,
                        "steps": steps.iter().map(|s| json!({
                            "tau": one_based(&s.tau),
                            "next": one_based(&s.next),
                            "k": s.k + 1,
                            "mutated_at": s.mutated_at.map(|k| k + 1),
                        })).collect::<Vec<_>>(),
                    }),
                    Err(e) => {
                        code = exit_code(&e);
                        json!({ "passed": false, "error": e.to_string() })
                    }
                }
            }
        }
        Command::Mutate => {
            let (mut seed, _) = initial_seed(&resc)?;
            let mut trace = Vec::new();
            let start = seed_json(q, &seed);
            trace.push(json!({ "k": Value::Null, "hash": seed_hash(&start) }));
            for &k in &c.mutations {
                if k == 0 || k > q.n() {
                    return Err(Error::Parse(format!("mutation index {k} out of range")));
                }
                seed = mutate_seed(q, &seed, k - 1)?;
                trace.push(json!({ "k": k, "hash": seed_hash(&seed_json(q, &seed)) }));
            }
            json!({ "initial": start, "trace": trace, "final": seed_json(q, &seed) })
        }
        Command::Verify | Command::Schubert => unreachable!("handled above"),
    };
    out["result"] = body;
    Ok((code, out))
}

/// Parses flags, runs, writes the JSON and returns the process exit code.
pub fn main_with(args: Args) -> i32 {
    let cfg = match RunConfig::from_args(&args) {
        Ok(c) => c,
        Err(e) => {
            eprintln!("error: {e}");
            return 2;
        }
    };
    if let Some(j) = cfg.jobs {
        // Only the first pool configuration in a process takes effect.
        let _ = rayon::ThreadPoolBuilder::new().num_threads(j.max(1)).build_global();
    }
    let (code, value) = match run(&cfg) {
        Ok(x) => x,
        Err(e) => {
            eprintln!("error: {e}");
            let code = exit_code(&e);
            (code, json!({ "schema": SCHEMA, "error": e.to_string() }))
        }
    };
    let text = serde_json::to_string_pretty(&value).expect("json values serialize") + "\n";
    match &cfg.out {
        Some(path) => {
            if let Err(e) = std::fs::write(path, &text) {
                eprintln!("error: {}: {e}", path.display());
                return 2;
            }
        }
        None => print!("{text}"),
    }
    code
}
