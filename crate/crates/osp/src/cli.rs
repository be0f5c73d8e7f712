use std::fmt::Write as _;
use std::path::PathBuf;

use anyhow::{anyhow, bail, Context, Result};
use clap::{Args, Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};

use osp_core::hooktab::{check_sst, genuine_hw, tableau_op, HookPartition, HookTableau, HookType};
use osp_core::pbwalg::verify::omega_check;
use osp_core::pbwalg::{Convention as PbwConvention, Pbw};
use osp_core::pvcrystal::{l_branching, PvCrystal, PvError, DEFAULT_VERTEX_CAP};
use osp_core::radcrystal::appendix::{verify_appendix, AppendixCase};
use osp_core::radcrystal::verify::verify_lattice;
use osp_core::radcrystal::RadCrystal;
use osp_core::superroot::{AlgebraType, Family, Root};

use crate::format::{array_from_json, array_to_json, element_from_json, element_to_json, graph_to_dot, graph_to_json, ArrayJson};

#[derive(Parser, Debug)]
#[command(name = "osp", version, about = "Exact PBW, shuffle and crystal computations for quantum orthosymplectic superalgebras")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,

    #[command(flatten)]
    pub opts: Opts,
}

#[derive(Args, Debug, Clone)]
pub struct Opts {
    /// Family of the superalgebra
    #[arg(long = "type", value_enum, global = true)]
    pub family: Option<FamilyArg>,
    #[arg(long, global = true)]
    pub m: Option<usize>,
    #[arg(long, global = true)]
    pub n: Option<usize>,
    /// Comma-separated hook partition, e.g. 5,3,3,2,2
    #[arg(long, global = true)]
    pub lambda: Option<String>,
    #[arg(long, global = true)]
    pub max_degree: Option<u32>,
    #[arg(long, value_enum, global = true, default_value = "json")]
    pub format: Format,
    /// Normalization of root vectors built on a non-isotropic odd root
    #[arg(long, value_enum, global = true, default_value = "bracket-default")]
    pub convention: Convention,
    /// Worker threads (default: all cores)
    #[arg(long, global = true)]
    pub threads: Option<usize>,
    /// Write the report here instead of stdout
    #[arg(long, global = true)]
    pub out: Option<PathBuf>,
}

#[derive(ValueEnum, Clone, Copy, Debug, PartialEq, Eq)]
pub enum FamilyArg {
    B,
    C,
    D,
}

#[derive(ValueEnum, Clone, Copy, Debug, PartialEq, Eq)]
pub enum Format {
    Json,
    Text,
    Dot,
}

#[derive(ValueEnum, Clone, Copy, Debug, PartialEq, Eq)]
pub enum Convention {
    BracketDefault,
    BracketOddBraces,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Radical roots in PBW order
    Roots,
    /// q-commutator table entries [F_β, F_α]
    Commutator {
        /// "i,j"; with --beta, a single pair
        #[arg(long)]
        alpha: Option<String>,
        #[arg(long)]
        beta: Option<String>,
    },
    /// Apply crystal operators, e.g. --ops "f1 f1 e3" or "f4^6"
    CrystalOp {
        #[arg(long)]
        ops: String,
        /// JSON element; defaults to the zero array (or 𝕆 ⊗ H_λ with --lambda)
        #[arg(long)]
        element: Option<String>,
    },
    /// SST_{m|n}(λ): size, genuine highest weight, sources; optional --ops on a tableau
    Tableau {
        #[arg(long)]
        ops: Option<String>,
        /// Rows as JSON, e.g. [[1,1],[2]]
        #[arg(long)]
        element: Option<String>,
    },
    /// Truncated crystal graph of ℬ(𝒩) ⊗ SST(λ)
    Graph {
        #[arg(long, default_value_t = DEFAULT_VERTEX_CAP)]
        max_vertices: usize,
    },
    /// Highest-weight scan, greedy reduction and connectivity
    HwScan {
        #[arg(long, default_value_t = DEFAULT_VERTEX_CAP)]
        max_vertices: usize,
    },
    /// 𝔩-branching of ℬ(𝒩) up to |μ| = max-degree
    Decompose,
    /// Verification suites
    Verify {
        #[arg(value_enum)]
        suite: Suite,
        /// Appendix case (b:i=m, b:i>m, d:i>m, b/c:i<m); default all
        #[arg(long)]
        case: Option<String>,
        /// Samples for omega
        #[arg(long, default_value_t = 100)]
        samples: usize,
        #[arg(long, default_value_t = 1)]
        seed: u64,
    },
}

#[derive(ValueEnum, Clone, Copy, Debug, PartialEq, Eq)]
pub enum Suite {
    Commutators,
    Adjoint,
    Pbw,
    Lattice,
    Appendix,
    Omega,
}

/// Input the command could not use; exits with status 2.
#[derive(Debug, thiserror::Error)]
#[error("{0}")]
pub struct UsageError(pub String);

fn usage<T>(msg: impl Into<String>) -> Result<T> {
    Err(UsageError(msg.into()).into())
}

pub struct Outcome {
    pub passed: bool,
    pub json: Value,
    pub text: String,
    /// Set by `graph --format dot`.
    pub dot: Option<String>,
}

impl Outcome {
    fn new(passed: bool, json: Value, text: String) -> Outcome {
        Outcome { passed, json, text, dot: None }
    }

    pub fn render(&self, format: Format) -> String {
        match format {
            Format::Json => serde_json::to_string_pretty(&self.json).expect("json values serialize") + "\n",
            Format::Text => self.text.clone(),
            Format::Dot => self.dot.clone().unwrap_or_default(),
        }
    }
}

impl Opts {
    fn algebra(&self) -> Result<AlgebraType> {
        let family = match self.family {
            Some(FamilyArg::B) => Family::B,
            Some(FamilyArg::C) => Family::C,
            Some(FamilyArg::D) => Family::D,
            None => return usage("--type is required"),
        };
        let (Some(m), Some(n)) = (self.m, self.n) else {
            return usage("--m and --n are required");
        };
        AlgebraType::new(family, m, n).map_err(|e| UsageError(e.to_string()).into())
    }

    fn hook(&self) -> Result<HookType> {
        if self.family.is_some() {
            return Ok(HookType::from(self.algebra()?));
        }
        let (Some(m), Some(n)) = (self.m, self.n) else {
            return usage("--m and --n are required");
        };
        HookType::new(m, n).map_err(|e| UsageError(e.to_string()).into())
    }

    fn lambda(&self) -> Result<Option<HookPartition>> {
        let Some(s) = &self.lambda else { return Ok(None) };
        let parts = s
            .split(',')
            .map(str::trim)
            .filter(|t| !t.is_empty())
            .map(|t| t.parse::<usize>().map_err(|_| UsageError(format!("bad --lambda entry {t:?}"))))
            .collect::<Result<Vec<_>, _>>()?;
        HookPartition::new(&parts).map(Some).map_err(|e| UsageError(e.to_string()).into())
    }

    fn pbw(&self) -> Result<Pbw> {
        let conv = match self.convention {
            Convention::BracketDefault => PbwConvention::Standard,
            Convention::BracketOddBraces => PbwConvention::OddBraces,
        };
        Ok(Pbw::with_convention(self.algebra()?, conv))
    }
}

/// (raise, i, repeat) for each token of an operator string.
pub fn parse_ops(s: &str) -> Result<Vec<(bool, usize, usize)>> {
    s.split(|c: char| c.is_whitespace() || c == ',')
        .filter(|t| !t.is_empty())
        .map(|t| {
            let (head, reps) = match t.split_once('^') {
                Some((h, r)) => (h, r.parse::<usize>().map_err(|_| UsageError(format!("bad repeat in {t:?}")))?),
                None => (t, 1),
            };
            let raise = match head.chars().next() {
                Some('e') => true,
                Some('f') => false,
                _ => return usage(format!("bad operator {t:?}; expected e<i> or f<i>")),
            };
            let i = head[1..].parse::<usize>().map_err(|_| UsageError(format!("bad operator index in {t:?}")))?;
            Ok((raise, i, reps))
        })
        .collect()
}

fn parse_root(s: &str) -> Result<Root> {
    let (i, j) = s.split_once(',').ok_or_else(|| UsageError(format!("bad root {s:?}, expected i,j")))?;
    match (i.trim().parse(), j.trim().parse()) {
        (Ok(i), Ok(j)) => Ok(Root::new(i, j)),
        _ => usage(format!("bad root {s:?}")),
    }
}

fn op_name(raise: bool, i: usize) -> String {
    format!("{}{i}", if raise { 'e' } else { 'f' })
}

pub fn run(cli: &Cli) -> Result<Outcome> {
    let o = &cli.opts;
    let out = match &cli.command {
        Command::Roots => roots(o)?,
        Command::Commutator { alpha, beta } => commutator(o, alpha.as_deref(), beta.as_deref())?,
        Command::CrystalOp { ops, element } => crystal_op(o, ops, element.as_deref())?,
        Command::Tableau { ops, element } => tableau(o, ops.as_deref(), element.as_deref())?,
        Command::Graph { max_vertices } => graph(o, *max_vertices)?,
        Command::HwScan { max_vertices } => hw_scan(o, *max_vertices)?,
        Command::Decompose => decompose(o)?,
        Command::Verify { suite, case, samples, seed } => verify(o, *suite, case.as_deref(), *samples, *seed)?,
    };
    if o.format == Format::Dot && out.dot.is_none() {
        return usage("--format dot is only available for graph");
    }
    Ok(out)
}

fn roots(o: &Opts) -> Result<Outcome> {
    let g = o.algebra()?;
    let x = RadCrystal::new(g);
    let mut text = String::new();
    let mut list = Vec::new();
    for (k, info) in x.rs.radical().iter().enumerate() {
        let r = x.rs.pair(k);
        let weight: Vec<i32> = (1..=g.rank()).map(|a| info.weight.get(a)).collect();
        writeln!(text, "{k:>3} {r} word={} ht={} norm={} {:?}", info.word, info.ht, info.norm, info.class).unwrap();
        list.push(json!({
            "index": k,
            "root": [r.i, r.j],
            "word": info.word.to_string(),
            "weight": weight,
            "height": info.ht,
            "norm": info.norm,
            "isotropic": info.is_isotropic(),
        }));
    }
    Ok(Outcome::new(true, json!({"algebra": g.to_string(), "count": list.len(), "roots": list}), text))
}

fn commutator(o: &Opts, alpha: Option<&str>, beta: Option<&str>) -> Result<Outcome> {
    let pbw = o.pbw()?;
    let n = pbw.rs.n_rad;
    let pairs: Vec<(usize, usize)> = match (alpha, beta) {
        (Some(a), Some(b)) => {
            let (a, b) = (pbw.rs.index(parse_root(a)?)?, pbw.rs.index(parse_root(b)?)?);
            if a >= n || b >= n || a == b {
                return usage("--alpha and --beta must be two distinct radical roots");
            }
            vec![(a.min(b), a.max(b))]
        }
        (None, None) => (0..n).flat_map(|b| (0..b).map(move |a| (a, b))).collect(),
        _ => return usage("give both --alpha and --beta, or neither"),
    };
    let mut text = String::new();
    let mut list = Vec::new();
    for (a, b) in pairs {
        let (ra, rb) = (pbw.rs.pair(a), pbw.rs.pair(b));
        let value = pbw.format(&pbw.commutator(a, b));
        writeln!(text, "[F{rb}, F{ra}] = {value}").unwrap();
        list.push(json!({"alpha": [ra.i, ra.j], "beta": [rb.i, rb.j], "value": value}));
    }
    Ok(Outcome::new(true, json!({"algebra": pbw.algebra().to_string(), "commutators": list}), text))
}

fn check_index(i: usize, rank: usize) -> Result<()> {
    if i >= rank {
        return usage(format!("operator index {i} outside 0..{rank}"));
    }
    Ok(())
}

fn parse_element(s: &str) -> Result<ArrayJson> {
    serde_json::from_str(s).map_err(|e| UsageError(format!("bad --element: {e}")).into())
}

fn crystal_op(o: &Opts, ops: &str, element: Option<&str>) -> Result<Outcome> {
    let g = o.algebra()?;
    let ops = parse_ops(ops)?;
    let x = RadCrystal::new(g);
    let label: Vec<String> = ops.iter().map(|&(r, i, k)| if k == 1 { op_name(r, i) } else { format!("{}^{k}", op_name(r, i)) }).collect();
    for &(_, i, _) in &ops {
        check_index(i, g.rank())?;
    }
    if let Some(lambda) = o.lambda()? {
        let p = PvCrystal::from_rad(x, lambda).map_err(|e| UsageError(e.to_string()))?;
        let start = match element {
            Some(s) => element_from_json(&p.rad, p.hook, &parse_element(s)?).map_err(|e| UsageError(e.to_string()))?,
            None => p.highest(),
        };
        p.check(&start).map_err(|e| UsageError(e.to_string()))?;
        let mut cur = Some(start);
        for &(raise, i, k) in &ops {
            for _ in 0..k {
                cur = cur.and_then(|b| if raise { p.e(i, &b) } else { p.f(i, &b) });
            }
        }
        let result = cur.as_ref().map(|b| element_to_json(&p.rad, b));
        let text = match &cur {
            Some(b) => format!("{}\n", crate::format::element_label(&p.rad, b)),
            None => "0\n".to_string(),
        };
        return Ok(Outcome::new(true, json!({"algebra": g.to_string(), "ops": label, "result": result}), text));
    }
    let start = match element {
        Some(s) => array_from_json(&x, &parse_element(s)?).map_err(|e| UsageError(e.to_string()))?,
        None => x.zero(),
    };
    let mut cur = Some(start);
    for &(raise, i, k) in &ops {
        for _ in 0..k {
            cur = cur.and_then(|c| if raise { x.e(i, &c) } else { x.f(i, &c) });
        }
    }
    let text = match &cur {
        Some(c) => format!("{}\n", x.format(c)),
        None => "0\n".to_string(),
    };
    let result = cur.as_ref().map(|c| array_to_json(&x, c));
    Ok(Outcome::new(true, json!({"algebra": g.to_string(), "ops": label, "result": result}), text))
}

fn tableau(o: &Opts, ops: Option<&str>, element: Option<&str>) -> Result<Outcome> {
    let h = o.hook()?;
    let Some(lambda) = o.lambda()? else { return usage("--lambda is required") };
    lambda.check_hook(h).map_err(|e| UsageError(e.to_string()))?;
    let hw = genuine_hw(h, &lambda)?;
    if let Some(ops) = ops {
        let start = match element {
            Some(s) => {
                let rows: Vec<Vec<u8>> = serde_json::from_str(s).map_err(|e| UsageError(format!("bad --element: {e}")))?;
                HookTableau::new(h, rows).map_err(|e| UsageError(e.to_string()))?
            }
            None => hw,
        };
        let mut cur = Some(start);
        for (raise, i, k) in parse_ops(ops)? {
            for _ in 0..k {
                cur = match cur {
                    Some(t) => tableau_op(h, i, &t, raise).map_err(|e| UsageError(e.to_string()))?,
                    None => None,
                };
            }
        }
        let text = cur.as_ref().map_or("0\n".to_string(), |t| format!("{t}\n"));
        return Ok(Outcome::new(true, json!({"lambda": lambda.parts(), "result": cur.map(|t| t.rows().to_vec())}), text));
    }
    let rep = check_sst(h, &lambda)?;
    let passed = rep.connected() && rep.genuine_source(h);
    let sources: Vec<Vec<Vec<u8>>> = rep.sources.iter().map(|t| t.rows().to_vec()).collect();
    let text = format!(
        "SST_{}|{}({lambda}): {} tableaux, connected={}, sources={} (genuine H_λ present: {})\n",
        h.m,
        h.n,
        rep.size,
        rep.connected(),
        rep.sources.len(),
        rep.genuine_source(h)
    );
    let json = json!({
        "m": h.m, "n": h.n, "lambda": lambda.parts(),
        "size": rep.size,
        "connected": rep.connected(),
        "genuine_highest": hw.rows(),
        "sources": sources,
        "unique_source": rep.unique_source(),
    });
    Ok(Outcome::new(passed, json, text))
}

fn pv(o: &Opts) -> Result<PvCrystal> {
    let g = o.algebra()?;
    let lambda = o.lambda()?.unwrap_or_else(HookPartition::empty);
    PvCrystal::new(g, lambda).map_err(|e| UsageError(e.to_string()).into())
}

fn resource(e: PvError) -> anyhow::Error {
    match e {
        PvError::TooLarge { .. } => UsageError(e.to_string()).into(),
        e => e.into(),
    }
}

fn graph(o: &Opts, cap: usize) -> Result<Outcome> {
    let p = pv(o)?;
    let d = o.max_degree.unwrap_or(2);
    let g = p.build_graph(d, cap).map_err(resource)?;
    let text = format!("{} vertices, {} edges\n", g.vertices.len(), g.edges.len());
    let json = serde_json::to_value(graph_to_json(&p.rad, &g))?;
    let mut out = Outcome::new(true, json, text);
    out.dot = Some(graph_to_dot(&p.rad, &g));
    Ok(out)
}

fn hw_scan(o: &Opts, cap: usize) -> Result<Outcome> {
    let p = pv(o)?;
    let d = o.max_degree.unwrap_or(5);
    let rep = p.scan_report(d, cap).map_err(resource)?;
    let sources: Vec<ArrayJson> = rep.sources.iter().map(|b| element_to_json(&p.rad, b)).collect();
    let text = format!(
        "{} λ={} D={}: {} vertices, {} sources (genuine present: {}), greedy to 𝕆⊗H_λ: {}/{}, components: {}\n",
        rep.algebra,
        rep.lambda,
        d,
        rep.vertices,
        rep.sources.len(),
        rep.genuine_found,
        rep.reached_highest,
        rep.vertices,
        rep.components
    );
    let json = json!({
        "algebra": rep.algebra.to_string(),
        "lambda": rep.lambda.parts(),
        "max_degree": d,
        "vertices": rep.vertices,
        "sources": sources,
        "unique_source": rep.unique_source(),
        "fake_sources": rep.fake_sources().count(),
        "fake_sources_off_zero": rep.fake_off_zero(),
        "greedy_reaches_highest": rep.reached_highest,
        "components": rep.components,
        "connected": rep.connected(),
    });
    Ok(Outcome::new(rep.unique_source() && rep.greedy_reaches_highest(), json, text))
}

fn decompose(o: &Opts) -> Result<Outcome> {
    let g = o.algebra()?;
    let d = o.max_degree.unwrap_or(6);
    let br = l_branching(&RadCrystal::new(g), d);
    let mut text = String::new();
    let mut comps = Vec::new();
    for c in &br.components {
        let mu = c.partition.as_ref().map(|p| p.parts().to_vec());
        writeln!(
            text,
            "|μ|={} μ={} vertices={} fake_sources={}",
            c.size,
            c.partition.as_ref().map_or("?".to_string(), |p| p.to_string()),
            c.vertices,
            c.fake_sources
        )
        .unwrap();
        comps.push(json!({
            "size": c.size,
            "mu": mu,
            "vertices": c.vertices,
            "expected_vertices": c.expected_vertices,
            "fake_sources": c.fake_sources,
        }));
    }
    let passed = br.matches_eligible();
    writeln!(text, "matches P(g): {passed}").unwrap();
    let json = json!({
        "algebra": g.to_string(),
        "max_size": d,
        "components": comps,
        "multiplicity_free": br.multiset().values().all(|&v| v == 1),
        "matches_eligible": passed,
    });
    Ok(Outcome::new(passed, json, text))
}

fn summary(suite: &str, algebra: String, total: usize, failures: Vec<String>, extra: Value) -> Outcome {
    let passed = failures.is_empty();
    let mut text = format!("verify {suite} {algebra}: {}/{total} passed\n", total - failures.len());
    for f in &failures {
        writeln!(text, "  FAIL {f}").unwrap();
    }
    let json = json!({
        "suite": suite,
        "algebra": algebra,
        "total": total,
        "failed": failures.len(),
        "passed": passed,
        "failures": failures,
        "details": extra,
    });
    Outcome::new(passed, json, text)
}

fn verify(o: &Opts, suite: Suite, case: Option<&str>, samples: usize, seed: u64) -> Result<Outcome> {
    Ok(match suite {
        Suite::Commutators => {
            let pbw = o.pbw()?;
            let rep = pbw.verify_commutators();
            let fails = rep.failures().map(|p| format!("[F{}, F{}]: table {} vs {}", p.beta, p.alpha, p.table, p.computed)).collect();
            summary("commutators", rep.algebra.to_string(), rep.pairs.len(), fails, Value::Null)
        }
        Suite::Adjoint => {
            let pbw = o.pbw()?;
            let rep = pbw.verify_adjoint();
            let fails = rep
                .checks
                .iter()
                .filter(|c| !c.ok)
                .map(|c| format!("{}{}·F{}: table {} vs {}", c.op, c.i, c.beta, c.table, c.computed))
                .collect();
            summary("adjoint", rep.algebra.to_string(), rep.checks.len(), fails, Value::Null)
        }
        Suite::Pbw => {
            let pbw = o.pbw()?;
            let d = o.max_degree.unwrap_or(6);
            let rep = pbw.pbw_rank(d);
            let fails = rep
                .weights
                .iter()
                .filter(|w| w.rank != w.monomials)
                .map(|w| format!("weight {:?}: rank {} of {}", w.coords, w.rank, w.monomials))
                .collect();
            let monos: usize = rep.weights.iter().map(|w| w.monomials).sum();
            summary("pbw", rep.algebra.to_string(), rep.weights.len(), fails, json!({"max_degree": d, "monomials": monos}))
        }
        Suite::Lattice => {
            let pbw = o.pbw()?;
            let g = pbw.algebra();
            let x = RadCrystal::new(g);
            let d = o.max_degree.unwrap_or(5);
            let mut total = 0;
            let mut fails = Vec::new();
            for i in 1..g.rank() {
                let rep = verify_lattice(&pbw, &x, i, d)?;
                total += rep.checks;
                fails.extend(rep.failures.iter().map(|c| c.to_string()));
            }
            summary("lattice", g.to_string(), total, fails, json!({"max_degree": d}))
        }
        Suite::Appendix => {
            let cases: Vec<AppendixCase> = match case {
                Some(s) => vec![s.parse().map_err(UsageError)?],
                None => AppendixCase::ALL.to_vec(),
            };
            let max = o.max_degree.unwrap_or(4);
            let mut total = 0;
            let mut fails = Vec::new();
            let mut per = Vec::new();
            for c in cases {
                let rep = verify_appendix(c, max)?;
                total += rep.checks.len();
                per.push(json!({"case": c.name(), "checks": rep.checks.len(), "failed": rep.failures().count()}));
                fails.extend(rep.failures().map(|f| f.to_string()));
            }
            summary("appendix", format!("a,c<={max}"), total, fails, Value::Array(per))
        }
        Suite::Omega => {
            let (Some(m), Some(n)) = (o.m, o.n) else { return usage("--m and --n are required (c_{m|n} against d_{n|m})") };
            let rep = omega_check(m, n, samples, 5, seed)?;
            let fails = rep
                .checks
                .iter()
                .filter(|c| !c.ok)
                .map(|c| format!("x={:?} y={:?}", c.x.iter().map(|r| r.to_string()).collect::<Vec<_>>(), c.y.iter().map(|r| r.to_string()).collect::<Vec<_>>()))
                .collect();
            summary("omega", format!("c_{m}|{n} <-> d_{n}|{m}"), rep.checks.len(), fails, json!({"seed": seed}))
        }
    })
}

/// Exit status: 0 pass, 1 verification failure, 2 usage or resource error.
pub fn exit_code(res: &Result<Outcome>) -> i32 {
    match res {
        Ok(o) if o.passed => 0,
        Ok(_) => 1,
        Err(e) if e.downcast_ref::<UsageError>().is_some() => 2,
        Err(_) => 2,
    }
}

pub fn write_output(o: &Opts, out: &Outcome) -> Result<()> {
    let body = out.render(o.format);
    match &o.out {
        Some(path) => std::fs::write(path, body).with_context(|| format!("writing {}", path.display())),
        None => {
            print!("{body}");
            Ok(())
        }
    }
}

pub fn init_threads(o: &Opts) -> Result<()> {
    if let Some(t) = o.threads {
        if t == 0 {
            bail!(UsageError("--threads must be positive".into()));
        }
        rayon::ThreadPoolBuilder::new().num_threads(t).build_global().map_err(|e| anyhow!(e))?;
    }
    Ok(())
}
