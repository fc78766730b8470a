//! Batch runs over a spec file.
//!
//! Each non-comment line names a generator and the checks to run:
//!
//! ```text
//! hex 3 3 : class color extend discharge
//! random 10 0..50 : class color
//! compliant 4 4 7 : audit
//! gadget L4:t=9 : reduce golden
//! gadget L2:d=3 : reduce=fail
//! file graphs/k4.txt : color=fail
//! ```
//!
//! `random N A..B` expands to one instance per seed in `A..B`. A check
//! written `name=fail` is expected to fail.

use std::fmt;
use std::path::{Path, PathBuf};
use std::str::FromStr;
use std::sync::atomic::{AtomicUsize, Ordering};
use std::sync::Mutex;
use std::time::Instant;

use serde::Serialize;
use thiserror::Error;

use super::generate::{hex_patch, lemma_compliant, random_inclass};
use super::io::parse_graph;
use crate::coloring::{extend_super, solve_if, verify_if, verify_super, Color, ColoringError};
use crate::discharging::{apply_rules, audit, outer_accounting};
use crate::plane_graph::{Adjacency, PlaneGraph};
use crate::reducibility::{build_gadget, find_configs, verify_reducible, BoundaryModel, Gadget, GadgetId, LemmaId};
use crate::structures::{analyze_cycle, in_class, Classification};

pub const SCHEMA_VERSION: u32 = 1;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum SuiteError {
    #[error("line {line}: {msg}")]
    Parse { line: usize, msg: String },
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub enum Generator {
    Hex { rows: usize, cols: usize },
    Random { n: usize, seed: u64 },
    Compliant { rows: usize, cols: usize, seed: u64 },
    Gadget(GadgetId),
    File(PathBuf),
}

impl fmt::Display for Generator {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Generator::Hex { rows, cols } => write!(f, "hex({rows},{cols})"),
            Generator::Random { n, seed } => write!(f, "random(n={n},seed={seed})"),
            Generator::Compliant { rows, cols, seed } => write!(f, "compliant({rows},{cols},seed={seed})"),
            Generator::Gadget(id) => write!(f, "gadget({id})"),
            Generator::File(p) => write!(f, "file({})", p.display()),
        }
    }
}

impl Generator {
    /// The graph, and the gadget when the generator is one.
    pub fn build(&self) -> Result<(PlaneGraph, Option<Gadget>), String> {
        match self {
            Generator::Hex { rows, cols } => Ok((hex_patch(*rows, *cols), None)),
            Generator::Random { n, seed } => random_inclass(*n, *seed).map(|g| (g, None)).map_err(|e| e.to_string()),
            Generator::Compliant { rows, cols, seed } => Ok((lemma_compliant(*rows, *cols, *seed), None)),
            Generator::Gadget(id) => {
                let gad = build_gadget(*id).map_err(|e| e.to_string())?;
                Ok((gad.host.clone(), Some(gad)))
            }
            Generator::File(p) => {
                let text = std::fs::read_to_string(p).map_err(|e| format!("{}: {e}", p.display()))?;
                parse_graph(&text).map(|g| (g, None)).map_err(|e| e.to_string())
            }
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum Check {
    Class,
    Color,
    Extend,
    Discharge,
    Audit,
    Reduce,
    Golden,
}

impl Check {
    pub fn name(self) -> &'static str {
        match self {
            Check::Class => "class",
            Check::Color => "color",
            Check::Extend => "extend",
            Check::Discharge => "discharge",
            Check::Audit => "audit",
            Check::Reduce => "reduce",
            Check::Golden => "golden",
        }
    }
}

impl FromStr for Check {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, String> {
        Ok(match s {
            "class" => Check::Class,
            "color" => Check::Color,
            "extend" => Check::Extend,
            "discharge" => Check::Discharge,
            "audit" => Check::Audit,
            "reduce" => Check::Reduce,
            "golden" => Check::Golden,
            _ => return Err(format!("unknown check `{s}`")),
        })
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct InstanceSpec {
    pub line: usize,
    pub generator: Generator,
    /// Each check with whether it is expected to pass.
    pub checks: Vec<(Check, bool)>,
}

fn parse_num<T: FromStr>(tok: Option<&str>, line: usize, what: &str) -> Result<T, SuiteError> {
    tok.and_then(|t| t.parse().ok()).ok_or(SuiteError::Parse { line, msg: format!("expected {what}") })
}

/// Parses a spec file. Relative `file` paths resolve against `base`.
pub fn parse_spec(text: &str, base: &Path) -> Result<Vec<InstanceSpec>, SuiteError> {
    let mut out = Vec::new();
    for (i, raw) in text.lines().enumerate() {
        let line = i + 1;
        let l = raw.split('#').next().unwrap_or("").trim();
        if l.is_empty() {
            continue;
        }
        let err = |msg: String| SuiteError::Parse { line, msg };
        let (gen, checks) = l.split_once(':').map(|(a, b)| (a.trim(), b.trim())).unwrap_or((l, ""));
        // Gadget ids contain ':' themselves.
        let (gen, checks) = if gen.starts_with("gadget") && checks.starts_with(|c: char| c.is_ascii_alphanumeric()) && checks.contains(':') {
            let (p, rest) = checks.split_once(':').expect("checked above");
            (format!("{gen}:{}", p.trim()), rest.trim())
        } else {
            (gen.to_string(), checks)
        };
        let mut toks = gen.split_whitespace();
        let kind = toks.next().unwrap_or("");
        let generators: Vec<Generator> = match kind {
            "hex" => vec![Generator::Hex {
                rows: parse_num(toks.next(), line, "rows")?,
                cols: parse_num(toks.next(), line, "cols")?,
            }],
            "random" => {
                let n = parse_num(toks.next(), line, "n")?;
                let seeds = toks.next().ok_or(err("expected a seed or seed range".into()))?;
                let range = match seeds.split_once("..") {
                    Some((a, b)) => parse_num(Some(a), line, "seed")?..parse_num(Some(b), line, "seed")?,
                    None => {
                        let s: u64 = parse_num(Some(seeds), line, "seed")?;
                        s..s + 1
                    }
                };
                range.map(|seed| Generator::Random { n, seed }).collect()
            }
            "compliant" => vec![Generator::Compliant {
                rows: parse_num(toks.next(), line, "rows")?,
                cols: parse_num(toks.next(), line, "cols")?,
                seed: parse_num(toks.next(), line, "seed")?,
            }],
            "gadget" => {
                let id = toks.next().ok_or(err("expected a gadget id".into()))?;
                vec![Generator::Gadget(id.parse().map_err(|e: crate::reducibility::ReduceError| err(e.to_string()))?)]
            }
            "file" => {
                let p = toks.next().ok_or(err("expected a path".into()))?;
                vec![Generator::File(base.join(p))]
            }
            other => return Err(err(format!("unknown generator `{other}`"))),
        };
        if let Some(extra) = toks.next() {
            return Err(err(format!("unexpected `{extra}`")));
        }
        let mut parsed = Vec::new();
        for tok in checks.split_whitespace() {
            let (name, expect) = match tok.split_once('=') {
                Some((n, "pass")) => (n, true),
                Some((n, "fail")) => (n, false),
                Some(_) => return Err(err(format!("bad expectation in `{tok}`"))),
                None => (tok, true),
            };
            parsed.push((name.parse::<Check>().map_err(err)?, expect));
        }
        out.extend(generators.into_iter().map(|generator| InstanceSpec { line, generator, checks: parsed.clone() }));
    }
    Ok(out)
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct CheckResult {
    pub check: Check,
    pub expected: bool,
    pub passed: bool,
    pub detail: String,
    pub micros: u128,
}

impl CheckResult {
    pub fn ok(&self) -> bool {
        self.passed == self.expected
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct InstanceResult {
    pub line: usize,
    pub label: String,
    pub size: Option<(usize, usize)>,
    pub error: Option<String>,
    pub checks: Vec<CheckResult>,
}

#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize)]
pub struct SuiteReport {
    pub instances: Vec<InstanceResult>,
}

impl SuiteReport {
    pub fn failures(&self) -> usize {
        self.instances.iter().map(|i| i.error.is_some() as usize + i.checks.iter().filter(|c| !c.ok()).count()).sum()
    }

    pub fn ok(&self) -> bool {
        self.failures() == 0
    }

    /// Line-oriented report; timings are optional so that runs can be
    /// diffed.
    pub fn render(&self, timings: bool) -> String {
        let mut out = format!("ifpart-suite-report schema={SCHEMA_VERSION}\n");
        for (i, inst) in self.instances.iter().enumerate() {
            let size = inst.size.map_or(String::new(), |(n, m)| format!(" n={n} m={m}"));
            out.push_str(&format!("instance {i} line={} {}{size}\n", inst.line, inst.label));
            if let Some(e) = &inst.error {
                out.push_str(&format!("error {i} {e}\n"));
            }
            for c in &inst.checks {
                let verdict = if c.ok() { "PASS" } else { "FAIL" };
                let word = |b: bool| if b { "pass" } else { "fail" };
                out.push_str(&format!(
                    "check {i} {} {verdict} expected={} result={}",
                    c.check.name(),
                    word(c.expected),
                    word(c.passed)
                ));
                if timings {
                    out.push_str(&format!(" time_us={}", c.micros));
                }
                out.push_str(&format!(" {}\n", c.detail));
            }
        }
        let checks: usize = self.instances.iter().map(|i| i.checks.len()).sum();
        out.push_str(&format!("summary instances={} checks={checks} failures={}\n", self.instances.len(), self.failures()));
        out
    }
}

fn golden(gad: &Gadget) -> (bool, String) {
    let g = &gad.host;
    let lab = |s: &str| gad.label(s).expect("gadget label");
    match gad.id {
        GadgetId::Fig2a | GadgetId::Fig2b => {
            let want = if gad.id == GadgetId::Fig2a { Classification::BadTypeI } else { Classification::BadTypeII };
            match analyze_cycle(g, &gad.cycle) {
                Ok(r) => {
                    let ok = r.classification == want && r.bad_vertices == vec![(lab("v4"), lab("v7"))];
                    (ok, format!("classification={}", r.classification.label()))
                }
                Err(e) => (false, e.to_string()),
            }
        }
        GadgetId::Fig3a | GadgetId::Fig3b => {
            let want = if gad.id == GadgetId::Fig3a { Classification::BadTypeI } else { Classification::BadTypeII };
            let (v1, y0) = (lab("v1"), lab("y0"));
            let Some(f) = (0..g.face_count()).find(|&f| g.face(f).contains(v1) && g.face(f).contains(y0)) else {
                return (false, "v1 and y0 share no face".into());
            };
            match g.identify(v1, y0, f).and_then(|h| analyze_cycle(&h, &gad.cycle)) {
                Ok(r) => {
                    let ok = r.classification == want && r.bad_vertices == vec![(lab("v4"), lab("v7"))];
                    (ok, format!("identified classification={}", r.classification.label()))
                }
                Err(e) => (false, e.to_string()),
            }
        }
        id => {
            let lemma = match id {
                GadgetId::L2(_) => LemmaId::L2,
                GadgetId::L4(_) => LemmaId::L4,
                GadgetId::L5(_) => LemmaId::L5,
                _ => LemmaId::L6,
            };
            let mut core = gad.core.clone();
            core.sort_unstable();
            let hit = find_configs(g).iter().any(|m| m.lemma == lemma && m.key().1.iter().all(|v| core.contains(v) || gad.boundary.contains(v)));
            (hit, format!("find_configs {} {}", lemma, if hit { "found" } else { "missing" }))
        }
    }
}

/// Every IF-coloring of the outer cycle extends to a super IF-coloring.
fn extend_all(g: &PlaneGraph) -> (bool, String) {
    let c0 = g.outer_face().boundary.clone();
    if !g.outer_face().is_simple() || c0.len() > 9 {
        return (false, format!("outer face is not a 9⁻-cycle (walk length {})", c0.len()));
    }
    let (mut valid, mut failed) = (0, 0);
    for mask in 0u32..(1 << c0.len()) {
        let phi0: Vec<Color> = (0..c0.len()).map(|i| if mask >> i & 1 == 1 { Color::F } else { Color::I }).collect();
        match extend_super(g, &c0, &phi0) {
            Ok(out) => {
                valid += 1;
                let good = out.coloring.as_ref().is_some_and(|phi| verify_super(g, &c0, phi).is_ok_and(|v| v.is_empty()));
                failed += !good as usize;
            }
            Err(ColoringError::InvalidPrecoloring(_)) => {}
            Err(e) => return (false, e.to_string()),
        }
    }
    (failed == 0, format!("precolorings={valid} unextended={failed}"))
}

fn run_check(check: Check, g: &PlaneGraph, gadget: Option<&Gadget>) -> (bool, String) {
    match check {
        Check::Class => {
            let r = in_class(g);
            let d = r.d_star.map_or("inf".to_string(), |d| d.to_string());
            (r.in_class, format!("d*={d}"))
        }
        Check::Color => match solve_if(g) {
            Some(phi) => {
                let ok = verify_if(g, &phi).is_ok_and(|v| v.is_empty());
                (ok, "colorable".into())
            }
            None => (false, "NONE".into()),
        },
        Check::Extend => extend_all(g),
        Check::Discharge => {
            let ledger = apply_rules(g);
            let conserved = ledger.final_total() == ledger.initial_total() && ledger.final_total() == 0.into();
            let acc = outer_accounting(g, &ledger);
            let identity = !acc.hypotheses_hold || acc.identity_holds;
            (
                conserved && identity && acc.ineq3,
                format!(
                    "conserved={conserved} hypotheses={} identity={} ineq3={}",
                    acc.hypotheses_hold, acc.identity_holds, acc.ineq3
                ),
            )
        }
        Check::Audit => {
            let r = audit(g);
            (r.conserved && r.unexplained() == 0, format!("negatives={} unexplained={}", r.negatives.len(), r.unexplained()))
        }
        Check::Reduce => match gadget {
            Some(gad) => match verify_reducible(gad, BoundaryModel::IBit) {
                Ok(r) => (r.ok(), format!("patterns={} failures={}", r.patterns, r.failures)),
                Err(e) => (false, e.to_string()),
            },
            None => (false, "not a gadget".into()),
        },
        Check::Golden => match gadget {
            Some(gad) => golden(gad),
            None => (false, "not a gadget".into()),
        },
    }
}

pub fn run_instance(spec: &InstanceSpec) -> InstanceResult {
    let mut res = InstanceResult { line: spec.line, label: spec.generator.to_string(), size: None, error: None, checks: Vec::new() };
    let (g, gadget) = match spec.generator.build() {
        Ok(x) => x,
        Err(e) => {
            res.error = Some(e);
            return res;
        }
    };
    res.size = Some((g.vertex_count(), g.edge_count()));
    for &(check, expected) in &spec.checks {
        let t = Instant::now();
        let (passed, detail) = run_check(check, &g, gadget.as_ref());
        res.checks.push(CheckResult { check, expected, passed, detail, micros: t.elapsed().as_micros() });
    }
    res
}

/// Runs every instance, several at a time; results keep spec order.
pub fn run_specs(specs: &[InstanceSpec]) -> SuiteReport {
    let slots: Vec<Mutex<Option<InstanceResult>>> = specs.iter().map(|_| Mutex::new(None)).collect();
    let next = AtomicUsize::new(0);
    let workers = std::thread::available_parallelism().map_or(1, |n| n.get()).min(specs.len().max(1));
    std::thread::scope(|s| {
        for _ in 0..workers {
            s.spawn(|| loop {
                let i = next.fetch_add(1, Ordering::Relaxed);
                let Some(spec) = specs.get(i) else { break };
                *slots[i].lock().expect("slot lock") = Some(run_instance(spec));
            });
        }
    });
    SuiteReport {
        instances: slots.into_iter().map(|m| m.into_inner().expect("slot lock").expect("every slot filled")).collect(),
    }
}

pub fn run_suite(text: &str, base: &Path) -> Result<SuiteReport, SuiteError> {
    Ok(run_specs(&parse_spec(text, base)?))
}
