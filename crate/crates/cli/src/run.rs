//! Executes a parsed session, writing TSV to a sink and collecting a report.

use std::collections::HashMap;
use std::io::Write;
use std::rc::Rc;

use serde::Serialize;

use fibercone_core::complex::{ComplexInstance, ParameterSequence};
use fibercone_core::hilbert::{BinomialBasis, FiltrationPair};
use fibercone_core::reduction::{check_superficial_sequence, find_minimal_reduction, ReductionData, ReductionOptions};
use fibercone_core::verifier::{self, Analysis, AnalysisOptions, CheckResult, Label, Verdict};
use fibercone_core::{Error, Ideal, Polynomial};

use crate::error::CliError;
use crate::session::{target_word, Command, Item, OpKind, Session, Triple};

pub const EXIT_PASS: i32 = 0;
pub const EXIT_FAIL: i32 = 2;
pub const EXIT_HYPOTHESES: i32 = 3;
pub const EXIT_INPUT: i32 = 4;

/// Window used by `hilbert` and `fiber` when neither the command nor `set` gives one.
pub const DEFAULT_TABLE_WINDOW: i64 = 8;

#[derive(Clone, Debug, Serialize, PartialEq, Eq)]
pub struct Header {
    pub prime: u32,
    pub vars: Vec<String>,
    pub order: &'static str,
    pub seed: u64,
    pub trials: u32,
    pub window: Option<i64>,
}

#[derive(Clone, Debug, Serialize, PartialEq, Eq)]
pub struct HypothesisRecord {
    pub name: String,
    pub holds: bool,
}

#[derive(Clone, Debug, Serialize, PartialEq, Eq)]
pub struct WitnessRecord {
    pub label: String,
    pub n: Option<i64>,
    pub lhs: i128,
    pub relation: &'static str,
    pub rhs: i128,
    pub required: bool,
    pub holds: bool,
}

#[derive(Clone, Debug, Serialize, PartialEq, Eq)]
pub struct CheckRecord {
    pub id: String,
    pub verdict: &'static str,
    pub hypotheses: Vec<HypothesisRecord>,
    pub witness: Vec<WitnessRecord>,
    pub notes: Vec<String>,
}

impl From<&CheckResult> for CheckRecord {
    fn from(r: &CheckResult) -> Self {
        CheckRecord {
            id: r.id.clone(),
            verdict: r.verdict.tag(),
            hypotheses: r.hypotheses.iter().map(|h| HypothesisRecord { name: h.name.clone(), holds: h.holds }).collect(),
            witness: r
                .witness
                .iter()
                .map(|w| WitnessRecord {
                    label: w.label.clone(),
                    n: w.n,
                    lhs: w.lhs,
                    relation: w.relation.symbol(),
                    rhs: w.rhs,
                    required: w.required,
                    holds: w.holds(),
                })
                .collect(),
            notes: r.notes.clone(),
        }
    }
}

#[derive(Clone, Debug, Serialize, PartialEq, Eq)]
pub struct ReductionRecord {
    pub x: Vec<String>,
    pub reduction_number: u32,
    pub s_value: u32,
    pub superficial_verified: bool,
    pub inside_i1: bool,
    pub seed: u64,
    pub trial: u32,
}

impl From<&ReductionData> for ReductionRecord {
    fn from(r: &ReductionData) -> Self {
        ReductionRecord {
            x: r.x.elements().iter().map(|p| p.to_string()).collect(),
            reduction_number: r.reduction_number,
            s_value: r.s_value,
            superficial_verified: !r.superficial.is_empty() && r.superficial.iter().all(|v| v.window_verified()),
            inside_i1: r.inside_i1,
            seed: r.seed,
            trial: r.trial,
        }
    }
}

#[derive(Clone, Debug, Serialize, PartialEq, Eq)]
pub struct CommandRecord {
    pub line: usize,
    pub command: String,
    pub rows: Vec<Vec<String>>,
    pub checks: Vec<CheckRecord>,
    pub reduction: Option<ReductionRecord>,
    pub error: Option<String>,
}

#[derive(Clone, Debug, Serialize, PartialEq, Eq)]
pub struct Report {
    pub header: Header,
    pub commands: Vec<CommandRecord>,
    pub exit_code: i32,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
struct Current {
    window: Option<i64>,
    seed: u64,
    trials: u32,
}

type AnalysisKey = (String, String, String, Option<i64>, u64, u32);

struct Runner<'s> {
    session: &'s Session,
    ideals: HashMap<String, Ideal>,
    seqs: HashMap<String, Vec<Polynomial>>,
    analyses: HashMap<AnalysisKey, Rc<Analysis>>,
    cur: Current,
}

fn core(line: usize) -> impl Fn(Error) -> CliError {
    move |err| CliError::Core { line, err }
}

fn row<I: IntoIterator<Item = S>, S: ToString>(cells: I) -> Vec<String> {
    cells.into_iter().map(|c| c.to_string()).collect()
}

fn vec_cell(v: &[i128]) -> String {
    v.iter().map(|c| c.to_string()).collect::<Vec<_>>().join(",")
}

fn gens_cell(i: &Ideal) -> String {
    i.generators().iter().map(|p| p.to_string()).collect::<Vec<_>>().join(", ")
}

/// A result reported when an analysis cannot be set up because `x` is not a
/// reduction of `I2` (or a similar precondition fails).
fn unmet(id: &str, reason: String) -> CheckResult {
    CheckResult {
        id: id.to_string(),
        hypotheses: vec![verifier::Hypothesis { name: reason, holds: false }],
        verdict: Verdict::HypothesesNotMet,
        witness: Vec::new(),
        notes: Vec::new(),
    }
}

impl<'s> Runner<'s> {
    fn ideal(&self, name: &str) -> &Ideal {
        &self.ideals[name]
    }

    fn pair(&self, line: usize, i1: &str, i2: &str) -> Result<FiltrationPair, CliError> {
        FiltrationPair::new(self.ideal(i1).clone(), self.ideal(i2).clone()).map_err(core(line))
    }

    fn sequence(&self, line: usize, t: &Triple) -> Result<ParameterSequence, CliError> {
        ParameterSequence::new(self.seqs[&t.x].clone(), self.ideal(&t.i2)).map_err(core(line))
    }

    fn reduction_options(&self) -> ReductionOptions {
        ReductionOptions { seed: self.cur.seed, trials: self.cur.trials, ..ReductionOptions::default() }
    }

    fn analysis(&mut self, line: usize, t: &Triple) -> Result<std::result::Result<Rc<Analysis>, String>, CliError> {
        let key = (t.x.clone(), t.i1.clone(), t.i2.clone(), self.cur.window, self.cur.seed, self.cur.trials);
        if let Some(a) = self.analyses.get(&key) {
            return Ok(Ok(a.clone()));
        }
        let pair = self.pair(line, &t.i1, &t.i2)?;
        let x = self.sequence(line, t)?;
        let opts = AnalysisOptions { window: self.cur.window, reduction: self.reduction_options() };
        match Analysis::new(&t.x, pair, x, &opts) {
            Ok(a) => {
                let a = Rc::new(a);
                self.analyses.insert(key, a.clone());
                Ok(Ok(a))
            }
            Err(Error::ProbeBoundExceeded(b)) => Ok(Err(format!("(x) is a reduction of I2 (not within {} steps)", b))),
            Err(Error::HypothesisViolated(m)) => Ok(Err(m)),
            Err(e) => Err(CliError::Core { line, err: e }),
        }
    }

    fn verify(&mut self, line: usize, check: &str, t: &Triple) -> Result<Vec<CheckResult>, CliError> {
        let c = core(line);
        match check {
            "noninjective-map" => {
                let pair = self.pair(line, &t.i1, &t.i2)?;
                let x = self.sequence(line, t)?;
                return Ok(vec![verifier::noninjective_regression(&pair, &x).map_err(c)?]);
            }
            "outside-reduction" => {
                let pair = self.pair(line, &t.i1, &t.i2)?;
                let x = self.sequence(line, t)?;
                return Ok(vec![verifier::outside_regression(&pair, &x).map_err(c)?]);
            }
            _ => {}
        }
        let a = match self.analysis(line, t)? {
            Ok(a) => a,
            Err(reason) => return Ok(vec![unmet(check, reason)]),
        };
        let a = &*a;
        let out = match check {
            "all" => verifier::run_all(a),
            "homology" => verifier::check_homology(a, -2, a.window).map(|r| vec![r]),
            "min-mult" => verifier::check_min_mult_equiv(a).map(|r| vec![r]),
            "fundamental" => verifier::check_fundamental_lemma(a).map(|r| vec![r]),
            "alternating-sum" => verifier::check_alternating_sum(a).map(|r| vec![r]),
            "coefficients" => verifier::check_coefficients(a).map(|r| vec![r]),
            "rigidity" | "g1-bounds" | "f0-bounds" | "depth-lemma" => {
                verifier::check_bounds_and_depth(a).map(|v| v.into_iter().filter(|r| r.id == check).collect())
            }
            "mm-amm" => verifier::check_mm_amm_structure(a).map(|r| vec![r]),
            "series" => verifier::check_series(a, None).map(|r| vec![r]),
            "series-mm" => verifier::check_series(a, Some(Label::Minimal)).map(|r| vec![r]),
            "series-amm" => verifier::check_series(a, Some(Label::AlmostMinimal)).map(|r| vec![r]),
            "structure" => verifier::check_structure(a).map(|r| vec![r]),
            other => Err(Error::InvalidArgument(format!("unknown check {}", other))),
        };
        out.map_err(c)
    }

    fn execute(&mut self, line: usize, cmd: &Command, rec: &mut CommandRecord) -> Result<(), CliError> {
        let c = core(line);
        let rows = &mut rec.rows;
        match cmd {
            Command::Gb(n) => {
                for g in self.ideal(n).groebner_basis() {
                    rows.push(row(["gb", n.as_str(), &g.to_string()]));
                }
            }
            Command::Length(n) => {
                let len = self.ideal(n).colength().map(|l| l.to_string()).unwrap_or_else(|| "inf".into());
                rows.push(row(["length", n.as_str(), &len]));
            }
            Command::Op { target, kind, a, b } => {
                let a = self.ideal(a);
                let r = match (kind, b) {
                    (OpKind::Power(k), _) => a.power(*k),
                    (OpKind::Product, Some(b)) => a.product(self.ideal(b)),
                    (OpKind::Sum, Some(b)) => a.sum(self.ideal(b)),
                    (OpKind::Colon, Some(b)) => a.colon(self.ideal(b)),
                    (OpKind::Intersect, Some(b)) => a.intersect(self.ideal(b)),
                    _ => Err(Error::InvalidArgument("missing operand".into())),
                }
                .map_err(c)?;
                let len = r.colength().map(|l| l.to_string()).unwrap_or_else(|| "inf".into());
                rows.push(row(["op", target.as_str(), &gens_cell(&r), "length", &len]));
                self.ideals.insert(target.clone(), r);
            }
            Command::Reduce { i2, i1, bind } => {
                let i2i = self.ideal(i2).clone();
                let mut opts = self.reduction_options();
                let i1i = match i1 {
                    Some(n) => {
                        opts.constrain_inside_i1 = true;
                        self.ideal(n).clone()
                    }
                    None => Ideal::unit(&self.session.ring),
                };
                let data = find_minimal_reduction(&i2i, &i1i, &opts).map_err(c)?;
                let x: Vec<String> = data.x.elements().iter().map(|p| p.to_string()).collect();
                rows.push(row(["reduce", i2.as_str(), &x.join(", ")]));
                rows.push(row(["reduction_number".to_string(), data.reduction_number.to_string()]));
                rows.push(row(["s".to_string(), data.s_value.to_string()]));
                rows.push(row(["seed".to_string(), data.seed.to_string(), "trial".into(), data.trial.to_string()]));
                rec.reduction = Some(ReductionRecord::from(&data));
                if let Some(b) = bind {
                    self.seqs.insert(b.clone(), data.x.elements().to_vec());
                }
            }
            Command::Superficial(t) => {
                let pair = self.pair(line, &t.i1, &t.i2)?;
                let x = self.sequence(line, t)?;
                let probe = fibercone_core::reduction::default_probe_bound(pair.i2()).map_err(&c)?;
                let red = fibercone_core::reduction::is_reduction(&x, pair.i2(), probe).map_err(&c)?.unwrap_or(0);
                let rw = self.cur.window.map(|w| w as u32).unwrap_or(red + pair.dim() as u32 + 3);
                rows.push(row(["element", "r", "s", "holds"]));
                for v in check_superficial_sequence(&x, &pair, rw, 2).map_err(&c)? {
                    for cell in &v.cells {
                        rows.push(row([v.element.to_string(), cell.r.to_string(), cell.s.to_string(), cell.holds.to_string()]));
                    }
                    let r0 = v.r0.map(|r| r.to_string()).unwrap_or_else(|| "none".into());
                    rows.push(row([format!("element {}", v.element), "r0".into(), r0, v.window_verified().to_string()]));
                }
            }
            Command::Hilbert { i1, i2, window } | Command::Fiber { i1, i2, window } => {
                let pair = self.pair(line, i1, i2)?;
                let w = window.or(self.cur.window).unwrap_or(DEFAULT_TABLE_WINDOW);
                let hilbert = matches!(cmd, Command::Hilbert { .. });
                let data = if hilbert { pair.hilbert_data(w) } else { pair.fiber_data(w) }.map_err(&c)?;
                rows.push(row(["n", if hilbert { "l(R/I1I2^n)" } else { "l(I2^n/I1I2^n)" }]));
                for (n, v) in data.values.iter().enumerate() {
                    rows.push(row([n.to_string(), v.to_string()]));
                }
                if hilbert {
                    rows.push(row(["g".to_string(), vec_cell(&data.coefficients(BinomialBasis::SHIFTED)), "basis".into(), "C(n+d-j,d-j)".into()]));
                    rows.push(row(["g".to_string(), vec_cell(&data.coefficients(BinomialBasis::PLAIN)), "basis".into(), "C(n+d-1-j,d-j)".into()]));
                    rows.push(row(["series".to_string(), data.series(0).reduced().to_string()]));
                } else {
                    let e = pair.adic_data(w).map_err(&c)?;
                    rows.push(row(["f".to_string(), vec_cell(&data.coefficients(BinomialBasis::SHIFTED)), "basis".into(), "C(n+d-1-i,d-1-i)".into()]));
                    rows.push(row(["e".to_string(), vec_cell(&e.coefficients(BinomialBasis::SHIFTED)), "basis".into(), "C(n+d-j,d-j)".into()]));
                }
                rows.push(row(["postulation".to_string(), data.postulation.to_string()]));
            }
            Command::Homology { t, variant, lo, hi } => {
                let pair = self.pair(line, &t.i1, &t.i2)?;
                let x = self.sequence(line, t)?;
                let d = pair.dim();
                let mut head = vec!["n".to_string()];
                head.extend((0..=d).map(|i| format!("h{}", i)));
                rows.push(head);
                for n in *lo..=*hi {
                    let cx = ComplexInstance::build(&x, &pair, *variant, n).map_err(&c)?;
                    let mut r = vec![n.to_string()];
                    r.extend(cx.homology_lengths().iter().map(|h| h.to_string()));
                    rows.push(r);
                }
            }
            Command::Classify(t) => match self.analysis(line, t)? {
                Ok(a) => {
                    let cls = a.classify().map_err(&c)?;
                    rows.push(row(["classify".to_string(), "delta".into(), cls.delta.to_string(), "label".into(), cls.label.tag().into()]));
                    rows.push(row(["l(R/I1I2)".to_string(), cls.colengths.0.to_string(), "l(R/I1(x))".into(), cls.colengths.1.to_string()]));
                }
                Err(reason) => rec.checks.push(CheckRecord::from(&unmet("classify", reason))),
            },
            Command::Depth { target, t } => match self.analysis(line, t)? {
                Ok(a) => match a.depth(*target) {
                    Ok(r) => rows.push(row([
                        "depth".to_string(),
                        target.tag().into(),
                        r.estimated_depth.to_string(),
                        "window".into(),
                        format!("{}..{}", r.window.0, r.window.1),
                        "source".into(),
                        r.source.into(),
                    ])),
                    Err(Error::HypothesisViolated(m)) => rec.checks.push(CheckRecord::from(&unmet(&format!("depth {}", target_word(*target)), m))),
                    Err(e) => return Err(c(e)),
                },
                Err(reason) => rec.checks.push(CheckRecord::from(&unmet("depth", reason))),
            },
            Command::Verify { check, t } => {
                for r in self.verify(line, check, t)? {
                    let mut cells = vec!["check".to_string(), r.id.clone(), r.verdict.tag().to_string()];
                    if let Some(w) = r.first_failure() {
                        cells.push(format!("{} (n={}) {} {} {}", w.label, w.n.map(|n| n.to_string()).unwrap_or_else(|| "-".into()), w.lhs, w.relation.symbol(), w.rhs));
                    } else if let Some(h) = r.hypotheses.iter().find(|h| !h.holds) {
                        cells.push(format!("unmet: {}", h.name));
                    }
                    rows.push(cells);
                    rec.checks.push(CheckRecord::from(&r));
                }
            }
        }
        Ok(())
    }
}

/// Runs every item in order, writing TSV rows to `out`. Execution stops at the
/// first command that errors.
pub fn run_session(session: &Session, out: &mut dyn Write) -> Result<Report, CliError> {
    let mut runner = Runner {
        session,
        ideals: HashMap::new(),
        seqs: HashMap::new(),
        analyses: HashMap::new(),
        cur: Current { window: None, seed: 0, trials: ReductionOptions::default().trials },
    };
    let mut header: Option<Header> = None;
    let mut commands = Vec::new();
    let (mut failed, mut unmet_any, mut errored) = (false, false, false);
    let make_header = |cur: &Current| Header {
        prime: session.ring_decl.prime,
        vars: session.ring_decl.vars.clone(),
        order: "degrevlex",
        seed: cur.seed,
        trials: cur.trials,
        window: cur.window,
    };
    for l in &session.lines {
        match &l.item {
            Item::Ideal { name, gens } => {
                let i = Ideal::new(&session.ring, gens.clone()).map_err(core(l.number))?;
                runner.ideals.insert(name.clone(), i);
            }
            Item::Seq { name, elems } => {
                runner.seqs.insert(name.clone(), elems.clone());
            }
            Item::Set(s) => {
                runner.cur.window = s.window.or(runner.cur.window);
                runner.cur.seed = s.seed.unwrap_or(runner.cur.seed);
                runner.cur.trials = s.trials.unwrap_or(runner.cur.trials);
            }
            Item::Command(cmd) => {
                if header.is_none() {
                    let h = make_header(&runner.cur);
                    writeln!(out, "# fibercone p={} vars={} seed={} trials={}", h.prime, h.vars.join(","), h.seed, h.trials)?;
                    header = Some(h);
                }
                writeln!(out, "# line {}: {}", l.number, cmd)?;
                let mut rec = CommandRecord { line: l.number, command: cmd.to_string(), rows: Vec::new(), checks: Vec::new(), reduction: None, error: None };
                let res = runner.execute(l.number, cmd, &mut rec);
                for r in &rec.rows {
                    writeln!(out, "{}", r.join("\t"))?;
                }
                for ch in &rec.checks {
                    match ch.verdict {
                        "fail" => failed = true,
                        "hypotheses_not_met" => unmet_any = true,
                        _ => {}
                    }
                }
                if let Err(e) = res {
                    writeln!(out, "error\t{}", e)?;
                    rec.error = Some(e.to_string());
                    errored = true;
                    commands.push(rec);
                    break;
                }
                commands.push(rec);
            }
        }
    }
    let exit_code = if errored {
        EXIT_INPUT
    } else if failed {
        EXIT_FAIL
    } else if unmet_any {
        EXIT_HYPOTHESES
    } else {
        EXIT_PASS
    };
    let header = header.unwrap_or_else(|| make_header(&runner.cur));
    Ok(Report { header, commands, exit_code })
}
