//! Line-oriented session files.
//!
//! ```text
//! ring p=32003 vars=x,y order=degrevlex
//! ideal I1 = x, y
//! ideal I2 = x, y
//! seq X = x, y
//! set window=8 seed=0 trials=16
//! verify all
//! ```

use std::collections::HashSet;
use std::fmt;
use std::sync::Arc;

use fibercone_core::complex::Variant;
use fibercone_core::parse::parse_poly_list;
use fibercone_core::verifier::DepthTarget;
use fibercone_core::{PolyRing, Polynomial, PrimeField};

use crate::error::CliError;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RingDecl {
    pub prime: u32,
    pub vars: Vec<String>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum OpKind {
    Product,
    Sum,
    Colon,
    Intersect,
    Power(i64),
}

/// Names of the sequence and the two ideals a check runs on.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Triple {
    pub x: String,
    pub i1: String,
    pub i2: String,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Command {
    Gb(String),
    Length(String),
    Op { target: String, kind: OpKind, a: String, b: Option<String> },
    Reduce { i2: String, i1: Option<String>, bind: Option<String> },
    Superficial(Triple),
    Hilbert { i1: String, i2: String, window: Option<i64> },
    Fiber { i1: String, i2: String, window: Option<i64> },
    Homology { t: Triple, variant: Variant, lo: i64, hi: i64 },
    Classify(Triple),
    Depth { target: DepthTarget, t: Triple },
    Verify { check: String, t: Triple },
}

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct Settings {
    pub window: Option<i64>,
    pub seed: Option<u64>,
    pub trials: Option<u32>,
}

#[derive(Clone, Debug, PartialEq)]
pub enum Item {
    Ideal { name: String, gens: Vec<Polynomial> },
    Seq { name: String, elems: Vec<Polynomial> },
    Set(Settings),
    Command(Command),
}

/// A parsed item with the line it came from.
#[derive(Clone, Debug, PartialEq)]
pub struct Line {
    pub number: usize,
    pub item: Item,
}

#[derive(Clone, Debug)]
pub struct Session {
    pub ring_decl: RingDecl,
    pub ring: Arc<PolyRing>,
    pub lines: Vec<Line>,
}

pub const CHECK_IDS: &[&str] = &[
    "homology",
    "min-mult",
    "fundamental",
    "alternating-sum",
    "coefficients",
    "rigidity",
    "g1-bounds",
    "f0-bounds",
    "depth-lemma",
    "mm-amm",
    "series",
    "series-mm",
    "series-amm",
    "structure",
    "noninjective-map",
    "outside-reduction",
    "all",
];

fn perr(line: usize, msg: impl Into<String>) -> CliError {
    CliError::Parse { line, msg: msg.into() }
}

fn key_values(line: usize, words: &[&str]) -> Result<Vec<(String, String)>, CliError> {
    words
        .iter()
        .map(|w| {
            w.split_once('=')
                .map(|(k, v)| (k.to_string(), v.to_string()))
                .ok_or_else(|| perr(line, format!("expected key=value, found `{}`", w)))
        })
        .collect()
}

fn parse_num<T: std::str::FromStr>(line: usize, what: &str, s: &str) -> Result<T, CliError> {
    s.parse().map_err(|_| perr(line, format!("bad {} `{}`", what, s)))
}

fn is_name(s: &str) -> bool {
    s.chars().next().is_some_and(|c| c.is_ascii_alphabetic() || c == '_') && s.chars().all(|c| c.is_ascii_alphanumeric() || c == '_')
}

fn parse_ring(line: usize, rest: &[&str]) -> Result<RingDecl, CliError> {
    let mut prime = 32003;
    let mut vars = None;
    for (k, v) in key_values(line, rest)? {
        match k.as_str() {
            "p" => prime = parse_num(line, "prime", &v)?,
            "vars" => vars = Some(v.split(',').map(|s| s.trim().to_string()).filter(|s| !s.is_empty()).collect::<Vec<_>>()),
            "order" if v == "degrevlex" => {}
            "order" => return Err(perr(line, format!("unsupported order `{}`", v))),
            _ => return Err(perr(line, format!("unknown ring option `{}`", k))),
        }
    }
    let vars = vars.ok_or_else(|| perr(line, "ring needs vars="))?;
    Ok(RingDecl { prime, vars })
}

fn parse_window(line: usize, w: Option<&&str>) -> Result<Option<i64>, CliError> {
    match w {
        None => Ok(None),
        Some(w) => match w.strip_prefix("window=") {
            Some(v) => Ok(Some(parse_num(line, "window", v)?)),
            None => Err(perr(line, format!("unexpected `{}`", w))),
        },
    }
}

fn triple(line: usize, w: &[&str]) -> Result<Triple, CliError> {
    match w {
        [x, i1, i2] => Ok(Triple { x: x.to_string(), i1: i1.to_string(), i2: i2.to_string() }),
        _ => Err(perr(line, "expected X I1 I2")),
    }
}

fn parse_target(line: usize, s: &str) -> Result<DepthTarget, CliError> {
    match s {
        "G" | "associated" => Ok(DepthTarget::AssociatedGraded),
        "GI1" | "relative" => Ok(DepthTarget::Relative),
        "F" | "fiber" => Ok(DepthTarget::Fiber),
        _ => Err(perr(line, format!("unknown depth target `{}` (G, GI1, F)", s))),
    }
}

pub fn target_word(t: DepthTarget) -> &'static str {
    match t {
        DepthTarget::AssociatedGraded => "G",
        DepthTarget::Relative => "GI1",
        DepthTarget::Fiber => "F",
    }
}

fn parse_op(line: usize, target: &str, expr: &str) -> Result<Command, CliError> {
    let expr = expr.trim();
    for (sym, kind) in [("*", OpKind::Product), ("+", OpKind::Sum), (":", OpKind::Colon), ("∩", OpKind::Intersect), (" cap ", OpKind::Intersect)] {
        if let Some((a, b)) = expr.split_once(sym) {
            let (a, b) = (a.trim(), b.trim());
            if !is_name(a) || !is_name(b) {
                return Err(perr(line, format!("bad operands in `{}`", expr)));
            }
            return Ok(Command::Op { target: target.to_string(), kind, a: a.to_string(), b: Some(b.to_string()) });
        }
    }
    if let Some((a, k)) = expr.split_once('^') {
        let a = a.trim();
        if !is_name(a) {
            return Err(perr(line, format!("bad operand `{}`", a)));
        }
        let k: i64 = parse_num(line, "exponent", k.trim())?;
        return Ok(Command::Op { target: target.to_string(), kind: OpKind::Power(k), a: a.to_string(), b: None });
    }
    Err(perr(line, format!("expected A * B, A + B, A : B, A ∩ B or A^k, found `{}`", expr)))
}

fn parse_command(line: usize, head: &str, rest: &str) -> Result<Command, CliError> {
    let w: Vec<&str> = rest.split_whitespace().collect();
    let one = |w: &[&str]| match w {
        [n] => Ok(n.to_string()),
        _ => Err(perr(line, format!("{} takes one name", head))),
    };
    match head {
        "gb" => Ok(Command::Gb(one(&w)?)),
        "length" => Ok(Command::Length(one(&w)?)),
        "op" => {
            let (target, expr) = rest.split_once('=').ok_or_else(|| perr(line, "expected op NAME = expression"))?;
            let target = target.trim();
            if !is_name(target) {
                return Err(perr(line, format!("bad name `{}`", target)));
            }
            parse_op(line, target, expr)
        }
        "reduce" => {
            let mut it = w.iter();
            let i2 = it.next().ok_or_else(|| perr(line, "reduce needs an ideal"))?.to_string();
            let mut i1 = None;
            let mut bind = None;
            while let Some(&k) = it.next() {
                let v = it.next().ok_or_else(|| perr(line, format!("`{}` needs a name", k)))?.to_string();
                match k {
                    "in" => i1 = Some(v),
                    "as" => bind = Some(v),
                    _ => return Err(perr(line, format!("unexpected `{}`", k))),
                }
            }
            Ok(Command::Reduce { i2, i1, bind })
        }
        "superficial" => Ok(Command::Superficial(triple(line, &w)?)),
        "hilbert" | "fiber" => {
            if w.len() < 2 || w.len() > 3 {
                return Err(perr(line, format!("{} I1 I2 [window=N]", head)));
            }
            let window = parse_window(line, w.get(2))?;
            let (i1, i2) = (w[0].to_string(), w[1].to_string());
            Ok(if head == "hilbert" { Command::Hilbert { i1, i2, window } } else { Command::Fiber { i1, i2, window } })
        }
        "homology" => {
            if w.len() != 5 {
                return Err(perr(line, "homology X I1 I2 VARIANT a..b"));
            }
            let t = triple(line, &w[..3])?;
            let variant = Variant::parse(w[3]).ok_or_else(|| perr(line, format!("unknown variant `{}` (C1, C0, D1, K)", w[3])))?;
            let (lo, hi) = w[4].split_once("..").ok_or_else(|| perr(line, "range must be a..b"))?;
            let (lo, hi) = (parse_num(line, "range", lo)?, parse_num(line, "range", hi)?);
            if lo > hi {
                return Err(perr(line, "empty range"));
            }
            Ok(Command::Homology { t, variant, lo, hi })
        }
        "classify" => {
            let [i1, i2, x] = w[..] else {
                return Err(perr(line, "classify I1 I2 X"));
            };
            Ok(Command::Classify(Triple { x: x.to_string(), i1: i1.to_string(), i2: i2.to_string() }))
        }
        "depth" => {
            if w.len() != 4 {
                return Err(perr(line, "depth TARGET X I1 I2"));
            }
            Ok(Command::Depth { target: parse_target(line, w[0])?, t: triple(line, &w[1..])? })
        }
        "verify" => {
            let check = w.first().ok_or_else(|| perr(line, "verify needs a check id"))?.to_string();
            if !CHECK_IDS.contains(&check.as_str()) {
                return Err(perr(line, format!("unknown check `{}`; known: {}", check, CHECK_IDS.join(", "))));
            }
            let t = match w.len() {
                1 => Triple { x: "X".into(), i1: "I1".into(), i2: "I2".into() },
                4 => triple(line, &w[1..])?,
                _ => return Err(perr(line, "verify ID [X I1 I2]")),
            };
            Ok(Command::Verify { check, t })
        }
        _ => Err(perr(line, format!("unknown command `{}`", head))),
    }
}

#[derive(Clone, Copy, PartialEq, Eq)]
enum Kind {
    Ideal,
    Seq,
}

struct Scope {
    names: std::collections::HashMap<String, Kind>,
}

impl Scope {
    fn declare(&mut self, line: usize, name: &str, kind: Kind) -> Result<(), CliError> {
        if !is_name(name) {
            return Err(perr(line, format!("bad name `{}`", name)));
        }
        if self.names.insert(name.to_string(), kind).is_some() {
            return Err(CliError::Name { line, msg: format!("`{}` is already declared", name) });
        }
        Ok(())
    }

    fn need(&self, line: usize, name: &str, kind: Kind) -> Result<(), CliError> {
        match self.names.get(name) {
            Some(&k) if k == kind => Ok(()),
            Some(_) => Err(CliError::Name {
                line,
                msg: format!("`{}` is not {}", name, if kind == Kind::Ideal { "an ideal" } else { "a sequence" }),
            }),
            None => Err(CliError::Name { line, msg: format!("`{}` is not declared", name) }),
        }
    }

    fn check(&mut self, line: usize, c: &Command) -> Result<(), CliError> {
        let t3 = |s: &Self, t: &Triple| -> Result<(), CliError> {
            s.need(line, &t.x, Kind::Seq)?;
            s.need(line, &t.i1, Kind::Ideal)?;
            s.need(line, &t.i2, Kind::Ideal)
        };
        match c {
            Command::Gb(n) | Command::Length(n) => self.need(line, n, Kind::Ideal),
            Command::Op { target, a, b, .. } => {
                self.need(line, a, Kind::Ideal)?;
                if let Some(b) = b {
                    self.need(line, b, Kind::Ideal)?;
                }
                self.declare(line, target, Kind::Ideal)
            }
            Command::Reduce { i2, i1, bind } => {
                self.need(line, i2, Kind::Ideal)?;
                if let Some(i1) = i1 {
                    self.need(line, i1, Kind::Ideal)?;
                }
                match bind {
                    Some(b) => self.declare(line, b, Kind::Seq),
                    None => Ok(()),
                }
            }
            Command::Hilbert { i1, i2, .. } | Command::Fiber { i1, i2, .. } => {
                self.need(line, i1, Kind::Ideal)?;
                self.need(line, i2, Kind::Ideal)
            }
            Command::Superficial(t) | Command::Classify(t) => t3(self, t),
            Command::Homology { t, .. } | Command::Depth { t, .. } | Command::Verify { t, .. } => t3(self, t),
        }
    }
}

impl Session {
    pub fn parse(text: &str) -> Result<Session, CliError> {
        let mut ring: Option<(RingDecl, Arc<PolyRing>)> = None;
        let mut lines = Vec::new();
        let mut scope = Scope { names: Default::default() };
        for (idx, raw) in text.lines().enumerate() {
            let number = idx + 1;
            let content = raw.split('#').next().unwrap_or("").trim();
            if content.is_empty() {
                continue;
            }
            let (head, rest) = content.split_once(char::is_whitespace).unwrap_or((content, ""));
            let rest = rest.trim();
            if head == "ring" {
                if ring.is_some() {
                    return Err(perr(number, "ring declared twice"));
                }
                let decl = parse_ring(number, &rest.split_whitespace().collect::<Vec<_>>())?;
                let field = PrimeField::new(decl.prime).map_err(|e| perr(number, e.to_string()))?;
                let r = PolyRing::with_order(decl.vars.clone(), fibercone_core::MonomialOrder::DegRevLex, field)
                    .map_err(|e| perr(number, e.to_string()))?;
                ring = Some((decl, r));
                continue;
            }
            let r = &ring.as_ref().ok_or_else(|| perr(number, "the first declaration must be `ring`"))?.1;
            let item = match head {
                "ideal" | "seq" => {
                    let (name, body) = rest.split_once('=').ok_or_else(|| perr(number, format!("expected {} NAME = ...", head)))?;
                    let name = name.trim().to_string();
                    let polys = parse_poly_list(body, r).map_err(|e| perr(number, e.to_string()))?;
                    if polys.is_empty() {
                        return Err(perr(number, "empty generator list"));
                    }
                    if head == "ideal" {
                        scope.declare(number, &name, Kind::Ideal)?;
                        Item::Ideal { name, gens: polys }
                    } else {
                        scope.declare(number, &name, Kind::Seq)?;
                        Item::Seq { name, elems: polys }
                    }
                }
                "set" => {
                    let mut s = Settings::default();
                    for (k, v) in key_values(number, &rest.split_whitespace().collect::<Vec<_>>())? {
                        match k.as_str() {
                            "window" => s.window = Some(parse_num(number, "window", &v)?),
                            "seed" => s.seed = Some(parse_num(number, "seed", &v)?),
                            "trials" => s.trials = Some(parse_num(number, "trials", &v)?),
                            _ => return Err(perr(number, format!("unknown setting `{}`", k))),
                        }
                    }
                    Item::Set(s)
                }
                _ => {
                    let c = parse_command(number, head, rest)?;
                    scope.check(number, &c)?;
                    Item::Command(c)
                }
            };
            lines.push(Line { number, item });
        }
        let (ring_decl, ring) = ring.ok_or_else(|| perr(1, "missing ring declaration"))?;
        Ok(Session { ring_decl, ring, lines })
    }

    pub fn commands(&self) -> impl Iterator<Item = &Command> {
        self.lines.iter().filter_map(|l| match &l.item {
            Item::Command(c) => Some(c),
            _ => None,
        })
    }

    /// Declared names, in order.
    pub fn names(&self) -> Vec<&str> {
        let mut seen = HashSet::new();
        let mut out = Vec::new();
        for l in &self.lines {
            let n = match &l.item {
                Item::Ideal { name, .. } | Item::Seq { name, .. } => Some(name.as_str()),
                Item::Command(Command::Op { target, .. }) => Some(target.as_str()),
                Item::Command(Command::Reduce { bind: Some(b), .. }) => Some(b.as_str()),
                _ => None,
            };
            if let Some(n) = n {
                if seen.insert(n) {
                    out.push(n);
                }
            }
        }
        out
    }
}

fn join(ps: &[Polynomial]) -> String {
    ps.iter().map(|p| p.to_string()).collect::<Vec<_>>().join(", ")
}

impl fmt::Display for OpKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            OpKind::Product => write!(f, "*"),
            OpKind::Sum => write!(f, "+"),
            OpKind::Colon => write!(f, ":"),
            OpKind::Intersect => write!(f, "∩"),
            OpKind::Power(k) => write!(f, "^{}", k),
        }
    }
}

impl fmt::Display for Triple {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} {} {}", self.x, self.i1, self.i2)
    }
}

impl fmt::Display for Command {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Command::Gb(n) => write!(f, "gb {}", n),
            Command::Length(n) => write!(f, "length {}", n),
            Command::Op { target, kind: OpKind::Power(k), a, .. } => write!(f, "op {} = {}^{}", target, a, k),
            Command::Op { target, kind, a, b } => write!(f, "op {} = {} {} {}", target, a, kind, b.as_deref().unwrap_or("")),
            Command::Reduce { i2, i1, bind } => {
                write!(f, "reduce {}", i2)?;
                if let Some(i1) = i1 {
                    write!(f, " in {}", i1)?;
                }
                if let Some(b) = bind {
                    write!(f, " as {}", b)?;
                }
                Ok(())
            }
            Command::Superficial(t) => write!(f, "superficial {}", t),
            Command::Hilbert { i1, i2, window } | Command::Fiber { i1, i2, window } => {
                let head = if matches!(self, Command::Hilbert { .. }) { "hilbert" } else { "fiber" };
                write!(f, "{} {} {}", head, i1, i2)?;
                if let Some(w) = window {
                    write!(f, " window={}", w)?;
                }
                Ok(())
            }
            Command::Homology { t, variant, lo, hi } => write!(f, "homology {} {} {}..{}", t, variant.tag(), lo, hi),
            Command::Classify(t) => write!(f, "classify {} {} {}", t.i1, t.i2, t.x),
            Command::Depth { target, t } => write!(f, "depth {} {}", target_word(*target), t),
            Command::Verify { check, t } => write!(f, "verify {} {}", check, t),
        }
    }
}

impl fmt::Display for Session {
    /// Regenerates a session file that parses back to the same session.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "ring p={} vars={} order=degrevlex", self.ring_decl.prime, self.ring_decl.vars.join(","))?;
        for l in &self.lines {
            match &l.item {
                Item::Ideal { name, gens } => writeln!(f, "ideal {} = {}", name, join(gens))?,
                Item::Seq { name, elems } => writeln!(f, "seq {} = {}", name, join(elems))?,
                Item::Set(s) => {
                    write!(f, "set")?;
                    if let Some(w) = s.window {
                        write!(f, " window={}", w)?;
                    }
                    if let Some(s) = s.seed {
                        write!(f, " seed={}", s)?;
                    }
                    if let Some(t) = s.trials {
                        write!(f, " trials={}", t)?;
                    }
                    writeln!(f)?;
                }
                Item::Command(c) => writeln!(f, "{}", c)?,
            }
        }
        Ok(())
    }
}
