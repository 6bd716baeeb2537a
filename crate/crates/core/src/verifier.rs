//! Classification, window-based depth estimates, and checkers for the
//! identities and inequalities satisfied by the filtration `{I1 I2^n}`.
//!
//! Statements quantified over all `n` are checked on a finite window. Sums
//! written over all `n ≥ 0` are truncated at a tail index beyond which every
//! summand is known to vanish; the vanishing itself is checked as a
//! hypothesis.

use alloc::collections::BTreeMap;
use alloc::string::{String, ToString};
use alloc::sync::Arc;
use alloc::vec::Vec;
use alloc::{format, vec};

use crate::catalog::Instance;
use crate::complex::{ComplexInstance, ParameterSequence, Variant};
use crate::error::{Error, Result};
use crate::hilbert::{binomial, colength, BinomialBasis, FiltrationPair, HilbertData, RationalSeries};
use crate::ideal::Ideal;
use crate::reduction::{is_reduction, reduction_data, ReductionData, ReductionOptions};

fn sgn(i: usize) -> i128 {
    if i % 2 == 0 {
        1
    } else {
        -1
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Verdict {
    Pass,
    Fail,
    HypothesesNotMet,
}

impl Verdict {
    pub fn tag(&self) -> &'static str {
        match self {
            Verdict::Pass => "pass",
            Verdict::Fail => "fail",
            Verdict::HypothesesNotMet => "hypotheses_not_met",
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Hypothesis {
    pub name: String,
    pub holds: bool,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Relation {
    Eq,
    Le,
    Ge,
    Lt,
    Gt,
    /// Both sides are truth values (0 or 1) that must agree.
    Iff,
}

impl Relation {
    pub fn symbol(&self) -> &'static str {
        match self {
            Relation::Eq => "=",
            Relation::Le => "<=",
            Relation::Ge => ">=",
            Relation::Lt => "<",
            Relation::Gt => ">",
            Relation::Iff => "<=>",
        }
    }
}

/// One evaluated comparison. Rows with `required == false` document uncorrected
/// forms that are known not to hold and do not affect the verdict.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct WitnessRow {
    pub label: String,
    pub n: Option<i64>,
    pub lhs: i128,
    pub rhs: i128,
    pub relation: Relation,
    pub required: bool,
}

impl WitnessRow {
    pub fn holds(&self) -> bool {
        match self.relation {
            Relation::Eq | Relation::Iff => self.lhs == self.rhs,
            Relation::Le => self.lhs <= self.rhs,
            Relation::Ge => self.lhs >= self.rhs,
            Relation::Lt => self.lhs < self.rhs,
            Relation::Gt => self.lhs > self.rhs,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CheckResult {
    pub id: String,
    pub hypotheses: Vec<Hypothesis>,
    pub verdict: Verdict,
    pub witness: Vec<WitnessRow>,
    pub notes: Vec<String>,
}

impl CheckResult {
    /// The first required row that fails.
    pub fn first_failure(&self) -> Option<&WitnessRow> {
        self.witness.iter().find(|r| r.required && !r.holds())
    }
}

struct Builder {
    id: String,
    hypotheses: Vec<Hypothesis>,
    witness: Vec<WitnessRow>,
    notes: Vec<String>,
}

impl Builder {
    fn new(id: &str) -> Self {
        Builder { id: id.to_string(), hypotheses: Vec::new(), witness: Vec::new(), notes: Vec::new() }
    }

    fn hyp(&mut self, name: &str, holds: bool) -> bool {
        self.hypotheses.push(Hypothesis { name: name.to_string(), holds });
        holds
    }

    fn met(&self) -> bool {
        self.hypotheses.iter().all(|h| h.holds)
    }

    fn row(&mut self, label: &str, n: Option<i64>, lhs: i128, relation: Relation, rhs: i128) {
        self.witness.push(WitnessRow { label: label.to_string(), n, lhs, rhs, relation, required: true });
    }

    fn info(&mut self, label: &str, n: Option<i64>, lhs: i128, relation: Relation, rhs: i128) {
        self.witness.push(WitnessRow { label: label.to_string(), n, lhs, rhs, relation, required: false });
    }

    fn iff(&mut self, label: &str, n: Option<i64>, a: bool, b: bool) {
        self.row(label, n, a as i128, Relation::Iff, b as i128);
    }

    fn note(&mut self, s: String) {
        self.notes.push(s);
    }

    fn finish(self) -> CheckResult {
        let verdict = if !self.met() {
            Verdict::HypothesesNotMet
        } else if self.witness.iter().all(|r| !r.required || r.holds()) {
            Verdict::Pass
        } else {
            Verdict::Fail
        };
        CheckResult { id: self.id, hypotheses: self.hypotheses, verdict, witness: self.witness, notes: self.notes }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Label {
    Minimal,
    AlmostMinimal,
    Neither,
}

impl Label {
    pub fn tag(&self) -> &'static str {
        match self {
            Label::Minimal => "minimal",
            Label::AlmostMinimal => "almost_minimal",
            Label::Neither => "neither",
        }
    }
}

/// `delta = ℓ(I1 I2 / I1 (x))` and the resulting label.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Classification {
    pub delta: usize,
    pub label: Label,
    /// `ℓ(R/I1 I2)` and `ℓ(R/I1 (x))`.
    pub colengths: (usize, usize),
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum DepthTarget {
    /// `G(I2)`, read from `C(x, F_{I2}, (0, n))`.
    AssociatedGraded,
    /// `G_{I1}(I2)`, read from `D(x, F, (1, n))`.
    Relative,
    /// `F_{I1}(I2)`, read from the Koszul strands of `x°`.
    Fiber,
}

impl DepthTarget {
    pub fn tag(&self) -> &'static str {
        match self {
            DepthTarget::AssociatedGraded => "G(I2)",
            DepthTarget::Relative => "G_I1(I2)",
            DepthTarget::Fiber => "F_I1(I2)",
        }
    }

    fn variant(&self) -> Variant {
        match self {
            DepthTarget::AssociatedGraded => Variant::C0,
            DepthTarget::Relative => Variant::D1,
            DepthTarget::Fiber => Variant::KoszulFiber,
        }
    }
}

/// `d - max{i ≥ 1 : h_i ≠ 0 for some n in the window}`, with the maximum of
/// the empty set taken as 0.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DepthReport {
    pub target: DepthTarget,
    pub estimated_depth: usize,
    pub window: (i64, i64),
    pub source: &'static str,
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub struct AnalysisOptions {
    /// Check window `[1, N]`; defaults to `max(r, s) + d + 3`.
    pub window: Option<i64>,
    pub reduction: ReductionOptions,
}

#[derive(Clone, Debug)]
struct ComplexSummary {
    terms: Vec<usize>,
    homology: Vec<usize>,
    d_squared_zero: bool,
}

/// Everything the checkers share about one instance.
pub struct Analysis {
    pub name: String,
    pub pair: FiltrationPair,
    pub x: ParameterSequence,
    pub xi: Arc<Ideal>,
    pub red: ReductionData,
    /// The window policy value `max(r, s) + d + 3`.
    pub policy_window: i64,
    pub window: i64,
    /// `ℓ(R/I1 I2^n)`, fitted in degree `d`.
    pub h1: HilbertData,
    /// `ℓ(R/I2^n)`, fitted in degree `d`.
    pub h0: HilbertData,
    /// `ℓ(I2^n/I1 I2^n)`, fitted in degree `d - 1`.
    pub fiber: HilbertData,
    complexes: spin::Mutex<BTreeMap<(u8, i64), Arc<ComplexSummary>>>,
    ideals: spin::Mutex<BTreeMap<(u8, i64), Arc<Ideal>>>,
}

impl core::fmt::Debug for Analysis {
    fn fmt(&self, f: &mut core::fmt::Formatter<'_>) -> core::fmt::Result {
        f.debug_struct("Analysis").field("name", &self.name).field("window", &self.window).finish()
    }
}

fn variant_key(v: Variant) -> u8 {
    match v {
        Variant::C1 => 0,
        Variant::C0 => 1,
        Variant::D1 => 2,
        Variant::KoszulFiber => 3,
    }
}

impl Analysis {
    /// Requires `x` to be a minimal reduction of `I2`.
    pub fn new(name: &str, pair: FiltrationPair, x: ParameterSequence, opts: &AnalysisOptions) -> Result<Analysis> {
        if x.len() != pair.dim() {
            return Err(Error::HypothesisViolated(String::from("sequence length differs from the dimension")));
        }
        let red = reduction_data(x.clone(), &pair, &opts.reduction, 0)?;
        let d = pair.dim() as i64;
        let policy_window = red.reduction_number.max(red.s_value) as i64 + d + 3;
        let window = opts.window.unwrap_or(policy_window);
        let fit = window.max(policy_window) + 2;
        let h1 = pair.hilbert_data(fit)?;
        let h0 = pair.adic_data(fit)?;
        let fiber = pair.fiber_data(fit)?;
        let xi = Arc::new(x.ideal()?);
        Ok(Analysis {
            name: name.to_string(),
            pair,
            x,
            xi,
            red,
            policy_window,
            window,
            h1,
            h0,
            fiber,
            complexes: spin::Mutex::new(BTreeMap::new()),
            ideals: spin::Mutex::new(BTreeMap::new()),
        })
    }

    pub fn from_instance(inst: &Instance, opts: &AnalysisOptions) -> Result<Analysis> {
        Analysis::new(inst.name, inst.pair()?, inst.sequence()?, opts)
    }

    pub fn dim(&self) -> usize {
        self.pair.dim()
    }

    pub fn inside_i1(&self) -> bool {
        self.red.inside_i1
    }

    pub fn superficial_verified(&self) -> bool {
        !self.red.superficial.is_empty() && self.red.superficial.iter().all(|v| v.window_verified())
    }

    /// Last index of truncated infinite sums: beyond it `P = H` has held for
    /// `d` steps, so every summand built from `∇^d [P - H]` vanishes.
    pub fn tail(&self) -> i64 {
        let d = self.dim() as i64;
        self.window.max(self.h1.postulation + d).max(self.h0.postulation + d).max(self.red.reduction_number as i64 + 1)
    }

    fn summary(&self, v: Variant, n: i64) -> Result<Arc<ComplexSummary>> {
        let key = (variant_key(v), n);
        if let Some(s) = self.complexes.lock().get(&key) {
            return Ok(s.clone());
        }
        let c = ComplexInstance::build(&self.x, &self.pair, v, n)?;
        let s = Arc::new(ComplexSummary {
            terms: c.term_lengths(),
            homology: c.homology_lengths(),
            d_squared_zero: c.d_squared_zero(),
        });
        self.complexes.lock().insert(key, s.clone());
        Ok(s)
    }

    /// Homology lengths `h_0..h_d` of a complex at degree `n`.
    pub fn homology(&self, v: Variant, n: i64) -> Result<Vec<usize>> {
        Ok(self.summary(v, n)?.homology.clone())
    }

    fn h(&self, v: Variant, i: usize, n: i64) -> Result<i128> {
        Ok(self.summary(v, n)?.homology[i] as i128)
    }

    /// `Σ_{n=0}^{tail} h_i(D)(1, n)`.
    fn h_d_total(&self, i: usize) -> Result<i128> {
        let mut acc = 0;
        for n in 0..=self.tail() {
            acc += self.h(Variant::D1, i, n)?;
        }
        Ok(acc)
    }

    fn cached(&self, tag: u8, n: i64, make: impl FnOnce() -> Result<Ideal>) -> Result<Arc<Ideal>> {
        if let Some(i) = self.ideals.lock().get(&(tag, n)) {
            return Ok(i.clone());
        }
        let i = Arc::new(make()?);
        self.ideals.lock().insert((tag, n), i.clone());
        Ok(i)
    }

    /// `(x) I1 I2^n`.
    fn x_term(&self, n: i64) -> Result<Arc<Ideal>> {
        self.cached(0, n, || self.xi.product(&*self.pair.term(n)?))
    }

    /// `(x) I2^n`.
    fn x_power(&self, n: i64) -> Result<Arc<Ideal>> {
        self.cached(1, n, || self.xi.product(&*self.pair.i2_power(n)?))
    }

    fn len_xi(&self) -> Result<i128> {
        Ok(colength(&self.xi)? as i128)
    }

    /// `H(1, n) = ℓ(R/I1 I2^n)` for every integer `n`.
    pub fn hf(&self, n: i64) -> Result<i128> {
        Ok(self.pair.hilbert(n)? as i128)
    }

    /// `H(0, n) = ℓ(R/I2^n)`, zero for `n ≤ 0`.
    pub fn hf0(&self, n: i64) -> Result<i128> {
        Ok(self.pair.hilbert_adic(n)? as i128)
    }

    /// `ℓ(R/I1)`.
    pub fn ell(&self) -> Result<i128> {
        Ok(colength(self.pair.i1())? as i128)
    }

    pub fn e0(&self) -> i128 {
        self.h0.coefficients(BinomialBasis::PLAIN)[0]
    }

    /// `ℓ((I1 I2^n + (x))/(x))`.
    pub fn a1(&self, n: i64) -> Result<i128> {
        Ok(self.len_xi()? - colength(&self.pair.term(n)?.sum(&self.xi)?)? as i128)
    }

    /// `ℓ((I2^n + (x))/(x))`.
    pub fn a0(&self, n: i64) -> Result<i128> {
        Ok(self.len_xi()? - colength(&self.pair.i2_power(n)?.sum(&self.xi)?)? as i128)
    }

    /// `ℓ(I1 I2^n / (x) I1 I2^{n-1})`.
    pub fn b(&self, n: i64) -> Result<i128> {
        Ok(colength(&*self.x_term(n - 1)?)? as i128 - self.hf(n)?)
    }

    /// `ℓ(R/((x) ∩ J))`, from `0 → R/(A ∩ B) → R/A ⊕ R/B → R/(A + B) → 0`.
    fn cap_colength(&self, j: &Ideal) -> Result<i128> {
        Ok(self.len_xi()? + colength(j)? as i128 - colength(&j.sum(&self.xi)?)? as i128)
    }

    pub fn classify(&self) -> Result<Classification> {
        let top = colength(&*self.pair.term(1)?)?;
        let low = colength(&*self.x_term(0)?)?;
        let delta = low - top;
        let label = match delta {
            0 => Label::Minimal,
            1 => Label::AlmostMinimal,
            _ => Label::Neither,
        };
        Ok(Classification { delta, label, colengths: (top, low) })
    }

    /// `(x) ∩ I1 I2 = (x) I1`.
    pub fn intersection_condition(&self) -> Result<bool> {
        Ok(self.cap_colength(&*self.pair.term(1)?)? == colength(&*self.x_term(0)?)? as i128)
    }

    pub fn depth(&self, target: DepthTarget) -> Result<DepthReport> {
        if target != DepthTarget::AssociatedGraded && !self.inside_i1() {
            return Err(Error::HypothesisViolated(String::from("(x) is not contained in I1")));
        }
        let d = self.dim();
        let mut top = 0;
        for n in 0..=self.tail() {
            let h = self.homology(target.variant(), n)?;
            for (i, &v) in h.iter().enumerate().skip(1) {
                if v != 0 {
                    top = top.max(i);
                }
            }
        }
        let source = match target {
            DepthTarget::AssociatedGraded => "C(x, F_I2, (0, n))",
            DepthTarget::Relative => "D(x, F, (1, n))",
            DepthTarget::Fiber => "K(x°, F_I1(I2))(n)",
        };
        Ok(DepthReport { target, estimated_depth: d - top, window: (0, self.tail()), source })
    }

    /// `g` in `C(n+d-1-j, d-j)`.
    pub fn g_plain(&self) -> Vec<i128> {
        self.h1.coefficients(BinomialBasis::PLAIN)
    }

    /// `g` in `C(n+d-j, d-j)`.
    pub fn g_shifted(&self) -> Vec<i128> {
        self.h1.coefficients(BinomialBasis::SHIFTED)
    }

    pub fn e_plain(&self) -> Vec<i128> {
        self.h0.coefficients(BinomialBasis::PLAIN)
    }

    pub fn e_shifted(&self) -> Vec<i128> {
        self.h0.coefficients(BinomialBasis::SHIFTED)
    }

    /// `f` in `C(n+d-1-i, d-1-i)`.
    pub fn f(&self) -> Vec<i128> {
        self.fiber.coefficients(BinomialBasis::SHIFTED)
    }

    fn common(&self, b: &mut Builder) {
        b.hyp("(x) is a minimal reduction of I2", true);
        b.hyp("x is superficial on the window", self.superficial_verified());
    }

    fn window_note(&self, b: &mut Builder) {
        b.note(format!("window [1, {}], sums truncated at {} (window-verified)", self.window, self.tail()));
    }
}

/// Checks `e0 - ℓ(R/I1 I2) + d ℓ(R/I1) = -Σ_{i≥2} (-1)^i [h_i(C)(1,1) - C(d,i) ℓ(R/I1)] + delta`
/// together with the sign and equality statements for the bracketed sum.
pub fn check_min_mult_equiv(a: &Analysis) -> Result<CheckResult> {
    let mut b = Builder::new("min-mult");
    a.common(&mut b);
    let d = a.dim();
    let ell = a.ell()?;
    let e0 = a.e0();
    let cls = a.classify()?;
    let lhs = e0 - a.hf(1)? + d as i128 * ell;
    let mut hsum = 0;
    for i in 2..=d {
        hsum += sgn(i) * (a.h(Variant::C1, i, 1)? - binomial(d as i64, i as i64) * ell);
    }
    b.row("e0 - l(R/I1I2) + d l(R/I1) = -sum + delta", Some(1), lhs, Relation::Eq, -hsum + cls.delta as i128);
    b.row("sum_{i>=2} (-1)^i [h_i(C)(1,1) - C(d,i) l(R/I1)] <= 0", Some(1), hsum, Relation::Le, 0);
    b.iff("sum = 0 <=> (x) in I1", Some(1), hsum == 0, a.inside_i1());
    let phi_target = colength(&a.pair.i1().product(&a.xi)?)? as i128 - a.len_xi()?;
    if hsum == 0 {
        b.row("l((x)/I1(x)) = d l(R/I1)", None, phi_target, Relation::Eq, d as i128 * ell);
    } else {
        b.info("l((x)/I1(x)) vs d l(R/I1)", None, phi_target, Relation::Eq, d as i128 * ell);
    }
    if a.inside_i1() {
        b.row("(x) in I1: e0 - l(R/I1I2) + d l(R/I1) = delta", None, lhs, Relation::Eq, cls.delta as i128);
    }
    b.note(format!("delta = {} ({})", cls.delta, cls.label.tag()));
    Ok(b.finish())
}

/// `∇^d [P - H](n)` for `H(1, ·)`.
fn nabla_gap(a: &Analysis, n: i64) -> Result<i128> {
    let d = a.dim();
    let mut acc = 0;
    for k in 0..=d {
        let m = n - k as i64;
        acc += sgn(k) * binomial(d as i64, k as i64) * (a.h1.poly.eval(m) - a.hf(m)?);
    }
    Ok(acc)
}

/// `∇^d [P - H](n)` for `H(0, ·)`.
fn nabla_gap_adic(a: &Analysis, n: i64) -> Result<i128> {
    let d = a.dim();
    let mut acc = 0;
    for k in 0..=d {
        let m = n - k as i64;
        acc += sgn(k) * binomial(d as i64, k as i64) * (a.h0.poly.eval(m) - a.hf0(m)?);
    }
    Ok(acc)
}

fn hsum(a: &Analysis, v: Variant, from: usize, n: i64) -> Result<i128> {
    let mut acc = 0;
    for i in from..=a.dim() {
        acc += sgn(i) * a.h(v, i, n)?;
    }
    Ok(acc)
}

/// Both right-hand sides of the fundamental lemma for `I1 I2^n`, and
/// the same identities for the `I2`-adic filtration (`I1 = R`).
pub fn check_fundamental_lemma(a: &Analysis) -> Result<CheckResult> {
    let mut b = Builder::new("fundamental");
    a.common(&mut b);
    b.hyp("d >= 2", a.dim() >= 2);
    if !b.met() {
        return Ok(b.finish());
    }
    for n in 1..=a.window {
        let lhs = nabla_gap(a, n)?;
        let c1 = hsum(a, Variant::C1, 1, n)?;
        let c2 = hsum(a, Variant::C1, 2, n)?;
        b.row("nabla^d[P-H](n) = l((I1I2^n+(x))/(x)) - sum_{i>=1}", Some(n), lhs, Relation::Eq, a.a1(n)? - c1);
        b.row("nabla^d[P-H](n) = l(I1I2^n/(x)I1I2^(n-1)) - sum_{i>=2}", Some(n), lhs, Relation::Eq, a.b(n)? - c2);
    }
    for n in 1..=a.window {
        let lhs = nabla_gap_adic(a, n)?;
        let c1 = hsum(a, Variant::C0, 1, n)?;
        let c2 = hsum(a, Variant::C0, 2, n)?;
        let quotient = colength(&*a.x_power(n - 1)?)? as i128 - a.hf0(n)?;
        b.row("I1 = R: nabla^d[P-H](n) = l((I2^n+(x))/(x)) - sum_{i>=1}", Some(n), lhs, Relation::Eq, a.a0(n)? - c1);
        b.row("I1 = R: nabla^d[P-H](n) = l(I2^n/(x)I2^(n-1)) - sum_{i>=2}", Some(n), lhs, Relation::Eq, quotient - c2);
    }
    a.window_note(&mut b);
    Ok(b.finish())
}

/// `Σ (-1)^i C(d,i) H(1, n-i) = e0 - ℓ(I1 I2^n/(x) I1 I2^{n-1}) + Σ_{i≥2} (-1)^i h_i`
/// for `C` (`n ≥ 2`) and, when `(x) ⊆ I1`, for `D` with `H'` (`n ≥ 1`);
/// plus the vanishing alternating sum for `n ≤ 0`.
pub fn check_alternating_sum(a: &Analysis) -> Result<CheckResult> {
    let mut b = Builder::new("alternating-sum");
    a.common(&mut b);
    let d = a.dim();
    let e0 = a.e0();
    for n in 2..=a.window {
        let mut lhs = 0;
        for i in 0..=d {
            lhs += sgn(i) * binomial(d as i64, i as i64) * a.hf(n - i as i64)?;
        }
        b.row("C: sum (-1)^i C(d,i) H(1,n-i) = e0 - l(...) + sum_{i>=2} h_i", Some(n), lhs, Relation::Eq, e0 - a.b(n)? + hsum(a, Variant::C1, 2, n)?);
    }
    if a.inside_i1() {
        for n in -2..=a.window {
            let mut lhs = 0;
            for i in 0..=d {
                let m = n - i as i64;
                let h = if m < 0 { 0 } else { a.hf(m)? };
                lhs += sgn(i) * binomial(d as i64, i as i64) * h;
            }
            let rhs = e0 - a.b(n)? + hsum(a, Variant::D1, 2, n)?;
            if n >= 1 {
                b.row("D: sum (-1)^i C(d,i) H'(1,n-i) = e0 - l(...) + sum_{i>=2} h_i", Some(n), lhs, Relation::Eq, rhs);
            } else {
                b.info("D at n <= 0 (uncorrected, all n)", Some(n), lhs, Relation::Eq, rhs);
            }
        }
    } else {
        b.note(String::from("(x) not inside I1: D-variant skipped"));
    }
    nonpositive_rows(a, &mut b)?;
    Ok(b.finish())
}

/// For `n ≤ 0` every term of `C(x, F, (1, n))` is a sum of copies of `R/I1`, so
/// the Euler characteristic and the weighted sum of term lengths vanish. The
/// weighted sum of homology lengths is kept as an informational row.
fn nonpositive_rows(a: &Analysis, b: &mut Builder) -> Result<()> {
    let d = a.dim();
    for n in -2..=0 {
        let euler = hsum(a, Variant::C1, 0, n)?;
        b.row("n <= 0: sum (-1)^i h_i(C)(1,n) = 0", Some(n), euler, Relation::Eq, 0);
        let mut terms = 0;
        let mut weighted = 0;
        for i in 0..=d {
            let c = sgn(i) * binomial(d as i64, i as i64);
            terms += c * a.hf(n - i as i64)?;
            weighted += c * a.h(Variant::C1, i, n - i as i64)?;
        }
        b.row("n <= 0: sum (-1)^i C(d,i) l(R/I1I2^(n-i)) = 0", Some(n), terms, Relation::Eq, 0);
        b.info("n <= 0: sum (-1)^i C(d,i) h_i(C)(1,n-i) = 0 (uncorrected)", Some(n), weighted, Relation::Eq, 0);
    }
    Ok(())
}

/// Fitted `g`, `e`, `f` against their homological descriptions.
pub fn check_coefficients(a: &Analysis) -> Result<CheckResult> {
    let mut b = Builder::new("coefficients");
    a.common(&mut b);
    let d = a.dim();
    let ell = a.ell()?;
    let tail = a.tail();
    let g = a.g_plain();
    let e = a.e_plain();
    let f = a.f();
    b.note(format!(
        "g, e in C(n+d-1-j, d-j): g = {:?}, e = {:?}; f in C(n+d-1-i, d-1-i): f = {:?}; g in C(n+d-j, d-j): {:?}",
        g,
        e,
        f,
        a.g_shifted()
    ));
    b.row("g0 = e0", None, g[0], Relation::Eq, e[0]);
    b.row("e0 = l(R/(x))", None, e[0], Relation::Eq, a.len_xi()?);
    let k_len = |i: usize| if i == d { ell } else { 0 };
    for i in 1..=d {
        let mut s1 = 0;
        let mut s2 = 0;
        for n in (i as i64 - 1)..tail {
            let c = binomial(n, i as i64 - 1);
            s1 += c * (a.a1(n + 1)? - hsum(a, Variant::C1, 1, n + 1)?);
            s2 += c * (a.b(n + 1)? - hsum(a, Variant::C1, 2, n + 1)?);
        }
        let k = sgn(d) * k_len(i);
        b.row(&format!("g{} = sum C(n,{}) [l((I1I2^(n+1)+(x))/(x)) - sum_{{j>=1}}] + (-1)^d l(R/K)", i, i - 1), None, g[i], Relation::Eq, s1 + k);
        b.row(&format!("g{} = sum C(n,{}) [l(I1I2^(n+1)/(x)I1I2^n) - sum_{{j>=2}}] + (-1)^d l(R/K)", i, i - 1), None, g[i], Relation::Eq, s2 + k);
    }
    if a.inside_i1() {
        let mut sa = 0;
        let mut sb = 0;
        for n in 1..=tail {
            sa += a.a1(n)?;
            sb += a.b(n)?;
        }
        let mut t1 = 0;
        let mut t2 = 0;
        for j in 1..=d {
            let t = sgn(j) * a.h_d_total(j)?;
            t1 += t;
            if j >= 2 {
                t2 += t;
            }
        }
        b.row("g1 = sum l((I1I2^n+(x))/(x)) - sum_{j>=1} (-1)^j h_j(D)(1,*) - l(R/I1)", None, g[1], Relation::Eq, sa - t1 - ell);
        b.row("g1 = sum l(I1I2^n/(x)I1I2^(n-1)) - sum_{j>=2} (-1)^j h_j(D)(1,*) - l(R/I1)", None, g[1], Relation::Eq, sb - t2 - ell);
    } else {
        b.note(String::from("(x) not inside I1: D-homology formulas for g1 skipped"));
    }
    for i in 0..d {
        b.row(&format!("f{} = e{} - g{} + e{} - g{}", i, i + 1, i + 1, i, i), None, f[i], Relation::Eq, e[i + 1] - g[i + 1] + e[i] - g[i]);
    }
    for i in 0..d {
        let from = (i as i64).max(1);
        let mut s1 = 0;
        let mut s2 = 0;
        for n in from..=tail {
            let c = binomial(n, i as i64);
            let mut hdiff1 = 0;
            let mut hdiff2 = 0;
            for j in 1..=d {
                let t = sgn(j) * (a.h(Variant::C0, j, n)? - a.h(Variant::C1, j, n)?);
                hdiff1 += t;
                if j >= 2 {
                    hdiff2 += t;
                }
            }
            let l = colength(&a.pair.term(n)?.sum(&a.xi)?)? as i128 - colength(&a.pair.i2_power(n)?.sum(&a.xi)?)? as i128;
            let fib = a.hf(n)? - a.hf0(n)?;
            let xq = colength(&*a.x_term(n - 1)?)? as i128 - colength(&*a.x_power(n - 1)?)? as i128;
            s1 += c * (l - hdiff1);
            s2 += c * (fib - xq - hdiff2);
        }
        let k = if i + 1 == d { ell } else { 0 };
        let scope = if i == 0 { " (n >= 1)" } else { "" };
        b.row(&format!("f{} = sum C(n,{}) [l(I2^n/(I1I2^n + (x) cap I2^n)) - sum_{{j>=1}}] - (-1)^d l(R/K){}", i, i, scope), None, f[i], Relation::Eq, s1 - sgn(d) * k);
        b.row(&format!("f{} = sum C(n,{}) [l(I2^n/I1I2^n) - l((x)I2^(n-1)/(x)I1I2^(n-1)) - sum_{{j>=2}}] - (-1)^d l(R/K){}", i, i, scope), None, f[i], Relation::Eq, s2 - sgn(d) * k);
    }
    a.window_note(&mut b);
    Ok(b.finish())
}

/// Estimated depths for the three graded objects; the relative and fiber
/// estimates need `(x) ⊆ I1`.
pub fn depth_reports(a: &Analysis) -> Result<Vec<DepthReport>> {
    let mut out = vec![a.depth(DepthTarget::AssociatedGraded)?];
    if a.inside_i1() {
        out.push(a.depth(DepthTarget::Relative)?);
        out.push(a.depth(DepthTarget::Fiber)?);
    }
    Ok(out)
}

/// Alternating tails of `h_j(D)(1,*)`, bounds on `g1` and `f0` with their
/// equality cases, and the depth lemma, all against window depth estimates.
pub fn check_bounds_and_depth(a: &Analysis) -> Result<Vec<CheckResult>> {
    let d = a.dim();
    let mut out = Vec::new();
    let mut b = Builder::new("rigidity");
    a.common(&mut b);
    b.hyp("(x) inside I1", a.inside_i1());
    if !b.met() {
        out.push(b.finish());
        for id in ["g1-bounds", "f0-bounds", "depth-lemma"] {
            let mut b = Builder::new(id);
            a.common(&mut b);
            b.hyp("(x) inside I1", false);
            out.push(b.finish());
        }
        return Ok(out);
    }
    let rel = a.depth(DepthTarget::Relative)?.estimated_depth;
    let adic = a.depth(DepthTarget::AssociatedGraded)?.estimated_depth;
    let fib = a.depth(DepthTarget::Fiber)?.estimated_depth;
    let totals: Vec<i128> = (0..=d).map(|j| if j == 0 { Ok(0) } else { a.h_d_total(j) }).collect::<Result<_>>()?;
    for i in 1..=d {
        let s: i128 = (i..=d).map(|j| sgn(j - i) * totals[j]).sum();
        b.row(&format!("sum_{{j>={}}} (-1)^(j-{}) h_j(D)(1,*) >= 0", i, i), None, s, Relation::Ge, 0);
        b.iff(&format!("sum_{{j>={}}} = 0 <=> depth G_I1(I2) >= {}", i, d + 1 - i), None, s == 0, rel + i > d);
    }
    b.note(format!("estimated depths: G(I2) = {}, G_I1(I2) = {}, F_I1(I2) = {}", adic, rel, fib));
    a.window_note(&mut b);
    out.push(b.finish());

    let ell = a.ell()?;
    let g = a.g_plain();
    let e = a.e_plain();
    let tail = a.tail();
    let mut sa = 0;
    let mut sb = 0;
    let mut a_tail_zero = true;
    for n in 1..=tail {
        let v = a.a1(n)?;
        sa += v;
        sb += a.b(n)?;
        if n >= 2 && v != 0 {
            a_tail_zero = false;
        }
    }
    let a_one = a.a1(1)?;
    let mut b = Builder::new("g1-bounds");
    a.common(&mut b);
    b.hyp("(x) inside I1", true);
    b.row("g1 >= sum l((I1I2^n+(x))/(x)) - l(R/I1)", None, g[1], Relation::Ge, sa - ell);
    b.iff("equality <=> depth G_I1(I2) = d", None, g[1] == sa - ell, rel == d);
    b.row("g1 <= sum l(I1I2^n/(x)I1I2^(n-1)) - l(R/I1)", None, g[1], Relation::Le, sb - ell);
    b.iff("equality <=> depth G_I1(I2) >= d-1", None, g[1] == sb - ell, rel + 1 >= d);
    b.row("g1 >= -l(R/I1)", None, g[1], Relation::Ge, -ell);
    b.iff("g1 = -l(R/I1) <=> depth G_I1(I2) = d and I1I2^n + (x) = (x) for n >= 1", None, g[1] == -ell, rel == d && a_one == 0 && a_tail_zero);
    let lhs = a.hf(1)?;
    let plus = colength(&*a.pair.term(1)?)? as i128 - colength(&a.pair.term(1)?.sum(&a.xi)?)? as i128;
    let corrected = e[0] - g[1] - ell + plus;
    b.row("l(R/I1I2) >= e0 - g1 - l(R/I1) + l((I1I2+(x))/I1I2)", None, lhs, Relation::Ge, corrected);
    b.iff("equality <=> depth G_I1(I2) = d and I1I2^n + (x) = (x) for n >= 2", None, lhs == corrected, rel == d && a_tail_zero);
    b.info("uncorrected: l(R/I1I2) >= e0 - g1 + l((I1I2+(x))/I1I2)", None, lhs, Relation::Ge, e[0] - g[1] + plus);
    out.push(b.finish());

    let mut b = Builder::new("f0-bounds");
    a.common(&mut b);
    b.hyp("(x) inside I1", true);
    b.hyp("d >= 2", d >= 2);
    b.hyp("(x) cap I1I2 = (x)I1", a.intersection_condition()?);
    if b.met() {
        let f0 = a.f()[0];
        let i2 = a.pair.i2();
        let upper = e[1] - e[0] + (a.hf(1)? - colength(i2)? as i128) + colength(i2)? as i128 - (d as i128 - 1) * ell;
        b.row("f0 <= e1 - e0 + l(I2/I1I2) + l(R/I2) - (d-1) l(R/I1)", None, f0, Relation::Le, upper);
        b.iff("equality <=> depth G_I1(I2) = d and I1I2^n + (x) = (x) for n >= 2", None, f0 == upper, rel == d && a_tail_zero);
        let lower = e[1] - sb + ell;
        b.row("f0 >= e1 - sum l(I1I2^n/(x)I1I2^(n-1)) + l(R/I1)", None, f0, Relation::Ge, lower);
        b.iff("equality <=> depth G_I1(I2) >= d-1", None, f0 == lower, rel + 1 >= d);
    }
    out.push(b.finish());

    let mut b = Builder::new("depth-lemma");
    a.common(&mut b);
    b.hyp("(x) inside I1", true);
    if adic < rel {
        b.row("depth G(I2) < depth G_I1(I2) => depth F = depth G(I2) + 1", None, fib as i128, Relation::Eq, adic as i128 + 1);
    } else {
        b.info("depth G(I2) >= depth G_I1(I2): no consequence", None, adic as i128, Relation::Ge, rel as i128);
    }
    b.note(format!("estimated depths: G(I2) = {}, G_I1(I2) = {}, F_I1(I2) = {}", adic, rel, fib));
    out.push(b.finish());
    Ok(out)
}

/// Vanishing and length statements for minimal and almost minimal
/// multiplicity, with the depth consequences under the window proxy.
pub fn check_mm_amm_structure(a: &Analysis) -> Result<CheckResult> {
    let mut b = Builder::new("mm-amm");
    a.common(&mut b);
    let cls = a.classify()?;
    b.hyp("minimal or almost minimal multiplicity", cls.label != Label::Neither);
    if !b.met() {
        b.note(format!("delta = {}", cls.delta));
        return Ok(b.finish());
    }
    let d = a.dim();
    let inside = a.inside_i1();
    let depths = if inside {
        Some((
            a.depth(DepthTarget::AssociatedGraded)?.estimated_depth,
            a.depth(DepthTarget::Relative)?.estimated_depth,
            a.depth(DepthTarget::Fiber)?.estimated_depth,
        ))
    } else {
        None
    };
    match cls.label {
        Label::Minimal => {
            for n in 1..=a.window {
                b.row("l(I1I2^n/(x)I1I2^(n-1)) = 0", Some(n), a.b(n)?, Relation::Eq, 0);
                let cap = a.cap_colength(&*a.pair.term(n)?)?;
                b.row("l(R/((x) cap I1I2^n)) = l(R/(x)I1I2^(n-1))", Some(n), cap, Relation::Eq, colength(&*a.x_term(n - 1)?)? as i128);
            }
            if let Some((adic, rel, fib)) = depths {
                for i in 1..=d {
                    b.row(&format!("h_{}(D)(1,*) = 0", i), None, a.h_d_total(i)?, Relation::Eq, 0);
                }
                b.row("depth G_I1(I2) = d", None, rel as i128, Relation::Eq, d as i128);
                for i in 0..d.saturating_sub(1) {
                    b.iff(&format!("depth F = {} <=> depth G(I2) = {}", i + 1, i), None, fib == i + 1, adic == i);
                }
                b.iff(&format!("depth G(I2) = {} => depth F = {}", d - 1, d), None, adic != d - 1 || fib == d, true);
                b.iff(&format!("depth F = {} <=> depth G(I2) = {} or {}", d, d - 1, d), None, fib == d, adic + 1 >= d);
                b.info(&format!("uncorrected: depth F = {} <=> depth G(I2) = {}", d, d - 1), None, (fib == d) as i128, Relation::Iff, (adic == d - 1) as i128);
            }
        }
        Label::AlmostMinimal => {
            for n in 1..=a.window {
                b.row("l(I1I2^n/(x)I1I2^(n-1)) <= 1", Some(n), a.b(n)?, Relation::Le, 1);
            }
            if let Some((adic, _, fib)) = depths {
                for n in 1..=a.window {
                    b.row("h_1(D)(1,n) <= 1", Some(n), a.h(Variant::D1, 1, n)?, Relation::Le, 1);
                }
                if a.intersection_condition()? {
                    for i in 2..=d {
                        b.row(&format!("h_{}(D)(1,*) = 0", i), None, a.h_d_total(i)?, Relation::Eq, 0);
                    }
                    for i in 1..d.saturating_sub(1) {
                        b.iff(&format!("depth F = {} <=> depth G(I2) = {}", i + 1, i), None, fib == i + 1, adic == i);
                    }
                    let s = a.red.s_value as i64;
                    let mut all_one = true;
                    for n in 1..=s {
                        let den = colength(&*a.x_power(n - 1)?)? as i128;
                        let num = colength(&a.pair.term(n)?.sum(&*a.x_power(n - 1)?)?)? as i128;
                        let len = den - num;
                        all_one &= len == 1;
                        b.iff("l((I1I2^n + (x)I2^(n-1))/(x)I2^(n-1)) = 1 <=> h_1(K)(n) = 0", Some(n), len == 1, a.h(Variant::KoszulFiber, 1, n)? == 0);
                    }
                    b.iff("F Cohen-Macaulay <=> depth G(I2) >= d-1 and the lengths above are 1", None, fib == d, adic + 1 >= d && all_one);
                } else {
                    b.note(String::from("(x) cap I1I2 != (x)I1: vanishing for i >= 2 not asserted"));
                }
            }
        }
        Label::Neither => unreachable!(),
    }
    if !inside {
        b.note(String::from("(x) not inside I1: D and fiber clauses skipped"));
    }
    a.window_note(&mut b);
    Ok(b.finish())
}

/// Number of series terms compared.
pub const SERIES_TERMS: i64 = 10;

/// Closed forms of the Hilbert series of `{I1 I2^n}` and of the fiber cone for
/// minimal and almost minimal multiplicity.
/// With `expect` set, the classification must agree with it.
pub fn check_series(a: &Analysis, expect: Option<Label>) -> Result<CheckResult> {
    let id = match expect {
        None => "series",
        Some(Label::Minimal) => "series-mm",
        Some(Label::AlmostMinimal) => "series-amm",
        Some(Label::Neither) => return Err(Error::InvalidArgument(String::from("no closed form for label neither"))),
    };
    let mut b = Builder::new(id);
    a.common(&mut b);
    let d = a.dim();
    let cls = a.classify()?;
    if let Some(l) = expect {
        b.hyp(&format!("classified as {}", l.tag()), cls.label == l);
    }
    b.hyp("(x) inside I1", a.inside_i1());
    let amm_ok = cls.label == Label::AlmostMinimal && a.intersection_condition()?;
    b.hyp("minimal, or almost minimal with (x) cap I1I2 = (x)I1 and d >= 2", cls.label == Label::Minimal || (amm_ok && d >= 2));
    if !b.met() {
        let ell = a.ell()?;
        b.note(format!("minimal-form numerator {}", RationalSeries::new(vec![ell, a.e0() - ell], d as u32 + 1).numerator_string()));
        return Ok(b.finish());
    }
    let ell = a.ell()?;
    let e0 = a.e0();
    let di = d as i64;
    let es = a.e_shifted();
    let gs = a.g_shifted();
    let f = a.f();
    let values: Vec<i128> = (0..=SERIES_TERMS).map(|n| a.hf(n)).collect::<Result<_>>()?;
    let adic: Vec<i128> = (0..=SERIES_TERMS).map(|n| a.hf0(n)).collect::<Result<_>>()?;
    let fiber: Vec<i128> = (0..=SERIES_TERMS).map(|n| a.hf(n).and_then(|h| Ok(h - a.hf0(n)?))).collect::<Result<_>>()?;
    let computed = a.h1.series(0);
    let minimal = cls.label == Label::Minimal;
    let (closed, uncorrected, s) = if minimal {
        b.note(String::from("minimal multiplicity"));
        let closed = RationalSeries::new(vec![ell, e0 - ell], d as u32 + 1);
        (closed, RationalSeries::new(vec![ell, e0 - ell], d as u32), 0)
    } else {
        let s = a.red.s_value as usize;
        b.note(format!("almost minimal multiplicity, s = {}", s));
        let mut num = vec![0i128; s + 2];
        num[0] = ell;
        num[1] = e0 - ell - 1;
        num[s + 1] += 1;
        let mut pnum = vec![0i128; s + 2];
        pnum[0] = ell;
        pnum[1] = e0 - ell;
        pnum[s + 1] += 1;
        (RationalSeries::new(num, d as u32 + 1), RationalSeries::new(pnum, d as u32 + 1), s)
    };
    b.note(format!("computed series {}, closed form {}", computed.reduced(), closed.reduced()));
    let exp = closed.expand(SERIES_TERMS as usize + 1);
    let pexp = uncorrected.expand(SERIES_TERMS as usize + 1);
    for n in 0..=SERIES_TERMS {
        let k = n as usize;
        let pointwise = if minimal {
            e0 * binomial(n + di, di) - (e0 - ell) * binomial(n + di - 1, di - 1)
        } else {
            let base = (e0 - 1) * binomial(n + di - 1, di) + ell * binomial(n + di - 1, di - 1);
            if n <= s as i64 {
                base
            } else {
                base + binomial(di + n - s as i64 - 1, di)
            }
        };
        b.row("H(1,n) = closed pointwise formula", Some(n), values[k], Relation::Eq, pointwise);
        b.row("H(1,n) = coefficient of closed series", Some(n), values[k], Relation::Eq, exp[k]);
        b.info("H(1,n) = coefficient of uncorrected series", Some(n), values[k], Relation::Eq, pexp[k]);
        b.row("H(F,n) = closed series coefficient - H(0,n)", Some(n), fiber[k], Relation::Eq, exp[k] - adic[k]);
    }
    b.row("computed series = closed form", None, (computed.reduced() == closed.reduced()) as i128, Relation::Eq, 1);
    if minimal {
        b.row("g1 = e0 - l(R/I1)", None, gs[1], Relation::Eq, e0 - ell);
        for i in 2..=d {
            b.row(&format!("g{} = 0", i), None, gs[i], Relation::Eq, 0);
        }
        b.row("f0 = e1 - e0 + l(R/I1)", None, f[0], Relation::Eq, es[1] - e0 + ell);
        for i in 1..d {
            b.row(&format!("f{} = e{}", i, i + 1), None, f[i], Relation::Eq, es[i + 1]);
        }
    } else {
        let si = s as i64;
        b.row("g1 = e0 - l(R/I1) + s", None, gs[1], Relation::Eq, e0 - ell + si as i128);
        for i in 2..=d {
            b.row(&format!("g{} = C(s+1,{})", i, i), None, gs[i], Relation::Eq, binomial(si + 1, i as i64));
        }
        b.row("f0 = e1 - e0 + l(R/I1) - s", None, f[0], Relation::Eq, es[1] - e0 + ell - si as i128);
        for i in 1..d {
            b.row(&format!("f{} = e{} - C(s+1,{})", i, i + 1, i + 1), None, f[i], Relation::Eq, es[i + 1] - binomial(si + 1, i as i64 + 1));
            b.info(&format!("uncorrected: f{} = e{} - C(s+1,{})", i, i + 1, i), None, f[i], Relation::Eq, es[i + 1] - binomial(si + 1, i as i64));
        }
    }
    b.note(String::from("g, e in C(n+d-j, d-j); f in C(n+d-1-i, d-1-i)"));
    Ok(b.finish())
}

/// `d^2 = 0`, Euler characteristics, rigidity, eventual vanishing, the
/// alternating sum for `n ≤ 0`, and length additivity along
/// `0 → K(x°)(n) → D(n) → C(0, n) → 0`.
pub fn check_structure(a: &Analysis) -> Result<CheckResult> {
    let mut b = Builder::new("structure");
    a.common(&mut b);
    let d = a.dim();
    let inside = a.inside_i1();
    let mut variants = vec![Variant::C1, Variant::C0];
    if inside {
        variants.push(Variant::D1);
        variants.push(Variant::KoszulFiber);
    }
    for &v in &variants {
        for n in -2..=a.window {
            let s = a.summary(v, n)?;
            b.row(&format!("{}: d^2 = 0", v.tag()), Some(n), s.d_squared_zero as i128, Relation::Eq, 1);
            let alt = |x: &[usize]| x.iter().enumerate().map(|(i, &v)| sgn(i) * v as i128).sum::<i128>();
            b.row(&format!("{}: sum (-1)^i h_i = sum (-1)^i l(term_i)", v.tag()), Some(n), alt(&s.homology), Relation::Eq, alt(&s.terms));
        }
    }
    let tail = a.tail();
    for i in 1..=d {
        b.row(&format!("h_{}(C)(1,n) = 0 at the tail", i), Some(tail), a.h(Variant::C1, i, tail)?, Relation::Eq, 0);
        if inside {
            b.row(&format!("h_{}(D)(1,n) = 0 at the tail", i), Some(tail), a.h(Variant::D1, i, tail)?, Relation::Eq, 0);
        }
    }
    if inside {
        let totals: Vec<i128> = (0..=d).map(|j| if j == 0 { Ok(0) } else { a.h_d_total(j) }).collect::<Result<_>>()?;
        for j in 1..=d {
            if totals[j] == 0 {
                let rest: i128 = totals[j..].iter().sum();
                b.row(&format!("h_{}(D) = 0 => h_i(D) = 0 for i >= {}", j, j), None, rest, Relation::Eq, 0);
            }
        }
        for n in 0..=a.window {
            let dl = &a.summary(Variant::D1, n)?.terms;
            let kl = &a.summary(Variant::KoszulFiber, n)?.terms;
            let cl = &a.summary(Variant::C0, n)?.terms;
            for i in 0..=d {
                b.row(&format!("l(D_{}) = l(K_{}) + l(C0_{})", i, i, i), Some(n), dl[i] as i128, Relation::Eq, (kl[i] + cl[i]) as i128);
            }
        }
    }
    nonpositive_rows(a, &mut b)?;
    Ok(b.finish())
}

/// Homology lengths against their closed forms for `n` in `[lo, hi]`.
pub fn check_homology(a: &Analysis, lo: i64, hi: i64) -> Result<CheckResult> {
    let mut b = Builder::new("homology");
    a.common(&mut b);
    for n in lo..=hi {
        for c in crate::complex::cross_check_homology(&a.x, &a.pair, n)? {
            b.row(c.clause, Some(c.n), c.computed as i128, Relation::Eq, c.expected as i128);
        }
    }
    Ok(b.finish())
}

/// All checkers on one instance.
pub fn run_all(a: &Analysis) -> Result<Vec<CheckResult>> {
    let mut out = vec![
        check_homology(a, -2, a.window)?,
        check_min_mult_equiv(a)?,
        check_fundamental_lemma(a)?,
        check_alternating_sum(a)?,
        check_coefficients(a)?,
    ];
    out.extend(check_bounds_and_depth(a)?);
    out.push(check_mm_amm_structure(a)?);
    out.push(check_series(a, None)?);
    out.push(check_structure(a)?);
    Ok(out)
}

/// The surjection `(R/I1)^d → (x)/I1 (x)` fails to be injective exactly when
/// `ℓ((x)/I1 (x)) < d ℓ(R/I1)`.
pub fn noninjective_regression(pair: &FiltrationPair, x: &ParameterSequence) -> Result<CheckResult> {
    let mut b = Builder::new("noninjective-map");
    let xi = x.ideal()?;
    let ell = colength(pair.i1())? as i128;
    let quotient = colength(&pair.i1().product(&xi)?)? as i128 - colength(&xi)? as i128;
    let d = x.len() as i128;
    b.row("l((x)/I1(x)) < d l(R/I1)", None, quotient, Relation::Lt, d * ell);
    b.row("(x) inside I1", None, x.inside(pair.i1())? as i128, Relation::Eq, 0);
    b.note(format!("kernel length {}", d * ell - quotient));
    Ok(b.finish())
}

/// `(x)` is a reduction, `I1 I2 = I1 (x)`, `e0 - ℓ(R/I1 I2) + d ℓ(R/I1) > 1`, and
/// `(x) ⊄ I1`.
pub fn outside_regression(pair: &FiltrationPair, x: &ParameterSequence) -> Result<CheckResult> {
    let mut b = Builder::new("outside-reduction");
    let probe = crate::reduction::default_probe_bound(pair.i2())?;
    let reduces = is_reduction(x, pair.i2(), probe)?.is_some();
    b.row("(x) is a reduction of I2", None, reduces as i128, Relation::Eq, 1);
    let xi = x.ideal()?;
    let top = colength(&*pair.term(1)?)? as i128;
    let low = colength(&pair.i1().product(&xi)?)? as i128;
    b.row("l(R/I1I2) = l(R/I1(x))", None, top, Relation::Eq, low);
    let e0 = colength(&xi)? as i128;
    let ell = colength(pair.i1())? as i128;
    b.row("e0 - l(R/I1I2) + d l(R/I1) > 1", None, e0 - top + x.len() as i128 * ell, Relation::Gt, 1);
    b.row("(x) inside I1", None, x.inside(pair.i1())? as i128, Relation::Eq, 0);
    b.note(format!("e0 = l(R/(x)) = {}", e0));
    Ok(b.finish())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::catalog;

    fn analysis(name: &str) -> Analysis {
        let inst = catalog::load(name).unwrap();
        Analysis::from_instance(&inst, &AnalysisOptions::default()).unwrap()
    }

    fn report(r: &CheckResult) -> String {
        let mut s = format!("{} {}\n", r.id, r.verdict.tag());
        for h in &r.hypotheses {
            s += &format!("  hyp {} {}\n", h.name, h.holds);
        }
        for w in &r.witness {
            if !w.holds() {
                s += &format!("  {}{} n={:?}: {} {} {}\n", if w.required { "" } else { "(info) " }, w.label, w.n, w.lhs, w.relation.symbol(), w.rhs);
            }
        }
        for n in &r.notes {
            s += &format!("  note {}\n", n);
        }
        s
    }

    #[test]
    fn regular_classification() {
        let a = analysis("regular");
        let c = a.classify().unwrap();
        assert_eq!((c.delta, c.label), (0, Label::Minimal));
        assert_eq!(a.g_shifted(), vec![1, 0, 0]);
        assert_eq!(a.f(), vec![1, 0]);
    }

    #[test]
    fn catalog_labels() {
        for (name, label) in [("mm", Label::Minimal), ("amm", Label::AlmostMinimal), ("neither", Label::Neither), ("outside", Label::Minimal)] {
            assert_eq!(analysis(name).classify().unwrap().label, label, "{}", name);
        }
    }

    #[test]
    fn catalog_has_no_failures() {
        for name in ["regular", "mm", "amm", "neither", "outside"] {
            let a = analysis(name);
            for r in run_all(&a).unwrap() {
                assert_ne!(r.verdict, Verdict::Fail, "[{}] {}", name, report(&r));
            }
        }
    }

    #[test]
    fn hypotheses_gate_checks() {
        let a = analysis("outside");
        let results = run_all(&a).unwrap();
        let verdict = |id: &str| results.iter().find(|r| r.id == id).unwrap().verdict;
        assert_eq!(verdict("g1-bounds"), Verdict::HypothesesNotMet);
        assert_eq!(verdict("series"), Verdict::HypothesesNotMet);
        assert_eq!(verdict("fundamental"), Verdict::Pass);
        let n = analysis("neither");
        assert_eq!(check_series(&n, None).unwrap().verdict, Verdict::HypothesesNotMet);
        assert_eq!(check_mm_amm_structure(&n).unwrap().verdict, Verdict::HypothesesNotMet);
    }

    #[test]
    fn uncorrected_forms_recorded_as_informational() {
        let a = analysis("regular");
        let r = check_structure(&a).unwrap();
        let loose: Vec<_> = r.witness.iter().filter(|w| !w.required && !w.holds()).collect();
        assert!(!loose.is_empty());
        assert!(loose.iter().all(|w| w.lhs == -2));
        let g = check_bounds_and_depth(&a).unwrap();
        let g1 = g.iter().find(|r| r.id == "g1-bounds").unwrap();
        assert!(g1.witness.iter().any(|w| !w.required && w.lhs == 3 && w.rhs == 4));
    }

    #[test]
    fn depth_estimates() {
        let n = analysis("neither");
        let d: Vec<usize> = depth_reports(&n).unwrap().iter().map(|r| r.estimated_depth).collect();
        assert_eq!(d, vec![0, 2, 1]);
        let r = analysis("regular");
        assert!(depth_reports(&r).unwrap().iter().all(|r| r.estimated_depth == 2));
        assert!(analysis("outside").depth(DepthTarget::Relative).is_err());
    }

    #[test]
    fn amm_series() {
        let a = analysis("amm");
        assert_eq!(a.red.s_value, 1);
        assert_eq!(a.e0(), 9);
        let r = check_series(&a, Some(Label::AlmostMinimal)).unwrap();
        assert_eq!(r.verdict, Verdict::Pass);
        assert_eq!(a.h1.series(0).reduced(), RationalSeries::new(vec![1, 7, 1], 3).reduced());
    }

    #[test]
    fn regressions() {
        let e = catalog::load("noninjective").unwrap();
        let r = noninjective_regression(&e.pair().unwrap(), &e.sequence().unwrap()).unwrap();
        assert_eq!(r.verdict, Verdict::Pass, "{}", report(&r));
        let e = catalog::load("outside").unwrap();
        let r = outside_regression(&e.pair().unwrap(), &e.sequence().unwrap()).unwrap();
        assert_eq!(r.verdict, Verdict::Pass, "{}", report(&r));
    }
}
