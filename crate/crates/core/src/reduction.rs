//! Minimal reductions, reduction numbers and superficiality checks.
//!
//! Every equality `(x) A = B` tested here has `(x) A ⊆ B` for free, so it is
//! decided by Nakayama: equality holds iff `B = (x) A + m B`, and the right side
//! contains a power of `m`, which keeps the computation inside truncated bases.

use alloc::collections::BTreeMap;
use alloc::string::String;
use alloc::sync::Arc;
use alloc::vec::Vec;
use core::fmt::Write;

use rand_chacha::ChaCha8Rng;
use rand_core::{RngCore, SeedableRng};

use crate::complex::ParameterSequence;
use crate::error::{Error, Result};
use crate::hilbert::{colength, FiltrationPair};
use crate::ideal::Ideal;
use crate::poly::Polynomial;

/// `ℓ(B / ((x) A + m B))`, the number of minimal generators of `B` missed by `(x) A`.
fn nakayama_gap(xs: &[Polynomial], lower: &Ideal, upper: &Ideal) -> Result<usize> {
    let ring = upper.ring();
    let bound = upper.index().ok_or(Error::NotFiniteColength)? + 1;
    let mut gens = Vec::new();
    for x in xs {
        for g in lower.generators() {
            gens.push(x.mul(g)?);
        }
    }
    for v in 0..ring.nvars() {
        let var = Polynomial::var(ring, v);
        for g in upper.generators() {
            gens.push(var.mul(g)?);
        }
    }
    let rhs = Ideal::with_bound(ring, gens, bound)?;
    Ok(colength(&rhs)? - colength(upper)?)
}

/// Least `r ≤ probe` with `(x) I2^r = I2^{r+1}`, with the last gap seen.
fn probe_reduction(x: &ParameterSequence, i2: &Ideal, probe: u32) -> Result<(Option<u32>, usize)> {
    let ring = i2.ring();
    if x.len() != ring.nvars() || !i2.is_m_primary() {
        return Ok((None, usize::MAX));
    }
    let mut lower = Ideal::unit(ring);
    let mut upper = i2.clone();
    let mut gap = usize::MAX;
    for r in 0..=probe {
        gap = nakayama_gap(x.elements(), &lower, &upper)?;
        if gap == 0 {
            return Ok((Some(r), 0));
        }
        let next = upper.product(i2)?.with_basis_generators();
        lower = core::mem::replace(&mut upper, next);
    }
    Ok((None, gap))
}

/// Least `r ≤ probe` with `(x) I2^r = I2^{r+1}`, or `None`.
///
/// A sequence whose length differs from the number of variables is never a
/// minimal reduction.
pub fn is_reduction(x: &ParameterSequence, i2: &Ideal, probe: u32) -> Result<Option<u32>> {
    Ok(probe_reduction(x, i2, probe)?.0)
}

/// Default cap on reduction-number probes: `ℓ(R/I2) + 2`.
pub fn default_probe_bound(i2: &Ideal) -> Result<u32> {
    Ok(colength(i2)? as u32 + 2)
}

/// `s(x) = min{n : (x) I1 I2^n = I1 I2^{n+1}}`, confirmed again at `n + 1`.
pub fn s_value(x: &ParameterSequence, pair: &FiltrationPair, probe: u32) -> Result<u32> {
    for n in 0..=probe as i64 {
        if nakayama_gap(x.elements(), &*pair.term(n)?, &*pair.term(n + 1)?)? == 0 {
            if nakayama_gap(x.elements(), &*pair.term(n + 1)?, &*pair.term(n + 2)?)? != 0 {
                return Err(Error::HypothesisViolated(String::from("(x) is not a reduction of I2")));
            }
            return Ok(n as u32);
        }
    }
    Err(Error::ProbeBoundExceeded(probe as usize))
}

/// One `(r, s)` cell of a superficiality window.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct SuperficialCell {
    pub r: u32,
    pub s: u32,
    pub holds: bool,
}

/// Window verdict for `x R ∩ I1^s I2^r = x I1^s I2^{r-1}`, read modulo the
/// preceding elements of a sequence.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SuperficialVerdict {
    pub element: usize,
    pub r_window: u32,
    pub s_window: u32,
    pub cells: Vec<SuperficialCell>,
    /// Least `r0` such that every cell with `r ≥ r0` holds.
    pub r0: Option<u32>,
}

impl SuperficialVerdict {
    /// Whether some row of the window is stable from there on.
    pub fn window_verified(&self) -> bool {
        self.r0.is_some()
    }
}

struct Grid<'a> {
    pair: &'a FiltrationPair,
    i1_powers: Vec<Arc<Ideal>>,
    cells: BTreeMap<(u32, u32), Arc<Ideal>>,
}

impl<'a> Grid<'a> {
    fn new(pair: &'a FiltrationPair) -> Self {
        Grid { pair, i1_powers: alloc::vec![Arc::new(Ideal::unit(pair.ring()))], cells: BTreeMap::new() }
    }

    /// `I1^s I2^r`.
    fn get(&mut self, s: u32, r: u32) -> Result<Arc<Ideal>> {
        match s {
            0 => return self.pair.i2_power(r as i64),
            1 => return self.pair.term(r as i64),
            _ => {}
        }
        if let Some(j) = self.cells.get(&(s, r)) {
            return Ok(j.clone());
        }
        while self.i1_powers.len() <= s as usize {
            let last = self.i1_powers[self.i1_powers.len() - 1].clone();
            self.i1_powers.push(Arc::new(last.product(self.pair.i1())?.with_basis_generators()));
        }
        let j = if r == 0 {
            self.i1_powers[s as usize].clone()
        } else {
            let prev = self.get(s, r - 1)?;
            Arc::new(prev.product(self.pair.i2())?.with_basis_generators())
        };
        self.cells.insert((s, r), j.clone());
        Ok(j)
    }
}

fn verdict_for(
    x: &Polynomial,
    previous: &[Polynomial],
    element: usize,
    grid: &mut Grid<'_>,
    r_window: u32,
    s_window: u32,
) -> Result<SuperficialVerdict> {
    let ring = grid.pair.ring().clone();
    let p = if previous.is_empty() { None } else { Some(Ideal::new(&ring, previous.to_vec())?) };
    let p_colon = match &p {
        Some(p) if !x.is_zero() => Some(p.colon_poly_elim(x)?),
        _ => None,
    };
    let mut cells = Vec::new();
    for r in 1..=r_window {
        for s in 0..=s_window {
            let holds = if x.is_zero() {
                false
            } else {
                let j = grid.get(s, r)?;
                let k = grid.get(s, r - 1)?;
                match (&p, &p_colon) {
                    (Some(p), Some(pc)) => {
                        let lhs = j.sum(p)?.colon_poly(x)?;
                        colength(&lhs)? == colength(&k.sum(pc)?)?
                    }
                    _ => colength(&j.colon_poly(x)?)? == colength(&k)?,
                }
            };
            cells.push(SuperficialCell { r, s, holds });
        }
    }
    let mut r0 = None;
    for r in (1..=r_window).rev() {
        if cells.iter().filter(|c| c.r == r).all(|c| c.holds) {
            r0 = Some(r);
        } else {
            break;
        }
    }
    Ok(SuperficialVerdict { element, r_window, s_window, cells, r0 })
}

/// Tests `x R ∩ I1^s I2^r = x I1^s I2^{r-1}` for `1 ≤ r ≤ r_window`, `0 ≤ s ≤ s_window`.
///
/// Both sides are compared through `(I1^s I2^r : x) ⊇ I1^s I2^{r-1}`. The zero
/// element fails every cell.
pub fn check_superficial(x: &Polynomial, pair: &FiltrationPair, r_window: u32, s_window: u32) -> Result<SuperficialVerdict> {
    let mut grid = Grid::new(pair);
    verdict_for(x, &[], 0, &mut grid, r_window, s_window)
}

/// Per-element verdicts, each element read modulo the ones before it.
pub fn check_superficial_sequence(
    x: &ParameterSequence,
    pair: &FiltrationPair,
    r_window: u32,
    s_window: u32,
) -> Result<Vec<SuperficialVerdict>> {
    let mut grid = Grid::new(pair);
    let elems = x.elements();
    (0..elems.len()).map(|i| verdict_for(&elems[i], &elems[..i], i, &mut grid, r_window, s_window)).collect()
}

/// Search and verification knobs.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct ReductionOptions {
    pub constrain_inside_i1: bool,
    pub trials: u32,
    pub seed: u64,
    /// Defaults to `ℓ(R/I2) + 2`.
    pub probe_bound: Option<u32>,
    /// `(r_window, s_window)`; defaults to `(reduction_number + d + 3, 2)`.
    pub superficial_window: Option<(u32, u32)>,
    pub check_superficial: bool,
}

impl Default for ReductionOptions {
    fn default() -> Self {
        ReductionOptions {
            constrain_inside_i1: false,
            trials: 16,
            seed: 0,
            probe_bound: None,
            superficial_window: None,
            check_superficial: true,
        }
    }
}

#[derive(Clone, Debug)]
pub struct ReductionData {
    pub x: ParameterSequence,
    pub reduction_number: u32,
    pub s_value: u32,
    pub superficial: Vec<SuperficialVerdict>,
    pub inside_i1: bool,
    pub seed: u64,
    pub trial: u32,
}

/// Completes the data for a known reduction `x` of `I2`.
pub fn reduction_data(x: ParameterSequence, pair: &FiltrationPair, opts: &ReductionOptions, trial: u32) -> Result<ReductionData> {
    let probe = match opts.probe_bound {
        Some(p) => p,
        None => default_probe_bound(pair.i2())?,
    };
    let reduction_number = is_reduction(&x, pair.i2(), probe)?.ok_or(Error::ProbeBoundExceeded(probe as usize))?;
    let s = s_value(&x, pair, probe)?;
    let superficial = if opts.check_superficial {
        let (rw, sw) = opts.superficial_window.unwrap_or((reduction_number + pair.dim() as u32 + 3, 2));
        check_superficial_sequence(&x, pair, rw, sw)?
    } else {
        Vec::new()
    };
    let inside_i1 = x.inside(pair.i1())?;
    Ok(ReductionData { x, reduction_number, s_value: s, superficial, inside_i1, seed: opts.seed, trial })
}

/// Draws `d` random combinations of generators of `I2` (or of `I1 ∩ I2`) until one
/// is a reduction of `I2`.
///
/// Trial `t` uses the ChaCha8 stream `t` of the master seed, so a run is replayable
/// from `(seed, trial)`.
pub fn find_minimal_reduction(i2: &Ideal, i1: &Ideal, opts: &ReductionOptions) -> Result<ReductionData> {
    let ring = i2.ring().clone();
    let pair = FiltrationPair::new(i1.clone(), i2.clone())?;
    let pool: Vec<Polynomial> = if opts.constrain_inside_i1 {
        i1.intersect(i2)?.groebner_basis()
    } else {
        i2.generators().to_vec()
    };
    let probe = match opts.probe_bound {
        Some(p) => p,
        None => default_probe_bound(i2)?,
    };
    let p = ring.field().modulus() as u64;
    let mut best: Option<(usize, ParameterSequence)> = None;
    for trial in 0..opts.trials {
        let mut rng = ChaCha8Rng::seed_from_u64(opts.seed);
        rng.set_stream(trial as u64);
        let mut elems = Vec::with_capacity(ring.nvars());
        for _ in 0..ring.nvars() {
            let mut f = Polynomial::zero(&ring);
            for g in &pool {
                let c = (rng.next_u64() % p) as u32;
                f = f.add(&g.scale(c))?;
            }
            elems.push(f);
        }
        let x = ParameterSequence::new(elems, i2)?;
        let (found, gap) = probe_reduction(&x, i2, probe)?;
        if found.is_some() {
            return reduction_data(x, &pair, opts, trial);
        }
        if best.as_ref().is_none_or(|(g, _)| gap < *g) {
            best = Some((gap, x));
        }
    }
    let mut report = String::new();
    if let Some((gap, x)) = best {
        let _ = write!(report, "x = (");
        for (i, e) in x.elements().iter().enumerate() {
            let _ = write!(report, "{}{}", if i > 0 { ", " } else { "" }, e);
        }
        let _ = write!(report, "); ℓ(I2^(r+1) / ((x) I2^r + m I2^(r+1))) = {} at r = {}", gap, probe);
    }
    Err(Error::TrialsExhausted { trials: opts.trials, best: report })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::PrimeField;
    use crate::parse::parse_poly_list;
    use crate::poly::PolyRing;

    fn ring(vars: &[&str]) -> Arc<crate::poly::PolyRing> {
        PolyRing::new(vars, PrimeField::default()).unwrap()
    }

    fn seq(r: &Arc<PolyRing>, text: &str, i2: &Ideal) -> ParameterSequence {
        ParameterSequence::new(parse_poly_list(text, r).unwrap(), i2).unwrap()
    }

    /// Direct check of `(x) I2^r = I2^{r+1}` by colengths.
    fn reduction_by_colength(x: &ParameterSequence, i2: &Ideal, probe: u32) -> Option<u32> {
        let r = i2.ring();
        let xi = Ideal::new(r, x.elements().to_vec()).unwrap();
        (0..=probe).find(|&k| {
            let lower = xi.product(&i2.power(k as i64).unwrap()).unwrap();
            let upper = i2.power(k as i64 + 1).unwrap();
            lower.colength().is_some() && lower.colength() == upper.colength()
        })
    }

    #[test]
    fn variables_reduce_the_maximal_ideal() {
        let r = ring(&["x", "y", "z"]);
        let m = Ideal::maximal_power(&r, 1);
        assert_eq!(is_reduction(&seq(&r, "x, y, z", &m), &m, 4).unwrap(), Some(0));
    }

    #[test]
    fn squares_reduce_m2_after_one_step() {
        let r = ring(&["x", "y"]);
        let m2 = Ideal::maximal_power(&r, 2);
        let x = seq(&r, "x^2, y^2", &m2);
        assert_eq!(is_reduction(&x, &m2, 6).unwrap(), Some(1));
        assert_eq!(reduction_by_colength(&x, &m2, 6), Some(1));
    }

    #[test]
    fn short_sequence_is_not_a_minimal_reduction() {
        let r = ring(&["x", "y"]);
        let m = Ideal::maximal_power(&r, 1);
        assert_eq!(is_reduction(&seq(&r, "x", &m), &m, 4).unwrap(), None);
    }

    #[test]
    fn degenerate_pair_never_reduces() {
        let r = ring(&["x", "y"]);
        let m2 = Ideal::maximal_power(&r, 2);
        let x = seq(&r, "x^2, x*y", &m2);
        assert_eq!(is_reduction(&x, &m2, 6).unwrap(), None);
        assert_eq!(reduction_by_colength(&x, &m2, 6), None);
    }

    #[test]
    fn regular_s_value() {
        let r = ring(&["x", "y"]);
        let m = Ideal::maximal_power(&r, 1);
        let pair = FiltrationPair::new(m.clone(), m.clone()).unwrap();
        assert_eq!(s_value(&seq(&r, "x, y", &m), &pair, 4).unwrap(), 0);
    }

    #[test]
    fn superficial_linear_form() {
        let r = ring(&["x", "y"]);
        let m = Ideal::maximal_power(&r, 1);
        let pair = FiltrationPair::new(m.clone(), m).unwrap();
        let x = crate::parse::parse_poly("3*x + 5*y", &r).unwrap();
        let v = check_superficial(&x, &pair, 4, 3).unwrap();
        assert!(v.cells.iter().all(|c| c.holds));
        assert_eq!(v.r0, Some(1));
    }

    #[test]
    fn zero_is_never_superficial() {
        let r = ring(&["x", "y"]);
        let m = Ideal::maximal_power(&r, 1);
        let pair = FiltrationPair::new(m.clone(), m).unwrap();
        let v = check_superficial(&Polynomial::zero(&r), &pair, 3, 1).unwrap();
        assert!(v.cells.iter().all(|c| !c.holds));
        assert!(!v.window_verified());
    }

    #[test]
    fn non_superficial_element_detected() {
        let r = ring(&["x", "y"]);
        let m = Ideal::maximal_power(&r, 1);
        let pair = FiltrationPair::adic(m.clone()).unwrap();
        // x^2 is in m^2, so x R ∩ m^r ≠ x m^{r-1}.
        let x = crate::parse::parse_poly("x^2", &r).unwrap();
        assert!(!check_superficial(&x, &pair, 3, 0).unwrap().window_verified());
    }

    #[test]
    fn search_is_deterministic() {
        let r = ring(&["x", "y"]);
        let m2 = Ideal::maximal_power(&r, 2);
        let m = Ideal::maximal_power(&r, 1);
        let opts = ReductionOptions { seed: 7, ..ReductionOptions::default() };
        let a = find_minimal_reduction(&m2, &m, &opts).unwrap();
        let b = find_minimal_reduction(&m2, &m, &opts).unwrap();
        assert_eq!(a.x.elements(), b.x.elements());
        assert_eq!((a.reduction_number, a.s_value, a.trial), (b.reduction_number, b.s_value, b.trial));
        assert_eq!(a.superficial, b.superficial);
        assert_eq!(a.reduction_number, 1);
        assert!(a.superficial.iter().all(|v| v.window_verified()));
        let c = find_minimal_reduction(&m2, &m, &ReductionOptions { seed: 8, ..opts }).unwrap();
        assert_ne!(a.x.elements(), c.x.elements());
    }

    #[test]
    fn constrained_search_can_exhaust() {
        let r = ring(&["x", "y", "z"]);
        let m2 = Ideal::maximal_power(&r, 2);
        let m3 = Ideal::maximal_power(&r, 3);
        let opts = ReductionOptions { constrain_inside_i1: true, trials: 3, seed: 1, ..ReductionOptions::default() };
        match find_minimal_reduction(&m2, &m3, &opts) {
            Err(Error::TrialsExhausted { trials: 3, best }) => assert!(best.starts_with("x = (")),
            other => panic!("{:?}", other.map(|d| d.reduction_number)),
        }
    }

    fn outside_instance() -> (Arc<PolyRing>, FiltrationPair, ParameterSequence) {
        let r = ring(&["x", "y", "z"]);
        let i1 = Ideal::new(&r, parse_poly_list("x^4, y^2, z^2, x*y, x*z, y*z", &r).unwrap()).unwrap();
        let i2 = Ideal::maximal_power(&r, 2);
        let x = seq(&r, "x^2 + y*z, y^2 + z^2 + x*z, x*z + x*y", &i2);
        (r, FiltrationPair::new(i1, i2).unwrap(), x)
    }

    #[test]
    fn outside_instance_reduction_and_s_value() {
        let (_, pair, x) = outside_instance();
        assert_eq!(is_reduction(&x, pair.i2(), 6).unwrap(), Some(1));
        assert_eq!(reduction_by_colength(&x, pair.i2(), 6), Some(1));
        assert_eq!(s_value(&x, &pair, 6).unwrap(), 0);
    }

    #[test]
    fn outside_instance_superficial_window() {
        let (_, pair, x) = outside_instance();
        let v = check_superficial(&x.elements()[0], &pair, 8, 2).unwrap();
        assert_eq!(v.cells.len(), 24);
        assert!(v.window_verified());
        let seq = check_superficial_sequence(&x, &pair, 5, 2).unwrap();
        assert!(seq.iter().all(|v| v.window_verified()));
        let cube = crate::parse::parse_poly("x^3", pair.ring()).unwrap();
        let v = check_superficial(&cube, &pair, 4, 1).unwrap();
        assert!(!v.window_verified());
    }
}
