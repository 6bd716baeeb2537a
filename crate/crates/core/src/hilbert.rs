//! Hilbert functions of the filtration `{I1 I2^n}`, integer-valued polynomial
//! fitting in binomial bases, and rational Hilbert series.

use crate::error::{Error, Result};
use crate::ideal::{Ideal, IdealMemo};
use crate::poly::PolyRing;
use alloc::string::String;
use alloc::sync::Arc;
use alloc::vec::Vec;
use core::fmt;

/// `C(m, r)` for any integer `m`; zero when `r < 0`.
pub fn binomial(m: i64, r: i64) -> i128 {
    if r < 0 {
        return 0;
    }
    let mut acc: i128 = 1;
    for i in 0..r {
        acc = acc * (m as i128 - i as i128) / (i as i128 + 1);
    }
    acc
}

/// The pair `(I1, I2)` defining the filtration `I1 I2^n`, with `I^n = R` for
/// `n <= 0`. `I2` must be primary to the maximal ideal; `I1` may also be the
/// unit ideal, which yields the ordinary `I2`-adic filtration.
#[derive(Clone)]
pub struct FiltrationPair {
    ring: Arc<PolyRing>,
    i1: Arc<Ideal>,
    i2: Arc<Ideal>,
    cache: Arc<spin::Mutex<PowerCache>>,
    memo: Arc<IdealMemo>,
}

struct PowerCache {
    powers: Vec<Arc<Ideal>>,
    products: Vec<Arc<Ideal>>,
}

impl fmt::Debug for FiltrationPair {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("FiltrationPair").field("i1", &self.i1).field("i2", &self.i2).finish()
    }
}

impl FiltrationPair {
    pub fn new(i1: Ideal, i2: Ideal) -> Result<FiltrationPair> {
        if *i1.ring() != *i2.ring() {
            return Err(Error::RingMismatch);
        }
        if !i2.is_m_primary() {
            return Err(Error::HypothesisViolated(String::from("I2 is not primary to the maximal ideal")));
        }
        if !i1.is_m_primary() && !i1.is_unit() {
            return Err(Error::HypothesisViolated(String::from("I1 is not primary to the maximal ideal")));
        }
        let ring = i2.ring().clone();
        let i1 = Arc::new(i1);
        let i2 = Arc::new(i2);
        let cache = PowerCache { powers: alloc::vec![Arc::new(Ideal::unit(&ring)), i2.clone()], products: alloc::vec![i1.clone()] };
        Ok(FiltrationPair { ring, i1, i2, cache: Arc::new(spin::Mutex::new(cache)), memo: Arc::new(IdealMemo::new()) })
    }

    /// The `I2`-adic filtration, i.e. `I1 = R`.
    pub fn adic(i2: Ideal) -> Result<FiltrationPair> {
        let unit = Ideal::unit(i2.ring());
        Self::new(unit, i2)
    }

    pub fn ring(&self) -> &Arc<PolyRing> {
        &self.ring
    }

    /// Number of variables, the dimension `d`.
    pub fn dim(&self) -> usize {
        self.ring.nvars()
    }

    pub fn i1(&self) -> &Arc<Ideal> {
        &self.i1
    }

    pub fn i2(&self) -> &Arc<Ideal> {
        &self.i2
    }

    /// Shared memo table for ideals derived from this pair.
    pub fn memo(&self) -> &Arc<IdealMemo> {
        &self.memo
    }

    /// `I2^n`.
    pub fn i2_power(&self, n: i64) -> Result<Arc<Ideal>> {
        if n <= 0 {
            return Ok(self.cache.lock().powers[0].clone());
        }
        let n = n as usize;
        loop {
            let (len, last) = {
                let c = self.cache.lock();
                if n < c.powers.len() {
                    return Ok(c.powers[n].clone());
                }
                (c.powers.len(), c.powers[c.powers.len() - 1].clone())
            };
            let next = Arc::new(last.product(&self.i2)?.with_basis_generators());
            let mut c = self.cache.lock();
            if c.powers.len() == len {
                c.powers.push(next);
            }
        }
    }

    /// `I1 I2^n`.
    pub fn term(&self, n: i64) -> Result<Arc<Ideal>> {
        if n <= 0 {
            return Ok(self.i1.clone());
        }
        let n = n as usize;
        loop {
            let (len, last) = {
                let c = self.cache.lock();
                if n < c.products.len() {
                    return Ok(c.products[n].clone());
                }
                (c.products.len(), c.products[c.products.len() - 1].clone())
            };
            let next = Arc::new(last.product(&self.i2)?.with_basis_generators());
            let mut c = self.cache.lock();
            if c.products.len() == len {
                c.products.push(next);
            }
        }
    }

    /// `H(1, n) = ℓ(R / I1 I2^n)`.
    pub fn hilbert(&self, n: i64) -> Result<usize> {
        colength(&*self.term(n)?)
    }

    /// `H(0, n) = ℓ(R / I2^n)`.
    pub fn hilbert_adic(&self, n: i64) -> Result<usize> {
        colength(&*self.i2_power(n)?)
    }

    /// `ℓ(I2^n / I1 I2^n)` for `n >= 0`.
    pub fn fiber(&self, n: i64) -> Result<usize> {
        let n = n.max(0);
        Ok(self.hilbert(n)? - self.hilbert_adic(n)?)
    }

    /// `H(1, n)` for `n` in `0..=window`, fitted in degree `d`.
    pub fn hilbert_data(&self, window: i64) -> Result<HilbertData> {
        let values = (0..=window).map(|n| self.hilbert(n).map(|v| v as i128)).collect::<Result<Vec<_>>>()?;
        HilbertData::fit(values, self.dim())
    }

    /// `H(0, n)` for `n` in `0..=window`, fitted in degree `d`.
    pub fn adic_data(&self, window: i64) -> Result<HilbertData> {
        let values = (0..=window).map(|n| self.hilbert_adic(n).map(|v| v as i128)).collect::<Result<Vec<_>>>()?;
        HilbertData::fit(values, self.dim())
    }

    /// Fiber cone Hilbert function for `n` in `0..=window`, fitted in degree `d - 1`.
    pub fn fiber_data(&self, window: i64) -> Result<HilbertData> {
        let values = (0..=window).map(|n| self.fiber(n).map(|v| v as i128)).collect::<Result<Vec<_>>>()?;
        HilbertData::fit(values, self.dim() - 1)
    }
}

/// `ℓ(R/I)`.
pub fn colength(i: &Ideal) -> Result<usize> {
    if !i.is_m_primary() && !i.is_unit() {
        return Err(Error::NotFiniteColength);
    }
    i.colength().ok_or(Error::NotFiniteColength)
}

/// `ℓ(N/D)` for `D ⊆ N`.
pub fn module_length(num: &Ideal, den: &Ideal) -> Result<usize> {
    if !num.contains(den)? {
        return Err(Error::NotContained);
    }
    Ok(colength(den)? - colength(num)?)
}

/// An integer-valued polynomial in Newton form: `P(n) = Σ_k diffs[k] C(n - base, k)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct IntPoly {
    base: i64,
    diffs: Vec<i128>,
}

impl IntPoly {
    /// Interpolates the values at `base, base+1, ..., base+deg`.
    pub fn interpolate(base: i64, values: &[i128]) -> IntPoly {
        let mut row = values.to_vec();
        let mut diffs = Vec::with_capacity(values.len());
        while !row.is_empty() {
            diffs.push(row[0]);
            row = row.windows(2).map(|w| w[1] - w[0]).collect();
        }
        IntPoly { base, diffs }
    }

    pub fn eval(&self, n: i64) -> i128 {
        self.diffs.iter().enumerate().map(|(k, c)| c * binomial(n - self.base, k as i64)).sum()
    }

    /// Degree bound used for coefficient extraction.
    pub fn degree_bound(&self) -> usize {
        self.diffs.len().saturating_sub(1)
    }

    /// `(∇^k P)(n)` with `∇P(n) = P(n) - P(n - 1)`.
    pub fn backward_difference(&self, k: usize, n: i64) -> i128 {
        (0..=k).map(|i| if i % 2 == 0 { 1 } else { -1 } * binomial(k as i64, i as i64) * self.eval(n - i as i64)).sum()
    }

    /// Coefficients `c_j` with `P(n) = Σ_j (-1)^j c_j C(n + deg + shift - j, deg - j)`.
    pub fn coefficients(&self, basis: BinomialBasis) -> Vec<i128> {
        let deg = self.degree_bound();
        let at = -basis.shift - 1;
        (0..=deg)
            .map(|j| {
                let v = self.backward_difference(deg - j, at);
                if j % 2 == 0 {
                    v
                } else {
                    -v
                }
            })
            .collect()
    }

    /// Inverse of [`IntPoly::coefficients`].
    pub fn from_coefficients(coeffs: &[i128], basis: BinomialBasis) -> IntPoly {
        let deg = coeffs.len() as i64 - 1;
        let values: Vec<i128> = (0..=deg).map(|n| basis.evaluate(coeffs, n)).collect();
        IntPoly::interpolate(0, &values)
    }
}

/// The basis `C(n + deg + shift - j, deg - j)`, `j = 0..=deg`, with alternating
/// signs on the coefficients.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct BinomialBasis {
    pub shift: i64,
}

impl BinomialBasis {
    /// `C(n + deg - j, deg - j)`: the basis in which `ℓ(R/I^{n+1})` has the
    /// Hilbert coefficients of `I`.
    pub const SHIFTED: BinomialBasis = BinomialBasis { shift: 0 };
    /// `C(n + deg - 1 - j, deg - j)`: the basis in which `ℓ(R/I^n)` has the
    /// Hilbert coefficients of `I`.
    pub const PLAIN: BinomialBasis = BinomialBasis { shift: -1 };

    pub fn tag(&self) -> String {
        match self.shift {
            0 => String::from("C(n+d-j,d-j)"),
            -1 => String::from("C(n+d-1-j,d-j)"),
            s => alloc::format!("C(n+d{:+}-j,d-j)", s),
        }
    }

    pub fn evaluate(&self, coeffs: &[i128], n: i64) -> i128 {
        let deg = coeffs.len() as i64 - 1;
        coeffs
            .iter()
            .enumerate()
            .map(|(j, c)| {
                let j = j as i64;
                let s = if j % 2 == 0 { 1 } else { -1 };
                s * c * binomial(n + deg + self.shift - j, deg - j)
            })
            .sum()
    }

    /// Re-expresses coefficients given in `self` in the basis `to`.
    pub fn convert(&self, coeffs: &[i128], to: BinomialBasis) -> Vec<i128> {
        IntPoly::from_coefficients(coeffs, *self).coefficients(to)
    }
}

/// Values of a function on `0..=N` together with the polynomial it agrees
/// with from its postulation number on.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct HilbertData {
    pub values: Vec<i128>,
    pub degree: usize,
    pub poly: IntPoly,
    /// Least `n0` with `P(n) = H(n)` for all `n` in `n0..=N`.
    pub postulation: i64,
}

impl HilbertData {
    /// Fits a polynomial of degree at most `degree` through the last
    /// `degree + 1` values and checks agreement backwards. At least
    /// `degree + 2` trailing agreements are required.
    pub fn fit(values: Vec<i128>, degree: usize) -> Result<HilbertData> {
        let have = values.len();
        if have < degree + 2 {
            return Err(Error::WindowTooSmall { needed: degree + 2, have });
        }
        let top = have - 1;
        let base = top - degree;
        let poly = IntPoly::interpolate(base as i64, &values[base..]);
        let mut n0 = base;
        while n0 > 0 && poly.eval(n0 as i64 - 1) == values[n0 - 1] {
            n0 -= 1;
        }
        let agreements = have - n0;
        if agreements < degree + 2 {
            return Err(Error::WindowTooSmall { needed: degree + 2, have: agreements });
        }
        Ok(HilbertData { values, degree, poly, postulation: n0 as i64 })
    }

    pub fn window(&self) -> i64 {
        self.values.len() as i64 - 1
    }

    /// Fitted coefficients in `basis`.
    pub fn coefficients(&self, basis: BinomialBasis) -> Vec<i128> {
        let mut c = self.poly.coefficients(basis);
        c.resize(self.degree + 1, 0);
        c
    }

    /// The value at `n`: computed inside the window, polynomial beyond it,
    /// zero for negative `n` (the series convention).
    pub fn value(&self, n: i64) -> i128 {
        if n < 0 {
            0
        } else if n <= self.window() {
            self.values[n as usize]
        } else {
            self.poly.eval(n)
        }
    }

    /// `Σ H(n) t^n` as `q(t) / (1 - t)^e` with `e = degree + 1 + extra`.
    pub fn series(&self, extra: u32) -> RationalSeries {
        let e = self.degree as u32 + 1 + extra;
        let last = self.postulation.max(0) + e as i64;
        let numerator = (0..last)
            .map(|k| {
                (0..=e as i64)
                    .map(|i| if i % 2 == 0 { 1 } else { -1 } * binomial(e as i64, i) * self.value(k - i))
                    .sum()
            })
            .collect();
        RationalSeries::new(numerator, e)
    }
}

/// `q(t) / (1 - t)^exponent` with integer numerator, trailing zeros trimmed.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RationalSeries {
    pub numerator: Vec<i128>,
    pub exponent: u32,
}

impl RationalSeries {
    pub fn new(mut numerator: Vec<i128>, exponent: u32) -> RationalSeries {
        while numerator.last() == Some(&0) {
            numerator.pop();
        }
        RationalSeries { numerator, exponent }
    }

    /// Cancels factors of `1 - t` from numerator and denominator.
    pub fn reduced(&self) -> RationalSeries {
        let mut q = self.numerator.clone();
        let mut e = self.exponent;
        while e > 0 && !q.is_empty() && q.iter().sum::<i128>() == 0 {
            // synthetic division by (1 - t): q = (1 - t) r, r_k = Σ_{i<=k} q_i
            let mut acc = 0;
            let mut r = Vec::with_capacity(q.len());
            for c in &q[..q.len() - 1] {
                acc += c;
                r.push(acc);
            }
            q = r;
            e -= 1;
        }
        RationalSeries::new(q, e)
    }

    /// Multiplies the numerator by `(1 - t)^k` and raises the exponent to match.
    pub fn with_exponent(&self, exponent: u32) -> RationalSeries {
        let mut q = self.numerator.clone();
        for _ in self.exponent..exponent {
            let mut next = alloc::vec![0; q.len() + 1];
            for (i, c) in q.iter().enumerate() {
                next[i] += c;
                next[i + 1] -= c;
            }
            q = next;
        }
        RationalSeries::new(q, exponent.max(self.exponent))
    }

    /// Power-series coefficients of `t^0..t^terms-1`.
    pub fn expand(&self, terms: usize) -> Vec<i128> {
        let e = self.exponent as i64;
        (0..terms as i64)
            .map(|n| {
                self.numerator
                    .iter()
                    .enumerate()
                    .filter(|(k, _)| *k as i64 <= n)
                    .map(|(k, c)| c * if e == 0 { (n == k as i64) as i128 } else { binomial(n - k as i64 + e - 1, e - 1) })
                    .sum()
            })
            .collect()
    }
}

impl RationalSeries {
    /// The numerator as a polynomial in `t`, e.g. `6 + 2t`.
    pub fn numerator_string(&self) -> String {
        let mut out = String::new();
        for (k, &c) in self.numerator.iter().enumerate() {
            if c == 0 {
                continue;
            }
            if !out.is_empty() {
                out.push_str(if c < 0 { " - " } else { " + " });
            } else if c < 0 {
                out.push('-');
            }
            let a = c.unsigned_abs();
            if k == 0 || a != 1 {
                out.push_str(&alloc::format!("{}", a));
            }
            if k > 0 {
                out.push('t');
            }
            if k > 1 {
                out.push_str(&alloc::format!("^{}", k));
            }
        }
        if out.is_empty() {
            out.push('0');
        }
        out
    }
}

impl fmt::Display for RationalSeries {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({})/(1-t)^{}", self.numerator_string(), self.exponent)
    }
}

/// `C(n - s + d - 1, d) = Σ_{i=0}^{d} (-1)^i C(s + 1, i) C(n + d - i, d - i)`.
pub fn binomial_identity_holds(s: i64, d: i64, n: i64) -> bool {
    let lhs = binomial(n - s + d - 1, d);
    let rhs: i128 = (0..=d)
        .map(|i| if i % 2 == 0 { 1 } else { -1 } * binomial(s + 1, i) * binomial(n + d - i, d - i))
        .sum();
    lhs == rhs
}

/// Checks the identity for `s <= max_s`, `1 <= d <= max_d`, `s <= n <= max_n`;
/// returns the first failing `(s, d, n)`.
pub fn binomial_identity_sweep(max_s: i64, max_d: i64, max_n: i64) -> core::result::Result<usize, (i64, i64, i64)> {
    let mut checked = 0;
    for s in 0..=max_s {
        for d in 1..=max_d {
            for n in s..=max_n {
                if !binomial_identity_holds(s, d, n) {
                    return Err((s, d, n));
                }
                checked += 1;
            }
        }
    }
    Ok(checked)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::PrimeField;
    use crate::parse::parse_poly_list;
    use alloc::string::ToString;
    use proptest::prelude::*;

    fn ring(names: &[&str]) -> Arc<PolyRing> {
        PolyRing::new(names, PrimeField::default()).unwrap()
    }

    fn id(r: &Arc<PolyRing>, s: &str) -> Ideal {
        Ideal::new(r, parse_poly_list(s, r).unwrap()).unwrap()
    }

    #[test]
    fn generalized_binomials() {
        assert_eq!(binomial(5, 2), 10);
        assert_eq!(binomial(-1, 3), -1);
        assert_eq!(binomial(-2, 2), 3);
        assert_eq!(binomial(3, 5), 0);
        assert_eq!(binomial(4, -1), 0);
    }

    #[test]
    fn colengths() {
        let r = ring(&["x", "y", "z"]);
        assert_eq!(colength(&Ideal::maximal_power(&r, 1)).unwrap(), 1);
        assert_eq!(colength(&Ideal::maximal_power(&r, 2)).unwrap(), 4);
        assert_eq!(colength(&id(&r, "x^4, y^2, z^2, x*y, x*z, y*z")).unwrap(), 6);
        let r2 = ring(&["x", "y"]);
        assert_eq!(colength(&id(&r2, "x")), Err(Error::NotFiniteColength));
    }

    #[test]
    fn module_lengths() {
        let r = ring(&["x", "y", "z"]);
        assert_eq!(module_length(&Ideal::maximal_power(&r, 1), &Ideal::maximal_power(&r, 2)).unwrap(), 3);
        let r2 = ring(&["x", "y"]);
        let m = Ideal::maximal_power(&r2, 1);
        let inter = m.intersect(&Ideal::maximal_power(&r2, 2)).unwrap();
        let prod = m.product(&m).unwrap();
        assert_eq!(module_length(&inter, &prod).unwrap(), 0);
        assert_eq!(module_length(&prod, &m), Err(Error::NotContained));
    }

    #[test]
    fn hilbert_function_of_maximal_ideal() {
        let r = ring(&["x", "y"]);
        let m = Ideal::maximal_power(&r, 1);
        let pair = FiltrationPair::new(m.clone(), m).unwrap();
        assert_eq!(pair.hilbert(1).unwrap(), 3);
        assert_eq!(pair.hilbert(4).unwrap(), 15);
        assert_eq!(pair.hilbert(-2).unwrap(), 1);
        let data = pair.hilbert_data(6).unwrap();
        assert_eq!(data.coefficients(BinomialBasis::SHIFTED), alloc::vec![1, 0, 0]);
        assert_eq!(data.postulation, 0);
        assert_eq!(data.series(0).reduced(), RationalSeries::new(alloc::vec![1], 3));
        let fiber = pair.fiber_data(6).unwrap();
        assert_eq!(fiber.values, (1..=7).collect::<Vec<i128>>());
        assert_eq!(fiber.coefficients(BinomialBasis::SHIFTED), alloc::vec![1, 0]);
    }

    #[test]
    fn multiplicity_of_square_of_maximal_ideal() {
        let r = ring(&["x", "y", "z"]);
        let pair = FiltrationPair::adic(Ideal::maximal_power(&r, 2)).unwrap();
        let data = pair.adic_data(6).unwrap();
        assert_eq!(data.values[3], binomial(8, 3));
        assert_eq!(data.coefficients(BinomialBasis::PLAIN)[0], 8);
    }

    #[test]
    fn window_too_small() {
        assert!(matches!(HilbertData::fit(alloc::vec![1, 2, 3], 2), Err(Error::WindowTooSmall { .. })));
        // agrees only on the last three points
        assert!(matches!(HilbertData::fit(alloc::vec![5, 7, 1, 4, 9], 2), Err(Error::WindowTooSmall { .. })));
        let ok = HilbertData::fit(alloc::vec![5, 1, 4, 9, 16], 2).unwrap();
        assert_eq!(ok.postulation, 1);
    }

    #[test]
    fn series_expansion_matches_values() {
        let mut values: Vec<i128> = (0..9).map(|n| 8 * binomial(n + 2, 3) + 6 * binomial(n + 1, 2) + 1).collect();
        values[0] = 6;
        let data = HilbertData::fit(values.clone(), 3).unwrap();
        assert_eq!(data.postulation, 1);
        let s = data.series(0);
        assert_eq!(s.expand(values.len()), values);
        assert_eq!(s.reduced().expand(12), s.expand(12));
        assert_eq!(s.reduced().with_exponent(4).expand(12), s.expand(12));
    }

    #[test]
    fn series_display() {
        assert_eq!(RationalSeries::new(alloc::vec![6, 2], 4).to_string(), "(6 + 2t)/(1-t)^4");
        assert_eq!(RationalSeries::new(alloc::vec![1, 0, -1], 3).to_string(), "(1 - t^2)/(1-t)^3");
    }

    #[test]
    fn binomial_identity() {
        assert!(binomial_identity_holds(1, 2, 3));
        assert_eq!(binomial_identity_sweep(0, 6, 20).map(|_| ()), Ok(()));
        assert_eq!(binomial_identity_sweep(6, 6, 20).map(|_| ()), Ok(()));
    }

    proptest! {
        #[test]
        fn basis_conversion_round_trips(c in prop::collection::vec(-50i128..50, 1..5), a in -3i64..3, b in -3i64..3) {
            let (ba, bb) = (BinomialBasis { shift: a }, BinomialBasis { shift: b });
            let there = ba.convert(&c, bb);
            prop_assert_eq!(ba.convert(&there, bb).len(), c.len());
            prop_assert_eq!(bb.convert(&there, ba), c.clone());
            for n in -5..10 {
                prop_assert_eq!(ba.evaluate(&c, n), bb.evaluate(&there, n));
            }
        }
    }
}
