//! Polynomial rings over `F_p` and sparse polynomials in canonical form.

use crate::error::{Error, Result};
use crate::field::PrimeField;
use crate::monomial::{Monomial, MonomialOrder, MAX_VARS};
use alloc::string::{String, ToString};
use alloc::sync::Arc;
use alloc::vec::Vec;
use core::cmp::Ordering;
use core::fmt;

pub type Term = (Monomial, u32);

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct PolyRing {
    names: Vec<String>,
    order: MonomialOrder,
    field: PrimeField,
}

impl PolyRing {
    pub fn new(names: &[&str], field: PrimeField) -> Result<Arc<Self>> {
        Self::with_order(names.iter().map(|s| s.to_string()).collect(), MonomialOrder::DegRevLex, field)
    }

    pub fn with_order(names: Vec<String>, order: MonomialOrder, field: PrimeField) -> Result<Arc<Self>> {
        if names.is_empty() {
            return Err(Error::InvalidRing("at least one variable is required".into()));
        }
        if names.len() > MAX_VARS {
            return Err(Error::InvalidRing(alloc::format!("at most {} variables", MAX_VARS)));
        }
        for (i, n) in names.iter().enumerate() {
            let ok = n.chars().next().is_some_and(|c| c.is_ascii_alphabetic() || c == '_')
                && n.chars().all(|c| c.is_ascii_alphanumeric() || c == '_');
            if !ok {
                return Err(Error::InvalidRing(alloc::format!("bad variable name `{}`", n)));
            }
            if names[..i].contains(n) {
                return Err(Error::InvalidRing(alloc::format!("duplicate variable `{}`", n)));
            }
        }
        Ok(Arc::new(PolyRing { names, order, field }))
    }

    #[inline]
    pub fn nvars(&self) -> usize {
        self.names.len()
    }

    pub fn names(&self) -> &[String] {
        &self.names
    }

    #[inline]
    pub fn field(&self) -> &PrimeField {
        &self.field
    }

    pub fn order(&self) -> MonomialOrder {
        self.order
    }

    #[inline]
    pub fn cmp(&self, a: &Monomial, b: &Monomial) -> Ordering {
        self.order.cmp(self.names.len(), a, b)
    }

    pub fn var_index(&self, name: &str) -> Option<usize> {
        self.names.iter().position(|n| n == name)
    }

    /// The ring with one extra variable in front, ordered for eliminating it.
    pub fn elimination_ring(&self, aux: &str) -> Result<Arc<PolyRing>> {
        let mut names = Vec::with_capacity(self.names.len() + 1);
        names.push(aux.to_string());
        names.extend(self.names.iter().cloned());
        PolyRing::with_order(names, MonomialOrder::Elimination { block: 1 }, self.field)
    }

    pub fn fmt_monomial(&self, m: &Monomial, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut first = true;
        for i in 0..self.nvars() {
            let e = m.exp(i);
            if e == 0 {
                continue;
            }
            if !first {
                write!(f, "*")?;
            }
            first = false;
            write!(f, "{}", self.names[i])?;
            if e > 1 {
                write!(f, "^{}", e)?;
            }
        }
        if first {
            write!(f, "1")?;
        }
        Ok(())
    }
}

// ---- term-vector kernels shared with the Gröbner engine -------------------

/// Sort, merge equal monomials and drop zeros.
pub(crate) fn canonicalize(ring: &PolyRing, mut terms: Vec<Term>) -> Vec<Term> {
    let fp = ring.field();
    terms.sort_by(|a, b| ring.cmp(&b.0, &a.0));
    let mut out: Vec<Term> = Vec::with_capacity(terms.len());
    for (m, c) in terms {
        match out.last_mut() {
            Some(last) if last.0 == m => last.1 = fp.add(last.1, c),
            _ => out.push((m, c)),
        }
        if out.last().is_some_and(|t| t.1 == 0) {
            out.pop();
        }
    }
    out
}

/// `f + scale * mono * g` for sorted term vectors.
pub(crate) fn add_scaled(ring: &PolyRing, f: &[Term], scale: u32, mono: &Monomial, g: &[Term]) -> Vec<Term> {
    let fp = ring.field();
    let mut out = Vec::with_capacity(f.len() + g.len());
    let (mut i, mut j) = (0, 0);
    while i < f.len() && j < g.len() {
        let gm = mono.mul(&g[j].0);
        match ring.cmp(&f[i].0, &gm) {
            Ordering::Greater => {
                out.push(f[i]);
                i += 1;
            }
            Ordering::Less => {
                out.push((gm, fp.mul(scale, g[j].1)));
                j += 1;
            }
            Ordering::Equal => {
                let c = fp.add(f[i].1, fp.mul(scale, g[j].1));
                if c != 0 {
                    out.push((gm, c));
                }
                i += 1;
                j += 1;
            }
        }
    }
    out.extend_from_slice(&f[i..]);
    for t in &g[j..] {
        out.push((mono.mul(&t.0), fp.mul(scale, t.1)));
    }
    out
}

pub(crate) fn mul_terms(ring: &PolyRing, f: &[Term], g: &[Term]) -> Vec<Term> {
    let fp = ring.field();
    let mut all = Vec::with_capacity(f.len() * g.len());
    for (a, ca) in f {
        for (b, cb) in g {
            all.push((a.mul(b), fp.mul(*ca, *cb)));
        }
    }
    canonicalize(ring, all)
}

pub(crate) fn make_monic(ring: &PolyRing, f: &mut [Term]) {
    if let Some(&(_, lc)) = f.first() {
        if lc != 1 {
            let fp = ring.field();
            let inv = fp.inv(lc);
            for t in f.iter_mut() {
                t.1 = fp.mul(t.1, inv);
            }
        }
    }
}

// ---- public polynomial type ---------------------------------------------

/// A polynomial in canonical form: terms strictly decreasing in the ring's
/// order, no zero coefficients. Structural equality is mathematical equality.
#[derive(Clone)]
pub struct Polynomial {
    ring: Arc<PolyRing>,
    terms: Vec<Term>,
}

impl PartialEq for Polynomial {
    fn eq(&self, other: &Self) -> bool {
        self.terms == other.terms && (Arc::ptr_eq(&self.ring, &other.ring) || self.ring == other.ring)
    }
}
impl Eq for Polynomial {}

impl core::hash::Hash for Polynomial {
    fn hash<H: core::hash::Hasher>(&self, state: &mut H) {
        self.terms.hash(state);
    }
}

impl PartialOrd for Polynomial {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for Polynomial {
    /// Arbitrary but fixed total order, used for canonical sorting of generator lists.
    fn cmp(&self, other: &Self) -> Ordering {
        self.terms.cmp(&other.terms)
    }
}

impl Polynomial {
    pub fn zero(ring: &Arc<PolyRing>) -> Self {
        Polynomial { ring: ring.clone(), terms: Vec::new() }
    }

    pub fn constant(ring: &Arc<PolyRing>, c: u32) -> Self {
        Self::from_terms(ring, alloc::vec![(Monomial::ONE, c)])
    }

    pub fn one(ring: &Arc<PolyRing>) -> Self {
        Self::constant(ring, 1)
    }

    pub fn var(ring: &Arc<PolyRing>, i: usize) -> Self {
        assert!(i < ring.nvars());
        Polynomial { ring: ring.clone(), terms: alloc::vec![(Monomial::var(i), 1)] }
    }

    pub fn monomial(ring: &Arc<PolyRing>, m: Monomial) -> Self {
        Polynomial { ring: ring.clone(), terms: alloc::vec![(m, 1)] }
    }

    /// Builds a canonical polynomial from arbitrary terms (coefficients are reduced mod p).
    pub fn from_terms(ring: &Arc<PolyRing>, terms: Vec<Term>) -> Self {
        let p = ring.field().modulus();
        let terms = terms.into_iter().map(|(m, c)| (m, c % p)).collect();
        Polynomial { ring: ring.clone(), terms: canonicalize(ring, terms) }
    }

    /// Wraps terms that are already canonical.
    pub(crate) fn from_canonical(ring: &Arc<PolyRing>, terms: Vec<Term>) -> Self {
        debug_assert!(terms.windows(2).all(|w| ring.cmp(&w[0].0, &w[1].0) == Ordering::Greater));
        debug_assert!(terms.iter().all(|t| t.1 != 0));
        Polynomial { ring: ring.clone(), terms }
    }

    pub fn ring(&self) -> &Arc<PolyRing> {
        &self.ring
    }

    pub fn terms(&self) -> &[Term] {
        &self.terms
    }

    pub fn into_terms(self) -> Vec<Term> {
        self.terms
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn leading_monomial(&self) -> Option<&Monomial> {
        self.terms.first().map(|t| &t.0)
    }

    pub fn is_monomial(&self) -> bool {
        self.terms.len() == 1
    }

    pub fn is_homogeneous(&self) -> bool {
        self.terms.windows(2).all(|w| w[0].0.degree() == w[1].0.degree())
    }

    /// Largest total degree of a term (0 for the zero polynomial).
    pub fn degree(&self) -> u32 {
        self.terms.iter().map(|t| t.0.degree()).max().unwrap_or(0)
    }

    /// Smallest total degree of a term, i.e. the order at the origin.
    pub fn order_at_origin(&self) -> Option<u32> {
        self.terms.iter().map(|t| t.0.degree()).min()
    }

    fn check_ring(&self, other: &Polynomial) -> Result<()> {
        if Arc::ptr_eq(&self.ring, &other.ring) || self.ring == other.ring {
            Ok(())
        } else {
            Err(Error::RingMismatch)
        }
    }

    pub fn add(&self, other: &Polynomial) -> Result<Polynomial> {
        self.check_ring(other)?;
        Ok(Polynomial { ring: self.ring.clone(), terms: add_scaled(&self.ring, &self.terms, 1, &Monomial::ONE, &other.terms) })
    }

    pub fn sub(&self, other: &Polynomial) -> Result<Polynomial> {
        self.check_ring(other)?;
        let m1 = self.ring.field().neg(1);
        Ok(Polynomial { ring: self.ring.clone(), terms: add_scaled(&self.ring, &self.terms, m1, &Monomial::ONE, &other.terms) })
    }

    pub fn mul(&self, other: &Polynomial) -> Result<Polynomial> {
        self.check_ring(other)?;
        let max_a = self.terms.iter().map(|t| t.0).fold(Monomial::ONE, |acc, m| acc.lcm(&m));
        let max_b = other.terms.iter().map(|t| t.0).fold(Monomial::ONE, |acc, m| acc.lcm(&m));
        max_a.checked_mul(&max_b)?;
        Ok(Polynomial { ring: self.ring.clone(), terms: mul_terms(&self.ring, &self.terms, &other.terms) })
    }

    pub fn neg(&self) -> Polynomial {
        let fp = self.ring.field();
        Polynomial { ring: self.ring.clone(), terms: self.terms.iter().map(|&(m, c)| (m, fp.neg(c))).collect() }
    }

    pub fn scale(&self, c: u32) -> Polynomial {
        let fp = self.ring.field();
        let c = c % fp.modulus();
        if c == 0 {
            return Polynomial::zero(&self.ring);
        }
        Polynomial { ring: self.ring.clone(), terms: self.terms.iter().map(|&(m, a)| (m, fp.mul(a, c))).collect() }
    }

    pub fn mul_monomial(&self, m: &Monomial) -> Polynomial {
        Polynomial { ring: self.ring.clone(), terms: self.terms.iter().map(|&(t, c)| (t.mul(m), c)).collect() }
    }

    pub fn pow(&self, e: u32) -> Result<Polynomial> {
        let mut acc = Polynomial::one(&self.ring);
        for _ in 0..e {
            acc = acc.mul(self)?;
        }
        Ok(acc)
    }

    pub fn monic(&self) -> Polynomial {
        let mut t = self.terms.clone();
        make_monic(&self.ring, &mut t);
        Polynomial { ring: self.ring.clone(), terms: t }
    }

    /// Coefficient of `m` (zero when absent).
    pub fn coefficient(&self, m: &Monomial) -> u32 {
        self.terms.iter().find(|t| t.0 == *m).map_or(0, |t| t.1)
    }
}

impl fmt::Debug for Polynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

impl fmt::Display for Polynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        let fp = self.ring.field();
        for (k, (m, c)) in self.terms.iter().enumerate() {
            let s = fp.to_signed(*c);
            let mag = s.unsigned_abs();
            if k == 0 {
                if s < 0 {
                    write!(f, "-")?;
                }
            } else if s < 0 {
                write!(f, " - ")?;
            } else {
                write!(f, " + ")?;
            }
            if m.is_one() {
                write!(f, "{}", mag)?;
            } else {
                if mag != 1 {
                    write!(f, "{}*", mag)?;
                }
                self.ring.fmt_monomial(m, f)?;
            }
        }
        Ok(())
    }
}
