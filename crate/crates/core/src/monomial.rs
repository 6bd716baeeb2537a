//! Exponent vectors and the monomial orders used by the Gröbner engine.

use crate::error::{Error, Result};
use core::cmp::Ordering;

/// Hard cap on the number of variables, including the auxiliary
/// variable introduced for elimination.
pub const MAX_VARS: usize = 8;

/// An exponent vector. Unused trailing slots are zero, so structural
/// equality is independent of the ring it is read in.
#[derive(Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Default)]
pub struct Monomial {
    deg: u32,
    exps: [u16; MAX_VARS],
}

impl core::fmt::Debug for Monomial {
    fn fmt(&self, f: &mut core::fmt::Formatter<'_>) -> core::fmt::Result {
        write!(f, "{:?}", &self.exps[..])
    }
}

impl Monomial {
    pub const ONE: Monomial = Monomial { deg: 0, exps: [0; MAX_VARS] };

    pub fn from_exponents(e: &[u32]) -> Result<Self> {
        if e.len() > MAX_VARS {
            return Err(Error::InvalidRing(alloc::format!("at most {} variables", MAX_VARS)));
        }
        let mut m = Monomial::ONE;
        for (i, &x) in e.iter().enumerate() {
            if x > u16::MAX as u32 {
                return Err(Error::ExponentOverflow);
            }
            m.exps[i] = x as u16;
            m.deg += x;
        }
        Ok(m)
    }

    pub fn var(i: usize) -> Self {
        let mut m = Monomial::ONE;
        m.exps[i] = 1;
        m.deg = 1;
        m
    }

    #[inline]
    pub fn degree(&self) -> u32 {
        self.deg
    }

    #[inline]
    pub fn exp(&self, i: usize) -> u32 {
        self.exps[i] as u32
    }

    pub fn exponents(&self) -> &[u16; MAX_VARS] {
        &self.exps
    }

    pub fn is_one(&self) -> bool {
        self.deg == 0
    }

    /// Product; fails instead of wrapping when an exponent leaves `u16`.
    pub fn checked_mul(&self, other: &Monomial) -> Result<Monomial> {
        let mut m = *self;
        for i in 0..MAX_VARS {
            let s = self.exps[i] as u32 + other.exps[i] as u32;
            if s > u16::MAX as u32 {
                return Err(Error::ExponentOverflow);
            }
            m.exps[i] = s as u16;
        }
        m.deg = self.deg + other.deg;
        Ok(m)
    }

    /// Product for exponents already known to be small. Panics on overflow.
    #[inline]
    pub fn mul(&self, other: &Monomial) -> Monomial {
        let mut m = *self;
        for i in 0..MAX_VARS {
            m.exps[i] = self.exps[i].checked_add(other.exps[i]).expect("exponent overflow");
        }
        m.deg = self.deg + other.deg;
        m
    }

    #[inline]
    pub fn divides(&self, other: &Monomial) -> bool {
        self.deg <= other.deg && (0..MAX_VARS).all(|i| self.exps[i] <= other.exps[i])
    }

    /// `other / self`, assuming `self | other`.
    #[inline]
    pub fn quotient_of(&self, other: &Monomial) -> Monomial {
        let mut m = Monomial::ONE;
        for i in 0..MAX_VARS {
            m.exps[i] = other.exps[i] - self.exps[i];
        }
        m.deg = other.deg - self.deg;
        m
    }

    pub fn lcm(&self, other: &Monomial) -> Monomial {
        let mut m = Monomial::ONE;
        for i in 0..MAX_VARS {
            m.exps[i] = self.exps[i].max(other.exps[i]);
            m.deg += m.exps[i] as u32;
        }
        m
    }

    pub fn gcd(&self, other: &Monomial) -> Monomial {
        let mut m = Monomial::ONE;
        for i in 0..MAX_VARS {
            m.exps[i] = self.exps[i].min(other.exps[i]);
            m.deg += m.exps[i] as u32;
        }
        m
    }

    pub fn is_coprime(&self, other: &Monomial) -> bool {
        (0..MAX_VARS).all(|i| self.exps[i] == 0 || other.exps[i] == 0)
    }

    /// Moves every exponent one slot up, freeing slot 0 for an auxiliary variable.
    pub fn shifted_up(&self) -> Monomial {
        assert!(self.exps[MAX_VARS - 1] == 0, "no room for an auxiliary variable");
        let mut m = Monomial::ONE;
        m.exps[1..].copy_from_slice(&self.exps[..MAX_VARS - 1]);
        m.deg = self.deg;
        m
    }

    /// Inverse of [`Monomial::shifted_up`]; slot 0 must be zero.
    pub fn shifted_down(&self) -> Monomial {
        debug_assert_eq!(self.exps[0], 0);
        let mut m = Monomial::ONE;
        m.exps[..MAX_VARS - 1].copy_from_slice(&self.exps[1..]);
        m.deg = self.deg;
        m
    }

    pub fn with_exp(&self, i: usize, e: u16) -> Monomial {
        let mut m = *self;
        m.deg = m.deg - m.exps[i] as u32 + e as u32;
        m.exps[i] = e;
        m
    }
}

/// Global monomial orders. Only degree-compatible orders are offered for
/// ordinary work; `Elimination` is the block order used to eliminate the
/// first `block` variables.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum MonomialOrder {
    DegRevLex,
    /// Degrevlex on variables `0..block`, ties broken by degrevlex on the rest.
    Elimination { block: usize },
}

#[inline]
fn degrevlex_range(a: &Monomial, b: &Monomial, lo: usize, hi: usize) -> Ordering {
    let da: u32 = (lo..hi).map(|i| a.exps[i] as u32).sum();
    let db: u32 = (lo..hi).map(|i| b.exps[i] as u32).sum();
    if da != db {
        return da.cmp(&db);
    }
    for i in (lo..hi).rev() {
        if a.exps[i] != b.exps[i] {
            // smaller exponent in the last differing variable wins
            return b.exps[i].cmp(&a.exps[i]);
        }
    }
    Ordering::Equal
}

impl MonomialOrder {
    #[inline]
    pub fn cmp(&self, nvars: usize, a: &Monomial, b: &Monomial) -> Ordering {
        match *self {
            MonomialOrder::DegRevLex => {
                if a.deg != b.deg {
                    return a.deg.cmp(&b.deg);
                }
                for i in (0..nvars).rev() {
                    if a.exps[i] != b.exps[i] {
                        return b.exps[i].cmp(&a.exps[i]);
                    }
                }
                Ordering::Equal
            }
            MonomialOrder::Elimination { block } => degrevlex_range(a, b, 0, block)
                .then_with(|| degrevlex_range(a, b, block, nvars)),
        }
    }

    pub fn tag(&self) -> &'static str {
        match self {
            MonomialOrder::DegRevLex => "degrevlex",
            MonomialOrder::Elimination { .. } => "elimination",
        }
    }
}

/// All monomials of total degree exactly `deg` in `nvars` variables.
pub fn monomials_of_degree(nvars: usize, deg: u32) -> alloc::vec::Vec<Monomial> {
    let mut out = alloc::vec::Vec::new();
    let mut cur = [0u32; MAX_VARS];
    fn rec(i: usize, n: usize, left: u32, cur: &mut [u32; MAX_VARS], out: &mut alloc::vec::Vec<Monomial>) {
        if i + 1 == n {
            cur[i] = left;
            out.push(Monomial::from_exponents(&cur[..n]).expect("degree fits"));
            return;
        }
        for e in (0..=left).rev() {
            cur[i] = e;
            rec(i + 1, n, left - e, cur, out);
        }
        cur[i] = 0;
    }
    if nvars > 0 {
        rec(0, nvars, deg, &mut cur, &mut out);
    }
    out
}
