//! The Koszul-type complexes `C(x, F, (1, n))`, `C(x, F_{I2}, (0, n))`, the
//! truncation `D(x, F, (1, n))` and the degree `n` strand of the Koszul
//! complex of the fiber cone, realized over `F_p` on standard-monomial bases.

use crate::error::{Error, Result};
use crate::hilbert::{colength, module_length, FiltrationPair};
use crate::ideal::Ideal;
use crate::linalg::{axpy, rank, sparse_from, SparseRow};
use crate::poly::Polynomial;
use crate::quotient::QuotientSpace;
use alloc::string::String;
use alloc::sync::Arc;
use alloc::vec::Vec;

/// A sequence `x_1, ..., x_k` of elements of `I2`.
#[derive(Clone, Debug)]
pub struct ParameterSequence {
    elems: Vec<Polynomial>,
}

impl ParameterSequence {
    /// Checks membership of every element in `i2`.
    pub fn new(elems: Vec<Polynomial>, i2: &Ideal) -> Result<ParameterSequence> {
        if elems.is_empty() {
            return Err(Error::InvalidArgument(String::from("empty sequence")));
        }
        for e in &elems {
            if !i2.contains_poly(e)? {
                return Err(Error::HypothesisViolated(alloc::format!("{} is not in I2", e)));
            }
        }
        Ok(ParameterSequence { elems })
    }

    pub fn len(&self) -> usize {
        self.elems.len()
    }

    pub fn is_empty(&self) -> bool {
        self.elems.is_empty()
    }

    pub fn elements(&self) -> &[Polynomial] {
        &self.elems
    }

    /// The ideal generated by the sequence in the local ring, contracted back.
    pub fn ideal(&self) -> Result<Ideal> {
        let ring = self.elems[0].ring();
        if self.elems.len() == ring.nvars() {
            Ideal::local(ring, self.elems.clone())
        } else {
            Ideal::new(ring, self.elems.clone())
        }
    }

    pub fn inside(&self, i: &Ideal) -> Result<bool> {
        for e in &self.elems {
            if !i.contains_poly(e)? {
                return Ok(false);
            }
        }
        Ok(true)
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Variant {
    /// `C(x, F_{I1;I2}, (1, n))`: term `i` is `(R/I1 I2^{n-i})^{C(k,i)}`.
    C1,
    /// `C(x, F_{I2}, (0, n))`: term `i` is `(R/I2^{n-i})^{C(k,i)}`.
    C0,
    /// `D(x, F_{I1;I2}, (1, n))`: `C1` truncated to the terms with `n - i >= 0`.
    D1,
    /// Degree `n` strand of the Koszul complex of the fiber cone on the images of `x`.
    KoszulFiber,
}

impl Variant {
    pub fn tag(&self) -> &'static str {
        match self {
            Variant::C1 => "C1",
            Variant::C0 => "C0",
            Variant::D1 => "D1",
            Variant::KoszulFiber => "K",
        }
    }

    pub fn parse(s: &str) -> Option<Variant> {
        match s {
            "C1" | "C" => Some(Variant::C1),
            "C0" => Some(Variant::C0),
            "D1" | "D" => Some(Variant::D1),
            "K" | "KoszulFiber" => Some(Variant::KoszulFiber),
            _ => None,
        }
    }
}

/// `k`-element subsets of `0..n` of size `i`, in lexicographic order.
fn subsets(n: usize, i: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    let mut cur = Vec::with_capacity(i);
    fn rec(start: usize, n: usize, i: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if cur.len() == i {
            out.push(cur.clone());
            return;
        }
        for j in start..n {
            cur.push(j);
            rec(j + 1, n, i, cur, out);
            cur.pop();
        }
    }
    rec(0, n, i, &mut cur, &mut out);
    out
}

#[derive(Clone, Debug)]
pub struct ComplexTerm {
    /// `None` for a zero module.
    pub space: Option<QuotientSpace>,
    pub multiplicity: usize,
}

impl ComplexTerm {
    pub fn block_dim(&self) -> usize {
        self.space.as_ref().map_or(0, |s| s.dim())
    }

    /// Length of the term.
    pub fn dim(&self) -> usize {
        self.block_dim() * self.multiplicity
    }
}

#[derive(Clone, Debug)]
pub struct ComplexInstance {
    pub variant: Variant,
    pub n: i64,
    pub k: usize,
    pub terms: Vec<ComplexTerm>,
    /// `differentials[i]` maps term `i` to term `i - 1`, one sparse row per
    /// source basis vector; `differentials[0]` is empty.
    pub differentials: Vec<Vec<SparseRow>>,
    ranks: Vec<usize>,
    d_squared_zero: bool,
}

impl ComplexInstance {
    pub fn build(x: &ParameterSequence, pair: &FiltrationPair, variant: Variant, n: i64) -> Result<ComplexInstance> {
        let k = x.len();
        if matches!(variant, Variant::D1 | Variant::KoszulFiber) && !x.inside(pair.i1())? {
            return Err(Error::HypothesisViolated(String::from("(x) is not contained in I1")));
        }
        let unit = Arc::new(Ideal::unit(pair.ring()));
        let mut terms = Vec::with_capacity(k + 1);
        for i in 0..=k {
            let e = n - i as i64;
            let mult = binom_usize(k, i);
            let space = match variant {
                Variant::C1 => Some(QuotientSpace::new(unit.clone(), pair.term(e)?)?),
                Variant::C0 if e > 0 => Some(QuotientSpace::new(unit.clone(), pair.i2_power(e)?)?),
                Variant::D1 if e >= 0 => Some(QuotientSpace::new(unit.clone(), pair.term(e)?)?),
                Variant::KoszulFiber if e >= 0 => Some(QuotientSpace::new(pair.i2_power(e)?, pair.term(e)?)?),
                _ => None,
            };
            terms.push(ComplexTerm { space, multiplicity: mult });
        }
        let fp = *pair.ring().field();
        let mut differentials = alloc::vec![Vec::new()];
        for i in 1..=k {
            let src = &terms[i];
            let dst = &terms[i - 1];
            let mut rows = Vec::with_capacity(src.dim());
            let (Some(sspace), Some(dspace)) = (&src.space, &dst.space) else {
                rows.resize(src.dim(), Vec::new());
                differentials.push(rows);
                continue;
            };
            let dst_subsets = subsets(k, i - 1);
            let dst_pos = |s: &[usize]| dst_subsets.iter().position(|t| t.as_slice() == s).expect("subset");
            let bdim = dspace.dim();
            for s in subsets(k, i) {
                for b in 0..sspace.dim() {
                    let v = sspace.basis_vector(b);
                    let vp = Polynomial::from_terms(pair.ring(), v);
                    let mut entries = Vec::new();
                    for (r, &j) in s.iter().enumerate() {
                        let sign = if r % 2 == 0 { 1 } else { fp.neg(1) };
                        let prod = x.elements()[j].mul(&vp)?;
                        let mut rest = s.clone();
                        rest.remove(r);
                        let off = dst_pos(&rest) * bdim;
                        for (c, val) in dspace.coordinates(prod.into_terms()) {
                            entries.push((off + c, fp.mul(sign, val)));
                        }
                    }
                    rows.push(sparse_from(&fp, entries));
                }
            }
            differentials.push(rows);
        }
        let ranks: Vec<usize> = differentials.iter().map(|rows| rank(&fp, rows.iter().cloned())).collect();
        let mut d_squared_zero = true;
        for i in 2..=k {
            for row in &differentials[i] {
                let mut acc: SparseRow = Vec::new();
                for &(c, v) in row {
                    acc = axpy(&fp, &acc, v, &differentials[i - 1][c]);
                }
                if !acc.is_empty() {
                    d_squared_zero = false;
                }
            }
        }
        Ok(ComplexInstance { variant, n, k, terms, differentials, ranks, d_squared_zero })
    }

    /// True when every composite `d_{i-1} d_i` is the zero matrix.
    pub fn d_squared_zero(&self) -> bool {
        self.d_squared_zero
    }

    pub fn rank(&self, i: usize) -> usize {
        self.ranks.get(i).copied().unwrap_or(0)
    }

    pub fn term_lengths(&self) -> Vec<usize> {
        self.terms.iter().map(|t| t.dim()).collect()
    }

    /// `h_i = dim_i - rank d_i - rank d_{i+1}` for `i = 0..=k`.
    pub fn homology_lengths(&self) -> Vec<usize> {
        (0..=self.k).map(|i| self.terms[i].dim() - self.rank(i) - self.rank(i + 1)).collect()
    }

    /// `(Σ (-1)^i h_i, Σ (-1)^i ℓ(term_i))`.
    pub fn euler_characteristics(&self) -> (i64, i64) {
        let alt = |v: Vec<usize>| v.iter().enumerate().map(|(i, &x)| if i % 2 == 0 { x as i64 } else { -(x as i64) }).sum();
        (alt(self.homology_lengths()), alt(self.term_lengths()))
    }
}

pub(crate) fn binom_usize(n: usize, k: usize) -> usize {
    if k > n {
        return 0;
    }
    let mut acc = 1usize;
    for i in 0..k {
        acc = acc * (n - i) / (i + 1);
    }
    acc
}

/// One comparison between a computed homology length and its closed form.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ClauseCheck {
    pub clause: &'static str,
    pub n: i64,
    pub computed: usize,
    pub expected: usize,
}

impl ClauseCheck {
    pub fn holds(&self) -> bool {
        self.computed == self.expected
    }
}

/// Compares homology of `C1` (and of `D1` when `(x) ⊆ I1`) at `n` with the
/// closed forms: `H_0 = R/(I1 I2^n + (x))`, `H_1 = ((x) ∩ I1 I2^n)/(x) I1 I2^{n-1}`
/// (from `n = 2`, from `n = 1` for `D1`, full-length sequences only),
/// `H_k = (I1 I2^{n-k+1} : (x))/I1 I2^{n-k}`, and the vanishing ranges of `D1`.
pub fn cross_check_homology(x: &ParameterSequence, pair: &FiltrationPair, n: i64) -> Result<Vec<ClauseCheck>> {
    let k = x.len() as i64;
    let xi = x.ideal()?;
    let mut out = Vec::new();
    let c = ComplexInstance::build(x, pair, Variant::C1, n)?.homology_lengths();
    let h0 = colength(&pair.term(n)?.sum(&xi)?)?;
    out.push(ClauseCheck { clause: "H0(C)", n, computed: c[0], expected: h0 });
    let full = x.len() == pair.dim();
    let h1 = if full && n >= 1 { Some(h1_closed_form(&xi, pair, n)?) } else { None };
    if let (Some(h1), true) = (h1, n >= 2) {
        out.push(ClauseCheck { clause: "H1(C)", n, computed: c[1], expected: h1 });
    }
    let colon = pair.term(n - k + 1)?.colon_by_elimination(&xi)?;
    let hk = module_length(&colon, &*pair.term(n - k)?)?;
    out.push(ClauseCheck { clause: "Hk(C)", n, computed: c[x.len()], expected: hk });
    if x.inside(pair.i1())? {
        let d = ComplexInstance::build(x, pair, Variant::D1, n)?.homology_lengths();
        out.push(ClauseCheck { clause: "H0(D)", n, computed: d[0], expected: if n >= 0 { c[0] } else { 0 } });
        if n < 1 {
            out.push(ClauseCheck { clause: "H1(D)", n, computed: d[1], expected: 0 });
        } else if let Some(h1) = h1 {
            out.push(ClauseCheck { clause: "H1(D)", n, computed: d[1], expected: h1 });
        }
        out.push(ClauseCheck { clause: "Hk(D)", n, computed: d[x.len()], expected: if n >= k { c[x.len()] } else { 0 } });
        for (i, &h) in d.iter().enumerate() {
            if i as i64 > n {
                out.push(ClauseCheck { clause: "D-vanishing", n, computed: h, expected: 0 });
            }
        }
    }
    Ok(out)
}

/// `ℓ(((x) ∩ I1 I2^n) / (x) I1 I2^{n-1})`.
pub fn h1_closed_form(xi: &Ideal, pair: &FiltrationPair, n: i64) -> Result<usize> {
    let num = xi.intersect(&*pair.term(n)?)?;
    let den = xi.product(&*pair.term(n - 1)?)?;
    module_length(&num, &den)
}
