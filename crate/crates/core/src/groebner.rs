//! Buchberger's algorithm with the Gebauer–Möller criteria and the sugar
//! selection strategy, plus normal forms against reduced bases.
//!
//! A [`Truncation`] records that the ideal is known to contain every monomial
//! of a given degree in a block of variables. Those monomials are added to the
//! basis and any term they divide is discarded on sight; for ideals primary to
//! the maximal ideal this bounds every intermediate polynomial.

use crate::monomial::{monomials_of_degree, Monomial, MAX_VARS};
use crate::poly::{add_scaled, canonicalize, make_monic, PolyRing, Term};
use alloc::vec::Vec;
use core::cmp::Ordering;

/// `m^degree ⊆ I`, where `m` is generated by the variables `from_var..nvars`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Truncation {
    pub degree: u32,
    pub from_var: usize,
}

impl Truncation {
    #[inline]
    fn kills(&self, m: &Monomial) -> bool {
        let mut d = m.degree();
        for i in 0..self.from_var {
            d -= m.exp(i);
        }
        d >= self.degree
    }

    fn generators(&self, nvars: usize) -> Vec<Vec<Term>> {
        monomials_of_degree(nvars - self.from_var, self.degree)
            .into_iter()
            .map(|m| {
                let mut e = [0u32; MAX_VARS];
                for i in self.from_var..nvars {
                    e[i] = m.exp(i - self.from_var);
                }
                alloc::vec![(Monomial::from_exponents(&e[..nvars]).expect("fits"), 1u32)]
            })
            .collect()
    }
}

fn truncate(f: &mut Vec<Term>, t: Option<&Truncation>) {
    if let Some(t) = t {
        f.retain(|term| !t.kills(&term.0));
    }
}

/// Cheap divisibility filter: bit `4v+k` is set when the exponent of
/// variable `v` reaches `1 << k`.
#[inline]
fn divmask(m: &Monomial) -> u32 {
    let mut mask = 0u32;
    for v in 0..MAX_VARS {
        let e = m.exp(v);
        for k in 0..4 {
            if e >= 1 << k {
                mask |= 1 << (4 * v + k);
            }
        }
    }
    mask
}

/// Fully reduces `f` by `reducers`, which must be monic with distinct leads.
/// Returns the remainder in canonical form.
pub(crate) fn reduce_full(
    ring: &PolyRing,
    reducers: &[(Monomial, u32, &[Term])],
    mut f: Vec<Term>,
    trunc: Option<&Truncation>,
) -> Vec<Term> {
    truncate(&mut f, trunc);
    let fp = ring.field();
    let mut rem: Vec<Term> = Vec::new();
    // f is kept sorted; we peel off its leading term each round
    let mut start = 0usize;
    while start < f.len() {
        let (m, c) = f[start];
        let mask = divmask(&m);
        let hit = reducers.iter().find(|(lead, lmask, _)| lmask & !mask == 0 && lead.divides(&m));
        match hit {
            Some((lead, _, g)) => {
                let q = lead.quotient_of(&m);
                let scale = fp.neg(c);
                // skip g's leading term: it cancels f[start] exactly
                let mut next = add_scaled(ring, &f[start + 1..], scale, &q, &g[1..]);
                truncate(&mut next, trunc);
                f = next;
                start = 0;
            }
            None => {
                rem.push((m, c));
                start += 1;
            }
        }
    }
    rem
}

#[derive(Clone)]
struct Entry {
    terms: Vec<Term>,
    lead: Monomial,
    mask: u32,
    sugar: u32,
    alive: bool,
}

#[derive(Clone, Copy)]
struct Pair {
    i: usize,
    j: usize,
    lcm: Monomial,
    sugar: u32,
}

fn sugar_of(f: &[Term]) -> u32 {
    f.iter().map(|t| t.0.degree()).max().unwrap_or(0)
}

fn spoly(ring: &PolyRing, a: &Entry, b: &Entry, lcm: &Monomial) -> Vec<Term> {
    let qa = a.lead.quotient_of(lcm);
    let qb = b.lead.quotient_of(lcm);
    let fp = ring.field();
    let left: Vec<Term> = a.terms[1..].iter().map(|&(m, c)| (qa.mul(&m), c)).collect();
    add_scaled(ring, &left, fp.neg(1), &qb, &b.terms[1..])
}

struct Engine<'r> {
    ring: &'r PolyRing,
    basis: Vec<Entry>,
    pairs: Vec<Pair>,
    trunc: Option<Truncation>,
}

impl<'r> Engine<'r> {
    fn reducers(&self) -> Vec<(Monomial, u32, &[Term])> {
        self.basis.iter().filter(|e| e.alive).map(|e| (e.lead, e.mask, &e.terms[..])).collect()
    }

    /// Gebauer–Möller update after adding the monic polynomial `h`.
    fn update(&mut self, h: Vec<Term>, sugar: u32) {
        let lead = h[0].0;
        let hidx = self.basis.len();
        let h_is_mono = h.len() == 1;
        self.basis.push(Entry { mask: divmask(&lead), lead, terms: h, sugar, alive: true });

        // candidate pairs (g, h)
        let mut cands: Vec<(usize, Monomial, bool)> = Vec::new();
        for (g, e) in self.basis[..hidx].iter().enumerate() {
            if !e.alive {
                continue;
            }
            cands.push((g, e.lead.lcm(&lead), e.lead.is_coprime(&lead)));
        }
        // chain criterion among the new pairs: drop (g1,h) when a proper divisor lcm exists
        let mut keep = alloc::vec![true; cands.len()];
        for a in 0..cands.len() {
            if cands[a].2 {
                continue;
            }
            for b in 0..cands.len() {
                if a == b || !keep[b] {
                    continue;
                }
                if cands[b].1.divides(&cands[a].1) && (cands[b].1 != cands[a].1 || b < a) {
                    keep[a] = false;
                    break;
                }
            }
        }
        // old pairs killed by h
        let basis = &self.basis;
        self.pairs.retain(|p| {
            !(lead.divides(&p.lcm)
                && basis[p.i].lead.lcm(&lead) != p.lcm
                && basis[p.j].lead.lcm(&lead) != p.lcm)
        });
        for (k, (g, lcm, coprime)) in cands.into_iter().enumerate() {
            if !keep[k] || coprime {
                continue;
            }
            if h_is_mono && self.basis[g].terms.len() == 1 {
                continue;
            }
            if let Some(t) = &self.trunc {
                if h_is_mono && t.kills(&lcm) {
                    // S(g, h) = (lcm/LT g) * tail(g); cheap test for total cancellation
                    let q = self.basis[g].lead.quotient_of(&lcm);
                    if self.basis[g].terms[1..].iter().all(|tm| t.kills(&q.mul(&tm.0))) {
                        continue;
                    }
                }
            }
            let sg = self.basis[g].sugar + self.basis[g].lead.quotient_of(&lcm).degree();
            let sh = sugar + lead.quotient_of(&lcm).degree();
            self.pairs.push(Pair { i: g, j: hidx, lcm, sugar: sg.max(sh) });
        }
        for g in 0..hidx {
            if self.basis[g].alive && lead.divides(&self.basis[g].lead) {
                self.basis[g].alive = false;
            }
        }
    }

    fn select(&mut self) -> Option<Pair> {
        if self.pairs.is_empty() {
            return None;
        }
        let ring = self.ring;
        let mut best = 0;
        for k in 1..self.pairs.len() {
            let (a, b) = (&self.pairs[k], &self.pairs[best]);
            let better = match a.sugar.cmp(&b.sugar) {
                Ordering::Less => true,
                Ordering::Greater => false,
                Ordering::Equal => ring.cmp(&a.lcm, &b.lcm) == Ordering::Less,
            };
            if better {
                best = k;
            }
        }
        Some(self.pairs.swap_remove(best))
    }
}

/// Computes the reduced Gröbner basis of the ideal generated by `gens`.
/// Output polynomials are monic and sorted by increasing leading monomial.
pub fn reduced_basis(ring: &PolyRing, gens: Vec<Vec<Term>>, trunc: Option<Truncation>) -> Vec<Vec<Term>> {
    let mut gens: Vec<Vec<Term>> = gens
        .into_iter()
        .map(|mut g| {
            truncate(&mut g, trunc.as_ref());
            g
        })
        .filter(|g| !g.is_empty())
        .collect();
    if gens.iter().any(|g| g.len() == 1 && g[0].0.is_one()) {
        return alloc::vec![alloc::vec![(Monomial::ONE, 1)]];
    }
    let walls = trunc.map(|t| t.generators(ring.nvars())).unwrap_or_default();
    if gens.iter().all(|g| g.len() == 1) {
        gens.extend(walls);
        return interreduce(ring, gens.into_iter().map(|g| alloc::vec![(g[0].0, 1)]).collect(), trunc.as_ref());
    }
    // monomials first, then by increasing leading monomial
    gens.sort_by(|a, b| (a.len() > 1).cmp(&(b.len() > 1)).then_with(|| ring.cmp(&a[0].0, &b[0].0)));

    let mut eng = Engine { ring, basis: Vec::new(), pairs: Vec::new(), trunc };
    // the truncation monomials are inserted as they are; reducing them would erase them
    for w in walls {
        let sugar = w[0].0.degree();
        eng.update(w, sugar);
    }
    for g in gens {
        let sugar = sugar_of(&g);
        let mut h = {
            let red = eng.reducers();
            reduce_full(ring, &red, g, trunc.as_ref())
        };
        if h.is_empty() {
            continue;
        }
        make_monic(ring, &mut h);
        if h[0].0.is_one() {
            return alloc::vec![alloc::vec![(Monomial::ONE, 1)]];
        }
        eng.update(h, sugar);
    }
    while let Some(p) = eng.select() {
        let s = spoly(ring, &eng.basis[p.i], &eng.basis[p.j], &p.lcm);
        let mut h = {
            let red = eng.reducers();
            reduce_full(ring, &red, s, trunc.as_ref())
        };
        if h.is_empty() {
            continue;
        }
        make_monic(ring, &mut h);
        if h[0].0.is_one() {
            return alloc::vec![alloc::vec![(Monomial::ONE, 1)]];
        }
        eng.update(h, p.sugar);
    }
    let alive: Vec<Vec<Term>> = eng.basis.into_iter().filter(|e| e.alive).map(|e| e.terms).collect();
    interreduce(ring, alive, trunc.as_ref())
}

/// Minimalizes and tail-reduces a Gröbner basis.
fn interreduce(ring: &PolyRing, mut g: Vec<Vec<Term>>, trunc: Option<&Truncation>) -> Vec<Vec<Term>> {
    for p in g.iter_mut() {
        make_monic(ring, p);
    }
    g.sort_by(|a, b| ring.cmp(&a[0].0, &b[0].0));
    g.dedup_by(|a, b| a[0].0 == b[0].0);
    let leads: Vec<Monomial> = g.iter().map(|p| p[0].0).collect();
    let minimal: Vec<Vec<Term>> = g
        .into_iter()
        .enumerate()
        .filter(|(i, _)| !leads.iter().enumerate().any(|(j, l)| j != *i && l.divides(&leads[*i])))
        .map(|(_, p)| p)
        .collect();
    let mut out: Vec<Vec<Term>> = Vec::with_capacity(minimal.len());
    for i in 0..minimal.len() {
        if minimal[i].len() == 1 {
            out.push(minimal[i].clone());
            continue;
        }
        let reducers: Vec<(Monomial, u32, &[Term])> = minimal
            .iter()
            .enumerate()
            .filter(|(j, _)| *j != i)
            .map(|(_, p)| (p[0].0, divmask(&p[0].0), &p[..]))
            .collect();
        let tail = reduce_full(ring, &reducers, minimal[i][1..].to_vec(), trunc);
        let mut p = alloc::vec![minimal[i][0]];
        p.extend(tail);
        out.push(p);
    }
    out
}

/// A reduced Gröbner basis packaged for repeated normal-form computations.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Basis {
    polys: Vec<Vec<Term>>,
    masks: Vec<u32>,
    trunc: Option<Truncation>,
}

impl Basis {
    pub fn compute(ring: &PolyRing, gens: Vec<Vec<Term>>, trunc: Option<Truncation>) -> Basis {
        let polys = reduced_basis(ring, gens, trunc);
        Self::from_reduced(polys, trunc)
    }

    pub(crate) fn from_reduced(polys: Vec<Vec<Term>>, trunc: Option<Truncation>) -> Basis {
        let masks = polys.iter().map(|p| divmask(&p[0].0)).collect();
        Basis { polys, masks, trunc }
    }

    pub fn polys(&self) -> &[Vec<Term>] {
        &self.polys
    }

    pub fn truncation(&self) -> Option<Truncation> {
        self.trunc
    }

    pub fn leads(&self) -> impl Iterator<Item = &Monomial> {
        self.polys.iter().map(|p| &p[0].0)
    }

    pub fn is_unit(&self) -> bool {
        self.polys.len() == 1 && self.polys[0][0].0.is_one()
    }

    pub fn is_zero(&self) -> bool {
        self.polys.is_empty()
    }

    /// True when some leading monomial divides `m`.
    pub fn lead_divides(&self, m: &Monomial) -> bool {
        let mask = divmask(m);
        self.polys.iter().zip(&self.masks).any(|(p, lm)| lm & !mask == 0 && p[0].0.divides(m))
    }

    pub fn normal_form(&self, ring: &PolyRing, f: Vec<Term>) -> Vec<Term> {
        let reducers: Vec<(Monomial, u32, &[Term])> =
            self.polys.iter().zip(&self.masks).map(|(p, m)| (p[0].0, *m, &p[..])).collect();
        reduce_full(ring, &reducers, f, self.trunc.as_ref())
    }
}

/// Checks Buchberger's criterion directly: every S-polynomial of `basis`
/// reduces to zero. Independent of the pair bookkeeping above.
pub fn satisfies_buchberger_criterion(ring: &PolyRing, basis: &[Vec<Term>]) -> bool {
    let b = Basis::from_reduced(basis.to_vec(), None);
    let entries: Vec<Entry> = basis
        .iter()
        .map(|p| Entry { terms: p.clone(), lead: p[0].0, mask: 0, sugar: 0, alive: true })
        .collect();
    for i in 0..entries.len() {
        for j in i + 1..entries.len() {
            let lcm = entries[i].lead.lcm(&entries[j].lead);
            let s = spoly(ring, &entries[i], &entries[j], &lcm);
            if !b.normal_form(ring, canonicalize(ring, s)).is_empty() {
                return false;
            }
        }
    }
    true
}
