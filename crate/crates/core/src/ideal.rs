//! Ideals of `F_p[x_1..x_d]` with eagerly computed reduced Gröbner bases,
//! and the ideal calculus: sums, products, powers, intersections and colons.

use crate::error::{Error, Result};
use crate::groebner::{Basis, Truncation};
use crate::monomial::{monomials_of_degree, Monomial, MonomialOrder};
use crate::poly::{add_scaled, PolyRing, Polynomial, Term};
use alloc::collections::BTreeMap;
use alloc::collections::BTreeSet;
use alloc::sync::Arc;
use alloc::vec::Vec;
use core::fmt;

/// Local colength searches give up beyond this power of the maximal ideal.
const MAX_LOCAL_DEGREE: u32 = 96;

#[derive(Clone)]
pub struct Ideal {
    ring: Arc<PolyRing>,
    gens: Vec<Polynomial>,
    basis: Basis,
    std: Option<Vec<Monomial>>,
    index: Option<u32>,
}

impl PartialEq for Ideal {
    fn eq(&self, other: &Self) -> bool {
        *self.ring == *other.ring && self.basis.polys() == other.basis.polys()
    }
}
impl Eq for Ideal {}

impl fmt::Debug for Ideal {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(")?;
        for (i, g) in self.gens.iter().enumerate() {
            if i > 0 {
                write!(f, ", ")?;
            }
            write!(f, "{}", g)?;
        }
        write!(f, ")")
    }
}

impl fmt::Display for Ideal {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Debug::fmt(self, f)
    }
}

fn same_ring(a: &Arc<PolyRing>, b: &Arc<PolyRing>) -> Result<()> {
    if Arc::ptr_eq(a, b) || **a == **b {
        Ok(())
    } else {
        Err(Error::RingMismatch)
    }
}

/// Standard monomials of a basis, or `None` when there are infinitely many.
fn standard_monomials(ring: &PolyRing, basis: &Basis) -> Option<Vec<Monomial>> {
    let n = ring.nvars();
    if basis.is_unit() {
        return Some(Vec::new());
    }
    for v in 0..n {
        let pure = basis.leads().any(|l| l.exp(v) == l.degree() && l.degree() > 0);
        if !pure {
            return None;
        }
    }
    let mut seen = BTreeSet::new();
    let mut frontier = alloc::vec![Monomial::ONE];
    seen.insert(Monomial::ONE);
    while let Some(m) = frontier.pop() {
        for v in 0..n {
            let next = m.mul(&Monomial::var(v));
            if !basis.lead_divides(&next) && seen.insert(next) {
                frontier.push(next);
            }
        }
    }
    let mut out: Vec<Monomial> = seen.into_iter().collect();
    out.sort_by(|a, b| ring.cmp(b, a));
    Some(out)
}

impl Ideal {
    fn build(ring: &Arc<PolyRing>, gens: Vec<Polynomial>, trunc: Option<Truncation>) -> Ideal {
        let terms: Vec<Vec<Term>> = gens.iter().filter(|g| !g.is_zero()).map(|g| g.terms().to_vec()).collect();
        let basis = Basis::compute(ring, terms, trunc);
        Self::from_basis(ring, gens, basis, trunc.map(|t| t.degree))
    }

    fn from_basis(ring: &Arc<PolyRing>, gens: Vec<Polynomial>, basis: Basis, bound: Option<u32>) -> Ideal {
        let std = standard_monomials(ring, &basis);
        let mut gens: Vec<Polynomial> = gens.into_iter().filter(|g| !g.is_zero()).map(|g| g.monic()).collect();
        gens.sort();
        gens.dedup();
        let mut ideal = Ideal { ring: ring.clone(), gens, basis, std, index: None };
        ideal.index = ideal.find_index(bound);
        ideal
    }

    /// Smallest `a` with `m^a ⊆ I`, if any.
    fn find_index(&self, bound: Option<u32>) -> Option<u32> {
        let std = self.std.as_ref()?;
        let start = std.iter().map(|m| m.degree() + 1).max().unwrap_or(0);
        let stop = match bound {
            Some(b) => b.max(start),
            None => (std.len() as u32).max(start),
        };
        (start..=stop).find(|&a| {
            monomials_of_degree(self.ring.nvars(), a)
                .into_iter()
                .all(|m| self.basis.normal_form(&self.ring, alloc::vec![(m, 1)]).is_empty())
        })
    }

    /// The ideal generated by `gens` in the polynomial ring.
    pub fn new(ring: &Arc<PolyRing>, gens: Vec<Polynomial>) -> Result<Ideal> {
        for g in &gens {
            same_ring(ring, g.ring())?;
        }
        Ok(Self::build(ring, gens, None))
    }

    /// The contraction to the polynomial ring of the ideal generated by `gens`
    /// in the localization at the origin, i.e. its primary component at the
    /// maximal ideal. Fails unless that component is primary to the maximal ideal.
    pub fn local(ring: &Arc<PolyRing>, gens: Vec<Polynomial>) -> Result<Ideal> {
        let global = Self::new(ring, gens)?;
        if global.index.is_some() {
            return Ok(global);
        }
        if global.gens.iter().any(|g| g.order_at_origin() == Some(0)) {
            // a unit of the local ring
            return Ok(Self::unit(ring));
        }
        let gens = global.gens.clone();
        let colen = |d: u32| -> Ideal { Self::build(ring, gens.clone(), Some(Truncation { degree: d, from_var: 0 })) };
        let mut prev = colen(1);
        for d in 2..=MAX_LOCAL_DEGREE {
            let next = colen(d);
            if next.colength() == prev.colength() {
                return Ok(prev);
            }
            prev = next;
        }
        Err(Error::NotFiniteColength)
    }

    pub fn unit(ring: &Arc<PolyRing>) -> Ideal {
        Self::from_basis(
            ring,
            alloc::vec![Polynomial::one(ring)],
            Basis::from_reduced(alloc::vec![alloc::vec![(Monomial::ONE, 1)]], None),
            None,
        )
    }

    pub fn zero(ring: &Arc<PolyRing>) -> Ideal {
        Self::from_basis(ring, Vec::new(), Basis::from_reduced(Vec::new(), None), None)
    }

    /// `m^n`, with `m^n = R` for `n <= 0`.
    pub fn maximal_power(ring: &Arc<PolyRing>, n: i64) -> Ideal {
        if n <= 0 {
            return Self::unit(ring);
        }
        let gens: Vec<Polynomial> =
            monomials_of_degree(ring.nvars(), n as u32).into_iter().map(|m| Polynomial::monomial(ring, m)).collect();
        Self::build(ring, gens, None)
    }

    pub fn ring(&self) -> &Arc<PolyRing> {
        &self.ring
    }

    /// The generators as supplied (made monic, sorted, deduplicated).
    pub fn generators(&self) -> &[Polynomial] {
        &self.gens
    }

    pub fn basis(&self) -> &Basis {
        &self.basis
    }

    /// Reduced Gröbner basis as polynomials, increasing by leading monomial.
    pub fn groebner_basis(&self) -> Vec<Polynomial> {
        self.basis.polys().iter().map(|p| Polynomial::from_canonical(&self.ring, p.clone())).collect()
    }

    pub fn is_unit(&self) -> bool {
        self.basis.is_unit()
    }

    pub fn is_zero(&self) -> bool {
        self.basis.is_zero()
    }

    /// Standard monomials, when the quotient is finite dimensional.
    pub fn standard_monomials(&self) -> Option<&[Monomial]> {
        self.std.as_deref()
    }

    /// `dim_k R/I`, when finite.
    pub fn colength(&self) -> Option<usize> {
        self.std.as_ref().map(|s| s.len())
    }

    /// Smallest `a` with `m^a ⊆ I`, present exactly when `I` is primary to
    /// the maximal ideal (or is the unit ideal, index 0).
    pub fn index(&self) -> Option<u32> {
        self.index
    }

    /// True when the radical of `I` is the maximal ideal of the variables.
    pub fn is_m_primary(&self) -> bool {
        self.index.is_some() && !self.is_unit()
    }

    /// True when `R/I` is finite dimensional: a pure power of every variable
    /// appears among the leading monomials.
    pub fn has_finite_colength(&self) -> bool {
        self.std.is_some()
    }

    pub fn normal_form(&self, f: &Polynomial) -> Result<Polynomial> {
        same_ring(&self.ring, f.ring())?;
        Ok(Polynomial::from_canonical(&self.ring, self.basis.normal_form(&self.ring, f.terms().to_vec())))
    }

    pub fn contains_poly(&self, f: &Polynomial) -> Result<bool> {
        Ok(self.normal_form(f)?.is_zero())
    }

    /// `J ⊆ self`.
    pub fn contains(&self, other: &Ideal) -> Result<bool> {
        same_ring(&self.ring, &other.ring)?;
        if self.is_unit() {
            return Ok(true);
        }
        Ok(other.basis.polys().iter().all(|p| self.basis.normal_form(&self.ring, p.clone()).is_empty()))
    }

    fn combine_trunc(&self, bound: Option<u32>) -> Option<Truncation> {
        bound.map(|degree| Truncation { degree, from_var: 0 })
    }

    pub fn sum(&self, other: &Ideal) -> Result<Ideal> {
        same_ring(&self.ring, &other.ring)?;
        let bound = match (self.index, other.index) {
            (Some(a), Some(b)) => Some(a.min(b)),
            (a, b) => a.or(b),
        };
        let mut gens = self.gens.clone();
        gens.extend(other.gens.iter().cloned());
        Ok(Self::build(&self.ring, gens, self.combine_trunc(bound)))
    }

    fn product_generators(&self, other: &Ideal) -> Result<Vec<Polynomial>> {
        let mut gens = Vec::with_capacity(self.gens.len() * other.gens.len());
        for a in &self.gens {
            for b in &other.gens {
                gens.push(a.mul(b)?);
            }
        }
        Ok(gens)
    }

    pub fn product(&self, other: &Ideal) -> Result<Ideal> {
        same_ring(&self.ring, &other.ring)?;
        if self.is_unit() {
            return Ok(other.clone());
        }
        if other.is_unit() {
            return Ok(self.clone());
        }
        let bound = match (self.index, other.index) {
            (Some(a), Some(b)) => Some(a + b),
            _ => None,
        };
        let gens = self.product_generators(other)?;
        Ok(Self::build(&self.ring, gens, self.combine_trunc(bound)))
    }

    /// `I^n`, with `I^n = R` for `n <= 0`.
    pub fn power(&self, n: i64) -> Result<Ideal> {
        if n <= 0 {
            return Ok(Self::unit(&self.ring));
        }
        let mut acc = self.clone();
        for _ in 1..n {
            acc = acc.product(self)?;
            acc = acc.with_basis_generators();
        }
        Ok(acc)
    }

    /// Replaces the generator list by the reduced Gröbner basis when that is shorter.
    pub(crate) fn with_basis_generators(mut self) -> Ideal {
        if self.basis.polys().len() < self.gens.len() {
            self.gens = self.groebner_basis();
        }
        self
    }

    pub fn intersect(&self, other: &Ideal) -> Result<Ideal> {
        same_ring(&self.ring, &other.ring)?;
        if self.is_unit() {
            return Ok(other.clone());
        }
        if other.is_unit() {
            return Ok(self.clone());
        }
        if self.is_zero() || other.is_zero() {
            return Ok(Self::zero(&self.ring));
        }
        let all_monomial = self.basis.polys().iter().chain(other.basis.polys()).all(|p| p.len() == 1);
        if all_monomial {
            let mut gens = Vec::new();
            for a in self.basis.leads() {
                for b in other.basis.leads() {
                    gens.push(Polynomial::monomial(&self.ring, a.lcm(b)));
                }
            }
            return Ok(Self::build(&self.ring, gens, None));
        }
        self.intersect_elim(other)
    }

    /// Intersection through elimination of an auxiliary variable, for any inputs.
    pub(crate) fn intersect_elim(&self, other: &Ideal) -> Result<Ideal> {
        let bound = match (self.index, other.index) {
            (Some(a), Some(b)) => Some(a.max(b)),
            _ => None,
        };
        // t*I + (1-t)*J, eliminate t
        let big = self.ring.elimination_ring("_t")?;
        debug_assert_eq!(big.order(), MonomialOrder::Elimination { block: 1 });
        let t = Monomial::var(0);
        let fp = self.ring.field();
        let mut gens: Vec<Vec<Term>> = Vec::new();
        for g in self.basis.polys() {
            let up: Vec<Term> = g.iter().map(|&(m, c)| (m.shifted_up(), c)).collect();
            gens.push(up.iter().map(|&(m, c)| (m.mul(&t), c)).collect());
        }
        for g in other.basis.polys() {
            let up: Vec<Term> = crate::poly::canonicalize(&big, g.iter().map(|&(m, c)| (m.shifted_up(), c)).collect());
            // (1 - t) * g = g - t*g
            gens.push(add_scaled(&big, &up, fp.neg(1), &t, &up));
        }
        let trunc = bound.map(|degree| Truncation { degree, from_var: 1 });
        let eb = Basis::compute(&big, gens, trunc);
        let kept: Vec<Vec<Term>> = eb
            .polys()
            .iter()
            .filter(|p| p.iter().all(|(m, _)| m.exp(0) == 0))
            .map(|p| crate::poly::canonicalize(&self.ring, p.iter().map(|&(m, c)| (m.shifted_down(), c)).collect()))
            .collect();
        let gens: Vec<Polynomial> = kept.iter().map(|p| Polynomial::from_canonical(&self.ring, p.clone())).collect();
        // the eliminated part of a reduced basis is itself a reduced basis
        let basis = Basis::from_reduced(kept, bound.map(|degree| Truncation { degree, from_var: 0 }));
        Ok(Self::from_basis(&self.ring, gens, basis, bound))
    }

    /// `(I : g)`. For ideals primary to the maximal ideal this is read off the
    /// kernel of multiplication by `g` on `R/I`; otherwise it is computed as
    /// `(I ∩ (g)) / g`.
    pub fn colon_poly(&self, g: &Polynomial) -> Result<Ideal> {
        same_ring(&self.ring, g.ring())?;
        if self.index.is_some() && !g.is_zero() {
            self.colon_poly_linear(g)
        } else {
            self.colon_poly_elim(g)
        }
    }

    /// `(I : g) = (I ∩ (g)) / g`.
    pub fn colon_poly_elim(&self, g: &Polynomial) -> Result<Ideal> {
        same_ring(&self.ring, g.ring())?;
        if g.is_zero() {
            return Ok(Self::unit(&self.ring));
        }
        let principal = Self::new(&self.ring, alloc::vec![g.clone()])?;
        let inter = self.intersect(&principal)?;
        let mut gens = Vec::with_capacity(inter.basis.polys().len());
        for h in inter.basis.polys() {
            gens.push(Polynomial::from_canonical(&self.ring, divide_exact(&self.ring, h, g.terms())?));
        }
        let trunc = self.index.map(|degree| Truncation { degree, from_var: 0 });
        Ok(Self::build(&self.ring, gens, trunc))
    }

    fn colon_poly_linear(&self, g: &Polynomial) -> Result<Ideal> {
        let std = self.std.as_ref().ok_or(Error::NotFiniteColength)?;
        let fp = *self.ring.field();
        let position: BTreeMap<Monomial, usize> = std.iter().enumerate().map(|(i, m)| (*m, i)).collect();
        let rows = std.iter().map(|u| {
            let prod: Vec<Term> = g.terms().iter().map(|&(m, c)| (m.mul(u), c)).collect();
            let prod = crate::poly::canonicalize(&self.ring, prod);
            let nf = self.basis.normal_form(&self.ring, prod);
            crate::linalg::sparse_from(&fp, nf.into_iter().map(|(m, c)| (position[&m], c)).collect())
        });
        let mut gens = self.gens.clone();
        for comb in crate::linalg::left_kernel(&fp, rows) {
            let terms = comb.into_iter().map(|(i, c)| (std[i], c)).collect();
            gens.push(Polynomial::from_terms(&self.ring, terms));
        }
        let trunc = self.index.map(|degree| Truncation { degree, from_var: 0 });
        Ok(Self::build(&self.ring, gens, trunc))
    }

    /// `(I : J) = ∩_{g ∈ gens(J)} (I : g)`.
    pub fn colon(&self, other: &Ideal) -> Result<Ideal> {
        same_ring(&self.ring, &other.ring)?;
        let mut acc = Self::unit(&self.ring);
        for g in &other.gens {
            acc = acc.intersect(&self.colon_poly(g)?)?;
        }
        Ok(acc)
    }

    /// `(I : J)` through intersections with principal ideals only.
    pub fn colon_by_elimination(&self, other: &Ideal) -> Result<Ideal> {
        same_ring(&self.ring, &other.ring)?;
        let mut acc = Self::unit(&self.ring);
        for g in &other.gens {
            acc = acc.intersect(&self.colon_poly_elim(g)?)?;
        }
        Ok(acc)
    }

    /// The ideal generated by `gens` when `m^bound` is known to lie inside it.
    pub fn with_bound(ring: &Arc<PolyRing>, gens: Vec<Polynomial>, bound: u32) -> Result<Ideal> {
        for g in &gens {
            same_ring(ring, g.ring())?;
        }
        Ok(Self::build(ring, gens, Some(Truncation { degree: bound, from_var: 0 })))
    }
}

/// Exact quotient `h / g`; errors if `g` does not divide `h`.
fn divide_exact(ring: &PolyRing, h: &[Term], g: &[Term]) -> Result<Vec<Term>> {
    let fp = ring.field();
    let (lg, cg) = g[0];
    let inv = fp.inv(cg);
    let mut rest = h.to_vec();
    let mut q: Vec<Term> = Vec::new();
    while let Some(&(m, c)) = rest.first() {
        if !lg.divides(&m) {
            return Err(Error::NotContained);
        }
        let mono = lg.quotient_of(&m);
        let coef = fp.mul(c, inv);
        q.push((mono, coef));
        rest = add_scaled(ring, &rest, fp.neg(coef), &mono, g);
    }
    Ok(q)
}

/// Session-wide memo table of ideals keyed by their canonical generator lists.
/// Concurrent callers may compute the same entry twice; the first insert wins.
#[derive(Default)]
pub struct IdealMemo {
    table: spin::Mutex<BTreeMap<Vec<Vec<Term>>, Arc<Ideal>>>,
}

impl IdealMemo {
    pub fn new() -> Self {
        Self::default()
    }

    fn key(gens: &[Polynomial]) -> Vec<Vec<Term>> {
        let mut k: Vec<Vec<Term>> = gens.iter().filter(|g| !g.is_zero()).map(|g| g.monic().into_terms()).collect();
        k.sort();
        k.dedup();
        k
    }

    pub fn get(&self, gens: &[Polynomial]) -> Option<Arc<Ideal>> {
        self.table.lock().get(&Self::key(gens)).cloned()
    }

    /// Looks up the ideal generated by `gens`, building it with `make` on a miss.
    pub fn get_or_insert_with<F>(&self, gens: &[Polynomial], make: F) -> Result<Arc<Ideal>>
    where
        F: FnOnce() -> Result<Ideal>,
    {
        let key = Self::key(gens);
        if let Some(hit) = self.table.lock().get(&key) {
            return Ok(hit.clone());
        }
        let built = Arc::new(make()?);
        let mut table = self.table.lock();
        Ok(table.entry(key).or_insert(built).clone())
    }

    pub fn len(&self) -> usize {
        self.table.lock().len()
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::PrimeField;
    use crate::groebner::satisfies_buchberger_criterion;
    use crate::parse::{parse_poly, parse_poly_list};
    use proptest::prelude::*;

    fn ring(names: &[&str]) -> Arc<PolyRing> {
        PolyRing::new(names, PrimeField::default()).unwrap()
    }

    fn xyz() -> Arc<PolyRing> {
        ring(&["x", "y", "z"])
    }

    fn id(r: &Arc<PolyRing>, s: &str) -> Ideal {
        Ideal::new(r, parse_poly_list(s, r).unwrap()).unwrap()
    }

    #[test]
    fn monomial_generators_are_their_own_basis() {
        let r = xyz();
        let i = id(&r, "x^2, y^2, z^2, x*y, x*z, y*z");
        let mut gb = i.groebner_basis();
        let mut gens = parse_poly_list("x^2, y^2, z^2, x*y, x*z, y*z", &r).unwrap();
        gb.sort();
        gens.sort();
        assert_eq!(gb, gens);
    }

    #[test]
    fn principal_in_one_variable() {
        let r = ring(&["x"]);
        assert_eq!(id(&r, "x").groebner_basis(), parse_poly_list("x", &r).unwrap());
    }

    #[test]
    fn parameter_ideal_basis_passes_criterion() {
        let r = xyz();
        let i = id(&r, "x^2+y*z, y^2+z^2+x*z, x*z+x*y");
        assert!(satisfies_buchberger_criterion(&r, i.basis().polys()));
        for g in i.generators() {
            assert!(i.contains_poly(g).unwrap());
        }
        let again = Ideal::new(&r, i.groebner_basis()).unwrap();
        assert_eq!(again.groebner_basis(), i.groebner_basis());
    }

    #[test]
    fn normal_forms() {
        let r = ring(&["x", "y"]);
        let i = id(&r, "x^2, x*y");
        assert!(i.normal_form(&parse_poly("x^2", &r).unwrap()).unwrap().is_zero());
        let m2 = Ideal::maximal_power(&r, 2);
        let f = parse_poly("x+y", &r).unwrap();
        assert_eq!(m2.normal_form(&f).unwrap(), f);
        let r3 = xyz();
        let f = parse_poly("x^2*y+y^2*z", &r3).unwrap();
        assert!(Ideal::maximal_power(&r3, 2).normal_form(&f).unwrap().is_zero());
    }

    #[test]
    fn coprime_principal_intersection() {
        let r = ring(&["x", "y"]);
        assert_eq!(id(&r, "x").intersect(&id(&r, "y")).unwrap(), id(&r, "x*y"));
        assert_eq!(id(&r, "x").intersect_elim(&id(&r, "y")).unwrap(), id(&r, "x*y"));
    }

    #[test]
    fn principal_colon() {
        let r = ring(&["x", "y"]);
        assert_eq!(id(&r, "x*y").colon(&id(&r, "x")).unwrap(), id(&r, "y"));
    }

    #[test]
    fn product_with_reduction() {
        let r = xyz();
        let i1 = id(&r, "x^4, y^2, z^2, x*y, x*z, y*z");
        let i2 = Ideal::maximal_power(&r, 2);
        let x = id(&r, "x^2+y*z, y^2+z^2+x*z, x*z+x*y");
        assert_eq!(i1.product(&i2).unwrap(), i1.product(&x).unwrap());
    }

    #[test]
    fn primariness() {
        let r = xyz();
        assert!(Ideal::maximal_power(&r, 2).is_m_primary());
        assert!(id(&r, "x^4, y^2, z^2, x*y, x*z, y*z").is_m_primary());
        let r2 = ring(&["x", "y"]);
        assert!(!id(&r2, "x").is_m_primary());
        assert!(!id(&r2, "x").has_finite_colength());
    }

    #[test]
    fn nonpositive_powers_are_the_unit_ideal() {
        let r = xyz();
        let i = id(&r, "x, y^2, z");
        assert!(i.power(0).unwrap().is_unit());
        assert!(i.power(-3).unwrap().is_unit());
        assert_eq!(i.power(1).unwrap(), i);
    }

    #[test]
    fn local_component_drops_far_zeros() {
        let r = ring(&["x", "y"]);
        // (x - x^2, y) has zeros at the origin and at (1, 0)
        let i = Ideal::local(&r, parse_poly_list("x - x^2, y", &r).unwrap()).unwrap();
        assert_eq!(i, id(&r, "x, y"));
        assert_eq!(i.colength(), Some(1));
        let g = id(&r, "x - x^2, y");
        assert_eq!(g.colength(), Some(2));
        assert!(!g.is_m_primary());
        let u = Ideal::local(&r, parse_poly_list("1 + x, y", &r).unwrap()).unwrap();
        assert!(u.is_unit());
    }

    #[test]
    fn index_of_inhomogeneous_ideal() {
        let r = ring(&["x", "y"]);
        let i = id(&r, "y - x^2, x^3");
        assert_eq!(i.colength(), Some(3));
        // y^2 = x^4 mod I, so m^3 is the first power inside
        assert_eq!(i.index(), Some(3));
    }

    #[test]
    fn colon_of_truncated_product() {
        let r = xyz();
        let i1 = id(&r, "x^4, y^2, z^2, x*y, x*z, y*z");
        let i2 = Ideal::maximal_power(&r, 2);
        let p = i1.product(&i2).unwrap();
        let x = id(&r, "x^2+y*z, y^2+z^2+x*z, x*z+x*y");
        let c = p.colon(&x).unwrap();
        assert!(c.contains(&i1).unwrap());
        assert!(p.contains(&c.product(&x).unwrap()).unwrap());
    }

    // ---- combinatorial oracle for monomial ideals ----

    fn mono(e: &[u32]) -> Monomial {
        Monomial::from_exponents(e).unwrap()
    }

    fn in_monomial_ideal(gens: &[Monomial], m: &Monomial) -> bool {
        gens.iter().any(|g| g.divides(m))
    }

    fn mono_ideal(r: &Arc<PolyRing>, gens: &[Monomial]) -> Ideal {
        Ideal::new(r, gens.iter().map(|m| Polynomial::monomial(r, *m)).collect()).unwrap()
    }

    /// Membership of all monomials up to a degree decides equality of
    /// monomial ideals whose generators live below that degree.
    fn same_monomial_ideal(i: &Ideal, gens: &[Monomial], deg: u32) -> bool {
        (0..=deg).all(|d| {
            monomials_of_degree(i.ring().nvars(), d).into_iter().all(|m| {
                i.contains_poly(&Polynomial::monomial(i.ring(), m)).unwrap() == in_monomial_ideal(gens, &m)
            })
        })
    }

    fn arb_gens() -> impl Strategy<Value = Vec<Monomial>> {
        prop::collection::vec((0u32..4, 0u32..4, 0u32..3), 1..4)
            .prop_map(|v| v.into_iter().map(|(a, b, c)| mono(&[a, b, c])).filter(|m| !m.is_one()).collect())
            .prop_filter("nonempty", |v: &Vec<Monomial>| !v.is_empty())
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(48))]

        #[test]
        fn intersection_matches_lcm_oracle(a in arb_gens(), b in arb_gens()) {
            let r = xyz();
            let (i, j) = (mono_ideal(&r, &a), mono_ideal(&r, &b));
            let lcms: Vec<Monomial> = a.iter().flat_map(|u| b.iter().map(move |v| u.lcm(v))).collect();
            prop_assert!(same_monomial_ideal(&i.intersect_elim(&j).unwrap(), &lcms, 12));
            prop_assert!(same_monomial_ideal(&i.intersect(&j).unwrap(), &lcms, 12));
        }

        #[test]
        fn colon_matches_divide_oracle(a in arb_gens(), b in arb_gens()) {
            let r = xyz();
            let (i, j) = (mono_ideal(&r, &a), mono_ideal(&r, &b));
            let c = i.colon(&j).unwrap();
            // (I : J) is the set of monomials u with u*v in I for every generator v of J
            for d in 0..=8 {
                for u in monomials_of_degree(3, d) {
                    let oracle = b.iter().all(|v| in_monomial_ideal(&a, &u.mul(v)));
                    prop_assert_eq!(c.contains_poly(&Polynomial::monomial(&r, u)).unwrap(), oracle);
                }
            }
        }

        #[test]
        fn lattice_inclusions(a in arb_gens(), b in arb_gens()) {
            let r = xyz();
            let mut i = mono_ideal(&r, &a);
            let j = mono_ideal(&r, &b);
            // perturb into a non-monomial ideal
            let extra = i.generators()[0].add(&Polynomial::monomial(&r, mono(&[1, 1, 1]))).unwrap();
            let mut g = i.generators().to_vec();
            g.push(extra);
            i = Ideal::new(&r, g).unwrap();
            let s = i.sum(&j).unwrap();
            let p = i.product(&j).unwrap();
            let n = i.intersect(&j).unwrap();
            let c = i.colon(&j).unwrap();
            prop_assert!(s.contains(&i).unwrap() && s.contains(&j).unwrap());
            prop_assert!(n.contains(&p).unwrap() && i.contains(&n).unwrap() && j.contains(&n).unwrap());
            prop_assert!(i.contains(&c.product(&j).unwrap()).unwrap());
            prop_assert!(c.contains(&i).unwrap());
            prop_assert_eq!(c.is_unit(), i.contains(&j).unwrap());
        }

        #[test]
        fn bounded_operations_match_unbounded(a in arb_gens(), b in arb_gens(), c in 0u32..32003) {
            let r = xyz();
            let bump = |gens: &[Monomial], k: i64| {
                let mut g: Vec<Polynomial> = gens.iter().map(|m| Polynomial::monomial(&r, *m)).collect();
                g[0] = g[0].add(&Polynomial::monomial(&r, mono(&[0, 1, 1])).scale(c)).unwrap();
                g.extend(Ideal::maximal_power(&r, k).generators().iter().cloned());
                g
            };
            let (ga, gb) = (bump(&a, 4), bump(&b, 3));
            let i = Ideal::new(&r, ga.clone()).unwrap();
            let j = Ideal::new(&r, gb.clone()).unwrap();
            prop_assert!(i.index().is_some() && j.index().is_some());
            let prods: Vec<Polynomial> = ga.iter().flat_map(|p| gb.iter().map(move |q| p.mul(q).unwrap())).collect();
            prop_assert_eq!(i.product(&j).unwrap(), Ideal::new(&r, prods).unwrap());
            let mut sums = ga.clone();
            sums.extend(gb.iter().cloned());
            prop_assert_eq!(i.sum(&j).unwrap(), Ideal::new(&r, sums).unwrap());
            let n = i.intersect(&j).unwrap();
            prop_assert_eq!(n.colength().unwrap() + i.sum(&j).unwrap().colength().unwrap(),
                i.colength().unwrap() + j.colength().unwrap());
            prop_assert!(i.contains(&n).unwrap() && j.contains(&n).unwrap());
        }

        #[test]
        fn linear_colon_matches_elimination(a in arb_gens(), c in 1u32..32003) {
            let r = xyz();
            let mut g: Vec<Polynomial> = a.iter().map(|m| Polynomial::monomial(&r, *m)).collect();
            g.extend(Ideal::maximal_power(&r, 4).generators().iter().cloned());
            let i = Ideal::new(&r, g).unwrap();
            let f = parse_poly("x + y*z", &r).unwrap().add(&Polynomial::monomial(&r, mono(&[0, 2, 0])).scale(c)).unwrap();
            prop_assert_eq!(i.colon_poly(&f).unwrap(), i.colon_poly_elim(&f).unwrap());
        }
    }
}
