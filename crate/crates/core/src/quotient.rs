//! Finite-dimensional quotients `N/D` of ideals with explicit bases.
//!
//! For `D ⊆ N` with `R/D` finite, the standard monomials of `N` are among
//! those of `D`. Each remaining standard monomial `u` of `D` gives the basis
//! vector `u - NF_N(u)`, which is already reduced modulo `D`. The coordinate
//! of an element of `N` on that vector is simply the coefficient of `u` in
//! its normal form modulo `D`.

use crate::error::{Error, Result};
use crate::ideal::Ideal;
use crate::linalg::SparseRow;
use crate::monomial::Monomial;
use crate::poly::Term;
use alloc::collections::BTreeMap;
use alloc::sync::Arc;
use alloc::vec::Vec;

#[derive(Clone, Debug)]
pub struct QuotientSpace {
    num: Arc<Ideal>,
    den: Arc<Ideal>,
    basis: Vec<Monomial>,
    position: BTreeMap<Monomial, usize>,
}

impl QuotientSpace {
    pub fn new(num: Arc<Ideal>, den: Arc<Ideal>) -> Result<QuotientSpace> {
        let std_den = den.standard_monomials().ok_or(Error::NotFiniteColength)?;
        if !num.contains(&den)? {
            return Err(Error::NotContained);
        }
        let basis: Vec<Monomial> = std_den.iter().copied().filter(|u| num.basis().lead_divides(u)).collect();
        let position = basis.iter().enumerate().map(|(i, m)| (*m, i)).collect();
        Ok(QuotientSpace { num, den, basis, position })
    }

    pub fn numerator(&self) -> &Arc<Ideal> {
        &self.num
    }

    pub fn denominator(&self) -> &Arc<Ideal> {
        &self.den
    }

    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    /// Representative of basis vector `k`.
    pub fn basis_vector(&self, k: usize) -> Vec<Term> {
        let u = self.basis[k];
        let ring = self.num.ring();
        let r = self.num.basis().normal_form(ring, alloc::vec![(u, 1)]);
        let fp = ring.field();
        let mut v = alloc::vec![(u, 1)];
        v.extend(r.into_iter().map(|(m, c)| (m, fp.neg(c))));
        v
    }

    /// Coordinates of the class of `f`, which must lie in the numerator.
    pub fn coordinates(&self, f: Vec<Term>) -> SparseRow {
        let ring = self.den.ring();
        let nf = self.den.basis().normal_form(ring, f);
        let mut row: SparseRow = nf.into_iter().filter_map(|(m, c)| self.position.get(&m).map(|&i| (i, c))).collect();
        row.sort_by_key(|e| e.0);
        row
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::PrimeField;
    use crate::parse::parse_poly_list;
    use crate::poly::PolyRing;

    #[test]
    fn maximal_ideal_mod_its_square() {
        let r = PolyRing::new(&["x", "y", "z"], PrimeField::default()).unwrap();
        let m = Arc::new(Ideal::maximal_power(&r, 1));
        let m2 = Arc::new(Ideal::maximal_power(&r, 2));
        let q = QuotientSpace::new(m, m2).unwrap();
        assert_eq!(q.dim(), 3);
        for k in 0..3 {
            let row = q.coordinates(q.basis_vector(k));
            assert_eq!(row, alloc::vec![(k, 1)]);
        }
    }

    #[test]
    fn inhomogeneous_numerator() {
        let r = PolyRing::new(&["x", "y"], PrimeField::default()).unwrap();
        let n = Arc::new(Ideal::new(&r, parse_poly_list("y - x^2, x^3", &r).unwrap()).unwrap());
        let d = Arc::new(Ideal::maximal_power(&r, 4));
        let q = QuotientSpace::new(n.clone(), d.clone()).unwrap();
        assert_eq!(q.dim(), d.colength().unwrap() - n.colength().unwrap());
        let g = n.generators()[0].terms().to_vec();
        assert!(!q.coordinates(g).is_empty());
        assert!(QuotientSpace::new(d, n).is_err());
    }
}
