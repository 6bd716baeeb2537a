//! Built-in instances `(R, I1, I2, x)` used by the verifier suites.

use alloc::sync::Arc;
use alloc::vec::Vec;

use crate::complex::ParameterSequence;
use crate::error::{Error, Result};
use crate::field::PrimeField;
use crate::hilbert::FiltrationPair;
use crate::ideal::Ideal;
use crate::parse::parse_poly_list;
use crate::poly::{PolyRing, Polynomial};

/// Textual description of an instance.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct CatalogEntry {
    pub name: &'static str,
    pub vars: &'static [&'static str],
    pub i1: &'static str,
    pub i2: &'static str,
    pub x: &'static str,
    pub summary: &'static str,
}

const ENTRIES: &[CatalogEntry] = &[
    CatalogEntry {
        name: "regular",
        vars: &["x", "y"],
        i1: "x, y",
        i2: "x, y",
        x: "x, y",
        summary: "I1 = I2 = m in k[x,y]",
    },
    CatalogEntry {
        name: "outside",
        vars: &["x", "y", "z"],
        i1: "x^4, y^2, z^2, x*y, x*z, y*z",
        i2: "x^2, y^2, z^2, x*y, x*z, y*z",
        x: "x^2 + y*z, y^2 + z^2 + x*z, x*z + x*y",
        summary: "I1 I2 = I1 (x) with (x) not inside I1",
    },
    CatalogEntry {
        name: "noninjective",
        vars: &["x", "y", "z"],
        i1: "x^4, y^3, z^3, x*y, x*z, y*z",
        i2: "x^3, y^3, z^3, x*y, x*z, y*z",
        x: "x^3 + y*z, y^3 + z^3 + x*z, x*z + x*y",
        summary: "(R/I1)^3 -> (x)/I1(x) is not injective",
    },
    CatalogEntry {
        name: "mm",
        vars: &["x", "y"],
        i1: "x, y",
        i2: "x^2, x*y, y^2",
        x: "x^2, y^2",
        summary: "minimal multiplicity: I1 I2 = I1 (x)",
    },
    CatalogEntry {
        name: "amm",
        vars: &["x", "y"],
        i1: "x, y",
        i2: "x^3, x^2*y, x*y^2, y^3",
        x: "x^3, y^3",
        summary: "almost minimal multiplicity with (x) ∩ I1 I2 = I1 (x), s = 1",
    },
    CatalogEntry {
        name: "neither",
        vars: &["x", "y"],
        i1: "x, y",
        i2: "x^4, x^3*y, x*y^3, y^4",
        x: "x^4, y^4",
        summary: "ℓ(I1 I2 / I1 (x)) = 3 and G(I2) is not Cohen-Macaulay",
    },
];

pub fn entries() -> &'static [CatalogEntry] {
    ENTRIES
}

pub fn entry(name: &str) -> Option<&'static CatalogEntry> {
    ENTRIES.iter().find(|e| e.name == name)
}

/// A parsed instance.
#[derive(Clone, Debug)]
pub struct Instance {
    pub name: &'static str,
    pub ring: Arc<PolyRing>,
    pub i1: Ideal,
    pub i2: Ideal,
    pub x: Vec<Polynomial>,
}

impl CatalogEntry {
    pub fn load(&self, field: PrimeField) -> Result<Instance> {
        let ring = PolyRing::new(self.vars, field)?;
        let i1 = Ideal::new(&ring, parse_poly_list(self.i1, &ring)?)?;
        let i2 = Ideal::new(&ring, parse_poly_list(self.i2, &ring)?)?;
        let x = parse_poly_list(self.x, &ring)?;
        Ok(Instance { name: self.name, ring, i1, i2, x })
    }
}

impl Instance {
    pub fn pair(&self) -> Result<FiltrationPair> {
        FiltrationPair::new(self.i1.clone(), self.i2.clone())
    }

    pub fn sequence(&self) -> Result<ParameterSequence> {
        ParameterSequence::new(self.x.clone(), &self.i2)
    }
}

/// Loads a catalog instance over the default field.
pub fn load(name: &str) -> Result<Instance> {
    entry(name)
        .ok_or_else(|| Error::InvalidArgument(alloc::format!("unknown instance {}", name)))?
        .load(PrimeField::default())
}
