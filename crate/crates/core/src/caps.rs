//! Enumeration limits. Every exhaustive search in the crate checks one of
//! these before it starts and fails with `Error::TooLarge` instead of hanging.

use crate::error::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Caps {
    /// Largest field size q accepted.
    pub field_size: u64,
    /// Largest degree handled by trial-division factorization.
    pub factor_degree: u64,
    /// Largest residue list (units or torsion points) materialized.
    pub residues: u64,
    /// Largest group whose subgroup lattice is enumerated.
    pub lattice: u64,
    /// Largest Z¹ whose subgroups are enumerated for radical detection.
    pub radical_z1: u64,
    /// Largest number of generator assignments tried while building Z¹.
    pub cocycle_search: u64,
    /// Largest ambient degree Φ(M) for a concrete cyclotomic field.
    pub field_degree: u64,
    /// Largest X-degree q^{deg M} of a dense Carlitz polynomial.
    pub carlitz_degree: u64,
}

impl Default for Caps {
    fn default() -> Self {
        Caps {
            field_size: 1024,
            factor_degree: 8,
            residues: 200_000,
            lattice: 128,
            radical_z1: 81,
            cocycle_search: 4_000_000,
            field_degree: 256,
            carlitz_degree: 6561,
        }
    }
}

impl Caps {
    /// Parses overrides of the form `lattice=256,radical_z1=729`.
    pub fn with_overrides(mut self, text: &str) -> Result<Caps> {
        for item in text.split(',').map(str::trim).filter(|s| !s.is_empty()) {
            let (key, value) = item
                .split_once('=')
                .ok_or_else(|| Error::Parse(format!("cap override `{item}` is not key=value")))?;
            let value: u64 = value
                .trim()
                .parse()
                .map_err(|_| Error::Parse(format!("cap value `{value}` is not an integer")))?;
            let slot = match key.trim() {
                "field_size" => &mut self.field_size,
                "factor_degree" => &mut self.factor_degree,
                "residues" => &mut self.residues,
                "lattice" => &mut self.lattice,
                "radical_z1" => &mut self.radical_z1,
                "cocycle_search" => &mut self.cocycle_search,
                "field_degree" => &mut self.field_degree,
                "carlitz_degree" => &mut self.carlitz_degree,
                other => return Err(Error::Parse(format!("unknown cap `{other}`"))),
            };
            *slot = value;
        }
        Ok(self)
    }

    /// Defaults plus whatever `CARLITZLAB_CAPS` sets.
    pub fn from_env() -> Result<Caps> {
        match std::env::var("CARLITZLAB_CAPS") {
            Ok(text) => Caps::default().with_overrides(&text),
            Err(_) => Ok(Caps::default()),
        }
    }
}
