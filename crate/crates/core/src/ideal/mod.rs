//! Ideals and the ideal-level operations the Segre pipeline consumes.
//!
//! Quotients, saturations and eliminations are global computations in the
//! polynomial ring. Only the germ at the origin of their results is ever
//! consumed: components of the closure that stay away from the origin do not
//! change any local multiplicity, so Zariski closures stand in for the
//! analytic ones.

mod hilbert;
mod ops;

use std::fmt;
use std::sync::{Arc, OnceLock};

use crate::basis::{groebner_basis, standard_basis, Budget, ReducedBasis};
use crate::error::{Error, Result};
use crate::ring::{MonomialOrder, PolyRing, Polynomial};

pub use hilbert::{hilbert_numerator, monomial_dim_degree, standard_monomials, DimDegree};
pub use ops::{
    colength_local, dimension_and_degree, eliminate, hat_ideal, ideal_quotient, intersect,
    saturation, tangent_cone_ideal, Saturation,
};

/// Generators plus memoized bases. The memo is per value and synchronized,
/// so an `Ideal` can be shared between threads.
pub struct Ideal {
    ring: Arc<PolyRing>,
    gens: Vec<Polynomial>,
    budget: Budget,
    global: OnceLock<ReducedBasis>,
    local: OnceLock<ReducedBasis>,
}

impl Clone for Ideal {
    fn clone(&self) -> Self {
        Ideal {
            ring: self.ring.clone(),
            gens: self.gens.clone(),
            budget: self.budget,
            global: self.global.clone(),
            local: self.local.clone(),
        }
    }
}

impl fmt::Debug for Ideal {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Ideal({self})")
    }
}

impl fmt::Display for Ideal {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "<")?;
        for (i, g) in self.gens.iter().enumerate() {
            if i > 0 {
                write!(f, ", ")?;
            }
            write!(f, "{g}")?;
        }
        write!(f, ">")
    }
}

/// Serialized as the list of generators in canonical text form.
impl serde::Serialize for Ideal {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.collect_seq(self.gens.iter().map(|g| g.to_string()))
    }
}

impl Ideal {
    /// Zero generators are dropped.
    pub fn new(ring: &Arc<PolyRing>, gens: Vec<Polynomial>) -> Self {
        for g in &gens {
            assert!(**g.ring() == **ring, "{}", Error::RingMismatch);
        }
        Ideal {
            ring: ring.clone(),
            gens: gens.into_iter().filter(|g| !g.is_zero()).collect(),
            budget: Budget::default(),
            global: OnceLock::new(),
            local: OnceLock::new(),
        }
    }

    pub fn zero(ring: &Arc<PolyRing>) -> Self {
        Self::new(ring, Vec::new())
    }

    pub fn unit(ring: &Arc<PolyRing>) -> Self {
        Self::new(ring, vec![Polynomial::one(ring)])
    }

    /// The ideal of the origin, generated by all variables.
    pub fn maximal(ring: &Arc<PolyRing>) -> Self {
        Self::new(
            ring,
            (0..ring.nvars()).map(|i| Polynomial::var(ring, i)).collect(),
        )
    }

    pub fn with_budget(mut self, budget: Budget) -> Self {
        if budget != self.budget {
            self.budget = budget;
            self.global = OnceLock::new();
            self.local = OnceLock::new();
        }
        self
    }

    /// Derived ideal in the same ring with the same budget.
    pub(crate) fn derive(&self, gens: Vec<Polynomial>) -> Ideal {
        Ideal::new(&self.ring, gens).with_budget(self.budget)
    }

    pub fn ring(&self) -> &Arc<PolyRing> {
        &self.ring
    }

    pub fn gens(&self) -> &[Polynomial] {
        &self.gens
    }

    pub fn budget(&self) -> &Budget {
        &self.budget
    }

    pub fn is_zero_ideal(&self) -> bool {
        self.gens.is_empty()
    }

    /// Reduced degrevlex Gröbner basis (memoized).
    pub fn groebner(&self) -> Result<&ReducedBasis> {
        if let Some(b) = self.global.get() {
            return Ok(b);
        }
        let b = groebner_basis(
            &self.ring,
            &self.gens,
            MonomialOrder::GlobalDegrevlex,
            &self.budget,
        )?;
        let _ = self.global.set(b);
        Ok(self.global.get().expect("just set"))
    }

    /// Standard basis for the local order (memoized).
    pub fn standard(&self) -> Result<&ReducedBasis> {
        if let Some(b) = self.local.get() {
            return Ok(b);
        }
        let b = standard_basis(&self.ring, &self.gens, &self.budget)?;
        let _ = self.local.set(b);
        Ok(self.local.get().expect("just set"))
    }

    pub fn is_unit(&self) -> Result<bool> {
        Ok(self.groebner()?.is_unit())
    }

    /// Whether the origin lies in `V(self)`.
    pub fn contains_origin(&self) -> bool {
        self.gens.iter().all(Polynomial::vanishes_at_origin)
    }

    pub fn contains(&self, f: &Polynomial) -> Result<bool> {
        Ok(self.groebner()?.contains(f))
    }

    /// Membership in the ideal generated in the local ring at the origin.
    pub fn contains_locally(&self, f: &Polynomial) -> Result<bool> {
        Ok(self.standard()?.contains(f))
    }

    pub fn is_subset_of(&self, other: &Ideal) -> Result<bool> {
        let b = other.groebner()?;
        Ok(self.gens.iter().all(|g| b.contains(g)))
    }

    pub fn same_ideal(&self, other: &Ideal) -> Result<bool> {
        Ok(self.is_subset_of(other)? && other.is_subset_of(self)?)
    }

    pub fn sum(&self, other: &Ideal) -> Ideal {
        let mut gens = self.gens.clone();
        gens.extend(other.gens.iter().cloned());
        self.derive(gens)
    }

    pub fn with_generator(&self, f: Polynomial) -> Ideal {
        let mut gens = self.gens.clone();
        gens.push(f);
        self.derive(gens)
    }

    pub fn product(&self, other: &Ideal) -> Ideal {
        let mut gens: Vec<Polynomial> = Vec::new();
        for a in &self.gens {
            for b in &other.gens {
                let p = a.mul(b).monic();
                if !gens.contains(&p) {
                    gens.push(p);
                }
            }
        }
        self.derive(gens)
    }
}
