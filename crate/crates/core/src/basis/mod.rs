//! Gröbner bases for global orders and standard bases for the local order.
//!
//! Global orders use Buchberger's algorithm with normal pair selection and
//! the Gebauer–Möller criteria. The local order uses the same pair loop with
//! Mora's normal form, which bounds reductions by the ecart and therefore
//! terminates although the order is not a well-order.

mod engine;
mod work;

use std::sync::Arc;

use crate::error::Result;
use crate::ring::{Monomial, MonomialOrder, PolyRing, Polynomial};

pub(crate) use work::WPoly;

/// Resource limits; exceeding one aborts with [`crate::Error::BudgetExceeded`].
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct Budget {
    pub max_basis_size: usize,
    pub max_degree: u32,
    pub max_reductions: u64,
}

impl Default for Budget {
    fn default() -> Self {
        Budget {
            max_basis_size: 5000,
            max_degree: 60,
            max_reductions: 50_000_000,
        }
    }
}

/// A minimal basis with respect to `order`, leading coefficients one.
///
/// For global orders it is the reduced Gröbner basis. For the local order it
/// is a minimal standard basis: leading monomials are minimal, tails are not
/// reduced (tail reduction need not terminate for local orders).
#[derive(Clone, Debug)]
pub struct ReducedBasis {
    order: MonomialOrder,
    ring: Arc<PolyRing>,
    elements: Vec<Polynomial>,
    work: Vec<WPoly>,
}

impl ReducedBasis {
    pub(crate) fn from_work(ring: &Arc<PolyRing>, order: MonomialOrder, work: Vec<WPoly>) -> Self {
        let elements = work.iter().map(|w| w.to_poly(ring)).collect();
        ReducedBasis {
            order,
            ring: ring.clone(),
            elements,
            work,
        }
    }

    pub fn order(&self) -> MonomialOrder {
        self.order
    }

    pub fn ring(&self) -> &Arc<PolyRing> {
        &self.ring
    }

    pub fn elements(&self) -> &[Polynomial] {
        &self.elements
    }

    pub fn len(&self) -> usize {
        self.elements.len()
    }

    pub fn is_empty(&self) -> bool {
        self.elements.is_empty()
    }

    /// True when the basis generates the unit ideal (locally: when some
    /// element is a unit in the local ring).
    pub fn is_unit(&self) -> bool {
        self.work.iter().any(|w| w.lm().is_one())
    }

    pub fn leading_monomials(&self) -> Vec<Monomial> {
        self.work.iter().map(|w| w.lm().clone()).collect()
    }

    /// Leading term of a basis element in the basis order.
    pub fn leading_monomial_of(&self, f: &Polynomial) -> Option<Monomial> {
        if f.is_zero() {
            return None;
        }
        Some(WPoly::from_poly(f, self.order).lm().clone())
    }

    pub fn normal_form(&self, f: &Polynomial) -> Polynomial {
        normal_form(f, self)
    }

    /// Ideal membership (germ-local for the local order).
    pub fn contains(&self, f: &Polynomial) -> bool {
        self.normal_form(f).is_zero()
    }
}

/// Reduced Gröbner basis of the ideal generated by `gens` for a global order.
pub fn groebner_basis(
    ring: &Arc<PolyRing>,
    gens: &[Polynomial],
    order: MonomialOrder,
    budget: &Budget,
) -> Result<ReducedBasis> {
    assert!(order.is_global(), "groebner_basis needs a global order");
    engine::compute(ring, gens, order, budget)
}

/// Minimal standard basis for the local order, via Mora's normal form.
pub fn standard_basis(
    ring: &Arc<PolyRing>,
    gens: &[Polynomial],
    budget: &Budget,
) -> Result<ReducedBasis> {
    engine::compute(ring, gens, MonomialOrder::LocalNegDegrevlex, budget)
}

/// Remainder of `f` modulo the basis. For global orders no monomial of the
/// result is divisible by a leading monomial; for the local order this is
/// Mora's weak normal form (its leading monomial is not divisible). In both
/// cases the result is zero exactly when `f` lies in the ideal.
pub fn normal_form(f: &Polynomial, basis: &ReducedBasis) -> Polynomial {
    let w = WPoly::from_poly(f, basis.order);
    let r = if basis.order.is_global() {
        engine::full_reduce(w, &basis.work, basis.order, true, None)
            .expect("reduction without budget cannot fail")
    } else {
        engine::mora_reduce(w, &basis.work, basis.order, true, None)
            .expect("reduction without budget cannot fail")
    };
    r.to_poly(&basis.ring)
}

/// Minimal generators of the leading-monomial ideal.
pub fn leading_ideal(basis: &ReducedBasis) -> Vec<Monomial> {
    minimize_monomials(basis.leading_monomials())
}

/// Minimal generating set of a monomial ideal, sorted for determinism.
pub fn minimize_monomials(mut gens: Vec<Monomial>) -> Vec<Monomial> {
    gens.sort_by(|a, b| {
        a.degree()
            .cmp(&b.degree())
            .then_with(|| MonomialOrder::GlobalDegrevlex.compare(b, a))
    });
    gens.dedup();
    let mut out: Vec<Monomial> = Vec::with_capacity(gens.len());
    for g in gens {
        if !out.iter().any(|h| h.divides(&g)) {
            out.push(g);
        }
    }
    out
}

/// S-polynomial of `f` and `g` in `order` (both nonzero).
pub fn s_polynomial(f: &Polynomial, g: &Polynomial, order: MonomialOrder) -> Polynomial {
    let a = WPoly::from_poly(f, order);
    let b = WPoly::from_poly(g, order);
    WPoly::s_poly(&a, &b, order).to_poly(f.ring())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ring::{parse_polynomial, FieldSpec};

    fn ring(vars: &[&str]) -> Arc<PolyRing> {
        PolyRing::new(vars, FieldSpec::Rationals).unwrap()
    }

    fn polys(r: &Arc<PolyRing>, src: &[&str]) -> Vec<Polynomial> {
        src.iter().map(|s| parse_polynomial(s, r).unwrap()).collect()
    }

    fn gb(r: &Arc<PolyRing>, src: &[&str]) -> ReducedBasis {
        groebner_basis(r, &polys(r, src), MonomialOrder::GlobalDegrevlex, &Budget::default())
            .unwrap()
    }

    fn sb(r: &Arc<PolyRing>, src: &[&str]) -> ReducedBasis {
        standard_basis(r, &polys(r, src), &Budget::default()).unwrap()
    }

    fn strings(b: &ReducedBasis) -> Vec<String> {
        b.elements().iter().map(|p| p.to_string()).collect()
    }

    #[test]
    fn linear_system() {
        let r = ring(&["x", "y"]);
        let b = gb(&r, &["x + y", "x - y"]);
        assert_eq!(strings(&b), vec!["y", "x"]);
        assert_eq!(strings(&gb(&r, &["x"])), vec!["x"]);
    }

    #[test]
    fn circle_and_line() {
        let r = ring(&["x", "y"]);
        let b = gb(&r, &["x^2 + y^2 - 1", "x - y"]);
        let expect = parse_polynomial("y^2 - 1/2", &r).unwrap();
        assert!(b.elements().contains(&expect), "{:?}", strings(&b));
        for f in b.elements() {
            for g in b.elements() {
                if f != g {
                    let s = s_polynomial(f, g, MonomialOrder::GlobalDegrevlex);
                    assert!(b.normal_form(&s).is_zero());
                }
            }
        }
    }

    #[test]
    fn unit_ideal() {
        let r = ring(&["x", "y"]);
        let b = gb(&r, &["x", "x + 1"]);
        assert!(b.is_unit());
        assert_eq!(leading_ideal(&b), vec![Monomial::one(2)]);
    }

    #[test]
    fn normal_forms() {
        let r = ring(&["x", "y"]);
        let x = gb(&r, &["x"]);
        let p = |s| parse_polynomial(s, &r).unwrap();
        assert!(x.normal_form(&p("x^2")).is_zero());
        assert_eq!(x.normal_form(&p("y")), p("y"));
        let x2 = gb(&r, &["x^2"]);
        assert_eq!(x2.normal_form(&p("x^2*y + y")), p("y"));
    }

    #[test]
    fn local_bases() {
        let r = ring(&["x", "y"]);
        let cusp = sb(&r, &["x^2 - y^3"]);
        assert_eq!(leading_ideal(&cusp), vec![Monomial::var(2, 0, 2)]);
        assert_eq!(cusp.len(), 1);

        let unit_factor = sb(&r, &["x - x^2"]);
        assert_eq!(leading_ideal(&unit_factor), vec![Monomial::var(2, 0, 1)]);
        // x itself lies in the germ ideal since 1 - x is a unit at 0
        assert!(unit_factor.contains(&parse_polynomial("x", &r).unwrap()));

        let b = sb(&r, &["x^2 + x^3"]);
        assert_eq!(leading_ideal(&b), vec![Monomial::var(2, 0, 2)]);

        let away = sb(&r, &["x - 1"]);
        assert!(away.is_unit());
    }

    #[test]
    fn local_basis_of_non_homogeneous_ideal() {
        // (x^2 - y^3, x*y) locally: y^4 = x^2*y - x*y*... lies in the ideal
        let r = ring(&["x", "y"]);
        let b = sb(&r, &["x^2 - y^3", "x*y"]);
        let lead = leading_ideal(&b);
        assert!(lead.contains(&Monomial::var(2, 1, 4)), "{lead:?}");
    }
}
