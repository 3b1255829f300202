use std::sync::Arc;

use crate::basis::{groebner_basis, leading_ideal};
use crate::error::{Error, Result};
use crate::ring::{MonomialOrder, PolyRing, Polynomial};

use super::hilbert::{monomial_dim_degree, standard_monomials, DimDegree};
use super::Ideal;

/// Ring with one extra variable appended; returns it with the new index.
fn extend_ring(ring: &Arc<PolyRing>, base: &str) -> Result<(Arc<PolyRing>, usize)> {
    let name = ring.fresh_name(base);
    let mut vars: Vec<String> = ring.z_vars().to_vec();
    vars.push(name);
    // keep parameters as the suffix
    let ext = PolyRing::with_params(&vars, ring.param_vars(), ring.field())?;
    Ok((ext, ring.nz()))
}

/// Index map from `ring` into `extend_ring(ring)`.
fn extension_map(ring: &PolyRing) -> Vec<usize> {
    (0..ring.nvars())
        .map(|i| if i < ring.nz() { i } else { i + 1 })
        .collect()
}

/// `J ∩ K`, by eliminating `t` from `t·J + (1-t)·K`.
pub fn intersect(j: &Ideal, k: &Ideal) -> Result<Ideal> {
    if j.is_zero_ideal() || k.is_zero_ideal() {
        return Ok(j.derive(Vec::new()));
    }
    let ring = j.ring();
    let (ext, t) = extend_ring(ring, "t")?;
    let map = extension_map(ring);
    let tv = Polynomial::var(&ext, t);
    let one_minus_t = Polynomial::one(&ext).sub(&tv);
    let mut gens: Vec<Polynomial> = j.gens().iter().map(|g| g.embed(&ext, &map).mul(&tv)).collect();
    gens.extend(k.gens().iter().map(|g| g.embed(&ext, &map).mul(&one_minus_t)));
    let gb = groebner_basis(
        &ext,
        &gens,
        MonomialOrder::Elimination { mask: 1 << t },
        j.budget(),
    )?;
    let out = gb
        .elements()
        .iter()
        .filter(|g| !g.involves(t))
        .map(|g| g.project(ring, &map).expect("t-free element projects"))
        .collect();
    Ok(j.derive(out))
}

fn quotient_by_element(j: &Ideal, h: &Polynomial) -> Result<Ideal> {
    if h.is_zero() || j.contains(h)? {
        return Ok(j.derive(vec![Polynomial::one(j.ring())]));
    }
    let principal = j.derive(vec![h.clone()]);
    let meet = intersect(j, &principal)?;
    let gens = meet
        .gens()
        .iter()
        .map(|g| {
            g.div_exact(h)
                .ok_or_else(|| Error::Inconsistent("intersection element not divisible".into()))
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(j.derive(gens))
}

/// `(J : K) = { f | f·K ⊆ J }`, as the intersection of the element quotients.
pub fn ideal_quotient(j: &Ideal, k: &Ideal) -> Result<Ideal> {
    assert!(**j.ring() == **k.ring(), "{}", Error::RingMismatch);
    let mut acc: Option<Ideal> = None;
    for h in k.gens() {
        let q = quotient_by_element(j, h)?;
        acc = Some(match acc {
            None => q,
            Some(a) => {
                if a.is_unit()? {
                    q
                } else if q.is_unit()? {
                    a
                } else {
                    intersect(&a, &q)?
                }
            }
        });
    }
    let out = acc.unwrap_or_else(|| j.derive(vec![Polynomial::one(j.ring())]));
    // hand back the reduced basis as generators: shorter and canonical
    let gens = out.groebner()?.elements().to_vec();
    Ok(j.derive(gens))
}

/// Saturation together with the number of quotient steps needed to
/// stabilize.
#[derive(Clone, Debug)]
pub struct Saturation {
    pub ideal: Ideal,
    pub steps: usize,
}

/// `(J : K^∞)` by iterated quotients until the chain stabilizes.
pub fn saturation(j: &Ideal, k: &Ideal) -> Result<Saturation> {
    let mut cur = j.derive(j.groebner()?.elements().to_vec());
    let mut steps = 0;
    loop {
        if cur.is_unit()? {
            return Ok(Saturation { ideal: cur, steps });
        }
        let next = ideal_quotient(&cur, k)?;
        if next.is_subset_of(&cur)? {
            return Ok(Saturation { ideal: cur, steps });
        }
        steps += 1;
        cur = next;
    }
}

/// `J ∩ k[remaining variables]`, returned in the ring without `vars`.
pub fn eliminate(j: &Ideal, vars: &[usize]) -> Result<Ideal> {
    let ring = j.ring();
    let mut mask = 0u64;
    for &v in vars {
        if v >= ring.nvars() {
            return Err(Error::InvalidArgument(format!("variable index {v} out of range")));
        }
        mask |= 1 << v;
    }
    let keep: Vec<usize> = (0..ring.nvars()).filter(|i| mask >> i & 1 == 0).collect();
    let keep_z: Vec<String> = keep
        .iter()
        .filter(|&&i| i < ring.nz())
        .map(|&i| ring.vars()[i].clone())
        .collect();
    let keep_p: Vec<String> = keep
        .iter()
        .filter(|&&i| i >= ring.nz())
        .map(|&i| ring.vars()[i].clone())
        .collect();
    let target = PolyRing::with_params(&keep_z, &keep_p, ring.field())?;
    if j.is_zero_ideal() {
        return Ok(Ideal::new(&target, Vec::new()).with_budget(*j.budget()));
    }
    let gb = groebner_basis(ring, j.gens(), MonomialOrder::Elimination { mask }, j.budget())?;
    let gens = gb
        .elements()
        .iter()
        .filter_map(|g| g.project(&target, &keep))
        .collect();
    Ok(Ideal::new(&target, gens).with_budget(*j.budget()))
}

/// Krull dimension and degree from the Hilbert series of the degrevlex
/// leading ideal.
pub fn dimension_and_degree(j: &Ideal) -> Result<DimDegree> {
    let gb = j.groebner()?;
    Ok(monomial_dim_degree(&leading_ideal(gb), j.ring().nvars()))
}

/// Vector-space dimension of the local ring `O_0 / J`: the number of standard
/// monomials of the local standard basis.
pub fn colength_local(j: &Ideal) -> Result<u64> {
    let sb = j.standard()?;
    if sb.is_unit() {
        return Ok(0);
    }
    let lead = leading_ideal(sb);
    let n = j.ring().nvars();
    match standard_monomials(&lead, n) {
        Some(ms) => Ok(ms.len() as u64),
        None => {
            let dim = monomial_dim_degree(&lead, n).dim;
            Err(Error::NotFiniteAtOrigin(dim.max(0) as usize))
        }
    }
}

/// Ideal of initial forms: lowest-degree parts of a local standard basis.
pub fn tangent_cone_ideal(j: &Ideal) -> Result<Ideal> {
    if !j.contains_origin() {
        return Err(Error::OriginAbsent);
    }
    let sb = j.standard()?;
    if sb.is_unit() {
        return Err(Error::OriginAbsent);
    }
    let gens = sb
        .elements()
        .iter()
        .map(|g| g.initial_form().monic())
        .collect();
    Ok(j.derive(gens))
}

/// `(I, y)` in the ring with one fresh variable `y`. For `h` in the original
/// ring, `h` is integral over `I` exactly when its pullback is integral over
/// the hat ideal, whose co-support is always nowhere dense.
pub fn hat_ideal(i: &Ideal) -> Result<Ideal> {
    let ring = i.ring();
    let (ext, y) = extend_ring(ring, "y")?;
    let map = extension_map(ring);
    let mut gens: Vec<Polynomial> = i.gens().iter().map(|g| g.embed(&ext, &map)).collect();
    gens.push(Polynomial::var(&ext, y));
    Ok(Ideal::new(&ext, gens).with_budget(*i.budget()))
}
