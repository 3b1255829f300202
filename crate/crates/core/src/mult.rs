//! Multiplicity at the origin.
//!
//! For a germ of positive dimension the multiplicity is the degree of its
//! tangent cone, read off the Hilbert series of the local leading ideal (the
//! local leading ideal and the leading ideal of the tangent cone coincide).
//! For a zero-dimensional germ it is the local colength. Both count every
//! top-dimensional component with its length, which is the cycle
//! multiplicity for the pure-dimensional schemes the pipeline produces.

use serde::Serialize;

use crate::basis::leading_ideal;
use crate::error::{Error, Result};
use crate::ideal::{colength_local, monomial_dim_degree, Ideal};
use crate::ring::{random_combinations, RandomSource};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum MultMethod {
    TangentConeDegree,
    LocalColength,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct MultReport {
    pub local_dim: usize,
    pub mult0: u64,
    pub method: MultMethod,
}

/// Dimension of the germ of `V(J)` at the origin, `None` when the origin is
/// not on `V(J)`.
pub fn local_dimension(j: &Ideal) -> Result<Option<usize>> {
    if !j.contains_origin() {
        return Ok(None);
    }
    let sb = j.standard()?;
    if sb.is_unit() {
        return Ok(None);
    }
    let dd = monomial_dim_degree(&leading_ideal(sb), j.ring().nvars());
    Ok(Some(dd.dim as usize))
}

pub fn mult_at_origin(j: &Ideal) -> Result<MultReport> {
    if !j.contains_origin() {
        return Err(Error::OriginAbsent);
    }
    let sb = j.standard()?;
    if sb.is_unit() {
        return Err(Error::OriginAbsent);
    }
    let dd = monomial_dim_degree(&leading_ideal(sb), j.ring().nvars());
    if dd.dim == 0 {
        Ok(MultReport {
            local_dim: 0,
            mult0: colength_local(j)?,
            method: MultMethod::LocalColength,
        })
    } else {
        Ok(MultReport {
            local_dim: dd.dim as usize,
            mult0: dd.degree,
            method: MultMethod::TangentConeDegree,
        })
    }
}

/// Multiplicity at the origin, with `0` for germs that miss the origin.
pub fn mult0_or_zero(j: &Ideal) -> Result<u64> {
    match mult_at_origin(j) {
        Ok(r) => Ok(r.mult0),
        Err(Error::OriginAbsent) => Ok(0),
        Err(e) => Err(e),
    }
}

/// Samuel multiplicity of an ideal of finite colength at the origin.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct SamuelReport {
    pub multiplicity: u64,
    pub trial_values: Vec<u64>,
    pub seeds: Vec<u64>,
}

/// Colength of the ideal generated by as many random combinations of the
/// generators as there are variables; in a regular ambient ring this is the
/// Samuel multiplicity for a generic choice, and a non-generic choice can
/// only overshoot, so the minimum over trials is reported.
pub fn samuel_multiplicity(i: &Ideal, trials: usize, seed: u64) -> Result<SamuelReport> {
    let n = i.ring().nvars();
    match local_dimension(i)? {
        None => return Err(Error::OriginAbsent),
        Some(0) => {}
        Some(d) => return Err(Error::NotFiniteAtOrigin(d)),
    }
    let trials = trials.max(1);
    let mut values = Vec::with_capacity(trials);
    let mut seeds = Vec::with_capacity(trials);
    for t in 0..trials {
        let s = seed.wrapping_add(t as u64);
        let mut rng = RandomSource::new(s);
        let combos = random_combinations(i.gens(), n, &mut rng)?;
        let q = i.derive(combos);
        values.push(colength_local(&q)?);
        seeds.push(s);
    }
    Ok(SamuelReport {
        multiplicity: *values.iter().min().expect("at least one trial"),
        trial_values: values,
        seeds,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ring::{parse_polynomial, FieldSpec, PolyRing};
    use std::sync::Arc;

    fn ring(vars: &[&str]) -> Arc<PolyRing> {
        PolyRing::new(vars, FieldSpec::Rationals).unwrap()
    }

    fn ideal(r: &Arc<PolyRing>, src: &[&str]) -> Ideal {
        Ideal::new(r, src.iter().map(|s| parse_polynomial(s, r).unwrap()).collect())
    }

    #[test]
    fn local_dimensions() {
        let r = ring(&["x", "y"]);
        assert_eq!(local_dimension(&ideal(&r, &["x^2 - y^3"])).unwrap(), Some(1));
        assert_eq!(local_dimension(&ideal(&r, &["x", "y"])).unwrap(), Some(0));
        assert_eq!(local_dimension(&ideal(&r, &["x - 1"])).unwrap(), None);
        // a component away from the origin does not count
        assert_eq!(
            local_dimension(&ideal(&r, &["x*(y - 1)", "y*(y - 1)"])).unwrap(),
            Some(0)
        );
    }

    #[test]
    fn multiplicities() {
        let r = ring(&["x", "y"]);
        let cusp = mult_at_origin(&ideal(&r, &["x^2 - y^3"])).unwrap();
        assert_eq!(cusp.mult0, 2);
        assert_eq!(cusp.method, MultMethod::TangentConeDegree);
        assert_eq!(mult_at_origin(&ideal(&r, &["x*y"])).unwrap().mult0, 2);
        let pt = mult_at_origin(&ideal(&r, &["x^2", "y^3"])).unwrap();
        assert_eq!((pt.local_dim, pt.mult0, pt.method), (0, 6, MultMethod::LocalColength));
        assert!(matches!(
            mult_at_origin(&ideal(&r, &["x - 1"])),
            Err(Error::OriginAbsent)
        ));
        assert_eq!(mult0_or_zero(&ideal(&r, &["x - 1"])).unwrap(), 0);
    }

    #[test]
    fn four_line_cone() {
        let r = ring(&["x", "y", "z"]);
        let i = ideal(&r, &["y*z", "x*z", "x*y"]);
        let mut rng = RandomSource::new(7);
        let g = random_combinations(i.gens(), 2, &mut rng).unwrap();
        let w = Ideal::new(&r, g);
        let rep = mult_at_origin(&w).unwrap();
        assert_eq!((rep.local_dim, rep.mult0), (1, 4));
    }

    #[test]
    fn additivity_and_lowest_form() {
        let r = ring(&["x", "y"]);
        let f = ["x^2 - y^3", "y - x^2", "x^3 + y^4 + x*y^2"];
        for a in &f {
            let fa = parse_polynomial(a, &r).unwrap();
            let ma = mult_at_origin(&Ideal::new(&r, vec![fa.clone()])).unwrap().mult0;
            assert_eq!(ma, fa.order().unwrap() as u64);
            for b in &f {
                if a == b {
                    continue;
                }
                let fb = parse_polynomial(b, &r).unwrap();
                let mb = mult_at_origin(&Ideal::new(&r, vec![fb.clone()])).unwrap().mult0;
                let mab = mult_at_origin(&Ideal::new(&r, vec![fa.mul(&fb)])).unwrap().mult0;
                assert_eq!(mab, ma + mb);
            }
        }
    }

    #[test]
    fn samuel() {
        let r = ring(&["x", "y"]);
        assert_eq!(samuel_multiplicity(&ideal(&r, &["x", "y"]), 3, 1).unwrap().multiplicity, 1);
        assert_eq!(samuel_multiplicity(&ideal(&r, &["x^2", "y^3"]), 3, 1).unwrap().multiplicity, 6);
        assert_eq!(
            samuel_multiplicity(&ideal(&r, &["x^2", "x*y", "y^2"]), 3, 1).unwrap().multiplicity,
            4
        );
        let m = Ideal::maximal(&r);
        let mut mk = m.clone();
        for k in 1..=3u64 {
            assert_eq!(samuel_multiplicity(&mk, 3, 5).unwrap().multiplicity, k * k);
            mk = mk.product(&m);
        }
        assert!(matches!(
            samuel_multiplicity(&ideal(&r, &["x"]), 1, 0),
            Err(Error::NotFiniteAtOrigin(1))
        ));
    }
}
