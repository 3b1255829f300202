//! Families `f(z, t)` over a parameter space: Lê data of the fibres at
//! sample parameter values, constancy and semicontinuity, and the verdicts
//! these numbers support.
//!
//! Every verdict is one-directional. Constancy of the Lê numbers is
//! sufficient for Thom's `a_f` condition; constancy of the polar
//! multiplicities together with `χ*` is sufficient for `W_f`; a Whitney
//! stratification with the parameter axis as a stratum forces that same
//! constancy, so a jump rules such a stratification out. For families of
//! surfaces in 3-space the constancy of `(m_1, m_2, λ_2, λ_3)` characterizes
//! Whitney equisingularity. Samples only witness constancy; they cannot
//! prove it on the germ.

use serde::Serialize;

use crate::error::{Error, Result};
use crate::ring::{Coeff, Polynomial};
use crate::segre::SegreOptions;

use super::le::{le_numbers, LeReport};

pub const SAMPLE_CAVEAT: &str = "constancy is witnessed on the given parameter samples only; \
finitely many samples cannot prove constancy on the germ of the parameter space";

#[derive(Clone, Debug, Serialize)]
pub struct FamilySample {
    pub values: Vec<String>,
    pub fibre: String,
    pub le: LeReport,
}

#[derive(Clone, Debug, Serialize)]
pub struct SemicontinuityRow {
    pub values: Vec<String>,
    /// `λ(0) >= λ(t)` lexicographically.
    pub holds: bool,
}

#[derive(Clone, Debug, Serialize)]
pub struct FamilyVerdicts {
    /// Lê numbers constant on the samples; sufficient for `a_f`.
    pub af: bool,
    /// Polar multiplicities and `χ*` constant on the samples; sufficient for
    /// `W_f`.
    pub wf: bool,
    /// Fibres of dimension 2 only: `(m_1, m_2, λ_2, λ_3)` constant on the
    /// samples, which characterizes Whitney equisingularity along the
    /// parameter axis.
    pub surface_equisingular: Option<bool>,
    /// Polar multiplicities or `χ*` jump, so no Whitney stratification has
    /// the parameter axis as a stratum.
    pub necessary_condition_violated: bool,
}

#[derive(Clone, Debug, Serialize)]
pub struct FamilyReport {
    pub parameters: Vec<String>,
    pub samples: Vec<FamilySample>,
    pub lambda_constant: bool,
    pub m_constant: bool,
    pub chi_constant: bool,
    pub semicontinuity: Vec<SemicontinuityRow>,
    pub semicontinuity_holds: bool,
    pub verdicts: FamilyVerdicts,
    pub caveat: String,
}

/// `f` lives in a ring with parameters; each sample gives one value per
/// parameter and the all-zero sample must be among them.
pub fn analyze_family(
    f: &Polynomial,
    samples: &[Vec<Coeff>],
    opts: &SegreOptions,
) -> Result<FamilyReport> {
    let ring = f.ring();
    let np = ring.nparams();
    if np == 0 {
        return Err(Error::InvalidArgument(
            "family analysis needs a ring with parameters".into(),
        ));
    }
    if samples.is_empty() || samples.iter().any(|s| s.len() != np) {
        return Err(Error::InvalidArgument(format!(
            "each sample needs exactly {np} parameter values"
        )));
    }
    let zero = samples
        .iter()
        .position(|s| s.iter().all(Coeff::is_zero))
        .ok_or_else(|| Error::InvalidArgument("the parameter sample 0 is missing".into()))?;

    let zring = ring.z_ring();
    let mut reports = Vec::with_capacity(samples.len());
    for s in samples {
        let mut images: Vec<Polynomial> = (0..ring.nz()).map(|i| Polynomial::var(&zring, i)).collect();
        images.extend(s.iter().map(|c| Polynomial::constant(&zring, c.clone())));
        let fibre = f.substitute(&zring, &images);
        let le = le_numbers(&fibre, opts)?;
        reports.push(FamilySample {
            values: s.iter().map(Coeff::to_string).collect(),
            fibre: fibre.to_string(),
            le,
        });
    }

    let base = &reports[zero].le;
    let lambda_constant = reports.iter().all(|r| r.le.lambda == base.lambda);
    let m_constant = reports
        .iter()
        .all(|r| r.le.m_rel == base.m_rel && r.le.top_polar == base.top_polar);
    let chi_constant = reports.iter().all(|r| r.le.chi == base.chi);
    let semicontinuity: Vec<SemicontinuityRow> = reports
        .iter()
        .map(|r| SemicontinuityRow {
            values: r.values.clone(),
            holds: base.lambda >= r.le.lambda,
        })
        .collect();
    let semicontinuity_holds = semicontinuity.iter().all(|r| r.holds);

    let surface_equisingular = (ring.nz() == 3).then(|| {
        reports.iter().all(|r| {
            r.le.polar(1) == base.polar(1)
                && r.le.polar(2) == base.polar(2)
                && r.le.lambda_at(2) == base.lambda_at(2)
                && r.le.lambda_at(3) == base.lambda_at(3)
        })
    });
    let verdicts = FamilyVerdicts {
        af: lambda_constant,
        wf: m_constant && chi_constant,
        surface_equisingular,
        necessary_condition_violated: !(m_constant && chi_constant),
    };
    Ok(FamilyReport {
        parameters: ring.param_vars().to_vec(),
        samples: reports,
        lambda_constant,
        m_constant,
        chi_constant,
        semicontinuity,
        semicontinuity_holds,
        verdicts,
        caveat: SAMPLE_CAVEAT.to_string(),
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ring::{parse_polynomial, FieldSpec, PolyRing};

    fn family(vars: &[&str], params: &[&str], f: &str) -> Polynomial {
        let r = PolyRing::with_params(vars, params, FieldSpec::Rationals).unwrap();
        parse_polynomial(f, &r).unwrap()
    }

    fn samples(values: &[&[i64]]) -> Vec<Vec<Coeff>> {
        values
            .iter()
            .map(|s| s.iter().map(|&v| FieldSpec::Rationals.from_i64(v)).collect())
            .collect()
    }

    #[test]
    fn jumping_milnor_number() {
        let f = family(&["x", "y"], &["t"], "x^3 + y^3 + t*x*y");
        let rep = analyze_family(&f, &samples(&[&[0], &[1]]), &SegreOptions::default()).unwrap();
        assert_eq!(rep.samples[0].le.lambda, vec![0, 4]);
        assert_eq!(rep.samples[1].le.lambda, vec![0, 1]);
        assert!(!rep.lambda_constant);
        assert!(rep.semicontinuity_holds);
        assert!(!rep.verdicts.af && !rep.verdicts.wf);
        assert!(rep.verdicts.necessary_condition_violated);
        assert_eq!(rep.verdicts.surface_equisingular, None);
    }

    #[test]
    fn constant_family() {
        let f = family(&["x", "y"], &["t"], "x^2 - y^3");
        let rep =
            analyze_family(&f, &samples(&[&[0], &[1], &[2]]), &SegreOptions::default()).unwrap();
        assert!(rep.lambda_constant && rep.m_constant && rep.chi_constant);
        assert!(rep.verdicts.af && rep.verdicts.wf);
        assert!(!rep.verdicts.necessary_condition_violated);
    }

    #[test]
    fn constant_surface_family() {
        let f = family(&["x", "y", "z"], &["s", "t"], "x*y*z");
        let rep = analyze_family(&f, &samples(&[&[0, 0], &[1, 2]]), &SegreOptions::default())
            .unwrap();
        assert_eq!(rep.samples[1].le.lambda, vec![0, 3, 2]);
        assert_eq!(rep.verdicts.surface_equisingular, Some(true));
    }

    #[test]
    fn zero_sample_required() {
        let f = family(&["x", "y"], &["t"], "x^2 - y^3 + t*x");
        assert!(analyze_family(&f, &samples(&[&[1]]), &SegreOptions::default()).is_err());
    }
}
