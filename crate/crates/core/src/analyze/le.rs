//! Lê numbers, relative polar multiplicities and the alternating sums χ^(k)
//! of a hypersurface germ `V(f)`, and the relations they satisfy for
//! homogeneous `f` and along the deformation to the tangent cone.

use serde::Serialize;

use crate::error::{Error, Result};
use crate::ideal::{dimension_and_degree, Ideal};
use crate::mult::local_dimension;
use crate::ring::{restrict_to_generic_subspace, PolyRing, Polynomial, RandomSource};
use crate::segre::{segre_polar_profile, SegreOptions};

use std::sync::Arc;

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct LeReport {
    /// Dimension of the ambient space.
    pub ambient_dim: usize,
    /// `λ_1..λ_N`.
    pub lambda: Vec<u64>,
    /// `m_1..m_{N-1}`.
    pub m_rel: Vec<u64>,
    /// `m_N`, the multiplicity of what remains after the last level.
    pub top_polar: u64,
    /// `χ^(2)..χ^(N)`.
    pub chi: Vec<i64>,
    /// `f` is smooth at the origin: the Jacobian ideal is a unit there.
    pub smooth: bool,
    pub trials: usize,
    pub seeds: Vec<u64>,
}

impl LeReport {
    /// `m_k` for `1 <= k <= N`, with `m_N` the top polar multiplicity.
    pub fn polar(&self, k: usize) -> u64 {
        if k == self.ambient_dim {
            self.top_polar
        } else {
            self.m_rel[k - 1]
        }
    }

    /// `λ_k` for `1 <= k <= N`.
    pub fn lambda_at(&self, k: usize) -> u64 {
        self.lambda[k - 1]
    }
}

/// `χ^(k) = m_k + λ_k - λ_{k-1} + ... ± λ_2` for `k = 2..N`.
pub fn chi_from_display(lambda: &[u64], polar: impl Fn(usize) -> u64) -> Vec<i64> {
    let n = lambda.len();
    (2..=n)
        .map(|k| {
            let mut acc = polar(k) as i64 + lambda[k - 1] as i64;
            for i in 2..k {
                let sign = if (k - i) % 2 == 0 { 1 } else { -1 };
                acc += sign * lambda[i - 1] as i64;
            }
            acc
        })
        .collect()
}

pub fn jacobian_ideal(f: &Polynomial) -> Ideal {
    let ring = f.ring();
    Ideal::new(ring, (0..ring.nvars()).map(|i| f.derivative(i)).collect())
}

fn check_hypersurface(f: &Polynomial) -> Result<()> {
    if f.ring().nparams() > 0 {
        return Err(Error::InvalidArgument(
            "Lê numbers are computed in a ring without parameters; substitute the parameters first"
                .into(),
        ));
    }
    if f.is_zero() {
        return Err(Error::InvalidArgument("f is the zero polynomial".into()));
    }
    if !f.vanishes_at_origin() {
        return Err(Error::UnitAtOrigin);
    }
    Ok(())
}

fn dense_to_critical(e: Error) -> Error {
    match e {
        Error::CoSupportDense { .. } => Error::CriticalLocusDense,
        other => other,
    }
}

/// Lê numbers as the Segre numbers of the Jacobian ideal on the ambient
/// space; `f` is asserted reduced by the caller.
pub fn le_numbers(f: &Polynomial, opts: &SegreOptions) -> Result<LeReport> {
    check_hypersurface(f)?;
    let ring = f.ring();
    let n = ring.nvars();
    let jac = jacobian_ideal(f);
    if !jac.contains_origin() {
        return Ok(LeReport {
            ambient_dim: n,
            lambda: vec![0; n],
            m_rel: vec![0; n - 1],
            top_polar: 0,
            chi: vec![0; n.saturating_sub(1)],
            smooth: true,
            trials: opts.trials.max(1),
            seeds: opts.seeds(),
        });
    }
    // a reduced hypersurface is singular in codimension at least one
    let sing = jac.with_generator(f.clone());
    if let Some(d) = local_dimension(&sing)? {
        if d + 1 >= n {
            return Err(Error::CriticalLocusDense);
        }
    }
    let run = segre_polar_profile(&jac, &Ideal::zero(ring), opts).map_err(dense_to_critical)?;
    let p = run.profile;
    let m_rel = p.m[1..].to_vec();
    let top_polar = p.top_polar;
    let chi = chi_from_display(&p.e, |k| if k == n { top_polar } else { m_rel[k - 1] });
    Ok(LeReport {
        ambient_dim: n,
        lambda: p.e,
        m_rel,
        top_polar,
        chi,
        smooth: false,
        trials: p.trials,
        seeds: p.seeds,
    })
}

#[derive(Clone, Debug, Serialize)]
pub struct ChiSlice {
    pub k: usize,
    /// Segre numbers of the Jacobian ideal restricted to a generic
    /// `k`-dimensional subspace.
    pub slice_e: Vec<u64>,
    pub chi: i64,
}

#[derive(Clone, Debug, Serialize)]
pub struct EulerReport {
    pub le: LeReport,
    /// `χ^(2)..χ^(N)` from the Lê numbers and polar multiplicities.
    pub chi: Vec<i64>,
    /// The same values from the Jacobian ideal on generic linear slices.
    pub slices: Vec<ChiSlice>,
}

/// `χ^(k)` twice: from the full-space data, and as
/// `(-1)^k Σ_{i=2}^k (-1)^i e_i` of the Jacobian ideal restricted to a
/// generic `k`-dimensional subspace (the slicing identities turn the latter
/// into the former). A mismatch is an error.
pub fn euler_vector(f: &Polynomial, opts: &SegreOptions) -> Result<EulerReport> {
    let le = le_numbers(f, opts)?;
    let n = le.ambient_dim;
    let mut slices = Vec::new();
    if !le.smooth {
        let jac = jacobian_ideal(f);
        for k in 2..=n {
            let mut rng = RandomSource::new(opts.seed.wrapping_add(0x5eed_0000 + k as u64));
            let (sub, gens) = restrict_to_generic_subspace(jac.gens(), k, &mut rng)?;
            let target = sub.target().clone();
            let sliced = Ideal::new(&target, gens);
            let run = segre_polar_profile(&sliced, &Ideal::zero(&target), opts)
                .map_err(dense_to_critical)?;
            let e = run.profile.e;
            let mut chi = 0i64;
            for i in 2..=k {
                let sign = if (k - i) % 2 == 0 { 1 } else { -1 };
                chi += sign * e[i - 1] as i64;
            }
            if chi != le.chi[k - 2] {
                return Err(Error::CrossCheckMismatch(format!(
                    "chi^({k}): {} from the full-space data, {chi} from a generic {k}-dimensional slice",
                    le.chi[k - 2]
                )));
            }
            slices.push(ChiSlice {
                k,
                slice_e: e,
                chi,
            });
        }
    }
    Ok(EulerReport {
        chi: le.chi.clone(),
        le,
        slices,
    })
}

#[derive(Clone, Debug, Serialize)]
pub struct HomogeneousRelationReport {
    pub degree: u32,
    pub lambda: Vec<u64>,
    /// `Σ_{i=2}^N (d-1)^{N-i} λ_i`.
    pub lhs: u64,
    /// `(d-1)^N`.
    pub rhs: u64,
    pub holds: bool,
}

/// For reduced homogeneous `f` of degree `d` in `N` variables:
/// `Σ_{i=2}^N (d-1)^{N-i} λ_i = (d-1)^N`.
pub fn homogeneous_relation_check(
    f: &Polynomial,
    opts: &SegreOptions,
) -> Result<HomogeneousRelationReport> {
    if f.is_zero() || !f.is_homogeneous() {
        return Err(Error::NotHomogeneous(f.to_string()));
    }
    let d = f.degree().expect("nonzero");
    let le = le_numbers(f, opts)?;
    let n = le.ambient_dim;
    let base = d as u64 - 1;
    let lhs = (2..=n)
        .map(|i| base.pow((n - i) as u32) * le.lambda_at(i))
        .sum();
    let rhs = base.pow(n as u32);
    Ok(HomogeneousRelationReport {
        degree: d,
        lambda: le.lambda,
        lhs,
        rhs,
        holds: lhs == rhs,
    })
}

#[derive(Clone, Debug, Serialize)]
pub struct PolarRelation {
    pub k: usize,
    /// `m_1^k - m_k`.
    pub lhs: i64,
    /// `Σ_{i=2}^k λ_i m_1^{k-i}`.
    pub rhs: i64,
    pub holds: bool,
}

#[derive(Clone, Debug, Serialize)]
pub struct TangentConeReport {
    /// Degree of the initial form.
    pub d: u32,
    pub initial_form: String,
    /// `t^{-d} f(t z)`, the deformation to the tangent cone.
    pub deformation: String,
    pub le: LeReport,
    pub le_of_initial_form: LeReport,
    pub relations: Vec<PolarRelation>,
    pub relations_hold: bool,
    /// `m_k(f) = m_k(f_0)` and `λ_{k+1}(f) = λ_{k+1}(f_0)` for `k = 1..N-1`;
    /// equivalent to the relations.
    pub equivalent_equalities_hold: bool,
    /// The relations imply that the smooth part of the deformation is
    /// Whitney regular along the parameter axis.
    pub smooth_part_whitney_along_axis: bool,
    /// In three variables the two relations `m_1^2 = λ_2 + m_2` and
    /// `m_1^3 = λ_3 + m_1 λ_2` characterize Whitney equisingularity of the
    /// deformation along the parameter axis.
    pub three_space_relations: Option<[bool; 2]>,
    pub deformation_whitney_equisingular: Option<bool>,
}

/// Errors unless `V(f_0)` is reduced: for a homogeneous hypersurface this
/// means its singular locus has codimension at least one in it.
fn check_reduced_cone(f0: &Polynomial) -> Result<()> {
    let ring = f0.ring();
    let mut gens = vec![f0.clone()];
    gens.extend((0..ring.nvars()).map(|i| f0.derivative(i)));
    let sing = dimension_and_degree(&Ideal::new(ring, gens))?;
    if sing.dim >= ring.nvars() as i64 - 1 {
        return Err(Error::NonReducedTangentCone(f0.to_string()));
    }
    Ok(())
}

fn deformation(f: &Polynomial, d: u32) -> Result<Polynomial> {
    let ring = f.ring();
    let t = ring.fresh_name("t");
    let ext: Arc<PolyRing> = PolyRing::with_params(ring.vars(), &[t], ring.field())?;
    let tv = Polynomial::var(&ext, ring.nvars());
    let mut g = Polynomial::zero(&ext);
    let top = f.degree().unwrap_or(d);
    for j in d..=top {
        let part = f.homogeneous_part(j);
        if part.is_zero() {
            continue;
        }
        let map: Vec<usize> = (0..ring.nvars()).collect();
        g = g.add(&part.embed(&ext, &map).mul(&tv.pow(j - d)));
    }
    Ok(g)
}

pub fn tangent_cone_analysis(f: &Polynomial, opts: &SegreOptions) -> Result<TangentConeReport> {
    check_hypersurface(f)?;
    let f0 = f.initial_form();
    let d = f0.degree().expect("nonzero");
    check_reduced_cone(&f0)?;
    let le = le_numbers(f, opts)?;
    let le0 = le_numbers(&f0, opts)?;
    let n = le.ambient_dim;
    let m1 = le.polar(1) as i64;
    let relations: Vec<PolarRelation> = (2..=n)
        .map(|k| {
            let lhs = m1.pow(k as u32) - le.polar(k) as i64;
            let rhs = (2..=k)
                .map(|i| le.lambda_at(i) as i64 * m1.pow((k - i) as u32))
                .sum();
            PolarRelation {
                k,
                lhs,
                rhs,
                holds: lhs == rhs,
            }
        })
        .collect();
    let relations_hold = relations.iter().all(|r| r.holds);
    let equivalent_equalities_hold = (1..n)
        .all(|k| le.polar(k) == le0.polar(k) && le.lambda_at(k + 1) == le0.lambda_at(k + 1));
    let three_space_relations = (n == 3).then(|| {
        let (l2, l3) = (le.lambda_at(2) as i64, le.lambda_at(3) as i64);
        [
            m1 * m1 == l2 + le.polar(2) as i64,
            m1.pow(3) == l3 + m1 * l2,
        ]
    });
    Ok(TangentConeReport {
        d,
        initial_form: f0.to_string(),
        deformation: deformation(f, d)?.to_string(),
        le,
        le_of_initial_form: le0,
        relations,
        relations_hold,
        equivalent_equalities_hold,
        smooth_part_whitney_along_axis: relations_hold,
        deformation_whitney_equisingular: three_space_relations.map(|r| r[0] && r[1]),
        three_space_relations,
    })
}
