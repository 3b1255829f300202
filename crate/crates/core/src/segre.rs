//! Segre numbers and polar multiplicities of an ideal on a germ.
//!
//! One trial draws generic combinations `g_1..g_n` of the generators of `I`
//! and walks down the levels: `W_k = A_{k-1} + (g_k)` is the intersection of
//! the previous polar variety with a generic member of the linear system,
//! `A_k = (W_k : (I + X)^∞)` keeps the components of `W_k` not inside
//! `V(I)` (the next polar variety), and the rest is the Segre cycle
//! `Λ_k`. At the multiplicity level
//!
//! ```text
//! e_k = mult0(W_k) - mult0(A_k),   m_k = mult0(A_k).
//! ```
//!
//! Trials use consecutive seeds and must agree exactly; a disagreement means
//! a non-generic draw and is reported, never averaged away.

use rayon::prelude::*;
use serde::Serialize;

use crate::basis::Budget;
use crate::error::{Error, Result};
use crate::ideal::{saturation, Ideal};
use crate::mult::{local_dimension, mult0_or_zero};
use crate::ring::{random_combinations, FieldSpec, Polynomial, RandomSource};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct SegreOptions {
    pub trials: usize,
    pub seed: u64,
    /// Run trials on the rayon pool; results are merged in seed order either
    /// way.
    pub parallel: bool,
    /// Replaces the budgets of the ideals handed to the pipeline.
    pub budget: Option<Budget>,
}

impl Default for SegreOptions {
    fn default() -> Self {
        SegreOptions {
            trials: 3,
            seed: 0,
            parallel: true,
            budget: None,
        }
    }
}

impl SegreOptions {
    pub fn seeds(&self) -> Vec<u64> {
        (0..self.trials.max(1) as u64)
            .map(|i| self.seed.wrapping_add(i))
            .collect()
    }
}

/// `e_1..e_n` and `m_0..m_{n-1}`; `top_polar` is `m_n`, the multiplicity of
/// what is left after the last level (zero for generic data).
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct SegreProfile {
    pub n: usize,
    pub e: Vec<u64>,
    pub m: Vec<u64>,
    pub top_polar: u64,
    pub trials: usize,
    pub seeds: Vec<u64>,
    pub field: FieldSpec,
    pub agreement: bool,
}

impl SegreProfile {
    fn values(&self) -> (&[u64], &[u64], u64) {
        (&self.e, &self.m, self.top_polar)
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct LevelTrace {
    pub k: usize,
    /// `W_k = A_{k-1} + (g_k)`.
    pub w: Ideal,
    /// `A_k`, the saturation of `W_k` by `I + X`. At the last level, when
    /// `W_n` is at most a point at the origin, the polar germ is empty and
    /// recorded as the unit ideal.
    pub polar: Ideal,
    /// Support of the Segre cycle: `W_k` saturated by `A_k`.
    pub lambda_support: Ideal,
    pub mult_w: u64,
    pub mult_polar: u64,
    pub saturation_steps: usize,
}

#[derive(Clone, Debug, Serialize)]
pub struct PipelineTrace {
    pub seed: u64,
    pub combinations: Vec<String>,
    pub levels: Vec<LevelTrace>,
}

#[derive(Clone, Debug, Serialize)]
pub struct LevelComponents {
    pub k: usize,
    pub supports: Vec<Ideal>,
    pub fixed_support_estimate: Ideal,
    /// Some trial's support has a component through the origin outside the
    /// common part.
    pub has_moving_part: bool,
    /// All trials produced the same support ideal.
    pub ideal_level_stable: bool,
}

#[derive(Clone, Debug, Serialize)]
pub struct ComponentReport {
    pub levels: Vec<LevelComponents>,
}

#[derive(Clone, Debug, Serialize)]
pub struct SegreRun {
    pub profile: SegreProfile,
    pub traces: Vec<PipelineTrace>,
    /// Present when at least two trials ran.
    pub components: Option<ComponentReport>,
}

/// Dimension of `X` at the origin, after checking that `V(I)` is nowhere
/// dense in it.
fn checked_dimension(i: &Ideal, x: &Ideal) -> Result<usize> {
    if **i.ring() != **x.ring() {
        return Err(Error::RingMismatch);
    }
    let n = local_dimension(x)?.ok_or(Error::OriginAbsent)?;
    if n == 0 {
        return Err(Error::InvalidArgument(
            "the germ of X at the origin is a point; nothing to cut".into(),
        ));
    }
    if i.is_zero_ideal() {
        return Err(Error::CoSupportDense {
            cosupport_dim: n,
            dim: n,
        });
    }
    if let Some(d) = local_dimension(&i.sum(x))? {
        if d >= n {
            return Err(Error::CoSupportDense {
                cosupport_dim: d,
                dim: n,
            });
        }
    }
    Ok(n)
}

struct TrialResult {
    e: Vec<u64>,
    m: Vec<u64>,
    top_polar: u64,
    trace: PipelineTrace,
}

fn run_trial(i: &Ideal, x: &Ideal, n: usize, m0: u64, seed: u64) -> Result<TrialResult> {
    let mut rng = RandomSource::new(seed);
    let g = random_combinations(i.gens(), n, &mut rng)?;
    let ix = i.sum(x);
    let mut a = x.clone();
    let mut e = Vec::with_capacity(n);
    let mut m = vec![m0];
    let mut levels = Vec::with_capacity(n);
    for (k, gk) in g.iter().enumerate().map(|(k, gk)| (k + 1, gk)) {
        let w = a.with_generator(gk.clone());
        // at the last level a germ that is at most a point at the origin lies
        // inside V(I), so the polar germ is empty; skip the global
        // saturation, whose cost is dominated by points away from the origin
        let (polar, steps) = if k == n && local_dimension(&w)?.is_none_or(|d| d == 0) {
            (w.derive(vec![Polynomial::one(w.ring())]), 0)
        } else {
            let sat = saturation(&w, &ix)?;
            (sat.ideal, sat.steps)
        };
        let mult_w = mult0_or_zero(&w)?;
        let mult_polar = mult0_or_zero(&polar)?;
        if mult_polar > mult_w {
            return Err(Error::Inconsistent(format!(
                "level {k}: polar part has multiplicity {mult_polar} above the total {mult_w}"
            )));
        }
        let lambda_support = saturation(&w, &polar)?.ideal;
        e.push(mult_w - mult_polar);
        m.push(mult_polar);
        levels.push(LevelTrace {
            k,
            w,
            polar: polar.clone(),
            lambda_support,
            mult_w,
            mult_polar,
            saturation_steps: steps,
        });
        a = polar;
    }
    let top_polar = m.pop().expect("n >= 1 levels");
    Ok(TrialResult {
        e,
        m,
        top_polar,
        trace: PipelineTrace {
            seed,
            combinations: g.iter().map(|p| p.to_string()).collect(),
            levels,
        },
    })
}

/// Segre numbers, polar multiplicities, per-trial traces and (for two or more
/// trials) the fixed/moving component classification.
///
/// `X` must define a reduced equidimensional germ through the origin; this is
/// the caller's assertion and is not verified. The zero ideal stands for the
/// whole ambient space.
pub fn segre_polar_profile(i: &Ideal, x: &Ideal, opts: &SegreOptions) -> Result<SegreRun> {
    let (i, x) = match opts.budget {
        Some(b) => (&i.clone().with_budget(b), &x.clone().with_budget(b)),
        None => (i, x),
    };
    let n = checked_dimension(i, x)?;
    let m0 = mult0_or_zero(x)?;
    let seeds = opts.seeds();
    let results: Vec<Result<TrialResult>> = if opts.parallel {
        seeds
            .par_iter()
            .map(|&s| run_trial(i, x, n, m0, s))
            .collect()
    } else {
        seeds.iter().map(|&s| run_trial(i, x, n, m0, s)).collect()
    };
    let results = results.into_iter().collect::<Result<Vec<_>>>()?;

    let first = &results[0];
    let agreement = results
        .iter()
        .all(|r| r.e == first.e && r.m == first.m && r.top_polar == first.top_polar);
    if !agreement {
        let detail = results
            .iter()
            .map(|r| {
                format!(
                    "seed {}: e={:?} m={:?} top_polar={}",
                    r.trace.seed, r.e, r.m, r.top_polar
                )
            })
            .collect::<Vec<_>>()
            .join("; ");
        return Err(Error::TrialDisagreement(detail));
    }
    let profile = SegreProfile {
        n,
        e: first.e.clone(),
        m: first.m.clone(),
        top_polar: first.top_polar,
        trials: seeds.len(),
        seeds,
        field: i.ring().field(),
        agreement,
    };
    let traces: Vec<PipelineTrace> = results.into_iter().map(|r| r.trace).collect();
    let components = if traces.len() >= 2 {
        Some(classify_components(&traces)?)
    } else {
        None
    };
    Ok(SegreRun {
        profile,
        traces,
        components,
    })
}

pub fn segre_numbers(i: &Ideal, x: &Ideal, opts: &SegreOptions) -> Result<Vec<u64>> {
    Ok(segre_polar_profile(i, x, opts)?.profile.e)
}

pub fn polar_multiplicities(i: &Ideal, x: &Ideal, opts: &SegreOptions) -> Result<Vec<u64>> {
    Ok(segre_polar_profile(i, x, opts)?.profile.m)
}

/// Intersects the per-trial Segre supports level by level. The estimate is
/// the ideal sum (the common part of the supports); a trial has a moving
/// part when saturating its support by the estimate leaves a germ at the
/// origin, i.e. it has a component through 0 that the other trials lack.
pub fn classify_components(traces: &[PipelineTrace]) -> Result<ComponentReport> {
    if traces.len() < 2 {
        return Err(Error::InvalidArgument(
            "component classification needs at least two trials".into(),
        ));
    }
    let depth = traces[0].levels.len();
    if traces.iter().any(|t| t.levels.len() != depth) {
        return Err(Error::Inconsistent("traces have different depths".into()));
    }
    let mut levels = Vec::with_capacity(depth);
    for k in 0..depth {
        let supports: Vec<Ideal> = traces
            .iter()
            .map(|t| t.levels[k].lambda_support.clone())
            .collect();
        let mut estimate = supports[0].clone();
        for s in &supports[1..] {
            estimate = estimate.sum(s);
        }
        let estimate = estimate.derive(estimate.groebner()?.elements().to_vec());
        let mut has_moving_part = false;
        for s in &supports {
            let rest = saturation(s, &estimate)?.ideal;
            if local_dimension(&rest)?.is_some() {
                has_moving_part = true;
                break;
            }
        }
        let mut ideal_level_stable = true;
        for s in &supports[1..] {
            if !s.same_ideal(&supports[0])? {
                ideal_level_stable = false;
                break;
            }
        }
        levels.push(LevelComponents {
            k: k + 1,
            supports,
            fixed_support_estimate: estimate,
            has_moving_part,
            ideal_level_stable,
        });
    }
    Ok(ComponentReport { levels })
}

#[derive(Clone, Debug, Serialize)]
pub struct ReductionCheck {
    pub equal: bool,
    pub original: SegreProfile,
    pub reduced: SegreProfile,
    pub reduction: Vec<String>,
}

/// Compares the profile of `I` with that of the ideal generated by `n`
/// random combinations of its generators.
pub fn reduction_invariance_check(
    i: &Ideal,
    x: &Ideal,
    opts: &SegreOptions,
) -> Result<ReductionCheck> {
    let n = checked_dimension(i, x)?;
    let original = segre_polar_profile(i, x, opts)?.profile;
    let mut rng = RandomSource::new(opts.seed.wrapping_add(opts.trials.max(1) as u64));
    let combos = random_combinations(i.gens(), n, &mut rng)?;
    let reduction: Vec<String> = combos.iter().map(|p| p.to_string()).collect();
    let reduced = segre_polar_profile(&i.derive(combos), x, opts)?.profile;
    Ok(ReductionCheck {
        equal: original.values() == reduced.values(),
        original,
        reduced,
        reduction,
    })
}
