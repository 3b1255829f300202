//! Identities between Segre data of related ideals: multiplying by the
//! maximal ideal, cutting with generic linear spaces, comparing integral
//! closures, and detecting limiting tangent hyperplanes.

use serde::Serialize;

use crate::error::{Error, Result};
use crate::ideal::Ideal;
use crate::mult::local_dimension;
use crate::ring::{rank, Coeff, LinearSubspace, Polynomial, RandomSource};
use crate::segre::{segre_polar_profile, SegreOptions, SegreProfile};

use super::le::jacobian_ideal;

fn binomial(n: usize, k: usize) -> u64 {
    if k > n {
        return 0;
    }
    let k = k.min(n - k);
    (0..k).fold(1u64, |acc, i| acc * (n - i) as u64 / (i + 1) as u64)
}

#[derive(Clone, Debug, Serialize)]
pub struct IdentityRow {
    pub k: usize,
    pub lhs: u64,
    pub rhs: u64,
    pub holds: bool,
}

impl IdentityRow {
    fn new(k: usize, lhs: u64, rhs: u64) -> Self {
        IdentityRow {
            k,
            lhs,
            rhs,
            holds: lhs == rhs,
        }
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct ExpansionReport {
    pub profile: SegreProfile,
    pub product_profile: SegreProfile,
    /// `e_k(mI)` against the right-hand side computed from `I`.
    pub rows: Vec<IdentityRow>,
    pub all_hold: bool,
}

/// Segre numbers of `m·I` from those of `I`:
///
/// ```text
/// e_k(mI) = Σ_{i=1}^k C(k-1, i-1) e_i(I)                                 (k < n)
/// e_n(mI) = Σ_{i=0}^{n-1} C(n, i) m_i(I) + Σ_{i=1}^n C(n-1, i-1) e_i(I)
/// ```
pub fn expansion_check(i: &Ideal, x: &Ideal, opts: &SegreOptions) -> Result<ExpansionReport> {
    let profile = segre_polar_profile(i, x, opts)?.profile;
    let mi = Ideal::maximal(i.ring()).product(i).with_budget(*i.budget());
    let product_profile = segre_polar_profile(&mi, x, opts)?.profile;
    let n = profile.n;
    let e = &profile.e;
    let m = &profile.m;
    let mut rows = Vec::with_capacity(n);
    for k in 1..=n {
        let mut rhs: u64 = (1..=k).map(|j| binomial(k - 1, j - 1) * e[j - 1]).sum();
        if k == n {
            rhs += (0..n).map(|j| binomial(n, j) * m[j]).sum::<u64>();
        }
        rows.push(IdentityRow::new(k, product_profile.e[k - 1], rhs));
    }
    Ok(ExpansionReport {
        all_hold: rows.iter().all(|r| r.holds),
        profile,
        product_profile,
        rows,
    })
}

#[derive(Clone, Debug, Serialize)]
pub struct SliceReport {
    pub k: usize,
    /// Dimension of the generic linear subspace; its intersection with `X`
    /// has dimension `k`.
    pub subspace_dim: usize,
    pub subspace: Vec<Vec<String>>,
    pub profile: SegreProfile,
    pub slice_profile: SegreProfile,
    /// `e_i` of the slice against `e_i` (for `i < k`) and `m_k + e_k`
    /// (for `i = k`).
    pub rows: Vec<IdentityRow>,
    pub all_hold: bool,
}

/// Cuts `X` with a generic linear subspace so that the intersection has
/// dimension `k` and checks `e_i(slice) = e_i` for `i < k` and
/// `e_k(slice) = m_k + e_k`.
pub fn slice_check(i: &Ideal, x: &Ideal, k: usize, opts: &SegreOptions) -> Result<SliceReport> {
    let profile = segre_polar_profile(i, x, opts)?.profile;
    let n = profile.n;
    if k == 0 || k >= n {
        return Err(Error::InvalidArgument(format!(
            "slice dimension {k} must lie in 1..={}",
            n.saturating_sub(1)
        )));
    }
    let ring = i.ring();
    if ring.nparams() > 0 {
        return Err(Error::InvalidArgument(
            "slicing needs a ring without parameters".into(),
        ));
    }
    let subspace_dim = ring.nvars() - n + k;
    let mut rng = RandomSource::new(opts.seed.wrapping_add(0x511c_e000 + k as u64));
    let sub = LinearSubspace::generic(ring, subspace_dim, &mut rng)?;
    let target = sub.target().clone();
    let si = Ideal::new(&target, i.gens().iter().map(|g| sub.restrict(g)).collect())
        .with_budget(*i.budget());
    let sx = Ideal::new(&target, x.gens().iter().map(|g| sub.restrict(g)).collect())
        .with_budget(*x.budget());
    let slice_profile = segre_polar_profile(&si, &sx, opts)?.profile;
    if slice_profile.n != k {
        return Err(Error::Inconsistent(format!(
            "slice has dimension {} instead of {k}",
            slice_profile.n
        )));
    }
    let mut rows = Vec::with_capacity(k);
    for j in 1..k {
        rows.push(IdentityRow::new(j, slice_profile.e[j - 1], profile.e[j - 1]));
    }
    rows.push(IdentityRow::new(
        k,
        slice_profile.e[k - 1],
        profile.m[k] + profile.e[k - 1],
    ));
    Ok(SliceReport {
        k,
        subspace_dim,
        subspace: sub
            .matrix()
            .iter()
            .map(|row| row.iter().map(Coeff::to_string).collect())
            .collect(),
        all_hold: rows.iter().all(|r| r.holds),
        profile,
        slice_profile,
        rows,
    })
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum ReesVerdict {
    ClosureEqual,
    ClosureNotEqual,
}

#[derive(Clone, Debug, Serialize)]
pub struct ReesReport {
    pub profile_i: SegreProfile,
    pub profile_j: SegreProfile,
    pub verdict: ReesVerdict,
}

/// For `I ⊆ J` on `X`: the integral closures agree exactly when all Segre
/// numbers agree. Containment is checked in the local ring of `X`.
pub fn rees_test(i: &Ideal, j: &Ideal, x: &Ideal, opts: &SegreOptions) -> Result<ReesReport> {
    let jx = j.sum(x);
    for g in i.gens() {
        if !jx.contains_locally(g)? {
            return Err(Error::NotContained(g.to_string()));
        }
    }
    let profile_i = segre_polar_profile(i, x, opts)?.profile;
    let profile_j = segre_polar_profile(j, x, opts)?.profile;
    let verdict = if profile_i.e == profile_j.e {
        ReesVerdict::ClosureEqual
    } else {
        ReesVerdict::ClosureNotEqual
    };
    Ok(ReesReport {
        profile_i,
        profile_j,
        verdict,
    })
}

#[derive(Clone, Debug, Serialize)]
pub struct LimitingHyperplaneReport {
    pub spanning_vectors: Vec<Vec<String>>,
    /// Directional derivatives along the spanning vectors.
    pub restricted_jacobian: Ideal,
    pub jacobian_profile: SegreProfile,
    pub restricted_profile: SegreProfile,
    pub limiting: bool,
}

/// Spanning vectors of the hyperplane `{ l = 0 }` for a nonzero linear form.
pub fn hyperplane_from_form(l: &Polynomial) -> Result<Vec<Vec<Coeff>>> {
    let ring = l.ring();
    let n = ring.nvars();
    if l.is_zero() || !l.is_homogeneous() || l.degree() != Some(1) {
        return Err(Error::InvalidArgument(format!(
            "{l} is not a nonzero linear form"
        )));
    }
    let field = ring.field();
    let coeff = |i: usize| {
        l.terms()
            .iter()
            .find(|(m, _)| m.exponent(i) == 1)
            .map_or(field.zero(), |(_, c)| c.clone())
    };
    let a: Vec<Coeff> = (0..n).map(coeff).collect();
    let pivot = a.iter().position(|c| !c.is_zero()).expect("nonzero form");
    // e_j - (a_j / a_p) e_p for j != p
    let mut out = Vec::with_capacity(n - 1);
    for j in (0..n).filter(|&j| j != pivot) {
        let mut v = vec![field.zero(); n];
        v[j] = field.one();
        v[pivot] = a[j].div(&a[pivot]).neg();
        out.push(v);
    }
    Ok(out)
}

/// Compares the Segre numbers of `J(f)` and of the ideal `J(f)_H` of
/// derivatives along `H`, both on `X = V(f)`; `H` is a limiting tangent
/// hyperplane exactly when they differ.
pub fn limiting_hyperplane_test(
    f: &Polynomial,
    h: &[Vec<Coeff>],
    opts: &SegreOptions,
) -> Result<LimitingHyperplaneReport> {
    let ring = f.ring();
    let n = ring.nvars();
    let expected = n - 1;
    if h.iter().any(|v| v.len() != n) {
        return Err(Error::InvalidArgument(format!(
            "spanning vectors must have {n} coordinates"
        )));
    }
    let r = rank(h);
    if h.len() != expected || r != expected {
        return Err(Error::NotAHyperplane { expected, rank: r });
    }
    let partials: Vec<Polynomial> = (0..n).map(|i| f.derivative(i)).collect();
    let directional: Vec<Polynomial> = h
        .iter()
        .map(|v| {
            v.iter()
                .zip(&partials)
                .fold(Polynomial::zero(ring), |acc, (c, p)| acc.add(&p.scale(c)))
        })
        .collect();
    let x = Ideal::new(ring, vec![f.clone()]);
    if local_dimension(&x)?.is_none() {
        return Err(Error::OriginAbsent);
    }
    let jac = jacobian_ideal(f);
    let jh = Ideal::new(ring, directional);
    let jacobian_profile = segre_polar_profile(&jac, &x, opts)?.profile;
    let restricted_profile = segre_polar_profile(&jh, &x, opts)?.profile;
    Ok(LimitingHyperplaneReport {
        spanning_vectors: h
            .iter()
            .map(|v| v.iter().map(Coeff::to_string).collect())
            .collect(),
        limiting: jacobian_profile.e != restricted_profile.e,
        restricted_jacobian: jh,
        jacobian_profile,
        restricted_profile,
    })
}
