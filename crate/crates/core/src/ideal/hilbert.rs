//! Hilbert series of monomial ideals.

use serde::Serialize;

use crate::basis::minimize_monomials;
use crate::ring::Monomial;

/// Krull dimension and degree of `k[x]/M`; the empty scheme has
/// `dim = -1, degree = 0`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct DimDegree {
    pub dim: i64,
    pub degree: u64,
}

/// Numerator `N(t)` of the Hilbert series `N(t) / (1-t)^n` of `k[x_1..x_n]/M`,
/// as coefficients of increasing powers of `t`.
pub fn hilbert_numerator(gens: &[Monomial], nvars: usize) -> Vec<i128> {
    let gens = minimize_monomials(gens.to_vec());
    numerator(gens, nvars)
}

fn numerator(gens: Vec<Monomial>, nvars: usize) -> Vec<i128> {
    if gens.is_empty() {
        return vec![1];
    }
    if gens.iter().any(Monomial::is_one) {
        return vec![0];
    }
    let pairwise_coprime = gens
        .iter()
        .enumerate()
        .all(|(i, a)| gens[i + 1..].iter().all(|b| a.is_coprime(b)));
    if pairwise_coprime {
        let mut acc = vec![1i128];
        for g in &gens {
            acc = poly_mul(&acc, &one_minus_t_pow(g.degree() as usize));
        }
        return acc;
    }

    // pivot on the variable occurring in the most generators
    let var = (0..nvars)
        .max_by_key(|&i| (gens.iter().filter(|g| g.exponent(i) > 0).count(), usize::MAX - i))
        .expect("at least one variable");
    let e = gens
        .iter()
        .map(|g| g.exponent(var))
        .filter(|&e| e > 0)
        .min()
        .expect("pivot variable occurs");
    let pivot = Monomial::var(nvars, var, e);

    let mut with_pivot: Vec<Monomial> = gens.clone();
    with_pivot.push(pivot.clone());
    let colon: Vec<Monomial> = gens
        .iter()
        .map(|g| {
            let mut exps = crate::ring::Exponents::from_slice(g.exps());
            exps[var] = exps[var].saturating_sub(e);
            Monomial::new(exps)
        })
        .collect();

    let a = numerator(minimize_monomials(with_pivot), nvars);
    let b = numerator(minimize_monomials(colon), nvars);
    let mut shifted = vec![0i128; e as usize];
    shifted.extend(b);
    poly_add(&a, &shifted)
}

fn one_minus_t_pow(d: usize) -> Vec<i128> {
    let mut v = vec![0i128; d + 1];
    v[0] = 1;
    v[d] -= 1;
    v
}

fn poly_mul(a: &[i128], b: &[i128]) -> Vec<i128> {
    let mut out = vec![0i128; a.len() + b.len() - 1];
    for (i, x) in a.iter().enumerate() {
        for (j, y) in b.iter().enumerate() {
            out[i + j] += x * y;
        }
    }
    trim(out)
}

fn poly_add(a: &[i128], b: &[i128]) -> Vec<i128> {
    let mut out = vec![0i128; a.len().max(b.len())];
    for (i, x) in a.iter().enumerate() {
        out[i] += x;
    }
    for (i, y) in b.iter().enumerate() {
        out[i] += y;
    }
    trim(out)
}

fn trim(mut v: Vec<i128>) -> Vec<i128> {
    while v.len() > 1 && *v.last().unwrap() == 0 {
        v.pop();
    }
    v
}

/// Dimension and degree read off the Hilbert series numerator.
pub fn monomial_dim_degree(gens: &[Monomial], nvars: usize) -> DimDegree {
    let mut num = hilbert_numerator(gens, nvars);
    if num.iter().all(|&c| c == 0) {
        return DimDegree { dim: -1, degree: 0 };
    }
    let mut dim = nvars as i64;
    while num.iter().sum::<i128>() == 0 {
        // divide by (1 - t): q_k = sum_{j<=k} a_j
        let mut q = Vec::with_capacity(num.len() - 1);
        let mut acc = 0i128;
        for &c in &num[..num.len() - 1] {
            acc += c;
            q.push(acc);
        }
        num = trim(q);
        dim -= 1;
    }
    let degree = num.iter().sum::<i128>();
    debug_assert!(degree > 0);
    DimDegree {
        dim,
        degree: degree as u64,
    }
}

/// Monomials outside the ideal, or `None` when there are infinitely many.
pub fn standard_monomials(gens: &[Monomial], nvars: usize) -> Option<Vec<Monomial>> {
    let gens = minimize_monomials(gens.to_vec());
    let mut bounds = vec![None; nvars];
    for g in &gens {
        let support: Vec<usize> = (0..nvars).filter(|&i| g.exponent(i) > 0).collect();
        if support.len() == 1 {
            let i = support[0];
            let e = g.exponent(i);
            bounds[i] = Some(bounds[i].map_or(e, |b: u16| b.min(e)));
        } else if support.is_empty() {
            return Some(Vec::new());
        }
    }
    let bounds: Vec<u16> = bounds.into_iter().collect::<Option<_>>()?;
    let mut out = Vec::new();
    let mut exps = vec![0u16; nvars];
    loop {
        let m = Monomial::new(crate::ring::Exponents::from_slice(&exps));
        if !gens.iter().any(|g| g.divides(&m)) {
            out.push(m);
        }
        // odometer increment
        let mut i = 0;
        loop {
            if i == nvars {
                return Some(out);
            }
            exps[i] += 1;
            if exps[i] < bounds[i] {
                break;
            }
            exps[i] = 0;
            i += 1;
        }
    }
}
