//! Brute-force oracles shared by the integration tests. They only use plain
//! rational linear algebra on coefficient vectors, never the basis engine.

#![allow(dead_code)]

use std::collections::BTreeMap;
use std::sync::Arc;

use num_rational::BigRational;
use num_traits::Zero;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use segre::ring::{Coeff, FieldSpec, Monomial, PolyRing, Polynomial};

/// Exponent vectors ordered by (degree, exponents); the largest key is the
/// pivot of a vector.
pub type Key = (u32, Vec<u16>);
pub type SparseVec = BTreeMap<Key, BigRational>;

pub fn key_of(m: &Monomial) -> Key {
    (m.degree(), m.exps().to_vec())
}

pub fn to_vec(f: &Polynomial) -> SparseVec {
    f.terms()
        .iter()
        .map(|(m, c)| (key_of(m), c.to_rational()))
        .collect()
}

pub fn monomials_up_to(nvars: usize, d: u32) -> Vec<Monomial> {
    fn rec(prefix: &mut Vec<u16>, left: usize, budget: u32, out: &mut Vec<Monomial>) {
        if left == 0 {
            out.push(Monomial::new(prefix.clone()));
            return;
        }
        for e in 0..=budget {
            prefix.push(e as u16);
            rec(prefix, left - 1, budget - e, out);
            prefix.pop();
        }
    }
    let mut out = Vec::new();
    rec(&mut Vec::new(), nvars, d, &mut out);
    out
}

/// Row echelon form keyed by pivot.
#[derive(Default)]
pub struct Echelon {
    rows: BTreeMap<Key, SparseVec>,
}

impl Echelon {
    pub fn rank(&self) -> usize {
        self.rows.len()
    }

    /// Reduces `v` until its pivot is not a pivot of the echelon form.
    pub fn reduce(&self, mut v: SparseVec) -> SparseVec {
        while let Some((k, c)) = v.iter().next_back().map(|(k, c)| (k.clone(), c.clone())) {
            let Some(row) = self.rows.get(&k) else { break };
            let factor = c / &row[&k];
            for (rk, rc) in row {
                let e = v.entry(rk.clone()).or_insert_with(BigRational::zero);
                *e -= &factor * rc;
                if e.is_zero() {
                    v.remove(rk);
                }
            }
        }
        v
    }

    pub fn insert(&mut self, v: SparseVec) {
        let v = self.reduce(v);
        if let Some((k, _)) = v.iter().next_back() {
            self.rows.insert(k.clone(), v);
        }
    }

    pub fn contains(&self, v: SparseVec) -> bool {
        self.reduce(v).is_empty()
    }
}

/// Does `f = Σ h_i g_i` have a solution with `deg(h_i g_i) <= max_deg`?
pub fn member_up_to_degree(f: &Polynomial, gens: &[Polynomial], max_deg: u32) -> bool {
    let ring = f.ring();
    let n = ring.nvars();
    let mut span = Echelon::default();
    for g in gens.iter().filter(|g| !g.is_zero()) {
        let dg = g.degree().unwrap();
        if dg > max_deg {
            continue;
        }
        for m in monomials_up_to(n, max_deg - dg) {
            span.insert(to_vec(&g.mul_monomial(&m, &ring.field().one())));
        }
    }
    span.contains(to_vec(f))
}

/// `dim k[x]/(I + m^d)`, which is the local colength of `I` at the origin
/// once `m^(d-1)` lies in `I` locally.
pub fn truncated_colength(gens: &[Polynomial], d: u32) -> usize {
    let ring = gens[0].ring();
    let n = ring.nvars();
    let mut span = Echelon::default();
    for g in gens {
        for m in monomials_up_to(n, d - 1) {
            let mut v = to_vec(&g.mul_monomial(&m, &ring.field().one()));
            v.retain(|k, _| k.0 < d);
            span.insert(v);
        }
    }
    monomials_up_to(n, d - 1).len() - span.rank()
}

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

pub fn qq_ring(vars: &[&str]) -> Arc<PolyRing> {
    PolyRing::new(vars, FieldSpec::Rationals).unwrap()
}

pub fn random_poly(
    ring: &Arc<PolyRing>,
    rng: &mut ChaCha8Rng,
    min_deg: u32,
    max_deg: u32,
    terms: usize,
) -> Polynomial {
    let n = ring.nvars();
    let field = ring.field();
    let mut out = Vec::new();
    for _ in 0..terms {
        let d = rng.gen_range(min_deg..=max_deg);
        let mut exps = vec![0u16; n];
        for _ in 0..d {
            exps[rng.gen_range(0..n)] += 1;
        }
        let mut c = 0;
        while c == 0 {
            c = rng.gen_range(-3i64..=3);
        }
        out.push((Monomial::new(exps), field.from_i64(c)));
    }
    Polynomial::from_terms(ring, out)
}

pub fn coeff(ring: &Arc<PolyRing>, n: i64) -> Coeff {
    ring.field().from_i64(n)
}

/// Twenty small random ideals in 2 or 3 variables, reproducible.
pub fn oracle_ideals() -> Vec<Vec<Polynomial>> {
    let mut r = rng(0x0_ac1e);
    (0..20)
        .map(|k| {
            let ring = if k % 2 == 0 {
                qq_ring(&["x", "y"])
            } else {
                qq_ring(&["x", "y", "z"])
            };
            let ngens = r.gen_range(2..=3);
            (0..ngens)
                .map(|_| {
                    let terms = r.gen_range(1..=3);
                    random_poly(&ring, &mut r, 1, 3, terms)
                })
                .filter(|g| !g.is_zero())
                .collect()
        })
        .collect()
}

pub struct EngineOracleSummary {
    pub ideals: usize,
    pub s_pairs_checked: usize,
    pub s_pairs_nonzero: usize,
    pub membership_checked: usize,
    pub membership_mismatches: Vec<String>,
}

/// Degree bound for the cofactor solve.
pub const ORACLE_DEGREE: u32 = 8;

/// S-polynomial vanishing on every basis the engine produces (global and
/// local) and membership verdicts against the degree-bounded cofactor solve.
pub fn engine_oracle_summary() -> EngineOracleSummary {
    use segre::basis::{normal_form, s_polynomial};
    use segre::ideal::Ideal;

    let ideals = oracle_ideals();
    let mut r = rng(0x5eed);
    let mut summary = EngineOracleSummary {
        ideals: ideals.len(),
        s_pairs_checked: 0,
        s_pairs_nonzero: 0,
        membership_checked: 0,
        membership_mismatches: Vec::new(),
    };
    for gens in &ideals {
        let ring = gens[0].ring().clone();
        let ideal = Ideal::new(&ring, gens.clone());
        for basis in [ideal.groebner().unwrap(), ideal.standard().unwrap()] {
            let el = basis.elements();
            for a in 0..el.len() {
                for b in a + 1..el.len() {
                    let s = s_polynomial(&el[a], &el[b], basis.order());
                    summary.s_pairs_checked += 1;
                    if !normal_form(&s, basis).is_zero() {
                        summary.s_pairs_nonzero += 1;
                    }
                }
            }
        }

        let mut candidates = Vec::new();
        for _ in 0..3 {
            let mut f = Polynomial::zero(&ring);
            for g in gens {
                let h = random_poly(&ring, &mut r, 0, 2, 2);
                f = f.add(&h.mul(g));
            }
            candidates.push(f);
        }
        for _ in 0..3 {
            candidates.push(random_poly(&ring, &mut r, 0, 3, 3));
        }
        // Basis elements are members; the oracle must find cofactors.
        candidates.extend(ideal.groebner().unwrap().elements().iter().cloned());
        for f in candidates {
            if f.degree().unwrap_or(0) > ORACLE_DEGREE {
                continue;
            }
            let engine = ideal.contains(&f).unwrap();
            let oracle = member_up_to_degree(&f, gens, ORACLE_DEGREE);
            summary.membership_checked += 1;
            if engine != oracle {
                summary.membership_mismatches.push(format!(
                    "ideal {:?}, f = {f}: engine {engine}, oracle {oracle}",
                    gens.iter().map(|g| g.to_string()).collect::<Vec<_>>()
                ));
            }
        }
    }
    summary
}
