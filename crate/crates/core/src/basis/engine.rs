use std::sync::Arc;

use crate::error::{Error, Result};
use crate::ring::{Monomial, MonomialOrder, PolyRing, Polynomial};

use super::work::WPoly;
use super::{minimize_monomials, Budget, ReducedBasis};

pub(super) struct Counter<'a> {
    steps: u64,
    budget: &'a Budget,
}

impl Counter<'_> {
    fn tick(&mut self) -> Result<()> {
        self.steps += 1;
        if self.steps > self.budget.max_reductions {
            return Err(Error::budget(
                "basis computation",
                format!("more than {} reduction steps", self.budget.max_reductions),
            ));
        }
        Ok(())
    }
}

/// Full reduction: afterwards no term is divisible by a leading monomial.
/// With `exact` the result is the remainder itself, otherwise a nonzero
/// constant multiple of it.
pub(super) fn full_reduce(
    mut h: WPoly,
    basis: &[WPoly],
    order: MonomialOrder,
    exact: bool,
    mut counter: Option<&mut Counter<'_>>,
) -> Result<WPoly> {
    let mut rem: Vec<(Monomial, crate::ring::Coeff)> = Vec::new();
    while !h.is_zero() {
        match basis.iter().find(|g| g.lm().divides(h.lm())) {
            Some(g) => {
                if let Some(c) = counter.as_deref_mut() {
                    c.tick()?;
                }
                if let Some(s) = h.reduce_lead(g, order, exact) {
                    for (_, d) in &mut rem {
                        *d = d.mul(&s);
                    }
                }
            }
            None => {
                let t = h.terms.remove(0);
                rem.push(t);
                h = WPoly::from_terms_sorted(std::mem::take(&mut h.terms));
            }
        }
    }
    Ok(WPoly::from_terms_sorted(rem))
}

/// Top reduction only: afterwards the leading monomial is not divisible.
fn top_reduce(
    mut h: WPoly,
    basis: &[WPoly],
    order: MonomialOrder,
    counter: &mut Counter<'_>,
) -> Result<WPoly> {
    while !h.is_zero() {
        match basis.iter().find(|g| g.lm().divides(h.lm())) {
            Some(g) => {
                counter.tick()?;
                h.reduce_lead(g, order, false);
                if counter.steps.is_multiple_of(16) {
                    h.normalize();
                }
            }
            None => break,
        }
    }
    Ok(h)
}

/// Mora's normal form: among admissible reducers pick one of minimal ecart;
/// whenever the chosen reducer has larger ecart than the current remainder,
/// the remainder itself joins the reducer set.
pub(super) fn mora_reduce(
    mut h: WPoly,
    basis: &[WPoly],
    order: MonomialOrder,
    exact: bool,
    mut counter: Option<&mut Counter<'_>>,
) -> Result<WPoly> {
    let mut extra: Vec<WPoly> = Vec::new();
    let mut steps = 0u32;
    while !h.is_zero() {
        let best = basis
            .iter()
            .chain(extra.iter())
            .filter(|g| g.lm().divides(h.lm()))
            .min_by_key(|g| g.ecart());
        let Some(g) = best else { break };
        if let Some(c) = counter.as_deref_mut() {
            c.tick()?;
        }
        let g = g.clone();
        if g.ecart() > h.ecart() {
            extra.push(h.clone());
        }
        h.reduce_lead(&g, order, exact);
        if !exact && steps % 16 == 15 {
            h.normalize();
        }
        steps += 1;
    }
    Ok(h)
}

struct Pair {
    i: usize,
    j: usize,
    lcm: Monomial,
}

struct State<'a> {
    order: MonomialOrder,
    polys: Vec<WPoly>,
    active: Vec<bool>,
    pairs: Vec<Pair>,
    counter: Counter<'a>,
}

impl State<'_> {
    fn active_polys(&self) -> Vec<WPoly> {
        self.polys
            .iter()
            .zip(&self.active)
            .filter(|(_, a)| **a)
            .map(|(p, _)| p.clone())
            .collect()
    }

    fn reduce(&mut self, h: WPoly, reducers: &[WPoly]) -> Result<WPoly> {
        if self.order.is_global() {
            top_reduce(h, reducers, self.order, &mut self.counter)
        } else {
            mora_reduce(h, reducers, self.order, false, Some(&mut self.counter))
        }
    }

    /// Gebauer–Möller installation of a new basis element.
    fn update(&mut self, h: WPoly) {
        let new = self.polys.len();
        let hm = h.lm().clone();
        let candidates: Vec<(usize, Monomial)> = (0..self.polys.len())
            .filter(|&g| self.active[g])
            .map(|g| (g, hm.lcm(self.polys[g].lm())))
            .collect();

        // chain criterion among the new pairs
        let mut kept: Vec<(usize, Monomial)> = Vec::new();
        for (idx, (g, l)) in candidates.iter().enumerate() {
            let coprime = hm.is_coprime(self.polys[*g].lm());
            let dominated_later = candidates[idx + 1..].iter().any(|(_, l2)| l2.divides(l));
            let dominated_kept = kept.iter().any(|(_, l2)| l2.divides(l));
            if coprime || (!dominated_later && !dominated_kept) {
                kept.push((*g, l.clone()));
            }
        }
        // product criterion (global orders only)
        let global = self.order.is_global();
        let fresh: Vec<Pair> = kept
            .into_iter()
            .filter(|(g, _)| !global || !hm.is_coprime(self.polys[*g].lm()))
            .map(|(g, lcm)| Pair { i: g, j: new, lcm })
            .collect();

        // chain criterion against old pairs
        let polys = &self.polys;
        self.pairs.retain(|p| {
            !(hm.divides(&p.lcm)
                && hm.lcm(polys[p.i].lm()) != p.lcm
                && hm.lcm(polys[p.j].lm()) != p.lcm)
        });
        self.pairs.extend(fresh);

        for g in 0..self.polys.len() {
            if self.active[g] && hm.divides(self.polys[g].lm()) {
                self.active[g] = false;
            }
        }
        self.polys.push(h);
        self.active.push(true);
    }

    fn take_pair(&mut self) -> Option<Pair> {
        let order = self.order;
        let idx = (0..self.pairs.len()).min_by(|&a, &b| {
            let (la, lb) = (&self.pairs[a].lcm, &self.pairs[b].lcm);
            la.degree()
                .cmp(&lb.degree())
                .then_with(|| order.compare(la, lb))
        })?;
        Some(self.pairs.swap_remove(idx))
    }

    fn check_budget(&self, h: &WPoly) -> Result<()> {
        let b = self.counter.budget;
        if self.polys.len() + 1 > b.max_basis_size {
            return Err(Error::budget(
                "basis computation",
                format!("basis grew beyond {} elements", b.max_basis_size),
            ));
        }
        if h.maxdeg() > b.max_degree {
            return Err(Error::budget(
                "basis computation",
                format!("element of degree {} exceeds {}", h.maxdeg(), b.max_degree),
            ));
        }
        Ok(())
    }
}

pub(super) fn compute(
    ring: &Arc<PolyRing>,
    gens: &[Polynomial],
    order: MonomialOrder,
    budget: &Budget,
) -> Result<ReducedBasis> {
    let mut st = State {
        order,
        polys: Vec::new(),
        active: Vec::new(),
        pairs: Vec::new(),
        counter: Counter { steps: 0, budget },
    };
    let unit = || {
        let one = WPoly::from_poly(&Polynomial::one(ring), order);
        Ok(ReducedBasis::from_work(ring, order, vec![one]))
    };

    for g in gens {
        assert!(**g.ring() == **ring, "{}", Error::RingMismatch);
        if g.is_zero() {
            continue;
        }
        let mut w = WPoly::from_poly(g, order);
        w.normalize();
        let reducers = st.active_polys();
        let mut h = st.reduce(w, &reducers)?;
        if h.is_zero() {
            continue;
        }
        h.normalize();
        if h.lm().is_one() {
            return unit();
        }
        st.check_budget(&h)?;
        st.update(h);
    }

    while let Some(pair) = st.take_pair() {
        let s = WPoly::s_poly(&st.polys[pair.i], &st.polys[pair.j], order);
        if s.is_zero() {
            continue;
        }
        // Mora's normal form may use every element computed so far; the
        // global reduction only needs the active ones.
        let reducers = if order.is_global() {
            st.active_polys()
        } else {
            st.polys.clone()
        };
        let mut h = st.reduce(s, &reducers)?;
        if h.is_zero() {
            continue;
        }
        h.normalize();
        if h.lm().is_one() {
            return unit();
        }
        st.check_budget(&h)?;
        st.update(h);
    }

    finalize(ring, st)
}

fn finalize(ring: &Arc<PolyRing>, mut st: State<'_>) -> Result<ReducedBasis> {
    let order = st.order;
    let mut elems = st.active_polys();
    let minimal = minimize_monomials(elems.iter().map(|w| w.lm().clone()).collect());
    elems.retain(|w| minimal.contains(w.lm()));
    // equal leading monomials cannot survive Gebauer–Möller, but stay safe
    let mut seen: Vec<Monomial> = Vec::new();
    elems.retain(|w| {
        if seen.contains(w.lm()) {
            false
        } else {
            seen.push(w.lm().clone());
            true
        }
    });

    if order.is_global() {
        let mut reduced = Vec::with_capacity(elems.len());
        for i in 0..elems.len() {
            let others: Vec<WPoly> = elems
                .iter()
                .enumerate()
                .filter(|(j, _)| *j != i)
                .map(|(_, w)| w.clone())
                .collect();
            // the leading term is irreducible, so it survives as the first
            // remainder term
            let w = full_reduce(elems[i].clone(), &others, order, false, Some(&mut st.counter))?;
            reduced.push(w);
        }
        elems = reduced;
    }
    for w in &mut elems {
        w.make_monic();
    }
    elems.sort_by(|a, b| order.compare(a.lm(), b.lm()));
    Ok(ReducedBasis::from_work(ring, order, elems))
}
