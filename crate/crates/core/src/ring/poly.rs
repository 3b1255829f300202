//! Sparse multivariate polynomials with exact coefficients.

use std::collections::HashMap;
use std::fmt;
use std::sync::Arc;

use crate::error::{Error, Result};

use super::field::{Coeff, FieldSpec};
use super::monomial::{Exponents, Monomial, MonomialOrder};

/// Variables, coefficient field and designated parameters.
///
/// Parameters (the `t`-coordinates of a family) always occupy the trailing
/// positions of the variable list.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct PolyRing {
    vars: Vec<String>,
    field: FieldSpec,
    nparams: usize,
}

impl PolyRing {
    pub fn new<S: AsRef<str>>(vars: &[S], field: FieldSpec) -> Result<Arc<Self>> {
        Self::with_params(vars, &[] as &[&str], field)
    }

    /// `vars` followed by `params`; parameters are appended as a suffix.
    pub fn with_params<S: AsRef<str>, T: AsRef<str>>(
        vars: &[S],
        params: &[T],
        field: FieldSpec,
    ) -> Result<Arc<Self>> {
        let mut all: Vec<String> = vars.iter().map(|v| v.as_ref().to_string()).collect();
        all.extend(params.iter().map(|p| p.as_ref().to_string()));
        if all.len() > 64 {
            return Err(Error::InvalidRing("at most 64 variables are supported".into()));
        }
        for (i, v) in all.iter().enumerate() {
            let valid = v
                .chars()
                .next()
                .is_some_and(|c| c.is_alphabetic() || c == '_')
                && v.chars().all(|c| c.is_alphanumeric() || c == '_');
            if !valid {
                return Err(Error::InvalidRing(format!("invalid variable name `{v}`")));
            }
            if all[..i].contains(v) {
                return Err(Error::InvalidRing(format!("duplicate variable `{v}`")));
            }
        }
        Ok(Arc::new(PolyRing {
            vars: all,
            field,
            nparams: params.len(),
        }))
    }

    pub fn vars(&self) -> &[String] {
        &self.vars
    }

    pub fn nvars(&self) -> usize {
        self.vars.len()
    }

    pub fn field(&self) -> FieldSpec {
        self.field
    }

    /// Number of non-parameter (`z`) variables.
    pub fn nz(&self) -> usize {
        self.vars.len() - self.nparams
    }

    pub fn nparams(&self) -> usize {
        self.nparams
    }

    pub fn z_vars(&self) -> &[String] {
        &self.vars[..self.nz()]
    }

    pub fn param_vars(&self) -> &[String] {
        &self.vars[self.nz()..]
    }

    pub fn var_index(&self, name: &str) -> Option<usize> {
        self.vars.iter().position(|v| v == name)
    }

    /// A fresh variable name based on `base` that does not clash with this ring.
    pub fn fresh_name(&self, base: &str) -> String {
        if self.var_index(base).is_none() {
            return base.to_string();
        }
        (0..)
            .map(|i| format!("{base}{i}"))
            .find(|n| self.var_index(n).is_none())
            .expect("infinitely many candidates")
    }

    /// The ring of `z`-variables only (parameters dropped).
    pub fn z_ring(&self) -> Arc<PolyRing> {
        Arc::new(PolyRing {
            vars: self.z_vars().to_vec(),
            field: self.field,
            nparams: 0,
        })
    }

    pub fn with_field(&self, field: FieldSpec) -> Arc<PolyRing> {
        Arc::new(PolyRing {
            vars: self.vars.clone(),
            field,
            nparams: self.nparams,
        })
    }
}

impl fmt::Display for PolyRing {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}[{}]", self.field, self.z_vars().join(","))?;
        if self.nparams > 0 {
            write!(f, " params[{}]", self.param_vars().join(","))?;
        }
        Ok(())
    }
}

/// A polynomial: terms sorted by descending degrevlex, no zero coefficients.
#[derive(Clone, Debug)]
pub struct Polynomial {
    ring: Arc<PolyRing>,
    terms: Vec<(Monomial, Coeff)>,
}

impl PartialEq for Polynomial {
    fn eq(&self, other: &Self) -> bool {
        (Arc::ptr_eq(&self.ring, &other.ring) || self.ring == other.ring) && self.terms == other.terms
    }
}

impl Eq for Polynomial {}

impl Polynomial {
    pub fn zero(ring: &Arc<PolyRing>) -> Self {
        Polynomial {
            ring: ring.clone(),
            terms: Vec::new(),
        }
    }

    pub fn constant(ring: &Arc<PolyRing>, c: Coeff) -> Self {
        Self::from_terms(ring, vec![(Monomial::one(ring.nvars()), c)])
    }

    pub fn one(ring: &Arc<PolyRing>) -> Self {
        Self::constant(ring, ring.field().one())
    }

    pub fn from_i64(ring: &Arc<PolyRing>, n: i64) -> Self {
        Self::constant(ring, ring.field().from_i64(n))
    }

    pub fn var(ring: &Arc<PolyRing>, i: usize) -> Self {
        Self::from_terms(
            ring,
            vec![(Monomial::var(ring.nvars(), i, 1), ring.field().one())],
        )
    }

    pub fn monomial(ring: &Arc<PolyRing>, m: Monomial, c: Coeff) -> Self {
        Self::from_terms(ring, vec![(m, c)])
    }

    /// Builds a canonical polynomial from arbitrary terms: like terms are
    /// combined, zeros dropped, and the result sorted.
    pub fn from_terms(ring: &Arc<PolyRing>, terms: Vec<(Monomial, Coeff)>) -> Self {
        let mut acc: HashMap<Monomial, Coeff> = HashMap::with_capacity(terms.len());
        for (m, c) in terms {
            debug_assert_eq!(m.nvars(), ring.nvars());
            match acc.get_mut(&m) {
                Some(existing) => *existing = existing.add(&c),
                None => {
                    acc.insert(m, c);
                }
            }
        }
        let mut terms: Vec<_> = acc.into_iter().filter(|(_, c)| !c.is_zero()).collect();
        terms.sort_by(|a, b| MonomialOrder::GlobalDegrevlex.compare(&b.0, &a.0));
        Polynomial {
            ring: ring.clone(),
            terms,
        }
    }

    /// Wraps terms that are already sorted (descending degrevlex) and nonzero.
    pub(crate) fn from_sorted_terms(ring: &Arc<PolyRing>, terms: Vec<(Monomial, Coeff)>) -> Self {
        debug_assert!(terms.iter().all(|(_, c)| !c.is_zero()));
        debug_assert!(terms
            .windows(2)
            .all(|w| MonomialOrder::GlobalDegrevlex.compare(&w[0].0, &w[1].0).is_gt()));
        Polynomial {
            ring: ring.clone(),
            terms,
        }
    }

    pub fn ring(&self) -> &Arc<PolyRing> {
        &self.ring
    }

    pub fn terms(&self) -> &[(Monomial, Coeff)] {
        &self.terms
    }

    pub fn into_terms(self) -> Vec<(Monomial, Coeff)> {
        self.terms
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_constant(&self) -> bool {
        self.terms.iter().all(|(m, _)| m.is_one())
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    /// Total degree; `None` for the zero polynomial.
    pub fn degree(&self) -> Option<u32> {
        self.terms.iter().map(|(m, _)| m.degree()).max()
    }

    /// Lowest total degree of a term; `None` for the zero polynomial.
    pub fn order(&self) -> Option<u32> {
        self.terms.iter().map(|(m, _)| m.degree()).min()
    }

    pub fn constant_term(&self) -> Coeff {
        self.terms
            .iter()
            .find(|(m, _)| m.is_one())
            .map(|(_, c)| c.clone())
            .unwrap_or_else(|| self.ring.field().zero())
    }

    pub fn vanishes_at_origin(&self) -> bool {
        self.constant_term().is_zero()
    }

    pub fn is_homogeneous(&self) -> bool {
        match (self.degree(), self.order()) {
            (Some(d), Some(o)) => d == o,
            _ => true,
        }
    }

    /// Sum of the terms of total degree `d`.
    pub fn homogeneous_part(&self, d: u32) -> Polynomial {
        Polynomial {
            ring: self.ring.clone(),
            terms: self
                .terms
                .iter()
                .filter(|(m, _)| m.degree() == d)
                .cloned()
                .collect(),
        }
    }

    /// Lowest-degree form (the initial form at the origin).
    pub fn initial_form(&self) -> Polynomial {
        match self.order() {
            Some(d) => self.homogeneous_part(d),
            None => self.clone(),
        }
    }

    fn check_ring(&self, other: &Polynomial) {
        assert!(
            Arc::ptr_eq(&self.ring, &other.ring) || self.ring == other.ring,
            "{}",
            Error::RingMismatch
        );
    }

    pub fn add(&self, other: &Polynomial) -> Polynomial {
        self.check_ring(other);
        let mut out = Vec::with_capacity(self.terms.len() + other.terms.len());
        let (mut i, mut j) = (0, 0);
        let order = MonomialOrder::GlobalDegrevlex;
        while i < self.terms.len() && j < other.terms.len() {
            let (a, b) = (&self.terms[i], &other.terms[j]);
            match order.compare(&a.0, &b.0) {
                std::cmp::Ordering::Greater => {
                    out.push(a.clone());
                    i += 1;
                }
                std::cmp::Ordering::Less => {
                    out.push(b.clone());
                    j += 1;
                }
                std::cmp::Ordering::Equal => {
                    let c = a.1.add(&b.1);
                    if !c.is_zero() {
                        out.push((a.0.clone(), c));
                    }
                    i += 1;
                    j += 1;
                }
            }
        }
        out.extend_from_slice(&self.terms[i..]);
        out.extend_from_slice(&other.terms[j..]);
        Polynomial::from_sorted_terms(&self.ring, out)
    }

    pub fn neg(&self) -> Polynomial {
        Polynomial {
            ring: self.ring.clone(),
            terms: self.terms.iter().map(|(m, c)| (m.clone(), c.neg())).collect(),
        }
    }

    pub fn sub(&self, other: &Polynomial) -> Polynomial {
        self.add(&other.neg())
    }

    pub fn scale(&self, c: &Coeff) -> Polynomial {
        if c.is_zero() {
            return Polynomial::zero(&self.ring);
        }
        Polynomial {
            ring: self.ring.clone(),
            terms: self.terms.iter().map(|(m, a)| (m.clone(), a.mul(c))).collect(),
        }
    }

    /// Multiplication by a monomial preserves the term order.
    pub fn mul_monomial(&self, m: &Monomial, c: &Coeff) -> Polynomial {
        if c.is_zero() {
            return Polynomial::zero(&self.ring);
        }
        Polynomial {
            ring: self.ring.clone(),
            terms: self
                .terms
                .iter()
                .map(|(n, a)| (n.mul(m), a.mul(c)))
                .collect(),
        }
    }

    pub fn mul(&self, other: &Polynomial) -> Polynomial {
        self.check_ring(other);
        if self.is_zero() || other.is_zero() {
            return Polynomial::zero(&self.ring);
        }
        let mut terms = Vec::with_capacity(self.terms.len() * other.terms.len());
        for (m, a) in &self.terms {
            for (n, b) in &other.terms {
                terms.push((m.mul(n), a.mul(b)));
            }
        }
        Polynomial::from_terms(&self.ring, terms)
    }

    pub fn pow(&self, e: u32) -> Polynomial {
        let mut acc = Polynomial::one(&self.ring);
        let mut base = self.clone();
        let mut e = e;
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.mul(&base);
            }
            e >>= 1;
            if e > 0 {
                base = base.mul(&base);
            }
        }
        acc
    }

    /// Leading coefficient with respect to degrevlex; `None` for zero.
    pub fn leading_coeff(&self) -> Option<&Coeff> {
        self.terms.first().map(|(_, c)| c)
    }

    /// Scales so that the degrevlex-leading coefficient is one.
    pub fn monic(&self) -> Polynomial {
        match self.leading_coeff() {
            Some(c) if !c.is_one() => self.scale(&c.inv()),
            _ => self.clone(),
        }
    }

    pub fn derivative(&self, var: usize) -> Polynomial {
        let field = self.ring.field();
        let terms = self
            .terms
            .iter()
            .filter(|(m, _)| m.exponent(var) > 0)
            .map(|(m, c)| {
                let e = m.exponent(var);
                let mut exps: Exponents = m.exps().into();
                exps[var] -= 1;
                (Monomial::new(exps), c.mul(&field.from_i64(e as i64)))
            })
            .collect();
        Polynomial::from_terms(&self.ring, terms)
    }

    /// Formal partial derivative with respect to a named variable.
    pub fn partial_derivative(&self, var: &str) -> Result<Polynomial> {
        let i = self.ring.var_index(var).ok_or_else(|| Error::UnknownVariable {
            name: var.to_string(),
            line: 0,
            column: 0,
        })?;
        Ok(self.derivative(i))
    }

    pub fn eval(&self, point: &[Coeff]) -> Coeff {
        assert_eq!(point.len(), self.ring.nvars());
        let mut acc = self.ring.field().zero();
        for (m, c) in &self.terms {
            let mut t = c.clone();
            for (x, &e) in point.iter().zip(m.exps()) {
                if e > 0 {
                    t = t.mul(&x.pow(e as u64));
                }
            }
            acc = acc.add(&t);
        }
        acc
    }

    /// Substitutes `images[i]` for variable `i`; all images live in `target`.
    pub fn substitute(&self, target: &Arc<PolyRing>, images: &[Polynomial]) -> Polynomial {
        assert_eq!(images.len(), self.ring.nvars());
        let mut power_cache: HashMap<(usize, u16), Polynomial> = HashMap::new();
        let mut acc = Polynomial::zero(target);
        for (m, c) in &self.terms {
            let mut t = Polynomial::constant(target, c.clone());
            for (i, &e) in m.exps().iter().enumerate() {
                if e == 0 {
                    continue;
                }
                let p = power_cache
                    .entry((i, e))
                    .or_insert_with(|| images[i].pow(e as u32));
                t = t.mul(p);
            }
            acc = acc.add(&t);
        }
        acc
    }

    /// Re-embeds into a ring whose variable `i` is `map[i]` of the target
    /// (variables must not be dropped: use `project` for that).
    pub fn embed(&self, target: &Arc<PolyRing>, map: &[usize]) -> Polynomial {
        assert_eq!(map.len(), self.ring.nvars());
        let terms = self
            .terms
            .iter()
            .map(|(m, c)| {
                let mut exps: Exponents = smallvec::smallvec![0; target.nvars()];
                for (i, &e) in m.exps().iter().enumerate() {
                    exps[map[i]] += e;
                }
                (Monomial::new(exps), c.clone())
            })
            .collect();
        Polynomial::from_terms(target, terms)
    }

    /// Drops variables not listed in `keep`; `keep[j]` is the source index of
    /// target variable `j`. Returns `None` if a dropped variable occurs.
    pub fn project(&self, target: &Arc<PolyRing>, keep: &[usize]) -> Option<Polynomial> {
        let mut terms = Vec::with_capacity(self.terms.len());
        for (m, c) in &self.terms {
            let kept: u32 = keep.iter().map(|&i| m.exponent(i) as u32).sum();
            if kept != m.degree() {
                return None;
            }
            let exps: Exponents = keep.iter().map(|&i| m.exponent(i)).collect();
            terms.push((Monomial::new(exps), c.clone()));
        }
        Some(Polynomial::from_terms(target, terms))
    }

    /// Whether variable `i` occurs in some term.
    pub fn involves(&self, i: usize) -> bool {
        self.terms.iter().any(|(m, _)| m.exponent(i) > 0)
    }

    /// Exact division; `None` if `divisor` does not divide `self`.
    pub fn div_exact(&self, divisor: &Polynomial) -> Option<Polynomial> {
        self.check_ring(divisor);
        let (lm, lc) = divisor.terms.first()?;
        let lc_inv = lc.inv();
        let mut rem = self.clone();
        let mut quot = Vec::new();
        while let Some((m, c)) = rem.terms.first() {
            if !lm.divides(m) {
                return None;
            }
            let q = lm.quotient_of(m);
            let qc = c.mul(&lc_inv);
            rem = rem.sub(&divisor.mul_monomial(&q, &qc));
            quot.push((q, qc));
        }
        Some(Polynomial::from_terms(&self.ring, quot))
    }
}

impl fmt::Display for Polynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        let names = self.ring.vars();
        for (k, (m, c)) in self.terms.iter().enumerate() {
            let neg = c.is_negative();
            let abs = if neg { c.neg() } else { c.clone() };
            if k == 0 {
                if neg {
                    f.write_str("-")?;
                }
            } else {
                f.write_str(if neg { " - " } else { " + " })?;
            }
            if m.is_one() {
                write!(f, "{abs}")?;
            } else {
                if !abs.is_one() {
                    write!(f, "{abs}*")?;
                }
                m.write_with(names, f)?;
            }
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ring::parse_polynomial;

    fn ring() -> Arc<PolyRing> {
        PolyRing::new(&["x", "y", "z"], FieldSpec::Rationals).unwrap()
    }

    #[test]
    fn derivatives() {
        let r = ring();
        let f = parse_polynomial("x^2 - y^3", &r).unwrap();
        assert_eq!(f.partial_derivative("x").unwrap().to_string(), "2*x");
        assert_eq!(f.partial_derivative("y").unwrap().to_string(), "-3*y^2");
        let g = parse_polynomial("x^2", &r).unwrap();
        assert!(g.partial_derivative("z").unwrap().is_zero());
        assert!(g.partial_derivative("w").is_err());
    }

    #[test]
    fn display_is_degrevlex_descending() {
        let r = ring();
        let f = parse_polynomial("1 + z + y^2 + x*y - 2*x^2/3", &r).unwrap();
        assert_eq!(f.to_string(), "-2/3*x^2 + x*y + y^2 + z + 1");
    }

    #[test]
    fn exact_division() {
        let r = ring();
        let f = parse_polynomial("x^3 - x*y^2", &r).unwrap();
        let g = parse_polynomial("x + y", &r).unwrap();
        let q = f.div_exact(&g).unwrap();
        assert_eq!(q, parse_polynomial("x^2 - x*y", &r).unwrap());
        assert!(f.div_exact(&parse_polynomial("x + z", &r).unwrap()).is_none());
    }

    #[test]
    fn initial_form_and_homogeneity() {
        let r = ring();
        let f = parse_polynomial("y^2 - x^2 - x^3", &r).unwrap();
        assert_eq!(f.initial_form(), parse_polynomial("y^2 - x^2", &r).unwrap());
        assert!(!f.is_homogeneous());
        assert!(f.initial_form().is_homogeneous());
    }

    #[test]
    fn duplicate_variables_rejected() {
        assert!(PolyRing::new(&["x", "x"], FieldSpec::Rationals).is_err());
        assert!(PolyRing::with_params(&["x"], &["x"], FieldSpec::Rationals).is_err());
    }
}
