//! Working polynomial representation: terms sorted descending in an
//! arbitrary monomial order.

use std::cmp::Ordering;
use std::sync::Arc;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::ring::{Coeff, Monomial, MonomialOrder, PolyRing, Polynomial};

#[derive(Clone, Debug, PartialEq, Eq)]
pub(crate) struct WPoly {
    pub(crate) terms: Vec<(Monomial, Coeff)>,
    maxdeg: u32,
}

impl WPoly {
    pub(crate) fn from_terms_sorted(terms: Vec<(Monomial, Coeff)>) -> Self {
        let maxdeg = terms.iter().map(|(m, _)| m.degree()).max().unwrap_or(0);
        WPoly { terms, maxdeg }
    }

    pub(crate) fn from_poly(p: &Polynomial, order: MonomialOrder) -> Self {
        let mut terms = p.terms().to_vec();
        if order != MonomialOrder::GlobalDegrevlex {
            terms.sort_by(|a, b| order.compare(&b.0, &a.0));
        }
        Self::from_terms_sorted(terms)
    }

    pub(crate) fn to_poly(&self, ring: &Arc<PolyRing>) -> Polynomial {
        Polynomial::from_terms(ring, self.terms.clone())
    }

    pub(crate) fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub(crate) fn lm(&self) -> &Monomial {
        &self.terms[0].0
    }

    pub(crate) fn lc(&self) -> &Coeff {
        &self.terms[0].1
    }

    pub(crate) fn maxdeg(&self) -> u32 {
        self.maxdeg
    }

    /// Total degree minus degree of the leading monomial.
    pub(crate) fn ecart(&self) -> u32 {
        self.maxdeg - self.lm().degree()
    }

    pub(crate) fn make_monic(&mut self) {
        if self.terms.is_empty() || self.lc().is_one() {
            return;
        }
        let inv = self.lc().inv();
        for (_, c) in &mut self.terms {
            *c = c.mul(&inv);
        }
    }

    /// `self - c * m * g`, merged in `order`.
    pub(crate) fn sub_mul(&mut self, c: &Coeff, m: &Monomial, g: &WPoly, order: MonomialOrder) {
        self.merge(None, c, m, g, order);
    }

    /// `s * self - c * m * g`.
    fn sub_mul_scaled(&mut self, s: &Coeff, c: &Coeff, m: &Monomial, g: &WPoly, order: MonomialOrder) {
        let s = (!s.is_one()).then_some(s);
        self.merge(s, c, m, g, order);
    }

    fn merge(
        &mut self,
        s: Option<&Coeff>,
        c: &Coeff,
        m: &Monomial,
        g: &WPoly,
        order: MonomialOrder,
    ) {
        let mut out = Vec::with_capacity(self.terms.len() + g.terms.len());
        let mut a = std::mem::take(&mut self.terms)
            .into_iter()
            .map(|(n, d)| match s {
                Some(s) => (n, d.mul(s)),
                None => (n, d),
            })
            .peekable();
        let mut b = g.terms.iter().map(|(n, d)| (n.mul(m), d.mul(c))).peekable();
        loop {
            let ord = match (a.peek(), b.peek()) {
                (Some(x), Some(y)) => order.compare(&x.0, &y.0),
                (Some(_), None) => Ordering::Greater,
                (None, Some(_)) => Ordering::Less,
                (None, None) => break,
            };
            match ord {
                Ordering::Greater => out.push(a.next().unwrap()),
                Ordering::Less => {
                    let (n, d) = b.next().unwrap();
                    out.push((n, d.neg()));
                }
                Ordering::Equal => {
                    let (n, x) = a.next().unwrap();
                    let (_, y) = b.next().unwrap();
                    let v = x.sub(&y);
                    if !v.is_zero() {
                        out.push((n, v));
                    }
                }
            }
        }
        *self = WPoly::from_terms_sorted(out);
    }

    fn is_rational(&self) -> bool {
        matches!(self.terms.first(), Some((_, Coeff::Q(_))))
    }

    /// Over `Q`: integer coefficients without common factor and a positive
    /// leading coefficient. Over `F_p`: monic.
    pub(crate) fn normalize(&mut self) {
        if self.terms.is_empty() {
            return;
        }
        if !self.is_rational() {
            self.make_monic();
            return;
        }
        let mut den = BigInt::one();
        for (_, c) in &self.terms {
            if let Coeff::Q(q) = c {
                if !q.denom().is_one() {
                    den = den.lcm(q.denom());
                }
            }
        }
        let mut ints: Vec<BigInt> = self
            .terms
            .iter()
            .map(|(_, c)| match c {
                Coeff::Q(q) => q.numer() * (&den / q.denom()),
                Coeff::Fp { .. } => unreachable!("mixed coefficient fields"),
            })
            .collect();
        let mut content = BigInt::zero();
        for v in &ints {
            content = content.gcd(v);
            if content.is_one() {
                break;
            }
        }
        if ints[0].is_negative() {
            content = -content;
        }
        if !content.is_one() {
            for v in &mut ints {
                *v = &*v / &content;
            }
        }
        for ((_, c), v) in self.terms.iter_mut().zip(ints) {
            *c = Coeff::Q(BigRational::from_integer(v));
        }
    }

    /// Cancels the leading term of `self` against `g` (whose leading monomial
    /// must divide it). With `exact` the result is `self - c·m·g`; otherwise,
    /// over `Q`, `self` may first be multiplied by a nonzero integer so that
    /// integral inputs stay integral.
    /// Returns the factor `self` was multiplied by, when it is not one.
    pub(crate) fn reduce_lead(
        &mut self,
        g: &WPoly,
        order: MonomialOrder,
        exact: bool,
    ) -> Option<Coeff> {
        let m = g.lm().quotient_of(self.lm());
        if !exact {
            if let (Coeff::Q(a), Coeff::Q(b)) = (self.lc(), g.lc()) {
                if a.is_integer() && b.is_integer() {
                    let (a, b) = (a.numer(), b.numer());
                    let d = a.gcd(b);
                    let sa = Coeff::Q(BigRational::from_integer(b / &d));
                    let sb = Coeff::Q(BigRational::from_integer(a / &d));
                    self.sub_mul_scaled(&sa, &sb, &m, g, order);
                    return (!sa.is_one()).then_some(sa);
                }
            }
        }
        let c = self.lc().div(g.lc());
        self.sub_mul(&c, &m, g, order);
        None
    }

    /// The S-polynomial, up to a nonzero constant factor.
    pub(crate) fn s_poly(f: &WPoly, g: &WPoly, order: MonomialOrder) -> WPoly {
        let l = f.lm().lcm(g.lm());
        let mf = f.lm().quotient_of(&l);
        let mg = g.lm().quotient_of(&l);
        let (cf, cg) = match (f.lc(), g.lc()) {
            (Coeff::Q(a), Coeff::Q(b)) if a.is_integer() && b.is_integer() => {
                let d = a.numer().gcd(b.numer());
                (
                    Coeff::Q(BigRational::from_integer(b.numer() / &d)),
                    Coeff::Q(BigRational::from_integer(a.numer() / &d)),
                )
            }
            _ => (f.lc().inv(), g.lc().inv()),
        };
        let mut a = WPoly::from_terms_sorted(
            f.terms
                .iter()
                .map(|(n, c)| (n.mul(&mf), c.mul(&cf)))
                .collect(),
        );
        a.sub_mul(&cg, &mg, g, order);
        a
    }
}
