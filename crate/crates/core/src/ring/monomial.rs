//! Monomials and monomial orders.

use std::cmp::Ordering;
use std::fmt;

use serde::Serialize;
use smallvec::SmallVec;

pub type Exponents = SmallVec<[u16; 8]>;

/// Exponent vector together with its cached total degree.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Monomial {
    exps: Exponents,
    deg: u32,
}

impl Monomial {
    pub fn new(exps: impl Into<Exponents>) -> Self {
        let exps = exps.into();
        let deg = exps.iter().map(|&e| e as u32).sum();
        Monomial { exps, deg }
    }

    pub fn one(nvars: usize) -> Self {
        Monomial {
            exps: SmallVec::from_elem(0, nvars),
            deg: 0,
        }
    }

    pub fn var(nvars: usize, i: usize, e: u16) -> Self {
        let mut m = Self::one(nvars);
        m.exps[i] = e;
        m.deg = e as u32;
        m
    }

    pub fn exps(&self) -> &[u16] {
        &self.exps
    }

    pub fn nvars(&self) -> usize {
        self.exps.len()
    }

    pub fn degree(&self) -> u32 {
        self.deg
    }

    pub fn is_one(&self) -> bool {
        self.deg == 0
    }

    pub fn mul(&self, other: &Monomial) -> Monomial {
        debug_assert_eq!(self.nvars(), other.nvars());
        Monomial {
            exps: self
                .exps
                .iter()
                .zip(&other.exps)
                .map(|(a, b)| a + b)
                .collect(),
            deg: self.deg + other.deg,
        }
    }

    pub fn divides(&self, other: &Monomial) -> bool {
        self.deg <= other.deg && self.exps.iter().zip(&other.exps).all(|(a, b)| a <= b)
    }

    /// `other / self`, assuming `self` divides `other`.
    pub fn quotient_of(&self, other: &Monomial) -> Monomial {
        debug_assert!(self.divides(other));
        Monomial {
            exps: other.exps.iter().zip(&self.exps).map(|(a, b)| a - b).collect(),
            deg: other.deg - self.deg,
        }
    }

    pub fn lcm(&self, other: &Monomial) -> Monomial {
        Monomial::new(
            self.exps
                .iter()
                .zip(&other.exps)
                .map(|(a, b)| *a.max(b))
                .collect::<Exponents>(),
        )
    }

    pub fn is_coprime(&self, other: &Monomial) -> bool {
        self.exps
            .iter()
            .zip(&other.exps)
            .all(|(a, b)| *a == 0 || *b == 0)
    }

    /// Monomial with variable `i` removed from the support (exponent set to zero).
    pub fn without_var(&self, i: usize) -> Monomial {
        let mut exps = self.exps.clone();
        exps[i] = 0;
        Monomial::new(exps)
    }

    pub fn exponent(&self, i: usize) -> u16 {
        self.exps[i]
    }

    pub(crate) fn write_with(&self, names: &[String], f: &mut impl fmt::Write) -> fmt::Result {
        let mut first = true;
        for (e, name) in self.exps.iter().zip(names) {
            if *e == 0 {
                continue;
            }
            if !first {
                f.write_char('*')?;
            }
            first = false;
            if *e == 1 {
                write!(f, "{name}")?;
            } else {
                write!(f, "{name}^{e}")?;
            }
        }
        if first {
            f.write_char('1')?;
        }
        Ok(())
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum MonomialOrder {
    /// Global degree reverse lexicographic order.
    GlobalDegrevlex,
    /// Local order: lower total degree is larger, ties broken as in degrevlex.
    /// The leading term of a unit is its constant term.
    LocalNegDegrevlex,
    /// Global block order eliminating the variables in the bit mask: the
    /// masked block is compared first (degrevlex), the rest breaks ties.
    Elimination { mask: u64 },
}

impl MonomialOrder {
    pub fn is_global(&self) -> bool {
        !matches!(self, MonomialOrder::LocalNegDegrevlex)
    }

    pub fn compare(&self, a: &Monomial, b: &Monomial) -> Ordering {
        match *self {
            MonomialOrder::GlobalDegrevlex => degrevlex(a, b),
            MonomialOrder::LocalNegDegrevlex => b
                .deg
                .cmp(&a.deg)
                .then_with(|| revlex_tiebreak(a.exps(), b.exps())),
            MonomialOrder::Elimination { mask } => {
                let block = |m: &Monomial| -> u32 {
                    m.exps
                        .iter()
                        .enumerate()
                        .filter(|(i, _)| mask >> i & 1 == 1)
                        .map(|(_, &e)| e as u32)
                        .sum()
                };
                let (ba, bb) = (block(a), block(b));
                ba.cmp(&bb)
                    .then_with(|| {
                        let pick = |m: &Monomial| -> Exponents {
                            m.exps
                                .iter()
                                .enumerate()
                                .map(|(i, &e)| if mask >> i & 1 == 1 { e } else { 0 })
                                .collect()
                        };
                        revlex_tiebreak(&pick(a), &pick(b))
                    })
                    .then_with(|| degrevlex(a, b))
            }
        }
    }
}

impl fmt::Display for MonomialOrder {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            MonomialOrder::GlobalDegrevlex => write!(f, "degrevlex"),
            MonomialOrder::LocalNegDegrevlex => write!(f, "negdegrevlex"),
            MonomialOrder::Elimination { mask } => write!(f, "elimination({mask:#x})"),
        }
    }
}

fn degrevlex(a: &Monomial, b: &Monomial) -> Ordering {
    a.deg
        .cmp(&b.deg)
        .then_with(|| revlex_tiebreak(a.exps(), b.exps()))
}

/// Among equal degrees: the monomial with the smaller exponent in the last
/// differing variable is larger.
fn revlex_tiebreak(a: &[u16], b: &[u16]) -> Ordering {
    for (x, y) in a.iter().zip(b).rev() {
        if x != y {
            return y.cmp(x);
        }
    }
    Ordering::Equal
}
