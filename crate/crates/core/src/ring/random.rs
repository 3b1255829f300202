//! Seeded randomness standing in for Zariski-generic choices.

use std::sync::Arc;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::error::{Error, Result};

use super::field::Coeff;
use super::poly::{PolyRing, Polynomial};

pub const DEFAULT_COEFFICIENT_RANGE: i64 = 10_000;
const MAX_RETRIES: usize = 64;

/// A reproducible stream of nonzero integers in `[-range, range]`.
#[derive(Clone, Debug)]
pub struct RandomSource {
    seed: u64,
    range: i64,
    rng: ChaCha8Rng,
}

impl RandomSource {
    pub fn new(seed: u64) -> Self {
        Self::with_range(seed, DEFAULT_COEFFICIENT_RANGE)
    }

    pub fn with_range(seed: u64, range: i64) -> Self {
        assert!(range >= 1, "coefficient range must be positive");
        RandomSource {
            seed,
            range,
            rng: ChaCha8Rng::seed_from_u64(seed),
        }
    }

    pub fn seed(&self) -> u64 {
        self.seed
    }

    pub fn range(&self) -> i64 {
        self.range
    }

    pub fn draw(&mut self) -> i64 {
        loop {
            let v = self.rng.gen_range(-self.range..=self.range);
            if v != 0 {
                return v;
            }
        }
    }

    /// An independent stream derived from this one (used to give each
    /// sub-computation its own reproducible randomness).
    pub fn fork(&mut self) -> RandomSource {
        let seed = self.rng.gen::<u64>();
        RandomSource::with_range(seed, self.range)
    }
}

/// Rank of a matrix over the coefficient field (Gaussian elimination).
pub fn rank(rows: &[Vec<Coeff>]) -> usize {
    let mut m: Vec<Vec<Coeff>> = rows.to_vec();
    let ncols = m.first().map_or(0, Vec::len);
    let mut r = 0;
    for c in 0..ncols {
        let Some(piv) = (r..m.len()).find(|&i| !m[i][c].is_zero()) else {
            continue;
        };
        m.swap(r, piv);
        let inv = m[r][c].inv();
        for i in r + 1..m.len() {
            if m[i][c].is_zero() {
                continue;
            }
            let factor = m[i][c].mul(&inv);
            for j in c..ncols {
                let v = m[i][j].sub(&factor.mul(&m[r][j]));
                m[i][j] = v;
            }
        }
        r += 1;
        if r == m.len() {
            break;
        }
    }
    r
}

fn draw_matrix(
    rows: usize,
    cols: usize,
    ring: &PolyRing,
    rng: &mut RandomSource,
    what: &str,
) -> Result<Vec<Vec<Coeff>>> {
    let field = ring.field();
    let want = rows.min(cols);
    for _ in 0..MAX_RETRIES {
        let m: Vec<Vec<Coeff>> = (0..rows)
            .map(|_| (0..cols).map(|_| field.from_i64(rng.draw())).collect())
            .collect();
        if rank(&m) == want {
            return Ok(m);
        }
    }
    Err(Error::RetryBudgetExhausted(format!(
        "no full-rank {rows}x{cols} {what} after {MAX_RETRIES} draws"
    )))
}

/// `count` random linear combinations of `gens` whose coefficient matrix has
/// maximal rank.
pub fn random_combinations(
    gens: &[Polynomial],
    count: usize,
    rng: &mut RandomSource,
) -> Result<Vec<Polynomial>> {
    let first = gens
        .first()
        .ok_or_else(|| Error::InvalidArgument("no generators to combine".into()))?;
    if count == 0 {
        return Err(Error::InvalidArgument("combination count must be positive".into()));
    }
    let ring = first.ring().clone();
    let matrix = draw_matrix(count, gens.len(), &ring, rng, "combination matrix")?;
    Ok(matrix
        .iter()
        .map(|row| {
            row.iter()
                .zip(gens)
                .fold(Polynomial::zero(&ring), |acc, (c, g)| acc.add(&g.scale(c)))
        })
        .collect())
}

/// A linear embedding `z = A·s` of a fresh `k`-dimensional coordinate space
/// into the `z`-space of a ring; parameters are carried along unchanged.
#[derive(Clone, Debug)]
pub struct LinearSubspace {
    source: Arc<PolyRing>,
    target: Arc<PolyRing>,
    images: Vec<Polynomial>,
    matrix: Vec<Vec<Coeff>>,
}

impl LinearSubspace {
    /// A random full-rank `nz × k` embedding.
    pub fn generic(ring: &Arc<PolyRing>, k: usize, rng: &mut RandomSource) -> Result<Self> {
        let nz = ring.nz();
        if k == 0 || k > nz {
            return Err(Error::InvalidArgument(format!(
                "subspace dimension {k} must lie in 1..={nz}"
            )));
        }
        let matrix = draw_matrix(nz, k, ring, rng, "subspace matrix")?;
        Self::from_matrix(ring, matrix)
    }

    /// Embedding with an explicit `nz × k` matrix (must have rank `k`).
    pub fn from_matrix(ring: &Arc<PolyRing>, matrix: Vec<Vec<Coeff>>) -> Result<Self> {
        let nz = ring.nz();
        let k = matrix.first().map_or(0, Vec::len);
        if matrix.len() != nz || k == 0 || matrix.iter().any(|r| r.len() != k) {
            return Err(Error::InvalidArgument("subspace matrix has wrong shape".into()));
        }
        if rank(&matrix) != k {
            return Err(Error::InvalidArgument("subspace matrix is rank deficient".into()));
        }
        let mut names = Vec::with_capacity(k);
        for j in 1..=k {
            let mut name = format!("s{j}");
            while ring.param_vars().contains(&name) {
                name.push('_');
            }
            names.push(name);
        }
        let target = PolyRing::with_params(&names, ring.param_vars(), ring.field())?;
        let mut images = Vec::with_capacity(ring.nvars());
        for row in &matrix {
            let mut img = Polynomial::zero(&target);
            for (j, c) in row.iter().enumerate() {
                img = img.add(&Polynomial::var(&target, j).scale(c));
            }
            images.push(img);
        }
        for p in 0..ring.nparams() {
            images.push(Polynomial::var(&target, k + p));
        }
        Ok(LinearSubspace {
            source: ring.clone(),
            target,
            images,
            matrix,
        })
    }

    pub fn target(&self) -> &Arc<PolyRing> {
        &self.target
    }

    pub fn matrix(&self) -> &[Vec<Coeff>] {
        &self.matrix
    }

    pub fn restrict(&self, f: &Polynomial) -> Polynomial {
        assert!(**f.ring() == *self.source, "{}", Error::RingMismatch);
        f.substitute(&self.target, &self.images)
    }
}

/// Restricts polynomials to a generic `k`-dimensional linear subspace through
/// the origin, all with the same subspace.
pub fn restrict_to_generic_subspace(
    polys: &[Polynomial],
    k: usize,
    rng: &mut RandomSource,
) -> Result<(LinearSubspace, Vec<Polynomial>)> {
    let ring = polys
        .first()
        .ok_or_else(|| Error::InvalidArgument("nothing to restrict".into()))?
        .ring()
        .clone();
    let sub = LinearSubspace::generic(&ring, k, rng)?;
    let out = polys.iter().map(|f| sub.restrict(f)).collect();
    Ok((sub, out))
}
