//! Sequential pair-update sweeps.
//!
//! A sweep applies the 2x2 update
//!
//! ```text
//! u_j'     = alpha * u_j + lambda * u_{j+1}
//! u_{j+1}' = beta  * u_j + alpha  * u_{j+1}
//! ```
//!
//! to every neighbor pair of a periodic grid, one pair at a time, so each
//! sample is touched twice. Ascending order visits `(0,1), (1,2), ...,
//! (N-1,0)`; descending order visits the same pairs in reverse, starting with
//! the wrap pair. Unrolled, the interior of an ascending sweep is the
//! Saul'yev recurrence `u_j' = beta u'_{j-1} + gamma u_j + lambda u_{j+1}`
//! with `gamma = alpha^2 - beta lambda`; the classic fixed-boundary form of
//! that recurrence is kept here as an independent cross-check.

use crate::error::{Error, Result};
use crate::grid::{BoundaryKind, Field1D};

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PairUpdate {
    pub alpha: f64,
    pub beta: f64,
    pub lambda: f64,
}

impl PairUpdate {
    pub const IDENTITY: PairUpdate = PairUpdate { alpha: 1.0, beta: 0.0, lambda: 0.0 };

    pub fn new(alpha: f64, beta: f64, lambda: f64) -> Result<Self> {
        let u = Self { alpha, beta, lambda };
        if !(alpha.is_finite() && beta.is_finite() && lambda.is_finite() && u.gamma().is_finite()) {
            return Err(Error::InvalidCoefficient(format!("non-finite pair update {u:?}")));
        }
        Ok(u)
    }

    /// Determinant of the update matrix.
    #[inline]
    pub fn gamma(&self) -> f64 {
        self.alpha * self.alpha - self.beta * self.lambda
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum SweepDirection {
    /// Left to right, wrap pair last.
    Ascending,
    /// Right to left, wrap pair first.
    Descending,
}

impl SweepDirection {
    pub fn reversed(self) -> Self {
        match self {
            SweepDirection::Ascending => SweepDirection::Descending,
            SweepDirection::Descending => SweepDirection::Ascending,
        }
    }
}

#[inline(always)]
fn apply_pair(u: &mut [f64], j: usize, k: usize, p: &PairUpdate) {
    let a = u[j];
    let b = u[k];
    u[j] = p.alpha * a + p.lambda * b;
    u[k] = p.beta * a + p.alpha * b;
}

/// Periodic sweep, in place.
pub fn sweep(f: &mut Field1D, update: &PairUpdate, dir: SweepDirection) -> Result<()> {
    if f.boundary() != BoundaryKind::Periodic {
        return Err(Error::BoundaryKind {
            expected: BoundaryKind::Periodic,
            got: f.boundary(),
        });
    }
    sweep_slice(f.values_mut(), update, dir)
}

/// Periodic sweep on raw samples. Used where a field wrapper is not needed
/// (complex-mode probes, dense-matrix oracles).
pub fn sweep_slice(u: &mut [f64], p: &PairUpdate, dir: SweepDirection) -> Result<()> {
    let n = u.len();
    if n < 3 {
        return Err(Error::Size { got: n, min: 3, max: usize::MAX });
    }
    match dir {
        SweepDirection::Ascending => {
            for j in 0..n - 1 {
                apply_pair(u, j, j + 1, p);
            }
            apply_pair(u, n - 1, 0, p);
        }
        SweepDirection::Descending => {
            apply_pair(u, n - 1, 0, p);
            for j in (0..n - 1).rev() {
                apply_pair(u, j, j + 1, p);
            }
        }
    }
    Ok(())
}

/// Saul'yev recurrence on a fixed-end grid. Ascending evaluates
/// `u_j' = beta u'_{j-1} + gamma u_j + lambda u_{j+1}` left to right,
/// descending evaluates `u_j' = beta u_{j-1} + gamma u_j + lambda u'_{j+1}`
/// right to left. End samples are never touched.
pub fn saulyev_sweep_fixed(
    f: &mut Field1D,
    gamma: f64,
    beta: f64,
    lambda: f64,
    dir: SweepDirection,
) -> Result<()> {
    if f.boundary() != BoundaryKind::FixedEnds {
        return Err(Error::BoundaryKind {
            expected: BoundaryKind::FixedEnds,
            got: f.boundary(),
        });
    }
    let u = f.values_mut();
    let n = u.len();
    match dir {
        SweepDirection::Ascending => {
            for j in 1..n - 1 {
                u[j] = beta * u[j - 1] + gamma * u[j] + lambda * u[j + 1];
            }
        }
        SweepDirection::Descending => {
            for j in (1..n - 1).rev() {
                u[j] = beta * u[j - 1] + gamma * u[j] + lambda * u[j + 1];
            }
        }
    }
    Ok(())
}

/// Row-major dense square matrix; only used at oracle scale.
#[derive(Debug, Clone, PartialEq)]
pub struct DenseMatrix {
    n: usize,
    data: Vec<f64>,
}

impl DenseMatrix {
    pub fn zeros(n: usize) -> Self {
        Self { n, data: vec![0.0; n * n] }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n);
        for i in 0..n {
            m[(i, i)] = 1.0;
        }
        m
    }

    pub fn dim(&self) -> usize {
        self.n
    }

    pub fn matmul(&self, rhs: &DenseMatrix) -> DenseMatrix {
        assert_eq!(self.n, rhs.n, "dimension mismatch");
        let n = self.n;
        let mut out = DenseMatrix::zeros(n);
        for i in 0..n {
            for k in 0..n {
                let a = self[(i, k)];
                if a == 0.0 {
                    continue;
                }
                for j in 0..n {
                    out.data[i * n + j] += a * rhs.data[k * n + j];
                }
            }
        }
        out
    }

    pub fn transpose(&self) -> DenseMatrix {
        let n = self.n;
        let mut out = DenseMatrix::zeros(n);
        for i in 0..n {
            for j in 0..n {
                out[(j, i)] = self[(i, j)];
            }
        }
        out
    }

    pub fn mul_vec(&self, v: &[f64]) -> Vec<f64> {
        assert_eq!(self.n, v.len(), "dimension mismatch");
        (0..self.n)
            .map(|i| (0..self.n).map(|j| self[(i, j)] * v[j]).sum())
            .collect()
    }

    pub fn max_abs_diff(&self, other: &DenseMatrix) -> f64 {
        self.data
            .iter()
            .zip(&other.data)
            .fold(0.0_f64, |m, (a, b)| m.max((a - b).abs()))
    }
}

impl std::ops::Index<(usize, usize)> for DenseMatrix {
    type Output = f64;
    fn index(&self, (i, j): (usize, usize)) -> &f64 {
        &self.data[i * self.n + j]
    }
}

impl std::ops::IndexMut<(usize, usize)> for DenseMatrix {
    fn index_mut(&mut self, (i, j): (usize, usize)) -> &mut f64 {
        &mut self.data[i * self.n + j]
    }
}

pub const ORACLE_MAX_POINTS: usize = 64;

/// The N x N identity with the pair update embedded at rows/columns `(j, k)`.
pub fn embedded_factor(update: &PairUpdate, j: usize, k: usize, n: usize) -> DenseMatrix {
    let mut m = DenseMatrix::identity(n);
    m[(j, j)] = update.alpha;
    m[(j, k)] = update.lambda;
    m[(k, j)] = update.beta;
    m[(k, k)] = update.alpha;
    m
}

/// Explicit product of the N embedded factors in sweep order.
pub fn sweep_as_matrix(update: &PairUpdate, dir: SweepDirection, n: usize) -> Result<DenseMatrix> {
    if !(3..=ORACLE_MAX_POINTS).contains(&n) {
        return Err(Error::Size { got: n, min: 3, max: ORACLE_MAX_POINTS });
    }
    let mut pairs: Vec<(usize, usize)> = (0..n).map(|j| (j, (j + 1) % n)).collect();
    if dir == SweepDirection::Descending {
        pairs.reverse();
    }
    // later factors multiply from the left
    Ok(pairs
        .into_iter()
        .fold(DenseMatrix::identity(n), |acc, (j, k)| embedded_factor(update, j, k, n).matmul(&acc)))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::grid::norm;
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    fn periodic(values: Vec<f64>) -> Field1D {
        Field1D::new(values, 0.1, 0.0, BoundaryKind::Periodic).unwrap()
    }

    fn diffusion_pair(gamma: f64) -> PairUpdate {
        PairUpdate::new(0.5 * (1.0 + gamma), 0.5 * (1.0 - gamma), 0.5 * (1.0 - gamma)).unwrap()
    }

    fn rotation(s: f64) -> PairUpdate {
        PairUpdate::new((1.0 - s * s).sqrt(), s, -s).unwrap()
    }

    fn random_update(rng: &mut ChaCha8Rng) -> PairUpdate {
        match rng.gen_range(0..3) {
            0 => diffusion_pair(rng.gen_range(-0.99..1.0)),
            1 => rotation(rng.gen_range(-0.95..0.95)),
            _ => PairUpdate::new(rng.gen_range(0.2..1.0), rng.gen_range(-0.5..0.5), rng.gen_range(-0.5..0.5)).unwrap(),
        }
    }

    #[test]
    fn identity_update_is_noop() {
        let mut f = periodic(vec![1.0, -2.0, 3.5, 0.25]);
        let before = f.clone();
        sweep(&mut f, &PairUpdate::IDENTITY, SweepDirection::Ascending).unwrap();
        sweep(&mut f, &PairUpdate::IDENTITY, SweepDirection::Descending).unwrap();
        assert_eq!(f, before);
    }

    #[test]
    fn rejects_small_and_fixed_grids() {
        let mut u = [1.0, 2.0];
        assert!(matches!(sweep_slice(&mut u, &PairUpdate::IDENTITY, SweepDirection::Ascending), Err(Error::Size { .. })));
        let mut fixed = Field1D::new(vec![0.0; 5], 0.1, 0.0, BoundaryKind::FixedEnds).unwrap();
        assert!(matches!(sweep(&mut fixed, &PairUpdate::IDENTITY, SweepDirection::Ascending), Err(Error::BoundaryKind { .. })));
        let mut per = periodic(vec![0.0; 5]);
        assert!(matches!(saulyev_sweep_fixed(&mut per, 1.0, 0.0, 0.0, SweepDirection::Ascending), Err(Error::BoundaryKind { .. })));
        assert!(sweep_as_matrix(&PairUpdate::IDENTITY, SweepDirection::Ascending, 2).is_err());
        assert!(sweep_as_matrix(&PairUpdate::IDENTITY, SweepDirection::Ascending, 65).is_err());
    }

    #[test]
    fn diffusion_sweep_conserves_norm() {
        let mut rng = ChaCha8Rng::seed_from_u64(7);
        for _ in 0..50 {
            let n = rng.gen_range(3..40);
            let mut f = periodic((0..n).map(|_| rng.gen_range(-1.0..1.0)).collect());
            let p = diffusion_pair(rng.gen_range(0.0..1.0));
            let before = norm(&f);
            let scale: f64 = f.values().iter().map(|v| v.abs()).sum();
            let dir = if rng.gen() { SweepDirection::Ascending } else { SweepDirection::Descending };
            sweep(&mut f, &p, dir).unwrap();
            assert!((norm(&f) - before).abs() <= 1e-13 * scale.max(1.0));
        }
    }

    #[test]
    fn sweep_matches_dense_product_n8() {
        let mut rng = ChaCha8Rng::seed_from_u64(8);
        for _ in 0..20 {
            let u0: Vec<f64> = (0..8).map(|_| rng.gen_range(-1.0..1.0)).collect();
            let p = random_update(&mut rng);
            for dir in [SweepDirection::Ascending, SweepDirection::Descending] {
                let expected = sweep_as_matrix(&p, dir, 8).unwrap().mul_vec(&u0);
                let mut got = u0.clone();
                sweep_slice(&mut got, &p, dir).unwrap();
                for (a, b) in got.iter().zip(&expected) {
                    assert!((a - b).abs() <= 1e-13, "{a} vs {b}");
                }
            }
        }
    }

    #[test]
    fn matrix_oracle_properties() {
        for dir in [SweepDirection::Ascending, SweepDirection::Descending] {
            let id = sweep_as_matrix(&PairUpdate::IDENTITY, dir, 6).unwrap();
            assert_eq!(id, DenseMatrix::identity(6));

            let m = sweep_as_matrix(&diffusion_pair(0.3), dir, 9).unwrap();
            for j in 0..9 {
                let col: f64 = (0..9).map(|i| m[(i, j)]).sum();
                assert!((col - 1.0).abs() < 1e-14);
            }

            let r = sweep_as_matrix(&rotation(0.6), dir, 11).unwrap();
            let resid = r.transpose().matmul(&r).max_abs_diff(&DenseMatrix::identity(11));
            assert!(resid < 1e-13, "{resid}");
        }
    }

    #[test]
    fn saulyev_fixed_identity() {
        let mut f = Field1D::new(vec![1.0, 2.0, 3.0, 4.0], 0.1, 0.0, BoundaryKind::FixedEnds).unwrap();
        let before = f.clone();
        saulyev_sweep_fixed(&mut f, 1.0, 0.0, 0.0, SweepDirection::Ascending).unwrap();
        saulyev_sweep_fixed(&mut f, 1.0, 0.0, 0.0, SweepDirection::Descending).unwrap();
        assert_eq!(f, before);
    }

    #[test]
    fn saulyev_fixed_ends_untouched() {
        let mut f = Field1D::new(vec![3.0, 1.0, 4.0, 1.0, 5.0, 9.0], 0.1, 0.0, BoundaryKind::FixedEnds).unwrap();
        for dir in [SweepDirection::Ascending, SweepDirection::Descending] {
            saulyev_sweep_fixed(&mut f, 1.0 / 3.0, 1.0 / 3.0, 1.0 / 3.0, dir).unwrap();
            assert_eq!(f.values()[0], 3.0);
            assert_eq!(f.values()[5], 9.0);
        }
    }

    #[test]
    fn saulyev_fixed_agrees_with_periodic_engine_away_from_ends() {
        let n = 80;
        let pulse = |x: f64| (-(x - 4.0) * (x - 4.0) / 0.3).exp();
        let periodic_field = Field1D::from_fn(n, 0.0, 0.1, BoundaryKind::Periodic, pulse).unwrap();
        let fixed_field = Field1D::from_fn(n, 0.0, 0.1, BoundaryKind::FixedEnds, pulse).unwrap();
        // Saul'yev r = 0.5
        let r = 0.5;
        let p = diffusion_pair((1.0 - r) / (1.0 + r));
        for dir in [SweepDirection::Ascending, SweepDirection::Descending] {
            let mut a = periodic_field.clone();
            let mut b = fixed_field.clone();
            sweep(&mut a, &p, dir).unwrap();
            saulyev_sweep_fixed(&mut b, p.gamma(), p.beta, p.lambda, dir).unwrap();
            assert!(a.values().iter().zip(b.values()).all(|(x, y)| (x - y).abs() < 1e-12));
        }
    }

    /// Unrolled boundary lines of the periodic ascending diffusion sweep.
    #[test]
    fn ascending_diffusion_matches_saulyev_form() {
        let mut rng = ChaCha8Rng::seed_from_u64(11);
        for _ in 0..20 {
            let n = rng.gen_range(5..30);
            let u: Vec<f64> = (0..n).map(|_| rng.gen_range(-1.0..1.0)).collect();
            let p = diffusion_pair(rng.gen_range(0.0..1.0));
            let (a, b, g) = (p.alpha, p.beta, p.gamma());
            let mut v = u.clone();
            sweep_slice(&mut v, &p, SweepDirection::Ascending).unwrap();

            let u1_star = a * u[0] + b * u[1];
            assert!((v[1] - (b * u1_star + g * u[1] + b * u[2])).abs() < 1e-13);
            for j in 2..n - 1 {
                assert!((v[j] - (b * v[j - 1] + g * u[j] + b * u[j + 1])).abs() < 1e-13);
            }
            assert!((v[n - 1] - (b * v[n - 2] + g * u[n - 1] + b * u1_star)).abs() < 1e-13);
            let tail = b / a * v[n - 1] + g * u[0] + g * b / a * u[1];
            assert!((v[0] - tail).abs() < 1e-13);
        }
    }

    #[test]
    fn descending_diffusion_matches_saulyev_form() {
        let mut rng = ChaCha8Rng::seed_from_u64(12);
        for _ in 0..20 {
            let n = rng.gen_range(5..30);
            let u: Vec<f64> = (0..n).map(|_| rng.gen_range(-1.0..1.0)).collect();
            let p = diffusion_pair(rng.gen_range(0.0..1.0));
            let (a, b, g) = (p.alpha, p.beta, p.gamma());
            let mut v = u.clone();
            sweep_slice(&mut v, &p, SweepDirection::Descending).unwrap();

            let u1_star = b * u[n - 1] + a * u[0];
            assert!((v[n - 1] - (b * u[n - 2] + g * u[n - 1] + b * u1_star)).abs() < 1e-13);
            for j in 2..n - 1 {
                assert!((v[j] - (b * u[j - 1] + g * u[j] + b * v[j + 1])).abs() < 1e-13);
            }
            assert!((v[1] - (b * u1_star + g * u[1] + b * v[2])).abs() < 1e-13);
            let tail = g * b / a * u[n - 1] + g * u[0] + b / a * v[1];
            assert!((v[0] - tail).abs() < 1e-13);
        }
    }

    /// Interior recurrence for a general (advection-diffusion) pair.
    #[test]
    fn general_pair_interior_recurrence() {
        let mut rng = ChaCha8Rng::seed_from_u64(13);
        for _ in 0..20 {
            let n = rng.gen_range(6..30);
            let u: Vec<f64> = (0..n).map(|_| rng.gen_range(-1.0..1.0)).collect();
            let p = PairUpdate::new(rng.gen_range(0.3..1.0), rng.gen_range(-0.5..0.5), rng.gen_range(-0.5..0.5)).unwrap();
            let g = p.gamma();
            let mut asc = u.clone();
            sweep_slice(&mut asc, &p, SweepDirection::Ascending).unwrap();
            for j in 2..n - 1 {
                let r = asc[j] - (p.beta * asc[j - 1] + g * u[j] + p.lambda * u[j + 1]);
                assert!(r.abs() < 1e-13);
            }
            let mut desc = u.clone();
            sweep_slice(&mut desc, &p, SweepDirection::Descending).unwrap();
            for j in 2..n - 1 {
                let r = desc[j] - (p.beta * u[j - 1] + g * u[j] + p.lambda * desc[j + 1]);
                assert!(r.abs() < 1e-13);
            }
        }
    }

    #[test]
    fn advection_ascending_matches_saulyev_form() {
        let n = 12;
        let s: f64 = 0.4;
        let c = (1.0 - s * s).sqrt();
        let u: Vec<f64> = (0..n).map(|j| ((j * 7 % 5) as f64) - 2.0).collect();
        let mut v = u.clone();
        sweep_slice(&mut v, &rotation(s), SweepDirection::Ascending).unwrap();
        let u1_star = c * u[0] - s * u[1];
        assert!((v[1] - (s * u1_star + u[1] - s * u[2])).abs() < 1e-14);
        assert!((v[n - 1] - (s * v[n - 2] + u[n - 1] - s * u1_star)).abs() < 1e-14);
        assert!((c * v[0] - (s * v[n - 1] + c * u[0] - s * u[1])).abs() < 1e-14);
    }
}
