//! Wedderburn block dimensions of a semisimple algebra.
//!
//! The center is computed exactly as the nullspace of the commutator
//! constraints. A pseudorandom central element, drawn from a ChaCha stream
//! with a recorded 64-bit seed, is then split spectrally in floating point:
//! its eigenvectors on the center, scaled to sum to the unit, are the
//! minimal central idempotents, and the trace of left multiplication by each
//! idempotent is `d²` for a `d × d` block.

use std::cmp::Ordering;

use nalgebra::{DMatrix, Schur};
use num_complex::Complex64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use super::algebra::StarAlgebra;
use super::linalg::RowReducer;
use super::scalar::Field;

/// Default seed for the pseudorandom central element (`"QSK_WEDB"` in ASCII).
pub const DEFAULT_SEED: u64 = 0x5153_4B5F_5745_4442;
/// Default rounding tolerance for block dimensions.
pub const DEFAULT_TOL: f64 = 1e-6;
const MAX_ATTEMPTS: u64 = 8;

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct WedderburnConfig {
    pub tol: f64,
    pub seed: u64,
}

impl Default for WedderburnConfig {
    fn default() -> Self {
        WedderburnConfig {
            tol: DEFAULT_TOL,
            seed: DEFAULT_SEED,
        }
    }
}

impl WedderburnConfig {
    pub fn with_tol(tol: f64) -> Self {
        WedderburnConfig {
            tol,
            ..Self::default()
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct BlockDecomposition {
    /// Block sizes `d`, aligned with `central_idempotents`.
    pub block_dims: Vec<usize>,
    /// Minimal central idempotents in algebra coordinates.
    pub central_idempotents: Vec<Vec<Complex64>>,
    /// Exact dimension of the center.
    pub center_dim: usize,
    /// Seed of the central element that produced the split.
    pub seed: u64,
    /// Largest deviation of a `√trace` from its rounded integer.
    pub max_residual: f64,
}

impl BlockDecomposition {
    /// Block sizes in ascending order.
    pub fn sorted_dims(&self) -> Vec<usize> {
        let mut d = self.block_dims.clone();
        d.sort_unstable();
        d
    }

    pub fn sum_of_squares(&self) -> usize {
        self.block_dims.iter().map(|d| d * d).sum()
    }
}

#[derive(Debug, Clone, PartialEq, thiserror::Error)]
pub enum WedderburnError {
    #[error("block dimension residual {residual} exceeds tolerance {tol}")]
    ResidualTooLarge { residual: f64, tol: f64 },
    #[error("algebra is not semisimple: {0}")]
    NotSemisimple(String),
}

/// Exact basis of the center `{z : z e_i = e_i z ∀i}`, together with the free
/// columns that serve as coordinates on it.
pub fn center_basis<F: Field>(a: &StarAlgebra<F>) -> (Vec<Vec<F>>, Vec<usize>) {
    let n = a.dim();
    let mut red = RowReducer::new(n);
    // Row (i, q): Σ_k z_k (m[k][i][q] − m[i][k][q]) = 0.
    for i in 0..n {
        let mut rows: Vec<Vec<F>> = vec![vec![F::zero(); n]; n];
        for k in 0..n {
            for (q, c) in a.mul_basis(k, i) {
                rows[*q][k] += c;
            }
            for (q, c) in a.mul_basis(i, k) {
                rows[*q][k] = rows[*q][k].clone() - c;
            }
        }
        for r in rows {
            if r.iter().any(|c| !c.is_zero()) {
                red.insert(r);
            }
            if red.rank() == n {
                break;
            }
        }
    }
    (red.nullspace(), red.free_columns())
}

struct FloatAlgebra {
    n: usize,
    products: Vec<Vec<(usize, Complex64)>>,
}

impl FloatAlgebra {
    fn new<F: Field>(a: &StarAlgebra<F>) -> Self {
        let n = a.dim();
        let products = (0..n * n)
            .map(|ij| {
                a.mul_basis(ij / n, ij % n)
                    .iter()
                    .map(|(k, c)| (*k, c.to_c64()))
                    .collect()
            })
            .collect();
        FloatAlgebra { n, products }
    }

    fn mul(&self, x: &[Complex64], y: &[Complex64]) -> Vec<Complex64> {
        let mut out = vec![Complex64::new(0.0, 0.0); self.n];
        for (i, a) in x.iter().enumerate() {
            if *a == Complex64::new(0.0, 0.0) {
                continue;
            }
            for (j, b) in y.iter().enumerate() {
                if *b == Complex64::new(0.0, 0.0) {
                    continue;
                }
                for (k, c) in &self.products[i * self.n + j] {
                    out[*k] += a * b * c;
                }
            }
        }
        out
    }
}

fn max_abs_diff(x: &[Complex64], y: &[Complex64]) -> f64 {
    x.iter()
        .zip(y)
        .map(|(a, b)| (a - b).norm())
        .fold(0.0, f64::max)
}

/// Block decomposition of a semisimple algebra. Semisimplicity is the
/// caller's responsibility (a positive-definite trace certifies it); a
/// non-semisimple input surfaces as [`WedderburnError::NotSemisimple`].
pub fn wedderburn_blocks<F: Field>(
    a: &StarAlgebra<F>,
    cfg: &WedderburnConfig,
) -> Result<BlockDecomposition, WedderburnError> {
    let n = a.dim();
    let (center, free) = center_basis(a);
    let r = center.len();
    let zf: Vec<Vec<Complex64>> = center
        .iter()
        .map(|v| v.iter().map(Field::to_c64).collect())
        .collect();
    let fa = FloatAlgebra::new(a);
    let unit: Vec<Complex64> = a.unit().iter().map(Field::to_c64).collect();
    let traces: Vec<Complex64> = (0..n).map(|i| a.regular_trace(i).to_c64()).collect();
    // Coordinates of a central element in the center basis are its entries at
    // the free columns.
    let coords = |x: &[Complex64]| -> Vec<Complex64> { free.iter().map(|&f| x[f]).collect() };
    let from_coords = |c: &[Complex64]| -> Vec<Complex64> {
        let mut out = vec![Complex64::new(0.0, 0.0); n];
        for (t, ct) in c.iter().enumerate() {
            for (k, zk) in zf[t].iter().enumerate() {
                out[k] += ct * zk;
            }
        }
        out
    };

    let mut last_err = String::new();
    for attempt in 0..MAX_ATTEMPTS {
        let seed = cfg.seed.wrapping_add(attempt);
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let weights: Vec<Complex64> = (0..r)
            .map(|_| Complex64::new(rng.random_range(-1.0..1.0), 0.0))
            .collect();
        let c = from_coords(&weights);

        // Matrix of z ↦ c z on the center, column t = coords(c · Z_t).
        let m = DMatrix::<Complex64>::from_fn(r, r, |s, t| coords(&fa.mul(&c, &zf[t]))[s]);
        let scale = m.iter().map(|x| x.norm()).fold(1.0, f64::max);
        let eig = match Schur::new(m.clone()).eigenvalues() {
            Some(e) => e,
            None => {
                last_err = "eigenvalue computation failed".into();
                continue;
            }
        };
        let lambdas: Vec<Complex64> = eig.iter().cloned().collect();
        let sep = lambdas
            .iter()
            .enumerate()
            .flat_map(|(i, x)| lambdas[i + 1..].iter().map(move |y| (x - y).norm()))
            .fold(f64::INFINITY, f64::min);
        if r > 1 && sep < 1e3 * f64::EPSILON.sqrt() * scale {
            last_err = format!("central element has a repeated eigenvalue (seed {seed})");
            continue;
        }

        // The minimal central idempotents are the eigenvectors of z ↦ cz,
        // scaled so that they sum to the unit. Null vectors come from an SVD,
        // which stays well conditioned when eigenvalues crowd together (a
        // Lagrange-interpolation product does not).
        let mut vectors = DMatrix::<Complex64>::zeros(r, r);
        for (j, lj) in lambdas.iter().enumerate() {
            let shifted = &m - DMatrix::<Complex64>::identity(r, r) * *lj;
            let svd = shifted.svd(false, true);
            let v_t = svd.v_t.expect("requested V^H");
            let k = svd
                .singular_values
                .iter()
                .enumerate()
                .min_by(|a, b| a.1.total_cmp(b.1))
                .map_or(0, |(k, _)| k);
            vectors.set_column(j, &v_t.row(k).adjoint());
        }
        let u = DMatrix::from_column_slice(r, 1, &coords(&unit));
        let Some(w) = vectors.clone().lu().solve(&u) else {
            last_err = format!("eigenvectors of the central element are dependent (seed {seed})");
            continue;
        };
        let idempotents: Vec<Vec<Complex64>> = (0..r)
            .map(|j| from_coords((vectors.column(j) * w[j]).as_slice()))
            .collect();

        // Reconstruction: orthogonal idempotents summing to the unit.
        let tol = cfg.tol;
        let mut worst: f64 = 0.0;
        let mut sum = vec![Complex64::new(0.0, 0.0); n];
        for (j, zj) in idempotents.iter().enumerate() {
            worst = worst.max(max_abs_diff(&fa.mul(zj, zj), zj));
            for zk in &idempotents[j + 1..] {
                worst = worst.max(max_abs_diff(
                    &fa.mul(zj, zk),
                    &vec![Complex64::new(0.0, 0.0); n],
                ));
            }
            for (s, x) in sum.iter_mut().zip(zj) {
                *s += x;
            }
        }
        worst = worst.max(max_abs_diff(&sum, &unit));
        if worst >= tol {
            last_err = format!("idempotent reconstruction residual {worst:e}");
            continue;
        }

        let mut dims = Vec::with_capacity(r);
        let mut max_residual: f64 = 0.0;
        for zj in &idempotents {
            let tr: Complex64 = zj.iter().zip(&traces).map(|(x, t)| x * t).sum();
            if tr.re < 0.5 {
                return Err(WedderburnError::NotSemisimple(format!(
                    "central idempotent with trace {tr}"
                )));
            }
            let root = tr.re.sqrt();
            let d = root.round();
            let residual = (root - d).abs().max(tr.im.abs());
            max_residual = max_residual.max(residual);
            if residual >= tol {
                return Err(WedderburnError::ResidualTooLarge { residual, tol });
            }
            dims.push(d as usize);
        }
        if dims.iter().map(|d| d * d).sum::<usize>() != n {
            return Err(WedderburnError::NotSemisimple(format!(
                "block dimensions {dims:?} do not account for dimension {n}"
            )));
        }

        let mut blocks: Vec<(usize, Vec<Complex64>)> = dims.into_iter().zip(idempotents).collect();
        blocks.sort_by(|x, y| canonical_order(&x.1, &y.1, tol));
        let (block_dims, central_idempotents) = blocks.into_iter().unzip();
        return Ok(BlockDecomposition {
            block_dims,
            central_idempotents,
            center_dim: r,
            seed,
            max_residual,
        });
    }
    Err(WedderburnError::NotSemisimple(last_err))
}

/// Descending lexicographic order on coordinates rounded to `tol`, so the
/// output order does not depend on the seed.
fn canonical_order(x: &[Complex64], y: &[Complex64], tol: f64) -> Ordering {
    let q = |v: f64| (v / tol).round() as i64;
    for (a, b) in x.iter().zip(y) {
        let o = q(b.re).cmp(&q(a.re)).then(q(b.im).cmp(&q(a.im)));
        if o != Ordering::Equal {
            return o;
        }
    }
    Ordering::Equal
}
