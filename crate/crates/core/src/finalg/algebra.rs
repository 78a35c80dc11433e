//! Finite-dimensional associative *-algebras presented by structure
//! constants.
//!
//! Basis elements are `e_0 … e_{n-1}`. The product `e_i e_j` is stored as a
//! sparse coordinate vector at slot `i·n + j`, which is the sorted-triplet
//! layout of the structure tensor `m[i][j][k]`. The star is conjugate-linear:
//! `(Σ x_i e_i)* = Σ conj(x_i) e_i*`, with `e_i*` stored per basis element.
//!
//! Tensor products flatten the pair `(i, j)` to `i·dim(B) + j` (row-major).
//! Every construction in the crate that builds on tensor products, including
//! the Drinfeld double, uses this convention.

use nalgebra::{DMatrix, SymmetricEigen};
use num_complex::Complex64;

use super::linalg::{basis_vector, sparse_from_dense, Accumulator, SparseVec};
use super::scalar::{Field, Scalar};
use crate::report::{Report, Witness};

/// Minimal Gram eigenvalue regarded as strictly positive.
pub const POSITIVITY_FLOOR: f64 = 1e-9;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum AlgebraError {
    #[error("expected a vector of length {expected}, got {got}")]
    DimensionMismatch { expected: usize, got: usize },
    #[error("basis index {index} out of range for dimension {dim}")]
    IndexOutOfRange { index: usize, dim: usize },
    #[error("{0}")]
    Malformed(String),
    #[error("form is not Hermitian: f(e{i}* e{j}) != conj f(e{j}* e{i})")]
    NonHermitianForm { i: usize, j: usize },
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct StarAlgebra<S> {
    labels: Vec<String>,
    products: Vec<SparseVec<S>>,
    unit: Vec<S>,
    stars: Vec<SparseVec<S>>,
}

impl<S: Scalar> StarAlgebra<S> {
    /// Builds an algebra from per-pair products (`products[i·n + j] = e_i e_j`),
    /// unit coordinates and basis stars. Only shape is checked here; use
    /// [`validate_algebra`] for the axioms.
    pub fn new(
        labels: Vec<String>,
        products: Vec<SparseVec<S>>,
        unit: Vec<S>,
        stars: Vec<SparseVec<S>>,
    ) -> Result<Self, AlgebraError> {
        let n = labels.len();
        if n == 0 {
            return Err(AlgebraError::Malformed(
                "algebra must have positive dimension".into(),
            ));
        }
        if products.len() != n * n {
            return Err(AlgebraError::DimensionMismatch {
                expected: n * n,
                got: products.len(),
            });
        }
        if unit.len() != n {
            return Err(AlgebraError::DimensionMismatch {
                expected: n,
                got: unit.len(),
            });
        }
        if stars.len() != n {
            return Err(AlgebraError::DimensionMismatch {
                expected: n,
                got: stars.len(),
            });
        }
        let mut products = products;
        let mut stars = stars;
        for v in products.iter_mut().chain(stars.iter_mut()) {
            normalize(v, n)?;
        }
        Ok(StarAlgebra {
            labels,
            products,
            unit,
            stars,
        })
    }

    /// Builds from structure-tensor triplets `(i, j, k, m[i][j][k])` and star
    /// entries `(i, k, c)` meaning `e_i* = Σ c e_k`.
    pub fn from_triplets(
        labels: Vec<String>,
        mult: impl IntoIterator<Item = (usize, usize, usize, S)>,
        unit: Vec<S>,
        star: impl IntoIterator<Item = (usize, usize, S)>,
    ) -> Result<Self, AlgebraError> {
        let n = labels.len();
        let mut products = vec![Accumulator::new(); n * n];
        for (i, j, k, c) in mult {
            for idx in [i, j, k] {
                if idx >= n {
                    return Err(AlgebraError::IndexOutOfRange { index: idx, dim: n });
                }
            }
            products[i * n + j].add(k, &c);
        }
        let mut stars = vec![Accumulator::new(); n];
        for (i, k, c) in star {
            for idx in [i, k] {
                if idx >= n {
                    return Err(AlgebraError::IndexOutOfRange { index: idx, dim: n });
                }
            }
            stars[i].add(k, &c);
        }
        Self::new(
            labels,
            products.into_iter().map(Accumulator::finish).collect(),
            unit,
            stars.into_iter().map(Accumulator::finish).collect(),
        )
    }

    /// The one-dimensional algebra `ℂ` (over the scalar type `S`).
    pub fn scalars() -> Self {
        Self::new(
            vec!["1".into()],
            vec![basis_vector(0)],
            vec![S::one()],
            vec![basis_vector(0)],
        )
        .expect("well-formed")
    }

    /// Full matrix algebra `M_d` with matrix units `E_{ab}` as basis, index
    /// `a·d + b`, and conjugate transpose as star.
    pub fn matrix_units(d: usize) -> Self {
        let n = d * d;
        let labels = (0..n).map(|i| format!("E{}{}", i / d, i % d)).collect();
        let mut products = vec![Vec::new(); n * n];
        for a in 0..d {
            for b in 0..d {
                for c in 0..d {
                    products[(a * d + b) * n + (b * d + c)] = basis_vector(a * d + c);
                }
            }
        }
        let mut unit = vec![S::zero(); n];
        for a in 0..d {
            unit[a * d + a] = S::one();
        }
        let stars = (0..n).map(|i| basis_vector((i % d) * d + i / d)).collect();
        Self::new(labels, products, unit, stars).expect("well-formed")
    }

    pub fn dim(&self) -> usize {
        self.labels.len()
    }

    pub fn labels(&self) -> &[String] {
        &self.labels
    }

    pub fn unit(&self) -> &[S] {
        &self.unit
    }

    /// `e_i e_j`.
    pub fn mul_basis(&self, i: usize, j: usize) -> &SparseVec<S> {
        &self.products[i * self.dim() + j]
    }

    /// `e_i*`.
    pub fn star_basis(&self, i: usize) -> &SparseVec<S> {
        &self.stars[i]
    }

    /// Iterates the nonzero structure constants `(i, j, k, m[i][j][k])`.
    pub fn structure_triplets(&self) -> impl Iterator<Item = (usize, usize, usize, &S)> {
        let n = self.dim();
        self.products
            .iter()
            .enumerate()
            .flat_map(move |(ij, v)| v.iter().map(move |(k, c)| (ij / n, ij % n, *k, c)))
    }

    pub fn mul_sparse(&self, x: &[(usize, S)], y: &[(usize, S)]) -> SparseVec<S> {
        let mut acc = Accumulator::new();
        for (i, a) in x {
            for (j, b) in y {
                acc.add_scaled(self.mul_basis(*i, *j), &(a.clone() * b));
            }
        }
        acc.finish()
    }

    pub fn star_sparse(&self, x: &[(usize, S)]) -> SparseVec<S> {
        let mut acc = Accumulator::new();
        for (i, a) in x {
            acc.add_scaled(&self.stars[*i], &a.conj());
        }
        acc.finish()
    }

    fn check_len(&self, x: &[S]) -> Result<(), AlgebraError> {
        if x.len() != self.dim() {
            return Err(AlgebraError::DimensionMismatch {
                expected: self.dim(),
                got: x.len(),
            });
        }
        Ok(())
    }

    /// Product of two coordinate vectors.
    pub fn mul(&self, x: &[S], y: &[S]) -> Result<Vec<S>, AlgebraError> {
        self.check_len(x)?;
        self.check_len(y)?;
        let p = self.mul_sparse(&sparse_from_dense(x), &sparse_from_dense(y));
        Ok(super::linalg::dense_from_sparse(&p, self.dim()))
    }

    pub fn star(&self, x: &[S]) -> Result<Vec<S>, AlgebraError> {
        self.check_len(x)?;
        let s = self.star_sparse(&sparse_from_dense(x));
        Ok(super::linalg::dense_from_sparse(&s, self.dim()))
    }

    /// Trace of left multiplication by `e_i` on the algebra itself.
    pub fn regular_trace(&self, i: usize) -> S {
        let mut t = S::zero();
        for j in 0..self.dim() {
            for (k, c) in self.mul_basis(i, j) {
                if *k == j {
                    t += c;
                }
            }
        }
        t
    }

    /// Same algebra with relabeled basis.
    pub fn with_labels(mut self, labels: Vec<String>) -> Result<Self, AlgebraError> {
        if labels.len() != self.dim() {
            return Err(AlgebraError::DimensionMismatch {
                expected: self.dim(),
                got: labels.len(),
            });
        }
        self.labels = labels;
        Ok(self)
    }

    /// Returns a copy with the structure constant `m[i][j][k]` shifted by
    /// `delta`. Meant for exercising the validators.
    pub fn perturbed(&self, i: usize, j: usize, k: usize, delta: S) -> Self {
        let mut out = self.clone();
        let n = self.dim();
        let mut acc = Accumulator::new();
        acc.add_scaled(&out.products[i * n + j], &S::one());
        acc.add(k, &delta);
        out.products[i * n + j] = acc.finish();
        out
    }

    /// Returns a copy with the star replaced by `e_i* = Σ c e_k`.
    pub fn with_stars(&self, stars: Vec<SparseVec<S>>) -> Result<Self, AlgebraError> {
        Self::new(
            self.labels.clone(),
            self.products.clone(),
            self.unit.clone(),
            stars,
        )
    }
}

fn normalize<S: Scalar>(v: &mut SparseVec<S>, n: usize) -> Result<(), AlgebraError> {
    let mut acc = Accumulator::new();
    for (k, c) in v.iter() {
        if *k >= n {
            return Err(AlgebraError::IndexOutOfRange { index: *k, dim: n });
        }
        acc.add(*k, c);
    }
    *v = acc.finish();
    Ok(())
}

/// Checks associativity, the two unit laws, star involutivity and star
/// anti-multiplicativity on basis elements. Each failed axiom is reported
/// with the first witness found.
pub fn validate_algebra<S: Scalar>(a: &StarAlgebra<S>) -> Report {
    let n = a.dim();
    let mut report = Report::new();
    let unit = sparse_from_dense(a.unit());

    let mut assoc = None;
    'outer: for i in 0..n {
        for j in 0..n {
            let ij = a.mul_basis(i, j);
            for k in 0..n {
                let lhs = a.mul_sparse(ij, &basis_vector(k));
                let rhs = a.mul_sparse(&basis_vector(i), a.mul_basis(j, k));
                if lhs != rhs {
                    assoc = Some(Witness::new([i, j, k], "(e_i e_j) e_k != e_i (e_j e_k)"));
                    break 'outer;
                }
            }
        }
    }
    report.record("associativity", assoc);

    let left = (0..n).find(|&i| a.mul_sparse(&unit, &basis_vector(i)) != basis_vector(i));
    report.record("unit_left", left.map(|i| Witness::new([i], "1 e_i != e_i")));
    let right = (0..n).find(|&i| a.mul_sparse(&basis_vector(i), &unit) != basis_vector(i));
    report.record(
        "unit_right",
        right.map(|i| Witness::new([i], "e_i 1 != e_i")),
    );

    let inv = (0..n).find(|&i| a.star_sparse(a.star_basis(i)) != basis_vector(i));
    report.record(
        "star_involution",
        inv.map(|i| Witness::new([i], "(e_i*)* != e_i")),
    );

    let mut anti = None;
    'anti: for i in 0..n {
        for j in 0..n {
            let lhs = a.star_sparse(a.mul_basis(i, j));
            let rhs = a.mul_sparse(a.star_basis(j), a.star_basis(i));
            if lhs != rhs {
                anti = Some(Witness::new([i, j], "(e_i e_j)* != e_j* e_i*"));
                break 'anti;
            }
        }
    }
    report.record("star_antimultiplicative", anti);
    report
}

/// `A ⊗ B` with basis `(i, j) ↦ i·dim(B) + j`, componentwise product and star.
/// Both factors share the scalar type, so mixing kinds is a type error.
pub fn tensor_product<S: Scalar>(a: &StarAlgebra<S>, b: &StarAlgebra<S>) -> StarAlgebra<S> {
    let (na, nb) = (a.dim(), b.dim());
    let n = na * nb;
    let labels = a
        .labels()
        .iter()
        .flat_map(|x| b.labels().iter().map(move |y| format!("{x}⊗{y}")))
        .collect();
    let mut products = Vec::with_capacity(n * n);
    for i in 0..n {
        for j in 0..n {
            let (i1, i2) = (i / nb, i % nb);
            let (j1, j2) = (j / nb, j % nb);
            products.push(kron(a.mul_basis(i1, j1), b.mul_basis(i2, j2), nb));
        }
    }
    let unit = kron_dense(a.unit(), b.unit());
    let stars = (0..n)
        .map(|i| kron(a.star_basis(i / nb), b.star_basis(i % nb), nb))
        .collect();
    StarAlgebra::new(labels, products, unit, stars).expect("tensor product is well-formed")
}

/// Sparse Kronecker product of coordinate vectors.
pub fn kron<S: Scalar>(x: &[(usize, S)], y: &[(usize, S)], ny: usize) -> SparseVec<S> {
    let mut out = Vec::with_capacity(x.len() * y.len());
    for (i, a) in x {
        for (j, b) in y {
            let c = a.clone() * b;
            if !c.is_zero() {
                out.push((i * ny + j, c));
            }
        }
    }
    out
}

fn kron_dense<S: Scalar>(x: &[S], y: &[S]) -> Vec<S> {
    x.iter()
        .flat_map(|a| y.iter().map(move |b| a.clone() * b))
        .collect()
}

/// Dense square matrix, row-major.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Matrix<S> {
    n: usize,
    data: Vec<S>,
}

impl<S: Scalar> Matrix<S> {
    pub fn zeros(n: usize) -> Self {
        Matrix {
            n,
            data: vec![S::zero(); n * n],
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n);
        for i in 0..n {
            m.data[i * n + i] = S::one();
        }
        m
    }

    pub fn size(&self) -> usize {
        self.n
    }

    pub fn get(&self, r: usize, c: usize) -> &S {
        &self.data[r * self.n + c]
    }

    pub fn set(&mut self, r: usize, c: usize, v: S) {
        self.data[r * self.n + c] = v;
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(|c| c.is_zero())
    }

    pub fn matmul(&self, o: &Matrix<S>) -> Matrix<S> {
        let n = self.n;
        let mut out = Self::zeros(n);
        for r in 0..n {
            for k in 0..n {
                let a = self.get(r, k);
                if a.is_zero() {
                    continue;
                }
                for c in 0..n {
                    let b = o.get(k, c);
                    if !b.is_zero() {
                        out.data[r * n + c] += &(a.clone() * b);
                    }
                }
            }
        }
        out
    }

    /// `Σ c_i M_i`.
    pub fn combination<'a>(
        n: usize,
        terms: impl IntoIterator<Item = (&'a S, &'a Matrix<S>)>,
    ) -> Matrix<S>
    where
        S: 'a,
    {
        let mut out = Self::zeros(n);
        for (c, m) in terms {
            for (x, y) in out.data.iter_mut().zip(&m.data) {
                if !y.is_zero() {
                    *x += &(c.clone() * y);
                }
            }
        }
        out
    }
}

/// Left regular representation: `L_i[k][j] = m[i][j][k]`, the matrix of
/// `x ↦ e_i x`.
pub fn regular_representation<S: Scalar>(a: &StarAlgebra<S>) -> Vec<Matrix<S>> {
    let n = a.dim();
    (0..n)
        .map(|i| {
            let mut m = Matrix::zeros(n);
            for j in 0..n {
                for (k, c) in a.mul_basis(i, j) {
                    m.set(*k, j, c.clone());
                }
            }
            m
        })
        .collect()
}

/// A linear functional, stored by its values on the basis.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LinearFunctional<S> {
    pub coords: Vec<S>,
}

impl<S: Scalar> LinearFunctional<S> {
    pub fn new(coords: Vec<S>) -> Self {
        LinearFunctional { coords }
    }

    pub fn zero(dim: usize) -> Self {
        LinearFunctional {
            coords: vec![S::zero(); dim],
        }
    }

    pub fn eval_sparse(&self, x: &[(usize, S)]) -> S {
        let mut acc = S::zero();
        for (i, c) in x {
            acc += &(c.clone() * &self.coords[*i]);
        }
        acc
    }

    pub fn eval(&self, x: &[S]) -> Result<S, AlgebraError> {
        if x.len() != self.coords.len() {
            return Err(AlgebraError::DimensionMismatch {
                expected: self.coords.len(),
                got: x.len(),
            });
        }
        Ok(x.iter()
            .zip(&self.coords)
            .fold(S::zero(), |acc, (a, b)| acc + &(a.clone() * b)))
    }
}

/// Exact check of `f(e_i e_j) = f(e_j e_i)` for all basis pairs.
pub fn is_tracial<S: Scalar>(a: &StarAlgebra<S>, f: &LinearFunctional<S>) -> bool {
    let n = a.dim();
    (0..n).all(|i| {
        (i + 1..n).all(|j| f.eval_sparse(a.mul_basis(i, j)) == f.eval_sparse(a.mul_basis(j, i)))
    })
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct GramReport {
    pub is_positive_definite: bool,
    pub min_eigenvalue: f64,
}

/// Exact Gram matrix `G_ij = f(e_i* e_j)` of the sesquilinear form
/// `(x, y) ↦ f(x* y)`.
pub fn gram_matrix<S: Scalar>(a: &StarAlgebra<S>, f: &LinearFunctional<S>) -> Vec<Vec<S>> {
    let n = a.dim();
    (0..n)
        .map(|i| {
            (0..n)
                .map(|j| f.eval_sparse(&a.mul_sparse(a.star_basis(i), &basis_vector(j))))
                .collect()
        })
        .collect()
}

/// Positivity of `(x, y) ↦ f(x* y)`. Hermitian symmetry is checked exactly;
/// the smallest eigenvalue is computed in floating point.
pub fn gram_positivity<F: Field>(
    a: &StarAlgebra<F>,
    f: &LinearFunctional<F>,
) -> Result<GramReport, AlgebraError> {
    if f.coords.len() != a.dim() {
        return Err(AlgebraError::DimensionMismatch {
            expected: a.dim(),
            got: f.coords.len(),
        });
    }
    let g = gram_matrix(a, f);
    let n = a.dim();
    for i in 0..n {
        for j in i..n {
            if g[i][j] != g[j][i].conj() {
                return Err(AlgebraError::NonHermitianForm { i, j });
            }
        }
    }
    let m = DMatrix::<Complex64>::from_fn(n, n, |i, j| g[i][j].to_c64());
    let eig = SymmetricEigen::new(m);
    let min = eig
        .eigenvalues
        .iter()
        .cloned()
        .fold(f64::INFINITY, f64::min);
    Ok(GramReport {
        is_positive_definite: min > POSITIVITY_FLOOR,
        min_eigenvalue: min,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::finalg::scalar::GaussRat;
    use crate::hopf::{group_algebra, GroupTable};
    use num_traits::{One, Zero};

    type G = GaussRat;

    fn z(n: usize) -> StarAlgebra<G> {
        group_algebra(&GroupTable::cyclic(n)).into_algebra()
    }

    fn e(i: usize, n: usize) -> Vec<G> {
        (0..n)
            .map(|k| if k == i { G::one() } else { G::zero() })
            .collect()
    }

    #[test]
    fn z2_generator_squares_to_identity() {
        let a = z(2);
        assert_eq!(a.mul(&e(1, 2), &e(1, 2)).unwrap(), e(0, 2));
        let x = vec![G::ratio(1, 2), G::from_i64(3)];
        assert_eq!(a.mul(a.unit(), &x).unwrap(), x);
    }

    #[test]
    fn mul_rejects_bad_lengths() {
        let a = z(2);
        assert_eq!(
            a.mul(&e(0, 3), &e(0, 2)),
            Err(AlgebraError::DimensionMismatch {
                expected: 2,
                got: 3
            })
        );
    }

    #[test]
    fn validation_passes_and_catches_corruption() {
        assert!(validate_algebra(&z(3)).is_ok());
        assert!(validate_algebra(&StarAlgebra::<G>::scalars()).is_ok());
        assert!(validate_algebra(&StarAlgebra::<G>::matrix_units(2)).is_ok());
        let bad = z(3).perturbed(0, 0, 0, G::one());
        let r = validate_algebra(&bad);
        let w = r.failed("associativity").expect("associativity witness");
        assert_eq!(w.witness.as_ref().unwrap().indices.len(), 3);
    }

    #[test]
    fn non_involutive_star_is_reported() {
        // e_1* = e_1 + e_0 is not an involution on ℂ[ℤ₂].
        let a = z(2)
            .with_stars(vec![
                vec![(0, G::one())],
                vec![(0, G::one()), (1, G::one())],
            ])
            .unwrap();
        assert!(validate_algebra(&a).failed("star_involution").is_some());
    }

    #[test]
    fn tensor_product_shapes() {
        let c = StarAlgebra::<G>::scalars();
        let a = z(3);
        let ca = tensor_product(&c, &a);
        assert_eq!(ca.dim(), 3);
        assert_eq!(
            ca.structure_triplets().count(),
            a.structure_triplets().count()
        );
        assert!(ca
            .structure_triplets()
            .zip(a.structure_triplets())
            .all(|(x, y)| x == y));
        let z2z3 = tensor_product(&z(2), &z(3));
        assert_eq!(z2z3.dim(), 6);
        assert!(validate_algebra(&tensor_product(&z(2), &z(2))).is_ok());
    }

    #[test]
    fn regular_representation_basics() {
        let a = z(2);
        let l = regular_representation(&a);
        assert_eq!(l[0], Matrix::identity(2));
        let mut swap = Matrix::zeros(2);
        swap.set(0, 1, G::one());
        swap.set(1, 0, G::one());
        assert_eq!(l[1], swap);
    }

    #[test]
    fn gram_examples() {
        let a = z(2);
        let r = gram_positivity(&a, &LinearFunctional::new(e(0, 2))).unwrap();
        assert!(r.is_positive_definite);
        assert!((r.min_eigenvalue - 1.0).abs() < 1e-12);
        let r = gram_positivity(&a, &LinearFunctional::new(e(1, 2))).unwrap();
        assert!(!r.is_positive_definite);
        assert!((r.min_eigenvalue + 1.0).abs() < 1e-12);
        let r = gram_positivity(&a, &LinearFunctional::zero(2)).unwrap();
        assert!(!r.is_positive_definite);
    }

    #[test]
    fn non_hermitian_form_detected() {
        // f(e_1) = i gives f(e_1* e_0) = i but conj f(e_0* e_1) = -i.
        let a = z(2);
        let f = LinearFunctional::new(vec![G::one(), G::i()]);
        assert!(matches!(
            gram_positivity(&a, &f),
            Err(AlgebraError::NonHermitianForm { .. })
        ));
    }

    #[test]
    fn traciality_examples() {
        let s3 = group_algebra(&GroupTable::symmetric(3)).into_algebra();
        assert!(is_tracial(&s3, &LinearFunctional::new(e(0, 6))));
        let m2 = StarAlgebra::<G>::matrix_units(2);
        // (1,1)-entry functional: f(E11) = 1.
        assert!(!is_tracial(&m2, &LinearFunctional::new(e(0, 4))));
        let f = LinearFunctional::new(vec![G::from_i64(5), G::ratio(-2, 7), G::i()]);
        assert!(is_tracial(&z(3), &f));
    }
}
