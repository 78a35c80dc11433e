//! Drinfeld double `D(H) = (H^op)* ⋈ H` of a finite-dimensional Kac algebra.
//!
//! Basis element `φ^a ⋈ e_i` sits at index `a·n + i`, where `φ^a` is the dual
//! basis of [`dual_opposite`]. Writing `Δ^{(3)}(e_i) = Σ c e_p ⊗ e_q ⊗ e_r`,
//!
//! ```text
//! (φ^a ⋈ e_i)(φ^b ⋈ e_j) = Σ c · φ^a g ⋈ e_q e_j,   g(x) = φ^b(S⁻¹(e_r) x e_p)
//! 1 = χ ⋈ 1,   Δ(f ⋈ h) = (f₍₁₎ ⋈ h₍₁₎) ⊗ (f₍₂₎ ⋈ h₍₂₎),   ε(f ⋈ h) = f(1)χ(h)
//! S(f ⋈ h) = (χ ⋈ S(h))(S(f) ⋈ χ)
//! (φ^a ⋈ e_i)* = Σ conj(c) conj(φ^a(e_r S(e_s*) S(e_p))) φ^s ⋈ e_q*
//! ```
//!
//! The last line is the closed star formula; [`remark_star`] recomputes the
//! star as `(χ ⋈ h*)(f* ⋈ 1)` using the double's own product, and
//! [`check_double_star`] compares the two.

use crate::finalg::algebra::{
    gram_positivity, is_tracial, AlgebraError, LinearFunctional, StarAlgebra,
};
use crate::finalg::linalg::{basis_vector, Accumulator, SparseVec};
use crate::finalg::scalar::Field;
use crate::finalg::wedderburn::{
    wedderburn_blocks, BlockDecomposition, WedderburnConfig, WedderburnError,
};
use crate::hopf::{
    antipode_inverse, check_hopf_axioms, dual_opposite, haar_functional, HopfError, HopfStarAlgebra,
};
use crate::report::{Report, Witness};

#[derive(Debug, Clone, PartialEq, thiserror::Error)]
pub enum DoubleError {
    #[error(transparent)]
    Hopf(#[from] HopfError),
    #[error(transparent)]
    Algebra(#[from] AlgebraError),
    #[error(transparent)]
    Wedderburn(#[from] WedderburnError),
    #[error("double trace is not tracial")]
    NotTracial,
    #[error("double trace is not positive definite (min eigenvalue {0:e})")]
    NotPositive(f64),
}

/// Ingredients shared by the product and the star formulas.
struct Parts<F> {
    n: usize,
    dual: HopfStarAlgebra<F>,
    /// `Δ^{(3)} e_i`, flattened `p·n² + q·n + r`.
    d3: Vec<SparseVec<F>>,
    /// Entry `(r·n + p)·n + b` is `g = Σ_s φ^b(S⁻¹(e_r) e_s e_p) φ^s`.
    sandwich: Vec<SparseVec<F>>,
}

impl<F: Field> Parts<F> {
    fn new(h: &HopfStarAlgebra<F>) -> Result<Self, HopfError> {
        let report = check_hopf_axioms(h);
        if !report.is_ok() {
            return Err(HopfError::AxiomsFailed(report));
        }
        let n = h.dim();
        let a = h.algebra();
        let dual = dual_opposite(h)?;
        let sinv = antipode_inverse(h)?;
        let d3 = h.iterated_comult(3);
        let mut sandwich = vec![Accumulator::new(); n * n * n];
        for r in 0..n {
            for p in 0..n {
                for s in 0..n {
                    let x =
                        a.mul_sparse(&a.mul_sparse(&sinv[r], &basis_vector(s)), &basis_vector(p));
                    for (b, c) in x {
                        sandwich[(r * n + p) * n + b].add(s, &c);
                    }
                }
            }
        }
        Ok(Parts {
            n,
            dual,
            d3,
            sandwich: sandwich.into_iter().map(Accumulator::finish).collect(),
        })
    }

    fn product(&self, h: &StarAlgebra<F>, ai: usize, bj: usize) -> SparseVec<F> {
        let n = self.n;
        let (a, i, b, j) = (ai / n, ai % n, bj / n, bj % n);
        let x = self.dual.algebra();
        let mut acc = Accumulator::new();
        for (pqr, c) in &self.d3[i] {
            let (p, q, r) = (pqr / (n * n), (pqr / n) % n, pqr % n);
            let g = &self.sandwich[(r * n + p) * n + b];
            if g.is_empty() {
                continue;
            }
            let left = x.mul_sparse(&basis_vector(a), g);
            let right = h.mul_basis(q, j);
            for (t, u) in &left {
                for (k, v) in right {
                    acc.add(t * n + k, &(c.clone() * u * v));
                }
            }
        }
        acc.finish()
    }
}

/// Closed-form star of the double (requires `S² = id`, which the Kac axioms
/// guarantee).
fn general_star<F: Field>(h: &HopfStarAlgebra<F>, parts: &Parts<F>) -> Vec<SparseVec<F>> {
    let n = parts.n;
    let a = h.algebra();
    // w[(r·n + p)·n + s] = e_r S(e_s*) S(e_p)
    let mut w = Vec::with_capacity(n * n * n);
    for r in 0..n {
        for p in 0..n {
            let sp = h.antipode_basis(p);
            for s in 0..n {
                let mid = h.antipode(a.star_basis(s));
                w.push(a.mul_sparse(&a.mul_sparse(&basis_vector(r), &mid), sp));
            }
        }
    }
    let mut out = Vec::with_capacity(n * n);
    for fa in 0..n {
        for i in 0..n {
            let mut acc = Accumulator::new();
            for (pqr, c) in &parts.d3[i] {
                let (p, q, r) = (pqr / (n * n), (pqr / n) % n, pqr % n);
                let cc = c.conj();
                for s in 0..n {
                    let Some((_, val)) = w[(r * n + p) * n + s].iter().find(|(k, _)| *k == fa)
                    else {
                        continue;
                    };
                    let coeff = cc.clone() * &val.conj();
                    for (k, d) in a.star_basis(q) {
                        acc.add(s * n + k, &(coeff.clone() * d));
                    }
                }
            }
            out.push(acc.finish());
        }
    }
    out
}

/// The Drinfeld double of a Kac algebra, with labels `δ[x]⋈y`.
pub fn drinfeld_double<F: Field>(
    h: &HopfStarAlgebra<F>,
) -> Result<HopfStarAlgebra<F>, DoubleError> {
    let parts = Parts::new(h)?;
    let n = parts.n;
    let nn = n * n;
    let ha = h.algebra();
    let x = parts.dual.clone();
    let xa = x.algebra();

    let labels: Vec<String> = (0..nn)
        .map(|ai| format!("{}⋈{}", xa.labels()[ai / n], ha.labels()[ai % n]))
        .collect();
    let products: Vec<SparseVec<F>> = (0..nn * nn)
        .map(|k| parts.product(ha, k / nn, k % nn))
        .collect();
    let unit: Vec<F> = (0..nn)
        .map(|ai| xa.unit()[ai / n].clone() * &ha.unit()[ai % n])
        .collect();
    let stars = general_star(h, &parts);
    let alg = StarAlgebra::new(labels, products, unit, stars)?;

    let comult = (0..nn)
        .map(|ai| {
            let (a, i) = (ai / n, ai % n);
            let mut acc = Accumulator::new();
            for (bc, u) in x.comult_basis(a) {
                let (b, c) = (bc / n, bc % n);
                for (jk, v) in h.comult_basis(i) {
                    let (j, k) = (jk / n, jk % n);
                    acc.add((b * n + j) * nn + (c * n + k), &(u.clone() * v));
                }
            }
            acc.finish()
        })
        .collect();
    let counit = (0..nn)
        .map(|ai| x.counit()[ai / n].clone() * &h.counit()[ai % n])
        .collect();
    // S(φ^a ⋈ e_i) = (χ ⋈ S(e_i)) (S(φ^a) ⋈ 1)
    let chi: Vec<_> = x.algebra().unit().to_vec();
    let antipode = (0..nn)
        .map(|ai| {
            let (a, i) = (ai / n, ai % n);
            let left = lift(&chi, h.antipode_basis(i), n);
            let right = lift_dense_right(x.antipode_basis(a), ha.unit(), n);
            alg.mul_sparse(&left, &right)
        })
        .collect();
    Ok(HopfStarAlgebra::new(alg, comult, counit, antipode)?)
}

/// `f ⋈ h` for `f` dense on the dual and `h` sparse on `H`.
fn lift<F: Field>(f: &[F], h: &[(usize, F)], n: usize) -> SparseVec<F> {
    let mut acc = Accumulator::new();
    for (a, u) in f.iter().enumerate() {
        for (i, v) in h {
            acc.add(a * n + i, &(u.clone() * v));
        }
    }
    acc.finish()
}

/// `f ⋈ h` for `f` sparse on the dual and `h` dense on `H`.
fn lift_dense_right<F: Field>(f: &[(usize, F)], h: &[F], n: usize) -> SparseVec<F> {
    let mut acc = Accumulator::new();
    for (a, u) in f {
        for (i, v) in h.iter().enumerate() {
            acc.add(a * n + i, &(u.clone() * v));
        }
    }
    acc.finish()
}

/// Star of the double computed as `(φ^a ⋈ e_i)* = (χ ⋈ e_i*)((φ^a)* ⋈ 1)`,
/// using the product of `d` and the stars of `H` and `(H^op)*`.
pub fn remark_star<F: Field>(
    h: &HopfStarAlgebra<F>,
    d: &HopfStarAlgebra<F>,
) -> Result<Vec<SparseVec<F>>, DoubleError> {
    let n = h.dim();
    let x = dual_opposite(h)?;
    let (ha, xa) = (h.algebra(), x.algebra());
    let chi = xa.unit().to_vec();
    Ok((0..n * n)
        .map(|ai| {
            let (a, i) = (ai / n, ai % n);
            let left = lift(&chi, ha.star_basis(i), n);
            let right = lift_dense_right(xa.star_basis(a), ha.unit(), n);
            d.algebra().mul_sparse(&left, &right)
        })
        .collect())
}

/// Compares the closed star formula stored in `d` with [`remark_star`], and
/// checks that the unit is `χ ⋈ 1`.
pub fn check_double_star<F: Field>(
    h: &HopfStarAlgebra<F>,
    d: &HopfStarAlgebra<F>,
) -> Result<Report, DoubleError> {
    let n = h.dim();
    let mut report = Report::new();
    let remark = remark_star(h, d)?;
    let mismatch = (0..n * n).find(|&k| &remark[k] != d.algebra().star_basis(k));
    report.record(
        "star_formulas_agree",
        mismatch.map(|k| Witness::new([k], "closed star formula differs from (χ⋈h*)(f*⋈1)")),
    );
    let x = dual_opposite(h)?;
    let expected = lift(
        x.algebra().unit(),
        &crate::finalg::linalg::sparse_from_dense(h.algebra().unit()),
        n,
    );
    let got = crate::finalg::linalg::sparse_from_dense(d.algebra().unit());
    report.record(
        "unit_is_counit_times_one",
        (expected != got).then(|| Witness::new([], "unit of the double is not χ⋈1")),
    );
    Ok(report)
}

/// Trace `t_{(H^op)*} ⊗ t_H` on the double, certified tracial and positive.
pub fn double_trace<F: Field>(h: &HopfStarAlgebra<F>) -> Result<LinearFunctional<F>, DoubleError> {
    let d = drinfeld_double(h)?;
    double_trace_on(h, &d)
}

/// [`double_trace`] for an already constructed double `d = D(h)`.
pub fn double_trace_on<F: Field>(
    h: &HopfStarAlgebra<F>,
    d: &HopfStarAlgebra<F>,
) -> Result<LinearFunctional<F>, DoubleError> {
    let th = haar_functional(h)?;
    let tx = haar_functional(&dual_opposite(h)?)?;
    let n = h.dim();
    let coords = (0..n * n)
        .map(|ai| tx.coords[ai / n].clone() * &th.coords[ai % n])
        .collect();
    let t = LinearFunctional::new(coords);
    if !is_tracial(d.algebra(), &t) {
        return Err(DoubleError::NotTracial);
    }
    let g = gram_positivity(d.algebra(), &t)?;
    if !g.is_positive_definite {
        return Err(DoubleError::NotPositive(g.min_eigenvalue));
    }
    Ok(t)
}

/// Block sizes of the double, i.e. dimensions of its irreducible
/// representations.
pub fn double_irreducibles<F: Field>(
    h: &HopfStarAlgebra<F>,
    cfg: &WedderburnConfig,
) -> Result<BlockDecomposition, DoubleError> {
    let d = drinfeld_double(h)?;
    Ok(wedderburn_blocks(d.algebra(), cfg)?)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::finalg::scalar::GaussRat;
    use crate::finalg::validate_algebra;
    use crate::hopf::{function_algebra, group_algebra, GroupTable};

    #[test]
    fn double_of_z2_is_a_kac_algebra() {
        let h = group_algebra(&GroupTable::cyclic(2));
        let d = drinfeld_double(&h).unwrap();
        assert_eq!(d.dim(), 4);
        assert!(validate_algebra(d.algebra()).is_ok());
        let r = check_hopf_axioms(&d);
        assert!(r.is_ok(), "{r}");
        assert!(check_double_star(&h, &d).unwrap().is_ok());
        assert_eq!(d.algebra().labels()[1], "δ[g0]⋈g1");
    }

    #[test]
    fn double_of_s3_function_algebra() {
        let h = function_algebra(&GroupTable::symmetric(3));
        let d = drinfeld_double(&h).unwrap();
        assert!(check_hopf_axioms(&d).is_ok());
        assert!(check_double_star(&h, &d).unwrap().is_ok());
        let t = double_trace_on(&h, &d).unwrap();
        assert_eq!(
            t.eval_sparse(&crate::finalg::linalg::sparse_from_dense(
                d.algebra().unit()
            )),
            GaussRat::from_i64(1)
        );
    }

    #[test]
    fn double_of_trivial_group_is_scalars() {
        let h = group_algebra(&GroupTable::cyclic(1));
        let d = drinfeld_double(&h).unwrap();
        assert_eq!(
            d.algebra(),
            &StarAlgebra::<GaussRat>::scalars()
                .with_labels(vec!["δ[g0]⋈g0".into()])
                .unwrap()
        );
    }

    #[test]
    fn irreducibles_of_small_doubles() {
        let cfg = WedderburnConfig::default();
        let b = double_irreducibles(&group_algebra(&GroupTable::cyclic(3)), &cfg).unwrap();
        assert_eq!(b.sorted_dims(), vec![1; 9]);
        let b = double_irreducibles(&group_algebra(&GroupTable::symmetric(3)), &cfg).unwrap();
        assert_eq!(b.sorted_dims(), vec![1, 1, 2, 2, 2, 2, 3, 3]);
    }
}
