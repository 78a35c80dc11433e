//! Hopf *-algebras (Kac algebras) given by structure tensors.
//!
//! A [`HopfStarAlgebra`] extends a [`StarAlgebra`] by a comultiplication
//! `Δe_i = Σ Δ_i[(j,k)] e_j ⊗ e_k` (pairs flattened as `j·n + k`), a counit
//! and an antipode. [`check_hopf_axioms`] verifies the bialgebra, antipode
//! and Kac conditions exactly.
//!
//! Duals use the dual basis `φ^i(e_j) = δ_ij`. The dual of the opposite
//! algebra, `(H^op)*`, multiplies by transposing `Δ` and comultiplies by
//! transposing the opposite product:
//!
//! ```text
//! (f g)(x) = f(x₍₁₎) g(x₍₂₎)        Δ(f)(x ⊗ y) = f(y x)
//! ```
//!
//! This is the orientation under which the evaluation pairing satisfies
//! `⟨p, ab⟩ = ⟨p₍₁₎, a⟩⟨p₍₂₎, b⟩`, `⟨qp, a⟩ = ⟨p, a₍₁₎⟩⟨q, a₍₂₎⟩` and
//! `⟨p, a*⟩ = conj⟨S(p*), a⟩`.

use crate::finalg::algebra::{
    gram_positivity, is_tracial, kron, AlgebraError, LinearFunctional, StarAlgebra,
};
use crate::finalg::linalg::{
    basis_vector, invert, rank, solve_unique, sparse_from_dense, Accumulator, SolveError, SparseVec,
};
use crate::finalg::scalar::{Field, GaussRat, Scalar};
use crate::report::{Report, Witness};

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
#[error("not a group: {axiom} fails at {witness:?}")]
pub struct GroupError {
    pub axiom: &'static str,
    pub witness: Vec<usize>,
}

/// Multiplication table of a finite group, 0-indexed, with element 0 the
/// identity. `table[a][b]` is the index of `ab`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GroupTable {
    table: Vec<Vec<usize>>,
    names: Vec<String>,
    inverses: Vec<usize>,
}

impl GroupTable {
    /// Validates closure, identity at index 0, associativity and inverses.
    pub fn new(table: Vec<Vec<usize>>) -> Result<Self, GroupError> {
        let names = (0..table.len()).map(|i| format!("g{i}")).collect();
        Self::with_names(table, names)
    }

    pub fn with_names(table: Vec<Vec<usize>>, names: Vec<String>) -> Result<Self, GroupError> {
        let n = table.len();
        let fail = |axiom, witness: Vec<usize>| Err(GroupError { axiom, witness });
        if n == 0 {
            return fail("nonempty", vec![]);
        }
        if names.len() != n {
            return fail("one name per element", vec![names.len()]);
        }
        for (a, row) in table.iter().enumerate() {
            if row.len() != n {
                return fail("square table", vec![a]);
            }
            if let Some(b) = row.iter().position(|&c| c >= n) {
                return fail("closure", vec![a, b]);
            }
        }
        for a in 0..n {
            if table[0][a] != a || table[a][0] != a {
                return fail("identity at index 0", vec![a]);
            }
        }
        for a in 0..n {
            for b in 0..n {
                for c in 0..n {
                    if table[table[a][b]][c] != table[a][table[b][c]] {
                        return fail("associativity", vec![a, b, c]);
                    }
                }
            }
        }
        let mut inverses = Vec::with_capacity(n);
        for a in 0..n {
            match (0..n).find(|&b| table[a][b] == 0 && table[b][a] == 0) {
                Some(b) => inverses.push(b),
                None => return fail("inverses", vec![a]),
            }
        }
        Ok(GroupTable {
            table,
            names,
            inverses,
        })
    }

    /// `ℤ_n` with `g_i g_j = g_{i+j mod n}`.
    pub fn cyclic(n: usize) -> Self {
        let table = (0..n)
            .map(|a| (0..n).map(|b| (a + b) % n).collect())
            .collect();
        let names = (0..n).map(|i| format!("g{i}")).collect();
        Self::with_names(table, names).expect("cyclic group")
    }

    /// Symmetric group `S_n`: permutations in lexicographic order (identity
    /// first), composed as functions, `(στ)(x) = σ(τ(x))`.
    pub fn symmetric(n: usize) -> Self {
        let mut perms: Vec<Vec<usize>> = Vec::new();
        permutations(&mut (0..n).collect(), 0, &mut perms);
        perms.sort();
        let index = |p: &Vec<usize>| perms.binary_search(p).expect("permutation");
        let table = perms
            .iter()
            .map(|s| {
                perms
                    .iter()
                    .map(|t| index(&t.iter().map(|&x| s[x]).collect()))
                    .collect()
            })
            .collect();
        let names = perms
            .iter()
            .map(|p| {
                format!(
                    "[{}]",
                    p.iter()
                        .map(|x| (x + 1).to_string())
                        .collect::<Vec<_>>()
                        .join("")
                )
            })
            .collect();
        Self::with_names(table, names).expect("symmetric group")
    }

    /// Dihedral group of order `2n`: element `r^a s^b` at index `2a + b`.
    pub fn dihedral(n: usize) -> Self {
        let idx = |a: usize, b: usize| 2 * a + b;
        let mut table = vec![vec![0; 2 * n]; 2 * n];
        for a1 in 0..n {
            for b1 in 0..2 {
                for a2 in 0..n {
                    for b2 in 0..2 {
                        // r^a1 s^b1 r^a2 s^b2 = r^(a1 ± a2) s^(b1+b2)
                        let a = if b1 == 0 {
                            (a1 + a2) % n
                        } else {
                            (a1 + n - a2) % n
                        };
                        table[idx(a1, b1)][idx(a2, b2)] = idx(a, (b1 + b2) % 2);
                    }
                }
            }
        }
        let names = (0..2 * n)
            .map(|i| format!("r{}{}", i / 2, if i % 2 == 1 { "s" } else { "" }))
            .collect();
        Self::with_names(table, names).expect("dihedral group")
    }

    /// `G × H` with `(g, h)` at index `g·|H| + h`.
    pub fn direct_product(g: &GroupTable, h: &GroupTable) -> Self {
        let (ng, nh) = (g.order(), h.order());
        let table = (0..ng * nh)
            .map(|x| {
                (0..ng * nh)
                    .map(|y| g.mul(x / nh, y / nh) * nh + h.mul(x % nh, y % nh))
                    .collect()
            })
            .collect();
        let names = (0..ng * nh)
            .map(|x| format!("({},{})", g.names[x / nh], h.names[x % nh]))
            .collect();
        Self::with_names(table, names).expect("direct product")
    }

    pub fn order(&self) -> usize {
        self.table.len()
    }

    pub fn mul(&self, a: usize, b: usize) -> usize {
        self.table[a][b]
    }

    pub fn inverse(&self, a: usize) -> usize {
        self.inverses[a]
    }

    pub fn names(&self) -> &[String] {
        &self.names
    }

    pub fn rows(&self) -> &[Vec<usize>] {
        &self.table
    }

    pub fn is_abelian(&self) -> bool {
        let n = self.order();
        (0..n).all(|a| (0..n).all(|b| self.mul(a, b) == self.mul(b, a)))
    }
}

fn permutations(items: &mut Vec<usize>, k: usize, out: &mut Vec<Vec<usize>>) {
    if k == items.len() {
        out.push(items.clone());
        return;
    }
    for i in k..items.len() {
        items.swap(k, i);
        permutations(items, k + 1, out);
        items.swap(k, i);
    }
}

#[derive(Debug, Clone, PartialEq, thiserror::Error)]
pub enum HopfError {
    #[error(transparent)]
    Algebra(#[from] AlgebraError),
    #[error("Hopf axioms fail:\n{0}")]
    AxiomsFailed(Report),
    #[error("antipode is not invertible")]
    SingularAntipode,
    #[error("Haar integral equations have no solution")]
    NoHaar,
    #[error("Haar integral equations have a {0}-dimensional solution space")]
    NonUniqueHaar(usize),
    #[error("Haar functional is not tracial")]
    HaarNotTracial,
    #[error("Haar functional is not positive definite (min eigenvalue {0:e})")]
    HaarNotPositive(f64),
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct HopfStarAlgebra<S> {
    alg: StarAlgebra<S>,
    comult: Vec<SparseVec<S>>,
    counit: Vec<S>,
    antipode: Vec<SparseVec<S>>,
}

impl<S: Scalar> HopfStarAlgebra<S> {
    /// `comult[i]` is `Δe_i` over flattened pairs, `antipode[i]` is `S(e_i)`.
    pub fn new(
        alg: StarAlgebra<S>,
        comult: Vec<SparseVec<S>>,
        counit: Vec<S>,
        antipode: Vec<SparseVec<S>>,
    ) -> Result<Self, AlgebraError> {
        let n = alg.dim();
        for (len, want) in [(comult.len(), n), (counit.len(), n), (antipode.len(), n)] {
            if len != want {
                return Err(AlgebraError::DimensionMismatch {
                    expected: want,
                    got: len,
                });
            }
        }
        let clean =
            |vs: Vec<SparseVec<S>>, bound: usize| -> Result<Vec<SparseVec<S>>, AlgebraError> {
                vs.into_iter()
                    .map(|v| {
                        let mut acc = Accumulator::new();
                        for (k, c) in &v {
                            if *k >= bound {
                                return Err(AlgebraError::IndexOutOfRange {
                                    index: *k,
                                    dim: bound,
                                });
                            }
                            acc.add(*k, c);
                        }
                        Ok(acc.finish())
                    })
                    .collect()
            };
        let comult = clean(comult, n * n)?;
        let antipode = clean(antipode, n)?;
        Ok(HopfStarAlgebra {
            alg,
            comult,
            counit,
            antipode,
        })
    }

    pub fn algebra(&self) -> &StarAlgebra<S> {
        &self.alg
    }

    pub fn into_algebra(self) -> StarAlgebra<S> {
        self.alg
    }

    pub fn dim(&self) -> usize {
        self.alg.dim()
    }

    pub fn comult_basis(&self, i: usize) -> &SparseVec<S> {
        &self.comult[i]
    }

    pub fn counit(&self) -> &[S] {
        &self.counit
    }

    pub fn antipode_basis(&self, i: usize) -> &SparseVec<S> {
        &self.antipode[i]
    }

    pub fn comult(&self, x: &[(usize, S)]) -> SparseVec<S> {
        let mut acc = Accumulator::new();
        for (i, c) in x {
            acc.add_scaled(&self.comult[*i], c);
        }
        acc.finish()
    }

    pub fn antipode(&self, x: &[(usize, S)]) -> SparseVec<S> {
        let mut acc = Accumulator::new();
        for (i, c) in x {
            acc.add_scaled(&self.antipode[*i], c);
        }
        acc.finish()
    }

    pub fn counit_of(&self, x: &[(usize, S)]) -> S {
        x.iter().fold(S::zero(), |acc, (i, c)| {
            acc + &(c.clone() * &self.counit[*i])
        })
    }

    /// Copy with a replaced antipode; for exercising the checker.
    pub fn with_antipode(&self, antipode: Vec<SparseVec<S>>) -> Result<Self, AlgebraError> {
        Self::new(
            self.alg.clone(),
            self.comult.clone(),
            self.counit.clone(),
            antipode,
        )
    }

    /// Copy with a replaced comultiplication; for exercising the checker.
    pub fn with_comult(&self, comult: Vec<SparseVec<S>>) -> Result<Self, AlgebraError> {
        Self::new(
            self.alg.clone(),
            comult,
            self.counit.clone(),
            self.antipode.clone(),
        )
    }

    /// `Δ^{(k)} e_i ∈ H^{⊗k}` for every basis element, flattened row-major.
    /// `k = 1` is the identity, `k = 2` is `Δ`.
    pub fn iterated_comult(&self, k: usize) -> Vec<SparseVec<S>> {
        assert!(k >= 1, "iterated coproduct needs k ≥ 1");
        let n = self.dim();
        let mut cur: Vec<SparseVec<S>> = (0..n).map(basis_vector).collect();
        let mut tail = 1usize;
        for _ in 1..k {
            // Apply Δ to the leading tensor factor.
            cur = cur
                .iter()
                .map(|v| {
                    let mut acc = Accumulator::new();
                    for (idx, c) in v {
                        let (lead, rest) = (idx / tail, idx % tail);
                        for (jk, d) in &self.comult[lead] {
                            acc.add(jk * tail + rest, &(c.clone() * d));
                        }
                    }
                    acc.finish()
                })
                .collect();
            tail *= n;
        }
        cur
    }
}

/// Product in `A ⊗ A` of two elements over flattened pairs.
pub(crate) fn mul_tensor2<S: Scalar>(
    a: &StarAlgebra<S>,
    x: &[(usize, S)],
    y: &[(usize, S)],
) -> SparseVec<S> {
    let n = a.dim();
    let mut acc = Accumulator::new();
    for (p, c) in x {
        for (q, d) in y {
            let coeff = c.clone() * d;
            let prod = kron(a.mul_basis(p / n, q / n), a.mul_basis(p % n, q % n), n);
            acc.add_scaled(&prod, &coeff);
        }
    }
    acc.finish()
}

/// Verifies coassociativity, counit laws, multiplicativity of `Δ` and `χ`,
/// the antipode law, `S² = id`, `*∘S∘*∘S = id` and `Δ(x*) = Δ(x)^{*⊗*}`.
pub fn check_hopf_axioms<S: Scalar>(h: &HopfStarAlgebra<S>) -> Report {
    let n = h.dim();
    let a = h.algebra();
    let unit = sparse_from_dense(a.unit());
    let mut report = Report::new();

    let find = |f: &dyn Fn(usize) -> bool| (0..n).find(|&i| !f(i));
    let find2 = |f: &dyn Fn(usize, usize) -> bool| {
        (0..n)
            .flat_map(|i| (0..n).map(move |j| (i, j)))
            .find(|&(i, j)| !f(i, j))
    };

    let coassoc = find(&|i| {
        let d = h.comult_basis(i);
        let mut left = Accumulator::new();
        let mut right = Accumulator::new();
        for (jk, c) in d {
            let (j, k) = (jk / n, jk % n);
            for (pq, e) in h.comult_basis(j) {
                left.add(pq * n + k, &(c.clone() * e));
            }
            for (pq, e) in h.comult_basis(k) {
                right.add(j * n * n + pq, &(c.clone() * e));
            }
        }
        left.finish() == right.finish()
    });
    report.record(
        "coassociativity",
        coassoc.map(|i| Witness::new([i], "(Δ⊗id)Δ != (id⊗Δ)Δ")),
    );

    let counit_left = find(&|i| {
        let mut acc = Accumulator::new();
        for (jk, c) in h.comult_basis(i) {
            acc.add(jk % n, &(c.clone() * &h.counit[jk / n]));
        }
        acc.finish() == basis_vector(i)
    });
    report.record(
        "counit_left",
        counit_left.map(|i| Witness::new([i], "(χ⊗id)Δ != id")),
    );
    let counit_right = find(&|i| {
        let mut acc = Accumulator::new();
        for (jk, c) in h.comult_basis(i) {
            acc.add(jk / n, &(c.clone() * &h.counit[jk % n]));
        }
        acc.finish() == basis_vector(i)
    });
    report.record(
        "counit_right",
        counit_right.map(|i| Witness::new([i], "(id⊗χ)Δ != id")),
    );

    let unit2 = kron(&unit, &unit, n);
    let comult_unit = h.comult(&unit) == unit2;
    report.record(
        "comult_unit",
        (!comult_unit).then(|| Witness::new([], "Δ(1) != 1⊗1")),
    );
    let comult_mult = find2(&|i, j| {
        h.comult(a.mul_basis(i, j)) == mul_tensor2(a, h.comult_basis(i), h.comult_basis(j))
    });
    report.record(
        "comult_multiplicative",
        comult_mult.map(|(i, j)| Witness::new([i, j], "Δ(e_i e_j) != Δ(e_i)Δ(e_j)")),
    );

    let counit_unit = h.counit_of(&unit) == S::one();
    report.record(
        "counit_unit",
        (!counit_unit).then(|| Witness::new([], "χ(1) != 1")),
    );
    let counit_mult =
        find2(&|i, j| h.counit_of(a.mul_basis(i, j)) == h.counit[i].clone() * &h.counit[j]);
    report.record(
        "counit_multiplicative",
        counit_mult.map(|(i, j)| Witness::new([i, j], "χ(e_i e_j) != χ(e_i)χ(e_j)")),
    );

    let scaled_unit = |c: &S| -> SparseVec<S> {
        let mut acc = Accumulator::new();
        acc.add_scaled(&unit, c);
        acc.finish()
    };
    let antipode_left = find(&|i| {
        let mut acc = Accumulator::new();
        for (jk, c) in h.comult_basis(i) {
            let p = a.mul_sparse(h.antipode_basis(jk / n), &basis_vector(jk % n));
            acc.add_scaled(&p, c);
        }
        acc.finish() == scaled_unit(&h.counit[i])
    });
    report.record(
        "antipode_left",
        antipode_left.map(|i| Witness::new([i], "m(S⊗id)Δ(e_i) != χ(e_i)1")),
    );
    let antipode_right = find(&|i| {
        let mut acc = Accumulator::new();
        for (jk, c) in h.comult_basis(i) {
            let p = a.mul_sparse(&basis_vector(jk / n), h.antipode_basis(jk % n));
            acc.add_scaled(&p, c);
        }
        acc.finish() == scaled_unit(&h.counit[i])
    });
    report.record(
        "antipode_right",
        antipode_right.map(|i| Witness::new([i], "m(id⊗S)Δ(e_i) != χ(e_i)1")),
    );

    let involutive = find(&|i| h.antipode(h.antipode_basis(i)) == basis_vector(i));
    report.record(
        "antipode_involutive",
        involutive.map(|i| Witness::new([i], "S²(e_i) != e_i")),
    );
    let star_compat = find(&|i| {
        let x = a.star_sparse(&h.antipode(&a.star_sparse(h.antipode_basis(i))));
        x == basis_vector(i)
    });
    report.record(
        "antipode_star",
        star_compat.map(|i| Witness::new([i], "(S((S e_i)*))* != e_i")),
    );

    let comult_star = find(&|i| {
        let lhs = h.comult(a.star_basis(i));
        let mut acc = Accumulator::new();
        for (jk, c) in h.comult_basis(i) {
            let t = kron(a.star_basis(jk / n), a.star_basis(jk % n), n);
            acc.add_scaled(&t, &c.conj());
        }
        lhs == acc.finish()
    });
    report.record(
        "comult_star",
        comult_star.map(|i| Witness::new([i], "Δ(e_i*) != (*⊗*)Δ(e_i)")),
    );
    report
}

/// Group algebra `ℂ[G]`: `Δg = g⊗g`, `χ(g) = 1`, `S(g) = g⁻¹`, `g* = g⁻¹`.
pub fn group_algebra(g: &GroupTable) -> HopfStarAlgebra<GaussRat> {
    let n = g.order();
    let one = GaussRat::from_i64(1);
    let mult = (0..n)
        .flat_map(|a| (0..n).map(move |b| (a, b)))
        .map(|(a, b)| (a, b, g.mul(a, b), one.clone()));
    let mut unit = vec![GaussRat::from_i64(0); n];
    unit[0] = one.clone();
    let star = (0..n).map(|a| (a, g.inverse(a), one.clone()));
    let alg =
        StarAlgebra::from_triplets(g.names().to_vec(), mult, unit, star).expect("group algebra");
    let comult = (0..n).map(|a| basis_vector(a * n + a)).collect();
    let antipode = (0..n).map(|a| basis_vector(g.inverse(a))).collect();
    HopfStarAlgebra::new(alg, comult, vec![one; n], antipode).expect("group algebra")
}

/// Function algebra on `G`, presented as `(ℂ[G]^op)*`: indicator basis `δ_g`,
/// pointwise product, `Δδ_g = Σ_{hk=g} δ_k ⊗ δ_h`, `χ(δ_g) = [g = e]`,
/// `S(δ_g) = δ_{g⁻¹}`, `δ_g* = δ_g`.
pub fn function_algebra(g: &GroupTable) -> HopfStarAlgebra<GaussRat> {
    let n = g.order();
    let one = GaussRat::from_i64(1);
    let zero = GaussRat::from_i64(0);
    let labels = g.names().iter().map(|s| dual_label(s)).collect();
    let mult = (0..n).map(|a| (a, a, a, one.clone()));
    let star = (0..n).map(|a| (a, a, one.clone()));
    let alg = StarAlgebra::from_triplets(labels, mult, vec![one.clone(); n], star)
        .expect("function algebra");
    let mut comult = vec![Accumulator::new(); n];
    for h in 0..n {
        for k in 0..n {
            comult[g.mul(h, k)].add(k * n + h, &one);
        }
    }
    let mut counit = vec![zero; n];
    counit[0] = one;
    let antipode = (0..n).map(|a| basis_vector(g.inverse(a))).collect();
    HopfStarAlgebra::new(
        alg,
        comult.into_iter().map(Accumulator::finish).collect(),
        counit,
        antipode,
    )
    .expect("function algebra")
}

/// Label of the dual basis functional attached to `label`.
pub fn dual_label(label: &str) -> String {
    format!("δ[{label}]")
}

/// `S⁻¹` as a list of images of basis elements: `S` itself when `S² = id`,
/// otherwise an exact matrix inverse.
pub fn antipode_inverse<F: Field>(h: &HopfStarAlgebra<F>) -> Result<Vec<SparseVec<F>>, HopfError> {
    let n = h.dim();
    if (0..n).all(|i| h.antipode(h.antipode_basis(i)) == basis_vector(i)) {
        return Ok(h.antipode.clone());
    }
    // Column i of the matrix holds S(e_i); rows of the transposed problem.
    let mut m = vec![vec![F::zero(); n]; n];
    for i in 0..n {
        for (k, c) in h.antipode_basis(i) {
            m[*k][i] = c.clone();
        }
    }
    let inv = invert(&m).ok_or(HopfError::SingularAntipode)?;
    Ok((0..n)
        .map(|i| sparse_from_dense(&(0..n).map(|k| inv[k][i].clone()).collect::<Vec<_>>()))
        .collect())
}

/// `(H^op)*` on the dual basis; see the module docs for the orientation.
/// Counit `f ↦ f(1)`, antipode `f ↦ f∘S⁻¹`, star `f*(x) = conj f(S(x*))`.
pub fn dual_opposite<F: Field>(h: &HopfStarAlgebra<F>) -> Result<HopfStarAlgebra<F>, HopfError> {
    let report = check_hopf_axioms(h);
    if !report.is_ok() {
        return Err(HopfError::AxiomsFailed(report));
    }
    let n = h.dim();
    let a = h.algebra();
    let sinv = antipode_inverse(h)?;
    let labels = a.labels().iter().map(|s| dual_label(s)).collect();

    // φ^p φ^q = Σ_t Δ_t[(p,q)] φ^t
    let mut products = vec![Accumulator::new(); n * n];
    for t in 0..n {
        for (pq, c) in h.comult_basis(t) {
            products[*pq].add(t, c);
        }
    }
    let unit = h.counit().to_vec();
    // (φ^t)*: value on e_s is conj φ^t(S(e_s*)).
    let mut stars = vec![Accumulator::new(); n];
    for s in 0..n {
        let img = h.antipode(a.star_basis(s));
        for (t, c) in img {
            stars[t].add(s, &c.conj());
        }
    }
    let alg = StarAlgebra::new(
        labels,
        products.into_iter().map(Accumulator::finish).collect(),
        unit,
        stars.into_iter().map(Accumulator::finish).collect(),
    )?;

    // Δφ^t = Σ_{p,q} m[q][p][t] φ^p ⊗ φ^q
    let mut comult = vec![Accumulator::new(); n];
    for (q, p, t, c) in a.structure_triplets() {
        comult[t].add(p * n + q, c);
    }
    let counit = a.unit().to_vec();
    // S*(φ^t) = φ^t ∘ S⁻¹ = Σ_p [S⁻¹(e_p)]_t φ^p
    let mut antipode = vec![Accumulator::new(); n];
    for (p, img) in sinv.iter().enumerate() {
        for (t, c) in img {
            antipode[*t].add(p, c);
        }
    }
    Ok(HopfStarAlgebra::new(
        alg,
        comult.into_iter().map(Accumulator::finish).collect(),
        counit,
        antipode.into_iter().map(Accumulator::finish).collect(),
    )?)
}

/// Bilinear form `H₊ × H₋ → ℂ`, entry `(i, j) = ⟨p_i, a_j⟩`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PairingMatrix<S> {
    pub entries: Vec<Vec<S>>,
}

impl<S: Scalar> PairingMatrix<S> {
    pub fn new(entries: Vec<Vec<S>>) -> Self {
        PairingMatrix { entries }
    }

    /// `⟨e_i, φ^j⟩ = δ_ij`.
    pub fn evaluation(n: usize) -> Self {
        PairingMatrix {
            entries: (0..n)
                .map(|i| {
                    (0..n)
                        .map(|j| if i == j { S::one() } else { S::zero() })
                        .collect()
                })
                .collect(),
        }
    }

    pub fn scaled(&self, c: &S) -> Self {
        PairingMatrix {
            entries: self
                .entries
                .iter()
                .map(|r| r.iter().map(|x| x.clone() * c).collect())
                .collect(),
        }
    }

    pub fn pair(&self, p: &[(usize, S)], a: &[(usize, S)]) -> S {
        let mut acc = S::zero();
        for (i, x) in p {
            for (j, y) in a {
                acc += &(x.clone() * &self.entries[*i][*j] * y);
            }
        }
        acc
    }

    fn pair2(&self, n: usize, pp: &[(usize, S)], a: &[(usize, S)], b: &[(usize, S)]) -> S {
        // Σ c ⟨e_j, a⟩⟨e_k, b⟩ over pp = Σ c e_j ⊗ e_k
        let mut acc = S::zero();
        for (jk, c) in pp {
            let x = self.pair(&basis_vector(jk / n), a);
            let y = self.pair(&basis_vector(jk % n), b);
            acc += &(c.clone() * &x * &y);
        }
        acc
    }
}

/// Verifies that `b` exhibits `hm ≅ (hp^op)*`: non-degeneracy and the three
/// pairing identities, each on basis elements.
pub fn check_pairing<F: Field>(
    hp: &HopfStarAlgebra<F>,
    hm: &HopfStarAlgebra<F>,
    b: &PairingMatrix<F>,
) -> Report {
    let n = hp.dim();
    let mut report = Report::new();
    let shape_ok = hm.dim() == n && b.entries.len() == n && b.entries.iter().all(|r| r.len() == n);
    if !shape_ok {
        report.fail(
            "dimensions",
            Witness::new(
                [n, hm.dim(), b.entries.len()],
                "dim H₊, dim H₋ and the pairing shape disagree",
            ),
        );
        return report;
    }
    report.pass("dimensions");
    let r = rank(&b.entries);
    report.record(
        "nondegenerate",
        (r < n).then(|| Witness::new([r], format!("pairing has rank {r} < {n}"))),
    );

    let (ap, am) = (hp.algebra(), hm.algebra());
    let e = basis_vector::<F>;
    let mut mult = None;
    'm: for p in 0..n {
        for i in 0..n {
            for j in 0..n {
                let lhs = b.pair(&e(p), am.mul_basis(i, j));
                let rhs = b.pair2(n, hp.comult_basis(p), &e(i), &e(j));
                if lhs != rhs {
                    mult = Some(Witness::new([p, i, j], "⟨p, ab⟩ != ⟨p₍₁₎, a⟩⟨p₍₂₎, b⟩"));
                    break 'm;
                }
            }
        }
    }
    report.record("pairing_multiplicative", mult);

    let mut comult = None;
    'c: for q in 0..n {
        for p in 0..n {
            for i in 0..n {
                let lhs = b.pair(ap.mul_basis(q, p), &e(i));
                // Σ c ⟨p, a_j⟩⟨q, a_k⟩ over Δa = Σ c a_j ⊗ a_k
                let mut rhs = F::zero();
                for (jk, c) in hm.comult_basis(i) {
                    rhs += &(c.clone() * &b.pair(&e(p), &e(jk / n)) * &b.pair(&e(q), &e(jk % n)));
                }
                if lhs != rhs {
                    comult = Some(Witness::new([q, p, i], "⟨qp, a⟩ != ⟨p, a₍₁₎⟩⟨q, a₍₂₎⟩"));
                    break 'c;
                }
            }
        }
    }
    report.record("pairing_comultiplicative", comult);

    let mut star = None;
    's: for p in 0..n {
        let sp = hp.antipode(ap.star_basis(p));
        for i in 0..n {
            let lhs = b.pair(&e(p), am.star_basis(i));
            let rhs = b.pair(&sp, &e(i)).conj();
            if lhs != rhs {
                star = Some(Witness::new([p, i], "⟨p, a*⟩ != conj⟨S(p*), a⟩"));
                break 's;
            }
        }
    }
    report.record("pairing_star", star);
    report
}

/// Normalized two-sided Haar functional: the unique `t` with
/// `(id⊗t)Δ(x) = t(x)1 = (t⊗id)Δ(x)` and `t(1) = 1`, solved exactly and then
/// certified tracial and positive definite.
pub fn haar_functional<F: Field>(h: &HopfStarAlgebra<F>) -> Result<LinearFunctional<F>, HopfError> {
    let n = h.dim();
    let a = h.algebra();
    let unit = a.unit();
    let mut rows: Vec<(SparseVec<F>, F)> = Vec::new();
    for i in 0..n {
        // coordinate q of (id⊗t)Δe_i − t_i·1 and of (t⊗id)Δe_i − t_i·1
        let mut left = vec![Accumulator::new(); n];
        let mut right = vec![Accumulator::new(); n];
        for (jk, c) in h.comult_basis(i) {
            left[jk / n].add(jk % n, c);
            right[jk % n].add(jk / n, c);
        }
        for side in [left, right] {
            for (q, mut acc) in side.into_iter().enumerate() {
                acc.add(i, &-unit[q].clone());
                let row = acc.finish();
                if !row.is_empty() {
                    rows.push((row, F::zero()));
                }
            }
        }
    }
    rows.push((sparse_from_dense(unit), F::one()));
    let t = solve_unique(n, rows).map_err(|e| match e {
        SolveError::Inconsistent => HopfError::NoHaar,
        SolveError::Underdetermined(d) => HopfError::NonUniqueHaar(d),
    })?;
    let t = LinearFunctional::new(t);
    if !is_tracial(a, &t) {
        return Err(HopfError::HaarNotTracial);
    }
    let g = gram_positivity(a, &t)?;
    if !g.is_positive_definite {
        return Err(HopfError::HaarNotPositive(g.min_eigenvalue));
    }
    Ok(t)
}
