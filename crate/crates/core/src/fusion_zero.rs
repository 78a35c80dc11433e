//! The zero-level fusion *-algebra `F = ⊕ ℂV_{ε,η}` built from a fusion
//! datum, its corner traces `ω_ε`, and the weight-zero module count.
//!
//! Sectors compose like matrix units: a label `a ∈ V_{η,ν}` can be multiplied
//! on the right by `b ∈ V_{ε,η}`, and the product `a·b = Σ_c N[a][b][c] c`
//! lands in `V_{ε,ν}`. A datum stores the sector pair `(ε, η)` of each label
//! as `(source, target)`: `a·b` is defined when `source(a) = target(b)`.

use std::collections::BTreeMap;
use std::fmt;

use num_complex::Complex64;

use crate::finalg::algebra::{
    gram_positivity, is_tracial, AlgebraError, LinearFunctional, StarAlgebra,
};
use crate::finalg::linalg::{sparse_from_dense, Accumulator, SparseVec};
use crate::finalg::scalar::{Field, GaussRat, Scalar};
use crate::finalg::tensor_product;
use crate::finalg::wedderburn::{
    wedderburn_blocks, BlockDecomposition, WedderburnConfig, WedderburnError,
};
use crate::hopf::{check_hopf_axioms, GroupTable, HopfError, HopfStarAlgebra};
use crate::report::{Report, Witness};

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Sign {
    Plus,
    Minus,
}

impl Sign {
    pub fn as_char(self) -> char {
        match self {
            Sign::Plus => '+',
            Sign::Minus => '-',
        }
    }

    pub fn from_char(c: char) -> Option<Self> {
        match c {
            '+' => Some(Sign::Plus),
            '-' | '−' => Some(Sign::Minus),
            _ => None,
        }
    }
}

impl fmt::Display for Sign {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.as_char())
    }
}

/// Sector `(ε, η)` of a label: it lives in `V_{ε,η}`.
pub type Sector = (Sign, Sign);

/// Labeled fusion rules in the four sectors. Construction only checks shape;
/// [`validate_fusion`] checks the axioms.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FusionDatum {
    labels: Vec<String>,
    sectors: Vec<Sector>,
    /// `N[a][b][c]` at `(a·L + b)·L + c`.
    coeffs: Vec<u64>,
    bar: Vec<usize>,
    unit_plus: usize,
    unit_minus: usize,
}

#[derive(Debug, Clone, PartialEq, thiserror::Error)]
pub enum FusionError {
    #[error("malformed fusion datum: {0}")]
    Malformed(String),
    #[error("fusion datum violates its axioms:\n{0}")]
    InvalidFusion(Report),
    #[error(transparent)]
    Algebra(#[from] AlgebraError),
    #[error(transparent)]
    Hopf(#[from] HopfError),
    #[error(transparent)]
    Wedderburn(#[from] WedderburnError),
    #[error("non-integer fusion multiplicity (residual {residual:e}, tolerance {tol:e})")]
    ResidualTooLarge { residual: f64, tol: f64 },
    #[error("ω is not tracial on the corner")]
    NotTracial,
    #[error("ω is not positive definite on the corner (min eigenvalue {0:e})")]
    NotPositive(f64),
}

impl FusionDatum {
    /// `fusion` lists `(a, b, c, N[a][b][c])`; repeated triples add up.
    pub fn new(
        labels: Vec<String>,
        sectors: Vec<Sector>,
        fusion: impl IntoIterator<Item = (usize, usize, usize, u64)>,
        bar: Vec<usize>,
        unit_plus: usize,
        unit_minus: usize,
    ) -> Result<Self, FusionError> {
        let l = labels.len();
        if sectors.len() != l || bar.len() != l {
            return Err(FusionError::Malformed(format!(
                "{l} labels but {} sectors and {} bar entries",
                sectors.len(),
                bar.len()
            )));
        }
        let check = |i: usize| {
            if i >= l {
                Err(FusionError::Malformed(format!(
                    "label index {i} out of range for {l} labels"
                )))
            } else {
                Ok(())
            }
        };
        check(unit_plus)?;
        check(unit_minus)?;
        for &b in &bar {
            check(b)?;
        }
        let mut coeffs = vec![0u64; l * l * l];
        for (a, b, c, n) in fusion {
            check(a)?;
            check(b)?;
            check(c)?;
            coeffs[(a * l + b) * l + c] += n;
        }
        Ok(FusionDatum {
            labels,
            sectors,
            coeffs,
            bar,
            unit_plus,
            unit_minus,
        })
    }

    /// Group-law datum: the elements of `g` in `V_{+,+}` with
    /// `N[g][h][gh] = 1`, `bar = inverse`, `1₊ = e`, plus a single unit
    /// label `1₋` in `V_{−,−}`.
    pub fn group(g: &GroupTable) -> Self {
        let n = g.order();
        let mut labels = g.names().to_vec();
        labels.push("1-".into());
        let mut sectors = vec![(Sign::Plus, Sign::Plus); n];
        sectors.push((Sign::Minus, Sign::Minus));
        let mut fusion: Vec<_> = (0..n)
            .flat_map(|a| (0..n).map(move |b| (a, b)))
            .map(|(a, b)| (a, b, g.mul(a, b), 1))
            .collect();
        fusion.push((n, n, n, 1));
        let mut bar: Vec<usize> = (0..n).map(|a| g.inverse(a)).collect();
        bar.push(n);
        Self::new(labels, sectors, fusion, bar, 0, n).expect("group datum")
    }

    /// The datum with only `1₊` and `1₋`.
    pub fn units_only() -> Self {
        Self::new(
            vec!["1+".into(), "1-".into()],
            vec![(Sign::Plus, Sign::Plus), (Sign::Minus, Sign::Minus)],
            [(0, 0, 0, 1), (1, 1, 1, 1)],
            vec![0, 1],
            0,
            1,
        )
        .expect("units datum")
    }

    pub fn len(&self) -> usize {
        self.labels.len()
    }

    pub fn is_empty(&self) -> bool {
        self.labels.is_empty()
    }

    pub fn labels(&self) -> &[String] {
        &self.labels
    }

    pub fn sectors(&self) -> &[Sector] {
        &self.sectors
    }

    pub fn bar(&self) -> &[usize] {
        &self.bar
    }

    pub fn unit(&self, eps: Sign) -> usize {
        match eps {
            Sign::Plus => self.unit_plus,
            Sign::Minus => self.unit_minus,
        }
    }

    pub fn n(&self, a: usize, b: usize, c: usize) -> u64 {
        let l = self.len();
        self.coeffs[(a * l + b) * l + c]
    }

    /// Nonzero coefficients `(a, b, c, N)` in lexicographic order.
    pub fn fusion_entries(&self) -> Vec<(usize, usize, usize, u64)> {
        let l = self.len();
        self.coeffs
            .iter()
            .enumerate()
            .filter(|(_, &n)| n != 0)
            .map(|(k, &n)| (k / (l * l), (k / l) % l, k % l, n))
            .collect()
    }

    /// Whether `a·b` is defined.
    pub fn composable(&self, a: usize, b: usize) -> bool {
        self.sectors[a].0 == self.sectors[b].1
    }

    /// Copy with `N[a][b][c]` replaced; for exercising the validator.
    pub fn with_coefficient(&self, a: usize, b: usize, c: usize, n: u64) -> Self {
        let mut out = self.clone();
        let l = self.len();
        out.coeffs[(a * l + b) * l + c] = n;
        out
    }

    /// Copy with the duality replaced; for exercising the validator.
    pub fn with_bar(&self, bar: Vec<usize>) -> Result<Self, FusionError> {
        let entries = self.fusion_entries();
        Self::new(
            self.labels.clone(),
            self.sectors.clone(),
            entries,
            bar,
            self.unit_plus,
            self.unit_minus,
        )
    }

    /// Equality of everything except the label names.
    pub fn same_structure(&self, other: &FusionDatum) -> bool {
        self.sectors == other.sectors
            && self.coeffs == other.coeffs
            && self.bar == other.bar
            && self.unit_plus == other.unit_plus
            && self.unit_minus == other.unit_minus
    }
}

/// Lists violations of the datum axioms: sector compatibility, associativity,
/// unit laws, Frobenius reciprocity and the duality involution.
pub fn validate_fusion(d: &FusionDatum) -> Report {
    let l = d.len();
    let mut report = Report::new();
    let sec = &d.sectors;

    let mut bad_sector = None;
    for (a, b, c, _) in d.fusion_entries() {
        if !d.composable(a, b) || sec[c] != (sec[b].0, sec[a].1) {
            bad_sector = Some(Witness::new(
                [a, b, c],
                "N[a][b][c] ≠ 0 outside the composable sectors",
            ));
            break;
        }
    }
    let units_ok = sec[d.unit_plus] == (Sign::Plus, Sign::Plus)
        && sec[d.unit_minus] == (Sign::Minus, Sign::Minus);
    if bad_sector.is_none() && !units_ok {
        bad_sector = Some(Witness::new(
            [d.unit_plus, d.unit_minus],
            "units are not in V_{+,+} and V_{−,−}",
        ));
    }
    report.record("sector_compatibility", bad_sector);

    let mut assoc = None;
    'outer: for a in 0..l {
        for b in 0..l {
            for c in 0..l {
                for e in 0..l {
                    let lhs: u64 = (0..l).map(|x| d.n(a, b, x) * d.n(x, c, e)).sum();
                    let rhs: u64 = (0..l).map(|y| d.n(b, c, y) * d.n(a, y, e)).sum();
                    if lhs != rhs {
                        assoc = Some(Witness::new(
                            [a, b, c, e],
                            format!(
                                "Σ N[a][b][x]N[x][c][d] = {lhs} ≠ {rhs} = Σ N[b][c][y]N[a][y][d]"
                            ),
                        ));
                        break 'outer;
                    }
                }
            }
        }
    }
    report.record("associativity", assoc);

    let mut unit = None;
    'u: for b in 0..l {
        let left = d.unit(sec[b].1);
        let right = d.unit(sec[b].0);
        for c in 0..l {
            let want = u64::from(b == c);
            if d.n(left, b, c) != want || d.n(b, right, c) != want {
                unit = Some(Witness::new(
                    [b, c],
                    "N[1][b][c] or N[b][1][c] differs from δ_{b,c}",
                ));
                break 'u;
            }
        }
    }
    report.record("unit_laws", unit);

    let mut frob = None;
    'f: for a in 0..l {
        for b in 0..l {
            for c in 0..l {
                let n = d.n(a, b, c);
                if n != d.n(d.bar[a], c, b) || n != d.n(c, d.bar[b], a) {
                    frob = Some(Witness::new(
                        [a, b, c],
                        "N[a][b][c] ≠ N[bar a][c][b] or N[c][bar b][a]",
                    ));
                    break 'f;
                }
            }
        }
    }
    report.record("frobenius_reciprocity", frob);

    let mut bar = (0..l)
        .find(|&a| d.bar[d.bar[a]] != a || sec[d.bar[a]] != (sec[a].1, sec[a].0))
        .map(|a| Witness::new([a], "bar(bar(a)) ≠ a or bar does not transpose the sector"));
    if bar.is_none() {
        for u in [d.unit_plus, d.unit_minus] {
            if d.bar[u] != u {
                bar = Some(Witness::new([u], "bar does not fix the unit"));
            }
        }
    }
    report.record("bar_involution", bar);
    report
}

/// `F_{N⊂M}` as a *-algebra on the label basis, with sector bookkeeping.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ZeroLevelAlgebra {
    pub algebra: StarAlgebra<GaussRat>,
    pub sectors: Vec<Sector>,
    pub unit_plus: usize,
    pub unit_minus: usize,
}

/// Corner `V_{ε,ε}` as a unital *-algebra, with the labels it keeps.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Corner {
    pub algebra: StarAlgebra<GaussRat>,
    /// Positions of the corner labels in the full algebra.
    pub indices: Vec<usize>,
    pub sign: Sign,
}

impl ZeroLevelAlgebra {
    pub fn unit_label(&self, eps: Sign) -> usize {
        match eps {
            Sign::Plus => self.unit_plus,
            Sign::Minus => self.unit_minus,
        }
    }

    /// The `(ε, ε)` corner.
    pub fn corner(&self, eps: Sign) -> Corner {
        let indices: Vec<usize> = (0..self.sectors.len())
            .filter(|&i| self.sectors[i] == (eps, eps))
            .collect();
        let pos = |i: usize| indices.binary_search(&i).expect("corner is closed");
        let a = &self.algebra;
        let restrict = |v: &SparseVec<GaussRat>| -> SparseVec<GaussRat> {
            v.iter().map(|(k, c)| (pos(*k), c.clone())).collect()
        };
        let labels = indices.iter().map(|&i| a.labels()[i].clone()).collect();
        let products = indices
            .iter()
            .flat_map(|&i| indices.iter().map(move |&j| (i, j)))
            .map(|(i, j)| restrict(a.mul_basis(i, j)))
            .collect();
        let mut unit = vec![GaussRat::from_i64(0); indices.len()];
        unit[pos(self.unit_label(eps))] = GaussRat::from_i64(1);
        let stars = indices.iter().map(|&i| restrict(a.star_basis(i))).collect();
        let algebra = StarAlgebra::new(labels, products, unit, stars).expect("corner algebra");
        Corner {
            algebra,
            indices,
            sign: eps,
        }
    }
}

/// Builds `F` from a valid datum: `a·b = Σ N[a][b][c] c` on composable pairs,
/// `0` otherwise, `a* = bar(a)`, unit `1₊ + 1₋`.
pub fn zero_level_algebra(d: &FusionDatum) -> Result<ZeroLevelAlgebra, FusionError> {
    let report = validate_fusion(d);
    if !report.is_ok() {
        return Err(FusionError::InvalidFusion(report));
    }
    let l = d.len();
    let mult = d
        .fusion_entries()
        .into_iter()
        .map(|(a, b, c, n)| (a, b, c, GaussRat::from_i64(n as i64)));
    let mut unit = vec![GaussRat::from_i64(0); l];
    unit[d.unit_plus] = GaussRat::from_i64(1);
    unit[d.unit_minus] = GaussRat::from_i64(1);
    let star = (0..l).map(|a| (a, d.bar[a], GaussRat::from_i64(1)));
    let algebra = StarAlgebra::from_triplets(d.labels.clone(), mult, unit, star)?;
    Ok(ZeroLevelAlgebra {
        algebra,
        sectors: d.sectors.clone(),
        unit_plus: d.unit_plus,
        unit_minus: d.unit_minus,
    })
}

/// `ω_ε(v) = δ_{v = 1_ε}` for `v ∈ V_{ε,ε}`, zero on every other label.
pub fn omega_trace(z: &ZeroLevelAlgebra, eps: Sign) -> LinearFunctional<GaussRat> {
    let mut coords = vec![GaussRat::from_i64(0); z.algebra.dim()];
    coords[z.unit_label(eps)] = GaussRat::from_i64(1);
    LinearFunctional::new(coords)
}

/// `ω_ε` restricted to the corner algebra.
pub fn omega_on_corner(corner: &Corner, z: &ZeroLevelAlgebra) -> LinearFunctional<GaussRat> {
    let full = omega_trace(z, corner.sign);
    LinearFunctional::new(
        corner
            .indices
            .iter()
            .map(|&i| full.coords[i].clone())
            .collect(),
    )
}

/// Wedderburn blocks of the `(ε, ε)` corner, after certifying that `ω_ε` is
/// a faithful trace on it. Each block is one irreducible weight-zero module.
pub fn weight_zero_modules(
    d: &FusionDatum,
    eps: Sign,
    cfg: &WedderburnConfig,
) -> Result<BlockDecomposition, FusionError> {
    let z = zero_level_algebra(d)?;
    let corner = z.corner(eps);
    let omega = omega_on_corner(&corner, &z);
    if !is_tracial(&corner.algebra, &omega) {
        return Err(FusionError::NotTracial);
    }
    let g = gram_positivity(&corner.algebra, &omega)?;
    if !g.is_positive_definite {
        return Err(FusionError::NotPositive(g.min_eigenvalue));
    }
    Ok(wedderburn_blocks(&corner.algebra, cfg)?)
}

/// Fusion datum of the representation category of a Kac algebra, with the
/// dimension `d_a` of each block.
#[derive(Debug, Clone, PartialEq)]
pub struct HopfFusion {
    pub datum: FusionDatum,
    /// Block dimension per label of the `(+,+)` corner, in label order.
    pub dims: Vec<usize>,
    /// Largest distance of a computed multiplicity from its rounded value.
    pub max_residual: f64,
}

/// Labels are the Wedderburn blocks `ρ0, ρ1, …` of `H` in `V_{+,+}` followed
/// by `1-`. `N[a][b][c]` is the multiplicity of `ρ_c` in
/// `(ρ_b ⊗ ρ_a)∘Δ`, i.e. `tr((ρ_b⊗ρ_a)Δ(z_c)) / d_c`; `1₊` is the block on
/// which the counit is nonzero and `bar(a)` is the block with `S(z_a) = z_{bar a}`.
pub fn fusion_from_hopf<F: Field>(
    h: &HopfStarAlgebra<F>,
    cfg: &WedderburnConfig,
) -> Result<HopfFusion, FusionError> {
    let report = check_hopf_axioms(h);
    if !report.is_ok() {
        return Err(HopfError::AxiomsFailed(report).into());
    }
    let a = h.algebra();
    let n = a.dim();
    let blocks = wedderburn_blocks(a, cfg)?;
    let r = blocks.block_dims.len();
    let zs = &blocks.central_idempotents;
    let dims = blocks.block_dims.clone();
    let tol = cfg.tol;
    let zero = Complex64::new(0.0, 0.0);

    let rt: Vec<Complex64> = (0..n).map(|i| a.regular_trace(i).to_c64()).collect();
    // tr_reg(e_j e_k)
    let tr2: Vec<Complex64> = (0..n * n)
        .map(|jk| {
            a.mul_basis(jk / n, jk % n)
                .iter()
                .map(|(m, c)| c.to_c64() * rt[*m])
                .sum()
        })
        .collect();
    // chi[a][j] = tr_reg(e_j z_a) / d_a = character of ρ_a at e_j
    let chi: Vec<Vec<Complex64>> = (0..r)
        .map(|b| {
            (0..n)
                .map(|j| {
                    (0..n).map(|k| tr2[j * n + k] * zs[b][k]).sum::<Complex64>() / dims[b] as f64
                })
                .collect()
        })
        .collect();
    let dz: Vec<Vec<Complex64>> = (0..r)
        .map(|c| {
            let mut out = vec![zero; n * n];
            for i in 0..n {
                for (jk, v) in h.comult_basis(i) {
                    out[*jk] += zs[c][i] * v.to_c64();
                }
            }
            out
        })
        .collect();

    let mut max_residual: f64 = 0.0;
    let mut fusion = Vec::new();
    for x in 0..r {
        for y in 0..r {
            for c in 0..r {
                let mut t = zero;
                for (jk, v) in dz[c].iter().enumerate() {
                    if v.norm() > 0.0 {
                        t += v * chi[y][jk / n] * chi[x][jk % n];
                    }
                }
                let m = t / dims[c] as f64;
                let rounded = m.re.round();
                let residual = (m.re - rounded).abs().max(m.im.abs());
                max_residual = max_residual.max(residual);
                if residual >= tol || rounded < 0.0 {
                    return Err(FusionError::ResidualTooLarge { residual, tol });
                }
                if rounded > 0.0 {
                    fusion.push((x, y, c, rounded as u64));
                }
            }
        }
    }

    let counits: Vec<Complex64> = zs
        .iter()
        .map(|z| z.iter().zip(h.counit()).map(|(x, c)| x * c.to_c64()).sum())
        .collect();
    let trivial = (0..r)
        .find(|&b| (counits[b] - Complex64::new(1.0, 0.0)).norm() < tol)
        .ok_or_else(|| FusionError::Malformed("no block carries the counit".into()))?;

    let antipode_c64 = |z: &[Complex64]| -> Vec<Complex64> {
        let mut out = vec![zero; n];
        for (i, zi) in z.iter().enumerate() {
            for (k, c) in h.antipode_basis(i) {
                out[*k] += zi * c.to_c64();
            }
        }
        out
    };
    let mut bar = Vec::with_capacity(r + 1);
    for b in 0..r {
        let s = antipode_c64(&zs[b]);
        let matched = (0..r).find(|&c| s.iter().zip(&zs[c]).all(|(x, y)| (x - y).norm() < tol));
        bar.push(matched.ok_or_else(|| {
            FusionError::Malformed(format!("S(z_{b}) is not a block idempotent"))
        })?);
    }
    bar.push(r);
    fusion.push((r, r, r, 1));

    let mut labels: Vec<String> = (0..r).map(|b| format!("ρ{b}")).collect();
    labels.push("1-".into());
    let mut sectors = vec![(Sign::Plus, Sign::Plus); r];
    sectors.push((Sign::Minus, Sign::Minus));
    let datum = FusionDatum::new(labels, sectors, fusion, bar, trivial, r)?;
    let report = validate_fusion(&datum);
    if !report.is_ok() {
        return Err(FusionError::InvalidFusion(report));
    }
    Ok(HopfFusion {
        datum,
        dims,
        max_residual,
    })
}

/// Dimensions of the relative commutants `P_{+,0}, P_{+,1}, …, P_{+,max}`
/// of the depth-two subfactor described by `hf`, read off the fusion graph:
/// with `v_0 = 1₊` and `v_{m+1}[c] = Σ_{a,b} v_m[a] d_b N[a][b][c]`,
/// `dim P_{2m} = Σ v_m²` and `dim P_{2m+1} = Σ v_m v_{m+1}`.
pub fn depth_two_dimensions(hf: &HopfFusion, max_degree: usize) -> Vec<u64> {
    let d = &hf.datum;
    let r = hf.dims.len();
    let mut vs: Vec<Vec<u64>> = Vec::new();
    let mut v = vec![0u64; r];
    v[d.unit(Sign::Plus)] = 1;
    vs.push(v);
    while vs.len() <= max_degree / 2 + 1 {
        let last = vs.last().expect("nonempty");
        let next = (0..r)
            .map(|c| {
                (0..r)
                    .flat_map(|a| (0..r).map(move |b| (a, b)))
                    .map(|(a, b)| last[a] * hf.dims[b] as u64 * d.n(a, b, c))
                    .sum()
            })
            .collect();
        vs.push(next);
    }
    let dot = |x: &[u64], y: &[u64]| x.iter().zip(y).map(|(p, q)| p * q).sum::<u64>();
    (0..=max_degree)
        .map(|k| {
            let m = k / 2;
            if k % 2 == 0 {
                dot(&vs[m], &vs[m])
            } else {
                dot(&vs[m], &vs[m + 1])
            }
        })
        .collect()
}

/// Builds `H^{⊗k}` by iterated [`tensor_product`] and checks that the
/// iterated coproduct `Δ^{(k)}: H → H^{⊗k}` is a unital *-homomorphism.
/// Returns the report and `dim H^{⊗k}`.
pub fn coproduct_power_check<S: Scalar>(h: &HopfStarAlgebra<S>, k: usize) -> (Report, usize) {
    let a = h.algebra();
    let mut power = a.clone();
    for _ in 1..k {
        power = tensor_product(&power, a);
    }
    let n = a.dim();
    let dk = h.iterated_comult(k);
    let image = |x: &[(usize, S)]| -> SparseVec<S> {
        let mut acc = Accumulator::new();
        for (i, c) in x {
            acc.add_scaled(&dk[*i], c);
        }
        acc.finish()
    };
    let mut report = Report::new();
    let mult = (0..n)
        .flat_map(|i| (0..n).map(move |j| (i, j)))
        .find(|&(i, j)| image(a.mul_basis(i, j)) != power.mul_sparse(&dk[i], &dk[j]));
    report.record(
        "iterated_comult_multiplicative",
        mult.map(|(i, j)| Witness::new([i, j], "Δ^(k)(e_i e_j) ≠ Δ^(k)(e_i)Δ^(k)(e_j)")),
    );
    let unit = sparse_from_dense(a.unit());
    let punit = sparse_from_dense(power.unit());
    report.record(
        "iterated_comult_unital",
        (image(&unit) != punit).then(|| Witness::new([], "Δ^(k)(1) ≠ 1")),
    );
    let star = (0..n).find(|&i| image(a.star_basis(i)) != power.star_sparse(&dk[i]));
    report.record(
        "iterated_comult_star",
        star.map(|i| Witness::new([i], "Δ^(k)(e_i*) ≠ Δ^(k)(e_i)*")),
    );
    (report, power.dim())
}

/// Sparse map from label pairs to coefficients, for display and files.
pub fn fusion_table(d: &FusionDatum) -> BTreeMap<(usize, usize), Vec<(usize, u64)>> {
    let mut out: BTreeMap<(usize, usize), Vec<(usize, u64)>> = BTreeMap::new();
    for (a, b, c, n) in d.fusion_entries() {
        out.entry((a, b)).or_default().push((c, n));
    }
    out
}
