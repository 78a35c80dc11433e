//! Temperley–Lieb diagrams over Laurent polynomials in the modulus `δ`.
//!
//! A diagram on `n` strands pairs up `2n` boundary points, numbered
//! cyclically: bottom points `0..n` left to right, then top points right to
//! left, so top position `j` (from the left) is point `2n − 1 − j`. Planarity
//! means no two pairs interleave in this cyclic order.
//!
//! The product `xy` stacks `x` on top of `y`; each closed loop contributes a
//! factor `δ`. The Jones projections are `e_i = δ⁻¹ U_i`, with `U_i` the
//! cup-cap at positions `i, i+1`, so that `e_i² = e_i` and
//! `e_i e_{i±1} e_i = δ⁻² e_i`.

use std::collections::BTreeMap;
use std::fmt;

use crate::finalg::algebra::StarAlgebra;
use num_traits::{One, Zero};

use crate::finalg::scalar::{GaussRat, Laurent, Scalar};

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum TlError {
    #[error("strand counts differ: {left} vs {right}")]
    StrandMismatch { left: usize, right: usize },
    #[error("Jones projection index {i} out of range for {n} strands (need 1 ≤ i ≤ n−1)")]
    IndexOutOfRange { i: usize, n: usize },
    #[error("ambient strand count {n} too small; the word needs {needed}")]
    AmbientTooSmall { needed: usize, n: usize },
    #[error("invalid diagram: {0}")]
    InvalidDiagram(String),
    #[error("cabling multiplicity must be at least 1")]
    ZeroCable,
    #[error("Jones word failed its projection check: {0}")]
    NotProjection(&'static str),
}

/// A planar pairing of the `2n` boundary points of an `n`-strand rectangle.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct TLDiagram {
    n: usize,
    partner: Vec<usize>,
}

impl TLDiagram {
    /// Validates a partner array: a fixed-point-free, non-interleaving
    /// involution on `0..2n`.
    pub fn new(partner: Vec<usize>) -> Result<Self, TlError> {
        if !partner.len().is_multiple_of(2) {
            return Err(TlError::InvalidDiagram(format!(
                "odd number of points {}",
                partner.len()
            )));
        }
        let m = partner.len();
        for (p, &q) in partner.iter().enumerate() {
            if q >= m || q == p || partner[q] != p {
                return Err(TlError::InvalidDiagram(format!(
                    "point {p} is not properly paired"
                )));
            }
        }
        for p in 0..m {
            let q = partner[p];
            if p > q {
                continue;
            }
            for r in p + 1..q {
                let s = partner[r];
                if s < p || s > q {
                    return Err(TlError::InvalidDiagram(format!(
                        "pairs ({p},{q}) and ({r},{s}) cross"
                    )));
                }
            }
        }
        Ok(TLDiagram { n: m / 2, partner })
    }

    pub fn identity(n: usize) -> Self {
        let partner = (0..2 * n).map(|p| 2 * n - 1 - p).collect();
        TLDiagram { n, partner }
    }

    /// `U_i`: cup-cap joining positions `i` and `i+1` (1-based) on both sides.
    pub fn cup_cap(n: usize, i: usize) -> Result<Self, TlError> {
        if i == 0 || i >= n {
            return Err(TlError::IndexOutOfRange { i, n });
        }
        let mut d = Self::identity(n);
        let (a, b) = (i - 1, i);
        let (ta, tb) = (d.top(a), d.top(b));
        d.partner[a] = b;
        d.partner[b] = a;
        d.partner[ta] = tb;
        d.partner[tb] = ta;
        Ok(d)
    }

    pub fn strands(&self) -> usize {
        self.n
    }

    pub fn partner(&self) -> &[usize] {
        &self.partner
    }

    /// Point index of top position `j`.
    pub fn top(&self, j: usize) -> usize {
        2 * self.n - 1 - j
    }

    /// Number of strands connecting bottom to top.
    pub fn through_strands(&self) -> usize {
        (0..self.n).filter(|&p| self.partner[p] >= self.n).count()
    }

    /// Vertical reflection.
    pub fn reflect(&self) -> Self {
        let m = 2 * self.n;
        let mut partner = vec![0; m];
        for p in 0..m {
            partner[m - 1 - p] = m - 1 - self.partner[p];
        }
        TLDiagram { n: self.n, partner }
    }

    /// Stacks `self` on top of `below`; returns the diagram and the number
    /// of closed loops.
    pub fn compose(&self, below: &TLDiagram) -> Result<(TLDiagram, usize), TlError> {
        let n = self.n;
        if below.n != n {
            return Err(TlError::StrandMismatch {
                left: n,
                right: below.n,
            });
        }
        let m = 2 * n;
        // Middle position j is top(j) of `below` and bottom j of `self`.
        let mut visited = vec![false; n];
        let mut partner = vec![usize::MAX; m];
        // Walk from an external point; `upper` tells which diagram it lies in.
        let walk = |mut upper: bool, start: usize, visited: &mut Vec<bool>| -> usize {
            let mut p = start;
            loop {
                let d = if upper { self } else { below };
                let q = d.partner[p];
                let middle = if upper { q < n } else { q >= n };
                if !middle {
                    // External: result index is q in both cases.
                    return q;
                }
                let j = if upper { q } else { m - 1 - q };
                visited[j] = true;
                upper = !upper;
                p = if upper { j } else { m - 1 - j };
            }
        };
        for p in 0..m {
            if partner[p] != usize::MAX {
                continue;
            }
            let upper = p >= n;
            let q = walk(upper, p, &mut visited);
            partner[p] = q;
            partner[q] = p;
        }
        let mut loops = 0;
        for j in 0..n {
            if visited[j] {
                continue;
            }
            loops += 1;
            let mut k = j;
            loop {
                visited[k] = true;
                // bottom k of self -> partner (a middle point) -> top of below
                let a = self.partner[k];
                debug_assert!(a < n);
                visited[a] = true;
                let b = below.partner[m - 1 - a];
                debug_assert!(b >= n);
                k = m - 1 - b;
                if k == j {
                    break;
                }
            }
        }
        Ok((TLDiagram { n, partner }, loops))
    }

    /// Number of loops in the right closure (top position `j` joined to
    /// bottom position `j`).
    pub fn closure_loops(&self) -> usize {
        let m = 2 * self.n;
        let mut seen = vec![false; m];
        let mut loops = 0;
        for s in 0..m {
            if seen[s] {
                continue;
            }
            loops += 1;
            let mut p = s;
            loop {
                seen[p] = true;
                let q = self.partner[p];
                seen[q] = true;
                p = m - 1 - q;
                if p == s {
                    break;
                }
            }
        }
        loops
    }

    /// Adds `extra` through-strands on the right.
    pub fn embed(&self, extra: usize) -> Self {
        let (n, n2) = (self.n, self.n + extra);
        let map = |p: usize| if p < n { p } else { p + 2 * extra };
        let mut partner = vec![0; 2 * n2];
        for p in 0..2 * n {
            partner[map(p)] = map(self.partner[p]);
        }
        for j in n..n2 {
            let t = 2 * n2 - 1 - j;
            partner[j] = t;
            partner[t] = j;
        }
        TLDiagram { n: n2, partner }
    }

    /// Replaces each strand by `m` parallel strands.
    pub fn cable(&self, m: usize) -> Self {
        let mut partner = vec![0; 2 * self.n * m];
        for p in 0..2 * self.n {
            let q = self.partner[p];
            for t in 0..m {
                partner[m * p + t] = m * q + m - 1 - t;
            }
        }
        TLDiagram {
            n: self.n * m,
            partner,
        }
    }
}

impl fmt::Display for TLDiagram {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.n == 0 {
            return write!(f, "∅");
        }
        for p in 0..2 * self.n {
            let q = self.partner[p];
            if p < q {
                write!(f, "({p},{q})")?;
            }
        }
        Ok(())
    }
}

/// All planar diagrams on `n` strands, sorted.
pub fn tl_basis(n: usize) -> Vec<TLDiagram> {
    fn matchings(points: &[usize]) -> Vec<Vec<(usize, usize)>> {
        if points.is_empty() {
            return vec![vec![]];
        }
        let mut out = Vec::new();
        for k in (1..points.len()).step_by(2) {
            let inner = matchings(&points[1..k]);
            let outer = matchings(&points[k + 1..]);
            for a in &inner {
                for b in &outer {
                    let mut v = vec![(points[0], points[k])];
                    v.extend(a.iter().copied());
                    v.extend(b.iter().copied());
                    out.push(v);
                }
            }
        }
        out
    }
    let points: Vec<usize> = (0..2 * n).collect();
    let mut out: Vec<TLDiagram> = matchings(&points)
        .into_iter()
        .map(|pairs| {
            let mut partner = vec![0; 2 * n];
            for (a, b) in pairs {
                partner[a] = b;
                partner[b] = a;
            }
            TLDiagram { n, partner }
        })
        .collect();
    out.sort();
    out
}

/// Linear combination of diagrams with Laurent coefficients.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TLElement {
    n: usize,
    terms: BTreeMap<TLDiagram, Laurent>,
}

impl TLElement {
    pub fn zero(n: usize) -> Self {
        TLElement {
            n,
            terms: BTreeMap::new(),
        }
    }

    pub fn identity(n: usize) -> Self {
        Self::diagram(TLDiagram::identity(n), Laurent::one())
    }

    pub fn diagram(d: TLDiagram, c: Laurent) -> Self {
        let mut out = Self::zero(d.n);
        out.add_term(d, c);
        out
    }

    pub fn from_terms(
        n: usize,
        terms: impl IntoIterator<Item = (TLDiagram, Laurent)>,
    ) -> Result<Self, TlError> {
        let mut out = Self::zero(n);
        for (d, c) in terms {
            if d.n != n {
                return Err(TlError::StrandMismatch {
                    left: n,
                    right: d.n,
                });
            }
            out.add_term(d, c);
        }
        Ok(out)
    }

    fn add_term(&mut self, d: TLDiagram, c: Laurent) {
        if c.is_zero() {
            return;
        }
        let sum = match self.terms.remove(&d) {
            Some(old) => old + &c,
            None => c,
        };
        if !sum.is_zero() {
            self.terms.insert(d, sum);
        }
    }

    pub fn strands(&self) -> usize {
        self.n
    }

    pub fn terms(&self) -> impl Iterator<Item = (&TLDiagram, &Laurent)> {
        self.terms.iter()
    }

    #[allow(clippy::len_without_is_empty)] // `is_zero` plays that role
    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn scale(&self, c: &Laurent) -> Self {
        let mut out = Self::zero(self.n);
        for (d, x) in &self.terms {
            out.add_term(d.clone(), x.clone() * c);
        }
        out
    }

    pub fn add(&self, other: &TLElement) -> Result<Self, TlError> {
        if other.n != self.n {
            return Err(TlError::StrandMismatch {
                left: self.n,
                right: other.n,
            });
        }
        let mut out = self.clone();
        for (d, c) in &other.terms {
            out.add_term(d.clone(), c.clone());
        }
        Ok(out)
    }

    pub fn sub(&self, other: &TLElement) -> Result<Self, TlError> {
        self.add(&other.scale(&-Laurent::one()))
    }

    /// Adds `extra` through-strands on the right of every diagram.
    pub fn embed(&self, extra: usize) -> Self {
        TLElement {
            n: self.n + extra,
            terms: self
                .terms
                .iter()
                .map(|(d, c)| (d.embed(extra), c.clone()))
                .collect(),
        }
    }

    /// Substitutes a number for `δ`; `None` when `δ = 0` meets a negative power.
    pub fn eval_at(&self, delta: &GaussRat) -> Option<BTreeMap<TLDiagram, GaussRat>> {
        let mut out = BTreeMap::new();
        for (d, c) in &self.terms {
            let v = c.eval(delta)?;
            if !v.is_zero() {
                out.insert(d.clone(), v);
            }
        }
        Some(out)
    }
}

impl fmt::Display for TLElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        let parts: Vec<String> = self
            .terms
            .iter()
            .map(|(d, c)| format!("({c})·{d}"))
            .collect();
        write!(f, "{}", parts.join(" + "))
    }
}

/// `xy` with `x` stacked on `y`, each closed loop worth `loop_value`.
pub fn compose_with_loop(
    x: &TLElement,
    y: &TLElement,
    loop_value: &Laurent,
) -> Result<TLElement, TlError> {
    if x.n != y.n {
        return Err(TlError::StrandMismatch {
            left: x.n,
            right: y.n,
        });
    }
    let mut out = TLElement::zero(x.n);
    for (dx, cx) in &x.terms {
        for (dy, cy) in &y.terms {
            let (d, loops) = dx.compose(dy)?;
            let mut c = cx.clone() * cy;
            for _ in 0..loops {
                c = c * loop_value;
            }
            out.add_term(d, c);
        }
    }
    Ok(out)
}

/// `xy` with loops evaluated at `δ`.
pub fn compose(x: &TLElement, y: &TLElement) -> Result<TLElement, TlError> {
    compose_with_loop(x, y, &Laurent::delta())
}

/// Product of a nonempty list, left to right.
pub fn compose_all(n: usize, xs: &[TLElement]) -> Result<TLElement, TlError> {
    let mut acc = TLElement::identity(n);
    for x in xs {
        acc = compose(&acc, x)?;
    }
    Ok(acc)
}

/// `e_i = δ⁻¹ U_i` in `TL_n`.
pub fn jones_projection(n: usize, i: usize) -> Result<TLElement, TlError> {
    Ok(TLElement::diagram(
        TLDiagram::cup_cap(n, i)?,
        Laurent::delta_pow(-1),
    ))
}

/// Normalized Markov trace `δ^{-n} Σ c · δ^{loops of the right closure}`.
pub fn markov_trace(x: &TLElement) -> Laurent {
    let mut acc = Laurent::zero();
    for (d, c) in &x.terms {
        acc += &(c.clone() * &Laurent::delta_pow(d.closure_loops() as i32 - x.n as i32));
    }
    acc
}

/// Vertical reflection with conjugated coefficients.
pub fn star(x: &TLElement) -> TLElement {
    TLElement {
        n: x.n,
        terms: x
            .terms
            .iter()
            .map(|(d, c)| (d.reflect(), c.conj()))
            .collect(),
    }
}

/// Replaces every strand by `m` parallel strands, keeping coefficients.
/// Products of cabled elements are cables of products with loop value `δ^m`:
/// `cable(x)cable(y) = cable(compose_with_loop(x, y, δ^m))`.
pub fn cable(x: &TLElement, m: usize) -> Result<TLElement, TlError> {
    if m == 0 {
        return Err(TlError::ZeroCable);
    }
    Ok(TLElement {
        n: x.n * m,
        terms: x
            .terms
            .iter()
            .map(|(d, c)| (d.cable(m), c.clone()))
            .collect(),
    })
}

/// The Jones-projection words `e_{[-1,k]}` and `e_{[l,k+l]}`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum JonesVariant {
    /// `e_{[-1,k]} = δ^{k(k+1)} (e_{k+1}⋯e_1)(e_{k+2}⋯e_2)⋯(e_{2k+1}⋯e_{k+1})`.
    MinusOne,
    /// `e_{[l,k+l]} = δ^{k(k−1)} (e_{l+k+1}⋯e_{l+2})(e_{l+k+2}⋯e_{l+3})⋯(e_{l+2k}⋯e_{l+k+1})`.
    Shift(usize),
}

impl JonesVariant {
    /// Generator indices of the word, in multiplication order, and the power
    /// of `δ` in front.
    pub fn word(self, k: usize) -> (Vec<usize>, i32) {
        let k_i = k as i32;
        match self {
            JonesVariant::MinusOne => {
                let idx = (0..=k).flat_map(|g| (1 + g..=k + 1 + g).rev()).collect();
                (idx, k_i * (k_i + 1))
            }
            JonesVariant::Shift(l) => {
                let idx = (0..k)
                    .flat_map(|g| (l + 2 + g..=l + k + 1 + g).rev())
                    .collect();
                (idx, k_i * (k_i - 1))
            }
        }
    }

    /// Smallest ambient strand count containing every generator of the word.
    pub fn min_strands(self, k: usize) -> usize {
        self.word(k).0.iter().max().map_or(0, |m| m + 1)
    }
}

/// Builds the word in `TL_n` and certifies that it is a self-adjoint
/// idempotent.
pub fn jones_word(variant: JonesVariant, k: usize, n: usize) -> Result<TLElement, TlError> {
    let (idx, power) = variant.word(k);
    let needed = variant.min_strands(k);
    if n < needed {
        return Err(TlError::AmbientTooSmall { needed, n });
    }
    let gens = idx
        .iter()
        .map(|&i| jones_projection(n, i))
        .collect::<Result<Vec<_>, _>>()?;
    let w = compose_all(n, &gens)?.scale(&Laurent::delta_pow(power));
    if compose(&w, &w)? != w {
        return Err(TlError::NotProjection("not idempotent"));
    }
    if star(&w) != w {
        return Err(TlError::NotProjection("not self-adjoint"));
    }
    Ok(w)
}

/// `v_k = δ^k e_k e_{k−1} ⋯ e_1` in `TL_n`.
pub fn v_word(k: usize, n: usize) -> Result<TLElement, TlError> {
    if k >= n.max(1) {
        return Err(TlError::AmbientTooSmall { needed: k + 1, n });
    }
    let gens = (1..=k)
        .rev()
        .map(|i| jones_projection(n, i))
        .collect::<Result<Vec<_>, _>>()?;
    Ok(compose_all(n, &gens)?.scale(&Laurent::delta_pow(k as i32)))
}

/// `TL_n` as a *-algebra over Laurent polynomials on the diagram basis.
pub fn tl_algebra(n: usize) -> StarAlgebra<Laurent> {
    let basis = tl_basis(n);
    let index: BTreeMap<&TLDiagram, usize> =
        basis.iter().enumerate().map(|(i, d)| (d, i)).collect();
    let mut mult = Vec::new();
    for (i, x) in basis.iter().enumerate() {
        for (j, y) in basis.iter().enumerate() {
            let (d, loops) = x.compose(y).expect("same strand count");
            mult.push((i, j, index[&d], Laurent::delta_pow(loops as i32)));
        }
    }
    let mut unit = vec![Laurent::zero(); basis.len()];
    unit[index[&TLDiagram::identity(n)]] = Laurent::one();
    let star = basis
        .iter()
        .enumerate()
        .map(|(i, d)| (i, index[&d.reflect()], Laurent::one()));
    let labels = basis.iter().map(|d| d.to_string()).collect();
    StarAlgebra::from_triplets(labels, mult, unit, star).expect("TL algebra")
}
