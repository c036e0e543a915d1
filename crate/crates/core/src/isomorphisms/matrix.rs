//! The fixed-point matrix model: `φ ↦ M` with `M[gH][kH] = α_k φ(k⁻¹gH)`,
//! a bijection onto the `G`-invariant coset-indexed matrices over `A`.
//!
//! Matrices multiply by reversed composition:
//! `(M ∘op N)[s][k] = Σ_g M[g][k] · N[s][g]`.

use std::fmt;

use super::verify::AlgebraView;
use crate::element::{Element, Label};
use crate::error::{Error, Result};
use crate::hecke::{HeckeContext, HeckeElement};
use crate::linalg;
use crate::scalars::ScalarField;

#[derive(Clone, PartialEq, Eq)]
pub struct HeckeMatrix {
    ctx: HeckeContext,
    n: usize,
    entries: Vec<Element>,
}

impl fmt::Debug for HeckeMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.format())
    }
}

impl HeckeMatrix {
    pub fn new(ctx: &HeckeContext, entries: Vec<Element>) -> Result<Self> {
        let n = ctx.cosets().len();
        if entries.len() != n * n {
            return Err(Error::Shape(format!("expected {} entries, got {}", n * n, entries.len())));
        }
        Ok(HeckeMatrix {
            ctx: ctx.clone(),
            n,
            entries,
        })
    }

    pub fn zero(ctx: &HeckeContext) -> Self {
        let n = ctx.cosets().len();
        HeckeMatrix {
            ctx: ctx.clone(),
            n,
            entries: vec![Element::zero(); n * n],
        }
    }

    pub fn identity(ctx: &HeckeContext) -> Self {
        let one = ctx.algebra().one();
        let mut m = HeckeMatrix::zero(ctx);
        for i in 0..m.n {
            m.entries[i * m.n + i] = one.clone();
        }
        m
    }

    pub fn size(&self) -> usize {
        self.n
    }

    pub fn context(&self) -> &HeckeContext {
        &self.ctx
    }

    pub fn entry(&self, row: usize, col: usize) -> &Element {
        &self.entries[row * self.n + col]
    }

    pub fn entry_mut(&mut self, row: usize, col: usize) -> &mut Element {
        &mut self.entries[row * self.n + col]
    }

    pub fn entries(&self) -> &[Element] {
        &self.entries
    }

    pub fn add(&self, other: &HeckeMatrix) -> HeckeMatrix {
        HeckeMatrix {
            ctx: self.ctx.clone(),
            n: self.n,
            entries: self.entries.iter().zip(&other.entries).map(|(a, b)| a.add(b)).collect(),
        }
    }

    /// `self ∘op other`, the product matching convolution.
    pub fn op_product(&self, other: &HeckeMatrix) -> HeckeMatrix {
        let a = self.ctx.algebra();
        let n = self.n;
        let mut out = HeckeMatrix::zero(&self.ctx);
        for s in 0..n {
            for k in 0..n {
                let mut acc = Element::zero();
                for g in 0..n {
                    let (x, y) = (self.entry(g, k), other.entry(s, g));
                    if !x.is_zero() && !y.is_zero() {
                        acc = acc.add(&a.mul(x, y));
                    }
                }
                out.entries[s * n + k] = acc;
            }
        }
        out
    }

    /// First `(s, row, col)` with `α_s M[s⁻¹·row][s⁻¹·col] ≠ M[row][col]`.
    pub fn invariance_witness(&self) -> Option<(usize, usize, usize)> {
        let cs = self.ctx.cosets();
        let g = self.ctx.group();
        let act = self.ctx.action();
        for s in g.elements() {
            let si = g.inv(s);
            for r in 0..self.n {
                for c in 0..self.n {
                    let moved = act.apply(s, self.entry(cs.act(si, r), cs.act(si, c)));
                    if moved != *self.entry(r, c) {
                        return Some((s, r, c));
                    }
                }
            }
        }
        None
    }

    pub fn is_invariant(&self) -> bool {
        self.invariance_witness().is_none()
    }

    /// Row-major, one row per line, entries as element literals.
    pub fn format(&self) -> String {
        let a = self.ctx.algebra();
        (0..self.n)
            .map(|r| {
                let row: Vec<String> = (0..self.n).map(|c| a.format(self.entry(r, c))).collect();
                row.join("  ")
            })
            .collect::<Vec<_>>()
            .join("\n")
    }
}

/// `M[gH][kH] = α_k φ(k⁻¹gH)`.
pub fn to_matrix(phi: &HeckeElement) -> HeckeMatrix {
    to_matrix_with(phi, true)
}

/// [`to_matrix`], optionally without the `α_k` twist (which breaks it).
pub fn to_matrix_with(phi: &HeckeElement, twist: bool) -> HeckeMatrix {
    let ctx = phi.context();
    let cs = ctx.cosets();
    let g = ctx.group();
    let act = ctx.action();
    let full = phi.expand();
    let n = cs.len();
    let mut m = HeckeMatrix::zero(ctx);
    for col in 0..n {
        let k = cs.rep(col);
        let kinv = g.inv(k);
        for row in 0..n {
            let v = &full[cs.coset_of(g.mul(kinv, cs.rep(row)))];
            m.entries[row * n + col] = if twist { act.apply(k, v) } else { v.clone() };
        }
    }
    m
}

/// Reads back `φ(gH) = M[gH][H]` after checking invariance.
pub fn from_matrix(m: &HeckeMatrix) -> Result<HeckeElement> {
    if let Some((s, r, c)) = m.invariance_witness() {
        let cs = m.ctx.cosets();
        return Err(Error::MatrixNotInvariant {
            s: m.ctx.group().name(s),
            row: cs.coset_name(r),
            col: cs.coset_name(c),
        });
    }
    let column: Vec<Element> = (0..m.n).map(|r| m.entry(r, 0).clone()).collect();
    m.ctx.from_coset_function(&column)
}

/// Result of comparing `T(φ∗ψ)` with `T(φ) ∘op T(ψ)` entrywise.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MultiplicativityReport {
    pub passed: bool,
    /// `(row, col)` of the first differing entry.
    pub witness: Option<(usize, usize)>,
}

pub fn matrix_multiplicativity_check(phi: &HeckeElement, psi: &HeckeElement) -> Result<MultiplicativityReport> {
    let lhs = to_matrix(&phi.convolve(psi)?);
    let rhs = to_matrix(phi).op_product(&to_matrix(psi));
    let n = lhs.n;
    let witness = (0..n * n)
        .find(|&i| lhs.entries[i] != rhs.entries[i])
        .map(|i| (i / n, i % n));
    Ok(MultiplicativityReport {
        passed: witness.is_none(),
        witness,
    })
}

/// `a ↦ diag(α_g a)` over coset representatives, for `a ∈ A^H`.
pub fn relativise(ctx: &HeckeContext, a: &Element) -> Result<HeckeMatrix> {
    if let Some(h) = ctx.action().first_non_fixing(ctx.subgroup().elements(), a) {
        return Err(Error::NotInvariant {
            coset: "H".into(),
            witness: ctx.group().name(h),
        });
    }
    let cs = ctx.cosets();
    let mut m = HeckeMatrix::zero(ctx);
    for c in 0..cs.len() {
        *m.entry_mut(c, c) = ctx.action().apply(cs.rep(c), a);
    }
    Ok(m)
}

/// Basis of all `G`-invariant matrices with entries in the enumerable part
/// of `A`, computed as a nullspace independently of the Hecke module basis.
pub fn invariant_matrix_basis(ctx: &HeckeContext) -> Result<Vec<Element>> {
    let a = ctx.algebra();
    let field = ctx.field();
    let labels = a.enumerable_basis()?;
    let cs = ctx.cosets();
    let g = ctx.group();
    let n = cs.len();
    let mut coords = Vec::new();
    let mut columns = Vec::new();
    for r in 0..n {
        for c in 0..n {
            for l in &labels {
                coords.push((r, c, l.clone()));
                let mut col = Element::zero();
                let unit = a.basis_element(l);
                for s in g.elements() {
                    // coefficient of this unknown in α_s M[s⁻¹·r'][s⁻¹·c'] - M[r'][c'],
                    // collected at position (s, s·r, s·c)
                    let tag = |row: usize, colm: usize| {
                        Label::pair(Label::Index(s), Label::Index(row * n + colm))
                    };
                    let moved = ctx.action().apply(s, &unit);
                    col = col.add(&moved.tagged(tag(cs.act(s, r), cs.act(s, c))));
                    col = col.sub(&unit.tagged(tag(r, c)));
                }
                columns.push(col);
            }
        }
    }
    Ok(linalg::kernel(field, &columns)
        .into_iter()
        .map(|v| {
            let mut m = Element::zero();
            for (j, coef) in &v {
                let (r, c, l) = &coords[j.index().expect("coordinate")];
                m.add_term(Label::pair(Label::Index(r * n + c), l.clone()), coef);
            }
            m
        })
        .collect())
}

/// Coset-indexed matrices under `∘op`, for map verification.
pub struct MatrixView(pub HeckeContext);

impl AlgebraView for MatrixView {
    type Elem = HeckeMatrix;
    fn field(&self) -> ScalarField {
        self.0.field()
    }
    fn one(&self) -> HeckeMatrix {
        HeckeMatrix::identity(&self.0)
    }
    fn zero(&self) -> HeckeMatrix {
        HeckeMatrix::zero(&self.0)
    }
    fn add(&self, x: &HeckeMatrix, y: &HeckeMatrix) -> HeckeMatrix {
        x.add(y)
    }
    fn mul(&self, x: &HeckeMatrix, y: &HeckeMatrix) -> Result<HeckeMatrix> {
        Ok(x.op_product(y))
    }
    fn flatten(&self, x: &HeckeMatrix) -> Element {
        let mut r = Element::zero();
        for (i, e) in x.entries.iter().enumerate() {
            r = r.add(&e.tagged(Label::Index(i)));
        }
        r
    }
    fn describe(&self, x: &HeckeMatrix) -> String {
        x.format()
    }
}
