use std::collections::BTreeMap;
use std::sync::{Arc, Mutex};

use super::{AlgebraRef, BasedAlgebra, Family, GroupAction};
use crate::element::{Element, Label};
use crate::error::{Error, Result};
use crate::groups::Subgroup;
use crate::linalg::{self, Echelon};
use crate::scalars::{Scalar, ScalarField};

/// A basis of a fixed subspace in reduced echelon form: `vectors[i]` has
/// coefficient 1 at `pivots[i]` and 0 at every other pivot.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct InvariantBasis {
    pub vectors: Vec<Element>,
    pub pivots: Vec<Label>,
}

impl InvariantBasis {
    fn from_reduced(vectors: Vec<Element>) -> Self {
        let pivots = vectors
            .iter()
            .map(|v| v.leading().expect("nonzero basis vector").0.clone())
            .collect();
        InvariantBasis { vectors, pivots }
    }

    pub fn len(&self) -> usize {
        self.vectors.len()
    }

    pub fn is_empty(&self) -> bool {
        self.vectors.is_empty()
    }

    /// Coordinates of `x` in this basis, or `None` if `x` is outside the span.
    pub fn coordinates(&self, x: &Element, field: ScalarField) -> Option<Vec<Scalar>> {
        let coeffs: Vec<Scalar> = self
            .pivots
            .iter()
            .map(|p| x.coeff(p).cloned().unwrap_or_else(|| field.zero()))
            .collect();
        let mut back = Element::zero();
        for (v, c) in self.vectors.iter().zip(&coeffs) {
            back.add_scaled(v, c);
        }
        (back == *x).then_some(coeffs)
    }
}

/// Fixed vectors of `S` in the span of `labels`, via the nullspace of the
/// stacked maps `α_s − id`, cross-checked against the averaging operator
/// when `|S|` is a unit.
fn fixed_subspace(a: &dyn BasedAlgebra, s: &Subgroup, alpha: &GroupAction, labels: &[Label]) -> Result<InvariantBasis> {
    let field = a.field();
    let columns: Vec<Element> = labels
        .iter()
        .map(|l| {
            let b = a.basis_element(l);
            let mut col = Element::zero();
            for &g in s.elements() {
                if g != 0 {
                    col.add_scaled(&alpha.apply_basis(g, l).sub(&b).tagged(Label::Index(g)), &field.one());
                }
            }
            col
        })
        .collect();
    let kernel = linalg::kernel(field, &columns);
    let vectors: Vec<Element> = kernel
        .iter()
        .map(|v| v.map_labels(|j| labels[j.index().expect("index coordinate")].clone()))
        .collect();
    let vectors = linalg::span_basis(field, &vectors);

    if let Ok(inv) = field.inverse(&field.from_usize(s.order())) {
        let averaged: Vec<Element> = labels
            .iter()
            .map(|l| {
                let mut sum = Element::zero();
                for &g in s.elements() {
                    sum.add_scaled(&alpha.apply_basis(g, l), &inv);
                }
                sum
            })
            .collect();
        let mut span = Echelon::new(field);
        for v in &vectors {
            span.insert(v);
        }
        let avg_rank = linalg::rank(field, &averaged);
        if avg_rank != vectors.len() || averaged.iter().any(|v| !span.contains(v)) {
            return Err(Error::Inconsistent(format!(
                "nullspace dimension {} but averaging image dimension {avg_rank}",
                vectors.len()
            )));
        }
    }
    Ok(InvariantBasis::from_reduced(vectors))
}

/// Basis of the `S`-fixed part of the degree-`d` component (ignoring the cap).
pub fn invariants_of_degree(a: &dyn BasedAlgebra, s: &Subgroup, alpha: &GroupAction, d: u32) -> Result<InvariantBasis> {
    fixed_subspace(a, s, alpha, &a.homogeneous_basis(d))
}

/// Basis of `A^S`: the whole fixed subalgebra for a finite basis, or the
/// fixed part of degrees `0..=degree` for a graded algebra.
pub fn invariants_compute(
    a: &dyn BasedAlgebra,
    s: &Subgroup,
    alpha: &GroupAction,
    degree: Option<u32>,
) -> Result<InvariantBasis> {
    if let Some(b) = a.basis() {
        return fixed_subspace(a, s, alpha, &b);
    }
    let d = degree.ok_or(Error::DegreeRequired)?;
    let mut vectors = Vec::new();
    for i in 0..=d {
        a.basis_of_degree(i)?;
        vectors.extend(invariants_of_degree(a, s, alpha, i)?.vectors);
    }
    Ok(InvariantBasis::from_reduced(vectors))
}

/// `A^S` as a based algebra with labels `Pair(Index(degree), Index(i))`.
#[derive(Debug)]
pub struct InvariantSubalgebra {
    parent: AlgebraRef,
    subgroup: Subgroup,
    action: GroupAction,
    blocks: Mutex<BTreeMap<u32, Arc<InvariantBasis>>>,
}

impl InvariantSubalgebra {
    pub fn new(action: &GroupAction, subgroup: &Subgroup) -> Result<Self> {
        let parent = action.algebra().clone();
        if parent.basis().is_none() && parent.degree_cap().is_none() {
            return Err(Error::DegreeRequired);
        }
        let inv = InvariantSubalgebra {
            parent,
            subgroup: subgroup.clone(),
            action: action.clone(),
            blocks: Mutex::new(BTreeMap::new()),
        };
        inv.block(0)?;
        Ok(inv)
    }

    pub fn parent(&self) -> &AlgebraRef {
        &self.parent
    }

    pub fn subgroup(&self) -> &Subgroup {
        &self.subgroup
    }

    /// The invariant basis in degree `d`, computed on first use.
    pub fn block(&self, d: u32) -> Result<Arc<InvariantBasis>> {
        if let Some(b) = self.blocks.lock().expect("lock").get(&d) {
            return Ok(b.clone());
        }
        let b = Arc::new(invariants_of_degree(self.parent.as_ref(), &self.subgroup, &self.action, d)?);
        self.blocks.lock().expect("lock").insert(d, b.clone());
        Ok(b)
    }

    fn block_of(&self, l: &Label) -> (u32, usize) {
        let (d, i) = l.split().expect("invariant label");
        (d.index().expect("degree") as u32, i.index().expect("position"))
    }

    pub fn to_parent(&self, x: &Element) -> Element {
        let mut r = Element::zero();
        for (l, c) in x {
            let (d, i) = self.block_of(l);
            r.add_scaled(&self.block(d).expect("computed block").vectors[i], c);
        }
        r
    }

    /// Coordinates of a fixed element of the parent.
    pub fn from_parent(&self, y: &Element) -> Result<Element> {
        let field = self.parent.field();
        let mut by_degree: BTreeMap<u32, Element> = BTreeMap::new();
        for (l, c) in y {
            by_degree
                .entry(self.parent.degree(l))
                .or_default()
                .add_term(l.clone(), c);
        }
        let mut r = Element::zero();
        for (d, part) in by_degree {
            let block = self.block(d)?;
            let coords = block.coordinates(&part, field).ok_or_else(|| Error::NotInvariant {
                coset: "H".into(),
                witness: self.parent.pretty(&part),
            })?;
            for (i, c) in coords.iter().enumerate() {
                r.add_term(Label::pair(Label::Index(d as usize), Label::Index(i)), c);
            }
        }
        Ok(r)
    }
}

impl BasedAlgebra for InvariantSubalgebra {
    fn field(&self) -> ScalarField {
        self.parent.field()
    }
    fn name(&self) -> String {
        format!("invariants({})", self.parent.name())
    }
    fn family(&self) -> Family {
        Family::Invariant(self.parent.clone())
    }
    fn one(&self) -> Element {
        self.from_parent(&self.parent.one()).expect("unit is invariant")
    }
    fn mul_basis(&self, a: &Label, b: &Label) -> Element {
        let x = self.to_parent(&self.basis_element(a));
        let y = self.to_parent(&self.basis_element(b));
        self.from_parent(&self.parent.mul(&x, &y)).expect("invariants form a subalgebra")
    }
    fn basis(&self) -> Option<Vec<Label>> {
        self.parent.basis()?;
        Some(self.homogeneous_basis(0))
    }
    fn is_commutative(&self) -> bool {
        self.parent.is_commutative()
    }
    fn is_graded(&self) -> bool {
        self.parent.is_graded()
    }
    fn degree(&self, l: &Label) -> u32 {
        self.block_of(l).0
    }
    fn degree_cap(&self) -> Option<u32> {
        self.parent.degree_cap()
    }
    fn homogeneous_basis(&self, d: u32) -> Vec<Label> {
        if !self.parent.is_graded() && d > 0 {
            return Vec::new();
        }
        let n = self.block(d).expect("invariant block").len();
        (0..n)
            .map(|i| Label::pair(Label::Index(d as usize), Label::Index(i)))
            .collect()
    }
    fn format_label(&self, l: &Label) -> String {
        let (d, i) = self.block_of(l);
        format!("v[{d},{i}]")
    }
    fn parse_label(&self, s: &str) -> Result<Label> {
        let bad = || Error::UnknownLabel(s.into());
        let inner = s.trim().strip_prefix("v[").and_then(|r| r.strip_suffix(']')).ok_or_else(bad)?;
        let (d, i) = inner.split_once(',').ok_or_else(bad)?;
        let d: u32 = d.trim().parse().map_err(|_| bad())?;
        let i: usize = i.trim().parse().map_err(|_| bad())?;
        if i >= self.block(d)?.len() {
            return Err(bad());
        }
        Ok(Label::pair(Label::Index(d as usize), Label::Index(i)))
    }
}
