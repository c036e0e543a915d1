//! The skew group algebra `A ⋊ G`, its Hecke idempotents and corner rings.
//!
//! Product rule: `(a·g)(b·k) = a(α_g b)·gk`.

use std::sync::Arc;

use crate::algebras::{AlgebraRef, BasedAlgebra, Family, GroupAction};
use crate::element::{Element, Label};
use crate::error::{Error, Result};
use crate::groups::{GroupRef, Subgroup};
use crate::linalg;
use crate::scalars::ScalarField;

/// `A ⋊ G` with labels `Pair(a, Index(g))`, printed `a . g`.
#[derive(Debug, Clone)]
pub struct SkewGroupAlgebra {
    action: GroupAction,
}

impl SkewGroupAlgebra {
    pub fn new(action: &GroupAction) -> Self {
        SkewGroupAlgebra { action: action.clone() }
    }

    pub fn into_ref(self) -> AlgebraRef {
        Arc::new(self)
    }

    pub fn action(&self) -> &GroupAction {
        &self.action
    }

    pub fn coefficients(&self) -> &AlgebraRef {
        self.action.algebra()
    }

    pub fn group(&self) -> &GroupRef {
        self.action.group()
    }

    /// `a · g`.
    pub fn element(&self, a: &Element, g: usize) -> Element {
        a.tagged_right(Label::Index(g))
    }

    /// Splits `x` as `Σ_g a_g · g`, indexed by group element.
    pub fn components(&self, x: &Element) -> Vec<Element> {
        let mut out = vec![Element::zero(); self.group().order()];
        for (l, c) in x {
            let (a, g) = l.split().expect("skew label");
            out[g.index().expect("group index")].add_term(a.clone(), c);
        }
        out
    }
}

trait TagRight {
    fn tagged_right(&self, tag: Label) -> Element;
}

impl TagRight for Element {
    fn tagged_right(&self, tag: Label) -> Element {
        self.map_labels(|l| Label::pair(l.clone(), tag.clone()))
    }
}

impl BasedAlgebra for SkewGroupAlgebra {
    fn field(&self) -> ScalarField {
        self.coefficients().field()
    }
    fn name(&self) -> String {
        format!("{} x| G", self.coefficients().name())
    }
    fn family(&self) -> Family {
        Family::SkewGroup
    }
    fn one(&self) -> Element {
        self.element(&self.coefficients().one(), 0)
    }
    fn mul_basis(&self, x: &Label, y: &Label) -> Element {
        let (a, g) = x.split().expect("skew label");
        let (b, k) = y.split().expect("skew label");
        let (g, k) = (g.index().expect("group index"), k.index().expect("group index"));
        let alg = self.coefficients();
        let twisted = self.action.apply_basis(g, b);
        let prod = alg.mul(&alg.basis_element(a), &twisted);
        self.element(&prod, self.group().mul(g, k))
    }
    fn basis(&self) -> Option<Vec<Label>> {
        let a = self.coefficients().basis()?;
        Some(self.pair_up(&a))
    }
    fn is_commutative(&self) -> bool {
        self.group().order() == 1 && self.coefficients().is_commutative()
    }
    fn is_graded(&self) -> bool {
        self.coefficients().is_graded()
    }
    fn degree(&self, l: &Label) -> u32 {
        self.coefficients().degree(l.split().expect("skew label").0)
    }
    fn degree_cap(&self) -> Option<u32> {
        self.coefficients().degree_cap()
    }
    fn homogeneous_basis(&self, d: u32) -> Vec<Label> {
        self.pair_up(&self.coefficients().homogeneous_basis(d))
    }
    fn format_label(&self, l: &Label) -> String {
        let (a, g) = l.split().expect("skew label");
        format!(
            "{} . {}",
            self.coefficients().format_label(a),
            self.group().name(g.index().expect("group index"))
        )
    }
    fn parse_label(&self, s: &str) -> Result<Label> {
        let (a, g) = s.rsplit_once(" . ").ok_or_else(|| Error::UnknownLabel(s.into()))?;
        Ok(Label::pair(
            self.coefficients().parse_label(a)?,
            Label::Index(self.group().parse_element(g)?),
        ))
    }
}

impl SkewGroupAlgebra {
    fn pair_up(&self, labels: &[Label]) -> Vec<Label> {
        let mut out: Vec<Label> = labels
            .iter()
            .flat_map(|a| self.group().elements().map(move |g| Label::pair(a.clone(), Label::Index(g))))
            .collect();
        out.sort();
        out
    }
}

/// `e_H = (1/|H|) Σ_h 1_A · h`, checked idempotent.
pub fn hecke_idempotent(skew: &SkewGroupAlgebra, h: &Subgroup) -> Result<Element> {
    let field = skew.field();
    let inv = field
        .inverse(&field.from_usize(h.order()))
        .map_err(|_| Error::CornerUnavailable(format!("|H| = {} is not a unit in {field}", h.order())))?;
    let one = skew.coefficients().one();
    let mut e = Element::zero();
    for &x in h.elements() {
        e.add_scaled(&skew.element(&one, x), &inv);
    }
    if skew.mul(&e, &e) != e {
        return Err(Error::Inconsistent("e_H is not idempotent".into()));
    }
    Ok(e)
}

/// Echelon basis of `e (A ⋊ G) e`, spanned by `e·(b·g)·e` over the
/// enumerable basis.
pub fn corner_basis(skew: &SkewGroupAlgebra, e: &Element) -> Result<Vec<Element>> {
    let labels = skew.enumerable_basis()?;
    let images: Vec<Element> = labels
        .iter()
        .map(|l| skew.mul(&skew.mul(e, &skew.basis_element(l)), e))
        .collect();
    Ok(linalg::span_basis(skew.field(), &images))
}
