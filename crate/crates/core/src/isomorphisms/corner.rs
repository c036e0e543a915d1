//! The corner-ring model `φ ↦ Σ_g (1/|H|) φ(gH)·g` into `e_H (A ⋊ G) e_H`.

use std::sync::Arc;

use super::verify::AlgebraView;
use crate::algebras::{AlgebraRef, BasedAlgebra};
use crate::element::Element;
use crate::error::{Error, Result};
use crate::hecke::{HeckeContext, HeckeElement};
use crate::scalars::{Scalar, ScalarField};
use crate::skewgroup::{corner_basis, hecke_idempotent, SkewGroupAlgebra};

pub struct CornerModel {
    ctx: HeckeContext,
    skew: Arc<SkewGroupAlgebra>,
    idempotent: Element,
    inv_order: Scalar,
}

impl CornerModel {
    /// Fails with [`Error::CornerUnavailable`] when `|H|` is not a unit.
    pub fn new(ctx: &HeckeContext) -> Result<Self> {
        let skew = SkewGroupAlgebra::new(ctx.action());
        let idempotent = hecke_idempotent(&skew, ctx.subgroup())?;
        let field = ctx.field();
        let inv_order = field.inverse(&field.from_usize(ctx.subgroup().order()))?;
        Ok(CornerModel {
            ctx: ctx.clone(),
            skew: Arc::new(skew),
            idempotent,
            inv_order,
        })
    }

    pub fn context(&self) -> &HeckeContext {
        &self.ctx
    }

    pub fn skew(&self) -> &SkewGroupAlgebra {
        &self.skew
    }

    pub fn skew_ref(&self) -> AlgebraRef {
        self.skew.clone()
    }

    pub fn idempotent(&self) -> &Element {
        &self.idempotent
    }

    /// Echelon basis of the corner `e (A ⋊ G) e`.
    pub fn corner_basis(&self) -> Result<Vec<Element>> {
        corner_basis(&self.skew, &self.idempotent)
    }

    pub fn to_corner(&self, phi: &HeckeElement) -> Result<Element> {
        if *phi.context() != self.ctx {
            return Err(Error::ContextMismatch("element of a different Hecke algebra".into()));
        }
        let cs = self.ctx.cosets();
        let full = phi.expand();
        let mut x = Element::zero();
        for g in self.ctx.group().elements() {
            let v = &full[cs.coset_of(g)];
            if !v.is_zero() {
                x.add_scaled(&self.skew.element(v, g), &self.inv_order);
            }
        }
        Ok(x)
    }

    /// Inverse of [`CornerModel::to_corner`], checking `e x e = x` and that
    /// the coefficient function is constant on cosets.
    pub fn from_corner(&self, x: &Element) -> Result<HeckeElement> {
        let s = &self.skew;
        let e = &self.idempotent;
        if s.mul(&s.mul(e, x), e) != *x {
            return Err(Error::NotInCorner("e x e differs from x".into()));
        }
        let comps = s.components(x);
        let cs = self.ctx.cosets();
        let g = self.ctx.group();
        let order = self.ctx.field().from_usize(self.ctx.subgroup().order());
        let mut full = Vec::with_capacity(cs.len());
        for c in 0..cs.len() {
            let coset = &cs.cosets()[c];
            let v = &comps[coset[0]];
            if let Some(&k) = coset.iter().find(|&&k| comps[k] != *v) {
                return Err(Error::NotInCorner(format!(
                    "coefficients at {} and {} differ",
                    g.name(coset[0]),
                    g.name(k)
                )));
            }
            full.push(v.scale(&order));
        }
        self.ctx.from_coset_function(&full)
    }
}

/// The corner ring with unit `e_H`, for map verification.
impl AlgebraView for CornerModel {
    type Elem = Element;
    fn field(&self) -> ScalarField {
        self.ctx.field()
    }
    fn one(&self) -> Element {
        self.idempotent.clone()
    }
    fn zero(&self) -> Element {
        Element::zero()
    }
    fn add(&self, x: &Element, y: &Element) -> Element {
        x.add(y)
    }
    fn mul(&self, x: &Element, y: &Element) -> Result<Element> {
        Ok(self.skew.mul(x, y))
    }
    fn flatten(&self, x: &Element) -> Element {
        x.clone()
    }
    fn describe(&self, x: &Element) -> String {
        self.skew.pretty(x)
    }
}
