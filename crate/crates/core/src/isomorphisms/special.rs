//! Direct models of skew Hecke algebras in special cases, each with an
//! explicit map into the convolution algebra:
//!
//! - `A = R` with trivial action: the double-coset counting algebra
//! - trivial action: `A ⊗ H_R(G, H)`
//! - `H = G`: `A^G`
//! - `H = 1`: `A ⋊ G`
//! - `H` normal: `A^H ⋊ G/H`

use std::collections::BTreeSet;
use std::sync::Arc;

use super::verify::{hecke_span, verify_algebra_map, AlgebraMapReport, BasedView, HeckeView, ImageSpec};
use crate::algebras::{tensor, AlgebraRef, InvariantSubalgebra, TableAlgebra};
use crate::element::{Element, Label};
use crate::error::{Error, Result};
use crate::groups::{quotient, GroupRef, Subgroup};
use crate::hecke::{HeckeContext, HeckeElement};
use crate::scalars::ScalarField;
use crate::skewgroup::SkewGroupAlgebra;

type ModelMap = Box<dyn Fn(&Element) -> Result<HeckeElement> + Send + Sync>;

/// An algebra with a map into a Hecke algebra claimed to be an isomorphism.
pub struct SpecialModel {
    name: &'static str,
    domain: AlgebraRef,
    ctx: HeckeContext,
    map: ModelMap,
}

impl SpecialModel {
    pub fn name(&self) -> &str {
        self.name
    }

    pub fn domain(&self) -> &AlgebraRef {
        &self.domain
    }

    pub fn context(&self) -> &HeckeContext {
        &self.ctx
    }

    pub fn apply(&self, x: &Element) -> Result<HeckeElement> {
        (self.map)(x)
    }

    pub fn verify(&self) -> Result<AlgebraMapReport> {
        let basis: Vec<Element> = self
            .domain
            .enumerable_basis()?
            .iter()
            .map(|l| self.domain.basis_element(l))
            .collect();
        Ok(verify_algebra_map(
            self.name,
            &BasedView(self.domain.clone()),
            &basis,
            &HeckeView(self.ctx.clone()),
            |x| self.apply(x),
            ImageSpec::Span(hecke_span(&self.ctx)),
        ))
    }
}

/// Double cosets `HgH` as sorted element sets, ordered by smallest element.
pub fn double_cosets(h: &Subgroup) -> Vec<Vec<usize>> {
    let g = h.parent();
    let mut seen = vec![false; g.order()];
    let mut out = Vec::new();
    for x in g.elements() {
        if seen[x] {
            continue;
        }
        let mut d = BTreeSet::new();
        for &a in h.elements() {
            for &b in h.elements() {
                d.insert(g.mul(g.mul(a, x), b));
            }
        }
        for &y in &d {
            seen[y] = true;
        }
        out.push(d.into_iter().collect());
    }
    out
}

/// `H_R(G, H)` on double-coset indicators, with
/// `c_{ij}^k = (1/|H|)·#{y ∈ D_i : y⁻¹x_k ∈ D_j}` for any `x_k ∈ D_k`.
/// The count is a union of right `H`-cosets, so the division is exact.
pub fn classical_table(field: ScalarField, h: &Subgroup) -> Result<TableAlgebra> {
    let g = h.parent();
    let ds = double_cosets(h);
    let n = ds.len();
    let mut which = vec![0; g.order()];
    for (i, d) in ds.iter().enumerate() {
        for &y in d {
            which[y] = i;
        }
    }
    let mut table = vec![vec![Element::zero(); n]; n];
    for (i, di) in ds.iter().enumerate() {
        for (k, dk) in ds.iter().enumerate() {
            let xk = dk[0];
            let mut counts = vec![0usize; n];
            for &y in di {
                counts[which[g.mul(g.inv(y), xk)]] += 1;
            }
            for (j, &c) in counts.iter().enumerate() {
                if c > 0 {
                    table[i][j].add_term(Label::Index(k), &field.from_usize(c / h.order()));
                }
            }
        }
    }
    let names = ds.iter().map(|d| format!("H{}H", g.name(d[0]))).collect();
    TableAlgebra::new(field, "double cosets", names, table, Element::basis(Label::Index(0), field))
}

/// The indicator of `D_i` with value `a` on each of its cosets, for trivial actions.
fn indicator(ctx: &HeckeContext, d: &[usize], a: &Element) -> Result<HeckeElement> {
    let cs = ctx.cosets();
    let mut values = vec![Element::zero(); cs.len()];
    for &y in d {
        values[cs.coset_of(y)] = a.clone();
    }
    ctx.from_coset_function(&values)
}

fn require_trivial(ctx: &HeckeContext) -> Result<()> {
    let g = ctx.group();
    let a = ctx.algebra();
    for l in a.enumerable_basis()? {
        let x = a.basis_element(&l);
        if g.elements().any(|s| ctx.action().apply(s, &x) != x) {
            return Err(Error::Shape("action is not trivial".into()));
        }
    }
    Ok(())
}

/// `A = R`, trivial action: the double-coset counting algebra.
pub fn classical_model(ctx: &HeckeContext) -> Result<SpecialModel> {
    if ctx.algebra().basis().map(|b| b.len()) != Some(1) {
        return Err(Error::Shape("coefficients must be one-dimensional".into()));
    }
    require_trivial(ctx)?;
    let domain = classical_table(ctx.field(), ctx.subgroup())?.into_ref();
    let ds = double_cosets(ctx.subgroup());
    let c = ctx.clone();
    Ok(SpecialModel {
        name: "classical",
        domain,
        ctx: ctx.clone(),
        map: Box::new(move |x| {
            let mut r = c.zero();
            for (l, coef) in x {
                let one = c.algebra().one().scale(coef);
                r = r.add(&indicator(&c, &ds[l.index().expect("table label")], &one)?);
            }
            Ok(r)
        }),
    })
}

/// Trivial action: `A ⊗ H_R(G, H)`, with `a ⊗ D_i` mapped to the indicator of
/// `D_i` with value `a`.
pub fn trivial_action_model(ctx: &HeckeContext) -> Result<SpecialModel> {
    require_trivial(ctx)?;
    let classical = classical_table(ctx.field(), ctx.subgroup())?.into_ref();
    let domain = tensor(ctx.algebra(), &classical)?;
    let ds = double_cosets(ctx.subgroup());
    let c = ctx.clone();
    Ok(SpecialModel {
        name: "trivial action",
        domain,
        ctx: ctx.clone(),
        map: Box::new(move |x| {
            let mut r = c.zero();
            for (l, coef) in x {
                let (a, d) = l.split().expect("tensor label");
                let value = c.algebra().basis_element(a).scale(coef);
                r = r.add(&indicator(&c, &ds[d.index().expect("table label")], &value)?);
            }
            Ok(r)
        }),
    })
}

/// `H = G`: `A^G`, mapped by `a ↦ δ_{G, a}`.
pub fn whole_group_model(ctx: &HeckeContext) -> Result<SpecialModel> {
    if ctx.subgroup().order() != ctx.group().order() {
        return Err(Error::Shape("H must be all of G".into()));
    }
    let inv = Arc::new(InvariantSubalgebra::new(ctx.action(), ctx.subgroup())?);
    let domain: AlgebraRef = inv.clone();
    let c = ctx.clone();
    Ok(SpecialModel {
        name: "whole group",
        domain,
        ctx: ctx.clone(),
        map: Box::new(move |x| c.embed_invariant(&inv.to_parent(x))),
    })
}

/// `H = 1`: `A ⋊ G`, mapped by `a·g ↦ (gH ↦ a)`.
pub fn trivial_subgroup_model(ctx: &HeckeContext) -> Result<SpecialModel> {
    if ctx.subgroup().order() != 1 {
        return Err(Error::Shape("H must be trivial".into()));
    }
    let skew = SkewGroupAlgebra::new(ctx.action());
    let c = ctx.clone();
    let s = skew.clone();
    Ok(SpecialModel {
        name: "trivial subgroup",
        domain: skew.into_ref(),
        ctx: ctx.clone(),
        map: Box::new(move |x| {
            let cs = c.cosets();
            let mut values = vec![Element::zero(); cs.len()];
            for (g, a) in s.components(x).into_iter().enumerate() {
                values[cs.coset_of(g)] = a;
            }
            c.from_coset_function(&values)
        }),
    })
}

/// `H` normal: `A^H ⋊ G/H`, mapped by `v·gH ↦ (gH ↦ v)`.
pub fn normal_subgroup_model(ctx: &HeckeContext) -> Result<SpecialModel> {
    let h = ctx.subgroup();
    let (q, proj) = quotient(ctx.group(), h)?;
    let q: GroupRef = Arc::new(q);
    let inv = Arc::new(InvariantSubalgebra::new(ctx.action(), h)?);
    let action = ctx.action().induced_on_invariants(&q, &proj, &inv)?;
    let skew = SkewGroupAlgebra::new(&action);
    let (c, s) = (ctx.clone(), skew.clone());
    Ok(SpecialModel {
        name: "normal subgroup",
        domain: skew.into_ref(),
        ctx: ctx.clone(),
        map: Box::new(move |x| {
            let cs = c.cosets();
            let mut values = vec![Element::zero(); cs.len()];
            for (qi, v) in s.components(x).into_iter().enumerate() {
                let g = proj.iter().position(|&p| p == qi).expect("surjective");
                values[cs.coset_of(g)] = inv.to_parent(&v);
            }
            c.from_coset_function(&values)
        }),
    })
}
