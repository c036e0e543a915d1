//! `H(G, H, R^G, left translation) ≅ M_n(R)` with `n = |G/H|`, obtained by
//! evaluating the matrix model at the identity and transposing.

use super::matrix::to_matrix;
use super::verify::{hecke_basis, verify_algebra_map, AlgebraMapReport, BasedView, HeckeView, ImageSpec};
use crate::algebras::{matrix, AlgebraRef, Family};
use crate::element::{Element, Label};
use crate::error::{Error, Result};
use crate::hecke::{HeckeContext, HeckeElement};
use crate::linalg;

pub struct StoneMap {
    ctx: HeckeContext,
    target: AlgebraRef,
    n: usize,
}

pub struct StoneReport {
    pub n: usize,
    pub dimension: usize,
    pub map: AlgebraMapReport,
    /// First failing relation `E_ij E_kl = δ_jk E_il` or `Σ E_ii = 1`
    /// among the preimages, if any.
    pub matrix_units: Option<String>,
}

impl StoneReport {
    pub fn passed(&self) -> bool {
        self.map.is_isomorphism() && self.matrix_units.is_none() && self.dimension == self.n * self.n
    }

    /// One-line summary of the target size.
    pub fn note(&self) -> String {
        format!(
            "R[G/H] is free of rank {n} = |G/H|, so the target is M_{n}(R) of dimension {}",
            self.n * self.n,
            n = self.n
        )
    }
}

impl StoneMap {
    /// Requires `A` to be the function algebra of `G` with left translation.
    pub fn new(ctx: &HeckeContext) -> Result<Self> {
        let a = ctx.algebra();
        let g = ctx.group();
        match a.family() {
            Family::Functions(h) if *h == **g => {}
            _ => return Err(Error::Shape("needs the function algebra of G".into())),
        }
        let act = ctx.action();
        for x in g.elements() {
            for k in g.elements() {
                if act.apply_basis(x, &Label::Index(k)) != a.basis_element(&Label::Index(g.mul(x, k))) {
                    return Err(Error::Shape("needs the left translation action".into()));
                }
            }
        }
        let n = ctx.cosets().len();
        Ok(StoneMap {
            ctx: ctx.clone(),
            target: matrix(ctx.field(), n)?,
            n,
        })
    }

    pub fn size(&self) -> usize {
        self.n
    }

    pub fn target(&self) -> &AlgebraRef {
        &self.target
    }

    /// `σ(φ)_{k,s} = T(φ)_{s,k}(1)`.
    pub fn apply(&self, phi: &HeckeElement) -> Result<Element> {
        if *phi.context() != self.ctx {
            return Err(Error::ContextMismatch("element of a different Hecke algebra".into()));
        }
        let m = to_matrix(phi);
        let id = Label::Index(self.ctx.group().identity());
        let mut out = Element::zero();
        for s in 0..self.n {
            for k in 0..self.n {
                if let Some(c) = m.entry(s, k).coeff(&id) {
                    out.add_term(Label::Index(k * self.n + s), c);
                }
            }
        }
        Ok(out)
    }

    pub fn verify(&self) -> Result<StoneReport> {
        let basis = hecke_basis(&self.ctx);
        let targets: Vec<Element> = self
            .target
            .basis()
            .expect("finite")
            .iter()
            .map(|l| self.target.basis_element(l))
            .collect();
        let report = verify_algebra_map(
            "stone",
            &HeckeView(self.ctx.clone()),
            &basis,
            &BasedView(self.target.clone()),
            |p| self.apply(p),
            ImageSpec::Span(targets),
        );
        let matrix_units = if report.is_isomorphism() {
            self.check_matrix_units(&basis)?
        } else {
            Some("map is not an isomorphism".into())
        };
        Ok(StoneReport {
            n: self.n,
            dimension: self.ctx.dimension(),
            map: report,
            matrix_units,
        })
    }

    /// Pulls each `E_ij` back to the Hecke algebra and checks the matrix-unit
    /// relations by convolution there.
    fn check_matrix_units(&self, basis: &[HeckeElement]) -> Result<Option<String>> {
        let n = self.n;
        let field = self.ctx.field();
        let images: Vec<Element> = basis.iter().map(|b| self.apply(b)).collect::<Result<_>>()?;
        let mut units = Vec::with_capacity(n * n);
        for i in 0..n * n {
            let target = self.target.basis_element(&Label::Index(i));
            let coeffs = linalg::solve(field, &images, &target)
                .ok_or_else(|| Error::Inconsistent(format!("E{} has no preimage", i)))?;
            let mut x = self.ctx.zero();
            for (b, c) in basis.iter().zip(&coeffs) {
                x = x.add(&b.scale(c));
            }
            units.push(x);
        }
        let mut sum = self.ctx.zero();
        for i in 0..n {
            sum = sum.add(&units[i * n + i]);
        }
        if sum != self.ctx.identity() {
            return Ok(Some("sum of diagonal units is not the identity".into()));
        }
        for i in 0..n {
            for j in 0..n {
                for k in 0..n {
                    for l in 0..n {
                        let p = units[i * n + j].convolve(&units[k * n + l])?;
                        let expected = if j == k { units[i * n + l].clone() } else { self.ctx.zero() };
                        if p != expected {
                            return Ok(Some(format!(
                                "E[{},{}] E[{},{}] differs from the expected unit",
                                i + 1,
                                j + 1,
                                k + 1,
                                l + 1
                            )));
                        }
                    }
                }
            }
        }
        Ok(None)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebras::{functions, polynomial, GroupAction};
    use crate::groups::{FiniteGroup, GroupRef, Subgroup};
    use crate::scalars::ScalarField;
    use std::sync::Arc;

    fn stone(h: impl Fn(&GroupRef) -> Subgroup) -> StoneReport {
        let g: GroupRef = Arc::new(FiniteGroup::symmetric(3).unwrap());
        let a = functions(ScalarField::Rationals, &g);
        let ctx = HeckeContext::new(&GroupAction::left_translation(&g, &a).unwrap(), &h(&g)).unwrap();
        StoneMap::new(&ctx).unwrap().verify().unwrap()
    }

    #[test]
    fn three_cosets_give_three_by_three() {
        let r = stone(|g| Subgroup::generated(g, &[1]).unwrap());
        assert_eq!((r.n, r.dimension), (3, 9));
        assert!(r.passed(), "{}", r.map);
        assert!(r.note().contains("M_3(R)"));
    }

    #[test]
    fn extreme_subgroups() {
        let r = stone(Subgroup::whole);
        assert_eq!((r.n, r.dimension), (1, 1));
        assert!(r.passed());
        let r = stone(Subgroup::trivial);
        assert_eq!((r.n, r.dimension), (6, 36));
        assert!(r.passed());
    }

    #[test]
    fn wrong_shape_is_rejected() {
        let g: GroupRef = Arc::new(FiniteGroup::symmetric(3).unwrap());
        let a = polynomial(ScalarField::Rationals, 3, 1).unwrap();
        let ctx = HeckeContext::new(&GroupAction::permute_variables(&g, &a).unwrap(), &Subgroup::trivial(&g)).unwrap();
        assert!(matches!(StoneMap::new(&ctx), Err(Error::Shape(_))));
        let f = functions(ScalarField::Rationals, &g);
        let ctx = HeckeContext::new(&GroupAction::trivial(&g, &f), &Subgroup::trivial(&g)).unwrap();
        assert!(matches!(StoneMap::new(&ctx), Err(Error::Shape(_))));
    }
}
