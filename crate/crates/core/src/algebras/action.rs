use std::collections::HashMap;
use std::fmt;
use std::sync::Arc;

use super::{AlgebraRef, BasedAlgebra, Family, InvariantSubalgebra};
use crate::element::{Element, Label, Monomial};
use crate::error::{Error, Result};
use crate::groups::{FiniteGroup, GroupRef, Subgroup};

type LabelMap = dyn Fn(usize, &Label) -> Element + Send + Sync;

/// A group acting on an algebra, given by the images of basis labels.
#[derive(Clone)]
pub struct GroupAction {
    group: GroupRef,
    algebra: AlgebraRef,
    map: Arc<LabelMap>,
    trivial: bool,
    description: String,
}

impl fmt::Debug for GroupAction {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "GroupAction({} on {})", self.description, self.algebra.name())
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ActionCheck {
    pub name: &'static str,
    pub passed: bool,
    pub witness: Option<String>,
}

#[derive(Clone, Debug, Default)]
pub struct ActionReport {
    pub checks: Vec<ActionCheck>,
}

impl ActionReport {
    pub fn passed(&self) -> bool {
        self.checks.iter().all(|c| c.passed)
    }

    pub fn first_failure(&self) -> Option<&ActionCheck> {
        self.checks.iter().find(|c| !c.passed)
    }
}

impl fmt::Display for ActionReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for c in &self.checks {
            let status = if c.passed { "PASS" } else { "FAIL" };
            write!(f, "{status} action {}", c.name)?;
            if let Some(w) = &c.witness {
                write!(f, ": {w}")?;
            }
            writeln!(f)?;
        }
        Ok(())
    }
}

fn same_group(a: &FiniteGroup, b: &FiniteGroup) -> bool {
    std::ptr::eq(a, b) || a == b
}

impl GroupAction {
    /// Wraps a map without verifying it; see [`GroupAction::verify`].
    pub fn from_fn(
        group: GroupRef,
        algebra: AlgebraRef,
        description: impl Into<String>,
        map: impl Fn(usize, &Label) -> Element + Send + Sync + 'static,
    ) -> Self {
        GroupAction {
            group,
            algebra,
            map: Arc::new(map),
            trivial: false,
            description: description.into(),
        }
    }

    /// Errors with the first violation if [`GroupAction::verify`] fails.
    pub fn verified(self) -> Result<Self> {
        let report = self.verify();
        match report.first_failure() {
            None => Ok(self),
            Some(c) => Err(Error::ActionVerification(format!(
                "{} fails for {}: {}",
                c.name,
                self.description,
                c.witness.clone().unwrap_or_default()
            ))),
        }
    }

    pub fn trivial(group: &GroupRef, algebra: &AlgebraRef) -> Self {
        let field = algebra.field();
        let mut a = GroupAction::from_fn(group.clone(), algebra.clone(), "trivial", move |_, l| {
            Element::basis(l.clone(), field)
        });
        a.trivial = true;
        a
    }

    /// `α_σ x_i = x_{σ(i)}` on a polynomial algebra.
    pub fn permute_variables(group: &GroupRef, algebra: &AlgebraRef) -> Result<Self> {
        let Family::Polynomial(n) = algebra.family() else {
            return Err(Error::Shape("permute_variables needs a polynomial algebra".into()));
        };
        if group.degree() != Some(n) {
            return Err(Error::Shape(format!("permute_variables needs permutations of degree {n}")));
        }
        let g2 = group.clone();
        let field = algebra.field();
        GroupAction::from_fn(group.clone(), algebra.clone(), "permute_variables", move |g, l| {
            let Label::Monomial(m) = l else { panic!("monomial label expected") };
            let sigma = g2.permutation(g).expect("permutation group");
            let mut e = vec![0; m.0.len()];
            for (i, &x) in m.0.iter().enumerate() {
                e[sigma[i]] = x;
            }
            Element::basis(Label::Monomial(Monomial(e)), field)
        })
        .verified()
    }

    /// `α_g δ_k = δ_{gk}` on the functions on the acting group.
    pub fn left_translation(group: &GroupRef, algebra: &AlgebraRef) -> Result<Self> {
        match algebra.family() {
            Family::Functions(h) if same_group(&h, group) => {}
            _ => return Err(Error::Shape("left_translation needs the function algebra of the acting group".into())),
        }
        let g2 = group.clone();
        let field = algebra.field();
        GroupAction::from_fn(group.clone(), algebra.clone(), "left_translation", move |g, l| {
            Element::basis(Label::Index(g2.mul(g, l.index().expect("index label"))), field)
        })
        .verified()
    }

    /// Linear extension to `R[N]` of automorphisms `theta[g]` of `N`.
    pub fn by_automorphisms(
        group: &GroupRef,
        algebra: &AlgebraRef,
        theta: Vec<Vec<usize>>,
        description: &str,
    ) -> Result<Self> {
        let Family::GroupAlgebra(n) = algebra.family() else {
            return Err(Error::Shape(format!("{description} needs a group algebra")));
        };
        if theta.len() != group.order() || theta.iter().any(|t| !n.is_automorphism(t)) {
            return Err(Error::ActionVerification(format!("{description}: not a family of automorphisms")));
        }
        let field = algebra.field();
        GroupAction::from_fn(group.clone(), algebra.clone(), description, move |g, l| {
            Element::basis(Label::Index(theta[g][l.index().expect("index label")]), field)
        })
        .verified()
    }

    /// `α_g a = g a g⁻¹` on the group algebra of the acting group.
    pub fn conjugation(group: &GroupRef, algebra: &AlgebraRef) -> Result<Self> {
        match algebra.family() {
            Family::GroupAlgebra(h) if same_group(&h, group) => {}
            _ => return Err(Error::Shape("conjugation needs the group algebra of the acting group".into())),
        }
        let theta = group
            .elements()
            .map(|g| group.elements().map(|x| group.conj(g, x)).collect())
            .collect();
        GroupAction::by_automorphisms(group, algebra, theta, "conjugation")
    }

    /// Conjugation of `G` on `R[N]` for a normal subgroup `N`, where the
    /// algebra is built on `n.as_group()`.
    pub fn conjugation_on_normal(group: &GroupRef, n: &Subgroup, algebra: &AlgebraRef) -> Result<Self> {
        let theta = group.conjugation_on(n)?;
        GroupAction::by_automorphisms(group, algebra, theta, "conjugation")
    }

    /// Permutation of the factors of `R[L^m]` by a permutation group of degree `m`.
    pub fn permute_factors(group: &GroupRef, algebra: &AlgebraRef) -> Result<Self> {
        let Family::GroupAlgebra(n) = algebra.family() else {
            return Err(Error::Shape("permute_factors needs a group algebra".into()));
        };
        let theta = n.permute_factors(group)?;
        GroupAction::by_automorphisms(group, algebra, theta, "permute_factors")
    }

    /// Polynomial action given by the images of the variables, extended
    /// multiplicatively. `images[g][i]` is `α_g x_{i+1}`.
    pub fn from_generator_images(group: &GroupRef, algebra: &AlgebraRef, images: Vec<Vec<Element>>) -> Self {
        let alg = algebra.clone();
        GroupAction::from_fn(group.clone(), algebra.clone(), "generator images", move |g, l| {
            let Label::Monomial(m) = l else { panic!("monomial label expected") };
            let mut r = alg.one();
            for (i, &e) in m.0.iter().enumerate() {
                for _ in 0..e {
                    r = alg.mul(&r, &images[g][i]);
                }
            }
            r
        })
    }

    /// Action on a finite basis given by `images[g][j] = α_g(basis[j])`.
    pub fn from_basis_images(group: &GroupRef, algebra: &AlgebraRef, images: Vec<Vec<Element>>) -> Result<Self> {
        let basis = algebra.basis().ok_or(Error::DegreeRequired)?;
        let pos: HashMap<Label, usize> = basis.into_iter().enumerate().map(|(i, l)| (l, i)).collect();
        Ok(GroupAction::from_fn(group.clone(), algebra.clone(), "basis images", move |g, l| {
            images[g][pos[l]].clone()
        }))
    }

    /// `α₁(g₁) ⊗ α₂(g₂)` on `A₁ ⊗ A₂`, for `product = G₁ × G₂`.
    pub fn tensor(a1: &GroupAction, a2: &GroupAction, product: &GroupRef, algebra: &AlgebraRef) -> Result<Self> {
        let n2 = a2.group.order();
        if product.order() != a1.group.order() * n2 {
            return Err(Error::Shape("tensor action needs the direct product group".into()));
        }
        let (x, y) = (a1.clone(), a2.clone());
        let mut t = GroupAction::from_fn(product.clone(), algebra.clone(), "tensor", move |g, l| {
            let (a, b) = l.split().expect("pair label");
            Element::tensor(&x.apply_basis(g / n2, a), &y.apply_basis(g % n2, b))
        });
        t.trivial = a1.trivial && a2.trivial;
        t.verified()
    }

    /// The same maps on `A^op`.
    pub fn opposite(&self, op_algebra: &AlgebraRef) -> Result<Self> {
        let inner = self.clone();
        let mut a = GroupAction::from_fn(self.group.clone(), op_algebra.clone(), format!("opposite({})", self.description), move |g, l| {
            inner.apply_basis(g, l)
        });
        a.trivial = self.trivial;
        a.verified()
    }

    /// Restriction to a subgroup, acting through `k.as_group()`.
    pub fn restrict(&self, k: &Subgroup) -> Result<(GroupRef, Self)> {
        let (kg, emb) = k.as_group();
        let kg = Arc::new(kg);
        let inner = self.clone();
        let mut a = GroupAction::from_fn(kg.clone(), self.algebra.clone(), format!("restricted({})", self.description), move |g, l| {
            inner.apply_basis(emb[g], l)
        });
        a.trivial = self.trivial;
        Ok((kg, a.verified()?))
    }

    /// The action of `G/N` on `A^N`, given the projection `G → G/N`.
    pub fn induced_on_invariants(
        &self,
        quotient: &GroupRef,
        projection: &[usize],
        invariants: &Arc<InvariantSubalgebra>,
    ) -> Result<Self> {
        let reps: Vec<usize> = quotient
            .elements()
            .map(|q| projection.iter().position(|&p| p == q).expect("surjective projection"))
            .collect();
        let inner = self.clone();
        let inv = invariants.clone();
        let algebra: AlgebraRef = invariants.clone();
        let mut a = GroupAction::from_fn(quotient.clone(), algebra, format!("induced({})", self.description), move |q, l| {
            let x = inner.apply(reps[q], &inv.to_parent(&inv.basis_element(l)));
            inv.from_parent(&x).expect("image of an invariant is invariant")
        });
        a.trivial = self.trivial;
        a.verified()
    }

    pub fn group(&self) -> &GroupRef {
        &self.group
    }

    pub fn algebra(&self) -> &AlgebraRef {
        &self.algebra
    }

    pub fn is_trivial(&self) -> bool {
        self.trivial
    }

    pub fn description(&self) -> &str {
        &self.description
    }

    pub fn apply_basis(&self, g: usize, l: &Label) -> Element {
        (self.map)(g, l)
    }

    pub fn apply(&self, g: usize, x: &Element) -> Element {
        if self.trivial || g == 0 {
            return x.clone();
        }
        let mut r = Element::zero();
        for (l, c) in x {
            r.add_scaled(&self.apply_basis(g, l), c);
        }
        r
    }

    /// First element of `elements` not fixing `x`.
    pub fn first_non_fixing(&self, elements: &[usize], x: &Element) -> Option<usize> {
        elements.iter().copied().find(|&s| self.apply(s, x) != *x)
    }

    /// Checks that every `α_g` is a degree-preserving unital algebra map and
    /// that `g ↦ α_g` is a homomorphism, on the enumerable basis.
    pub fn verify(&self) -> ActionReport {
        let a = self.algebra.as_ref();
        let g = &self.group;
        let basis = match a.enumerable_basis() {
            Ok(b) => b,
            Err(e) => {
                return ActionReport {
                    checks: vec![ActionCheck {
                        name: "basis",
                        passed: false,
                        witness: Some(e.to_string()),
                    }],
                }
            }
        };
        let cap = a.degree_cap();
        let fmt_g = |x: usize| g.name(x);
        let basis_elems: Vec<Element> = basis.iter().map(|l| a.basis_element(l)).collect();
        let images: Vec<Vec<Element>> = g
            .elements()
            .map(|s| basis.iter().map(|l| self.apply_basis(s, l)).collect())
            .collect();
        let mut report = ActionReport::default();
        let mut push = |name, witness: Option<String>| {
            report.checks.push(ActionCheck {
                name,
                passed: witness.is_none(),
                witness,
            })
        };

        let identity = basis
            .iter()
            .zip(&basis_elems)
            .find(|(l, e)| self.apply_basis(0, l) != **e)
            .map(|(l, _)| format!("α_id moves {}", a.format_label(l)));
        push("identity", identity);

        let mut hom = None;
        'outer: for s in g.elements() {
            for t in g.elements() {
                let st = g.mul(s, t);
                for (j, l) in basis.iter().enumerate() {
                    if self.apply(s, &images[t][j]) != images[st][j] {
                        hom = Some(format!("g = {}, k = {}, label {}", fmt_g(s), fmt_g(t), a.format_label(l)));
                        break 'outer;
                    }
                }
            }
        }
        push("homomorphism", hom);

        let one = a.one();
        let unit = g
            .elements()
            .find(|&s| self.apply(s, &one) != one)
            .map(|s| format!("α_{} does not fix the unit", fmt_g(s)));
        push("unit", unit);

        let mut mult = None;
        'outer2: for s in g.elements() {
            for (i, x) in basis.iter().enumerate() {
                for (j, y) in basis.iter().enumerate() {
                    if let Some(c) = cap {
                        if a.is_graded() && a.degree(x) + a.degree(y) > c {
                            continue;
                        }
                    }
                    let lhs = self.apply(s, &a.mul_basis(x, y));
                    let rhs = a.mul(&images[s][i], &images[s][j]);
                    if lhs != rhs {
                        mult = Some(format!(
                            "g = {}, b = {}, b' = {}",
                            fmt_g(s),
                            a.format_label(x),
                            a.format_label(y)
                        ));
                        break 'outer2;
                    }
                }
            }
        }
        push("multiplicative", mult);

        let mut degree = None;
        if a.is_graded() {
            'outer3: for s in g.elements() {
                for (j, l) in basis.iter().enumerate() {
                    let d = a.degree(l);
                    if images[s][j].labels().any(|m| a.degree(m) != d) {
                        degree = Some(format!(
                            "α_{}({}) = {} is not homogeneous of degree {d}",
                            fmt_g(s),
                            a.format_label(l),
                            a.pretty(&images[s][j])
                        ));
                        break 'outer3;
                    }
                }
            }
        }
        push("degree", degree);
        report
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebras::{functions, group_algebra, polynomial, scalar};
    use crate::scalars::ScalarField;

    fn q() -> ScalarField {
        ScalarField::Rationals
    }

    fn s3() -> GroupRef {
        Arc::new(FiniteGroup::symmetric(3).unwrap())
    }

    #[test]
    fn permutation_action_on_polynomials() {
        let g = s3();
        let a = polynomial(q(), 3, 2).unwrap();
        let act = GroupAction::permute_variables(&g, &a).unwrap();
        let x1 = a.parse_label("x1").unwrap();
        let s12 = g.parse_element("(12)").unwrap();
        assert_eq!(a.format(&act.apply_basis(s12, &x1)), "[(x2, 1)]");
        assert!(act.verify().passed());
    }

    #[test]
    fn left_translation_on_functions() {
        let g = s3();
        let a = functions(q(), &g);
        let act = GroupAction::left_translation(&g, &a).unwrap();
        for s in g.elements() {
            for k in g.elements() {
                assert_eq!(act.apply_basis(s, &Label::Index(k)), a.basis_element(&Label::Index(g.mul(s, k))));
            }
        }
    }

    #[test]
    fn trivial_passes() {
        let g = s3();
        assert!(GroupAction::trivial(&g, &scalar(q())).verify().passed());
        assert!(GroupAction::trivial(&g, &group_algebra(q(), &g)).verify().passed());
    }

    #[test]
    fn inhomogeneous_generator_images_fail() {
        let g: GroupRef = Arc::new(FiniteGroup::cyclic(2).unwrap());
        let a = polynomial(q(), 2, 2).unwrap();
        let x = |s: &str| a.parse(s).unwrap();
        let images = vec![
            vec![x("[(x1, 1)]"), x("[(x2, 1)]")],
            vec![x("[(x1, 1), (1, 1)]"), x("[(x2, 1)]")],
        ];
        let act = GroupAction::from_generator_images(&g, &a, images);
        let report = act.verify();
        assert!(!report.passed());
        let degree = report.checks.iter().find(|c| c.name == "degree").unwrap();
        assert!(!degree.passed);
        assert!(degree.witness.as_ref().unwrap().contains("x1"));
        assert!(act.verified().is_err());
    }

    #[test]
    fn wrong_shapes_rejected() {
        let g = s3();
        assert!(GroupAction::left_translation(&g, &group_algebra(q(), &g)).is_err());
        assert!(GroupAction::permute_variables(&g, &polynomial(q(), 2, 1).unwrap()).is_err());
    }
}
