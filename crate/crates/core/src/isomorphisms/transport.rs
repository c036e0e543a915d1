//! Transports between skew Hecke algebras: quotients by normal subgroups,
//! direct products, intermediate subgroups, conjugate subgroups,
//! semidirect products, cocycle twists and opposites.

use std::sync::Arc;

use super::matrix::{from_matrix, to_matrix, HeckeMatrix};
use super::verify::{hecke_basis, hecke_span, verify_algebra_map, AlgebraMapReport, AlgebraView, BasedView, HeckeView, ImageSpec};
use crate::algebras::{opposite, scalar, tensor, AlgebraRef, BasedAlgebra, Family, GroupAction, InvariantSubalgebra, TableAlgebra};
use crate::element::{Element, Label};
use crate::error::{Error, Result};
use crate::groups::{quotient, FiniteGroup, GroupRef, Subgroup};
use crate::hecke::{HeckeContext, HeckeElement};
use crate::linalg;
use crate::scalars::ScalarField;

type HeckeMap = Arc<dyn Fn(&HeckeElement) -> Result<HeckeElement> + Send + Sync>;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum TransportKind {
    Isomorphism,
    /// Injective homomorphism, image not claimed.
    Embedding,
    /// `f(xy) = f(y) f(x)`.
    AntiIsomorphism,
}

/// A map between two Hecke algebras with an optional inverse.
#[derive(Clone)]
pub struct Transport {
    name: String,
    kind: TransportKind,
    source: HeckeContext,
    target: HeckeContext,
    forward: HeckeMap,
    backward: Option<HeckeMap>,
}

impl Transport {
    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn kind(&self) -> TransportKind {
        self.kind
    }

    pub fn source(&self) -> &HeckeContext {
        &self.source
    }

    pub fn target(&self) -> &HeckeContext {
        &self.target
    }

    pub fn apply(&self, phi: &HeckeElement) -> Result<HeckeElement> {
        if *phi.context() != self.source {
            return Err(Error::ContextMismatch(format!("{} applied outside its source", self.name)));
        }
        (self.forward)(phi)
    }

    pub fn apply_inverse(&self, psi: &HeckeElement) -> Result<HeckeElement> {
        let back = self
            .backward
            .as_ref()
            .ok_or_else(|| Error::Shape(format!("{} has no inverse", self.name)))?;
        if *psi.context() != self.target {
            return Err(Error::ContextMismatch(format!("inverse of {} applied outside its target", self.name)));
        }
        back(psi)
    }

    /// Runs [`verify_algebra_map`] on the source module basis.
    pub fn verify(&self) -> AlgebraMapReport {
        let basis = hecke_basis(&self.source);
        let codomain = HeckeView(self.target.clone());
        let image = match self.kind {
            TransportKind::Embedding => ImageSpec::Unstated,
            _ => ImageSpec::Span(hecke_span(&self.target)),
        };
        let f = |p: &HeckeElement| self.apply(p);
        match self.kind {
            TransportKind::AntiIsomorphism => {
                verify_algebra_map(&self.name, &Reversed(HeckeView(self.source.clone())), &basis, &codomain, f, image)
            }
            _ => verify_algebra_map(&self.name, &HeckeView(self.source.clone()), &basis, &codomain, f, image),
        }
    }
}

impl std::fmt::Debug for Transport {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "Transport({}: {:?} -> {:?})", self.name, self.source, self.target)
    }
}

/// An algebra with its multiplication reversed.
pub struct Reversed<V>(pub V);

impl<V: AlgebraView> AlgebraView for Reversed<V> {
    type Elem = V::Elem;
    fn field(&self) -> ScalarField {
        self.0.field()
    }
    fn one(&self) -> V::Elem {
        self.0.one()
    }
    fn zero(&self) -> V::Elem {
        self.0.zero()
    }
    fn add(&self, x: &V::Elem, y: &V::Elem) -> V::Elem {
        self.0.add(x, y)
    }
    fn mul(&self, x: &V::Elem, y: &V::Elem) -> Result<V::Elem> {
        self.0.mul(y, x)
    }
    fn flatten(&self, x: &V::Elem) -> Element {
        self.0.flatten(x)
    }
    fn describe(&self, x: &V::Elem) -> String {
        self.0.describe(x)
    }
}

/// The Hecke algebra of a finite-dimensional context as a table algebra on
/// its module basis.
pub fn hecke_table(ctx: &HeckeContext) -> Result<AlgebraRef> {
    if ctx.is_graded() {
        return Err(Error::Shape("table form needs a finite-dimensional coefficient algebra".into()));
    }
    let sc = ctx.structure_constants()?;
    let mut one = Element::zero();
    for (i, c) in ctx.identity().coordinates()? {
        one.add_term(Label::Index(i), &c);
    }
    let table = sc.products();
    Ok(TableAlgebra::new(ctx.field(), "hecke", sc.basis, table, one)?.into_ref())
}

/// `Σ c_i · basis_i` for `x` in the coordinates of [`hecke_table`].
pub fn from_table_coordinates(ctx: &HeckeContext, x: &Element) -> HeckeElement {
    let mut r = ctx.zero();
    for (l, c) in x {
        r = r.add(&ctx.basis_element(l.index().expect("table label")).scale(c));
    }
    r
}

/// `H(G, H, A) ≅ H(G/N, H/N, A^N)` for `N ⊴ G` with `N ⊆ H`.
pub fn quotient_transport(ctx: &HeckeContext, n: &Subgroup) -> Result<Transport> {
    if !n.is_subset_of(ctx.subgroup()) {
        return Err(Error::NotASubgroup(format!("{} is not contained in H", n.describe())));
    }
    let (q, proj) = quotient(ctx.group(), n)?;
    let q: GroupRef = Arc::new(q);
    let hq: Vec<usize> = ctx.subgroup().elements().iter().map(|&h| proj[h]).collect();
    let hq = Subgroup::from_elements(&q, &hq)?;
    let inv = Arc::new(InvariantSubalgebra::new(ctx.action(), n)?);
    let action = ctx.action().induced_on_invariants(&q, &proj, &inv)?;
    let target = HeckeContext::new(&action, &hq)?;

    let (src, tgt, inv_f, proj_f) = (ctx.clone(), target.clone(), inv.clone(), proj.clone());
    let forward: HeckeMap = Arc::new(move |phi| {
        let full = phi.expand();
        let cs = src.cosets();
        let tcs = tgt.cosets();
        let values = (0..tcs.len())
            .map(|c| {
                let g = proj_f.iter().position(|&p| p == tcs.rep(c)).expect("surjective");
                inv_f.from_parent(&full[cs.coset_of(g)])
            })
            .collect::<Result<Vec<_>>>()?;
        tgt.from_coset_function(&values)
    });
    let (src, tgt) = (ctx.clone(), target.clone());
    let backward: HeckeMap = Arc::new(move |psi| {
        let full = psi.expand();
        let cs = src.cosets();
        let values: Vec<Element> = (0..cs.len())
            .map(|c| inv.to_parent(&full[tgt.cosets().coset_of(proj[cs.rep(c)])]))
            .collect();
        src.from_coset_function(&values)
    });
    Ok(Transport {
        name: "quotient".into(),
        kind: TransportKind::Isomorphism,
        source: ctx.clone(),
        target,
        forward,
        backward: Some(backward),
    })
}

/// `H(G₁,H₁,A₁) ⊗ H(G₂,H₂,A₂) ≅ H(G₁×G₂, H₁×H₂, A₁⊗A₂)`, with the left
/// side realised as the tensor product of the two structure tables.
pub struct ProductTransport {
    left: HeckeContext,
    right: HeckeContext,
    domain: AlgebraRef,
    target: HeckeContext,
}

impl ProductTransport {
    pub fn new(left: &HeckeContext, right: &HeckeContext) -> Result<Self> {
        if left.field() != right.field() {
            return Err(Error::ContextMismatch("factors over different fields".into()));
        }
        let domain = tensor(&hecke_table(left)?, &hecke_table(right)?)?;
        let g: GroupRef = Arc::new(FiniteGroup::direct_product(left.group(), right.group())?);
        let n2 = right.group().order();
        let h: Vec<usize> = left
            .subgroup()
            .elements()
            .iter()
            .flat_map(|&a| right.subgroup().elements().iter().map(move |&b| a * n2 + b))
            .collect();
        let h = Subgroup::from_elements(&g, &h)?;
        let a = tensor(left.algebra(), right.algebra())?;
        let action = GroupAction::tensor(left.action(), right.action(), &g, &a)?;
        Ok(ProductTransport {
            left: left.clone(),
            right: right.clone(),
            domain,
            target: HeckeContext::new(&action, &h)?,
        })
    }

    pub fn domain(&self) -> &AlgebraRef {
        &self.domain
    }

    pub fn target(&self) -> &HeckeContext {
        &self.target
    }

    /// `φ₁ ⊗ φ₂ ↦ ((g₁,g₂)H ↦ φ₁(g₁H₁) ⊗ φ₂(g₂H₂))`.
    pub fn pure(&self, phi1: &HeckeElement, phi2: &HeckeElement) -> Result<HeckeElement> {
        let (f1, f2) = (phi1.expand(), phi2.expand());
        let n2 = self.right.group().order();
        let cs = self.target.cosets();
        let values: Vec<Element> = (0..cs.len())
            .map(|c| {
                let g = cs.rep(c);
                Element::tensor(
                    &f1[self.left.cosets().coset_of(g / n2)],
                    &f2[self.right.cosets().coset_of(g % n2)],
                )
            })
            .collect();
        self.target.from_coset_function(&values)
    }

    pub fn apply(&self, x: &Element) -> Result<HeckeElement> {
        let mut r = self.target.zero();
        for (l, c) in x {
            let (i, j) = l.split().expect("tensor label");
            let a = self.left.basis_element(i.index().expect("index"));
            let b = self.right.basis_element(j.index().expect("index"));
            r = r.add(&self.pure(&a, &b)?.scale(c));
        }
        Ok(r)
    }

    pub fn verify(&self) -> AlgebraMapReport {
        let basis: Vec<Element> = self
            .domain
            .basis()
            .expect("finite")
            .iter()
            .map(|l| self.domain.basis_element(l))
            .collect();
        verify_algebra_map(
            "product",
            &BasedView(self.domain.clone()),
            &basis,
            &HeckeView(self.target.clone()),
            |x| self.apply(x),
            ImageSpec::Span(hecke_span(&self.target)),
        )
    }
}

/// The context `(K, H, A, α|_K)` for `H ≤ K ≤ G`, with the embedding
/// `K → G` on element indices.
pub fn restrict_context(big: &HeckeContext, k: &Subgroup) -> Result<(HeckeContext, Vec<usize>)> {
    if !big.subgroup().is_subset_of(k) {
        return Err(Error::NotASubgroup(format!("H is not contained in {}", k.describe())));
    }
    let (kg, action) = big.action().restrict(k)?;
    let emb = k.elements().to_vec();
    let h: Vec<usize> = big
        .subgroup()
        .elements()
        .iter()
        .map(|&x| k.position(x).expect("H inside K"))
        .collect();
    let h = Subgroup::from_elements(&kg, &h)?;
    Ok((HeckeContext::new(&action, &h)?, emb))
}

/// Extension by zero `H(K, H, A) → H(G, H, A)`.
pub fn intermediate_embed(big: &HeckeContext, k: &Subgroup) -> Result<Transport> {
    let (small, emb) = restrict_context(big, k)?;
    let (s, b) = (small.clone(), big.clone());
    let forward: HeckeMap = Arc::new(move |phi| {
        let full = phi.expand();
        let mut values = vec![Element::zero(); b.cosets().len()];
        for (c, v) in full.into_iter().enumerate() {
            values[b.cosets().coset_of(emb[s.cosets().rep(c)])] = v;
        }
        b.from_coset_function(&values)
    });
    Ok(Transport {
        name: "intermediate".into(),
        kind: TransportKind::Embedding,
        source: small,
        target: big.clone(),
        forward,
        backward: None,
    })
}

/// `H(G, H, A) ≅ H(G, sHs⁻¹, A)` through the matrix model, relabelling
/// cosets by `kH ↦ ks⁻¹·sHs⁻¹`.
pub fn conjugate_transport(ctx: &HeckeContext, s: usize) -> Result<Transport> {
    let g = ctx.group().clone();
    let h2 = ctx.subgroup().conjugate(s);
    let target = HeckeContext::new(ctx.action(), &h2)?;
    let cs = ctx.cosets();
    let sinv = g.inv(s);
    let relabel: Vec<usize> = (0..cs.len())
        .map(|c| target.cosets().coset_of(g.mul(cs.rep(c), sinv)))
        .collect();
    for x in g.elements() {
        if let Some(c) = (0..cs.len()).find(|&c| relabel[cs.act(x, c)] != target.cosets().act(x, relabel[c])) {
            return Err(Error::Inconsistent(format!(
                "relabelling is not equivariant at {} and {}",
                g.name(x),
                cs.coset_name(c)
            )));
        }
    }
    let inverse: Vec<usize> = {
        let mut v = vec![0; relabel.len()];
        for (c, &r) in relabel.iter().enumerate() {
            v[r] = c;
        }
        v
    };
    let move_matrix = |from: &HeckeMatrix, to: &HeckeContext, map: &[usize]| {
        let mut m = HeckeMatrix::zero(to);
        for r in 0..map.len() {
            for c in 0..map.len() {
                *m.entry_mut(map[r], map[c]) = from.entry(r, c).clone();
            }
        }
        from_matrix(&m)
    };
    let tgt = target.clone();
    let forward: HeckeMap = Arc::new(move |phi| move_matrix(&to_matrix(phi), &tgt, &relabel));
    let src = ctx.clone();
    let backward: HeckeMap = Arc::new(move |psi| move_matrix(&to_matrix(psi), &src, &inverse));
    Ok(Transport {
        name: "conjugate".into(),
        kind: TransportKind::Isomorphism,
        source: ctx.clone(),
        target,
        forward,
        backward: Some(backward),
    })
}

/// `H(K, H, R[N], α) ≅ H(N ⋊ K, H)` when `α` permutes the group elements
/// of `N`. Returns the transport and the semidirect product group.
pub fn semidirect_transport(ctx: &HeckeContext) -> Result<(Transport, GroupRef)> {
    let Family::GroupAlgebra(n) = ctx.algebra().family() else {
        return Err(Error::Shape("coefficients must be a group algebra".into()));
    };
    let k = ctx.group();
    let act = ctx.action();
    let field = ctx.field();
    let mut theta = Vec::with_capacity(k.order());
    for x in k.elements() {
        let mut row = Vec::with_capacity(n.order());
        for m in n.elements() {
            let img = act.apply_basis(x, &Label::Index(m));
            match img.terms().next() {
                Some((Label::Index(j), c)) if img.len() == 1 && c.is_one() => row.push(*j),
                _ => {
                    return Err(Error::Shape(format!(
                        "{} does not act by a group automorphism",
                        k.name(x)
                    )))
                }
            }
        }
        theta.push(row);
    }
    let sd = FiniteGroup::semidirect(&n, k, &theta)?;
    let w = sd.group.clone();
    let h: Vec<usize> = ctx.subgroup().elements().iter().map(|&x| sd.embed_complement[x]).collect();
    let h = Subgroup::from_elements(&w, &h)?;
    let r = scalar(field);
    let target = HeckeContext::new(&GroupAction::trivial(&w, &r), &h)?;

    let (src, tgt, sd_f) = (ctx.clone(), target.clone(), sd.clone());
    let one = r.one();
    let forward: HeckeMap = Arc::new(move |phi| {
        let full = phi.expand();
        let mut values = vec![Element::zero(); tgt.cosets().len()];
        for (c, v) in full.iter().enumerate() {
            let kc = src.cosets().rep(c);
            for (l, coef) in v {
                let m = l.index().expect("group element");
                values[tgt.cosets().coset_of(sd_f.pair(m, kc))] = one.scale(coef);
            }
        }
        tgt.from_coset_function(&values)
    });
    let (src, tgt, n2) = (ctx.clone(), target.clone(), n.clone());
    let backward: HeckeMap = Arc::new(move |rho| {
        let full = rho.expand();
        let values: Vec<Element> = (0..src.cosets().len())
            .map(|c| {
                let kc = src.cosets().rep(c);
                let mut v = Element::zero();
                for m in n2.elements() {
                    if let Some((_, coef)) = full[tgt.cosets().coset_of(sd.pair(m, kc))].terms().next() {
                        v.add_term(Label::Index(m), coef);
                    }
                }
                v
            })
            .collect();
        src.from_coset_function(&values)
    });
    Ok((
        Transport {
            name: "semidirect".into(),
            kind: TransportKind::Isomorphism,
            source: ctx.clone(),
            target,
            forward,
            backward: Some(backward),
        },
        w,
    ))
}

/// Two-sided inverse of `x` in `a`, found by solving `x·y = 1` exactly.
pub fn unit_inverse(a: &dyn BasedAlgebra, x: &Element) -> Result<Option<Element>> {
    let basis = a.enumerable_basis()?;
    let columns: Vec<Element> = basis.iter().map(|l| a.mul(x, &a.basis_element(l))).collect();
    let one = a.one();
    let Some(coeffs) = linalg::solve(a.field(), &columns, &one) else {
        return Ok(None);
    };
    let mut y = Element::zero();
    for (l, c) in basis.iter().zip(&coeffs) {
        y.add_term(l.clone(), c);
    }
    Ok((a.mul(&y, x) == one).then_some(y))
}

/// `χ(g) = u·(α_g u)⁻¹` for a unit `u`.
pub fn coboundary_from_unit(action: &GroupAction, u: &Element) -> Result<Vec<Element>> {
    let a = action.algebra();
    let uinv = unit_inverse(a.as_ref(), u)?.ok_or_else(|| Error::NotAUnit(a.pretty(u)))?;
    Ok(action
        .group()
        .elements()
        .map(|g| a.mul(u, &action.apply(g, &uinv)))
        .collect())
}

/// The twisted action `β_g a = χ(g)(α_g a)χ(g)⁻¹`, verified.
pub fn twisted_action(action: &GroupAction, chi: &[Element]) -> Result<GroupAction> {
    let a = action.algebra().clone();
    let inverses = chi_inverses(a.as_ref(), chi, action.group())?;
    let (alpha, chi) = (action.clone(), chi.to_vec());
    GroupAction::from_fn(action.group().clone(), a.clone(), format!("twisted({})", action.description()), move |g, l| {
        let moved = alpha.apply_basis(g, l);
        a.mul(&a.mul(&chi[g], &moved), &inverses[g])
    })
    .verified()
}

fn chi_inverses(a: &dyn BasedAlgebra, chi: &[Element], g: &GroupRef) -> Result<Vec<Element>> {
    chi.iter()
        .enumerate()
        .map(|(x, c)| {
            unit_inverse(a, c)?.ok_or_else(|| Error::NotAUnit(format!("chi({}) = {}", g.name(x), a.pretty(c))))
        })
        .collect()
}

/// `H(G, H, A, α) ≅ H(G, H, A, β)` via `φ(gH) ↦ φ(gH)χ(g)⁻¹`. Conditions
/// (a) `χ(gg') = χ(g)α_g χ(g')` and (c) `χ(h) = 1` are checked exhaustively;
/// (b) `β_g a = χ(g)(α_g a)χ(g)⁻¹` is checked when `beta` is given and
/// otherwise used to define `β`.
pub fn cocycle_transport(ctx: &HeckeContext, chi: &[Element], beta: Option<&GroupAction>) -> Result<Transport> {
    cocycle_transport_with(ctx, chi, beta, true)
}

/// [`cocycle_transport`] without condition (c); the resulting map is
/// generally not well defined, which [`Transport::verify`] reports.
pub fn cocycle_transport_unchecked(ctx: &HeckeContext, chi: &[Element], beta: Option<&GroupAction>) -> Result<Transport> {
    cocycle_transport_with(ctx, chi, beta, false)
}

fn cocycle_transport_with(
    ctx: &HeckeContext,
    chi: &[Element],
    beta: Option<&GroupAction>,
    check_h: bool,
) -> Result<Transport> {
    let g = ctx.group();
    let a = ctx.algebra();
    let alpha = ctx.action();
    if chi.len() != g.order() {
        return Err(Error::Shape(format!("chi needs {} values", g.order())));
    }
    for x in g.elements() {
        for y in g.elements() {
            if chi[g.mul(x, y)] != a.mul(&chi[x], &alpha.apply(x, &chi[y])) {
                return Err(Error::CocycleCondition {
                    condition: 'a',
                    witness: format!("g = {}, g' = {}", g.name(x), g.name(y)),
                });
            }
        }
    }
    if check_h {
        let one = a.one();
        if let Some(&h) = ctx.subgroup().elements().iter().find(|&&h| chi[h] != one) {
            return Err(Error::CocycleCondition {
                condition: 'c',
                witness: format!("chi({}) = {}", g.name(h), a.pretty(&chi[h])),
            });
        }
    }
    let inverses = chi_inverses(a.as_ref(), chi, g)?;
    let beta = match beta {
        Some(b) => {
            for x in g.elements() {
                for l in a.enumerable_basis()? {
                    let expected = a.mul(&a.mul(&chi[x], &alpha.apply_basis(x, &l)), &inverses[x]);
                    if b.apply_basis(x, &l) != expected {
                        return Err(Error::CocycleCondition {
                            condition: 'b',
                            witness: format!("g = {}, a = {}", g.name(x), a.format_label(&l)),
                        });
                    }
                }
            }
            b.clone()
        }
        None => twisted_action(alpha, chi)?,
    };
    let target = HeckeContext::new(&beta, ctx.subgroup())?;
    let twist = |to: &HeckeContext, factors: Vec<Element>| -> HeckeMap {
        let to = to.clone();
        let a = a.clone();
        Arc::new(move |phi: &HeckeElement| {
            let cs = to.cosets();
            let values: Vec<Element> = phi
                .expand()
                .iter()
                .enumerate()
                .map(|(c, v)| a.mul(v, &factors[cs.rep(c)]))
                .collect();
            to.from_coset_function(&values)
        })
    };
    Ok(Transport {
        name: "cocycle".into(),
        kind: TransportKind::Isomorphism,
        source: ctx.clone(),
        target: target.clone(),
        forward: twist(&target, inverses),
        backward: Some(twist(ctx, chi.to_vec())),
    })
}

/// `φ ↦ (gH ↦ α_g φ(g⁻¹H))` into `H(G, H, A^op, α)`, an anti-isomorphism.
pub fn opposite_transport(ctx: &HeckeContext) -> Result<Transport> {
    let op = opposite(ctx.algebra());
    let target = HeckeContext::new(&ctx.action().opposite(&op)?, ctx.subgroup())?;
    let flip = |from: &HeckeContext, to: &HeckeContext| -> HeckeMap {
        let (from, to) = (from.clone(), to.clone());
        Arc::new(move |phi: &HeckeElement| {
            let full = phi.expand();
            let g = from.group();
            let cs = from.cosets();
            let values: Vec<Element> = (0..cs.len())
                .map(|c| {
                    let x = cs.rep(c);
                    from.action().apply(x, &full[cs.coset_of(g.inv(x))])
                })
                .collect();
            to.from_coset_function(&values)
        })
    };
    Ok(Transport {
        name: "opposite".into(),
        kind: TransportKind::AntiIsomorphism,
        source: ctx.clone(),
        target: target.clone(),
        forward: flip(ctx, &target),
        backward: Some(flip(&target, ctx)),
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebras::{functions, group_algebra, polynomial};
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    fn q() -> ScalarField {
        ScalarField::Rationals
    }

    fn sym(n: usize) -> GroupRef {
        Arc::new(FiniteGroup::symmetric(n).unwrap())
    }

    fn sub(g: &GroupRef, gens: &[&str]) -> Subgroup {
        let gens: Vec<usize> = gens.iter().map(|s| g.parse_element(s).unwrap()).collect();
        Subgroup::generated(g, &gens).unwrap()
    }

    fn poly_ctx(g: &GroupRef, h: &Subgroup, cap: u32) -> HeckeContext {
        let a = polynomial(q(), g.degree().unwrap(), cap).unwrap();
        HeckeContext::new(&GroupAction::permute_variables(g, &a).unwrap(), h).unwrap()
    }

    fn assert_iso(t: &Transport) {
        let r = t.verify();
        assert!(r.is_isomorphism(), "{r}");
    }

    fn round_trip(t: &Transport, samples: usize) {
        let mut rng = ChaCha8Rng::seed_from_u64(5);
        for _ in 0..samples {
            let x = t.source().random_element(&mut rng, 3, Some(1));
            assert_eq!(t.apply_inverse(&t.apply(&x).unwrap()).unwrap(), x);
        }
    }

    #[test]
    fn quotient_by_klein_four() {
        let g = sym(4);
        let d4 = sub(&g, &["(1234)", "(13)"]);
        let v4 = sub(&g, &["(12)(34)", "(13)(24)"]);
        let ctx = poly_ctx(&g, &d4, 2);
        let t = quotient_transport(&ctx, &v4).unwrap();
        assert_eq!(t.target().group().order(), 6);
        assert_eq!(t.target().subgroup().order(), 2);
        assert_eq!(t.target().dimension(), ctx.dimension());
        assert_iso(&t);
        round_trip(&t, 5);
        let s2 = sub(&g, &["(12)"]);
        assert!(quotient_transport(&poly_ctx(&g, &s2, 1), &v4).is_err());
        assert!(matches!(quotient_transport(&ctx, &sub(&g, &["(13)"])), Err(Error::NotNormal(_))));
    }

    #[test]
    fn quotient_by_trivial_subgroup() {
        let g = sym(3);
        let ctx = poly_ctx(&g, &sub(&g, &["(12)"]), 2);
        let t = quotient_transport(&ctx, &Subgroup::trivial(&g)).unwrap();
        assert_eq!(t.target().dimension(), ctx.dimension());
        assert_iso(&t);
    }

    #[test]
    fn products() {
        let g = sym(3);
        let z2: GroupRef = Arc::new(FiniteGroup::cyclic(2).unwrap());
        let r = scalar(q());
        let left = HeckeContext::new(&GroupAction::trivial(&g, &r), &sub(&g, &["(12)"])).unwrap();
        let right = HeckeContext::new(&GroupAction::trivial(&z2, &r), &Subgroup::trivial(&z2)).unwrap();
        let p = ProductTransport::new(&left, &right).unwrap();
        assert_eq!(p.target().dimension(), 4);
        let rep = p.verify();
        assert!(rep.is_isomorphism(), "{rep}");

        let a2 = group_algebra(q(), &z2);
        let right = HeckeContext::new(&GroupAction::trivial(&z2, &a2), &Subgroup::trivial(&z2)).unwrap();
        let a1 = group_algebra(q(), &g);
        let left = HeckeContext::new(&GroupAction::conjugation(&g, &a1).unwrap(), &sub(&g, &["(12)"])).unwrap();
        let p = ProductTransport::new(&left, &right).unwrap();
        assert_eq!(p.target().dimension(), left.dimension() * 4);
        assert!(p.verify().is_isomorphism());
    }

    #[test]
    fn intermediate_subgroups() {
        let g = sym(4);
        let h = sub(&g, &["(12)"]);
        let big = poly_ctx(&g, &h, 1);
        let t = intermediate_embed(&big, &sub(&g, &["(12)", "(23)"])).unwrap();
        assert_eq!(t.kind(), TransportKind::Embedding);
        let r = t.verify();
        assert!(r.is_injective_homomorphism(), "{r}");
        let t = intermediate_embed(&big, &h).unwrap();
        assert!(t.verify().is_injective_homomorphism());
        for i in 0..t.source().dimension() {
            let x = t.source().basis_element(i);
            assert_eq!(t.apply(&x).unwrap(), big.embed_invariant(&x.expectation()).unwrap());
        }
        let t = intermediate_embed(&big, &Subgroup::whole(&g)).unwrap();
        assert_eq!(t.source().dimension(), big.dimension());
        assert!(t.verify().is_isomorphism());
        assert!(intermediate_embed(&big, &sub(&g, &["(34)"])).is_err());
    }

    #[test]
    fn conjugate_subgroups() {
        let g = sym(3);
        let ctx = poly_ctx(&g, &sub(&g, &["(12)"]), 2);
        let s = g.parse_element("(23)").unwrap();
        let t = conjugate_transport(&ctx, s).unwrap();
        assert_eq!(t.target().subgroup(), &sub(&g, &["(13)"]));
        assert_eq!(t.target().dimension(), ctx.dimension());
        assert_iso(&t);
        round_trip(&t, 5);
        let t = conjugate_transport(&ctx, g.parse_element("(12)").unwrap()).unwrap();
        let x = ctx.basis_element(3);
        assert_eq!(t.apply(&x).unwrap().values(), x.values());
    }

    #[test]
    fn semidirect_wreath() {
        let k = sym(3);
        let l = FiniteGroup::cyclic(2).unwrap();
        let n: GroupRef = Arc::new(FiniteGroup::power(&l, 3).unwrap());
        let a = group_algebra(q(), &n);
        let ctx = HeckeContext::new(&GroupAction::permute_factors(&k, &a).unwrap(), &sub(&k, &["(12)"])).unwrap();
        let (t, w) = semidirect_transport(&ctx).unwrap();
        assert_eq!(w.order(), 48);
        assert_eq!(ctx.dimension(), 14);
        assert_eq!(t.target().dimension(), 14);
        assert_iso(&t);
        round_trip(&t, 5);
    }

    #[test]
    fn semidirect_needs_group_elements() {
        let g = sym(3);
        let a = group_algebra(q(), &g);
        let ctx = HeckeContext::new(&GroupAction::conjugation(&g, &a).unwrap(), &sub(&g, &["(12)"])).unwrap();
        assert!(semidirect_transport(&ctx).is_ok());
        let p = poly_ctx(&g, &sub(&g, &["(12)"]), 1);
        assert!(matches!(semidirect_transport(&p), Err(Error::Shape(_))));
    }

    #[test]
    fn coboundary_twist() {
        let g = sym(3);
        let a = functions(q(), &g);
        let ctx = HeckeContext::new(&GroupAction::left_translation(&g, &a).unwrap(), &sub(&g, &["(12)"])).unwrap();
        let h = ctx.subgroup().clone();
        // constant on right cosets Hk, values 1, 2, 3
        let mut u = Element::zero();
        let mut seen: Vec<Vec<usize>> = Vec::new();
        for k in g.elements() {
            let mut right: Vec<usize> = h.elements().iter().map(|&x| g.mul(x, k)).collect();
            right.sort_unstable();
            let i = seen.iter().position(|r| *r == right).unwrap_or_else(|| {
                seen.push(right.clone());
                seen.len() - 1
            });
            u.add_term(Label::Index(k), &q().from_usize(i + 1));
        }
        let chi = coboundary_from_unit(ctx.action(), &u).unwrap();
        let t = cocycle_transport(&ctx, &chi, Some(ctx.action())).unwrap();
        assert_iso(&t);
        round_trip(&t, 5);
        let ones = vec![a.one(); 6];
        let t = cocycle_transport(&ctx, &ones, None).unwrap();
        let x = ctx.basis_element(2);
        assert_eq!(t.apply(&x).unwrap().values(), x.values());
    }

    #[test]
    fn inner_action_untwists() {
        let g = sym(3);
        let a = group_algebra(q(), &g);
        let ctx = HeckeContext::new(&GroupAction::trivial(&g, &a), &Subgroup::trivial(&g)).unwrap();
        let chi: Vec<Element> = g.elements().map(|x| Element::basis(Label::Index(x), q())).collect();
        let conj = GroupAction::conjugation(&g, &a).unwrap();
        let t = cocycle_transport(&ctx, &chi, Some(&conj)).unwrap();
        assert_iso(&t);
        let whole = HeckeContext::new(&GroupAction::trivial(&g, &a), &Subgroup::whole(&g)).unwrap();
        let err = cocycle_transport(&whole, &chi, Some(&conj)).unwrap_err();
        assert_eq!(
            err,
            Error::CocycleCondition {
                condition: 'c',
                witness: "chi((12)) = (12)".into()
            }
        );
        let t = cocycle_transport_unchecked(&whole, &chi, Some(&conj)).unwrap();
        assert!(!t.verify().passed());
        let bad: Vec<Element> = vec![a.one().scale(&q().from_i64(2)); 6];
        assert!(matches!(
            cocycle_transport(&ctx, &bad, None),
            Err(Error::CocycleCondition { condition: 'a', .. })
        ));
    }

    #[test]
    fn opposite_algebras() {
        let g = sym(3);
        let a = group_algebra(q(), &g);
        let ctx = HeckeContext::new(&GroupAction::conjugation(&g, &a).unwrap(), &sub(&g, &["(12)"])).unwrap();
        let t = opposite_transport(&ctx).unwrap();
        assert_eq!(t.apply(&ctx.identity()).unwrap(), t.target().identity());
        let r = t.verify();
        assert!(r.is_isomorphism(), "{r}");
        let p = poly_ctx(&g, &sub(&g, &["(12)"]), 2);
        let t = opposite_transport(&p).unwrap();
        let back = opposite_transport(t.target()).unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(8);
        for _ in 0..5 {
            let x = p.random_element(&mut rng, 3, None);
            let y = back.apply(&t.apply(&x).unwrap()).unwrap();
            assert_eq!(y.values(), x.values());
        }
    }
}
