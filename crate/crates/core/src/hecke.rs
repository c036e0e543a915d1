//! Skew Hecke algebras: `H`-equivariant maps `G/H → A` under convolution
//! `(φ∗ψ)(gH) = Σ_{kH} φ(kH) α_k ψ(k⁻¹gH)`.
//!
//! An element is stored by its values on one representative coset per
//! double coset; each such value is fixed by the stabilizer `H ∩ gHg⁻¹`.

use std::collections::BTreeMap;
use std::fmt;
use std::sync::{Arc, Mutex};

use rand::Rng;

use crate::algebras::{invariants_of_degree, AlgebraRef, GroupAction, InvariantBasis};
use crate::element::{Element, Label};
use crate::error::{Error, Result};
use crate::groups::{CosetSpace, GroupRef, Subgroup};
use crate::literal;
use crate::scalars::{Scalar, ScalarField};

/// One module basis vector: an invariant value placed on one double coset.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ModuleBasisEntry {
    pub orbit: usize,
    pub degree: u32,
    /// Position within the stabilizer-invariant basis of this degree.
    pub position: usize,
    pub value: Element,
}

struct Inner {
    cosets: CosetSpace,
    action: GroupAction,
    blocks: Mutex<BTreeMap<(usize, u32), Arc<InvariantBasis>>>,
    module_basis: Vec<ModuleBasisEntry>,
}

/// The data `(G, H, A, α)` with its coset space and module basis.
#[derive(Clone)]
pub struct HeckeContext(Arc<Inner>);

impl fmt::Debug for HeckeContext {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "HeckeContext(|G| = {}, |H| = {}, A = {})",
            self.group().order(),
            self.subgroup().order(),
            self.algebra().name()
        )
    }
}

impl PartialEq for HeckeContext {
    fn eq(&self, other: &Self) -> bool {
        Arc::ptr_eq(&self.0, &other.0)
    }
}

impl Eq for HeckeContext {}

impl HeckeContext {
    pub fn new(action: &GroupAction, h: &Subgroup) -> Result<Self> {
        if **h.parent() != **action.group() {
            return Err(Error::NotASubgroup("H is not a subgroup of the acting group".into()));
        }
        let a = action.algebra();
        if a.basis().is_none() && a.degree_cap().is_none() {
            return Err(Error::DegreeRequired);
        }
        let cosets = CosetSpace::new(h.clone());
        let mut inner = Inner {
            cosets,
            action: action.clone(),
            blocks: Mutex::new(BTreeMap::new()),
            module_basis: Vec::new(),
        };
        let top = if a.is_graded() { a.degree_cap().unwrap_or(0) } else { 0 };
        let mut basis = Vec::new();
        for d in 0..=top {
            for o in 0..inner.cosets.orbits().len() {
                let block = block_for(&inner, o, d)?;
                for (i, v) in block.vectors.iter().enumerate() {
                    basis.push(ModuleBasisEntry {
                        orbit: o,
                        degree: d,
                        position: i,
                        value: v.clone(),
                    });
                }
            }
        }
        inner.module_basis = basis;
        Ok(HeckeContext(Arc::new(inner)))
    }

    pub fn group(&self) -> &GroupRef {
        self.0.cosets.group()
    }

    pub fn subgroup(&self) -> &Subgroup {
        self.0.cosets.subgroup()
    }

    pub fn cosets(&self) -> &CosetSpace {
        &self.0.cosets
    }

    pub fn action(&self) -> &GroupAction {
        &self.0.action
    }

    pub fn algebra(&self) -> &AlgebraRef {
        self.0.action.algebra()
    }

    pub fn field(&self) -> ScalarField {
        self.algebra().field()
    }

    pub fn orbit_count(&self) -> usize {
        self.0.cosets.orbits().len()
    }

    pub fn is_graded(&self) -> bool {
        self.algebra().is_graded()
    }

    pub fn degree_cap(&self) -> Option<u32> {
        if self.is_graded() {
            self.algebra().degree_cap()
        } else {
            None
        }
    }

    /// Basis of `A^{H ∩ gHg⁻¹}` in degree `d` for orbit `o`.
    pub fn stabilizer_invariants(&self, o: usize, d: u32) -> Result<Arc<InvariantBasis>> {
        block_for(&self.0, o, d)
    }

    /// Module basis up to the degree cap, ordered by (degree, orbit, position).
    pub fn module_basis(&self) -> &[ModuleBasisEntry] {
        &self.0.module_basis
    }

    pub fn dimension(&self) -> usize {
        self.0.module_basis.len()
    }

    /// Indices into [`HeckeContext::module_basis`] of the given degree.
    pub fn module_basis_of_degree(&self, d: u32) -> Vec<usize> {
        (0..self.dimension()).filter(|&i| self.0.module_basis[i].degree == d).collect()
    }

    pub fn basis_element(&self, i: usize) -> HeckeElement {
        let e = &self.0.module_basis[i];
        let mut values = vec![Element::zero(); self.orbit_count()];
        values[e.orbit] = e.value.clone();
        HeckeElement { ctx: self.clone(), values }
    }

    /// `g H ↦ "gH: value"` description of module basis vector `i`.
    pub fn describe_basis(&self, i: usize) -> String {
        let e = &self.0.module_basis[i];
        let c = self.cosets().orbits()[e.orbit].rep;
        format!("{}: {}", self.cosets().coset_name(c), self.algebra().pretty(&e.value))
    }

    pub fn zero(&self) -> HeckeElement {
        HeckeElement {
            ctx: self.clone(),
            values: vec![Element::zero(); self.orbit_count()],
        }
    }

    /// `δ_{H, 1_A}`.
    pub fn identity(&self) -> HeckeElement {
        let mut z = self.zero();
        z.values[0] = self.algebra().one();
        z
    }

    /// Builds an element from its values on the representative cosets of
    /// the double cosets, checking stabilizer invariance.
    pub fn from_values(&self, values: Vec<Element>) -> Result<HeckeElement> {
        if values.len() != self.orbit_count() {
            return Err(Error::Shape(format!(
                "expected {} values, got {}",
                self.orbit_count(),
                values.len()
            )));
        }
        for (o, v) in values.iter().enumerate() {
            let orbit = &self.cosets().orbits()[o];
            if let Some(h) = self.action().first_non_fixing(orbit.stabilizer.elements(), v) {
                return Err(Error::NotInvariant {
                    coset: self.cosets().coset_name(orbit.rep),
                    witness: self.group().name(h),
                });
            }
        }
        Ok(HeckeElement {
            ctx: self.clone(),
            values,
        })
    }

    /// Restricts a function on all cosets after checking `φ(h·c) = α_h φ(c)`.
    pub fn from_coset_function(&self, full: &[Element]) -> Result<HeckeElement> {
        let cs = self.cosets();
        if full.len() != cs.len() {
            return Err(Error::Shape(format!("expected {} coset values, got {}", cs.len(), full.len())));
        }
        for &h in self.subgroup().elements() {
            for (c, v) in full.iter().enumerate() {
                if self.action().apply(h, v) != full[cs.act(h, c)] {
                    return Err(Error::NotInvariant {
                        coset: cs.coset_name(c),
                        witness: self.group().name(h),
                    });
                }
            }
        }
        Ok(HeckeElement {
            ctx: self.clone(),
            values: cs.orbits().iter().map(|o| full[o.rep].clone()).collect(),
        })
    }

    /// `δ_{H, a}` for `a ∈ A^H`.
    pub fn embed_invariant(&self, a: &Element) -> Result<HeckeElement> {
        if let Some(h) = self.action().first_non_fixing(self.subgroup().elements(), a) {
            return Err(Error::NotInvariant {
                coset: "H".into(),
                witness: self.group().name(h),
            });
        }
        let mut z = self.zero();
        z.values[0] = a.clone();
        Ok(z)
    }

    /// `ρ ↦ i_A ∘ ρ` for `ρ` in the classical Hecke algebra on the same
    /// coset space.
    pub fn embed_scalar_hecke(&self, rho: &HeckeElement) -> Result<HeckeElement> {
        let classical = rho.context();
        if **classical.group() != **self.group()
            || classical.subgroup().elements() != self.subgroup().elements()
            || classical.algebra().basis().map(|b| b.len()) != Some(1)
        {
            return Err(Error::ContextMismatch("not the classical Hecke algebra of (G, H)".into()));
        }
        let one = self.algebra().one();
        let values = rho
            .values
            .iter()
            .map(|v| match v.terms().next() {
                Some((_, c)) => one.scale(c),
                None => Element::zero(),
            })
            .collect();
        self.from_values(values)
    }

    /// A random combination of module basis vectors with coefficients in
    /// `-spread..=spread`, restricted to degrees `<= max_degree`.
    pub fn random_element(&self, rng: &mut impl Rng, spread: i64, max_degree: Option<u32>) -> HeckeElement {
        let field = self.field();
        let mut x = self.zero();
        for (i, e) in self.module_basis().iter().enumerate() {
            if max_degree.is_some_and(|d| e.degree > d) {
                continue;
            }
            let c = field.from_i64(rng.gen_range(-spread..=spread));
            x = x.add(&self.basis_element(i).scale(&c));
        }
        x
    }

    /// Random homogeneous element of degree `d`.
    pub fn random_homogeneous(&self, rng: &mut impl Rng, spread: i64, d: u32) -> HeckeElement {
        let field = self.field();
        let mut x = self.zero();
        for i in self.module_basis_of_degree(d) {
            let c = field.from_i64(rng.gen_range(-spread..=spread));
            x = x.add(&self.basis_element(i).scale(&c));
        }
        x
    }

    /// Structure constants on the module basis. For graded algebras only
    /// products with total degree within the cap are listed.
    pub fn structure_constants(&self) -> Result<StructureConstants> {
        let n = self.dimension();
        let cap = self.degree_cap();
        let basis: Vec<HeckeElement> = (0..n).map(|i| self.basis_element(i)).collect();
        let mut rows = Vec::new();
        for i in 0..n {
            for j in 0..n {
                let di = self.0.module_basis[i].degree;
                let dj = self.0.module_basis[j].degree;
                if cap.is_some_and(|c| di + dj > c) {
                    continue;
                }
                let prod = basis[i].convolve(&basis[j])?;
                for (k, c) in prod.coordinates()? {
                    rows.push((i, j, k, c));
                }
            }
        }
        Ok(StructureConstants {
            basis: (0..n).map(|i| self.describe_basis(i)).collect(),
            rows,
        })
    }

    /// Parses `[(coset, value literal), ...]`; cosets may be named by any
    /// element, and values given on any coset of a double coset.
    pub fn parse(&self, s: &str) -> Result<HeckeElement> {
        let mut values: Vec<Option<Element>> = vec![None; self.orbit_count()];
        let cs = self.cosets();
        for (coset, value) in literal::parse_pairs(s)? {
            let c = cs.parse_coset(&coset)?;
            let o = cs.orbit_of(c);
            let v = self.algebra().parse(&value)?;
            let h = cs.transversal(c);
            let at_rep = self.action().apply(self.group().inv(h), &v);
            if values[o].replace(at_rep).is_some() {
                return Err(Error::Parse(format!("double coset of {coset} given twice")));
            }
        }
        self.from_values(values.into_iter().map(Option::unwrap_or_default).collect())
    }
}

fn block_for(inner: &Inner, o: usize, d: u32) -> Result<Arc<InvariantBasis>> {
    if let Some(b) = inner.blocks.lock().expect("lock").get(&(o, d)) {
        return Ok(b.clone());
    }
    let stab = &inner.cosets.orbits()[o].stabilizer;
    let b = Arc::new(invariants_of_degree(inner.action.algebra().as_ref(), stab, &inner.action, d)?);
    inner.blocks.lock().expect("lock").insert((o, d), b.clone());
    Ok(b)
}

/// Rows `(i, j, k, c)` with `basis_i ∗ basis_j = Σ_k c·basis_k`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct StructureConstants {
    pub basis: Vec<String>,
    pub rows: Vec<(usize, usize, usize, Scalar)>,
}

impl StructureConstants {
    pub fn to_tsv(&self) -> String {
        let mut out = String::new();
        out.push_str(&format!("# module basis ({})\n", self.basis.len()));
        for (i, b) in self.basis.iter().enumerate() {
            out.push_str(&format!("# {i}\t{b}\n"));
        }
        for (i, j, k, c) in &self.rows {
            out.push_str(&format!("{i}\t{j}\t{k}\t{c}\n"));
        }
        out
    }

    /// Dense lookup `c[i][j]` as sparse `Index(k)` elements.
    pub fn products(&self) -> Vec<Vec<Element>> {
        let n = self.basis.len();
        let mut t = vec![vec![Element::zero(); n]; n];
        for (i, j, k, c) in &self.rows {
            t[*i][*j].add_term(Label::Index(*k), c);
        }
        t
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum GradedDegree {
    Zero,
    Homogeneous(u32),
    Inhomogeneous,
}

#[derive(Clone)]
pub struct HeckeElement {
    ctx: HeckeContext,
    values: Vec<Element>,
}

impl fmt::Debug for HeckeElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.format())
    }
}

impl PartialEq for HeckeElement {
    fn eq(&self, other: &Self) -> bool {
        self.ctx == other.ctx && self.values == other.values
    }
}

impl Eq for HeckeElement {}

impl HeckeElement {
    pub fn context(&self) -> &HeckeContext {
        &self.ctx
    }

    /// Values on the representative coset of each double coset.
    pub fn values(&self) -> &[Element] {
        &self.values
    }

    pub fn is_zero(&self) -> bool {
        self.values.iter().all(Element::is_zero)
    }

    /// Values on every left coset: `φ(h g_i H) = α_h φ(g_i H)`.
    pub fn expand(&self) -> Vec<Element> {
        let cs = self.ctx.cosets();
        let act = self.ctx.action();
        (0..cs.len())
            .map(|c| act.apply(cs.transversal(c), &self.values[cs.orbit_of(c)]))
            .collect()
    }

    fn same_context(&self, other: &HeckeElement) -> Result<()> {
        if self.ctx != other.ctx {
            return Err(Error::ContextMismatch("elements of different Hecke algebras".into()));
        }
        Ok(())
    }

    fn map_values(&self, f: impl Fn(&Element) -> Element) -> HeckeElement {
        HeckeElement {
            ctx: self.ctx.clone(),
            values: self.values.iter().map(f).collect(),
        }
    }

    pub fn add(&self, other: &HeckeElement) -> HeckeElement {
        HeckeElement {
            ctx: self.ctx.clone(),
            values: self.values.iter().zip(&other.values).map(|(a, b)| a.add(b)).collect(),
        }
    }

    pub fn sub(&self, other: &HeckeElement) -> HeckeElement {
        self.add(&other.neg())
    }

    pub fn neg(&self) -> HeckeElement {
        self.map_values(Element::neg)
    }

    pub fn scale(&self, c: &Scalar) -> HeckeElement {
        self.map_values(|v| v.scale(c))
    }

    /// `φ ∗ ψ`.
    pub fn convolve(&self, other: &HeckeElement) -> Result<HeckeElement> {
        let reps = self.ctx.cosets().reps();
        self.convolve_with_reps(other, &reps)
    }

    /// `φ ∗ ψ` computed with `reps[c]` as the representative of coset `c`,
    /// both for the summation index and the evaluation points.
    pub fn convolve_with_reps(&self, other: &HeckeElement, reps: &[usize]) -> Result<HeckeElement> {
        self.same_context(other)?;
        let ctx = &self.ctx;
        let cs = ctx.cosets();
        let g = ctx.group();
        let a = ctx.algebra();
        let act = ctx.action();
        if reps.len() != cs.len() || reps.iter().enumerate().any(|(c, &r)| cs.coset_of(r) != c) {
            return Err(Error::Shape("invalid coset representatives".into()));
        }
        let phi = self.expand();
        let psi = other.expand();
        let mut values = vec![Element::zero(); ctx.orbit_count()];
        for (c, phi_c) in phi.iter().enumerate() {
            if phi_c.is_zero() {
                continue;
            }
            let k = reps[c];
            let kinv = g.inv(k);
            for (o, orbit) in cs.orbits().iter().enumerate() {
                let x = reps[orbit.rep];
                let target = cs.coset_of(g.mul(kinv, x));
                if psi[target].is_zero() {
                    continue;
                }
                let twisted = act.apply(k, &psi[target]);
                let term = a.mul(phi_c, &twisted);
                values[o] = values[o].add(&term);
            }
        }
        ctx.from_values(values)
    }

    /// `φ(H)`, the conditional expectation onto `A^H`.
    pub fn expectation(&self) -> Element {
        self.values[0].clone()
    }

    /// Coordinates on the module basis as sparse `(index, coefficient)` pairs.
    pub fn coordinates(&self) -> Result<Vec<(usize, Scalar)>> {
        let ctx = &self.ctx;
        let a = ctx.algebra();
        let field = ctx.field();
        let mut index: BTreeMap<(u32, usize, usize), usize> = BTreeMap::new();
        for (i, e) in ctx.module_basis().iter().enumerate() {
            index.insert((e.degree, e.orbit, e.position), i);
        }
        let mut out = Vec::new();
        for (o, v) in self.values.iter().enumerate() {
            let mut by_degree: BTreeMap<u32, Element> = BTreeMap::new();
            for (l, c) in v {
                by_degree.entry(a.degree(l)).or_default().add_term(l.clone(), c);
            }
            for (d, part) in by_degree {
                if let Some(cap) = ctx.degree_cap() {
                    if d > cap {
                        return Err(Error::BeyondDegreeCap { requested: d, cap });
                    }
                }
                let block = ctx.stabilizer_invariants(o, d)?;
                let coords = block
                    .coordinates(&part, field)
                    .ok_or_else(|| Error::Inconsistent("value outside the stabilizer invariants".into()))?;
                for (p, c) in coords.into_iter().enumerate() {
                    if !c.is_zero() {
                        out.push((index[&(d, o, p)], c));
                    }
                }
            }
        }
        out.sort_by_key(|(i, _)| *i);
        Ok(out)
    }

    pub fn graded_degree(&self) -> GradedDegree {
        let a = self.ctx.algebra();
        let mut degrees = self.values.iter().flat_map(|v| v.labels().map(|l| a.degree(l)));
        match degrees.next() {
            None => GradedDegree::Zero,
            Some(d) if degrees.all(|e| e == d) => GradedDegree::Homogeneous(d),
            Some(_) => GradedDegree::Inhomogeneous,
        }
    }

    /// `[(rep, [(label, coeff), ...]), ...]` over double-coset representatives.
    pub fn format(&self) -> String {
        let cs = self.ctx.cosets();
        let g = self.ctx.group();
        let items: Vec<String> = cs
            .orbits()
            .iter()
            .zip(&self.values)
            .map(|(o, v)| format!("({}, {})", g.name(cs.rep(o.rep)), self.ctx.algebra().format(v)))
            .collect();
        format!("[{}]", items.join(", "))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebras::{functions, group_algebra, polynomial, scalar};
    use crate::groups::FiniteGroup;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    fn q() -> ScalarField {
        ScalarField::Rationals
    }

    fn s3() -> GroupRef {
        Arc::new(FiniteGroup::symmetric(3).unwrap())
    }

    fn s2(g: &GroupRef) -> Subgroup {
        Subgroup::generated(g, &[1]).unwrap()
    }

    fn classical() -> HeckeContext {
        let g = s3();
        HeckeContext::new(&GroupAction::trivial(&g, &scalar(q())), &s2(&g)).unwrap()
    }

    fn poly_ctx(cap: u32) -> HeckeContext {
        let g = s3();
        let a = polynomial(q(), 3, cap).unwrap();
        HeckeContext::new(&GroupAction::permute_variables(&g, &a).unwrap(), &s2(&g)).unwrap()
    }

    fn rs(ctx: &HeckeContext, r: i64, s: i64) -> HeckeElement {
        let f = ctx.field();
        let one = ctx.algebra().one();
        ctx.from_values(vec![one.scale(&f.from_i64(r)), one.scale(&f.from_i64(s))]).unwrap()
    }

    #[test]
    fn classical_product_rule() {
        let ctx = classical();
        assert_eq!(ctx.dimension(), 2);
        for (r, s, r2, s2) in [(1, 2, 3, 4), (0, 1, 0, 1), (-2, 5, 7, -1)] {
            let p = rs(&ctx, r, s).convolve(&rs(&ctx, r2, s2)).unwrap();
            assert_eq!(p, rs(&ctx, r * r2 + 2 * s * s2, r * s2 + s * r2 + s * s2));
        }
    }

    #[test]
    fn expansion_and_validation() {
        let ctx = poly_ctx(2);
        let a = ctx.algebra().clone();
        let x = |s: &str| a.parse(s).unwrap();
        let phi = ctx.from_values(vec![x("[(x1, 1), (x2, 1)]"), x("[(x1*x3, 1)]")]).unwrap();
        let full = phi.expand();
        assert_eq!(full[2], x("[(x2*x3, 1)]"));
        assert!(matches!(
            ctx.from_values(vec![x("[(x1, 1)]"), Element::zero()]),
            Err(Error::NotInvariant { .. })
        ));
        assert!(ctx.from_values(vec![Element::zero(), Element::zero()]).unwrap().is_zero());
        assert_eq!(ctx.from_coset_function(&full).unwrap(), phi);
        assert_eq!(ctx.parse(&phi.format()).unwrap(), phi);
        assert_eq!(ctx.parse("[((13), [(x2*x3, 1)]), (id, [(x1, 1), (x2, 1)])]").unwrap(), phi);
    }

    #[test]
    fn identity_and_embeddings() {
        let ctx = poly_ctx(2);
        let mut rng = ChaCha8Rng::seed_from_u64(7);
        let id = ctx.identity();
        for _ in 0..5 {
            let phi = ctx.random_element(&mut rng, 3, Some(1));
            assert_eq!(id.convolve(&phi).unwrap(), phi);
            assert_eq!(phi.convolve(&id).unwrap(), phi);
        }
        let a = ctx.algebra().clone();
        let d = a.parse("[(x1, 1), (x2, 1)]").unwrap();
        let e = ctx.embed_invariant(&d).unwrap();
        assert_eq!(e.convolve(&e).unwrap(), ctx.embed_invariant(&a.mul(&d, &d)).unwrap());
        assert!(ctx.embed_invariant(&a.parse("[(x1, 1)]").unwrap()).is_err());
        assert_eq!(ctx.embed_invariant(&a.one()).unwrap(), id);
        assert_eq!(e.expectation(), d);

        let cl = classical();
        let rho = rs(&cl, 0, 1);
        let emb = ctx.embed_scalar_hecke(&rho).unwrap();
        assert_eq!(emb.values()[1], a.one());
        let sq = emb.convolve(&emb).unwrap();
        assert_eq!(sq.values()[0], a.one().scale(&q().from_i64(2)));
        assert_eq!(sq.values()[1], a.one());
    }

    #[test]
    fn dimensions() {
        assert_eq!(poly_ctx(1).dimension(), 3 + 4);
        let g = s3();
        let f = functions(q(), &g);
        let lt = GroupAction::left_translation(&g, &f).unwrap();
        assert_eq!(HeckeContext::new(&lt, &s2(&g)).unwrap().dimension(), 9);
        assert_eq!(HeckeContext::new(&lt, &Subgroup::whole(&g)).unwrap().dimension(), 1);
        assert_eq!(HeckeContext::new(&lt, &Subgroup::trivial(&g)).unwrap().dimension(), 36);
    }

    #[test]
    fn representative_independence() {
        let g = s3();
        let a = group_algebra(q(), &g);
        let ctx = HeckeContext::new(&GroupAction::conjugation(&g, &a).unwrap(), &s2(&g)).unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(3);
        let other_reps: Vec<usize> = ctx.cosets().cosets().iter().map(|c| *c.last().unwrap()).collect();
        for _ in 0..10 {
            let x = ctx.random_element(&mut rng, 3, None);
            let y = ctx.random_element(&mut rng, 3, None);
            assert_eq!(x.convolve(&y).unwrap(), x.convolve_with_reps(&y, &other_reps).unwrap());
        }
    }

    #[test]
    fn grading() {
        let ctx = poly_ctx(2);
        let a = ctx.algebra().clone();
        let x = |s: &str| a.parse(s).unwrap();
        let phi = ctx.from_values(vec![x("[(x1, 1), (x2, 1)]"), x("[(x3, 1)]")]).unwrap();
        assert_eq!(phi.graded_degree(), GradedDegree::Homogeneous(1));
        assert_eq!(ctx.identity().graded_degree(), GradedDegree::Homogeneous(0));
        let mixed = ctx.from_values(vec![a.one(), x("[(x1, 1)]")]).unwrap();
        assert_eq!(mixed.graded_degree(), GradedDegree::Inhomogeneous);
        assert_eq!(phi.convolve(&phi).unwrap().graded_degree(), GradedDegree::Homogeneous(2));
    }

    #[test]
    fn classical_structure_constants() {
        let sc = classical().structure_constants().unwrap();
        let one = q().one();
        let two = q().from_i64(2);
        assert_eq!(
            sc.rows,
            vec![(0, 0, 0, one.clone()), (0, 1, 1, one.clone()), (1, 0, 1, one.clone()), (1, 1, 0, two), (1, 1, 1, one)]
        );
    }
}
