//! Generic checks that a map between algebras is an (injective) algebra
//! homomorphism with a stated image.

use std::fmt;

use rand::seq::index::sample;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::algebras::AlgebraRef;
use crate::element::{Element, Label};
use crate::error::Result;
use crate::hecke::{HeckeContext, HeckeElement};
use crate::linalg::{self, Echelon};
use crate::scalars::ScalarField;

/// Multiplicativity is checked on every basis pair up to this many pairs,
/// and on a seeded sample of this size beyond it.
pub const EXHAUSTIVE_PAIRS: usize = 10_000;

/// An algebra seen through its elements, for map verification.
pub trait AlgebraView {
    type Elem: Clone;
    fn field(&self) -> ScalarField;
    fn one(&self) -> Self::Elem;
    fn zero(&self) -> Self::Elem;
    fn add(&self, x: &Self::Elem, y: &Self::Elem) -> Self::Elem;
    fn mul(&self, x: &Self::Elem, y: &Self::Elem) -> Result<Self::Elem>;
    /// Coordinates in some fixed basis, for equality and rank.
    fn flatten(&self, x: &Self::Elem) -> Element;
    fn describe(&self, x: &Self::Elem) -> String;
}

/// A based algebra viewed through [`AlgebraView`].
pub struct BasedView(pub AlgebraRef);

impl AlgebraView for BasedView {
    type Elem = Element;
    fn field(&self) -> ScalarField {
        self.0.field()
    }
    fn one(&self) -> Element {
        self.0.one()
    }
    fn zero(&self) -> Element {
        Element::zero()
    }
    fn add(&self, x: &Element, y: &Element) -> Element {
        x.add(y)
    }
    fn mul(&self, x: &Element, y: &Element) -> Result<Element> {
        Ok(self.0.mul(x, y))
    }
    fn flatten(&self, x: &Element) -> Element {
        x.clone()
    }
    fn describe(&self, x: &Element) -> String {
        self.0.pretty(x)
    }
}

/// A skew Hecke algebra viewed through [`AlgebraView`].
pub struct HeckeView(pub HeckeContext);

impl AlgebraView for HeckeView {
    type Elem = HeckeElement;
    fn field(&self) -> ScalarField {
        self.0.field()
    }
    fn one(&self) -> HeckeElement {
        self.0.identity()
    }
    fn zero(&self) -> HeckeElement {
        self.0.zero()
    }
    fn add(&self, x: &HeckeElement, y: &HeckeElement) -> HeckeElement {
        x.add(y)
    }
    fn mul(&self, x: &HeckeElement, y: &HeckeElement) -> Result<HeckeElement> {
        x.convolve(y)
    }
    fn flatten(&self, x: &HeckeElement) -> Element {
        let mut r = Element::zero();
        for (o, v) in x.values().iter().enumerate() {
            r = r.add(&v.tagged(Label::Index(o)));
        }
        r
    }
    fn describe(&self, x: &HeckeElement) -> String {
        x.format()
    }
}

/// What the image of a map is claimed to be.
pub enum ImageSpec<'a, E> {
    /// The span of these flattened vectors.
    Span(Vec<Element>),
    /// A subspace of the given dimension, with a membership test.
    Subspace {
        dimension: usize,
        member: Box<dyn Fn(&E) -> bool + 'a>,
    },
    /// No claim beyond injectivity.
    Unstated,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MapCheck {
    pub name: &'static str,
    pub passed: bool,
    pub witness: Option<String>,
}

#[derive(Clone, Debug)]
pub struct AlgebraMapReport {
    pub map: String,
    pub checks: Vec<MapCheck>,
}

impl AlgebraMapReport {
    pub fn check(&self, name: &str) -> Option<&MapCheck> {
        self.checks.iter().find(|c| c.name == name)
    }

    fn ok(&self, name: &str) -> bool {
        self.check(name).is_some_and(|c| c.passed)
    }

    pub fn passed(&self) -> bool {
        self.checks.iter().all(|c| c.passed)
    }

    pub fn is_homomorphism(&self) -> bool {
        self.ok("additive") && self.ok("multiplicative") && self.ok("unit")
    }

    pub fn is_injective_homomorphism(&self) -> bool {
        self.is_homomorphism() && self.ok("injective")
    }

    pub fn is_isomorphism(&self) -> bool {
        self.is_injective_homomorphism() && self.ok("surjective")
    }
}

impl fmt::Display for AlgebraMapReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for c in &self.checks {
            write!(f, "{} {} {}", if c.passed { "PASS" } else { "FAIL" }, self.map, c.name)?;
            if let Some(w) = &c.witness {
                write!(f, ": {w}")?;
            }
            writeln!(f)?;
        }
        Ok(())
    }
}

/// Checks additivity, multiplicativity (all basis pairs, or a seeded sample
/// above [`EXHAUSTIVE_PAIRS`]), unit preservation, injectivity by exact
/// rank, and the stated image.
pub fn verify_algebra_map<D: AlgebraView, C: AlgebraView>(
    name: &str,
    domain: &D,
    basis: &[D::Elem],
    codomain: &C,
    map: impl Fn(&D::Elem) -> Result<C::Elem>,
    image: ImageSpec<'_, C::Elem>,
) -> AlgebraMapReport {
    let mut checks = Vec::new();
    let mut push = |name: &'static str, witness: Option<String>| {
        checks.push(MapCheck {
            name,
            passed: witness.is_none(),
            witness,
        })
    };
    let field = codomain.field();
    let images: Vec<Result<C::Elem>> = basis.iter().map(&map).collect();
    if let Some((i, Err(e))) = images.iter().enumerate().find(|(_, r)| r.is_err()) {
        push("defined", Some(format!("basis element {i}: {e}")));
        return AlgebraMapReport {
            map: name.into(),
            checks,
        };
    }
    let images: Vec<C::Elem> = images.into_iter().map(|r| r.expect("checked")).collect();
    let flat: Vec<Element> = images.iter().map(|x| codomain.flatten(x)).collect();
    let n = basis.len();

    let mut additive = None;
    for i in 0..n {
        let j = (i + 1) % n;
        let sum = domain.add(&basis[i], &basis[j]);
        match map(&sum) {
            Ok(m) if codomain.flatten(&m) == flat[i].add(&flat[j]) => {}
            _ => {
                additive = Some(format!("basis pair ({i}, {j})"));
                break;
            }
        }
    }
    push("additive", additive);

    let pairs: Vec<(usize, usize)> = if n * n <= EXHAUSTIVE_PAIRS {
        (0..n).flat_map(|i| (0..n).map(move |j| (i, j))).collect()
    } else {
        let mut rng = ChaCha8Rng::seed_from_u64(0x5eed);
        sample(&mut rng, n * n, EXHAUSTIVE_PAIRS)
            .into_iter()
            .map(|p| (p / n, p % n))
            .collect()
    };
    let mut mult = None;
    for (i, j) in pairs {
        let witness = || {
            format!(
                "map(x * y) != map(x) * map(y) for x = {}, y = {}",
                domain.describe(&basis[i]),
                domain.describe(&basis[j])
            )
        };
        let lhs = domain.mul(&basis[i], &basis[j]).and_then(|p| map(&p));
        let rhs = codomain.mul(&images[i], &images[j]);
        match (lhs, rhs) {
            (Ok(l), Ok(r)) if codomain.flatten(&l) == codomain.flatten(&r) => {}
            _ => {
                mult = Some(witness());
                break;
            }
        }
    }
    push("multiplicative", mult);

    let unit = match map(&domain.one()) {
        Ok(u) if codomain.flatten(&u) == codomain.flatten(&codomain.one()) => None,
        Ok(u) => Some(format!("map(1) = {}", codomain.describe(&u))),
        Err(e) => Some(e.to_string()),
    };
    push("unit", unit);

    let rank = linalg::rank(field, &flat);
    push(
        "injective",
        (rank != n).then(|| format!("image of the {n} basis elements has rank {rank}")),
    );

    let surjective = match image {
        ImageSpec::Span(target) => {
            let mut span = Echelon::new(field);
            for t in &target {
                span.insert(t);
            }
            if let Some(i) = flat.iter().position(|v| !span.contains(v)) {
                Some(format!("image of basis element {i} lies outside the target"))
            } else if rank != span.rank() {
                Some(format!("image rank {rank} but target dimension {}", span.rank()))
            } else {
                None
            }
        }
        ImageSpec::Subspace { dimension, member } => {
            if let Some(i) = images.iter().position(|x| !member(x)) {
                Some(format!("image of basis element {i} lies outside the target"))
            } else if rank != dimension {
                Some(format!("image rank {rank} but target dimension {dimension}"))
            } else {
                None
            }
        }
        ImageSpec::Unstated => None,
    };
    push("surjective", surjective);
    AlgebraMapReport {
        map: name.into(),
        checks,
    }
}

/// All basis elements of a Hecke context.
pub fn hecke_basis(ctx: &HeckeContext) -> Vec<HeckeElement> {
    (0..ctx.dimension()).map(|i| ctx.basis_element(i)).collect()
}

/// Flattened module basis, the natural surjectivity target for maps into `ctx`.
pub fn hecke_span(ctx: &HeckeContext) -> Vec<Element> {
    let view = HeckeView(ctx.clone());
    hecke_basis(ctx).iter().map(|x| view.flatten(x)).collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebras::group_algebra;
    use crate::groups::{FiniteGroup, GroupRef};
    use std::sync::Arc;

    #[test]
    fn identity_map_is_an_isomorphism_and_zero_map_is_not() {
        let g: GroupRef = Arc::new(FiniteGroup::symmetric(3).unwrap());
        let a = group_algebra(ScalarField::Rationals, &g);
        let view = BasedView(a.clone());
        let basis: Vec<Element> = a.basis().unwrap().iter().map(|l| a.basis_element(l)).collect();
        let r = verify_algebra_map("id", &view, &basis, &view, |x| Ok(x.clone()), ImageSpec::Span(basis.clone()));
        assert!(r.is_isomorphism(), "{r}");
        let r = verify_algebra_map("zero", &view, &basis, &view, |_| Ok(Element::zero()), ImageSpec::Unstated);
        assert!(!r.is_homomorphism());
        assert!(!r.check("injective").unwrap().passed);
    }

    #[test]
    fn antihomomorphism_is_caught() {
        let g: GroupRef = Arc::new(FiniteGroup::symmetric(3).unwrap());
        let a = group_algebra(ScalarField::Rationals, &g);
        let view = BasedView(a.clone());
        let basis: Vec<Element> = a.basis().unwrap().iter().map(|l| a.basis_element(l)).collect();
        let inv = |x: &Element| Ok(x.map_labels(|l| Label::Index(g.inv(l.index().unwrap()))));
        let r = verify_algebra_map("inverse", &view, &basis, &view, inv, ImageSpec::Span(basis.clone()));
        assert!(!r.check("multiplicative").unwrap().passed);
        assert!(r.check("injective").unwrap().passed);
    }
}
