use std::sync::Arc;

use super::{AlgebraRef, BasedAlgebra, Family};
use crate::element::{Element, Label, Monomial};
use crate::error::{Error, Result};
use crate::groups::GroupRef;
use crate::literal;
use crate::scalars::ScalarField;

/// The ground field as a one-dimensional algebra.
#[derive(Debug)]
pub struct ScalarAlgebra {
    field: ScalarField,
}

impl ScalarAlgebra {
    pub fn new(field: ScalarField) -> Self {
        ScalarAlgebra { field }
    }
}

impl BasedAlgebra for ScalarAlgebra {
    fn field(&self) -> ScalarField {
        self.field
    }
    fn name(&self) -> String {
        "scalar".into()
    }
    fn family(&self) -> Family {
        Family::Scalar
    }
    fn one(&self) -> Element {
        Element::basis(Label::Unit, self.field)
    }
    fn mul_basis(&self, _a: &Label, _b: &Label) -> Element {
        self.one()
    }
    fn basis(&self) -> Option<Vec<Label>> {
        Some(vec![Label::Unit])
    }
    fn is_commutative(&self) -> bool {
        true
    }
    fn format_label(&self, _l: &Label) -> String {
        "1".into()
    }
    fn parse_label(&self, s: &str) -> Result<Label> {
        match s.trim() {
            "1" => Ok(Label::Unit),
            other => Err(Error::UnknownLabel(other.into())),
        }
    }
}

/// `R[K]` with basis the group elements.
#[derive(Debug)]
pub struct GroupAlgebra {
    field: ScalarField,
    group: GroupRef,
}

impl GroupAlgebra {
    pub fn new(field: ScalarField, group: GroupRef) -> Self {
        GroupAlgebra { field, group }
    }

    pub fn group(&self) -> &GroupRef {
        &self.group
    }
}

fn index_of(l: &Label) -> usize {
    l.index().expect("index label")
}

impl BasedAlgebra for GroupAlgebra {
    fn field(&self) -> ScalarField {
        self.field
    }
    fn name(&self) -> String {
        format!("group_algebra(order {})", self.group.order())
    }
    fn family(&self) -> Family {
        Family::GroupAlgebra(self.group.clone())
    }
    fn one(&self) -> Element {
        Element::basis(Label::Index(0), self.field)
    }
    fn mul_basis(&self, a: &Label, b: &Label) -> Element {
        Element::basis(Label::Index(self.group.mul(index_of(a), index_of(b))), self.field)
    }
    fn basis(&self) -> Option<Vec<Label>> {
        Some(self.group.elements().map(Label::Index).collect())
    }
    fn is_commutative(&self) -> bool {
        self.group.is_abelian()
    }
    fn format_label(&self, l: &Label) -> String {
        self.group.name(index_of(l))
    }
    fn parse_label(&self, s: &str) -> Result<Label> {
        self.group
            .parse_element(s)
            .map(Label::Index)
            .map_err(|_| Error::UnknownLabel(s.into()))
    }
}

/// Functions `G → R` under the pointwise product, with basis `delta[g]`.
#[derive(Debug)]
pub struct FunctionAlgebra {
    field: ScalarField,
    group: GroupRef,
}

impl FunctionAlgebra {
    pub fn new(field: ScalarField, group: GroupRef) -> Self {
        FunctionAlgebra { field, group }
    }

    pub fn group(&self) -> &GroupRef {
        &self.group
    }
}

impl BasedAlgebra for FunctionAlgebra {
    fn field(&self) -> ScalarField {
        self.field
    }
    fn name(&self) -> String {
        format!("functions(order {})", self.group.order())
    }
    fn family(&self) -> Family {
        Family::Functions(self.group.clone())
    }
    fn one(&self) -> Element {
        self.group.elements().map(|g| (Label::Index(g), self.field.one())).collect()
    }
    fn mul_basis(&self, a: &Label, b: &Label) -> Element {
        if a == b {
            Element::basis(a.clone(), self.field)
        } else {
            Element::zero()
        }
    }
    fn basis(&self) -> Option<Vec<Label>> {
        Some(self.group.elements().map(Label::Index).collect())
    }
    fn is_commutative(&self) -> bool {
        true
    }
    fn format_label(&self, l: &Label) -> String {
        format!("delta[{}]", self.group.name(index_of(l)))
    }
    fn parse_label(&self, s: &str) -> Result<Label> {
        let inner = s
            .trim()
            .strip_prefix("delta")
            .ok_or_else(|| Error::UnknownLabel(s.into()))?;
        let inner = literal::strip_delimiters(inner, '[', ']').map_err(|_| Error::UnknownLabel(s.into()))?;
        self.group
            .parse_element(inner)
            .map(Label::Index)
            .map_err(|_| Error::UnknownLabel(s.into()))
    }
}

/// `R[x1, ..., xn]`, graded by total degree. Arithmetic is never truncated;
/// the cap only limits basis enumeration.
#[derive(Debug)]
pub struct PolynomialAlgebra {
    field: ScalarField,
    nvars: usize,
    cap: u32,
}

impl PolynomialAlgebra {
    pub fn new(field: ScalarField, nvars: usize, cap: u32) -> Result<Self> {
        if nvars == 0 {
            return Err(Error::InvalidAlgebra("polynomial algebra needs at least one variable".into()));
        }
        Ok(PolynomialAlgebra { field, nvars, cap })
    }

    pub fn nvars(&self) -> usize {
        self.nvars
    }

    pub fn var(&self, i: usize) -> Element {
        Element::basis(Label::Monomial(Monomial::var(self.nvars, i)), self.field)
    }

    /// Exponent vectors of total degree `d`, in label order.
    pub fn monomials(nvars: usize, d: u32) -> Vec<Monomial> {
        fn rec(prefix: &mut Vec<u32>, left: u32, slots: usize, out: &mut Vec<Monomial>) {
            if slots == 1 {
                prefix.push(left);
                out.push(Monomial(prefix.clone()));
                prefix.pop();
                return;
            }
            for e in (0..=left).rev() {
                prefix.push(e);
                rec(prefix, left - e, slots - 1, out);
                prefix.pop();
            }
        }
        let mut out = Vec::new();
        rec(&mut Vec::new(), d, nvars, &mut out);
        out.sort();
        out
    }
}

impl BasedAlgebra for PolynomialAlgebra {
    fn field(&self) -> ScalarField {
        self.field
    }
    fn name(&self) -> String {
        format!("polynomial({})", self.nvars)
    }
    fn family(&self) -> Family {
        Family::Polynomial(self.nvars)
    }
    fn one(&self) -> Element {
        Element::basis(Label::Monomial(Monomial::one(self.nvars)), self.field)
    }
    fn mul_basis(&self, a: &Label, b: &Label) -> Element {
        match (a, b) {
            (Label::Monomial(x), Label::Monomial(y)) => Element::basis(Label::Monomial(x.mul(y)), self.field),
            _ => panic!("polynomial algebra expects monomial labels"),
        }
    }
    fn basis(&self) -> Option<Vec<Label>> {
        None
    }
    fn is_commutative(&self) -> bool {
        true
    }
    fn is_graded(&self) -> bool {
        true
    }
    fn degree(&self, l: &Label) -> u32 {
        match l {
            Label::Monomial(m) => m.degree(),
            _ => 0,
        }
    }
    fn degree_cap(&self) -> Option<u32> {
        Some(self.cap)
    }
    fn homogeneous_basis(&self, d: u32) -> Vec<Label> {
        PolynomialAlgebra::monomials(self.nvars, d).into_iter().map(Label::Monomial).collect()
    }
    fn format_label(&self, l: &Label) -> String {
        match l {
            Label::Monomial(m) => m.to_string(),
            other => format!("{other:?}"),
        }
    }
    fn parse_label(&self, s: &str) -> Result<Label> {
        let s = s.trim();
        let mut e = vec![0u32; self.nvars];
        if s != "1" {
            for factor in s.split('*') {
                let bad = || Error::UnknownLabel(s.into());
                let (var, pow) = match factor.trim().split_once('^') {
                    Some((v, p)) => (v, p.trim().parse::<u32>().map_err(|_| bad())?),
                    None => (factor.trim(), 1),
                };
                let i: usize = var.strip_prefix('x').and_then(|t| t.parse().ok()).ok_or_else(bad)?;
                if i == 0 || i > self.nvars {
                    return Err(bad());
                }
                e[i - 1] += pow;
            }
        }
        Ok(Label::Monomial(Monomial(e)))
    }
}

/// `M_n(R)` with matrix units `E[i,j]` (1-based when printed).
#[derive(Debug)]
pub struct MatrixAlgebra {
    field: ScalarField,
    n: usize,
}

impl MatrixAlgebra {
    pub fn new(field: ScalarField, n: usize) -> Result<Self> {
        if n == 0 {
            return Err(Error::InvalidAlgebra("matrix size must be positive".into()));
        }
        Ok(MatrixAlgebra { field, n })
    }

    pub fn size(&self) -> usize {
        self.n
    }

    /// Label of the zero-based unit `E_{ij}`.
    pub fn unit(&self, i: usize, j: usize) -> Label {
        Label::Index(i * self.n + j)
    }
}

impl BasedAlgebra for MatrixAlgebra {
    fn field(&self) -> ScalarField {
        self.field
    }
    fn name(&self) -> String {
        format!("matrix({})", self.n)
    }
    fn family(&self) -> Family {
        Family::Matrix(self.n)
    }
    fn one(&self) -> Element {
        (0..self.n).map(|i| (self.unit(i, i), self.field.one())).collect()
    }
    fn mul_basis(&self, a: &Label, b: &Label) -> Element {
        let (x, y) = (index_of(a), index_of(b));
        let n = self.n;
        if x % n == y / n {
            Element::basis(self.unit(x / n, y % n), self.field)
        } else {
            Element::zero()
        }
    }
    fn basis(&self) -> Option<Vec<Label>> {
        Some((0..self.n * self.n).map(Label::Index).collect())
    }
    fn is_commutative(&self) -> bool {
        self.n == 1
    }
    fn format_label(&self, l: &Label) -> String {
        let x = index_of(l);
        format!("E[{},{}]", x / self.n + 1, x % self.n + 1)
    }
    fn parse_label(&self, s: &str) -> Result<Label> {
        let bad = || Error::UnknownLabel(s.into());
        let inner = s.trim().strip_prefix('E').ok_or_else(bad)?;
        let inner = literal::strip_delimiters(inner, '[', ']').map_err(|_| bad())?;
        let (i, j) = inner.split_once(',').ok_or_else(bad)?;
        let i: usize = i.trim().parse().map_err(|_| bad())?;
        let j: usize = j.trim().parse().map_err(|_| bad())?;
        if i == 0 || j == 0 || i > self.n || j > self.n {
            return Err(bad());
        }
        Ok(self.unit(i - 1, j - 1))
    }
}

/// `A ⊗ B` with labels `Pair(a, b)` printed `<a|b>`.
#[derive(Debug)]
pub struct TensorAlgebra {
    left: AlgebraRef,
    right: AlgebraRef,
}

impl TensorAlgebra {
    pub fn new(left: AlgebraRef, right: AlgebraRef) -> Result<Self> {
        if left.field() != right.field() {
            return Err(Error::InvalidAlgebra(format!(
                "tensor factors over different fields: {} and {}",
                left.field(),
                right.field()
            )));
        }
        Ok(TensorAlgebra { left, right })
    }

    pub fn left(&self) -> &AlgebraRef {
        &self.left
    }

    pub fn right(&self) -> &AlgebraRef {
        &self.right
    }
}

impl BasedAlgebra for TensorAlgebra {
    fn field(&self) -> ScalarField {
        self.left.field()
    }
    fn name(&self) -> String {
        format!("{} (x) {}", self.left.name(), self.right.name())
    }
    fn family(&self) -> Family {
        Family::Tensor(self.left.clone(), self.right.clone())
    }
    fn one(&self) -> Element {
        Element::tensor(&self.left.one(), &self.right.one())
    }
    fn mul_basis(&self, a: &Label, b: &Label) -> Element {
        let (a1, a2) = a.split().expect("pair label");
        let (b1, b2) = b.split().expect("pair label");
        Element::tensor(&self.left.mul_basis(a1, b1), &self.right.mul_basis(a2, b2))
    }
    fn basis(&self) -> Option<Vec<Label>> {
        let l = self.left.basis()?;
        let r = self.right.basis()?;
        Some(
            l.iter()
                .flat_map(|a| r.iter().map(move |b| Label::pair(a.clone(), b.clone())))
                .collect(),
        )
    }
    fn is_commutative(&self) -> bool {
        self.left.is_commutative() && self.right.is_commutative()
    }
    fn is_graded(&self) -> bool {
        self.left.is_graded() || self.right.is_graded()
    }
    fn degree(&self, l: &Label) -> u32 {
        let (a, b) = l.split().expect("pair label");
        self.left.degree(a) + self.right.degree(b)
    }
    fn degree_cap(&self) -> Option<u32> {
        match (self.left.degree_cap(), self.right.degree_cap()) {
            (Some(a), Some(b)) => Some(a.min(b)),
            (a, b) => a.or(b),
        }
    }
    fn homogeneous_basis(&self, d: u32) -> Vec<Label> {
        let mut out = Vec::new();
        for i in 0..=d {
            let l = self.left.homogeneous_basis(i);
            if l.is_empty() {
                continue;
            }
            let r = self.right.homogeneous_basis(d - i);
            for a in &l {
                for b in &r {
                    out.push(Label::pair(a.clone(), b.clone()));
                }
            }
        }
        out.sort();
        out
    }
    fn format_label(&self, l: &Label) -> String {
        let (a, b) = l.split().expect("pair label");
        format!("<{}|{}>", self.left.format_label(a), self.right.format_label(b))
    }
    fn parse_label(&self, s: &str) -> Result<Label> {
        let inner = literal::strip_delimiters(s, '<', '>').map_err(|_| Error::UnknownLabel(s.into()))?;
        let parts = literal::split_top_level(inner, '|');
        if parts.len() != 2 {
            return Err(Error::UnknownLabel(s.into()));
        }
        Ok(Label::pair(self.left.parse_label(parts[0])?, self.right.parse_label(parts[1])?))
    }
}

/// `A^op`: same basis, reversed product.
#[derive(Debug)]
pub struct OppositeAlgebra {
    inner: AlgebraRef,
}

impl OppositeAlgebra {
    pub fn new(inner: AlgebraRef) -> Self {
        OppositeAlgebra { inner }
    }

    pub fn inner(&self) -> &AlgebraRef {
        &self.inner
    }
}

impl BasedAlgebra for OppositeAlgebra {
    fn field(&self) -> ScalarField {
        self.inner.field()
    }
    fn name(&self) -> String {
        format!("opposite({})", self.inner.name())
    }
    fn family(&self) -> Family {
        Family::Opposite(self.inner.clone())
    }
    fn one(&self) -> Element {
        self.inner.one()
    }
    fn mul_basis(&self, a: &Label, b: &Label) -> Element {
        self.inner.mul_basis(b, a)
    }
    fn basis(&self) -> Option<Vec<Label>> {
        self.inner.basis()
    }
    fn is_commutative(&self) -> bool {
        self.inner.is_commutative()
    }
    fn is_graded(&self) -> bool {
        self.inner.is_graded()
    }
    fn degree(&self, l: &Label) -> u32 {
        self.inner.degree(l)
    }
    fn degree_cap(&self) -> Option<u32> {
        self.inner.degree_cap()
    }
    fn homogeneous_basis(&self, d: u32) -> Vec<Label> {
        self.inner.homogeneous_basis(d)
    }
    fn format_label(&self, l: &Label) -> String {
        self.inner.format_label(l)
    }
    fn parse_label(&self, s: &str) -> Result<Label> {
        self.inner.parse_label(s)
    }
}

/// Finite-dimensional algebra given by structure constants on `Index(i)`.
#[derive(Debug)]
pub struct TableAlgebra {
    field: ScalarField,
    name: String,
    names: Vec<String>,
    table: Vec<Vec<Element>>,
    one: Element,
    commutative: bool,
}

impl TableAlgebra {
    /// `table[i][j]` is the product of basis vectors `i` and `j`.
    pub fn new(
        field: ScalarField,
        name: impl Into<String>,
        names: Vec<String>,
        table: Vec<Vec<Element>>,
        one: Element,
    ) -> Result<Self> {
        let n = names.len();
        if table.len() != n || table.iter().any(|r| r.len() != n) {
            return Err(Error::InvalidAlgebra("structure table has the wrong shape".into()));
        }
        let commutative = (0..n).all(|i| (0..n).all(|j| table[i][j] == table[j][i]));
        Ok(TableAlgebra {
            field,
            name: name.into(),
            names,
            table,
            one,
            commutative,
        })
    }

    pub fn dimension(&self) -> usize {
        self.names.len()
    }

    pub fn table(&self) -> &[Vec<Element>] {
        &self.table
    }

    pub fn into_ref(self) -> AlgebraRef {
        Arc::new(self)
    }
}

impl BasedAlgebra for TableAlgebra {
    fn field(&self) -> ScalarField {
        self.field
    }
    fn name(&self) -> String {
        self.name.clone()
    }
    fn family(&self) -> Family {
        Family::Table
    }
    fn one(&self) -> Element {
        self.one.clone()
    }
    fn mul_basis(&self, a: &Label, b: &Label) -> Element {
        self.table[index_of(a)][index_of(b)].clone()
    }
    fn basis(&self) -> Option<Vec<Label>> {
        Some((0..self.names.len()).map(Label::Index).collect())
    }
    fn is_commutative(&self) -> bool {
        self.commutative
    }
    fn format_label(&self, l: &Label) -> String {
        self.names[index_of(l)].clone()
    }
    fn parse_label(&self, s: &str) -> Result<Label> {
        let t = s.trim();
        self.names
            .iter()
            .position(|n| n == t)
            .map(Label::Index)
            .ok_or_else(|| Error::UnknownLabel(t.into()))
    }
}

#[cfg(test)]
mod tests {
    use super::super::{check_associativity, multiplication_table};
    use super::*;
    use crate::groups::FiniteGroup;

    fn q() -> ScalarField {
        ScalarField::Rationals
    }

    fn s3() -> GroupRef {
        Arc::new(FiniteGroup::symmetric(3).unwrap())
    }

    #[test]
    fn group_algebras() {
        let z2: GroupRef = Arc::new(FiniteGroup::cyclic(2).unwrap());
        let a = GroupAlgebra::new(q(), z2);
        let t = Label::Index(1);
        assert_eq!(a.mul_basis(&t, &t), a.one());
        let b = GroupAlgebra::new(q(), s3());
        assert_eq!(b.basis().unwrap().len(), 6);
        assert!(!b.is_commutative());
        check_associativity(&b, &b.basis().unwrap()).unwrap();
        let z2 = FiniteGroup::cyclic(2).unwrap();
        let k: GroupRef = Arc::new(FiniteGroup::power(&z2, 3).unwrap());
        assert!(GroupAlgebra::new(q(), k).is_commutative());
    }

    #[test]
    fn function_algebra() {
        let a = FunctionAlgebra::new(q(), s3());
        let d = Label::Index(1);
        assert_eq!(a.mul_basis(&d, &d), a.basis_element(&d));
        let x = a.basis_element(&Label::Index(3));
        assert_eq!(a.mul(&a.one(), &x), x);
        assert_eq!(a.format_label(&d), "delta[(12)]");
        assert_eq!(a.parse_label("delta[(12)]").unwrap(), d);
        let triv: GroupRef = Arc::new(FiniteGroup::cyclic(1).unwrap());
        assert_eq!(FunctionAlgebra::new(q(), triv).basis().unwrap().len(), 1);
    }

    #[test]
    fn polynomials() {
        let a = PolynomialAlgebra::new(q(), 3, 2).unwrap();
        let (x1, x2, x3) = (a.var(0), a.var(1), a.var(2));
        assert_eq!(a.format(&a.mul(&x1, &x2)), "[(x1*x2, 1)]");
        assert_eq!(a.basis_of_degree(1).unwrap().len(), 3);
        assert_eq!(a.basis_of_degree(2).unwrap().len(), 6);
        assert!(a.basis_of_degree(3).is_err());
        let p = a.mul(&x1.add(&x2), &x3);
        assert_eq!(a.pretty(&p), "x1*x3 + x2*x3");
        assert!(p.labels().all(|l| a.degree(l) == 2));
        assert_eq!(a.parse_label("x1^2*x3").unwrap(), Label::Monomial(Monomial(vec![2, 0, 1])));
        let high = a.mul(&a.mul(&p, &p), &p);
        assert!(high.labels().all(|l| a.degree(l) == 6));
    }

    #[test]
    fn matrices() {
        let m = MatrixAlgebra::new(q(), 2).unwrap();
        let e = |s: &str| m.parse_label(s).unwrap();
        assert_eq!(m.mul_basis(&e("E[1,2]"), &e("E[2,1]")), m.basis_element(&e("E[1,1]")));
        assert!(m.mul_basis(&e("E[1,2]"), &e("E[1,2]")).is_zero());
        assert_eq!(MatrixAlgebra::new(q(), 3).unwrap().basis().unwrap().len(), 9);
        check_associativity(&m, &m.basis().unwrap()).unwrap();
    }

    #[test]
    fn tensor_of_group_algebras_matches_product_group() {
        let z2 = FiniteGroup::cyclic(2).unwrap();
        let zz: GroupRef = Arc::new(FiniteGroup::direct_product(&z2, &z2).unwrap());
        let z2: GroupRef = Arc::new(z2);
        let a: AlgebraRef = Arc::new(GroupAlgebra::new(q(), z2.clone()));
        let t = TensorAlgebra::new(a.clone(), a).unwrap();
        let direct = GroupAlgebra::new(q(), zz);
        // label <a|b> corresponds to index a*2+b
        let relabel = |x: &Element| {
            x.map_labels(|l| {
                let (a, b) = l.split().unwrap();
                Label::Index(a.index().unwrap() * 2 + b.index().unwrap())
            })
        };
        let tb = t.basis().unwrap();
        for x in &tb {
            for y in &tb {
                let lhs = relabel(&t.mul_basis(x, y));
                let rhs = direct.mul(&relabel(&t.basis_element(x)), &relabel(&t.basis_element(y)));
                assert_eq!(lhs, rhs);
            }
        }
        assert_eq!(tb.len(), 4);
        assert_eq!(t.one(), t.basis_element(&Label::pair(Label::Index(0), Label::Index(0))));
    }

    #[test]
    fn opposite_of_s3() {
        let g = s3();
        let a: AlgebraRef = Arc::new(GroupAlgebra::new(q(), g.clone()));
        let op = OppositeAlgebra::new(a.clone());
        let x = |s: &str| Label::Index(g.parse_element(s).unwrap());
        assert_eq!(op.mul_basis(&x("(12)"), &x("(23)")), a.basis_element(&x("(132)")));
        assert_eq!(g.mul(g.parse_element("(23)").unwrap(), g.parse_element("(12)").unwrap()), g.parse_element("(132)").unwrap());
        let opop = OppositeAlgebra::new(Arc::new(op));
        let b = a.basis().unwrap();
        assert_eq!(multiplication_table(&opop, &b), multiplication_table(a.as_ref(), &b));
    }

    #[test]
    fn literal_roundtrip() {
        let a = PolynomialAlgebra::new(q(), 3, 2).unwrap();
        let x = a.parse("[(x1^2, 1/2), (x2*x3, -3), (1, 7)]").unwrap();
        assert_eq!(a.parse(&a.format(&x)).unwrap(), x);
        let g = s3();
        let t = TensorAlgebra::new(Arc::new(GroupAlgebra::new(q(), g.clone())), Arc::new(a)).unwrap();
        let y = t.parse("[(<(12)|x1>, 2)]").unwrap();
        assert_eq!(t.format(&y), "[(<(12)|x1>, 2)]");
    }
}
