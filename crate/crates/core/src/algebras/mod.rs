//! Based algebras: algebras over a [`ScalarField`] with a distinguished basis
//! of [`Label`]s and exact structure constants.

mod action;
mod families;
mod invariants;

use std::fmt;
use std::sync::Arc;

pub use action::{ActionCheck, ActionReport, GroupAction};
pub use families::{
    FunctionAlgebra, GroupAlgebra, MatrixAlgebra, OppositeAlgebra, PolynomialAlgebra, ScalarAlgebra,
    TableAlgebra, TensorAlgebra,
};
pub use invariants::{invariants_compute, invariants_of_degree, InvariantBasis, InvariantSubalgebra};

use crate::element::{Element, Label};
use crate::error::{Error, Result};
use crate::groups::GroupRef;
use crate::literal;
use crate::scalars::ScalarField;

pub type AlgebraRef = Arc<dyn BasedAlgebra>;

/// Which constructor produced an algebra; used for shape checks.
#[derive(Clone, Debug)]
pub enum Family {
    Scalar,
    GroupAlgebra(GroupRef),
    Functions(GroupRef),
    Polynomial(usize),
    Matrix(usize),
    Tensor(AlgebraRef, AlgebraRef),
    Opposite(AlgebraRef),
    Invariant(AlgebraRef),
    SkewGroup,
    Table,
}

pub trait BasedAlgebra: Send + Sync + fmt::Debug {
    fn field(&self) -> ScalarField;
    fn name(&self) -> String;
    fn family(&self) -> Family;
    fn one(&self) -> Element;
    fn mul_basis(&self, a: &Label, b: &Label) -> Element;
    /// The whole basis when it is finite.
    fn basis(&self) -> Option<Vec<Label>>;
    fn is_commutative(&self) -> bool;
    fn format_label(&self, l: &Label) -> String;
    fn parse_label(&self, s: &str) -> Result<Label>;

    fn is_graded(&self) -> bool {
        false
    }

    fn degree(&self, _l: &Label) -> u32 {
        0
    }

    /// Largest degree whose basis may be enumerated.
    fn degree_cap(&self) -> Option<u32> {
        None
    }

    /// Basis of the degree-`d` component, ignoring the cap.
    fn homogeneous_basis(&self, d: u32) -> Vec<Label> {
        if d == 0 {
            self.basis().unwrap_or_default()
        } else {
            Vec::new()
        }
    }

    fn basis_of_degree(&self, d: u32) -> Result<Vec<Label>> {
        match self.degree_cap() {
            Some(cap) if self.is_graded() && d > cap => Err(Error::BeyondDegreeCap { requested: d, cap }),
            _ => Ok(self.homogeneous_basis(d)),
        }
    }

    /// Degrees `0..=d` concatenated.
    fn basis_up_to(&self, d: u32) -> Result<Vec<Label>> {
        if !self.is_graded() {
            return Ok(self.basis().unwrap_or_default());
        }
        let mut out = Vec::new();
        for i in 0..=d {
            out.extend(self.basis_of_degree(i)?);
        }
        Ok(out)
    }

    /// The finite basis, or all degrees up to the cap.
    fn enumerable_basis(&self) -> Result<Vec<Label>> {
        if let Some(b) = self.basis() {
            return Ok(b);
        }
        let cap = self.degree_cap().ok_or(Error::DegreeRequired)?;
        self.basis_up_to(cap)
    }

    fn mul(&self, x: &Element, y: &Element) -> Element {
        let mut r = Element::zero();
        for (a, c) in x {
            for (b, d) in y {
                r.add_scaled(&self.mul_basis(a, b), &(c * d));
            }
        }
        r
    }

    fn basis_element(&self, l: &Label) -> Element {
        Element::basis(l.clone(), self.field())
    }

    /// `[(label, coeff), ...]`.
    fn format(&self, x: &Element) -> String {
        let items: Vec<String> = x
            .terms()
            .map(|(l, c)| format!("({}, {})", self.format_label(l), c))
            .collect();
        format!("[{}]", items.join(", "))
    }

    /// `2*x1 - 1/2*x2` style.
    fn pretty(&self, x: &Element) -> String {
        if x.is_zero() {
            return "0".into();
        }
        let mut out = String::new();
        for (i, (l, c)) in x.terms().enumerate() {
            let (neg, mag) = if c.is_negative() { (true, -c) } else { (false, c.clone()) };
            match (i, neg) {
                (0, true) => out.push('-'),
                (0, false) => {}
                (_, true) => out.push_str(" - "),
                (_, false) => out.push_str(" + "),
            }
            let label = self.format_label(l);
            if mag.is_one() {
                out.push_str(&label);
            } else if *l == Label::Unit || label == "1" {
                out.push_str(&mag.to_string());
            } else {
                out.push_str(&format!("{mag}*{label}"));
            }
        }
        out
    }

    fn parse(&self, s: &str) -> Result<Element> {
        let f = self.field();
        let mut x = Element::zero();
        for (l, c) in literal::parse_pairs(s)? {
            x.add_term(self.parse_label(&l)?, &f.parse(&c)?);
        }
        Ok(x)
    }
}

/// `(ab)c = a(bc)` and unitality on the given labels; returns a witness on failure.
pub fn check_associativity(a: &dyn BasedAlgebra, labels: &[Label]) -> std::result::Result<(), String> {
    let one = a.one();
    for x in labels {
        let ex = a.basis_element(x);
        if a.mul(&one, &ex) != ex || a.mul(&ex, &one) != ex {
            return Err(format!("unit fails on {}", a.format_label(x)));
        }
        for y in labels {
            let xy = a.mul_basis(x, y);
            for z in labels {
                let lhs = a.mul(&xy, &a.basis_element(z));
                let rhs = a.mul(&ex, &a.mul_basis(y, z));
                if lhs != rhs {
                    return Err(format!(
                        "({}, {}, {})",
                        a.format_label(x),
                        a.format_label(y),
                        a.format_label(z)
                    ));
                }
            }
        }
    }
    Ok(())
}

/// All products `x·y` on the given labels, row-major.
pub fn multiplication_table(a: &dyn BasedAlgebra, labels: &[Label]) -> Vec<Vec<Element>> {
    labels
        .iter()
        .map(|x| labels.iter().map(|y| a.mul_basis(x, y)).collect())
        .collect()
}

pub fn scalar(field: ScalarField) -> AlgebraRef {
    Arc::new(ScalarAlgebra::new(field))
}

pub fn group_algebra(field: ScalarField, group: &GroupRef) -> AlgebraRef {
    Arc::new(GroupAlgebra::new(field, group.clone()))
}

pub fn functions(field: ScalarField, group: &GroupRef) -> AlgebraRef {
    Arc::new(FunctionAlgebra::new(field, group.clone()))
}

pub fn polynomial(field: ScalarField, nvars: usize, degree_cap: u32) -> Result<AlgebraRef> {
    Ok(Arc::new(PolynomialAlgebra::new(field, nvars, degree_cap)?))
}

pub fn matrix(field: ScalarField, n: usize) -> Result<AlgebraRef> {
    Ok(Arc::new(MatrixAlgebra::new(field, n)?))
}

pub fn tensor(a: &AlgebraRef, b: &AlgebraRef) -> Result<AlgebraRef> {
    Ok(Arc::new(TensorAlgebra::new(a.clone(), b.clone())?))
}

pub fn opposite(a: &AlgebraRef) -> AlgebraRef {
    Arc::new(OppositeAlgebra::new(a.clone()))
}
