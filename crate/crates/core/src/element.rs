//! Basis labels and sparse coefficient vectors.
//!
//! Every algebra in the crate names its basis with a [`Label`]; an
//! [`Element`] is a finitely supported map from labels to nonzero scalars.
//! Labels are totally ordered so that every printed or enumerated output is
//! deterministic.

use std::cmp::Ordering;
use std::collections::btree_map::{self, BTreeMap};
use std::fmt;

use crate::scalars::{Scalar, ScalarField};

/// Exponent vector of a monomial.
///
/// Ordered by total degree, then so that `x1 < x2 < x3` within a degree
/// (larger exponents on earlier variables come first).
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Monomial(pub Vec<u32>);

impl Monomial {
    pub fn one(nvars: usize) -> Self {
        Monomial(vec![0; nvars])
    }

    pub fn var(nvars: usize, i: usize) -> Self {
        let mut e = vec![0; nvars];
        e[i] = 1;
        Monomial(e)
    }

    pub fn degree(&self) -> u32 {
        self.0.iter().sum()
    }

    pub fn mul(&self, other: &Monomial) -> Monomial {
        Monomial(self.0.iter().zip(&other.0).map(|(a, b)| a + b).collect())
    }
}

impl Ord for Monomial {
    fn cmp(&self, other: &Self) -> Ordering {
        self.degree()
            .cmp(&other.degree())
            .then_with(|| other.0.cmp(&self.0))
    }
}

impl PartialOrd for Monomial {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Display for Monomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut first = true;
        for (i, &e) in self.0.iter().enumerate() {
            if e == 0 {
                continue;
            }
            if !first {
                write!(f, "*")?;
            }
            first = false;
            write!(f, "x{}", i + 1)?;
            if e > 1 {
                write!(f, "^{e}")?;
            }
        }
        if first {
            write!(f, "1")?;
        }
        Ok(())
    }
}

/// A basis label.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Label {
    /// The single basis vector of the ground field.
    Unit,
    /// Group element, indicator function, matrix unit (row-major) or
    /// abstract basis index.
    Index(usize),
    Monomial(Monomial),
    /// Tensor products and other composite indices.
    Pair(Box<Label>, Box<Label>),
}

impl Label {
    pub fn pair(a: Label, b: Label) -> Label {
        Label::Pair(Box::new(a), Box::new(b))
    }

    pub fn index(&self) -> Option<usize> {
        match self {
            Label::Index(i) => Some(*i),
            _ => None,
        }
    }

    pub fn split(&self) -> Option<(&Label, &Label)> {
        match self {
            Label::Pair(a, b) => Some((a, b)),
            _ => None,
        }
    }
}

/// Sparse vector `label -> coefficient` with no stored zeros.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Default)]
pub struct Element {
    terms: BTreeMap<Label, Scalar>,
}

impl Element {
    pub fn zero() -> Self {
        Element::default()
    }

    pub fn basis(label: Label, field: ScalarField) -> Self {
        Element::term(label, field.one())
    }

    pub fn term(label: Label, coeff: Scalar) -> Self {
        let mut e = Element::zero();
        e.add_term(label, &coeff);
        e
    }

    pub fn from_terms(terms: impl IntoIterator<Item = (Label, Scalar)>) -> Self {
        let mut e = Element::zero();
        for (l, c) in terms {
            e.add_term(l, &c);
        }
        e
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn coeff(&self, label: &Label) -> Option<&Scalar> {
        self.terms.get(label)
    }

    pub fn terms(&self) -> btree_map::Iter<'_, Label, Scalar> {
        self.terms.iter()
    }

    pub fn labels(&self) -> impl Iterator<Item = &Label> {
        self.terms.keys()
    }

    pub fn leading(&self) -> Option<(&Label, &Scalar)> {
        self.terms.iter().next()
    }

    /// Labels strictly greater than `bound`, in order.
    pub fn labels_after<'a>(&'a self, bound: &Label) -> impl Iterator<Item = &'a Label> + 'a {
        use std::ops::Bound;
        self.terms
            .range((Bound::Excluded(bound.clone()), Bound::Unbounded))
            .map(|(l, _)| l)
    }

    pub fn add_term(&mut self, label: Label, coeff: &Scalar) {
        if coeff.is_zero() {
            return;
        }
        match self.terms.entry(label) {
            btree_map::Entry::Vacant(v) => {
                v.insert(coeff.clone());
            }
            btree_map::Entry::Occupied(mut o) => {
                let sum = o.get() + coeff;
                if sum.is_zero() {
                    o.remove();
                } else {
                    *o.get_mut() = sum;
                }
            }
        }
    }

    /// `self += c * other`.
    pub fn add_scaled(&mut self, other: &Element, c: &Scalar) {
        if c.is_zero() {
            return;
        }
        for (l, x) in &other.terms {
            self.add_term(l.clone(), &(x * c));
        }
    }

    pub fn add(&self, other: &Element) -> Element {
        let mut r = self.clone();
        for (l, x) in &other.terms {
            r.add_term(l.clone(), x);
        }
        r
    }

    pub fn sub(&self, other: &Element) -> Element {
        let mut r = self.clone();
        for (l, x) in &other.terms {
            r.add_term(l.clone(), &(-x));
        }
        r
    }

    pub fn neg(&self) -> Element {
        self.map_coeffs(|c| -c)
    }

    pub fn scale(&self, c: &Scalar) -> Element {
        if c.is_zero() {
            return Element::zero();
        }
        self.map_coeffs(|x| x * c)
    }

    fn map_coeffs(&self, f: impl Fn(&Scalar) -> Scalar) -> Element {
        Element {
            terms: self
                .terms
                .iter()
                .map(|(l, c)| (l.clone(), f(c)))
                .filter(|(_, c)| !c.is_zero())
                .collect(),
        }
    }

    /// Relabels every term; colliding images are summed.
    pub fn map_labels(&self, mut f: impl FnMut(&Label) -> Label) -> Element {
        let mut r = Element::zero();
        for (l, c) in &self.terms {
            r.add_term(f(l), c);
        }
        r
    }

    /// Keeps the terms whose label satisfies `keep`.
    pub fn filter(&self, mut keep: impl FnMut(&Label) -> bool) -> Element {
        Element {
            terms: self
                .terms
                .iter()
                .filter(|(l, _)| keep(l))
                .map(|(l, c)| (l.clone(), c.clone()))
                .collect(),
        }
    }

    /// `x ⊗ y` with labels `Pair(a, b)`.
    pub fn tensor(x: &Element, y: &Element) -> Element {
        let mut r = Element::zero();
        for (a, c) in &x.terms {
            for (b, d) in &y.terms {
                r.add_term(Label::pair(a.clone(), b.clone()), &(c * d));
            }
        }
        r
    }

    /// Wraps every label as `Pair(tag, label)`.
    pub fn tagged(&self, tag: Label) -> Element {
        self.map_labels(|l| Label::pair(tag.clone(), l.clone()))
    }
}

impl FromIterator<(Label, Scalar)> for Element {
    fn from_iter<I: IntoIterator<Item = (Label, Scalar)>>(iter: I) -> Self {
        Element::from_terms(iter)
    }
}

impl<'a> IntoIterator for &'a Element {
    type Item = (&'a Label, &'a Scalar);
    type IntoIter = btree_map::Iter<'a, Label, Scalar>;
    fn into_iter(self) -> Self::IntoIter {
        self.terms.iter()
    }
}
