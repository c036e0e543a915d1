//! Exact sparse Gaussian elimination over a [`ScalarField`].
//!
//! Vectors are [`Element`]s. An [`Echelon`] keeps one row per pivot, the
//! pivot being the row's smallest label with coefficient 1, so reduction
//! walks labels in increasing order.

use std::collections::BTreeMap;

use crate::element::{Element, Label};
use crate::scalars::{Scalar, ScalarField};

#[derive(Clone, Debug)]
pub struct Echelon {
    field: ScalarField,
    rows: BTreeMap<Label, Element>,
}

impl Echelon {
    pub fn new(field: ScalarField) -> Self {
        Echelon {
            field,
            rows: BTreeMap::new(),
        }
    }

    pub fn rank(&self) -> usize {
        self.rows.len()
    }

    pub fn pivots(&self) -> impl Iterator<Item = &Label> {
        self.rows.keys()
    }

    /// Residue of `v` modulo the span; zero iff `v` lies in the span.
    pub fn reduce(&self, v: &Element) -> Element {
        let mut v = v.clone();
        let mut cursor: Option<Label> = None;
        loop {
            let next = match &cursor {
                None => v.labels().find(|l| self.rows.contains_key(*l)).cloned(),
                Some(b) => v.labels_after(b).find(|l| self.rows.contains_key(*l)).cloned(),
            };
            let Some(pivot) = next else { break };
            let c = v.coeff(&pivot).cloned().expect("pivot present");
            v.add_scaled(&self.rows[&pivot], &(-&c));
            cursor = Some(pivot);
        }
        v
    }

    pub fn contains(&self, v: &Element) -> bool {
        self.reduce(v).is_zero()
    }

    /// Adds `v` to the span; returns the new pivot if `v` was independent.
    pub fn insert(&mut self, v: &Element) -> Option<Label> {
        let r = self.reduce(v);
        let (pivot, lead) = r.leading()?;
        let pivot = pivot.clone();
        let inv = self.field.inverse(lead).expect("nonzero leading coefficient");
        self.rows.insert(pivot.clone(), r.scale(&inv));
        Some(pivot)
    }

    /// Reduced row echelon basis, ordered by pivot.
    pub fn reduced_basis(&self) -> Vec<Element> {
        let mut done: BTreeMap<Label, Element> = BTreeMap::new();
        for (pivot, row) in self.rows.iter().rev() {
            let mut row = row.clone();
            for (q, other) in &done {
                if let Some(c) = row.coeff(q).cloned() {
                    row.add_scaled(other, &(-&c));
                }
            }
            done.insert(pivot.clone(), row);
        }
        done.into_values().collect()
    }
}

pub fn rank(field: ScalarField, vectors: &[Element]) -> usize {
    let mut e = Echelon::new(field);
    for v in vectors {
        e.insert(v);
    }
    e.rank()
}

/// Reduced echelon basis of the span of `vectors`.
pub fn span_basis(field: ScalarField, vectors: &[Element]) -> Vec<Element> {
    let mut e = Echelon::new(field);
    for v in vectors {
        e.insert(v);
    }
    e.reduced_basis()
}

fn augmented(columns: &[Element], field: ScalarField) -> Echelon {
    let mut e = Echelon::new(field);
    for (j, col) in columns.iter().enumerate() {
        let mut v = col.tagged(Label::Index(0));
        v.add_term(Label::pair(Label::Index(1), Label::Index(j)), &field.one());
        e.insert(&v);
    }
    e
}

/// Kernel of the linear map sending the `j`-th unit vector to `columns[j]`.
///
/// The result is in reduced echelon form over labels `Index(j)`: each vector
/// has coefficient 1 at its pivot and 0 at every other vector's pivot.
pub fn kernel(field: ScalarField, columns: &[Element]) -> Vec<Element> {
    let aug = augmented(columns, field);
    let tag = Label::Index(1);
    let mut ker = Echelon::new(field);
    for row in aug.rows.values() {
        let (lead, _) = row.leading().expect("rows are nonzero");
        if lead.split().map(|(t, _)| t) == Some(&tag) {
            let v = row.map_labels(|l| l.split().expect("tagged").1.clone());
            ker.insert(&v);
        }
    }
    ker.reduced_basis()
}

/// Solves `Σ c_j columns[j] = target`, returning one solution if any exists.
pub fn solve(field: ScalarField, columns: &[Element], target: &Element) -> Option<Vec<Scalar>> {
    let aug = augmented(columns, field);
    let residual = aug.reduce(&target.tagged(Label::Index(0)));
    let image_tag = Label::Index(0);
    if residual.labels().any(|l| l.split().map(|(t, _)| t) == Some(&image_tag)) {
        return None;
    }
    let mut coeffs = vec![field.zero(); columns.len()];
    for (l, c) in &residual {
        let j = l.split().and_then(|(_, j)| j.index()).expect("tag label");
        coeffs[j] = -c;
    }
    let mut check = Element::zero();
    for (col, c) in columns.iter().zip(&coeffs) {
        check.add_scaled(col, c);
    }
    debug_assert_eq!(&check, target);
    Some(coeffs)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn vec_of(field: ScalarField, xs: &[i64]) -> Element {
        xs.iter()
            .enumerate()
            .map(|(i, &x)| (Label::Index(i), field.from_i64(x)))
            .collect()
    }

    #[test]
    fn rank_and_span() {
        let f = ScalarField::Rationals;
        let vs = [vec_of(f, &[1, 2, 3]), vec_of(f, &[2, 4, 6]), vec_of(f, &[0, 1, 1])];
        assert_eq!(rank(f, &vs), 2);
        let b = span_basis(f, &vs);
        assert_eq!(b[0], vec_of(f, &[1, 0, 1]));
        assert_eq!(b[1], vec_of(f, &[0, 1, 1]));
    }

    #[test]
    fn kernel_is_reduced() {
        let f = ScalarField::Rationals;
        // map (a, b, c) -> a - b
        let cols = [vec_of(f, &[1]), vec_of(f, &[-1]), vec_of(f, &[0])];
        let k = kernel(f, &cols);
        assert_eq!(k, vec![vec_of(f, &[1, 1, 0]), vec_of(f, &[0, 0, 1])]);
    }

    #[test]
    fn kernel_over_prime_field() {
        let f = ScalarField::Prime(2);
        // a + b = 0 mod 2 has kernel spanned by (1, 1)
        let cols = [vec_of(f, &[1]), vec_of(f, &[1])];
        assert_eq!(kernel(f, &cols), vec![vec_of(f, &[1, 1])]);
    }

    #[test]
    fn solve_consistent_and_inconsistent() {
        let f = ScalarField::Rationals;
        let cols = [vec_of(f, &[1, 1]), vec_of(f, &[1, -1])];
        let c = solve(f, &cols, &vec_of(f, &[3, 1])).unwrap();
        assert_eq!(c, vec![f.from_i64(2), f.from_i64(1)]);
        let cols = [vec_of(f, &[1, 1])];
        assert!(solve(f, &cols, &vec_of(f, &[1, 0])).is_none());
    }
}
