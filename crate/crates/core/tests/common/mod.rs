#![allow(dead_code)]

use std::sync::Arc;

use skewhecke::algebras::{functions, group_algebra, polynomial, scalar, AlgebraRef, GroupAction};
use skewhecke::groups::{FiniteGroup, GroupRef, Subgroup};
use skewhecke::hecke::HeckeContext;
use skewhecke::ScalarField;

pub fn q() -> ScalarField {
    ScalarField::Rationals
}

pub fn sym(n: usize) -> GroupRef {
    Arc::new(FiniteGroup::symmetric(n).unwrap())
}

pub fn sub(g: &GroupRef, gens: &[&str]) -> Subgroup {
    let gens: Vec<usize> = gens.iter().map(|s| g.parse_element(s).unwrap()).collect();
    Subgroup::generated(g, &gens).unwrap()
}

pub fn el(g: &GroupRef, s: &str) -> usize {
    g.parse_element(s).unwrap()
}

pub struct Fixture {
    pub name: String,
    pub ctx: HeckeContext,
}

fn is_odd(g: &GroupRef, x: usize) -> bool {
    let p = g.permutation(x).expect("permutation group");
    let mut seen = vec![false; p.len()];
    let mut cycles = 0;
    for i in 0..p.len() {
        if !seen[i] {
            cycles += 1;
            let mut j = i;
            while !seen[j] {
                seen[j] = true;
                j = p[j];
            }
        }
    }
    (p.len() - cycles) % 2 == 1
}

/// `Q[Z/4]` with odd permutations acting by inversion.
pub fn sign_on_cyclic(g: &GroupRef) -> GroupAction {
    let z4: GroupRef = Arc::new(FiniteGroup::cyclic(4).unwrap());
    let a = group_algebra(q(), &z4);
    let theta = g
        .elements()
        .map(|x| z4.elements().map(|k| if is_odd(g, x) { z4.inv(k) } else { k }).collect())
        .collect();
    GroupAction::by_automorphisms(g, &a, theta, "sign").unwrap()
}

pub fn permuted_polynomials(g: &GroupRef, cap: u32) -> GroupAction {
    let a = polynomial(q(), g.degree().unwrap(), cap).unwrap();
    GroupAction::permute_variables(g, &a).unwrap()
}

pub fn translated_functions(g: &GroupRef) -> GroupAction {
    GroupAction::left_translation(g, &functions(q(), g)).unwrap()
}

pub fn conjugation(g: &GroupRef) -> GroupAction {
    GroupAction::conjugation(g, &group_algebra(q(), g)).unwrap()
}

pub fn trivial_scalars(g: &GroupRef) -> GroupAction {
    GroupAction::trivial(g, &scalar(q()))
}

/// `Q[(Z/2)^3]` with `S3` permuting the factors.
pub fn cube_algebra() -> AlgebraRef {
    let n: GroupRef = Arc::new(FiniteGroup::power(&FiniteGroup::cyclic(2).unwrap(), 3).unwrap());
    group_algebra(q(), &n)
}

fn fixture(name: &str, action: &GroupAction, h: &Subgroup) -> Fixture {
    Fixture {
        name: name.into(),
        ctx: HeckeContext::new(action, h).unwrap(),
    }
}

/// Every context used by the acceptance criteria.
pub fn fixtures() -> Vec<Fixture> {
    let s3 = sym(3);
    let s2 = sub(&s3, &["(12)"]);
    let s4 = sym(4);
    let s3in4 = sub(&s4, &["(12)", "(23)"]);
    let d4 = sub(&s4, &["(1234)", "(13)"]);
    let cube = GroupAction::permute_factors(&s3, &cube_algebra()).unwrap();
    let mut out = vec![
        fixture("S3/S2 Q", &trivial_scalars(&s3), &s2),
        fixture("S3/S2 polynomials", &permuted_polynomials(&s3, 2), &s2),
        fixture("S3/S2 functions", &translated_functions(&s3), &s2),
        fixture("S3/S2 Q[S3] conjugation", &conjugation(&s3), &s2),
        fixture("S3/S2 Q[Z4] sign", &sign_on_cyclic(&s3), &s2),
        fixture("S3/S2 Q[(Z2)^3]", &cube, &s2),
    ];
    for (hname, h) in [("S3", &s3in4), ("D4", &d4)] {
        out.push(fixture(&format!("S4/{hname} polynomials"), &permuted_polynomials(&s4, 2), h));
        out.push(fixture(&format!("S4/{hname} functions"), &translated_functions(&s4), h));
        out.push(fixture(&format!("S4/{hname} Q[Z4] sign"), &sign_on_cyclic(&s4), h));
    }
    out
}
