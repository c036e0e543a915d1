//! Named verification suites run by `skewhecke verify`.

use std::fmt::Write;
use std::sync::Arc;

use rand_chacha::ChaCha8Rng;
use skewhecke::algebras::{functions, invariants_compute, polynomial, scalar, BasedAlgebra, GroupAction};
use skewhecke::groups::{FiniteGroup, GroupRef, Subgroup};
use skewhecke::hecke::{GradedDegree, HeckeContext, HeckeElement};
use skewhecke::isomorphisms::matrix::{invariant_matrix_basis, matrix_multiplicativity_check, MatrixView};
use skewhecke::isomorphisms::{
    cocycle_transport, conjugate_transport, from_matrix, hecke_basis, intermediate_embed, opposite_transport,
    quotient_transport, semidirect_transport, to_matrix, verify_algebra_map, AlgebraMapReport, CornerModel,
    HeckeView, ImageSpec, ProductTransport, StoneMap,
};
use skewhecke::{Element, Error};

use crate::config::Job;

pub const SUITES: &[&str] = &[
    "assoc",
    "thm4",
    "thm5",
    "corner",
    "stone",
    "group_ops",
    "cocycle",
    "opposite",
    "graded",
    "s3_fixtures",
];

const SAMPLES: usize = 30;

enum Outcome {
    Pass(String),
    Fail(String),
    Skip(String),
}

use Outcome::*;

#[derive(Default)]
pub struct Report {
    pub text: String,
    pub passed: usize,
    pub failed: usize,
    pub skipped: usize,
}

impl Report {
    fn record(&mut self, suite: &str, check: &str, outcome: Outcome) {
        let (tag, detail) = match outcome {
            Pass(d) => {
                self.passed += 1;
                ("PASS", d)
            }
            Fail(d) => {
                self.failed += 1;
                ("FAIL", d)
            }
            Skip(d) => {
                self.skipped += 1;
                ("SKIP", d)
            }
        };
        let _ = writeln!(self.text, "{tag} {suite}/{check}: {detail}");
    }
}

fn from_map(r: &AlgebraMapReport, want_iso: bool) -> Outcome {
    let ok = if want_iso { r.is_isomorphism() } else { r.is_injective_homomorphism() };
    let summary = if want_iso { "isomorphism" } else { "injective homomorphism" };
    if ok {
        Pass(summary.into())
    } else {
        Fail(r.to_string().trim_end().replace('\n', "; "))
    }
}

fn sample(ctx: &HeckeContext, rng: &mut ChaCha8Rng) -> HeckeElement {
    let cap = ctx.degree_cap().map(|c| c.min(1));
    ctx.random_element(rng, 3, cap)
}

/// Runs one suite (or `all`) and appends its lines to `report`.
pub fn run(name: &str, job: &Job, rng: &mut ChaCha8Rng, report: &mut Report) -> Result<(), String> {
    if name == "all" {
        for s in SUITES {
            run(s, job, rng, report)?;
        }
        return Ok(());
    }
    let ctx = &job.ctx;
    let mut rec = |check: &str, o: Outcome| report.record(name, check, o);
    match name {
        "assoc" => assoc(ctx, rng, &mut rec),
        "thm4" => decomposition(ctx, &mut rec),
        "thm5" => matrix_model(ctx, rng, &mut rec),
        "corner" => corner(ctx, &mut rec),
        "stone" => stone(ctx, &mut rec),
        "group_ops" => group_ops(ctx, &mut rec),
        "cocycle" => cocycle(job, &mut rec),
        "opposite" => opposite(ctx, rng, &mut rec),
        "graded" => graded(ctx, &mut rec),
        "s3_fixtures" => s3_fixtures(rng, &mut rec),
        other => return Err(format!("unknown suite {other:?}; expected all or one of {}", SUITES.join(", "))),
    }
    Ok(())
}

type Rec<'a> = dyn FnMut(&str, Outcome) + 'a;

fn wrap(r: skewhecke::Result<Outcome>) -> Outcome {
    r.unwrap_or_else(|e| Fail(e.to_string()))
}

fn assoc(ctx: &HeckeContext, rng: &mut ChaCha8Rng, rec: &mut Rec) {
    let one = ctx.identity();
    let o = wrap((|| {
        for i in 0..SAMPLES {
            let (x, y, z) = (sample(ctx, rng), sample(ctx, rng), sample(ctx, rng));
            if x.convolve(&y)?.convolve(&z)? != x.convolve(&y.convolve(&z)?)? {
                return Ok(Fail(format!("sample {i}: (xy)z != x(yz) for x = {}", x.format())));
            }
            if one.convolve(&x)? != x || x.convolve(&one)? != x {
                return Ok(Fail(format!("sample {i}: identity is not a unit for {}", x.format())));
            }
        }
        Ok(Pass(format!("{SAMPLES} random triples")))
    })());
    rec("associativity_and_unit", o);
}

fn decomposition(ctx: &HeckeContext, rec: &mut Rec) {
    let cap = ctx.degree_cap();
    let o = wrap((|| {
        let mut total = 0;
        let mut parts = Vec::new();
        for o in ctx.cosets().orbits() {
            let d = invariants_compute(ctx.algebra().as_ref(), &o.stabilizer, ctx.action(), cap)?.len();
            parts.push(d.to_string());
            total += d;
        }
        Ok(if total == ctx.dimension() {
            Pass(format!("dim = {} = {}", ctx.dimension(), parts.join(" + ")))
        } else {
            Fail(format!("module basis has {} elements, invariant count gives {total}", ctx.dimension()))
        })
    })());
    rec("dimension", o);

    let o = wrap((|| {
        let f = ctx.field();
        for i in 0..ctx.dimension() {
            let b = ctx.basis_element(i);
            if b.coordinates()? != vec![(i, f.one())] || ctx.from_coset_function(&b.expand())? != b {
                return Ok(Fail(format!("basis element {i} does not round-trip")));
            }
        }
        Ok(Pass(format!("{} basis elements round-trip", ctx.dimension())))
    })());
    rec("bijection", o);

    let o = wrap((|| {
        let fixed = invariants_compute(ctx.algebra().as_ref(), ctx.subgroup(), ctx.action(), cap)?.vectors;
        let fixed = &fixed[..fixed.len().min(4)];
        let a = ctx.algebra();
        let reps: Vec<usize> = ctx.cosets().orbits().iter().map(|o| ctx.cosets().rep(o.rep)).collect();
        let mut n = 0;
        for x in fixed {
            for y in fixed {
                let (ex, ey) = (ctx.embed_invariant(x)?, ctx.embed_invariant(y)?);
                for i in 0..ctx.dimension() {
                    let phi = ctx.basis_element(i);
                    let lhs = ex.convolve(&phi)?.convolve(&ey)?;
                    let want: Vec<Element> = phi
                        .values()
                        .iter()
                        .zip(&reps)
                        .map(|(v, &g)| a.mul(&a.mul(x, v), &ctx.action().apply(g, y)))
                        .collect();
                    if lhs.values() != want.as_slice() {
                        return Ok(Fail(format!("a = {}, basis {i}, a' = {}", a.pretty(x), a.pretty(y))));
                    }
                    n += 1;
                }
            }
        }
        Ok(Pass(format!("{n} instances of a*phi*a'")))
    })());
    rec("bimodule_law", o);
}

fn matrix_model(ctx: &HeckeContext, rng: &mut ChaCha8Rng, rec: &mut Rec) {
    let o = wrap((|| {
        for (i, b) in hecke_basis(ctx).iter().enumerate() {
            if from_matrix(&to_matrix(b))? != *b {
                return Ok(Fail(format!("basis element {i}")));
            }
        }
        Ok(Pass("from_matrix inverts to_matrix on the module basis".into()))
    })());
    rec("round_trip", o);
    let o = wrap((|| {
        let inv = invariant_matrix_basis(ctx)?;
        if inv.len() != ctx.dimension() {
            return Ok(Fail(format!("{} invariant matrices for dim {}", inv.len(), ctx.dimension())));
        }
        let r = verify_algebra_map(
            "to_matrix",
            &HeckeView(ctx.clone()),
            &hecke_basis(ctx),
            &MatrixView(ctx.clone()),
            |p| Ok(to_matrix(p)),
            ImageSpec::Span(inv),
        );
        Ok(from_map(&r, true))
    })());
    rec("invariant_matrices", o);
    let o = wrap((|| {
        for i in 0..SAMPLES {
            let r = matrix_multiplicativity_check(&sample(ctx, rng), &sample(ctx, rng))?;
            if !r.passed {
                return Ok(Fail(format!("sample {i}: entry {:?}", r.witness.unwrap_or_default())));
            }
        }
        Ok(Pass(format!("{SAMPLES} random pairs")))
    })());
    rec("multiplicativity", o);
}

fn corner(ctx: &HeckeContext, rec: &mut Rec) {
    let m = match CornerModel::new(ctx) {
        Ok(m) => m,
        Err(Error::CornerUnavailable(why)) => return rec("corner", Skip(format!("model unavailable: {why}"))),
        Err(e) => return rec("corner", Fail(e.to_string())),
    };
    let e = m.idempotent();
    rec(
        "idempotent",
        if m.skew().mul(e, e) == *e { Pass("e_H^2 = e_H".into()) } else { Fail("e_H^2 != e_H".into()) },
    );
    let o = wrap((|| {
        let cb = m.corner_basis()?;
        if cb.len() != ctx.dimension() {
            return Ok(Fail(format!("corner dim {} vs {}", cb.len(), ctx.dimension())));
        }
        let r = verify_algebra_map("to_corner", &HeckeView(ctx.clone()), &hecke_basis(ctx), &m, |p| m.to_corner(p), ImageSpec::Span(cb));
        Ok(from_map(&r, true))
    })());
    rec("to_corner", o);
}

fn stone(ctx: &HeckeContext, rec: &mut Rec) {
    let map = match StoneMap::new(ctx) {
        Ok(m) => m,
        Err(e) => return rec("stone", Skip(format!("not applicable: {e}"))),
    };
    let o = wrap((|| {
        let r = map.verify()?;
        Ok(if r.passed() {
            Pass(format!("{}; a free module of rank 2 would give dimension 4 and is ruled out by the coset count", r.note()))
        } else {
            Fail(format!("{}; {}", r.map.to_string().trim_end().replace('\n', "; "), r.matrix_units.unwrap_or_default()))
        })
    })());
    rec("matrix_units", o);
}

/// The normal core `∩ gHg⁻¹`.
fn core(ctx: &HeckeContext) -> Subgroup {
    let h = ctx.subgroup();
    ctx.group().elements().fold(h.clone(), |acc, g| acc.intersection(&h.conjugate(g)))
}

fn group_ops(ctx: &HeckeContext, rec: &mut Rec) {
    let g = ctx.group();
    let h = ctx.subgroup();
    match g.elements().find(|&s| !h.contains(s)) {
        None => rec("conjugate", Skip("H = G".into())),
        Some(s) => rec(
            "conjugate",
            wrap(conjugate_transport(ctx, s).map(|t| match from_map(&t.verify(), true) {
                Pass(d) => Pass(format!("by {}: {d}", g.name(s))),
                other => other,
            })),
        ),
    }

    let z2: GroupRef = Arc::new(FiniteGroup::cyclic(2).expect("cyclic group"));
    let o = HeckeContext::new(&GroupAction::trivial(&z2, &scalar(ctx.field())), &Subgroup::trivial(&z2))
        .and_then(|right| ProductTransport::new(ctx, &right));
    match o {
        Ok(p) => rec("product", match from_map(&p.verify(), true) {
            Pass(d) => Pass(format!("with (Z/2, 1): {d}")),
            other => other,
        }),
        Err(Error::Shape(why)) => rec("product", Skip(why)),
        Err(e) => rec("product", Fail(e.to_string())),
    }

    let n = core(ctx);
    if n.order() == 1 {
        rec("quotient", Skip("the normal core of H is trivial".into()));
    } else {
        rec(
            "quotient",
            wrap(quotient_transport(ctx, &n).map(|t| match from_map(&t.verify(), true) {
                Pass(d) => Pass(format!("by {}: {d}", n.describe())),
                other => other,
            })),
        );
    }

    let k = g.elements().filter(|&x| !h.contains(x)).find_map(|x| {
        let mut gens = h.elements().to_vec();
        gens.push(x);
        Subgroup::generated(g, &gens).ok().filter(|k| k.order() < g.order())
    });
    match k {
        None => rec("intermediate", Skip("no subgroup strictly between H and G".into())),
        Some(k) => rec(
            "intermediate",
            wrap(intermediate_embed(ctx, &k).map(|t| match from_map(&t.verify(), false) {
                Pass(d) => Pass(format!("through {}: {d}", k.describe())),
                other => other,
            })),
        ),
    }

    match semidirect_transport(ctx) {
        Ok((t, w)) => rec("semidirect", match from_map(&t.verify(), true) {
            Pass(d) => Pass(format!("group of order {}, dim {}: {d}", w.order(), ctx.dimension())),
            other => other,
        }),
        Err(Error::Shape(why)) => rec("semidirect", Skip(why)),
        Err(e) => rec("semidirect", Fail(e.to_string())),
    }
}

fn cocycle(job: &Job, rec: &mut Rec) {
    let Some(spec) = &job.cocycle else {
        return rec("cocycle", Skip("no [cocycle] section in the configuration".into()));
    };
    match cocycle_transport(&job.ctx, &spec.chi, spec.beta.as_ref()) {
        Ok(t) => rec("transport", from_map(&t.verify(), true)),
        Err(Error::CocycleCondition { condition, witness }) => {
            rec(&format!("condition_{condition}"), Fail(format!("violated: {witness}")))
        }
        Err(e) => rec("transport", Fail(e.to_string())),
    }
}

fn opposite(ctx: &HeckeContext, rng: &mut ChaCha8Rng, rec: &mut Rec) {
    let t = match opposite_transport(ctx) {
        Ok(t) => t,
        Err(e) => return rec("opposite", Fail(e.to_string())),
    };
    rec("bijection", from_map(&t.verify(), true));
    let o = wrap((|| {
        for i in 0..SAMPLES {
            let (x, y) = (sample(ctx, rng), sample(ctx, rng));
            if t.apply(&x.convolve(&y)?)? != t.apply(&y)?.convolve(&t.apply(&x)?)? {
                return Ok(Fail(format!("sample {i}")));
            }
        }
        Ok(Pass(format!("{SAMPLES} random pairs")))
    })());
    rec("anti_multiplicative", o);
    if !ctx.algebra().is_commutative() {
        return rec("involution", Skip("coefficient algebra is not commutative".into()));
    }
    let o = wrap((|| {
        let back = opposite_transport(t.target())?;
        for i in 0..SAMPLES {
            let x = sample(ctx, rng);
            if back.apply(&t.apply(&x)?)?.values() != x.values() {
                return Ok(Fail(format!("sample {i}")));
            }
        }
        Ok(Pass("applying the transport twice is the identity".into()))
    })());
    rec("involution", o);
}

fn graded(ctx: &HeckeContext, rec: &mut Rec) {
    let Some(cap) = ctx.degree_cap().filter(|_| ctx.is_graded()) else {
        return rec("graded", Skip("coefficient algebra is not graded".into()));
    };
    let o = wrap((|| {
        let mut n = 0;
        for d1 in 0..=cap {
            for d2 in 0..=cap - d1 {
                for &i in &ctx.module_basis_of_degree(d1) {
                    for &j in &ctx.module_basis_of_degree(d2) {
                        let d = ctx.basis_element(i).convolve(&ctx.basis_element(j))?.graded_degree();
                        if d != GradedDegree::Zero && d != GradedDegree::Homogeneous(d1 + d2) {
                            return Ok(Fail(format!("basis {i} (deg {d1}) * basis {j} (deg {d2}) has {d:?}")));
                        }
                        n += 1;
                    }
                }
            }
        }
        Ok(Pass(format!("{n} homogeneous basis pairs up to degree {cap}")))
    })());
    rec("degrees_add", o);
}

fn s3_fixtures(rng: &mut ChaCha8Rng, rec: &mut Rec) {
    let g: GroupRef = Arc::new(FiniteGroup::symmetric(3).expect("S3"));
    let s2 = Subgroup::generated(&g, &[g.parse_element("(12)").expect("(12)")]).expect("S2");
    let q = skewhecke::ScalarField::Rationals;
    let name = |s: &str| g.parse_element(s).expect("element");

    let o = wrap((|| {
        let ctx = HeckeContext::new(&GroupAction::trivial(&g, &scalar(q)), &s2)?;
        for r in -2..=2i64 {
            for s in -2..=2i64 {
                for r2 in -2..=2i64 {
                    for s2v in -2..=2i64 {
                        let el = |a: i64, b: i64| {
                            ctx.from_values(vec![ctx.algebra().one().scale(&q.from_i64(a)), ctx.algebra().one().scale(&q.from_i64(b))])
                        };
                        let p = el(r, s)?.convolve(&el(r2, s2v)?)?;
                        if p != el(r * r2 + 2 * s * s2v, r * s2v + s * r2 + s * s2v)? {
                            return Ok(Fail(format!("({r},{s})({r2},{s2v}) = {}", p.format())));
                        }
                    }
                }
            }
        }
        Ok(Pass("(r,s)(r',s') = (rr'+2ss', rs'+sr'+ss') on a 5^4 grid".into()))
    })());
    rec("classical", o);

    let o = wrap((|| {
        let a = polynomial(q, 3, 2)?;
        let act = GroupAction::permute_variables(&g, &a)?;
        let ctx = HeckeContext::new(&act, &s2)?;
        let (t12, t23, t13) = (name("(12)"), name("(23)"), name("(13)"));
        for i in 0..SAMPLES {
            let x = ctx.random_element(rng, 3, None);
            let y = ctx.random_element(rng, 3, None);
            let (a1, b1) = (&x.values()[0], &x.values()[1]);
            let (a2, b2) = (&y.values()[0], &y.values()[1]);
            let t = a.mul(b1, &act.apply(t23, b2));
            let first = a.mul(a1, a2).add(&t).add(&act.apply(t12, &t));
            let second = a
                .mul(a1, b2)
                .add(&a.mul(b1, &act.apply(t23, a2)))
                .add(&a.mul(&act.apply(t12, b1), &act.apply(t13, b2)));
            if x.convolve(&y)?.values() != [first, second] {
                return Ok(Fail(format!("sample {i}")));
            }
        }
        Ok(Pass(format!("{SAMPLES} random polynomial pairs match the closed form")))
    })());
    rec("polynomial_closed_form", o);

    let o = wrap((|| {
        let ctx = HeckeContext::new(&GroupAction::left_translation(&g, &functions(q, &g))?, &s2)?;
        let r = StoneMap::new(&ctx)?.verify()?;
        Ok(if r.passed() && r.n == 3 {
            Pass(r.note())
        } else {
            Fail(format!("n = {}, dimension {}", r.n, r.dimension))
        })
    })());
    rec("stone", o);
}
