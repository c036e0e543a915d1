mod common;

use std::sync::OnceLock;

use proptest::prelude::*;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use common::*;
use skewhecke::algebras::{invariants_compute, BasedAlgebra};
use skewhecke::groups::{CosetSpace, GroupRef, Subgroup};
use skewhecke::hecke::{GradedDegree, HeckeContext, HeckeElement};
use skewhecke::isomorphisms::matrix::matrix_multiplicativity_check;
use skewhecke::isomorphisms::{from_matrix, opposite_transport, to_matrix, CornerModel};

fn contexts() -> &'static [HeckeContext] {
    static CELL: OnceLock<Vec<HeckeContext>> = OnceLock::new();
    CELL.get_or_init(|| fixtures().into_iter().take(6).map(|f| f.ctx).collect())
}

fn s4() -> &'static GroupRef {
    static CELL: OnceLock<GroupRef> = OnceLock::new();
    CELL.get_or_init(|| sym(4))
}

fn sample(ctx: &HeckeContext, seed: u64) -> (HeckeElement, HeckeElement, HeckeElement) {
    let mut r = ChaCha8Rng::seed_from_u64(seed);
    let cap = ctx.degree_cap().map(|_| 1);
    (ctx.random_element(&mut r, 4, cap), ctx.random_element(&mut r, 4, cap), ctx.random_element(&mut r, 4, cap))
}

fn fixture() -> impl Strategy<Value = usize> {
    0..contexts().len()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn group_axioms(a in 0..24usize, b in 0..24usize, c in 0..24usize) {
        let g = s4();
        prop_assert_eq!(g.mul(g.mul(a, b), c), g.mul(a, g.mul(b, c)));
        prop_assert_eq!(g.mul(g.identity(), a), a);
        prop_assert_eq!(g.mul(a, g.identity()), a);
        prop_assert_eq!(g.mul(a, g.inv(a)), g.identity());
    }

    #[test]
    fn generated_subgroups_are_closed(gens in prop::collection::vec(0..24usize, 0..3)) {
        let g = s4();
        let h = Subgroup::generated(g, &gens).unwrap();
        prop_assert!(h.contains(g.identity()));
        for &x in h.elements() {
            prop_assert!(h.contains(g.inv(x)));
            for &y in h.elements() {
                prop_assert!(h.contains(g.mul(x, y)));
            }
        }
    }

    #[test]
    fn cosets_partition_and_stabilizers(gens in prop::collection::vec(0..24usize, 0..3)) {
        let g = s4();
        let h = Subgroup::generated(g, &gens).unwrap();
        let cs = CosetSpace::new(h.clone());
        prop_assert_eq!(cs.len() * h.order(), g.order());
        let mut seen = vec![0; g.order()];
        for (c, coset) in cs.cosets().iter().enumerate() {
            for &x in coset {
                seen[x] += 1;
                prop_assert_eq!(cs.coset_of(x), c);
            }
        }
        prop_assert!(seen.iter().all(|&n| n == 1));
        let mut orbit_total = 0;
        for o in cs.orbits() {
            orbit_total += o.cosets.len();
            let rep = cs.rep(o.rep);
            let expected = h.intersection(&h.conjugate(rep));
            prop_assert_eq!(&o.stabilizer, &expected);
            for &x in h.elements() {
                prop_assert_eq!(cs.act(x, o.rep) == o.rep, expected.contains(x));
            }
        }
        prop_assert_eq!(orbit_total, cs.len());
    }

    #[test]
    fn action_is_a_homomorphism(f in fixture(), seed in any::<u64>(), g in 0..6usize, k in 0..6usize) {
        let ctx = &contexts()[f];
        let (x, y, _) = sample(ctx, seed);
        let (a, b) = (&x.expand()[1], &y.expand()[2]);
        let act = ctx.action();
        let alg = ctx.algebra();
        let gk = ctx.group().mul(g, k);
        prop_assert_eq!(act.apply(g, &act.apply(k, a)), act.apply(gk, a));
        prop_assert_eq!(act.apply(g, &alg.mul(a, b)), alg.mul(&act.apply(g, a), &act.apply(g, b)));
        prop_assert_eq!(act.apply(g, &alg.one()), alg.one());
    }

    #[test]
    fn computed_invariants_are_fixed(f in fixture(), gens in prop::collection::vec(0..6usize, 0..2)) {
        let ctx = &contexts()[f];
        let s = Subgroup::generated(ctx.group(), &gens).unwrap();
        let basis = invariants_compute(ctx.algebra().as_ref(), &s, ctx.action(), Some(1)).unwrap();
        for v in &basis.vectors {
            prop_assert!(ctx.action().first_non_fixing(s.elements(), v).is_none());
        }
    }

    #[test]
    fn convolution_is_associative_and_unital(f in fixture(), seed in any::<u64>()) {
        let ctx = &contexts()[f];
        let (x, y, z) = sample(ctx, seed);
        let xy = x.convolve(&y).unwrap();
        prop_assert_eq!(xy.convolve(&z).unwrap(), x.convolve(&y.convolve(&z).unwrap()).unwrap());
        prop_assert_eq!(ctx.identity().convolve(&x).unwrap(), x.clone());
        prop_assert_eq!(x.convolve(&ctx.identity()).unwrap(), x.clone());
        prop_assert_eq!(x.convolve(&y.add(&z)).unwrap(), xy.add(&x.convolve(&z).unwrap()));
    }

    #[test]
    fn products_stay_stabilizer_invariant(f in fixture(), seed in any::<u64>()) {
        let ctx = &contexts()[f];
        let (x, y, _) = sample(ctx, seed);
        let p = x.convolve(&y).unwrap();
        prop_assert_eq!(ctx.from_values(p.values().to_vec()).unwrap(), p);
    }

    #[test]
    fn representatives_do_not_matter(f in fixture(), seed in any::<u64>(), picks in prop::collection::vec(0..2usize, 3)) {
        let ctx = &contexts()[f];
        let (x, y, _) = sample(ctx, seed);
        let reps: Vec<usize> = ctx.cosets().cosets().iter().zip(&picks).map(|(c, &i)| c[i % c.len()]).collect();
        prop_assert_eq!(x.convolve_with_reps(&y, &reps).unwrap(), x.convolve(&y).unwrap());
    }

    #[test]
    fn expectation_inverts_embedding(f in fixture(), seed in any::<u64>()) {
        let ctx = &contexts()[f];
        let (x, _, _) = sample(ctx, seed);
        let a = x.expectation();
        prop_assert_eq!(ctx.embed_invariant(&a).unwrap().expectation(), a);
    }

    #[test]
    fn matrix_model_round_trip(f in fixture(), seed in any::<u64>()) {
        let ctx = &contexts()[f];
        let (x, y, _) = sample(ctx, seed);
        let m = to_matrix(&x);
        prop_assert!(m.is_invariant());
        prop_assert_eq!(from_matrix(&m).unwrap(), x.clone());
        prop_assert_eq!(to_matrix(&x.add(&y)), m.add(&to_matrix(&y)));
        prop_assert!(matrix_multiplicativity_check(&x, &y).unwrap().passed);
    }

    #[test]
    fn corner_map_is_multiplicative(f in fixture(), seed in any::<u64>()) {
        let ctx = &contexts()[f];
        let m = CornerModel::new(ctx).unwrap();
        let (x, y, _) = sample(ctx, seed);
        let cx = m.to_corner(&x).unwrap();
        prop_assert_eq!(m.from_corner(&cx).unwrap(), x.clone());
        prop_assert_eq!(
            m.to_corner(&x.convolve(&y).unwrap()).unwrap(),
            m.skew().mul(&cx, &m.to_corner(&y).unwrap())
        );
    }

    #[test]
    fn opposite_reverses_products(f in fixture(), seed in any::<u64>()) {
        let ctx = &contexts()[f];
        let t = opposite_transport(ctx).unwrap();
        let (x, y, _) = sample(ctx, seed);
        let lhs = t.apply(&x.convolve(&y).unwrap()).unwrap();
        prop_assert_eq!(lhs, t.apply(&y).unwrap().convolve(&t.apply(&x).unwrap()).unwrap());
    }

    #[test]
    fn degrees_add(seed in any::<u64>(), d1 in 0..2u32, d2 in 0..2u32) {
        let ctx = &contexts()[1];
        let mut r = ChaCha8Rng::seed_from_u64(seed);
        let x = ctx.random_homogeneous(&mut r, 3, d1);
        let y = ctx.random_homogeneous(&mut r, 3, d2);
        let d = x.convolve(&y).unwrap().graded_degree();
        prop_assert!(d == GradedDegree::Zero || d == GradedDegree::Homogeneous(d1 + d2));
    }
}
