mod support;

use std::sync::Arc;

use pathalg_core::algebra::{normal_form, AlgebraContext, AlgebraElement, Scalar};
use pathalg_core::enumerate::{injective_morphisms, small_graphs};
use pathalg_core::{catalog, compose, Graph, Path, PathHom, PathSet};
use proptest::prelude::*;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

fn fixture_graphs() -> Vec<Graph> {
    vec![
        catalog::rose2(),
        catalog::rp2q_e1(),
        catalog::branching_target(),
        catalog::two_cycle(),
    ]
}

fn random_pathset(paths: &[Path], rng: &mut ChaCha8Rng) -> PathSet {
    let k = rng.random_range(0..5);
    (0..k).map(|_| paths[rng.random_range(0..paths.len())].clone()).collect()
}

fn random_element(ctx: &Arc<AlgebraContext>, rng: &mut ChaCha8Rng) -> AlgebraElement {
    let mut acc = ctx.zero();
    for _ in 0..rng.random_range(0..4) {
        let w = support::random_word(ctx, rng, 4);
        let c = Scalar::new(rng.random_range(-3i64..4).into(), rng.random_range(1i64..4).into());
        acc = acc.add(&normal_form(ctx, &w).unwrap().scale(&c)).unwrap();
    }
    acc
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn pathset_semiring_axioms(seed in any::<u64>(), gi in 0usize..4) {
        let g = &fixture_graphs()[gi];
        let paths = g.paths_up_to(3);
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let a = random_pathset(&paths, &mut rng);
        let b = random_pathset(&paths, &mut rng);
        let c = random_pathset(&paths, &mut rng);
        let one = PathSet::unit(g);
        let zero = PathSet::new();
        prop_assert_eq!(a.add(&b).add(&c), a.add(&b.add(&c)));
        prop_assert_eq!(a.add(&b), b.add(&a));
        prop_assert_eq!(a.add(&zero), a.clone());
        prop_assert_eq!(a.mul(&b).mul(&c), a.mul(&b.mul(&c)));
        prop_assert_eq!(one.mul(&a), a.clone());
        prop_assert_eq!(a.mul(&one), a.clone());
        prop_assert_eq!(a.mul(&zero), zero.clone());
        prop_assert_eq!(a.mul(&b.add(&c)), a.mul(&b).add(&a.mul(&c)));
        prop_assert_eq!(a.add(&b).mul(&c), a.mul(&c).add(&b.mul(&c)));
    }

    #[test]
    fn algebra_ring_axioms(seed in any::<u64>(), gi in 0usize..4, mode in 0usize..3) {
        let g = Arc::new(fixture_graphs()[gi].clone());
        let ctx = match mode {
            0 => AlgebraContext::path(g).unwrap(),
            1 => AlgebraContext::cohn(g).unwrap(),
            _ => AlgebraContext::leavitt(g).unwrap(),
        };
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let a = random_element(&ctx, &mut rng);
        let b = random_element(&ctx, &mut rng);
        let c = random_element(&ctx, &mut rng);
        prop_assert_eq!(a.mul(&b).unwrap().mul(&c).unwrap(), a.mul(&b.mul(&c).unwrap()).unwrap());
        prop_assert_eq!(a.mul(&b.add(&c).unwrap()).unwrap(), a.mul(&b).unwrap().add(&a.mul(&c).unwrap()).unwrap());
        prop_assert_eq!(ctx.one().mul(&a).unwrap(), a.clone());
        prop_assert_eq!(a.mul(&ctx.one()).unwrap(), a.clone());
        prop_assert!(a.sub(&a).unwrap().is_zero());
        if mode > 0 {
            prop_assert_eq!(a.mul(&b).unwrap().star().unwrap(), b.star().unwrap().mul(&a.star().unwrap()).unwrap());
            prop_assert_eq!(a.star().unwrap().star().unwrap(), a.clone());
        }
    }
}

fn small_morphisms() -> Vec<PathHom> {
    let gs = small_graphs(2, 2);
    let mut out = Vec::new();
    for a in &gs {
        for b in &gs {
            out.extend(injective_morphisms(a, b, 2));
        }
    }
    out
}

#[test]
fn category_laws() {
    let ms = small_morphisms();
    let mut rng = ChaCha8Rng::seed_from_u64(5);
    for f in &ms {
        let id_d = PathHom::identity(f.dom().clone());
        let id_c = PathHom::identity(f.cod().clone());
        assert_eq!(&compose(f, &id_d).unwrap(), f);
        assert_eq!(&compose(&id_c, f).unwrap(), f);
    }
    let mut triples = 0;
    while triples < 2000 {
        let f = &ms[rng.random_range(0..ms.len())];
        let gs: Vec<&PathHom> = ms.iter().filter(|g| g.dom() == f.cod()).collect();
        let g = gs[rng.random_range(0..gs.len())];
        let hs: Vec<&PathHom> = ms.iter().filter(|h| h.dom() == g.cod()).collect();
        let h = hs[rng.random_range(0..hs.len())];
        let left = compose(h, &compose(g, f).unwrap()).unwrap();
        let right = compose(&compose(h, g).unwrap(), f).unwrap();
        assert_eq!(left, right);
        triples += 1;
    }
}

#[test]
fn morphisms_respect_concatenation_and_endpoints() {
    for f in small_morphisms() {
        let paths = f.dom().paths_up_to(2);
        for p in &paths {
            let fp = f.apply(p);
            assert_eq!(fp.source(), f.vertex_image(p.source()));
            assert_eq!(fp.target(), f.vertex_image(p.target()));
            for q in &paths {
                if let Some(pq) = p.concat(q) {
                    assert_eq!(f.apply(&pq), fp.concat(&f.apply(q)).unwrap());
                }
            }
        }
    }
}

#[test]
fn extended_lift_restricts_to_f() {
    for f in small_morphisms().into_iter().step_by(7) {
        let lift = f.extended_lift();
        for e in f.dom().edges() {
            assert_eq!(lift.edge_image(e).edges(), f.edge_image(e).edges());
        }
        assert_eq!(lift.dom().edge_count(), 2 * f.dom().edge_count());
    }
}
