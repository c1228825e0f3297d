//! Property tests over the seeded generators: serialization round trips,
//! renaming invariance of the filler oracle, strict functor-composition
//! laws, and the universal property of the table-level pullback.

use std::collections::BTreeMap;

use proptest::prelude::*;

use awfslab::format::{self, FixtureValue};
use awfslab::gen::{gen_fibration, gen_functor, gen_groupoid, gen_reflection, rng_for};
use awfslab_core::cat::{compose_functors, pullback_category, FinCategory, Functor};
use awfslab_core::squares::{enumerate_all_functors, enumerate_fillers};
use awfslab_core::structured::Orientation;

/// A fresh renaming of every object and morphism of a category.
fn shuffle_names(g: &FinCategory, salt: &str) -> (FinCategory, BTreeMap<String, String>, BTreeMap<String, String>) {
    let obj: BTreeMap<String, String> =
        g.objects.iter().enumerate().map(|(i, o)| (o.clone(), format!("{salt}o{i}"))).collect();
    let mor: BTreeMap<String, String> =
        g.morphisms.iter().enumerate().map(|(i, m)| (m.name.clone(), format!("{salt}m{i}"))).collect();
    (g.rename(&obj, &mor), obj, mor)
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(24))]

    #[test]
    fn generated_fixtures_round_trip_bytewise(seed in 0u64..5000) {
        let mut rng = rng_for(seed);
        let g = gen_groupoid(&mut rng, 5).unwrap();
        prop_assert!(g.validate().unwrap().ok());
        let bytes = format::serialize(&FixtureValue::Category(g.clone()));
        let parsed = format::parse(&bytes, "prop").unwrap();
        prop_assert_eq!(format::serialize(&parsed.value), bytes.clone());
        match parsed.value {
            FixtureValue::Category(back) => prop_assert_eq!(back, g),
            _ => prop_assert!(false, "kind changed in round trip"),
        }
        // fibrations and reflections round trip too
        let fib = gen_fibration(&mut rng, 2, 2, Orientation::Cartesian).unwrap();
        let fb = format::serialize(&FixtureValue::Fibration(fib.clone()));
        prop_assert_eq!(format::serialize(&format::parse(&fb, "prop").unwrap().value), fb.clone());
        let refl = gen_reflection(&mut rng, 4).unwrap();
        let rb = format::serialize(&FixtureValue::Reflection(refl));
        prop_assert_eq!(format::serialize(&format::parse(&rb, "prop").unwrap().value), rb.clone());
    }

    #[test]
    fn renaming_preserves_validity_and_filler_counts(seed in 0u64..5000) {
        let cases = awfslab::corpus::lifting_corpus(seed, 1, 4);
        prop_assume!(cases.is_ok());
        let case = cases.unwrap().remove(0);
        let n = enumerate_fillers(&case.problem).fillers.len();
        // rename the reflection's ambient category and rebuild the square
        let (cod2, obj, mor) = shuffle_names(case.refl.cod_cat(), "z");
        prop_assert!(cod2.validate().unwrap().ok());
        let rn = |f: &Functor, renaming_source: bool| -> Functor {
            if renaming_source {
                Functor::new(
                    cod2.clone(),
                    f.target.clone(),
                    f.object_map.iter().map(|(k, v)| (obj[k].clone(), v.clone())).collect(),
                    f.morphism_map.iter().map(|(k, v)| (mor[k].clone(), v.clone())).collect(),
                )
            } else {
                Functor::new(
                    f.source.clone(),
                    cod2.clone(),
                    f.object_map.iter().map(|(k, v)| (k.clone(), obj[v].clone())).collect(),
                    f.morphism_map.iter().map(|(k, v)| (k.clone(), mor[v].clone())).collect(),
                )
            }
        };
        let section2 = rn(&case.refl.section, false);
        let bottom2 = rn(&case.problem.bottom, true);
        let square2 = awfslab_core::squares::Square::new(
            section2,
            case.problem.right.clone(),
            case.problem.top.clone(),
            bottom2,
        )
        .unwrap();
        prop_assert_eq!(enumerate_fillers(&square2).fillers.len(), n);
    }

    #[test]
    fn functor_composition_is_associative_and_unital(seed in 0u64..5000) {
        let mut rng = rng_for(seed);
        let a = gen_groupoid(&mut rng, 3).unwrap();
        let b = gen_groupoid(&mut rng, 3).unwrap();
        let c = gen_groupoid(&mut rng, 3).unwrap();
        let f = gen_functor(&mut rng, &a, &b);
        let g = gen_functor(&mut rng, &b, &c);
        let h = gen_functor(&mut rng, &c, &a);
        prop_assume!(f.is_some() && g.is_some() && h.is_some());
        let (f, g, h) = (f.unwrap(), g.unwrap(), h.unwrap());
        let left = compose_functors(&h, &compose_functors(&g, &f).unwrap()).unwrap();
        let right = compose_functors(&compose_functors(&h, &g).unwrap(), &f).unwrap();
        prop_assert_eq!(left, right);
        let idf = compose_functors(&f, &Functor::identity(&a)).unwrap();
        prop_assert_eq!(&idf, &f);
        let fid = compose_functors(&Functor::identity(&b), &f).unwrap();
        prop_assert_eq!(&fid, &f);
    }

    #[test]
    fn pullback_universal_property_on_enumerable_cones(seed in 0u64..2000) {
        let mut rng = rng_for(seed);
        let b = gen_groupoid(&mut rng, 2).unwrap();
        let a = gen_groupoid(&mut rng, 2).unwrap();
        let c = gen_groupoid(&mut rng, 2).unwrap();
        let f = gen_functor(&mut rng, &a, &b);
        let g = gen_functor(&mut rng, &c, &b);
        prop_assume!(f.is_some() && g.is_some());
        let (f, g) = (f.unwrap(), g.unwrap());
        let (pb, p1, p2) = pullback_category(&f, &g).unwrap();
        prop_assert!(pb.validate().unwrap().ok());
        // cones from a small apex: every commuting cone factors uniquely
        let z = gen_groupoid(&mut rng, 2).unwrap();
        let all_pb = enumerate_all_functors(&z, &pb);
        for h in enumerate_all_functors(&z, &a) {
            for k in enumerate_all_functors(&z, &c) {
                if compose_functors(&f, &h).unwrap() != compose_functors(&g, &k).unwrap() {
                    continue;
                }
                let factors = all_pb
                    .iter()
                    .filter(|u| {
                        compose_functors(&p1, u).unwrap() == h && compose_functors(&p2, u).unwrap() == k
                    })
                    .count();
                prop_assert_eq!(factors, 1, "every commuting cone factors uniquely");
            }
        }
    }
}
