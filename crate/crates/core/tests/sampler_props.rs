use std::sync::OnceLock;

use num_bigint::BigUint;
use proptest::prelude::*;

use prudent_core::lattice::is_prudent;
use prudent_core::sampler::{children, kinetic_sample, l_children, project, roots, ExtTable, Label, ROOT};
use prudent_core::{Execution, WalkClass};

const CLASSES: [WalkClass; 5] =
    [WalkClass::OneSided, WalkClass::TwoSided, WalkClass::ThreeSided, WalkClass::Prudent4, WalkClass::Triangular];

fn tables_at_60() -> &'static Vec<ExtTable> {
    static T: OnceLock<Vec<ExtTable>> = OnceLock::new();
    T.get_or_init(|| CLASSES.iter().map(|&c| ExtTable::build(c, 60).unwrap()).collect())
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn samples_belong_to_class(ci in 0usize..5, n in 0usize..=60, seed in any::<u64>()) {
        let class = CLASSES[ci];
        let t = ExtTable::build(class, n).unwrap();
        for w in t.samples(4, seed, Execution::Sequential).unwrap() {
            prop_assert_eq!(w.len(), n);
            prop_assert!(w.is_in_class(class), "{} {}", class, w);
        }
    }

    #[test]
    fn samples_at_60_belong_to_class(seed in any::<u64>()) {
        for (t, &class) in tables_at_60().iter().zip(&CLASSES) {
            let w = t.sample(&mut prudent_core::sampler::rng_for(seed, 0)).unwrap();
            prop_assert!(w.is_in_class(class), "{} {}", class, w);
        }
    }

    #[test]
    fn unrank_is_injective_and_in_class(ci in 0usize..5, n in 1usize..=30, a in any::<u64>(), b in any::<u64>()) {
        let class = CLASSES[ci];
        let t = ExtTable::build(class, n).unwrap();
        let (ra, rb) = (BigUint::from(a) % t.total(), BigUint::from(b) % t.total());
        let (wa, wb) = (t.unrank(&ra).unwrap(), t.unrank(&rb).unwrap());
        prop_assert!(wa.is_in_class(class));
        prop_assert_eq!(ra == rb, wa == wb);
    }

    #[test]
    fn sampling_is_deterministic(ci in 0usize..5, n in 0usize..=25, seed in any::<u64>()) {
        let t = ExtTable::build(CLASSES[ci], n).unwrap();
        let a = t.samples(6, seed, Execution::Sequential).unwrap();
        prop_assert_eq!(&a, &t.samples(6, seed, Execution::Parallel).unwrap());
        prop_assert_eq!(a, t.samples(6, seed, Execution::Sequential).unwrap());
    }

    #[test]
    fn kinetic_walks_are_prudent(n in 0usize..=2000, seed in any::<u64>()) {
        let w = kinetic_sample(n, seed);
        prop_assert_eq!(w.len(), n);
        prop_assert!(is_prudent(&w));
    }

    #[test]
    fn extension_recursion(ci in 0usize..5, path in prop::collection::vec(any::<u8>(), 0..12)) {
        // Ex(l, m) is the sum of Ex over the children of l.
        let class = CLASSES[ci];
        let n = 14;
        let t = ExtTable::build(class, n).unwrap();
        let mut p = ROOT;
        for (depth, c) in path.iter().enumerate() {
            let m = n - depth;
            let l = project(class, &p);
            let kids = l_children(class, &l).unwrap();
            let sum: BigUint = kids.iter().map(|k| t.ex(k, m - 1).unwrap().clone()).sum();
            prop_assert_eq!(t.ex(&l, m).unwrap(), &sum);
            let pk = children(class, &p).unwrap();
            let mut proj: Vec<Label> = pk.iter().map(|k| project(class, k)).collect();
            let mut lk = kids.clone();
            proj.sort();
            lk.sort();
            prop_assert_eq!(proj, lk);
            p = pk[*c as usize % pk.len()];
        }
        prop_assert!(t.labels(0).iter().all(|l| t.ex(l, 0) == Some(&BigUint::from(1u32))));
    }
}

#[test]
fn kinetic_walks_of_length_ten_thousand() {
    for seed in 0..5 {
        assert!(is_prudent(&kinetic_sample(10_000, seed)));
    }
}

#[test]
fn root_children_are_roots() {
    for class in CLASSES {
        assert_eq!(children(class, &ROOT).unwrap(), roots(class));
    }
}

#[test]
fn kinetic_first_step_uniform() {
    let mut counts = [0usize; 4];
    for seed in 0..4000 {
        counts[kinetic_sample(1, seed).steps[0].code() as usize] += 1;
    }
    assert!(counts.iter().all(|&c| (900..1100).contains(&c)), "{counts:?}");
}
