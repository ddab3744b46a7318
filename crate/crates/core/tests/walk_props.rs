use proptest::prelude::*;

use prudent_core::lattice::{
    is_k_sided, is_prudent, is_triangular_prudent, PrudentTracker, SquareWalk, Step, TriStep, TriWalk, Walk,
};

fn is_self_avoiding(vertices: &[(i32, i32)]) -> bool {
    let mut v = vertices.to_vec();
    v.sort_unstable();
    v.windows(2).all(|w| w[0] != w[1])
}

/// Grows a walk by picking, at each step, among the steps that keep it in the class.
fn grow_square(choices: &[u8], k: u8) -> SquareWalk {
    let mut w = SquareWalk::default();
    for &c in choices {
        let ok: Vec<Step> = Step::ALL
            .into_iter()
            .filter(|&s| {
                let mut x = w.clone();
                x.steps.push(s);
                is_k_sided(&x, k)
            })
            .collect();
        if ok.is_empty() {
            break;
        }
        w.steps.push(ok[c as usize % ok.len()]);
    }
    w
}

fn grow_prudent(choices: &[u8]) -> SquareWalk {
    let mut tr = PrudentTracker::new();
    let mut w = SquareWalk::default();
    for &c in choices {
        let ok: Vec<Step> = Step::ALL.into_iter().filter(|&s| tr.can_step(s)).collect();
        let s = ok[c as usize % ok.len()];
        tr.push(s);
        w.steps.push(s);
    }
    w
}

fn grow_tri(choices: &[u8]) -> TriWalk {
    let mut w = TriWalk::default();
    for &c in choices {
        let ok: Vec<TriStep> = TriStep::ALL
            .into_iter()
            .filter(|&s| {
                let mut x = w.clone();
                x.steps.push(s);
                is_triangular_prudent(&x)
            })
            .collect();
        w.steps.push(ok[c as usize % ok.len()]);
    }
    w
}

fn map_square(w: &SquareWalk, f: impl Fn(Step) -> Step) -> SquareWalk {
    SquareWalk::new(w.steps.iter().map(|&s| f(s)).collect())
}

fn diagonal(s: Step) -> Step {
    Step::from_code([1, 0, 3, 2][s.code() as usize])
}

fn mirror_x(s: Step) -> Step {
    Step::from_code([0, 3, 2, 1][s.code() as usize])
}

fn map_tri(w: &TriWalk, f: impl Fn(u8) -> u8) -> TriWalk {
    TriWalk::new(w.steps.iter().map(|s| TriStep::from_code(f(s.code()))).collect())
}

fn chain_holds(w: &SquareWalk) -> bool {
    let v: Vec<bool> = (1..=3).map(|k| is_k_sided(w, k)).collect();
    let p = is_prudent(w);
    (!v[0] || v[1]) && (!v[1] || v[2]) && (!v[2] || p) && (!p || is_self_avoiding(&w.vertices()))
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(200))]

    #[test]
    fn class_chain_on_arbitrary_steps(codes in prop::collection::vec(0u8..4, 0..14)) {
        let w = SquareWalk::new(codes.into_iter().map(Step::from_code).collect());
        prop_assert!(chain_holds(&w));
    }

    #[test]
    fn class_chain_on_grown_walks(choices in prop::collection::vec(any::<u8>(), 0..40), k in 1u8..=3) {
        let w = grow_square(&choices, k);
        prop_assert_eq!(w.len(), choices.len());
        prop_assert!(is_k_sided(&w, k));
        prop_assert!(chain_holds(&w));
    }

    #[test]
    fn prudent_endpoint_on_border(choices in prop::collection::vec(any::<u8>(), 0..60)) {
        let w = grow_prudent(&choices);
        prop_assert!(is_prudent(&w));
        let v = w.vertices();
        let b = w.bbox();
        let (x, y) = w.endpoint();
        prop_assert!(b.on_border(x, y));
        prop_assert!(v.iter().all(|&(x, y)| x >= b.x_min && x <= b.x_max && y >= b.y_min && y <= b.y_max));
        prop_assert!(v.iter().any(|p| p.0 == b.x_min) && v.iter().any(|p| p.0 == b.x_max));
        prop_assert!(v.iter().any(|p| p.1 == b.y_min) && v.iter().any(|p| p.1 == b.y_max));
    }

    #[test]
    fn square_symmetries(codes in prop::collection::vec(0u8..4, 0..12), choices in prop::collection::vec(any::<u8>(), 0..30)) {
        for w in [SquareWalk::new(codes.iter().map(|&c| Step::from_code(c)).collect()), grow_square(&choices, 2)] {
            prop_assert_eq!(is_k_sided(&w, 2), is_k_sided(&map_square(&w, diagonal), 2));
            prop_assert_eq!(is_k_sided(&w, 3), is_k_sided(&map_square(&w, mirror_x), 3));
            for r in 0..4u8 {
                prop_assert_eq!(is_prudent(&w), is_prudent(&map_square(&w, |s| Step::from_code(s.code() + r))));
            }
        }
    }

    #[test]
    fn triangular_box_and_symmetry(choices in prop::collection::vec(any::<u8>(), 0..40), codes in prop::collection::vec(0u8..6, 0..10)) {
        let w = grow_tri(&choices);
        prop_assert!(is_triangular_prudent(&w));
        prop_assert!(is_self_avoiding(&w.vertices()));
        let b = w.bbox();
        let (x, y) = w.endpoint();
        prop_assert!(b.on_border(x, y));
        prop_assert!(b.size() >= 0);
        let v = w.vertices();
        prop_assert!(v.iter().all(|&(x, y)| x >= b.x_min && y >= b.y_min && x + y <= b.s_max));
        prop_assert!(v.iter().any(|p| p.0 == b.x_min) && v.iter().any(|p| p.1 == b.y_min) && v.iter().any(|p| p.0 + p.1 == b.s_max));
        for u in [w.clone(), TriWalk::new(codes.iter().map(|&c| TriStep::from_code(c)).collect())] {
            let p = is_triangular_prudent(&u);
            prop_assert_eq!(p, is_triangular_prudent(&map_tri(&u, |c| c + 2)));
            prop_assert_eq!(p, is_triangular_prudent(&map_tri(&u, |c| c + 4)));
            prop_assert_eq!(p, is_triangular_prudent(&map_tri(&u, |c| (7 - c) % 6)));
        }
    }

    #[test]
    fn walk_text_and_json_round_trip(choices in prop::collection::vec(any::<u8>(), 0..30), tri in any::<bool>()) {
        let w = if tri { Walk::Tri(grow_tri(&choices)) } else { Walk::Square(grow_prudent(&choices)) };
        prop_assert_eq!(Walk::parse(&w.to_string(), tri).unwrap(), w.clone());
        prop_assert_eq!(Walk::from_json(&w.to_json().to_string()).unwrap(), w);
    }
}
