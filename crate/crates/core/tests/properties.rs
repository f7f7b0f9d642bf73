use lipknot::diagram::{Crossing, LinkDiagram};
use lipknot::invariants::{jones, kauffman_bracket, kauffman_bracket_bruteforce, linking_number, writhe};
use lipknot::poly::{LaurentPoly, Var};
use lipknot::random::{random_braid_diagram, random_insertions};
use lipknot::rational::int;
use lipknot::reidemeister::Move;
use proptest::prelude::*;
use rand::rngs::StdRng;
use rand::SeedableRng;

fn lk_table(d: &LinkDiagram) -> Vec<i64> {
    let n = d.component_count();
    let mut v = Vec::new();
    for i in 0..n {
        for j in i + 1..n {
            v.push(linking_number(d, i, j).unwrap());
        }
    }
    v
}

#[test]
fn insertions_preserve_invariants() {
    let mut rng = StdRng::seed_from_u64(2024);
    for _ in 0..60 {
        let d = random_braid_diagram(&mut rng, 8);
        let j = jones(&d).unwrap();
        let lk = lk_table(&d);
        let mut prev = (kauffman_bracket(&d).unwrap(), writhe(&d));
        for (mv, e) in random_insertions(&mut rng, &d, 6) {
            assert_eq!(jones(&e).unwrap(), j, "{mv:?} on {d}");
            assert_eq!(lk_table(&e), lk, "{mv:?}");
            let b = kauffman_bracket(&e).unwrap();
            let w = writhe(&e);
            match mv {
                Move::R1Add { .. } => {
                    let k = w - prev.1;
                    let f = LaurentPoly::monomial(Var::A, if k % 2 == 0 { 1 } else { -1 }, int(3 * k));
                    assert_eq!(b, &f * &prev.0, "{mv:?}");
                }
                _ => assert_eq!(b, prev.0, "{mv:?}"),
            }
            prev = (b, w);
        }
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn dp_matches_state_sum(seed in any::<u64>()) {
        let mut rng = StdRng::seed_from_u64(seed);
        let d = random_braid_diagram(&mut rng, 9);
        prop_assert_eq!(kauffman_bracket(&d).unwrap(), kauffman_bracket_bruteforce(&d).unwrap());
    }

    #[test]
    fn mirror_inverts_jones(seed in any::<u64>()) {
        let mut rng = StdRng::seed_from_u64(seed);
        let d = random_braid_diagram(&mut rng, 9);
        prop_assert_eq!(jones(&d.mirror()).unwrap(), jones(&d).unwrap().invert_variable());
        let flipped: i64 = d.mirror().crossings().iter().map(Crossing::sign).map(i64::from).sum();
        prop_assert_eq!(flipped, -writhe(&d));
    }
}
