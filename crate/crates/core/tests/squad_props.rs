mod common;

use proptest::prelude::*;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use common::{check_identities, fixtures, random_c1, squad, FREE_ONE};
use squadk::squad::{parse_sqpres, write_sqpres, Expr1, Squad, Word0};

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn identities_hold_on_random_elements(seed in any::<u64>()) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        for (name, s) in fixtures() {
            let failed = check_identities(&s, &mut rng);
            prop_assert!(failed.is_empty(), "{}: {:?}", name, failed);
        }
    }

    #[test]
    fn multiplication_is_associative(seed in any::<u64>()) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        for (_, s) in fixtures() {
            let (a, b, c) = (random_c1(&s, &mut rng), random_c1(&s, &mut rng), random_c1(&s, &mut rng));
            let left = s.mul1(&s.mul1(&a, &b).unwrap(), &c).unwrap();
            let right = s.mul1(&a, &s.mul1(&b, &c).unwrap()).unwrap();
            prop_assert!(s.equal1(&left, &right).unwrap());
            let back = s.mul1(&s.inv1(&a).unwrap(), &a).unwrap();
            prop_assert!(s.equal1(&back, &s.identity1()).unwrap());
        }
    }

    #[test]
    fn bracket_of_generator_powers(n in -4i64..=4, m in -4i64..=4) {
        // in the free module on e, <ne, me> = nm <e, e> and 2 <e, e> = 0
        let s = squad(FREE_ONE);
        let power = |k: i64| Word0((0..k.unsigned_abs()).map(|_| squadk::squad::Letter { name: "e".into(), inverse: k < 0 }).collect());
        let lhs = Expr1::bracket(power(n), power(m));
        let rhs = if (n * m) % 2 == 0 { Expr1::Zero } else { Expr1::bracket(Word0::gen("e"), Word0::gen("e")) };
        prop_assert!(s.expr_equal(&lhs, &rhs).unwrap());
    }
}

#[test]
fn presentations_round_trip_through_text() {
    for (name, s) in fixtures() {
        let text = write_sqpres(s.presentation());
        let back = parse_sqpres(&text).unwrap();
        assert_eq!(&back, s.presentation(), "{name}");
        let t = Squad::new(back).unwrap();
        assert_eq!(t.pi0().invariant_factors(), s.pi0().invariant_factors(), "{name}");
        assert_eq!(
            t.pi1().unwrap().group.invariant_factors(),
            s.pi1().unwrap().group.invariant_factors(),
            "{name}"
        );
    }
}

#[test]
fn known_homotopy_groups() {
    let cases = [
        (FREE_ONE, "Z", "Z/2"),
        ("gens0:\n  e\ngens1:\n  x := +e\n", "0", "0"),
        ("gens0:\n  e\ngens1:\n  x := +e +e\n", "Z/2", "Z/2"),
        ("gens0:\ngens1:\n  x := 0\n", "0", "Z"),
    ];
    for (text, pi0, pi1) in cases {
        let s = squad(text);
        assert_eq!(s.pi0().invariant_factors().to_string(), pi0, "{text}");
        assert_eq!(s.pi1().unwrap().group.invariant_factors().to_string(), pi1, "{text}");
    }
}
