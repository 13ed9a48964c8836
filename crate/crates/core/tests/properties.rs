mod common;

use proptest::prelude::*;

use metric_lie::algebra::format::{parse_algebra, write_algebra};
use metric_lie::algebra::validate;
use metric_lie::catalog;
use metric_lie::scalarfield::{parse_ratfunc, Poly, RatFunc};

use common::{random_algebra, structural_checks};

fn poly() -> impl Strategy<Value = Poly> {
    prop::collection::vec(-5i64..=5, 0..4).prop_map(|c| Poly::from_i64(&c))
}

fn ratfunc() -> impl Strategy<Value = RatFunc> {
    (poly(), poly()).prop_filter_map("zero denominator", |(n, d)| RatFunc::new(n, d).ok())
}

proptest! {
    #[test]
    fn field_axioms(a in ratfunc(), b in ratfunc(), c in ratfunc()) {
        prop_assert_eq!(&a + &b, &b + &a);
        prop_assert_eq!(&a * &b, &b * &a);
        prop_assert_eq!(&(&a + &b) + &c, &a + &(&b + &c));
        prop_assert_eq!(&(&a * &b) * &c, &a * &(&b * &c));
        prop_assert_eq!(&a * &(&b + &c), &(&a * &b) + &(&a * &c));
        prop_assert_eq!(&a + &RatFunc::zero(), a.clone());
        prop_assert_eq!(&a * &RatFunc::one(), a.clone());
        prop_assert!((&a + &-&a).is_zero());
        if !a.is_zero() {
            prop_assert_eq!(&a * &a.inv().unwrap(), RatFunc::one());
        }
        prop_assert!((&(&a * &b) - &(&b * &a)).is_normalized());
    }

    #[test]
    fn parse_print_round_trip(a in ratfunc()) {
        prop_assert_eq!(parse_ratfunc(&a.to_string()).unwrap(), a);
    }

    #[test]
    fn evaluation_is_a_homomorphism(a in ratfunc(), b in ratfunc(), x in -6i64..=6) {
        let x = metric_lie::scalarfield::rat(x);
        if let (Ok(va), Ok(vb)) = (a.eval(&x), b.eval(&x)) {
            prop_assert_eq!((&a * &b).eval(&x).unwrap(), &va * &vb);
            prop_assert_eq!((&a + &b).eval(&x).unwrap(), &va + &vb);
        }
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(20))]

    #[test]
    fn random_algebras_satisfy_structural_identities(seed in any::<u64>()) {
        let alg = random_algebra(seed);
        prop_assert!(validate(&alg).is_empty());
        if let Err(msg) = structural_checks(&alg) {
            return Err(TestCaseError::fail(format!("{}: {msg}", alg.name())));
        }
    }

    #[test]
    fn algebra_files_round_trip(seed in any::<u64>()) {
        let alg = random_algebra(seed);
        let text = write_algebra(&alg);
        let back = parse_algebra(&text).unwrap();
        prop_assert_eq!(&back, &alg);
        prop_assert_eq!(write_algebra(&back), text);
    }
}

#[test]
fn catalog_entries_satisfy_structural_identities() {
    for entry in [catalog::berger(), catalog::abelian_control()] {
        structural_checks(&entry.algebra).unwrap_or_else(|m| panic!("{}: {m}", entry.name));
    }
}
