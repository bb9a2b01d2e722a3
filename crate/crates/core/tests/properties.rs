use proptest::prelude::*;
use yangian::maps::GeneratorImageTable;
use yangian::report::{params, CheckReport, Witness};
use yangian::series::TruncatedSeries;
use yangian::{AlgebraContext, Element, GeneratorIndex};

fn context() -> impl Strategy<Value = AlgebraContext> {
    (2usize..=3, prop::sample::select(vec![3u32, 5, 7])).prop_map(|(n, p)| AlgebraContext::new(n, p).unwrap())
}

fn word(n: usize, max_r: u32, max_len: usize) -> impl Strategy<Value = Vec<GeneratorIndex>> {
    prop::collection::vec((1..=n, 1..=n, 1..=max_r).prop_map(|(i, j, r)| GeneratorIndex::new(i, j, r)), 0..=max_len)
}

/// A short linear combination of normalized words.
fn element(ctx: AlgebraContext, max_r: u32, max_len: usize) -> impl Strategy<Value = Element> {
    prop::collection::vec((word(ctx.n(), max_r, max_len), 1i64..7), 1..=2).prop_map(move |terms| {
        terms.iter().fold(Element::zero(ctx), |acc, (w, c)| &acc + &Element::normalize(ctx, w, *c).unwrap())
    })
}

fn ctx_and<T: std::fmt::Debug, S: Strategy<Value = T>>(
    f: impl Fn(AlgebraContext) -> S + Clone + 'static,
) -> impl Strategy<Value = (AlgebraContext, T)> {
    context().prop_flat_map(move |c| (Just(c), f(c)))
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn normal_form_is_idempotent((c, w) in ctx_and(|c| word(c.n(), 3, 4))) {
        let x = Element::normalize(c, &w, 1).unwrap();
        let again = x.terms().fold(Element::zero(c), |acc, (m, k)| &acc + &Element::normalize(c, &m, k as i64).unwrap());
        prop_assert_eq!(again, x);
    }

    #[test]
    fn multiplication_is_associative((_, (x, y, z)) in ctx_and(|c| (element(c, 2, 2), element(c, 2, 2), element(c, 2, 2)))) {
        prop_assert_eq!(&(&x * &y) * &z, &x * &(&y * &z));
    }

    #[test]
    fn jacobi_identity((_, (x, y, z)) in ctx_and(|c| (element(c, 2, 2), element(c, 2, 1), element(c, 2, 1)))) {
        let j = &(&x.commutator(&y.commutator(&z).unwrap()).unwrap() + &y.commutator(&z.commutator(&x).unwrap()).unwrap())
            + &z.commutator(&x.commutator(&y).unwrap()).unwrap();
        prop_assert!(j.is_zero());
    }

    #[test]
    fn transposition_is_an_anti_involution((c, (x, y)) in ctx_and(|c| (element(c, 3, 2), element(c, 3, 2)))) {
        let tau = GeneratorImageTable::tau(c, 24);
        prop_assert_eq!(tau.apply(&tau.apply(&x).unwrap()).unwrap(), x.clone());
        prop_assert_eq!(tau.apply(&(&x * &y)).unwrap(), &tau.apply(&y).unwrap() * &tau.apply(&x).unwrap());
    }

    #[test]
    fn omega_is_an_involutive_homomorphism((c, (x, y)) in ctx_and(|c| (element(c, 2, 2), element(c, 2, 1)))) {
        let omega = GeneratorImageTable::omega(c, 4).unwrap();
        prop_assert_eq!(omega.apply(&omega.apply(&x).unwrap()).unwrap(), x.clone());
        prop_assert_eq!(omega.apply(&(&x * &y)).unwrap(), &omega.apply(&x).unwrap() * &omega.apply(&y).unwrap());
    }

    #[test]
    fn series_shift_and_inverse((c, (i, j, shift)) in ctx_and(|c| (1..=c.n(), 1..=c.n(), -4i64..=4))) {
        let f = TruncatedSeries::rtt(c, i, j, 4).unwrap();
        prop_assert_eq!(f.shift(shift).shift(-shift), f.clone());
        let g = TruncatedSeries::rtt(c, i, i, 4).unwrap();
        let one = TruncatedSeries::one(c, 4);
        prop_assert_eq!(g.try_mul(&g.inverse().unwrap()).unwrap(), one.clone());
        prop_assert_eq!(g.inverse().unwrap().try_mul(&g).unwrap(), one);
    }

    #[test]
    fn reports_round_trip((c, x) in ctx_and(|c| element(c, 3, 3)), r in 0i64..10, tag in "[a-z]{1,8}") {
        let report = CheckReport::from_difference(tag.clone(), params(&[("r", r)]), &x);
        let back: CheckReport = serde_json::from_str(&serde_json::to_string(&report).unwrap()).unwrap();
        prop_assert_eq!(&back, &report);
        if !x.is_zero() {
            let w = report.witness.unwrap();
            prop_assert_eq!(w.p, c.p());
            prop_assert_eq!(w, Witness::from_element(&x));
        }
    }
}
