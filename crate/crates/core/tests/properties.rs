use num_bigint::BigInt;
use num_rational::BigRational;
use proptest::prelude::*;

use interval_core::cantor_opens::GeneratedOpen;
use interval_core::dyadic::{contained_in, interpolate, refines, Dyadic, FormalBall, IntervalOpen, PosRational};
use interval_core::streams::{m_s, mid, SignStream, Trit, TritStream};
use interval_core::words::{Sign, SignWord};

fn sign() -> impl Strategy<Value = Sign> {
    prop_oneof![Just(Sign::Minus), Just(Sign::Plus)]
}

fn trit() -> impl Strategy<Value = Trit> {
    prop_oneof![Just(Trit::Minus), Just(Trit::Zero), Just(Trit::Plus)]
}

fn sign_stream() -> impl Strategy<Value = SignStream> {
    (prop::collection::vec(sign(), 0..6), prop::collection::vec(sign(), 1..6))
        .prop_map(|(p, c)| SignStream::periodic(p, c).unwrap())
}

fn trit_stream() -> impl Strategy<Value = TritStream> {
    (prop::collection::vec(trit(), 0..6), prop::collection::vec(trit(), 1..6))
        .prop_map(|(p, c)| TritStream::periodic(p, c).unwrap())
}

fn word(max: usize) -> impl Strategy<Value = SignWord> {
    prop::collection::vec(sign(), 0..=max).prop_map(SignWord::from_signs)
}

fn generated_open() -> impl Strategy<Value = GeneratedOpen> {
    prop::collection::vec(word(4), 0..4).prop_map(GeneratedOpen::from_words)
}

fn sixteenth() -> impl Strategy<Value = BigRational> {
    (-16i64..=16).prop_map(|n| BigRational::new(n.into(), 16.into()))
}

fn interval_open() -> impl Strategy<Value = IntervalOpen> {
    prop::collection::vec((sixteenth(), sixteenth()), 0..4).prop_map(|pieces| {
        pieces.into_iter().fold(IntervalOpen::empty(), |v, (a, b)| {
            let (a, b) = if a <= b { (a, b) } else { (b, a) };
            v.join(&IntervalOpen::open(a, b))
        })
    })
}

fn ball() -> impl Strategy<Value = FormalBall> {
    (-64i64..=64, 1i64..=64).prop_map(|(c, r)| {
        FormalBall::new(
            Dyadic::new(BigInt::from(c), 5),
            PosRational::new(BigRational::new(r.into(), 32.into())).unwrap(),
        )
    })
}

fn half_of(q: &BigRational) -> BigRational {
    q / BigRational::from_integer(2.into())
}

proptest! {
    #[test]
    fn sign_midpoint_is_exact(a in sign_stream(), b in sign_stream()) {
        let expected = half_of(&(a.exact_value().unwrap() + b.exact_value().unwrap()));
        prop_assert_eq!(m_s(&a, &b).exact_value().unwrap(), expected);
    }

    #[test]
    fn trit_midpoint_is_exact_and_commutes(a in trit_stream(), b in trit_stream()) {
        let m = mid(&a, &b);
        let expected = half_of(&(a.exact_value().unwrap() + b.exact_value().unwrap()));
        prop_assert_eq!(m.exact_value().unwrap(), expected);
        prop_assert_eq!(m.take(24), mid(&b, &a).take(24));
        prop_assert_eq!(mid(&a, &a).exact_value().unwrap(), a.exact_value().unwrap());
    }

    #[test]
    fn half_halves(a in sign_stream()) {
        prop_assert_eq!(a.half().exact_value().unwrap(), half_of(&a.exact_value().unwrap()));
    }

    #[test]
    fn interval_lattice_laws(u in interval_open(), v in interval_open(), w in interval_open()) {
        prop_assert_eq!(u.join(&v), v.join(&u));
        prop_assert_eq!(u.meet(&v), v.meet(&u));
        prop_assert_eq!(u.join(&v.join(&w)), u.join(&v).join(&w));
        prop_assert_eq!(u.meet(&v.meet(&w)), u.meet(&v).meet(&w));
        prop_assert_eq!(u.join(&u.meet(&v)), u.clone());
        prop_assert_eq!(u.meet(&u.join(&v)), u.clone());
        prop_assert_eq!(u.meet(&v.join(&w)), u.meet(&v).join(&u.meet(&w)));
        prop_assert_eq!(u.leq(&v), u.join(&v) == v);
        prop_assert_eq!(u.reflect().reflect(), u);
    }

    #[test]
    fn generated_open_lattice_laws(u in generated_open(), v in generated_open(), w in generated_open()) {
        prop_assert_eq!(u.join(&v), v.join(&u));
        prop_assert_eq!(u.meet(&v.join(&w)), u.meet(&v).join(&u.meet(&w)));
        prop_assert_eq!(u.leq(&v), u.meet(&v) == u);
        prop_assert_eq!(u.swap().swap(), u);
    }

    #[test]
    fn refinement_is_transitive_and_interpolates(a in ball(), b in ball(), c in ball()) {
        if refines(&a, &b) && refines(&b, &c) {
            prop_assert!(refines(&a, &c));
        }
        if refines(&a, &b) {
            prop_assert!(contained_in(&a, &b));
            let m = interpolate(&a, &b).unwrap();
            prop_assert!(refines(&a, &m) && refines(&m, &b));
        } else {
            prop_assert!(interpolate(&a, &b).is_none());
        }
    }
}
