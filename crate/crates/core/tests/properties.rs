use proptest::prelude::*;

use prufer::almost_dedekind::{monomial_profile, Family, FamilyPresentation, Monomial, RewriteOrder, StepKind, Symbol};
use prufer::format::{FiniteFile, PresentationFile};
use prufer::gen::CaseGen;
use prufer::quad::rat;
use prufer::{Coord, Cut, Level, QuadExt, ValueGroup};

fn group() -> impl Strategy<Value = ValueGroup> {
    prop_oneof![
        Just(ValueGroup::z()),
        Just(ValueGroup::q()),
        Just(ValueGroup::lex(Level::Z, Level::Z)),
        Just(ValueGroup::lex(Level::Z, Level::Q)),
        Just(ValueGroup::lex(Level::Q, Level::Z)),
        Just(ValueGroup::lex(Level::Q, Level::Q)),
    ]
}

fn value(level: Level) -> BoxedStrategy<QuadExt> {
    match level {
        Level::Z => (-4i128..=4).prop_map(QuadExt::integer).boxed(),
        Level::Q => {
            (-8i128..=8, 1i128..=3, -2i128..=2).prop_map(|(p, q, s)| QuadExt::new(rat(p, q), rat(s, 2), 2)).boxed()
        }
    }
}

fn cut_in(g: ValueGroup) -> BoxedStrategy<Cut> {
    let first = value(g.level(0));
    let attained = any::<bool>();
    if g.rank() == 1 {
        return (first, attained)
            .prop_map(move |(x, a)| Cut::new(g.clone(), vec![Coord::Finite(x)], a).unwrap())
            .boxed();
    }
    let second = prop_oneof![1 => Just(None), 3 => value(g.level(1)).prop_map(Some)];
    (first, second, attained)
        .prop_map(move |(x, y, a)| {
            let y = y.map(Coord::Finite).unwrap_or(Coord::MinusInf);
            Cut::new(g.clone(), vec![Coord::Finite(x), y], a).unwrap()
        })
        .boxed()
}

fn three_cuts() -> impl Strategy<Value = (Cut, Cut, Cut)> {
    group().prop_flat_map(|g| (cut_in(g.clone()), cut_in(g.clone()), cut_in(g)))
}

proptest! {
    #[test]
    fn product_is_a_commutative_monoid((a, b, c) in three_cuts()) {
        prop_assert_eq!(a.product(&b).unwrap(), b.product(&a).unwrap());
        prop_assert_eq!(
            a.product(&b).unwrap().product(&c).unwrap(),
            a.product(&b.product(&c).unwrap()).unwrap()
        );
        prop_assert_eq!(a.product(&Cut::unit(a.group())).unwrap(), a.clone());
    }

    #[test]
    fn sum_and_intersection_form_a_distributive_lattice((a, b, c) in three_cuts()) {
        prop_assert_eq!(a.sum(&a.intersect(&b).unwrap()).unwrap(), a.clone());
        prop_assert_eq!(a.intersect(&a.sum(&b).unwrap()).unwrap(), a.clone());
        let lhs = a.intersect(&b.sum(&c).unwrap()).unwrap();
        let rhs = a.intersect(&b).unwrap().sum(&a.intersect(&c).unwrap()).unwrap();
        prop_assert_eq!(lhs, rhs);
        prop_assert!(a.is_subideal_of(&a.sum(&b).unwrap()));
    }

    #[test]
    fn product_distributes_over_sum((a, b, c) in three_cuts()) {
        let lhs = a.product(&b.sum(&c).unwrap()).unwrap();
        let rhs = a.product(&b).unwrap().sum(&a.product(&c).unwrap()).unwrap();
        prop_assert_eq!(lhs, rhs);
    }

    #[test]
    fn closure_is_a_star_operation((a, b, _) in three_cuts()) {
        let av = a.v_closure();
        prop_assert!(a.is_subideal_of(&av));
        prop_assert_eq!(av.v_closure(), av.clone());
        prop_assert!(a.inverse().is_divisorial());
        prop_assert_eq!(a.inverse(), av.inverse());
        if a.is_subideal_of(&b) {
            prop_assert!(av.is_subideal_of(&b.v_closure()));
        }
        prop_assert!(a.product(&a.inverse()).unwrap().is_integral());
    }

    #[test]
    fn divisorial_iff_closed_and_classified((a, _, _) in three_cuts()) {
        prop_assert_eq!(a.is_divisorial(), a.v_closure() == a);
        prop_assert_eq!(a.is_divisorial(), a.classify() != prufer::LocalClass::Nondivisorial);
        if a.is_principal() && a.group().last() == Level::Q {
            prop_assert!(!a.product(&Cut::maximal(a.group())).unwrap().is_divisorial());
        }
    }

    #[test]
    fn order_matches_inclusion((a, b, _) in three_cuts()) {
        prop_assert_eq!(a.is_subideal_of(&b), a >= b);
        prop_assert_eq!(a.sum(&b).unwrap() == b, a.is_subideal_of(&b));
    }

    #[test]
    fn global_closure_is_computed_slotwise(seed in any::<u64>()) {
        let mut gen = CaseGen::new(seed);
        let d = gen.hlocal_presentation(5);
        let i = gen.ideal(&d, false, 0.7);
        let iv = d.v_closure(&i).unwrap();
        for m in d.slots().keys() {
            prop_assert_eq!(d.local(&iv, m).unwrap(), d.local(&i, m).unwrap().v_closure());
        }
        let f = d.strong_factorize(&i).unwrap();
        prop_assert!(f.certificate.holds());
        prop_assert_eq!(d.is_divisorial(&i).unwrap(), f.factors.is_empty());
    }

    #[test]
    fn presentation_files_round_trip(seed in any::<u64>(), shared in any::<bool>()) {
        let mut gen = CaseGen::new(seed);
        let d = if shared { gen.shared_presentation(false) } else { gen.hlocal_presentation(6) };
        let ideals = (0..3).map(|k| (format!("I{k}"), gen.ideal(&d, k != 0, 0.6))).collect();
        let file = PresentationFile::Finite(FiniteFile { domain: d, ideals });
        let text = file.to_string();
        let back = PresentationFile::parse(&text).unwrap();
        prop_assert_eq!(back.to_string(), text);
        prop_assert_eq!(back, file);
    }

    #[test]
    fn monomial_profiles_are_multiplicative(
        unit in any::<bool>(),
        terms in prop::collection::vec((any::<bool>(), 0u32..6, -2i64..=3), 1..5),
        other in prop::collection::vec((any::<bool>(), 0u32..6, -2i64..=3), 1..5),
    ) {
        let kind = if unit { StepKind::Unit } else { StepKind::Dyadic };
        let build = |ts: &[(bool, u32, i64)]| {
            ts.iter().fold(Monomial::one(), |m, &(x, k, e)| {
                let s = if x {
                    Symbol::X { family: 1, index: k.max(kind.first_index()) }
                } else {
                    Symbol::T { family: 1, level: k }
                };
                m.times(s, e)
            })
        };
        let (a, b) = (build(&terms), build(&other));
        let pa = monomial_profile(&a, 1, kind);
        let pb = monomial_profile(&b, 1, kind);
        prop_assert_eq!(pa.product(&pb).unwrap(), monomial_profile(&a.mul(&b), 1, kind));
        prop_assert_eq!(pa.inverse().unwrap(), monomial_profile(&a.pow(-1), 1, kind));
        prop_assert!(pa.product(&pa.inverse().unwrap()).unwrap().is_unit());

        let p = FamilyPresentation::new(vec![Family { id: 1, kind }], 8).unwrap();
        let low = a.rewrite_to_level(&p, 8, RewriteOrder::LowestFirst).unwrap();
        let high = a.rewrite_to_level(&p, 8, RewriteOrder::HighestFirst).unwrap();
        prop_assert_eq!(low, high);
    }
}
