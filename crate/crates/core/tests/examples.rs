macro_rules! example {
    ($name:ident) => {
        mod $name {
            include!(concat!(env!("CARGO_MANIFEST_DIR"), "/examples/", stringify!($name), ".rs"));
        }

        #[test]
        fn $name() {
            $name::run_example().expect("example runs");
        }
    };
}

example!(valuation_cuts);
example!(strong_factorization);
example!(factorization_predictions);
example!(shared_prime);
example!(brute_force_oracle);
example!(semistar_operations);
example!(almost_dedekind_fixtures);
example!(weak_factorization);
example!(presentation_files);
example!(property_suites);
