// Building an ideal with prescribed behaviour at the limit maximal ideals
// and recovering the exponents from its weak factorization.

use std::collections::BTreeMap;

use prufer::almost_dedekind::{construct_arbitrary, weak_factorize, FamilyPresentation, StepKind};

pub fn run_example() -> Result<(), Box<dyn std::error::Error>> {
    let p = FamilyPresentation::uniform(StepKind::Unit, 3, 8);
    let targets: BTreeMap<u32, (u32, u32)> = [(1, (3, 1)), (2, (2, 2)), (3, (4, 0))].into();
    let i = construct_arbitrary(&p, &targets)?;
    let w = weak_factorize(&p, &i)?;
    println!("I = {i}");
    println!("I^v = {}", w.divisorial_part);
    println!("exponents {:?}, certified {}", w.exponents, w.certified);
    for (n, (r, s)) in &targets {
        let t = w.exponents.get(n).copied().unwrap_or(0);
        assert_eq!(t, i128::from(r - s));
    }
    println!("nondivisorial support: {:?}", w.nondivisorial_support());
    Ok(())
}

#[allow(dead_code)]
fn main() {
    run_example().unwrap();
}
