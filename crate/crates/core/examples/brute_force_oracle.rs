// Cross-checking closed-form duals against exhaustive search.

use prufer::hlocal::DomainPresentation;
use prufer::oracle::{oracle_dual, v_closure_oracle};
use prufer::{Level, ValueGroup};

pub fn run_example() -> Result<(), Box<dyn std::error::Error>> {
    let d = DomainPresentation::hlocal(2, [("A", ValueGroup::z()), ("B", ValueGroup::lex(Level::Z, Level::Z))])?;
    let bound = 6;
    for pairs in [
        vec![("A", "attained(1)")],
        vec![("A", "attained(-1)"), ("B", "attained(0,1)")],
        vec![("B", "attained(1,-inf)")],
    ] {
        let i = d.ideal_from_strs(&pairs)?;
        let dual = oracle_dual(&d, &i, bound)?;
        println!(
            "I = {i}: {} dual vectors, oracle dual {}, closed form {}",
            dual.vectors.len(),
            dual.ideal,
            d.vdual(&i)?
        );
        assert_eq!(dual.ideal, d.vdual(&i)?);
        assert_eq!(v_closure_oracle(&d, &i, bound)?, d.v_closure(&i)?);
    }
    Ok(())
}

#[allow(dead_code)]
fn main() {
    run_example().unwrap();
}
