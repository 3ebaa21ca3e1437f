// The stable closure, the spectral closure and the conditions that make
// them agree with the divisorial closure.

use prufer::hlocal::DomainPresentation;
use prufer::semistar::{check_pr2, vbar_closure, vsp_closure};
use prufer::{Level, ValueGroup};

pub fn run_example() -> Result<(), Box<dyn std::error::Error>> {
    let presentations = [
        ("Z and Z", DomainPresentation::hlocal(2, [("A", ValueGroup::z()), ("B", ValueGroup::z())])?),
        ("Q", DomainPresentation::hlocal(2, [("A", ValueGroup::q())])?),
        ("ZxQ", DomainPresentation::hlocal(2, [("A", ValueGroup::lex(Level::Z, Level::Q))])?),
    ];
    for (name, d) in &presentations {
        let r = check_pr2(d)?;
        println!("{name:<8} conditions {:?} over {} ideals", r.values(), r.grid_size);
        assert!(r.mutually_equal());
    }

    let d = &presentations[1].1;
    let m = d.maximal("A")?;
    println!("M^v = {}, M^vbar = {}", d.v_closure(&m)?, vbar_closure(d, &m)?);
    let sp = vsp_closure(d, &m)?;
    println!("M^vsp is the quotient field: {}", sp.is_field());
    Ok(())
}

#[allow(dead_code)]
fn main() {
    run_example().unwrap();
}
