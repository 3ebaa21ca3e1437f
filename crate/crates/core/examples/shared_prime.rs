// Without h-locality, an ideal can be divisorial at every maximal ideal and
// still fail to be divisorial.

use prufer::format::PresentationFile;
use prufer::oracle::{v_closure_oracle, DEFAULT_BOUND};
use prufer::suite::find_local_nondivisorial_witness;

pub fn run_example() -> Result<(), Box<dyn std::error::Error>> {
    let file = PresentationFile::parse(include_str!("../data/shared.pres"))?;
    let f = file.finite().ok_or("expected a finite presentation")?;
    let d = &f.domain;
    println!("h-local: {}", d.is_hlocal());
    let j = f.ideal("J")?;
    let jv = v_closure_oracle(d, j, DEFAULT_BOUND)?;
    println!("J = {j}\nlocally divisorial: {}\nJ^v = {jv}", d.is_locally_divisorial(j));
    assert_ne!(*j, jv);

    let w = find_local_nondivisorial_witness(d, DEFAULT_BOUND)?.ok_or("no witness")?;
    println!("witness from contracting a localization: {w}");
    Ok(())
}

#[allow(dead_code)]
fn main() {
    run_example().unwrap();
}
