// Factoring ideals of an h-local Prüfer domain as `I^v` times maximal ideals.

use prufer::format::PresentationFile;

pub fn run_example() -> Result<(), Box<dyn std::error::Error>> {
    let text = include_str!("../data/hlocal.pres");
    let file = PresentationFile::parse(text)?;
    let f = file.finite().ok_or("expected a finite presentation")?;
    let d = &f.domain;
    println!("nondivisorial maxima: {:?}", d.nondivisorial_maxima());
    for (name, i) in &f.ideals {
        let fac = d.strong_factorize(i)?;
        println!("{name} = ({}) * {:?}  certified: {}", fac.divisorial_part, fac.factors, fac.certificate.holds());
        assert!(fac.certificate.holds());
    }
    Ok(())
}

#[allow(dead_code)]
fn main() {
    run_example().unwrap();
}
