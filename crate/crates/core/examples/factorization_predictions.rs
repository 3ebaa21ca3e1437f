// Reading factorizations of sums, products, intersections, radicals and
// traces off the factorizations of their inputs.

use prufer::format::PresentationFile;
use prufer::PropKind;

pub fn run_example() -> Result<(), Box<dyn std::error::Error>> {
    let file = PresentationFile::parse(include_str!("../data/hlocal.pres"))?;
    let f = file.finite().ok_or("expected a finite presentation")?;
    let d = &f.domain;
    let (i, j) = (f.ideal("I")?, f.ideal("J")?);
    for kind in [PropKind::Product, PropKind::Intersection, PropKind::Sum, PropKind::Radical, PropKind::Trace] {
        let other = kind.is_binary().then_some(j);
        let predicted = d.predict_factorization(kind, i, other)?;
        let direct = d.strong_factorize(&d.direct(kind, i, other)?)?;
        println!("{:<12} factors {:?}, agrees: {}", kind.name(), predicted.factors, predicted.same_as(&direct));
        assert!(predicted.same_as(&direct));
    }
    let closure_product = d.predict_closure_product(i, j)?;
    println!("(IJ)^v = {}", closure_product.divisorial_part);
    Ok(())
}

#[allow(dead_code)]
fn main() {
    run_example().unwrap();
}
