// Parsing presentation files and writing them back in canonical form.

use prufer::format::PresentationFile;

pub fn run_example() -> Result<(), Box<dyn std::error::Error>> {
    for text in [include_str!("../data/sqrt2.pres"), include_str!("../data/nofac.pres")] {
        let file = PresentationFile::parse(text)?;
        let canonical = file.to_string();
        assert_eq!(PresentationFile::parse(&canonical)?, file);
        print!("{canonical}");
        if let Some(f) = file.family() {
            for (name, ideal) in &f.ideals {
                println!("  {name}: {}", ideal.profile(&f.presentation)?);
            }
        }
        println!();
    }
    match PresentationFile::parse("kind finite\nslot M Z\nideal I M=opn(1)\n") {
        Err(e) => println!("rejected: {e}"),
        Ok(_) => unreachable!(),
    }
    Ok(())
}

#[allow(dead_code)]
fn main() {
    run_example().unwrap();
}
