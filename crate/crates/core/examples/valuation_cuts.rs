// Ideals of a single valuation domain as cuts of its value group.

use prufer::{Cut, Level, ValueGroup};

pub fn run_example() -> Result<(), Box<dyn std::error::Error>> {
    let q = ValueGroup::q();
    let i = Cut::parse(&q, "open(1*sqrt2)")?;
    let inv = i.inverse();
    let trace = i.product(&inv)?;
    println!("I = {i}, I^-1 = {inv}, I I^-1 = {trace}");
    println!("I divisorial: {}, trace divisorial: {}", i.is_divisorial(), trace.is_divisorial());
    assert_eq!(trace, Cut::maximal(&q));

    let zq = ValueGroup::lex(Level::Z, Level::Q);
    let a = Cut::parse(&zq, "open(0,1/2)")?;
    let p = Cut::height_one_prime(&zq)?;
    println!("in {zq}: a = {a} ({:?}), a^v = {}", a.classify(), a.v_closure());
    println!("height-one prime {p}, radical of a: {}", a.radical()?);
    println!("a + P = {}, a ∩ P = {}", a.sum(&p)?, a.intersect(&p)?);
    Ok(())
}

#[allow(dead_code)]
fn main() {
    run_example().unwrap();
}
