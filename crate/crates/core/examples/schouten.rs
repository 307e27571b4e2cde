//! Wedge products and Schouten brackets of polyvectors.

use igc::{Poly, Polyvector, VField};

fn main() -> igc::Result<()> {
    let x = |i| Poly::var(3, i);
    let euler = Polyvector::from_field(&VField::new(vec![x(0), x(1), x(2)])?);
    let pi = Polyvector::monomial(3, &[0, 1], x(2))?;
    let d2 = Polyvector::from_field(&VField::coord(3, 2));

    println!("E          = {euler}   (degree {})", euler.degree()?);
    println!("pi         = {pi}   (degree {})", pi.degree()?);
    println!("pi ^ d2    = {}", pi.wedge(&d2)?);
    println!("[E, pi]    = {}", euler.schouten(&pi)?);
    println!("[pi, pi]   = {}", pi.schouten(&pi)?);
    println!("[d2, pi]   = {}", d2.schouten(&pi)?);
    Ok(())
}
