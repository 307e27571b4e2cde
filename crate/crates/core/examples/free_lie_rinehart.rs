//! Brackets in the free Lie-Rinehart algebra over a chart, and its Lyndon basis.

use igc::{lyndon_basis, ChartSpec, FreeLRElem, Poly, RelativeSpec, VField};

fn main() -> igc::Result<()> {
    let spec = RelativeSpec::free(ChartSpec::new(2, 4)?);
    let d0 = FreeLRElem::generator(2, 0);
    let x0d1 = FreeLRElem::from_vfield(&VField::coord(2, 1).scale_poly(&Poly::var(2, 0)));

    let b = spec.bracket(&d0, &x0d1)?;
    println!("F[d0, x0*d1]          = {b}");
    println!("anchor                = {}", b.anchor());
    println!("semidirect [d0,x0*d1] = {}", spec.lie_bracket(&d0, &x0d1)?);
    println!("F[d0, F[d0, x0*d1]]   = {}", spec.bracket(&d0, &b)?);

    for d in 1..=4 {
        let words: Vec<String> = lyndon_basis(2, d).iter().map(|w| w.to_string()).collect();
        println!("degree {d}: {} words  {}", words.len(), words.join(" "));
    }
    Ok(())
}
