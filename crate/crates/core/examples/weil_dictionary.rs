//! A 2-field as a Weil algebra morphism and back.

use igc::oracle::Sampler;
use igc::parse::{parse_expr, Env};
use igc::{kfield_to_weil, weil_to_kfield, ChartSpec, Poly, RelativeSpec};

fn main() -> igc::Result<()> {
    let spec = RelativeSpec::free(ChartSpec::new(2, 4)?);
    let env = Env {
        spec: &spec,
        bindings: &Default::default(),
    };
    let nu = parse_expr("field(2, {0}: d0, {1}: x0*d1, {0,1}: x1*d0)", &env, 1)?.as_kfield(2)?;
    println!("nu          = {nu}");

    let morphism = kfield_to_weil(&nu)?;
    for (i, img) in morphism.coordinate_images().iter().enumerate() {
        println!("x{i}  |->  {img}");
    }
    let f = &Poly::var(2, 0) * &Poly::var(2, 1);
    println!("x0*x1 |->  {}", morphism.image(&f));

    let back = weil_to_kfield(&morphism);
    println!("decomposed  = {back}");
    assert_eq!(back, nu);

    let mut sampler = Sampler::new(3);
    let random = sampler.classical_kfield(3, 2, 0.5);
    assert_eq!(weil_to_kfield(&kfield_to_weil(&random)?), random);
    println!("random 3-field roundtrips: {random}");
    Ok(())
}
