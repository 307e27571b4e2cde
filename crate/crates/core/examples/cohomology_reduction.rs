//! Reducing trivial-homotopy fields to polyvectors.

use igc::parse::{parse_expr, Env};
use igc::{reduce_to_polyvector, ChartSpec, RelativeSpec};

fn main() -> igc::Result<()> {
    let spec = RelativeSpec::free(ChartSpec::new(3, 4)?);
    let env = Env {
        spec: &spec,
        bindings: &Default::default(),
    };
    for src in [
        "cup(d0, d1)",
        "cup(cup(d0, x0*d1), d2)",
        "cup(d0, d0)",
        "field(2, {1}: d0, {0,1}: d1)",
        "compose(d0, d1)",
    ] {
        let nu = parse_expr(src, &env, 1)?.as_kfield(3)?;
        match reduce_to_polyvector(&spec, &nu) {
            Ok(p) => println!("{src:32} ~> {p}"),
            Err(e) => println!("{src:32} !! {e}"),
        }
    }
    Ok(())
}
