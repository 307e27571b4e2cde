//! Homotopy maps and the trivial-homotopy test.

use igc::parse::{parse_expr, Env};
use igc::{homotopy, is_trivial_homotopy, ChartSpec, RelativeSpec};

fn main() -> igc::Result<()> {
    let spec = RelativeSpec::free(ChartSpec::new(2, 4)?);
    let env = Env {
        spec: &spec,
        bindings: &Default::default(),
    };
    for src in ["field(2, {0}: d0, {1}: x0*d1)", "cup(d0, x0*d1)", "compose(d0, x0*d1)"] {
        let nu = parse_expr(src, &env, 1)?.as_kfield(2)?;
        println!("{src}");
        println!("  h01     = {}", homotopy(&spec, &nu, 0, 1)?);
        match is_trivial_homotopy(&spec, &nu)? {
            None => println!("  trivial"),
            Some(w) => println!("  not trivial, witness {w}"),
        }
    }
    Ok(())
}
