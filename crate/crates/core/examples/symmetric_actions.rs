//! The two symmetric group actions on decomposed k-fields.

use igc::parse::{parse_expr, Env};
use igc::{act, ChartSpec, Flavor, RelativeSpec};

fn main() -> igc::Result<()> {
    let spec = RelativeSpec::free(ChartSpec::new(2, 6)?);
    let env = Env {
        spec: &spec,
        bindings: &Default::default(),
    };
    let nu = parse_expr("field(3, {0}: d0, {1}: x0*d1, {2}: x1*d0, {0,2}: d1)", &env, 1)?.as_kfield(2)?;
    println!("nu = {nu}");
    for flavor in [Flavor::Lie, Flavor::Free] {
        println!("[{flavor}]");
        for word in [vec![0], vec![1], vec![0, 1, 0], vec![1, 0, 1]] {
            println!("  {word:?}: {}", act(&spec, &word, &nu, flavor)?);
        }
        assert_eq!(act(&spec, &[0, 0], &nu, flavor)?, nu);
    }
    Ok(())
}
