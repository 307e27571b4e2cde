//! Relative Lie-Rinehart algebras and the low-degree quotient check.

use igc::oracle::oracle_quotient_lowdegree;
use igc::{ChartSpec, FreeLRElem, RelativeSpec};

fn main() -> igc::Result<()> {
    let chart = ChartSpec::new(2, 4)?;
    for vertical in [vec![], vec![1], vec![0, 1]] {
        let spec = RelativeSpec::new(chart, vertical.clone())?;
        let (d0, d1) = (FreeLRElem::generator(2, 0), FreeLRElem::generator(2, 1));
        println!("vertical {vertical:?}");
        println!("  F[d0, d1] = {}", spec.bracket(&d0, &d1)?);
        for d in 1..=2 {
            let q = oracle_quotient_lowdegree(&spec, d)?;
            println!(
                "  degree <= {d}: rank {}, top slice {}  {}",
                q.rank, q.slice_rank, q.report
            );
        }
    }
    Ok(())
}
