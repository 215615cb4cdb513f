//! Floating-point cross-check of the exact inner products, plus the decay of
//! the boundary form at an infinite endpoint.

use slab::bochner::classify;
use slab::cli::parse_polynomial;
use slab::exactalg::Rational;
use slab::numcheck::{boundary_limit, quad_inner_product};
use slab::verify::{eigenpolynomials, gram_matrix};
use slab::weight::Direction;

fn main() -> slab::Result<()> {
    let rec = classify(&parse_polynomial("x")?, &parse_polynomial("1 - x")?, &Rational::zero())?;
    let polys = eigenpolynomials(&rec, 4)?;
    let exact = gram_matrix(&rec, 4)?;
    for m in 0..=4 {
        for n in m..=4 {
            let r = quad_inner_product(&rec, &polys[m], &polys[n], 1e-10)?;
            println!(
                "<P{m}, P{n}>  exact {:>8}  quad {:>+.12e}  est. error {:.1e}  evals {}",
                exact.entries[m][n].to_string(),
                r.value,
                r.error_estimate,
                r.evaluations
            );
        }
    }
    let trend = boundary_limit(&rec, 2, 3, Direction::PosInfinity, 8)?;
    for (x, v) in &trend.samples {
        println!("x = {x:>8.3}  |p a (u y' - u' y)| = {v:.3e}");
    }
    println!("trend: {}", trend.trend.name());
    Ok(())
}
