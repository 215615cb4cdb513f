//! Exact Gram matrices from the moment recurrence.

use slab::bochner::classify;
use slab::cli::parse_polynomial;
use slab::exactalg::Rational;
use slab::verify::{gram_matrix, moments_upto};

fn main() -> slab::Result<()> {
    for (name, a, b) in [
        ("chebyshev", "1 - x^2", "-x"),
        ("jacobi", "1 - x^2", "-3*x + 1/2"),
        ("confluent", "x", "3 - x"),
    ] {
        let rec = classify(&parse_polynomial(a)?, &parse_polynomial(b)?, &Rational::zero())?;
        let moments = moments_upto(&rec, 8)?;
        println!(
            "{name}: moment ratios {:?}",
            moments.ratios.iter().map(|r| r.to_string()).collect::<Vec<_>>()
        );
        let g = gram_matrix(&rec, 5)?;
        for row in &g.entries {
            println!(
                "  {}",
                row.iter().map(|v| format!("{:>12}", v.to_string())).collect::<String>()
            );
        }
        println!("  diagonal: {}, positive: {}", g.is_diagonal(), g.diagonal_positive());
    }
    Ok(())
}
