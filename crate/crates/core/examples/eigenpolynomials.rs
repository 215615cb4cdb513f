//! Monic polynomial eigenfunctions of the classical operators.

use slab::bochner::classify;
use slab::cli::parse_polynomial;
use slab::exactalg::Rational;

fn main() -> slab::Result<()> {
    for (name, a, b) in [
        ("legendre", "1 - x^2", "-2*x"),
        ("laguerre", "x", "1 - x"),
        ("hermite", "1", "-2*x"),
    ] {
        let rec = classify(&parse_polynomial(a)?, &parse_polynomial(b)?, &Rational::zero())?;
        let op = rec.operator();
        println!("{name}: L = {op}");
        for n in 0..=5 {
            let pair = op.monic_eigenpolynomial(n)?;
            println!(
                "  n = {n}  lambda = {:>4}  P = {}",
                pair.eigenvalue, pair.eigenpolynomial
            );
        }
    }
    Ok(())
}
