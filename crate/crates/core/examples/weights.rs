//! Derive weights from the determining relation and inspect their endpoint behaviour.

use slab::cli::parse_polynomial;
use slab::exactalg::Rational;
use slab::weight::{derive_weight, finiteness_at_point, WeightOrder};

fn main() -> slab::Result<()> {
    let cases = [
        ("legendre", "1 - x^2", "-2*x"),
        ("chebyshev", "1 - x^2", "-x"),
        ("laguerre", "x", "1 - x"),
        ("confluent c=5/2", "x", "5/2 - x"),
        ("hermite", "1", "-2*x"),
        ("jacobi", "1 - x^2", "-4*x + 1"),
    ];
    for (name, a, b) in cases {
        let w = derive_weight(&parse_polynomial(a)?, &parse_polynomial(b)?, WeightOrder::Two)?;
        println!("{name:<16} p(x) = {w}");
        println!("{:<16} p'/p = {}", "", w.log_derivative());
        for x0 in [-1, 0, 1] {
            let f = finiteness_at_point(&w, &Rational::from(x0));
            println!(
                "{:<16} at x = {x0:>2}: left {}, right {}",
                "",
                f.left.name(),
                f.right.name()
            );
        }
    }
    Ok(())
}
