//! Partial fractions over rational roots, the step behind every closed-form weight.

use slab::cli::parse_polynomial;
use slab::exactalg::{partial_fractions, Polynomial, RationalFunction};

fn main() -> slab::Result<()> {
    for (num, den) in [
        ("-2*x", "1 - x^2"),
        ("1 - x", "x"),
        ("x^3 + 1", "x^2*(x - 2)"),
        ("1", "(x - 1)^3*(x + 1/2)"),
    ] {
        let r = RationalFunction::new(parse_polynomial(num)?, parse_polynomial(den)?)?;
        let pf = partial_fractions(&r)?;
        println!("{r}");
        println!("  polynomial part {}", pf.poly_part);
        for t in &pf.pole_terms {
            println!(
                "  {} / ({})^{}",
                t.coefficient,
                Polynomial::linear_factor(&t.root),
                t.order
            );
        }
        assert_eq!(pf.reassemble(), r);
    }
    let irreducible = RationalFunction::new(parse_polynomial("x")?, parse_polynomial("1 + x^2")?)?;
    if let Err(e) = partial_fractions(&irreducible) {
        println!("{irreducible}: {e}");
    }
    Ok(())
}
