//! The fourth-order family with leading coefficient (1 - x^2)^2.

use slab::bochner::Interval;
use slab::exactalg::{Polynomial, Rational};
use slab::highorder::{boundary_difference_vanishes, example_order4, fourth_order_family, printed_example_eigenvalue};

fn main() -> slab::Result<()> {
    let (sys, formula) = example_order4()?;
    let op = sys.operator();
    println!("L = {op}");
    for c in &sys.constraints {
        println!("{}: residual {}", c.name, c.residual);
    }
    for n in 0..=6u64 {
        println!(
            "n = {n}  operator {:>6}  printed closed form {:>6}",
            formula.eval(n),
            printed_example_eigenvalue(n)
        );
    }
    let cube = Polynomial::monomial(Rational::one(), 3);
    println!("L(x^3) = {}", op.apply(&cube));

    let iv = Interval::closed(Rational::from(-1), Rational::one())?;
    let check = boundary_difference_vanishes(&sys.boundary, &iv, 8)?;
    println!(
        "a2 = 8: boundary difference vanishes on {} pairs: {}",
        check.pairs_checked, check.vanishes
    );
    let even = fourth_order_family(&Polynomial::from_ints(&[0, 0, 1]))?;
    let check = boundary_difference_vanishes(&even.boundary, &iv, 8)?;
    if let Some(w) = check.witness {
        println!(
            "a2 = x^2: u = x^{}, y = x^{} gives difference {}",
            w.u_degree, w.y_degree, w.difference
        );
    }
    Ok(())
}
