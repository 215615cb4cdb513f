//! Route a handful of second-order operators through the case analysis.

use slab::bochner::classify;
use slab::cli::parse_polynomial;
use slab::exactalg::Rational;

fn main() -> slab::Result<()> {
    let inputs = [
        ("1 - x^2", "-2*x"),
        ("1 - x^2", "-x"),
        ("1 - x^2", "-3*x + 1/2"),
        ("x", "1 - x"),
        ("x", "x + 2"),
        ("1", "-2*x"),
        ("x^2", "x + 1"),
        ("1 + x^2", "x"),
        ("3 - 2*x - x^2", "-4*x - 4"),
    ];
    for (a, b) in inputs {
        let rec = classify(&parse_polynomial(a)?, &parse_polynomial(b)?, &Rational::zero())?;
        println!(
            "a = {a:<14} b = {b:<12} {:<12} {}",
            rec.case_tag.name(),
            rec.mode.name()
        );
        println!("    interval {}", rec.interval);
        if let Some(w) = &rec.weight {
            println!("    weight   {w}");
        }
        println!(
            "    lambda_n for n = 0..5: {:?}",
            (0..6).map(|n| rec.eigenvalues.eval(n).to_string()).collect::<Vec<_>>()
        );
        for c in &rec.constraints {
            println!(
                "    {} [{}]",
                c.description,
                if c.satisfied { "holds" } else { "fails" }
            );
        }
        for note in &rec.notes {
            println!("    note: {note}");
        }
    }
    Ok(())
}
