//! One-sided limits at a singular point for the local model
//! exp(lambda x^(beta - alpha)) / |x|^alpha, with lambda carrying the sign of h.

use slab::weight::{order1_singular_classify, Sign, SingularPointData};

fn main() -> slab::Result<()> {
    println!(
        "{:>5} {:>5} {:>4}  {:<12} {:<12}",
        "alpha", "beta", "h", "left", "right"
    );
    for alpha_exp in 1..=4 {
        // beta >= alpha leaves the weight regular at the point
        for beta_exp in 0..alpha_exp {
            for h_sign in [Sign::Negative, Sign::Positive] {
                let data = SingularPointData {
                    alpha_exp,
                    beta_exp,
                    h_sign,
                };
                let f = order1_singular_classify(&data)?;
                let h = if h_sign == Sign::Positive { "+" } else { "-" };
                println!(
                    "{alpha_exp:>5} {beta_exp:>5} {h:>4}  {:<12} {:<12}",
                    f.left.name(),
                    f.right.name()
                );
            }
        }
    }
    Ok(())
}
