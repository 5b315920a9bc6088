// Quadratic Gauss sums over finite fields against their closed form.

use epsilon_factor::finitefield::{gauss_sum, quadratic_gauss_closed_form, FiniteField};

fn run() -> Result<(), Box<dyn std::error::Error>> {
    for (p, s) in [(3, 1), (5, 1), (3, 2), (7, 1), (5, 2), (3, 3)] {
        let field = FiniteField::new(p, s)?;
        let eta = field.quadratic_character();
        let g = gauss_sum(&eta, &field.additive_character())?;
        let closed = quadratic_gauss_closed_form(p, s)?;
        assert_eq!(g, closed);
        assert_eq!(field.sum_of_square_values(), g);
        let (re, im) = g.approx_complex(15);
        println!(
            "q = {:>3}: G(eta, psi) = {g}  ~ {re:+.4} {im:+.4} i",
            field.order()
        );
    }
    Ok(())
}

fn main() {
    if let Err(e) = run() {
        eprintln!("{e}");
        std::process::exit(1);
    }
}
