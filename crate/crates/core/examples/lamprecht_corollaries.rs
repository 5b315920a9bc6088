// Closed forms for even and odd conductor.

use epsilon_factor::cyclo::RootOfUnity;
use epsilon_factor::epsilon::{lamprecht_even, lamprecht_odd_with_terms, solve_c, tate_epsilon};
use epsilon_factor::localfield::{AdditiveCharacter, LocalCharacter};

fn run() -> Result<(), Box<dyn std::error::Error>> {
    let psi = AdditiveCharacter::canonical(5)?;

    let even = LocalCharacter::new(5, 2, 1, RootOfUnity::one())?;
    let c = solve_c(&even, &psi, 1)?;
    let eps = lamprecht_even(&even, &psi)?;
    println!(
        "a = 2: c = 5^{} * {}, epsilon = chi(c) psi(1/c) = {eps}",
        c.valuation, c.unit
    );
    assert_eq!(eps, tate_epsilon(&even, &psi, None)?);

    let odd = LocalCharacter::new(5, 3, 7, RootOfUnity::one())?;
    let (eps, terms) = lamprecht_odd_with_terms(&odd, &psi)?;
    println!("a = 3: {terms}-term formula, epsilon ~ {:?}", eps.approx());
    assert_eq!(eps, tate_epsilon(&odd, &psi, None)?);
    Ok(())
}

fn main() {
    if let Err(e) = run() {
        eprintln!("{e}");
        std::process::exit(1);
    }
}
