// Epsilon modulo p-power roots of unity, and the quadratic sum G(c).

use epsilon_factor::cyclo::{CyclotomicNumber, RootOfUnity};
use epsilon_factor::epsilon::{epsilon_mod_mu_p_infinity, g_of_c};
use epsilon_factor::localfield::{enumerate_characters, AdditiveCharacter, PAdicApprox};

fn run() -> Result<(), Box<dyn std::error::Error>> {
    let psi = AdditiveCharacter::canonical(5)?;
    let g = g_of_c(&PAdicApprox::from_integer(5, 125)?, &psi, 1)?;
    println!("G(125) * sqrt(5) = {}", g.value());
    assert_eq!(g.value().pow(4), CyclotomicNumber::from_integer(1, 25));

    for a in [2, 3] {
        for chi in enumerate_characters(5, a, 1)?.take(4) {
            let cls = epsilon_mod_mu_p_infinity(&chi, &psi)?;
            println!(
                "{chi}: {:?} conductor, epsilon = principal * {}",
                cls.parity, cls.certificate
            );
        }
    }

    let chi = epsilon_factor::localfield::LocalCharacter::new(7, 2, 1, RootOfUnity::one())?;
    let cls = epsilon_mod_mu_p_infinity(&chi, &AdditiveCharacter::canonical(7)?)?;
    assert_eq!(49 % cls.certificate.order(), 0);
    Ok(())
}

fn main() {
    if let Err(e) = run() {
        eprintln!("{e}");
        std::process::exit(1);
    }
}
