// Twisting by a character of small conductor multiplies epsilon by beta(c).

use epsilon_factor::cyclo::RootOfUnity;
use epsilon_factor::epsilon::{deligne_twist, tate_epsilon};
use epsilon_factor::localfield::{AdditiveCharacter, LocalCharacter};

fn run() -> Result<(), Box<dyn std::error::Error>> {
    let psi = AdditiveCharacter::canonical(3)?;
    let alpha = LocalCharacter::new(3, 4, 1, RootOfUnity::one())?;
    for t in [1, 2, 4, 5] {
        let beta = LocalCharacter::new(3, 2, t, RootOfUnity::one())?;
        let product = alpha.mul(&beta)?;
        let direct = tate_epsilon(&product, &psi, None)?;
        let twisted = deligne_twist(&alpha, &beta, &psi)?;
        println!(
            "beta t = {t}: a(alpha beta) = {}, epsilon(alpha beta) = beta(c) epsilon(alpha): {}",
            product.conductor(),
            direct == twisted
        );
        assert!(direct == twisted && product.conductor() == 4);
    }
    Ok(())
}

fn main() {
    if let Err(e) = run() {
        eprintln!("{e}");
        std::process::exit(1);
    }
}
