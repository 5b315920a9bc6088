// The full epsilon sum against the reduced sum at every admissible depth.

use epsilon_factor::cyclo::RootOfUnity;
use epsilon_factor::epsilon::{lamprecht_tate_epsilon, reduction_identity, tate_epsilon};
use epsilon_factor::localfield::{AdditiveCharacter, LocalCharacter};

fn run() -> Result<(), Box<dyn std::error::Error>> {
    let psi = AdditiveCharacter::canonical(3)?;
    let chi = LocalCharacter::new(3, 4, 5, RootOfUnity::one())?;
    let full = tate_epsilon(&chi, &psi, None)?;
    println!("{chi}\nfull sum: epsilon = {full}");
    for m in 0..=2 {
        let check = reduction_identity(&chi, &psi, m)?;
        let reduced = lamprecht_tate_epsilon(&chi, &psi, m)?;
        println!(
            "m = {m}: c = 3^{} * {}, {} terms vs {}, identity {}, epsilon equal {}",
            check.c.valuation,
            check.c.unit,
            check.reduced.terms,
            check.full.terms,
            check.holds(),
            reduced == full
        );
        assert!(check.holds() && reduced == full);
    }
    Ok(())
}

fn main() {
    if let Err(e) = run() {
        eprintln!("{e}");
        std::process::exit(1);
    }
}
