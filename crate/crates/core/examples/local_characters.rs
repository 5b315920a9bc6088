// Characters of Q_p^x: unit groups, discrete logs, conductors.

use epsilon_factor::cyclo::RootOfUnity;
use epsilon_factor::localfield::{
    enumerate_characters, AdditiveCharacter, LocalCharacter, PAdicApprox, UnitGroup,
};

fn run() -> Result<(), Box<dyn std::error::Error>> {
    let units = UnitGroup::shared(5, 2)?;
    println!(
        "(Z/25)^x is cyclic of order {} generated by {}",
        units.order(),
        units.generator()
    );
    println!("dlog(6) = {}", units.dlog(6)?);

    let chi = LocalCharacter::new(5, 2, 1, RootOfUnity::one())?;
    println!("{chi}: chi(6) = {}", chi.eval_unit(6)?);

    // chi^5 is trivial on 1 + 5Z_5, so its conductor drops to 1
    let mut power = chi.clone();
    for _ in 0..4 {
        power = power.mul(&chi)?;
    }
    println!("chi^5 has conductor {}", power.conductor());
    assert_eq!(power.conductor(), 1);

    for a in 1..=3 {
        println!(
            "conductor exactly {a}: {} characters with chi(5) = 1",
            enumerate_characters(5, a, 1)?.count()
        );
    }

    let psi = AdditiveCharacter::canonical(5)?;
    let x = PAdicApprox::from_fraction(5, 3, 25)?;
    println!("psi(3/25) = {}", psi.eval(&x)?);
    Ok(())
}

fn main() {
    if let Err(e) = run() {
        eprintln!("{e}");
        std::process::exit(1);
    }
}
