// Exact arithmetic in cyclotomic fields.

use epsilon_factor::cyclo::{CyclotomicNumber, RootOfUnity};

fn run() -> Result<(), Box<dyn std::error::Error>> {
    let z3 = CyclotomicNumber::from_root(&RootOfUnity::new(3, 1)?);
    let d = &z3 - &z3.pow(2);
    let square = &d * &d;
    println!("(zeta_3 - zeta_3^2)^2 = {square}");
    assert_eq!(square, CyclotomicNumber::from_integer(1, -3));

    // elements of different levels meet in Q(zeta_lcm)
    let i = CyclotomicNumber::from_root(&RootOfUnity::new(4, 1)?);
    let mixed = &i + &z3;
    println!("i + zeta_3 lives at level {}: {mixed}", mixed.level());
    assert_eq!(mixed.level(), 12);

    let w = CyclotomicNumber::from_root(&RootOfUnity::new(5, 3)?);
    let r = (-w).is_root_of_unity().ok_or("not a root of unity")?;
    println!("-zeta_5^3 = {r}");
    assert_eq!((r.order(), r.exponent()), (10, 1));

    let (re, im) = z3.approx_complex(15);
    println!("zeta_3 ~ {re:.6} + {im:.6} i");
    Ok(())
}

fn main() {
    if let Err(e) = run() {
        eprintln!("{e}");
        std::process::exit(1);
    }
}
