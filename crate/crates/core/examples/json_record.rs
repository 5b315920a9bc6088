// A serialized epsilon record and its exact round trip.

use epsilon_factor::cli::{cmd_epsilon, CharSpec, ResultRecord};

fn run() -> Result<(), Box<dyn std::error::Error>> {
    let spec = CharSpec::new(5, 2, 1);
    let record = cmd_epsilon(&spec, Some(1), false)?;
    let json = serde_json::to_string_pretty(&record)?;
    println!("{json}");

    let parsed: ResultRecord = serde_json::from_str(&json)?;
    assert_eq!(parsed.epsilon_value()?, record.epsilon_value()?);
    assert!(parsed.recheck()?);
    Ok(())
}

fn main() {
    if let Err(e) = run() {
        eprintln!("{e}");
        std::process::exit(1);
    }
}
