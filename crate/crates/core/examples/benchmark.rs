// Term counts and timings of the full sum against the reduced sum.

use epsilon_factor::cli::cmd_bench;

fn run() -> Result<(), Box<dyn std::error::Error>> {
    let report = cmd_bench(5, 6, 1, &[0, 1, 2, 3], 3)?;
    println!("   m  full terms  reduced terms   full us  reduced us");
    for row in &report.rows {
        println!(
            "{:>4} {:>11} {:>14} {:>9.1} {:>11.1}",
            row.m,
            row.term_counts.naive,
            row.term_counts.reduced,
            row.timings.naive_us,
            row.timings.reduced_us
        );
        assert!(row.epsilon_equal);
    }
    Ok(())
}

fn main() {
    if let Err(e) = run() {
        eprintln!("{e}");
        std::process::exit(1);
    }
}
