//! Drive the batch runner from an inline config and print the CSV it would write.

use furstenberg_fp::harness::{parse_config, run};

fn main() -> furstenberg_fp::Result<()> {
    let cfg = parse_config(
        r#"{
            "command": "construct",
            "s": ["1/2", 1],
            "t": ["1", "3/2", 2],
            "n": 2, "k": 1,
            "p": [29, 61],
            "upper_constant": 16,
            "jobs": 4
        }"#,
    )?;
    let report = run(&cfg)?;
    print!("{}", String::from_utf8_lossy(&report.csv_bytes()?));
    let s = report.summary();
    println!("{} cases, {} passed, {} failed", s.cases, s.passes, s.fails);
    Ok(())
}
