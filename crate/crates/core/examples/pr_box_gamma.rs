// γ of the PR box in exact arithmetic, with its signed witness and dual certificate.
//
// ```bash
// cargo run --example pr_box_gamma
// ```

use lqhv::nonlocality::verify_certificate;
use lqhv::{gamma, pr_box, SolveMode};

pub fn run_example() -> Result<(), Box<dyn std::error::Error>> {
    let pr = pr_box();
    let r = gamma(&pr, SolveMode::Exact)?;
    println!("gamma = {}", r.gamma);
    println!("witness total variation = {}", r.witness.total_variation());

    let (plus, minus) = r.witness.jordan();
    println!("positive mass {:?}", plus.to_f64_vec().iter().sum::<f64>());
    println!("negative mass {:?}", minus.to_f64_vec().iter().sum::<f64>());

    let check = verify_certificate(&pr, &r.certificate, &r.gamma, 0.0)?;
    println!(
        "certificate: value {} with B_lhv = {} (ratio {}, matches: {})",
        check.value, check.b_lhv, check.ratio, check.matches_gamma
    );
    assert!(check.matches_gamma);
    Ok(())
}

#[allow(dead_code)]
fn main() {
    run_example().expect("pr_box_gamma");
}
