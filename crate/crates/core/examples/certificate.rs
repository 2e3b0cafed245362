// A noisy PR box: γ, the certificate functional, and an independent check.

use lqhv::behavior::uniform_behavior;
use lqhv::nonlocality::verify_certificate;
use lqhv::{gamma, mix, pr_box, ratio, Entries, Scenario, SolveMode};

pub fn run_example() -> Result<(), Box<dyn std::error::Error>> {
    let noisy = mix(
        &[pr_box(), uniform_behavior(&Scenario::chsh())],
        &Entries::Exact(vec![ratio(3, 4), ratio(1, 4)]),
    )?;
    let r = gamma(&noisy, SolveMode::Exact)?;
    println!("gamma = {}", r.gamma);
    for s in 0..4 {
        let settings = noisy.scenario().settings_tuple(s);
        println!("  f{settings:?} = {:?}", r.certificate.table(&settings)?.to_f64_vec());
    }
    let report = verify_certificate(&noisy, &r.certificate, &r.gamma, 0.0)?;
    println!("B_lhv = {}, value = {}, ratio = {}", report.b_lhv, report.value, report.ratio);
    Ok(())
}

#[allow(dead_code)]
fn main() {
    run_example().expect("certificate");
}
