// Υ of a finite family, and γ after deleting a measurement setting.

use lqhv::behavior::{pr_type_box, uniform_behavior};
use lqhv::{gamma, mix, ratio, upsilon_family, Entries, Scenario, SolveMode};

pub fn run_example() -> Result<(), Box<dyn std::error::Error>> {
    let white = uniform_behavior(&Scenario::chsh());
    let family: Vec<_> = [1, 2, 3, 4]
        .iter()
        .map(|&k| mix(&[pr_type_box(0, 1, 0), white.clone()], &Entries::Exact(vec![ratio(k, 4), ratio(4 - k, 4)])))
        .collect::<lqhv::Result<_>>()?;
    let r = upsilon_family(&family, SolveMode::Exact)?;
    for (i, g) in r.gammas.iter().enumerate() {
        println!("member {i}: gamma = {g}");
    }
    println!("upsilon = {} (member {})", r.upsilon, r.argmax);

    let reduced = family[3].drop_setting(1, 0)?;
    println!("gamma after Bob loses setting 0: {}", gamma(&reduced, SolveMode::Exact)?.gamma);
    Ok(())
}

#[allow(dead_code)]
fn main() {
    run_example().expect("family_upsilon");
}
