// The singlet with CHSH-optimal measurements: Born behavior, CHSH and CH values,
// γ in floating point, and the closed-form projective bound.

use lqhv::quantum::{bound_projective, chsh_optimal_model};
use lqhv::{builtin, gamma, CorrelationFunctional, SolveMode};

pub fn run_example() -> Result<(), Box<dyn std::error::Error>> {
    let model = chsh_optimal_model();
    let b = model.born_behavior()?;
    let chsh = CorrelationFunctional::chsh().lift(None)?.evaluate(&b)?.to_f64();
    let ch = builtin("CH", None)?.evaluate(&b)?.to_f64();
    let g = gamma(&b, SolveMode::float())?.gamma.to_f64();
    let bound = bound_projective(2, 2, 2)?;
    println!("CHSH = {chsh:.9} (2√2 = {:.9})", 2.0 * 2f64.sqrt());
    println!("CH   = {ch:.9}");
    println!("gamma = {g:.9}, projective bound = {bound:.9}");
    Ok(())
}

#[allow(dead_code)]
fn main() {
    run_example().expect("tsirelson_box");
}
