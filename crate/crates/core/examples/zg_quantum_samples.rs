// ZG values of seeded random projective qudit models.

use lqhv::quantum::random_model;
use lqhv::{builtin, Scenario};

pub fn run_example() -> Result<(), Box<dyn std::error::Error>> {
    for d in [3usize, 4] {
        let sc = Scenario::bipartite(2, d)?;
        let zg = builtin("ZG", Some(d))?;
        let values: Vec<f64> = (0..10)
            .map(|seed| {
                let b = random_model(&sc, seed, true)?.born_behavior()?;
                Ok(zg.evaluate(&b)?.to_f64())
            })
            .collect::<lqhv::Result<_>>()?;
        let lo = values.iter().copied().fold(f64::INFINITY, f64::min);
        let hi = values.iter().copied().fold(f64::NEG_INFINITY, f64::max);
        println!("d = {d}: ZG over 10 random models in [{lo:.4}, {hi:.4}]");
    }
    Ok(())
}

#[allow(dead_code)]
fn main() {
    run_example().expect("zg_quantum_samples");
}
