// Correlation functionals `Σ α_s E(s)` and their LHV bound, compared with the
// lifted full-probability functional.

use lqhv::{ratio, CorrelationFunctional, Entries, Scenario};

pub fn run_example() -> Result<(), Box<dyn std::error::Error>> {
    let chsh = CorrelationFunctional::chsh();
    println!("CHSH correlation bound = {}", chsh.bound()?);

    // Mermin: E(000) - E(011) - E(101) - E(110)
    let sc = Scenario::new(3, vec![2; 3], vec![2; 3])?;
    let mut alpha = vec![ratio(0, 1); 8];
    alpha[0] = ratio(1, 1);
    for t in [3, 5, 6] {
        alpha[t] = ratio(-1, 1);
    }
    let mermin = CorrelationFunctional::new(sc, Entries::Exact(alpha))?;
    let lifted = mermin.lift(None)?.lhv_bounds()?;
    println!("Mermin bound = {}, lifted range [{}, {}]", mermin.bound()?, lifted.inf, lifted.sup);

    // The correlation part of a full functional recovers the α it was lifted from.
    let back = chsh.lift(None)?.correlation_part()?;
    println!("recovered CHSH α = {:?}", back.alpha().to_f64_vec());
    Ok(())
}

#[allow(dead_code)]
fn main() {
    run_example().expect("correlation_bound");
}
