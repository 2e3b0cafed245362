// Analogs of Bell inequalities: the range a functional can take once the
// nonlocality parameter of the class is known.

use lqhv::quantum::bound_projective;
use lqhv::{analog_bounds, builtin, ratio};

pub fn run_example() -> Result<(), Box<dyn std::error::Error>> {
    let sqrt2 = 2f64.sqrt();
    let ch = analog_bounds(-1.0, 0.0, sqrt2)?;
    println!("CH with Υ = √2: [{:.9}, {:.9}]", ch.lower, ch.upper);

    // exact arithmetic when Υ is rational
    let pr = analog_bounds(ratio(-1, 1), ratio(0, 1), ratio(2, 1))?;
    println!("CH with Υ = 2 (all nonsignaling boxes): [{}, {}]", pr.lower, pr.upper);

    // quantum analog for ZG from its LHV constants and the projective bound
    for d in [2usize, 3, 4, 9] {
        let lhv = builtin("ZG", Some(d))?.lhv_bounds()?;
        let u = bound_projective(d, 2, 2)?;
        let r = analog_bounds(lhv.inf.to_f64(), lhv.sup.to_f64(), u)?;
        println!("ZG({d}): LHV [{}, {}], Υ ≤ {u:.4} → [{:.4}, {:.4}]", lhv.inf, lhv.sup, r.lower, r.upper);
    }
    Ok(())
}

#[allow(dead_code)]
fn main() {
    run_example().expect("nonsignaling_analogs");
}
