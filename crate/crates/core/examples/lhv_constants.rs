// Tight LHV constants by enumerating deterministic strategies.

use lqhv::{builtin, ratio, BellFunctional, Scenario};

pub fn run_example() -> Result<(), Box<dyn std::error::Error>> {
    for name in ["CH", "CHSH"] {
        let b = builtin(name, None)?.lhv_bounds()?;
        println!("{name:>5}: B_inf = {}, B_sup = {}, B_lhv = {}", b.inf, b.sup, b.lhv());
    }
    for d in 2..=5 {
        let b = builtin("ZG", Some(d))?.lhv_bounds()?;
        println!("ZG({d}): B_inf = {}, B_sup = {}  argmax {:?}", b.inf, b.sup, b.argmax.outcomes);
    }

    // A hand-written functional: P(a = b | 0, 0) on a 2-setting, 3-outcome scenario.
    let sc = Scenario::bipartite(2, 3)?;
    let mut tables = vec![vec![ratio(0, 1); 9]; 4];
    for k in 0..3 {
        tables[0][k * 3 + k] = ratio(1, 1);
    }
    let f = BellFunctional::new(&sc, tables)?;
    let b = f.lhv_bounds()?;
    println!("P(a = b | 0, 0): [{}, {}]", b.inf, b.sup);
    Ok(())
}

#[allow(dead_code)]
fn main() {
    run_example().expect("lhv_constants");
}
