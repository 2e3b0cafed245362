// The simplex solver on its own: exact and float runs, duals, and the text dump.

use lqhv::lp::{LinearProgram, SolveOptions};
use lqhv::{ratio, Rational};

pub fn run_example() -> Result<(), Box<dyn std::error::Error>> {
    let q = |v: &[i64]| v.iter().map(|&a| ratio(a, 1)).collect::<Vec<Rational>>();
    // min 2x + 3y + z  s.t.  x + y + z = 4,  x - y = 1,  x, y, z ≥ 0
    let lp = LinearProgram::new(q(&[2, 3, 1]), vec![q(&[1, 1, 1]), q(&[1, -1, 0])], q(&[4, 1]))?;
    let sol = lp.solve()?;
    println!("status {:?}, objective {}", sol.status, sol.objective);
    println!("x = {:?}", sol.x.iter().map(|v| v.to_string()).collect::<Vec<_>>());
    println!("y = {:?}", sol.y.iter().map(|v| v.to_string()).collect::<Vec<_>>());
    println!("verified: {}", lp.verify(&sol, 0.0).passed());

    let float = LinearProgram::<f64>::from_exact(&lp);
    let fsol = float.solve_with(SolveOptions { tolerance: 1e-9, presolve: true })?;
    println!("float objective {}", fsol.objective);

    print!("{}", lp.to_text());
    Ok(())
}

#[allow(dead_code)]
fn main() {
    run_example().expect("lp_solver");
}
