// Writing and reading the JSON documents the command-line tool consumes.

use lqhv::document::Document;
use lqhv::quantum::chsh_optimal_model;
use lqhv::{builtin, pr_box};

pub fn run_example() -> Result<(), Box<dyn std::error::Error>> {
    let dir = tempfile::tempdir()?;
    let pr = dir.path().join("pr.json");
    Document::Behavior(pr_box()).save(&pr)?;
    println!("{}", std::fs::read_to_string(&pr)?);

    let model = dir.path().join("model.json");
    Document::QuantumModel(chsh_optimal_model()).save(&model)?;
    Document::Functional(builtin("CH", None)?).save(&dir.path().join("ch.json"))?;
    Document::Family(vec!["pr.json".into()]).save(&dir.path().join("family.json"))?;

    for name in ["pr.json", "model.json", "ch.json", "family.json"] {
        println!("{name}: kind {}", Document::load(&dir.path().join(name))?.kind());
    }
    Ok(())
}

#[allow(dead_code)]
fn main() {
    run_example().expect("documents");
}
