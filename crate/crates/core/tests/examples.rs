macro_rules! example {
    ($module:ident, $file:literal) => {
        #[allow(dead_code)]
        mod $module {
            include!(concat!(env!("CARGO_MANIFEST_DIR"), "/examples/", $file));
        }

        #[test]
        fn $module() {
            $module::run_example().expect($file);
        }
    };
}

example!(pr_box_gamma, "pr_box_gamma.rs");
example!(lhv_constants, "lhv_constants.rs");
example!(correlation_bound, "correlation_bound.rs");
example!(tsirelson_box, "tsirelson_box.rs");
example!(nonsignaling_analogs, "nonsignaling_analogs.rs");
example!(zg_quantum_samples, "zg_quantum_samples.rs");
example!(certificate, "certificate.rs");
example!(lp_solver, "lp_solver.rs");
example!(family_upsilon, "family_upsilon.rs");
example!(documents, "documents.rs");
