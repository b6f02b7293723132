use skewforge::suites::{run_suite, SuiteOptions};

fn main() {
    for (name, n) in [
        ("gl-relations", Some(3)),
        ("oracle-crosscheck", Some(3)),
        ("support-law", None),
        ("hecke", None),
        ("center", None),
        ("gwa", None),
        ("torus", None),
    ] {
        let t0 = std::time::Instant::now();
        let rep = run_suite(name, &SuiteOptions { n, seed: 7 }).unwrap();
        println!(
            "{name}{}: {} ms, passed={}",
            n.map(|n| format!("(n={n})")).unwrap_or_default(),
            t0.elapsed().as_millis(),
            rep.passed()
        );
        if !rep.passed() {
            println!("{}", rep.render_text());
        }
    }
}
