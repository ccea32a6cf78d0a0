mod common;

use common::{fixture, segreta};

fn strip_timing(s: &str) -> String {
    s.lines()
        .filter(|l| !l.trim_start().starts_with("\"timing_ms\""))
        .collect::<Vec<_>>()
        .join("\n")
}

#[test]
fn identical_argv_gives_identical_json() {
    let cases: Vec<Vec<String>> = [
        vec!["segre", "--input", "monomial_p3.ideal", "--seed", "11"],
        vec!["segre", "--input", "veronese.ideal", "--field", "Q"],
        vec!["zeta", "--input", "conic.ideal", "--N", "4"],
        vec!["join", "--input", "embedded_point.ideal", "--m", "2", "--seed", "3"],
        vec!["csm", "--input", "nodal_cubic.ideal"],
        vec!["check", "--input", "veronese.ideal", "--seed", "8"],
        vec!["residual", "--input", "monomial_p3.ideal", "--seed", "0"],
    ]
    .iter()
    .map(|c| {
        c.iter()
            .map(|a| if a.ends_with(".ideal") { fixture(a) } else { a.to_string() })
            .chain(["--output".to_string(), "json".to_string()])
            .collect()
    })
    .collect();
    for args in cases {
        let args: Vec<&str> = args.iter().map(String::as_str).collect();
        let a = segreta(&args);
        let b = segreta(&args);
        assert_eq!(a.code, 0, "{args:?}: {}", a.stderr);
        assert!(a.stdout.contains("\"timing_ms\""));
        assert_eq!(strip_timing(&a.stdout), strip_timing(&b.stdout), "{args:?}");
    }
}

#[test]
fn text_output_is_deterministic_too() {
    let f = fixture("veronese.ideal");
    let a = segreta(&["residual", "--input", &f, "--seed", "4"]);
    let b = segreta(&["residual", "--input", &f, "--seed", "4"]);
    assert_eq!(a.stdout, b.stdout);
}
