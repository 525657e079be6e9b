use std::fs;
use std::path::PathBuf;
use std::process::{Command, Output};

use facehit_core::generators;
use facehit_core::write_plg;

fn facehit(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_facehit"))
        .args(args)
        .output()
        .expect("run facehit")
}

fn temp(name: &str, contents: &str) -> String {
    let p = PathBuf::from(env!("CARGO_TARGET_TMPDIR")).join(name);
    fs::write(&p, contents).unwrap();
    p.to_string_lossy().into_owned()
}

fn stdout(o: &Output) -> String {
    String::from_utf8_lossy(&o.stdout).into_owned()
}

fn stderr(o: &Output) -> String {
    String::from_utf8_lossy(&o.stderr).into_owned()
}

const TRIANGLE: &str =
    "plg 1\nv 0\nv 1\nv 2\ne 0 0 1\ne 1 1 2\ne 2 2 0\nrot 0 0+ 2-\nrot 1 1+ 0-\nrot 2 2+ 1-\n";

#[test]
fn validate_triangle() {
    let p = temp("cli-triangle.plg", TRIANGLE);
    let o = facehit(&["validate", &p]);
    assert_eq!(o.status.code(), Some(0));
    let out = stdout(&o);
    assert!(out.contains("euler: pass"));
    assert!(out.contains("3 vertices, 3 edges, 2 faces"));
}

#[test]
fn validate_rotation_typo_names_vertex() {
    let bad = TRIANGLE.replace("rot 1 1+ 0-", "rot 1 1+ 1+");
    let p = temp("cli-typo.plg", &bad);
    let o = facehit(&["validate", &p, "--quiet"]);
    assert_eq!(o.status.code(), Some(1));
    assert!(stdout(&o).contains("rotation: FAIL: rotation at vertex 1"));
}

#[test]
fn validate_reports_euler_characteristic() {
    // Reversing one rotation of K4 puts it on the torus.
    let k4 = write_plg(&generators::stacked_triangulation(4, 0).unwrap());
    let line = k4
        .lines()
        .find(|l| l.starts_with("rot 0 "))
        .unwrap()
        .to_string();
    let mut toks: Vec<&str> = line.split(' ').collect();
    toks[2..].reverse();
    let p = temp("cli-euler.plg", &k4.replace(&line, &toks.join(" ")));
    let o = facehit(&["validate", &p, "--quiet"]);
    assert_eq!(o.status.code(), Some(1));
    assert!(
        stdout(&o).contains("v - e + f = 4 - 6 + 2 = 0"),
        "{}",
        stdout(&o)
    );
}

#[test]
fn parse_error_exit_code() {
    let p = temp("cli-garbage.plg", "plg 1\nv zero\n");
    assert_eq!(facehit(&["validate", &p, "--quiet"]).status.code(), Some(2));
    assert_eq!(
        facehit(&["color", "/nonexistent/x.plg", "--quiet"])
            .status
            .code(),
        Some(2)
    );
}

#[test]
fn color_four_cycle() {
    let p = temp("cli-c4.plg", &write_plg(&generators::polygon(4)));
    let o = facehit(&["color", &p, "--check"]);
    assert_eq!(o.status.code(), Some(0));
    let out = stdout(&o);
    assert!(out.contains("domatic: true"));
    assert!(out.contains("polychromatic: true"));
    assert!(out.contains("oracle_coloring_exists: true"));
    let manifest = stderr(&o);
    let m: serde_json::Value = serde_json::from_str(manifest.lines().last().unwrap()).unwrap();
    assert_eq!(m["command"], "color");
    assert_eq!(m["exit_code"], 0);
    assert_eq!(m["input_sha256"].as_str().unwrap().len(), 64);
}

#[test]
fn color_json_matches_human() {
    let g = generators::random_theorem_instance(100, 3).unwrap();
    let p = temp("cli-r100.plg", &write_plg(&g));
    let human = stdout(&facehit(&["color", &p, "--quiet"]));
    let j: serde_json::Value =
        serde_json::from_str(&stdout(&facehit(&["color", &p, "--json", "--quiet"]))).unwrap();
    let a = j["class_a"].as_array().unwrap().len();
    let b = j["class_b"].as_array().unwrap().len();
    assert!(human.contains(&format!("A ({a}):")));
    assert!(human.contains(&format!("B ({b}):")));
    assert_eq!(a + b, 100);
    assert_eq!(j["audit"]["domatic"], true);
}

#[test]
fn color_rejects_doubled_k4() {
    let p = temp(
        "cli-dk4.plg",
        &write_plg(&generators::doubled_k4_family(1).unwrap()),
    );
    let o = facehit(&["color", &p, "--quiet"]);
    assert_eq!(o.status.code(), Some(3));
    assert!(stderr(&o).contains("2-face present"));
}

#[test]
fn dominate_k4_and_octahedron() {
    let k4 = temp(
        "cli-k4.plg",
        &write_plg(&generators::stacked_triangulation(4, 0).unwrap()),
    );
    let o = facehit(&["dominate", &k4, "--exact", "--quiet"]);
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).contains("dominating (1):"));
    assert!(stdout(&o).ends_with(",1,crr\n"));
    let oct = temp("cli-oct.plg", &write_plg(&generators::octahedron()));
    let j: serde_json::Value = serde_json::from_str(&stdout(&facehit(&[
        "dominate", &oct, "--json", "--exact", "--quiet",
    ])))
    .unwrap();
    assert!(j["dominating_set"].as_array().unwrap().len() <= 2);
    assert_eq!(j["report"]["gamma_exact"], 2);
}

#[test]
fn dominate_rejects_non_triangulation() {
    let p = temp("cli-c4-dom.plg", &write_plg(&generators::polygon(4)));
    assert_eq!(facehit(&["dominate", &p, "--quiet"]).status.code(), Some(3));
}

#[test]
fn exact_beyond_budget_exits_4() {
    let p = temp(
        "cli-big.plg",
        &write_plg(&generators::stacked_triangulation(30, 1).unwrap()),
    );
    assert_eq!(
        facehit(&["dominate", &p, "--exact", "--quiet"])
            .status
            .code(),
        Some(4)
    );
    assert_eq!(
        facehit(&["oracle", &p, "--problem", "gamma", "--quiet"])
            .status
            .code(),
        Some(4)
    );
}

#[test]
fn bench_is_deterministic() {
    let run = || {
        stdout(&facehit(&[
            "bench", "--count", "10", "--n", "30", "--seed", "7", "--quiet",
        ]))
    };
    let first = run();
    assert_eq!(first, run());
    let rows = first.lines().filter(|l| !l.starts_with('#')).count();
    assert_eq!(rows, 11);
    for l in first.lines().filter(|l| l.starts_with("# frac")) {
        let x: f64 = l.rsplit(' ').next().unwrap().parse().unwrap();
        assert!((0.0..=1.0).contains(&x));
    }
}

#[test]
fn bench_single_k4() {
    let out = stdout(&facehit(&["bench", "--count", "1", "--n", "4", "--quiet"]));
    assert!(out.contains("\n0,0,4,1,1/4,1,4/3,8/7,3/2,,crr\n"), "{out}");
}

#[test]
fn gen_is_byte_identical() {
    let a = stdout(&facehit(&[
        "gen", "theorem", "--n", "30", "--seed", "9", "--quiet",
    ]));
    let b = stdout(&facehit(&[
        "gen", "theorem", "--n", "30", "--seed", "9", "--quiet",
    ]));
    assert_eq!(a, b);
    assert_eq!(
        a,
        write_plg(&generators::random_theorem_instance(30, 9).unwrap())
    );
}

#[test]
fn oracle_loop_gadget_has_no_coloring() {
    let p = temp("cli-loops.plg", &write_plg(&generators::loop_gadget()));
    let o = facehit(&["oracle", &p, "--problem", "dp", "--quiet"]);
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(stdout(&o), "dp: none\n");
}

#[test]
fn render_dot() {
    let p = temp("cli-c6.plg", &write_plg(&generators::polygon(6)));
    let dot = PathBuf::from(env!("CARGO_TARGET_TMPDIR")).join("cli-c6.dot");
    let o = facehit(&[
        "render",
        &p,
        "--dot",
        dot.to_str().unwrap(),
        "--color",
        "--quiet",
    ]);
    assert_eq!(o.status.code(), Some(0));
    let text = fs::read_to_string(dot).unwrap();
    assert!(text.contains("lightblue") && text.contains("salmon"));
}
