use std::path::PathBuf;
use std::process::{Command, Output};

use mvse_cli::spacefile::SpaceFile;
use serde_json::Value;

fn fixture(name: &str) -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR"))
        .join("fixtures")
        .join(name)
}

fn mvse(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_mvse"))
        .args(args)
        .env_remove("MVSE_TUPLE_CAP")
        .output()
        .expect("binary runs")
}

fn json(out: &Output) -> Value {
    serde_json::from_slice(&out.stdout).expect("JSON on stdout")
}

fn path(name: &str) -> String {
    fixture(name).to_string_lossy().into_owned()
}

#[test]
fn decide_answers() {
    for (file, expect) in [
        ("l1_3.json", "non_parallelepipedal"),
        ("linf_3.json", "parallelepiped_only"),
        ("l1_4.json", "parallelepiped_only"),
        ("sum_zero.json", "non_parallelepipedal"),
        ("sum_zero_matrix.json", "non_parallelepipedal"),
        ("hexagon_l1_line.json", "parallelepiped_only"),
        ("hexagon_linf_line.json", "non_parallelepipedal"),
    ] {
        let out = mvse(&["decide", &path(file)]);
        assert_eq!(out.status.code(), Some(0), "{file}");
        let v = json(&out);
        assert_eq!(v["answer"], expect, "{file}");
        assert_eq!(v["search"], "vertex-supported");
    }
}

#[test]
fn malformed_rational_is_an_input_error() {
    let out = mvse(&["decide", &path("broken.json")]);
    assert_eq!(out.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&out.stderr).contains("1.5"));
    assert_eq!(
        mvse(&["decide", "/nonexistent/space.json"]).status.code(),
        Some(2)
    );
    assert_eq!(mvse(&["no-such-command"]).status.code(), Some(2));
}

#[test]
fn tuple_cap_from_environment() {
    let run = |cap: &str| {
        Command::new(env!("CARGO_BIN_EXE_mvse"))
            .args(["decide", &path("linf_3.json")])
            .env("MVSE_TUPLE_CAP", cap)
            .output()
            .unwrap()
    };
    // The dual of the cube has 3 vertex pairs, so 1 tuple.
    assert_eq!(run("0").status.code(), Some(3));
    assert_eq!(run("1").status.code(), Some(0));
    assert_eq!(run("lots").status.code(), Some(2));
    let out = mvse(&[
        "auerbach",
        "--upper",
        &path("l1_4.json"),
        "--tuple-cap",
        "0",
    ]);
    assert_eq!(out.status.code(), Some(3));
}

#[test]
fn auerbach_families() {
    let v = json(&mvse(&["auerbach", "--upper", &path("linf_3.json")]));
    assert_eq!(v["kind"], "upper");
    assert_eq!(v["extremal_value"], "4");
    let v = json(&mvse(&["auerbach", "--lower", &path("l1_3.json")]));
    assert_eq!(v["extremal_value"], "1/4");
    assert_eq!(v["ties_flag"], true);
    assert_eq!(
        mvse(&["auerbach", &path("l1_3.json")]).status.code(),
        Some(2)
    );
    assert_eq!(
        mvse(&["auerbach", "--upper", "--lower", &path("l1_3.json")])
            .status
            .code(),
        Some(2)
    );
}

#[test]
fn construct_outputs() {
    let v = json(&mvse(&["mvse", "construct", &path("l1_3.json")]));
    assert_eq!(v["volume"], "2");
    assert_eq!(v["zonotope"]["generators"].as_array().unwrap().len(), 4);
    for check in [
        "contains_ball",
        "volume_matches",
        "tu_certified",
        "not_parallelepiped",
    ] {
        assert_eq!(v["checks"][check], true);
    }
    let out = mvse(&["construct", &path("linf_3.json")]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn projection_reports() {
    let out = mvse(&[
        "project",
        "--space",
        &path("sum_zero.json"),
        "--subspace",
        "1,-1,0,0;0,1,-1,0",
        "--ambient",
    ]);
    assert_eq!(out.status.code(), Some(0));
    let v = json(&out);
    assert_eq!(v["answer"], "not_one_complemented");
    assert!(v["certificate"].is_object());

    let v = json(&mvse(&[
        "project",
        "--space",
        &path("hexagon_l1_line.json"),
        "--subspace",
        "1,0,0;0,1,0",
    ]));
    assert_eq!(v["answer"], "norm_one_exists");
    assert_eq!(v["witness_norm"], "1");

    let out = mvse(&[
        "project",
        "--space",
        &path("hexagon.json"),
        "--subspace",
        "1,0",
        "--ambient",
    ]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn section_command() {
    let v = json(&mvse(&[
        "section",
        &path("linf_3.json"),
        "--x1",
        "1,0,-1",
        "--x2",
        "0,1,-1",
    ]));
    assert_eq!(v["section"]["vertices"].as_array().unwrap().len(), 6);
    let v = json(&mvse(&[
        "section",
        &path("l1_3.json"),
        "--x1",
        "1/2,1/2,0",
        "--x2",
        "0,1/2,1/2",
    ]));
    assert!(v["hexagon_triple"].is_array());
}

#[test]
fn rendering() {
    let dir = tempfile::tempdir().unwrap();
    let report = json(&mvse(&["decide", &path("l1_3.json")]));
    assert_eq!(report["lower_families_examined"], 1);
    let i = report["witness"]["basis_pair"][0]
        .as_u64()
        .unwrap()
        .to_string();
    let j = report["witness"]["basis_pair"][1]
        .as_u64()
        .unwrap()
        .to_string();

    let hex = dir.path().join("hex.svg");
    let out = mvse(&[
        "render",
        &path("l1_3.json"),
        "--pair",
        &i,
        &j,
        "--out",
        hex.to_str().unwrap(),
    ]);
    assert_eq!(out.status.code(), Some(0));
    let svg = std::fs::read_to_string(&hex).unwrap();
    assert_eq!(svg.matches("<circle").count(), 6);

    let sq = dir.path().join("square.svg");
    let out = mvse(&[
        "render",
        &path("linf_3.json"),
        "--pair",
        "0",
        "1",
        "--out",
        sq.to_str().unwrap(),
    ]);
    assert_eq!(out.status.code(), Some(0));
    assert_eq!(
        std::fs::read_to_string(&sq)
            .unwrap()
            .matches("<circle")
            .count(),
        4
    );

    let bad = dir.path().join("bad.svg");
    let out = mvse(&[
        "render",
        &path("linf_3.json"),
        "--pair",
        "0",
        "3",
        "--out",
        bad.to_str().unwrap(),
    ]);
    assert_eq!(out.status.code(), Some(2));
    assert!(!bad.exists());
}

#[test]
fn outputs_are_byte_deterministic() {
    let dir = tempfile::tempdir().unwrap();
    let a = dir.path().join("a.svg");
    let b = dir.path().join("b.svg");
    let first = mvse(&[
        "decide",
        &path("sum_zero.json"),
        "--svg",
        a.to_str().unwrap(),
    ]);
    let second = mvse(&[
        "decide",
        &path("sum_zero.json"),
        "--svg",
        b.to_str().unwrap(),
    ]);
    assert_eq!(first.stdout, second.stdout);
    assert_eq!(std::fs::read(&a).unwrap(), std::fs::read(&b).unwrap());
    let c1 = mvse(&["construct", &path("sum_zero.json")]);
    let c2 = mvse(&["construct", &path("sum_zero.json")]);
    assert_eq!(c1.stdout, c2.stdout);
}

#[test]
fn space_files_round_trip() {
    let dir = fixture("");
    let mut seen = 0;
    for entry in std::fs::read_dir(&dir).unwrap() {
        let p = entry.unwrap().path();
        let name = p.file_name().unwrap().to_string_lossy().into_owned();
        if name == "broken.json" {
            assert!(SpaceFile::load(&p).is_err());
            continue;
        }
        let f = SpaceFile::load(&p).unwrap();
        let emitted = f.emit();
        let again = SpaceFile::parse(&emitted).unwrap();
        assert_eq!(again, f, "{name}");
        assert_eq!(again.emit(), emitted, "{name}");
        f.to_space().unwrap();
        seen += 1;
    }
    assert!(seen >= 8);
    // Rationals come back in lowest terms.
    let f = SpaceFile::load(&fixture("skew_hrep.json")).unwrap();
    assert!(f.emit().contains("\"1/2\""));
    assert!(!f.emit().contains("+3/3"));
}

#[test]
fn verify_paper_passes() {
    let out = mvse(&["verify-paper"]);
    let v = json(&out);
    assert_eq!(out.status.code(), Some(0), "{v:#}");
    assert_eq!(v["pass"], true);
    let records = v["records"].as_array().unwrap();
    let l13 = records
        .iter()
        .find(|r| r["claim"] == "l1_3_hexagonal_witness")
        .unwrap();
    assert_eq!(l13["expected"], "non_parallelepipedal");
    assert_eq!(l13["computed"], "non_parallelepipedal");
    let h4 = records
        .iter()
        .find(|r| r["claim"] == "l1_4_hadamard_parallelepiped_only")
        .unwrap();
    assert_eq!(h4["expected"], "parallelepiped_only");
}
