use std::process::Command;

use hecke_cli::{cmd_commute, cmd_nice, cmd_orbits, cmd_sl2, cmd_volume, exit_code, JobConfig};
use hecke_core::Error;

fn hecke(args: &[&str]) -> (i32, String, String) {
    let out = Command::new(env!("CARGO_BIN_EXE_hecke")).args(args).output().expect("binary runs");
    (out.status.code().unwrap_or(-1), String::from_utf8(out.stdout).unwrap(), String::from_utf8(out.stderr).unwrap())
}

fn cfg(ring: &str, lambda: &[&str]) -> JobConfig {
    JobConfig { ring: Some(ring.into()), lambda: lambda.iter().map(|s| s.to_string()).collect(), ..Default::default() }
}

#[test]
fn config_round_trip() {
    let c = JobConfig {
        ring: Some("Z/p^N:p=7,N=2".into()),
        n: Some(2),
        lambda: vec!["1,0".into(), "2,0".into()],
        sigma: vec!["1,x".into()],
        mode: Some("counting".into()),
        jmax: Some(3),
        jobs: Some(2),
        out: None,
        max_points: Some(1000),
        max_level: Some(6),
    };
    assert_eq!(JobConfig::from_toml(&c.to_toml()).unwrap(), c);
    assert!(JobConfig::from_toml("unknown = 1").is_err());
    assert!(JobConfig::from_toml("n = 0").is_err());
}

#[test]
fn flags_override_file() {
    let file = JobConfig::from_toml("ring = \"Z/p^N:p=3,N=1\"\nlambda = [\"1,0\"]\njmax = 2\n").unwrap();
    let flags = JobConfig { jmax: Some(5), lambda: vec!["2,0".into()], ..Default::default() };
    let m = file.merge(flags);
    assert_eq!(m.ring.as_deref(), Some("Z/p^N:p=3,N=1"));
    assert_eq!(m.lambda, vec!["2,0".to_string()]);
    assert_eq!(m.jmax(), 5);
    assert_eq!(JobConfig::default().jmax(), 4);
    assert_eq!(JobConfig::default().n(), 2);
}

#[test]
fn sigma_strings_parse_as_ring_elements() {
    let c = JobConfig { sigma: vec!["1,x".into(), "3".into()], ..Default::default() };
    let r = "Fp[x]/x^N:p=5,N=2".parse().unwrap();
    let s = c.sigmas(&r).unwrap();
    assert_eq!(s[0].coeffs(), &[1, 5]);
    assert_eq!(s[1].coeffs(), &[3]);
    let bad = JobConfig { sigma: vec!["x".into()], ..Default::default() };
    assert_eq!(bad.sigmas(&r).unwrap_err(), Error::NotAnAutomorphism);
}

#[test]
fn exit_code_classes() {
    assert_eq!(exit_code(&Error::Parse("x".into())), 1);
    assert_eq!(exit_code(&Error::CharTooSmall { p: 7, bound: 8 }), 2);
    assert_eq!(exit_code(&Error::TooLarge { what: "x", size: 2, limit: 1 }), 2);
    assert_eq!(exit_code(&Error::Audit("x".into())), 3);
    assert_eq!(exit_code(&Error::FailedHypothesis(vec![])), 3);
}

#[test]
fn golden_orbit_tables() {
    let (code, out, _) = hecke(&["orbits", "--ring", "Fp[x]/x^N:p=5,N=2", "--lambda", "2,0"]);
    assert_eq!(code, 0);
    assert_eq!(out, include_str!("golden/orbits_fp_n2_20.json"));
    let (code, out, _) = hecke(&["orbits", "--ring", "Z/p^N:p=5,N=2", "--lambda", "2,0", "--csv"]);
    assert_eq!(code, 0);
    assert_eq!(out, include_str!("golden/orbits_zp_n2_20.csv"));
}

#[test]
fn binary_exit_codes() {
    assert_eq!(hecke(&["orbits", "--ring", "Q:p=5,N=1"]).0, 1);
    assert_eq!(hecke(&["orbits", "--lambda", "0,1"]).0, 1);
    assert_eq!(hecke(&["sl2", "check", "--type", "D3"]).0, 1);
    let (code, _, err) = hecke(&["sl2", "check", "--type", "A2", "--p", "7"]);
    assert_eq!(code, 2);
    assert!(err.starts_with("error:"));
    assert_eq!(hecke(&["volume", "--ring", "Z/p^N:p=5,N=3", "--max-level", "2"]).0, 2);
    assert_eq!(hecke(&["nice", "search", "--q", "5", "--d", "12"]).0, 3);
    assert_eq!(hecke(&["sl2", "check", "--type", "B2"]).0, 0);
    assert_ne!(hecke(&["frobnicate"]).0, 0);
}

#[test]
fn config_file_and_out_flag() {
    let dir = std::env::temp_dir().join(format!("hecke-cli-test-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let conf = dir.join("job.toml");
    let out = dir.join("out.json");
    std::fs::write(&conf, "ring = \"Z/p^N:p=3,N=1\"\nlambda = [\"1,0\"]\n").unwrap();
    let (code, stdout, _) = hecke(&["orbits", "--config", conf.to_str().unwrap(), "--out", out.to_str().unwrap()]);
    assert_eq!(code, 0);
    assert!(stdout.is_empty());
    let v: serde_json::Value = serde_json::from_str(&std::fs::read_to_string(&out).unwrap()).unwrap();
    assert_eq!(v["orbits"][0]["size"], 4);
    std::fs::remove_dir_all(&dir).unwrap();
}

#[test]
fn output_is_deterministic() {
    let args = ["commute", "--ring", "Z/p^N:p=3,N=2", "--witness", "--jobs", "2"];
    let a = hecke(&args);
    let b = hecke(&args);
    assert_eq!(a.0, 0);
    assert_eq!(a.1, b.1);
    let c = hecke(&["commute", "--ring", "Z/p^N:p=3,N=2", "--witness", "--jobs", "1"]);
    assert_eq!(a.1, c.1);
}

#[test]
fn library_commands() {
    let (v, table) = cmd_orbits(&cfg("Fp[x]/x^N:p=5,N=1", &["1,0"]), None).unwrap();
    assert_eq!(v["orbit_count"], 1);
    assert_eq!(table.orbits[0].size, 6);
    let c = cmd_commute(&cfg("Fp[x]/x^N:p=5,N=1", &[]), false, 1).unwrap();
    assert_eq!(c["all_zero"], true);
    let mut vc = cfg("Fp[x]/x^N:p=5,N=1", &["2,0"]);
    for mode in ["resolution", "counting"] {
        vc.mode = Some(mode.into());
        let v = cmd_volume(&vc).unwrap();
        assert_eq!(v["total_mass"]["num"], 36);
        assert_eq!(v["total_mass"]["den"], 25);
        assert_eq!(v["certified"], true);
    }
    vc.mode = Some("exact".into());
    assert!(matches!(cmd_volume(&vc), Err(Error::WrongMode(_))));
    vc.mode = Some("guess".into());
    assert!(matches!(cmd_volume(&vc), Err(Error::Parse(_))));
    assert_eq!(cmd_sl2("G2", None).unwrap()["certificate"]["p"], 23);
    let nice = cmd_nice(5, 2, None, Some(2), 1, 10).unwrap();
    assert_eq!(nice["certificate"]["genus"], 6);
}
