//! Batch front end for `hecke-core`: every command returns a JSON value.

pub mod config;

use num_traits::Zero;
use serde_json::{json, Value};

use hecke_core::curves::nice_search;
use hecke_core::hecke::{commutator, convolve, find_noncommuting_pair, Distribution, RationalJson};
use hecke_core::lattice::{enumerate_schubert, enumerate_window, DominantCoweight};
use hecke_core::liealg::{build_root_system, nice_level_bound, primes_above, sl2_check, CartanType};
use hecke_core::orbits::{decompose, required_level, OrbitTable};
use hecke_core::ringcore::Rational;
use hecke_core::satake::{h_counting, h_minuscule, resolution_reports_gl2_20, small_algebra_generators, VolumeReport};
use hecke_core::{Error, Result};

pub use config::JobConfig;

pub const VERSION: &str = env!("CARGO_PKG_VERSION");

/// 1: bad input, 2: guard violation, 3: failed mathematical check.
pub fn exit_code(e: &Error) -> i32 {
    match e {
        Error::Parse(_)
        | Error::NotPrime(_)
        | Error::BadLength(_)
        | Error::RingTooLarge { .. }
        | Error::InvalidType(_)
        | Error::Dimension(_)
        | Error::WrongMode(_)
        | Error::NotAnAutomorphism
        | Error::NotAUnit
        | Error::NotInGroup => 1,
        Error::TooLarge { .. } | Error::CharTooSmall { .. } | Error::InsufficientTruncation { .. } | Error::InsufficientWindow(_) => 2,
        _ => 3,
    }
}

fn rat(r: &Rational) -> Value {
    serde_json::to_value(RationalJson::from(r)).expect("serializable")
}

fn lambdas_or(cfg: &JobConfig, default: &[&str]) -> Result<Vec<DominantCoweight>> {
    if cfg.lambda.is_empty() {
        default.iter().map(|s| s.parse()).collect()
    } else {
        cfg.lambdas()
    }
}

pub fn cmd_orbits(cfg: &JobConfig, window: Option<u32>) -> Result<(Value, OrbitTable)> {
    let ring = cfg.ring()?;
    let n = cfg.n();
    let (label, points) = match window {
        Some(w) => (format!("window {w}"), enumerate_window(&ring, n, w)?),
        None => {
            let lam = lambdas_or(cfg, &["1,0"])?.remove(0);
            (lam.to_string(), enumerate_schubert(&ring, n, &lam)?.points)
        }
    };
    let d = decompose(&points, &ring, n, required_level(&points))?;
    let table = OrbitTable::new(label, &ring, &d);
    Ok((serde_json::to_value(&table).expect("serializable"), table))
}

pub fn cmd_convolve(cfg: &JobConfig, indicator: bool) -> Result<Value> {
    let ring = cfg.ring()?;
    let n = cfg.n();
    let lams = lambdas_or(cfg, &["1,0", "1,0"])?;
    let mut acc = Distribution::delta(&hecke_core::lattice::LatticeRep::base(ring, n));
    for lam in &lams {
        let mu = if indicator {
            Distribution::indicator(ring, n, &enumerate_schubert(&ring, n, lam)?.points)
        } else {
            small_algebra_generators(&ring, n, std::slice::from_ref(lam), &[])?.remove(0)
        };
        acc = convolve(&acc, &mu)?;
    }
    Ok(json!({
        "version": VERSION,
        "lambda": cfg.lambda,
        "factors": if indicator { "indicator" } else { "h" },
        "total_mass": rat(&acc.total_mass()),
        "result": acc.to_json(),
    }))
}

pub fn cmd_commute(cfg: &JobConfig, witness: bool, window: u32) -> Result<Value> {
    let ring = cfg.ring()?;
    let n = cfg.n();
    if witness {
        let pts = enumerate_window(&ring, n, window)?;
        let d = decompose(&pts, &ring, n, required_level(&pts))?;
        let w = find_noncommuting_pair(&d, &ring, n)?;
        return Ok(json!({
            "version": VERSION,
            "ring": ring.to_string(),
            "window": window,
            "orbit_count": d.orbit_count(),
            "witness": w.map(|w| json!({
                "orbit_a": { "rep": d.reps[w.orbit_a].to_string(), "size": d.sizes[w.orbit_a] },
                "orbit_b": { "rep": d.reps[w.orbit_b].to_string(), "size": d.sizes[w.orbit_b] },
                "max_abs": rat(&w.commutator.max_abs()),
                "commutator": w.commutator.to_json(),
            })),
        }));
    }
    let lams = lambdas_or(cfg, &["1,0", "0,-1", "1,1", "2,0"])?;
    let sigmas = cfg.sigmas(&ring)?;
    let gens = small_algebra_generators(&ring, n, &lams, &sigmas)?;
    let mut labels: Vec<String> = lams.iter().map(|l| format!("h^{l}")).collect();
    for s in &cfg.sigma {
        labels.extend(lams.iter().map(|l| format!("sigma[{s}] h^{l}")));
    }
    let mut pairs = Vec::new();
    let mut all_zero = true;
    for i in 0..gens.len() {
        for j in i + 1..gens.len() {
            let c = commutator(&gens[i], &gens[j])?;
            all_zero &= c.is_zero();
            pairs.push(json!({
                "a": labels[i],
                "b": labels[j],
                "max_abs": rat(&c.max_abs()),
                "commutator": if c.is_zero() { Value::Null } else { serde_json::to_value(c.to_json()).expect("serializable") },
            }));
        }
    }
    Ok(json!({ "version": VERSION, "ring": ring.to_string(), "generators": labels, "pairs": pairs, "all_zero": all_zero }))
}

pub fn volume_reports(cfg: &JobConfig) -> Result<(String, Vec<VolumeReport>)> {
    let ring = cfg.ring()?;
    let lam = lambdas_or(cfg, &["2,0"])?.remove(0);
    let mode = cfg.mode.clone().unwrap_or_else(|| if lam.is_minuscule() { "exact".into() } else { "resolution".into() });
    let reports = match mode.as_str() {
        "exact" => {
            let h = h_minuscule(&lam, &ring)?;
            h.entries()
                .map(|(p, v)| VolumeReport {
                    point: p.clone(),
                    mode: hecke_core::satake::Mode::Exact,
                    value: Some(v.clone()),
                    counts: vec![],
                    partial_sums: vec![],
                    ratios: vec![],
                    tail: None,
                    ladder: vec![],
                })
                .collect()
        }
        "resolution" => {
            if lam.parts() != [2, 0] {
                return Err(Error::WrongMode(format!("resolution mode covers GL_2 (2,0) only, got {lam}")));
            }
            resolution_reports_gl2_20(&ring)?
        }
        "counting" => {
            let jmax = cfg.jmax();
            if let Some(m) = cfg.max_level {
                if ring.len() + jmax > m {
                    return Err(Error::TooLarge { what: "counting level", size: (ring.len() + jmax) as u128, limit: m as u128 });
                }
            }
            h_counting(&lam, &ring, jmax)?
        }
        other => return Err(Error::Parse(format!("unknown mode '{other}'"))),
    };
    Ok((mode, reports))
}

pub fn cmd_volume(cfg: &JobConfig) -> Result<Value> {
    let (mode, reports) = volume_reports(cfg)?;
    let total = reports.iter().filter_map(|r| r.value.clone()).fold(Rational::zero(), |a, b| a + b);
    let certified = reports.iter().all(|r| r.value.is_some());
    Ok(json!({
        "version": VERSION,
        "ring": cfg.ring()?.to_string(),
        "lambda": lambdas_or(cfg, &["2,0"])?[0].to_string(),
        "mode": mode,
        "certified": certified,
        "total_mass": rat(&total),
        "reports": reports.iter().map(|r| r.to_json()).collect::<Vec<_>>(),
    }))
}

pub fn cmd_satake(cfg: &JobConfig) -> Result<Value> {
    let ring = cfg.ring()?;
    let n = cfg.n();
    let lams = lambdas_or(cfg, &["1,0"])?;
    let sigmas = cfg.sigmas(&ring)?;
    let gens = small_algebra_generators(&ring, n, &lams, &sigmas)?;
    Ok(json!({
        "version": VERSION,
        "lambda": cfg.lambda,
        "sigma": cfg.sigma,
        "generators": gens.iter().map(|g| json!({ "total_mass": rat(&g.total_mass()), "distribution": g.to_json() })).collect::<Vec<_>>(),
    }))
}

pub fn cmd_sl2(ty: &str, p: Option<u32>) -> Result<Value> {
    let t: CartanType = ty.parse()?;
    let p = match p {
        Some(p) => p,
        None => primes_above(build_root_system(t)?.char_bound, 1)[0],
    };
    let cert = sl2_check(t, p)?;
    if !cert.pass {
        return Err(Error::Audit(format!("sl2 suite failed for {t} at p = {p}")));
    }
    Ok(json!({ "version": VERSION, "certificate": cert }))
}

pub fn cmd_nice(q: u32, n: u32, ty: Option<&str>, d: Option<u32>, seed: u64, attempts: usize) -> Result<Value> {
    let d = match d {
        Some(d) => d,
        None => nice_level_bound(&build_root_system(ty.unwrap_or("A1").parse()?)?) as u32,
    };
    let cert = nice_search(q, n, d, seed, attempts)?;
    Ok(json!({ "version": VERSION, "input": { "q": q, "n": n, "d": d, "type": ty, "seed": seed }, "certificate": cert }))
}
