//! Acceptance suite: one PASS/FAIL line per criterion, nonzero exit on any
//! failure. Run with `cargo test -p rgspectra --test acceptance`.

use std::process::{Command, ExitCode};
use std::time::Instant;

use rand::rngs::StdRng;
use rand::{Rng, SeedableRng};
use rgspectra::experiment::{self, energy_target, TAIL_MULTIPLES};
use rgspectra::output::{self, Summary};
use rgspectra::{ExperimentConfig, ExperimentKind, TrialRecord};
use rgspectra_core::eigenvalues;
use rgspectra_core::energy::{kyfan_check, off_diagonal_shift_energy};
use rgspectra_core::freeconv::{abs_moment_bounds, psi_moments};
use rgspectra_core::rgraph::SymMatrix;

const SEED: u64 = 20_240_601;

type Check = (&'static str, fn() -> Outcome);

struct Outcome {
    ok: bool,
    detail: String,
}

fn outcome(ok: bool, detail: impl Into<String>) -> Outcome {
    Outcome {
        ok,
        detail: detail.into(),
    }
}

fn campaign(
    kind: ExperimentKind,
    n: &[usize],
    p: &[f64],
    trials: usize,
) -> (Vec<TrialRecord>, Summary) {
    let cfg = ExperimentConfig::new(kind, n.to_vec(), p.to_vec(), trials, SEED);
    cfg.validate().expect("valid config");
    let records = experiment::run(&cfg).expect("campaign runs");
    let summary = output::summarize(&records, &cfg).expect("summary");
    (records, summary)
}

fn all<'a>(records: &'a [TrialRecord], name: &'a str) -> impl Iterator<Item = f64> + 'a {
    records
        .iter()
        .map(move |r| r.get(name).expect("statistic present"))
}

// Set partitions of {0..k} as restricted growth strings, kept if non-crossing.
fn nc_partitions(k: usize) -> Vec<Vec<usize>> {
    fn grow(prefix: &mut Vec<usize>, k: usize, out: &mut Vec<Vec<usize>>) {
        if prefix.len() == k {
            out.push(prefix.clone());
            return;
        }
        let next = prefix.iter().max().map_or(0, |m| m + 1);
        for label in 0..=next {
            prefix.push(label);
            grow(prefix, k, out);
            prefix.pop();
        }
    }
    let crossing = |l: &[usize]| {
        (0..k).any(|a| {
            (a + 1..k).any(|b| {
                (b + 1..k).any(|c| (c + 1..k).any(|d| l[a] == l[c] && l[b] == l[d] && l[a] != l[b]))
            })
        })
    };
    let mut out = Vec::new();
    grow(&mut Vec::new(), k, &mut out);
    out.retain(|l| !crossing(l));
    out
}

fn block_sizes(labels: &[usize]) -> Vec<usize> {
    let mut sizes = vec![0; labels.iter().max().map_or(0, |m| m + 1)];
    for &l in labels {
        sizes[l] += 1;
    }
    sizes
}

/// Free cumulants from integer moments by the NC moment-cumulant relation.
fn nc_cumulants(moments: &[i64]) -> Vec<i64> {
    let mut c: Vec<i64> = Vec::new();
    for k in 1..=moments.len() {
        let rest: i64 = nc_partitions(k)
            .iter()
            .map(|l| block_sizes(l))
            .filter(|s| s.len() > 1)
            .map(|s| s.iter().map(|&b| c[b - 1]).product::<i64>())
            .sum();
        c.push(moments[k - 1] - rest);
    }
    c
}

fn nc_moments(cumulants: &[i64]) -> Vec<i64> {
    (1..=cumulants.len())
        .map(|k| {
            nc_partitions(k)
                .iter()
                .map(|l| {
                    block_sizes(l)
                        .iter()
                        .map(|&b| cumulants[b - 1])
                        .product::<i64>()
                })
                .sum()
        })
        .collect()
}

fn criterion_1() -> Outcome {
    let start = Instant::now();
    let out = Command::new(env!("CARGO_BIN_EXE_rgspectra"))
        .args(["freeconv", "--degree", "8"])
        .output()
        .expect("binary runs");
    let elapsed = start.elapsed().as_secs_f64();
    let json: serde_json::Value = serde_json::from_slice(&out.stdout).expect("json output");
    let cli: Vec<String> = json["moments"]
        .as_array()
        .unwrap()
        .iter()
        .map(|v| v.as_str().unwrap().to_string())
        .collect();

    // semicircle cumulants (0,1,0,...) plus normal cumulants recovered by enumeration
    let normal = [0, 1, 0, 3, 0, 15, 0, 105];
    let kn = nc_cumulants(&normal);
    let sum: Vec<i64> = kn
        .iter()
        .enumerate()
        .map(|(i, c)| c + i64::from(i == 1))
        .collect();
    let oracle: Vec<String> = nc_moments(&sum).iter().map(|m| format!("{m}/1")).collect();

    let lib = psi_moments(8).expect("psi");
    let lib_m6 = lib.moment(6).to_string();
    let ok = out.status.success()
        && cli.get(1).map(String::as_str) == Some("2/1")
        && cli.get(3).map(String::as_str) == Some("9/1")
        && cli.get(5).map(String::as_str) == Some("56/1")
        && cli == oracle
        && lib_m6 == "56"
        && elapsed < 1.0;
    outcome(
        ok,
        format!("moments {cli:?}; oracle {oracle:?}; {elapsed:.3}s"),
    )
}

fn criterion_2() -> Outcome {
    let m = psi_moments(4).expect("psi");
    let b = abs_moment_bounds(&m.moment(2), &m.moment(4)).expect("bounds");
    let (lo, hi) = (2.0 * 2f64.sqrt() / 3.0, 2f64.sqrt());
    let ok = (b.lower - lo).abs() <= 1e-12 && (b.upper - hi).abs() <= 1e-12;
    outcome(ok, format!("[{:.15}, {:.15}]", b.lower, b.upper))
}

fn criterion_3() -> Outcome {
    let (n, p) = (1024, 0.5);
    let (records, summary) = campaign(ExperimentKind::EnergyConvergence, &[n], &[p], 10);
    let mean = summary.cells[0]
        .statistic("energy_normalized")
        .unwrap()
        .mean;
    let tol = off_diagonal_shift_energy(n, p) / (n as f64).powf(1.5) + 0.02;
    let target = energy_target(p);
    let contained = records
        .iter()
        .all(|r| r.verdict_of("kyfan_contained") == Some(true));
    let ok = records.len() == 10 && (mean - target).abs() <= tol && contained;
    outcome(
        ok,
        format!(
            "mean {mean:.5} vs {target:.5} ± {tol:.5}; Ky Fan contained in all trials: {contained}"
        ),
    )
}

fn criterion_4() -> Outcome {
    let (records, _) = campaign(ExperimentKind::LeBounds, &[1024], &[0.5], 10);
    let values: Vec<f64> = all(&records, "le_sigma_normalized").collect();
    let inside = values
        .iter()
        .filter(|v| (0.860..=1.497).contains(*v))
        .count();
    let (lo, hi) = values
        .iter()
        .fold((f64::MAX, f64::MIN), |(a, b), &v| (a.min(v), b.max(v)));
    outcome(
        inside == 10 && values.len() == 10,
        format!("{inside}/10 in [0.860, 1.497]; range [{lo:.4}, {hi:.4}]"),
    )
}

fn criterion_5() -> Outcome {
    let (records, summary) = campaign(ExperimentKind::Conjecture, &[256], &[0.2, 0.5, 0.8], 50);
    let mut ok = records.len() == 150;
    let mut parts = Vec::new();
    for cell in &summary.cells {
        let strict = cell.statistic("strict").unwrap().mean;
        ok &= cell.trials == 50 && strict >= 0.98;
        parts.push(format!("p={} {:.0}%", cell.p, 100.0 * strict));
    }
    outcome(ok, format!("strict E < LE: {}", parts.join(", ")))
}

fn criterion_6() -> Outcome {
    let (records, _) = campaign(ExperimentKind::EsdKs, &[2000], &[0.5], 3);
    let ks: Vec<f64> = all(&records, "ks").collect();
    let control: Vec<f64> = all(&records, "ks_control").collect();
    let ok = ks.len() == 3 && ks.iter().all(|&k| k <= 0.05) && control.iter().all(|&c| c > 0.1);
    outcome(
        ok,
        format!("KS {ks:.4?}; doubled-scale control {control:.4?}"),
    )
}

fn criterion_7() -> Outcome {
    let (records, _) = campaign(ExperimentKind::Moment2, &[2000], &[0.5], 2);
    let m2: Vec<f64> = all(&records, "m2_l2").collect();
    let m4: Vec<f64> = all(&records, "m4_l2").collect();
    let residual = all(&records, "m2_shift_residual")
        .chain(all(&records, "eigen_shift_residual"))
        .fold(0.0, f64::max);
    let ok = !records.is_empty()
        && m2.iter().all(|v| (1.8..=2.2).contains(v))
        && m4.iter().all(|v| (8.0..=10.0).contains(v))
        && residual <= 1e-9;
    outcome(
        ok,
        format!("m2 {m2:.4?}; m4 {m4:.4?}; max shift residual {residual:.2e}"),
    )
}

fn criterion_8() -> Outcome {
    let (n, p) = (1024, 0.5);
    let (records, _) = campaign(ExperimentKind::Drift, &[n], &[p], 100);
    let threshold = 4.0 / (n as f64).sqrt();
    let within = all(&records, "delta_n")
        .filter(|d| d.abs() <= threshold)
        .count();
    let tails = experiment::chernoff_tails(&records, n, p, &TAIL_MULTIPLES).expect("tails");
    let dominated = tails.len() == 5 && tails.iter().all(|t| t.empirical <= t.bound);
    let shown: Vec<String> = tails
        .iter()
        .map(|t| format!("{:.2}<={:.2}", t.empirical, t.bound))
        .collect();
    outcome(
        within >= 99 && dominated,
        format!(
            "{within}/100 within {threshold:.4}; tails {}",
            shown.join(" ")
        ),
    )
}

fn random_symmetric(rng: &mut StdRng, n: usize) -> SymMatrix {
    let spread = 10f64.powi(rng.gen_range(-2..=2));
    SymMatrix::from_fn(n, |_, _| rng.gen_range(-spread..spread)).expect("matrix")
}

fn criterion_9() -> Outcome {
    let mut failures = Vec::new();

    let j5 = SymMatrix::ones_off_diagonal(5).expect("J - I");
    let s = eigenvalues(&j5).expect("spectrum");
    let expected = [-1.0, -1.0, -1.0, -1.0, 4.0];
    let j5_err = s
        .values()
        .iter()
        .zip(expected)
        .map(|(a, b)| (a - b).abs())
        .fold(0.0, f64::max);
    if j5_err > 1e-8 {
        failures.push(format!("J5-I5 error {j5_err:.2e}"));
    }

    let mut rng = StdRng::seed_from_u64(SEED);
    let mut worst = 0.0f64;
    for _ in 0..1000 {
        let n = rng.gen_range(1..=50);
        let m = random_symmetric(&mut rng, n);
        let s = eigenvalues(&m).expect("spectrum");
        let fro = m.frobenius_sq();
        let scale = fro.sqrt().max(f64::MIN_POSITIVE);
        worst = worst.max((s.sum() - m.trace()).abs() / scale);
        worst = worst.max((s.sum_sq() - fro).abs() / fro.max(f64::MIN_POSITIVE));
    }
    if worst > 1e-8 {
        failures.push(format!("conservation error {worst:.2e}"));
    }

    let mut kyfan_min = f64::MAX;
    for _ in 0..500 {
        let n = rng.gen_range(1..=40);
        let (x, y) = (random_symmetric(&mut rng, n), random_symmetric(&mut rng, n));
        let k = kyfan_check(&x, &y).expect("ky fan");
        kyfan_min = kyfan_min.min(k.lhs - k.rhs);
    }
    if kyfan_min < -1e-9 {
        failures.push(format!("Ky Fan violated by {:.2e}", -kyfan_min));
    }
    outcome(
        failures.is_empty(),
        format!(
            "J5-I5 {j5_err:.1e}; trace/Frobenius {worst:.1e}; min Ky Fan slack {kyfan_min:.3e}"
        ),
    )
}

fn criterion_10() -> Outcome {
    let cells: [(ExperimentKind, &[usize], &[f64], usize); 6] = [
        (ExperimentKind::EnergyConvergence, &[64, 96], &[0.3, 1.0], 4),
        (ExperimentKind::LeBounds, &[64], &[0.5], 4),
        (ExperimentKind::Conjecture, &[48], &[0.0, 0.2, 1.0], 5),
        (ExperimentKind::EsdKs, &[80], &[0.5], 3),
        (ExperimentKind::Drift, &[1024], &[0.5], 100),
        (ExperimentKind::Moment2, &[64], &[0.4], 3),
    ];
    let mut differing = Vec::new();
    for (kind, n, p, trials) in cells {
        let cfg = ExperimentConfig::new(kind, n.to_vec(), p.to_vec(), trials, SEED);
        let bytes = || {
            let mut buf = Vec::new();
            output::write_csv(kind, &experiment::run(&cfg).expect("run"), &mut buf).expect("csv");
            buf
        };
        if bytes() != bytes() {
            differing.push(kind.to_string());
        }
    }
    outcome(
        differing.is_empty(),
        format!("6 kinds rerun; differing: {differing:?}"),
    )
}

fn main() -> ExitCode {
    let criteria: [Check; 10] = [
        ("free-convolution exactness", criterion_1),
        ("absolute-moment bound constants", criterion_2),
        ("energy asymptotic", criterion_3),
        ("Laplacian energy bounds", criterion_4),
        ("E < LE rate", criterion_5),
        ("semicircle fit", criterion_6),
        ("Markov-matrix moments", criterion_7),
        ("centering drift", criterion_8),
        ("solver integrity", criterion_9),
        ("reproducibility", criterion_10),
    ];
    let mut failed = 0;
    for (i, (name, check)) in criteria.iter().enumerate() {
        let start = Instant::now();
        let o = check();
        let verdict = if o.ok { "PASS" } else { "FAIL" };
        println!(
            "{verdict} {:>2} {name}: {} [{:.1}s]",
            i + 1,
            o.detail,
            start.elapsed().as_secs_f64()
        );
        failed += usize::from(!o.ok);
    }
    println!(
        "acceptance: {}/{} passed",
        criteria.len() - failed,
        criteria.len()
    );
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
