//! Acceptance run: one PASS/FAIL line per criterion, exit status 1 if any fail.

use std::process::ExitCode;
use std::time::{Duration, Instant};

use xiforge::quadrature::QuadratureConfig;
use xiforge::verify::{convention_case, run_suite, CaseResult, Suite, SuiteParams};

struct Criterion {
    id: u32,
    name: &'static str,
    limit: Duration,
    run: fn() -> Vec<CaseResult>,
}

fn suite(s: Suite) -> Vec<CaseResult> {
    run_suite(s, &SuiteParams::default()).cases
}

fn suite_with(s: Suite, params: SuiteParams) -> Vec<CaseResult> {
    run_suite(s, &params).cases
}

fn criteria() -> Vec<Criterion> {
    vec![
        Criterion {
            id: 1,
            name: "functional equation P_q(s) = (-1)^q P_q(1-s), q <= 20, 200 points",
            limit: Duration::from_secs(5),
            run: || suite_with(Suite::FunctionalEq, SuiteParams { qmax: Some(20), ..Default::default() }),
        },
        Criterion {
            id: 2,
            name: "hypergeometric form vs direct sum, q <= 15, 100 points, 1e-10 rel",
            limit: Duration::from_secs(2),
            run: || suite_with(Suite::HypDirect, SuiteParams { qmax: Some(15), ..Default::default() }),
        },
        Criterion {
            id: 3,
            name: "critical-line zero count equals q for 1 <= q <= 20, q=2 anchor",
            limit: Duration::from_secs(60),
            run: || suite_with(Suite::Zeros, SuiteParams { qmax: Some(20), ..Default::default() }),
        },
        Criterion {
            id: 4,
            name: "theta inversion residual <= 1e-12 on 40-point grid, j <= 5",
            limit: Duration::from_secs(10),
            run: || suite(Suite::Lemma1),
        },
        Criterion {
            id: 5,
            name: "Mellin transform of psi_j matches p_j(s) completed zeta, 1e-8",
            limit: Duration::from_secs(30),
            run: || {
                suite(Suite::Mellin)
                    .into_iter()
                    .filter(|c| c.key.starts_with("psi"))
                    .collect()
            },
        },
        Criterion {
            id: 6,
            name: "real split point independence and agreement with xi, 1e-8",
            limit: Duration::from_secs(60),
            run: || suite(Suite::Prop3),
        },
        Criterion {
            id: 7,
            name: "complex split forms (i)/(ii) agree with xi on |b| = 1, 1e-8",
            limit: Duration::from_secs(60),
            run: || suite(Suite::Prop4),
        },
        Criterion {
            id: 8,
            name: "special values: exact rationals vs floating evaluation, 1e-12",
            limit: Duration::from_secs(1),
            run: || suite(Suite::SpecialValues),
        },
        Criterion {
            id: 9,
            name: "derivative at zero: both closed forms and the s -> 0 limit",
            limit: Duration::from_secs(1),
            run: || suite(Suite::Eq14),
        },
        Criterion {
            id: 10,
            name: "odd/even decomposition near x = i, 1e-10",
            limit: Duration::from_secs(5),
            run: || suite(Suite::Eq24),
        },
        Criterion {
            id: 11,
            name: "first xi zero bracketed in (14.0, 14.3); split forms vanish there",
            limit: Duration::from_secs(120),
            run: || suite(Suite::XiZero),
        },
        Criterion {
            id: 12,
            name: "exactly one sign convention satisfies the Mellin identity",
            limit: Duration::from_secs(30),
            run: || vec![convention_case(&QuadratureConfig::default())],
        },
    ]
}

fn main() -> ExitCode {
    let mut all_ok = true;
    for c in criteria() {
        let start = Instant::now();
        let cases = (c.run)();
        let elapsed = start.elapsed();
        let failures: Vec<&CaseResult> = cases.iter().filter(|r| !r.passed).collect();
        let in_time = elapsed <= c.limit;
        let ok = !cases.is_empty() && failures.is_empty() && in_time;
        all_ok &= ok;
        let worst = cases
            .iter()
            .max_by(|a, b| (a.measured / a.tolerance).total_cmp(&(b.measured / b.tolerance)));
        let worst = worst.map_or(String::from("no cases"), |w| {
            format!("worst {} = {:.3e} (tol {:.0e})", w.key, w.measured, w.tolerance)
        });
        println!(
            "{} [{:>2}] {} | {} cases, {worst}, {:.2?} (limit {:?})",
            if ok { "PASS" } else { "FAIL" },
            c.id,
            c.name,
            cases.len(),
            elapsed,
            c.limit,
        );
        if c.id == 12 {
            if let Some(note) = cases.first().and_then(|r| r.note.as_ref()) {
                println!("      convention {note}");
            }
        }
        if !in_time {
            println!("      over time limit");
        }
        for f in failures {
            println!(
                "      {}: {:.3e} > {:.0e}{}",
                f.key,
                f.measured,
                f.tolerance,
                f.note.as_ref().map(|n| format!(" ({n})")).unwrap_or_default()
            );
        }
    }
    if all_ok {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
