//! Acceptance gate: runs every advertised capability end to end, one line
//! per criterion, and exits nonzero if any of them fails or overruns its
//! time budget.  Most criteria drive the installed binary exactly the way
//! a user would; the last one exercises the library directly.

use std::process::Command;
use std::time::{Duration, Instant};

use confmat_core::catalog;
use confmat_core::config::{direct_sum_jacobian_check, direct_sum_psi_check};
use confmat_core::groebner::GbOptions;
use serde_json::Value;

fn binary() -> &'static str {
    env!("CARGO_BIN_EXE_confmat")
}

/// Runs the binary; returns (exit code, parsed stdout JSON).
fn run(args: &[&str]) -> Result<(i32, Value), String> {
    let output = Command::new(binary())
        .args(args)
        .env_remove("CONFMAT_FIELD")
        .output()
        .map_err(|e| format!("spawning confmat: {e}"))?;
    let code = output.status.code().unwrap_or(-1);
    let stdout = String::from_utf8_lossy(&output.stdout);
    let value = if stdout.trim().is_empty() {
        Value::Null
    } else {
        serde_json::from_str(&stdout).map_err(|e| format!("non-JSON output: {e}\n{stdout}"))?
    };
    Ok((code, value))
}

/// Runs a check subcommand and asserts exit 0 with every report passing;
/// returns the reports for further scrutiny.
fn passing_check(args: &[&str]) -> Result<Vec<Value>, String> {
    let (code, value) = run(args)?;
    if code != 0 {
        return Err(format!("`{}` exited {code}", args.join(" ")));
    }
    let reports = value
        .as_array()
        .ok_or_else(|| "check output is not an array".to_string())?
        .clone();
    for r in &reports {
        if r["status"] == "fail" {
            return Err(format!("failing report: {r}"));
        }
    }
    Ok(reports)
}

fn count_status(reports: &[Value], status: &str) -> usize {
    reports.iter().filter(|r| r["status"] == status).count()
}

struct Gate {
    failures: usize,
}

impl Gate {
    fn criterion(
        &mut self,
        number: usize,
        label: &str,
        budget: Duration,
        body: impl FnOnce() -> Result<(), String>,
    ) {
        let start = Instant::now();
        let outcome = body();
        let elapsed = start.elapsed();
        let verdict = match &outcome {
            Ok(()) if elapsed <= budget => "PASS",
            Ok(()) => "FAIL",
            Err(_) => "FAIL",
        };
        if verdict == "FAIL" {
            self.failures += 1;
        }
        print!(
            "{verdict}  criterion {number:>2}: {label} ({:.2}s, budget {}s)",
            elapsed.as_secs_f64(),
            budget.as_secs()
        );
        match outcome {
            Ok(()) if elapsed > budget => println!("  [over budget]"),
            Ok(()) => println!(),
            Err(e) => println!("\n      {e}"),
        }
    }
}

const PRISM_PSI: &str = "x1*x2*x3*x5 + x1*x2*x4*x5 + x1*x3*x4*x5 + x2*x3*x4*x5 + \
     x1*x2*x3*x6 + x1*x2*x4*x6 + x1*x3*x4*x6 + x2*x3*x4*x6 + \
     x1*x3*x5*x6 + x2*x3*x5*x6 + x1*x4*x5*x6 + x2*x4*x5*x6";

fn main() {
    let mut gate = Gate { failures: 0 };
    let secs = Duration::from_secs;

    gate.criterion(1, "prism configuration polynomial, expanded", secs(1), || {
        let (code, v) = run(&["poly", "--instance", "prism"])?;
        if code != 0 {
            return Err(format!("exit {code}"));
        }
        let got = v["polynomial"].as_str().unwrap_or_default();
        let want = PRISM_PSI.split_whitespace().collect::<Vec<_>>().join(" ");
        if got == want {
            Ok(())
        } else {
            Err(format!("polynomial mismatch:\n got {got}\nwant {want}"))
        }
    });

    gate.criterion(2, "Cauchy-Binet on catalog + 200 random", secs(30), || {
        let reports = passing_check(&["check", "cauchy-binet"])?;
        if count_status(&reports, "pass") >= 223 {
            Ok(())
        } else {
            Err(format!("only {} passing reports", count_status(&reports, "pass")))
        }
    });

    gate.criterion(3, "triangle ideals over Q and F2", secs(1), || {
        let reports = passing_check(&["check", "triangle-example107"])?;
        if count_status(&reports, "pass") == 2 {
            Ok(())
        } else {
            Err("expected a report over each field".to_string())
        }
    });

    gate.criterion(4, "codimension 3 of the submaximal minors", secs(300), || {
        let cases: [(&str, &str, i64); 6] = [
            ("prism", "Fp:101", 3),
            ("wheel3", "Fp:101", 3),
            ("wheel4", "Fp:101", 5),
            ("whirl3", "Fp:101", 3),
            ("prism", "Q", 3),
            ("wheel3", "Q", 3),
        ];
        for (name, field, dim) in cases {
            let (code, v) = run(&[
                "dim", "--ideal", "minors", "--instance", name, "--field", field,
            ])?;
            if code != 0 {
                return Err(format!("{name}/{field}: exit {code}"));
            }
            if v["codimension"] != 3 || v["dimension"] != dim {
                return Err(format!("{name}/{field}: got {v}"));
            }
        }
        Ok(())
    });

    gate.criterion(5, "whirl codimensions across characteristics", secs(300), || {
        // (field, codim of the matroid-polynomial partials ideal, #reports)
        let cases: [(&str, i64, usize); 5] = [
            ("Q", 4, 2),
            ("Fp:7", 4, 2),
            ("Fp:2", 4, 1),
            ("Fp:5", 4, 2),
            ("Fp:3", 3, 2),
        ];
        for (field, codim, n) in cases {
            let reports = passing_check(&["check", "whirl-example55", "--field", field])?;
            if reports.len() != n || count_status(&reports, "pass") != n {
                return Err(format!("{field}: unexpected reports {reports:?}"));
            }
            if reports[0]["witness"]["codimension"] != codim {
                return Err(format!("{field}: matroid side {}", reports[0]));
            }
            if n == 2 && reports[1]["witness"]["codimension"] != 3 {
                return Err(format!("{field}: configuration side {}", reports[1]));
            }
        }
        Ok(())
    });

    gate.criterion(6, "prism colon-ideal identities", secs(600), || {
        for field in ["Q", "Fp:101"] {
            let reports = passing_check(&["check", "prism-example45", "--field", field])?;
            if count_status(&reports, "pass") != 4 {
                return Err(format!("{field}: expected 4 passing colon identities"));
            }
        }
        Ok(())
    });

    gate.criterion(7, "radical cross-membership of J and M", secs(600), || {
        let reports = passing_check(&["check", "thm13-radical"])?;
        if count_status(&reports, "pass") == 4 {
            Ok(())
        } else {
            Err("expected triangle, prism, wheel, and whirl reports".to_string())
        }
    });

    gate.criterion(8, "duality with square ratios and Q witnesses", secs(60), || {
        let reports = passing_check(&["check", "duality"])?;
        if count_status(&reports, "pass") < 104 {
            return Err(format!("only {} passing reports", count_status(&reports, "pass")));
        }
        if !reports.iter().any(|r| r["witness"]["sqrt"].is_string()) {
            return Err("no square-root witness on any rational instance".to_string());
        }
        Ok(())
    });

    gate.criterion(9, "deletion-contraction everywhere", secs(60), || {
        let reports = passing_check(&["check", "deletion-contraction"])?;
        if count_status(&reports, "pass") >= 120 {
            Ok(())
        } else {
            Err(format!("only {} passing reports", count_status(&reports, "pass")))
        }
    });

    gate.criterion(10, "handle partitions, decompositions, counts", secs(60), || {
        let counts = passing_check(&["check", "handle-counts"])?;
        if count_status(&counts, "pass") < 20 {
            return Err(format!("only {} connected instances", count_status(&counts, "pass")));
        }
        let formula = passing_check(&["check", "handle-formula"])?;
        if count_status(&formula, "pass") == 0 {
            return Err("no handle-formula instances ran".to_string());
        }
        Ok(())
    });

    gate.criterion(11, "Hessian coefficient rank for generic U(2,n)", secs(10), || {
        let reports = passing_check(&["check", "hessian-rank"])?;
        if count_status(&reports, "pass") == 5 {
            Ok(())
        } else {
            Err("expected n = 4..8 reports".to_string())
        }
    });

    gate.criterion(12, "linear relation among form entries", secs(1), || {
        let reports = passing_check(&["check", "u36-relation"])?;
        if count_status(&reports, "pass") == 1 {
            Ok(())
        } else {
            Err("expected one passing report".to_string())
        }
    });

    gate.criterion(13, "quotient formula and second Kirchhoff", secs(120), || {
        let quotient = passing_check(&["check", "prop28-quotient"])?;
        if count_status(&quotient, "pass") != 100 {
            return Err(format!("quotient sweep: {} passes", count_status(&quotient, "pass")));
        }
        let second = passing_check(&["check", "prop78-second-kirchhoff"])?;
        if count_status(&second, "pass") != 11 {
            return Err(format!("second-Kirchhoff sweep: {} passes", count_status(&second, "pass")));
        }
        Ok(())
    });

    gate.criterion(14, "direct sums: product and ideal identities", secs(60), || {
        let t1 = catalog::build("triangle").map_err(|e| e.to_string())?;
        let t2 = t1
            .relabeled(vec!["x4".into(), "x5".into(), "x6".into()])
            .map_err(|e| e.to_string())?;
        direct_sum_psi_check(&t1, &t2).map_err(|e| format!("product identity: {e}"))?;
        direct_sum_jacobian_check(&t1, &t2, &GbOptions::default())
            .map_err(|e| format!("ideal identity: {e}"))?;
        Ok(())
    });

    if gate.failures > 0 {
        println!("{} criterion(s) failed", gate.failures);
        std::process::exit(1);
    }
    println!("all 14 criteria passed");
}
