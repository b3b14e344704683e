//! Every acceptance criterion, one PASS/FAIL line each. Criteria 1–9 run the
//! library suites; 10 drives the binary.

use std::process::{Command, ExitCode};
use std::time::Instant;

use nctorus_cli::records::Record;
use nctorus_verify::{run, CRITERIA};

const SEED: u64 = 1;

fn criterion_10() -> (bool, String) {
    let start = Instant::now();
    let out = Command::new(env!("CARGO_BIN_EXE_nctorus"))
        .args(["--format", "records", "selftest", "--seed", &SEED.to_string()])
        .output()
        .expect("binary runs");
    let seconds = start.elapsed().as_secs_f64();
    let text = String::from_utf8_lossy(&out.stdout);
    let mut roundtrip = true;
    let mut suites = 0;
    for line in text.lines().skip(1) {
        match serde_json::from_str::<Record>(line) {
            Ok(r) => {
                roundtrip &= serde_json::to_string(&r).is_ok_and(|s| s == line);
                if let Record::Suite { passed, .. } = r {
                    suites += usize::from(passed);
                }
            }
            Err(_) => roundtrip = false,
        }
    }
    let status = out.status.code();
    let ok = status == Some(0) && roundtrip && suites == CRITERIA.len() && seconds < 300.0;
    let detail = format!("exit {status:?}, {suites}/9 suites passed, records round-trip {roundtrip}, {seconds:.1} s");
    (ok, detail)
}

fn main() -> ExitCode {
    let mut all = true;
    for (id, _) in CRITERIA {
        let r = run(id, SEED).expect("known criterion");
        let verdict = if r.passed { "PASS" } else { "FAIL" };
        let detail = if r.detail.is_empty() { String::new() } else { format!(": {}", r.detail) };
        println!("{verdict} criterion {id} ({}): {} checks in {:.2} s{detail}", r.name, r.checks, r.seconds);
        all &= r.passed;
    }
    let (ok, detail) = criterion_10();
    println!("{} criterion 10 (cli): {detail}", if ok { "PASS" } else { "FAIL" });
    all &= ok;
    if all {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
