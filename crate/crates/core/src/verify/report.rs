use std::fmt;
use std::time::{Duration, Instant};

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::Serialize;

/// One counterexample, with enough data to replay the trial.
#[derive(Clone, Debug, Serialize, PartialEq, Eq)]
pub struct Failure {
    pub check: String,
    pub trial: u64,
    pub inputs: Vec<String>,
    pub observed: String,
    pub required: String,
}

/// Per-check counts inside a suite.
#[derive(Clone, Debug, Serialize, PartialEq, Eq)]
pub struct CheckSummary {
    pub name: String,
    pub trials: u64,
    pub passed: u64,
    pub vacuous: u64,
    pub failed: u64,
    /// Reasons for vacuous trials, deduplicated, at most a handful.
    pub vacuous_reasons: Vec<String>,
}

#[derive(Clone, Debug, Serialize)]
pub struct SuiteReport {
    pub suite: String,
    pub group: String,
    pub seed: u64,
    pub trials: u64,
    pub vacuous: u64,
    pub checks: Vec<CheckSummary>,
    pub failures: Vec<Failure>,
    /// Scope remarks that a reader should see next to the numbers.
    pub notes: Vec<String>,
    #[serde(serialize_with = "secs")]
    pub elapsed: Duration,
}

fn secs<S: serde::Serializer>(d: &Duration, s: S) -> Result<S::Ok, S::Error> {
    s.serialize_f64(d.as_secs_f64())
}

impl SuiteReport {
    pub fn new(suite: &str, group: &str, seed: u64) -> Self {
        Self {
            suite: suite.into(),
            group: group.into(),
            seed,
            trials: 0,
            vacuous: 0,
            checks: Vec::new(),
            failures: Vec::new(),
            notes: Vec::new(),
            elapsed: Duration::ZERO,
        }
    }

    pub fn passed(&self) -> bool {
        self.failures.is_empty()
    }

    pub fn check(&self, name: &str) -> Option<&CheckSummary> {
        self.checks.iter().find(|c| c.name == name)
    }

    pub fn push(&mut self, run: CheckRun) {
        self.trials += run.summary.trials;
        self.vacuous += run.summary.vacuous;
        self.checks.push(run.summary);
        self.failures.extend(run.failures);
    }

    /// Folds another report in, prefixing its check names.
    pub fn absorb(&mut self, other: SuiteReport) {
        self.trials += other.trials;
        self.vacuous += other.vacuous;
        for mut c in other.checks {
            c.name = format!("{}/{}", other.suite, c.name);
            self.checks.push(c);
        }
        for mut f in other.failures {
            f.check = format!("{}/{}", other.suite, f.check);
            self.failures.push(f);
        }
        self.notes.extend(other.notes.into_iter().map(|n| format!("{}: {n}", other.suite)));
    }
}

impl fmt::Display for SuiteReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(
            f,
            "suite {} on {} (seed {}): {} trials, {} vacuous, {} failures, {:.2}s",
            self.suite,
            self.group,
            self.seed,
            self.trials,
            self.vacuous,
            self.failures.len(),
            self.elapsed.as_secs_f64()
        )?;
        for c in &self.checks {
            write!(
                f,
                "  {:<28} {:>6} trials {:>6} pass {:>5} vacuous {:>4} fail",
                c.name, c.trials, c.passed, c.vacuous, c.failed
            )?;
            if let Some(r) = c.vacuous_reasons.first() {
                write!(f, "  ({r})")?;
            }
            writeln!(f)?;
        }
        for x in &self.failures {
            writeln!(f, "  FAIL {} trial {}: inputs [{}]", x.check, x.trial, x.inputs.join("; "))?;
            writeln!(f, "       observed {}; required {}", x.observed, x.required)?;
        }
        for n in &self.notes {
            writeln!(f, "  note: {n}")?;
        }
        Ok(())
    }
}

/// What a single trial concluded.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Outcome {
    Pass,
    /// The sampled instance did not meet the hypotheses.
    Vacuous(String),
    Fail {
        inputs: Vec<String>,
        observed: String,
        required: String,
    },
}

impl Outcome {
    pub fn fail(inputs: &[&dyn fmt::Display], observed: impl fmt::Display, required: impl fmt::Display) -> Self {
        Outcome::Fail {
            inputs: inputs.iter().map(|x| x.to_string()).collect(),
            observed: observed.to_string(),
            required: required.to_string(),
        }
    }

    pub fn vacuous(why: impl Into<String>) -> Self {
        Outcome::Vacuous(why.into())
    }

    /// `Pass` if `ok`, otherwise a failure built lazily.
    pub fn check(ok: bool, fail: impl FnOnce() -> Outcome) -> Self {
        if ok {
            Outcome::Pass
        } else {
            fail()
        }
    }
}

pub struct CheckRun {
    pub summary: CheckSummary,
    pub failures: Vec<Failure>,
}

/// Per-trial generator: a ChaCha8 stream keyed by the suite seed and check
/// name, with the trial index as stream number.
pub fn trial_rng(seed: u64, check: &str, trial: u64) -> ChaCha8Rng {
    // FNV-1a of the check name keeps checks independent under one seed.
    let mut h: u64 = 0xcbf2_9ce4_8422_2325;
    for b in check.bytes() {
        h ^= u64::from(b);
        h = h.wrapping_mul(0x0100_0000_01b3);
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed ^ h);
    rng.set_stream(trial);
    rng
}

/// Runs `trials` independent trials in parallel and merges the outcomes in
/// trial order.
pub fn run_check<F>(name: &str, trials: u64, seed: u64, f: F) -> CheckRun
where
    F: Fn(u64, &mut ChaCha8Rng) -> Outcome + Sync,
{
    let mut outcomes: Vec<(u64, Outcome)> =
        (0..trials).into_par_iter().map(|t| (t, f(t, &mut trial_rng(seed, name, t)))).collect();
    outcomes.sort_by_key(|(t, _)| *t);
    let mut summary =
        CheckSummary { name: name.into(), trials, passed: 0, vacuous: 0, failed: 0, vacuous_reasons: Vec::new() };
    let mut failures = Vec::new();
    for (trial, o) in outcomes {
        match o {
            Outcome::Pass => summary.passed += 1,
            Outcome::Vacuous(why) => {
                summary.vacuous += 1;
                if summary.vacuous_reasons.len() < 4 && !summary.vacuous_reasons.contains(&why) {
                    summary.vacuous_reasons.push(why);
                }
            }
            Outcome::Fail { inputs, observed, required } => {
                summary.failed += 1;
                failures.push(Failure { check: name.into(), trial, inputs, observed, required });
            }
        }
    }
    CheckRun { summary, failures }
}

/// Times `body`, which fills the report.
pub fn timed(suite: &str, group: &str, seed: u64, body: impl FnOnce(&mut SuiteReport)) -> SuiteReport {
    let start = Instant::now();
    let mut r = SuiteReport::new(suite, group, seed);
    body(&mut r);
    r.elapsed = start.elapsed();
    r
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::Rng;

    #[test]
    fn deterministic_and_sorted() {
        let run = |seed| {
            run_check("demo", 50, seed, |t, rng| {
                let x: u32 = rng.gen_range(0..10);
                match (t % 7, x) {
                    (0, _) => Outcome::vacuous("every seventh"),
                    (_, 0) => Outcome::fail(&[&t], x, "nonzero"),
                    _ => Outcome::Pass,
                }
            })
        };
        let (a, b) = (run(3), run(3));
        assert_eq!(a.summary, b.summary);
        assert_eq!(a.failures, b.failures);
        assert_eq!(a.summary.vacuous, 8);
        assert_eq!(a.summary.passed + a.summary.vacuous + a.summary.failed, 50);
        assert!(a.failures.windows(2).all(|w| w[0].trial < w[1].trial));
    }
}
