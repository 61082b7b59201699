//! Command-line front end: every command prints a JSON report on stdout and
//! a short summary on stderr, and exits with 0 (pass), 1 (mathematical
//! failure or obstruction) or 2 (input error).

mod commands;

use std::path::PathBuf;
use std::time::Instant;

use clap::{Parser, Subcommand};
use serde::Serialize;
use sha2::{Digest, Sha256};

use crate::error::Error;

#[derive(Parser, Debug)]
#[command(name = "curvlift", version, about = "Exact L∞ transfer, Čech descent and torsor lifting")]
pub struct Cli {
    /// Suppress the summary on stderr.
    #[arg(long, global = true)]
    pub quiet: bool,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Subcommand, Debug, Clone)]
pub enum Command {
    /// Jacobi identity and nilpotency of a Lie algebra.
    CheckLie {
        #[arg(long)]
        lie: PathBuf,
    },
    /// Validity of an extension datum and the assembled extension algebra.
    CheckExtension {
        #[arg(long)]
        extension: PathBuf,
    },
    /// `a ∗ b = log(exp a exp b)`, cross-checked by horn filling and matrices.
    Bch {
        #[arg(long)]
        lie: PathBuf,
        #[arg(long)]
        a: String,
        #[arg(long)]
        b: String,
    },
    /// The contraction identities of the Dupont data on `Δ_n`, `n ≤ 3`.
    DupontSelftest {
        n: usize,
        /// Largest polynomial degree of the sampled forms.
        #[arg(long)]
        degree: Option<u32>,
    },
    /// Transferred structure on `C*(Δ_n) ⊗ g`: Jacobi and morphism checks.
    Transfer {
        #[arg(long)]
        lie: PathBuf,
        #[arg(long, default_value_t = 1)]
        n: usize,
        #[arg(long, default_value_t = 4)]
        bound: usize,
        #[arg(long, default_value_t = 3)]
        morphism_bound: usize,
    },
    /// Kuranishi round trips on random Maurer-Cartan elements over `Δ₁`.
    Kuranishi {
        #[arg(long)]
        lie: PathBuf,
        #[arg(long, default_value_t = 25)]
        samples: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
    },
    /// The Čech L∞ structure of a cover: Jacobi and filtration checks.
    Cech {
        #[arg(long)]
        cover: PathBuf,
        #[arg(long)]
        lie: PathBuf,
        #[arg(long, default_value_t = 3)]
        bound: usize,
    },
    /// Maurer-Cartan defect of a cocycle file read as a Čech 1-cochain.
    McCheck {
        #[arg(long)]
        cover: PathBuf,
        #[arg(long)]
        lie: PathBuf,
        #[arg(long)]
        cocycle: PathBuf,
    },
    /// Group cocycle condition, compared with the Maurer-Cartan defect.
    CocycleVerify {
        #[arg(long)]
        cover: PathBuf,
        #[arg(long)]
        lie: PathBuf,
        #[arg(long)]
        cocycle: PathBuf,
    },
    /// Applies a trivialization given by sections on the opens.
    Trivialize {
        #[arg(long)]
        cover: PathBuf,
        #[arg(long)]
        lie: PathBuf,
        #[arg(long)]
        cocycle: PathBuf,
        #[arg(long)]
        sections: PathBuf,
    },
    /// Searches for a lift across an extension, or an obstruction.
    LiftSolve {
        #[arg(long)]
        cover: PathBuf,
        #[arg(long)]
        extension: PathBuf,
        #[arg(long)]
        cocycle: PathBuf,
    },
    /// Twisted cocycle condition of a lift, compared with the curved Maurer-Cartan defect.
    LiftVerify {
        #[arg(long)]
        cover: PathBuf,
        #[arg(long)]
        extension: PathBuf,
        #[arg(long)]
        cocycle: PathBuf,
        #[arg(long)]
        lift: PathBuf,
    },
    /// Whether two lifts are related by the given sections, and the matching arrow.
    EquivVerify {
        #[arg(long)]
        cover: PathBuf,
        #[arg(long)]
        extension: PathBuf,
        #[arg(long)]
        cocycle: PathBuf,
        #[arg(long)]
        lift: PathBuf,
        #[arg(long)]
        lift2: PathBuf,
        #[arg(long)]
        sections: PathBuf,
    },
    /// Round trips of the lift correspondence on random equivalent lifts.
    BijectionTest {
        #[arg(long)]
        cover: PathBuf,
        #[arg(long)]
        extension: PathBuf,
        #[arg(long)]
        cocycle: PathBuf,
        #[arg(long, default_value_t = 3)]
        samples: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
    },
}

impl Command {
    pub fn name(&self) -> &'static str {
        match self {
            Command::CheckLie { .. } => "check-lie",
            Command::CheckExtension { .. } => "check-extension",
            Command::Bch { .. } => "bch",
            Command::DupontSelftest { .. } => "dupont-selftest",
            Command::Transfer { .. } => "transfer",
            Command::Kuranishi { .. } => "kuranishi",
            Command::Cech { .. } => "cech",
            Command::McCheck { .. } => "mc-check",
            Command::CocycleVerify { .. } => "cocycle-verify",
            Command::Trivialize { .. } => "trivialize",
            Command::LiftSolve { .. } => "lift-solve",
            Command::LiftVerify { .. } => "lift-verify",
            Command::EquivVerify { .. } => "equiv-verify",
            Command::BijectionTest { .. } => "bijection-test",
        }
    }

    fn paths(&self) -> Vec<&PathBuf> {
        match self {
            Command::CheckLie { lie } | Command::Bch { lie, .. } | Command::Transfer { lie, .. } | Command::Kuranishi { lie, .. } => vec![lie],
            Command::CheckExtension { extension } => vec![extension],
            Command::DupontSelftest { .. } => vec![],
            Command::Cech { cover, lie, .. } => vec![cover, lie],
            Command::McCheck { cover, lie, cocycle } | Command::CocycleVerify { cover, lie, cocycle } => vec![cover, lie, cocycle],
            Command::Trivialize { cover, lie, cocycle, sections } => vec![cover, lie, cocycle, sections],
            Command::LiftSolve { cover, extension, cocycle } | Command::BijectionTest { cover, extension, cocycle, .. } => vec![cover, extension, cocycle],
            Command::LiftVerify { cover, extension, cocycle, lift } => vec![cover, extension, cocycle, lift],
            Command::EquivVerify { cover, extension, cocycle, lift, lift2, sections } => vec![cover, extension, cocycle, lift, lift2, sections],
        }
    }

    /// SHA-256 over the command line and the bytes of every input file.
    pub fn digest(&self) -> String {
        let mut h = Sha256::new();
        h.update(format!("{self:?}").as_bytes());
        for p in self.paths() {
            h.update(std::fs::read(p).unwrap_or_default());
        }
        hex::encode(h.finalize())
    }
}

#[derive(Serialize, Debug, Clone, Copy, PartialEq, Eq)]
#[serde(rename_all = "lowercase")]
pub enum Verdict {
    Pass,
    Fail,
    Obstruction,
    Error,
}

#[derive(Serialize, Debug, Clone)]
pub struct Check {
    pub name: String,
    pub passed: bool,
    pub details: Vec<String>,
}

impl Check {
    /// A check that passes iff `report` is empty.
    pub fn from_report(name: &str, report: Vec<String>) -> Self {
        Check { name: name.into(), passed: report.is_empty(), details: report }
    }

    pub fn flag(name: &str, ok: bool, detail: impl Into<String>) -> Self {
        let detail = detail.into();
        Check { name: name.into(), passed: ok, details: if ok || detail.is_empty() { vec![] } else { vec![detail] } }
    }
}

/// What a command produced before the verdict is decided.
#[derive(Debug, Default)]
pub struct Outcome {
    pub checks: Vec<Check>,
    pub output: serde_json::Map<String, serde_json::Value>,
    pub obstruction: bool,
}

impl Outcome {
    pub fn put(&mut self, key: &str, value: impl Serialize) {
        self.output.insert(key.into(), serde_json::to_value(value).expect("serializable"));
    }

    pub fn check(&mut self, c: Check) {
        self.checks.push(c);
    }
}

#[derive(Serialize, Debug)]
pub struct Report {
    pub command: String,
    pub inputs_digest: String,
    pub verdict: Verdict,
    pub checks: Vec<Check>,
    pub output: serde_json::Map<String, serde_json::Value>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub error: Option<String>,
    pub timing_ms: u128,
}

impl Report {
    pub fn exit_code(&self) -> i32 {
        match self.verdict {
            Verdict::Pass => 0,
            Verdict::Fail | Verdict::Obstruction => 1,
            Verdict::Error => 2,
        }
    }

    pub fn summary(&self) -> String {
        let mut s = format!("{}: {}", self.command, format!("{:?}", self.verdict).to_lowercase());
        if let Some(e) = &self.error {
            s.push_str(&format!("\n  {e}"));
        }
        for c in &self.checks {
            s.push_str(&format!("\n  [{}] {}", if c.passed { "ok" } else { "FAIL" }, c.name));
            for d in c.details.iter().take(5) {
                s.push_str(&format!("\n      {d}"));
            }
            if c.details.len() > 5 {
                s.push_str(&format!("\n      … {} more", c.details.len() - 5));
            }
        }
        s
    }
}

/// Runs one command; never panics on bad input.
pub fn run(command: &Command) -> Report {
    let start = Instant::now();
    let result = commands::dispatch(command);
    let mut report = Report {
        command: command.name().into(),
        inputs_digest: command.digest(),
        verdict: Verdict::Pass,
        checks: vec![],
        output: Default::default(),
        error: None,
        timing_ms: 0,
    };
    match result {
        Ok(o) => {
            report.verdict = if o.obstruction {
                Verdict::Obstruction
            } else if o.checks.iter().all(|c| c.passed) {
                Verdict::Pass
            } else {
                Verdict::Fail
            };
            report.checks = o.checks;
            report.output = o.output;
        }
        Err(e) => {
            report.verdict = if e.is_input_error() { Verdict::Error } else { Verdict::Fail };
            report.error = Some(e.to_string());
        }
    }
    report.timing_ms = start.elapsed().as_millis();
    report
}

/// Parses `args`, runs the command and prints; returns the exit code.
pub fn main_with_args<I: IntoIterator<Item = String>>(args: I) -> i32 {
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { 2 } else { 0 };
            let _ = e.print();
            return code;
        }
    };
    let report = run(&cli.command);
    println!("{}", serde_json::to_string_pretty(&report).expect("report serializes"));
    if !cli.quiet {
        eprintln!("{}", report.summary());
    }
    report.exit_code()
}

pub(crate) fn input(msg: impl Into<String>) -> Error {
    Error::Input(msg.into())
}
