//! Machine- and human-readable run reports. Both forms are printed from the
//! same struct, so numeric fields always agree.

use std::path::Path;
use std::time::Instant;

use serde::Serialize;
use sha2::{Digest, Sha256};

#[derive(Serialize)]
pub struct InputDigest {
    pub path: String,
    pub sha256: String,
}

#[derive(Serialize)]
pub struct CountRow {
    pub key: String,
    pub value: i64,
}

#[derive(Serialize)]
pub struct RunReport {
    pub command: String,
    pub inputs: Vec<InputDigest>,
    pub verdict: String,
    pub witnesses: Vec<String>,
    pub counts: Vec<CountRow>,
    pub timing_ms: u128,
    pub exit_code: u8,
    #[serde(skip)]
    started: Instant,
}

impl RunReport {
    pub fn new(command: impl Into<String>) -> RunReport {
        RunReport {
            command: command.into(),
            inputs: Vec::new(),
            verdict: String::new(),
            witnesses: Vec::new(),
            counts: Vec::new(),
            timing_ms: 0,
            exit_code: 0,
            started: Instant::now(),
        }
    }

    pub fn input(&mut self, path: &Path) -> std::io::Result<()> {
        let bytes = std::fs::read(path)?;
        self.inputs.push(InputDigest {
            path: path.display().to_string(),
            sha256: hex::encode(Sha256::digest(&bytes)),
        });
        Ok(())
    }

    pub fn witness(&mut self, witness: impl Into<String>) {
        self.witnesses.push(witness.into());
    }

    pub fn count(&mut self, key: impl Into<String>, value: i64) {
        self.counts.push(CountRow {
            key: key.into(),
            value,
        });
    }

    pub fn finish(&mut self, verdict: impl Into<String>, exit_code: u8) {
        self.verdict = verdict.into();
        self.exit_code = exit_code;
        self.timing_ms = self.started.elapsed().as_millis();
    }

    pub fn print(&self, json: bool) {
        if json {
            println!("{}", serde_json::to_string_pretty(self).expect("report serializes"));
            return;
        }
        println!("command: {}", self.command);
        for input in &self.inputs {
            println!("input:   {} sha256:{}", input.path, input.sha256);
        }
        for row in &self.counts {
            println!("count:   {} = {}", row.key, row.value);
        }
        for witness in &self.witnesses {
            println!("witness: {witness}");
        }
        println!("verdict: {}", self.verdict);
        println!("time:    {} ms", self.timing_ms);
    }
}
