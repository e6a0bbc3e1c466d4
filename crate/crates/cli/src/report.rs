//! Line-oriented structured run reports: deterministic given inputs and the
//! fixed finite-field moduli, round-trippable through serialize/parse, with
//! exact rationals and integers only.

use torsion_bounds::error::Error;

/// Version string for the embedded finite-field moduli: extensions of F_p
/// are built on the lexicographically first monic irreducible polynomial of
/// each degree. Bumped only if that convention changes.
pub const MODULI_VERSION: &str = "fq-moduli/lex-first-v1";

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RunReport {
    pub command: String,
    pub moduli_version: String,
    pub inputs: Vec<(String, String)>,
    pub results: Vec<(String, String)>,
    pub elapsed_ms: u128,
}

impl RunReport {
    pub fn new(command: &str) -> Self {
        RunReport {
            command: command.to_string(),
            moduli_version: MODULI_VERSION.to_string(),
            inputs: vec![],
            results: vec![],
            elapsed_ms: 0,
        }
    }

    pub fn input(&mut self, key: &str, value: impl ToString) {
        self.inputs.push((key.to_string(), value.to_string()));
    }

    pub fn result(&mut self, key: &str, value: impl ToString) {
        self.results.push((key.to_string(), value.to_string()));
    }

    pub fn serialize(&self) -> String {
        let mut out = String::new();
        out.push_str(&format!("report {}\n", self.command));
        out.push_str(&format!("moduli-version {}\n", self.moduli_version));
        for (k, v) in &self.inputs {
            out.push_str(&format!("input {k} {v}\n"));
        }
        for (k, v) in &self.results {
            out.push_str(&format!("result {k} {v}\n"));
        }
        out.push_str(&format!("elapsed-ms {}\n", self.elapsed_ms));
        out.push_str("end-report\n");
        out
    }

    pub fn parse(text: &str) -> Result<RunReport, Error> {
        let mut lines = text.lines();
        let head = lines
            .next()
            .ok_or_else(|| Error::SpecError("empty report".into()))?;
        let command = head
            .strip_prefix("report ")
            .ok_or_else(|| Error::SpecError("missing report header".into()))?
            .to_string();
        let mut report = RunReport {
            command,
            moduli_version: String::new(),
            inputs: vec![],
            results: vec![],
            elapsed_ms: 0,
        };
        for line in lines {
            if line == "end-report" {
                return Ok(report);
            }
            let (tag, rest) = line
                .split_once(' ')
                .ok_or_else(|| Error::SpecError(format!("malformed report line {line:?}")))?;
            match tag {
                "moduli-version" => report.moduli_version = rest.to_string(),
                "elapsed-ms" => {
                    report.elapsed_ms = rest
                        .parse()
                        .map_err(|_| Error::SpecError("bad elapsed-ms".into()))?
                }
                "input" | "result" => {
                    let (k, v) = rest.split_once(' ').unwrap_or((rest, ""));
                    let item = (k.to_string(), v.to_string());
                    if tag == "input" {
                        report.inputs.push(item);
                    } else {
                        report.results.push(item);
                    }
                }
                _ => return Err(Error::SpecError(format!("unknown report tag {tag:?}"))),
            }
        }
        Err(Error::SpecError(
            "report not terminated by end-report".into(),
        ))
    }

    /// Human-readable rendering.
    pub fn text(&self) -> String {
        let mut out = String::new();
        out.push_str(&format!("== {} ==\n", self.command));
        for (k, v) in &self.results {
            out.push_str(&format!("{k}: {v}\n"));
        }
        out
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn round_trip() {
        let mut r = RunReport::new("classify");
        r.input("p", 5);
        r.result("curve.E1.tag", "GoodOrdinary");
        r.result("note", "value with spaces");
        r.elapsed_ms = 12;
        let parsed = RunReport::parse(&r.serialize()).unwrap();
        assert_eq!(parsed, r);
    }
}
