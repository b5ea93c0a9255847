use serde::Serialize;
use serde_json::Value;

use crate::config::RunConfig;

/// Output of one subcommand. `text` is the human rendering; the JSON form
/// is `{config, suite, results, discrepancies}`.
#[derive(Debug, Default)]
pub struct Report {
    pub suite: String,
    pub results: Vec<Value>,
    pub discrepancies: Vec<String>,
    pub text: String,
}

#[derive(Serialize)]
struct Envelope<'a> {
    config: &'a RunConfig,
    suite: &'a str,
    results: &'a [Value],
    discrepancies: &'a [String],
}

impl Report {
    pub fn new(suite: impl Into<String>) -> Self {
        Self { suite: suite.into(), ..Self::default() }
    }

    pub fn result(&mut self, v: impl Serialize) {
        self.results.push(serde_json::to_value(v).expect("serialisable result"));
    }

    pub fn line(&mut self, s: impl AsRef<str>) {
        self.text.push_str(s.as_ref());
        self.text.push('\n');
    }

    pub fn discrepancy(&mut self, s: impl Into<String>) {
        self.discrepancies.push(s.into());
    }

    pub fn check(&mut self, ok: bool, msg: impl FnOnce() -> String) {
        if !ok {
            self.discrepancy(msg());
        }
    }

    pub fn render(&self, cfg: &RunConfig) -> String {
        if cfg.json() {
            let env = Envelope {
                config: cfg,
                suite: &self.suite,
                results: &self.results,
                discrepancies: &self.discrepancies,
            };
            let mut s = serde_json::to_string_pretty(&env).expect("serialisable report");
            s.push('\n');
            s
        } else {
            let mut s = self.text.clone();
            if self.discrepancies.is_empty() {
                s.push_str("ok: no discrepancies\n");
            } else {
                for d in &self.discrepancies {
                    s.push_str(&format!("DISCREPANCY: {d}\n"));
                }
            }
            s
        }
    }
}
