use crate::config::ExperimentKind;
use crate::error::{LabError, Result};

/// One Monte Carlo trial: provenance, named statistics and named verdicts.
///
/// Statistic and verdict names are fixed per experiment kind and kept in
/// insertion order, which is also the CSV column order.
#[derive(Debug, Clone, PartialEq)]
pub struct TrialRecord {
    pub kind: ExperimentKind,
    pub n: usize,
    pub p: f64,
    pub trial: usize,
    pub seed: u64,
    pub measured: Vec<(String, f64)>,
    pub verdicts: Vec<(String, bool)>,
}

impl TrialRecord {
    pub fn new(kind: ExperimentKind, n: usize, p: f64, trial: usize, seed: u64) -> Self {
        TrialRecord {
            kind,
            n,
            p,
            trial,
            seed,
            measured: Vec::new(),
            verdicts: Vec::new(),
        }
    }

    /// Adds a statistic; non-finite values are rejected.
    pub fn measure(&mut self, name: &'static str, value: f64) -> Result<&mut Self> {
        if !value.is_finite() {
            return Err(LabError::NonFinite {
                name,
                n: self.n,
                p: self.p,
                trial: self.trial,
            });
        }
        self.measured.push((name.to_string(), value));
        Ok(self)
    }

    pub fn verdict(&mut self, name: &'static str, value: bool) -> &mut Self {
        self.verdicts.push((name.to_string(), value));
        self
    }

    pub fn get(&self, name: &str) -> Option<f64> {
        self.measured
            .iter()
            .find(|(k, _)| k == name)
            .map(|(_, v)| *v)
    }

    pub fn verdict_of(&self, name: &str) -> Option<bool> {
        self.verdicts
            .iter()
            .find(|(k, _)| k == name)
            .map(|(_, v)| *v)
    }

    /// Every verdict holds.
    pub fn passed(&self) -> bool {
        self.verdicts.iter().all(|(_, v)| *v)
    }
}
