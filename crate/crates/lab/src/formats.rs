//! File formats for single objects: graph samples, empirical spectra and
//! exact moment sequences.

use std::io::{BufRead, BufReader, Read, Write};

use rgspectra_core::freeconv::MomentSequence;
use rgspectra_core::rgraph::GraphSample;
use rgspectra_core::specdist::EmpiricalDist;
use serde::{Deserialize, Serialize};

use crate::error::{LabError, Result};

/// A graph stored by its generator inputs. `edge_count` guards against a
/// generator change silently producing a different graph.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct GraphRecord {
    pub n: usize,
    pub p: f64,
    pub seed: u64,
    pub edge_count: usize,
}

impl GraphRecord {
    pub fn from_sample(g: &GraphSample) -> Result<Self> {
        let seed = g.seed().ok_or_else(|| {
            LabError::Schema("graph was not sampled from a seed and cannot be stored".into())
        })?;
        Ok(GraphRecord {
            n: g.n(),
            p: g.p(),
            seed,
            edge_count: g.edge_count(),
        })
    }

    /// Regenerates the graph and checks its edge count.
    pub fn rebuild(&self) -> Result<GraphSample> {
        let g = GraphSample::sample(self.n, self.p, self.seed)?;
        if g.edge_count() != self.edge_count {
            return Err(LabError::Schema(format!(
                "regenerated graph has {} edges, record says {}",
                g.edge_count(),
                self.edge_count
            )));
        }
        Ok(g)
    }
}

pub fn write_graph<W: Write>(g: &GraphSample, mut w: W) -> Result<()> {
    serde_json::to_writer(&mut w, &GraphRecord::from_sample(g)?)?;
    writeln!(w).map_err(|e| LabError::io("<graph>", e))
}

pub fn read_graph<R: Read>(r: R) -> Result<GraphSample> {
    let rec: GraphRecord = serde_json::from_reader(r)?;
    rec.rebuild()
}

/// One value per line, 17 significant digits.
pub fn write_esd<W: Write>(e: &EmpiricalDist, mut w: W) -> Result<()> {
    for x in e.samples() {
        writeln!(w, "{x:.16e}").map_err(|err| LabError::io("<esd>", err))?;
    }
    Ok(())
}

pub fn read_esd<R: Read>(r: R) -> Result<EmpiricalDist> {
    let mut samples = Vec::new();
    for (i, line) in BufReader::new(r).lines().enumerate() {
        let line = line.map_err(|e| LabError::io("<esd>", e))?;
        let s = line.trim();
        if s.is_empty() {
            continue;
        }
        samples.push(
            s.parse()
                .map_err(|_| LabError::Schema(format!("line {}: bad value `{s}`", i + 1)))?,
        );
    }
    Ok(EmpiricalDist::from_samples(samples)?)
}

/// `[m1, m2, ...]` as `"num/den"` strings; `m0 = 1` is implicit.
pub fn write_moments<W: Write>(m: &MomentSequence, mut w: W) -> Result<()> {
    let strings: Vec<String> = m
        .as_slice()
        .iter()
        .map(|q| format!("{}/{}", q.numer(), q.denom()))
        .collect();
    serde_json::to_writer(&mut w, &strings)?;
    writeln!(w).map_err(|e| LabError::io("<moments>", e))
}

pub fn read_moments<R: Read>(r: R) -> Result<MomentSequence> {
    let strings: Vec<String> = serde_json::from_reader(r)?;
    let values = strings
        .iter()
        .map(|s| {
            s.parse()
                .map_err(|_| LabError::Schema(format!("bad rational `{s}`")))
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(MomentSequence::new(values)?)
}
