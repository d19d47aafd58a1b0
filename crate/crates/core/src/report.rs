//! JSON code reports.

use serde::{Deserialize, Serialize};

use crate::codes::GraphCode;
use crate::distance::Distance;
use crate::error::{Error, Result};
use crate::graphs::Graph;
use crate::stabilizer::StabilizerGroup;
use crate::zmod::ModTuple;

pub const TOOL_VERSION: &str = env!("CARGO_PKG_VERSION");

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct StabilizerSection {
    pub order: u128,
    /// False when only generators are listed.
    pub enumerated: bool,
    pub tuples: Vec<String>,
    pub paulis: Vec<String>,
}

/// A search or construction result. Codewords are base-D digit strings with
/// vertex 1 leftmost.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct CodeReport {
    pub tool_version: String,
    pub n: usize,
    #[serde(rename = "D")]
    pub d: u32,
    pub delta: u32,
    #[serde(rename = "K")]
    pub k: usize,
    /// `None` when above the table cap used for the run.
    pub diagonal_distance: Option<u32>,
    pub graph: Vec<Vec<u32>>,
    pub codewords: Vec<String>,
    pub additive: bool,
    pub generators: Vec<String>,
    pub stabilizer: Option<StabilizerSection>,
    pub qs_bound: u128,
    pub qs_saturated: bool,
    pub exhaustive: bool,
    pub elapsed_seconds: f64,
    /// Why no code was produced (`K = 0`).
    pub reason: Option<String>,
}

fn digits(t: &ModTuple) -> Result<String> {
    t.to_digit_string()
}

impl CodeReport {
    pub fn from_code(
        code: &GraphCode,
        diagonal: Distance,
        stab: Option<&StabilizerGroup>,
        elapsed_seconds: f64,
    ) -> Result<Self> {
        let generators = match code.generators() {
            Some(g) => g.rows().iter().map(digits).collect::<Result<_>>()?,
            None => vec![],
        };
        let stabilizer = match stab {
            Some(s) => Some(StabilizerSection {
                order: s.order(),
                enumerated: s.enumerated(),
                tuples: s.members().iter().map(|(t, _)| digits(t)).collect::<Result<_>>()?,
                paulis: s.members().iter().map(|(_, p)| p.to_string()).collect(),
            }),
            None => None,
        };
        Ok(Self {
            tool_version: TOOL_VERSION.to_string(),
            n: code.n(),
            d: code.modulus(),
            delta: code.delta(),
            k: code.k(),
            diagonal_distance: diagonal.finite(),
            graph: code.graph().rows(),
            codewords: code.codewords().iter().map(digits).collect::<Result<_>>()?,
            additive: code.additive(),
            generators,
            stabilizer,
            qs_bound: code.qs_bound(),
            qs_saturated: code.qs_saturated(),
            exhaustive: code.exhaustive(),
            elapsed_seconds,
            reason: None,
        })
    }

    /// A `K = 0` report for a refused search.
    pub fn refused(g: &Graph, delta: u32, diagonal: Distance, reason: &str, elapsed_seconds: f64) -> Self {
        let qs_bound = crate::codes::qs_bound(g.n(), delta, g.modulus());
        Self {
            tool_version: TOOL_VERSION.to_string(),
            n: g.n(),
            d: g.modulus(),
            delta,
            k: 0,
            diagonal_distance: diagonal.finite(),
            graph: g.rows(),
            codewords: vec![],
            additive: false,
            generators: vec![],
            stabilizer: None,
            qs_bound,
            qs_saturated: qs_bound == 0,
            exhaustive: true,
            elapsed_seconds,
            reason: Some(reason.to_string()),
        }
    }

    pub fn to_json(&self) -> Result<String> {
        serde_json::to_string_pretty(self).map_err(|e| Error::InvalidArgument(format!("report serialization: {e}")))
    }

    pub fn from_json(text: &str) -> Result<Self> {
        serde_json::from_str(text).map_err(|e| Error::InvalidArgument(format!("bad report: {e}")))
    }

    pub fn graph(&self) -> Result<Graph> {
        Graph::from_matrix(self.d, &self.graph)
    }

    /// Rebuilds the code; fails for `K = 0` reports.
    pub fn to_code(&self) -> Result<GraphCode> {
        if self.codewords.is_empty() {
            return Err(Error::InvalidArgument(format!(
                "report holds no code ({})",
                self.reason.as_deref().unwrap_or("empty codeword list")
            )));
        }
        if self.codewords.len() != self.k {
            return Err(Error::InvalidArgument(format!(
                "K = {} but {} codewords listed",
                self.k,
                self.codewords.len()
            )));
        }
        let g = self.graph()?;
        if g.n() != self.n {
            return Err(Error::InvalidArgument(format!("n = {} but the graph has {} vertices", self.n, g.n())));
        }
        let words =
            self.codewords.iter().map(|s| ModTuple::from_digit_string(self.d, s)).collect::<Result<Vec<_>>>()?;
        GraphCode::new(g, self.delta, words, self.exhaustive)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graphs::{build_family, Family, FamilyOptions};
    use crate::stabilizer::stabilizer_subgroup;

    fn rep5() -> GraphCode {
        let g = build_family(Family::Cycle, 5, 2, FamilyOptions::default()).unwrap();
        let w = ["00000", "11111"].iter().map(|s| ModTuple::from_digit_string(2, s).unwrap()).collect();
        GraphCode::new(g, 3, w, true).unwrap()
    }

    #[test]
    fn round_trip() {
        let code = rep5();
        let stab = stabilizer_subgroup(&code).unwrap();
        let r = CodeReport::from_code(&code, Distance::Finite(3), Some(&stab), 0.1 + 0.2).unwrap();
        let text = r.to_json().unwrap();
        let back = CodeReport::from_json(&text).unwrap();
        assert_eq!(back, r);
        assert_eq!(back.to_json().unwrap(), text);
        assert_eq!(back.to_code().unwrap(), code);
        assert_eq!(back.stabilizer.unwrap().order, 16);
        assert!(text.contains("\"K\": 2"));
    }

    #[test]
    fn refused_reports() {
        let g = build_family(Family::Cycle, 4, 2, FamilyOptions::default()).unwrap();
        let r = CodeReport::refused(&g, 3, Distance::Finite(2), "diagonal-distance", 0.0);
        assert_eq!(r.k, 0);
        assert!(r.to_code().is_err());
        assert_eq!(CodeReport::from_json(&r.to_json().unwrap()).unwrap(), r);
    }
}
