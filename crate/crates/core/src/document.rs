//! On-disk formats: the basis document and plain signal files.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::graph::GraphSignal;
use crate::matrix::Matrix;
use crate::select::DgftBasis;
use crate::variation::SignedIndex;
use crate::Dgft;

pub const FORMAT_TAG: &str = "dgft-basis";
pub const FORMAT_VERSION: u32 = 1;

/// Self-describing JSON document carrying the basis together with its
/// frequencies. Floats are written in shortest round-trip form, so reading a
/// document back reproduces every value exactly.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct BasisDocument {
    pub format: String,
    pub version: u32,
    pub n: usize,
    pub f_max_approx: f64,
    pub frequencies: Vec<f64>,
    /// `basis_columns[k]` is the frequency component `u_k`.
    pub basis_columns: Vec<Vec<f64>>,
    pub provenance: Vec<SignedIndex>,
    pub dispersion: f64,
    pub dispersion_complement: f64,
}

impl BasisDocument {
    pub fn from_dgft(d: &Dgft) -> Self {
        Self {
            format: FORMAT_TAG.to_string(),
            version: FORMAT_VERSION,
            n: d.basis.len(),
            f_max_approx: d.fmax.value,
            frequencies: d.basis.frequencies.clone(),
            basis_columns: d.basis.u.columns(),
            provenance: d.basis.provenance.clone(),
            dispersion: d.selection.dispersion,
            dispersion_complement: d.selection.dispersion_complement,
        }
    }

    pub fn to_json(&self) -> String {
        let mut s = serde_json::to_string_pretty(self).expect("document is always serializable");
        s.push('\n');
        s
    }

    pub fn from_json(text: &str) -> Result<Self> {
        let doc: Self =
            serde_json::from_str(text).map_err(|e| Error::MalformedDocument(e.to_string()))?;
        doc.validate()?;
        Ok(doc)
    }

    fn validate(&self) -> Result<()> {
        let bad = |m: String| Err(Error::MalformedDocument(m));
        if self.format != FORMAT_TAG {
            return bad(format!("unexpected format tag `{}`", self.format));
        }
        if self.version != FORMAT_VERSION {
            return bad(format!("unsupported version {}", self.version));
        }
        if self.frequencies.len() != self.n
            || self.basis_columns.len() != self.n
            || self.provenance.len() != self.n
        {
            return bad(format!(
                "expected {} frequencies, columns and provenance entries",
                self.n
            ));
        }
        if self.basis_columns.iter().any(|c| c.len() != self.n) {
            return bad(format!("every basis column must have {} entries", self.n));
        }
        Ok(())
    }

    pub fn to_basis(&self) -> DgftBasis {
        DgftBasis {
            u: Matrix::from_columns(&self.basis_columns),
            frequencies: self.frequencies.clone(),
            provenance: self.provenance.clone(),
            fmax: self.f_max_approx,
        }
    }
}

/// Parses a signal file: one real per line, blank lines and `#` comments
/// ignored.
pub fn parse_signal(text: &str) -> Result<GraphSignal> {
    let mut values = Vec::new();
    for (idx, raw) in text.lines().enumerate() {
        let content = raw.split('#').next().unwrap_or("").trim();
        if content.is_empty() {
            continue;
        }
        let v = content.parse::<f64>().map_err(|_| {
            Error::MalformedDocument(format!("line {}: `{content}` is not a number", idx + 1))
        })?;
        values.push(v);
    }
    Ok(GraphSignal(values))
}

/// One value per line in shortest round-trip form.
pub fn format_signal(values: &[f64]) -> String {
    values.iter().map(|v| format!("{v:?}\n")).collect()
}
