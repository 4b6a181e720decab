//! JSON matrix files: `{"rows", "cols", "entries": [[[re, im], ...], ...],
//! "field": "real"|"complex", "partition": [..]}`.

use numrad_core::{BlockPartition, CMatrix, Complex64, Field};
use serde::{Deserialize, Serialize};

use crate::error::{CliError, CliResult};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum FieldTag {
    Real,
    Complex,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct MatrixDocument {
    pub rows: usize,
    pub cols: usize,
    pub entries: Vec<Vec<[f64; 2]>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub field: Option<FieldTag>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub partition: Option<Vec<usize>>,
}

impl MatrixDocument {
    pub fn parse(text: &str) -> CliResult<Self> {
        serde_json::from_str(text).map_err(|e| CliError::Parse(e.to_string()))
    }

    pub fn read(path: &std::path::Path) -> CliResult<Self> {
        let text = std::fs::read_to_string(path).map_err(|e| CliError::Io(format!("{}: {e}", path.display())))?;
        Self::parse(&text).map_err(|e| match e {
            CliError::Parse(msg) => CliError::Parse(format!("{}: {msg}", path.display())),
            other => other,
        })
    }

    pub fn from_matrix(m: &CMatrix, partition: Option<&BlockPartition>) -> Self {
        let entries = (0..m.rows())
            .map(|i| (0..m.cols()).map(|j| [m.get(i, j).re, m.get(i, j).im]).collect())
            .collect();
        Self {
            rows: m.rows(),
            cols: m.cols(),
            entries,
            field: Some(match m.field() {
                Field::Real => FieldTag::Real,
                Field::Complex => FieldTag::Complex,
            }),
            partition: partition.map(|p| p.sizes().to_vec()),
        }
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("matrix documents always serialize")
    }

    /// Validates shape, field and partition, returning the matrix.
    pub fn to_matrix(&self) -> CliResult<CMatrix> {
        if self.entries.len() != self.rows {
            return Err(CliError::Invalid(format!("expected {} rows, found {}", self.rows, self.entries.len())));
        }
        if let Some(k) = self.entries.iter().position(|r| r.len() != self.cols) {
            return Err(CliError::Invalid(format!(
                "row {k} has {} entries, expected {}",
                self.entries[k].len(),
                self.cols
            )));
        }
        let data: Vec<Complex64> = self.entries.iter().flatten().map(|e| Complex64::new(e[0], e[1])).collect();
        let field = match self.field.unwrap_or(FieldTag::Complex) {
            FieldTag::Real => Field::Real,
            FieldTag::Complex => Field::Complex,
        };
        let m = CMatrix::new(self.rows, self.cols, data, field)?;
        self.partition_for(&m)?;
        Ok(m)
    }

    fn partition_for(&self, m: &CMatrix) -> CliResult<Option<BlockPartition>> {
        let Some(sizes) = &self.partition else {
            return Ok(None);
        };
        if !m.is_square() {
            return Err(CliError::Invalid("a partition needs a square matrix".into()));
        }
        let p = BlockPartition::new(sizes.clone())?;
        p.check(m)?;
        Ok(Some(p))
    }

    pub fn partition(&self) -> CliResult<Option<BlockPartition>> {
        let m = self.to_matrix()?;
        self.partition_for(&m)
    }
}

/// Parses `2,1,3` into a partition.
pub fn parse_partition(spec: &str) -> CliResult<BlockPartition> {
    let sizes = spec
        .split(',')
        .map(|s| s.trim().parse::<usize>())
        .collect::<Result<Vec<_>, _>>()
        .map_err(|_| CliError::Usage(format!("bad partition '{spec}', expected sizes like 2,1")))?;
    Ok(BlockPartition::new(sizes)?)
}
