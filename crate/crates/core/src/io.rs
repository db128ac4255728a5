//! JSON file formats.
//!
//! Complex numbers are `[re, im]` pairs and function vectors are listed in
//! row-major element order. Floats are written in shortest round-trip decimal
//! form, so values survive a write/read cycle bit for bit. Non-finite values
//! are rejected in both directions.
//!
//! ```json
//! {"group": {"orders": [2]}, "side": "dual", "values": [[1.0, 0.0], [1.0, 0.0]]}
//! ```

use std::fs;
use std::path::Path;

use num_complex::Complex64;
use serde::de::DeserializeOwned;
use serde::{Deserialize, Serialize};

use crate::characterize::{Diagnostics, Form, HypothesisReport, MatrixForm, Operator, RecoveryReport};
use crate::group::{is_automorphism, Automorphism, Group, GroupRecord};
use crate::transform::{GFunction, Side};
use crate::{Error, Result, VERSION};

pub const TOOL_NAME: &str = "abfourier";

type Pair = [f64; 2];

fn to_pair(v: Complex64) -> Result<Pair> {
    if v.re.is_finite() && v.im.is_finite() {
        Ok([v.re, v.im])
    } else {
        Err(Error::Format(format!("non-finite value {v}")))
    }
}

fn from_pair(p: &Pair) -> Result<Complex64> {
    if p[0].is_finite() && p[1].is_finite() {
        Ok(Complex64::new(p[0], p[1]))
    } else {
        Err(Error::Format(format!("non-finite value {p:?}")))
    }
}

fn to_pairs(values: &[Complex64]) -> Result<Vec<Pair>> {
    values.iter().map(|&v| to_pair(v)).collect()
}

fn from_pairs(pairs: &[Pair]) -> Result<Vec<Complex64>> {
    pairs.iter().map(from_pair).collect()
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct FunctionFile {
    pub group: GroupRecord,
    pub side: Side,
    pub values: Vec<Pair>,
}

impl FunctionFile {
    pub fn from_function(f: &GFunction) -> Result<Self> {
        Ok(FunctionFile {
            group: f.group().record(),
            side: f.side(),
            values: to_pairs(f.values())?,
        })
    }

    pub fn to_function(&self) -> Result<GFunction> {
        let group = Group::try_from(self.group.clone())?;
        GFunction::new(&group, self.side, from_pairs(&self.values)?)
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct OperatorFile {
    pub group: GroupRecord,
    pub input_side: Side,
    pub output_side: Side,
    pub conjugate_input: bool,
    /// `matrix[row][col]`
    pub matrix: Vec<Vec<Pair>>,
}

impl OperatorFile {
    pub fn from_matrix(group: &Group, input_side: Side, output_side: Side, matrix: &MatrixForm) -> Result<Self> {
        let rows = (0..matrix.dim()).map(|r| to_pairs(matrix.row(r))).collect::<Result<_>>()?;
        Ok(OperatorFile {
            group: group.record(),
            input_side,
            output_side,
            conjugate_input: matrix.conjugate_input(),
            matrix: rows,
        })
    }

    /// Serializes an operator that carries a matrix form.
    pub fn from_operator(op: &Operator) -> Result<Self> {
        let matrix = op
            .matrix()
            .ok_or_else(|| Error::Format("operator has no matrix form".into()))?;
        Self::from_matrix(op.group(), op.input_side(), op.output_side(), matrix)
    }

    pub fn matrix_form(&self) -> Result<MatrixForm> {
        let n = self.matrix.len();
        let mut entries = Vec::with_capacity(n * n);
        for (r, row) in self.matrix.iter().enumerate() {
            if row.len() != n {
                return Err(Error::Format(format!("matrix row {r} has {} entries, expected {n}", row.len())));
            }
            entries.extend(from_pairs(row)?);
        }
        MatrixForm::new(n, entries, self.conjugate_input)
    }

    pub fn to_operator(&self) -> Result<Operator> {
        let group = Group::try_from(self.group.clone())?;
        Operator::from_matrix(&group, self.input_side, self.output_side, self.matrix_form()?)
    }
}

/// Ground truth written next to a generated operator.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct TruthFile {
    pub group: GroupRecord,
    pub form: Form,
    pub psi: Vec<usize>,
    pub conjugation: bool,
    pub seed: u64,
}

impl TruthFile {
    pub fn automorphism(&self) -> Result<Automorphism> {
        let group = Group::try_from(self.group.clone())?;
        Automorphism::from_perm(&group, self.psi.clone())
    }
}

/// Outcome of a recovery, with the hypothesis check when one was run.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ReportFile {
    pub tool: String,
    pub version: String,
    pub seed: u64,
    pub group: GroupRecord,
    pub psi: Vec<usize>,
    pub conjugation: bool,
    pub residual: f64,
    /// `[α, m(α)]` pairs
    pub m_samples: Vec<[Pair; 2]>,
    pub diagnostics: Diagnostics,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub hypotheses: Option<HypothesisReport>,
}

impl ReportFile {
    pub fn from_report(report: &RecoveryReport, hypotheses: Option<HypothesisReport>) -> Result<Self> {
        Ok(ReportFile {
            tool: TOOL_NAME.into(),
            version: VERSION.into(),
            seed: report.seed,
            group: report.psi.group().record(),
            psi: report.psi.perm().to_vec(),
            conjugation: report.conjugation,
            residual: report.residual,
            m_samples: report
                .m_samples
                .iter()
                .map(|&(a, m)| Ok([to_pair(a)?, to_pair(m)?]))
                .collect::<Result<_>>()?,
            diagnostics: report.diagnostics.clone(),
            hypotheses,
        })
    }

    /// Rebuilds the report, validating that `psi` is an automorphism.
    pub fn to_report(&self) -> Result<RecoveryReport> {
        let group = Group::try_from(self.group.clone())?;
        if !is_automorphism(&self.psi, &group)? {
            return Err(Error::Format("psi is not an automorphism".into()));
        }
        Ok(RecoveryReport {
            psi: Automorphism::from_perm_unchecked(&group, self.psi.clone()),
            conjugation: self.conjugation,
            residual: self.residual,
            m_samples: self
                .m_samples
                .iter()
                .map(|[a, m]| Ok((from_pair(a)?, from_pair(m)?)))
                .collect::<Result<_>>()?,
            diagnostics: self.diagnostics.clone(),
            seed: self.seed,
        })
    }
}

pub fn read_json<T: DeserializeOwned>(path: impl AsRef<Path>) -> Result<T> {
    let text = fs::read_to_string(path.as_ref())?;
    serde_json::from_str(&text).map_err(|e| Error::Format(format!("{}: {e}", path.as_ref().display())))
}

pub fn write_json<T: Serialize>(path: impl AsRef<Path>, value: &T) -> Result<()> {
    let mut text = serde_json::to_string(value)?;
    text.push('\n');
    fs::write(path, text)?;
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::characterize::{build_reference_operator, recover, RecoverOptions};
    use crate::random::{random_function, seeded_rng};
    use crate::random_automorphism;

    #[test]
    fn function_file_layout() {
        let g = Group::new(&[2]).unwrap();
        let f = GFunction::delta(&g, 0).fft_forward().unwrap();
        let text = serde_json::to_string(&FunctionFile::from_function(&f).unwrap()).unwrap();
        assert_eq!(text, r#"{"group":{"orders":[2]},"side":"dual","values":[[1.0,0.0],[1.0,0.0]]}"#);
    }

    #[test]
    fn function_values_round_trip_bit_exactly() {
        let g = Group::new(&[3, 7]).unwrap();
        let f = random_function(&g, Side::Primal, &mut seeded_rng(4)).scale(Complex64::new(1.0 / 3.0, 1e-300));
        let text = serde_json::to_string(&FunctionFile::from_function(&f).unwrap()).unwrap();
        let back: FunctionFile = serde_json::from_str(&text).unwrap();
        assert_eq!(back.to_function().unwrap(), f);
    }

    #[test]
    fn rejects_malformed_files() {
        let wrong_len = r#"{"group":{"orders":[3]},"side":"primal","values":[[1,0]]}"#;
        let file: FunctionFile = serde_json::from_str(wrong_len).unwrap();
        assert!(file.to_function().is_err());
        let bad_group = r#"{"group":{"orders":[0]},"side":"primal","values":[]}"#;
        let file: FunctionFile = serde_json::from_str(bad_group).unwrap();
        assert!(matches!(file.to_function(), Err(Error::InvalidGroup(_))));
        assert!(serde_json::from_str::<FunctionFile>(r#"{"group":{"orders":[1]},"side":"sideways","values":[[0,0]]}"#).is_err());
        assert!(serde_json::from_str::<FunctionFile>(r#"{"group":{"orders":[1]},"side":"primal","values":[[null,0]]}"#).is_err());

        let ragged = r#"{"group":{"orders":[2]},"input_side":"primal","output_side":"primal","conjugate_input":false,"matrix":[[[1,0],[0,0]],[[0,0]]]}"#;
        let file: OperatorFile = serde_json::from_str(ragged).unwrap();
        assert!(file.to_operator().is_err());

        let g = Group::new(&[2]).unwrap();
        let nan = GFunction::new(&g, Side::Primal, vec![Complex64::new(f64::NAN, 0.0); 2]).unwrap();
        assert!(FunctionFile::from_function(&nan).is_err());
    }

    #[test]
    fn operator_file_round_trip() {
        let g = Group::new(&[4, 2]).unwrap();
        let psi = random_automorphism(&g, 3).unwrap();
        let op = build_reference_operator(&g, &psi, true, Form::T)
            .unwrap()
            .with_captured_matrix(true)
            .unwrap();
        let file = OperatorFile::from_operator(&op).unwrap();
        let text = serde_json::to_string(&file).unwrap();
        let back: OperatorFile = serde_json::from_str(&text).unwrap();
        assert_eq!(back, file);
        let dense = back.to_operator().unwrap();
        assert_eq!(dense.matrix(), op.matrix());
    }

    #[test]
    fn report_round_trip() {
        let g = Group::new(&[6]).unwrap();
        let psi = random_automorphism(&g, 1).unwrap();
        let op = build_reference_operator(&g, &psi, false, Form::U).unwrap();
        let report = recover(&op, &RecoverOptions::default()).unwrap();
        let file = ReportFile::from_report(&report, None).unwrap();
        let text = serde_json::to_string(&file).unwrap();
        let back: ReportFile = serde_json::from_str(&text).unwrap();
        assert_eq!(back, file);
        assert_eq!(back.to_report().unwrap(), report);
        assert_eq!(back.version, VERSION);
    }
}
