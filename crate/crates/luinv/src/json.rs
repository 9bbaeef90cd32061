//! JSON wire formats.
//!
//! Scalars travel as canonical grammar strings, so serialized values are
//! exact and byte-stable across runs. Shapes:
//!
//! - density matrix: `{"d1": 2, "d2": 3, "rows": [[{"re": "...", "im": "..."}, …], …]}`
//! - Bloch triple:   `{"m": 3, "n": 8, "u": […], "v": […], "W": [[…]]}`
//! - local unitary:  `{"d": 2, "rows": [[{"re": …, "im": …}, …], …]}`
//! - Smith form:     `{"rank": 3, "shape": [3, 8], "diagonal": ["1", "l", "l"]}`

use serde::{Deserialize, Serialize};

use crate::adjoint::{LocalUnitary, OrthogonalWitness};
use crate::basis::HermitianBasis;
use crate::bloch::{BlochTriple, DensityMatrix};
use crate::invariants::{Outcome, Verdict, Witness};
use crate::mat::Mat;
use crate::pencil::{Poly, SmithForm};
use crate::scalar::{ComplexScalar, ExactScalar};
use crate::Result;

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct EntryDto {
    pub re: String,
    pub im: String,
}

impl EntryDto {
    pub fn from_complex(z: &ComplexScalar) -> Self {
        Self {
            re: z.re.to_string(),
            im: z.im.to_string(),
        }
    }

    pub fn into_complex(&self) -> Result<ComplexScalar> {
        Ok(ComplexScalar::new(
            ExactScalar::parse(&self.re)?,
            ExactScalar::parse(&self.im)?,
        ))
    }
}

fn complex_rows(m: &Mat<ComplexScalar>) -> Vec<Vec<EntryDto>> {
    (0..m.rows())
        .map(|i| (0..m.cols()).map(|j| EntryDto::from_complex(&m[(i, j)])).collect())
        .collect()
}

fn complex_mat(rows: &[Vec<EntryDto>]) -> Result<Mat<ComplexScalar>> {
    let parsed: Result<Vec<Vec<ComplexScalar>>> = rows
        .iter()
        .map(|r| r.iter().map(EntryDto::into_complex).collect())
        .collect();
    let parsed = parsed?;
    if parsed.is_empty() || parsed.iter().any(|r| r.len() != parsed[0].len()) {
        return Err(crate::Error::InvalidInput("ragged or empty matrix rows".to_string()));
    }
    Ok(Mat::from_rows(parsed))
}

fn scalar_rows(m: &Mat<ExactScalar>) -> Vec<Vec<String>> {
    (0..m.rows())
        .map(|i| (0..m.cols()).map(|j| m[(i, j)].to_string()).collect())
        .collect()
}

fn scalar_mat(rows: &[Vec<String>]) -> Result<Mat<ExactScalar>> {
    let parsed: Result<Vec<Vec<ExactScalar>>> = rows
        .iter()
        .map(|r| r.iter().map(|s| ExactScalar::parse(s)).collect())
        .collect();
    let parsed = parsed?;
    if parsed.is_empty() || parsed.iter().any(|r| r.len() != parsed[0].len()) {
        return Err(crate::Error::InvalidInput("ragged or empty matrix rows".to_string()));
    }
    Ok(Mat::from_rows(parsed))
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct DensityDto {
    pub d1: usize,
    pub d2: usize,
    pub rows: Vec<Vec<EntryDto>>,
}

impl DensityDto {
    pub fn from_state(rho: &DensityMatrix) -> Self {
        Self {
            d1: rho.d1(),
            d2: rho.d2(),
            rows: complex_rows(rho.entries()),
        }
    }

    pub fn into_state(&self) -> Result<DensityMatrix> {
        DensityMatrix::new(self.d1, self.d2, complex_mat(&self.rows)?)
    }
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct TripleDto {
    pub m: usize,
    pub n: usize,
    pub u: Vec<String>,
    pub v: Vec<String>,
    #[serde(rename = "W")]
    pub w: Vec<Vec<String>>,
}

impl TripleDto {
    pub fn from_triple(t: &BlochTriple) -> Self {
        Self {
            m: t.m(),
            n: t.n(),
            u: t.u().iter().map(ExactScalar::to_string).collect(),
            v: t.v().iter().map(ExactScalar::to_string).collect(),
            w: scalar_rows(t.w()),
        }
    }

    pub fn into_triple(&self) -> Result<BlochTriple> {
        let u: Result<Vec<ExactScalar>> = self.u.iter().map(|s| ExactScalar::parse(s)).collect();
        let v: Result<Vec<ExactScalar>> = self.v.iter().map(|s| ExactScalar::parse(s)).collect();
        let (u, v) = (u?, v?);
        if u.len() != self.m || v.len() != self.n {
            return Err(crate::Error::InvalidInput(
                "declared (m, n) disagree with vector lengths".to_string(),
            ));
        }
        BlochTriple::new(u, v, scalar_mat(&self.w)?)
    }
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct UnitaryDto {
    pub d: usize,
    pub rows: Vec<Vec<EntryDto>>,
}

impl UnitaryDto {
    pub fn from_unitary(u: &LocalUnitary) -> Self {
        Self {
            d: u.dim(),
            rows: complex_rows(u.entries()),
        }
    }

    pub fn into_unitary(&self, backend: &crate::scalar::Backend) -> Result<LocalUnitary> {
        let m = complex_mat(&self.rows)?;
        if m.rows() != self.d {
            return Err(crate::Error::InvalidInput(
                "declared d disagrees with row count".to_string(),
            ));
        }
        LocalUnitary::new_with_backend(m, backend)
    }
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct OrthogonalDto {
    pub size: usize,
    pub rows: Vec<Vec<String>>,
}

impl OrthogonalDto {
    pub fn from_witness(o: &OrthogonalWitness) -> Self {
        Self {
            size: o.size(),
            rows: scalar_rows(o.entries()),
        }
    }

    pub fn into_witness(&self, backend: &crate::scalar::Backend) -> Result<OrthogonalWitness> {
        OrthogonalWitness::new_with_backend(scalar_mat(&self.rows)?, backend)
    }
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct SmithDto {
    pub rank: usize,
    pub shape: [usize; 2],
    pub diagonal: Vec<String>,
}

impl SmithDto {
    pub fn from_smith(s: &SmithForm) -> Self {
        Self {
            rank: s.rank,
            shape: [s.shape.0, s.shape.1],
            diagonal: s.diagonal.iter().map(Poly::to_string).collect(),
        }
    }
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct BasisDto {
    pub dim: usize,
    pub elements: Vec<Vec<Vec<EntryDto>>>,
}

impl BasisDto {
    pub fn from_basis(b: &HermitianBasis) -> Self {
        Self {
            dim: b.dim(),
            elements: b.elements().iter().map(complex_rows).collect(),
        }
    }

    pub fn into_basis(&self) -> Result<HermitianBasis> {
        let mats: Result<Vec<Mat<ComplexScalar>>> =
            self.elements.iter().map(|rows| complex_mat(rows)).collect();
        HermitianBasis::custom(mats?)
    }
}

/// Either input form accepted by the CLI: a density matrix (decomposed in
/// the standard bases) or a triple taken as-is.
#[derive(Clone, Debug, Deserialize)]
#[serde(untagged)]
pub enum StateInputDto {
    Density(DensityDto),
    Triple(TripleDto),
}

#[derive(Clone, Debug, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum WitnessDto {
    TraceWord {
        word: Vec<(u8, u8)>,
        lhs: String,
        rhs: String,
    },
    SpechtWord {
        word: String,
        lhs: String,
        rhs: String,
    },
    PolyCoefficient {
        monomial: String,
        lhs: String,
        rhs: String,
    },
    SmithDiagonal {
        index: usize,
        lhs: String,
        rhs: String,
    },
    NormMismatch {
        u1_sqr: String,
        u2_sqr: String,
        v1_sqr: String,
        v2_sqr: String,
    },
}

impl WitnessDto {
    pub fn from_witness(w: &Witness) -> Self {
        match w {
            Witness::TraceWord { word, lhs, rhs } => WitnessDto::TraceWord {
                word: word.pairs().to_vec(),
                lhs: lhs.clone(),
                rhs: rhs.clone(),
            },
            Witness::SpechtWord { word, lhs, rhs } => WitnessDto::SpechtWord {
                word: word.clone(),
                lhs: lhs.clone(),
                rhs: rhs.clone(),
            },
            Witness::PolyCoefficient { monomial, lhs, rhs } => WitnessDto::PolyCoefficient {
                monomial: monomial.clone(),
                lhs: lhs.clone(),
                rhs: rhs.clone(),
            },
            Witness::SmithDiagonal { index, lhs, rhs } => WitnessDto::SmithDiagonal {
                index: *index,
                lhs: lhs.clone(),
                rhs: rhs.clone(),
            },
            Witness::NormMismatch {
                u1_sqr,
                u2_sqr,
                v1_sqr,
                v2_sqr,
            } => WitnessDto::NormMismatch {
                u1_sqr: u1_sqr.clone(),
                u2_sqr: u2_sqr.clone(),
                v1_sqr: v1_sqr.clone(),
                v2_sqr: v2_sqr.clone(),
            },
        }
    }
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct VerdictDto {
    pub criterion: String,
    pub outcome: String,
    pub bound: Option<usize>,
    pub witness: Option<WitnessDto>,
}

impl VerdictDto {
    pub fn from_verdict(v: &Verdict) -> Self {
        let (outcome, bound, witness) = match &v.outcome {
            Outcome::Inequivalent(w) => {
                ("inequivalent".to_string(), None, Some(WitnessDto::from_witness(w)))
            }
            Outcome::Consistent { bound } => ("consistent".to_string(), *bound, None),
            Outcome::Equivalent => ("equivalent".to_string(), None, None),
        };
        Self {
            criterion: v.criterion.clone(),
            outcome,
            bound,
            witness,
        }
    }
}

/// Check report without timings: timing jitter would break the
/// byte-identical-output contract of `--json`.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct ReportDto {
    pub d1: usize,
    pub d2: usize,
    pub backend: String,
    pub max_word_len: usize,
    pub overall: String,
    pub summary: String,
    pub verdicts: Vec<VerdictDto>,
}

impl ReportDto {
    pub fn from_report(r: &crate::check::CheckReport) -> Self {
        Self {
            d1: r.d1,
            d2: r.d2,
            backend: match r.backend {
                crate::scalar::Backend::Exact => "exact".to_string(),
                crate::scalar::Backend::Float(_) => "float".to_string(),
            },
            max_word_len: r.max_word_len,
            overall: r.overall.as_str().to_string(),
            summary: r.summary.clone(),
            verdicts: r.verdicts.iter().map(VerdictDto::from_verdict).collect(),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::Backend;
    use std::sync::Arc;

    #[test]
    fn density_roundtrip() {
        let rho = DensityMatrix::maximally_mixed(2, 3).unwrap();
        let dto = DensityDto::from_state(&rho);
        let text = serde_json::to_string(&dto).unwrap();
        let back: DensityDto = serde_json::from_str(&text).unwrap();
        assert_eq!(back.into_state().unwrap(), rho);
    }

    #[test]
    fn triple_roundtrip_uses_w_key() {
        let t = BlochTriple::new(
            vec![
                ExactScalar::parse("1/2").unwrap(),
                ExactScalar::zero(),
                ExactScalar::parse("sqrt(3)").unwrap(),
            ],
            vec![ExactScalar::zero(); 3],
            Mat::zeros(3, 3),
        )
        .unwrap();
        let dto = TripleDto::from_triple(&t);
        let text = serde_json::to_string(&dto).unwrap();
        assert!(text.contains("\"W\""));
        let back: TripleDto = serde_json::from_str(&text).unwrap();
        assert_eq!(back.into_triple().unwrap(), t);
    }

    #[test]
    fn state_input_discriminates() {
        let rho = DensityMatrix::maximally_mixed(2, 2).unwrap();
        let as_text = serde_json::to_string(&DensityDto::from_state(&rho)).unwrap();
        match serde_json::from_str::<StateInputDto>(&as_text).unwrap() {
            StateInputDto::Density(d) => assert_eq!(d.d1, 2),
            StateInputDto::Triple(_) => panic!("should parse as density"),
        }

        let b1 = HermitianBasis::gellmann(2).unwrap().into_shared();
        let t = crate::bloch::decompose(&rho, &b1, &Arc::clone(&b1)).unwrap();
        let as_text = serde_json::to_string(&TripleDto::from_triple(&t)).unwrap();
        match serde_json::from_str::<StateInputDto>(&as_text).unwrap() {
            StateInputDto::Triple(t) => assert_eq!(t.m, 3),
            StateInputDto::Density(_) => panic!("should parse as triple"),
        }
    }

    #[test]
    fn unitary_dto_validates() {
        let mut bad = Mat::<ComplexScalar>::identity(2);
        bad[(0, 0)] = ComplexScalar::from_int(2);
        let dto = UnitaryDto {
            d: 2,
            rows: super::complex_rows(&bad),
        };
        assert!(dto.into_unitary(&Backend::Exact).is_err());
    }
}
