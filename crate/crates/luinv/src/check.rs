//! Criterion orchestration: runs a selected set of criteria on a pair of
//! triples in a fixed order (cheapest refutations first) and assembles a
//! report with an overall verdict.

use std::fmt;
use std::time::{Duration, Instant};

use crate::bloch::BlochTriple;
use crate::invariants::{
    albert_check, ghs_check, norm_check, trace_identity_check, Outcome, Verdict,
};
use crate::pencil::snf_check;
use crate::scalar::Backend;
use crate::{Error, Result};

/// The five criteria, in execution order.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord)]
pub enum CriterionKind {
    Norm,
    Snf,
    Albert,
    Trace,
    Ghs,
}

impl CriterionKind {
    pub const ALL: [CriterionKind; 5] = [
        CriterionKind::Norm,
        CriterionKind::Snf,
        CriterionKind::Albert,
        CriterionKind::Trace,
        CriterionKind::Ghs,
    ];

    pub fn name(&self) -> &'static str {
        match self {
            CriterionKind::Norm => "norm",
            CriterionKind::Snf => "snf",
            CriterionKind::Albert => "albert",
            CriterionKind::Trace => "trace",
            CriterionKind::Ghs => "ghs",
        }
    }

    pub fn parse(name: &str) -> Result<Self> {
        match name.trim() {
            "norm" => Ok(CriterionKind::Norm),
            "snf" => Ok(CriterionKind::Snf),
            "albert" => Ok(CriterionKind::Albert),
            "trace" => Ok(CriterionKind::Trace),
            "ghs" => Ok(CriterionKind::Ghs),
            other => Err(Error::InvalidInput(format!(
                "unknown criterion '{other}' (expected norm, trace, albert, ghs, snf)"
            ))),
        }
    }

    /// Parses a comma-separated selection; execution order stays fixed
    /// regardless of the order given.
    pub fn parse_csv(csv: &str) -> Result<Vec<Self>> {
        let mut selected = Vec::new();
        for part in csv.split(',') {
            let k = Self::parse(part)?;
            if !selected.contains(&k) {
                selected.push(k);
            }
        }
        selected.sort();
        if selected.is_empty() {
            return Err(Error::InvalidInput("no criteria selected".to_string()));
        }
        Ok(selected)
    }
}

#[derive(Clone, Debug)]
pub struct CheckOptions {
    pub criteria: Vec<CriterionKind>,
    /// Word bound counted in pairs: trace words get this many pairs, GHS
    /// words twice as many letters. Defaults to m (the first Bloch
    /// dimension).
    pub max_word_len: Option<usize>,
    pub backend: Backend,
}

impl Default for CheckOptions {
    fn default() -> Self {
        Self {
            criteria: CriterionKind::ALL.to_vec(),
            max_word_len: None,
            backend: Backend::Exact,
        }
    }
}

/// Overall classification of a pair.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Overall {
    Inequivalent,
    Consistent,
    QuasiEquivalent,
}

impl Overall {
    pub fn as_str(&self) -> &'static str {
        match self {
            Overall::Inequivalent => "inequivalent",
            Overall::Consistent => "consistent",
            Overall::QuasiEquivalent => "equivalent",
        }
    }
}

#[derive(Clone, Debug)]
pub struct CheckReport {
    pub verdicts: Vec<Verdict>,
    pub timings: Vec<Duration>,
    pub overall: Overall,
    pub summary: String,
    pub d1: usize,
    pub d2: usize,
    pub max_word_len: usize,
    pub backend: Backend,
}

impl CheckReport {
    pub fn exit_code(&self) -> i32 {
        match self.overall {
            Overall::Inequivalent => 1,
            _ => 0,
        }
    }
}

impl fmt::Display for CheckReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(
            f,
            "check on {}⊗{} triples (backend: {}, word bound: {} pairs)",
            self.d1,
            self.d2,
            match self.backend {
                Backend::Exact => "exact".to_string(),
                Backend::Float(t) => format!("float rel={:e} abs={:e}", t.relative, t.absolute),
            },
            self.max_word_len
        )?;
        for (v, t) in self.verdicts.iter().zip(&self.timings) {
            writeln!(f, "  {v}  [{:.1} ms]", t.as_secs_f64() * 1e3)?;
        }
        write!(f, "overall: {}", self.summary)
    }
}

/// Runs the selected criteria and assembles the report.
pub fn run_check(t1: &BlochTriple, t2: &BlochTriple, opts: &CheckOptions) -> Result<CheckReport> {
    if !t1.same_shape(t2) {
        return crate::dim_mismatch(format!(
            "triples have shapes ({}, {}) and ({}, {})",
            t1.m(),
            t1.n(),
            t2.m(),
            t2.n()
        ));
    }
    let pairs_bound = opts.max_word_len.unwrap_or_else(|| t1.m());
    if pairs_bound < 1 {
        return Err(Error::InvalidInput("word bound must be at least 1".to_string()));
    }

    let mut verdicts = Vec::new();
    let mut timings = Vec::new();
    for kind in &opts.criteria {
        let start = Instant::now();
        let verdict = match kind {
            CriterionKind::Norm => norm_check(t1, t2, &opts.backend)?,
            CriterionKind::Snf => snf_check(t1, t2, &opts.backend)?,
            CriterionKind::Albert => albert_check(t1, t2, &opts.backend)?,
            CriterionKind::Trace => trace_identity_check(t1, t2, pairs_bound, &opts.backend)?,
            CriterionKind::Ghs => ghs_check(t1, t2, 2 * pairs_bound, &opts.backend)?,
        };
        timings.push(start.elapsed());
        verdicts.push(verdict);
    }

    let refuted = verdicts.iter().find(|v| v.is_inequivalent());
    let confirmed = verdicts.iter().any(|v| {
        matches!(v.outcome, Outcome::Equivalent)
            && (v.criterion == "trace" || v.criterion == "ghs")
    });
    let (d1, d2) = (t1.d1(), t1.d2());
    let two_qubits = d1 == 2 && d2 == 2;

    let (overall, summary) = if let Some(v) = refuted {
        (
            Overall::Inequivalent,
            format!(
                "inequivalent: refuted by the {} criterion (hence not LU-equivalent)",
                v.criterion
            ),
        )
    } else if confirmed {
        if two_qubits {
            (
                Overall::QuasiEquivalent,
                "quasi-LU equivalent, which is sufficient for LU equivalence on two qubits: \
                 the states are LU-equivalent"
                    .to_string(),
            )
        } else {
            (
                Overall::QuasiEquivalent,
                "quasi-LU equivalent (necessary for LU equivalence; sufficiency beyond two \
                 qubits is not claimed)"
                    .to_string(),
            )
        }
    } else {
        (
            Overall::Consistent,
            format!(
                "consistent: no criterion refuted equivalence up to the searched bounds \
                 (word bound {pairs_bound} pairs); quasi-LU {} for LU equivalence",
                if two_qubits {
                    "equivalence would be sufficient"
                } else {
                    "equivalence is necessary"
                }
            ),
        )
    };

    Ok(CheckReport {
        verdicts,
        timings,
        overall,
        summary,
        d1,
        d2,
        max_word_len: pairs_bound,
        backend: opts.backend,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::mat::Mat;
    use crate::scalar::ExactScalar;

    fn sc(t: &str) -> ExactScalar {
        ExactScalar::parse(t).unwrap()
    }

    fn simple_triple(u1: &str) -> BlochTriple {
        BlochTriple::new(
            vec![sc(u1), sc("0"), sc("0")],
            vec![sc("0"), sc("1/3"), sc("0")],
            Mat::from_rows(vec![
                vec![sc("1/2"), sc("0"), sc("0")],
                vec![sc("0"), sc("1/4"), sc("0")],
                vec![sc("0"), sc("0"), sc("0")],
            ]),
        )
        .unwrap()
    }

    #[test]
    fn identical_pair_reports_equivalent() {
        let t = simple_triple("1/2");
        let report = run_check(&t, &t, &CheckOptions::default()).unwrap();
        assert_eq!(report.overall, Overall::QuasiEquivalent);
        assert_eq!(report.exit_code(), 0);
        assert!(report.summary.contains("LU-equivalent") || report.summary.contains("two qubits"));
        assert_eq!(report.verdicts.len(), 5);
    }

    #[test]
    fn perturbed_pair_reports_inequivalent() {
        let t1 = simple_triple("1/2");
        let t2 = simple_triple("1/3");
        let report = run_check(&t1, &t2, &CheckOptions::default()).unwrap();
        assert_eq!(report.overall, Overall::Inequivalent);
        assert_eq!(report.exit_code(), 1);
    }

    #[test]
    fn criteria_selection_is_reordered() {
        let sel = CriterionKind::parse_csv("ghs,norm,snf").unwrap();
        assert_eq!(
            sel,
            vec![CriterionKind::Norm, CriterionKind::Snf, CriterionKind::Ghs]
        );
        assert!(CriterionKind::parse_csv("bogus").is_err());
    }

    #[test]
    fn selected_subset_only() {
        let t = simple_triple("1/2");
        let opts = CheckOptions {
            criteria: vec![CriterionKind::Snf],
            ..CheckOptions::default()
        };
        let report = run_check(&t, &t, &opts).unwrap();
        assert_eq!(report.verdicts.len(), 1);
        assert_eq!(report.verdicts[0].criterion, "snf");
        // SNF alone cannot confirm equivalence
        assert_eq!(report.overall, Overall::Consistent);
    }

    #[test]
    fn shape_mismatch_is_an_error() {
        let t1 = simple_triple("1/2");
        let t2 = BlochTriple::new(
            vec![sc("0"); 3],
            vec![sc("0"); 8],
            Mat::zeros(3, 8),
        )
        .unwrap();
        assert!(run_check(&t1, &t2, &CheckOptions::default()).is_err());
    }
}
