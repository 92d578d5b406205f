//! JSON report written by every command.

use chebcert::{
    CutAnalysis, DeltaKind, Descent, LeafOutcome, OptimalityCertificate, ReductionTrace,
    ReductionVerdict, SeparationWitness,
};
use serde::Serialize;

pub const SCHEMA_VERSION: u32 = 1;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Sufficient {
    Optimal,
    NotOptimal,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Necessary {
    Holds,
    Violated,
    Inconclusive,
}

#[derive(Debug, Clone, Default, PartialEq, Serialize)]
pub struct Verdicts {
    pub sufficient_condition: Option<Sufficient>,
    pub necessary_reduction: Option<Necessary>,
    pub cut_condition: Option<Necessary>,
}

impl Verdicts {
    /// 2 if anything failed, else 3 if anything is undecided, else 0.
    pub fn exit_code(&self) -> i32 {
        let necessary = [self.necessary_reduction, self.cut_condition];
        if self.sufficient_condition == Some(Sufficient::NotOptimal)
            || necessary.contains(&Some(Necessary::Violated))
        {
            2
        } else if necessary.contains(&Some(Necessary::Inconclusive)) {
            3
        } else {
            0
        }
    }

    /// An optimal point must pass every necessary test.
    pub fn consistent(&self) -> bool {
        self.sufficient_condition != Some(Sufficient::Optimal)
            || [self.necessary_reduction, self.cut_condition]
                .iter()
                .all(|v| v.is_none_or(|v| v == Necessary::Holds))
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct BasisReport {
    pub kind: &'static str,
    pub dimension: usize,
    pub degree: u32,
    pub terms: Vec<String>,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct FitReport {
    pub coefficients: Vec<f64>,
    pub error: f64,
    /// Whether the coefficients came from the minimax fit or from a file.
    pub fitted: bool,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct PointRef {
    pub index: usize,
    pub x: Vec<f64>,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ExtremalReport {
    pub tolerance: f64,
    pub positive: Vec<PointRef>,
    pub negative: Vec<PointRef>,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct WeightedPoint {
    pub index: usize,
    pub x: Vec<f64>,
    pub weight: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct CertificateReport {
    pub positive: Vec<WeightedPoint>,
    pub negative: Vec<WeightedPoint>,
    pub support_size: usize,
    pub residual: f64,
}

impl CertificateReport {
    pub fn new(cert: &OptimalityCertificate<f64>, point: impl Fn(usize) -> Vec<f64>) -> Self {
        let side = |s: &[chebcert::SupportPoint<f64>]| {
            s.iter()
                .map(|p| WeightedPoint { index: p.index, x: point(p.index), weight: p.weight })
                .collect()
        };
        Self {
            positive: side(&cert.positive),
            negative: side(&cert.negative),
            support_size: cert.support_size(),
            residual: cert.residual,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct DescentReport {
    pub direction: Vec<f64>,
    pub step: f64,
    pub error_before: f64,
    pub error_after: f64,
}

impl From<&Descent<f64>> for DescentReport {
    fn from(d: &Descent<f64>) -> Self {
        Self {
            direction: d.direction.clone(),
            step: d.step,
            error_before: d.error_before,
            error_after: d.error_after,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct WitnessReport {
    pub normal: Vec<f64>,
    pub offset: f64,
    pub margin: f64,
    pub descent: Option<DescentReport>,
}

impl WitnessReport {
    pub fn new(w: &SeparationWitness<f64>, descent: Option<&Descent<f64>>) -> Self {
        Self {
            normal: w.normal.clone(),
            offset: w.offset,
            margin: w.margin,
            descent: descent.map(DescentReport::from),
        }
    }
}

fn kind_name(k: DeltaKind) -> &'static str {
    match k {
        DeltaKind::Min => "min",
        DeltaKind::Max => "max",
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct StepReport {
    pub dimension: usize,
    pub kind: &'static str,
    pub delta: f64,
    pub removed: Vec<usize>,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct NodeReport {
    pub parent: Option<usize>,
    pub step: Option<StepReport>,
    pub degree: u32,
    pub remaining: Vec<usize>,
    pub outcome: Option<&'static str>,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct BranchChoice {
    pub dimension: usize,
    pub kind: &'static str,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ReductionReport {
    pub verdict: Necessary,
    pub violating_node: Option<usize>,
    pub violating_path: Option<Vec<BranchChoice>>,
    pub nodes: Vec<NodeReport>,
}

impl From<&ReductionTrace<f64>> for ReductionReport {
    fn from(t: &ReductionTrace<f64>) -> Self {
        let (verdict, violating_node, violating_path) = match &t.verdict {
            ReductionVerdict::NecessaryConditionHolds => (Necessary::Holds, None, None),
            ReductionVerdict::Inconclusive => (Necessary::Inconclusive, None, None),
            ReductionVerdict::Violated { leaf, path } => (
                Necessary::Violated,
                Some(*leaf),
                Some(
                    path.iter()
                        .map(|&(dimension, k)| BranchChoice { dimension, kind: kind_name(k) })
                        .collect(),
                ),
            ),
        };
        let nodes = t
            .nodes
            .iter()
            .map(|n| NodeReport {
                parent: n.parent,
                step: n.step.as_ref().map(|s| StepReport {
                    dimension: s.dimension,
                    kind: kind_name(s.kind),
                    delta: s.delta,
                    removed: s.removed.clone(),
                }),
                degree: n.set.degree,
                remaining: n.set.ids.clone(),
                outcome: n.outcome.map(|o| match o {
                    LeafOutcome::Exhausted => "exhausted",
                    LeafOutcome::Intersect => "intersect",
                    LeafOutcome::Disjoint => "disjoint",
                    LeafOutcome::OneSided => "one_sided",
                }),
            })
            .collect();
        Self { verdict, violating_node, violating_path, nodes }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct CutReport {
    pub through: Vec<usize>,
    pub normal: Vec<f64>,
    pub offset: f64,
    pub on_plane: Vec<usize>,
    pub positive: Vec<usize>,
    pub negative: Vec<usize>,
    pub degree_after: u32,
    pub feasible: bool,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct SkippedReport {
    pub through: Vec<usize>,
    pub reason: String,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct CutsReport {
    pub verdict: Necessary,
    pub checks: Vec<CutReport>,
    pub skipped: Vec<SkippedReport>,
}

impl From<&CutAnalysis<f64>> for CutsReport {
    fn from(a: &CutAnalysis<f64>) -> Self {
        Self {
            verdict: if a.holds() { Necessary::Holds } else { Necessary::Violated },
            checks: a
                .checks
                .iter()
                .map(|c| CutReport {
                    through: c.through.clone(),
                    normal: c.normal.clone(),
                    offset: c.offset,
                    on_plane: c.on_plane.clone(),
                    positive: c.positive.clone(),
                    negative: c.negative.clone(),
                    degree_after: c.degree_after,
                    feasible: c.feasible,
                })
                .collect(),
            skipped: a
                .skipped
                .iter()
                .map(|s| SkippedReport { through: s.subset.clone(), reason: s.reason.clone() })
                .collect(),
        }
    }
}

#[derive(Debug, Clone, Default, PartialEq, Serialize)]
pub struct Timings {
    pub fit_ms: Option<f64>,
    pub verify_ms: Option<f64>,
    pub reduction_ms: Option<f64>,
    pub cuts_ms: Option<f64>,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct VerificationReport {
    pub schema: u32,
    pub command: &'static str,
    /// Set for the built-in demo cases.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub name: Option<String>,
    pub basis: BasisReport,
    pub fit: FitReport,
    /// Absent when the model interpolates the data.
    pub extremal: Option<ExtremalReport>,
    pub verdicts: Verdicts,
    pub certificate: Option<CertificateReport>,
    pub witness: Option<WitnessReport>,
    pub reduction: Option<ReductionReport>,
    pub cuts: Option<CutsReport>,
    pub notes: Vec<String>,
    pub timings: Timings,
    pub exit_code: i32,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct DemoReport {
    pub schema: u32,
    pub command: &'static str,
    pub cases: Vec<VerificationReport>,
    pub exit_code: i32,
}
