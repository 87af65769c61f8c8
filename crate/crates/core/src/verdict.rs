//! Decision procedures for `Aut(X ∘ Y) = Aut(X) ≀ Aut(Y)` and its quantum
//! counterpart.
//!
//! The classical criterion looks only at two ordered-pair sets of `Y`:
//! `S_Y` (distinct vertices with equal open neighborhoods) and `T_Y = S_{Y^c}`
//! (distinct vertices with equal closed neighborhoods). The decomposition
//! holds iff `S_Y ≠ ∅ ⇒ X connected` and `T_Y ≠ ∅ ⇒ X^c connected`. For
//! regular `X` and `Y` the same condition decides the free wreath
//! decomposition of the quantum automorphism group.

use std::fmt;

use num_bigint::BigUint;
use rayon::prelude::*;
use serde::{Deserialize, Deserializer, Serialize, Serializer};
use thiserror::Error;

use crate::autgroup::{automorphism_group, wreath_order};
use crate::generate::all_labeled_graphs;
use crate::graph::Graph;
use crate::io::write_graph6;
use crate::spectral::{spectral_condition, SpectralVerdict};

/// Default vertex bound on `|x|·|y|` for the cross-check in [`analyze`].
pub const DEFAULT_AUT_LIMIT: usize = 24;
pub const SWEEP_MAX_X: usize = 5;
pub const SWEEP_MAX_Y: usize = 4;

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct SabidussiSets {
    /// Ordered pairs of distinct vertices with equal open neighborhoods.
    pub s_pairs: Vec<(usize, usize)>,
    /// Ordered pairs of distinct vertices with equal closed neighborhoods.
    pub t_pairs: Vec<(usize, usize)>,
}

pub fn sabidussi_sets(g: &Graph) -> SabidussiSets {
    let n = g.vertex_count();
    let closed = |v: usize| -> Vec<u64> {
        let mut row = g.row(v).to_vec();
        row[v / 64] |= 1 << (v % 64);
        row
    };
    let closed_rows: Vec<Vec<u64>> = (0..n).map(closed).collect();
    let mut s_pairs = Vec::new();
    let mut t_pairs = Vec::new();
    for a in 0..n {
        for b in 0..n {
            if a == b {
                continue;
            }
            if g.row(a) == g.row(b) {
                s_pairs.push((a, b));
            }
            if closed_rows[a] == closed_rows[b] {
                t_pairs.push((a, b));
            }
        }
    }
    SabidussiSets { s_pairs, t_pairs }
}

/// `(S_Y ≠ ∅ ⇒ X connected) ∧ (T_Y ≠ ∅ ⇒ X^c connected)`.
pub fn classical_condition(x: &Graph, y: &Graph) -> bool {
    let sets = sabidussi_sets(y);
    (sets.s_pairs.is_empty() || x.is_connected())
        && (sets.t_pairs.is_empty() || x.complement().is_connected())
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum QuantumVerdict {
    Holds,
    Fails,
    NotApplicable(String),
}

impl QuantumVerdict {
    pub fn label(&self) -> &'static str {
        match self {
            QuantumVerdict::Holds => "HOLDS",
            QuantumVerdict::Fails => "FAILS",
            QuantumVerdict::NotApplicable(_) => "NOT_APPLICABLE",
        }
    }

    pub fn reason(&self) -> Option<&str> {
        match self {
            QuantumVerdict::NotApplicable(r) => Some(r),
            _ => None,
        }
    }
}

impl fmt::Display for QuantumVerdict {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.label())
    }
}

/// Quantum decomposition verdict. Only defined for regular graphs, where it
/// coincides with [`classical_condition`].
pub fn quantum_verdict(x: &Graph, y: &Graph) -> QuantumVerdict {
    match (x.regularity(), y.regularity()) {
        (None, _) => QuantumVerdict::NotApplicable("X is not regular".into()),
        (_, None) => QuantumVerdict::NotApplicable("Y is not regular".into()),
        _ if classical_condition(x, y) => QuantumVerdict::Holds,
        _ => QuantumVerdict::Fails,
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct GraphSummary {
    pub order: usize,
    /// Common degree, serialized as `"irregular"` when absent.
    #[serde(with = "valence_repr")]
    pub valence: Option<usize>,
    pub connected: bool,
    pub complement_connected: bool,
}

impl GraphSummary {
    pub fn of(g: &Graph) -> Self {
        GraphSummary {
            order: g.vertex_count(),
            valence: g.regularity(),
            connected: g.is_connected(),
            complement_connected: g.complement().is_connected(),
        }
    }
}

mod valence_repr {
    use super::*;

    #[derive(Serialize, Deserialize)]
    #[serde(untagged)]
    enum Repr {
        Valence(usize),
        Word(String),
    }

    pub fn serialize<S: Serializer>(v: &Option<usize>, s: S) -> Result<S::Ok, S::Error> {
        match v {
            Some(d) => Repr::Valence(*d),
            None => Repr::Word("irregular".into()),
        }
        .serialize(s)
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<Option<usize>, D::Error> {
        match Repr::deserialize(d)? {
            Repr::Valence(v) => Ok(Some(v)),
            Repr::Word(w) if w == "irregular" => Ok(None),
            Repr::Word(w) => Err(serde::de::Error::custom(format!(
                "unexpected valence `{w}`"
            ))),
        }
    }
}

mod decimal {
    use super::*;

    pub fn serialize<S: Serializer>(v: &BigUint, s: S) -> Result<S::Ok, S::Error> {
        s.collect_str(v)
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<BigUint, D::Error> {
        let s = String::deserialize(d)?;
        s.parse().map_err(serde::de::Error::custom)
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct SabidussiSummary {
    pub s_count: usize,
    pub t_count: usize,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub s_pairs: Option<Vec<(usize, usize)>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub t_pairs: Option<Vec<(usize, usize)>>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CrossCheck {
    #[serde(with = "decimal")]
    pub aut_product_order: BigUint,
    #[serde(with = "decimal")]
    pub wreath_order: BigUint,
    pub equal: bool,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Report {
    pub x_summary: GraphSummary,
    pub y_summary: GraphSummary,
    pub sabidussi_y: SabidussiSummary,
    pub classical_holds: bool,
    pub quantum: QuantumLabel,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub quantum_reason: Option<String>,
    pub spectral: SpectralVerdict,
    pub cross_check: Option<CrossCheck>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub cross_check_note: Option<String>,
}

/// The three-valued quantum verdict as stored in a [`Report`]; the reason for
/// `NOT_APPLICABLE` travels in [`Report::quantum_reason`].
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum QuantumLabel {
    #[serde(rename = "HOLDS")]
    Holds,
    #[serde(rename = "FAILS")]
    Fails,
    #[serde(rename = "NOT_APPLICABLE")]
    NotApplicable,
}

impl From<&QuantumVerdict> for QuantumLabel {
    fn from(v: &QuantumVerdict) -> Self {
        match v {
            QuantumVerdict::Holds => QuantumLabel::Holds,
            QuantumVerdict::Fails => QuantumLabel::Fails,
            QuantumVerdict::NotApplicable(_) => QuantumLabel::NotApplicable,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct AnalyzeOptions {
    pub cross_check: bool,
    /// Largest product order for which the cross-check runs.
    pub aut_limit: usize,
    /// Include full pair lists and spectral polynomials.
    pub verbose: bool,
}

impl Default for AnalyzeOptions {
    fn default() -> Self {
        AnalyzeOptions {
            cross_check: true,
            aut_limit: DEFAULT_AUT_LIMIT,
            verbose: false,
        }
    }
}

pub fn analyze(x: &Graph, y: &Graph, opts: &AnalyzeOptions) -> Report {
    let sets = sabidussi_sets(y);
    let classical_holds = classical_condition(x, y);
    let quantum = quantum_verdict(x, y);
    let mut spectral = spectral_condition(x, y);
    if !opts.verbose {
        spectral.polynomials = None;
    }
    let product_order = x.vertex_count() * y.vertex_count();
    let (cross_check, cross_check_note) = if !opts.cross_check {
        (None, Some("not requested".to_string()))
    } else if product_order > opts.aut_limit {
        (
            None,
            Some(format!(
                "product has {product_order} vertices, above the limit of {}",
                opts.aut_limit
            )),
        )
    } else {
        (Some(cross_check(x, y)), None)
    };
    Report {
        x_summary: GraphSummary::of(x),
        y_summary: GraphSummary::of(y),
        sabidussi_y: SabidussiSummary {
            s_count: sets.s_pairs.len(),
            t_count: sets.t_pairs.len(),
            s_pairs: opts.verbose.then(|| sets.s_pairs.clone()),
            t_pairs: opts.verbose.then(|| sets.t_pairs.clone()),
        },
        classical_holds,
        quantum: QuantumLabel::from(&quantum),
        quantum_reason: quantum.reason().map(str::to_string),
        spectral,
        cross_check,
        cross_check_note,
    }
}

/// `|Aut(x ∘ y)|` against `|Aut(x)|^{|y|}·|Aut(y)|`, via the refinement engine.
pub fn cross_check(x: &Graph, y: &Graph) -> CrossCheck {
    let aut_product_order = automorphism_group(&x.lex_product(y)).order().clone();
    let wreath = wreath_order(
        automorphism_group(x).order(),
        y.vertex_count(),
        automorphism_group(y).order(),
    );
    CrossCheck {
        equal: aut_product_order == wreath,
        aut_product_order,
        wreath_order: wreath,
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum SweepError {
    #[error("sweep limits exceeded: max_x = {max_x} (at most {SWEEP_MAX_X}), max_y = {max_y} (at most {SWEEP_MAX_Y})")]
    LimitExceeded { max_x: usize, max_y: usize },
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Counterexample {
    pub x: String,
    pub y: String,
    pub condition: bool,
    #[serde(with = "decimal")]
    pub aut_product_order: BigUint,
    #[serde(with = "decimal")]
    pub wreath_order: BigUint,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct SweepSummary {
    pub pairs_checked: usize,
    pub agreements: usize,
    /// Pairs where the decomposition holds (orders equal).
    pub wreath_pairs: usize,
    /// Sorted by the graph6 encodings of `(x, y)`.
    pub counterexamples: Vec<Counterexample>,
}

/// Checks `classical_condition(x, y) ⟺ |Aut(x∘y)| = |Aut(x)|^{|y|}·|Aut(y)|`
/// on every labeled pair with `1..=max_x` and `1..=max_y` vertices.
pub fn verify_sabidussi(max_x: usize, max_y: usize) -> Result<SweepSummary, SweepError> {
    if max_x > SWEEP_MAX_X || max_y > SWEEP_MAX_Y {
        return Err(SweepError::LimitExceeded { max_x, max_y });
    }
    Ok(sweep_pairs(
        (1..=max_x).collect::<Vec<_>>().as_slice(),
        (1..=max_y).collect::<Vec<_>>().as_slice(),
    ))
}

/// The sweep over labeled graphs of exactly the listed orders. Runs on the
/// current rayon pool; the summary does not depend on scheduling.
pub fn sweep_pairs(x_orders: &[usize], y_orders: &[usize]) -> SweepSummary {
    let xs: Vec<Graph> = x_orders
        .iter()
        .flat_map(|&n| all_labeled_graphs(n).expect("n >= 1"))
        .collect();
    let ys: Vec<Graph> = y_orders
        .iter()
        .flat_map(|&n| all_labeled_graphs(n).expect("n >= 1"))
        .collect();
    // per-graph data reused across the cross product
    let x_orders_aut: Vec<BigUint> = xs
        .par_iter()
        .map(|g| automorphism_group(g).order().clone())
        .collect();
    let y_orders_aut: Vec<BigUint> = ys
        .par_iter()
        .map(|g| automorphism_group(g).order().clone())
        .collect();
    let outcomes: Vec<(bool, bool, Option<Counterexample>)> = (0..xs.len() * ys.len())
        .into_par_iter()
        .map(|k| {
            let (i, j) = (k / ys.len(), k % ys.len());
            let (x, y) = (&xs[i], &ys[j]);
            let condition = classical_condition(x, y);
            let product = automorphism_group(&x.lex_product(y)).order().clone();
            let wreath = wreath_order(&x_orders_aut[i], y.vertex_count(), &y_orders_aut[j]);
            let equal = product == wreath;
            let counterexample = (condition != equal).then(|| Counterexample {
                x: write_graph6(x).expect("small graph"),
                y: write_graph6(y).expect("small graph"),
                condition,
                aut_product_order: product,
                wreath_order: wreath,
            });
            (condition == equal, equal, counterexample)
        })
        .collect();
    let mut counterexamples: Vec<Counterexample> =
        outcomes.iter().filter_map(|o| o.2.clone()).collect();
    counterexamples.sort_by(|a, b| (&a.x, &a.y).cmp(&(&b.x, &b.y)));
    SweepSummary {
        pairs_checked: outcomes.len(),
        agreements: outcomes.iter().filter(|o| o.0).count(),
        wreath_pairs: outcomes.iter().filter(|o| o.1).count(),
        counterexamples,
    }
}
