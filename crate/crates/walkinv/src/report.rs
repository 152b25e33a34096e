//! JSON-serializable report records.
//!
//! Exact quantities are serialized as fraction strings (`"p"` or `"p/q"`),
//! never as JSON numbers, which cannot represent big rationals. Approximate
//! decimal fields are suffixed `_approx`.

use serde::{Deserialize, Serialize};

use crate::invariants::{GlobalInvariants, VertexInvariants};
use crate::rational::{frac_string, to_f64, Rational};
use crate::spectral::SpectralSums;
use crate::verify::{BrushEvaluation, CounterexampleFindings, ExtremalCertificate, Witness};
use crate::walkcost::CostTable;

fn fracs(values: &[Rational]) -> Vec<String> {
    values.iter().map(frac_string).collect()
}

/// Global and per-vertex invariants of one graph.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[allow(non_snake_case)]
pub struct InvariantReport {
    pub n: usize,
    pub m: usize,
    pub tau: String,
    pub W: String,
    pub K: String,
    pub K_pi: String,
    pub K_pi2: String,
    pub schultz: String,
    pub gutman: String,
    pub D: Vec<String>,
    pub D_pi: Vec<String>,
    pub R: Vec<String>,
    pub R_pi: Vec<String>,
}

impl InvariantReport {
    pub fn new(vinv: &VertexInvariants, ginv: &GlobalInvariants) -> Self {
        InvariantReport {
            n: ginv.n,
            m: ginv.m,
            tau: frac_string(&ginv.spanning_trees),
            W: frac_string(&ginv.wiener),
            K: frac_string(&ginv.kirchhoff),
            K_pi: frac_string(&ginv.kirchhoff_pi),
            K_pi2: frac_string(&ginv.kirchhoff_pi2),
            schultz: frac_string(&ginv.schultz),
            gutman: frac_string(&ginv.gutman),
            D: fracs(&vinv.centrality),
            D_pi: fracs(&vinv.centrality_pi),
            R: fracs(&vinv.resistance_centrality),
            R_pi: fracs(&vinv.resistance_centrality_pi),
        }
    }
}

/// Cover costs and the Kemeny constant, exact, with one approximate
/// convenience field.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CostTableReport {
    pub cc: Vec<String>,
    pub rc: Vec<String>,
    pub cc_pi: Vec<String>,
    pub rc_pi: Vec<String>,
    pub kemeny: String,
    pub kemeny_approx: f64,
}

impl CostTableReport {
    pub fn new(table: &CostTable) -> Self {
        CostTableReport {
            cc: fracs(&table.cover_cost),
            rc: fracs(&table.reverse_cover_cost),
            cc_pi: fracs(&table.cover_cost_pi),
            rc_pi: fracs(&table.reverse_cover_cost_pi),
            kemeny: frac_string(&table.kemeny),
            kemeny_approx: to_f64(&table.kemeny),
        }
    }
}

/// Reciprocal eigenvalue sums (as exact coefficient ratios).
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[allow(non_snake_case)]
pub struct SpectralReport {
    pub sum_inv_nonzero_L: String,
    pub sum_inv_nonzero_N: String,
    pub sum_inv_Lv: Vec<String>,
    pub sum_inv_Nv: Vec<String>,
}

impl SpectralReport {
    pub fn new(sums: &SpectralSums) -> Self {
        SpectralReport {
            sum_inv_nonzero_L: frac_string(&sums.inv_sum_laplacian),
            sum_inv_nonzero_N: frac_string(&sums.inv_sum_walk),
            sum_inv_Lv: fracs(&sums.inv_sum_laplacian_minor),
            sum_inv_Nv: fracs(&sums.inv_sum_walk_minor),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ExtremalCertificateReport {
    pub n: usize,
    pub quantity: String,
    pub value: String,
    pub formula_value: String,
    pub matches_formula: bool,
    pub witness_edges: Vec<(usize, usize)>,
    pub witness_root: Option<usize>,
    pub witness_pair: Option<(usize, usize)>,
    pub all_optima_in_family: bool,
}

impl ExtremalCertificateReport {
    pub fn new(cert: &ExtremalCertificate) -> Self {
        ExtremalCertificateReport {
            n: cert.n,
            quantity: cert.quantity.name().to_string(),
            value: frac_string(&cert.value),
            formula_value: frac_string(&cert.formula_value),
            matches_formula: cert.matches_formula(),
            witness_edges: cert.witness_edges.clone(),
            witness_root: cert.witness_root,
            witness_pair: cert.witness_pair,
            all_optima_in_family: cert.all_optima_in_family,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct BrushEvaluationReport {
    pub clique: usize,
    pub path_len: usize,
    pub star_leaves: usize,
    pub n: usize,
    pub r_gap: String,
    pub r_pi_gap: String,
    pub strict_chain: bool,
}

impl BrushEvaluationReport {
    pub fn new(eval: &BrushEvaluation) -> Self {
        BrushEvaluationReport {
            clique: eval.clique,
            path_len: eval.path_len,
            star_leaves: eval.star_leaves,
            n: eval.n,
            r_gap: frac_string(&eval.r_gap),
            r_pi_gap: frac_string(&eval.r_pi_gap),
            strict_chain: eval.strict_chain,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CounterexampleReport {
    pub max_n_searched: usize,
    pub regular_nonconstant_resistance: Option<Witness>,
    pub equal_resistance_distinct_weighted: Option<Witness>,
    pub gap_dominance: Option<Witness>,
    pub brush_family: Vec<BrushEvaluationReport>,
    pub all_found: bool,
}

impl CounterexampleReport {
    pub fn new(f: &CounterexampleFindings) -> Self {
        CounterexampleReport {
            max_n_searched: f.max_n_searched,
            regular_nonconstant_resistance: f.regular_nonconstant_resistance.clone(),
            equal_resistance_distinct_weighted: f.equal_resistance_distinct_weighted.clone(),
            gap_dominance: f.gap_dominance.clone(),
            brush_family: f.brush_family.iter().map(BrushEvaluationReport::new).collect(),
            all_found: f.all_found(),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::Graph;
    use crate::invariants::{global_invariants, vertex_invariants};
    use crate::walkcost::cost_table;

    #[test]
    fn invariant_report_round_trips() {
        let g = Graph::path(3).unwrap();
        let report = InvariantReport::new(&vertex_invariants(&g), &global_invariants(&g));
        assert_eq!(report.W, "4");
        assert_eq!(report.D, vec!["3", "2", "3"]);
        let json = serde_json::to_string_pretty(&report).unwrap();
        let back: InvariantReport = serde_json::from_str(&json).unwrap();
        assert_eq!(back, report);
        assert_eq!(serde_json::to_string_pretty(&back).unwrap(), json);
    }

    #[test]
    fn cost_report_kemeny_fraction() {
        let g = Graph::complete(3).unwrap();
        let report = CostTableReport::new(&cost_table(&g).unwrap());
        assert_eq!(report.kemeny, "8");
        assert_eq!(report.kemeny_approx, 8.0);
        assert_eq!(report.cc, vec!["4", "4", "4"]);
    }
}
