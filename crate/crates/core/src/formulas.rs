//! Closed-form regularity of edge ideals of integrally closed weighted trees,
//! and the exact values and linear upper bounds for their powers.
//!
//! All values are regularities of the ideal `I`; `reg(S/I) = reg(I) - 1`.

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::matchings::{nu, s_value};
use crate::wgraph::{is_caterpillar, is_integrally_closed, non_trivial_spine, GraphError, SpineData, WeightedGraph};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum FormulaError {
    #[error("graph is not a tree")]
    NotATree,
    #[error("graph is not a path")]
    NotAPath,
    #[error("weighted graph is not integrally closed")]
    NotIntegrallyClosed,
    #[error("all edge weights are 1; use the trivial-tree formula")]
    TrivialWeights,
    #[error("tree has non-trivial weights")]
    NonTrivialWeights,
    #[error("graph has no edges; its edge ideal is zero")]
    NoEdges,
    #[error("power exponent must be at least 1")]
    ZeroPower,
}

impl From<GraphError> for FormulaError {
    fn from(e: GraphError) -> Self {
        match e {
            GraphError::TrivialWeights => FormulaError::TrivialWeights,
            GraphError::NotIntegrallyClosed => FormulaError::NotIntegrallyClosed,
            _ => FormulaError::NotATree,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "SCREAMING_SNAKE_CASE")]
pub enum RegCase {
    TrivialTree,
    K4,
    RegCase1,
    RegCase2,
    RegCase3,
    PathSmall,
    PathGeneral,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "SCREAMING_SNAKE_CASE")]
pub enum PowerCase {
    TrivialTreePower,
    CatK4D1Mid,
    CatK4D1End,
    EqCase,
}

/// Invariants a formula evaluation looked at.
#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct FormulaInputs {
    pub nu: usize,
    pub s_i: Option<usize>,
    pub s_i_plus_2: Option<usize>,
    pub omega_i: Option<u32>,
    pub omega_i_plus_2: Option<u32>,
    pub k: Option<usize>,
    pub i: Option<usize>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct RegFormulaResult {
    pub value: u32,
    pub case_tag: RegCase,
    pub inputs_used: FormulaInputs,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct PowerRegResult {
    pub t: u32,
    pub exact: Option<u32>,
    pub upper_bound: u32,
    pub exact_case_tag: Option<PowerCase>,
}

fn check_tree(t: &WeightedGraph) -> Result<(), FormulaError> {
    if !t.is_tree() {
        return Err(FormulaError::NotATree);
    }
    if t.edge_count() == 0 {
        return Err(FormulaError::NoEdges);
    }
    if !is_integrally_closed(t) {
        return Err(FormulaError::NotIntegrallyClosed);
    }
    Ok(())
}

/// Spine plus the matching invariants the formulas consume.
struct Setup {
    spine: SpineData,
    nu: usize,
    s_i: usize,
    s_i_plus_2: Option<usize>,
}

fn setup(t: &WeightedGraph) -> Result<Setup, FormulaError> {
    let spine = non_trivial_spine(t)?;
    let e_i = spine.spine_edge(t, spine.heavy_index).expect("heavy edge on spine");
    let s_i = s_value(t, e_i);
    let s_i_plus_2 = spine.spine_edge(t, spine.heavy_index + 2).map(|e| s_value(t, e));
    Ok(Setup {
        nu: nu(t),
        s_i,
        s_i_plus_2,
        spine,
    })
}

fn trivial_result(t: &WeightedGraph) -> RegFormulaResult {
    let nu = nu(t);
    RegFormulaResult {
        value: nu as u32 + 1,
        case_tag: RegCase::TrivialTree,
        inputs_used: FormulaInputs {
            nu,
            ..FormulaInputs::default()
        },
    }
}

/// Regularity of `I(T)` for an integrally closed weighted tree.
pub fn reg_closed_form(t: &WeightedGraph) -> Result<RegFormulaResult, FormulaError> {
    check_tree(t)?;
    if t.is_trivially_weighted() {
        return Ok(trivial_result(t));
    }
    let Setup {
        spine,
        nu,
        s_i,
        s_i_plus_2,
    } = setup(t)?;
    let (k, i) = (spine.k(), spine.heavy_index);
    let w_i = spine.omega_i;
    let inputs = FormulaInputs {
        nu,
        s_i: Some(s_i),
        s_i_plus_2,
        omega_i: Some(w_i),
        omega_i_plus_2: spine.omega_i_plus_2,
        k: Some(k),
        i: Some(i),
    };
    let via_i = 2 * w_i + s_i as u32 - 1;
    let (value, case_tag) = match (spine.omega_i_plus_2, s_i_plus_2) {
        _ if k == 4 && i == 2 => (2 * w_i, RegCase::K4),
        (None, _) | (_, None) => (2 * w_i, RegCase::RegCase1),
        (Some(1), _) => ((nu as u32 + 1).max(via_i), RegCase::RegCase2),
        (Some(w2), Some(s2)) => {
            let via_next = 2 * w2 + s2 as u32 - 1;
            ((nu as u32 + 1).max(via_i).max(via_next), RegCase::RegCase3)
        }
    };
    Ok(RegFormulaResult {
        value,
        case_tag,
        inputs_used: inputs,
    })
}

fn is_path(g: &WeightedGraph) -> bool {
    g.is_tree() && (0..g.vertex_count()).all(|v| g.degree(v) <= 2)
}

/// The floor-function formula for integrally closed weighted paths.
pub fn reg_path_closed_form(p: &WeightedGraph) -> Result<RegFormulaResult, FormulaError> {
    if !is_path(p) {
        return Err(FormulaError::NotAPath);
    }
    check_tree(p)?;
    if p.is_trivially_weighted() {
        return Ok(trivial_result(p));
    }
    let n = p.vertex_count();
    let spine = non_trivial_spine(p)?;
    let i = spine.heavy_index;
    let mut inputs = FormulaInputs {
        nu: (n + 1) / 3,
        omega_i: Some(spine.omega_i),
        omega_i_plus_2: spine.omega_i_plus_2,
        k: Some(n),
        i: Some(i),
        ..FormulaInputs::default()
    };
    if n <= 4 {
        return Ok(RegFormulaResult {
            value: 2 * p.max_weight(),
            case_tag: RegCase::PathSmall,
            inputs_used: inputs,
        });
    }
    let floor3 = |x: i64| x.div_euclid(3);
    let (n, i) = (n as i64, i as i64);
    let w_i = spine.omega_i as i64;
    let w_next = spine.omega_i_plus_2.expect("e_{i+2} exists on paths with n >= 5") as i64;
    let first = 2 * w_i + floor3(i - 1) + floor3(n - (i + 1));
    let second = 2 * w_next + floor3(i - 2) + floor3(n - i);
    inputs.s_i = Some((floor3(i - 1) + floor3(n - (i + 1)) + 1) as usize);
    inputs.s_i_plus_2 = Some((floor3(i + 1) + floor3(n - (i + 3)) + 1) as usize);
    Ok(RegFormulaResult {
        value: first.max(second) as u32,
        case_tag: RegCase::PathGeneral,
        inputs_used: inputs,
    })
}

/// `reg(I(T)^t) = 2t + ν(T) - 1` for trivially weighted trees.
pub fn reg_power_trivial(t: &WeightedGraph, power: u32) -> Result<u32, FormulaError> {
    if power == 0 {
        return Err(FormulaError::ZeroPower);
    }
    if !t.is_tree() {
        return Err(FormulaError::NotATree);
    }
    if t.edge_count() == 0 {
        return Err(FormulaError::NoEdges);
    }
    if !t.is_trivially_weighted() {
        return Err(FormulaError::NonTrivialWeights);
    }
    Ok(2 * power + nu(t) as u32 - 1)
}

/// Exact `reg(I(T)^t)` where a closed form is known, with the case that
/// produced it; `None` outside those cases.
pub fn reg_power_exact(t: &WeightedGraph, power: u32) -> Result<Option<(u32, PowerCase)>, FormulaError> {
    if power == 0 {
        return Err(FormulaError::ZeroPower);
    }
    check_tree(t)?;
    if t.is_trivially_weighted() {
        return Ok(Some((reg_power_trivial(t, power)?, PowerCase::TrivialTreePower)));
    }
    let s = setup(t)?;
    let spine = &s.spine;
    if spine.k() == 4 && spine.d == 1 && is_caterpillar(t) {
        let w = spine.omega_i;
        // i is 2 exactly when e_2 is the heaviest spine edge; otherwise the
        // orientation has moved the heaviest end edge to e_1.
        let case = if spine.heavy_index == 2 {
            PowerCase::CatK4D1Mid
        } else {
            PowerCase::CatK4D1End
        };
        return Ok(Some((2 * w * power, case)));
    }
    let closed = reg_closed_form(t)?;
    let via_i = 2 * spine.omega_i + s.s_i as u32 - 1;
    if closed.value == via_i {
        return Ok(Some((2 * spine.omega_i * power + s.s_i as u32 - 1, PowerCase::EqCase)));
    }
    Ok(None)
}

/// `2ω(t - 1) + reg(I(T))` with `ω` the largest spine weight.
pub fn reg_power_upper_bound(t: &WeightedGraph, power: u32) -> Result<u32, FormulaError> {
    if power == 0 {
        return Err(FormulaError::ZeroPower);
    }
    check_tree(t)?;
    if t.is_trivially_weighted() {
        return Err(FormulaError::TrivialWeights);
    }
    let spine = non_trivial_spine(t)?;
    Ok(2 * spine.omega_i * (power - 1) + reg_closed_form(t)?.value)
}

/// Everything known about `reg(I(T)^t)`: exact value when available and the
/// linear upper bound (the exact value itself for trivially weighted trees).
pub fn power_regularity(t: &WeightedGraph, power: u32) -> Result<PowerRegResult, FormulaError> {
    let exact = reg_power_exact(t, power)?;
    let upper_bound = if t.is_trivially_weighted() {
        reg_power_trivial(t, power)?
    } else {
        reg_power_upper_bound(t, power)?
    };
    Ok(PowerRegResult {
        t: power,
        exact: exact.map(|(v, _)| v),
        upper_bound,
        exact_case_tag: exact.map(|(_, c)| c),
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn graph(n: usize, edges: &[(usize, usize, u32)]) -> WeightedGraph {
        let names: Vec<String> = (1..=n).map(|i| format!("x{i}")).collect();
        WeightedGraph::new(
            names,
            edges.iter().map(|&(a, b, w)| (format!("x{a}"), format!("x{b}"), w)),
        )
        .unwrap()
    }

    fn single_heavy_tree() -> WeightedGraph {
        graph(
            9,
            &[(1, 2, 1), (2, 3, 2), (3, 4, 1), (4, 5, 1), (3, 6, 1), (6, 7, 1), (3, 8, 1), (8, 9, 1)],
        )
    }

    fn double_heavy_tree() -> WeightedGraph {
        graph(
            10,
            &[(1, 2, 3), (2, 3, 1), (3, 4, 2), (2, 5, 1), (5, 6, 1), (2, 7, 1), (7, 8, 1), (2, 9, 1), (9, 10, 1)],
        )
    }

    #[test]
    fn closed_form_examples() {
        let r = reg_closed_form(&single_heavy_tree()).unwrap();
        assert_eq!((r.value, r.case_tag), (5, RegCase::RegCase2));
        assert_eq!(r.inputs_used.nu, 4);
        assert_eq!(r.inputs_used.s_i, Some(1));

        let r = reg_closed_form(&double_heavy_tree()).unwrap();
        assert_eq!((r.value, r.case_tag), (7, RegCase::RegCase3));
        assert_eq!(r.inputs_used.s_i_plus_2, Some(4));
        assert_eq!((r.inputs_used.k, r.inputs_used.i), (Some(4), Some(1)));

        for w in 1..5 {
            let r = reg_closed_form(&WeightedGraph::path(&[w]).unwrap()).unwrap();
            assert_eq!(r.value, 2 * w);
        }
    }

    #[test]
    fn closed_form_errors() {
        assert_eq!(
            reg_closed_form(&WeightedGraph::path(&[2, 2]).unwrap()).unwrap_err(),
            FormulaError::NotIntegrallyClosed
        );
        let cycle = graph(3, &[(1, 2, 1), (2, 3, 1), (1, 3, 1)]);
        assert_eq!(reg_closed_form(&cycle).unwrap_err(), FormulaError::NotATree);
    }

    #[test]
    fn path_formula_examples() {
        let p5 = WeightedGraph::path(&[2, 1, 1, 1]).unwrap();
        let r = reg_path_closed_form(&p5).unwrap();
        assert_eq!((r.value, r.case_tag), (5, RegCase::PathGeneral));
        for w in 2..5 {
            for pos in 0..3 {
                let mut ws = vec![1; 3];
                ws[pos] = w;
                let p4 = WeightedGraph::path(&ws).unwrap();
                let r = reg_path_closed_form(&p4).unwrap();
                assert_eq!((r.value, r.case_tag), (2 * w, RegCase::PathSmall));
            }
        }
        let p6 = WeightedGraph::path(&[1, 2, 1, 2, 1]).unwrap();
        assert_eq!(reg_path_closed_form(&p6).unwrap().value, 5);
        assert_eq!(
            reg_path_closed_form(&single_heavy_tree()).unwrap_err(),
            FormulaError::NotAPath
        );
    }

    #[test]
    fn trivial_power_formula() {
        let star = graph(5, &[(1, 2, 1), (1, 3, 1), (1, 4, 1), (1, 5, 1)]);
        assert_eq!(reg_power_trivial(&star, 1).unwrap(), 2);
        let p5 = WeightedGraph::path(&[1, 1, 1, 1]).unwrap();
        assert_eq!(reg_power_trivial(&p5, 1).unwrap(), 3);
        assert_eq!(reg_power_trivial(&p5, 2).unwrap(), 5);
        assert_eq!(
            reg_power_trivial(&single_heavy_tree(), 2).unwrap_err(),
            FormulaError::NonTrivialWeights
        );
    }

    #[test]
    fn exact_power_examples() {
        let mid = WeightedGraph::path(&[1, 2, 1]).unwrap();
        assert_eq!(reg_power_exact(&mid, 3).unwrap().map(|e| e.0), Some(12));
        let end = WeightedGraph::path(&[3, 1, 1]).unwrap();
        assert_eq!(reg_power_exact(&end, 2).unwrap().map(|e| e.0), Some(12));
        // single heavy tree has reg = ν + 1 = 5 > 2ω_2 + s_2 - 1 = 4
        assert_eq!(reg_power_exact(&single_heavy_tree(), 2).unwrap(), None);

        let cat = graph(6, &[(1, 2, 1), (2, 3, 2), (3, 4, 1), (2, 5, 1), (3, 6, 1)]);
        assert_eq!(reg_power_exact(&cat, 2).unwrap(), Some((8, PowerCase::CatK4D1Mid)));
        let cat_end = graph(5, &[(1, 2, 3), (2, 3, 1), (3, 4, 2), (3, 5, 1)]);
        assert_eq!(reg_power_exact(&cat_end, 2).unwrap(), Some((12, PowerCase::CatK4D1End)));
    }

    #[test]
    fn upper_bound_examples() {
        assert_eq!(reg_power_upper_bound(&single_heavy_tree(), 2).unwrap(), 9);
        assert_eq!(reg_power_upper_bound(&double_heavy_tree(), 2).unwrap(), 13);
        assert_eq!(reg_power_upper_bound(&double_heavy_tree(), 1).unwrap(), 7);
        assert_eq!(
            reg_power_upper_bound(&WeightedGraph::path(&[1, 1]).unwrap(), 2).unwrap_err(),
            FormulaError::TrivialWeights
        );
        let r = power_regularity(&single_heavy_tree(), 2).unwrap();
        assert_eq!((r.exact, r.upper_bound), (None, 9));
    }
}
