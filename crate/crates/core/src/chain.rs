//! Continuous linear series built from exact minimal level-δ series.
//!
//! Each index `i ∈ Δ(δ)` contributes one component: the torus orbit closure of
//! `V(i)` in `Grass(r+1, U1 ⊕ U2)`, lying over the component `T_i` of the target
//! chain when `i` is an integer and collapsed to the node `N_{⌈i⌉}` otherwise.
//! Consecutive components are glued at `lim_{x→∞} x*V(i) = lim_{x→0} x*V(j)`,
//! which is exactly the exactness condition at `(i, j)`.

use std::fmt::Write as _;

use serde::{Deserialize, Serialize};

use crate::delta::{ceil, floor, DeltaSet};
use crate::error::{Error, Result};
use crate::model::CurveModel;
use crate::series::LevelDeltaLLS;
use crate::torus::Direction;
use crate::{QSubspace, Rational};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum ComponentKind {
    Fixed,
    Orbit,
}

/// Image of a component in the target chain `T = T_0 ∪ … ∪ T_d`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase", tag = "type", content = "at")]
pub enum Target {
    /// Maps onto `T_k`.
    Component(usize),
    /// Collapsed to the node `N_k = T_{k-1} ∩ T_k`.
    Node(usize),
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ChainComponent {
    pub index: Rational,
    pub base_space: QSubspace,
    pub kind: ComponentKind,
    pub target: Target,
    pub degree_in_g: usize,
}

/// The fixed point shared by two consecutive components.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ChainNode {
    pub left: Rational,
    pub right: Rational,
    pub subspace: QSubspace,
}

/// Coefficients of `u·a + v·b + Σ s_k·c_k + constant`; a valid chain has
/// `(r+1, 0, (1, …, 1), 1)`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct HilbertData {
    pub u_coeff: usize,
    pub v_coeff: usize,
    pub s_coeffs: Vec<usize>,
    pub constant: usize,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ContinuousChain {
    pub model: CurveModel,
    pub r: usize,
    pub delta: DeltaSet,
    pub components: Vec<ChainComponent>,
    pub nodes: Vec<ChainNode>,
    pub hilbert: HilbertData,
}

/// Target of the component at index `i`.
pub fn target_of(i: &Rational) -> Target {
    if i.is_integer() {
        Target::Component(floor(i))
    } else {
        Target::Node(ceil(i))
    }
}

/// Builds the chain of an exact minimal series.
///
/// Fails with [`Error::NotExact`] at the first consecutive pair whose limits
/// do not agree, and with [`Error::NotMinimal`] if a non-integer component
/// would be constant.
pub fn build_chain(g: &LevelDeltaLLS) -> Result<ContinuousChain> {
    g.check_membership()?;
    let split = g.split();
    let idx = g.delta().indices();
    let spaces = g.spaces();

    let mut nodes = Vec::with_capacity(spaces.len().saturating_sub(1));
    for k in 0..spaces.len().saturating_sub(1) {
        let out = split.limit(&spaces[k], Direction::Infinity)?;
        let inn = split.limit(&spaces[k + 1], Direction::Zero)?;
        if out != inn {
            return Err(Error::NotExact(Box::new((
                idx[k].clone(),
                idx[k + 1].clone(),
            ))));
        }
        nodes.push(ChainNode {
            left: idx[k].clone(),
            right: idx[k + 1].clone(),
            subspace: out,
        });
    }

    let mut components = Vec::with_capacity(spaces.len());
    for (i, v) in g.entries() {
        let degree = split.orbit_degree(v)?;
        if degree == 0 && !i.is_integer() {
            return Err(Error::NotMinimal(i.clone()));
        }
        components.push(ChainComponent {
            index: i.clone(),
            base_space: v.clone(),
            kind: if degree == 0 {
                ComponentKind::Fixed
            } else {
                ComponentKind::Orbit
            },
            target: target_of(i),
            degree_in_g: degree,
        });
    }

    let mut chain = ContinuousChain {
        model: g.model(),
        r: g.r(),
        delta: g.delta().clone(),
        components,
        nodes,
        hilbert: HilbertData {
            u_coeff: 0,
            v_coeff: 0,
            s_coeffs: Vec::new(),
            constant: 0,
        },
    };
    chain.hilbert = hilbert_coefficients(&chain)?;
    Ok(chain)
}

/// Reads the series back off the base points `E_i` (the `x = 1` points).
pub fn evaluate_at_base_points(c: &ContinuousChain) -> Result<LevelDeltaLLS> {
    LevelDeltaLLS::from_indexed(
        c.model,
        c.r,
        c.delta.clone(),
        c.components
            .iter()
            .map(|comp| (comp.index.clone(), comp.base_space.clone())),
    )
}

/// Recomputes the Hilbert data from the components. Each `T_k` must be covered
/// by exactly one component.
pub fn hilbert_coefficients(c: &ContinuousChain) -> Result<HilbertData> {
    let mut s_coeffs = vec![0usize; c.model.d + 1];
    for comp in &c.components {
        if let Target::Component(k) = comp.target {
            if k < s_coeffs.len() {
                s_coeffs[k] += 1;
            }
        }
    }
    if let Some((k, &m)) = s_coeffs.iter().enumerate().find(|(_, &m)| m != 1) {
        return Err(Error::Multiplicity {
            component: k,
            multiplicity: m,
        });
    }
    Ok(HilbertData {
        u_coeff: c.components.iter().map(|comp| comp.degree_in_g).sum(),
        v_coeff: 0,
        s_coeffs,
        constant: 1,
    })
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CheckOutcome {
    pub name: &'static str,
    pub passed: bool,
    pub detail: String,
}

/// Outcome of [`validate_chain`], one entry per structural claim.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ChainReport {
    pub checks: Vec<CheckOutcome>,
}

impl ChainReport {
    pub fn passed(&self) -> bool {
        self.checks.iter().all(|c| c.passed)
    }

    pub fn get(&self, name: &str) -> Option<&CheckOutcome> {
        self.checks.iter().find(|c| c.name == name)
    }
}

pub const CHECK_GLUING: &str = "node-gluing";
pub const CHECK_DEGREE: &str = "degree-sum";
pub const CHECK_TRANSVERSAL: &str = "transversality";
pub const CHECK_INTERVALS: &str = "weight-intervals";
pub const CHECK_MEMBERSHIP: &str = "membership";

fn outcome(name: &'static str, problems: Vec<String>) -> CheckOutcome {
    CheckOutcome {
        name,
        passed: problems.is_empty(),
        detail: if problems.is_empty() {
            "ok".into()
        } else {
            problems.join("; ")
        },
    }
}

/// Checks a chain against the structural properties of continuous linear
/// series. Never fails; every problem is recorded in the report.
pub fn validate_chain(c: &ContinuousChain) -> ChainReport {
    let split = c.model.split();
    let comps = &c.components;

    // (a) consecutive components meet at the recorded node.
    let mut gluing = Vec::new();
    if c.nodes.len() + 1 != comps.len() {
        gluing.push(format!(
            "{} nodes for {} components",
            c.nodes.len(),
            comps.len()
        ));
    }
    for (k, node) in c.nodes.iter().enumerate() {
        let (Some(a), Some(b)) = (comps.get(k), comps.get(k + 1)) else {
            break;
        };
        if node.left != a.index || node.right != b.index {
            gluing.push(format!("node {k} labelled ({}, {})", node.left, node.right));
        }
        let out = split.limit(&a.base_space, Direction::Infinity);
        let inn = split.limit(&b.base_space, Direction::Zero);
        match (out, inn) {
            (Ok(out), Ok(inn)) if out == node.subspace && inn == node.subspace => {}
            (Ok(_), Ok(_)) => gluing.push(format!(
                "({}, {}): limits differ from node",
                a.index, b.index
            )),
            (Err(e), _) | (_, Err(e)) => gluing.push(format!("({}, {}): {e}", a.index, b.index)),
        }
    }

    // (b) degrees: recorded = computed, kinds consistent, total r + 1.
    let mut degree = Vec::new();
    let mut total = 0;
    for comp in comps {
        match split.orbit_degree(&comp.base_space) {
            Ok(deg) => {
                if deg != comp.degree_in_g {
                    degree.push(format!(
                        "{}: recorded degree {} but orbit has {deg}",
                        comp.index, comp.degree_in_g
                    ));
                }
                let kind = if deg == 0 {
                    ComponentKind::Fixed
                } else {
                    ComponentKind::Orbit
                };
                if kind != comp.kind {
                    degree.push(format!(
                        "{}: kind {:?} but degree {deg}",
                        comp.index, comp.kind
                    ));
                }
                if deg == 0 && !comp.index.is_integer() {
                    degree.push(format!("{}: constant non-integer component", comp.index));
                }
                total += deg;
            }
            Err(e) => degree.push(format!("{}: {e}", comp.index)),
        }
    }
    if total != c.r + 1 {
        degree.push(format!("total degree {total}, expected {}", c.r + 1));
    }

    // (c) transversal meeting at each node.
    let mut transversal = Vec::new();
    for (k, node) in c.nodes.iter().enumerate() {
        let (Some(a), Some(b)) = (comps.get(k), comps.get(k + 1)) else {
            break;
        };
        let both_move = a.degree_in_g > 0 && b.degree_in_g > 0;
        if both_move {
            match split.orbit_intersection(&a.base_space, &b.base_space) {
                Ok(Some(p)) if p == node.subspace => {}
                Ok(Some(_)) => transversal.push(format!(
                    "({}, {}): orbits meet away from node",
                    a.index, b.index
                )),
                Ok(None) => {
                    transversal.push(format!("({}, {}): orbits are disjoint", a.index, b.index))
                }
                Err(e) => transversal.push(format!("({}, {}): {e}", a.index, b.index)),
            }
        }
        match split.tangent_certificate(&node.subspace, &a.base_space, &b.base_space) {
            Ok(cert) if cert.passes() => {}
            Ok(cert) => transversal.push(format!(
                "({}, {}): tangent certificate {cert:?}",
                a.index, b.index
            )),
            Err(e) => transversal.push(format!("({}, {}): {e}", a.index, b.index)),
        }
    }

    // (d) weight intervals [dim iota1_inv, dim rho1] chain from r+1 down to 0.
    let mut intervals = Vec::new();
    let mut bounds = Vec::with_capacity(comps.len());
    for comp in comps {
        let (Ok(profile), Ok(weights)) = (
            split.block_profile(&comp.base_space),
            split.orbit_weight_profile(&comp.base_space),
        ) else {
            intervals.push(format!("{}: wrong ambient", comp.index));
            continue;
        };
        let (lo, hi) = (profile.iota1_inv.dim(), profile.rho1.dim());
        let n = comp.base_space.dim();
        let expected: std::collections::BTreeSet<_> = (lo..=hi).map(|a| (a, n - a)).collect();
        if weights != expected {
            intervals.push(format!(
                "{}: weights {weights:?} are not the interval [{lo}, {hi}]",
                comp.index
            ));
        }
        bounds.push((lo, hi));
    }
    if let (Some(first), Some(last)) = (bounds.first(), bounds.last()) {
        if first.1 != c.r + 1 {
            intervals.push(format!(
                "first interval ends at {}, expected {}",
                first.1,
                c.r + 1
            ));
        }
        if last.0 != 0 {
            intervals.push(format!("last interval starts at {}, expected 0", last.0));
        }
    }
    for (k, w) in bounds.windows(2).enumerate() {
        if w[0].0 != w[1].1 {
            intervals.push(format!(
                "intervals {k} and {} do not meet: {:?} {:?}",
                k + 1,
                w[0],
                w[1]
            ));
        }
    }

    // (e) every base space is a linear series at its index.
    let membership = comps
        .iter()
        .filter(|comp| {
            !c.model
                .is_generalized_linear_series(&comp.base_space, &comp.index, c.r as i64)
        })
        .map(|comp| format!("{}: not in the section space", comp.index))
        .collect();

    ChainReport {
        checks: vec![
            outcome(CHECK_GLUING, gluing),
            outcome(CHECK_DEGREE, degree),
            outcome(CHECK_TRANSVERSAL, transversal),
            outcome(CHECK_INTERVALS, intervals),
            outcome(CHECK_MEMBERSHIP, membership),
        ],
    }
}

/// Deterministic DOT rendering: one vertex per component, one edge per node
/// labelled with the node's `(dim W1 part, dim W2 part)`.
pub fn emit_dot(c: &ContinuousChain) -> String {
    let split = c.model.split();
    let mut out = String::new();
    writeln!(out, "digraph chain {{").unwrap();
    writeln!(out, "  rankdir=LR;").unwrap();
    writeln!(out, "  node [shape=box];").unwrap();
    for (k, comp) in c.components.iter().enumerate() {
        let kind = match comp.kind {
            ComponentKind::Fixed => "fixed",
            ComponentKind::Orbit => "orbit",
        };
        writeln!(
            out,
            "  c{k} [label=\"i={}\\n{kind}\\ndeg {}\"];",
            comp.index, comp.degree_in_g
        )
        .unwrap();
    }
    for (k, node) in c.nodes.iter().enumerate() {
        let label = match split.block_profile(&node.subspace) {
            Ok(p) => format!("({},{})", p.iota1_inv.dim(), p.iota2_inv.dim()),
            Err(_) => "?".into(),
        };
        writeln!(out, "  c{k} -> c{} [label=\"{label}\"];", k + 1).unwrap();
    }
    writeln!(out, "}}").unwrap();
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linalg::Matrix;

    fn span(n: usize, vs: &[&[i64]]) -> QSubspace {
        QSubspace::from_matrix(&Matrix::from_ints(n, vs).unwrap())
    }

    fn q(n: i64, d: i64) -> Rational {
        Rational::new(n.into(), d.into())
    }

    fn e4() -> LevelDeltaLLS {
        LevelDeltaLLS::new(
            CurveModel::new(1),
            0,
            DeltaSet::unit(1),
            vec![span(4, &[&[1, 0, 0, 1]]), span(4, &[&[0, 0, 0, 1]])],
        )
        .unwrap()
    }

    fn e5() -> LevelDeltaLLS {
        LevelDeltaLLS::new(
            CurveModel::new(1),
            0,
            DeltaSet::unit(1),
            vec![span(4, &[&[0, 1, 0, 0]]), span(4, &[&[0, 0, 0, 1]])],
        )
        .unwrap()
    }

    #[test]
    fn e4_chain() {
        let c = build_chain(&e4()).unwrap();
        assert_eq!(c.components.len(), 2);
        assert_eq!(c.components[0].kind, ComponentKind::Orbit);
        assert_eq!(c.components[0].degree_in_g, 1);
        assert_eq!(c.components[0].target, Target::Component(0));
        assert_eq!(c.components[1].kind, ComponentKind::Fixed);
        assert_eq!(c.components[1].degree_in_g, 0);
        assert_eq!(c.nodes.len(), 1);
        assert_eq!(c.nodes[0].subspace, span(4, &[&[0, 0, 0, 1]]));
        assert_eq!(
            c.hilbert,
            HilbertData {
                u_coeff: 1,
                v_coeff: 0,
                s_coeffs: vec![1, 1],
                constant: 1
            }
        );
        let report = validate_chain(&c);
        assert!(report.passed(), "{report:?}");
        assert_eq!(evaluate_at_base_points(&c).unwrap(), e4());
    }

    #[test]
    fn e5_fails_at_first_pair() {
        assert_eq!(
            build_chain(&e5()),
            Err(Error::NotExact(Box::new((q(0, 1), q(1, 1)))))
        );
    }

    #[test]
    fn single_component() {
        // d = 0, r = 0: U = <1> ⊕ <1>, the only section space is <(1, 1)>.
        let g = LevelDeltaLLS::new(
            CurveModel::new(0),
            0,
            DeltaSet::unit(0),
            vec![span(2, &[&[1, 1]])],
        )
        .unwrap();
        let c = build_chain(&g).unwrap();
        assert_eq!(c.components.len(), 1);
        assert!(c.nodes.is_empty());
        assert_eq!(c.components[0].degree_in_g, 1);
        assert_eq!(
            c.components[0].degree_in_g,
            g.split().orbit_degree(&g.spaces()[0]).unwrap()
        );
        assert!(validate_chain(&c).passed());
        assert_eq!(evaluate_at_base_points(&c).unwrap(), g);
        let dot = emit_dot(&c);
        assert_eq!(dot.matches("label=\"i=").count(), 1);
        assert_eq!(dot.matches("->").count(), 0);
    }

    #[test]
    fn non_minimal_rejected() {
        let g = e4();
        let node = g
            .split()
            .limit(&g.spaces()[0], Direction::Infinity)
            .unwrap();
        let padded = LevelDeltaLLS::new(
            g.model(),
            0,
            DeltaSet::new(1, &[2]).unwrap(),
            vec![g.spaces()[0].clone(), node, g.spaces()[1].clone()],
        )
        .unwrap();
        assert_eq!(build_chain(&padded), Err(Error::NotMinimal(q(1, 2))));
    }

    #[test]
    fn corrupted_node_fails_gluing() {
        let mut c = build_chain(&e4()).unwrap();
        c.nodes[0].subspace = span(4, &[&[0, 1, 0, 0]]);
        let report = validate_chain(&c);
        assert!(!report.get(CHECK_GLUING).unwrap().passed);
        assert!(report.get(CHECK_MEMBERSHIP).unwrap().passed);
    }

    #[test]
    fn scaled_integer_slot_leaves_section_space() {
        let mut c = build_chain(&e4()).unwrap();
        let split = c.model.split();
        c.components[0].base_space = split.act(&q(2, 1), &c.components[0].base_space).unwrap();
        let report = validate_chain(&c);
        assert!(!report.get(CHECK_MEMBERSHIP).unwrap().passed);
    }

    #[test]
    fn duplicated_integer_component() {
        let mut c = build_chain(&e4()).unwrap();
        let dup = c.components[1].clone();
        c.components.push(dup);
        assert_eq!(
            hilbert_coefficients(&c),
            Err(Error::Multiplicity {
                component: 1,
                multiplicity: 2
            })
        );
    }

    #[test]
    fn dot_is_deterministic() {
        let a = emit_dot(&build_chain(&e4()).unwrap());
        let b = emit_dot(&build_chain(&e4()).unwrap());
        assert_eq!(a, b);
        assert_eq!(a.matches("label=\"i=").count(), 2);
        assert_eq!(a.matches("->").count(), 1);
        assert!(a.contains("c0 -> c1 [label=\"(0,1)\"]"));
    }
}
