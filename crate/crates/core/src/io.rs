//! JSON formats.
//!
//! Rationals are strings (`"3"`, `"-1/2"`); plain JSON integers are accepted
//! on input. Matrices are arrays of rows. Every file is wrapped as
//!
//! ```json
//! { "schema_version": 1, "kind": "lls" | "chain" | "subspace", "payload": … }
//! ```

use std::collections::BTreeMap;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::chain::{
    ChainComponent, ChainNode, ComponentKind, ContinuousChain, HilbertData, Target,
};
use crate::delta::DeltaSet;
use crate::error::{Error, Result};
use crate::linalg::Matrix;
use crate::model::CurveModel;
use crate::series::LevelDeltaLLS;
use crate::torus::TorusSplit;
use crate::{QSubspace, Rational};

pub const SCHEMA_VERSION: u32 = 1;

/// A subspace together with the splitting it is studied under.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SubspaceTask {
    pub split: TorusSplit,
    pub subspace: QSubspace,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Instance {
    Lls(LevelDeltaLLS),
    Chain(ContinuousChain),
    Subspace(SubspaceTask),
}

impl Instance {
    pub fn kind(&self) -> &'static str {
        match self {
            Instance::Lls(_) => "lls",
            Instance::Chain(_) => "chain",
            Instance::Subspace(_) => "subspace",
        }
    }
}

#[derive(Serialize, Deserialize)]
#[serde(untagged)]
enum Entry {
    Text(String),
    Int(i64),
}

type Rows = Vec<Vec<Entry>>;

#[derive(Serialize, Deserialize)]
struct FileDto {
    schema_version: u32,
    kind: String,
    payload: serde_json::Value,
}

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct SubspaceDto {
    ambient_dim: usize,
    basis: Rows,
}

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct TaskDto {
    split: TorusSplit,
    subspace: Rows,
}

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct LlsDto {
    d: usize,
    r: usize,
    delta: Vec<usize>,
    spaces: BTreeMap<String, Rows>,
}

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct ComponentDto {
    index: String,
    base_space: Rows,
    kind: ComponentKind,
    target: Target,
    degree_in_g: usize,
}

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct NodeDto {
    left: String,
    right: String,
    subspace: Rows,
}

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct ChainDto {
    model: CurveModel,
    r: usize,
    delta: Vec<usize>,
    components: Vec<ComponentDto>,
    nodes: Vec<NodeDto>,
    hilbert: HilbertData,
}

fn malformed(e: impl std::fmt::Display) -> Error {
    Error::Malformed(e.to_string())
}

pub fn format_rational(x: &Rational) -> String {
    x.to_string()
}

pub fn parse_rational(s: &str) -> Result<Rational> {
    let x =
        Rational::from_str(s.trim()).map_err(|_| malformed(format!("not a rational: {s:?}")))?;
    Ok(x)
}

fn scalar_value(x: &Entry) -> Result<Rational> {
    match x {
        Entry::Text(s) => parse_rational(s),
        Entry::Int(n) => Ok(Rational::from_integer((*n).into())),
    }
}

fn rows_out(m: &Matrix<Rational>) -> Rows {
    m.rows()
        .map(|r| r.iter().map(|x| Entry::Text(format_rational(x))).collect())
        .collect()
}

fn rows_in(ambient: usize, rows: &Rows) -> Result<QSubspace> {
    let vectors = rows
        .iter()
        .map(|r| {
            if r.len() != ambient {
                return Err(malformed(format!(
                    "row of length {}, expected {ambient}",
                    r.len()
                )));
            }
            r.iter().map(scalar_value).collect()
        })
        .collect::<Result<Vec<Vec<Rational>>>>()?;
    QSubspace::from_spanning(ambient, &vectors)
}

/// Rows that must be linearly independent (an explicit `n`-dimensional space).
fn rows_in_exact(ambient: usize, rows: &Rows) -> Result<QSubspace> {
    let v = rows_in(ambient, rows)?;
    if v.dim() != rows.len() {
        return Err(malformed(format!(
            "{} rows span only {} dimensions",
            rows.len(),
            v.dim()
        )));
    }
    Ok(v)
}

fn lls_to_dto(g: &LevelDeltaLLS) -> LlsDto {
    LlsDto {
        d: g.d(),
        r: g.r(),
        delta: g.delta().delta().to_vec(),
        spaces: g
            .entries()
            .map(|(i, v)| (format_rational(i), rows_out(v.basis())))
            .collect(),
    }
}

fn lls_from_dto(dto: LlsDto) -> Result<LevelDeltaLLS> {
    let delta = DeltaSet::new(dto.d, &dto.delta)?;
    let model = CurveModel::new(dto.d);
    let mut spaces = BTreeMap::new();
    for (key, rows) in &dto.spaces {
        let i = parse_rational(key)?;
        if delta.position(&i).is_none() {
            return Err(malformed(format!("index {i} is not in the index set")));
        }
        if spaces
            .insert(i.clone(), rows_in_exact(model.ambient(), rows)?)
            .is_some()
        {
            return Err(malformed(format!("index {i} given twice")));
        }
    }
    let g = LevelDeltaLLS::from_indexed(model, dto.r, delta, spaces)?;
    g.check_membership().map_err(malformed)?;
    Ok(g)
}

fn chain_to_dto(c: &ContinuousChain) -> ChainDto {
    ChainDto {
        model: c.model,
        r: c.r,
        delta: c.delta.delta().to_vec(),
        components: c
            .components
            .iter()
            .map(|comp| ComponentDto {
                index: format_rational(&comp.index),
                base_space: rows_out(comp.base_space.basis()),
                kind: comp.kind,
                target: comp.target,
                degree_in_g: comp.degree_in_g,
            })
            .collect(),
        nodes: c
            .nodes
            .iter()
            .map(|n| NodeDto {
                left: format_rational(&n.left),
                right: format_rational(&n.right),
                subspace: rows_out(n.subspace.basis()),
            })
            .collect(),
        hilbert: c.hilbert.clone(),
    }
}

/// Loads the chain's shape (ambient dimensions, index set, dimensions `r+1`);
/// the geometric claims are left to [`crate::chain::validate_chain`].
fn chain_from_dto(dto: ChainDto) -> Result<ContinuousChain> {
    let delta = DeltaSet::new(dto.model.d, &dto.delta)?;
    let ambient = dto.model.ambient();
    let n = dto.r + 1;
    let components = dto
        .components
        .iter()
        .map(|c| {
            let index = parse_rational(&c.index)?;
            if delta.position(&index).is_none() {
                return Err(malformed(format!(
                    "component index {index} is not in the index set"
                )));
            }
            let base_space = rows_in_exact(ambient, &c.base_space)?;
            if base_space.dim() != n {
                return Err(Error::DimensionMismatch {
                    expected: n,
                    found: base_space.dim(),
                });
            }
            Ok(ChainComponent {
                index,
                base_space,
                kind: c.kind,
                target: c.target,
                degree_in_g: c.degree_in_g,
            })
        })
        .collect::<Result<Vec<_>>>()?;
    let nodes = dto
        .nodes
        .iter()
        .map(|nd| {
            let subspace = rows_in_exact(ambient, &nd.subspace)?;
            if subspace.dim() != n {
                return Err(Error::DimensionMismatch {
                    expected: n,
                    found: subspace.dim(),
                });
            }
            Ok(ChainNode {
                left: parse_rational(&nd.left)?,
                right: parse_rational(&nd.right)?,
                subspace,
            })
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(ContinuousChain {
        model: dto.model,
        r: dto.r,
        delta,
        components,
        nodes,
        hilbert: dto.hilbert,
    })
}

fn task_from_dto(dto: TaskDto) -> Result<SubspaceTask> {
    let split = TorusSplit::new(dto.split.dim1, dto.split.dim2)?;
    Ok(SubspaceTask {
        split,
        subspace: rows_in_exact(split.ambient(), &dto.subspace)?,
    })
}

fn payload_value(instance: &Instance) -> serde_json::Value {
    let value = match instance {
        Instance::Lls(g) => serde_json::to_value(lls_to_dto(g)),
        Instance::Chain(c) => serde_json::to_value(chain_to_dto(c)),
        Instance::Subspace(t) => serde_json::to_value(TaskDto {
            split: t.split,
            subspace: rows_out(t.subspace.basis()),
        }),
    };
    value.expect("plain data serializes")
}

pub fn to_json(instance: &Instance) -> String {
    let file = FileDto {
        schema_version: SCHEMA_VERSION,
        kind: instance.kind().into(),
        payload: payload_value(instance),
    };
    let mut out = serde_json::to_string_pretty(&file).expect("plain data serializes");
    out.push('\n');
    out
}

pub fn from_json(text: &str) -> Result<Instance> {
    let file: FileDto = serde_json::from_str(text).map_err(malformed)?;
    if file.schema_version != SCHEMA_VERSION {
        return Err(malformed(format!(
            "unsupported schema_version {}",
            file.schema_version
        )));
    }
    match file.kind.as_str() {
        "lls" => lls_from_dto(serde_json::from_value(file.payload).map_err(malformed)?)
            .map(Instance::Lls),
        "chain" => chain_from_dto(serde_json::from_value(file.payload).map_err(malformed)?)
            .map(Instance::Chain),
        "subspace" => task_from_dto(serde_json::from_value(file.payload).map_err(malformed)?)
            .map(Instance::Subspace),
        other => Err(malformed(format!("unknown kind {other:?}"))),
    }
}

/// A bare subspace as `{"ambient_dim", "basis"}`.
pub fn subspace_to_json(v: &QSubspace) -> String {
    serde_json::to_string_pretty(&SubspaceDto {
        ambient_dim: v.ambient_dim(),
        basis: rows_out(v.basis()),
    })
    .expect("plain data serializes")
}

pub fn subspace_from_json(text: &str) -> Result<QSubspace> {
    let dto: SubspaceDto = serde_json::from_str(text).map_err(malformed)?;
    rows_in(dto.ambient_dim, &dto.basis)
}
