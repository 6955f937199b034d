//! JSON documents: instances (format version 1), results and ground-truth
//! sidecars. Every real is written with 17 significant digits, so a value
//! read back is bit-identical to the one written.

use std::str::FromStr;

use serde::{Deserialize, Deserializer, Serialize, Serializer};
use serde_json::value::RawValue;

use crate::error::{Error, Result};
use crate::generators::GroundTruth;
use crate::metric::{objective, Committee, Instance, MetricSpace, PointRef};
use crate::result::{SolveResult, Status};

pub const FORMAT_VERSION: u32 = 1;

/// Shortest round-trip-safe rendering is not enough for byte-stable output
/// across tools, so reals always carry 17 significant digits.
pub fn format_real(x: f64) -> String {
    format!("{x:.16e}")
}

fn real_number(x: f64) -> std::result::Result<serde_json::Number, String> {
    if !x.is_finite() {
        return Err(format!("non-finite value {x} cannot be written as JSON"));
    }
    serde_json::Number::from_str(&format_real(x)).map_err(|e| e.to_string())
}

fn ser_real<S: Serializer>(x: &f64, s: S) -> std::result::Result<S::Ok, S::Error> {
    real_number(*x).map_err(serde::ser::Error::custom)?.serialize(s)
}

fn ser_opt_real<S: Serializer>(x: &Option<f64>, s: S) -> std::result::Result<S::Ok, S::Error> {
    match x {
        Some(v) => ser_real(v, s),
        None => s.serialize_none(),
    }
}

fn ser_rows<S: Serializer>(rows: &[Vec<f64>], s: S) -> std::result::Result<S::Ok, S::Error> {
    let nums = rows
        .iter()
        .map(|r| {
            r.iter()
                .map(|&x| real_number(x))
                .collect::<std::result::Result<Vec<_>, _>>()
        })
        .collect::<std::result::Result<Vec<_>, _>>()
        .map_err(serde::ser::Error::custom)?;
    nums.serialize(s)
}

#[derive(Serialize)]
struct EdgeOut(usize, usize, #[serde(serialize_with = "ser_real")] f64);

fn ser_edges<S: Serializer>(edges: &[(usize, usize, f64)], s: S) -> std::result::Result<S::Ok, S::Error> {
    edges
        .iter()
        .map(|&(u, v, w)| EdgeOut(u, v, w))
        .collect::<Vec<_>>()
        .serialize(s)
}

#[derive(Debug, Clone, PartialEq, Serialize)]
#[serde(tag = "kind", rename_all = "lowercase")]
pub enum SpaceDoc {
    Euclidean {
        dim: usize,
        #[serde(serialize_with = "ser_rows")]
        voters: Vec<Vec<f64>>,
        #[serde(serialize_with = "ser_rows")]
        candidates: Vec<Vec<f64>>,
    },
    Graph {
        num_vertices: usize,
        #[serde(serialize_with = "ser_edges")]
        edges: Vec<(usize, usize, f64)>,
        voters: Vec<usize>,
        candidates: Vec<usize>,
    },
    Matrix {
        num_voters: usize,
        num_candidates: usize,
        #[serde(serialize_with = "ser_rows")]
        dist: Vec<Vec<f64>>,
    },
}

// Typed bodies for reading. Serde's tagged-enum support buffers the input,
// which loses exact numbers and field paths, so the tag is read first and
// the body decoded in a second pass.

#[derive(Deserialize)]
struct KindOnly {
    kind: String,
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct EuclideanBody {
    #[allow(dead_code)]
    kind: String,
    dim: usize,
    voters: Vec<Vec<f64>>,
    candidates: Vec<Vec<f64>>,
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct GraphBody {
    #[allow(dead_code)]
    kind: String,
    num_vertices: usize,
    edges: Vec<(usize, usize, f64)>,
    voters: Vec<usize>,
    candidates: Vec<usize>,
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct MatrixBody {
    #[allow(dead_code)]
    kind: String,
    num_voters: usize,
    num_candidates: usize,
    dist: Vec<Vec<f64>>,
}

impl SpaceDoc {
    fn parse(raw: &RawValue) -> Result<Self> {
        let text = raw.get();
        let kind: KindOnly = from_json_at(text, "space")?;
        Ok(match kind.kind.as_str() {
            "euclidean" => {
                let b: EuclideanBody = from_json_at(text, "space")?;
                SpaceDoc::Euclidean {
                    dim: b.dim,
                    voters: b.voters,
                    candidates: b.candidates,
                }
            }
            "graph" => {
                let b: GraphBody = from_json_at(text, "space")?;
                SpaceDoc::Graph {
                    num_vertices: b.num_vertices,
                    edges: b.edges,
                    voters: b.voters,
                    candidates: b.candidates,
                }
            }
            "matrix" => {
                let b: MatrixBody = from_json_at(text, "space")?;
                SpaceDoc::Matrix {
                    num_voters: b.num_voters,
                    num_candidates: b.num_candidates,
                    dist: b.dist,
                }
            }
            other => {
                return schema_err(
                    "space.kind",
                    format!("unknown space kind {other:?} (expected euclidean, graph or matrix)"),
                )
            }
        })
    }
}

/// Instance document, schema version 1.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct InstanceDoc {
    pub format_version: u32,
    pub space: SpaceDoc,
    pub k: usize,
    pub lambda: usize,
    #[serde(serialize_with = "ser_opt_real", skip_serializing_if = "Option::is_none")]
    pub t: Option<f64>,
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct InstanceBody<'a> {
    format_version: u32,
    #[serde(borrow)]
    space: &'a RawValue,
    k: usize,
    lambda: usize,
    #[serde(default)]
    t: Option<f64>,
}

fn schema_err<T>(path: impl Into<String>, message: impl Into<String>) -> Result<T> {
    Err(Error::schema(path, message))
}

fn from_json_at<'de, T: Deserialize<'de>>(text: &'de str, prefix: &str) -> Result<T> {
    let join = |path: String| match (prefix.is_empty(), path == ".") {
        (true, true) => "$".to_string(),
        (true, false) => path,
        (false, true) => prefix.to_string(),
        (false, false) => format!("{prefix}.{path}"),
    };
    let mut de = serde_json::Deserializer::from_str(text);
    let value: T = serde_path_to_error::deserialize(&mut de).map_err(|e| {
        let path = join(e.path().to_string());
        Error::schema(path, e.into_inner().to_string())
    })?;
    de.end().map_err(|e| Error::schema(join(".".into()), e.to_string()))?;
    Ok(value)
}

fn from_json<'de, T: Deserialize<'de>>(text: &'de str) -> Result<T> {
    from_json_at(text, "")
}

impl InstanceDoc {
    pub fn parse(text: &str) -> Result<Self> {
        let body: InstanceBody = from_json(text)?;
        Ok(InstanceDoc {
            format_version: body.format_version,
            space: SpaceDoc::parse(body.space)?,
            k: body.k,
            lambda: body.lambda,
            t: body.t,
        })
    }

    pub fn to_instance(&self, validate_triangle: bool) -> Result<Instance> {
        if self.format_version != FORMAT_VERSION {
            return schema_err(
                "format_version",
                format!(
                    "unsupported version {} (expected {FORMAT_VERSION})",
                    self.format_version
                ),
            );
        }
        let (space, voters, candidates) = match &self.space {
            SpaceDoc::Euclidean {
                dim,
                voters,
                candidates,
            } => {
                for (name, rows) in [("voters", voters), ("candidates", candidates)] {
                    for (i, row) in rows.iter().enumerate() {
                        if row.len() != *dim {
                            return schema_err(
                                format!("space.{name}[{i}]"),
                                format!("expected {dim} coordinates, got {}", row.len()),
                            );
                        }
                    }
                }
                let (nv, nc) = (voters.len(), candidates.len());
                let points: Vec<Vec<f64>> = voters.iter().chain(candidates).cloned().collect();
                let space = MetricSpace::euclidean(*dim, points).map_err(|e| Error::schema("space", e.to_string()))?;
                (space, (0..nv).collect(), (nv..nv + nc).collect())
            }
            SpaceDoc::Graph {
                num_vertices,
                edges,
                voters,
                candidates,
            } => {
                for (i, &(u, v, w)) in edges.iter().enumerate() {
                    if w <= 0.0 || !w.is_finite() {
                        return schema_err(
                            format!("space.edges[{i}][2]"),
                            format!("edge weight must be positive and finite, got {w}"),
                        );
                    }
                    for (j, x) in [(0, u), (1, v)] {
                        if x >= *num_vertices {
                            return schema_err(
                                format!("space.edges[{i}][{j}]"),
                                format!("vertex {x} out of range (num_vertices = {num_vertices})"),
                            );
                        }
                    }
                }
                let space = MetricSpace::graph(*num_vertices, edges.clone())
                    .map_err(|e| Error::schema("space.edges", e.to_string()))?;
                (space, voters.clone(), candidates.clone())
            }
            SpaceDoc::Matrix {
                num_voters,
                num_candidates,
                dist,
            } => {
                let n = num_voters + num_candidates;
                if dist.len() != n {
                    return schema_err("space.dist", format!("expected {n} rows, got {}", dist.len()));
                }
                for (i, row) in dist.iter().enumerate() {
                    if row.len() != n {
                        return schema_err(
                            format!("space.dist[{i}]"),
                            format!("expected {n} entries, got {}", row.len()),
                        );
                    }
                    if let Some(j) = row.iter().position(|&x| x < 0.0 || !x.is_finite()) {
                        return schema_err(
                            format!("space.dist[{i}][{j}]"),
                            format!("distance must be non-negative and finite, got {}", row[j]),
                        );
                    }
                }
                let table: Vec<f64> = dist.iter().flatten().copied().collect();
                let space = MetricSpace::matrix(n, table, validate_triangle)
                    .map_err(|e| Error::schema("space.dist", e.to_string()))?;
                (space, (0..*num_voters).collect(), (*num_voters..n).collect())
            }
        };
        Instance::new(space, voters, candidates, self.k, self.lambda, self.t)
    }

    pub fn from_instance(inst: &Instance) -> Result<Self> {
        let space = match inst.space() {
            MetricSpace::Euclidean { dim, .. } => {
                let coords = |refs: &[usize]| -> Vec<Vec<f64>> {
                    refs.iter()
                        .map(|&p| inst.space().coords(p).expect("euclidean point").to_vec())
                        .collect()
                };
                SpaceDoc::Euclidean {
                    dim: *dim,
                    voters: coords(inst.voter_points()),
                    candidates: coords(inst.candidate_points()),
                }
            }
            MetricSpace::Graph {
                num_vertices, edges, ..
            } => SpaceDoc::Graph {
                num_vertices: *num_vertices,
                edges: edges.clone(),
                voters: inst.voter_points().to_vec(),
                candidates: inst.candidate_points().to_vec(),
            },
            MetricSpace::Matrix { .. } => {
                let refs: Vec<PointRef> = (0..inst.num_voters())
                    .map(PointRef::Voter)
                    .chain((0..inst.num_candidates()).map(PointRef::Candidate))
                    .collect();
                let dist = refs
                    .iter()
                    .map(|&a| refs.iter().map(|&b| inst.dist(a, b)).collect::<Result<Vec<_>>>())
                    .collect::<Result<Vec<_>>>()?;
                SpaceDoc::Matrix {
                    num_voters: inst.num_voters(),
                    num_candidates: inst.num_candidates(),
                    dist,
                }
            }
        };
        Ok(InstanceDoc {
            format_version: FORMAT_VERSION,
            space,
            k: inst.k(),
            lambda: inst.lambda(),
            t: inst.threshold(),
        })
    }
}

fn to_pretty<T: Serialize>(doc: &T) -> Result<String> {
    let mut s = serde_json::to_string_pretty(doc).map_err(|e| Error::schema("$", e.to_string()))?;
    s.push('\n');
    Ok(s)
}

pub fn parse_instance(text: &str, validate_triangle: bool) -> Result<Instance> {
    InstanceDoc::parse(text)?.to_instance(validate_triangle)
}

pub fn emit_instance(inst: &Instance) -> Result<String> {
    to_pretty(&InstanceDoc::from_instance(inst)?)
}

fn de_status<'de, D: Deserializer<'de>>(d: D) -> std::result::Result<Status, D::Error> {
    let s = String::deserialize(d)?;
    match s.as_str() {
        "feasible" => Ok(Status::Feasible),
        "infeasible" => Ok(Status::Infeasible),
        "approx" => Ok(Status::Approx),
        other => Err(serde::de::Error::custom(format!("unknown status {other:?}"))),
    }
}

fn ser_status<S: Serializer>(st: &Status, s: S) -> std::result::Result<S::Ok, S::Error> {
    s.serialize_str(st.as_str())
}

/// Result document.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ResultDoc {
    #[serde(serialize_with = "ser_status", deserialize_with = "de_status")]
    pub status: Status,
    pub committee: Option<Vec<usize>>,
    #[serde(serialize_with = "ser_opt_real")]
    pub value: Option<f64>,
    #[serde(serialize_with = "ser_opt_real")]
    pub guarantee: Option<f64>,
    pub algorithm: String,
    pub wall_time_ms: u64,
}

impl ResultDoc {
    pub fn parse(text: &str) -> Result<Self> {
        from_json(text)
    }
}

/// Checks a result against the instance (objective recomputed from
/// scratch) and renders it. Nothing is emitted on any mismatch.
pub fn emit_result(inst: &Instance, res: &SolveResult) -> Result<String> {
    let mismatch = |m: String| Err(Error::internal("cli", format!("refusing to emit result: {m}")));
    match (&res.committee, res.status) {
        (None, Status::Feasible | Status::Approx) => {
            return mismatch(format!("status {} without committee", res.status))
        }
        (Some(c), _) => {
            if c.len() != inst.k() {
                return mismatch(format!("committee {c} has {} members, k = {}", c.len(), inst.k()));
            }
            Committee::new(c.members().to_vec(), inst.num_candidates())?;
            let value = objective(inst, c.members())?;
            if res.value != Some(value) {
                return mismatch(format!("reported value {:?}, recomputed {value}", res.value));
            }
        }
        (None, Status::Infeasible) => {
            if res.value.is_some() {
                return mismatch("value without committee".into());
            }
        }
    }
    if let Some(g) = res.guarantee {
        if !(g > 0.0 && g <= 1.0) {
            return mismatch(format!("guarantee {g} outside (0, 1]"));
        }
    }
    to_pretty(&ResultDoc {
        status: res.status,
        committee: res.committee.as_ref().map(|c| c.members().to_vec()),
        value: res.value,
        guarantee: res.guarantee,
        algorithm: res.algorithm.clone(),
        wall_time_ms: res.wall_time_ms,
    })
}

#[derive(Serialize)]
struct TruthOut<'a> {
    answer: bool,
    witness: &'a Option<Vec<usize>>,
    #[serde(serialize_with = "ser_real")]
    threshold_t: f64,
    note: &'a str,
}

pub fn emit_ground_truth(gt: &GroundTruth) -> Result<String> {
    to_pretty(&TruthOut {
        answer: gt.answer,
        witness: &gt.witness,
        threshold_t: gt.threshold_t,
        note: &gt.note,
    })
}

pub fn parse_ground_truth(text: &str) -> Result<GroundTruth> {
    from_json(text)
}

#[cfg(test)]
mod tests {
    use super::*;

    const MINIMAL: &str = r#"{"format_version":1,"space":{"kind":"euclidean","dim":2,
        "voters":[[0,0]],"candidates":[[3,4]]},"k":1,"lambda":1}"#;

    #[test]
    fn minimal_round_trip() {
        let inst = parse_instance(MINIMAL, false).unwrap();
        assert_eq!(inst.vc(0, 0), 5.0);
        let text = emit_instance(&inst).unwrap();
        assert_eq!(InstanceDoc::parse(&text).unwrap(), InstanceDoc::parse(MINIMAL).unwrap());
        assert_eq!(parse_instance(&text, false).unwrap(), inst);
    }

    #[test]
    fn reals_keep_every_bit() {
        let x = 0.1f64 + 0.2;
        assert_eq!(format_real(x).parse::<f64>().unwrap(), x);
        let doc = format!(
            r#"{{"format_version":1,"space":{{"kind":"euclidean","dim":1,"voters":[[{}]],"candidates":[[1e-300]]}},"k":1,"lambda":1,"t":0.3}}"#,
            format_real(x)
        );
        let inst = parse_instance(&doc, false).unwrap();
        let back = parse_instance(&emit_instance(&inst).unwrap(), false).unwrap();
        assert_eq!(back, inst);
    }

    #[test]
    fn negative_weight_names_field() {
        let doc = r#"{"format_version":1,"space":{"kind":"graph","num_vertices":2,
            "edges":[[0,1,1],[1,0,-2]],"voters":[0],"candidates":[1]},"k":1,"lambda":1}"#;
        let err = parse_instance(doc, false).unwrap_err().to_string();
        assert!(err.contains("edges[1][2]"), "{err}");
    }

    #[test]
    fn asymmetric_matrix_names_pair() {
        let doc = r#"{"format_version":1,"space":{"kind":"matrix","num_voters":1,"num_candidates":1,
            "dist":[[0,1],[2,0]]},"k":1,"lambda":1}"#;
        let err = parse_instance(doc, false).unwrap_err().to_string();
        assert!(err.contains("asymmetric") && err.contains("[0][1]"), "{err}");
    }

    #[test]
    fn schema_errors_carry_paths() {
        let doc = r#"{"format_version":1,"space":{"kind":"euclidean","dim":2,"voters":[[0,"x"]],"candidates":[[1,1]]},"k":1,"lambda":1}"#;
        let err = parse_instance(doc, false).unwrap_err().to_string();
        assert!(err.contains("space.voters[0][1]"), "{err}");
        let doc = MINIMAL.replace("\"format_version\":1", "\"format_version\":2");
        assert!(parse_instance(&doc, false)
            .unwrap_err()
            .to_string()
            .contains("format_version"));
        let doc = MINIMAL.replace("\"lambda\":1", "\"lambda\":2");
        assert!(parse_instance(&doc, false).is_err());
    }

    #[test]
    fn result_recheck() {
        let inst = parse_instance(MINIMAL, false).unwrap();
        let c = Committee::new(vec![0], 1).unwrap();
        let mut res = SolveResult::with_committee(&inst, Status::Feasible, c, Some(1.0), "oracle").unwrap();
        let text = emit_result(&inst, &res).unwrap();
        let doc = ResultDoc::parse(&text).unwrap();
        assert_eq!(doc.value, Some(5.0));
        assert_eq!(doc.committee, Some(vec![0]));
        res.value = Some(4.0);
        assert!(emit_result(&inst, &res).is_err());
        let text = emit_result(&inst, &SolveResult::infeasible("planar")).unwrap();
        assert!(text.contains("\"committee\": null"));
    }

    #[test]
    fn matrix_and_graph_round_trip() {
        let doc = r#"{"format_version":1,"space":{"kind":"matrix","num_voters":1,"num_candidates":2,
            "dist":[[0,1,2],[1,0,1.5],[2,1.5,0]]},"k":2,"lambda":2,"t":1}"#;
        let inst = parse_instance(doc, true).unwrap();
        assert_eq!(parse_instance(&emit_instance(&inst).unwrap(), true).unwrap(), inst);
        let doc = r#"{"format_version":1,"space":{"kind":"graph","num_vertices":3,
            "edges":[[0,1,2],[1,2,0.5]],"voters":[0],"candidates":[1,2]},"k":1,"lambda":1}"#;
        let inst = parse_instance(doc, false).unwrap();
        assert_eq!(inst.vc(0, 1), 2.5);
        assert_eq!(parse_instance(&emit_instance(&inst).unwrap(), false).unwrap(), inst);
    }
}
