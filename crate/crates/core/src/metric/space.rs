use petgraph::algo::dijkstra;
use petgraph::graph::{NodeIndex, UnGraph};

use crate::error::{Error, Result};

/// A finite metric space over point ids `0..len()`.
#[derive(Debug, Clone, PartialEq)]
pub enum MetricSpace {
    /// Points in R^dim under the Euclidean norm.
    Euclidean { dim: usize, points: Vec<Vec<f64>> },
    /// Shortest-path metric of an undirected, positively weighted graph.
    /// `apsp` is the row-major all-pairs table, filled once at construction.
    Graph {
        num_vertices: usize,
        edges: Vec<(usize, usize, f64)>,
        apsp: Vec<f64>,
    },
    /// Explicit symmetric distance table, row-major.
    Matrix { size: usize, table: Vec<f64> },
}

impl MetricSpace {
    pub fn euclidean(dim: usize, points: Vec<Vec<f64>>) -> Result<Self> {
        if dim == 0 {
            return Err(Error::invalid("euclidean dim must be positive"));
        }
        for (i, p) in points.iter().enumerate() {
            if p.len() != dim {
                return Err(Error::invalid(format!(
                    "point {i} has {} coordinates, expected {dim}",
                    p.len()
                )));
            }
            if p.iter().any(|x| !x.is_finite()) {
                return Err(Error::invalid(format!("point {i} has a non-finite coordinate")));
            }
        }
        Ok(MetricSpace::Euclidean { dim, points })
    }

    /// Builds the graph metric by one Dijkstra run per vertex.
    /// Unreachable pairs are stored as `f64::INFINITY`.
    pub fn graph(num_vertices: usize, edges: Vec<(usize, usize, f64)>) -> Result<Self> {
        if num_vertices == 0 {
            return Err(Error::invalid("graph must have at least one vertex"));
        }
        let mut g: UnGraph<(), f64> = UnGraph::with_capacity(num_vertices, edges.len());
        for _ in 0..num_vertices {
            g.add_node(());
        }
        for (i, &(u, v, w)) in edges.iter().enumerate() {
            if u >= num_vertices || v >= num_vertices {
                return Err(Error::invalid(format!(
                    "edge {i} references a vertex outside 0..{num_vertices}"
                )));
            }
            if !(w.is_finite() && w > 0.0) {
                return Err(Error::invalid(format!(
                    "edge {i} has weight {w}; weights must be positive and finite"
                )));
            }
            g.add_edge(NodeIndex::new(u), NodeIndex::new(v), w);
        }
        let mut apsp = vec![f64::INFINITY; num_vertices * num_vertices];
        for s in 0..num_vertices {
            let row = dijkstra(&g, NodeIndex::new(s), None, |e| *e.weight());
            for (node, d) in row {
                apsp[s * num_vertices + node.index()] = d;
            }
        }
        Ok(MetricSpace::Graph {
            num_vertices,
            edges,
            apsp,
        })
    }

    /// Validates symmetry, zero diagonal and non-negativity; the O(n^3)
    /// triangle check runs only when `validate_triangle` is set.
    pub fn matrix(size: usize, table: Vec<f64>, validate_triangle: bool) -> Result<Self> {
        if table.len() != size * size {
            return Err(Error::invalid(format!(
                "matrix has {} entries, expected {}",
                table.len(),
                size * size
            )));
        }
        for i in 0..size {
            for j in 0..size {
                let d = table[i * size + j];
                if !(d.is_finite() && d >= 0.0) {
                    return Err(Error::invalid(format!(
                        "dist[{i}][{j}] = {d} is not a finite non-negative real"
                    )));
                }
            }
            if table[i * size + i] != 0.0 {
                return Err(Error::invalid(format!("dist[{i}][{i}] must be 0")));
            }
        }
        for i in 0..size {
            for j in (i + 1)..size {
                if table[i * size + j] != table[j * size + i] {
                    return Err(Error::invalid(format!(
                        "asymmetric: dist[{i}][{j}] = {} but dist[{j}][{i}] = {}",
                        table[i * size + j],
                        table[j * size + i]
                    )));
                }
            }
        }
        if validate_triangle {
            for a in 0..size {
                for b in 0..size {
                    for c in 0..size {
                        let ab = table[a * size + b];
                        let bc = table[b * size + c];
                        let ac = table[a * size + c];
                        if ac > ab + bc + 1e-9 * ac.max(1.0) {
                            return Err(Error::invalid(format!(
                                "triangle inequality violated: dist[{a}][{c}] > dist[{a}][{b}] + dist[{b}][{c}]"
                            )));
                        }
                    }
                }
            }
        }
        Ok(MetricSpace::Matrix { size, table })
    }

    pub fn len(&self) -> usize {
        match self {
            MetricSpace::Euclidean { points, .. } => points.len(),
            MetricSpace::Graph { num_vertices, .. } => *num_vertices,
            MetricSpace::Matrix { size, .. } => *size,
        }
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    pub fn kind(&self) -> &'static str {
        match self {
            MetricSpace::Euclidean { .. } => "euclidean",
            MetricSpace::Graph { .. } => "graph",
            MetricSpace::Matrix { .. } => "matrix",
        }
    }

    /// Euclidean dimension, if any.
    pub fn dim(&self) -> Option<usize> {
        match self {
            MetricSpace::Euclidean { dim, .. } => Some(*dim),
            _ => None,
        }
    }

    pub fn coords(&self, point: usize) -> Option<&[f64]> {
        match self {
            MetricSpace::Euclidean { points, .. } => points.get(point).map(Vec::as_slice),
            _ => None,
        }
    }

    /// Distance between two point ids. Panics on out-of-range ids; the
    /// checked entry point is [`crate::Instance::dist`].
    pub fn dist(&self, a: usize, b: usize) -> f64 {
        match self {
            MetricSpace::Euclidean { points, .. } => euclid(&points[a], &points[b]),
            MetricSpace::Graph { num_vertices, apsp, .. } => apsp[a * num_vertices + b],
            MetricSpace::Matrix { size, table } => table[a * size + b],
        }
    }
}

pub(crate) fn euclid(a: &[f64], b: &[f64]) -> f64 {
    a.iter().zip(b).map(|(x, y)| (x - y) * (x - y)).sum::<f64>().sqrt()
}
