//! Finite simple graphs with an optional two-colouring and an optional
//! straight-line planar embedding.
//!
//! Embeddings are always derived from integer vertex positions: the rotation
//! at each vertex is its neighbour list sorted counter-clockwise by the
//! direction of the connecting segment, and faces are traced from the
//! rotation system. Positions may be given in any coordinate system related
//! to the Euclidean plane by an orientation-preserving linear map (the
//! triangular lattice uses skewed lattice coordinates), since such maps keep
//! both the cyclic order of directions and the sign of areas.

use alloc::collections::{BTreeMap, VecDeque};
use alloc::vec;
use alloc::vec::Vec;
use core::cmp::Ordering;
use core::fmt;

use crate::error::GraphError;
use crate::regions::{SquareCell, TriCell};

/// Unordered vertex pair, stored with the smaller index first.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Edge(usize, usize);

impl Edge {
    pub fn new(a: usize, b: usize) -> Self {
        if a <= b {
            Edge(a, b)
        } else {
            Edge(b, a)
        }
    }

    pub fn lo(self) -> usize {
        self.0
    }

    pub fn hi(self) -> usize {
        self.1
    }

    pub fn other(self, v: usize) -> usize {
        if v == self.0 {
            self.1
        } else {
            self.0
        }
    }

    pub fn touches(self, v: usize) -> bool {
        self.0 == v || self.1 == v
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum VertexLabel {
    Tri(TriCell),
    Square(SquareCell),
    /// Vertex of the `n`-cube, as a bit vector.
    Cube(u32),
}

impl fmt::Display for VertexLabel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            VertexLabel::Tri(c) => write!(f, "{c}"),
            VertexLabel::Square(c) => write!(f, "{c}"),
            VertexLabel::Cube(v) => write!(f, "{v:b}"),
        }
    }
}

/// Colour class of a bipartite graph.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Color {
    Even,
    Odd,
}

/// A face of an embedded graph, as the closed walk that keeps the face on
/// its left. Bounded faces are therefore walked counter-clockwise.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Face {
    pub darts: Vec<(usize, usize)>,
    /// Twice the signed area enclosed by the walk, in position units.
    pub twice_area: i64,
    pub component: usize,
    pub outer: bool,
}

impl Face {
    pub fn len(&self) -> usize {
        self.darts.len()
    }

    pub fn is_empty(&self) -> bool {
        self.darts.is_empty()
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Embedding {
    positions: Vec<(i64, i64)>,
    rotation: Vec<Vec<usize>>,
    dart_face: Vec<Vec<usize>>,
    faces: Vec<Face>,
    component: Vec<usize>,
    component_count: usize,
}

fn half_plane(d: (i64, i64)) -> u8 {
    if d.1 > 0 || (d.1 == 0 && d.0 > 0) {
        0
    } else {
        1
    }
}

fn cross(a: (i64, i64), b: (i64, i64)) -> i64 {
    a.0 * b.1 - a.1 * b.0
}

/// Counter-clockwise order of directions starting from the positive x-axis.
fn angle_cmp(a: (i64, i64), b: (i64, i64)) -> Ordering {
    half_plane(a)
        .cmp(&half_plane(b))
        .then_with(|| 0.cmp(&cross(a, b)))
}

impl Embedding {
    fn build(
        positions: Vec<(i64, i64)>,
        adjacency: &[Vec<usize>],
        component: &[usize],
        component_count: usize,
        edge_count_by_component: &[usize],
        vertex_count_by_component: &[usize],
    ) -> Result<Self, GraphError> {
        let n = adjacency.len();
        let rotation: Vec<Vec<usize>> = (0..n)
            .map(|v| {
                let p = positions[v];
                let mut nbrs = adjacency[v].clone();
                nbrs.sort_by(|&a, &b| {
                    let da = (positions[a].0 - p.0, positions[a].1 - p.1);
                    let db = (positions[b].0 - p.0, positions[b].1 - p.1);
                    angle_cmp(da, db)
                });
                nbrs
            })
            .collect();

        const UNSET: usize = usize::MAX;
        let mut dart_face: Vec<Vec<usize>> =
            rotation.iter().map(|r| vec![UNSET; r.len()]).collect();
        let mut faces = Vec::new();
        for v0 in 0..n {
            for k0 in 0..rotation[v0].len() {
                if dart_face[v0][k0] != UNSET {
                    continue;
                }
                let id = faces.len();
                let mut darts = Vec::new();
                let mut twice_area = 0i64;
                let (mut u, mut k) = (v0, k0);
                loop {
                    dart_face[u][k] = id;
                    let v = rotation[u][k];
                    darts.push((u, v));
                    twice_area += cross(positions[u], positions[v]);
                    let rv = &rotation[v];
                    let back = rv.iter().position(|&x| x == u).expect("symmetric adjacency");
                    let next = (back + rv.len() - 1) % rv.len();
                    u = v;
                    k = next;
                    if u == v0 && k == k0 {
                        break;
                    }
                }
                faces.push(Face {
                    darts,
                    twice_area,
                    component: component[v0],
                    outer: false,
                });
            }
        }

        let mut outer: Vec<Option<usize>> = vec![None; component_count];
        for (id, f) in faces.iter().enumerate() {
            let slot = &mut outer[f.component];
            match slot {
                Some(best) if faces[*best].twice_area <= f.twice_area => {}
                _ => *slot = Some(id),
            }
        }
        for id in outer.iter().flatten() {
            faces[*id].outer = true;
        }

        let mut face_count = vec![0usize; component_count];
        for f in &faces {
            face_count[f.component] += 1;
        }
        for c in 0..component_count {
            let faces_c = if edge_count_by_component[c] == 0 {
                1
            } else {
                face_count[c]
            };
            let value = vertex_count_by_component[c] as i64 - edge_count_by_component[c] as i64
                + faces_c as i64;
            if value != 2 {
                return Err(GraphError::EulerViolated {
                    component: c,
                    value,
                });
            }
        }

        Ok(Embedding {
            positions,
            rotation,
            dart_face,
            faces,
            component: component.to_vec(),
            component_count,
        })
    }

    pub fn positions(&self) -> &[(i64, i64)] {
        &self.positions
    }

    pub fn position(&self, v: usize) -> (i64, i64) {
        self.positions[v]
    }

    /// Neighbours of `v` in counter-clockwise order.
    pub fn rotation(&self, v: usize) -> &[usize] {
        &self.rotation[v]
    }

    pub fn faces(&self) -> &[Face] {
        &self.faces
    }

    pub fn bounded_faces(&self) -> impl Iterator<Item = &Face> + '_ {
        self.faces.iter().filter(|f| !f.outer)
    }

    /// Face lying to the left of the dart `u -> v`.
    pub fn face_of_dart(&self, u: usize, v: usize) -> Option<usize> {
        let k = self.rotation[u].iter().position(|&x| x == v)?;
        Some(self.dart_face[u][k])
    }

    pub fn component_of(&self, v: usize) -> usize {
        self.component[v]
    }

    pub fn component_count(&self) -> usize {
        self.component_count
    }

    /// `V - E + F` summed the way Euler's formula counts a connected plane
    /// graph: one outer face per component.
    pub fn euler_characteristic(&self, component: usize, vertices: usize, edges: usize) -> i64 {
        let faces = self.faces.iter().filter(|f| f.component == component).count();
        let faces = if edges == 0 { 1 } else { faces };
        vertices as i64 - edges as i64 + faces as i64
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MatchGraph {
    labels: Vec<VertexLabel>,
    index: BTreeMap<VertexLabel, usize>,
    adjacency: Vec<Vec<usize>>,
    edges: Vec<Edge>,
    colors: Option<Vec<Color>>,
    component: Vec<usize>,
    component_count: usize,
    embedding: Option<Embedding>,
}

impl MatchGraph {
    /// Validates and assembles a graph. When `positions` is given, the
    /// embedding is derived from them and checked against Euler's relation.
    pub fn new(
        labels: Vec<VertexLabel>,
        edges: Vec<Edge>,
        colors: Option<Vec<Color>>,
        positions: Option<Vec<(i64, i64)>>,
    ) -> Result<Self, GraphError> {
        let n = labels.len();
        if let Some(c) = &colors {
            if c.len() != n {
                return Err(GraphError::LengthMismatch {
                    what: "colouring",
                    got: c.len(),
                    expected: n,
                });
            }
        }
        if let Some(p) = &positions {
            if p.len() != n {
                return Err(GraphError::LengthMismatch {
                    what: "position list",
                    got: p.len(),
                    expected: n,
                });
            }
        }
        let mut edges = edges;
        edges.sort_unstable();
        let mut adjacency = vec![Vec::new(); n];
        for (k, &e) in edges.iter().enumerate() {
            if e.hi() >= n {
                return Err(GraphError::VertexOutOfRange(e));
            }
            if e.lo() == e.hi() {
                return Err(GraphError::SelfLoop(e.lo()));
            }
            if k > 0 && edges[k - 1] == e {
                return Err(GraphError::DuplicateEdge(e));
            }
            if let Some(c) = &colors {
                if c[e.lo()] == c[e.hi()] {
                    return Err(GraphError::NotBipartite(e));
                }
            }
            adjacency[e.lo()].push(e.hi());
            adjacency[e.hi()].push(e.lo());
        }
        for a in &mut adjacency {
            a.sort_unstable();
        }

        let mut component = vec![usize::MAX; n];
        let mut component_count = 0;
        let mut queue = VecDeque::new();
        for s in 0..n {
            if component[s] != usize::MAX {
                continue;
            }
            component[s] = component_count;
            queue.push_back(s);
            while let Some(v) = queue.pop_front() {
                for &u in &adjacency[v] {
                    if component[u] == usize::MAX {
                        component[u] = component_count;
                        queue.push_back(u);
                    }
                }
            }
            component_count += 1;
        }

        let embedding = match positions {
            Some(p) => {
                let mut vc = vec![0usize; component_count];
                let mut ec = vec![0usize; component_count];
                for v in 0..n {
                    vc[component[v]] += 1;
                }
                for e in &edges {
                    ec[component[e.lo()]] += 1;
                }
                Some(Embedding::build(
                    p,
                    &adjacency,
                    &component,
                    component_count,
                    &ec,
                    &vc,
                )?)
            }
            None => None,
        };

        let index = labels.iter().enumerate().map(|(i, &l)| (l, i)).collect();
        Ok(MatchGraph {
            labels,
            index,
            adjacency,
            edges,
            colors,
            component,
            component_count,
            embedding,
        })
    }

    pub fn vertex_count(&self) -> usize {
        self.labels.len()
    }

    pub fn edge_count(&self) -> usize {
        self.edges.len()
    }

    pub fn edges(&self) -> &[Edge] {
        &self.edges
    }

    pub fn neighbors(&self, v: usize) -> &[usize] {
        &self.adjacency[v]
    }

    pub fn degree(&self, v: usize) -> usize {
        self.adjacency[v].len()
    }

    pub fn label(&self, v: usize) -> VertexLabel {
        self.labels[v]
    }

    pub fn labels(&self) -> &[VertexLabel] {
        &self.labels
    }

    pub fn find(&self, label: &VertexLabel) -> Option<usize> {
        self.index.get(label).copied()
    }

    pub fn colors(&self) -> Option<&[Color]> {
        self.colors.as_deref()
    }

    pub fn color(&self, v: usize) -> Option<Color> {
        self.colors.as_ref().map(|c| c[v])
    }

    pub fn embedding(&self) -> Option<&Embedding> {
        self.embedding.as_ref()
    }

    pub fn is_bipartite(&self) -> bool {
        self.colors.is_some()
    }

    /// Sizes of the `Even` and `Odd` classes.
    pub fn class_sizes(&self) -> Option<(usize, usize)> {
        let c = self.colors.as_ref()?;
        let even = c.iter().filter(|&&x| x == Color::Even).count();
        Some((even, c.len() - even))
    }

    pub fn is_balanced(&self) -> bool {
        matches!(self.class_sizes(), Some((a, b)) if a == b)
    }

    pub fn edge_index(&self, e: Edge) -> Option<usize> {
        self.edges.binary_search(&e).ok()
    }

    pub fn contains_edge(&self, e: Edge) -> bool {
        self.edge_index(e).is_some()
    }

    /// Edge joining the vertices with the given labels, if both exist and
    /// are adjacent.
    pub fn edge_between(&self, a: &VertexLabel, b: &VertexLabel) -> Option<Edge> {
        let e = Edge::new(self.find(a)?, self.find(b)?);
        self.contains_edge(e).then_some(e)
    }

    pub fn component_count(&self) -> usize {
        self.component_count
    }

    pub fn is_connected(&self) -> bool {
        self.component_count <= 1
    }

    /// Vertices grouped by connected component, each group in index order.
    pub fn components(&self) -> Vec<Vec<usize>> {
        let mut out = vec![Vec::new(); self.component_count];
        for (v, &c) in self.component.iter().enumerate() {
            out[c].push(v);
        }
        out
    }

    /// Subgraph induced by `keep` (in the given order), with colouring and
    /// embedding carried over.
    pub fn induced(&self, keep: &[usize]) -> Result<MatchGraph, GraphError> {
        let mut map = vec![usize::MAX; self.vertex_count()];
        for (new, &old) in keep.iter().enumerate() {
            map[old] = new;
        }
        let labels = keep.iter().map(|&v| self.labels[v]).collect();
        let edges = self
            .edges
            .iter()
            .filter(|e| map[e.lo()] != usize::MAX && map[e.hi()] != usize::MAX)
            .map(|e| Edge::new(map[e.lo()], map[e.hi()]))
            .collect();
        let colors = self
            .colors
            .as_ref()
            .map(|c| keep.iter().map(|&v| c[v]).collect());
        let positions = self
            .embedding
            .as_ref()
            .map(|emb| keep.iter().map(|&v| emb.positions[v]).collect());
        MatchGraph::new(labels, edges, colors, positions)
    }

    /// The graph with the listed vertices deleted; remaining vertices keep
    /// their relative order.
    pub fn without_vertices(&self, removed: &[usize]) -> Result<MatchGraph, GraphError> {
        let keep: Vec<usize> = (0..self.vertex_count())
            .filter(|v| !removed.contains(v))
            .collect();
        self.induced(&keep)
    }
}
