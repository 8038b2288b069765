//! Exact perfect-matching counts by three independent routes, plus
//! forced-edge counts and containment ratios.

use alloc::collections::VecDeque;
use alloc::vec;
use alloc::vec::Vec;

use num_bigint::{BigInt, BigUint};
use num_traits::Signed;

use crate::count::{Count, ExactRatio};
use crate::error::CountError;
use crate::graph::{Color, Edge, Embedding, Face, MatchGraph};
use crate::linalg::{det_bareiss, IntMatrix};

/// Largest vertex count accepted by [`count_brute`].
pub const BRUTE_LIMIT: usize = 64;

/// Largest colour-class size accepted by [`count_permanent`].
pub const PERMANENT_LIMIT: usize = 20;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Method {
    Brute,
    Permanent,
    Kasteleyn,
    /// Kasteleyn when the graph is embedded and bipartite, else the
    /// permanent when it fits, else brute force.
    Auto,
}

impl Method {
    pub fn name(self) -> &'static str {
        match self {
            Method::Brute => "brute",
            Method::Permanent => "permanent",
            Method::Kasteleyn => "kasteleyn",
            Method::Auto => "auto",
        }
    }
}

pub fn count(g: &MatchGraph, method: Method) -> Result<Count, CountError> {
    match method {
        Method::Brute => count_brute(g),
        Method::Permanent => count_permanent(g),
        Method::Kasteleyn => count_kasteleyn(g),
        Method::Auto => {
            if g.embedding().is_some() && g.is_bipartite() {
                count_kasteleyn(g)
            } else if g.is_bipartite() && g.vertex_count() <= 2 * PERMANENT_LIMIT {
                match count_permanent(g) {
                    Err(CountError::Imbalanced { .. }) => Ok(Count::zero()),
                    other => other,
                }
            } else {
                count_brute(g)
            }
        }
    }
}

fn adjacency_masks(g: &MatchGraph) -> Result<Vec<u64>, CountError> {
    let n = g.vertex_count();
    if n > BRUTE_LIMIT {
        return Err(CountError::TooLargeForBrute {
            vertices: n,
            limit: BRUTE_LIMIT,
        });
    }
    Ok((0..n)
        .map(|v| g.neighbors(v).iter().fold(0u64, |m, &u| m | (1u64 << u)))
        .collect())
}

/// Vertex of minimum remaining degree; `None` means some vertex is isolated.
fn pick_vertex(rem: u64, adj: &[u64]) -> Option<usize> {
    let mut best = usize::MAX;
    let mut best_deg = u32::MAX;
    let mut bits = rem;
    while bits != 0 {
        let v = bits.trailing_zeros() as usize;
        bits &= bits - 1;
        let d = (adj[v] & rem).count_ones();
        if d == 0 {
            return None;
        }
        if d < best_deg {
            best = v;
            best_deg = d;
            if d == 1 {
                break;
            }
        }
    }
    Some(best)
}

fn brute_rec(rem: u64, adj: &[u64]) -> Option<u128> {
    if rem == 0 {
        return Some(1);
    }
    let Some(v) = pick_vertex(rem, adj) else {
        return Some(0);
    };
    let rest = rem & !(1u64 << v);
    let mut nbrs = adj[v] & rest;
    let mut total = 0u128;
    while nbrs != 0 {
        let u = nbrs.trailing_zeros();
        nbrs &= nbrs - 1;
        total = total.checked_add(brute_rec(rest & !(1u64 << u), adj)?)?;
    }
    Some(total)
}

fn full_mask(n: usize) -> u64 {
    if n == 64 {
        u64::MAX
    } else {
        (1u64 << n) - 1
    }
}

/// Counts perfect matchings by backtracking: always branch on a vertex of
/// minimum remaining degree, so degree-1 vertices are matched without
/// branching.
pub fn count_brute(g: &MatchGraph) -> Result<Count, CountError> {
    let adj = adjacency_masks(g)?;
    let total = brute_rec(full_mask(g.vertex_count()), &adj).ok_or(CountError::Overflow)?;
    Ok(Count::from(total))
}

/// Lists every perfect matching (edges sorted) by the same backtracking as
/// [`count_brute`]. Fails once more than `limit` matchings are found.
pub fn enumerate_matchings(g: &MatchGraph, limit: usize) -> Result<Vec<Vec<Edge>>, CountError> {
    fn rec(
        rem: u64,
        adj: &[u64],
        stack: &mut Vec<Edge>,
        out: &mut Vec<Vec<Edge>>,
        limit: usize,
    ) -> Result<(), CountError> {
        if rem == 0 {
            if out.len() == limit {
                return Err(CountError::EnumerationLimit(limit));
            }
            let mut m = stack.clone();
            m.sort_unstable();
            out.push(m);
            return Ok(());
        }
        let Some(v) = pick_vertex(rem, adj) else {
            return Ok(());
        };
        let rest = rem & !(1u64 << v);
        let mut nbrs = adj[v] & rest;
        while nbrs != 0 {
            let u = nbrs.trailing_zeros() as usize;
            nbrs &= nbrs - 1;
            stack.push(Edge::new(v, u));
            rec(rest & !(1u64 << u), adj, stack, out, limit)?;
            stack.pop();
        }
        Ok(())
    }
    let adj = adjacency_masks(g)?;
    let mut out = Vec::new();
    rec(full_mask(g.vertex_count()), &adj, &mut Vec::new(), &mut out, limit)?;
    out.sort();
    Ok(out)
}

fn classes(g: &MatchGraph) -> Result<(Vec<usize>, Vec<usize>), CountError> {
    let colors = g.colors().ok_or(CountError::NotBipartite)?;
    let (mut even, mut odd) = (Vec::new(), Vec::new());
    for (v, c) in colors.iter().enumerate() {
        match c {
            Color::Even => even.push(v),
            Color::Odd => odd.push(v),
        }
    }
    Ok((even, odd))
}

/// Permanent of the 0/1 biadjacency matrix by Ryser's formula, with the
/// column subsets visited in Gray-code order.
pub fn count_permanent(g: &MatchGraph) -> Result<Count, CountError> {
    let (rows, cols) = classes(g)?;
    if rows.len() != cols.len() {
        return Err(CountError::Imbalanced {
            even: rows.len(),
            odd: cols.len(),
        });
    }
    let n = rows.len();
    if n > PERMANENT_LIMIT {
        return Err(CountError::TooLargeForPermanent {
            rows: n,
            cols: n,
            limit: PERMANENT_LIMIT,
        });
    }
    if n == 0 {
        return Ok(Count::one());
    }
    let mut col_pos = vec![usize::MAX; g.vertex_count()];
    for (k, &c) in cols.iter().enumerate() {
        col_pos[c] = k;
    }
    // row_masks[i] bit j set when row i meets column j
    let row_masks: Vec<u32> = rows
        .iter()
        .map(|&r| {
            g.neighbors(r)
                .iter()
                .fold(0u32, |m, &c| m | (1u32 << col_pos[c]))
        })
        .collect();

    let mut sums = vec![0i64; n];
    let mut subset = 0u32;
    let mut total: i128 = 0;
    for k in 1u32..(1u32 << n) {
        let j = k.trailing_zeros();
        let bit = 1u32 << j;
        subset ^= bit;
        let delta = if subset & bit != 0 { 1 } else { -1 };
        for (s, m) in sums.iter_mut().zip(&row_masks) {
            if m & bit != 0 {
                *s += delta;
            }
        }
        let mut prod: i128 = 1;
        for &s in &sums {
            if s == 0 {
                prod = 0;
                break;
            }
            prod *= i128::from(s);
        }
        if prod != 0 {
            if (n as u32 - subset.count_ones()).is_multiple_of(2) {
                total += prod;
            } else {
                total -= prod;
            }
        }
    }
    debug_assert!(total >= 0);
    Ok(Count::from(total as u128))
}

/// Direction of every edge: `true` when edge `k` points from its lower to
/// its higher endpoint.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Orientation {
    forward: Vec<bool>,
}

impl Orientation {
    pub fn points_forward(&self, edge_index: usize) -> bool {
        self.forward[edge_index]
    }

    /// `(tail, head)` of an edge of `g`.
    pub fn directed(&self, g: &MatchGraph, e: Edge) -> Option<(usize, usize)> {
        let k = g.edge_index(e)?;
        Some(if self.forward[k] {
            (e.lo(), e.hi())
        } else {
            (e.hi(), e.lo())
        })
    }

    /// Edges of the face walk oriented against the walk. Bounded faces are
    /// walked counter-clockwise, so these are the clockwise edges.
    pub fn clockwise_count(&self, g: &MatchGraph, face: &Face) -> usize {
        face.darts
            .iter()
            .filter(|&&(a, b)| {
                let e = Edge::new(a, b);
                let k = g.edge_index(e).expect("face dart is an edge");
                self.forward[k] != (a == e.lo())
            })
            .count()
    }

    /// Every bounded face has an odd number of clockwise edges.
    pub fn is_kasteleyn(&self, g: &MatchGraph) -> bool {
        match g.embedding() {
            Some(emb) => emb
                .bounded_faces()
                .all(|f| self.clockwise_count(g, f) % 2 == 1),
            None => false,
        }
    }
}

/// Orients one connected component: a BFS spanning tree from `root`, then
/// the remaining edges (a spanning tree of the dual) fixed from the leaves of
/// the dual tree towards the outer face.
fn orient_component(
    g: &MatchGraph,
    emb: &Embedding,
    comp_id: usize,
    root: usize,
    forward: &mut [Option<bool>],
) {
    let mut seen = vec![false; g.vertex_count()];
    let mut tree = vec![false; g.edge_count()];
    let mut queue = VecDeque::from([root]);
    seen[root] = true;
    while let Some(v) = queue.pop_front() {
        for &u in g.neighbors(v) {
            if !seen[u] {
                seen[u] = true;
                let e = Edge::new(v, u);
                let k = g.edge_index(e).expect("adjacent");
                tree[k] = true;
                forward[k] = Some(v == e.lo());
                queue.push_back(u);
            }
        }
    }

    let faces = emb.faces();
    let Some(outer) = faces
        .iter()
        .position(|f| f.component == comp_id && f.outer)
    else {
        return;
    };
    let mut parent_edge: Vec<Option<usize>> = vec![None; faces.len()];
    let mut visited = vec![false; faces.len()];
    visited[outer] = true;
    let mut order = Vec::new();
    let mut queue = VecDeque::from([outer]);
    while let Some(f) = queue.pop_front() {
        for &(a, b) in &faces[f].darts {
            let k = g.edge_index(Edge::new(a, b)).expect("dart");
            if tree[k] {
                continue;
            }
            let other = emb.face_of_dart(b, a).expect("reverse dart");
            if !visited[other] {
                visited[other] = true;
                parent_edge[other] = Some(k);
                order.push(other);
                queue.push_back(other);
            }
        }
    }

    for &f in order.iter().rev() {
        let pk = parent_edge[f].expect("non-root face has a parent");
        let mut clockwise = 0usize;
        let mut parent_dart = None;
        for &(a, b) in &faces[f].darts {
            let e = Edge::new(a, b);
            let k = g.edge_index(e).expect("dart");
            if k == pk {
                parent_dart = Some((a, b));
                continue;
            }
            let fw = forward[k].expect("child edges are oriented first");
            if fw != (a == e.lo()) {
                clockwise += 1;
            }
        }
        let (a, b) = parent_dart.expect("parent edge borders the face");
        let e = Edge::new(a, b);
        // Even so far: the parent edge must run clockwise, i.e. b -> a.
        forward[pk] = Some(if clockwise.is_multiple_of(2) {
            b == e.lo()
        } else {
            a == e.lo()
        });
    }
}

fn orient_all(g: &MatchGraph, root_offset: usize) -> Result<Orientation, CountError> {
    let emb = g.embedding().ok_or(CountError::MissingEmbedding)?;
    let mut forward = vec![None; g.edge_count()];
    for (c, comp) in g.components().iter().enumerate() {
        let root = comp[root_offset % comp.len()];
        orient_component(g, emb, c, root, &mut forward);
    }
    Ok(Orientation {
        forward: forward.into_iter().map(|f| f.unwrap_or(true)).collect(),
    })
}

/// Kasteleyn orientation of a connected embedded graph, spanning tree rooted
/// at vertex 0.
pub fn kasteleyn_orient(g: &MatchGraph) -> Result<Orientation, CountError> {
    kasteleyn_orient_rooted(g, 0)
}

pub fn kasteleyn_orient_rooted(g: &MatchGraph, root: usize) -> Result<Orientation, CountError> {
    if g.embedding().is_none() {
        return Err(CountError::MissingEmbedding);
    }
    if !g.is_connected() {
        return Err(CountError::Disconnected {
            components: g.component_count(),
        });
    }
    if g.vertex_count() == 0 {
        return Ok(Orientation {
            forward: Vec::new(),
        });
    }
    if root >= g.vertex_count() {
        return Err(CountError::BadRoot(root));
    }
    orient_all(g, root)
}

/// Signed biadjacency matrix: rows are the `Even` vertices and columns the
/// `Odd` vertices, in index order; `+1` when the edge points from its `Even`
/// end to its `Odd` end.
pub fn signed_biadjacency(g: &MatchGraph, o: &Orientation) -> Result<IntMatrix, CountError> {
    let (rows, cols) = classes(g)?;
    let mut row_pos = vec![usize::MAX; g.vertex_count()];
    let mut col_pos = vec![usize::MAX; g.vertex_count()];
    for (k, &r) in rows.iter().enumerate() {
        row_pos[r] = k;
    }
    for (k, &c) in cols.iter().enumerate() {
        col_pos[c] = k;
    }
    let mut m = IntMatrix::zeros(rows.len(), cols.len());
    for (k, &e) in g.edges().iter().enumerate() {
        let (even, odd) = if row_pos[e.lo()] != usize::MAX {
            (e.lo(), e.hi())
        } else {
            (e.hi(), e.lo())
        };
        let tail = if o.forward[k] { e.lo() } else { e.hi() };
        m.set(row_pos[even], col_pos[odd], if tail == even { 1 } else { -1 });
    }
    Ok(m)
}

/// Kasteleyn matrix of an embedded bipartite graph, each component oriented
/// from its `root_offset`-th vertex.
pub fn kasteleyn_matrix_rooted(g: &MatchGraph, root_offset: usize) -> Result<IntMatrix, CountError> {
    let o = orient_all(g, root_offset)?;
    signed_biadjacency(g, &o)
}

/// `|det K|` for the Kasteleyn-signed biadjacency matrix `K`, by Bareiss
/// elimination. Imbalanced graphs have no perfect matching and give 0.
pub fn count_kasteleyn(g: &MatchGraph) -> Result<Count, CountError> {
    count_kasteleyn_rooted(g, 0)
}

pub fn count_kasteleyn_rooted(g: &MatchGraph, root_offset: usize) -> Result<Count, CountError> {
    let (even, odd) = g.class_sizes().ok_or(CountError::NotBipartite)?;
    if g.embedding().is_none() {
        return Err(CountError::MissingEmbedding);
    }
    if even != odd {
        return Ok(Count::zero());
    }
    let k = kasteleyn_matrix_rooted(g, root_offset)?;
    let det: BigInt = det_bareiss(&k);
    Ok(Count::from(det.abs().to_biguint().unwrap_or_else(|| BigUint::from(0u8))))
}

/// Perfect matchings containing `e`: the count of `g` with both endpoints
/// of `e` deleted.
pub fn count_with_forced_edge(g: &MatchGraph, e: Edge, method: Method) -> Result<Count, CountError> {
    if !g.contains_edge(e) {
        return Err(CountError::EdgeNotInGraph(e));
    }
    let h = g
        .without_vertices(&[e.lo(), e.hi()])
        .expect("deleting vertices keeps the graph valid");
    count(&h, method)
}

/// `count_with_forced_edge / count` in lowest terms.
pub fn containment_ratio(g: &MatchGraph, e: Edge, method: Method) -> Result<ExactRatio, CountError> {
    let forced = count_with_forced_edge(g, e, method)?;
    let total = count(g, method)?;
    ExactRatio::new(forced.into_inner(), total.into_inner()).ok_or(CountError::ZeroTotal)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::VertexLabel;
    use crate::regions::{
        build_aztec_diamond, build_aztec_window, build_hexagon, build_hypercube,
        central_rhombus_edge, HexSides,
    };

    fn hex(s: [u32; 6]) -> MatchGraph {
        build_hexagon(&HexSides::new(s).unwrap(), &[]).unwrap()
    }

    fn c(v: u64) -> Count {
        Count::from(v)
    }

    #[test]
    fn brute_baselines() {
        assert_eq!(count_brute(&hex([1; 6])).unwrap(), c(2));
        assert_eq!(count_brute(&hex([2; 6])).unwrap(), c(20));
        assert_eq!(count_brute(&build_aztec_diamond(2).unwrap()).unwrap(), c(8));
        let empty = MatchGraph::new(Vec::new(), Vec::new(), None, None).unwrap();
        assert_eq!(count_brute(&empty).unwrap(), c(1));
    }

    #[test]
    fn brute_rejects_large_graphs() {
        let g = build_hypercube(7).unwrap();
        assert!(matches!(count_brute(&g), Err(CountError::TooLargeForBrute { .. })));
    }

    #[test]
    fn permanent_baselines() {
        assert_eq!(count_permanent(&build_hypercube(1).unwrap()).unwrap(), c(1));
        assert_eq!(count_permanent(&build_hypercube(3).unwrap()).unwrap(), c(9));
        assert_eq!(count_permanent(&build_hypercube(4).unwrap()).unwrap(), c(272));
        assert!(matches!(
            count_permanent(&build_hypercube(6).unwrap()),
            Err(CountError::TooLargeForPermanent { .. })
        ));
        let s = HexSides::new([2, 1, 2, 1, 2, 1]).unwrap();
        let g = build_hexagon(&s, &[]).unwrap();
        assert!(matches!(count_permanent(&g), Err(CountError::Imbalanced { .. })));
    }

    #[test]
    fn kasteleyn_baselines() {
        assert_eq!(count_kasteleyn(&hex([1, 1, 2, 1, 1, 2])).unwrap(), c(3));
        assert_eq!(count_kasteleyn(&build_aztec_diamond(3).unwrap()).unwrap(), c(64));
        let empty = MatchGraph::new(Vec::new(), Vec::new(), Some(Vec::new()), Some(Vec::new())).unwrap();
        assert_eq!(count_kasteleyn(&empty).unwrap(), c(1));
        assert!(matches!(
            count_kasteleyn(&build_hypercube(3).unwrap()),
            Err(CountError::MissingEmbedding)
        ));
    }

    #[test]
    fn orientation_satisfies_face_condition() {
        let g = build_aztec_diamond(1).unwrap();
        let o = kasteleyn_orient(&g).unwrap();
        let f = g.embedding().unwrap().bounded_faces().next().unwrap();
        assert!(matches!(o.clockwise_count(&g, f), 1 | 3));

        let g = hex([2; 6]);
        let o = kasteleyn_orient(&g).unwrap();
        assert_eq!(g.embedding().unwrap().bounded_faces().count(), 7);
        assert!(o.is_kasteleyn(&g));

        let g = build_aztec_window(1, 2).unwrap();
        for root in [0, 5, 19] {
            let o = kasteleyn_orient_rooted(&g, root).unwrap();
            assert!(o.is_kasteleyn(&g));
        }
        assert!(matches!(kasteleyn_orient_rooted(&g, 20), Err(CountError::BadRoot(20))));
    }

    #[test]
    fn disconnected_graph_cannot_be_oriented_but_counts() {
        let g = hex([2; 6]);
        let ring: Vec<usize> = (0..g.vertex_count())
            .filter(|&v| g.degree(v) == 3)
            .collect();
        let h = g.without_vertices(&ring).unwrap();
        assert!(!h.is_connected());
        assert!(matches!(kasteleyn_orient(&h), Err(CountError::Disconnected { .. })));
        assert_eq!(count_kasteleyn(&h).unwrap(), count_brute(&h).unwrap());
    }

    #[test]
    fn forced_edge_on_small_graphs() {
        let g = build_aztec_diamond(1).unwrap();
        for &e in g.edges() {
            for m in [Method::Brute, Method::Kasteleyn, Method::Permanent] {
                assert_eq!(count_with_forced_edge(&g, e, m).unwrap(), c(1));
                assert_eq!(containment_ratio(&g, e, m).unwrap(), ExactRatio::from_u64(1, 2).unwrap());
            }
        }
        let s = HexSides::new([1, 1, 2, 1, 1, 2]).unwrap();
        let g = build_hexagon(&s, &[]).unwrap();
        let e = central_rhombus_edge(&s).unwrap();
        assert_eq!(count_with_forced_edge(&g, e, Method::Brute).unwrap(), c(1));
        assert_eq!(
            containment_ratio(&g, e, Method::Kasteleyn).unwrap(),
            ExactRatio::from_u64(1, 3).unwrap()
        );
        let missing = Edge::new(0, 0);
        assert!(matches!(
            count_with_forced_edge(&g, missing, Method::Brute),
            Err(CountError::EdgeNotInGraph(_))
        ));
    }

    #[test]
    fn zero_total_ratio_is_an_error() {
        let g = build_aztec_window(2, 1).unwrap();
        let e = g.edges()[0];
        assert_eq!(
            containment_ratio(&g, e, Method::Kasteleyn),
            Err(CountError::ZeroTotal)
        );
    }

    #[test]
    fn enumeration_matches_count_and_filtering() {
        let s = HexSides::new([1, 1, 2, 1, 1, 2]).unwrap();
        let g = build_hexagon(&s, &[]).unwrap();
        let all = enumerate_matchings(&g, 100).unwrap();
        assert_eq!(all.len(), 3);
        let e = central_rhombus_edge(&s).unwrap();
        let with_e = all.iter().filter(|m| m.contains(&e)).count();
        assert_eq!(with_e, 1);
        assert!(matches!(enumerate_matchings(&g, 2), Err(CountError::EnumerationLimit(2))));
        // labels survive deletion
        let h = g.without_vertices(&[e.lo(), e.hi()]).unwrap();
        assert!(h.labels().iter().all(|l| matches!(l, VertexLabel::Tri(_))));
    }
}
