//! Builders for the lattice regions whose perfect matchings are counted.
//!
//! # Coordinates
//!
//! All geometry in the crate derives from the conventions fixed here.
//!
//! **Triangular lattice.** Lattice points are integer pairs `(p, q)` standing
//! for `p * e1 + q * e2` with `e1 = (1, 0)` and `e2 = (1/2, sqrt(3)/2)`.
//! The cell `TriCell { x: p, y: q, orient: Up }` has corners `(p, q)`,
//! `(p + 1, q)`, `(p, q + 1)`; the cell with `orient: Down` has corners
//! `(p + 1, q)`, `(p, q + 1)`, `(p + 1, q + 1)`. An `Up` cell has a
//! horizontal bottom edge. A hexagon with sides `s1..s6` is the polygon
//! traced counter-clockwise from the origin with side `k` pointing at
//! `60 * (k - 1)` degrees, so side 1 runs along the positive x-axis.
//! Vertex positions of the adjacency graph are cell centroids scaled by 3,
//! kept in (skewed) lattice coordinates.
//!
//! **Square lattice.** `SquareCell { i, j }` is the unit square
//! `[i, i + 1] x [j, j + 1]`, coloured `Even` when `i + j` is even. The Aztec
//! diamond of order `n` consists of the cells with
//! `|i + 1/2| + |j + 1/2| <= n`, so it is centred at the origin. Vertex
//! positions are cell centres scaled by 2.

use alloc::collections::BTreeSet;
use alloc::format;
use alloc::vec::Vec;
use core::fmt;

use crate::error::RegionError;
use crate::graph::{Color, Edge, MatchGraph, VertexLabel};

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Orient {
    Up,
    Down,
}

/// A unit triangle of the triangular lattice.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct TriCell {
    pub x: i64,
    pub y: i64,
    pub orient: Orient,
}

impl TriCell {
    pub const fn up(x: i64, y: i64) -> Self {
        TriCell {
            x,
            y,
            orient: Orient::Up,
        }
    }

    pub const fn down(x: i64, y: i64) -> Self {
        TriCell {
            x,
            y,
            orient: Orient::Down,
        }
    }

    /// Centroid times 3, in lattice coordinates.
    pub fn centroid3(self) -> (i64, i64) {
        match self.orient {
            Orient::Up => (3 * self.x + 1, 3 * self.y + 1),
            Orient::Down => (3 * self.x + 2, 3 * self.y + 2),
        }
    }

    /// The three edge-sharing cells of opposite orientation.
    pub fn neighbors(self) -> [TriCell; 3] {
        let (x, y) = (self.x, self.y);
        match self.orient {
            Orient::Up => [
                TriCell::down(x, y),
                TriCell::down(x - 1, y),
                TriCell::down(x, y - 1),
            ],
            Orient::Down => [
                TriCell::up(x, y),
                TriCell::up(x + 1, y),
                TriCell::up(x, y + 1),
            ],
        }
    }
}

impl fmt::Display for TriCell {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let o = match self.orient {
            Orient::Up => "up",
            Orient::Down => "down",
        };
        write!(f, "({},{},{})", self.x, self.y, o)
    }
}

/// A unit square of the square lattice.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct SquareCell {
    pub i: i64,
    pub j: i64,
}

impl SquareCell {
    pub const fn new(i: i64, j: i64) -> Self {
        SquareCell { i, j }
    }

    pub fn color(self) -> Color {
        if (self.i + self.j).rem_euclid(2) == 0 {
            Color::Even
        } else {
            Color::Odd
        }
    }
}

impl fmt::Display for SquareCell {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({},{})", self.i, self.j)
    }
}

/// Side lengths of a 120-degree lattice hexagon, in cyclic order.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct HexSides([u32; 6]);

const DIRECTIONS: [(i64, i64); 6] = [(1, 0), (0, 1), (-1, 1), (-1, 0), (0, -1), (1, -1)];

impl HexSides {
    pub fn new(sides: [u32; 6]) -> Result<Self, RegionError> {
        let s = sides.map(i64::from);
        if s[0] - s[3] != s[4] - s[1] || s[4] - s[1] != s[2] - s[5] {
            return Err(RegionError::ClosureViolated(sides));
        }
        Ok(HexSides(sides))
    }

    /// The semiregular hexagon with sides `a, b, c, a, b, c`.
    pub fn semiregular(a: u32, b: u32, c: u32) -> Self {
        HexSides([a, b, c, a, b, c])
    }

    pub fn sides(&self) -> [u32; 6] {
        self.0
    }

    /// Polygon corners in lattice coordinates, starting at the origin.
    pub fn corners(&self) -> [(i64, i64); 6] {
        let mut out = [(0, 0); 6];
        let mut at = (0i64, 0i64);
        for k in 0..6 {
            out[k] = at;
            let len = i64::from(self.0[k]);
            at = (at.0 + len * DIRECTIONS[k].0, at.1 + len * DIRECTIONS[k].1);
        }
        out
    }

    /// Expected `#Up - #Down` for the hole-free region.
    pub fn imbalance(&self) -> i64 {
        i64::from(self.0[0]) - i64::from(self.0[3])
    }

    fn contains3(&self, p: (i64, i64)) -> bool {
        let c = self.corners();
        (0..6).all(|k| {
            if self.0[k] == 0 {
                return true;
            }
            let a = (3 * c[k].0, 3 * c[k].1);
            let d = DIRECTIONS[k];
            d.0 * (p.1 - a.1) - d.1 * (p.0 - a.0) > 0
        })
    }

    /// All unit triangles inside the hexagon, sorted.
    pub fn cells(&self) -> Vec<TriCell> {
        let c = self.corners();
        let (mut xlo, mut xhi, mut ylo, mut yhi) = (0i64, 0i64, 0i64, 0i64);
        for &(x, y) in &c {
            xlo = xlo.min(x);
            xhi = xhi.max(x);
            ylo = ylo.min(y);
            yhi = yhi.max(y);
        }
        let mut out = Vec::new();
        for y in ylo..yhi {
            for x in xlo..xhi {
                for cell in [TriCell::up(x, y), TriCell::down(x, y)] {
                    if self.contains3(cell.centroid3()) {
                        out.push(cell);
                    }
                }
            }
        }
        out.sort();
        out
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum RegionKind {
    Hexagon,
    AztecDiamond,
    AztecRectangle,
    AztecWindow,
    Hypercube,
}

impl RegionKind {
    pub fn name(self) -> &'static str {
        match self {
            RegionKind::Hexagon => "hexagon",
            RegionKind::AztecDiamond => "aztec_diamond",
            RegionKind::AztecRectangle => "aztec_rectangle",
            RegionKind::AztecWindow => "aztec_window",
            RegionKind::Hypercube => "hypercube",
        }
    }
}

/// Declarative description of a region.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum RegionSpec {
    Hexagon { sides: HexSides, holes: Vec<TriCell> },
    AztecDiamond { n: u32 },
    AztecRectangle { a: u32, b: u32, removed: Vec<SquareCell> },
    AztecWindow { x: u32, w: u32 },
    Hypercube { n: u32 },
}

impl RegionSpec {
    pub fn kind(&self) -> RegionKind {
        match self {
            RegionSpec::Hexagon { .. } => RegionKind::Hexagon,
            RegionSpec::AztecDiamond { .. } => RegionKind::AztecDiamond,
            RegionSpec::AztecRectangle { .. } => RegionKind::AztecRectangle,
            RegionSpec::AztecWindow { .. } => RegionKind::AztecWindow,
            RegionSpec::Hypercube { .. } => RegionKind::Hypercube,
        }
    }

    pub fn build(&self) -> Result<MatchGraph, RegionError> {
        match self {
            RegionSpec::Hexagon { sides, holes } => build_hexagon(sides, holes),
            RegionSpec::AztecDiamond { n } => build_aztec_diamond(*n),
            RegionSpec::AztecRectangle { a, b, removed } => build_aztec_rectangle(*a, *b, removed),
            RegionSpec::AztecWindow { x, w } => build_aztec_window(*x, *w),
            RegionSpec::Hypercube { n } => build_hypercube(*n),
        }
    }
}

/// Adjacency graph of the unit triangles of a hexagon minus `holes`.
///
/// Perfect matchings correspond to rhombus tilings of the holey hexagon.
pub fn build_hexagon(sides: &HexSides, holes: &[TriCell]) -> Result<MatchGraph, RegionError> {
    let all = sides.cells();
    if all.is_empty() {
        return Err(RegionError::EmptyHexagon(sides.sides()));
    }
    let mut removed = BTreeSet::new();
    for h in holes {
        if all.binary_search(h).is_err() {
            return Err(RegionError::CellOutsideRegion(format!("{h}")));
        }
        if !removed.insert(*h) {
            return Err(RegionError::DuplicateCell(format!("{h}")));
        }
    }
    let cells: Vec<TriCell> = all.into_iter().filter(|c| !removed.contains(c)).collect();
    let mut edges = Vec::new();
    for (k, c) in cells.iter().enumerate() {
        if c.orient != Orient::Up {
            continue;
        }
        for nb in c.neighbors() {
            if let Ok(m) = cells.binary_search(&nb) {
                edges.push(Edge::new(k, m));
            }
        }
    }
    let colors = cells
        .iter()
        .map(|c| match c.orient {
            Orient::Up => Color::Even,
            Orient::Down => Color::Odd,
        })
        .collect();
    let positions = cells.iter().map(|c| c.centroid3()).collect();
    let labels = cells.into_iter().map(VertexLabel::Tri).collect();
    Ok(MatchGraph::new(labels, edges, Some(colors), Some(positions))?)
}

/// The two triangles forming the rhombus centred on the centre of the
/// hexagon `(a, a, b, a, a, b)`.
pub fn central_rhombus_cells(sides: &HexSides) -> Result<(TriCell, TriCell), RegionError> {
    let s = sides.sides();
    let (a, b) = (s[0], s[2]);
    if s != [a, a, b, a, a, b] {
        return Err(RegionError::NotSymmetricHexagon(s));
    }
    if a % 2 == b % 2 {
        return Err(RegionError::ParityViolated { a, b });
    }
    // Centre times 6 is the sum of the corners; a rhombus midpoint times 6
    // is the sum of its two scaled centroids.
    let centre6 = sides
        .corners()
        .iter()
        .fold((0i64, 0i64), |acc, c| (acc.0 + c.0, acc.1 + c.1));
    let cells = sides.cells();
    let mut hits = Vec::new();
    for &c in cells.iter().filter(|c| c.orient == Orient::Up) {
        for nb in c.neighbors() {
            if cells.binary_search(&nb).is_err() {
                continue;
            }
            let (p, q) = (c.centroid3(), nb.centroid3());
            if (p.0 + q.0, p.1 + q.1) == centre6 {
                hits.push((c, nb));
            }
        }
    }
    match hits.as_slice() {
        [one] => Ok(*one),
        _ => Err(RegionError::NoCentralEdge),
    }
}

/// The central-rhombus edge, indexed in `build_hexagon(sides, &[])`.
pub fn central_rhombus_edge(sides: &HexSides) -> Result<Edge, RegionError> {
    let (up, down) = central_rhombus_cells(sides)?;
    let g = build_hexagon(sides, &[])?;
    g.edge_between(&VertexLabel::Tri(up), &VertexLabel::Tri(down))
        .ok_or(RegionError::NoCentralEdge)
}

fn square_graph(cells: BTreeSet<SquareCell>) -> Result<MatchGraph, RegionError> {
    let cells: Vec<SquareCell> = cells.into_iter().collect();
    let mut edges = Vec::new();
    for (k, c) in cells.iter().enumerate() {
        for nb in [SquareCell::new(c.i + 1, c.j), SquareCell::new(c.i, c.j + 1)] {
            if let Ok(m) = cells.binary_search(&nb) {
                edges.push(Edge::new(k, m));
            }
        }
    }
    let colors = cells.iter().map(|c| c.color()).collect();
    let positions = cells.iter().map(|c| (2 * c.i + 1, 2 * c.j + 1)).collect();
    let labels = cells.into_iter().map(VertexLabel::Square).collect();
    Ok(MatchGraph::new(labels, edges, Some(colors), Some(positions))?)
}

fn aztec_diamond_cells(n: u32) -> BTreeSet<SquareCell> {
    let n = i64::from(n);
    let mut out = BTreeSet::new();
    for i in -n..n {
        for j in -n..n {
            if (2 * i + 1).abs() + (2 * j + 1).abs() <= 2 * n {
                out.insert(SquareCell::new(i, j));
            }
        }
    }
    out
}

fn check_order(name: &'static str, v: u32) -> Result<(), RegionError> {
    if v < 1 {
        return Err(RegionError::ParameterOutOfRange {
            name,
            value: i64::from(v),
            rule: "must be >= 1",
        });
    }
    Ok(())
}

/// Order-`n` Aztec diamond: `2n(n+1)` cells centred at the origin.
pub fn build_aztec_diamond(n: u32) -> Result<MatchGraph, RegionError> {
    check_order("n", n)?;
    square_graph(aztec_diamond_cells(n))
}

/// Cells of the `a x b` Aztec rectangle.
///
/// In the rotated coordinates `u = i + j + 1`, `v = j - i` the rectangle is
/// `{(u, v) : 0 <= u <= 2a, 0 <= v <= 2b, u + v odd}`, shifted down by
/// `floor((a + b) / 2)` rows so that `a = b = n` reproduces the order-`n`
/// diamond cell for cell. The class with `u` even has `(a + 1) b` cells and
/// the other `a (b + 1)`.
pub fn aztec_rectangle_cells(a: u32, b: u32) -> BTreeSet<SquareCell> {
    let (a, b) = (i64::from(a), i64::from(b));
    let shift = (a + b) / 2;
    let mut out = BTreeSet::new();
    for u in 0..=2 * a {
        for v in 0..=2 * b {
            if (u + v) % 2 == 1 {
                out.insert(SquareCell::new((u - v - 1) / 2, (u + v - 1) / 2 - shift));
            }
        }
    }
    out
}

/// Aztec rectangle with the listed cells removed. Removal must leave the
/// colour classes balanced.
pub fn build_aztec_rectangle(
    a: u32,
    b: u32,
    removed: &[SquareCell],
) -> Result<MatchGraph, RegionError> {
    check_order("a", a)?;
    if a > b {
        return Err(RegionError::ParameterOutOfRange {
            name: "a",
            value: i64::from(a),
            rule: "must be <= b",
        });
    }
    let mut cells = aztec_rectangle_cells(a, b);
    let mut seen = BTreeSet::new();
    for c in removed {
        if !seen.insert(*c) {
            return Err(RegionError::DuplicateCell(format!("{c}")));
        }
        if !cells.remove(c) {
            return Err(RegionError::CellOutsideRegion(format!("{c}")));
        }
    }
    let even = cells.iter().filter(|c| c.color() == Color::Even).count();
    let odd = cells.len() - even;
    if even != odd {
        return Err(RegionError::Imbalanced { even, odd });
    }
    square_graph(cells)
}

/// Cells of the order-`x + w` diamond that are not in the concentric
/// order-`x` diamond.
pub fn aztec_window_cells(x: u32, w: u32) -> BTreeSet<SquareCell> {
    let inner = aztec_diamond_cells(x);
    aztec_diamond_cells(x + w)
        .into_iter()
        .filter(|c| !inner.contains(c))
        .collect()
}

/// Aztec window of inner order `x` and outer order `x + w`:
/// `2w(2x + w + 1)` cells around a diamond-shaped hole.
pub fn build_aztec_window(x: u32, w: u32) -> Result<MatchGraph, RegionError> {
    check_order("x", x)?;
    check_order("w", w)?;
    square_graph(aztec_window_cells(x, w))
}

/// Largest supported cube dimension.
pub const HYPERCUBE_MAX_DIM: u32 = 10;

/// The `n`-cube on `2^n` bit vectors; no embedding.
pub fn build_hypercube(n: u32) -> Result<MatchGraph, RegionError> {
    if !(1..=HYPERCUBE_MAX_DIM).contains(&n) {
        return Err(RegionError::ParameterOutOfRange {
            name: "n",
            value: i64::from(n),
            rule: "must be in 1..=10",
        });
    }
    let size = 1usize << n;
    let labels = (0..size as u32).map(VertexLabel::Cube).collect();
    let mut edges = Vec::with_capacity(size * n as usize / 2);
    for v in 0..size {
        for k in 0..n {
            let u = v ^ (1 << k);
            if v < u {
                edges.push(Edge::new(v, u));
            }
        }
    }
    let colors = (0..size)
        .map(|v| {
            if v.count_ones() % 2 == 0 {
                Color::Even
            } else {
                Color::Odd
            }
        })
        .collect();
    Ok(MatchGraph::new(labels, edges, Some(colors), None)?)
}

#[cfg(test)]
mod tests {
    use super::*;
    use alloc::vec;

    fn hex(s: [u32; 6]) -> HexSides {
        HexSides::new(s).unwrap()
    }

    /// Area in unit triangles: the big triangle on sides 1, 3, 5 minus the
    /// three cut corners.
    fn area_oracle(s: [u32; 6]) -> usize {
        let big = (s[5] + s[0] + s[1]) as usize;
        big * big - (s[1] * s[1] + s[3] * s[3] + s[5] * s[5]) as usize
    }

    #[test]
    fn smallest_hexagon_is_a_six_cycle() {
        let g = build_hexagon(&hex([1; 6]), &[]).unwrap();
        assert_eq!(g.vertex_count(), 6);
        assert_eq!(g.edge_count(), 6);
        assert_eq!(g.class_sizes(), Some((3, 3)));
        assert!((0..6).all(|v| g.degree(v) == 2));
    }

    #[test]
    fn hexagon_222_has_24_cells() {
        let g = build_hexagon(&hex([2; 6]), &[]).unwrap();
        assert_eq!(g.vertex_count(), 24);
        assert_eq!(g.class_sizes(), Some((12, 12)));
        let emb = g.embedding().unwrap();
        assert_eq!(emb.bounded_faces().count(), 7);
        assert!(emb.bounded_faces().all(|f| f.len() == 6));
    }

    #[test]
    fn closure_condition_is_enforced() {
        assert_eq!(
            HexSides::new([1, 2, 3, 4, 5, 6]),
            Err(RegionError::ClosureViolated([1, 2, 3, 4, 5, 6]))
        );
        assert!(HexSides::new([1, 2, 1, 2, 1, 2]).is_ok());
    }

    #[test]
    fn excess_triangle_removal_balances() {
        // s1 - s4 = -1: one more Down than Up.
        let s = hex([1, 2, 1, 2, 1, 2]);
        let g = build_hexagon(&s, &[]).unwrap();
        let (up, down) = g.class_sizes().unwrap();
        assert_eq!(up as i64 - down as i64, s.imbalance());
        assert_eq!(s.imbalance(), -1);
        // the centre of this hexagon is a Down triangle's centroid
        let downs: Vec<_> = s.cells().into_iter().filter(|c| c.orient == Orient::Down).collect();
        let centre6 = s.corners().iter().fold((0, 0), |a, c| (a.0 + c.0, a.1 + c.1));
        let centre = downs
            .iter()
            .find(|c| {
                let p = c.centroid3();
                (2 * p.0, 2 * p.1) == centre6
            })
            .copied()
            .unwrap();
        let h = build_hexagon(&s, &[centre]).unwrap();
        assert!(h.is_balanced());

        let t = hex([2, 1, 2, 1, 2, 1]);
        let g = build_hexagon(&t, &[]).unwrap();
        let (up, down) = g.class_sizes().unwrap();
        assert_eq!(up, down + 1);
    }

    #[test]
    fn hexagon_cell_count_matches_area_formula() {
        for s1 in 0..=4u32 {
            for s2 in 0..=4u32 {
                for s3 in 0..=4u32 {
                    for s4 in 0..=4u32 {
                        // s5 = s1 + s2 - s4, s6 = s3 + s4 - s1 from closure
                        let s5 = s1 as i64 + s2 as i64 - s4 as i64;
                        let s6 = s3 as i64 + s4 as i64 - s1 as i64;
                        if !(0..=4).contains(&s5) || !(0..=4).contains(&s6) {
                            continue;
                        }
                        let s = [s1, s2, s3, s4, s5 as u32, s6 as u32];
                        let sides = hex(s);
                        let cells = sides.cells();
                        assert_eq!(cells.len(), area_oracle(s), "{s:?}");
                        if cells.is_empty() {
                            continue;
                        }
                        let g = build_hexagon(&sides, &[]).unwrap();
                        let (up, down) = g.class_sizes().unwrap();
                        assert_eq!(up as i64 - down as i64, sides.imbalance(), "{s:?}");
                        let hole = cells[cells.len() / 2];
                        let h = build_hexagon(&sides, &[hole]).unwrap();
                        assert_eq!(h.vertex_count(), area_oracle(s) - 1);
                    }
                }
            }
        }
    }

    #[test]
    fn hexagon_faces_have_length_six() {
        for s in [[1, 1, 2, 1, 1, 2], [2, 3, 1, 2, 3, 1], [3, 3, 3, 3, 3, 3], [1, 2, 1, 2, 1, 2]] {
            let g = build_hexagon(&hex(s), &[]).unwrap();
            let emb = g.embedding().unwrap();
            assert!(emb.bounded_faces().all(|f| f.len() == 6), "{s:?}");
            assert_eq!(emb.euler_characteristic(0, g.vertex_count(), g.edge_count()), 2);
        }
    }

    #[test]
    fn bad_holes_are_rejected() {
        let s = hex([1; 6]);
        assert!(matches!(
            build_hexagon(&s, &[TriCell::up(10, 10)]),
            Err(RegionError::CellOutsideRegion(_))
        ));
        let c = s.cells()[0];
        assert!(matches!(
            build_hexagon(&s, &[c, c]),
            Err(RegionError::DuplicateCell(_))
        ));
    }

    /// Independent locator: scan every pair of adjacent cells and measure
    /// the squared distance of the rhombus midpoint from the centre in
    /// Euclidean coordinates.
    fn closest_rhombi(s: &HexSides) -> Vec<(TriCell, TriCell)> {
        let cells = s.cells();
        let c = s.corners();
        let cx = c.iter().map(|p| p.0 as f64).sum::<f64>() / 6.0;
        let cy = c.iter().map(|p| p.1 as f64).sum::<f64>() / 6.0;
        let to_xy = |p: f64, q: f64| (p + q / 2.0, q * 0.75f64.sqrt());
        let (ex, ey) = to_xy(cx, cy);
        let mut best = f64::INFINITY;
        let mut out = Vec::new();
        for &u in cells.iter().filter(|c| c.orient == Orient::Up) {
            for d in u.neighbors() {
                if cells.binary_search(&d).is_err() {
                    continue;
                }
                let (p, q) = (u.centroid3(), d.centroid3());
                let (mx, my) = to_xy((p.0 + q.0) as f64 / 6.0, (p.1 + q.1) as f64 / 6.0);
                let dist = (mx - ex).powi(2) + (my - ey).powi(2);
                if dist < best - 1e-9 {
                    best = dist;
                    out = vec![(u, d)];
                } else if (dist - best).abs() <= 1e-9 {
                    out.push((u, d));
                }
            }
        }
        assert!(best < 1e-9, "no rhombus centred at the centre");
        out
    }

    #[test]
    fn central_rhombus_is_unique_and_centred() {
        for (a, b) in [(1, 2), (3, 4), (2, 1), (5, 6)] {
            let s = hex([a, a, b, a, a, b]);
            let got = central_rhombus_cells(&s).unwrap();
            assert_eq!(closest_rhombi(&s), vec![got], "a={a} b={b}");
            let e = central_rhombus_edge(&s).unwrap();
            let g = build_hexagon(&s, &[]).unwrap();
            assert_eq!(g.label(e.lo()), VertexLabel::Tri(got.0).min(VertexLabel::Tri(got.1)));
        }
    }

    #[test]
    fn central_rhombus_needs_opposite_parity() {
        assert_eq!(
            central_rhombus_edge(&hex([2; 6])),
            Err(RegionError::ParityViolated { a: 2, b: 2 })
        );
        assert!(matches!(
            central_rhombus_edge(&hex([1, 2, 1, 2, 1, 2])),
            Err(RegionError::NotSymmetricHexagon(_))
        ));
    }

    #[test]
    fn aztec_diamond_sizes() {
        for (n, cells) in [(1, 4), (2, 12), (3, 24), (4, 40)] {
            let g = build_aztec_diamond(n).unwrap();
            assert_eq!(g.vertex_count(), cells);
            assert!(g.is_balanced());
            assert!(g.embedding().unwrap().bounded_faces().all(|f| f.len() == 4));
        }
        let g = build_aztec_diamond(1).unwrap();
        assert_eq!(g.edge_count(), 4);
        assert!(build_aztec_diamond(0).is_err());
    }

    #[test]
    fn square_rectangle_is_the_diamond() {
        for n in 1..=4 {
            let r = build_aztec_rectangle(n, n, &[]).unwrap();
            let d = build_aztec_diamond(n).unwrap();
            assert_eq!(r, d);
        }
    }

    #[test]
    fn rectangle_class_sizes_and_removal() {
        let cells = aztec_rectangle_cells(2, 3);
        let even = cells.iter().filter(|c| c.color() == Color::Even).count();
        let odd = cells.len() - even;
        assert_eq!((even.max(odd), even.min(odd)), (9, 8));
        assert!(matches!(
            build_aztec_rectangle(2, 3, &[]),
            Err(RegionError::Imbalanced { .. })
        ));
        assert!(matches!(
            build_aztec_rectangle(3, 2, &[]),
            Err(RegionError::ParameterOutOfRange { .. })
        ));
        assert!(matches!(
            build_aztec_rectangle(1, 2, &[SquareCell::new(50, 50)]),
            Err(RegionError::CellOutsideRegion(_))
        ));
    }

    #[test]
    fn window_sizes() {
        for x in 1..=4u32 {
            for w in 1..=4u32 {
                let g = build_aztec_window(x, w).unwrap();
                assert_eq!(g.vertex_count() as u32, 2 * w * (2 * x + w + 1));
                assert!(g.is_balanced());
                let emb = g.embedding().unwrap();
                for c in 0..g.component_count() {
                    let comp = &g.components()[c];
                    let e = g
                        .edges()
                        .iter()
                        .filter(|e| emb.component_of(e.lo()) == c)
                        .count();
                    assert_eq!(emb.euler_characteristic(c, comp.len(), e), 2);
                }
            }
        }
        let g = build_aztec_window(2, 2).unwrap();
        assert_eq!(g.vertex_count(), 28);
        let emb = g.embedding().unwrap();
        let long: Vec<_> = emb.bounded_faces().filter(|f| f.len() != 4).collect();
        assert_eq!(long.len(), 1, "exactly one hole face");
    }

    #[test]
    fn hypercube_shapes() {
        let g = build_hypercube(1).unwrap();
        assert_eq!((g.vertex_count(), g.edge_count()), (2, 1));
        let g = build_hypercube(2).unwrap();
        assert_eq!((g.vertex_count(), g.edge_count()), (4, 4));
        let g = build_hypercube(3).unwrap();
        assert_eq!((g.vertex_count(), g.edge_count()), (8, 12));
        assert!(g.embedding().is_none());
        assert!(g.is_balanced());
        assert!(build_hypercube(0).is_err());
        assert!(build_hypercube(11).is_err());
    }
}
