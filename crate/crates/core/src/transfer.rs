//! Column transfer matrices for square-lattice regions and finite-difference
//! polynomial detection on count sequences.
//!
//! A region is swept by vertical cuts from left to right. The state on the
//! cut between column `i` and column `i + 1` records which cells of column
//! `i + 1` are already covered by horizontal dominoes sticking out of
//! column `i`. Both ends of the sweep are the empty state.

use alloc::collections::BTreeMap;
use alloc::string::String;
use alloc::vec;
use alloc::vec::Vec;
use core::fmt;

use num_bigint::{BigInt, BigUint};
use num_traits::Zero;

use crate::count::Count;
use crate::error::TransferError;
use crate::graph::{MatchGraph, VertexLabel};
use crate::regions::{aztec_window_cells, build_aztec_window, RegionSpec};

/// Largest number of cells in one column.
pub const CUT_LIMIT: usize = 24;

/// Cells of a column covered across the cut, bit `p` for the `p`-th cell
/// from the bottom.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct CutState {
    bits: u32,
    width: u8,
}

impl CutState {
    pub fn new(bits: u32, width: usize) -> Option<Self> {
        if width > CUT_LIMIT || (width < 32 && bits >> width != 0) {
            return None;
        }
        Some(CutState {
            bits,
            width: width as u8,
        })
    }

    pub fn empty(width: usize) -> Self {
        CutState {
            bits: 0,
            width: width as u8,
        }
    }

    pub fn bits(self) -> u32 {
        self.bits
    }

    pub fn width(self) -> usize {
        usize::from(self.width)
    }

    pub fn is_covered(self, p: usize) -> bool {
        self.bits >> p & 1 == 1
    }
}

impl fmt::Display for CutState {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for p in (0..self.width()).rev() {
            f.write_str(if self.is_covered(p) { "1" } else { "0" })?;
        }
        Ok(())
    }
}

/// One column step: entry `(s, t)` is 1 when column cells not covered by
/// `s` can be tiled by vertical dominoes inside the column and horizontal
/// dominoes covering exactly `t` in the next column, else 0.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TransferMatrix {
    in_width: usize,
    out_width: usize,
    rows: Vec<Vec<u32>>,
}

impl TransferMatrix {
    /// Step from a column with cells at heights `cur` to the next column
    /// with cells at heights `next` (both strictly increasing).
    pub fn column_step(cur: &[i64], next: &[i64]) -> Result<Self, TransferError> {
        for col in [cur, next] {
            if col.len() > CUT_LIMIT {
                return Err(TransferError::CutTooWide {
                    width: col.len(),
                    limit: CUT_LIMIT,
                });
            }
        }
        let across: Vec<Option<usize>> = cur
            .iter()
            .map(|j| next.binary_search(j).ok())
            .collect();
        let rows = (0u32..1 << cur.len())
            .map(|s| {
                let mut outs = Vec::new();
                fill(cur, &across, s, 0, 0, &mut outs);
                outs.sort_unstable();
                outs
            })
            .collect();
        Ok(TransferMatrix {
            in_width: cur.len(),
            out_width: next.len(),
            rows,
        })
    }

    pub fn in_width(&self) -> usize {
        self.in_width
    }

    pub fn out_width(&self) -> usize {
        self.out_width
    }

    pub fn is_square(&self) -> bool {
        self.in_width == self.out_width
    }

    pub fn entry(&self, s: CutState, t: CutState) -> u8 {
        u8::from(
            s.width() == self.in_width
                && t.width() == self.out_width
                && self.rows[s.bits() as usize].binary_search(&t.bits()).is_ok(),
        )
    }

    /// States reachable in one step from `s`.
    pub fn successors(&self, s: CutState) -> impl Iterator<Item = CutState> + '_ {
        let w = self.out_width;
        self.rows[s.bits() as usize]
            .iter()
            .map(move |&b| CutState::empty(w).with_bits(b))
    }

    /// States taking part in at least one completion, on either side.
    pub fn dimension(&self) -> usize {
        let n = 1usize << self.in_width.max(self.out_width);
        let mut used = vec![false; n];
        for (s, outs) in self.rows.iter().enumerate() {
            if !outs.is_empty() {
                used[s] = true;
            }
            for &t in outs {
                used[t as usize] = true;
            }
        }
        used.into_iter().filter(|&u| u).count()
    }

    pub fn nonzero_entries(&self) -> usize {
        self.rows.iter().map(Vec::len).sum()
    }

    fn apply(&self, v: &BTreeMap<u32, BigUint>) -> BTreeMap<u32, BigUint> {
        let mut out: BTreeMap<u32, BigUint> = BTreeMap::new();
        for (&s, c) in v {
            for &t in &self.rows[s as usize] {
                *out.entry(t).or_insert_with(BigUint::zero) += c;
            }
        }
        out
    }
}

impl CutState {
    fn with_bits(mut self, bits: u32) -> Self {
        self.bits = bits;
        self
    }
}

fn fill(cur: &[i64], across: &[Option<usize>], covered: u32, p: usize, out: u32, acc: &mut Vec<u32>) {
    if p == cur.len() {
        acc.push(out);
        return;
    }
    if covered >> p & 1 == 1 {
        fill(cur, across, covered, p + 1, out, acc);
        return;
    }
    if let Some(q) = across[p] {
        fill(cur, across, covered, p + 1, out | 1 << q, acc);
    }
    if p + 1 < cur.len() && cur[p + 1] == cur[p] + 1 && covered >> (p + 1) & 1 == 0 {
        fill(cur, across, covered | 1 << (p + 1), p + 2, out, acc);
    }
}

/// Cell heights of every column, keyed by column index.
fn columns_of(g: &MatchGraph) -> Result<BTreeMap<i64, Vec<i64>>, TransferError> {
    let mut cols: BTreeMap<i64, Vec<i64>> = BTreeMap::new();
    for (v, l) in g.labels().iter().enumerate() {
        match l {
            VertexLabel::Square(c) => cols.entry(c.i).or_default().push(c.j),
            _ => return Err(TransferError::NotSquareLattice(v)),
        }
    }
    for col in cols.values_mut() {
        col.sort_unstable();
        if col.len() > CUT_LIMIT {
            return Err(TransferError::CutTooWide {
                width: col.len(),
                limit: CUT_LIMIT,
            });
        }
    }
    Ok(cols)
}

/// Counts domino tilings of the square cells labelling `g` by sweeping
/// column cuts left to right.
pub fn transfer_count_graph(g: &MatchGraph) -> Result<Count, TransferError> {
    let cols = columns_of(g)?;
    let mut v: BTreeMap<u32, BigUint> = BTreeMap::new();
    v.insert(0, BigUint::from(1u8));
    let keys: Vec<i64> = cols.keys().copied().collect();
    for (k, &i) in keys.iter().enumerate() {
        let empty = Vec::new();
        let next = match keys.get(k + 1) {
            Some(&i2) if i2 == i + 1 => &cols[&i2],
            _ => &empty,
        };
        v = TransferMatrix::column_step(&cols[&i], next)?.apply(&v);
        if v.is_empty() {
            return Ok(Count::zero());
        }
    }
    Ok(v.remove(&0).map(Count::from).unwrap_or_else(Count::zero))
}

/// Transfer-matrix count of a square-lattice region.
pub fn transfer_count(spec: &RegionSpec) -> Result<Count, TransferError> {
    if let RegionSpec::AztecWindow { w, .. } = spec {
        check_window_width(*w)?;
    }
    transfer_count_graph(&spec.build()?)
}

fn check_window_width(w: u32) -> Result<(), TransferError> {
    if 2 * w as usize > CUT_LIMIT {
        return Err(TransferError::CutTooWide {
            width: 2 * w as usize,
            limit: CUT_LIMIT,
        });
    }
    Ok(())
}

/// The step across the middle of an Aztec window, between the two columns
/// flanking the vertical axis. Both columns hold two runs of `w` cells.
pub fn window_central_step(x: u32, w: u32) -> Result<TransferMatrix, TransferError> {
    build_aztec_window(x, w)?;
    check_window_width(w)?;
    let cells = aztec_window_cells(x, w);
    let col = |i: i64| -> Vec<i64> { cells.iter().filter(|c| c.i == i).map(|c| c.j).collect() };
    TransferMatrix::column_step(&col(-1), &col(0))
}

/// Dimension of the central step of the window `(x, w)`.
pub fn transfer_dimension(x: u32, w: u32) -> Result<usize, TransferError> {
    Ok(window_central_step(x, w)?.dimension())
}

/// Window counts for `x = x_from..=x_to`; empty when `x_from > x_to`.
pub fn count_sequence(w: u32, x_from: u32, x_to: u32) -> Result<Vec<Count>, TransferError> {
    (x_from..=x_to)
        .map(|x| transfer_count(&RegionSpec::AztecWindow { x, w }))
        .collect()
}

/// Finite-difference table: row `k` holds the `k`-th differences.
pub fn finite_differences(values: &[BigInt]) -> Vec<Vec<BigInt>> {
    let mut table = vec![values.to_vec()];
    while table.last().map_or(0, Vec::len) > 1 {
        let prev = table.last().expect("nonempty");
        let next = prev.windows(2).map(|p| &p[1] - &p[0]).collect();
        table.push(next);
    }
    table
}

/// Least `d` whose `(d + 1)`-th differences all vanish, provided that row
/// is nonempty. The zero sequence has degree 0.
pub fn least_vanishing_degree(table: &[Vec<BigInt>]) -> Option<usize> {
    (1..table.len())
        .find(|&k| table[k].iter().all(Zero::is_zero))
        .map(|k| k - 1)
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PolyReport {
    pub x_range: Option<(u32, u32)>,
    pub counts: Vec<Count>,
    pub detected_degree: Option<usize>,
    pub differences: Vec<Vec<BigInt>>,
    pub note: String,
}

impl PolyReport {
    pub fn with_x_range(mut self, x_from: u32, x_to: u32) -> Self {
        self.x_range = Some((x_from, x_to));
        self.note = window_note(self.detected_degree, self.counts.len(), Some((x_from, x_to)));
        self
    }
}

fn window_note(degree: Option<usize>, len: usize, range: Option<(u32, u32)>) -> String {
    let span = match range {
        Some((a, b)) => alloc::format!("x = {a}..{b}"),
        None => alloc::format!("{len} samples"),
    };
    match degree {
        Some(d) => alloc::format!(
            "differences of order {} vanish on {span}; {} samples left after the last nonzero row",
            d + 1,
            len - d - 1
        ),
        None => alloc::format!("no vanishing difference row on {span}"),
    }
}

pub fn detect_polynomial(counts: &[Count]) -> Result<PolyReport, TransferError> {
    if counts.len() < 3 {
        return Err(TransferError::SequenceTooShort(counts.len()));
    }
    let values: Vec<BigInt> = counts.iter().map(|c| BigInt::from(c.value().clone())).collect();
    let differences = finite_differences(&values);
    let detected_degree = least_vanishing_degree(&differences);
    Ok(PolyReport {
        x_range: None,
        counts: counts.to_vec(),
        detected_degree,
        differences,
        note: window_note(detected_degree, counts.len(), None),
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::string::ToString;
    use crate::exact::{count_brute, count_kasteleyn};
    use crate::regions::{build_aztec_diamond, build_aztec_rectangle, SquareCell};

    fn counts(v: &[u64]) -> Vec<Count> {
        v.iter().map(|&c| Count::from(c)).collect()
    }

    #[test]
    fn single_column_steps() {
        // two stacked cells, nothing to the right: only the vertical domino
        let m = TransferMatrix::column_step(&[0, 1], &[]).unwrap();
        assert_eq!(m.rows, vec![vec![0], vec![], vec![], vec![0]]);
        // a 2x2 block: both horizontal or one vertical
        let m = TransferMatrix::column_step(&[0, 1], &[0, 1]).unwrap();
        assert_eq!(m.rows[0], vec![0, 3]);
        let s = CutState::new(0, 2).unwrap();
        assert_eq!(m.entry(s, CutState::new(3, 2).unwrap()), 1);
        assert_eq!(m.entry(s, CutState::new(1, 2).unwrap()), 0);
        assert!(m.rows.iter().flatten().all(|&t| t < 4));
    }

    #[test]
    fn cut_state_bounds() {
        assert!(CutState::new(0b100, 2).is_none());
        assert!(CutState::new(0, CUT_LIMIT + 1).is_none());
        assert_eq!(CutState::new(0b01, 3).unwrap().to_string(), "001");
    }

    #[test]
    fn diamonds_and_rectangles() {
        for n in 1..=4 {
            let g = build_aztec_diamond(n).unwrap();
            assert_eq!(transfer_count_graph(&g).unwrap(), count_kasteleyn(&g).unwrap());
        }
        let g = build_aztec_rectangle(2, 3, &[SquareCell::new(0, -1)]).unwrap();
        assert_eq!(transfer_count_graph(&g).unwrap(), count_brute(&g).unwrap());
    }

    #[test]
    fn windows_match_other_engines() {
        let one = transfer_count(&RegionSpec::AztecWindow { x: 1, w: 1 }).unwrap();
        assert_eq!(one, count_brute(&build_aztec_window(1, 1).unwrap()).unwrap());
        for x in 1..=2 {
            let g = build_aztec_window(x, 2).unwrap();
            let t = transfer_count(&RegionSpec::AztecWindow { x, w: 2 }).unwrap();
            assert_eq!(t, count_kasteleyn(&g).unwrap());
        }
    }

    #[test]
    fn rejects_other_lattices() {
        let r = transfer_count(&RegionSpec::Hypercube { n: 2 });
        assert_eq!(r, Err(TransferError::NotSquareLattice(0)));
        assert!(matches!(
            transfer_count(&RegionSpec::AztecWindow { x: 1, w: 13 }),
            Err(TransferError::CutTooWide { width: 26, .. })
        ));
        assert!(matches!(
            transfer_count(&RegionSpec::AztecWindow { x: 0, w: 1 }),
            Err(TransferError::Region(_))
        ));
    }

    #[test]
    fn central_step_is_independent_of_x() {
        for w in 1..=3 {
            let first = window_central_step(1, w).unwrap();
            assert!(first.is_square());
            assert_eq!(first.dimension(), 1 << (2 * w));
            for x in 2..=5 {
                assert_eq!(window_central_step(x, w).unwrap(), first);
            }
        }
    }

    #[test]
    fn sequences() {
        assert!(count_sequence(2, 3, 2).unwrap().is_empty());
        let s = count_sequence(2, 1, 3).unwrap();
        assert_eq!(s.len(), 3);
        assert!(s.iter().all(|c| !c.is_zero()));
    }

    #[test]
    fn polynomial_detection() {
        let r = detect_polynomial(&counts(&[1, 4, 9, 16, 25])).unwrap();
        assert_eq!(r.detected_degree, Some(2));
        assert_eq!(r.differences[2], vec![BigInt::from(2); 3]);
        assert_eq!(detect_polynomial(&counts(&[5, 5, 5, 5])).unwrap().detected_degree, Some(0));
        assert_eq!(detect_polynomial(&counts(&[1, 2, 4, 8, 16])).unwrap().detected_degree, None);
        assert_eq!(detect_polynomial(&counts(&[0, 0, 0])).unwrap().detected_degree, Some(0));
        assert_eq!(
            detect_polynomial(&counts(&[1, 2])),
            Err(TransferError::SequenceTooShort(2))
        );
        let r = detect_polynomial(&counts(&[3, 3, 3])).unwrap().with_x_range(4, 6);
        assert!(r.note.contains("x = 4..6"));
    }
}
