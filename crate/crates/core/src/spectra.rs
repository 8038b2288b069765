//! Kasteleyn matrices, the exact characteristic polynomial of `K Kᵀ` and
//! the singular values of `K`.
//!
//! `|det K|` is the matching count, so the constant term of
//! `det(λI − K Kᵀ)` is `± count²`. The spectrum itself is sometimes read as
//! a measure of aromaticity of the corresponding molecule; nothing here
//! computes such a score.

use alloc::vec;
use alloc::vec::Vec;

use num_bigint::{BigInt, Sign};
use num_traits::{Signed, ToPrimitive, Zero};

use crate::count::Count;
use crate::error::{CountError, SpectraError};
use crate::exact::kasteleyn_matrix_rooted;
use crate::graph::MatchGraph;
use crate::linalg::{det_bareiss, IntMatrix};

/// Largest `K Kᵀ` dimension handled by the spectral routines.
pub const SPECTRAL_LIMIT: usize = 400;

/// Convergence tolerance of the Jacobi iteration, relative to the Frobenius
/// norm.
pub const JACOBI_TOLERANCE: f64 = 1e-12;

const JACOBI_MAX_SWEEPS: usize = 100;

/// Kasteleyn-signed biadjacency matrix: rows are the `Even` vertices,
/// columns the `Odd` vertices, entries in `{-1, 0, 1}`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SignedMatrix {
    entries: IntMatrix,
}

impl SignedMatrix {
    /// Wraps an explicit matrix; `None` if some entry has magnitude above 1.
    pub fn from_entries(entries: IntMatrix) -> Option<Self> {
        let ok = (0..entries.rows()).all(|r| entries.row(r).iter().all(|v| v.abs() <= 1));
        ok.then_some(SignedMatrix { entries })
    }

    pub fn entries(&self) -> &IntMatrix {
        &self.entries
    }

    pub fn dimension(&self) -> usize {
        self.entries.rows()
    }

    pub fn abs_det(&self) -> Count {
        Count::from(det_bareiss(&self.entries).abs().magnitude().clone())
    }
}

pub fn kasteleyn_matrix(g: &MatchGraph) -> Result<SignedMatrix, SpectraError> {
    kasteleyn_matrix_with_root(g, 0)
}

/// As [`kasteleyn_matrix`], with each component's spanning tree rooted at
/// its `root_offset`-th vertex (modulo the component size).
pub fn kasteleyn_matrix_with_root(g: &MatchGraph, root_offset: usize) -> Result<SignedMatrix, SpectraError> {
    let (even, odd) = g.class_sizes().ok_or(CountError::NotBipartite)?;
    if g.embedding().is_none() {
        return Err(CountError::MissingEmbedding.into());
    }
    if even != odd {
        return Err(CountError::Imbalanced { even, odd }.into());
    }
    Ok(SignedMatrix {
        entries: kasteleyn_matrix_rooted(g, root_offset)?,
    })
}

/// Coefficients of a monic integer polynomial, constant term first.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct CharPoly {
    coefficients: Vec<BigInt>,
}

impl CharPoly {
    pub fn coefficients(&self) -> &[BigInt] {
        &self.coefficients
    }

    pub fn degree(&self) -> usize {
        self.coefficients.len() - 1
    }

    pub fn constant_term(&self) -> &BigInt {
        &self.coefficients[0]
    }

    /// Signs alternate (zeros allowed): `(−1)^(n−k) c_k ≥ 0` for all `k`.
    /// For a real-rooted polynomial this holds iff no root is negative.
    pub fn has_alternating_signs(&self) -> bool {
        let n = self.degree();
        self.coefficients.iter().enumerate().all(|(k, c)| {
            let flip = (n - k) % 2 == 1;
            match c.sign() {
                Sign::NoSign => true,
                Sign::Plus => !flip,
                Sign::Minus => flip,
            }
        })
    }
}

/// Sparse rows of `K Kᵀ`.
fn gram_rows(k: &SignedMatrix) -> Vec<Vec<(usize, i64)>> {
    let g = k.entries.gram();
    (0..g.rows())
        .map(|r| {
            g.row(r)
                .iter()
                .enumerate()
                .filter(|(_, v)| **v != 0)
                .map(|(c, v)| (c, *v))
                .collect()
        })
        .collect()
}

fn check_size(n: usize) -> Result<(), SpectraError> {
    if n > SPECTRAL_LIMIT {
        return Err(SpectraError::TooLarge {
            dim: n,
            limit: SPECTRAL_LIMIT,
        });
    }
    Ok(())
}

/// `det(λI − K Kᵀ)` by the Faddeev–LeVerrier recurrence
/// `M_k = A M_{k−1} + c_{n−k+1} I`, `c_{n−k} = −tr(A M_k) / k`; every
/// division is exact.
pub fn kk_star_charpoly(k: &SignedMatrix) -> Result<CharPoly, SpectraError> {
    let n = k.dimension();
    check_size(n)?;
    let a = gram_rows(k);
    let mut c = vec![BigInt::zero(); n + 1];
    c[n] = BigInt::from(1);
    let mut m: Vec<Vec<BigInt>> = vec![vec![BigInt::zero(); n]; n];
    for step in 1..=n {
        // m <- A m + c[n - step + 1] I
        let mut next = vec![vec![BigInt::zero(); n]; n];
        for (i, row) in a.iter().enumerate() {
            for &(l, v) in row {
                for j in 0..n {
                    if !m[l][j].is_zero() {
                        next[i][j] += &m[l][j] * v;
                    }
                }
            }
            next[i][i] += &c[n - step + 1];
        }
        m = next;
        let mut trace = BigInt::zero();
        for (i, row) in a.iter().enumerate() {
            for &(l, v) in row {
                trace += &m[l][i] * v;
            }
        }
        c[n - step] = -(trace / BigInt::from(step));
    }
    Ok(CharPoly { coefficients: c })
}

/// Eigenvalues of a symmetric matrix (row-major, `n × n`) by cyclic Jacobi
/// rotations, ascending.
pub fn symmetric_eigenvalues(mut a: Vec<f64>, n: usize) -> Result<Vec<f64>, SpectraError> {
    let frob = a.iter().map(|v| v * v).sum::<f64>();
    let off = |a: &[f64]| -> f64 {
        let mut s = 0.0;
        for i in 0..n {
            for j in 0..n {
                if i != j {
                    s += a[i * n + j] * a[i * n + j];
                }
            }
        }
        s
    };
    let target = JACOBI_TOLERANCE * JACOBI_TOLERANCE * frob;
    let mut sweeps = 0;
    while off(&a) > target {
        if sweeps == JACOBI_MAX_SWEEPS {
            return Err(SpectraError::NoConvergence(JACOBI_MAX_SWEEPS));
        }
        sweeps += 1;
        for p in 0..n {
            for q in p + 1..n {
                let apq = a[p * n + q];
                if apq == 0.0 {
                    continue;
                }
                let theta = (a[q * n + q] - a[p * n + p]) / (2.0 * apq);
                let t = theta.signum() / (theta.abs() + libm::sqrt(theta * theta + 1.0));
                let t = if theta == 0.0 { 1.0 } else { t };
                let cs = 1.0 / libm::sqrt(t * t + 1.0);
                let sn = t * cs;
                for r in 0..n {
                    let (arp, arq) = (a[r * n + p], a[r * n + q]);
                    a[r * n + p] = cs * arp - sn * arq;
                    a[r * n + q] = sn * arp + cs * arq;
                }
                for r in 0..n {
                    let (apr, aqr) = (a[p * n + r], a[q * n + r]);
                    a[p * n + r] = cs * apr - sn * aqr;
                    a[q * n + r] = sn * apr + cs * aqr;
                }
            }
        }
    }
    let mut ev: Vec<f64> = (0..n).map(|i| a[i * n + i]).collect();
    ev.sort_by(f64::total_cmp);
    Ok(ev)
}

/// Eigenvalues of `K Kᵀ`, ascending and clamped at 0.
pub fn kk_star_eigenvalues(k: &SignedMatrix) -> Result<Vec<f64>, SpectraError> {
    let n = k.dimension();
    check_size(n)?;
    let g = k.entries.gram();
    let dense = (0..n).flat_map(|r| g.row(r).iter().map(|&v| v as f64)).collect();
    Ok(symmetric_eigenvalues(dense, n)?
        .into_iter()
        .map(|v| v.max(0.0))
        .collect())
}

/// Singular values of `K`, descending.
pub fn singular_values(k: &SignedMatrix) -> Result<Vec<f64>, SpectraError> {
    let mut s: Vec<f64> = kk_star_eigenvalues(k)?.into_iter().map(libm::sqrt).collect();
    s.reverse();
    Ok(s)
}

/// `e_0, …, e_n` of the given values.
pub fn elementary_symmetric(values: &[f64]) -> Vec<f64> {
    let mut e = vec![0.0; values.len() + 1];
    e[0] = 1.0;
    for (m, &v) in values.iter().enumerate() {
        for k in (1..=m + 1).rev() {
            e[k] += v * e[k - 1];
        }
    }
    e
}

fn big_to_f64(v: &BigInt) -> f64 {
    v.to_f64().unwrap_or(f64::INFINITY)
}

/// Whether `eigenvalues` are the roots of `poly` to relative tolerance
/// `rel`: each `e_k` must equal `|c_{n−k}|` up to `rel · |c_{n−k}|` plus the
/// perturbation `1e-10 · n · C(n, k) · λ_max^k` that Jacobi round-off can
/// cause in a zero coefficient.
pub fn roots_match(poly: &CharPoly, eigenvalues: &[f64], rel: f64) -> bool {
    let n = poly.degree();
    if eigenvalues.len() != n {
        return false;
    }
    let e = elementary_symmetric(eigenvalues);
    let lmax = eigenvalues.iter().fold(0.0f64, |m, &v| m.max(v.abs()));
    let mut binom = 1.0f64;
    for (k, ek) in e.iter().enumerate() {
        if k > 0 {
            binom = binom * (n - k + 1) as f64 / k as f64;
        }
        let c = big_to_f64(&poly.coefficients[n - k]).abs();
        let slack = 1e-10 * n as f64 * binom * libm::pow(lmax, k as f64);
        if (ek - c).abs() > rel * c + slack {
            return false;
        }
    }
    true
}

/// Characteristic polynomials for several spanning-tree roots, and whether
/// they all coincide.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RerootComparison {
    pub roots: Vec<usize>,
    pub identical: bool,
    /// Roots whose polynomial differs from the first one.
    pub deviating: Vec<usize>,
}

pub fn compare_reroots(g: &MatchGraph, roots: &[usize]) -> Result<RerootComparison, SpectraError> {
    let mut polys = Vec::new();
    for &r in roots {
        polys.push(kk_star_charpoly(&kasteleyn_matrix_with_root(g, r)?)?);
    }
    let deviating: Vec<usize> = roots
        .iter()
        .zip(&polys)
        .filter(|(_, p)| Some(*p) != polys.first())
        .map(|(r, _)| *r)
        .collect();
    Ok(RerootComparison {
        roots: roots.to_vec(),
        identical: deviating.is_empty(),
        deviating,
    })
}

/// Everything the spectral routines report about one region.
#[derive(Debug, Clone, PartialEq)]
pub struct SpectrumSummary {
    pub dimension: usize,
    pub count: Count,
    pub charpoly: CharPoly,
    pub singular_values: Vec<f64>,
    pub singular_product: f64,
    /// `|c_0| = count²`.
    pub constant_term_identity: bool,
    pub alternating_signs: bool,
    pub roots_match: bool,
    pub reroot: RerootComparison,
}

pub fn spectrum_summary(g: &MatchGraph) -> Result<SpectrumSummary, SpectraError> {
    let k = kasteleyn_matrix(g)?;
    let count = k.abs_det();
    let charpoly = kk_star_charpoly(&k)?;
    let eig = kk_star_eigenvalues(&k)?;
    let mut singular: Vec<f64> = eig.iter().map(|&v| libm::sqrt(v)).collect();
    singular.reverse();
    let sq = BigInt::from(count.value().clone()).pow(2);
    let n = g.vertex_count();
    let roots: Vec<usize> = [0, 1, n / 3, n / 2, n.saturating_sub(1)]
        .into_iter()
        .filter(|&r| r < n.max(1))
        .fold(Vec::new(), |mut v, r| {
            if !v.contains(&r) {
                v.push(r);
            }
            v
        });
    Ok(SpectrumSummary {
        dimension: k.dimension(),
        constant_term_identity: charpoly.constant_term().abs() == sq,
        alternating_signs: charpoly.has_alternating_signs(),
        roots_match: roots_match(&charpoly, &eig, 1e-6),
        singular_product: singular.iter().product(),
        singular_values: singular,
        reroot: compare_reroots(g, &roots)?,
        charpoly,
        count,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::count_brute;
    use crate::graph::{Color, Edge, VertexLabel};
    use crate::regions::{build_aztec_diamond, build_aztec_window, build_hexagon, HexSides};

    fn four_cycle() -> MatchGraph {
        MatchGraph::new(
            (0..4).map(VertexLabel::Cube).collect(),
            vec![Edge::new(0, 1), Edge::new(1, 2), Edge::new(2, 3), Edge::new(3, 0)],
            Some(vec![Color::Even, Color::Odd, Color::Even, Color::Odd]),
            Some(vec![(0, 0), (1, 0), (1, 1), (0, 1)]),
        )
        .unwrap()
    }

    fn hex(s: [u32; 6]) -> MatchGraph {
        build_hexagon(&HexSides::new(s).unwrap(), &[]).unwrap()
    }

    #[test]
    fn matrix_shapes_and_determinants() {
        let k = kasteleyn_matrix(&four_cycle()).unwrap();
        assert_eq!(k.dimension(), 2);
        assert_eq!(k.abs_det(), Count::from(2u64));
        let k = kasteleyn_matrix(&hex([1; 6])).unwrap();
        assert_eq!((k.dimension(), k.abs_det()), (3, Count::from(2u64)));
        let k = kasteleyn_matrix(&hex([2; 6])).unwrap();
        assert_eq!((k.dimension(), k.abs_det()), (12, Count::from(20u64)));
    }

    #[test]
    fn support_matches_biadjacency() {
        let g = hex([2; 6]);
        let k = kasteleyn_matrix(&g).unwrap();
        let nonzero: usize = (0..k.dimension())
            .map(|r| k.entries().row(r).iter().filter(|v| **v != 0).count())
            .sum();
        assert_eq!(nonzero, g.edge_count());
    }

    #[test]
    fn matrix_errors() {
        let s = HexSides::new([2, 1, 2, 1, 2, 1]).unwrap();
        let g = build_hexagon(&s, &[]).unwrap();
        assert!(matches!(
            kasteleyn_matrix(&g),
            Err(SpectraError::Count(CountError::Imbalanced { .. }))
        ));
        let cube = crate::regions::build_hypercube(2).unwrap();
        assert_eq!(
            kasteleyn_matrix(&cube),
            Err(SpectraError::Count(CountError::MissingEmbedding))
        );
    }

    #[test]
    fn charpoly_examples() {
        let p = kk_star_charpoly(&kasteleyn_matrix(&four_cycle()).unwrap()).unwrap();
        assert_eq!(p.constant_term().abs(), BigInt::from(4));
        assert_eq!(p.coefficients().last(), Some(&BigInt::from(1)));
        let p = kk_star_charpoly(&kasteleyn_matrix(&hex([1; 6])).unwrap()).unwrap();
        assert_eq!(p.constant_term().abs(), BigInt::from(4));
        for v in [1, -1] {
            let k = SignedMatrix::from_entries(IntMatrix::from_rows(&[vec![v]])).unwrap();
            let p = kk_star_charpoly(&k).unwrap();
            assert_eq!(p.coefficients(), &[BigInt::from(-1), BigInt::from(1)]);
        }
        assert!(SignedMatrix::from_entries(IntMatrix::from_rows(&[vec![2]])).is_none());
    }

    #[test]
    fn charpoly_of_diagonal_matrix() {
        // K = diag(1, 1, 1): (λ − 1)^3
        let k = SignedMatrix::from_entries(IntMatrix::from_rows(&[
            vec![1, 0, 0],
            vec![0, -1, 0],
            vec![0, 0, 1],
        ]))
        .unwrap();
        let p = kk_star_charpoly(&k).unwrap();
        let want: Vec<BigInt> = [-1, 3, -3, 1].into_iter().map(BigInt::from).collect();
        assert_eq!(p.coefficients(), want.as_slice());
        assert!(p.has_alternating_signs());
    }

    #[test]
    fn singular_value_examples() {
        let s = singular_values(&kasteleyn_matrix(&four_cycle()).unwrap()).unwrap();
        assert!((s.iter().product::<f64>() - 2.0).abs() < 1e-9);
        let s = singular_values(&kasteleyn_matrix(&hex([1; 6])).unwrap()).unwrap();
        assert!((s.iter().product::<f64>() - 2.0).abs() < 1e-9);
        assert!(s.windows(2).all(|w| w[0] >= w[1]));
        let k = SignedMatrix::from_entries(IntMatrix::from_rows(&[vec![-1]])).unwrap();
        assert_eq!(singular_values(&k).unwrap(), vec![1.0]);
    }

    #[test]
    fn symmetric_functions() {
        assert_eq!(elementary_symmetric(&[1.0, 2.0, 3.0]), vec![1.0, 6.0, 11.0, 6.0]);
    }

    #[test]
    fn summary_on_small_regions() {
        for g in [hex([2; 6]), build_aztec_diamond(3).unwrap(), build_aztec_window(1, 2).unwrap()] {
            let s = spectrum_summary(&g).unwrap();
            assert_eq!(s.count, count_brute(&g).unwrap());
            assert!(s.constant_term_identity);
            assert!(s.alternating_signs);
            assert!(s.roots_match);
            assert!(s.reroot.identical);
            assert!((s.singular_product - s.count.to_f64()).abs() < 1e-6 * s.count.to_f64());
        }
    }

    #[test]
    fn zero_count_region_has_a_null_singular_value() {
        let g = build_aztec_window(2, 1).unwrap();
        let s = spectrum_summary(&g).unwrap();
        assert!(s.count.is_zero());
        assert!(s.charpoly.constant_term().is_zero());
        assert!(s.roots_match);
        let last = *s.singular_values.last().unwrap();
        assert!(last <= 1e-9 * s.singular_values[0]);
    }
}
