use alloc::string::String;

use thiserror::Error;

use crate::graph::Edge;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum GraphError {
    #[error("self-loop at vertex {0}")]
    SelfLoop(usize),
    #[error("duplicate edge {0:?}")]
    DuplicateEdge(Edge),
    #[error("edge {0:?} references a missing vertex")]
    VertexOutOfRange(Edge),
    #[error("edge {0:?} joins two vertices of the same colour class")]
    NotBipartite(Edge),
    #[error("{what} has length {got}, expected {expected}")]
    LengthMismatch {
        what: &'static str,
        got: usize,
        expected: usize,
    },
    #[error("embedding violates Euler's relation in component {component}: V - E + F = {value}")]
    EulerViolated { component: usize, value: i64 },
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum RegionError {
    #[error("hexagon sides {0:?} violate the closure condition s1-s4 = s5-s2 = s3-s6")]
    ClosureViolated([u32; 6]),
    #[error("hexagon sides {0:?} enclose no cells")]
    EmptyHexagon([u32; 6]),
    #[error("cell {0} lies outside the region")]
    CellOutsideRegion(String),
    #[error("cell {0} is listed twice")]
    DuplicateCell(String),
    #[error("sides {0:?} are not of the form (a,a,b,a,a,b)")]
    NotSymmetricHexagon([u32; 6]),
    #[error("a = {a} and b = {b} must have opposite parity")]
    ParityViolated { a: u32, b: u32 },
    #[error("no rhombus of the hexagon is centred on its centre")]
    NoCentralEdge,
    #[error("parameter {name} = {value} is out of range ({rule})")]
    ParameterOutOfRange {
        name: &'static str,
        value: i64,
        rule: &'static str,
    },
    #[error("colour classes have sizes {even} and {odd} after removal")]
    Imbalanced { even: usize, odd: usize },
    #[error("holes are only supported for hexagons")]
    HolesNotSupported,
    #[error(transparent)]
    Graph(#[from] GraphError),
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum CountError {
    #[error("graph has {vertices} vertices, brute force is limited to {limit}")]
    TooLargeForBrute { vertices: usize, limit: usize },
    #[error("colour classes have {rows} and {cols} vertices, permanent is limited to {limit}")]
    TooLargeForPermanent {
        rows: usize,
        cols: usize,
        limit: usize,
    },
    #[error("graph has no bipartition")]
    NotBipartite,
    #[error("colour classes are imbalanced ({even} vs {odd})")]
    Imbalanced { even: usize, odd: usize },
    #[error("graph has no planar embedding")]
    MissingEmbedding,
    #[error("graph is disconnected ({components} components)")]
    Disconnected { components: usize },
    #[error("edge {0:?} is not in the graph")]
    EdgeNotInGraph(Edge),
    #[error("root vertex {0} is out of range")]
    BadRoot(usize),
    #[error("graph has no perfect matching, ratio is undefined")]
    ZeroTotal,
    #[error("matching count overflowed 128 bits")]
    Overflow,
    #[error("enumeration stopped after {0} matchings")]
    EnumerationLimit(usize),
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum TransferError {
    #[error("cut width {width} exceeds the limit of {limit} cells")]
    CutTooWide { width: usize, limit: usize },
    #[error("parameter {name} = {value} is out of range ({rule})")]
    ParameterOutOfRange {
        name: &'static str,
        value: i64,
        rule: &'static str,
    },
    #[error("vertex {0} is not a square-lattice cell")]
    NotSquareLattice(usize),
    #[error("need at least 3 values to detect a polynomial, got {0}")]
    SequenceTooShort(usize),
    #[error(transparent)]
    Region(#[from] RegionError),
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum SpectraError {
    #[error(transparent)]
    Count(#[from] CountError),
    #[error("matrix dimension {dim} exceeds the limit of {limit}")]
    TooLarge { dim: usize, limit: usize },
    #[error("Jacobi iteration did not converge in {0} sweeps")]
    NoConvergence(usize),
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ClaimError {
    #[error("parameter {name} = {value} is out of range ({rule})")]
    ParameterOutOfRange {
        name: &'static str,
        value: i64,
        rule: &'static str,
    },
    #[error(transparent)]
    Region(#[from] RegionError),
    #[error(transparent)]
    Count(#[from] CountError),
    #[error(transparent)]
    Transfer(#[from] TransferError),
    #[error(transparent)]
    Spectra(#[from] SpectraError),
}
