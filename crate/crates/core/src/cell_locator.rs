//! Which positroid cell contains a point: the anchor subsets of each box and
//! the Le-diagram they read off.

use std::collections::BTreeSet;

use crate::combinatorics::{first_violation, shape_from_base, BoundaryLabels, BoxCoord, LeDiagram, Partition, Subset};
use crate::error::Error;
use crate::gamma_graph::{GammaGraph, Vertex, VertexSet};
use crate::plucker::PluckerVector;

/// The anchor subsets of one box.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CellAnchor {
    pub boxc: BoxCoord,
    /// `[n]` minus the open interval `(i_r, j_c)`.
    pub window: Subset,
    /// Lex-maximal member of the matroid agreeing with `I` on the window.
    pub m_prime: Subset,
    /// `m_prime` with `i_r` replaced by `j_c`.
    pub m: Subset,
}

/// Anchor computations sharing one matroid.
#[derive(Clone, Debug)]
pub struct Anchors<'a> {
    matroid: &'a BTreeSet<Subset>,
    n: usize,
    base: Subset,
    shape: Partition,
    labels: BoundaryLabels,
}

impl<'a> Anchors<'a> {
    pub fn new(matroid: &'a BTreeSet<Subset>, n: usize) -> Result<Self, Error> {
        let base = matroid.first().cloned().ok_or(Error::ZeroVector)?;
        let shape = shape_from_base(&base, base.len(), n)?;
        let labels = shape.labels();
        Ok(Anchors { matroid, n, base, shape, labels })
    }

    /// The lex-minimal base `I`.
    pub fn base(&self) -> &Subset {
        &self.base
    }

    pub fn shape(&self) -> &Partition {
        &self.shape
    }

    pub fn anchor(&self, b: BoxCoord) -> Result<CellAnchor, Error> {
        if !self.shape.contains(b) {
            return Err(Error::Malformed(format!("box {b} is outside the shape {}", self.shape)));
        }
        let (lo, hi) = (self.labels.source(b.row), self.labels.sink(b.col));
        let window = Subset::new((1..=self.n).filter(|&x| x <= lo || x >= hi).collect())?;
        let on_window = |j: &Subset| -> Vec<usize> { j.elements().iter().copied().filter(|&x| x <= lo || x >= hi).collect() };
        let target = on_window(&self.base);
        let m_prime = self
            .matroid
            .iter()
            .rev()
            .find(|j| on_window(j) == target)
            .cloned()
            .ok_or_else(|| Error::Internal(format!("no base agrees with {} on the window of {b}", self.base)))?;
        let m = m_prime.swap(lo, hi);
        Ok(CellAnchor { boxc: b, window, m_prime, m })
    }
}

/// `M'(B)` and `M(B)` of a box, computed from the matroid.
pub fn anchor_sets(matroid: &BTreeSet<Subset>, n: usize, b: BoxCoord) -> Result<CellAnchor, Error> {
    Anchors::new(matroid, n)?.anchor(b)
}

/// The Le-diagram of the cell containing `p`: box `B` is `+` iff
/// `P_{M(B)} ≠ 0`.
pub fn locate(p: &PluckerVector) -> Result<LeDiagram, Error> {
    let matroid: BTreeSet<Subset> = p.support().cloned().collect();
    let anchors = Anchors::new(&matroid, p.n())?;
    let shape = anchors.shape().clone();
    let mut plus = Vec::new();
    for b in shape.boxes() {
        if p.is_nonzero(&anchors.anchor(b)?.m) {
            plus.push(b);
        }
    }
    if let Some(bad) = first_violation(&shape, |b| plus.contains(&b)) {
        return Err(Error::NotLeDiagram(bad.to_string()));
    }
    LeDiagram::from_plus(shape, plus)
}

/// `M'(B)` as the destinations of the north-west-most non-intersecting
/// collection strictly south-east of the `B` hook. Sources that cannot be
/// routed there keep their trivial path.
pub fn mprime_via_paths(graph: &GammaGraph, b: BoxCoord) -> Subset {
    let shape = graph.shape();
    let allowed = |v: Vertex| match v {
        Vertex::Source(rho) => rho > b.row && shape.contains(BoxCoord::new(rho, b.col)),
        Vertex::Crossing(d) => d.row > b.row && d.col < b.col,
        Vertex::Sink(gamma) => gamma < b.col && shape.col_len(gamma) >= b.row,
    };
    let labels = graph.labels();
    let mut used = VertexSet::default();
    let mut out: Vec<usize> = labels.sources.elements().to_vec();
    for rho in b.row + 1..=shape.col_len(b.col) {
        if let Some(path) = graph.northwest_path(rho, &allowed, used) {
            used = used.union(graph.vertex_set(path.vertices()));
            out.retain(|&x| x != labels.source(rho));
            out.push(labels.sink(path.sink_col()));
        }
    }
    out.sort_unstable();
    Subset::new(out).expect("distinct labels")
}
