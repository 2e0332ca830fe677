//! Recovering Le-coordinates from Plücker coordinates.
//!
//! Generalized paths are stored as their outer-corner antichains. Along a
//! path the outer corners run north-east to south-west: rows strictly
//! increase and columns (counted from the right) strictly increase. The
//! inner corner between consecutive outer corners `(r_t, c_t)` and
//! `(r_{t+1}, c_{t+1})` is `(r_{t+1}, c_t)` when that box exists, i.e. when
//! the two hooks meet.

use std::collections::{BTreeMap, BTreeSet};

use num_traits::{One, Zero};

use crate::cell_locator::{locate, mprime_via_paths, Anchors};
use crate::combinatorics::{BoxCoord, LeDiagram, LeTableau, Partition, Subset};
use crate::error::Error;
use crate::gamma_graph::{face_poset, mobius, Face, GammaGraph, MobiusMethod, Path, Vertex, VertexSet};
use crate::measurement::{enumerate_families, PathFamily, Route};
use crate::plucker::PluckerVector;
use crate::rational::{pow_signed, Rational};

#[derive(Clone, Debug, Default, PartialEq, Eq, Hash)]
pub struct GeneralizedPath {
    outer: Vec<BoxCoord>,
    inner: Vec<BoxCoord>,
}

impl GeneralizedPath {
    pub fn empty() -> Self {
        Self::default()
    }

    /// Builds from outer corners (any order); they must form an antichain.
    pub fn new(shape: &Partition, mut outer: Vec<BoxCoord>) -> Result<Self, Error> {
        outer.sort_by_key(|b| b.row);
        for b in &outer {
            if !shape.contains(*b) {
                return Err(Error::Malformed(format!("corner {b} is outside the shape {shape}")));
            }
        }
        if outer.windows(2).any(|w| !(w[0].row < w[1].row && w[0].col < w[1].col)) {
            return Err(Error::Malformed(format!("corners {outer:?} do not form a generalized path")));
        }
        let inner = outer
            .windows(2)
            .map(|w| BoxCoord::new(w[1].row, w[0].col))
            .filter(|&b| shape.contains(b))
            .collect();
        Ok(GeneralizedPath { outer, inner })
    }

    /// North-west-most boxes of `boxes` (those covered by no other member).
    fn minimal(shape: &Partition, boxes: &[BoxCoord]) -> Self {
        let outer = boxes
            .iter()
            .copied()
            .filter(|&c| !boxes.iter().any(|&d| d != c && d.covers(c)))
            .collect();
        Self::new(shape, outer).expect("minimal boxes form an antichain")
    }

    pub fn outer(&self) -> &[BoxCoord] {
        &self.outer
    }

    pub fn inner(&self) -> &[BoxCoord] {
        &self.inner
    }

    pub fn is_empty(&self) -> bool {
        self.outer.is_empty()
    }

    /// Whether `b` lies weakly south-east of the path.
    pub fn covers(&self, b: BoxCoord) -> bool {
        self.outer.iter().any(|o| o.covers(b))
    }

    /// `ε_W`: `+1` on outer corners, `-1` on inner corners.
    pub fn epsilon(&self) -> BTreeMap<BoxCoord, i64> {
        let mut eps = BTreeMap::new();
        for &b in &self.outer {
            eps.insert(b, 1);
        }
        for &b in &self.inner {
            eps.insert(b, -1);
        }
        eps
    }

    /// The hook paths the generalized path is drawn with, north-east first.
    /// Consecutive outer corners whose hooks meet share one path.
    pub fn staircases(&self, graph: &GammaGraph) -> Vec<Path> {
        let mut runs: Vec<Vec<BoxCoord>> = Vec::new();
        for (t, &o) in self.outer.iter().enumerate() {
            let joined = t > 0 && self.inner.contains(&BoxCoord::new(o.row, self.outer[t - 1].col));
            match runs.last_mut() {
                Some(run) if joined => run.push(o),
                _ => runs.push(vec![o]),
            }
        }
        runs.iter().map(|run| staircase(graph, run)).collect()
    }

    pub fn vertex_set(&self, graph: &GammaGraph) -> VertexSet {
        self.staircases(graph)
            .iter()
            .fold(VertexSet::default(), |acc, p| acc.union(graph.vertex_set(p.vertices())))
    }
}

/// West along each corner's row-line, south along its column-line.
fn staircase(graph: &GammaGraph, run: &[BoxCoord]) -> Path {
    let step = |v: Vertex, west: bool| {
        let next = if west { graph.west(v) } else { graph.south(v) };
        next.expect("staircase stays on drawn hooks")
    };
    let mut v = Vertex::Source(run[0].row);
    let mut vertices = vec![v];
    for (t, &o) in run.iter().enumerate() {
        while v != Vertex::Crossing(o) {
            v = step(v, true);
            vertices.push(v);
        }
        let stop = run.get(t + 1).map(|next| Vertex::Crossing(BoxCoord::new(next.row, o.col)));
        loop {
            if Some(v) == stop || matches!(v, Vertex::Sink(_)) {
                break;
            }
            v = step(v, false);
            vertices.push(v);
        }
    }
    graph.make_path(vertices)
}

/// Outer corners, inner corners and the sign map `ε_W`.
pub type Corners = (Vec<BoxCoord>, Vec<BoxCoord>, BTreeMap<BoxCoord, i64>);

/// Outer corners, inner corners and `ε_W`, checking every corner is `+`.
pub fn corners(w: &GeneralizedPath, diagram: &LeDiagram) -> Result<Corners, Error> {
    if let Some(b) = w.outer.iter().chain(&w.inner).find(|&&b| !diagram.is_plus(b)) {
        return Err(Error::Malformed(format!("corner {b} of the generalized path is not a + box")));
    }
    Ok((w.outer.clone(), w.inner.clone(), w.epsilon()))
}

/// `D_F` for the face cornered at `b`: the north-west-most `+` boxes
/// strictly inside the `b` hook.
pub fn lower_boundary(graph: &GammaGraph, b: BoxCoord) -> GeneralizedPath {
    let inside: Vec<BoxCoord> = graph.hooks().iter().copied().filter(|&c| c != b && b.covers(c)).collect();
    GeneralizedPath::minimal(graph.shape(), &inside)
}

/// The north-west-most generalized path lying strictly south-east of `w`.
pub fn strictly_below(graph: &GammaGraph, w: &GeneralizedPath) -> GeneralizedPath {
    if w.is_empty() {
        return GeneralizedPath::empty();
    }
    let taken = w.vertex_set(graph);
    let candidates: Vec<BoxCoord> = graph
        .hooks()
        .iter()
        .copied()
        .filter(|&c| {
            w.covers(c) && graph.vertex_set(staircase(graph, &[c]).vertices()).is_disjoint(taken)
        })
        .collect();
    GeneralizedPath::minimal(graph.shape(), &candidates)
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FaceBoundaries {
    pub face: BoxCoord,
    pub upper: GeneralizedPath,
    pub lower: GeneralizedPath,
    pub upper_prime: GeneralizedPath,
    pub lower_prime: GeneralizedPath,
}

impl FaceBoundaries {
    /// `ε = ε_U − ε_U' − ε_D + ε_D'`, the exponent of each `P_{M(C)}` in
    /// the face weight. Zero exponents are dropped.
    pub fn exponents(&self) -> BTreeMap<BoxCoord, i64> {
        let mut eps: BTreeMap<BoxCoord, i64> = BTreeMap::new();
        for (w, sign) in [(&self.upper, 1), (&self.upper_prime, -1), (&self.lower, -1), (&self.lower_prime, 1)] {
            for (b, e) in w.epsilon() {
                *eps.entry(b).or_insert(0) += sign * e;
            }
        }
        eps.retain(|_, e| *e != 0);
        eps
    }
}

pub fn face_boundaries(graph: &GammaGraph, face: &Face) -> FaceBoundaries {
    let b = face.corner;
    let upper = GeneralizedPath::new(graph.shape(), vec![b]).expect("single corner");
    let lower = lower_boundary(graph, b);
    let upper_prime = strictly_below(graph, &upper);
    let lower_prime = strictly_below(graph, &lower);
    FaceBoundaries { face: b, upper, lower, upper_prime, lower_prime }
}

/// `Nest(W)`: the north-west-most non-intersecting family weakly south-east
/// of `w`, built greedily from the top source down.
pub fn nest(graph: &GammaGraph, w: &GeneralizedPath) -> PathFamily {
    let shape = graph.shape();
    let allowed = |v: Vertex| match v {
        Vertex::Source(rho) => w.outer.iter().any(|o| rho >= o.row && shape.contains(BoxCoord::new(rho, o.col))),
        Vertex::Crossing(d) => w.covers(d),
        Vertex::Sink(gamma) => w.outer.iter().any(|o| gamma <= o.col && shape.col_len(gamma) >= o.row),
    };
    let mut used = VertexSet::default();
    let mut routes = BTreeMap::new();
    for rho in 1..=shape.k() {
        if let Some(path) = graph.northwest_path(rho, &allowed, used) {
            used = used.union(graph.vertex_set(path.vertices()));
            routes.insert(graph.labels().source(rho), Route::Path(path));
        }
    }
    PathFamily::from_routes(routes)
}

/// Structural data of a cell reused across many points of it.
#[derive(Clone, Debug)]
pub struct CellInversion {
    graph: GammaGraph,
    base: Vec<Subset>,
    exponents: Vec<Vec<i64>>,
}

impl CellInversion {
    pub fn new(diagram: &LeDiagram) -> Result<Self, Error> {
        let graph = GammaGraph::new(diagram)?;
        let base = tp_base_of(&graph);
        let index: BTreeMap<BoxCoord, usize> = graph.hooks().iter().enumerate().map(|(i, &b)| (b, i)).collect();
        let exponents = graph
            .faces()
            .iter()
            .map(|f| {
                let mut row = vec![0; base.len()];
                for (c, e) in face_boundaries(&graph, f).exponents() {
                    row[index[&c]] = e;
                }
                row
            })
            .collect();
        Ok(CellInversion { graph, base, exponents })
    }

    pub fn graph(&self) -> &GammaGraph {
        &self.graph
    }

    /// `M(C)` for the `+` boxes `C` in reading order.
    pub fn base(&self) -> &[Subset] {
        &self.base
    }

    /// Exponent row of each face weight over [`base`](Self::base), indexed
    /// like the `+` boxes.
    pub fn exponents(&self) -> &[Vec<i64>] {
        &self.exponents
    }

    /// Le-coordinates from the base coordinates alone, in `+` box order.
    pub fn from_base_values(&self, values: &[Rational]) -> Result<LeTableau, Error> {
        if let Some(i) = values.iter().position(Zero::is_zero) {
            return Err(Error::ZeroDenominator(format!("{{{}}}", self.base[i])));
        }
        let entries = self.graph.hooks().iter().zip(&self.exponents).map(|(&b, row)| {
            let t = row
                .iter()
                .zip(values)
                .filter(|(e, _)| **e != 0)
                .fold(Rational::one(), |acc, (&e, v)| acc * pow_signed(v, e));
            (b, t)
        });
        LeTableau::from_plus_entries(self.graph.shape().clone(), entries)
    }

    /// The minimal-form inversion, reading only the base coordinates of `p`.
    pub fn coords_minimal(&self, p: &PluckerVector) -> Result<LeTableau, Error> {
        check_cell(p, self.graph.diagram())?;
        let values: Vec<Rational> = self.base.iter().map(|m| p.get(m)).collect();
        self.from_base_values(&values)
    }
}

fn check_cell(p: &PluckerVector, diagram: &LeDiagram) -> Result<(), Error> {
    if p.k() != diagram.k() || p.n() != diagram.n() {
        return Err(Error::NotInCell(format!(
            "point of Gr({},{}) against a cell of Gr({},{})",
            p.k(),
            p.n(),
            diagram.k(),
            diagram.n()
        )));
    }
    let found = locate(p)?;
    if &found != diagram {
        return Err(Error::NotInCell(format!(
            "point lies in the cell with + boxes {:?}",
            found.plus_boxes().iter().map(ToString::to_string).collect::<Vec<_>>()
        )));
    }
    Ok(())
}

fn tp_base_of(graph: &GammaGraph) -> Vec<Subset> {
    let labels = graph.labels();
    graph
        .hooks()
        .iter()
        .map(|&b| mprime_via_paths(graph, b).swap(labels.source(b.row), labels.sink(b.col)))
        .collect()
}

/// `{M(B) : B is +}` in reading order.
pub fn tp_base(diagram: &LeDiagram) -> Result<Vec<Subset>, Error> {
    Ok(tp_base_of(&GammaGraph::new(diagram)?))
}

/// `T_B = ∏_{C ≥ B} (P_{M(C)} / P_{M'(C)})^{μ(B, C)}`.
pub fn coords_mobius(p: &PluckerVector, diagram: &LeDiagram) -> Result<LeTableau, Error> {
    check_cell(p, diagram)?;
    let graph = GammaGraph::new(diagram)?;
    let poset = face_poset(&graph);
    let mu = mobius(&graph, &poset, MobiusMethod::ClosedForm);
    let matroid: BTreeSet<Subset> = p.support().cloned().collect();
    let anchors = Anchors::new(&matroid, p.n())?;
    let ratios = poset
        .elements()
        .iter()
        .map(|&c| {
            let a = anchors.anchor(c)?;
            let den = p.get(&a.m_prime);
            if den.is_zero() {
                return Err(Error::ZeroDenominator(format!("{{{}}}", a.m_prime)));
            }
            Ok(p.get(&a.m) / den)
        })
        .collect::<Result<Vec<_>, Error>>()?;
    let m = poset.elements().len();
    let entries = (0..m).map(|b| {
        let t = (0..m)
            .filter(|&c| mu.by_index(b, c) != 0)
            .fold(Rational::one(), |acc, c| acc * pow_signed(&ratios[c], mu.by_index(b, c)));
        (poset.elements()[b], t)
    });
    LeTableau::from_plus_entries(diagram.shape().clone(), entries)
}

/// `T_B = ∏ P_{M(C)}^{ε(C)}` over the totally positive base.
pub fn coords_minimal(p: &PluckerVector, diagram: &LeDiagram) -> Result<LeTableau, Error> {
    CellInversion::new(diagram)?.coords_minimal(p)
}

/// A Laurent polynomial with positive integer coefficients in the base
/// coordinates `P_{M(C)}`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LaurentPolynomial {
    pub base: Vec<Subset>,
    /// Exponent vector over `base` to coefficient, in lexicographic order.
    pub terms: BTreeMap<Vec<i64>, u64>,
}

impl LaurentPolynomial {
    pub fn evaluate(&self, values: &[Rational]) -> Rational {
        self.terms.iter().fold(Rational::zero(), |acc, (exps, &coef)| {
            let mono = exps
                .iter()
                .zip(values)
                .filter(|(e, _)| **e != 0)
                .fold(Rational::from_integer(coef.into()), |m, (&e, v)| m * pow_signed(v, e));
            acc + mono
        })
    }
}

/// `P_J` on the cell as a Laurent polynomial in the base coordinates.
pub fn laurent_expand(diagram: &LeDiagram, j: &Subset) -> Result<LaurentPolynomial, Error> {
    laurent_expand_with(&CellInversion::new(diagram)?, j)
}

pub fn laurent_expand_with(cell: &CellInversion, j: &Subset) -> Result<LaurentPolynomial, Error> {
    let graph = cell.graph();
    let families = enumerate_families(graph, j)?;
    if families.is_empty() {
        return Err(Error::NotInMatroid(j.to_string()));
    }
    let width = cell.base.len();
    let mut terms = BTreeMap::new();
    for family in &families {
        // a family's weight is ∏ T_C^{m(C)}, m(C) = number of its paths with C south-east
        let mut exps = vec![0i64; width];
        for path in family.paths() {
            let mask = graph.southeast_mask(path);
            for (c, row) in cell.exponents.iter().enumerate() {
                if mask >> c & 1 == 1 {
                    for (e, x) in exps.iter_mut().zip(row) {
                        *e += x;
                    }
                }
            }
        }
        *terms.entry(exps).or_insert(0) += 1;
    }
    Ok(LaurentPolynomial { base: cell.base.clone(), terms })
}
