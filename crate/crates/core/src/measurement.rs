//! Boundary measurements: non-intersecting path families in the Γ-network
//! and the Plücker vector they define.

use std::collections::{BTreeMap, BTreeSet};

use num_bigint::BigInt;
use num_traits::{One, Zero};

use crate::combinatorics::{BoxCoord, LeDiagram, LeTableau, Subset};
use crate::error::Error;
use crate::gamma_graph::{GammaGraph, Path, Vertex, VertexSet};
use crate::matrix_io::{integer_maximal_minors, RationalMatrix};
use crate::plucker::{normalize_projective, PluckerVector};
use crate::rational::Rational;

#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord)]
pub enum Route {
    /// The source is its own destination.
    Trivial,
    Path(Path),
}

/// One non-intersecting family, keyed by source label.
#[derive(Clone, Debug, Default, PartialEq, Eq, PartialOrd, Ord)]
pub struct PathFamily {
    routes: BTreeMap<usize, Route>,
}

impl PathFamily {
    pub fn from_routes(routes: BTreeMap<usize, Route>) -> Self {
        PathFamily { routes }
    }

    pub fn routes(&self) -> &BTreeMap<usize, Route> {
        &self.routes
    }

    pub fn paths(&self) -> impl Iterator<Item = &Path> {
        self.routes.values().filter_map(|r| match r {
            Route::Path(p) => Some(p),
            Route::Trivial => None,
        })
    }

    pub fn destinations(&self, graph: &GammaGraph) -> Subset {
        let mut out: Vec<usize> = self
            .routes
            .iter()
            .map(|(&src, route)| match route {
                Route::Trivial => src,
                Route::Path(p) => graph.labels().sink(p.sink_col()),
            })
            .collect();
        out.sort_unstable();
        Subset::new(out).expect("distinct destinations")
    }
}

/// All families with destination set `j`, in depth-first order (the top
/// source's route varies slowest, west-first).
pub fn enumerate_families(graph: &GammaGraph, j: &Subset) -> Result<Vec<PathFamily>, Error> {
    let mut out = Vec::new();
    search_families(graph, j, usize::MAX, &mut out)?;
    Ok(out)
}

fn search_families(graph: &GammaGraph, j: &Subset, limit: usize, out: &mut Vec<PathFamily>) -> Result<(), Error> {
    let shape = graph.shape();
    let labels = graph.labels();
    if j.len() != shape.k() || j.max_element().is_some_and(|m| m > shape.n()) {
        return Err(Error::Malformed(format!("{j} is not a {}-subset of [{}]", shape.k(), shape.n())));
    }
    // Non-crossing pairing: reading labels along the boundary, each sink
    // closes the most recent unmatched source.
    let mut open = Vec::new();
    let mut pairs = Vec::new();
    for x in 1..=shape.n() {
        if let Some(r) = labels.source_row(x) {
            if !j.contains(x) {
                open.push(r);
            }
        } else if j.contains(x) {
            match open.pop() {
                Some(r) => pairs.push((r, labels.sink_col(x).expect("non-source labels are sinks"))),
                None => return Ok(()),
            }
        }
    }
    pairs.sort_unstable();
    let (sources, sinks): (Vec<usize>, Vec<usize>) = pairs.into_iter().unzip();
    let mut chosen = Vec::with_capacity(sources.len());
    pair_routes(graph, &sources, &sinks, VertexSet::default(), &mut chosen, limit, &mut |chosen| {
        let mut routes: BTreeMap<usize, Route> = (1..=shape.k())
            .filter(|&r| j.contains(labels.source(r)))
            .map(|r| (labels.source(r), Route::Trivial))
            .collect();
        for p in chosen {
            routes.insert(labels.source(p.source_row()), Route::Path(p.clone()));
        }
        out.push(PathFamily { routes });
    });
    Ok(())
}

fn pair_routes(
    graph: &GammaGraph,
    sources: &[usize],
    sinks: &[usize],
    used: VertexSet,
    chosen: &mut Vec<Path>,
    limit: usize,
    emit: &mut dyn FnMut(&[Path]),
) -> usize {
    let t = chosen.len();
    if t == sources.len() {
        emit(chosen);
        return 1;
    }
    let mut found = 0;
    for p in graph.paths_from(sources[t], &|_| true, used, Some(sinks[t]), usize::MAX) {
        if found >= limit {
            break;
        }
        let mask = graph.vertex_set(p.vertices());
        chosen.push(p);
        found += pair_routes(graph, sources, sinks, used.union(mask), chosen, limit - found, emit);
        chosen.pop();
    }
    found
}

/// Whether at least one family reaches `j`.
pub fn has_family(graph: &GammaGraph, j: &Subset) -> Result<bool, Error> {
    let mut out = Vec::new();
    search_families(graph, j, 1, &mut out)?;
    Ok(!out.is_empty())
}

/// A Γ-graph with positive face weights.
#[derive(Clone, Debug)]
pub struct GammaNetwork {
    graph: GammaGraph,
    weights: Vec<Rational>,
}

impl GammaNetwork {
    pub fn new(tableau: &LeTableau) -> Result<Self, Error> {
        let graph = GammaGraph::new(tableau.diagram())?;
        let weights = graph.hooks().iter().map(|&b| tableau.entry(b)).collect();
        Ok(GammaNetwork { graph, weights })
    }

    pub fn graph(&self) -> &GammaGraph {
        &self.graph
    }

    /// Weight of the face cornered at a `+` box.
    pub fn face_weight(&self, corner: BoxCoord) -> Option<&Rational> {
        self.graph.plus_index(corner).map(|i| &self.weights[i])
    }

    /// Weight of the boundary face, making the product over all faces `1`.
    pub fn boundary_face_weight(&self) -> Rational {
        Rational::one() / self.weights.iter().fold(Rational::one(), |acc, w| acc * w)
    }

    pub fn mask_weight(&self, mask: u128) -> Rational {
        self.weights
            .iter()
            .enumerate()
            .filter(|(i, _)| mask >> i & 1 == 1)
            .fold(Rational::one(), |acc, (_, w)| acc * w)
    }

    pub fn family_weight(&self, family: &PathFamily) -> Rational {
        family.routes().values().fold(Rational::one(), |acc, r| acc * path_weight(self, r))
    }
}

/// Product of the weights of the faces south-east of the route.
pub fn path_weight(network: &GammaNetwork, route: &Route) -> Rational {
    match route {
        Route::Trivial => Rational::one(),
        Route::Path(p) => network.mask_weight(network.graph().southeast_mask(p)),
    }
}

/// A nontrivial path summarized for family search.
#[derive(Clone, Debug)]
pub(crate) struct PathSummary {
    pub vertices: VertexSet,
    pub sink_label: usize,
    pub southeast: u128,
}

pub(crate) fn path_summaries(graph: &GammaGraph) -> Vec<Vec<PathSummary>> {
    (1..=graph.shape().k())
        .map(|r| {
            graph
                .paths_from(r, &|_| true, VertexSet::default(), None, usize::MAX)
                .into_iter()
                .map(|p| PathSummary {
                    vertices: graph.vertex_set(p.vertices()),
                    sink_label: graph.labels().sink(p.sink_col()),
                    southeast: graph.southeast_mask(&p),
                })
                .collect()
        })
        .collect()
}

/// Visits every non-intersecting family once, across all destination sets.
/// The callback receives the destination bitmask and the chosen path of each
/// routed source (by row, `None` for trivial routes).
pub(crate) fn for_each_family(
    graph: &GammaGraph,
    summaries: &[Vec<PathSummary>],
    visit: &mut dyn FnMut(u64, &[Option<usize>]),
) {
    fn go(
        graph: &GammaGraph,
        summaries: &[Vec<PathSummary>],
        row: usize,
        used: VertexSet,
        jmask: u64,
        chosen: &mut Vec<Option<usize>>,
        visit: &mut dyn FnMut(u64, &[Option<usize>]),
    ) {
        if row == summaries.len() {
            visit(jmask, chosen);
            return;
        }
        let label = graph.labels().source(row + 1);
        chosen.push(None);
        go(graph, summaries, row + 1, used, jmask | 1 << (label - 1), chosen, visit);
        chosen.pop();
        for (i, p) in summaries[row].iter().enumerate() {
            if p.vertices.is_disjoint(used) {
                chosen.push(Some(i));
                go(graph, summaries, row + 1, used.union(p.vertices), jmask | 1 << (p.sink_label - 1), chosen, visit);
                chosen.pop();
            }
        }
    }
    let mut chosen = Vec::with_capacity(summaries.len());
    go(graph, summaries, 0, VertexSet::default(), 0, &mut chosen, visit);
}

/// The boundary measurement `P_J = Σ wt(A)` over non-intersecting families.
pub fn measure(tableau: &LeTableau) -> Result<PluckerVector, Error> {
    let network = GammaNetwork::new(tableau)?;
    let graph = network.graph();
    let summaries = path_summaries(graph);
    // Writing T_C = a_C / b_C, a path weighs num(path) / D with
    // num = ∏_{SE} a_C ∏_{not SE} b_C and D = ∏ b_C.
    let numer: Vec<BigInt> = network.weights.iter().map(|w| w.numer().clone()).collect();
    let denom: Vec<BigInt> = network.weights.iter().map(|w| w.denom().clone()).collect();
    let path_num: Vec<Vec<BigInt>> = summaries
        .iter()
        .map(|row| {
            row.iter()
                .map(|p| {
                    (0..numer.len()).fold(BigInt::one(), |acc, i| {
                        acc * if p.southeast >> i & 1 == 1 { &numer[i] } else { &denom[i] }
                    })
                })
                .collect()
        })
        .collect();
    let d: BigInt = denom.iter().product();
    let mut sums: BTreeMap<u64, (BigInt, u32)> = BTreeMap::new();
    for_each_family(graph, &summaries, &mut |jmask, chosen| {
        let mut term = BigInt::one();
        let mut m = 0;
        for (row, c) in chosen.iter().enumerate() {
            if let Some(i) = c {
                term *= &path_num[row][*i];
                m += 1;
            }
        }
        let entry = sums.entry(jmask).or_insert_with(|| (BigInt::zero(), m));
        entry.0 += term;
    });
    let raw = sums.into_iter().map(|(jmask, (num, m))| {
        (Subset::from_mask(jmask), Rational::new(num, num_traits::pow(d.clone(), m as usize)))
    });
    normalize_projective(graph.shape().k(), graph.shape().n(), raw)
}

/// The `k × n` matrix of signed single-path weight sums whose maximal minors
/// are the boundary measurements.
///
/// Row `r` has `1` in the column of its own source, `0` in the other source
/// columns, and in the column of sink `j` the weighted path count from `i_r`
/// to `j` times `(-1)^s`, where `s` counts the sources strictly between `i_r`
/// and `j`.
pub fn measurement_matrix(tableau: &LeTableau) -> Result<RationalMatrix, Error> {
    let network = GammaNetwork::new(tableau)?;
    let (rows, scale) = integer_measurement_rows(&network);
    let n = network.graph().shape().n();
    let rows = rows
        .into_iter()
        .map(|row| row.into_iter().map(|x| Rational::new(x, scale.clone())).collect())
        .collect();
    RationalMatrix::with_width(rows, n)
}

/// [`measurement_matrix`] times a common positive integer, so that it has
/// integer entries; returns the rows and the factor.
///
/// Every path from `i_r` to the sink of column `c` crosses each column in
/// `c0(r)+1 ..= c` exactly once, at some row-line `ρ`, picking up
/// `∏ T_C` over the `+` boxes `C` of that column at rows `≥ ρ`. Scaling
/// column `γ` by the product `B_γ` of the denominators of its `+` entries
/// makes each such factor an integer.
fn integer_measurement_rows(network: &GammaNetwork) -> (Vec<Vec<BigInt>>, BigInt) {
    let graph = network.graph();
    let shape = graph.shape();
    let (k, n, width) = (shape.k(), shape.n(), shape.width());
    let labels = graph.labels();
    let entry = |r: usize, c: usize| network.face_weight(BoxCoord::new(r, c));
    let col_denom: Vec<BigInt> = (1..=width)
        .map(|c| (1..=shape.col_len(c)).filter_map(|r| entry(r, c)).map(|w| w.denom().clone()).product())
        .collect();
    // cross[ρ][γ]: B_γ times the weight of crossing column γ on row-line ρ
    let mut cross = vec![vec![BigInt::one(); width + 1]; k + 1];
    for gamma in 1..=width {
        for rho in 1..=shape.col_len(gamma) {
            let mut w = BigInt::one();
            for r in 1..=shape.col_len(gamma) {
                if let Some(t) = entry(r, gamma) {
                    w *= if r >= rho { t.numer() } else { t.denom() };
                }
            }
            cross[rho][gamma] = w;
        }
    }
    let scale: BigInt = col_denom.iter().product();
    let mut rows = vec![vec![BigInt::zero(); n]; k];
    for r in 1..=k {
        let i_r = labels.source(r);
        rows[r - 1][i_r - 1] = scale.clone();
        let start = *shape.row_cols(r).start();
        let mut at: BTreeMap<(usize, usize), BigInt> = BTreeMap::new();
        let mut sink_sum: BTreeMap<usize, BigInt> = BTreeMap::new();
        if let Some(Vertex::Crossing(b)) = graph.west(Vertex::Source(r)) {
            let w = (start..=b.col).fold(BigInt::one(), |acc, g| acc * &cross[r][g]);
            at.insert((b.row, b.col), w);
        }
        // (row, col) ascending is a topological order of the crossings
        while let Some(((row, col), w)) = at.pop_first() {
            let v = Vertex::Crossing(BoxCoord::new(row, col));
            if let Some(Vertex::Crossing(next)) = graph.west(v) {
                let edge = (col + 1..=next.col).fold(BigInt::one(), |acc, g| acc * &cross[row][g]);
                *at.entry((next.row, next.col)).or_insert_with(BigInt::zero) += &w * edge;
            }
            match graph.south(v) {
                Some(Vertex::Crossing(next)) => {
                    *at.entry((next.row, next.col)).or_insert_with(BigInt::zero) += &w;
                }
                Some(Vertex::Sink(c)) => {
                    *sink_sum.entry(c).or_insert_with(BigInt::zero) += &w;
                }
                _ => unreachable!("crossings always continue south"),
            }
        }
        for (c, w) in sink_sum {
            let j = labels.sink(c);
            // columns not crossed keep their denominators
            let rest: BigInt = (1..start).chain(c + 1..=width).map(|g| &col_denom[g - 1]).product();
            let between = labels.sources.elements().iter().filter(|&&i| i_r < i && i < j).count();
            let value = w * rest;
            rows[r - 1][j - 1] = if between % 2 == 0 { value } else { -value };
        }
    }
    (rows, scale)
}

/// Boundary measurements as maximal minors of [`measurement_matrix`].
pub fn measure_det(tableau: &LeTableau) -> Result<PluckerVector, Error> {
    let network = GammaNetwork::new(tableau)?;
    let (rows, _) = integer_measurement_rows(&network);
    let shape = network.graph().shape();
    let raw = integer_maximal_minors(&rows, shape.k(), shape.n())
        .into_iter()
        .map(|(j, d)| (j, Rational::from_integer(d)));
    normalize_projective(shape.k(), shape.n(), raw)
}

/// The subsets reached by at least one non-intersecting family.
pub fn matroid_of(diagram: &LeDiagram) -> Result<BTreeSet<Subset>, Error> {
    let graph = GammaGraph::new(diagram)?;
    let summaries = path_summaries(&graph);
    let mut masks = BTreeSet::new();
    for_each_family(&graph, &summaries, &mut |jmask, _| {
        masks.insert(jmask);
    });
    Ok(masks.into_iter().map(Subset::from_mask).collect())
}

/// [`matroid_of`] restricted to the given candidate subsets.
pub fn matroid_within(diagram: &LeDiagram, candidates: &[Subset]) -> Result<BTreeSet<Subset>, Error> {
    let graph = GammaGraph::new(diagram)?;
    let mut out = BTreeSet::new();
    for j in candidates {
        if has_family(&graph, j)? {
            out.insert(j.clone());
        }
    }
    Ok(out)
}

/// [`measure`] restricted to the given subsets; zeros are kept out.
pub fn measure_within(tableau: &LeTableau, candidates: &[Subset]) -> Result<BTreeMap<Subset, Rational>, Error> {
    let network = GammaNetwork::new(tableau)?;
    let mut out = BTreeMap::new();
    for j in candidates {
        let sum = enumerate_families(network.graph(), j)?
            .iter()
            .fold(Rational::zero(), |acc, f| acc + network.family_weight(f));
        if !sum.is_zero() {
            out.insert(j.clone(), sum);
        }
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::combinatorics::{enumerate_le_diagrams, fixtures, Partition};
    use crate::rational::{int, ratio};

    fn s(text: &str) -> Subset {
        text.parse().unwrap()
    }

    fn single(entry: Rational) -> LeTableau {
        LeTableau::from_plus_entries(Partition::rectangle(1, 2), [(BoxCoord::new(1, 1), entry)]).unwrap()
    }

    #[test]
    fn single_box_measurement() {
        let t = single(ratio(3, 2));
        for p in [measure(&t).unwrap(), measure_det(&t).unwrap()] {
            assert_eq!(p.get(&s("1")), int(1));
            assert_eq!(p.get(&s("2")), ratio(3, 2));
        }
        let network = GammaNetwork::new(&t).unwrap();
        let fam = enumerate_families(network.graph(), &s("2")).unwrap();
        assert_eq!(fam.len(), 1);
        assert_eq!(network.family_weight(&fam[0]), ratio(3, 2));
        assert_eq!(path_weight(&network, &Route::Trivial), int(1));
        assert_eq!(network.boundary_face_weight(), ratio(2, 3));
    }

    #[test]
    fn worked_example_families() {
        let graph = GammaGraph::new(&fixtures::gr5_12_example()).unwrap();
        assert_eq!(enumerate_families(&graph, &s("1,2,7,9,10")).unwrap().len(), 1);
        let base = graph.labels().sources.clone();
        let trivial = enumerate_families(&graph, &base).unwrap();
        assert_eq!(trivial.len(), 1);
        assert!(trivial[0].routes().values().all(|r| *r == Route::Trivial));
        let m = matroid_of(graph.diagram()).unwrap();
        assert!(m.contains(&s("1,2,7,9,10")));
        assert!(!m.contains(&s("1,7,9,10,11")));
        assert!(m.contains(&base));
    }

    #[test]
    fn all_ones_counts_families() {
        let d = fixtures::gr5_12_example();
        let graph = GammaGraph::new(&d).unwrap();
        let p = measure(&d.with_all_ones()).unwrap();
        for (j, v) in p.coords().iter().take(40) {
            assert_eq!(*v, int(enumerate_families(&graph, j).unwrap().len() as i64));
        }
    }

    #[test]
    fn top_cell_of_gr24() {
        let graph = GammaGraph::new(&LeDiagram::top_cell(2, 4)).unwrap();
        assert_eq!(enumerate_families(&graph, &s("3,4")).unwrap().len(), 1);
        assert_eq!(enumerate_families(&graph, &s("1,4")).unwrap().len(), 1);
        assert_eq!(enumerate_families(&graph, &s("2,4")).unwrap().len(), 2);
        let p = measure(&graph.diagram().with_all_ones()).unwrap();
        let lhs = p.get(&s("1,3")) * p.get(&s("2,4"));
        assert_eq!(lhs, p.get(&s("1,2")) * p.get(&s("3,4")) + p.get(&s("1,4")) * p.get(&s("2,3")));
    }

    #[test]
    fn empty_shape_is_a_point() {
        let d = LeDiagram::from_plus(Partition::new(2, 4, vec![0, 0]).unwrap(), []).unwrap();
        let p = measure_det(&d.with_all_ones()).unwrap();
        assert_eq!(p.coords().len(), 1);
        assert_eq!(p.get(&s("3,4")), int(1));
    }

    #[test]
    fn measure_matches_determinant_and_matroid() {
        use rand::SeedableRng;
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(7);
        for n in 1..=6 {
            for k in 0..=n {
                for d in enumerate_le_diagrams(k, n, 12).unwrap() {
                    let t = d.random_tableau(&mut rng, 9);
                    let p = measure(&t).unwrap();
                    assert_eq!(p, measure_det(&t).unwrap());
                    assert_eq!(p, crate::matrix_io::plucker_from_matrix(&measurement_matrix(&t).unwrap()).unwrap());
                    let m = matroid_of(&d).unwrap();
                    assert_eq!(p.support().cloned().collect::<BTreeSet<_>>(), m);
                    assert_eq!(p.get(&d.shape().labels().sources), int(1));
                }
            }
        }
    }

    #[test]
    fn restricted_variants_agree() {
        let t = fixtures::gr5_12_example().with_all_ones();
        let full = measure(&t).unwrap();
        let some: Vec<Subset> = Subset::all(5, 12).step_by(37).collect();
        let part = measure_within(&t, &some).unwrap();
        for j in &some {
            assert_eq!(part.get(j).cloned().unwrap_or_else(Rational::zero), full.get(j));
        }
        let m = matroid_within(t.diagram(), &some).unwrap();
        assert_eq!(m, part.keys().cloned().collect());
    }
}
