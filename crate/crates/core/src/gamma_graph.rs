//! The Γ-graph of a Le-diagram.
//!
//! Everything is computed from box coordinates. Row-line `r` is the top edge
//! of row `r`; column-line `c` is the left edge of column `c`. The hook of a
//! `+` box `(r, c)` runs west along row-line `r` from source `i_r` to the
//! box's north-west corner, then south along column-line `c` to sink `j_c`.
//! Where a row-line segment crosses a column-line segment there is a vertex;
//! edges point west or south.

use std::collections::BTreeMap;
use std::fmt::Write as _;


use crate::combinatorics::{BoundaryLabels, BoxCoord, LeDiagram, Partition};
use crate::error::Error;
use crate::inversion::lower_boundary;

/// Largest `n + k(n-k)` the bitset-backed graph supports.
pub const MAX_VERTICES: usize = 128;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Vertex {
    /// Boundary source at the east end of the given row.
    Source(usize),
    /// Crossing at the north-west corner of the given box.
    Crossing(BoxCoord),
    /// Boundary sink at the bottom of the given column.
    Sink(usize),
}

/// A set of vertices of one graph.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Hash)]
pub struct VertexSet(pub(crate) u128);

impl VertexSet {
    pub fn contains(self, id: usize) -> bool {
        self.0 >> id & 1 == 1
    }

    pub fn insert(&mut self, id: usize) {
        self.0 |= 1 << id;
    }

    pub fn union(self, other: VertexSet) -> VertexSet {
        VertexSet(self.0 | other.0)
    }

    pub fn is_disjoint(self, other: VertexSet) -> bool {
        self.0 & other.0 == 0
    }
}

/// A directed source-to-sink path, as its vertex sequence.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Path {
    vertices: Vec<Vertex>,
}

impl Path {
    pub fn vertices(&self) -> &[Vertex] {
        &self.vertices
    }

    pub fn source_row(&self) -> usize {
        match self.vertices[0] {
            Vertex::Source(r) => r,
            _ => unreachable!("paths start at a source"),
        }
    }

    pub fn sink_col(&self) -> usize {
        match self.vertices.last() {
            Some(Vertex::Sink(c)) => *c,
            _ => unreachable!("paths end at a sink"),
        }
    }

    /// Boxes `(r, c)` where the path turns from west to south.
    pub fn outer_corners(&self) -> Vec<BoxCoord> {
        self.turns(true)
    }

    /// Boxes `(r, c)` where the path turns from south to west.
    pub fn inner_corners(&self) -> Vec<BoxCoord> {
        self.turns(false)
    }

    fn turns(&self, west_then_south: bool) -> Vec<BoxCoord> {
        let horizontal = |a: &Vertex, b: &Vertex| match (a, b) {
            (Vertex::Source(_), _) => true,
            (Vertex::Crossing(x), Vertex::Crossing(y)) => x.row == y.row,
            _ => false,
        };
        self.vertices
            .windows(3)
            .filter_map(|w| {
                let before = horizontal(&w[0], &w[1]);
                let after = horizontal(&w[1], &w[2]);
                match w[1] {
                    Vertex::Crossing(b) if before == west_then_south && after != west_then_south => {
                        Some(b)
                    }
                    _ => None,
                }
            })
            .collect()
    }
}

/// A bounded face of the Γ-graph with its north-west corner box.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Face {
    pub corner: BoxCoord,
    /// Member boxes in reading order; always contains `corner`.
    pub boxes: Vec<BoxCoord>,
}

#[derive(Clone, Debug)]
pub struct GammaGraph {
    diagram: LeDiagram,
    labels: BoundaryLabels,
    plus: Vec<BoxCoord>,
    // dense grid lookups, row-major over the k × (n-k) rectangle
    plus_index: Vec<Option<usize>>,
    box_face: Vec<Option<usize>>,
    // westmost `+` column of each row (0 if none), topmost `+` row of each column (0 if none)
    row_reach: Vec<usize>,
    col_top: Vec<usize>,
    // `below[ρ][γ]`: `+` boxes in column γ at rows ≥ ρ, as a bitmask over `plus`
    below: Vec<Vec<u128>>,
    faces: Vec<Face>,
}

impl GammaGraph {
    pub fn new(diagram: &LeDiagram) -> Result<Self, Error> {
        let shape = diagram.shape();
        let (k, n, width) = (shape.k(), shape.n(), shape.width());
        if n + k * width > MAX_VERTICES {
            return Err(Error::Malformed(format!(
                "Γ-graph of Gr({k},{n}) exceeds {MAX_VERTICES} vertices"
            )));
        }
        let plus = diagram.plus_boxes();
        let mut plus_index = vec![None; k * width];
        for (i, b) in plus.iter().enumerate() {
            plus_index[(b.row - 1) * width + b.col - 1] = Some(i);
        }
        let mut row_reach = vec![0; k];
        let mut col_top = vec![0; width];
        for b in &plus {
            row_reach[b.row - 1] = row_reach[b.row - 1].max(b.col);
            if col_top[b.col - 1] == 0 {
                col_top[b.col - 1] = b.row;
            }
        }
        let mut below = vec![vec![0u128; width + 1]; k + 2];
        for rho in (1..=k).rev() {
            for gamma in 1..=width {
                let mut m = below[rho + 1][gamma];
                if let Some(i) = plus_index[(rho - 1) * width + gamma - 1] {
                    m |= 1 << i;
                }
                below[rho][gamma] = m;
            }
        }
        let mut graph = GammaGraph {
            diagram: diagram.clone(),
            labels: shape.labels(),
            plus,
            plus_index,
            box_face: vec![None; k * width],
            row_reach,
            col_top,
            below,
            faces: Vec::new(),
        };
        graph.build_faces()?;
        Ok(graph)
    }

    pub fn diagram(&self) -> &LeDiagram {
        &self.diagram
    }

    pub fn shape(&self) -> &Partition {
        self.diagram.shape()
    }

    pub fn labels(&self) -> &BoundaryLabels {
        &self.labels
    }

    /// The hooks of the graph: its `+` boxes in reading order.
    pub fn hooks(&self) -> &[BoxCoord] {
        &self.plus
    }

    pub fn plus_index(&self, b: BoxCoord) -> Option<usize> {
        if !self.shape().contains(b) {
            return None;
        }
        self.plus_index[self.grid(b)]
    }

    pub fn is_plus(&self, b: BoxCoord) -> bool {
        self.plus_index(b).is_some()
    }

    /// `H(B)`: boxes weakly below and weakly right of `b`.
    pub fn hook_cover(&self, b: BoxCoord) -> Vec<BoxCoord> {
        self.shape().boxes().into_iter().filter(|&d| b.covers(d)).collect()
    }

    pub fn faces(&self) -> &[Face] {
        &self.faces
    }

    pub fn face_of_corner(&self, corner: BoxCoord) -> Option<&Face> {
        self.plus_index(corner).map(|i| &self.faces[i])
    }

    /// Corner of the bounded face containing `b`, or `None` for the boundary face.
    pub fn face_containing(&self, b: BoxCoord) -> Option<BoxCoord> {
        self.box_face[self.grid(b)].map(|i| self.faces[i].corner)
    }

    fn grid(&self, b: BoxCoord) -> usize {
        (b.row - 1) * self.shape().width() + b.col - 1
    }

    pub fn vertex_id(&self, v: Vertex) -> usize {
        let shape = self.shape();
        match v {
            Vertex::Source(r) => r - 1,
            Vertex::Sink(c) => shape.k() + c - 1,
            Vertex::Crossing(b) => shape.n() + self.grid(b),
        }
    }

    pub fn vertex_set(&self, vertices: &[Vertex]) -> VertexSet {
        let mut set = VertexSet::default();
        for &v in vertices {
            set.insert(self.vertex_id(v));
        }
        set
    }

    pub fn is_crossing(&self, b: BoxCoord) -> bool {
        self.shape().contains(b)
            && self.row_reach[b.row - 1] >= b.col
            && self.col_top[b.col - 1] != 0
            && self.col_top[b.col - 1] <= b.row
    }

    /// Next vertex along a west-going edge.
    pub fn west(&self, v: Vertex) -> Option<Vertex> {
        let (row, from) = match v {
            Vertex::Source(r) => (r, *self.shape().row_cols(r).start()),
            Vertex::Crossing(b) => (b.row, b.col + 1),
            Vertex::Sink(_) => return None,
        };
        (from..=self.row_reach[row - 1])
            .map(|c| BoxCoord::new(row, c))
            .find(|&b| self.is_crossing(b))
            .map(Vertex::Crossing)
    }

    /// Next vertex along a south-going edge.
    pub fn south(&self, v: Vertex) -> Option<Vertex> {
        match v {
            Vertex::Crossing(b) => Some(
                (b.row + 1..=self.shape().col_len(b.col))
                    .map(|r| BoxCoord::new(r, b.col))
                    .find(|&d| self.is_crossing(d))
                    .map_or(Vertex::Sink(b.col), Vertex::Crossing),
            ),
            _ => None,
        }
    }

    /// Boundary label of a source or sink vertex.
    pub fn label(&self, v: Vertex) -> Option<usize> {
        match v {
            Vertex::Source(r) => Some(self.labels.source(r)),
            Vertex::Sink(c) => Some(self.labels.sink(c)),
            Vertex::Crossing(_) => None,
        }
    }

    pub(crate) fn make_path(&self, vertices: Vec<Vertex>) -> Path {
        Path { vertices }
    }

    /// `(row-line, column)` for every column the path crosses horizontally.
    pub fn crossed_columns(&self, path: &Path) -> Vec<(usize, usize)> {
        let mut out = Vec::new();
        let mut prev = path.vertices[0];
        for &v in &path.vertices[1..] {
            match (prev, v) {
                (Vertex::Source(r), Vertex::Crossing(b)) => {
                    out.extend(self.shape().row_cols(r).take_while(|&c| c <= b.col).map(|c| (r, c)));
                }
                (Vertex::Crossing(a), Vertex::Crossing(b)) if a.row == b.row => {
                    out.extend((a.col + 1..=b.col).map(|c| (a.row, c)));
                }
                _ => {}
            }
            prev = v;
        }
        out
    }

    /// `+` boxes lying south-east of the path, as a bitmask over [`hooks`](Self::hooks).
    pub fn southeast_mask(&self, path: &Path) -> u128 {
        self.crossed_columns(path)
            .into_iter()
            .fold(0, |m, (rho, gamma)| m | self.below[rho][gamma])
    }

    pub fn southeast_plus(&self, path: &Path) -> Vec<BoxCoord> {
        self.mask_boxes(self.southeast_mask(path))
    }

    pub fn mask_boxes(&self, mask: u128) -> Vec<BoxCoord> {
        self.plus
            .iter()
            .enumerate()
            .filter(|(i, _)| mask >> i & 1 == 1)
            .map(|(_, b)| *b)
            .collect()
    }

    /// Every path from the given source, in west-first depth-first order,
    /// restricted to `allowed` vertices and avoiding `blocked`.
    pub fn paths_from(
        &self,
        source_row: usize,
        allowed: &dyn Fn(Vertex) -> bool,
        blocked: VertexSet,
        target_sink: Option<usize>,
        limit: usize,
    ) -> Vec<Path> {
        let start = Vertex::Source(source_row);
        let mut out = Vec::new();
        if !allowed(start) || blocked.contains(self.vertex_id(start)) {
            return out;
        }
        let mut stack = vec![start];
        self.extend_paths(&mut stack, allowed, blocked, target_sink, limit, &mut out);
        out
    }

    fn extend_paths(
        &self,
        stack: &mut Vec<Vertex>,
        allowed: &dyn Fn(Vertex) -> bool,
        blocked: VertexSet,
        target_sink: Option<usize>,
        limit: usize,
        out: &mut Vec<Path>,
    ) {
        let v = *stack.last().expect("non-empty");
        if let Vertex::Sink(c) = v {
            if target_sink.is_none_or(|t| t == c) {
                out.push(Path { vertices: stack.clone() });
            }
            return;
        }
        for next in [self.west(v), self.south(v)].into_iter().flatten() {
            if out.len() >= limit {
                return;
            }
            // paths never move east, so a sink column below the target is unreachable
            let col = match next {
                Vertex::Crossing(b) => b.col,
                Vertex::Sink(c) => c,
                Vertex::Source(_) => unreachable!(),
            };
            if target_sink.is_some_and(|t| col > t) {
                continue;
            }
            if !allowed(next) || blocked.contains(self.vertex_id(next)) {
                continue;
            }
            stack.push(next);
            self.extend_paths(stack, allowed, blocked, target_sink, limit, out);
            stack.pop();
        }
    }

    /// The north-west-most path from a source within `allowed`, avoiding `blocked`.
    pub fn northwest_path(
        &self,
        source_row: usize,
        allowed: &dyn Fn(Vertex) -> bool,
        blocked: VertexSet,
    ) -> Option<Path> {
        self.paths_from(source_row, allowed, blocked, None, 1).pop()
    }

    fn separated_right(&self, b: BoxCoord) -> bool {
        // between (r, c) and (r, c-1) lies column-line c-1
        let top = self.col_top[b.col - 2];
        top != 0 && top <= b.row
    }

    fn separated_below(&self, b: BoxCoord) -> bool {
        // between (r, c) and (r+1, c) lies row-line r+1
        self.row_reach[b.row] >= b.col
    }

    fn build_faces(&mut self) -> Result<(), Error> {
        let shape = self.shape().clone();
        let width = shape.width();
        let boxes = shape.boxes();
        let mut component = vec![usize::MAX; shape.k() * width];
        let mut regions: Vec<Vec<BoxCoord>> = Vec::new();
        let mut touches_boundary: Vec<bool> = Vec::new();
        for &start in &boxes {
            if component[self.grid(start)] != usize::MAX {
                continue;
            }
            let id = regions.len();
            let mut members = Vec::new();
            let mut boundary = false;
            let mut todo = vec![start];
            component[self.grid(start)] = id;
            while let Some(b) = todo.pop() {
                members.push(b);
                if b.row == 1 && self.row_reach[0] < b.col {
                    boundary = true;
                }
                if b.col == width && !(self.col_top[width - 1] != 0 && self.col_top[width - 1] <= b.row) {
                    boundary = true;
                }
                let mut neighbours = Vec::with_capacity(4);
                if b.col > 1 && shape.contains(BoxCoord::new(b.row, b.col - 1)) && !self.separated_right(b) {
                    neighbours.push(BoxCoord::new(b.row, b.col - 1));
                }
                let left = BoxCoord::new(b.row, b.col + 1);
                if shape.contains(left) && !self.separated_right(left) {
                    neighbours.push(left);
                }
                let down = BoxCoord::new(b.row + 1, b.col);
                if shape.contains(down) && !self.separated_below(b) {
                    neighbours.push(down);
                }
                if b.row > 1 {
                    let up = BoxCoord::new(b.row - 1, b.col);
                    if !self.separated_below(up) {
                        neighbours.push(up);
                    }
                }
                for d in neighbours {
                    let g = self.grid(d);
                    if component[g] == usize::MAX {
                        component[g] = id;
                        todo.push(d);
                    }
                }
            }
            members.sort();
            regions.push(members);
            touches_boundary.push(boundary);
        }

        let mut faces: Vec<Option<Face>> = vec![None; self.plus.len()];
        for (id, members) in regions.into_iter().enumerate() {
            let corners: Vec<BoxCoord> = members.iter().copied().filter(|&b| self.is_plus(b)).collect();
            match (touches_boundary[id], corners.as_slice()) {
                (true, []) => {}
                (false, [corner]) if members.iter().all(|&d| corner.covers(d)) => {
                    let i = self.plus_index(*corner).expect("plus box");
                    for &d in &members {
                        let g = self.grid(d);
                        self.box_face[g] = Some(i);
                    }
                    faces[i] = Some(Face { corner: *corner, boxes: members });
                }
                _ => {
                    return Err(Error::Internal(format!(
                        "face region {members:?} does not have a unique north-west + corner"
                    )))
                }
            }
        }
        self.faces = faces
            .into_iter()
            .map(|f| f.ok_or_else(|| Error::Internal("a + box bounds no face".into())))
            .collect::<Result<_, _>>()?;
        Ok(())
    }

    /// Text grid: `+` marks a face corner, a letter names the face a box
    /// belongs to (`a` is the first corner in reading order), `.` is the
    /// boundary face.
    pub fn dump(&self) -> String {
        let shape = self.shape();
        let name = |i: usize| {
            let letters = b"abcdefghijklmnopqrstuvwxyzABCDEFGHIJKLMNOPQRSTUVWXYZ";
            letters.get(i).map_or('#', |&c| c as char)
        };
        let mut out = String::new();
        let _ = writeln!(out, "sources {}  sinks {}", self.labels.sources, self.labels.sinks);
        for r in 1..=shape.k() {
            let mut line = String::new();
            for c in (1..=shape.width()).rev() {
                let b = BoxCoord::new(r, c);
                let cell = if !shape.contains(b) {
                    "  ".to_string()
                } else if let Some(i) = self.plus_index(b) {
                    format!("+{}", name(i))
                } else {
                    match self.box_face[self.grid(b)] {
                        Some(i) => format!(" {}", name(i)),
                        None => " .".to_string(),
                    }
                };
                line.push_str(&cell);
            }
            let _ = writeln!(out, "{}  <- {}", line.trim_end(), self.labels.source(r));
        }
        out
    }
}

/// Construct the Γ-graph of a Le-diagram.
pub fn build_graph(diagram: &LeDiagram) -> Result<GammaGraph, Error> {
    GammaGraph::new(diagram)
}

/// Faces ordered by `F1 ≤ F2` iff the `F1` hook lies weakly north-west of the
/// `F2` hook.
#[derive(Clone, Debug)]
pub struct FacePoset {
    elements: Vec<BoxCoord>,
    covers: Vec<(usize, usize)>,
}

impl FacePoset {
    /// Face corners in reading order, which is a linear extension of the order.
    pub fn elements(&self) -> &[BoxCoord] {
        &self.elements
    }

    pub fn index(&self, corner: BoxCoord) -> Option<usize> {
        self.elements.iter().position(|&b| b == corner)
    }

    pub fn leq(&self, a: usize, b: usize) -> bool {
        self.elements[a].covers(self.elements[b])
    }

    /// Covering pairs `(lower, upper)` of the Hasse diagram.
    pub fn covers(&self) -> &[(usize, usize)] {
        &self.covers
    }

    pub fn to_json(&self) -> serde_json::Value {
        serde_json::json!({
            "faces": self.elements.iter().map(|b| [b.row, b.col]).collect::<Vec<_>>(),
            "covers": self.covers.iter().map(|&(a, b)| [a, b]).collect::<Vec<_>>(),
        })
    }
}

pub fn face_poset(graph: &GammaGraph) -> FacePoset {
    let elements = graph.hooks().to_vec();
    let m = elements.len();
    let leq = |a: usize, b: usize| elements[a].covers(elements[b]);
    let mut covers = Vec::new();
    for a in 0..m {
        for b in 0..m {
            if a != b && leq(a, b) && !(0..m).any(|z| z != a && z != b && leq(a, z) && leq(z, b)) {
                covers.push((a, b));
            }
        }
    }
    FacePoset { elements, covers }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum MobiusMethod {
    /// Read off the corners of the south-east boundary of the lower face.
    ClosedForm,
    /// `μ(x,x) = 1`, `μ(x,y) = -Σ_{x ≤ z < y} μ(x,z)`.
    Recursive,
}

/// Möbius function values on all pairs of faces (0 off the order relation).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MobiusTable {
    elements: Vec<BoxCoord>,
    values: Vec<Vec<i64>>,
}

impl MobiusTable {
    pub fn get(&self, lower: BoxCoord, upper: BoxCoord) -> i64 {
        let find = |b| self.elements.iter().position(|&e| e == b);
        match (find(lower), find(upper)) {
            (Some(a), Some(b)) => self.values[a][b],
            _ => 0,
        }
    }

    pub fn by_index(&self, a: usize, b: usize) -> i64 {
        self.values[a][b]
    }

    pub fn to_map(&self) -> BTreeMap<(BoxCoord, BoxCoord), i64> {
        let mut out = BTreeMap::new();
        for (a, &x) in self.elements.iter().enumerate() {
            for (b, &y) in self.elements.iter().enumerate() {
                out.insert((x, y), self.values[a][b]);
            }
        }
        out
    }
}

pub fn mobius(graph: &GammaGraph, poset: &FacePoset, method: MobiusMethod) -> MobiusTable {
    let m = poset.elements.len();
    let mut values = vec![vec![0i64; m]; m];
    match method {
        MobiusMethod::Recursive => {
            for a in 0..m {
                values[a][a] = 1;
                for b in a + 1..m {
                    if poset.leq(a, b) {
                        let s: i64 = (a..b).filter(|&z| poset.leq(a, z) && poset.leq(z, b)).map(|z| values[a][z]).sum();
                        values[a][b] = -s;
                    }
                }
            }
        }
        MobiusMethod::ClosedForm => {
            for a in 0..m {
                values[a][a] = 1;
                let lower = lower_boundary(graph, poset.elements[a]);
                for (b, &y) in poset.elements.iter().enumerate() {
                    if lower.outer().contains(&y) {
                        values[a][b] = -1;
                    } else if lower.inner().contains(&y) {
                        values[a][b] = 1;
                    }
                }
            }
        }
    }
    MobiusTable { elements: poset.elements.clone(), values }
}
