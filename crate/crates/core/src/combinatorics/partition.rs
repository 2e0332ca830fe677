use std::cmp::Ordering;
use std::fmt;

use super::Subset;
use crate::error::Error;

/// A box of a Young diagram: `row` counts from the top, `col` counts from the
/// right edge of the `k × (n-k)` rectangle, both 1-based.
///
/// Boxes are ordered in reading order: top to bottom, and left to right
/// within a row (that is, by decreasing `col`).
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct BoxCoord {
    pub row: usize,
    pub col: usize,
}

impl BoxCoord {
    pub const fn new(row: usize, col: usize) -> Self {
        BoxCoord { row, col }
    }

    /// `other ∈ H(self)`: weakly below and weakly right of `self`.
    pub fn covers(self, other: BoxCoord) -> bool {
        other.row >= self.row && other.col <= self.col
    }

    /// `other` is strictly below and strictly right of `self`.
    pub fn strictly_covers(self, other: BoxCoord) -> bool {
        other.row > self.row && other.col < self.col
    }
}

impl Ord for BoxCoord {
    fn cmp(&self, other: &Self) -> Ordering {
        self.row.cmp(&other.row).then(other.col.cmp(&self.col))
    }
}

impl PartialOrd for BoxCoord {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Display for BoxCoord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({},{})", self.row, self.col)
    }
}

/// A partition inside the `k × (n-k)` rectangle, empty rows included.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Partition {
    k: usize,
    n: usize,
    rows: Vec<usize>,
}

impl Partition {
    pub fn new(k: usize, n: usize, rows: Vec<usize>) -> Result<Self, Error> {
        if k > n {
            return Err(Error::Malformed(format!("k = {k} exceeds n = {n}")));
        }
        if rows.len() != k {
            return Err(Error::Malformed(format!(
                "expected {k} row lengths, got {}",
                rows.len()
            )));
        }
        if rows.windows(2).any(|w| w[0] < w[1]) {
            return Err(Error::Malformed(format!("rows {rows:?} are not weakly decreasing")));
        }
        if rows.first().is_some_and(|&r| r > n - k) {
            return Err(Error::Malformed(format!("rows {rows:?} exceed width {}", n - k)));
        }
        Ok(Partition { k, n, rows })
    }

    pub fn rectangle(k: usize, n: usize) -> Self {
        Partition { k, n, rows: vec![n - k; k] }
    }

    pub fn k(&self) -> usize {
        self.k
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn width(&self) -> usize {
        self.n - self.k
    }

    pub fn rows(&self) -> &[usize] {
        &self.rows
    }

    pub fn row_len(&self, row: usize) -> usize {
        self.rows[row - 1]
    }

    /// Number of boxes in column `col` (counted from the right).
    pub fn col_len(&self, col: usize) -> usize {
        let needed = self.width() + 1 - col;
        self.rows.iter().take_while(|&&len| len >= needed).count()
    }

    pub fn size(&self) -> usize {
        self.rows.iter().sum()
    }

    pub fn contains(&self, b: BoxCoord) -> bool {
        b.row >= 1
            && b.row <= self.k
            && b.col >= 1
            && b.col <= self.width()
            && b.col + self.rows[b.row - 1] > self.width()
    }

    /// Columns occupied by `row`, from the right-most box leftwards.
    pub fn row_cols(&self, row: usize) -> std::ops::RangeInclusive<usize> {
        (self.width() + 1 - self.rows[row - 1])..=self.width()
    }

    /// All boxes in reading order.
    pub fn boxes(&self) -> Vec<BoxCoord> {
        (1..=self.k)
            .flat_map(|r| self.row_cols(r).rev().map(move |c| BoxCoord::new(r, c)))
            .collect()
    }

    /// The source/sink labels of the boundary path.
    pub fn labels(&self) -> BoundaryLabels {
        base_from_shape(self)
    }
}

impl fmt::Display for Partition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.rows.iter().map(|x| x.to_string()).collect();
        write!(f, "({})", parts.join(","))
    }
}

/// Labels of the boundary path of a shape: row `r` ends at source `i_r`,
/// column `c` ends at sink `j_c`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BoundaryLabels {
    pub sources: Subset,
    pub sinks: Subset,
}

impl BoundaryLabels {
    /// `i_r`.
    pub fn source(&self, row: usize) -> usize {
        self.sources.elements()[row - 1]
    }

    /// `j_c`.
    pub fn sink(&self, col: usize) -> usize {
        self.sinks.elements()[col - 1]
    }

    /// Row whose source carries `label`.
    pub fn source_row(&self, label: usize) -> Option<usize> {
        self.sources.elements().binary_search(&label).ok().map(|i| i + 1)
    }

    /// Column whose sink carries `label`.
    pub fn sink_col(&self, label: usize) -> Option<usize> {
        self.sinks.elements().binary_search(&label).ok().map(|i| i + 1)
    }
}

/// The shape with `λ_t = |{ j ∉ I : j > i_t }|`.
pub fn shape_from_base(base: &Subset, k: usize, n: usize) -> Result<Partition, Error> {
    if base.len() != k {
        return Err(Error::Malformed(format!("|I| = {} but k = {k}", base.len())));
    }
    if base.max_element().is_some_and(|m| m > n) {
        return Err(Error::Malformed(format!("{base} is not inside [{n}]")));
    }
    let rows = base
        .elements()
        .iter()
        .enumerate()
        // elements of [n] above i_t, minus the sources above i_t
        .map(|(t, &i)| (n - i) - (k - 1 - t))
        .collect();
    Partition::new(k, n, rows)
}

/// Walks the boundary path from the north-east corner, labelling south steps
/// as sources and west steps as sinks.
pub fn base_from_shape(shape: &Partition) -> BoundaryLabels {
    let (k, width) = (shape.k, shape.width());
    let sources = (1..=k).map(|r| r + width - shape.rows[r - 1]).collect();
    let sinks = (1..=width).map(|c| c + shape.col_len(c)).collect();
    BoundaryLabels {
        sources: Subset::from_sorted(sources),
        sinks: Subset::from_sorted(sinks),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn subset(s: &str) -> Subset {
        s.parse().unwrap()
    }

    #[test]
    fn worked_example_shape_and_labels() {
        let shape = shape_from_base(&subset("1,2,3,5,8"), 5, 12).unwrap();
        assert_eq!(shape.rows(), &[7, 7, 7, 6, 4]);
        let labels = base_from_shape(&shape);
        assert_eq!(labels.sources, subset("1,2,3,5,8"));
        assert_eq!(labels.sinks, subset("4,6,7,9,10,11,12"));
        assert_eq!(labels.source(2), 2);
        assert_eq!(labels.sink(6), 11);
        assert!(shape.contains(BoxCoord::new(5, 4)));
        assert!(!shape.contains(BoxCoord::new(5, 3)));
        assert!(shape.contains(BoxCoord::new(4, 2)));
        assert!(!shape.contains(BoxCoord::new(4, 1)));
    }

    #[test]
    fn extreme_bases() {
        let rect = shape_from_base(&subset("1,2,3"), 3, 7).unwrap();
        assert_eq!(rect, Partition::rectangle(3, 7));
        let empty = shape_from_base(&subset("5,6,7"), 3, 7).unwrap();
        assert_eq!(empty.rows(), &[0, 0, 0]);
        assert_eq!(base_from_shape(&empty).sources, subset("5,6,7"));
        assert_eq!(base_from_shape(&rect).sources, subset("1,2,3"));
        assert!(shape_from_base(&subset("1,2"), 3, 7).is_err());
    }

    #[test]
    fn malformed_partitions() {
        assert!(Partition::new(2, 4, vec![1, 2]).is_err());
        assert!(Partition::new(2, 4, vec![3, 0]).is_err());
        assert!(Partition::new(2, 4, vec![2]).is_err());
    }

    #[test]
    fn box_exists_iff_sink_exceeds_source() {
        let shape = Partition::new(4, 9, vec![5, 3, 3, 1]).unwrap();
        let labels = shape.labels();
        for r in 1..=4 {
            for c in 1..=5 {
                let b = BoxCoord::new(r, c);
                assert_eq!(shape.contains(b), labels.sink(c) > labels.source(r), "{b}");
            }
        }
    }

    proptest! {
        #[test]
        fn shape_base_bijection(n in 1usize..12, seed in any::<u64>()) {
            let k = (seed as usize) % (n + 1);
            let all: Vec<Subset> = Subset::all(k, n).collect();
            let base = &all[(seed as usize / 13) % all.len()];
            let shape = shape_from_base(base, k, n).unwrap();
            prop_assert_eq!(&base_from_shape(&shape).sources, base);
            prop_assert_eq!(shape_from_base(&base_from_shape(&shape).sources, k, n).unwrap(), shape);
        }
    }
}
