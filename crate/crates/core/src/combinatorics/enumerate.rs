use super::{shape_from_base, LeDiagram, Partition, Subset};
use crate::error::Error;

/// Default ceiling on `n` for exhaustive enumeration.
pub const DEFAULT_MAX_N: usize = 12;

/// Streams every Le-diagram inside the `k × (n-k)` rectangle exactly once.
///
/// Shapes appear in lexicographic order of their source sets `I`; within a
/// shape, fillings appear in increasing binary order with boxes read in
/// reading order and the first box most significant (`0 < +`).
pub fn enumerate_le_diagrams(k: usize, n: usize, max_n: usize) -> Result<LeDiagrams, Error> {
    if k > n {
        return Err(Error::Malformed(format!("k = {k} exceeds n = {n}")));
    }
    if n > max_n {
        return Err(Error::GuardExceeded { n, limit: max_n });
    }
    Ok(LeDiagrams { k, n, bases: Subset::all(k, n), current: None })
}

pub struct LeDiagrams {
    k: usize,
    n: usize,
    bases: super::subset::KSubsets,
    current: Option<FillingOdometer>,
}

impl Iterator for LeDiagrams {
    type Item = LeDiagram;

    fn next(&mut self) -> Option<LeDiagram> {
        loop {
            if let Some(odometer) = self.current.as_mut() {
                if let Some(d) = odometer.next() {
                    return Some(d);
                }
            }
            let base = self.bases.next()?;
            let shape = shape_from_base(&base, self.k, self.n).expect("valid base");
            self.current = Some(FillingOdometer::new(shape));
        }
    }
}

/// Binary-order successor walk over the Le-fillings of one shape.
struct FillingOdometer {
    shape: Partition,
    boxes: Vec<super::BoxCoord>,
    // for each box index: indices of the boxes above it and to its left
    above: Vec<Vec<usize>>,
    left: Vec<Vec<usize>>,
    bits: Vec<bool>,
    started: bool,
    done: bool,
}

impl FillingOdometer {
    fn new(shape: Partition) -> Self {
        let boxes = shape.boxes();
        let index = |r: usize, c: usize| boxes.iter().position(|b| b.row == r && b.col == c);
        let above = boxes
            .iter()
            .map(|b| (1..b.row).filter_map(|r| index(r, b.col)).collect())
            .collect();
        let left = boxes
            .iter()
            .map(|b| (b.col + 1..=shape.width()).filter_map(|c| index(b.row, c)).collect())
            .collect();
        let bits = vec![false; boxes.len()];
        FillingOdometer { shape, boxes, above, left, bits, started: false, done: false }
    }

    fn zero_allowed(&self, i: usize) -> bool {
        !(self.above[i].iter().any(|&j| self.bits[j]) && self.left[i].iter().any(|&j| self.bits[j]))
    }

    // Boxes from `start` on take their smallest admissible value.
    fn complete_from(&mut self, start: usize) {
        for i in start..self.bits.len() {
            self.bits[i] = false;
            self.bits[i] = !self.zero_allowed(i);
        }
    }

    fn emit(&self) -> LeDiagram {
        let width = self.shape.width();
        let mut dense = vec![false; self.shape.k() * width];
        for (b, &bit) in self.boxes.iter().zip(&self.bits) {
            dense[(b.row - 1) * width + b.col - 1] = bit;
        }
        LeDiagram::from_dense_unchecked(self.shape.clone(), dense)
    }
}

impl Iterator for FillingOdometer {
    type Item = LeDiagram;

    fn next(&mut self) -> Option<LeDiagram> {
        if self.done {
            return None;
        }
        if !self.started {
            self.started = true;
            self.complete_from(0);
            return Some(self.emit());
        }
        // A `+` never invalidates earlier boxes, so flipping the last `0`
        // gives the next admissible prefix.
        match self.bits.iter().rposition(|&b| !b) {
            None => {
                self.done = true;
                None
            }
            Some(p) => {
                self.bits[p] = true;
                self.complete_from(p + 1);
                Some(self.emit())
            }
        }
    }
}
