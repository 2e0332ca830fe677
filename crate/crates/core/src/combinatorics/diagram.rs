use std::collections::BTreeMap;

use num_traits::{Signed, Zero};
use rand::Rng;

use super::{BoxCoord, Partition};
use crate::error::Error;
use crate::rational::Rational;

/// A box label in a Le-diagram.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Entry {
    Zero,
    Plus,
}

/// Checks the Le-property: no `Zero` has a `Plus` above it in its column and
/// a `Plus` to its left in its row.
///
/// A filling that misses boxes of `shape` or names boxes outside it is an
/// input error, not a `false`.
pub fn validate_le_diagram(
    shape: &Partition,
    filling: &BTreeMap<BoxCoord, Entry>,
) -> Result<bool, Error> {
    check_support(shape, filling.keys().copied())?;
    let plus = |b: BoxCoord| filling.get(&b) == Some(&Entry::Plus);
    Ok(first_violation(shape, plus).is_none())
}

fn check_support(
    shape: &Partition,
    keys: impl ExactSizeIterator<Item = BoxCoord> + Clone,
) -> Result<(), Error> {
    if let Some(b) = keys.clone().find(|b| !shape.contains(*b)) {
        return Err(Error::Malformed(format!("box {b} is outside the shape {shape}")));
    }
    if keys.len() != shape.size() {
        return Err(Error::Malformed(format!(
            "filling covers {} boxes but the shape {shape} has {}",
            keys.len(),
            shape.size()
        )));
    }
    Ok(())
}

pub(crate) fn first_violation(
    shape: &Partition,
    plus: impl Fn(BoxCoord) -> bool,
) -> Option<BoxCoord> {
    shape.boxes().into_iter().find(|&b| {
        !plus(b)
            && (1..b.row).any(|r| plus(BoxCoord::new(r, b.col)))
            && (b.col + 1..=shape.width()).any(|c| shape.contains(BoxCoord::new(b.row, c)) && plus(BoxCoord::new(b.row, c)))
    })
}

/// A partition with a `{0, +}` filling satisfying the Le-property.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct LeDiagram {
    shape: Partition,
    // dense k × (n-k) grid, row-major, `false` outside the shape
    plus: Vec<bool>,
}

impl LeDiagram {
    pub fn new(shape: Partition, filling: &BTreeMap<BoxCoord, Entry>) -> Result<Self, Error> {
        if !validate_le_diagram(&shape, filling)? {
            let plus = |b: BoxCoord| filling.get(&b) == Some(&Entry::Plus);
            let bad = first_violation(&shape, plus).expect("violation exists");
            return Err(Error::NotLeDiagram(bad.to_string()));
        }
        let mut plus = vec![false; shape.k() * shape.width()];
        for (b, e) in filling {
            plus[(b.row - 1) * shape.width() + b.col - 1] = *e == Entry::Plus;
        }
        Ok(LeDiagram { shape, plus })
    }

    /// Builds from the list of `+` boxes; every other box of `shape` is `0`.
    pub fn from_plus(
        shape: Partition,
        plus: impl IntoIterator<Item = BoxCoord>,
    ) -> Result<Self, Error> {
        let mut filling: BTreeMap<BoxCoord, Entry> =
            shape.boxes().into_iter().map(|b| (b, Entry::Zero)).collect();
        for b in plus {
            match filling.get_mut(&b) {
                Some(e) => *e = Entry::Plus,
                None => {
                    return Err(Error::Malformed(format!("box {b} is outside the shape {shape}")))
                }
            }
        }
        LeDiagram::new(shape, &filling)
    }

    pub(crate) fn from_dense_unchecked(shape: Partition, plus: Vec<bool>) -> Self {
        LeDiagram { shape, plus }
    }

    /// The all-`+` diagram on the full `k × (n-k)` rectangle.
    pub fn top_cell(k: usize, n: usize) -> Self {
        let shape = Partition::rectangle(k, n);
        let plus = vec![true; k * (n - k)];
        LeDiagram { shape, plus }
    }

    pub fn shape(&self) -> &Partition {
        &self.shape
    }

    pub fn k(&self) -> usize {
        self.shape.k()
    }

    pub fn n(&self) -> usize {
        self.shape.n()
    }

    pub fn is_plus(&self, b: BoxCoord) -> bool {
        self.shape.contains(b) && self.plus[(b.row - 1) * self.shape.width() + b.col - 1]
    }

    pub fn entry(&self, b: BoxCoord) -> Option<Entry> {
        self.shape
            .contains(b)
            .then(|| if self.is_plus(b) { Entry::Plus } else { Entry::Zero })
    }

    pub fn filling(&self) -> BTreeMap<BoxCoord, Entry> {
        self.shape
            .boxes()
            .into_iter()
            .map(|b| (b, self.entry(b).expect("box in shape")))
            .collect()
    }

    /// `+` boxes in reading order.
    pub fn plus_boxes(&self) -> Vec<BoxCoord> {
        self.shape.boxes().into_iter().filter(|&b| self.is_plus(b)).collect()
    }

    /// `|L|`, the number of `+` entries and dimension of the cell.
    pub fn dimension(&self) -> usize {
        self.plus.iter().filter(|&&p| p).count()
    }

    pub fn with_all_ones(&self) -> LeTableau {
        let one = Rational::from_integer(1.into());
        LeTableau {
            diagram: self.clone(),
            entries: self.plus_boxes().into_iter().map(|b| (b, one.clone())).collect(),
        }
    }

    /// A tableau with independent uniform entries `p/q`, `1 <= p, q <= max`.
    pub fn random_tableau<R: Rng + ?Sized>(&self, rng: &mut R, max: i64) -> LeTableau {
        let entries = self
            .plus_boxes()
            .into_iter()
            .map(|b| {
                let p = rng.gen_range(1..=max);
                let q = rng.gen_range(1..=max);
                (b, Rational::new(p.into(), q.into()))
            })
            .collect();
        LeTableau { diagram: self.clone(), entries }
    }
}

/// A Le-diagram whose `+` boxes carry positive rationals.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LeTableau {
    diagram: LeDiagram,
    entries: BTreeMap<BoxCoord, Rational>,
}

impl LeTableau {
    /// Builds from values on every box of `shape`; zero entries become `0`
    /// boxes. Negative values or a filling violating the Le-property fail.
    pub fn new(shape: Partition, values: &BTreeMap<BoxCoord, Rational>) -> Result<Self, Error> {
        if let Some((b, v)) = values.iter().find(|(_, v)| v.is_negative()) {
            return Err(Error::Malformed(format!("negative entry {v} at box {b}")));
        }
        let filling = values
            .iter()
            .map(|(b, v)| (*b, if v.is_zero() { Entry::Zero } else { Entry::Plus }))
            .collect();
        let diagram = LeDiagram::new(shape, &filling)?;
        let entries = values
            .iter()
            .filter(|(_, v)| !v.is_zero())
            .map(|(b, v)| (*b, v.clone()))
            .collect();
        Ok(LeTableau { diagram, entries })
    }

    /// Builds from values on the `+` boxes only; other boxes are `0`.
    pub fn from_plus_entries(
        shape: Partition,
        positive: impl IntoIterator<Item = (BoxCoord, Rational)>,
    ) -> Result<Self, Error> {
        let mut values: BTreeMap<BoxCoord, Rational> =
            shape.boxes().into_iter().map(|b| (b, Rational::zero())).collect();
        for (b, v) in positive {
            match values.get_mut(&b) {
                Some(slot) => *slot = v,
                None => {
                    return Err(Error::Malformed(format!("box {b} is outside the shape {shape}")))
                }
            }
        }
        LeTableau::new(shape, &values)
    }

    pub fn diagram(&self) -> &LeDiagram {
        &self.diagram
    }

    /// `T_B`, zero on `0` boxes.
    pub fn entry(&self, b: BoxCoord) -> Rational {
        self.entries.get(&b).cloned().unwrap_or_else(Rational::zero)
    }

    /// Positive entries keyed by their `+` box.
    pub fn entries(&self) -> &BTreeMap<BoxCoord, Rational> {
        &self.entries
    }
}
