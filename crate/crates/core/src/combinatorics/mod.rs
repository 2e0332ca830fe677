//! Partitions, subsets and Le-diagrams.

mod diagram;
mod enumerate;
mod partition;
mod subset;

pub use diagram::{validate_le_diagram, Entry, LeDiagram, LeTableau};
pub(crate) use diagram::first_violation;
pub use enumerate::{enumerate_le_diagrams, LeDiagrams, DEFAULT_MAX_N};
pub use partition::{base_from_shape, shape_from_base, BoundaryLabels, BoxCoord, Partition};
pub use subset::{KSubsets, Subset};

/// Worked examples used by tests across the crate.
#[doc(hidden)]
pub mod fixtures {
    use super::*;

    /// The Le-diagram of shape `(7,7,7,6,4)` in `Gr(5,12)`.
    pub fn gr5_12_example() -> LeDiagram {
        let shape = Partition::new(5, 12, vec![7, 7, 7, 6, 4]).unwrap();
        let plus = [
            (1, 7), (2, 4), (3, 6), (3, 4), (3, 3), (3, 1), (4, 5),
            (4, 4), (4, 3), (5, 7), (5, 6), (5, 5), (5, 4),
        ];
        LeDiagram::from_plus(shape, plus.map(|(r, c)| BoxCoord::new(r, c))).unwrap()
    }
}
