use std::fmt;
use std::str::FromStr;

use crate::error::Error;

/// A subset of `[n] = {1, ..., n}`, stored as a strictly increasing sequence.
///
/// The derived ordering compares the sorted sequences element by element,
/// which on subsets of equal size is the lexicographic order used for
/// Plücker indices.
#[derive(Clone, Debug, Default, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Subset(Vec<usize>);

impl Subset {
    pub fn new(mut elements: Vec<usize>) -> Result<Self, Error> {
        elements.sort_unstable();
        if elements.first() == Some(&0) {
            return Err(Error::Malformed("subset elements start at 1".into()));
        }
        if elements.windows(2).any(|w| w[0] == w[1]) {
            return Err(Error::Malformed(format!("repeated element in {elements:?}")));
        }
        Ok(Subset(elements))
    }

    /// Builds from an already strictly increasing sequence.
    pub(crate) fn from_sorted(elements: Vec<usize>) -> Self {
        debug_assert!(elements.windows(2).all(|w| w[0] < w[1]));
        Subset(elements)
    }

    pub fn elements(&self) -> &[usize] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn contains(&self, x: usize) -> bool {
        self.0.binary_search(&x).is_ok()
    }

    pub fn max_element(&self) -> Option<usize> {
        self.0.last().copied()
    }

    pub fn complement(&self, n: usize) -> Subset {
        Subset((1..=n).filter(|x| !self.contains(*x)).collect())
    }

    /// `(self \ {remove}) ∪ {insert}`.
    pub fn swap(&self, remove: usize, insert: usize) -> Subset {
        let mut out: Vec<usize> = self.0.iter().copied().filter(|&x| x != remove).collect();
        if let Err(pos) = out.binary_search(&insert) {
            out.insert(pos, insert);
        }
        Subset(out)
    }

    /// Bitmask with bit `x - 1` set for every element `x`; requires `n <= 64`.
    pub fn mask(&self) -> u64 {
        self.0.iter().fold(0u64, |m, &x| m | (1u64 << (x - 1)))
    }

    pub fn from_mask(mask: u64) -> Subset {
        Subset((0..64).filter(|b| mask >> b & 1 == 1).map(|b| b + 1).collect())
    }

    /// All `k`-subsets of `[n]` in lexicographic order.
    pub fn all(k: usize, n: usize) -> KSubsets {
        KSubsets {
            n,
            current: if k <= n { Some((1..=k).collect()) } else { None },
        }
    }
}

impl fmt::Display for Subset {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.0.iter().map(|x| x.to_string()).collect();
        write!(f, "{}", parts.join(","))
    }
}

impl FromStr for Subset {
    type Err = Error;

    /// Parses the comma-separated key form `"1,3,5"`; the empty string is `∅`.
    fn from_str(s: &str) -> Result<Self, Error> {
        let s = s.trim();
        if s.is_empty() {
            return Ok(Subset::default());
        }
        let elements = s
            .split(',')
            .map(|t| {
                t.trim()
                    .parse::<usize>()
                    .map_err(|_| Error::Malformed(format!("bad subset key {s:?}")))
            })
            .collect::<Result<Vec<_>, _>>()?;
        Subset::new(elements)
    }
}

/// Lexicographic stream of the `k`-subsets of `[n]`.
pub struct KSubsets {
    n: usize,
    current: Option<Vec<usize>>,
}

impl Iterator for KSubsets {
    type Item = Subset;

    fn next(&mut self) -> Option<Subset> {
        let out = self.current.take()?;
        let k = out.len();
        let mut next = out.clone();
        let mut i = k;
        while i > 0 {
            i -= 1;
            if next[i] < self.n - (k - 1 - i) {
                next[i] += 1;
                for j in i + 1..k {
                    next[j] = next[j - 1] + 1;
                }
                self.current = Some(next);
                break;
            }
        }
        Some(Subset(out))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn lex_order_matches_first_difference() {
        let a: Subset = "1,4,5".parse().unwrap();
        let b: Subset = "2,3,4".parse().unwrap();
        let c: Subset = "1,3,9".parse().unwrap();
        assert!(a < b);
        assert!(c < a);
    }

    #[test]
    fn k_subsets_are_lex_sorted_and_complete() {
        let all: Vec<Subset> = Subset::all(3, 6).collect();
        assert_eq!(all.len(), 20);
        assert!(all.windows(2).all(|w| w[0] < w[1]));
        assert_eq!(Subset::all(0, 4).count(), 1);
        assert_eq!(Subset::all(5, 4).count(), 0);
    }

    #[test]
    fn parse_and_swap() {
        let s: Subset = "1,2,7,9,10".parse().unwrap();
        assert_eq!(s.swap(2, 11).to_string(), "1,7,9,10,11");
        assert!("1,1".parse::<Subset>().is_err());
        assert!("0,2".parse::<Subset>().is_err());
        assert_eq!("".parse::<Subset>().unwrap(), Subset::default());
        assert_eq!(Subset::from_mask(s.mask()), s);
    }
}
