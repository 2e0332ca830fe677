//! Projective Plücker vectors with nonnegative coordinates.

use std::collections::BTreeMap;

use num_traits::{Signed, Zero};

use crate::combinatorics::Subset;
use crate::error::Error;
use crate::rational::{format_rational, Rational};

/// Plücker coordinates of a point of the nonnegative Grassmannian, scaled so
/// that the lexicographically first nonzero coordinate is `1`. Only nonzero
/// coordinates are stored.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PluckerVector {
    k: usize,
    n: usize,
    coords: BTreeMap<Subset, Rational>,
}

impl PluckerVector {
    pub fn k(&self) -> usize {
        self.k
    }

    pub fn n(&self) -> usize {
        self.n
    }

    /// Nonzero coordinates in lexicographic order of their index.
    pub fn coords(&self) -> &BTreeMap<Subset, Rational> {
        &self.coords
    }

    pub fn get(&self, j: &Subset) -> Rational {
        self.coords.get(j).cloned().unwrap_or_else(Rational::zero)
    }

    pub fn is_nonzero(&self, j: &Subset) -> bool {
        self.coords.contains_key(j)
    }

    /// The support, i.e. the matroid of the point.
    pub fn support(&self) -> impl Iterator<Item = &Subset> {
        self.coords.keys()
    }

    /// Lexicographically minimal nonzero index.
    pub fn lexmin(&self) -> &Subset {
        self.coords.keys().next().expect("nonzero vector")
    }

    /// Display form: coordinate strings keyed by comma-joined indices.
    pub fn to_strings(&self) -> BTreeMap<String, String> {
        self.coords.iter().map(|(j, v)| (j.to_string(), format_rational(v))).collect()
    }
}

/// Divides by the lex-min nonzero coordinate, after a global sign flip if
/// that coordinate is negative.
pub fn normalize_projective(
    k: usize,
    n: usize,
    raw: impl IntoIterator<Item = (Subset, Rational)>,
) -> Result<PluckerVector, Error> {
    let mut coords = BTreeMap::new();
    for (j, v) in raw {
        if j.len() != k || j.max_element().is_some_and(|m| m > n) {
            return Err(Error::Malformed(format!("index {j} is not a {k}-subset of [{n}]")));
        }
        if !v.is_zero() && coords.insert(j.clone(), v).is_some() {
            return Err(Error::Malformed(format!("index {j} given twice")));
        }
    }
    let pivot = coords.values().next().cloned().ok_or(Error::ZeroVector)?;
    for (j, v) in coords.iter_mut() {
        *v = &*v / &pivot;
        if v.is_negative() {
            return Err(Error::MixedSigns(format!("P_{{{j}}} has the opposite sign")));
        }
    }
    Ok(PluckerVector { k, n, coords })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::int;

    fn s(text: &str) -> Subset {
        text.parse().unwrap()
    }

    #[test]
    fn scales_by_lexmin() {
        let p = normalize_projective(2, 3, [(s("1,2"), int(3)), (s("1,3"), int(6))]).unwrap();
        assert_eq!(p.get(&s("1,2")), int(1));
        assert_eq!(p.get(&s("1,3")), int(2));
        assert_eq!(p.get(&s("2,3")), int(0));
    }

    #[test]
    fn global_sign_flip() {
        let p = normalize_projective(2, 4, [(s("1,2"), int(-2)), (s("3,4"), int(-4))]).unwrap();
        assert_eq!(p.to_strings(), BTreeMap::from([("1,2".into(), "1".into()), ("3,4".into(), "2".into())]));
    }

    #[test]
    fn rejects_mixed_signs_and_zero() {
        assert!(matches!(
            normalize_projective(2, 3, [(s("1,2"), int(1)), (s("1,3"), int(-1))]),
            Err(Error::MixedSigns(_))
        ));
        assert_eq!(normalize_projective(2, 3, [(s("1,2"), int(0))]), Err(Error::ZeroVector));
        assert!(matches!(normalize_projective(2, 3, [(s("1,4"), int(1))]), Err(Error::Malformed(_))));
    }
}
