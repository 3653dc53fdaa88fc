//! Affine normal form: translate the minimum to 0, divide by the gcd, and
//! take the lexicographically smaller of the set and its reflection.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::setcore::IntSet;

/// Representative of an affine-equivalence class together with the map that
/// recovers the original set: `input = shift + (±scale)·representative`,
/// with the minus sign when `reflected` is set.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CanonicalForm {
    pub representative: IntSet,
    pub shift: i64,
    pub scale: u64,
    pub reflected: bool,
}

impl CanonicalForm {
    /// Reapplies the normalizing map to the representative.
    pub fn reconstruct(&self) -> Result<IntSet> {
        let scale = i64::try_from(self.scale).map_err(|_| Error::Overflow("canonical scale"))?;
        let signed = if self.reflected { -scale } else { scale };
        self.representative.affine_map(self.shift, signed)
    }
}

pub fn canonicalize(set: &IntSet) -> Result<CanonicalForm> {
    let (Some(lo), Some(hi)) = (set.min_element(), set.max_element()) else {
        return Err(Error::EmptySet);
    };
    if set.len() == 1 {
        return Ok(CanonicalForm {
            representative: IntSet::singleton(0),
            shift: lo,
            scale: 1,
            reflected: false,
        });
    }
    let g = set.gcd_of_differences() as i128;
    let elements = set.to_vec();
    let forward: Vec<i64> = elements
        .iter()
        .map(|&a| ((a as i128 - lo as i128) / g) as i64)
        .collect();
    let backward: Vec<i64> = elements
        .iter()
        .rev()
        .map(|&a| ((hi as i128 - a as i128) / g) as i64)
        .collect();
    let reflected = backward < forward;
    let chosen = if reflected { backward } else { forward };
    Ok(CanonicalForm {
        representative: IntSet::new(&chosen)?,
        shift: if reflected { hi } else { lo },
        scale: g as u64,
        reflected,
    })
}

/// Whether the two sets differ by a translation, dilation and/or reflection.
pub fn are_affinely_equivalent(a: &IntSet, b: &IntSet) -> Result<bool> {
    if a.len() != b.len() {
        if a.is_empty() || b.is_empty() {
            return Err(Error::EmptySet);
        }
        return Ok(false);
    }
    Ok(canonicalize(a)?.representative == canonicalize(b)?.representative)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn set(v: &[i64]) -> IntSet {
        IntSet::new(v).unwrap()
    }

    #[test]
    fn progression_normalizes() {
        let c = canonicalize(&set(&[2, 4, 6])).unwrap();
        assert_eq!(c.representative, set(&[0, 1, 2]));
        assert_eq!((c.shift, c.scale, c.reflected), (2, 2, false));
    }

    #[test]
    fn reflection_chosen_when_smaller() {
        let c = canonicalize(&set(&[0, 2, 3])).unwrap();
        assert_eq!(c.representative, set(&[0, 1, 3]));
        assert!(c.reflected);
        assert_eq!(c.reconstruct().unwrap(), set(&[0, 2, 3]));
    }

    #[test]
    fn singleton() {
        let c = canonicalize(&set(&[-7])).unwrap();
        assert_eq!(c.representative, set(&[0]));
        assert_eq!(c.reconstruct().unwrap(), set(&[-7]));
    }

    #[test]
    fn empty_rejected() {
        assert_eq!(canonicalize(&IntSet::empty()), Err(Error::EmptySet));
    }

    #[test]
    fn equivalence_examples() {
        assert!(are_affinely_equivalent(&set(&[0, 2, 3]), &set(&[0, 1, 3])).unwrap());
        assert!(!are_affinely_equivalent(&set(&[0, 1, 2]), &set(&[0, 1, 3])).unwrap());
        let a = set(&[0, 2, 3, 4, 7, 11, 12, 14]);
        assert!(are_affinely_equivalent(&a, &a.affine_map(7, 3).unwrap()).unwrap());
        assert!(are_affinely_equivalent(&a, &a.affine_map(-1, -5).unwrap()).unwrap());
    }

    #[test]
    fn negative_reconstruct() {
        let a = set(&[-10, -4, 5, 11]);
        let c = canonicalize(&a).unwrap();
        assert_eq!(c.reconstruct().unwrap(), a);
        assert_eq!(c.representative.min_element(), Some(0));
        assert_eq!(c.representative.gcd_of_differences(), 1);
    }
}
