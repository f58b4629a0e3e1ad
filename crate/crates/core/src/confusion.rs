//! Rank-based pixel permutation.
//!
//! Each flat pixel position `i` receives the rank of the `i`-th chaotic
//! value (ties broken by position). Confusion scatters pixel `i` to
//! position `rank[i]`; unconfusion gathers it back.

use crate::error::{Error, Result};
use crate::image::GrayImage;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RankPermutation {
    rank: Vec<usize>,
}

impl RankPermutation {
    pub fn identity(n: usize) -> Self {
        Self {
            rank: (0..n).collect(),
        }
    }

    pub fn ranks(&self) -> &[usize] {
        &self.rank
    }

    pub fn len(&self) -> usize {
        self.rank.len()
    }

    pub fn is_empty(&self) -> bool {
        self.rank.is_empty()
    }

    fn check(&self, image: &GrayImage) -> Result<()> {
        if self.rank.len() == image.len() {
            Ok(())
        } else {
            Err(Error::SizeMismatch {
                expected: image.len(),
                actual: self.rank.len(),
            })
        }
    }
}

/// `rank[i]` counts the values strictly smaller than `values[i]` plus the
/// equal values at earlier positions.
pub fn rank_permutation(values: &[f64]) -> Result<RankPermutation> {
    if values.is_empty() {
        return Err(Error::EmptySequence);
    }
    let mut order: Vec<usize> = (0..values.len()).collect();
    // stable, so equal values keep their positional order
    order.sort_by(|&a, &b| values[a].total_cmp(&values[b]));
    let mut rank = vec![0; values.len()];
    for (r, &i) in order.iter().enumerate() {
        rank[i] = r;
    }
    Ok(RankPermutation { rank })
}

pub fn confuse(image: &GrayImage, perm: &RankPermutation) -> Result<GrayImage> {
    perm.check(image)?;
    let src = image.pixels();
    let mut out = vec![0u8; src.len()];
    for (i, &r) in perm.rank.iter().enumerate() {
        out[r] = src[i];
    }
    Ok(image.with_pixels(out))
}

pub fn unconfuse(image: &GrayImage, perm: &RankPermutation) -> Result<GrayImage> {
    perm.check(image)?;
    let src = image.pixels();
    let out = perm.rank.iter().map(|&r| src[r]).collect();
    Ok(image.with_pixels(out))
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    #[test]
    fn hand_traced_ranks() {
        let p = rank_permutation(&[0.3, 0.1, 0.9, 0.1]).unwrap();
        assert_eq!(p.ranks(), &[2, 0, 3, 1]);
    }

    #[test]
    fn increasing_and_constant_sequences_give_identity() {
        let inc: Vec<f64> = (0..10).map(|i| i as f64 * 0.1).collect();
        assert_eq!(rank_permutation(&inc).unwrap(), RankPermutation::identity(10));
        assert_eq!(rank_permutation(&[0.4; 7]).unwrap(), RankPermutation::identity(7));
    }

    #[test]
    fn empty_sequence() {
        assert!(matches!(rank_permutation(&[]), Err(Error::EmptySequence)));
    }

    #[test]
    fn hand_traced_scatter() {
        let (a, b, c, d) = (11, 22, 33, 44);
        let img = GrayImage::new(1, 4, vec![a, b, c, d]).unwrap();
        let p = rank_permutation(&[0.3, 0.1, 0.9, 0.1]).unwrap();
        let confused = confuse(&img, &p).unwrap();
        assert_eq!(confused.pixels(), &[b, d, a, c]);
        assert_eq!(unconfuse(&confused, &p).unwrap(), img);
    }

    #[test]
    fn identity_leaves_image_alone() {
        let img = GrayImage::from_fn(3, 5, |i, j| (i * 5 + j) as u8).unwrap();
        let id = RankPermutation::identity(15);
        assert_eq!(confuse(&img, &id).unwrap(), img);
        assert_eq!(unconfuse(&img, &id).unwrap(), img);
    }

    #[test]
    fn size_mismatch() {
        let img = GrayImage::filled(2, 2, 0).unwrap();
        let p = RankPermutation::identity(3);
        assert!(matches!(confuse(&img, &p), Err(Error::SizeMismatch { .. })));
        assert!(matches!(unconfuse(&img, &p), Err(Error::SizeMismatch { .. })));
    }

    proptest! {
        #[test]
        fn ranks_form_a_permutation(values in proptest::collection::vec(0.0f64..1.0, 1..300)) {
            let p = rank_permutation(&values).unwrap();
            let mut sorted = p.ranks().to_vec();
            sorted.sort_unstable();
            prop_assert_eq!(sorted, (0..values.len()).collect::<Vec<_>>());
            prop_assert_eq!(p.clone(), rank_permutation(&values).unwrap());
        }

        #[test]
        fn confusion_round_trip(
            (pixels, values) in (1usize..200).prop_flat_map(|n| (
                proptest::collection::vec(any::<u8>(), n),
                // few distinct values so ties are common
                proptest::collection::vec(0u8..8, n),
            ))
        ) {
            let img = GrayImage::new(1, pixels.len(), pixels).unwrap();
            let vals: Vec<f64> = values.iter().map(|&v| f64::from(v) / 8.0).collect();
            let p = rank_permutation(&vals).unwrap();
            let c = confuse(&img, &p).unwrap();
            let mut a = img.pixels().to_vec();
            let mut b = c.pixels().to_vec();
            a.sort_unstable();
            b.sort_unstable();
            prop_assert_eq!(a, b);
            prop_assert_eq!(unconfuse(&c, &p).unwrap(), img);
        }
    }
}
