//! First two stages of the row pipeline: the foreground mask of a row and the
//! run-boundary markers derived from it.

use std::fmt;
use std::str::FromStr;

/// One bit per pixel: set iff the pixel is non-zero.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct BitmapRow {
    bits: Vec<bool>,
}

/// One bit per pixel: set where a new run of equal bitmap bits begins.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct TransitionRow {
    bits: Vec<bool>,
}

macro_rules! bit_row_impl {
    ($ty:ident) => {
        impl $ty {
            pub fn from_bits(bits: Vec<bool>) -> Self {
                Self { bits }
            }

            pub fn zeros(width: usize) -> Self {
                Self {
                    bits: vec![false; width],
                }
            }

            pub fn width(&self) -> usize {
                self.bits.len()
            }

            pub fn bits(&self) -> &[bool] {
                &self.bits
            }

            pub fn get(&self, j: usize) -> bool {
                self.bits[j]
            }

            pub fn count_ones(&self) -> usize {
                self.bits.iter().filter(|&&b| b).count()
            }
        }

        impl fmt::Display for $ty {
            fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
                for &b in &self.bits {
                    f.write_str(if b { "1" } else { "0" })?;
                }
                Ok(())
            }
        }

        impl fmt::Debug for $ty {
            fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
                write!(f, "{}({})", stringify!($ty), self)
            }
        }

        impl FromStr for $ty {
            type Err = ParseBitsError;

            fn from_str(s: &str) -> Result<Self, Self::Err> {
                parse_bits(s).map(Self::from_bits)
            }
        }
    };
}

bit_row_impl!(BitmapRow);
bit_row_impl!(TransitionRow);

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
#[error("bit string may only contain '0' and '1' (found {0:?})")]
pub struct ParseBitsError(pub char);

/// Parses a string of `0`/`1` characters; `_` and spaces are ignored.
pub fn parse_bits(s: &str) -> Result<Vec<bool>, ParseBitsError> {
    s.chars()
        .filter(|c| *c != '_' && !c.is_whitespace())
        .map(|c| match c {
            '0' => Ok(false),
            '1' => Ok(true),
            other => Err(ParseBitsError(other)),
        })
        .collect()
}

/// Column positions where a run begins; the output of the index CU.
pub type IndexList = Vec<usize>;

/// OR-reduces each pixel's eight bits.
pub fn bitmap_row(row: &[u8]) -> BitmapRow {
    BitmapRow {
        bits: row.iter().map(|&p| p != 0).collect(),
    }
}

/// XOR of each bitmap bit with its left neighbour. The neighbour of column 0
/// is a constant 0, so every row is decodable on its own.
pub fn transitions(b: &BitmapRow) -> TransitionRow {
    let mut prev = false;
    let bits = b
        .bits
        .iter()
        .map(|&cur| {
            let t = cur ^ prev;
            prev = cur;
            t
        })
        .collect();
    TransitionRow { bits }
}

/// Positions of set transition bits, ascending. The first index (if any)
/// opens a 1-run and subsequent runs alternate.
pub fn run_start_indices(t: &TransitionRow) -> IndexList {
    t.bits
        .iter()
        .enumerate()
        .filter_map(|(j, &b)| b.then_some(j))
        .collect()
}

/// Bitmap, transitions and run starts for one pixel row.
pub fn scan_row(row: &[u8]) -> (BitmapRow, IndexList) {
    let b = bitmap_row(row);
    let idx = run_start_indices(&transitions(&b));
    (b, idx)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::background::reconstruct_bitmap_row;
    use crate::compactor::{compact, MaskedVector};
    use proptest::prelude::*;

    const SAMPLE_BITMAP: &str = "0011111001111100";
    const SAMPLE_STARTS: &str = "0010000101000010";

    fn row_for(bits: &str) -> Vec<u8> {
        bits.bytes()
            .enumerate()
            .map(|(i, b)| if b == b'1' { 17 + i as u8 } else { 0 })
            .collect()
    }

    #[test]
    fn bitmap_marks_nonzero() {
        assert_eq!(bitmap_row(&[0, 0, 200, 31, 0]).to_string(), "00110");
        assert_eq!(bitmap_row(&[0; 256]), BitmapRow::zeros(256));
        assert_eq!(
            bitmap_row(&row_for(SAMPLE_BITMAP)).to_string(),
            SAMPLE_BITMAP
        );
    }

    #[test]
    fn transitions_match_table() {
        let b: BitmapRow = SAMPLE_BITMAP.parse().unwrap();
        assert_eq!(transitions(&b).to_string(), SAMPLE_STARTS);
        assert_eq!(transitions(&BitmapRow::zeros(9)), TransitionRow::zeros(9));
        assert_eq!(transitions(&"1111".parse().unwrap()).to_string(), "1000");
    }

    #[test]
    fn run_starts_match_table() {
        let t: TransitionRow = SAMPLE_STARTS.parse().unwrap();
        assert_eq!(run_start_indices(&t), vec![2, 7, 9, 14]);
        assert!(run_start_indices(&TransitionRow::zeros(12)).is_empty());
    }

    #[test]
    fn parse_rejects_junk() {
        assert_eq!(parse_bits("01x"), Err(ParseBitsError('x')));
        assert_eq!(parse_bits("0_1 1").unwrap(), vec![false, true, true]);
    }

    proptest! {
        #[test]
        fn indices_reconstruct_bitmap(row in proptest::collection::vec(
            prop_oneof![3 => Just(0u8), 1 => 1u8..=255], 1..300))
        {
            let b = bitmap_row(&row);
            let t = transitions(&b);
            prop_assert_eq!(t.get(0), b.get(0));
            let idx = run_start_indices(&t);
            prop_assert!(idx.windows(2).all(|w| w[0] < w[1]));
            prop_assert!(idx.iter().all(|&j| j < row.len()));
            prop_assert_eq!(reconstruct_bitmap_row(&idx, row.len()).unwrap(), b);
        }

        #[test]
        fn indices_equal_compaction_of_column_numbers(bits in proptest::collection::vec(any::<bool>(), 1..300)) {
            let t = TransitionRow::from_bits(bits.clone());
            let idx = run_start_indices(&t);
            let mv = MaskedVector::new((0..bits.len()).collect(), bits).unwrap();
            let out = compact(&mv);
            prop_assert_eq!(&out[..idx.len()], &idx[..]);
        }
    }
}
