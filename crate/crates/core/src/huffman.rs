//! Canonical Huffman coding over the byte alphabet.
//!
//! A table is fully described by 256 code lengths (0 = symbol absent).
//! Codes are assigned in `(length, symbol)` order, so the encoder and the
//! decoder rebuild identical codes from the lengths alone. Lengths are not
//! limited; a code may be up to 255 bits long.

use std::cmp::Reverse;
use std::collections::BinaryHeap;

use thiserror::Error;

use crate::bitio::{BitReader, BitWriter};

pub const ALPHABET: usize = 256;
const MAX_LEN: usize = 255;

#[derive(Error, Debug, Clone, PartialEq, Eq)]
pub enum HuffmanError {
    #[error("cannot build a Huffman code from an empty histogram")]
    EmptyHistogram,

    #[error("symbol {0} has no code in the table")]
    SymbolAbsent(u8),

    #[error("code lengths violate the Kraft inequality")]
    KraftViolation,

    #[error("code length table must be {ALPHABET} bytes, got {0}")]
    BadTableLength(usize),

    #[error("bitstream exhausted after {decoded} of {expected} symbols")]
    Exhausted { decoded: usize, expected: usize },

    #[error("invalid code at bit {0}")]
    InvalidCode(u64),
}

/// Up to 256-bit code value, little-endian limbs.
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq)]
struct Wide([u64; 4]);

impl Wide {
    fn add_small(&mut self, mut v: u64) {
        for limb in &mut self.0 {
            let (sum, carry) = limb.overflowing_add(v);
            *limb = sum;
            if !carry {
                return;
            }
            v = 1;
        }
    }

    fn shl1(&mut self) {
        let mut carry = 0;
        for limb in &mut self.0 {
            let out = *limb >> 63;
            *limb = (*limb << 1) | carry;
            carry = out;
        }
    }

    fn bit(&self, i: usize) -> bool {
        self.0[i / 64] >> (i % 64) & 1 == 1
    }
}

/// Canonical code for one symbol.
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq)]
pub struct Codeword {
    value: Wide,
    len: u8,
}

impl Codeword {
    pub fn len(&self) -> u8 {
        self.len
    }

    pub fn is_empty(&self) -> bool {
        self.len == 0
    }

    /// Bit `i` counted from the first transmitted bit.
    pub fn bit(&self, i: usize) -> bool {
        self.value.bit(self.len as usize - 1 - i)
    }

    pub fn write(&self, w: &mut BitWriter) {
        if self.len <= 64 {
            w.write_bits(self.value.0[0], u32::from(self.len));
        } else {
            for i in 0..self.len as usize {
                w.write_bit(self.bit(i));
            }
        }
    }
}

impl std::fmt::Display for Codeword {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        for i in 0..self.len as usize {
            f.write_str(if self.bit(i) { "1" } else { "0" })?;
        }
        Ok(())
    }
}

#[derive(Clone, PartialEq, Eq)]
pub struct HuffmanTable {
    lengths: [u8; ALPHABET],
    codes: Box<[Codeword; ALPHABET]>,
    /// Symbols sorted by `(length, symbol)`.
    sorted: Vec<u8>,
    /// `per_len[l]` = number of codes of length `l`.
    per_len: [u16; MAX_LEN + 1],
    max_len: usize,
}

impl std::fmt::Debug for HuffmanTable {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.debug_struct("HuffmanTable")
            .field("symbols", &self.sorted.len())
            .field("max_len", &self.max_len)
            .finish()
    }
}

impl HuffmanTable {
    /// Table with no symbols; only valid for empty streams.
    pub fn empty() -> Self {
        Self::from_lengths([0; ALPHABET]).expect("empty table satisfies Kraft")
    }

    pub fn from_lengths(lengths: [u8; ALPHABET]) -> Result<Self, HuffmanError> {
        let mut per_len = [0u16; MAX_LEN + 1];
        for &l in &lengths {
            if l > 0 {
                per_len[l as usize] += 1;
            }
        }
        // Kraft check by counting free nodes per depth; capped because at
        // most 256 leaves remain to be placed.
        let mut free: i64 = 1;
        for &count in &per_len[1..] {
            free = (free * 2).min(4 * ALPHABET as i64) - i64::from(count);
            if free < 0 {
                return Err(HuffmanError::KraftViolation);
            }
        }
        let max_len = (1..=MAX_LEN).rev().find(|&l| per_len[l] > 0).unwrap_or(0);

        let mut sorted: Vec<u8> = (0..=255u8).filter(|&s| lengths[s as usize] > 0).collect();
        sorted.sort_by_key(|&s| (lengths[s as usize], s));

        let mut next = [Wide::default(); MAX_LEN + 1];
        let mut code = Wide::default();
        for l in 1..=max_len {
            code.add_small(u64::from(per_len[l - 1]));
            code.shl1();
            next[l] = code;
        }
        let mut codes = Box::new([Codeword::default(); ALPHABET]);
        for &s in &sorted {
            let l = lengths[s as usize];
            codes[s as usize] = Codeword {
                value: next[l as usize],
                len: l,
            };
            next[l as usize].add_small(1);
        }
        Ok(Self {
            lengths,
            codes,
            sorted,
            per_len,
            max_len,
        })
    }

    pub fn lengths(&self) -> &[u8; ALPHABET] {
        &self.lengths
    }

    pub fn code(&self, symbol: u8) -> Option<&Codeword> {
        let c = &self.codes[symbol as usize];
        (c.len > 0).then_some(c)
    }

    pub fn symbol_count(&self) -> usize {
        self.sorted.len()
    }

    pub fn is_empty(&self) -> bool {
        self.sorted.is_empty()
    }

    pub fn max_len(&self) -> usize {
        self.max_len
    }

    /// Kraft sum as a float; exact for the lengths a real histogram produces.
    pub fn kraft_sum(&self) -> f64 {
        self.sorted
            .iter()
            .map(|&s| (-f64::from(self.lengths[s as usize])).exp2())
            .sum()
    }

    /// `sum(count * length)` for a histogram.
    pub fn cost(&self, hist: &[u64; ALPHABET]) -> u64 {
        hist.iter()
            .zip(&self.lengths)
            .map(|(&c, &l)| c * u64::from(l))
            .sum()
    }

    pub fn serialize(&self) -> [u8; ALPHABET] {
        self.lengths
    }

    pub fn deserialize(bytes: &[u8]) -> Result<Self, HuffmanError> {
        let lengths: [u8; ALPHABET] = bytes
            .try_into()
            .map_err(|_| HuffmanError::BadTableLength(bytes.len()))?;
        Self::from_lengths(lengths)
    }

    /// Reads one symbol.
    pub fn decode_symbol(&self, r: &mut BitReader<'_>) -> Result<Option<u8>, HuffmanError> {
        // `offset` is the read code minus the first canonical code of the
        // current length; it stays small because at most 256 prefixes can
        // lead to longer codes.
        let start = r.position();
        let mut offset: usize = 0;
        let mut index = 0usize;
        let mut remaining = self.sorted.len();
        for l in 1..=self.max_len {
            let Some(bit) = r.read_bit() else {
                return Ok(None);
            };
            offset += bit as usize;
            let count = self.per_len[l] as usize;
            if offset < count {
                return Ok(Some(self.sorted[index + offset]));
            }
            offset -= count;
            index += count;
            remaining -= count;
            if offset >= remaining {
                return Err(HuffmanError::InvalidCode(start));
            }
            offset <<= 1;
        }
        Err(HuffmanError::InvalidCode(start))
    }
}

struct Node {
    left: usize,
    right: usize,
}

/// Optimal prefix code for `hist`, canonicalised. A lone symbol gets length 1.
pub fn huffman_build(hist: &[u64; ALPHABET]) -> Result<HuffmanTable, HuffmanError> {
    let present: Vec<usize> = (0..ALPHABET).filter(|&s| hist[s] > 0).collect();
    let mut lengths = [0u8; ALPHABET];
    match present.len() {
        0 => return Err(HuffmanError::EmptyHistogram),
        1 => {
            lengths[present[0]] = 1;
            return HuffmanTable::from_lengths(lengths);
        }
        _ => {}
    }

    // leaves are nodes 0..256 (only present ones enter the heap)
    let mut nodes: Vec<Node> = Vec::with_capacity(2 * ALPHABET);
    for _ in 0..ALPHABET {
        nodes.push(Node {
            left: usize::MAX,
            right: usize::MAX,
        });
    }
    let mut heap: BinaryHeap<Reverse<(u128, usize)>> = present
        .iter()
        .map(|&s| Reverse((u128::from(hist[s]), s)))
        .collect();
    while heap.len() > 1 {
        let Reverse((wa, a)) = heap.pop().unwrap();
        let Reverse((wb, b)) = heap.pop().unwrap();
        nodes.push(Node { left: a, right: b });
        heap.push(Reverse((wa + wb, nodes.len() - 1)));
    }
    let Reverse((_, root)) = heap.pop().unwrap();

    let mut stack = vec![(root, 0usize)];
    while let Some((n, depth)) = stack.pop() {
        if n < ALPHABET {
            lengths[n] = u8::try_from(depth).expect("code depth fits in a byte");
        } else {
            stack.push((nodes[n].left, depth + 1));
            stack.push((nodes[n].right, depth + 1));
        }
    }
    HuffmanTable::from_lengths(lengths)
}

pub fn histogram(symbols: &[u8]) -> [u64; ALPHABET] {
    let mut hist = [0u64; ALPHABET];
    for &s in symbols {
        hist[s as usize] += 1;
    }
    hist
}

/// Returns the packed bytes and the exact number of code bits.
pub fn huffman_encode(
    symbols: &[u8],
    table: &HuffmanTable,
) -> Result<(Vec<u8>, u64), HuffmanError> {
    let mut w = BitWriter::new();
    encode_into(&mut w, symbols, table)?;
    let bits = w.bit_len();
    Ok((w.finish(), bits))
}

pub fn encode_into(
    w: &mut BitWriter,
    symbols: &[u8],
    table: &HuffmanTable,
) -> Result<(), HuffmanError> {
    for &s in symbols {
        table.code(s).ok_or(HuffmanError::SymbolAbsent(s))?.write(w);
    }
    Ok(())
}

/// Decodes exactly `n_symbols`; padding after the last code is ignored.
pub fn huffman_decode(
    bytes: &[u8],
    table: &HuffmanTable,
    n_symbols: usize,
) -> Result<Vec<u8>, HuffmanError> {
    let mut r = BitReader::new(bytes);
    let mut out = Vec::with_capacity(n_symbols);
    while out.len() < n_symbols {
        match table.decode_symbol(&mut r)? {
            Some(s) => out.push(s),
            None => {
                return Err(HuffmanError::Exhausted {
                    decoded: out.len(),
                    expected: n_symbols,
                })
            }
        }
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn hist_of(pairs: &[(u8, u64)]) -> [u64; ALPHABET] {
        let mut h = [0; ALPHABET];
        for &(s, c) in pairs {
            h[s as usize] = c;
        }
        h
    }

    #[test]
    fn single_symbol() {
        let t = huffman_build(&hist_of(&[(b'A', 1)])).unwrap();
        assert_eq!(t.code(b'A').unwrap().to_string(), "0");
        let (bytes, bits) = huffman_encode(b"A", &t).unwrap();
        assert_eq!((bytes, bits), (vec![0x00], 1));
        assert_eq!(huffman_decode(&[0x00], &t, 1).unwrap(), vec![b'A']);
        assert!(matches!(
            huffman_decode(&[0x80], &t, 1),
            Err(HuffmanError::InvalidCode(0))
        ));
    }

    #[test]
    fn four_symbol_cost() {
        let h = hist_of(&[(b'A', 5), (b'B', 2), (b'C', 1), (b'D', 1)]);
        let t = huffman_build(&h).unwrap();
        assert_eq!(t.cost(&h), 15);
        assert_eq!(t.code(b'A').unwrap().to_string(), "0");
        assert_eq!(t.code(b'B').unwrap().to_string(), "10");
        assert_eq!(t.code(b'C').unwrap().to_string(), "110");
        assert_eq!(t.code(b'D').unwrap().to_string(), "111");
    }

    #[test]
    fn uniform_is_flat() {
        let t = huffman_build(&[7; ALPHABET]).unwrap();
        assert!(t.lengths().iter().all(|&l| l == 8));
        for s in 0..=255u8 {
            assert_eq!(t.code(s).unwrap().to_string(), format!("{s:08b}"));
        }
    }

    #[test]
    fn empty_inputs() {
        assert_eq!(
            huffman_build(&[0; ALPHABET]).unwrap_err(),
            HuffmanError::EmptyHistogram
        );
        let t = huffman_build(&hist_of(&[(1, 1)])).unwrap();
        assert_eq!(huffman_encode(&[], &t).unwrap(), (vec![], 0));
        assert_eq!(huffman_decode(&[], &t, 0).unwrap(), Vec::<u8>::new());
        assert_eq!(
            huffman_decode(&[], &HuffmanTable::empty(), 0).unwrap(),
            vec![]
        );
    }

    #[test]
    fn encode_rejects_unknown_symbol() {
        let t = huffman_build(&hist_of(&[(1, 3), (2, 4)])).unwrap();
        assert_eq!(
            huffman_encode(&[1, 9], &t).unwrap_err(),
            HuffmanError::SymbolAbsent(9)
        );
    }

    #[test]
    fn truncated_stream() {
        let h = hist_of(&[(1, 3), (2, 4), (3, 1)]);
        let t = huffman_build(&h).unwrap();
        let syms = vec![1, 2, 3, 2, 2, 1, 1, 2];
        let (bytes, _) = huffman_encode(&syms, &t).unwrap();
        assert_eq!(
            huffman_decode(&bytes, &t, syms.len() + 8).unwrap_err(),
            HuffmanError::Exhausted {
                decoded: syms.len() + bytes.len() * 8 - 12,
                expected: syms.len() + 8
            }
        );
        assert!(matches!(
            huffman_decode(&bytes[..0], &t, 1),
            Err(HuffmanError::Exhausted { decoded: 0, .. })
        ));
    }

    #[test]
    fn table_serialization() {
        let mut lengths = [0u8; ALPHABET];
        lengths[200] = 1;
        let t = HuffmanTable::deserialize(&lengths).unwrap();
        assert_eq!(t.symbol_count(), 1);
        assert_eq!(t.serialize(), lengths);

        let mut bad = [0u8; ALPHABET];
        bad[0] = 1;
        bad[1] = 1;
        bad[2] = 1;
        assert_eq!(
            HuffmanTable::deserialize(&bad).unwrap_err(),
            HuffmanError::KraftViolation
        );
        assert_eq!(
            HuffmanTable::deserialize(&[1, 1]).unwrap_err(),
            HuffmanError::BadTableLength(2)
        );
    }

    #[test]
    fn very_long_codes() {
        // a chain: lengths 1, 2, ..., 254, 255, 255
        let mut lengths = [0u8; ALPHABET];
        for (s, l) in lengths.iter_mut().enumerate().take(255) {
            *l = (s + 1) as u8;
        }
        lengths[255] = 255;
        let t = HuffmanTable::from_lengths(lengths).unwrap();
        assert_eq!(t.max_len(), 255);
        assert_eq!(t.code(0).unwrap().to_string(), "0");
        assert_eq!(t.code(2).unwrap().to_string(), "110");
        assert_eq!(t.code(255).unwrap().to_string(), "1".repeat(255));
        let syms = vec![255, 0, 254, 100, 255, 1];
        let (bytes, bits) = huffman_encode(&syms, &t).unwrap();
        assert_eq!(bits, 255 + 1 + 255 + 101 + 255 + 2);
        assert_eq!(huffman_decode(&bytes, &t, syms.len()).unwrap(), syms);

        lengths[0] = 0;
        lengths[1] = 1;
        lengths[2] = 1;
        assert_eq!(
            HuffmanTable::from_lengths(lengths).unwrap_err(),
            HuffmanError::KraftViolation
        );
    }

    #[test]
    fn fibonacci_histogram_builds_deep_tree() {
        let mut h = [0u64; ALPHABET];
        let (mut a, mut b) = (1u64, 1u64);
        for c in h.iter_mut().take(40) {
            *c = a;
            (a, b) = (b, a + b);
        }
        let t = huffman_build(&h).unwrap();
        assert_eq!(t.max_len(), 39);
        let syms: Vec<u8> = (0..40).collect();
        let (bytes, _) = huffman_encode(&syms, &t).unwrap();
        assert_eq!(huffman_decode(&bytes, &t, 40).unwrap(), syms);
    }

    proptest! {
        #[test]
        fn round_trip(syms in proptest::collection::vec(
            prop_oneof![8 => 0u8..4, 2 => 250u8..=255, 1 => any::<u8>()], 1..4000))
        {
            let t = huffman_build(&histogram(&syms)).unwrap();
            let (bytes, bits) = huffman_encode(&syms, &t).unwrap();
            let expected_bits: u64 = syms.iter().map(|&s| u64::from(t.code(s).unwrap().len())).sum();
            prop_assert_eq!(bits, expected_bits);
            prop_assert_eq!(bytes.len() as u64, bits.div_ceil(8));
            prop_assert_eq!(huffman_decode(&bytes, &t, syms.len()).unwrap(), syms);
        }

        #[test]
        fn serialize_identity(counts in proptest::collection::vec(0u64..1000, ALPHABET)) {
            let mut h = [0u64; ALPHABET];
            h.copy_from_slice(&counts);
            h[17] += 1;
            let t = huffman_build(&h).unwrap();
            let back = HuffmanTable::deserialize(&t.serialize()).unwrap();
            prop_assert_eq!(&back, &t);
            prop_assert_eq!(huffman_build(&h).unwrap(), t);
        }
    }
}
