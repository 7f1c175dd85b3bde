//! Binary PGM (`P5`) reading and writing, 8-bit only.
//!
//! The header is a run of ASCII tokens (magic, width, height, maxval)
//! separated by whitespace, with `#` comments allowed anywhere a separator
//! is. Exactly one whitespace byte separates maxval from the raster.

use thiserror::Error;

use crate::image::{Image, ImageError};

#[derive(Error, Debug, Clone, PartialEq, Eq)]
pub enum PgmError {
    #[error("not a binary PGM file (expected magic \"P5\")")]
    BadMagic,

    #[error("malformed PGM header: {0}")]
    BadHeader(String),

    #[error("unsupported maxval {0} (only 1..=255 is supported)")]
    UnsupportedMaxval(u32),

    #[error("truncated PGM payload: expected {expected} bytes, found {got}")]
    Truncated { expected: usize, got: usize },

    #[error(transparent)]
    Image(#[from] ImageError),
}

struct HeaderCursor<'a> {
    bytes: &'a [u8],
    pos: usize,
}

impl<'a> HeaderCursor<'a> {
    fn skip_separators(&mut self) {
        while let Some(&b) = self.bytes.get(self.pos) {
            if b.is_ascii_whitespace() {
                self.pos += 1;
            } else if b == b'#' {
                while let Some(&c) = self.bytes.get(self.pos) {
                    self.pos += 1;
                    if c == b'\n' || c == b'\r' {
                        break;
                    }
                }
            } else {
                break;
            }
        }
    }

    fn number(&mut self, what: &str) -> Result<u32, PgmError> {
        self.skip_separators();
        let start = self.pos;
        while self.bytes.get(self.pos).is_some_and(u8::is_ascii_digit) {
            self.pos += 1;
        }
        if start == self.pos {
            return Err(PgmError::BadHeader(format!("missing {what}")));
        }
        let text = std::str::from_utf8(&self.bytes[start..self.pos]).expect("ascii digits");
        text.parse()
            .map_err(|_| PgmError::BadHeader(format!("{what} out of range: {text}")))
    }
}

pub fn load_pgm(bytes: &[u8]) -> Result<Image, PgmError> {
    if bytes.len() < 2 || &bytes[..2] != b"P5" {
        return Err(PgmError::BadMagic);
    }
    let mut cur = HeaderCursor { bytes, pos: 2 };
    if !cur
        .bytes
        .get(cur.pos)
        .is_some_and(|&b| b.is_ascii_whitespace() || b == b'#')
    {
        return Err(PgmError::BadMagic);
    }
    let width = cur.number("width")? as usize;
    let height = cur.number("height")? as usize;
    let maxval = cur.number("maxval")?;
    if maxval == 0 || maxval > 255 {
        return Err(PgmError::UnsupportedMaxval(maxval));
    }
    match bytes.get(cur.pos) {
        Some(b) if b.is_ascii_whitespace() => cur.pos += 1,
        _ => return Err(PgmError::BadHeader("no whitespace after maxval".into())),
    }
    if width == 0 || height == 0 {
        return Err(ImageError::EmptyDimensions { width, height }.into());
    }
    let expected = width
        .checked_mul(height)
        .ok_or_else(|| PgmError::BadHeader(format!("dimensions {width}x{height} overflow")))?;
    let payload = &bytes[cur.pos..];
    if payload.len() < expected {
        return Err(PgmError::Truncated {
            expected,
            got: payload.len(),
        });
    }
    Ok(Image::new(width, height, payload[..expected].to_vec())?)
}

pub fn store_pgm(img: &Image) -> Vec<u8> {
    let header = format!("P5\n{} {}\n255\n", img.width(), img.height());
    let mut out = Vec::with_capacity(header.len() + img.pixels().len());
    out.extend_from_slice(header.as_bytes());
    out.extend_from_slice(img.pixels());
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    #[test]
    fn parses_minimal_file() {
        let img = load_pgm(b"P5 2 2 255 \x00\xff\x00\xff").unwrap();
        assert_eq!((img.width(), img.height()), (2, 2));
        assert_eq!(img.pixels(), &[0, 255, 0, 255]);
    }

    #[test]
    fn accepts_comments() {
        let img = load_pgm(b"P5\n# made by hand\n2 1 # trailing\n255\n\x07\x09").unwrap();
        assert_eq!(img.pixels(), &[7, 9]);
    }

    #[test]
    fn rejects_sixteen_bit() {
        assert_eq!(
            load_pgm(b"P5 2 2 65535\n\0\0\0\0\0\0\0\0").unwrap_err(),
            PgmError::UnsupportedMaxval(65535)
        );
    }

    #[test]
    fn rejects_short_payload() {
        assert_eq!(
            load_pgm(b"P5 2 2 255\n\x00\xff\x00").unwrap_err(),
            PgmError::Truncated {
                expected: 4,
                got: 3
            }
        );
    }

    #[test]
    fn rejects_other_magic() {
        assert_eq!(load_pgm(b"P2 1 1 255\n0").unwrap_err(), PgmError::BadMagic);
        assert_eq!(load_pgm(b"P").unwrap_err(), PgmError::BadMagic);
        assert_eq!(load_pgm(b"P55 1 1 255\n0").unwrap_err(), PgmError::BadMagic);
    }

    #[test]
    fn rejects_missing_fields() {
        assert!(matches!(
            load_pgm(b"P5 4\n").unwrap_err(),
            PgmError::BadHeader(_)
        ));
        assert!(matches!(
            load_pgm(b"P5 1 1 255").unwrap_err(),
            PgmError::BadHeader(_)
        ));
    }

    #[test]
    fn writes_minimal_file() {
        let img = Image::new(1, 1, vec![0]).unwrap();
        assert_eq!(store_pgm(&img), b"P5\n1 1\n255\n\x00");
        let img = Image::new(2, 1, vec![7, 9]).unwrap();
        assert!(store_pgm(&img).ends_with(&[7, 9]));
    }

    proptest! {
        #[test]
        fn round_trip((w, h, px) in (1usize..=64, 1usize..=64)
            .prop_flat_map(|(w, h)| (Just(w), Just(h), proptest::collection::vec(any::<u8>(), w * h))))
        {
            let img = Image::new(w, h, px).unwrap();
            prop_assert_eq!(load_pgm(&store_pgm(&img)).unwrap(), img);
        }
    }
}
