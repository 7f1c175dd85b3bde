/// Bit writer, MSB-first, zero-padding the final byte.
#[derive(Debug, Default, Clone)]
pub struct BitWriter {
    buf: Vec<u8>,
    cur: u8,
    used: u8,
    drained: u64,
}

impl BitWriter {
    pub fn new() -> Self {
        Self::default()
    }

    #[inline]
    pub fn write_bit(&mut self, bit: bool) {
        self.cur = (self.cur << 1) | bit as u8;
        self.used += 1;
        if self.used == 8 {
            self.buf.push(self.cur);
            self.cur = 0;
            self.used = 0;
        }
    }

    /// Writes the low `n` bits of `value`, most significant first.
    pub fn write_bits(&mut self, value: u64, n: u32) {
        debug_assert!(n <= 64);
        for i in (0..n).rev() {
            self.write_bit(value >> i & 1 == 1);
        }
    }

    pub fn bit_len(&self) -> u64 {
        (self.drained + self.buf.len() as u64) * 8 + u64::from(self.used)
    }

    /// Bytes completed so far (excludes a partial trailing byte).
    pub fn complete_bytes(&self) -> &[u8] {
        &self.buf
    }

    /// Moves completed bytes out, keeping any partial byte buffered.
    pub fn drain_complete(&mut self) -> Vec<u8> {
        self.drained += self.buf.len() as u64;
        std::mem::take(&mut self.buf)
    }

    pub fn finish(mut self) -> Vec<u8> {
        if self.used > 0 {
            self.buf.push(self.cur << (8 - self.used));
        }
        self.buf
    }
}

/// Bit reader, MSB-first.
#[derive(Debug, Clone)]
pub struct BitReader<'a> {
    data: &'a [u8],
    pos: u64,
}

impl<'a> BitReader<'a> {
    pub fn new(data: &'a [u8]) -> Self {
        Self { data, pos: 0 }
    }

    #[inline]
    pub fn read_bit(&mut self) -> Option<bool> {
        let byte = *self.data.get((self.pos / 8) as usize)?;
        let bit = byte >> (7 - self.pos % 8) & 1 == 1;
        self.pos += 1;
        Some(bit)
    }

    pub fn position(&self) -> u64 {
        self.pos
    }
}
