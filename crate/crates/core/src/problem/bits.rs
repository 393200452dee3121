use std::cmp::Ordering;
use std::fmt;

/// Fixed-length bit string, bit `i` stored at word `i / 64`, position `i % 64`.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct BitString {
    words: Vec<u64>,
    len: usize,
}

impl BitString {
    pub fn zeros(len: usize) -> Self {
        BitString {
            words: vec![0; len.div_ceil(64)],
            len,
        }
    }

    pub fn ones(len: usize) -> Self {
        let mut bits = Self::zeros(len);
        for i in 0..len {
            bits.set(i, true);
        }
        bits
    }

    pub fn from_bools(values: &[bool]) -> Self {
        let mut bits = Self::zeros(values.len());
        for (i, &v) in values.iter().enumerate() {
            bits.set(i, v);
        }
        bits
    }

    /// Builds a string of length `len` from the low bits of `mask`
    /// (bit `i` of the mask becomes position `i`).
    pub fn from_mask(mask: u64, len: usize) -> Self {
        assert!(len <= 64, "mask conversion supports at most 64 bits");
        let mut bits = Self::zeros(len);
        if len > 0 {
            bits.words[0] = if len == 64 {
                mask
            } else {
                mask & ((1 << len) - 1)
            };
        }
        bits
    }

    pub fn len(&self) -> usize {
        self.len
    }

    pub fn is_empty(&self) -> bool {
        self.len == 0
    }

    #[inline]
    pub fn get(&self, i: usize) -> bool {
        debug_assert!(i < self.len);
        (self.words[i >> 6] >> (i & 63)) & 1 == 1
    }

    #[inline]
    pub fn set(&mut self, i: usize, value: bool) {
        debug_assert!(i < self.len);
        let mask = 1u64 << (i & 63);
        if value {
            self.words[i >> 6] |= mask;
        } else {
            self.words[i >> 6] &= !mask;
        }
    }

    /// Flips bit `i` and returns its new value.
    #[inline]
    pub fn flip(&mut self, i: usize) -> bool {
        debug_assert!(i < self.len);
        self.words[i >> 6] ^= 1u64 << (i & 63);
        self.get(i)
    }

    pub fn count_ones(&self) -> usize {
        self.words.iter().map(|w| w.count_ones() as usize).sum()
    }

    pub fn iter(&self) -> impl Iterator<Item = bool> + '_ {
        (0..self.len).map(move |i| self.get(i))
    }

    pub fn iter_ones(&self) -> impl Iterator<Item = usize> + '_ {
        self.words.iter().enumerate().flat_map(|(w, &word)| {
            let mut rest = word;
            std::iter::from_fn(move || {
                if rest == 0 {
                    return None;
                }
                let bit = rest.trailing_zeros() as usize;
                rest &= rest - 1;
                Some(w * 64 + bit)
            })
        })
    }

    /// Position of the `rank`-th set bit (0-based), if any.
    pub fn select_one(&self, rank: usize) -> Option<usize> {
        self.select(rank, |w| w)
    }

    /// Position of the `rank`-th clear bit (0-based), if any.
    pub fn select_zero(&self, rank: usize) -> Option<usize> {
        let tail = self.len & 63;
        let last = self.words.len().wrapping_sub(1);
        self.select_words(rank, |idx, w| {
            let inverted = !w;
            if idx == last && tail != 0 {
                inverted & ((1u64 << tail) - 1)
            } else {
                inverted
            }
        })
    }

    fn select(&self, rank: usize, view: impl Fn(u64) -> u64) -> Option<usize> {
        self.select_words(rank, |_, w| view(w))
    }

    fn select_words(&self, mut rank: usize, view: impl Fn(usize, u64) -> u64) -> Option<usize> {
        for (idx, &raw) in self.words.iter().enumerate() {
            let mut word = view(idx, raw);
            let count = word.count_ones() as usize;
            if rank < count {
                for _ in 0..rank {
                    word &= word - 1;
                }
                return Some(idx * 64 + word.trailing_zeros() as usize);
            }
            rank -= count;
        }
        None
    }

    /// Number of positions where the two strings differ.
    pub fn hamming(&self, other: &BitString) -> usize {
        assert_eq!(self.len, other.len);
        self.words
            .iter()
            .zip(&other.words)
            .map(|(a, b)| (a ^ b).count_ones() as usize)
            .sum()
    }
}

/// Lexicographic order over `(x_0, x_1, ...)` with `0 < 1`; shorter strings
/// sort first when one is a prefix of the other.
impl Ord for BitString {
    fn cmp(&self, other: &Self) -> Ordering {
        for (a, b) in self.words.iter().zip(&other.words) {
            let diff = a ^ b;
            if diff != 0 {
                let first = diff.trailing_zeros();
                return if (a >> first) & 1 == 0 {
                    Ordering::Less
                } else {
                    Ordering::Greater
                };
            }
        }
        self.len.cmp(&other.len)
    }
}

impl PartialOrd for BitString {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Display for BitString {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for bit in self.iter() {
            f.write_str(if bit { "1" } else { "0" })?;
        }
        Ok(())
    }
}

impl fmt::Debug for BitString {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "BitString({self})")
    }
}

impl std::str::FromStr for BitString {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let mut bits = BitString::zeros(s.len());
        for (i, c) in s.chars().enumerate() {
            match c {
                '0' => {}
                '1' => bits.set(i, true),
                other => return Err(format!("unexpected character {other:?} in bit string")),
            }
        }
        Ok(bits)
    }
}
