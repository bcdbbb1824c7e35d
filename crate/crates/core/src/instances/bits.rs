//! Fixed-width bit strings, bit reversal, lowest common ancestors in the
//! binary trie, and hypercube edges.

use std::fmt;
use std::str::FromStr;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// A `width`-bit word; bit 1 is the most significant.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub struct BitString {
    width: u32,
    value: u64,
}

impl BitString {
    pub fn new(width: u32, value: u64) -> Result<Self> {
        if width > 63 || (width < 64 && value >> width != 0) {
            return Err(Error::InvalidParameter(format!("{value} does not fit in {width} bits")));
        }
        Ok(BitString { width, value })
    }

    pub fn width(&self) -> u32 {
        self.width
    }

    pub fn value(&self) -> u64 {
        self.value
    }

    /// Bit `i` counted from the left, starting at 1.
    pub fn bit(&self, i: u32) -> u8 {
        assert!(i >= 1 && i <= self.width, "bit index {i} out of range");
        ((self.value >> (self.width - i)) & 1) as u8
    }

    /// Bits `i..=j` counted from the left.
    pub fn slice(&self, i: u32, j: u32) -> BitString {
        assert!(1 <= i && i <= j + 1 && j <= self.width);
        let len = j + 1 - i;
        let shifted = self.value >> (self.width - j);
        BitString { width: len, value: shifted & ((1u64 << len) - 1) }
    }

    /// `self` followed by `other`.
    pub fn concat(&self, other: &BitString) -> BitString {
        BitString { width: self.width + other.width, value: (self.value << other.width) | other.value }
    }

    fn repeat(bit: u8, width: u32) -> BitString {
        let value = if bit == 1 { (1u64 << width) - 1 } else { 0 };
        BitString { width, value }
    }

    pub fn hamming(&self, other: &BitString) -> u32 {
        (self.value ^ other.value).count_ones()
    }
}

impl fmt::Display for BitString {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for i in 1..=self.width {
            write!(f, "{}", self.bit(i))?;
        }
        Ok(())
    }
}

impl FromStr for BitString {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let width = s.len() as u32;
        if width > 63 {
            return Err(Error::InvalidParameter(format!("bit string too long: {width}")));
        }
        let mut value = 0u64;
        for c in s.chars() {
            value = (value << 1)
                | match c {
                    '0' => 0,
                    '1' => 1,
                    _ => return Err(Error::InvalidParameter(format!("not a bit string: {s:?}"))),
                };
        }
        Ok(BitString { width, value })
    }
}

/// Reverses the bit order of a `gamma`-bit string.
pub fn rev(gamma: u32, x: BitString) -> Result<BitString> {
    if x.width != gamma {
        return Err(Error::WidthMismatch { expected: gamma, got: x.width });
    }
    Ok(BitString { width: gamma, value: rev_value(gamma, x.value) })
}

/// Bit reversal on plain integers in `0..2^gamma`.
pub fn rev_value(gamma: u32, v: u64) -> u64 {
    if gamma == 0 {
        return 0;
    }
    v.reverse_bits() >> (64 - gamma)
}

/// Lowest common ancestor result: the shared prefix before the first
/// differing bit, and the prefix extended by `0 1..1` (floor) and by
/// `1 0..0` (ceiling).
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct Lca {
    pub prefix: BitString,
    pub floor: BitString,
    pub ceil: BitString,
}

pub fn lca_triple(x: BitString, y: BitString) -> Result<Lca> {
    if x.width != y.width {
        return Err(Error::WidthMismatch { expected: x.width, got: y.width });
    }
    if x == y {
        return Err(Error::EqualStrings);
    }
    let gamma = x.width;
    let first_diff = (1..=gamma).find(|&i| x.bit(i) != y.bit(i)).unwrap();
    let prefix = x.slice(1, first_diff - 1);
    let tail = gamma - first_diff;
    let floor = prefix.concat(&BitString::repeat(0, 1)).concat(&BitString::repeat(1, tail));
    let ceil = prefix.concat(&BitString::repeat(1, 1)).concat(&BitString::repeat(0, tail));
    Ok(Lca { prefix, floor, ceil })
}

/// Hypercube edges `(x, x')` with `x < x'` at Hamming distance one.
pub fn hypercube_edges(gamma: u32) -> Vec<(u64, u64)> {
    let k = 1u64 << gamma;
    let mut out = Vec::new();
    for x in 0..k {
        for b in 0..gamma {
            let y = x | (1 << b);
            if y != x {
                out.push((x, y));
            }
        }
    }
    out.sort_unstable();
    out
}

fn lca_of(gamma: u32, x: u64, y: u64) -> Lca {
    lca_triple(BitString { width: gamma, value: x }, BitString { width: gamma, value: y }).unwrap()
}

fn rev_ranges_meet(gamma: u32, a: (u64, u64), b: (u64, u64)) -> bool {
    let (ra0, ra1) = (rev_value(gamma, a.0), rev_value(gamma, a.1));
    let (rb0, rb1) = (rev_value(gamma, b.0), rev_value(gamma, b.1));
    let (lo_a, hi_a) = (ra0.min(ra1), ra0.max(ra1));
    let (lo_b, hi_b) = (rb0.min(rb1), rb0.max(rb1));
    lo_a <= hi_b && lo_b <= hi_a
}

/// Counterexamples over all ordered pairs of distinct hypercube edges to
/// the two disjointness statements: `(same lca, floors inside both ranges)`.
pub fn reversal_disjointness_counterexamples(gamma: u32) -> (usize, usize) {
    let edges = hypercube_edges(gamma);
    edges
        .par_iter()
        .map(|&e| {
            let le = lca_of(gamma, e.0, e.1);
            let mut same_lca = 0;
            let mut floors = 0;
            for &f in &edges {
                if e == f {
                    continue;
                }
                let lf = lca_of(gamma, f.0, f.1);
                let meet = rev_ranges_meet(gamma, e, f);
                if le.prefix == lf.prefix && meet {
                    same_lca += 1;
                }
                let inside = |v: u64| e.0 <= v && v < e.1 && f.0 <= v && v < f.1;
                if inside(le.floor.value) && inside(lf.floor.value) && meet {
                    floors += 1;
                }
            }
            (same_lca, floors)
        })
        .reduce(|| (0, 0), |a, b| (a.0 + b.0, a.1 + b.1))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn bs(s: &str) -> BitString {
        s.parse().unwrap()
    }

    #[test]
    fn reversal_example() {
        assert_eq!(rev(5, bs("00010")).unwrap(), bs("01000"));
        assert_eq!(rev(5, bs("00000")).unwrap(), bs("00000"));
        assert!(rev(4, bs("00010")).is_err());
    }

    #[test]
    fn reversal_is_an_involution() {
        for gamma in 1..=6 {
            for v in 0..(1u64 << gamma) {
                let x = BitString::new(gamma, v).unwrap();
                assert_eq!(rev(gamma, rev(gamma, x).unwrap()).unwrap(), x);
            }
        }
    }

    #[test]
    fn lca_examples() {
        assert_eq!(lca_triple(bs("0100111"), bs("0101010")).unwrap().prefix, bs("010"));
        let l = lca_triple(bs("01001"), bs("01101")).unwrap();
        assert_eq!(l.prefix.width(), 2);
        assert_eq!(l.floor, bs("01011"));
        assert_eq!(l.ceil, bs("01100"));
        let l = lca_triple(bs("0110"), bs("1010")).unwrap();
        assert_eq!(l.prefix.width(), 0);
        assert_eq!(l.floor, bs("0111"));
        assert_eq!(l.ceil, bs("1000"));
        assert_eq!(lca_triple(bs("01"), bs("01")).unwrap_err(), Error::EqualStrings);
    }

    #[test]
    fn display_roundtrip() {
        assert_eq!(bs("00101").to_string(), "00101");
        assert_eq!(bs("").width(), 0);
        assert!("012".parse::<BitString>().is_err());
    }

    #[test]
    fn hypercube_counts() {
        assert_eq!(hypercube_edges(1), vec![(0, 1)]);
        assert_eq!(hypercube_edges(3).len(), 12);
    }
}
