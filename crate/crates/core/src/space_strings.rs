//! Directed and undirected `j`-strings glued by concatenation.
//!
//! A directed string is its symbol sequence. An undirected string is the class
//! of a sequence and its reverse, represented by the lexicographically smaller
//! of the two.

use std::fmt;

use serde::Serialize;

use crate::assembly_core::{full_mask, AssemblySpace};
use crate::error::{Error, Result};

/// A non-empty string over the alphabet `{0, ..., alphabet - 1}`.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
pub struct JString {
    pub alphabet: u8,
    pub symbols: Vec<u8>,
}

impl JString {
    pub fn new(alphabet: u8, symbols: Vec<u8>) -> Result<Self> {
        let s = Self { alphabet, symbols };
        s.check()?;
        Ok(s)
    }

    /// `symbol` repeated `n` times.
    pub fn repeated(alphabet: u8, symbol: u8, n: usize) -> Result<Self> {
        Self::new(alphabet, vec![symbol; n])
    }

    pub fn check(&self) -> Result<()> {
        if self.alphabet == 0 {
            return Err(Error::InvalidObject("alphabet must be non-empty".into()));
        }
        if self.symbols.is_empty() {
            return Err(Error::InvalidObject("empty string".into()));
        }
        if let Some(&s) = self.symbols.iter().find(|&&s| s >= self.alphabet) {
            return Err(Error::InvalidObject(format!(
                "symbol {s} outside alphabet of size {}",
                self.alphabet
            )));
        }
        Ok(())
    }

    pub fn len(&self) -> usize {
        self.symbols.len()
    }

    pub fn is_empty(&self) -> bool {
        self.symbols.is_empty()
    }

    pub fn reversed(&self) -> Self {
        let mut symbols = self.symbols.clone();
        symbols.reverse();
        Self {
            alphabet: self.alphabet,
            symbols,
        }
    }

    /// Representative of the undirected class: the smaller of `self` and its reverse.
    pub fn undirected_canonical(&self) -> Self {
        let rev = self.reversed();
        if rev.symbols < self.symbols {
            rev
        } else {
            self.clone()
        }
    }

    pub fn concat(&self, other: &Self) -> Self {
        let mut symbols = self.symbols.clone();
        symbols.extend_from_slice(&other.symbols);
        Self {
            alphabet: self.alphabet,
            symbols,
        }
    }

    /// Parses digits (`alphabet <= 10`) or comma-separated integers.
    pub fn parse(alphabet: u8, text: &str) -> Result<Self> {
        let text = text.trim();
        let symbols: Vec<u8> = if alphabet <= 10 && !text.contains(',') {
            text.chars()
                .map(|c| {
                    c.to_digit(10)
                        .map(|d| d as u8)
                        .ok_or_else(|| Error::Parse(format!("'{c}' is not a digit")))
                })
                .collect::<Result<_>>()?
        } else {
            text.split(',')
                .map(|t| {
                    t.trim()
                        .parse::<u8>()
                        .map_err(|_| Error::Parse(format!("'{t}' is not a symbol")))
                })
                .collect::<Result<_>>()?
        };
        Self::new(alphabet, symbols).map_err(|e| Error::Parse(e.to_string()))
    }
}

impl fmt::Display for JString {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.alphabet <= 10 {
            for &s in &self.symbols {
                write!(f, "{s}")?;
            }
            Ok(())
        } else {
            let parts: Vec<String> = self.symbols.iter().map(|s| s.to_string()).collect();
            f.write_str(&parts.join(","))
        }
    }
}

fn same_alphabet(a: &JString, b: &JString) -> Result<()> {
    if a.alphabet != b.alphabet {
        return Err(Error::PaletteMismatch {
            left: a.alphabet as usize,
            right: b.alphabet as usize,
        });
    }
    Ok(())
}

fn sorted_dedup(mut v: Vec<JString>) -> Vec<JString> {
    v.sort();
    v.dedup();
    v
}

/// `{s1 s2, s2 s1}`.
pub fn glue_directed(s1: &JString, s2: &JString) -> Result<Vec<JString>> {
    same_alphabet(s1, s2)?;
    Ok(sorted_dedup(vec![s1.concat(s2), s2.concat(s1)]))
}

/// The four concatenations of `s1` or its reverse with `s2` or its reverse,
/// each reduced to its undirected representative.
pub fn glue_undirected(s1: &JString, s2: &JString) -> Result<Vec<JString>> {
    same_alphabet(s1, s2)?;
    let (r1, r2) = (s1.reversed(), s2.reversed());
    Ok(sorted_dedup(
        [s1.concat(s2), r1.concat(s2), s1.concat(&r2), r1.concat(&r2)]
            .iter()
            .map(JString::undirected_canonical)
            .collect(),
    ))
}

/// Saturating `base^exp` in `u128`.
pub(crate) fn pow_sat(base: u128, exp: u64) -> u128 {
    let mut result: u128 = 1;
    for _ in 0..exp {
        result = result.saturating_mul(base);
        if result == u128::MAX || base <= 1 {
            break;
        }
    }
    result
}

/// Number of strings of length `k`: `j^k` directed, `(j^k + j^ceil(k/2)) / 2`
/// undirected. Saturates at `u128::MAX`.
pub fn level_cardinality(j: u64, k: u64, directed: bool) -> Result<u128> {
    if j == 0 || k == 0 {
        return Err(Error::InvalidArgument("j and k must be positive".into()));
    }
    let all = pow_sat(j as u128, k);
    if directed {
        return Ok(all);
    }
    let palindromes = pow_sat(j as u128, k.div_ceil(2));
    if all == u128::MAX {
        return Ok(u128::MAX);
    }
    Ok((all + palindromes) / 2)
}

/// The space of `j`-strings, directed or undirected.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct StringSpace {
    pub alphabet: u8,
    pub directed: bool,
}

impl StringSpace {
    pub fn directed(alphabet: u8) -> Self {
        Self {
            alphabet,
            directed: true,
        }
    }

    pub fn undirected(alphabet: u8) -> Self {
        Self {
            alphabet,
            directed: false,
        }
    }

    /// Parses and canonicalizes a string of this space.
    pub fn parse(&self, text: &str) -> Result<JString> {
        Ok(self.canonical(&JString::parse(self.alphabet, text)?))
    }

    fn substring(&self, x: &JString, lo: usize, hi: usize) -> JString {
        self.canonical(&JString {
            alphabet: x.alphabet,
            symbols: x.symbols[lo..hi].to_vec(),
        })
    }
}

impl AssemblySpace for StringSpace {
    type Object = JString;

    fn id(&self) -> String {
        format!(
            "strings-{}{}",
            if self.directed { "d" } else { "u" },
            self.alphabet
        )
    }

    fn building_blocks(&self) -> Vec<JString> {
        (0..self.alphabet)
            .map(|s| JString {
                alphabet: self.alphabet,
                symbols: vec![s],
            })
            .collect()
    }

    fn size(&self, x: &JString) -> usize {
        x.len()
    }

    fn validate(&self, x: &JString) -> Result<()> {
        x.check()?;
        if x.alphabet != self.alphabet {
            return Err(Error::PaletteMismatch {
                left: self.alphabet as usize,
                right: x.alphabet as usize,
            });
        }
        Ok(())
    }

    fn canonical(&self, x: &JString) -> JString {
        if self.directed {
            x.clone()
        } else {
            x.undirected_canonical()
        }
    }

    fn code(&self, x: &JString) -> String {
        x.to_string()
    }

    fn glue(&self, x: &JString, y: &JString) -> Result<Vec<JString>> {
        self.validate(x)?;
        self.validate(y)?;
        if self.directed {
            glue_directed(x, y)
        } else {
            glue_undirected(x, y)
        }
    }

    fn level_cardinality(&self, k: usize) -> Option<u128> {
        level_cardinality(self.alphabet as u64, k as u64, self.directed).ok()
    }

    fn enumerate(&self, k: usize) -> Result<Vec<JString>> {
        let j = self.alphabet as u128;
        let total = pow_sat(j, k as u64);
        if k == 0 || total > 1 << 26 {
            return Err(Error::InvalidArgument(format!(
                "refusing to enumerate strings of length {k}"
            )));
        }
        let mut out = Vec::new();
        for mut code in 0..total {
            let mut symbols = vec![0u8; k];
            for slot in symbols.iter_mut().rev() {
                *slot = (code % j) as u8;
                code /= j;
            }
            let s = JString {
                alphabet: self.alphabet,
                symbols,
            };
            if self.directed || s.undirected_canonical() == s {
                out.push(s);
            }
        }
        Ok(out)
    }

    fn embeds(&self, target: &JString, piece: &JString) -> bool {
        let contains = |p: &[u8]| {
            p.len() <= target.len() && target.symbols.windows(p.len()).any(|w| w == p)
        };
        contains(&piece.symbols) || (!self.directed && contains(&piece.reversed().symbols))
    }

    fn adjacency(&self, x: &JString) -> Vec<u64> {
        let n = x.len();
        (0..n)
            .map(|i| {
                let mut m = 0u64;
                if i > 0 {
                    m |= 1 << (i - 1);
                }
                if i + 1 < n {
                    m |= 1 << (i + 1);
                }
                m
            })
            .collect()
    }

    fn sub_object(&self, x: &JString, mask: u64) -> JString {
        let lo = mask.trailing_zeros() as usize;
        let hi = 64 - mask.leading_zeros() as usize;
        debug_assert_eq!(mask, full_mask(hi) & !full_mask(lo), "parts of strings are contiguous");
        self.substring(x, lo, hi)
    }

    /// Prefix/suffix cuts of a contiguous part.
    fn splits(&self, _x: &JString, part: u64) -> Vec<(u64, u64)> {
        let lo = part.trailing_zeros() as usize;
        let hi = 64 - part.leading_zeros() as usize;
        (lo + 1..hi)
            .map(|cut| {
                let left = full_mask(cut) & part;
                (left, part & !left)
            })
            .collect()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::assembly_core::{assembly_index, connected_splits};
    use crate::addition_chains::shortest_length;
    use proptest::prelude::*;
    use std::collections::BTreeSet;

    fn s(text: &str) -> JString {
        JString::parse(2, text).unwrap()
    }

    fn texts(v: Vec<JString>) -> Vec<String> {
        v.iter().map(|x| x.to_string()).collect()
    }

    #[test]
    fn directed_glue_concatenates_both_ways() {
        assert_eq!(
            texts(glue_directed(&s("0010010"), &s("011101101")).unwrap()),
            vec!["0010010011101101", "0111011010010010"]
        );
        assert_eq!(texts(glue_directed(&s("0"), &s("0")).unwrap()), vec!["00"]);
        assert_eq!(texts(glue_directed(&s("01"), &s("01")).unwrap()), vec!["0101"]);
    }

    #[test]
    fn undirected_glue_has_the_four_concatenations() {
        let got: BTreeSet<JString> = glue_undirected(&s("01"), &s("110")).unwrap().into_iter().collect();
        let want: BTreeSet<JString> = ["01110", "10110", "01011", "10011"]
            .iter()
            .map(|t| s(t).undirected_canonical())
            .collect();
        assert_eq!(got, want);
        assert_eq!(texts(glue_undirected(&s("0"), &s("0")).unwrap()), vec!["00"]);
        let got: BTreeSet<JString> = glue_undirected(&s("00"), &s("01")).unwrap().into_iter().collect();
        let want: BTreeSet<JString> =
            ["0001", "0010"].iter().map(|t| s(t).undirected_canonical()).collect();
        assert_eq!(got, want);
    }

    #[test]
    fn glue_rejects_mixed_alphabets() {
        let a = JString::parse(2, "01").unwrap();
        let b = JString::parse(3, "02").unwrap();
        assert_eq!(
            glue_directed(&a, &b),
            Err(Error::PaletteMismatch { left: 2, right: 3 })
        );
        assert!(glue_undirected(&a, &b).is_err());
    }

    #[test]
    fn level_cardinality_examples() {
        assert_eq!(level_cardinality(2, 2, true).unwrap(), 4);
        assert_eq!(level_cardinality(2, 2, false).unwrap(), 3);
        assert_eq!(level_cardinality(2, 4, false).unwrap(), 10);
        assert_eq!(level_cardinality(2, 1, false).unwrap(), 2);
        assert_eq!(level_cardinality(2, 200, true).unwrap(), u128::MAX);
        assert!(level_cardinality(0, 2, true).is_err());
    }

    #[test]
    fn level_cardinality_matches_brute_force() {
        for j in 1..=3u8 {
            for k in 1..=6usize {
                for directed in [true, false] {
                    // Brute force independent of `enumerate`: all sequences,
                    // identified with their reverse when undirected.
                    let mut seen = BTreeSet::new();
                    let total = (j as usize).pow(k as u32);
                    for mut c in 0..total {
                        let mut v = Vec::new();
                        for _ in 0..k {
                            v.push((c % j as usize) as u8);
                            c /= j as usize;
                        }
                        let mut r = v.clone();
                        r.reverse();
                        seen.insert(if directed { v } else { v.min(r) });
                    }
                    let space = StringSpace { alphabet: j, directed };
                    assert_eq!(
                        level_cardinality(j as u64, k as u64, directed).unwrap(),
                        seen.len() as u128
                    );
                    assert_eq!(space.enumerate(k).unwrap().len(), seen.len());
                }
            }
        }
    }

    #[test]
    fn parse_and_display() {
        assert_eq!(s("0010").symbols, vec![0, 0, 1, 0]);
        let wide = JString::parse(12, "11,0,3").unwrap();
        assert_eq!(wide.symbols, vec![11, 0, 3]);
        assert_eq!(wide.to_string(), "11,0,3");
        assert!(JString::parse(2, "012").is_err());
        assert!(JString::parse(2, "").is_err());
        assert!(JString::parse(2, "0a").is_err());
    }

    #[test]
    fn prefix_suffix_splits_match_generic_splits() {
        let space = StringSpace::directed(2);
        let x = s("0110100");
        let adj = space.adjacency(&x);
        for part in [0b1111111u64, 0b0011100, 0b0000011] {
            assert_eq!(space.splits(&x, part), connected_splits(&adj, part));
        }
    }

    #[test]
    fn embeds_is_substring_check() {
        let d = StringSpace::directed(2);
        let u = StringSpace::undirected(2);
        assert!(d.embeds(&s("00101"), &s("010")));
        assert!(!d.embeds(&s("0011"), &s("10")));
        assert!(u.embeds(&s("0011"), &s("10")));
        assert!(!d.embeds(&s("01"), &s("010")));
    }

    #[test]
    fn building_block_multiset_counts_symbols() {
        let space = StringSpace::directed(2);
        let counts = space.building_block_multiset(&s("0010"));
        assert_eq!(counts.get(&s("0")), Some(&3));
        assert_eq!(counts.get(&s("1")), Some(&1));
    }

    #[test]
    fn monochromatic_strings_follow_shortest_chains() {
        let space = StringSpace::directed(2);
        for n in 1..=16usize {
            let target = JString::repeated(2, 0, n).unwrap();
            let a = assembly_index(&space, &target, 1_000_000).unwrap().index;
            assert_eq!(a as u32, shortest_length(n as u64).unwrap(), "n = {n}");
        }
    }

    proptest! {
        #[test]
        fn undirected_canonical_is_idempotent(v in prop::collection::vec(0u8..3, 1..20)) {
            let x = JString::new(3, v).unwrap();
            let c = x.undirected_canonical();
            prop_assert_eq!(c.undirected_canonical(), c.clone());
            prop_assert_eq!(x.reversed().undirected_canonical(), c);
        }

        #[test]
        fn glue_is_additive_and_symmetric(
            a in prop::collection::vec(0u8..2, 1..10),
            b in prop::collection::vec(0u8..2, 1..10),
            directed in any::<bool>(),
        ) {
            let space = StringSpace { alphabet: 2, directed };
            let x = space.canonical(&JString::new(2, a).unwrap());
            let y = space.canonical(&JString::new(2, b).unwrap());
            let xy = space.glue(&x, &y).unwrap();
            prop_assert_eq!(&xy, &space.glue(&y, &x).unwrap());
            for z in &xy {
                prop_assert_eq!(z.len(), x.len() + y.len());
                prop_assert_eq!(&space.canonical(z), z);
            }
        }
    }
}
