//! Lower and upper bounds on the assembly index.
//!
//! Lower: `ceil(log2 s) <= l(s) <= a`. Upper: `s - 1` in general, the
//! binary-decomposition bound `Ma_BD` driven by the level cardinalities
//! `Card(S(2^i))`, and the two-piece bound `Ma_2PD` driven by `Card(S(2))`.
//!
//! Where the published closed forms disagree with the counts they are meant to
//! use, both are available and tagged with a [`Variant`].

use std::fmt;
use std::sync::Arc;

use serde::Serialize;

use crate::addition_chains::{binary_powers, ceil_log2, shortest_length};
use crate::error::{Error, Result};
use crate::space_graphs::level2_count;
use crate::space_polyominoes::hooked_block_counts;
use crate::space_strings::{level_cardinality, pow_sat};

/// Which reading of a closed form to evaluate.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
pub enum Variant {
    /// The formula exactly as printed.
    PaperLiteral,
    /// The formula with its level-2 count replaced by the enumerated count.
    DerivedCount,
}

impl Variant {
    pub fn label(self) -> &'static str {
        match self {
            Variant::PaperLiteral => "paper-literal",
            Variant::DerivedCount => "derived-count",
        }
    }
}

impl fmt::Display for Variant {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.label())
    }
}

/// `(ceil(log2 s), s - 1)`.
pub fn coarse_bounds(s: u64) -> Result<(u64, u64)> {
    if s == 0 {
        return Err(Error::InvalidArgument("size must be positive".into()));
    }
    Ok((ceil_log2(s) as u64, s - 1))
}

/// `l(s)`, the lower bound shared by every assembly space.
pub fn universal_lower(s: u64) -> Result<u64> {
    Ok(shortest_length(s)? as u64)
}

/// `i -> Card(S(2^i))` for one space.
#[derive(Clone)]
pub struct LevelProfile {
    label: String,
    card: Arc<dyn Fn(u32) -> u128 + Send + Sync>,
}

impl fmt::Debug for LevelProfile {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("LevelProfile").field("label", &self.label).finish()
    }
}

impl LevelProfile {
    pub fn new(label: impl Into<String>, card: impl Fn(u32) -> u128 + Send + Sync + 'static) -> Self {
        Self {
            label: label.into(),
            card: Arc::new(card),
        }
    }

    /// Directed or undirected `j`-strings.
    pub fn strings(j: u64, directed: bool) -> Result<Self> {
        if j == 0 {
            return Err(Error::InvalidArgument("alphabet must be non-empty".into()));
        }
        let label = format!("strings-{}{j}", if directed { "d" } else { "u" });
        Ok(Self::new(label, move |i| {
            if i >= 128 {
                return if j == 1 { 1 } else { u128::MAX };
            }
            level_cardinality(j, 1u64 << i, directed).expect("positive arguments")
        }))
    }

    /// Known counts `counts[i] = Card(S(2^i))`; levels past the end saturate.
    pub fn from_counts(label: impl Into<String>, counts: Vec<u128>) -> Self {
        Self::new(label, move |i| {
            counts.get(i as usize).copied().unwrap_or(u128::MAX)
        })
    }

    pub fn label(&self) -> &str {
        &self.label
    }

    /// `Card(S(2^i))`.
    pub fn card(&self, i: u32) -> u128 {
        (self.card)(i)
    }

    /// Whether the profile is non-decreasing on `0..=up_to`.
    pub fn is_monotone(&self, up_to: u32) -> bool {
        (0..up_to).all(|i| self.card(i) <= self.card(i + 1))
    }
}

fn pow2(e: u32) -> u128 {
    if e >= 128 {
        u128::MAX
    } else {
        1u128 << e
    }
}

/// The critical level `c(n)`: least `i` in `[0, n-1]` with
/// `2^i >= Card(S(2^(n-i)))`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct CriticalLevel {
    pub n: u32,
    pub c: u32,
    /// Set when no `i` in `[0, n-1]` qualifies; `c` is then `n`.
    pub flagged: bool,
}

pub fn critical_level(n: u32, profile: &LevelProfile) -> Result<CriticalLevel> {
    if n == 0 {
        return Err(Error::InvalidArgument("n must be positive".into()));
    }
    let found = (0..n).find(|&i| pow2(i) >= profile.card(n - i));
    Ok(CriticalLevel {
        n,
        c: found.unwrap_or(n),
        flagged: found.is_none(),
    })
}

/// `sum_j floor(2^(n_j - i))`, with terms for `i > n_j` equal to 0.
fn floored_sum(powers: &[u32], i: u32) -> u128 {
    powers
        .iter()
        .filter(|&&p| p >= i)
        .map(|&p| pow2(p - i))
        .sum()
}

fn require_size(s: u64) -> Result<()> {
    if s < 2 {
        return Err(Error::InvalidArgument(format!("size must be at least 2, got {s}")));
    }
    Ok(())
}

/// `Ma_BD(s) = min(s - 1, (H(s) - 1) + sum_{i=1}^{n_1} min(sum_j floor(2^(n_j - i)), Card(S(2^i))))`.
pub fn ma_bd(s: u64, profile: &LevelProfile) -> Result<u64> {
    require_size(s)?;
    let b = binary_powers(s)?;
    let mut g = (b.hamming_weight - 1) as u128;
    for i in 1..=b.leading() {
        g = g.saturating_add(floored_sum(&b.powers, i).min(profile.card(i)));
    }
    Ok(g.min((s - 1) as u128) as u64)
}

/// The power-of-two form `sum_{i=1}^{n} min(2^(n-i), Card(S(2^i)))` for `s = 2^n`.
pub fn ma_bd_lemma(n: u32, profile: &LevelProfile) -> Result<u64> {
    if n == 0 || n >= 64 {
        return Err(Error::InvalidArgument(format!("exponent {n} out of range")));
    }
    let total: u128 = (1..=n).map(|i| pow2(n - i).min(profile.card(i))).sum();
    Ok(total as u64)
}

/// The power-of-two form via the critical level:
/// `2^c(n) - 1 + sum_{i=1}^{n-c(n)} Card(S(2^i))`.
pub fn ma_bd_critical(n: u32, profile: &LevelProfile) -> Result<u64> {
    if n == 0 || n >= 64 {
        return Err(Error::InvalidArgument(format!("exponent {n} out of range")));
    }
    let c = critical_level(n, profile)?.c;
    let mut total = pow2(c) - 1;
    for i in 1..=n - c {
        total = total.saturating_add(profile.card(i));
    }
    Ok(total.min(u64::MAX as u128) as u64)
}

/// `Ma_BD` with the sum split at the critical level of the leading power:
/// the levels up to `n_1 - c(n_1)` contribute their full cardinality.
pub fn ma_bd_split(s: u64, profile: &LevelProfile) -> Result<u64> {
    require_size(s)?;
    let b = binary_powers(s)?;
    let n1 = b.leading();
    let c = critical_level(n1, profile)?.c;
    let mut g = (b.hamming_weight - 1) as u128;
    for i in 1..=n1 - c {
        g = g.saturating_add(profile.card(i));
    }
    for k in 1..=c {
        let level = n1 - c + k;
        g = g.saturating_add(floored_sum(&b.powers, level).min(profile.card(level)));
    }
    Ok(g.min((s - 1) as u128) as u64)
}

/// Closed-form `Ma` for `j`-strings, written out with the string
/// cardinalities `j^(2^i)` (directed) or `(j^(2^i) + j^(2^(i-1))) / 2`
/// (undirected) instead of a profile.
pub fn ma_strings(s: u64, j: u64, directed: bool) -> Result<u64> {
    require_size(s)?;
    if j == 0 {
        return Err(Error::InvalidArgument("alphabet must be non-empty".into()));
    }
    let card = |i: u32| -> u128 {
        let k = if i >= 64 { u64::MAX } else { 1u64 << i };
        let full = pow_sat(j as u128, k);
        if directed || i == 0 {
            full
        } else {
            let half = pow_sat(j as u128, k / 2);
            if full == u128::MAX {
                u128::MAX
            } else {
                (full + half) / 2
            }
        }
    };
    let b = binary_powers(s)?;
    let n1 = b.leading();
    // c(n1): first i with 2^i - Card(S(2^(n1-i))) >= 0.
    let c = (0..n1).find(|&i| pow2(i) >= card(n1 - i)).unwrap_or(n1);
    let mut g = (b.hamming_weight - 1) as u128;
    for i in 1..=n1 - c {
        g = g.saturating_add(card(i));
    }
    for k in 1..=c {
        let level = n1 - c + k;
        // sum_i floor(2^(n_i - level)) is the integer part of s / 2^level.
        let pieces = (s >> level) as u128;
        g = g.saturating_add(pieces.min(card(level)));
    }
    Ok(g.min((s - 1) as u128) as u64)
}

/// `Ma_2PD(s) = min(floor(s/2), Card(S(2))) + ceil(s/2) - 1`.
pub fn ma_2pd(s: u64, card_s2: u64) -> Result<u64> {
    require_size(s)?;
    if card_s2 == 0 {
        return Err(Error::Degenerate(
            "Card(S(2)) = 0 leaves no size-2 pieces to pair".into(),
        ));
    }
    Ok((s / 2).min(card_s2) + s.div_ceil(2) - 1)
}

/// Two-piece bound for coloured connected graphs. The printed formula counts
/// `C(colors, 2)` size-2 graphs, which is zero for one colour; the derived
/// variant uses all `colors + C(colors, 2)` of them.
pub fn ma_ccg(s: u64, colors: u64, variant: Variant) -> Result<u64> {
    if colors == 0 {
        return Err(Error::InvalidArgument("colors must be positive".into()));
    }
    let card = match variant {
        Variant::PaperLiteral => colors * (colors - 1) / 2,
        Variant::DerivedCount => level2_count(colors)?,
    };
    ma_2pd(s, card).map_err(|e| match e {
        Error::Degenerate(_) => Error::Degenerate(format!(
            "paper-literal CCG bound uses C({colors},2) = 0 size-2 graphs"
        )),
        other => other,
    })
}

/// Polyomino bound over the skeleton decomposition:
/// `min(floor((s-1)/2), F) + ceil((s-1)/2) - 1 + 1`, with
/// `F = 2(colors + C(colors,2))` as printed, or the sum of the two
/// hooked-block counts.
pub fn ma_poly(s: u64, colors: u64, variant: Variant) -> Result<u64> {
    require_size(s)?;
    if colors == 0 {
        return Err(Error::InvalidArgument("colors must be positive".into()));
    }
    let f = match variant {
        Variant::PaperLiteral => 2 * (colors + colors * (colors - 1) / 2),
        Variant::DerivedCount => {
            let (a, b) = hooked_block_counts(colors)?;
            a + b
        }
    };
    let edges = s - 1;
    Ok((edges / 2).min(f) + edges.div_ceil(2) - 1 + 1)
}

/// Every bound known for one object.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct BoundBracket {
    pub size: u64,
    pub lower_coarse: u64,
    pub lower: u64,
    pub exact: Option<u64>,
    pub upper_ma: u64,
    pub upper_coarse: u64,
}

impl BoundBracket {
    pub fn new(size: u64, exact: Option<u64>, upper_ma: u64) -> Result<Self> {
        let (lower_coarse, upper_coarse) = coarse_bounds(size)?;
        Ok(Self {
            size,
            lower_coarse,
            lower: universal_lower(size)?,
            exact,
            upper_ma,
            upper_coarse,
        })
    }

    /// Checks `lower_coarse <= lower <= exact <= upper_ma <= upper_coarse`.
    pub fn check(&self) -> std::result::Result<(), String> {
        let mut chain = vec![("lower_coarse", self.lower_coarse), ("lower", self.lower)];
        if let Some(a) = self.exact {
            chain.push(("exact", a));
        }
        chain.push(("upper_ma", self.upper_ma));
        chain.push(("upper_coarse", self.upper_coarse));
        for w in chain.windows(2) {
            if w[0].1 > w[1].1 {
                return Err(format!(
                    "{} = {} exceeds {} = {} at size {}",
                    w[0].0, w[0].1, w[1].0, w[1].1, self.size
                ));
            }
        }
        Ok(())
    }
}
