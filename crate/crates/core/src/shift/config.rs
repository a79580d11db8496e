//! Finitely presented points of a shift space.

use super::{Alphabet, Symbol, Word};
use crate::error::{Error, Result};

/// The bi-infinite repetition of a non-empty word, with `word[0]` at
/// coordinate 0.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct PeriodicConfig {
    word: Word,
}

impl PeriodicConfig {
    pub fn new(word: impl Into<Word>) -> Self {
        let word = word.into();
        assert!(
            !word.is_empty(),
            "periodic configuration needs a non-empty word"
        );
        PeriodicConfig { word }
    }

    pub fn period(&self) -> usize {
        self.word.len()
    }

    pub fn word(&self) -> &Word {
        &self.word
    }

    pub fn at(&self, i: i64) -> Symbol {
        self.word[i.rem_euclid(self.word.len() as i64) as usize]
    }

    pub fn to_ep(&self) -> EpConfig {
        EpConfig::new(self.word.clone(), Word::empty(), self.word.clone(), 0)
    }
}

/// An eventually periodic configuration `… left left bridge right right …`.
///
/// `offset` is the coordinate of the first bridge symbol (or of the first
/// right symbol when the bridge is empty). The last symbol of `left` sits at
/// `offset - 1`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct EpConfig {
    left: Word,
    bridge: Word,
    right: Word,
    offset: i64,
}

impl EpConfig {
    pub fn new(
        left: impl Into<Word>,
        bridge: impl Into<Word>,
        right: impl Into<Word>,
        offset: i64,
    ) -> Self {
        let (left, bridge, right) = (left.into(), bridge.into(), right.into());
        assert!(
            !left.is_empty() && !right.is_empty(),
            "repeating words of an eventually periodic configuration must be non-empty"
        );
        EpConfig {
            left,
            bridge,
            right,
            offset,
        }
    }

    pub fn left(&self) -> &Word {
        &self.left
    }

    pub fn bridge(&self) -> &Word {
        &self.bridge
    }

    pub fn right(&self) -> &Word {
        &self.right
    }

    pub fn offset(&self) -> i64 {
        self.offset
    }

    /// First coordinate of the right-periodic tail.
    pub fn right_start(&self) -> i64 {
        self.offset + self.bridge.len() as i64
    }

    pub fn at(&self, i: i64) -> Symbol {
        if i < self.offset {
            let l = self.left.len() as i64;
            self.left[(i - self.offset).rem_euclid(l) as usize]
        } else if i < self.right_start() {
            self.bridge[(i - self.offset) as usize]
        } else {
            let r = self.right.len() as i64;
            self.right[(i - self.right_start()).rem_euclid(r) as usize]
        }
    }

    /// Symbols on the coordinates `lo..hi`.
    pub fn slice(&self, lo: i64, hi: i64) -> Vec<Symbol> {
        (lo..hi).map(|i| self.at(i)).collect()
    }

    /// `σ^k(self)`, where `(σx)_i = x_{i+1}`.
    pub fn shift(&self, k: i64) -> EpConfig {
        EpConfig {
            offset: self.offset - k,
            ..self.clone()
        }
    }

    /// Value of the left-periodic extension at coordinate `i`, also past the
    /// bridge.
    fn left_extension(&self, i: i64) -> Symbol {
        let l = self.left.len() as i64;
        self.left[(i - self.offset).rem_euclid(l) as usize]
    }

    /// Normal form: primitive repeating words, the shortest bridge, and the
    /// left tail pushed as far right as possible. Two configurations are equal
    /// as sequences iff their normal forms are equal.
    pub fn normalized(&self) -> EpConfig {
        let mut left = primitive_root(&self.left);
        let mut right = primitive_root(&self.right);
        let mut bridge: Vec<Symbol> = self.bridge.to_vec();
        let mut offset = self.offset;

        // Pull the right tail leftwards over the bridge.
        while let Some(&last) = bridge.last() {
            if last != right[right.len() - 1] {
                break;
            }
            bridge.pop();
            right.rotate_right(1);
        }
        // Push the left tail rightwards over the bridge.
        while let Some(&first) = bridge.first() {
            if first != left[0] {
                break;
            }
            bridge.remove(0);
            left.rotate_left(1);
            offset += 1;
        }

        if bridge.is_empty() {
            let tmp = EpConfig::new(left.clone(), Word::empty(), right.clone(), offset);
            let span = lcm(left.len(), right.len()) as i64;
            let periodic = (offset..offset + span).all(|i| tmp.left_extension(i) == tmp.at(i));
            if periodic && left.len() == right.len() {
                // Fully periodic: anchor the root at coordinate 0.
                let p = left.len() as i64;
                let root: Vec<Symbol> = (0..p).map(|i| tmp.at(i)).collect();
                return EpConfig::new(root.clone(), Word::empty(), root, 0);
            }
            while right[0] == left[0] {
                left.rotate_left(1);
                right.rotate_left(1);
                offset += 1;
            }
        }
        EpConfig::new(left, bridge, right, offset)
    }

    /// Coordinates where the two sequences differ, or `None` when they differ
    /// on infinitely many coordinates.
    pub fn differences(&self, other: &EpConfig) -> Option<Vec<i64>> {
        let lo = self.offset.min(other.offset);
        let hi = self.right_start().max(other.right_start());
        // Below `lo` both are periodic with period `p`; above `hi` with `q`.
        let p = lcm(self.left.len(), other.left.len()) as i64;
        let q = lcm(self.right.len(), other.right.len()) as i64;
        let tails_agree = (lo - p..lo).all(|i| self.at(i) == other.at(i))
            && (hi..hi + q).all(|i| self.at(i) == other.at(i));
        tails_agree.then(|| (lo..hi).filter(|&i| self.at(i) != other.at(i)).collect())
    }

    /// True when both configurations are the same bi-infinite sequence.
    pub fn same_point(&self, other: &EpConfig) -> bool {
        self.normalized() == other.normalized()
    }

    /// `.ep` text: `left=<word> bridge=<word> right=<word> offset=<int>`.
    pub fn to_ep_text(&self, alphabet: &Alphabet) -> String {
        format!(
            "left={} bridge={} right={} offset={}",
            alphabet.format_word(&self.left),
            alphabet.format_word(&self.bridge),
            alphabet.format_word(&self.right),
            self.offset
        )
    }

    pub fn parse_ep_text(text: &str, alphabet: &Alphabet) -> Result<EpConfig> {
        let mut fields: [Option<&str>; 4] = [None; 4];
        for part in text.split_whitespace() {
            let (key, value) = part
                .split_once('=')
                .ok_or_else(|| Error::parse(0, format!("expected key=value, found `{part}`")))?;
            let slot = match key {
                "left" => 0,
                "bridge" => 1,
                "right" => 2,
                "offset" => 3,
                _ => return Err(Error::parse(0, format!("unknown field `{key}`"))),
            };
            if fields[slot].replace(value).is_some() {
                return Err(Error::parse(0, format!("field `{key}` given twice")));
            }
        }
        let [Some(l), b, Some(r), Some(o)] = fields else {
            return Err(Error::parse(0, "`left`, `right` and `offset` are required"));
        };
        let left = alphabet.parse_word(l)?;
        let bridge = alphabet.parse_word(b.unwrap_or(""))?;
        let right = alphabet.parse_word(r)?;
        if left.is_empty() || right.is_empty() {
            return Err(Error::parse(0, "repeating words must be non-empty"));
        }
        let offset = o
            .parse()
            .map_err(|_| Error::parse(0, format!("bad offset `{o}`")))?;
        Ok(EpConfig::new(left, bridge, right, offset))
    }
}

impl From<&PeriodicConfig> for EpConfig {
    fn from(p: &PeriodicConfig) -> Self {
        p.to_ep()
    }
}

fn primitive_root(w: &[Symbol]) -> Vec<Symbol> {
    let n = w.len();
    (1..=n)
        .find(|&p| n.is_multiple_of(p) && (p..n).all(|i| w[i] == w[i - p]))
        .map(|p| w[..p].to_vec())
        .unwrap_or_else(|| w.to_vec())
}

pub(crate) fn gcd(a: usize, b: usize) -> usize {
    if b == 0 {
        a
    } else {
        gcd(b, a % b)
    }
}

pub(crate) fn lcm(a: usize, b: usize) -> usize {
    a / gcd(a, b) * b
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn ep(l: &[usize], b: &[usize], r: &[usize], o: i64) -> EpConfig {
        EpConfig::new(l.to_vec(), b.to_vec(), r.to_vec(), o)
    }

    #[test]
    fn coordinates() {
        let x = ep(&[0], &[1, 1], &[2], 1);
        assert_eq!(x.slice(-1, 5), vec![0, 0, 1, 1, 2, 2]);
        let y = ep(&[0, 1], &[], &[2, 3], 0);
        assert_eq!(y.slice(-4, 4), vec![0, 1, 0, 1, 2, 3, 2, 3]);
    }

    #[test]
    fn shift_moves_coordinates() {
        let x = ep(&[0], &[1], &[2], 0);
        assert_eq!(x.shift(1).at(-1), 1);
        assert_eq!(x.shift(-2).at(2), 1);
    }

    #[test]
    fn normal_form_of_periodic_points() {
        let a = ep(&[0, 1, 0, 1], &[0, 1], &[0, 1], 3).normalized();
        assert_eq!(a, ep(&[1, 0], &[], &[1, 0], 0));
        assert_eq!(a.slice(0, 2), vec![1, 0]);
    }

    #[test]
    fn normal_form_shrinks_bridge() {
        let x = ep(&[0], &[0, 0, 1, 2, 2], &[2], 0).normalized();
        assert_eq!(x, ep(&[0], &[1], &[2], 2));
    }

    #[test]
    fn ep_text_round_trip() {
        let a = Alphabet::new(["0", "1", "2"]).unwrap();
        let x = ep(&[0], &[1, 1], &[2], -3);
        let text = x.to_ep_text(&a);
        assert_eq!(text, "left=0 bridge=1.1 right=2 offset=-3");
        assert_eq!(EpConfig::parse_ep_text(&text, &a).unwrap(), x);
        let empty_bridge = EpConfig::parse_ep_text("left=0 bridge= right=1 offset=0", &a).unwrap();
        assert!(empty_bridge.bridge().is_empty());
        assert!(EpConfig::parse_ep_text("left= right=1 offset=0", &a).is_err());
    }

    fn arb_ep() -> impl Strategy<Value = EpConfig> {
        (
            prop::collection::vec(0usize..2, 1..4),
            prop::collection::vec(0usize..2, 0..5),
            prop::collection::vec(0usize..2, 1..4),
            -4i64..4,
        )
            .prop_map(|(l, b, r, o)| EpConfig::new(l, b, r, o))
    }

    proptest! {
        #[test]
        fn normalization_preserves_the_sequence(x in arb_ep()) {
            let n = x.normalized();
            prop_assert_eq!(x.slice(-30, 30), n.slice(-30, 30));
            prop_assert_eq!(n.normalized(), n.clone());
        }

        #[test]
        fn normal_forms_agree_exactly_on_equal_sequences(x in arb_ep(), y in arb_ep()) {
            // Windows of width 60 around the bridges decide equality for these sizes.
            let equal = x.slice(-40, 40) == y.slice(-40, 40);
            prop_assert_eq!(x.same_point(&y), equal);
        }
    }
}
