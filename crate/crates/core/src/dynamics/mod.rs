//! The shift metric and the asymptotic relations between finitely presented
//! points.

mod shadow;

pub use shadow::{parse_pseudo_orbit, shadow, FinitePseudoOrbit, Tracing};

use std::cmp::Ordering;
use std::fmt;

use crate::analysis::SpectralDecomposition;
use crate::error::{Error, Result};
use crate::shift::config::lcm;
use crate::shift::{EpConfig, Shift};

/// An exact value of the shift metric: `0` or `2^-k`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum MetricValue {
    Zero,
    /// `2^-k`.
    Pow(u32),
}

impl MetricValue {
    pub const ONE: MetricValue = MetricValue::Pow(0);
    pub const HALF: MetricValue = MetricValue::Pow(1);

    pub fn as_f64(self) -> f64 {
        match self {
            MetricValue::Zero => 0.0,
            MetricValue::Pow(k) => 0.5f64.powi(k as i32),
        }
    }

    /// Twice the value, capped at 1.
    pub fn doubled(self) -> MetricValue {
        match self {
            MetricValue::Zero => MetricValue::Zero,
            MetricValue::Pow(k) => MetricValue::Pow(k.saturating_sub(1)),
        }
    }

    /// Half the value.
    pub fn halved(self) -> MetricValue {
        match self {
            MetricValue::Zero => MetricValue::Zero,
            MetricValue::Pow(k) => MetricValue::Pow(k + 1),
        }
    }

    /// Parses `0`, `1` or `2^-k`.
    pub fn parse(text: &str) -> Result<MetricValue> {
        let bad = || Error::parse(0, format!("expected `0` or `2^-k`, found `{text}`"));
        match text.trim() {
            "0" => Ok(MetricValue::Zero),
            "1" => Ok(MetricValue::ONE),
            t => t
                .strip_prefix("2^-")
                .and_then(|k| k.parse().ok())
                .map(MetricValue::Pow)
                .ok_or_else(bad),
        }
    }
}

impl Ord for MetricValue {
    fn cmp(&self, other: &Self) -> Ordering {
        match (self, other) {
            (MetricValue::Zero, MetricValue::Zero) => Ordering::Equal,
            (MetricValue::Zero, _) => Ordering::Less,
            (_, MetricValue::Zero) => Ordering::Greater,
            // Larger exponent, smaller value.
            (MetricValue::Pow(a), MetricValue::Pow(b)) => b.cmp(a),
        }
    }
}

impl PartialOrd for MetricValue {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Display for MetricValue {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            MetricValue::Zero => f.write_str("0"),
            MetricValue::Pow(0) => f.write_str("1"),
            MetricValue::Pow(k) => write!(f, "2^-{k}"),
        }
    }
}

/// `d(u, v) = 2^-n` for the least `n ≥ 0` with `(u_-n, u_n) ≠ (v_-n, v_n)`.
pub fn metric(u: &EpConfig, v: &EpConfig) -> MetricValue {
    if u.same_point(v) {
        return MetricValue::Zero;
    }
    // Beyond `reach` both points are periodic with period dividing `period`
    // on each side, so a disagreement shows up within one more period.
    let reach = [u.offset(), u.right_start(), v.offset(), v.right_start()]
        .iter()
        .map(|c| c.unsigned_abs())
        .max()
        .unwrap_or(0);
    let period = [u.left(), u.right(), v.left(), v.right()]
        .iter()
        .fold(1, |acc, w| lcm(acc, w.len())) as u64;
    (0..=reach + period)
        .find(|&n| {
            let n = n as i64;
            u.at(n) != v.at(n) || u.at(-n) != v.at(-n)
        })
        .map(|n| MetricValue::Pow(n as u32))
        .expect("distinct eventually periodic points differ near their bridges")
}

/// An expansivity constant of every subshift: distinct points have some
/// shifted pair at distance 1, which exceeds `1/2`.
pub fn expansivity_constant(_shift: &Shift) -> MetricValue {
    MetricValue::HALF
}

/// A coordinate where `u` and `v` differ, if any.
pub fn separating_shift(u: &EpConfig, v: &EpConfig) -> Option<i64> {
    let lo = u.offset().min(v.offset());
    let hi = u.right_start().max(v.right_start());
    let p = lcm(u.left().len(), v.left().len()) as i64;
    let q = lcm(u.right().len(), v.right().len()) as i64;
    (lo - p..hi + q).find(|&i| u.at(i) != v.at(i))
}

/// `d(σ^{kn} u, σ^{kn} v) → 0` as `n → ∞` (or `n → -∞` when `forward` is
/// false), tested by the metric at one index past the bridges.
///
/// Past the bridges the pair repeats with period `q`. If the tails agree the
/// distance there is below `2^-q`; otherwise every `q` consecutive
/// coordinates hold a disagreement and the distance is at least `2^-(q-1)`.
fn tends_together(u: &EpConfig, v: &EpConfig, k: i64, forward: bool) -> bool {
    let (edge, q) = if forward {
        (
            u.right_start().max(v.right_start()),
            lcm(u.right().len(), v.right().len()) as i64,
        )
    } else {
        (
            -u.offset().min(v.offset()),
            lcm(u.left().len(), v.left().len()) as i64,
        )
    };
    // Smallest n with k·n ≥ edge + q + 1.
    let n = (edge + q + 1).max(0).div_euclid(k) + 1;
    let step = if forward { k * n } else { -k * n };
    metric(&u.shift(step), &v.shift(step)) < MetricValue::Pow(q as u32)
}

/// Coordinates eventually agree to the right.
pub fn are_stably_equivalent(u: &EpConfig, v: &EpConfig) -> bool {
    tends_together(u, v, 1, true)
}

/// Coordinates eventually agree to the left.
pub fn are_unstably_equivalent(u: &EpConfig, v: &EpConfig) -> bool {
    tends_together(u, v, 1, false)
}

/// The points differ in finitely many coordinates.
pub fn are_homoclinic(u: &EpConfig, v: &EpConfig) -> bool {
    u.differences(v).is_some()
}

/// Homoclinicity under `σ` and under `σ^k`, computed independently.
pub fn homoclinic_f_fk_check(u: &EpConfig, v: &EpConfig, k: usize) -> (bool, bool) {
    assert!(k >= 1, "power must be positive");
    let k = k as i64;
    let fk = tends_together(u, v, k, true) && tends_together(u, v, k, false);
    (are_homoclinic(u, v), fk)
}

/// The recurrent component a point lives in, if its whole path stays in one.
pub fn component_of(shift: &Shift, d: &SpectralDecomposition, x: &EpConfig) -> Option<usize> {
    let lo = x.offset() - x.left().len() as i64;
    let hi = x.right_start() + x.right().len() as i64;
    let mut found = None;
    for i in lo..=hi {
        let c = d.class_of(shift.vertex_at(x, i)?).component;
        if c == usize::MAX || found.is_some_and(|f| f != c) {
            return None;
        }
        found = Some(c);
    }
    found
}
