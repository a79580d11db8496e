//! Tracing finite pseudo-orbits by true orbits.

use super::{metric, MetricValue};
use crate::error::{Error, Result};
use crate::shift::{Alphabet, EpConfig, Shift, Symbol};

/// Points `u_0 … u_{N-1}` with `d(u_{n+1}, σ(u_n)) ≤ delta`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FinitePseudoOrbit {
    pub points: Vec<EpConfig>,
    pub delta: MetricValue,
}

impl FinitePseudoOrbit {
    /// Index of the first jump larger than `delta`, if any.
    pub fn first_defect(&self) -> Option<usize> {
        self.points
            .windows(2)
            .position(|w| metric(&w[1], &w[0].shift(1)) > self.delta)
            .map(|i| i + 1)
    }

    /// Largest jump `d(u_{n+1}, σ(u_n))` along the sequence.
    pub fn max_jump(&self) -> MetricValue {
        self.points
            .windows(2)
            .map(|w| metric(&w[1], &w[0].shift(1)))
            .max()
            .unwrap_or(MetricValue::Zero)
    }

    pub fn to_text(&self, alphabet: &Alphabet) -> String {
        let mut s = format!("delta {}\n", self.delta);
        for p in &self.points {
            s.push_str(&p.to_ep_text(alphabet));
            s.push('\n');
        }
        s
    }
}

/// Reads a `delta 2^-k` header followed by one `.ep` line per point. Blank
/// lines and `#` comments are skipped.
pub fn parse_pseudo_orbit(text: &str, alphabet: &Alphabet) -> Result<FinitePseudoOrbit> {
    let mut delta = None;
    let mut points = Vec::new();
    for (i, raw) in text.lines().enumerate() {
        let line_no = i + 1;
        let line = raw.split('#').next().unwrap_or("").trim();
        if line.is_empty() {
            continue;
        }
        if let Some(rest) = line.strip_prefix("delta") {
            if delta.is_some() || !points.is_empty() {
                return Err(Error::parse(
                    line_no,
                    "`delta` must be the first line, given once",
                ));
            }
            delta = Some(MetricValue::parse(rest).map_err(|e| relocate(e, line_no))?);
            continue;
        }
        if delta.is_none() {
            return Err(Error::parse(line_no, "missing `delta 2^-k` header"));
        }
        points.push(EpConfig::parse_ep_text(line, alphabet).map_err(|e| relocate(e, line_no))?);
    }
    let delta = delta.ok_or_else(|| Error::parse(0, "missing `delta 2^-k` header"))?;
    if points.is_empty() {
        return Err(Error::parse(0, "pseudo-orbit has no points"));
    }
    Ok(FinitePseudoOrbit { points, delta })
}

fn relocate(e: Error, line: usize) -> Error {
    match e {
        Error::Parse { message, .. } => Error::Parse { line, message },
        other => Error::parse(line, other.to_string()),
    }
}

/// A tracing point with the distances it achieves.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Tracing {
    pub point: EpConfig,
    pub epsilon: MetricValue,
    /// `d(u_n, σ^n(point))` for every index.
    pub distances: Vec<MetricValue>,
}

/// Finds `x` with `d(u_n, σ^n x) ≤ 2^-k` for every index, where the
/// pseudo-orbit jumps are at most `2^-(k+1)`.
///
/// A jump of at most `2^-(k+1)` makes `u_{n+1}` and `σ(u_n)` agree on
/// `[-k, k]`, so the windows `x[n-k..=n+k] = u_n[-k..=k]` overlap
/// consistently and each `u_n` is within `2^-(k+1)` of `σ^n x`. Every length-2 block of `x` lies inside one pinned window
/// or one tail, so on a 1-step shift `x` is admissible.
pub fn shadow(shift: &Shift, po: &FinitePseudoOrbit, k: u32) -> Result<Tracing> {
    let step = shift.spec().step();
    if step > 1 {
        return Err(Error::NotOneStep(step));
    }
    let epsilon = MetricValue::Pow(k);
    if po.delta > epsilon.halved() {
        return Err(Error::DeltaTooLarge {
            delta: po.delta.to_string(),
            achievable: po.delta.doubled().to_string(),
        });
    }
    for (i, u) in po.points.iter().enumerate() {
        if !shift.spec().admits(u) {
            return Err(Error::InvalidPseudoOrbit(i));
        }
    }
    if let Some(i) = po.first_defect() {
        return Err(Error::InvalidPseudoOrbit(i));
    }

    let k = k as i64;
    let n = po.points.len() as i64;
    let first = &po.points[0];
    let last = &po.points[po.points.len() - 1];
    let lo = (-k).min(first.offset());
    let hi = (n + k).max(n - 1 + last.right_start());
    let value = |j: i64| -> Symbol {
        if j < -k {
            first.at(j)
        } else if j > n - 1 + k {
            last.at(j - (n - 1))
        } else {
            let idx = j.clamp(0, n - 1);
            po.points[idx as usize].at(j - idx)
        }
    };
    let bridge: Vec<Symbol> = (lo..hi).map(value).collect();
    let left = first.slice(lo - first.left().len() as i64, lo);
    let right_from = hi - (n - 1);
    let right = last.slice(right_from, right_from + last.right().len() as i64);
    let point = EpConfig::new(left, bridge, right, lo).normalized();

    if !shift.spec().admits(&point) {
        return Err(Error::Internal("spliced point is not admissible".into()));
    }
    let distances: Vec<MetricValue> = po
        .points
        .iter()
        .enumerate()
        .map(|(i, u)| metric(u, &point.shift(i as i64)))
        .collect();
    if distances.iter().any(|&d| d > epsilon) {
        return Err(Error::Internal("spliced point does not trace".into()));
    }
    Ok(Tracing {
        point,
        epsilon,
        distances,
    })
}
