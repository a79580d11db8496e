use num_bigint::{BigInt, BigUint};
use num_traits::{One, Zero};

use crate::shift::EdgePresentation;

/// Square matrix counting edges between vertices.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct AdjacencyMatrix {
    n: usize,
    entries: Vec<BigUint>,
}

impl AdjacencyMatrix {
    pub fn from_presentation(p: &EdgePresentation) -> Self {
        Self::from_pairs(
            p.vertex_count(),
            p.edges().iter().map(|e| (e.source, e.target)),
        )
    }

    pub fn from_pairs(n: usize, edges: impl IntoIterator<Item = (usize, usize)>) -> Self {
        let mut entries = vec![BigUint::zero(); n * n];
        for (s, t) in edges {
            entries[s * n + t] += 1u32;
        }
        AdjacencyMatrix { n, entries }
    }

    fn identity(n: usize) -> Self {
        let mut entries = vec![BigUint::zero(); n * n];
        for i in 0..n {
            entries[i * n + i] = BigUint::one();
        }
        AdjacencyMatrix { n, entries }
    }

    pub fn dim(&self) -> usize {
        self.n
    }

    pub fn get(&self, i: usize, j: usize) -> &BigUint {
        &self.entries[i * self.n + j]
    }

    pub fn mul(&self, other: &AdjacencyMatrix) -> AdjacencyMatrix {
        let n = self.n;
        let mut entries = vec![BigUint::zero(); n * n];
        for i in 0..n {
            for k in 0..n {
                let a = &self.entries[i * n + k];
                if a.is_zero() {
                    continue;
                }
                for j in 0..n {
                    let b = &other.entries[k * n + j];
                    if !b.is_zero() {
                        entries[i * n + j] += a * b;
                    }
                }
            }
        }
        AdjacencyMatrix { n, entries }
    }

    pub fn pow(&self, mut k: u32) -> AdjacencyMatrix {
        let mut result = AdjacencyMatrix::identity(self.n);
        let mut base = self.clone();
        while k > 0 {
            if k & 1 == 1 {
                result = result.mul(&base);
            }
            k >>= 1;
            if k > 0 {
                base = base.mul(&base);
            }
        }
        result
    }

    pub fn trace(&self) -> BigUint {
        (0..self.n).map(|i| self.get(i, i)).sum()
    }
}

/// Number of points of period dividing `n` (`trace(A^n)`).
pub fn count_periodic(p: &EdgePresentation, n: u32) -> BigUint {
    assert!(n >= 1, "period must be positive");
    AdjacencyMatrix::from_presentation(p).pow(n).trace()
}

/// Number of points of least period exactly `n`, by Möbius inversion of the
/// trace counts. Convenience only; the rest of the crate uses
/// [`count_periodic`].
pub fn count_least_period(p: &EdgePresentation, n: u32) -> BigUint {
    assert!(n >= 1, "period must be positive");
    let a = AdjacencyMatrix::from_presentation(p);
    let mut total = BigInt::zero();
    for d in (1..=n).filter(|d| n.is_multiple_of(*d)) {
        match mobius(n / d) {
            0 => {}
            mu => total += BigInt::from(mu) * BigInt::from(a.pow(d).trace()),
        }
    }
    total
        .to_biguint()
        .expect("least-period count is non-negative")
}

fn mobius(mut n: u32) -> i32 {
    let mut result = 1;
    let mut f = 2;
    while f * f <= n {
        if n.is_multiple_of(f) {
            n /= f;
            if n.is_multiple_of(f) {
                return 0;
            }
            result = -result;
        }
        f += 1;
    }
    if n > 1 {
        result = -result;
    }
    result
}
