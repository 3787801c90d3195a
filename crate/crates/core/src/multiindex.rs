//! Multi-indices and exact derivatives of monomials.

use std::fmt;

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

/// Exponent vector `α ∈ ℕⁿ` of a monomial `z^α = z₁^α₁ ⋯ zₙ^αₙ`.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(transparent)]
pub struct MultiIndex(Vec<u32>);

impl MultiIndex {
    /// Panics if `entries` is empty; the dimension is always at least one.
    pub fn new(entries: Vec<u32>) -> Self {
        assert!(!entries.is_empty(), "multi-index needs n >= 1");
        Self(entries)
    }

    pub fn zero(n: usize) -> Self {
        Self::new(vec![0; n])
    }

    pub fn unit(n: usize, j: usize) -> Self {
        let mut e = vec![0; n];
        e[j] = 1;
        Self::new(e)
    }

    pub fn entries(&self) -> &[u32] {
        &self.0
    }

    pub fn dim(&self) -> usize {
        self.0.len()
    }

    pub fn degree(&self) -> u32 {
        self.0.iter().sum()
    }

    pub fn plus(&self, other: &MultiIndex) -> MultiIndex {
        debug_assert_eq!(self.dim(), other.dim());
        MultiIndex(self.0.iter().zip(&other.0).map(|(a, b)| a + b).collect())
    }

    /// `α!` as a float.
    pub fn factorial(&self) -> f64 {
        self.0.iter().map(|&a| (1..=a).map(f64::from).product::<f64>()).product()
    }

    /// `true` when `a ≤ α` componentwise.
    pub fn dominates(&self, a: &MultiIndex) -> bool {
        self.0.iter().zip(&a.0).all(|(x, y)| x >= y)
    }
}

impl fmt::Debug for MultiIndex {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(")?;
        for (i, a) in self.0.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{a}")?;
        }
        write!(f, ")")
    }
}

/// All multi-indices of total degree exactly `d`, lexicographically
/// descending: `(d,0,…) , (d−1,1,…) , … , (…,0,d)`.
pub fn enumerate_degree(n: usize, d: u32) -> Vec<MultiIndex> {
    fn rec(n: usize, d: u32, prefix: &mut Vec<u32>, out: &mut Vec<MultiIndex>) {
        if prefix.len() + 1 == n {
            prefix.push(d);
            out.push(MultiIndex(prefix.clone()));
            prefix.pop();
            return;
        }
        for first in (0..=d).rev() {
            prefix.push(first);
            rec(n, d - first, prefix, out);
            prefix.pop();
        }
    }
    assert!(n >= 1);
    let mut out = Vec::new();
    rec(n, d, &mut Vec::with_capacity(n), &mut out);
    out
}

/// All `α` with `|α| ≤ max_degree` in graded-lexicographic order.
///
/// The order is prefix-stable: enumerating to a larger degree only appends.
pub fn multiindex_enumerate(n: usize, max_degree: u32) -> Vec<MultiIndex> {
    (0..=max_degree).flat_map(|d| enumerate_degree(n, d)).collect()
}

/// `C(N+n, n)`, the number of monomials of degree at most `N` in `n` variables.
pub fn basis_count(n: usize, max_degree: u32) -> usize {
    let (n, big) = (n as u128, max_degree as u128);
    let mut c: u128 = 1;
    for k in 1..=n {
        c = c * (big + k) / k;
    }
    c as usize
}

fn falling_factorial(alpha: u32, a: u32) -> f64 {
    (0..a).map(|i| f64::from(alpha - i)).product()
}

/// `∂^a z^α` at `p`, by the falling-factorial rule.
pub fn monomial_derivative(alpha: &MultiIndex, p: &[Complex64], a: &MultiIndex) -> Complex64 {
    if !alpha.dominates(a) {
        return Complex64::new(0.0, 0.0);
    }
    let mut v = Complex64::new(1.0, 0.0);
    for ((&al, &aj), &pj) in alpha.0.iter().zip(&a.0).zip(p) {
        let e = al - aj;
        v *= falling_factorial(al, aj);
        if e > 0 {
            v *= pj.powu(e);
        }
    }
    v
}

/// Every holomorphic derivative `∂^a z^α|_p` with `|a| ≤ order`, in graded order of `a`.
pub fn monomial_jet(alpha: &MultiIndex, p: &[Complex64], order: u32) -> Vec<(MultiIndex, Complex64)> {
    assert!(order <= 2, "jets are only needed up to order 2");
    multiindex_enumerate(alpha.dim(), order)
        .into_iter()
        .map(|a| {
            let v = monomial_derivative(alpha, p, &a);
            (a, v)
        })
        .collect()
}

/// Cached powers `p_j^k`, `0 ≤ k ≤ max_degree`, for fast repeated monomial derivatives.
#[derive(Debug, Clone)]
pub struct PowerTable {
    powers: Vec<Vec<Complex64>>,
}

impl PowerTable {
    pub fn new(p: &[Complex64], max_degree: u32) -> Self {
        let powers = p
            .iter()
            .map(|&z| {
                let mut row = Vec::with_capacity(max_degree as usize + 1);
                let mut acc = Complex64::new(1.0, 0.0);
                for _ in 0..=max_degree {
                    row.push(acc);
                    acc *= z;
                }
                row
            })
            .collect();
        Self { powers }
    }

    pub fn derivative(&self, alpha: &MultiIndex, a: &MultiIndex) -> Complex64 {
        let mut v = Complex64::new(1.0, 0.0);
        for (j, (&al, &aj)) in alpha.0.iter().zip(&a.0).enumerate() {
            if aj > al {
                return Complex64::new(0.0, 0.0);
            }
            v *= self.powers[j][(al - aj) as usize] * falling_factorial(al, aj);
        }
        v
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn mi(v: &[u32]) -> MultiIndex {
        MultiIndex::new(v.to_vec())
    }

    #[test]
    fn enumerate_small_cases() {
        assert_eq!(multiindex_enumerate(1, 2), vec![mi(&[0]), mi(&[1]), mi(&[2])]);
        assert_eq!(multiindex_enumerate(2, 1), vec![mi(&[0, 0]), mi(&[1, 0]), mi(&[0, 1])]);
        assert_eq!(multiindex_enumerate(2, 2).len(), 6);
        assert_eq!(enumerate_degree(2, 2), vec![mi(&[2, 0]), mi(&[1, 1]), mi(&[0, 2])]);
    }

    #[test]
    fn enumeration_is_graded_and_counted() {
        for n in 1..=4 {
            for big in 0..=7 {
                let list = multiindex_enumerate(n, big);
                assert_eq!(list.len(), basis_count(n, big));
                assert!(list.windows(2).all(|w| w[0].degree() <= w[1].degree()));
                let mut dedup = list.clone();
                dedup.sort();
                dedup.dedup();
                assert_eq!(dedup.len(), list.len());
            }
        }
    }

    #[test]
    fn monomial_derivative_examples() {
        let one = Complex64::new(1.0, 0.0);
        assert_eq!(monomial_derivative(&mi(&[2]), &[one], &mi(&[1])), Complex64::new(2.0, 0.0));
        let zero = Complex64::new(0.0, 0.0);
        assert_eq!(monomial_derivative(&mi(&[1, 0]), &[zero, zero], &mi(&[0, 1])), zero);
        let half = Complex64::new(0.5, 0.0);
        assert_eq!(monomial_derivative(&mi(&[2]), &[half], &mi(&[2])), Complex64::new(2.0, 0.0));
    }

    #[test]
    fn power_table_matches_direct_rule() {
        let p = [Complex64::new(0.3, -0.2), Complex64::new(-0.1, 0.4)];
        let table = PowerTable::new(&p, 9);
        for alpha in multiindex_enumerate(2, 7) {
            for a in multiindex_enumerate(2, 2) {
                let d = monomial_derivative(&alpha, &p, &a);
                assert!((table.derivative(&alpha, &a) - d).norm() < 1e-15);
            }
        }
    }
}
