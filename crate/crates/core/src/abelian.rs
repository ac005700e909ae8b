//! Invariant-factor presentation of finite abelian groups.

use std::fmt;

use serde::{Deserialize, Serialize};

/// A finite abelian group `ℤ/d₁ × ℤ/d₂ × …` with `d₁ | d₂ | …` and each `dᵢ ≥ 2`.
///
/// The empty list is the trivial group.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(transparent)]
pub struct FiniteAbelianGroup {
    invariant_factors: Vec<u64>,
}

fn prime_factors(mut n: u64) -> Vec<(u64, u32)> {
    let mut out = Vec::new();
    let mut p = 2;
    while p * p <= n {
        if n.is_multiple_of(p) {
            let mut e = 0;
            while n.is_multiple_of(p) {
                n /= p;
                e += 1;
            }
            out.push((p, e));
        }
        p += 1;
    }
    if n > 1 {
        out.push((n, 1));
    }
    out
}

impl FiniteAbelianGroup {
    pub fn trivial() -> Self {
        Self::default()
    }

    /// Normalises an arbitrary list of cyclic orders into invariant factors.
    pub fn from_cyclic_orders(orders: &[u64]) -> Self {
        let mut by_prime: Vec<(u64, Vec<u32>)> = Vec::new();
        for &d in orders {
            for (p, e) in prime_factors(d) {
                match by_prime.iter_mut().find(|(q, _)| *q == p) {
                    Some((_, es)) => es.push(e),
                    None => by_prime.push((p, vec![e])),
                }
            }
        }
        Self::from_elementary_divisors(by_prime)
    }

    fn from_elementary_divisors(mut by_prime: Vec<(u64, Vec<u32>)>) -> Self {
        // largest exponents go into the last invariant factor
        let len = by_prime.iter().map(|(_, es)| es.len()).max().unwrap_or(0);
        for (_, es) in &mut by_prime {
            es.sort_unstable_by(|a, b| b.cmp(a));
        }
        let mut factors: Vec<u64> = (0..len)
            .map(|i| {
                by_prime
                    .iter()
                    .filter_map(|(p, es)| es.get(i).map(|&e| p.pow(e)))
                    .product()
            })
            .collect();
        factors.reverse();
        FiniteAbelianGroup {
            invariant_factors: factors,
        }
    }

    /// Recovers the group from its order and the sizes of its `p^k`-torsion subgroups.
    ///
    /// `torsion(p, k)` must return `|{x : p^k x = 0}|`.
    pub fn from_torsion_counts(order: u64, torsion: impl Fn(u64, u32) -> u64) -> Self {
        let mut by_prime = Vec::new();
        for (p, total) in prime_factors(order) {
            // s_k = log_p |A[p^k]| = Σ min(k, e_i)
            let mut s = vec![0u32];
            let mut k = 1;
            while *s.last().unwrap() < total {
                let count = torsion(p, k);
                let mut log = 0;
                let mut c = count;
                while c > 1 {
                    debug_assert_eq!(c % p, 0, "torsion count is not a power of {p}");
                    c /= p;
                    log += 1;
                }
                s.push(log);
                k += 1;
            }
            // number of cyclic factors with exponent ≥ k is s_k − s_{k−1}
            let at_least: Vec<u32> = s.windows(2).map(|w| w[1] - w[0]).collect();
            let mut exps = Vec::new();
            for (i, &c) in at_least.iter().enumerate() {
                let next = at_least.get(i + 1).copied().unwrap_or(0);
                for _ in 0..(c - next) {
                    exps.push(i as u32 + 1);
                }
            }
            by_prime.push((p, exps));
        }
        Self::from_elementary_divisors(by_prime)
    }

    pub fn invariant_factors(&self) -> &[u64] {
        &self.invariant_factors
    }

    pub fn order(&self) -> u64 {
        self.invariant_factors.iter().product()
    }

    pub fn is_trivial(&self) -> bool {
        self.invariant_factors.is_empty()
    }

    /// Minimal number of generators.
    pub fn generator_count(&self) -> usize {
        self.invariant_factors.len()
    }

    /// Compact text form: `1`, `3`, `2x4`.
    pub fn code(&self) -> String {
        if self.is_trivial() {
            "1".into()
        } else {
            self.invariant_factors
                .iter()
                .map(|d| d.to_string())
                .collect::<Vec<_>>()
                .join("x")
        }
    }
}

impl fmt::Display for FiniteAbelianGroup {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_trivial() {
            return write!(f, "1");
        }
        let parts: Vec<String> = self
            .invariant_factors
            .iter()
            .map(|d| format!("Z/{d}"))
            .collect();
        write!(f, "{}", parts.join(" x "))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn torsion_of(orders: &[u64]) -> impl Fn(u64, u32) -> u64 + '_ {
        move |p, k| {
            let pk = p.pow(k);
            orders.iter().map(|&d| gcd(d, pk)).product()
        }
    }

    fn gcd(a: u64, b: u64) -> u64 {
        if b == 0 {
            a
        } else {
            gcd(b, a % b)
        }
    }

    #[test]
    fn normalises_cyclic_orders() {
        assert_eq!(
            FiniteAbelianGroup::from_cyclic_orders(&[2, 3]).invariant_factors(),
            &[6]
        );
        assert_eq!(
            FiniteAbelianGroup::from_cyclic_orders(&[4, 2, 2]).invariant_factors(),
            &[2, 2, 4]
        );
        assert!(FiniteAbelianGroup::from_cyclic_orders(&[1, 1]).is_trivial());
    }

    #[test]
    fn recovers_structure_from_torsion_counts() {
        for orders in [
            &[3u64, 3, 3, 3, 3][..],
            &[4, 4, 2],
            &[6, 6],
            &[2, 4, 8],
            &[3],
        ] {
            let order = orders.iter().product();
            let g = FiniteAbelianGroup::from_torsion_counts(order, torsion_of(orders));
            assert_eq!(g, FiniteAbelianGroup::from_cyclic_orders(orders));
            assert_eq!(g.order(), order);
        }
        assert!(FiniteAbelianGroup::from_torsion_counts(1, |_, _| 1).is_trivial());
    }

    #[test]
    fn display_forms() {
        assert_eq!(FiniteAbelianGroup::trivial().to_string(), "1");
        let g = FiniteAbelianGroup::from_cyclic_orders(&[3]);
        assert_eq!(g.to_string(), "Z/3");
        assert_eq!(g.code(), "3");
    }
}
