//! Exact `A(n, d)` for tiny `n` by branch-and-bound maximum clique search.
//!
//! Codes with minimum distance above `d` are counted by `A(n, d + 1)`. A code
//! with minimum distance exactly `d` can be translated and its coordinates
//! permuted so that it holds `0` and `x = 1^d 0^(n-d)`; permuting inside the
//! two blocks of `x` then puts its lightest remaining word `y` in the form
//! `1^a 0^(d-a) | 1^b 0^(n-d-b)`. For each such `y` the rest of the code is a
//! clique among the words at distance at least `d` from `0`, `x` and `y` and
//! no lighter than `y`. Cliques are found with the colour-bounded scheme of
//! Tomita and Seki on bitsets, visiting candidates in lexicographic order.

use crate::error::{Error, Result};

/// Default limit on the word length for [`exact_a_search`].
pub const DEFAULT_MAX_LENGTH: u32 = 8;

#[derive(Clone)]
struct Bitset(Vec<u64>);

impl Bitset {
    fn new(len: usize) -> Self {
        Bitset(vec![0; len.div_ceil(64)])
    }

    fn set(&mut self, i: usize) {
        self.0[i / 64] |= 1 << (i % 64);
    }

    fn clear(&mut self, i: usize) {
        self.0[i / 64] &= !(1 << (i % 64));
    }

    fn is_empty(&self) -> bool {
        self.0.iter().all(|&w| w == 0)
    }

    fn count(&self) -> usize {
        self.0.iter().map(|w| w.count_ones() as usize).sum()
    }

    fn first(&self) -> Option<usize> {
        self.0
            .iter()
            .enumerate()
            .find(|(_, &w)| w != 0)
            .map(|(i, &w)| i * 64 + w.trailing_zeros() as usize)
    }

    fn and(&self, other: &Bitset) -> Bitset {
        Bitset(self.0.iter().zip(&other.0).map(|(a, b)| a & b).collect())
    }

    fn and_not_assign(&mut self, other: &Bitset) {
        for (a, b) in self.0.iter_mut().zip(&other.0) {
            *a &= !b;
        }
    }
}

struct Search {
    adjacency: Vec<Bitset>,
    best: usize,
}

impl Search {
    /// Greedy sequential colouring of `candidates`; returns the vertices in
    /// colour order with the colour count seen so far for each.
    fn colour(&self, candidates: &Bitset) -> Vec<(usize, usize)> {
        let mut order = Vec::with_capacity(candidates.count());
        let mut uncoloured = candidates.clone();
        let mut colour = 0;
        while !uncoloured.is_empty() {
            colour += 1;
            let mut class = uncoloured.clone();
            while let Some(v) = class.first() {
                class.clear(v);
                class.and_not_assign(&self.adjacency[v]);
                uncoloured.clear(v);
                order.push((v, colour));
            }
        }
        order
    }

    fn expand(&mut self, size: usize, mut candidates: Bitset) {
        let order = self.colour(&candidates);
        for &(v, colour) in order.iter().rev() {
            if size + colour <= self.best {
                return;
            }
            let next = candidates.and(&self.adjacency[v]);
            if next.is_empty() {
                self.best = self.best.max(size + 1);
            } else {
                self.expand(size + 1, next);
            }
            candidates.clear(v);
        }
    }
}

/// Exact `A(n, d)`: the largest binary code of length `n` and minimum
/// distance at least `d`.
///
/// `max_length` caps `n` (default [`DEFAULT_MAX_LENGTH`]); larger `n` fails
/// with [`Error::BudgetExceeded`].
pub fn exact_a_search(n: u32, d: u32, max_length: Option<u32>) -> Result<u64> {
    let cap = max_length.unwrap_or(DEFAULT_MAX_LENGTH);
    if n == 0 || d == 0 {
        return Err(Error::InvalidParameters(format!(
            "A(n, d) needs n >= 1 and d >= 1, got ({n}, {d})"
        )));
    }
    if n > cap {
        return Err(Error::BudgetExceeded(format!(
            "clique search limited to n <= {cap}, got n = {n}"
        )));
    }
    if n > 20 {
        return Err(Error::BudgetExceeded(format!(
            "n = {n} is beyond any clique budget"
        )));
    }
    if d > n {
        return Ok(1);
    }
    if d == 1 {
        return Ok(1 << n);
    }
    let mut best = exact_a_search(n, d + 1, Some(cap))?.max(2);
    let x = (1u32 << d) - 1;
    for a in 0..=d {
        for b in 0..=n - d {
            let y = ((1u32 << a) - 1) | (((1u32 << b) - 1) << d);
            let weight = a + b;
            if weight < d || (y ^ x).count_ones() < d {
                continue;
            }
            let vertices: Vec<u32> = (1u32..1 << n)
                .filter(|&v| {
                    v != x
                        && v != y
                        && v.count_ones() >= weight
                        && (v ^ x).count_ones() >= d
                        && (v ^ y).count_ones() >= d
                })
                .collect();
            best = best.max(3 + max_clique(&vertices, d, best.saturating_sub(3)) as u64);
        }
    }
    Ok(best)
}

/// Size of the largest clique among `vertices` (distance at least `d`), or
/// `floor` when none is larger.
fn max_clique(vertices: &[u32], d: u32, floor: u64) -> usize {
    let mut adjacency = vec![Bitset::new(vertices.len()); vertices.len()];
    for (i, &a) in vertices.iter().enumerate() {
        for (j, &b) in vertices.iter().enumerate().skip(i + 1) {
            if (a ^ b).count_ones() >= d {
                adjacency[i].set(j);
                adjacency[j].set(i);
            }
        }
    }
    let mut all = Bitset::new(vertices.len());
    for i in 0..vertices.len() {
        all.set(i);
    }
    let mut search = Search {
        adjacency,
        best: floor as usize,
    };
    if !vertices.is_empty() {
        search.expand(0, all);
    }
    search.best
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn small_values() {
        assert_eq!(exact_a_search(4, 2, None).unwrap(), 8);
        assert_eq!(exact_a_search(5, 3, None).unwrap(), 4);
        assert_eq!(exact_a_search(3, 3, None).unwrap(), 2);
        assert_eq!(exact_a_search(6, 3, None).unwrap(), 8);
        assert_eq!(exact_a_search(7, 3, None).unwrap(), 16);
        assert_eq!(exact_a_search(7, 4, None).unwrap(), 8);
    }

    #[test]
    fn whole_cube_and_single_word() {
        for n in 1..=8 {
            assert_eq!(exact_a_search(n, 1, None).unwrap(), 1 << n);
            assert_eq!(exact_a_search(n, n + 1, None).unwrap(), 1);
            assert_eq!(exact_a_search(n, n, None).unwrap(), 2);
        }
    }

    #[test]
    fn a_8_4_is_16() {
        assert_eq!(exact_a_search(8, 4, None).unwrap(), 16);
    }

    #[test]
    fn budget_and_parameter_errors() {
        assert!(matches!(
            exact_a_search(9, 4, None),
            Err(Error::BudgetExceeded(_))
        ));
        assert!(matches!(
            exact_a_search(0, 1, None),
            Err(Error::InvalidParameters(_))
        ));
        assert!(matches!(
            exact_a_search(4, 0, None),
            Err(Error::InvalidParameters(_))
        ));
    }

    #[test]
    fn monotone_and_doubling() {
        for n in 2..=7 {
            let mut prev = u64::MAX;
            for d in 1..=n {
                let a = exact_a_search(n, d, None).unwrap();
                assert!(a <= prev, "A({n},{d}) not monotone in d");
                let shorter = exact_a_search(n - 1, d, None).unwrap();
                assert!(a <= 2 * shorter, "A({n},{d}) > 2 A({},{d})", n - 1);
                prev = a;
            }
        }
    }
}
