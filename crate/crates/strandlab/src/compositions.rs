//! Weak compositions, block partial sums, and the block/row index split that
//! every other module consumes. All indices are 1-based at the API boundary.

use crate::error::{Error, Result};

/// A weak composition n = n_1 + ... + n_k with all parts >= 0 and k >= 1.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Composition {
    parts: Vec<usize>,
}

impl Composition {
    pub fn new(parts: Vec<usize>) -> Result<Self> {
        if parts.is_empty() {
            return Err(Error::invalid("a composition needs at least one part"));
        }
        Ok(Composition { parts })
    }

    /// Number of parts.
    pub fn k(&self) -> usize {
        self.parts.len()
    }

    /// Sum of all parts.
    pub fn total(&self) -> usize {
        self.parts.iter().sum()
    }

    /// Part s, 1-based.
    pub fn part(&self, s: usize) -> usize {
        self.parts[s - 1]
    }

    pub fn parts(&self) -> &[usize] {
        &self.parts
    }

    /// Partial sum before block s: the sum of parts 1..s-1, for s in [1, k+1].
    pub fn partial_sum(&self, s: usize) -> Result<usize> {
        if s < 1 || s > self.k() + 1 {
            return Err(Error::invalid(format!(
                "partial sum index {s} out of range [1, {}]",
                self.k() + 1
            )));
        }
        Ok(self.parts[..s - 1].iter().sum())
    }

    /// The unique block s whose half-open span contains position a, i.e.
    /// partial_sum(s) < a <= partial_sum(s+1). Empty blocks are skipped.
    pub fn block_of(&self, a: usize) -> Result<usize> {
        if a < 1 || a > self.total() {
            return Err(Error::invalid(format!(
                "position {a} out of range [1, {}]",
                self.total()
            )));
        }
        let mut acc = 0;
        for (idx, &p) in self.parts.iter().enumerate() {
            acc += p;
            if a <= acc {
                return Ok(idx + 1);
            }
        }
        unreachable!("position bounds were checked above")
    }

    /// Composite composition: self has k parts summing to l, inner has l parts
    /// summing to n; the result has k parts, part s being the sum of the inner
    /// parts that fall in block s of self.
    pub fn compose(&self, inner: &Composition) -> Result<Composition> {
        if inner.k() != self.total() {
            return Err(Error::invalid(format!(
                "inner composition has {} parts, outer total is {}",
                inner.k(),
                self.total()
            )));
        }
        let mut out = Vec::with_capacity(self.k());
        let mut pos = 0;
        for &p in &self.parts {
            out.push(inner.parts[pos..pos + p].iter().sum());
            pos += p;
        }
        Composition::new(out)
    }

    /// The inner parts falling in block s of self, as a composition of their
    /// own (block s must be nonempty in self).
    pub fn inner_block(&self, inner: &Composition, s: usize) -> Result<Composition> {
        if inner.k() != self.total() {
            return Err(Error::invalid("inner composition length mismatch"));
        }
        if s < 1 || s > self.k() {
            return Err(Error::invalid(format!("block {s} out of range")));
        }
        let lo = self.partial_sum(s)?;
        let hi = self.partial_sum(s + 1)?;
        if lo == hi {
            return Err(Error::invalid(format!("block {s} is empty")));
        }
        Composition::new(inner.parts[lo..hi].to_vec())
    }
}

/// Visit every weak composition of n into k parts in lexicographic order.
pub fn for_each_composition<F: FnMut(&[usize])>(k: usize, n: usize, mut f: F) -> Result<()> {
    if k == 0 {
        return Err(Error::invalid("composition length k must be at least 1"));
    }
    let mut parts = vec![0; k];
    fn rec<F: FnMut(&[usize])>(parts: &mut [usize], slot: usize, rest: usize, f: &mut F) {
        if slot + 1 == parts.len() {
            parts[slot] = rest;
            f(parts);
            return;
        }
        for v in 0..=rest {
            parts[slot] = v;
            rec(parts, slot + 1, rest - v, f);
        }
    }
    rec(&mut parts, 0, n, &mut f);
    Ok(())
}

/// All weak compositions of n into k parts, lexicographically ordered.
pub fn enumerate_compositions(k: usize, n: usize) -> Result<Vec<Composition>> {
    let mut out = Vec::new();
    for_each_composition(k, n, |p| out.push(Composition { parts: p.to_vec() }))?;
    Ok(out)
}

/// The split of a position i in [1, m*n] into column a and row r with
/// i = (a-1)*m + r, r in [1, m].
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct IndexDecomposition {
    pub i: usize,
    pub a: usize,
    pub r: usize,
}

pub fn decompose_index(i: usize, m: usize) -> Result<IndexDecomposition> {
    if i < 1 || m < 1 {
        return Err(Error::invalid(format!(
            "decompose_index needs i >= 1 and m >= 1, got i={i}, m={m}"
        )));
    }
    Ok(IndexDecomposition {
        i,
        a: (i - 1) / m + 1,
        r: (i - 1) % m + 1,
    })
}

/// Inverse of decompose_index.
pub fn compose_index(a: usize, r: usize, m: usize) -> usize {
    debug_assert!(a >= 1 && r >= 1 && r <= m);
    (a - 1) * m + r
}

#[cfg(test)]
mod tests {
    use super::*;

    /// Independent count: stars and bars via Pascal recursion, no factorials.
    fn stars_and_bars(k: usize, n: usize) -> usize {
        if k == 1 {
            return 1;
        }
        (0..=n).map(|v| stars_and_bars(k - 1, n - v)).sum()
    }

    #[test]
    fn small_enumerations_match_worked_values() {
        let c22 = enumerate_compositions(2, 2).unwrap();
        let got: Vec<&[usize]> = c22.iter().map(|c| c.parts()).collect();
        assert_eq!(got, vec![&[0, 2][..], &[1, 1][..], &[2, 0][..]]);

        let c15 = enumerate_compositions(1, 5).unwrap();
        assert_eq!(c15.len(), 1);
        assert_eq!(c15[0].parts(), &[5]);

        assert_eq!(enumerate_compositions(3, 4).unwrap().len(), 15);
    }

    #[test]
    fn zero_length_is_rejected() {
        assert!(enumerate_compositions(0, 3).is_err());
        assert!(Composition::new(vec![]).is_err());
    }

    #[test]
    fn counts_match_stars_and_bars() {
        for k in 1..=5 {
            for n in 0..=8 {
                let listed = enumerate_compositions(k, n).unwrap();
                assert_eq!(listed.len(), stars_and_bars(k, n), "k={k} n={n}");
                for c in &listed {
                    assert_eq!(c.total(), n);
                    assert_eq!(c.k(), k);
                }
                let mut sorted = listed.clone();
                sorted.sort_by(|a, b| a.parts.cmp(&b.parts));
                sorted.dedup();
                assert_eq!(sorted, listed, "lexicographic and duplicate-free");
            }
        }
    }

    #[test]
    fn partial_sums_match_worked_values() {
        let c = Composition::new(vec![2, 2]).unwrap();
        assert_eq!(c.partial_sum(1).unwrap(), 0);
        assert_eq!(c.partial_sum(3).unwrap(), 4);
        let c = Composition::new(vec![1, 2]).unwrap();
        assert_eq!(c.partial_sum(2).unwrap(), 1);
        assert!(c.partial_sum(0).is_err());
        assert!(c.partial_sum(4).is_err());
    }

    #[test]
    fn block_lookup_skips_empty_blocks() {
        let c = Composition::new(vec![0, 2, 0, 1]).unwrap();
        assert_eq!(c.block_of(1).unwrap(), 2);
        assert_eq!(c.block_of(2).unwrap(), 2);
        assert_eq!(c.block_of(3).unwrap(), 4);
        assert!(c.block_of(0).is_err());
        assert!(c.block_of(4).is_err());
    }

    #[test]
    fn index_split_matches_worked_values() {
        let d = decompose_index(1, 2).unwrap();
        assert_eq!((d.a, d.r), (1, 1));
        let d = decompose_index(3, 2).unwrap();
        assert_eq!((d.a, d.r), (2, 1));
        let d = decompose_index(6, 2).unwrap();
        assert_eq!((d.a, d.r), (3, 2));
        assert!(decompose_index(0, 2).is_err());
        assert!(decompose_index(3, 0).is_err());
    }

    #[test]
    fn index_split_round_trips_and_orders() {
        for m in 1..=4 {
            for n in 1..=5 {
                let all: Vec<_> = (1..=m * n)
                    .map(|i| decompose_index(i, m).unwrap())
                    .collect();
                for d in &all {
                    assert_eq!(compose_index(d.a, d.r, m), d.i);
                    assert!(d.a >= 1 && d.a <= n && d.r >= 1 && d.r <= m);
                }
                for w in all.windows(2) {
                    let (p, q) = (w[0], w[1]);
                    assert!(p.a < q.a || (p.a == q.a && p.r < q.r));
                }
            }
        }
    }

    #[test]
    fn composite_composition_sums_blockwise() {
        let outer = Composition::new(vec![1, 2]).unwrap();
        let inner = Composition::new(vec![2, 0, 3]).unwrap();
        let comp = outer.compose(&inner).unwrap();
        assert_eq!(comp.parts(), &[2, 3]);
        assert_eq!(outer.inner_block(&inner, 2).unwrap().parts(), &[0, 3]);
        assert!(outer.compose(&Composition::new(vec![1]).unwrap()).is_err());
    }
}
