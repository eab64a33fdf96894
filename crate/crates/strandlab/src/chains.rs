//! Straight 3-chains on a 4-element index set: orderings up to reversal,
//! their canonical representatives, parities, duals, and the path reading in
//! the complete graph K4.

use crate::error::{Error, Result};

/// An equivalence class of orderings of a 4-element index set modulo
/// reversal, stored by its canonical representative.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct Chain3Class {
    t: [usize; 4],
    rep: [usize; 4],
}

fn is_permutation_of_1234(sigma: &[usize; 4]) -> bool {
    let mut seen = [false; 4];
    for &v in sigma {
        if v < 1 || v > 4 || seen[v - 1] {
            return false;
        }
        seen[v - 1] = true;
    }
    true
}

fn canonicalize(mut sigma: [usize; 4]) -> [usize; 4] {
    if sigma[0] > sigma[3] {
        sigma.reverse();
    }
    sigma
}

fn sign_of(sigma: &[usize; 4]) -> i32 {
    let mut inv = 0;
    for p in 0..4 {
        for q in p + 1..4 {
            if sigma[p] > sigma[q] {
                inv += 1;
            }
        }
    }
    if inv % 2 == 0 {
        1
    } else {
        -1
    }
}

impl Chain3Class {
    /// Build the class of the ordering (t[sigma(1)-1], ..., t[sigma(4)-1]),
    /// canonicalizing so the representative starts below where it ends.
    pub fn new(t: [usize; 4], sigma: [usize; 4]) -> Result<Self> {
        let mut sorted = t;
        sorted.sort_unstable();
        if sorted != t || t.windows(2).any(|w| w[0] == w[1]) {
            return Err(Error::invalid(
                "index set must be strictly increasing and distinct",
            ));
        }
        if !is_permutation_of_1234(&sigma) {
            return Err(Error::invalid("ordering must be a permutation of 1..4"));
        }
        Ok(Chain3Class {
            t,
            rep: canonicalize(sigma),
        })
    }

    pub fn t(&self) -> [usize; 4] {
        self.t
    }

    /// Canonical representative as positions into the sorted index set.
    pub fn rep(&self) -> [usize; 4] {
        self.rep
    }

    /// The representative written in the actual indices of t.
    pub fn chain(&self) -> [usize; 4] {
        [
            self.t[self.rep[0] - 1],
            self.t[self.rep[1] - 1],
            self.t[self.rep[2] - 1],
            self.t[self.rep[3] - 1],
        ]
    }

    /// Sign of the representative; the reversal is even, so this is a class
    /// invariant.
    pub fn parity(&self) -> i32 {
        sign_of(&self.rep)
    }

    /// The dual class: precompose the representative with the position cycle
    /// 1 -> 2 -> 4 -> 3 -> 1, i.e. the dual ordering reads positions
    /// (2, 4, 1, 3) of the original.
    pub fn dual(&self) -> Chain3Class {
        Chain3Class {
            t: self.t,
            rep: canonicalize(dual_path(self.rep)),
        }
    }

    /// The three consecutive edges of the chain as sorted index pairs, sorted
    /// as a set; reversal preserves this, so it is well defined on classes.
    pub fn edges(&self) -> [(usize, usize); 3] {
        let ch = self.chain();
        let mut out = [(0, 0); 3];
        for (slot, w) in ch.windows(2).enumerate() {
            out[slot] = (w[0].min(w[1]), w[0].max(w[1]));
        }
        out.sort_unstable();
        out
    }
}

/// The dual traversal order of a specific representative, reading positions
/// (2, 4, 1, 3), without canonicalizing. Reversing the input reverses the
/// output, so path-product computations stay representative-independent.
pub fn dual_path(rep: [usize; 4]) -> [usize; 4] {
    [rep[1], rep[3], rep[0], rep[2]]
}

/// All 12 chain classes on a 4-element index set, ordered lexicographically
/// by canonical representative.
pub fn enumerate_chains(t: [usize; 4]) -> Result<Vec<Chain3Class>> {
    let mut reps: Vec<[usize; 4]> = Vec::new();
    let mut perm = [1usize, 2, 3, 4];
    heap_permutations(&mut perm, 0, &mut |p| {
        let c = canonicalize(*p);
        if !reps.contains(&c) {
            reps.push(c);
        }
    });
    reps.sort_unstable();
    reps.into_iter().map(|rep| Chain3Class::new(t, rep)).collect()
}

fn heap_permutations(arr: &mut [usize; 4], k: usize, f: &mut impl FnMut(&[usize; 4])) {
    if k == 3 {
        f(arr);
        return;
    }
    for i in k..4 {
        arr.swap(k, i);
        heap_permutations(arr, k + 1, f);
        arr.swap(k, i);
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    const LEX_REPS: [[usize; 4]; 12] = [
        [1, 2, 3, 4],
        [1, 2, 4, 3],
        [1, 3, 2, 4],
        [1, 3, 4, 2],
        [1, 4, 2, 3],
        [1, 4, 3, 2],
        [2, 1, 3, 4],
        [2, 1, 4, 3],
        [2, 3, 1, 4],
        [2, 4, 1, 3],
        [3, 1, 2, 4],
        [3, 2, 1, 4],
    ];

    const LEX_PARITIES: [i32; 12] = [1, -1, -1, 1, 1, -1, -1, 1, 1, -1, 1, -1];

    const DUAL_PAIRS: [([usize; 4], [usize; 4]); 6] = [
        ([1, 2, 3, 4], [2, 4, 1, 3]),
        ([1, 2, 4, 3], [2, 3, 1, 4]),
        ([1, 3, 2, 4], [2, 1, 4, 3]),
        ([1, 3, 4, 2], [3, 2, 1, 4]),
        ([1, 4, 2, 3], [2, 1, 3, 4]),
        ([1, 4, 3, 2], [3, 1, 2, 4]),
    ];

    #[test]
    fn twelve_classes_in_frozen_order() {
        let classes = enumerate_chains([1, 2, 3, 4]).unwrap();
        assert_eq!(classes.len(), 12);
        for (cl, want) in classes.iter().zip(LEX_REPS.iter()) {
            assert_eq!(cl.rep(), *want);
        }
        let t = [2, 5, 7, 11];
        assert_eq!(enumerate_chains(t).unwrap().len(), 12);
        assert!(enumerate_chains([1, 2, 2, 4]).is_err());
        assert!(enumerate_chains([2, 1, 3, 4]).is_err());
    }

    #[test]
    fn reversal_normalizes_to_the_identity_class() {
        let id = Chain3Class::new([1, 2, 3, 4], [1, 2, 3, 4]).unwrap();
        let rev = Chain3Class::new([1, 2, 3, 4], [4, 3, 2, 1]).unwrap();
        assert_eq!(id, rev);
        assert_eq!(id.parity(), 1);
    }

    #[test]
    fn parities_match_frozen_table_and_survive_reversal() {
        let classes = enumerate_chains([1, 2, 3, 4]).unwrap();
        for (cl, want) in classes.iter().zip(LEX_PARITIES.iter()) {
            assert_eq!(cl.parity(), *want, "class {:?}", cl.rep());
            let r = cl.rep();
            let reversed = Chain3Class::new(cl.t(), [r[3], r[2], r[1], r[0]]).unwrap();
            assert_eq!(reversed, *cl);
        }
        assert_eq!(LEX_PARITIES.iter().sum::<i32>(), 0);
    }

    #[test]
    fn duals_match_frozen_pairs_and_are_involutive() {
        let classes = enumerate_chains([1, 2, 3, 4]).unwrap();
        for cl in &classes {
            assert_eq!(cl.dual().dual(), *cl);
            let pair = DUAL_PAIRS
                .iter()
                .find(|(a, b)| *a == cl.rep() || *b == cl.rep())
                .expect("every class sits in a frozen dual pair");
            let partner = if pair.0 == cl.rep() { pair.1 } else { pair.0 };
            assert_eq!(cl.dual().rep(), partner);
        }
        let id = Chain3Class::new([1, 2, 3, 4], [1, 2, 3, 4]).unwrap();
        assert_eq!(id.dual().rep(), [2, 4, 1, 3]);
    }

    #[test]
    fn edges_are_hamiltonian_paths_and_duals_complement() {
        let all6 = |t: [usize; 4]| {
            let mut v = Vec::new();
            for p in 0..4 {
                for q in p + 1..4 {
                    v.push((t[p], t[q]));
                }
            }
            v
        };
        for t in [[1, 2, 3, 4], [3, 5, 8, 13]] {
            for cl in enumerate_chains(t).unwrap() {
                let e = cl.edges();
                let mut degree = std::collections::HashMap::new();
                for (a, b) in e {
                    *degree.entry(a).or_insert(0) += 1;
                    *degree.entry(b).or_insert(0) += 1;
                }
                let mut degs: Vec<i32> = degree.values().cloned().collect();
                degs.sort_unstable();
                assert_eq!(degs, vec![1, 1, 2, 2], "path degrees for {:?}", cl.rep());

                let mut union: Vec<(usize, usize)> = Vec::new();
                union.extend(e);
                union.extend(cl.dual().edges());
                union.sort_unstable();
                assert_eq!(union, all6(t), "dual complements {:?}", cl.rep());
            }
        }
        let id = Chain3Class::new([1, 2, 3, 4], [1, 2, 3, 4]).unwrap();
        assert_eq!(id.edges(), [(1, 2), (2, 3), (3, 4)]);
        assert_eq!(id.dual().edges(), [(1, 3), (1, 4), (2, 4)]);
    }
}
