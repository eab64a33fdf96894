//! The choose-two sequence B in pointed sets: B(n) holds the pairs
//! 1 <= i < j <= n plus a basepoint, with B(0) = B(1) = {+}. The co-operation
//! mu splits a pair along a composition; lambda and rho are its two
//! projections and give the two one-sided actions.

use crate::compositions::Composition;
use crate::error::{Error, Result};

/// Basepoint or a strictly increasing pair (i, j) in a fixed arity.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct BElement {
    arity: usize,
    value: Option<(usize, usize)>,
}

impl BElement {
    pub fn basepoint(arity: usize) -> Self {
        BElement { arity, value: None }
    }

    pub fn pair(arity: usize, i: usize, j: usize) -> Result<Self> {
        if !(1 <= i && i < j && j <= arity) {
            return Err(Error::invalid(format!(
                "pair ({i},{j}) is not strictly increasing within arity {arity}"
            )));
        }
        Ok(BElement {
            arity,
            value: Some((i, j)),
        })
    }

    pub fn arity(&self) -> usize {
        self.arity
    }

    pub fn value(&self) -> Option<(usize, usize)> {
        self.value
    }

    pub fn is_basepoint(&self) -> bool {
        self.value.is_none()
    }
}

/// Every element of B(arity): the basepoint first, then pairs in
/// lexicographic order.
pub fn enumerate_b(arity: usize) -> Vec<BElement> {
    let mut out = vec![BElement::basepoint(arity)];
    for i in 1..=arity {
        for j in i + 1..=arity {
            out.push(BElement::pair(arity, i, j).expect("in-range pair"));
        }
    }
    out
}

/// An element of the wedge B(k) v B(n_1) v ... v B(n_k). Slot 0 is the outer
/// B(k) factor; slot s >= 1 is the B(n_s) factor. All factor basepoints are
/// identified into the single wedge basepoint, so a slot value is never a
/// basepoint element.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct WedgeElement {
    k: usize,
    c: Composition,
    value: Option<(usize, BElement)>,
}

impl WedgeElement {
    pub fn basepoint(k: usize, c: Composition) -> Self {
        WedgeElement { k, c, value: None }
    }

    pub fn slotted(k: usize, c: Composition, slot: usize, elem: BElement) -> Result<Self> {
        if slot > k {
            return Err(Error::invalid(format!("slot {slot} out of range [0, {k}]")));
        }
        if elem.is_basepoint() {
            return Err(Error::invalid(
                "factor basepoints are identified; use the wedge basepoint",
            ));
        }
        let want = if slot == 0 { k } else { c.part(slot) };
        if elem.arity() != want {
            return Err(Error::invalid(format!(
                "slot {slot} expects arity {want}, element has arity {}",
                elem.arity()
            )));
        }
        Ok(WedgeElement {
            k,
            c,
            value: Some((slot, elem)),
        })
    }

    pub fn value(&self) -> Option<(usize, BElement)> {
        self.value.clone()
    }

    pub fn is_basepoint(&self) -> bool {
        self.value.is_none()
    }

    pub fn shape(&self) -> (usize, &Composition) {
        (self.k, &self.c)
    }
}

fn check_shape(k: usize, c: &Composition, e: &BElement) -> Result<()> {
    if k != c.k() {
        return Err(Error::invalid(format!(
            "k={k} does not match composition length {}",
            c.k()
        )));
    }
    if e.arity() != c.total() {
        return Err(Error::invalid(format!(
            "element arity {} does not match composition total {}",
            e.arity(),
            c.total()
        )));
    }
    Ok(())
}

/// The co-operation mu: a same-block pair lands in its block's factor after
/// subtracting the block offset; a cross-block pair records the block pair in
/// the outer factor.
pub fn mu(k: usize, c: &Composition, e: &BElement) -> Result<WedgeElement> {
    check_shape(k, c, e)?;
    let (i, j) = match e.value() {
        None => return Ok(WedgeElement::basepoint(k, c.clone())),
        Some(p) => p,
    };
    let s = c.block_of(i)?;
    let t = c.block_of(j)?;
    if s == t {
        let off = c.partial_sum(s)?;
        let local = BElement::pair(c.part(s), i - off, j - off)?;
        WedgeElement::slotted(k, c.clone(), s, local)
    } else {
        let outer = BElement::pair(k, s, t)?;
        WedgeElement::slotted(k, c.clone(), 0, outer)
    }
}

/// The left projection of mu: keep same-block pairs, kill cross-block pairs.
pub fn lambda_action(k: usize, c: &Composition, e: &BElement) -> Result<WedgeElement> {
    let w = mu(k, c, e)?;
    match w.value() {
        Some((0, _)) | None => Ok(WedgeElement::basepoint(k, c.clone())),
        Some(_) => Ok(w),
    }
}

/// The right projection of mu: keep cross-block pairs as a pair of blocks,
/// kill same-block pairs.
pub fn rho_action(k: usize, c: &Composition, e: &BElement) -> Result<BElement> {
    let w = mu(k, c, e)?;
    match w.value() {
        Some((0, outer)) => Ok(outer),
        _ => Ok(BElement::basepoint(k)),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::compositions::enumerate_compositions;

    fn comp(parts: &[usize]) -> Composition {
        Composition::new(parts.to_vec()).unwrap()
    }

    #[test]
    fn mu_matches_worked_values() {
        let c = comp(&[2, 2]);
        let w = mu(2, &c, &BElement::pair(4, 1, 3).unwrap()).unwrap();
        assert_eq!(w.value(), Some((0, BElement::pair(2, 1, 2).unwrap())));
        let w = mu(2, &c, &BElement::pair(4, 1, 2).unwrap()).unwrap();
        assert_eq!(w.value(), Some((1, BElement::pair(2, 1, 2).unwrap())));
        let w = mu(2, &c, &BElement::basepoint(4)).unwrap();
        assert!(w.is_basepoint());
    }

    #[test]
    fn lambda_matches_worked_values() {
        let c = comp(&[2, 2]);
        let w = lambda_action(2, &c, &BElement::pair(4, 1, 2).unwrap()).unwrap();
        assert_eq!(w.value(), Some((1, BElement::pair(2, 1, 2).unwrap())));
        let w = lambda_action(2, &c, &BElement::pair(4, 1, 3).unwrap()).unwrap();
        assert!(w.is_basepoint());
        let w = lambda_action(1, &comp(&[3]), &BElement::pair(3, 1, 3).unwrap()).unwrap();
        assert_eq!(w.value(), Some((1, BElement::pair(3, 1, 3).unwrap())));
    }

    #[test]
    fn rho_matches_worked_values() {
        let c = comp(&[2, 2]);
        let e = rho_action(2, &c, &BElement::pair(4, 1, 3).unwrap()).unwrap();
        assert_eq!(e, BElement::pair(2, 1, 2).unwrap());
        let e = rho_action(2, &c, &BElement::pair(4, 3, 4).unwrap()).unwrap();
        assert!(e.is_basepoint());
        let ones = comp(&[1, 1, 1, 1]);
        for i in 1..=4usize {
            for j in i + 1..=4 {
                let e = BElement::pair(4, i, j).unwrap();
                assert_eq!(rho_action(4, &ones, &e).unwrap(), e);
            }
        }
    }

    #[test]
    fn shape_mismatches_are_rejected() {
        let c = comp(&[2, 2]);
        assert!(mu(3, &c, &BElement::pair(4, 1, 2).unwrap()).is_err());
        assert!(mu(2, &c, &BElement::pair(5, 1, 2).unwrap()).is_err());
    }

    #[test]
    fn all_three_maps_are_pointed_and_project_mu() {
        for k in 1..=5usize {
            for n in 0..=10usize {
                for c in enumerate_compositions(k, n).unwrap() {
                    for e in enumerate_b(n) {
                        let w = mu(k, &c, &e).unwrap();
                        let l = lambda_action(k, &c, &e).unwrap();
                        let r = rho_action(k, &c, &e).unwrap();
                        if e.is_basepoint() {
                            assert!(w.is_basepoint());
                            assert!(l.is_basepoint());
                            assert!(r.is_basepoint());
                        }
                        match w.value() {
                            Some((0, outer)) => {
                                assert!(l.is_basepoint());
                                assert_eq!(r, outer);
                            }
                            Some((s, inner)) => {
                                assert_eq!(l.value(), Some((s, inner)));
                                assert!(r.is_basepoint());
                            }
                            None => {
                                assert!(l.is_basepoint());
                                assert!(r.is_basepoint());
                            }
                        }
                    }
                }
            }
        }
    }

    #[test]
    fn extreme_compositions_behave_as_forced() {
        for n in 2..=6usize {
            let single = comp(&[n]);
            let ones = comp(&vec![1; n]);
            for e in enumerate_b(n) {
                if e.is_basepoint() {
                    continue;
                }
                assert!(rho_action(1, &single, &e).unwrap().is_basepoint());
                assert!(lambda_action(n, &ones, &e).unwrap().is_basepoint());
                assert_eq!(rho_action(n, &ones, &e).unwrap(), e);
            }
        }
    }
}
