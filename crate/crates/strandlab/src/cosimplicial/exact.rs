//! The exact ladders. In the opposite category the cosimplicial object of
//! the pair bimodule (and of its regraded variants) is a simplicial pointed
//! set: the carrier at level k is the pair set on m·k cells, and every
//! structure map is an index map applied to a higher-level element. The
//! identity checkers therefore quantify over whole carriers, which stay tiny.

use super::{codegeneracy_composition, coface_composition};
use crate::choose_two::enumerate_b;
use crate::compositions::Composition;
use crate::divided::{enumerate_gamma, lambda_m, rho_m, GammaBElement};
use crate::error::{Error, Result};
use crate::phi::{
    enumerate_phi, phi_left_action, phi_right_action, FinitePointedSet, PhiElement,
};
use crate::report::Check;
use serde_json::{json, Value};

/// A bimodule ladder up to a fixed level, exact flavor. Structure maps are
/// not stored: each is determined by its level and index, and `coface` /
/// `codegeneracy` apply the underlying pointed-set maps directly. The
/// distinguished family is the basepoint in every level.
#[derive(Debug, Clone)]
pub struct ExactLadder {
    m: usize,
    max_level: usize,
    swapped_level: Option<usize>,
}

impl ExactLadder {
    pub fn new(m: usize, max_level: usize) -> Result<Self> {
        if m < 1 {
            return Err(Error::invalid("row count m must be at least 1"));
        }
        Ok(ExactLadder {
            m,
            max_level,
            swapped_level: None,
        })
    }

    /// Negative control: exchange the two outermost cofaces at one level.
    pub fn with_swapped_cofaces(m: usize, max_level: usize, level: usize) -> Result<Self> {
        let mut ladder = ExactLadder::new(m, max_level)?;
        if level > max_level {
            return Err(Error::invalid("swap level beyond the ladder"));
        }
        ladder.swapped_level = Some(level);
        Ok(ladder)
    }

    pub fn m(&self) -> usize {
        self.m
    }

    pub fn max_level(&self) -> usize {
        self.max_level
    }

    /// Every element of the level-k carrier.
    pub fn carrier(&self, k: usize) -> Vec<GammaBElement> {
        enumerate_gamma(self.m, k)
    }

    pub fn basepoint(&self, k: usize) -> GammaBElement {
        GammaBElement::basepoint(self.m, k)
    }

    /// Underlying pointed-set map of the i-th coface at level k, carrying a
    /// level-(k+1) element down to level k. Interior indices collapse the
    /// doubled block through the right action; the outer indices keep only
    /// the pairs inside the surviving block, because the adjoined factor is
    /// the constant-basepoint family.
    pub fn coface(&self, k: usize, i: usize, e: &GammaBElement) -> Result<GammaBElement> {
        if k + 1 > self.max_level {
            return Err(Error::invalid(format!(
                "coface at level {k} leaves the ladder (max level {})",
                self.max_level
            )));
        }
        if i > k + 1 {
            return Err(Error::invalid(format!(
                "coface index {i} out of range [0, {}]",
                k + 1
            )));
        }
        if e.m() != self.m || e.n() != k + 1 {
            return Err(Error::invalid("element does not live one level up"));
        }
        let i = if self.swapped_level == Some(k) && i <= 1 {
            1 - i
        } else {
            i
        };
        if i == 0 {
            self.outer(k, true, e)
        } else if i == k + 1 {
            self.outer(k, false, e)
        } else {
            rho_m(k, &coface_composition(k, i)?, self.m, e)
        }
    }

    fn outer(&self, k: usize, leading: bool, e: &GammaBElement) -> Result<GammaBElement> {
        let c = if leading {
            Composition::new(vec![1, k])?
        } else {
            Composition::new(vec![k, 1])?
        };
        let keep = if leading { 2 } else { 1 };
        match lambda_m(2, &c, self.m, e)?.value() {
            Some((s, local)) if s == keep => GammaBElement::new(self.m, k, local),
            _ => Ok(GammaBElement::basepoint(self.m, k)),
        }
    }

    /// Underlying pointed-set map of the j-th codegeneracy at level k,
    /// carrying a level-(k-1) element up to level k: the right action whose
    /// composition skips block j + 1. No two cells collide, so the map is
    /// injective off the basepoint.
    pub fn codegeneracy(&self, k: usize, j: usize, e: &GammaBElement) -> Result<GammaBElement> {
        if k < 1 || k > self.max_level {
            return Err(Error::invalid(format!(
                "codegeneracy level {k} out of range [1, {}]",
                self.max_level
            )));
        }
        if j >= k {
            return Err(Error::invalid(format!(
                "codegeneracy index {j} out of range [0, {}]",
                k - 1
            )));
        }
        if e.m() != self.m || e.n() != k - 1 {
            return Err(Error::invalid("element does not live one level down"));
        }
        rho_m(k, &codegeneracy_composition(k, j)?, self.m, e)
    }
}

fn gamma_json(e: &GammaBElement) -> Value {
    json!({ "m": e.m(), "blocks": e.n(), "pair": e.element().value() })
}

fn instance_witness(k: usize, i: usize, j: Option<usize>, e: &GammaBElement) -> Value {
    json!({ "level": k, "i": i, "j": j, "element": gamma_json(e) })
}

/// Check every cosimplicial identity instance on every element of every
/// stored level, plus basepoint preservation. Exact equality throughout.
pub fn verify_exact_ladder(ladder: &ExactLadder) -> Result<Vec<Check>> {
    let l = ladder.max_level();
    let mut checks = Vec::new();

    // d^j d^i = d^i d^{j-1} for i < j. On underlying maps the second coface
    // applies first, to elements two levels up.
    let mut witness = None;
    'dd: for k in 0..(l.saturating_sub(1)) {
        for i in 0..=(k + 1) {
            for j in (i + 1)..=(k + 2) {
                for e in ladder.carrier(k + 2) {
                    let lhs = ladder.coface(k, i, &ladder.coface(k + 1, j, &e)?)?;
                    let rhs = ladder.coface(k, j - 1, &ladder.coface(k + 1, i, &e)?)?;
                    if lhs != rhs {
                        witness = Some(instance_witness(k, i, Some(j), &e));
                        break 'dd;
                    }
                }
            }
        }
    }
    checks.push(match witness {
        None => Check::pass("coface-coface-identities-hold"),
        Some(w) => Check::fail("coface-coface-identities-hold", w),
    });

    // s^j s^i = s^i s^{j+1} for i <= j, on elements two levels down.
    let mut witness = None;
    'ss: for k in 2..=l {
        for i in 0..=(k - 2) {
            for j in i..=(k - 2) {
                for e in ladder.carrier(k - 2) {
                    let lhs = ladder.codegeneracy(k, i, &ladder.codegeneracy(k - 1, j, &e)?)?;
                    let rhs =
                        ladder.codegeneracy(k, j + 1, &ladder.codegeneracy(k - 1, i, &e)?)?;
                    if lhs != rhs {
                        witness = Some(instance_witness(k, i, Some(j), &e));
                        break 'ss;
                    }
                }
            }
        }
    }
    checks.push(match witness {
        None => Check::pass("codegeneracy-codegeneracy-identities-hold"),
        Some(w) => Check::fail("codegeneracy-codegeneracy-identities-hold", w),
    });

    // s^j d^i: identity when i is j or j+1, otherwise a coface of the level
    // below on the other side.
    let mut witness = None;
    'mixed: for k in 0..l {
        for j in 0..=k {
            for i in 0..=(k + 1) {
                for e in ladder.carrier(k) {
                    let lhs = ladder.coface(k, i, &ladder.codegeneracy(k + 1, j, &e)?)?;
                    let rhs = if i == j || i == j + 1 {
                        e
                    } else if i < j {
                        ladder.codegeneracy(k, j - 1, &ladder.coface(k - 1, i, &e)?)?
                    } else {
                        ladder.codegeneracy(k, j, &ladder.coface(k - 1, i - 1, &e)?)?
                    };
                    if lhs != rhs {
                        witness = Some(instance_witness(k, i, Some(j), &e));
                        break 'mixed;
                    }
                }
            }
        }
    }
    checks.push(match witness {
        None => Check::pass("mixed-identities-hold"),
        Some(w) => Check::fail("mixed-identities-hold", w),
    });

    // The two identity cases, called out on their own: deleting a block that
    // a coface just doubled restores the element.
    let mut witness = None;
    'sd: for k in 0..l {
        for j in 0..=k {
            for e in ladder.carrier(k) {
                let up = ladder.codegeneracy(k + 1, j, &e)?;
                for i in [j, j + 1] {
                    if ladder.coface(k, i, &up)? != e {
                        witness = Some(instance_witness(k, i, Some(j), &e));
                        break 'sd;
                    }
                }
            }
        }
    }
    checks.push(match witness {
        None => Check::pass("doubling-then-deleting-is-the-identity"),
        Some(w) => Check::fail("doubling-then-deleting-is-the-identity", w),
    });

    // Every structure map is pointed, so the distinguished family of
    // basepoints is preserved.
    let mut witness = None;
    'base: for k in 0..l {
        for i in 0..=(k + 1) {
            if ladder.coface(k, i, &ladder.basepoint(k + 1))? != ladder.basepoint(k) {
                witness = Some(json!({ "level": k, "map": "coface", "index": i }));
                break 'base;
            }
        }
        for j in 0..=k {
            if ladder.codegeneracy(k + 1, j, &ladder.basepoint(k))? != ladder.basepoint(k + 1) {
                witness = Some(json!({ "level": k + 1, "map": "codegeneracy", "index": j }));
                break 'base;
            }
        }
    }
    checks.push(match witness {
        None => Check::pass("basepoint-family-is-preserved"),
        Some(w) => Check::fail("basepoint-family-is-preserved", w),
    });

    Ok(checks)
}

/// Realizing into a finite pointed set commutes with the ladder: acting on a
/// realized map through the realized actions equals precomposing the map
/// with the underlying structure maps, for every map, level, and index.
pub fn verify_realized_ladder(
    x: &FinitePointedSet,
    m: usize,
    max_level: usize,
) -> Result<Vec<Check>> {
    let ladder = ExactLadder::new(m, max_level)?;
    let mut witness = None;

    'outer: for k in 0..max_level {
        for f in enumerate_phi(x, m * k) {
            for i in 0..=(k + 1) {
                let acted = if i == 0 {
                    phi_left_action(
                        2,
                        &Composition::new(vec![1, k])?,
                        m,
                        &[PhiElement::basepoint(m), f.clone()],
                    )?
                } else if i == k + 1 {
                    phi_left_action(
                        2,
                        &Composition::new(vec![k, 1])?,
                        m,
                        &[f.clone(), PhiElement::basepoint(m)],
                    )?
                } else {
                    phi_right_action(k, &coface_composition(k, i)?, m, &f)?
                };
                for e in enumerate_b(m * (k + 1)) {
                    let routed = ladder.coface(k, i, &GammaBElement::new(m, k + 1, e)?)?;
                    if acted.value_at(&e) != f.value_at(&routed.element()) {
                        witness = Some(json!({
                            "level": k, "map": "coface", "index": i,
                            "pair": e.value(),
                        }));
                        break 'outer;
                    }
                }
            }
        }
        let up = k + 1;
        for f in enumerate_phi(x, m * up) {
            for j in 0..up {
                let acted = phi_right_action(up, &codegeneracy_composition(up, j)?, m, &f)?;
                for e in enumerate_b(m * (up - 1)) {
                    let routed = ladder.codegeneracy(up, j, &GammaBElement::new(m, up - 1, e)?)?;
                    if acted.value_at(&e) != f.value_at(&routed.element()) {
                        witness = Some(json!({
                            "level": up, "map": "codegeneracy", "index": j,
                            "pair": e.value(),
                        }));
                        break 'outer;
                    }
                }
            }
        }
    }

    Ok(vec![match witness {
        None => Check::pass("realization-commutes-with-the-ladder"),
        Some(w) => Check::fail("realization-commutes-with-the-ladder", w),
    }])
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::choose_two::BElement;

    fn pair(arity: usize, i: usize, j: usize) -> GammaBElement {
        GammaBElement::new(1, arity, BElement::pair(arity, i, j).unwrap()).unwrap()
    }

    #[test]
    fn outer_cofaces_keep_only_their_block() {
        let ladder = ExactLadder::new(1, 4).unwrap();
        // Leading outer coface at level 2: only pairs inside columns 2..3
        // survive, shifted down.
        let kept = ladder.coface(2, 0, &pair(3, 2, 3)).unwrap();
        assert_eq!(kept.element().value(), Some((1, 2)));
        assert!(ladder.coface(2, 0, &pair(3, 1, 2)).unwrap().is_basepoint());
        // Trailing outer coface: only pairs inside columns 1..2 survive.
        let kept = ladder.coface(2, 3, &pair(3, 1, 2)).unwrap();
        assert_eq!(kept.element().value(), Some((1, 2)));
        assert!(ladder.coface(2, 3, &pair(3, 2, 3)).unwrap().is_basepoint());
        // Interior coface doubling block 1: the pair of copies collapses to
        // the basepoint, pairs over distinct blocks survive.
        assert!(ladder.coface(2, 1, &pair(3, 1, 2)).unwrap().is_basepoint());
        let kept = ladder.coface(2, 1, &pair(3, 1, 3)).unwrap();
        assert_eq!(kept.element().value(), Some((1, 2)));
    }

    #[test]
    fn identities_hold_for_the_pair_ladder() {
        let ladder = ExactLadder::new(1, 5).unwrap();
        let checks = verify_exact_ladder(&ladder).unwrap();
        assert_eq!(checks.len(), 5);
        assert!(checks.iter().all(|c| c.passed()), "{checks:?}");
    }

    #[test]
    fn identities_hold_for_the_doubled_ladder() {
        let ladder = ExactLadder::new(2, 5).unwrap();
        let checks = verify_exact_ladder(&ladder).unwrap();
        assert!(checks.iter().all(|c| c.passed()), "{checks:?}");
    }

    #[test]
    fn swapped_outer_cofaces_fail_with_witness() {
        // Doubled rows so the swapped level has pairs to see: at one row per
        // block the small carriers are single points and any swap there is
        // vacuous.
        let ladder = ExactLadder::with_swapped_cofaces(2, 3, 1).unwrap();
        let checks = verify_exact_ladder(&ladder).unwrap();
        let dd = checks
            .iter()
            .find(|c| c.name == "coface-coface-identities-hold")
            .unwrap();
        assert!(!dd.passed());
        assert!(dd.witness.is_some());
    }

    #[test]
    fn realization_commutes_with_the_ladder() {
        let x = FinitePointedSet::new(2).unwrap();
        for checks in [
            verify_realized_ladder(&x, 1, 4).unwrap(),
            verify_realized_ladder(&x, 2, 2).unwrap(),
        ] {
            assert!(checks.iter().all(|c| c.passed()), "{checks:?}");
        }
    }
}
