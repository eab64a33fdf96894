//! The numeric ladders: levels hold finite corpora of sphere-valued tables
//! (level k at arity k·m), and the structure maps are the numeric actions.
//! Every map copies entries, flips them through the oriented evaluation, or
//! inserts the south pole, so the identities hold with residual zero and the
//! checkers insist on it. Levels are infinite spaces; checking on a sampled
//! corpus is sound because every identity is pointwise.

use super::{codegeneracy_composition, coface_composition, Worst};
use crate::actions::{left_action, max_abs_diff, right_action};
use crate::compositions::Composition;
use crate::error::{Error, Result};
use crate::report::Check;
use crate::sphere::{gauss_map, sample_configuration, SampleDomain, SphereMap};
use rand::Rng;
use serde_json::json;

/// A bimodule ladder on sampled tables, numeric flavor. The distinguished
/// family is the constant south-pole table in every level.
#[derive(Debug, Clone)]
pub struct NumericLadder {
    m: usize,
    n: usize,
    max_level: usize,
    corpus: Vec<Vec<SphereMap>>,
    swapped_level: Option<usize>,
}

/// Sample a ladder whose level-k corpus holds derived tables of strict
/// configurations on k·m points; level 0 holds the unique empty table.
pub fn sample_numeric_ladder<R: Rng>(
    rng: &mut R,
    m: usize,
    n: usize,
    max_level: usize,
    per_level: usize,
) -> Result<NumericLadder> {
    if m < 1 {
        return Err(Error::invalid("row count m must be at least 1"));
    }
    if per_level < 1 {
        return Err(Error::invalid("need at least one table per level"));
    }
    let mut corpus = vec![vec![SphereMap::new(0, n, Vec::new())?]];
    for k in 1..=max_level {
        let mut level = Vec::with_capacity(per_level);
        for _ in 0..per_level {
            let config = sample_configuration(rng, k * m, n, SampleDomain::Cube, 0.05)?;
            level.push(gauss_map(&config)?);
        }
        corpus.push(level);
    }
    Ok(NumericLadder {
        m,
        n,
        max_level,
        corpus,
        swapped_level: None,
    })
}

impl NumericLadder {
    /// Negative control: exchange the two outermost cofaces at one level.
    pub fn with_swapped_cofaces(mut self, level: usize) -> Self {
        self.swapped_level = Some(level);
        self
    }

    pub fn m(&self) -> usize {
        self.m
    }

    pub fn dim(&self) -> usize {
        self.n
    }

    pub fn max_level(&self) -> usize {
        self.max_level
    }

    pub fn corpus(&self, k: usize) -> &[SphereMap] {
        &self.corpus[k]
    }

    pub fn basepoint(&self, k: usize) -> SphereMap {
        SphereMap::constant_south(k * self.m, self.n)
    }

    /// The i-th coface at level k: double block i through the right action,
    /// or adjoin the level-one basepoint on the chosen side through the left
    /// action.
    pub fn coface(&self, k: usize, i: usize, f: &SphereMap) -> Result<SphereMap> {
        if i > k + 1 {
            return Err(Error::invalid(format!(
                "coface index {i} out of range [0, {}]",
                k + 1
            )));
        }
        if f.arity() != k * self.m {
            return Err(Error::invalid("table does not live at this level"));
        }
        let i = if self.swapped_level == Some(k) && i <= 1 {
            1 - i
        } else {
            i
        };
        let beta = self.basepoint(1);
        if i == 0 {
            left_action(
                &[beta, f.clone()],
                2,
                &Composition::new(vec![1, k])?,
                self.m,
            )
        } else if i == k + 1 {
            left_action(
                &[f.clone(), beta],
                2,
                &Composition::new(vec![k, 1])?,
                self.m,
            )
        } else {
            right_action(f, k, &coface_composition(k, i)?, self.m)
        }
    }

    /// The j-th codegeneracy at level k: delete block j + 1 through the
    /// right action with an empty part.
    pub fn codegeneracy(&self, k: usize, j: usize, f: &SphereMap) -> Result<SphereMap> {
        if k < 1 || j >= k {
            return Err(Error::invalid(format!(
                "codegeneracy index {j} out of range at level {k}"
            )));
        }
        if f.arity() != k * self.m {
            return Err(Error::invalid("table does not live at this level"));
        }
        right_action(f, k, &codegeneracy_composition(k, j)?, self.m)
    }
}

/// Check every cosimplicial identity instance on every corpus element, the
/// matched codegeneracy-after-coface identities, and the exact preservation
/// of the basepoint family. All residuals are expected to be zero.
pub fn verify_numeric_ladder(ladder: &NumericLadder, tol: f64) -> Result<Vec<Check>> {
    let l = ladder.max_level();
    let mut checks = Vec::new();

    let mut worst = Worst::new();
    if l >= 2 {
        for k in 0..=(l - 2) {
            for (sample, f) in ladder.corpus(k).iter().enumerate() {
                for i in 0..=(k + 1) {
                    for j in (i + 1)..=(k + 2) {
                        let lhs = ladder.coface(k + 1, j, &ladder.coface(k, i, f)?)?;
                        let rhs = ladder.coface(k + 1, i, &ladder.coface(k, j - 1, f)?)?;
                        let r = max_abs_diff(&lhs, &rhs);
                        worst.update(r, || {
                            json!({ "level": k, "i": i, "j": j, "sample": sample })
                        });
                    }
                }
            }
        }
    }
    checks.push(worst.into_check("coface-coface-identities-hold", tol));

    let mut worst = Worst::new();
    for k in 2..=l {
        for (sample, f) in ladder.corpus(k).iter().enumerate() {
            for i in 0..=(k - 2) {
                for j in i..=(k - 2) {
                    let lhs = ladder.codegeneracy(k - 1, j, &ladder.codegeneracy(k, i, f)?)?;
                    let rhs =
                        ladder.codegeneracy(k - 1, i, &ladder.codegeneracy(k, j + 1, f)?)?;
                    let r = max_abs_diff(&lhs, &rhs);
                    worst.update(r, || {
                        json!({ "level": k, "i": i, "j": j, "sample": sample })
                    });
                }
            }
        }
    }
    checks.push(worst.into_check("codegeneracy-codegeneracy-identities-hold", tol));

    let mut worst = Worst::new();
    for k in 0..l {
        for (sample, f) in ladder.corpus(k).iter().enumerate() {
            for j in 0..=k {
                for i in 0..=(k + 1) {
                    let lhs = ladder.codegeneracy(k + 1, j, &ladder.coface(k, i, f)?)?;
                    let rhs = if i == j || i == j + 1 {
                        f.clone()
                    } else if i < j {
                        ladder.coface(k - 1, i, &ladder.codegeneracy(k, j - 1, f)?)?
                    } else {
                        ladder.coface(k - 1, i - 1, &ladder.codegeneracy(k, j, f)?)?
                    };
                    let r = max_abs_diff(&lhs, &rhs);
                    worst.update(r, || {
                        json!({ "level": k, "i": i, "j": j, "sample": sample })
                    });
                }
            }
        }
    }
    checks.push(worst.into_check("mixed-identities-hold", tol));

    let mut worst = Worst::new();
    for k in 0..l {
        for (sample, f) in ladder.corpus(k).iter().enumerate() {
            for j in 0..=k {
                for i in [j, j + 1] {
                    let back = ladder.codegeneracy(k + 1, j, &ladder.coface(k, i, f)?)?;
                    let r = max_abs_diff(&back, f);
                    worst.update(r, || {
                        json!({ "level": k, "i": i, "j": j, "sample": sample })
                    });
                }
            }
        }
    }
    checks.push(worst.into_check("doubling-then-deleting-is-the-identity", tol));

    checks.push(basepoint_family_check(ladder, tol)?);

    Ok(checks)
}

/// Images of the constant south-pole family: every coface and codegeneracy
/// reproduces the family at the target level exactly. Collisions and
/// cross-block pairs insert the south pole, copies keep it, and a reversed
/// polar read keeps its sign, so the family is a fixed tower.
fn basepoint_family_check(ladder: &NumericLadder, tol: f64) -> Result<Check> {
    let l = ladder.max_level();
    let mut worst = Worst::new();

    for k in 0..l {
        for i in 0..=(k + 1) {
            let out = ladder.coface(k, i, &ladder.basepoint(k))?;
            let r = max_abs_diff(&out, &ladder.basepoint(k + 1));
            worst.update(r, || json!({ "level": k, "map": "coface", "index": i }));
        }
        let up = k + 1;
        for j in 0..up {
            let out = ladder.codegeneracy(up, j, &ladder.basepoint(up))?;
            let r = max_abs_diff(&out, &ladder.basepoint(up - 1));
            worst.update(r, || {
                json!({ "level": up, "map": "codegeneracy", "index": j })
            });
        }
    }

    Ok(worst.into_check("basepoint-family-is-preserved", tol))
}
