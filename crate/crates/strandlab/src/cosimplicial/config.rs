//! The configuration flavor: decorated configurations running between two
//! fixed boundary anchors, one block of m interior points per level slot.
//! Cofaces insert m anchor copies at either end or double one interior block
//! in place; codegeneracies delete a block. The decorating table takes the
//! oriented old value on every pair of distinct originals and puts the
//! distinguished direction u on each pair of copies of one point, so all
//! structure maps are index plumbing plus exact sign flips and the ladder
//! identities hold bitwise.

use super::Worst;
use crate::conditions::membership_checks;
use crate::error::{Error, Result};
use crate::report::Check;
use crate::sphere::{
    gauss_map, sample_configuration, south_pole, Configuration, DecoratedConfiguration,
    SampleDomain, SphereMap,
};
use crate::tol::TOL_UNIT;
use rand::Rng;
use serde_json::json;

/// The two fixed endpoint configurations and the direction assigned to
/// doubled pairs: one anchor on the bottom face of the cube, one on the top,
/// and a unit vector u.
#[derive(Debug, Clone)]
pub struct BoundaryAnchors {
    x_minus: Vec<f64>,
    x_plus: Vec<f64>,
    u: Vec<f64>,
}

impl BoundaryAnchors {
    pub fn new(x_minus: Vec<f64>, x_plus: Vec<f64>, u: Vec<f64>) -> Result<Self> {
        let n = x_minus.len();
        if n < 2 {
            return Err(Error::invalid("anchors need dimension at least 2"));
        }
        if x_plus.len() != n || u.len() != n {
            return Err(Error::invalid("anchor dimensions disagree"));
        }
        if x_minus[n - 1] != 0.0 {
            return Err(Error::invalid("the incoming anchor must lie on the bottom face"));
        }
        if x_plus[n - 1] != 1.0 {
            return Err(Error::invalid("the outgoing anchor must lie on the top face"));
        }
        let len = u.iter().map(|x| x * x).sum::<f64>().sqrt();
        if (len - 1.0).abs() > TOL_UNIT {
            return Err(Error::invalid("the doubling direction must be a unit vector"));
        }
        Ok(BoundaryAnchors { x_minus, x_plus, u })
    }

    /// Centered anchors and the positive last axis as doubling direction.
    pub fn standard(n: usize) -> Result<Self> {
        if n < 2 {
            return Err(Error::invalid("anchors need dimension at least 2"));
        }
        let mut x_minus = vec![0.5; n];
        x_minus[n - 1] = 0.0;
        let mut x_plus = vec![0.5; n];
        x_plus[n - 1] = 1.0;
        let mut u = vec![0.0; n];
        u[n - 1] = 1.0;
        BoundaryAnchors::new(x_minus, x_plus, u)
    }

    pub fn dim(&self) -> usize {
        self.x_minus.len()
    }

    pub fn x_minus(&self) -> &[f64] {
        &self.x_minus
    }

    pub fn x_plus(&self) -> &[f64] {
        &self.x_plus
    }

    pub fn u(&self) -> &[f64] {
        &self.u
    }
}

/// Negative control: write the south pole instead of u on pairs of copies.
/// Every identity checked within one ladder corrupts both routes the same
/// way, and the membership conditions never constrain a coincident pair's
/// value, so the corruption is caught only by the honest point-insertion
/// route at m = 1.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ConfigCorruption {
    None,
    SouthPoleOnCopies,
}

/// Position bookkeeping at one level: k interior blocks of m points framed
/// by the two anchors, 1-based positions over k·m + 2 points. Every piece of
/// anchor-offset arithmetic in this module goes through here.
#[derive(Debug, Clone, Copy)]
struct LevelIndex {
    m: usize,
    k: usize,
}

impl LevelIndex {
    fn from_points(m: usize, points: usize) -> Result<Self> {
        if m < 1 {
            return Err(Error::invalid("row count m must be at least 1"));
        }
        if points < 2 || (points - 2) % m != 0 {
            return Err(Error::invalid(format!(
                "{points} points do not frame whole blocks of {m}"
            )));
        }
        Ok(LevelIndex {
            m,
            k: (points - 2) / m,
        })
    }

    fn points(self) -> usize {
        self.k * self.m + 2
    }

    fn first_anchor(self) -> usize {
        1
    }

    fn last_anchor(self) -> usize {
        self.points()
    }

    /// Position of the i-th interior point, i in [1, k·m].
    fn interior(self, i: usize) -> usize {
        1 + i
    }

    /// Positions of interior block b, b in [1, k].
    fn block(self, b: usize) -> std::ops::RangeInclusive<usize> {
        let start = self.interior((b - 1) * self.m + 1);
        start..=(start + self.m - 1)
    }
}

fn check_anchors(dc: &DecoratedConfiguration, anchors: &BoundaryAnchors) -> Result<()> {
    let last = dc.config.k();
    if dc.config.point(1) != anchors.x_minus() || dc.config.point(last) != anchors.x_plus() {
        return Err(Error::precondition(
            "configuration does not start and end at the anchors",
        ));
    }
    Ok(())
}

/// Assemble the decorated configuration whose p-th point copies the input
/// point at orig[p-1]. Pairs with equal origins take the copy value; pairs
/// with distinct origins take the oriented evaluation at their origins, a
/// bitwise copy when the origins appear in order and an exact sign flip when
/// a doubled block puts them in reverse. A reversed pair of coincident
/// points is the one exception: it copies its stored direction unsigned,
/// because copies of one point are ordered by degeneration scale, not by
/// index, and a later doubling keeps that order.
fn build_from_origins(
    dc: &DecoratedConfiguration,
    orig: &[usize],
    copy_value: Option<&[f64]>,
) -> Result<DecoratedConfiguration> {
    let n = dc.config.dim();
    let count = orig.len();
    let mut points = Vec::with_capacity(count * n);
    for &o in orig {
        points.extend_from_slice(dc.config.point(o));
    }
    let mut table = Vec::with_capacity(count * count.saturating_sub(1) / 2 * n);
    for s in 0..count {
        for t in (s + 1)..count {
            if orig[s] == orig[t] {
                table.extend_from_slice(copy_value.expect("copy pairs need a copy value"));
            } else if orig[s] < orig[t] {
                table.extend_from_slice(dc.map.entry(orig[s], orig[t]));
            } else if dc.config.point(orig[s]) == dc.config.point(orig[t]) {
                table.extend_from_slice(dc.map.entry(orig[t], orig[s]));
            } else {
                table.extend(dc.map.eval(orig[s], orig[t]));
            }
        }
    }
    DecoratedConfiguration::new(Configuration::new(n, points)?, SphereMap::new(count, n, table)?)
}

/// The j-th coface one level up: j = 0 inserts m copies of the incoming
/// anchor after it, j = k+1 inserts m copies of the outgoing anchor before
/// it, and an interior j doubles block j in place.
pub fn config_coface_maybe(
    dc: &DecoratedConfiguration,
    j: usize,
    m: usize,
    anchors: &BoundaryAnchors,
    corruption: ConfigCorruption,
) -> Result<DecoratedConfiguration> {
    let n = dc.config.dim();
    if anchors.dim() != n {
        return Err(Error::invalid("anchor dimension does not match"));
    }
    let li = LevelIndex::from_points(m, dc.config.k())?;
    let k = li.k;
    if j > k + 1 {
        return Err(Error::invalid(format!(
            "coface index {j} out of range [0, {}]",
            k + 1
        )));
    }
    check_anchors(dc, anchors)?;
    let mut orig: Vec<usize> = Vec::with_capacity(li.points() + m);
    if j == 0 {
        orig.push(li.first_anchor());
        orig.extend(std::iter::repeat(li.first_anchor()).take(m));
        orig.extend(2..=li.points());
    } else if j == k + 1 {
        orig.extend(1..li.points());
        orig.extend(std::iter::repeat(li.last_anchor()).take(m + 1));
    } else {
        let block = li.block(j);
        orig.extend(1..=*block.end());
        orig.extend(block.clone());
        orig.extend((*block.end() + 1)..=li.points());
    }
    let copy_value = match corruption {
        ConfigCorruption::None => anchors.u().to_vec(),
        ConfigCorruption::SouthPoleOnCopies => south_pole(n),
    };
    build_from_origins(dc, &orig, Some(&copy_value))
}

pub fn config_coface(
    dc: &DecoratedConfiguration,
    j: usize,
    m: usize,
    anchors: &BoundaryAnchors,
) -> Result<DecoratedConfiguration> {
    config_coface_maybe(dc, j, m, anchors, ConfigCorruption::None)
}

/// Delete interior block j (1-based), relabel, restrict the table.
pub fn config_codegeneracy(
    dc: &DecoratedConfiguration,
    j: usize,
    m: usize,
) -> Result<DecoratedConfiguration> {
    let li = LevelIndex::from_points(m, dc.config.k())?;
    if li.k < 1 {
        return Err(Error::precondition("nothing to delete at level zero"));
    }
    if j < 1 || j > li.k {
        return Err(Error::invalid(format!(
            "block {j} out of range [1, {}]",
            li.k
        )));
    }
    let block = li.block(j);
    let keep: Vec<usize> = (1..=li.points()).filter(|p| !block.contains(p)).collect();
    build_from_origins(dc, &keep, None)
}

/// The point-insertion coface of the one-point-per-block model, written
/// directly: splice in a single copied point, copy the table across, and put
/// the distinguished direction on the one coincident pair. An independent
/// route to the block coface at m = 1.
pub fn sinha_coface(
    dc: &DecoratedConfiguration,
    j: usize,
    anchors: &BoundaryAnchors,
) -> Result<DecoratedConfiguration> {
    let n = dc.config.dim();
    if anchors.dim() != n {
        return Err(Error::invalid("anchor dimension does not match"));
    }
    let total = dc.config.k();
    if total < 2 {
        return Err(Error::invalid("a level carries at least its two anchors"));
    }
    let k = total - 2;
    if j > k + 1 {
        return Err(Error::invalid(format!(
            "coface index {j} out of range [0, {}]",
            k + 1
        )));
    }
    check_anchors(dc, anchors)?;
    // Which old position gets copied and where the copy lands: right after
    // the incoming anchor, right after interior point j, or right before the
    // outgoing anchor.
    let (source, insert_at) = if j == 0 {
        (1, 2)
    } else if j == k + 1 {
        (total, total)
    } else {
        (j + 1, j + 2)
    };
    let mut points = dc.config.points().to_vec();
    let src = dc.config.point(source).to_vec();
    let at = (insert_at - 1) * n;
    points.splice(at..at, src.iter().copied());
    let old = |p: usize| -> usize {
        if p < insert_at {
            p
        } else if p == insert_at {
            source
        } else {
            p - 1
        }
    };
    let count = total + 1;
    let mut table = Vec::with_capacity(count * (count - 1) / 2 * n);
    for s in 1..=count {
        for t in (s + 1)..=count {
            let (a, b) = (old(s), old(t));
            if a == b {
                table.extend_from_slice(anchors.u());
            } else {
                table.extend_from_slice(dc.map.entry(a.min(b), a.max(b)));
            }
        }
    }
    DecoratedConfiguration::new(Configuration::new(n, points)?, SphereMap::new(count, n, table)?)
}

/// Keep the anchors and the r-th point of every block, restricting the
/// table: the configuration-side strand projection. Identity at m = 1.
pub fn projection_p_r(
    dc: &DecoratedConfiguration,
    r: usize,
    m: usize,
) -> Result<DecoratedConfiguration> {
    let li = LevelIndex::from_points(m, dc.config.k())?;
    if r < 1 || r > m {
        return Err(Error::invalid(format!("row {r} out of range [1, {m}]")));
    }
    let mut keep = Vec::with_capacity(li.k + 2);
    keep.push(li.first_anchor());
    for b in 1..=li.k {
        keep.push(li.interior((b - 1) * m + r));
    }
    keep.push(li.last_anchor());
    build_from_origins(dc, &keep, None)
}

/// A ladder of sampled Gauss-decorated levels between fixed anchors.
#[derive(Debug, Clone)]
pub struct ConfigLadder {
    m: usize,
    n: usize,
    max_level: usize,
    anchors: BoundaryAnchors,
    corpus: Vec<Vec<DecoratedConfiguration>>,
}

/// Sample a ladder whose level-k corpus holds strict configurations of k·m
/// interior points between the anchors, decorated with their Gauss maps.
pub fn sample_config_ladder<R: Rng>(
    rng: &mut R,
    m: usize,
    n: usize,
    max_level: usize,
    per_level: usize,
    anchors: BoundaryAnchors,
) -> Result<ConfigLadder> {
    if per_level < 1 {
        return Err(Error::invalid("need at least one configuration per level"));
    }
    if anchors.dim() != n {
        return Err(Error::invalid("anchor dimension does not match"));
    }
    let mut corpus = Vec::with_capacity(max_level + 1);
    for k in 0..=max_level {
        let want = if k == 0 { 1 } else { per_level };
        let mut level = Vec::with_capacity(want);
        for _ in 0..want {
            level.push(sample_level(rng, k, m, n, &anchors)?);
        }
        corpus.push(level);
    }
    Ok(ConfigLadder {
        m,
        n,
        max_level,
        anchors,
        corpus,
    })
}

fn sample_level<R: Rng>(
    rng: &mut R,
    k: usize,
    m: usize,
    n: usize,
    anchors: &BoundaryAnchors,
) -> Result<DecoratedConfiguration> {
    const ATTEMPTS: u64 = 64;
    for _ in 0..ATTEMPTS {
        let mut points = anchors.x_minus().to_vec();
        if k * m > 0 {
            let interior = sample_configuration(rng, k * m, n, SampleDomain::Cube, 0.05)?;
            points.extend_from_slice(interior.points());
        }
        points.extend_from_slice(anchors.x_plus());
        let config = Configuration::new(n, points)?;
        if config.min_separation() > 1e-3 {
            let map = gauss_map(&config)?;
            return DecoratedConfiguration::new(config, map);
        }
    }
    Err(Error::SamplingFailure { attempts: ATTEMPTS })
}

impl ConfigLadder {
    pub fn m(&self) -> usize {
        self.m
    }

    pub fn dim(&self) -> usize {
        self.n
    }

    pub fn max_level(&self) -> usize {
        self.max_level
    }

    pub fn anchors(&self) -> &BoundaryAnchors {
        &self.anchors
    }

    pub fn corpus(&self, k: usize) -> &[DecoratedConfiguration] {
        &self.corpus[k]
    }

    pub fn coface(
        &self,
        dc: &DecoratedConfiguration,
        j: usize,
        corruption: ConfigCorruption,
    ) -> Result<DecoratedConfiguration> {
        config_coface_maybe(dc, j, self.m, &self.anchors, corruption)
    }

    /// Cosimplicial codegeneracy: the j-th one deletes block j + 1.
    pub fn codegeneracy(
        &self,
        dc: &DecoratedConfiguration,
        j: usize,
    ) -> Result<DecoratedConfiguration> {
        config_codegeneracy(dc, j + 1, self.m)
    }
}

fn dc_diff(a: &DecoratedConfiguration, b: &DecoratedConfiguration) -> f64 {
    if a.config.k() != b.config.k() || a.config.dim() != b.config.dim() {
        return f64::INFINITY;
    }
    let pts = a
        .config
        .points()
        .iter()
        .zip(b.config.points())
        .map(|(x, y)| (x - y).abs())
        .fold(0.0, f64::max);
    let tab = a
        .map
        .table()
        .iter()
        .zip(b.map.table())
        .map(|(x, y)| (x - y).abs())
        .fold(0.0, f64::max);
    pts.max(tab)
}

/// Check the ladder identities bitwise on the sampled corpora, membership of
/// the coface images, commutation with the strand projections, and (at
/// m = 1) agreement with the independent point-insertion route.
pub fn verify_config_ladder<R: Rng>(
    ladder: &ConfigLadder,
    rng: &mut R,
    corruption: ConfigCorruption,
) -> Result<Vec<Check>> {
    let l = ladder.max_level();
    let co = corruption;
    let mut checks = Vec::new();

    let mut worst = Worst::new();
    for k in 0..l.saturating_sub(1) {
        for (sample, dc) in ladder.corpus(k).iter().enumerate() {
            for i in 0..=(k + 1) {
                for j in (i + 1)..=(k + 2) {
                    let lhs = ladder.coface(&ladder.coface(dc, i, co)?, j, co)?;
                    let rhs = ladder.coface(&ladder.coface(dc, j - 1, co)?, i, co)?;
                    worst.update(dc_diff(&lhs, &rhs), || {
                        json!({ "level": k, "i": i, "j": j, "sample": sample })
                    });
                }
            }
        }
    }
    checks.push(worst.into_check("coface-coface-identities-hold", 0.0));

    let mut worst = Worst::new();
    for k in 2..=l {
        for (sample, dc) in ladder.corpus(k).iter().enumerate() {
            for i in 0..=(k - 2) {
                for j in i..=(k - 2) {
                    let lhs = ladder.codegeneracy(&ladder.codegeneracy(dc, i)?, j)?;
                    let rhs = ladder.codegeneracy(&ladder.codegeneracy(dc, j + 1)?, i)?;
                    worst.update(dc_diff(&lhs, &rhs), || {
                        json!({ "level": k, "i": i, "j": j, "sample": sample })
                    });
                }
            }
        }
    }
    checks.push(worst.into_check("codegeneracy-codegeneracy-identities-hold", 0.0));

    let mut worst = Worst::new();
    for k in 0..l {
        for (sample, dc) in ladder.corpus(k).iter().enumerate() {
            for j in 0..=k {
                for i in 0..=(k + 1) {
                    let lhs = ladder.codegeneracy(&ladder.coface(dc, i, co)?, j)?;
                    let rhs = if i == j || i == j + 1 {
                        dc.clone()
                    } else if i < j {
                        ladder.coface(&ladder.codegeneracy(dc, j - 1)?, i, co)?
                    } else {
                        ladder.coface(&ladder.codegeneracy(dc, j)?, i - 1, co)?
                    };
                    worst.update(dc_diff(&lhs, &rhs), || {
                        json!({ "level": k, "i": i, "j": j, "sample": sample })
                    });
                }
            }
        }
    }
    checks.push(worst.into_check("mixed-identities-hold", 0.0));

    let mut worst = Worst::new();
    for k in 0..l {
        for (sample, dc) in ladder.corpus(k).iter().enumerate() {
            for j in 0..=k {
                for i in [j, j + 1] {
                    let back = ladder.codegeneracy(&ladder.coface(dc, i, co)?, j)?;
                    worst.update(dc_diff(&back, dc), || {
                        json!({ "level": k, "i": i, "j": j, "sample": sample })
                    });
                }
            }
        }
    }
    checks.push(worst.into_check("doubling-then-deleting-is-the-identity", 0.0));

    let mut witness = None;
    let mut failures = 0usize;
    for k in 0..l {
        for (sample, dc) in ladder.corpus(k).iter().enumerate() {
            for i in 0..=(k + 1) {
                let out = ladder.coface(dc, i, co)?;
                for inner in membership_checks(&out, rng)? {
                    if !inner.passed() {
                        failures += 1;
                        if witness.is_none() {
                            witness = Some(json!({
                                "level": k, "index": i, "sample": sample,
                                "check": inner.name, "residual": inner.residual,
                            }));
                        }
                    }
                }
            }
        }
    }
    checks.push(match witness {
        None => Check::pass("membership-survives-the-cofaces"),
        Some(w) => Check::fail_residual("membership-survives-the-cofaces", failures as f64, w),
    });

    let mut worst = Worst::new();
    for k in 0..l {
        for (sample, dc) in ladder.corpus(k).iter().enumerate() {
            for r in 1..=ladder.m() {
                let projected = projection_p_r(dc, r, ladder.m())?;
                for i in 0..=(k + 1) {
                    let lhs = projection_p_r(&ladder.coface(dc, i, co)?, r, ladder.m())?;
                    let rhs = config_coface_maybe(&projected, i, 1, ladder.anchors(), co)?;
                    worst.update(dc_diff(&lhs, &rhs), || {
                        json!({ "level": k, "map": "coface", "index": i, "row": r, "sample": sample })
                    });
                }
                for j in 0..k {
                    let lhs = projection_p_r(&ladder.codegeneracy(dc, j)?, r, ladder.m())?;
                    let rhs = config_codegeneracy(&projected, j + 1, 1)?;
                    worst.update(dc_diff(&lhs, &rhs), || {
                        json!({ "level": k, "map": "codegeneracy", "index": j, "row": r, "sample": sample })
                    });
                }
            }
        }
    }
    checks.push(worst.into_check("row-projection-commutes-with-the-ladder", 0.0));

    if ladder.m() == 1 {
        let mut worst = Worst::new();
        for k in 0..l {
            for (sample, dc) in ladder.corpus(k).iter().enumerate() {
                for j in 0..=(k + 1) {
                    let block = ladder.coface(dc, j, co)?;
                    let point = sinha_coface(dc, j, ladder.anchors())?;
                    worst.update(dc_diff(&block, &point), || {
                        json!({ "level": k, "index": j, "sample": sample })
                    });
                }
            }
        }
        checks.push(worst.into_check("block-cofaces-reduce-to-the-point-cofaces", 0.0));
    }

    Ok(checks)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rng::task_rng;

    fn level_one(n: usize) -> (DecoratedConfiguration, BoundaryAnchors) {
        let anchors = BoundaryAnchors::standard(n).unwrap();
        let mut points = anchors.x_minus().to_vec();
        points.extend((0..n).map(|c| 0.2 + 0.1 * c as f64));
        points.extend_from_slice(anchors.x_plus());
        let config = Configuration::new(n, points).unwrap();
        let map = gauss_map(&config).unwrap();
        (DecoratedConfiguration::new(config, map).unwrap(), anchors)
    }

    #[test]
    fn anchors_are_validated() {
        assert!(BoundaryAnchors::standard(3).is_ok());
        assert!(BoundaryAnchors::new(vec![0.5, 0.1], vec![0.5, 1.0], vec![0.0, 1.0]).is_err());
        assert!(BoundaryAnchors::new(vec![0.5, 0.0], vec![0.5, 0.9], vec![0.0, 1.0]).is_err());
        assert!(BoundaryAnchors::new(vec![0.5, 0.0], vec![0.5, 1.0], vec![0.0, 2.0]).is_err());
    }

    #[test]
    fn interior_coface_doubles_the_point_and_marks_the_copy() {
        let (dc, anchors) = level_one(3);
        let out = config_coface(&dc, 1, 1, &anchors).unwrap();
        assert_eq!(out.config.k(), 4);
        assert_eq!(out.config.point(2), out.config.point(3));
        assert_eq!(out.map.entry(2, 3), anchors.u());
        assert_eq!(out.map.entry(1, 2), dc.map.entry(1, 2));
        assert_eq!(out.map.entry(1, 3), dc.map.entry(1, 2));
        assert_eq!(out.map.entry(2, 4), dc.map.entry(2, 3));
        assert_eq!(out.map.entry(3, 4), dc.map.entry(2, 3));
        assert_eq!(out.map.entry(1, 4), dc.map.entry(1, 3));
    }

    #[test]
    fn doubled_blocks_flip_reversed_residue_pairs() {
        let mut rng = task_rng(31, "config-flip");
        let anchors = BoundaryAnchors::standard(3).unwrap();
        let dc = sample_level(&mut rng, 1, 2, 3, &anchors).unwrap();
        let out = config_coface(&dc, 1, 2, &anchors).unwrap();
        assert_eq!(out.config.k(), 6);
        assert_eq!(out.config.point(4), dc.config.point(2));
        assert_eq!(out.config.point(5), dc.config.point(3));
        assert_eq!(out.map.entry(2, 4), anchors.u());
        assert_eq!(out.map.entry(3, 5), anchors.u());
        assert_eq!(out.map.entry(2, 5), dc.map.entry(2, 3));
        // The second residue of the first copy precedes the first residue of
        // the second copy, so that pair reads the old entry backwards.
        let flipped: Vec<f64> = dc.map.entry(2, 3).iter().map(|x| -x).collect();
        assert_eq!(out.map.entry(3, 4), &flipped[..]);
        let checks = membership_checks(&out, &mut rng).unwrap();
        assert!(checks.iter().all(|c| c.passed()), "{checks:?}");
    }

    #[test]
    fn outer_cofaces_insert_anchor_copies() {
        let mut rng = task_rng(31, "config-outer");
        let anchors = BoundaryAnchors::standard(3).unwrap();
        let dc = sample_level(&mut rng, 1, 2, 3, &anchors).unwrap();
        let out = config_coface(&dc, 0, 2, &anchors).unwrap();
        assert_eq!(out.config.k(), 6);
        for p in 2..=3 {
            assert_eq!(out.config.point(p), anchors.x_minus());
        }
        assert_eq!(out.map.entry(1, 2), anchors.u());
        assert_eq!(out.map.entry(2, 3), anchors.u());
        assert_eq!(out.map.entry(2, 4), dc.map.entry(1, 2));
        let checks = membership_checks(&out, &mut rng).unwrap();
        assert!(checks.iter().all(|c| c.passed()), "{checks:?}");

        let out = config_coface(&dc, 2, 2, &anchors).unwrap();
        for p in 4..=5 {
            assert_eq!(out.config.point(p), anchors.x_plus());
        }
        assert_eq!(out.map.entry(4, 5), anchors.u());
        assert_eq!(out.map.entry(5, 6), anchors.u());
        assert_eq!(out.map.entry(1, 4), dc.map.entry(1, 4));
    }

    #[test]
    fn doubling_then_deleting_restores_the_input() {
        let mut rng = task_rng(31, "config-restore");
        for m in [1usize, 2] {
            let anchors = BoundaryAnchors::standard(3).unwrap();
            let dc = sample_level(&mut rng, 2, m, 3, &anchors).unwrap();
            for j in 0..=3usize {
                let up = config_coface(&dc, j, m, &anchors).unwrap();
                let delete = j.clamp(1, 3);
                let back = config_codegeneracy(&up, delete, m).unwrap();
                assert_eq!(dc_diff(&back, &dc), 0.0, "m={m} j={j}");
            }
        }
    }

    #[test]
    fn deletion_restricts_to_surviving_pairs() {
        let mut rng = task_rng(31, "config-delete");
        let anchors = BoundaryAnchors::standard(3).unwrap();
        let dc = sample_level(&mut rng, 2, 1, 3, &anchors).unwrap();
        let out = config_codegeneracy(&dc, 1, 1).unwrap();
        assert_eq!(out.config.k(), 3);
        assert_eq!(out.config.point(2), dc.config.point(3));
        assert_eq!(out.map.entry(1, 2), dc.map.entry(1, 3));
        assert_eq!(out.map.entry(2, 3), dc.map.entry(3, 4));
        assert_eq!(out.map.entry(1, 3), dc.map.entry(1, 4));
    }

    #[test]
    fn projection_selects_residue_columns() {
        let mut rng = task_rng(31, "config-project");
        let anchors = BoundaryAnchors::standard(3).unwrap();
        let dc = sample_level(&mut rng, 2, 2, 3, &anchors).unwrap();
        let out = projection_p_r(&dc, 2, 2).unwrap();
        assert_eq!(out.config.k(), 4);
        assert_eq!(out.config.point(2), dc.config.point(3));
        assert_eq!(out.config.point(3), dc.config.point(5));
        assert_eq!(out.map.entry(2, 3), dc.map.entry(3, 5));

        let narrow = sample_level(&mut rng, 2, 1, 3, &anchors).unwrap();
        assert_eq!(dc_diff(&projection_p_r(&narrow, 1, 1).unwrap(), &narrow), 0.0);
    }

    #[test]
    fn identities_hold_on_sampled_ladders() {
        let mut rng = task_rng(37, "config-ladder");
        for m in [1usize, 2] {
            let anchors = BoundaryAnchors::standard(3).unwrap();
            let ladder = sample_config_ladder(&mut rng, m, 3, 3, 2, anchors).unwrap();
            let checks = verify_config_ladder(&ladder, &mut rng, ConfigCorruption::None).unwrap();
            assert_eq!(checks.len(), if m == 1 { 7 } else { 6 });
            assert!(checks.iter().all(|c| c.passed()), "m={m}: {checks:?}");
        }
    }

    #[test]
    fn copy_value_corruption_is_caught_by_the_point_route() {
        let mut rng = task_rng(37, "config-corrupt");
        let anchors = BoundaryAnchors::standard(3).unwrap();
        let ladder = sample_config_ladder(&mut rng, 1, 3, 2, 2, anchors).unwrap();
        let checks =
            verify_config_ladder(&ladder, &mut rng, ConfigCorruption::SouthPoleOnCopies).unwrap();
        for check in &checks {
            if check.name == "block-cofaces-reduce-to-the-point-cofaces" {
                assert!(!check.passed());
                assert!(check.witness.is_some());
            } else {
                // Both routes of every in-ladder identity corrupt the same
                // entries the same way, and membership never constrains a
                // coincident pair, so everything else stays green.
                assert!(check.passed(), "{check:?}");
            }
        }
    }

    #[test]
    fn anchor_mismatch_is_a_precondition_error() {
        let (dc, _) = level_one(3);
        let moved = BoundaryAnchors::new(vec![0.1, 0.1, 0.0], vec![0.5, 0.5, 1.0], vec![0.0, 0.0, 1.0])
            .unwrap();
        match config_coface(&dc, 0, 1, &moved) {
            Err(Error::Precondition(_)) => {}
            other => panic!("expected a precondition violation, got {other:?}"),
        }
    }
}
