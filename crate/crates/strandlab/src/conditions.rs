//! The two pointwise conditions carving the subspaces of interest out of the
//! mapping spaces: nonnegative dependence of every triple's three directions,
//! and vanishing of the signed chain-class sum on every four-element subset.
//!
//! The class summand is evaluated with oriented table lookups along the
//! representative's path and its dual path, with no extra parity factor;
//! reversing the representative flips both path products, so the summand is
//! well defined on classes. On the constant south-pole map the twelve
//! summands share one absolute value and split six against six, cancelling
//! exactly.

use crate::chains::{dual_path, enumerate_chains};
use crate::error::{Error, Result};
use crate::report::Check;
use crate::sphere::{dot, gauss_map, norm, sub, DecoratedConfiguration, Configuration, SphereMap};
use crate::tol::{TOL_ALIGN, TOL_COINCIDE, TOL_FOUR_REL, TOL_THREE};
use rand::Rng;
use serde_json::{json, Value};

/// Largest ambient dimension for which the full coefficient-tensor check is
/// attempted; beyond it the probe mode is the fallback.
pub const TENSOR_DIM_LIMIT: usize = 6;

/// Probe pairs drawn at random in probe mode, on top of all basis pairs.
pub const PROBE_SAMPLES: usize = 64;

#[derive(Debug, Clone, PartialEq)]
pub struct ThreeDependenceWitness {
    pub triple: (usize, usize, usize),
    /// Nonnegative, summing to one.
    pub coefficients: [f64; 3],
    pub residual: f64,
}

impl ThreeDependenceWitness {
    pub fn to_json(&self) -> Value {
        json!({
            "triple": [self.triple.0, self.triple.1, self.triple.2],
            "coefficients": self.coefficients,
            "residual": self.residual,
        })
    }
}

#[derive(Debug, Clone)]
pub struct ThreeDependenceReport {
    pub pass: bool,
    pub witnesses: Vec<ThreeDependenceWitness>,
    pub worst: Option<ThreeDependenceWitness>,
}

fn combination_residual(b: &[f64; 3], us: &[Vec<f64>; 3]) -> f64 {
    let n = us[0].len();
    let mut acc = vec![0.0; n];
    for (bi, u) in b.iter().zip(us) {
        for (a, x) in acc.iter_mut().zip(u) {
            *a += bi * x;
        }
    }
    norm(&acc)
}

/// Solve the 4x4 system by Gaussian elimination with partial pivoting;
/// None when a pivot degenerates.
fn solve4(mut m: [[f64; 5]; 4]) -> Option<[f64; 4]> {
    for col in 0..4 {
        let mut piv = col;
        for row in (col + 1)..4 {
            if m[row][col].abs() > m[piv][col].abs() {
                piv = row;
            }
        }
        if m[piv][col].abs() < 1e-13 {
            return None;
        }
        m.swap(col, piv);
        for row in 0..4 {
            if row == col {
                continue;
            }
            let factor = m[row][col] / m[col][col];
            for c in col..5 {
                m[row][c] -= factor * m[col][c];
            }
        }
    }
    let mut out = [0.0; 4];
    for i in 0..4 {
        out[i] = m[i][4] / m[i][i];
    }
    Some(out)
}

/// The best coefficients b >= 0, b1+b2+b3 = 1 minimizing the norm of
/// b1 u1 + b2 u2 + b3 u3, found by trying all seven nonempty supports: each
/// singleton, each pair via a clamped one-dimensional minimizer, and the full
/// support via the stationarity system of the constrained quadratic.
pub fn best_dependence(us: &[Vec<f64>; 3]) -> ([f64; 3], f64) {
    let mut best_b = [1.0, 0.0, 0.0];
    let mut best_r = f64::INFINITY;
    let mut consider = |b: [f64; 3], r: f64| {
        if r < best_r {
            best_r = r;
            best_b = b;
        }
    };

    for i in 0..3 {
        let mut b = [0.0; 3];
        b[i] = 1.0;
        consider(b, norm(&us[i]));
    }

    for (i, j) in [(0, 1), (0, 2), (1, 2)] {
        let d = sub(&us[i], &us[j]);
        let a = dot(&d, &d);
        let t = if a <= 0.0 {
            0.5
        } else {
            (-dot(&us[j], &d) / a).clamp(0.0, 1.0)
        };
        let mut b = [0.0; 3];
        b[i] = t;
        b[j] = 1.0 - t;
        consider(b, combination_residual(&b, us));
    }

    let mut sys = [[0.0; 5]; 4];
    for i in 0..3 {
        for j in 0..3 {
            sys[i][j] = 2.0 * dot(&us[i], &us[j]);
        }
        sys[i][3] = 1.0;
        sys[3][i] = 1.0;
    }
    sys[3][4] = 1.0;
    if let Some(sol) = solve4(sys) {
        let mut b = [sol[0], sol[1], sol[2]];
        if b.iter().all(|&x| x >= -1e-9) {
            for x in b.iter_mut() {
                *x = x.max(0.0);
            }
            let s: f64 = b.iter().sum();
            if s > 0.0 {
                for x in b.iter_mut() {
                    *x /= s;
                }
                consider(b, combination_residual(&b, us));
            }
        }
    }

    (best_b, best_r)
}

fn triple_directions(f: &SphereMap, t: (usize, usize, usize)) -> [Vec<f64>; 3] {
    [
        f.eval(t.0, t.1),
        f.eval(t.1, t.2),
        f.eval(t.2, t.0),
    ]
}

/// Decide, triple by triple, whether the three cyclic directions admit a
/// nonnegative vanishing combination within tol; reports the best witness
/// found for every triple and the worst one overall.
pub fn is_three_dependent(f: &SphereMap, tol: f64) -> ThreeDependenceReport {
    let k = f.arity();
    let mut witnesses = Vec::new();
    let mut worst: Option<ThreeDependenceWitness> = None;
    let mut pass = true;
    for i in 1..=k {
        for j in (i + 1)..=k {
            for l in (j + 1)..=k {
                let us = triple_directions(f, (i, j, l));
                let (b, r) = best_dependence(&us);
                let w = ThreeDependenceWitness {
                    triple: (i, j, l),
                    coefficients: b,
                    residual: r,
                };
                if r > tol {
                    pass = false;
                }
                if worst.as_ref().map_or(true, |p| w.residual > p.residual) {
                    worst = Some(w.clone());
                }
                witnesses.push(w);
            }
        }
    }
    ThreeDependenceReport {
        pass,
        witnesses,
        worst,
    }
}

/// The explicit witness for a Gauss map: coefficients proportional to the
/// three pairwise distances, under which the combination telescopes.
pub fn distance_witness(c: &Configuration, t: (usize, usize, usize)) -> Result<ThreeDependenceWitness> {
    let d = [
        norm(&sub(c.point(t.0), c.point(t.1))),
        norm(&sub(c.point(t.1), c.point(t.2))),
        norm(&sub(c.point(t.2), c.point(t.0))),
    ];
    let s: f64 = d.iter().sum();
    if !(s > 0.0) || d.iter().any(|&x| x <= 0.0) {
        return Err(Error::precondition(
            "distance witness needs pairwise distinct points",
        ));
    }
    let b = [d[0] / s, d[1] / s, d[2] / s];
    let f = gauss_map(c)?;
    let us = triple_directions(&f, t);
    Ok(ThreeDependenceWitness {
        triple: t,
        coefficients: b,
        residual: combination_residual(&b, &us),
    })
}

/// One chain-class summand at a four-element index subset: the product of the
/// three oriented direction inner products with v along the representative's
/// path times the same along the dual path with w.
pub fn eq1_summand(f: &SphereMap, t: &[usize; 4], rep: [usize; 4], v: &[f64], w: &[f64]) -> f64 {
    let d = dual_path(rep);
    let mut pv = 1.0;
    let mut pw = 1.0;
    for j in 0..3 {
        pv *= f.eval_dot(t[rep[j] - 1], t[rep[j + 1] - 1], v);
        pw *= f.eval_dot(t[d[j] - 1], t[d[j + 1] - 1], w);
    }
    pv * pw
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum FourMode {
    Tensor,
    Probe,
}

impl std::str::FromStr for FourMode {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s {
            "tensor" => Ok(FourMode::Tensor),
            "probe" => Ok(FourMode::Probe),
            other => Err(Error::invalid(format!("unknown mode {other:?}"))),
        }
    }
}

#[derive(Debug, Clone)]
pub struct FourConsistencyReport {
    pub pass: bool,
    /// Worst relative residual across subsets (sum magnitude over largest
    /// per-class magnitude); zero-over-zero counts as zero.
    pub worst_residual: f64,
    pub worst_subset: Option<[usize; 4]>,
}

fn relative(num: f64, denom: f64) -> f64 {
    if denom > 0.0 {
        num / denom
    } else if num > 0.0 {
        f64::INFINITY
    } else {
        0.0
    }
}

/// Fully symmetrized rank-three coefficient tensor of u1, u2, u3, flattened
/// to length n^3.
fn sym3(us: &[Vec<f64>; 3]) -> Vec<f64> {
    let n = us[0].len();
    let perms = [
        [0, 1, 2],
        [0, 2, 1],
        [1, 0, 2],
        [1, 2, 0],
        [2, 0, 1],
        [2, 1, 0],
    ];
    let mut out = vec![0.0; n * n * n];
    for p in 1..=n {
        for q in 1..=n {
            for r in 1..=n {
                let mut acc = 0.0;
                for perm in perms {
                    acc += us[perm[0]][p - 1] * us[perm[1]][q - 1] * us[perm[2]][r - 1];
                }
                out[((p - 1) * n + (q - 1)) * n + (r - 1)] = acc / 6.0;
            }
        }
    }
    out
}

fn class_paths(f: &SphereMap, t: &[usize; 4], rep: [usize; 4]) -> ([Vec<f64>; 3], [Vec<f64>; 3]) {
    let d = dual_path(rep);
    let vu = [
        f.eval(t[rep[0] - 1], t[rep[1] - 1]),
        f.eval(t[rep[1] - 1], t[rep[2] - 1]),
        f.eval(t[rep[2] - 1], t[rep[3] - 1]),
    ];
    let wu = [
        f.eval(t[d[0] - 1], t[d[1] - 1]),
        f.eval(t[d[1] - 1], t[d[2] - 1]),
        f.eval(t[d[2] - 1], t[d[3] - 1]),
    ];
    (vu, wu)
}

fn max_abs(xs: &[f64]) -> f64 {
    xs.iter().fold(0.0f64, |a, &x| a.max(x.abs()))
}

/// Decide whether the twelve class summands cancel on every four-element
/// subset. Tensor mode accumulates the full bilinear coefficient tensor of
/// the probe polynomial and is a complete check up to floating error; probe
/// mode evaluates the polynomial at random and basis probe pairs.
pub fn is_four_consistent<R: Rng>(
    f: &SphereMap,
    tol: f64,
    mode: FourMode,
    rng: &mut R,
) -> Result<FourConsistencyReport> {
    let k = f.arity();
    let n = f.dim();
    if mode == FourMode::Tensor && n > TENSOR_DIM_LIMIT {
        return Err(Error::ResourceLimit {
            budget: TENSOR_DIM_LIMIT as u64,
            needed: n as u64,
        });
    }
    let mut worst = 0.0f64;
    let mut worst_subset = None;
    let mut subsets = Vec::new();
    for a in 1..=k {
        for b in (a + 1)..=k {
            for c in (b + 1)..=k {
                for d in (c + 1)..=k {
                    subsets.push([a, b, c, d]);
                }
            }
        }
    }
    let classes = enumerate_chains([1, 2, 3, 4])?;

    for t in subsets {
        let rel = match mode {
            FourMode::Tensor => {
                let cube = n * n * n;
                let mut acc = vec![0.0; cube * cube];
                let mut denom = 0.0f64;
                for class in &classes {
                    let (vu, wu) = class_paths(f, &t, class.rep());
                    let sv = sym3(&vu);
                    let sw = sym3(&wu);
                    denom = denom.max(max_abs(&sv) * max_abs(&sw));
                    for (x, svx) in sv.iter().enumerate() {
                        if *svx == 0.0 {
                            continue;
                        }
                        let row = &mut acc[x * cube..(x + 1) * cube];
                        for (slot, swy) in row.iter_mut().zip(&sw) {
                            *slot += svx * swy;
                        }
                    }
                }
                relative(max_abs(&acc), denom)
            }
            FourMode::Probe => {
                let mut probes: Vec<(Vec<f64>, Vec<f64>)> = Vec::new();
                for _ in 0..PROBE_SAMPLES {
                    probes.push((
                        crate::sphere::random_unit_vector(rng, n),
                        crate::sphere::random_unit_vector(rng, n),
                    ));
                }
                for a in 0..n {
                    for b in 0..n {
                        let mut ea = vec![0.0; n];
                        let mut eb = vec![0.0; n];
                        ea[a] = 1.0;
                        eb[b] = 1.0;
                        probes.push((ea, eb));
                    }
                }
                let mut rel = 0.0f64;
                for (v, w) in &probes {
                    let mut sum = 0.0;
                    let mut denom = 0.0f64;
                    for class in &classes {
                        let s = eq1_summand(f, &t, class.rep(), v, w);
                        sum += s;
                        denom = denom.max(s.abs());
                    }
                    rel = rel.max(relative(sum.abs(), denom));
                }
                rel
            }
        };
        if rel >= worst {
            worst = rel;
            worst_subset = Some(t);
        }
    }

    Ok(FourConsistencyReport {
        pass: worst <= tol,
        worst_residual: worst,
        worst_subset,
    })
}

/// Membership checks for a decorated configuration: alignment of the map
/// with normalized differences on separated pairs, then both pointwise
/// conditions on the map itself.
pub fn membership_checks<R: Rng>(
    dc: &DecoratedConfiguration,
    rng: &mut R,
) -> Result<Vec<Check>> {
    let k = dc.config.k();
    let n = dc.config.dim();
    let mut worst_align = 0.0f64;
    let mut worst_pair = None;
    for i in 1..=k {
        for j in (i + 1)..=k {
            let d = sub(dc.config.point(i), dc.config.point(j));
            let len = norm(&d);
            if len <= TOL_COINCIDE {
                continue;
            }
            let unit: Vec<f64> = d.iter().map(|x| x / len).collect();
            let dev = norm(&sub(&dc.map.eval(i, j), &unit));
            if dev >= worst_align {
                worst_align = dev;
                worst_pair = Some((i, j));
            }
        }
    }
    let align = Check::from_residual("pair-alignment", worst_align, TOL_ALIGN, || {
        json!({ "pair": worst_pair.map(|(i, j)| vec![i, j]) })
    });

    let three = is_three_dependent(&dc.map, TOL_THREE);
    let three_check = Check::from_residual(
        "three-dependence",
        three.worst.as_ref().map_or(0.0, |w| w.residual),
        TOL_THREE,
        || three.worst.as_ref().map_or(Value::Null, |w| w.to_json()),
    );

    let mode = if n <= TENSOR_DIM_LIMIT {
        FourMode::Tensor
    } else {
        FourMode::Probe
    };
    let four = is_four_consistent(&dc.map, TOL_FOUR_REL, mode, rng)?;
    let four_check = Check::from_residual(
        "four-consistency",
        four.worst_residual,
        TOL_FOUR_REL,
        || json!({ "subset": four.worst_subset }),
    );

    Ok(vec![align, three_check, four_check])
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rng::task_rng;
    use crate::sphere::{sample_configuration, SampleDomain};
    use crate::tol::TOL_DISTANCE_WITNESS;

    #[test]
    fn gauss_maps_are_three_dependent_with_telescoping_witness() {
        let rng = &mut task_rng(21, "three");
        for _ in 0..20 {
            let c = sample_configuration(rng, 5, 4, SampleDomain::Cube, 0.05).unwrap();
            let f = gauss_map(&c).unwrap();
            let rep = is_three_dependent(&f, TOL_THREE);
            assert!(rep.pass, "worst {:?}", rep.worst);
            let w = distance_witness(&c, (1, 3, 5)).unwrap();
            assert!(w.residual <= TOL_DISTANCE_WITNESS, "residual {}", w.residual);
        }
    }

    #[test]
    fn opposite_directions_get_a_half_half_witness() {
        let s = crate::sphere::south_pole(4);
        let us = [s.clone(), crate::sphere::random_unit_vector(&mut task_rng(2, "u"), 4), {
            let mut t = s.clone();
            for x in t.iter_mut() {
                *x = -*x;
            }
            t
        }];
        let (b, r) = best_dependence(&us);
        assert!(r <= 1e-14);
        assert!((b[0] - 0.5).abs() <= 1e-12 && (b[2] - 0.5).abs() <= 1e-12);
        assert!(b[1].abs() <= 1e-12);
    }

    #[test]
    fn interior_witnesses_come_from_the_full_support() {
        let u1 = vec![1.0, 0.0, 0.0];
        let u2 = vec![-0.5, 3f64.sqrt() / 2.0, 0.0];
        let mut u3: Vec<f64> = u1.iter().zip(&u2).map(|(a, b)| -(a + b)).collect();
        let len = norm(&u3);
        for x in u3.iter_mut() {
            *x /= len;
        }
        let (b, r) = best_dependence(&[u1, u2, u3]);
        assert!(r <= 1e-12, "residual {r}");
        assert!(b.iter().all(|&x| x > 0.1), "coefficients {b:?}");
    }

    #[test]
    fn random_tables_fail_three_dependence() {
        let f = SphereMap::random(&mut task_rng(4, "neg"), 5, 4);
        let rep = is_three_dependent(&f, TOL_THREE);
        assert!(!rep.pass);
        assert!(rep.worst.unwrap().residual > 1e-3);
    }

    #[test]
    fn gauss_maps_are_four_consistent_in_both_modes() {
        let rng = &mut task_rng(31, "four");
        for _ in 0..10 {
            let c = sample_configuration(rng, 5, 4, SampleDomain::Cube, 0.05).unwrap();
            let f = gauss_map(&c).unwrap();
            let t = is_four_consistent(&f, TOL_FOUR_REL, FourMode::Tensor, rng).unwrap();
            assert!(t.pass, "tensor residual {}", t.worst_residual);
            let p = is_four_consistent(&f, TOL_FOUR_REL, FourMode::Probe, rng).unwrap();
            assert!(p.pass, "probe residual {}", p.worst_residual);
        }
    }

    #[test]
    fn constant_south_map_cancels_exactly() {
        let f = SphereMap::constant_south(5, 4);
        let rng = &mut task_rng(5, "exact");
        let t = is_four_consistent(&f, 0.0, FourMode::Tensor, rng).unwrap();
        assert_eq!(t.worst_residual, 0.0);
        let p = is_four_consistent(&f, 0.0, FourMode::Probe, rng).unwrap();
        assert_eq!(p.worst_residual, 0.0);
    }

    #[test]
    fn perturbed_gauss_map_fails_four_consistency() {
        let rng = &mut task_rng(77, "perturb");
        let c = sample_configuration(rng, 4, 4, SampleDomain::Cube, 0.1).unwrap();
        let f = gauss_map(&c).unwrap();
        let mut table = f.table().to_vec();
        table[0] += 0.1;
        let len = norm(&table[0..4]);
        for x in table[0..4].iter_mut() {
            *x /= len;
        }
        let g = SphereMap::new(4, 4, table).unwrap();
        let r = is_four_consistent(&g, TOL_FOUR_REL, FourMode::Tensor, rng).unwrap();
        assert!(!r.pass);
        assert!(r.worst_residual > 1e-4, "residual {}", r.worst_residual);
    }

    #[test]
    fn summands_are_representative_independent() {
        let rng = &mut task_rng(13, "rep");
        for _ in 0..20 {
            let f = SphereMap::random(rng, 6, 4);
            let v = crate::sphere::random_unit_vector(rng, 4);
            let w = crate::sphere::random_unit_vector(rng, 4);
            let t = [1, 3, 4, 6];
            for class in enumerate_chains([1, 2, 3, 4]).unwrap() {
                let rep = class.rep();
                let rev = [rep[3], rep[2], rep[1], rep[0]];
                let a = eq1_summand(&f, &t, rep, &v, &w);
                let b = eq1_summand(&f, &t, rev, &v, &w);
                assert!((a - b).abs() <= crate::tol::TOL_REP_INDEP);
            }
        }
    }

    #[test]
    fn tensor_mode_rejects_large_dimensions() {
        let f = SphereMap::constant_south(4, 8);
        let rng = &mut task_rng(1, "big");
        match is_four_consistent(&f, 1e-8, FourMode::Tensor, rng) {
            Err(Error::ResourceLimit { .. }) => {}
            other => panic!("expected resource limit, got {other:?}"),
        }
        assert!(is_four_consistent(&f, 1e-8, FourMode::Probe, rng).is_ok());
    }

    #[test]
    fn membership_flags_misaligned_entries() {
        let rng = &mut task_rng(6, "member");
        let c = sample_configuration(rng, 4, 4, SampleDomain::Cube, 0.1).unwrap();
        let f = gauss_map(&c).unwrap();
        let dc = DecoratedConfiguration::new(c.clone(), f.clone()).unwrap();
        let checks = membership_checks(&dc, rng).unwrap();
        assert!(checks.iter().all(|c| c.passed()), "{checks:?}");

        let mut table = f.table().to_vec();
        for x in table[0..4].iter_mut() {
            *x = -*x;
        }
        let g = SphereMap::new(4, 4, table).unwrap();
        let dc = DecoratedConfiguration::new(c, g).unwrap();
        let checks = membership_checks(&dc, rng).unwrap();
        let align = checks.iter().find(|c| c.name == "pair-alignment").unwrap();
        assert!(!align.passed());
        assert_eq!(
            align.witness.as_ref().unwrap()["pair"],
            serde_json::json!([1, 2])
        );
    }

    #[test]
    fn duplicated_points_keep_membership_on_the_collision_stratum() {
        // Duplicate the third point; fill the collided pair's entry with the
        // direction of a one-sided approach. The result is a limit of Gauss
        // maps, so every membership check stays satisfied and alignment is
        // vacuous on the coincident pair.
        let rng = &mut task_rng(8, "dup");
        let c = sample_configuration(rng, 3, 4, SampleDomain::Cube, 0.1).unwrap();
        let f = gauss_map(&c).unwrap();
        let mut points = c.points().to_vec();
        points.extend_from_slice(c.point(3));
        let c2 = Configuration::new(4, points).unwrap();
        let f2 = SphereMap::from_fn(4, 4, |i, j| {
            if j == 4 {
                if i == 3 {
                    f.eval(3, 1)
                } else {
                    f.eval(i, 3)
                }
            } else {
                f.eval(i, j)
            }
        })
        .unwrap();
        let dc = DecoratedConfiguration::new(c2, f2).unwrap();
        let checks = membership_checks(&dc, rng).unwrap();
        assert!(checks.iter().all(|c| c.passed()), "{checks:?}");
    }
}
