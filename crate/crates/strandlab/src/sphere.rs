//! Sphere-valued pair maps and point configurations.
//!
//! A `SphereMap` of arity k stores one unit vector of dimension n per sorted
//! pair 1 <= i < j <= k and extends antisymmetrically: evaluating at (j, i)
//! negates the stored (i, j) entry. The basepoint of the pair space goes to
//! the fixed south pole (0, ..., 0, -1). Configurations are ordered point
//! tuples whose Gauss map records normalized differences.

use crate::error::{Error, Result};
use crate::tol::{DEFAULT_SAMPLING_ATTEMPTS, TOL_COINCIDE, TOL_UNIT};
use rand::Rng;

pub fn dot(a: &[f64], b: &[f64]) -> f64 {
    a.iter().zip(b).map(|(x, y)| x * y).sum()
}

pub fn norm(a: &[f64]) -> f64 {
    dot(a, a).sqrt()
}

pub fn sub(a: &[f64], b: &[f64]) -> Vec<f64> {
    a.iter().zip(b).map(|(x, y)| x - y).collect()
}

/// The fixed basepoint vector on the (n-1)-sphere.
pub fn south_pole(n: usize) -> Vec<f64> {
    let mut v = vec![0.0; n];
    v[n - 1] = -1.0;
    v
}

/// Lex rank of the pair (i, j), 1 <= i < j <= k, among all sorted pairs.
pub fn pair_rank(k: usize, i: usize, j: usize) -> usize {
    (i - 1) * k - i * (i - 1) / 2 + (j - i - 1)
}

/// One standard normal draw by the Box-Muller transform; depends only on
/// the stream, so output is reproducible per seed.
pub fn gaussian<R: Rng>(rng: &mut R) -> f64 {
    loop {
        let u1: f64 = rng.random();
        let u2: f64 = rng.random();
        if u1 > f64::MIN_POSITIVE {
            return (-2.0 * u1.ln()).sqrt() * (std::f64::consts::TAU * u2).cos();
        }
    }
}

/// A uniformly random point on the (n-1)-sphere.
pub fn random_unit_vector<R: Rng>(rng: &mut R, n: usize) -> Vec<f64> {
    loop {
        let v: Vec<f64> = (0..n).map(|_| gaussian(rng)).collect();
        let len = norm(&v);
        if len > 1e-6 {
            return v.iter().map(|x| x / len).collect();
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct SphereMap {
    k: usize,
    n: usize,
    table: Vec<f64>,
}

impl SphereMap {
    /// Build from a flat table of (k choose 2) vectors in lex pair order.
    pub fn new(k: usize, n: usize, table: Vec<f64>) -> Result<Self> {
        if n < 2 {
            return Err(Error::invalid("ambient dimension must be at least 2"));
        }
        let pairs = k * (k.saturating_sub(1)) / 2;
        if table.len() != pairs * n {
            return Err(Error::invalid(format!(
                "table length {} does not match {} pairs of dimension {}",
                table.len(),
                pairs,
                n
            )));
        }
        for p in 0..pairs {
            let len = norm(&table[p * n..(p + 1) * n]);
            if (len - 1.0).abs() > TOL_UNIT {
                return Err(Error::invalid(format!(
                    "entry {p} has norm {len}, not within {TOL_UNIT} of 1"
                )));
            }
        }
        Ok(SphereMap { k, n, table })
    }

    pub fn from_fn(k: usize, n: usize, mut f: impl FnMut(usize, usize) -> Vec<f64>) -> Result<Self> {
        let mut table = Vec::with_capacity(k * (k.saturating_sub(1)) / 2 * n);
        for i in 1..=k {
            for j in (i + 1)..=k {
                let v = f(i, j);
                if v.len() != n {
                    return Err(Error::invalid("entry dimension mismatch"));
                }
                table.extend_from_slice(&v);
            }
        }
        SphereMap::new(k, n, table)
    }

    /// The constant map at the south pole, the basepoint of the mapping space.
    pub fn constant_south(k: usize, n: usize) -> Self {
        let pairs = k * (k.saturating_sub(1)) / 2;
        let mut table = Vec::with_capacity(pairs * n);
        for _ in 0..pairs {
            table.extend_from_slice(&south_pole(n));
        }
        SphereMap { k, n, table }
    }

    /// A table of independent uniformly random unit vectors.
    pub fn random<R: Rng>(rng: &mut R, k: usize, n: usize) -> Self {
        let pairs = k * (k.saturating_sub(1)) / 2;
        let mut table = Vec::with_capacity(pairs * n);
        for _ in 0..pairs {
            table.extend(random_unit_vector(rng, n));
        }
        SphereMap { k, n, table }
    }

    pub fn arity(&self) -> usize {
        self.k
    }

    pub fn dim(&self) -> usize {
        self.n
    }

    pub fn south(&self) -> Vec<f64> {
        south_pole(self.n)
    }

    /// The stored vector for a sorted pair i < j.
    pub fn entry(&self, i: usize, j: usize) -> &[f64] {
        debug_assert!(1 <= i && i < j && j <= self.k);
        let p = pair_rank(self.k, i, j);
        &self.table[p * self.n..(p + 1) * self.n]
    }

    /// Antisymmetric evaluation at an ordered pair of distinct indices.
    pub fn eval(&self, i: usize, j: usize) -> Vec<f64> {
        if i < j {
            self.entry(i, j).to_vec()
        } else {
            self.entry(j, i).iter().map(|x| -x).collect()
        }
    }

    /// Inner product of the evaluation with a probe vector, without
    /// materializing the negation.
    pub fn eval_dot(&self, i: usize, j: usize, v: &[f64]) -> f64 {
        if i < j {
            dot(self.entry(i, j), v)
        } else {
            -dot(self.entry(j, i), v)
        }
    }

    pub fn table(&self) -> &[f64] {
        &self.table
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct Configuration {
    n: usize,
    points: Vec<f64>,
    min_separation: f64,
}

impl Configuration {
    pub fn new(n: usize, points: Vec<f64>) -> Result<Self> {
        if n < 1 {
            return Err(Error::invalid("dimension must be at least 1"));
        }
        if points.len() % n != 0 {
            return Err(Error::invalid("point data length is not a multiple of n"));
        }
        let mut c = Configuration {
            n,
            points,
            min_separation: f64::INFINITY,
        };
        c.min_separation = c.compute_min_separation();
        Ok(c)
    }

    fn compute_min_separation(&self) -> f64 {
        let k = self.k();
        let mut best = f64::INFINITY;
        for i in 1..=k {
            for j in (i + 1)..=k {
                best = best.min(norm(&sub(self.point(i), self.point(j))));
            }
        }
        best
    }

    pub fn k(&self) -> usize {
        self.points.len() / self.n
    }

    pub fn dim(&self) -> usize {
        self.n
    }

    pub fn point(&self, i: usize) -> &[f64] {
        debug_assert!(1 <= i && i <= self.k());
        &self.points[(i - 1) * self.n..i * self.n]
    }

    pub fn points(&self) -> &[f64] {
        &self.points
    }

    /// Smallest pairwise distance; infinity when fewer than two points.
    pub fn min_separation(&self) -> f64 {
        self.min_separation
    }

    pub fn is_strict(&self) -> bool {
        self.min_separation > 0.0
    }
}

/// The table of normalized differences (x_i - x_j) / ||x_i - x_j||.
pub fn gauss_map(c: &Configuration) -> Result<SphereMap> {
    let k = c.k();
    let n = c.dim();
    if n < 2 {
        return Err(Error::invalid("Gauss maps need dimension at least 2"));
    }
    let mut table = Vec::with_capacity(k * (k.saturating_sub(1)) / 2 * n);
    for i in 1..=k {
        for j in (i + 1)..=k {
            let d = sub(c.point(i), c.point(j));
            let len = norm(&d);
            if len <= TOL_COINCIDE {
                return Err(Error::DegenerateConfiguration {
                    i,
                    j,
                    tol: TOL_COINCIDE,
                });
            }
            table.extend(d.iter().map(|x| x / len));
        }
    }
    SphereMap::new(k, n, table)
}

/// A configuration carrying a sphere map of matching arity; the alignment
/// between the two is a predicate, not a construction invariant, so boundary
/// data with coincident points is representable.
#[derive(Debug, Clone)]
pub struct DecoratedConfiguration {
    pub config: Configuration,
    pub map: SphereMap,
}

impl DecoratedConfiguration {
    pub fn new(config: Configuration, map: SphereMap) -> Result<Self> {
        if config.k() != map.arity() || config.dim() != map.dim() {
            return Err(Error::invalid("configuration and map shapes differ"));
        }
        Ok(DecoratedConfiguration { config, map })
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SampleDomain {
    Cube,
    Ball,
}

impl std::str::FromStr for SampleDomain {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s {
            "cube" => Ok(SampleDomain::Cube),
            "ball" => Ok(SampleDomain::Ball),
            other => Err(Error::invalid(format!("unknown domain {other:?}"))),
        }
    }
}

/// Rejection-sample k points with all pairwise distances >= min_sep,
/// uniformly from the unit cube [0,1]^n or the unit ball. Points are drawn
/// one at a time and a draw too close to an accepted point is retried, so the
/// attempt budget counts single-point draws.
pub fn sample_configuration<R: Rng>(
    rng: &mut R,
    k: usize,
    n: usize,
    domain: SampleDomain,
    min_sep: f64,
) -> Result<Configuration> {
    if min_sep < 0.0 {
        return Err(Error::invalid("minimum separation must be nonnegative"));
    }
    let mut attempts = 0u64;
    let mut points: Vec<f64> = Vec::with_capacity(k * n);
    let mut accepted = 0usize;
    while accepted < k {
        if attempts >= DEFAULT_SAMPLING_ATTEMPTS {
            return Err(Error::SamplingFailure { attempts });
        }
        attempts += 1;
        let p: Vec<f64> = match domain {
            SampleDomain::Cube => (0..n).map(|_| rng.random::<f64>()).collect(),
            SampleDomain::Ball => loop {
                let q: Vec<f64> = (0..n).map(|_| 2.0 * rng.random::<f64>() - 1.0).collect();
                if norm(&q) <= 1.0 {
                    break q;
                }
            },
        };
        let clear = (0..accepted)
            .all(|i| norm(&sub(&p, &points[i * n..(i + 1) * n])) >= min_sep);
        if clear {
            points.extend(p);
            accepted += 1;
        }
    }
    Configuration::new(n, points)
}

/// Translate the centroid to the origin and scale the farthest point to unit
/// norm. Normalized differences, hence Gauss maps, are unchanged.
pub fn normalize_configuration(c: &Configuration) -> Result<Configuration> {
    let k = c.k();
    let n = c.dim();
    if k < 2 {
        return Err(Error::invalid("normalization needs at least two points"));
    }
    if !c.is_strict() {
        return Err(Error::invalid(
            "normalization needs a strict configuration",
        ));
    }
    let mut centroid = vec![0.0; n];
    for i in 1..=k {
        for (a, x) in centroid.iter_mut().zip(c.point(i)) {
            *a += x / k as f64;
        }
    }
    let mut shifted = Vec::with_capacity(k * n);
    for i in 1..=k {
        shifted.extend(sub(c.point(i), &centroid));
    }
    let mut max_norm: f64 = 0.0;
    for i in 0..k {
        max_norm = max_norm.max(norm(&shifted[i * n..(i + 1) * n]));
    }
    if max_norm <= 0.0 {
        return Err(Error::invalid("configuration collapses to a point"));
    }
    for x in shifted.iter_mut() {
        *x /= max_norm;
    }
    Configuration::new(n, shifted)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rng::task_rng;
    use crate::tol::TOL_NORMALIZE;

    #[test]
    fn gauss_map_matches_worked_values() {
        let c = Configuration::new(
            4,
            vec![
                0.0, 0.0, 0.0, 0.0, //
                1.0, 0.0, 0.0, 0.0,
            ],
        )
        .unwrap();
        let f = gauss_map(&c).unwrap();
        assert_eq!(f.eval(1, 2), vec![-1.0, 0.0, 0.0, 0.0]);
        assert_eq!(f.eval(2, 1), vec![1.0, 0.0, 0.0, 0.0]);
    }

    #[test]
    fn collinear_points_share_directions() {
        let c = Configuration::new(
            3,
            vec![
                0.0, 0.0, 0.0, //
                1.0, 0.0, 0.0, //
                2.0, 0.0, 0.0,
            ],
        )
        .unwrap();
        let f = gauss_map(&c).unwrap();
        let west = vec![-1.0, 0.0, 0.0];
        assert_eq!(f.eval(1, 2), west);
        assert_eq!(f.eval(2, 3), west);
        assert_eq!(f.eval(1, 3), west);
    }

    #[test]
    fn coincident_points_name_the_offending_pair() {
        let c = Configuration::new(2, vec![0.3, 0.4, 0.7, 0.7, 0.3, 0.4]).unwrap();
        match gauss_map(&c) {
            Err(Error::DegenerateConfiguration { i, j, .. }) => assert_eq!((i, j), (1, 3)),
            other => panic!("expected degeneracy error, got {other:?}"),
        }
    }

    #[test]
    fn sampling_is_deterministic_and_respects_separation() {
        let a = sample_configuration(&mut task_rng(5, "t"), 5, 4, SampleDomain::Cube, 0.1).unwrap();
        let b = sample_configuration(&mut task_rng(5, "t"), 5, 4, SampleDomain::Cube, 0.1).unwrap();
        assert_eq!(a.points(), b.points());
        assert!(a.min_separation() >= 0.1);
        for x in a.points() {
            assert!((0.0..=1.0).contains(x));
        }
        let c = sample_configuration(&mut task_rng(5, "t"), 6, 3, SampleDomain::Ball, 0.05).unwrap();
        for i in 1..=6 {
            assert!(norm(c.point(i)) <= 1.0);
        }
    }

    #[test]
    fn infeasible_sampling_reports_failure() {
        match sample_configuration(&mut task_rng(1, "x"), 100, 2, SampleDomain::Cube, 0.5) {
            Err(Error::SamplingFailure { attempts }) => assert!(attempts > 0),
            other => panic!("expected sampling failure, got {other:?}"),
        }
    }

    #[test]
    fn normalization_is_invariant_under_scale_and_shift() {
        let rng = &mut task_rng(9, "norm");
        let c = sample_configuration(rng, 5, 3, SampleDomain::Cube, 0.05).unwrap();
        let mut moved = Vec::new();
        for i in 1..=5 {
            for (d, x) in c.point(i).iter().enumerate() {
                moved.push(3.0 * x + [0.4, -1.2, 0.7][d]);
            }
        }
        let c2 = Configuration::new(3, moved).unwrap();
        let n1 = normalize_configuration(&c).unwrap();
        let n2 = normalize_configuration(&c2).unwrap();
        for (a, b) in n1.points().iter().zip(n2.points()) {
            assert!((a - b).abs() <= TOL_NORMALIZE);
        }
        let again = normalize_configuration(&n1).unwrap();
        for (a, b) in again.points().iter().zip(n1.points()) {
            assert!((a - b).abs() <= TOL_NORMALIZE);
        }
        let f1 = gauss_map(&c).unwrap();
        let f2 = gauss_map(&n1).unwrap();
        for (a, b) in f1.table().iter().zip(f2.table()) {
            assert!((a - b).abs() <= TOL_NORMALIZE);
        }
    }

    #[test]
    fn evaluation_is_antisymmetric_and_unit() {
        let f = SphereMap::random(&mut task_rng(3, "sm"), 6, 4);
        for i in 1..=6 {
            for j in 1..=6 {
                if i == j {
                    continue;
                }
                let a = f.eval(i, j);
                let b = f.eval(j, i);
                assert!((norm(&a) - 1.0).abs() <= TOL_UNIT);
                for (x, y) in a.iter().zip(&b) {
                    assert_eq!(*x, -*y);
                }
            }
        }
    }

    #[test]
    fn non_unit_tables_are_rejected() {
        let table = vec![0.5, 0.0, 0.0];
        assert!(SphereMap::new(2, 3, table).is_err());
    }

    #[test]
    fn basepoint_map_is_constant_at_the_south_pole() {
        let f = SphereMap::constant_south(4, 3);
        assert_eq!(f.eval(2, 4), vec![0.0, 0.0, -1.0]);
        assert_eq!(f.eval(4, 2), vec![0.0, 0.0, 1.0]);
        assert_eq!(f.south(), vec![0.0, 0.0, -1.0]);
    }
}
