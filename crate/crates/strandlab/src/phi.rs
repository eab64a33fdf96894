//! Realization of the pair-selection sequence on finite pointed sets: the
//! arity-k space is all pointed maps from the pair space at arity k into a
//! finite pointed set X, composition routes each pair through the structure
//! co-operation, and the divided-power actions route through the regraded
//! maps. Everything here is an honest finite operad or bimodule whose axioms
//! can be swept exhaustively.

use crate::choose_two::{enumerate_b, mu, BElement};
use crate::compositions::{enumerate_compositions, Composition};
use crate::divided::{enumerate_gamma, lambda_m, rho_m};
use crate::error::{Error, Result};
use crate::report::{Check, SweepStats};
use serde_json::json;

/// A finite pointed set: element ids 0..size-1 with 0 the basepoint.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct FinitePointedSet {
    size: usize,
}

impl FinitePointedSet {
    pub fn new(size: usize) -> Result<Self> {
        if size < 1 {
            return Err(Error::invalid("a pointed set needs at least its basepoint"));
        }
        Ok(FinitePointedSet { size })
    }

    pub fn size(&self) -> usize {
        self.size
    }
}

/// A pointed map from the arity-k pair space into X, stored densely over the
/// non-basepoint domain (one X element id per sorted pair, lex order); the
/// basepoint's image is implicit, so pointedness holds by construction.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct PhiElement {
    arity: usize,
    table: Vec<u8>,
}

impl PhiElement {
    pub fn new(x: &FinitePointedSet, arity: usize, table: Vec<u8>) -> Result<Self> {
        if table.len() != arity * arity.saturating_sub(1) / 2 {
            return Err(Error::invalid("table length does not match the pair count"));
        }
        if table.iter().any(|&v| v as usize >= x.size()) {
            return Err(Error::invalid("table value outside the pointed set"));
        }
        Ok(PhiElement { arity, table })
    }

    /// The constant-basepoint map, the basepoint of the mapping space.
    pub fn basepoint(arity: usize) -> Self {
        PhiElement {
            arity,
            table: vec![0; arity * arity.saturating_sub(1) / 2],
        }
    }

    pub fn arity(&self) -> usize {
        self.arity
    }

    pub fn table(&self) -> &[u8] {
        &self.table
    }

    /// Image of a pair-space element, with the basepoint handled implicitly.
    pub fn value_at(&self, e: &BElement) -> usize {
        debug_assert_eq!(e.arity(), self.arity);
        match e.value() {
            None => 0,
            Some((i, j)) => self.table[crate::sphere::pair_rank(self.arity, i, j)] as usize,
        }
    }
}

/// Number of pointed maps at the given arity, saturating at u64::MAX.
pub fn phi_space_size(x: &FinitePointedSet, arity: usize) -> u64 {
    let pairs = arity * arity.saturating_sub(1) / 2;
    let mut out: u64 = 1;
    for _ in 0..pairs {
        out = out.saturating_mul(x.size() as u64);
    }
    out
}

/// All pointed maps at the given arity, lex order by table; index 0 is the
/// constant-basepoint map.
pub fn enumerate_phi(x: &FinitePointedSet, arity: usize) -> Vec<PhiElement> {
    let pairs = arity * arity.saturating_sub(1) / 2;
    let mut out = Vec::new();
    let mut table = vec![0u8; pairs];
    loop {
        out.push(PhiElement {
            arity,
            table: table.clone(),
        });
        let mut pos = pairs;
        loop {
            if pos == 0 {
                return out;
            }
            pos -= 1;
            if (table[pos] as usize) + 1 < x.size() {
                table[pos] += 1;
                for t in table[pos + 1..].iter_mut() {
                    *t = 0;
                }
                break;
            }
        }
    }
}

/// Operadic composition: route every pair of the composite arity through the
/// structure co-operation and apply the outer or the matching inner map.
pub fn compose(
    x: &FinitePointedSet,
    g: &PhiElement,
    c: &Composition,
    gs: &[PhiElement],
) -> Result<PhiElement> {
    if g.arity() != c.k() || gs.len() != c.k() {
        return Err(Error::invalid("outer arity does not match the composition"));
    }
    for (s, inner) in gs.iter().enumerate() {
        if inner.arity() != c.part(s + 1) {
            return Err(Error::invalid(format!(
                "inner map {} has arity {}, expected {}",
                s + 1,
                inner.arity(),
                c.part(s + 1)
            )));
        }
    }
    let n = c.total();
    let mut table = Vec::with_capacity(n * n.saturating_sub(1) / 2);
    for e in enumerate_b(n) {
        if e.is_basepoint() {
            continue;
        }
        let w = mu(c.k(), c, &e)?;
        let v = match w.value() {
            None => 0,
            Some((0, p)) => g.value_at(&p),
            Some((s, p)) => gs[s - 1].value_at(&p),
        };
        table.push(v as u8);
    }
    PhiElement::new(x, n, table)
}

/// The realized operad: every arity space up to the bound, in enumeration
/// order, with composition given by `compose` and the unique arity-1 unit.
#[derive(Debug, Clone)]
pub struct OperadRealization {
    pub x: FinitePointedSet,
    pub spaces: Vec<Vec<PhiElement>>,
}

impl OperadRealization {
    pub fn max_arity(&self) -> usize {
        self.spaces.len() - 1
    }

    pub fn unit(&self) -> PhiElement {
        PhiElement::basepoint(1)
    }
}

pub fn realize_operad(
    x: &FinitePointedSet,
    max_arity: usize,
    budget: u64,
) -> Result<OperadRealization> {
    if max_arity < 1 {
        return Err(Error::invalid("need at least arity 1"));
    }
    let mut spaces = Vec::with_capacity(max_arity + 1);
    for k in 0..=max_arity {
        let needed = phi_space_size(x, k);
        if needed > budget {
            return Err(Error::ResourceLimit { budget, needed });
        }
        spaces.push(enumerate_phi(x, k));
    }
    Ok(OperadRealization { x: *x, spaces })
}

/// Right divided-power action: precompose the column-collapse map.
pub fn phi_right_action(
    k: usize,
    c: &Composition,
    m: usize,
    f: &PhiElement,
) -> Result<PhiElement> {
    if f.arity() != k * m {
        return Err(Error::invalid("map arity does not match k*m"));
    }
    let n = c.total();
    let mut table = Vec::with_capacity(m * n * (m * n).saturating_sub(1) / 2);
    for e in enumerate_gamma(m, n) {
        if e.is_basepoint() {
            continue;
        }
        let out = rho_m(k, c, m, &e)?;
        table.push(f.value_at(&out.element()) as u8);
    }
    Ok(PhiElement {
        arity: m * n,
        table,
    })
}

/// Left divided-power action: wedge-assemble the block restrictions.
pub fn phi_left_action(
    k: usize,
    c: &Composition,
    m: usize,
    fs: &[PhiElement],
) -> Result<PhiElement> {
    if fs.len() != k {
        return Err(Error::invalid("need one map per block"));
    }
    for (s, f) in fs.iter().enumerate() {
        if f.arity() != c.part(s + 1) * m {
            return Err(Error::invalid(format!(
                "map {} has arity {}, expected {}",
                s + 1,
                f.arity(),
                c.part(s + 1) * m
            )));
        }
    }
    let n = c.total();
    let mut table = Vec::with_capacity(m * n * (m * n).saturating_sub(1) / 2);
    for e in enumerate_gamma(m, n) {
        if e.is_basepoint() {
            continue;
        }
        let w = lambda_m(k, c, m, &e)?;
        let v = match w.value() {
            None => 0,
            Some((s, p)) => fs[s - 1].value_at(&p),
        };
        table.push(v as u8);
    }
    Ok(PhiElement {
        arity: m * n,
        table,
    })
}

/// Documented corruption for negative controls: cycle the first table entry
/// of every composite with at least one pair.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum PhiCorruption {
    None,
    CycleFirstEntry,
}

fn compose_maybe(
    corruption: PhiCorruption,
    x: &FinitePointedSet,
    g: &PhiElement,
    c: &Composition,
    gs: &[PhiElement],
) -> Result<PhiElement> {
    let mut out = compose(x, g, c, gs)?;
    if corruption == PhiCorruption::CycleFirstEntry && !out.table.is_empty() {
        out.table[0] = ((out.table[0] as usize + 1) % x.size()) as u8;
    }
    Ok(out)
}

/// Exhaustively sweep unit laws and associativity over element tuples,
/// smallest arities first, stopping at the budget.
pub fn verify_operad_axioms(
    x: &FinitePointedSet,
    max_arity: usize,
    budget: u64,
    corruption: PhiCorruption,
) -> Result<(Vec<Check>, SweepStats)> {
    let op = realize_operad(x, max_arity, budget.max(1))?;
    let unit = op.unit();
    let mut checked: u64 = 0;
    let mut exhausted = false;

    let mut unit_right = None;
    let mut unit_left = None;
    let mut assoc = None;
    let mut sizes = None;

    for k in 0..=max_arity {
        let expect = phi_space_size(x, k);
        if sizes.is_none() && op.spaces[k].len() as u64 != expect {
            sizes = Some(json!({ "arity": k, "stored": op.spaces[k].len(), "expected": expect }));
        }
    }

    for k in 0..=max_arity {
        // Feeding a unit into every input needs at least one input.
        let ones = if k >= 1 {
            Some(Composition::new(vec![1; k])?)
        } else {
            None
        };
        let single = Composition::new(vec![k])?;
        let units = vec![unit.clone(); k];
        for g in &op.spaces[k] {
            if let Some(ones) = &ones {
                checked += 1;
                if unit_right.is_none() {
                    let out = compose_maybe(corruption, x, g, ones, &units)?;
                    if out != *g {
                        unit_right = Some(json!({
                            "arity": k, "element": g.table(), "got": out.table(),
                        }));
                    }
                }
            }
            checked += 1;
            if unit_left.is_none() {
                let out = compose_maybe(corruption, x, &unit, &single, std::slice::from_ref(g))?;
                if out != *g {
                    unit_left = Some(json!({
                        "arity": k, "element": g.table(), "got": out.table(),
                    }));
                }
            }
        }
    }

    let mut triples: Vec<(usize, usize, usize)> = Vec::new();
    for k in 1..=max_arity {
        for n in 1..=max_arity {
            for p in 0..=max_arity {
                triples.push((k, n, p));
            }
        }
    }
    triples.sort_by_key(|&(k, n, p)| (k + n + p, k, n, p));

    'outer: for (k, n, p) in triples {
        let cs = enumerate_compositions(k, n)?;
        let ds = enumerate_compositions(n, p)?;
        for c in &cs {
            for d in &ds {
                let cd = c.compose(d)?;
                let inner_cost: u64 = (1..=k)
                    .map(|s| phi_space_size(x, c.part(s)))
                    .product();
                let deep_cost: u64 = (1..=n)
                    .map(|t| phi_space_size(x, d.part(t)))
                    .product();
                let cost = (op.spaces[k].len() as u64)
                    .saturating_mul(inner_cost)
                    .saturating_mul(deep_cost);
                if checked.saturating_add(cost) > budget {
                    exhausted = true;
                    break 'outer;
                }
                checked += cost;

                let mut outer_idx = vec![0usize; k];
                let radix_g: Vec<usize> = (1..=k).map(|s| op.spaces[c.part(s)].len()).collect();
                loop {
                    let gs: Vec<PhiElement> = outer_idx
                        .iter()
                        .enumerate()
                        .map(|(s, &i)| op.spaces[c.part(s + 1)][i].clone())
                        .collect();
                    let mut deep_idx = vec![0usize; n];
                    let radix_h: Vec<usize> =
                        (1..=n).map(|t| op.spaces[d.part(t)].len()).collect();
                    loop {
                        let hs: Vec<PhiElement> = deep_idx
                            .iter()
                            .enumerate()
                            .map(|(t, &i)| op.spaces[d.part(t + 1)][i].clone())
                            .collect();
                        for g in &op.spaces[k] {
                            if assoc.is_some() {
                                break;
                            }
                            let mid = compose_maybe(corruption, x, g, c, &gs)?;
                            let lhs = compose_maybe(corruption, x, &mid, d, &hs)?;
                            let mut collapsed = Vec::with_capacity(k);
                            for s in 1..=k {
                                if c.part(s) == 0 {
                                    // A nullary factor takes no inputs; the
                                    // composite leaves it alone.
                                    collapsed.push(gs[s - 1].clone());
                                    continue;
                                }
                                let ds_local = c.inner_block(d, s)?;
                                let lo = c.partial_sum(s)?;
                                let slice = hs[lo..lo + ds_local.k()].to_vec();
                                collapsed.push(compose_maybe(
                                    corruption,
                                    x,
                                    &gs[s - 1],
                                    &ds_local,
                                    &slice,
                                )?);
                            }
                            let rhs = compose_maybe(corruption, x, g, &cd, &collapsed)?;
                            if lhs != rhs {
                                assoc = Some(json!({
                                    "outer": c.parts(), "inner": d.parts(),
                                    "g": g.table(),
                                    "gs": gs.iter().map(|e| e.table().to_vec()).collect::<Vec<_>>(),
                                    "hs": hs.iter().map(|e| e.table().to_vec()).collect::<Vec<_>>(),
                                    "one-step": rhs.table(), "two-step": lhs.table(),
                                }));
                            }
                        }
                        if !advance(&mut deep_idx, &radix_h) {
                            break;
                        }
                    }
                    if !advance(&mut outer_idx, &radix_g) {
                        break;
                    }
                }
            }
        }
    }

    let checks = vec![
        match sizes {
            None => Check::pass("spaces-have-expected-sizes"),
            Some(w) => Check::fail("spaces-have-expected-sizes", w),
        },
        match unit_right {
            None => Check::pass("unit-acts-trivially-on-inputs"),
            Some(w) => Check::fail("unit-acts-trivially-on-inputs", w),
        },
        match unit_left {
            None => Check::pass("unit-acts-trivially-outside"),
            Some(w) => Check::fail("unit-acts-trivially-outside", w),
        },
        match assoc {
            None => Check::pass("composition-is-associative"),
            Some(w) => Check::fail("composition-is-associative", w),
        },
    ];
    Ok((
        checks,
        SweepStats {
            checked,
            budget_exhausted: exhausted,
        },
    ))
}

fn advance(digits: &mut [usize], radices: &[usize]) -> bool {
    let mut pos = digits.len();
    loop {
        if pos == 0 {
            return false;
        }
        pos -= 1;
        digits[pos] += 1;
        if digits[pos] < radices[pos] {
            return true;
        }
        digits[pos] = 0;
    }
}

/// The regraded mapping space and the regrading of the mapping space share
/// their carrier: both are pointed maps out of the arity-(m*k) pair space.
/// Checks the domain enumerations element by element and the counts.
pub fn verify_divided_carrier(x: &FinitePointedSet, m: usize, k: usize) -> Check {
    let direct = enumerate_b(m * k);
    let regraded: Vec<BElement> = enumerate_gamma(m, k).iter().map(|e| e.element()).collect();
    if direct != regraded {
        return Check::fail(
            "regrading-preserves-the-mapping-carrier",
            json!({ "m": m, "k": k, "reason": "domain enumerations differ" }),
        );
    }
    let pairs = regraded.iter().filter(|e| !e.is_basepoint()).count();
    let mut count: u64 = 1;
    for _ in 0..pairs {
        count = count.saturating_mul(x.size() as u64);
    }
    if count != phi_space_size(x, m * k) {
        return Check::fail(
            "regrading-preserves-the-mapping-carrier",
            json!({
                "m": m, "k": k, "reason": "map counts differ",
                "regraded": count, "direct": phi_space_size(x, m * k),
            }),
        );
    }
    Check::pass("regrading-preserves-the-mapping-carrier")
}

/// The extension of a point map: a family sending each operad element to the
/// pointed pair map that feeds the unit at the pair's two inputs and the
/// nullary element everywhere else, then applies g to the arity-2 result.
#[derive(Debug, Clone)]
pub struct ExtendedFamily {
    /// components[n][idx] is the image of element idx of the source arity-n
    /// space.
    pub components: Vec<Vec<PhiElement>>,
}

/// Build the extension and check its defining properties: it restricts to g
/// at arity 2 and is multiplicative on composable tuples within the budget.
pub fn extend_point_map(
    p_op: &OperadRealization,
    g: &[u8],
    x: &FinitePointedSet,
) -> Result<ExtendedFamily> {
    if p_op.max_arity() < 2 {
        return Err(Error::precondition("source operad must reach arity 2"));
    }
    for a in 0..=1usize {
        if p_op.spaces[a].len() != 1 {
            return Err(Error::precondition(format!(
                "source arity-{a} space must be a singleton"
            )));
        }
    }
    if g.len() != p_op.spaces[2].len() {
        return Err(Error::invalid("g must cover the arity-2 space"));
    }
    if g.iter().any(|&v| v as usize >= x.size()) {
        return Err(Error::invalid("g value outside the target pointed set"));
    }
    if g[0] != 0 {
        return Err(Error::precondition(
            "g must send the arity-2 basepoint to the basepoint",
        ));
    }
    let unit = p_op.unit();
    let nullary = PhiElement::basepoint(0);
    let mut components = Vec::with_capacity(p_op.max_arity() + 1);
    for n in 0..=p_op.max_arity() {
        let mut images = Vec::with_capacity(p_op.spaces[n].len());
        for p in &p_op.spaces[n] {
            let mut table = Vec::with_capacity(n * n.saturating_sub(1) / 2);
            for i in 1..=n {
                for j in (i + 1)..=n {
                    let mut parts = vec![0usize; n];
                    parts[i - 1] = 1;
                    parts[j - 1] = 1;
                    let c = Composition::new(parts)?;
                    let gs: Vec<PhiElement> = (1..=n)
                        .map(|s| {
                            if s == i || s == j {
                                unit.clone()
                            } else {
                                nullary.clone()
                            }
                        })
                        .collect();
                    let pinched = compose(&p_op.x, p, &c, &gs)?;
                    let idx = p_op.spaces[2]
                        .iter()
                        .position(|e| *e == pinched)
                        .ok_or_else(|| Error::invalid("pinched element not enumerated"))?;
                    table.push(g[idx]);
                }
            }
            images.push(PhiElement::new(x, n, table)?);
        }
        components.push(images);
    }
    Ok(ExtendedFamily { components })
}

/// Checks that the extension restricts to g at arity 2 and commutes with
/// composition on tuples within the budget.
pub fn verify_extension(
    p_op: &OperadRealization,
    g: &[u8],
    x: &FinitePointedSet,
    budget: u64,
) -> Result<(Vec<Check>, SweepStats)> {
    let family = extend_point_map(p_op, g, x)?;
    let mut checked: u64 = 0;
    let mut exhausted = false;

    let mut restrict = None;
    for (idx, p) in p_op.spaces[2].iter().enumerate() {
        checked += 1;
        let img = &family.components[2][idx];
        if img.table() != [g[idx]] {
            restrict = Some(json!({ "index": idx, "element": p.table(), "image": img.table() }));
            break;
        }
    }

    let mut mult = None;
    'outer: for k in 1..=p_op.max_arity() {
        for n in 0..=p_op.max_arity() {
            for c in enumerate_compositions(k, n)? {
                let radix: Vec<usize> = (1..=k).map(|s| p_op.spaces[c.part(s)].len()).collect();
                let cost = (p_op.spaces[k].len() as u64)
                    .saturating_mul(radix.iter().map(|&r| r as u64).product());
                if checked.saturating_add(cost) > budget {
                    exhausted = true;
                    break 'outer;
                }
                checked += cost;
                let mut idxs = vec![0usize; k];
                loop {
                    let ps: Vec<PhiElement> = idxs
                        .iter()
                        .enumerate()
                        .map(|(s, &i)| p_op.spaces[c.part(s + 1)][i].clone())
                        .collect();
                    let img_ps: Vec<PhiElement> = idxs
                        .iter()
                        .enumerate()
                        .map(|(s, &i)| family.components[c.part(s + 1)][i].clone())
                        .collect();
                    for (gi, p) in p_op.spaces[k].iter().enumerate() {
                        if mult.is_some() {
                            break;
                        }
                        let composed = compose(&p_op.x, p, &c, &ps)?;
                        let idx = p_op.spaces[n]
                            .iter()
                            .position(|e| *e == composed)
                            .ok_or_else(|| Error::invalid("composite not enumerated"))?;
                        let lhs = &family.components[n][idx];
                        let rhs = compose(x, &family.components[k][gi], &c, &img_ps)?;
                        if *lhs != rhs {
                            mult = Some(json!({
                                "outer-arity": k, "parts": c.parts(),
                                "element": p.table(),
                            }));
                        }
                    }
                    if !advance(&mut idxs, &radix) {
                        break;
                    }
                }
            }
        }
    }

    let checks = vec![
        match restrict {
            None => Check::pass("extension-restricts-to-the-point-map"),
            Some(w) => Check::fail("extension-restricts-to-the-point-map", w),
        },
        match mult {
            None => Check::pass("extension-commutes-with-composition"),
            Some(w) => Check::fail("extension-commutes-with-composition", w),
        },
    ];
    Ok((
        checks,
        SweepStats {
            checked,
            budget_exhausted: exhausted,
        },
    ))
}
