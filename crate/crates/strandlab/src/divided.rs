//! Divided powers of the choose-two sequence: the regraded spaces
//! gamma_m B(n) = B(m*n), their two one-sided actions by compositions, the
//! row embeddings, and an independent matrix oracle for both actions.
//!
//! Positions in arity m*n are read as column a in [1, n] and row r in [1, m]
//! with i = (a-1)*m + r. Acting by a composition relabels columns by their
//! blocks and keeps rows; a pair whose two positions land on the same
//! (block, row) cell collapses to the basepoint. Pairs are stored sorted, so
//! a cross-row pair whose cells come out in descending order is recorded
//! reversed; the numeric layer reapplies the orientation sign.

use crate::choose_two::{enumerate_b, lambda_action, rho_action, BElement, WedgeElement};
use crate::compositions::{compose_index, decompose_index, Composition};
use crate::error::{Error, Result};
use crate::report::{Check, SweepStats};
use serde_json::{json, Value};

/// An element of gamma_m B at block count n: an element of B(m*n).
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct GammaBElement {
    m: usize,
    n: usize,
    elem: BElement,
}

impl GammaBElement {
    pub fn new(m: usize, n: usize, elem: BElement) -> Result<Self> {
        if m < 1 {
            return Err(Error::invalid("row count m must be at least 1"));
        }
        if elem.arity() != m * n {
            return Err(Error::invalid(format!(
                "element arity {} is not m*n = {}",
                elem.arity(),
                m * n
            )));
        }
        Ok(GammaBElement { m, n, elem })
    }

    pub fn basepoint(m: usize, n: usize) -> Self {
        GammaBElement {
            m,
            n,
            elem: BElement::basepoint(m * n),
        }
    }

    pub fn m(&self) -> usize {
        self.m
    }

    /// Block (column) count.
    pub fn n(&self) -> usize {
        self.n
    }

    pub fn element(&self) -> BElement {
        self.elem
    }

    pub fn is_basepoint(&self) -> bool {
        self.elem.is_basepoint()
    }
}

/// Every element of gamma_m B at block count n.
pub fn enumerate_gamma(m: usize, n: usize) -> Vec<GammaBElement> {
    enumerate_b(m * n)
        .into_iter()
        .map(|e| GammaBElement { m, n, elem: e })
        .collect()
}

/// Element of the wedge of gamma_m B factors over the blocks of c; slot s in
/// [1, k] holds an element of gamma_m B at block count c_s.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GammaWedgeElement {
    m: usize,
    k: usize,
    c: Composition,
    value: Option<(usize, BElement)>,
}

impl GammaWedgeElement {
    pub fn basepoint(m: usize, k: usize, c: Composition) -> Self {
        GammaWedgeElement {
            m,
            k,
            c,
            value: None,
        }
    }

    pub fn slotted(m: usize, k: usize, c: Composition, slot: usize, elem: BElement) -> Result<Self> {
        if slot < 1 || slot > k {
            return Err(Error::invalid(format!("slot {slot} out of range [1, {k}]")));
        }
        if elem.is_basepoint() {
            return Err(Error::invalid(
                "factor basepoints are identified; use the wedge basepoint",
            ));
        }
        if elem.arity() != m * c.part(slot) {
            return Err(Error::invalid(format!(
                "slot {slot} expects arity {}, element has arity {}",
                m * c.part(slot),
                elem.arity()
            )));
        }
        Ok(GammaWedgeElement {
            m,
            k,
            c,
            value: Some((slot, elem)),
        })
    }

    pub fn value(&self) -> Option<(usize, BElement)> {
        self.value
    }

    pub fn is_basepoint(&self) -> bool {
        self.value.is_none()
    }
}

/// Image cells of a position pair under the column-collapse of c, in source
/// order: position i with column a and row r goes to cell
/// (block(a) - 1) * m + r. The result may be equal (a collision) or
/// descending (a reversal).
pub fn rho_image_cells(c: &Composition, m: usize, i: usize, j: usize) -> Result<(usize, usize)> {
    let di = decompose_index(i, m)?;
    let dj = decompose_index(j, m)?;
    let s = c.block_of(di.a)?;
    let t = c.block_of(dj.a)?;
    Ok((compose_index(s, di.r, m), compose_index(t, dj.r, m)))
}

/// Image of a position pair under the block-restriction of c: if both columns
/// lie in one block s, the pair of block-local positions (order preserved);
/// None if the columns lie in distinct blocks.
pub fn lambda_image(
    c: &Composition,
    m: usize,
    i: usize,
    j: usize,
) -> Result<Option<(usize, (usize, usize))>> {
    let di = decompose_index(i, m)?;
    let dj = decompose_index(j, m)?;
    let s = c.block_of(di.a)?;
    let t = c.block_of(dj.a)?;
    if s != t {
        return Ok(None);
    }
    let off = c.partial_sum(s)?;
    Ok(Some((
        s,
        (
            compose_index(di.a - off, di.r, m),
            compose_index(dj.a - off, dj.r, m),
        ),
    )))
}

fn check_gamma_shape(k: usize, c: &Composition, m: usize, e: &GammaBElement) -> Result<()> {
    if e.m() != m {
        return Err(Error::invalid(format!(
            "element row count {} does not match m = {m}",
            e.m()
        )));
    }
    if k != c.k() {
        return Err(Error::invalid(format!(
            "k = {k} does not match composition length {}",
            c.k()
        )));
    }
    if e.n() != c.total() {
        return Err(Error::invalid(format!(
            "element block count {} does not match composition total {}",
            e.n(),
            c.total()
        )));
    }
    Ok(())
}

/// Right action on elements: collapse columns to their blocks, keep rows,
/// collapse (block, row) collisions to the basepoint, store sorted.
pub fn rho_m(k: usize, c: &Composition, m: usize, e: &GammaBElement) -> Result<GammaBElement> {
    check_gamma_shape(k, c, m, e)?;
    let (i, j) = match e.element().value() {
        None => return Ok(GammaBElement::basepoint(m, k)),
        Some(p) => p,
    };
    let (p, q) = rho_image_cells(c, m, i, j)?;
    if p == q {
        return Ok(GammaBElement::basepoint(m, k));
    }
    let elem = BElement::pair(m * k, p.min(q), p.max(q))?;
    GammaBElement::new(m, k, elem)
}

/// Left action on elements: a pair with both columns in one block restricts
/// into that block's factor; pairs across blocks collapse to the basepoint.
pub fn lambda_m(k: usize, c: &Composition, m: usize, e: &GammaBElement) -> Result<GammaWedgeElement> {
    check_gamma_shape(k, c, m, e)?;
    let (i, j) = match e.element().value() {
        None => return Ok(GammaWedgeElement::basepoint(m, k, c.clone())),
        Some(p) => p,
    };
    match lambda_image(c, m, i, j)? {
        None => Ok(GammaWedgeElement::basepoint(m, k, c.clone())),
        Some((s, (p, q))) => {
            let elem = BElement::pair(m * c.part(s), p, q)?;
            GammaWedgeElement::slotted(m, k, c.clone(), s, elem)
        }
    }
}

/// Row embedding at row r: a pair (i, j) of columns becomes the same-row pair
/// ((i-1)m + r, (j-1)m + r).
pub fn alpha_m_embed(m: usize, r: usize, e: &BElement) -> Result<GammaBElement> {
    if r < 1 || r > m {
        return Err(Error::invalid(format!("row {r} out of range [1, {m}]")));
    }
    let n = e.arity();
    match e.value() {
        None => Ok(GammaBElement::basepoint(m, n)),
        Some((i, j)) => {
            let elem = BElement::pair(m * n, compose_index(i, r, m), compose_index(j, r, m))?;
            GammaBElement::new(m, n, elem)
        }
    }
}

/// A 0/1 matrix with at most two ones, the matrix picture of a gamma_m B
/// element: entry (row r, column a) marks position (a-1)m + r.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ZeroOneMatrix {
    rows: usize,
    cols: usize,
    data: Vec<u8>,
}

impl ZeroOneMatrix {
    pub fn zero(rows: usize, cols: usize) -> Self {
        ZeroOneMatrix {
            rows,
            cols,
            data: vec![0; rows * cols],
        }
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn get(&self, r: usize, a: usize) -> u8 {
        self.data[(r - 1) * self.cols + (a - 1)]
    }

    fn add(&mut self, r: usize, a: usize, v: u8) {
        self.data[(r - 1) * self.cols + (a - 1)] += v;
    }

    /// The (row, column) positions of the ones, sorted by position index.
    pub fn ones(&self) -> Vec<(usize, usize)> {
        let mut out = Vec::new();
        for a in 1..=self.cols {
            for r in 1..=self.rows {
                if self.get(r, a) == 1 {
                    out.push((r, a));
                }
            }
        }
        out
    }

    pub fn validate(&self) -> Result<()> {
        if self.rows < 1 {
            return Err(Error::invalid("matrix needs at least one row"));
        }
        if self.data.iter().any(|&v| v > 1) {
            return Err(Error::invalid("matrix entries must be 0 or 1"));
        }
        let count: usize = self.data.iter().map(|&v| v as usize).sum();
        if count != 0 && count != 2 {
            return Err(Error::invalid(format!(
                "matrix must hold exactly zero or two ones, found {count}"
            )));
        }
        Ok(())
    }

    pub fn from_element(e: &GammaBElement) -> Self {
        let mut mat = ZeroOneMatrix::zero(e.m(), e.n());
        if let Some((i, j)) = e.element().value() {
            let di = decompose_index(i, e.m()).expect("valid position");
            let dj = decompose_index(j, e.m()).expect("valid position");
            mat.add(di.r, di.a, 1);
            mat.add(dj.r, dj.a, 1);
        }
        mat
    }

    pub fn to_element(&self) -> Result<GammaBElement> {
        self.validate()?;
        let ones = self.ones();
        if ones.is_empty() {
            return Ok(GammaBElement::basepoint(self.rows, self.cols));
        }
        let i = compose_index(ones[0].1, ones[0].0, self.rows);
        let j = compose_index(ones[1].1, ones[1].0, self.rows);
        let elem = BElement::pair(self.rows * self.cols, i.min(j), i.max(j))?;
        GammaBElement::new(self.rows, self.cols, elem)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ActionSide {
    Left,
    Right,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum MatrixOracleOut {
    /// Result of the right action: a matrix over k columns.
    Right(ZeroOneMatrix),
    /// Left action landed on the wedge basepoint.
    LeftBasepoint,
    /// Left action landed in block s with the sliced submatrix.
    LeftSlot(usize, ZeroOneMatrix),
}

/// Matrix route for both actions, independent of the position arithmetic of
/// rho_m and lambda_m: the right action adds column groups entrywise and
/// zeroes the matrix when entries clash; the left action slices the column
/// range of one block.
pub fn matrix_oracle(
    k: usize,
    c: &Composition,
    m: usize,
    mat: &ZeroOneMatrix,
    side: ActionSide,
) -> Result<MatrixOracleOut> {
    mat.validate()?;
    if mat.rows() != m {
        return Err(Error::invalid("matrix row count does not match m"));
    }
    if k != c.k() || mat.cols() != c.total() {
        return Err(Error::invalid("matrix shape does not match composition"));
    }
    match side {
        ActionSide::Right => {
            let mut out = ZeroOneMatrix::zero(m, k);
            for a in 1..=mat.cols() {
                for r in 1..=m {
                    let v = mat.get(r, a);
                    if v > 0 {
                        out.add(r, c.block_of(a)?, v);
                    }
                }
            }
            if out.data.iter().any(|&v| v > 1) {
                return Ok(MatrixOracleOut::Right(ZeroOneMatrix::zero(m, k)));
            }
            Ok(MatrixOracleOut::Right(out))
        }
        ActionSide::Left => {
            let ones = mat.ones();
            if ones.is_empty() {
                return Ok(MatrixOracleOut::LeftBasepoint);
            }
            let s = c.block_of(ones[0].1)?;
            let t = c.block_of(ones[1].1)?;
            if s != t {
                return Ok(MatrixOracleOut::LeftBasepoint);
            }
            let off = c.partial_sum(s)?;
            let width = c.part(s);
            let mut sub = ZeroOneMatrix::zero(m, width);
            for &(r, a) in &ones {
                sub.add(r, a - off, 1);
            }
            Ok(MatrixOracleOut::LeftSlot(s, sub))
        }
    }
}

fn b_json(e: &BElement) -> Value {
    match e.value() {
        None => json!({ "arity": e.arity(), "value": "basepoint" }),
        Some((i, j)) => json!({ "arity": e.arity(), "value": [i, j] }),
    }
}

fn gamma_json(e: &GammaBElement) -> Value {
    json!({ "m": e.m(), "blocks": e.n(), "element": b_json(&e.element()) })
}

fn wedge_json(w: &GammaWedgeElement) -> Value {
    match w.value() {
        None => json!("basepoint"),
        Some((s, e)) => json!({ "slot": s, "element": b_json(&e) }),
    }
}

/// Documented corruptions used as negative controls.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum DividedCorruption {
    None,
    /// Right action pretends the lexicographically first pair collapses.
    DropFirstPair,
    /// Row embedding mixes rows between the two legs of a pair.
    MixRows,
}

fn rho_m_maybe(
    corruption: DividedCorruption,
    k: usize,
    c: &Composition,
    m: usize,
    e: &GammaBElement,
) -> Result<GammaBElement> {
    let out = rho_m(k, c, m, e)?;
    if corruption == DividedCorruption::DropFirstPair
        && out.element().value() == Some((1, 2))
    {
        return Ok(GammaBElement::basepoint(m, k));
    }
    Ok(out)
}

fn alpha_maybe(
    corruption: DividedCorruption,
    m: usize,
    r: usize,
    e: &BElement,
) -> Result<GammaBElement> {
    match (corruption, e.value()) {
        (DividedCorruption::MixRows, Some((i, j))) => {
            let r2 = r % m + 1;
            let n = e.arity();
            let elem = BElement::pair(m * n, compose_index(i, r, m), compose_index(j, r2, m))?;
            GammaBElement::new(m, n, elem)
        }
        _ => alpha_m_embed(m, r, e),
    }
}

/// Exhaustively check the two-sided action axioms on all elements with
/// m * blocks <= max_total, smallest levels first, stopping at the budget:
/// unit compositions act as the identity, iterated one-sided actions follow
/// the composite composition, and the two sides commute.
pub fn verify_bimodule_axioms(
    m: usize,
    max_total: usize,
    budget: u64,
    corruption: DividedCorruption,
) -> Result<(Vec<Check>, SweepStats)> {
    if m < 1 || max_total < m {
        return Err(Error::invalid("need m >= 1 and max_total >= m"));
    }
    let nmax = max_total / m;
    let mut checked: u64 = 0;
    let mut exhausted = false;

    let mut unit_right: Option<Value> = None;
    let mut unit_left: Option<Value> = None;
    let mut assoc_right: Option<Value> = None;
    let mut coassoc_left: Option<Value> = None;
    let mut compat: Option<Value> = None;
    let mut gamma1: Option<Value> = None;

    for k in 1..=nmax {
        let ones = Composition::new(vec![1; k])?;
        let single = Composition::new(vec![k])?;
        for e in enumerate_gamma(m, k) {
            checked += 2;
            if unit_right.is_none() {
                let out = rho_m_maybe(corruption, k, &ones, m, &e)?;
                if out != e {
                    unit_right = Some(json!({
                        "m": m, "level": k,
                        "element": gamma_json(&e), "got": gamma_json(&out),
                    }));
                }
            }
            if unit_left.is_none() {
                let out = lambda_m(1, &single, m, &e)?;
                let want = match e.element().value() {
                    None => GammaWedgeElement::basepoint(m, 1, single.clone()),
                    Some(_) => {
                        GammaWedgeElement::slotted(m, 1, single.clone(), 1, e.element())?
                    }
                };
                if out != want {
                    unit_left = Some(json!({
                        "m": m, "level": k,
                        "element": gamma_json(&e), "got": wedge_json(&out),
                    }));
                }
            }
        }
    }

    if m == 1 {
        for n in 0..=nmax.min(8) {
            for k in 1..=nmax {
                for c in crate::compositions::enumerate_compositions(k, n)? {
                    for e in enumerate_gamma(1, n) {
                        checked += 2;
                        if gamma1.is_some() {
                            continue;
                        }
                        let via_rows = rho_m_maybe(corruption, k, &c, 1, &e)?;
                        let direct = rho_action(k, &c, &e.element())?;
                        let lam_rows = lambda_m(k, &c, 1, &e)?;
                        let lam_direct = lambda_action(k, &c, &e.element())?;
                        let lam_match = match (lam_rows.value(), lam_direct.value()) {
                            (None, None) => true,
                            (Some((s, a)), Some((t, b))) => s == t && a == b,
                            _ => false,
                        };
                        if via_rows.element() != direct || !lam_match {
                            gamma1 = Some(json!({
                                "k": k, "parts": c.parts(), "element": b_json(&e.element()),
                            }));
                        }
                    }
                }
            }
        }
    }

    // Triples of levels (k, n, p) with c from I(k, n) and d from I(n, p),
    // visited smallest first so the budget trims the expensive tail only.
    let mut triples: Vec<(usize, usize, usize)> = Vec::new();
    for k in 1..=nmax {
        for n in 1..=nmax {
            for p in 1..=nmax {
                triples.push((k, n, p));
            }
        }
    }
    triples.sort_by_key(|&(k, n, p)| (k + n + p, k, n, p));

    'outer: for (k, n, p) in triples {
        let cs = crate::compositions::enumerate_compositions(k, n)?;
        let ds = crate::compositions::enumerate_compositions(n, p)?;
        let elems = enumerate_gamma(m, p);
        for c in &cs {
            for d in &ds {
                let cost = 3 * elems.len() as u64;
                if checked + cost > budget {
                    exhausted = true;
                    break 'outer;
                }
                checked += cost;
                let cd = c.compose(d)?;
                for e in &elems {
                    if assoc_right.is_none() {
                        let step = rho_m_maybe(corruption, n, d, m, e)?;
                        let two = rho_m_maybe(corruption, k, c, m, &step)?;
                        let one = rho_m_maybe(corruption, k, &cd, m, e)?;
                        if two != one {
                            assoc_right = Some(json!({
                                "m": m, "outer": c.parts(), "inner": d.parts(),
                                "element": gamma_json(e),
                                "iterated": gamma_json(&two), "composite": gamma_json(&one),
                            }));
                        }
                    }
                    if coassoc_left.is_none() {
                        // One restriction along d, then locate the block of c.
                        let w1 = lambda_m(n, d, m, e)?;
                        let route1 = match w1.value() {
                            None => None,
                            Some((i, elem)) => {
                                let s = c.block_of(i)?;
                                Some((s, i - c.partial_sum(s)?, elem))
                            }
                        };
                        // Restrict along the composite, then within the block.
                        let w2 = lambda_m(k, &cd, m, e)?;
                        let route2 = match w2.value() {
                            None => None,
                            Some((s, elem)) => {
                                let ds_local = c.inner_block(d, s)?;
                                let gamma = GammaBElement::new(m, ds_local.total(), elem)?;
                                let w3 = lambda_m(ds_local.k(), &ds_local, m, &gamma)?;
                                w3.value().map(|(i, inner)| (s, i, inner))
                            }
                        };
                        if route1 != route2 {
                            coassoc_left = Some(json!({
                                "m": m, "outer": c.parts(), "inner": d.parts(),
                                "element": gamma_json(e),
                            }));
                        }
                    }
                    if compat.is_none() {
                        // Right action along d, then restrict along c.
                        let x = rho_m_maybe(corruption, n, d, m, e)?;
                        let route1 = lambda_m(k, c, m, &x)?.value();
                        // Restrict along the composite, then act within the block.
                        let w2 = lambda_m(k, &cd, m, e)?;
                        let route2 = match w2.value() {
                            None => None,
                            Some((s, elem)) => {
                                let ds_local = c.inner_block(d, s)?;
                                let gamma = GammaBElement::new(m, ds_local.total(), elem)?;
                                let acted =
                                    rho_m_maybe(corruption, c.part(s), &ds_local, m, &gamma)?;
                                acted.element().value().map(|_| (s, acted.element()))
                            }
                        };
                        if route1 != route2 {
                            compat = Some(json!({
                                "m": m, "grouping": c.parts(), "composition": d.parts(),
                                "element": gamma_json(e),
                            }));
                        }
                    }
                }
            }
        }
    }

    let mut checks = vec![
        to_check("unit-right-action-is-identity", unit_right),
        to_check("unit-left-action-is-identity", unit_left),
        to_check("right-actions-follow-composite-composition", assoc_right),
        to_check("left-restrictions-coassociate", coassoc_left),
        to_check("left-and-right-actions-commute", compat),
    ];
    if m == 1 {
        checks.push(to_check("row-count-one-matches-pair-actions", gamma1));
    }
    Ok((
        checks,
        SweepStats {
            checked,
            budget_exhausted: exhausted,
        },
    ))
}

fn to_check(name: &str, witness: Option<Value>) -> Check {
    match witness {
        None => Check::pass(name),
        Some(w) => Check::fail(name, w),
    }
}

/// The number of weak compositions of n into k parts.
fn weak_composition_count(k: usize, n: usize) -> u64 {
    // C(n + k - 1, k - 1), kept exact in u128 through the running product.
    let top = (n + k - 1) as u128;
    let pick = (k - 1) as u128;
    let mut acc: u128 = 1;
    for i in 0..pick {
        acc = acc * (top - i) / (i + 1);
    }
    acc.min(u64::MAX as u128) as u64
}

/// Check both actions against the matrix route: the position arithmetic and
/// the entrywise matrix algebra must give identical answers, including the
/// encode/decode round trip. The round trip runs on every element with
/// m * blocks <= max_total; the action sweep walks composition shapes
/// smallest first and stops at the budget, so every element is still hit at
/// least through the one-part shapes before anything is trimmed.
pub fn verify_matrix_oracle(
    m: usize,
    max_total: usize,
    budget: u64,
    corruption: DividedCorruption,
) -> Result<(Vec<Check>, SweepStats)> {
    if m < 1 || max_total < m {
        return Err(Error::invalid("need m >= 1 and max_total >= m"));
    }
    let nmax = max_total / m;
    let mut checked: u64 = 0;
    let mut exhausted = false;
    let mut round_trip: Option<Value> = None;
    let mut right_w: Option<Value> = None;
    let mut left_w: Option<Value> = None;

    for n in 0..=nmax {
        for e in enumerate_gamma(m, n) {
            checked += 1;
            if round_trip.is_none() && ZeroOneMatrix::from_element(&e).to_element()? != e {
                round_trip = Some(json!({ "m": m, "element": gamma_json(&e) }));
            }
        }
    }

    let mut cells: Vec<(usize, usize)> = Vec::new();
    for k in 1..=nmax.max(1) {
        for n in 0..=nmax {
            cells.push((k, n));
        }
    }
    cells.sort_by_key(|&(k, n)| (k + n, k, n));

    for (k, n) in cells {
        let elems = enumerate_gamma(m, n);
        let cell_cost = 2 * weak_composition_count(k, n).saturating_mul(elems.len() as u64);
        if checked.saturating_add(cell_cost) > budget {
            exhausted = true;
            break;
        }
        checked += cell_cost;
        for c in crate::compositions::enumerate_compositions(k, n)? {
            for e in &elems {
                let mat = ZeroOneMatrix::from_element(e);
                if right_w.is_none() {
                    let via_positions = rho_m_maybe(corruption, k, &c, m, e)?;
                    let via_matrix = match matrix_oracle(k, &c, m, &mat, ActionSide::Right)? {
                        MatrixOracleOut::Right(res) => res.to_element()?,
                        _ => unreachable!("right side returns a matrix"),
                    };
                    if via_positions != via_matrix {
                        right_w = Some(json!({
                            "m": m, "parts": c.parts(), "element": gamma_json(e),
                            "positions": gamma_json(&via_positions),
                            "matrix": gamma_json(&via_matrix),
                        }));
                    }
                }
                if left_w.is_none() {
                    let via_positions = lambda_m(k, &c, m, e)?;
                    let via_matrix = matrix_oracle(k, &c, m, &mat, ActionSide::Left)?;
                    let agree = match (&via_matrix, via_positions.value()) {
                        (MatrixOracleOut::LeftBasepoint, None) => true,
                        (MatrixOracleOut::LeftSlot(s, sub), Some((t, elem))) => {
                            *s == t && sub.to_element()?.element() == elem
                        }
                        _ => false,
                    };
                    if !agree {
                        left_w = Some(json!({
                            "m": m, "parts": c.parts(), "element": gamma_json(e),
                        }));
                    }
                }
            }
        }
    }

    let checks = vec![
        to_check("matrix-encoding-round-trips", round_trip),
        to_check("right-action-matches-the-matrix-route", right_w),
        to_check("left-action-matches-the-matrix-route", left_w),
    ];
    Ok((
        checks,
        SweepStats {
            checked,
            budget_exhausted: exhausted,
        },
    ))
}

/// Check that the row embeddings intertwine the pair actions with the
/// divided-power actions, slot-wise, over all shapes with m * n <= max_total.
pub fn verify_alpha_morphism(
    m: usize,
    max_total: usize,
    corruption: DividedCorruption,
) -> Result<(Vec<Check>, SweepStats)> {
    if m < 1 || max_total < m {
        return Err(Error::invalid("need m >= 1 and max_total >= m"));
    }
    let nmax = max_total / m;
    let mut checked: u64 = 0;
    let mut right_w: Option<Value> = None;
    let mut left_w: Option<Value> = None;
    let mut inj_w: Option<Value> = None;

    for n in 0..=nmax {
        // Joint injectivity across rows at this arity.
        let mut seen: Vec<(GammaBElement, usize, BElement)> = Vec::new();
        for r in 1..=m {
            for e in enumerate_b(n) {
                if e.is_basepoint() {
                    continue;
                }
                checked += 1;
                let img = alpha_maybe(corruption, m, r, &e)?;
                if let Some((prev_r, prev_e)) =
                    seen.iter().find(|(i, _, _)| *i == img).map(|(_, r, e)| (*r, *e))
                {
                    if inj_w.is_none() && (prev_r, prev_e) != (r, e) {
                        inj_w = Some(json!({
                            "m": m, "arity": n,
                            "first": { "row": prev_r, "element": b_json(&prev_e) },
                            "second": { "row": r, "element": b_json(&e) },
                        }));
                    }
                }
                seen.push((img, r, e));
            }
        }

        for k in 1..=nmax {
            for c in crate::compositions::enumerate_compositions(k, n)? {
                for r in 1..=m {
                    for e in enumerate_b(n) {
                        checked += 2;
                        if right_w.is_none() {
                            let acted = rho_action(k, &c, &e)?;
                            let lhs = alpha_maybe(corruption, m, r, &acted)?;
                            let emb = alpha_maybe(corruption, m, r, &e)?;
                            let rhs = rho_m(k, &c, m, &emb)?;
                            if lhs != rhs {
                                right_w = Some(json!({
                                    "m": m, "row": r, "parts": c.parts(),
                                    "element": b_json(&e),
                                    "embed-then-act": gamma_json(&rhs),
                                    "act-then-embed": gamma_json(&lhs),
                                }));
                            }
                        }
                        if left_w.is_none() {
                            let acted: WedgeElement = lambda_action(k, &c, &e)?;
                            let emb = alpha_maybe(corruption, m, r, &e)?;
                            let rhs = lambda_m(k, &c, m, &emb)?;
                            let lhs = match acted.value() {
                                None => None,
                                Some((s, inner)) => {
                                    Some((s, alpha_maybe(corruption, m, r, &inner)?.element()))
                                }
                            };
                            if lhs != rhs.value() {
                                left_w = Some(json!({
                                    "m": m, "row": r, "parts": c.parts(),
                                    "element": b_json(&e),
                                }));
                            }
                        }
                    }
                }
            }
        }
    }

    let checks = vec![
        to_check("row-embedding-is-jointly-injective", inj_w),
        to_check("row-embedding-intertwines-right-actions", right_w),
        to_check("row-embedding-intertwines-left-actions", left_w),
    ];
    Ok((
        checks,
        SweepStats {
            checked,
            budget_exhausted: false,
        },
    ))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::compositions::enumerate_compositions;

    fn comp(parts: &[usize]) -> Composition {
        Composition::new(parts.to_vec()).unwrap()
    }

    fn gpair(m: usize, n: usize, i: usize, j: usize) -> GammaBElement {
        GammaBElement::new(m, n, BElement::pair(m * n, i, j).unwrap()).unwrap()
    }

    #[test]
    fn right_action_matches_frozen_values() {
        let c = comp(&[1, 2]);
        let cases = [
            ((1, 5), Some((1, 3))),
            ((1, 6), Some((1, 4))),
            ((3, 5), None),
            ((1, 2), Some((1, 2))),
            ((5, 6), Some((3, 4))),
            ((2, 3), Some((2, 3))),
            ((2, 5), Some((2, 3))),
            ((3, 6), Some((3, 4))),
            ((4, 5), Some((3, 4))),
        ];
        for ((i, j), want) in cases {
            let out = rho_m(2, &c, 2, &gpair(2, 3, i, j)).unwrap();
            assert_eq!(out.element().value(), want, "pair ({i},{j})");
            assert_eq!(out.n(), 2);
        }
        let bp = rho_m(2, &c, 2, &GammaBElement::basepoint(2, 3)).unwrap();
        assert!(bp.is_basepoint());
    }

    #[test]
    fn left_action_matches_frozen_values() {
        let c = comp(&[1, 2]);
        let cases = [
            ((3, 5), Some((2, (1, 3)))),
            ((3, 6), Some((2, (1, 4)))),
            ((1, 2), Some((1, (1, 2)))),
            ((1, 3), None),
            ((5, 6), Some((2, (3, 4)))),
        ];
        for ((i, j), want) in cases {
            let out = lambda_m(2, &c, 2, &gpair(2, 3, i, j)).unwrap();
            let got = out.value().map(|(s, e)| (s, e.value().unwrap()));
            assert_eq!(got, want, "pair ({i},{j})");
        }
    }

    #[test]
    fn row_count_one_reduces_to_pair_actions() {
        for n in 0..=8usize {
            for k in 1..=4usize {
                for c in enumerate_compositions(k, n).unwrap() {
                    for e in enumerate_gamma(1, n) {
                        let got = rho_m(k, &c, 1, &e).unwrap();
                        let want = rho_action(k, &c, &e.element()).unwrap();
                        assert_eq!(got.element(), want);
                        let got = lambda_m(k, &c, 1, &e).unwrap();
                        let want = lambda_action(k, &c, &e.element()).unwrap();
                        assert_eq!(got.value(), want.value());
                    }
                }
            }
        }
    }

    #[test]
    fn outputs_keep_their_source_rows() {
        let m = 3;
        for n in 1..=3usize {
            for k in 1..=3usize {
                for c in enumerate_compositions(k, n).unwrap() {
                    for e in enumerate_gamma(m, n) {
                        let (i, j) = match e.element().value() {
                            Some(p) => p,
                            None => continue,
                        };
                        let rows = |x: usize| (x - 1) % m + 1;
                        let mut want = [rows(i), rows(j)];
                        if let Some((p, q)) = rho_m(k, &c, m, &e).unwrap().element().value() {
                            let mut got = [rows(p), rows(q)];
                            got.sort_unstable();
                            want.sort_unstable();
                            assert_eq!(got, want);
                        }
                    }
                }
            }
        }
    }

    #[test]
    fn row_embedding_matches_frozen_values() {
        let e = BElement::pair(2, 1, 2).unwrap();
        assert_eq!(
            alpha_m_embed(2, 2, &e).unwrap().element().value(),
            Some((2, 4))
        );
        assert_eq!(
            alpha_m_embed(2, 1, &e).unwrap().element().value(),
            Some((1, 3))
        );
        let e13 = BElement::pair(3, 1, 3).unwrap();
        assert_eq!(
            alpha_m_embed(2, 2, &e13).unwrap().element().value(),
            Some((2, 6))
        );
        assert_eq!(alpha_m_embed(1, 1, &e13).unwrap().element(), e13);
        assert!(alpha_m_embed(2, 3, &e13).is_err());
    }

    #[test]
    fn matrix_route_agrees_with_position_route() {
        for m in 1..=3usize {
            for n in 0..=(6 / m).max(1) {
                for k in 1..=4usize {
                    for c in enumerate_compositions(k, n).unwrap() {
                        for e in enumerate_gamma(m, n) {
                            let mat = ZeroOneMatrix::from_element(&e);
                            assert_eq!(mat.to_element().unwrap(), e, "encode/decode");

                            let out = matrix_oracle(k, &c, m, &mat, ActionSide::Right).unwrap();
                            let want = rho_m(k, &c, m, &e).unwrap();
                            match out {
                                MatrixOracleOut::Right(res) => {
                                    assert_eq!(res.to_element().unwrap(), want)
                                }
                                _ => panic!("right side returns a matrix"),
                            }

                            let out = matrix_oracle(k, &c, m, &mat, ActionSide::Left).unwrap();
                            let want = lambda_m(k, &c, m, &e).unwrap();
                            match (out, want.value()) {
                                (MatrixOracleOut::LeftBasepoint, None) => {}
                                (MatrixOracleOut::LeftSlot(s, sub), Some((t, elem))) => {
                                    assert_eq!(s, t);
                                    assert_eq!(sub.to_element().unwrap().element(), elem);
                                }
                                (got, want) => panic!("mismatch: {got:?} vs {want:?}"),
                            }
                        }
                    }
                }
            }
        }
    }

    #[test]
    fn malformed_matrices_are_rejected() {
        let mut mat = ZeroOneMatrix::zero(2, 2);
        mat.add(1, 1, 1);
        assert!(mat.to_element().is_err());
        let mut mat = ZeroOneMatrix::zero(2, 2);
        mat.add(1, 1, 2);
        assert!(mat.validate().is_err());
    }

    #[test]
    fn axiom_sweeps_pass_at_small_sizes() {
        for m in 1..=3usize {
            let (checks, stats) =
                verify_bimodule_axioms(m, 3 * m, 200_000, DividedCorruption::None).unwrap();
            assert!(checks.iter().all(|c| c.passed()), "m={m}: {checks:?}");
            assert!(stats.checked > 0);
        }
    }

    #[test]
    fn alpha_sweeps_pass_at_small_sizes() {
        for m in 1..=3usize {
            let (checks, _) =
                verify_alpha_morphism(m, 3 * m, DividedCorruption::None).unwrap();
            assert!(checks.iter().all(|c| c.passed()), "m={m}: {checks:?}");
        }
    }

    #[test]
    fn corruptions_fail_with_witnesses() {
        let (checks, _) =
            verify_bimodule_axioms(2, 6, 200_000, DividedCorruption::DropFirstPair).unwrap();
        let failed: Vec<_> = checks.iter().filter(|c| !c.passed()).collect();
        assert!(!failed.is_empty());
        assert!(failed.iter().all(|c| c.witness.is_some()));

        let (checks, _) = verify_alpha_morphism(2, 6, DividedCorruption::MixRows).unwrap();
        assert!(checks.iter().any(|c| !c.passed() && c.witness.is_some()));
    }

    #[test]
    fn matrix_route_agrees_on_small_sweeps() {
        for m in 1..=3usize {
            let (checks, stats) =
                verify_matrix_oracle(m, 3 * m, 200_000, DividedCorruption::None).unwrap();
            assert!(checks.iter().all(|c| c.passed()), "m={m}: {checks:?}");
            assert!(stats.checked > 0);
            assert!(!stats.budget_exhausted);
        }
    }

    #[test]
    fn matrix_route_catches_the_dropped_pair() {
        let (checks, _) =
            verify_matrix_oracle(1, 6, 200_000, DividedCorruption::DropFirstPair).unwrap();
        let failed: Vec<_> = checks.iter().filter(|c| !c.passed()).collect();
        assert_eq!(failed.len(), 1);
        assert_eq!(failed[0].name, "right-action-matches-the-matrix-route");
        assert!(failed[0].witness.is_some());
    }

    #[test]
    fn matrix_sweep_reports_budget_exhaustion() {
        let (checks, stats) =
            verify_matrix_oracle(2, 8, 40, DividedCorruption::None).unwrap();
        assert!(stats.budget_exhausted);
        assert!(checks.iter().all(|c| c.passed()));
    }
}
