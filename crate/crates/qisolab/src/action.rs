//! Induced actions on group algebras.
//!
//! Starting from a generating coefficient grid `q[x][z]` — the coefficient of
//! `lambda_z` in `alpha(lambda_x)` for generators `x, z` — the action row of
//! a word `w = w_1 ... w_n` is built from all `card(S)^n` formal words:
//! the product `q[w_1][z_1] ... q[w_n][z_n]` contributes to the row entry at
//! the evaluation of `z_1 ... z_n` in the group.  Rows are grouped exactly,
//! so entries that cancel disappear.
//!
//! [`check_action`] then verifies the structural properties an isometric
//! action must satisfy: multiplicativity, compatibility with the star, length
//! preservation (all coefficients at shorter elements sum to exactly zero),
//! trace preservation, block unitarity of the generator grid, and — for free
//! groups — the cancellation identity `sum_x q[y][x] q[z][x^-1] = 0` for
//! `y != z^-1`.

use std::collections::BTreeMap;
use std::fmt;

use crate::cyclotomic::ArithError;
use crate::group::{Elem, Family, Group, GroupError};
use crate::matrix::Matrix;

/// The generating coefficients `q[x][z]`, both indices over the generating
/// set in declared order; all matrices square of one dimension.
#[derive(Debug, Clone)]
pub struct CoeffGrid {
    pub dim: usize,
    pub q: Vec<Vec<Matrix>>,
}

impl CoeffGrid {
    pub fn new(q: Vec<Vec<Matrix>>) -> Result<Self, ActionError> {
        let dim = q
            .first()
            .and_then(|r| r.first())
            .map(Matrix::rows)
            .unwrap_or(0);
        let n = q.len();
        for row in &q {
            if row.len() != n {
                return Err(ActionError::Grid("grid is not square".into()));
            }
            for m in row {
                if m.rows() != dim || m.cols() != dim {
                    return Err(ActionError::Grid(format!(
                        "grid entries must all be {dim}x{dim}"
                    )));
                }
            }
        }
        Ok(CoeffGrid { dim, q })
    }

    /// The trivial grid `q[x][z] = delta_xz I`.
    pub fn identity(gen_count: usize, dim: usize) -> Self {
        let q = (0..gen_count)
            .map(|x| {
                (0..gen_count)
                    .map(|z| {
                        if x == z {
                            Matrix::identity(dim)
                        } else {
                            Matrix::zeros(dim, dim)
                        }
                    })
                    .collect()
            })
            .collect();
        CoeffGrid { dim, q }
    }
}

#[derive(Debug)]
pub enum ActionError {
    Group(GroupError),
    Arith(ArithError),
    Grid(String),
    RowMissing(String),
}

impl fmt::Display for ActionError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ActionError::Group(e) => write!(f, "{e}"),
            ActionError::Arith(e) => write!(f, "{e}"),
            ActionError::Grid(s) => write!(f, "invalid coefficient grid: {s}"),
            ActionError::RowMissing(w) => write!(f, "action table has no row for `{w}`"),
        }
    }
}

impl std::error::Error for ActionError {}

impl From<GroupError> for ActionError {
    fn from(e: GroupError) -> Self {
        ActionError::Group(e)
    }
}

impl From<ArithError> for ActionError {
    fn from(e: ArithError) -> Self {
        ActionError::Arith(e)
    }
}

/// One action row: the exact nonzero coefficients of `alpha(lambda_w)`.
pub type ActionRow = BTreeMap<Elem, Matrix>;

/// Action coefficients for every element of a ball, in enumeration order.
#[derive(Debug, Clone)]
pub struct ActionTable {
    pub radius: usize,
    pub dim: usize,
    rows: Vec<(Elem, ActionRow)>,
    index: BTreeMap<Elem, usize>,
}

impl ActionTable {
    pub fn rows(&self) -> &[(Elem, ActionRow)] {
        &self.rows
    }

    pub fn row(&self, w: &Elem) -> Option<&ActionRow> {
        self.index.get(w).map(|&i| &self.rows[i].1)
    }
}

fn add_into(row: &mut ActionRow, target: Elem, m: Matrix) -> Result<(), ActionError> {
    use std::collections::btree_map::Entry;
    if m.is_zero() {
        return Ok(());
    }
    match row.entry(target) {
        Entry::Vacant(v) => {
            v.insert(m);
        }
        Entry::Occupied(mut o) => {
            let sum = o.get().add(&m)?;
            if sum.is_zero() {
                o.remove();
            } else {
                *o.get_mut() = sum;
            }
        }
    }
    Ok(())
}

/// Builds the action table on `ball(radius)` from a generating grid.
/// Each row is computed from the length-lexicographically minimal word of its
/// element; multiplicativity over different representatives is then verified
/// separately by [`check_action`].
pub fn build_action(
    group: &Group,
    grid: &CoeffGrid,
    radius: usize,
) -> Result<ActionTable, ActionError> {
    if grid.q.len() != group.gen_count() {
        return Err(ActionError::Grid(format!(
            "grid is {}x{} but the group has {} generators",
            grid.q.len(),
            grid.q.len(),
            group.gen_count()
        )));
    }
    let mut rows = Vec::new();
    let mut index = BTreeMap::new();
    for (w, word) in group.ball_with_words(radius)? {
        let mut row = ActionRow::new();
        if word.is_empty() {
            row.insert(group.identity(), Matrix::identity(grid.dim));
        } else {
            for formal in group.formal_words(word.len())? {
                let mut coeff = Matrix::identity(grid.dim);
                let mut zero = false;
                for (i, &z) in formal.iter().enumerate() {
                    let factor = &grid.q[word[i]][z];
                    if factor.is_zero() {
                        zero = true;
                        break;
                    }
                    coeff = coeff.mul(factor)?;
                    if coeff.is_zero() {
                        zero = true;
                        break;
                    }
                }
                if zero {
                    continue;
                }
                let target = group.reduce(&formal)?;
                add_into(&mut row, target, coeff)?;
            }
        }
        index.insert(w.clone(), rows.len());
        rows.push((w, row));
    }
    Ok(ActionTable { radius, dim: grid.dim, rows, index })
}

/// Convolution of two action rows:
/// `(sum lambda_a (x) A_a)(sum lambda_b (x) B_b) = sum lambda_ab (x) A_a B_b`.
pub fn convolve(group: &Group, a: &ActionRow, b: &ActionRow) -> Result<ActionRow, ActionError> {
    let mut out = ActionRow::new();
    for (ga, ma) in a {
        for (gb, mb) in b {
            let target = group.multiply(ga, gb)?;
            add_into(&mut out, target, ma.mul(mb)?)?;
        }
    }
    Ok(out)
}

/// Recomputes the row of `w` by multiplying rows of strictly shorter words
/// (prefix times final generator) and compares with the stored row.
pub fn derive_word_coefficients(
    group: &Group,
    table: &ActionTable,
    w: &Elem,
) -> Result<(ActionRow, bool), ActionError> {
    let stored = table
        .row(w)
        .ok_or_else(|| ActionError::RowMissing(group.display_element(w)))?;
    let word = group.minimal_word(w)?;
    if word.is_empty() {
        return Ok((stored.clone(), true));
    }
    let prefix = group.reduce(&word[..word.len() - 1])?;
    let last = group.gen_elem(word[word.len() - 1]).clone();
    let prefix_row = table
        .row(&prefix)
        .ok_or_else(|| ActionError::RowMissing(group.display_element(&prefix)))?;
    let last_row = table
        .row(&last)
        .ok_or_else(|| ActionError::RowMissing(group.display_element(&last)))?;
    let derived = convolve(group, prefix_row, last_row)?;
    let matches = &derived == stored;
    Ok((derived, matches))
}

/// One sub-check of [`check_action`].
#[derive(Debug, Clone)]
pub struct SubCheck {
    pub name: &'static str,
    pub pass: bool,
    /// First counterexample, when failing.
    pub detail: Option<String>,
}

#[derive(Debug, Clone)]
pub struct ActionReport {
    pub radius: usize,
    pub checks: Vec<SubCheck>,
    pub pass: bool,
}

impl ActionReport {
    pub fn check(&self, name: &str) -> Option<&SubCheck> {
        self.checks.iter().find(|c| c.name == name)
    }
}

fn rows_equal(a: &ActionRow, b: &ActionRow) -> bool {
    a == b
}

pub fn check_action(
    group: &Group,
    grid: &CoeffGrid,
    table: &ActionTable,
) -> Result<ActionReport, ActionError> {
    let mut checks = Vec::new();

    // Multiplicativity: alpha(lambda_g lambda_h) = alpha(lambda_g) alpha(lambda_h).
    // All pairs for a fully covered finite group, else pairs with
    // l(g) + l(h) <= radius.
    let full_finite = group
        .order()
        .is_some_and(|ord| table.rows().len() == ord);
    let mut hom = SubCheck { name: "homomorphism", pass: true, detail: None };
    'hom: for (g, row_g) in table.rows() {
        for (h, row_h) in table.rows() {
            let lg = group.word_length(g)?;
            let lh = group.word_length(h)?;
            if !full_finite && lg + lh > table.radius {
                continue;
            }
            let gh = group.multiply(g, h)?;
            let Some(row_gh) = table.row(&gh) else { continue };
            let product = convolve(group, row_g, row_h)?;
            if !rows_equal(&product, row_gh) {
                hom.pass = false;
                hom.detail = Some(format!(
                    "alpha(lambda_g)alpha(lambda_h) != alpha(lambda_gh) for g = {}, h = {}",
                    group.display_element(g),
                    group.display_element(h)
                ));
                break 'hom;
            }
        }
    }
    checks.push(hom);

    // Star compatibility: q_{g'^-1, g} = q_{g', g^-1}^* for all table rows.
    let mut star = SubCheck { name: "star", pass: true, detail: None };
    'star: for (g, row_g) in table.rows() {
        let g_inv = group.inverse(g)?;
        let Some(row_g_inv) = table.row(&g_inv) else { continue };
        let mut targets: Vec<Elem> = row_g.keys().cloned().collect();
        for t in row_g_inv.keys() {
            targets.push(group.inverse(t)?);
        }
        targets.sort();
        targets.dedup();
        for gp in targets {
            let gp_inv = group.inverse(&gp)?;
            let lhs = row_g.get(&gp_inv);
            let rhs = row_g_inv.get(&gp).map(Matrix::adjoint);
            let ok = match (lhs, &rhs) {
                (None, None) => true,
                (Some(a), Some(b)) => a == b,
                (Some(a), None) => a.is_zero(),
                (None, Some(b)) => b.is_zero(),
            };
            if !ok {
                star.pass = false;
                star.detail = Some(format!(
                    "star condition fails at gamma = {}, gamma' = {}",
                    group.display_element(g),
                    group.display_element(&gp)
                ));
                break 'star;
            }
        }
    }
    checks.push(star);

    // Length preservation: the grouped coefficient sums at elements of a
    // different length are exactly zero, i.e. never stored.
    let mut dhat = SubCheck { name: "dhat_commutation", pass: true, detail: None };
    'dhat: for (w, row) in table.rows() {
        let lw = group.word_length(w)?;
        for target in row.keys() {
            if group.word_length(target)? != lw {
                dhat.pass = false;
                dhat.detail = Some(format!(
                    "alpha(lambda_w) has a nonzero coefficient at {} (length {}) for w = {} (length {})",
                    group.display_element(target),
                    group.word_length(target)?,
                    group.display_element(w),
                    lw
                ));
                break 'dhat;
            }
        }
    }
    checks.push(dhat);

    // Trace preservation: the lambda_e coefficient of alpha(lambda_g) is
    // delta_{g,e} I.
    let mut trace = SubCheck { name: "trace", pass: true, detail: None };
    let e = group.identity();
    for (g, row) in table.rows() {
        let at_e = row.get(&e);
        let ok = if *g == e {
            at_e == Some(&Matrix::identity(table.dim))
        } else {
            at_e.is_none_or(Matrix::is_zero)
        };
        if !ok {
            trace.pass = false;
            trace.detail = Some(format!(
                "trace not preserved at g = {}",
                group.display_element(g)
            ));
            break;
        }
    }
    checks.push(trace);

    // Block unitarity of [q_{t,s}]_{t,s in S}.
    let blocks: Vec<Vec<Matrix>> = (0..group.gen_count())
        .map(|t| (0..group.gen_count()).map(|s| grid.q[s][t].clone()).collect())
        .collect();
    let u = Matrix::from_blocks(&blocks)?;
    let id = Matrix::identity(u.rows());
    let unitary = u.mul(&u.adjoint())? == id && u.adjoint().mul(&u)? == id;
    checks.push(SubCheck {
        name: "corep_unitary",
        pass: unitary,
        detail: (!unitary).then(|| "[q_{t,s}] is not unitary".into()),
    });

    // Free-group cancellation: sum_x q[y][x] q[z][x^-1] = 0 whenever
    // y != z^-1.
    if matches!(group.family(), Family::Free(_)) {
        let mut cancel = SubCheck { name: "cancellation", pass: true, detail: None };
        'cancel: for y in 0..group.gen_count() {
            for z in 0..group.gen_count() {
                if group.gen_inverse_index(y) == z {
                    continue;
                }
                let mut sum = Matrix::zeros(grid.dim, grid.dim);
                for x in 0..group.gen_count() {
                    let xi = group.gen_inverse_index(x);
                    sum = sum.add(&grid.q[y][x].mul(&grid.q[z][xi])?)?;
                }
                if !sum.is_zero() {
                    cancel.pass = false;
                    cancel.detail = Some(format!(
                        "sum_x q[{}][x] q[{}][x^-1] != 0",
                        group.gen_label(y),
                        group.gen_label(z)
                    ));
                    break 'cancel;
                }
            }
        }
        checks.push(cancel);
    }

    let pass = checks.iter().all(|c| c.pass);
    Ok(ActionReport { radius: table.radius, checks, pass })
}
