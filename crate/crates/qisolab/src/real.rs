//! The real structure `J` and its commutant machinery.
//!
//! `J` sends `delta_g` to `delta_{g^-1}` antilinearly.  With the right
//! regular representation fixed as `rho_h delta_a = delta_{a h^-1}`, the
//! identity `J lambda_h J^-1 = rho_h` holds on basis vectors, so
//! `[lambda_g, rho_h] = 0` can be verified symbolically: operators here are
//! basis-label rules (weighted shifts), not truncated matrices, which keeps
//! commutators free of ball-boundary artifacts.
//!
//! The obstruction to the first-order condition is measured by
//! `T(g,h) = [rho_{g^-1}, [D, lambda_h]]`, which acts as
//! `delta_a -> (l(ha) - l(a) - l(hag) + l(ag)) delta_{hag}`.  For free and
//! free abelian groups its support is finite; [`support_certificate`]
//! enumerates it and certifies stability over a probe window.

use std::fmt;

use crate::dirac::BallVector;
use crate::group::{Elem, Family, Group, GroupError};
use crate::matrix::Matrix;
use crate::model::MatrixModel;

/// A symbolic operator acting on basis labels.  All in-scope operators send
/// a basis vector to an integer multiple of a single basis vector, and
/// compositions / commutators are evaluated exactly on labels.
#[derive(Debug, Clone)]
pub enum BasisOp {
    /// `lambda_g delta_a = delta_{ga}`.
    Lambda(Elem),
    /// `rho_h delta_a = delta_{a h^-1}`.
    Rho(Elem),
    /// `D delta_a = l(a) delta_a`.
    Dirac,
    Compose(Box<BasisOp>, Box<BasisOp>),
    Commutator(Box<BasisOp>, Box<BasisOp>),
}

impl BasisOp {
    pub fn lambda(g: Elem) -> Self {
        BasisOp::Lambda(g)
    }

    pub fn rho(h: Elem) -> Self {
        BasisOp::Rho(h)
    }

    pub fn commutator(a: BasisOp, b: BasisOp) -> Self {
        BasisOp::Commutator(Box::new(a), Box::new(b))
    }

    pub fn compose(a: BasisOp, b: BasisOp) -> Self {
        BasisOp::Compose(Box::new(a), Box::new(b))
    }

    /// Applies the operator to `delta_a`, returning the merged list of
    /// `(coefficient, target)` pairs with zero terms dropped.
    pub fn apply(&self, group: &Group, a: &Elem) -> Result<Vec<(i64, Elem)>, GroupError> {
        let terms = self.apply_raw(group, 1, a)?;
        let mut merged: Vec<(i64, Elem)> = Vec::new();
        for (c, t) in terms {
            match merged.iter_mut().find(|(_, u)| *u == t) {
                Some((mc, _)) => *mc += c,
                None => merged.push((c, t)),
            }
        }
        merged.retain(|(c, _)| *c != 0);
        merged.sort_by(|x, y| x.1.cmp(&y.1));
        Ok(merged)
    }

    fn apply_raw(&self, group: &Group, coeff: i64, a: &Elem) -> Result<Vec<(i64, Elem)>, GroupError> {
        Ok(match self {
            BasisOp::Lambda(g) => vec![(coeff, group.multiply(g, a)?)],
            BasisOp::Rho(h) => {
                let h_inv = group.inverse(h)?;
                vec![(coeff, group.multiply(a, &h_inv)?)]
            }
            BasisOp::Dirac => {
                let l = group.word_length(a)? as i64;
                vec![(coeff * l, a.clone())]
            }
            BasisOp::Compose(f, g) => {
                let mut out = Vec::new();
                for (c, t) in g.apply_raw(group, coeff, a)? {
                    out.extend(f.apply_raw(group, c, &t)?);
                }
                out
            }
            BasisOp::Commutator(f, g) => {
                let mut out = BasisOp::Compose(f.clone(), g.clone()).apply_raw(group, coeff, a)?;
                out.extend(
                    BasisOp::Compose(g.clone(), f.clone())
                        .apply_raw(group, -coeff, a)?,
                );
                out
            }
        })
    }
}

/// `J`: antilinear, `delta_g -> delta_{g^-1}` with conjugated coefficients.
pub fn j_apply(group: &Group, v: &BallVector) -> Result<BallVector, GroupError> {
    let mut out = BallVector::new();
    for (g, c) in v.iter() {
        out.add_term(group.inverse(g)?, c.conjugate());
    }
    Ok(out)
}

/// `T(g,h) = [rho_{g^-1}, [D, lambda_h]]` as a symbolic operator.
pub fn t_operator(group: &Group, g: &Elem, h: &Elem) -> Result<BasisOp, GroupError> {
    let g_inv = group.inverse(g)?;
    Ok(BasisOp::commutator(
        BasisOp::rho(g_inv),
        BasisOp::commutator(BasisOp::Dirac, BasisOp::lambda(h.clone())),
    ))
}

/// Closed form of the `T(g,h)` coefficient at `delta_a`:
/// `l(ha) - l(a) - l(hag) + l(ag)` (the target label is `hag`).
pub fn t_coefficient(group: &Group, g: &Elem, h: &Elem, a: &Elem) -> Result<i64, GroupError> {
    let ha = group.multiply(h, a)?;
    let ag = group.multiply(a, g)?;
    let hag = group.multiply(h, &ag)?;
    Ok(group.word_length(&ha)? as i64 - group.word_length(a)? as i64
        - group.word_length(&hag)? as i64
        + group.word_length(&ag)? as i64)
}

#[derive(Debug, Clone)]
pub struct CommutantReport {
    pub pass: bool,
    pub checked: usize,
    pub first_failure: Option<String>,
}

/// Verifies `[lambda_g, rho_h] delta_a = 0` symbolically for every `a` in
/// `ball(radius)`.
pub fn commutant_check(
    group: &Group,
    g: &Elem,
    h: &Elem,
    radius: usize,
) -> Result<CommutantReport, GroupError> {
    let op = BasisOp::commutator(BasisOp::lambda(g.clone()), BasisOp::rho(h.clone()));
    let mut checked = 0;
    for a in group.ball(radius)? {
        checked += 1;
        let image = op.apply(group, &a)?;
        if !image.is_empty() {
            return Ok(CommutantReport {
                pass: false,
                checked,
                first_failure: Some(format!(
                    "[lambda_g, rho_h] delta_a != 0 at a = {}",
                    group.display_element(&a)
                )),
            });
        }
    }
    Ok(CommutantReport { pass: true, checked, first_failure: None })
}

/// Finite-support evidence for `T(g,h)`.
#[derive(Debug, Clone)]
pub struct SupportCertificate {
    pub g: String,
    pub h: String,
    pub probe_inner: usize,
    pub probe_outer: usize,
    /// Labels `a` with nonzero coefficient, in enumeration order, together
    /// with the exact coefficient.
    pub support: Vec<(String, i64)>,
    /// True when no support was found outside `ball(probe_inner)`.
    pub stable: bool,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum RealError {
    Group(GroupError),
    BadWindow { r0: usize, r: usize, min: usize },
}

impl fmt::Display for RealError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            RealError::Group(e) => write!(f, "{e}"),
            RealError::BadWindow { r0, r, min } => write!(
                f,
                "probe window must satisfy r > r0 >= l(g) + l(h) = {min}, got r0 = {r0}, r = {r}"
            ),
        }
    }
}

impl std::error::Error for RealError {}

impl From<GroupError> for RealError {
    fn from(e: GroupError) -> Self {
        RealError::Group(e)
    }
}

/// Enumerates the support of `T(g,h)` in `ball(probe_outer)` and certifies
/// stability: no support in the annulus beyond `probe_inner`.
pub fn support_certificate(
    group: &Group,
    g: &Elem,
    h: &Elem,
    probe_inner: usize,
    probe_outer: usize,
) -> Result<SupportCertificate, RealError> {
    let min = group.word_length(g)? + group.word_length(h)?;
    if probe_inner < min || probe_outer <= probe_inner {
        return Err(RealError::BadWindow { r0: probe_inner, r: probe_outer, min });
    }
    let mut support = Vec::new();
    let mut stable = true;
    match (group.family(), g, h) {
        (Family::Free(_), Elem::Free(gw), Elem::Free(hw)) => {
            // Allocation-free sweep: lengths of h a, a g, h a g are computed
            // from interface cancellation depths against the reduced words.
            for (a, _) in group.ball_with_words(probe_outer)? {
                let aw = match &a {
                    Elem::Free(w) => w,
                    _ => unreachable!(),
                };
                let coeff = free_t_coefficient(hw, aw, gw);
                if coeff != 0 {
                    if a_outside(group, &a, probe_inner)? {
                        stable = false;
                    }
                    support.push((group.display_element(&a), coeff));
                }
            }
        }
        _ => {
            for a in group.ball(probe_outer)? {
                let coeff = t_coefficient(group, g, h, &a)?;
                if coeff != 0 {
                    if a_outside(group, &a, probe_inner)? {
                        stable = false;
                    }
                    support.push((group.display_element(&a), coeff));
                }
            }
        }
    }
    Ok(SupportCertificate {
        g: group.display_element(g),
        h: group.display_element(h),
        probe_inner,
        probe_outer,
        support,
        stable,
    })
}

fn a_outside(group: &Group, a: &Elem, radius: usize) -> Result<bool, GroupError> {
    Ok(group.word_length(a)? > radius)
}

/// Support certificates for every pair `(g, h)` with `1 <= l(g), l(h) <=
/// max_len`, probed to `l(g) + l(h) + extra`.  The ball is enumerated once
/// and shared across pairs, which keeps the full free-group sweep fast.
pub fn t_support_sweep(
    group: &Group,
    max_len: usize,
    extra: usize,
) -> Result<Vec<SupportCertificate>, RealError> {
    let outer = 2 * max_len + extra;
    let ball: Vec<(Elem, usize)> = group
        .ball_with_words(outer)?
        .into_iter()
        .map(|(e, w)| (e, w.len()))
        .collect();
    // Enumeration order is by length, so each probe radius is a prefix.
    let prefix_end = |radius: usize| ball.partition_point(|(_, l)| *l <= radius);
    let words: Vec<&Elem> = ball
        .iter()
        .filter(|(_, l)| (1..=max_len).contains(l))
        .map(|(e, _)| e)
        .collect();
    let mut out = Vec::with_capacity(words.len() * words.len());
    for g in &words {
        let lg = group.word_length(g)?;
        // For free groups, precompute a g once per a of the widest window.
        let free_ag: Option<Vec<Vec<i32>>> = match (group.family(), g) {
            (Family::Free(_), Elem::Free(gw)) => Some(
                ball[..prefix_end(lg + max_len + extra)]
                    .iter()
                    .map(|(a, _)| match a {
                        Elem::Free(aw) => {
                            let mut c = 0usize;
                            let max = aw.len().min(gw.len());
                            while c < max && aw[aw.len() - 1 - c] == -gw[c] {
                                c += 1;
                            }
                            let mut ag = Vec::with_capacity(aw.len() + gw.len() - 2 * c);
                            ag.extend_from_slice(&aw[..aw.len() - c]);
                            ag.extend_from_slice(&gw[c..]);
                            ag
                        }
                        _ => unreachable!(),
                    })
                    .collect(),
            ),
            _ => None,
        };
        for h in &words {
            let lh = group.word_length(h)?;
            let inner = lg + lh;
            let end = prefix_end(inner + extra);
            let mut support = Vec::new();
            let mut stable = true;
            match (&free_ag, h) {
                (Some(ag_table), Elem::Free(hw)) => {
                    for (idx, (a, la)) in ball[..end].iter().enumerate() {
                        let aw = match a {
                            Elem::Free(w) => w,
                            _ => unreachable!(),
                        };
                        let ag = &ag_table[idx];
                        let coeff = reduced_product_len(hw, aw) as i64 - *la as i64
                            - reduced_product_len(hw, ag) as i64
                            + ag.len() as i64;
                        if coeff != 0 {
                            if *la > inner {
                                stable = false;
                            }
                            support.push((group.display_element(a), coeff));
                        }
                    }
                }
                _ => {
                    for (a, la) in &ball[..end] {
                        let coeff = t_coefficient(group, g, h, a)?;
                        if coeff != 0 {
                            if *la > inner {
                                stable = false;
                            }
                            support.push((group.display_element(a), coeff));
                        }
                    }
                }
            }
            out.push(SupportCertificate {
                g: group.display_element(g),
                h: group.display_element(h),
                probe_inner: inner,
                probe_outer: inner + extra,
                support,
                stable,
            });
        }
    }
    Ok(out)
}

/// Reduced length of the concatenation of two reduced free words.
fn reduced_product_len(x: &[i32], y: &[i32]) -> usize {
    let mut c = 0usize;
    let max = x.len().min(y.len());
    while c < max && x[x.len() - 1 - c] == -y[c] {
        c += 1;
    }
    x.len() + y.len() - 2 * c
}

/// `l(ha) - l(a) - l(hag) + l(ag)` for reduced free words, without
/// materializing any product except `ag`.
fn free_t_coefficient(h: &[i32], a: &[i32], g: &[i32]) -> i64 {
    let l_ha = reduced_product_len(h, a) as i64;
    let l_a = a.len() as i64;
    // ag as an explicit reduced word (needed as the left factor of h(ag)).
    let mut c = 0usize;
    let max = a.len().min(g.len());
    while c < max && a[a.len() - 1 - c] == -g[c] {
        c += 1;
    }
    let mut ag: Vec<i32> = Vec::with_capacity(a.len() + g.len() - 2 * c);
    ag.extend_from_slice(&a[..a.len() - c]);
    ag.extend_from_slice(&g[c..]);
    let l_ag = ag.len() as i64;
    let l_hag = reduced_product_len(h, &ag) as i64;
    l_ha - l_a - l_hag + l_ag
}

/// Result of extending a model by the grading unit `q = I (+) (-I)`.
#[derive(Debug, Clone)]
pub struct RealExtensionReport {
    pub q_self_adjoint_unitary: bool,
    pub q_commutes_with_generators: bool,
    pub q_commutes_with_action: bool,
    pub relations_pass: bool,
    pub pass: bool,
}

/// Doubles a preset's model, adjoins `q = I (+) (-I)`, and verifies: `q` is a
/// self-adjoint unitary, commutes with every doubled generator and with every
/// coefficient of the doubled action table, and all original relations still
/// hold in the doubled model.
pub fn real_extension(
    bundle: &crate::presets::PresetBundle,
    radius: usize,
) -> Result<RealExtensionReport, Box<dyn std::error::Error>> {
    let doubled: MatrixModel = bundle.model.doubled();
    let q = MatrixModel::grading_unit(bundle.model.dim);

    let flags = q.classify();
    let q_self_adjoint_unitary = flags.is_self_adjoint && flags.is_unitary;

    let q_commutes_with_generators = doubled
        .assign
        .values()
        .all(|m| q.mul(m).expect("shape") == m.mul(&q).expect("shape"));

    // Double the action grid and check q against every stored coefficient.
    let doubled_q: Vec<Vec<Matrix>> = bundle
        .grid
        .q
        .iter()
        .map(|row| row.iter().map(|m| m.direct_sum(m)).collect())
        .collect();
    let grid = crate::action::CoeffGrid::new(doubled_q)?;
    let table = crate::action::build_action(&bundle.group, &grid, radius)?;
    let mut q_commutes_with_action = true;
    'rows: for (_, row) in table.rows() {
        for m in row.values() {
            if q.mul(m)? != m.mul(&q)? {
                q_commutes_with_action = false;
                break 'rows;
            }
        }
    }

    let relations_pass =
        crate::presentation::check(&bundle.presentation, &doubled)?.pass;

    let pass = q_self_adjoint_unitary
        && q_commutes_with_generators
        && q_commutes_with_action
        && relations_pass;
    Ok(RealExtensionReport {
        q_self_adjoint_unitary,
        q_commutes_with_generators,
        q_commutes_with_action,
        relations_pass,
        pass,
    })
}
