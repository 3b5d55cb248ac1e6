//! The word-length Dirac operator on truncated `l^2(Gamma)`.
//!
//! The operator acts diagonally, `(D xi)(g) = l(g) xi(g)`, so its spectrum is
//! the set of occupied lengths with multiplicity `card W_n`, and the heat
//! trace is `Tr exp(-t D^2) = sum_n card(W_n) exp(-t n^2)`.  Heat traces are
//! the one place in the crate where floating point is used; every truncation
//! ships with a certified tail bound derived from `card(W_n) <= card(S)^n`.

use std::collections::BTreeMap;

use crate::cyclotomic::CyclotomicScalar;
use crate::group::{Elem, Group, GroupError};

/// A finitely supported vector on the group, with exact coefficients.
/// Zero coefficients are never stored.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BallVector {
    coeffs: BTreeMap<Elem, CyclotomicScalar>,
}

impl BallVector {
    pub fn new() -> Self {
        BallVector { coeffs: BTreeMap::new() }
    }

    /// The basis vector `delta_g`.
    pub fn delta(g: Elem) -> Self {
        let mut v = BallVector::new();
        v.add_term(g, CyclotomicScalar::one());
        v
    }

    pub fn add_term(&mut self, g: Elem, c: CyclotomicScalar) {
        if c.is_zero() {
            return;
        }
        let entry = self.coeffs.entry(g.clone());
        use std::collections::btree_map::Entry;
        match entry {
            Entry::Vacant(v) => {
                v.insert(c);
            }
            Entry::Occupied(mut o) => {
                let sum = o.get() + &c;
                if sum.is_zero() {
                    o.remove();
                } else {
                    *o.get_mut() = sum;
                }
            }
        }
    }

    pub fn coefficient(&self, g: &Elem) -> CyclotomicScalar {
        self.coeffs.get(g).cloned().unwrap_or_else(CyclotomicScalar::zero)
    }

    pub fn support(&self) -> impl Iterator<Item = &Elem> {
        self.coeffs.keys()
    }

    pub fn iter(&self) -> impl Iterator<Item = (&Elem, &CyclotomicScalar)> {
        self.coeffs.iter()
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }
}

impl Default for BallVector {
    fn default() -> Self {
        Self::new()
    }
}

/// Applies the Dirac operator: multiplies the coefficient at `g` by `l(g)`.
/// The coefficient at the identity is annihilated (`l(e) = 0`).
pub fn dirac_apply(group: &Group, v: &BallVector) -> Result<BallVector, GroupError> {
    let mut out = BallVector::new();
    for (g, c) in v.iter() {
        let l = group.word_length(g)? as i64;
        out.add_term(g.clone(), c.scale(&crate::rational::Rational::from_int(l)));
    }
    Ok(out)
}

/// Dirac eigenvalues up to `max_n`: pairs `(n, card W_n)`, empty spheres
/// skipped, eigenvalues strictly increasing.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SpectrumTable {
    pub entries: Vec<(usize, usize)>,
}

pub fn spectrum(group: &Group, max_n: usize) -> Result<SpectrumTable, GroupError> {
    let ball = group.ball_with_words(max_n)?;
    let mut counts = vec![0usize; max_n + 1];
    for (_, w) in &ball {
        counts[w.len()] += 1;
    }
    Ok(SpectrumTable {
        entries: counts
            .into_iter()
            .enumerate()
            .filter(|&(_, c)| c > 0)
            .collect(),
    })
}

/// A truncated heat trace together with a certified tail bound.
#[derive(Debug, Clone)]
pub struct HeatTrace {
    /// `sum_{n <= N} card(W_n) exp(-t n^2)`; a lower bound for the full trace.
    pub value: f64,
    /// `sum_{n > N} card(S)^n exp(-t n^2)`, summed until terms drop below
    /// 1e-30; zero when the truncation already exhausts a finite group.
    pub tail_bound: f64,
    /// The summed terms `(n, card W_n, card(W_n) exp(-t n^2))`.
    pub terms: Vec<(usize, usize, f64)>,
}

#[derive(Debug, Clone, PartialEq)]
pub enum HeatError {
    Group(GroupError),
    NonpositiveTime(f64),
}

impl std::fmt::Display for HeatError {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            HeatError::Group(e) => write!(f, "{e}"),
            HeatError::NonpositiveTime(t) => write!(f, "heat trace requires t > 0, got {t}"),
        }
    }
}

impl std::error::Error for HeatError {}

impl From<GroupError> for HeatError {
    fn from(e: GroupError) -> Self {
        HeatError::Group(e)
    }
}

pub fn heat_trace(group: &Group, t: f64, max_n: usize) -> Result<HeatTrace, HeatError> {
    if t.partial_cmp(&0.0) != Some(std::cmp::Ordering::Greater) {
        return Err(HeatError::NonpositiveTime(t));
    }
    let spec = spectrum(group, max_n)?;
    let mut value = 0.0;
    let mut terms = Vec::new();
    for &(n, card) in &spec.entries {
        let term = card as f64 * (-t * (n * n) as f64).exp();
        value += term;
        terms.push((n, card, term));
    }
    // A finite group fully covered by the truncation has an exactly zero tail.
    let exhausted = group
        .order()
        .is_some_and(|ord| spec.entries.iter().map(|&(_, c)| c).sum::<usize>() == ord);
    let mut tail_bound = 0.0;
    if !exhausted {
        let s = group.gen_count() as f64;
        let mut n = max_n + 1;
        loop {
            let term = s.powi(n as i32) * (-t * (n * n) as f64).exp();
            if term < 1e-30 {
                break;
            }
            tail_bound += term;
            n += 1;
        }
    }
    Ok(HeatTrace { value, tail_bound, terms })
}
