//! Presentations: generators, relations, and the fundamental
//! corepresentation grid, with exact model checking.
//!
//! The text format has a `generators:` line, an optional `corep:` block of
//! comma-separated rows, and a `relations:` block with one polynomial per
//! line (an optional `= rhs` is normalized by subtraction):
//!
//! ```text
//! # C*(Z_3) (+) C*(Z_3)
//! generators: A B
//! corep:
//!   A, B
//!   B*, A*
//! relations:
//!   A^3 + B^3 = 1
//!   A B
//! ```
//!
//! Checking is exact: a relation passes when its evaluation is the zero
//! matrix; on failure the squared residual norm is reported as a scalar
//! literal.  `coproduct_check` re-checks all relations under the doubled
//! assignment `u_ij -> sum_k u_ik (x) u_kj` read off the corep grid — a
//! homomorphism witness at this model, not a universality proof.

use std::fmt;

use crate::cyclotomic::ArithError;
use crate::matrix::Matrix;
use crate::model::MatrixModel;
use crate::parse::{parse_polynomial, ParseError};
use crate::poly::StarPolynomial;

#[derive(Debug, Clone)]
pub struct Presentation {
    pub name: String,
    pub generators: Vec<String>,
    /// `(source text, polynomial)`; each relation asserts `polynomial = 0`.
    pub relations: Vec<(String, StarPolynomial)>,
    /// Fundamental corepresentation grid, row-major, entries are polynomials.
    pub corep: Option<Vec<Vec<StarPolynomial>>>,
}

#[derive(Debug)]
pub enum EvalError {
    UnassignedLabel(String),
    UndeclaredLabel(String),
    Arith(ArithError),
    Parse(ParseError),
    Format(String),
    MissingCorep,
    GeneratorNotInGrid(String),
}

impl fmt::Display for EvalError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            EvalError::UnassignedLabel(l) => write!(f, "model does not assign generator `{l}`"),
            EvalError::UndeclaredLabel(l) => {
                write!(f, "label `{l}` is not a declared generator")
            }
            EvalError::Arith(e) => write!(f, "{e}"),
            EvalError::Parse(e) => write!(f, "{e}"),
            EvalError::Format(s) => write!(f, "invalid presentation file: {s}"),
            EvalError::MissingCorep => write!(f, "presentation has no corep grid"),
            EvalError::GeneratorNotInGrid(l) => {
                write!(f, "generator `{l}` does not appear as a plain grid entry")
            }
        }
    }
}

impl std::error::Error for EvalError {}

impl From<ArithError> for EvalError {
    fn from(e: ArithError) -> Self {
        EvalError::Arith(e)
    }
}

impl From<ParseError> for EvalError {
    fn from(e: ParseError) -> Self {
        EvalError::Parse(e)
    }
}

impl Presentation {
    /// Parses the presentation file format.
    pub fn parse(name: impl Into<String>, text: &str) -> Result<Presentation, EvalError> {
        #[derive(PartialEq)]
        enum Section {
            Preamble,
            Corep,
            Relations,
        }
        let mut generators: Option<Vec<String>> = None;
        let mut corep_rows: Vec<Vec<StarPolynomial>> = Vec::new();
        let mut relations = Vec::new();
        let mut section = Section::Preamble;
        for raw in text.lines() {
            let line = raw.trim();
            if line.is_empty() || line.starts_with('#') {
                continue;
            }
            if let Some(rest) = line.strip_prefix("generators:") {
                generators = Some(rest.split_whitespace().map(str::to_string).collect());
                continue;
            }
            if line == "corep:" {
                section = Section::Corep;
                continue;
            }
            if line == "relations:" {
                section = Section::Relations;
                continue;
            }
            match section {
                Section::Preamble => {
                    return Err(EvalError::Format(format!("unexpected line `{line}`")))
                }
                Section::Corep => {
                    let row: Result<Vec<StarPolynomial>, ParseError> =
                        line.split(',').map(|c| parse_polynomial(c.trim())).collect();
                    corep_rows.push(row?);
                }
                Section::Relations => {
                    let poly = match line.split_once('=') {
                        Some((lhs, rhs)) => {
                            parse_polynomial(lhs.trim())?.sub(&parse_polynomial(rhs.trim())?)
                        }
                        None => parse_polynomial(line)?,
                    };
                    relations.push((line.to_string(), poly));
                }
            }
        }
        let generators =
            generators.ok_or_else(|| EvalError::Format("missing `generators:` line".into()))?;
        if !corep_rows.is_empty() && corep_rows.iter().any(|r| r.len() != corep_rows.len()) {
            return Err(EvalError::Format("corep grid is not square".into()));
        }
        let pres = Presentation {
            name: name.into(),
            generators,
            relations,
            corep: if corep_rows.is_empty() { None } else { Some(corep_rows) },
        };
        pres.validate_labels()?;
        Ok(pres)
    }

    fn validate_labels(&self) -> Result<(), EvalError> {
        let declared = |l: &str| self.generators.iter().any(|g| g == l);
        for (_, poly) in &self.relations {
            for l in poly.labels() {
                if !declared(l) {
                    return Err(EvalError::UndeclaredLabel(l.to_string()));
                }
            }
        }
        if let Some(grid) = &self.corep {
            for row in grid {
                for cell in row {
                    for l in cell.labels() {
                        if !declared(l) {
                            return Err(EvalError::UndeclaredLabel(l.to_string()));
                        }
                    }
                }
            }
        }
        Ok(())
    }
}

/// Homomorphic evaluation of a polynomial in a model: starred atoms map to
/// adjoints, the empty word to the identity.
pub fn evaluate(poly: &StarPolynomial, model: &MatrixModel) -> Result<Matrix, EvalError> {
    let dim = model.dim;
    let mut acc = Matrix::zeros(dim, dim);
    for (c, word) in poly.terms() {
        let mut m = Matrix::identity(dim);
        for atom in word {
            let assigned = model
                .matrix(&atom.label)
                .ok_or_else(|| EvalError::UnassignedLabel(atom.label.clone()))?;
            let factor = if atom.star { assigned.adjoint() } else { assigned.clone() };
            m = m.mul(&factor)?;
        }
        acc = acc.add(&m.scale(c)?)?;
    }
    Ok(acc)
}

/// Result of checking one relation against a model.
#[derive(Debug, Clone)]
pub struct RelationResult {
    pub relation: String,
    pub pass: bool,
    /// Exact squared residual norm (scalar literal) when the check fails.
    pub residual_norm_sq: Option<String>,
}

#[derive(Debug, Clone)]
pub struct CheckReport {
    pub model: String,
    pub relations: Vec<RelationResult>,
    /// `U* U = U U* = I` for the assembled corep grid, when one is declared.
    pub corep_unitary: Option<bool>,
    pub pass: bool,
}

/// Checks every relation (exact zero test) and, when a corep grid is
/// declared, its block unitarity.
pub fn check(pres: &Presentation, model: &MatrixModel) -> Result<CheckReport, EvalError> {
    let mut relations = Vec::with_capacity(pres.relations.len());
    let mut pass = true;
    for (text, poly) in &pres.relations {
        let value = evaluate(poly, model)?;
        let ok = value.is_zero();
        pass &= ok;
        relations.push(RelationResult {
            relation: text.clone(),
            pass: ok,
            residual_norm_sq: (!ok).then(|| value.residual_norm_sq().to_string()),
        });
    }
    let corep_unitary = match &pres.corep {
        Some(grid) => {
            let u = assemble_corep(grid, model)?;
            let id = Matrix::identity(u.rows());
            let ok = u.mul(&u.adjoint())? == id && u.adjoint().mul(&u)? == id;
            pass &= ok;
            Some(ok)
        }
        None => None,
    };
    Ok(CheckReport { model: model.name.clone(), relations, corep_unitary, pass })
}

/// Evaluates the corep grid cells and assembles them into one block matrix.
pub fn assemble_corep(
    grid: &[Vec<StarPolynomial>],
    model: &MatrixModel,
) -> Result<Matrix, EvalError> {
    let blocks: Result<Vec<Vec<Matrix>>, EvalError> = grid
        .iter()
        .map(|row| row.iter().map(|cell| evaluate(cell, model)).collect())
        .collect();
    Ok(Matrix::from_blocks(&blocks?)?)
}

/// The model induced by the coproduct: each generator, located as a plain
/// entry `u_ij` of the grid, maps to `sum_k u_ik (x) u_kj`.
pub fn coproduct_model(pres: &Presentation, model: &MatrixModel) -> Result<MatrixModel, EvalError> {
    let grid = pres.corep.as_ref().ok_or(EvalError::MissingCorep)?;
    let k = grid.len();
    let evaluated: Vec<Vec<Matrix>> = grid
        .iter()
        .map(|row| row.iter().map(|cell| evaluate(cell, model)).collect::<Result<_, _>>())
        .collect::<Result<_, _>>()?;
    let mut out = MatrixModel::new(format!("{} (coproduct)", model.name), model.dim * model.dim);
    for gen in &pres.generators {
        let mut cell = None;
        'search: for (i, row) in grid.iter().enumerate() {
            for (j, entry) in row.iter().enumerate() {
                if entry.as_plain_generator() == Some(gen.as_str()) {
                    cell = Some((i, j));
                    break 'search;
                }
            }
        }
        let (i, j) = cell.ok_or_else(|| EvalError::GeneratorNotInGrid(gen.clone()))?;
        let mut acc = Matrix::zeros(model.dim * model.dim, model.dim * model.dim);
        for l in 0..k {
            acc = acc.add(&evaluated[i][l].kronecker(&evaluated[l][j])?)?;
        }
        out.assign(gen.clone(), acc)
            .map_err(|e| EvalError::Format(e.to_string()))?;
    }
    Ok(out)
}

/// Whether an element, given as a polynomial in the generators, is exactly
/// group-like under the grid coproduct: `Delta(p) = p (x) p`.
pub fn group_like(
    pres: &Presentation,
    model: &MatrixModel,
    poly: &StarPolynomial,
) -> Result<bool, EvalError> {
    let dbl = coproduct_model(pres, model)?;
    let p = evaluate(poly, model)?;
    let dp = evaluate(poly, &dbl)?;
    Ok(dp == p.kronecker(&p)?)
}

/// Re-checks all relations under the coproduct-induced assignment.
pub fn coproduct_check(pres: &Presentation, model: &MatrixModel) -> Result<CheckReport, EvalError> {
    let dbl = coproduct_model(pres, model)?;
    let mut report = check(
        &Presentation {
            name: pres.name.clone(),
            generators: pres.generators.clone(),
            relations: pres.relations.clone(),
            corep: None,
        },
        &dbl,
    )?;
    report.model = dbl.name;
    Ok(report)
}
