//! The built-in catalog of presentations and matrix models.
//!
//! Each preset bundles a group, a presentation, a concrete matrix model and
//! the generating coefficient grid of the induced action.  A passing preset
//! certifies consistency — the relations admit the bundled realization and
//! the action behaves as claimed; universality of a presentation is out of
//! reach of finite-dimensional checking and is never claimed by a report.
//!
//! Direct sums are realized as block-diagonal matrices, so the 6-dimensional
//! regular representation of S3 doubles to 12x12 models, and the cyclic
//! models to 2n x 2n.

use std::collections::BTreeMap;
use std::fmt;

use crate::action::CoeffGrid;
use crate::cyclotomic::{inv_sqrt2, CyclotomicScalar};
use crate::group::{Elem, Group, GroupError};
use crate::matrix::{pauli, Matrix};
use crate::model::MatrixModel;
use crate::presentation::{evaluate, EvalError, Presentation};

#[derive(Debug)]
pub enum PresetError {
    Unknown(String),
    BadParams(String),
    Group(GroupError),
    Eval(EvalError),
}

impl fmt::Display for PresetError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            PresetError::Unknown(n) => write!(f, "unknown preset `{n}`"),
            PresetError::BadParams(s) => write!(f, "invalid preset parameters: {s}"),
            PresetError::Group(e) => write!(f, "{e}"),
            PresetError::Eval(e) => write!(f, "{e}"),
        }
    }
}

impl std::error::Error for PresetError {}

impl From<GroupError> for PresetError {
    fn from(e: GroupError) -> Self {
        PresetError::Group(e)
    }
}

impl From<EvalError> for PresetError {
    fn from(e: EvalError) -> Self {
        PresetError::Eval(e)
    }
}

/// A fully assembled preset.
pub struct PresetBundle {
    pub name: String,
    pub group: Group,
    pub presentation: Presentation,
    pub model: MatrixModel,
    /// Generating action coefficients `q[x][z]` over the group's generators.
    pub grid: CoeffGrid,
    /// Labels `(X, Y)` whose commutator is asserted to be nonzero.
    pub noncommutativity_witness: Option<(String, String)>,
    /// Whether the range/initial projection grid should be a magic unitary.
    pub has_magic_grid: bool,
    /// An element (as polynomial text) probed for group-likeness under the
    /// coproduct, with the expected outcome.  The two S3 presets carry the
    /// same observable element with opposite expectations, which separates
    /// their coproducts.
    pub group_like_probe: Option<(String, bool)>,
    pub notes: Vec<String>,
}

impl PresetBundle {
    /// Default radius for action checks: the diameter for finite groups,
    /// radius 3 for infinite ones.
    pub fn default_radius(&self) -> usize {
        self.group.diameter().unwrap_or(3)
    }

    /// The 4x4 grid of range and initial projections of the free-group
    /// generators, in the arrangement whose rows and columns must sum to 1.
    pub fn magic_grid(&self) -> Result<Vec<Vec<Matrix>>, PresetError> {
        let m = |label: &str| -> Result<Matrix, PresetError> {
            self.model
                .matrix(label)
                .cloned()
                .ok_or_else(|| PresetError::BadParams(format!("missing generator {label}")))
        };
        let range = |label: &str| -> Result<Matrix, PresetError> {
            let x = m(label)?;
            Ok(x.mul(&x.adjoint()).expect("square"))
        };
        let initial = |label: &str| -> Result<Matrix, PresetError> {
            let x = m(label)?;
            Ok(x.adjoint().mul(&x).expect("square"))
        };
        Ok(vec![
            vec![range("A")?, range("B")?, range("C")?, range("D")?],
            vec![range("E")?, range("F")?, range("G")?, range("H")?],
            vec![initial("B")?, initial("A")?, initial("D")?, initial("C")?],
            vec![initial("F")?, initial("E")?, initial("H")?, initial("G")?],
        ])
    }
}

/// The left regular representation of a finite group: `lambda_g delta_h =
/// delta_{gh}` as 0/1 matrices indexed by enumeration order.
pub fn regular_representation(group: &Group) -> Result<BTreeMap<Elem, Matrix>, GroupError> {
    let elements = group.elements()?;
    let index: BTreeMap<&Elem, usize> =
        elements.iter().enumerate().map(|(i, e)| (e, i)).collect();
    let n = elements.len();
    let mut out = BTreeMap::new();
    for g in &elements {
        let mut m = Matrix::zeros(n, n);
        for (col, h) in elements.iter().enumerate() {
            let gh = group.multiply(g, h)?;
            m.set_entry(index[&gh], col, CyclotomicScalar::one());
        }
        out.insert(g.clone(), m);
    }
    Ok(out)
}

/// Preset descriptor for the catalog listing.
pub struct PresetInfo {
    pub name: &'static str,
    pub params: &'static str,
    pub description: &'static str,
}

pub fn catalog() -> Vec<PresetInfo> {
    vec![
        PresetInfo {
            name: "zn",
            params: "n (n >= 3, n != 4)",
            description: "cyclic group Z_n, standard set {1, n-1}; two orthogonal partial \
                          unitaries realized in C*(Z_n) (+) C*(Z_n)",
        },
        PresetInfo {
            name: "z4_commutative",
            params: "",
            description: "Z_4 relations in the commutative block model C*(Z_4) (+) C*(Z_4)",
        },
        PresetInfo {
            name: "z4_pauli",
            params: "",
            description: "Z_4 relations witnessed by the noncommuting Pauli model \
                          A = sigma_1/sqrt(2), B = sigma_2/sqrt(2)",
        },
        PresetInfo {
            name: "z_torus",
            params: "M, k [, p in {0,1}]",
            description: "Z with the standard set; one-dimensional torus-type model \
                          A = UP, B = UP^perp with U = z(M,k)",
        },
        PresetInfo {
            name: "s3_transpositions",
            params: "",
            description: "S3 generated by the transpositions s, t; four self-adjoint \
                          generators in C*(S3) (+) C*(S3)",
        },
        PresetInfo {
            name: "s3_dihedral",
            params: "",
            description: "S3 generated by a transposition and a 3-cycle; generators E, F, L \
                          in C*(S3) (+) C*(S3)",
        },
        PresetInfo {
            name: "f2_classical_swap",
            params: "",
            description: "free group F_2; 0/1 scalar model induced by the letter swap a <-> b",
        },
        PresetInfo {
            name: "f2_classical_sinv",
            params: "",
            description: "free group F_2; 0/1 scalar model induced by inverting the first letter",
        },
        PresetInfo {
            name: "f2_torus",
            params: "M, j, k",
            description: "free group F_2; diagonal phase model A = z(M,j), G = z(M,k)",
        },
    ]
}

/// Parses `name`, `name:p1:p2` or `name(p1,p2)` into a bundle.
pub fn preset(spec: &str) -> Result<PresetBundle, PresetError> {
    let spec = spec.trim();
    let (name, params): (&str, Vec<i64>) = if let Some(open) = spec.find('(') {
        let close = spec
            .rfind(')')
            .ok_or_else(|| PresetError::BadParams(format!("unbalanced parens in `{spec}`")))?;
        let name = &spec[..open];
        let inner = &spec[open + 1..close];
        let params = parse_params(inner)?;
        (name, params)
    } else if let Some((name, rest)) = spec.split_once(':') {
        (name, parse_params(&rest.replace(':', ","))?)
    } else {
        (spec, Vec::new())
    };
    match (name, params.as_slice()) {
        ("zn", [n]) => zn(*n),
        ("z4_commutative", []) => z4(false),
        ("z4_pauli", []) => z4(true),
        ("z_torus", [m, k]) => z_torus(*m, *k, 1),
        ("z_torus", [m, k, p]) => z_torus(*m, *k, *p),
        ("s3_transpositions", []) => s3_transpositions(),
        ("s3_dihedral", []) => s3_dihedral(),
        ("f2_classical_swap", []) => f2_classical("f2_classical_swap", &["C", "E"]),
        ("f2_classical_sinv", []) => f2_classical("f2_classical_sinv", &["B", "G"]),
        ("f2_torus", [m, j, k]) => f2_torus(*m, *j, *k),
        _ => Err(PresetError::Unknown(spec.to_string())),
    }
}

fn parse_params(inner: &str) -> Result<Vec<i64>, PresetError> {
    let inner = inner.trim();
    if inner.is_empty() {
        return Ok(Vec::new());
    }
    inner
        .split(',')
        .map(|p| {
            p.trim()
                .parse::<i64>()
                .map_err(|_| PresetError::BadParams(format!("`{p}` is not an integer")))
        })
        .collect()
}

fn scalar_matrix(s: CyclotomicScalar) -> Matrix {
    Matrix::new(1, 1, vec![s]).expect("1x1")
}

fn grid_from_labels(
    model: &MatrixModel,
    rows: &[&[&str]],
) -> Result<CoeffGrid, PresetError> {
    let dim = model.dim;
    let mut q = Vec::with_capacity(rows.len());
    for row in rows {
        let mut out_row = Vec::with_capacity(row.len());
        for cell in *row {
            let m = if *cell == "0" {
                Matrix::zeros(dim, dim)
            } else {
                let poly = crate::parse::parse_polynomial(cell)
                    .map_err(|e| PresetError::BadParams(e.to_string()))?;
                evaluate(&poly, model)?
            };
            out_row.push(m);
        }
        q.push(out_row);
    }
    CoeffGrid::new(q).map_err(|e| PresetError::BadParams(e.to_string()))
}

/// Relation list shared by all `zn` presets (n >= 3, n != 4).
fn zn_presentation(n: u64) -> String {
    format!(
        "generators: A B\n\
         corep:\n  A, B\n  B*, A*\n\
         relations:\n\
         \x20 A A* = A* A\n\
         \x20 B B* = B* B\n\
         \x20 A B\n\
         \x20 B A\n\
         \x20 A B*\n\
         \x20 B A*\n\
         \x20 A* B\n\
         \x20 B* A\n\
         \x20 A^{km} = A*\n\
         \x20 B^{km} = B*\n\
         \x20 A^{n} + B^{n} = 1\n\
         \x20 A A* + B B* = 1\n\
         \x20 A* A + B* B = 1\n",
        km = n - 1,
        n = n,
    )
}

fn zn(n: i64) -> Result<PresetBundle, PresetError> {
    if n < 3 || n == 4 {
        return Err(PresetError::BadParams(format!(
            "zn requires n >= 3, n != 4 (got {n}); use z4_commutative or z4_pauli for n = 4"
        )));
    }
    let n = n as u64;
    let group = Group::cyclic(n)?;
    let reg = regular_representation(&group)?;
    let shift = reg[&Elem::Cyclic(1)].clone();
    let zero = Matrix::zeros(n as usize, n as usize);
    let a = shift.direct_sum(&zero);
    let b = zero.direct_sum(&shift);
    let mut model = MatrixModel::new(format!("zn({n}) block model"), 2 * n as usize);
    model.assign("A", a).map_err(|e| PresetError::BadParams(e.to_string()))?;
    model.assign("B", b).map_err(|e| PresetError::BadParams(e.to_string()))?;
    let presentation = Presentation::parse(format!("zn({n})"), &zn_presentation(n))?;
    let grid = grid_from_labels(&model, &[&["A", "B"], &["B*", "A*"]])?;
    Ok(PresetBundle {
        name: format!("zn({n})"),
        group,
        presentation,
        model,
        grid,
        noncommutativity_witness: None,
        has_magic_grid: false,
        group_like_probe: None,
        notes: vec![
            "A and B generate orthogonal copies of C*(Z_n); the model algebra is commutative"
                .into(),
        ],
    })
}

const Z4_PRESENTATION: &str = "generators: A B\n\
    corep:\n  A, B\n  B*, A*\n\
    relations:\n\
    \x20 A A* = A* A\n\
    \x20 B B* = B* B\n\
    \x20 A B + B A\n\
    \x20 A B* + B A*\n\
    \x20 A* B + B A*\n\
    \x20 A^2 + B^2 = A*^2 + B*^2\n\
    \x20 A^2 B + B^3 = B*\n\
    \x20 B^2 A + A^3 = A*\n\
    \x20 A^4 + B^4 + 2 A^2 B^2 = 1\n\
    \x20 A A* + B B* = 1\n";

fn z4(pauli_model: bool) -> Result<PresetBundle, PresetError> {
    let group = Group::cyclic(4)?;
    let (name, model, witness, notes) = if pauli_model {
        let h = inv_sqrt2();
        let a = pauli(1).scale(&h).expect("scale");
        let b = pauli(2).scale(&h).expect("scale");
        let mut model = MatrixModel::new("z4 Pauli model", 2);
        model.assign("A", a).map_err(|e| PresetError::BadParams(e.to_string()))?;
        model.assign("B", b).map_err(|e| PresetError::BadParams(e.to_string()))?;
        (
            "z4_pauli".to_string(),
            model,
            Some(("A".to_string(), "B".to_string())),
            vec![
                "two anticommuting self-adjoint operators with A^2 + B^2 = 1 that do not \
                 commute: the relation algebra is noncommutative"
                    .into(),
            ],
        )
    } else {
        let reg = regular_representation(&group)?;
        let shift = reg[&Elem::Cyclic(1)].clone();
        let zero = Matrix::zeros(4, 4);
        let mut model = MatrixModel::new("z4 block model", 8);
        model
            .assign("A", shift.direct_sum(&zero))
            .map_err(|e| PresetError::BadParams(e.to_string()))?;
        model
            .assign("B", zero.direct_sum(&shift))
            .map_err(|e| PresetError::BadParams(e.to_string()))?;
        ("z4_commutative".to_string(), model, None, Vec::new())
    };
    let presentation = Presentation::parse(name.clone(), Z4_PRESENTATION)?;
    let grid = grid_from_labels(&model, &[&["A", "B"], &["B*", "A*"]])?;
    Ok(PresetBundle {
        name,
        group,
        presentation,
        model,
        grid,
        noncommutativity_witness: witness,
        has_magic_grid: false,
        group_like_probe: None,
        notes,
    })
}

const Z_TORUS_PRESENTATION: &str = "generators: A B\n\
    corep:\n  A, B\n  B*, A*\n\
    relations:\n\
    \x20 A A* = A* A\n\
    \x20 B B* = B* B\n\
    \x20 A B\n\
    \x20 B A\n\
    \x20 A* A + B* B = 1\n";

fn z_torus(m: i64, k: i64, p: i64) -> Result<PresetBundle, PresetError> {
    if m < 1 || m > crate::cyclotomic::MAX_ORDER as i64 {
        return Err(PresetError::BadParams(format!("root order {m} out of range")));
    }
    if p != 0 && p != 1 {
        return Err(PresetError::BadParams(format!("projection parameter must be 0 or 1, got {p}")));
    }
    let group = Group::free_abelian(1)?;
    let u = CyclotomicScalar::root_of_unity(m as u32, k)
        .map_err(|e| PresetError::BadParams(e.to_string()))?;
    // A = U P, B = U (1 - P) with P the scalar projection p.
    let a = if p == 1 { u.clone() } else { CyclotomicScalar::zero() };
    let b = if p == 1 { CyclotomicScalar::zero() } else { u };
    let model = MatrixModel::scalar_model(format!("z_torus({m},{k},{p})"), &[("A", a), ("B", b)]);
    let presentation = Presentation::parse(format!("z_torus({m},{k},{p})"), Z_TORUS_PRESENTATION)?;
    let grid = grid_from_labels(&model, &[&["A", "B"], &["B*", "A*"]])?;
    Ok(PresetBundle {
        name: format!("z_torus({m},{k},{p})"),
        group,
        presentation,
        model,
        grid,
        noncommutativity_witness: None,
        has_magic_grid: false,
        group_like_probe: None,
        notes: vec![
            "truncated-ball checks only; the commutative limit algebra itself is not \
             finite-dimensional"
                .into(),
        ],
    })
}

const S3_TRANSPOSITIONS_PRESENTATION: &str = "generators: A B C D\n\
    corep:\n  A, B\n  C, D\n\
    relations:\n\
    \x20 A^2 + B^2 = 1\n\
    \x20 A B\n\
    \x20 B A\n\
    \x20 C^2 + D^2 = 1\n\
    \x20 C D\n\
    \x20 D C\n\
    \x20 A C + B D\n\
    \x20 C A + D B\n\
    \x20 D A C\n\
    \x20 C B D\n\
    \x20 A D B\n\
    \x20 B C A\n\
    \x20 D A D + C B C = A D A + B C B\n\
    \x20 A = A*\n\
    \x20 B = B*\n\
    \x20 C = C*\n\
    \x20 D = D*\n\
    \x20 D A D = A D A\n\
    \x20 B C B = C B C\n";

fn s3_transpositions() -> Result<PresetBundle, PresetError> {
    let group = Group::s3_transpositions();
    let reg = regular_representation(&group)?;
    let lam_s = &reg[&group.parse_element("s").unwrap()];
    let lam_t = &reg[&group.parse_element("t").unwrap()];
    let zero = Matrix::zeros(6, 6);
    let mut model = MatrixModel::new("s3 transpositions block model", 12);
    for (label, m) in [
        ("A", lam_s.direct_sum(&zero)),
        ("B", zero.direct_sum(lam_t)),
        ("C", zero.direct_sum(lam_s)),
        ("D", lam_t.direct_sum(&zero)),
    ] {
        model.assign(label, m).map_err(|e| PresetError::BadParams(e.to_string()))?;
    }
    let presentation =
        Presentation::parse("s3_transpositions", S3_TRANSPOSITIONS_PRESENTATION)?;
    let grid = grid_from_labels(&model, &[&["A", "B"], &["C", "D"]])?;
    Ok(PresetBundle {
        name: "s3_transpositions".into(),
        group,
        presentation,
        model,
        grid,
        noncommutativity_witness: None,
        has_magic_grid: false,
        // A + C is lambda_s (+) lambda_s; its coproduct image is not the
        // elementary tensor with itself, unlike the dihedral counterpart.
        group_like_probe: Some(("A + C".into(), false)),
        notes: Vec::new(),
    })
}

const S3_DIHEDRAL_PRESENTATION: &str = "generators: E F L\n\
    corep:\n  E, F, 0\n  F^2, E^2, 0\n  0, 0, L\n\
    relations:\n\
    \x20 E E* + F F* = 1\n\
    \x20 E F + F E\n\
    \x20 F* F + E* E = 1\n\
    \x20 E* E + F F* = 1\n\
    \x20 E* F + F E*\n\
    \x20 F* E + E F*\n\
    \x20 F* F + E E* = 1\n\
    \x20 E^2 F\n\
    \x20 F^2 E\n\
    \x20 E^3 + F^3 = 1\n\
    \x20 E L = L E^2\n\
    \x20 F L = L F^2\n\
    \x20 L = L*\n\
    \x20 E^2 = E*\n\
    \x20 F^2 = F*\n\
    \x20 L* L = 1\n\
    \x20 L L* = 1\n";

fn s3_dihedral() -> Result<PresetBundle, PresetError> {
    let group = Group::s3_dihedral();
    let reg = regular_representation(&group)?;
    let lam_s = &reg[&group.parse_element("s'").unwrap()];
    let lam_t = &reg[&group.parse_element("t'").unwrap()];
    let zero = Matrix::zeros(6, 6);
    let mut model = MatrixModel::new("s3 dihedral block model", 12);
    for (label, m) in [
        ("E", lam_t.direct_sum(&zero)),
        ("F", zero.direct_sum(lam_t)),
        ("L", lam_s.direct_sum(lam_s)),
    ] {
        model.assign(label, m).map_err(|e| PresetError::BadParams(e.to_string()))?;
    }
    let presentation = Presentation::parse("s3_dihedral", S3_DIHEDRAL_PRESENTATION)?;
    // alpha(lambda_s') = lambda_s' (x) L; alpha(lambda_t') = lambda_t' (x) E
    // + lambda_t'^-1 (x) F; the starred row follows from E* = E^2, F* = F^2.
    let grid = grid_from_labels(
        &model,
        &[
            &["L", "0", "0"],
            &["0", "E", "F"],
            &["0", "F^2", "E^2"],
        ],
    )?;
    Ok(PresetBundle {
        name: "s3_dihedral".into(),
        group,
        presentation,
        model,
        grid,
        noncommutativity_witness: None,
        has_magic_grid: false,
        // L is lambda_s' (+) lambda_s' and is exactly group-like here.
        group_like_probe: Some(("L".into(), true)),
        notes: Vec::new(),
    })
}

const F2_PRESENTATION: &str = "generators: A B C D E F G H\n\
    corep:\n\
    \x20 A, B, C, D\n\
    \x20 B*, A*, D*, C*\n\
    \x20 E, F, G, H\n\
    \x20 F*, E*, H*, G*\n\
    relations:\n\
    \x20 A A* A = A\n\
    \x20 B B* B = B\n\
    \x20 C C* C = C\n\
    \x20 D D* D = D\n\
    \x20 E E* E = E\n\
    \x20 F F* F = F\n\
    \x20 G G* G = G\n\
    \x20 H H* H = H\n\
    \x20 A A* + B B* + C C* + D D* = 1\n\
    \x20 E E* + F F* + G G* + H H* = 1\n\
    \x20 B* B + A* A + D* D + C* C = 1\n\
    \x20 F* F + E* E + H* H + G* G = 1\n\
    \x20 A A* + E E* + B* B + F* F = 1\n\
    \x20 B B* + F F* + A* A + E* E = 1\n\
    \x20 C C* + G G* + D* D + H* H = 1\n\
    \x20 D D* + H H* + C* C + G* G = 1\n\
    \x20 A B*\n\
    \x20 A C*\n\
    \x20 A D*\n\
    \x20 B C*\n\
    \x20 B D*\n\
    \x20 C D*\n\
    \x20 A* B\n\
    \x20 A* C\n\
    \x20 A* D\n\
    \x20 B* C\n\
    \x20 B* D\n\
    \x20 C* D\n\
    \x20 E F*\n\
    \x20 E G*\n\
    \x20 E H*\n\
    \x20 F G*\n\
    \x20 F H*\n\
    \x20 G H*\n\
    \x20 E* F\n\
    \x20 E* G\n\
    \x20 E* H\n\
    \x20 F* G\n\
    \x20 F* H\n\
    \x20 G* H\n";

const F2_LABELS: [&str; 8] = ["A", "B", "C", "D", "E", "F", "G", "H"];

fn f2_bundle(
    name: String,
    assign: BTreeMap<&'static str, CyclotomicScalar>,
    notes: Vec<String>,
) -> Result<PresetBundle, PresetError> {
    let group = Group::free(2)?;
    let mut model = MatrixModel::new(name.clone(), 1);
    for label in F2_LABELS {
        let value = assign.get(label).cloned().unwrap_or_else(CyclotomicScalar::zero);
        model
            .assign(label, scalar_matrix(value))
            .map_err(|e| PresetError::BadParams(e.to_string()))?;
    }
    let presentation = Presentation::parse(name.clone(), F2_PRESENTATION)?;
    let grid = grid_from_labels(
        &model,
        &[
            &["A", "B", "C", "D"],
            &["B*", "A*", "D*", "C*"],
            &["E", "F", "G", "H"],
            &["F*", "E*", "H*", "G*"],
        ],
    )?;
    let mut all_notes = vec![
        "no noncommutative finite-dimensional model of this presentation is bundled; the \
         shipped models are commutative (classical permutations and torus phases)"
            .into(),
    ];
    all_notes.extend(notes);
    Ok(PresetBundle {
        name,
        group,
        presentation,
        model,
        grid,
        noncommutativity_witness: None,
        has_magic_grid: true,
        group_like_probe: None,
        notes: all_notes,
    })
}

/// Classical model: `q[x][z] = [sigma(x) = z]` for a length-preserving
/// permutation of the generating set; `ones` lists the labels set to 1.
fn f2_classical(name: &str, ones: &[&str]) -> Result<PresetBundle, PresetError> {
    let mut assign = BTreeMap::new();
    for label in F2_LABELS {
        if ones.contains(&label) {
            assign.insert(label, CyclotomicScalar::one());
        }
    }
    f2_bundle(name.to_string(), assign, Vec::new())
}

fn f2_torus(m: i64, j: i64, k: i64) -> Result<PresetBundle, PresetError> {
    if m < 1 || m > crate::cyclotomic::MAX_ORDER as i64 {
        return Err(PresetError::BadParams(format!("root order {m} out of range")));
    }
    let zj = CyclotomicScalar::root_of_unity(m as u32, j)
        .map_err(|e| PresetError::BadParams(e.to_string()))?;
    let zk = CyclotomicScalar::root_of_unity(m as u32, k)
        .map_err(|e| PresetError::BadParams(e.to_string()))?;
    let mut assign = BTreeMap::new();
    assign.insert("A", zj);
    assign.insert("G", zk);
    f2_bundle(format!("f2_torus({m},{j},{k})"), assign, Vec::new())
}
