//! Finitely generated groups with a designated symmetric generating set.
//!
//! A [`Group`] couples a family (cyclic, free, free abelian, or an explicit
//! finite multiplication table) with an ordered symmetric generating set.
//! Elements are kept in normal form per family, so equality is structural:
//! cyclic residues, reduced letter sequences, exponent vectors, or table
//! indices.
//!
//! Word lengths come from closed forms where the generating set is the
//! standard one (reduced length for free groups, `min(k, n-k)` for cyclic
//! groups, L1 norm for free abelian groups) and from breadth-first search
//! over the Cayley graph otherwise.  Sphere and ball enumeration is
//! deterministic: elements appear in length-lexicographic order with
//! generators ordered as declared, so reports are byte-stable.
//!
//! ```
//! use qisolab::group::Group;
//!
//! let f2 = Group::parse_spec("free:2").unwrap();
//! let sizes: Vec<usize> = (0..=3).map(|n| f2.sphere(n).unwrap().len()).collect();
//! assert_eq!(sizes, vec![1, 4, 12, 36]);
//! ```

use std::collections::BTreeSet;
use std::fmt;
use std::sync::Arc;

/// Default enumeration cap (ball radius) for infinite groups.
pub const DEFAULT_BALL_CAP: usize = 12;

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum GroupError {
    BadSpec(String),
    /// Element does not belong to this group (wrong family or out of range).
    Mismatch(String),
    CapExceeded { requested: usize, cap: usize },
    NotFinite,
    NotAGroup(String),
    BadGeneratingSet(String),
    BadWord(String),
    EmptySphere(usize),
}

impl fmt::Display for GroupError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            GroupError::BadSpec(s) => write!(f, "unknown group spec: {s}"),
            GroupError::Mismatch(s) => write!(f, "element does not belong to this group: {s}"),
            GroupError::CapExceeded { requested, cap } => {
                write!(f, "radius {requested} exceeds the enumeration cap {cap}")
            }
            GroupError::NotFinite => write!(f, "operation requires a finite group"),
            GroupError::NotAGroup(s) => write!(f, "multiplication table is not a group: {s}"),
            GroupError::BadGeneratingSet(s) => write!(f, "invalid generating set: {s}"),
            GroupError::BadWord(s) => write!(f, "cannot parse group element: {s}"),
            GroupError::EmptySphere(n) => write!(f, "sphere of radius {n} is empty"),
        }
    }
}

impl std::error::Error for GroupError {}

/// A group element in family-specific normal form.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Elem {
    /// Residue in `[0, n)`.
    Cyclic(u64),
    /// Reduced word; letter `k+1` is generator `k`, `-(k+1)` its inverse.
    Free(Vec<i32>),
    /// Exponent vector.
    FreeAbelian(Vec<i64>),
    /// Index into the finite table.
    Table(usize),
}

impl fmt::Debug for Elem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Elem::Cyclic(k) => write!(f, "c{k}"),
            Elem::Free(w) => write!(f, "f{w:?}"),
            Elem::FreeAbelian(v) => write!(f, "z{v:?}"),
            Elem::Table(i) => write!(f, "t{i}"),
        }
    }
}

/// An explicit finite group: names, a multiplication table and inverses.
/// Construction checks the full group axioms.
#[derive(Debug)]
pub struct FiniteTable {
    pub names: Vec<String>,
    mul: Vec<usize>,
    inv: Vec<usize>,
    identity: usize,
}

impl FiniteTable {
    /// Validates associativity on all triples, a two-sided identity, and
    /// two-sided inverses.
    pub fn new(names: Vec<String>, table: Vec<Vec<usize>>) -> Result<Self, GroupError> {
        let n = names.len();
        if table.len() != n || table.iter().any(|r| r.len() != n) {
            return Err(GroupError::NotAGroup("table is not square".into()));
        }
        for row in &table {
            for &v in row {
                if v >= n {
                    return Err(GroupError::NotAGroup(format!("index {v} out of range")));
                }
            }
        }
        let mut identity = None;
        for e in 0..n {
            if (0..n).all(|g| table[e][g] == g && table[g][e] == g) {
                identity = Some(e);
                break;
            }
        }
        let identity =
            identity.ok_or_else(|| GroupError::NotAGroup("no identity element".into()))?;
        let mut inv = vec![usize::MAX; n];
        for g in 0..n {
            match (0..n).find(|&h| table[g][h] == identity && table[h][g] == identity) {
                Some(h) => inv[g] = h,
                None => {
                    return Err(GroupError::NotAGroup(format!(
                        "element {} has no inverse",
                        names[g]
                    )))
                }
            }
        }
        for a in 0..n {
            for b in 0..n {
                for c in 0..n {
                    if table[table[a][b]][c] != table[a][table[b][c]] {
                        return Err(GroupError::NotAGroup(format!(
                            "associativity fails at ({}, {}, {})",
                            names[a], names[b], names[c]
                        )));
                    }
                }
            }
        }
        let mul = table.into_iter().flatten().collect();
        Ok(FiniteTable { names, mul, inv, identity })
    }

    pub fn order(&self) -> usize {
        self.names.len()
    }

    fn mul(&self, a: usize, b: usize) -> usize {
        self.mul[a * self.order() + b]
    }
}

#[derive(Debug, Clone)]
pub enum Family {
    Cyclic(u64),
    Free(usize),
    FreeAbelian(usize),
    FiniteTable(Arc<FiniteTable>),
}

/// A declared generator: its label and its element.
#[derive(Debug, Clone)]
pub struct Generator {
    pub label: String,
    pub elem: Elem,
}

#[derive(Clone)]
pub struct Group {
    spec: String,
    family: Family,
    gens: Vec<Generator>,
    /// For each generator index, the index of its inverse in the set.
    gen_inv: Vec<usize>,
    /// Precomputed BFS length table for finite groups.
    lengths: Option<Arc<Vec<usize>>>,
    cap: usize,
}

impl fmt::Debug for Group {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Group({})", self.spec)
    }
}

impl Group {
    /// Parses a group spec string: `cyclic:n`, `cyclic:4:large`, `free:r`,
    /// `freeabelian:r`, `s3:transpositions`, `s3:dihedral`.
    pub fn parse_spec(spec: &str) -> Result<Group, GroupError> {
        let parts: Vec<&str> = spec.split(':').collect();
        match parts.as_slice() {
            ["cyclic", n] => {
                let n: u64 = n
                    .parse()
                    .map_err(|_| GroupError::BadSpec(spec.to_string()))?;
                Group::cyclic(n)
            }
            ["cyclic", "4", "large"] => Group::cyclic_4_large(),
            ["free", r] => {
                let r: usize = r
                    .parse()
                    .map_err(|_| GroupError::BadSpec(spec.to_string()))?;
                Group::free(r)
            }
            ["freeabelian", r] => {
                let r: usize = r
                    .parse()
                    .map_err(|_| GroupError::BadSpec(spec.to_string()))?;
                Group::free_abelian(r)
            }
            ["s3", "transpositions"] => Ok(Group::s3_transpositions()),
            ["s3", "dihedral"] => Ok(Group::s3_dihedral()),
            _ => Err(GroupError::BadSpec(spec.to_string())),
        }
    }

    /// Cyclic group of order `n` with the standard set `{1, n-1}`.
    pub fn cyclic(n: u64) -> Result<Group, GroupError> {
        if n < 2 {
            return Err(GroupError::BadSpec(format!("cyclic:{n}")));
        }
        let gens = if n == 2 {
            vec![Generator { label: "1".into(), elem: Elem::Cyclic(1) }]
        } else {
            vec![
                Generator { label: "1".into(), elem: Elem::Cyclic(1) },
                Generator { label: format!("{}", n - 1), elem: Elem::Cyclic(n - 1) },
            ]
        };
        let gen_inv = if n == 2 { vec![0] } else { vec![1, 0] };
        Ok(Group {
            spec: format!("cyclic:{n}"),
            family: Family::Cyclic(n),
            gens,
            gen_inv,
            lengths: None,
            cap: usize::MAX,
        })
    }

    /// `Z_4` with the non-minimal symmetric set `{1, 2, 3}`.
    pub fn cyclic_4_large() -> Result<Group, GroupError> {
        let gens = vec![
            Generator { label: "1".into(), elem: Elem::Cyclic(1) },
            Generator { label: "2".into(), elem: Elem::Cyclic(2) },
            Generator { label: "3".into(), elem: Elem::Cyclic(3) },
        ];
        let mut g = Group {
            spec: "cyclic:4:large".into(),
            family: Family::Cyclic(4),
            gens,
            gen_inv: vec![2, 1, 0],
            lengths: None,
            cap: usize::MAX,
        };
        g.lengths = Some(Arc::new(g.bfs_lengths()?));
        Ok(g)
    }

    /// Free group of the given rank with the standard symmetric set.
    pub fn free(rank: usize) -> Result<Group, GroupError> {
        if rank == 0 || rank > 26 {
            return Err(GroupError::BadSpec(format!("free:{rank}")));
        }
        let mut gens = Vec::new();
        let mut gen_inv = Vec::new();
        for k in 0..rank {
            let letter = (b'a' + k as u8) as char;
            gens.push(Generator {
                label: letter.to_string(),
                elem: Elem::Free(vec![k as i32 + 1]),
            });
            gens.push(Generator {
                label: format!("{letter}^-1"),
                elem: Elem::Free(vec![-(k as i32 + 1)]),
            });
            gen_inv.push(2 * k + 1);
            gen_inv.push(2 * k);
        }
        Ok(Group {
            spec: format!("free:{rank}"),
            family: Family::Free(rank),
            gens,
            gen_inv,
            lengths: None,
            cap: DEFAULT_BALL_CAP,
        })
    }

    /// Free abelian group of the given rank with the standard symmetric set.
    pub fn free_abelian(rank: usize) -> Result<Group, GroupError> {
        if rank == 0 || rank > 26 {
            return Err(GroupError::BadSpec(format!("freeabelian:{rank}")));
        }
        let mut gens = Vec::new();
        let mut gen_inv = Vec::new();
        for k in 0..rank {
            let letter = (b'a' + k as u8) as char;
            let mut plus = vec![0i64; rank];
            plus[k] = 1;
            let mut minus = vec![0i64; rank];
            minus[k] = -1;
            gens.push(Generator { label: letter.to_string(), elem: Elem::FreeAbelian(plus) });
            gens.push(Generator {
                label: format!("{letter}^-1"),
                elem: Elem::FreeAbelian(minus),
            });
            gen_inv.push(2 * k + 1);
            gen_inv.push(2 * k);
        }
        Ok(Group {
            spec: format!("freeabelian:{rank}"),
            family: Family::FreeAbelian(rank),
            gens,
            gen_inv,
            lengths: None,
            cap: DEFAULT_BALL_CAP,
        })
    }

    /// The symmetric group S3 as permutations of `{1,2,3}` composed as
    /// `(g h)(x) = g(h(x))`; this convention fixes the multiplication table.
    fn s3_table() -> Arc<FiniteTable> {
        // Images of (1,2,3) under each permutation.
        let perms: [[usize; 3]; 6] = [
            [1, 2, 3], // e
            [2, 1, 3], // (12)
            [1, 3, 2], // (23)
            [3, 2, 1], // (13)
            [2, 3, 1], // (123): 1->2, 2->3, 3->1
            [3, 1, 2], // (132)
        ];
        let names = ["e", "(12)", "(23)", "(13)", "(123)", "(132)"];
        let compose = |g: &[usize; 3], h: &[usize; 3]| -> [usize; 3] {
            [g[h[0] - 1], g[h[1] - 1], g[h[2] - 1]]
        };
        let mut table = vec![vec![0usize; 6]; 6];
        for (i, g) in perms.iter().enumerate() {
            for (j, h) in perms.iter().enumerate() {
                let prod = compose(g, h);
                table[i][j] = perms.iter().position(|p| *p == prod).unwrap();
            }
        }
        Arc::new(
            FiniteTable::new(names.iter().map(|s| s.to_string()).collect(), table)
                .expect("S3 table is a group"),
        )
    }

    /// S3 generated by the transpositions `s = (12)`, `t = (23)`.
    pub fn s3_transpositions() -> Group {
        let table = Self::s3_table();
        let gens = vec![
            Generator { label: "s".into(), elem: Elem::Table(1) },
            Generator { label: "t".into(), elem: Elem::Table(2) },
        ];
        let mut g = Group {
            spec: "s3:transpositions".into(),
            family: Family::FiniteTable(table),
            gens,
            gen_inv: vec![0, 1],
            lengths: None,
            cap: usize::MAX,
        };
        g.lengths = Some(Arc::new(g.bfs_lengths().expect("finite BFS")));
        g
    }

    /// S3 generated dihedrally: `s' = (12)`, `t' = (123)`, and `t'^-1`.
    pub fn s3_dihedral() -> Group {
        let table = Self::s3_table();
        let gens = vec![
            Generator { label: "s'".into(), elem: Elem::Table(1) },
            Generator { label: "t'".into(), elem: Elem::Table(4) },
            Generator { label: "t'^-1".into(), elem: Elem::Table(5) },
        ];
        let mut g = Group {
            spec: "s3:dihedral".into(),
            family: Family::FiniteTable(table),
            gens,
            gen_inv: vec![0, 2, 1],
            lengths: None,
            cap: usize::MAX,
        };
        g.lengths = Some(Arc::new(g.bfs_lengths().expect("finite BFS")));
        g
    }

    /// A finite group from an explicit table with a chosen generating set,
    /// given as names.  The set must be symmetric and exclude the identity.
    pub fn from_table(
        spec: String,
        table: FiniteTable,
        gen_names: &[&str],
    ) -> Result<Group, GroupError> {
        let table = Arc::new(table);
        let mut gens = Vec::new();
        for name in gen_names {
            let idx = table
                .names
                .iter()
                .position(|n| n == name)
                .ok_or_else(|| GroupError::BadGeneratingSet(format!("unknown element {name}")))?;
            gens.push(Generator { label: name.to_string(), elem: Elem::Table(idx) });
        }
        let mut g = Group {
            spec,
            family: Family::FiniteTable(table),
            gens,
            gen_inv: Vec::new(),
            lengths: None,
            cap: usize::MAX,
        };
        g.gen_inv = g.compute_gen_inverses()?;
        g.validate_generating_set()?;
        g.lengths = Some(Arc::new(g.bfs_lengths()?));
        Ok(g)
    }

    fn compute_gen_inverses(&self) -> Result<Vec<usize>, GroupError> {
        let mut out = Vec::with_capacity(self.gens.len());
        for g in &self.gens {
            let inv = self.inverse(&g.elem)?;
            let idx = self
                .gens
                .iter()
                .position(|h| h.elem == inv)
                .ok_or_else(|| {
                    GroupError::BadGeneratingSet(format!(
                        "generating set is not symmetric: inverse of {} is missing",
                        g.label
                    ))
                })?;
            out.push(idx);
        }
        Ok(out)
    }

    fn validate_generating_set(&self) -> Result<(), GroupError> {
        let id = self.identity();
        if self.gens.iter().any(|g| g.elem == id) {
            return Err(GroupError::BadGeneratingSet(
                "generating set contains the identity".into(),
            ));
        }
        Ok(())
    }

    /// Overrides the enumeration cap (relevant for infinite groups only).
    pub fn with_cap(mut self, cap: usize) -> Group {
        self.cap = cap;
        self
    }

    pub fn cap(&self) -> usize {
        self.cap
    }

    pub fn spec(&self) -> &str {
        &self.spec
    }

    pub fn family(&self) -> &Family {
        &self.family
    }

    pub fn generators(&self) -> &[Generator] {
        &self.gens
    }

    pub fn gen_count(&self) -> usize {
        self.gens.len()
    }

    pub fn gen_elem(&self, idx: usize) -> &Elem {
        &self.gens[idx].elem
    }

    pub fn gen_label(&self, idx: usize) -> &str {
        &self.gens[idx].label
    }

    /// Index of the inverse of generator `idx` within the generating set.
    pub fn gen_inverse_index(&self, idx: usize) -> usize {
        self.gen_inv[idx]
    }

    pub fn gen_index_of_label(&self, label: &str) -> Option<usize> {
        self.gens.iter().position(|g| g.label == label)
    }

    pub fn is_finite(&self) -> bool {
        matches!(self.family, Family::Cyclic(_) | Family::FiniteTable(_))
    }

    pub fn order(&self) -> Option<usize> {
        match &self.family {
            Family::Cyclic(n) => Some(*n as usize),
            Family::FiniteTable(t) => Some(t.order()),
            _ => None,
        }
    }

    pub fn identity(&self) -> Elem {
        match &self.family {
            Family::Cyclic(_) => Elem::Cyclic(0),
            Family::Free(_) => Elem::Free(Vec::new()),
            Family::FreeAbelian(r) => Elem::FreeAbelian(vec![0; *r]),
            Family::FiniteTable(t) => Elem::Table(t.identity),
        }
    }

    fn check_elem(&self, e: &Elem) -> Result<(), GroupError> {
        let ok = match (&self.family, e) {
            (Family::Cyclic(n), Elem::Cyclic(k)) => k < n,
            (Family::Free(r), Elem::Free(w)) => {
                w.iter().all(|&l| l != 0 && (l.unsigned_abs() as usize) <= *r)
                    && w.windows(2).all(|p| p[0] != -p[1])
            }
            (Family::FreeAbelian(r), Elem::FreeAbelian(v)) => v.len() == *r,
            (Family::FiniteTable(t), Elem::Table(i)) => *i < t.order(),
            _ => false,
        };
        if ok {
            Ok(())
        } else {
            Err(GroupError::Mismatch(format!("{e:?} in {}", self.spec)))
        }
    }

    pub fn multiply(&self, a: &Elem, b: &Elem) -> Result<Elem, GroupError> {
        self.check_elem(a)?;
        self.check_elem(b)?;
        Ok(match (a, b) {
            (Elem::Cyclic(x), Elem::Cyclic(y)) => {
                let n = match self.family {
                    Family::Cyclic(n) => n,
                    _ => unreachable!(),
                };
                Elem::Cyclic((x + y) % n)
            }
            (Elem::Free(x), Elem::Free(y)) => {
                let mut w = x.clone();
                for &l in y {
                    if w.last().is_some_and(|&t| t == -l) {
                        w.pop();
                    } else {
                        w.push(l);
                    }
                }
                Elem::Free(w)
            }
            (Elem::FreeAbelian(x), Elem::FreeAbelian(y)) => {
                Elem::FreeAbelian(x.iter().zip(y).map(|(p, q)| p + q).collect())
            }
            (Elem::Table(x), Elem::Table(y)) => {
                let t = match &self.family {
                    Family::FiniteTable(t) => t,
                    _ => unreachable!(),
                };
                Elem::Table(t.mul(*x, *y))
            }
            _ => unreachable!("check_elem guarantees matching variants"),
        })
    }

    pub fn inverse(&self, a: &Elem) -> Result<Elem, GroupError> {
        self.check_elem(a)?;
        Ok(match a {
            Elem::Cyclic(x) => {
                let n = match self.family {
                    Family::Cyclic(n) => n,
                    _ => unreachable!(),
                };
                Elem::Cyclic((n - x) % n)
            }
            Elem::Free(w) => Elem::Free(w.iter().rev().map(|&l| -l).collect()),
            Elem::FreeAbelian(v) => Elem::FreeAbelian(v.iter().map(|&x| -x).collect()),
            Elem::Table(i) => {
                let t = match &self.family {
                    Family::FiniteTable(t) => t,
                    _ => unreachable!(),
                };
                Elem::Table(t.inv[*i])
            }
        })
    }

    /// Word length with respect to the declared generating set.
    pub fn word_length(&self, a: &Elem) -> Result<usize, GroupError> {
        self.check_elem(a)?;
        if let Some(lengths) = &self.lengths {
            let idx = match a {
                Elem::Cyclic(k) => *k as usize,
                Elem::Table(i) => *i,
                _ => unreachable!(),
            };
            return Ok(lengths[idx]);
        }
        Ok(match a {
            Elem::Cyclic(k) => {
                let n = match self.family {
                    Family::Cyclic(n) => n,
                    _ => unreachable!(),
                };
                (*k).min(n - k) as usize
            }
            Elem::Free(w) => w.len(),
            Elem::FreeAbelian(v) => v.iter().map(|x| x.unsigned_abs() as usize).sum(),
            Elem::Table(_) => unreachable!("finite tables always precompute lengths"),
        })
    }

    /// BFS over the Cayley graph; finite groups only.
    fn bfs_lengths(&self) -> Result<Vec<usize>, GroupError> {
        let n = self.order().ok_or(GroupError::NotFinite)?;
        let idx = |e: &Elem| -> usize {
            match e {
                Elem::Cyclic(k) => *k as usize,
                Elem::Table(i) => *i,
                _ => unreachable!(),
            }
        };
        let mut dist = vec![usize::MAX; n];
        let mut frontier = vec![self.identity()];
        dist[idx(&frontier[0])] = 0;
        let mut depth = 0;
        while !frontier.is_empty() {
            depth += 1;
            let mut next = Vec::new();
            for e in &frontier {
                for g in &self.gens {
                    let x = self.multiply(e, &g.elem)?;
                    let i = idx(&x);
                    if dist[i] == usize::MAX {
                        dist[i] = depth;
                        next.push(x);
                    }
                }
            }
            frontier = next;
        }
        if dist.contains(&usize::MAX) {
            return Err(GroupError::BadGeneratingSet(
                "declared set does not generate the group".into(),
            ));
        }
        Ok(dist)
    }

    fn check_cap(&self, n: usize) -> Result<(), GroupError> {
        if !self.is_finite() && n > self.cap {
            return Err(GroupError::CapExceeded { requested: n, cap: self.cap });
        }
        Ok(())
    }

    /// Ball of radius `n` with, for each element, its length-lexicographically
    /// minimal word as generator indices.  Deterministic order.
    pub fn ball_with_words(&self, n: usize) -> Result<Vec<(Elem, Vec<usize>)>, GroupError> {
        self.check_cap(n)?;
        let mut seen: BTreeSet<Elem> = BTreeSet::new();
        let id = self.identity();
        seen.insert(id.clone());
        let mut out = vec![(id, Vec::new())];
        let mut layer_start = 0;
        for _depth in 1..=n {
            let layer_end = out.len();
            for i in layer_start..layer_end {
                let (e, word) = out[i].clone();
                for (gi, g) in self.gens.iter().enumerate() {
                    let x = self.multiply(&e, &g.elem)?;
                    if seen.insert(x.clone()) {
                        let mut w = word.clone();
                        w.push(gi);
                        out.push((x, w));
                    }
                }
            }
            if out.len() == layer_end {
                break; // finite group exhausted
            }
            layer_start = layer_end;
        }
        Ok(out)
    }

    pub fn ball(&self, n: usize) -> Result<Vec<Elem>, GroupError> {
        Ok(self.ball_with_words(n)?.into_iter().map(|(e, _)| e).collect())
    }

    /// The sphere `W_n` of elements of length exactly `n`, in enumeration
    /// order.
    pub fn sphere(&self, n: usize) -> Result<Vec<Elem>, GroupError> {
        Ok(self.sphere_with_words(n)?.into_iter().map(|(e, _)| e).collect())
    }

    pub fn sphere_with_words(&self, n: usize) -> Result<Vec<(Elem, Vec<usize>)>, GroupError> {
        Ok(self
            .ball_with_words(n)?
            .into_iter()
            .filter(|(_, w)| w.len() == n)
            .collect())
    }

    /// All elements of a finite group, in enumeration order.
    pub fn elements(&self) -> Result<Vec<Elem>, GroupError> {
        let n = self.order().ok_or(GroupError::NotFinite)?;
        let ball = self.ball(n)?;
        debug_assert_eq!(ball.len(), n);
        Ok(ball)
    }

    /// Largest occupied sphere radius of a finite group.
    pub fn diameter(&self) -> Result<usize, GroupError> {
        let lengths = self.lengths.as_ref();
        match (&self.family, lengths) {
            (Family::Cyclic(n), None) => Ok((*n as usize) / 2),
            (_, Some(l)) => Ok(*l.iter().max().unwrap()),
            _ => Err(GroupError::NotFinite),
        }
    }

    /// A length-lexicographically minimal word for `a`, as generator indices.
    pub fn minimal_word(&self, a: &Elem) -> Result<Vec<usize>, GroupError> {
        self.check_elem(a)?;
        if let Elem::Free(w) = a {
            // The reduced word is the unique minimal word.
            return Ok(w
                .iter()
                .map(|&l| {
                    let k = (l.unsigned_abs() as usize) - 1;
                    if l > 0 {
                        2 * k
                    } else {
                        2 * k + 1
                    }
                })
                .collect());
        }
        let len = self.word_length(a)?;
        self.check_cap(len)?;
        for (e, w) in self.ball_with_words(len)? {
            if &e == a {
                return Ok(w);
            }
        }
        unreachable!("element must appear in its own ball")
    }

    /// Iterates over all `card(S)^n` formal words of length `n`.
    pub fn formal_words(&self, n: usize) -> Result<FormalWords, GroupError> {
        self.check_cap(n)?;
        Ok(FormalWords { base: self.gen_count(), next: Some(vec![0; n]) })
    }

    /// Evaluates a formal word to its normal form.
    pub fn reduce(&self, word: &[usize]) -> Result<Elem, GroupError> {
        let mut acc = self.identity();
        for &gi in word {
            if gi >= self.gens.len() {
                return Err(GroupError::BadWord(format!("generator index {gi} out of range")));
            }
            acc = self.multiply(&acc, &self.gens[gi].elem)?;
        }
        Ok(acc)
    }

    /// Parses an element: `e`, a bare residue for cyclic groups, an element
    /// name for table groups, or a whitespace-separated word in generator
    /// labels with optional integer exponents (`a b^-1`, `s t s`).
    pub fn parse_element(&self, text: &str) -> Result<Elem, GroupError> {
        let text = text.trim();
        if text == "e" || text.is_empty() {
            return Ok(self.identity());
        }
        if let Family::Cyclic(n) = self.family {
            if let Ok(k) = text.parse::<i64>() {
                return Ok(Elem::Cyclic(k.rem_euclid(n as i64) as u64));
            }
        }
        if let Family::FiniteTable(t) = &self.family {
            if let Some(idx) = t.names.iter().position(|nm| nm == text) {
                return Ok(Elem::Table(idx));
            }
        }
        let mut acc = self.identity();
        for token in text.split_whitespace() {
            let (label, exp) = match token.split_once('^') {
                Some((l, e)) => {
                    let exp: i64 = e
                        .parse()
                        .map_err(|_| GroupError::BadWord(format!("bad exponent in `{token}`")))?;
                    (l, exp)
                }
                None => (token, 1),
            };
            // Accept either a declared label (which may itself contain `^-1`)
            // or a base label with an exponent.
            let (gen_idx, count) = if let Some(i) = self.gen_index_of_label(token) {
                (i, 1)
            } else if let Some(i) = self.gen_index_of_label(label) {
                if exp >= 0 {
                    (i, exp as usize)
                } else {
                    (self.gen_inv[i], (-exp) as usize)
                }
            } else {
                return Err(GroupError::BadWord(format!("unknown generator `{token}`")));
            };
            for _ in 0..count {
                acc = self.multiply(&acc, &self.gens[gen_idx].elem)?;
            }
        }
        Ok(acc)
    }

    /// Renders an element deterministically: names for table groups, residues
    /// for cyclic groups, collapsed words for free families.
    pub fn display_element(&self, e: &Elem) -> String {
        match e {
            Elem::Cyclic(k) => k.to_string(),
            Elem::Table(i) => match &self.family {
                Family::FiniteTable(t) => t.names[*i].clone(),
                _ => format!("#{i}"),
            },
            Elem::Free(w) => {
                if w.is_empty() {
                    return "e".into();
                }
                let mut parts: Vec<String> = Vec::new();
                let mut run: Option<(i32, i64)> = None;
                let flush = |parts: &mut Vec<String>, run: &Option<(i32, i64)>| {
                    if let Some((letter, count)) = run {
                        let base = (b'a' + (letter.unsigned_abs() as u8) - 1) as char;
                        let exp = if *letter > 0 { *count } else { -count };
                        if exp == 1 {
                            parts.push(base.to_string());
                        } else {
                            parts.push(format!("{base}^{exp}"));
                        }
                    }
                };
                for &l in w {
                    match &mut run {
                        Some((letter, count)) if *letter == l => *count += 1,
                        _ => {
                            flush(&mut parts, &run);
                            run = Some((l, 1));
                        }
                    }
                }
                flush(&mut parts, &run);
                parts.join(" ")
            }
            Elem::FreeAbelian(v) => {
                let mut parts = Vec::new();
                for (k, &exp) in v.iter().enumerate() {
                    if exp != 0 {
                        let base = (b'a' + k as u8) as char;
                        if exp == 1 {
                            parts.push(base.to_string());
                        } else {
                            parts.push(format!("{base}^{exp}"));
                        }
                    }
                }
                if parts.is_empty() {
                    "e".into()
                } else {
                    parts.join(" ")
                }
            }
        }
    }
}

/// Iterator over formal words (sequences of generator indices).
pub struct FormalWords {
    base: usize,
    next: Option<Vec<usize>>,
}

impl Iterator for FormalWords {
    type Item = Vec<usize>;

    fn next(&mut self) -> Option<Vec<usize>> {
        let current = self.next.take()?;
        let mut succ = current.clone();
        let mut i = succ.len();
        loop {
            if i == 0 {
                self.next = None;
                break;
            }
            i -= 1;
            succ[i] += 1;
            if succ[i] < self.base {
                self.next = Some(succ);
                break;
            }
            succ[i] = 0;
        }
        Some(current)
    }
}
