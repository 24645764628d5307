//! Finite groups as indexed Cayley tables, built directly or as permutation
//! closures. The identity always sits at index 0.

mod builtin;
mod perm;
mod series;
mod subset;

pub use builtin::{builtin, catalog};
pub use perm::Permutation;
pub use subset::Subset;

use std::sync::OnceLock;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

/// Default cap on closure enumeration (|S7|).
pub const DEFAULT_ORDER_CAP: usize = 5040;

/// Orders up to this bound get an exhaustive associativity check on
/// construction; larger tables are sampled.
pub const EXHAUSTIVE_ASSOC_CAP: usize = 128;

const ASSOC_SAMPLES: usize = 100_000;

/// Commutator tables are cached only below this order.
const COMM_TABLE_CAP: usize = 2048;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum GroupError {
    #[error("table is not square: row {row} has length {len}, expected {order}")]
    NotSquare { row: usize, len: usize, order: usize },
    #[error("table entry [{a}][{b}] = {value} out of range")]
    EntryOutOfRange { a: usize, b: usize, value: usize },
    #[error("index 0 is not an identity: witness {witness}")]
    NoIdentityAtZero { witness: usize },
    #[error("element {element} has no inverse")]
    NoInverse { element: usize },
    #[error("row or column {index} is not a bijection")]
    NotLatin { index: usize },
    #[error("associativity fails at ({a},{b},{c})")]
    NotAssociative { a: usize, b: usize, c: usize },
    #[error("closure exceeds order cap {cap}")]
    OrderCapExceeded { cap: usize },
    #[error("malformed permutation: {text}")]
    MalformedPermutation { text: String },
    #[error("unknown builtin group: {name}")]
    UnknownBuiltin { name: String },
    #[error("builtin parameter out of range: {name}")]
    BuiltinParamOutOfRange { name: String },
    #[error("subgroup is not normal")]
    NotNormal,
    #[error("subset is not a subgroup")]
    NotSubgroup,
    #[error("group file parse error at line {line}: {message}")]
    FileFormat { line: usize, message: String },
    #[error("element index {index} out of range for group of order {order}")]
    ElementOutOfRange { index: usize, order: usize },
}

#[derive(Clone)]
pub struct FiniteGroup {
    name: String,
    order: usize,
    table: Vec<u16>,
    inv: Vec<u16>,
    elem_names: Vec<String>,
    comm: OnceLock<Vec<u16>>,
}

impl std::fmt::Debug for FiniteGroup {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "FiniteGroup({}, order {})", self.name, self.order)
    }
}

impl FiniteGroup {
    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn order(&self) -> usize {
        self.order
    }

    pub fn identity(&self) -> usize {
        0
    }

    pub fn mul(&self, a: usize, b: usize) -> usize {
        self.table[a * self.order + b] as usize
    }

    pub fn inv(&self, a: usize) -> usize {
        self.inv[a] as usize
    }

    pub fn element_name(&self, a: usize) -> &str {
        &self.elem_names[a]
    }

    pub fn element_names(&self) -> &[String] {
        &self.elem_names
    }

    /// [a,b] = a^-1 b^-1 a b
    pub fn commutator(&self, a: usize, b: usize) -> usize {
        if let Some(t) = self.comm_table() {
            return t[a * self.order + b] as usize;
        }
        self.commutator_direct(a, b)
    }

    fn commutator_direct(&self, a: usize, b: usize) -> usize {
        let x = self.mul(self.inv(a), self.inv(b));
        self.mul(self.mul(x, a), b)
    }

    fn comm_table(&self) -> Option<&[u16]> {
        if self.order > COMM_TABLE_CAP {
            return None;
        }
        Some(self.comm.get_or_init(|| {
            let n = self.order;
            let mut t = vec![0u16; n * n];
            for a in 0..n {
                for b in 0..n {
                    t[a * n + b] = self.commutator_direct(a, b) as u16;
                }
            }
            t
        }))
    }

    /// a^g = g^-1 a g
    pub fn conjugate(&self, a: usize, g: usize) -> usize {
        self.mul(self.mul(self.inv(g), a), g)
    }

    pub fn elements(&self) -> impl Iterator<Item = usize> {
        0..self.order
    }

    pub fn full_subset(&self) -> Subset {
        self.elements().collect()
    }

    pub fn check_element(&self, i: usize) -> Result<usize, GroupError> {
        if i < self.order {
            Ok(i)
        } else {
            Err(GroupError::ElementOutOfRange {
                index: i,
                order: self.order,
            })
        }
    }

    /// Validates and wraps a raw Cayley table. The identity must be index 0.
    pub fn from_cayley_table(name: &str, rows: &[Vec<usize>]) -> Result<Self, GroupError> {
        let order = rows.len();
        for (i, row) in rows.iter().enumerate() {
            if row.len() != order {
                return Err(GroupError::NotSquare {
                    row: i,
                    len: row.len(),
                    order,
                });
            }
        }
        for (a, row) in rows.iter().enumerate() {
            for (b, &v) in row.iter().enumerate() {
                if v >= order {
                    return Err(GroupError::EntryOutOfRange { a, b, value: v });
                }
            }
        }
        for a in 0..order {
            if rows[0][a] != a || rows[a][0] != a {
                return Err(GroupError::NoIdentityAtZero { witness: a });
            }
        }
        // rows and columns must be bijections
        for a in 0..order {
            let mut seen_row = vec![false; order];
            let mut seen_col = vec![false; order];
            for b in 0..order {
                if seen_row[rows[a][b]] {
                    return Err(GroupError::NotLatin { index: a });
                }
                seen_row[rows[a][b]] = true;
                if seen_col[rows[b][a]] {
                    return Err(GroupError::NotLatin { index: a });
                }
                seen_col[rows[b][a]] = true;
            }
        }
        let mut inv = vec![u16::MAX; order];
        for a in 0..order {
            let mut found = false;
            for b in 0..order {
                if rows[a][b] == 0 && rows[b][a] == 0 {
                    inv[a] = b as u16;
                    found = true;
                    break;
                }
            }
            if !found {
                return Err(GroupError::NoInverse { element: a });
            }
        }
        if order <= EXHAUSTIVE_ASSOC_CAP {
            for a in 0..order {
                for b in 0..order {
                    let ab = rows[a][b];
                    for c in 0..order {
                        if rows[ab][c] != rows[a][rows[b][c]] {
                            return Err(GroupError::NotAssociative { a, b, c });
                        }
                    }
                }
            }
        } else {
            let mut rng = ChaCha8Rng::seed_from_u64(0x5eed);
            for _ in 0..ASSOC_SAMPLES {
                let (a, b, c) = (
                    rng.gen_range(0..order),
                    rng.gen_range(0..order),
                    rng.gen_range(0..order),
                );
                if rows[rows[a][b]][c] != rows[a][rows[b][c]] {
                    return Err(GroupError::NotAssociative { a, b, c });
                }
            }
        }
        let table = rows
            .iter()
            .flat_map(|r| r.iter().map(|&v| v as u16))
            .collect();
        Ok(FiniteGroup {
            name: name.to_string(),
            order,
            table,
            inv,
            elem_names: (0..order).map(|i| i.to_string()).collect(),
            comm: OnceLock::new(),
        })
    }

    pub fn from_permutations(
        name: &str,
        generators: &[Permutation],
        degree: usize,
    ) -> Result<Self, GroupError> {
        Self::from_permutations_capped(name, generators, degree, DEFAULT_ORDER_CAP)
    }

    /// Enumerates the closure of the generators under composition (orbit of
    /// the identity under right multiplication) and builds the Cayley table.
    pub fn from_permutations_capped(
        name: &str,
        generators: &[Permutation],
        degree: usize,
        cap: usize,
    ) -> Result<Self, GroupError> {
        use std::collections::HashMap;
        let id = Permutation::identity(degree);
        let mut elems = vec![id.clone()];
        let mut index: HashMap<Permutation, usize> = HashMap::new();
        index.insert(id, 0);
        let mut frontier = 0;
        while frontier < elems.len() {
            let cur = elems[frontier].clone();
            frontier += 1;
            for g in generators {
                let next = cur.compose(g);
                if !index.contains_key(&next) {
                    if elems.len() >= cap {
                        return Err(GroupError::OrderCapExceeded { cap });
                    }
                    index.insert(next.clone(), elems.len());
                    elems.push(next);
                }
            }
        }
        let order = elems.len();
        let mut table = vec![0u16; order * order];
        for a in 0..order {
            for b in 0..order {
                let prod = elems[a].compose(&elems[b]);
                table[a * order + b] = index[&prod] as u16;
            }
        }
        let mut inv = vec![0u16; order];
        for a in 0..order {
            inv[a] = index[&elems[a].inverse()] as u16;
        }
        let elem_names = elems.iter().map(|p| p.to_string()).collect();
        Ok(FiniteGroup {
            name: name.to_string(),
            order,
            table,
            inv,
            elem_names,
            comm: OnceLock::new(),
        })
    }

    fn from_parts(name: &str, order: usize, table: Vec<u16>, names: Vec<String>) -> Self {
        let mut inv = vec![0u16; order];
        for a in 0..order {
            for b in 0..order {
                if table[a * order + b] == 0 {
                    inv[a] = b as u16;
                    break;
                }
            }
        }
        FiniteGroup {
            name: name.to_string(),
            order,
            table,
            inv,
            elem_names: names,
            comm: OnceLock::new(),
        }
    }

    pub fn rename(mut self, name: &str) -> Self {
        self.name = name.to_string();
        self
    }

    pub fn with_element_names(mut self, names: Vec<String>) -> Self {
        assert_eq!(names.len(), self.order);
        self.elem_names = names;
        self
    }
}

/// Parses a group definition file: first line `name <string>`, then either
/// `table <order>` followed by the rows, or `perm <degree>` followed by one
/// generator per line in cycle notation.
pub fn parse_group_file(text: &str) -> Result<FiniteGroup, GroupError> {
    let mut lines = text.lines().enumerate();
    let (_, first) = lines
        .next()
        .ok_or_else(|| GroupError::FileFormat {
            line: 1,
            message: "empty file".into(),
        })?;
    let name = first
        .strip_prefix("name ")
        .map(str::trim)
        .filter(|s| !s.is_empty())
        .ok_or_else(|| GroupError::FileFormat {
            line: 1,
            message: "expected 'name <string>'".into(),
        })?;
    let (line_no, header) = lines
        .find(|(_, l)| !l.trim().is_empty())
        .ok_or_else(|| GroupError::FileFormat {
            line: 2,
            message: "expected 'table <order>' or 'perm <degree>'".into(),
        })?;
    let mut parts = header.split_whitespace();
    match (parts.next(), parts.next()) {
        (Some("table"), Some(n)) => {
            let order: usize = n.parse().map_err(|_| GroupError::FileFormat {
                line: line_no + 1,
                message: "bad order".into(),
            })?;
            let mut rows = Vec::with_capacity(order);
            for _ in 0..order {
                let (ln, row_text) =
                    lines
                        .find(|(_, l)| !l.trim().is_empty())
                        .ok_or_else(|| GroupError::FileFormat {
                            line: line_no + 1,
                            message: format!("expected {} table rows", order),
                        })?;
                let row: Vec<usize> = row_text
                    .split_whitespace()
                    .map(|s| {
                        s.parse::<usize>().map_err(|_| GroupError::FileFormat {
                            line: ln + 1,
                            message: format!("bad table entry '{}'", s),
                        })
                    })
                    .collect::<Result<_, _>>()?;
                rows.push(row);
            }
            FiniteGroup::from_cayley_table(name, &rows)
        }
        (Some("perm"), Some(d)) => {
            let degree: usize = d.parse().map_err(|_| GroupError::FileFormat {
                line: line_no + 1,
                message: "bad degree".into(),
            })?;
            let mut gens = Vec::new();
            for (_, l) in lines {
                if l.trim().is_empty() {
                    continue;
                }
                gens.push(Permutation::parse_cycles(l, degree)?);
            }
            FiniteGroup::from_permutations(name, &gens, degree)
        }
        _ => Err(GroupError::FileFormat {
            line: line_no + 1,
            message: "expected 'table <order>' or 'perm <degree>'".into(),
        }),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn trivial_and_z2_tables() {
        let g = FiniteGroup::from_cayley_table("t", &[vec![0]]).unwrap();
        assert_eq!(g.order(), 1);
        let z2 = FiniteGroup::from_cayley_table("z2", &[vec![0, 1], vec![1, 0]]).unwrap();
        assert_eq!(z2.order(), 2);
        assert_eq!(z2.mul(1, 1), 0);
        assert_eq!(z2.inv(1), 1);
    }

    #[test]
    fn rejects_non_associative_latin_square() {
        // order-5 loop: Latin square with identity 0 that is not associative
        let rows = vec![
            vec![0, 1, 2, 3, 4],
            vec![1, 0, 3, 4, 2],
            vec![2, 4, 0, 1, 3],
            vec![3, 2, 4, 0, 1],
            vec![4, 3, 1, 2, 0],
        ];
        match FiniteGroup::from_cayley_table("loop5", &rows) {
            Err(GroupError::NotAssociative { a, b, c }) => {
                // the witness really is a failure
                assert_ne!(rows[rows[a][b]][c], rows[a][rows[b][c]]);
            }
            other => panic!("expected associativity error, got {:?}", other),
        }
    }

    #[test]
    fn rejects_bad_identity_and_shape() {
        assert!(matches!(
            FiniteGroup::from_cayley_table("x", &[vec![0, 1]]),
            Err(GroupError::NotSquare { .. })
        ));
        assert!(matches!(
            FiniteGroup::from_cayley_table("x", &[vec![1, 0], vec![0, 1]]),
            Err(GroupError::NoIdentityAtZero { .. })
        ));
    }

    #[test]
    fn s3_from_generators() {
        let gens = vec![
            Permutation::parse_cycles("(1 2)", 3).unwrap(),
            Permutation::parse_cycles("(1 2 3)", 3).unwrap(),
        ];
        let g = FiniteGroup::from_permutations("S3", &gens, 3).unwrap();
        assert_eq!(g.order(), 6);
        assert_eq!(g.element_name(0), "()");
    }

    #[test]
    fn a5_from_generators() {
        let gens = vec![
            Permutation::parse_cycles("(1 2 3 4 5)", 5).unwrap(),
            Permutation::parse_cycles("(1 2 3)", 5).unwrap(),
        ];
        let g = FiniteGroup::from_permutations("A5", &gens, 5).unwrap();
        assert_eq!(g.order(), 60);
    }

    #[test]
    fn empty_generators_give_trivial_group() {
        let g = FiniteGroup::from_permutations("triv", &[], 4).unwrap();
        assert_eq!(g.order(), 1);
    }

    #[test]
    fn order_cap_is_enforced() {
        let gens = vec![
            Permutation::parse_cycles("(1 2 3 4 5)", 5).unwrap(),
            Permutation::parse_cycles("(1 2 3)", 5).unwrap(),
        ];
        assert!(matches!(
            FiniteGroup::from_permutations_capped("A5", &gens, 5, 30),
            Err(GroupError::OrderCapExceeded { cap: 30 })
        ));
    }

    #[test]
    fn commutator_and_conjugate_in_s3() {
        let g = builtin("symmetric(3)").unwrap();
        let find = |s: &str| g.elements().find(|&i| g.element_name(i) == s).unwrap();
        let a = find("(1 2)");
        let b = find("(1 3)");
        assert_eq!(g.element_name(g.commutator(a, b)), "(1 3 2)");
        let c = find("(1 2 3)");
        assert_eq!(g.element_name(g.conjugate(a, c)), "(2 3)");
        assert_eq!(g.commutator(g.identity(), a), g.identity());
        assert_eq!(g.conjugate(a, g.identity()), a);
    }

    #[test]
    fn group_file_roundtrip() {
        let g = parse_group_file("name z3\ntable 3\n0 1 2\n1 2 0\n2 0 1\n").unwrap();
        assert_eq!(g.order(), 3);
        assert_eq!(g.name(), "z3");
        let g = parse_group_file("name s3\nperm 3\n(1 2)\n(1 2 3)\n").unwrap();
        assert_eq!(g.order(), 6);
        assert!(parse_group_file("table 3\n").is_err());
        assert!(matches!(
            parse_group_file("name x\ntable 2\n0 1\n"),
            Err(GroupError::FileFormat { .. })
        ));
    }
}
