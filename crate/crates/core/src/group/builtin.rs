//! Named group catalog: cyclic(n), dihedral(n), symmetric(n), alternating(n),
//! quaternion8, heisenberg(p).

use super::{FiniteGroup, GroupError, Permutation};

/// Builds a catalog group from its name, e.g. `"dihedral(4)"`.
pub fn builtin(name: &str) -> Result<FiniteGroup, GroupError> {
    let unknown = || GroupError::UnknownBuiltin {
        name: name.to_string(),
    };
    let out_of_range = || GroupError::BuiltinParamOutOfRange {
        name: name.to_string(),
    };
    let trimmed = name.trim();
    if trimmed == "quaternion8" {
        return Ok(quaternion8());
    }
    let (kind, rest) = trimmed.split_once('(').ok_or_else(unknown)?;
    let arg: usize = rest
        .strip_suffix(')')
        .and_then(|s| s.trim().parse().ok())
        .ok_or_else(unknown)?;
    match kind {
        "cyclic" => {
            if arg == 0 {
                return Err(out_of_range());
            }
            Ok(cyclic(arg))
        }
        "dihedral" => {
            if arg == 0 {
                return Err(out_of_range());
            }
            Ok(dihedral(arg))
        }
        "symmetric" => {
            if !(1..=6).contains(&arg) {
                return Err(out_of_range());
            }
            Ok(symmetric(arg))
        }
        "alternating" => {
            if !(1..=6).contains(&arg) {
                return Err(out_of_range());
            }
            Ok(alternating(arg))
        }
        "heisenberg" => {
            if ![2, 3, 5].contains(&arg) {
                return Err(out_of_range());
            }
            Ok(heisenberg(arg))
        }
        _ => Err(unknown()),
    }
}

/// Names of all catalog groups with order at most `max_order`.
pub fn catalog(max_order: usize) -> Vec<String> {
    let mut names = Vec::new();
    for n in 1..=max_order {
        names.push(format!("cyclic({})", n));
    }
    for n in 1..=max_order / 2 {
        names.push(format!("dihedral({})", n));
    }
    for n in 2..=6usize {
        if factorial(n) <= max_order {
            names.push(format!("symmetric({})", n));
        }
        if factorial(n) / 2 <= max_order && n >= 3 {
            names.push(format!("alternating({})", n));
        }
    }
    if max_order >= 8 {
        names.push("quaternion8".to_string());
    }
    for p in [2usize, 3, 5] {
        if p * p * p <= max_order {
            names.push(format!("heisenberg({})", p));
        }
    }
    names
}

fn factorial(n: usize) -> usize {
    (1..=n).product()
}

fn cyclic(n: usize) -> FiniteGroup {
    let rows: Vec<Vec<usize>> = (0..n).map(|a| (0..n).map(|b| (a + b) % n).collect()).collect();
    FiniteGroup::from_cayley_table(&format!("cyclic({})", n), &rows).expect("valid table")
}

/// Order 2n; elements r^i s^j with (i,j)(i',j') = (i + (-1)^j i', j + j').
fn dihedral(n: usize) -> FiniteGroup {
    let order = 2 * n;
    let idx = |i: usize, j: usize| j * n + i;
    let mut rows = vec![vec![0usize; order]; order];
    let mut names = vec![String::new(); order];
    for i in 0..n {
        for j in 0..2 {
            names[idx(i, j)] = match (i, j) {
                (0, 0) => "e".to_string(),
                (_, 0) => format!("r{}", i),
                (0, _) => "s".to_string(),
                (_, _) => format!("r{}s", i),
            };
            for i2 in 0..n {
                for j2 in 0..2 {
                    let ii = if j == 0 { (i + i2) % n } else { (i + n - i2 % n) % n };
                    rows[idx(i, j)][idx(i2, j2)] = idx(ii, (j + j2) % 2);
                }
            }
        }
    }
    let g = FiniteGroup::from_cayley_table(&format!("dihedral({})", n), &rows).expect("valid table");
    with_names(g, names)
}

fn symmetric(n: usize) -> FiniteGroup {
    let name = format!("symmetric({})", n);
    if n == 1 {
        return FiniteGroup::from_permutations(&name, &[], 1).expect("trivial");
    }
    let mut gens = vec![Permutation::parse_cycles("(1 2)", n).expect("gen")];
    if n > 2 {
        let full: Vec<String> = (1..=n).map(|i| i.to_string()).collect();
        gens.push(Permutation::parse_cycles(&format!("({})", full.join(" ")), n).expect("gen"));
    }
    FiniteGroup::from_permutations(&name, &gens, n).expect("closure fits cap")
}

fn alternating(n: usize) -> FiniteGroup {
    let name = format!("alternating({})", n);
    if n < 3 {
        return FiniteGroup::from_permutations(&name, &[], n.max(1)).expect("trivial");
    }
    // 3-cycles (1 2 3), (1 2 4), ..., (1 2 n) generate A_n
    let gens: Vec<Permutation> = (3..=n)
        .map(|k| Permutation::parse_cycles(&format!("(1 2 {})", k), n).expect("gen"))
        .collect();
    FiniteGroup::from_permutations(&name, &gens, n).expect("closure fits cap")
}

/// {1,-1,i,-i,j,-j,k,-k}; indices 0..7 in that order.
fn quaternion8() -> FiniteGroup {
    const NAMES: [&str; 8] = ["1", "-1", "i", "-i", "j", "-j", "k", "-k"];
    // sign bit in the low position: index = 2*unit + neg
    let unit_mul = |a: usize, b: usize| -> (usize, bool) {
        // units 0=1, 1=i, 2=j, 3=k
        match (a, b) {
            (0, x) => (x, false),
            (x, 0) => (x, false),
            (1, 1) => (0, true),
            (2, 2) => (0, true),
            (3, 3) => (0, true),
            (1, 2) => (3, false),
            (2, 1) => (3, true),
            (2, 3) => (1, false),
            (3, 2) => (1, true),
            (3, 1) => (2, false),
            (1, 3) => (2, true),
            _ => unreachable!(),
        }
    };
    let mut rows = vec![vec![0usize; 8]; 8];
    for a in 0..8 {
        for b in 0..8 {
            let (ua, na) = (a / 2, a % 2 == 1);
            let (ub, nb) = (b / 2, b % 2 == 1);
            let (u, neg) = unit_mul(ua, ub);
            let n = (na ^ nb) ^ neg;
            rows[a][b] = 2 * u + n as usize;
        }
    }
    let g = FiniteGroup::from_cayley_table("quaternion8", &rows).expect("valid table");
    with_names(g, NAMES.iter().map(|s| s.to_string()).collect())
}

/// 3x3 upper unitriangular matrices over Z/p: (a,b,c) with
/// (a,b,c)(a',b',c') = (a+a', b+b', c+c'+a*b').
fn heisenberg(p: usize) -> FiniteGroup {
    let order = p * p * p;
    let idx = |a: usize, b: usize, c: usize| (a * p + b) * p + c;
    let mut rows = vec![vec![0usize; order]; order];
    let mut names = vec![String::new(); order];
    for a in 0..p {
        for b in 0..p {
            for c in 0..p {
                names[idx(a, b, c)] = format!("({},{},{})", a, b, c);
                for a2 in 0..p {
                    for b2 in 0..p {
                        for c2 in 0..p {
                            rows[idx(a, b, c)][idx(a2, b2, c2)] =
                                idx((a + a2) % p, (b + b2) % p, (c + c2 + a * b2) % p);
                        }
                    }
                }
            }
        }
    }
    let g = FiniteGroup::from_cayley_table(&format!("heisenberg({})", p), &rows)
        .expect("valid table");
    with_names(g, names)
}

fn with_names(g: FiniteGroup, names: Vec<String>) -> FiniteGroup {
    g.with_element_names(names)
}
