//! Permutations of {1..degree} with cycle-notation parsing and rendering.
//! Internally 0-based; composition acts left to right: `(p * q)(i) = q(p(i))`.

use std::fmt;

use super::GroupError;

#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Permutation {
    map: Vec<usize>,
}

impl Permutation {
    pub fn identity(degree: usize) -> Self {
        Permutation {
            map: (0..degree).collect(),
        }
    }

    pub fn from_images(map: Vec<usize>) -> Result<Self, GroupError> {
        let n = map.len();
        let mut seen = vec![false; n];
        for &i in &map {
            if i >= n || seen[i] {
                return Err(GroupError::MalformedPermutation {
                    text: format!("{:?}", map),
                });
            }
            seen[i] = true;
        }
        Ok(Permutation { map })
    }

    pub fn degree(&self) -> usize {
        self.map.len()
    }

    pub fn apply(&self, point: usize) -> usize {
        self.map[point]
    }

    pub fn compose(&self, other: &Permutation) -> Permutation {
        debug_assert_eq!(self.degree(), other.degree());
        Permutation {
            map: self.map.iter().map(|&i| other.map[i]).collect(),
        }
    }

    pub fn inverse(&self) -> Permutation {
        let mut map = vec![0; self.map.len()];
        for (i, &j) in self.map.iter().enumerate() {
            map[j] = i;
        }
        Permutation { map }
    }

    pub fn is_even(&self) -> bool {
        let mut seen = vec![false; self.map.len()];
        let mut parity = true;
        for start in 0..self.map.len() {
            if seen[start] {
                continue;
            }
            let mut len = 0;
            let mut cur = start;
            while !seen[cur] {
                seen[cur] = true;
                cur = self.map[cur];
                len += 1;
            }
            if len % 2 == 0 {
                parity = !parity;
            }
        }
        parity
    }

    /// Parses cycle notation like `(1 2 3)(4 5)`; points are 1-based.
    pub fn parse_cycles(text: &str, degree: usize) -> Result<Self, GroupError> {
        let bad = || GroupError::MalformedPermutation {
            text: text.to_string(),
        };
        let mut map: Vec<usize> = (0..degree).collect();
        let trimmed = text.trim();
        if trimmed.is_empty() || trimmed == "()" || trimmed == "e" {
            return Ok(Permutation { map });
        }
        let mut rest = trimmed;
        while !rest.is_empty() {
            rest = rest.trim_start();
            if rest.is_empty() {
                break;
            }
            if !rest.starts_with('(') {
                return Err(bad());
            }
            let close = rest.find(')').ok_or_else(bad)?;
            let body = &rest[1..close];
            rest = &rest[close + 1..];
            let points: Vec<usize> = body
                .split([' ', ','])
                .filter(|s| !s.is_empty())
                .map(|s| s.parse::<usize>().map_err(|_| bad()))
                .collect::<Result<_, _>>()?;
            if points.iter().any(|&p| p == 0 || p > degree) {
                return Err(bad());
            }
            for w in 0..points.len() {
                let from = points[w] - 1;
                let to = points[(w + 1) % points.len()] - 1;
                if map[from] != from {
                    return Err(bad()); // point repeated across cycles
                }
                map[from] = to;
            }
        }
        Permutation::from_images(map)
    }
}

impl fmt::Display for Permutation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut seen = vec![false; self.map.len()];
        let mut wrote = false;
        for start in 0..self.map.len() {
            if seen[start] || self.map[start] == start {
                seen[start] = true;
                continue;
            }
            write!(f, "(")?;
            let mut cur = start;
            let mut first = true;
            while !seen[cur] {
                seen[cur] = true;
                if !first {
                    write!(f, " ")?;
                }
                write!(f, "{}", cur + 1)?;
                first = false;
                cur = self.map[cur];
            }
            write!(f, ")")?;
            wrote = true;
        }
        if !wrote {
            write!(f, "()")?;
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parse_and_render() {
        let p = Permutation::parse_cycles("(1 2 3)(4 5)", 5).unwrap();
        assert_eq!(p.apply(0), 1);
        assert_eq!(p.apply(2), 0);
        assert_eq!(p.apply(3), 4);
        assert_eq!(p.to_string(), "(1 2 3)(4 5)");
        assert_eq!(Permutation::parse_cycles("()", 4).unwrap(), Permutation::identity(4));
        assert!(Permutation::parse_cycles("(1 2", 3).is_err());
        assert!(Permutation::parse_cycles("(1 4)", 3).is_err());
        assert!(Permutation::parse_cycles("(1 2)(2 3)", 3).is_err());
    }

    #[test]
    fn compose_left_to_right() {
        let a = Permutation::parse_cycles("(1 2)", 3).unwrap();
        let b = Permutation::parse_cycles("(1 3)", 3).unwrap();
        // apply a then b
        assert_eq!(a.compose(&b).to_string(), "(1 2 3)");
        assert_eq!(b.compose(&a).to_string(), "(1 3 2)");
    }

    #[test]
    fn inverse_and_parity() {
        let p = Permutation::parse_cycles("(1 2 3 4)", 4).unwrap();
        assert_eq!(p.compose(&p.inverse()), Permutation::identity(4));
        assert!(!p.is_even());
        assert!(Permutation::parse_cycles("(1 2 3)", 4).unwrap().is_even());
    }
}
