//! Permutations, cycle notation, and permutation groups.
//!
//! Points are 0-based internally. The text format is 1-based disjoint cycle
//! notation such as `(1,2,3)(4,5)`, with several permutations separated by
//! `;`.

mod group;
mod iso;

pub use group::PermGroup;
pub use iso::{groups_isomorphic, IsoVerdict, DEFAULT_ISO_BOUND};

use std::fmt;

use thiserror::Error;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum PermError {
    #[error("malformed cycle notation at byte {0}")]
    Malformed(usize),
    #[error("point {0} appears twice")]
    RepeatedPoint(usize),
    #[error("point {point} exceeds degree {degree}")]
    PointOutOfRange { point: usize, degree: usize },
    #[error("images do not form a bijection")]
    NotBijection,
    #[error("degree mismatch: {0} vs {1}")]
    DegreeMismatch(usize, usize),
    #[error("point set is not invariant under the group")]
    NotInvariant,
}

/// A bijection on `0..degree`, stored as its image array.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Permutation {
    images: Vec<u32>,
}

impl Permutation {
    pub fn identity(degree: usize) -> Self {
        Permutation { images: (0..degree as u32).collect() }
    }

    pub fn from_images(images: Vec<u32>) -> Result<Self, PermError> {
        let mut seen = vec![false; images.len()];
        for &x in &images {
            let x = x as usize;
            if x >= images.len() || seen[x] {
                return Err(PermError::NotBijection);
            }
            seen[x] = true;
        }
        Ok(Permutation { images })
    }

    /// Builds a permutation from 0-based cycles.
    pub fn from_cycles(degree: usize, cycles: &[Vec<usize>]) -> Result<Self, PermError> {
        let mut images: Vec<u32> = (0..degree as u32).collect();
        let mut seen = vec![false; degree];
        for cyc in cycles {
            for (i, &x) in cyc.iter().enumerate() {
                if x >= degree {
                    return Err(PermError::PointOutOfRange { point: x + 1, degree });
                }
                if seen[x] {
                    return Err(PermError::RepeatedPoint(x + 1));
                }
                seen[x] = true;
                images[x] = cyc[(i + 1) % cyc.len()] as u32;
            }
        }
        Ok(Permutation { images })
    }

    pub fn degree(&self) -> usize {
        self.images.len()
    }

    pub fn images(&self) -> &[u32] {
        &self.images
    }

    #[inline]
    pub fn apply(&self, x: usize) -> usize {
        self.images[x] as usize
    }

    pub fn is_identity(&self) -> bool {
        self.images.iter().enumerate().all(|(i, &x)| i as u32 == x)
    }

    /// `self` first, then `other`.
    pub fn then(&self, other: &Permutation) -> Permutation {
        Permutation {
            images: self.images.iter().map(|&x| other.images[x as usize]).collect(),
        }
    }

    pub fn inverse(&self) -> Permutation {
        let mut inv = vec![0u32; self.images.len()];
        for (i, &x) in self.images.iter().enumerate() {
            inv[x as usize] = i as u32;
        }
        Permutation { images: inv }
    }

    /// Nontrivial cycles, each starting at its smallest point, ordered by
    /// that point.
    pub fn cycles(&self) -> Vec<Vec<usize>> {
        let n = self.degree();
        let mut seen = vec![false; n];
        let mut out = Vec::new();
        for s in 0..n {
            if seen[s] || self.apply(s) == s {
                continue;
            }
            let mut cyc = vec![s];
            seen[s] = true;
            let mut x = self.apply(s);
            while x != s {
                seen[x] = true;
                cyc.push(x);
                x = self.apply(x);
            }
            out.push(cyc);
        }
        out
    }

    /// Multiplicative order.
    pub fn order(&self) -> u64 {
        self.cycles()
            .iter()
            .fold(1u64, |acc, c| num_integer::lcm(acc, c.len() as u64))
    }

    /// Lengths of the nontrivial cycles, descending.
    pub fn cycle_type(&self) -> Vec<usize> {
        let mut t: Vec<usize> = self.cycles().iter().map(Vec::len).collect();
        t.sort_unstable_by(|a, b| b.cmp(a));
        t
    }

    /// Maps the image array through a point relabeling `map[old] = new`
    /// restricted to `points`.
    pub(crate) fn restricted(&self, points: &[usize], index_of: &[Option<u32>]) -> Option<Permutation> {
        let mut images = Vec::with_capacity(points.len());
        for &p in points {
            images.push(index_of[self.apply(p)]?);
        }
        Some(Permutation { images })
    }

    /// 1-based cycle notation; the identity prints as `()`.
    pub fn to_cycle_string(&self) -> String {
        self.to_string()
    }
}

impl fmt::Display for Permutation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let cycles = self.cycles();
        if cycles.is_empty() {
            return write!(f, "()");
        }
        for c in cycles {
            write!(f, "(")?;
            for (i, x) in c.iter().enumerate() {
                if i > 0 {
                    write!(f, ",")?;
                }
                write!(f, "{}", x + 1)?;
            }
            write!(f, ")")?;
        }
        Ok(())
    }
}

impl fmt::Debug for Permutation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Permutation[{}]{}", self.degree(), self)
    }
}

/// Parses 1-based disjoint cycle notation. Whitespace is ignored; `()` and
/// the empty string are the identity.
pub fn parse_cycles(text: &str, degree: usize) -> Result<Permutation, PermError> {
    let bytes = text.as_bytes();
    let mut cycles: Vec<Vec<usize>> = Vec::new();
    let mut i = 0;
    let skip_ws = |i: &mut usize| {
        while *i < bytes.len() && bytes[*i].is_ascii_whitespace() {
            *i += 1;
        }
    };
    loop {
        skip_ws(&mut i);
        if i == bytes.len() {
            break;
        }
        if bytes[i] != b'(' {
            return Err(PermError::Malformed(i));
        }
        i += 1;
        let mut cyc = Vec::new();
        loop {
            skip_ws(&mut i);
            if i < bytes.len() && bytes[i] == b')' && cyc.is_empty() {
                i += 1;
                break;
            }
            let start = i;
            while i < bytes.len() && bytes[i].is_ascii_digit() {
                i += 1;
            }
            if start == i {
                return Err(PermError::Malformed(i));
            }
            let v: usize = text[start..i].parse().map_err(|_| PermError::Malformed(start))?;
            if v == 0 {
                return Err(PermError::Malformed(start));
            }
            if v > degree {
                return Err(PermError::PointOutOfRange { point: v, degree });
            }
            cyc.push(v - 1);
            skip_ws(&mut i);
            match bytes.get(i) {
                Some(b',') => i += 1,
                Some(b')') => {
                    i += 1;
                    break;
                }
                _ => return Err(PermError::Malformed(i)),
            }
        }
        if !cyc.is_empty() {
            cycles.push(cyc);
        }
    }
    Permutation::from_cycles(degree, &cycles)
}

/// Parses a `;`-separated list of permutations in cycle notation.
pub fn parse_generators(text: &str, degree: usize) -> Result<Vec<Permutation>, PermError> {
    text.split(';')
        .filter(|s| !s.trim().is_empty())
        .map(|s| parse_cycles(s, degree))
        .collect()
}

/// Inverse of [`parse_generators`].
pub fn format_generators(gens: &[Permutation]) -> String {
    gens.iter().map(|g| g.to_string()).collect::<Vec<_>>().join(";")
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parse_and_print() {
        let p = parse_cycles("(1,2,3)(4,5)(6,7,8)", 10).unwrap();
        assert_eq!(p.cycle_type(), vec![3, 3, 2]);
        assert_eq!(p.order(), 6);
        assert_eq!(p.to_string(), "(1,2,3)(4,5)(6,7,8)");
        assert!(parse_cycles("()", 4).unwrap().is_identity());
        assert!(parse_cycles("", 4).unwrap().is_identity());
        let t = parse_cycles("(7,8)", 10).unwrap();
        assert_eq!(t.cycles(), vec![vec![6, 7]]);
        assert_eq!(parse_cycles(" ( 2 , 1 ) ", 2).unwrap().to_string(), "(1,2)");
    }

    #[test]
    fn parse_errors() {
        assert_eq!(parse_cycles("(1,2)(2,3)", 4), Err(PermError::RepeatedPoint(2)));
        assert_eq!(
            parse_cycles("(1,11)", 10),
            Err(PermError::PointOutOfRange { point: 11, degree: 10 })
        );
        assert!(matches!(parse_cycles("(1,2", 4), Err(PermError::Malformed(_))));
        assert!(matches!(parse_cycles("1,2)", 4), Err(PermError::Malformed(_))));
        assert!(matches!(parse_cycles("(0,1)", 4), Err(PermError::Malformed(_))));
        assert!(matches!(parse_cycles("(1,,2)", 4), Err(PermError::Malformed(_))));
    }

    #[test]
    fn composition_and_inverse() {
        let a = parse_cycles("(1,2,3)", 3).unwrap();
        let b = parse_cycles("(1,2)", 3).unwrap();
        // a then b: 1 -> 2 -> 1, 2 -> 3 -> 3, 3 -> 1 -> 2
        assert_eq!(a.then(&b).to_string(), "(2,3)");
        assert!(a.then(&a.inverse()).is_identity());
        assert_eq!(Permutation::from_images(vec![0, 0]), Err(PermError::NotBijection));
    }

    #[test]
    fn generator_lists_round_trip() {
        let text = "(1,2,3)(4,5)(6,7,8);(1,8)(2,7)(3,6)(4,9)(5,10);(7,8)";
        let gens = parse_generators(text, 10).unwrap();
        assert_eq!(gens.len(), 3);
        assert_eq!(format_generators(&gens), text);
    }
}
