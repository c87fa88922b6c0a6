//! Permutations on `0..degree`, written and parsed in 1-based cycle notation.
//!
//! Products act on the right: `i^(a*b) = (i^a)^b`.

use std::fmt;

use super::GroupError;

#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Debug)]
pub struct Perm(Box<[u16]>);

impl Perm {
    pub fn identity(degree: usize) -> Self {
        Self((0..degree as u16).collect())
    }

    /// Builds a permutation from its image list; rejects non-bijections.
    pub fn from_images(images: Vec<u16>) -> Result<Self, GroupError> {
        let mut seen = vec![false; images.len()];
        for &i in &images {
            let slot = seen
                .get_mut(i as usize)
                .ok_or_else(|| GroupError::parse(format!("{images:?}"), "image out of range"))?;
            if *slot {
                return Err(GroupError::parse(format!("{images:?}"), "not a bijection"));
            }
            *slot = true;
        }
        Ok(Self(images.into_boxed_slice()))
    }

    pub fn cycle(degree: usize, points: &[usize]) -> Self {
        let mut images: Vec<u16> = (0..degree as u16).collect();
        for w in 0..points.len() {
            images[points[w]] = points[(w + 1) % points.len()] as u16;
        }
        Self(images.into_boxed_slice())
    }

    pub fn degree(&self) -> usize {
        self.0.len()
    }

    pub fn image(&self, point: usize) -> usize {
        self.0[point] as usize
    }

    /// `self` followed by `other`.
    pub fn then(&self, other: &Perm) -> Perm {
        Perm(self.0.iter().map(|&i| other.0[i as usize]).collect())
    }

    pub fn inverse(&self) -> Perm {
        let mut out = vec![0u16; self.0.len()];
        for (i, &j) in self.0.iter().enumerate() {
            out[j as usize] = i as u16;
        }
        Perm(out.into_boxed_slice())
    }

    pub fn is_even(&self) -> bool {
        let mut seen = vec![false; self.degree()];
        let mut transpositions = 0;
        for start in 0..self.degree() {
            if seen[start] {
                continue;
            }
            let mut len = 0;
            let mut p = start;
            while !seen[p] {
                seen[p] = true;
                p = self.image(p);
                len += 1;
            }
            transpositions += len - 1;
        }
        transpositions % 2 == 0
    }

    /// Parses a product of cycles such as `(1 2 3)(4 5)`; points are 1-based
    /// and may be separated by spaces or commas. `()` is the identity.
    pub fn parse_cycles(text: &str, degree: usize) -> Result<Perm, GroupError> {
        let mut perm = Perm::identity(degree);
        let mut rest = text.trim();
        while !rest.is_empty() {
            let open = rest
                .strip_prefix('(')
                .ok_or_else(|| GroupError::parse(text, "expected '('"))?;
            let close = open
                .find(')')
                .ok_or_else(|| GroupError::parse(text, "unclosed cycle"))?;
            let points = open[..close]
                .split(|c: char| c == ',' || c.is_whitespace())
                .filter(|s| !s.is_empty())
                .map(|s| match s.parse::<usize>() {
                    Ok(p) if p >= 1 && p <= degree => Ok(p - 1),
                    _ => Err(GroupError::parse(text, format!("bad point '{s}'"))),
                })
                .collect::<Result<Vec<_>, _>>()?;
            let mut dedup = points.clone();
            dedup.sort_unstable();
            dedup.dedup();
            if dedup.len() != points.len() {
                return Err(GroupError::parse(text, "repeated point in cycle"));
            }
            if !points.is_empty() {
                perm = perm.then(&Perm::cycle(degree, &points));
            }
            rest = open[close + 1..].trim_start();
        }
        Ok(perm)
    }

    /// Largest point mentioned in a cycle string (1-based), used to size
    /// permutations read from files.
    pub fn max_point(text: &str) -> usize {
        text.split(|c: char| !c.is_ascii_digit())
            .filter_map(|s| s.parse::<usize>().ok())
            .max()
            .unwrap_or(0)
    }
}

impl fmt::Display for Perm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut seen = vec![false; self.degree()];
        let mut any = false;
        for start in 0..self.degree() {
            if seen[start] || self.image(start) == start {
                continue;
            }
            any = true;
            write!(f, "({}", start + 1)?;
            seen[start] = true;
            let mut p = self.image(start);
            while p != start {
                write!(f, " {}", p + 1)?;
                seen[p] = true;
                p = self.image(p);
            }
            write!(f, ")")?;
        }
        if !any {
            write!(f, "()")?;
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parse_and_display_round_trip() {
        let p = Perm::parse_cycles("(1 2 3)(4 5)", 5).unwrap();
        assert_eq!(p.to_string(), "(1 2 3)(4 5)");
        assert_eq!(Perm::parse_cycles("()", 3).unwrap(), Perm::identity(3));
        assert_eq!(Perm::parse_cycles("(3,1)", 3).unwrap().to_string(), "(1 3)");
    }

    #[test]
    fn right_action_composition() {
        let a = Perm::parse_cycles("(1 2)", 3).unwrap();
        let b = Perm::parse_cycles("(2 3)", 3).unwrap();
        // 1 -> 2 -> 3, 3 -> 3 -> 2, 2 -> 1 -> 1
        assert_eq!(a.then(&b).to_string(), "(1 3 2)");
        assert_eq!(a.then(&a), Perm::identity(3));
    }

    #[test]
    fn rejects_malformed_cycles() {
        assert!(Perm::parse_cycles("(1 2", 3).is_err());
        assert!(Perm::parse_cycles("(1 4)", 3).is_err());
        assert!(Perm::parse_cycles("(1 1)", 3).is_err());
        assert!(Perm::parse_cycles("1 2", 3).is_err());
    }

    #[test]
    fn parity() {
        assert!(Perm::parse_cycles("(1 2 3)", 3).unwrap().is_even());
        assert!(Perm::parse_cycles("(1 2)(3 4 5 6)", 6).unwrap().is_even());
        assert!(!Perm::parse_cycles("(1 2)", 2).unwrap().is_even());
    }
}
