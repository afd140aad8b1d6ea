//! Permutations of `{1..n}` and the cycle-notation text format.
//!
//! Composition is left-to-right everywhere in this crate: `a.then(&b)` (and
//! `a.compose(&b)`) applies `a` first and `b` second, so the image of a point
//! `i` is `b(a(i))`. Products written in cycle notation, such as
//! `"(1 2)(2 3)"`, are read with the same convention.

use std::fmt;
use std::str::FromStr;

use crate::error::{Error, Result};

/// A bijection on the points `1..=degree`, stored zero-based.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Permutation {
    images: Box<[u16]>,
}

impl Permutation {
    pub fn identity(degree: usize) -> Self {
        Permutation {
            images: (0..degree as u16).collect(),
        }
    }

    /// Builds a permutation from zero-based images, checking bijectivity.
    pub fn from_images(images: Vec<usize>) -> Result<Self> {
        let n = images.len();
        if n == 0 || n > u16::MAX as usize {
            return Err(Error::InvalidPermutation(format!("degree {n} out of range")));
        }
        let mut seen = vec![false; n];
        for &img in &images {
            if img >= n || seen[img] {
                return Err(Error::InvalidPermutation(format!(
                    "images {images:?} are not a bijection"
                )));
            }
            seen[img] = true;
        }
        Ok(Permutation {
            images: images.into_iter().map(|i| i as u16).collect(),
        })
    }

    /// Builds a permutation from one-based images, `images[i-1] = image of i`.
    pub fn from_one_based(images: &[usize]) -> Result<Self> {
        if images.contains(&0) {
            return Err(Error::InvalidPermutation("point 0 in one-based images".into()));
        }
        Self::from_images(images.iter().map(|&i| i - 1).collect())
    }

    /// Product of cycles given with one-based points, read left to right.
    pub fn from_cycles(degree: usize, cycles: &[&[usize]]) -> Result<Self> {
        let mut acc = Permutation::identity(degree);
        for cycle in cycles {
            let c = Self::single_cycle(degree, cycle)?;
            acc = acc.then(&c);
        }
        Ok(acc)
    }

    fn single_cycle(degree: usize, cycle: &[usize]) -> Result<Self> {
        let mut images: Vec<usize> = (0..degree).collect();
        let mut seen = std::collections::HashSet::new();
        for (k, &pt) in cycle.iter().enumerate() {
            if pt == 0 || pt > degree {
                return Err(Error::InvalidPermutation(format!("point {pt} outside 1..={degree}")));
            }
            if !seen.insert(pt) {
                return Err(Error::InvalidPermutation(format!("point {pt} repeated in a cycle")));
            }
            let next = cycle[(k + 1) % cycle.len()];
            images[pt - 1] = next - 1;
        }
        Self::from_images(images)
    }

    pub fn degree(&self) -> usize {
        self.images.len()
    }

    /// Zero-based image of a zero-based point.
    #[inline]
    pub fn apply(&self, point: usize) -> usize {
        self.images[point] as usize
    }

    /// One-based image of a one-based point.
    pub fn image(&self, point: usize) -> usize {
        self.apply(point - 1) + 1
    }

    pub fn images(&self) -> &[u16] {
        &self.images
    }

    /// One-based image list, as used by the text formats and cache keys.
    pub fn one_based_images(&self) -> Vec<usize> {
        self.images.iter().map(|&i| i as usize + 1).collect()
    }

    /// `self` followed by `other`, checking degrees.
    pub fn compose(&self, other: &Permutation) -> Result<Permutation> {
        if self.degree() != other.degree() {
            return Err(Error::DegreeMismatch {
                left: self.degree(),
                right: other.degree(),
            });
        }
        Ok(self.then(other))
    }

    /// `self` followed by `other`. Panics on a degree mismatch.
    #[inline]
    pub fn then(&self, other: &Permutation) -> Permutation {
        assert_eq!(self.degree(), other.degree(), "degree mismatch");
        Permutation {
            images: self.images.iter().map(|&i| other.images[i as usize]).collect(),
        }
    }

    pub fn inverse(&self) -> Permutation {
        let mut inv = vec![0u16; self.degree()];
        for (i, &img) in self.images.iter().enumerate() {
            inv[img as usize] = i as u16;
        }
        Permutation {
            images: inv.into_boxed_slice(),
        }
    }

    /// `x^self = self^-1 x self`.
    pub fn conjugate_of(&self, x: &Permutation) -> Permutation {
        self.inverse().then(x).then(self)
    }

    /// `[a, b] = a^-1 b^-1 a b`.
    pub fn commutator(a: &Permutation, b: &Permutation) -> Permutation {
        a.inverse().then(&b.inverse()).then(a).then(b)
    }

    pub fn pow(&self, mut e: u64) -> Permutation {
        let mut base = self.clone();
        let mut acc = Permutation::identity(self.degree());
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.then(&base);
            }
            base = base.then(&base);
            e >>= 1;
        }
        acc
    }

    pub fn is_identity(&self) -> bool {
        self.images.iter().enumerate().all(|(i, &v)| i == v as usize)
    }

    /// Smallest zero-based point moved by the permutation.
    pub fn first_moved(&self) -> Option<usize> {
        self.images
            .iter()
            .enumerate()
            .find(|(i, &v)| *i != v as usize)
            .map(|(i, _)| i)
    }

    pub fn order(&self) -> u64 {
        let mut seen = vec![false; self.degree()];
        let mut ord = 1u64;
        for start in 0..self.degree() {
            if seen[start] {
                continue;
            }
            let mut len = 0u64;
            let mut p = start;
            while !seen[p] {
                seen[p] = true;
                p = self.apply(p);
                len += 1;
            }
            ord = lcm(ord, len);
        }
        ord
    }

    pub fn is_even(&self) -> bool {
        let mut seen = vec![false; self.degree()];
        let mut transpositions = 0usize;
        for start in 0..self.degree() {
            if seen[start] {
                continue;
            }
            let mut len = 0usize;
            let mut p = start;
            while !seen[p] {
                seen[p] = true;
                p = self.apply(p);
                len += 1;
            }
            transpositions += len - 1;
        }
        transpositions.is_multiple_of(2)
    }

    /// Disjoint cycles with one-based points, each starting at its smallest
    /// point, fixed points omitted.
    pub fn cycles(&self) -> Vec<Vec<usize>> {
        let mut seen = vec![false; self.degree()];
        let mut out = Vec::new();
        for start in 0..self.degree() {
            if seen[start] || self.apply(start) == start {
                continue;
            }
            let mut cycle = Vec::new();
            let mut p = start;
            while !seen[p] {
                seen[p] = true;
                cycle.push(p + 1);
                p = self.apply(p);
            }
            out.push(cycle);
        }
        out
    }

    /// Parses cycle notation such as `"(1 2 3)(4 5)"`; `"()"` is the identity.
    /// Without an explicit degree the largest mentioned point is used.
    pub fn parse(text: &str, degree: Option<usize>) -> Result<Permutation> {
        let cycles = parse_cycle_text(text)?;
        let max_pt = cycles.iter().flatten().copied().max().unwrap_or(1);
        let degree = match degree {
            Some(d) if d < max_pt => {
                return Err(Error::InvalidPermutation(format!("point {max_pt} exceeds degree {d}")))
            }
            Some(d) => d,
            None => max_pt,
        };
        let refs: Vec<&[usize]> = cycles.iter().map(|c| c.as_slice()).collect();
        Permutation::from_cycles(degree, &refs)
    }
}

fn parse_cycle_text(text: &str) -> Result<Vec<Vec<usize>>> {
    let bytes = text.as_bytes();
    let mut pos = 0;
    let mut cycles = Vec::new();
    let skip_ws = |pos: &mut usize| {
        while *pos < bytes.len() && bytes[*pos].is_ascii_whitespace() {
            *pos += 1;
        }
    };
    skip_ws(&mut pos);
    if pos == bytes.len() {
        return Err(Error::Parse {
            pos,
            msg: "empty permutation text".into(),
        });
    }
    while pos < bytes.len() {
        if bytes[pos] != b'(' {
            return Err(Error::Parse {
                pos,
                msg: format!("expected `(`, found `{}`", bytes[pos] as char),
            });
        }
        pos += 1;
        let mut cycle = Vec::new();
        loop {
            skip_ws(&mut pos);
            if pos >= bytes.len() {
                return Err(Error::Parse {
                    pos,
                    msg: "unterminated cycle".into(),
                });
            }
            if bytes[pos] == b')' {
                pos += 1;
                break;
            }
            if bytes[pos] == b',' {
                pos += 1;
                continue;
            }
            let start = pos;
            while pos < bytes.len() && bytes[pos].is_ascii_digit() {
                pos += 1;
            }
            if start == pos {
                return Err(Error::Parse {
                    pos,
                    msg: format!("expected a point, found `{}`", bytes[pos] as char),
                });
            }
            let pt: usize = text[start..pos].parse().map_err(|_| Error::Parse {
                pos: start,
                msg: "point out of range".into(),
            })?;
            if pt == 0 {
                return Err(Error::Parse {
                    pos: start,
                    msg: "points are 1-based".into(),
                });
            }
            cycle.push(pt);
        }
        if !cycle.is_empty() {
            cycles.push(cycle);
        }
        skip_ws(&mut pos);
    }
    Ok(cycles)
}

impl fmt::Display for Permutation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let cycles = self.cycles();
        if cycles.is_empty() {
            return write!(f, "()");
        }
        for c in cycles {
            write!(f, "(")?;
            for (k, p) in c.iter().enumerate() {
                if k > 0 {
                    write!(f, " ")?;
                }
                write!(f, "{p}")?;
            }
            write!(f, ")")?;
        }
        Ok(())
    }
}

impl fmt::Debug for Permutation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}[{}]", self.degree())
    }
}

impl FromStr for Permutation {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Permutation::parse(s, None)
    }
}

pub(crate) fn gcd(a: u64, b: u64) -> u64 {
    if b == 0 {
        a
    } else {
        gcd(b, a % b)
    }
}

pub(crate) fn lcm(a: u64, b: u64) -> u64 {
    a / gcd(a, b) * b
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(s: &str, n: usize) -> Permutation {
        Permutation::parse(s, Some(n)).unwrap()
    }

    #[test]
    fn compose_is_left_to_right() {
        let a = p("(1 2)", 3);
        let b = p("(2 3)", 3);
        assert_eq!(a.compose(&b).unwrap(), p("(1 3 2)", 3));
    }

    #[test]
    fn identity_and_inverse_laws() {
        let x = p("(1 4 2)(3 5)", 5);
        let id = Permutation::identity(5);
        assert_eq!(id.compose(&x).unwrap(), x);
        let c = p("(1 2 3)", 3);
        assert!(c.compose(&p("(1 3 2)", 3)).unwrap().is_identity());
        assert!(x.then(&x.inverse()).is_identity());
    }

    #[test]
    fn degree_mismatch_is_an_error() {
        let err = p("(1 2)", 2).compose(&p("(1 2)", 3)).unwrap_err();
        assert_eq!(err, Error::DegreeMismatch { left: 2, right: 3 });
    }

    #[test]
    fn cycle_text_round_trip_and_whitespace() {
        let x = p("  ( 1  2 3 )( 4 5 ) ", 6);
        assert_eq!(x.to_string(), "(1 2 3)(4 5)");
        assert_eq!(p("()", 4).to_string(), "()");
        assert_eq!(Permutation::parse("()", None).unwrap().degree(), 1);
        // non-disjoint cycles compose left to right
        assert_eq!(p("(1 2)(2 3)", 3), p("(1 3 2)", 3));
    }

    #[test]
    fn malformed_text_is_rejected() {
        assert!(matches!(Permutation::parse("(1 2", None), Err(Error::Parse { .. })));
        assert!(matches!(Permutation::parse("1 2)", None), Err(Error::Parse { .. })));
        assert!(matches!(Permutation::parse("(0 1)", None), Err(Error::Parse { .. })));
        assert!(Permutation::parse("(1 1)", None).is_err());
        assert!(Permutation::parse("(1 9)", Some(4)).is_err());
    }

    #[test]
    fn order_and_parity() {
        let x = p("(1 2 3)(4 5)", 5);
        assert_eq!(x.order(), 6);
        assert!(!x.is_even());
        assert!(p("(1 2 3)", 5).is_even());
        assert_eq!(x.pow(6), Permutation::identity(5));
    }
}
