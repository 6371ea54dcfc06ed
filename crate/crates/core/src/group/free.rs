//! Reduced words in the free group `F₃ = ⟨a₁, a₂, a₃⟩` and automorphisms of
//! `F₃` given by generator images.

use alloc::string::{String, ToString};
use alloc::vec::Vec;
use core::fmt;
use core::str::FromStr;

use crate::error::{Error, Result};

/// A letter: generator index `0..3` and exponent `±1`.
pub type Letter = (u8, i8);

/// Cancels adjacent inverse pairs with a stack; the result is the unique
/// reduced representative.
pub(crate) fn reduce_letters(letters: impl IntoIterator<Item = Letter>) -> Vec<Letter> {
    let mut out: Vec<Letter> = Vec::new();
    for l in letters {
        match out.last() {
            Some(&(g, e)) if g == l.0 && e == -l.1 => {
                out.pop();
            }
            _ => out.push(l),
        }
    }
    out
}

pub(crate) fn invert_letters(letters: &[Letter]) -> Vec<Letter> {
    letters.iter().rev().map(|&(g, e)| (g, -e)).collect()
}

/// Parses whitespace separated tokens `<name><index>` with an optional
/// `^k` exponent. `1` or the empty string is the identity.
pub(crate) fn parse_tokens(s: &str, name: impl Fn(&str) -> Option<u8>) -> Result<Vec<Letter>> {
    let mut letters = Vec::new();
    for tok in s.split_whitespace() {
        if tok == "1" {
            continue;
        }
        let (base, exp) = match tok.split_once('^') {
            Some((b, e)) => (b, e.parse::<i32>().map_err(|_| Error::Parse(tok.to_string()))?),
            None => (tok, 1),
        };
        let g = name(base).ok_or_else(|| Error::Parse(tok.to_string()))?;
        let sign = if exp < 0 { -1 } else { 1 };
        for _ in 0..exp.unsigned_abs() {
            letters.push((g, sign));
        }
    }
    Ok(letters)
}

pub(crate) fn write_letters(f: &mut fmt::Formatter<'_>, letters: &[Letter], name: impl Fn(u8) -> String) -> fmt::Result {
    if letters.is_empty() {
        return write!(f, "1");
    }
    for (k, &(g, e)) in letters.iter().enumerate() {
        if k > 0 {
            write!(f, " ")?;
        }
        write!(f, "{}", name(g))?;
        if e < 0 {
            write!(f, "^-1")?;
        }
    }
    Ok(())
}

#[derive(Debug, Clone, PartialEq, Eq, Hash, Default)]
pub struct FreeWord {
    letters: Vec<Letter>,
}

impl FreeWord {
    pub fn identity() -> Self {
        FreeWord::default()
    }

    /// `a_i`, 1-based.
    pub fn generator(i: usize) -> Self {
        assert!((1..=3).contains(&i), "generator a{i} out of range");
        FreeWord { letters: alloc::vec![((i - 1) as u8, 1)] }
    }

    pub fn from_letters(letters: impl IntoIterator<Item = Letter>) -> Self {
        FreeWord { letters: reduce_letters(letters) }
    }

    pub fn letters(&self) -> &[Letter] {
        &self.letters
    }

    pub fn len(&self) -> usize {
        self.letters.len()
    }

    pub fn is_empty(&self) -> bool {
        self.letters.is_empty()
    }

    pub fn is_identity(&self) -> bool {
        self.is_empty()
    }

    pub fn mul(&self, other: &FreeWord) -> FreeWord {
        FreeWord::from_letters(self.letters.iter().chain(&other.letters).copied())
    }

    pub fn inverse(&self) -> FreeWord {
        FreeWord { letters: invert_letters(&self.letters) }
    }

    pub fn pow(&self, k: i32) -> FreeWord {
        let base = if k < 0 { self.inverse() } else { self.clone() };
        (0..k.unsigned_abs()).fold(FreeWord::identity(), |acc, _| acc.mul(&base))
    }

    /// `c·self·c⁻¹`.
    pub fn conjugate_by(&self, c: &FreeWord) -> FreeWord {
        c.mul(self).mul(&c.inverse())
    }
}

impl fmt::Display for FreeWord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write_letters(f, &self.letters, |g| alloc::format!("a{}", g + 1))
    }
}

impl FromStr for FreeWord {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let letters = parse_tokens(s, |b| match b {
            "a1" => Some(0),
            "a2" => Some(1),
            "a3" => Some(2),
            _ => None,
        })?;
        Ok(FreeWord::from_letters(letters))
    }
}

/// An automorphism of `F₃`, stored with the images of the generators under
/// it and under its inverse.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct FreeAutomorphism {
    images: [FreeWord; 3],
    inverse_images: [FreeWord; 3],
}

impl FreeAutomorphism {
    pub fn identity() -> Self {
        let g = [FreeWord::generator(1), FreeWord::generator(2), FreeWord::generator(3)];
        FreeAutomorphism { images: g.clone(), inverse_images: g }
    }

    /// Builds an automorphism from images and claimed inverse images; `None`
    /// unless the two compose to the identity both ways.
    pub fn with_inverse(images: [FreeWord; 3], inverse_images: [FreeWord; 3]) -> Option<Self> {
        let a = FreeAutomorphism { images, inverse_images };
        let id = FreeAutomorphism::identity();
        let fwd = a.inverse_images.clone().map(|w| a.apply(&w));
        let back = a.images.clone().map(|w| a.inverse().apply(&w));
        (fwd == id.images && back == id.images).then_some(a)
    }

    /// Inner automorphism `x ↦ c·x·c⁻¹`.
    pub fn conjugation(c: &FreeWord) -> Self {
        let ci = c.inverse();
        FreeAutomorphism {
            images: core::array::from_fn(|i| FreeWord::generator(i + 1).conjugate_by(c)),
            inverse_images: core::array::from_fn(|i| FreeWord::generator(i + 1).conjugate_by(&ci)),
        }
    }

    pub fn images(&self) -> &[FreeWord; 3] {
        &self.images
    }

    pub fn apply(&self, w: &FreeWord) -> FreeWord {
        let mut out = Vec::new();
        for &(g, e) in w.letters() {
            let img = &self.images[g as usize];
            if e > 0 {
                out.extend_from_slice(img.letters());
            } else {
                out.extend(invert_letters(img.letters()));
            }
        }
        FreeWord::from_letters(out)
    }

    /// `self ∘ other`: apply `other` first.
    pub fn compose(&self, other: &FreeAutomorphism) -> FreeAutomorphism {
        let inv_self = self.inverse();
        let inv_other = other.inverse();
        FreeAutomorphism {
            images: other.images.clone().map(|w| self.apply(&w)),
            inverse_images: inv_self.images.clone().map(|w| inv_other.apply(&w)),
        }
    }

    pub fn inverse(&self) -> FreeAutomorphism {
        FreeAutomorphism { images: self.inverse_images.clone(), inverse_images: self.images.clone() }
    }

    pub fn is_identity(&self) -> bool {
        *self == FreeAutomorphism::identity()
    }
}

impl fmt::Display for FreeAutomorphism {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (i, w) in self.images.iter().enumerate() {
            if i > 0 {
                write!(f, ", ")?;
            }
            write!(f, "a{} -> {}", i + 1, w)?;
        }
        Ok(())
    }
}
