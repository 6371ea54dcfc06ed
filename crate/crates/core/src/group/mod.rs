//! The fundamental group of `C(K₄)` in its two presentations, its action on
//! the free group `F₃` of the complement, and its quotient onto `S₄`.
//!
//! Words are checked in two quotients: `Aut(F₃)` through `ψ`, whose kernel
//! is the central `⟨τ⟩` of order two, and `S₄`. Multiplication of group
//! words is read so that `ψ(uv) = ψ(u)∘ψ(v)`.

pub mod free;

use alloc::collections::BTreeSet;
use alloc::format;
use alloc::string::{String, ToString};
use alloc::vec::Vec;
use core::fmt;
use core::str::FromStr;

use crate::error::{Error, Result};
pub use free::{FreeAutomorphism, FreeWord, Letter};
use free::{invert_letters, parse_tokens, reduce_letters, write_letters};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Alphabet {
    /// `y₁, y₂, y₃`.
    Y,
    /// `X, R, S`.
    Xrs,
}

impl Alphabet {
    fn name(self, g: u8) -> String {
        match self {
            Alphabet::Y => format!("y{}", g + 1),
            Alphabet::Xrs => ["X", "R", "S"][g as usize].to_string(),
        }
    }
}

/// A freely reduced word over one of the two generating sets.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct GroupWord {
    alphabet: Alphabet,
    letters: Vec<Letter>,
}

impl GroupWord {
    pub fn identity(alphabet: Alphabet) -> Self {
        GroupWord { alphabet, letters: Vec::new() }
    }

    pub fn new(alphabet: Alphabet, letters: impl IntoIterator<Item = Letter>) -> Self {
        GroupWord { alphabet, letters: reduce_letters(letters) }
    }

    /// `y_i` (1-based).
    pub fn y(i: usize) -> Self {
        assert!((1..=3).contains(&i), "generator y{i} out of range");
        GroupWord::new(Alphabet::Y, [((i - 1) as u8, 1)])
    }

    pub fn x() -> Self {
        GroupWord::new(Alphabet::Xrs, [(0, 1)])
    }

    pub fn r() -> Self {
        GroupWord::new(Alphabet::Xrs, [(1, 1)])
    }

    pub fn s() -> Self {
        GroupWord::new(Alphabet::Xrs, [(2, 1)])
    }

    pub fn alphabet(&self) -> Alphabet {
        self.alphabet
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

    /// Panics if the alphabets differ.
    pub fn mul(&self, other: &GroupWord) -> GroupWord {
        assert_eq!(self.alphabet, other.alphabet, "mixed alphabets");
        GroupWord::new(self.alphabet, self.letters.iter().chain(&other.letters).copied())
    }

    pub fn inverse(&self) -> GroupWord {
        GroupWord { alphabet: self.alphabet, letters: invert_letters(&self.letters) }
    }

    pub fn pow(&self, k: i32) -> GroupWord {
        let base = if k < 0 { self.inverse() } else { self.clone() };
        (0..k.unsigned_abs()).fold(GroupWord::identity(self.alphabet), |acc, _| acc.mul(&base))
    }

    /// Exponent sum of each generator: the image in the abelianization `Z³`.
    pub fn exponent_sums(&self) -> [i64; 3] {
        let mut out = [0; 3];
        for &(g, e) in &self.letters {
            out[g as usize] += e as i64;
        }
        out
    }
}

impl fmt::Display for GroupWord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write_letters(f, &self.letters, |g| self.alphabet.name(g))
    }
}

impl FromStr for GroupWord {
    type Err = Error;

    /// `"y1 y2^-1"` or `"X R^-1 S^3"`; a word may not mix the two sets.
    fn from_str(s: &str) -> Result<Self> {
        let has_y = s.contains('y');
        let has_xrs = s.contains(['X', 'R', 'S']);
        if has_y && has_xrs {
            return Err(Error::Parse(s.to_string()));
        }
        let alphabet = if has_xrs { Alphabet::Xrs } else { Alphabet::Y };
        let letters = parse_tokens(s, |b| match (alphabet, b) {
            (Alphabet::Y, "y1") | (Alphabet::Xrs, "X") => Some(0),
            (Alphabet::Y, "y2") | (Alphabet::Xrs, "R") => Some(1),
            (Alphabet::Y, "y3") | (Alphabet::Xrs, "S") => Some(2),
            _ => None,
        })?;
        Ok(GroupWord::new(alphabet, letters))
    }
}

fn yw(s: &str) -> GroupWord {
    s.parse().expect("static word")
}

/// Generator images under the change of presentation.
fn xrs_in_y() -> [GroupWord; 3] {
    [yw("y3^-1 y1 y3^-1"), yw("y2^-1 y3 y1^-1 y2"), yw("y3^-1 y2")]
}

fn y_in_xrs() -> [GroupWord; 3] {
    [yw("R^-1 X^-1 S R^-1 S^-1 R"), yw("R X^-1 S R^-1 S^-1 R^-1"), yw("X^-1 S R^-1 S^-1")]
}

/// Rewrites a word in the other generating set by substitution.
pub fn translate(w: &GroupWord) -> GroupWord {
    let (table, target) = match w.alphabet {
        Alphabet::Xrs => (xrs_in_y(), Alphabet::Y),
        Alphabet::Y => (y_in_xrs(), Alphabet::Xrs),
    };
    let mut out = Vec::new();
    for &(g, e) in &w.letters {
        let img = &table[g as usize];
        if e > 0 {
            out.extend_from_slice(&img.letters);
        } else {
            out.extend(invert_letters(&img.letters));
        }
    }
    GroupWord::new(target, out)
}

fn as_y(w: &GroupWord) -> GroupWord {
    match w.alphabet {
        Alphabet::Y => w.clone(),
        Alphabet::Xrs => translate(w),
    }
}

/// `ψ(y_i^{±1})`: `y_i` sends `a_j ↦ a_i a_j⁻¹` for `j ≠ i` and fixes
/// `a_i`; its inverse is `ψ(y_i)∘conj(a_i⁻¹)` since `ψ(y_i²) = conj(a_i)`.
pub fn psi_generator(i: usize, sign: i8) -> FreeAutomorphism {
    let ai = FreeWord::generator(i);
    let images: [FreeWord; 3] = core::array::from_fn(|j| {
        if j + 1 == i {
            ai.clone()
        } else {
            ai.mul(&FreeWord::generator(j + 1).inverse())
        }
    });
    // ψ(y_i)⁻¹(a_j) = ψ(y_i)(a_i⁻¹ a_j a_i) = a_i⁻¹ ψ(y_i)(a_j) a_i
    let inverse = images.clone().map(|w| w.conjugate_by(&ai.inverse()));
    let half = FreeAutomorphism::with_inverse(images, inverse).expect("generator images are invertible");
    if sign < 0 {
        half.inverse()
    } else {
        half
    }
}

/// `y_i^{±1} · w`.
pub fn act_generator(i: usize, sign: i8, w: &FreeWord) -> FreeWord {
    psi_generator(i, sign).apply(w)
}

/// `ψ(w)`; `{X, R, S}` words are translated first.
pub fn aut_of_word(w: &GroupWord) -> FreeAutomorphism {
    as_y(w)
        .letters
        .iter()
        .fold(FreeAutomorphism::identity(), |acc, &(g, e)| acc.compose(&psi_generator(g as usize + 1, e)))
}

/// `w · v`.
pub fn act_word(w: &GroupWord, v: &FreeWord) -> FreeWord {
    aut_of_word(w).apply(v)
}

/// A permutation of the vertex labels `{0, 1, 2, 3}`, `0` the center.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Permutation4(pub [u8; 4]);

impl Permutation4 {
    pub fn identity() -> Self {
        Permutation4([0, 1, 2, 3])
    }

    pub fn transposition(a: u8, b: u8) -> Self {
        let mut p = Permutation4::identity();
        p.0.swap(a as usize, b as usize);
        p
    }

    /// `self ∘ other`.
    pub fn compose(&self, other: &Permutation4) -> Permutation4 {
        Permutation4(other.0.map(|k| self.0[k as usize]))
    }

    pub fn inverse(&self) -> Permutation4 {
        let mut out = [0; 4];
        for (k, &v) in self.0.iter().enumerate() {
            out[v as usize] = k as u8;
        }
        Permutation4(out)
    }

    pub fn is_identity(&self) -> bool {
        *self == Permutation4::identity()
    }
}

impl fmt::Display for Permutation4 {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let [a, b, c, d] = self.0;
        write!(f, "[{a} {b} {c} {d}]")
    }
}

/// Image in `S₄`: `y_i ↦ (0 i)`.
pub fn perm_image(w: &GroupWord) -> Permutation4 {
    as_y(w).letters.iter().fold(Permutation4::identity(), |acc, &(g, e)| {
        let t = Permutation4::transposition(0, g + 1);
        acc.compose(&if e > 0 { t } else { t.inverse() })
    })
}

/// Order of the subgroup of `S₄` generated by the images of `y₁, y₂, y₃`.
pub fn image_subgroup_order() -> usize {
    let gens: Vec<Permutation4> = (1..=3).map(|i| perm_image(&GroupWord::y(i))).collect();
    let mut seen = BTreeSet::new();
    let mut frontier = alloc::vec![Permutation4::identity()];
    seen.insert(Permutation4::identity());
    while let Some(p) = frontier.pop() {
        for g in &gens {
            let q = p.compose(g);
            if seen.insert(q) {
                frontier.push(q);
            }
        }
    }
    seen.len()
}

/// `τ = (y_i y_j⁻¹)³`.
pub fn tau(i: usize, j: usize) -> GroupWord {
    GroupWord::y(i).mul(&GroupWord::y(j).inverse()).pow(3)
}

/// One checked identity.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Check {
    pub name: String,
    pub passed: bool,
    pub detail: String,
}

impl Check {
    fn new(name: String, passed: bool, detail: String) -> Self {
        Check { name, passed, detail }
    }
}

/// Checks `lhs = rhs` in `Aut(F₃)` and in `S₄`.
pub fn check_equal(name: String, lhs: &GroupWord, rhs: &GroupWord) -> Check {
    let aut = aut_of_word(lhs) == aut_of_word(rhs);
    let perm = perm_image(lhs) == perm_image(rhs);
    Check::new(name, aut && perm, format!("{lhs} = {rhs}: Aut(F3) {}, S4 {}", ok(aut), ok(perm)))
}

fn ok(b: bool) -> &'static str {
    if b {
        "ok"
    } else {
        "FAIL"
    }
}

fn pairs() -> impl Iterator<Item = (usize, usize)> {
    (1..=3).flat_map(|i| (1..=3).filter(move |&j| j != i).map(move |j| (i, j)))
}

/// Every instance of the three families of relations in the `y` presentation.
pub fn verify_y_relations() -> Vec<Check> {
    let y = GroupWord::y;
    let mut out = Vec::new();
    for (j, i) in pairs() {
        for (k, l) in pairs() {
            out.push(check_equal(format!("(i) j={j} i={i} k={k} l={l}"), &tau(j, i), &tau(k, l)));
        }
    }
    for (i, j) in pairs() {
        let yj_inv = y(j).inverse();
        let lhs = y(i).mul(&yj_inv).mul(&y(i));
        let rhs = yj_inv.mul(&y(i)).mul(&yj_inv);
        out.push(check_equal(format!("(ii) i={i} j={j}"), &lhs, &rhs));
    }
    for (i, j) in pairs() {
        let k = 6 - i - j;
        let mid = y(j).inverse().mul(&y(i)).mul(&y(j).inverse());
        let lhs = y(k).mul(&mid).mul(&y(k));
        out.push(check_equal(format!("(iii) i={i} j={j} k={k}"), &lhs, &mid));
    }
    out
}

/// `X² = R³ = S³ = (SR)³` and `XR = R⁻¹X`, evaluated through the translation.
pub fn verify_xrs_relations() -> Vec<Check> {
    let (x, r, s) = (GroupWord::x(), GroupWord::r(), GroupWord::s());
    let sr3 = s.mul(&r).pow(3);
    alloc::vec![
        check_equal("X^2 = R^3".into(), &x.pow(2), &r.pow(3)),
        check_equal("R^3 = S^3".into(), &r.pow(3), &s.pow(3)),
        check_equal("S^3 = (SR)^3".into(), &s.pow(3), &sr3),
        check_equal("XR = R^-1 X".into(), &x.mul(&r), &r.inverse().mul(&x)),
    ]
}

/// The generator identities in both directions and round trips of each
/// generator through the other presentation.
pub fn verify_translations() -> Vec<Check> {
    let mut out = Vec::new();
    let names = ["X", "R", "S"];
    for (g, img) in xrs_in_y().iter().enumerate() {
        let w = GroupWord::new(Alphabet::Xrs, [(g as u8, 1)]);
        out.push(check_equal(format!("{} = {img}", names[g]), &w, img));
    }
    for (g, img) in y_in_xrs().iter().enumerate() {
        let w = GroupWord::y(g + 1);
        out.push(check_equal(format!("y{} = {img}", g + 1), &w, img));
        let back = translate(&translate(&w));
        out.push(check_equal(format!("y{} round trip", g + 1), &w, &back));
    }
    for g in 0..3u8 {
        let w = GroupWord::new(Alphabet::Xrs, [(g, 1)]);
        let back = translate(&translate(&w));
        out.push(check_equal(format!("{} round trip", names[g as usize]), &w, &back));
    }
    out
}

/// The kernel of the map to `S₄` and its image in `Aut(F₃)`.
pub fn pure_subgroup_data() -> Vec<Check> {
    let mut out = Vec::new();
    for i in 1..=3 {
        let sq = GroupWord::y(i).pow(2);
        let inner = aut_of_word(&sq) == FreeAutomorphism::conjugation(&FreeWord::generator(i));
        out.push(Check::new(format!("psi(y{i}^2) = conj(a{i})"), inner, sq.to_string()));
        let p = perm_image(&sq).is_identity();
        out.push(Check::new(format!("y{i}^2 -> id in S4"), p, perm_image(&sq).to_string()));
    }
    for (i, j) in pairs() {
        let t = tau(i, j);
        let a = aut_of_word(&t).is_identity();
        let p = perm_image(&t).is_identity();
        out.push(Check::new(format!("tau({i},{j}) in ker psi and ker S4"), a && p, t.to_string()));
        let t2 = t.pow(2);
        let trivial = aut_of_word(&t2).is_identity() && perm_image(&t2).is_identity();
        out.push(Check::new(format!("tau({i},{j})^2 trivial"), trivial, t2.to_string()));
        // y_i y_j⁻¹ y_i squares to τ
        let root = GroupWord::y(i).mul(&GroupWord::y(j).inverse()).mul(&GroupWord::y(i));
        let sq = root.pow(2);
        let a = aut_of_word(&sq).is_identity() && perm_image(&sq).is_identity();
        out.push(Check::new(format!("(y{i} y{j}^-1 y{i})^2 acts as tau"), a, sq.to_string()));
    }
    out
}

/// Exponent counts of the relators of families (i) and (ii) restricted to
/// two generators, which show neither family follows from the other.
pub fn abelianization_checks() -> Vec<Check> {
    let mut out = Vec::new();
    for (i, j) in pairs().filter(|(i, j)| i < j) {
        let r1 = tau(i, j).mul(&tau(j, i).inverse());
        let yj_inv = GroupWord::y(j).inverse();
        let lhs = GroupWord::y(i).mul(&yj_inv).mul(&GroupWord::y(i));
        let r2 = lhs.mul(&yj_inv.mul(&GroupWord::y(i)).mul(&yj_inv).inverse());
        let (e1, e2) = (r1.exponent_sums(), r2.exponent_sums());
        let ok1 = (e1[i - 1], e1[j - 1]) == (6, -6);
        let ok2 = (e2[i - 1], e2[j - 1]) == (1, 1);
        out.push(Check::new(format!("(i) relator exponents on y{i},y{j}"), ok1, format!("{e1:?}")));
        out.push(Check::new(format!("(ii) relator exponents on y{i},y{j}"), ok2, format!("{e2:?}")));
    }
    out
}

/// Everything above, plus the literal generator action and the order of the
/// image in `S₄`.
pub fn verify_all() -> Vec<Check> {
    let mut out = verify_y_relations();
    out.extend(verify_xrs_relations());
    out.extend(verify_translations());
    out.extend(pure_subgroup_data());
    out.extend(abelianization_checks());
    let a2 = act_word(&GroupWord::y(1), &FreeWord::generator(2));
    let expect: FreeWord = "a1 a2^-1".parse().expect("static word");
    out.push(Check::new("y1 . a2 = a1 a2^-1".into(), a2 == expect, a2.to_string()));
    let a1 = act_word(&GroupWord::y(1), &FreeWord::generator(1));
    out.push(Check::new("y1 . a1 = a1".into(), a1 == FreeWord::generator(1), a1.to_string()));
    let order = image_subgroup_order();
    out.push(Check::new("image in S4 has order 24".into(), order == 24, format!("{order}")));
    out
}
