//! Reduced words in a free group of finite rank.
//!
//! Every [`Word`] is freely reduced at all times; the constructors reduce their
//! input. Letters are ordered by generator index, with the positive letter
//! before its inverse, and this order fixes the canonical rotation used for
//! conjugacy classes.

use std::fmt;

use crate::error::{Error, Result};

/// A generator of the ambient basis or its inverse.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Letter {
    pub generator: u32,
    pub inverse: bool,
}

impl Letter {
    pub fn pos(generator: u32) -> Self {
        Letter { generator, inverse: false }
    }

    pub fn neg(generator: u32) -> Self {
        Letter { generator, inverse: true }
    }

    pub fn inv(self) -> Self {
        Letter { generator: self.generator, inverse: !self.inverse }
    }

    pub fn sign(self) -> i32 {
        if self.inverse {
            -1
        } else {
            1
        }
    }
}

/// A freely reduced word. The empty word is the identity.
#[derive(Clone, Debug, Default, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Word(Vec<Letter>);

impl Word {
    pub fn identity() -> Self {
        Word(Vec::new())
    }

    pub fn letter(l: Letter) -> Self {
        Word(vec![l])
    }

    pub fn generator(g: u32) -> Self {
        Word(vec![Letter::pos(g)])
    }

    /// Freely reduces an arbitrary letter sequence.
    pub fn from_letters<I: IntoIterator<Item = Letter>>(letters: I) -> Self {
        let mut out: Vec<Letter> = Vec::new();
        for l in letters {
            push_reduced(&mut out, l);
        }
        Word(out)
    }

    pub fn letters(&self) -> &[Letter] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn is_identity(&self) -> bool {
        self.0.is_empty()
    }

    /// Largest generator index used, plus one.
    pub fn support_rank(&self) -> usize {
        self.0.iter().map(|l| l.generator as usize + 1).max().unwrap_or(0)
    }

    pub fn inverse(&self) -> Word {
        Word(self.0.iter().rev().map(|l| l.inv()).collect())
    }

    /// Free reduction of the concatenation `self · other`.
    pub fn mul(&self, other: &Word) -> Word {
        let mut out = self.0.clone();
        for &l in &other.0 {
            push_reduced(&mut out, l);
        }
        Word(out)
    }

    /// `self^k` for any integer `k`.
    pub fn pow(&self, k: i64) -> Word {
        let base = if k < 0 { self.inverse() } else { self.clone() };
        let mut out = Word::identity();
        for _ in 0..k.unsigned_abs() {
            out = out.mul(&base);
        }
        out
    }

    /// `g · self · g⁻¹`.
    pub fn conjugate_by(&self, g: &Word) -> Word {
        g.mul(self).mul(&g.inverse())
    }

    pub fn commutes_with(&self, other: &Word) -> bool {
        self.mul(other) == other.mul(self)
    }

    /// Splits the word as `u · c · u⁻¹` with `c` cyclically reduced.
    pub fn cyclic_decomposition(&self) -> (Word, Word) {
        let n = self.0.len();
        let mut k = 0;
        while 2 * k + 1 < n && self.0[k] == self.0[n - 1 - k].inv() {
            k += 1;
        }
        (Word(self.0[..k].to_vec()), Word(self.0[k..n - k].to_vec()))
    }

    pub fn is_cyclically_reduced(&self) -> bool {
        match (self.0.first(), self.0.last()) {
            (Some(&a), Some(&b)) => self.0.len() == 1 || a != b.inv(),
            _ => true,
        }
    }

    /// Parses a word such as `"abA"` against single-character basis names.
    /// Uppercase letters denote inverses.
    pub fn parse(s: &str, alphabet: &Alphabet) -> Result<Word> {
        let mut letters = Vec::with_capacity(s.len());
        for ch in s.chars() {
            if ch.is_whitespace() || ch == '1' && s.trim() == "1" {
                continue;
            }
            let lower = ch.to_ascii_lowercase();
            let g = alphabet.index_of(lower).ok_or_else(|| Error::WordParse {
                word: s.to_string(),
                reason: format!("letter {ch:?} is not in the basis"),
            })?;
            letters.push(Letter { generator: g, inverse: ch.is_ascii_uppercase() });
        }
        Ok(Word::from_letters(letters))
    }

    pub fn render(&self, alphabet: &Alphabet) -> String {
        self.0
            .iter()
            .map(|l| {
                let c = alphabet.name(l.generator);
                if l.inverse {
                    c.to_ascii_uppercase()
                } else {
                    c
                }
            })
            .collect()
    }
}

fn push_reduced(out: &mut Vec<Letter>, l: Letter) {
    if out.last() == Some(&l.inv()) {
        out.pop();
    } else {
        out.push(l);
    }
}

impl fmt::Display for Word {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0.is_empty() {
            return write!(f, "1");
        }
        write!(f, "{}", self.render(&Alphabet::default_for(self.support_rank())))
    }
}

/// Single-character names for the ambient basis.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Alphabet {
    names: Vec<char>,
}

impl Alphabet {
    pub fn new(names: Vec<char>) -> Result<Self> {
        for (i, c) in names.iter().enumerate() {
            if !c.is_ascii_lowercase() {
                return Err(Error::WordParse {
                    word: c.to_string(),
                    reason: "basis names must be lowercase ASCII letters".into(),
                });
            }
            if names[..i].contains(c) {
                return Err(Error::WordParse {
                    word: c.to_string(),
                    reason: "duplicate basis name".into(),
                });
            }
        }
        Ok(Alphabet { names })
    }

    /// `a, b, c, …` for the first `rank` letters.
    pub fn default_for(rank: usize) -> Self {
        Alphabet { names: (0..rank.min(26)).map(|i| (b'a' + i as u8) as char).collect() }
    }

    pub fn rank(&self) -> usize {
        self.names.len()
    }

    pub fn names(&self) -> &[char] {
        &self.names
    }

    pub fn index_of(&self, c: char) -> Option<u32> {
        self.names.iter().position(|&n| n == c).map(|i| i as u32)
    }

    pub fn name(&self, g: u32) -> char {
        self.names.get(g as usize).copied().unwrap_or('?')
    }

    /// Appends a fresh lowercase name and returns its index.
    pub fn push_fresh(&mut self) -> Result<u32> {
        let c = ('a'..='z')
            .find(|c| !self.names.contains(c))
            .ok_or_else(|| Error::Unsupported("more than 26 basis letters".into()))?;
        self.names.push(c);
        Ok(self.names.len() as u32 - 1)
    }
}

/// Canonical representative of a conjugacy class: the least rotation of the
/// cyclic reduction.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct CyclicWord(Word);

impl CyclicWord {
    pub fn word(&self) -> &Word {
        &self.0
    }
}

pub fn reduce_concat(u: &Word, v: &Word) -> Word {
    u.mul(v)
}

/// Conjugacy-class canonical form.
pub fn cyclic_normal_form(w: &Word) -> CyclicWord {
    let (_, core) = w.cyclic_decomposition();
    let letters = core.letters();
    let n = letters.len();
    if n == 0 {
        return CyclicWord(Word::identity());
    }
    let best = (0..n)
        .min_by(|&i, &j| {
            letters[i..]
                .iter()
                .chain(&letters[..i])
                .cmp(letters[j..].iter().chain(&letters[..j]))
        })
        .unwrap_or(0);
    let rotated: Vec<Letter> = letters[best..].iter().chain(&letters[..best]).copied().collect();
    CyclicWord(Word(rotated))
}

/// Maximal root: returns `(r, k)` with `w = r^k`, `k ≥ 1` maximal.
pub fn root(w: &Word) -> Result<(Word, u32)> {
    if w.is_identity() {
        return Err(Error::IdentityHasNoRoot);
    }
    let (u, c) = w.cyclic_decomposition();
    let letters = c.letters();
    let n = letters.len();
    let period = (1..=n)
        .find(|&p| n % p == 0 && (p..n).all(|i| letters[i] == letters[i - p]))
        .unwrap_or(n);
    let r0 = Word(letters[..period].to_vec());
    Ok((r0.conjugate_by(&u), (n / period) as u32))
}

/// True iff the cyclic subgroups generated by `u` and `w` meet non-trivially.
pub fn commensurable(u: &Word, w: &Word) -> Result<bool> {
    if u.is_identity() || w.is_identity() {
        return Err(Error::TrivialInput);
    }
    let (ru, _) = root(u)?;
    let (rw, _) = root(w)?;
    Ok(ru == rw || ru == rw.inverse())
}

/// `k` with `x = u^k`, if any.
pub fn power_of(x: &Word, u: &Word) -> Option<i64> {
    if x.is_identity() {
        return Some(0);
    }
    let (rx, kx) = root(x).ok()?;
    let (ru, ku) = root(u).ok()?;
    let sign = if rx == ru {
        1
    } else if rx == ru.inverse() {
        -1
    } else {
        return None;
    };
    if kx % ku == 0 {
        Some(sign * (kx / ku) as i64)
    } else {
        None
    }
}

/// Finds `g` with `g·x_i·g⁻¹ = y_i` for every `i`.
///
/// The first non-trivial coordinate pins `g` down to a coset `g₀·⟨ρ⟩` of the
/// centralizer of `x₁`; each further coordinate either commutes with `ρ` and is
/// checked directly, or fixes the exponent of `ρ` uniquely within a bounded
/// window.
pub fn simultaneous_conjugacy(x: &[Word], y: &[Word]) -> Result<Option<Word>> {
    if x.len() != y.len() {
        return Err(Error::LengthMismatch(x.len(), y.len()));
    }
    let Some(lead) = x.iter().position(|w| !w.is_identity()) else {
        return Ok(if y.iter().all(Word::is_identity) { Some(Word::identity()) } else { None });
    };
    if x[..lead].iter().zip(&y[..lead]).any(|(a, b)| a != b) {
        return Ok(None);
    }
    let Some(g0) = conjugator(&x[lead], &y[lead]) else {
        return Ok(None);
    };
    let (rho, _) = root(&x[lead])?;
    // residual: rho^m x_i rho^-m = g0^-1 y_i g0
    let mut exponent: Option<i64> = None;
    for i in lead + 1..x.len() {
        let target = y[i].conjugate_by(&g0.inverse());
        if x[i].commutes_with(&rho) {
            if x[i] != target {
                return Ok(None);
            }
            continue;
        }
        if let Some(m) = exponent {
            if x[i].conjugate_by(&rho.pow(m)) != target {
                return Ok(None);
            }
            continue;
        }
        let bound = ((x[i].len() + target.len()) / rho.len().max(1) + 2) as i64;
        let found = (-bound..=bound).find(|&m| x[i].conjugate_by(&rho.pow(m)) == target);
        match found {
            Some(m) => exponent = Some(m),
            None => return Ok(None),
        }
    }
    let g = g0.mul(&rho.pow(exponent.unwrap_or(0)));
    debug_assert!(x.iter().zip(y).all(|(a, b)| &a.conjugate_by(&g) == b));
    Ok(Some(g))
}

/// Some `g` with `g·x·g⁻¹ = y`, if `x` and `y` are conjugate.
pub fn conjugator(x: &Word, y: &Word) -> Option<Word> {
    let (u, c) = x.cyclic_decomposition();
    let (v, d) = y.cyclic_decomposition();
    if c.len() != d.len() {
        return None;
    }
    if c.is_identity() {
        return Some(Word::identity());
    }
    let cl = c.letters();
    let n = cl.len();
    // h·c·h⁻¹ = d with c = c1·c2, d = c2·c1, h = c1⁻¹
    let split = (0..n).find(|&i| cl[i..].iter().chain(&cl[..i]).eq(d.letters().iter()))?;
    let h = Word(cl[..split].to_vec()).inverse();
    Some(v.mul(&h).mul(&u.inverse()))
}
