//! Generators, words and the two families of presentations.
//!
//! Words compare in shortlex order: shorter words first, equal lengths
//! lexicographically under `a1 < a2 < ... < a(n-1) < b1 < ... < b(n-1)`
//! (and `h1 < h2 < ...` for Jones words). The derived `Ord` on [`Generator`]
//! gives exactly that letter order because `Kind` orders `Alpha < Beta < H`.

use alloc::collections::BTreeSet;
use alloc::string::{String, ToString};
use alloc::vec::Vec;
use core::cmp::Ordering;
use core::fmt;
use core::ops::Deref;
use core::str::FromStr;

use crate::error::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Kind {
    Alpha,
    Beta,
    H,
}

/// A single letter `a<i>`, `b<i>` or `h<i>` with a 1-based index.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Generator {
    kind: Kind,
    index: u8,
}

impl Generator {
    pub const fn new(kind: Kind, index: u8) -> Self {
        Generator { kind, index }
    }

    pub const fn alpha(index: u8) -> Self {
        Generator::new(Kind::Alpha, index)
    }

    pub const fn beta(index: u8) -> Self {
        Generator::new(Kind::Beta, index)
    }

    pub const fn h(index: u8) -> Self {
        Generator::new(Kind::H, index)
    }

    pub const fn kind(self) -> Kind {
        self.kind
    }

    pub const fn index(self) -> usize {
        self.index as usize
    }

    /// Swaps `a<i>` and `b<i>`; `h<i>` has no bar.
    pub fn bar(self) -> Result<Self> {
        match self.kind {
            Kind::Alpha => Ok(Generator::beta(self.index)),
            Kind::Beta => Ok(Generator::alpha(self.index)),
            Kind::H => Err(Error::KindMismatch(self)),
        }
    }

    /// Same index, different kind.
    pub const fn with_kind(self, kind: Kind) -> Self {
        Generator::new(kind, self.index)
    }
}

impl fmt::Display for Generator {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let c = match self.kind {
            Kind::Alpha => 'a',
            Kind::Beta => 'b',
            Kind::H => 'h',
        };
        write!(f, "{c}{}", self.index)
    }
}

impl FromStr for Generator {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let bad = || Error::Parse(s.to_string());
        let mut chars = s.chars();
        let kind = match chars.next() {
            Some('a') => Kind::Alpha,
            Some('b') => Kind::Beta,
            Some('h') => Kind::H,
            _ => return Err(bad()),
        };
        let digits = chars.as_str();
        if digits.is_empty() || !digits.bytes().all(|b| b.is_ascii_digit()) {
            return Err(bad());
        }
        let index: u8 = digits.parse().map_err(|_| bad())?;
        if index == 0 {
            return Err(bad());
        }
        Ok(Generator::new(kind, index))
    }
}

/// A finite sequence of generators. The empty word is the identity and
/// prints as `1`.
#[derive(Debug, Clone, Default, PartialEq, Eq, Hash)]
pub struct Word(Vec<Generator>);

impl Word {
    pub const fn empty() -> Self {
        Word(Vec::new())
    }

    pub fn from_vec(letters: Vec<Generator>) -> Self {
        Word(letters)
    }

    pub fn letters(&self) -> &[Generator] {
        &self.0
    }

    pub fn into_vec(self) -> Vec<Generator> {
        self.0
    }

    pub fn push(&mut self, g: Generator) {
        self.0.push(g);
    }

    pub fn concat(&self, other: &Word) -> Word {
        let mut v = Vec::with_capacity(self.len() + other.len());
        v.extend_from_slice(&self.0);
        v.extend_from_slice(&other.0);
        Word(v)
    }

    pub fn first(&self) -> Option<Generator> {
        self.0.first().copied()
    }

    pub fn last(&self) -> Option<Generator> {
        self.0.last().copied()
    }

    /// Letterwise `a<i> <-> b<i>`.
    pub fn bar(&self) -> Result<Word> {
        self.0
            .iter()
            .map(|g| g.bar())
            .collect::<Result<Vec<_>>>()
            .map(Word)
    }

    pub fn reverse(&self) -> Word {
        Word(self.0.iter().rev().copied().collect())
    }

    /// Keeps only letters of the given kind, in order.
    pub fn filter_kind(&self, kind: Kind) -> Word {
        Word(
            self.0
                .iter()
                .copied()
                .filter(|g| g.kind() == kind)
                .collect(),
        )
    }

    /// Replaces the kind of every letter, keeping indices.
    pub fn relabel(&self, kind: Kind) -> Word {
        Word(self.0.iter().map(|g| g.with_kind(kind)).collect())
    }

    pub fn is_factor_of(&self, other: &Word) -> bool {
        find_factor(&other.0, &self.0).is_some()
    }
}

pub(crate) fn find_factor(hay: &[Generator], needle: &[Generator]) -> Option<usize> {
    if needle.is_empty() {
        return Some(0);
    }
    if needle.len() > hay.len() {
        return None;
    }
    hay.windows(needle.len()).position(|w| w == needle)
}

impl Deref for Word {
    type Target = [Generator];

    fn deref(&self) -> &[Generator] {
        &self.0
    }
}

impl From<Vec<Generator>> for Word {
    fn from(v: Vec<Generator>) -> Self {
        Word(v)
    }
}

impl FromIterator<Generator> for Word {
    fn from_iter<I: IntoIterator<Item = Generator>>(iter: I) -> Self {
        Word(iter.into_iter().collect())
    }
}

pub fn shortlex_compare(a: &[Generator], b: &[Generator]) -> Ordering {
    a.len().cmp(&b.len()).then_with(|| a.cmp(b))
}

impl Ord for Word {
    fn cmp(&self, other: &Self) -> Ordering {
        shortlex_compare(&self.0, &other.0)
    }
}

impl PartialOrd for Word {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Display for Word {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0.is_empty() {
            return f.write_str("1");
        }
        for (k, g) in self.0.iter().enumerate() {
            if k > 0 {
                f.write_str(" ")?;
            }
            write!(f, "{g}")?;
        }
        Ok(())
    }
}

impl FromStr for Word {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let tokens: Vec<&str> = s.split_whitespace().collect();
        match tokens.as_slice() {
            [] => Err(Error::Parse(String::new())),
            ["1"] => Ok(Word::empty()),
            _ => tokens.iter().map(|t| t.parse()).collect(),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Family {
    Jones,
    Origami,
}

impl Family {
    pub const fn name(self) -> &'static str {
        match self {
            Family::Jones => "jones",
            Family::Origami => "origami",
        }
    }
}

impl fmt::Display for Family {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

/// The generator set of `J_n` (`h1..h(n-1)`) or `O_n` (`a1..a(n-1), b1..b(n-1)`),
/// with a dense letter numbering in generator order.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct Alphabet {
    family: Family,
    rank: usize,
}

impl Alphabet {
    pub fn new(family: Family, rank: usize) -> Result<Self> {
        if rank < 2 {
            return Err(Error::RankTooSmall(rank));
        }
        if rank > u8::MAX as usize {
            return Err(Error::IndexOutOfRange {
                index: rank,
                rank: u8::MAX as usize,
            });
        }
        Ok(Alphabet { family, rank })
    }

    pub const fn family(&self) -> Family {
        self.family
    }

    pub const fn rank(&self) -> usize {
        self.rank
    }

    /// Number of generators.
    pub const fn size(&self) -> usize {
        match self.family {
            Family::Jones => self.rank - 1,
            Family::Origami => 2 * (self.rank - 1),
        }
    }

    /// Dense position of `g`, or `None` when `g` is not a letter of this alphabet.
    pub fn position(&self, g: Generator) -> Option<usize> {
        let m = self.rank - 1;
        let i = g.index();
        if i == 0 || i > m {
            return None;
        }
        match (self.family, g.kind()) {
            (Family::Jones, Kind::H) => Some(i - 1),
            (Family::Origami, Kind::Alpha) => Some(i - 1),
            (Family::Origami, Kind::Beta) => Some(m + i - 1),
            _ => None,
        }
    }

    pub fn generator(&self, position: usize) -> Generator {
        let m = self.rank - 1;
        match self.family {
            Family::Jones => Generator::h(position as u8 + 1),
            Family::Origami if position < m => Generator::alpha(position as u8 + 1),
            Family::Origami => Generator::beta((position - m) as u8 + 1),
        }
    }

    pub fn generators(&self) -> impl Iterator<Item = Generator> + '_ {
        (0..self.size()).map(move |p| self.generator(p))
    }

    pub fn check(&self, g: Generator) -> Result<usize> {
        self.position(g).ok_or_else(|| {
            let expected = match self.family {
                Family::Jones => g.kind() == Kind::H,
                Family::Origami => g.kind() != Kind::H,
            };
            if expected {
                Error::IndexOutOfRange {
                    index: g.index(),
                    rank: self.rank,
                }
            } else {
                Error::KindMismatch(g)
            }
        })
    }

    pub fn check_word(&self, w: &[Generator]) -> Result<()> {
        w.iter().try_for_each(|&g| self.check(g).map(|_| ()))
    }

    /// Converts a word to dense letter positions.
    pub fn encode(&self, w: &[Generator]) -> Result<Vec<usize>> {
        w.iter().map(|&g| self.check(g)).collect()
    }
}

/// A finitely presented monoid: an alphabet plus unordered relation pairs.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Presentation {
    alphabet: Alphabet,
    relations: Vec<(Word, Word)>,
}

impl Presentation {
    /// Builds a presentation, normalising every pair to `(smaller, larger)` in
    /// shortlex order and dropping duplicates and trivial pairs.
    pub fn new<I>(alphabet: Alphabet, relations: I) -> Result<Self>
    where
        I: IntoIterator<Item = (Word, Word)>,
    {
        let mut set = BTreeSet::new();
        for (u, v) in relations {
            alphabet.check_word(&u)?;
            alphabet.check_word(&v)?;
            match u.cmp(&v) {
                Ordering::Less => set.insert((u, v)),
                Ordering::Greater => set.insert((v, u)),
                Ordering::Equal => false,
            };
        }
        Ok(Presentation {
            alphabet,
            relations: set.into_iter().collect(),
        })
    }

    pub fn alphabet(&self) -> Alphabet {
        self.alphabet
    }

    pub fn rank(&self) -> usize {
        self.alphabet.rank()
    }

    pub fn family(&self) -> Family {
        self.alphabet.family()
    }

    pub fn relations(&self) -> &[(Word, Word)] {
        &self.relations
    }

    pub fn contains(&self, u: &Word, v: &Word) -> bool {
        let key = if u <= v { (u, v) } else { (v, u) };
        self.relations.iter().any(|(a, b)| (a, b) == key)
    }
}

impl fmt::Display for Presentation {
    /// One relation per line, `u = v`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (u, v) in &self.relations {
            writeln!(f, "{u} = {v}")?;
        }
        Ok(())
    }
}

fn word(gs: &[Generator]) -> Word {
    Word::from_vec(gs.to_vec())
}

/// Relations (B), (C), (D) of the Jones monoid `J_n` over `h1..h(n-1)`.
pub fn build_jones_presentation(n: usize) -> Result<Presentation> {
    let alphabet = Alphabet::new(Family::Jones, n)?;
    let m = (n - 1) as u8;
    let h = Generator::h;
    let mut rels = Vec::new();
    for i in 1..=m {
        rels.push((word(&[h(i), h(i)]), word(&[h(i)])));
        for j in 1..=m {
            if i.abs_diff(j) == 1 {
                rels.push((word(&[h(i), h(j), h(i)]), word(&[h(i)])));
            } else if i.abs_diff(j) >= 2 {
                rels.push((word(&[h(i), h(j)]), word(&[h(j), h(i)])));
            }
        }
    }
    Presentation::new(alphabet, rels)
}

/// Rules (1)-(5), (1a), (2a), (3a) of `O_n`, plus (2b), (3b) when
/// `include_redundant` is set.
pub fn build_origami_presentation(n: usize, include_redundant: bool) -> Result<Presentation> {
    let alphabet = Alphabet::new(Family::Origami, n)?;
    let m = (n - 1) as u8;
    let mut rels = Vec::new();
    for kind in [Kind::Alpha, Kind::Beta] {
        let other = if kind == Kind::Alpha {
            Kind::Beta
        } else {
            Kind::Alpha
        };
        let g = |i: u8| Generator::new(kind, i);
        let gb = |i: u8| Generator::new(other, i);
        for i in 1..=m {
            // (1)
            rels.push((word(&[g(i), g(i)]), word(&[g(i)])));
            // (1a)
            rels.push((word(&[g(i), gb(i), g(i), gb(i)]), word(&[g(i), gb(i)])));
            // (2)/(3), (2a)/(3a), (2b)/(3b) for each neighbour k = i +- 1
            for k in [i.wrapping_add(1), i.wrapping_sub(1)] {
                if k < 1 || k > m {
                    continue;
                }
                rels.push((word(&[g(i), g(k), g(i)]), word(&[g(i)])));
                rels.push((
                    word(&[g(i), gb(i), g(k), gb(k), g(i), gb(i)]),
                    word(&[g(i), gb(i)]),
                ));
                if include_redundant {
                    rels.push((
                        word(&[g(i), gb(i), g(i), g(k), gb(k), g(k), g(i), gb(i), g(i)]),
                        word(&[g(i), gb(i), g(i)]),
                    ));
                }
            }
            for j in 1..=m {
                // (4)
                if i != j {
                    rels.push((word(&[g(i), gb(j)]), word(&[gb(j), g(i)])));
                }
                // (5)
                if i.abs_diff(j) >= 2 {
                    rels.push((word(&[g(i), g(j)]), word(&[g(j), g(i)])));
                }
            }
        }
    }
    Presentation::new(alphabet, rels)
}

pub fn bar(w: &Word) -> Result<Word> {
    w.bar()
}

pub fn reverse(w: &Word) -> Word {
    w.reverse()
}

#[cfg(test)]
mod tests {
    use super::*;
    use alloc::vec;

    fn w(s: &str) -> Word {
        s.parse().unwrap()
    }

    #[test]
    fn jones_small_ranks() {
        let p2 = build_jones_presentation(2).unwrap();
        assert_eq!(p2.relations(), &[(w("h1"), w("h1 h1"))]);

        let p3 = build_jones_presentation(3).unwrap();
        assert_eq!(p3.relations().len(), 4);
        assert!(p3.contains(&w("h1 h2 h1"), &w("h1")));
        assert!(p3.contains(&w("h2 h1 h2"), &w("h2")));
        assert!(p3.contains(&w("h1 h1"), &w("h1")));
        assert!(p3.contains(&w("h2 h2"), &w("h2")));

        let p4 = build_jones_presentation(4).unwrap();
        let commuting: Vec<_> = p4
            .relations()
            .iter()
            .filter(|(u, v)| u.len() == 2 && v.len() == 2)
            .collect();
        assert_eq!(commuting, vec![&(w("h1 h3"), w("h3 h1"))]);
    }

    #[test]
    fn rank_too_small() {
        assert_eq!(build_jones_presentation(1), Err(Error::RankTooSmall(1)));
        assert_eq!(
            build_origami_presentation(0, true),
            Err(Error::RankTooSmall(0))
        );
    }

    #[test]
    fn origami_rank_two() {
        for redundant in [false, true] {
            let p = build_origami_presentation(2, redundant).unwrap();
            let mut got: Vec<_> = p.relations().to_vec();
            got.sort();
            let mut want = vec![
                (w("a1"), w("a1 a1")),
                (w("b1"), w("b1 b1")),
                (w("a1 b1"), w("a1 b1 a1 b1")),
                (w("b1 a1"), w("b1 a1 b1 a1")),
            ];
            want.sort();
            assert_eq!(got, want);
        }
    }

    #[test]
    fn origami_rank_three_intercommutation() {
        let p = build_origami_presentation(3, true).unwrap();
        let mixed_len2: Vec<_> = p
            .relations()
            .iter()
            .filter(|(u, v)| u.len() == 2 && v.len() == 2 && u[0].kind() != u[1].kind())
            .cloned()
            .collect();
        assert_eq!(
            mixed_len2,
            vec![(w("a1 b2"), w("b2 a1")), (w("a2 b1"), w("b1 a2"))]
        );
    }

    #[test]
    fn relation_counts_are_locked() {
        // (n, jones, origami without 2b/3b, origami with 2b/3b)
        let expected = [
            (2, 1, 4, 4),
            (3, 4, 18, 22),
            (4, 8, 36, 44),
            (5, 13, 58, 70),
        ];
        for (n, j, o, r) in expected {
            assert_eq!(
                build_jones_presentation(n).unwrap().relations().len(),
                j,
                "J_{n}"
            );
            assert_eq!(
                build_origami_presentation(n, false)
                    .unwrap()
                    .relations()
                    .len(),
                o,
                "O_{n}"
            );
            assert_eq!(
                build_origami_presentation(n, true)
                    .unwrap()
                    .relations()
                    .len(),
                r,
                "O_{n}+"
            );
        }
    }

    #[test]
    fn bar_and_reverse() {
        assert_eq!(w("a1 b2").bar().unwrap(), w("b1 a2"));
        assert_eq!(Word::empty().bar().unwrap(), Word::empty());
        assert_eq!(w("b1 a1 b1").bar().unwrap().bar().unwrap(), w("b1 a1 b1"));
        assert_eq!(w("a1 b1 a2").reverse(), w("a2 b1 a1"));
        assert_eq!(Word::empty().reverse(), Word::empty());
        assert!(matches!(w("a1 h1").bar(), Err(Error::KindMismatch(_))));
    }

    #[test]
    fn shortlex() {
        assert_eq!(w("a1").cmp(&w("b1 a1")), Ordering::Less);
        assert_eq!(w("a2").cmp(&w("b1")), Ordering::Less);
        assert_eq!(w("b1 a2").cmp(&w("b1 a2")), Ordering::Equal);
        assert_eq!(w("h2").cmp(&w("h1 h1")), Ordering::Less);
    }

    #[test]
    fn text_round_trip() {
        for s in ["1", "a1 b2", "h3 h1 h12"] {
            assert_eq!(w(s).to_string(), s);
        }
        assert!("a0".parse::<Word>().is_err());
        assert!("c1".parse::<Word>().is_err());
        assert!("a1 1".parse::<Word>().is_err());
        assert!("".parse::<Word>().is_err());
    }

    #[test]
    fn alphabet_positions() {
        let a = Alphabet::new(Family::Origami, 4).unwrap();
        let gens: Vec<_> = a.generators().collect();
        assert_eq!(gens.len(), 6);
        for (p, g) in gens.iter().enumerate() {
            assert_eq!(a.position(*g), Some(p));
        }
        assert!(gens.windows(2).all(|x| x[0] < x[1]));
        assert_eq!(
            a.check(Generator::h(1)),
            Err(Error::KindMismatch(Generator::h(1)))
        );
        assert_eq!(
            a.check(Generator::alpha(4)),
            Err(Error::IndexOutOfRange { index: 4, rank: 4 })
        );
    }
}
