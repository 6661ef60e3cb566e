//! Shortlex string rewriting and Knuth-Bendix completion.
//!
//! Rules are kept strictly shortlex-decreasing, so every rewrite sequence
//! terminates. Left-hand sides are indexed in a trie over their *reversed*
//! letters: when a word is reduced left to right, any redex must end at the
//! letter just appended, so one backwards walk from the end of the buffer
//! finds it.

use alloc::collections::{BTreeMap, BTreeSet};
use alloc::vec;
use alloc::vec::Vec;
use core::cmp::Ordering;
use core::fmt;

use crate::congruence::MonoidTable;
use crate::error::{Error, Result};
use crate::words::{Alphabet, Generator, Presentation, Word};

const NONE: u32 = u32::MAX;

/// Default cap on rewrite steps in [`RewriteSystem::normalize`].
pub const DEFAULT_STEP_CAP: usize = 10_000_000;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RewriteRule {
    pub lhs: Word,
    pub rhs: Word,
}

impl fmt::Display for RewriteRule {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} -> {}", self.lhs, self.rhs)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Budget {
    /// Give up once more than this many rules are active.
    pub max_rules: usize,
    /// Give up after this many critical pairs.
    pub max_pairs: u64,
}

impl Default for Budget {
    fn default() -> Self {
        Budget {
            max_rules: 20_000,
            max_pairs: 5_000_000,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub struct CompletionStats {
    pub pairs_processed: u64,
    pub rules_added: u64,
    pub rules_removed: u64,
}

/// Trie over reversed left-hand sides, keyed by dense letter positions.
#[derive(Debug, Clone)]
struct SuffixTrie {
    k: usize,
    children: Vec<u32>,
    rule: Vec<u32>,
}

impl SuffixTrie {
    fn new(k: usize) -> Self {
        SuffixTrie {
            k,
            children: vec![NONE; k],
            rule: vec![NONE],
        }
    }

    fn insert(&mut self, lhs: &[u8], id: u32) {
        let mut node = 0usize;
        for &x in lhs.iter().rev() {
            let slot = node * self.k + x as usize;
            if self.children[slot] == NONE {
                let fresh = self.rule.len() as u32;
                self.children[slot] = fresh;
                self.children.extend(core::iter::repeat_n(NONE, self.k));
                self.rule.push(NONE);
            }
            node = self.children[slot] as usize;
        }
        self.rule[node] = id;
    }

    fn remove(&mut self, lhs: &[u8]) {
        let mut node = 0usize;
        for &x in lhs.iter().rev() {
            node = self.children[node * self.k + x as usize] as usize;
        }
        self.rule[node] = NONE;
    }

    /// Rule whose lhs is a suffix of `w`, shortest first.
    fn suffix_match(&self, w: &[u8]) -> Option<u32> {
        let mut node = 0usize;
        for &x in w.iter().rev() {
            let next = self.children[node * self.k + x as usize];
            if next == NONE {
                return None;
            }
            node = next as usize;
            if self.rule[node] != NONE {
                return Some(self.rule[node]);
            }
        }
        None
    }

    /// All rules whose lhs is a suffix of `w`.
    fn suffix_matches(&self, w: &[u8], out: &mut Vec<(usize, u32)>) {
        let mut node = 0usize;
        for (depth, &x) in w.iter().rev().enumerate() {
            let next = self.children[node * self.k + x as usize];
            if next == NONE {
                return;
            }
            node = next as usize;
            if self.rule[node] != NONE {
                out.push((depth + 1, self.rule[node]));
            }
        }
    }
}

fn shortlex(a: &[u8], b: &[u8]) -> Ordering {
    a.len().cmp(&b.len()).then_with(|| a.cmp(b))
}

/// A finite set of oriented rules over one alphabet.
#[derive(Debug, Clone)]
pub struct RewriteSystem {
    alphabet: Alphabet,
    lhs: Vec<Vec<u8>>,
    rhs: Vec<Vec<u8>>,
    complete: bool,
    stats: CompletionStats,
    trie: SuffixTrie,
}

impl RewriteSystem {
    /// A system from explicit rules, in the given priority order. The result
    /// is not marked complete.
    pub fn from_rules(alphabet: Alphabet, rules: Vec<RewriteRule>) -> Result<Self> {
        let mut sys = RewriteSystem {
            alphabet,
            lhs: Vec::new(),
            rhs: Vec::new(),
            complete: false,
            stats: CompletionStats::default(),
            trie: SuffixTrie::new(alphabet.size()),
        };
        for r in rules {
            if r.lhs <= r.rhs {
                return Err(Error::Parse(alloc::format!(
                    "rule `{r}` is not shortlex-decreasing"
                )));
            }
            let l = encode(&alphabet, &r.lhs)?;
            let rh = encode(&alphabet, &r.rhs)?;
            sys.trie.insert(&l, sys.lhs.len() as u32);
            sys.lhs.push(l);
            sys.rhs.push(rh);
        }
        Ok(sys)
    }

    pub fn alphabet(&self) -> Alphabet {
        self.alphabet
    }

    pub fn is_complete(&self) -> bool {
        self.complete
    }

    pub fn stats(&self) -> CompletionStats {
        self.stats
    }

    pub fn len(&self) -> usize {
        self.lhs.len()
    }

    pub fn is_empty(&self) -> bool {
        self.lhs.is_empty()
    }

    pub fn rules(&self) -> Vec<RewriteRule> {
        self.lhs
            .iter()
            .zip(&self.rhs)
            .map(|(l, r)| RewriteRule {
                lhs: decode(&self.alphabet, l),
                rhs: decode(&self.alphabet, r),
            })
            .collect()
    }

    /// One rewrite step at the leftmost redex; among rules matching at that
    /// position the lowest-indexed one wins.
    pub fn rewrite_once(&self, w: &Word) -> Option<Word> {
        let letters = encode(&self.alphabet, w).ok()?;
        let mut best: Option<(usize, u32, usize)> = None;
        let mut found = Vec::new();
        for end in 1..=letters.len() {
            found.clear();
            self.trie.suffix_matches(&letters[..end], &mut found);
            for &(len, rule) in &found {
                let start = end - len;
                let better = match best {
                    None => true,
                    Some((s, r, _)) => (start, rule) < (s, r),
                };
                if better {
                    best = Some((start, rule, len));
                }
            }
        }
        let (start, rule, len) = best?;
        let mut out = letters[..start].to_vec();
        out.extend_from_slice(&self.rhs[rule as usize]);
        out.extend_from_slice(&letters[start + len..]);
        Some(decode(&self.alphabet, &out))
    }

    pub fn normalize(&self, w: &Word) -> Result<Word> {
        self.normalize_with_cap(w, DEFAULT_STEP_CAP)
    }

    pub fn normalize_with_cap(&self, w: &Word, cap: usize) -> Result<Word> {
        let letters = encode(&self.alphabet, w)?;
        let out = reduce(&self.trie, &self.lhs, &self.rhs, &letters, cap)?;
        Ok(decode(&self.alphabet, &out))
    }

    pub fn is_irreducible(&self, w: &Word) -> bool {
        match encode(&self.alphabet, w) {
            Ok(letters) => {
                (1..=letters.len()).all(|end| self.trie.suffix_match(&letters[..end]).is_none())
            }
            Err(_) => false,
        }
    }

    /// Number of irreducible words, i.e. the size of the presented monoid when
    /// the system is complete.
    pub fn count_irreducible(&self) -> Result<u64> {
        let mut total = 0u64;
        self.for_each_irreducible(|_| total += 1)?;
        Ok(total)
    }

    /// Irreducible words in shortlex order.
    pub fn irreducible_words(&self) -> Result<Vec<Word>> {
        let mut out = Vec::new();
        self.for_each_irreducible(|w| out.push(decode(&self.alphabet, w)))?;
        Ok(out)
    }

    /// The monoid presented by a complete system, with the irreducible words
    /// as representatives. These are shortlex-least in their classes, so the
    /// result matches congruence enumeration exactly.
    pub fn to_table(&self) -> Result<MonoidTable> {
        let mut words: Vec<Vec<u8>> = Vec::new();
        self.for_each_irreducible(|w| words.push(w.to_vec()))?;
        let id: BTreeMap<&[u8], u32> = words
            .iter()
            .enumerate()
            .map(|(i, w)| (w.as_slice(), i as u32))
            .collect();
        let k = self.alphabet.size();
        let mut right = Vec::with_capacity(words.len() * k);
        let mut left = Vec::with_capacity(words.len() * k);
        let mut buf = Vec::new();
        for w in &words {
            for x in 0..k as u8 {
                buf.clear();
                buf.extend_from_slice(w);
                buf.push(x);
                let r = reduce(&self.trie, &self.lhs, &self.rhs, &buf, DEFAULT_STEP_CAP)?;
                right.push(id.get(r.as_slice()).copied().ok_or(Error::NotComplete)?);
            }
        }
        for w in &words {
            for x in 0..k as u8 {
                buf.clear();
                buf.push(x);
                buf.extend_from_slice(w);
                let r = reduce(&self.trie, &self.lhs, &self.rhs, &buf, DEFAULT_STEP_CAP)?;
                left.push(id.get(r.as_slice()).copied().ok_or(Error::NotComplete)?);
            }
        }
        let reps = words.iter().map(|w| decode(&self.alphabet, w)).collect();
        MonoidTable::from_parts(self.alphabet, reps, right, left)
    }

    fn for_each_irreducible<F: FnMut(&[u8])>(&self, mut f: F) -> Result<()> {
        if !self.complete {
            return Err(Error::NotComplete);
        }
        let k = self.alphabet.size() as u8;
        let mut level: Vec<Vec<u8>> = vec![Vec::new()];
        while !level.is_empty() {
            let mut next = Vec::new();
            for w in &level {
                f(w);
                for x in 0..k {
                    let mut v = w.clone();
                    v.push(x);
                    if self.trie.suffix_match(&v).is_none() {
                        next.push(v);
                    }
                }
            }
            level = next;
        }
        Ok(())
    }
}

impl fmt::Display for RewriteSystem {
    /// One rule per line, `lhs -> rhs`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for r in self.rules() {
            writeln!(f, "{r}")?;
        }
        Ok(())
    }
}

fn encode(alphabet: &Alphabet, w: &[Generator]) -> Result<Vec<u8>> {
    w.iter()
        .map(|&g| alphabet.check(g).map(|p| p as u8))
        .collect()
}

fn decode(alphabet: &Alphabet, w: &[u8]) -> Word {
    w.iter().map(|&p| alphabet.generator(p as usize)).collect()
}

fn reduce(
    trie: &SuffixTrie,
    lhs: &[Vec<u8>],
    rhs: &[Vec<u8>],
    w: &[u8],
    cap: usize,
) -> Result<Vec<u8>> {
    let mut out: Vec<u8> = Vec::with_capacity(w.len());
    let mut input: Vec<u8> = w.iter().rev().copied().collect();
    let mut steps = 0usize;
    while let Some(x) = input.pop() {
        out.push(x);
        if let Some(r) = trie.suffix_match(&out) {
            steps += 1;
            if steps > cap {
                return Err(Error::StepBudgetExceeded(cap));
            }
            let r = r as usize;
            out.truncate(out.len() - lhs[r].len());
            input.extend(rhs[r].iter().rev());
        }
    }
    Ok(out)
}

struct Completion {
    alphabet: Alphabet,
    lhs: Vec<Vec<u8>>,
    rhs: Vec<Vec<u8>>,
    active: Vec<bool>,
    active_count: usize,
    trie: SuffixTrie,
    // (overlap length, overlap word, left rule, right rule, shared length)
    pending: BTreeSet<(usize, Vec<u8>, u32, u32, usize)>,
    stats: CompletionStats,
}

impl Completion {
    fn reduce(&self, w: &[u8]) -> Vec<u8> {
        // Rules are shortlex-decreasing, so this cannot loop.
        reduce(&self.trie, &self.lhs, &self.rhs, w, usize::MAX).unwrap_or_default()
    }

    fn add_equation(&mut self, u: Vec<u8>, v: Vec<u8>, budget: &Budget) -> bool {
        let mut queue = vec![(u, v)];
        while let Some((u, v)) = queue.pop() {
            let u = self.reduce(&u);
            let v = self.reduce(&v);
            let (l, r) = match shortlex(&u, &v) {
                Ordering::Equal => continue,
                Ordering::Greater => (u, v),
                Ordering::Less => (v, u),
            };
            let id = self.lhs.len() as u32;
            self.trie.insert(&l, id);
            self.lhs.push(l);
            self.rhs.push(r);
            self.active.push(true);
            self.active_count += 1;
            self.stats.rules_added += 1;

            for other in 0..id as usize {
                if !self.active[other] {
                    continue;
                }
                let new_lhs = &self.lhs[id as usize];
                if find_factor_u8(&self.lhs[other], new_lhs) {
                    self.active[other] = false;
                    self.active_count -= 1;
                    self.stats.rules_removed += 1;
                    self.trie.remove(&self.lhs[other]);
                    queue.push((self.lhs[other].clone(), self.rhs[other].clone()));
                } else if find_factor_u8(&self.rhs[other], new_lhs) {
                    self.rhs[other] = self.reduce(&self.rhs[other].clone());
                }
            }
            for other in 0..=id {
                if self.active[other as usize] {
                    self.push_overlaps(id, other);
                    if other != id {
                        self.push_overlaps(other, id);
                    }
                }
            }
            if self.active_count > budget.max_rules {
                return false;
            }
        }
        true
    }

    /// Overlaps where a proper suffix of `lhs[a]` is a proper prefix of `lhs[b]`.
    fn push_overlaps(&mut self, a: u32, b: u32) {
        let la = &self.lhs[a as usize];
        let lb = &self.lhs[b as usize];
        let max = la.len().min(lb.len());
        for t in 1..max {
            if la[la.len() - t..] == lb[..t] {
                let mut word = la.clone();
                word.extend_from_slice(&lb[t..]);
                self.pending.insert((word.len(), word, a, b, t));
            }
        }
    }

    fn resolve(&mut self, a: u32, b: u32, t: usize, budget: &Budget) -> bool {
        let (ai, bi) = (a as usize, b as usize);
        let mut s1 = self.rhs[ai].clone();
        s1.extend_from_slice(&self.lhs[bi][t..]);
        let mut s2 = self.lhs[ai][..self.lhs[ai].len() - t].to_vec();
        s2.extend_from_slice(&self.rhs[bi]);
        self.add_equation(s1, s2, budget)
    }

    fn into_system(self, complete: bool) -> RewriteSystem {
        let mut trie = SuffixTrie::new(self.alphabet.size());
        let mut lhs = Vec::new();
        let mut rhs = Vec::new();
        for (i, (l, r)) in self.lhs.into_iter().zip(self.rhs).enumerate() {
            if self.active[i] {
                trie.insert(&l, lhs.len() as u32);
                lhs.push(l);
                rhs.push(r);
            }
        }
        RewriteSystem {
            alphabet: self.alphabet,
            lhs,
            rhs,
            complete,
            stats: self.stats,
            trie,
        }
    }
}

fn find_factor_u8(hay: &[u8], needle: &[u8]) -> bool {
    needle.len() <= hay.len() && hay.windows(needle.len()).any(|w| w == needle)
}

/// Shortlex Knuth-Bendix completion of `p`. Critical pairs are resolved in
/// shortlex order of their overlap words. If the budget runs out, the partial
/// system is returned with `is_complete() == false`.
pub fn kb_complete(p: &Presentation, budget: Budget) -> RewriteSystem {
    let alphabet = p.alphabet();
    let mut c = Completion {
        alphabet,
        lhs: Vec::new(),
        rhs: Vec::new(),
        active: Vec::new(),
        active_count: 0,
        trie: SuffixTrie::new(alphabet.size()),
        pending: BTreeSet::new(),
        stats: CompletionStats::default(),
    };
    for (u, v) in p.relations() {
        // Presentation words are already checked against the alphabet.
        let u = encode(&alphabet, u).unwrap_or_default();
        let v = encode(&alphabet, v).unwrap_or_default();
        if !c.add_equation(u, v, &budget) {
            return c.into_system(false);
        }
    }
    while let Some((_, _, a, b, t)) = c.pending.pop_first() {
        if !(c.active[a as usize] && c.active[b as usize]) {
            continue;
        }
        if c.stats.pairs_processed >= budget.max_pairs {
            return c.into_system(false);
        }
        c.stats.pairs_processed += 1;
        if !c.resolve(a, b, t, &budget) {
            return c.into_system(false);
        }
    }
    c.into_system(true)
}
