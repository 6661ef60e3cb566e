//! Two-sided congruence enumeration of a finitely presented monoid.
//!
//! The enumerator builds the right Cayley graph of the quotient directly:
//! nodes are classes of words, and every relation `(u, v)` is traced from
//! every node `c` so that `c.u = c.v`. Tracing at every node turns the right
//! congruence into the two-sided one. Definitions are made HLT style, node by
//! node in creation order; coincidences are merged with a union-find so edges
//! into dead nodes resolve lazily. A lookahead pass (tracing without
//! defining) runs whenever the live node count doubles.
//!
//! When the graph closes, a breadth-first pass from the identity renumbers
//! the classes in shortlex order of their least representatives.

use alloc::vec;
use alloc::vec::Vec;
use core::fmt;

use crate::error::{Error, Result};
use crate::words::{Alphabet, Family, Generator, Presentation, Word};

const UNDEF: u32 = u32::MAX;

/// Dense element id; `ElementId(0)` is the identity.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct ElementId(pub u32);

impl ElementId {
    pub const IDENTITY: ElementId = ElementId(0);

    pub const fn index(self) -> usize {
        self.0 as usize
    }
}

impl fmt::Display for ElementId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct TcOptions {
    /// Cap on simultaneously live nodes.
    pub max_nodes: usize,
}

impl Default for TcOptions {
    fn default() -> Self {
        TcOptions {
            max_nodes: 2_000_000,
        }
    }
}

/// An enumerated finite monoid.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MonoidTable {
    alphabet: Alphabet,
    reps: Vec<Word>,
    right: Vec<u32>,
    left: Vec<u32>,
}

impl MonoidTable {
    /// Reassembles a table from its parts (e.g. a cache file), checking shapes
    /// and that every entry is in range. Consistency of the tables with the
    /// representatives is checked by [`MonoidTable::validate`].
    pub fn from_parts(
        alphabet: Alphabet,
        reps: Vec<Word>,
        right: Vec<u32>,
        left: Vec<u32>,
    ) -> Result<Self> {
        let k = alphabet.size();
        let size = reps.len();
        if size == 0 || !reps[0].is_empty() || right.len() != size * k || left.len() != size * k {
            return Err(Error::Parse("malformed monoid table".into()));
        }
        if right.iter().chain(left.iter()).any(|&x| x as usize >= size) {
            return Err(Error::Parse("monoid table entry out of range".into()));
        }
        for r in &reps {
            alphabet.check_word(r)?;
        }
        Ok(MonoidTable {
            alphabet,
            reps,
            right,
            left,
        })
    }

    /// Checks `reps[e]` evaluates to `e` and the left table matches
    /// left multiplication of representatives.
    pub fn validate(&self) -> bool {
        (0..self.size()).all(|e| {
            let id = ElementId(e as u32);
            self.element_of(&self.reps[e]).ok() == Some(id)
                && self.alphabet.generators().enumerate().all(|(p, g)| {
                    let mut w = Word::from_vec(vec![g]);
                    w = w.concat(&self.reps[e]);
                    self.element_of(&w).ok() == Some(self.left(id, p))
                })
        })
    }

    pub fn alphabet(&self) -> Alphabet {
        self.alphabet
    }

    pub fn family(&self) -> Family {
        self.alphabet.family()
    }

    pub fn rank(&self) -> usize {
        self.alphabet.rank()
    }

    pub fn size(&self) -> usize {
        self.reps.len()
    }

    pub fn generator_count(&self) -> usize {
        self.alphabet.size()
    }

    pub fn elements(&self) -> impl Iterator<Item = ElementId> {
        (0..self.reps.len() as u32).map(ElementId)
    }

    /// Shortlex-least word of `e`.
    pub fn rep(&self, e: ElementId) -> &Word {
        &self.reps[e.index()]
    }

    pub fn reps(&self) -> &[Word] {
        &self.reps
    }

    pub fn right_table(&self) -> &[u32] {
        &self.right
    }

    pub fn left_table(&self) -> &[u32] {
        &self.left
    }

    /// `e * g` for the generator at dense position `g`.
    #[inline]
    pub fn right(&self, e: ElementId, g: usize) -> ElementId {
        ElementId(self.right[e.index() * self.alphabet.size() + g])
    }

    /// `g * e` for the generator at dense position `g`.
    #[inline]
    pub fn left(&self, e: ElementId, g: usize) -> ElementId {
        ElementId(self.left[e.index() * self.alphabet.size() + g])
    }

    /// Element reached by right-multiplying `start` by every letter of `w`.
    pub fn act(&self, start: ElementId, w: &[Generator]) -> Result<ElementId> {
        let mut e = start;
        for &g in w {
            e = self.right(e, self.alphabet.check(g)?);
        }
        Ok(e)
    }

    pub fn element_of(&self, w: &[Generator]) -> Result<ElementId> {
        self.act(ElementId::IDENTITY, w)
    }

    pub fn product(&self, a: ElementId, b: ElementId) -> ElementId {
        let k = self.alphabet.size();
        let mut e = a.0;
        for &g in self.reps[b.index()].iter() {
            // reps are validated at construction
            let p = self.alphabet.position(g).unwrap_or(0);
            e = self.right[e as usize * k + p];
        }
        ElementId(e)
    }

    /// Elements reachable from the identity using only the generators at the
    /// given positions, in breadth-first order.
    pub fn submonoid(&self, generators: &[usize]) -> Vec<ElementId> {
        let mut seen = vec![false; self.size()];
        let mut out = vec![ElementId::IDENTITY];
        seen[0] = true;
        let mut head = 0;
        while head < out.len() {
            let e = out[head];
            head += 1;
            for &g in generators {
                let t = self.right(e, g);
                if !seen[t.index()] {
                    seen[t.index()] = true;
                    out.push(t);
                }
            }
        }
        out
    }
}

struct Enumerator {
    k: usize,
    table: Vec<u32>,
    parent: Vec<u32>,
    relations: Vec<(Vec<u32>, Vec<u32>)>,
    live: usize,
    max_nodes: usize,
    pending: Vec<(u32, u32)>,
}

impl Enumerator {
    fn new(p: &Presentation, opts: TcOptions) -> Result<Self> {
        let alphabet = p.alphabet();
        let mut relations = Vec::with_capacity(p.relations().len());
        for (u, v) in p.relations() {
            let u: Vec<u32> = alphabet.encode(u)?.into_iter().map(|x| x as u32).collect();
            let v: Vec<u32> = alphabet.encode(v)?.into_iter().map(|x| x as u32).collect();
            relations.push((u, v));
        }
        // Short relations first: they close commutation squares early.
        relations.sort_by_key(|(u, v)| u.len() + v.len());
        let mut en = Enumerator {
            k: alphabet.size(),
            table: Vec::new(),
            parent: Vec::new(),
            relations,
            live: 0,
            max_nodes: opts.max_nodes,
            pending: Vec::new(),
        };
        en.new_node()?;
        Ok(en)
    }

    fn new_node(&mut self) -> Result<u32> {
        if self.live >= self.max_nodes {
            return Err(Error::MemoryBudgetExceeded(self.max_nodes));
        }
        let id = self.parent.len() as u32;
        self.parent.push(id);
        self.table.extend(core::iter::repeat_n(UNDEF, self.k));
        self.live += 1;
        Ok(id)
    }

    #[inline]
    fn find(&mut self, mut x: u32) -> u32 {
        while self.parent[x as usize] != x {
            let gp = self.parent[self.parent[x as usize] as usize];
            self.parent[x as usize] = gp;
            x = gp;
        }
        x
    }

    #[inline]
    fn edge(&mut self, c: u32, g: u32) -> u32 {
        let t = self.table[c as usize * self.k + g as usize];
        if t == UNDEF {
            UNDEF
        } else {
            let r = self.find(t);
            self.table[c as usize * self.k + g as usize] = r;
            r
        }
    }

    #[inline]
    fn set_edge(&mut self, c: u32, g: u32, t: u32) {
        self.table[c as usize * self.k + g as usize] = t;
    }

    fn follow_define(&mut self, c: u32, g: u32) -> Result<u32> {
        let t = self.edge(c, g);
        if t != UNDEF {
            return Ok(t);
        }
        let d = self.new_node()?;
        self.set_edge(c, g, d);
        Ok(d)
    }

    /// Traces `path` from `c` without defining; `None` when blocked.
    fn follow(&mut self, mut c: u32, path: &[u32]) -> Option<u32> {
        for &g in path {
            c = self.edge(c, g);
            if c == UNDEF {
                return None;
            }
        }
        Some(c)
    }

    fn coincide(&mut self, a: u32, b: u32) {
        self.pending.push((a, b));
        while let Some((x, y)) = self.pending.pop() {
            let x = self.find(x);
            let y = self.find(y);
            if x == y {
                continue;
            }
            let (keep, kill) = if x < y { (x, y) } else { (y, x) };
            self.parent[kill as usize] = keep;
            self.live -= 1;
            for g in 0..self.k {
                let t = self.table[kill as usize * self.k + g];
                if t == UNDEF {
                    continue;
                }
                let s = self.table[keep as usize * self.k + g];
                if s == UNDEF {
                    self.table[keep as usize * self.k + g] = t;
                } else {
                    self.pending.push((s, t));
                }
            }
        }
    }

    /// Closes the last step of a traced relation: `p.x` and `q.y` must agree.
    fn close(&mut self, p: u32, x: u32, q: u32, y: u32, define: bool) -> Result<()> {
        let a = self.edge(p, x);
        let b = self.edge(q, y);
        match (a == UNDEF, b == UNDEF) {
            (true, true) => {
                if define && (p, x) != (q, y) {
                    let d = self.new_node()?;
                    self.set_edge(p, x, d);
                    self.set_edge(q, y, d);
                }
            }
            (true, false) => self.set_edge(p, x, b),
            (false, true) => self.set_edge(q, y, a),
            (false, false) => {
                if a != b {
                    self.coincide(a, b);
                }
            }
        }
        Ok(())
    }

    fn scan(&mut self, c: u32, u: &[u32], v: &[u32], define: bool) -> Result<()> {
        let p = match self.trace_prefix(c, u, define)? {
            Some(p) => self.find(p),
            None => return Ok(()),
        };
        let q = match self.trace_prefix(c, v, define)? {
            Some(q) => self.find(q),
            None => return Ok(()),
        };
        match (u.last(), v.last()) {
            (Some(&x), Some(&y)) => self.close(p, x, q, y, define),
            (None, Some(&y)) => self.close_to(q, y, p),
            (Some(&x), None) => self.close_to(p, x, q),
            (None, None) => Ok(()),
        }
    }

    /// Relation side `w` is empty: the node itself must equal `p.x`.
    fn close_to(&mut self, p: u32, x: u32, target: u32) -> Result<()> {
        let a = self.edge(p, x);
        if a == UNDEF {
            self.set_edge(p, x, target);
        } else if a != target {
            self.coincide(a, target);
        }
        Ok(())
    }

    /// Traces all but the last letter of `w` from `c`.
    fn trace_prefix(&mut self, c: u32, w: &[u32], define: bool) -> Result<Option<u32>> {
        let prefix = if w.is_empty() { w } else { &w[..w.len() - 1] };
        if define {
            let mut p = c;
            for &g in prefix {
                p = self.follow_define(p, g)?;
            }
            Ok(Some(p))
        } else {
            Ok(self.follow(c, prefix))
        }
    }

    fn lookahead(&mut self, relations: &[(Vec<u32>, Vec<u32>)]) -> Result<()> {
        for c in 0..self.parent.len() as u32 {
            for (u, v) in relations {
                if self.parent[c as usize] != c {
                    break;
                }
                self.scan(c, u, v, false)?;
            }
        }
        Ok(())
    }

    fn run(&mut self) -> Result<()> {
        let relations = core::mem::take(&mut self.relations);
        let mut threshold = 4096usize;
        let mut c = 0usize;
        while c < self.parent.len() {
            if self.parent[c] != c as u32 {
                c += 1;
                continue;
            }
            for (u, v) in &relations {
                self.scan(c as u32, u, v, true)?;
                if self.parent[c] != c as u32 {
                    break;
                }
            }
            if self.parent[c] == c as u32 {
                for g in 0..self.k as u32 {
                    self.follow_define(c as u32, g)?;
                }
            }
            if self.live > threshold {
                self.lookahead(&relations)?;
                threshold = threshold.max(2 * self.live);
            }
            c += 1;
        }
        Ok(())
    }

    fn into_table(mut self, alphabet: Alphabet) -> MonoidTable {
        let k = self.k;
        let root = self.find(0);
        let mut new_id = vec![UNDEF; self.parent.len()];
        let mut order: Vec<u32> = vec![root];
        let mut parent_of: Vec<(u32, u32)> = vec![(UNDEF, UNDEF)];
        new_id[root as usize] = 0;
        let mut right = Vec::new();
        let mut head = 0;
        while head < order.len() {
            let x = order[head];
            for g in 0..k as u32 {
                let t = self.edge(x, g);
                debug_assert!(t != UNDEF, "incomplete table after enumeration");
                if new_id[t as usize] == UNDEF {
                    new_id[t as usize] = order.len() as u32;
                    order.push(t);
                    parent_of.push((head as u32, g));
                }
                right.push(new_id[t as usize]);
            }
            head += 1;
        }
        let size = order.len();
        let mut reps: Vec<Word> = Vec::with_capacity(size);
        reps.push(Word::empty());
        for &(p, g) in parent_of.iter().skip(1) {
            let mut w = reps[p as usize].clone();
            w.push(alphabet.generator(g as usize));
            reps.push(w);
        }
        let left = left_table(k, &right, &parent_of);
        MonoidTable {
            alphabet,
            reps,
            right,
            left,
        }
    }
}

/// `left[e][g] = g * reps[e]`, built from `reps[e] = reps[p] * h`:
/// `g * reps[p] * h = right[left[p][g]][h]`.
fn left_table(k: usize, right: &[u32], parent_of: &[(u32, u32)]) -> Vec<u32> {
    let size = parent_of.len();
    let mut left = vec![0u32; size * k];
    left[..k].copy_from_slice(&right[..k]);
    for e in 1..size {
        let (p, h) = parent_of[e];
        for g in 0..k {
            let lp = left[p as usize * k + g];
            left[e * k + g] = right[lp as usize * k + h as usize];
        }
    }
    left
}

/// Enumerates the finite monoid presented by `p`.
pub fn tc_enumerate(p: &Presentation, opts: TcOptions) -> Result<MonoidTable> {
    let mut en = Enumerator::new(p, opts)?;
    en.run()?;
    Ok(en.into_table(p.alphabet()))
}

/// Enumeration with the default element cap.
pub fn enumerate(p: &Presentation) -> Result<MonoidTable> {
    tc_enumerate(p, TcOptions::default())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::words::{build_jones_presentation, build_origami_presentation};
    use alloc::string::String;

    fn w(s: &str) -> Word {
        s.parse().unwrap()
    }

    #[test]
    fn jones_sizes() {
        for (n, c) in [(2, 2), (3, 5), (4, 14), (5, 42), (6, 132), (7, 429)] {
            let m = enumerate(&build_jones_presentation(n).unwrap()).unwrap();
            assert_eq!(m.size(), c, "J_{n}");
        }
    }

    #[test]
    fn origami_rank_two() {
        let m = enumerate(&build_origami_presentation(2, true).unwrap()).unwrap();
        let reps: Vec<String> = m.reps().iter().map(|r| alloc::format!("{r}")).collect();
        assert_eq!(
            reps,
            ["1", "a1", "b1", "a1 b1", "b1 a1", "a1 b1 a1", "b1 a1 b1"]
        );
        let ab = m.element_of(&w("a1 b1")).unwrap();
        assert_eq!(m.product(ab, ab), ab);
    }

    #[test]
    fn element_of_examples() {
        let j3 = enumerate(&build_jones_presentation(3).unwrap()).unwrap();
        assert_eq!(j3.element_of(&Word::empty()).unwrap(), ElementId::IDENTITY);
        assert_eq!(
            j3.element_of(&w("h1 h2 h1")).unwrap(),
            j3.element_of(&w("h1")).unwrap()
        );

        let o3 = enumerate(&build_origami_presentation(3, true).unwrap()).unwrap();
        assert_eq!(o3.size(), 45);
        assert_eq!(
            o3.element_of(&w("a1 b2")).unwrap(),
            o3.element_of(&w("b2 a1")).unwrap()
        );
        assert!(o3.element_of(&w("h1")).is_err());
    }

    #[test]
    fn tables_are_consistent() {
        for p in [
            build_jones_presentation(4).unwrap(),
            build_origami_presentation(3, false).unwrap(),
        ] {
            let m = enumerate(&p).unwrap();
            assert!(m.validate());
            for a in m.elements() {
                assert_eq!(m.product(ElementId::IDENTITY, a), a);
                assert_eq!(m.product(a, ElementId::IDENTITY), a);
                assert_eq!(a == ElementId::IDENTITY, m.rep(a).is_empty());
            }
        }
    }

    #[test]
    fn node_cap_is_enforced() {
        let p = build_origami_presentation(4, true).unwrap();
        let err = tc_enumerate(&p, TcOptions { max_nodes: 50 }).unwrap_err();
        assert_eq!(err, Error::MemoryBudgetExceeded(50));
    }
}
