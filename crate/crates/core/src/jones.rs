//! Planar diagrams for `J_n` and Jones normal forms.
//!
//! A diagram on `n` strands has `2n` endpoints, numbered around the boundary:
//! top points `T1..Tn` are `0..n` left to right, bottom points `Bn..B1` are
//! `n..2n` right to left. In that circular order a perfect matching is planar
//! exactly when its pairs nest like parentheses. The matching is stored as an
//! involution `mate[x]`.

use alloc::collections::BTreeMap;
use alloc::format;
use alloc::string::String;
use alloc::vec;
use alloc::vec::Vec;
use core::fmt;
use core::str::FromStr;

use crate::congruence::MonoidTable;
use crate::error::{Error, Result};
use crate::origami::require_family;
use crate::report::Report;
use crate::words::{Family, Generator, Kind, Word};

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Side {
    Top,
    Bottom,
}

/// An endpoint `T<pos>` or `B<pos>` with 1-based `pos`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Endpoint {
    pub pos: usize,
    pub side: Side,
}

impl fmt::Display for Endpoint {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.side {
            Side::Top => write!(f, "T{}", self.pos),
            Side::Bottom => write!(f, "B{}", self.pos),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct JonesDiagram {
    mate: Vec<u8>,
}

/// Result of stacking two diagrams.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Product {
    pub diagram: JonesDiagram,
    pub loops: usize,
}

impl JonesDiagram {
    pub fn rank(&self) -> usize {
        self.mate.len() / 2
    }

    fn code(&self, e: Endpoint) -> usize {
        let n = self.rank();
        match e.side {
            Side::Top => e.pos - 1,
            Side::Bottom => 2 * n - e.pos,
        }
    }

    fn endpoint(&self, code: usize) -> Endpoint {
        let n = self.rank();
        if code < n {
            Endpoint {
                pos: code + 1,
                side: Side::Top,
            }
        } else {
            Endpoint {
                pos: 2 * n - code,
                side: Side::Bottom,
            }
        }
    }

    pub fn mate_of(&self, e: Endpoint) -> Endpoint {
        self.endpoint(self.mate[self.code(e)] as usize)
    }

    /// Builds a diagram from endpoint pairs, checking it is a planar perfect matching.
    pub fn from_pairs(n: usize, pairs: &[(Endpoint, Endpoint)]) -> Result<Self> {
        let mut d = JonesDiagram {
            mate: vec![u8::MAX; 2 * n],
        };
        for &(a, b) in pairs {
            for e in [a, b] {
                if e.pos == 0 || e.pos > n {
                    return Err(Error::IndexOutOfRange {
                        index: e.pos,
                        rank: n,
                    });
                }
            }
            let (x, y) = (d.code(a), d.code(b));
            if x == y || d.mate[x] != u8::MAX || d.mate[y] != u8::MAX {
                return Err(Error::Parse(String::from("not a perfect matching")));
            }
            d.mate[x] = y as u8;
            d.mate[y] = x as u8;
        }
        if !d.is_valid() {
            return Err(Error::Parse(String::from("not a planar perfect matching")));
        }
        Ok(d)
    }

    /// Pairs, each written smaller endpoint first and sorted by that endpoint
    /// (position, then top before bottom).
    pub fn pairs(&self) -> Vec<(Endpoint, Endpoint)> {
        let key = |e: &Endpoint| (e.pos, e.side);
        let mut out: Vec<_> = (0..self.mate.len())
            .filter(|&x| x < self.mate[x] as usize)
            .map(|x| {
                let (a, b) = (self.endpoint(x), self.endpoint(self.mate[x] as usize));
                if key(&a) <= key(&b) {
                    (a, b)
                } else {
                    (b, a)
                }
            })
            .collect();
        out.sort_by_key(|(a, _)| key(a));
        out
    }

    /// Perfect matching and non-crossing.
    pub fn is_valid(&self) -> bool {
        let m = self.mate.len();
        if !m.is_multiple_of(2) {
            return false;
        }
        let mut stack = Vec::new();
        for x in 0..m {
            let y = self.mate[x] as usize;
            if y >= m || y == x || self.mate[y] as usize != x {
                return false;
            }
            if y > x {
                stack.push(x);
            } else if stack.pop() != Some(y) {
                return false;
            }
        }
        stack.is_empty()
    }

    /// Number of top-to-top pairs; equals the number of bottom-to-bottom pairs.
    pub fn cap_count(&self) -> usize {
        let n = self.rank();
        (0..n)
            .filter(|&x| (self.mate[x] as usize) < n && (self.mate[x] as usize) > x)
            .count()
    }

    pub fn cup_count(&self) -> usize {
        let n = self.rank();
        (n..2 * n)
            .filter(|&x| (self.mate[x] as usize) >= n && (self.mate[x] as usize) > x)
            .count()
    }

    /// Vertical flip: the image under word reversal.
    pub fn flip(&self) -> JonesDiagram {
        let n = self.rank();
        let swap = |x: usize| 2 * n - 1 - x;
        let mut mate = vec![0u8; 2 * n];
        for x in 0..2 * n {
            mate[swap(x)] = swap(self.mate[x] as usize) as u8;
        }
        // Flipping top and bottom also mirrors the boundary order, which keeps
        // left-to-right positions: Tk <-> Bk.
        JonesDiagram { mate }
    }
}

pub fn identity_diagram(n: usize) -> JonesDiagram {
    let mut mate = vec![0u8; 2 * n];
    for x in 0..n {
        mate[x] = (2 * n - 1 - x) as u8;
        mate[2 * n - 1 - x] = x as u8;
    }
    JonesDiagram { mate }
}

/// The diagram of `h_i`: caps `Ti-T(i+1)` and `Bi-B(i+1)`, all other strands vertical.
pub fn generator_diagram(i: usize, n: usize) -> Result<JonesDiagram> {
    if i == 0 || i >= n {
        return Err(Error::IndexOutOfRange { index: i, rank: n });
    }
    let mut d = identity_diagram(n);
    let (t1, t2) = (i - 1, i);
    let (b1, b2) = (2 * n - i, 2 * n - i - 1);
    d.mate[t1] = t2 as u8;
    d.mate[t2] = t1 as u8;
    d.mate[b1] = b2 as u8;
    d.mate[b2] = b1 as u8;
    Ok(d)
}

/// Stacks `a` on top of `b`, identifying `a`'s bottom row with `b`'s top row,
/// and counts the closed loops removed.
pub fn diagram_mul(a: &JonesDiagram, b: &JonesDiagram) -> Result<Product> {
    let n = a.rank();
    if b.rank() != n {
        return Err(Error::RankMismatch {
            left: n,
            right: b.rank(),
        });
    }
    // A bottom point Bk of `a` (code 2n-k) meets top point Tk of `b` (code k-1).
    let a_to_b = |x: usize| 2 * n - 1 - x;
    let mut mate = vec![u8::MAX; 2 * n];
    let mut middle_seen = vec![false; n];

    // Result codes: a's top keeps codes 0..n, b's bottom keeps codes n..2n.
    for start in 0..2 * n {
        if mate[start] != u8::MAX {
            continue;
        }
        // (in_a, code within that diagram)
        let (mut in_a, mut x) = if start < n {
            (true, start)
        } else {
            (false, start)
        };
        let end = loop {
            let y = if in_a {
                a.mate[x] as usize
            } else {
                b.mate[x] as usize
            };
            if in_a && y < n {
                break y;
            }
            if !in_a && y >= n {
                break y;
            }
            if in_a {
                // y is a bottom point of a
                let t = a_to_b(y);
                middle_seen[t] = true;
                in_a = false;
                x = t;
            } else {
                // y is a top point of b
                middle_seen[y] = true;
                in_a = true;
                x = a_to_b(y);
            }
        };
        mate[start] = end as u8;
        mate[end] = start as u8;
    }

    // Whatever middle points were never reached lie on closed loops.
    let mut loops = 0;
    for s in 0..n {
        if middle_seen[s] {
            continue;
        }
        loops += 1;
        let mut t = s;
        loop {
            middle_seen[t] = true;
            // down through b, back up through a
            let y = b.mate[t] as usize;
            middle_seen[y] = true;
            let x = a.mate[a_to_b(y)] as usize;
            t = a_to_b(x);
            if middle_seen[t] {
                break;
            }
        }
    }
    Ok(Product {
        diagram: JonesDiagram { mate },
        loops,
    })
}

/// Left-to-right product of the generator diagrams of an `h`-word.
pub fn diagram_of_word(w: &[Generator], n: usize) -> Result<JonesDiagram> {
    let mut d = identity_diagram(n);
    for &g in w {
        if g.kind() != Kind::H {
            return Err(Error::KindMismatch(g));
        }
        d = diagram_mul(&d, &generator_diagram(g.index(), n)?)?.diagram;
    }
    Ok(d)
}

impl fmt::Display for JonesDiagram {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("[")?;
        for (k, (a, b)) in self.pairs().iter().enumerate() {
            if k > 0 {
                f.write_str(",")?;
            }
            write!(f, "({a},{b})")?;
        }
        f.write_str("]")
    }
}

fn parse_endpoint(s: &str) -> Result<Endpoint> {
    let bad = || Error::Parse(String::from(s));
    let side = match s.as_bytes().first() {
        Some(b'T') => Side::Top,
        Some(b'B') => Side::Bottom,
        _ => return Err(bad()),
    };
    let pos: usize = s[1..].parse().map_err(|_| bad())?;
    Ok(Endpoint { pos, side })
}

impl FromStr for JonesDiagram {
    type Err = Error;

    /// Parses the `[(T1,T2),(B1,B2),(T3,B3)]` pair list.
    fn from_str(s: &str) -> Result<Self> {
        let compact: String = s.chars().filter(|c| !c.is_whitespace()).collect();
        let inner = compact
            .strip_prefix('[')
            .and_then(|x| x.strip_suffix(']'))
            .ok_or_else(|| Error::Parse(String::from(s)))?;
        let mut pairs = Vec::new();
        if !inner.is_empty() {
            for chunk in inner.split("),") {
                let chunk = chunk.trim_start_matches('(').trim_end_matches(')');
                let (a, b) = chunk
                    .split_once(',')
                    .ok_or_else(|| Error::Parse(String::from(chunk)))?;
                pairs.push((parse_endpoint(a)?, parse_endpoint(b)?));
            }
        }
        JonesDiagram::from_pairs(pairs.len(), &pairs)
    }
}

/// A Jones normal form `h[j1,i1] h[j2,i2] ... h[jk,ik]` with
/// `h[j,i] = h_j h_(j-1) ... h_i`, `j1 < j2 < ...` and `i1 < i2 < ...`.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Default)]
pub struct JnfWord {
    blocks: Vec<(u8, u8)>,
}

impl JnfWord {
    pub fn empty() -> Self {
        JnfWord::default()
    }

    /// Checks `j >= i >= 1` per block and strict increase of both sequences.
    pub fn new(blocks: Vec<(u8, u8)>) -> Option<Self> {
        let ok = blocks.iter().all(|&(j, i)| i >= 1 && j >= i)
            && blocks
                .windows(2)
                .all(|p| p[0].0 < p[1].0 && p[0].1 < p[1].1);
        ok.then_some(JnfWord { blocks })
    }

    /// `(top, bottom)` index of each block.
    pub fn blocks(&self) -> &[(u8, u8)] {
        &self.blocks
    }

    pub fn is_empty(&self) -> bool {
        self.blocks.is_empty()
    }

    pub fn len(&self) -> usize {
        self.blocks.iter().map(|&(j, i)| (j - i + 1) as usize).sum()
    }

    /// Spells the form with letters of the given kind.
    pub fn to_word(&self, kind: Kind) -> Word {
        let mut w = Word::empty();
        for &(j, i) in &self.blocks {
            for x in (i..=j).rev() {
                w.push(Generator::new(kind, x));
            }
        }
        w
    }

    pub fn first_index(&self) -> Option<usize> {
        self.blocks.first().map(|&(j, _)| j as usize)
    }

    pub fn last_index(&self) -> Option<usize> {
        self.blocks.last().map(|&(_, i)| i as usize)
    }
}

/// All Jones normal forms for `J_n`, in shortlex order of their `h`-words.
pub fn enumerate_jnf(n: usize) -> Vec<JnfWord> {
    fn extend(n: usize, cur: &mut Vec<(u8, u8)>, out: &mut Vec<JnfWord>) {
        out.push(JnfWord {
            blocks: cur.clone(),
        });
        let (jmin, imin) = cur.last().map(|&(j, i)| (j + 1, i + 1)).unwrap_or((1, 1));
        for j in jmin..n as u8 {
            for i in imin..=j {
                cur.push((j, i));
                extend(n, cur, out);
                cur.pop();
            }
        }
    }
    let mut out = Vec::new();
    if n >= 1 {
        extend(n, &mut Vec::new(), &mut out);
    }
    out.sort_by_cached_key(|f| f.to_word(Kind::H));
    out
}

/// Lookup from diagrams to their Jones normal form.
#[derive(Debug, Clone)]
pub struct JnfIndex {
    rank: usize,
    by_diagram: BTreeMap<JonesDiagram, JnfWord>,
}

impl JnfIndex {
    pub fn new(n: usize) -> Result<Self> {
        let mut by_diagram = BTreeMap::new();
        for f in enumerate_jnf(n) {
            by_diagram.insert(diagram_of_word(&f.to_word(Kind::H), n)?, f);
        }
        Ok(JnfIndex {
            rank: n,
            by_diagram,
        })
    }

    pub fn len(&self) -> usize {
        self.by_diagram.len()
    }

    pub fn is_empty(&self) -> bool {
        self.by_diagram.is_empty()
    }

    /// Jones normal form of the element spelled by `w`, read with every letter
    /// as `h` of the same index (so `a`- and `b`-words are accepted).
    pub fn normal_form(&self, w: &[Generator]) -> Result<JnfWord> {
        let h = Word::from_vec(w.to_vec()).relabel(Kind::H);
        let d = diagram_of_word(&h, self.rank)?;
        Ok(self.by_diagram.get(&d).cloned().unwrap_or_default())
    }

    /// Normal form of the reversed element.
    pub fn reversed(&self, f: &JnfWord) -> Result<JnfWord> {
        self.normal_form(&f.to_word(Kind::H).reverse())
    }

    pub fn forms(&self) -> impl Iterator<Item = &JnfWord> {
        self.by_diagram.values()
    }
}

/// `C_n = binom(2n, n) / (n + 1)`.
pub fn catalan(n: u64) -> u64 {
    let mut c: u64 = 1;
    for k in 0..n {
        c = c * 2 * (2 * k + 1) / (k + 2);
    }
    c
}

/// Checks an enumerated `J_n` against the diagram model: representatives go
/// to distinct diagrams, there are `C_n` of them, and both Cayley tables agree
/// with diagram multiplication by a generator on either side.
pub fn check_diagram_oracle(j: &MonoidTable) -> Result<Report> {
    require_family(j, Family::Jones)?;
    let n = j.rank();
    let mut rep = Report::new("diagrams", n);
    let diagrams = j
        .elements()
        .map(|e| diagram_of_word(j.rep(e), n))
        .collect::<Result<Vec<_>>>()?;
    let mut sorted = diagrams.clone();
    sorted.sort();
    sorted.dedup();
    rep.check(sorted.len() == diagrams.len(), || {
        "two elements share a diagram".into()
    });
    let c = catalan(n as u64);
    rep.check(diagrams.len() as u64 == c, || {
        format!("{} elements, expected C_n = {c}", diagrams.len())
    });
    let gens = (1..n)
        .map(|i| generator_diagram(i, n))
        .collect::<Result<Vec<_>>>()?;
    for e in j.elements() {
        let d = &diagrams[e.index()];
        for (g, h) in gens.iter().enumerate() {
            let r = diagram_mul(d, h)?.diagram;
            let l = diagram_mul(h, d)?.diagram;
            rep.check(r == diagrams[j.right(e, g).index()], || {
                format!("{} * h{}", j.rep(e), g + 1)
            });
            rep.check(l == diagrams[j.left(e, g).index()], || {
                format!("h{} * {}", g + 1, j.rep(e))
            });
        }
    }
    rep.metric("diagrams", diagrams.len() as u64);
    Ok(rep)
}

#[cfg(test)]
mod tests {
    use super::*;
    use alloc::collections::BTreeSet;
    use alloc::string::ToString;

    fn h(s: &str) -> Word {
        s.parse().unwrap()
    }

    fn ep(s: &str) -> Endpoint {
        parse_endpoint(s).unwrap()
    }

    #[test]
    fn identity() {
        let id = identity_diagram(2);
        assert_eq!(id.to_string(), "[(T1,B1),(T2,B2)]");
        assert_eq!(id.cap_count(), 0);
        let g = generator_diagram(1, 2).unwrap();
        assert_eq!(diagram_mul(&id, &g).unwrap().diagram, g);
        assert_eq!(diagram_mul(&g, &id).unwrap().diagram, g);
    }

    #[test]
    fn generators() {
        assert_eq!(
            generator_diagram(1, 2).unwrap().to_string(),
            "[(T1,T2),(B1,B2)]"
        );
        let g = generator_diagram(2, 4).unwrap();
        assert_eq!(g.to_string(), "[(T1,B1),(T2,T3),(B2,B3),(T4,B4)]");
        assert_eq!(g.mate_of(ep("T2")), ep("T3"));
        assert_eq!(g.mate_of(ep("B3")), ep("B2"));
        assert_eq!(g.cap_count(), 1);
        assert!(generator_diagram(0, 3).is_err());
        assert!(generator_diagram(3, 3).is_err());
        for n in 2..=8 {
            for i in 1..n {
                let g = generator_diagram(i, n).unwrap();
                assert!(g.is_valid());
                assert_eq!(g.cap_count(), 1);
                assert_eq!(g.cup_count(), 1);
            }
        }
    }

    #[test]
    fn products() {
        let h1 = generator_diagram(1, 2).unwrap();
        let p = diagram_mul(&h1, &h1).unwrap();
        assert_eq!(
            p,
            Product {
                diagram: h1.clone(),
                loops: 1
            }
        );

        let a = generator_diagram(1, 3).unwrap();
        let b = generator_diagram(2, 3).unwrap();
        let ab = diagram_mul(&a, &b).unwrap();
        let aba = diagram_mul(&ab.diagram, &a).unwrap();
        assert_eq!(aba.diagram, a);
        assert_eq!(ab.loops + aba.loops, 0);

        assert_eq!(
            diagram_of_word(&h("h1 h3"), 4).unwrap(),
            diagram_of_word(&h("h3 h1"), 4).unwrap()
        );
        assert_ne!(
            diagram_of_word(&h("h1 h2"), 3).unwrap(),
            diagram_of_word(&h("h2 h1"), 3).unwrap()
        );
        assert!(matches!(
            diagram_mul(&identity_diagram(2), &identity_diagram(3)),
            Err(Error::RankMismatch { .. })
        ));
    }

    #[test]
    fn caps() {
        assert_eq!(diagram_of_word(&h("h1 h3"), 5).unwrap().cap_count(), 2);
        assert_eq!(
            diagram_of_word(&Word::empty(), 4).unwrap(),
            identity_diagram(4)
        );
        assert_eq!(
            diagram_of_word(&h("h1 h3"), 5).unwrap().to_string(),
            "[(T1,T2),(B1,B2),(T3,T4),(B3,B4),(T5,B5)]"
        );
    }

    #[test]
    fn all_diagrams_of_j4_from_short_words() {
        let mut seen = BTreeSet::new();
        let mut level = vec![Word::empty()];
        for _ in 0..=6 {
            let mut next = Vec::new();
            for w in &level {
                seen.insert(diagram_of_word(w, 4).unwrap());
                for i in 1..4u8 {
                    let mut v = w.clone();
                    v.push(Generator::h(i));
                    next.push(v);
                }
            }
            level = next;
        }
        assert_eq!(seen.len(), 14);
    }

    #[test]
    fn jnf_small() {
        let forms: Vec<_> = enumerate_jnf(3)
            .iter()
            .map(|f| f.blocks().to_vec())
            .collect();
        assert_eq!(
            forms,
            vec![
                vec![],
                vec![(1, 1)],
                vec![(2, 2)],
                vec![(1, 1), (2, 2)],
                vec![(2, 1)]
            ]
        );
        assert_eq!(enumerate_jnf(2).len(), 2);
        assert_eq!(enumerate_jnf(6).len(), 132);
        assert!(JnfWord::new(vec![(2, 1), (3, 1)]).is_none());
        assert!(JnfWord::new(vec![(1, 2)]).is_none());
        assert_eq!(
            JnfWord::new(vec![(3, 1), (4, 2)])
                .unwrap()
                .to_word(Kind::Alpha),
            h("a3 a2 a1 a4 a3 a2")
        );
    }

    #[test]
    fn jnf_is_a_bijection_onto_diagrams() {
        for n in 2..=7 {
            let idx = JnfIndex::new(n).unwrap();
            assert_eq!(idx.len() as u64, catalan(n as u64), "n={n}");
        }
    }

    #[test]
    fn catalan_values() {
        let want = [1u64, 1, 2, 5, 14, 42, 132, 429, 1430];
        for (n, c) in want.iter().enumerate() {
            assert_eq!(catalan(n as u64), *c);
        }
    }

    #[test]
    fn diagram_text_round_trip() {
        for s in [
            "[(T1,T2),(B1,B2),(T3,B3)]",
            "[(T1,B1)]",
            "[(T1,T4),(B1,B2),(T2,T3),(B3,B4)]",
        ] {
            let d: JonesDiagram = s.parse().unwrap();
            assert_eq!(d.to_string(), s);
        }
        assert!("[(T1,B2),(T2,B1)]".parse::<JonesDiagram>().is_err());
        assert!("[(T1,T2)]".parse::<JonesDiagram>().is_err());
    }

    #[test]
    fn flip_matches_reversal() {
        let w = h("h1 h2 h3 h1");
        let d = diagram_of_word(&w, 4).unwrap();
        assert_eq!(d.flip(), diagram_of_word(&w.reverse(), 4).unwrap());
    }
}
