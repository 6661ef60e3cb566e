//! Green's relations of an enumerated monoid.
//!
//! R-classes are the strongly connected components of the right Cayley graph,
//! L-classes those of the left one, and J-classes those of the union of both.
//! H is the intersection of R and L, and D is the join of R and L (computed
//! with a union-find). The two-sided graph condensed to its J-classes gives
//! the ideal order, which is reduced to its covering pairs.

use alloc::collections::BTreeMap;
use alloc::format;
use alloc::vec;
use alloc::vec::Vec;

use crate::congruence::{ElementId, MonoidTable};
use crate::error::{Error, Result};
use crate::jones::diagram_of_word;
use crate::origami::{core, p_alpha, p_beta, require_family};
use crate::report::Report;
use crate::words::{Family, Generator, Kind, Word};

/// Strongly connected components of the graph `x -> table[x * k + g]` over
/// all given tables, numbered by their least member. Iterative Tarjan.
fn components(size: usize, k: usize, tables: &[&[u32]]) -> Vec<u32> {
    const NONE: u32 = u32::MAX;
    let mut index = vec![NONE; size];
    let mut low = vec![0u32; size];
    let mut on_stack = vec![false; size];
    let mut comp = vec![NONE; size];
    let mut stack: Vec<u32> = Vec::new();
    // (node, next edge to try)
    let mut calls: Vec<(u32, usize)> = Vec::new();
    let mut next_index = 0u32;
    let mut raw_count = 0u32;
    let edges = k * tables.len();
    let succ = |x: usize, e: usize| tables[e / k][x * k + e % k];

    for root in 0..size {
        if index[root] != NONE {
            continue;
        }
        calls.push((root as u32, 0));
        index[root] = next_index;
        low[root] = next_index;
        next_index += 1;
        stack.push(root as u32);
        on_stack[root] = true;
        while let Some(&mut (v, ref mut e)) = calls.last_mut() {
            let v = v as usize;
            if *e < edges {
                let w = succ(v, *e) as usize;
                *e += 1;
                if index[w] == NONE {
                    index[w] = next_index;
                    low[w] = next_index;
                    next_index += 1;
                    stack.push(w as u32);
                    on_stack[w] = true;
                    calls.push((w as u32, 0));
                } else if on_stack[w] {
                    low[v] = low[v].min(index[w]);
                }
                continue;
            }
            calls.pop();
            if let Some(&(parent, _)) = calls.last() {
                let p = parent as usize;
                low[p] = low[p].min(low[v]);
            }
            if low[v] == index[v] {
                loop {
                    let w = stack.pop().unwrap_or(v as u32) as usize;
                    on_stack[w] = false;
                    comp[w] = raw_count;
                    if w == v {
                        break;
                    }
                }
                raw_count += 1;
            }
        }
    }
    renumber(&comp)
}

/// Renumbers class labels in order of first occurrence.
fn renumber(labels: &[u32]) -> Vec<u32> {
    let mut map = BTreeMap::new();
    labels
        .iter()
        .map(|&l| {
            let next = map.len() as u32;
            *map.entry(l).or_insert(next)
        })
        .collect()
}

fn find(parent: &mut [u32], mut x: u32) -> u32 {
    while parent[x as usize] != x {
        let up = parent[parent[x as usize] as usize];
        parent[x as usize] = up;
        x = up;
    }
    x
}

fn members(labels: &[u32]) -> Vec<Vec<ElementId>> {
    let count = labels.iter().map(|&l| l as usize + 1).max().unwrap_or(0);
    let mut out = vec![Vec::new(); count];
    for (e, &l) in labels.iter().enumerate() {
        out[l as usize].push(ElementId(e as u32));
    }
    out
}

/// Bitset rows over the D-classes.
#[derive(Debug, Clone, PartialEq, Eq)]
struct Closure {
    words: usize,
    bits: Vec<u64>,
}

impl Closure {
    fn new(n: usize) -> Self {
        let words = n.div_ceil(64);
        Closure {
            words,
            bits: vec![0; n * words],
        }
    }

    fn get(&self, a: usize, b: usize) -> bool {
        self.bits[a * self.words + b / 64] >> (b % 64) & 1 == 1
    }

    fn set(&mut self, a: usize, b: usize) {
        self.bits[a * self.words + b / 64] |= 1 << (b % 64);
    }

    fn or_row(&mut self, dst: usize, src: usize) {
        for w in 0..self.words {
            let x = self.bits[src * self.words + w];
            self.bits[dst * self.words + w] |= x;
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GreensStructure {
    r: Vec<u32>,
    l: Vec<u32>,
    h: Vec<u32>,
    d: Vec<u32>,
    j: Vec<u32>,
    r_members: Vec<Vec<ElementId>>,
    l_members: Vec<Vec<ElementId>>,
    h_members: Vec<Vec<ElementId>>,
    d_members: Vec<Vec<ElementId>>,
    j_members: Vec<Vec<ElementId>>,
    /// `below.get(a, b)`: D-class `b` lies strictly below `a` in the ideal order.
    below: Closure,
    covers: Vec<(u32, u32)>,
}

/// Which relation a class table refers to.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Relation {
    R,
    L,
    H,
    D,
    J,
}

impl Relation {
    pub const ALL: [Relation; 5] = [
        Relation::R,
        Relation::L,
        Relation::H,
        Relation::D,
        Relation::J,
    ];

    pub const fn name(self) -> &'static str {
        match self {
            Relation::R => "R",
            Relation::L => "L",
            Relation::H => "H",
            Relation::D => "D",
            Relation::J => "J",
        }
    }
}

pub fn compute_greens(m: &MonoidTable) -> GreensStructure {
    let size = m.size();
    let k = m.generator_count();
    let r = components(size, k, &[m.right_table()]);
    let l = components(size, k, &[m.left_table()]);
    let j = components(size, k, &[m.right_table(), m.left_table()]);

    let mut pairs = BTreeMap::new();
    let h_raw: Vec<u32> = (0..size)
        .map(|e| {
            let next = pairs.len() as u32;
            *pairs.entry((r[e], l[e])).or_insert(next)
        })
        .collect();
    let h = renumber(&h_raw);

    // D = join of R and L: link every element to the first member of its
    // R-class and of its L-class.
    let mut parent: Vec<u32> = (0..size as u32).collect();
    let mut first_r = vec![u32::MAX; size];
    let mut first_l = vec![u32::MAX; size];
    for e in 0..size as u32 {
        for (first, class) in [(&mut first_r, r[e as usize]), (&mut first_l, l[e as usize])] {
            let slot = &mut first[class as usize];
            if *slot == u32::MAX {
                *slot = e;
            } else {
                let (a, b) = (find(&mut parent, *slot), find(&mut parent, e));
                if a != b {
                    parent[a.max(b) as usize] = a.min(b);
                }
            }
        }
    }
    let d_raw: Vec<u32> = (0..size as u32).map(|e| find(&mut parent, e)).collect();
    let d = renumber(&d_raw);

    let d_members = members(&d);
    let classes = d_members.len();

    // Ideal order: condense the two-sided graph on D, then close transitively.
    let mut below = Closure::new(classes);
    for e in 0..size {
        for g in 0..k {
            for t in [
                m.right(ElementId(e as u32), g),
                m.left(ElementId(e as u32), g),
            ] {
                let (a, b) = (d[e] as usize, d[t.index()] as usize);
                if a != b {
                    below.set(a, b);
                }
            }
        }
    }
    loop {
        let before = below.bits.clone();
        for a in 0..classes {
            for b in 0..classes {
                if below.get(a, b) {
                    below.or_row(a, b);
                }
            }
        }
        if below.bits == before {
            break;
        }
    }
    let mut covers = Vec::new();
    for a in 0..classes {
        for b in 0..classes {
            if a != b
                && below.get(a, b)
                && !(0..classes).any(|c| c != a && c != b && below.get(a, c) && below.get(c, b))
            {
                covers.push((a as u32, b as u32));
            }
        }
    }

    GreensStructure {
        r_members: members(&r),
        l_members: members(&l),
        h_members: members(&h),
        d_members,
        j_members: members(&j),
        r,
        l,
        h,
        d,
        j,
        below,
        covers,
    }
}

impl GreensStructure {
    pub fn class_of(&self, rel: Relation, e: ElementId) -> u32 {
        self.labels(rel)[e.index()]
    }

    pub fn labels(&self, rel: Relation) -> &[u32] {
        match rel {
            Relation::R => &self.r,
            Relation::L => &self.l,
            Relation::H => &self.h,
            Relation::D => &self.d,
            Relation::J => &self.j,
        }
    }

    pub fn classes(&self, rel: Relation) -> &[Vec<ElementId>] {
        match rel {
            Relation::R => &self.r_members,
            Relation::L => &self.l_members,
            Relation::H => &self.h_members,
            Relation::D => &self.d_members,
            Relation::J => &self.j_members,
        }
    }

    pub fn class_count(&self, rel: Relation) -> usize {
        self.classes(rel).len()
    }

    pub fn d_class_of(&self, e: ElementId) -> u32 {
        self.d[e.index()]
    }

    /// `MbM` is strictly contained in `MaM` for D-classes `a`, `b`.
    pub fn d_below(&self, a: u32, b: u32) -> bool {
        self.below.get(a as usize, b as usize)
    }

    /// Covering pairs `(upper, lower)` of the D-class order.
    pub fn d_order(&self) -> &[(u32, u32)] {
        &self.covers
    }

    /// D and J give the same partition (with the same numbering, since both
    /// are numbered by first element).
    pub fn d_equals_j(&self) -> bool {
        self.d == self.j
    }

    pub fn is_h_trivial(&self) -> bool {
        self.h_members.iter().all(|c| c.len() == 1)
    }

    /// Rows are the R-classes inside D-class `d`, columns its L-classes, both
    /// in order of their least element; each cell lists the H-class.
    pub fn egg_box(&self, d: u32) -> Result<Vec<Vec<Vec<ElementId>>>> {
        let elems = self
            .d_members
            .get(d as usize)
            .ok_or(Error::NoCandidate(d))?;
        let mut rows: Vec<u32> = Vec::new();
        let mut cols: Vec<u32> = Vec::new();
        for &e in elems {
            if !rows.contains(&self.r[e.index()]) {
                rows.push(self.r[e.index()]);
            }
            if !cols.contains(&self.l[e.index()]) {
                cols.push(self.l[e.index()]);
            }
        }
        let mut boxm = vec![vec![Vec::new(); cols.len()]; rows.len()];
        for &e in elems {
            let ri = rows
                .iter()
                .position(|&x| x == self.r[e.index()])
                .unwrap_or(0);
            let ci = cols
                .iter()
                .position(|&x| x == self.l[e.index()])
                .unwrap_or(0);
            boxm[ri][ci].push(e);
        }
        Ok(boxm)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Aperiodicity {
    pub aperiodic: bool,
    /// Largest, over all elements, of the least `k >= 2` with `a^k = a^(k-1)`
    /// (meaningful only when aperiodic).
    pub exponent: usize,
}

pub fn is_aperiodic(m: &MonoidTable) -> Aperiodicity {
    let mut exponent = 1;
    for a in m.elements() {
        let mut powers = vec![a];
        loop {
            let last = *powers.last().unwrap_or(&a);
            let next = m.product(last, a);
            if next == last {
                exponent = exponent.max(powers.len() + 1);
                break;
            }
            if powers.contains(&next) {
                return Aperiodicity {
                    aperiodic: false,
                    exponent,
                };
            }
            powers.push(next);
        }
    }
    Aperiodicity {
        aperiodic: true,
        exponent,
    }
}

fn reversal_map(m: &MonoidTable) -> Result<Vec<ElementId>> {
    m.elements()
        .map(|e| m.element_of(&m.rep(e).reverse()))
        .collect()
}

/// `w w^R w = w` for every element; with `check_pairs`, also that reversal is
/// an involutive anti-automorphism: `(ab)^R = b^R a^R` for all pairs.
pub fn check_regular_r(m: &MonoidTable, check_pairs: bool) -> Result<Report> {
    let mut rep = Report::new("regular-r", m.rank());
    for e in m.elements() {
        let w = m.rep(e);
        let www = w.concat(&w.reverse()).concat(w);
        rep.check(m.element_of(&www)? == e, || {
            format!("{w} {} {w} != {w}", w.reverse())
        });
    }
    let rev = reversal_map(m)?;
    for e in m.elements() {
        rep.check(rev[rev[e.index()].index()] == e, || {
            format!("reversal is not involutive on {}", m.rep(e))
        });
    }
    if check_pairs {
        for a in m.elements() {
            for b in m.elements() {
                let lhs = rev[m.product(a, b).index()];
                let rhs = m.product(rev[b.index()], rev[a.index()]);
                rep.check(lhs == rhs, || {
                    format!("reversal of {} * {}", m.rep(a), m.rep(b))
                });
            }
        }
    }
    Ok(rep)
}

/// Every element is D-related to its core.
pub fn check_core_d_related(m: &MonoidTable, g: &GreensStructure) -> Result<Report> {
    require_family(m, Family::Origami)?;
    let mut rep = Report::new("core", m.rank());
    for e in m.elements() {
        let c = m.element_of(&core(m.rep(e))?)?;
        rep.check(g.d_class_of(e) == g.d_class_of(c), || {
            format!("{} not D-related to its core", m.rep(e))
        });
    }
    Ok(rep)
}

/// H-classes are singletons, D = J, and the monoid is aperiodic.
pub fn check_h_trivial(m: &MonoidTable, g: &GreensStructure) -> Report {
    let mut rep = Report::new("h-trivial", m.rank());
    for c in g.classes(Relation::H) {
        rep.check(c.len() == 1, || {
            format!("H-class of {} has {} elements", m.rep(c[0]), c.len())
        });
    }
    rep.check(g.d_equals_j(), || "D and J differ".into());
    let ap = is_aperiodic(m);
    rep.check(ap.aperiodic, || {
        "some element has a nontrivial power cycle".into()
    });
    rep.metric("h_classes", g.class_count(Relation::H) as u64);
    rep.metric("aperiodicity_exponent", ap.exponent as u64);
    rep
}

/// D-classes of `J_n` are exactly the fibers of the cap count, and there are
/// `floor(n/2) + 1` of them.
pub fn check_jones_caps(j: &MonoidTable, g: &GreensStructure) -> Result<Report> {
    require_family(j, Family::Jones)?;
    let n = j.rank();
    let mut rep = Report::new("jones-caps", n);
    let mut class_caps: BTreeMap<u32, usize> = BTreeMap::new();
    let mut caps_class: BTreeMap<usize, u32> = BTreeMap::new();
    for e in j.elements() {
        let caps = diagram_of_word(j.rep(e), n)?.cap_count();
        let d = g.d_class_of(e);
        let a = *class_caps.entry(d).or_insert(caps);
        let b = *caps_class.entry(caps).or_insert(d);
        rep.check(a == caps && b == d, || {
            format!("{} breaks the cap-count classification", j.rep(e))
        });
    }
    rep.check(g.class_count(Relation::D) == n / 2 + 1, || {
        format!(
            "{} D-classes, expected {}",
            g.class_count(Relation::D),
            n / 2 + 1
        )
    });
    Ok(rep)
}

/// `a1 a3 ... a(2p-1) b1 b3 ... b(2q-1)`.
pub fn diamond_word(p: usize, q: usize) -> Word {
    let mut w = Word::empty();
    for t in 0..p {
        w.push(Generator::alpha((2 * t + 1) as u8));
    }
    for t in 0..q {
        w.push(Generator::beta((2 * t + 1) as u8));
    }
    w
}

/// The D-classes of `O_n` correspond to pairs of D-classes of `J_n` through
/// the two projections: the map is constant on classes, bijective onto
/// `D(J_n) x D(J_n)`, and an isomorphism of the ideal orders onto the
/// product order. Also checks the class count `(floor(n/2)+1)^2` and that the
/// words [`diamond_word`] represent every class.
pub fn check_theorem_main(
    m: &MonoidTable,
    g: &GreensStructure,
    j: &MonoidTable,
    gj: &GreensStructure,
) -> Result<Report> {
    require_family(m, Family::Origami)?;
    require_family(j, Family::Jones)?;
    let n = m.rank();
    if j.rank() != n {
        return Err(Error::RankMismatch {
            left: n,
            right: j.rank(),
        });
    }
    let mut rep = Report::new("theorem", n);
    let project = |e: ElementId| -> Result<(u32, u32)> {
        let w = m.rep(e);
        let a = j.element_of(&p_alpha(w)?.relabel(Kind::H))?;
        let b = j.element_of(&p_beta(w)?.relabel(Kind::H))?;
        Ok((gj.d_class_of(a), gj.d_class_of(b)))
    };

    let classes = g.class_count(Relation::D);
    let mut image: Vec<(u32, u32)> = Vec::with_capacity(classes);
    for (c, elems) in g.classes(Relation::D).iter().enumerate() {
        let first = project(elems[0])?;
        for &e in elems {
            let p = project(e)?;
            rep.check(p == first, || {
                format!("class {c}: {} projects elsewhere", m.rep(e))
            });
        }
        image.push(first);
    }
    let mut seen = image.clone();
    seen.sort();
    seen.dedup();
    let dj = gj.class_count(Relation::D);
    rep.check(seen.len() == classes, || {
        "two D-classes project to the same pair".into()
    });
    rep.check(seen.len() == dj * dj, || {
        format!("image has {} pairs, not {}", seen.len(), dj * dj)
    });
    let expected = (n / 2 + 1) * (n / 2 + 1);
    rep.check(classes == expected, || {
        format!("{classes} D-classes, expected {expected}")
    });

    let leq = |x: u32, y: u32| x == y || gj.d_below(y, x);
    for a in 0..classes {
        for b in 0..classes {
            if a == b {
                continue;
            }
            let (pa, pb) = (image[a], image[b]);
            let product_below = leq(pb.0, pa.0) && leq(pb.1, pa.1);
            rep.check(g.d_below(a as u32, b as u32) == product_below, || {
                format!("order between classes {a} and {b} differs from the product order")
            });
        }
    }

    let mut hit = Vec::new();
    for p in 0..=n / 2 {
        for q in 0..=n / 2 {
            let e = m.element_of(&diamond_word(p, q))?;
            hit.push(g.d_class_of(e));
        }
    }
    hit.sort();
    hit.dedup();
    rep.check(hit.len() == expected, || {
        "diamond words do not hit every class".into()
    });

    rep.metric("d_classes", classes as u64);
    rep.metric("jones_d_classes", dj as u64);
    rep.metric("cover_edges", g.d_order().len() as u64);
    Ok(rep)
}
