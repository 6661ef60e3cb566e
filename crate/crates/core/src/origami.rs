//! Structure specific to `O_n`: projections and cores, regular forms, the
//! conjectured normal forms, and exhaustive sweeps over the derived identities.

use alloc::collections::BTreeMap;
use alloc::format;
use alloc::vec;
use alloc::vec::Vec;
use core::fmt;

use crate::congruence::{enumerate, ElementId, MonoidTable};
use crate::error::{Error, Result};
use crate::jones::{catalan, enumerate_jnf, JnfIndex, JnfWord};
use crate::report::Report;
use crate::words::{build_origami_presentation, Family, Generator, Kind, Presentation, Word};

fn check_origami_word(w: &[Generator]) -> Result<()> {
    match w.iter().find(|g| g.kind() == Kind::H) {
        Some(&g) => Err(Error::KindMismatch(g)),
        None => Ok(()),
    }
}

pub(crate) fn require_family(m: &MonoidTable, expected: Family) -> Result<()> {
    if m.family() == expected {
        Ok(())
    } else {
        Err(Error::WrongFamily {
            expected,
            found: m.family(),
        })
    }
}

/// Deletes every `b` letter.
pub fn p_alpha(w: &[Generator]) -> Result<Word> {
    check_origami_word(w)?;
    Ok(w.iter()
        .copied()
        .filter(|g| g.kind() == Kind::Alpha)
        .collect())
}

/// Deletes every `a` letter.
pub fn p_beta(w: &[Generator]) -> Result<Word> {
    check_origami_word(w)?;
    Ok(w.iter()
        .copied()
        .filter(|g| g.kind() == Kind::Beta)
        .collect())
}

/// `p_alpha(w) p_beta(w)`.
pub fn core(w: &[Generator]) -> Result<Word> {
    Ok(p_alpha(w)?.concat(&p_beta(w)?))
}

/// Shape of a regular-form word `g1 u v g2`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum FormTag {
    /// `u v`
    UV,
    /// `b_i u v`
    G1UV,
    /// `u v a_j`
    UVG2,
    /// `b_i u v a_j`
    G1UVG2,
}

impl FormTag {
    pub const ALL: [FormTag; 4] = [FormTag::UV, FormTag::G1UV, FormTag::UVG2, FormTag::G1UVG2];

    /// 1 for `uv`, 2 for one extra letter, 3 for both.
    pub const fn priority(self) -> u8 {
        match self {
            FormTag::UV => 1,
            FormTag::G1UV | FormTag::UVG2 => 2,
            FormTag::G1UVG2 => 3,
        }
    }

    pub const fn has_gamma1(self) -> bool {
        matches!(self, FormTag::G1UV | FormTag::G1UVG2)
    }

    pub const fn has_gamma2(self) -> bool {
        matches!(self, FormTag::UVG2 | FormTag::G1UVG2)
    }

    pub const fn name(self) -> &'static str {
        match self {
            FormTag::UV => "uv",
            FormTag::G1UV => "g1uv",
            FormTag::UVG2 => "uvg2",
            FormTag::G1UVG2 => "g1uvg2",
        }
    }
}

impl fmt::Display for FormTag {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

/// `g1 u v g2` with `u` an `a`-word and `v` a `b`-word in Jones normal form,
/// `g1 = b_i` for the first index `i` of `u` and `g2 = a_j` for the last
/// index `j` of `v`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct RegularForm {
    pub gamma1: Option<Generator>,
    pub u: JnfWord,
    pub v: JnfWord,
    pub gamma2: Option<Generator>,
    pub tag: FormTag,
}

impl RegularForm {
    /// `None` if the tag asks for `g1` with empty `u` or `g2` with empty `v`.
    pub fn new(u: JnfWord, v: JnfWord, tag: FormTag) -> Option<Self> {
        let gamma1 = if tag.has_gamma1() {
            Some(Generator::beta(u.first_index()? as u8))
        } else {
            None
        };
        let gamma2 = if tag.has_gamma2() {
            Some(Generator::alpha(v.last_index()? as u8))
        } else {
            None
        };
        Some(RegularForm {
            gamma1,
            u,
            v,
            gamma2,
            tag,
        })
    }

    pub fn word(&self) -> Word {
        let mut w = Word::empty();
        if let Some(g) = self.gamma1 {
            w.push(g);
        }
        for g in self
            .u
            .to_word(Kind::Alpha)
            .iter()
            .chain(self.v.to_word(Kind::Beta).iter())
        {
            w.push(*g);
        }
        if let Some(g) = self.gamma2 {
            w.push(g);
        }
        w
    }

    pub fn len(&self) -> usize {
        self.u.len()
            + self.v.len()
            + self.gamma1.is_some() as usize
            + self.gamma2.is_some() as usize
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }
}

impl fmt::Display for RegularForm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.word())
    }
}

/// Ordering used to pick one regular form per element: form priority, then
/// length, then `g2` absent before present, then shortlex on the word.
type SelectionKey = (u8, usize, bool, Word);

fn selection_key(f: &RegularForm) -> SelectionKey {
    (f.tag.priority(), f.len(), f.tag.has_gamma2(), f.word())
}

/// Every normal form of `J_n` spelled in `a` and in `b`, with the element it
/// evaluates to in `m`.
struct Halves {
    forms: Vec<JnfWord>,
    alpha: Vec<ElementId>,
    beta_words: Vec<Word>,
}

impl Halves {
    fn new(m: &MonoidTable) -> Result<Self> {
        let forms = enumerate_jnf(m.rank());
        let alpha = forms
            .iter()
            .map(|f| m.element_of(&f.to_word(Kind::Alpha)))
            .collect::<Result<Vec<_>>>()?;
        let beta_words = forms.iter().map(|f| f.to_word(Kind::Beta)).collect();
        Ok(Halves {
            forms,
            alpha,
            beta_words,
        })
    }

    /// Element of a candidate, computed from the element of `uv`.
    fn eval(&self, m: &MonoidTable, uv: ElementId, f: &RegularForm) -> ElementId {
        let al = m.alphabet();
        let mut e = uv;
        if let Some(g) = f.gamma1 {
            e = m.left(e, al.position(g).unwrap_or(0));
        }
        if let Some(g) = f.gamma2 {
            e = m.right(e, al.position(g).unwrap_or(0));
        }
        e
    }
}

/// The regular form of every element of an enumerated `O_n`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RegularForms {
    forms: Vec<RegularForm>,
    candidates: u64,
}

impl RegularForms {
    /// Evaluates every candidate `g1 u v g2` once and keeps the preferred one
    /// for each element.
    pub fn compute(m: &MonoidTable) -> Result<Self> {
        require_family(m, Family::Origami)?;
        let halves = Halves::new(m)?;
        let mut best: Vec<Option<(SelectionKey, RegularForm)>> = vec![None; m.size()];
        let mut candidates = 0u64;
        for (ui, u) in halves.forms.iter().enumerate() {
            for (vi, v) in halves.forms.iter().enumerate() {
                let uv = m.act(halves.alpha[ui], &halves.beta_words[vi])?;
                for tag in FormTag::ALL {
                    let Some(f) = RegularForm::new(u.clone(), v.clone(), tag) else {
                        continue;
                    };
                    candidates += 1;
                    let e = halves.eval(m, uv, &f);
                    let slot = &mut best[e.index()];
                    let key = selection_key(&f);
                    if slot.as_ref().is_none_or(|(k, _)| key < *k) {
                        *slot = Some((key, f));
                    }
                }
            }
        }
        let mut forms = Vec::with_capacity(best.len());
        for (e, slot) in best.into_iter().enumerate() {
            match slot {
                Some((_, f)) => forms.push(f),
                None => return Err(Error::NoCandidate(e as u32)),
            }
        }
        Ok(RegularForms { forms, candidates })
    }

    pub fn get(&self, e: ElementId) -> &RegularForm {
        &self.forms[e.index()]
    }

    pub fn forms(&self) -> &[RegularForm] {
        &self.forms
    }

    pub fn len(&self) -> usize {
        self.forms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.forms.is_empty()
    }

    /// Number of candidate words evaluated.
    pub fn candidates_evaluated(&self) -> u64 {
        self.candidates
    }

    pub fn tag_counts(&self) -> [usize; 4] {
        let mut out = [0; 4];
        for f in &self.forms {
            out[f.tag as usize] += 1;
        }
        out
    }
}

/// Regular form of a single element. Computes the forms of the whole monoid;
/// use [`RegularForms`] when more than one is needed.
pub fn regular_form_of(m: &MonoidTable, e: ElementId) -> Result<RegularForm> {
    if e.index() >= m.size() {
        return Err(Error::NoCandidate(e.0));
    }
    Ok(RegularForms::compute(m)?.get(e).clone())
}

/// Choices left open by the case lists that restrict the candidate forms.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct ConjectureRules {
    /// In case (3) of the `b_i`-restriction, additionally require the block
    /// tops of `v` after the second to be consecutive. Without it the
    /// candidates overcount from `n = 6` on.
    pub strict_case3: bool,
}

impl Default for ConjectureRules {
    fn default() -> Self {
        ConjectureRules { strict_case3: true }
    }
}

/// `j_(m+1) = j_m + 1` for all consecutive blocks.
pub fn tops_consecutive(f: &JnfWord) -> bool {
    f.blocks().windows(2).all(|p| p[1].0 == p[0].0 + 1)
}

/// `i_(m+1) = i_m + 1` for all consecutive blocks.
pub fn bottoms_consecutive(f: &JnfWord) -> bool {
    f.blocks().windows(2).all(|p| p[1].1 == p[0].1 + 1)
}

/// Which of the four allowed shapes a nonempty `b`-word `v` has next to a
/// leading `b_i`:
///
/// 1. `v = b_i`;
/// 2. a single block with top `i - 1`;
/// 3. two or more blocks with tops `i - 1, i + 1, ...`;
/// 4. `v = b_(i+1) b_(i+2) ... b_(i+k)`.
pub fn gamma1_case(i: usize, v: &JnfWord, rules: ConjectureRules) -> Option<u8> {
    let b = v.blocks();
    let k = b.len();
    let top = |m: usize| b[m].0 as usize;
    if k == 0 {
        return None;
    }
    if k == 1 && b[0] == (i as u8, i as u8) {
        return Some(1);
    }
    if k == 1 && top(0) + 1 == i {
        return Some(2);
    }
    if k >= 2 && top(0) + 1 == i && top(1) == i + 1 {
        if rules.strict_case3 && !(1..k - 1).all(|m| top(m + 1) == top(m) + 1) {
            return None;
        }
        return Some(3);
    }
    let singles = b.iter().all(|&(j, l)| j == l);
    if top(0) == i + 1 && singles && tops_consecutive(v) {
        return Some(4);
    }
    None
}

/// Restriction on `b_i u v [a_j]`: block tops of `u` consecutive, and `v`
/// empty or one of the four [`gamma1_case`] shapes. Shape 1 further needs the
/// block bottoms of `u` consecutive and ending at `i`, and no trailing `a_j`.
pub fn restriction_a(u: &JnfWord, v: &JnfWord, with_gamma2: bool, rules: ConjectureRules) -> bool {
    let Some(i) = u.first_index() else {
        return false;
    };
    if !tops_consecutive(u) {
        return false;
    }
    if v.is_empty() {
        return true;
    }
    match gamma1_case(i, v, rules) {
        Some(1) => !with_gamma2 && bottoms_consecutive(u) && u.last_index() == Some(i),
        Some(_) => true,
        None => false,
    }
}

/// The restrictions on candidate normal forms for one rank. The restriction
/// on `u v a_j` is the image of [`restriction_a`] under the anti-automorphism
/// `w -> bar(reverse(w))`, which swaps the two forms. The word `b_i a_i` is
/// both `b_i u` and `v a_j`; it is counted only as the former.
#[derive(Debug, Clone)]
pub struct Restrictions {
    rules: ConjectureRules,
    reversed: BTreeMap<JnfWord, JnfWord>,
}

impl Restrictions {
    pub fn new(n: usize, rules: ConjectureRules) -> Result<Self> {
        let index = JnfIndex::new(n)?;
        let mut reversed = BTreeMap::new();
        for f in index.forms() {
            reversed.insert(f.clone(), index.reversed(f)?);
        }
        Ok(Restrictions { rules, reversed })
    }

    fn rev(&self, f: &JnfWord) -> JnfWord {
        self.reversed.get(f).cloned().unwrap_or_default()
    }

    pub fn a(&self, u: &JnfWord, v: &JnfWord, with_gamma2: bool) -> bool {
        restriction_a(u, v, with_gamma2, self.rules)
    }

    pub fn b(&self, u: &JnfWord, v: &JnfWord, with_gamma1: bool) -> bool {
        if v.is_empty() || (u.is_empty() && v.len() == 1) {
            return false;
        }
        restriction_a(&self.rev(v), &self.rev(u), with_gamma1, self.rules)
    }

    pub fn admits(&self, u: &JnfWord, v: &JnfWord, tag: FormTag) -> bool {
        match tag {
            FormTag::UV => true,
            FormTag::G1UV => self.a(u, v, false),
            FormTag::UVG2 => self.b(u, v, false),
            FormTag::G1UVG2 => !u.is_empty() && self.a(u, v, true) && self.b(u, v, true),
        }
    }
}

pub fn conjecture_candidates(n: usize) -> Result<Vec<RegularForm>> {
    conjecture_candidates_with(n, ConjectureRules::default())
}

/// All words `uv`, `b_i uv`, `uv a_j`, `b_i uv a_j` admitted by the restrictions.
pub fn conjecture_candidates_with(n: usize, rules: ConjectureRules) -> Result<Vec<RegularForm>> {
    if n < 2 {
        return Err(Error::RankTooSmall(n));
    }
    let r = Restrictions::new(n, rules)?;
    let forms = enumerate_jnf(n);
    let mut out = Vec::new();
    for u in &forms {
        for v in &forms {
            for tag in FormTag::ALL {
                if r.admits(u, v, tag) {
                    if let Some(f) = RegularForm::new(u.clone(), v.clone(), tag) {
                        out.push(f);
                    }
                }
            }
        }
    }
    Ok(out)
}

/// Compares the candidate forms with the enumerated monoid: counts per
/// shape, coverage, and whether two candidates ever name the same element.
/// Equality of the counts is asserted for `n = 3, 4` and only reported otherwise.
pub fn check_conjecture(m: &MonoidTable, rules: ConjectureRules) -> Result<Report> {
    require_family(m, Family::Origami)?;
    let n = m.rank();
    let mut rep = Report::new("conjecture", n);
    let cands = conjecture_candidates_with(n, rules)?;
    let halves = Halves::new(m)?;
    let pos: BTreeMap<&JnfWord, usize> = halves
        .forms
        .iter()
        .enumerate()
        .map(|(k, f)| (f, k))
        .collect();

    let mut hits = vec![0u32; m.size()];
    let mut per_tag = [0u64; 4];
    for f in &cands {
        let (ui, vi) = (pos[&f.u], pos[&f.v]);
        let uv = m.act(halves.alpha[ui], &halves.beta_words[vi])?;
        let e = halves.eval(m, uv, f);
        hits[e.index()] += 1;
        per_tag[f.tag as usize] += 1;
    }
    let covered = hits.iter().filter(|&&h| h > 0).count() as u64;
    let shared = hits.iter().filter(|&&h| h > 1).count() as u64;
    let total = cands.len() as u64;

    for tag in FormTag::ALL {
        rep.metric(&format!("candidates_{}", tag.name()), per_tag[tag as usize]);
    }
    rep.metric("candidates", total);
    rep.metric("monoid_size", m.size() as u64);
    rep.metric("elements_covered", covered);
    rep.metric("elements_with_several_candidates", shared);
    rep.metric("strict_case3", rules.strict_case3 as u64);
    rep.note(
        "restriction on u v a_j taken as the mirror image of the b_i u v restriction \
         under w -> bar(reverse(w)); b_i a_i counted once, as b_i u",
    );

    let injective = shared == 0;
    if n == 3 || n == 4 {
        rep.check(total == m.size() as u64, || {
            format!("{total} candidates but {} elements", m.size())
        });
        rep.check(covered == m.size() as u64, || {
            format!(
                "{} elements not written by any candidate",
                m.size() as u64 - covered
            )
        });
        rep.check(injective, || {
            format!("{shared} elements written by several candidates")
        });
    } else {
        rep.note(format!(
            "n = {n}: {total} candidates vs {} elements, {covered} covered, {}",
            m.size(),
            if injective {
                "no element written twice"
            } else {
                "some elements written twice"
            }
        ));
    }
    Ok(rep)
}

fn same_element(m: &MonoidTable, a: &[Generator], b: &[Generator]) -> bool {
    matches!((m.element_of(a), m.element_of(b)), (Ok(x), Ok(y)) if x == y)
}

fn show(w: &[Generator]) -> Word {
    Word::from_vec(w.to_vec())
}

/// Checks the derived identities of `O_n` as element equalities:
///
/// * (a) `B A B' A' B = B A A'`, (b) `B A A' B = B A A'`, (c) `B A B A' = B A A'`
///   for `A = g_i`, `B = bar(g_i)`, `A' = g_j`, `B' = bar(g_j)`, `|i - j| = 1`;
/// * (i) `g_m a_i b_i = g_m b_i a_i` and `a_i b_i g_m = b_i a_i g_m` for `|m - i| >= 2`;
/// * (ii) `x a_i b_i y = x b_i a_i y` for all generators `x`, `y`.
pub fn verify_identities(m: &MonoidTable) -> Result<Report> {
    require_family(m, Family::Origami)?;
    let n = m.rank();
    let mut rep = Report::new("identities", n);
    let mut counts = [0u64; 5];
    let mut check = |rep: &mut Report, part: usize, lhs: &[Generator], rhs: &[Generator]| {
        counts[part] += 1;
        rep.check(same_element(m, lhs, rhs), || {
            let name = ["a", "b", "c", "i", "ii"][part];
            format!("({name}) {} != {}", show(lhs), show(rhs))
        });
    };

    for kind in [Kind::Alpha, Kind::Beta] {
        for i in 1..n {
            for j in [i.wrapping_sub(1), i + 1] {
                if j == 0 || j >= n {
                    continue;
                }
                let gi = Generator::new(kind, i as u8);
                let gj = Generator::new(kind, j as u8);
                let (bi, bj) = (gi.bar()?, gj.bar()?);
                check(&mut rep, 0, &[bi, gi, bj, gj, bi], &[bi, gi, gj]);
                check(&mut rep, 1, &[bi, gi, gj, bi], &[bi, gi, gj]);
                check(&mut rep, 2, &[bi, gi, bi, gj], &[bi, gi, gj]);
            }
        }
    }

    let gens: Vec<Generator> = m.alphabet().generators().collect();
    for i in 1..n {
        let (a, b) = (Generator::alpha(i as u8), Generator::beta(i as u8));
        for &g in &gens {
            if g.index().abs_diff(i) >= 2 {
                check(&mut rep, 3, &[g, a, b], &[g, b, a]);
                check(&mut rep, 3, &[a, b, g], &[b, a, g]);
            }
        }
        for &x in &gens {
            for &y in &gens {
                check(&mut rep, 4, &[x, a, b, y], &[x, b, a, y]);
            }
        }
    }

    for (part, c) in ["a", "b", "c", "i", "ii"].iter().zip(counts) {
        rep.metric(&format!("instances_{part}"), c);
        if c == 0 {
            rep.note(format!("part ({part}) has no instances for n = {n}"));
        }
    }
    Ok(rep)
}

/// Breadth-first words of the submonoid generated by the given letter
/// positions; each element gets its shortlex-least word in those letters.
fn submonoid_words(m: &MonoidTable, positions: &[usize]) -> Vec<(ElementId, Word)> {
    let al = m.alphabet();
    let mut word_of: BTreeMap<ElementId, Word> = BTreeMap::new();
    let mut order = vec![ElementId::IDENTITY];
    word_of.insert(ElementId::IDENTITY, Word::empty());
    let mut head = 0;
    while head < order.len() {
        let e = order[head];
        head += 1;
        for &p in positions {
            let t = m.right(e, p);
            if !word_of.contains_key(&t) {
                let mut w = word_of[&e].clone();
                w.push(al.generator(p));
                word_of.insert(t, w);
                order.push(t);
            }
        }
    }
    order
        .into_iter()
        .map(|e| (e, word_of[&e].clone()))
        .collect()
}

/// Checks that the `a`- and `b`-generated submonoids have `C_n` elements and
/// that `a_i -> h_i`, `b_i -> h_i` are isomorphisms onto `jones`.
pub fn verify_submonoids(m: &MonoidTable, jones: &MonoidTable) -> Result<Report> {
    require_family(m, Family::Origami)?;
    require_family(jones, Family::Jones)?;
    let n = m.rank();
    if jones.rank() != n {
        return Err(Error::RankMismatch {
            left: n,
            right: jones.rank(),
        });
    }
    let mut rep = Report::new("submonoids", n);
    let al = m.alphabet();
    let cat = catalan(n as u64);
    for kind in [Kind::Alpha, Kind::Beta] {
        let positions: Vec<usize> = (1..n)
            .map(|i| al.position(Generator::new(kind, i as u8)).unwrap_or(0))
            .collect();
        let sub = submonoid_words(m, &positions);
        let label = if kind == Kind::Alpha { "alpha" } else { "beta" };
        rep.metric(&format!("size_{label}"), sub.len() as u64);
        rep.check(sub.len() as u64 == cat, || {
            format!("{label} submonoid has {} elements, not {cat}", sub.len())
        });

        let mut phi = vec![None; m.size()];
        let mut image = vec![false; jones.size()];
        for (e, w) in &sub {
            let x = jones.element_of(&w.relabel(Kind::H))?;
            phi[e.index()] = Some(x);
            rep.check(!image[x.index()], || {
                format!("{label}: {w} collides with another element")
            });
            image[x.index()] = true;
        }
        rep.check(image.iter().all(|&b| b), || {
            format!("{label}: map onto J_{n} is not surjective")
        });
        for (e, w) in &sub {
            let x = phi[e.index()].unwrap_or(ElementId::IDENTITY);
            for (k, &p) in positions.iter().enumerate() {
                let img = phi[m.right(*e, p).index()];
                rep.check(img == Some(jones.right(x, k)), || {
                    format!("{label}: map does not respect {w} * {}", al.generator(p))
                });
            }
        }
    }
    Ok(rep)
}

/// Checks that `p_alpha` and `p_beta` are well defined on elements: equal on
/// both sides of every defining relation and, for all words up to
/// `max_len`, equal to the projection of the element's representative.
pub fn verify_projections(m: &MonoidTable, p: &Presentation, max_len: usize) -> Result<Report> {
    require_family(m, Family::Origami)?;
    let n = m.rank();
    let mut rep = Report::new("projections", n);
    let mut pa = Vec::with_capacity(m.size());
    let mut pb = Vec::with_capacity(m.size());
    for e in m.elements() {
        pa.push(m.element_of(&p_alpha(m.rep(e))?)?);
        pb.push(m.element_of(&p_beta(m.rep(e))?)?);
    }

    for (u, v) in p.relations() {
        for (name, proj) in [
            ("alpha", p_alpha as fn(&[Generator]) -> Result<Word>),
            ("beta", p_beta),
        ] {
            let (x, y) = (proj(u)?, proj(v)?);
            rep.check(same_element(m, &x, &y), || {
                format!("p_{name} separates {u} = {v}")
            });
        }
    }
    rep.metric("relations_checked", p.relations().len() as u64);

    // Depth-first over all words, carrying (element, alpha part, beta part).
    let al = m.alphabet();
    let k = al.size();
    let mut words = 0u64;
    let mut stack = vec![(
        ElementId::IDENTITY,
        ElementId::IDENTITY,
        ElementId::IDENTITY,
        0usize,
    )];
    while let Some((e, a, b, depth)) = stack.pop() {
        if depth == max_len {
            continue;
        }
        for g in 0..k {
            let t = m.right(e, g);
            let (ta, tb) = if al.generator(g).kind() == Kind::Alpha {
                (m.right(a, g), b)
            } else {
                (a, m.right(b, g))
            };
            words += 1;
            rep.check(ta == pa[t.index()] && tb == pb[t.index()], || {
                format!(
                    "projection of a length-{} word to element {t} disagrees",
                    depth + 1
                )
            });
            stack.push((t, ta, tb, depth + 1));
        }
    }
    rep.metric("words_checked", words);
    rep.metric("max_word_length", max_len as u64);
    Ok(rep)
}

/// `|O_n| <= 4 C_n^2`.
pub fn check_finiteness(m: &MonoidTable) -> Result<Report> {
    require_family(m, Family::Origami)?;
    let n = m.rank();
    let mut rep = Report::new("finiteness", n);
    let c = catalan(n as u64);
    let bound = 4 * c * c;
    rep.metric("size", m.size() as u64);
    rep.metric("bound", bound);
    rep.check(m.size() as u64 <= bound, || {
        format!("{} elements exceed 4 C_n^2 = {bound}", m.size())
    });
    Ok(rep)
}

/// Enumerates `O_n` with and without the two redundant relation families
/// and checks the results are the same monoid (same representatives and
/// Cayley tables).
pub fn verify_redundancy(n: usize) -> Result<Report> {
    let full = enumerate(&build_origami_presentation(n, true)?)?;
    let lean = enumerate(&build_origami_presentation(n, false)?)?;
    Ok(compare_tables(&full, &lean, "redundancy"))
}

/// Structural equality of two enumerations of the same monoid.
pub fn compare_tables(a: &MonoidTable, b: &MonoidTable, suite: &str) -> Report {
    let mut rep = Report::new(suite, a.rank());
    rep.metric("size_left", a.size() as u64);
    rep.metric("size_right", b.size() as u64);
    rep.check(a.size() == b.size(), || {
        format!("sizes differ: {} vs {}", a.size(), b.size())
    });
    rep.check(a.reps() == b.reps(), || "representatives differ".into());
    rep.check(a.right_table() == b.right_table(), || {
        "right Cayley tables differ".into()
    });
    rep.check(a.left_table() == b.left_table(), || {
        "left Cayley tables differ".into()
    });
    rep
}
