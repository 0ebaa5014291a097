//! Anchors and the recursive generator universe.
//!
//! Generators are hash-consed: every structurally distinct node is interned
//! exactly once per [`GenStore`], so equality of [`Gen`] handles is pointer
//! equality. Height-1 generators are the base letters `B(x)`, which behave as
//! the tuple `(1, 1, ·, x', 1)` with an opaque middle entry.

use std::collections::{HashMap, HashSet};
use std::fmt;
use std::hash::{Hash, Hasher};
use std::sync::{Arc, OnceLock, RwLock};

use crate::error::{Error, Result};
use crate::word::{GWord, Token};

pub const DEFAULT_HEIGHT_CAP: u32 = 8;

/// A letter of the declared alphabet `X`.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Letter(Arc<str>);

impl Letter {
    pub fn new(name: &str) -> Result<Self> {
        if is_ident(name) {
            Ok(Letter(Arc::from(name)))
        } else {
            Err(Error::BadLetterName(name.to_string()))
        }
    }

    pub fn as_str(&self) -> &str {
        &self.0
    }
}

impl fmt::Display for Letter {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.0)
    }
}

impl fmt::Debug for Letter {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0)
    }
}

fn is_ident(s: &str) -> bool {
    let mut chars = s.chars();
    matches!(chars.next(), Some('a'..='z'))
        && chars.all(|c| c.is_ascii_lowercase() || c.is_ascii_digit() || c == '_')
}

/// An element of `A = X ∪ X' ∪ {1}`.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Anchor {
    One,
    Plain(Letter),
    Primed(Letter),
}

impl Anchor {
    /// The involution `'`: fixes 1 and swaps `x` with `x'`.
    pub fn inv(&self) -> Anchor {
        match self {
            Anchor::One => Anchor::One,
            Anchor::Plain(x) => Anchor::Primed(x.clone()),
            Anchor::Primed(x) => Anchor::Plain(x.clone()),
        }
    }

    pub fn is_one(&self) -> bool {
        matches!(self, Anchor::One)
    }

    pub fn letter(&self) -> Option<&Letter> {
        match self {
            Anchor::One => None,
            Anchor::Plain(x) | Anchor::Primed(x) => Some(x),
        }
    }
}

pub fn involution(a: &Anchor) -> Anchor {
    a.inv()
}

impl fmt::Display for Anchor {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Anchor::One => f.write_str("1"),
            Anchor::Plain(x) => write!(f, "{x}"),
            Anchor::Primed(x) => write!(f, "{x}'"),
        }
    }
}

impl fmt::Debug for Anchor {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

/// Left (`l`) or right (`r`) entry of a tuple.
#[derive(Clone, Copy, PartialEq, Eq, Hash, Debug, PartialOrd, Ord)]
pub enum Side {
    L,
    R,
}

impl Side {
    pub const BOTH: [Side; 2] = [Side::L, Side::R];
}

#[derive(Clone, Copy, PartialEq, Eq, Hash, Debug)]
pub enum GenKind {
    Unit,
    BaseE,
    E,
    D,
}

impl GenKind {
    /// Equal left and right entries (base letters included).
    pub fn is_e(self) -> bool {
        matches!(self, GenKind::BaseE | GenKind::E)
    }
}

/// Which part of a height level to enumerate.
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum KindFilter {
    E,
    D,
    All,
}

/// Structural description of a generator, used as input to [`GenStore::intern`].
#[derive(Clone, Debug)]
pub enum GenNode {
    Unit,
    Base(Letter),
    Tuple {
        left: Gen,
        la: Anchor,
        mid: Gen,
        ra: Anchor,
        right: Gen,
    },
}

struct Entries {
    left: Gen,
    la: Anchor,
    mid: Option<Gen>,
    ra: Anchor,
    right: Gen,
}

struct GenData {
    id: u32,
    height: u32,
    kind: GenKind,
    letter: Option<Letter>,
    entries: Option<Entries>,
    la_side: Option<Side>,
    ra_side: Option<Side>,
    text: OnceLock<String>,
}

/// Interned handle to a generator (or to the unit symbol `1`).
#[derive(Clone)]
pub struct Gen(Arc<GenData>);

impl PartialEq for Gen {
    fn eq(&self, other: &Self) -> bool {
        Arc::ptr_eq(&self.0, &other.0)
    }
}

impl Eq for Gen {}

impl Hash for Gen {
    fn hash<H: Hasher>(&self, state: &mut H) {
        self.0.id.hash(state);
    }
}

impl PartialOrd for Gen {
    fn partial_cmp(&self, other: &Self) -> Option<std::cmp::Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for Gen {
    fn cmp(&self, other: &Self) -> std::cmp::Ordering {
        if self == other {
            return std::cmp::Ordering::Equal;
        }
        (self.height(), self.text()).cmp(&(other.height(), other.text()))
    }
}

impl Gen {
    pub fn id(&self) -> u32 {
        self.0.id
    }

    pub fn height(&self) -> u32 {
        self.0.height
    }

    pub fn kind(&self) -> GenKind {
        self.0.kind
    }

    pub fn is_unit(&self) -> bool {
        self.0.kind == GenKind::Unit
    }

    pub fn base_letter(&self) -> Option<&Letter> {
        self.0.letter.as_ref()
    }

    pub fn left(&self) -> Option<&Gen> {
        self.0.entries.as_ref().map(|e| &e.left)
    }

    pub fn right(&self) -> Option<&Gen> {
        self.0.entries.as_ref().map(|e| &e.right)
    }

    /// Middle entry; `None` for the unit and for base letters.
    pub fn mid(&self) -> Option<&Gen> {
        self.0.entries.as_ref().and_then(|e| e.mid.as_ref())
    }

    pub fn la(&self) -> Option<&Anchor> {
        self.0.entries.as_ref().map(|e| &e.la)
    }

    pub fn ra(&self) -> Option<&Anchor> {
        self.0.entries.as_ref().map(|e| &e.ra)
    }

    pub fn entry(&self, s: Side) -> Option<&Gen> {
        match s {
            Side::L => self.left(),
            Side::R => self.right(),
        }
    }

    /// The anchor attached to the entry on side `s` (`g^{la}` or `g^{ra}`).
    pub fn anchor(&self, s: Side) -> Option<&Anchor> {
        match s {
            Side::L => self.la(),
            Side::R => self.ra(),
        }
    }

    /// Side of the middle entry inside the left entry (`l_a = l·s`).
    pub fn la_side(&self) -> Option<Side> {
        self.0.la_side
    }

    /// Side of the middle entry inside the right entry (`r_a = r·s`).
    pub fn ra_side(&self) -> Option<Side> {
        self.0.ra_side
    }

    pub fn node(&self) -> GenNode {
        match (&self.0.kind, &self.0.entries) {
            (GenKind::Unit, _) => GenNode::Unit,
            (GenKind::BaseE, _) => GenNode::Base(self.0.letter.clone().expect("base letter")),
            (_, Some(e)) => GenNode::Tuple {
                left: e.left.clone(),
                la: e.la.clone(),
                mid: e.mid.clone().expect("tuple middle"),
                ra: e.ra.clone(),
                right: e.right.clone(),
            },
            _ => unreachable!("tuple without entries"),
        }
    }

    /// Canonical serialization, cached.
    pub fn text(&self) -> &str {
        self.0.text.get_or_init(|| match self.node() {
            GenNode::Unit => "1".to_string(),
            GenNode::Base(x) => format!("B({x})"),
            GenNode::Tuple {
                left,
                la,
                mid,
                ra,
                right,
            } => format!(
                "T({};{};{};{};{})",
                left.text(),
                la,
                mid.text(),
                ra,
                right.text()
            ),
        })
    }

    /// `g^L = (g^{la})' g^l g^{la}` as a three-token word.
    pub fn l_word(&self) -> Result<GWord> {
        self.side_word(Side::L)
    }

    /// `g^R = (g^{ra})' g^r g^{ra}` as a three-token word.
    pub fn r_word(&self) -> Result<GWord> {
        self.side_word(Side::R)
    }

    fn side_word(&self, s: Side) -> Result<GWord> {
        if self.height() < 2 {
            return Err(Error::HeightTooSmall {
                height: self.height(),
            });
        }
        let a = self.anchor(s).expect("tuple anchor");
        let e = self.entry(s).expect("tuple entry");
        Ok(GWord::from_tokens(vec![
            Token::Anchor(a.inv()),
            Token::Gen(e.clone()),
            Token::Anchor(a.clone()),
        ])
        .expect("nonempty"))
    }
}

impl fmt::Display for Gen {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.text())
    }
}

impl fmt::Debug for Gen {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.text())
    }
}

/// `ε(g)`: the recursive ground, sorted by height then text.
pub fn ground(g: &Gen) -> Vec<Gen> {
    let mut seen = HashSet::new();
    let mut stack = vec![g.clone()];
    while let Some(h) = stack.pop() {
        if !seen.insert(h.clone()) {
            continue;
        }
        if let (Some(l), Some(r)) = (h.left(), h.right()) {
            stack.push(l.clone());
            stack.push(r.clone());
        }
    }
    let mut out: Vec<Gen> = seen.into_iter().collect();
    out.sort();
    out
}

/// `h ⪯ g`, i.e. `h ∈ ε(g)`.
pub fn preceq(h: &Gen, g: &Gen) -> bool {
    fn go(h: &Gen, g: &Gen, memo: &mut HashSet<u32>) -> bool {
        if h == g {
            return true;
        }
        if g.height() <= h.height() || !memo.insert(g.id()) {
            return false;
        }
        match (g.left(), g.right()) {
            (Some(l), Some(r)) => go(h, l, memo) || go(h, r, memo),
            _ => false,
        }
    }
    go(h, g, &mut HashSet::new())
}

#[derive(Clone, PartialEq, Eq, Hash)]
enum Key {
    Base(Letter),
    Tuple(u32, Anchor, u32, Anchor, u32),
}

struct Checked {
    kind: GenKind,
    height: u32,
    la_side: Side,
    ra_side: Side,
}

#[derive(Default)]
struct Level {
    e: Vec<Gen>,
    d: Vec<Gen>,
}

struct Inner {
    by_key: HashMap<Key, Gen>,
    next_id: u32,
    levels: Vec<Arc<Level>>,
}

/// Append-only interning table for generators over a fixed alphabet.
///
/// Reads go through cloned [`Gen`] handles and need no lock; inserts are
/// serialized behind a write lock.
pub struct GenStore {
    alphabet: Vec<Letter>,
    cap: u32,
    unit: Gen,
    inner: RwLock<Inner>,
}

impl fmt::Debug for GenStore {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("GenStore")
            .field("alphabet", &self.alphabet)
            .field("cap", &self.cap)
            .field("len", &self.len())
            .finish()
    }
}

impl GenStore {
    pub fn new<I, S>(alphabet: I) -> Result<Self>
    where
        I: IntoIterator<Item = S>,
        S: AsRef<str>,
    {
        let mut letters: Vec<Letter> = Vec::new();
        for name in alphabet {
            let l = Letter::new(name.as_ref().trim())?;
            if !letters.contains(&l) {
                letters.push(l);
            }
        }
        if letters.is_empty() {
            return Err(Error::EmptyAlphabet);
        }
        let unit = Gen(Arc::new(GenData {
            id: 0,
            height: 0,
            kind: GenKind::Unit,
            letter: None,
            entries: None,
            la_side: None,
            ra_side: None,
            text: OnceLock::new(),
        }));
        let store = GenStore {
            alphabet: letters,
            cap: DEFAULT_HEIGHT_CAP,
            unit,
            inner: RwLock::new(Inner {
                by_key: HashMap::new(),
                next_id: 1,
                levels: Vec::new(),
            }),
        };
        for x in store.alphabet.clone() {
            store.intern(GenNode::Base(x))?;
        }
        Ok(store)
    }

    pub fn with_height_cap(mut self, cap: u32) -> Self {
        self.cap = cap.max(1);
        self
    }

    pub fn height_cap(&self) -> u32 {
        self.cap
    }

    pub fn alphabet(&self) -> &[Letter] {
        &self.alphabet
    }

    pub fn letter(&self, name: &str) -> Result<Letter> {
        self.alphabet
            .iter()
            .find(|l| l.as_str() == name)
            .cloned()
            .ok_or_else(|| Error::UnknownLetter(name.to_string()))
    }

    pub fn unit(&self) -> Gen {
        self.unit.clone()
    }

    pub fn base(&self, x: &Letter) -> Result<Gen> {
        self.intern(GenNode::Base(x.clone()))
    }

    pub fn base_named(&self, name: &str) -> Result<Gen> {
        let x = self.letter(name)?;
        self.base(&x)
    }

    /// Number of interned generators, the unit included.
    pub fn len(&self) -> usize {
        self.inner.read().unwrap().by_key.len() + 1
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    pub fn tuple(&self, left: &Gen, la: Anchor, mid: &Gen, ra: Anchor, right: &Gen) -> Result<Gen> {
        self.intern(GenNode::Tuple {
            left: left.clone(),
            la,
            mid: mid.clone(),
            ra,
            right: right.clone(),
        })
    }

    /// Checks membership of a tuple node in `G⁵` and reports its kind.
    pub fn validate(&self, node: &GenNode) -> Result<GenKind> {
        match node {
            GenNode::Unit => Ok(GenKind::Unit),
            GenNode::Base(x) => {
                self.letter(x.as_str())?;
                Ok(GenKind::BaseE)
            }
            GenNode::Tuple {
                left,
                la,
                mid,
                ra,
                right,
            } => self.check_tuple(left, la, mid, ra, right).map(|c| c.kind),
        }
    }

    fn check_tuple(
        &self,
        left: &Gen,
        la: &Anchor,
        mid: &Gen,
        ra: &Anchor,
        right: &Gen,
    ) -> Result<Checked> {
        let (hl, hm, hr) = (left.height(), mid.height(), right.height());
        if hl != hr || hl == 0 || hm + 1 != hl {
            return Err(Error::HeightMismatch {
                left: hl,
                mid: hm,
                right: hr,
            });
        }
        for a in [la, ra] {
            if let Some(x) = a.letter() {
                self.letter(x.as_str())?;
            }
        }
        if left == right {
            let g = left;
            if !g.kind().is_e() || g.left() != Some(mid) {
                return Err(Error::EqualEntriesBadAnchors);
            }
            let (gla, gra) = (g.la().unwrap(), g.ra().unwrap());
            let la_side = if *la == gla.inv() && *ra == gra.inv() {
                Side::L
            } else if *la == gra.inv() && *ra == gla.inv() {
                Side::R
            } else {
                return Err(Error::EqualEntriesBadAnchors);
            };
            // l_a is the side of g whose anchor is la'; r_a the side whose anchor is ra'.
            let ra_side = if la_side == Side::L { Side::R } else { Side::L };
            return Ok(Checked {
                kind: GenKind::E,
                height: hl + 1,
                la_side,
                ra_side,
            });
        }
        let la_side = match_side(left, mid, la, "left")?;
        let ra_side = match_side(right, mid, ra, "right")?;
        Ok(Checked {
            kind: GenKind::D,
            height: hl + 1,
            la_side,
            ra_side,
        })
    }

    /// Returns the interned handle for `node`, validating it on first sight.
    pub fn intern(&self, node: GenNode) -> Result<Gen> {
        let (key, checked, letter, entries) = match node {
            GenNode::Unit => return Ok(self.unit()),
            GenNode::Base(x) => {
                let x = self.letter(x.as_str())?;
                let entries = Entries {
                    left: self.unit(),
                    la: Anchor::One,
                    mid: None,
                    ra: Anchor::Primed(x.clone()),
                    right: self.unit(),
                };
                let checked = Checked {
                    kind: GenKind::BaseE,
                    height: 1,
                    la_side: Side::L,
                    ra_side: Side::R,
                };
                (Key::Base(x.clone()), checked, Some(x), entries)
            }
            GenNode::Tuple {
                left,
                la,
                mid,
                ra,
                right,
            } => {
                let key = Key::Tuple(left.id(), la.clone(), mid.id(), ra.clone(), right.id());
                if let Some(g) = self.inner.read().unwrap().by_key.get(&key) {
                    return Ok(g.clone());
                }
                let checked = self.check_tuple(&left, &la, &mid, &ra, &right)?;
                if checked.height > self.cap {
                    return Err(Error::CapExceeded {
                        height: checked.height,
                        cap: self.cap,
                    });
                }
                let entries = Entries {
                    left,
                    la,
                    mid: Some(mid),
                    ra,
                    right,
                };
                (key, checked, None, entries)
            }
        };
        let mut inner = self.inner.write().unwrap();
        if let Some(g) = inner.by_key.get(&key) {
            return Ok(g.clone());
        }
        let id = inner.next_id;
        inner.next_id += 1;
        let g = Gen(Arc::new(GenData {
            id,
            height: checked.height,
            kind: checked.kind,
            letter,
            entries: Some(entries),
            la_side: (checked.height >= 2).then_some(checked.la_side),
            ra_side: (checked.height >= 2).then_some(checked.ra_side),
            text: OnceLock::new(),
        }));
        debug_assert!(side_anchors_hold(&g), "side resolution broken for {g}");
        debug_assert!(anchor_parity_holds(&g), "anchor parity broken for {g}");
        inner.by_key.insert(key, g.clone());
        Ok(g)
    }

    /// Members of `G_{i,e}` and/or `G_{i,d}` in deterministic construction order.
    pub fn enumerate(&self, height: u32, filter: KindFilter) -> Result<Vec<Gen>> {
        if height == 0 {
            return Ok(match filter {
                KindFilter::D => vec![],
                _ => vec![self.unit()],
            });
        }
        if height > self.cap {
            return Err(Error::CapExceeded {
                height,
                cap: self.cap,
            });
        }
        if filter == KindFilter::E {
            return self.e_level(height);
        }
        let level = self.level(height)?;
        Ok(match filter {
            KindFilter::E => level.e.clone(),
            KindFilter::D => level.d.clone(),
            KindFilter::All => level.e.iter().chain(&level.d).cloned().collect(),
        })
    }

    /// All of `G'` (the unit included) up to the given height.
    pub fn generators_up_to(&self, height: u32) -> Result<Vec<Gen>> {
        let mut out = vec![self.unit()];
        for i in 1..=height {
            out.extend(self.enumerate(i, KindFilter::All)?);
        }
        Ok(out)
    }

    /// `G_{i,e}` alone; it only depends on `G_{i-1,e}`, so no `D` level is built.
    fn e_level(&self, i: u32) -> Result<Vec<Gen>> {
        if let Some(l) = self.inner.read().unwrap().levels.get((i - 1) as usize) {
            return Ok(l.e.clone());
        }
        if i == 1 {
            return self.alphabet.iter().map(|x| self.base(x)).collect();
        }
        let prev = self.e_level(i - 1)?;
        let mut e = Vec::with_capacity(prev.len() * 2);
        for g in &prev {
            e.extend(self.e_children(g)?);
        }
        Ok(e)
    }

    fn e_children(&self, g: &Gen) -> Result<[Gen; 2]> {
        let (gla, gra) = (g.la().unwrap(), g.ra().unwrap());
        let mid = g.left().unwrap();
        Ok([
            self.tuple(g, gla.inv(), mid, gra.inv(), g)?,
            self.tuple(g, gra.inv(), mid, gla.inv(), g)?,
        ])
    }

    fn level(&self, i: u32) -> Result<Arc<Level>> {
        let idx = (i - 1) as usize;
        if let Some(l) = self.inner.read().unwrap().levels.get(idx) {
            return Ok(l.clone());
        }
        let level = if i == 1 {
            let e = self
                .alphabet
                .iter()
                .map(|x| self.base(x))
                .collect::<Result<Vec<_>>>()?;
            Level { e, d: Vec::new() }
        } else {
            let prev = self.level(i - 1)?;
            let mut e = Vec::with_capacity(prev.e.len() * 2);
            for g in &prev.e {
                e.extend(self.e_children(g)?);
            }
            let mut d = Vec::new();
            let mut seen = HashSet::new();
            let all: Vec<&Gen> = prev.e.iter().chain(&prev.d).collect();
            for l in &all {
                for r in &all {
                    if l == r {
                        continue;
                    }
                    for s in Side::BOTH {
                        for t in Side::BOTH {
                            let (ls, rt) = (l.entry(s).unwrap(), r.entry(t).unwrap());
                            if ls != rt {
                                continue;
                            }
                            let la = l.anchor(s).unwrap().inv();
                            let ra = r.anchor(t).unwrap().inv();
                            let g = self.tuple(l, la, ls, ra, r)?;
                            if seen.insert(g.id()) {
                                d.push(g);
                            }
                        }
                    }
                }
            }
            Level { e, d }
        };
        let mut inner = self.inner.write().unwrap();
        if inner.levels.len() == idx {
            inner.levels.push(Arc::new(level));
        }
        Ok(inner.levels[idx].clone())
    }

    pub fn parse_gen(&self, text: &str) -> Result<Gen> {
        let mut p = Parser::new(text);
        p.skip_ws();
        let g = p.gen(self)?;
        p.skip_ws();
        p.expect_end()?;
        Ok(g)
    }

    pub fn parse_anchor(&self, text: &str) -> Result<Anchor> {
        let mut p = Parser::new(text);
        p.skip_ws();
        let a = p.anchor(self)?;
        p.skip_ws();
        p.expect_end()?;
        Ok(a)
    }
}

/// Finds the side `s` of `child` with `(child^s, (child^{sa})') = (mid, anchor)`.
fn match_side(child: &Gen, mid: &Gen, anchor: &Anchor, which: &'static str) -> Result<Side> {
    let hits: Vec<Side> = Side::BOTH
        .into_iter()
        .filter(|&s| {
            child.entry(s) == Some(mid) && child.anchor(s).map(Anchor::inv).as_ref() == Some(anchor)
        })
        .collect();
    match hits.as_slice() {
        [s] => Ok(*s),
        [] => Err(Error::NoAnchorMatch(which)),
        _ => {
            log::warn!("ambiguous side resolution in {which} entry {child}");
            Err(Error::AmbiguousSide(which))
        }
    }
}

fn side_anchors_hold(g: &Gen) -> bool {
    if g.height() < 2 {
        return true;
    }
    let (l, r) = (g.left().unwrap(), g.right().unwrap());
    let (ls, rs) = (g.la_side().unwrap(), g.ra_side().unwrap());
    l.entry(ls) == g.mid()
        && r.entry(rs) == g.mid()
        && l.anchor(ls).cloned() == g.la().map(Anchor::inv)
        && r.anchor(rs).cloned() == g.ra().map(Anchor::inv)
}

fn anchor_parity_holds(g: &Gen) -> bool {
    let even = g.height().is_multiple_of(2);
    [g.la(), g.ra()].into_iter().flatten().all(|a| match a {
        Anchor::One => true,
        Anchor::Plain(_) => even,
        Anchor::Primed(_) => !even,
    })
}

/// Identifiers of the input in order of first appearance (alphabet inference).
pub fn infer_alphabet(text: &str) -> Vec<String> {
    let bytes = text.as_bytes();
    let mut out: Vec<String> = Vec::new();
    let mut i = 0;
    while i < bytes.len() {
        if bytes[i].is_ascii_lowercase() {
            let start = i;
            while i < bytes.len()
                && (bytes[i].is_ascii_lowercase() || bytes[i].is_ascii_digit() || bytes[i] == b'_')
            {
                i += 1;
            }
            let id = &text[start..i];
            if !out.iter().any(|s| s == id) {
                out.push(id.to_string());
            }
        } else {
            i += 1;
        }
    }
    out
}

pub(crate) struct Parser<'a> {
    src: &'a str,
    pos: usize,
}

impl<'a> Parser<'a> {
    pub(crate) fn new(src: &'a str) -> Self {
        Parser { src, pos: 0 }
    }

    fn peek(&self) -> Option<u8> {
        self.src.as_bytes().get(self.pos).copied()
    }

    pub(crate) fn skip_ws(&mut self) {
        while matches!(self.peek(), Some(c) if c.is_ascii_whitespace()) {
            self.pos += 1;
        }
    }

    pub(crate) fn at_end(&self) -> bool {
        self.pos >= self.src.len()
    }

    fn expect_end(&self) -> Result<()> {
        if self.at_end() {
            Ok(())
        } else {
            Err(Error::syntax(self.pos, "trailing input"))
        }
    }

    fn eat(&mut self, c: u8) -> Result<()> {
        if self.peek() == Some(c) {
            self.pos += 1;
            Ok(())
        } else {
            Err(Error::syntax(self.pos, format!("expected `{}`", c as char)))
        }
    }

    fn ident(&mut self) -> Result<&'a str> {
        let start = self.pos;
        if !matches!(self.peek(), Some(b'a'..=b'z')) {
            return Err(Error::syntax(self.pos, "expected identifier"));
        }
        while matches!(self.peek(), Some(c) if c.is_ascii_lowercase() || c.is_ascii_digit() || c == b'_')
        {
            self.pos += 1;
        }
        Ok(&self.src[start..self.pos])
    }

    pub(crate) fn anchor(&mut self, store: &GenStore) -> Result<Anchor> {
        if self.peek() == Some(b'1') {
            self.pos += 1;
            return Ok(Anchor::One);
        }
        let x = store.letter(self.ident()?)?;
        if self.peek() == Some(b'\'') {
            self.pos += 1;
            Ok(Anchor::Primed(x))
        } else {
            Ok(Anchor::Plain(x))
        }
    }

    pub(crate) fn gen(&mut self, store: &GenStore) -> Result<Gen> {
        match self.peek() {
            Some(b'1') => {
                self.pos += 1;
                Ok(store.unit())
            }
            Some(b'B') => {
                self.pos += 1;
                self.eat(b'(')?;
                let x = store.letter(self.ident()?)?;
                self.eat(b')')?;
                store.base(&x)
            }
            Some(b'T') => {
                self.pos += 1;
                self.eat(b'(')?;
                let left = self.gen(store)?;
                self.eat(b';')?;
                let la = self.anchor(store)?;
                self.eat(b';')?;
                let mid = self.gen(store)?;
                self.eat(b';')?;
                let ra = self.anchor(store)?;
                self.eat(b';')?;
                let right = self.gen(store)?;
                self.eat(b')')?;
                store.tuple(&left, la, &mid, ra, &right)
            }
            _ => Err(Error::syntax(self.pos, "expected generator term")),
        }
    }

    /// A single whitespace-delimited token: anchor or generator term.
    pub(crate) fn token(&mut self, store: &GenStore) -> Result<Token> {
        match self.peek() {
            Some(b'1') | Some(b'B') | Some(b'T') => self.gen(store).map(Token::Gen),
            Some(b'a'..=b'z') => self.anchor(store).map(Token::Anchor),
            _ => Err(Error::syntax(self.pos, "expected anchor or generator")),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn store() -> GenStore {
        GenStore::new(["x", "y"]).unwrap()
    }

    fn x(s: &GenStore) -> Letter {
        s.letter("x").unwrap()
    }

    #[test]
    fn involution_examples() {
        let s = store();
        let x = x(&s);
        assert_eq!(involution(&Anchor::One), Anchor::One);
        assert_eq!(involution(&Anchor::Plain(x.clone())), Anchor::Primed(x.clone()));
        assert_eq!(involution(&Anchor::Primed(x.clone())), Anchor::Plain(x.clone()));
        let a = Anchor::Primed(x);
        assert_eq!(a.inv().inv(), a);
    }

    #[test]
    fn base_behaves_as_tuple() {
        let s = store();
        let b = s.base_named("x").unwrap();
        assert_eq!(b.height(), 1);
        assert_eq!(b.kind(), GenKind::BaseE);
        assert!(b.left().unwrap().is_unit() && b.right().unwrap().is_unit());
        assert_eq!(b.la(), Some(&Anchor::One));
        assert_eq!(b.ra(), Some(&Anchor::Primed(x(&s))));
        assert!(b.mid().is_none());
    }

    #[test]
    fn validate_examples() {
        let s = store();
        let bx = s.base_named("x").unwrap();
        let by = s.base_named("y").unwrap();
        let one = s.unit();
        let xa = Anchor::Plain(x(&s));
        let node = |l: &Gen, la: Anchor, ra: Anchor, r: &Gen| GenNode::Tuple {
            left: l.clone(),
            la,
            mid: one.clone(),
            ra,
            right: r.clone(),
        };
        assert_eq!(s.validate(&node(&bx, Anchor::One, xa.clone(), &bx)), Ok(GenKind::E));
        assert_eq!(s.validate(&node(&bx, Anchor::One, Anchor::One, &by)), Ok(GenKind::D));
        assert_eq!(
            s.validate(&node(&bx, xa.inv(), xa.clone(), &bx)),
            Err(Error::EqualEntriesBadAnchors)
        );
        // y is not an anchor available to the left entry B(x)
        let ya = Anchor::Plain(s.letter("y").unwrap());
        assert_eq!(
            s.validate(&node(&bx, ya, Anchor::One, &by)),
            Err(Error::NoAnchorMatch("left"))
        );
        let bad = GenNode::Tuple {
            left: bx.clone(),
            la: Anchor::One,
            mid: bx.clone(),
            ra: Anchor::One,
            right: by.clone(),
        };
        assert!(matches!(s.validate(&bad), Err(Error::HeightMismatch { .. })));
    }

    #[test]
    fn intern_is_canonical() {
        let s = store();
        let a = s.base_named("x").unwrap();
        let b = s.base_named("x").unwrap();
        assert_eq!(a, b);
        assert_eq!(a.id(), b.id());
        let xa = Anchor::Plain(x(&s));
        let g2x = s.tuple(&a, Anchor::One, &s.unit(), xa.clone(), &a).unwrap();
        assert_eq!(g2x.height(), 2);
        assert_eq!(g2x.kind(), GenKind::E);
        let g2xp = s.tuple(&a, xa.clone(), &s.unit(), Anchor::One, &a).unwrap();
        assert_ne!(g2x, g2xp);
        assert_eq!(g2xp, s.parse_gen("T(B(x);x;1;1;B(x))").unwrap());
        let len = s.len();
        s.tuple(&a, Anchor::One, &s.unit(), xa, &a).unwrap();
        assert_eq!(s.len(), len);
    }

    #[test]
    fn side_words() {
        let s = store();
        let g = s.parse_gen("T(B(x);1;1;x;B(x))").unwrap();
        let bx = s.base_named("x").unwrap();
        assert_eq!(g.l_word().unwrap().to_string(), "1 B(x) 1");
        assert_eq!(g.r_word().unwrap().to_string(), "x' B(x) x");
        assert_eq!(bx.l_word(), Err(Error::HeightTooSmall { height: 1 }));
    }

    #[test]
    fn side_resolution_of_equal_entry_tuples() {
        let s = store();
        let g = s.parse_gen("T(B(x);1;1;x;B(x))").unwrap();
        // g^{la} = 1 so l_a is the side of B(x) carrying anchor 1', the left one.
        assert_eq!(g.la_side(), Some(Side::L));
        assert_eq!(g.ra_side(), Some(Side::R));
        let h = s.parse_gen("T(B(x);x;1;1;B(x))").unwrap();
        assert_eq!(h.la_side(), Some(Side::R));
        assert_eq!(h.ra_side(), Some(Side::L));
    }

    #[test]
    fn ground_examples() {
        let s = store();
        let one = s.unit();
        let bx = s.base_named("x").unwrap();
        let by = s.base_named("y").unwrap();
        let g = s.parse_gen("T(B(x);1;1;x;B(x))").unwrap();
        assert_eq!(ground(&one), vec![one.clone()]);
        assert_eq!(ground(&bx), vec![one.clone(), bx.clone()]);
        assert_eq!(ground(&g), vec![one.clone(), bx.clone(), g.clone()]);
        assert!(preceq(&g, &g));
        assert!(preceq(&bx, &g));
        assert!(!preceq(&by, &g));
        assert!(preceq(&one, &by));
    }

    #[test]
    fn enumerate_small_levels() {
        let s = store();
        let e1 = s.enumerate(1, KindFilter::E).unwrap();
        assert_eq!(e1.iter().map(|g| g.text()).collect::<Vec<_>>(), ["B(x)", "B(y)"]);
        assert_eq!(s.enumerate(2, KindFilter::E).unwrap().len(), 4);
        assert_eq!(s.enumerate(2, KindFilter::D).unwrap().len(), 8);
        assert_eq!(s.enumerate(1, KindFilter::D).unwrap().len(), 0);
        let d2: Vec<String> = s
            .enumerate(2, KindFilter::D)
            .unwrap()
            .iter()
            .map(|g| g.text().to_string())
            .collect();
        assert!(d2.contains(&"T(B(x);1;1;1;B(y))".to_string()));
        assert!(d2.contains(&"T(B(x);x;1;y;B(y))".to_string()));
        assert!(matches!(
            s.enumerate(9, KindFilter::E),
            Err(Error::CapExceeded { height: 9, cap: 8 })
        ));
    }

    #[test]
    fn serialize_and_parse() {
        let s = store();
        assert_eq!(s.base_named("x").unwrap().to_string(), "B(x)");
        let g = s.parse_gen("T(B(x);1;1;x;B(x))").unwrap();
        assert_eq!(g.to_string(), "T(B(x);1;1;x;B(x))");
        assert_eq!(
            s.parse_gen("T(B(x);x';1;x;B(x))"),
            Err(Error::EqualEntriesBadAnchors)
        );
        assert!(matches!(s.parse_gen("T(B(x);1;1;x"), Err(Error::Syntax { .. })));
        assert!(matches!(s.parse_gen("B(z)"), Err(Error::UnknownLetter(_))));
        assert!(matches!(s.parse_gen("B(x) y"), Err(Error::Syntax { .. })));
    }

    #[test]
    fn cap_is_enforced_on_intern() {
        let s = GenStore::new(["x"]).unwrap().with_height_cap(2);
        let g2 = s.enumerate(2, KindFilter::E).unwrap();
        let g = &g2[0];
        let res = s.tuple(g, g.la().unwrap().inv(), g.left().unwrap(), g.ra().unwrap().inv(), g);
        assert_eq!(res, Err(Error::CapExceeded { height: 3, cap: 2 }));
    }

    #[test]
    fn alphabet_inference() {
        assert_eq!(infer_alphabet("x x' T(B(y);1;1;y;B(y))"), ["x", "y"]);
    }
}
