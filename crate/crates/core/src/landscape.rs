//! Landscapes: alternating words `g₀a₁g₁⋯aₙgₙ` whose triplets are all anchored.

use std::collections::HashSet;
use std::fmt;

use serde_json::{json, Value};

use crate::error::{Error, Result};
use crate::terms::{Anchor, Gen, GenStore, Side};
use crate::word::{GWord, Token};

/// Side `s` of `g2` with `(g1, a) = (g2^s, g2^{sa})`.
pub fn left_anchor_side(g1: &Gen, a: &Anchor, g2: &Gen) -> Option<Side> {
    Side::BOTH
        .into_iter()
        .find(|&s| g2.entry(s) == Some(g1) && g2.anchor(s) == Some(a))
}

/// Side `s` of `g1` with `(g2, a) = (g1^s, (g1^{sa})')`.
pub fn right_anchor_side(g1: &Gen, a: &Anchor, g2: &Gen) -> Option<Side> {
    Side::BOTH
        .into_iter()
        .find(|&s| g1.entry(s) == Some(g2) && g1.anchor(s).map(Anchor::inv).as_ref() == Some(a))
}

pub fn is_left_anchored(g1: &Gen, a: &Anchor, g2: &Gen) -> bool {
    left_anchor_side(g1, a, g2).is_some()
}

pub fn is_right_anchored(g1: &Gen, a: &Anchor, g2: &Gen) -> bool {
    right_anchor_side(g1, a, g2).is_some()
}

pub fn is_anchored(g1: &Gen, a: &Anchor, g2: &Gen) -> bool {
    is_left_anchored(g1, a, g2) || is_right_anchored(g1, a, g2)
}

#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum ShapeClass {
    SingleLetter,
    Uphill,
    Downhill,
    /// An uphill followed by a downhill, not both ends `1`.
    UpDown,
    /// A downhill followed by an uphill with distinct ends.
    Valley,
    Mountain,
    MountainRange,
    Canyon,
    General,
}

#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Landscape {
    letters: Vec<Gen>,
    anchors: Vec<Anchor>,
}

impl Landscape {
    pub fn single(g: Gen) -> Self {
        Landscape {
            letters: vec![g],
            anchors: Vec::new(),
        }
    }

    pub fn new(letters: Vec<Gen>, anchors: Vec<Anchor>) -> Result<Self> {
        if letters.is_empty() {
            return Err(Error::EmptyWord);
        }
        if anchors.len() + 1 != letters.len() {
            return Err(Error::NotAlternating(2 * letters.len().min(anchors.len() + 1)));
        }
        for (i, a) in anchors.iter().enumerate() {
            if !is_anchored(&letters[i], a, &letters[i + 1]) {
                return Err(Error::TripletNotAnchored(i + 1));
            }
        }
        Ok(Landscape { letters, anchors })
    }

    pub(crate) fn from_parts_unchecked(letters: Vec<Gen>, anchors: Vec<Anchor>) -> Self {
        debug_assert_eq!(letters.len(), anchors.len() + 1);
        Landscape { letters, anchors }
    }

    pub fn parse(store: &GenStore, text: &str) -> Result<Self> {
        validate_landscape(&GWord::parse(store, text)?)
    }

    pub fn letters(&self) -> &[Gen] {
        &self.letters
    }

    pub fn anchors(&self) -> &[Anchor] {
        &self.anchors
    }

    /// Number of anchors `n`.
    pub fn n(&self) -> usize {
        self.anchors.len()
    }

    /// Token length `ℓ(u) = 2n + 1`.
    pub fn len(&self) -> usize {
        self.letters.len() + self.anchors.len()
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    pub fn first(&self) -> &Gen {
        &self.letters[0]
    }

    pub fn last(&self) -> &Gen {
        self.letters.last().unwrap()
    }

    pub fn is_single(&self) -> bool {
        self.anchors.is_empty()
    }

    pub fn to_word(&self) -> GWord {
        let mut t = Vec::with_capacity(self.len());
        for (i, g) in self.letters.iter().enumerate() {
            if i > 0 {
                t.push(Token::Anchor(self.anchors[i - 1].clone()));
            }
            t.push(Token::Gen(g.clone()));
        }
        GWord::from_tokens(t).unwrap()
    }

    /// `u ∗ v`: concatenation writing the shared junction letter once.
    pub fn star(&self, other: &Landscape) -> Result<Landscape> {
        if self.last() != other.first() {
            return Err(Error::JunctionMismatch {
                left: self.last().to_string(),
                right: other.first().to_string(),
            });
        }
        let mut letters = self.letters.clone();
        letters.extend(other.letters[1..].iter().cloned());
        let mut anchors = self.anchors.clone();
        anchors.extend(other.anchors.iter().cloned());
        Ok(Landscape { letters, anchors })
    }

    /// `gₙ aₙ' gₙ₋₁ ⋯ g₁ a₁' g₀`
    pub fn reverse(&self) -> Landscape {
        Landscape {
            letters: self.letters.iter().rev().cloned().collect(),
            anchors: self.anchors.iter().rev().map(Anchor::inv).collect(),
        }
    }

    /// Sub-landscape on letters `i..=j`.
    pub fn slice(&self, i: usize, j: usize) -> Landscape {
        Landscape {
            letters: self.letters[i..=j].to_vec(),
            anchors: self.anchors[i..j].to_vec(),
        }
    }

    fn heights(&self) -> Vec<u32> {
        self.letters.iter().map(Gen::height).collect()
    }

    /// Letter indices of the rivers.
    pub fn rivers(&self) -> Vec<usize> {
        let h = self.heights();
        (1..h.len().saturating_sub(1))
            .filter(|&i| h[i - 1] == h[i] + 1 && h[i + 1] == h[i] + 1)
            .collect()
    }

    pub fn ridges(&self) -> Vec<usize> {
        let h = self.heights();
        (1..h.len().saturating_sub(1))
            .filter(|&i| h[i - 1] + 1 == h[i] && h[i + 1] + 1 == h[i])
            .collect()
    }

    /// Ridges of maximal height.
    pub fn peaks(&self) -> Vec<usize> {
        let ridges = self.ridges();
        let top = ridges.iter().map(|&i| self.letters[i].height()).max();
        ridges
            .into_iter()
            .filter(|&i| Some(self.letters[i].height()) == top)
            .collect()
    }

    /// `κ(u)`, the unique peak. A single letter is its own peak.
    pub fn kappa(&self) -> Result<&Gen> {
        if self.is_single() {
            return Ok(&self.letters[0]);
        }
        match self.peaks().as_slice() {
            [i] => Ok(&self.letters[*i]),
            _ => Err(Error::KappaNotUnique),
        }
    }

    pub fn height(&self) -> u32 {
        self.letters.iter().map(Gen::height).max().unwrap()
    }

    pub fn is_mountain_range(&self) -> bool {
        self.first().is_unit() && self.last().is_unit()
    }

    pub fn is_mountain(&self) -> bool {
        self.classify() == ShapeClass::Mountain
    }

    pub fn classify(&self) -> ShapeClass {
        if self.is_single() {
            return if self.first().is_unit() {
                ShapeClass::Mountain
            } else {
                ShapeClass::SingleLetter
            };
        }
        let h = self.heights();
        let ups: Vec<bool> = h.windows(2).map(|w| w[1] > w[0]).collect();
        let changes = ups.windows(2).filter(|w| w[0] != w[1]).count();
        let ends_unit = self.is_mountain_range();
        match (changes, ups[0]) {
            (0, true) => ShapeClass::Uphill,
            (0, false) => ShapeClass::Downhill,
            (1, true) if ends_unit => ShapeClass::Mountain,
            (1, true) => ShapeClass::UpDown,
            (1, false) if self.first() == self.last() => ShapeClass::Canyon,
            (1, false) => ShapeClass::Valley,
            _ if ends_unit => ShapeClass::MountainRange,
            _ => ShapeClass::General,
        }
    }

    /// `λ_l(u)`: the initial maximal uphill.
    pub fn left_hill(&self) -> Landscape {
        let mut j = 0;
        while j + 1 < self.letters.len() && self.letters[j + 1].height() > self.letters[j].height() {
            j += 1;
        }
        self.slice(0, j)
    }

    /// `λ_r(u)`: the final maximal downhill.
    pub fn right_hill(&self) -> Landscape {
        let n = self.letters.len() - 1;
        let mut i = n;
        while i > 0 && self.letters[i - 1].height() > self.letters[i].height() {
            i -= 1;
        }
        self.slice(i, n)
    }

    pub fn is_prefix_of(&self, other: &Landscape) -> bool {
        other.letters.starts_with(&self.letters) && other.anchors.starts_with(&self.anchors)
    }

    pub fn is_suffix_of(&self, other: &Landscape) -> bool {
        other.letters.ends_with(&self.letters) && other.anchors.ends_with(&self.anchors)
    }

    pub fn to_json(&self) -> Value {
        json!({
            "letters": self.letters.iter().map(|g| json!({"term": g.text(), "height": g.height()})).collect::<Vec<_>>(),
            "anchors": self.anchors.iter().map(|a| a.to_string()).collect::<Vec<_>>(),
        })
    }
}

impl fmt::Display for Landscape {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (i, g) in self.letters.iter().enumerate() {
            if i > 0 {
                write!(f, " {} ", self.anchors[i - 1])?;
            }
            write!(f, "{g}")?;
        }
        Ok(())
    }
}

impl fmt::Debug for Landscape {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "\"{self}\"")
    }
}

/// Reads a word as a landscape, letter and anchor positions alternating.
///
/// A `1` is read as the unit letter at even positions and as the anchor `1`
/// at odd positions.
pub fn validate_landscape(w: &GWord) -> Result<Landscape> {
    let mut letters = Vec::new();
    let mut anchors = Vec::new();
    for (i, t) in w.tokens().iter().enumerate() {
        match (i % 2, t) {
            (0, Token::Gen(g)) => letters.push(g.clone()),
            (0, Token::Anchor(Anchor::One)) => {
                return Err(Error::InternalInvariantViolation(
                    "anchor 1 token at letter position".into(),
                ))
            }
            (1, Token::Anchor(a)) => anchors.push(a.clone()),
            (1, Token::Gen(g)) if g.is_unit() => anchors.push(Anchor::One),
            _ => return Err(Error::NotAlternating(i)),
        }
    }
    if w.len().is_multiple_of(2) {
        return Err(Error::NotAlternating(w.len()));
    }
    Landscape::new(letters, anchors)
}

/// The canonical uphill `λ_l(g)` from `1` to `g`.
pub fn lambda_l_gen(g: &Gen) -> Landscape {
    // Blocks g^c·g^l·g from the top down, reversed at the end.
    let mut letters = vec![g.clone()];
    let mut anchors = Vec::new();
    let mut cur = g.clone();
    while cur.height() >= 2 {
        let la = cur.la().unwrap().clone();
        let l = cur.left().unwrap().clone();
        let c = cur.mid().unwrap().clone();
        anchors.push(la.clone());
        letters.push(l);
        anchors.push(la.inv());
        letters.push(c.clone());
        cur = c;
    }
    if cur.height() == 1 {
        anchors.push(Anchor::One);
        letters.push(cur.left().unwrap().clone());
    }
    letters.reverse();
    anchors.reverse();
    Landscape::from_parts_unchecked(letters, anchors)
}

/// The canonical downhill `λ_r(g)` from `g` to `1`.
pub fn lambda_r_gen(g: &Gen) -> Landscape {
    let mut letters = vec![g.clone()];
    let mut anchors = Vec::new();
    let mut cur = g.clone();
    while cur.height() >= 2 {
        let ra = cur.ra().unwrap().clone();
        let r = cur.right().unwrap().clone();
        let c = cur.mid().unwrap().clone();
        anchors.push(ra.inv());
        letters.push(r);
        anchors.push(ra);
        letters.push(c.clone());
        cur = c;
    }
    if cur.height() == 1 {
        anchors.push(Anchor::One);
        letters.push(cur.right().unwrap().clone());
    }
    Landscape::from_parts_unchecked(letters, anchors)
}

/// `β₁` of a single token.
pub fn beta1_token(store: &GenStore, t: &Token) -> Result<Landscape> {
    let one = store.unit();
    Ok(match t {
        Token::Gen(g) => lambda_l_gen(g).star(&lambda_r_gen(g))?,
        Token::Anchor(Anchor::One) => Landscape::single(one),
        Token::Anchor(Anchor::Plain(x)) => Landscape::from_parts_unchecked(
            vec![one.clone(), store.base(x)?, one],
            vec![Anchor::One, Anchor::Plain(x.clone())],
        ),
        Token::Anchor(Anchor::Primed(x)) => Landscape::from_parts_unchecked(
            vec![one.clone(), store.base(x)?, one],
            vec![Anchor::Primed(x.clone()), Anchor::One],
        ),
    })
}

/// `β₁(e₁⋯eₙ) = β₁(e₁) ∗ ⋯ ∗ β₁(eₙ)`, always a mountain range.
pub fn beta1(store: &GenStore, w: &GWord) -> Result<Landscape> {
    let mut acc = Landscape::single(store.unit());
    for t in w.tokens() {
        acc = acc.star(&beta1_token(store, t)?)?;
    }
    Ok(acc)
}

/// All `2^{↑(g)}` uphills from `1` to `g`.
pub fn enumerate_uphills(g: &Gen) -> Vec<Landscape> {
    if g.is_unit() {
        return vec![Landscape::single(g.clone())];
    }
    let mut out = Vec::new();
    let mut seen = HashSet::new();
    for s in Side::BOTH {
        let (e, a) = (g.entry(s).unwrap(), g.anchor(s).unwrap());
        for mut u in enumerate_uphills(e) {
            u.anchors.push(a.clone());
            u.letters.push(g.clone());
            if seen.insert(u.clone()) {
                out.push(u);
            }
        }
    }
    out
}

/// All downhills from `g` to `1`, as reverses of the uphills.
pub fn enumerate_downhills(g: &Gen) -> Vec<Landscape> {
    enumerate_uphills(g).iter().map(Landscape::reverse).collect()
}

/// All `4^{↑(g)}` mountains with peak `g`.
pub fn enumerate_mountains(g: &Gen) -> Vec<Landscape> {
    let ups = enumerate_uphills(g);
    let downs = enumerate_downhills(g);
    let mut out = Vec::with_capacity(ups.len() * downs.len());
    for u in &ups {
        for d in &downs {
            out.push(u.star(d).expect("hills share the peak"));
        }
    }
    out
}

/// An uphill from `h` to `g` of length `↑(g) − ↑(h)` inside `ε(g)`, if `h ∈ ε(g)`.
pub fn uphill_between(h: &Gen, g: &Gen) -> Option<Landscape> {
    if h == g {
        return Some(Landscape::single(g.clone()));
    }
    if g.height() <= h.height() {
        return None;
    }
    for s in Side::BOTH {
        let e = g.entry(s)?;
        if let Some(mut u) = uphill_between(h, e) {
            u.anchors.push(g.anchor(s).unwrap().clone());
            u.letters.push(g.clone());
            return Some(u);
        }
    }
    None
}
