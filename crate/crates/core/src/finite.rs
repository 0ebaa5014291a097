//! Finite semigroups given by multiplication tables, and skeleton mappings
//! into them.

use std::collections::{BTreeMap, BTreeSet, HashMap};

use rand::seq::SliceRandom;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};
use serde_json::{json, Value};

use crate::error::{Error, Result};
use crate::terms::{Anchor, Gen, GenStore, Letter};
use crate::word::{GWord, Token};

/// Largest `n` accepted by [`full_transformation_monoid`].
pub const MAX_TRANSFORMATION_POINTS: usize = 4;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FiniteSemigroup {
    size: usize,
    table: Vec<usize>,
    identity: Option<usize>,
}

#[derive(Serialize, Deserialize)]
struct TableJson {
    size: usize,
    table: Vec<Vec<usize>>,
    #[serde(default)]
    identity: Option<usize>,
}

impl FiniteSemigroup {
    /// Validates shape, associativity and the declared identity.
    pub fn new(table: Vec<Vec<usize>>, identity: Option<usize>) -> Result<Self> {
        let m = table.len();
        if m == 0 {
            return Err(Error::BadShape("empty table".into()));
        }
        let mut flat = Vec::with_capacity(m * m);
        for (i, row) in table.iter().enumerate() {
            if row.len() != m {
                return Err(Error::BadShape(format!("row {i} has {} entries, expected {m}", row.len())));
            }
            if let Some(&v) = row.iter().find(|&&v| v >= m) {
                return Err(Error::BadShape(format!("entry {v} in row {i} is out of range")));
            }
            flat.extend_from_slice(row);
        }
        let s = FiniteSemigroup {
            size: m,
            table: flat,
            identity: None,
        };
        for a in 0..m {
            for b in 0..m {
                let ab = s.mul(a, b);
                for c in 0..m {
                    if s.mul(ab, c) != s.mul(a, s.mul(b, c)) {
                        return Err(Error::NotAssociative(a, b, c));
                    }
                }
            }
        }
        let identity = match identity {
            Some(e) if e >= m || (0..m).any(|a| s.mul(e, a) != a || s.mul(a, e) != a) => {
                return Err(Error::BadIdentity(e))
            }
            Some(e) => Some(e),
            None => s.find_identity(),
        };
        Ok(FiniteSemigroup { identity, ..s })
    }

    /// Reads `{"size": m, "table": [[…]], "identity": id|null}`.
    pub fn from_json(text: &str) -> Result<Self> {
        let t: TableJson = serde_json::from_str(text).map_err(|e| Error::Syntax {
            pos: e.column(),
            msg: format!("table JSON: {e}"),
        })?;
        if t.table.len() != t.size {
            return Err(Error::BadShape(format!("size {} but {} rows", t.size, t.table.len())));
        }
        FiniteSemigroup::new(t.table, t.identity)
    }

    pub fn to_json(&self) -> Value {
        json!({
            "size": self.size,
            "table": self.table.chunks(self.size).collect::<Vec<_>>(),
            "identity": self.identity,
        })
    }

    fn find_identity(&self) -> Option<usize> {
        (0..self.size).find(|&e| (0..self.size).all(|a| self.mul(e, a) == a && self.mul(a, e) == a))
    }

    pub fn size(&self) -> usize {
        self.size
    }

    pub fn identity(&self) -> Option<usize> {
        self.identity
    }

    pub fn mul(&self, a: usize, b: usize) -> usize {
        self.table[a * self.size + b]
    }

    /// `S¹`: `self` when it already has an identity, else one new element `m`.
    pub fn adjoin_identity(&self) -> FiniteSemigroup {
        if self.identity.is_some() {
            return self.clone();
        }
        let m = self.size;
        let n = m + 1;
        let mut table = vec![0; n * n];
        for a in 0..n {
            for b in 0..n {
                table[a * n + b] = match (a == m, b == m) {
                    (true, _) => b,
                    (false, true) => a,
                    _ => self.mul(a, b),
                };
            }
        }
        FiniteSemigroup {
            size: n,
            table,
            identity: Some(m),
        }
    }

    pub fn is_idempotent(&self, a: usize) -> bool {
        self.mul(a, a) == a
    }

    pub fn idempotents(&self) -> Vec<usize> {
        (0..self.size).filter(|&a| self.is_idempotent(a)).collect()
    }

    pub fn is_inverse(&self, a: usize, b: usize) -> bool {
        self.mul(self.mul(a, b), a) == a && self.mul(self.mul(b, a), b) == b
    }

    pub fn inverses_of(&self, a: usize) -> Vec<usize> {
        (0..self.size).filter(|&b| self.is_inverse(a, b)).collect()
    }

    /// First element without an inverse, if any.
    pub fn first_irregular(&self) -> Option<usize> {
        (0..self.size).find(|&a| (0..self.size).all(|b| self.mul(self.mul(a, b), a) != a))
    }

    pub fn is_regular(&self) -> bool {
        self.first_irregular().is_none()
    }

    /// `S(e, f) = {g ∈ E : fg = g = ge, egf = ef}` for idempotents `e, f`.
    pub fn sandwich_finite(&self, e: usize, f: usize) -> Result<Vec<usize>> {
        if !self.is_idempotent(e) || !self.is_idempotent(f) {
            return Err(Error::NotIdempotent);
        }
        Ok(self.sandwich_raw(e, f))
    }

    /// The defining conditions without requiring `e`, `f` idempotent.
    pub fn sandwich_raw(&self, e: usize, f: usize) -> Vec<usize> {
        let ef = self.mul(e, f);
        (0..self.size)
            .filter(|&g| {
                self.is_idempotent(g)
                    && self.mul(f, g) == g
                    && self.mul(g, e) == g
                    && self.mul(self.mul(e, g), f) == ef
            })
            .collect()
    }

    /// Closure of `gens` under the product.
    pub fn closure(&self, gens: impl IntoIterator<Item = usize>) -> BTreeSet<usize> {
        let mut set: BTreeSet<usize> = gens.into_iter().collect();
        let mut frontier: Vec<usize> = set.iter().copied().collect();
        while !frontier.is_empty() {
            let mut next = Vec::new();
            let cur: Vec<usize> = set.iter().copied().collect();
            for &a in &frontier {
                for &b in &cur {
                    for p in [self.mul(a, b), self.mul(b, a)] {
                        if set.insert(p) {
                            next.push(p);
                        }
                    }
                }
            }
            frontier = next;
        }
        set
    }

    pub fn is_closed(&self, set: &BTreeSet<usize>) -> bool {
        set.iter().all(|&a| set.iter().all(|&b| set.contains(&self.mul(a, b))))
    }

    /// Every member has an inverse inside `set`.
    pub fn is_regular_subset(&self, set: &BTreeSet<usize>) -> bool {
        set.iter().all(|&a| set.iter().any(|&b| self.is_inverse(a, b)))
    }
}

/// `T_n`: all maps `{0..n-1} → {0..n-1}`, indexed lexicographically by image
/// tuple, composed left to right: `(a·b)(i) = b(a(i))`.
pub fn full_transformation_monoid(n: usize) -> Result<FiniteSemigroup> {
    if n == 0 {
        return Err(Error::InvalidArgument("T_0 is not defined here".into()));
    }
    if n > MAX_TRANSFORMATION_POINTS {
        return Err(Error::TooLarge(n));
    }
    let maps: Vec<Vec<usize>> = (0..n.pow(n as u32)).map(|k| transformation(n, k)).collect();
    let table = maps
        .iter()
        .map(|a| {
            maps.iter()
                .map(|b| transformation_index(n, &a.iter().map(|&i| b[i]).collect::<Vec<_>>()))
                .collect()
        })
        .collect();
    let id = transformation_index(n, &(0..n).collect::<Vec<_>>());
    FiniteSemigroup::new(table, Some(id))
}

/// Image tuple of the `k`-th element of `T_n`.
pub fn transformation(n: usize, mut k: usize) -> Vec<usize> {
    let mut v = vec![0; n];
    for slot in v.iter_mut().rev() {
        *slot = k % n;
        k /= n;
    }
    v
}

pub fn transformation_index(n: usize, images: &[usize]) -> usize {
    images.iter().fold(0, |acc, &i| acc * n + i)
}

#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum Strategy {
    /// Lowest element id.
    First,
    /// Pseudo-random, reproducible from the seed and the generator's text.
    Seeded(u64),
}

fn fnv1a(s: &str) -> u64 {
    s.bytes().fold(0xcbf2_9ce4_8422_2325, |h, b| (h ^ b as u64).wrapping_mul(0x0100_0000_01b3))
}

impl Strategy {
    fn choose(self, key: &str, options: &[usize]) -> Option<usize> {
        match self {
            Strategy::First => options.first().copied(),
            Strategy::Seeded(seed) => {
                let mut rng = ChaCha8Rng::seed_from_u64(seed ^ fnv1a(key));
                options.choose(&mut rng).copied()
            }
        }
    }
}

/// A skeleton mapping `φ: G → S¹`, filled in lazily.
#[derive(Clone, Debug)]
pub struct SkeletonMap {
    target: FiniteSemigroup,
    one: usize,
    strategy: Strategy,
    max_height: u32,
    anchors: HashMap<Anchor, usize>,
    gens: HashMap<Gen, usize>,
    sides: HashMap<Gen, (usize, usize)>,
}

/// Builds `φ` from images of the letters. `1φ` is the identity of `S¹`.
pub fn build_skeleton(
    s: &FiniteSemigroup,
    x_images: &[(Letter, usize)],
    strategy: Strategy,
    max_height: u32,
) -> Result<SkeletonMap> {
    if let Some(a) = s.first_irregular() {
        return Err(Error::NotRegular(a));
    }
    let target = s.adjoin_identity();
    let one = target.identity().unwrap();
    let mut anchors = HashMap::new();
    anchors.insert(Anchor::One, one);
    for (x, img) in x_images {
        if *img >= s.size() {
            return Err(Error::InvalidArgument(format!("image {img} of {x} is not an element")));
        }
        let plain = Anchor::Plain(x.clone());
        let primed = Anchor::Primed(x.clone());
        let inv = target.inverses_of(*img);
        let chosen = strategy
            .choose(&primed.to_string(), &inv)
            .ok_or(Error::NotRegular(*img))?;
        anchors.insert(plain, *img);
        anchors.insert(primed, chosen);
    }
    Ok(SkeletonMap {
        target,
        one,
        strategy,
        max_height,
        anchors,
        gens: HashMap::new(),
        sides: HashMap::new(),
    })
}

impl SkeletonMap {
    pub fn target(&self) -> &FiniteSemigroup {
        &self.target
    }

    /// `1φ`
    pub fn one(&self) -> usize {
        self.one
    }

    pub fn strategy(&self) -> Strategy {
        self.strategy
    }

    pub fn max_height(&self) -> u32 {
        self.max_height
    }

    pub fn anchor(&self, a: &Anchor) -> Result<usize> {
        self.anchors
            .get(a)
            .copied()
            .ok_or_else(|| Error::InvalidArgument(format!("no image for letter of anchor {a}")))
    }

    fn prod(&self, xs: &[usize]) -> usize {
        xs.iter().fold(self.one, |acc, &x| self.target.mul(acc, x))
    }

    /// `(g^{φ,l}, g^{φ,r})` for `↑(g) ≥ 2`, once `gφ` is known.
    pub fn sides(&self, g: &Gen) -> Option<(usize, usize)> {
        self.sides.get(g).copied()
    }

    /// `gφ`, computing and memoising entries as needed.
    pub fn gen(&mut self, g: &Gen) -> Result<usize> {
        if let Some(&v) = self.gens.get(g) {
            return Ok(v);
        }
        if g.height() > self.max_height {
            return Err(Error::CapExceeded {
                height: g.height(),
                cap: self.max_height,
            });
        }
        let v = match g.height() {
            0 => self.one,
            1 => {
                let x = g.base_letter().unwrap();
                let p = self.anchor(&Anchor::Plain(x.clone()))?;
                let q = self.anchor(&Anchor::Primed(x.clone()))?;
                self.target.mul(p, q)
            }
            _ => {
                let (l, r, c) = (g.left().unwrap(), g.right().unwrap(), g.mid().unwrap());
                let (la, ra) = (g.la().unwrap(), g.ra().unwrap());
                let (lp, rp, cp) = (self.gen(l)?, self.gen(r)?, self.gen(c)?);
                let phi_l = self.prod(&[cp, self.anchor(&la.inv())?, lp, self.anchor(la)?]);
                let phi_r = self.prod(&[self.anchor(&ra.inv())?, rp, self.anchor(ra)?, cp]);
                if !self.target.is_idempotent(phi_l) || !self.target.is_idempotent(phi_r) {
                    return Err(Error::InternalInvariantViolation(format!(
                        "side images of {g} are not idempotent"
                    )));
                }
                let cands = self.target.sandwich_raw(phi_r, phi_l);
                let v = self
                    .strategy
                    .choose(g.text(), &cands)
                    .ok_or(Error::EmptySandwich(phi_r, phi_l))?;
                self.sides.insert(g.clone(), (phi_l, phi_r));
                v
            }
        };
        self.gens.insert(g.clone(), v);
        Ok(v)
    }

    pub fn token(&mut self, t: &Token) -> Result<usize> {
        match t {
            Token::Gen(g) => self.gen(g),
            Token::Anchor(a) => self.anchor(a),
        }
    }

    /// `φ̂(w)`: the product of the token images, left to right.
    pub fn phi_hat(&mut self, w: &GWord) -> Result<usize> {
        let mut acc = self.one;
        for t in w.tokens() {
            let v = self.token(t)?;
            acc = self.target.mul(acc, v);
        }
        Ok(acc)
    }

    /// Images of all anchors and of all generators up to `max_height`.
    pub fn fill(&mut self, store: &GenStore, max_height: u32) -> Result<()> {
        for g in store.generators_up_to(max_height)? {
            self.gen(&g)?;
        }
        Ok(())
    }

    /// Checks the defining conditions on every memoised entry; returns failures.
    pub fn verify(&self) -> Vec<String> {
        let t = &self.target;
        let mut bad = Vec::new();
        for (a, &img) in &self.anchors {
            if let Anchor::Plain(_) = a {
                let q = self.anchors[&a.inv()];
                if !t.is_inverse(img, q) {
                    bad.push(format!("{}φ is not an inverse of {a}φ", a.inv()));
                }
            }
            if t.mul(self.one, img) != img || t.mul(img, self.one) != img {
                bad.push(format!("1φ does not act as identity on {a}φ"));
            }
        }
        for (g, &img) in &self.gens {
            if g.height() == 1 {
                let x = g.base_letter().unwrap();
                let p = self.anchors[&Anchor::Plain(x.clone())];
                let q = self.anchors[&Anchor::Primed(x.clone())];
                if img != t.mul(p, q) {
                    bad.push(format!("{g}φ differs from (xφ)(x'φ)"));
                }
            }
            if let Some(&(l, r)) = self.sides.get(g) {
                if !t.is_idempotent(l) || !t.is_idempotent(r) {
                    bad.push(format!("side images of {g} are not idempotent"));
                }
                if !t.sandwich_raw(r, l).contains(&img) {
                    bad.push(format!("{g}φ is not in the sandwich set of its sides"));
                }
            }
        }
        bad.sort();
        bad
    }

    /// Closure of all images up to `max_height` inside `S¹`.
    pub fn image_closure(&mut self, store: &GenStore, max_height: u32) -> Result<ClosureReport> {
        self.fill(store, max_height)?;
        let mut gens: Vec<usize> = self.anchors.values().copied().collect();
        gens.extend(
            self.gens
                .iter()
                .filter(|(g, _)| g.height() <= max_height)
                .map(|(_, &v)| v),
        );
        let set = self.target.closure(gens);
        let regular = self.target.is_regular_subset(&set);
        let one = self.one;
        let monoid = set.contains(&one)
            && set.iter().all(|&a| self.target.mul(one, a) == a && self.target.mul(a, one) == a);
        Ok(ClosureReport {
            elements: set.into_iter().collect(),
            regular,
            monoid_with_one_phi: monoid,
        })
    }

    /// Anchor images, generator images grouped by height, and check results.
    pub fn report(&mut self, store: &GenStore) -> Result<Value> {
        let closure = self.image_closure(store, self.max_height)?;
        let failures = self.verify();
        let mut anchors: Vec<(String, usize)> =
            self.anchors.iter().map(|(a, &v)| (a.to_string(), v)).collect();
        anchors.sort();
        let mut by_height: BTreeMap<u32, BTreeMap<String, usize>> = BTreeMap::new();
        for (g, &v) in &self.gens {
            by_height.entry(g.height()).or_default().insert(g.text().to_string(), v);
        }
        let pass = |b: bool| if b { "PASS" } else { "FAIL" };
        let (strategy, seed) = match self.strategy {
            Strategy::First => ("first", None),
            Strategy::Seeded(s) => ("seeded", Some(s)),
        };
        Ok(json!({
            "strategy": strategy,
            "seed": seed,
            "max_height": self.max_height,
            "one": self.one,
            "anchors": anchors.into_iter().collect::<BTreeMap<_, _>>(),
            "generators": by_height
                .into_iter()
                .map(|(h, m)| json!({"height": h, "images": m}))
                .collect::<Vec<_>>(),
            "closure": closure.elements,
            "checks": {
                "skeleton_conditions": pass(failures.is_empty()),
                "closure_regular": pass(closure.regular),
                "closure_monoid_one_phi": pass(closure.monoid_with_one_phi),
            },
            "failures": failures,
        }))
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ClosureReport {
    pub elements: Vec<usize>,
    pub regular: bool,
    pub monoid_with_one_phi: bool,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Probe {
    LooksMinimal,
    FoundProper(Vec<usize>),
    Unknown,
}

/// Size up to which [`weakly_generated_probe`] scans all subsets.
pub const EXHAUSTIVE_PROBE_LIMIT: usize = 12;

/// Looks for a proper regular subsemigroup containing `x_images`.
///
/// Exhaustive up to [`EXHAUSTIVE_PROBE_LIMIT`] elements. Beyond that, grows the
/// closure of `x_images` by inverses until regular, then falls back to a greedy
/// descent from `S`; neither can answer `LooksMinimal`. `budget`
/// bounds the number of candidate subsets examined.
pub fn weakly_generated_probe(s: &FiniteSemigroup, x_images: &[usize], budget: usize) -> Result<Probe> {
    if let Some(a) = s.first_irregular() {
        return Err(Error::NotRegular(a));
    }
    if let Some(&a) = x_images.iter().find(|&&a| a >= s.size()) {
        return Err(Error::InvalidArgument(format!("{a} is not an element")));
    }
    let m = s.size();
    let full: BTreeSet<usize> = (0..m).collect();
    let required: u64 = x_images.iter().fold(0, |acc, &a| acc | 1 << a);
    if m <= EXHAUSTIVE_PROBE_LIMIT {
        let mut spent = 0;
        for mask in 1u64..(1 << m) - 1 {
            if mask & required != required {
                continue;
            }
            spent += 1;
            if spent > budget {
                return Ok(Probe::Unknown);
            }
            let set: BTreeSet<usize> = (0..m).filter(|&i| mask >> i & 1 == 1).collect();
            if s.is_closed(&set) && s.is_regular_subset(&set) {
                return Ok(Probe::FoundProper(set.into_iter().collect()));
            }
        }
        return Ok(Probe::LooksMinimal);
    }
    let mut spent = 0;
    let mut grown = s.closure(x_images.iter().copied());
    while let Some(&a) = grown.iter().find(|&&a| !grown.iter().any(|&b| s.is_inverse(a, b))) {
        spent += 1;
        if spent > budget {
            return Ok(Probe::Unknown);
        }
        let b = s.inverses_of(a)[0];
        grown.insert(b);
        grown = s.closure(grown);
    }
    if grown != full {
        return Ok(Probe::FoundProper(grown.into_iter().collect()));
    }
    let mut current = full.clone();
    let mut improved = true;
    while improved {
        improved = false;
        for e in current.clone() {
            if x_images.contains(&e) {
                continue;
            }
            spent += 1;
            if spent > budget {
                break;
            }
            let cand = s.closure(current.iter().copied().filter(|&a| a != e));
            if cand.len() < current.len() && s.is_regular_subset(&cand) && x_images.iter().all(|a| cand.contains(a)) {
                current = cand;
                improved = true;
                break;
            }
        }
    }
    Ok(if current != full {
        Probe::FoundProper(current.into_iter().collect())
    } else {
        Probe::Unknown
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn left_zero() -> FiniteSemigroup {
        FiniteSemigroup::new(vec![vec![0, 0], vec![1, 1]], None).unwrap()
    }

    #[test]
    fn load_examples() {
        let t = FiniteSemigroup::new(vec![vec![0]], None).unwrap();
        assert_eq!(t.identity(), Some(0));
        assert_eq!(t.adjoin_identity(), t);
        let lz = left_zero();
        assert_eq!(lz.identity(), None);
        assert_eq!(lz.adjoin_identity().size(), 3);
        // 0·0 = 1, all other products 0: (0·0)·1 = 0 but 0·(0·1) = 1
        let bad = FiniteSemigroup::new(vec![vec![1, 0], vec![0, 0]], None);
        assert!(matches!(bad, Err(Error::NotAssociative(..))));
        assert!(matches!(
            FiniteSemigroup::new(vec![vec![0, 2], vec![0, 0]], None),
            Err(Error::BadShape(_))
        ));
        assert!(matches!(
            FiniteSemigroup::new(vec![vec![0, 0], vec![0]], None),
            Err(Error::BadShape(_))
        ));
        assert_eq!(FiniteSemigroup::new(vec![vec![0, 0], vec![1, 1]], Some(0)), Err(Error::BadIdentity(0)));
    }

    #[test]
    fn json_round_trip() {
        let lz = left_zero();
        let text = lz.to_json().to_string();
        assert_eq!(FiniteSemigroup::from_json(&text).unwrap(), lz);
        assert!(matches!(FiniteSemigroup::from_json("{\"size\": 2"), Err(Error::Syntax { .. })));
    }

    #[test]
    fn transformation_monoids() {
        assert_eq!(full_transformation_monoid(1).unwrap().size(), 1);
        let t2 = full_transformation_monoid(2).unwrap();
        assert_eq!(t2.size(), 4);
        assert!(t2.is_regular());
        let id = t2.identity().unwrap();
        assert_eq!(transformation(2, id), vec![0, 1]);
        assert!(t2.inverses_of(id).contains(&id));
        let t3 = full_transformation_monoid(3).unwrap();
        assert_eq!(t3.size(), 27);
        assert!(t3.is_regular());
        assert_eq!(full_transformation_monoid(5), Err(Error::TooLarge(5)));
        // composition is left to right
        let a = transformation_index(3, &[1, 1, 2]);
        let b = transformation_index(3, &[0, 2, 2]);
        assert_eq!(transformation(3, t3.mul(a, b)), vec![2, 2, 2]);
    }

    #[test]
    fn idempotents_and_sandwich() {
        let t2 = full_transformation_monoid(2).unwrap();
        for e in t2.idempotents() {
            assert_eq!(t2.sandwich_finite(e, e).unwrap(), vec![e]);
        }
        let swap = transformation_index(2, &[1, 0]);
        assert_eq!(t2.sandwich_finite(swap, swap), Err(Error::NotIdempotent));
    }

    #[test]
    fn non_regular_rejected() {
        // null semigroup: 1 has no inverse
        let nil = FiniteSemigroup::new(vec![vec![0, 0], vec![0, 0]], None).unwrap();
        assert!(!nil.is_regular());
        let letters = vec![(Letter::new("x").unwrap(), 1)];
        assert_eq!(
            build_skeleton(&nil, &letters, Strategy::First, 2).unwrap_err(),
            Error::NotRegular(1)
        );
    }

    #[test]
    fn skeleton_identity_chain() {
        let store = GenStore::new(["x"]).unwrap();
        let t2 = full_transformation_monoid(2).unwrap();
        let id = t2.identity().unwrap();
        let mut sk = build_skeleton(&t2, &[(store.letter("x").unwrap(), id)], Strategy::First, 3).unwrap();
        assert_eq!(sk.anchor(&store.parse_anchor("x'").unwrap()).unwrap(), id);
        assert_eq!(sk.gen(&store.base_named("x").unwrap()).unwrap(), id);
        let c = sk.image_closure(&store, 3).unwrap();
        assert_eq!(c.elements, vec![id]);
        assert!(c.regular && c.monoid_with_one_phi);
        assert!(sk.verify().is_empty());
        let g4 = store.enumerate(3, crate::terms::KindFilter::All).unwrap();
        assert!(sk.gen(&g4[0]).is_ok());
        let too_high = store.enumerate(4, crate::terms::KindFilter::E).unwrap();
        assert!(matches!(sk.gen(&too_high[0]), Err(Error::CapExceeded { .. })));
    }

    #[test]
    fn skeleton_into_t3() {
        let store = GenStore::new(["x"]).unwrap();
        let t3 = full_transformation_monoid(3).unwrap();
        let c1 = transformation_index(3, &[1, 1, 1]);
        for strat in [Strategy::First, Strategy::Seeded(11)] {
            let mut sk = build_skeleton(&t3, &[(store.letter("x").unwrap(), c1)], strat, 3).unwrap();
            let c = sk.image_closure(&store, 3).unwrap();
            assert!(c.regular && c.monoid_with_one_phi);
            assert!(c.elements.contains(&c1));
            assert!(sk.verify().is_empty());
            for g in store.enumerate(2, crate::terms::KindFilter::All).unwrap() {
                let (l, r) = sk.sides(&g).unwrap();
                assert!(t3.is_idempotent(l) && t3.is_idempotent(r));
            }
        }
    }

    #[test]
    fn phi_hat_respects_relations() {
        let store = GenStore::new(["x"]).unwrap();
        let t3 = full_transformation_monoid(3).unwrap();
        let a = transformation_index(3, &[0, 0, 1]);
        let mut sk = build_skeleton(&t3, &[(store.letter("x").unwrap(), a)], Strategy::First, 3).unwrap();
        let w = |t: &str| GWord::parse(&store, t).unwrap();
        assert_eq!(sk.phi_hat(&w("1")).unwrap(), sk.one());
        assert_eq!(sk.phi_hat(&w("x x' x")).unwrap(), sk.phi_hat(&w("x")).unwrap());
        for r in crate::rewrite::relations(&store, 3).unwrap() {
            assert_eq!(sk.phi_hat(&r.lhs).unwrap(), sk.phi_hat(&r.rhs).unwrap(), "{:?}", r);
        }
    }

    #[test]
    fn probe_examples() {
        let triv = FiniteSemigroup::new(vec![vec![0]], None).unwrap();
        assert_eq!(weakly_generated_probe(&triv, &[0], 100).unwrap(), Probe::LooksMinimal);
        let t2 = full_transformation_monoid(2).unwrap();
        let id = t2.identity().unwrap();
        assert_eq!(weakly_generated_probe(&t2, &[id], 100).unwrap(), Probe::FoundProper(vec![id]));
        let t3 = full_transformation_monoid(3).unwrap();
        let c = transformation_index(3, &[0, 0, 1]);
        assert_eq!(weakly_generated_probe(&t3, &[c], 0).unwrap(), Probe::Unknown);
        assert!(matches!(weakly_generated_probe(&t3, &[c], 1000).unwrap(), Probe::FoundProper(_)));
    }
}
