//! The model `(M, ⊙)` on mountains: products, Green's relations, idempotents,
//! inverses, sandwich sets and the natural partial order.
//!
//! Idempotence, inverses and the natural order are decided algebraically with
//! `⊙`; the gorge characterisations are exposed separately as cross-checks.

use std::fmt;

use crate::error::{Error, Result};
use crate::landscape::{enumerate_mountains, Landscape, ShapeClass};
use crate::rewrite::{beta, beta2, gorge_bounds, is_gorge, Bounds, GorgeResult};
use crate::terms::{preceq, Gen, GenStore};
use crate::word::GWord;

/// A river-free mountain range; the trivial mountain `1` included.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Mountain(Landscape);

impl Mountain {
    pub fn new(l: Landscape) -> Result<Self> {
        if l.classify() == ShapeClass::Mountain {
            Ok(Mountain(l))
        } else {
            Err(Error::NotAMountain)
        }
    }

    pub fn unit(store: &GenStore) -> Self {
        Mountain(Landscape::single(store.unit()))
    }

    pub fn parse(store: &GenStore, text: &str) -> Result<Self> {
        Mountain::new(Landscape::parse(store, text)?)
    }

    /// The normal form `β(w)`.
    pub fn of_word(store: &GenStore, w: &GWord) -> Result<Self> {
        Ok(Mountain(beta(store, w)?))
    }

    pub fn of_text(store: &GenStore, text: &str) -> Result<Self> {
        Mountain::of_word(store, &GWord::parse(store, text)?)
    }

    pub fn landscape(&self) -> &Landscape {
        &self.0
    }

    pub fn into_landscape(self) -> Landscape {
        self.0
    }

    pub fn kappa(&self) -> &Gen {
        self.0.kappa().expect("mountains have a unique peak")
    }

    pub fn height(&self) -> u32 {
        self.kappa().height()
    }

    pub fn left_hill(&self) -> Landscape {
        self.0.left_hill()
    }

    pub fn right_hill(&self) -> Landscape {
        self.0.right_hill()
    }

    /// `β₂`-form of the reverse, an inverse of `self`.
    pub fn reverse(&self) -> Mountain {
        Mountain(self.0.reverse())
    }
}

impl fmt::Display for Mountain {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        self.0.fmt(f)
    }
}

impl fmt::Debug for Mountain {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "\"{}\"", self.0)
    }
}

fn sorted(mut v: Vec<Mountain>) -> Vec<Mountain> {
    v.sort_by_cached_key(|m| m.to_string());
    v.dedup();
    v
}

/// `u ⊙ v = β₂(u ∗ v)`
pub fn mul(store: &GenStore, u: &Mountain, v: &Mountain) -> Result<Mountain> {
    let joined = u.0.star(&v.0)?;
    Ok(Mountain(beta2(store, &joined)?))
}

pub fn mul3(store: &GenStore, a: &Mountain, b: &Mountain, c: &Mountain) -> Result<Mountain> {
    mul(store, &mul(store, a, b)?, c)
}

#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum GreenRel {
    R,
    L,
    J,
    H,
    D,
    LeqR,
    LeqL,
    LeqJ,
}

impl std::str::FromStr for GreenRel {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Ok(match s {
            "R" => GreenRel::R,
            "L" => GreenRel::L,
            "J" => GreenRel::J,
            "H" => GreenRel::H,
            "D" => GreenRel::D,
            "leqR" | "<=R" => GreenRel::LeqR,
            "leqL" | "<=L" => GreenRel::LeqL,
            "leqJ" | "<=J" => GreenRel::LeqJ,
            other => return Err(Error::InvalidArgument(format!("unknown relation `{other}`"))),
        })
    }
}

/// Green's relations and quasi-orders, read off hills and peaks. `LeqR` means `u ≤_R v`.
pub fn green(rel: GreenRel, u: &Mountain, v: &Mountain) -> bool {
    match rel {
        GreenRel::R => u.left_hill() == v.left_hill(),
        GreenRel::L => u.right_hill() == v.right_hill(),
        GreenRel::J | GreenRel::D => u.kappa() == v.kappa(),
        GreenRel::H => u == v,
        GreenRel::LeqR => v.left_hill().is_prefix_of(&u.left_hill()),
        GreenRel::LeqL => v.right_hill().is_suffix_of(&u.right_hill()),
        GreenRel::LeqJ => preceq(v.kappa(), u.kappa()),
    }
}

pub fn is_idempotent(store: &GenStore, u: &Mountain) -> Result<bool> {
    Ok(mul(store, u, u)? == *u)
}

pub fn is_inverse(store: &GenStore, u: &Mountain, v: &Mountain) -> Result<bool> {
    Ok(mul3(store, u, v, u)? == *u && mul3(store, v, u, v)? == *v)
}

/// `V(u)`. Inverses are `D`-related to `u`, so only mountains with peak `κ(u)`
/// are candidates.
pub fn inverses(store: &GenStore, u: &Mountain) -> Result<Vec<Mountain>> {
    let mut out = Vec::new();
    for cand in enumerate_mountains(u.kappa()) {
        let v = Mountain(cand);
        if is_inverse(store, u, &v)? {
            out.push(v);
        }
    }
    Ok(sorted(out))
}

/// Idempotents with the given peak.
pub fn idempotents_with_peak(store: &GenStore, g: &Gen) -> Result<Vec<Mountain>> {
    let mut out = Vec::new();
    for cand in enumerate_mountains(g) {
        let m = Mountain(cand);
        if is_idempotent(store, &m)? {
            out.push(m);
        }
    }
    Ok(sorted(out))
}

/// `S(e, f) = {g ∈ E : fg = g = ge, egf = ef}`. Members are inverses of `ef`,
/// so the search runs over the mountains with peak `κ(e⊙f)`.
pub fn sandwich_set(store: &GenStore, e: &Mountain, f: &Mountain) -> Result<Vec<Mountain>> {
    if !is_idempotent(store, e)? || !is_idempotent(store, f)? {
        return Err(Error::NotIdempotent);
    }
    let ef = mul(store, e, f)?;
    let mut out = Vec::new();
    for cand in enumerate_mountains(ef.kappa()) {
        let g = Mountain(cand);
        if mul(store, f, &g)? == g
            && mul(store, &g, e)? == g
            && mul(store, &g, &g)? == g
            && mul3(store, e, &g, f)? == ef
        {
            out.push(g);
        }
    }
    Ok(sorted(out))
}

/// `v ≤ u` in the natural partial order: `v = v⊙v'⊙u = u⊙v''⊙v` for some
/// `v', v'' ∈ V(v)`.
pub fn natural_leq(store: &GenStore, v: &Mountain, u: &Mountain) -> Result<bool> {
    if v == u {
        return Ok(true);
    }
    if !green(GreenRel::LeqR, v, u) || !green(GreenRel::LeqL, v, u) {
        return Ok(false);
    }
    let inv = inverses(store, v)?;
    let mut left = false;
    for w in &inv {
        if mul3(store, v, w, u)? == *v {
            left = true;
            break;
        }
    }
    if !left {
        return Ok(false);
    }
    for w in &inv {
        if mul3(store, u, w, v)? == *v {
            return Ok(true);
        }
    }
    Ok(false)
}

#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum Tri {
    True,
    False,
    Unknown,
}

impl From<GorgeResult> for Tri {
    fn from(g: GorgeResult) -> Self {
        match g {
            GorgeResult::Gorge => Tri::True,
            GorgeResult::NotGorge => Tri::False,
            GorgeResult::Unknown => Tri::Unknown,
        }
    }
}

/// The canyon `λ_r(u) ∗ λ_l(v)`.
pub fn junction_canyon(u: &Mountain, v: &Mountain) -> Result<Landscape> {
    u.right_hill().star(&v.left_hill())
}

fn gorge(store: &GenStore, w: &Landscape, max_states: usize) -> Result<Tri> {
    let bounds = Bounds {
        max_states,
        ..gorge_bounds(w)
    };
    Ok(is_gorge(store, w, bounds)?.into())
}

/// Idempotence via the gorge `λ_r(u) ∗ λ_l(u)`.
pub fn is_idempotent_gorge(store: &GenStore, u: &Mountain, max_states: usize) -> Result<Tri> {
    gorge(store, &junction_canyon(u, u)?, max_states)
}

/// `v ∈ V(u)` via the gorges `λ_r(u) ∗ λ_l(v)` and `λ_r(v) ∗ λ_l(u)`.
pub fn is_inverse_gorge(store: &GenStore, u: &Mountain, v: &Mountain, max_states: usize) -> Result<Tri> {
    if u.kappa() != v.kappa() {
        return Ok(Tri::False);
    }
    let a = gorge(store, &junction_canyon(u, v)?, max_states)?;
    let b = gorge(store, &junction_canyon(v, u)?, max_states)?;
    Ok(match (a, b) {
        (Tri::False, _) | (_, Tri::False) => Tri::False,
        (Tri::True, Tri::True) => Tri::True,
        _ => Tri::Unknown,
    })
}

/// `v ≤ u` via hill extensions and a gorge through `κ(u)`.
pub fn natural_leq_gorge(store: &GenStore, v: &Mountain, u: &Mountain, max_states: usize) -> Result<Tri> {
    if v == u {
        return Ok(Tri::True);
    }
    let (lv, lu) = (v.left_hill(), u.left_hill());
    let (rv, ru) = (v.right_hill(), u.right_hill());
    if lv.n() <= lu.n() || rv.n() <= ru.n() || !lu.is_prefix_of(&lv) || !ru.is_suffix_of(&rv) {
        return Ok(Tri::False);
    }
    let down = rv.slice(0, rv.n() - ru.n());
    let up = lv.slice(lu.n(), lv.n());
    gorge(store, &down.star(&up)?, max_states)
}

/// All mountains with peak `κ(u)`.
pub fn dclass(u: &Mountain) -> Vec<Mountain> {
    sorted(enumerate_mountains(u.kappa()).into_iter().map(Mountain).collect())
}

pub fn rclass(u: &Mountain) -> Vec<Mountain> {
    let hill = u.left_hill();
    dclass(u).into_iter().filter(|m| m.left_hill() == hill).collect()
}

pub fn lclass(u: &Mountain) -> Vec<Mountain> {
    let hill = u.right_hill();
    dclass(u).into_iter().filter(|m| m.right_hill() == hill).collect()
}

/// `(|R|, |L|, |D|)` for the class of `β₁(g)`.
pub fn class_sizes(g: &Gen) -> (usize, usize, usize) {
    let m = Mountain(crate::landscape::lambda_l_gen(g).star(&crate::landscape::lambda_r_gen(g)).unwrap());
    (rclass(&m).len(), lclass(&m).len(), dclass(&m).len())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rewrite::DEFAULT_MAX_STATES;

    fn store() -> GenStore {
        GenStore::new(["x", "y"]).unwrap()
    }

    fn w(s: &GenStore, t: &str) -> Mountain {
        Mountain::of_text(s, t).unwrap()
    }

    fn texts(v: &[Mountain]) -> Vec<String> {
        v.iter().map(|m| m.to_string()).collect()
    }

    #[test]
    fn products() {
        let s = store();
        let (x, xp) = (w(&s, "x"), w(&s, "x'"));
        assert_eq!(mul(&s, &x, &xp).unwrap().to_string(), "1 1 B(x) 1 1");
        assert_eq!(mul(&s, &x, &Mountain::unit(&s)).unwrap(), x);
        assert_eq!(
            mul(&s, &x, &x).unwrap().to_string(),
            "1 1 B(x) x T(B(x);1;1;x;B(x)) 1 B(x) x 1"
        );
        assert_eq!(Mountain::parse(&s, "1 1 B(x)"), Err(Error::NotAMountain));
    }

    #[test]
    fn green_examples() {
        let s = store();
        let x = w(&s, "x");
        assert!(green(GreenRel::R, &x, &w(&s, "B(x)")));
        assert!(green(GreenRel::J, &x, &Mountain::parse(&s, "1 x' B(x) x 1").unwrap()));
        assert!(!green(GreenRel::H, &x, &w(&s, "x'")));
        assert!(!green(GreenRel::R, &x, &w(&s, "x'")));
        assert!(green(GreenRel::L, &x, &w(&s, "x' x")));
        let xx = w(&s, "x x");
        assert!(green(GreenRel::LeqR, &xx, &x));
        assert!(!green(GreenRel::LeqR, &x, &xx));
        assert!(green(GreenRel::LeqJ, &xx, &x));
        assert!(green(GreenRel::LeqJ, &x, &Mountain::unit(&s)));
    }

    #[test]
    fn idempotents() {
        let s = store();
        assert!(is_idempotent(&s, &w(&s, "x x'")).unwrap());
        assert!(!is_idempotent(&s, &w(&s, "x")).unwrap());
        assert!(is_idempotent(&s, &Mountain::unit(&s)).unwrap());
        let bx = s.base_named("x").unwrap();
        assert_eq!(texts(&idempotents_with_peak(&s, &bx).unwrap()), ["1 1 B(x) 1 1", "1 x' B(x) x 1"]);
    }

    #[test]
    fn inverse_sets() {
        let s = store();
        assert_eq!(texts(&inverses(&s, &w(&s, "x")).unwrap()), ["1 x' B(x) 1 1"]);
        let e = w(&s, "x x'");
        assert!(inverses(&s, &e).unwrap().contains(&e));
        let m = w(&s, "x y");
        assert!(inverses(&s, &m).unwrap().contains(&m.reverse()));
    }

    #[test]
    fn sandwich_examples() {
        let s = store();
        let e = w(&s, "x' x");
        let f = w(&s, "x x'");
        assert_eq!(
            texts(&sandwich_set(&s, &e, &f).unwrap()),
            ["1 1 B(x) 1 T(B(x);1;1;x;B(x)) x' B(x) x 1"]
        );
        assert_eq!(sandwich_set(&s, &f, &f).unwrap(), vec![f.clone()]);
        assert_eq!(sandwich_set(&s, &w(&s, "x"), &f), Err(Error::NotIdempotent));
    }

    #[test]
    fn natural_order() {
        let s = store();
        let one = Mountain::unit(&s);
        let x = w(&s, "x");
        let e = w(&s, "B(x)");
        assert!(natural_leq(&s, &x, &x).unwrap());
        assert!(natural_leq(&s, &e, &one).unwrap());
        assert!(!natural_leq(&s, &x, &e).unwrap());
        assert!(!natural_leq(&s, &x, &one).unwrap());
        assert_eq!(natural_leq_gorge(&s, &e, &one, DEFAULT_MAX_STATES).unwrap(), Tri::True);
        assert_eq!(natural_leq_gorge(&s, &x, &one, DEFAULT_MAX_STATES).unwrap(), Tri::False);
        assert_eq!(natural_leq_gorge(&s, &x, &e, DEFAULT_MAX_STATES).unwrap(), Tri::False);
    }

    #[test]
    fn classes() {
        let s = store();
        let x = w(&s, "x");
        assert_eq!(
            texts(&dclass(&x)),
            ["1 1 B(x) 1 1", "1 1 B(x) x 1", "1 x' B(x) 1 1", "1 x' B(x) x 1"]
        );
        assert_eq!(texts(&rclass(&x)), ["1 1 B(x) 1 1", "1 1 B(x) x 1"]);
        let g = s.parse_gen("T(B(x);1;1;x;B(x))").unwrap();
        assert_eq!(class_sizes(&g), (4, 4, 16));
    }

    #[test]
    fn gorge_routes_agree_on_small_cases() {
        let s = store();
        let bx = s.base_named("x").unwrap();
        let d = enumerate_mountains(&bx);
        for a in &d {
            let u = Mountain(a.clone());
            let alg = is_idempotent(&s, &u).unwrap();
            assert_eq!(is_idempotent_gorge(&s, &u, DEFAULT_MAX_STATES).unwrap(), if alg { Tri::True } else { Tri::False });
            for b in &d {
                let v = Mountain(b.clone());
                let alg = is_inverse(&s, &u, &v).unwrap();
                assert_eq!(is_inverse_gorge(&s, &u, &v, DEFAULT_MAX_STATES).unwrap(), if alg { Tri::True } else { Tri::False });
            }
        }
    }
}
