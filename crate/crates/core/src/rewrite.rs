//! Uplifting rivers, the normaliser `β₂`, `β = β₂∘β₁`, relation instances and
//! bounded reachability.

use std::collections::{HashSet, VecDeque};

use serde_json::Value;

use crate::error::{Error, Result};
use crate::landscape::{beta1, Landscape, ShapeClass};
use crate::terms::{Gen, GenNode, GenStore};
use crate::word::{GWord, Token};

#[derive(Clone, PartialEq, Eq, Debug)]
pub enum UpliftMode {
    Collapse,
    Replace(Gen),
}

#[derive(Clone, PartialEq, Eq, Debug)]
pub struct UpliftStep {
    /// Letter index of the river.
    pub position: usize,
    pub mode: UpliftMode,
}

/// The step that uplifting river `i` would perform, without building the result.
///
/// `Replace` interns `h_i`, so this can fail with `CapExceeded`.
pub fn plan_uplift(store: &GenStore, u: &Landscape, i: usize) -> Result<UpliftStep> {
    let l = u.letters();
    let a = u.anchors();
    if i == 0 || i + 1 >= l.len() || l[i - 1].height() != l[i].height() + 1 || l[i + 1].height() != l[i].height() + 1 {
        return Err(Error::NotARiver(i));
    }
    let (ai, ai1) = (&a[i - 1], &a[i]);
    if l[i - 1] == l[i + 1] && *ai == ai1.inv() {
        return Ok(UpliftStep {
            position: i,
            mode: UpliftMode::Collapse,
        });
    }
    let node = GenNode::Tuple {
        left: l[i + 1].clone(),
        la: ai1.inv(),
        mid: l[i].clone(),
        ra: ai.clone(),
        right: l[i - 1].clone(),
    };
    let h = store.intern(node).map_err(|e| match e {
        Error::CapExceeded { .. } => e,
        other => Error::InternalInvariantViolation(format!("uplifted river of {u} at {i}: {other}")),
    })?;
    Ok(UpliftStep {
        position: i,
        mode: UpliftMode::Replace(h),
    })
}

pub fn apply_step(u: &Landscape, step: &UpliftStep) -> Landscape {
    let i = step.position;
    let mut letters = u.letters().to_vec();
    let mut anchors = u.anchors().to_vec();
    match &step.mode {
        UpliftMode::Collapse => {
            letters.drain(i..=i + 1);
            anchors.drain(i - 1..=i);
        }
        UpliftMode::Replace(h) => letters[i] = h.clone(),
    }
    Landscape::from_parts_unchecked(letters, anchors)
}

/// One uplift `u → v` at river `i`.
pub fn uplift_at(store: &GenStore, u: &Landscape, i: usize) -> Result<Landscape> {
    Ok(apply_step(u, &plan_uplift(store, u, i)?))
}

/// Leftmost river among those of minimal height.
pub fn default_river(u: &Landscape) -> Option<usize> {
    u.rivers().into_iter().min_by_key(|&i| (u.letters()[i].height(), i))
}

fn check_range(u: &Landscape) -> Result<()> {
    if u.is_mountain_range() {
        Ok(())
    } else {
        Err(Error::NotAMountainRange)
    }
}

/// Normalises a mountain range, choosing among the current rivers with `choose`.
pub fn beta2_with<F>(store: &GenStore, u: &Landscape, mut choose: F) -> Result<Landscape>
where
    F: FnMut(&Landscape, &[usize]) -> usize,
{
    check_range(u)?;
    let mut cur = u.clone();
    loop {
        let rivers = cur.rivers();
        if rivers.is_empty() {
            return Ok(cur);
        }
        let i = rivers[choose(&cur, &rivers)];
        cur = uplift_at(store, &cur, i)?;
    }
}

pub fn beta2(store: &GenStore, u: &Landscape) -> Result<Landscape> {
    Ok(beta2_traced(store, u)?.0)
}

/// `β₂` together with the steps taken.
pub fn beta2_traced(store: &GenStore, u: &Landscape) -> Result<(Landscape, Vec<UpliftStep>)> {
    check_range(u)?;
    let mut cur = u.clone();
    let mut trace = Vec::new();
    while let Some(i) = default_river(&cur) {
        let step = plan_uplift(store, &cur, i)?;
        cur = apply_step(&cur, &step);
        trace.push(step);
    }
    Ok((cur, trace))
}

/// JSON array of the landscapes visited by `β₂`.
pub fn trace_json(start: &Landscape, steps: &[UpliftStep]) -> Value {
    let mut cur = start.clone();
    let mut out = vec![cur.to_json()];
    for s in steps {
        cur = apply_step(&cur, s);
        out.push(cur.to_json());
    }
    Value::Array(out)
}

pub fn beta(store: &GenStore, w: &GWord) -> Result<Landscape> {
    beta2(store, &beta1(store, w)?)
}

/// Decides `[u] = [v]`.
pub fn equivalent(store: &GenStore, u: &GWord, v: &GWord) -> Result<bool> {
    Ok(beta(store, u)? == beta(store, v)?)
}

#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum RelationKind {
    /// `(x x' x, x)`
    InverseLeft,
    /// `(x' x x', x')`
    InverseRight,
    /// `(g_{xx'}, x x')`
    Base,
    /// `(1 g, g)`
    UnitLeft,
    /// `(g 1, g)`
    UnitRight,
    /// `(g g, g)`
    Square,
    /// `(g^c g^L g, g)`
    AbsorbLeft,
    /// `(g g^R g^c, g)`
    AbsorbRight,
    /// `(g^R g g^L, g^R g^c g^L)`
    Middle,
}

impl RelationKind {
    pub fn is_structural(self) -> bool {
        matches!(self, RelationKind::AbsorbLeft | RelationKind::AbsorbRight | RelationKind::Middle)
    }
}

#[derive(Clone, Debug)]
pub struct RelationPair {
    pub lhs: GWord,
    pub rhs: GWord,
    pub kind: RelationKind,
    pub gen: Option<Gen>,
}

fn word(tokens: Vec<Token>) -> GWord {
    GWord::from_tokens(tokens).expect("relation sides are nonempty")
}

/// Instances of the defining relations for all generators up to `max_height`.
pub fn relations(store: &GenStore, max_height: u32) -> Result<Vec<RelationPair>> {
    use crate::terms::Anchor;
    use RelationKind::*;
    let gens = store.generators_up_to(max_height)?;
    let mut out = Vec::new();
    let pair = |lhs, rhs, kind, gen: Option<&Gen>| RelationPair {
        lhs: word(lhs),
        rhs: word(rhs),
        kind,
        gen: gen.cloned(),
    };
    for x in store.alphabet() {
        let p = Token::Anchor(Anchor::Plain(x.clone()));
        let q = Token::Anchor(Anchor::Primed(x.clone()));
        out.push(pair(vec![p.clone(), q.clone(), p.clone()], vec![p.clone()], InverseLeft, None));
        out.push(pair(vec![q.clone(), p.clone(), q.clone()], vec![q.clone()], InverseRight, None));
        let b = store.base(x)?;
        out.push(pair(vec![Token::Gen(b.clone())], vec![p, q], Base, Some(&b)));
    }
    let one = Token::Gen(store.unit());
    for g in &gens {
        let t = Token::Gen(g.clone());
        out.push(pair(vec![one.clone(), t.clone()], vec![t.clone()], UnitLeft, Some(g)));
        out.push(pair(vec![t.clone(), one.clone()], vec![t.clone()], UnitRight, Some(g)));
        out.push(pair(vec![t.clone(), t.clone()], vec![t.clone()], Square, Some(g)));
    }
    for g in gens.iter().filter(|g| g.height() >= 2) {
        let t = Token::Gen(g.clone());
        let c = Token::Gen(g.mid().unwrap().clone());
        let gl = g.l_word()?.tokens().to_vec();
        let gr = g.r_word()?.tokens().to_vec();
        let cat = |parts: &[&[Token]]| parts.concat();
        out.push(pair(cat(&[std::slice::from_ref(&c), &gl, std::slice::from_ref(&t)]), vec![t.clone()], AbsorbLeft, Some(g)));
        out.push(pair(cat(&[std::slice::from_ref(&t), &gr, std::slice::from_ref(&c)]), vec![t.clone()], AbsorbRight, Some(g)));
        out.push(pair(
            cat(&[&gr, std::slice::from_ref(&t), &gl]),
            cat(&[&gr, std::slice::from_ref(&c), &gl]),
            Middle,
            Some(g),
        ));
    }
    Ok(out)
}

pub const DEFAULT_MAX_STATES: usize = 100_000;

#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub struct Bounds {
    pub max_states: usize,
    /// Largest letter height a search may create.
    pub max_height: u32,
}

impl Default for Bounds {
    fn default() -> Self {
        Bounds {
            max_states: DEFAULT_MAX_STATES,
            max_height: crate::terms::DEFAULT_HEIGHT_CAP,
        }
    }
}

#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum Reach {
    Yes,
    No,
    Unknown,
}

/// Bounded search for `u →* target` over all uplift choices.
///
/// Collapses shorten a landscape and replacements keep its length, so states
/// shorter than the target are discarded.
pub fn reduces_to(store: &GenStore, u: &Landscape, target: &Landscape, bounds: Bounds) -> Reach {
    if u == target {
        return Reach::Yes;
    }
    let goal_len = target.len();
    let mut seen: HashSet<Landscape> = HashSet::new();
    let mut queue = VecDeque::new();
    seen.insert(u.clone());
    queue.push_back(u.clone());
    let mut truncated = false;
    while let Some(cur) = queue.pop_front() {
        for i in cur.rivers() {
            let li = &cur.letters()[i];
            let collapses = cur.letters()[i - 1] == cur.letters()[i + 1]
                && cur.anchors()[i - 1] == cur.anchors()[i].inv();
            if !collapses && li.height() + 2 > bounds.max_height.min(store.height_cap()) {
                truncated = true;
                continue;
            }
            let next = match uplift_at(store, &cur, i) {
                Ok(n) => n,
                Err(e) => {
                    log::debug!("search step failed: {e}");
                    truncated = true;
                    continue;
                }
            };
            if next == *target {
                return Reach::Yes;
            }
            if next.len() < goal_len || seen.contains(&next) {
                continue;
            }
            if seen.len() >= bounds.max_states {
                truncated = true;
                continue;
            }
            seen.insert(next.clone());
            queue.push_back(next);
        }
    }
    if truncated {
        Reach::Unknown
    } else {
        Reach::No
    }
}

#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum GorgeResult {
    Gorge,
    NotGorge,
    Unknown,
}

/// Default search bounds for a canyon: its end height plus two.
pub fn gorge_bounds(w: &Landscape) -> Bounds {
    Bounds {
        max_states: DEFAULT_MAX_STATES,
        max_height: w.first().height() + 2,
    }
}

/// Tests `w →* σ(w)` for a canyon `w`. A single letter is a trivial gorge.
pub fn is_gorge(store: &GenStore, w: &Landscape, bounds: Bounds) -> Result<GorgeResult> {
    if !(w.is_single() || w.classify() == ShapeClass::Canyon) {
        return Err(Error::NotACanyon);
    }
    Ok(match reduces_to(store, w, &Landscape::single(w.first().clone()), bounds) {
        Reach::Yes => GorgeResult::Gorge,
        Reach::No => GorgeResult::NotGorge,
        Reach::Unknown => GorgeResult::Unknown,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::landscape::{lambda_l_gen, lambda_r_gen};

    fn store() -> GenStore {
        GenStore::new(["x", "y"]).unwrap()
    }

    fn norm(s: &GenStore, w: &str) -> String {
        beta(s, &GWord::parse(s, w).unwrap()).unwrap().to_string()
    }

    #[test]
    fn uplift_examples() {
        let s = store();
        let u = Landscape::parse(&s, "1 1 B(x) x 1 x' B(x) 1 1").unwrap();
        assert_eq!(uplift_at(&s, &u, 2).unwrap().to_string(), "1 1 B(x) 1 1");
        let u = Landscape::parse(&s, "1 1 B(x) x 1 1 B(x) x 1").unwrap();
        assert_eq!(
            uplift_at(&s, &u, 2).unwrap().to_string(),
            "1 1 B(x) x T(B(x);1;1;x;B(x)) 1 B(x) x 1"
        );
        assert_eq!(uplift_at(&s, &u, 1), Err(Error::NotARiver(1)));
        assert_eq!(uplift_at(&s, &u, 0), Err(Error::NotARiver(0)));
    }

    #[test]
    fn normal_forms() {
        let s = store();
        assert_eq!(norm(&s, "x x' x"), "1 1 B(x) x 1");
        assert_eq!(norm(&s, "x x"), "1 1 B(x) x T(B(x);1;1;x;B(x)) 1 B(x) x 1");
        assert_eq!(norm(&s, "x x'"), "1 1 B(x) 1 1");
        assert_eq!(norm(&s, "x' x"), "1 x' B(x) x 1");
        assert_eq!(norm(&s, "1"), "1");
        assert_eq!(norm(&s, "x' x x'"), "1 x' B(x) 1 1");
    }

    #[test]
    fn beta2_fixes_mountains() {
        let s = store();
        let m = Landscape::parse(&s, "1 x' B(x) x 1").unwrap();
        let (out, trace) = beta2_traced(&s, &m).unwrap();
        assert_eq!(out, m);
        assert!(trace.is_empty());
        let bad = Landscape::parse(&s, "1 1 B(x)").unwrap();
        assert_eq!(beta2(&s, &bad), Err(Error::NotAMountainRange));
    }

    #[test]
    fn equivalence_examples() {
        let s = store();
        let eq = |a: &str, b: &str| {
            equivalent(&s, &GWord::parse(&s, a).unwrap(), &GWord::parse(&s, b).unwrap()).unwrap()
        };
        assert!(eq("x x' x", "x"));
        assert!(!eq("x x'", "x' x"));
        assert!(eq("B(x)", "x x'"));
        assert!(!eq("x", "y"));
    }

    #[test]
    fn relation_instances() {
        let s = GenStore::new(["x"]).unwrap();
        let rel = relations(&s, 1).unwrap();
        let texts: Vec<(String, String)> =
            rel.iter().map(|r| (r.lhs.to_string(), r.rhs.to_string())).collect();
        for (l, r) in [
            ("x x' x", "x"),
            ("x' x x'", "x'"),
            ("B(x)", "x x'"),
            ("1 B(x)", "B(x)"),
            ("B(x) B(x)", "B(x)"),
        ] {
            assert!(texts.contains(&(l.into(), r.into())), "{l} / {r}");
        }
        let rel = relations(&s, 2).unwrap();
        assert!(rel
            .iter()
            .any(|r| r.lhs.to_string() == "1 1 B(x) 1 T(B(x);1;1;x;B(x))"
                && r.rhs.to_string() == "T(B(x);1;1;x;B(x))"));
        let s2 = store();
        let n = relations(&s2, 2).unwrap().iter().filter(|r| r.kind.is_structural()).count();
        assert_eq!(n, 36);
    }

    #[test]
    fn reachability() {
        let s = store();
        let b = Bounds::default();
        let u = beta1(&s, &GWord::parse(&s, "x x'").unwrap()).unwrap();
        let t = Landscape::parse(&s, "1 1 B(x) 1 1").unwrap();
        assert_eq!(reduces_to(&s, &u, &t, b), Reach::Yes);
        let m = Landscape::parse(&s, "1 x' B(x) x 1").unwrap();
        assert_eq!(reduces_to(&s, &m, &t, b), Reach::No);
    }

    #[test]
    fn gorges() {
        let s = store();
        let e = Landscape::parse(&s, "1 1 B(x) 1 1").unwrap();
        let w = e.right_hill().star(&e.left_hill()).unwrap();
        assert_eq!(is_gorge(&s, &w, gorge_bounds(&w)).unwrap(), GorgeResult::Gorge);
        let m = Landscape::parse(&s, "1 1 B(x) x 1").unwrap();
        let w = m.right_hill().star(&m.left_hill()).unwrap();
        assert_eq!(is_gorge(&s, &w, gorge_bounds(&w)).unwrap(), GorgeResult::NotGorge);
        assert_eq!(is_gorge(&s, &m, Bounds::default()), Err(Error::NotACanyon));
        let g = s.parse_gen("T(B(x);1;1;x;B(x))").unwrap();
        let w = lambda_r_gen(&g).star(&lambda_l_gen(&g)).unwrap();
        assert_eq!(w.classify(), ShapeClass::Canyon);
    }
}
