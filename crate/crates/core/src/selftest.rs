//! Property suite behind `weakfree selftest`.

use std::fmt;

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::error::{Error, Result};
use crate::finite::{build_skeleton, full_transformation_monoid, transformation_index, Strategy};
use crate::landscape::{beta1, enumerate_mountains, enumerate_uphills, lambda_l_gen, lambda_r_gen};
use crate::model::{dclass, is_idempotent, is_idempotent_gorge, mul3, sandwich_set, Mountain, Tri};
use crate::rewrite::{beta, beta2, beta2_with, reduces_to, relations, Bounds, Reach};
use crate::sample::Sampler;
use crate::terms::{GenStore, KindFilter};
use crate::word::{GWord, Token};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CheckLine {
    pub name: &'static str,
    pub pass: bool,
    pub counts: String,
    pub seed: u64,
}

impl fmt::Display for CheckLine {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let tag = if self.pass { "PASS" } else { "FAIL" };
        write!(f, "{tag} {} {} seed={}", self.name, self.counts, self.seed)
    }
}

type Check = fn(&Ctx) -> Result<(bool, String)>;

struct Ctx {
    max_height: u32,
    seed: u64,
}

impl Ctx {
    fn store(&self, letters: &[&str]) -> GenStore {
        GenStore::new(letters.iter().copied())
            .unwrap()
            .with_height_cap(self.max_height * 6 + 6)
    }

    fn rng(&self, salt: u64) -> ChaCha8Rng {
        ChaCha8Rng::seed_from_u64(self.seed.wrapping_mul(0x9e37_79b9).wrapping_add(salt))
    }
}

fn word(t: Vec<Token>) -> GWord {
    GWord::from_tokens(t).unwrap()
}

fn rho_soundness(c: &Ctx) -> Result<(bool, String)> {
    let s = c.store(&["x", "y"]);
    let rel = relations(&s, c.max_height.min(3))?;
    let mut bad = 0;
    for r in &rel {
        if beta(&s, &r.lhs)? != beta(&s, &r.rhs)? {
            bad += 1;
        }
    }
    Ok((bad == 0, format!("pairs={} bad={bad}", rel.len())))
}

fn confluence(c: &Ctx) -> Result<(bool, String)> {
    let s = c.store(&["x", "y"]);
    let sm = Sampler::new(&s, c.max_height)?;
    let mut rng = c.rng(2);
    let mut bad = 0;
    for _ in 0..100 {
        let r = sm.mountain_range(&mut rng, 3);
        let reference = beta2(&s, &r)?;
        for _ in 0..5 {
            if beta2_with(&s, &r, |_, rv| rng.gen_range(0..rv.len()))? != reference {
                bad += 1;
            }
        }
    }
    Ok((bad == 0, format!("ranges=100 orders=5 bad={bad}")))
}

fn counting(c: &Ctx) -> Result<(bool, String)> {
    let s = c.store(&["x", "y"]);
    let mut ok = true;
    for i in 1..=c.max_height {
        ok &= s.enumerate(i, KindFilter::E)?.len() == (1 << (i - 1)) * 2;
    }
    if c.max_height >= 2 {
        ok &= s.enumerate(2, KindFilter::D)?.len() == 8;
    }
    let gens = s.generators_up_to(c.max_height.min(3))?;
    for g in &gens {
        let n = g.height();
        ok &= enumerate_uphills(g).len() == 1 << n && enumerate_mountains(g).len() == 1 << (2 * n);
    }
    Ok((ok, format!("generators={}", gens.len())))
}

fn regularity(c: &Ctx) -> Result<(bool, String)> {
    let s = c.store(&["x", "y"]);
    let sm = Sampler::new(&s, c.max_height.min(3))?;
    let mut rng = c.rng(4);
    let mut bad = 0;
    for _ in 0..100 {
        let u = sm.mountain(&mut rng);
        let ub = u.reverse();
        if mul3(&s, &u, &ub, &u)? != u || mul3(&s, &ub, &u, &ub)? != ub {
            bad += 1;
        }
    }
    Ok((bad == 0, format!("mountains=100 bad={bad}")))
}

fn dclass_x(c: &Ctx) -> Result<(bool, String)> {
    let s = c.store(&["x"]);
    let mut got: Vec<String> = dclass(&Mountain::of_text(&s, "x")?).iter().map(|m| m.to_string()).collect();
    let mut want: Vec<String> = ["x", "x'", "B(x)", "x' x"]
        .iter()
        .map(|w| Mountain::of_text(&s, w).map(|m| m.to_string()))
        .collect::<Result<_>>()?;
    got.sort();
    want.sort();
    Ok((got == want, format!("size={}", got.len())))
}

fn sandwich(c: &Ctx) -> Result<(bool, String)> {
    let s = c.store(&["x", "y"]);
    let mut n = 0;
    let mut bad = 0;
    for h in 2..=c.max_height.min(3) {
        for g in s.enumerate(h, KindFilter::All)? {
            let ct = Token::Gen(g.mid().unwrap().clone());
            let e = Mountain::of_word(&s, &word([g.r_word()?.tokens(), std::slice::from_ref(&ct)].concat()))?;
            let f = Mountain::of_word(&s, &word([&[ct][..], g.l_word()?.tokens()].concat()))?;
            let got = sandwich_set(&s, &e, &f)?;
            let want = lambda_l_gen(&g).star(&lambda_r_gen(&g))?;
            n += 1;
            if got.len() != 1 || *got[0].landscape() != want {
                bad += 1;
            }
        }
    }
    Ok((bad == 0, format!("generators={n} bad={bad}")))
}

fn idempotent_gorge(c: &Ctx) -> Result<(bool, String)> {
    let s = c.store(&["x", "y"]);
    let (mut n, mut unknown, mut bad) = (0, 0, 0);
    for g in s.generators_up_to(c.max_height.min(2))? {
        for m in enumerate_mountains(&g) {
            let u = Mountain::new(m)?;
            n += 1;
            match (is_idempotent(&s, &u)?, is_idempotent_gorge(&s, &u, crate::rewrite::DEFAULT_MAX_STATES)?) {
                (_, Tri::Unknown) => unknown += 1,
                (true, Tri::True) | (false, Tri::False) => {}
                _ => bad += 1,
            }
        }
    }
    Ok((bad == 0, format!("mountains={n} unknown={unknown} bad={bad}")))
}

fn valley(c: &Ctx) -> Result<(bool, String)> {
    let s = c.store(&["x", "y"]);
    let sm = Sampler::new(&s, c.max_height.min(3))?;
    let mut rng = c.rng(8);
    let mut bad = 0;
    let bounds = Bounds {
        max_states: 1_000_000,
        max_height: s.height_cap(),
    };
    for _ in 0..50 {
        let steps = rng.gen_range(0..=4);
        let u = sm.landscape(&mut rng, steps);
        let start = beta1(&s, &u.to_word())?;
        let target = lambda_l_gen(u.first()).star(&u)?.star(&lambda_r_gen(u.last()))?;
        if reduces_to(&s, &start, &target, bounds) != Reach::Yes {
            bad += 1;
        }
    }
    Ok((bad == 0, format!("landscapes=50 bad={bad}")))
}

fn skeleton(c: &Ctx) -> Result<(bool, String)> {
    let s = c.store(&["x"]);
    let h = c.max_height.min(3);
    let t3 = full_transformation_monoid(3)?;
    let a = transformation_index(3, &[0, 0, 1]);
    let rels = relations(&s, h)?;
    let sm = Sampler::new(&s, h)?;
    let mut rng = c.rng(9);
    let mut bad = 0;
    for strategy in [Strategy::First, Strategy::Seeded(c.seed)] {
        let mut sk = build_skeleton(&t3, &[(s.letter("x")?, a)], strategy, h)?;
        for _ in 0..50 {
            let r = rels.choose(&mut rng).unwrap();
            let pre: Vec<Token> = (0..rng.gen_range(0..3)).map(|_| sm.token(&mut rng)).collect();
            let post: Vec<Token> = (0..rng.gen_range(0..3)).map(|_| sm.token(&mut rng)).collect();
            let u = word([&pre[..], r.lhs.tokens(), &post[..]].concat());
            let v = word([&pre[..], r.rhs.tokens(), &post[..]].concat());
            if sk.phi_hat(&u)? != sk.phi_hat(&v)? {
                bad += 1;
            }
        }
        let cl = sk.image_closure(&s, h)?;
        if !cl.regular || !cl.monoid_with_one_phi || !sk.verify().is_empty() {
            bad += 1;
        }
    }
    Ok((bad == 0, format!("pairs=100 bad={bad}")))
}

fn fixed_point(c: &Ctx) -> Result<(bool, String)> {
    let s = c.store(&["x", "y"]);
    let (mut n, mut bad) = (0, 0);
    for g in s.generators_up_to(c.max_height.min(2))? {
        for m in enumerate_mountains(&g) {
            n += 1;
            if beta(&s, &m.to_word())? != m {
                bad += 1;
            }
        }
    }
    Ok((bad == 0, format!("mountains={n} bad={bad}")))
}

const CHECKS: [(&str, Check); 10] = [
    ("rho-soundness", rho_soundness),
    ("confluence", confluence),
    ("counting", counting),
    ("regularity", regularity),
    ("dclass-of-x", dclass_x),
    ("sandwich-singleton", sandwich),
    ("idempotent-gorge", idempotent_gorge),
    ("valley-reduction", valley),
    ("skeleton-homomorphism", skeleton),
    ("normal-form-fixed-point", fixed_point),
];

/// Runs every property; errors inside a check count as failures.
pub fn run(max_height: u32, seed: u64) -> Result<Vec<CheckLine>> {
    if max_height == 0 {
        return Err(Error::InvalidArgument("max height must be positive".into()));
    }
    let ctx = Ctx { max_height, seed };
    Ok(CHECKS
        .iter()
        .map(|(name, f)| {
            let (pass, counts) = f(&ctx).unwrap_or_else(|e| (false, format!("error=\"{e}\"")));
            CheckLine {
                name,
                pass,
                counts,
                seed,
            }
        })
        .collect())
}
