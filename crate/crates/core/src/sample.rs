//! Random generators, hills, landscapes and words over a fixed pool.

use std::collections::HashMap;

use rand::seq::SliceRandom;
use rand::Rng;

use crate::error::Result;
use crate::landscape::{beta1, Landscape};
use crate::model::Mountain;
use crate::terms::{preceq, Anchor, Gen, GenStore, Side};
use crate::word::{GWord, Token};

pub struct Sampler {
    pool: Vec<Gen>,
    by_height: Vec<Vec<Gen>>,
    ups: HashMap<Gen, Vec<(Anchor, Gen)>>,
    anchors: Vec<Anchor>,
    unit: Gen,
}

impl Sampler {
    /// All generators up to `max_height` (unit included) form the pool.
    pub fn new(store: &GenStore, max_height: u32) -> Result<Self> {
        let pool = store.generators_up_to(max_height)?;
        let mut by_height = vec![Vec::new(); max_height as usize + 1];
        let mut ups: HashMap<Gen, Vec<(Anchor, Gen)>> = HashMap::new();
        for g in &pool {
            by_height[g.height() as usize].push(g.clone());
            for s in Side::BOTH {
                if let (Some(e), Some(a)) = (g.entry(s), g.anchor(s)) {
                    ups.entry(e.clone()).or_default().push((a.clone(), g.clone()));
                }
            }
        }
        let mut anchors = vec![Anchor::One];
        for x in store.alphabet() {
            anchors.push(Anchor::Plain(x.clone()));
            anchors.push(Anchor::Primed(x.clone()));
        }
        Ok(Sampler {
            pool,
            by_height,
            ups,
            anchors,
            unit: store.unit(),
        })
    }

    pub fn pool(&self) -> &[Gen] {
        &self.pool
    }

    pub fn max_height(&self) -> u32 {
        self.by_height.len() as u32 - 1
    }

    pub fn gen<R: Rng>(&self, rng: &mut R) -> Gen {
        self.pool.choose(rng).unwrap().clone()
    }

    /// A generator whose height is uniform in `1..=max_height`.
    pub fn gen_by_height<R: Rng>(&self, rng: &mut R) -> Gen {
        let h = rng.gen_range(1..self.by_height.len());
        self.by_height[h].choose(rng).unwrap().clone()
    }

    /// A random uphill from `h` to `g` of length `↑(g) − ↑(h)`; needs `h ⪯ g`.
    pub fn uphill_between<R: Rng>(&self, rng: &mut R, h: &Gen, g: &Gen) -> Option<Landscape> {
        let mut letters = vec![g.clone()];
        let mut anchors = Vec::new();
        let mut cur = g.clone();
        while cur != *h {
            let opts: Vec<Side> = Side::BOTH
                .into_iter()
                .filter(|&s| cur.entry(s).is_some_and(|e| preceq(h, e)))
                .collect();
            let s = *opts.choose(rng)?;
            anchors.push(cur.anchor(s).unwrap().clone());
            cur = cur.entry(s).unwrap().clone();
            letters.push(cur.clone());
        }
        letters.reverse();
        anchors.reverse();
        Some(Landscape::from_parts_unchecked(letters, anchors))
    }

    pub fn uphill<R: Rng>(&self, rng: &mut R, g: &Gen) -> Landscape {
        self.uphill_between(rng, &self.unit, g).expect("1 lies in every ground")
    }

    pub fn mountain_with_peak<R: Rng>(&self, rng: &mut R, g: &Gen) -> Mountain {
        let up = self.uphill(rng, g);
        let down = self.uphill(rng, g).reverse();
        Mountain::new(up.star(&down).unwrap()).unwrap()
    }

    pub fn mountain<R: Rng>(&self, rng: &mut R) -> Mountain {
        let g = self.gen(rng);
        self.mountain_with_peak(rng, &g)
    }

    /// Star of `k ≥ 1` random mountains.
    pub fn mountain_range<R: Rng>(&self, rng: &mut R, k: usize) -> Landscape {
        let mut acc = self.mountain(rng).into_landscape();
        for _ in 1..k {
            acc = acc.star(self.mountain(rng).landscape()).unwrap();
        }
        acc
    }

    /// A random walk of `steps` anchored moves, each one step up or down.
    pub fn landscape<R: Rng>(&self, rng: &mut R, steps: usize) -> Landscape {
        let mut letters = vec![self.gen(rng)];
        let mut anchors = Vec::new();
        for _ in 0..steps {
            let cur = letters.last().unwrap().clone();
            let mut moves: Vec<(Anchor, Gen)> = self.ups.get(&cur).cloned().unwrap_or_default();
            for s in Side::BOTH {
                if let (Some(e), Some(a)) = (cur.entry(s), cur.anchor(s)) {
                    moves.push((a.inv(), e.clone()));
                }
            }
            let Some((a, g)) = moves.choose(rng).cloned() else { break };
            anchors.push(a);
            letters.push(g);
        }
        Landscape::from_parts_unchecked(letters, anchors)
    }

    pub fn token<R: Rng>(&self, rng: &mut R) -> Token {
        if rng.gen_bool(0.5) {
            Token::Anchor(self.anchors.choose(rng).unwrap().clone())
        } else {
            Token::Gen(self.gen(rng))
        }
    }

    pub fn word<R: Rng>(&self, rng: &mut R, len: usize) -> GWord {
        GWord::from_tokens((0..len.max(1)).map(|_| self.token(rng)).collect()).unwrap()
    }

    /// `β₁` of a random word: a mountain range whose rivers come from the junctions.
    pub fn word_range<R: Rng>(&self, store: &GenStore, rng: &mut R, len: usize) -> Result<Landscape> {
        beta1(store, &self.word(rng, len))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::landscape::{validate_landscape, ShapeClass};
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    #[test]
    fn samples_are_well_formed() {
        let s = GenStore::new(["x", "y"]).unwrap();
        let sm = Sampler::new(&s, 3).unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(1);
        for _ in 0..200 {
            let m = sm.mountain(&mut rng);
            assert_eq!(validate_landscape(&m.landscape().to_word()).unwrap().classify(), ShapeClass::Mountain);
            let r = sm.mountain_range(&mut rng, 3);
            assert!(validate_landscape(&r.to_word()).unwrap().is_mountain_range());
            let l = sm.landscape(&mut rng, 6);
            validate_landscape(&l.to_word()).unwrap();
        }
    }
}
