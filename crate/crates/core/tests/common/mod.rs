#![allow(dead_code)]

use coinscale_core::{Params, Pile, Strategy, Weighing};
use rand::seq::SliceRandom;
use rand::Rng;

/// Random valid strategy: piles of 1 to 3 coins, fakes scattered over them,
/// up to `max_m` weighings with equal pan sizes.
pub fn random_strategy<R: Rng>(rng: &mut R, max_t: usize, max_f: usize, max_m: usize) -> Strategy {
    let t = rng.random_range(2..=max_t);
    let f = rng.random_range(1..=max_f.min(t));
    let d = loop {
        let d = rng.random_range(0..=t);
        if d != f {
            break d;
        }
    };
    let mut sizes = Vec::new();
    let mut left = t;
    while left > 0 {
        let s = rng.random_range(1..=left.min(3));
        sizes.push(s);
        left -= s;
    }
    let mut coins: Vec<usize> = (0..t).collect();
    coins.shuffle(rng);
    let fake_coins = &coins[..f];
    let mut piles = Vec::new();
    let mut start = 0;
    for (i, &s) in sizes.iter().enumerate() {
        let fakes = fake_coins.iter().filter(|&&c| c >= start && c < start + s).count();
        piles.push(Pile::new(format!("p{i}"), s, fakes));
        start += s;
    }
    let m = rng.random_range(0..=max_m);
    let mut weighings = Vec::new();
    let mut tries = 0;
    while weighings.len() < m && tries < 200 {
        tries += 1;
        let (mut l, mut r) = (Vec::new(), Vec::new());
        let (mut ls, mut rs) = (0, 0);
        for p in &piles {
            match rng.random_range(0..3) {
                0 => {
                    l.push(p.id.clone());
                    ls += p.size;
                }
                1 => {
                    r.push(p.id.clone());
                    rs += p.size;
                }
                _ => {}
            }
        }
        if ls == rs && ls > 0 {
            weighings.push(Weighing::new(l, r));
        }
    }
    let s = Strategy::new(Params::new(t, f, d), piles, weighings);
    assert!(s.validate().is_valid(), "{}", s.validate());
    s
}

/// Subsets of `0..m` in size-then-lexicographic order.
pub fn subsets(m: usize) -> Vec<Vec<usize>> {
    let mut all: Vec<Vec<usize>> = (0u32..1 << m)
        .map(|mask| (0..m).filter(|&i| mask & (1 << i) != 0).collect())
        .collect();
    all.sort_by(|a, b| a.len().cmp(&b.len()).then_with(|| a.cmp(b)));
    all
}
