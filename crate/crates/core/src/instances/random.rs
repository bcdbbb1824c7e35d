//! Seeded random interval instances.

use std::collections::HashSet;

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::instance::Instance;
use crate::interval::{coord, Interval};

/// Coordinates are drawn on a grid of `1 / TICKS`.
const TICKS: i64 = 1000;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize, clap::ValueEnum)]
#[serde(rename_all = "snake_case")]
pub enum Flavor {
    /// Arbitrary lengths (including points); terminals chosen at random.
    General,
    /// Point terminals and unit non-terminals.
    UnitPoint,
}

/// `n` intervals of which `k` are terminals, deterministic in `seed`. All
/// terminals lie in one connected component.
pub fn gen_random(n: usize, k: usize, seed: u64, flavor: Flavor) -> Result<Instance> {
    if n == 0 {
        return Err(Error::EmptyInstance);
    }
    if k > n {
        return Err(Error::InvalidParameter(format!("k = {k} exceeds n = {n}")));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let (mut ivs, mut flags) = match flavor {
        Flavor::General => general(n, k, &mut rng),
        Flavor::UnitPoint => unit_point(n, k, &mut rng),
    };
    let mut order: Vec<usize> = (0..n).collect();
    order.shuffle(&mut rng);
    ivs = order.iter().map(|&i| ivs[i]).collect();
    flags = order.iter().map(|&i| flags[i]).collect();
    Instance::new(&ivs, &flags)
}

fn tick(t: i64) -> crate::interval::Coord {
    coord(t, TICKS)
}

fn general(n: usize, k: usize, rng: &mut ChaCha8Rng) -> (Vec<Interval>, Vec<bool>) {
    let mut used = HashSet::new();
    let mut ivs = Vec::with_capacity(n);
    let mut prev_left = 0i64;
    let mut reach = 0i64;
    for i in 0..n {
        let left = if i == 0 {
            0
        } else {
            let hi = reach.min(prev_left + 3 * TICKS / 2).max(prev_left + 1);
            rng.gen_range(prev_left + 1..=hi)
        };
        used.insert(left);
        // A point at the current reach would stall the chain.
        let may_be_point = left < reach;
        let mut right = left;
        for _ in 0..32 {
            right = if may_be_point && rng.gen_bool(0.15) {
                left
            } else {
                left + rng.gen_range(TICKS / 4..=5 * TICKS / 2)
            };
            if right == left || !used.contains(&right) {
                break;
            }
        }
        used.insert(right);
        reach = reach.max(right);
        prev_left = left;
        ivs.push(Interval::new(tick(left), tick(right)).unwrap());
    }
    let mut flags = vec![false; n];
    for idx in rand::seq::index::sample(rng, n, k) {
        flags[idx] = true;
    }
    (ivs, flags)
}

fn unit_point(n: usize, k: usize, rng: &mut ChaCha8Rng) -> (Vec<Interval>, Vec<bool>) {
    let m = n - k;
    if m == 0 {
        // Everything at one point keeps the terminals connected.
        return (vec![Interval::point(tick(0)); n], vec![true; n]);
    }
    let max_step = rng.gen_range(TICKS / 5..=19 * TICKS / 20);
    let mut used = HashSet::new();
    let mut lefts = Vec::with_capacity(m);
    let mut s = 0i64;
    for i in 0..m {
        if i > 0 {
            loop {
                let step = rng.gen_range(TICKS / 50..=max_step);
                if !used.contains(&(s + step)) && !used.contains(&(s + step + TICKS)) {
                    s += step;
                    break;
                }
            }
        }
        used.insert(s);
        used.insert(s + TICKS);
        lefts.push(s);
    }
    let span = (lefts[0], s + TICKS);
    let mut points = HashSet::new();
    while points.len() < k {
        let p = rng.gen_range(span.0..=span.1);
        if !used.contains(&p) {
            points.insert(p);
        }
    }
    let mut points: Vec<i64> = points.into_iter().collect();
    points.sort_unstable();
    let mut ivs: Vec<Interval> = lefts.iter().map(|&l| Interval::unit(tick(l))).collect();
    ivs.extend(points.iter().map(|&p| Interval::point(tick(p))));
    let mut flags = vec![false; m];
    flags.extend(std::iter::repeat(true).take(k));
    (ivs, flags)
}
