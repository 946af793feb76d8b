//! Exact reference arithmetic for the worked example: every input is a short
//! decimal, so sorting, weighted sums and the lexicographic comparison can
//! be done in rationals and compared against the printed values with zero
//! tolerance.

#![allow(dead_code)]

use std::cmp::Ordering;

use num_rational::Ratio;

pub type Q = Ratio<i128>;

/// The decimal a float was written as (`0.2341` → 2341/10000).
pub fn dec(x: f64) -> Q {
    let s = format!("{x}");
    let (int, frac) = s.split_once('.').unwrap_or((&s, ""));
    let scale = 10i128.pow(frac.len() as u32);
    let digits: i128 = format!("{int}{frac}").parse().expect("plain decimal");
    Q::new(digits, scale)
}

pub fn decs(xs: &[f64]) -> Vec<Q> {
    xs.iter().copied().map(dec).collect()
}

/// `q` scaled by 10^5, if that is an integer.
pub fn fixed5(q: Q) -> Option<i128> {
    let scaled = q * Q::from_integer(100_000);
    scaled.is_integer().then(|| scaled.to_integer())
}

pub fn sorted(mut xs: Vec<Q>) -> Vec<Q> {
    xs.sort();
    xs
}

/// Bounded weighted sum `min(1, acc + w·x)`, folded left to right from 0,
/// componentwise.
pub fn weighted_fold(weights: &[Q], row: &[Vec<Q>]) -> Vec<Q> {
    let n = row[0].len();
    let one = Q::from_integer(1);
    let mut acc = vec![Q::from_integer(0); n];
    for (w, x) in weights.iter().zip(row) {
        for k in 0..n {
            let next = acc[k] + *w * x[k];
            acc[k] = if next > one { one } else { next };
        }
    }
    acc
}

/// Lexicographic comparison scanning positions `tau[0], tau[1], …` (1-based).
pub fn lex_cmp(tau: &[usize], a: &[Q], b: &[Q]) -> Ordering {
    for &t in tau {
        match a[t - 1].cmp(&b[t - 1]) {
            Ordering::Equal => continue,
            other => return other,
        }
    }
    Ordering::Equal
}

/// Worst-to-best by counting, for each alternative, how many others it
/// beats; no sorting routine involved.
pub fn brute_force_ranking(tau: &[usize], scores: &[Vec<Q>]) -> Vec<usize> {
    let beats: Vec<usize> = scores
        .iter()
        .map(|s| scores.iter().filter(|t| lex_cmp(tau, s, t) == Ordering::Greater).count())
        .collect();
    let mut out = Vec::new();
    for level in 0..scores.len() {
        out.extend((0..scores.len()).filter(|&i| beats[i] == level));
    }
    out
}

/// Whether some `z` on the hundredths grid, sorted, has
/// `min(100, x_i + z_i) = y_i` for every `i`. Values are in hundredths.
pub fn grid_witness_exists(x: &[i64], y: &[i64]) -> bool {
    fn search(x: &[i64], y: &[i64], k: usize, prev: i64) -> bool {
        if k == x.len() {
            return true;
        }
        (prev..=100).any(|z| (x[k] + z).min(100) == y[k] && search(x, y, k + 1, z))
    }
    search(x, y, 0, 0)
}
