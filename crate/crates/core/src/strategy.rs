//! Enumeration of degree-1 subspaces for the universal deciders.

use std::fmt;
use std::str::FromStr;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::field::Field;
use crate::linalg::{SVec, Subspace};

/// Ceiling on the number of subspaces an exhaustive run may visit.
pub const DEFAULT_SUBSPACE_CAP: u128 = 100_000;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum Strategy {
    /// Every subspace; finite fields only.
    Exhaustive,
    /// All coordinate subspaces plus `count` seeded random ones.
    CoordinateRandom { count: usize, seed: u64 },
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Coverage {
    Exhaustive,
    Sampled,
}

impl Strategy {
    pub fn coverage(&self) -> Coverage {
        match self {
            Strategy::Exhaustive => Coverage::Exhaustive,
            Strategy::CoordinateRandom { .. } => Coverage::Sampled,
        }
    }

    pub fn seed(&self) -> Option<u64> {
        match self {
            Strategy::Exhaustive => None,
            Strategy::CoordinateRandom { seed, .. } => Some(*seed),
        }
    }

    pub fn with_seed(self, seed: u64) -> Self {
        match self {
            Strategy::CoordinateRandom { count, .. } => Strategy::CoordinateRandom { count, seed },
            s => s,
        }
    }
}

impl fmt::Display for Strategy {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Strategy::Exhaustive => f.write_str("exhaustive"),
            Strategy::CoordinateRandom { count, seed } => {
                write!(f, "coordinate+random({count}, {seed})")
            }
        }
    }
}

impl FromStr for Strategy {
    type Err = String;

    /// Accepts `exhaustive`, `coordinate`, `coordinate+random(k)` and
    /// `coordinate+random(k, seed)`.
    fn from_str(s: &str) -> std::result::Result<Self, String> {
        let s = s.trim();
        if s == "exhaustive" {
            return Ok(Strategy::Exhaustive);
        }
        if s == "coordinate" {
            return Ok(Strategy::CoordinateRandom { count: 0, seed: 0 });
        }
        let inner = s
            .strip_prefix("coordinate+random(")
            .and_then(|r| r.strip_suffix(')'))
            .ok_or_else(|| format!("unknown strategy `{s}`"))?;
        let parts: Vec<&str> = inner.split(',').map(str::trim).collect();
        let num = |t: &str| t.parse::<u64>().map_err(|_| format!("bad number `{t}` in strategy"));
        match parts.as_slice() {
            [k] => Ok(Strategy::CoordinateRandom { count: num(k)? as usize, seed: 0 }),
            [k, seed] => Ok(Strategy::CoordinateRandom { count: num(k)? as usize, seed: num(seed)? }),
            _ => Err(format!("unknown strategy `{s}`")),
        }
    }
}

/// Number of subspaces of `F_q^n`.
pub fn subspace_count(q: u128, n: usize) -> u128 {
    // Gaussian binomials via the recurrence G(n, r) = G(n-1, r-1) + q^r G(n-1, r)
    let mut row = vec![1u128];
    for m in 1..=n {
        let mut next = vec![1u128; m + 1];
        for r in 1..m {
            next[r] = row[r - 1].saturating_add(q.saturating_pow(r as u32).saturating_mul(row[r]));
        }
        row = next;
    }
    row.iter().fold(0u128, |a, b| a.saturating_add(*b))
}

/// Every subspace of `K^n` in RREF enumeration order (by rank, then pivots).
pub fn all_subspaces<K: Field>(k: &K, n: usize, cap: u128) -> Result<Vec<Subspace<K>>> {
    let elems = k
        .elements()
        .ok_or_else(|| Error::StrategyField { strategy: "exhaustive".into(), field: k.spec().to_string() })?;
    let needed = subspace_count(elems.len() as u128, n);
    if needed > cap {
        return Err(Error::CapExceeded { what: format!("subspaces of {}^{n}", k.spec()), needed, cap });
    }
    let mut out = Vec::new();
    for r in 0..=n {
        for pivots in combinations(n, r) {
            // free slots: (row, column) right of the row pivot at non-pivot columns
            let slots: Vec<(usize, usize)> = pivots
                .iter()
                .enumerate()
                .flat_map(|(t, &p)| (p + 1..n).filter(|c| !pivots.contains(c)).map(move |c| (t, c)))
                .collect();
            let total = elems.len().pow(slots.len() as u32);
            for code in 0..total {
                let mut rows: Vec<Vec<(usize, K::Elem)>> = pivots.iter().map(|&p| vec![(p, k.one())]).collect();
                let mut c = code;
                for &(t, col) in &slots {
                    let e = &elems[c % elems.len()];
                    c /= elems.len();
                    if !k.is_zero(e) {
                        rows[t].push((col, e.clone()));
                    }
                }
                let vecs: Vec<SVec<K::Elem>> = rows.into_iter().map(|r| SVec::from_pairs(k, r)).collect();
                out.push(Subspace::from_vectors(k, n, vecs.iter()));
            }
        }
    }
    Ok(out)
}

pub fn combinations(n: usize, r: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    let mut cur = Vec::new();
    fn go(start: usize, n: usize, r: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if cur.len() == r {
            out.push(cur.clone());
            return;
        }
        for i in start..n {
            cur.push(i);
            go(i + 1, n, r, cur, out);
            cur.pop();
        }
    }
    go(0, n, r, &mut cur, &mut out);
    out
}

/// Subspaces of `K^n` visited by `strategy`, without repeats.
pub fn subspaces<K: Field>(k: &K, n: usize, strategy: Strategy, cap: u128) -> Result<Vec<Subspace<K>>> {
    match strategy {
        Strategy::Exhaustive => all_subspaces(k, n, cap),
        Strategy::CoordinateRandom { count, seed } => {
            let needed = (1u128 << n.min(127)) + count as u128;
            if needed > cap {
                return Err(Error::CapExceeded { what: "sampled subspaces".into(), needed, cap });
            }
            let mut out: Vec<Subspace<K>> = Vec::new();
            for mask in 0..(1usize << n) {
                let idx: Vec<usize> = (0..n).filter(|i| mask >> i & 1 == 1).collect();
                out.push(Subspace::coordinate(k, n, &idx));
            }
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            for _ in 0..count {
                if n == 0 {
                    break;
                }
                let r = rng.gen_range(1..=n);
                let vecs: Vec<SVec<K::Elem>> = (0..r)
                    .map(|_| {
                        let dense: Vec<K::Elem> = (0..n).map(|_| k.random(&mut rng)).collect();
                        SVec::from_dense(k, &dense)
                    })
                    .collect();
                let s = Subspace::from_vectors(k, n, vecs.iter());
                if !out.contains(&s) {
                    out.push(s);
                }
            }
            Ok(out)
        }
    }
}

/// A random subspace of the given dimension, for seeded test drivers.
pub fn random_subspace<K: Field, R: Rng + ?Sized>(k: &K, n: usize, dim: usize, rng: &mut R) -> Subspace<K> {
    loop {
        let vecs: Vec<SVec<K::Elem>> = (0..dim)
            .map(|_| {
                let dense: Vec<K::Elem> = (0..n).map(|_| k.random(rng)).collect();
                SVec::from_dense(k, &dense)
            })
            .collect();
        let s = Subspace::from_vectors(k, n, vecs.iter());
        if s.dim() == dim {
            return s;
        }
    }
}

/// Maps in parallel when the `parallel` feature is on.
pub(crate) fn par_map<T, U, F>(items: Vec<T>, f: F) -> Vec<U>
where
    T: Send + Sync,
    U: Send,
    F: Fn(T) -> U + Send + Sync,
{
    #[cfg(feature = "parallel")]
    {
        use rayon::prelude::*;
        items.into_par_iter().map(f).collect()
    }
    #[cfg(not(feature = "parallel"))]
    {
        items.into_iter().map(f).collect()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::{PrimeField, Rationals};

    #[test]
    fn counts_over_f2() {
        let k = PrimeField::new(2).unwrap();
        assert_eq!(all_subspaces(&k, 2, 1000).unwrap().len(), 5);
        assert_eq!(all_subspaces(&k, 3, 1000).unwrap().len(), 16);
        assert_eq!(all_subspaces(&k, 4, 1000).unwrap().len(), 67);
        assert_eq!(subspace_count(2, 4), 67);
        assert_eq!(subspace_count(3, 2), 6);
    }

    #[test]
    fn exhaustive_subspaces_are_distinct() {
        let k = PrimeField::new(3).unwrap();
        let all = all_subspaces(&k, 3, 1000).unwrap();
        assert_eq!(all.len() as u128, subspace_count(3, 3));
        for (i, s) in all.iter().enumerate() {
            assert!(!all[..i].contains(s));
        }
    }

    #[test]
    fn exhaustive_rejected_over_q() {
        assert!(matches!(all_subspaces(&Rationals, 2, 100), Err(Error::StrategyField { .. })));
    }

    #[test]
    fn sampling_is_reproducible() {
        let s = Strategy::CoordinateRandom { count: 5, seed: 7 };
        let a = subspaces(&Rationals, 3, s, 1000).unwrap();
        let b = subspaces(&Rationals, 3, s, 1000).unwrap();
        assert_eq!(a, b);
        assert!(a.len() >= 8);
    }

    #[test]
    fn strategy_parsing() {
        assert_eq!("exhaustive".parse::<Strategy>().unwrap(), Strategy::Exhaustive);
        assert_eq!(
            "coordinate+random(4, 9)".parse::<Strategy>().unwrap(),
            Strategy::CoordinateRandom { count: 4, seed: 9 }
        );
        assert!("greedy".parse::<Strategy>().is_err());
        let s = Strategy::CoordinateRandom { count: 3, seed: 1 };
        assert_eq!(s.to_string().parse::<Strategy>().unwrap(), s);
    }
}
