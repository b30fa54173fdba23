//! Sparse rank modulo a large prime.
//!
//! A family with full rank modulo `p` has full rank over `Q` (a nonzero
//! minor mod `p` is nonzero over `Q`), so a full-rank answer here is exact.
//! Smaller ranks are only lower bounds.

use std::collections::BTreeMap;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{ToPrimitive, Zero};

use super::scalar::Rational;

/// `2⁶¹ − 1`.
pub const PRIME: u64 = (1 << 61) - 1;

fn mul(a: u64, b: u64) -> u64 {
    ((a as u128 * b as u128) % PRIME as u128) as u64
}

fn pow(mut a: u64, mut e: u64) -> u64 {
    let mut r = 1;
    while e > 0 {
        if e & 1 == 1 {
            r = mul(r, a);
        }
        a = mul(a, a);
        e >>= 1;
    }
    r
}

fn inv(a: u64) -> u64 {
    pow(a, PRIME - 2)
}

fn reduce_int(n: &BigInt) -> u64 {
    n.mod_floor(&BigInt::from(PRIME))
        .to_u64()
        .expect("residue fits")
}

/// `q mod p`, or `None` when the denominator vanishes mod `p`.
pub fn reduce(q: &Rational) -> Option<u64> {
    let den = reduce_int(q.denom());
    if den == 0 {
        return None;
    }
    Some(mul(reduce_int(q.numer()), inv(den)))
}

/// Rank modulo [`PRIME`] of sparse rational vectors; `None` if some
/// denominator vanishes mod `p`.
pub fn rank_mod_p<'a, I>(vectors: I) -> Option<usize>
where
    I: IntoIterator<Item = &'a BTreeMap<usize, Rational>>,
{
    let mut pivots: BTreeMap<usize, BTreeMap<usize, u64>> = BTreeMap::new();
    for v in vectors {
        let mut row = BTreeMap::new();
        for (k, c) in v {
            if c.is_zero() {
                continue;
            }
            let r = reduce(c)?;
            if r != 0 {
                row.insert(*k, r);
            }
        }
        while let Some((&lead, &c)) = row.iter().find(|(k, _)| pivots.contains_key(k)) {
            let prow = &pivots[&lead];
            for (k, e) in prow {
                let cur = row.get(k).copied().unwrap_or(0);
                let upd = (cur + PRIME - mul(c, *e)) % PRIME;
                if upd == 0 {
                    row.remove(k);
                } else {
                    row.insert(*k, upd);
                }
            }
        }
        if let Some((&lead, &c)) = row.iter().next() {
            let s = inv(c);
            for e in row.values_mut() {
                *e = mul(*e, s);
            }
            pivots.insert(lead, row);
        }
    }
    Some(pivots.len())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactalg::{rat, ratio};

    fn sv(entries: &[(usize, Rational)]) -> BTreeMap<usize, Rational> {
        entries.iter().cloned().collect()
    }

    #[test]
    fn ranks() {
        let a = sv(&[(0, rat(1)), (1, ratio(1, 2))]);
        let b = sv(&[(0, rat(2)), (1, rat(1))]);
        let c = sv(&[(1, rat(3)), (4, rat(-1))]);
        assert_eq!(rank_mod_p([&a, &b]), Some(1));
        assert_eq!(rank_mod_p([&a, &b, &c]), Some(2));
    }

    #[test]
    fn inverse_mod_p() {
        assert_eq!(reduce(&ratio(1, 3)).map(|r| mul(r, 3)), Some(1));
    }
}
