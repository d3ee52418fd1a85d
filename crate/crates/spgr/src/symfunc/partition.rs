//! Integer partitions: weakly decreasing part vectors without trailing
//! zeros, with the dominance and lexicographic orders and the restricted
//! families used here (strict, odd, and the family `P_C^n` of partitions
//! with parts at most `2n` having at most one part of each size `<= n`).

use crate::error::{Error, Result};
use std::cmp::Ordering;
use std::fmt;

#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Partition(Vec<u32>);

impl Partition {
    pub fn new(parts: Vec<u32>) -> Result<Partition> {
        if parts.windows(2).any(|w| w[0] < w[1]) {
            return Err(Error::InvalidPartition(parts, "parts must weakly decrease".into()));
        }
        if parts.contains(&0) {
            return Err(Error::InvalidPartition(parts, "zero part".into()));
        }
        Ok(Partition(parts))
    }

    /// Sorts and strips zeros.
    pub fn from_unsorted(mut parts: Vec<u32>) -> Partition {
        parts.retain(|&p| p != 0);
        parts.sort_unstable_by(|a, b| b.cmp(a));
        Partition(parts)
    }

    pub fn empty() -> Partition {
        Partition(Vec::new())
    }

    pub fn one_row(r: u32) -> Partition {
        if r == 0 {
            Partition::empty()
        } else {
            Partition(vec![r])
        }
    }

    pub fn parts(&self) -> &[u32] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn size(&self) -> u32 {
        self.0.iter().sum()
    }

    pub fn first(&self) -> u32 {
        self.0.first().copied().unwrap_or(0)
    }

    pub fn is_strict(&self) -> bool {
        self.0.windows(2).all(|w| w[0] > w[1])
    }

    pub fn is_odd(&self) -> bool {
        self.0.iter().all(|&p| p % 2 == 1)
    }

    /// Membership in `P_C^n`: parts at most `2n`, at most one part of each
    /// size `i <= n`.
    pub fn in_pcn(&self, n: usize) -> bool {
        let n = n as u32;
        self.first() <= 2 * n
            && self
                .0
                .windows(2)
                .all(|w| !(w[0] == w[1] && w[0] <= n))
    }

    /// Dominance order: `self <= other` when all partial sums compare.
    pub fn dominated_by(&self, other: &Partition) -> bool {
        if self.size() != other.size() {
            return false;
        }
        let mut a = 0i64;
        let mut b = 0i64;
        for i in 0..self.0.len().max(other.0.len()) {
            a += self.0.get(i).copied().unwrap_or(0) as i64;
            b += other.0.get(i).copied().unwrap_or(0) as i64;
            if a > b {
                return false;
            }
        }
        true
    }

    /// Lexicographic comparison, missing parts read as zero. Coincides with
    /// the derived `Ord` on the part vectors.
    pub fn lex_cmp(&self, other: &Partition) -> Ordering {
        self.0.cmp(&other.0)
    }

    /// Compact rendering: concatenated digits for single-digit parts
    /// (`"311"`), comma-separated otherwise.
    pub fn render(&self) -> String {
        if self.0.is_empty() {
            return String::new();
        }
        if self.0.iter().all(|&p| p <= 9) {
            self.0.iter().map(|p| p.to_string()).collect()
        } else {
            self.0
                .iter()
                .map(|p| p.to_string())
                .collect::<Vec<_>>()
                .join(",")
        }
    }

    pub fn parse(s: &str) -> Result<Partition> {
        let s = s.trim();
        if s.is_empty() {
            return Ok(Partition::empty());
        }
        let parts: Vec<u32> = if s.contains(',') {
            s.split(',')
                .map(|t| {
                    t.trim()
                        .parse::<u32>()
                        .map_err(|_| Error::InvalidPartition(vec![], format!("bad token in `{s}`")))
                })
                .collect::<Result<_>>()?
        } else {
            s.chars()
                .map(|c| {
                    c.to_digit(10)
                        .ok_or_else(|| Error::InvalidPartition(vec![], format!("bad digit in `{s}`")))
                })
                .collect::<Result<_>>()?
        };
        Partition::new(parts)
    }
}

impl fmt::Display for Partition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "({})",
            self.0
                .iter()
                .map(|p| p.to_string())
                .collect::<Vec<_>>()
                .join(",")
        )
    }
}

/// All partitions of `d` with parts at most `max_part`, in descending
/// lexicographic order.
pub fn partitions_bounded(d: u32, max_part: u32) -> Vec<Partition> {
    let mut out = Vec::new();
    let mut stack = Vec::new();
    fn rec(remaining: u32, max: u32, stack: &mut Vec<u32>, out: &mut Vec<Partition>) {
        if remaining == 0 {
            out.push(Partition(stack.clone()));
            return;
        }
        let top = max.min(remaining);
        for p in (1..=top).rev() {
            stack.push(p);
            rec(remaining - p, p, stack, out);
            stack.pop();
        }
    }
    rec(d, max_part, &mut stack, &mut out);
    out
}

pub fn partitions(d: u32) -> Vec<Partition> {
    partitions_bounded(d, d.max(1))
}

pub fn strict_partitions(d: u32) -> Vec<Partition> {
    partitions(d).into_iter().filter(Partition::is_strict).collect()
}

/// Partitions of `d` into odd parts of size at most `max_part`, descending
/// lexicographic.
pub fn odd_partitions_bounded(d: u32, max_part: u32) -> Vec<Partition> {
    partitions_bounded(d, max_part)
        .into_iter()
        .filter(Partition::is_odd)
        .collect()
}

/// The members of `P_C^n` of size `d`, descending lexicographic.
pub fn pcn_partitions(n: usize, d: u32) -> Vec<Partition> {
    partitions_bounded(d, 2 * n as u32)
        .into_iter()
        .filter(|p| p.in_pcn(n))
        .collect()
}

/// Distinct rearrangements of the parts of `lambda`.
pub fn rearrangements(lambda: &Partition) -> Vec<Vec<u32>> {
    let mut out = Vec::new();
    let mut pool: Vec<u32> = lambda.parts().to_vec();
    let mut cur = Vec::new();
    fn rec(pool: &mut Vec<u32>, cur: &mut Vec<u32>, out: &mut Vec<Vec<u32>>) {
        if pool.is_empty() {
            out.push(cur.clone());
            return;
        }
        let mut used = Vec::new();
        for i in 0..pool.len() {
            let p = pool[i];
            if used.contains(&p) {
                continue;
            }
            used.push(p);
            pool.remove(i);
            cur.push(p);
            rec(pool, cur, out);
            cur.pop();
            pool.insert(i, p);
        }
    }
    rec(&mut pool, &mut cur, &mut out);
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn validation() {
        assert!(Partition::new(vec![3, 1]).is_ok());
        assert!(Partition::new(vec![1, 3]).is_err());
        assert!(Partition::new(vec![2, 0]).is_err());
    }

    #[test]
    fn counts() {
        assert_eq!(partitions(6).len(), 11);
        assert_eq!(strict_partitions(7).len(), 5);
        // P_C^2 of size d is counted by odd partitions with parts <= 3.
        for d in 1..=8 {
            assert_eq!(
                pcn_partitions(2, d).len(),
                odd_partitions_bounded(d, 3).len(),
                "d={d}"
            );
        }
    }

    #[test]
    fn pcn_membership() {
        assert!(Partition::new(vec![3, 1]).unwrap().in_pcn(2));
        assert!(Partition::new(vec![4, 3]).unwrap().in_pcn(2));
        assert!(!Partition::new(vec![2, 2]).unwrap().in_pcn(2));
        assert!(Partition::new(vec![3, 3]).unwrap().in_pcn(2));
        assert!(!Partition::new(vec![5]).unwrap().in_pcn(2));
    }

    #[test]
    fn dominance() {
        let a = Partition::new(vec![2, 1]).unwrap();
        let b = Partition::new(vec![1, 1, 1]).unwrap();
        let c = Partition::new(vec![3]).unwrap();
        assert!(b.dominated_by(&a));
        assert!(a.dominated_by(&c));
        assert!(!a.dominated_by(&b));
        assert!(a.dominated_by(&a));
    }

    #[test]
    fn lex_order_and_render() {
        let a = Partition::new(vec![2, 1]).unwrap();
        let b = Partition::new(vec![2]).unwrap();
        assert_eq!(a.lex_cmp(&b), Ordering::Greater);
        assert_eq!(a.render(), "21");
        assert_eq!(Partition::parse("311").unwrap().parts(), &[3, 1, 1]);
        assert!(Partition::parse("2,11").is_err());
        assert_eq!(Partition::parse("11,3,1").unwrap().render(), "11,3,1");
    }

    #[test]
    fn rearrangement_counts() {
        let lam = Partition::new(vec![3, 1]).unwrap();
        assert_eq!(rearrangements(&lam).len(), 2);
        let lam = Partition::new(vec![2, 1, 1]).unwrap();
        assert_eq!(rearrangements(&lam).len(), 3);
    }
}
