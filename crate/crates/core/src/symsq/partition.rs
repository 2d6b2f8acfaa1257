use std::fmt;

use crate::error::{bail, Result};

/// A weakly decreasing list of nonnegative integers. Trailing zeros are
/// kept, so a partition also records the rank it is padded to.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Partition {
    parts: Vec<u32>,
}

impl Partition {
    pub fn new(parts: Vec<u32>) -> Result<Self> {
        if parts.windows(2).any(|w| w[0] < w[1]) {
            bail!(Domain, "parts {parts:?} are not weakly decreasing");
        }
        Ok(Partition { parts })
    }

    /// Accepts signed parts, rejecting negative or non-dominant vectors.
    pub fn from_signed(parts: &[i64]) -> Result<Self> {
        let mut out = Vec::with_capacity(parts.len());
        for &p in parts {
            if p < 0 {
                bail!(Domain, "negative part {p} in {parts:?}");
            }
            out.push(u32::try_from(p).map_err(|_| crate::Error::Domain(format!("part {p} too large")))?);
        }
        Self::new(out)
    }

    pub fn empty() -> Self {
        Partition { parts: Vec::new() }
    }

    pub fn parts(&self) -> &[u32] {
        &self.parts
    }

    /// Number of nonzero parts.
    pub fn length(&self) -> usize {
        self.parts.iter().take_while(|&&p| p > 0).count()
    }

    pub fn size(&self) -> u64 {
        self.parts.iter().map(|&p| u64::from(p)).sum()
    }

    pub fn is_even(&self) -> bool {
        self.parts.iter().all(|p| p % 2 == 0)
    }

    /// Pads with zeros to `r` entries. Fails if there are more than `r`
    /// nonzero parts.
    pub fn padded(&self, r: usize) -> Result<Self> {
        if self.length() > r {
            bail!(Precondition, "partition {self} has more than {r} nonzero parts");
        }
        let mut parts: Vec<u32> = self.parts.iter().copied().take(r).collect();
        parts.resize(r, 0);
        Ok(Partition { parts })
    }

    /// Conjugate partition (rows become columns).
    pub fn conjugate(&self) -> Self {
        let first = self.parts.first().copied().unwrap_or(0);
        let parts = (1..=first)
            .map(|k| self.parts.iter().filter(|&&p| p >= k).count() as u32)
            .collect();
        Partition { parts }
    }
}

impl fmt::Display for Partition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.parts.iter().map(u32::to_string).collect();
        write!(f, "({})", parts.join(","))
    }
}

/// All partitions of `n` with at most `max_parts` parts, each padded to
/// exactly `max_parts` entries, in reverse lexicographic order.
pub fn partitions_of(n: u32, max_parts: usize) -> Vec<Partition> {
    fn go(rest: u32, cap: u32, slots: usize, cur: &mut Vec<u32>, out: &mut Vec<Partition>) {
        if rest == 0 {
            let mut parts = cur.clone();
            parts.resize(parts.len() + slots, 0);
            out.push(Partition { parts });
            return;
        }
        if slots == 0 {
            return;
        }
        for first in (1..=rest.min(cap)).rev() {
            cur.push(first);
            go(rest - first, first, slots - 1, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    go(n, n, max_parts, &mut Vec::new(), &mut out);
    out
}

/// Partitions of every size up to `max_size`, with at most `max_parts` parts.
pub fn partitions_up_to(max_size: u32, max_parts: usize) -> Vec<Partition> {
    (0..=max_size).flat_map(|n| partitions_of(n, max_parts)).collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rejects_increasing_parts() {
        assert!(Partition::new(vec![1, 2]).is_err());
        assert!(Partition::from_signed(&[2, -1]).is_err());
        assert!(Partition::new(vec![3, 3, 0]).is_ok());
    }

    #[test]
    fn length_ignores_padding() {
        let p = Partition::new(vec![2, 1, 0, 0]).unwrap();
        assert_eq!(p.length(), 2);
        assert_eq!(p.size(), 3);
        assert!(!p.is_even());
        assert_eq!(p.padded(2).unwrap().parts(), &[2, 1]);
        assert!(p.padded(1).is_err());
    }

    #[test]
    fn partition_counts() {
        // p(n) for n = 0..8
        let expected = [1, 1, 2, 3, 5, 7, 11, 15, 22];
        for (n, &c) in expected.iter().enumerate() {
            assert_eq!(partitions_of(n as u32, n.max(1)).len(), c, "n = {n}");
        }
        assert_eq!(partitions_of(4, 2).len(), 3);
        assert_eq!(partitions_of(0, 0).len(), 1);
        assert!(partitions_of(3, 0).is_empty());
    }

    #[test]
    fn conjugate_is_involution() {
        for p in partitions_up_to(7, 7) {
            let c = p.conjugate();
            assert_eq!(c.size(), p.size());
            assert_eq!(c.conjugate().padded(p.parts().len()).unwrap(), p);
        }
    }
}
