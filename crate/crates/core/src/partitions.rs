//! Young diagrams in English notation with arm and leg statistics.

use alloc::string::String;
use alloc::vec::Vec;
use core::fmt;
use core::str::FromStr;

/// An integer partition, parts weakly decreasing and strictly positive.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Debug, Default)]
pub struct Partition {
    parts: Vec<usize>,
}

/// A cell of a diagram, 0-based `(row, col)` with rows growing downward.
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub struct Box {
    pub row: usize,
    pub col: usize,
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum PartitionError {
    #[error("parts must be positive and weakly decreasing: {0:?}")]
    NotAPartition(Vec<usize>),
    #[error("box ({row}, {col}) lies outside the diagram")]
    BoxOutside { row: usize, col: usize },
    #[error("cannot parse partition `{0}`")]
    Parse(String),
}

impl Partition {
    pub fn new(parts: Vec<usize>) -> Result<Self, PartitionError> {
        let ok = parts.iter().all(|&p| p > 0) && parts.windows(2).all(|w| w[0] >= w[1]);
        if !ok {
            return Err(PartitionError::NotAPartition(parts));
        }
        Ok(Partition { parts })
    }

    pub fn empty() -> Self {
        Partition { parts: Vec::new() }
    }

    pub fn parts(&self) -> &[usize] {
        &self.parts
    }

    /// `|μ|`.
    pub fn size(&self) -> usize {
        self.parts.iter().sum()
    }

    pub fn is_empty(&self) -> bool {
        self.parts.is_empty()
    }

    pub fn contains(&self, b: Box) -> bool {
        b.row < self.parts.len() && b.col < self.parts[b.row]
    }

    /// All boxes, row by row.
    pub fn boxes(&self) -> impl Iterator<Item = Box> + '_ {
        self.parts
            .iter()
            .enumerate()
            .flat_map(|(row, &len)| (0..len).map(move |col| Box { row, col }))
    }

    /// `(arm, leg)`: boxes strictly to the right, and strictly below.
    pub fn arm_leg(&self, b: Box) -> Result<(usize, usize), PartitionError> {
        if !self.contains(b) {
            return Err(PartitionError::BoxOutside { row: b.row, col: b.col });
        }
        let arm = self.parts[b.row] - b.col - 1;
        let leg = self.parts[b.row + 1..].iter().take_while(|&&p| p > b.col).count();
        Ok((arm, leg))
    }

    pub fn conjugate(&self) -> Partition {
        let cols = self.parts.first().copied().unwrap_or(0);
        let parts = (0..cols)
            .map(|c| self.parts.iter().take_while(|&&p| p > c).count())
            .collect();
        Partition { parts }
    }
}

/// All partitions of `n` in reverse-lexicographic order, e.g.
/// `(4), (3,1), (2,2), (2,1,1), (1,1,1,1)`.
pub fn enumerate_partitions(n: usize) -> Vec<Partition> {
    fn rec(remaining: usize, max_part: usize, prefix: &mut Vec<usize>, out: &mut Vec<Partition>) {
        if remaining == 0 {
            out.push(Partition { parts: prefix.clone() });
            return;
        }
        for p in (1..=remaining.min(max_part)).rev() {
            prefix.push(p);
            rec(remaining - p, p, prefix, out);
            prefix.pop();
        }
    }
    let mut out = Vec::new();
    rec(n, n, &mut Vec::new(), &mut out);
    out
}

impl fmt::Display for Partition {
    /// Comma-separated parts, e.g. `2,1`; the empty partition prints as ``.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (i, p) in self.parts.iter().enumerate() {
            if i > 0 {
                f.write_str(",")?;
            }
            write!(f, "{p}")?;
        }
        Ok(())
    }
}

impl FromStr for Partition {
    type Err = PartitionError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let s = s.trim();
        if s.is_empty() {
            return Ok(Partition::empty());
        }
        let parts = s
            .split(',')
            .map(|p| p.trim().parse::<usize>())
            .collect::<Result<Vec<_>, _>>()
            .map_err(|_| PartitionError::Parse(String::from(s)))?;
        Partition::new(parts)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use alloc::string::ToString;
    use alloc::vec;

    fn p(parts: &[usize]) -> Partition {
        Partition::new(parts.to_vec()).unwrap()
    }

    #[test]
    fn enumeration_small_cases() {
        assert_eq!(enumerate_partitions(0), vec![Partition::empty()]);
        assert_eq!(enumerate_partitions(1), vec![p(&[1])]);
        assert_eq!(
            enumerate_partitions(4),
            vec![p(&[4]), p(&[3, 1]), p(&[2, 2]), p(&[2, 1, 1]), p(&[1, 1, 1, 1])]
        );
    }

    #[test]
    fn counts_match_euler_recurrence() {
        // Pentagonal number recurrence p(n) = Σ_k (-1)^{k+1} [p(n - k(3k-1)/2) + p(n - k(3k+1)/2)].
        let mut counts = vec![1i64];
        for n in 1..=30i64 {
            let mut acc = 0;
            for k in 1.. {
                let g1 = k * (3 * k - 1) / 2;
                if g1 > n {
                    break;
                }
                let sign = if k % 2 == 1 { 1 } else { -1 };
                acc += sign * counts[(n - g1) as usize];
                let g2 = k * (3 * k + 1) / 2;
                if g2 <= n {
                    acc += sign * counts[(n - g2) as usize];
                }
            }
            counts.push(acc);
        }
        for n in 0..=30 {
            let parts = enumerate_partitions(n);
            assert_eq!(parts.len() as i64, counts[n], "p({n})");
            assert!(parts.iter().all(|m| m.size() == n && m.boxes().count() == n));
        }
    }

    #[test]
    fn arm_leg_examples() {
        let mu = p(&[2, 1]);
        assert_eq!(mu.arm_leg(Box { row: 0, col: 0 }), Ok((1, 1)));
        assert_eq!(mu.arm_leg(Box { row: 0, col: 1 }), Ok((0, 0)));
        assert_eq!(p(&[1]).arm_leg(Box { row: 0, col: 0 }), Ok((0, 0)));
        assert_eq!(
            mu.arm_leg(Box { row: 1, col: 1 }),
            Err(PartitionError::BoxOutside { row: 1, col: 1 })
        );
    }

    #[test]
    fn conjugation_swaps_arm_and_leg() {
        for n in 0..=8 {
            for mu in enumerate_partitions(n) {
                let conj = mu.conjugate();
                assert_eq!(conj.conjugate(), mu);
                for b in mu.boxes() {
                    let (a, l) = mu.arm_leg(b).unwrap();
                    let (ca, cl) = conj.arm_leg(Box { row: b.col, col: b.row }).unwrap();
                    assert_eq!((ca, cl), (l, a), "{mu} at {b:?}");
                }
            }
        }
    }

    #[test]
    fn text_form() {
        assert_eq!(p(&[2, 1]).to_string(), "2,1");
        assert_eq!("3,1,1".parse::<Partition>().unwrap(), p(&[3, 1, 1]));
        assert!("1,2".parse::<Partition>().is_err());
        assert!(Partition::new(vec![2, 0]).is_err());
    }
}
