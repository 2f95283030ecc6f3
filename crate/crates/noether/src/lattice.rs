//! Finite bounded lattices.
//!
//! Elements are dense indices `0..len()`. The order is stored as a full
//! matrix and joins and meets are tabulated at construction, so every
//! query is a table lookup.

use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum LatticeError {
    #[error("a lattice needs at least one element")]
    Empty,
    #[error("order is not antisymmetric: {0} <= {1} and {1} <= {0}")]
    NotAntisymmetric(usize, usize),
    #[error("elements {0} and {1} have no least upper bound")]
    NoJoin(usize, usize),
    #[error("elements {0} and {1} have no greatest lower bound")]
    NoMeet(usize, usize),
}

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Lattice {
    n: usize,
    leq: Vec<bool>,
    join: Vec<usize>,
    meet: Vec<usize>,
    bottom: usize,
    top: usize,
}

impl Lattice {
    /// Builds a lattice from the reflexive-transitive closure of `rel`.
    pub fn from_relation(
        n: usize,
        rel: impl Fn(usize, usize) -> bool,
    ) -> Result<Self, LatticeError> {
        if n == 0 {
            return Err(LatticeError::Empty);
        }
        let mut leq = vec![false; n * n];
        for a in 0..n {
            for b in 0..n {
                leq[a * n + b] = a == b || rel(a, b);
            }
        }
        // Warshall closure.
        for k in 0..n {
            for a in 0..n {
                if !leq[a * n + k] {
                    continue;
                }
                for b in 0..n {
                    if leq[k * n + b] {
                        leq[a * n + b] = true;
                    }
                }
            }
        }
        for a in 0..n {
            for b in (a + 1)..n {
                if leq[a * n + b] && leq[b * n + a] {
                    return Err(LatticeError::NotAntisymmetric(a, b));
                }
            }
        }
        let le = |a: usize, b: usize| leq[a * n + b];
        let mut join = vec![0; n * n];
        let mut meet = vec![0; n * n];
        for a in 0..n {
            for b in a..n {
                let uppers: Vec<usize> = (0..n).filter(|&c| le(a, c) && le(b, c)).collect();
                let j = uppers
                    .iter()
                    .copied()
                    .find(|&c| uppers.iter().all(|&u| le(c, u)))
                    .ok_or(LatticeError::NoJoin(a, b))?;
                let lowers: Vec<usize> = (0..n).filter(|&c| le(c, a) && le(c, b)).collect();
                let m = lowers
                    .iter()
                    .copied()
                    .find(|&c| lowers.iter().all(|&l| le(l, c)))
                    .ok_or(LatticeError::NoMeet(a, b))?;
                join[a * n + b] = j;
                join[b * n + a] = j;
                meet[a * n + b] = m;
                meet[b * n + a] = m;
            }
        }
        let bottom = (0..n).find(|&c| (0..n).all(|x| le(c, x))).expect("finite lattice has a bottom");
        let top = (0..n).find(|&c| (0..n).all(|x| le(x, c))).expect("finite lattice has a top");
        Ok(Lattice { n, leq, join, meet, bottom, top })
    }

    /// Lattice of a family of sets ordered by inclusion, where `join` is
    /// supplied by the caller (closure of the union) and meet is intersection.
    /// The caller guarantees the family is closed under both.
    pub fn from_masks(masks: &[u64], join: impl Fn(u64, u64) -> u64) -> Self {
        let n = masks.len();
        assert!(n > 0);
        let index = |m: u64| {
            masks
                .iter()
                .position(|&x| x == m)
                .expect("family closed under the lattice operations")
        };
        let mut leq = vec![false; n * n];
        let mut jt = vec![0; n * n];
        let mut mt = vec![0; n * n];
        for a in 0..n {
            for b in 0..n {
                leq[a * n + b] = masks[a] & !masks[b] == 0;
                if b >= a {
                    let j = index(join(masks[a], masks[b]));
                    let m = index(masks[a] & masks[b]);
                    jt[a * n + b] = j;
                    jt[b * n + a] = j;
                    mt[a * n + b] = m;
                    mt[b * n + a] = m;
                }
            }
        }
        let bottom = (0..n).min_by_key(|&i| masks[i].count_ones()).unwrap();
        let top = (0..n).max_by_key(|&i| masks[i].count_ones()).unwrap();
        Lattice { n, leq, join: jt, meet: mt, bottom, top }
    }

    pub fn len(&self) -> usize {
        self.n
    }

    pub fn is_empty(&self) -> bool {
        self.n == 0
    }

    pub fn leq(&self, a: usize, b: usize) -> bool {
        self.leq[a * self.n + b]
    }

    pub fn join(&self, a: usize, b: usize) -> usize {
        self.join[a * self.n + b]
    }

    pub fn meet(&self, a: usize, b: usize) -> usize {
        self.meet[a * self.n + b]
    }

    pub fn bottom(&self) -> usize {
        self.bottom
    }

    pub fn top(&self) -> usize {
        self.top
    }

    /// Elements of the interval `[lo, hi]`.
    pub fn interval(&self, lo: usize, hi: usize) -> Vec<usize> {
        (0..self.n).filter(|&x| self.leq(lo, x) && self.leq(x, hi)).collect()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn diamond_m3() {
        // 0 < 1,2,3 < 4
        let l = Lattice::from_relation(5, |a, b| (a == 0) || (b == 4)).unwrap();
        assert_eq!(l.join(1, 2), 4);
        assert_eq!(l.meet(1, 3), 0);
        assert_eq!(l.bottom(), 0);
        assert_eq!(l.top(), 4);
    }

    #[test]
    fn rejects_two_maximal_elements() {
        let err = Lattice::from_relation(3, |a, _| a == 0).unwrap_err();
        assert!(matches!(err, LatticeError::NoJoin(1, 2)));
    }

    #[test]
    fn rejects_cycles() {
        let err = Lattice::from_relation(2, |_, _| true).unwrap_err();
        assert_eq!(err, LatticeError::NotAntisymmetric(0, 1));
    }
}
