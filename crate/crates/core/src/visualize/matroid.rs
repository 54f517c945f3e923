use std::collections::BTreeSet;

use crate::error::{Error, Result};

/// A matroid on {1..n} of rank r, given by its basis family.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Debug)]
pub struct Matroid {
    pub ground: usize,
    pub rank: usize,
    pub bases: BTreeSet<Vec<usize>>,
}

impl Matroid {
    /// Validates the basis exchange axiom: for bases A, B and x in A-B
    /// there is y in B-A with A - x + y a basis.
    pub fn new(ground: usize, rank: usize, bases: BTreeSet<Vec<usize>>) -> Result<Matroid> {
        if bases.is_empty() {
            return Err(Error::Other("a matroid needs at least one basis".into()));
        }
        for b in &bases {
            if b.len() != rank || b.iter().any(|&e| e == 0 || e > ground) {
                return Err(Error::Other("basis of the wrong rank or ground set".into()));
            }
        }
        let m = Matroid { ground, rank, bases };
        if !m.exchange_holds() {
            return Err(Error::Other("basis exchange fails".into()));
        }
        Ok(m)
    }

    pub fn exchange_holds(&self) -> bool {
        for a in &self.bases {
            for b in &self.bases {
                for &x in a.iter().filter(|x| !b.contains(x)) {
                    let found = b.iter().filter(|y| !a.contains(y)).any(|&y| {
                        let mut c: Vec<usize> =
                            a.iter().copied().filter(|&e| e != x).collect();
                        c.push(y);
                        c.sort();
                        self.bases.contains(&c)
                    });
                    if !found {
                        return false;
                    }
                }
            }
        }
        true
    }

    /// One-line basis list format: bases separated by spaces, elements
    /// concatenated.
    pub fn basis_line(&self) -> String {
        self.bases
            .iter()
            .map(|b| b.iter().map(|e| e.to_string()).collect::<Vec<_>>().join(""))
            .collect::<Vec<_>>()
            .join(" ")
    }
}

/// Brute-force enumeration of all rank-r matroids on {1..n}: every
/// nonempty family of r-subsets satisfying the exchange axiom.
pub fn all_matroids(r: usize, n: usize) -> Vec<Matroid> {
    let subsets = k_subsets(n, r);
    let m = subsets.len();
    assert!(m <= 20, "exhaustive matroid enumeration is for small (r, n)");
    let mut out = vec![];
    for mask in 1u32..(1u32 << m) {
        let bases: BTreeSet<Vec<usize>> = subsets
            .iter()
            .enumerate()
            .filter(|(i, _)| mask >> i & 1 == 1)
            .map(|(_, s)| s.clone())
            .collect();
        let cand = Matroid { ground: n, rank: r, bases };
        if cand.exchange_holds() {
            out.push(cand);
        }
    }
    out.sort();
    out
}

/// A weak map M -> N between matroids of the same rank: every basis of N
/// is a basis of M.
pub fn weak_map_exists(m: &Matroid, n: &Matroid) -> bool {
    m.ground == n.ground && m.rank == n.rank && n.bases.is_subset(&m.bases)
}

fn k_subsets(n: usize, k: usize) -> Vec<Vec<usize>> {
    let mut out = vec![];
    let mut cur = vec![];
    fn rec(start: usize, n: usize, k: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if cur.len() == k {
            out.push(cur.clone());
            return;
        }
        for i in start..=n {
            cur.push(i);
            rec(i + 1, n, k, cur, out);
            cur.pop();
        }
    }
    rec(1, n, k, &mut cur, &mut out);
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn uniform_matroid_is_a_matroid() {
        let bases: BTreeSet<Vec<usize>> = k_subsets(4, 2).into_iter().collect();
        let u24 = Matroid::new(4, 2, bases).unwrap();
        assert_eq!(u24.bases.len(), 6);
    }

    #[test]
    fn single_basis_is_a_matroid() {
        let bases: BTreeSet<Vec<usize>> = [vec![1, 2]].into_iter().collect();
        assert!(Matroid::new(4, 2, bases).is_ok());
    }

    #[test]
    fn exchange_rejects_disconnected_pairs() {
        // {12, 34} fails exchange: from 12 remove 1, no replacement
        let bases: BTreeSet<Vec<usize>> = [vec![1, 2], vec![3, 4]].into_iter().collect();
        assert!(Matroid::new(4, 2, bases).is_err());
    }

    #[test]
    fn weak_maps_point_to_fewer_bases() {
        let u24 = Matroid::new(4, 2, k_subsets(4, 2).into_iter().collect()).unwrap();
        let single = Matroid::new(4, 2, [vec![1, 2]].into_iter().collect()).unwrap();
        assert!(weak_map_exists(&u24, &single));
        assert!(!weak_map_exists(&single, &u24));
    }
}
