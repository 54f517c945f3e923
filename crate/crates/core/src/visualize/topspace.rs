/// A finite topological space. Finite spaces are Alexandrov: arbitrary
/// intersections of opens are open, so the space is determined by the
/// minimal open neighborhood of each point (the intersection of all
/// subbasic opens containing it). A set is open iff it contains the
/// minimal neighborhood of each of its points.
#[derive(Clone)]
pub struct FiniteTopSpace {
    n: usize,
    pub labels: Vec<String>,
    /// `min_nbhd[x][y]`: y lies in the minimal open neighborhood of x.
    min_nbhd: Vec<Vec<bool>>,
}

impl FiniteTopSpace {
    pub fn from_subbasis(n: usize, subbasis: Vec<Vec<bool>>) -> Self {
        let mut min_nbhd = vec![vec![true; n]; n];
        for s in &subbasis {
            assert_eq!(s.len(), n);
            for x in 0..n {
                if s[x] {
                    for y in 0..n {
                        min_nbhd[x][y] &= s[y];
                    }
                }
            }
        }
        FiniteTopSpace {
            n,
            labels: (0..n).map(|i| format!("p{i}")).collect(),
            min_nbhd,
        }
    }

    pub fn len(&self) -> usize {
        self.n
    }

    pub fn is_empty(&self) -> bool {
        self.n == 0
    }

    /// The canonical minimal basis: one minimal neighborhood per point,
    /// deduplicated, in point order.
    pub fn basis(&self) -> Vec<Vec<bool>> {
        let mut out: Vec<Vec<bool>> = vec![];
        for x in 0..self.n {
            if !out.contains(&self.min_nbhd[x]) {
                out.push(self.min_nbhd[x].clone());
            }
        }
        out
    }

    /// Number of distinct open sets (small spaces only).
    pub fn open_count(&self) -> usize {
        assert!(self.n <= 20, "open-set enumeration is for small spaces");
        (0u32..(1 << self.n))
            .filter(|mask| {
                let set: Vec<bool> = (0..self.n).map(|i| mask >> i & 1 == 1).collect();
                self.is_open(&set)
            })
            .count()
    }

    pub fn is_open(&self, set: &[bool]) -> bool {
        (0..self.n).all(|x| {
            !set[x] || self.min_nbhd[x].iter().zip(set).all(|(&inn, &ins)| !inn || ins)
        })
    }

    /// q in the closure of p: every open containing q contains p.
    pub fn in_closure_of(&self, q: usize, p: usize) -> bool {
        self.min_nbhd[q][p]
    }

    pub fn closed_points(&self) -> Vec<usize> {
        (0..self.n)
            .filter(|&p| (0..self.n).all(|q| q == p || !self.in_closure_of(q, p)))
            .collect()
    }

    /// Subspace on a point subset (indices into this space).
    pub fn subspace(&self, subset: &[usize]) -> FiniteTopSpace {
        let min_nbhd = subset
            .iter()
            .map(|&x| subset.iter().map(|&y| self.min_nbhd[x][y]).collect())
            .collect();
        FiniteTopSpace {
            n: subset.len(),
            labels: subset.iter().map(|&i| self.labels[i].clone()).collect(),
            min_nbhd,
        }
    }

    /// Self refines other (same point set): every open of the other
    /// topology is open here, i.e. minimal neighborhoods only shrink.
    pub fn refines(&self, other: &FiniteTopSpace) -> bool {
        assert_eq!(self.n, other.n);
        (0..self.n).all(|x| {
            self.min_nbhd[x]
                .iter()
                .zip(&other.min_nbhd[x])
                .all(|(&fine, &coarse)| !fine || coarse)
        })
    }

    pub fn same_topology(&self, other: &FiniteTopSpace) -> bool {
        self.refines(other) && other.refines(self)
    }

    /// Continuity of `map: self -> other`: the image of each minimal
    /// neighborhood lands in the minimal neighborhood of the image.
    pub fn map_continuous(&self, map: &[usize], other: &FiniteTopSpace) -> bool {
        assert_eq!(map.len(), self.n);
        (0..self.n).all(|x| {
            (0..self.n).all(|y| !self.min_nbhd[x][y] || other.min_nbhd[map[x]][map[y]])
        })
    }

    /// Is `map` a homeomorphism onto `other`?
    pub fn homeomorphic_via(&self, map: &[usize], other: &FiniteTopSpace) -> bool {
        if self.n != other.n {
            return false;
        }
        let mut seen = vec![false; self.n];
        for &y in map {
            if y >= self.n || seen[y] {
                return false;
            }
            seen[y] = true;
        }
        let mut inverse = vec![0usize; self.n];
        for (x, &y) in map.iter().enumerate() {
            inverse[y] = x;
        }
        self.map_continuous(map, other) && other.map_continuous(&inverse, self)
    }

    /// Covering edges of the specialization order, for Hasse diagrams:
    /// (p, q) with q an immediate specialization of p.
    pub fn hasse_edges(&self) -> Vec<(usize, usize)> {
        let le = |p: usize, q: usize| self.in_closure_of(q, p); // q in cl{p}
        let mut out = vec![];
        for p in 0..self.n {
            for q in 0..self.n {
                if p == q || !le(p, q) || le(q, p) {
                    continue;
                }
                let covering = !(0..self.n).any(|r| {
                    r != p && r != q && le(p, r) && le(r, q) && !le(r, p) && !le(q, r)
                });
                if covering {
                    out.push((p, q));
                }
            }
        }
        out
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn sierpinski_space() {
        // points {0,1}, opens {}, {1}, all
        let t = FiniteTopSpace::from_subbasis(2, vec![vec![false, true]]);
        assert_eq!(t.open_count(), 3);
        assert!(t.in_closure_of(0, 1)); // 0 lies in the closure of 1
        assert!(!t.in_closure_of(1, 0));
        assert_eq!(t.closed_points(), vec![0]);
    }

    #[test]
    fn discrete_refines_everything() {
        let discrete =
            FiniteTopSpace::from_subbasis(2, vec![vec![true, false], vec![false, true]]);
        let sierpinski = FiniteTopSpace::from_subbasis(2, vec![vec![false, true]]);
        assert!(discrete.refines(&sierpinski));
        assert!(!sierpinski.refines(&discrete));
    }

    #[test]
    fn subspace_of_discrete_is_discrete() {
        let discrete =
            FiniteTopSpace::from_subbasis(3, vec![vec![true, false, false], vec![false, true, false], vec![false, false, true]]);
        let sub = discrete.subspace(&[0, 2]);
        assert_eq!(sub.open_count(), 4);
    }
}
