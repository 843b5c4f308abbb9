//! Combinatorial matroid layer: ranks, circuits, connectivity, duality,
//! minors, and the handle machinery (handle partitions and greedy handle
//! decompositions).
//!
//! Ground sets are index sets `0..n` with `n ≤ 16`; subsets are `u32`
//! bitmasks.  Construction eagerly builds an independence table and a rank
//! table over all `2^n` subsets, so every later query is table-driven.

use std::collections::HashMap;

use itertools::Itertools;

use crate::error::{Error, Result};
use crate::linalg::Matrix;

pub const MAX_GROUND: usize = 16;

/// One block of a handle partition, with the properties the structure
/// theorems talk about.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct HandleReport {
    pub mask: u32,
    pub size: usize,
    /// Connectivity value λ(H) = rk(H) + rk(E∖H) − rk(E).
    pub lambda: usize,
    /// Whether deleting the handle disconnects the matroid.
    pub disconnective: bool,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MatroidView {
    n: usize,
    rank: usize,
    bases: Vec<u32>,
    rank_table: Vec<u8>,
    circuits: Vec<u32>,
}

pub fn mask_elements(mask: u32) -> Vec<usize> {
    (0..32).filter(|i| mask >> i & 1 == 1).collect()
}

pub fn mask_from_elements(elements: &[usize]) -> u32 {
    elements.iter().fold(0, |acc, &e| acc | (1 << e))
}

impl MatroidView {
    /// The uniform matroid U(r, n): every r-subset is a basis.
    pub fn uniform(r: usize, n: usize) -> Result<Self> {
        if r > n {
            return Err(Error::BadParameter(format!("rank {r} exceeds ground set {n}")));
        }
        if n > MAX_GROUND {
            return Err(Error::TooLarge(n, MAX_GROUND));
        }
        let bases = (0u32..1 << n).filter(|m| m.count_ones() as usize == r).collect();
        Self::from_bases(n, bases)
    }

    /// Builds a matroid from an explicit basis list, validating the basis
    /// exchange axiom.
    pub fn from_bases(n: usize, bases: Vec<u32>) -> Result<Self> {
        if n > MAX_GROUND {
            return Err(Error::TooLarge(n, MAX_GROUND));
        }
        if bases.is_empty() {
            return Err(Error::EmptyBases);
        }
        let full = full_mask(n);
        if bases.iter().any(|&b| b & !full != 0) {
            return Err(Error::BadParameter("basis mask outside the ground set".into()));
        }
        let size = bases[0].count_ones();
        if bases.iter().any(|&b| b.count_ones() != size) {
            return Err(Error::BadParameter("bases must all have the same size".into()));
        }
        let mut bases = bases;
        bases.sort_unstable();
        bases.dedup();
        for &b1 in &bases {
            for &b2 in &bases {
                let mut e_mask = b1 & !b2;
                while e_mask != 0 {
                    let e = e_mask & e_mask.wrapping_neg();
                    e_mask &= e_mask - 1;
                    let mut f_mask = b2 & !b1;
                    let mut found = false;
                    while f_mask != 0 {
                        let f = f_mask & f_mask.wrapping_neg();
                        f_mask &= f_mask - 1;
                        if bases.binary_search(&((b1 & !e) | f)).is_ok() {
                            found = true;
                            break;
                        }
                    }
                    if !found {
                        return Err(Error::ExchangeFailure);
                    }
                }
            }
        }
        Ok(Self::build(n, bases))
    }

    /// Column matroid of a matrix: independence is linear independence.
    pub fn from_matrix(matrix: &Matrix) -> Result<Self> {
        let n = matrix.ncols();
        if n > MAX_GROUND {
            return Err(Error::TooLarge(n, MAX_GROUND));
        }
        let r = matrix.rank();
        let bases = if r == 0 {
            vec![0u32]
        } else {
            (0..n)
                .combinations(r)
                .filter(|cols| matrix.col_submatrix(cols).rank() == r)
                .map(|cols| mask_from_elements(&cols))
                .collect()
        };
        debug_assert!(!bases.is_empty(), "a matrix always has a column basis");
        Ok(Self::build(n, bases))
    }

    /// Trusted constructor: `bases` is already known to satisfy exchange.
    fn build(n: usize, mut bases: Vec<u32>) -> Self {
        bases.sort_unstable();
        bases.dedup();
        let rank = bases[0].count_ones() as usize;
        let size = 1usize << n;
        let mut independent = vec![false; size];
        for &b in &bases {
            independent[b as usize] = true;
        }
        for m in (0..size).rev() {
            if independent[m] {
                let mut rest = m as u32;
                while rest != 0 {
                    let e = rest & rest.wrapping_neg();
                    rest &= rest - 1;
                    independent[(m as u32 & !e) as usize] = true;
                }
            }
        }
        let mut rank_table = vec![0u8; size];
        for m in 1..size {
            rank_table[m] = if independent[m] {
                (m as u32).count_ones() as u8
            } else {
                let mut best = 0;
                let mut rest = m as u32;
                while rest != 0 {
                    let e = rest & rest.wrapping_neg();
                    rest &= rest - 1;
                    best = best.max(rank_table[(m as u32 & !e) as usize]);
                }
                best
            };
        }
        // S is a circuit iff S is dependent and every S∖e is independent.
        let mut circuits: Vec<u32> = (1..size as u32)
            .filter(|&m| {
                if independent[m as usize] {
                    return false;
                }
                let mut rest = m;
                while rest != 0 {
                    let e = rest & rest.wrapping_neg();
                    rest &= rest - 1;
                    if !independent[(m & !e) as usize] {
                        return false;
                    }
                }
                true
            })
            .collect();
        circuits.sort_unstable_by_key(|&c| (c.count_ones(), c));
        MatroidView { n, rank, bases, rank_table, circuits }
    }

    pub fn size(&self) -> usize {
        self.n
    }

    pub fn full_rank(&self) -> usize {
        self.rank
    }

    pub fn full_mask(&self) -> u32 {
        full_mask(self.n)
    }

    pub fn bases(&self) -> &[u32] {
        &self.bases
    }

    /// Circuits sorted by (size, mask).
    pub fn circuits(&self) -> &[u32] {
        &self.circuits
    }

    pub fn rank_of(&self, mask: u32) -> usize {
        debug_assert_eq!(mask & !self.full_mask(), 0);
        self.rank_table[(mask & self.full_mask()) as usize] as usize
    }

    pub fn independent(&self, mask: u32) -> bool {
        self.rank_of(mask) == mask.count_ones() as usize
    }

    pub fn is_basis(&self, mask: u32) -> bool {
        self.bases.binary_search(&mask).is_ok()
    }

    pub fn is_circuit(&self, mask: u32) -> bool {
        self.circuits.binary_search_by_key(&(mask.count_ones(), mask), |&c| (c.count_ones(), c)).is_ok()
    }

    pub fn closure(&self, mask: u32) -> u32 {
        let r = self.rank_of(mask);
        (0..self.n)
            .filter(|&e| self.rank_of(mask | (1 << e)) == r)
            .fold(0, |acc, e| acc | (1 << e))
    }

    pub fn loops(&self) -> u32 {
        (0..self.n)
            .filter(|&e| self.rank_of(1 << e) == 0)
            .fold(0, |acc, e| acc | (1 << e))
    }

    pub fn coloops(&self) -> u32 {
        self.bases.iter().fold(self.full_mask(), |acc, &b| acc & b)
    }

    /// Connected components: the classes of "share a circuit", with loops
    /// and coloops as singletons.  Sorted by smallest element.
    pub fn components(&self) -> Vec<u32> {
        let mut parent: Vec<usize> = (0..self.n).collect();
        fn find(parent: &mut Vec<usize>, mut x: usize) -> usize {
            while parent[x] != x {
                parent[x] = parent[parent[x]];
                x = parent[x];
            }
            x
        }
        for &c in &self.circuits {
            let elems = mask_elements(c);
            for w in elems.windows(2) {
                let (a, b) = (find(&mut parent, w[0]), find(&mut parent, w[1]));
                if a != b {
                    parent[a] = b;
                }
            }
        }
        let mut groups: HashMap<usize, u32> = HashMap::new();
        for e in 0..self.n {
            let root = find(&mut parent, e);
            *groups.entry(root).or_insert(0) |= 1 << e;
        }
        let mut out: Vec<u32> = groups.into_values().collect();
        out.sort_unstable_by_key(|m| m.trailing_zeros());
        out
    }

    pub fn connected(&self) -> bool {
        self.components().len() <= 1
    }

    /// Tutte's connectivity function λ(S) = rk(S) + rk(E∖S) − rk(E).
    pub fn lambda(&self, mask: u32) -> usize {
        self.rank_of(mask) + self.rank_of(self.full_mask() & !mask) - self.rank
    }

    /// Tutte connectivity: the least k admitting a k-separation, or `None`
    /// when no separation of any order exists.
    pub fn tutte_connectivity(&self) -> Option<usize> {
        let full = self.full_mask();
        let mut best: Option<usize> = None;
        for s in 1..full {
            let small = (s.count_ones() as usize).min((full & !s).count_ones() as usize);
            let k = self.lambda(s) + 1;
            if small >= k && best.map_or(true, |b| k < b) {
                best = Some(k);
            }
        }
        best
    }

    pub fn is_3_connected(&self) -> bool {
        self.tutte_connectivity().map_or(true, |k| k >= 3)
    }

    /// Exact 2-separations, one mask per complementary pair (the side
    /// containing the smallest element).
    pub fn two_separations(&self) -> Vec<u32> {
        let full = self.full_mask();
        (1..full)
            .filter(|&s| {
                s & 1 == 1
                    && self.lambda(s) == 1
                    && s.count_ones() >= 2
                    && (full & !s).count_ones() >= 2
            })
            .collect()
    }

    pub fn dual(&self) -> MatroidView {
        let full = self.full_mask();
        let bases = self.bases.iter().map(|&b| full & !b).collect();
        Self::build(self.n, bases)
    }

    /// Deletion M∖S; also returns the new-index → old-index map.
    pub fn delete(&self, mask: u32) -> Result<(MatroidView, Vec<usize>)> {
        self.check_mask(mask)?;
        let keep = self.full_mask() & !mask;
        let old_of_new = mask_elements(keep);
        let r = self.rank_of(keep);
        let mut bases = Vec::new();
        let mut sub = keep;
        loop {
            if sub.count_ones() as usize == r && self.rank_of(sub) == r {
                bases.push(compress_mask(sub, &old_of_new));
            }
            if sub == 0 {
                break;
            }
            sub = (sub - 1) & keep;
        }
        Ok((Self::build(old_of_new.len(), bases), old_of_new))
    }

    /// Contraction M/S; also returns the new-index → old-index map.
    pub fn contract(&self, mask: u32) -> Result<(MatroidView, Vec<usize>)> {
        self.check_mask(mask)?;
        let keep = self.full_mask() & !mask;
        let old_of_new = mask_elements(keep);
        let r_contract = self.rank - self.rank_of(mask);
        let mut bases = Vec::new();
        let mut sub = keep;
        loop {
            if sub.count_ones() as usize == r_contract && self.rank_of(sub | mask) == self.rank {
                bases.push(compress_mask(sub, &old_of_new));
            }
            if sub == 0 {
                break;
            }
            sub = (sub - 1) & keep;
        }
        Ok((Self::build(old_of_new.len(), bases), old_of_new))
    }

    pub fn restriction(&self, mask: u32) -> Result<(MatroidView, Vec<usize>)> {
        self.check_mask(mask)?;
        self.delete(self.full_mask() & !mask)
    }

    /// A handle: every circuit meeting it contains it.
    pub fn is_handle(&self, mask: u32) -> bool {
        mask != 0
            && mask & !self.full_mask() == 0
            && self
                .circuits
                .iter()
                .all(|&c| c & mask == 0 || c & mask == mask)
    }

    /// The maximal handles: classes of equal circuit-membership pattern,
    /// with all coloops forming one class.  Sorted by smallest element.
    pub fn handle_partition(&self) -> Vec<u32> {
        let mut classes: HashMap<Vec<usize>, u32> = HashMap::new();
        for e in 0..self.n {
            let pattern: Vec<usize> = self
                .circuits
                .iter()
                .enumerate()
                .filter(|(_, &c)| c >> e & 1 == 1)
                .map(|(i, _)| i)
                .collect();
            *classes.entry(pattern).or_insert(0) |= 1 << e;
        }
        let mut out: Vec<u32> = classes.into_values().collect();
        out.sort_unstable_by_key(|m| m.trailing_zeros());
        debug_assert!(out.iter().all(|&h| self.is_handle(h)));
        out
    }

    pub fn handle_report(&self) -> Vec<HandleReport> {
        self.handle_partition()
            .into_iter()
            .map(|mask| {
                let (minor, _) = self.delete(mask).expect("partition masks are valid");
                HandleReport {
                    mask,
                    size: mask.count_ones() as usize,
                    lambda: self.lambda(mask),
                    disconnective: !minor.connected(),
                }
            })
            .collect()
    }

    /// Greedy handle decomposition of a connected matroid: the first block
    /// is the (size, mask)-least circuit F₁, and each later block is C∖F
    /// for the first circuit C that meets F, leaves F, and becomes a
    /// circuit of M/F.
    pub fn handle_decomposition(&self) -> Result<Vec<u32>> {
        if !self.connected() {
            return Err(Error::Disconnected);
        }
        if self.circuits.is_empty() {
            return Err(Error::BadParameter("matroid has no circuits".into()));
        }
        let full = self.full_mask();
        let mut blocks = vec![self.circuits[0]];
        let mut f = self.circuits[0];
        while f != full {
            let mut advanced = false;
            for &c in &self.circuits {
                if c & f == 0 || c & !f == 0 {
                    continue;
                }
                let h = c & !f;
                let hsize = h.count_ones() as usize;
                let rf = self.rank_of(f);
                // h must be a circuit of M/F: dependent there, every proper
                // subset independent.
                if self.rank_of(f | c) >= rf + hsize {
                    continue;
                }
                let mut all_smaller_independent = true;
                let mut rest = h;
                while rest != 0 {
                    let e = rest & rest.wrapping_neg();
                    rest &= rest - 1;
                    if self.rank_of(f | (h & !e)) != rf + hsize - 1 {
                        all_smaller_independent = false;
                        break;
                    }
                }
                if !all_smaller_independent {
                    continue;
                }
                debug_assert!({
                    let (rest, map) = self.restriction(f | c).expect("valid mask");
                    rest.is_handle(compress_mask(h, &map))
                });
                blocks.push(h);
                f |= c;
                advanced = true;
                break;
            }
            if !advanced {
                return Err(Error::Disconnected);
            }
        }
        Ok(blocks)
    }

    fn check_mask(&self, mask: u32) -> Result<()> {
        if mask & !self.full_mask() != 0 {
            return Err(Error::BadParameter("mask outside the ground set".into()));
        }
        Ok(())
    }
}

fn full_mask(n: usize) -> u32 {
    if n == 0 {
        0
    } else {
        (1u32 << n) - 1
    }
}

/// Renumbers a submask of `old_of_new` positions to the compressed indices.
fn compress_mask(mask: u32, old_of_new: &[usize]) -> u32 {
    old_of_new
        .iter()
        .enumerate()
        .filter(|(_, &old)| mask >> old & 1 == 1)
        .fold(0, |acc, (new, _)| acc | (1 << new))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::FieldSpec;

    fn uniform(r: usize, n: usize) -> MatroidView {
        let bases = (0..n).combinations(r).map(|c| mask_from_elements(&c)).collect();
        MatroidView::from_bases(n, bases).unwrap()
    }

    fn prism() -> MatroidView {
        let m = Matrix::from_i64(
            FieldSpec::Q,
            &[
                &[1, 1, 0, 0, 0, 0],
                &[0, 0, 1, 1, 0, 0],
                &[0, 0, 0, 0, 1, 1],
                &[1, 0, 1, 0, 1, 0],
            ],
        )
        .unwrap();
        MatroidView::from_matrix(&m).unwrap()
    }

    #[test]
    fn uniform_basics() {
        let u24 = uniform(2, 4);
        assert_eq!(u24.full_rank(), 2);
        assert_eq!(u24.circuits(), &[0b0111, 0b1011, 0b1101, 0b1110]);
        assert!(u24.connected());
        assert_eq!(u24.tutte_connectivity(), None);
        assert!(u24.is_3_connected());
        assert_eq!(u24.dual(), uniform(2, 4));
        assert_eq!(u24.handle_partition(), vec![0b0001, 0b0010, 0b0100, 0b1000]);
        assert_eq!(u24.closure(0b0001), 0b0001);
        assert_eq!(u24.closure(0b0011), 0b1111);
        assert_eq!(uniform(2, 6).tutte_connectivity(), Some(3));
        assert_eq!(uniform(3, 6).tutte_connectivity(), None);
        // A single circuit makes the whole ground set one handle.
        assert_eq!(uniform(2, 3).tutte_connectivity(), None);
        assert_eq!(uniform(2, 3).handle_partition(), vec![0b111]);
    }

    #[test]
    fn prism_structure() {
        let m = prism();
        assert_eq!(m.size(), 6);
        assert_eq!(m.full_rank(), 4);
        assert_eq!(m.circuits(), &[0b001111, 0b110011, 0b111100]);
        assert!(m.connected());
        assert_eq!(m.tutte_connectivity(), Some(2));
        assert!(!m.is_3_connected());
        assert_eq!(m.handle_partition(), vec![0b000011, 0b001100, 0b110000]);
        for report in m.handle_report() {
            assert_eq!(report.size, 2);
            assert_eq!(report.lambda, 1);
            assert!(!report.disconnective);
        }
        assert_eq!(m.handle_decomposition().unwrap(), vec![0b001111, 0b110000]);
        // The 2-separations are exactly the circuit/cocircuit splits.
        let seps = m.two_separations();
        assert!(seps.contains(&0b001111));
        assert!(seps.iter().all(|&s| m.lambda(s) == 1));
    }

    #[test]
    fn six_point_rank_four_matroid() {
        let m = Matrix::from_i64(
            FieldSpec::Fp(3),
            &[
                &[1, 0, 0, 0, 1, 1],
                &[0, 1, 0, 0, 1, 1],
                &[0, 0, 1, 0, 1, 2],
                &[0, 0, 0, 1, 1, 2],
            ],
        )
        .unwrap();
        let m = MatroidView::from_matrix(&m).unwrap();
        assert_eq!(m.full_rank(), 4);
        let expected_bases: Vec<u32> = [
            [0, 1, 2, 3], [0, 1, 2, 4], [0, 1, 3, 4], [0, 2, 3, 4], [1, 2, 3, 4],
            [0, 1, 2, 5], [0, 1, 3, 5], [0, 2, 3, 5], [1, 2, 3, 5],
            [0, 2, 4, 5], [0, 3, 4, 5], [1, 2, 4, 5], [1, 3, 4, 5],
        ]
        .iter()
        .map(|b| mask_from_elements(b))
        .collect();
        let mut expected = expected_bases.clone();
        expected.sort_unstable();
        assert_eq!(m.bases(), &expected[..]);
        assert_eq!(m.circuits(), &[0b110011, 0b111100, 0b011111, 0b101111]);
        assert_eq!(m.handle_partition(), vec![0b000011, 0b001100, 0b010000, 0b100000]);
        assert!(m.handle_report().iter().all(|r| !r.disconnective));
        let decomp = m.handle_decomposition().unwrap();
        assert_eq!(decomp, vec![0b110011, 0b001100]);
    }

    #[test]
    fn loops_coloops_components() {
        let m = Matrix::from_i64(FieldSpec::Q, &[&[1, 0, 0], &[0, 1, 0]]).unwrap();
        let m = MatroidView::from_matrix(&m).unwrap();
        assert_eq!(m.loops(), 0b100);
        assert_eq!(m.coloops(), 0b011);
        assert_eq!(m.components(), vec![0b001, 0b010, 0b100]);
        assert!(!m.connected());
        assert!(m.handle_decomposition().is_err());
        // Coloops share the empty circuit pattern, so they form one class.
        assert_eq!(m.handle_partition(), vec![0b011, 0b100]);
    }

    #[test]
    fn minors_and_duality() {
        let m = prism();
        // Deletion in M matches contraction in the dual.
        let (d, map_d) = m.delete(0b000011).unwrap();
        let (c, map_c) = m.dual().contract(0b000011).unwrap();
        assert_eq!(map_d, map_c);
        assert_eq!(d.dual(), c);
        assert_eq!(d.full_rank(), m.rank_of(0b111100));
        let (q, _) = m.contract(0b000011).unwrap();
        assert_eq!(q.full_rank(), m.full_rank() - m.rank_of(0b000011));
        // Double dual is the identity.
        assert_eq!(m.dual().dual(), m);
    }

    #[test]
    fn banana_handles_are_singletons() {
        let u13 = uniform(1, 3);
        assert_eq!(u13.circuits().len(), 3);
        assert_eq!(u13.handle_partition(), vec![0b001, 0b010, 0b100]);
        assert!(u13.handle_report().iter().all(|r| !r.disconnective));
    }

    #[test]
    fn exchange_axiom_is_checked() {
        assert!(matches!(
            MatroidView::from_bases(4, vec![0b0011, 0b1100]),
            Err(Error::ExchangeFailure)
        ));
        assert!(matches!(MatroidView::from_bases(3, vec![]), Err(Error::EmptyBases)));
        assert!(matches!(
            MatroidView::from_bases(3, vec![0b011, 0b001]),
            Err(Error::BadParameter(_))
        ));
        assert!(matches!(MatroidView::from_bases(20, vec![1]), Err(Error::TooLarge(20, 16))));
    }

    #[test]
    fn decomposition_covers_and_starts_with_circuit() {
        for m in [prism(), uniform(2, 3), uniform(3, 5)] {
            let blocks = m.handle_decomposition().unwrap();
            assert!(m.is_circuit(blocks[0]));
            let mut union = 0u32;
            for (i, &b) in blocks.iter().enumerate() {
                assert_eq!(union & b, 0, "blocks must be disjoint");
                if i > 0 {
                    // Later blocks are handles of the partial restriction.
                    let (rest, map) = m.restriction(union | b).unwrap();
                    assert!(rest.is_handle(compress_mask(b, &map)));
                }
                union |= b;
            }
            assert_eq!(union, m.full_mask());
        }
    }
}
