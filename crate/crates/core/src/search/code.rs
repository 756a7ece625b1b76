use crate::bits::BitVec;
use crate::error::{Error, Result};
use crate::game::SwitchPlan;
use crate::geometry::{IncidenceStructure, MAX_POINTS};

/// The GF(2) span of the line vectors, kept in reduced row echelon form.
///
/// Every basis row remembers which lines sum to it, so any codeword can be
/// turned back into a switch plan.
#[derive(Clone, Debug)]
pub struct SwitchCode {
    m: usize,
    num_lines: usize,
    basis: Vec<BitVec>,
    combos: Vec<BitVec>,
    pivots: Vec<usize>,
    free: Vec<usize>,
    /// Syndrome of each unit vector, when `m - k <= 64`.
    unit_syndromes: Option<Vec<u64>>,
}

impl SwitchCode {
    pub fn new(s: &IncidenceStructure) -> Result<Self> {
        let m = s.num_points();
        if m as u64 > MAX_POINTS {
            return Err(Error::TooManyPoints {
                what: s.id(),
                size: m as u64,
                cap: MAX_POINTS,
            });
        }
        let num_lines = s.num_lines();
        let mut basis: Vec<BitVec> = Vec::new();
        let mut combos: Vec<BitVec> = Vec::new();
        let mut pivots: Vec<usize> = Vec::new();

        for l in 0..num_lines {
            if basis.len() == m {
                break;
            }
            let mut v = s.line_bits(l).clone();
            let mut combo = BitVec::zeros(num_lines);
            combo.set(l, true);
            for ((row, rc), &p) in basis.iter().zip(&combos).zip(&pivots) {
                if v.get(p) {
                    v.xor_assign(row);
                    combo.xor_assign(rc);
                }
            }
            let Some(p) = v.first_one() else { continue };
            // Keep earlier rows reduced at the new pivot.
            for (row, rc) in basis.iter_mut().zip(combos.iter_mut()) {
                if row.get(p) {
                    row.xor_assign(&v);
                    rc.xor_assign(&combo);
                }
            }
            basis.push(v);
            combos.push(combo);
            pivots.push(p);
        }

        let mut order: Vec<usize> = (0..basis.len()).collect();
        order.sort_by_key(|&i| pivots[i]);
        let basis: Vec<BitVec> = order.iter().map(|&i| basis[i].clone()).collect();
        let combos: Vec<BitVec> = order.iter().map(|&i| combos[i].clone()).collect();
        let pivots: Vec<usize> = order.iter().map(|&i| pivots[i]).collect();

        let mut is_pivot = vec![false; m];
        for &p in &pivots {
            is_pivot[p] = true;
        }
        let free: Vec<usize> = (0..m).filter(|&i| !is_pivot[i]).collect();

        let unit_syndromes = (free.len() <= 64).then(|| {
            let mut pos = vec![usize::MAX; m];
            for (j, &f) in free.iter().enumerate() {
                pos[f] = j;
            }
            let mut syn = vec![0u64; m];
            for &f in &free {
                syn[f] = 1u64 << pos[f];
            }
            for (row, &p) in basis.iter().zip(&pivots) {
                syn[p] = row
                    .iter_ones()
                    .filter(|&i| !is_pivot[i])
                    .fold(0u64, |acc, i| acc | 1u64 << pos[i]);
            }
            syn
        });

        Ok(SwitchCode {
            m,
            num_lines,
            basis,
            combos,
            pivots,
            free,
            unit_syndromes,
        })
    }

    /// Ambient length: the number of points.
    pub fn length(&self) -> usize {
        self.m
    }

    pub fn rank(&self) -> usize {
        self.basis.len()
    }

    /// `m - k`; the cosets are indexed by this many bits.
    pub fn redundancy(&self) -> usize {
        self.m - self.basis.len()
    }

    pub fn num_lines(&self) -> usize {
        self.num_lines
    }

    pub fn basis(&self) -> &[BitVec] {
        &self.basis
    }

    pub fn pivot_columns(&self) -> &[usize] {
        &self.pivots
    }

    /// Non-pivot columns; syndrome bit `j` belongs to `free_columns()[j]`.
    pub fn free_columns(&self) -> &[usize] {
        &self.free
    }

    pub fn unit_syndromes(&self) -> Option<&[u64]> {
        self.unit_syndromes.as_deref()
    }

    /// Canonical coset representative: `v` reduced to zero on every pivot.
    pub fn reduce(&self, v: &BitVec) -> BitVec {
        assert_eq!(v.len(), self.m);
        let mut r = v.clone();
        for (row, &p) in self.basis.iter().zip(&self.pivots) {
            if r.get(p) {
                r.xor_assign(row);
            }
        }
        r
    }

    pub fn contains(&self, v: &BitVec) -> bool {
        self.reduce(v).is_zero()
    }

    /// Coset index, packed from the free-column bits of the reduced vector.
    pub fn syndrome(&self, v: &BitVec) -> Option<u64> {
        let gens = self.unit_syndromes.as_ref()?;
        Some(v.iter_ones().fold(0u64, |acc, i| acc ^ gens[i]))
    }

    /// A switch plan producing codeword `w`, or `None` if `w` is not in the code.
    pub fn express(&self, w: &BitVec) -> Option<SwitchPlan> {
        assert_eq!(w.len(), self.m);
        let mut r = w.clone();
        let mut plan = BitVec::zeros(self.num_lines);
        for ((row, combo), &p) in self.basis.iter().zip(&self.combos).zip(&self.pivots) {
            if r.get(p) {
                r.xor_assign(row);
                plan.xor_assign(combo);
            }
        }
        r.is_zero().then(|| SwitchPlan::from_bits(plan))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::game::Configuration;
    use crate::geometry::{affine_space, grid_board, projective_space};
    use crate::gf::make_field;
    use crate::rng::SplitMix64;

    /// Rank by plain elimination on u64 rows, independent of `SwitchCode`.
    fn rank_small(s: &IncidenceStructure) -> usize {
        let mut rows: Vec<u64> = (0..s.num_lines()).map(|l| s.line_bits(l).as_u64()).collect();
        let mut rank = 0;
        for col in 0..s.num_points() {
            let Some(pos) = (rank..rows.len()).find(|&r| rows[r] >> col & 1 == 1) else {
                continue;
            };
            rows.swap(rank, pos);
            for r in 0..rows.len() {
                if r != rank && rows[r] >> col & 1 == 1 {
                    rows[r] ^= rows[rank];
                }
            }
            rank += 1;
        }
        rank
    }

    #[test]
    fn grid_rank_is_two_n_minus_one() {
        for n in 1..=8u32 {
            let g = grid_board(n).unwrap();
            let code = SwitchCode::new(&g).unwrap();
            assert_eq!(code.rank(), 2 * n as usize - 1);
            if g.num_points() <= 64 {
                assert_eq!(rank_small(&g), code.rank());
            }
        }
    }

    #[test]
    fn odd_order_ranks() {
        let ag3 = affine_space(&make_field(3, 1).unwrap(), 2).unwrap();
        assert_eq!(SwitchCode::new(&ag3).unwrap().rank(), 9);
        assert_eq!(rank_small(&ag3), 9);
        let pg3 = projective_space(&make_field(3, 1).unwrap(), 2).unwrap();
        assert_eq!(SwitchCode::new(&pg3).unwrap().rank(), 12);
        assert_eq!(rank_small(&pg3), 12);
    }

    #[test]
    fn basis_is_reduced_and_spans_lines() {
        let s = projective_space(&make_field(2, 2).unwrap(), 2).unwrap();
        let code = SwitchCode::new(&s).unwrap();
        assert_eq!(code.rank(), rank_small(&s));
        for (i, row) in code.basis().iter().enumerate() {
            for (j, &p) in code.pivot_columns().iter().enumerate() {
                assert_eq!(row.get(p), i == j);
            }
        }
        assert!(code.pivot_columns().windows(2).all(|w| w[0] < w[1]));
        for l in 0..s.num_lines() {
            assert!(code.contains(s.line_bits(l)));
            assert_eq!(code.syndrome(s.line_bits(l)), Some(0));
        }
    }

    #[test]
    fn express_reconstructs_codewords() {
        let s = grid_board(5).unwrap();
        let code = SwitchCode::new(&s).unwrap();
        let mut rng = SplitMix64::new(4);
        for _ in 0..50 {
            let plan = SwitchPlan::from_bits(rng.bits(s.num_lines()));
            let w = Configuration::dark(&s).apply_plan(&s, &plan).unwrap();
            let back = code.express(w.bits()).unwrap();
            assert_eq!(Configuration::dark(&s).apply_plan(&s, &back).unwrap(), w);
        }
        assert!(code.express(&BitVec::from_indices(25, [0])).is_none());
    }

    #[test]
    fn syndrome_separates_cosets() {
        let s = grid_board(3).unwrap();
        let code = SwitchCode::new(&s).unwrap();
        for a in 0u64..512 {
            let va = BitVec::from_u64(9, a);
            let reduced = code.reduce(&va);
            let packed = code
                .free_columns()
                .iter()
                .enumerate()
                .fold(0u64, |acc, (j, &f)| acc | (reduced.get(f) as u64) << j);
            assert_eq!(code.syndrome(&va), Some(packed));
        }
    }
}
