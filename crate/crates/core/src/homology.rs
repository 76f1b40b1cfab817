//! Integer chain complexes of Δ-sets and exact integral homology.

use num_bigint::BigInt;
use num_traits::Zero;
use rayon::prelude::*;

use crate::delta::DeltaSet;
use crate::snf::{smith_normal_form, Snf, SparseIntMat};
use crate::{Error, Result};

/// A bounded chain complex of free abelian groups with integer boundary
/// matrices. `boundary(n)` is ∂_n : C_n → C_{n-1}; ∂_0 is the zero map.
#[derive(Debug, Clone)]
pub struct ChainComplex {
    ranks: Vec<usize>,
    boundaries: Vec<SparseIntMat>,
}

impl ChainComplex {
    /// `boundaries[n]` must be a `ranks[n-1] × ranks[n]` matrix for n ≥ 1;
    /// index 0 is ignored apart from its column count. ∂∂ = 0 is verified.
    pub fn new(ranks: Vec<usize>, boundaries: Vec<SparseIntMat>) -> Result<ChainComplex> {
        if boundaries.len() != ranks.len() {
            return Err(Error::Input(
                "one boundary matrix per dimension expected".into(),
            ));
        }
        for n in 1..ranks.len() {
            if boundaries[n].nrows() != ranks[n - 1] || boundaries[n].ncols() != ranks[n] {
                return Err(Error::Input(format!(
                    "∂_{n} has shape {}×{}, expected {}×{}",
                    boundaries[n].nrows(),
                    boundaries[n].ncols(),
                    ranks[n - 1],
                    ranks[n]
                )));
            }
        }
        let cc = ChainComplex { ranks, boundaries };
        cc.check_dd_zero()?;
        Ok(cc)
    }

    fn check_dd_zero(&self) -> Result<()> {
        for n in 2..self.ranks.len() {
            if !self.boundaries[n - 1].mul(&self.boundaries[n]).is_zero() {
                return Err(Error::Internal(format!(
                    "∂_{} ∘ ∂_{} ≠ 0; the Δ-set is corrupted",
                    n - 1,
                    n
                )));
            }
        }
        Ok(())
    }

    pub fn top_dim(&self) -> Option<usize> {
        self.ranks.len().checked_sub(1)
    }

    pub fn rank(&self, n: usize) -> usize {
        self.ranks.get(n).copied().unwrap_or(0)
    }

    pub fn ranks(&self) -> &[usize] {
        &self.ranks
    }

    pub fn boundary(&self, n: usize) -> Option<&SparseIntMat> {
        if n == 0 {
            None
        } else {
            self.boundaries.get(n)
        }
    }
}

/// Builds the simplicial chain complex of a valid Δ-set: the boundary is the
/// alternating sum ∂ = Σ_i (−1)^i d_i on the free abelian groups on cells.
pub fn chain_complex(d: &DeltaSet) -> Result<ChainComplex> {
    d.validate().into_result()?;
    let dims = d.all_dims();
    let ranks: Vec<usize> = dims.iter().map(|c| c.len()).collect();
    let mut boundaries = Vec::with_capacity(ranks.len());
    if ranks.is_empty() {
        return ChainComplex::new(ranks, boundaries);
    }
    boundaries.push(SparseIntMat::zero(0, ranks[0]));
    for n in 1..dims.len() {
        let lower_index: std::collections::BTreeMap<&str, usize> = dims[n - 1]
            .iter()
            .enumerate()
            .map(|(i, id)| (id.as_str(), i))
            .collect();
        let mut m = SparseIntMat::zero(ranks[n - 1], ranks[n]);
        for (j, id) in dims[n].iter().enumerate() {
            for (i, target) in d.faces_of(id).unwrap().iter().enumerate() {
                let row = lower_index[target.as_str()];
                let sign = if i % 2 == 0 { 1 } else { -1 };
                m.add_to(row, j, &BigInt::from(sign));
            }
        }
        boundaries.push(m);
    }
    ChainComplex::new(ranks, boundaries)
}

/// Integral homology groups: `H_n ≅ ℤ^betti[n] ⊕ ⊕_d ℤ/d` with the torsion
/// coefficients in divisor-chain order.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct HomologyResult {
    pub betti: Vec<usize>,
    pub torsion: Vec<Vec<BigInt>>,
}

impl HomologyResult {
    pub fn betti_at(&self, n: usize) -> usize {
        self.betti.get(n).copied().unwrap_or(0)
    }

    pub fn torsion_at(&self, n: usize) -> &[BigInt] {
        self.torsion.get(n).map(|v| v.as_slice()).unwrap_or(&[])
    }

    pub fn is_torsion_free(&self) -> bool {
        self.torsion.iter().all(|t| t.is_empty())
    }

    /// Shorthand for golden assertions: betti numbers and torsion as u64.
    pub fn from_parts(betti: Vec<usize>, torsion: Vec<Vec<u64>>) -> HomologyResult {
        HomologyResult {
            betti,
            torsion: torsion
                .into_iter()
                .map(|t| t.into_iter().map(BigInt::from).collect())
                .collect(),
        }
    }

    pub fn alternating_betti_sum(&self) -> i64 {
        self.betti
            .iter()
            .enumerate()
            .map(|(n, &b)| if n % 2 == 0 { b as i64 } else { -(b as i64) })
            .sum()
    }
}

impl std::fmt::Display for HomologyResult {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        for n in 0..self.betti.len() {
            let mut parts: Vec<String> = Vec::new();
            match self.betti[n] {
                0 => {}
                1 => parts.push("Z".into()),
                b => parts.push(format!("Z^{b}")),
            }
            for d in self.torsion_at(n) {
                parts.push(format!("Z/{d}"));
            }
            let rhs = if parts.is_empty() {
                "0".to_string()
            } else {
                parts.join(" + ")
            };
            writeln!(f, "H_{n} = {rhs}")?;
        }
        Ok(())
    }
}

/// Homology from Smith normal forms of the boundary matrices.
///
/// `betti_n = rank C_n − rank ∂_n − rank ∂_{n+1}` and the torsion of `H_n`
/// is the non-unit part of the invariant factors of ∂_{n+1}. The SNF of each
/// boundary matrix is independent of the others, so they run in parallel;
/// results are deterministic either way.
pub fn homology(cc: &ChainComplex) -> Result<HomologyResult> {
    let Some(top) = cc.top_dim() else {
        return Ok(HomologyResult {
            betti: vec![],
            torsion: vec![],
        });
    };
    let snfs: Vec<Snf> = (0..=top)
        .into_par_iter()
        .map(|n| match cc.boundary(n) {
            Some(m) => smith_normal_form(m),
            None => Snf {
                invariants: vec![],
                rank: 0,
            },
        })
        .collect();
    let rank_of = |n: usize| -> usize {
        if n == 0 || n > top {
            0
        } else {
            snfs[n].rank
        }
    };
    let mut betti = Vec::with_capacity(top + 1);
    let mut torsion = Vec::with_capacity(top + 1);
    for n in 0..=top {
        let b = cc
            .rank(n)
            .checked_sub(rank_of(n) + rank_of(n + 1))
            .ok_or_else(|| Error::Internal(format!("negative Betti number in degree {n}")))?;
        betti.push(b);
        if n + 1 <= top {
            torsion.push(snfs[n + 1].nonunit_invariants());
        } else {
            torsion.push(vec![]);
        }
    }
    let result = HomologyResult { betti, torsion };
    // Euler–Poincaré: alternating Betti sum equals alternating rank sum.
    let chi_ranks: i64 = cc
        .ranks()
        .iter()
        .enumerate()
        .map(|(n, &r)| if n % 2 == 0 { r as i64 } else { -(r as i64) })
        .sum();
    if result.alternating_betti_sum() != chi_ranks {
        return Err(Error::Internal(
            "Euler–Poincaré check failed: Σ(−1)ⁿ bettiₙ ≠ Σ(−1)ⁿ rankₙ".into(),
        ));
    }
    Ok(result)
}

/// Homology of a Δ-set; Sd consumers use this directly.
pub fn delta_homology(d: &DeltaSet) -> Result<HomologyResult> {
    homology(&chain_complex(d)?)
}

/// Rank over ℚ by fraction-free Gaussian elimination. Independent of the
/// Smith normal form path; used as the second route in dual-path checks.
pub fn rational_rank(m: &SparseIntMat) -> usize {
    use num_rational::BigRational;
    let mut rows: Vec<Vec<BigRational>> = (0..m.nrows())
        .map(|i| {
            (0..m.ncols())
                .map(|j| BigRational::from_integer(m.get(i, j)))
                .collect()
        })
        .collect();
    let (nr, nc) = (rows.len(), m.ncols());
    let mut rank = 0;
    let mut row = 0;
    for col in 0..nc {
        if row >= nr {
            break;
        }
        let Some(p) = (row..nr).find(|&i| !rows[i][col].is_zero()) else {
            continue;
        };
        rows.swap(row, p);
        let pivot = rows[row][col].clone();
        for i in 0..nr {
            if i != row && !rows[i][col].is_zero() {
                let factor = &rows[i][col] / &pivot;
                for j in col..nc {
                    let sub = &factor * &rows[row][j];
                    rows[i][j] = &rows[i][j] - sub;
                }
            }
        }
        rank += 1;
        row += 1;
    }
    rank
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::collections::BTreeMap;

    fn circle() -> DeltaSet {
        let mut faces = BTreeMap::new();
        faces.insert("e".to_string(), vec!["v".to_string(), "v".to_string()]);
        DeltaSet::new(vec![vec!["v".into()], vec!["e".into()]], faces)
    }

    #[test]
    fn circle_boundary_is_zero() {
        let cc = chain_complex(&circle()).unwrap();
        assert!(cc.boundary(1).unwrap().is_zero());
        let h = homology(&cc).unwrap();
        assert_eq!(h, HomologyResult::from_parts(vec![1, 1], vec![vec![], vec![]]));
    }

    #[test]
    fn one_simplex_boundary_column() {
        let mut faces = BTreeMap::new();
        faces.insert("e".to_string(), vec!["v1".to_string(), "v0".to_string()]);
        let d = DeltaSet::new(vec![vec!["v0".into(), "v1".into()], vec!["e".into()]], faces);
        let cc = chain_complex(&d).unwrap();
        let b = cc.boundary(1).unwrap();
        // d_0 = v1 (+1 row), d_1 = v0 (−1 row).
        assert_eq!(b.get(0, 0), BigInt::from(-1));
        assert_eq!(b.get(1, 0), BigInt::from(1));
        let h = homology(&cc).unwrap();
        assert_eq!(h.betti, vec![1, 0]);
    }

    #[test]
    fn all_zero_boundaries_give_full_betti() {
        let cc = ChainComplex::new(
            vec![3, 2],
            vec![SparseIntMat::zero(0, 3), SparseIntMat::zero(3, 2)],
        )
        .unwrap();
        let h = homology(&cc).unwrap();
        assert_eq!(h.betti, vec![3, 2]);
    }

    #[test]
    fn rp2_cellular_chain_oracle() {
        // Minimal CW chain complex of the projective plane:
        //   ℤ --2--> ℤ --0--> ℤ
        let d2 = SparseIntMat::from_rows(&[vec![2]]);
        let d1 = SparseIntMat::from_rows(&[vec![0]]);
        let cc = ChainComplex::new(
            vec![1, 1, 1],
            vec![SparseIntMat::zero(0, 1), d1, d2],
        )
        .unwrap();
        let h = homology(&cc).unwrap();
        assert_eq!(
            h,
            HomologyResult::from_parts(vec![1, 0, 0], vec![vec![], vec![2], vec![]])
        );
    }

    #[test]
    fn dd_nonzero_is_internal_error() {
        let d1 = SparseIntMat::from_rows(&[vec![1]]);
        let d2 = SparseIntMat::from_rows(&[vec![1]]);
        let err = ChainComplex::new(vec![1, 1, 1], vec![SparseIntMat::zero(0, 1), d1, d2]);
        assert!(matches!(err, Err(Error::Internal(_))));
    }

    #[test]
    fn rational_rank_matches_snf_rank() {
        let m = SparseIntMat::from_rows(&[vec![2, 4, 6], vec![1, 2, 3], vec![0, 1, 1]]);
        assert_eq!(rational_rank(&m), smith_normal_form(&m).rank);
    }
}
