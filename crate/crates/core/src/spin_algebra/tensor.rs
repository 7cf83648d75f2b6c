//! Irreducible spherical tensor operators `τ^k_q` normalized so that
//! `Tr(τ^k_q† τ^k'_q') = (2j+1) δ_kk' δ_qq'`.

use std::fmt;

use super::cg::clebsch_gordan;
use super::matrix::{c64, CMatrix};
use crate::error::{Error, Result};

/// Spins for which tensor operator sets are built.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Spin {
    Half,
    One,
}

impl Spin {
    pub fn from_f64(j: f64) -> Result<Self> {
        if j == 0.5 {
            Ok(Spin::Half)
        } else if j == 1.0 {
            Ok(Spin::One)
        } else {
            Err(Error::UnsupportedSpin(j))
        }
    }

    pub fn value(self) -> f64 {
        match self {
            Spin::Half => 0.5,
            Spin::One => 1.0,
        }
    }

    /// `2j`, also the largest tensor rank.
    pub fn two_j(self) -> usize {
        match self {
            Spin::Half => 1,
            Spin::One => 2,
        }
    }

    /// Hilbert space dimension `2j + 1`.
    pub fn dim(self) -> usize {
        self.two_j() + 1
    }

    /// Projection quantum number of basis index `i` (basis ordered `m = j, j-1, ..., -j`).
    pub fn m_of(self, i: usize) -> f64 {
        self.value() - i as f64
    }
}

impl fmt::Display for Spin {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Spin::Half => write!(f, "1/2"),
            Spin::One => write!(f, "1"),
        }
    }
}

/// Flat index of `(k, q)` in tables covering ranks `0..=2`.
#[inline]
pub fn kq_index(k: usize, q: i32) -> usize {
    debug_assert!(q.unsigned_abs() as usize <= k);
    k * k + (q + k as i32) as usize
}

/// Every `(k, q)` with `k <= max_rank`, in table order.
pub fn kq_pairs(max_rank: usize) -> impl Iterator<Item = (usize, i32)> {
    (0..=max_rank).flat_map(|k| (-(k as i32)..=k as i32).map(move |q| (k, q)))
}

/// Complete set of tensor operators for one spin.
#[derive(Debug, Clone)]
pub struct TensorOperatorSet {
    spin: Spin,
    ops: Vec<CMatrix>,
}

impl TensorOperatorSet {
    pub fn spin(&self) -> Spin {
        self.spin
    }

    pub fn max_rank(&self) -> usize {
        self.spin.two_j()
    }

    /// `τ^k_q`. Panics when `(k, q)` lies outside the set.
    pub fn get(&self, k: usize, q: i32) -> &CMatrix {
        assert!(
            k <= self.max_rank() && q.unsigned_abs() as usize <= k,
            "({k}, {q}) out of range"
        );
        &self.ops[kq_index(k, q)]
    }

    pub fn iter(&self) -> impl Iterator<Item = ((usize, i32), &CMatrix)> {
        kq_pairs(self.max_rank()).zip(self.ops.iter())
    }
}

/// Builds `τ^k_q` for `j ∈ {1/2, 1}` from Wigner–Eckart matrix elements
/// `<j m'|τ^k_q|j m> = sqrt(2k+1) <j m; k q | j m'>`.
pub fn tensor_ops(j: f64) -> Result<TensorOperatorSet> {
    let spin = Spin::from_f64(j)?;
    let dim = spin.dim();
    let mut ops = Vec::new();
    for (k, q) in kq_pairs(spin.two_j()) {
        let scale = ((2 * k + 1) as f64).sqrt();
        let mut entries = vec![c64(0.0, 0.0); dim * dim];
        for row in 0..dim {
            for col in 0..dim {
                let cg = clebsch_gordan(
                    spin.value(),
                    spin.m_of(col),
                    k as f64,
                    q as f64,
                    spin.value(),
                    spin.m_of(row),
                )?;
                entries[row * dim + col] = c64(scale * cg, 0.0);
            }
        }
        ops.push(CMatrix::from_row_major(dim, &entries)?);
    }
    Ok(TensorOperatorSet { spin, ops })
}
