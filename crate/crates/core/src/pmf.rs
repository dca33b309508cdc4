//! Dense joint probability mass functions over small products of finite
//! alphabets, with marginalisation by axis selection.

use thiserror::Error;

#[derive(Debug, Error)]
pub enum PmfError {
    #[error("pmf length {got} does not match dimension product {want}")]
    LengthMismatch { got: usize, want: usize },
    #[error("pmf has no dimensions")]
    NoDimensions,
    #[error("joint pmf would hold {cells} cells, above the cap of {cap}")]
    TooLarge { cells: usize, cap: usize },
}

/// Hard cap on joint table sizes; anything larger is a modelling mistake.
pub const JOINT_CELL_CAP: usize = 1 << 24;

/// A dense joint pmf in row-major order: the last dimension varies fastest.
#[derive(Debug, Clone)]
pub struct JointPmf {
    dims: Vec<usize>,
    p: Vec<f64>,
}

impl JointPmf {
    pub fn new(dims: Vec<usize>, p: Vec<f64>) -> Result<Self, PmfError> {
        if dims.is_empty() {
            return Err(PmfError::NoDimensions);
        }
        let want: usize = dims.iter().product();
        if want > JOINT_CELL_CAP {
            return Err(PmfError::TooLarge {
                cells: want,
                cap: JOINT_CELL_CAP,
            });
        }
        if p.len() != want {
            return Err(PmfError::LengthMismatch { got: p.len(), want });
        }
        Ok(JointPmf { dims, p })
    }

    /// Fills the table by enumerating index tuples.
    pub fn from_fn(dims: Vec<usize>, f: impl Fn(&[usize]) -> f64) -> Result<Self, PmfError> {
        if dims.is_empty() {
            return Err(PmfError::NoDimensions);
        }
        let total: usize = dims.iter().product();
        if total > JOINT_CELL_CAP {
            return Err(PmfError::TooLarge {
                cells: total,
                cap: JOINT_CELL_CAP,
            });
        }
        let mut idx = vec![0usize; dims.len()];
        let mut p = Vec::with_capacity(total);
        for _ in 0..total {
            p.push(f(&idx));
            for axis in (0..dims.len()).rev() {
                idx[axis] += 1;
                if idx[axis] < dims[axis] {
                    break;
                }
                idx[axis] = 0;
            }
        }
        Ok(JointPmf { dims, p })
    }

    pub fn dims(&self) -> &[usize] {
        &self.dims
    }

    pub fn len(&self) -> usize {
        self.p.len()
    }

    pub fn is_empty(&self) -> bool {
        self.p.is_empty()
    }

    pub fn flat(&self) -> &[f64] {
        &self.p
    }

    pub fn total(&self) -> f64 {
        self.p.iter().sum()
    }

    pub fn prob(&self, index: &[usize]) -> f64 {
        self.p[self.flat_index(index)]
    }

    fn flat_index(&self, index: &[usize]) -> usize {
        debug_assert_eq!(index.len(), self.dims.len());
        index
            .iter()
            .zip(&self.dims)
            .fold(0, |acc, (&i, &d)| acc * d + i)
    }

    /// Sums out every axis not listed in `keep`; kept axes stay in their
    /// original relative order.
    pub fn marginalize(&self, keep: &[usize]) -> JointPmf {
        let mut keep_sorted: Vec<usize> = keep.to_vec();
        keep_sorted.sort_unstable();
        keep_sorted.dedup();
        assert!(
            keep_sorted.iter().all(|&a| a < self.dims.len()),
            "marginalize axis out of range"
        );
        let out_dims: Vec<usize> = keep_sorted.iter().map(|&a| self.dims[a]).collect();
        let out_len: usize = out_dims.iter().product::<usize>().max(1);
        let mut out = vec![0.0; out_len];
        let mut idx = vec![0usize; self.dims.len()];
        for &mass in &self.p {
            let mut flat = 0usize;
            for (pos, &axis) in keep_sorted.iter().enumerate() {
                flat = flat * out_dims[pos] + idx[axis];
            }
            out[flat] += mass;
            for axis in (0..self.dims.len()).rev() {
                idx[axis] += 1;
                if idx[axis] < self.dims[axis] {
                    break;
                }
                idx[axis] = 0;
            }
        }
        JointPmf {
            dims: if out_dims.is_empty() {
                vec![1]
            } else {
                out_dims
            },
            p: out,
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn from_fn_matches_manual_layout() {
        let pmf = JointPmf::from_fn(vec![2, 3], |i| (i[0] * 3 + i[1]) as f64).unwrap();
        assert_eq!(pmf.flat(), &[0.0, 1.0, 2.0, 3.0, 4.0, 5.0]);
        assert_eq!(pmf.prob(&[1, 2]), 5.0);
    }

    #[test]
    fn marginalisation_sums_dropped_axes() {
        // p(a, b) uniform over 2 x 4.
        let pmf = JointPmf::from_fn(vec![2, 4], |_| 0.125).unwrap();
        let pa = pmf.marginalize(&[0]);
        assert_eq!(pa.dims(), &[2]);
        assert!((pa.prob(&[0]) - 0.5).abs() < 1e-15);
        let pb = pmf.marginalize(&[1]);
        assert_eq!(pb.dims(), &[4]);
        assert!((pb.prob(&[3]) - 0.25).abs() < 1e-15);
    }

    #[test]
    fn marginalise_to_nothing_keeps_total() {
        let pmf = JointPmf::new(vec![2, 2], vec![0.1, 0.2, 0.3, 0.4]).unwrap();
        let all = pmf.marginalize(&[]);
        assert_eq!(all.dims(), &[1]);
        assert!((all.prob(&[0]) - 1.0).abs() < 1e-15);
    }

    #[test]
    fn keep_order_is_axis_order() {
        let pmf = JointPmf::from_fn(vec![2, 2, 2], |i| {
            if i == [1, 0, 1] {
                1.0
            } else {
                0.0
            }
        })
        .unwrap();
        // Keeping axes {2, 0} must produce the same table as {0, 2}.
        let m = pmf.marginalize(&[2, 0]);
        assert_eq!(m.dims(), &[2, 2]);
        assert_eq!(m.prob(&[1, 1]), 1.0);
    }

    #[test]
    fn rejects_mismatched_length() {
        assert!(matches!(
            JointPmf::new(vec![2, 2], vec![0.25; 3]),
            Err(PmfError::LengthMismatch { .. })
        ));
    }
}
