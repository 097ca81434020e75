//! Benchmark fixtures.

use std::sync::Arc;

use xmodlab::linalg::SparseMatrix;
use xmodlab::modules::{DensityModule, PbwDual};
use xmodlab::scalar::int;
use xmodlab::{lie, Result, Scalar, WittAlgebra};

/// An `n x n` matrix with entries `1 / (i + j + 1)` on a banded pattern,
/// padded with rank-deficient rows so that elimination does real work.
pub fn banded_hilbert(n: usize, band: usize) -> SparseMatrix {
    let rows: Vec<Vec<Scalar>> = (0..n)
        .map(|i| {
            (0..n)
                .map(|j| {
                    if i.abs_diff(j) <= band {
                        Scalar::new(1.into(), ((i + j + 1) as i64).into())
                    } else {
                        int(0)
                    }
                })
                .collect()
        })
        .chain((0..n / 4).map(|k| {
            (0..n).map(|j| if j % 4 == k % 4 { int(1) } else { int(0) }).collect()
        }))
        .collect();
    SparseMatrix::from_dense(&rows)
}

/// `W1` on the window `[-1, hi]` together with `F_lambda` on `[0, 4 hi]`.
pub fn witt_density(hi: i64, lambda: i64) -> Result<(Arc<WittAlgebra>, DensityModule)> {
    let witt = Arc::new(WittAlgebra::new(-1, hi)?);
    let module = DensityModule::over_witt(witt.clone(), int(lambda), 4 * hi)?;
    Ok((witt, module))
}

/// The truncated PBW dual of `sl3`.
pub fn sl3_pbw(length: usize) -> Result<Arc<PbwDual>> {
    Ok(Arc::new(PbwDual::new(Arc::new(lie::sl3()), length, true)?))
}
