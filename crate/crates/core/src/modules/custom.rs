use std::collections::BTreeMap;
use std::sync::Arc;

use super::{in_window, LieModule};
use crate::error::{Error, Result};
use crate::lie::LieAlgebra;
use crate::scalar::{ModElem, Scalar};

/// A module given by an explicit action table on basis `0..dim`.
#[derive(Clone)]
pub struct CustomModule {
    name: String,
    algebra: Arc<dyn LieAlgebra>,
    lo: i64,
    hi: i64,
    labels: Option<Vec<String>>,
    weights: Option<Vec<Scalar>>,
    table: BTreeMap<(usize, i64), ModElem>,
}

impl CustomModule {
    pub fn new(
        name: &str,
        algebra: Arc<dyn LieAlgebra>,
        dim: usize,
        labels: Option<Vec<String>>,
        weights: Option<Vec<Scalar>>,
    ) -> Result<Self> {
        for len in [labels.as_ref().map(Vec::len), weights.as_ref().map(Vec::len)]
            .into_iter()
            .flatten()
        {
            if len != dim {
                return Err(Error::DimensionMismatch { expected: dim, got: len });
            }
        }
        Ok(CustomModule {
            name: name.to_string(),
            algebra,
            lo: 0,
            hi: dim as i64 - 1,
            labels,
            weights,
            table: BTreeMap::new(),
        })
    }

    /// Copies the full action table of another module on its window.
    pub fn snapshot(module: &dyn LieModule) -> Result<Self> {
        let (lo, hi) = module.window();
        let basis = module.basis();
        let mut table = BTreeMap::new();
        let alg = module.algebra();
        for &m in &basis {
            for x in 0..alg.dim() {
                match module.act_basis(x, m) {
                    Ok(v) => {
                        table.insert((x, m), v);
                    }
                    Err(Error::WindowOverflow { .. }) => {}
                    Err(e) => return Err(e),
                }
            }
        }
        Ok(CustomModule {
            name: format!("{} (table)", module.name()),
            algebra: alg,
            lo,
            hi,
            labels: Some(basis.iter().map(|m| module.label(*m)).collect()),
            weights: basis.iter().map(|m| module.weight(*m)).collect(),
            table,
        })
    }

    /// Adds `c · out` to `x · m`.
    pub fn add_entry(&mut self, x: usize, m: i64, out: i64, c: Scalar) -> Result<()> {
        self.check_indices(x, m)?;
        in_window(self, "custom output", out)?;
        self.table.entry((x, m)).or_default().add_term(out, c);
        Ok(())
    }

    /// Replaces `x · m`.
    pub fn set_entry(&mut self, x: usize, m: i64, value: ModElem) -> Result<()> {
        self.check_indices(x, m)?;
        self.table.insert((x, m), value);
        Ok(())
    }

    fn check_indices(&self, x: usize, m: i64) -> Result<()> {
        if x >= self.algebra.dim() {
            return Err(Error::InvalidModule(format!("algebra index {x} out of range")));
        }
        in_window(self, "custom basis index", m)
    }
}

impl LieModule for CustomModule {
    fn name(&self) -> String {
        self.name.clone()
    }

    fn algebra(&self) -> Arc<dyn LieAlgebra> {
        self.algebra.clone()
    }

    fn window(&self) -> (i64, i64) {
        (self.lo, self.hi)
    }

    fn label(&self, m: i64) -> String {
        match &self.labels {
            Some(l) => l[(m - self.lo) as usize].clone(),
            None => format!("v{m}"),
        }
    }

    fn act_basis(&self, x: usize, m: i64) -> Result<ModElem> {
        self.check_indices(x, m)?;
        Ok(self.table.get(&(x, m)).cloned().unwrap_or_default())
    }

    fn weight(&self, m: i64) -> Option<Scalar> {
        self.weights.as_ref().map(|w| w[(m - self.lo) as usize].clone())
    }
}
