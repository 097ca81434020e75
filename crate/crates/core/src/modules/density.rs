use std::sync::Arc;

use num_traits::{Signed, Zero};

use super::{in_window, LieModule};
use crate::error::{overflow, Error, Result};
use crate::lie::{sl2, sl2_fields, LieAlgebra, WittAlgebra};
use crate::poly::Poly;
use crate::scalar::{fmt_scalar, int, ModElem, Scalar};

/// Density module `F_λ` with basis `x^n (dx)^λ`, `0 <= n <= hi`.
///
/// An algebra basis element realized as the vector field `f d/dx` acts by
/// `a (dx)^λ ↦ (f a' + λ a f') (dx)^λ`.
#[derive(Clone)]
pub struct DensityModule {
    lambda: Scalar,
    algebra: Arc<dyn LieAlgebra>,
    fields: Vec<Poly>,
    hi: i64,
    /// `a` when the grading element is the field `a x d/dx`.
    grading_scale: Option<Scalar>,
}

impl DensityModule {
    pub fn new(
        algebra: Arc<dyn LieAlgebra>,
        fields: Vec<Poly>,
        lambda: Scalar,
        hi: i64,
    ) -> Result<Self> {
        if fields.len() != algebra.dim() {
            return Err(Error::DimensionMismatch {
                expected: algebra.dim(),
                got: fields.len(),
            });
        }
        if hi < 0 {
            return Err(Error::InvalidModule(format!("empty density window [0, {hi}]")));
        }
        let grading_scale = algebra.grading().and_then(|g| {
            let mut field = Poly::zero();
            for (i, c) in g.iter() {
                field = field.add(&fields[*i].scale(c));
            }
            (field.degree() == Some(1) && field.at_zero().is_zero()).then(|| field.coeff(1))
        });
        Ok(DensityModule {
            lambda,
            algebra,
            fields,
            hi,
            grading_scale,
        })
    }

    /// `F_λ` over `sl2` realized as `e = x^2`, `h = 2x`, `f = -1`.
    pub fn over_sl2(lambda: Scalar, hi: i64) -> Result<Self> {
        Self::new(Arc::new(sl2()), sl2_fields(), lambda, hi)
    }

    /// `F_λ` over a window of `W1`.
    pub fn over_witt(witt: Arc<WittAlgebra>, lambda: Scalar, hi: i64) -> Result<Self> {
        let fields = witt.fields();
        Self::new(witt, fields, lambda, hi)
    }

    pub fn lambda(&self) -> &Scalar {
        &self.lambda
    }

    pub fn fields(&self) -> &[Poly] {
        &self.fields
    }

    /// Embeds a polynomial as an element, failing if its degree leaves the window.
    pub fn from_poly(&self, p: &Poly) -> Result<ModElem> {
        if let Some(d) = p.degree() {
            if d as i64 > self.hi {
                return Err(overflow(
                    format!("{} in {}", p.render(), self.name()),
                    d as i64,
                    0,
                    self.hi,
                ));
            }
        }
        Ok(p.to_elem())
    }
}

impl LieModule for DensityModule {
    fn name(&self) -> String {
        format!("F_{}", fmt_scalar(&self.lambda))
    }

    fn algebra(&self) -> Arc<dyn LieAlgebra> {
        self.algebra.clone()
    }

    fn window(&self) -> (i64, i64) {
        (0, self.hi)
    }

    fn label(&self, n: i64) -> String {
        let x = match n {
            0 => "1".to_string(),
            1 => "x".to_string(),
            _ => format!("x^{n}"),
        };
        if self.lambda.is_zero() {
            x
        } else if self.lambda == int(1) {
            format!("{x} dx")
        } else {
            format!("{x} dx^{}", fmt_scalar(&self.lambda))
        }
    }

    fn act_basis(&self, x: usize, n: i64) -> Result<ModElem> {
        in_window(self, "density index", n)?;
        let f = &self.fields[x];
        let a = Poly::x_pow(n as usize);
        let image = f
            .mul(&a.derivative())
            .add(&a.mul(&f.derivative()).scale(&self.lambda));
        self.from_poly(&image)
    }

    fn weight(&self, n: i64) -> Option<Scalar> {
        self.grading_scale
            .as_ref()
            .map(|a| a * (int(n) + &self.lambda))
    }

    fn covers_weight(&self, w: &Scalar) -> bool {
        match &self.grading_scale {
            Some(a) if a.is_positive() => *w <= a * (int(self.hi) + &self.lambda),
            Some(a) => *w >= a * (int(self.hi) + &self.lambda),
            None => true,
        }
    }
}
