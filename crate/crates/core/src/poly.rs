//! Dense univariate polynomials with rational coefficients, used for vector
//! fields `f(x) d/dx` and density coefficients `a(x)`.

use num_traits::{One, Zero};

use crate::scalar::{int, ModElem, Scalar};

#[derive(Clone, Debug, PartialEq, Eq, Default)]
pub struct Poly {
    coeffs: Vec<Scalar>,
}

impl Poly {
    pub fn zero() -> Self {
        Poly { coeffs: Vec::new() }
    }

    pub fn monomial(c: Scalar, deg: usize) -> Self {
        let mut coeffs = vec![Scalar::zero(); deg + 1];
        coeffs[deg] = c;
        Poly::from_coeffs(coeffs)
    }

    pub fn x_pow(deg: usize) -> Self {
        Self::monomial(Scalar::one(), deg)
    }

    pub fn constant(c: Scalar) -> Self {
        Self::monomial(c, 0)
    }

    pub fn from_coeffs(mut coeffs: Vec<Scalar>) -> Self {
        while coeffs.last().is_some_and(|c| c.is_zero()) {
            coeffs.pop();
        }
        Poly { coeffs }
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn coeff(&self, k: usize) -> Scalar {
        self.coeffs.get(k).cloned().unwrap_or_else(Scalar::zero)
    }

    /// Value at `x = 0`, i.e. the constant coefficient.
    pub fn at_zero(&self) -> Scalar {
        self.coeff(0)
    }

    pub fn add(&self, other: &Poly) -> Poly {
        let n = self.coeffs.len().max(other.coeffs.len());
        Poly::from_coeffs((0..n).map(|k| self.coeff(k) + other.coeff(k)).collect())
    }

    pub fn sub(&self, other: &Poly) -> Poly {
        let n = self.coeffs.len().max(other.coeffs.len());
        Poly::from_coeffs((0..n).map(|k| self.coeff(k) - other.coeff(k)).collect())
    }

    pub fn scale(&self, c: &Scalar) -> Poly {
        Poly::from_coeffs(self.coeffs.iter().map(|a| a * c).collect())
    }

    pub fn mul(&self, other: &Poly) -> Poly {
        if self.is_zero() || other.is_zero() {
            return Poly::zero();
        }
        let mut out = vec![Scalar::zero(); self.coeffs.len() + other.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in other.coeffs.iter().enumerate() {
                out[i + j] += a * b;
            }
        }
        Poly::from_coeffs(out)
    }

    pub fn derivative(&self) -> Poly {
        Poly::from_coeffs(
            self.coeffs
                .iter()
                .enumerate()
                .skip(1)
                .map(|(k, c)| c * int(k as i64))
                .collect(),
        )
    }

    /// Term-by-term integration with zero integration constant.
    pub fn integral(&self) -> Poly {
        let mut out = vec![Scalar::zero()];
        out.extend(
            self.coeffs
                .iter()
                .enumerate()
                .map(|(k, c)| c / int(k as i64 + 1)),
        );
        Poly::from_coeffs(out)
    }

    /// Coefficients as a module element indexed by the power of `x`.
    pub fn to_elem(&self) -> ModElem {
        self.coeffs
            .iter()
            .enumerate()
            .map(|(k, c)| (k as i64, c.clone()))
            .collect()
    }

    pub fn from_elem(v: &ModElem) -> Poly {
        let Some(top) = v.keys().next_back() else {
            return Poly::zero();
        };
        assert!(
            v.keys().next().is_some_and(|k| *k >= 0),
            "negative power in polynomial"
        );
        Poly::from_coeffs((0..=*top).map(|k| v.get(&k)).collect())
    }

    pub fn render(&self) -> String {
        self.to_elem().render(|k| match k {
            0 => "1".to_string(),
            1 => "x".to_string(),
            _ => format!("x^{k}"),
        })
    }
}

/// 2×2 determinant of polynomials `| a b ; c d |`.
pub fn det2(a: &Poly, b: &Poly, c: &Poly, d: &Poly) -> Poly {
    a.mul(d).sub(&b.mul(c))
}

/// 3×3 determinant by cofactor expansion along the first row.
pub fn det3(m: [[&Poly; 3]; 3]) -> Poly {
    let minor = |r: usize, c: usize| {
        let rows: Vec<usize> = (0..3).filter(|&i| i != r).collect();
        let cols: Vec<usize> = (0..3).filter(|&j| j != c).collect();
        det2(
            m[rows[0]][cols[0]],
            m[rows[0]][cols[1]],
            m[rows[1]][cols[0]],
            m[rows[1]][cols[1]],
        )
    };
    m[0][0]
        .mul(&minor(0, 0))
        .sub(&m[0][1].mul(&minor(0, 1)))
        .add(&m[0][2].mul(&minor(0, 2)))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::frac;

    #[test]
    fn calculus() {
        let p = Poly::from_coeffs(vec![int(1), int(2), int(3)]);
        assert_eq!(p.derivative(), Poly::from_coeffs(vec![int(2), int(6)]));
        assert_eq!(p.integral().derivative(), p);
        assert_eq!(p.integral().at_zero(), int(0));
        assert_eq!(Poly::x_pow(2).integral(), Poly::monomial(frac(1, 3), 3));
    }

    #[test]
    fn determinant_of_sl2_fields() {
        // e = x^2, f = -1, h = 2x; det of (e, f, h) and derivatives at 0 is -4
        let e = Poly::x_pow(2);
        let f = Poly::constant(int(-1));
        let h = Poly::monomial(int(2), 1);
        let (e1, f1, h1) = (e.derivative(), f.derivative(), h.derivative());
        let (e2, f2, h2) = (e1.derivative(), f1.derivative(), h1.derivative());
        let d = det3([[&e, &f, &h], [&e1, &f1, &h1], [&e2, &f2, &h2]]);
        assert_eq!(d.at_zero(), int(-4));
    }
}
