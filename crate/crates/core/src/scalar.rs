//! Exact rational scalars and sparse coordinate vectors.

use std::collections::BTreeMap;
use std::fmt;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

/// Arbitrary-precision rational, always in lowest terms with a positive denominator.
pub type Scalar = BigRational;

pub fn int(n: i64) -> Scalar {
    BigRational::from_integer(BigInt::from(n))
}

pub fn frac(n: i64, d: i64) -> Scalar {
    BigRational::new(BigInt::from(n), BigInt::from(d))
}

pub fn parse_scalar(s: &str) -> Option<Scalar> {
    s.trim().parse::<BigRational>().ok()
}

/// Formats a scalar as `n` or `n/d`.
pub fn fmt_scalar(q: &Scalar) -> String {
    if q.is_integer() {
        q.numer().to_string()
    } else {
        format!("{}/{}", q.numer(), q.denom())
    }
}

/// Sparse vector over an ordered index set. Zero coefficients are never stored.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Vector<K: Ord>(BTreeMap<K, Scalar>);

impl<K: Ord + Clone> Default for Vector<K> {
    fn default() -> Self {
        Self::zero()
    }
}

impl<K: Ord + Clone> Vector<K> {
    pub fn zero() -> Self {
        Vector(BTreeMap::new())
    }

    pub fn basis(k: K) -> Self {
        Self::term(k, Scalar::one())
    }

    pub fn term(k: K, c: Scalar) -> Self {
        let mut v = Self::zero();
        v.add_term(k, c);
        v
    }

    pub fn from_pairs(pairs: impl IntoIterator<Item = (K, Scalar)>) -> Self {
        let mut v = Self::zero();
        for (k, c) in pairs {
            v.add_term(k, c);
        }
        v
    }

    pub fn add_term(&mut self, k: K, c: Scalar) {
        if c.is_zero() {
            return;
        }
        let mut drop = false;
        match self.0.get_mut(&k) {
            Some(slot) => {
                *slot += c;
                drop = slot.is_zero();
            }
            None => {
                self.0.insert(k.clone(), c);
            }
        }
        if drop {
            self.0.remove(&k);
        }
    }

    /// `self += c * other`
    pub fn axpy(&mut self, c: &Scalar, other: &Self) {
        if c.is_zero() {
            return;
        }
        for (k, v) in &other.0 {
            self.add_term(k.clone(), c * v);
        }
    }

    pub fn scaled(&self, c: &Scalar) -> Self {
        if c.is_zero() {
            return Self::zero();
        }
        Vector(self.0.iter().map(|(k, v)| (k.clone(), v * c)).collect())
    }

    pub fn neg(&self) -> Self {
        Vector(self.0.iter().map(|(k, v)| (k.clone(), -v)).collect())
    }

    pub fn sub(&self, other: &Self) -> Self {
        let mut out = self.clone();
        out.axpy(&-Scalar::one(), other);
        out
    }

    pub fn add(&self, other: &Self) -> Self {
        let mut out = self.clone();
        out.axpy(&Scalar::one(), other);
        out
    }

    pub fn get(&self, k: &K) -> Scalar {
        self.0.get(k).cloned().unwrap_or_else(Scalar::zero)
    }

    pub fn is_zero(&self) -> bool {
        self.0.is_empty()
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn iter(&self) -> impl DoubleEndedIterator<Item = (&K, &Scalar)> {
        self.0.iter()
    }

    pub fn keys(&self) -> impl DoubleEndedIterator<Item = &K> {
        self.0.keys()
    }

    /// Linear extension of a map defined on basis indices.
    pub fn map_linear<L: Ord + Clone, E>(
        &self,
        mut f: impl FnMut(&K) -> Result<Vector<L>, E>,
    ) -> Result<Vector<L>, E> {
        let mut out = Vector::zero();
        for (k, c) in &self.0 {
            out.axpy(c, &f(k)?);
        }
        Ok(out)
    }

    /// Writes the vector as `c1*label(k1) + c2*label(k2) ...`.
    pub fn render(&self, label: impl Fn(&K) -> String) -> String {
        if self.0.is_empty() {
            return "0".to_string();
        }
        let mut s = String::new();
        for (i, (k, c)) in self.0.iter().enumerate() {
            let neg = c.is_negative();
            let abs = c.abs();
            if i == 0 {
                if neg {
                    s.push('-');
                }
            } else {
                s.push_str(if neg { " - " } else { " + " });
            }
            if !abs.is_one() {
                s.push_str(&fmt_scalar(&abs));
                s.push('*');
            }
            s.push_str(&label(k));
        }
        s
    }
}

impl<K: Ord + Clone + fmt::Debug> fmt::Debug for Vector<K> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.render(|k| format!("{k:?}")))
    }
}

impl<K: Ord + Clone> FromIterator<(K, Scalar)> for Vector<K> {
    fn from_iter<I: IntoIterator<Item = (K, Scalar)>>(iter: I) -> Self {
        Self::from_pairs(iter)
    }
}

/// Element of a Lie algebra, in coordinates of its (windowed) basis.
pub type Element = Vector<usize>;

/// Element of a module, in coordinates of its basis indices.
pub type ModElem = Vector<i64>;
