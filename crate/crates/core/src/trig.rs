//! Exact exponential sums `sum_n c_n exp(i (n, phi))` with Gaussian-rational
//! coefficients.

use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Sub};

use num_complex::Complex64;

use crate::error::{Error, Result};
pub use crate::gauss::GaussRat;
use crate::poly::Rational;
use crate::weyl::{orbit, weyl_group, AlgebraId, Weight};

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct TrigPoly {
    terms: BTreeMap<Weight, GaussRat>,
}

impl TrigPoly {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn constant(rank: usize, c: GaussRat) -> Self {
        let mut t = Self::zero();
        t.add_term(Weight::zero(rank), c);
        t
    }

    /// A single exponential `exp(i (n, phi))`.
    pub fn exp(n: Weight) -> Self {
        let mut t = Self::zero();
        t.add_term(n, GaussRat::one());
        t
    }

    /// The orbit function `sum_{w in W} exp(i (w n, phi))`, counted over the
    /// whole group.
    pub fn orbit_sum(algebra: AlgebraId, n: &Weight) -> Self {
        let mut t = Self::zero();
        for w in weyl_group(algebra) {
            t.add_term(w.apply(n), GaussRat::one());
        }
        t
    }

    /// Sum over the distinct elements of the orbit of `n`.
    pub fn orbit_distinct(algebra: AlgebraId, n: &Weight) -> Result<Self> {
        let o = orbit(algebra, n)?;
        Ok(TrigPoly {
            terms: o.elements.into_iter().map(|w| (w, GaussRat::one())).collect(),
        })
    }

    pub fn add_term(&mut self, n: Weight, c: GaussRat) {
        if c.is_zero() {
            return;
        }
        let slot = self.terms.entry(n.clone()).or_default();
        *slot = &*slot + &c;
        if slot.is_zero() {
            self.terms.remove(&n);
        }
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn coeff(&self, n: &Weight) -> GaussRat {
        self.terms.get(n).cloned().unwrap_or_default()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Weight, &GaussRat)> {
        self.terms.iter()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn scale(&self, c: &GaussRat) -> Self {
        let mut out = Self::zero();
        for (n, v) in &self.terms {
            out.add_term(n.clone(), v * c);
        }
        out
    }

    /// Partial derivative in the angle coordinate `u` (0-based):
    /// `exp(i (n, phi))` picks up the factor `i n_u`.
    pub fn derivative(&self, u: usize) -> Self {
        let mut out = Self::zero();
        for (n, v) in &self.terms {
            let factor = Rational::from_integer(n.0[u].clone());
            out.add_term(n.clone(), v.scale(&factor).mul_i_pow(1));
        }
        out
    }

    /// Applies `c(n)` to every term, where `c` depends on the exponent.
    pub fn map_coeffs<F: Fn(&Weight, &GaussRat) -> GaussRat>(&self, f: F) -> Self {
        let mut out = Self::zero();
        for (n, v) in &self.terms {
            out.add_term(n.clone(), f(n, v));
        }
        out
    }

    /// Whether the coefficient map is constant on every Weyl orbit.
    pub fn is_invariant(&self, algebra: AlgebraId) -> bool {
        self.invariance_defect(algebra).is_none()
    }

    /// First exponent whose orbit partner carries a different coefficient.
    pub fn invariance_defect(&self, algebra: AlgebraId) -> Option<(Weight, Weight)> {
        for (n, v) in &self.terms {
            for w in weyl_group(algebra) {
                let image = w.apply(n);
                if self.coeff(&image) != *v {
                    return Some((n.clone(), image));
                }
            }
        }
        None
    }

    pub fn eval(&self, phi: &[f64]) -> Complex64 {
        self.terms
            .iter()
            .map(|(n, c)| {
                let arg: f64 = n.to_f64().iter().zip(phi).map(|(a, b)| a * b).sum();
                c.to_complex() * Complex64::from_polar(1.0, arg)
            })
            .sum()
    }

    pub fn check_invariant(&self, algebra: AlgebraId) -> Result<()> {
        match self.invariance_defect(algebra) {
            None => Ok(()),
            Some((a, b)) => Err(Error::NotInvariant(format!(
                "coefficient at {a} differs from its image {b}"
            ))),
        }
    }
}

impl Add for &TrigPoly {
    type Output = TrigPoly;
    fn add(self, rhs: &TrigPoly) -> TrigPoly {
        let mut out = self.clone();
        for (n, c) in &rhs.terms {
            out.add_term(n.clone(), c.clone());
        }
        out
    }
}

impl Sub for &TrigPoly {
    type Output = TrigPoly;
    fn sub(self, rhs: &TrigPoly) -> TrigPoly {
        let mut out = self.clone();
        for (n, c) in &rhs.terms {
            out.add_term(n.clone(), -c);
        }
        out
    }
}

impl Mul for &TrigPoly {
    type Output = TrigPoly;
    fn mul(self, rhs: &TrigPoly) -> TrigPoly {
        let mut out = TrigPoly::zero();
        for (a, c) in &self.terms {
            for (b, d) in &rhs.terms {
                out.add_term(a + b, c * d);
            }
        }
        out
    }
}

impl fmt::Display for TrigPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        for (k, (n, c)) in self.terms.iter().enumerate() {
            if k > 0 {
                write!(f, " + ")?;
            }
            write!(f, "{c}*e{n}")?;
        }
        Ok(())
    }
}
