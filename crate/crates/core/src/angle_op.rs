//! Constant-coefficient operators in the angle variables built from fixed
//! symbol vectors.
//!
//! An operator `L = sum_k a_k d^N / d phi^{N-k} d psi^k` sends
//! `exp(i (m phi + n psi))` to `i^N E(m, n)` times itself, where `E` is the
//! symbol. The symbol, not `i^N E`, is what gets stored and reported.

use num_traits::Zero;
use serde::Serialize;

use crate::coeff_rep::{fixed_space, invariance_witness, is_fixed, SymbolVector};
use crate::error::{Error, Result};
use crate::linalg::QMatrix;
use crate::poly::{Rational, Style};
use crate::trig::TrigPoly;
use crate::weyl::{AlgebraId, Weight};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Spectrum {
    pub symbol: SymbolVector,
}

impl Spectrum {
    pub fn order(&self) -> usize {
        self.symbol.order
    }

    pub fn eigenvalue(&self, m: i64, n: i64) -> Rational {
        self.symbol.eval(&Rational::from_integer(m.into()), &Rational::from_integer(n.into()))
    }

    pub fn eigenvalue_at(&self, w: &Weight) -> Rational {
        let m = Rational::from_integer(w.0[0].clone());
        let n = Rational::from_integer(w.0.get(1).cloned().unwrap_or_default());
        self.symbol.eval(&m, &n)
    }

    pub fn render(&self) -> String {
        self.symbol.render(Style::Compact)
    }

    pub fn is_invariant(&self, algebra: AlgebraId) -> bool {
        invariance_witness(algebra, &self.symbol).is_none()
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AngleOperator {
    pub algebra: AlgebraId,
    pub spectrum: Spectrum,
}

/// Wraps a symbol vector, rejecting vectors that are not Weyl invariant.
pub fn angle_operator(algebra: AlgebraId, symbol: SymbolVector) -> Result<AngleOperator> {
    if !is_fixed(algebra, &symbol)? || symbol.is_zero() {
        return Err(Error::NotFixed {
            algebra,
            symbol: symbol.to_string(),
        });
    }
    Ok(AngleOperator {
        algebra,
        spectrum: Spectrum { symbol },
    })
}

impl AngleOperator {
    pub fn order(&self) -> usize {
        self.spectrum.order()
    }

    pub fn symbol(&self) -> &SymbolVector {
        &self.spectrum.symbol
    }

    /// Termwise differentiation of an exponential sum.
    pub fn apply(&self, t: &TrigPoly) -> TrigPoly {
        let n = self.order();
        t.map_coeffs(|w, c| c.scale(&self.spectrum.eigenvalue_at(w)).mul_i_pow(n))
    }

    /// The operator product; its symbol is the product of symbols.
    pub fn compose(&self, other: &AngleOperator) -> Result<AngleOperator> {
        let symbol = self.symbol().product(other.symbol(), self.algebra.rank());
        angle_operator(self.algebra, symbol)
    }

    pub fn to_latex(&self) -> String {
        let vars = if self.algebra.rank() == 1 {
            ["\\phi", ""]
        } else {
            ["\\phi", "\\psi"]
        };
        let mut out = String::new();
        for (k, c) in self.symbol().coeffs.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            let (a, b) = self.symbol().exponent(k);
            let negative = c < &Rational::from_integer(0.into());
            let mag = if negative { -c.clone() } else { c.clone() };
            if out.is_empty() {
                if negative {
                    out.push('-');
                }
            } else {
                out.push_str(if negative { " - " } else { " + " });
            }
            if !mag.is_integer() {
                out.push_str(&format!("\\frac{{{}}}{{{}}} ", mag.numer(), mag.denom()));
            } else if mag != Rational::from_integer(1.into()) {
                out.push_str(&format!("{} ", mag));
            }
            for (var, e) in vars.iter().zip([a, b]) {
                match e {
                    0 => {}
                    1 => out.push_str(&format!("\\partial_{{{var}}}")),
                    _ => out.push_str(&format!("\\partial_{{{var}}}^{{{e}}}")),
                }
            }
        }
        out
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct DecompositionRow {
    pub order: usize,
    pub fixed_dim: usize,
    pub decomposable_dim: usize,
    pub new_generators: usize,
    pub molien: usize,
}

#[derive(Clone, Debug, Serialize)]
pub struct DecompositionReport {
    pub algebra: AlgebraId,
    pub rows: Vec<DecompositionRow>,
    /// Orders at which new generators appear, with multiplicity.
    pub generator_orders: Vec<usize>,
    /// Whether `generator_orders` equals the invariant degrees up to `N_max`.
    pub matches_invariant_degrees: bool,
}

/// For each order up to `max_order`, splits the fixed space into products of
/// lower-order fixed symbols and genuinely new generators.
pub fn decompose_report(algebra: AlgebraId, max_order: usize) -> Result<DecompositionReport> {
    if max_order < 2 {
        return Err(Error::OrderTooSmall {
            min: 2,
            got: max_order,
        });
    }
    let rank = algebra.rank();
    let mut bases: Vec<Vec<SymbolVector>> = vec![Vec::new()];
    let mut rows = Vec::new();
    let mut generator_orders = Vec::new();
    for n in 1..=max_order {
        let basis = fixed_space(algebra, n)?;
        let mut products = Vec::new();
        for a in 1..=n / 2 {
            for s in &bases[a] {
                for t in &bases[n - a] {
                    products.push(s.product(t, rank).coeffs);
                }
            }
        }
        let decomposable_dim = if products.is_empty() {
            0
        } else {
            QMatrix::from_rows(products).rank()
        };
        debug_assert!(decomposable_dim <= basis.len());
        let new_generators = basis.len() - decomposable_dim;
        generator_orders.extend(std::iter::repeat_n(n, new_generators));
        rows.push(DecompositionRow {
            order: n,
            fixed_dim: basis.len(),
            decomposable_dim,
            new_generators,
            molien: algebra.data().molien_dimension(n),
        });
        bases.push(basis);
    }
    let expected: Vec<usize> = algebra
        .data()
        .invariant_degrees
        .iter()
        .map(|&d| d as usize)
        .filter(|&d| d <= max_order)
        .collect();
    Ok(DecompositionReport {
        algebra,
        matches_invariant_degrees: generator_orders == expected,
        rows,
        generator_orders,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::poly::rat;
    use crate::trig::GaussRat;

    fn sym(c: &[i64]) -> SymbolVector {
        SymbolVector::rank_two(c)
    }

    #[test]
    fn construction_checks_invariance() {
        let a2 = angle_operator(AlgebraId::A2, sym(&[1, 1, 1])).unwrap();
        assert_eq!(a2.spectrum.render(), "m^2+mn+n^2");
        let c2 = angle_operator(AlgebraId::C2, sym(&[1, 2, 2])).unwrap();
        assert_eq!(c2.spectrum.render(), "m^2+2mn+2n^2");
        assert!(matches!(
            angle_operator(AlgebraId::A2, sym(&[1, 0, 1])),
            Err(Error::NotFixed { .. })
        ));
        assert!(matches!(
            angle_operator(AlgebraId::A2, sym(&[1, 1])),
            Err(Error::NotFixed { .. })
        ));
    }

    #[test]
    fn eigenvalues() {
        let a2 = angle_operator(AlgebraId::A2, sym(&[1, 1, 1])).unwrap();
        assert_eq!(a2.spectrum.eigenvalue(1, 0), rat(1));
        assert_eq!(a2.spectrum.eigenvalue(1, 1), rat(3));
        let c2 = angle_operator(AlgebraId::C2, sym(&[0, 0, 1, 2, 1])).unwrap();
        assert_eq!(c2.spectrum.eigenvalue(2, 1), rat(9));
    }

    #[test]
    fn acts_on_orbit_sums_by_i_pow_n_times_symbol() {
        let op = angle_operator(AlgebraId::A2, sym(&[2, 3, -3, -2])).unwrap();
        let n = Weight::new(&[2, 1]);
        let phi = TrigPoly::orbit_sum(AlgebraId::A2, &n);
        let e = op.spectrum.eigenvalue(2, 1);
        assert_eq!(op.apply(&phi), phi.scale(&GaussRat::real(e).mul_i_pow(3)));
    }

    #[test]
    fn composition_multiplies_symbols() {
        let l = angle_operator(AlgebraId::C2, sym(&[1, 2, 2])).unwrap();
        let sq = l.compose(&l).unwrap();
        assert_eq!(sq.symbol(), &sym(&[1, 4, 8, 8, 4]));
    }

    #[test]
    fn latex_form() {
        let a2 = angle_operator(AlgebraId::A2, sym(&[1, 1, 1])).unwrap();
        assert_eq!(
            a2.to_latex(),
            "\\partial_{\\phi}^{2} + \\partial_{\\phi}\\partial_{\\psi} + \\partial_{\\psi}^{2}"
        );
    }

    #[test]
    fn generators_appear_at_invariant_degrees() {
        let a2 = decompose_report(AlgebraId::A2, 3).unwrap();
        assert_eq!(a2.generator_orders, vec![2, 3]);
        let c2 = decompose_report(AlgebraId::C2, 4).unwrap();
        assert_eq!(c2.generator_orders, vec![2, 4]);
        let g2 = decompose_report(AlgebraId::G2, 6).unwrap();
        assert_eq!(g2.generator_orders, vec![2, 6]);
        assert!(g2.matches_invariant_degrees);
        assert_eq!(g2.rows[5].fixed_dim, 2);
    }
}
