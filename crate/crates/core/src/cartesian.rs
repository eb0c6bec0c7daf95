//! Differential operators in the generalized cosines `x, y` whose
//! eigenfunctions are the Chebyshev polynomials.
//!
//! Operators are normalized so that `L pi_n = E(n) pi_n` with `E` the symbol
//! of the angle operator. For `N = 2` the raw angle operator has eigenvalue
//! `-E`, so the chain-rule result is negated.

use std::collections::BTreeMap;
use std::fmt::Write as _;

use num_bigint::BigInt;
use num_traits::{One, Zero};
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::angle_op::{angle_operator, AngleOperator, Spectrum};
use crate::cheb::{cheb_expansion, cheb_polynomial, cosine_trig, lift_invariant};
use crate::coeff_rep::SymbolVector;
use crate::error::{Error, Result};
use crate::poly::{parse_terms, rat, BivarPoly, Exponent, JsonTerm, Rational, Style};
use crate::trig::{GaussRat, TrigPoly};
use crate::weyl::{AlgebraId, Weight};

pub const DEGREE_CAP: usize = 8;

/// `sum_alpha P_alpha d^alpha`, keyed by `alpha = (alpha_x, alpha_y)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CartesianOperator {
    pub algebra: AlgebraId,
    pub spectrum: Spectrum,
    pub coeffs: BTreeMap<Exponent, BivarPoly>,
}

fn falling(n: u32, k: u32) -> i64 {
    (0..k).map(|i| i64::from(n - i)).product()
}

fn binom(n: u32, k: u32) -> i64 {
    falling(n, k) / falling(k, k)
}

/// Multi-indices sorted by total order descending, then `alpha_x` descending.
fn display_order(keys: impl Iterator<Item = Exponent>) -> Vec<Exponent> {
    let mut v: Vec<_> = keys.collect();
    v.sort_by_key(|a| std::cmp::Reverse((a.0 + a.1, a.0)));
    v
}

impl CartesianOperator {
    pub fn order(&self) -> usize {
        self.spectrum.order()
    }

    pub fn coeff(&self, alpha: Exponent) -> BivarPoly {
        self.coeffs.get(&alpha).cloned().unwrap_or_default()
    }

    pub fn apply(&self, p: &BivarPoly) -> BivarPoly {
        let mut out = BivarPoly::zero();
        for (&(ax, ay), c) in &self.coeffs {
            let d = p.partial(ax, ay);
            if !d.is_zero() {
                out = &out + &(c * &d);
            }
        }
        out
    }

    /// Largest total degree among the coefficient polynomials.
    pub fn coefficient_degree(&self) -> usize {
        self.coeffs
            .values()
            .filter_map(BivarPoly::degree)
            .max()
            .unwrap_or(0) as usize
    }

    /// `L pi_n - E(n) pi_n`.
    pub fn residual(&self, n: &Weight) -> Result<BivarPoly> {
        let pi = cheb_polynomial(self.algebra, n)?;
        let e = self.spectrum.eigenvalue_at(n);
        Ok(&self.apply(&pi) - &pi.scale(&e))
    }

    /// Whether `d/dx` and `d/dy` carry `E(1,0) x` and `E(0,1) y`.
    pub fn first_order_law_holds(&self) -> bool {
        let x = self.coeff((1, 0)) == BivarPoly::x().scale(&self.spectrum.eigenvalue(1, 0));
        let y = self.algebra.rank() == 1
            || self.coeff((0, 1)) == BivarPoly::y().scale(&self.spectrum.eigenvalue(0, 1));
        x && y
    }

    /// `self` applied after `other`.
    pub fn compose(&self, other: &CartesianOperator) -> CartesianOperator {
        let mut coeffs: BTreeMap<Exponent, BivarPoly> = BTreeMap::new();
        for (&(ax, ay), p) in &self.coeffs {
            for (&(bx, by), q) in &other.coeffs {
                for gx in 0..=ax {
                    for gy in 0..=ay {
                        let dq = q.partial(gx, gy);
                        if dq.is_zero() {
                            continue;
                        }
                        let c = rat(binom(ax, gx) * binom(ay, gy));
                        let key = (ax - gx + bx, ay - gy + by);
                        let term = (p * &dq).scale(&c);
                        let slot = coeffs.entry(key).or_default();
                        *slot = &*slot + &term;
                    }
                }
            }
        }
        coeffs.retain(|_, p| !p.is_zero());
        let symbol = self
            .spectrum
            .symbol
            .product(&other.spectrum.symbol, self.algebra.rank());
        CartesianOperator {
            algebra: self.algebra,
            spectrum: Spectrum { symbol },
            coeffs,
        }
    }

    fn derivative_name(&self, (ax, ay): Exponent, latex: bool) -> String {
        let order = ax + ay;
        let part = |v: &str, e: u32| match (e, latex) {
            (0, _) => String::new(),
            (1, true) => format!("\\partial_{{{v}}}"),
            (_, true) => format!("\\partial_{{{v}}}^{{{e}}}"),
            (1, false) => format!("d{v}"),
            (_, false) => format!("d{v}^{e}"),
        };
        if latex {
            format!("{}{}", part("x", ax), part("y", ay))
        } else if order == 1 {
            format!("d/{}{}", part("x", ax), part("y", ay))
        } else {
            format!("d^{order}/{}{}", part("x", ax), part("y", ay))
        }
    }

    /// Plain-text form, e.g. `(x^2 - 3*y) d^2/dx^2 + ... + (y) d/dy`.
    pub fn render_text(&self) -> String {
        let mut out = String::new();
        for alpha in display_order(self.coeffs.keys().copied()) {
            if !out.is_empty() {
                out.push_str(" + ");
            }
            let _ = write!(out, "({}) {}", self.coeffs[&alpha], self.derivative_name(alpha, false));
        }
        if out.is_empty() {
            out.push('0');
        }
        out
    }

    pub fn to_latex(&self) -> String {
        let mut out = String::new();
        for alpha in display_order(self.coeffs.keys().copied()) {
            if !out.is_empty() {
                out.push_str(" + ");
            }
            let _ = write!(
                out,
                "\\left({}\\right) {}",
                self.coeffs[&alpha].to_latex(),
                self.derivative_name(alpha, true)
            );
        }
        if out.is_empty() {
            out.push('0');
        }
        out
    }

    pub fn to_json(&self) -> OperatorJson {
        let symbol = self.spectrum.symbol.to_integers().map(|v| {
            v.iter()
                .map(|c| c.to_string().parse().expect("integer is a JSON number"))
                .collect()
        });
        OperatorJson {
            algebra: self.algebra.to_string(),
            order: self.order(),
            symbol,
            spectrum: self.spectrum.render(),
            cartesian: display_order(self.coeffs.keys().copied())
                .into_iter()
                .map(|alpha| AlphaTerm {
                    alpha: [alpha.0, alpha.1],
                    poly: self.coeffs[&alpha].to_json_terms(),
                })
                .collect(),
        }
    }

    pub fn from_json(j: &OperatorJson) -> Result<Self> {
        let algebra: AlgebraId = j.algebra.parse()?;
        let terms = parse_terms(&j.spectrum, ['m', 'n'])?;
        let poly = BivarPoly::from_terms(terms);
        let symbol = SymbolVector::from_poly(j.order, algebra.rank(), &poly);
        if symbol.to_poly() != poly {
            return Err(Error::Parse(format!(
                "spectrum `{}` is not homogeneous of order {}",
                j.spectrum, j.order
            )));
        }
        let mut coeffs = BTreeMap::new();
        for t in &j.cartesian {
            let p = BivarPoly::from_json_terms(&t.poly)?;
            if !p.is_zero() {
                coeffs.insert((t.alpha[0], t.alpha[1]), p);
            }
        }
        Ok(CartesianOperator {
            algebra,
            spectrum: Spectrum { symbol },
            coeffs,
        })
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct AlphaTerm {
    pub alpha: [u32; 2],
    pub poly: Vec<JsonTerm>,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct OperatorJson {
    pub algebra: String,
    pub order: usize,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub symbol: Option<Vec<serde_json::Number>>,
    pub spectrum: String,
    pub cartesian: Vec<AlphaTerm>,
}

fn unit(rank: usize, i: usize) -> Exponent {
    match (rank, i) {
        (_, 0) => (1, 0),
        _ => (0, 1),
    }
}

/// Second-order operator from the chain rule applied to the angle operator.
pub fn derive_cartesian_chainrule(op: &AngleOperator) -> Result<CartesianOperator> {
    if op.order() != 2 {
        return Err(Error::ChainRuleOrder(op.order()));
    }
    let algebra = op.algebra;
    let r = algebra.rank();
    let a = &op.symbol().coeffs;
    let half = Rational::new(1.into(), 2.into());
    let metric: Vec<Vec<Rational>> = if r == 1 {
        vec![vec![a[0].clone()]]
    } else {
        let off = &a[1] * &half;
        vec![vec![a[0].clone(), off.clone()], vec![off, a[2].clone()]]
    };
    let xs: Vec<TrigPoly> = (1..=r).map(|i| cosine_trig(algebra, i)).collect::<Result<_>>()?;
    let grads: Vec<Vec<TrigPoly>> = xs
        .iter()
        .map(|x| (0..r).map(|u| x.derivative(u)).collect())
        .collect();
    let contract = |f: &dyn Fn(usize, usize) -> TrigPoly| {
        let mut s = TrigPoly::zero();
        for (u, row) in metric.iter().enumerate() {
            for (v, g) in row.iter().enumerate() {
                if !g.is_zero() {
                    s = &s + &f(u, v).scale(&GaussRat::real(g.clone()));
                }
            }
        }
        s
    };
    let minus_one = rat(-1);
    let mut coeffs = BTreeMap::new();
    for i in 0..r {
        for j in i..r {
            let s = contract(&|u, v| &grads[i][u] * &grads[j][v]);
            let mut p = lift_invariant(algebra, &s)?.scale(&minus_one);
            let (ei, ej) = (unit(r, i), unit(r, j));
            if i != j {
                p = p.scale(&rat(2));
            }
            coeffs.insert((ei.0 + ej.0, ei.1 + ej.1), p);
        }
        let lx = contract(&|u, v| grads[i][u].derivative(v));
        let p = lift_invariant(algebra, &lx)?.scale(&minus_one);
        coeffs.insert(unit(r, i), p);
    }
    coeffs.retain(|_, p| !p.is_zero());
    Ok(CartesianOperator {
        algebra,
        spectrum: op.spectrum.clone(),
        coeffs,
    })
}

fn monomial_indices(rank: usize, order: usize) -> Vec<Exponent> {
    let order = order as u32;
    let mut v: Vec<Exponent> = (1..=order)
        .flat_map(|d| (0..=d).rev().map(move |a| (a, d - a)))
        .filter(|&(_, b)| rank == 2 || b == 0)
        .collect();
    v.sort_by_key(|&(a, b)| (a + b, std::cmp::Reverse(a)));
    v
}

/// Indices used to fit, and the disjoint set used to confirm, an operator of
/// order `order`.
pub fn training_indices(rank: usize, order: usize) -> Vec<Weight> {
    let bound = (2 * order + 2) as i64;
    grid(rank, bound, bound)
        .into_iter()
        .filter(|w| w.level() <= BigInt::from(bound))
        .collect()
}

pub fn holdout_indices(rank: usize, order: usize) -> Vec<Weight> {
    let train = training_indices(rank, order);
    grid(rank, 6, 6)
        .into_iter()
        .filter(|w| !train.contains(w))
        .collect()
}

fn grid(rank: usize, max_m: i64, max_n: i64) -> Vec<Weight> {
    let mut out = Vec::new();
    for m in 0..=max_m {
        if rank == 1 {
            out.push(Weight::new(&[m]));
            continue;
        }
        for n in 0..=max_n {
            out.push(Weight::new(&[m, n]));
        }
    }
    out
}

/// Finds the unique operator `sum_{1 <= |alpha| <= N} P_alpha d^alpha` that
/// acts as the spectrum on polynomials of degree at most `N`, then checks it
/// on the training and holdout indices.
///
/// `degree_bound` is raised to the degree actually needed, failing if that
/// exceeds `cap`.
pub fn derive_cartesian_undetermined_capped(
    algebra: AlgebraId,
    spectrum: &Spectrum,
    degree_bound: usize,
    cap: usize,
) -> Result<CartesianOperator> {
    if degree_bound < 1 {
        return Err(Error::InvalidDegreeBound(degree_bound));
    }
    let op = angle_operator(algebra, spectrum.symbol.clone())?;
    let order = op.order();
    let rank = algebra.rank();
    let mut coeffs: BTreeMap<Exponent, BivarPoly> = BTreeMap::new();
    for (a, b) in monomial_indices(rank, order) {
        let mono = BivarPoly::monomial(Rational::one(), a, b);
        let mut image = BivarPoly::zero();
        for (nu, c) in cheb_expansion(algebra, &mono)? {
            let e = op.spectrum.eigenvalue_at(&nu);
            image = &image + &cheb_polynomial(algebra, &nu)?.scale(&(c * e));
        }
        for (&(ax, ay), p) in &coeffs {
            if ax <= a && ay <= b {
                image = &image - &(p * &mono.partial(ax, ay));
            }
        }
        let norm = rat(falling(a, a) * falling(b, b));
        let p = image.scale(&norm.recip());
        if !p.is_zero() {
            coeffs.insert((a, b), p);
        }
    }
    let candidate = CartesianOperator {
        algebra,
        spectrum: op.spectrum.clone(),
        coeffs,
    };
    let needed = candidate.coefficient_degree();
    if needed > degree_bound.max(cap) {
        return Err(Error::DegreeCap { needed, cap });
    }
    for n in training_indices(rank, order)
        .iter()
        .chain(&holdout_indices(rank, order))
    {
        let r = candidate.residual(n)?;
        if !r.is_zero() {
            return Err(Error::Inconsistent {
                index: n.clone(),
                residual: r.to_string(),
            });
        }
    }
    Ok(candidate)
}

pub fn derive_cartesian_undetermined(
    algebra: AlgebraId,
    spectrum: &Spectrum,
    degree_bound: usize,
) -> Result<CartesianOperator> {
    derive_cartesian_undetermined_capped(algebra, spectrum, degree_bound, DEGREE_CAP)
}

/// Chain rule at order two, undetermined coefficients otherwise.
pub fn derive(op: &AngleOperator, cap: usize) -> Result<CartesianOperator> {
    if op.order() == 2 {
        derive_cartesian_chainrule(op)
    } else {
        derive_cartesian_undetermined_capped(op.algebra, &op.spectrum, op.order(), cap)
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct EigenFailure {
    pub index: Vec<i64>,
    pub residual: String,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct EigenReport {
    pub checked: usize,
    pub passed: usize,
    pub failures: Vec<EigenFailure>,
}

impl EigenReport {
    pub fn all_passed(&self) -> bool {
        self.failures.is_empty()
    }
}

/// Exact check of `L pi_{m,n} = E(m,n) pi_{m,n}` on the grid
/// `0 <= m <= max_m`, `0 <= n <= max_n` (just `m` for rank one).
pub fn verify_eigen(op: &CartesianOperator, max_m: usize, max_n: usize) -> Result<EigenReport> {
    let indices = grid(op.algebra.rank(), max_m as i64, max_n as i64);
    let results: Vec<Option<EigenFailure>> = indices
        .par_iter()
        .map(|n| {
            let r = op.residual(n)?;
            Ok((!r.is_zero()).then(|| EigenFailure {
                index: n.to_i64().expect("small index"),
                residual: r.to_string(),
            }))
        })
        .collect::<Result<_>>()?;
    let failures: Vec<EigenFailure> = results.into_iter().flatten().collect();
    Ok(EigenReport {
        checked: indices.len(),
        passed: indices.len() - failures.len(),
        failures,
    })
}

/// A1 operator rewritten for `x = 2X` and negated, so that `T_n(X)` has
/// eigenvalue `-n^2`. Keys are derivative orders, coefficients are in `X`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ClassicalA1 {
    pub coeffs: BTreeMap<u32, BivarPoly>,
}

impl ClassicalA1 {
    pub fn render(&self) -> String {
        let mut out = String::new();
        for (&k, p) in self.coeffs.iter().rev() {
            if !out.is_empty() {
                out.push_str(" + ");
            }
            let terms: BTreeMap<Exponent, Rational> = p.terms().map(|(e, c)| (*e, c.clone())).collect();
            let poly = crate::poly::render_terms(&terms, ["X", "Y"], Style::Code);
            let d = if k == 1 { "d/dX".to_string() } else { format!("d^{k}/dX^{k}") };
            let _ = write!(out, "({poly}) {d}");
        }
        out
    }
}

pub fn classical_a1(op: &CartesianOperator) -> Result<ClassicalA1> {
    if op.algebra != AlgebraId::A1 {
        return Err(Error::RankMismatch {
            algebra: op.algebra,
            weight: Weight::zero(1),
            got: 1,
            rank: op.algebra.rank(),
        });
    }
    let mut coeffs = BTreeMap::new();
    for (&(k, _), p) in &op.coeffs {
        let mut q = BivarPoly::zero();
        for (&(a, _), c) in p.terms() {
            let scale = Rational::new(BigInt::one() << a, BigInt::one() << k);
            q.add_term((a, 0), -(c * scale));
        }
        coeffs.insert(k, q);
    }
    Ok(ClassicalA1 { coeffs })
}
