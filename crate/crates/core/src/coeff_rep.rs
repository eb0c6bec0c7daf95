//! Weyl group action on coefficient vectors of homogeneous symbols
//! `q(m, n) = sum_k a_k m^{N-k} n^k`, and the joint fixed space.

use std::collections::BTreeMap;
use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};
use serde::Serialize;

use crate::error::{Error, Result};
use crate::linalg::QMatrix;
use crate::poly::{render_terms, BivarPoly, Exponent, Rational, Style};
use crate::weyl::{generator_action, weyl_group, AlgebraId, WeylElement};

/// Coefficients `a_0 .. a_N` of a homogeneous symbol of order `N`. For rank
/// one the symbol is `a_0 m^N` and the vector has a single entry.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct SymbolVector {
    pub order: usize,
    pub coeffs: Vec<Rational>,
}

impl SymbolVector {
    pub fn new(order: usize, coeffs: Vec<Rational>) -> Self {
        SymbolVector { order, coeffs }
    }

    pub fn from_ints(order: usize, coeffs: &[i64]) -> Self {
        Self::new(order, coeffs.iter().map(|&c| Rational::from_integer(c.into())).collect())
    }

    /// Infers the order from the length, assuming a rank-two symbol.
    pub fn rank_two(coeffs: &[i64]) -> Self {
        Self::from_ints(coeffs.len() - 1, coeffs)
    }

    pub fn len(&self) -> usize {
        self.coeffs.len()
    }

    pub fn is_empty(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(Zero::is_zero)
    }

    /// Exponent of `(m, n)` carried by entry `k`.
    pub fn exponent(&self, k: usize) -> Exponent {
        ((self.order - k) as u32, k as u32)
    }

    /// `q(m, n)` as a polynomial, with `x` standing for `m` and `y` for `n`.
    pub fn to_poly(&self) -> BivarPoly {
        BivarPoly::from_terms(
            self.coeffs
                .iter()
                .enumerate()
                .map(|(k, c)| (self.exponent(k), c.clone())),
        )
    }

    pub fn from_poly(order: usize, rank: usize, p: &BivarPoly) -> Self {
        let len = symbol_len(rank, order);
        let coeffs = (0..len)
            .map(|k| p.coeff((order - k) as u32, k as u32))
            .collect();
        SymbolVector { order, coeffs }
    }

    pub fn eval(&self, m: &Rational, n: &Rational) -> Rational {
        self.to_poly().eval(m, n)
    }

    /// Product of symbols, i.e. the symbol of the composed operator.
    pub fn product(&self, other: &SymbolVector, rank: usize) -> SymbolVector {
        let p = &self.to_poly() * &other.to_poly();
        Self::from_poly(self.order + other.order, rank, &p)
    }

    /// Renders the symbol as a polynomial in `m, n`, e.g. `m^2+mn+n^2`.
    pub fn render(&self, style: Style) -> String {
        let terms: BTreeMap<Exponent, Rational> = self
            .coeffs
            .iter()
            .enumerate()
            .filter(|(_, c)| !c.is_zero())
            .map(|(k, c)| (self.exponent(k), c.clone()))
            .collect();
        render_terms(&terms, ["m", "n"], style)
    }

    pub fn to_integers(&self) -> Option<Vec<BigInt>> {
        self.coeffs
            .iter()
            .map(|c| c.is_integer().then(|| c.to_integer()))
            .collect()
    }
}

impl fmt::Display for SymbolVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.coeffs.iter().map(ToString::to_string).collect();
        write!(f, "({})", parts.join(","))
    }
}

impl Serialize for SymbolVector {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.serialize_str(&self.to_string())
    }
}

pub fn symbol_len(rank: usize, order: usize) -> usize {
    if rank == 1 {
        1
    } else {
        order + 1
    }
}

fn binomial(n: usize, k: usize) -> BigInt {
    if k > n {
        return BigInt::zero();
    }
    (0..k).fold(BigInt::one(), |acc, i| acc * (n - i) / (i + 1))
}

fn pow_big(b: i64, e: usize) -> BigInt {
    num_traits::pow(BigInt::from(b), e)
}

/// `M_w` with `M_w a` the coefficient vector of `q_a(w(m, n))`.
///
/// Precomposition reverses products: `M_w M_v = M_{v w}`.
pub fn substitution_matrix(algebra: AlgebraId, w: &WeylElement, order: usize) -> Result<QMatrix> {
    if order < 1 {
        return Err(Error::OrderTooSmall { min: 1, got: order });
    }
    if algebra.rank() == 1 {
        let s = pow_big(w.matrix[0][0], order);
        return Ok(QMatrix::from_rows(vec![vec![Rational::from_integer(s)]]));
    }
    let [[p, q], [r, s]] = [
        [w.matrix[0][0], w.matrix[0][1]],
        [w.matrix[1][0], w.matrix[1][1]],
    ];
    let dim = order + 1;
    let mut out = QMatrix::zeros(dim, dim);
    // (p m + q n)^{N-k} (r m + s n)^k, collecting m^{N-j} n^j
    for k in 0..dim {
        let a = order - k;
        for i in 0..=a {
            let left = binomial(a, i) * pow_big(p, a - i) * pow_big(q, i);
            if left.is_zero() {
                continue;
            }
            for l in 0..=k {
                let right = binomial(k, l) * pow_big(r, k - l) * pow_big(s, l);
                out[(i + l, k)] += Rational::from_integer(&left * right);
            }
        }
    }
    Ok(out)
}

fn generator_matrices(algebra: AlgebraId, order: usize) -> Result<Vec<QMatrix>> {
    (1..=algebra.rank())
        .map(|i| substitution_matrix(algebra, &generator_action(algebra, i)?, order))
        .collect()
}

/// Scales to primitive integers with the first nonzero entry positive.
pub fn canonicalize(v: &SymbolVector) -> Result<SymbolVector> {
    let first = v.coeffs.iter().find(|c| !c.is_zero()).ok_or(Error::ZeroVector)?;
    let lcm = v
        .coeffs
        .iter()
        .fold(BigInt::one(), |acc, c| acc.lcm(c.denom()));
    let ints: Vec<BigInt> = v
        .coeffs
        .iter()
        .map(|c| (c * Rational::from_integer(lcm.clone())).to_integer())
        .collect();
    let gcd = ints.iter().fold(BigInt::zero(), |acc, c| acc.gcd(c));
    let sign = if first.is_negative() { -BigInt::one() } else { BigInt::one() };
    Ok(SymbolVector {
        order: v.order,
        coeffs: ints
            .into_iter()
            .map(|c| Rational::from_integer(c / &gcd * &sign))
            .collect(),
    })
}

/// Basis of the vectors fixed by every generator, hence by all of W.
///
/// The basis is the reduced row echelon form of the kernel, each row scaled
/// to primitive integers.
pub fn fixed_space(algebra: AlgebraId, order: usize) -> Result<Vec<SymbolVector>> {
    let gens = generator_matrices(algebra, order)?;
    let dim = gens[0].rows();
    let id = QMatrix::identity(dim);
    let stacked = gens
        .iter()
        .map(|g| g - &id)
        .reduce(|a, b| a.vstack(&b))
        .expect("at least one generator");
    let null = stacked.nullspace();
    if null.is_empty() {
        return Ok(Vec::new());
    }
    let (echelon, pivots) = QMatrix::from_rows(null).rref();
    let basis = (0..pivots.len())
        .map(|i| canonicalize(&SymbolVector::new(order, echelon.row(i).to_vec())))
        .collect::<Result<Vec<_>>>()?;
    Ok(basis)
}

/// Whether `M_w a = a` for both generators.
pub fn is_fixed(algebra: AlgebraId, v: &SymbolVector) -> Result<bool> {
    let expected = symbol_len(algebra.rank(), v.order);
    if v.len() != expected {
        return Err(Error::SymbolLength {
            algebra,
            order: v.order,
            got: v.len(),
            expected,
        });
    }
    Ok(generator_matrices(algebra, v.order)?
        .iter()
        .all(|g| g.mul_vec(&v.coeffs) == v.coeffs))
}

fn linear_form(row: &[i64]) -> BivarPoly {
    BivarPoly::from_int_terms(&[(row[0], 1, 0), (*row.get(1).unwrap_or(&0), 0, 1)])
}

/// `q(w(m, n))` by direct substitution.
pub fn substitute(v: &SymbolVector, w: &WeylElement) -> BivarPoly {
    let first = linear_form(&w.matrix[0]);
    let second = if w.rank() > 1 {
        linear_form(&w.matrix[1])
    } else {
        BivarPoly::zero()
    };
    let mut out = BivarPoly::zero();
    for (k, c) in v.coeffs.iter().enumerate() {
        let (a, b) = v.exponent(k);
        out = &out + &(&first.pow(a) * &second.pow(b)).scale(c);
    }
    out
}

/// First group element `w` with `q(w(m, n)) != q(m, n)`, if any.
pub fn invariance_witness(algebra: AlgebraId, v: &SymbolVector) -> Option<&'static WeylElement> {
    let q = v.to_poly();
    weyl_group(algebra).iter().find(|w| substitute(v, w) != q)
}

#[derive(Clone, Debug, Serialize)]
pub struct RelationCheck {
    pub name: String,
    pub holds: bool,
}

#[derive(Clone, Debug, Serialize)]
pub struct RepresentationReport {
    pub algebra: AlgebraId,
    pub order: usize,
    pub relations: Vec<RelationCheck>,
    /// Words of the group elements acting trivially.
    pub kernel: Vec<String>,
    pub faithful: bool,
}

impl RepresentationReport {
    pub fn relation(&self, name: &str) -> Option<bool> {
        self.relations.iter().find(|r| r.name == name).map(|r| r.holds)
    }

    fn push(&mut self, name: impl Into<String>, holds: bool) {
        self.relations.push(RelationCheck {
            name: name.into(),
            holds,
        });
    }
}

/// Checks the group relations on the matrices of order `order`.
///
/// For A2 the named elements are `M3 = M1 M2`, `M4 = M2 M1`, `M5 = M1 M2 M1`.
pub fn verify_representation(algebra: AlgebraId, order: usize) -> Result<RepresentationReport> {
    let group = weyl_group(algebra);
    let mats: Vec<QMatrix> = group
        .iter()
        .map(|w| substitution_matrix(algebra, w, order))
        .collect::<Result<_>>()?;
    let gens = generator_matrices(algebra, order)?;
    let id = QMatrix::identity(gens[0].rows());
    let mut report = RepresentationReport {
        algebra,
        order,
        relations: Vec::new(),
        kernel: Vec::new(),
        faithful: true,
    };

    report.push("M(e) = I", mats[0].is_identity() && group[0].is_identity());
    let mut anti = true;
    for (w, mw) in group.iter().zip(&mats) {
        for (v, mv) in group.iter().zip(&mats) {
            let vw = v.compose(w);
            let idx = group.iter().position(|g| *g == vw).expect("group is closed");
            if (mw * mv) != mats[idx] {
                anti = false;
            }
        }
    }
    report.push("M(w) M(v) = M(vw)", anti);
    for (i, g) in gens.iter().enumerate() {
        report.push(format!("M{}^2 = I", i + 1), g.pow(2) == id);
    }

    if algebra.rank() == 2 {
        let (m1, m2) = (&gens[0], &gens[1]);
        let m3 = m1 * m2;
        let m4 = m2 * m1;
        let m121 = &m3 * m1;
        let m212 = &m4 * m2;
        match algebra {
            AlgebraId::A2 => {
                report.push("M5^2 = I", m121.pow(2) == id);
                report.push("M3^3 = I", m3.pow(3) == id);
                report.push("M4^3 = I", m4.pow(3) == id);
                report.push("M3^2 = M4", m3.pow(2) == m4);
                report.push("M1 M2 M1 = M2 M1 M2", m121 == m212);
            }
            AlgebraId::C2 => {
                report.push("M1 M2 = M2 M1", m3 == m4);
                report.push("(M1 M2)^4 = I", m3.pow(4) == id);
            }
            AlgebraId::G2 => {
                report.push("M1 M2 = M2 M1", m3 == m4);
                report.push("M1 M2 M1 = M2 M1 M2", m121 == m212);
                report.push("(M1 M2)^6 = I", m3.pow(6) == id);
            }
            AlgebraId::A1 => unreachable!(),
        }
    }

    let h = algebra.data().coxeter_number;
    if h.is_multiple_of(2) {
        let coxeter = (1..=algebra.rank())
            .map(|i| generator_action(algebra, i))
            .collect::<Result<Vec<_>>>()?
            .into_iter()
            .reduce(|a, b| a.compose(&b))
            .expect("rank >= 1");
        let central = coxeter.pow(h / 2);
        let minus_one = WeylElement {
            matrix: WeylElement::identity(algebra.rank())
                .matrix
                .into_iter()
                .map(|r| r.into_iter().map(|v| -v).collect())
                .collect(),
            word: Vec::new(),
        };
        report.push("c^(h/2) = -I on weights", central == minus_one);
        let sign = if order.is_multiple_of(2) { Rational::one() } else { -Rational::one() };
        let acts = substitution_matrix(algebra, &central, order)? == id.scale(&sign);
        report.push("c^(h/2) acts as (-1)^N", acts);
    }

    for (w, m) in group.iter().zip(&mats) {
        if m.is_identity() {
            report.kernel.push(w.word_string());
        }
    }
    report.faithful = report.kernel.len() == 1;
    Ok(report)
}
