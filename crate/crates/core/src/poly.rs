//! Exact bivariate polynomials with rational coefficients.

use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};
use std::str::FromStr;

use num_bigint::BigInt;
use num_complex::Complex64;
use num_rational::BigRational;
use num_integer::Integer;
use num_traits::float::FloatCore;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::gauss::GaussRat;

pub type Rational = BigRational;

pub fn rat(n: i64) -> Rational {
    Rational::from_integer(BigInt::from(n))
}

pub fn rat_frac(n: i64, d: i64) -> Rational {
    Rational::new(BigInt::from(n), BigInt::from(d))
}

/// Exponent pair `(deg_x, deg_y)`.
pub type Exponent = (u32, u32);

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Var {
    X,
    Y,
}

/// Sparse polynomial in `x, y`. Zero coefficients are never stored.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash)]
pub struct BivarPoly {
    terms: BTreeMap<Exponent, Rational>,
}

impl BivarPoly {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn one() -> Self {
        Self::constant(Rational::one())
    }

    pub fn constant(c: Rational) -> Self {
        Self::monomial(c, 0, 0)
    }

    pub fn x() -> Self {
        Self::monomial(Rational::one(), 1, 0)
    }

    pub fn y() -> Self {
        Self::monomial(Rational::one(), 0, 1)
    }

    pub fn monomial(c: Rational, dx: u32, dy: u32) -> Self {
        let mut p = Self::zero();
        p.add_term((dx, dy), c);
        p
    }

    pub fn from_terms<I: IntoIterator<Item = (Exponent, Rational)>>(terms: I) -> Self {
        let mut p = Self::zero();
        for (e, c) in terms {
            p.add_term(e, c);
        }
        p
    }

    /// Convenience constructor from small integer coefficients.
    pub fn from_int_terms(terms: &[(i64, u32, u32)]) -> Self {
        Self::from_terms(terms.iter().map(|&(c, a, b)| ((a, b), rat(c))))
    }

    pub fn add_term(&mut self, e: Exponent, c: Rational) {
        if c.is_zero() {
            return;
        }
        let slot = self.terms.entry(e).or_insert_with(Rational::zero);
        *slot += c;
        if slot.is_zero() {
            self.terms.remove(&e);
        }
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn coeff(&self, dx: u32, dy: u32) -> Rational {
        self.terms.get(&(dx, dy)).cloned().unwrap_or_else(Rational::zero)
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Exponent, &Rational)> {
        self.terms.iter()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    /// Total degree; `None` for the zero polynomial.
    pub fn degree(&self) -> Option<u32> {
        self.terms.keys().map(|&(a, b)| a + b).max()
    }

    pub fn is_integral(&self) -> bool {
        self.terms.values().all(|c| c.is_integer())
    }

    pub fn scale(&self, c: &Rational) -> Self {
        if c.is_zero() {
            return Self::zero();
        }
        BivarPoly {
            terms: self.terms.iter().map(|(e, v)| (*e, v * c)).collect(),
        }
    }

    pub fn mul_monomial(&self, dx: u32, dy: u32) -> Self {
        BivarPoly {
            terms: self
                .terms
                .iter()
                .map(|(&(a, b), v)| ((a + dx, b + dy), v.clone()))
                .collect(),
        }
    }

    pub fn pow(&self, k: u32) -> Self {
        (0..k).fold(Self::one(), |acc, _| &acc * self)
    }

    pub fn differentiate(&self, var: Var, order: u32) -> Self {
        let mut out = Self::zero();
        for (&(a, b), c) in &self.terms {
            let d = match var {
                Var::X => a,
                Var::Y => b,
            };
            if d < order {
                continue;
            }
            let falling: i64 = (0..order).map(|k| i64::from(d - k)).product();
            let e = match var {
                Var::X => (a - order, b),
                Var::Y => (a, b - order),
            };
            out.add_term(e, c * rat(falling));
        }
        out
    }

    /// `d^{ax}/dx^{ax} d^{ay}/dy^{ay}`.
    pub fn partial(&self, ax: u32, ay: u32) -> Self {
        self.differentiate(Var::X, ax).differentiate(Var::Y, ay)
    }

    pub fn eval(&self, x: &Rational, y: &Rational) -> Rational {
        self.terms
            .iter()
            .map(|(&(a, b), c)| c * pow_rat(x, a) * pow_rat(y, b))
            .sum()
    }

    pub fn eval_gauss(&self, x: &GaussRat, y: &GaussRat) -> GaussRat {
        let max_a = self.terms.keys().map(|e| e.0).max().unwrap_or(0);
        let max_b = self.terms.keys().map(|e| e.1).max().unwrap_or(0);
        let powers = |z: &GaussRat, k: u32| {
            let mut v = vec![GaussRat::one()];
            for i in 0..k as usize {
                let next = &v[i] * z;
                v.push(next);
            }
            v
        };
        let (xp, yp) = (powers(x, max_a), powers(y, max_b));
        let mut acc = GaussRat::zero();
        for (&(a, b), c) in &self.terms {
            acc = &acc + &(&xp[a as usize] * &yp[b as usize]).scale(c);
        }
        acc
    }

    /// Evaluates at a floating-point point without rounding inside the sum:
    /// `x` and `y` are taken as the exact dyadic values they represent and
    /// only the final value is rounded.
    pub fn eval_complex(&self, x: Complex64, y: Complex64) -> Complex64 {
        let parts = [x.re, x.im, y.re, y.im];
        if parts.iter().any(|v| !v.is_finite()) {
            return Complex64::new(f64::NAN, f64::NAN);
        }
        // Every part is mantissa * 2^exp; rescale to integers over 2^-shift.
        let decoded = parts.map(|v| {
            let (mant, exp, sign) = v.integer_decode();
            (BigInt::from(mant) * sign, exp)
        });
        let base = decoded.iter().map(|d| d.1).min().unwrap_or(0).min(0);
        let shift = (-base) as usize;
        let ints = decoded.map(|(m, e)| m << (e - base) as usize);
        let [xr, xi, yr, yi] = ints;
        let degree = self.degree().unwrap_or(0) as usize;
        let denom_lcm = self
            .terms
            .values()
            .fold(BigInt::one(), |l, c| l.lcm(c.denom()));
        let max_a = self.terms.keys().map(|e| e.0).max().unwrap_or(0);
        let max_b = self.terms.keys().map(|e| e.1).max().unwrap_or(0);
        let (xp, yp) = (gauss_int_powers((xr, xi), max_a), gauss_int_powers((yr, yi), max_b));
        let (mut re, mut im) = (BigInt::zero(), BigInt::zero());
        for (&(a, b), c) in &self.terms {
            let (pr, pi) = gauss_int_mul(&xp[a as usize], &yp[b as usize]);
            let scale = (c.numer() * (&denom_lcm / c.denom())) << (shift * (degree - (a + b) as usize));
            re += pr * &scale;
            im += pi * &scale;
        }
        let denom = denom_lcm << (shift * degree);
        let to_f64 = |v: BigInt| Rational::new(v, denom.clone()).to_f64().unwrap_or(f64::NAN);
        Complex64::new(to_f64(re), to_f64(im))
    }

    /// Plain floating-point evaluation; cheap but subject to cancellation.
    pub fn eval_float(&self, x: Complex64, y: Complex64) -> Complex64 {
        self.terms
            .iter()
            .map(|(&(a, b), c)| {
                let c = c.to_f64().unwrap_or(f64::NAN);
                x.powu(a) * y.powu(b) * c
            })
            .sum()
    }

    pub fn eval_f64(&self, x: f64, y: f64) -> f64 {
        self.eval_complex(Complex64::new(x, 0.0), Complex64::new(y, 0.0)).re
    }

    pub fn render(&self, style: Style) -> String {
        render_terms(&self.terms, ["x", "y"], style)
    }

    pub fn to_latex(&self) -> String {
        self.render(Style::Latex)
    }

    pub fn to_json_terms(&self) -> Vec<JsonTerm> {
        self.terms
            .iter()
            .rev()
            .map(|(&(dx, dy), c)| JsonTerm {
                dx,
                dy,
                num: big_to_number(c.numer()),
                den: big_to_number(c.denom()),
            })
            .collect()
    }

    pub fn from_json_terms(terms: &[JsonTerm]) -> Result<Self> {
        let mut p = Self::zero();
        for t in terms {
            let num = number_to_big(&t.num)?;
            let den = number_to_big(&t.den)?;
            if den.is_zero() {
                return Err(Error::Parse("zero denominator".into()));
            }
            p.add_term((t.dx, t.dy), Rational::new(num, den));
        }
        Ok(p)
    }
}

fn pow_rat(x: &Rational, k: u32) -> Rational {
    num_traits::pow(x.clone(), k as usize)
}

/// One monomial in the JSON wire format: `c x^dx y^dy` with `c = num / den`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct JsonTerm {
    pub dx: u32,
    pub dy: u32,
    pub num: serde_json::Number,
    pub den: serde_json::Number,
}

fn big_to_number(b: &BigInt) -> serde_json::Number {
    b.to_string().parse().expect("integer literal is a JSON number")
}

fn number_to_big(n: &serde_json::Number) -> Result<BigInt> {
    n.to_string()
        .parse()
        .map_err(|_| Error::Parse(format!("`{n}` is not an integer")))
}

impl fmt::Display for BivarPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.render(Style::Code))
    }
}

impl FromStr for BivarPoly {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Ok(Self::from_terms(parse_terms(s, ['x', 'y'])?))
    }
}

impl Add for &BivarPoly {
    type Output = BivarPoly;
    fn add(self, rhs: &BivarPoly) -> BivarPoly {
        let mut out = self.clone();
        for (e, c) in &rhs.terms {
            out.add_term(*e, c.clone());
        }
        out
    }
}

impl Sub for &BivarPoly {
    type Output = BivarPoly;
    fn sub(self, rhs: &BivarPoly) -> BivarPoly {
        let mut out = self.clone();
        for (e, c) in &rhs.terms {
            out.add_term(*e, -c);
        }
        out
    }
}

impl Mul for &BivarPoly {
    type Output = BivarPoly;
    fn mul(self, rhs: &BivarPoly) -> BivarPoly {
        let mut out = BivarPoly::zero();
        for (&(a, b), c) in &self.terms {
            for (&(p, q), d) in &rhs.terms {
                out.add_term((a + p, b + q), c * d);
            }
        }
        out
    }
}

impl Neg for &BivarPoly {
    type Output = BivarPoly;
    fn neg(self) -> BivarPoly {
        self.scale(&-Rational::one())
    }
}

macro_rules! forward_owned {
    ($tr:ident, $f:ident) => {
        impl $tr for BivarPoly {
            type Output = BivarPoly;
            fn $f(self, rhs: BivarPoly) -> BivarPoly {
                (&self).$f(&rhs)
            }
        }
    };
}
forward_owned!(Add, add);
forward_owned!(Sub, sub);
forward_owned!(Mul, mul);

/// Rendering flavour for term maps.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Style {
    /// `x^2 - 2*y - 4`
    Code,
    /// `m^2+mn+n^2`
    Compact,
    /// `x^{2} - 2 y - 4`
    Latex,
}

/// Renders terms sorted by (total degree, first exponent) descending.
pub fn render_terms(terms: &BTreeMap<Exponent, Rational>, vars: [&str; 2], style: Style) -> String {
    if terms.is_empty() {
        return "0".to_string();
    }
    let mut order: Vec<_> = terms.iter().collect();
    order.sort_by(|((a1, b1), _), ((a2, b2), _)| (a2 + b2, a2).cmp(&(a1 + b1, a1)));
    let mut out = String::new();
    for (i, (&(a, b), c)) in order.into_iter().enumerate() {
        let negative = c.is_negative();
        let mag = c.abs();
        match (i, negative, style) {
            (0, true, _) => out.push('-'),
            (0, false, _) => {}
            (_, true, Style::Compact) => out.push('-'),
            (_, false, Style::Compact) => out.push('+'),
            (_, true, _) => out.push_str(" - "),
            (_, false, _) => out.push_str(" + "),
        }
        let mut factors: Vec<String> = Vec::new();
        for (v, d) in [(vars[0], a), (vars[1], b)] {
            match (d, style) {
                (0, _) => {}
                (1, _) => factors.push(v.to_string()),
                (_, Style::Latex) => factors.push(format!("{v}^{{{d}}}")),
                (_, _) => factors.push(format!("{v}^{d}")),
            }
        }
        let coeff = if mag.is_one() && !factors.is_empty() {
            None
        } else if mag.is_integer() {
            Some(mag.numer().to_string())
        } else if style == Style::Latex {
            Some(format!("\\frac{{{}}}{{{}}}", mag.numer(), mag.denom()))
        } else {
            Some(format!("{}/{}", mag.numer(), mag.denom()))
        };
        let joined = match style {
            Style::Code => coeff.into_iter().chain(factors).collect::<Vec<_>>().join("*"),
            Style::Compact => coeff.into_iter().chain(factors).collect(),
            Style::Latex => match (coeff, factors.is_empty()) {
                (Some(c), true) => c,
                (Some(c), false) => format!("{c} {}", factors.concat()),
                (None, _) => factors.concat(),
            },
        };
        out.push_str(&joined);
    }
    out
}

type GaussInt = (BigInt, BigInt);

fn gauss_int_mul(a: &GaussInt, b: &GaussInt) -> GaussInt {
    (&a.0 * &b.0 - &a.1 * &b.1, &a.0 * &b.1 + &a.1 * &b.0)
}

fn gauss_int_powers(z: GaussInt, k: u32) -> Vec<GaussInt> {
    let mut out = vec![(BigInt::one(), BigInt::zero())];
    for i in 0..k as usize {
        let next = gauss_int_mul(&out[i], &z);
        out.push(next);
    }
    out
}

/// Parses sums of terms such as `x^2 - 3*y + 1/2`, `m^2+mn+n^2` or `2 x y`
/// over the two given variable letters.
pub fn parse_terms(s: &str, vars: [char; 2]) -> Result<BTreeMap<Exponent, Rational>> {
    let chars: Vec<char> = s.chars().filter(|c| !c.is_whitespace()).collect();
    if chars.is_empty() {
        return Err(Error::Parse("empty polynomial".into()));
    }
    let mut out: BTreeMap<Exponent, Rational> = BTreeMap::new();
    let mut pos = 0usize;
    let err = |msg: &str, at: usize| Error::Parse(format!("{msg} at offset {at} in `{s}`"));
    while pos < chars.len() {
        let mut sign = Rational::one();
        while pos < chars.len() && (chars[pos] == '+' || chars[pos] == '-') {
            if chars[pos] == '-' {
                sign = -sign;
            }
            pos += 1;
        }
        let mut coeff = Rational::one();
        let mut exps = (0u32, 0u32);
        let mut saw_factor = false;
        loop {
            if pos >= chars.len() || chars[pos] == '+' || chars[pos] == '-' {
                break;
            }
            if chars[pos] == '*' {
                pos += 1;
                continue;
            }
            if chars[pos].is_ascii_digit() {
                let (num, next) = read_int(&chars, pos);
                pos = next;
                let mut value = Rational::from_integer(num);
                if pos < chars.len() && chars[pos] == '/' {
                    let (den, next) = read_int(&chars, pos + 1);
                    if next == pos + 1 || den.is_zero() {
                        return Err(err("bad denominator", pos));
                    }
                    pos = next;
                    value /= Rational::from_integer(den);
                }
                coeff *= value;
                saw_factor = true;
                continue;
            }
            let var = if chars[pos] == vars[0] {
                0
            } else if chars[pos] == vars[1] {
                1
            } else {
                return Err(err(&format!("unexpected `{}`", chars[pos]), pos));
            };
            pos += 1;
            let mut power = 1u32;
            if pos < chars.len() && chars[pos] == '^' {
                let (p, next) = read_int(&chars, pos + 1);
                if next == pos + 1 {
                    return Err(err("missing exponent", pos));
                }
                pos = next;
                power = p.to_u32().ok_or_else(|| err("exponent too large", pos))?;
            }
            if var == 0 {
                exps.0 += power;
            } else {
                exps.1 += power;
            }
            saw_factor = true;
        }
        if !saw_factor {
            return Err(err("empty term", pos));
        }
        let c = sign * coeff;
        let slot = out.entry(exps).or_insert_with(Rational::zero);
        *slot += c;
        if slot.is_zero() {
            out.remove(&exps);
        }
    }
    Ok(out)
}

fn read_int(chars: &[char], start: usize) -> (BigInt, usize) {
    let mut end = start;
    while end < chars.len() && chars[end].is_ascii_digit() {
        end += 1;
    }
    let digits: String = chars[start..end].iter().collect();
    (digits.parse().unwrap_or_default(), end)
}
