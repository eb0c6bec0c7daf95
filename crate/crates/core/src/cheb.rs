//! Chebyshev polynomials of the first kind as exact polynomials in the
//! generalized cosines.
//!
//! Normalization: `pi_n` is the sum over the *distinct* elements of the orbit
//! of the dominant weight `n`, so `pi_{1,0} = x`, `pi_{0,1} = y` and
//! `pi_{0,0} = 1`. For A1 this gives `x = 2 cos(phi)` and
//! `pi_n(x) = 2 T_n(x / 2)`.
//!
//! The recursion rests on the product rule for orbit sums,
//! `Phi_a Phi_b = sum_{w in W} Phi_{a + w b}`.

use std::collections::{BTreeMap, HashMap};
use std::sync::{Arc, LazyLock, RwLock};

use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::poly::{rat, BivarPoly, Exponent, Rational};
use crate::trig::TrigPoly;
use crate::weyl::{dominant_representative, orbit, weyl_group, AlgebraId, Weight};

/// Dominant weights `dom(a + w b)` for every `w in W`, with multiplicity.
pub fn product_decomposition(
    algebra: AlgebraId,
    a: &Weight,
    b: &Weight,
) -> Result<BTreeMap<Weight, usize>> {
    let data = algebra.data();
    data.check_rank(a)?;
    data.check_rank(b)?;
    for n in [a, b] {
        if !n.is_dominant() {
            return Err(Error::NonDominant(n.clone()));
        }
    }
    let mut out = BTreeMap::new();
    for w in weyl_group(algebra) {
        let (rep, _) = dominant_representative(algebra, &(a + &w.apply(b)))?;
        *out.entry(rep).or_insert(0) += 1;
    }
    #[cfg(debug_assertions)]
    check_decomposition_numerically(algebra, a, b, &out);
    Ok(out)
}

#[cfg(debug_assertions)]
fn check_decomposition_numerically(
    algebra: AlgebraId,
    a: &Weight,
    b: &Weight,
    parts: &BTreeMap<Weight, usize>,
) {
    use crate::orbit_eval::{orbit_sum_eval, AnglePoint};
    let p = AnglePoint(vec![0.713, -1.29][..algebra.rank()].to_vec());
    let lhs = orbit_sum_eval(algebra, a, &p).unwrap() * orbit_sum_eval(algebra, b, &p).unwrap();
    let rhs: num_complex::Complex64 = parts
        .iter()
        .map(|(n, &k)| orbit_sum_eval(algebra, n, &p).unwrap() * k as f64)
        .sum();
    debug_assert!(
        (lhs - rhs).norm() < 1e-8 * (1.0 + lhs.norm()),
        "product decomposition of {a} x {b} fails numerically"
    );
}

type CacheKey = (AlgebraId, Weight);

static CACHE: LazyLock<RwLock<HashMap<CacheKey, Arc<BivarPoly>>>> =
    LazyLock::new(|| RwLock::new(HashMap::new()));

pub fn exponent_to_weight(algebra: AlgebraId, e: Exponent) -> Weight {
    match algebra.rank() {
        1 => Weight::new(&[i64::from(e.0)]),
        _ => Weight::new(&[i64::from(e.0), i64::from(e.1)]),
    }
}

/// Dominant weight to monomial exponent, `None` if it does not fit.
pub fn weight_to_exponent(n: &Weight) -> Option<Exponent> {
    let c = n.to_i64()?;
    let conv = |v: i64| u32::try_from(v).ok();
    match c.as_slice() {
        [a] => Some((conv(*a)?, 0)),
        [a, b] => Some((conv(*a)?, conv(*b)?)),
        _ => None,
    }
}

fn coordinate(i: usize) -> BivarPoly {
    match i {
        1 => BivarPoly::x(),
        _ => BivarPoly::y(),
    }
}

/// The Chebyshev polynomial `pi_n` for dominant `n`. Results are memoized
/// process-wide; concurrent callers are safe.
pub fn cheb_polynomial(algebra: AlgebraId, n: &Weight) -> Result<Arc<BivarPoly>> {
    let data = algebra.data();
    data.check_rank(n)?;
    if !n.is_dominant() {
        return Err(Error::NonDominant(n.clone()));
    }
    let key = (algebra, n.clone());
    if let Some(p) = CACHE.read().expect("cache poisoned").get(&key) {
        return Ok(Arc::clone(p));
    }
    let p = Arc::new(compute_cheb(algebra, n)?);
    CACHE
        .write()
        .expect("cache poisoned")
        .entry(key)
        .or_insert_with(|| Arc::clone(&p));
    Ok(p)
}

fn compute_cheb(algebra: AlgebraId, n: &Weight) -> Result<BivarPoly> {
    let data = algebra.data();
    if n.is_zero() {
        return Ok(BivarPoly::one());
    }
    // Peel off one fundamental weight: pi_a * x_i expands over dom(a + w lambda_i).
    let i = 1 + n.0.iter().position(|c| !c.is_zero()).expect("nonzero weight");
    let lambda = data.fundamental_weight(i);
    if *n == lambda {
        return Ok(coordinate(i));
    }
    let a = n - &lambda;
    let parts = product_decomposition(algebra, &a, &lambda)?;
    let top_grade = data.grade(n);

    let stab_a = orbit(algebra, &a)?.stabilizer_order as i64;
    let k_i = data.stabilizer_normalizers[i - 1] as i64;
    let mut rest = &*cheb_polynomial(algebra, &a)? * &coordinate(i);
    rest = rest.scale(&rat(stab_a * k_i));
    let mut top_count = 0usize;
    for (nu, &count) in &parts {
        if nu == n {
            top_count = count;
            continue;
        }
        if data.grade(nu) >= top_grade {
            return Err(Error::Grading {
                algebra,
                index: n.clone(),
            });
        }
        let stab = orbit(algebra, nu)?.stabilizer_order as i64;
        let term = cheb_polynomial(algebra, nu)?.scale(&rat(count as i64 * stab));
        rest = &rest - &term;
    }
    if top_count == 0 {
        return Err(Error::Grading {
            algebra,
            index: n.clone(),
        });
    }
    let stab_n = orbit(algebra, n)?.stabilizer_order as i64;
    Ok(rest.scale(&Rational::new(1.into(), (top_count as i64 * stab_n).into())))
}

/// The generalized cosine `x_i` as an exponential sum.
pub fn cosine_trig(algebra: AlgebraId, i: usize) -> Result<TrigPoly> {
    TrigPoly::orbit_distinct(algebra, &algebra.data().fundamental_weight(i))
}

/// Expresses a Weyl-invariant exponential sum as a polynomial in the
/// generalized cosines.
pub fn lift_invariant(algebra: AlgebraId, t: &TrigPoly) -> Result<BivarPoly> {
    let data = algebra.data();
    t.check_invariant(algebra)?;
    let mut remaining = t.clone();
    let mut out = BivarPoly::zero();
    while !remaining.is_zero() {
        let top = remaining
            .terms()
            .map(|(n, _)| n)
            .filter(|n| n.is_dominant())
            .max_by(|a, b| data.grade(a).cmp(&data.grade(b)).then(a.cmp(b)))
            .cloned()
            .expect("every orbit meets the dominant chamber");
        let c = remaining.coeff(&top);
        if !c.is_real() {
            return Err(Error::ImaginaryResidue(top));
        }
        let orbit_terms = TrigPoly::orbit_distinct(algebra, &top)?;
        remaining = &remaining - &orbit_terms.scale(&c);
        out = &out + &cheb_polynomial(algebra, &top)?.scale(&c.re);
    }
    Ok(out)
}

/// Coordinates of `p` in the basis `{pi_n}`: `p = sum_n c_n pi_n`.
pub fn cheb_expansion(algebra: AlgebraId, p: &BivarPoly) -> Result<BTreeMap<Weight, Rational>> {
    let data = algebra.data();
    let mut remaining = p.clone();
    let mut out: BTreeMap<Weight, Rational> = BTreeMap::new();
    while !remaining.is_zero() {
        let (&e, c) = remaining
            .terms()
            .max_by(|(a, _), (b, _)| {
                let ga = data.grade(&exponent_to_weight(algebra, **a));
                let gb = data.grade(&exponent_to_weight(algebra, **b));
                ga.cmp(&gb).then(a.cmp(b))
            })
            .expect("nonzero polynomial");
        let c = c.clone();
        let n = exponent_to_weight(algebra, e);
        let pi = cheb_polynomial(algebra, &n)?;
        if !pi.coeff(e.0, e.1).is_one() {
            return Err(Error::Grading { algebra, index: n });
        }
        remaining = &remaining - &pi.scale(&c);
        let slot = out.entry(n).or_insert_with(Rational::zero);
        *slot += c;
    }
    out.retain(|_, v| !v.is_zero());
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::trig::GaussRat;

    fn w(c: &[i64]) -> Weight {
        Weight::new(c)
    }

    fn p(s: &str) -> BivarPoly {
        s.parse().unwrap()
    }

    #[test]
    fn decomposition_examples() {
        let d = product_decomposition(AlgebraId::A2, &w(&[1, 0]), &w(&[0, 0])).unwrap();
        assert_eq!(d, BTreeMap::from([(w(&[1, 0]), 6)]));

        let d = product_decomposition(AlgebraId::A2, &w(&[1, 0]), &w(&[0, 1])).unwrap();
        assert_eq!(d, BTreeMap::from([(w(&[1, 1]), 4), (w(&[0, 0]), 2)]));

        let d = product_decomposition(AlgebraId::C2, &w(&[1, 0]), &w(&[1, 0])).unwrap();
        assert_eq!(
            d,
            BTreeMap::from([(w(&[2, 0]), 2), (w(&[0, 1]), 4), (w(&[0, 0]), 2)])
        );
        assert!(product_decomposition(AlgebraId::A2, &w(&[-1, 0]), &w(&[0, 1])).is_err());
    }

    #[test]
    fn low_order_polynomials() {
        for id in AlgebraId::ALL {
            let r = id.rank();
            assert_eq!(*cheb_polynomial(id, &Weight::zero(r)).unwrap(), BivarPoly::one());
            assert_eq!(*cheb_polynomial(id, &id.data().fundamental_weight(1)).unwrap(), p("x"));
            if r == 2 {
                assert_eq!(*cheb_polynomial(id, &w(&[0, 1])).unwrap(), p("y"));
            }
        }
        assert_eq!(*cheb_polynomial(AlgebraId::A2, &w(&[1, 1])).unwrap(), p("x*y - 3"));
        assert_eq!(*cheb_polynomial(AlgebraId::C2, &w(&[2, 0])).unwrap(), p("x^2 - 2*y - 4"));
        assert_eq!(*cheb_polynomial(AlgebraId::A1, &w(&[2])).unwrap(), p("x^2 - 2"));
        assert!(matches!(
            cheb_polynomial(AlgebraId::A2, &w(&[0, -1])),
            Err(Error::NonDominant(_))
        ));
    }

    #[test]
    fn a1_matches_classical_recurrence() {
        // pi_{n+1} = x pi_n - pi_{n-1}, from 2cos((n+1)t) = 2cos(t) 2cos(nt) - 2cos((n-1)t).
        let mut prev = BivarPoly::from_int_terms(&[(2, 0, 0)]);
        let mut cur = p("x");
        for n in 1..12 {
            let next = &(&p("x") * &cur) - &prev;
            assert_eq!(*cheb_polynomial(AlgebraId::A1, &w(&[n + 1])).unwrap(), next);
            prev = cur;
            cur = next;
        }
    }

    #[test]
    fn lift_examples() {
        let six = TrigPoly::constant(2, GaussRat::real(rat(6)));
        assert_eq!(lift_invariant(AlgebraId::A2, &six).unwrap(), p("6"));
        let phi10 = TrigPoly::orbit_sum(AlgebraId::A2, &w(&[1, 0]));
        assert_eq!(lift_invariant(AlgebraId::A2, &phi10).unwrap(), p("2*x"));
        let phi11 = TrigPoly::orbit_sum(AlgebraId::A2, &w(&[1, 1]));
        assert_eq!(lift_invariant(AlgebraId::A2, &phi11).unwrap(), p("x*y - 3"));
    }

    #[test]
    fn lift_rejects_non_invariant_and_imaginary() {
        let t = TrigPoly::exp(w(&[1, 0]));
        assert!(matches!(lift_invariant(AlgebraId::A2, &t), Err(Error::NotInvariant(_))));
        let t = TrigPoly::orbit_sum(AlgebraId::C2, &w(&[1, 0])).scale(&GaussRat::i());
        assert!(matches!(
            lift_invariant(AlgebraId::C2, &t),
            Err(Error::ImaginaryResidue(_))
        ));
    }

    #[test]
    fn expansion_inverts_cheb_basis() {
        for id in AlgebraId::RANK_TWO {
            let q = p("x^3*y - 2*x*y^2 + 5");
            let coords = cheb_expansion(id, &q).unwrap();
            let mut back = BivarPoly::zero();
            for (n, c) in &coords {
                back = &back + &cheb_polynomial(id, n).unwrap().scale(c);
            }
            assert_eq!(back, q);
        }
    }
}
