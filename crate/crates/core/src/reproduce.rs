//! Recomputes every published value in `data/reference.toml` and classifies
//! each as matching, suspect, or absent from the source.

use std::collections::BTreeSet;
use std::fmt;

use num_traits::Zero;
use serde::{Deserialize, Serialize};

use crate::angle_op::angle_operator;
use crate::cartesian::{classical_a1, derive_cartesian_chainrule, derive_cartesian_undetermined, verify_eigen};
use crate::coeff_rep::{canonicalize, fixed_space, invariance_witness, is_fixed, verify_representation, SymbolVector};
use crate::error::{Error, Result};
use crate::linalg::QMatrix;
use crate::poly::{parse_terms, BivarPoly, Rational};
use crate::weyl::{generator_action, orbit, AlgebraId, Weight};

const REFERENCE: &str = include_str!("../data/reference.toml");

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum Status {
    #[serde(rename = "MATCH")]
    Match,
    #[serde(rename = "MISMATCH-PAPER-SUSPECT")]
    Mismatch,
    #[serde(rename = "NOT-PRINTED")]
    NotPrinted,
}

impl fmt::Display for Status {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Status::Match => "MATCH",
            Status::Mismatch => "MISMATCH-PAPER-SUSPECT",
            Status::NotPrinted => "NOT-PRINTED",
        })
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct ReportEntry {
    pub id: String,
    pub location: String,
    pub expected: String,
    pub computed: String,
    pub status: Status,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub witness: Option<String>,
}

#[derive(Clone, Debug, Serialize)]
pub struct ReproductionReport {
    pub entries: Vec<ReportEntry>,
}

impl ReproductionReport {
    pub fn entry(&self, id: &str) -> Option<&ReportEntry> {
        self.entries.iter().find(|e| e.id == id)
    }

    pub fn count(&self, status: Status) -> usize {
        self.entries.iter().filter(|e| e.status == status).count()
    }

    pub fn render_text(&self) -> String {
        let mut out = String::new();
        for e in &self.entries {
            out.push_str(&format!("[{}] {} ({})\n", e.status, e.id, e.location));
            out.push_str(&format!("    printed:  {}\n", e.expected));
            out.push_str(&format!("    computed: {}\n", e.computed));
            if let Some(w) = &e.witness {
                out.push_str(&format!("    witness:  {w}\n"));
            }
        }
        out.push_str(&format!(
            "{} entries: {} match, {} suspect, {} not printed\n",
            self.entries.len(),
            self.count(Status::Match),
            self.count(Status::Mismatch),
            self.count(Status::NotPrinted)
        ));
        out
    }
}

#[derive(Debug, Deserialize)]
struct Reference {
    entry: Vec<RawEntry>,
}

#[derive(Debug, Deserialize)]
struct RawEntry {
    id: String,
    location: String,
    #[serde(flatten)]
    kind: Kind,
}

#[derive(Debug, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
enum Kind {
    WeightAction {
        algebra: String,
        printed: Vec<(usize, usize, Vec<i64>)>,
    },
    OrbitExponents {
        algebra: String,
        fundamental: usize,
        printed: Vec<Vec<i64>>,
    },
    Relations {
        algebra: String,
        orders: Vec<usize>,
        relations: Vec<String>,
    },
    AngleOperator {
        algebra: String,
        vector: Vec<i64>,
        spectrum: String,
        expanded: String,
    },
    DimensionClaim {
        algebra: String,
        dims: Vec<(usize, usize)>,
    },
    ClassicalA1 {
        printed: String,
        coefficients: Vec<(u32, String)>,
    },
    Cartesian {
        algebra: String,
        vector: Vec<i64>,
        coefficients: Vec<((u32, u32), String)>,
    },
    NotPrinted {
        algebra: String,
        vectors: Vec<Vec<i64>>,
    },
}

fn status(ok: bool) -> Status {
    if ok {
        Status::Match
    } else {
        Status::Mismatch
    }
}

fn substitution_str(w: &crate::weyl::WeylElement) -> String {
    let var = |row: &[i64]| {
        BivarPoly::from_int_terms(&[(row[0], 1, 0), (row[1], 0, 1)])
            .render(crate::poly::Style::Compact)
            .replace('x', "m")
            .replace('y', "n")
    };
    format!("(m,n) -> ({},{}) [{}]", var(&w.matrix[0]), var(&w.matrix[1]), w.word_string())
}

/// Fixed vector with support inside that of `printed`, scaled to agree
/// with its first nonzero entry.
fn support_correction(algebra: AlgebraId, printed: &SymbolVector) -> Result<Option<SymbolVector>> {
    let basis = fixed_space(algebra, printed.order)?;
    if basis.is_empty() {
        return Ok(None);
    }
    let zeros: Vec<usize> = (0..printed.len()).filter(|&k| printed.coeffs[k].is_zero()).collect();
    if zeros.is_empty() {
        return Ok(None);
    }
    // coefficients c with (sum_i c_i b_i)[k] = 0 for k in zeros
    let rows: Vec<Vec<Rational>> = zeros
        .iter()
        .map(|&k| basis.iter().map(|b| b.coeffs[k].clone()).collect())
        .collect();
    let null = QMatrix::from_rows(rows).nullspace();
    if null.len() != 1 {
        return Ok(None);
    }
    let mut v = vec![Rational::zero(); printed.len()];
    for (c, b) in null[0].iter().zip(&basis) {
        for (slot, x) in v.iter_mut().zip(&b.coeffs) {
            *slot += c * x;
        }
    }
    Ok(Some(canonicalize(&SymbolVector::new(printed.order, v))?))
}

fn eval(raw: RawEntry) -> Result<Vec<ReportEntry>> {
    let RawEntry { id, location, kind } = raw;
    let entry = |id: String, expected: String, computed: String, st: Status, witness: Option<String>| ReportEntry {
        id,
        location: location.clone(),
        expected,
        computed,
        status: st,
        witness,
    };
    Ok(match kind {
        Kind::WeightAction { algebra, printed } => {
            let alg: AlgebraId = algebra.parse()?;
            let mut exp = Vec::new();
            let mut got = Vec::new();
            let mut bad = Vec::new();
            for (g, l, coords) in printed {
                let w = generator_action(alg, g)?;
                let image = w.apply(&alg.data().fundamental_weight(l));
                let printed = Weight::new(&coords);
                exp.push(format!("w{g} l{l} = {printed}"));
                got.push(format!("w{g} l{l} = {image}"));
                if image != printed {
                    bad.push(format!("w{g} l{l}: printed {printed}, computed {image}"));
                }
            }
            let witness = (!bad.is_empty()).then(|| bad.join("; "));
            vec![entry(id, exp.join(", "), got.join(", "), status(bad.is_empty()), witness)]
        }
        Kind::OrbitExponents {
            algebra,
            fundamental,
            printed,
        } => {
            let alg: AlgebraId = algebra.parse()?;
            let o = orbit(alg, &alg.data().fundamental_weight(fundamental))?;
            let computed: BTreeSet<Weight> = o.elements.into_iter().collect();
            let printed: BTreeSet<Weight> = printed.iter().map(|c| Weight::new(c)).collect();
            let fmt = |s: &BTreeSet<Weight>| s.iter().map(ToString::to_string).collect::<Vec<_>>().join(" ");
            let witness = (computed != printed).then(|| {
                let extra: BTreeSet<_> = printed.difference(&computed).cloned().collect();
                let missing: BTreeSet<_> = computed.difference(&printed).cloned().collect();
                format!("printed but not in orbit: {}; in orbit but not printed: {}", fmt(&extra), fmt(&missing))
            });
            vec![entry(id, fmt(&printed), fmt(&computed), status(witness.is_none()), witness)]
        }
        Kind::Relations {
            algebra,
            orders,
            relations,
        } => {
            let alg: AlgebraId = algebra.parse()?;
            let mut got = Vec::new();
            let mut bad = Vec::new();
            for &n in &orders {
                let r = verify_representation(alg, n)?;
                for name in &relations {
                    let holds = r.relation(name).ok_or_else(|| Error::Reference(format!("unknown relation `{name}`")))?;
                    if !holds {
                        bad.push(format!("{name} fails at N={n}"));
                    }
                }
                got.push(format!("N={n}: kernel {{{}}}", r.kernel.join(", ")));
            }
            let expected = format!("{} at N in {:?}", relations.join(", "), orders);
            let witness = (!bad.is_empty()).then(|| bad.join("; "));
            vec![entry(id, expected, got.join("; "), status(bad.is_empty()), witness)]
        }
        Kind::AngleOperator {
            algebra,
            vector,
            spectrum,
            expanded,
        } => {
            let alg: AlgebraId = algebra.parse()?;
            let printed = SymbolVector::rank_two(&vector);
            let printed_expansion = BivarPoly::from_terms(parse_terms(&expanded, ['m', 'n'])?);
            let expected = format!("{printed}, E = {spectrum}");
            if is_fixed(alg, &printed)? {
                let own = printed.to_poly();
                let rendered = printed.render(crate::poly::Style::Compact);
                let ok = own == printed_expansion;
                let witness = (!ok).then(|| format!("symbol of {printed} is {rendered}"));
                vec![entry(id, expected, format!("{printed}, E = {rendered}"), status(ok), witness)]
            } else {
                let w = invariance_witness(alg, &printed).expect("not fixed implies a witness");
                let mut witness = format!("q(w(m,n)) != q(m,n) for {}", substitution_str(w));
                let computed = match support_correction(alg, &printed)? {
                    Some(c) => {
                        debug_assert!(invariance_witness(alg, &c).is_none());
                        witness.push_str(&format!("; {c} is invariant under all of W"));
                        format!("{c}, E = {}", c.render(crate::poly::Style::Compact))
                    }
                    None => "no invariant vector with the printed support".into(),
                };
                vec![entry(id, expected, computed, Status::Mismatch, Some(witness))]
            }
        }
        Kind::DimensionClaim { algebra, dims } => {
            let alg: AlgebraId = algebra.parse()?;
            let mut out = Vec::new();
            for (n, printed) in dims {
                let got = fixed_space(alg, n)?.len();
                let molien = alg.data().molien_dimension(n);
                let witness = (got != printed).then(|| {
                    format!("exact nullspace has dimension {got}; Molien coefficient of t^{n} is {molien}")
                });
                out.push(entry(
                    format!("{id}/N={n}"),
                    format!("dim {printed}"),
                    format!("dim {got}"),
                    status(got == printed),
                    witness,
                ));
            }
            out
        }
        Kind::ClassicalA1 { printed, coefficients } => {
            let op = angle_operator(AlgebraId::A1, SymbolVector::from_ints(2, &[1]))?;
            let classical = classical_a1(&derive_cartesian_chainrule(&op)?)?;
            let ok = coefficients.iter().all(|(k, p)| {
                p.parse::<BivarPoly>().ok().as_ref() == classical.coeffs.get(k)
            }) && classical.coeffs.len() == coefficients.len();
            vec![entry(id, printed, classical.render(), status(ok), None)]
        }
        Kind::Cartesian {
            algebra,
            vector,
            coefficients,
        } => {
            let alg: AlgebraId = algebra.parse()?;
            let op = derive_cartesian_chainrule(&angle_operator(alg, SymbolVector::rank_two(&vector))?)?;
            let mut bad = Vec::new();
            let mut exp = Vec::new();
            for (alpha, p) in &coefficients {
                let printed: BivarPoly = p.parse()?;
                exp.push(format!("({printed})"));
                if op.coeff(*alpha) != printed {
                    bad.push(format!("d^{alpha:?}: printed {printed}, computed {}", op.coeff(*alpha)));
                }
            }
            if op.coeffs.len() != coefficients.len() {
                bad.push("different set of derivative terms".into());
            }
            let witness = (!bad.is_empty()).then(|| bad.join("; "));
            vec![entry(id, exp.join(", "), op.render_text(), status(bad.is_empty()), witness)]
        }
        Kind::NotPrinted { algebra, vectors } => {
            let alg: AlgebraId = algebra.parse()?;
            let mut out = Vec::new();
            for v in vectors {
                let sym = SymbolVector::rank_two(&v);
                let op = angle_operator(alg, sym.clone())?;
                let cart = derive_cartesian_undetermined(alg, &op.spectrum, op.order())?;
                let check = verify_eigen(&cart, 6, 6)?;
                out.push(entry(
                    format!("{id}/{sym}"),
                    "(none)".into(),
                    cart.render_text(),
                    Status::NotPrinted,
                    Some(format!("eigen-relation holds on {}/{} indices with m,n <= 6", check.passed, check.checked)),
                ));
            }
            out
        }
    })
}

/// Builds the full report from the bundled reference data.
pub fn reproduce() -> Result<ReproductionReport> {
    let reference: Reference =
        toml::from_str(REFERENCE).map_err(|e| Error::Reference(e.to_string()))?;
    let mut entries = Vec::new();
    for raw in reference.entry {
        entries.extend(eval(raw)?);
    }
    Ok(ReproductionReport { entries })
}
