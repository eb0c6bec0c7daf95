//! Root-system data for A1, A2, C2, G2 and the Weyl group acting on weight
//! coordinates.
//!
//! Everything here works in the basis of fundamental weights. The generator
//! `w_i` sends a weight `n` to `n - n_i * alpha_i`, where the simple root
//! `alpha_i` is row `i` of the Cartan matrix written in weight coordinates.

use std::collections::{BTreeMap, BTreeSet, VecDeque};
use std::fmt;
use std::ops::{Add, Neg, Sub};
use std::str::FromStr;
use std::sync::LazyLock;

use num_bigint::BigInt;
use num_traits::{Signed, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Hard cap on the size of a generated group.
pub const CLOSURE_CAP: usize = 64;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum AlgebraId {
    A1,
    A2,
    C2,
    G2,
}

impl AlgebraId {
    pub const ALL: [AlgebraId; 4] = [AlgebraId::A1, AlgebraId::A2, AlgebraId::C2, AlgebraId::G2];
    pub const RANK_TWO: [AlgebraId; 3] = [AlgebraId::A2, AlgebraId::C2, AlgebraId::G2];

    pub fn data(self) -> &'static AlgebraData {
        match self {
            AlgebraId::A1 => &A1_DATA,
            AlgebraId::A2 => &A2_DATA,
            AlgebraId::C2 => &C2_DATA,
            AlgebraId::G2 => &G2_DATA,
        }
    }

    pub fn rank(self) -> usize {
        match self {
            AlgebraId::A1 => 1,
            _ => 2,
        }
    }
}

impl fmt::Display for AlgebraId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = match self {
            AlgebraId::A1 => "A1",
            AlgebraId::A2 => "A2",
            AlgebraId::C2 => "C2",
            AlgebraId::G2 => "G2",
        };
        f.write_str(s)
    }
}

impl FromStr for AlgebraId {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.trim().to_ascii_uppercase().as_str() {
            "A1" => Ok(AlgebraId::A1),
            "A2" => Ok(AlgebraId::A2),
            "C2" => Ok(AlgebraId::C2),
            "G2" => Ok(AlgebraId::G2),
            _ => Err(Error::UnknownAlgebra(s.to_string())),
        }
    }
}

/// Static descriptor of an algebra.
#[derive(Clone, Debug)]
pub struct AlgebraData {
    pub id: AlgebraId,
    pub rank: usize,
    /// `cartan[i][j] = 2 (alpha_i, alpha_j) / (alpha_j, alpha_j)`.
    pub cartan: Vec<Vec<i64>>,
    pub invariant_degrees: Vec<u32>,
    /// `|W| / |orbit(lambda_i)|` for each fundamental weight.
    pub stabilizer_normalizers: Vec<u64>,
    /// Linear functional on weights, strictly positive on every simple root.
    pub grading: Vec<i64>,
    /// Order of the Coxeter element `w_1 w_2 ... w_rank`.
    pub coxeter_number: u32,
}

static A1_DATA: LazyLock<AlgebraData> = LazyLock::new(|| AlgebraData {
    id: AlgebraId::A1,
    rank: 1,
    cartan: vec![vec![2]],
    invariant_degrees: vec![2],
    stabilizer_normalizers: vec![1],
    grading: vec![1],
    coxeter_number: 2,
});

static A2_DATA: LazyLock<AlgebraData> = LazyLock::new(|| AlgebraData {
    id: AlgebraId::A2,
    rank: 2,
    cartan: vec![vec![2, -1], vec![-1, 2]],
    invariant_degrees: vec![2, 3],
    stabilizer_normalizers: vec![2, 2],
    grading: vec![1, 1],
    coxeter_number: 3,
});

static C2_DATA: LazyLock<AlgebraData> = LazyLock::new(|| AlgebraData {
    id: AlgebraId::C2,
    rank: 2,
    cartan: vec![vec![2, -1], vec![-2, 2]],
    invariant_degrees: vec![2, 4],
    stabilizer_normalizers: vec![2, 2],
    grading: vec![2, 3],
    coxeter_number: 4,
});

// (2, 3) vanishes on alpha_2 = (-3, 2); (3, 5) is positive on both roots.
static G2_DATA: LazyLock<AlgebraData> = LazyLock::new(|| AlgebraData {
    id: AlgebraId::G2,
    rank: 2,
    cartan: vec![vec![2, -1], vec![-3, 2]],
    invariant_degrees: vec![2, 6],
    stabilizer_normalizers: vec![2, 2],
    grading: vec![3, 5],
    coxeter_number: 6,
});

impl AlgebraData {
    /// `|W|`, the product of the invariant degrees.
    pub fn weyl_order(&self) -> usize {
        self.invariant_degrees.iter().map(|&d| d as usize).product()
    }

    pub fn fundamental_weight(&self, i: usize) -> Weight {
        let mut c = vec![0i64; self.rank];
        c[i - 1] = 1;
        Weight::new(&c)
    }

    /// Simple root `alpha_i` in weight coordinates (row `i` of the Cartan matrix).
    pub fn simple_root(&self, i: usize) -> Weight {
        Weight::new(&self.cartan[i - 1])
    }

    pub fn grade(&self, w: &Weight) -> BigInt {
        w.0.iter()
            .zip(&self.grading)
            .map(|(c, &g)| c * BigInt::from(g))
            .sum()
    }

    /// Coefficient of `t^degree` in `prod_i 1 / (1 - t^{d_i})`.
    pub fn molien_dimension(&self, degree: usize) -> usize {
        let mut ways = vec![0usize; degree + 1];
        ways[0] = 1;
        for &d in &self.invariant_degrees {
            let d = d as usize;
            for k in d..=degree {
                ways[k] += ways[k - d];
            }
        }
        ways[degree]
    }

    pub fn check_rank(&self, w: &Weight) -> Result<()> {
        if w.rank() == self.rank {
            Ok(())
        } else {
            Err(Error::RankMismatch {
                algebra: self.id,
                weight: w.clone(),
                got: w.rank(),
                rank: self.rank,
            })
        }
    }
}

pub fn cartan_matrix(algebra: AlgebraId) -> Vec<Vec<i64>> {
    algebra.data().cartan.clone()
}

/// Integer pair (or singleton) in the fundamental-weight basis.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Weight(pub Vec<BigInt>);

impl Weight {
    pub fn new(coords: &[i64]) -> Self {
        Weight(coords.iter().map(|&c| BigInt::from(c)).collect())
    }

    pub fn zero(rank: usize) -> Self {
        Weight(vec![BigInt::zero(); rank])
    }

    pub fn rank(&self) -> usize {
        self.0.len()
    }

    pub fn coords(&self) -> &[BigInt] {
        &self.0
    }

    pub fn is_dominant(&self) -> bool {
        self.0.iter().all(|c| !c.is_negative())
    }

    pub fn is_zero(&self) -> bool {
        self.0.iter().all(Zero::is_zero)
    }

    /// Sum of coordinates.
    pub fn level(&self) -> BigInt {
        self.0.iter().sum()
    }

    /// Coordinates as machine integers, for callers that index tables.
    pub fn to_i64(&self) -> Option<Vec<i64>> {
        use num_traits::ToPrimitive;
        self.0.iter().map(|c| c.to_i64()).collect()
    }

    pub fn to_f64(&self) -> Vec<f64> {
        use num_traits::ToPrimitive;
        self.0.iter().map(|c| c.to_f64().unwrap_or(f64::NAN)).collect()
    }
}

impl fmt::Display for Weight {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(")?;
        for (i, c) in self.0.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{c}")?;
        }
        write!(f, ")")
    }
}

impl Add for &Weight {
    type Output = Weight;
    fn add(self, rhs: &Weight) -> Weight {
        Weight(self.0.iter().zip(&rhs.0).map(|(a, b)| a + b).collect())
    }
}

impl Sub for &Weight {
    type Output = Weight;
    fn sub(self, rhs: &Weight) -> Weight {
        Weight(self.0.iter().zip(&rhs.0).map(|(a, b)| a - b).collect())
    }
}

impl Neg for &Weight {
    type Output = Weight;
    fn neg(self) -> Weight {
        Weight(self.0.iter().map(|a| -a).collect())
    }
}

/// A Weyl group element as an integer matrix on weight coordinates, with a
/// witnessing word in the generators (1-based, applied right to left).
#[derive(Clone, Debug)]
pub struct WeylElement {
    pub matrix: Vec<Vec<i64>>,
    pub word: Vec<usize>,
}

impl PartialEq for WeylElement {
    fn eq(&self, other: &Self) -> bool {
        self.matrix == other.matrix
    }
}

impl Eq for WeylElement {}

impl WeylElement {
    pub fn identity(rank: usize) -> Self {
        let matrix = (0..rank)
            .map(|i| (0..rank).map(|j| i64::from(i == j)).collect())
            .collect();
        WeylElement {
            matrix,
            word: Vec::new(),
        }
    }

    pub fn rank(&self) -> usize {
        self.matrix.len()
    }

    pub fn is_identity(&self) -> bool {
        *self == WeylElement::identity(self.rank())
    }

    pub fn apply(&self, w: &Weight) -> Weight {
        Weight(
            self.matrix
                .iter()
                .map(|row| row.iter().zip(&w.0).map(|(&a, c)| c * a).sum())
                .collect(),
        )
    }

    /// `self * other`: apply `other` first.
    pub fn compose(&self, other: &WeylElement) -> WeylElement {
        let n = self.rank();
        let mut matrix = vec![vec![0i64; n]; n];
        for (i, row) in matrix.iter_mut().enumerate() {
            for (j, entry) in row.iter_mut().enumerate() {
                let mut acc = 0i64;
                for k in 0..n {
                    acc = self.matrix[i][k]
                        .checked_mul(other.matrix[k][j])
                        .and_then(|p| acc.checked_add(p))
                        .expect("Weyl matrix entry overflow");
                }
                *entry = acc;
            }
        }
        let mut word = self.word.clone();
        word.extend_from_slice(&other.word);
        WeylElement { matrix, word }
    }

    pub fn pow(&self, k: u32) -> WeylElement {
        (0..k).fold(WeylElement::identity(self.rank()), |acc, _| acc.compose(self))
    }

    pub fn determinant(&self) -> i64 {
        match self.rank() {
            1 => self.matrix[0][0],
            2 => self.matrix[0][0] * self.matrix[1][1] - self.matrix[0][1] * self.matrix[1][0],
            _ => unreachable!("rank <= 2"),
        }
    }

    pub fn word_string(&self) -> String {
        if self.word.is_empty() {
            "e".to_string()
        } else {
            self.word.iter().map(|g| format!("w{g}")).collect()
        }
    }
}

/// The reflection `w_i`.
pub fn generator_action(algebra: AlgebraId, i: usize) -> Result<WeylElement> {
    let data = algebra.data();
    if i == 0 || i > data.rank {
        return Err(Error::GeneratorOutOfRange {
            algebra,
            index: i,
            rank: data.rank,
        });
    }
    let mut g = WeylElement::identity(data.rank);
    // (w_i n)_j = n_j - n_i * C_ij
    for j in 0..data.rank {
        g.matrix[j][i - 1] -= data.cartan[i - 1][j];
    }
    g.word = vec![i];
    Ok(g)
}

/// Breadth-first closure of `generators` under right multiplication.
pub fn close_group(
    algebra: AlgebraId,
    generators: &[WeylElement],
    cap: usize,
) -> Result<Vec<WeylElement>> {
    let rank = generators.first().map_or(algebra.rank(), WeylElement::rank);
    let mut seen: BTreeSet<Vec<Vec<i64>>> = BTreeSet::new();
    let mut out = Vec::new();
    let mut queue = VecDeque::from([WeylElement::identity(rank)]);
    while let Some(next) = queue.pop_front() {
        if !seen.insert(next.matrix.clone()) {
            continue;
        }
        if out.len() == cap {
            return Err(Error::ClosureOverflow { algebra, cap });
        }
        for g in generators {
            let candidate = next.compose(g);
            if !seen.contains(&candidate.matrix) {
                queue.push_back(candidate);
            }
        }
        out.push(next);
    }
    Ok(out)
}

static GROUPS: LazyLock<BTreeMap<AlgebraId, Vec<WeylElement>>> = LazyLock::new(|| {
    AlgebraId::ALL
        .iter()
        .map(|&id| {
            let gens: Vec<_> = (1..=id.rank())
                .map(|i| generator_action(id, i).expect("generator in range"))
                .collect();
            let group = close_group(id, &gens, CLOSURE_CAP).expect("built-in Cartan data closes");
            (id, group)
        })
        .collect()
});

/// All elements of W, identity first, each with a shortest word.
pub fn weyl_group(algebra: AlgebraId) -> &'static [WeylElement] {
    &GROUPS[&algebra]
}

/// Looks up the group element with the given matrix (and hence its shortest word).
pub fn find_element(algebra: AlgebraId, matrix: &[Vec<i64>]) -> Option<&'static WeylElement> {
    weyl_group(algebra).iter().find(|e| e.matrix == matrix)
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct OrbitData {
    pub representative: Weight,
    /// Distinct images, sorted.
    pub elements: Vec<Weight>,
    pub stabilizer_order: usize,
}

impl OrbitData {
    pub fn len(&self) -> usize {
        self.elements.len()
    }

    pub fn is_empty(&self) -> bool {
        self.elements.is_empty()
    }

    pub fn contains(&self, w: &Weight) -> bool {
        self.elements.binary_search(w).is_ok()
    }
}

pub fn orbit(algebra: AlgebraId, n: &Weight) -> Result<OrbitData> {
    let data = algebra.data();
    data.check_rank(n)?;
    let elements: BTreeSet<Weight> = weyl_group(algebra).iter().map(|w| w.apply(n)).collect();
    let representative = elements
        .iter()
        .find(|w| w.is_dominant())
        .cloned()
        .expect("every orbit meets the dominant chamber");
    let stabilizer_order = data.weyl_order() / elements.len();
    Ok(OrbitData {
        representative,
        elements: elements.into_iter().collect(),
        stabilizer_order,
    })
}

/// Size of the stabilizer of `n` in W.
pub fn stabilizer_order(algebra: AlgebraId, n: &Weight) -> Result<usize> {
    Ok(orbit(algebra, n)?.stabilizer_order)
}

/// Reflects `n` into the dominant chamber. Returns the dominant weight and an
/// element `w` with `w n` equal to it.
pub fn dominant_representative(algebra: AlgebraId, n: &Weight) -> Result<(Weight, WeylElement)> {
    let data = algebra.data();
    data.check_rank(n)?;
    let gens: Vec<_> = (1..=data.rank)
        .map(|i| generator_action(algebra, i))
        .collect::<Result<_>>()?;
    let mut current = n.clone();
    let mut witness = WeylElement::identity(data.rank);
    // Each step strictly raises the height; the number of positive roots bounds it.
    let guard = 4 * data.weyl_order();
    for _ in 0..=guard {
        match current.0.iter().position(Signed::is_negative) {
            None => {
                let shortest = find_element(algebra, &witness.matrix)
                    .cloned()
                    .unwrap_or(witness);
                return Ok((current, shortest));
            }
            Some(i) => {
                current = gens[i].apply(&current);
                witness = gens[i].compose(&witness);
            }
        }
    }
    Err(Error::DominanceGuard(n.clone()))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn w(c: &[i64]) -> Weight {
        Weight::new(c)
    }

    #[test]
    fn cartan_matrices() {
        assert_eq!(cartan_matrix(AlgebraId::A1), vec![vec![2]]);
        assert_eq!(cartan_matrix(AlgebraId::A2), vec![vec![2, -1], vec![-1, 2]]);
        assert_eq!(cartan_matrix(AlgebraId::C2), vec![vec![2, -1], vec![-2, 2]]);
        assert_eq!(cartan_matrix(AlgebraId::G2), vec![vec![2, -1], vec![-3, 2]]);
        for id in AlgebraId::ALL {
            let c = cartan_matrix(id);
            for (i, row) in c.iter().enumerate() {
                for (j, &e) in row.iter().enumerate() {
                    if i == j {
                        assert_eq!(e, 2);
                    } else {
                        assert!(e <= 0);
                    }
                }
            }
        }
    }

    #[test]
    fn generator_examples() {
        let w1 = generator_action(AlgebraId::A2, 1).unwrap();
        assert_eq!(w1.apply(&w(&[1, 0])), w(&[-1, 1]));
        assert_eq!(w1.apply(&w1.apply(&w(&[4, -7]))), w(&[4, -7]));
        let c2w2 = generator_action(AlgebraId::C2, 2).unwrap();
        assert_eq!(c2w2.apply(&w(&[0, 1])), w(&[2, -1]));
        let g2w2 = generator_action(AlgebraId::G2, 2).unwrap();
        assert_eq!(g2w2.apply(&w(&[0, 1])), w(&[3, -1]));
    }

    #[test]
    fn generator_index_out_of_range() {
        assert!(matches!(
            generator_action(AlgebraId::A2, 3),
            Err(Error::GeneratorOutOfRange { .. })
        ));
        assert!(generator_action(AlgebraId::A1, 2).is_err());
        assert!(generator_action(AlgebraId::G2, 0).is_err());
    }

    #[test]
    fn group_orders_and_coxeter_relations() {
        for id in AlgebraId::ALL {
            let data = id.data();
            let group = weyl_group(id);
            assert_eq!(group.len(), data.weyl_order(), "{id}");
            assert!(group[0].is_identity());
            for g in group {
                assert_eq!(g.determinant().abs(), 1);
            }
            let gens: Vec<_> = (1..=data.rank)
                .map(|i| generator_action(id, i).unwrap())
                .collect();
            for g in &gens {
                assert!(g.pow(2).is_identity());
            }
            if data.rank == 2 {
                let c = gens[0].compose(&gens[1]);
                let h = data.coxeter_number;
                assert!(c.pow(h).is_identity(), "{id}");
                for k in 1..h {
                    assert!(!c.pow(k).is_identity(), "{id} order {k}");
                }
            }
        }
        assert_eq!(weyl_group(AlgebraId::A2).len(), 6);
        assert_eq!(weyl_group(AlgebraId::C2).len(), 8);
        assert_eq!(weyl_group(AlgebraId::G2).len(), 12);
    }

    #[test]
    fn shortest_words_are_consistent() {
        for id in AlgebraId::ALL {
            for g in weyl_group(id) {
                let rebuilt = g
                    .word
                    .iter()
                    .map(|&i| generator_action(id, i).unwrap())
                    .fold(WeylElement::identity(id.rank()), |acc, x| acc.compose(&x));
                assert_eq!(&rebuilt, g);
            }
        }
        let longest = weyl_group(AlgebraId::G2)
            .iter()
            .map(|g| g.word.len())
            .max()
            .unwrap();
        assert_eq!(longest, 6);
    }

    #[test]
    fn closure_cap_is_an_error() {
        // A non-crystallographic pair whose product has infinite order.
        let a = WeylElement {
            matrix: vec![vec![-1, 3], vec![0, 1]],
            word: vec![1],
        };
        let b = WeylElement {
            matrix: vec![vec![1, 0], vec![3, -1]],
            word: vec![2],
        };
        let err = close_group(AlgebraId::A2, &[a, b], CLOSURE_CAP).unwrap_err();
        assert!(matches!(err, Error::ClosureOverflow { cap: 64, .. }));
    }

    #[test]
    fn orbit_examples() {
        let o = orbit(AlgebraId::A2, &w(&[0, 0])).unwrap();
        assert_eq!(o.elements, vec![w(&[0, 0])]);
        assert_eq!(o.stabilizer_order, 6);

        let o = orbit(AlgebraId::A2, &w(&[1, 0])).unwrap();
        assert_eq!(o.elements, vec![w(&[-1, 1]), w(&[0, -1]), w(&[1, 0])]);
        assert_eq!(o.stabilizer_order, 2);
        assert_eq!(o.representative, w(&[1, 0]));

        let o = orbit(AlgebraId::C2, &w(&[1, 1])).unwrap();
        assert_eq!(o.len(), 8);
        assert_eq!(o.stabilizer_order, 1);
    }

    #[test]
    fn c2_orbit_of_one_one_enumerated() {
        // Brute force: apply every word of length <= 4 in the generators.
        let gens: Vec<_> = (1..=2)
            .map(|i| generator_action(AlgebraId::C2, i).unwrap())
            .collect();
        let mut images = BTreeSet::from([w(&[1, 1])]);
        for _ in 0..4 {
            let next: Vec<_> = images
                .iter()
                .flat_map(|x| gens.iter().map(move |g| g.apply(x)))
                .collect();
            images.extend(next);
        }
        assert_eq!(images.len(), 8);
        let o = orbit(AlgebraId::C2, &w(&[1, 1])).unwrap();
        assert_eq!(o.elements, images.into_iter().collect::<Vec<_>>());
    }

    #[test]
    fn stabilizer_normalizers_match_orbits() {
        for id in AlgebraId::ALL {
            let data = id.data();
            for i in 1..=data.rank {
                let o = orbit(id, &data.fundamental_weight(i)).unwrap();
                assert_eq!(o.stabilizer_order as u64, data.stabilizer_normalizers[i - 1]);
                assert_eq!(o.len() * o.stabilizer_order, data.weyl_order());
            }
        }
    }

    #[test]
    fn invariant_degrees_multiply_to_group_order() {
        for id in AlgebraId::ALL {
            let data = id.data();
            assert_eq!(
                data.invariant_degrees.iter().product::<u32>() as usize,
                weyl_group(id).len()
            );
        }
    }

    #[test]
    fn grading_is_positive_on_simple_roots() {
        for id in AlgebraId::ALL {
            let data = id.data();
            for i in 1..=data.rank {
                assert!(data.grade(&data.simple_root(i)) > BigInt::zero(), "{id} alpha_{i}");
            }
        }
    }

    #[test]
    fn dominant_representative_examples() {
        let (rep, wit) = dominant_representative(AlgebraId::A2, &w(&[1, 1])).unwrap();
        assert_eq!(rep, w(&[1, 1]));
        assert!(wit.is_identity());

        let (rep, wit) = dominant_representative(AlgebraId::A2, &w(&[-1, 2])).unwrap();
        assert_eq!(rep, w(&[1, 1]));
        assert_eq!(wit.apply(&w(&[-1, 2])), rep);

        let (rep, wit) = dominant_representative(AlgebraId::C2, &w(&[2, -1])).unwrap();
        assert_eq!(rep, w(&[0, 1]));
        assert_eq!(wit.word, vec![2]);
    }

    #[test]
    fn rank_mismatch_is_reported() {
        assert!(matches!(
            orbit(AlgebraId::A1, &w(&[1, 0])),
            Err(Error::RankMismatch { .. })
        ));
    }

    #[test]
    fn molien_coefficients() {
        let dims = |id: AlgebraId, range: std::ops::RangeInclusive<usize>| {
            range.map(|n| id.data().molien_dimension(n)).collect::<Vec<_>>()
        };
        assert_eq!(dims(AlgebraId::A2, 2..=7), vec![1, 1, 1, 1, 2, 1]);
        assert_eq!(dims(AlgebraId::C2, 2..=5), vec![1, 0, 2, 0]);
        assert_eq!(dims(AlgebraId::G2, 2..=6), vec![1, 0, 1, 0, 2]);
        assert_eq!(dims(AlgebraId::A1, 1..=4), vec![0, 1, 0, 1]);
    }

    #[test]
    fn parse_algebra_ids() {
        assert_eq!("g2".parse::<AlgebraId>().unwrap(), AlgebraId::G2);
        assert!("B2".parse::<AlgebraId>().is_err());
    }
}
