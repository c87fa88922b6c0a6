//! A prosoluble group `G = (prod_w N_w) x| H` with `N_w = Z_p^3` for a distinct
//! odd prime per index `w`, and `H` elementary abelian of rank `2t`.
//!
//! Indices `w` range over `Omega`, the vectors of `F_2^{2t}` with no zero
//! block `(x_{2i-1}, x_{2i})`. The basis element `y_i` of `H` negates the third
//! coordinate of `N_w` iff `x_i = 1`. p-adic coordinates are represented by
//! integers; a nonzero integer determinant certifies finite index in `Z_p^3`
//! for every odd `p`.
//!
//! Bit vectors of length `2t` are stored in a `u32` with coordinate 1 as the
//! most significant of the `2t` bits, so numeric order is lexicographic order.

use std::fmt;
use std::ops::Add;
use std::str::FromStr;
use std::sync::Arc;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::{Serialize, Serializer};
use thiserror::Error;

use crate::dsu::DisjointSets;
use crate::group::{FiniteGroup, GroupError};
use crate::Caps;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum ConstructionError {
    #[error("elements belong to constructions with t = {0} and t = {1}")]
    MismatchedT(usize, usize),
    #[error("{what} supports t <= {max}, got {t}")]
    TooLarge {
        what: &'static str,
        t: usize,
        max: usize,
    },
    #[error("{0}")]
    Precondition(String),
    #[error(transparent)]
    Group(#[from] GroupError),
}

type Result<T> = std::result::Result<T, ConstructionError>;

/// Largest `t` accepted anywhere (bit vectors must fit in a `u32`).
pub const MAX_T: usize = 8;

/// A vector of `F_2^{2t}`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Bits {
    pub t: usize,
    pub bits: u32,
}

pub type HVec = Bits;
pub type OmegaTuple = Bits;

impl Bits {
    pub fn new(t: usize, bits: u32) -> Self {
        debug_assert!(t <= MAX_T && (bits as u64) < (1u64 << (2 * t)));
        Self { t, bits }
    }

    pub fn zero(t: usize) -> Self {
        Self::new(t, 0)
    }

    /// The basis vector `y_i`, `1 <= i <= 2t`.
    pub fn basis(t: usize, i: usize) -> Self {
        assert!((1..=2 * t).contains(&i));
        Self::new(t, 1 << (2 * t - i))
    }

    pub fn from_slice(coeffs: &[u8]) -> Self {
        assert!(coeffs.len().is_multiple_of(2));
        let t = coeffs.len() / 2;
        Self::new(
            t,
            coeffs.iter().fold(0, |acc, &c| (acc << 1) | (c & 1) as u32),
        )
    }

    /// Coefficient of `y_i`, `1 <= i <= 2t`.
    pub fn get(&self, i: usize) -> u8 {
        ((self.bits >> (2 * self.t - i)) & 1) as u8
    }

    pub fn to_vec(&self) -> Vec<u8> {
        (1..=2 * self.t).map(|i| self.get(i)).collect()
    }

    pub fn is_zero(&self) -> bool {
        self.bits == 0
    }

    /// Inner product over `F_2`.
    pub fn dot(&self, other: &Self) -> u8 {
        ((self.bits & other.bits).count_ones() & 1) as u8
    }

    /// The two bits of block `i`, `1 <= i <= t`.
    pub fn block(&self, i: usize) -> (u8, u8) {
        (self.get(2 * i - 1), self.get(2 * i))
    }

    fn block_mask(t: usize, i: usize) -> u32 {
        0b11 << (2 * t - 2 * i)
    }

    /// The block whose span `<y_{2i-1}, y_{2i}>` contains this nonzero vector.
    pub fn single_block(&self) -> Option<usize> {
        (1..=self.t).find(|&i| self.bits != 0 && self.bits & !Self::block_mask(self.t, i) == 0)
    }
}

impl fmt::Display for Bits {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for b in self.to_vec() {
            write!(f, "{b}")?;
        }
        Ok(())
    }
}

/// Addition over `F_2`.
impl Add for Bits {
    type Output = Bits;

    #[allow(clippy::suspicious_arithmetic_impl)]
    fn add(self, other: Self) -> Self {
        Self::new(self.t, self.bits ^ other.bits)
    }
}

impl Serialize for Bits {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.collect_str(self)
    }
}

/// Elements of `Omega` in lexicographic order.
pub fn omega(t: usize) -> Vec<OmegaTuple> {
    assert!((1..=MAX_T).contains(&t));
    (0..1u32 << (2 * t))
        .map(|b| Bits::new(t, b))
        .filter(|w| (1..=t).all(|i| w.block(i) != (0, 0)))
        .collect()
}

/// The first `count` odd primes.
pub fn odd_primes(count: usize) -> Vec<u64> {
    let mut primes: Vec<u64> = Vec::with_capacity(count);
    let mut n = 3u64;
    while primes.len() < count {
        if primes
            .iter()
            .take_while(|&&p| p * p <= n)
            .all(|&p| !n.is_multiple_of(p))
        {
            primes.push(n);
        }
        n += 2;
    }
    primes
}

/// `Omega` together with its prime assignment, aligned by index.
#[derive(Clone, Debug)]
pub struct PrimeMap {
    pub omega: Vec<OmegaTuple>,
    pub primes: Vec<u64>,
}

impl PrimeMap {
    pub fn new(t: usize) -> Self {
        let omega = omega(t);
        let primes = odd_primes(omega.len());
        Self { omega, primes }
    }
}

/// Which constant is used for the even-indexed generators.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Default)]
#[serde(rename_all = "kebab-case")]
pub enum Variant {
    /// `w = (1, 0, -1)`; selected with `paper` or `paper-literal`.
    #[serde(rename = "paper")]
    Literal,
    /// `w = (0, 1, -1)`.
    #[default]
    Corrected,
}

impl Variant {
    pub fn w(self) -> [i64; 3] {
        match self {
            Variant::Literal => [1, 0, -1],
            Variant::Corrected => [0, 1, -1],
        }
    }
}

pub const V: [i64; 3] = [1, 0, 1];

impl FromStr for Variant {
    type Err = ConstructionError;
    fn from_str(s: &str) -> Result<Self> {
        match s {
            "paper" | "paper-literal" => Ok(Variant::Literal),
            "corrected" => Ok(Variant::Corrected),
            _ => Err(ConstructionError::Precondition(format!(
                "unknown variant '{s}'"
            ))),
        }
    }
}

impl fmt::Display for Variant {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Variant::Literal => "paper",
            Variant::Corrected => "corrected",
        })
    }
}

/// An element `n h` of `G`, with one integer triple per `Omega` index.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize)]
pub struct GSym {
    pub nparts: Vec<[i64; 3]>,
    pub h: HVec,
}

fn act(n: [i64; 3], h: &HVec, w: &OmegaTuple) -> [i64; 3] {
    if h.dot(w) == 1 {
        [n[0], n[1], -n[2]]
    } else {
        n
    }
}

fn add3(a: [i64; 3], b: [i64; 3]) -> [i64; 3] {
    [a[0] + b[0], a[1] + b[1], a[2] + b[2]]
}

fn neg3(a: [i64; 3]) -> [i64; 3] {
    [-a[0], -a[1], -a[2]]
}

impl GSym {
    pub fn t(&self) -> usize {
        self.h.t
    }

    pub fn identity(t: usize) -> Self {
        Self {
            nparts: vec![[0; 3]; omega(t).len()],
            h: HVec::zero(t),
        }
    }

    /// The same triple at every index.
    pub fn constant(t: usize, n: [i64; 3], h: HVec) -> Self {
        Self {
            nparts: vec![n; omega(t).len()],
            h,
        }
    }

    fn same_t(&self, other: &GSym) -> Result<()> {
        if self.t() != other.t() {
            return Err(ConstructionError::MismatchedT(self.t(), other.t()));
        }
        Ok(())
    }

    /// `(n1, h1)(n2, h2) = (n1 + n2^h1, h1 + h2)`.
    pub fn mul(&self, other: &GSym) -> Result<GSym> {
        self.same_t(other)?;
        let om = omega(self.t());
        let nparts = (0..om.len())
            .map(|k| add3(self.nparts[k], act(other.nparts[k], &self.h, &om[k])))
            .collect();
        Ok(GSym {
            nparts,
            h: self.h.add(other.h),
        })
    }

    pub fn inv(&self) -> GSym {
        let om = omega(self.t());
        let nparts = (0..om.len())
            .map(|k| neg3(act(self.nparts[k], &self.h, &om[k])))
            .collect();
        GSym { nparts, h: self.h }
    }

    pub fn square(&self) -> GSym {
        self.mul(self).expect("same t")
    }

    /// `a^-1 b^-1 a b`.
    pub fn commutator(&self, other: &GSym) -> Result<GSym> {
        self.inv().mul(&other.inv())?.mul(self)?.mul(other)
    }

    pub fn is_identity(&self) -> bool {
        self.h.is_zero() && self.nparts.iter().all(|n| *n == [0; 3])
    }
}

/// `sigma_1 .. sigma_{2t}`: `v y_{2i-1}` and `w y_{2i}` with constant parts.
pub fn sigma(t: usize, variant: Variant) -> Vec<GSym> {
    (1..=2 * t)
        .map(|i| {
            GSym::constant(
                t,
                if i % 2 == 1 { V } else { variant.w() },
                HVec::basis(t, i),
            )
        })
        .collect()
}

/// Brute force: some `w` in `Omega` with `<h1, w> = <h2, w> = 0`.
pub fn system_solvable(h1: HVec, h2: HVec, t: usize) -> Result<bool> {
    if t > MAX_T {
        return Err(ConstructionError::TooLarge {
            what: "system_solvable",
            t,
            max: MAX_T,
        });
    }
    Ok(omega(t).iter().any(|w| h1.dot(w) == 0 && h2.dot(w) == 0))
}

/// Some block `i` has `C_i` invertible over `F_2` and `D_i = 0`, where `C_i`
/// holds the block-`i` coefficients of `h1`, `h2` and `D_i` all the others.
pub fn matrix_criterion(h1: HVec, h2: HVec, t: usize) -> bool {
    (1..=t).any(|i| {
        let (a1, a2) = h1.block(i);
        let (b1, b2) = h2.block(i);
        let invertible = (a1 & b2) ^ (a2 & b1) == 1;
        let mask = Bits::block_mask(t, i);
        invertible && (h1.bits | h2.bits) & !mask == 0
    })
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CondiReport {
    /// The block `i` with `h` in `<y_{2i-1}, y_{2i}>`, when there is one.
    pub block: Option<usize>,
    pub pass: bool,
    pub reasons: Vec<String>,
}

/// The three necessary conditions for `g` to be non-isolated: `h != 1`,
/// `(z1, z2) != (0, 0)` everywhere, and `z3 != 0` wherever `h` acts trivially.
pub fn condi_check(g: &GSym) -> CondiReport {
    let om = omega(g.t());
    let mut reasons = Vec::new();
    if g.h.is_zero() {
        reasons.push("(1) h is trivial".to_string());
    }
    for (k, w) in om.iter().enumerate() {
        let n = g.nparts[k];
        if n[0] == 0 && n[1] == 0 {
            reasons.push(format!("(2) (z1, z2) = (0, 0) at {w}"));
        }
        if g.h.dot(w) == 0 && n[2] == 0 {
            reasons.push(format!("(3) h centralizes N at {w} but z3 = 0"));
        }
    }
    CondiReport {
        block: g.h.single_block(),
        pass: reasons.is_empty(),
        reasons,
    }
}

pub fn det3(m: [[i64; 3]; 3]) -> i64 {
    m[0][0] * (m[1][1] * m[2][2] - m[1][2] * m[2][1])
        - m[0][1] * (m[1][0] * m[2][2] - m[1][2] * m[2][0])
        + m[0][2] * (m[1][0] * m[2][1] - m[1][1] * m[2][0])
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct OpennessWitness {
    pub pass: bool,
    pub criterion: bool,
    /// Per `Omega` index: determinant of the rows `g1^2`, `g2^2`, `[g1, g2]`.
    pub determinants: Vec<i64>,
}

/// Sufficient certificate that `<g1, g2>` is open.
pub fn openness_witness(g1: &GSym, g2: &GSym) -> Result<OpennessWitness> {
    g1.same_t(g2)?;
    let (s1, s2, c) = (g1.square(), g2.square(), g1.commutator(g2)?);
    let determinants: Vec<i64> = (0..s1.nparts.len())
        .map(|k| det3([s1.nparts[k], s2.nparts[k], c.nparts[k]]))
        .collect();
    let criterion = matrix_criterion(g1.h, g2.h, g1.t());
    let pass = criterion && determinants.iter().all(|&d| d != 0);
    Ok(OpennessWitness {
        pass,
        criterion,
        determinants,
    })
}

fn gcd(a: i64, b: i64) -> i64 {
    if b == 0 {
        a.abs()
    } else {
        gcd(b, a % b)
    }
}

/// `(1,0)`, `(0,1)`, then coprime `(a, b)` with `a, b >= 1` by `a + b`, then `a`.
fn plane_candidates() -> impl Iterator<Item = (i64, i64)> {
    [(1, 0), (0, 1)].into_iter().chain(
        (2i64..)
            .flat_map(|s| (1..s).map(move |a| (a, s - a)))
            .filter(|&(a, b)| gcd(a, b) == 1),
    )
}

/// A vertex adjacent to both `g1` and `g2`, which must satisfy the three
/// conditions and lie in the same block.
pub fn common_neighbor(g1: &GSym, g2: &GSym) -> Result<GSym> {
    g1.same_t(g2)?;
    let (c1, c2) = (condi_check(g1), condi_check(g2));
    if !c1.pass || !c2.pass {
        return Err(ConstructionError::Precondition(
            "both elements must satisfy the three conditions".into(),
        ));
    }
    let block = match (c1.block, c2.block) {
        (Some(a), Some(b)) if a == b => a,
        _ => {
            return Err(ConstructionError::Precondition(
                "elements must lie in the same block".into(),
            ))
        }
    };
    let t = g1.t();
    let (ya, yb) = (HVec::basis(t, 2 * block - 1), HVec::basis(t, 2 * block));
    let mut span = [yb, ya, ya.add(yb)];
    span.sort();
    let h = span
        .into_iter()
        .find(|&h| h != g1.h && h != g2.h)
        .expect("a 4-element group minus 3 elements is nonempty");
    let om = omega(t);
    let nparts = om
        .iter()
        .enumerate()
        .map(|(k, w)| {
            let (n1, n2) = (g1.nparts[k], g2.nparts[k]);
            let (z1, z2) = plane_candidates()
                .find(|&(a, b)| a * n1[1] - b * n1[0] != 0 && a * n2[1] - b * n2[0] != 0)
                .unwrap();
            let forbidden: Vec<i64> = if h.dot(w) == 0 {
                vec![0]
            } else {
                vec![n1[2], n2[2]]
            };
            let z3 = (0..).find(|z| !forbidden.contains(z)).unwrap();
            [z1, z2, z3]
        })
        .collect();
    let g = GSym { nparts, h };
    for other in [g1, g2] {
        if !openness_witness(other, &g)?.pass {
            return Err(ConstructionError::Precondition(
                "constructed neighbor has no openness witness".into(),
            ));
        }
    }
    Ok(g)
}

/// What the images of two elements generate inside `Z_p^3 x| K`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct QuotientImage {
    pub p: u64,
    /// Size of the intersection of the closure with `Z_p^3`.
    pub n_part: usize,
    pub contains_n: bool,
    /// Every element of that intersection has second coordinate 0.
    pub second_coordinate_zero: bool,
}

/// Whether the images of `g1` and `g2` in `Z_p^3 x| K` generate a subgroup
/// containing all of `Z_p^3`.
pub fn finite_quotient_generates(g1: &GSym, g2: &GSym, omega_index: usize, p: u64) -> Result<bool> {
    Ok(finite_quotient_image(g1, g2, omega_index, p)?.contains_n)
}

/// Builds `Z_p^3 x| K` for `K = <h1, h2>` acting as at one `Omega` index and
/// describes the closure of the images of `g1` and `g2`.
pub fn finite_quotient_image(
    g1: &GSym,
    g2: &GSym,
    omega_index: usize,
    p: u64,
) -> Result<QuotientImage> {
    let prime = p;
    g1.same_t(g2)?;
    let w = omega(g1.t())[omega_index];
    let caps = Caps::default();
    let p = p as usize;
    // Z_p^3 with id z1 + p z2 + p^2 z3.
    let q = p * p * p;
    let coords = |id: usize| [id % p, (id / p) % p, id / (p * p)];
    let id_of = |z: [usize; 3]| z[0] + p * z[1] + p * p * z[2];
    let mut table = vec![0u32; q * q];
    for a in 0..q {
        let za = coords(a);
        for b in 0..q {
            let zb = coords(b);
            table[a * q + b] = id_of([
                (za[0] + zb[0]) % p,
                (za[1] + zb[1]) % p,
                (za[2] + zb[2]) % p,
            ]) as u32;
        }
    }
    let names: Vec<String> = (0..q).map(|i| format!("{:?}", coords(i))).collect();
    let normal = Arc::new(FiniteGroup::from_table(
        format!("Z{p}^3"),
        table,
        names,
        vec![1, p, p * p],
        caps,
    ));

    // K as F_2^r over a basis drawn from {h1, h2}.
    let mut basis: Vec<HVec> = Vec::new();
    for h in [g1.h, g2.h] {
        let spanned = (0..1u32 << basis.len()).any(|m| {
            basis
                .iter()
                .enumerate()
                .filter(|(j, _)| m >> j & 1 == 1)
                .fold(HVec::zero(g1.t()), |acc, (_, b)| acc.add(*b))
                == h
        });
        if !spanned {
            basis.push(h);
        }
    }
    let r = basis.len();
    let k_order = 1usize << r;
    let k_table: Vec<u32> = (0..k_order * k_order)
        .map(|i| ((i / k_order) ^ (i % k_order)) as u32)
        .collect();
    let k_vec = |id: usize| {
        basis
            .iter()
            .enumerate()
            .filter(|(j, _)| id >> j & 1 == 1)
            .fold(HVec::zero(g1.t()), |acc, (_, b)| acc.add(*b))
    };
    let k_id = |h: HVec| (0..k_order).find(|&i| k_vec(i) == h).expect("h lies in K");
    let k_names: Vec<String> = (0..k_order).map(|i| format!("k{i}")).collect();
    let top = Arc::new(FiniteGroup::from_table(
        "K".into(),
        k_table,
        k_names,
        (0..r).map(|j| 1 << j).collect(),
        caps,
    ));

    let action = |h: usize, n: usize| {
        let z = coords(n);
        if k_vec(h).dot(&w) == 1 {
            id_of([z[0], z[1], (p - z[2]) % p])
        } else {
            n
        }
    };
    let g = FiniteGroup::semidirect_product(
        normal.clone(),
        top.clone(),
        action,
        format!("Z{p}^3 x| K"),
        &caps,
    )?;
    let lookup = |n: usize, h: usize| {
        g.element(&format!("({}; {})", normal.describe(n), top.describe(h)))
            .expect("element present")
    };
    let reduce = |x: i64| x.rem_euclid(p as i64) as usize;
    let image = |s: &GSym| {
        let n = s.nparts[omega_index];
        lookup(id_of([reduce(n[0]), reduce(n[1]), reduce(n[2])]), k_id(s.h))
    };
    let closure = g.closure(&[image(g1), image(g2)])?;
    let n_part: Vec<usize> = (0..q).filter(|&n| closure.contains(lookup(n, 0))).collect();
    Ok(QuotientImage {
        p: prime,
        n_part: n_part.len(),
        contains_n: n_part.len() == q,
        second_coordinate_zero: n_part.iter().all(|&n| coords(n)[1] == 0),
    })
}

#[derive(Clone, Debug, Serialize)]
pub struct Ro1Ro2Entry {
    pub omega: OmegaTuple,
    pub block: usize,
    pub determinant: i64,
    pub symbolic: bool,
    pub finite: Vec<QuotientImage>,
}

#[derive(Clone, Debug, Serialize)]
pub struct Ro1Ro2Report {
    pub t: usize,
    pub variant: Variant,
    pub symbolic_pass: bool,
    pub finite_pass: bool,
    pub entries: Vec<Ro1Ro2Entry>,
}

pub const RO1RO2_PRIMES: [u64; 3] = [3, 5, 7];

/// Checks, for every index `w` and block `i`, that `<v y_{2i-1}, w y_{2i}>`
/// contains `N_w`: symbolically by a determinant at `w`, and in the finite
/// quotients with `p` in {3, 5, 7}.
pub fn ro1ro2_verify(t: usize, variant: Variant) -> Result<Ro1Ro2Report> {
    if t > 3 {
        return Err(ConstructionError::TooLarge {
            what: "ro1ro2_verify",
            t,
            max: 3,
        });
    }
    let s = sigma(t, variant);
    let om = omega(t);
    let jobs: Vec<(usize, usize)> = (0..om.len())
        .flat_map(|k| (1..=t).map(move |i| (k, i)))
        .collect();
    let entries = jobs
        .into_par_iter()
        .map(|(k, i)| {
            let (a, b) = (&s[2 * i - 2], &s[2 * i - 1]);
            let c = a.commutator(b)?;
            let determinant = det3([a.square().nparts[k], b.square().nparts[k], c.nparts[k]]);
            let finite = RO1RO2_PRIMES
                .iter()
                .map(|&p| finite_quotient_image(a, b, k, p))
                .collect::<Result<Vec<_>>>()?;
            Ok(Ro1Ro2Entry {
                omega: om[k],
                block: i,
                determinant,
                symbolic: determinant != 0,
                finite,
            })
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(Ro1Ro2Report {
        t,
        variant,
        symbolic_pass: entries.iter().all(|e| e.symbolic),
        finite_pass: entries
            .iter()
            .all(|e| e.finite.iter().all(|f| f.contains_n)),
        entries,
    })
}

/// Index of `<y_{2i-1}, y_{2i}>` in `H`, by counting.
pub fn block_index(t: usize) -> u64 {
    let block = (0..1u32 << (2 * t))
        .filter(|&b| b & !Bits::block_mask(t, 1) == 0)
        .count() as u64;
    (1u64 << (2 * t)) / block
}

#[derive(Clone, Debug, Serialize)]
pub struct CensusReport {
    pub t: usize,
    pub variant: Variant,
    pub seed: u64,
    pub samples_per_block: usize,
    pub block_index: u64,
    /// Vertices per block, including the two generators of each block.
    pub block_sizes: Vec<usize>,
    pub cross_block_pairs: usize,
    /// Cross-block pairs satisfying the matrix criterion (adjacency possible).
    pub cross_block_violations: usize,
    pub same_block_pairs: usize,
    /// Same-block pairs with an openness witness of their own.
    pub direct_edges: usize,
    /// Same-block pairs joined through a constructed common neighbor.
    pub common_neighbor_successes: usize,
    pub common_neighbor_failures: usize,
    /// Whether each block's generator pair has a passing openness witness.
    pub generator_edges: Vec<bool>,
    pub components: usize,
    pub pass: bool,
}

/// A random element of block `i` with coordinates in [-5, 5], satisfying the
/// three conditions by rejection per index.
pub fn sample_block_element(t: usize, block: usize, rng: &mut impl Rng) -> GSym {
    let (ya, yb) = (HVec::basis(t, 2 * block - 1), HVec::basis(t, 2 * block));
    let h = [ya, yb, ya.add(yb)][rng.gen_range(0..3)];
    let nparts = omega(t)
        .iter()
        .map(|w| loop {
            let n = [
                rng.gen_range(-5..=5),
                rng.gen_range(-5..=5),
                rng.gen_range(-5..=5),
            ];
            if (n[0], n[1]) != (0, 0) && (h.dot(w) == 1 || n[2] != 0) {
                break n;
            }
        })
        .collect();
    GSym { nparts, h }
}

/// Samples vertices per block and checks that blocks never touch while any
/// two vertices of one block share a constructed neighbor; the number of
/// components of the resulting graph should be `t`.
pub fn component_census(
    t: usize,
    samples: usize,
    seed: u64,
    variant: Variant,
) -> Result<CensusReport> {
    if !(1..=4).contains(&t) {
        return Err(ConstructionError::TooLarge {
            what: "component_census",
            t,
            max: 4,
        });
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let gens = sigma(t, variant);
    let mut vertices: Vec<(usize, GSym)> = Vec::new();
    for i in 1..=t {
        vertices.push((i, gens[2 * i - 2].clone()));
        vertices.push((i, gens[2 * i - 1].clone()));
        for _ in 0..samples {
            vertices.push((i, sample_block_element(t, i, &mut rng)));
        }
    }
    for (_, v) in &vertices {
        if !condi_check(v).pass {
            return Err(ConstructionError::Precondition(
                "sampled vertex fails the conditions".into(),
            ));
        }
    }
    let n = vertices.len();
    let pairs: Vec<(usize, usize)> = (0..n)
        .flat_map(|a| (a + 1..n).map(move |b| (a, b)))
        .collect();
    // Per pair: (same block, direct edge, common neighbor found, criterion).
    let outcomes: Vec<(bool, bool, bool, bool)> = pairs
        .par_iter()
        .map(|&(a, b)| {
            let ((ba, ga), (bb, gb)) = (&vertices[a], &vertices[b]);
            let criterion = matrix_criterion(ga.h, gb.h, t);
            if ba != bb {
                return (false, false, false, criterion);
            }
            let direct = openness_witness(ga, gb).map(|w| w.pass).unwrap_or(false);
            (true, direct, common_neighbor(ga, gb).is_ok(), criterion)
        })
        .collect();
    let mut dsu = DisjointSets::new(n);
    let mut report = CensusReport {
        t,
        variant,
        seed,
        samples_per_block: samples,
        block_index: block_index(t),
        block_sizes: (1..=t)
            .map(|i| vertices.iter().filter(|v| v.0 == i).count())
            .collect(),
        cross_block_pairs: 0,
        cross_block_violations: 0,
        same_block_pairs: 0,
        direct_edges: 0,
        common_neighbor_successes: 0,
        common_neighbor_failures: 0,
        generator_edges: (1..=t)
            .map(|i| {
                openness_witness(&gens[2 * i - 2], &gens[2 * i - 1])
                    .map(|w| w.pass)
                    .unwrap_or(false)
            })
            .collect(),
        components: 0,
        pass: false,
    };
    for (&(a, b), &(same, direct, common, criterion)) in pairs.iter().zip(&outcomes) {
        if same {
            report.same_block_pairs += 1;
            report.direct_edges += direct as usize;
            if common {
                report.common_neighbor_successes += 1;
                dsu.union(a, b);
            } else {
                report.common_neighbor_failures += 1;
            }
            if direct {
                dsu.union(a, b);
            }
        } else {
            report.cross_block_pairs += 1;
            if criterion {
                report.cross_block_violations += 1;
                dsu.union(a, b);
            }
        }
    }
    report.components = dsu.groups(0..n).len();
    report.pass = report.components == t
        && report.cross_block_violations == 0
        && report.common_neighbor_failures == 0;
    Ok(report)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn omega_and_primes() {
        assert_eq!(
            omega(1).iter().map(|w| w.to_string()).collect::<Vec<_>>(),
            vec!["01", "10", "11"]
        );
        assert_eq!(omega(3).len(), 27);
        assert_eq!(odd_primes(5), vec![3, 5, 7, 11, 13]);
        let pm = PrimeMap::new(2);
        assert_eq!(pm.primes.len(), 9);
        assert_eq!(pm.primes[8], 29);
        assert_eq!(Bits::basis(2, 1).to_string(), "1000");
        assert_eq!(Bits::from_slice(&[0, 1, 0, 1]).bits, 0b0101);
    }

    #[test]
    fn algebra_examples() {
        let t = 1;
        let s = sigma(t, Variant::Literal);
        let om = omega(t);
        let k11 = om.iter().position(|w| w.to_string() == "11").unwrap();
        let k10 = om.iter().position(|w| w.to_string() == "10").unwrap();
        assert_eq!(s[0].square().nparts[k11], [2, 0, 0]);
        assert_eq!(s[0].commutator(&s[1]).unwrap().nparts[k11], [0, 0, 4]);
        assert_eq!(s[0].commutator(&s[1]).unwrap().nparts[k10], [0, 0, -2]);
        for (k, w) in om.iter().enumerate() {
            // rho_1^2 = (2, 0, 0^{x_1} 2) and rho_2^2 = (2, 0, -0^{x_2} 2).
            let zero_pow = |x: u8| if x == 0 { 1 } else { 0 };
            assert_eq!(s[0].square().nparts[k], [2, 0, 2 * zero_pow(w.get(1))]);
            assert_eq!(s[1].square().nparts[k], [2, 0, -2 * zero_pow(w.get(2))]);
        }
        let g = &sigma(2, Variant::Corrected)[3];
        assert!(g.mul(&g.inv()).unwrap().is_identity());
        assert!(s[0].mul(&sigma(2, Variant::Literal)[0]).is_err());
    }

    #[test]
    fn squares_and_commutators_land_in_n() {
        let mut rng = ChaCha8Rng::seed_from_u64(7);
        for _ in 0..200 {
            let a = sample_block_element(2, rng.gen_range(1..=2), &mut rng);
            let b = sample_block_element(2, rng.gen_range(1..=2), &mut rng);
            assert!(a.square().h.is_zero());
            assert!(a.commutator(&b).unwrap().h.is_zero());
            assert_eq!(a.mul(&b).unwrap().mul(&b.inv()).unwrap(), a);
        }
    }

    #[test]
    fn sigma_examples() {
        let s = sigma(1, Variant::Literal);
        assert!(s[0].nparts.iter().all(|n| *n == [1, 0, 1]));
        assert_eq!(s[0].h, HVec::basis(1, 1));
        let c = sigma(1, Variant::Corrected);
        assert!(c[1].nparts.iter().all(|n| *n == [0, 1, -1]));
        assert_eq!(sigma(2, Variant::Corrected).len(), 4);
    }

    #[test]
    fn solvability_examples() {
        let b = |v: &[u8]| Bits::from_slice(v);
        assert!(!system_solvable(b(&[1, 0]), b(&[0, 1]), 1).unwrap());
        assert!(system_solvable(b(&[1, 1]), b(&[1, 1]), 1).unwrap());
        assert!(system_solvable(HVec::basis(2, 1), HVec::basis(2, 3), 2).unwrap());
        assert!(matrix_criterion(b(&[1, 0]), b(&[0, 1]), 1));
        assert!(!matrix_criterion(b(&[1, 0]), b(&[1, 0]), 1));
        assert!(matrix_criterion(HVec::basis(2, 1), HVec::basis(2, 2), 2));
        let big = Bits { t: 9, bits: 0 };
        assert!(system_solvable(big, big, 9).is_err());
    }

    #[test]
    fn condi_examples() {
        let s = sigma(1, Variant::Corrected);
        let r = condi_check(&s[0]);
        assert_eq!((r.block, r.pass), (Some(1), true));
        let trivial = GSym::constant(1, [1, 0, 1], HVec::zero(1));
        assert!(!condi_check(&trivial).pass);
        let bad = GSym::constant(1, [0, 0, 5], HVec::basis(1, 1));
        let r = condi_check(&bad);
        assert!(!r.pass && r.reasons.iter().any(|m| m.starts_with("(2)")));
        assert_eq!(
            condi_check(&GSym::constant(
                2,
                [1, 0, 1],
                HVec::from_slice(&[1, 0, 1, 0])
            ))
            .block,
            None
        );
    }

    #[test]
    fn witness_examples() {
        let c = sigma(1, Variant::Corrected);
        let w = openness_witness(&c[0], &c[1]).unwrap();
        assert!(w.pass);
        assert!(w.determinants.iter().all(|d| [8, 16].contains(&d.abs())));
        let p = sigma(1, Variant::Literal);
        let w = openness_witness(&p[0], &p[1]).unwrap();
        assert!(!w.pass && w.determinants.iter().all(|&d| d == 0));
        assert!(!openness_witness(&c[0], &c[0]).unwrap().pass);
    }

    #[test]
    fn ro1ro2_examples() {
        let r = ro1ro2_verify(1, Variant::Corrected).unwrap();
        assert!(r.symbolic_pass && r.finite_pass);
        let r = ro1ro2_verify(1, Variant::Literal).unwrap();
        assert!(!r.symbolic_pass && !r.finite_pass);
        assert!(r.entries.iter().all(|e| e
            .finite
            .iter()
            .all(|f| !f.contains_n && f.second_coordinate_zero)));
    }

    #[test]
    fn common_neighbor_examples() {
        let c = sigma(1, Variant::Corrected);
        let g = common_neighbor(&c[0], &c[1]).unwrap();
        assert_eq!(g.h, HVec::from_slice(&[1, 1]));
        assert!(
            openness_witness(&c[0], &g).unwrap().pass && openness_witness(&c[1], &g).unwrap().pass
        );
        assert_eq!(condi_check(&g).block, Some(1));

        let c2 = sigma(2, Variant::Corrected);
        assert!(common_neighbor(&c2[0], &c2[2]).is_err());
        let g = common_neighbor(&c2[2], &c2[2]).unwrap();
        assert!(openness_witness(&c2[2], &g).unwrap().pass);
    }

    #[test]
    fn census_small() {
        let r = component_census(1, 20, 1, Variant::Corrected).unwrap();
        assert!(r.pass, "{r:?}");
        assert_eq!(r.components, 1);
        let r = component_census(2, 15, 2, Variant::Corrected).unwrap();
        assert!(r.pass, "{r:?}");
        assert_eq!((r.components, r.block_index), (2, 4));
        assert!(component_census(5, 1, 0, Variant::Corrected).is_err());
    }

    #[test]
    fn plane_candidate_order() {
        let first: Vec<_> = plane_candidates().take(6).collect();
        assert_eq!(first, vec![(1, 0), (0, 1), (1, 1), (1, 2), (2, 1), (1, 3)]);
    }
}
