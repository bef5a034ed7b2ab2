//! Integer symplectic 4×4 matrices, congruence subgroups and their characters.

use std::fmt;
use std::ops::Mul;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::chargeom::{odd_permutation_sign, Mat4F2};
use crate::error::{Error, Result};

pub type Mat2 = [[i64; 2]; 2];

pub fn mul2(x: &Mat2, y: &Mat2) -> Mat2 {
    [
        [x[0][0] * y[0][0] + x[0][1] * y[1][0], x[0][0] * y[0][1] + x[0][1] * y[1][1]],
        [x[1][0] * y[0][0] + x[1][1] * y[1][0], x[1][0] * y[0][1] + x[1][1] * y[1][1]],
    ]
}

pub fn transpose2(x: &Mat2) -> Mat2 {
    [[x[0][0], x[1][0]], [x[0][1], x[1][1]]]
}

pub fn det2(x: &Mat2) -> i64 {
    x[0][0] * x[1][1] - x[0][1] * x[1][0]
}

const E2: Mat2 = [[1, 0], [0, 1]];
const O2: Mat2 = [[0, 0], [0, 0]];

/// `(A B; C D)` with `ᵗM I M = I`, `I = (0 −E; E 0)`.
#[derive(Clone, Copy, PartialEq, Eq, Hash)]
pub struct SpMat([[i64; 4]; 4]);

fn mul4(x: &[[i64; 4]; 4], y: &[[i64; 4]; 4]) -> [[i64; 4]; 4] {
    let mut m = [[0i64; 4]; 4];
    for (i, row) in m.iter_mut().enumerate() {
        for (j, v) in row.iter_mut().enumerate() {
            *v = (0..4).map(|k| x[i][k] * y[k][j]).sum();
        }
    }
    m
}

fn transpose4(x: &[[i64; 4]; 4]) -> [[i64; 4]; 4] {
    let mut m = [[0i64; 4]; 4];
    for (i, row) in m.iter_mut().enumerate() {
        for (j, v) in row.iter_mut().enumerate() {
            *v = x[j][i];
        }
    }
    m
}

const I4: [[i64; 4]; 4] = [[0, 0, -1, 0], [0, 0, 0, -1], [1, 0, 0, 0], [0, 1, 0, 0]];

pub fn is_symplectic(m: &[[i64; 4]; 4]) -> bool {
    mul4(&mul4(&transpose4(m), &I4), m) == I4
}

impl SpMat {
    pub fn new(m: [[i64; 4]; 4]) -> Result<Self> {
        if is_symplectic(&m) {
            Ok(SpMat(m))
        } else {
            Err(Error::NotSymplectic)
        }
    }

    pub fn from_blocks(a: Mat2, b: Mat2, c: Mat2, d: Mat2) -> Result<Self> {
        let mut m = [[0i64; 4]; 4];
        for i in 0..2 {
            for j in 0..2 {
                m[i][j] = a[i][j];
                m[i][j + 2] = b[i][j];
                m[i + 2][j] = c[i][j];
                m[i + 2][j + 2] = d[i][j];
            }
        }
        SpMat::new(m)
    }

    pub fn identity() -> Self {
        SpMat::from_blocks(E2, O2, O2, E2).expect("identity")
    }

    /// The full inversion `I = (0 −E; E 0)`.
    pub fn inversion() -> Self {
        SpMat(I4)
    }

    /// `(E S; 0 E)` for symmetric `S`.
    pub fn translation(s: Mat2) -> Result<Self> {
        SpMat::from_blocks(E2, s, O2, E2)
    }

    /// `(E 0; C E)` for symmetric `C`.
    pub fn lower(c: Mat2) -> Result<Self> {
        SpMat::from_blocks(E2, O2, c, E2)
    }

    /// `(U 0; 0 ᵗU⁻¹)` for unimodular `U`.
    pub fn unimodular(u: Mat2) -> Result<Self> {
        let d = det2(&u);
        if d.abs() != 1 {
            return Err(Error::NotUnimodular(d));
        }
        let inv = [[u[1][1] * d, -u[0][1] * d], [-u[1][0] * d, u[0][0] * d]];
        SpMat::from_blocks(u, O2, O2, transpose2(&inv))
    }

    /// Inversion in the `i`-th coordinate only (`i` = 0 or 1).
    pub fn partial_inversion(i: usize) -> Self {
        let mut m = [[0i64; 4]; 4];
        let j = 1 - i;
        m[j][j] = 1;
        m[j + 2][j + 2] = 1;
        m[i][i + 2] = -1;
        m[i + 2][i] = 1;
        SpMat::new(m).expect("partial inversion")
    }

    pub fn entries(&self) -> &[[i64; 4]; 4] {
        &self.0
    }

    fn block(&self, r: usize, c: usize) -> Mat2 {
        [[self.0[2 * r][2 * c], self.0[2 * r][2 * c + 1]], [self.0[2 * r + 1][2 * c], self.0[2 * r + 1][2 * c + 1]]]
    }

    pub fn a(&self) -> Mat2 {
        self.block(0, 0)
    }

    pub fn b(&self) -> Mat2 {
        self.block(0, 1)
    }

    pub fn c(&self) -> Mat2 {
        self.block(1, 0)
    }

    pub fn d(&self) -> Mat2 {
        self.block(1, 1)
    }

    /// `M⁻¹ = I⁻¹ ᵗM I`.
    pub fn inverse(&self) -> SpMat {
        let i_inv = transpose4(&I4);
        SpMat(mul4(&mul4(&i_inv, &transpose4(&self.0)), &I4))
    }

    pub fn mod2(&self) -> Mat4F2 {
        Mat4F2::from_int(&self.0)
    }

    pub fn is_plus_minus_identity(&self) -> bool {
        let id = SpMat::identity().0;
        self.0 == id || self.0 == id.map(|r| r.map(|x| -x))
    }

    fn congruent_identity(&self, l: i64) -> bool {
        let id = SpMat::identity().0;
        (0..4).all(|i| (0..4).all(|j| (self.0[i][j] - id[i][j]).rem_euclid(l) == 0))
    }

    /// `C ᵗD = (α β; β γ)`.
    pub fn c_dt(&self) -> Mat2 {
        mul2(&self.c(), &transpose2(&self.d()))
    }

    pub fn a_bt(&self) -> Mat2 {
        mul2(&self.a(), &transpose2(&self.b()))
    }

    pub fn max_abs_entry(&self) -> i64 {
        self.0.iter().flatten().map(|x| x.abs()).max().unwrap_or(0)
    }
}

impl Mul for SpMat {
    type Output = SpMat;
    fn mul(self, rhs: SpMat) -> SpMat {
        SpMat(mul4(&self.0, &rhs.0))
    }
}

impl Mul for &SpMat {
    type Output = SpMat;
    fn mul(self, rhs: &SpMat) -> SpMat {
        SpMat(mul4(&self.0, &rhs.0))
    }
}

impl fmt::Debug for SpMat {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

impl fmt::Display for SpMat {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let rows: Vec<String> =
            self.0.iter().map(|r| r.iter().map(i64::to_string).collect::<Vec<_>>().join(" ")).collect();
        write!(f, "[{}]", rows.join("; "))
    }
}

/// Congruence subgroups of `Γ₂ = Sp(4, Z)`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum SubgroupTag {
    /// `Γ₂`
    Full,
    /// `Γ₂[l]`, the principal congruence subgroup.
    Principal(i64),
    /// `Γ₂[l, 2l]`: `Γ₂[l]` with `diag(A ᵗB)`, `diag(C ᵗD)` divisible by `2l`.
    Igusa(i64),
    /// `Γ₂,₀[l]`: `C ≡ 0 mod l`.
    Hecke(i64),
    /// The index-two subgroup of `Γ₂[2]` cut out by `α + β + γ ≡ 0 mod 4`.
    ThetaKernel,
    /// The kernel of the character of the standard sextuple product on `Γ₂,₀[2]`.
    HeckeThetaKernel,
}

impl fmt::Display for SubgroupTag {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            SubgroupTag::Full => write!(f, "Γ₂"),
            SubgroupTag::Principal(l) => write!(f, "Γ₂[{l}]"),
            SubgroupTag::Igusa(l) => write!(f, "Γ₂[{l},{}]", 2 * l),
            SubgroupTag::Hecke(l) => write!(f, "Γ₂,₀[{l}]"),
            SubgroupTag::ThetaKernel => write!(f, "Γ_n"),
            SubgroupTag::HeckeThetaKernel => write!(f, "Γ₂,₀[2]_n"),
        }
    }
}

fn diag_divisible(m: &Mat2, k: i64) -> bool {
    m[0][0].rem_euclid(k) == 0 && m[1][1].rem_euclid(k) == 0
}

pub fn subgroup_membership(m: &SpMat, tag: SubgroupTag) -> bool {
    match tag {
        SubgroupTag::Full => true,
        SubgroupTag::Principal(l) => m.congruent_identity(l),
        SubgroupTag::Igusa(l) => {
            m.congruent_identity(l) && diag_divisible(&m.a_bt(), 2 * l) && diag_divisible(&m.c_dt(), 2 * l)
        }
        SubgroupTag::Hecke(l) => m.c().iter().flatten().all(|x| x.rem_euclid(l) == 0),
        SubgroupTag::ThetaKernel => {
            let t = m.c_dt();
            m.congruent_identity(2) && (t[0][0] + t[0][1] + t[1][1]).rem_euclid(4) == 0
        }
        SubgroupTag::HeckeThetaKernel => {
            subgroup_membership(m, SubgroupTag::Hecke(2)) && sextuple_character(m).expect("in Γ₂,₀[2]") == 1
        }
    }
}

/// `(−1)^{(α+β+γ)/2}` on `Γ₂,₀[2]`.
pub fn theta_character(m: &SpMat) -> Result<i64> {
    if !subgroup_membership(m, SubgroupTag::Hecke(2)) {
        return Err(Error::NotInSubgroup(SubgroupTag::Hecke(2).to_string()));
    }
    let t = m.c_dt();
    let s = t[0][0] + t[0][1] + t[1][1];
    debug_assert_eq!(s.rem_euclid(2), 0);
    Ok(if (s / 2).rem_euclid(2) == 0 { 1 } else { -1 })
}

/// The nontrivial character of `Γ₂`, pulled back from the sign of `S₆` through
/// the permutation action on the six odd characteristics.
pub fn sign_character(m: &SpMat) -> i64 {
    odd_permutation_sign(&m.mod2())
}

/// Character of the standard sextuple product on `Γ₂,₀[2]`.
pub fn sextuple_character(m: &SpMat) -> Result<i64> {
    Ok(theta_character(m)? * sign_character(m))
}

struct Generator {
    mat: SpMat,
    inverse: usize,
}

fn generators() -> Vec<Generator> {
    let t = |s: Mat2| SpMat::translation(s).expect("symmetric");
    let u = |m: Mat2| SpMat::unimodular(m).expect("unimodular");
    let j1 = SpMat::partial_inversion(0);
    let j2 = SpMat::partial_inversion(1);
    let j = SpMat::inversion();
    let mats = [
        t([[1, 0], [0, 0]]),
        t([[-1, 0], [0, 0]]),
        t([[0, 1], [1, 0]]),
        t([[0, -1], [-1, 0]]),
        t([[0, 0], [0, 1]]),
        t([[0, 0], [0, -1]]),
        j1,
        j1.inverse(),
        j2,
        j2.inverse(),
        j,
        j.inverse(),
        u([[1, 1], [0, 1]]),
        u([[1, -1], [0, 1]]),
        u([[0, 1], [1, 0]]),
    ];
    let inverse = [1, 0, 3, 2, 5, 4, 7, 6, 9, 8, 11, 10, 13, 12, 14];
    mats.into_iter().zip(inverse).map(|(mat, inverse)| Generator { mat, inverse }).collect()
}

const SAMPLE_BUDGET: usize = 200_000;

/// A deterministic pseudo-random member of `tag`: words of length `word_length`
/// in a fixed generator set, without immediate backtracking, filtered by the
/// membership predicate. `±E` is rejected for positive lengths.
pub fn sample_element(tag: SubgroupTag, word_length: usize, seed: u64) -> Result<SpMat> {
    if word_length == 0 {
        return Ok(SpMat::identity());
    }
    let gens = generators();
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    for _ in 0..SAMPLE_BUDGET {
        let mut m = SpMat::identity();
        let mut last: Option<usize> = None;
        for _ in 0..word_length {
            let g = loop {
                let g = rng.gen_range(0..gens.len());
                if last.map_or(true, |l| gens[l].inverse != g) {
                    break g;
                }
            };
            m = m * gens[g].mat;
            last = Some(g);
        }
        if !m.is_plus_minus_identity() && subgroup_membership(&m, tag) {
            return Ok(m);
        }
    }
    Err(Error::SamplingExhausted { tag: tag.to_string(), attempts: SAMPLE_BUDGET, word_length })
}

/// `n` distinct-seed samples, seeds derived from `seed`.
pub fn sample_many(tag: SubgroupTag, word_length: usize, seed: u64, n: usize) -> Result<Vec<SpMat>> {
    (0..n as u64).map(|i| sample_element(tag, word_length, seed.wrapping_mul(1_000_003).wrapping_add(i))).collect()
}
