//! Genus-2 theta characteristics over F₂ and the action of Sp(4, F₂).

use std::collections::BTreeSet;
use std::fmt;
use std::sync::OnceLock;

use crate::error::{Error, Result};

/// A characteristic `(a₁,a₂; b₁,b₂)`, encoded as `8a₁ + 4a₂ + 2b₁ + b₂`.
#[derive(Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Char(u8);

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Parity {
    Even,
    Odd,
}

impl Char {
    pub fn new(a1: u8, a2: u8, b1: u8, b2: u8) -> Self {
        Char(((a1 & 1) << 3) | ((a2 & 1) << 2) | ((b1 & 1) << 1) | (b2 & 1))
    }

    pub fn from_code(code: u8) -> Self {
        Char(code & 15)
    }

    pub fn from_ab(a: [u8; 2], b: [u8; 2]) -> Self {
        Char::new(a[0], a[1], b[0], b[1])
    }

    pub fn code(self) -> u8 {
        self.0
    }

    pub fn a(self) -> [u8; 2] {
        [(self.0 >> 3) & 1, (self.0 >> 2) & 1]
    }

    pub fn b(self) -> [u8; 2] {
        [(self.0 >> 1) & 1, self.0 & 1]
    }

    pub fn bits(self) -> [u8; 4] {
        let [a1, a2] = self.a();
        let [b1, b2] = self.b();
        [a1, a2, b1, b2]
    }

    pub fn parity(self) -> Parity {
        let [a1, a2, b1, b2] = self.bits();
        if (a1 * b1 + a2 * b2) % 2 == 0 {
            Parity::Even
        } else {
            Parity::Odd
        }
    }

    pub fn is_even(self) -> bool {
        self.parity() == Parity::Even
    }

    /// Componentwise sum over F₂.
    pub fn add(self, other: Char) -> Char {
        Char(self.0 ^ other.0)
    }

    pub fn all() -> impl Iterator<Item = Char> {
        (0..16).map(Char)
    }

    /// Parses `"1001"` as `(a₁a₂; b₁b₂)`.
    pub fn parse(s: &str) -> Option<Char> {
        let s: String = s.chars().filter(|c| *c == '0' || *c == '1').collect();
        if s.len() != 4 {
            return None;
        }
        u8::from_str_radix(&s, 2).ok().map(Char)
    }
}

impl fmt::Display for Char {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let [a1, a2, b1, b2] = self.bits();
        write!(f, "[{a1}{a2};{b1}{b2}]")
    }
}

impl fmt::Debug for Char {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

pub fn parity(m: Char) -> Parity {
    m.parity()
}

pub fn enumerate_even() -> Vec<Char> {
    Char::all().filter(|c| c.is_even()).collect()
}

pub fn enumerate_odd() -> Vec<Char> {
    Char::all().filter(|c| !c.is_even()).collect()
}

fn check_distinct_even(chars: &[Char], expected: usize) -> Result<()> {
    if chars.len() != expected {
        return Err(Error::WrongCardinality { expected, got: chars.len() });
    }
    let mut seen = BTreeSet::new();
    for &c in chars {
        if !seen.insert(c) {
            return Err(Error::DuplicateCharacteristic(c));
        }
        if !c.is_even() {
            return Err(Error::OddCharacteristic(c));
        }
    }
    Ok(())
}

/// Four distinct even characteristics, stored in ascending order.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Quadruple([Char; 4]);

/// Six distinct even characteristics, stored in ascending order.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Sextuple([Char; 6]);

impl Quadruple {
    pub fn new(chars: &[Char]) -> Result<Self> {
        check_distinct_even(chars, 4)?;
        let mut a: [Char; 4] = chars.try_into().expect("length checked");
        a.sort();
        Ok(Quadruple(a))
    }

    /// `{[00;00], [00;10], [00;01], [00;11]}`.
    pub fn standard() -> Self {
        Quadruple::new(&[0b0000, 0b0010, 0b0001, 0b0011].map(Char::from_code)).expect("even")
    }

    pub fn chars(&self) -> &[Char; 4] {
        &self.0
    }

    pub fn is_syzygetic(&self) -> bool {
        (0..4).all(|skip| {
            let s = (0..4).filter(|&i| i != skip).fold(Char(0), |acc, i| acc.add(self.0[i]));
            s.is_even()
        })
    }
}

impl Sextuple {
    pub fn new(chars: &[Char]) -> Result<Self> {
        check_distinct_even(chars, 6)?;
        let mut a: [Char; 6] = chars.try_into().expect("length checked");
        a.sort();
        let s = Sextuple(a);
        s.complement()?;
        Ok(s)
    }

    pub fn standard() -> Self {
        complement_sextuple(&Quadruple::standard()).expect("standard quadruple is syzygetic")
    }

    pub fn chars(&self) -> &[Char; 6] {
        &self.0
    }

    /// The syzygetic quadruple this sextuple is complementary to.
    pub fn complement(&self) -> Result<Quadruple> {
        let rest: Vec<Char> = enumerate_even().into_iter().filter(|c| !self.0.contains(c)).collect();
        let q = Quadruple::new(&rest)?;
        if !q.is_syzygetic() {
            return Err(Error::NotSyzygetic);
        }
        Ok(q)
    }
}

impl fmt::Display for Quadruple {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s: Vec<String> = self.0.iter().map(|c| c.to_string()).collect();
        write!(f, "{{{}}}", s.join(" "))
    }
}

impl fmt::Display for Sextuple {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s: Vec<String> = self.0.iter().map(|c| c.to_string()).collect();
        write!(f, "{{{}}}", s.join(" "))
    }
}

/// Syzygy test on a list of characteristics; duplicates and wrong sizes are errors.
pub fn is_syzygetic(chars: &[Char]) -> Result<bool> {
    Ok(Quadruple::new(chars)?.is_syzygetic())
}

pub fn syzygetic_quadruples() -> Vec<Quadruple> {
    let even = enumerate_even();
    let mut out = Vec::new();
    for i in 0..even.len() {
        for j in i + 1..even.len() {
            for k in j + 1..even.len() {
                for l in k + 1..even.len() {
                    let q = Quadruple::new(&[even[i], even[j], even[k], even[l]]).expect("distinct even");
                    if q.is_syzygetic() {
                        out.push(q);
                    }
                }
            }
        }
    }
    out
}

pub fn complement_sextuple(q: &Quadruple) -> Result<Sextuple> {
    if !q.is_syzygetic() {
        return Err(Error::NotSyzygetic);
    }
    let rest: Vec<Char> = enumerate_even().into_iter().filter(|c| !q.0.contains(c)).collect();
    let mut a: [Char; 6] = rest.try_into().expect("ten minus four");
    a.sort();
    Ok(Sextuple(a))
}

pub fn all_sextuples() -> Vec<Sextuple> {
    syzygetic_quadruples().iter().map(|q| complement_sextuple(q).expect("syzygetic")).collect()
}

/// A 4×4 matrix over F₂ with blocks `(A B; C D)`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Mat4F2(pub [[u8; 4]; 4]);

impl Mat4F2 {
    pub fn identity() -> Self {
        let mut m = [[0; 4]; 4];
        for (i, row) in m.iter_mut().enumerate() {
            row[i] = 1;
        }
        Mat4F2(m)
    }

    pub fn from_int(m: &[[i64; 4]; 4]) -> Self {
        Mat4F2(m.map(|r| r.map(|x| x.rem_euclid(2) as u8)))
    }

    fn from_bits(bits: u16) -> Self {
        let mut m = [[0; 4]; 4];
        for (i, row) in m.iter_mut().enumerate() {
            for (j, x) in row.iter_mut().enumerate() {
                *x = ((bits >> (4 * i + j)) & 1) as u8;
            }
        }
        Mat4F2(m)
    }

    pub fn mul(&self, other: &Mat4F2) -> Mat4F2 {
        let mut m = [[0u8; 4]; 4];
        for (i, row) in m.iter_mut().enumerate() {
            for (j, x) in row.iter_mut().enumerate() {
                *x = (0..4).map(|k| self.0[i][k] & other.0[k][j]).fold(0, |a, b| a ^ b);
            }
        }
        Mat4F2(m)
    }

    fn transpose(&self) -> Mat4F2 {
        let mut m = [[0u8; 4]; 4];
        for (i, row) in m.iter_mut().enumerate() {
            for (j, x) in row.iter_mut().enumerate() {
                *x = self.0[j][i];
            }
        }
        Mat4F2(m)
    }

    pub fn is_symplectic(&self) -> bool {
        let j = Mat4F2([[0, 0, 1, 0], [0, 0, 0, 1], [1, 0, 0, 0], [0, 1, 0, 0]]);
        self.transpose().mul(&j).mul(self) == j
    }

    fn block(&self, r: usize, c: usize) -> [[u8; 2]; 2] {
        [[self.0[2 * r][2 * c], self.0[2 * r][2 * c + 1]], [self.0[2 * r + 1][2 * c], self.0[2 * r + 1][2 * c + 1]]]
    }

    /// Action on characteristics:
    /// `a' = Da + Cb + diag(C ᵗD)`, `b' = Ba + Ab + diag(A ᵗB)`.
    pub fn act(&self, m: Char) -> Result<Char> {
        if !self.is_symplectic() {
            return Err(Error::NotSymplectic);
        }
        Ok(self.act_unchecked(m))
    }

    fn act_unchecked(&self, m: Char) -> Char {
        let (a_, b_, c_, d_) = (self.block(0, 0), self.block(0, 1), self.block(1, 0), self.block(1, 1));
        let a = m.a();
        let b = m.b();
        let lin = |x: [[u8; 2]; 2], v: [u8; 2], i: usize| (x[i][0] & v[0]) ^ (x[i][1] & v[1]);
        // diag(X ᵗY)_i = Σ_k X_ik Y_ik
        let diag = |x: [[u8; 2]; 2], y: [[u8; 2]; 2], i: usize| (x[i][0] & y[i][0]) ^ (x[i][1] & y[i][1]);
        let na: [u8; 2] = std::array::from_fn(|i| lin(d_, a, i) ^ lin(c_, b, i) ^ diag(c_, d_, i));
        let nb: [u8; 2] = std::array::from_fn(|i| lin(b_, a, i) ^ lin(a_, b, i) ^ diag(a_, b_, i));
        Char::from_ab(na, nb)
    }

    /// Image of a set of characteristics under the action.
    pub fn act_set(&self, chars: &[Char]) -> Vec<Char> {
        let mut v: Vec<Char> = chars.iter().map(|&c| self.act_unchecked(c)).collect();
        v.sort();
        v
    }
}

/// `M{m}` for `M` symplectic mod 2.
pub fn sp4f2_act(m: &Mat4F2, c: Char) -> Result<Char> {
    m.act(c)
}

/// All 720 elements of Sp(4, F₂), by exhaustive search over 4×4 matrices.
pub fn sp4f2_elements() -> &'static [Mat4F2] {
    static GROUP: OnceLock<Vec<Mat4F2>> = OnceLock::new();
    GROUP.get_or_init(|| (0..=u16::MAX).map(Mat4F2::from_bits).filter(Mat4F2::is_symplectic).collect())
}

pub fn quadruple_orbit(q: &Quadruple) -> Result<BTreeSet<Quadruple>> {
    if !q.is_syzygetic() {
        return Err(Error::NotSyzygetic);
    }
    Ok(sp4f2_elements()
        .iter()
        .map(|m| Quadruple::new(&m.act_set(q.chars())).expect("action preserves parity"))
        .collect())
}

pub fn quadruple_stabilizer(q: &Quadruple) -> Vec<Mat4F2> {
    sp4f2_elements().iter().filter(|m| m.act_set(q.chars()) == q.chars().to_vec()).copied().collect()
}

/// Sign of the permutation induced on the six odd characteristics.
pub fn odd_permutation_sign(m: &Mat4F2) -> i64 {
    let odd = enumerate_odd();
    let perm: Vec<usize> =
        odd.iter().map(|&c| odd.iter().position(|&d| d == m.act_unchecked(c)).expect("odd maps to odd")).collect();
    let mut seen = [false; 6];
    let mut sign = 1;
    for start in 0..6 {
        if seen[start] {
            continue;
        }
        let mut len = 0;
        let mut i = start;
        while !seen[i] {
            seen[i] = true;
            i = perm[i];
            len += 1;
        }
        if len % 2 == 0 {
            sign = -sign;
        }
    }
    sign
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    fn c(s: &str) -> Char {
        Char::parse(s).unwrap()
    }

    #[test]
    fn parities() {
        assert_eq!(parity(c("0000")), Parity::Even);
        assert_eq!(parity(c("1111")), Parity::Even);
        assert_eq!(parity(c("1010")), Parity::Odd);
        assert_eq!(enumerate_even().len(), 10);
        assert_eq!(enumerate_odd().len(), 6);
    }

    #[test]
    fn syzygy_examples() {
        assert!(Quadruple::standard().is_syzygetic());
        assert!(!is_syzygetic(&[c("0000"), c("0010"), c("0001"), c("1100")]).unwrap());
        assert_eq!(
            is_syzygetic(&[c("0000"), c("0000"), c("0001"), c("1100")]).unwrap_err(),
            Error::DuplicateCharacteristic(c("0000"))
        );
    }

    #[test]
    fn fifteen_quadruples_with_distinct_complements() {
        let qs = syzygetic_quadruples();
        assert_eq!(qs.len(), 15);
        assert!(qs.contains(&Quadruple::standard()));
        let sx: BTreeSet<Sextuple> = qs.iter().map(|q| complement_sextuple(q).unwrap()).collect();
        assert_eq!(sx.len(), 15);
    }

    #[test]
    fn standard_complement() {
        let s = complement_sextuple(&Quadruple::standard()).unwrap();
        let expected: BTreeSet<Char> = ["1000", "1001", "0100", "0110", "1100", "1111"].map(c).into();
        assert_eq!(s.chars().iter().copied().collect::<BTreeSet<_>>(), expected);
        assert_eq!(s.complement().unwrap(), Quadruple::standard());
        let bad = Quadruple::new(&[c("0000"), c("0010"), c("0001"), c("1100")]).unwrap();
        assert_eq!(complement_sextuple(&bad).unwrap_err(), Error::NotSyzygetic);
    }

    #[test]
    fn group_order_and_transitivity() {
        assert_eq!(sp4f2_elements().len(), 720);
        let orbit = quadruple_orbit(&Quadruple::standard()).unwrap();
        assert_eq!(orbit.len(), 15);
        assert!(orbit.iter().all(Quadruple::is_syzygetic));
        assert_eq!(quadruple_stabilizer(&Quadruple::standard()).len(), 48);
    }

    #[test]
    fn identity_and_swap() {
        let j = Mat4F2([[0, 0, 1, 0], [0, 0, 0, 1], [1, 0, 0, 0], [0, 1, 0, 0]]);
        for m in Char::all() {
            assert_eq!(sp4f2_act(&Mat4F2::identity(), m).unwrap(), m);
            assert_eq!(sp4f2_act(&j, m).unwrap(), Char::from_ab(m.b(), m.a()));
        }
        let not_sp = Mat4F2([[1, 1, 0, 0], [0, 1, 0, 0], [0, 0, 1, 0], [0, 0, 0, 1]]);
        assert_eq!(sp4f2_act(&not_sp, c("0000")).unwrap_err(), Error::NotSymplectic);
    }

    #[test]
    fn action_law_and_parity() {
        let g = sp4f2_elements();
        let mut rng = ChaCha8Rng::seed_from_u64(3);
        for _ in 0..100 {
            let m1 = g[rng.gen_range(0..g.len())];
            let m2 = g[rng.gen_range(0..g.len())];
            let x = Char::from_code(rng.gen_range(0..16));
            assert_eq!(m1.mul(&m2).act(x).unwrap(), m1.act(m2.act(x).unwrap()).unwrap());
            assert_eq!(m1.act(x).unwrap().parity(), x.parity());
        }
    }

    #[test]
    fn odd_sign_is_a_character() {
        let g = sp4f2_elements();
        let mut rng = ChaCha8Rng::seed_from_u64(5);
        for _ in 0..50 {
            let m1 = g[rng.gen_range(0..g.len())];
            let m2 = g[rng.gen_range(0..g.len())];
            assert_eq!(odd_permutation_sign(&m1.mul(&m2)), odd_permutation_sign(&m1) * odd_permutation_sign(&m2));
        }
        assert_eq!(g.iter().filter(|m| odd_permutation_sign(m) == 1).count(), 360);
    }
}
