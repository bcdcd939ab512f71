//! Finite fields GF(p^m), the projective line, and semilinear fractional maps.
//!
//! An element is encoded as the integer `Σ cᵢ pⁱ` of its residue `Σ cᵢ zⁱ` modulo the
//! defining polynomial, so `0` and `1` are themselves and `z` is `p`.

mod groups;

pub use groups::{
    agammal1, agl, agl1, mathieu11, mathieu12, pgammal2, pgl2, psl2, zero_one_z_flag,
};

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::perm::Perm;
use crate::util::prime_power;

/// Coefficients ascending; helpers below keep them trimmed (no trailing zeros).
type Poly = Vec<u32>;

fn trim(mut a: Poly) -> Poly {
    while a.last() == Some(&0) {
        a.pop();
    }
    a
}

fn poly_mul(a: &[u32], b: &[u32], p: u32) -> Poly {
    if a.is_empty() || b.is_empty() {
        return Vec::new();
    }
    let mut out = vec![0u32; a.len() + b.len() - 1];
    for (i, &x) in a.iter().enumerate() {
        for (j, &y) in b.iter().enumerate() {
            out[i + j] = (out[i + j] + x * y) % p;
        }
    }
    trim(out)
}

/// Remainder of `a` modulo the monic polynomial `m`.
fn poly_rem_monic(a: &[u32], m: &[u32], p: u32) -> Poly {
    let mut r = trim(a.to_vec());
    let dm = m.len() - 1;
    while r.len() > dm {
        let lead = *r.last().expect("nonempty");
        let shift = r.len() - 1 - dm;
        for (i, &c) in m.iter().enumerate() {
            r[shift + i] = (r[shift + i] + p - (lead * c) % p) % p;
        }
        r = trim(r);
    }
    r
}

fn encode(a: &[u32], p: u32) -> u32 {
    a.iter().rev().fold(0, |acc, &c| acc * p + c)
}

fn decode(mut x: u32, p: u32) -> Poly {
    let mut out = Vec::new();
    while x > 0 {
        out.push(x % p);
        x /= p;
    }
    out
}

fn monic_of_degree(deg: usize, tail: u32, p: u32) -> Poly {
    let mut a = decode(tail, p);
    a.resize(deg, 0);
    a.push(1);
    a
}

/// Irreducible iff no monic polynomial of degree `1..=deg/2` divides it.
fn is_irreducible(f: &[u32], p: u32) -> bool {
    let deg = f.len() - 1;
    (1..=deg / 2).all(|d| {
        (0..p.pow(d as u32))
            .all(|tail| !poly_rem_monic(f, &monic_of_degree(d, tail, p), p).is_empty())
    })
}

/// Fields whose default modulus is fixed to a specific polynomial.
fn pinned_modulus(p: u32, m: u32) -> Option<Poly> {
    match (p, m) {
        (2, 3) => Some(vec![1, 1, 0, 1]),
        (2, 5) => Some(vec![1, 0, 1, 0, 0, 1]),
        _ => None,
    }
}

#[derive(Clone, Debug, Serialize, Deserialize)]
struct FieldSpec {
    p: u32,
    m: u32,
    modulus: Vec<u32>,
}

/// GF(p^m) with log/exp tables.
#[derive(Clone, Debug, Serialize, Deserialize)]
#[serde(try_from = "FieldSpec", into = "FieldSpec")]
pub struct Field {
    p: u32,
    m: u32,
    q: u32,
    modulus: Poly,
    primitive: u32,
    exp: Vec<u32>,
    log: Vec<u32>,
}

impl TryFrom<FieldSpec> for Field {
    type Error = Error;

    fn try_from(spec: FieldSpec) -> Result<Field> {
        Field::with_modulus(spec.p, spec.m, spec.modulus)
    }
}

impl From<Field> for FieldSpec {
    fn from(f: Field) -> FieldSpec {
        FieldSpec {
            p: f.p,
            m: f.m,
            modulus: f.modulus,
        }
    }
}

impl PartialEq for Field {
    fn eq(&self, other: &Field) -> bool {
        self.p == other.p && self.modulus == other.modulus
    }
}

impl Eq for Field {}

impl Field {
    /// GF(p^m) with its default modulus: the smallest irreducible monic polynomial by
    /// encoding, except GF(8) and GF(32), which use `z³+z+1` and `z⁵+z²+1`.
    pub fn new(p: u32, m: u32) -> Result<Field> {
        check_pm(p, m)?;
        let modulus = match pinned_modulus(p, m) {
            Some(f) => f,
            None => (0..p.pow(m))
                .map(|tail| monic_of_degree(m as usize, tail, p))
                .find(|f| is_irreducible(f, p))
                .expect("irreducible polynomials exist in every degree"),
        };
        Field::with_modulus(p, m, modulus)
    }

    /// GF(q) with the default modulus.
    pub fn of_order(q: u64) -> Result<Field> {
        let (p, m) = prime_power(q).ok_or(Error::NotPrimePower(q))?;
        Field::new(p as u32, m)
    }

    /// GF(p^m) over an explicit monic modulus given with ascending coefficients.
    pub fn with_modulus(p: u32, m: u32, modulus: Vec<u32>) -> Result<Field> {
        check_pm(p, m)?;
        if modulus.len() != m as usize + 1
            || modulus.last() != Some(&1)
            || modulus.iter().any(|&c| c >= p)
        {
            return Err(Error::InvalidParameters(format!(
                "modulus {modulus:?} is not a monic degree-{m} polynomial over GF({p})"
            )));
        }
        if !is_irreducible(&modulus, p) {
            return Err(Error::ReducibleModulus(modulus));
        }
        let q = p.pow(m);
        let slow_mul = |a: u32, b: u32| {
            encode(
                &poly_rem_monic(&poly_mul(&decode(a, p), &decode(b, p), p), &modulus, p),
                p,
            )
        };
        // The first element whose powers reach every nonzero residue.
        let (primitive, exp) = (1..q)
            .find_map(|g| {
                let mut powers = Vec::with_capacity(q as usize - 1);
                let mut x = 1;
                for _ in 0..q - 1 {
                    powers.push(x);
                    x = slow_mul(x, g);
                    if x == 1 {
                        break;
                    }
                }
                (powers.len() == q as usize - 1).then_some((g, powers))
            })
            .ok_or_else(|| Error::Internal("no primitive element".into()))?;
        let mut log = vec![u32::MAX; q as usize];
        for (i, &x) in exp.iter().enumerate() {
            log[x as usize] = i as u32;
        }
        if log[1..].contains(&u32::MAX) {
            return Err(Error::Internal(format!(
                "multiplicative group of GF({q}) is not of order {}",
                q - 1
            )));
        }
        Ok(Field {
            p,
            m,
            q,
            modulus,
            primitive,
            exp,
            log,
        })
    }

    pub fn p(&self) -> u32 {
        self.p
    }

    pub fn m(&self) -> u32 {
        self.m
    }

    pub fn order(&self) -> u32 {
        self.q
    }

    /// Ascending coefficients of the defining polynomial.
    pub fn modulus(&self) -> &[u32] {
        &self.modulus
    }

    /// The residue class of `z`.
    pub fn z(&self) -> u32 {
        if self.m == 1 {
            self.primitive
        } else {
            self.p
        }
    }

    /// A generator of the multiplicative group.
    pub fn primitive(&self) -> u32 {
        self.primitive
    }

    pub fn elements(&self) -> std::ops::Range<u32> {
        0..self.q
    }

    /// Element from ascending coefficients.
    pub fn from_coeffs(&self, coeffs: &[u32]) -> u32 {
        encode(
            &poly_rem_monic(
                &trim(coeffs.iter().map(|c| c % self.p).collect()),
                &self.modulus,
                self.p,
            ),
            self.p,
        )
    }

    pub fn coeffs(&self, x: u32) -> Vec<u32> {
        decode(x, self.p)
    }

    pub fn add(&self, a: u32, b: u32) -> u32 {
        if self.p == 2 {
            return a ^ b;
        }
        let (mut a, mut b, mut out, mut place) = (a, b, 0, 1);
        while a > 0 || b > 0 {
            out += ((a % self.p + b % self.p) % self.p) * place;
            a /= self.p;
            b /= self.p;
            place *= self.p;
        }
        out
    }

    pub fn neg(&self, a: u32) -> u32 {
        if self.p == 2 {
            return a;
        }
        let (mut a, mut out, mut place) = (a, 0, 1);
        while a > 0 {
            out += ((self.p - a % self.p) % self.p) * place;
            a /= self.p;
            place *= self.p;
        }
        out
    }

    pub fn sub(&self, a: u32, b: u32) -> u32 {
        self.add(a, self.neg(b))
    }

    pub fn mul(&self, a: u32, b: u32) -> u32 {
        if a == 0 || b == 0 {
            return 0;
        }
        let e = (self.log[a as usize] + self.log[b as usize]) % (self.q - 1);
        self.exp[e as usize]
    }

    /// Multiplicative inverse; `None` for zero.
    pub fn inv(&self, a: u32) -> Option<u32> {
        (a != 0).then(|| self.exp[((self.q - 1 - self.log[a as usize]) % (self.q - 1)) as usize])
    }

    pub fn div(&self, a: u32, b: u32) -> Option<u32> {
        self.inv(b).map(|ib| self.mul(a, ib))
    }

    pub fn pow(&self, a: u32, e: u64) -> u32 {
        if e == 0 {
            return 1;
        }
        if a == 0 {
            return 0;
        }
        let l = (self.log[a as usize] as u64 * e) % (self.q as u64 - 1);
        self.exp[l as usize]
    }

    /// `x ↦ x^p`.
    pub fn frobenius(&self, x: u32) -> u32 {
        self.pow(x, self.p as u64)
    }

    /// `x ↦ x^(p^e)`.
    pub fn frobenius_pow(&self, x: u32, e: u32) -> u32 {
        (0..e % self.m).fold(x, |acc, _| self.frobenius(acc))
    }
}

fn check_pm(p: u32, m: u32) -> Result<()> {
    if m == 0 || prime_power(p as u64) != Some((p as u64, 1)) {
        return Err(Error::InvalidParameters(format!(
            "GF({p}^{m}) needs p prime and m >= 1"
        )));
    }
    match p.checked_pow(m) {
        Some(q) if q <= 1 << 16 => Ok(()),
        _ => Err(Error::InvalidParameters(format!(
            "GF({p}^{m}) is too large"
        ))),
    }
}

/// A point of the projective line: `[x : 1]` or `[1 : 0]`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum ProjPoint {
    Finite(u32),
    Infinity,
}

impl ProjPoint {
    /// Normalizes `[x : y]`; `None` for `[0 : 0]`.
    pub fn from_coords(f: &Field, x: u32, y: u32) -> Option<ProjPoint> {
        match (x, y) {
            (0, 0) => None,
            (_, 0) => Some(ProjPoint::Infinity),
            _ => Some(ProjPoint::Finite(f.div(x, y).expect("y nonzero"))),
        }
    }

    /// 1-based position in `proj_line`: `x + 1` for finite points, `q + 1` for `∞`.
    pub fn label(self, f: &Field) -> usize {
        match self {
            ProjPoint::Finite(x) => x as usize + 1,
            ProjPoint::Infinity => f.order() as usize + 1,
        }
    }
}

/// The `q + 1` points: finite ones by ascending encoding, then `∞`.
pub fn proj_line(f: &Field) -> Vec<ProjPoint> {
    f.elements()
        .map(ProjPoint::Finite)
        .chain(std::iter::once(ProjPoint::Infinity))
        .collect()
}

/// `[x : y] ↦ [α x^σ + β y^σ : γ x^σ + δ y^σ]` with `σ = frobenius^e`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SemilinearMap {
    matrix: [u32; 4],
    e: u32,
}

impl SemilinearMap {
    pub fn new(
        f: &Field,
        alpha: u32,
        beta: u32,
        gamma: u32,
        delta: u32,
        e: u32,
    ) -> Result<SemilinearMap> {
        if [alpha, beta, gamma, delta].iter().any(|&c| c >= f.order()) {
            return Err(Error::InvalidParameters(
                "matrix entry outside the field".into(),
            ));
        }
        let det = f.sub(f.mul(alpha, delta), f.mul(beta, gamma));
        if det == 0 {
            return Err(Error::InvalidParameters("singular matrix".into()));
        }
        Ok(SemilinearMap {
            matrix: [alpha, beta, gamma, delta],
            e: e % f.m(),
        })
    }

    pub fn matrix(&self) -> [u32; 4] {
        self.matrix
    }

    pub fn frobenius_exponent(&self) -> u32 {
        self.e
    }

    pub fn apply(&self, f: &Field, pt: ProjPoint) -> ProjPoint {
        let [a, b, c, d] = self.matrix;
        let (x, y) = match pt {
            ProjPoint::Finite(x) => (f.frobenius_pow(x, self.e), 1),
            ProjPoint::Infinity => (1, 0),
        };
        ProjPoint::from_coords(
            f,
            f.add(f.mul(a, x), f.mul(b, y)),
            f.add(f.mul(c, x), f.mul(d, y)),
        )
        .expect("nonsingular map")
    }

    /// The induced permutation of `proj_line(f)`.
    pub fn to_perm(&self, f: &Field) -> Perm {
        let images: Vec<usize> = proj_line(f)
            .into_iter()
            .map(|pt| self.apply(f, pt).label(f))
            .collect();
        Perm::from_images(&images).expect("projective maps are bijective")
    }
}
