//! Exact scalars: arbitrary-precision rationals, rational 3-vectors, and
//! polynomials in one positive infinitesimal for symbolic perturbation.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{Signed, Zero};
use std::cmp::Ordering;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

pub type Rat = BigRational;

pub fn rat(n: i64) -> Rat {
    BigRational::from_integer(BigInt::from(n))
}

pub fn ratio(n: i64, d: i64) -> Rat {
    BigRational::new(BigInt::from(n), BigInt::from(d))
}

pub fn rat_to_string(r: &Rat) -> String {
    if r.denom() == &BigInt::from(1) {
        r.numer().to_string()
    } else {
        format!("{}/{}", r.numer(), r.denom())
    }
}

pub fn rat_from_str(s: &str) -> Option<Rat> {
    match s.split_once('/') {
        Some((n, d)) => Some(BigRational::new(n.parse().ok()?, d.parse().ok()?)),
        None => Some(BigRational::from_integer(s.parse().ok()?)),
    }
}

/// A point or vector in rational 3-space.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord)]
pub struct V3(pub [Rat; 3]);

impl V3 {
    pub fn new(x: Rat, y: Rat, z: Rat) -> V3 {
        V3([x, y, z])
    }

    pub fn ints(x: i64, y: i64, z: i64) -> V3 {
        V3([rat(x), rat(y), rat(z)])
    }

    pub fn zero() -> V3 {
        V3::ints(0, 0, 0)
    }

    pub fn x(&self) -> &Rat {
        &self.0[0]
    }

    pub fn y(&self) -> &Rat {
        &self.0[1]
    }

    pub fn z(&self) -> &Rat {
        &self.0[2]
    }

    pub fn dot(&self, o: &V3) -> Rat {
        &self.0[0] * &o.0[0] + &self.0[1] * &o.0[1] + &self.0[2] * &o.0[2]
    }

    pub fn cross(&self, o: &V3) -> V3 {
        V3([
            &self.0[1] * &o.0[2] - &self.0[2] * &o.0[1],
            &self.0[2] * &o.0[0] - &self.0[0] * &o.0[2],
            &self.0[0] * &o.0[1] - &self.0[1] * &o.0[0],
        ])
    }

    pub fn scale(&self, s: &Rat) -> V3 {
        V3([&self.0[0] * s, &self.0[1] * s, &self.0[2] * s])
    }

    /// (1-t)·self + t·o
    pub fn lerp(&self, o: &V3, t: &Rat) -> V3 {
        let u = rat(1) - t;
        V3([
            &self.0[0] * &u + &o.0[0] * t,
            &self.0[1] * &u + &o.0[1] * t,
            &self.0[2] * &u + &o.0[2] * t,
        ])
    }
}

impl fmt::Display for V3 {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "({}, {}, {})",
            rat_to_string(&self.0[0]),
            rat_to_string(&self.0[1]),
            rat_to_string(&self.0[2])
        )
    }
}

// On the wire a point is three exact rational strings.
impl serde::Serialize for V3 {
    fn serialize<S: serde::Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        [
            rat_to_string(&self.0[0]),
            rat_to_string(&self.0[1]),
            rat_to_string(&self.0[2]),
        ]
        .serialize(s)
    }
}

impl<'de> serde::Deserialize<'de> for V3 {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> Result<V3, D::Error> {
        let parts = <[String; 3]>::deserialize(d)?;
        let mut out = [rat(0), rat(0), rat(0)];
        for (slot, text) in out.iter_mut().zip(&parts) {
            *slot = rat_from_str(text)
                .ok_or_else(|| serde::de::Error::custom(format!("bad rational {text:?}")))?;
        }
        Ok(V3(out))
    }
}

impl Add for &V3 {
    type Output = V3;
    fn add(self, o: &V3) -> V3 {
        V3([
            &self.0[0] + &o.0[0],
            &self.0[1] + &o.0[1],
            &self.0[2] + &o.0[2],
        ])
    }
}

impl Sub for &V3 {
    type Output = V3;
    fn sub(self, o: &V3) -> V3 {
        V3([
            &self.0[0] - &o.0[0],
            &self.0[1] - &o.0[1],
            &self.0[2] - &o.0[2],
        ])
    }
}

impl Neg for &V3 {
    type Output = V3;
    fn neg(self) -> V3 {
        V3([-&self.0[0], -&self.0[1], -&self.0[2]])
    }
}

pub fn det3(m: &[[Rat; 3]; 3]) -> Rat {
    let a = V3(m[0].clone());
    let b = V3(m[1].clone());
    let c = V3(m[2].clone());
    a.dot(&b.cross(&c))
}

/// Solve m·x = b.  None when m is singular.
pub fn solve3(m: &[[Rat; 3]; 3], b: &[Rat; 3]) -> Option<[Rat; 3]> {
    let d = det3(m);
    if d.is_zero() {
        return None;
    }
    let mut out = Vec::with_capacity(3);
    for col in 0..3 {
        let mut mm = m.clone();
        for row in 0..3 {
            mm[row][col] = b[row].clone();
        }
        out.push(det3(&mm) / &d);
    }
    Some([out[0].clone(), out[1].clone(), out[2].clone()])
}

/// Sign of det [b-a, c-a, d-a]: which side of plane (a,b,c) the point d lies.
pub fn orient3d(a: &V3, b: &V3, c: &V3, d: &V3) -> Ordering {
    let m = [
        (b - a).0.clone(),
        (c - a).0.clone(),
        (d - a).0.clone(),
    ];
    det3(&m).cmp(&rat(0))
}

/// Polynomial in a positive infinitesimal, compared by its value for all
/// sufficiently small positive arguments: the sign is the sign of the lowest
/// nonzero coefficient.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct EpsPoly(Vec<Rat>);

impl EpsPoly {
    pub fn zero() -> EpsPoly {
        EpsPoly(Vec::new())
    }

    pub fn constant(r: Rat) -> EpsPoly {
        let mut p = EpsPoly(vec![r]);
        p.trim();
        p
    }

    pub fn from_int(n: i64) -> EpsPoly {
        EpsPoly::constant(rat(n))
    }

    /// ε^k
    pub fn eps(k: usize) -> EpsPoly {
        let mut coeffs = vec![rat(0); k + 1];
        coeffs[k] = rat(1);
        EpsPoly(coeffs)
    }

    pub fn coeff(&self, i: usize) -> Rat {
        self.0.get(i).cloned().unwrap_or_else(|| rat(0))
    }

    pub fn is_zero(&self) -> bool {
        self.0.is_empty()
    }

    /// -1, 0 or 1 for small positive arguments.
    pub fn sign(&self) -> i8 {
        match self.0.iter().find(|c| !c.is_zero()) {
            Some(c) if c.is_positive() => 1,
            Some(_) => -1,
            None => 0,
        }
    }

    fn trim(&mut self) {
        while self.0.last().is_some_and(|c| c.is_zero()) {
            self.0.pop();
        }
    }

    pub fn scale(&self, s: &Rat) -> EpsPoly {
        let mut p = EpsPoly(self.0.iter().map(|c| c * s).collect());
        p.trim();
        p
    }
}

impl Add for &EpsPoly {
    type Output = EpsPoly;
    fn add(self, o: &EpsPoly) -> EpsPoly {
        let n = self.0.len().max(o.0.len());
        let mut out = Vec::with_capacity(n);
        for i in 0..n {
            out.push(self.coeff(i) + o.coeff(i));
        }
        let mut p = EpsPoly(out);
        p.trim();
        p
    }
}

impl Sub for &EpsPoly {
    type Output = EpsPoly;
    fn sub(self, o: &EpsPoly) -> EpsPoly {
        self + &(-o)
    }
}

impl Neg for &EpsPoly {
    type Output = EpsPoly;
    fn neg(self) -> EpsPoly {
        EpsPoly(self.0.iter().map(|c| -c).collect())
    }
}

impl Mul for &EpsPoly {
    type Output = EpsPoly;
    fn mul(self, o: &EpsPoly) -> EpsPoly {
        if self.is_zero() || o.is_zero() {
            return EpsPoly::zero();
        }
        let mut out = vec![rat(0); self.0.len() + o.0.len() - 1];
        for (i, a) in self.0.iter().enumerate() {
            for (j, b) in o.0.iter().enumerate() {
                out[i + j] = &out[i + j] + &(a * b);
            }
        }
        let mut p = EpsPoly(out);
        p.trim();
        p
    }
}

impl PartialOrd for EpsPoly {
    fn partial_cmp(&self, o: &EpsPoly) -> Option<Ordering> {
        Some(self.cmp(o))
    }
}

impl Ord for EpsPoly {
    fn cmp(&self, o: &EpsPoly) -> Ordering {
        match (self - o).sign() {
            1 => Ordering::Greater,
            -1 => Ordering::Less,
            _ => Ordering::Equal,
        }
    }
}
