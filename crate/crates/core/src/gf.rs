//! Table-driven arithmetic in GF(q) for prime powers q ≤ 256.
//!
//! Elements are encoded as integers `0..q`: the base-p digits of an encoding
//! are the coefficients (constant term first) of its polynomial
//! representative modulo the field's irreducible modulus. `0` and `1` are
//! the additive and multiplicative identities.

use std::fmt;
use std::sync::Arc;

use crate::error::{Error, Result};

pub const MAX_ORDER: u64 = 256;

/// An element encoding.
pub type Elem = u8;

/// The operations accepted by [`Field::arith`].
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Op {
    Add,
    Sub,
    Mul,
    Neg,
    Inv,
    Pow,
}

struct Tables {
    q: u16,
    p: u16,
    m: u32,
    modulus: Vec<u16>,
    add: Vec<Elem>,
    mul: Vec<Elem>,
    neg: Vec<Elem>,
    inv: Vec<Elem>,
}

/// A finite field GF(q). Cheap to clone; all clones share one set of tables.
#[derive(Clone)]
pub struct Field(Arc<Tables>);

impl Field {
    /// Builds GF(q), choosing the smallest monic irreducible modulus of degree
    /// m over GF(p) (coefficients compared from the constant term upward).
    pub fn new(q: u64) -> Result<Field> {
        if q > MAX_ORDER {
            return Err(Error::CapExceeded(q));
        }
        let (p, m) = prime_power(q).ok_or(Error::NotPrimePower(q))?;
        let p = p as u16;
        let modulus = if m == 1 {
            Vec::new()
        } else {
            smallest_irreducible(p, m)
        };
        let qn = q as usize;

        let digits = |e: usize| -> Vec<u16> {
            let mut v = vec![0u16; m as usize];
            let mut e = e;
            for d in v.iter_mut() {
                *d = (e % p as usize) as u16;
                e /= p as usize;
            }
            v
        };
        let encode = |d: &[u16]| -> Elem {
            d.iter()
                .rev()
                .fold(0usize, |acc, &c| acc * p as usize + c as usize) as Elem
        };

        let mut add = vec![0; qn * qn];
        let mut mul = vec![0; qn * qn];
        for a in 0..qn {
            let da = digits(a);
            for b in 0..qn {
                let db = digits(b);
                let sum: Vec<u16> = da.iter().zip(&db).map(|(x, y)| (x + y) % p).collect();
                add[a * qn + b] = encode(&sum);
                mul[a * qn + b] = if m == 1 {
                    ((a * b) % qn) as Elem
                } else {
                    encode(&poly_mulmod(&da, &db, &modulus, p))
                };
            }
        }
        let mut neg = vec![0; qn];
        let mut inv = vec![0; qn];
        for a in 0..qn {
            neg[a] = (0..qn).find(|&b| add[a * qn + b] == 0).unwrap() as Elem;
            if a != 0 {
                inv[a] = (1..qn).find(|&b| mul[a * qn + b] == 1).unwrap() as Elem;
            }
        }

        Ok(Field(Arc::new(Tables {
            q: q as u16,
            p,
            m,
            modulus,
            add,
            mul,
            neg,
            inv,
        })))
    }

    pub fn q(&self) -> u16 {
        self.0.q
    }

    pub fn order(&self) -> usize {
        self.0.q as usize
    }

    pub fn characteristic(&self) -> u16 {
        self.0.p
    }

    pub fn degree(&self) -> u32 {
        self.0.m
    }

    /// Coefficients of the modulus, constant term first, including the
    /// leading 1. Empty for prime fields.
    pub fn modulus(&self) -> &[u16] {
        &self.0.modulus
    }

    #[inline]
    pub fn add(&self, a: Elem, b: Elem) -> Elem {
        self.0.add[a as usize * self.order() + b as usize]
    }

    #[inline]
    pub fn sub(&self, a: Elem, b: Elem) -> Elem {
        self.add(a, self.neg(b))
    }

    #[inline]
    pub fn mul(&self, a: Elem, b: Elem) -> Elem {
        self.0.mul[a as usize * self.order() + b as usize]
    }

    #[inline]
    pub fn neg(&self, a: Elem) -> Elem {
        self.0.neg[a as usize]
    }

    pub fn inv(&self, a: Elem) -> Result<Elem> {
        if a == 0 {
            return Err(Error::DivisionByZero);
        }
        Ok(self.0.inv[a as usize])
    }

    pub fn pow(&self, a: Elem, mut e: u64) -> Elem {
        let mut base = a;
        let mut acc = 1;
        while e > 0 {
            if e & 1 == 1 {
                acc = self.mul(acc, base);
            }
            base = self.mul(base, base);
            e >>= 1;
        }
        acc
    }

    /// Flat addition table indexed by `a * q + b`.
    #[inline]
    pub(crate) fn add_table(&self) -> &[Elem] {
        &self.0.add
    }

    pub fn check(&self, value: u64) -> Result<Elem> {
        if value >= self.0.q as u64 {
            Err(Error::OutOfRange { value, q: self.0.q })
        } else {
            Ok(value as Elem)
        }
    }

    /// Range-checked dispatch over all field operations. For `Pow`, `b` is
    /// the exponent; for `Neg` and `Inv` it is ignored.
    pub fn arith(&self, op: Op, a: u64, b: u64) -> Result<Elem> {
        let a = self.check(a)?;
        match op {
            Op::Neg => Ok(self.neg(a)),
            Op::Inv => self.inv(a),
            Op::Pow => Ok(self.pow(a, b)),
            Op::Add => Ok(self.add(a, self.check(b)?)),
            Op::Sub => Ok(self.sub(a, self.check(b)?)),
            Op::Mul => Ok(self.mul(a, self.check(b)?)),
        }
    }

    pub fn elements(&self) -> impl Iterator<Item = Elem> {
        (0..self.0.q).map(|e| e as Elem)
    }
}

// Fields are built deterministically from q, so q identifies the tables.
impl PartialEq for Field {
    fn eq(&self, other: &Self) -> bool {
        self.0.q == other.0.q
    }
}

impl Eq for Field {}

impl fmt::Debug for Field {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "GF({})", self.0.q)
    }
}

fn prime_power(q: u64) -> Option<(u64, u32)> {
    if q < 2 {
        return None;
    }
    let p = (2..=q).find(|d| q.is_multiple_of(*d))?;
    let mut rest = q;
    let mut m = 0;
    while rest.is_multiple_of(p) {
        rest /= p;
        m += 1;
    }
    (rest == 1).then_some((p, m))
}

/// Multiplies two residues (length-m coefficient vectors) modulo a monic modulus.
fn poly_mulmod(a: &[u16], b: &[u16], modulus: &[u16], p: u16) -> Vec<u16> {
    let m = modulus.len() - 1;
    let mut prod = vec![0u16; 2 * m];
    for (i, &x) in a.iter().enumerate() {
        for (j, &y) in b.iter().enumerate() {
            prod[i + j] = (prod[i + j] + x * y) % p;
        }
    }
    for deg in (m..prod.len()).rev() {
        let c = prod[deg];
        if c == 0 {
            continue;
        }
        for (i, &mc) in modulus.iter().enumerate() {
            let idx = deg - m + i;
            prod[idx] = (prod[idx] + p * p - c * mc % p) % p;
        }
    }
    prod.truncate(m);
    prod
}

/// Remainder of `a` modulo monic `d` over GF(p); both constant term first.
fn poly_rem(a: &[u16], d: &[u16], p: u16) -> Vec<u16> {
    let mut r = a.to_vec();
    let dd = d.len() - 1;
    while r.len() > dd {
        let c = *r.last().unwrap();
        let shift = r.len() - 1 - dd;
        if c != 0 {
            for (i, &dc) in d.iter().enumerate() {
                r[shift + i] = (r[shift + i] + p * p - c * dc % p) % p;
            }
        }
        r.pop();
    }
    r
}

/// Monic polynomials of the given degree over GF(p), in lexicographic order
/// of their coefficients read from the constant term upward.
fn monic_polys(p: u16, degree: u32) -> impl Iterator<Item = Vec<u16>> {
    let count = (p as u64).pow(degree);
    (0..count).map(move |idx| {
        // The constant term is the most significant digit so that the
        // numeric order of idx matches the required lexicographic order.
        let mut coeffs = vec![0u16; degree as usize + 1];
        let mut rest = idx;
        for i in (0..degree as usize).rev() {
            coeffs[i] = (rest % p as u64) as u16;
            rest /= p as u64;
        }
        coeffs[degree as usize] = 1;
        coeffs
    })
}

fn is_irreducible(f: &[u16], p: u16) -> bool {
    let m = (f.len() - 1) as u32;
    (1..=m / 2).all(|d| monic_polys(p, d).all(|g| poly_rem(f, &g, p).iter().any(|&c| c != 0)))
}

fn smallest_irreducible(p: u16, m: u32) -> Vec<u16> {
    monic_polys(p, m)
        .find(|f| is_irreducible(f, p))
        .expect("an irreducible polynomial exists in every degree")
}
