//! The Carlitz module: the operator C_M(X) = Σ c_i X^{q^i}, the Carlitz
//! cyclotomic polynomials Ψ_M, and the torsion module Λ_M modelled as F_q[T]/(M).

use std::fmt;

use crate::error::{too_large, Error, Result};
use crate::gf::Field;
use crate::poly::{self, Poly};
use crate::xpoly::XPoly;

/// Anything the Carlitz action can be evaluated on: an F_q[T]-algebra with a q-power map.
pub trait CarlitzAlgebra: Clone {
    fn zero_like(&self) -> Self;
    fn add(&self, other: &Self) -> Self;
    fn frobenius_q(&self) -> Self;
    fn scale_poly(&self, c: &Poly) -> Self;
}

impl CarlitzAlgebra for Poly {
    fn zero_like(&self) -> Self {
        Poly::zero(self.field())
    }
    fn add(&self, other: &Self) -> Self {
        Poly::add(self, other)
    }
    fn frobenius_q(&self) -> Self {
        Poly::frobenius_q(self)
    }
    fn scale_poly(&self, c: &Poly) -> Self {
        self.mul(c)
    }
}

/// C_M as the coefficient list (c_0, ..., c_d), c_i the coefficient of X^{q^i}.
#[derive(Clone, PartialEq, Eq)]
pub struct CarlitzOp {
    m: Poly,
    coeffs: Vec<Poly>,
}

impl fmt::Debug for CarlitzOp {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "C[{}] = {:?}", self.m, self.coeffs)
    }
}

fn trim(mut c: Vec<Poly>) -> Vec<Poly> {
    while c.last().is_some_and(Poly::is_zero) {
        c.pop();
    }
    c
}

impl CarlitzOp {
    pub fn new(m: &Poly) -> CarlitzOp {
        let field = m.field();
        let t = Poly::t(field);
        // running C_{T^j}, starting from C_1 = X
        let mut power = vec![Poly::one(field)];
        let mut acc: Vec<Poly> = Vec::new();
        for (j, &a) in m.coeffs().iter().enumerate() {
            if j > 0 {
                let mut next = Vec::with_capacity(power.len() + 1);
                for i in 0..=power.len() {
                    let lower = if i > 0 { power[i - 1].frobenius_q() } else { Poly::zero(field) };
                    let same = power.get(i).map(|c| c.mul(&t)).unwrap_or_else(|| Poly::zero(field));
                    next.push(lower.add(&same));
                }
                power = next;
            }
            if a != 0 {
                acc.resize(acc.len().max(power.len()), Poly::zero(field));
                for (i, c) in power.iter().enumerate() {
                    acc[i] = acc[i].add(&c.scale(a));
                }
            }
        }
        CarlitzOp { m: m.clone(), coeffs: trim(acc) }
    }

    pub fn modulus(&self) -> &Poly {
        &self.m
    }

    pub fn coeffs(&self) -> &[Poly] {
        &self.coeffs
    }

    pub fn field(&self) -> &Field {
        self.m.field()
    }

    /// Σ c_i x^{q^i}
    pub fn apply<A: CarlitzAlgebra>(&self, x: &A) -> A {
        let mut acc = x.zero_like();
        let mut power = x.clone();
        for (i, c) in self.coeffs.iter().enumerate() {
            if i > 0 {
                power = power.frobenius_q();
            }
            if !c.is_zero() {
                acc = acc.add(&power.scale_poly(c));
            }
        }
        acc
    }

    /// Coefficient-wise sum; equals C_{M+N}.
    pub fn add(&self, other: &CarlitzOp) -> CarlitzOp {
        let n = self.coeffs.len().max(other.coeffs.len());
        let zero = Poly::zero(self.field());
        let coeffs = (0..n)
            .map(|i| self.coeffs.get(i).unwrap_or(&zero).add(other.coeffs.get(i).unwrap_or(&zero)))
            .collect();
        CarlitzOp { m: self.m.add(&other.m), coeffs: trim(coeffs) }
    }

    /// self ∘ other; equals C_{MN}.
    pub fn compose(&self, other: &CarlitzOp) -> CarlitzOp {
        let field = self.field();
        if self.coeffs.is_empty() || other.coeffs.is_empty() {
            return CarlitzOp { m: self.m.mul(&other.m), coeffs: Vec::new() };
        }
        let mut coeffs = vec![Poly::zero(field); self.coeffs.len() + other.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            // b^{q^i}
            let mut lifted: Vec<Poly> = other.coeffs.clone();
            for _ in 0..i {
                lifted = lifted.iter().map(Poly::frobenius_q).collect();
            }
            for (j, b) in lifted.iter().enumerate() {
                coeffs[i + j] = coeffs[i + j].add(&a.mul(b));
            }
        }
        CarlitzOp { m: self.m.mul(&other.m), coeffs: trim(coeffs) }
    }

    /// The dense polynomial in X.
    pub fn to_xpoly(&self) -> XPoly {
        let field = self.field();
        let q = field.q() as usize;
        let Some(top) = self.coeffs.len().checked_sub(1) else {
            return XPoly::zero(field);
        };
        let mut dense = vec![Poly::zero(field); q.pow(top as u32) + 1];
        for (i, c) in self.coeffs.iter().enumerate() {
            dense[q.pow(i as u32)] = c.clone();
        }
        XPoly::new(field, dense)
    }
}

impl fmt::Display for CarlitzOp {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.to_xpoly())
    }
}

/// Ψ_M = ∏_{D | M} C_{M/D}^{μ(D)}, a polynomial in X over F_q[T].
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CycPoly {
    pub m: Poly,
    pub poly: XPoly,
}

pub fn cyclotomic_poly(m: &Poly) -> Result<CycPoly> {
    let d = m.deg().ok_or(Error::ZeroInput)?;
    if d == 0 || !m.is_monic() {
        return Err(Error::HypothesisNotMet("cyclotomic polynomials need a monic nonconstant modulus".into()));
    }
    let field = m.field();
    let q = field.q() as u64;
    let cap = field.caps().carlitz_degree;
    if (q as u128).saturating_pow(d as u32) > cap as u128 {
        return Err(too_large("Carlitz polynomial degree", "carlitz_degree", format!("{q}^{d}"), cap));
    }
    let mut num = XPoly::one(field);
    let mut den = XPoly::one(field);
    for div in poly::monic_divisors(m)? {
        let c = CarlitzOp::new(&m.div_exact(&div)).to_xpoly();
        match poly::mobius(&div)? {
            1 => num = num.mul(&c),
            -1 => den = den.mul(&c),
            _ => {}
        }
    }
    let psi = num.div_exact(&den);
    debug_assert!(CarlitzOp::new(m).to_xpoly().divrem_monic(&psi).1.is_zero());
    Ok(CycPoly { m: m.clone(), poly: psi })
}

/// λ^B_M, stored as the residue B mod M.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct TorsionElem {
    modulus: Poly,
    residue: Poly,
}

impl fmt::Debug for TorsionElem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

impl fmt::Display for TorsionElem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "lambda[{} mod {}]", self.residue, self.modulus)
    }
}

impl TorsionElem {
    /// λ^B_M; B is reduced and M made monic.
    pub fn new(modulus: &Poly, residue: &Poly) -> Result<TorsionElem> {
        if modulus.is_zero() {
            return Err(Error::ZeroInput);
        }
        let modulus = modulus.monic();
        let residue = residue.rem(&modulus)?;
        Ok(TorsionElem { modulus, residue })
    }

    /// The generator λ_M = λ^1_M.
    pub fn generator(modulus: &Poly) -> Result<TorsionElem> {
        TorsionElem::new(modulus, &Poly::one(modulus.field()))
    }

    pub fn zero(modulus: &Poly) -> Result<TorsionElem> {
        TorsionElem::new(modulus, &Poly::zero(modulus.field()))
    }

    pub fn parse(field: &Field, text: &str) -> Result<TorsionElem> {
        let bad = || Error::Parse(format!("expected lambda[B mod M], got `{text}`"));
        let inner = text.trim().strip_prefix("lambda[").and_then(|s| s.strip_suffix(']')).ok_or_else(bad)?;
        let (b, m) = inner.split_once(" mod ").ok_or_else(bad)?;
        TorsionElem::new(&Poly::parse(field, m)?, &Poly::parse(field, b)?)
    }

    pub fn modulus(&self) -> &Poly {
        &self.modulus
    }

    pub fn residue(&self) -> &Poly {
        &self.residue
    }

    pub fn is_zero(&self) -> bool {
        self.residue.is_zero()
    }

    pub fn add(&self, other: &TorsionElem) -> Result<TorsionElem> {
        if self.modulus != other.modulus {
            return Err(Error::ModulusMismatch);
        }
        TorsionElem::new(&self.modulus, &self.residue.add(&other.residue))
    }

    pub fn neg(&self) -> TorsionElem {
        TorsionElem { modulus: self.modulus.clone(), residue: self.residue.neg() }
    }

    /// The Carlitz action x ↦ x^N.
    pub fn act(&self, n: &Poly) -> TorsionElem {
        TorsionElem {
            modulus: self.modulus.clone(),
            residue: self.residue.mulmod(n, &self.modulus),
        }
    }

    /// Monic generator of the annihilator, M / gcd(M, B).
    pub fn order(&self) -> Poly {
        self.modulus.div_exact(&self.modulus.gcd(&self.residue)).monic()
    }

    /// The same point seen in Λ_{M'} for M | M'.
    pub fn embed(&self, target: &Poly) -> Result<TorsionElem> {
        if target.is_zero() {
            return Err(Error::ZeroInput);
        }
        let (cofactor, r) = target.monic().divrem(&self.modulus)?;
        if !r.is_zero() {
            return Err(Error::NotAMultiple);
        }
        TorsionElem::new(target, &self.residue.mul(&cofactor))
    }

    /// All q^{deg M} points of Λ_M.
    pub fn all(modulus: &Poly) -> Result<Vec<TorsionElem>> {
        let m = modulus.monic();
        Ok(poly::residues_below(m.field(), m.degree())?
            .into_iter()
            .map(|residue| TorsionElem { modulus: m.clone(), residue })
            .collect())
    }
}

/// Monic lcm of the orders; 1 for the empty list.
pub fn module_exponent(xs: &[TorsionElem], field: &Field) -> Poly {
    xs.iter().fold(Poly::one(field), |acc, x| acc.lcm(&x.order()))
}
