//! The polynomial ring F_q[T] and its fraction field F_q(T).
//!
//! `Poly` keeps its coefficients lowest degree first with no trailing zeros,
//! so structural equality is ring equality.

use std::cmp::Ordering;
use std::collections::HashMap;
use std::fmt;
use std::hash::{Hash, Hasher};
use std::sync::{Mutex, OnceLock};

use num_bigint::BigUint;
use num_traits::One;

use crate::error::{too_large, Error, Result};
use crate::gf::{Fe, Field};

#[derive(Clone)]
pub struct Poly {
    field: Field,
    c: Vec<Fe>,
}

impl PartialEq for Poly {
    fn eq(&self, other: &Self) -> bool {
        self.c == other.c && self.field == other.field
    }
}
impl Eq for Poly {}

impl Hash for Poly {
    fn hash<H: Hasher>(&self, state: &mut H) {
        self.c.hash(state);
    }
}

/// Degree first, then coefficients from the top down.
impl Ord for Poly {
    fn cmp(&self, other: &Self) -> Ordering {
        self.c
            .len()
            .cmp(&other.c.len())
            .then_with(|| self.c.iter().rev().cmp(other.c.iter().rev()))
    }
}
impl PartialOrd for Poly {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Debug for Poly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

impl fmt::Display for Poly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.c.is_empty() {
            return write!(f, "0");
        }
        let field = &self.field;
        let mut first = true;
        for (k, &a) in self.c.iter().enumerate().rev() {
            if a == 0 {
                continue;
            }
            if !first {
                write!(f, "+")?;
            }
            first = false;
            let coef = if field.is_compound(a) {
                format!("({})", field.format(a))
            } else {
                field.format(a)
            };
            match k {
                0 => write!(f, "{coef}")?,
                _ => {
                    if a != 1 {
                        write!(f, "{coef}*")?;
                    }
                    if k == 1 {
                        write!(f, "T")?;
                    } else {
                        write!(f, "T^{k}")?;
                    }
                }
            }
        }
        Ok(())
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum PolyOp {
    Add,
    Sub,
    Mul,
    DivRem,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum PolyResult {
    Value(Poly),
    QuotRem(Poly, Poly),
}

impl Poly {
    pub fn new(field: &Field, mut c: Vec<Fe>) -> Poly {
        while c.last() == Some(&0) {
            c.pop();
        }
        Poly { field: field.clone(), c }
    }

    pub fn zero(field: &Field) -> Poly {
        Poly { field: field.clone(), c: Vec::new() }
    }

    pub fn one(field: &Field) -> Poly {
        Poly::constant(field, 1)
    }

    pub fn constant(field: &Field, a: Fe) -> Poly {
        Poly::new(field, vec![a])
    }

    /// The indeterminate T.
    pub fn t(field: &Field) -> Poly {
        Poly::monomial(field, 1, 1)
    }

    /// a·T^k
    pub fn monomial(field: &Field, a: Fe, k: usize) -> Poly {
        let mut c = vec![0; k + 1];
        c[k] = a;
        Poly::new(field, c)
    }

    /// The polynomial whose coefficients are the base-q digits of `index`.
    pub fn from_index(field: &Field, mut index: u64) -> Poly {
        let q = field.q() as u64;
        let mut c = Vec::new();
        while index > 0 {
            c.push((index % q) as Fe);
            index /= q;
        }
        Poly::new(field, c)
    }

    pub fn parse(field: &Field, text: &str) -> Result<Poly> {
        let s: Vec<char> = text.chars().filter(|c| !c.is_whitespace()).collect();
        if s.is_empty() {
            return Err(Error::Parse("empty polynomial".into()));
        }
        let mut parser = ExprParser { s: &s, pos: 0, field };
        let value = parser.expr()?;
        if parser.pos != s.len() {
            return Err(Error::Parse(format!("unexpected `{}` in `{text}`", s[parser.pos])));
        }
        Ok(value)
    }

    pub fn field(&self) -> &Field {
        &self.field
    }

    pub fn coeffs(&self) -> &[Fe] {
        &self.c
    }

    pub fn coeff(&self, k: usize) -> Fe {
        self.c.get(k).copied().unwrap_or(0)
    }

    /// None for the zero polynomial.
    pub fn deg(&self) -> Option<usize> {
        self.c.len().checked_sub(1)
    }

    /// Degree with deg 0 := 0, for places where zero never occurs or does not matter.
    pub fn degree(&self) -> usize {
        self.deg().unwrap_or(0)
    }

    pub fn is_zero(&self) -> bool {
        self.c.is_empty()
    }

    pub fn is_one(&self) -> bool {
        self.c == [1]
    }

    pub fn is_constant(&self) -> bool {
        self.c.len() <= 1
    }

    pub fn lead(&self) -> Fe {
        self.c.last().copied().unwrap_or(0)
    }

    pub fn is_monic(&self) -> bool {
        self.lead() == 1
    }

    fn same_field(&self, other: &Poly) {
        assert!(self.field == other.field, "polynomials over different fields");
    }

    /// Checked arithmetic entry point.
    pub fn arith(&self, other: &Poly, op: PolyOp) -> Result<PolyResult> {
        if self.field != other.field {
            return Err(Error::SpecMismatch);
        }
        Ok(match op {
            PolyOp::Add => PolyResult::Value(self.add(other)),
            PolyOp::Sub => PolyResult::Value(self.sub(other)),
            PolyOp::Mul => PolyResult::Value(self.mul(other)),
            PolyOp::DivRem => {
                let (q, r) = self.divrem(other)?;
                PolyResult::QuotRem(q, r)
            }
        })
    }

    pub fn add(&self, other: &Poly) -> Poly {
        self.same_field(other);
        let f = &self.field;
        let n = self.c.len().max(other.c.len());
        let c = (0..n).map(|i| f.add(self.coeff(i), other.coeff(i))).collect();
        Poly::new(f, c)
    }

    pub fn neg(&self) -> Poly {
        let f = &self.field;
        Poly::new(f, self.c.iter().map(|&a| f.neg(a)).collect())
    }

    pub fn sub(&self, other: &Poly) -> Poly {
        self.same_field(other);
        let f = &self.field;
        let n = self.c.len().max(other.c.len());
        let c = (0..n).map(|i| f.sub(self.coeff(i), other.coeff(i))).collect();
        Poly::new(f, c)
    }

    pub fn mul(&self, other: &Poly) -> Poly {
        self.same_field(other);
        if self.is_zero() || other.is_zero() {
            return Poly::zero(&self.field);
        }
        let f = &self.field;
        let mut c = vec![0; self.c.len() + other.c.len() - 1];
        for (i, &a) in self.c.iter().enumerate() {
            if a == 0 {
                continue;
            }
            for (j, &b) in other.c.iter().enumerate() {
                c[i + j] = f.add(c[i + j], f.mul(a, b));
            }
        }
        Poly::new(f, c)
    }

    pub fn scale(&self, a: Fe) -> Poly {
        let f = &self.field;
        Poly::new(f, self.c.iter().map(|&x| f.mul(x, a)).collect())
    }

    /// Multiplication by T^k.
    pub fn shift(&self, k: usize) -> Poly {
        if self.is_zero() {
            return self.clone();
        }
        let mut c = vec![0; k];
        c.extend_from_slice(&self.c);
        Poly { field: self.field.clone(), c }
    }

    pub fn divrem(&self, divisor: &Poly) -> Result<(Poly, Poly)> {
        self.same_field(divisor);
        if divisor.is_zero() {
            return Err(Error::DivByZero);
        }
        let f = &self.field;
        let dd = divisor.c.len() - 1;
        if self.c.len() <= dd {
            return Ok((Poly::zero(f), self.clone()));
        }
        let lead_inv = f.inv(divisor.lead())?;
        let mut r = self.c.clone();
        let mut q = vec![0; r.len() - dd];
        for top in (dd..r.len()).rev() {
            let a = r[top];
            if a == 0 {
                continue;
            }
            let factor = f.mul(a, lead_inv);
            q[top - dd] = factor;
            for (j, &b) in divisor.c.iter().enumerate() {
                let idx = top - dd + j;
                r[idx] = f.sub(r[idx], f.mul(factor, b));
            }
        }
        r.truncate(dd);
        Ok((Poly::new(f, q), Poly::new(f, r)))
    }

    pub fn rem(&self, divisor: &Poly) -> Result<Poly> {
        Ok(self.divrem(divisor)?.1)
    }

    /// Quotient of an exact division; a nonzero remainder is a logic error.
    pub fn div_exact(&self, divisor: &Poly) -> Poly {
        let (q, r) = self.divrem(divisor).expect("exact division by zero");
        assert!(r.is_zero(), "{divisor} does not divide {self}");
        q
    }

    pub fn divides(&self, other: &Poly) -> bool {
        match other.divrem(self) {
            Ok((_, r)) => r.is_zero(),
            Err(_) => other.is_zero(),
        }
    }

    /// Scales to leading coefficient 1; zero stays zero.
    pub fn monic(&self) -> Poly {
        if self.is_zero() {
            return self.clone();
        }
        let inv = self.field.inv(self.lead()).expect("nonzero leading coefficient");
        self.scale(inv)
    }

    pub fn pow(&self, mut e: u64) -> Poly {
        let mut base = self.clone();
        let mut acc = Poly::one(&self.field);
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.mul(&base);
            }
            base = base.mul(&base);
            e >>= 1;
        }
        acc
    }

    pub fn mulmod(&self, other: &Poly, m: &Poly) -> Poly {
        self.mul(other).rem(m).expect("nonzero modulus")
    }

    pub fn powmod(&self, mut e: u64, m: &Poly) -> Poly {
        let mut base = self.rem(m).expect("nonzero modulus");
        let mut acc = Poly::one(&self.field).rem(m).expect("nonzero modulus");
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.mulmod(&base, m);
            }
            base = base.mulmod(&base, m);
            e >>= 1;
        }
        acc
    }

    /// u ↦ u^q. Coefficients are fixed by the q-power, so this is u(T^q).
    pub fn frobenius_q(&self) -> Poly {
        let q = self.field.q() as usize;
        if self.is_zero() {
            return self.clone();
        }
        let mut c = vec![0; (self.c.len() - 1) * q + 1];
        for (i, &a) in self.c.iter().enumerate() {
            c[i * q] = a;
        }
        Poly::new(&self.field, c)
    }

    pub fn eval(&self, x: Fe) -> Fe {
        let f = &self.field;
        self.c.iter().rev().fold(0, |acc, &a| f.add(f.mul(acc, x), a))
    }

    pub fn gcd(&self, other: &Poly) -> Poly {
        let (mut a, mut b) = (self.clone(), other.clone());
        while !b.is_zero() {
            let r = a.rem(&b).expect("nonzero divisor");
            a = b;
            b = r;
        }
        a.monic()
    }

    /// (g, s1, s2) with g = self·s1 + other·s2 and g monic; all zero for (0, 0).
    pub fn xgcd(&self, other: &Poly) -> (Poly, Poly, Poly) {
        let f = &self.field;
        let (mut r0, mut r1) = (self.clone(), other.clone());
        let (mut s0, mut s1) = (Poly::one(f), Poly::zero(f));
        let (mut t0, mut t1) = (Poly::zero(f), Poly::one(f));
        while !r1.is_zero() {
            let (q, r) = r0.divrem(&r1).expect("nonzero divisor");
            r0 = std::mem::replace(&mut r1, r);
            let s = s0.sub(&q.mul(&s1));
            s0 = std::mem::replace(&mut s1, s);
            let t = t0.sub(&q.mul(&t1));
            t0 = std::mem::replace(&mut t1, t);
        }
        if r0.is_zero() {
            return (Poly::zero(f), Poly::zero(f), Poly::zero(f));
        }
        let inv = f.inv(r0.lead()).expect("nonzero");
        let out = (r0.scale(inv), s0.scale(inv), t0.scale(inv));
        debug_assert_eq!(self.mul(&out.1).add(&other.mul(&out.2)), out.0, "Bezout identity");
        out
    }

    pub fn lcm(&self, other: &Poly) -> Poly {
        if self.is_zero() || other.is_zero() {
            return Poly::zero(&self.field);
        }
        self.mul(other).div_exact(&self.gcd(other)).monic()
    }

    /// Inverse modulo m, or None when not coprime.
    pub fn inv_mod(&self, m: &Poly) -> Option<Poly> {
        let (g, s, _) = self.xgcd(m);
        if g.is_one() {
            Some(s.rem(m).expect("nonzero modulus"))
        } else {
            None
        }
    }

    /// Exponent of P in self (self nonzero).
    pub fn valuation(&self, p: &Poly) -> u32 {
        let mut x = self.clone();
        let mut v = 0;
        while !x.is_zero() {
            let (q, r) = x.divrem(p).expect("nonzero");
            if !r.is_zero() {
                break;
            }
            x = q;
            v += 1;
        }
        v
    }
}

macro_rules! forward_ops {
    ($($tr:ident $m:ident),*) => {$(
        impl std::ops::$tr<&Poly> for &Poly {
            type Output = Poly;
            fn $m(self, rhs: &Poly) -> Poly { Poly::$m(self, rhs) }
        }
    )*};
}
forward_ops!(Add add, Sub sub, Mul mul);

impl std::ops::Neg for &Poly {
    type Output = Poly;
    fn neg(self) -> Poly {
        Poly::neg(self)
    }
}

// ---- text grammar ----

struct ExprParser<'a> {
    s: &'a [char],
    pos: usize,
    field: &'a Field,
}

impl ExprParser<'_> {
    fn peek(&self) -> Option<char> {
        self.s.get(self.pos).copied()
    }

    fn expr(&mut self) -> Result<Poly> {
        let mut acc = match self.peek() {
            Some('-') => {
                self.pos += 1;
                self.term()?.neg()
            }
            _ => self.term()?,
        };
        while let Some(c @ ('+' | '-')) = self.peek() {
            self.pos += 1;
            let t = self.term()?;
            acc = if c == '+' { acc.add(&t) } else { acc.sub(&t) };
        }
        Ok(acc)
    }

    fn term(&mut self) -> Result<Poly> {
        let mut acc = self.factor()?;
        loop {
            match self.peek() {
                Some('*') => {
                    self.pos += 1;
                    acc = acc.mul(&self.factor()?);
                }
                // implicit product such as 2T or (T+1)(T+2)
                Some('T' | 'w' | '(') => acc = acc.mul(&self.factor()?),
                _ => return Ok(acc),
            }
        }
    }

    fn factor(&mut self) -> Result<Poly> {
        let base = self.atom()?;
        if self.peek() == Some('^') {
            self.pos += 1;
            let e = self.integer()?;
            return Ok(base.pow(e));
        }
        Ok(base)
    }

    fn integer(&mut self) -> Result<u64> {
        let start = self.pos;
        while matches!(self.peek(), Some(c) if c.is_ascii_digit()) {
            self.pos += 1;
        }
        let digits: String = self.s[start..self.pos].iter().collect();
        digits
            .parse()
            .map_err(|_| Error::Parse(format!("expected an integer at position {start}")))
    }

    fn atom(&mut self) -> Result<Poly> {
        let f = self.field;
        match self.peek() {
            Some('T') => {
                self.pos += 1;
                Ok(Poly::t(f))
            }
            Some('w') => {
                self.pos += 1;
                if f.nu() == 1 {
                    return Err(Error::Parse("`w` used over a prime field".into()));
                }
                Ok(Poly::constant(f, f.p()))
            }
            Some('(') => {
                self.pos += 1;
                let inner = self.expr()?;
                if self.peek() != Some(')') {
                    return Err(Error::Parse("unbalanced parenthesis".into()));
                }
                self.pos += 1;
                Ok(inner)
            }
            Some(c) if c.is_ascii_digit() => {
                let n = self.integer()?;
                Ok(Poly::constant(f, (n % f.p() as u64) as Fe))
            }
            Some(c) => Err(Error::Parse(format!("unexpected `{c}`"))),
            None => Err(Error::Parse("unexpected end of input".into())),
        }
    }
}

// ---- factorization ----

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Factorization {
    pub unit: Fe,
    /// Distinct monic irreducibles with exponents, in increasing order.
    pub factors: Vec<(Poly, u32)>,
}

impl Factorization {
    pub fn recompose(&self, field: &Field) -> Poly {
        self.factors
            .iter()
            .fold(Poly::constant(field, self.unit), |acc, (p, e)| acc.mul(&p.pow(*e as u64)))
    }
}

type FieldKey = (u32, u32, Vec<u32>);

fn irreducible_cache() -> &'static Mutex<HashMap<FieldKey, Vec<Vec<Poly>>>> {
    static CACHE: OnceLock<Mutex<HashMap<FieldKey, Vec<Vec<Poly>>>>> = OnceLock::new();
    CACHE.get_or_init(|| Mutex::new(HashMap::new()))
}

/// Monic irreducibles of exactly degree `d`, in enumeration order.
pub fn monic_irreducibles(field: &Field, d: usize) -> Vec<Poly> {
    let key = (field.p(), field.nu(), field.modulus().to_vec());
    {
        let cache = irreducible_cache().lock().expect("cache lock");
        if let Some(levels) = cache.get(&key) {
            if levels.len() > d {
                return levels[d].clone();
            }
        }
    }
    // build every missing level; lower levels are needed for the sieve
    let mut levels: Vec<Vec<Poly>> = {
        let cache = irreducible_cache().lock().expect("cache lock");
        cache.get(&key).cloned().unwrap_or_else(|| vec![Vec::new()])
    };
    let q = field.q() as u64;
    while levels.len() <= d {
        let deg = levels.len();
        let mut found = Vec::new();
        for idx in 0..q.pow(deg as u32) {
            let cand = Poly::from_index(field, idx).add(&Poly::monomial(field, 1, deg));
            let reducible = (1..=deg / 2).any(|k| levels[k].iter().any(|p| p.divides(&cand)));
            if !reducible {
                found.push(cand);
            }
        }
        levels.push(found);
    }
    let out = levels[d].clone();
    irreducible_cache().lock().expect("cache lock").insert(key, levels);
    out
}

pub fn is_irreducible(p: &Poly) -> bool {
    match p.deg() {
        None | Some(0) => false,
        Some(d) => (1..=d / 2).all(|k| monic_irreducibles(p.field(), k).iter().all(|f| !f.divides(p))),
    }
}

/// Trial division against the cached irreducibles.
pub fn factor(m: &Poly) -> Result<Factorization> {
    let d = m.deg().ok_or(Error::ZeroInput)?;
    let cap = m.field().caps().factor_degree;
    if d as u64 > cap {
        return Err(too_large("factorization degree", "factor_degree", d, cap));
    }
    let field = m.field();
    let unit = m.lead();
    let mut rest = m.monic();
    let mut factors = Vec::new();
    let mut k = 1;
    while 2 * k <= rest.degree() {
        for p in monic_irreducibles(field, k) {
            let e = rest.valuation(&p);
            if e > 0 {
                rest = rest.div_exact(&p.pow(e as u64));
                factors.push((p, e));
            }
        }
        k += 1;
    }
    if rest.degree() > 0 {
        factors.push((rest, 1));
    }
    factors.sort();
    Ok(Factorization { unit, factors })
}

/// |(F_q[T]/(m))^*|.
pub fn phi(m: &Poly) -> Result<BigUint> {
    let fact = factor(m)?;
    let q = BigUint::from(m.field().q());
    let mut acc = BigUint::one();
    for (p, e) in &fact.factors {
        let d = p.degree() as u32;
        acc *= q.pow(d * e) - q.pow(d * (e - 1));
    }
    Ok(acc)
}

pub fn mobius(m: &Poly) -> Result<i32> {
    let fact = factor(m)?;
    if fact.factors.iter().any(|(_, e)| *e > 1) {
        return Ok(0);
    }
    Ok(if fact.factors.len() % 2 == 0 { 1 } else { -1 })
}

/// Monic divisors of m, in increasing order.
pub fn monic_divisors(m: &Poly) -> Result<Vec<Poly>> {
    let fact = factor(m)?;
    let mut out = vec![Poly::one(m.field())];
    for (p, e) in &fact.factors {
        let mut next = Vec::new();
        for d in &out {
            let mut pk = d.clone();
            next.push(pk.clone());
            for _ in 0..*e {
                pk = pk.mul(p);
                next.push(pk.clone());
            }
        }
        out = next;
    }
    out.sort();
    Ok(out)
}

/// All polynomials of degree < n, in index order.
pub fn residues_below(field: &Field, n: usize) -> Result<Vec<Poly>> {
    let cap = field.caps().residues;
    let count = (field.q() as u64).checked_pow(n as u32).filter(|&c| c <= cap);
    let count = count.ok_or_else(|| too_large("residue enumeration", "residues", format!("{}^{n}", field.q()), cap))?;
    Ok((0..count).map(|i| Poly::from_index(field, i)).collect())
}

/// Canonical lifts of (F_q[T]/(m))^*, in index order.
pub fn unit_residues(m: &Poly) -> Result<Vec<Poly>> {
    let d = m.deg().ok_or(Error::ZeroInput)?;
    Ok(residues_below(m.field(), d)?
        .into_iter()
        .filter(|r| !r.is_zero() && r.gcd(m).is_one())
        .collect())
}

// ---- rational functions ----

/// num/den with den monic and gcd(num, den) = 1.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct RatFn {
    num: Poly,
    den: Poly,
}

impl fmt::Debug for RatFn {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

fn wrap(p: &Poly) -> String {
    let s = p.to_string();
    if s.contains('+') {
        format!("({s})")
    } else {
        s
    }
}

impl fmt::Display for RatFn {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.den.is_one() {
            write!(f, "{}", self.num)
        } else {
            write!(f, "{}/{}", wrap(&self.num), wrap(&self.den))
        }
    }
}

impl From<Poly> for RatFn {
    fn from(num: Poly) -> RatFn {
        let den = Poly::one(num.field());
        RatFn { num, den }
    }
}

impl RatFn {
    pub fn new(num: Poly, den: Poly) -> Result<RatFn> {
        if den.is_zero() {
            return Err(Error::DivByZero);
        }
        let g = num.gcd(&den);
        let (mut num, mut den) = (num.div_exact(&g), den.div_exact(&g));
        let lead = den.lead();
        if lead != 1 {
            let inv = den.field().inv(lead)?;
            num = num.scale(inv);
            den = den.scale(inv);
        }
        Ok(RatFn { num, den })
    }

    pub fn zero(field: &Field) -> RatFn {
        RatFn::from(Poly::zero(field))
    }

    pub fn one(field: &Field) -> RatFn {
        RatFn::from(Poly::one(field))
    }

    pub fn parse(field: &Field, text: &str) -> Result<RatFn> {
        // split at a top-level slash
        let mut depth = 0;
        for (i, ch) in text.char_indices() {
            match ch {
                '(' => depth += 1,
                ')' => depth -= 1,
                '/' if depth == 0 => {
                    return RatFn::new(Poly::parse(field, &text[..i])?, Poly::parse(field, &text[i + 1..])?);
                }
                _ => {}
            }
        }
        Ok(RatFn::from(Poly::parse(field, text)?))
    }

    pub fn num(&self) -> &Poly {
        &self.num
    }
    pub fn den(&self) -> &Poly {
        &self.den
    }
    pub fn field(&self) -> &Field {
        self.num.field()
    }
    pub fn is_zero(&self) -> bool {
        self.num.is_zero()
    }

    pub fn add(&self, other: &RatFn) -> RatFn {
        let num = self.num.mul(&other.den).add(&other.num.mul(&self.den));
        RatFn::new(num, self.den.mul(&other.den)).expect("nonzero denominators")
    }

    pub fn neg(&self) -> RatFn {
        RatFn { num: self.num.neg(), den: self.den.clone() }
    }

    pub fn sub(&self, other: &RatFn) -> RatFn {
        self.add(&other.neg())
    }

    pub fn mul(&self, other: &RatFn) -> RatFn {
        RatFn::new(self.num.mul(&other.num), self.den.mul(&other.den)).expect("nonzero denominators")
    }

    pub fn inv(&self) -> Result<RatFn> {
        RatFn::new(self.den.clone(), self.num.clone())
    }

    pub fn div(&self, other: &RatFn) -> Result<RatFn> {
        Ok(self.mul(&other.inv()?))
    }
}
