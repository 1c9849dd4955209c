//! The finite field F_q, q = p^ν.
//!
//! Elements are stored as integers in `0..q`: the base-p digits of the index,
//! least significant first, are the coordinates on the basis 1, w, ..., w^{ν-1}.
//! Counting up through the indices therefore walks the coordinates in
//! lexicographic order, which is the enumeration order everywhere in the crate.
//!
//! Multiplication goes through discrete log tables built once per field.

use std::fmt;
use std::sync::Arc;

use crate::caps::Caps;
use crate::error::{too_large, Error, Result};

/// Raw field element, an index in `0..q`.
pub type Fe = u32;

#[derive(Debug)]
struct FieldData {
    p: u32,
    nu: u32,
    q: u32,
    /// Monic modulus over F_p, lowest degree first, length ν+1. Empty when ν = 1.
    modulus: Vec<u32>,
    log: Vec<u32>,
    exp: Vec<Fe>,
    caps: Caps,
}

/// A finite field together with the enumeration caps used by everything built on it.
/// Cloning is cheap.
#[derive(Clone)]
pub struct Field(Arc<FieldData>);

impl fmt::Debug for Field {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "GF({})", self.0.q)
    }
}

impl PartialEq for Field {
    fn eq(&self, other: &Self) -> bool {
        Arc::ptr_eq(&self.0, &other.0)
            || (self.0.p == other.0.p && self.0.nu == other.0.nu && self.0.modulus == other.0.modulus)
    }
}
impl Eq for Field {}

fn is_prime(n: u64) -> bool {
    n >= 2 && (2..).take_while(|d| d * d <= n).all(|d| !n.is_multiple_of(d))
}

/// Splits q into (p, ν) when q is a prime power.
pub fn prime_power(q: u64) -> Option<(u32, u32)> {
    if q < 2 {
        return None;
    }
    let p = (2..=q).find(|d| q.is_multiple_of(*d))?;
    let (mut rest, mut nu) = (q, 0);
    while rest % p == 0 {
        rest /= p;
        nu += 1;
    }
    (rest == 1).then_some((p as u32, nu))
}

/// Moduli shipped for the small non-prime fields.
pub fn default_modulus(q: u64) -> Option<Vec<u32>> {
    match q {
        4 => Some(vec![1, 1, 1]),    // w^2 + w + 1
        8 => Some(vec![1, 1, 0, 1]), // w^3 + w + 1
        9 => Some(vec![1, 0, 1]),    // w^2 + 1
        25 => Some(vec![2, 0, 1]),   // w^2 + 2
        _ => None,
    }
}

// ---- dense polynomials over F_p, used only to build the tables ----

fn fp_trim(v: &mut Vec<u32>) {
    while v.last() == Some(&0) {
        v.pop();
    }
}

fn fp_rem(a: &[u32], m: &[u32], p: u32) -> Vec<u32> {
    let mut r = a.to_vec();
    fp_trim(&mut r);
    let dm = m.len() - 1;
    let lead_inv = fp_inv(m[dm], p);
    while r.len() > dm {
        let shift = r.len() - 1 - dm;
        let c = r[r.len() - 1] * lead_inv % p;
        for (i, &mi) in m.iter().enumerate() {
            r[shift + i] = (r[shift + i] + p * p - c * mi % p) % p;
        }
        fp_trim(&mut r);
    }
    r
}

fn fp_inv(a: u32, p: u32) -> u32 {
    (1..p).find(|x| a * x % p == 1).expect("nonzero in F_p")
}

fn is_irreducible_fp(m: &[u32], p: u32) -> bool {
    let d = m.len() - 1;
    // every monic candidate divisor of degree 1..=d/2
    for deg in 1..=d / 2 {
        let count = (p as u64).pow(deg as u32);
        for idx in 0..count {
            let mut cand = Vec::with_capacity(deg + 1);
            let mut x = idx;
            for _ in 0..deg {
                cand.push((x % p as u64) as u32);
                x /= p as u64;
            }
            cand.push(1);
            if fp_rem(m, &cand, p).is_empty() {
                return false;
            }
        }
    }
    true
}

fn encode(coords: &[u32], p: u32) -> Fe {
    coords.iter().rev().fold(0, |acc, &c| acc * p + c)
}

fn decode(mut v: Fe, p: u32, nu: u32) -> Vec<u32> {
    (0..nu)
        .map(|_| {
            let d = v % p;
            v /= p;
            d
        })
        .collect()
}

impl Field {
    /// The field with q elements, using the shipped modulus for q ∈ {4, 8, 9, 25}
    /// and the lexicographically first irreducible otherwise.
    pub fn new(q: u64) -> Result<Field> {
        Field::with_caps(q, Caps::default())
    }

    pub fn with_caps(q: u64, caps: Caps) -> Result<Field> {
        let (p, nu) = prime_power(q).ok_or_else(|| Error::InvalidField(format!("{q} is not a prime power")))?;
        if q > caps.field_size {
            return Err(too_large("field size", "field_size", q, caps.field_size));
        }
        if nu == 1 {
            return Field::build(p, 1, Vec::new(), caps);
        }
        let modulus = match default_modulus(q) {
            Some(m) => m,
            None => first_irreducible(p, nu),
        };
        Field::build(p, nu, modulus, caps)
    }

    /// F_p^ν with a caller-chosen monic modulus (lowest degree first).
    pub fn with_modulus(p: u32, nu: u32, modulus: Vec<u32>, caps: Caps) -> Result<Field> {
        if !is_prime(p as u64) {
            return Err(Error::InvalidField(format!("{p} is not prime")));
        }
        if nu == 1 && modulus.is_empty() {
            return Field::build(p, 1, modulus, caps);
        }
        if modulus.len() != nu as usize + 1 || modulus[nu as usize] != 1 || modulus.iter().any(|&c| c >= p) {
            return Err(Error::InvalidField("modulus must be monic of degree ν with coefficients in 0..p".into()));
        }
        if !is_irreducible_fp(&modulus, p) {
            return Err(Error::InvalidField("modulus is reducible".into()));
        }
        let q = (p as u64).pow(nu);
        if q > caps.field_size {
            return Err(too_large("field size", "field_size", q, caps.field_size));
        }
        Field::build(p, nu, modulus, caps)
    }

    fn build(p: u32, nu: u32, modulus: Vec<u32>, caps: Caps) -> Result<Field> {
        let q = p.pow(nu);
        // multiply coordinate vectors modulo the modulus
        let mul_slow = |a: Fe, b: Fe| -> Fe {
            if nu == 1 {
                return ((a as u64 * b as u64) % p as u64) as Fe;
            }
            let (x, y) = (decode(a, p, nu), decode(b, p, nu));
            let mut prod = vec![0u32; 2 * nu as usize - 1];
            for (i, &xi) in x.iter().enumerate() {
                for (j, &yj) in y.iter().enumerate() {
                    prod[i + j] = (prod[i + j] + xi * yj) % p;
                }
            }
            let mut r = fp_rem(&prod, &modulus, p);
            r.resize(nu as usize, 0);
            encode(&r, p)
        };
        let mut log = vec![u32::MAX; q as usize];
        let mut exp = vec![0; q as usize - 1];
        // find a primitive element
        let order = q - 1;
        let mut found = false;
        for g in 1..q {
            let mut x: Fe = 1;
            let mut ok = true;
            for k in 0..order {
                if k > 0 && x == 1 {
                    ok = false;
                    break;
                }
                exp[k as usize] = x;
                x = mul_slow(x, g);
            }
            if ok && x == 1 {
                found = true;
                break;
            }
        }
        if !found {
            return Err(Error::InvalidField("no primitive element; modulus not irreducible".into()));
        }
        for (k, &x) in exp.iter().enumerate() {
            log[x as usize] = k as u32;
        }
        Ok(Field(Arc::new(FieldData { p, nu, q, modulus, log, exp, caps })))
    }

    pub fn p(&self) -> u32 {
        self.0.p
    }
    pub fn nu(&self) -> u32 {
        self.0.nu
    }
    pub fn q(&self) -> u32 {
        self.0.q
    }
    pub fn caps(&self) -> &Caps {
        &self.0.caps
    }
    /// The modulus over F_p, lowest degree first; empty for prime fields.
    pub fn modulus(&self) -> &[u32] {
        &self.0.modulus
    }

    #[inline]
    pub fn add(&self, a: Fe, b: Fe) -> Fe {
        let p = self.0.p;
        if self.0.nu == 1 {
            let s = a + b;
            return if s >= p { s - p } else { s };
        }
        let (mut a, mut b, mut out, mut place) = (a, b, 0, 1);
        while a > 0 || b > 0 {
            out += ((a % p + b % p) % p) * place;
            a /= p;
            b /= p;
            place *= p;
        }
        out
    }

    #[inline]
    pub fn neg(&self, a: Fe) -> Fe {
        let p = self.0.p;
        if self.0.nu == 1 {
            return if a == 0 { 0 } else { p - a };
        }
        let (mut a, mut out, mut place) = (a, 0, 1);
        while a > 0 {
            out += ((p - a % p) % p) * place;
            a /= p;
            place *= p;
        }
        out
    }

    #[inline]
    pub fn sub(&self, a: Fe, b: Fe) -> Fe {
        self.add(a, self.neg(b))
    }

    #[inline]
    pub fn mul(&self, a: Fe, b: Fe) -> Fe {
        if a == 0 || b == 0 {
            return 0;
        }
        let d = &self.0;
        let k = (d.log[a as usize] + d.log[b as usize]) % (d.q - 1);
        d.exp[k as usize]
    }

    pub fn inv(&self, a: Fe) -> Result<Fe> {
        if a == 0 {
            return Err(Error::DivByZero);
        }
        let d = &self.0;
        let k = (d.q - 1 - d.log[a as usize]) % (d.q - 1);
        Ok(d.exp[k as usize])
    }

    pub fn div(&self, a: Fe, b: Fe) -> Result<Fe> {
        Ok(self.mul(a, self.inv(b)?))
    }

    pub fn pow(&self, a: Fe, e: u64) -> Fe {
        if e == 0 {
            return 1;
        }
        if a == 0 {
            return 0;
        }
        let d = &self.0;
        let k = (d.log[a as usize] as u64 * (e % (d.q as u64 - 1))) % (d.q as u64 - 1);
        d.exp[k as usize]
    }

    /// The image of an integer under Z → F_p ⊆ F_q.
    pub fn from_int(&self, n: i64) -> Fe {
        n.rem_euclid(self.0.p as i64) as Fe
    }

    /// All q elements in enumeration order.
    pub fn enumerate(&self) -> Result<Vec<Fe>> {
        let cap = self.0.caps.residues;
        if self.0.q as u64 > cap {
            return Err(too_large("field enumeration", "residues", self.0.q, cap));
        }
        Ok((0..self.0.q).collect())
    }

    pub fn elem(&self, v: Fe) -> GfElem {
        assert!(v < self.0.q, "element index out of range");
        GfElem { field: self.clone(), v }
    }

    /// Coordinates of `a` on 1, w, ..., w^{ν-1}.
    pub fn coords(&self, a: Fe) -> Vec<u32> {
        decode(a, self.0.p, self.0.nu)
    }

    /// Text form: an integer for prime fields, a polynomial in `w` otherwise.
    pub fn format(&self, a: Fe) -> String {
        if self.0.nu == 1 {
            return a.to_string();
        }
        if a == 0 {
            return "0".into();
        }
        let coords = self.coords(a);
        let mut terms = Vec::new();
        for (j, &c) in coords.iter().enumerate().rev() {
            if c == 0 {
                continue;
            }
            let base = match j {
                0 => String::new(),
                1 => "w".to_string(),
                _ => format!("w^{j}"),
            };
            terms.push(match (c, j) {
                (_, 0) => c.to_string(),
                (1, _) => base,
                _ => format!("{c}*{base}"),
            });
        }
        terms.join("+")
    }

    /// True when the formatted element needs parentheses as a coefficient.
    pub fn is_compound(&self, a: Fe) -> bool {
        self.coords(a).iter().filter(|&&c| c != 0).count() > 1
    }

    /// Parses the output of [`Field::format`]; also accepts `-` and plain integers.
    pub fn parse(&self, text: &str) -> Result<Fe> {
        let s: String = text.chars().filter(|c| !c.is_whitespace()).collect();
        if s.is_empty() {
            return Err(Error::Parse("empty field element".into()));
        }
        let mut acc = 0;
        for (sign, term) in split_signed(&s) {
            let t = self.parse_w_term(term)?;
            acc = if sign { self.sub(acc, t) } else { self.add(acc, t) };
        }
        Ok(acc)
    }

    fn parse_w_term(&self, term: &str) -> Result<Fe> {
        let bad = || Error::Parse(format!("bad field term `{term}`"));
        let (coef, power) = match term.find('w') {
            None => (term, None),
            Some(i) => {
                let coef = term[..i].trim_end_matches('*');
                let rest = &term[i + 1..];
                let e = if rest.is_empty() {
                    1
                } else {
                    rest.strip_prefix('^').ok_or_else(bad)?.parse::<u64>().map_err(|_| bad())?
                };
                (coef, Some(e))
            }
        };
        let c = if coef.is_empty() {
            1
        } else {
            self.from_int(coef.parse::<i64>().map_err(|_| bad())?)
        };
        match power {
            None => Ok(c),
            Some(_) if self.0.nu == 1 => Err(Error::Parse("`w` used in a prime field".into())),
            Some(e) => {
                let w = self.0.p; // index of the basis element w
                Ok(self.mul(c, self.pow(w, e)))
            }
        }
    }
}

/// Splits `a+b-c` into signed terms, ignoring signs inside parentheses or after `^`.
pub(crate) fn split_signed(s: &str) -> Vec<(bool, &str)> {
    let mut out = Vec::new();
    let (mut depth, mut start, mut neg) = (0i32, 0usize, false);
    let bytes = s.as_bytes();
    for (i, &b) in bytes.iter().enumerate() {
        match b {
            b'(' => depth += 1,
            b')' => depth -= 1,
            b'+' | b'-' if depth == 0 && i > 0 && bytes[i - 1] != b'^' => {
                out.push((neg, &s[start..i]));
                neg = b == b'-';
                start = i + 1;
            }
            b'-' if i == 0 => {
                neg = true;
                start = 1;
            }
            _ => {}
        }
    }
    out.push((neg, &s[start..]));
    out
}

fn first_irreducible(p: u32, nu: u32) -> Vec<u32> {
    let count = (p as u64).pow(nu);
    for idx in 0..count {
        let mut m: Vec<u32> = decode(idx as Fe, p, nu);
        m.push(1);
        if m[0] != 0 && is_irreducible_fp(&m, p) {
            return m;
        }
    }
    unreachable!("irreducible polynomials exist in every degree")
}

/// An element of F_q that remembers its field.
#[derive(Clone, PartialEq, Eq)]
pub struct GfElem {
    pub field: Field,
    pub v: Fe,
}

impl fmt::Debug for GfElem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.field.format(self.v))
    }
}

impl fmt::Display for GfElem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.field.format(self.v))
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum GfOp {
    Add,
    Sub,
    Mul,
    Div,
}

impl GfElem {
    pub fn arith(&self, other: &GfElem, op: GfOp) -> Result<GfElem> {
        if self.field != other.field {
            return Err(Error::SpecMismatch);
        }
        let f = &self.field;
        let v = match op {
            GfOp::Add => f.add(self.v, other.v),
            GfOp::Sub => f.sub(self.v, other.v),
            GfOp::Mul => f.mul(self.v, other.v),
            GfOp::Div => f.div(self.v, other.v)?,
        };
        Ok(f.elem(v))
    }

    /// x ↦ x^p, the sub-step out of which the q-power is built.
    pub fn frobenius_p(&self) -> GfElem {
        self.field.elem(self.field.pow(self.v, self.field.p() as u64))
    }

    /// x ↦ x^q, computed as ν successive p-th powers.
    pub fn frobenius_q(&self) -> GfElem {
        (0..self.field.nu()).fold(self.clone(), |x, _| x.frobenius_p())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn fields() -> Vec<Field> {
        [2, 3, 4, 5, 7, 8, 9].iter().map(|&q| Field::new(q).unwrap()).collect()
    }

    #[test]
    fn small_examples() {
        let f3 = Field::new(3).unwrap();
        assert_eq!(f3.mul(2, 2), 1);
        let f5 = Field::new(5).unwrap();
        assert_eq!(f5.div(3, 3).unwrap(), 1);
        let f4 = Field::new(4).unwrap();
        let w = f4.parse("w").unwrap();
        assert_eq!(f4.format(f4.mul(w, w)), "w+1");
        assert_eq!(f4.elem(w).frobenius_q(), f4.elem(w));
        assert_eq!(f4.format(f4.elem(w).frobenius_p().v), "w+1");
        let names: Vec<String> = f4.enumerate().unwrap().into_iter().map(|a| f4.format(a)).collect();
        assert_eq!(names, ["0", "1", "w", "w+1"]);
        assert_eq!(Field::new(2).unwrap().enumerate().unwrap(), vec![0, 1]);
    }

    #[test]
    fn errors() {
        let f3 = Field::new(3).unwrap();
        let f5 = Field::new(5).unwrap();
        assert_eq!(f3.elem(1).arith(&f5.elem(1), GfOp::Add), Err(Error::SpecMismatch));
        assert_eq!(f3.elem(1).arith(&f3.elem(0), GfOp::Div), Err(Error::DivByZero));
        assert!(Field::new(6).is_err());
        assert!(Field::with_modulus(2, 2, vec![1, 0, 1], Caps::default()).is_err());
        let tiny = Caps { residues: 4, ..Caps::default() };
        assert!(matches!(
            Field::with_caps(5, tiny).unwrap().enumerate(),
            Err(Error::TooLarge { .. })
        ));
    }

    #[test]
    fn frobenius_fixes_field_and_unit_group_order() {
        for f in fields() {
            for a in f.enumerate().unwrap() {
                assert_eq!(f.elem(a).frobenius_q().v, a);
                if a != 0 {
                    assert_eq!(f.pow(a, f.q() as u64 - 1), 1);
                }
            }
        }
    }

    #[test]
    fn field_axioms_exhaustive() {
        for f in fields() {
            let all = f.enumerate().unwrap();
            for &a in &all {
                assert_eq!(f.add(a, f.neg(a)), 0);
                for &b in &all {
                    assert_eq!(f.add(a, b), f.add(b, a));
                    assert_eq!(f.mul(a, b), f.mul(b, a));
                    for &c in &all {
                        assert_eq!(f.add(f.add(a, b), c), f.add(a, f.add(b, c)));
                        assert_eq!(f.mul(f.mul(a, b), c), f.mul(a, f.mul(b, c)));
                        assert_eq!(f.mul(a, f.add(b, c)), f.add(f.mul(a, b), f.mul(a, c)));
                    }
                }
            }
        }
    }

    #[test]
    fn format_parse_roundtrip() {
        for f in fields() {
            for a in f.enumerate().unwrap() {
                assert_eq!(f.parse(&f.format(a)).unwrap(), a);
            }
        }
        let f9 = Field::new(9).unwrap();
        assert_eq!(f9.format(f9.parse("2*w+1").unwrap()), "2*w+1");
        assert_eq!(f9.parse("w^2").unwrap(), f9.parse("2").unwrap());
    }

    #[test]
    fn default_moduli_are_irreducible() {
        for q in [4u64, 8, 9, 25] {
            let (p, _) = prime_power(q).unwrap();
            assert!(is_irreducible_fp(&default_modulus(q).unwrap(), p));
        }
        let f27 = Field::new(27).unwrap();
        assert_eq!(f27.modulus().len(), 4);
    }
}
