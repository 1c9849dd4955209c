//! Dense polynomials in X with coefficients in F_q[T].

use std::fmt;

use crate::gf::Field;
use crate::poly::Poly;

#[derive(Clone, PartialEq, Eq)]
pub struct XPoly {
    field: Field,
    /// Lowest degree first, no trailing zeros.
    c: Vec<Poly>,
}

impl fmt::Debug for XPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

impl fmt::Display for XPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.c.is_empty() {
            return write!(f, "0");
        }
        let mut terms = Vec::new();
        for (k, a) in self.c.iter().enumerate().rev() {
            if a.is_zero() {
                continue;
            }
            let coef = a.to_string();
            let coef = if coef.contains('+') { format!("({coef})") } else { coef };
            let x = match k {
                0 => String::new(),
                1 => "X".into(),
                _ => format!("X^{k}"),
            };
            terms.push(match (k, a.is_one()) {
                (0, _) => coef,
                (_, true) => x,
                _ => format!("{coef}*{x}"),
            });
        }
        write!(f, "{}", terms.join("+"))
    }
}

impl XPoly {
    pub fn new(field: &Field, mut c: Vec<Poly>) -> XPoly {
        while c.last().is_some_and(Poly::is_zero) {
            c.pop();
        }
        XPoly { field: field.clone(), c }
    }

    pub fn zero(field: &Field) -> XPoly {
        XPoly { field: field.clone(), c: Vec::new() }
    }

    pub fn one(field: &Field) -> XPoly {
        XPoly::new(field, vec![Poly::one(field)])
    }

    /// a·X^k
    pub fn monomial(a: Poly, k: usize) -> XPoly {
        let field = a.field().clone();
        let mut c = vec![Poly::zero(&field); k];
        c.push(a);
        XPoly::new(&field, c)
    }

    pub fn field(&self) -> &Field {
        &self.field
    }

    pub fn coeffs(&self) -> &[Poly] {
        &self.c
    }

    pub fn coeff(&self, k: usize) -> Poly {
        self.c.get(k).cloned().unwrap_or_else(|| Poly::zero(&self.field))
    }

    pub fn deg(&self) -> Option<usize> {
        self.c.len().checked_sub(1)
    }

    pub fn is_zero(&self) -> bool {
        self.c.is_empty()
    }

    pub fn is_monic(&self) -> bool {
        self.c.last().is_some_and(Poly::is_one)
    }

    pub fn add(&self, other: &XPoly) -> XPoly {
        let n = self.c.len().max(other.c.len());
        XPoly::new(&self.field, (0..n).map(|i| self.coeff(i).add(&other.coeff(i))).collect())
    }

    pub fn sub(&self, other: &XPoly) -> XPoly {
        let n = self.c.len().max(other.c.len());
        XPoly::new(&self.field, (0..n).map(|i| self.coeff(i).sub(&other.coeff(i))).collect())
    }

    pub fn scale(&self, a: &Poly) -> XPoly {
        XPoly::new(&self.field, self.c.iter().map(|x| x.mul(a)).collect())
    }

    pub fn mul(&self, other: &XPoly) -> XPoly {
        if self.is_zero() || other.is_zero() {
            return XPoly::zero(&self.field);
        }
        let mut c = vec![Poly::zero(&self.field); self.c.len() + other.c.len() - 1];
        for (i, a) in self.c.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in other.c.iter().enumerate() {
                if !b.is_zero() {
                    c[i + j] = c[i + j].add(&a.mul(b));
                }
            }
        }
        XPoly::new(&self.field, c)
    }

    /// Division by a polynomial that is monic in X.
    pub fn divrem_monic(&self, divisor: &XPoly) -> (XPoly, XPoly) {
        assert!(divisor.is_monic(), "divisor must be monic in X");
        let dd = divisor.c.len() - 1;
        if self.c.len() <= dd {
            return (XPoly::zero(&self.field), self.clone());
        }
        let mut r = self.c.clone();
        let mut q = vec![Poly::zero(&self.field); r.len() - dd];
        for top in (dd..r.len()).rev() {
            let a = std::mem::replace(&mut r[top], Poly::zero(&self.field));
            if a.is_zero() {
                continue;
            }
            for (j, b) in divisor.c[..dd].iter().enumerate() {
                if !b.is_zero() {
                    let idx = top - dd + j;
                    r[idx] = r[idx].sub(&a.mul(b));
                }
            }
            q[top - dd] = a;
        }
        r.truncate(dd);
        (XPoly::new(&self.field, q), XPoly::new(&self.field, r))
    }

    pub fn div_exact(&self, divisor: &XPoly) -> XPoly {
        let (q, r) = self.divrem_monic(divisor);
        assert!(r.is_zero(), "inexact division in F_q[T][X]");
        q
    }

    /// f ↦ f^q: coefficients go to their q-th powers, X^k to X^{kq}.
    pub fn frobenius_q(&self) -> XPoly {
        let q = self.field.q() as usize;
        if self.is_zero() {
            return self.clone();
        }
        let mut c = vec![Poly::zero(&self.field); (self.c.len() - 1) * q + 1];
        for (k, a) in self.c.iter().enumerate() {
            c[k * q] = a.frobenius_q();
        }
        XPoly::new(&self.field, c)
    }

    /// Substitutes X := g.
    pub fn compose(&self, g: &XPoly) -> XPoly {
        self.c
            .iter()
            .rev()
            .fold(XPoly::zero(&self.field), |acc, a| acc.mul(g).add(&XPoly::new(&self.field, vec![a.clone()])))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn division_and_frobenius() {
        let f = Field::new(3).unwrap();
        let t = Poly::t(&f);
        // (X^2 + T)(X + 1) / (X + 1)
        let a = XPoly::new(&f, vec![t.clone(), Poly::zero(&f), Poly::one(&f)]);
        let b = XPoly::new(&f, vec![Poly::one(&f), Poly::one(&f)]);
        assert_eq!(a.mul(&b).div_exact(&b), a);
        assert_eq!(a.frobenius_q(), a.mul(&a).mul(&a));
        assert_eq!(a.to_string(), "X^2+T");
        let x = XPoly::monomial(Poly::one(&f), 1);
        assert_eq!(a.compose(&x), a);
    }
}
