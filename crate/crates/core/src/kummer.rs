//! Carlitz–Kummer extensions: solving C_M(u) = z in F_q[T], roots over the
//! rational fields k(λ_P) with deg P = 1, splitting degrees of X^P - z, the
//! affine matrix model of their Galois groups, and explicit primitive elements.

use num_bigint::BigUint;
use serde::Serialize;

use crate::carlitz::{CarlitzOp, TorsionElem};
use crate::cycfield::{CycElem, CycField};
use crate::error::{Error, Result};
use crate::gf::{Fe, Field};
use crate::poly::{self, Poly};

/// Solves A·x = b over F_q, A given by columns. Returns one solution if any.
fn solve_linear(field: &Field, columns: &[Vec<Fe>], b: &[Fe]) -> Option<Vec<Fe>> {
    let rows = columns.iter().map(Vec::len).chain([b.len()]).max().unwrap_or(0);
    let cols = columns.len();
    // augmented matrix, row-major
    let mut a: Vec<Vec<Fe>> = (0..rows)
        .map(|r| {
            let mut row: Vec<Fe> = columns.iter().map(|c| c.get(r).copied().unwrap_or(0)).collect();
            row.push(b.get(r).copied().unwrap_or(0));
            row
        })
        .collect();
    let mut pivots = Vec::new();
    let mut r = 0;
    for c in 0..cols {
        let Some(pr) = (r..rows).find(|&i| a[i][c] != 0) else { continue };
        a.swap(r, pr);
        let inv = field.inv(a[r][c]).expect("nonzero pivot");
        for x in a[r].iter_mut() {
            *x = field.mul(*x, inv);
        }
        let pivot_row = a[r].clone();
        for (i, row) in a.iter_mut().enumerate() {
            if i != r && row[c] != 0 {
                let factor = row[c];
                for (x, &y) in row.iter_mut().zip(&pivot_row) {
                    *x = field.sub(*x, field.mul(factor, y));
                }
            }
        }
        pivots.push(c);
        r += 1;
    }
    if a[r..].iter().any(|row| row[cols] != 0) {
        return None;
    }
    let mut x = vec![0; cols];
    for (i, &c) in pivots.iter().enumerate() {
        x[c] = a[i][cols];
    }
    Some(x)
}

/// The largest degree a solution u of C_M(u) = z can have. deg C_M(u) = q^{deg M}·deg u
/// except for q = 2 and deg u = 1, where the top terms can cancel.
pub fn preimage_degree_bound(m: &Poly, z: &Poly) -> usize {
    let q = m.field().q() as usize;
    let scale = q.pow(m.degree() as u32);
    z.deg().map_or(0, |d| d / scale).max(1)
}

/// u ∈ F_q[T] with C_M(u) = z, if one exists. C_M is F_q-linear, so this is a linear system.
pub fn carlitz_preimage(m: &Poly, z: &Poly) -> Option<Poly> {
    let f = m.field();
    if z.is_zero() {
        return Some(Poly::zero(f));
    }
    let op = CarlitzOp::new(m);
    let bound = preimage_degree_bound(m, z);
    let columns: Vec<Vec<Fe>> = (0..=bound)
        .map(|j| op.apply(&Poly::monomial(f, 1, j)).coeffs().to_vec())
        .collect();
    let x = solve_linear(f, &columns, z.coeffs())?;
    let u = Poly::new(f, x);
    debug_assert_eq!(&op.apply(&u), z);
    Some(u)
}

/// The substitution T = -λ^{q-1} - c that makes k(λ_P) = F_q(λ) for P = T + c.
fn t_in_lambda(p: &Poly) -> Poly {
    let f = p.field();
    let c = p.coeff(0);
    Poly::monomial(f, f.neg(1), f.q() as usize - 1).add(&Poly::constant(f, f.neg(c)))
}

fn compose(outer: &Poly, inner: &Poly) -> Poly {
    outer
        .coeffs()
        .iter()
        .rev()
        .fold(Poly::zero(outer.field()), |acc, &a| acc.mul(inner).add(&Poly::constant(outer.field(), a)))
}

/// A root a/b, with a and b polynomials in λ.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LambdaRational {
    pub num: Poly,
    pub den: Poly,
}

impl LambdaRational {
    /// The same element in the basis 1, λ, ..., λ^{q-2} of `field`.
    pub fn to_cyc(&self, field: &CycField) -> Result<CycElem> {
        let lam = field.lambda();
        let eval = |g: &Poly| {
            g.coeffs()
                .iter()
                .rev()
                .fold(field.zero(), |acc, &a| acc.mul(&lam).add(&field.from_poly(&Poly::constant(g.field(), a))))
        };
        eval(&self.num).div(&eval(&self.den))
    }
}

/// All roots in K = k(λ_P), deg P = 1, of F = Σ coeffs[j] X^j with coeffs in K.
pub fn rational_root_in_cyclotomic(field: &CycField, coeffs: &[CycElem]) -> Result<Vec<LambdaRational>> {
    let p = field.modulus();
    if p.degree() != 1 {
        return Err(Error::DegreeNotOne);
    }
    let f = p.field();
    let t = t_in_lambda(p);
    // each coefficient as num/den in F_q[λ]
    let mut nums = Vec::new();
    let mut dens = Vec::new();
    for c in coeffs {
        if c.field() != field {
            return Err(Error::FieldMismatch);
        }
        let mut num = Poly::zero(f);
        let mut den = Poly::one(f);
        for (i, r) in c.coeffs().iter().enumerate() {
            let term_den = compose(r.den(), &t);
            let term_num = compose(r.num(), &t).shift(i);
            num = num.mul(&term_den).add(&term_num.mul(&den));
            den = den.mul(&term_den);
        }
        let g = num.gcd(&den);
        nums.push(num.div_exact(&g));
        dens.push(den.div_exact(&g));
    }
    let common = dens.iter().fold(Poly::one(f), |acc, d| acc.lcm(d));
    let mut g: Vec<Poly> = nums
        .iter()
        .zip(&dens)
        .map(|(n, d)| n.mul(&common.div_exact(d)))
        .collect();
    while g.last().is_some_and(Poly::is_zero) {
        g.pop();
    }
    if g.len() <= 1 {
        return Err(Error::HypothesisNotMet("the polynomial must have positive degree".into()));
    }
    let mut roots = Vec::new();
    // X = 0 takes care of vanishing low coefficients
    let zeros = g.iter().take_while(|c| c.is_zero()).count();
    if zeros > 0 {
        roots.push(LambdaRational { num: Poly::zero(f), den: Poly::one(f) });
        g.drain(..zeros);
    }
    if g.len() > 1 {
        let units: Vec<Fe> = (1..f.q()).collect();
        let tops = poly::monic_divisors(&g[0])?;
        let bottoms = poly::monic_divisors(g.last().expect("nonempty"))?;
        let n = g.len() - 1;
        for a in &tops {
            for b in &bottoms {
                if !a.gcd(b).is_one() {
                    continue;
                }
                for &u in &units {
                    let a = a.scale(u);
                    // Σ g_j a^j b^{n-j}
                    let value = g.iter().enumerate().fold(Poly::zero(f), |acc, (j, gj)| {
                        acc.add(&gj.mul(&a.pow(j as u64)).mul(&b.pow((n - j) as u64)))
                    });
                    if value.is_zero() {
                        roots.push(LambdaRational { num: a, den: b.clone() });
                    }
                }
            }
        }
    }
    Ok(roots)
}

/// [splitting field of X^P - z : k(λ_P)] = q^{deg P} when z has no preimage in F_q[T].
pub fn kummer_splitting_degree(p: &Poly, z: &Poly) -> Result<BigUint> {
    if !p.is_monic() || !poly::is_irreducible(p) {
        return Err(Error::HypothesisNotMet(format!("{p} is not monic irreducible")));
    }
    if let Some(u) = carlitz_preimage(p, z) {
        return Err(Error::HypothesisNotMet(format!("{z} = C_P({u}) already in F_q[T]")));
    }
    if p.degree() == 1 {
        let field = CycField::new(p)?;
        let mut coeffs: Vec<CycElem> = CarlitzOp::new(p)
            .to_xpoly()
            .coeffs()
            .iter()
            .map(|c| field.from_poly(c))
            .collect();
        coeffs[0] = coeffs[0].sub(&field.from_poly(z));
        if !rational_root_in_cyclotomic(&field, &coeffs)?.is_empty() {
            return Err(Error::HypothesisNotMet("X^P - z has a root over k(λ_P)".into()));
        }
    }
    Ok(BigUint::from(p.field().q()).pow(p.degree() as u32))
}

/// The matrix (1 0; B A) over F_q[T]/(N).
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct MatrixRep {
    pub n: Poly,
    pub b: Poly,
    pub a: Poly,
}

impl MatrixRep {
    pub fn new(n: &Poly, b: &Poly, a: &Poly) -> Result<MatrixRep> {
        let n = n.monic();
        let a = a.rem(&n)?;
        if !a.gcd(&n).is_one() {
            return Err(Error::NotAUnit(a.to_string()));
        }
        Ok(MatrixRep { b: b.rem(&n)?, a, n })
    }

    pub fn identity(n: &Poly) -> MatrixRep {
        MatrixRep::new(n, &Poly::zero(n.field()), &Poly::one(n.field())).expect("1 is a unit")
    }

    /// x ↦ A·x + B on F_q[T]/(N): how σ moves a root α + λ^x_N of X^N - z.
    pub fn apply(&self, x: &Poly) -> Poly {
        self.a.mulmod(x, &self.n).add(&self.b).rem(&self.n).expect("nonzero")
    }

    /// Every element of the group, in index order.
    pub fn all(n: &Poly) -> Result<Vec<MatrixRep>> {
        let n = n.monic();
        let units = poly::unit_residues(&n)?;
        let shifts = poly::residues_below(n.field(), n.degree())?;
        let mut out = Vec::new();
        for a in &units {
            for b in &shifts {
                out.push(MatrixRep { n: n.clone(), b: b.clone(), a: a.clone() });
            }
        }
        Ok(out)
    }
}

/// (B, A)·(B', A') = (B + B'A, AA').
pub fn theta_compose(x: &MatrixRep, y: &MatrixRep) -> Result<MatrixRep> {
    if x.n != y.n {
        return Err(Error::ModulusMismatch);
    }
    let n = &x.n;
    Ok(MatrixRep {
        n: n.clone(),
        b: x.b.add(&y.b.mulmod(&x.a, n)).rem(n)?,
        a: x.a.mulmod(&y.a, n),
    })
}

/// q^{deg N}·Φ(N).
pub fn theta_group_order(n: &Poly) -> Result<BigUint> {
    Ok(BigUint::from(n.field().q()).pow(n.degree() as u32) * poly::phi(n)?)
}

/// α ∈ Λ_M and β ∈ Λ_N of exact orders M and N, gcd(M, N) = 1: α + β generates Λ_{MN},
/// and α, β are recovered from it through the Bezout identity.
pub fn primitive_element_check(m: &Poly, n: &Poly, alpha: &TorsionElem, beta: &TorsionElem) -> Result<bool> {
    let (g, s1, s2) = m.xgcd(n);
    if !g.is_one() {
        return Err(Error::NotCoprime);
    }
    let mn = m.mul(n).monic();
    let a = alpha.embed(&mn)?;
    let b = beta.embed(&mn)?;
    if a.order() != m.monic() || b.order() != n.monic() {
        return Err(Error::WrongOrders);
    }
    let sum = a.add(&b)?;
    let annihilated = sum.act(&mn).is_zero();
    let recovers_alpha = sum.act(&n.mul(&s2)) == a;
    let recovers_beta = sum.act(&m.mul(&s1)) == b;
    let generates = sum.residue().gcd(&mn).is_one() || mn.is_one();
    Ok(annihilated && recovers_alpha && recovers_beta && generates)
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ObstructionRow {
    pub level: String,
    pub phi: String,
    pub top_degree: String,
    pub excluded: bool,
}

/// For K = k(Λ_T), q = p, and L/K of degree p: no Carlitz root of irreducible level N ≠ T
/// can enter L. Degree ≥ 2 levels fail [k(λ_N):k] | [L:k]; degree-1 levels have minimal
/// polynomial of degree ≤ p - 1 over K, which cannot be p.
pub fn purity_obstruction_check(field: &Field, max_degree: usize) -> Result<Vec<ObstructionRow>> {
    let p = field.p() as u64;
    if field.nu() != 1 {
        return Err(Error::HypothesisNotMet("the scripted obstruction assumes q = p".into()));
    }
    let top = p * (p - 1);
    let mut rows = Vec::new();
    for n in poly::monic_irreducibles(field, 1) {
        if n == Poly::t(field) {
            continue;
        }
        let psi_deg = crate::carlitz::cyclotomic_poly(&n)?.poly.deg().unwrap_or(0) as u64;
        rows.push(ObstructionRow {
            level: n.to_string(),
            phi: poly::phi(&n)?.to_string(),
            top_degree: p.to_string(),
            excluded: psi_deg == p - 1,
        });
    }
    for d in 2..=max_degree {
        for n in poly::monic_irreducibles(field, d) {
            let phi = poly::phi(&n)?;
            let expected = BigUint::from(p).pow(d as u32) - 1u32;
            let excluded = phi == expected && phi > BigUint::from(top) && (BigUint::from(top) % &phi) != BigUint::from(0u32);
            rows.push(ObstructionRow {
                level: n.to_string(),
                phi: phi.to_string(),
                top_degree: top.to_string(),
                excluded,
            });
        }
    }
    Ok(rows)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(f: &Field, s: &str) -> Poly {
        Poly::parse(f, s).unwrap()
    }

    #[test]
    fn preimage_examples() {
        let f = Field::new(3).unwrap();
        let t = p(&f, "T");
        assert_eq!(carlitz_preimage(&t, &p(&f, "T^3+T^2")), Some(t.clone()));
        assert_eq!(carlitz_preimage(&t, &p(&f, "1")), None);
        assert_eq!(carlitz_preimage(&p(&f, "T^2+1"), &Poly::zero(&f)), Some(Poly::zero(&f)));
    }

    #[test]
    fn preimage_is_a_decision_procedure() {
        // compare with a scan over every u of degree < 3
        for q in [2u64, 3] {
            let f = Field::new(q).unwrap();
            for m in ["T", "T+1", "T^2", "T^2+T+1"] {
                let m = p(&f, m);
                let op = CarlitzOp::new(&m);
                let images: Vec<Poly> = poly::residues_below(&f, 3).unwrap().iter().map(|u| op.apply(u)).collect();
                for idx in 0..q.pow(7) {
                    let z = Poly::from_index(&f, idx);
                    let found = carlitz_preimage(&m, &z);
                    if let Some(u) = &found {
                        assert_eq!(&op.apply(u), &z);
                    }
                    if preimage_degree_bound(&m, &z) < 3 {
                        assert_eq!(found.is_some(), images.contains(&z), "q = {q}, M = {m}, z = {z}");
                    }
                }
            }
        }
    }

    #[test]
    fn no_root_of_x_q_plus_tx_minus_one() {
        for q in [3u64, 5] {
            let f = Field::new(q).unwrap();
            let e = CycField::new(&p(&f, "T")).unwrap();
            let mut coeffs = vec![e.zero(); q as usize + 1];
            coeffs[0] = e.from_poly(&p(&f, "-1"));
            coeffs[1] = e.from_poly(&p(&f, "T"));
            coeffs[q as usize] = e.one();
            assert!(rational_root_in_cyclotomic(&e, &coeffs).unwrap().is_empty());
        }
    }

    #[test]
    fn linear_polynomial_has_its_root() {
        let f = Field::new(3).unwrap();
        let e = CycField::new(&p(&f, "T")).unwrap();
        let coeffs = vec![e.lambda().neg(), e.one()];
        let roots = rational_root_in_cyclotomic(&e, &coeffs).unwrap();
        assert_eq!(roots.len(), 1);
        assert_eq!(roots[0].to_cyc(&e).unwrap(), e.lambda());
        let e2 = CycField::new(&p(&f, "T^2+1")).unwrap();
        assert_eq!(rational_root_in_cyclotomic(&e2, &[e2.one(), e2.one()]), Err(Error::DegreeNotOne));
    }

    #[test]
    fn roots_found_satisfy_the_polynomial() {
        let f = Field::new(3).unwrap();
        let e = CycField::new(&p(&f, "T+1")).unwrap();
        // (X - λ)(X - 1/(λ+1))·X
        let r2 = e.lambda().add(&e.one()).inv().unwrap();
        let lin1 = [e.lambda().neg(), e.one()];
        let lin2 = [r2.neg(), e.one()];
        let prod = [
            e.zero(),
            lin1[0].mul(&lin2[0]),
            lin1[0].add(&lin2[0]),
            e.one(),
        ];
        let roots = rational_root_in_cyclotomic(&e, &prod).unwrap();
        assert_eq!(roots.len(), 3);
        for r in roots {
            let x = r.to_cyc(&e).unwrap();
            let value = prod.iter().rev().fold(e.zero(), |acc, c| acc.mul(&x).add(c));
            assert!(value.is_zero());
        }
    }

    #[test]
    fn splitting_degrees() {
        let f = Field::new(3).unwrap();
        assert_eq!(kummer_splitting_degree(&p(&f, "T"), &p(&f, "1")).unwrap(), BigUint::from(3u32));
        assert_eq!(kummer_splitting_degree(&p(&f, "T+1"), &p(&f, "1")).unwrap(), BigUint::from(3u32));
        assert!(kummer_splitting_degree(&p(&f, "T"), &p(&f, "T^3+T^2")).is_err());
        let f2 = Field::new(2).unwrap();
        assert_eq!(carlitz_preimage(&p(&f2, "T^2+T+1"), &p(&f2, "1")), Some(Poly::one(&f2)));
        // the top terms cancel: C_{T^2+T+1}(T) = T when q = 2
        assert_eq!(carlitz_preimage(&p(&f2, "T^2+T+1"), &p(&f2, "T")), Some(p(&f2, "T")));
        assert_eq!(kummer_splitting_degree(&p(&f2, "T^2+T+1"), &p(&f2, "T^2")).unwrap(), BigUint::from(4u32));
    }

    #[test]
    fn theta_group() {
        let f = Field::new(3).unwrap();
        let n = p(&f, "T");
        assert_eq!(theta_group_order(&n).unwrap(), BigUint::from(6u32));
        let all = MatrixRep::all(&n).unwrap();
        assert_eq!(all.len(), 6);
        let id = MatrixRep::identity(&n);
        for x in &all {
            assert_eq!(&theta_compose(&id, x).unwrap(), x);
            assert_eq!(&theta_compose(x, &id).unwrap(), x);
            for y in &all {
                let xy = theta_compose(x, y).unwrap();
                for z in &all {
                    assert_eq!(theta_compose(&xy, z).unwrap(), theta_compose(x, &theta_compose(y, z).unwrap()).unwrap());
                }
            }
        }
        let other = MatrixRep::identity(&p(&f, "T+1"));
        assert_eq!(theta_compose(&id, &other), Err(Error::ModulusMismatch));
    }

    #[test]
    fn theta_matches_two_step_action() {
        let f = Field::new(3).unwrap();
        for n in ["T", "T+1"] {
            let n = p(&f, n);
            let all = MatrixRep::all(&n).unwrap();
            for x in &all {
                for y in &all {
                    let xy = theta_compose(x, y).unwrap();
                    for r in poly::residues_below(&f, 1).unwrap() {
                        assert_eq!(xy.apply(&r), x.apply(&y.apply(&r)));
                    }
                }
            }
        }
    }

    #[test]
    fn primitive_elements() {
        let f = Field::new(3).unwrap();
        let (m, n) = (p(&f, "T"), p(&f, "T+1"));
        let mn = m.mul(&n);
        let alpha = TorsionElem::new(&mn, &p(&f, "T+1")).unwrap();
        let beta = TorsionElem::new(&mn, &p(&f, "T")).unwrap();
        assert_eq!(alpha.add(&beta).unwrap().residue(), &p(&f, "2*T+1"));
        assert!(primitive_element_check(&m, &n, &alpha, &beta).unwrap());
        let one = p(&f, "1");
        let gen = TorsionElem::generator(&m).unwrap();
        assert!(primitive_element_check(&m, &one, &gen, &TorsionElem::zero(&one).unwrap()).unwrap());
        assert_eq!(primitive_element_check(&m, &m, &gen, &gen), Err(Error::NotCoprime));
        assert_eq!(
            primitive_element_check(&m, &n, &TorsionElem::zero(&mn).unwrap(), &beta),
            Err(Error::WrongOrders)
        );
    }

    #[test]
    fn obstruction_script() {
        for q in [3u64, 5] {
            let rows = purity_obstruction_check(&Field::new(q).unwrap(), 3).unwrap();
            assert!(rows.iter().all(|r| r.excluded));
        }
    }
}
