//! Cyclotomic function fields k(Λ_M) = k[X]/(Ψ_M) and their Galois groups.
//!
//! The Galois group (F_q[T]/M)^* is kept separate from the concrete field:
//! `UnitGroup` and `Subgroup` only need residue arithmetic, so the cogalois
//! computations can work with moduli whose field would be far too big to build.

use std::collections::{BTreeSet, HashMap, HashSet, VecDeque};
use std::fmt;
use std::sync::Arc;

use crate::carlitz::{cyclotomic_poly, CarlitzAlgebra, CarlitzOp, TorsionElem};
use crate::error::{too_large, Error, Result};
use crate::gf::Field;
use crate::poly::{self, Poly, RatFn};
use crate::xpoly::XPoly;

// ---- the abstract unit group ----

struct UnitGroupData {
    m: Poly,
    elems: Vec<Poly>,
    index: HashMap<Poly, usize>,
    /// Row-major product table, present for small groups.
    table: Option<Vec<u32>>,
}

/// (F_q[T]/(M))^* with elements numbered in residue enumeration order.
#[derive(Clone)]
pub struct UnitGroup(Arc<UnitGroupData>);

impl fmt::Debug for UnitGroup {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(R/({}))^*", self.0.m)
    }
}

impl PartialEq for UnitGroup {
    fn eq(&self, other: &Self) -> bool {
        Arc::ptr_eq(&self.0, &other.0) || self.0.m == other.0.m
    }
}
impl Eq for UnitGroup {}

const TABLE_LIMIT: usize = 512;

impl UnitGroup {
    pub fn new(m: &Poly) -> Result<UnitGroup> {
        if m.is_zero() {
            return Err(Error::ZeroInput);
        }
        let m = m.monic();
        let elems = if m.degree() == 0 {
            vec![Poly::zero(m.field())]
        } else {
            poly::unit_residues(&m)?
        };
        let index: HashMap<Poly, usize> = elems.iter().cloned().enumerate().map(|(i, e)| (e, i)).collect();
        let n = elems.len();
        let table = (n <= TABLE_LIMIT && m.degree() > 0).then(|| {
            let mut t = vec![0u32; n * n];
            for i in 0..n {
                for j in i..n {
                    let k = index[&elems[i].mulmod(&elems[j], &m)] as u32;
                    t[i * n + j] = k;
                    t[j * n + i] = k;
                }
            }
            t
        });
        Ok(UnitGroup(Arc::new(UnitGroupData { m, elems, index, table })))
    }

    pub fn modulus(&self) -> &Poly {
        &self.0.m
    }

    pub fn field(&self) -> &Field {
        self.0.m.field()
    }

    pub fn order(&self) -> usize {
        self.0.elems.len()
    }

    pub fn elem(&self, i: usize) -> &Poly {
        &self.0.elems[i]
    }

    pub fn elems(&self) -> &[Poly] {
        &self.0.elems
    }

    pub fn identity(&self) -> usize {
        0
    }

    /// Index of the residue class of `a`, if it is a unit.
    pub fn index_of(&self, a: &Poly) -> Option<usize> {
        if self.0.m.degree() == 0 {
            return (!a.is_zero()).then_some(0);
        }
        let r = a.rem(&self.0.m).ok()?;
        self.0.index.get(&r).copied()
    }

    pub fn mul(&self, i: usize, j: usize) -> usize {
        let n = self.order();
        match &self.0.table {
            Some(t) => t[i * n + j] as usize,
            None if n == 1 => 0,
            None => self.0.index[&self.0.elems[i].mulmod(&self.0.elems[j], &self.0.m)],
        }
    }

    pub fn pow(&self, i: usize, mut e: u64) -> usize {
        let (mut base, mut acc) = (i, self.identity());
        while e > 0 {
            if e & 1 == 1 {
                acc = self.mul(acc, base);
            }
            base = self.mul(base, base);
            e >>= 1;
        }
        acc
    }

    pub fn inv(&self, i: usize) -> usize {
        let n = self.order() as u64;
        // the element order divides n
        self.pow(i, n - 1)
    }

    pub fn element_order(&self, i: usize) -> usize {
        let mut k = 1;
        let mut x = i;
        while x != self.identity() {
            x = self.mul(x, i);
            k += 1;
        }
        k
    }

    /// The subgroup generated by the given residues.
    pub fn generated(&self, gens: &[Poly]) -> Result<Subgroup> {
        let idx = gens
            .iter()
            .map(|g| self.index_of(g).ok_or_else(|| Error::NotAUnit(g.to_string())))
            .collect::<Result<Vec<_>>>()?;
        Ok(self.closure(&[self.identity()], &idx))
    }

    pub fn whole(&self) -> Subgroup {
        Subgroup { group: self.clone(), members: (0..self.order()).collect() }
    }

    /// H_D: the residues congruent to 1 mod D, i.e. Gal(k(Λ_M)/k(Λ_D)) for D | M.
    pub fn congruent_to_one(&self, d: &Poly) -> Subgroup {
        let one = Poly::one(self.field());
        let members = (0..self.order()).filter(|&i| d.divides(&self.elem(i).sub(&one))).collect();
        Subgroup { group: self.clone(), members }
    }

    pub fn trivial(&self) -> Subgroup {
        Subgroup { group: self.clone(), members: vec![self.identity()] }
    }

    /// Closure of `base ∪ extra` under multiplication (finite, so also under inverses).
    fn closure(&self, base: &[usize], extra: &[usize]) -> Subgroup {
        let mut seen: HashSet<usize> = base.iter().copied().collect();
        seen.insert(self.identity());
        let mut gens: Vec<usize> = base.to_vec();
        gens.extend_from_slice(extra);
        gens.retain(|&g| g != self.identity());
        gens.sort_unstable();
        gens.dedup();
        let mut queue: VecDeque<usize> = seen.iter().copied().collect();
        for &g in extra {
            if seen.insert(g) {
                queue.push_back(g);
            }
        }
        while let Some(x) = queue.pop_front() {
            for &g in &gens {
                let y = self.mul(x, g);
                if seen.insert(y) {
                    queue.push_back(y);
                }
            }
        }
        let mut members: Vec<usize> = seen.into_iter().collect();
        members.sort_unstable();
        Subgroup { group: self.clone(), members }
    }

    /// Every subgroup exactly once, ordered by size and then by members.
    pub fn subgroup_lattice(&self) -> Result<Vec<Subgroup>> {
        let cap = self.field().caps().lattice;
        if self.order() as u64 > cap {
            return Err(too_large("subgroup lattice", "lattice", self.order(), cap));
        }
        Ok(self.whole().subgroups())
    }
}

/// A subgroup of a `UnitGroup`, stored as sorted element indices.
#[derive(Clone, PartialEq, Eq)]
pub struct Subgroup {
    group: UnitGroup,
    members: Vec<usize>,
}

impl fmt::Debug for Subgroup {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "<{}>", self.lift_strings().join(","))
    }
}

impl std::hash::Hash for Subgroup {
    fn hash<H: std::hash::Hasher>(&self, state: &mut H) {
        self.members.hash(state);
    }
}

impl Subgroup {
    pub fn group(&self) -> &UnitGroup {
        &self.group
    }

    pub fn members(&self) -> &[usize] {
        &self.members
    }

    pub fn order(&self) -> usize {
        self.members.len()
    }

    pub fn lifts(&self) -> Vec<Poly> {
        self.members.iter().map(|&i| self.group.elem(i).clone()).collect()
    }

    pub fn lift_strings(&self) -> Vec<String> {
        self.members.iter().map(|&i| self.group.elem(i).to_string()).collect()
    }

    pub fn contains(&self, i: usize) -> bool {
        self.members.binary_search(&i).is_ok()
    }

    pub fn contains_poly(&self, a: &Poly) -> bool {
        self.group.index_of(a).is_some_and(|i| self.contains(i))
    }

    pub fn is_subgroup_of(&self, other: &Subgroup) -> bool {
        self.group == other.group && self.members.iter().all(|&i| other.contains(i))
    }

    pub fn is_cyclic(&self) -> bool {
        self.members.iter().any(|&i| self.group.element_order(i) == self.order())
    }

    /// Some element generating the subgroup, if it is cyclic.
    pub fn cyclic_generator(&self) -> Option<usize> {
        self.members.iter().copied().find(|&i| self.group.element_order(i) == self.order())
    }

    /// A small generating set, picked greedily in index order.
    pub fn generators(&self) -> Vec<usize> {
        let mut gens = Vec::new();
        let mut span = self.group.trivial();
        for &i in &self.members {
            if !span.contains(i) {
                gens.push(i);
                span = self.group.closure(&span.members, &[i]);
            }
        }
        gens
    }

    /// All subgroups of this subgroup.
    pub fn subgroups(&self) -> Vec<Subgroup> {
        let g = &self.group;
        let mut found: BTreeSet<Vec<usize>> = BTreeSet::new();
        let trivial = vec![g.identity()];
        found.insert(trivial.clone());
        let mut frontier = vec![trivial];
        // every subgroup is reached by adjoining one element at a time
        while let Some(s) = frontier.pop() {
            for &x in &self.members {
                if s.binary_search(&x).is_ok() {
                    continue;
                }
                let next = g.closure(&s, &[x]).members;
                if found.insert(next.clone()) {
                    frontier.push(next);
                }
            }
        }
        let mut out: Vec<Subgroup> = found
            .into_iter()
            .map(|members| Subgroup { group: g.clone(), members })
            .collect();
        out.sort_by(|a, b| a.order().cmp(&b.order()).then_with(|| a.members.cmp(&b.members)));
        out
    }

    /// Subgroups of index `k` in this subgroup.
    pub fn subgroups_of_index(&self, k: usize) -> Vec<Subgroup> {
        self.subgroups().into_iter().filter(|s| s.order() * k == self.order()).collect()
    }
}

/// [L : K] = |H_K| / |H_L| for nested subgroups.
pub fn subext_degree(h_k: &Subgroup, h_l: &Subgroup) -> Result<usize> {
    if !h_l.is_subgroup_of(h_k) {
        return Err(Error::NotNested);
    }
    Ok(h_k.order() / h_l.order())
}

// ---- the concrete field ----

struct CycFieldData {
    group: UnitGroup,
    psi: XPoly,
    degree: usize,
    /// λ^{iq} mod Ψ for i < degree, as integral coefficient vectors.
    frob_basis: Vec<XPoly>,
}

/// k(Λ_M) with basis 1, λ, ..., λ^{Φ(M)-1}, where λ is a root of Ψ_M.
#[derive(Clone)]
pub struct CycField(Arc<CycFieldData>);

impl fmt::Debug for CycField {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "k(Lambda[{}])", self.modulus())
    }
}

impl PartialEq for CycField {
    fn eq(&self, other: &Self) -> bool {
        Arc::ptr_eq(&self.0, &other.0) || self.0.group == other.0.group
    }
}
impl Eq for CycField {}

/// An element Σ a_i λ^i / d with a_i ∈ F_q[T], d monic, and no common factor.
#[derive(Clone, PartialEq, Eq)]
pub struct CycElem {
    field: CycField,
    num: XPoly,
    den: Poly,
}

impl fmt::Debug for CycElem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{:?}", self.coeff_strings())
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum CycOp {
    Add,
    Mul,
    Inv,
}

impl CycField {
    pub fn new(m: &Poly) -> Result<CycField> {
        let m = m.monic();
        let f = m.field();
        let degree = poly::phi(&m)?;
        let cap = f.caps().field_degree;
        if degree > cap.into() {
            return Err(too_large("cyclotomic field degree", "field_degree", &degree, cap));
        }
        let psi = cyclotomic_poly(&m)?.poly;
        let group = UnitGroup::new(&m)?;
        let degree = psi.deg().expect("nonzero");
        let q = f.q() as usize;
        let frob_basis = (0..degree)
            .map(|i| XPoly::monomial(Poly::one(f), i * q).divrem_monic(&psi).1)
            .collect();
        Ok(CycField(Arc::new(CycFieldData { group, psi, degree, frob_basis })))
    }

    pub fn modulus(&self) -> &Poly {
        self.0.group.modulus()
    }

    pub fn base(&self) -> &Field {
        self.modulus().field()
    }

    pub fn degree(&self) -> usize {
        self.0.degree
    }

    pub fn psi(&self) -> &XPoly {
        &self.0.psi
    }

    pub fn group(&self) -> &UnitGroup {
        &self.0.group
    }

    pub fn galois_group(&self) -> Vec<GaloisElem> {
        self.group().elems().iter().map(|a| GaloisElem { m: self.modulus().clone(), a: a.clone() }).collect()
    }

    pub fn subgroup_lattice(&self) -> Result<Vec<Subgroup>> {
        self.group().subgroup_lattice()
    }

    fn make(&self, num: XPoly, den: Poly) -> CycElem {
        let num = num.divrem_monic(&self.0.psi).1;
        normalize(self, num, den)
    }

    pub fn zero(&self) -> CycElem {
        CycElem { field: self.clone(), num: XPoly::zero(self.base()), den: Poly::one(self.base()) }
    }

    pub fn one(&self) -> CycElem {
        self.from_poly(&Poly::one(self.base()))
    }

    pub fn from_poly(&self, a: &Poly) -> CycElem {
        self.make(XPoly::new(self.base(), vec![a.clone()]), Poly::one(self.base()))
    }

    pub fn from_ratfn(&self, a: &RatFn) -> CycElem {
        self.make(XPoly::new(self.base(), vec![a.num().clone()]), a.den().clone())
    }

    /// Σ coeffs[i] λ^i.
    pub fn from_coeffs(&self, coeffs: &[RatFn]) -> CycElem {
        coeffs.iter().enumerate().fold(self.zero(), |acc, (i, c)| {
            let term = self.make(XPoly::monomial(c.num().clone(), i), c.den().clone());
            acc.add(&term)
        })
    }

    /// The designated root λ = λ_M of Ψ_M.
    pub fn lambda(&self) -> CycElem {
        self.make(XPoly::monomial(Poly::one(self.base()), 1), Poly::one(self.base()))
    }

    /// The concrete point of a torsion element λ^B_D with D | M, taken as C_{B·M/D}(λ).
    pub fn torsion_point(&self, x: &TorsionElem) -> Result<CycElem> {
        let lifted = x.embed(self.modulus())?;
        Ok(CarlitzOp::new(lifted.residue()).apply(&self.lambda()))
    }

    pub fn galois_elem(&self, a: &Poly) -> Result<GaloisElem> {
        self.group().index_of(a).ok_or_else(|| Error::NotAUnit(a.to_string()))?;
        Ok(GaloisElem { m: self.modulus().clone(), a: a.rem(self.modulus())? })
    }

    /// σ_A applied to x: λ ↦ C_A(λ), extended k-linearly.
    pub fn galois_act(&self, sigma: &GaloisElem, x: &CycElem) -> Result<CycElem> {
        if &sigma.m != self.modulus() || &x.field != self {
            return Err(Error::FieldMismatch);
        }
        let image = CarlitzOp::new(&sigma.a).apply(&self.lambda());
        Ok(x.substitute(&image))
    }

    pub fn fixed_by(&self, x: &CycElem, h: &Subgroup) -> Result<bool> {
        if h.group() != self.group() {
            return Err(Error::FieldMismatch);
        }
        for a in h.lifts() {
            if &self.galois_act(&GaloisElem { m: self.modulus().clone(), a }, x)? != x {
                return Ok(false);
            }
        }
        Ok(true)
    }

    pub fn trace_under(&self, h: &Subgroup, x: &CycElem) -> Result<CycElem> {
        if h.group() != self.group() {
            return Err(Error::FieldMismatch);
        }
        let mut acc = self.zero();
        for a in h.lifts() {
            acc = acc.add(&self.galois_act(&GaloisElem { m: self.modulus().clone(), a }, x)?);
        }
        Ok(acc)
    }
}

fn normalize(field: &CycField, num: XPoly, den: Poly) -> CycElem {
    let base = field.base();
    if num.is_zero() {
        return CycElem { field: field.clone(), num, den: Poly::one(base) };
    }
    let mut g = den.clone();
    for c in num.coeffs() {
        if g.is_one() {
            break;
        }
        g = g.gcd(c);
    }
    let lead_inv = base.inv(den.lead()).expect("nonzero denominator");
    let den = den.div_exact(&g).scale(lead_inv);
    let num = XPoly::new(
        base,
        num.coeffs().iter().map(|c| c.div_exact(&g).scale(lead_inv)).collect(),
    );
    CycElem { field: field.clone(), num, den }
}

impl CycElem {
    pub fn field(&self) -> &CycField {
        &self.field
    }

    pub fn is_zero(&self) -> bool {
        self.num.is_zero()
    }

    /// Coefficients on 1, λ, ..., λ^{n-1}.
    pub fn coeffs(&self) -> Vec<RatFn> {
        (0..self.field.degree())
            .map(|i| RatFn::new(self.num.coeff(i), self.den.clone()).expect("nonzero denominator"))
            .collect()
    }

    pub fn coeff_strings(&self) -> Vec<String> {
        self.coeffs()
            .iter()
            .map(|c| format!("{}/{}", c.num(), c.den()))
            .collect()
    }

    fn check(&self, other: &CycElem) -> Result<()> {
        if self.field != other.field {
            return Err(Error::FieldMismatch);
        }
        Ok(())
    }

    pub fn arith(&self, other: &CycElem, op: CycOp) -> Result<CycElem> {
        self.check(other)?;
        match op {
            CycOp::Add => Ok(self.add(other)),
            CycOp::Mul => Ok(self.mul(other)),
            CycOp::Inv => self.inv(),
        }
    }

    pub fn add(&self, other: &CycElem) -> CycElem {
        let num = self.num.scale(&other.den).add(&other.num.scale(&self.den));
        normalize(&self.field, num, self.den.mul(&other.den))
    }

    pub fn neg(&self) -> CycElem {
        let num = XPoly::new(self.field.base(), self.num.coeffs().iter().map(Poly::neg).collect());
        CycElem { field: self.field.clone(), num, den: self.den.clone() }
    }

    pub fn sub(&self, other: &CycElem) -> CycElem {
        self.add(&other.neg())
    }

    pub fn mul(&self, other: &CycElem) -> CycElem {
        self.field.make(self.num.mul(&other.num), self.den.mul(&other.den))
    }

    pub fn scale(&self, c: &RatFn) -> CycElem {
        normalize(&self.field, self.num.scale(c.num()), self.den.mul(c.den()))
    }

    pub fn pow(&self, mut e: u64) -> CycElem {
        let mut base = self.clone();
        let mut acc = self.field.one();
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.mul(&base);
            }
            base = base.mul(&base);
            e >>= 1;
        }
        acc
    }

    /// Inverse through the extended Euclidean algorithm in k[X].
    pub fn inv(&self) -> Result<CycElem> {
        if self.is_zero() {
            return Err(Error::DivByZero);
        }
        let base = self.field.base();
        let a: Vec<RatFn> = self.num.coeffs().iter().map(|c| RatFn::from(c.clone())).collect();
        let m: Vec<RatFn> = self.field.psi().coeffs().iter().map(|c| RatFn::from(c.clone())).collect();
        let (g, s) = kpoly_xgcd(base, a, m);
        // g is a nonzero constant because Ψ_M is irreducible
        if g.len() != 1 {
            return Err(Error::HypothesisNotMet("element shares a factor with the defining polynomial".into()));
        }
        let g0 = g[0].inv()?;
        let scaled: Vec<RatFn> = s.iter().map(|c| c.mul(&g0).mul(&RatFn::from(self.den.clone()))).collect();
        Ok(self.field.from_coeffs(&scaled))
    }

    pub fn div(&self, other: &CycElem) -> Result<CycElem> {
        self.check(other)?;
        Ok(self.mul(&other.inv()?))
    }

    /// Replaces λ by `image` in the basis expansion.
    pub fn substitute(&self, image: &CycElem) -> CycElem {
        let mut acc = self.field.zero();
        for c in self.num.coeffs().iter().rev() {
            acc = acc.mul(image).add(&self.field.from_poly(c));
        }
        acc.scale(&RatFn::new(Poly::one(self.field.base()), self.den.clone()).expect("nonzero"))
    }

    /// The q-th power, through the precomputed images of λ^i.
    pub fn frobenius_pow(&self) -> CycElem {
        let base = self.field.base();
        let mut acc = XPoly::zero(base);
        for (i, c) in self.num.coeffs().iter().enumerate() {
            if !c.is_zero() {
                acc = acc.add(&self.field.0.frob_basis[i].scale(&c.frobenius_q()));
            }
        }
        normalize(&self.field, acc, self.den.frobenius_q())
    }
}

impl CarlitzAlgebra for CycElem {
    fn zero_like(&self) -> Self {
        self.field.zero()
    }
    fn add(&self, other: &Self) -> Self {
        CycElem::add(self, other)
    }
    fn frobenius_q(&self) -> Self {
        self.frobenius_pow()
    }
    fn scale_poly(&self, c: &Poly) -> Self {
        normalize(&self.field, self.num.scale(c), self.den.clone())
    }
}

/// σ_A with A a unit mod M.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GaloisElem {
    m: Poly,
    a: Poly,
}

impl GaloisElem {
    pub fn lift(&self) -> &Poly {
        &self.a
    }
}

// ---- polynomials over k, only for inversion ----

fn kp_trim(mut v: Vec<RatFn>) -> Vec<RatFn> {
    while v.last().is_some_and(RatFn::is_zero) {
        v.pop();
    }
    v
}

fn kp_sub_scaled(a: &[RatFn], b: &[RatFn], c: &RatFn, shift: usize, field: &Field) -> Vec<RatFn> {
    let n = a.len().max(b.len() + shift);
    let mut out: Vec<RatFn> = (0..n).map(|i| a.get(i).cloned().unwrap_or_else(|| RatFn::zero(field))).collect();
    for (j, bj) in b.iter().enumerate() {
        out[j + shift] = out[j + shift].sub(&bj.mul(c));
    }
    kp_trim(out)
}

fn kp_divrem(a: &[RatFn], b: &[RatFn], field: &Field) -> (Vec<RatFn>, Vec<RatFn>) {
    let mut r = kp_trim(a.to_vec());
    let db = b.len() - 1;
    let lead_inv = b[db].inv().expect("nonzero leading coefficient");
    let mut q = vec![RatFn::zero(field); r.len().saturating_sub(db)];
    while r.len() > db {
        let shift = r.len() - 1 - db;
        let c = r[r.len() - 1].mul(&lead_inv);
        r = kp_sub_scaled(&r, b, &c, shift, field);
        q[shift] = c;
    }
    (kp_trim(q), r)
}

fn kp_mul(a: &[RatFn], b: &[RatFn], field: &Field) -> Vec<RatFn> {
    if a.is_empty() || b.is_empty() {
        return Vec::new();
    }
    let mut out = vec![RatFn::zero(field); a.len() + b.len() - 1];
    for (i, x) in a.iter().enumerate() {
        for (j, y) in b.iter().enumerate() {
            out[i + j] = out[i + j].add(&x.mul(y));
        }
    }
    kp_trim(out)
}

/// (g, s) with g = s·a mod m.
fn kpoly_xgcd(field: &Field, a: Vec<RatFn>, m: Vec<RatFn>) -> (Vec<RatFn>, Vec<RatFn>) {
    let (mut r0, mut r1) = (m, kp_trim(a));
    let (mut s0, mut s1) = (Vec::new(), vec![RatFn::one(field)]);
    while !r1.is_empty() {
        let (q, r) = kp_divrem(&r0, &r1, field);
        r0 = std::mem::replace(&mut r1, r);
        let qs = kp_mul(&q, &s1, field);
        let next = kp_sub_scaled(&s0, &qs, &RatFn::one(field), 0, field);
        s0 = std::mem::replace(&mut s1, next);
    }
    (r0, s0)
}
