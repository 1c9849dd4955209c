//! Torsion of fixed fields, purity, crossed homomorphisms, cogalois orders and
//! radical subextensions inside a cyclotomic ambient k(Λ_M).
//!
//! A subextension L/K of E = k(Λ_M) is given by the pair of subgroups fixing
//! K and L. The torsion group of E^H is Λ_D for a divisor D of M, so every
//! question about Carlitz roots becomes residue arithmetic modulo D.

use std::collections::{BTreeSet, HashSet};

use num_bigint::BigUint;
use num_traits::One;
use serde::Serialize;

use crate::carlitz::TorsionElem;
use crate::cycfield::Subgroup;
use crate::error::{too_large, Error, Result};
use crate::gf::Field;
use crate::poly::{self, Poly};

// ---- Λ_D as a table of indices ----

/// Λ_D with points numbered like `Poly::from_index`.
#[derive(Debug, Clone)]
pub struct TorsionSpace {
    d: Poly,
    deg: usize,
    size: usize,
}

impl TorsionSpace {
    pub fn new(d: &Poly) -> Result<TorsionSpace> {
        let d = d.monic();
        let f = d.field();
        let deg = d.degree();
        let cap = f.caps().residues;
        let size = (f.q() as u64)
            .checked_pow(deg as u32)
            .filter(|&s| s <= cap)
            .ok_or_else(|| too_large("torsion points", "residues", format!("{}^{deg}", f.q()), cap))?;
        Ok(TorsionSpace { d, deg, size: size as usize })
    }

    pub fn modulus(&self) -> &Poly {
        &self.d
    }

    pub fn size(&self) -> usize {
        self.size
    }

    fn field(&self) -> &Field {
        self.d.field()
    }

    pub fn add(&self, x: u32, y: u32) -> u32 {
        let f = self.field();
        let q = f.q();
        let (mut x, mut y, mut out, mut place) = (x, y, 0u32, 1u32);
        for _ in 0..self.deg {
            out += f.add(x % q, y % q) * place;
            x /= q;
            y /= q;
            place = place.wrapping_mul(q);
        }
        out
    }

    pub fn neg(&self, x: u32) -> u32 {
        let f = self.field();
        let q = f.q();
        let (mut x, mut out, mut place) = (x, 0u32, 1u32);
        for _ in 0..self.deg {
            out += f.neg(x % q) * place;
            x /= q;
            place = place.wrapping_mul(q);
        }
        out
    }

    pub fn to_poly(&self, x: u32) -> Poly {
        Poly::from_index(self.field(), x as u64)
    }

    pub fn index(&self, b: &Poly) -> u32 {
        let r = b.rem(&self.d).expect("nonzero modulus");
        let q = self.field().q();
        r.coeffs().iter().rev().fold(0, |acc, &c| acc * q + c)
    }

    pub fn point(&self, x: u32) -> TorsionElem {
        TorsionElem::new(&self.d, &self.to_poly(x)).expect("nonzero modulus")
    }

    /// x ↦ a·x as a lookup table.
    pub fn mul_table(&self, a: &Poly) -> Vec<u32> {
        (0..self.size as u32)
            .map(|x| self.index(&self.to_poly(x).mulmod(a, &self.d)))
            .collect()
    }
}

// ---- finite groups acting on Λ_D ----

/// A finite abelian group given by its product table, acting on Λ_D through units mod D.
/// Element 0 is the identity.
#[derive(Debug, Clone)]
pub struct ActingGroup {
    labels: Vec<Poly>,
    table: Vec<usize>,
    action: Vec<Poly>,
    d: Poly,
}

impl ActingGroup {
    /// A subgroup of (R/M)^* acting on Λ_D, D | M, by its lifts.
    pub fn on_subgroup(h: &Subgroup, d: &Poly) -> Result<ActingGroup> {
        let g = h.group();
        if !d.divides(g.modulus()) {
            return Err(Error::NotAMultiple);
        }
        let members = h.members();
        let pos = |x: usize| members.binary_search(&x).expect("closed subgroup");
        let n = members.len();
        let mut table = vec![0; n * n];
        for (i, &a) in members.iter().enumerate() {
            for (j, &b) in members.iter().enumerate() {
                table[i * n + j] = pos(g.mul(a, b));
            }
        }
        let labels: Vec<Poly> = members.iter().map(|&i| g.elem(i).clone()).collect();
        let action = labels.iter().map(|a| reduce_unit(a, d)).collect();
        Ok(ActingGroup { labels, table, action, d: d.monic() })
    }

    /// upper/lower acting on Λ_D; every element of `lower` must act trivially.
    pub fn quotient(upper: &Subgroup, lower: &Subgroup, d: &Poly) -> Result<ActingGroup> {
        if !lower.is_subgroup_of(upper) {
            return Err(Error::NotNested);
        }
        let g = upper.group();
        if !d.divides(g.modulus()) {
            return Err(Error::NotAMultiple);
        }
        let one = Poly::one(d.field());
        if lower.lifts().iter().any(|a| !reduce_unit(a, d).sub(&one).rem(d).expect("nonzero").is_zero()) {
            return Err(Error::HypothesisNotMet("the lower subgroup must act trivially on the module".into()));
        }
        // coset of each upper member; cosets numbered by their smallest member
        let mut coset_of = std::collections::HashMap::new();
        let mut reps: Vec<usize> = Vec::new();
        for &x in upper.members() {
            if coset_of.contains_key(&x) {
                continue;
            }
            let id = reps.len();
            reps.push(x);
            for &l in lower.members() {
                coset_of.insert(g.mul(x, l), id);
            }
        }
        let n = reps.len();
        let mut table = vec![0; n * n];
        for i in 0..n {
            for j in 0..n {
                table[i * n + j] = coset_of[&g.mul(reps[i], reps[j])];
            }
        }
        let labels: Vec<Poly> = reps.iter().map(|&i| g.elem(i).clone()).collect();
        let action = labels.iter().map(|a| reduce_unit(a, d)).collect();
        Ok(ActingGroup { labels, table, action, d: d.monic() })
    }

    /// ⟨σ⟩ of order n with σ acting as multiplication by `a`; needs a^n ≡ 1 mod D.
    pub fn cyclic(n: usize, a: &Poly, d: &Poly) -> Result<ActingGroup> {
        let d = d.monic();
        let a = a.rem(&d)?;
        let one = Poly::one(d.field()).rem(&d)?;
        if n == 0 || a.powmod(n as u64, &d) != one || (!d.is_constant() && !a.gcd(&d).is_one()) {
            return Err(Error::HypothesisNotMet(format!("{a} does not define an action of order dividing {n}")));
        }
        let table = (0..n * n).map(|k| (k / n + k % n) % n).collect();
        let action: Vec<Poly> = (0..n).map(|i| a.powmod(i as u64, &d)).collect();
        Ok(ActingGroup { labels: action.clone(), table, action, d })
    }

    pub fn order(&self) -> usize {
        self.labels.len()
    }

    pub fn modulus(&self) -> &Poly {
        &self.d
    }

    pub fn labels(&self) -> &[Poly] {
        &self.labels
    }

    /// The unit by which element i acts.
    pub fn action(&self, i: usize) -> &Poly {
        &self.action[i]
    }

    pub fn mul(&self, i: usize, j: usize) -> usize {
        self.table[i * self.order() + j]
    }

    pub fn element_order(&self, i: usize) -> usize {
        let (mut x, mut k) = (i, 1);
        while x != 0 {
            x = self.mul(x, i);
            k += 1;
        }
        k
    }

    pub fn cyclic_generator(&self) -> Option<usize> {
        (0..self.order()).find(|&i| self.element_order(i) == self.order())
    }

    fn span(&self, gens: &[usize]) -> HashSet<usize> {
        let mut seen: HashSet<usize> = [0].into_iter().collect();
        let mut stack = vec![0];
        while let Some(x) = stack.pop() {
            for &g in gens {
                let y = self.mul(x, g);
                if seen.insert(y) {
                    stack.push(y);
                }
            }
        }
        seen
    }

    /// Greedy generating set in element order.
    pub fn generators(&self) -> Vec<usize> {
        if let Some(g) = self.cyclic_generator().filter(|&g| g != 0) {
            return vec![g];
        }
        let mut gens = Vec::new();
        let mut span = self.span(&gens);
        for i in 0..self.order() {
            if !span.contains(&i) {
                gens.push(i);
                span = self.span(&gens);
            }
        }
        gens
    }

    /// D' with Λ_D^G = Λ_{D'}: gcd(D, a_σ - 1 for all σ).
    pub fn fixed_divisor(&self) -> Poly {
        let one = Poly::one(self.d.field());
        self.action.iter().fold(self.d.clone(), |acc, a| acc.gcd(&a.sub(&one)))
    }
}

fn reduce_unit(a: &Poly, d: &Poly) -> Poly {
    a.rem(&d.monic()).expect("nonzero modulus")
}

/// Map an element of Λ_D: |{x : c·x = 0}| = q^{deg gcd(D, c)}.
fn kernel_order(d: &Poly, c: &Poly) -> BigUint {
    q_power(d.field(), d.gcd(c).degree() as u64)
}

fn q_power(f: &Field, e: u64) -> BigUint {
    BigUint::from(f.q()).pow(e as u32)
}

// ---- crossed homomorphisms ----

/// Z¹(G, Λ_D) by exhaustive search, with B¹ marked.
#[derive(Debug, Clone)]
pub struct CocycleGroup {
    pub group: ActingGroup,
    pub space: TorsionSpace,
    /// Each cocycle as its value table, indexed by group element.
    pub cocycles: Vec<Vec<u32>>,
    /// Distinct coboundaries σ ↦ σu - u.
    pub coboundaries: Vec<Vec<u32>>,
}

impl CocycleGroup {
    pub fn order(&self) -> BigUint {
        BigUint::from(self.cocycles.len())
    }

    pub fn b1_order(&self) -> BigUint {
        BigUint::from(self.coboundaries.len())
    }

    pub fn h1_order(&self) -> BigUint {
        self.order() / self.b1_order()
    }

    /// The full table of cocycle k as torsion points.
    pub fn table(&self, k: usize) -> Vec<TorsionElem> {
        self.cocycles[k].iter().map(|&x| self.space.point(x)).collect()
    }

    /// {σ : h(σ) = 0}.
    pub fn kernel(&self, k: usize) -> Vec<usize> {
        (0..self.group.order()).filter(|&i| self.cocycles[k][i] == 0).collect()
    }
}

/// Every crossed homomorphism f(στ) = f(σ) + σ·f(τ) from G to Λ_D.
pub fn z1_group(g: &ActingGroup) -> Result<CocycleGroup> {
    let space = TorsionSpace::new(g.modulus())?;
    let caps = *g.modulus().field().caps();
    let n = g.order();
    let s = space.size();
    let gens = g.generators();
    let r = gens.len() as u32;
    let tries = (s as u64).checked_pow(r).filter(|&t| t <= caps.cocycle_search);
    let tries = tries.ok_or_else(|| too_large("cocycle search", "cocycle_search", format!("{s}^{r}"), caps.cocycle_search))?;
    if (n as u64) * (s as u64) > caps.residues * 16 {
        return Err(too_large("action tables", "residues", n * s, caps.residues * 16));
    }
    let acts: Vec<Vec<u32>> = (0..n).map(|i| space.mul_table(g.action(i))).collect();

    // spanning tree: x = parent · gens[k]
    let mut tree: Vec<(usize, usize, usize)> = Vec::new();
    let mut seen = vec![false; n];
    seen[0] = true;
    let mut queue = std::collections::VecDeque::from([0usize]);
    while let Some(y) = queue.pop_front() {
        for (k, &gk) in gens.iter().enumerate() {
            let x = g.mul(y, gk);
            if !seen[x] {
                seen[x] = true;
                tree.push((x, y, k));
                queue.push_back(x);
            }
        }
    }

    let mut cocycles = Vec::new();
    let mut vals = vec![0u32; gens.len()];
    let mut f = vec![0u32; n];
    for t in 0..tries {
        let mut rest = t;
        for v in vals.iter_mut() {
            *v = (rest % s as u64) as u32;
            rest /= s as u64;
        }
        f[0] = 0;
        for &(x, y, k) in &tree {
            f[x] = space.add(f[y], acts[y][vals[k] as usize]);
        }
        // the rule on all (x, generator) pairs implies it everywhere
        let consistent = (0..n).all(|x| {
            gens.iter()
                .enumerate()
                .all(|(k, &gk)| f[g.mul(x, gk)] == space.add(f[x], acts[x][vals[k] as usize]))
        });
        if consistent {
            cocycles.push(f.clone());
        }
    }

    let mut seen_b: HashSet<Vec<u32>> = HashSet::new();
    let mut coboundaries = Vec::new();
    for u in 0..s as u32 {
        let fu: Vec<u32> = (0..n).map(|x| space.add(acts[x][u as usize], space.neg(u))).collect();
        if seen_b.insert(fu.clone()) {
            coboundaries.push(fu);
        }
    }

    let out = CocycleGroup { group: g.clone(), space, cocycles, coboundaries };
    let fixed = g.fixed_divisor();
    let expected_b1 = q_power(g.modulus().field(), (g.modulus().degree() - fixed.degree()) as u64);
    assert_eq!(out.b1_order(), expected_b1, "coboundary count disagrees with the fixed divisor");
    if let Some(c) = g.cyclic_generator() {
        assert_eq!(out.order(), ker_norm_order(g, c), "Z¹ disagrees with the kernel of the norm");
    }
    Ok(out)
}

/// |ker N| for N = Σ_{i<n} σ^i, σ the element `gen` of a cyclic group.
pub fn ker_norm_order(g: &ActingGroup, gen: usize) -> BigUint {
    let d = g.modulus();
    let n = g.element_order(gen);
    let a = g.action(gen);
    let mut norm = Poly::zero(d.field());
    let mut power = Poly::one(d.field());
    for _ in 0..n {
        norm = norm.add(&power);
        power = power.mulmod(a, d);
    }
    kernel_order(d, &norm.rem(d).expect("nonzero"))
}

/// |im(σ - 1)| on Λ_D.
pub fn image_sigma_minus_one_order(g: &ActingGroup, gen: usize) -> BigUint {
    let d = g.modulus();
    let c = g.action(gen).sub(&Poly::one(d.field()));
    q_power(d.field(), d.degree() as u64) / kernel_order(d, &c.rem(d).expect("nonzero"))
}

/// (|B¹|, |H¹|), cross-checked against ker N / im(σ - 1) for cyclic groups.
pub fn b1_h1(g: &ActingGroup) -> Result<(BigUint, BigUint)> {
    let z = z1_group(g)?;
    let (b1, h1) = (z.b1_order(), z.h1_order());
    if let Some(c) = g.cyclic_generator() {
        assert_eq!(
            h1,
            ker_norm_order(g, c) / image_sigma_minus_one_order(g, c),
            "H¹ disagrees with ker N / im(σ - 1)"
        );
    }
    Ok((b1, h1))
}

/// Exponent data for an order-p generator acting on Λ_D by A: per irreducible P | D,
/// (deg P, exponent in D, exponent in A - 1 capped at α), and the resulting ε.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CyclicPData {
    pub prime: Poly,
    pub alpha: u32,
    pub beta: u32,
    pub gamma: u32,
    pub delta: u32,
    pub epsilon: u32,
}

/// |H¹(C_p, Λ_D)| from the valuations of D and A - 1 alone.
pub fn h1_cyclic_p_closed_form(d: &Poly, a: &Poly) -> Result<(BigUint, Vec<CyclicPData>)> {
    let f = d.field();
    let p = f.p();
    let d = d.monic();
    let one = Poly::one(f);
    if a.powmod(p as u64, &d) != one.rem(&d)? {
        return Err(Error::HypothesisNotMet("the generator must have order dividing p on Λ_D".into()));
    }
    let a1 = a.sub(&one).rem(&d)?;
    let mut exponent = 0u64;
    let mut rows = Vec::new();
    for (prime, alpha) in poly::factor(&d)?.factors {
        // A ≡ 1 mod D gives γ = ∞; capping at α changes nothing below
        let gamma = if a1.is_zero() { alpha } else { a1.valuation(&prime).min(alpha) };
        let beta = alpha.min(gamma);
        let delta = alpha.saturating_sub((p - 1) * gamma);
        assert!(beta >= delta, "negative ε: the action is not of order p");
        let epsilon = beta - delta;
        exponent += epsilon as u64 * prime.degree() as u64;
        rows.push(CyclicPData { prime, alpha, beta, gamma, delta, epsilon });
    }
    Ok((q_power(f, exponent), rows))
}

/// |Hom(G, Λ_D)| for G = ⊕ Z/n_i: Λ_D is elementary abelian of rank ν·deg D.
pub fn cog_order_trivial_action(invariant_factors: &[u64], d: &Poly) -> BigUint {
    let f = d.field();
    let p = f.p() as u64;
    let e = invariant_factors.iter().filter(|&&n| n % p == 0).count() as u64;
    q_power(f, e * d.monic().degree() as u64)
}

// ---- subextensions ----

/// L/K inside E = k(Λ_M): `upper` fixes K, `lower` fixes L.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SubextSpec {
    pub upper: Subgroup,
    pub lower: Subgroup,
}

impl SubextSpec {
    pub fn new(upper: &Subgroup, lower: &Subgroup) -> Result<SubextSpec> {
        if !lower.is_subgroup_of(upper) {
            return Err(Error::NotNested);
        }
        Ok(SubextSpec { upper: upper.clone(), lower: lower.clone() })
    }

    pub fn ambient(&self) -> &Poly {
        self.upper.group().modulus()
    }

    pub fn degree(&self) -> usize {
        self.upper.order() / self.lower.order()
    }

    pub fn mu_l(&self) -> Poly {
        mu_of_fixed_field(&self.lower)
    }

    pub fn mu_k(&self) -> Poly {
        mu_of_fixed_field(&self.upper)
    }
}

/// D with μ(E^H) = Λ_D: gcd of M and all A - 1, A ∈ H.
pub fn mu_of_fixed_field(h: &Subgroup) -> Poly {
    let m = h.group().modulus();
    let one = Poly::one(m.field());
    h.lifts().iter().fold(m.clone(), |acc, a| acc.gcd(&a.sub(&one)))
}

/// λ^B_M is fixed by H iff its order divides μ(E^H).
pub fn torsion_fixed_by(x: &TorsionElem, h: &Subgroup) -> Result<bool> {
    let m = h.group().modulus();
    let x = x.embed(m)?;
    Ok(mu_of_fixed_field(h).rem(&x.order())?.is_zero())
}

fn all_congruent_to_one(h: &Subgroup, p: &Poly) -> bool {
    let one = Poly::one(p.field());
    h.lifts().iter().all(|a| p.divides(&a.sub(&one)))
}

/// Every Carlitz root of irreducible level in L already lies in K.
pub fn purity_check(s: &SubextSpec) -> Result<bool> {
    for (p, _) in poly::factor(s.ambient())?.factors {
        if all_congruent_to_one(&s.lower, &p) && !all_congruent_to_one(&s.upper, &p) {
            return Ok(false);
        }
    }
    Ok(true)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct TowerPurity {
    /// L'/K
    pub top_over_base: bool,
    /// L'/L
    pub top_over_middle: bool,
    /// L/K
    pub middle_over_base: bool,
}

impl TowerPurity {
    pub fn consistent(&self) -> bool {
        self.top_over_base == (self.top_over_middle && self.middle_over_base)
    }
}

/// Purity of the three steps of K ⊆ L ⊆ L', given by h_k ⊇ h_l ⊇ h_top.
pub fn purity_tower_check(h_k: &Subgroup, h_l: &Subgroup, h_top: &Subgroup) -> Result<TowerPurity> {
    let out = TowerPurity {
        top_over_base: purity_check(&SubextSpec::new(h_k, h_top)?)?,
        top_over_middle: purity_check(&SubextSpec::new(h_l, h_top)?)?,
        middle_over_base: purity_check(&SubextSpec::new(h_k, h_l)?)?,
    };
    Ok(out)
}

/// Z¹(Gal(L/K), μ(L)), the group isomorphic to cog(L/K).
pub fn cog_group(s: &SubextSpec) -> Result<CocycleGroup> {
    let d = s.mu_l();
    z1_group(&ActingGroup::quotient(&s.upper, &s.lower, &d)?)
}

pub fn cog_order(s: &SubextSpec) -> Result<BigUint> {
    Ok(cog_group(s)?.order())
}

/// {U^⊥ : U ≤ Z¹(Γ, Λ_M)} with Γ = `gamma`, as subgroups of the ambient group.
pub fn radical_subgroup_set(gamma: &Subgroup) -> Result<Vec<Subgroup>> {
    let m = gamma.group().modulus().clone();
    let g = ActingGroup::on_subgroup(gamma, &m)?;
    let z = z1_group(&g)?;
    let cap = m.field().caps().radical_z1;
    if z.cocycles.len() as u64 > cap {
        return Err(too_large("Z¹ subgroup enumeration", "radical_z1", z.cocycles.len(), cap));
    }
    radical_set_from(&z, gamma)
}

fn radical_set_from(z: &CocycleGroup, gamma: &Subgroup) -> Result<Vec<Subgroup>> {
    let index: std::collections::HashMap<&Vec<u32>, usize> =
        z.cocycles.iter().enumerate().map(|(i, c)| (c, i)).collect();
    let zero = index[&vec![0u32; z.group.order()]];
    let add = |i: usize, j: usize| -> usize {
        let s: Vec<u32> = z.cocycles[i].iter().zip(&z.cocycles[j]).map(|(&a, &b)| z.space.add(a, b)).collect();
        index[&s]
    };
    let close = |base: &BTreeSet<usize>, x: usize| -> BTreeSet<usize> {
        let mut set = base.clone();
        let mut stack: Vec<usize> = base.iter().copied().collect();
        if set.insert(x) {
            stack.push(x);
        }
        let gens: Vec<usize> = set.iter().copied().collect();
        while let Some(y) = stack.pop() {
            for &g in &gens {
                let w = add(y, g);
                if set.insert(w) {
                    stack.push(w);
                }
            }
        }
        set
    };
    let mut found: BTreeSet<BTreeSet<usize>> = BTreeSet::new();
    let start: BTreeSet<usize> = [zero].into_iter().collect();
    found.insert(start.clone());
    let mut frontier = vec![start];
    while let Some(u) = frontier.pop() {
        for x in 0..z.cocycles.len() {
            if u.contains(&x) {
                continue;
            }
            let next = close(&u, x);
            if found.insert(next.clone()) {
                frontier.push(next);
            }
        }
    }
    // U^⊥ as positions in gamma, then as ambient subgroups
    let mut perps: BTreeSet<Vec<usize>> = BTreeSet::new();
    for u in &found {
        let perp: Vec<usize> = (0..z.group.order())
            .filter(|&i| u.iter().all(|&h| z.cocycles[h][i] == 0))
            .map(|i| gamma.members()[i])
            .collect();
        perps.insert(perp);
    }
    let group = gamma.group();
    perps
        .into_iter()
        .map(|members| group.generated(&members.iter().map(|&i| group.elem(i).clone()).collect::<Vec<_>>()))
        .collect()
}

/// L/K is generated by Carlitz radicals.
pub fn is_radical(s: &SubextSpec) -> Result<bool> {
    if s.degree() == 1 {
        return Ok(true);
    }
    match radical_subgroup_set(&s.upper) {
        Ok(set) => Ok(set.iter().any(|h| h == &s.lower)),
        Err(e @ Error::TooLarge { .. }) => match not_radical_via_c_p2(s) {
            Ok(true) => Ok(false),
            _ => Err(e),
        },
        Err(e) => Err(e),
    }
}

fn is_power_of(mut n: usize, p: usize) -> bool {
    while n.is_multiple_of(p) && n > 1 {
        n /= p;
    }
    n == 1
}

pub fn is_radical_cyclotomic(s: &SubextSpec) -> Result<bool> {
    let p = s.ambient().field().p() as usize;
    let out = is_power_of(s.degree(), p) && is_radical(s)?;
    if out {
        assert!(purity_check(s)?, "radical extension of p-power degree that is not pure");
    }
    Ok(out)
}

/// The intermediate field of degree p over K when Gal(L/K) is cyclic of order p².
fn c_p2_middle(s: &SubextSpec) -> Result<Subgroup> {
    let f = s.ambient().field();
    let p = f.p() as usize;
    let quotient = ActingGroup::quotient(&s.upper, &s.lower, &Poly::one(f))?;
    let gen = quotient
        .cyclic_generator()
        .filter(|_| quotient.order() == p * p)
        .ok_or_else(|| Error::HypothesisNotMet("Gal(L/K) is not cyclic of order p²".into()))?;
    let group = s.upper.group();
    let sigma_p = quotient.labels()[gen].powmod(p as u64, group.modulus());
    let mut gens = s.lower.lifts();
    gens.push(sigma_p);
    group.generated(&gens)
}

/// Gal(L/K) ≅ C_{p²} and μ(L) = μ(K): then cog(L/K) and cog(L''/K) have the same order
/// for the degree-p intermediate field L'', so the radicals of L all lie in L''.
pub fn not_radical_via_c_p2(s: &SubextSpec) -> Result<bool> {
    let middle = c_p2_middle(s)?;
    if s.mu_l() != s.mu_k() {
        return Err(Error::HypothesisNotMet("μ(L) differs from μ(K)".into()));
    }
    let whole = cog_order(s)?;
    let part = cog_order(&SubextSpec::new(&s.upper, &middle)?)?;
    Ok(whole == part)
}

/// 0 → Z¹(Γ/Δ, Λ_D^Δ) → Z¹(Γ, Λ_D) → Z¹(Δ, Λ_D) is exact.
pub fn inflation_restriction_check(gamma: &Subgroup, delta: &Subgroup, d: &Poly) -> Result<bool> {
    if !delta.is_subgroup_of(gamma) {
        return Err(Error::NotNested);
    }
    let d = d.monic();
    let d_fixed = mu_of_fixed_field(delta).gcd(&d);
    let whole = z1_group(&ActingGroup::on_subgroup(gamma, &d)?)?;
    let part = z1_group(&ActingGroup::on_subgroup(delta, &d)?)?;
    let top = z1_group(&ActingGroup::quotient(gamma, delta, &d_fixed)?)?;
    let space = &whole.space;
    let cofactor = d.div_exact(&d_fixed);
    let group = gamma.group();
    // coset id of each gamma element, matching the quotient's numbering
    let coset_id = |x: usize| -> usize {
        let label = group.elem(x);
        (0..top.group.order())
            .find(|&c| {
                let rep = &top.group.labels()[c];
                let ratio = label.mulmod(&rep.inv_mod(group.modulus()).expect("unit"), group.modulus());
                delta.contains_poly(&ratio)
            })
            .expect("every element lies in a coset")
    };
    let cosets: Vec<usize> = gamma.members().iter().map(|&x| coset_id(x)).collect();
    let inflate = |f: &Vec<u32>| -> Vec<u32> {
        cosets
            .iter()
            .map(|&c| space.index(&top.space.to_poly(f[c]).mul(&cofactor)))
            .collect()
    };
    let whole_set: HashSet<&Vec<u32>> = whole.cocycles.iter().collect();
    let images: Vec<Vec<u32>> = top.cocycles.iter().map(inflate).collect();
    let injective = images.iter().collect::<HashSet<_>>().len() == images.len();
    let lands = images.iter().all(|f| whole_set.contains(f));
    let delta_pos: Vec<usize> = delta
        .members()
        .iter()
        .map(|x| gamma.members().binary_search(x).expect("nested"))
        .collect();
    let restrict = |f: &Vec<u32>| -> Vec<u32> { delta_pos.iter().map(|&i| f[i]).collect() };
    let part_set: HashSet<Vec<u32>> = part.cocycles.iter().cloned().collect();
    let restriction_lands = whole.cocycles.iter().all(|f| part_set.contains(&restrict(f)));
    let zero_delta = vec![0u32; delta.order()];
    let kernel: HashSet<&Vec<u32>> = whole.cocycles.iter().filter(|f| restrict(f) == zero_delta).collect();
    let image_set: HashSet<&Vec<u32>> = images.iter().collect();
    Ok(injective && lands && restriction_lands && kernel == image_set)
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ExactnessOrders {
    pub lower_step: String,
    pub whole: String,
    pub upper_step: String,
    pub holds: bool,
}

/// Order consequences of 0 → cog(L/K) → cog(L'/K) → cog(L'/L) for h_k ⊇ h_l ⊇ h_top.
pub fn cog_exactness_check(h_k: &Subgroup, h_l: &Subgroup, h_top: &Subgroup) -> Result<ExactnessOrders> {
    let a = cog_order(&SubextSpec::new(h_k, h_l)?)?;
    let b = cog_order(&SubextSpec::new(h_k, h_top)?)?;
    let c = cog_order(&SubextSpec::new(h_l, h_top)?)?;
    let holds = (&b % &a) == BigUint::from(0u32) && b <= &a * &c;
    Ok(ExactnessOrders { lower_step: a.to_string(), whole: b.to_string(), upper_step: c.to_string(), holds })
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BoundCheck {
    pub order: BigUint,
    pub bound: BigUint,
    pub ok: bool,
    /// μ(L) = μ(K), in which case the bound must be attained.
    pub equal_mu: bool,
}

/// |cog(L/K)| ≤ q^{m·deg μ(L)} for [L:K] = p^m, radical cyclotomic L/K.
pub fn bound_check(s: &SubextSpec) -> Result<BoundCheck> {
    let f = s.ambient().field();
    let p = f.p() as usize;
    let mut m = 0u64;
    let mut deg = s.degree();
    while deg.is_multiple_of(p) {
        deg /= p;
        m += 1;
    }
    if deg != 1 || !is_radical_cyclotomic(s)? {
        return Err(Error::HypothesisNotMet("L/K must be radical cyclotomic of p-power degree".into()));
    }
    let order = cog_order(s)?;
    let bound = q_power(f, m * s.mu_l().degree() as u64);
    let equal_mu = s.mu_l() == s.mu_k();
    let ok = order <= bound && (!equal_mu || order == bound);
    Ok(BoundCheck { order, bound, ok, equal_mu })
}

/// The order of the class of x in cog(L/K): the least N with x^N ∈ K.
pub fn cog_element_order(s: &SubextSpec, x: &TorsionElem) -> Result<Poly> {
    let x = x.embed(s.ambient())?;
    if !torsion_fixed_by(&x, &s.lower)? {
        return Err(Error::NotInL);
    }
    let ord = x.order();
    Ok(ord.div_exact(&ord.gcd(&s.mu_k())).monic())
}

/// L/K is normal iff λ_O lies in L for the order O of every generator.
/// `generators` must generate L over K.
pub fn galois_iff_roots_check(s: &SubextSpec, generators: &[TorsionElem]) -> Result<bool> {
    let m = s.ambient();
    let group = s.upper.group();
    let pts = generators.iter().map(|x| x.embed(m)).collect::<Result<Vec<_>>>()?;
    // the subgroup of upper fixing all generators must be exactly lower
    let mut fixing = Vec::new();
    for &i in s.upper.members() {
        let a = group.elem(i);
        if pts.iter().all(|x| x.act(a) == *x) {
            fixing.push(a.clone());
        }
    }
    if group.generated(&fixing)? != s.lower {
        return Err(Error::HypothesisNotMet("the generators do not generate L over K".into()));
    }
    let normal = true; // abelian ambient
    let roots_in_l = pts
        .iter()
        .map(|x| torsion_fixed_by(&TorsionElem::generator(&x.order())?.embed(m)?, &s.lower))
        .collect::<Result<Vec<bool>>>()?
        .into_iter()
        .all(|b| b);
    Ok(normal == roots_in_l)
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct SubextReport {
    #[serde(rename = "ambient_M")]
    pub ambient_m: String,
    #[serde(rename = "H_upper")]
    pub h_upper: Vec<String>,
    #[serde(rename = "H_lower")]
    pub h_lower: Vec<String>,
    pub degree: usize,
    pub mu_l: String,
    pub mu_k: String,
    pub pure: bool,
    pub radical: bool,
    pub radical_cyclotomic: bool,
    pub cog_order: String,
    pub bound: Option<String>,
    pub bound_ok: Option<bool>,
}

pub fn subext_report(s: &SubextSpec) -> Result<SubextReport> {
    let radical = is_radical(s)?;
    let radical_cyclotomic = is_radical_cyclotomic(s)?;
    let (bound, bound_ok) = if radical_cyclotomic {
        let b = bound_check(s)?;
        (Some(b.bound.to_string()), Some(b.ok))
    } else {
        (None, None)
    };
    Ok(SubextReport {
        ambient_m: s.ambient().to_string(),
        h_upper: s.upper.lift_strings(),
        h_lower: s.lower.lift_strings(),
        degree: s.degree(),
        mu_l: s.mu_l().to_string(),
        mu_k: s.mu_k().to_string(),
        pure: purity_check(s)?,
        radical,
        radical_cyclotomic,
        cog_order: cog_order(s)?.to_string(),
        bound,
        bound_ok,
    })
}

/// Is `n` equal to q^e for some e? Returns e.
pub fn as_q_power(n: &BigUint, q: u32) -> Option<u64> {
    let q = BigUint::from(q);
    let mut x = n.clone();
    let mut e = 0;
    if x.is_one() {
        return Some(0);
    }
    while x > BigUint::one() {
        if (&x % &q) != BigUint::from(0u32) {
            return None;
        }
        x /= &q;
        e += 1;
    }
    Some(e)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::cycfield::UnitGroup;

    fn f3() -> Field {
        Field::new(3).unwrap()
    }
    fn p(f: &Field, s: &str) -> Poly {
        Poly::parse(f, s).unwrap()
    }
    fn big(n: u64) -> BigUint {
        BigUint::from(n)
    }

    #[test]
    fn mu_examples() {
        let f = f3();
        let g2 = UnitGroup::new(&p(&f, "T^2")).unwrap();
        assert_eq!(mu_of_fixed_field(&g2.trivial()), p(&f, "T^2"));
        assert_eq!(mu_of_fixed_field(&g2.generated(&[p(&f, "1+T")]).unwrap()), p(&f, "T"));
        let g5 = UnitGroup::new(&p(&f, "T^5")).unwrap();
        assert_eq!(mu_of_fixed_field(&g5.generated(&[p(&f, "1+T^2")]).unwrap()), p(&f, "T^2"));
    }

    #[test]
    fn purity_examples() {
        let f = f3();
        for m in ["T", "T^2", "T*(T+1)"] {
            let g = UnitGroup::new(&p(&f, m)).unwrap();
            assert!(!purity_check(&SubextSpec::new(&g.whole(), &g.trivial()).unwrap()).unwrap());
            assert!(purity_check(&SubextSpec::new(&g.whole(), &g.whole()).unwrap()).unwrap());
        }
        // k(Λ_{T^n}) over k(Λ_T)
        for n in 2..=4 {
            let g = UnitGroup::new(&p(&f, &format!("T^{n}"))).unwrap();
            let h_t = one_units(&g, &p(&f, "T"));
            assert_eq!(mu_of_fixed_field(&h_t), p(&f, "T"));
            assert!(purity_check(&SubextSpec::new(&h_t, &g.trivial()).unwrap()).unwrap());
        }
    }

    fn one_units(g: &UnitGroup, modulus: &Poly) -> Subgroup {
        g.congruent_to_one(modulus)
    }

    #[test]
    fn z1_examples() {
        let f = f3();
        let g2 = UnitGroup::new(&p(&f, "T^2")).unwrap();
        let h = g2.generated(&[p(&f, "1+T")]).unwrap();
        let act = ActingGroup::on_subgroup(&h, &p(&f, "T^2")).unwrap();
        let z = z1_group(&act).unwrap();
        assert_eq!(z.order(), big(9));
        assert_eq!(b1_h1(&act).unwrap(), (big(3), big(3)));
        let trivial = ActingGroup::on_subgroup(&g2.trivial(), &p(&f, "T^2")).unwrap();
        assert_eq!(z1_group(&trivial).unwrap().order(), big(1));

        let g5 = UnitGroup::new(&p(&f, "T^5")).unwrap();
        let h = g5.generated(&[p(&f, "1+T^2")]).unwrap();
        let act = ActingGroup::on_subgroup(&h, &p(&f, "T^5")).unwrap();
        assert_eq!(z1_group(&act).unwrap().order(), big(81));
        assert_eq!(b1_h1(&act).unwrap(), (big(27), big(3)));
        let (closed, _) = h1_cyclic_p_closed_form(&p(&f, "T^5"), &p(&f, "1+T^2")).unwrap();
        assert_eq!(closed, big(3));
    }

    #[test]
    fn trivial_action_hom_counts() {
        let f = f3();
        assert_eq!(cog_order_trivial_action(&[3], &p(&f, "T")), big(3));
        assert_eq!(cog_order_trivial_action(&[9], &p(&f, "T^2")), big(9));
        assert_eq!(cog_order_trivial_action(&[], &p(&f, "T")), big(1));
        assert_eq!(cog_order_trivial_action(&[2], &p(&f, "T")), big(1));
        // matches brute force for trivial action
        let act = ActingGroup::cyclic(9, &p(&f, "1"), &p(&f, "T")).unwrap();
        assert_eq!(z1_group(&act).unwrap().order(), big(3));
    }

    #[test]
    fn cog_orders() {
        let f = f3();
        let g2 = UnitGroup::new(&p(&f, "T^2")).unwrap();
        let h = g2.generated(&[p(&f, "1+T")]).unwrap();
        let s = SubextSpec::new(&h, &g2.trivial()).unwrap();
        assert_eq!(cog_order(&s).unwrap(), big(9));
        assert_eq!(cog_order(&SubextSpec::new(&h, &h).unwrap()).unwrap(), big(1));
        let b = bound_check(&s).unwrap();
        assert_eq!((b.order, b.bound, b.ok), (big(9), big(9), true));
        assert!(is_radical_cyclotomic(&s).unwrap());
        let whole = SubextSpec::new(&g2.whole(), &g2.trivial()).unwrap();
        assert!(!is_radical_cyclotomic(&whole).unwrap());
    }

    #[test]
    fn radical_sets() {
        let f = f3();
        let g2 = UnitGroup::new(&p(&f, "T^2")).unwrap();
        let h = g2.generated(&[p(&f, "1+T")]).unwrap();
        let set = radical_subgroup_set(&h).unwrap();
        assert!(set.contains(&h));
        assert!(set.contains(&g2.trivial()));
        // k(Λ_T)/k: radical of degree 2, not pure
        let g1 = UnitGroup::new(&p(&f, "T")).unwrap();
        let s = SubextSpec::new(&g1.whole(), &g1.trivial()).unwrap();
        assert!(is_radical(&s).unwrap());
        assert!(!purity_check(&s).unwrap());
        assert!(!is_radical_cyclotomic(&s).unwrap());
    }

    #[test]
    fn element_orders() {
        let f = f3();
        let g3 = UnitGroup::new(&p(&f, "T^3")).unwrap();
        let s = SubextSpec::new(&g3.generated(&[p(&f, "1+T")]).unwrap(), &g3.trivial()).unwrap();
        let x = TorsionElem::generator(&p(&f, "T^3")).unwrap();
        assert_eq!(cog_element_order(&s, &x).unwrap(), p(&f, "T^2"));
        let inside = TorsionElem::new(&p(&f, "T^3"), &p(&f, "T^2")).unwrap();
        assert!(cog_element_order(&s, &inside).unwrap().is_one());
        let s2 = SubextSpec::new(&g3.whole(), &g3.generated(&[p(&f, "1+T")]).unwrap()).unwrap();
        assert_eq!(cog_element_order(&s2, &x), Err(Error::NotInL));
    }

    #[test]
    fn q_power_detection() {
        assert_eq!(as_q_power(&big(81), 3), Some(4));
        assert_eq!(as_q_power(&big(1), 3), Some(0));
        assert_eq!(as_q_power(&big(6), 3), None);
    }
}
