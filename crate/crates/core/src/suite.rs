//! The named worked examples behind `verify-paper`: each one recomputes its
//! quantities and compares them with the expected closed forms.

use std::fmt::Display;

use num_bigint::BigUint;
use serde::Serialize;

use crate::caps::Caps;
use crate::carlitz::TorsionElem;
use crate::cogalois::{self, ActingGroup, SubextSpec};
use crate::cycfield::{CycField, Subgroup, UnitGroup};
use crate::error::{Error, Result};
use crate::gf::Field;
use crate::kummer;
use crate::poly::{self, Poly};

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Check {
    pub what: String,
    pub expected: String,
    pub computed: String,
    pub pass: bool,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ExampleReport {
    pub example: String,
    pub q: u64,
    pub checks: Vec<Check>,
    pub notes: Vec<String>,
    pub pass: bool,
}

struct Builder {
    example: &'static str,
    q: u64,
    checks: Vec<Check>,
    notes: Vec<String>,
}

impl Builder {
    fn new(example: &'static str, q: u64) -> Builder {
        Builder { example, q, checks: Vec::new(), notes: Vec::new() }
    }

    fn check(&mut self, what: impl Into<String>, expected: impl Display, computed: impl Display) {
        let (expected, computed) = (expected.to_string(), computed.to_string());
        let pass = expected == computed;
        self.checks.push(Check { what: what.into(), expected, computed, pass });
    }

    fn note(&mut self, text: impl Into<String>) {
        self.notes.push(text.into());
    }

    fn finish(self) -> ExampleReport {
        let pass = self.checks.iter().all(|c| c.pass);
        ExampleReport { example: self.example.into(), q: self.q, checks: self.checks, notes: self.notes, pass }
    }
}

type Runner = fn(u64, &Caps) -> Result<ExampleReport>;

/// (name, default q, runner), in report order.
pub const EXAMPLES: [(&str, u64, Runner); 8] = [
    ("ejemplo4", 3, ejemplo4),
    ("ejemplo5", 3, ejemplo5),
    ("ejemplo6_1", 3, ejemplo6_1),
    ("ejemplo7_1", 3, ejemplo7_1),
    ("ejemplo_schultheis", 3, ejemplo_schultheis),
    ("ejemplo_entre_ciclotomicos", 3, ejemplo_entre_ciclotomicos),
    ("ejemplo_no_se_alcanza_cota", 3, ejemplo_no_se_alcanza_cota),
    ("noredes_cogalois", 3, noredes_cogalois),
];

pub fn example_names() -> Vec<&'static str> {
    EXAMPLES.iter().map(|e| e.0).collect()
}

/// Runs one example by name; `q` overrides its default.
pub fn run_example(name: &str, q: Option<u64>, caps: &Caps) -> Result<ExampleReport> {
    let (_, default_q, run) = EXAMPLES
        .iter()
        .find(|e| e.0 == name)
        .ok_or_else(|| Error::Parse(format!("unknown example {name}; known: {}", example_names().join(", "))))?;
    run(q.unwrap_or(*default_q), caps)
}

/// All examples, run on separate threads and returned in the fixed order.
pub fn run_all(q: Option<u64>, caps: &Caps) -> Vec<(String, Result<ExampleReport>)> {
    std::thread::scope(|scope| {
        let handles: Vec<_> = EXAMPLES
            .iter()
            .map(|&(name, default_q, run)| (name, scope.spawn(move || run(q.unwrap_or(default_q), caps))))
            .collect();
        handles
            .into_iter()
            .map(|(name, h)| (name.to_string(), h.join().expect("example thread panicked")))
            .collect()
    })
}

fn parse(f: &Field, s: &str) -> Poly {
    Poly::parse(f, s).expect("fixed polynomial literal")
}

fn odd_prime_field(q: u64, caps: &Caps) -> Result<Field> {
    let f = Field::with_caps(q, *caps)?;
    if f.nu() != 1 || f.p() < 3 {
        return Err(Error::HypothesisNotMet(format!("this example needs q = p an odd prime, got {q}")));
    }
    Ok(f)
}

fn odd_char_field(q: u64, caps: &Caps) -> Result<Field> {
    let f = Field::with_caps(q, *caps)?;
    if f.p() < 3 {
        return Err(Error::HypothesisNotMet(format!("this example needs odd characteristic, got q = {q}")));
    }
    Ok(f)
}

fn q_pow(f: &Field, e: u64) -> BigUint {
    BigUint::from(f.q()).pow(e as u32)
}

fn point(modulus: &Poly, residue: &Poly) -> Result<TorsionElem> {
    TorsionElem::new(modulus, residue)
}

/// X^q + TX - 1 over k(Λ_T) has no root, X^T - 1 splits in degree p, and no Carlitz
/// root of level N ≠ T enters the splitting field L.
fn ejemplo4(q: u64, caps: &Caps) -> Result<ExampleReport> {
    let f = odd_prime_field(q, caps)?;
    let mut r = Builder::new("ejemplo4", q);
    let t = Poly::t(&f);
    let e = CycField::new(&t)?;
    let mut coeffs = vec![e.zero(); q as usize + 1];
    coeffs[0] = e.from_poly(&parse(&f, "-1"));
    coeffs[1] = e.from_poly(&t);
    coeffs[q as usize] = e.one();
    let roots = kummer::rational_root_in_cyclotomic(&e, &coeffs)?;
    r.check("roots of X^q+T*X-1 in k(Λ_T)", 0, roots.len());
    r.check("C_T(u) = 1 solvable in F_q[T]", false, kummer::carlitz_preimage(&t, &Poly::one(&f)).is_some());
    r.check("[L:k(Λ_T)] for X^T - 1", f.p(), kummer::kummer_splitting_degree(&t, &Poly::one(&f))?);
    let rows = kummer::purity_obstruction_check(&f, 3)?;
    r.check("levels N ≠ T excluded from L (deg N ≤ 3)", rows.len(), rows.iter().filter(|x| x.excluded).count());
    for row in rows.iter().filter(|x| !x.excluded) {
        r.note(format!("level {} not excluded: Φ = {}", row.level, row.phi));
    }
    Ok(r.finish())
}

/// k(Λ_{T^n})/k(Λ_T) is radical cyclotomic, while k(Λ_T)/k is radical but not pure.
fn ejemplo5(q: u64, caps: &Caps) -> Result<ExampleReport> {
    let f = odd_char_field(q, caps)?;
    let mut r = Builder::new("ejemplo5", q);
    let t = Poly::t(&f);
    for n in [2u32, 3] {
        let m = t.pow(n as u64);
        let g = UnitGroup::new(&m)?;
        let s = SubextSpec::new(&g.congruent_to_one(&t), &g.trivial())?;
        let label = format!("k(Λ_T^{n})/k(Λ_T)");
        r.check(format!("{label} degree"), q_pow(&f, (n - 1) as u64), s.degree());
        r.check(format!("{label} pure"), true, cogalois::purity_check(&s)?);
        match cogalois::is_radical_cyclotomic(&s) {
            Ok(b) => r.check(format!("{label} radical cyclotomic"), true, b),
            Err(Error::TooLarge { .. }) => r.note(format!("{label}: radical test skipped, cocycle group over the cap")),
            Err(e) => return Err(e),
        }
    }
    let g = UnitGroup::new(&t)?;
    let s = SubextSpec::new(&g.whole(), &g.trivial())?;
    r.check("k(Λ_T)/k radical", true, cogalois::is_radical(&s)?);
    r.check("k(Λ_T)/k pure", false, cogalois::purity_check(&s)?);
    r.check("k(Λ_T)/k radical cyclotomic", false, cogalois::is_radical_cyclotomic(&s)?);
    Ok(r.finish())
}

/// L = k(Λ_{P²Q²}) over the field K fixed by σ = 1+PQ: cog(L/K) has elements of
/// order P and of order Q.
fn ejemplo6_1(q: u64, caps: &Caps) -> Result<ExampleReport> {
    let f = odd_char_field(q, caps)?;
    let mut r = Builder::new("ejemplo6_1", q);
    let (p, qq) = (parse(&f, "T"), parse(&f, "T+1"));
    let pq = p.mul(&qq);
    let m = pq.mul(&pq);
    let g = UnitGroup::new(&m)?;
    let sigma = Poly::one(&f).add(&pq);
    let h = g.generated(std::slice::from_ref(&sigma))?;
    let s = SubextSpec::new(&h, &g.trivial())?;
    r.check("order of σ = 1+PQ", f.p(), h.order());
    r.check("[L:K]", f.p(), s.degree());
    let at = |residue: &Poly| point(&m, residue);
    let lam_pq = at(&pq)?;
    let lam_p2 = at(&qq.mul(&qq))?;
    let lam_q2 = at(&p.mul(&p))?;
    r.check("λ_PQ ∈ K", true, cogalois::torsion_fixed_by(&lam_pq, &h)?);
    r.check("λ_P² ∈ K", false, cogalois::torsion_fixed_by(&lam_p2, &h)?);
    r.check("λ_Q² ∈ K", false, cogalois::torsion_fixed_by(&lam_q2, &h)?);
    r.check("order of λ_P² in cog(L/K)", &p, cogalois::cog_element_order(&s, &lam_p2)?);
    r.check("order of λ_Q² in cog(L/K)", &qq, cogalois::cog_element_order(&s, &lam_q2)?);
    if f.q() == 3 {
        // the same memberships inside the concrete field
        let e = CycField::new(&m)?;
        let sig = e.galois_elem(&sigma)?;
        let x = e.torsion_point(&lam_p2)?;
        let shift = e.torsion_point(&point(&m, &qq.mul(&pq))?)?;
        r.check("σ(λ_P²) = λ_P² + λ^Q_P in k(Λ_M)", true, e.galois_act(&sig, &x)? == x.add(&shift));
        r.check("σ fixes λ_PQ in k(Λ_M)", true, e.fixed_by(&e.torsion_point(&lam_pq)?, &h)?);
    }
    Ok(r.finish())
}

/// L = k(Λ_{P³}) over the field K fixed by σ = 1+P: λ_{P³} has order P² in cog(L/K).
fn ejemplo7_1(q: u64, caps: &Caps) -> Result<ExampleReport> {
    let f = odd_char_field(q, caps)?;
    let mut r = Builder::new("ejemplo7_1", q);
    let p = Poly::t(&f);
    let m = p.pow(3);
    let g = UnitGroup::new(&m)?;
    let sigma = Poly::one(&f).add(&p);
    let h = g.generated(std::slice::from_ref(&sigma))?;
    let s = SubextSpec::new(&h, &g.trivial())?;
    r.check("order of σ = 1+P", f.p(), h.order());
    r.check("[L:K]", f.p(), s.degree());
    let lam = TorsionElem::generator(&m)?;
    r.check("λ_P² ∈ K", false, cogalois::torsion_fixed_by(&lam.act(&p), &h)?);
    r.check("λ^{P²}_{P³} ∈ K", true, cogalois::torsion_fixed_by(&lam.act(&p.pow(2)), &h)?);
    r.check("λ^P_{P³} ∈ K", false, cogalois::torsion_fixed_by(&lam.act(&p), &h)?);
    r.check("order of λ_P³ in cog(L/K)", p.pow(2), cogalois::cog_element_order(&s, &lam)?);
    if f.q() == 3 {
        let e = CycField::new(&m)?;
        let sig = e.galois_elem(&sigma)?;
        let x = e.lambda();
        let expected = x.add(&e.torsion_point(&lam.act(&p))?);
        r.check("σ(λ_P³) = λ_P³ + λ_P² in k(Λ_M)", true, e.galois_act(&sig, &x)? == expected);
    }
    Ok(r.finish())
}

/// L the splitting field of X^T - 1 over k(Λ_T): [L:k(Λ_T)] = q = |cog(L/k(Λ_T))|,
/// with μ(L) = Λ_T taken as given.
fn ejemplo_schultheis(q: u64, caps: &Caps) -> Result<ExampleReport> {
    let f = odd_prime_field(q, caps)?;
    let mut r = Builder::new("ejemplo_schultheis", q);
    let p = f.p() as u64;
    let t = Poly::t(&f);
    for n in 1..=4u32 {
        let expected = BigUint::from(p).pow(n - 1) * (p - 1);
        r.check(format!("Φ(T^{n})"), expected, poly::phi(&t.pow(n as u64))?);
    }
    let degree = kummer::kummer_splitting_degree(&t, &Poly::one(&f))?;
    r.check("[L:k(Λ_T)]", q, &degree);
    r.check("|G(T)| = q·Φ(T)", q * (q - 1), kummer::theta_group_order(&t)?);
    let cog = cogalois::cog_order_trivial_action(&[p], &t);
    r.check("|cog(L/k(Λ_T))| = |Hom(C_p, Λ_T)|", &degree, &cog);
    r.check("bound q^{m·deg μ(L)} attained", q_pow(&f, t.degree() as u64), &cog);
    r.note("μ(L) = Λ_T is an input here: L is not inside a cyclotomic ambient");
    Ok(r.finish())
}

/// cog(k(Λ_{T²})/k(Λ_T)) has order [k(Λ_{T²}):k(Λ_T)]².
fn ejemplo_entre_ciclotomicos(q: u64, caps: &Caps) -> Result<ExampleReport> {
    let f = odd_prime_field(q, caps)?;
    let mut r = Builder::new("ejemplo_entre_ciclotomicos", q);
    let t = Poly::t(&f);
    let m = t.pow(2);
    let g = UnitGroup::new(&m)?;
    let h = g.congruent_to_one(&t);
    r.check("|H_T²|", q, h.order());
    let act = ActingGroup::on_subgroup(&h, &m)?;
    let z1 = cogalois::z1_group(&act)?;
    r.check("|Z¹(H_T², Λ_T²)| = [k(Λ_T²):k(Λ_T)]²", q * q, z1.order());
    r.check("|B¹| = |DΛ_T²| = |Λ_T|", q, z1.b1_order());
    let gen = act.cyclic_generator().expect("H_T² is cyclic");
    r.check("|ker N| = |Λ_T²|", q * q, cogalois::ker_norm_order(&act, gen));
    r.check("|H¹| = ker N / DΛ_T²", q, z1.h1_order());
    let s = SubextSpec::new(&h, &g.trivial())?;
    let cog = cogalois::cog_order(&s)?;
    r.check("|cog(k(Λ_T²)/k(Λ_T))|", q * q, &cog);
    let b = cogalois::bound_check(&s)?;
    r.check("bound q^{m·deg μ(L)}", q * q, &b.bound);
    r.check("bound respected", true, b.ok);
    r.note("the bound is attained here although μ(L) = Λ_T² differs from μ(K) = Λ_T");
    Ok(r.finish())
}

/// L = k(Λ_{P^{2p-1}}), E fixed by σ = 1+P²: |cog(L/E)| = q^{d(2p-2)} < q^{d(2p-1)}.
fn ejemplo_no_se_alcanza_cota(q: u64, caps: &Caps) -> Result<ExampleReport> {
    let f = odd_char_field(q, caps)?;
    let mut r = Builder::new("ejemplo_no_se_alcanza_cota", q);
    let p = f.p() as u64;
    let big_p = Poly::t(&f);
    let d = big_p.degree() as u64;
    let m = big_p.pow(2 * p - 1);
    let g = UnitGroup::new(&m)?;
    let sigma = Poly::one(&f).add(&big_p.pow(2));
    let h = g.generated(std::slice::from_ref(&sigma))?;
    r.check("order of σ = 1+P²", p, h.order());
    let s = SubextSpec::new(&h, &g.trivial())?;
    r.check("μ(E)", big_p.pow(2), s.mu_k());
    r.check("μ(L)", &m, s.mu_l());
    let act = ActingGroup::on_subgroup(&h, &m)?;
    let gen = act.cyclic_generator().expect("⟨σ⟩ is cyclic");
    r.check("|ker N| = |Λ_P^{2p-2}|", q_pow(&f, d * (2 * p - 2)), cogalois::ker_norm_order(&act, gen));
    r.check("|I_G μ(L)| = |Λ_P^{2p-3}|", q_pow(&f, d * (2 * p - 3)), cogalois::image_sigma_minus_one_order(&act, gen));
    let (closed, _) = cogalois::h1_cyclic_p_closed_form(&m, &sigma)?;
    let (_, h1) = cogalois::b1_h1(&act)?;
    r.check("|H¹| closed form = brute force", &closed, &h1);
    let cog = cogalois::cog_order(&s)?;
    r.check("|cog(L/E)| = q^{d(2p-2)}", q_pow(&f, d * (2 * p - 2)), &cog);
    let b = cogalois::bound_check(&s)?;
    r.check("bound q^{d(2p-1)}", q_pow(&f, d * (2 * p - 1)), &b.bound);
    r.check("strict inequality", true, b.order < b.bound);
    Ok(r.finish())
}

/// Inside k(Λ_{T⁵})/k(Λ_T) there is a C_{p²} subextension L'/k(Λ_T) with μ(L') = Λ_T;
/// it is not radical although the whole extension is radical cyclotomic.
fn noredes_cogalois(q: u64, caps: &Caps) -> Result<ExampleReport> {
    let f = Field::with_caps(q, *caps)?;
    if f.p() != 3 {
        return Err(Error::HypothesisNotMet(format!("this example is set in characteristic 3, got q = {q}")));
    }
    let mut r = Builder::new("noredes_cogalois", q);
    let t = Poly::t(&f);
    let m = t.pow(5);
    let g = UnitGroup::new(&m)?;
    let gen = g.generated(&[Poly::one(&f).add(&t)])?;
    r.check("order of 1+T in H_T⁵", 9, gen.order());
    if q == 3 {
        let candidates = c9_subextensions(&g.congruent_to_one(&t));
        let good = candidates.iter().filter(|h| cogalois::mu_of_fixed_field(h) == t).count();
        r.check("C_9 subextensions at q = 3", 9, candidates.len());
        r.check("of those, with μ = Λ_T", 0, good);
        r.note("no suitable L' exists at q = 3; the C_9 part is taken over F_9");
        not_radical_c9(&mut r, &Field::with_caps(9, *caps)?)?;
    } else {
        not_radical_c9(&mut r, &f)?;
    }
    Ok(r.finish())
}

fn not_radical_c9(r: &mut Builder, f: &Field) -> Result<()> {
    let t = Poly::t(f);
    let g = UnitGroup::new(&t.pow(5))?;
    let upper = g.congruent_to_one(&t);
    let good: Vec<Subgroup> = c9_subextensions(&upper)
        .into_iter()
        .filter(|h| cogalois::mu_of_fixed_field(h) == t)
        .collect();
    let q = f.q();
    let Some(lower) = good.first() else {
        r.check(format!("C_9 subextension with μ = Λ_T at q = {q}"), true, false);
        return Ok(());
    };
    let s = SubextSpec::new(&upper, lower)?;
    let gens: Vec<String> = lower.generators().iter().map(|&i| g.elem(i).to_string()).collect();
    r.note(format!("q = {q}: H_L' generated by {}", gens.join(", ")));
    r.check(format!("[L':k(Λ_T)] at q = {q}"), 9, s.degree());
    r.check(format!("μ(L') = μ(k(Λ_T)) at q = {q}"), &t, s.mu_l());
    r.check(format!("|cog(L'/k(Λ_T))| = |μ(K)| at q = {q}"), q, cogalois::cog_order(&s)?);
    r.check(format!("L'/k(Λ_T) not radical at q = {q}"), true, cogalois::not_radical_via_c_p2(&s)?);
    Ok(())
}

/// Subgroups H of `upper` with upper/H cyclic of order 9 and small enough to search.
fn c9_subextensions(upper: &Subgroup) -> Vec<Subgroup> {
    let group = upper.group();
    let f = group.field();
    if upper.order() <= 81 {
        return upper
            .subgroups()
            .into_iter()
            .filter(|h| h.order() * 9 == upper.order())
            .filter(|h| ActingGroup::quotient(upper, h, &Poly::one(f)).is_ok_and(|a| a.cyclic_generator().is_some()))
            .collect();
    }
    // too many subgroups to list. 1+cT^j, j ∈ {1, 2, 4}, c over an F_3-basis of F_q, generate
    // the 1-units mod T⁵; leaving out 1+T makes the quotient cyclic, generated by 1+T.
    let m = group.modulus();
    let mut gens = Vec::new();
    for j in [1usize, 2, 4] {
        for c in 0..f.nu() {
            let coeff = f.pow(f.p(), c as u64);
            if j == 1 && c == 0 {
                continue;
            }
            gens.push(Poly::one(f).add(&Poly::monomial(f, coeff, j)).rem(m).expect("nonzero"));
        }
    }
    let Ok(h) = group.generated(&gens) else { return Vec::new() };
    let ok = h.order() * 9 == upper.order()
        && ActingGroup::quotient(upper, &h, &Poly::one(f)).is_ok_and(|a| a.cyclic_generator().is_some());
    if ok {
        vec![h]
    } else {
        Vec::new()
    }
}
