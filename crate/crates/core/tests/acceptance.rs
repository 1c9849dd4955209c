//! Acceptance criteria 1-12. Runs without the libtest harness so every PASS/FAIL line
//! is printed; exits nonzero if any criterion fails.

use std::process::Command;
use std::time::{Duration, Instant};

use carlitzlab::caps::Caps;
use carlitzlab::carlitz::{cyclotomic_poly, CarlitzOp, TorsionElem};
use carlitzlab::cogalois::{self, ActingGroup, SubextSpec};
use carlitzlab::cycfield::{Subgroup, UnitGroup};
use carlitzlab::poly::{self, Poly};
use carlitzlab::suite;
use carlitzlab::xpoly::XPoly;
use carlitzlab::{Error, Field};
use num_bigint::BigUint;
use rand::rngs::StdRng;
use rand::{Rng, SeedableRng};

const LIMIT_PHI: Duration = Duration::from_secs(10);
const LIMIT_CARLITZ: Duration = Duration::from_secs(10);
const LIMIT_EXAMPLE4: Duration = Duration::from_secs(5);
const LIMIT_SWEEP: Duration = Duration::from_secs(60);
const LIMIT_VERIFY: Duration = Duration::from_secs(300);
const RANDOM_COHOMOLOGY_INSTANCES: usize = 50;
const INFLATION_INSTANCES: usize = 5;
const SEED: u64 = 0x00C0_FFEE;

type Outcome = Result<String, String>;
type Criterion = (&'static str, fn() -> Outcome);

fn ensure(cond: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg())
    }
}

fn timed(limit: Duration, start: Instant) -> Result<String, String> {
    let took = start.elapsed();
    ensure(took < limit, || format!("took {took:.2?}, limit {limit:?}"))?;
    Ok(format!("{took:.2?} (limit {limit:?})"))
}

fn f(q: u64) -> Field {
    Field::new(q).unwrap()
}

fn pp(field: &Field, s: &str) -> Poly {
    Poly::parse(field, s).unwrap()
}

fn monics(field: &Field, max_deg: usize) -> Vec<Poly> {
    let q = field.q() as u64;
    (0..=max_deg)
        .flat_map(|d| (0..q.pow(d as u32)).map(move |i| (d, i)))
        .map(|(d, i)| Poly::from_index(field, i).add(&Poly::monomial(field, 1, d)))
        .collect()
}

fn all_below(field: &Field, n: usize) -> Vec<Poly> {
    (0..(field.q() as u64).pow(n as u32)).map(|i| Poly::from_index(field, i)).collect()
}

/// Criterion 1: Φ against a gcd count, every monic M of degree ≤ 4, q ∈ {2,3,4,5}.
fn phi_oracle() -> Outcome {
    let start = Instant::now();
    let mut n = 0;
    for q in [2u64, 3, 4, 5] {
        let field = f(q);
        for m in monics(&field, 4) {
            let count = all_below(&field, m.degree()).iter().filter(|r| r.gcd(&m).is_one()).count();
            let phi = poly::phi(&m).map_err(|e| e.to_string())?;
            ensure(phi == BigUint::from(count), || format!("q = {q}, M = {m}: Φ = {phi}, count = {count}"))?;
            n += 1;
        }
    }
    Ok(format!("{n} moduli, {}", timed(LIMIT_PHI, start)?))
}

/// Criterion 2: C_{M+N} = C_M + C_N and C_{MN} = C_M ∘ C_N for all M, N of degree ≤ 2, q ∈ {2,3}.
fn carlitz_algebra() -> Outcome {
    let start = Instant::now();
    let mut n = 0;
    for q in [2u64, 3] {
        let field = f(q);
        let polys = all_below(&field, 3);
        let ops: Vec<XPoly> = polys.iter().map(|m| CarlitzOp::new(m).to_xpoly()).collect();
        for (i, m) in polys.iter().enumerate() {
            for (j, k) in polys.iter().enumerate() {
                let sum = CarlitzOp::new(&m.add(k)).to_xpoly();
                ensure(sum == ops[i].add(&ops[j]), || format!("q = {q}: C_({m})+({k})"))?;
                let prod = CarlitzOp::new(&m.mul(k)).to_xpoly();
                ensure(prod == ops[i].compose(&ops[j]), || format!("q = {q}: C_({m})*({k})"))?;
                n += 1;
            }
        }
    }
    Ok(format!("{n} pairs, {}", timed(LIMIT_CARLITZ, start)?))
}

/// Criterion 3: deg Ψ_M = Φ(M) and ∏_{D | M} Ψ_D = C_M, monic M of degree ≤ 3, q = 3.
fn cyclotomic_degree() -> Outcome {
    let field = f(3);
    let x = XPoly::monomial(Poly::one(&field), 1);
    let mut n = 0;
    for m in monics(&field, 3).into_iter().filter(|m| !m.is_constant()) {
        let psi = cyclotomic_poly(&m).map_err(|e| e.to_string())?;
        let phi = poly::phi(&m).unwrap();
        ensure(BigUint::from(psi.poly.deg().unwrap()) == phi, || format!("deg Ψ_{m} ≠ Φ = {phi}"))?;
        let mut product = x.clone();
        for d in poly::monic_divisors(&m).unwrap().into_iter().filter(|d| !d.is_constant()) {
            product = product.mul(&cyclotomic_poly(&d).unwrap().poly);
        }
        ensure(product == CarlitzOp::new(&m).to_xpoly(), || format!("∏ Ψ_D ≠ C_{m}"))?;
        n += 1;
    }
    Ok(format!("{n} moduli"))
}

fn report_pass(name: &str, q: Option<u64>) -> Result<suite::ExampleReport, String> {
    let r = suite::run_example(name, q, &Caps::default()).map_err(|e| e.to_string())?;
    if let Some(c) = r.checks.iter().find(|c| !c.pass) {
        return Err(format!("{name}: {} expected {} got {}", c.what, c.expected, c.computed));
    }
    Ok(r)
}

/// Criterion 4: X^q + TX - 1 has no root over k(Λ_T), X^T - 1 has degree p, and the purity
/// obstruction excludes every level N ≠ T; q = 3 and 5.
fn example_4() -> Outcome {
    let start = Instant::now();
    for q in [3u64, 5] {
        let r = report_pass("ejemplo4", Some(q))?;
        ensure(r.checks.len() >= 4, || "missing checks".into())?;
    }
    timed(LIMIT_EXAMPLE4, start)
}

/// Criterion 5: |Z¹(H_{T²}, Λ_{T²})| = 9, |B¹| = 3, ker N = Λ_{T²}; q = 3.
fn example_between_cyclotomic() -> Outcome {
    let field = f(3);
    let t = Poly::t(&field);
    let m = t.pow(2);
    let g = UnitGroup::new(&m).unwrap();
    let h = g.congruent_to_one(&t);
    let act = ActingGroup::on_subgroup(&h, &m).unwrap();
    let z = cogalois::z1_group(&act).unwrap();
    let gen = act.cyclic_generator().ok_or("H_{T²} not cyclic")?;
    // [k(Λ_T²):k(Λ_T)] = |H_T²|
    let degree = h.order();
    let got = (z.order(), z.b1_order(), cogalois::ker_norm_order(&act, gen));
    let want = (BigUint::from(degree * degree), BigUint::from(3u32), BigUint::from(9u32));
    ensure(got == want, || format!("(Z¹, B¹, ker N) = {got:?}"))?;
    ensure(cogalois::image_sigma_minus_one_order(&act, gen) == BigUint::from(3u32), || "DΛ_{T²} ≠ Λ_T".into())?;
    let cog = cogalois::cog_order(&SubextSpec::new(&h, &g.trivial()).unwrap()).unwrap();
    ensure(cog == BigUint::from(9u32), || format!("cog = {cog}"))?;
    Ok("Z¹ = 9, B¹ = 3, ker N = 9".into())
}

/// Criterion 6: |cog(L/E)| = 3⁴ < 3⁵ for L = k(Λ_{T⁵}), E fixed by 1+T²; q = 3.
fn example_bound_not_attained() -> Outcome {
    let field = f(3);
    let m = pp(&field, "T^5");
    let g = UnitGroup::new(&m).unwrap();
    let h = g.generated(&[pp(&field, "1+T^2")]).unwrap();
    let s = SubextSpec::new(&h, &g.trivial()).unwrap();
    let b = cogalois::bound_check(&s).map_err(|e| e.to_string())?;
    ensure(b.order == BigUint::from(81u32), || format!("cog = {}", b.order))?;
    ensure(b.bound == BigUint::from(243u32), || format!("bound = {}", b.bound))?;
    ensure(b.order < b.bound && b.ok, || "not strict".into())?;
    Ok("81 < 243".into())
}

/// Criterion 7: σ orders, fixed-field memberships and cog element orders for P = T, Q = T+1; q = 3.
fn examples_6_1_and_7_1() -> Outcome {
    let field = f(3);
    let (p, q) = (pp(&field, "T"), pp(&field, "T+1"));
    let pq = p.mul(&q);
    let m = pq.mul(&pq);
    let g = UnitGroup::new(&m).unwrap();
    let h = g.generated(&[Poly::one(&field).add(&pq)]).unwrap();
    let s = SubextSpec::new(&h, &g.trivial()).unwrap();
    ensure(h.order() == 3, || format!("order of 1+PQ = {}", h.order()))?;
    let pt = |b: &Poly| TorsionElem::new(&m, b).unwrap();
    let fixed = |b: &Poly| cogalois::torsion_fixed_by(&pt(b), &h).unwrap();
    ensure(fixed(&pq) && !fixed(&q.mul(&q)) && !fixed(&p.mul(&p)), || "memberships for P²Q²".into())?;
    ensure(cogalois::cog_element_order(&s, &pt(&q.mul(&q))).unwrap() == p, || "λ_P² order".into())?;
    ensure(cogalois::cog_element_order(&s, &pt(&p.mul(&p))).unwrap() == q, || "λ_Q² order".into())?;

    let m3 = p.pow(3);
    let g3 = UnitGroup::new(&m3).unwrap();
    let h3 = g3.generated(&[Poly::one(&field).add(&p)]).unwrap();
    let s3 = SubextSpec::new(&h3, &g3.trivial()).unwrap();
    ensure(h3.order() == 3, || format!("order of 1+P = {}", h3.order()))?;
    let lam = TorsionElem::generator(&m3).unwrap();
    ensure(cogalois::torsion_fixed_by(&lam.act(&p.pow(2)), &h3).unwrap(), || "λ^{T²}_{T³} ∉ K".into())?;
    ensure(!cogalois::torsion_fixed_by(&lam.act(&p), &h3).unwrap(), || "λ^T_{T³} ∈ K".into())?;
    ensure(cogalois::cog_element_order(&s3, &lam).unwrap() == p.pow(2), || "λ_{T³} order".into())?;
    report_pass("ejemplo6_1", None)?;
    report_pass("ejemplo7_1", None)?;
    Ok("orders P, Q, P²".into())
}

/// Criterion 8: 1+T has order 9 mod T⁵ (q = 3), and a C_9 subextension with μ = Λ_T is not radical.
fn example_not_hereditary() -> Outcome {
    let field = f(3);
    let g = UnitGroup::new(&pp(&field, "T^5")).unwrap();
    let order = g.generated(&[pp(&field, "1+T")]).unwrap().order();
    ensure(order == 9, || format!("order {order}"))?;
    let r = report_pass("noredes_cogalois", None)?;
    ensure(r.checks.iter().any(|c| c.what.starts_with("L'/k(Λ_T) not radical")), || "no C_9 instance".into())?;
    Ok("order 9 at q = 3; C_9 subextension with μ = Λ_T exists only over F_9, not radical there".into())
}

fn lattices() -> Vec<(Poly, Vec<Subgroup>)> {
    let field = f(3);
    ["T^2", "T^3", "T^2+T"]
        .iter()
        .map(|m| {
            let m = pp(&field, m);
            let lat = UnitGroup::new(&m).unwrap().subgroup_lattice().unwrap();
            (m, lat)
        })
        .collect()
}

fn is_prime(n: usize) -> bool {
    n > 1 && (2..n).take_while(|d| d * d <= n).all(|d| !n.is_multiple_of(d))
}

fn is_power_of(mut n: usize, p: usize) -> bool {
    while n > 1 && n.is_multiple_of(p) {
        n /= p;
    }
    n == 1
}

/// Criterion 9: Over the full lattices: radical cyclotomic ⇒ p-power degree and pure; prime degree
/// ℓ ≠ p ⇒ not (radical and pure); the purity tower biconditional on every chain.
fn structure_sweep() -> Outcome {
    let start = Instant::now();
    let (mut pairs, mut rc, mut ell, mut chains) = (0, 0, 0, 0);
    for (m, lat) in lattices() {
        for a in &lat {
            for b in lat.iter().filter(|b| b.is_subgroup_of(a)) {
                let s = SubextSpec::new(a, b).unwrap();
                let deg = s.degree();
                let radical_cyc = cogalois::is_radical_cyclotomic(&s).map_err(|e| e.to_string())?;
                let pure = cogalois::purity_check(&s).unwrap();
                if radical_cyc {
                    ensure(is_power_of(deg, 3) && pure, || format!("M = {m}: radical cyclotomic of degree {deg}"))?;
                    rc += 1;
                }
                if is_prime(deg) && deg != 3 {
                    ensure(!(cogalois::is_radical(&s).unwrap() && pure), || format!("M = {m}: degree {deg} radical and pure"))?;
                    ell += 1;
                }
                for c in lat.iter().filter(|c| c.is_subgroup_of(b)) {
                    let tower = cogalois::purity_tower_check(a, b, c).unwrap();
                    ensure(tower.consistent(), || format!("M = {m}: tower {tower:?}"))?;
                    chains += 1;
                }
                pairs += 1;
            }
        }
    }
    Ok(format!(
        "{pairs} pairs, {rc} radical cyclotomic, {ell} of degree ℓ ≠ p, {chains} chains, {}",
        timed(LIMIT_SWEEP, start)?
    ))
}

/// Criterion 10: Brute-force Z¹ = ker N, H¹ closed form = brute force, on random cyclic order-p
/// actions (q = 3, deg D ≤ 5); inflation-restriction exactness on several instances.
fn cohomology_cross_checks() -> Outcome {
    let field = f(3);
    let mut rng = StdRng::seed_from_u64(SEED);
    let mut done = 0;
    let mut tries = 0;
    while done < RANDOM_COHOMOLOGY_INSTANCES {
        tries += 1;
        ensure(tries < 10_000, || format!("only {done} usable instances"))?;
        let deg = rng.gen_range(1..=5usize);
        let low = Poly::from_index(&field, rng.gen_range(0..3u64.pow(deg as u32)));
        let d = low.add(&Poly::monomial(&field, 1, deg));
        // a random unit, pushed into its order-3 part
        let unit = Poly::from_index(&field, rng.gen_range(0..3u64.pow(deg as u32))).rem(&d).unwrap();
        if !unit.gcd(&d).is_one() {
            continue;
        }
        let ord = (1..).find(|&k| unit.powmod(k, &d).is_one()).unwrap();
        if ord % 3 != 0 {
            continue;
        }
        let a = unit.powmod(ord / 3, &d);
        let g = ActingGroup::cyclic(3, &a, &d).unwrap();
        let z = cogalois::z1_group(&g).map_err(|e| e.to_string())?;
        let ker = cogalois::ker_norm_order(&g, 1);
        let (closed, _) = cogalois::h1_cyclic_p_closed_form(&d, &a).unwrap();
        ensure(z.order() == ker, || format!("D = {d}, A = {a}: Z¹ = {}, ker N = {ker}", z.order()))?;
        ensure(z.h1_order() == closed, || format!("D = {d}, A = {a}: H¹ = {}, closed form {closed}", z.h1_order()))?;
        done += 1;
    }
    let mut exact = 0;
    for m in ["T^2", "T^3", "T^2+T", "T^2+1", "T^3+T^2"] {
        let m = pp(&field, m);
        let g = UnitGroup::new(&m).unwrap();
        let lat = g.subgroup_lattice().unwrap();
        for gamma in lat.iter().filter(|h| h.order() > 1) {
            let delta = lat.iter().find(|h| h.is_subgroup_of(gamma) && h.order() > 1 && h.order() < gamma.order());
            if let Some(delta) = delta {
                let ok = cogalois::inflation_restriction_check(gamma, delta, &m).map_err(|e| e.to_string())?;
                ensure(ok, || format!("M = {m}: inflation-restriction not exact"))?;
                exact += 1;
            }
        }
    }
    ensure(exact >= INFLATION_INSTANCES, || format!("only {exact} inflation-restriction instances"))?;
    Ok(format!("{done} random cyclic instances ({tries} draws), {exact} exact sequences"))
}

/// Criterion 11: bound_check on every radical cyclotomic subextension of criterion 9's lattices.
/// Attainment is forced when μ(L) = μ(K); equality with μ(L) ≠ μ(K) is also observed.
fn bounds() -> Outcome {
    let (mut n, mut attained_unequal) = (0, 0);
    for (m, lat) in lattices() {
        for a in &lat {
            for b in lat.iter().filter(|b| b.is_subgroup_of(a)) {
                let s = SubextSpec::new(a, b).unwrap();
                match cogalois::bound_check(&s) {
                    Ok(c) => {
                        ensure(c.ok, || format!("M = {m}: {c:?}"))?;
                        if !c.equal_mu && c.order == c.bound {
                            attained_unequal += 1;
                        }
                        n += 1;
                    }
                    Err(Error::HypothesisNotMet(_)) => {}
                    Err(e) => return Err(e.to_string()),
                }
            }
        }
    }
    // k(Λ_T²)/k(Λ_T) attains the bound with μ(L) ≠ μ(K), so "exactly when" holds one way only
    ensure(attained_unequal > 0, || "expected the bound to be attained with μ(L) ≠ μ(K) somewhere".into())?;
    Ok(format!("{n} subextensions; bound attained with μ(L) ≠ μ(K) in {attained_unequal}"))
}

/// Criterion 12: `verify-paper` runs every example and exits 0.
fn verify_paper_cli() -> Outcome {
    let start = Instant::now();
    let out = Command::new(env!("CARGO_BIN_EXE_carlitzlab"))
        .arg("verify-paper")
        .env_remove("CARLITZLAB_CAPS")
        .output()
        .map_err(|e| e.to_string())?;
    ensure(out.status.code() == Some(0), || format!("exit {:?}: {}", out.status.code(), String::from_utf8_lossy(&out.stderr)))?;
    let v: serde_json::Value = serde_json::from_slice(&out.stdout).map_err(|e| e.to_string())?;
    let n = v["result"]["examples"].as_array().map_or(0, Vec::len);
    ensure(n == suite::EXAMPLES.len(), || format!("{n} examples reported"))?;
    Ok(format!("{n} examples, {}", timed(LIMIT_VERIFY, start)?))
}

fn main() {
    let criteria: [Criterion; 12] = [
        ("1 phi oracle", phi_oracle),
        ("2 carlitz algebra", carlitz_algebra),
        ("3 cyclotomic degree", cyclotomic_degree),
        ("4 example ejemplo4", example_4),
        ("5 example ejemplo_entre_ciclotomicos", example_between_cyclotomic),
        ("6 example ejemplo_no_se_alcanza_cota", example_bound_not_attained),
        ("7 examples ejemplo6_1 / ejemplo7_1", examples_6_1_and_7_1),
        ("8 example noredes_cogalois", example_not_hereditary),
        ("9 structure sweep", structure_sweep),
        ("10 cohomology cross-checks", cohomology_cross_checks),
        ("11 bounds", bounds),
        ("12 verify-paper", verify_paper_cli),
    ];
    let mut failed = 0;
    for (name, run) in criteria {
        match std::panic::catch_unwind(run) {
            Ok(Ok(detail)) => println!("PASS  {name}: {detail}"),
            Ok(Err(why)) => {
                failed += 1;
                println!("FAIL  {name}: {why}");
            }
            Err(_) => {
                failed += 1;
                println!("FAIL  {name}: panicked");
            }
        }
    }
    println!("acceptance: {} passed, {failed} failed", 12 - failed);
    if failed > 0 {
        std::process::exit(1);
    }
}
