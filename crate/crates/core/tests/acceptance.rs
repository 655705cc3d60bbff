//! The twelve acceptance criteria. Runs without the test harness so that
//! every criterion prints exactly one line; exits nonzero if any fails.

use std::process::ExitCode;
use std::sync::Arc;
use std::time::{Duration, Instant};

use forge_core::cherednik::RcaContext;
use forge_core::dunkl::{dunkl_commutativity, engine_sign, homomorphism_residual, DunklContext};
use forge_core::gluing::{sample::random_slice_expr, SliceExpr, SliceGen, SliceModel};
use forge_core::groups::Group;
use forge_core::hc::{self, sample::random_semidirect};
use forge_core::induction::{self, FinAlgebra, RepChoice};
use forge_core::jets::{
    default_frames, exact_chart, flatness_check, operator_seeds, taylor_of_operator, taylor_product_residual, w_basis,
    Reconstructor,
};
use forge_core::sampling::{random_chart, random_cherednik_total, random_operator, random_poly, rng};
use forge_core::{Monomial, Ring, Scalar};
use rayon::prelude::*;

type Criterion = (&'static str, fn() -> Outcome);

struct Outcome {
    ok: bool,
    detail: String,
}

fn outcome(ok: bool, detail: impl Into<String>) -> Outcome {
    Outcome { ok, detail: detail.into() }
}

fn within(start: Instant, limit: Duration) -> bool {
    start.elapsed() < limit
}

/// n choose k by the multiplicative formula.
fn choose(n: u64, k: u64) -> u64 {
    (0..k).fold(1, |acc, i| acc * (n - i) / (i + 1))
}

fn groups() -> Vec<(&'static str, Group)> {
    vec![("Z2", Group::cyclic(2)), ("Z3", Group::cyclic(3)), ("S2", Group::symmetric(2)), ("S3", Group::symmetric(3))]
}

fn pbw() -> Outcome {
    let start = Instant::now();
    let mut bad = Vec::new();
    for (name, g) in groups() {
        let ctx = RcaContext::new(g);
        let mut r = rng(1);
        let triples: Vec<_> = (0..500).map(|_| [0, 1, 2].map(|_| random_cherednik_total(&mut r, &ctx, 3, 3))).collect();
        let fails = triples
            .par_iter()
            .filter(|[a, b, c]| ctx.mul(&ctx.mul(a, b), c) != ctx.mul(a, &ctx.mul(b, c)))
            .count();
        if fails > 0 {
            bad.push(format!("{name}: {fails}"));
        }
    }
    let t = start.elapsed();
    outcome(bad.is_empty() && t < Duration::from_secs(60), format!("4 groups x 500 triples, {:.1}s {}", t.as_secs_f64(), bad.join(" ")))
}

fn dunkl_commute() -> Outcome {
    let start = Instant::now();
    let mut n = 0;
    for g in [Group::symmetric(2), Group::symmetric(3)] {
        n += dunkl_commutativity(&DunklContext::new(RcaContext::new(g))).len();
    }
    outcome(n == 0 && within(start, Duration::from_secs(30)), format!("S2, S3: {n} nonzero brackets, {:.1}s", start.elapsed().as_secs_f64()))
}

fn dunkl_embed() -> Outcome {
    // rank one oracle: [D, x] = 1 - 2c s fixes the sign of the c-term
    let oracle = DunklContext::new(RcaContext::new(Group::cyclic(2))).sign_oracle();
    if oracle != Some(engine_sign()) {
        return outcome(false, format!("sign oracle {oracle:?} vs engine {}", engine_sign()));
    }
    let mut bad = 0;
    let mut cases = 0;
    for (_, g) in groups() {
        let ctx = RcaContext::new(g);
        let d = DunklContext::new(ctx.clone());
        let gens: Vec<_> = ctx.generators().into_iter().map(|(_, x)| x).collect();
        let mut pairs: Vec<_> = gens.iter().flat_map(|a| gens.iter().map(move |b| (a.clone(), b.clone()))).collect();
        let mut r = rng(2);
        pairs.extend((0..100).map(|_| (random_cherednik_total(&mut r, &ctx, 2, 2), random_cherednik_total(&mut r, &ctx, 2, 2))));
        cases += pairs.len();
        bad += pairs.par_iter().filter(|(a, b)| homomorphism_residual(&d, a, b).is_some()).count();
    }
    outcome(bad == 0, format!("epsilon = {}, {cases} pairs, {bad} residuals", engine_sign()))
}

fn hc_groups() -> Vec<(Arc<RcaContext>, usize)> {
    // centralizer of diag(-1,1,1): block diagonal 1 + 2x2 = 5; GL(1): 1
    vec![(RcaContext::new(hc::reflection_in_gl3()), 5), (RcaContext::new(hc::cyclic_scalar(3)), 1)]
}

fn phi_hom() -> Outcome {
    let start = Instant::now();
    let mut detail = Vec::new();
    let mut ok = true;
    for (ctx, dim) in hc_groups() {
        let got = hc::centralizer_basis(&ctx).len();
        let res = hc::phi_homomorphism_residuals(&ctx).map(|r| r.len()).unwrap_or(usize::MAX);
        ok &= got == dim && res == 0;
        detail.push(format!("dim z = {got}, {res} residuals"));
    }
    ok &= within(start, Duration::from_secs(30));
    outcome(ok, detail.join("; "))
}

fn equivariance() -> Outcome {
    let n: usize = hc_groups().iter().map(|(c, _)| hc::generator_equivariance_residuals(c).map(|r| r.len()).unwrap_or(usize::MAX)).sum();
    outcome(n == 0, format!("{n} residuals over y, u, h"))
}

fn factorization() -> Outcome {
    let mut bad = 0;
    for (ctx, _) in hc_groups() {
        let d = DunklContext::new(ctx.clone());
        let basis = hc::centralizer_basis(&ctx);
        let mut r = rng(3);
        let els: Vec<_> = (0..50).map(|_| random_semidirect(&mut r, &basis, ctx.dim(), 1, 3)).collect();
        bad += els.par_iter().map(|e| hc::verify_factorization(&d, e).map(|v| v.len()).unwrap_or(1)).sum::<usize>();
    }
    outcome(bad == 0, format!("2 groups x 50 elements at K = 3, {bad} residuals"))
}

fn lemma() -> Outcome {
    let n: usize = hc_groups().iter().map(|(c, _)| hc::lemma_residuals(c).map(|r| r.len()).unwrap_or(usize::MAX)).sum();
    outcome(n == 0, format!("{n} residuals"))
}

fn taylor() -> Outcome {
    let mut r = rng(4);
    let cases: Vec<_> =
        (0..100).map(|_| (random_operator(&mut r, 2, 2, 3, 4), random_operator(&mut r, 2, 2, 3, 4), random_chart(&mut r, 2))).collect();
    let bad = cases
        .par_iter()
        .filter(|(a, b, c)| !taylor_product_residual(a, b, &exact_chart(c), 3).map(|d| d.is_zero()).unwrap_or(false))
        .count();
    outcome(bad == 0, format!("100 operator pairs on C^2 mod m^4, {bad} failures"))
}

fn reconstruction() -> Outcome {
    let mut r = rng(5);
    let mut detail = Vec::new();
    let mut ok = true;
    for n in [1usize, 2] {
        let op = random_operator(&mut r, n, 2, 3, 4);
        let chart = exact_chart(&random_chart(&mut r, n));
        let seeds = operator_seeds(&op);
        let rec = Reconstructor::new(default_frames(n), op.diff_order(), &seeds).expect("frame");
        let got = rec.run(&chart, 4).expect("reconstruction");
        let want = taylor_of_operator(&op, &chart, 4).expect("taylor");
        let mut mismatches = 0;
        for beta in Monomial::all_up_to(n, 4) {
            for alpha in Monomial::all_up_to(n, op.diff_order()) {
                let g = got.coeffs.get(&(alpha.clone(), beta.clone())).cloned().unwrap_or_else(Scalar::zero);
                mismatches += usize::from(g != want.coeff(&beta, &alpha));
            }
        }
        ok &= mismatches == 0 && got.inconsistencies == 0;
        detail.push(format!("C^{n}: {mismatches} mismatches"));
    }
    let paths: Vec<_> = (0..20)
        .map(|i| {
            let n = 1 + i % 2;
            let dot: Vec<_> = (0..n).map(|_| random_poly(&mut r, n, 3, 3)).collect();
            (random_operator(&mut r, n, 2, 3, 4), random_chart(&mut r, n), dot)
        })
        .collect();
    let unflat = paths
        .par_iter()
        .filter(|(op, phi, dot)| !flatness_check(op, &exact_chart(phi), &exact_chart(dot), 3).map(|f| f.is_flat()).unwrap_or(false))
        .count();
    ok &= unflat == 0;
    detail.push(format!("{unflat}/20 paths not flat"));
    outcome(ok, detail.join(", "))
}

fn gluing() -> Outcome {
    let sm = SliceModel::new(1, 2).expect("slice");
    let mut exprs: Vec<SliceExpr> = sm.generators().into_iter().map(SliceExpr::generator).collect();
    let mut r = rng(6);
    exprs.extend((0..50).map(|_| random_slice_expr(&mut r, &sm, 2)));
    let bad = exprs.par_iter().filter(|e| !sm.check_gluing(e, 4, 4).passed()).count();
    let control = sm.check_gluing(&SliceExpr::generator(SliceGen::PoleY(2)), 4, 4);
    outcome(
        bad == 0 && !control.condition_i,
        format!("{} elements at (4,4), {bad} failures; 1/y^2 control condition i) = {}", exprs.len(), control.condition_i),
    )
}

fn induction_criterion() -> Outcome {
    let mut ok = true;
    let mut detail = Vec::new();
    for (gn, hn, g_order, h_order) in [("S3", "S2", 6usize, 2usize), ("Z4", "Z2", 4, 2)] {
        let (g, h) = induction::standard_pair(gn, hn).expect("pair");
        let g = Arc::new(g);
        let index = g_order / h_order;
        let a = FinAlgebra::truncated_polynomials(3).with_determinant_action(&g, &h);
        let ah = induction::smash_product(&a, &g, &h).expect("smash");
        let tur = induction::turull_induce(&a, g.clone(), h.clone(), RepChoice::Smallest).expect("turull");
        let puig = induction::puig_induce(&ah, g.clone(), h.clone(), RepChoice::Smallest).expect("puig");
        let dims_ok = h.len() == h_order
            && tur.algebra.dim() == index * 3
            && puig.algebra.dim() == index * index * 3 * h_order
            && induction::puig_induce(&FinAlgebra::scalars().with_trivial_interior(&h), g.clone(), h.clone(), RepChoice::Smallest)
                .expect("puig")
                .algebra
                .dim()
                == index * index;
        let mut r = rng(7);
        let triples: Vec<_> = (0..500).map(|_| [0, 1, 2].map(|_| puig.algebra.random_element(&mut r, 4))).collect();
        let non_assoc = triples
            .par_iter()
            .filter(|[x, y, z]| !puig.algebra.associativity_residual(x, y, z).iter().all(Ring::is_zero))
            .count();
        let iso = induction::verify_smash_iso(&a, g.clone(), h.clone(), &mut r, 200).expect("iso");
        ok &= dims_ok && non_assoc == 0 && iso.passed() && iso.random_pairs_checked == 200;
        detail.push(format!(
            "{gn}/{hn}: dims {dims_ok}, {non_assoc} non-associative, map rank {}/{} with {} failures",
            iso.rank,
            iso.puig_dim,
            iso.failures.len()
        ));
    }
    outcome(ok, detail.join("; "))
}

fn jet_dimensions() -> Outcome {
    let mut detail = Vec::new();
    let mut ok = true;
    for (m, k) in [(1usize, 3u32), (2, 2), (3, 1)] {
        let got = w_basis(m, k).len() as u64;
        let want = m as u64 * choose((m as u64) + k as u64, m as u64);
        ok &= got == want;
        detail.push(format!("W_{m},{k} = {got} (expected {want})"));
    }
    outcome(ok, detail.join(", "))
}

fn main() -> ExitCode {
    let criteria: [Criterion; 12] = [
        ("PBW associativity", pbw),
        ("Dunkl commutativity", dunkl_commute),
        ("Dunkl embedding", dunkl_embed),
        ("phi_c Lie homomorphism", phi_hom),
        ("generator equivariance", equivariance),
        ("factorization sigma = (id x Theta) Phi_c", factorization),
        ("central correction lemma", lemma),
        ("Taylor multiplicativity", taylor),
        ("flat section recursion", reconstruction),
        ("gluing model", gluing),
        ("induction", induction_criterion),
        ("jet dimensions", jet_dimensions),
    ];
    let mut failed = 0;
    for (i, (name, f)) in criteria.iter().enumerate() {
        let start = Instant::now();
        let o = f();
        let status = if o.ok { "PASS" } else { "FAIL" };
        println!("[{status}] {:>2}. {name} ({:.1}s): {}", i + 1, start.elapsed().as_secs_f64(), o.detail);
        failed += usize::from(!o.ok);
    }
    println!("acceptance: {}/12 criteria passed", 12 - failed);
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
