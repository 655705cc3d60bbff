//! Verification suites with machine readable reports.
//!
//! Every suite draws its random inputs sequentially from one seeded stream
//! and only then checks them in parallel, so reports are reproducible.

use std::sync::Arc;
use std::time::Instant;

use rayon::prelude::*;
use serde::Serialize;

use crate::cherednik::{CherednikElement, RcaContext};
use crate::dunkl::{dunkl_commutativity, dunkl_equivariance, engine_sign, homomorphism_residual, leading_symbol_ok, DunklContext, Residual};
use crate::error::Result;
use crate::gluing::{sample::random_slice_expr, SliceExpr, SliceGen, SliceModel};
use crate::groups::{Group, Matrix};
use crate::hc::{self, sample::random_semidirect};
use crate::induction::{self, FinAlgebra, RepChoice};
use crate::jets::{
    default_frames, exact_chart, flatness_check, operator_seeds, taylor_of_operator, taylor_product_residual, w_basis,
    JetAutomorphism, JetDiffOp, Reconstructor,
};
use crate::sampling::{random_chart, random_cherednik_total, random_operator, random_poly, rng};
use crate::scalars::{binom, CycNum, MPoly, Monomial, Ring, Scalar};

/// How many residuals a record keeps verbatim.
const MAX_DUMPED: usize = 10;

#[derive(Clone, Debug, Serialize)]
pub struct Conventions {
    pub epsilon: i64,
    pub commutator: &'static str,
    pub lambda: &'static str,
    pub dunkl: &'static str,
    pub flatness: &'static str,
    pub tensor_checks: &'static str,
}

pub fn conventions() -> Conventions {
    Conventions {
        epsilon: engine_sign(),
        commutator: "[u, y] = t(u, y) + eps * sum_s c(s) (u, alpha_s)(y, alpha_s^vee) s",
        lambda: "lambda_{A,s} is the eigenvalue of -A^T on alpha_s",
        dunkl: "D_xi = d_xi - sum_s 2c(s)/(1 - lambda_s) (xi, alpha_s)/alpha_s (1 - s)",
        flatness: "ds(X) + [omega(X), s] = 0 with omega = -(d phi)^{-1} d phi/dt",
        tensor_checks: "Phi_c, sigma and gluing comparisons are made at t = 1",
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct CheckRecord {
    pub name: String,
    pub passed: bool,
    pub cases: usize,
    pub failures: usize,
    pub residuals: Vec<Residual>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub elapsed_ms: Option<f64>,
}

#[derive(Clone, Debug, Serialize)]
pub struct SuiteReport {
    pub suite: String,
    pub group: String,
    pub version: &'static str,
    pub seed: u64,
    pub conventions: Conventions,
    pub checks: Vec<CheckRecord>,
    pub passed: bool,
}

impl SuiteReport {
    pub fn failed_checks(&self) -> impl Iterator<Item = &CheckRecord> {
        self.checks.iter().filter(|c| !c.passed)
    }
}

#[derive(Clone, Copy, Debug, Default)]
pub struct SuiteOptions {
    pub seed: u64,
    pub timings: bool,
}

struct Builder {
    report: SuiteReport,
    timings: bool,
}

impl Builder {
    fn new(suite: &str, group: &str, opts: SuiteOptions) -> Self {
        Builder {
            report: SuiteReport {
                suite: suite.into(),
                group: group.into(),
                version: env!("CARGO_PKG_VERSION"),
                seed: opts.seed,
                conventions: conventions(),
                checks: Vec::new(),
                passed: true,
            },
            timings: opts.timings,
        }
    }

    /// `f` returns the number of cases and the residuals found.
    fn check(&mut self, name: impl Into<String>, f: impl FnOnce() -> Result<(usize, Vec<Residual>)>) {
        let start = Instant::now();
        let (cases, residuals) = match f() {
            Ok(r) => r,
            Err(e) => (0, vec![Residual { label: "error".into(), dump: e.to_string() }]),
        };
        self.push(name.into(), cases, residuals, start);
    }

    /// A check that must fail: passes iff `f` reports a residual.
    fn expect_failure(&mut self, name: impl Into<String>, f: impl FnOnce() -> Result<Vec<Residual>>) {
        let start = Instant::now();
        let residuals = match f() {
            Ok(r) if r.is_empty() => vec![Residual { label: "negative control".into(), dump: "was accepted".into() }],
            Ok(_) => Vec::new(),
            Err(e) => vec![Residual { label: "error".into(), dump: e.to_string() }],
        };
        self.push(name.into(), 1, residuals, start);
    }

    fn push(&mut self, name: String, cases: usize, mut residuals: Vec<Residual>, start: Instant) {
        let failures = residuals.len();
        residuals.truncate(MAX_DUMPED);
        let passed = failures == 0;
        self.report.passed &= passed;
        self.report.checks.push(CheckRecord {
            name,
            passed,
            cases,
            failures,
            residuals,
            elapsed_ms: self.timings.then(|| start.elapsed().as_secs_f64() * 1e3),
        });
    }

    fn finish(self) -> SuiteReport {
        self.report
    }
}

fn residual(label: impl Into<String>, dump: impl Into<String>) -> Residual {
    Residual { label: label.into(), dump: dump.into() }
}

/// `(ab)c = a(bc)` on seeded triples of total degree at most `max_deg`.
pub fn pbw_suite(ctx: &RcaContext, group: &str, triples: usize, max_deg: u32, opts: SuiteOptions) -> SuiteReport {
    let mut b = Builder::new("pbw", group, opts);
    let mut r = rng(opts.seed);
    let samples: Vec<[CherednikElement; 3]> = (0..triples)
        .map(|_| std::array::from_fn(|_| random_cherednik_total(&mut r, ctx, max_deg, 3)))
        .collect();
    b.check("associativity", || {
        let res: Vec<Residual> = samples
            .par_iter()
            .filter_map(|[x, y, z]| {
                let d = ctx.mul(&ctx.mul(x, y), z).sub(&ctx.mul(x, &ctx.mul(y, z)));
                (!d.is_zero()).then(|| residual(format!("({})({})({})", ctx.format(x), ctx.format(y), ctx.format(z)), ctx.format(&d)))
            })
            .collect();
        Ok((samples.len(), res))
    });
    b.check("generator relations", || {
        let mut res = Vec::new();
        let l = ctx.dim();
        for i in 0..l {
            for j in 0..l {
                for (x, y) in [(ctx.y(i), ctx.y(j)), (ctx.u(i), ctx.u(j))] {
                    let br = ctx.bracket(&x, &y);
                    if !br.is_zero() {
                        res.push(residual(format!("[{}, {}]", ctx.format(&x), ctx.format(&y)), ctx.format(&br)));
                    }
                }
            }
        }
        Ok((2 * l * l, res))
    });
    b.finish()
}

/// Commutativity and equivariance of Dunkl operators.
pub fn dunkl_commute_suite(ctx: &DunklContext, group: &str, opts: SuiteOptions) -> SuiteReport {
    let mut b = Builder::new("dunkl-commute", group, opts);
    let l = ctx.dim();
    b.check("commutativity", || Ok((l * l.saturating_sub(1) / 2, dunkl_commutativity(ctx))));
    b.check("equivariance", || Ok((l * ctx.rca().group().order(), dunkl_equivariance(ctx))));
    b.finish()
}

/// `Theta_c` is multiplicative on generator pairs and random pairs.
pub fn dunkl_embed_suite(ctx: &DunklContext, group: &str, random_pairs: usize, opts: SuiteOptions) -> SuiteReport {
    let mut b = Builder::new("dunkl-embed", group, opts);
    let rca = ctx.rca().clone();
    if ctx.dim() == 1 {
        b.check("sign oracle", || {
            let got = ctx.sign_oracle();
            let res = match got {
                Some(e) if e == engine_sign() => Vec::new(),
                other => vec![residual("epsilon", format!("oracle {other:?}, engine {}", engine_sign()))],
            };
            Ok((1, res))
        });
    }
    b.check("generator pairs", || {
        let gens = rca.generators();
        let pairs: Vec<_> = gens.iter().flat_map(|a| gens.iter().map(move |b| (a, b))).collect();
        let res = pairs.par_iter().filter_map(|((_, x), (_, y))| homomorphism_residual(ctx, x, y)).collect();
        Ok((pairs.len(), res))
    });
    let mut r = rng(opts.seed);
    let samples: Vec<(CherednikElement, CherednikElement)> =
        (0..random_pairs).map(|_| (random_cherednik_total(&mut r, &rca, 2, 2), random_cherednik_total(&mut r, &rca, 2, 2))).collect();
    b.check("random pairs", || {
        let res = samples.par_iter().filter_map(|(x, y)| homomorphism_residual(ctx, x, y)).collect();
        Ok((samples.len(), res))
    });
    b.check("leading symbols", || {
        let ms = Monomial::all_up_to(ctx.dim(), 2);
        let res = ms.iter().filter(|m| !leading_symbol_ok(ctx, m)).map(|m| residual("Theta(u^b)", format!("{m:?}"))).collect();
        Ok((ms.len(), res))
    });
    b.finish()
}

fn invertible_centralizer_elements(basis: &[Matrix]) -> Vec<Matrix> {
    let l = basis.first().map(Matrix::dim).unwrap_or(0);
    basis.iter().map(|a| a.add(&Matrix::identity(l))).filter(|g| g.inverse().is_some()).collect()
}

/// The Harish-Chandra identities for the centralizer of `H` acting on `l`
/// dimensions, with `elements` random semidirect elements at truncation `k`.
pub fn hc_suite(ctx: &Arc<RcaContext>, group: &str, elements: usize, k: u32, opts: SuiteOptions) -> SuiteReport {
    let mut b = Builder::new("hc", group, opts);
    let dctx = DunklContext::new(ctx.clone());
    let basis = hc::centralizer_basis(ctx);
    let l = ctx.dim();
    b.check("theta preserves relations", || {
        let gs = invertible_centralizer_elements(&basis);
        let mut res = Vec::new();
        for g in &gs {
            res.extend(hc::theta_relation_residuals(ctx, g)?);
        }
        Ok((gs.len(), res))
    });
    b.check("phi_c is a Lie homomorphism", || Ok((basis.len() * basis.len(), hc::phi_homomorphism_residuals(ctx)?)));
    b.check("generator equivariance", || Ok((basis.len() * 3, hc::generator_equivariance_residuals(ctx)?)));
    b.check("central correction", || Ok((basis.len(), hc::lemma_residuals(ctx)?)));
    let mut r = rng(opts.seed);
    let samples: Vec<_> = (0..elements).map(|_| random_semidirect(&mut r, &basis, l, 1, k)).collect();
    b.check("factorization", || {
        let res: Vec<Vec<Residual>> = samples.par_iter().map(|e| hc::verify_factorization(&dctx, e)).collect::<Result<_>>()?;
        Ok((samples.len(), res.into_iter().flatten().collect()))
    });
    let pairs: Vec<_> = samples.chunks_exact(2).take(5).map(|p| (p[0].clone(), p[1].clone())).collect();
    b.check("Phi_c and sigma preserve brackets", || {
        let mut res = Vec::new();
        for (x, y) in &pairs {
            res.extend(hc::big_phi_bracket_residual(ctx, x, y)?);
            res.extend(hc::sigma_bracket_residual(&dctx, x, y)?);
        }
        Ok((pairs.len(), res))
    });
    b.finish()
}

fn jet_label(m: &Monomial, n: usize) -> String {
    format!("{:?}", m.exps(n))
}

/// `W_{m,K}` dimensions, Taylor multiplicativity, reconstruction and
/// flatness on seeded inputs.
pub fn jets_suite(ops: usize, paths: usize, recon_order: u32, opts: SuiteOptions) -> SuiteReport {
    let mut b = Builder::new("jets", "C^n", opts);
    b.check("dimension of W", || {
        let cases = [(1usize, 3u32), (2, 2), (3, 1)];
        let res = cases
            .iter()
            .filter_map(|&(m, k)| {
                let got = w_basis(m, k).len() as u128;
                let want = m as u128 * binom(m as u32 + k, m as u32);
                (got != want).then(|| residual(format!("W_{{{m},{k}}}"), format!("{got} != {want}")))
            })
            .collect();
        Ok((cases.len(), res))
    });
    let mut r = rng(opts.seed);
    let products: Vec<_> = (0..ops)
        .map(|_| (random_operator(&mut r, 2, 2, 3, 4), random_operator(&mut r, 2, 2, 3, 4), random_chart(&mut r, 2)))
        .collect();
    b.check("Taylor multiplicativity mod m^4", || {
        let res: Vec<Option<Residual>> = products
            .par_iter()
            .map(|(d1, d2, chart)| {
                let d = taylor_product_residual(d1, d2, &exact_chart(chart), 3)?;
                Ok((!d.is_zero()).then(|| residual(format!("T(({d1})({d2}))"), d.to_string())))
            })
            .collect::<Result<_>>()?;
        Ok((products.len(), res.into_iter().flatten().collect()))
    });
    for n in [1usize, 2] {
        let op = random_operator(&mut r, n, 2, 3, 4);
        let chart = random_chart(&mut r, n);
        b.check(format!("reconstruction on C^{n}"), || {
            let seeds = operator_seeds(&op);
            let rec = Reconstructor::new(default_frames(n), op.diff_order(), &seeds)?;
            let chart = exact_chart(&chart);
            let got = rec.run(&chart, recon_order)?;
            let want = taylor_of_operator(&op, &chart, recon_order)?;
            let mut res = Vec::new();
            if got.inconsistencies > 0 {
                res.push(residual("inconsistent recursion steps", got.inconsistencies.to_string()));
            }
            for beta in Monomial::all_up_to(n, recon_order) {
                for alpha in Monomial::all_up_to(n, op.diff_order()) {
                    let g = got.coeffs.get(&(alpha.clone(), beta.clone())).cloned().unwrap_or_else(Scalar::zero);
                    let w = want.coeff(&beta, &alpha);
                    if g != w {
                        res.push(residual(format!("f[{}, {}]", jet_label(&alpha, n), jet_label(&beta, n)), format!("{g} != {w}")));
                    }
                }
            }
            Ok((got.coeffs.len(), res))
        });
    }
    let path_samples: Vec<_> = (0..paths)
        .map(|i| {
            let n = 1 + i % 2;
            let dot: Vec<MPoly<_>> = (0..n).map(|_| random_poly(&mut r, n, 3, 3)).collect();
            (random_operator(&mut r, n, 2, 3, 4), random_chart(&mut r, n), dot)
        })
        .collect();
    b.check("flatness along paths", || {
        let res: Vec<Option<Residual>> = path_samples
            .par_iter()
            .map(|(op, phi, dot)| {
                let rep = flatness_check(op, &exact_chart(phi), &exact_chart(dot), 3)?;
                Ok((!rep.is_flat()).then(|| residual(format!("ds + [omega, s] for {op}"), rep.residual.to_string())))
            })
            .collect::<Result<_>>()?;
        Ok((path_samples.len(), res.into_iter().flatten().collect()))
    });
    b.finish()
}

/// Flatness of the Taylor section of one operator along seeded paths.
pub fn flat_check_suite(op: &JetDiffOp<Scalar>, dim: usize, k: u32, paths: usize, opts: SuiteOptions) -> SuiteReport {
    let mut b = Builder::new("jets flat-check", &format!("C^{dim}"), opts);
    let mut r = rng(opts.seed);
    let samples: Vec<_> = (0..paths)
        .map(|_| {
            let dot: Vec<MPoly<Scalar>> = (0..dim).map(|_| random_poly(&mut r, dim, 3, 3)).collect();
            (random_chart(&mut r, dim), dot)
        })
        .collect();
    b.check(format!("ds + [omega, s] = 0 for {op}"), || {
        let res: Vec<Option<Residual>> = samples
            .par_iter()
            .enumerate()
            .map(|(i, (phi, dot))| {
                let rep = flatness_check(op, &exact_chart(phi), &exact_chart(dot), k)?;
                Ok((!rep.is_flat()).then(|| residual(format!("path {i}"), rep.residual.to_string())))
            })
            .collect::<Result<_>>()?;
        Ok((samples.len(), res.into_iter().flatten().collect()))
    });
    b.finish()
}

/// Gluing checks on the slice `C^m x C` with `Z/order` acting on the last
/// coordinate.
pub fn gluing_suite(m: usize, order: u32, kx: u32, ky: u32, random: usize, opts: SuiteOptions) -> Result<SuiteReport> {
    let sm = SliceModel::new(m, order)?;
    let mut b = Builder::new("gluing", &format!("Z{order} on C^{}", m + 1), opts);
    let report = |e: &SliceExpr| {
        let rep = sm.check_gluing(e, kx, ky);
        (!rep.passed()).then(|| residual(e.to_string(), format!("i) {} ii) {} {:?}", rep.condition_i, rep.condition_ii, rep.mismatches)))
    };
    let gens = sm.generators();
    b.check("generators", || Ok((gens.len(), gens.iter().filter_map(|g| report(&SliceExpr::generator(*g))).collect())));
    let mut r = rng(opts.seed);
    let samples: Vec<SliceExpr> = (0..random).map(|_| random_slice_expr(&mut r, &sm, 2)).collect();
    b.check("random elements", || Ok((samples.len(), samples.par_iter().filter_map(report).collect())));
    b.expect_failure("double pole is rejected by condition i)", || {
        let rep = sm.check_gluing(&SliceExpr::generator(SliceGen::PoleY(2)), kx, ky);
        Ok(if rep.condition_i { Vec::new() } else { vec![residual("pole", format!("{:?}", rep.offending_terms))] })
    });
    b.check("chart independence", || {
        let x = MPoly::var(0);
        let kappa = JetAutomorphism::new((0..m).map(|i| if i == 0 { x.add(&x.mul(&x)) } else { MPoly::var(i) }).collect(), kx + 2)?;
        let mut res = Vec::new();
        for e in samples.iter().take(5) {
            let conj = sm.conjugate_expr(e, &kappa, kx + 2)?;
            res.extend(report(&conj));
        }
        Ok((samples.len().min(5), res))
    });
    let basis = sm.pbw_basis(2);
    b.check("Laurent expansion is injective", || {
        let rk = sm.side0_rank(&basis);
        Ok((basis.len(), if rk == basis.len() { Vec::new() } else { vec![residual("rank", format!("{rk} < {}", basis.len()))] }))
    });
    b.check("filtration is preserved", || {
        let res = basis
            .iter()
            .filter_map(|e| {
                let (got, want) = (sm.side0_laurent(e).order(), e.filtration_degree());
                (got != want).then(|| residual(e.to_string(), format!("operator order {got}, degree {want}")))
            })
            .collect();
        Ok((basis.len(), res))
    });
    Ok(b.finish())
}

/// Turull and Puig induction from `h_name` to `g_name`.
pub fn induction_suite(g_name: &str, h_name: &str, algebra: &str, triples: usize, pairs: usize, opts: SuiteOptions) -> Result<SuiteReport> {
    let (g, h) = induction::standard_pair(g_name, h_name)?;
    let g = Arc::new(g);
    let a = induction::parse_algebra(algebra)?.with_determinant_action(&g, &h);
    let index = g.order() / h.len();
    let mut b = Builder::new("induction", &format!("{g_name} > {h_name}, A = {algebra}"), opts);
    let ah = induction::smash_product(&a, &g, &h)?;
    let tur = induction::turull_induce(&a, g.clone(), h.clone(), RepChoice::Smallest)?;
    let puig = induction::puig_induce(&ah, g.clone(), h.clone(), RepChoice::Smallest)?;
    b.check("dimensions", || {
        let mut res = Vec::new();
        if tur.algebra.dim() != index * a.dim() {
            res.push(residual("Turull", format!("{} != {index} * {}", tur.algebra.dim(), a.dim())));
        }
        if puig.algebra.dim() != index * index * ah.dim() {
            res.push(residual("Puig", format!("{} != {index}^2 * {}", puig.algebra.dim(), ah.dim())));
        }
        Ok((2, res))
    });
    b.check("actions and interior maps", || {
        let mut res: Vec<Residual> = Vec::new();
        for (name, alg) in [("A", &a), ("A x H", &ah), ("Turull", &tur.algebra), ("Puig", &puig.algebra)] {
            res.extend(alg.structure_residuals(&g).into_iter().map(|s| residual(name, s)));
        }
        Ok((4, res))
    });
    let mut r = rng(opts.seed);
    let assoc = |alg: &FinAlgebra, r: &mut crate::sampling::TestRng, name: &str| {
        let samples: Vec<_> = (0..triples).map(|_| [0, 1, 2].map(|_| alg.random_element(r, 4))).collect();
        let res: Vec<Residual> = samples
            .par_iter()
            .enumerate()
            .filter(|(_, [x, y, z])| !alg.associativity_residual(x, y, z).iter().all(CycNum::is_zero))
            .map(|(i, _)| residual(format!("{name} triple {i}"), "(xy)z != x(yz)"))
            .collect();
        (samples.len(), res)
    };
    let puig_assoc = assoc(&puig.algebra, &mut r, "Puig");
    b.check("Puig product is associative", || Ok(puig_assoc));
    let tur_assoc = assoc(&tur.algebra, &mut r, "Turull");
    b.check("Turull product is associative", || Ok(tur_assoc));
    b.check("smash product isomorphism", || {
        let rep = induction::verify_smash_iso(&a, g.clone(), h.clone(), &mut r, pairs)?;
        let mut res: Vec<Residual> = rep.failures.iter().map(|f| residual("not multiplicative", f.clone())).collect();
        if rep.rank != rep.puig_dim || rep.puig_dim != rep.smash_dim {
            res.push(residual("not bijective", format!("rank {} for dimensions {} and {}", rep.rank, rep.puig_dim, rep.smash_dim)));
        }
        if !rep.unit_preserved {
            res.push(residual("unit", "not preserved"));
        }
        Ok((rep.basis_pairs_checked + rep.random_pairs_checked, res))
    });
    b.check("representative independence", || {
        let mut res = Vec::new();
        if !induction::turull_rep_independence(&a, g.clone(), h.clone())? {
            res.push(residual("Turull", "depends on coset representatives"));
        }
        if !induction::puig_rep_independence(&ah, g.clone(), h.clone())? {
            res.push(residual("Puig", "depends on coset representatives"));
        }
        Ok((2, res))
    });
    b.check("Puig induction of C has zero divisors", || {
        let c = FinAlgebra::scalars().with_trivial_interior(&h);
        let p = induction::puig_induce(&c, g.clone(), h.clone(), RepChoice::Smallest)?;
        let res = (0..p.algebra.dim())
            .filter(|&i| !p.algebra.is_zero_divisor(&p.algebra.basis(i)))
            .map(|i| residual(p.algebra.names[i].clone(), "no annihilator"))
            .collect();
        Ok((p.algebra.dim(), res))
    });
    Ok(b.finish())
}

/// Shipped groups for the algebra suites.
pub fn standard_groups() -> Vec<(String, Group)> {
    ["Z2", "Z3", "S2", "S3"].iter().map(|n| (n.to_string(), Group::named(n).expect("built-in group"))).collect()
}

/// Centralizer test cases for the Harish-Chandra suite.
pub fn hc_groups() -> Vec<(String, Group)> {
    vec![("<diag(-1,1,1)> in GL(3)".into(), hc::reflection_in_gl3()), ("<diag(z3)> in GL(1)".into(), hc::cyclic_scalar(3))]
}

/// Sizes used by `verify all`.
#[derive(Clone, Copy, Debug)]
pub struct Scale {
    pub pbw_triples: usize,
    pub embed_pairs: usize,
    pub hc_elements: usize,
    pub jet_ops: usize,
    pub jet_paths: usize,
    pub gluing_random: usize,
    pub induction_triples: usize,
    pub induction_pairs: usize,
}

impl Scale {
    pub const FULL: Scale = Scale {
        pbw_triples: 500,
        embed_pairs: 100,
        hc_elements: 50,
        jet_ops: 100,
        jet_paths: 20,
        gluing_random: 50,
        induction_triples: 500,
        induction_pairs: 200,
    };

    pub const QUICK: Scale = Scale {
        pbw_triples: 20,
        embed_pairs: 10,
        hc_elements: 4,
        jet_ops: 10,
        jet_paths: 4,
        gluing_random: 5,
        induction_triples: 20,
        induction_pairs: 10,
    };
}

/// Every suite on the shipped inputs, in a fixed order.
pub fn all_suites(scale: Scale, opts: SuiteOptions) -> Result<Vec<SuiteReport>> {
    let mut out = Vec::new();
    for (name, g) in standard_groups() {
        let ctx = RcaContext::new(g);
        out.push(pbw_suite(&ctx, &name, scale.pbw_triples, 3, opts));
        let d = DunklContext::new(ctx);
        out.push(dunkl_commute_suite(&d, &name, opts));
        out.push(dunkl_embed_suite(&d, &name, scale.embed_pairs, opts));
    }
    for (name, g) in hc_groups() {
        out.push(hc_suite(&RcaContext::new(g), &name, scale.hc_elements, 3, opts));
    }
    out.push(jets_suite(scale.jet_ops, scale.jet_paths, 4, opts));
    out.push(gluing_suite(1, 2, 4, 4, scale.gluing_random, opts)?);
    for (g, h) in [("S3", "S2"), ("Z4", "Z2")] {
        out.push(induction_suite(g, h, "C[x]/(x^3)", scale.induction_triples, scale.induction_pairs, opts)?);
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn quick_suites_pass() {
        let opts = SuiteOptions { seed: 1, timings: false };
        let reports = all_suites(Scale::QUICK, opts).unwrap();
        for r in &reports {
            assert!(r.passed, "{} {}: {:?}", r.suite, r.group, r.failed_checks().collect::<Vec<_>>());
        }
    }

    #[test]
    fn reports_are_deterministic() {
        let opts = SuiteOptions { seed: 3, timings: false };
        let ctx = RcaContext::new(Group::cyclic(3));
        let a = serde_json_like(&pbw_suite(&ctx, "Z3", 5, 2, opts));
        let b = serde_json_like(&pbw_suite(&ctx, "Z3", 5, 2, opts));
        assert_eq!(a, b);
    }

    fn serde_json_like(r: &SuiteReport) -> String {
        format!("{r:?}")
    }
}
