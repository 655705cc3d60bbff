use std::hint::black_box;
use std::sync::Arc;

use criterion::{criterion_group, criterion_main, Criterion};
use forge_bench::{cherednik_pairs, operator_and_chart};
use forge_core::dunkl::DunklContext;
use forge_core::gluing::{SliceExpr, SliceGen, SliceModel};
use forge_core::groups::Group;
use forge_core::induction::{self, FinAlgebra, RepChoice};
use forge_core::jets::{default_frames, exact_chart, operator_seeds, taylor_of_operator, Reconstructor};

fn pbw(c: &mut Criterion) {
    for (name, g) in [("Z3", Group::cyclic(3)), ("S3", Group::symmetric(3))] {
        let (ctx, pairs) = cherednik_pairs(g, 3, 16);
        c.bench_function(&format!("pbw multiply {name} degree 3"), |b| {
            b.iter(|| {
                for (x, y) in &pairs {
                    black_box(ctx.mul(x, y));
                }
            })
        });
    }
}

fn dunkl(c: &mut Criterion) {
    let (ctx, pairs) = cherednik_pairs(Group::symmetric(3), 2, 8);
    let d = DunklContext::new(ctx);
    c.bench_function("dunkl embedding S3 degree 2", |b| {
        b.iter(|| {
            for (x, _) in &pairs {
                black_box(d.theta_c(x));
            }
        })
    });
    c.bench_function("dunkl bracket S3", |b| b.iter(|| black_box(d.op_bracket(&d.dunkl_basis(0), &d.dunkl_basis(1)))));
}

fn jets(c: &mut Criterion) {
    let (op, chart) = operator_and_chart(2);
    let chart = exact_chart(&chart);
    c.bench_function("taylor expansion C^2 order 3", |b| b.iter(|| black_box(taylor_of_operator(&op, &chart, 3).unwrap())));
    let (op1, chart1) = operator_and_chart(1);
    let chart1 = exact_chart(&chart1);
    let seeds = operator_seeds(&op1);
    let rec = Reconstructor::new(default_frames(1), op1.diff_order(), &seeds).unwrap();
    c.bench_function("flat section reconstruction C^1 order 4", |b| b.iter(|| black_box(rec.run(&chart1, 4).unwrap())));
}

fn gluing(c: &mut Criterion) {
    let sm = SliceModel::new(1, 2).unwrap();
    let e = SliceExpr::word(vec![SliceGen::DunklY, SliceGen::X(0), SliceGen::DunklY]);
    c.bench_function("gluing check (4,4)", |b| b.iter(|| black_box(sm.check_gluing(&e, 4, 4))));
}

fn induction_bench(c: &mut Criterion) {
    let (g, h) = induction::standard_pair("S3", "S2").unwrap();
    let g = Arc::new(g);
    let a = FinAlgebra::truncated_polynomials(3).with_determinant_action(&g, &h);
    let ah = induction::smash_product(&a, &g, &h).unwrap();
    c.bench_function("puig induction S3/S2 of A x H", |b| {
        b.iter(|| black_box(induction::puig_induce(&ah, g.clone(), h.clone(), RepChoice::Smallest).unwrap()))
    });
}

criterion_group! {
    name = benches;
    config = Criterion::default().sample_size(10);
    targets = pbw, dunkl, jets, gluing, induction_bench
}
criterion_main!(benches);
