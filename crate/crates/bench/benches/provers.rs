use criterion::{black_box, criterion_group, criterion_main, Criterion};

use provlog_core::formula::{
    instantiate_schema, parse_formula, Formula, Schema, SchemaArgs, Syntax,
};
use provlog_core::generate::{FormulaGen, GenConfig};
use provlog_core::glprover::{
    decide_gl, decide_gl3, decide_gl4_with, normal_form, DecideOptions, Gl4Engine,
};
use provlog_core::kripke::{countermodel_search, FrameClass};
use provlog_core::Limits;

fn batch() -> Vec<Formula> {
    FormulaGen::new(GenConfig::gl(2, 3), 7).gl_batch(50)
}

fn deciders(c: &mut Criterion) {
    let fs = batch();
    c.bench_function("tableau/50 random", |b| {
        b.iter(|| {
            fs.iter()
                .filter(|f| decide_gl(black_box(f)).unwrap().is_provable())
                .count()
        })
    });
    c.bench_function("gl3/50 random", |b| {
        b.iter(|| {
            fs.iter()
                .filter(|f| decide_gl3(black_box(f)).unwrap().is_provable())
                .count()
        })
    });
    c.bench_function("enumeration gl 4 worlds/50 random", |b| {
        b.iter(|| {
            fs.iter()
                .filter(|f| {
                    countermodel_search(black_box(f), FrameClass::Gl, &Limits::unbounded_time(4))
                        .unwrap()
                        .is_none()
                })
                .count()
        })
    });
    let q2 = instantiate_schema(
        Schema::Q2,
        &SchemaArgs::from([("A", Formula::var("p")), ("B", Formula::var("q"))]),
    )
    .unwrap();
    let opts = DecideOptions {
        cross_check: false,
        limits: Limits::unbounded_time(9),
    };
    for engine in [Gl4Engine::G1, Gl4Engine::Enumeration] {
        c.bench_function(&format!("gl4 {engine:?}/Q2"), |b| {
            b.iter(|| decide_gl4_with(black_box(&q2), engine, &opts).unwrap())
        });
    }
    let f = parse_formula("[](s1 -> [][]bot) & <>(~s1 & []([]bot | s1))").unwrap();
    c.bench_function("normal form F1", |b| {
        b.iter(|| normal_form(1, black_box(&f)).unwrap())
    });
}

criterion_group!(benches, deciders);
criterion_main!(benches);
