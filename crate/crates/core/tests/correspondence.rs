//! Exhaustive frame-level checks on small frames.

use provlog_core::formula::{instantiate_schema, Formula, Schema, SchemaArgs, Syntax};
use provlog_core::kripke::{
    build_pmorphism_from_g1, enumerate_frames, frame_class, Frame, FrameClass, Model,
};

/// Every transitive irreflexive relation on `n` labelled worlds.
fn strict_orders(n: usize) -> Vec<Frame> {
    let pairs: Vec<(usize, usize)> = (0..n)
        .flat_map(|a| (0..n).map(move |b| (a, b)))
        .filter(|(a, b)| a != b)
        .collect();
    (0..1u64 << pairs.len())
        .filter_map(|mask| {
            let rel = |a: usize, b: usize| {
                a != b && (mask >> pairs.iter().position(|&p| p == (a, b)).unwrap()) & 1 == 1
            };
            let transitive = (0..n)
                .all(|a| (0..n).all(|b| (0..n).all(|c| !(rel(a, b) && rel(b, c)) || rel(a, c))));
            transitive.then(|| Frame::from_fn(n, rel))
        })
        .collect()
}

/// Validity of `f` on `frame`: every valuation of its atoms, every world.
fn frame_valid(frame: &Frame, f: &Formula) -> bool {
    let atoms: Vec<_> = f.atoms().into_iter().collect();
    let n = frame.len();
    (0..1u64 << (atoms.len() * n)).all(|v| {
        let mut m = Model::new(frame.clone());
        for (k, a) in atoms.iter().enumerate() {
            m.set(a.clone(), (0..n).filter(|w| (v >> (k * n + w)) & 1 == 1));
        }
        m.truth_set(f).unwrap().into_iter().all(|t| t)
    })
}

fn q1() -> Formula {
    instantiate_schema(
        Schema::Q1,
        &SchemaArgs::from([
            ("A", Formula::var("p")),
            ("B", Formula::var("q")),
            ("C", Formula::var("r")),
        ]),
    )
    .unwrap()
}

#[test]
fn q1_defines_non_triple_branching() {
    let f = q1();
    let mut frames = 0;
    for n in 1..=4 {
        for fr in strict_orders(n) {
            let report = frame_class(&fr);
            assert!(report.is_gl());
            assert_eq!(frame_valid(&fr, &f), report.c2, "{:?}", fr.edges());
            frames += 1;
        }
    }
    assert_eq!(frames, 1 + 3 + 19 + 219);
}

#[test]
fn linearity_defines_linear_frames() {
    let lin = instantiate_schema(
        Schema::Linearity,
        &SchemaArgs::from([("A", Formula::var("p")), ("B", Formula::var("q"))]),
    )
    .unwrap();
    for n in 1..=4 {
        for fr in strict_orders(n) {
            // Linearity of the successor set of each world.
            let linear = (0..n).all(|x| {
                let s: Vec<usize> = fr.successors(x).collect();
                s.iter().all(|&a| {
                    s.iter()
                        .all(|&b| a == b || fr.related(a, b) || fr.related(b, a))
                })
            });
            assert_eq!(frame_valid(&fr, &lin), linear, "{:?}", fr.edges());
        }
    }
}

#[test]
fn q2_valid_on_class_c() {
    let q2 = instantiate_schema(
        Schema::Q2,
        &SchemaArgs::from([("A", Formula::var("p")), ("B", Formula::var("q"))]),
    )
    .unwrap();
    for n in 1..=5 {
        for fr in strict_orders(n)
            .into_iter()
            .filter(|f| frame_class(f).in_c())
        {
            assert!(frame_valid(&fr, &q2), "{:?}", fr.edges());
        }
    }
}

#[test]
fn lob_valid_on_gl_frames() {
    let lob =
        instantiate_schema(Schema::Lob, &SchemaArgs::from([("A", Formula::var("p"))])).unwrap();
    for n in 1..=4 {
        for fr in strict_orders(n) {
            assert!(frame_valid(&fr, &lob));
        }
    }
    // A reflexive point refutes it.
    let loop1 = Frame::from_fn(1, |_, _| true);
    assert!(!frame_valid(&loop1, &lob));
}

#[test]
fn pmorphisms_onto_rooted_class_c_frames() {
    for n in 1..=6 {
        for fr in enumerate_frames(n, FrameClass::C) {
            let (_, pm) = build_pmorphism_from_g1(&fr, 0).unwrap();
            assert!(pm.is_valid() && pm.is_surjective());
            assert_eq!(pm.target.len(), n);
        }
    }
}
