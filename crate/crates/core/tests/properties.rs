//! Property tests across modules. Formulas come from the seeded generator;
//! proptest supplies the seeds.

use proptest::prelude::*;

use provlog_core::formula::{parse_formula, Formula, FragmentTag, Syntax};
use provlog_core::generate::{FormulaGen, GenConfig};
use provlog_core::glprover::{
    decide_fgl, decide_gl, decide_gl3, decide_gl4, decide_gl_closed, eval_gn, normal_form,
};
use provlog_core::ignatiev::{in_universe, rel_n, root_point, TruncatedUniverse};
use provlog_core::interp::translate_tr;
use provlog_core::kripke::{build_pmorphism_from_g1, enumerate_frames, FrameClass, Model};
use provlog_core::Ordinal;

fn gl(seed: u64, vars: usize, depth: usize) -> Formula {
    FormulaGen::new(GenConfig::gl(vars, depth), seed).gl()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(200))]

    #[test]
    fn print_parse_round_trip(seed in any::<u64>()) {
        let f = gl(seed, 3, 3);
        prop_assert_eq!(parse_formula(&f.to_string()).unwrap(), f);
    }

    #[test]
    fn theoremhood_is_monotone(seed in any::<u64>()) {
        let f = FormulaGen::new(GenConfig::gl(2, 2).with_boxes(3), seed).gl();
        let g = decide_gl(&f).unwrap().is_provable();
        let g4 = decide_gl4(&f).unwrap().is_provable();
        let g3 = decide_gl3(&f).unwrap().is_provable();
        prop_assert!(!g || g4, "GL proves {} but GL.4 does not", f);
        prop_assert!(!g4 || g3, "GL.4 proves {} but GL.3 does not", f);
    }

    #[test]
    fn refutations_check_out(seed in any::<u64>()) {
        let f = gl(seed, 2, 3);
        for v in [decide_gl(&f).unwrap(), decide_gl3(&f).unwrap(), decide_gl4(&f).unwrap()] {
            if let Some((m, w)) = v.countermodel() {
                prop_assert!(!m.check(w, &f).unwrap());
            }
        }
    }

    #[test]
    fn closed_formulas_agree_across_logics(seed in any::<u64>()) {
        let f = FormulaGen::new(GenConfig::closed(3), seed).gl();
        let c = decide_gl_closed(&f).unwrap().is_provable();
        prop_assert_eq!(decide_gl(&f).unwrap().is_provable(), c);
        prop_assert_eq!(decide_gl3(&f).unwrap().is_provable(), c);
    }

    #[test]
    fn constants_stabilize_and_normalize(seed in any::<u64>(), n in 1u32..=2) {
        let f = FormulaGen::new(GenConfig::constants(n, 3), seed).gl();
        prop_assert!(f.in_fragment(FragmentTag::Fn(n)));
        let d = f.modal_depth();
        let nf = normal_form(n, &f).unwrap();
        for i in 0..1u32 << n {
            let base = eval_gn(n, d, i, &f).unwrap();
            for m in 0..=d + 4 {
                let t = eval_gn(n, m, i, &f).unwrap();
                if m >= d {
                    prop_assert_eq!(t, base);
                }
                prop_assert_eq!(nf.holds(m, i), t);
            }
        }
    }

    #[test]
    fn boxed_theorems_unbox(seed in any::<u64>()) {
        let f = FormulaGen::new(GenConfig::constants(1, 3), seed).gl();
        if decide_fgl(1, &Formula::boxed(f.clone())).unwrap().is_provable() {
            prop_assert!(decide_fgl(1, &f).unwrap().is_provable());
        }
    }

    #[test]
    fn pmorphisms_transfer_truth(seed in any::<u64>(), size in 1usize..=6, pick in any::<prop::sample::Index>(), vbits in any::<u64>()) {
        let frames = enumerate_frames(size, FrameClass::C);
        let target = &frames[pick.index(frames.len())];
        let (_, pm) = build_pmorphism_from_g1(target, 0).unwrap();
        let f = gl(seed, 2, 3);
        let mut m = Model::new(pm.target.clone());
        for (k, v) in ["p", "q"].iter().enumerate() {
            m.set(provlog_core::Atom::from_name(v), (0..size).filter(|w| (vbits >> (k * size + w)) & 1 == 1));
        }
        let pulled = m.pull_back(pm.source.clone(), &pm.map);
        let t = m.truth_set(&f).unwrap();
        let s = pulled.truth_set(&f).unwrap();
        for (k, &img) in pm.map.iter().enumerate() {
            prop_assert_eq!(s[k], t[img]);
        }
    }

    #[test]
    fn tr_depth_bounded(seed in any::<u64>()) {
        let f = FormulaGen::new(GenConfig::il(2, 4), seed).il();
        prop_assert!(translate_tr(&f).unwrap().modal_depth() <= f.modal_depth());
    }
}

#[test]
fn root_points_are_points() {
    for a in Ordinal::all_up_to_size(5) {
        let r = root_point(&a);
        assert!(in_universe(r.coords()), "{r}");
    }
}

#[test]
fn truncation_relations_are_strict_orders() {
    let tu = TruncatedUniverse::new(4, 2).unwrap();
    let pts = tu.points();
    for n in 0..=2 {
        for a in pts {
            assert!(!rel_n(n, a, a));
            for b in pts.iter().filter(|b| rel_n(n, a, b)) {
                for c in pts.iter().filter(|c| rel_n(n, b, c)) {
                    assert!(rel_n(n, a, c));
                }
            }
        }
    }
}
