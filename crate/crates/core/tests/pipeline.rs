use decmin_core::certificate::{certify_face, certify_face_with_anchor, certify_fenchel, verify_certificate};
use decmin_core::generators::{
    gen_base_polyhedron, gen_cube_subset, gen_m2_intersection, random_difference_bounded,
    SubmodularTable,
};
use decmin_core::geometry::{is_hole_free, is_integrally_convex, midpoint_prefilter};
use decmin_core::io::{emit_certificate, emit_instance, parse_certificate, parse_instance};
use decmin_core::structures::m2_form_check;
use decmin_core::{decmin_set, rat, PointSet, PowerPotential};

fn convex_instances() -> Vec<PointSet> {
    let mut out = Vec::new();
    for seed in 0..15u64 {
        for n in 2..=3 {
            out.push(gen_cube_subset(n, &rat(1, 2), seed).unwrap());
            if let Ok(s) = random_difference_bounded(n, seed) {
                out.push(s);
            }
            if let Ok(s) = gen_base_polyhedron(&SubmodularTable::random(n, seed).unwrap()) {
                out.push(s);
            }
        }
    }
    out.retain(|s| is_integrally_convex(s).unwrap().verdict);
    out
}

#[test]
fn anchor_choice_does_not_change_verification() {
    for s in convex_instances() {
        let pot = PowerPotential::default_for(s.dim());
        for anchor in &decmin_set(&s).unwrap() {
            let c = certify_face_with_anchor(&s, &pot, anchor).unwrap();
            assert!(verify_certificate(&s, &c).passed(), "{s:?} anchored at {anchor}");
        }
    }
}

#[test]
fn certificates_survive_json_round_trip() {
    for s in convex_instances() {
        let s2 = parse_instance(&emit_instance(&s)).unwrap();
        assert_eq!(s2, s);
        let pot = PowerPotential::default_for(s.dim());
        for c in [certify_face(&s, &pot).unwrap(), certify_fenchel(&s, &pot).unwrap()] {
            let text = emit_certificate(&c);
            let back = parse_certificate(&text).unwrap();
            assert_eq!(back, c);
            assert_eq!(emit_certificate(&back), text);
            assert!(verify_certificate(&s2, &back).passed());
        }
    }
}

#[test]
fn convex_generator_outputs_are_hole_free() {
    for s in convex_instances() {
        assert!(is_hole_free(&s).unwrap().hole_free, "{s:?}");
    }
}

#[test]
fn m2_instances_have_unit_cube_form() {
    let mut checked = 0;
    for seed in 0..200u64 {
        let n = 2 + (seed % 3) as usize;
        let f1 = SubmodularTable::random(n, seed).unwrap();
        let f2 = SubmodularTable::random(n, seed + 10_000).unwrap();
        let Ok(inst) = gen_m2_intersection(&f1, &f2) else { continue };
        let form = m2_form_check(&inst.set, &inst.parents[0], &inst.parents[1]).unwrap();
        assert!(form.consistent, "seed {seed}");
        checked += 1;
    }
    assert!(checked >= 10, "only {checked} nonempty intersections");
}

#[test]
fn larger_cube_subsets_pass_prefilter() {
    for seed in 0..10u64 {
        for n in 5..=6 {
            let s = gen_cube_subset(n, &rat(1, 4), seed).unwrap();
            assert!(midpoint_prefilter(&s).unwrap().pass);
        }
    }
}
