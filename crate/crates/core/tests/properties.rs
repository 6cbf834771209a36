use proptest::prelude::*;

use strictify_core::{
    apply_rules, canonical_d, equal_structural, extensional_equal, epsilon, epsilon_inv, g_obj,
    invert_d, nonstrictify, normalize_adapters, parse_mor_c, parse_mor_d, seq_normal_form,
    strictify_expand, strictify_shallow, typecheck_c, typecheck_d, FinModel, MorC, MorD, ObjC,
    ObjD, RuleSet, Signature, TermGen,
};

fn sig() -> Signature {
    let mut s = Signature::new();
    s.add_base("A").unwrap();
    s.add_base("B").unwrap();
    s.add_generator("f", ObjC::base("A"), ObjC::base("B")).unwrap();
    s.add_generator(
        "m",
        ObjC::tensor(ObjC::base("A"), ObjC::base("A")),
        ObjC::base("A"),
    )
    .unwrap();
    s.add_generator("u", ObjC::Unit, ObjC::base("B")).unwrap();
    s
}

fn same_c(model: &FinModel, f: &MorC, g: &MorC) -> bool {
    extensional_equal(&model.eval_mor(f).unwrap(), &model.eval_mor(g).unwrap()).unwrap()
}

fn same_d(model: &FinModel, s: &MorD, t: &MorD) -> bool {
    extensional_equal(&model.eval_mor_d(s).unwrap(), &model.eval_mor_d(t).unwrap()).unwrap()
}

/// Random strict term over a small signature, seeded for shrinking.
fn strict_term(seed: u64, lifts: bool) -> (Signature, MorD) {
    let sig = sig();
    let t = {
        let mut gen = TermGen::new(&sig, seed);
        gen.obj_depth = 2;
        gen.max_wires = 3;
        let dom = gen.random_obj_d(3);
        gen.random_mor_d(&dom, 4, lifts)
    };
    (sig, t)
}

/// Left-to-right tree traversal that stops at every leaf.
fn leaves_in_order(a: &ObjC, out: &mut Vec<String>) {
    match a {
        ObjC::Unit => {}
        ObjC::Base(n) => out.push(n.clone()),
        ObjC::Tensor(l, r) => {
            leaves_in_order(l, out);
            leaves_in_order(r, out);
        }
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(128))]

    #[test]
    fn substitution_concatenates_flattenings(seed in any::<u64>()) {
        let sig = sig();
        let mut gen = TermGen::new(&sig, seed);
        let shape = gen.random_obj(3);
        let fill: Vec<ObjC> = (0..shape.objsize()).map(|_| gen.random_obj(2)).collect();
        let filled = shape.substitute(&fill).unwrap();
        let mut expect = Vec::new();
        for x in &fill {
            leaves_in_order(x, &mut expect);
        }
        prop_assert_eq!(filled.flatten(), expect);
    }

    #[test]
    fn structural_morphisms_preserve_flattening(seed in any::<u64>()) {
        let sig = sig();
        let mut gen = TermGen::new(&sig, seed);
        gen.allow_gens = false;
        let f = gen.random_mor(5);
        prop_assert!(f.is_structural());
        let (a, b) = typecheck_c(&f, &sig).unwrap();
        prop_assert_eq!(a.flatten(), b.flatten());
    }

    #[test]
    fn nonstrictify_inverts_strictify(seed in any::<u64>()) {
        let sig = sig();
        let mut gen = TermGen::new(&sig, seed);
        let f = gen.random_mor(5);
        let t = strictify_shallow(&f, &sig).unwrap();
        prop_assert_eq!(nonstrictify(&t, &sig).unwrap(), f);
    }

    #[test]
    fn expansion_agrees_with_shallow_translation(seed in any::<u64>()) {
        let sig = sig();
        let model = FinModel::uniform(&sig, 2, seed).unwrap();
        let mut gen = TermGen::new(&sig, seed);
        gen.obj_depth = 2;
        let f = gen.random_mor(4);
        let deep = strictify_expand(&f, &sig).unwrap();
        prop_assert!(deep.lifts().iter().all(|m| matches!(m, MorC::Gen(_))));
        prop_assert!(same_d(&model, &deep, &strictify_shallow(&f, &sig).unwrap()));
    }

    #[test]
    fn rewriting_preserves_type_and_meaning(seed in any::<u64>(), rule in 0usize..4) {
        let (sig, t) = strict_term(seed, true);
        let rules = [
            RuleSet::Functoriality,
            RuleSet::AdapterCancel,
            RuleSet::NaturalitySlide,
            RuleSet::StructuralExpand,
        ][rule];
        let model = FinModel::uniform(&sig, 2, seed).unwrap();
        let out = apply_rules(&t, rules, &sig).unwrap();
        prop_assert_eq!(typecheck_d(&out, &sig).unwrap(), typecheck_d(&t, &sig).unwrap());
        prop_assert!(same_d(&model, &out, &t));
    }

    #[test]
    fn normalization_is_sound_and_idempotent(seed in any::<u64>()) {
        let (sig, t) = strict_term(seed, true);
        let model = FinModel::uniform(&sig, 2, seed).unwrap();
        let n = normalize_adapters(&t, &sig).unwrap();
        prop_assert_eq!(typecheck_d(&n, &sig).unwrap(), typecheck_d(&t, &sig).unwrap());
        prop_assert!(same_d(&model, &n, &t));
        prop_assert_eq!(normalize_adapters(&n, &sig).unwrap(), n);
    }

    #[test]
    fn sequential_normal_form_recomposes(seed in any::<u64>()) {
        let (sig, t) = strict_term(seed, true);
        let model = FinModel::uniform(&sig, 2, seed).unwrap();
        let nf = seq_normal_form(&t, &sig).unwrap();
        nf.check_chain().unwrap();
        prop_assert!(same_d(&model, &nf.recompose(), &t));
    }

    #[test]
    fn epsilon_is_a_bijection(seed in any::<u64>()) {
        let sig = sig();
        let model = FinModel::uniform(&sig, 2, seed).unwrap();
        let mut gen = TermGen::new(&sig, seed);
        gen.obj_depth = 2;
        let x = gen.random_obj_d(4);
        let there = epsilon(&x);
        let back = epsilon_inv(&x);
        let table = model.eval_mor_d(&there).unwrap();
        prop_assert!(table.is_injective());
        let gx = MorD::Id(ObjD::wire(g_obj(&x)));
        prop_assert!(same_d(&model, &MorD::comp(there.clone(), back.clone()), &gx));
        prop_assert_eq!(normalize_adapters(&MorD::comp(there, back), &sig).unwrap(), gx);
        let idx = MorD::Id(x.clone());
        prop_assert_eq!(normalize_adapters(&MorD::comp(epsilon_inv(&x), epsilon(&x)), &sig).unwrap(), idx);
    }

    #[test]
    fn adapter_terms_act_by_leaf_order(seed in any::<u64>(), steps in 0usize..8) {
        let sig = Signature::catw();
        let model = FinModel::uniform(&sig, 2, seed).unwrap();
        let mut gen = TermGen::new(&sig, seed);
        let x = gen.random_obj_d(3);
        let t = gen.adapter_walk(&x, steps);
        let (_, y) = typecheck_d(&t, &sig).unwrap();
        let k = canonical_d(&x, &y).unwrap();
        prop_assert!(same_d(&model, &t, &k));
        prop_assert_eq!(normalize_adapters(&t, &sig).unwrap(), k);
    }

    #[test]
    fn adapter_terms_form_a_groupoid(seed in any::<u64>(), steps in 0usize..8) {
        let sig = Signature::catw();
        let mut gen = TermGen::new(&sig, seed);
        let x = gen.random_obj_d(3);
        let t = gen.adapter_walk(&x, steps);
        let inv = invert_d(&t).unwrap();
        prop_assert_eq!(normalize_adapters(&MorD::comp(t.clone(), inv.clone()), &sig).unwrap(), MorD::Id(x));
        let (_, y) = typecheck_d(&t, &sig).unwrap();
        prop_assert_eq!(normalize_adapters(&MorD::comp(inv, t), &sig).unwrap(), MorD::Id(y));
    }

    #[test]
    fn structural_equality_is_reflexive_and_symmetric(seed in any::<u64>()) {
        let sig = Signature::catw();
        let model = FinModel::uniform(&sig, 2, seed).unwrap();
        let mut gen = TermGen::new(&sig, seed);
        gen.allow_gens = false;
        gen.obj_depth = 2;
        let f = gen.random_mor(3);
        let (a, b) = typecheck_c(&f, &sig).unwrap();
        prop_assert!(equal_structural(&f, &f, &sig, None).unwrap().is_equal());
        let k = canonical_d(&ObjD::wire(a), &ObjD::wire(b)).unwrap();
        let g = nonstrictify(&k, &sig).unwrap();
        let fg = equal_structural(&f, &g, &sig, None).unwrap();
        let gf = equal_structural(&g, &f, &sig, None).unwrap();
        prop_assert!(fg.is_equal() && gf.is_equal());
        prop_assert!(same_c(&model, &f, &g));
    }

    #[test]
    fn printing_round_trips(seed in any::<u64>()) {
        let (_, t) = strict_term(seed, true);
        prop_assert_eq!(parse_mor_d(&t.to_string()).unwrap(), t);
        let sig = sig();
        let mut gen = TermGen::new(&sig, seed);
        let f = gen.random_mor(5);
        prop_assert_eq!(parse_mor_c(&f.to_string()).unwrap(), f);
    }
}
