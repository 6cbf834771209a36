//! Translations between the non-strict and the strict category.
//!
//! `F` sends `f` to `lift(f)` (shallow) or to an adapter composite with lifts
//! only around generators (expanded). `G` reads a strict term back through
//! its slices; on objects `G([]) = I`, `G([A]) = A`, `G([A]·R) = A ⊗ G(R)`.

use crate::error::Result;
use crate::rewrite::expand_lifts;
use crate::strict::{invert_d, seq_normal_form, MorD, ObjD, Slice, SliceGen};
use crate::terms::{typecheck_c, MorC, ObjC, Signature};

pub fn strictify_shallow(f: &MorC, sig: &Signature) -> Result<MorD> {
    typecheck_c(f, sig)?;
    Ok(MorD::Lift(f.clone()))
}

/// Lifts remain only around generators.
pub fn strictify_expand(f: &MorC, sig: &Signature) -> Result<MorD> {
    typecheck_c(f, sig)?;
    expand_lifts(&MorD::Lift(f.clone()), sig)
}

pub fn g_obj(x: &ObjD) -> ObjC {
    match x.wires() {
        [] => ObjC::Unit,
        [a] => a.clone(),
        [a, rest @ ..] => ObjC::tensor(a.clone(), g_obj(&ObjD(rest.to_vec()))),
    }
}

/// `G` on one slice `id_L • gen • id_R`.
pub fn g_slice(s: &Slice) -> MorC {
    let left = s.left.wires();
    match left {
        [] if s.right.is_empty() => match &s.gen {
            SliceGen::Lift { mor, .. } => mor.clone(),
            SliceGen::Pack(a, b) | SliceGen::Unpack(a, b) => {
                MorC::Id(ObjC::tensor(a.clone(), b.clone()))
            }
            SliceGen::UnitIntro | SliceGen::UnitElim => MorC::Id(ObjC::Unit),
        },
        [] => {
            let y = g_obj(&s.right);
            match &s.gen {
                SliceGen::Lift { mor, .. } => MorC::tensor(mor.clone(), MorC::Id(y)),
                SliceGen::Pack(a, b) => MorC::Assoc(a.clone(), b.clone(), y),
                SliceGen::Unpack(a, b) => MorC::AssocInv(a.clone(), b.clone(), y),
                SliceGen::UnitIntro => MorC::UnitLInv(y),
                SliceGen::UnitElim => MorC::UnitL(y),
            }
        }
        [a] if s.right.is_empty() => {
            let ida = MorC::Id(a.clone());
            match &s.gen {
                SliceGen::Lift { mor, .. } => MorC::tensor(ida, mor.clone()),
                SliceGen::Pack(b, c) | SliceGen::Unpack(b, c) => MorC::tensor(
                    ida,
                    MorC::tensor(MorC::Id(b.clone()), MorC::Id(c.clone())),
                ),
                SliceGen::UnitIntro => MorC::UnitRInv(a.clone()),
                SliceGen::UnitElim => MorC::UnitR(a.clone()),
            }
        }
        [a, rest @ ..] => MorC::tensor(
            MorC::Id(a.clone()),
            g_slice(&Slice::new(
                ObjD(rest.to_vec()),
                s.gen.clone(),
                s.right.clone(),
            )),
        ),
    }
}

/// `G` on morphisms: slice images composed left to right. A single slice is
/// returned as is, so `G(lift(f)) = f` exactly.
pub fn nonstrictify(t: &MorD, sig: &Signature) -> Result<MorC> {
    let nf = seq_normal_form(t, sig)?;
    Ok(MorC::seq(nf.slices.iter().map(g_slice)).unwrap_or_else(|| MorC::Id(g_obj(&nf.dom))))
}

/// `Ψ_{X,Y} : G(X) ⊗ G(Y) → G(X·Y)`.
pub fn psi_big(x: &ObjD, y: &ObjD) -> MorC {
    match (x.wires(), y.wires()) {
        ([], []) => MorC::UnitL(ObjC::Unit),
        (_, []) => MorC::UnitR(g_obj(x)),
        ([], _) => MorC::UnitL(g_obj(y)),
        ([a], _) => MorC::Id(ObjC::tensor(a.clone(), g_obj(y))),
        ([a, rest @ ..], _) => {
            let rest = ObjD(rest.to_vec());
            MorC::comp(
                MorC::AssocInv(a.clone(), g_obj(&rest), g_obj(y)),
                MorC::tensor(MorC::Id(a.clone()), psi_big(&rest, y)),
            )
        }
    }
}

/// `ψ : I → G([])`.
pub fn psi_small() -> MorC {
    MorC::Id(ObjC::Unit)
}

/// `ε_X : F(G(X)) → X`, i.e. `[G(X)] → X`.
pub fn epsilon(x: &ObjD) -> MorD {
    match x.wires() {
        [] => MorD::UnitElim,
        [a] => MorD::id(vec![a.clone()]),
        [a, rest @ ..] => {
            let rest = ObjD(rest.to_vec());
            MorD::comp(
                MorD::Unpack(a.clone(), g_obj(&rest)),
                MorD::tensor(MorD::id(vec![a.clone()]), epsilon(&rest)),
            )
        }
    }
}

pub fn epsilon_inv(x: &ObjD) -> MorD {
    invert_d(&epsilon(x)).expect("epsilon is adapter-only")
}

/// `η_A : A → G(F(A))`, the identity.
pub fn eta(a: &ObjC) -> MorC {
    MorC::Id(a.clone())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::strict::typecheck_d;

    fn sig() -> Signature {
        let mut s = Signature::new();
        for n in ["A", "B", "C"] {
            s.add_base(n).unwrap();
        }
        s.add_generator("f", ObjC::base("A"), ObjC::base("B")).unwrap();
        s
    }

    fn o(n: &str) -> ObjC {
        ObjC::base(n)
    }

    #[test]
    fn g_of_lift_is_the_term() {
        let f = MorC::comp(MorC::gen("f"), MorC::Id(o("B")));
        assert_eq!(nonstrictify(&MorD::Lift(f.clone()), &sig()).unwrap(), f);
    }

    #[test]
    fn pack_with_trailing_wires_is_an_associator() {
        let t = MorD::tensor(MorD::Pack(o("A"), o("B")), MorD::id(vec![o("C")]));
        assert_eq!(
            nonstrictify(&t, &sig()).unwrap(),
            MorC::Assoc(o("A"), o("B"), o("C"))
        );
    }

    #[test]
    fn unit_after_a_wire_is_right_unitor_inverse() {
        let t = MorD::tensor(MorD::id(vec![o("A")]), MorD::UnitIntro);
        assert_eq!(nonstrictify(&t, &sig()).unwrap(), MorC::UnitRInv(o("A")));
    }

    #[test]
    fn face_value_reading_of_pack_after_a_wire_typechecks() {
        let s = sig();
        let t = MorD::tensor(MorD::id(vec![o("A")]), MorD::Pack(o("B"), o("C")));
        let g = nonstrictify(&t, &s).unwrap();
        let bc = ObjC::tensor(o("B"), o("C"));
        let abc = ObjC::tensor(o("A"), bc.clone());
        assert_eq!(typecheck_c(&g, &s).unwrap(), (abc.clone(), abc.clone()));
        // The left-bracketed alternative has the wrong type.
        let alt = MorC::tensor(MorC::tensor(MorC::Id(o("A")), MorC::Id(o("B"))), MorC::Id(o("C")));
        assert_ne!(typecheck_c(&alt, &s).unwrap().0, abc);
    }

    #[test]
    fn identity_maps_to_identity_of_g() {
        let x = ObjD(vec![o("A"), o("B")]);
        assert_eq!(
            nonstrictify(&MorD::Id(x), &sig()).unwrap(),
            MorC::Id(ObjC::tensor(o("A"), o("B")))
        );
    }

    #[test]
    fn psi_cases() {
        let a = ObjD::wire(o("A"));
        let y = ObjD(vec![o("B"), o("C")]);
        assert_eq!(psi_big(&ObjD::empty(), &ObjD::empty()), MorC::UnitL(ObjC::Unit));
        assert_eq!(psi_big(&a, &y), MorC::Id(ObjC::tensor(o("A"), g_obj(&y))));
        assert_eq!(psi_big(&y, &ObjD::empty()), MorC::UnitR(g_obj(&y)));
        assert_eq!(psi_small(), MorC::Id(ObjC::Unit));
    }

    #[test]
    fn psi_is_well_typed() {
        let s = sig();
        let objs = [
            ObjD::empty(),
            ObjD::wire(o("A")),
            ObjD(vec![o("A"), ObjC::Unit]),
            ObjD(vec![o("B"), o("A"), o("C")]),
        ];
        for x in &objs {
            for y in &objs {
                let p = psi_big(x, y);
                let expect = (
                    ObjC::tensor(g_obj(x), g_obj(y)),
                    g_obj(&x.concat(y)),
                );
                assert_eq!(typecheck_c(&p, &s).unwrap(), expect, "{x} {y}");
            }
        }
    }

    #[test]
    fn epsilon_cases() {
        let s = sig();
        assert_eq!(epsilon(&ObjD::empty()), MorD::UnitElim);
        assert_eq!(epsilon(&ObjD::wire(o("A"))), MorD::id(vec![o("A")]));
        let ab = ObjD(vec![o("A"), o("B")]);
        assert_eq!(
            epsilon(&ab),
            MorD::comp(
                MorD::Unpack(o("A"), o("B")),
                MorD::tensor(MorD::id(vec![o("A")]), MorD::id(vec![o("B")]))
            )
        );
        let x = ObjD(vec![o("A"), ObjC::Unit, o("C")]);
        assert_eq!(
            typecheck_d(&epsilon(&x), &s).unwrap(),
            (ObjD::wire(g_obj(&x)), x)
        );
    }

    #[test]
    fn expanded_strictification_keeps_lifts_on_generators_only() {
        let s = sig();
        let f = MorC::comp(
            MorC::UnitLInv(o("A")),
            MorC::tensor(MorC::Id(ObjC::Unit), MorC::gen("f")),
        );
        let t = strictify_expand(&f, &s).unwrap();
        assert!(t.lifts().iter().all(|m| matches!(m, MorC::Gen(_))));
        assert_eq!(
            typecheck_d(&t, &s).unwrap(),
            (ObjD::wire(o("A")), ObjD::wire(ObjC::tensor(ObjC::Unit, o("B"))))
        );
        assert_eq!(
            strictify_expand(&MorC::Id(ObjC::Unit), &s).unwrap(),
            MorD::id(vec![ObjC::Unit])
        );
    }
}
