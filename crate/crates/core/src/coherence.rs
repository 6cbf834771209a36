//! Packing, canonical arrows and equality decisions.
//!
//! Adapter-only morphisms between two strict objects exist exactly when the
//! objects have the same flattening, and are then unique. `canonical_d`
//! returns the reduced representative, so `canonical_d(X, X) = idD X`.

use std::fmt;

use crate::error::{Error, Result};
use crate::functors::{nonstrictify, strictify_expand};
use crate::model::{extensional_equal, FinModel};
use crate::rewrite::{cancel_all, normalize_adapters};
use crate::strict::{invert_d, seq_normal_form, typecheck_d, MorD, ObjD, SeqNF, Slice};
use crate::terms::{typecheck_c, MorC, ObjC, Signature};

fn pack_wire(a: &ObjC) -> MorD {
    match a {
        ObjC::Unit => MorD::UnitIntro,
        ObjC::Base(_) => MorD::id(vec![a.clone()]),
        ObjC::Tensor(l, r) => MorD::comp(
            MorD::tensor(pack_wire(l), pack_wire(r)),
            MorD::Pack((**l).clone(), (**r).clone()),
        ),
    }
}

/// From the flattened base wires of `x` to `x`.
pub fn pack_obj(x: &ObjD) -> MorD {
    x.wires()
        .iter()
        .map(pack_wire)
        .reduce(MorD::tensor)
        .unwrap_or_else(|| MorD::Id(ObjD::empty()))
}

/// From `x` to its flattened base wires.
pub fn unpack_obj(x: &ObjD) -> MorD {
    invert_d(&pack_obj(x)).expect("packing is adapter-only")
}

fn adapter_slices(t: &MorD, dom: &ObjD) -> SeqNF {
    let mut sig = Signature::new();
    for name in dom.flatten() {
        let _ = sig.add_base(name);
    }
    seq_normal_form(t, &sig).expect("packing terms typecheck over their own bases")
}

fn check_flattening(x: &ObjD, y: &ObjD) -> Result<()> {
    if x.flatten() == y.flatten() {
        Ok(())
    } else {
        Err(Error::FlatteningMismatch {
            dom: x.to_string(),
            cod: y.to_string(),
        })
    }
}

/// Reduced slices of `unpack(x) ; pack(y)`.
pub fn nf_slices(x: &ObjD, y: &ObjD) -> Result<SeqNF> {
    check_flattening(x, y)?;
    let flat = ObjD::of_bases(&x.flatten());
    let unpack = adapter_slices(&pack_obj(x), &flat);
    let pack = adapter_slices(&pack_obj(y), &flat);
    let mut slices: Vec<Slice> = unpack
        .slices
        .iter()
        .rev()
        .map(|s| {
            let inv = s.gen.adapter_inverse().expect("adapter slice");
            Slice::new(s.left.clone(), inv, s.right.clone())
        })
        .collect();
    slices.extend(pack.slices);
    cancel_all(&mut slices);
    Ok(SeqNF {
        dom: x.clone(),
        slices,
    })
}

/// The canonical arrow `x → y` in reduced form.
pub fn canonical_d(x: &ObjD, y: &ObjD) -> Result<MorD> {
    Ok(nf_slices(x, y)?.recompose())
}

/// `unpack(x) ; pack(y)` as written, without reduction.
pub fn canonical_unreduced(x: &ObjD, y: &ObjD) -> Result<MorD> {
    check_flattening(x, y)?;
    Ok(MorD::comp(unpack_obj(x), pack_obj(y)))
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum EqVerdict {
    Equal(String),
    NotEqual(String),
    Unknown,
}

impl EqVerdict {
    pub fn is_equal(&self) -> bool {
        matches!(self, EqVerdict::Equal(_))
    }
}

impl fmt::Display for EqVerdict {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            EqVerdict::Equal(why) => write!(f, "Equal ({why})"),
            EqVerdict::NotEqual(why) => write!(f, "NotEqual ({why})"),
            EqVerdict::Unknown => f.write_str("Unknown"),
        }
    }
}

/// Sound equality decision. Structural parallel pairs are equal by
/// coherence; terms with generators are compared by normal form and, when a
/// model is given, by exhaustive evaluation in that model.
pub fn equal_structural(
    f: &MorC,
    g: &MorC,
    sig: &Signature,
    model: Option<&FinModel>,
) -> Result<EqVerdict> {
    let tf = typecheck_c(f, sig)?;
    let tg = typecheck_c(g, sig)?;
    if tf != tg {
        return Ok(EqVerdict::NotEqual(format!(
            "types differ: {} -> {} versus {} -> {}",
            tf.0, tf.1, tg.0, tg.1
        )));
    }
    if f.is_structural() && g.is_structural() {
        return Ok(EqVerdict::Equal("coherence".into()));
    }
    if f == g {
        return Ok(EqVerdict::Equal("syntactically identical".into()));
    }
    let nf = normalize_adapters(&strictify_expand(f, sig)?, sig)?;
    let ng = normalize_adapters(&strictify_expand(g, sig)?, sig)?;
    if nf == ng {
        return Ok(EqVerdict::Equal("identical normal forms".into()));
    }
    if let Some(m) = model {
        let same = extensional_equal(&m.eval_mor(f)?, &m.eval_mor(g)?)?;
        return Ok(if same {
            EqVerdict::Equal("equal in the supplied model".into())
        } else {
            EqVerdict::NotEqual("distinguished by the supplied model".into())
        });
    }
    Ok(EqVerdict::Unknown)
}

/// Replaces placeholder leaves of the object annotations in a structural
/// term, the `i`-th leaf of the domain by `fill[i]`.
fn substitute_mor(m: &MorC, fill: &[ObjC], sig: &Signature) -> Result<MorC> {
    let sub = |a: &ObjC, at: usize| -> Result<(ObjC, usize)> {
        let n = a.objsize();
        let slot = fill.get(at..at + n).ok_or(Error::ArityMismatch {
            expected: at + n,
            found: fill.len(),
        })?;
        Ok((a.substitute(slot)?, at + n))
    };
    Ok(match m {
        MorC::Id(a) => MorC::Id(sub(a, 0)?.0),
        MorC::Gen(n) => {
            return Err(Error::Precondition(format!(
                "generator `{n}` in a structural term"
            )))
        }
        MorC::Comp(f, g) => MorC::comp(substitute_mor(f, fill, sig)?, substitute_mor(g, fill, sig)?),
        MorC::Tensor(f, g) => {
            let k = typecheck_c(f, sig)?.0.objsize();
            MorC::tensor(
                substitute_mor(f, &fill[..k], sig)?,
                substitute_mor(g, &fill[k..], sig)?,
            )
        }
        MorC::Assoc(a, b, c) | MorC::AssocInv(a, b, c) => {
            let (a2, i) = sub(a, 0)?;
            let (b2, j) = sub(b, i)?;
            let (c2, _) = sub(c, j)?;
            if matches!(m, MorC::Assoc(..)) {
                MorC::Assoc(a2, b2, c2)
            } else {
                MorC::AssocInv(a2, b2, c2)
            }
        }
        MorC::UnitL(a) => MorC::UnitL(sub(a, 0)?.0),
        MorC::UnitLInv(a) => MorC::UnitLInv(sub(a, 0)?.0),
        MorC::UnitR(a) => MorC::UnitR(sub(a, 0)?.0),
        MorC::UnitRInv(a) => MorC::UnitRInv(sub(a, 0)?.0),
    })
}

/// The canonical structural map between two bracketing shapes, instantiated
/// at `fill`. Every base leaf of a shape is a placeholder.
pub fn canonical_nat_iso(shape_a: &ObjC, shape_b: &ObjC, fill: &[ObjC]) -> Result<MorC> {
    for shape in [shape_a, shape_b] {
        if shape.objsize() != fill.len() {
            return Err(Error::ArityMismatch {
                expected: shape.objsize(),
                found: fill.len(),
            });
        }
    }
    let mut sig = Signature::new();
    for name in shape_a.base_names().into_iter().chain(shape_b.base_names()) {
        if !sig.has_base(&name) {
            sig.add_base(name)?;
        }
    }
    let k = canonical_d(&ObjD::wire(shape_a.clone()), &ObjD::wire(shape_b.clone()))?;
    let m = nonstrictify(&k, &sig)?;
    substitute_mor(&m, fill, &sig)
}

/// `F(G(f)) = f` for a structural strict term between single wires, compared
/// after normalization.
pub fn fg_singleton_check(f: &MorD, sig: &Signature) -> Result<bool> {
    let (dom, cod) = typecheck_d(f, sig)?;
    if dom.len() != 1 || cod.len() != 1 {
        return Err(Error::Precondition(format!(
            "endpoints must be single wires, found {dom} -> {cod}"
        )));
    }
    if !f.is_structural() {
        return Err(Error::Precondition("term contains a generator".into()));
    }
    let back = strictify_expand(&nonstrictify(f, sig)?, sig)?;
    Ok(normalize_adapters(&back, sig)? == normalize_adapters(f, sig)?)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn w() -> ObjC {
        ObjC::base("W")
    }

    fn ww() -> ObjC {
        ObjC::tensor(w(), w())
    }

    #[test]
    fn pack_cases() {
        assert_eq!(pack_obj(&ObjD::wire(ObjC::Unit)), MorD::UnitIntro);
        assert_eq!(pack_obj(&ObjD::wire(w())), MorD::id(vec![w()]));
        assert_eq!(
            pack_obj(&ObjD::wire(ww())),
            MorD::comp(
                MorD::tensor(MorD::id(vec![w()]), MorD::id(vec![w()])),
                MorD::Pack(w(), w())
            )
        );
        assert_eq!(pack_obj(&ObjD::empty()), MorD::Id(ObjD::empty()));
    }

    #[test]
    fn unpack_cases() {
        assert_eq!(unpack_obj(&ObjD::wire(ObjC::Unit)), MorD::UnitElim);
        assert_eq!(unpack_obj(&ObjD::empty()), MorD::Id(ObjD::empty()));
        assert_eq!(
            unpack_obj(&ObjD::wire(ww())),
            MorD::comp(
                MorD::Unpack(w(), w()),
                MorD::tensor(MorD::id(vec![w()]), MorD::id(vec![w()]))
            )
        );
    }

    #[test]
    fn pack_domain_is_flattened() {
        let sig = Signature::catw();
        let x = ObjD(vec![ObjC::tensor(w(), ObjC::tensor(ObjC::Unit, w())), ObjC::Unit, w()]);
        let (d, c) = typecheck_d(&pack_obj(&x), &sig).unwrap();
        assert_eq!(d, ObjD::of_bases(&x.flatten()));
        assert_eq!(c, x);
    }

    #[test]
    fn canonical_special_cases() {
        let x = ObjD(vec![ww(), ObjC::Unit]);
        assert_eq!(canonical_d(&x, &x).unwrap(), MorD::Id(x.clone()));
        assert_eq!(
            canonical_d(&ObjD::empty(), &ObjD::wire(ObjC::Unit)).unwrap(),
            MorD::UnitIntro
        );
        assert!(matches!(
            canonical_d(&ObjD::wire(w()), &ObjD::empty()),
            Err(Error::FlatteningMismatch { .. })
        ));
    }

    #[test]
    fn canonical_types() {
        let sig = Signature::catw();
        let a = ObjD::wire(ObjC::tensor(w(), ObjC::tensor(ObjC::Unit, w())));
        let b = ObjD(vec![ObjC::tensor(w(), ObjC::Unit), w()]);
        for t in [canonical_d(&a, &b).unwrap(), canonical_unreduced(&a, &b).unwrap()] {
            assert_eq!(typecheck_d(&t, &sig).unwrap(), (a.clone(), b.clone()));
            assert!(t.is_adapter_only());
        }
    }

    #[test]
    fn verdicts() {
        let mut sig = Signature::catw();
        sig.add_generator("u", w(), w()).unwrap();
        sig.add_generator("v", w(), w()).unwrap();
        assert!(equal_structural(&MorC::UnitL(ObjC::Unit), &MorC::UnitR(ObjC::Unit), &sig, None)
            .unwrap()
            .is_equal());
        assert!(matches!(
            equal_structural(&MorC::Id(w()), &MorC::Id(ww()), &sig, None).unwrap(),
            EqVerdict::NotEqual(_)
        ));
        assert_eq!(
            equal_structural(&MorC::gen("u"), &MorC::gen("v"), &sig, None).unwrap(),
            EqVerdict::Unknown
        );
        let f = MorC::comp(MorC::gen("u"), MorC::Id(w()));
        assert!(equal_structural(&f, &MorC::gen("u"), &sig, None).unwrap().is_equal());
    }

    #[test]
    fn nat_iso_identity_and_arity() {
        let a = ObjC::base("A");
        assert_eq!(canonical_nat_iso(&w(), &w(), &[a.clone()]).unwrap(), MorC::Id(a.clone()));
        assert!(matches!(
            canonical_nat_iso(&ww(), &ww(), &[a]),
            Err(Error::ArityMismatch { .. })
        ));
    }

    #[test]
    fn fg_on_identity_and_lifted_associator() {
        let sig = Signature::catw();
        let x = ObjC::tensor(w(), ww());
        assert!(fg_singleton_check(&MorD::id(vec![x.clone()]), &sig).unwrap());
        assert!(fg_singleton_check(&MorD::Lift(MorC::Assoc(w(), w(), w())), &sig).unwrap());
        assert!(matches!(
            fg_singleton_check(&MorD::Pack(w(), w()), &sig),
            Err(Error::Precondition(_))
        ));
    }
}
