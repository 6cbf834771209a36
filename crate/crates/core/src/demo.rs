//! A recursively defined parity circuit over a bundle of bits.
//!
//! The bundle of `n ≥ 1` bits is the right-nested object `B ⊗ (B ⊗ … B)`.
//! `parity(0) : [] → [B]` is the constant `zero`; `parity(n)` splits one bit
//! off the bundle, computes the parity of the rest and combines with `xor`.

use crate::strict::MorD;
use crate::terms::{MorC, ObjC, Signature};

pub fn parity_signature() -> Signature {
    let b = ObjC::base("B");
    let mut sig = Signature::new();
    sig.add_base("B").expect("fresh");
    sig.add_generator("xor", ObjC::tensor(b.clone(), b.clone()), b.clone())
        .expect("fresh");
    sig.add_generator("zero", ObjC::Unit, b).expect("fresh");
    sig
}

/// `B^n`, right-nested; `B^0 = I`.
pub fn bundle(n: usize) -> ObjC {
    let b = ObjC::base("B");
    match n {
        0 => ObjC::Unit,
        1 => b,
        _ => ObjC::tensor(b, bundle(n - 1)),
    }
}

fn bit() -> MorD {
    MorD::id(vec![ObjC::base("B")])
}

/// `parity(n) : [bundle(n)] → [B]`, except `parity(0) : [] → [B]`.
pub fn parity(n: usize) -> MorD {
    let b = ObjC::base("B");
    let combine = [MorD::Pack(b.clone(), b.clone()), MorD::Lift(MorC::gen("xor"))];
    match n {
        0 => MorD::comp(MorD::UnitIntro, MorD::Lift(MorC::gen("zero"))),
        1 => MorD::seq(
            std::iter::once(MorD::tensor(bit(), parity(0))).chain(combine),
        )
        .expect("non-empty"),
        _ => MorD::seq(
            [
                MorD::Unpack(b, bundle(n - 1)),
                MorD::tensor(bit(), parity(n - 1)),
            ]
            .into_iter()
            .chain(combine),
        )
        .expect("non-empty"),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::strict::{seq_normal_form, typecheck_d, ObjD};

    #[test]
    fn types() {
        let sig = parity_signature();
        assert_eq!(
            typecheck_d(&parity(0), &sig).unwrap(),
            (ObjD::empty(), ObjD::wire(ObjC::base("B")))
        );
        for n in 1..6 {
            assert_eq!(
                typecheck_d(&parity(n), &sig).unwrap(),
                (ObjD::wire(bundle(n)), ObjD::wire(ObjC::base("B")))
            );
        }
    }

    #[test]
    fn counts_for_three_bits() {
        let t = parity(3);
        let xors = t.lifts().iter().filter(|m| **m == &MorC::gen("xor")).count();
        assert_eq!(xors, 3);
        let nf = seq_normal_form(&t, &parity_signature()).unwrap();
        let unpacks = nf
            .slices
            .iter()
            .filter(|s| matches!(s.gen, crate::strict::SliceGen::Unpack(..)))
            .count();
        assert_eq!(unpacks, 2);
    }

    #[test]
    fn slice_counts() {
        let sig = parity_signature();
        for n in 0..7 {
            let expect = match n {
                0 => 2,
                1 => 4,
                _ => 4 + 3 * (n - 1),
            };
            assert_eq!(seq_normal_form(&parity(n), &sig).unwrap().slices.len(), expect);
        }
    }
}
