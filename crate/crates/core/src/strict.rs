//! The strictified category: objects are lists of wires labelled by
//! non-strict objects, morphisms are built from lifted morphisms and the
//! adapters `Pack`, `Unpack`, `UnitIntro`, `UnitElim`.

use crate::error::{Error, Result};
use crate::terms::{typecheck_c, MorC, ObjC, Signature};

/// A list of wire labels. `[]` is the strict unit and differs from `[I]`.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct ObjD(pub Vec<ObjC>);

impl ObjD {
    pub fn empty() -> Self {
        ObjD(Vec::new())
    }

    pub fn wire(a: ObjC) -> Self {
        ObjD(vec![a])
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn wires(&self) -> &[ObjC] {
        &self.0
    }

    /// Strict tensor: concatenation.
    pub fn concat(&self, other: &ObjD) -> ObjD {
        let mut v = self.0.clone();
        v.extend_from_slice(&other.0);
        ObjD(v)
    }

    /// Flattened base names of all wires, in order.
    pub fn flatten(&self) -> Vec<String> {
        self.0.iter().flat_map(ObjC::flatten).collect()
    }

    pub fn objsize(&self) -> usize {
        self.0.iter().map(ObjC::objsize).sum()
    }

    /// One wire per base name.
    pub fn of_bases(names: &[String]) -> ObjD {
        ObjD(names.iter().map(|n| ObjC::base(n.clone())).collect())
    }
}

impl From<Vec<ObjC>> for ObjD {
    fn from(v: Vec<ObjC>) -> Self {
        ObjD(v)
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum MorD {
    Id(ObjD),
    Lift(MorC),
    /// `[A, B] → [A ⊗ B]`
    Pack(ObjC, ObjC),
    /// `[A ⊗ B] → [A, B]`
    Unpack(ObjC, ObjC),
    /// `[] → [I]`
    UnitIntro,
    /// `[I] → []`
    UnitElim,
    Comp(Box<MorD>, Box<MorD>),
    Tensor(Box<MorD>, Box<MorD>),
}

impl MorD {
    pub fn id(wires: impl Into<ObjD>) -> Self {
        MorD::Id(wires.into())
    }

    pub fn comp(f: MorD, g: MorD) -> Self {
        MorD::Comp(Box::new(f), Box::new(g))
    }

    pub fn tensor(f: MorD, g: MorD) -> Self {
        MorD::Tensor(Box::new(f), Box::new(g))
    }

    /// Left-nested composite; an empty sequence is not allowed.
    pub fn seq(parts: impl IntoIterator<Item = MorD>) -> Option<Self> {
        parts.into_iter().reduce(MorD::comp)
    }

    pub fn is_adapter(&self) -> bool {
        matches!(
            self,
            MorD::Pack(..) | MorD::Unpack(..) | MorD::UnitIntro | MorD::UnitElim
        )
    }

    /// Number of `Pack`/`Unpack`/`UnitIntro`/`UnitElim` nodes.
    pub fn adapter_count(&self) -> usize {
        match self {
            MorD::Comp(f, g) | MorD::Tensor(f, g) => f.adapter_count() + g.adapter_count(),
            m if m.is_adapter() => 1,
            _ => 0,
        }
    }

    /// No lifted morphism contains a generator.
    pub fn is_structural(&self) -> bool {
        match self {
            MorD::Lift(f) => f.is_structural(),
            MorD::Comp(f, g) | MorD::Tensor(f, g) => f.is_structural() && g.is_structural(),
            _ => true,
        }
    }

    /// Built from adapters and identities only.
    pub fn is_adapter_only(&self) -> bool {
        match self {
            MorD::Lift(_) => false,
            MorD::Comp(f, g) | MorD::Tensor(f, g) => f.is_adapter_only() && g.is_adapter_only(),
            _ => true,
        }
    }

    pub fn lifts(&self) -> Vec<&MorC> {
        let mut out = Vec::new();
        self.collect_lifts(&mut out);
        out
    }

    fn collect_lifts<'a>(&'a self, out: &mut Vec<&'a MorC>) {
        match self {
            MorD::Lift(f) => out.push(f),
            MorD::Comp(f, g) | MorD::Tensor(f, g) => {
                f.collect_lifts(out);
                g.collect_lifts(out);
            }
            _ => {}
        }
    }
}

/// Derives `(dom, cod)` of a strict term.
pub fn typecheck_d(t: &MorD, sig: &Signature) -> Result<(ObjD, ObjD)> {
    Ok(match t {
        MorD::Id(x) => {
            for w in x.wires() {
                sig.check_obj(w)?;
            }
            (x.clone(), x.clone())
        }
        MorD::Lift(f) => {
            let (a, b) = typecheck_c(f, sig)?;
            (ObjD::wire(a), ObjD::wire(b))
        }
        MorD::Pack(a, b) | MorD::Unpack(a, b) => {
            sig.check_obj(a)?;
            sig.check_obj(b)?;
            let pair = ObjD(vec![a.clone(), b.clone()]);
            let packed = ObjD::wire(ObjC::tensor(a.clone(), b.clone()));
            if matches!(t, MorD::Pack(..)) {
                (pair, packed)
            } else {
                (packed, pair)
            }
        }
        MorD::UnitIntro => (ObjD::empty(), ObjD::wire(ObjC::Unit)),
        MorD::UnitElim => (ObjD::wire(ObjC::Unit), ObjD::empty()),
        MorD::Comp(f, g) => {
            let (a, b) = typecheck_d(f, sig)?;
            let (b2, c) = typecheck_d(g, sig)?;
            if b != b2 {
                return Err(Error::mismatch(format!("composite `{f} ; {g}`"), &b, &b2));
            }
            (a, c)
        }
        MorD::Tensor(f, g) => {
            let (a, b) = typecheck_d(f, sig)?;
            let (c, d) = typecheck_d(g, sig)?;
            (a.concat(&c), b.concat(&d))
        }
    })
}

/// Inverse of a term whose lifts are all structural.
pub fn invert_d(t: &MorD) -> Result<MorD> {
    Ok(match t {
        MorD::Id(x) => MorD::Id(x.clone()),
        MorD::Lift(f) => MorD::Lift(f.invert().map_err(|_| {
            Error::NotInvertible(format!("lift({f}) contains a generator"))
        })?),
        MorD::Pack(a, b) => MorD::Unpack(a.clone(), b.clone()),
        MorD::Unpack(a, b) => MorD::Pack(a.clone(), b.clone()),
        MorD::UnitIntro => MorD::UnitElim,
        MorD::UnitElim => MorD::UnitIntro,
        MorD::Comp(f, g) => MorD::comp(invert_d(g)?, invert_d(f)?),
        MorD::Tensor(f, g) => MorD::tensor(invert_d(f)?, invert_d(g)?),
    })
}

/// The single generator of a slice. A lifted morphism carries its type so
/// slices can be manipulated without the signature.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum SliceGen {
    Lift { mor: MorC, dom: ObjC, cod: ObjC },
    Pack(ObjC, ObjC),
    Unpack(ObjC, ObjC),
    UnitIntro,
    UnitElim,
}

impl SliceGen {
    pub fn lift(mor: MorC, sig: &Signature) -> Result<Self> {
        let (dom, cod) = typecheck_c(&mor, sig)?;
        Ok(SliceGen::Lift { mor, dom, cod })
    }

    pub fn dom(&self) -> ObjD {
        match self {
            SliceGen::Lift { dom, .. } => ObjD::wire(dom.clone()),
            SliceGen::Pack(a, b) => ObjD(vec![a.clone(), b.clone()]),
            SliceGen::Unpack(a, b) => ObjD::wire(ObjC::tensor(a.clone(), b.clone())),
            SliceGen::UnitIntro => ObjD::empty(),
            SliceGen::UnitElim => ObjD::wire(ObjC::Unit),
        }
    }

    pub fn cod(&self) -> ObjD {
        match self {
            SliceGen::Lift { cod, .. } => ObjD::wire(cod.clone()),
            SliceGen::Pack(a, b) => ObjD::wire(ObjC::tensor(a.clone(), b.clone())),
            SliceGen::Unpack(a, b) => ObjD(vec![a.clone(), b.clone()]),
            SliceGen::UnitIntro => ObjD::wire(ObjC::Unit),
            SliceGen::UnitElim => ObjD::empty(),
        }
    }

    pub fn dom_len(&self) -> usize {
        match self {
            SliceGen::Pack(..) => 2,
            SliceGen::UnitIntro => 0,
            _ => 1,
        }
    }

    pub fn cod_len(&self) -> usize {
        match self {
            SliceGen::Unpack(..) => 2,
            SliceGen::UnitElim => 0,
            _ => 1,
        }
    }

    pub fn is_adapter(&self) -> bool {
        !matches!(self, SliceGen::Lift { .. })
    }

    /// Inverse adapter; `None` for lifts.
    pub fn adapter_inverse(&self) -> Option<SliceGen> {
        Some(match self {
            SliceGen::Lift { .. } => return None,
            SliceGen::Pack(a, b) => SliceGen::Unpack(a.clone(), b.clone()),
            SliceGen::Unpack(a, b) => SliceGen::Pack(a.clone(), b.clone()),
            SliceGen::UnitIntro => SliceGen::UnitElim,
            SliceGen::UnitElim => SliceGen::UnitIntro,
        })
    }

    pub fn to_mor(&self) -> MorD {
        match self {
            SliceGen::Lift { mor, .. } => MorD::Lift(mor.clone()),
            SliceGen::Pack(a, b) => MorD::Pack(a.clone(), b.clone()),
            SliceGen::Unpack(a, b) => MorD::Unpack(a.clone(), b.clone()),
            SliceGen::UnitIntro => MorD::UnitIntro,
            SliceGen::UnitElim => MorD::UnitElim,
        }
    }
}

/// `id_left • gen • id_right`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Slice {
    pub left: ObjD,
    pub gen: SliceGen,
    pub right: ObjD,
}

impl Slice {
    pub fn new(left: ObjD, gen: SliceGen, right: ObjD) -> Self {
        Slice { left, gen, right }
    }

    pub fn bare(gen: SliceGen) -> Self {
        Slice::new(ObjD::empty(), gen, ObjD::empty())
    }

    pub fn dom(&self) -> ObjD {
        self.left.concat(&self.gen.dom()).concat(&self.right)
    }

    pub fn cod(&self) -> ObjD {
        self.left.concat(&self.gen.cod()).concat(&self.right)
    }

    /// Index of the first wire the generator touches.
    pub fn offset(&self) -> usize {
        self.left.len()
    }

    pub fn to_mor(&self) -> MorD {
        let mut m = self.gen.to_mor();
        if !self.left.is_empty() {
            m = MorD::tensor(MorD::Id(self.left.clone()), m);
        }
        if !self.right.is_empty() {
            m = MorD::tensor(m, MorD::Id(self.right.clone()));
        }
        m
    }

    /// Adds passive wires on both sides.
    pub fn widen(&self, left: &ObjD, right: &ObjD) -> Slice {
        Slice::new(
            left.concat(&self.left),
            self.gen.clone(),
            self.right.concat(right),
        )
    }

    /// Interchange: given `self ; next`, returns `(next', self')` with
    /// `self ; next = next' ; self'` when the two generators touch disjoint
    /// wires, and `None` otherwise.
    pub fn commute(&self, next: &Slice) -> Option<(Slice, Slice)> {
        let a = self.left.len();
        let out = self.gen.cod_len();
        let b = next.left.len();
        let q = next.gen.dom_len();
        if b + q <= a {
            let mid = ObjD(self.left.0[b + q..a].to_vec());
            let moved = Slice::new(
                next.left.clone(),
                next.gen.clone(),
                mid.concat(&self.gen.dom()).concat(&self.right),
            );
            let stay = Slice::new(
                next.left.concat(&next.gen.cod()).concat(&mid),
                self.gen.clone(),
                self.right.clone(),
            );
            Some((moved, stay))
        } else if b >= a + out {
            let mid = ObjD(next.left.0[a + out..b].to_vec());
            let moved = Slice::new(
                self.left.concat(&self.gen.dom()).concat(&mid),
                next.gen.clone(),
                next.right.clone(),
            );
            let stay = Slice::new(
                self.left.clone(),
                self.gen.clone(),
                mid.concat(&next.gen.cod()).concat(&next.right),
            );
            Some((moved, stay))
        } else {
            None
        }
    }

    /// `self ; next` is an adapter followed by its inverse at the same wires.
    pub fn cancels_with(&self, next: &Slice) -> bool {
        self.left == next.left && self.gen.adapter_inverse().as_ref() == Some(&next.gen)
    }
}

/// A term factored into slices.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SeqNF {
    pub dom: ObjD,
    pub slices: Vec<Slice>,
}

impl SeqNF {
    pub fn identity(dom: ObjD) -> Self {
        SeqNF {
            dom,
            slices: Vec::new(),
        }
    }

    pub fn cod(&self) -> ObjD {
        self.slices
            .last()
            .map(Slice::cod)
            .unwrap_or_else(|| self.dom.clone())
    }

    /// Left-nested composite of the slices, or `IdD(dom)` when empty.
    pub fn recompose(&self) -> MorD {
        MorD::seq(self.slices.iter().map(Slice::to_mor)).unwrap_or_else(|| MorD::Id(self.dom.clone()))
    }

    pub fn adapter_count(&self) -> usize {
        self.slices.iter().filter(|s| s.gen.is_adapter()).count()
    }

    /// Checks that consecutive slices share their interfaces.
    pub fn check_chain(&self) -> Result<()> {
        let mut cur = self.dom.clone();
        for (i, s) in self.slices.iter().enumerate() {
            let d = s.dom();
            if d != cur {
                return Err(Error::mismatch(format!("slice {i}"), &cur, &d));
            }
            cur = s.cod();
        }
        Ok(())
    }

    fn then(mut self, other: SeqNF) -> SeqNF {
        self.slices.extend(other.slices);
        self
    }
}

/// Factors `t` into slices. Composition concatenates; a tensor `t • u`
/// becomes `(t̂ • id) ; (id • û)`; identities contribute no slices and every
/// generator (including any lift) is one slice.
pub fn seq_normal_form(t: &MorD, sig: &Signature) -> Result<SeqNF> {
    typecheck_d(t, sig)?;
    snf(t, sig)
}

fn snf(t: &MorD, sig: &Signature) -> Result<SeqNF> {
    let bare = |g: SliceGen| {
        let dom = g.dom();
        SeqNF {
            dom,
            slices: vec![Slice::bare(g)],
        }
    };
    Ok(match t {
        MorD::Id(x) => SeqNF::identity(x.clone()),
        MorD::Lift(f) => bare(SliceGen::lift(f.clone(), sig)?),
        MorD::Pack(a, b) => bare(SliceGen::Pack(a.clone(), b.clone())),
        MorD::Unpack(a, b) => bare(SliceGen::Unpack(a.clone(), b.clone())),
        MorD::UnitIntro => bare(SliceGen::UnitIntro),
        MorD::UnitElim => bare(SliceGen::UnitElim),
        MorD::Comp(f, g) => snf(f, sig)?.then(snf(g, sig)?),
        MorD::Tensor(f, g) => {
            let f = snf(f, sig)?;
            let g = snf(g, sig)?;
            let f_cod = f.cod();
            let g_dom = g.dom.clone();
            let empty = ObjD::empty();
            let mut slices: Vec<Slice> = f.slices.iter().map(|s| s.widen(&empty, &g_dom)).collect();
            slices.extend(g.slices.iter().map(|s| s.widen(&f_cod, &empty)));
            SeqNF {
                dom: f.dom.concat(&g_dom),
                slices,
            }
        }
    })
}
