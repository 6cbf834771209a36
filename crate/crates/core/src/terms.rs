//! Object and morphism terms of the free (non-strict) monoidal category over
//! a [`Signature`].
//!
//! Conventions used throughout the crate:
//!
//! * composition is diagrammatic: `Comp(f, g)` runs `f` first;
//! * `Assoc(A, B, C) : A ⊗ (B ⊗ C) → (A ⊗ B) ⊗ C`;
//! * `UnitL(A) : I ⊗ A → A` and `UnitR(A) : A ⊗ I → A`.
//!
//! Object equality is syntactic tree equality.

use std::collections::{BTreeMap, BTreeSet};

use crate::error::{Error, Result};

/// Names that the concrete syntax reserves and that therefore cannot be used
/// for base objects or generators.
pub const RESERVED: &[&str] = &[
    "I", "id", "idD", "alpha", "lambda", "rho", "pack", "unpack", "unit", "lift",
];

#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum ObjC {
    Unit,
    Base(String),
    Tensor(Box<ObjC>, Box<ObjC>),
}

impl ObjC {
    pub fn base(name: impl Into<String>) -> Self {
        ObjC::Base(name.into())
    }

    pub fn tensor(a: ObjC, b: ObjC) -> Self {
        ObjC::Tensor(Box::new(a), Box::new(b))
    }

    /// Right-nested tensor of `parts`; the empty product is the unit.
    pub fn tensor_all(parts: impl IntoIterator<Item = ObjC>) -> Self {
        let mut parts: Vec<ObjC> = parts.into_iter().collect();
        let Some(mut acc) = parts.pop() else {
            return ObjC::Unit;
        };
        while let Some(p) = parts.pop() {
            acc = ObjC::tensor(p, acc);
        }
        acc
    }

    /// In-order base leaves; unit leaves contribute nothing.
    pub fn flatten(&self) -> Vec<String> {
        let mut out = Vec::new();
        self.flatten_into(&mut out);
        out
    }

    fn flatten_into(&self, out: &mut Vec<String>) {
        match self {
            ObjC::Unit => {}
            ObjC::Base(n) => out.push(n.clone()),
            ObjC::Tensor(a, b) => {
                a.flatten_into(out);
                b.flatten_into(out);
            }
        }
    }

    pub fn objsize(&self) -> usize {
        match self {
            ObjC::Unit => 0,
            ObjC::Base(_) => 1,
            ObjC::Tensor(a, b) => a.objsize() + b.objsize(),
        }
    }

    /// Number of tree leaves, units included.
    pub fn leaves(&self) -> usize {
        match self {
            ObjC::Unit | ObjC::Base(_) => 1,
            ObjC::Tensor(a, b) => a.leaves() + b.leaves(),
        }
    }

    pub fn base_names(&self) -> BTreeSet<String> {
        self.flatten().into_iter().collect()
    }

    /// Replaces the i-th base leaf (left to right) by `fill[i]`; unit leaves
    /// are kept.
    pub fn substitute(&self, fill: &[ObjC]) -> Result<ObjC> {
        let expected = self.objsize();
        if expected != fill.len() {
            return Err(Error::ArityMismatch {
                expected,
                found: fill.len(),
            });
        }
        let mut it = fill.iter();
        Ok(self.substitute_with(&mut it))
    }

    fn substitute_with<'a>(&self, fill: &mut impl Iterator<Item = &'a ObjC>) -> ObjC {
        match self {
            ObjC::Unit => ObjC::Unit,
            ObjC::Base(_) => fill.next().cloned().expect("arity checked"),
            ObjC::Tensor(a, b) => {
                let a = a.substitute_with(fill);
                let b = b.substitute_with(fill);
                ObjC::tensor(a, b)
            }
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum MorC {
    Id(ObjC),
    Gen(String),
    Comp(Box<MorC>, Box<MorC>),
    Tensor(Box<MorC>, Box<MorC>),
    Assoc(ObjC, ObjC, ObjC),
    AssocInv(ObjC, ObjC, ObjC),
    UnitL(ObjC),
    UnitLInv(ObjC),
    UnitR(ObjC),
    UnitRInv(ObjC),
}

impl MorC {
    pub fn gen(name: impl Into<String>) -> Self {
        MorC::Gen(name.into())
    }

    pub fn comp(f: MorC, g: MorC) -> Self {
        MorC::Comp(Box::new(f), Box::new(g))
    }

    pub fn tensor(f: MorC, g: MorC) -> Self {
        MorC::Tensor(Box::new(f), Box::new(g))
    }

    /// Left-nested composite of a non-empty sequence.
    pub fn seq(parts: impl IntoIterator<Item = MorC>) -> Option<Self> {
        parts.into_iter().reduce(MorC::comp)
    }

    /// True iff the term contains no generator.
    pub fn is_structural(&self) -> bool {
        match self {
            MorC::Gen(_) => false,
            MorC::Comp(f, g) | MorC::Tensor(f, g) => f.is_structural() && g.is_structural(),
            _ => true,
        }
    }

    /// Number of constructor nodes.
    pub fn size(&self) -> usize {
        match self {
            MorC::Comp(f, g) | MorC::Tensor(f, g) => 1 + f.size() + g.size(),
            _ => 1,
        }
    }

    pub fn generators(&self) -> Vec<&str> {
        let mut out = Vec::new();
        self.collect_generators(&mut out);
        out
    }

    fn collect_generators<'a>(&'a self, out: &mut Vec<&'a str>) {
        match self {
            MorC::Gen(n) => out.push(n),
            MorC::Comp(f, g) | MorC::Tensor(f, g) => {
                f.collect_generators(out);
                g.collect_generators(out);
            }
            _ => {}
        }
    }

    /// Structural inverse. Generators have none.
    pub fn invert(&self) -> Result<MorC> {
        Ok(match self {
            MorC::Id(a) => MorC::Id(a.clone()),
            MorC::Gen(n) => return Err(Error::NotInvertible(format!("generator `{n}`"))),
            MorC::Comp(f, g) => MorC::comp(g.invert()?, f.invert()?),
            MorC::Tensor(f, g) => MorC::tensor(f.invert()?, g.invert()?),
            MorC::Assoc(a, b, c) => MorC::AssocInv(a.clone(), b.clone(), c.clone()),
            MorC::AssocInv(a, b, c) => MorC::Assoc(a.clone(), b.clone(), c.clone()),
            MorC::UnitL(a) => MorC::UnitLInv(a.clone()),
            MorC::UnitLInv(a) => MorC::UnitL(a.clone()),
            MorC::UnitR(a) => MorC::UnitRInv(a.clone()),
            MorC::UnitRInv(a) => MorC::UnitR(a.clone()),
        })
    }

    /// Removes identity composites and merges tensors of identities, bottom
    /// up. The result has the same type and denotes the same morphism.
    pub fn simplify_identities(&self) -> MorC {
        match self {
            MorC::Comp(f, g) => match (f.simplify_identities(), g.simplify_identities()) {
                (MorC::Id(_), g) => g,
                (f, MorC::Id(_)) => f,
                (f, g) => MorC::comp(f, g),
            },
            MorC::Tensor(f, g) => match (f.simplify_identities(), g.simplify_identities()) {
                (MorC::Id(a), MorC::Id(b)) => MorC::Id(ObjC::tensor(a, b)),
                (f, g) => MorC::tensor(f, g),
            },
            other => other.clone(),
        }
    }
}

/// Declared base objects and typed generators.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct Signature {
    base_objects: BTreeSet<String>,
    generators: BTreeMap<String, (ObjC, ObjC)>,
}

impl Signature {
    pub fn new() -> Self {
        Self::default()
    }

    /// The signature with a single base object `W` and no generators.
    pub fn catw() -> Self {
        let mut sig = Signature::new();
        sig.add_base("W").expect("fresh signature");
        sig
    }

    pub fn add_base(&mut self, name: impl Into<String>) -> Result<()> {
        let name = name.into();
        self.check_fresh(&name)?;
        self.base_objects.insert(name);
        Ok(())
    }

    pub fn add_generator(&mut self, name: impl Into<String>, dom: ObjC, cod: ObjC) -> Result<()> {
        let name = name.into();
        self.check_fresh(&name)?;
        for obj in [&dom, &cod] {
            self.check_obj(obj)?;
        }
        self.generators.insert(name, (dom, cod));
        Ok(())
    }

    fn check_fresh(&self, name: &str) -> Result<()> {
        if RESERVED.contains(&name) {
            return Err(Error::DuplicateName(format!("{name} (reserved)")));
        }
        if self.base_objects.contains(name) || self.generators.contains_key(name) {
            return Err(Error::DuplicateName(name.to_string()));
        }
        Ok(())
    }

    pub fn check_obj(&self, obj: &ObjC) -> Result<()> {
        for n in obj.flatten() {
            if !self.base_objects.contains(&n) {
                return Err(Error::UnknownName(n));
            }
        }
        Ok(())
    }

    pub fn base_objects(&self) -> impl Iterator<Item = &str> {
        self.base_objects.iter().map(String::as_str)
    }

    pub fn generators(&self) -> impl Iterator<Item = (&str, &ObjC, &ObjC)> {
        self.generators
            .iter()
            .map(|(n, (d, c))| (n.as_str(), d, c))
    }

    pub fn generator(&self, name: &str) -> Result<(&ObjC, &ObjC)> {
        self.generators
            .get(name)
            .map(|(d, c)| (d, c))
            .ok_or_else(|| Error::UnknownName(name.to_string()))
    }

    pub fn has_base(&self, name: &str) -> bool {
        self.base_objects.contains(name)
    }
}

/// Derives `(dom, cod)` of a morphism term by structural recursion.
pub fn typecheck_c(f: &MorC, sig: &Signature) -> Result<(ObjC, ObjC)> {
    use ObjC::{Tensor, Unit};
    let t = |a: &ObjC, b: &ObjC| Tensor(Box::new(a.clone()), Box::new(b.clone()));
    Ok(match f {
        MorC::Id(a) => {
            sig.check_obj(a)?;
            (a.clone(), a.clone())
        }
        MorC::Gen(name) => {
            let (d, c) = sig.generator(name)?;
            (d.clone(), c.clone())
        }
        MorC::Comp(f, g) => {
            let (a, b) = typecheck_c(f, sig)?;
            let (b2, c) = typecheck_c(g, sig)?;
            if b != b2 {
                return Err(Error::mismatch(format!("composite `{f} ; {g}`"), &b, &b2));
            }
            (a, c)
        }
        MorC::Tensor(f, g) => {
            let (a, b) = typecheck_c(f, sig)?;
            let (c, d) = typecheck_c(g, sig)?;
            (t(&a, &c), t(&b, &d))
        }
        MorC::Assoc(a, b, c) | MorC::AssocInv(a, b, c) => {
            for o in [a, b, c] {
                sig.check_obj(o)?;
            }
            let right = t(a, &t(b, c));
            let left = t(&t(a, b), c);
            if matches!(f, MorC::Assoc(..)) {
                (right, left)
            } else {
                (left, right)
            }
        }
        MorC::UnitL(a) | MorC::UnitLInv(a) | MorC::UnitR(a) | MorC::UnitRInv(a) => {
            sig.check_obj(a)?;
            let padded = match f {
                MorC::UnitL(_) | MorC::UnitLInv(_) => t(&Unit, a),
                _ => t(a, &Unit),
            };
            if matches!(f, MorC::UnitL(_) | MorC::UnitR(_)) {
                (padded, a.clone())
            } else {
                (a.clone(), padded)
            }
        }
    })
}
