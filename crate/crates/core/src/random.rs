//! Seeded generators of well-typed random terms.

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::strict::{typecheck_d, MorD, ObjD, Slice, SliceGen};
use crate::terms::{typecheck_c, MorC, ObjC, Signature};

pub struct TermGen<'a> {
    sig: &'a Signature,
    rng: ChaCha8Rng,
    bases: Vec<String>,
    /// Maximum tree depth of generated objects.
    pub obj_depth: usize,
    /// Whether generator symbols may appear in morphisms.
    pub allow_gens: bool,
    /// Upper bound on the wires of generated strict objects.
    pub max_wires: usize,
}

impl<'a> TermGen<'a> {
    /// # Panics
    /// If the signature declares no base object.
    pub fn new(sig: &'a Signature, seed: u64) -> Self {
        let bases: Vec<String> = sig.base_objects().map(str::to_string).collect();
        assert!(!bases.is_empty(), "signature without base objects");
        TermGen {
            sig,
            rng: ChaCha8Rng::seed_from_u64(seed),
            bases,
            obj_depth: 3,
            allow_gens: true,
            max_wires: 4,
        }
    }

    pub fn rng(&mut self) -> &mut ChaCha8Rng {
        &mut self.rng
    }

    pub fn base(&mut self) -> ObjC {
        ObjC::base(self.bases.choose(&mut self.rng).expect("non-empty").clone())
    }

    /// An object of depth at most `depth`; depth 1 gives `I` or a base.
    pub fn random_obj(&mut self, depth: usize) -> ObjC {
        if depth <= 1 || self.rng.gen_bool(0.35) {
            if self.rng.gen_bool(0.2) {
                ObjC::Unit
            } else {
                self.base()
            }
        } else {
            ObjC::tensor(self.random_obj(depth - 1), self.random_obj(depth - 1))
        }
    }

    fn small_obj(&mut self) -> ObjC {
        let d = self.obj_depth;
        self.random_obj(d)
    }

    fn generators(&self) -> Vec<(String, ObjC, ObjC)> {
        if !self.allow_gens {
            return Vec::new();
        }
        self.sig
            .generators()
            .map(|(n, d, c)| (n.to_string(), d.clone(), c.clone()))
            .collect()
    }

    fn leaf(&mut self) -> MorC {
        let gens = self.generators();
        loop {
            let pick = self.rng.gen_range(0..8);
            return match pick {
                0 => MorC::Id(self.small_obj()),
                1 if !gens.is_empty() => MorC::gen(gens.choose(&mut self.rng).expect("non-empty").0.clone()),
                1 => continue,
                2 => MorC::Assoc(self.small_obj(), self.small_obj(), self.small_obj()),
                3 => MorC::AssocInv(self.small_obj(), self.small_obj(), self.small_obj()),
                4 => MorC::UnitL(self.small_obj()),
                5 => MorC::UnitLInv(self.small_obj()),
                6 => MorC::UnitR(self.small_obj()),
                _ => MorC::UnitRInv(self.small_obj()),
            };
        }
    }

    /// A well-typed morphism of depth at most `depth`.
    pub fn random_mor(&mut self, depth: usize) -> MorC {
        if depth <= 1 || self.rng.gen_bool(0.25) {
            return self.leaf();
        }
        if self.rng.gen_bool(0.5) {
            MorC::tensor(self.random_mor(depth - 1), self.random_mor(depth - 1))
        } else {
            let f = self.random_mor(depth - 1);
            let (_, cod) = typecheck_c(&f, self.sig).expect("generated terms typecheck");
            let g = self.random_mor_from(&cod, depth - 1);
            MorC::comp(f, g)
        }
    }

    /// A well-typed morphism with domain `dom`.
    pub fn random_mor_from(&mut self, dom: &ObjC, depth: usize) -> MorC {
        let mut options: Vec<MorC> = vec![MorC::Id(dom.clone())];
        for (n, d, _) in self.generators() {
            if &d == dom {
                options.push(MorC::Gen(n));
            }
        }
        if let ObjC::Tensor(a, bc) = dom {
            if let ObjC::Tensor(b, c) = &**bc {
                options.push(MorC::Assoc((**a).clone(), (**b).clone(), (**c).clone()));
            }
            if let ObjC::Tensor(x, y) = &**a {
                options.push(MorC::AssocInv((**x).clone(), (**y).clone(), (**bc).clone()));
            }
            if **a == ObjC::Unit {
                options.push(MorC::UnitL((**bc).clone()));
            }
            if **bc == ObjC::Unit {
                options.push(MorC::UnitR((**a).clone()));
            }
        }
        if dom.leaves() < 6 {
            options.push(MorC::UnitLInv(dom.clone()));
            options.push(MorC::UnitRInv(dom.clone()));
        }
        if depth > 1 {
            if let ObjC::Tensor(a, b) = dom {
                if self.rng.gen_bool(0.3) {
                    return MorC::tensor(
                        self.random_mor_from(a, depth - 1),
                        self.random_mor_from(b, depth - 1),
                    );
                }
            }
            if self.rng.gen_bool(0.4) {
                let f = self.random_mor_from(dom, depth - 1);
                let (_, cod) = typecheck_c(&f, self.sig).expect("generated terms typecheck");
                let g = self.random_mor_from(&cod, depth - 1);
                return MorC::comp(f, g);
            }
        }
        options.choose(&mut self.rng).expect("identity is always an option").clone()
    }

    pub fn random_obj_d(&mut self, max_wires: usize) -> ObjD {
        let n = self.rng.gen_range(0..=max_wires);
        ObjD((0..n).map(|_| self.small_obj()).collect())
    }

    fn random_generator_on(&mut self, dom: &ObjD, lifts: bool) -> Option<Slice> {
        let w = dom.wires();
        let mut cands: Vec<Slice> = Vec::new();
        let cut = |i: usize, k: usize| (ObjD(w[..i].to_vec()), ObjD(w[i + k..].to_vec()));
        for i in 0..=w.len() {
            if w.len() < self.max_wires {
                let (l, r) = cut(i, 0);
                cands.push(Slice::new(l, SliceGen::UnitIntro, r));
            }
            if i == w.len() {
                break;
            }
            if i + 1 < w.len() {
                let (l, r) = cut(i, 2);
                cands.push(Slice::new(l, SliceGen::Pack(w[i].clone(), w[i + 1].clone()), r));
            }
            let (l, r) = cut(i, 1);
            match &w[i] {
                ObjC::Tensor(a, b) if w.len() < self.max_wires => cands.push(Slice::new(
                    l.clone(),
                    SliceGen::Unpack((**a).clone(), (**b).clone()),
                    r.clone(),
                )),
                ObjC::Unit => cands.push(Slice::new(l.clone(), SliceGen::UnitElim, r.clone())),
                _ => {}
            }
            if lifts {
                let d = self.obj_depth;
                let mor = self.random_mor_from(&w[i], d);
                let (dom_c, cod_c) = typecheck_c(&mor, self.sig).expect("generated terms typecheck");
                cands.push(Slice::new(l, SliceGen::Lift { mor, dom: dom_c, cod: cod_c }, r));
            }
        }
        cands.choose(&mut self.rng).cloned()
    }

    /// A random slice with domain `dom`, if any generator applies.
    pub fn random_slice_on(&mut self, dom: &ObjD) -> Option<Slice> {
        self.random_generator_on(dom, true)
    }

    /// A random slice on a random domain.
    pub fn random_slice(&mut self) -> Slice {
        loop {
            let n = self.max_wires;
            let dom = self.random_obj_d(n);
            if let Some(s) = self.random_slice_on(&dom) {
                return s;
            }
        }
    }

    /// A composite of `steps` random slices starting at `dom`.
    pub fn slice_walk(&mut self, dom: &ObjD, steps: usize, lifts: bool) -> MorD {
        let mut cur = dom.clone();
        let mut parts = Vec::new();
        for _ in 0..steps {
            match self.random_generator_on(&cur, lifts) {
                Some(s) => {
                    cur = s.cod();
                    parts.push(s.to_mor());
                }
                None => break,
            }
        }
        MorD::seq(parts).unwrap_or_else(|| MorD::Id(dom.clone()))
    }

    /// Adapter-only walk with no lifts.
    pub fn adapter_walk(&mut self, dom: &ObjD, steps: usize) -> MorD {
        self.slice_walk(dom, steps, false)
    }

    /// A random strict term with domain `dom` mixing composition, tensor,
    /// identities, adapters and (optionally) lifts.
    pub fn random_mor_d(&mut self, dom: &ObjD, depth: usize, lifts: bool) -> MorD {
        if depth > 1 {
            match self.rng.gen_range(0..3) {
                0 => {
                    let f = self.random_mor_d(dom, depth - 1, lifts);
                    let (_, cod) = typecheck_d(&f, self.sig).expect("generated terms typecheck");
                    let g = self.random_mor_d(&cod, depth - 1, lifts);
                    return MorD::comp(f, g);
                }
                1 if !dom.is_empty() => {
                    let k = self.rng.gen_range(0..=dom.len());
                    let (l, r) = dom.wires().split_at(k);
                    return MorD::tensor(
                        self.random_mor_d(&ObjD(l.to_vec()), depth - 1, lifts),
                        self.random_mor_d(&ObjD(r.to_vec()), depth - 1, lifts),
                    );
                }
                _ => {}
            }
        }
        if self.rng.gen_bool(0.15) {
            return MorD::Id(dom.clone());
        }
        match self.random_generator_on(dom, lifts) {
            Some(s) => s.to_mor(),
            None => MorD::Id(dom.clone()),
        }
    }
}
