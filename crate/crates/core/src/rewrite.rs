//! Directed rewriting on strict terms and adapter normalization.
//!
//! Tree rules (`Functoriality`, `StructuralExpand`) act on lifted morphisms.
//! Slice rules (`AdapterCancel`, `NaturalitySlide`) act on the sequential
//! normal form, where cancellation works modulo interchange: an adapter is
//! transported leftwards past slices on disjoint wires until it meets its
//! inverse.

use std::fmt;

use crate::coherence::nf_slices;
use crate::error::{Error, Result};
use crate::strict::{seq_normal_form, typecheck_d, MorD, ObjD, SeqNF, Slice, SliceGen};
use crate::terms::{typecheck_c, MorC, ObjC, Signature};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum RuleSet {
    Functoriality,
    AdapterCancel,
    NaturalitySlide,
    StructuralExpand,
}

impl fmt::Display for RuleSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            RuleSet::Functoriality => "functoriality",
            RuleSet::AdapterCancel => "adapter-cancel",
            RuleSet::NaturalitySlide => "naturality-slide",
            RuleSet::StructuralExpand => "structural-expand",
        })
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TraceStep {
    pub rule: RuleSet,
    pub detail: String,
}

impl fmt::Display for TraceStep {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}: {}", self.rule, self.detail)
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct NormalizeReport {
    pub output: MorD,
    pub trace: Vec<TraceStep>,
    /// Adapter/inverse pairs removed by cancellation.
    pub cancelled_pairs: usize,
    pub steps: usize,
}

/// Rewriting state shared by all rule applications of one run.
#[derive(Debug, Default)]
struct Engine {
    budget: Option<usize>,
    steps: usize,
    cancelled: usize,
    trace: Vec<TraceStep>,
}

impl Engine {
    fn new(budget: Option<usize>) -> Self {
        Engine {
            budget,
            ..Engine::default()
        }
    }

    fn record(&mut self, rule: RuleSet, detail: impl FnOnce() -> String) -> Result<()> {
        self.steps += 1;
        if let Some(b) = self.budget {
            if self.steps > b {
                return Err(Error::StepBudgetExceeded(b));
            }
        }
        self.trace.push(TraceStep {
            rule,
            detail: detail(),
        });
        Ok(())
    }

    fn rewrite_tree(
        &mut self,
        t: &MorD,
        functoriality: bool,
        expand: bool,
        sig: &Signature,
    ) -> Result<MorD> {
        Ok(match t {
            MorD::Comp(f, g) => MorD::comp(
                self.rewrite_tree(f, functoriality, expand, sig)?,
                self.rewrite_tree(g, functoriality, expand, sig)?,
            ),
            MorD::Tensor(f, g) => MorD::tensor(
                self.rewrite_tree(f, functoriality, expand, sig)?,
                self.rewrite_tree(g, functoriality, expand, sig)?,
            ),
            MorD::Lift(f) => self.rewrite_lift(f, functoriality, expand, sig)?,
            other => other.clone(),
        })
    }

    fn rewrite_lift(
        &mut self,
        f: &MorC,
        functoriality: bool,
        expand: bool,
        sig: &Signature,
    ) -> Result<MorD> {
        match f {
            MorC::Id(a) if functoriality => {
                self.record(RuleSet::Functoriality, || format!("lift({f}) -> idD[{a}]"))?;
                Ok(MorD::id(vec![a.clone()]))
            }
            MorC::Comp(g, h) if functoriality => {
                self.record(RuleSet::Functoriality, || format!("split lift({f})"))?;
                Ok(MorD::comp(
                    self.rewrite_lift(g, functoriality, expand, sig)?,
                    self.rewrite_lift(h, functoriality, expand, sig)?,
                ))
            }
            MorC::Tensor(g, h) if expand => {
                self.record(RuleSet::StructuralExpand, || format!("expand lift({f})"))?;
                let (a, a2) = typecheck_c(g, sig)?;
                let (b, b2) = typecheck_c(h, sig)?;
                let inner = MorD::tensor(
                    self.rewrite_lift(g, functoriality, expand, sig)?,
                    self.rewrite_lift(h, functoriality, expand, sig)?,
                );
                Ok(MorD::seq([MorD::Unpack(a, b), inner, MorD::Pack(a2, b2)]).expect("non-empty"))
            }
            _ if expand && !matches!(f, MorC::Id(_) | MorC::Gen(_) | MorC::Comp(..)) => {
                self.record(RuleSet::StructuralExpand, || format!("expand lift({f})"))?;
                Ok(expand_structural(f))
            }
            _ => Ok(MorD::Lift(f.clone())),
        }
    }
}

fn idw(a: &ObjC) -> MorD {
    MorD::id(vec![a.clone()])
}

/// Adapter composite of a lifted associator or unitor.
fn expand_structural(f: &MorC) -> MorD {
    use MorD::{Pack, Unpack, UnitElim, UnitIntro};
    let t = |x: &ObjC, y: &ObjC| ObjC::tensor(x.clone(), y.clone());
    let parts = match f {
        MorC::Assoc(a, b, c) => vec![
            Unpack(a.clone(), t(b, c)),
            MorD::tensor(idw(a), Unpack(b.clone(), c.clone())),
            MorD::tensor(Pack(a.clone(), b.clone()), idw(c)),
            Pack(t(a, b), c.clone()),
        ],
        MorC::AssocInv(a, b, c) => vec![
            Unpack(t(a, b), c.clone()),
            MorD::tensor(Unpack(a.clone(), b.clone()), idw(c)),
            MorD::tensor(idw(a), Pack(b.clone(), c.clone())),
            Pack(a.clone(), t(b, c)),
        ],
        MorC::UnitL(a) => vec![
            Unpack(ObjC::Unit, a.clone()),
            MorD::tensor(UnitElim, idw(a)),
        ],
        MorC::UnitLInv(a) => vec![
            MorD::tensor(UnitIntro, idw(a)),
            Pack(ObjC::Unit, a.clone()),
        ],
        MorC::UnitR(a) => vec![
            Unpack(a.clone(), ObjC::Unit),
            MorD::tensor(idw(a), UnitElim),
        ],
        MorC::UnitRInv(a) => vec![
            MorD::tensor(idw(a), UnitIntro),
            Pack(a.clone(), ObjC::Unit),
        ],
        other => return MorD::Lift(other.clone()),
    };
    MorD::seq(parts).expect("non-empty")
}

fn describe(s: &Slice) -> String {
    format!("{} at wire {}", s.gen.to_mor(), s.offset())
}

/// Removes one adapter/inverse pair, transporting the right member
/// leftwards by interchange. Returns a description of the removed pair.
pub(crate) fn cancel_once(slices: &mut Vec<Slice>) -> Option<String> {
    for j in 1..slices.len() {
        if !slices[j].gen.is_adapter() {
            continue;
        }
        let mut cur = slices[j].clone();
        let mut passed: Vec<Slice> = Vec::new();
        for i in (0..j).rev() {
            if slices[i].cancels_with(&cur) {
                let what = format!("{} ; {}", describe(&slices[i]), describe(&cur));
                passed.reverse();
                let mut out = slices[..i].to_vec();
                out.extend(passed);
                out.extend_from_slice(&slices[j + 1..]);
                *slices = out;
                return Some(what);
            }
            match slices[i].commute(&cur) {
                Some((moved, stay)) => {
                    passed.push(stay);
                    cur = moved;
                }
                None => break,
            }
        }
    }
    None
}

/// Removes adapter pairs until none remain; returns the number removed.
pub(crate) fn cancel_all(slices: &mut Vec<Slice>) -> usize {
    let mut n = 0;
    while cancel_once(slices).is_some() {
        n += 1;
    }
    n
}

fn split_tensor(o: &ObjC) -> Option<(ObjC, ObjC)> {
    match o {
        ObjC::Tensor(a, b) => Some(((**a).clone(), (**b).clone())),
        _ => None,
    }
}

/// Rewrites `Pack ; lift(f ⊗ g)` and `lift(f ⊗ g) ; Unpack` at the first
/// position where either applies.
fn slide_once(slices: &mut Vec<Slice>) -> Option<String> {
    for i in 0..slices.len().saturating_sub(1) {
        let (s, t) = (&slices[i], &slices[i + 1]);
        if s.left != t.left {
            continue;
        }
        let lifted = |x: &Slice| match &x.gen {
            SliceGen::Lift {
                mor: MorC::Tensor(f, g),
                dom,
                cod,
            } => {
                let (a, b) = split_tensor(dom)?;
                let (a2, b2) = split_tensor(cod)?;
                Some(((**f).clone(), (**g).clone(), a, b, a2, b2))
            }
            _ => None,
        };
        let pair = |left: &ObjD, right: &ObjD, f, g, a: ObjC, b: ObjC, a2: ObjC, b2: ObjC| {
            [
                Slice::new(
                    left.clone(),
                    SliceGen::Lift { mor: f, dom: a, cod: a2.clone() },
                    ObjD::wire(b.clone()).concat(right),
                ),
                Slice::new(
                    left.concat(&ObjD::wire(a2)),
                    SliceGen::Lift { mor: g, dom: b, cod: b2 },
                    right.clone(),
                ),
            ]
        };
        let replacement = match (&s.gen, &t.gen) {
            (SliceGen::Pack(..), SliceGen::Lift { .. }) => lifted(t).map(|(f, g, a, b, a2, b2)| {
                let [x, y] = pair(&s.left, &s.right, f, g, a, b, a2.clone(), b2.clone());
                vec![x, y, Slice::new(s.left.clone(), SliceGen::Pack(a2, b2), s.right.clone())]
            }),
            (SliceGen::Lift { .. }, SliceGen::Unpack(..)) => lifted(s).map(|(f, g, a, b, a2, b2)| {
                let first = Slice::new(
                    s.left.clone(),
                    SliceGen::Unpack(a.clone(), b.clone()),
                    s.right.clone(),
                );
                let [x, y] = pair(&s.left, &s.right, f, g, a, b, a2, b2);
                vec![first, x, y]
            }),
            _ => None,
        };
        if let Some(rep) = replacement {
            let what = format!("{} ; {}", describe(s), describe(t));
            slices.splice(i..i + 2, rep);
            return Some(what);
        }
    }
    None
}

/// Replaces each maximal run of adapter slices by the reduced canonical
/// slices between its endpoints. Returns whether anything changed.
fn canonicalize_runs(nf: &mut SeqNF) -> Result<bool> {
    let mut out = Vec::with_capacity(nf.slices.len());
    let mut changed = false;
    let mut i = 0;
    while i < nf.slices.len() {
        if !nf.slices[i].gen.is_adapter() {
            out.push(nf.slices[i].clone());
            i += 1;
            continue;
        }
        let start = i;
        while i < nf.slices.len() && nf.slices[i].gen.is_adapter() {
            i += 1;
        }
        let run = &nf.slices[start..i];
        let canon = nf_slices(&run[0].dom(), &run[run.len() - 1].cod())?.slices;
        changed |= canon.as_slice() != run;
        out.extend(canon);
    }
    nf.slices = out;
    Ok(changed)
}

/// Applies functoriality and structural expansion to every lift.
pub(crate) fn expand_lifts(t: &MorD, sig: &Signature) -> Result<MorD> {
    Engine::new(None).rewrite_tree(t, true, true, sig)
}

/// Applies one rule set exhaustively. Slice rules return the input unchanged
/// when they do not fire.
pub fn apply_rules(t: &MorD, rules: RuleSet, sig: &Signature) -> Result<MorD> {
    typecheck_d(t, sig)?;
    let mut engine = Engine::new(None);
    match rules {
        RuleSet::Functoriality => engine.rewrite_tree(t, true, false, sig),
        RuleSet::StructuralExpand => engine.rewrite_tree(t, false, true, sig),
        RuleSet::AdapterCancel => {
            let mut nf = seq_normal_form(t, sig)?;
            if cancel_all(&mut nf.slices) == 0 {
                Ok(t.clone())
            } else {
                Ok(nf.recompose())
            }
        }
        RuleSet::NaturalitySlide => {
            let mut nf = seq_normal_form(t, sig)?;
            let bound = nf.slices.len().max(1);
            let mut fired = false;
            for _ in 0..bound {
                if slide_once(&mut nf.slices).is_none() {
                    break;
                }
                fired = true;
            }
            Ok(if fired { nf.recompose() } else { t.clone() })
        }
    }
}

/// Expands lifts to adapters, slices the result and cancels adapters modulo
/// interchange; adapter-only stretches are then replaced by their reduced
/// canonical form. Over the generator-free fragment the result depends only
/// on the endpoints.
pub fn normalize_adapters(t: &MorD, sig: &Signature) -> Result<MorD> {
    Ok(normalize_with_report(t, sig, None)?.output)
}

pub fn normalize_with_report(
    t: &MorD,
    sig: &Signature,
    max_steps: Option<usize>,
) -> Result<NormalizeReport> {
    typecheck_d(t, sig)?;
    let mut engine = Engine::new(max_steps);
    let mut cur = t.clone();
    loop {
        let next = engine.rewrite_tree(&cur, true, true, sig)?;
        if next == cur {
            break;
        }
        cur = next;
    }
    let mut nf = seq_normal_form(&cur, sig)?;
    // Each round either cancels (lowering the adapter count) or canonicalizes
    // runs; the bound guards against alternation between the two.
    let rounds = 4 * nf.slices.len() + 8;
    for _ in 0..rounds {
        let mut progressed = false;
        while let Some(what) = cancel_once(&mut nf.slices) {
            engine.cancelled += 1;
            engine.record(RuleSet::AdapterCancel, || what)?;
            progressed = true;
        }
        let bound = nf.slices.len().max(1);
        for _ in 0..bound {
            match slide_once(&mut nf.slices) {
                Some(what) => {
                    engine.record(RuleSet::NaturalitySlide, || what)?;
                    progressed = true;
                }
                None => break,
            }
        }
        if progressed {
            continue;
        }
        if !canonicalize_runs(&mut nf)? {
            break;
        }
    }
    Ok(NormalizeReport {
        output: nf.recompose(),
        trace: engine.trace,
        cancelled_pairs: engine.cancelled,
        steps: engine.steps,
    })
}
