//! Free monoidal categories over a signature, their strictification, and
//! coherence-based decision procedures.
//!
//! [`terms`] holds the non-strict terms, [`strict`] the strict category with
//! its adapters, [`functors`] the translations between them, [`rewrite`] the
//! adapter normalizer and [`coherence`] canonical arrows and equality.

pub mod coherence;
pub mod demo;
pub mod error;
pub mod functors;
pub mod model;
pub mod random;
pub mod render;
pub mod rewrite;
pub mod strict;
pub mod syntax;
pub mod terms;

pub use coherence::{
    canonical_d, canonical_nat_iso, canonical_unreduced, equal_structural, fg_singleton_check,
    nf_slices, pack_obj, unpack_obj, EqVerdict,
};
pub use error::{Error, Result};
pub use functors::{
    epsilon, epsilon_inv, eta, g_obj, g_slice, nonstrictify, psi_big, psi_small, strictify_expand,
    strictify_shallow,
};
pub use model::{extensional_equal, Element, FinModel, ModelConfig, Table};
pub use random::TermGen;
pub use render::{emit_dot, emit_svg, layout, BoxKind, DiagramLayout};
pub use rewrite::{
    apply_rules, normalize_adapters, normalize_with_report, NormalizeReport, RuleSet, TraceStep,
};
pub use strict::{invert_d, seq_normal_form, typecheck_d, MorD, ObjD, SeqNF, Slice, SliceGen};
pub use syntax::{parse_mor_c, parse_mor_d, parse_obj, parse_obj_d, parse_signature, print_signature};
pub use terms::{typecheck_c, MorC, ObjC, Signature};
