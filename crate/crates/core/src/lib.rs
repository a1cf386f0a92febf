//! Exact two-variable HOMFLY and Kauffman invariants of framed links given
//! as Morse words, the four recursion functors between skein categories,
//! and exact checks of their defining relations.

pub mod diagram;
pub mod functors;
pub mod io;
pub mod local_algebra;
pub mod oracle;
pub mod scalar;
pub mod skein;

pub use diagram::{Chirality, ComponentMap, CrossKind, DiagramError, MorseWord, Orient, Point, Slice};
pub use functors::{
    expand, local_image, verify_recursion, ExpansionTerm, FunctorError, FunctorId, FunctorSpec, RecursionReport,
    ReportRecord,
};
pub use io::{
    braid_to_morse, find_link, link_table, parse_braid, parse_morse, render_morse, BraidWord, ClosureSide, LinkEntry,
    ParseError,
};
pub use local_algebra::{
    check_relation, functor_block, BlockMatrix, Bmw2, Generator, Hecke2, LocalElement, MixedPair2, Relation,
    RelationReport,
};
pub use scalar::{LaurentPoly, Monomial, Scalar, ScalarError, Var};
pub use skein::{
    delta_homfly, delta_kauffman, eval_homfly, eval_kauffman, eval_mixed, normalize_unframed, Pivot, SkeinContext,
    SkeinError, SkeinKind, StrandKind,
};
