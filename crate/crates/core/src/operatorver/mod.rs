//! Symbolic verification that operations built from Rota-Baxter,
//! Nijenhuis and one-sided Rota-Baxter operators satisfy the relations of
//! the predicted product type.
//!
//! Terms are three-leaf trees over a free algebra of the base type with
//! operator words on every subterm. The operator law is applied as a
//! rewrite rule; the normal form of an evaluated relation must then lie
//! in the span of normalized relation instances of the base type, which is
//! decided exactly over `Q(λ)`.

mod normalize;
mod term;
mod verify;

pub use normalize::{
    is_normal, normalize_outermost, Law, Limits, Normalizer, Weight, DEFAULT_NESTING_CAP,
    DEFAULT_STEP_BUDGET,
};
pub use term::{add_term, render_lincomb, Lincomb, Term, Word, MAX_OPERATORS};
pub use verify::{
    verify_commuting_family, verify_operator_lemmas, verify_operator_theorem, Construction,
    InstanceRef, LemmaReport, OperatorSpec, RelationVerdict, Table, VerificationReport,
};
