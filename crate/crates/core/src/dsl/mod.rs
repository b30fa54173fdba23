//! Plain-text type definitions.
//!
//! ```txt
//! document  ::= "type" NAME "{" gens star aux? rels? "}"
//! gens      ::= "generators" ":" NAME ("," NAME)* ";"
//! star      ::= "star" ":" (lincomb | "none") ";"
//! aux       ::= "aux" ":" NAME "=" lincomb ("," NAME "=" lincomb)* ";"
//! rels      ::= "relations" ":" ("(" bilin "|" bilin ")")+ ";"?
//! lincomb   ::= sign? scale? NAME (("+" | "-") scale? NAME)*
//! bilin     ::= "0" | sign? scale? factor "." factor (("+" | "-") scale? factor "." factor)*
//! factor    ::= NAME | "(" lincomb ")"
//! scale     ::= INT ("/" INT)? "*"
//! NAME      ::= [A-Za-z_][A-Za-z0-9_^']* | '"' [^"]* '"' | symbol alias (≺ ≻ ∘ • ⊣ ⊢ ★ ...)
//! ```
//!
//! `a.b` on the left of `|` stands for `(x a y) b z`, on the right for
//! `x a (y b z)`. The final `;` before `}` may be omitted. `#` starts a
//! comment.

mod lexer;
mod parser;
mod serialize;

use std::fmt;

pub use parser::{
    parse_document, AuxDef, Bilin, BilinTerm, LinComb, LinTerm, RelationAst, TypeDoc,
};
pub use serialize::{from_json, from_json_value, to_dsl, to_json, to_json_value, to_latex};

use crate::typecore::{TypePresentation, ValidationReport};
use crate::Error;

/// Location in the parsed text. `line` and `column` are 1-based (columns
/// count characters); `start..end` are byte offsets.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct SourceSpan {
    pub line: usize,
    pub column: usize,
    pub start: usize,
    pub end: usize,
}

impl SourceSpan {
    /// Span covering `self` through `other`.
    pub fn to(self, other: SourceSpan) -> SourceSpan {
        SourceSpan {
            end: other.end,
            ..self
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum ParseErrorKind {
    Syntax,
    UnknownIdentifier,
    DuplicateGenerator,
    /// Well-formed text describing an invalid presentation.
    Invalid(Box<ValidationReport>),
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ParseError {
    pub kind: ParseErrorKind,
    pub message: String,
    pub span: SourceSpan,
}

impl ParseError {
    pub fn new(kind: ParseErrorKind, message: impl Into<String>, span: SourceSpan) -> Self {
        ParseError {
            kind,
            message: message.into(),
            span,
        }
    }
}

impl fmt::Display for ParseError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "line {}, column {}: {}",
            self.span.line, self.span.column, self.message
        )?;
        if let ParseErrorKind::Invalid(report) = &self.kind {
            write!(f, "\n{report}")?;
        }
        Ok(())
    }
}

impl std::error::Error for ParseError {}

/// Parses and validates. Invalid presentations are rejected with the
/// validation report attached.
pub fn parse_type(text: &str) -> Result<TypePresentation, ParseError> {
    let doc = parse_document(text)?;
    let t = doc.to_presentation()?;
    let report = t.validate();
    if report.valid() {
        Ok(t)
    } else {
        Err(ParseError::new(
            ParseErrorKind::Invalid(Box::new(report)),
            format!("type `{}` is not a valid presentation", doc.name),
            doc.name_span,
        ))
    }
}

/// Parses without validating.
pub fn parse_type_unchecked(text: &str) -> Result<TypePresentation, ParseError> {
    parse_document(text)?.to_presentation()
}

/// Output formats of [`serialize`].
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Format {
    Dsl,
    Json,
    Latex,
}

impl std::str::FromStr for Format {
    type Err = String;
    fn from_str(s: &str) -> Result<Self, String> {
        match s {
            "dsl" => Ok(Format::Dsl),
            "json" => Ok(Format::Json),
            "latex" => Ok(Format::Latex),
            other => Err(format!(
                "unknown format `{other}` (expected dsl, json or latex)"
            )),
        }
    }
}

pub fn serialize(t: &TypePresentation, format: Format) -> String {
    match format {
        Format::Dsl => to_dsl(t),
        Format::Json => to_json(t),
        Format::Latex => to_latex(t),
    }
}

/// Reads a presentation from JSON (text starting with `{`) or DSL, without
/// validating.
pub fn load_unchecked(text: &str) -> Result<TypePresentation, Error> {
    if text.trim_start().starts_with('{') {
        from_json(text)
    } else {
        Ok(parse_type_unchecked(text)?)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactalg::rat;

    const DEND: &str = "type dend { generators: lt, gt; star: lt+gt; relations: (lt.lt | lt.lt + lt.gt) (gt.lt | gt.lt) (lt.gt + gt.gt | gt.gt) }";

    #[test]
    fn parses_dendriform() {
        let t = parse_type(DEND).unwrap();
        assert_eq!(t.dim(), 2);
        assert_eq!(t.relations().len(), 3);
        assert_eq!(t.star().unwrap(), &[rat(1), rat(1)]);
    }

    #[test]
    fn invalid_type_reports() {
        let err = parse_type("type bad { generators: a; star: a; relations: (a.a | 2*a.a) }")
            .unwrap_err();
        let ParseErrorKind::Invalid(report) = &err.kind else {
            panic!("{err}")
        };
        assert_eq!(report.star_associative, Some(false));
        assert!(parse_type_unchecked(
            "type bad { generators: a; star: a; relations: (a.a | 2*a.a) }"
        )
        .is_ok());
    }

    #[test]
    fn error_spans() {
        let text = "type t {\n  generators: a, b;\n  star: a + c;\n}";
        let err = parse_type(text).unwrap_err();
        assert_eq!(err.kind, ParseErrorKind::UnknownIdentifier);
        assert_eq!((err.span.line, err.span.column), (3, 13));
        assert_eq!(&text[err.span.start..err.span.end], "c");

        let err =
            parse_type("type t { generators: a, a; star: a; relations: (a.a|a.a) }").unwrap_err();
        assert_eq!(err.kind, ParseErrorKind::DuplicateGenerator);

        let err = parse_type("type t { generators a }").unwrap_err();
        assert_eq!(err.kind, ParseErrorKind::Syntax);
        assert_eq!(err.span.column, 21);
    }

    #[test]
    fn symbols_and_aux() {
        let text = "type d { generators: ≺, ≻; star: ★; aux: ★ = ≺ + ≻; relations: (≺.≺ | ≺.★) (≻.≺ | ≻.≺) (★.≻ | ≻.≻) }";
        let t = parse_type(text).unwrap();
        assert_eq!(t.generators(), ["lt", "gt"]);
        assert_eq!(t.space(), parse_type(DEND).unwrap().space());
    }

    #[test]
    fn round_trips() {
        let t = parse_type(DEND).unwrap();
        assert_eq!(parse_type(&to_dsl(&t)).unwrap(), t);
        assert_eq!(from_json(&to_json(&t)).unwrap(), t);
        assert_eq!(to_latex(&t).matches(" = ").count(), 3);
    }
}
