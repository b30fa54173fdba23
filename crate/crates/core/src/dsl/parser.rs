use std::collections::HashMap;

use num_traits::{One, Zero};

use super::lexer::{tokenize, Token, TokenKind};
use super::{ParseError, ParseErrorKind, SourceSpan};
use crate::exactalg::{Matrix, Rational};
use crate::typecore::{RelationElement, TypePresentation};

/// `coef * name`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LinTerm {
    pub coef: Rational,
    pub name: String,
    pub span: SourceSpan,
}

/// Rational combination of generator or auxiliary names.
#[derive(Clone, Debug, PartialEq, Eq, Default)]
pub struct LinComb {
    pub terms: Vec<LinTerm>,
}

/// `coef * (left) . (right)`: the tensor `left ⊗ right`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BilinTerm {
    pub coef: Rational,
    pub left: LinComb,
    pub right: LinComb,
}

/// One side of a relation; empty for `0`.
#[derive(Clone, Debug, PartialEq, Eq, Default)]
pub struct Bilin {
    pub terms: Vec<BilinTerm>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RelationAst {
    pub left: Bilin,
    pub right: Bilin,
    pub span: SourceSpan,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AuxDef {
    pub name: String,
    pub span: SourceSpan,
    pub value: LinComb,
}

/// Syntax tree of one `type` block, before name resolution.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TypeDoc {
    pub name: String,
    pub name_span: SourceSpan,
    pub generators: Vec<(String, SourceSpan)>,
    /// `None` for `star: none`.
    pub star: Option<LinComb>,
    pub aux: Vec<AuxDef>,
    pub relations: Vec<RelationAst>,
}

struct Parser {
    tokens: Vec<Token>,
    pos: usize,
}

impl Parser {
    fn peek(&self) -> &Token {
        &self.tokens[self.pos]
    }

    fn next(&mut self) -> Token {
        let t = self.tokens[self.pos].clone();
        if !matches!(t.kind, TokenKind::Eof) {
            self.pos += 1;
        }
        t
    }

    fn at_punct(&self, c: char) -> bool {
        self.peek().kind == TokenKind::Punct(c)
    }

    fn error(&self, message: impl Into<String>) -> ParseError {
        ParseError::new(ParseErrorKind::Syntax, message, self.peek().span)
    }

    fn describe(kind: &TokenKind) -> String {
        match kind {
            TokenKind::Ident(s) => format!("`{s}`"),
            TokenKind::Quoted(s) => format!("\"{s}\""),
            TokenKind::Int(n) => format!("`{n}`"),
            TokenKind::Punct(c) => format!("`{c}`"),
            TokenKind::Eof => "end of input".into(),
        }
    }

    fn expect_punct(&mut self, c: char) -> Result<SourceSpan, ParseError> {
        if self.at_punct(c) {
            Ok(self.next().span)
        } else {
            Err(self.error(format!(
                "expected `{c}`, found {}",
                Self::describe(&self.peek().kind)
            )))
        }
    }

    fn expect_keyword(&mut self, kw: &str) -> Result<(), ParseError> {
        match &self.peek().kind {
            TokenKind::Ident(s) if s == kw => {
                self.next();
                Ok(())
            }
            other => Err(self.error(format!("expected `{kw}`, found {}", Self::describe(other)))),
        }
    }

    fn at_keyword(&self, kw: &str) -> bool {
        matches!(&self.peek().kind, TokenKind::Ident(s) if s == kw)
    }

    fn name(&mut self) -> Result<(String, SourceSpan), ParseError> {
        match self.peek().kind.clone() {
            TokenKind::Ident(s) | TokenKind::Quoted(s) => {
                let span = self.next().span;
                Ok((s, span))
            }
            other => Err(self.error(format!("expected a name, found {}", Self::describe(&other)))),
        }
    }

    /// `INT ("/" INT)?`
    fn coefficient(&mut self) -> Result<Rational, ParseError> {
        let TokenKind::Int(p) = self.next().kind else {
            unreachable!("caller checked")
        };
        if self.at_punct('/') {
            self.next();
            let span = self.peek().span;
            match self.next().kind {
                TokenKind::Int(q) if !q.is_zero() => Ok(Rational::new(p, q)),
                TokenKind::Int(_) => Err(ParseError::new(
                    ParseErrorKind::Syntax,
                    "zero denominator",
                    span,
                )),
                _ => Err(ParseError::new(
                    ParseErrorKind::Syntax,
                    "expected a denominator",
                    span,
                )),
            }
        } else {
            Ok(Rational::from_integer(p))
        }
    }

    /// Leading sign of a term: `+`, `-` or nothing (only for the first term).
    fn sign(&mut self, first: bool) -> Result<Option<bool>, ParseError> {
        if self.at_punct('+') {
            self.next();
            Ok(Some(false))
        } else if self.at_punct('-') {
            self.next();
            Ok(Some(true))
        } else if first {
            Ok(Some(false))
        } else {
            Ok(None)
        }
    }

    /// `[COEF "*"]`
    fn optional_scale(&mut self) -> Result<Rational, ParseError> {
        if matches!(self.peek().kind, TokenKind::Int(_)) {
            let c = self.coefficient()?;
            self.expect_punct('*')?;
            Ok(c)
        } else {
            Ok(Rational::one())
        }
    }

    fn lincomb(&mut self) -> Result<LinComb, ParseError> {
        let mut terms = Vec::new();
        let mut first = true;
        while let Some(neg) = self.sign(first)? {
            let coef = self.optional_scale()?;
            let (name, span) = self.name()?;
            terms.push(LinTerm {
                coef: if neg { -coef } else { coef },
                name,
                span,
            });
            first = false;
        }
        Ok(LinComb { terms })
    }

    fn factor(&mut self) -> Result<LinComb, ParseError> {
        if self.at_punct('(') {
            self.next();
            let l = self.lincomb()?;
            self.expect_punct(')')?;
            Ok(l)
        } else {
            let (name, span) = self.name()?;
            Ok(LinComb {
                terms: vec![LinTerm {
                    coef: Rational::one(),
                    name,
                    span,
                }],
            })
        }
    }

    fn bilin(&mut self) -> Result<Bilin, ParseError> {
        if let TokenKind::Int(n) = &self.peek().kind {
            let is_zero_side = n.is_zero()
                && matches!(
                    self.tokens.get(self.pos + 1).map(|t| &t.kind),
                    Some(TokenKind::Punct('|')) | Some(TokenKind::Punct(')'))
                );
            if is_zero_side {
                self.next();
                return Ok(Bilin::default());
            }
        }
        let mut terms = Vec::new();
        let mut first = true;
        while let Some(neg) = self.sign(first)? {
            let coef = self.optional_scale()?;
            let left = self.factor()?;
            self.expect_punct('.')?;
            let right = self.factor()?;
            terms.push(BilinTerm {
                coef: if neg { -coef } else { coef },
                left,
                right,
            });
            first = false;
        }
        Ok(Bilin { terms })
    }

    fn section_end(&mut self) -> Result<(), ParseError> {
        if self.at_punct(';') {
            self.next();
            Ok(())
        } else if self.at_punct('}') {
            Ok(())
        } else {
            Err(self.error(format!(
                "expected `;`, found {}",
                Self::describe(&self.peek().kind)
            )))
        }
    }

    fn document(&mut self) -> Result<TypeDoc, ParseError> {
        self.expect_keyword("type")?;
        let (name, name_span) = self.name()?;
        self.expect_punct('{')?;

        self.expect_keyword("generators")?;
        self.expect_punct(':')?;
        let mut generators = vec![self.name()?];
        while self.at_punct(',') {
            self.next();
            generators.push(self.name()?);
        }
        self.section_end()?;

        self.expect_keyword("star")?;
        self.expect_punct(':')?;
        let star = if self.at_keyword("none") {
            self.next();
            None
        } else {
            Some(self.lincomb()?)
        };
        self.section_end()?;

        let mut aux = Vec::new();
        if self.at_keyword("aux") {
            self.next();
            self.expect_punct(':')?;
            loop {
                let (name, span) = self.name()?;
                self.expect_punct('=')?;
                aux.push(AuxDef {
                    name,
                    span,
                    value: self.lincomb()?,
                });
                if !self.at_punct(',') {
                    break;
                }
                self.next();
            }
            self.section_end()?;
        }

        let mut relations = Vec::new();
        if self.at_keyword("relations") {
            self.next();
            self.expect_punct(':')?;
            while self.at_punct('(') {
                let open = self.next().span;
                let left = self.bilin()?;
                self.expect_punct('|')?;
                let right = self.bilin()?;
                let close = self.expect_punct(')')?;
                relations.push(RelationAst {
                    left,
                    right,
                    span: open.to(close),
                });
            }
            if relations.is_empty() {
                return Err(self.error("expected `(` starting a relation"));
            }
            self.section_end()?;
        }
        self.expect_punct('}')?;
        if !matches!(self.peek().kind, TokenKind::Eof) {
            return Err(self.error("unexpected input after type block"));
        }
        Ok(TypeDoc {
            name,
            name_span,
            generators,
            star,
            aux,
            relations,
        })
    }
}

pub fn parse_document(text: &str) -> Result<TypeDoc, ParseError> {
    let mut p = Parser {
        tokens: tokenize(text)?,
        pos: 0,
    };
    p.document()
}

impl TypeDoc {
    /// Resolves names and builds the presentation without validating it.
    pub fn to_presentation(&self) -> Result<TypePresentation, ParseError> {
        let m = self.generators.len();
        let mut env: HashMap<&str, Vec<Rational>> = HashMap::new();
        let mut names = Vec::with_capacity(m);
        for (i, (g, span)) in self.generators.iter().enumerate() {
            let mut e = vec![Rational::zero(); m];
            e[i] = Rational::one();
            if env.insert(g.as_str(), e).is_some() {
                return Err(ParseError::new(
                    ParseErrorKind::DuplicateGenerator,
                    format!("duplicate generator `{g}`"),
                    *span,
                ));
            }
            names.push(g.clone());
        }
        let mut aux = Vec::new();
        for def in &self.aux {
            let v = eval_lincomb(&def.value, &env, m)?;
            if env.contains_key(def.name.as_str()) {
                return Err(ParseError::new(
                    ParseErrorKind::DuplicateGenerator,
                    format!("`{}` is already defined", def.name),
                    def.span,
                ));
            }
            env.insert(def.name.as_str(), v.clone());
            aux.push((def.name.clone(), v));
        }
        let star = self
            .star
            .as_ref()
            .map(|s| eval_lincomb(s, &env, m))
            .transpose()?;
        let mut relations = Vec::with_capacity(self.relations.len());
        for r in &self.relations {
            relations.push(RelationElement {
                left: eval_bilin(&r.left, &env, m)?,
                right: eval_bilin(&r.right, &env, m)?,
            });
        }
        TypePresentation::new(self.name.clone(), names, star, relations, aux)
            .map_err(|e| ParseError::new(ParseErrorKind::Syntax, e.to_string(), self.name_span))
    }
}

pub(crate) fn eval_lincomb(
    l: &LinComb,
    env: &HashMap<&str, Vec<Rational>>,
    m: usize,
) -> Result<Vec<Rational>, ParseError> {
    let mut acc = vec![Rational::zero(); m];
    for t in &l.terms {
        let v = env.get(t.name.as_str()).ok_or_else(|| {
            ParseError::new(
                ParseErrorKind::UnknownIdentifier,
                format!("unknown identifier `{}`", t.name),
                t.span,
            )
        })?;
        for (a, x) in acc.iter_mut().zip(v) {
            *a += &t.coef * x;
        }
    }
    Ok(acc)
}

fn eval_bilin(
    b: &Bilin,
    env: &HashMap<&str, Vec<Rational>>,
    m: usize,
) -> Result<Matrix<Rational>, ParseError> {
    let mut out: Matrix<Rational> = Matrix::zeros(m, m);
    for t in &b.terms {
        let u = eval_lincomb(&t.left, env, m)?;
        let v = eval_lincomb(&t.right, env, m)?;
        for (i, ui) in u.iter().enumerate() {
            if ui.is_zero() {
                continue;
            }
            for (j, vj) in v.iter().enumerate() {
                if !vj.is_zero() {
                    let cur = out.get(i, j).clone();
                    out.set(i, j, cur + &t.coef * ui * vj);
                }
            }
        }
    }
    Ok(out)
}
