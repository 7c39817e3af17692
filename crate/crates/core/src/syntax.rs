//! Text forms: carrier declarations, group presentations, group elements and
//! series expressions, plus the canonical printer for [`Series`].
//!
//! Series grammar:
//!
//! ```text
//! expr   := term (("+" | "-") term)*
//! term   := factor ("*" factor)*
//! factor := ("+" | "-") factor | atom ("^" ["-"] INT)?
//! atom   := INT ["/" INT] | "r2" | "t" ["^" "{" groupelt "}"] | ident | "(" expr ")"
//! ```
//!
//! `groupelt` is either a scalar, read as a value at chain point 0, or a list
//! of `(point, value)` pairs, optionally wrapped in braces. Every failure
//! carries the byte offset where it was detected.

use std::collections::BTreeMap;
use std::fmt;
use std::sync::Arc;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{ToPrimitive, Zero};

use crate::error::Error;
use crate::group::{ArchClass, ChainOrder, ChainPoint, GroupElement, GroupPresentation};
use crate::scalar::{FieldClass, Scalar};
use crate::series::Series;

/// Largest `|n|` accepted in `expr ^ n`.
pub const MAX_POWER: i64 = 256;
/// Largest number of terms an intermediate result may reach.
pub const MAX_TERMS: usize = 20_000;

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum ParseErrorKind {
    Syntax(String),
    UnknownIdent(String),
    ExponentOutsideGroup(String),
    OutsideField(String),
    BadOverride(String),
    /// The text parsed but folding it failed, e.g. a negative power of a
    /// non-monomial.
    Domain(Error),
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ParseError {
    pub kind: ParseErrorKind,
    /// Byte offset into the source.
    pub position: usize,
}

impl ParseError {
    fn syntax(position: usize, msg: impl Into<String>) -> Self {
        ParseError {
            kind: ParseErrorKind::Syntax(msg.into()),
            position,
        }
    }

    fn at(position: usize, kind: ParseErrorKind) -> Self {
        ParseError { kind, position }
    }

    /// Whether the input was malformed, as opposed to well-formed but
    /// rejected by the arithmetic.
    pub fn is_syntax(&self) -> bool {
        !matches!(self.kind, ParseErrorKind::Domain(_))
    }
}

impl fmt::Display for ParseError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let p = self.position;
        match &self.kind {
            ParseErrorKind::Syntax(m) => write!(f, "syntax error at byte {p}: {m}"),
            ParseErrorKind::UnknownIdent(n) => write!(f, "unknown identifier `{n}` at byte {p}"),
            ParseErrorKind::ExponentOutsideGroup(m) => {
                write!(f, "exponent outside the group at byte {p}: {m}")
            }
            ParseErrorKind::OutsideField(m) => {
                write!(f, "coefficient outside the field at byte {p}: {m}")
            }
            ParseErrorKind::BadOverride(m) => write!(f, "bad override at byte {p}: {m}"),
            ParseErrorKind::Domain(e) => write!(f, "at byte {p}: {e}"),
        }
    }
}

impl std::error::Error for ParseError {}

/// Active carriers and `let`-bindings of a session.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SessionContext {
    field: FieldClass,
    group: Arc<GroupPresentation>,
    bindings: BTreeMap<String, Series>,
}

impl SessionContext {
    pub fn new(field: FieldClass, group: GroupPresentation) -> Self {
        SessionContext {
            field,
            group: Arc::new(group),
            bindings: BTreeMap::new(),
        }
    }

    /// `field Rat|Root2; group HahnSum(...)`.
    pub fn parse_carriers(src: &str) -> Result<Self, ParseError> {
        let (field, group) = parse_group_spec(src)?;
        Ok(Self::new(field, group))
    }

    pub fn field(&self) -> FieldClass {
        self.field
    }

    pub fn group(&self) -> &Arc<GroupPresentation> {
        &self.group
    }

    /// Switches carriers. Bindings are dropped because they no longer
    /// share them.
    pub fn set_carriers(&mut self, field: FieldClass, group: GroupPresentation) {
        self.field = field;
        self.group = Arc::new(group);
        self.bindings.clear();
    }

    pub fn bind(&mut self, name: &str, value: Series) -> Result<(), Error> {
        if !is_identifier(name) || is_reserved(name) {
            return Err(Error::InvalidArgument(format!("`{name}` cannot be bound")));
        }
        if value.field() != self.field || value.group() != &self.group {
            return Err(Error::MixedCarriers);
        }
        self.bindings.insert(name.to_string(), value);
        Ok(())
    }

    pub fn binding(&self, name: &str) -> Option<&Series> {
        self.bindings.get(name)
    }

    pub fn bindings(&self) -> &BTreeMap<String, Series> {
        &self.bindings
    }
}

fn is_reserved(name: &str) -> bool {
    matches!(name, "t" | "r2")
}

fn is_identifier(name: &str) -> bool {
    let mut chars = name.chars();
    matches!(chars.next(), Some(c) if c.is_ascii_alphabetic() || c == '_')
        && chars.all(|c| c.is_ascii_alphanumeric() || c == '_')
}

#[derive(Debug, Clone, PartialEq, Eq)]
enum Tok {
    Int(BigInt),
    Ident(String),
    Sym(char),
    End,
}

#[derive(Debug, Clone)]
struct Token {
    tok: Tok,
    pos: usize,
}

fn lex(src: &str) -> Result<Vec<Token>, ParseError> {
    let bytes = src.as_bytes();
    let mut out = Vec::new();
    let mut i = 0;
    while i < bytes.len() {
        let c = bytes[i];
        if c.is_ascii_whitespace() {
            i += 1;
        } else if c.is_ascii_digit() {
            let start = i;
            while i < bytes.len() && bytes[i].is_ascii_digit() {
                i += 1;
            }
            let n: BigInt = src[start..i].parse().expect("ascii digits");
            out.push(Token {
                tok: Tok::Int(n),
                pos: start,
            });
        } else if c.is_ascii_alphabetic() || c == b'_' {
            let start = i;
            while i < bytes.len() && (bytes[i].is_ascii_alphanumeric() || bytes[i] == b'_') {
                i += 1;
            }
            out.push(Token {
                tok: Tok::Ident(src[start..i].to_string()),
                pos: start,
            });
        } else if b"+-*/^(){},:;".contains(&c) {
            out.push(Token {
                tok: Tok::Sym(c as char),
                pos: i,
            });
            i += 1;
        } else {
            let ch = src[i..].chars().next().expect("inside the string");
            return Err(ParseError::syntax(i, format!("unexpected character {ch:?}")));
        }
    }
    out.push(Token {
        tok: Tok::End,
        pos: src.len(),
    });
    Ok(out)
}

fn describe(t: &Tok) -> String {
    match t {
        Tok::Int(n) => format!("number {n}"),
        Tok::Ident(s) => format!("`{s}`"),
        Tok::Sym(c) => format!("`{c}`"),
        Tok::End => "end of input".to_string(),
    }
}

struct Parser<'a> {
    toks: Vec<Token>,
    i: usize,
    ctx: Option<&'a SessionContext>,
}

impl<'a> Parser<'a> {
    fn new(src: &str, ctx: Option<&'a SessionContext>) -> Result<Self, ParseError> {
        Ok(Parser {
            toks: lex(src)?,
            i: 0,
            ctx,
        })
    }

    fn peek(&self) -> &Tok {
        &self.toks[self.i].tok
    }

    fn peek2(&self) -> &Tok {
        &self.toks[(self.i + 1).min(self.toks.len() - 1)].tok
    }

    fn pos(&self) -> usize {
        self.toks[self.i].pos
    }

    fn bump(&mut self) -> Token {
        let t = self.toks[self.i].clone();
        if self.i + 1 < self.toks.len() {
            self.i += 1;
        }
        t
    }

    fn unexpected<T>(&self, wanted: &str) -> Result<T, ParseError> {
        Err(ParseError::syntax(
            self.pos(),
            format!("expected {wanted}, found {}", describe(self.peek())),
        ))
    }

    fn eat(&mut self, c: char) -> bool {
        if *self.peek() == Tok::Sym(c) {
            self.bump();
            true
        } else {
            false
        }
    }

    fn expect(&mut self, c: char) -> Result<(), ParseError> {
        if self.eat(c) {
            Ok(())
        } else {
            self.unexpected(&format!("`{c}`"))
        }
    }

    fn keyword(&mut self, word: &str) -> Result<(), ParseError> {
        match self.peek() {
            Tok::Ident(s) if s == word => {
                self.bump();
                Ok(())
            }
            _ => self.unexpected(&format!("`{word}`")),
        }
    }

    fn ident(&mut self, wanted: &str) -> Result<(String, usize), ParseError> {
        match self.peek().clone() {
            Tok::Ident(s) => {
                let pos = self.pos();
                self.bump();
                Ok((s, pos))
            }
            _ => self.unexpected(wanted),
        }
    }

    fn int(&mut self) -> Result<BigInt, ParseError> {
        match self.peek().clone() {
            Tok::Int(n) => {
                self.bump();
                Ok(n)
            }
            _ => self.unexpected("a number"),
        }
    }

    fn finish(&self) -> Result<(), ParseError> {
        match self.peek() {
            Tok::End => Ok(()),
            _ => self.unexpected("end of input"),
        }
    }

    /// `INT ["/" INT]`, unsigned.
    fn ratio(&mut self) -> Result<BigRational, ParseError> {
        let n = self.int()?;
        if self.eat('/') {
            let pos = self.pos();
            let d = self.int()?;
            if d.is_zero() {
                return Err(ParseError::syntax(pos, "zero denominator"));
            }
            Ok(BigRational::new(n, d))
        } else {
            Ok(BigRational::from_integer(n))
        }
    }

    fn signed_ratio(&mut self) -> Result<BigRational, ParseError> {
        let neg = self.eat('-');
        let q = self.ratio()?;
        Ok(if neg { -q } else { q })
    }

    /// `["-"] part (("+"|"-") part)*` with `part := ratio ["*" "r2"] | "r2"`.
    fn scalar_literal(&mut self) -> Result<Scalar, ParseError> {
        let mut acc = Scalar::zero();
        let mut negate = self.eat('-');
        loop {
            let part = match self.peek() {
                Tok::Ident(s) if s == "r2" => {
                    self.bump();
                    Scalar::sqrt2()
                }
                Tok::Int(_) => {
                    let q = Scalar::rational(self.ratio()?);
                    if *self.peek() == Tok::Sym('*') && matches!(self.peek2(), Tok::Ident(s) if s == "r2")
                    {
                        self.bump();
                        self.bump();
                        &q * &Scalar::sqrt2()
                    } else {
                        q
                    }
                }
                _ => return self.unexpected("a scalar"),
            };
            acc = if negate { &acc - &part } else { &acc + &part };
            if self.eat('+') {
                negate = false;
            } else if self.eat('-') {
                negate = true;
            } else {
                return Ok(acc);
            }
        }
    }

    fn chain(&mut self) -> Result<ChainOrder, ParseError> {
        let (name, pos) = self.ident("a chain")?;
        match name.as_str() {
            "Integers" => Ok(ChainOrder::Integers),
            "Rationals" => Ok(ChainOrder::Rationals),
            "Finite" => {
                self.expect('(')?;
                let pos = self.pos();
                let n = self.int()?;
                self.expect(')')?;
                n.to_u32()
                    .map(ChainOrder::Finite)
                    .ok_or_else(|| ParseError::syntax(pos, "chain length out of range"))
            }
            _ => Err(ParseError::syntax(
                pos,
                format!("unknown chain `{name}`, expected Finite(n), Integers or Rationals"),
            )),
        }
    }

    fn arch_class(&mut self) -> Result<ArchClass, ParseError> {
        let (name, pos) = self.ident("a component class")?;
        match name.as_str() {
            "Int" => Ok(ArchClass::Int),
            "Rat" => Ok(ArchClass::Rat),
            "RatRoot2" => Ok(ArchClass::RatRoot2),
            _ => Err(ParseError::syntax(
                pos,
                format!("unknown component `{name}`, expected Int, Rat or RatRoot2"),
            )),
        }
    }

    fn field(&mut self) -> Result<FieldClass, ParseError> {
        let (name, pos) = self.ident("a field")?;
        match name.as_str() {
            "Rat" => Ok(FieldClass::Rat),
            "Root2" => Ok(FieldClass::Root2),
            _ => Err(ParseError::syntax(
                pos,
                format!("unknown field `{name}`, expected Rat or Root2"),
            )),
        }
    }

    fn presentation(&mut self) -> Result<GroupPresentation, ParseError> {
        self.keyword("HahnSum")?;
        self.expect('(')?;
        let chain = self.chain()?;
        self.expect(';')?;
        let default = self.arch_class()?;
        let mut overrides = Vec::new();
        let mut seen = std::collections::BTreeSet::new();
        while self.eat(',') {
            let pos = self.pos();
            let p = self.signed_ratio()?;
            self.expect(':')?;
            let class = self.arch_class()?;
            let point = ChainPoint::new(p);
            let bad = |m: String| Err(ParseError::at(pos, ParseErrorKind::BadOverride(m)));
            if !chain.is_finite() {
                return bad(format!("overrides are only allowed on finite chains, not {chain}"));
            }
            if !chain.contains(&point) {
                return bad(format!("{point} is not a point of {chain}"));
            }
            if !seen.insert(point.clone()) {
                return bad(format!("duplicate override at chain point {point}"));
            }
            overrides.push((point, class));
        }
        self.expect(')')?;
        GroupPresentation::with_overrides(chain, default, overrides).map_err(|e| {
            ParseError::at(self.pos(), ParseErrorKind::BadOverride(e.to_string()))
        })
    }

    fn group_spec(&mut self) -> Result<(FieldClass, GroupPresentation), ParseError> {
        self.keyword("field")?;
        let field = self.field()?;
        self.expect(';')?;
        self.keyword("group")?;
        let group = self.presentation()?;
        self.eat(';');
        Ok((field, group))
    }

    /// Body of a group element, up to but excluding a closing `}`.
    fn group_element_body(
        &mut self,
        group: &Arc<GroupPresentation>,
    ) -> Result<GroupElement, ParseError> {
        let start = self.pos();
        let braced = self.eat('{');
        let mut terms = Vec::new();
        let is_pair = *self.peek() == Tok::Sym('(');
        if braced && *self.peek() == Tok::Sym('}') {
            // empty: the zero element
        } else if is_pair {
            loop {
                self.expect('(')?;
                let p = self.signed_ratio()?;
                self.expect(',')?;
                let v = self.scalar_literal()?;
                self.expect(')')?;
                terms.push((ChainPoint::new(p), v));
                if !self.eat(',') {
                    break;
                }
            }
        } else if !braced && *self.peek() == Tok::Sym('}') {
            // `t^{}`
        } else {
            let v = self.scalar_literal()?;
            terms.push((ChainPoint::index(0), v));
        }
        if braced {
            self.expect('}')?;
        }
        GroupElement::from_terms(group.clone(), terms)
            .map_err(|e| ParseError::at(start, ParseErrorKind::ExponentOutsideGroup(e.to_string())))
    }

    fn ctx(&self) -> &'a SessionContext {
        self.ctx.expect("series parsing needs a context")
    }

    fn constant(&self, c: Scalar, pos: usize) -> Result<Series, ParseError> {
        let ctx = self.ctx();
        Series::constant(ctx.field, ctx.group.clone(), c)
            .map_err(|e| ParseError::at(pos, ParseErrorKind::OutsideField(e.to_string())))
    }

    fn expr(&mut self) -> Result<Series, ParseError> {
        let mut acc = self.term()?;
        loop {
            let pos = self.pos();
            if self.eat('+') {
                let rhs = self.term()?;
                acc = fold(pos, acc.try_add(&rhs))?;
            } else if self.eat('-') {
                let rhs = self.term()?;
                acc = fold(pos, acc.try_sub(&rhs))?;
            } else {
                return Ok(acc);
            }
        }
    }

    fn term(&mut self) -> Result<Series, ParseError> {
        let mut acc = self.factor()?;
        loop {
            let pos = self.pos();
            if !self.eat('*') {
                return Ok(acc);
            }
            let rhs = self.factor()?;
            acc = checked_mul(pos, &acc, &rhs)?;
        }
    }

    fn factor(&mut self) -> Result<Series, ParseError> {
        if self.eat('-') {
            return Ok(self.factor()?.neg());
        }
        if self.eat('+') {
            return self.factor();
        }
        let base = self.atom()?;
        let pos = self.pos();
        if !self.eat('^') {
            return Ok(base);
        }
        if *self.peek() == Tok::Sym('{') {
            return Err(ParseError::syntax(pos, "`^{...}` exponents only apply to `t`"));
        }
        let neg = self.eat('-');
        let npos = self.pos();
        let n = self.int()?;
        let n = n
            .to_i64()
            .filter(|n| *n <= MAX_POWER)
            .ok_or_else(|| ParseError::syntax(npos, format!("power exceeds {MAX_POWER}")))?;
        power(pos, &base, if neg { -n } else { n })
    }

    fn atom(&mut self) -> Result<Series, ParseError> {
        let pos = self.pos();
        match self.peek().clone() {
            Tok::Int(_) => {
                let q = self.ratio()?;
                self.constant(Scalar::rational(q), pos)
            }
            Tok::Sym('(') => {
                self.bump();
                let inner = self.expr()?;
                self.expect(')')?;
                Ok(inner)
            }
            Tok::Ident(name) => {
                self.bump();
                match name.as_str() {
                    "r2" => self.constant(Scalar::sqrt2(), pos),
                    "t" => {
                        let ctx = self.ctx();
                        if *self.peek() == Tok::Sym('^') && *self.peek2() == Tok::Sym('{') {
                            self.bump();
                            self.bump();
                            let e = self.group_element_body(&ctx.group)?;
                            self.expect('}')?;
                            fold(pos, Series::monomial(ctx.field, e, Scalar::one()))
                        } else {
                            Series::t(ctx.field, ctx.group.clone()).map_err(|e| {
                                ParseError::at(pos, ParseErrorKind::ExponentOutsideGroup(e.to_string()))
                            })
                        }
                    }
                    _ => self.ctx().binding(&name).cloned().ok_or(ParseError::at(
                        pos,
                        ParseErrorKind::UnknownIdent(name),
                    )),
                }
            }
            _ => self.unexpected("a number, `t`, `r2`, a name or `(`"),
        }
    }
}

fn fold(pos: usize, r: crate::error::Result<Series>) -> Result<Series, ParseError> {
    r.map_err(|e| ParseError::at(pos, ParseErrorKind::Domain(e)))
}

fn too_large(pos: usize) -> ParseError {
    ParseError::at(
        pos,
        ParseErrorKind::Domain(Error::InvalidArgument(format!(
            "expression expands beyond {MAX_TERMS} terms"
        ))),
    )
}

fn checked_mul(pos: usize, x: &Series, y: &Series) -> Result<Series, ParseError> {
    if x.terms().len().saturating_mul(y.terms().len()) > MAX_TERMS * 16 {
        return Err(too_large(pos));
    }
    let r = fold(pos, x.try_mul(y))?;
    if r.terms().len() > MAX_TERMS {
        return Err(too_large(pos));
    }
    Ok(r)
}

fn power(pos: usize, base: &Series, n: i64) -> Result<Series, ParseError> {
    if n < 0 || base.terms().len() <= 1 {
        return fold(pos, base.pow(n));
    }
    let mut acc = Series::one(base.field(), base.group().clone());
    for _ in 0..n {
        acc = checked_mul(pos, &acc, base)?;
    }
    Ok(acc)
}

/// `field Rat|Root2; group HahnSum(...)`.
pub fn parse_group_spec(src: &str) -> Result<(FieldClass, GroupPresentation), ParseError> {
    let mut p = Parser::new(src, None)?;
    let out = p.group_spec()?;
    p.finish()?;
    Ok(out)
}

/// `HahnSum(chain; comp, point:comp, ...)`.
pub fn parse_presentation(src: &str) -> Result<GroupPresentation, ParseError> {
    let mut p = Parser::new(src, None)?;
    let g = p.presentation()?;
    p.finish()?;
    Ok(g)
}

/// `Rat` or `Root2`.
pub fn parse_field(src: &str) -> Result<FieldClass, ParseError> {
    let mut p = Parser::new(src, None)?;
    let f = p.field()?;
    p.finish()?;
    Ok(f)
}

/// `Int`, `Rat` or `RatRoot2`.
pub fn parse_arch_class(src: &str) -> Result<ArchClass, ParseError> {
    let mut p = Parser::new(src, None)?;
    let c = p.arch_class()?;
    p.finish()?;
    Ok(c)
}

/// A scalar such as `-3/4` or `1+2*r2`.
pub fn parse_scalar(src: &str) -> Result<Scalar, ParseError> {
    let mut p = Parser::new(src, None)?;
    let s = p.scalar_literal()?;
    p.finish()?;
    Ok(s)
}

/// `{(p, v), ...}`, the same list without braces, or a bare scalar meaning
/// that value at chain point 0.
pub fn parse_group_element(
    src: &str,
    group: &Arc<GroupPresentation>,
) -> Result<GroupElement, ParseError> {
    let mut p = Parser::new(src, None)?;
    let g = p.group_element_body(group)?;
    p.finish()?;
    Ok(g)
}

pub fn parse_series(src: &str, ctx: &SessionContext) -> Result<Series, ParseError> {
    let mut p = Parser::new(src, Some(ctx))?;
    let s = p.expr()?;
    p.finish()?;
    Ok(s)
}

/// [`parse_series`] on raw bytes; invalid UTF-8 is a syntax error at the
/// first bad byte.
pub fn parse_series_bytes(src: &[u8], ctx: &SessionContext) -> Result<Series, ParseError> {
    match std::str::from_utf8(src) {
        Ok(s) => parse_series(s, ctx),
        Err(e) => Err(ParseError::syntax(e.valid_up_to(), "invalid UTF-8")),
    }
}

/// The exponent as it appears inside `t^{...}`.
pub fn format_exponent(g: &GroupElement) -> String {
    match g.terms() {
        [(p, v)] if p.position().is_zero() => v.to_string(),
        terms => terms
            .iter()
            .map(|(p, v)| format!("({p}, {v})"))
            .collect::<Vec<_>>()
            .join(", "),
    }
}

impl fmt::Display for Series {
    /// Terms in ascending exponent order, e.g. `3*t^{-1/2} + 2 - 5*t^{2/3}`.
    /// Coefficients with both a rational and a `r2` part are parenthesized.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return f.write_str("0");
        }
        for (i, (e, c)) in self.terms().iter().enumerate() {
            let mixed = !c.a().is_zero() && !c.b().is_zero();
            let (negative, mag) = if mixed {
                (false, c.clone())
            } else {
                (c.is_negative(), c.abs())
            };
            match (i, negative) {
                (0, true) => f.write_str("-")?,
                (0, false) => {}
                (_, true) => f.write_str(" - ")?,
                (_, false) => f.write_str(" + ")?,
            }
            let coeff = if mixed {
                format!("({mag})")
            } else {
                mag.to_string()
            };
            if e.is_zero() {
                f.write_str(&coeff)?;
                continue;
            }
            if !mag.is_one() {
                write!(f, "{coeff}*")?;
            }
            let x = format_exponent(e);
            if x == "1" {
                f.write_str("t")?;
            } else {
                write!(f, "t^{{{x}}}")?;
            }
        }
        Ok(())
    }
}
