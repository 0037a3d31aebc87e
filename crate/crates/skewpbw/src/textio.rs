//! Line-oriented text format for algebras and extensions.
//!
//! An algebra file declares, in order: `algebra <name>`, `field Q` or
//! `field GF <p>`, optional `param <name> = <scalar>` lines, one
//! `gen <name>:<weight> ...` line, and `rel <polynomial>` lines. An
//! extension file continues with `extend <name>` (repeating the algebra
//! name), a `var <x1> <x2> ...` line, and optional `sigma <x>: <t> ->
//! <poly>`, `delta <x>: <t> -> <poly>`, `c <i> <j> = <scalar>`, and
//! `lower <xj> <xi> = <poly>` lines; omitted entries keep the defaults
//! sigma = id, delta = 0, c = 1, lower = 0. `#` starts a comment.
//! Parameters are substituted while parsing, so the result carries
//! concrete scalars only.

use std::collections::BTreeMap;
use std::sync::Arc;

use crate::catalog::CatalogItem;
use crate::extension::{ExtensionBuilder, ExtensionData};
use crate::freealg::{Context, FreePoly, GeneratorOrder, Word};
use crate::presentation::Presentation;
use crate::scalar::{FieldSpec, Scalar};
use crate::{Error, Result};

#[derive(Clone, Debug, PartialEq)]
enum Tok {
    Name(String),
    Num(i64),
    Plus,
    Minus,
    Star,
    Caret,
    Slash,
}

struct Spanned {
    tok: Tok,
    col: usize,
}

fn parse_err(line: usize, col: usize, msg: impl Into<String>) -> Error {
    Error::Parse {
        line,
        col,
        msg: msg.into(),
    }
}

/// Columns are 1-based character offsets into the original line; `col0`
/// is the offset of `text` within it.
fn tokenize(line: usize, col0: usize, text: &str) -> Result<Vec<Spanned>> {
    let mut out = Vec::new();
    let chars: Vec<char> = text.chars().collect();
    let mut i = 0;
    while i < chars.len() {
        let c = chars[i];
        let col = col0 + i + 1;
        if c.is_whitespace() {
            i += 1;
            continue;
        }
        if c.is_ascii_alphabetic() || c == '_' {
            let start = i;
            while i < chars.len() && (chars[i].is_ascii_alphanumeric() || chars[i] == '_') {
                i += 1;
            }
            let name: String = chars[start..i].iter().collect();
            out.push(Spanned {
                tok: Tok::Name(name),
                col,
            });
            continue;
        }
        if c.is_ascii_digit() {
            let start = i;
            while i < chars.len() && chars[i].is_ascii_digit() {
                i += 1;
            }
            let digits: String = chars[start..i].iter().collect();
            let value: i64 = digits
                .parse()
                .map_err(|_| parse_err(line, col, format!("number {digits} is too large")))?;
            out.push(Spanned {
                tok: Tok::Num(value),
                col,
            });
            continue;
        }
        let tok = match c {
            '+' => Tok::Plus,
            '-' => Tok::Minus,
            '*' => Tok::Star,
            '^' => Tok::Caret,
            '/' => Tok::Slash,
            _ => return Err(parse_err(line, col, format!("unexpected character '{c}'"))),
        };
        out.push(Spanned { tok, col });
        i += 1;
    }
    Ok(out)
}

struct ExprParser<'a> {
    toks: Vec<Spanned>,
    line: usize,
    end_col: usize,
    params: &'a BTreeMap<String, Scalar>,
}

impl<'a> ExprParser<'a> {
    fn new(
        line: usize,
        col0: usize,
        text: &str,
        params: &'a BTreeMap<String, Scalar>,
    ) -> Result<Self> {
        let toks = tokenize(line, col0, text)?;
        let end_col = col0 + text.chars().count() + 1;
        Ok(ExprParser {
            toks,
            line,
            end_col,
            params,
        })
    }

    fn col_at(&self, pos: usize) -> usize {
        self.toks.get(pos).map_or(self.end_col, |s| s.col)
    }

    fn expect_num(&self, pos: &mut usize, what: &str) -> Result<i64> {
        match self.toks.get(*pos) {
            Some(Spanned {
                tok: Tok::Num(n), ..
            }) => {
                *pos += 1;
                Ok(*n)
            }
            _ => Err(parse_err(
                self.line,
                self.col_at(*pos),
                format!("expected {what}"),
            )),
        }
    }

    /// factor := num (/ num)? | name (^ num)?; names resolve to parameters
    /// or generators of `ctx`.
    fn factor(&self, pos: &mut usize, ctx: &Arc<Context>) -> Result<(Scalar, Vec<u32>)> {
        let col = self.col_at(*pos);
        match self.toks.get(*pos) {
            Some(Spanned {
                tok: Tok::Num(n), ..
            }) => {
                *pos += 1;
                if let Some(Spanned {
                    tok: Tok::Slash, ..
                }) = self.toks.get(*pos)
                {
                    *pos += 1;
                    let den_col = self.col_at(*pos);
                    let den = self.expect_num(pos, "a denominator")?;
                    let s = ctx
                        .field
                        .fraction(*n, den)
                        .map_err(|e| parse_err(self.line, den_col, e.to_string()))?;
                    Ok((s, Vec::new()))
                } else {
                    Ok((ctx.field.integer(*n), Vec::new()))
                }
            }
            Some(Spanned {
                tok: Tok::Name(name),
                ..
            }) => {
                *pos += 1;
                let mut exp = 1u32;
                if let Some(Spanned {
                    tok: Tok::Caret, ..
                }) = self.toks.get(*pos)
                {
                    *pos += 1;
                    let e = self.expect_num(pos, "an exponent")?;
                    exp = u32::try_from(e)
                        .map_err(|_| parse_err(self.line, col, "exponent must be nonnegative"))?;
                }
                if let Some(s) = self.params.get(name) {
                    return Ok((s.pow(exp), Vec::new()));
                }
                match ctx.order.index_of(name) {
                    Some(g) => Ok((ctx.field.one(), vec![g as u32; exp as usize])),
                    None => Err(parse_err(
                        self.line,
                        col,
                        format!("unknown name '{name}'"),
                    )),
                }
            }
            _ => Err(parse_err(self.line, col, "expected a factor")),
        }
    }

    fn term(&self, pos: &mut usize, ctx: &Arc<Context>) -> Result<(Scalar, Vec<u32>)> {
        let (mut coef, mut letters) = self.factor(pos, ctx)?;
        while let Some(Spanned { tok: Tok::Star, .. }) = self.toks.get(*pos) {
            *pos += 1;
            let (c, mut l) = self.factor(pos, ctx)?;
            coef = coef.mul(&c);
            letters.append(&mut l);
        }
        Ok((coef, letters))
    }

    fn poly(&self, ctx: &Arc<Context>) -> Result<FreePoly> {
        let mut pos = 0;
        if self.toks.is_empty() {
            return Err(parse_err(self.line, self.end_col, "expected a polynomial"));
        }
        let mut terms: Vec<(Word, Scalar)> = Vec::new();
        let mut negate = false;
        if let Some(Spanned { tok: Tok::Minus, .. }) = self.toks.get(pos) {
            negate = true;
            pos += 1;
        } else if let Some(Spanned { tok: Tok::Plus, .. }) = self.toks.get(pos) {
            pos += 1;
        }
        loop {
            let (coef, letters) = self.term(&mut pos, ctx)?;
            let coef = if negate { coef.neg() } else { coef };
            terms.push((Word::from_letters(letters), coef));
            match self.toks.get(pos) {
                None => break,
                Some(Spanned { tok: Tok::Plus, .. }) => {
                    negate = false;
                    pos += 1;
                }
                Some(Spanned { tok: Tok::Minus, .. }) => {
                    negate = true;
                    pos += 1;
                }
                Some(s) => {
                    return Err(parse_err(self.line, s.col, "expected '+' or '-'"));
                }
            }
        }
        Ok(FreePoly::from_terms(ctx, terms))
    }

    /// scalar := [-] (num (/ num)? | param-name)
    fn scalar(&self, field: FieldSpec) -> Result<Scalar> {
        let mut pos = 0;
        let mut negate = false;
        if let Some(Spanned { tok: Tok::Minus, .. }) = self.toks.get(pos) {
            negate = true;
            pos += 1;
        }
        let col = self.col_at(pos);
        let s = match self.toks.get(pos) {
            Some(Spanned {
                tok: Tok::Num(n), ..
            }) => {
                pos += 1;
                if let Some(Spanned {
                    tok: Tok::Slash, ..
                }) = self.toks.get(pos)
                {
                    pos += 1;
                    let den_col = self.col_at(pos);
                    let den = self.expect_num(&mut pos, "a denominator")?;
                    field
                        .fraction(*n, den)
                        .map_err(|e| parse_err(self.line, den_col, e.to_string()))?
                } else {
                    field.integer(*n)
                }
            }
            Some(Spanned {
                tok: Tok::Name(name),
                ..
            }) => {
                pos += 1;
                match self.params.get(name) {
                    Some(s) => s.clone(),
                    None => {
                        return Err(parse_err(
                            self.line,
                            col,
                            format!("unknown parameter '{name}'"),
                        ))
                    }
                }
            }
            _ => return Err(parse_err(self.line, col, "expected a scalar")),
        };
        if pos != self.toks.len() {
            return Err(parse_err(
                self.line,
                self.col_at(pos),
                "trailing input after scalar",
            ));
        }
        Ok(if negate { s.neg() } else { s })
    }
}

/// Parses a standalone scalar literal such as `2`, `-1`, or `1/3`.
pub fn parse_scalar_literal(field: FieldSpec, text: &str) -> Result<Scalar> {
    let params = BTreeMap::new();
    ExprParser::new(1, 0, text, &params)?.scalar(field)
}

/// Parses a polynomial over `ctx`, with no parameters in scope.
pub fn parse_poly(ctx: &Arc<Context>, text: &str) -> Result<FreePoly> {
    let params = BTreeMap::new();
    ExprParser::new(1, 0, text, &params)?.poly(ctx)
}

struct FileParser<'a> {
    overrides: &'a BTreeMap<String, String>,
    overrides_used: Vec<String>,
    name: Option<String>,
    field: Option<FieldSpec>,
    params: BTreeMap<String, Scalar>,
    ctx: Option<Arc<Context>>,
    rels: Vec<FreePoly>,
    builder: Option<ExtensionBuilder>,
    vars: Vec<String>,
    extend_seen: bool,
}

/// Splits the first whitespace-delimited token off `text`, returning
/// (token, its char offset, rest, rest's char offset), offsets relative
/// to the start of `text`.
fn split_word(text: &str) -> Option<(&str, usize, &str, usize)> {
    let mut chars = text.char_indices();
    let mut start = None;
    for (i, c) in chars.by_ref() {
        if !c.is_whitespace() {
            start = Some(i);
            break;
        }
    }
    let start = start?;
    let end = text[start..]
        .find(char::is_whitespace)
        .map_or(text.len(), |o| start + o);
    let rest_start = text[end..]
        .find(|c: char| !c.is_whitespace())
        .map_or(text.len(), |o| end + o);
    Some((
        &text[start..end],
        text[..start].chars().count(),
        &text[rest_start..],
        text[..rest_start].chars().count(),
    ))
}

impl<'a> FileParser<'a> {
    fn new(overrides: &'a BTreeMap<String, String>) -> Self {
        FileParser {
            overrides,
            overrides_used: Vec::new(),
            name: None,
            field: None,
            params: BTreeMap::new(),
            ctx: None,
            rels: Vec::new(),
            builder: None,
            vars: Vec::new(),
            extend_seen: false,
        }
    }

    fn field_for(&self, line: usize, col: usize) -> Result<FieldSpec> {
        self.field
            .ok_or_else(|| parse_err(line, col, "a 'field' line must come first"))
    }

    fn ctx_for(&self, line: usize, col: usize) -> Result<&Arc<Context>> {
        self.ctx
            .as_ref()
            .ok_or_else(|| parse_err(line, col, "a 'gen' line must come first"))
    }

    fn var_index(&self, line: usize, col: usize, name: &str) -> Result<usize> {
        self.vars
            .iter()
            .position(|v| v == name)
            .ok_or_else(|| parse_err(line, col, format!("unknown variable '{name}'")))
    }

    /// `key_off` and `rest_off` are 0-based character offsets into the
    /// original line; error columns are 1-based.
    fn handle(&mut self, line_no: usize, key: &str, key_off: usize, rest: &str, rest_off: usize) -> Result<()> {
        if self.name.is_none() && key != "algebra" {
            return Err(parse_err(
                line_no,
                key_off + 1,
                "expected 'algebra <name>' on the first line",
            ));
        }
        match key {
            "algebra" => self.line_algebra(line_no, rest, rest_off),
            "field" => self.line_field(line_no, rest, rest_off),
            "param" => self.line_param(line_no, rest, rest_off),
            "gen" => self.line_gen(line_no, rest, rest_off),
            "rel" => self.line_rel(line_no, rest, rest_off),
            "extend" => self.line_extend(line_no, rest, rest_off),
            "var" => self.line_var(line_no, rest, rest_off),
            "sigma" => self.line_map(line_no, rest, rest_off, true),
            "delta" => self.line_map(line_no, rest, rest_off, false),
            "c" => self.line_c(line_no, rest, rest_off),
            "lower" => self.line_lower(line_no, rest, rest_off),
            _ => Err(parse_err(
                line_no,
                key_off + 1,
                format!("unknown key '{key}'"),
            )),
        }
    }

    fn line_algebra(&mut self, line: usize, rest: &str, off: usize) -> Result<()> {
        if self.name.is_some() {
            return Err(parse_err(line, off + 1, "duplicate 'algebra' line"));
        }
        let name = rest.trim();
        if name.is_empty() || name.split_whitespace().count() != 1 {
            return Err(parse_err(line, off + 1, "expected 'algebra <name>'"));
        }
        self.name = Some(name.to_string());
        Ok(())
    }

    fn line_field(&mut self, line: usize, rest: &str, off: usize) -> Result<()> {
        if self.field.is_some() {
            return Err(parse_err(line, off + 1, "duplicate 'field' line"));
        }
        let mut words = rest.split_whitespace();
        let spec = match (words.next(), words.next(), words.next()) {
            (Some("Q"), None, _) => FieldSpec::rationals(),
            (Some("GF"), Some(p), None) => {
                let p: u64 = p.parse().map_err(|_| {
                    parse_err(line, off + 1, format!("bad modulus '{p}'"))
                })?;
                FieldSpec::prime_field(p)
                    .map_err(|e| parse_err(line, off + 1, e.to_string()))?
            }
            _ => {
                return Err(parse_err(
                    line,
                    off + 1,
                    "expected 'field Q' or 'field GF <p>'",
                ))
            }
        };
        self.field = Some(spec);
        Ok(())
    }

    fn line_param(&mut self, line: usize, rest: &str, off: usize) -> Result<()> {
        let field = self.field_for(line, off + 1)?;
        let Some((name, name_off, value, value_off)) = split_word(rest) else {
            return Err(parse_err(line, off + 1, "expected 'param <name> = <scalar>'"));
        };
        let name_col = off + name_off + 1;
        if self.params.contains_key(name) {
            return Err(parse_err(line, name_col, format!("duplicate parameter '{name}'")));
        }
        if let Some(ctx) = &self.ctx {
            if ctx.order.index_of(name).is_some() {
                return Err(parse_err(
                    line,
                    name_col,
                    format!("parameter '{name}' shadows a generator"),
                ));
            }
        }
        let Some(value) = value.strip_prefix('=') else {
            return Err(parse_err(line, off + value_off + 1, "expected '='"));
        };
        let value_off = off + value_off + 1;
        let scalar = match self.overrides.get(name) {
            Some(text) => {
                self.overrides_used.push(name.to_string());
                ExprParser::new(line, 0, text, &self.params)?
                    .scalar(field)
                    .map_err(|e| Error::Parameter(format!("override for '{name}': {e}")))?
            }
            None => ExprParser::new(line, value_off, value, &self.params)?.scalar(field)?,
        };
        self.params.insert(name.to_string(), scalar);
        Ok(())
    }

    fn line_gen(&mut self, line: usize, rest: &str, off: usize) -> Result<()> {
        let field = self.field_for(line, off + 1)?;
        if self.ctx.is_some() {
            return Err(parse_err(line, off + 1, "duplicate 'gen' line"));
        }
        let mut gens = Vec::new();
        let mut walked = 0;
        let mut tail = rest;
        while let Some((word, word_off, next, next_off)) = split_word(tail) {
            let col = off + walked + word_off + 1;
            let (name, weight) = match word.split_once(':') {
                Some((n, w)) => {
                    let weight: u32 = w.parse().map_err(|_| {
                        parse_err(line, col, format!("bad weight '{w}'"))
                    })?;
                    (n, weight)
                }
                None => (word, 1),
            };
            if self.params.contains_key(name) {
                return Err(parse_err(
                    line,
                    col,
                    format!("generator '{name}' shadows a parameter"),
                ));
            }
            gens.push((name.to_string(), weight));
            walked += next_off;
            tail = next;
            if next.is_empty() {
                break;
            }
        }
        if gens.is_empty() {
            return Err(parse_err(line, off + 1, "expected 'gen <name>:<weight> ...'"));
        }
        let order = GeneratorOrder::new(gens)
            .map_err(|e| parse_err(line, off + 1, e.to_string()))?;
        self.ctx = Some(Context::arc(field, order));
        Ok(())
    }

    fn line_rel(&mut self, line: usize, rest: &str, off: usize) -> Result<()> {
        if self.extend_seen {
            return Err(parse_err(line, off + 1, "'rel' lines must precede 'extend'"));
        }
        let ctx = self.ctx_for(line, off + 1)?.clone();
        let poly = ExprParser::new(line, off, rest, &self.params)?.poly(&ctx)?;
        self.rels.push(poly);
        Ok(())
    }

    fn line_extend(&mut self, line: usize, rest: &str, off: usize) -> Result<()> {
        if self.extend_seen {
            return Err(parse_err(line, off + 1, "duplicate 'extend' line"));
        }
        self.ctx_for(line, off + 1)?;
        let arg = rest.trim();
        if Some(arg) != self.name.as_deref() {
            return Err(parse_err(
                line,
                off + 1,
                format!("'extend {arg}' does not match the declared algebra name"),
            ));
        }
        self.extend_seen = true;
        Ok(())
    }

    fn line_var(&mut self, line: usize, rest: &str, off: usize) -> Result<()> {
        if !self.extend_seen {
            return Err(parse_err(line, off + 1, "'var' is only valid after 'extend'"));
        }
        if self.builder.is_some() {
            return Err(parse_err(line, off + 1, "duplicate 'var' line"));
        }
        let vars: Vec<String> = rest.split_whitespace().map(str::to_string).collect();
        if vars.is_empty() {
            return Err(parse_err(line, off + 1, "expected 'var <x1> <x2> ...'"));
        }
        let ctx = self.ctx.as_ref().expect("checked by extend").clone();
        let base = Presentation::new(ctx, std::mem::take(&mut self.rels));
        let builder = ExtensionBuilder::new(base, vars.clone())
            .map_err(|e| parse_err(line, off + 1, e.to_string()))?;
        self.vars = vars;
        self.builder = Some(builder);
        Ok(())
    }

    fn builder_mut(&mut self, line: usize, col: usize) -> Result<ExtensionBuilder> {
        self.builder
            .take()
            .ok_or_else(|| parse_err(line, col, "a 'var' line must come first"))
    }

    /// `sigma <x>: <t> -> <poly>` and `delta <x>: <t> -> <poly>`.
    fn line_map(&mut self, line: usize, rest: &str, off: usize, is_sigma: bool) -> Result<()> {
        if !self.extend_seen {
            let key = if is_sigma { "sigma" } else { "delta" };
            return Err(parse_err(line, off + 1, format!("'{key}' is only valid after 'extend'")));
        }
        let Some((head, tail)) = rest.split_once(':') else {
            return Err(parse_err(line, off + 1, "expected '<x>: <t> -> <poly>'"));
        };
        let var = head.trim();
        let i = self.var_index(line, off + 1, var)?;
        let tail_off = off + head.chars().count() + 1;
        let Some((gen_part, poly_part)) = tail.split_once("->") else {
            return Err(parse_err(line, tail_off + 1, "expected '-> <poly>'"));
        };
        let gen = gen_part.trim();
        let builder = self.builder_mut(line, off + 1)?;
        let base_ctx = builder.base_ctx().clone();
        let k = match base_ctx.order.index_of(gen) {
            Some(k) => k,
            None => {
                self.builder = Some(builder);
                return Err(parse_err(
                    line,
                    tail_off + 1,
                    format!("unknown base generator '{gen}'"),
                ));
            }
        };
        let poly_off = tail_off + gen_part.chars().count() + 2;
        let poly = match ExprParser::new(line, poly_off, poly_part, &self.params)
            .and_then(|p| p.poly(&base_ctx))
        {
            Ok(p) => p,
            Err(e) => {
                self.builder = Some(builder);
                return Err(e);
            }
        };
        self.builder = Some(if is_sigma {
            builder.sigma(i, k, poly)
        } else {
            builder.delta(i, k, poly)
        });
        Ok(())
    }

    /// `c <i> <j> = <scalar>` with 1-based variable indices, i < j.
    fn line_c(&mut self, line: usize, rest: &str, off: usize) -> Result<()> {
        if !self.extend_seen {
            return Err(parse_err(line, off + 1, "'c' is only valid after 'extend'"));
        }
        let Some((eq_head, value)) = rest.split_once('=') else {
            return Err(parse_err(line, off + 1, "expected 'c <i> <j> = <scalar>'"));
        };
        let mut idx = eq_head.split_whitespace();
        let (Some(i_text), Some(j_text), None) = (idx.next(), idx.next(), idx.next()) else {
            return Err(parse_err(line, off + 1, "expected 'c <i> <j> = <scalar>'"));
        };
        let parse_idx = |t: &str| -> Result<usize> {
            t.parse::<usize>()
                .map_err(|_| parse_err(line, off + 1, format!("bad index '{t}'")))
        };
        let i = parse_idx(i_text)?;
        let j = parse_idx(j_text)?;
        if i == 0 || j == 0 || i >= j || j > self.vars.len() {
            return Err(parse_err(
                line,
                off + 1,
                format!("need 1 <= i < j <= {} in 'c <i> <j>'", self.vars.len()),
            ));
        }
        let value_off = off + eq_head.chars().count() + 1;
        let field = self.field_for(line, off + 1)?;
        let scalar = ExprParser::new(line, value_off, value, &self.params)?.scalar(field)?;
        let builder = self.builder_mut(line, off + 1)?;
        self.builder = Some(builder.c(i - 1, j - 1, scalar));
        Ok(())
    }

    /// `lower <xj> <xi> = <poly>` with the later variable first.
    fn line_lower(&mut self, line: usize, rest: &str, off: usize) -> Result<()> {
        if !self.extend_seen {
            return Err(parse_err(line, off + 1, "'lower' is only valid after 'extend'"));
        }
        let Some((eq_head, value)) = rest.split_once('=') else {
            return Err(parse_err(line, off + 1, "expected 'lower <xj> <xi> = <poly>'"));
        };
        let mut names = eq_head.split_whitespace();
        let (Some(j_name), Some(i_name), None) = (names.next(), names.next(), names.next()) else {
            return Err(parse_err(line, off + 1, "expected 'lower <xj> <xi> = <poly>'"));
        };
        let j = self.var_index(line, off + 1, j_name)?;
        let i = self.var_index(line, off + 1, i_name)?;
        if i >= j {
            return Err(parse_err(
                line,
                off + 1,
                "'lower' takes the later variable first",
            ));
        }
        let value_off = off + eq_head.chars().count() + 1;
        let builder = self.builder_mut(line, off + 1)?;
        let combined = builder.combined_ctx().clone();
        let poly = match ExprParser::new(line, value_off, value, &self.params)
            .and_then(|p| p.poly(&combined))
        {
            Ok(p) => p,
            Err(e) => {
                self.builder = Some(builder);
                return Err(e);
            }
        };
        self.builder = Some(builder.lower(j, i, poly));
        Ok(())
    }

    fn finish(mut self) -> Result<(String, CatalogItem)> {
        for key in self.overrides.keys() {
            if !self.overrides_used.iter().any(|u| u == key) {
                return Err(Error::Parameter(format!(
                    "override '{key}' does not match any declared parameter"
                )));
            }
        }
        let Some(name) = self.name else {
            return Err(parse_err(1, 1, "empty file: expected 'algebra <name>'"));
        };
        if self.extend_seen {
            let Some(builder) = self.builder.take() else {
                return Err(parse_err(1, 1, "'extend' without a 'var' line"));
            };
            return Ok((name, CatalogItem::Extension(builder.build())));
        }
        let Some(ctx) = self.ctx else {
            return Err(parse_err(1, 1, "missing 'gen' line"));
        };
        Ok((name, CatalogItem::Presentation(Presentation::new(ctx, self.rels))))
    }
}

pub fn parse_str(text: &str) -> Result<(String, CatalogItem)> {
    parse_str_with(text, &BTreeMap::new())
}

/// Parses with parameter overrides: each override replaces the default of
/// a `param` line declared in the file, and every override must match one.
pub fn parse_str_with(
    text: &str,
    overrides: &BTreeMap<String, String>,
) -> Result<(String, CatalogItem)> {
    let mut parser = FileParser::new(overrides);
    for (idx, raw) in text.lines().enumerate() {
        let line_no = idx + 1;
        let stripped = match raw.find('#') {
            Some(i) => &raw[..i],
            None => raw,
        };
        let Some((key, key_off, rest, rest_off)) = split_word(stripped) else {
            continue;
        };
        let key = key.to_string();
        parser.handle(line_no, &key, key_off, rest, rest_off)?;
    }
    parser.finish()
}

fn render_field(field: FieldSpec) -> String {
    match field.characteristic() {
        0 => "Q".to_string(),
        p => format!("GF {p}"),
    }
}

fn push_gen_line(out: &mut String, ctx: &Arc<Context>) {
    out.push_str("gen");
    for (i, name) in ctx.order.names().iter().enumerate() {
        out.push_str(&format!(" {name}:{}", ctx.order.weight(i)));
    }
    out.push('\n');
}

pub fn render_presentation(name: &str, p: &Presentation) -> String {
    let mut out = String::new();
    out.push_str(&format!("algebra {name}\n"));
    out.push_str(&format!("field {}\n", render_field(p.ctx().field)));
    push_gen_line(&mut out, p.ctx());
    for r in p.relations() {
        out.push_str(&format!("rel {r}\n"));
    }
    out
}

pub fn render_extension(name: &str, x: &ExtensionData) -> String {
    let base = x.base();
    let mut out = render_presentation(name, base);
    out.push_str(&format!("extend {name}\n"));
    out.push_str(&format!("var {}\n", x.vars().join(" ")));
    let base_ctx = base.ctx();
    for i in 0..x.n_vars() {
        for k in 0..base_ctx.order.len() {
            let image = x.sigma_image(i, k);
            if image.sub(&FreePoly::generator(base_ctx, k)).is_zero() {
                continue;
            }
            out.push_str(&format!(
                "sigma {}: {} -> {image}\n",
                x.vars()[i],
                base_ctx.order.name(k)
            ));
        }
    }
    for i in 0..x.n_vars() {
        for k in 0..base_ctx.order.len() {
            let image = x.delta_image(i, k);
            if image.is_zero() {
                continue;
            }
            out.push_str(&format!(
                "delta {}: {} -> {image}\n",
                x.vars()[i],
                base_ctx.order.name(k)
            ));
        }
    }
    for j in 0..x.n_vars() {
        for i in 0..j {
            let c = x.c_scalar(i, j);
            if !c.is_one() {
                out.push_str(&format!("c {} {} = {c}\n", i + 1, j + 1));
            }
        }
    }
    for j in 0..x.n_vars() {
        for i in 0..j {
            let lower = x.lower_term(j, i);
            if !lower.is_zero() {
                out.push_str(&format!(
                    "lower {} {} = {lower}\n",
                    x.vars()[j],
                    x.vars()[i]
                ));
            }
        }
    }
    out
}

pub fn render_item(name: &str, item: &CatalogItem) -> String {
    match item {
        CatalogItem::Presentation(p) => render_presentation(name, p),
        CatalogItem::Extension(x) => render_extension(name, x),
    }
}
