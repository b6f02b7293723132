//! Surface syntax for elements and presets.
//!
//! Element grammar (infix, `*`/`/` over `+`/`-`, bracket binds tightest):
//!
//! ```text
//! expr    := term (('+'|'-') term)*
//! term    := unary (('*'|'/') unary)*
//! unary   := '-' unary | power
//! power   := atom ('^' '-'? int)?
//! atom    := int | variable | '(' expr ')' | '[' expr ']' | autatom
//! autatom := 'e' | 'd' '(' k ',' i ')' | 's' '(' i ')' | 'sh' '(' rat, ... ')'
//! ```
//!
//! `[c * phi]` invariantizes the single-term element `c * phi` into the
//! orbit sum. `d(k,i)` is the unit tableau shift at row k, entry i; `s(i)`
//! is the i-th lattice generator acting as a backward shift; `sh(..)` is an
//! explicit shift vector over the setting's variables.

use std::sync::Arc;

use num_bigint::BigInt;

use crate::aut::AffineAut;
use crate::error::{Error, Result};
use crate::monoid::ShiftMonoid;
use crate::presets::{GwaSpec, TorusFlavor, TorusSpec};
use crate::rat::{parse_rat, rat, Rat};
use crate::ratfunc::RatFunc;
use crate::setting::Setting;
use crate::skew::SkewElement;

#[derive(Debug, Clone, PartialEq)]
enum Tok {
    Int(BigInt),
    Ident(String),
    Plus,
    Minus,
    Star,
    Slash,
    Caret,
    LParen,
    RParen,
    LBracket,
    RBracket,
    Comma,
}

struct Lexer {
    toks: Vec<(Tok, usize)>,
    pos: usize,
    end: usize,
}

fn err(pos: usize, msg: impl Into<String>) -> Error {
    Error::SyntaxError {
        pos,
        msg: msg.into(),
    }
}

fn lex(s: &str) -> Result<Vec<(Tok, usize)>> {
    let bytes = s.as_bytes();
    let mut toks = Vec::new();
    let mut i = 0;
    while i < bytes.len() {
        let c = bytes[i] as char;
        match c {
            ' ' | '\t' | '\n' | '\r' => i += 1,
            '+' => {
                toks.push((Tok::Plus, i));
                i += 1;
            }
            '-' => {
                toks.push((Tok::Minus, i));
                i += 1;
            }
            '*' => {
                toks.push((Tok::Star, i));
                i += 1;
            }
            '/' => {
                toks.push((Tok::Slash, i));
                i += 1;
            }
            '^' => {
                toks.push((Tok::Caret, i));
                i += 1;
            }
            '(' => {
                toks.push((Tok::LParen, i));
                i += 1;
            }
            ')' => {
                toks.push((Tok::RParen, i));
                i += 1;
            }
            '[' => {
                toks.push((Tok::LBracket, i));
                i += 1;
            }
            ']' => {
                toks.push((Tok::RBracket, i));
                i += 1;
            }
            ',' => {
                toks.push((Tok::Comma, i));
                i += 1;
            }
            '0'..='9' => {
                let start = i;
                while i < bytes.len() && bytes[i].is_ascii_digit() {
                    i += 1;
                }
                let n: BigInt = s[start..i]
                    .parse()
                    .map_err(|_| err(start, "bad integer"))?;
                toks.push((Tok::Int(n), start));
            }
            c if c.is_ascii_alphabetic() || c == '_' => {
                let start = i;
                while i < bytes.len()
                    && ((bytes[i] as char).is_ascii_alphanumeric()
                        || bytes[i] == b'_'
                        || bytes[i] == b'\'')
                {
                    i += 1;
                }
                toks.push((Tok::Ident(s[start..i].to_string()), start));
            }
            _ => return Err(err(i, format!("unexpected character `{c}`"))),
        }
    }
    Ok(toks)
}

impl Lexer {
    fn new(s: &str) -> Result<Lexer> {
        Ok(Lexer {
            toks: lex(s)?,
            pos: 0,
            end: s.len(),
        })
    }

    fn peek(&self) -> Option<&Tok> {
        self.toks.get(self.pos).map(|(t, _)| t)
    }

    fn here(&self) -> usize {
        self.toks
            .get(self.pos)
            .map(|&(_, p)| p)
            .unwrap_or(self.end)
    }

    fn next(&mut self) -> Option<Tok> {
        let t = self.toks.get(self.pos).map(|(t, _)| t.clone());
        if t.is_some() {
            self.pos += 1;
        }
        t
    }

    fn expect(&mut self, t: Tok, what: &str) -> Result<()> {
        let pos = self.here();
        match self.next() {
            Some(found) if found == t => Ok(()),
            _ => Err(err(pos, format!("expected {what}"))),
        }
    }
}

struct ElementParser<'a> {
    lx: Lexer,
    setting: &'a Arc<Setting>,
}

impl<'a> ElementParser<'a> {
    fn expr(&mut self) -> Result<SkewElement> {
        let mut acc = self.term()?;
        loop {
            match self.lx.peek() {
                Some(Tok::Plus) => {
                    self.lx.next();
                    acc = acc.add(&self.term()?)?;
                }
                Some(Tok::Minus) => {
                    self.lx.next();
                    acc = acc.sub(&self.term()?)?;
                }
                _ => return Ok(acc),
            }
        }
    }

    fn term(&mut self) -> Result<SkewElement> {
        let mut acc = self.unary()?;
        loop {
            match self.lx.peek() {
                Some(Tok::Star) => {
                    self.lx.next();
                    acc = acc.mul(&self.unary()?)?;
                }
                Some(Tok::Slash) => {
                    let pos = self.lx.here();
                    self.lx.next();
                    let rhs = self.unary()?;
                    let inv = rhs
                        .invert_single()
                        .map_err(|_| err(pos, "divisor must be an invertible single term"))?;
                    acc = acc.mul(&inv)?;
                }
                _ => return Ok(acc),
            }
        }
    }

    fn unary(&mut self) -> Result<SkewElement> {
        if let Some(Tok::Minus) = self.lx.peek() {
            self.lx.next();
            return Ok(self.unary()?.neg());
        }
        self.power()
    }

    fn power(&mut self) -> Result<SkewElement> {
        let base = self.atom()?;
        if let Some(Tok::Caret) = self.lx.peek() {
            self.lx.next();
            let mut negative = false;
            if let Some(Tok::Minus) = self.lx.peek() {
                negative = true;
                self.lx.next();
            }
            let pos = self.lx.here();
            let Some(Tok::Int(n)) = self.lx.next() else {
                return Err(err(pos, "expected integer exponent"));
            };
            let n: u32 = n
                .to_string()
                .parse()
                .map_err(|_| err(pos, "exponent too large"))?;
            let body = if negative {
                base.invert_single()
                    .map_err(|_| err(pos, "negative power of a non-invertible element"))?
            } else {
                base
            };
            return body.pow(n);
        }
        Ok(base)
    }

    fn int_arg(&mut self) -> Result<u32> {
        let pos = self.lx.here();
        match self.lx.next() {
            Some(Tok::Int(n)) => n
                .to_string()
                .parse::<u32>()
                .map_err(|_| err(pos, "index too large")),
            _ => Err(err(pos, "expected integer")),
        }
    }

    fn rat_arg(&mut self) -> Result<Rat> {
        let mut neg = false;
        if let Some(Tok::Minus) = self.lx.peek() {
            neg = true;
            self.lx.next();
        }
        let pos = self.lx.here();
        let Some(Tok::Int(num)) = self.lx.next() else {
            return Err(err(pos, "expected rational"));
        };
        let mut value = Rat::from_integer(num);
        if let Some(Tok::Slash) = self.lx.peek() {
            self.lx.next();
            let pos = self.lx.here();
            let Some(Tok::Int(den)) = self.lx.next() else {
                return Err(err(pos, "expected denominator"));
            };
            if den == BigInt::from(0) {
                return Err(err(pos, "zero denominator"));
            }
            value = Rat::new(value.numer().clone(), den);
        }
        Ok(if neg { -value } else { value })
    }

    fn aut_atom(&mut self, name: &str, pos: usize) -> Result<AffineAut> {
        let n = self.setting.nvars();
        match name {
            "d" => {
                self.lx.expect(Tok::LParen, "`(`")?;
                let k = self.int_arg()?;
                self.lx.expect(Tok::Comma, "`,`")?;
                let i = self.int_arg()?;
                self.lx.expect(Tok::RParen, "`)`")?;
                let v = self
                    .setting
                    .var_by_row_col(k, i)
                    .ok_or_else(|| err(pos, format!("no tableau entry ({k},{i})")))?;
                Ok(AffineAut::unit_shift(n, v as usize, rat(1)))
            }
            "s" => {
                self.lx.expect(Tok::LParen, "`(`")?;
                let i = self.int_arg()? as usize;
                self.lx.expect(Tok::RParen, "`)`")?;
                let ShiftMonoid::Lattice { basis } = &self.setting.monoid else {
                    return Err(err(pos, "s(i) needs a lattice monoid"));
                };
                if i == 0 || i > basis.len() {
                    return Err(err(pos, format!("s({i}) outside the lattice rank")));
                }
                let v: Vec<Rat> = basis[i - 1].iter().map(|x| -x.clone()).collect();
                Ok(AffineAut::pure_shift(v))
            }
            "sh" => {
                self.lx.expect(Tok::LParen, "`(`")?;
                let mut v = vec![self.rat_arg()?];
                while let Some(Tok::Comma) = self.lx.peek() {
                    self.lx.next();
                    v.push(self.rat_arg()?);
                }
                self.lx.expect(Tok::RParen, "`)`")?;
                if v.len() != n {
                    return Err(err(
                        pos,
                        format!("sh(..) needs {n} components, got {}", v.len()),
                    ));
                }
                Ok(AffineAut::pure_shift(v))
            }
            _ => unreachable!(),
        }
    }

    fn atom(&mut self) -> Result<SkewElement> {
        let pos = self.lx.here();
        match self.lx.next() {
            Some(Tok::Int(n)) => SkewElement::scalar(
                self.setting.clone(),
                RatFunc::constant(Rat::from_integer(n)),
            ),
            Some(Tok::LParen) => {
                let e = self.expr()?;
                self.lx.expect(Tok::RParen, "`)`")?;
                Ok(e)
            }
            Some(Tok::LBracket) => {
                let e = self.expr()?;
                self.lx.expect(Tok::RBracket, "`]`")?;
                let mut terms = e.terms();
                let Some((aut, coeff)) = terms.next() else {
                    return Ok(SkewElement::zero(self.setting.clone()));
                };
                if terms.next().is_some() {
                    return Err(err(
                        pos,
                        "bracket needs a single term `coefficient * automorphism`",
                    ));
                }
                let inv = crate::skew::make_invariant(self.setting, coeff, aut)?;
                Ok(inv.into_skew())
            }
            Some(Tok::Ident(name)) => match name.as_str() {
                "e" => Ok(SkewElement::one(self.setting.clone())),
                "d" | "s" | "sh" => {
                    let aut = self.aut_atom(&name, pos)?;
                    SkewElement::term(self.setting.clone(), RatFunc::one(), aut)
                }
                _ => {
                    let v = self
                        .setting
                        .var_by_name(&name)
                        .ok_or_else(|| err(pos, format!("unknown name `{name}`")))?;
                    SkewElement::scalar(self.setting.clone(), RatFunc::var(v))
                }
            },
            _ => Err(err(pos, "expected an atom")),
        }
    }
}

/// Parses an element expression over the setting's variable names.
pub fn parse_element(setting: &Arc<Setting>, text: &str) -> Result<SkewElement> {
    let mut p = ElementParser {
        lx: Lexer::new(text)?,
        setting,
    };
    let e = p.expr()?;
    if p.lx.peek().is_some() {
        return Err(err(p.lx.here(), "trailing input"));
    }
    Ok(e)
}

/// Parses an automorphism: an element expression that must reduce to a
/// single term with coefficient one.
pub fn parse_aut(setting: &Arc<Setting>, text: &str) -> Result<AffineAut> {
    let e = parse_element(setting, text)?;
    let mut terms = e.terms();
    match (terms.next(), terms.next()) {
        (Some((aut, coeff)), None) if coeff.is_one() => Ok(aut.clone()),
        _ => Err(Error::SyntaxError {
            pos: 0,
            msg: "expected a single automorphism".into(),
        }),
    }
}

// ---------------------------------------------------------------------------
// Preset names: gt(n), gwa(a,q), torus(n,flavor), tensor(p1,p2)
// ---------------------------------------------------------------------------

#[derive(Debug, Clone)]
pub enum Preset {
    Gt(u32),
    Gwa(GwaSpec),
    Torus(TorusSpec),
    Tensor(Box<Preset>, Box<Preset>),
}

/// Splits `head(arg1, arg2, ...)` at top-level commas.
fn split_call(s: &str) -> Option<(&str, Vec<&str>)> {
    let s = s.trim();
    let open = s.find('(')?;
    if !s.ends_with(')') {
        return None;
    }
    let head = s[..open].trim();
    let body = &s[open + 1..s.len() - 1];
    let mut args = Vec::new();
    let mut depth = 0usize;
    let mut start = 0usize;
    for (i, c) in body.char_indices() {
        match c {
            '(' | '[' => depth += 1,
            ')' | ']' => depth = depth.saturating_sub(1),
            ',' if depth == 0 => {
                args.push(body[start..i].trim());
                start = i + 1;
            }
            _ => {}
        }
    }
    let last = body[start..].trim();
    if !last.is_empty() {
        args.push(last);
    }
    Some((head, args))
}

pub fn parse_preset(text: &str) -> Result<Preset> {
    let bad = |msg: &str| Error::SyntaxError {
        pos: 0,
        msg: msg.into(),
    };
    let (head, args) = split_call(text).ok_or_else(|| {
        bad("expected a preset call: gt(n), gwa(a,q), torus(n,flavor), tensor(p1,p2)")
    })?;
    match head {
        "gt" => {
            if args.len() != 1 {
                return Err(bad("gt takes one argument"));
            }
            let n: u32 = args[0]
                .parse()
                .map_err(|_| bad("gt(n): n must be an integer"))?;
            Ok(Preset::Gt(n))
        }
        "torus" => {
            if args.len() != 2 {
                return Err(bad("torus takes (n, flavor)"));
            }
            let n: usize = args[0]
                .parse()
                .map_err(|_| bad("torus(n, flavor): n must be an integer"))?;
            let flavor = TorusFlavor::parse(args[1]).ok_or_else(|| {
                bad("flavor is one of plain, symmetric, orthogonal-odd, orthogonal-even")
            })?;
            Ok(Preset::Torus(TorusSpec { n, flavor }))
        }
        "gwa" => {
            if args.len() != 2 {
                return Err(bad("gwa takes (a, q)"));
            }
            let q = parse_rat(args[1]).ok_or_else(|| bad("gwa(a, q): q must be rational"))?;
            // Parse `a` against a one-variable scratch setting.
            let scratch = crate::presets::build_gwa(&GwaSpec {
                a: crate::poly::Poly::var(0),
                q: q.clone(),
            })?
            .setting;
            let elem = parse_element(&scratch, args[0])?;
            let e = AffineAut::identity(1);
            if elem.support().iter().any(|m| m != &e) {
                return Err(bad("gwa(a, q): a must be a polynomial in t"));
            }
            let coeff = elem.coeff(&e);
            let a = coeff
                .as_poly()
                .ok_or_else(|| bad("gwa(a, q): a must be a polynomial in t"))?;
            Ok(Preset::Gwa(GwaSpec { a, q }))
        }
        "tensor" => {
            if args.len() != 2 {
                return Err(bad("tensor takes (p1, p2)"));
            }
            Ok(Preset::Tensor(
                Box::new(parse_preset(args[0])?),
                Box::new(parse_preset(args[1])?),
            ))
        }
        other => Err(bad(&format!("unknown preset `{other}`"))),
    }
}

pub fn build_preset(p: &Preset) -> Result<Arc<Setting>> {
    match p {
        Preset::Gt(n) => crate::presets::build_gt(*n),
        Preset::Gwa(spec) => Ok(crate::presets::build_gwa(spec)?.setting),
        Preset::Torus(spec) => Ok(crate::presets::build_torus(spec)?.setting),
        Preset::Tensor(a, b) => {
            let sa = build_preset(a)?;
            let sb = build_preset(b)?;
            Ok(crate::presets::tensor_product_rings(&sa, &sb)?.setting)
        }
    }
}

pub fn setting_from_name(text: &str) -> Result<Arc<Setting>> {
    build_preset(&parse_preset(text)?)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::presets::build_gt;
    use crate::rat::ratf;

    #[test]
    fn parse_bracket_gt2() {
        let s = build_gt(2).unwrap();
        let e = parse_element(&s, "[1 * d(1,1)]").unwrap();
        assert_eq!(e.num_terms(), 1);
        let shift = AffineAut::unit_shift(3, 2, rat(1));
        assert_eq!(e.coeff(&shift), RatFunc::one());
        // linear combination of brackets
        let sum = parse_element(&s, "[(l21+l22-2*l11) * d(1,1)] + [1 * d(1,1)]").unwrap();
        assert_eq!(sum.num_terms(), 1);
        let expect = RatFunc::from_poly(
            crate::poly::Poly::var(0)
                .add(&crate::poly::Poly::var(1))
                .sub(&crate::poly::Poly::var(2).scale(&rat(2)))
                .add(&crate::poly::Poly::one()),
        );
        assert_eq!(sum.coeff(&shift), expect);
    }

    #[test]
    fn parse_errors_carry_position() {
        let s = build_gt(2).unwrap();
        // unterminated bracket: failure at the end of input
        match parse_element(&s, "[l21 * ") {
            Err(Error::SyntaxError { pos, .. }) => assert_eq!(pos, 7),
            other => panic!("expected syntax error, got {other:?}"),
        }
        // unknown variable reports its own offset
        match parse_element(&s, "[x1 * l21]") {
            Err(Error::SyntaxError { pos, .. }) => assert_eq!(pos, 1),
            other => panic!("expected syntax error, got {other:?}"),
        }
        assert!(matches!(
            parse_element(&s, "l21 + "),
            Err(Error::SyntaxError { .. })
        ));
        assert!(matches!(
            parse_element(&s, "nope"),
            Err(Error::SyntaxError { .. })
        ));
    }

    #[test]
    fn propagates_stabilizer_error() {
        let s = build_gt(2).unwrap();
        // l21 is moved by the row-2 swap that stabilizes d(1,1)
        assert!(matches!(
            parse_element(&s, "[l21 * d(1,1)]"),
            Err(Error::NotStabilizerInvariant)
        ));
    }

    #[test]
    fn rationals_powers_division() {
        let s = build_gt(2).unwrap();
        let e = parse_element(&s, "5/3 * l11^2").unwrap();
        let expect = RatFunc::from_poly(crate::poly::Poly::var(2).pow(2)).scale(&ratf(5, 3));
        assert_eq!(e.coeff(&AffineAut::identity(3)), expect);
        // division by a scalar
        let q = parse_element(&s, "(l21 - l11)/(2)").unwrap();
        let expect = RatFunc::from_poly(
            crate::poly::Poly::var(0).sub(&crate::poly::Poly::var(2)),
        )
        .scale(&ratf(1, 2));
        assert_eq!(q.coeff(&AffineAut::identity(3)), expect);
        // inverse shifts
        let inv = parse_element(&s, "d(1,1)^-1").unwrap();
        assert_eq!(
            inv.coeff(&AffineAut::unit_shift(3, 2, rat(-1))),
            RatFunc::one()
        );
    }

    #[test]
    fn render_roundtrip() {
        let s = build_gt(2).unwrap();
        for text in [
            "[1 * d(1,1)]",
            "[(l21+l22-2*l11)*d(1,1)]",
            "l21*l22 - 2*l11 + 5/3",
            "[1*d(1,1)] * [1*d(1,1)^-1]",
            "(l21+l22)/(l11) * e",
        ] {
            let e = parse_element(&s, text).unwrap();
            let printed = e.render();
            let back = parse_element(&s, &printed)
                .unwrap_or_else(|err| panic!("reparse of `{printed}` failed: {err}"));
            assert_eq!(e, back, "roundtrip of `{text}` via `{printed}`");
        }
    }

    #[test]
    fn parse_aut_atoms() {
        let s = build_gt(2).unwrap();
        let a = parse_aut(&s, "d(1,1)").unwrap();
        assert_eq!(a, AffineAut::unit_shift(3, 2, rat(1)));
        let b = parse_aut(&s, "sh(0,0,-2)").unwrap();
        assert_eq!(b, AffineAut::unit_shift(3, 2, rat(-2)));
        assert!(parse_aut(&s, "l21 * d(1,1)").is_err());
        // s(i) against the lattice basis
        let c = parse_aut(&s, "s(1)").unwrap();
        assert_eq!(c, AffineAut::unit_shift(3, 2, rat(-1)));
    }

    #[test]
    fn preset_names() {
        assert!(matches!(parse_preset("gt(3)"), Ok(Preset::Gt(3))));
        let p = parse_preset("gwa(t^2+1, 1/2)").unwrap();
        match &p {
            Preset::Gwa(spec) => {
                assert_eq!(spec.q, ratf(1, 2));
                assert_eq!(
                    spec.a,
                    crate::poly::Poly::var(0)
                        .pow(2)
                        .add(&crate::poly::Poly::one())
                );
            }
            other => panic!("unexpected {other:?}"),
        }
        let t = parse_preset("torus(2, symmetric)").unwrap();
        assert!(matches!(
            t,
            Preset::Torus(TorusSpec {
                n: 2,
                flavor: TorusFlavor::Symmetric
            })
        ));
        let nested = parse_preset("tensor(gt(2), torus(1, plain))").unwrap();
        let s = build_preset(&nested).unwrap();
        assert_eq!(s.nvars(), 4);
        assert!(matches!(
            parse_preset("nope(1)"),
            Err(Error::SyntaxError { .. })
        ));
    }
}
