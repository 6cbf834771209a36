//! Concrete syntax: printing and parsing of objects, terms and signature
//! files.
//!
//! `;` is diagrammatic composition and binds looser than `(*)`; both are
//! left-associative. Object tensors are always parenthesized, `(A * B)`.
//! Strict objects are written `[A|B]`, the empty list `[]`.

use std::fmt;

use crate::error::{Error, Result};
use crate::strict::{MorD, ObjD};
use crate::terms::{MorC, ObjC, Signature, RESERVED};

impl fmt::Display for ObjC {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ObjC::Unit => f.write_str("I"),
            ObjC::Base(n) => f.write_str(n),
            ObjC::Tensor(a, b) => write!(f, "({a} * {b})"),
        }
    }
}

impl fmt::Display for ObjD {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("[")?;
        for (i, w) in self.0.iter().enumerate() {
            if i > 0 {
                f.write_str("|")?;
            }
            write!(f, "{w}")?;
        }
        f.write_str("]")
    }
}

fn wrap(f: &mut fmt::Formatter<'_>, paren: bool, inner: &dyn fmt::Display) -> fmt::Result {
    if paren {
        write!(f, "({inner})")
    } else {
        write!(f, "{inner}")
    }
}

impl fmt::Display for MorC {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let is_comp = |m: &MorC| matches!(m, MorC::Comp(..));
        match self {
            MorC::Id(a) => write!(f, "id[{a}]"),
            MorC::Gen(n) => f.write_str(n),
            MorC::Comp(a, b) => {
                write!(f, "{a} ; ")?;
                wrap(f, is_comp(b), b)
            }
            MorC::Tensor(a, b) => {
                wrap(f, is_comp(a), a)?;
                f.write_str(" (*) ")?;
                wrap(f, matches!(**b, MorC::Comp(..) | MorC::Tensor(..)), b)
            }
            MorC::Assoc(a, b, c) => write!(f, "alpha[{a},{b},{c}]"),
            MorC::AssocInv(a, b, c) => write!(f, "alpha'[{a},{b},{c}]"),
            MorC::UnitL(a) => write!(f, "lambda[{a}]"),
            MorC::UnitLInv(a) => write!(f, "lambda'[{a}]"),
            MorC::UnitR(a) => write!(f, "rho[{a}]"),
            MorC::UnitRInv(a) => write!(f, "rho'[{a}]"),
        }
    }
}

impl fmt::Display for MorD {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let is_comp = |m: &MorD| matches!(m, MorD::Comp(..));
        match self {
            MorD::Id(x) => write!(f, "idD{x}"),
            MorD::Lift(m) => write!(f, "lift({m})"),
            MorD::Pack(a, b) => write!(f, "pack[{a},{b}]"),
            MorD::Unpack(a, b) => write!(f, "unpack[{a},{b}]"),
            MorD::UnitIntro => f.write_str("unit+"),
            MorD::UnitElim => f.write_str("unit-"),
            MorD::Comp(a, b) => {
                write!(f, "{a} ; ")?;
                wrap(f, is_comp(b), b)
            }
            MorD::Tensor(a, b) => {
                wrap(f, is_comp(a), a)?;
                f.write_str(" (*) ")?;
                wrap(f, matches!(**b, MorD::Comp(..) | MorD::Tensor(..)), b)
            }
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
enum Tok {
    Ident(String),
    LParen,
    RParen,
    LBrack,
    RBrack,
    Comma,
    Bar,
    Semi,
    Star,
    TensorOp,
    Plus,
    Minus,
    Arrow,
    Colon,
    Eof,
}

impl fmt::Display for Tok {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = match self {
            Tok::Ident(n) => return write!(f, "`{n}`"),
            Tok::LParen => "`(`",
            Tok::RParen => "`)`",
            Tok::LBrack => "`[`",
            Tok::RBrack => "`]`",
            Tok::Comma => "`,`",
            Tok::Bar => "`|`",
            Tok::Semi => "`;`",
            Tok::Star => "`*`",
            Tok::TensorOp => "`(*)`",
            Tok::Plus => "`+`",
            Tok::Minus => "`-`",
            Tok::Arrow => "`->`",
            Tok::Colon => "`:`",
            Tok::Eof => "end of input",
        };
        f.write_str(s)
    }
}

#[derive(Clone, Debug)]
struct Spanned {
    tok: Tok,
    line: usize,
    column: usize,
}

fn lex(src: &str, first_line: usize) -> Result<Vec<Spanned>> {
    let chars: Vec<char> = src.chars().collect();
    let mut out = Vec::new();
    let (mut i, mut line, mut column) = (0, first_line, 1);
    while i < chars.len() {
        let c = chars[i];
        let (l, col) = (line, column);
        let mut push = |tok, width: usize, i: &mut usize, column: &mut usize| {
            out.push(Spanned {
                tok,
                line: l,
                column: col,
            });
            *i += width;
            *column += width;
        };
        match c {
            '\n' => {
                i += 1;
                line += 1;
                column = 1;
            }
            c if c.is_whitespace() => {
                i += 1;
                column += 1;
            }
            '(' if chars.get(i + 1) == Some(&'*') && chars.get(i + 2) == Some(&')') => {
                push(Tok::TensorOp, 3, &mut i, &mut column)
            }
            '(' => push(Tok::LParen, 1, &mut i, &mut column),
            ')' => push(Tok::RParen, 1, &mut i, &mut column),
            '[' => push(Tok::LBrack, 1, &mut i, &mut column),
            ']' => push(Tok::RBrack, 1, &mut i, &mut column),
            ',' => push(Tok::Comma, 1, &mut i, &mut column),
            '|' => push(Tok::Bar, 1, &mut i, &mut column),
            ';' => push(Tok::Semi, 1, &mut i, &mut column),
            '*' => push(Tok::Star, 1, &mut i, &mut column),
            '+' => push(Tok::Plus, 1, &mut i, &mut column),
            ':' => push(Tok::Colon, 1, &mut i, &mut column),
            '-' if chars.get(i + 1) == Some(&'>') => push(Tok::Arrow, 2, &mut i, &mut column),
            '-' => push(Tok::Minus, 1, &mut i, &mut column),
            c if c.is_alphabetic() || c == '_' => {
                let start = i;
                let mut end = i;
                while end < chars.len() && (chars[end].is_alphanumeric() || chars[end] == '_') {
                    end += 1;
                }
                if chars.get(end) == Some(&'\'') {
                    end += 1;
                }
                let word: String = chars[start..end].iter().collect();
                push(Tok::Ident(word), end - start, &mut i, &mut column)
            }
            other => {
                return Err(Error::Parse {
                    line,
                    column,
                    message: format!("unexpected character `{other}`"),
                })
            }
        }
    }
    out.push(Spanned {
        tok: Tok::Eof,
        line,
        column,
    });
    Ok(out)
}

struct Parser {
    toks: Vec<Spanned>,
    pos: usize,
}

impl Parser {
    fn new(src: &str) -> Result<Self> {
        Self::at_line(src, 1)
    }

    fn at_line(src: &str, line: usize) -> Result<Self> {
        Ok(Parser {
            toks: lex(src, line)?,
            pos: 0,
        })
    }

    fn peek(&self) -> &Tok {
        &self.toks[self.pos].tok
    }

    fn next(&mut self) -> Tok {
        let t = self.toks[self.pos].tok.clone();
        if self.pos + 1 < self.toks.len() {
            self.pos += 1;
        }
        t
    }

    fn error(&self, message: impl Into<String>) -> Error {
        let s = &self.toks[self.pos];
        Error::Parse {
            line: s.line,
            column: s.column,
            message: message.into(),
        }
    }

    fn unexpected(&self, wanted: &str) -> Error {
        self.error(format!("expected {wanted}, found {}", self.peek()))
    }

    fn expect(&mut self, tok: Tok) -> Result<()> {
        if *self.peek() == tok {
            self.next();
            Ok(())
        } else {
            Err(self.unexpected(&tok.to_string()))
        }
    }

    fn finish(&self) -> Result<()> {
        if *self.peek() == Tok::Eof {
            Ok(())
        } else {
            Err(self.unexpected("end of input"))
        }
    }

    fn name(&mut self) -> Result<String> {
        match self.peek().clone() {
            Tok::Ident(n) if !n.ends_with('\'') && !RESERVED.contains(&n.as_str()) => {
                self.next();
                Ok(n)
            }
            _ => Err(self.unexpected("a name")),
        }
    }

    fn obj(&mut self) -> Result<ObjC> {
        match self.peek().clone() {
            Tok::Ident(n) if n == "I" => {
                self.next();
                Ok(ObjC::Unit)
            }
            Tok::Ident(_) => Ok(ObjC::Base(self.name()?)),
            Tok::LParen => {
                self.next();
                let a = self.obj()?;
                self.expect(Tok::Star)?;
                let b = self.obj()?;
                self.expect(Tok::RParen)?;
                Ok(ObjC::tensor(a, b))
            }
            _ => Err(self.unexpected("an object")),
        }
    }

    fn obj_args<const N: usize>(&mut self) -> Result<[ObjC; N]> {
        self.expect(Tok::LBrack)?;
        let mut out = Vec::with_capacity(N);
        for i in 0..N {
            if i > 0 {
                self.expect(Tok::Comma)?;
            }
            out.push(self.obj()?);
        }
        self.expect(Tok::RBrack)?;
        Ok(out.try_into().expect("exactly N objects"))
    }

    fn obj_d(&mut self) -> Result<ObjD> {
        self.expect(Tok::LBrack)?;
        let mut wires = Vec::new();
        if *self.peek() != Tok::RBrack {
            wires.push(self.obj()?);
            while *self.peek() == Tok::Bar {
                self.next();
                wires.push(self.obj()?);
            }
        }
        self.expect(Tok::RBrack)?;
        Ok(ObjD(wires))
    }

    fn mor_c(&mut self) -> Result<MorC> {
        let mut m = self.tensor_c()?;
        while *self.peek() == Tok::Semi {
            self.next();
            m = MorC::comp(m, self.tensor_c()?);
        }
        Ok(m)
    }

    fn tensor_c(&mut self) -> Result<MorC> {
        let mut m = self.atom_c()?;
        while *self.peek() == Tok::TensorOp {
            self.next();
            m = MorC::tensor(m, self.atom_c()?);
        }
        Ok(m)
    }

    fn atom_c(&mut self) -> Result<MorC> {
        match self.peek().clone() {
            Tok::LParen => {
                self.next();
                let m = self.mor_c()?;
                self.expect(Tok::RParen)?;
                Ok(m)
            }
            Tok::Ident(word) => match word.as_str() {
                "id" => {
                    self.next();
                    let [a] = self.obj_args()?;
                    Ok(MorC::Id(a))
                }
                "alpha" | "alpha'" => {
                    self.next();
                    let [a, b, c] = self.obj_args()?;
                    Ok(if word == "alpha" {
                        MorC::Assoc(a, b, c)
                    } else {
                        MorC::AssocInv(a, b, c)
                    })
                }
                "lambda" | "lambda'" | "rho" | "rho'" => {
                    self.next();
                    let [a] = self.obj_args()?;
                    Ok(match word.as_str() {
                        "lambda" => MorC::UnitL(a),
                        "lambda'" => MorC::UnitLInv(a),
                        "rho" => MorC::UnitR(a),
                        _ => MorC::UnitRInv(a),
                    })
                }
                _ => Ok(MorC::Gen(self.name()?)),
            },
            _ => Err(self.unexpected("a morphism")),
        }
    }

    fn mor_d(&mut self) -> Result<MorD> {
        let mut m = self.tensor_d()?;
        while *self.peek() == Tok::Semi {
            self.next();
            m = MorD::comp(m, self.tensor_d()?);
        }
        Ok(m)
    }

    fn tensor_d(&mut self) -> Result<MorD> {
        let mut m = self.atom_d()?;
        while *self.peek() == Tok::TensorOp {
            self.next();
            m = MorD::tensor(m, self.atom_d()?);
        }
        Ok(m)
    }

    fn atom_d(&mut self) -> Result<MorD> {
        match self.peek().clone() {
            Tok::LParen => {
                self.next();
                let m = self.mor_d()?;
                self.expect(Tok::RParen)?;
                Ok(m)
            }
            Tok::Ident(word) => match word.as_str() {
                "idD" => {
                    self.next();
                    Ok(MorD::Id(self.obj_d()?))
                }
                "pack" | "unpack" => {
                    self.next();
                    let [a, b] = self.obj_args()?;
                    Ok(if word == "pack" {
                        MorD::Pack(a, b)
                    } else {
                        MorD::Unpack(a, b)
                    })
                }
                "unit" => {
                    self.next();
                    match self.next() {
                        Tok::Plus => Ok(MorD::UnitIntro),
                        Tok::Minus => Ok(MorD::UnitElim),
                        _ => {
                            self.pos -= 1;
                            Err(self.unexpected("`+` or `-` after `unit`"))
                        }
                    }
                }
                "lift" => {
                    self.next();
                    self.expect(Tok::LParen)?;
                    let m = self.mor_c()?;
                    self.expect(Tok::RParen)?;
                    Ok(MorD::Lift(m))
                }
                _ => Err(self.unexpected("a strict morphism")),
            },
            _ => Err(self.unexpected("a strict morphism")),
        }
    }
}

pub fn parse_obj(src: &str) -> Result<ObjC> {
    let mut p = Parser::new(src)?;
    let o = p.obj()?;
    p.finish()?;
    Ok(o)
}

pub fn parse_obj_d(src: &str) -> Result<ObjD> {
    let mut p = Parser::new(src)?;
    let o = p.obj_d()?;
    p.finish()?;
    Ok(o)
}

pub fn parse_mor_c(src: &str) -> Result<MorC> {
    let mut p = Parser::new(src)?;
    let m = p.mor_c()?;
    p.finish()?;
    Ok(m)
}

pub fn parse_mor_d(src: &str) -> Result<MorD> {
    let mut p = Parser::new(src)?;
    let m = p.mor_d()?;
    p.finish()?;
    Ok(m)
}

/// Parses `obj <name>` and `gen <name> : <obj> -> <obj>` lines. Text after
/// `#` is ignored.
pub fn parse_signature(src: &str) -> Result<Signature> {
    let mut sig = Signature::new();
    for (idx, raw) in src.lines().enumerate() {
        let line = raw.split('#').next().unwrap_or("");
        if line.trim().is_empty() {
            continue;
        }
        let mut p = Parser::at_line(line, idx + 1)?;
        match p.next() {
            Tok::Ident(k) if k == "obj" => {
                let name = p.name()?;
                p.finish()?;
                sig.add_base(name)?;
            }
            Tok::Ident(k) if k == "gen" => {
                let name = p.name()?;
                p.expect(Tok::Colon)?;
                let dom = p.obj()?;
                p.expect(Tok::Arrow)?;
                let cod = p.obj()?;
                p.finish()?;
                sig.add_generator(name, dom, cod)?;
            }
            _ => {
                p.pos = 0;
                return Err(p.unexpected("`obj` or `gen`"));
            }
        }
    }
    Ok(sig)
}

/// Renders a signature in the format accepted by [`parse_signature`].
pub fn print_signature(sig: &Signature) -> String {
    let mut out = String::new();
    for b in sig.base_objects() {
        out.push_str(&format!("obj {b}\n"));
    }
    for (n, d, c) in sig.generators() {
        out.push_str(&format!("gen {n} : {d} -> {c}\n"));
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    fn w() -> ObjC {
        ObjC::base("W")
    }

    #[test]
    fn prints_objects_with_parens() {
        let o = ObjC::tensor(w(), ObjC::tensor(ObjC::Unit, w()));
        assert_eq!(o.to_string(), "(W * (I * W))");
        assert_eq!(parse_obj("(W * (I * W))").unwrap(), o);
        assert_eq!(parse_obj("(W*(I*W))").unwrap(), o);
    }

    #[test]
    fn prints_structural_terms() {
        assert_eq!(
            MorC::Assoc(w(), ObjC::Unit, w()).to_string(),
            "alpha[W,I,W]"
        );
        assert_eq!(MorC::UnitRInv(w()).to_string(), "rho'[W]");
    }

    #[test]
    fn composition_is_left_associative_and_loosest() {
        let m = parse_mor_c("f ; g (*) h ; k").unwrap();
        let expect = MorC::comp(
            MorC::comp(
                MorC::gen("f"),
                MorC::tensor(MorC::gen("g"), MorC::gen("h")),
            ),
            MorC::gen("k"),
        );
        assert_eq!(m, expect);
        assert_eq!(m.to_string(), "f ; g (*) h ; k");
    }

    #[test]
    fn nested_right_operands_keep_parens() {
        let m = MorC::comp(
            MorC::gen("f"),
            MorC::comp(MorC::gen("g"), MorC::gen("h")),
        );
        assert_eq!(m.to_string(), "f ; (g ; h)");
        assert_eq!(parse_mor_c(&m.to_string()).unwrap(), m);
        let t = MorC::tensor(
            MorC::gen("f"),
            MorC::tensor(MorC::gen("g"), MorC::gen("h")),
        );
        assert_eq!(t.to_string(), "f (*) (g (*) h)");
        assert_eq!(parse_mor_c(&t.to_string()).unwrap(), t);
    }

    #[test]
    fn strict_terms_round_trip() {
        let src = "unpack[W,(W * W)] ; idD[W] (*) unpack[W,W] ; unit+ (*) lift(id[W] (*) f) ; unit- (*) idD[]";
        let m = parse_mor_d(src).unwrap();
        assert_eq!(parse_mor_d(&m.to_string()).unwrap(), m);
        assert_eq!(parse_mor_d("idD[]").unwrap(), MorD::Id(ObjD::empty()));
        assert_eq!(
            parse_mor_d("idD[W|I]").unwrap().to_string(),
            "idD[W|I]"
        );
    }

    #[test]
    fn errors_carry_positions() {
        match parse_mor_c("f ;\n  ; g") {
            Err(Error::Parse { line, column, .. }) => assert_eq!((line, column), (2, 3)),
            other => panic!("unexpected {other:?}"),
        }
        assert!(matches!(parse_mor_c("alpha[W,W]"), Err(Error::Parse { .. })));
        assert!(matches!(parse_mor_d("f"), Err(Error::Parse { .. })));
        assert!(matches!(parse_obj("W $"), Err(Error::Parse { .. })));
    }

    #[test]
    fn signature_files() {
        let src = "# parity\nobj B\ngen xor : (B*B) -> B\ngen zero : I -> B  # constant\n";
        let sig = parse_signature(src).unwrap();
        assert!(sig.has_base("B"));
        assert_eq!(
            sig.generator("xor").unwrap(),
            (&ObjC::tensor(ObjC::base("B"), ObjC::base("B")), &ObjC::base("B"))
        );
        assert_eq!(parse_signature(&print_signature(&sig)).unwrap(), sig);
        assert!(matches!(
            parse_signature("obj B\nobj B\n"),
            Err(Error::DuplicateName(_))
        ));
        assert!(matches!(
            parse_signature("obj B\nbogus\n"),
            Err(Error::Parse { line: 2, .. })
        ));
        assert!(parse_signature("obj pack\n").is_err());
    }
}
