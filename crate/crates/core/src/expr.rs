//! Text form of hyperalgebra elements.
//!
//! Grammar (whitespace-insensitive):
//!
//! ```text
//! expr        := ['-'] term (('+' | '-') term)*
//! term        := coefficient | coefficient '*' factors | factors
//! factors     := factor ('*' factor)*
//! factor      := 'E' '(' int ',' int ')' exponent?
//!              | 'H' '(' int ')' exponent?
//! exponent    := '^' '(' int ')'
//! coefficient := int ('/' int)?
//! ```
//!
//! `E(b,a)` with `b > a` is the divided-power lowering generator,
//! `E(b,a)^(m)` its m-th divided power; `H(l)^(k)` is the binomial toral
//! generator `binom(H_l, k)`. Within a term the `E` factors must appear in
//! canonical order — `(b, a)` lexicographically increasing, all before any
//! `H` factor, with `H` levels strictly increasing. The single allowed
//! exception is an immediate repeat of the same generator, which contracts
//! by the divided-power rule `E^(x) · E^(y) = binom(x+y, x) · E^(x+y)`.
//! Anything else out of order is rejected rather than silently reordered.

use num::bigint::Sign;
use num::BigInt;

use crate::error::{Error, Result};
use crate::field::{binom_int, FieldCtx, Scalar};
use crate::hyperalgebra::{HMonomial, Monomial, UElem, UTMatrix};

#[derive(Clone, Debug, PartialEq)]
enum Tok {
    Int(BigInt),
    Gen(char),
    LPar,
    RPar,
    Comma,
    Star,
    Slash,
    Caret,
    Plus,
    Minus,
}

fn tokenize(input: &str) -> Result<Vec<(usize, Tok)>> {
    let bytes = input.as_bytes();
    let mut out = Vec::new();
    let mut k = 0usize;
    while k < bytes.len() {
        let c = bytes[k] as char;
        match c {
            ' ' | '\t' | '\n' | '\r' => k += 1,
            '0'..='9' => {
                let start = k;
                while k < bytes.len() && bytes[k].is_ascii_digit() {
                    k += 1;
                }
                let val: BigInt = input[start..k]
                    .parse()
                    .map_err(|e| Error::Parse { pos: start, msg: format!("bad integer: {e}") })?;
                out.push((start, Tok::Int(val)));
            }
            'E' | 'H' => {
                out.push((k, Tok::Gen(c)));
                k += 1;
            }
            '(' => {
                out.push((k, Tok::LPar));
                k += 1;
            }
            ')' => {
                out.push((k, Tok::RPar));
                k += 1;
            }
            ',' => {
                out.push((k, Tok::Comma));
                k += 1;
            }
            '*' => {
                out.push((k, Tok::Star));
                k += 1;
            }
            '/' => {
                out.push((k, Tok::Slash));
                k += 1;
            }
            '^' => {
                out.push((k, Tok::Caret));
                k += 1;
            }
            '+' => {
                out.push((k, Tok::Plus));
                k += 1;
            }
            '-' => {
                out.push((k, Tok::Minus));
                k += 1;
            }
            other => {
                return Err(Error::Parse { pos: k, msg: format!("unexpected character {other:?}") })
            }
        }
    }
    Ok(out)
}

struct Parser {
    field: FieldCtx,
    n: usize,
    toks: Vec<(usize, Tok)>,
    k: usize,
    end: usize,
}

impl Parser {
    fn peek(&self) -> Option<&Tok> {
        self.toks.get(self.k).map(|(_, t)| t)
    }

    fn pos(&self) -> usize {
        self.toks.get(self.k).map(|(p, _)| *p).unwrap_or(self.end)
    }

    fn bump(&mut self) -> Option<Tok> {
        let t = self.toks.get(self.k).map(|(_, t)| t.clone());
        self.k += 1;
        t
    }

    fn fail<T>(&self, msg: impl Into<String>) -> Result<T> {
        Err(Error::Parse { pos: self.pos(), msg: msg.into() })
    }

    fn expect(&mut self, want: Tok, what: &str) -> Result<()> {
        if self.peek() == Some(&want) {
            self.k += 1;
            Ok(())
        } else {
            self.fail(format!("expected {what}"))
        }
    }

    fn expect_int(&mut self, what: &str) -> Result<BigInt> {
        match self.peek() {
            Some(Tok::Int(_)) => match self.bump() {
                Some(Tok::Int(v)) => Ok(v),
                _ => unreachable!(),
            },
            _ => self.fail(format!("expected {what}")),
        }
    }

    fn expect_small(&mut self, what: &str) -> Result<usize> {
        let pos = self.pos();
        let v = self.expect_int(what)?;
        match u32::try_from(&v) {
            Ok(x) => Ok(x as usize),
            Err(_) => Err(Error::Parse { pos, msg: format!("{what} out of range") }),
        }
    }

    /// Optional `^( int )`, defaulting to 1; rejects negative exponents.
    fn exponent(&mut self) -> Result<u32> {
        if self.peek() != Some(&Tok::Caret) {
            return Ok(1);
        }
        self.k += 1;
        self.expect(Tok::LPar, "'(' after '^'")?;
        let pos = self.pos();
        let v = self.expect_int("exponent")?;
        self.expect(Tok::RPar, "')' closing the exponent")?;
        if v.sign() == Sign::Minus {
            return Err(Error::Parse { pos, msg: "negative exponent".into() });
        }
        u32::try_from(&v).map_err(|_| Error::Parse { pos, msg: "exponent too large".into() })
    }

    fn coefficient(&mut self) -> Result<Scalar> {
        let num = self.expect_int("integer")?;
        if self.peek() == Some(&Tok::Slash) {
            self.k += 1;
            let pos = self.pos();
            let den = self.expect_int("denominator")?;
            self.field
                .from_ratio(&num, &den)
                .map_err(|e| Error::Parse { pos, msg: e.to_string() })
        } else {
            Ok(self.field.from_bigint(&num))
        }
    }

    fn term(&mut self) -> Result<UElem> {
        let mut coeff = self.field.one();
        if matches!(self.peek(), Some(Tok::Int(_))) {
            coeff = self.coefficient()?;
            if self.peek() != Some(&Tok::Star) {
                return Ok(UElem::scalar(self.field, self.n, coeff));
            }
            self.k += 1;
        }
        let mut mat = UTMatrix::zeros(self.n);
        let mut h = HMonomial::identity(self.n);
        let mut last_e: Option<(usize, usize)> = None;
        let mut last_h: usize = 0;
        loop {
            let fpos = self.pos();
            match self.bump() {
                Some(Tok::Gen('E')) => {
                    self.expect(Tok::LPar, "'(' after 'E'")?;
                    let b = self.expect_small("row index")?;
                    self.expect(Tok::Comma, "',' between indices")?;
                    let a = self.expect_small("column index")?;
                    self.expect(Tok::RPar, "')' closing the generator")?;
                    let m = self.exponent()?;
                    if a < 1 || b <= a || b > self.n {
                        return Err(Error::Parse {
                            pos: fpos,
                            msg: format!("E({b},{a}) is not a lowering generator for n={}", self.n),
                        });
                    }
                    if m > 0 {
                        if last_h != 0 {
                            return Err(Error::Parse {
                                pos: fpos,
                                msg: "lowering factors must precede toral factors".into(),
                            });
                        }
                        if let Some(prev) = last_e {
                            if (b, a) < prev {
                                return Err(Error::Parse {
                                    pos: fpos,
                                    msg: format!(
                                        "factor E({b},{a}) violates the canonical order after E({},{})",
                                        prev.0, prev.1
                                    ),
                                });
                            }
                        }
                        if last_e == Some((b, a)) {
                            // immediate repeat: divided powers contract with
                            // a binomial multiplicity
                            let x = mat.get(a, b);
                            coeff = coeff
                                .mul(&self.field.from_bigint(&binom_int((x + m) as i64, x)));
                            mat.set(a, b, x + m);
                        } else {
                            mat.set(a, b, m);
                            last_e = Some((b, a));
                        }
                    }
                }
                Some(Tok::Gen('H')) => {
                    self.expect(Tok::LPar, "'(' after 'H'")?;
                    let l = self.expect_small("toral level")?;
                    self.expect(Tok::RPar, "')' closing the generator")?;
                    let kexp = self.exponent()?;
                    if l < 1 || l >= self.n {
                        return Err(Error::Parse {
                            pos: fpos,
                            msg: format!("H({l}) is out of range for n={}", self.n),
                        });
                    }
                    if kexp > 0 {
                        if l <= last_h {
                            return Err(Error::Parse {
                                pos: fpos,
                                msg: format!("toral factor H({l}) violates the canonical order"),
                            });
                        }
                        h = h.with_at(l, kexp);
                        last_h = l;
                    }
                }
                _ => return Err(Error::Parse { pos: fpos, msg: "expected a generator".into() }),
            }
            if self.peek() == Some(&Tok::Star) {
                self.k += 1;
            } else {
                break;
            }
        }
        let mut out = UElem::zero(self.field, self.n);
        out.add_term(Monomial { mat, h }, coeff);
        Ok(out)
    }
}

/// Parses an element of the lowering-and-toral part of the hyperalgebra.
pub fn parse(field: FieldCtx, n: usize, input: &str) -> Result<UElem> {
    if n < 2 {
        return Err(Error::IndexRange("rank must be at least 2".into()));
    }
    let toks = tokenize(input)?;
    let mut p = Parser { field, n, toks, k: 0, end: input.len() };
    if p.peek().is_none() {
        return p.fail("empty expression");
    }
    let mut acc = UElem::zero(field, n);
    let mut negate = false;
    if p.peek() == Some(&Tok::Minus) {
        p.k += 1;
        negate = true;
    }
    loop {
        let t = p.term()?;
        acc = if negate { acc.sub(&t) } else { acc.add(&t) };
        match p.peek() {
            Some(Tok::Plus) => {
                p.k += 1;
                negate = false;
            }
            Some(Tok::Minus) => {
                p.k += 1;
                negate = true;
            }
            None => break,
            _ => return p.fail("expected '+', '-', or end of input"),
        }
    }
    Ok(acc)
}
