//! Canonical text form, expression parser and JSON records for elements.
//!
//! Text form: terms in canonical order joined by ` + `, each written
//! `coeff*e[i]^k*...`. A unit coefficient is omitted, nonnegative rationals
//! are written bare and everything else is parenthesized. ω is the token `w`
//! (`ω` is accepted on input).

use std::fmt;

use num::rational::BigRational;
use num::traits::{One, Signed, Zero};
use num::BigInt;
use serde::{Deserialize, Serialize};

use crate::coeff::{Coefficient, Complex64, Exact};
use crate::cyclotomic::Cyclotomic;
use crate::element::Element;
use crate::error::{Error, Result};
use crate::index::MultiIndex;

/// Coefficients that have a text rendering.
pub trait TextCoefficient: Coefficient {
    /// `None` for the unit coefficient, which is left implicit.
    fn render(&self) -> Option<String>;
}

impl TextCoefficient for Exact {
    fn render(&self) -> Option<String> {
        if *self == Exact::one() {
            return None;
        }
        if self.is_nonnegative_rational() {
            return Some(self.components()[0].0.to_string());
        }
        let body = match self.as_scaled_phase() {
            Some(((re, im), 0)) => gaussian_text(&re, &im),
            Some(((re, im), k)) => {
                let phase = if k == 1 { "w" } else { "w^2" };
                if re.is_one() && im.is_zero() {
                    phase.to_string()
                } else if !re.is_zero() && !im.is_zero() {
                    format!("({})*{phase}", gaussian_text(&re, &im))
                } else {
                    format!("{}*{phase}", gaussian_text(&re, &im))
                }
            }
            None => {
                let [(xr, xi), (yr, yi)] = self.components();
                format!("({}) + ({})*w", gaussian_text(&xr, &xi), gaussian_text(&yr, &yi))
            }
        };
        Some(format!("({body})"))
    }
}

impl TextCoefficient for Complex64 {
    fn render(&self) -> Option<String> {
        if *self == Complex64::new(1.0, 0.0) {
            return None;
        }
        if self.im == 0.0 && self.re >= 0.0 {
            return Some(format!("{:?}", self.re));
        }
        let sign = if self.im < 0.0 { '-' } else { '+' };
        Some(format!("({:?} {sign} {:?}*i)", self.re, self.im.abs()))
    }
}

fn gaussian_text(re: &BigRational, im: &BigRational) -> String {
    let imag = |v: &BigRational| -> String {
        if v.is_one() {
            "i".into()
        } else {
            format!("{v}*i")
        }
    };
    match (re.is_zero(), im.is_zero()) {
        (_, true) => re.to_string(),
        (true, false) if im.is_negative() => format!("-{}", imag(&-im)),
        (true, false) => imag(im),
        (false, false) if im.is_negative() => format!("{re} - {}", imag(&-im)),
        (false, false) => format!("{re} + {}", imag(im)),
    }
}

impl<C: TextCoefficient> fmt::Display for Element<C> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        for (n, (idx, c)) in self.terms().enumerate() {
            if n > 0 {
                write!(f, " + ")?;
            }
            match (c.render(), idx.is_zero()) {
                (None, true) => write!(f, "1")?,
                (None, false) => write!(f, "{idx}")?,
                (Some(s), true) => write!(f, "{s}")?,
                (Some(s), false) => write!(f, "{s}*{idx}")?,
            }
        }
        Ok(())
    }
}

/// Parses and evaluates an expression.
///
/// Grammar: `+ - * / ^`, unary minus, parentheses, decimal numbers (read
/// exactly), the constants `i` and `w`, generators `e[n]`, and the functions
/// `inv(x)`, `conj(x)`, `grade(k, x)`, `body(x)`, `soul(x)`. Evaluation
/// follows the algebra, left to right.
pub fn parse_element<C: Coefficient>(input: &str) -> Result<Element<C>> {
    let mut p = Parser { src: input, pos: 0 };
    let value = p.expr()?;
    p.skip_ws();
    if p.pos < input.len() {
        return Err(Error::parse(p.pos, "unexpected trailing input"));
    }
    Ok(value)
}

struct Parser<'a> {
    src: &'a str,
    pos: usize,
}

impl Parser<'_> {
    fn rest(&self) -> &str {
        &self.src[self.pos..]
    }

    fn peek(&self) -> Option<char> {
        self.rest().chars().next()
    }

    fn skip_ws(&mut self) {
        while let Some(c) = self.peek() {
            if !c.is_whitespace() {
                break;
            }
            self.pos += c.len_utf8();
        }
    }

    fn eat(&mut self, c: char) -> bool {
        self.skip_ws();
        if self.peek() == Some(c) {
            self.pos += c.len_utf8();
            true
        } else {
            false
        }
    }

    fn expect(&mut self, c: char) -> Result<()> {
        if self.eat(c) {
            Ok(())
        } else {
            Err(Error::parse(self.pos, format!("expected '{c}'")))
        }
    }

    fn expr<C: Coefficient>(&mut self) -> Result<Element<C>> {
        let mut acc = self.term()?;
        loop {
            if self.eat('+') {
                acc = acc.add(&self.term()?);
            } else if self.eat('-') {
                acc = acc.sub(&self.term()?);
            } else {
                return Ok(acc);
            }
        }
    }

    fn term<C: Coefficient>(&mut self) -> Result<Element<C>> {
        let mut acc = self.unary()?;
        loop {
            if self.eat('*') {
                acc = acc.mul(&self.unary()?);
            } else if self.eat('/') {
                acc = acc.mul(&self.unary()?.inverse()?);
            } else {
                return Ok(acc);
            }
        }
    }

    fn unary<C: Coefficient>(&mut self) -> Result<Element<C>> {
        if self.eat('-') {
            return Ok(self.unary()?.neg());
        }
        let base = self.primary()?;
        if self.eat('^') {
            self.skip_ws();
            let start = self.pos;
            let n = self.integer()?;
            let n = u32::try_from(n).map_err(|_| Error::parse(start, "exponent too large"))?;
            return Ok(base.pow(n));
        }
        Ok(base)
    }

    fn primary<C: Coefficient>(&mut self) -> Result<Element<C>> {
        self.skip_ws();
        let start = self.pos;
        match self.peek() {
            None => Err(Error::parse(start, "unexpected end of input")),
            Some('(') => {
                self.pos += 1;
                let v = self.expr()?;
                self.expect(')')?;
                Ok(v)
            }
            Some('ω') => {
                self.pos += 'ω'.len_utf8();
                Ok(Element::scalar(C::from_phase(Cyclotomic::OMEGA)))
            }
            Some(c) if c.is_ascii_digit() || c == '.' => {
                Ok(Element::scalar(C::from_rational(&self.number()?)))
            }
            Some(c) if c.is_ascii_alphabetic() => {
                let ident = self.ident();
                match ident {
                    "i" => Ok(Element::scalar(C::imaginary_unit())),
                    "w" => Ok(Element::scalar(C::from_phase(Cyclotomic::OMEGA))),
                    "e" => {
                        self.expect('[')?;
                        self.skip_ws();
                        let at = self.pos;
                        let n = self.integer()?;
                        self.expect(']')?;
                        match u32::try_from(n) {
                            Ok(p) if p >= 1 => Ok(Element::generator(p)),
                            _ => Err(Error::parse(at, "generator positions start at 1")),
                        }
                    }
                    "inv" => {
                        let v = self.call_arg()?;
                        v.inverse()
                    }
                    "conj" => Ok(self.call_arg()?.conj()),
                    "body" => Ok(Element::scalar(self.call_arg()?.body())),
                    "soul" => Ok(self.call_arg()?.soul()),
                    "grade" => {
                        self.expect('(')?;
                        self.skip_ws();
                        let at = self.pos;
                        let k = u32::try_from(self.integer()?)
                            .map_err(|_| Error::parse(at, "grade too large"))?;
                        self.expect(',')?;
                        let v = self.expr()?;
                        self.expect(')')?;
                        Ok(v.grade_project(k))
                    }
                    other => Err(Error::parse(start, format!("unknown name '{other}'"))),
                }
            }
            Some(c) => Err(Error::parse(start, format!("unexpected character '{c}'"))),
        }
    }

    fn call_arg<C: Coefficient>(&mut self) -> Result<Element<C>> {
        self.expect('(')?;
        let v = self.expr()?;
        self.expect(')')?;
        Ok(v)
    }

    fn ident(&mut self) -> &str {
        let start = self.pos;
        let len = self
            .rest()
            .find(|c: char| !c.is_ascii_alphanumeric() && c != '_')
            .unwrap_or(self.rest().len());
        self.pos += len;
        &self.src[start..start + len]
    }

    fn digits(&mut self) -> &str {
        let start = self.pos;
        let len = self
            .rest()
            .find(|c: char| !c.is_ascii_digit())
            .unwrap_or(self.rest().len());
        self.pos += len;
        &self.src[start..start + len]
    }

    fn integer(&mut self) -> Result<u64> {
        let start = self.pos;
        let d = self.digits();
        if d.is_empty() {
            return Err(Error::parse(start, "expected an integer"));
        }
        d.parse().map_err(|_| Error::parse(start, "integer out of range"))
    }

    /// Decimal literal with optional fraction and exponent, read exactly.
    fn number(&mut self) -> Result<BigRational> {
        let start = self.pos;
        let int_part = self.digits().to_string();
        let mut frac = String::new();
        if self.peek() == Some('.') {
            self.pos += 1;
            frac = self.digits().to_string();
        }
        if int_part.is_empty() && frac.is_empty() {
            return Err(Error::parse(start, "malformed number"));
        }
        let mut exp: i64 = 0;
        let bytes = self.rest().as_bytes();
        let has_exp = matches!(bytes.first(), Some(b'e' | b'E'))
            && match bytes.get(1) {
                Some(b) if b.is_ascii_digit() => true,
                Some(b'+' | b'-') => bytes.get(2).is_some_and(u8::is_ascii_digit),
                _ => false,
            };
        if has_exp {
            self.pos += 1;
            let negative = match self.peek() {
                Some('-') => {
                    self.pos += 1;
                    true
                }
                Some('+') => {
                    self.pos += 1;
                    false
                }
                _ => false,
            };
            let at = self.pos;
            let e = self.integer()? as i64;
            if e > 4096 {
                return Err(Error::parse(at, "exponent out of range"));
            }
            exp = if negative { -e } else { e };
        }
        let digits: BigInt = format!("{int_part}{frac}0")
            .parse::<BigInt>()
            .expect("digit string")
            / BigInt::from(10);
        let scale = exp - frac.len() as i64;
        let ten = BigInt::from(10);
        Ok(if scale >= 0 {
            BigRational::from_integer(digits * num::pow(ten, scale as usize))
        } else {
            BigRational::new(digits, num::pow(ten, (-scale) as usize))
        })
    }
}

#[derive(Serialize, Deserialize)]
struct Record {
    terms: Vec<TermRecord>,
}

#[derive(Serialize, Deserialize)]
struct TermRecord {
    coeff: [f64; 2],
    index: Vec<(u32, u8)>,
}

/// `{"terms":[{"coeff":[re,im],"index":[[pos,exp],...]}]}` in canonical order.
pub fn to_json<C: Coefficient>(z: &Element<C>) -> String {
    let record = Record {
        terms: z
            .terms()
            .map(|(idx, c)| {
                let v = c.to_complex();
                TermRecord {
                    coeff: [v.re, v.im],
                    index: idx.entries().to_vec(),
                }
            })
            .collect(),
    };
    serde_json::to_string(&record).expect("records always serialize")
}

/// Reads a JSON record. Exact coefficients take the binary value of each
/// float.
pub fn from_json<C: Coefficient>(input: &str) -> Result<Element<C>> {
    let record: Record = serde_json::from_str(input).map_err(|e| {
        let offset = input
            .lines()
            .take(e.line().saturating_sub(1))
            .map(|l| l.len() + 1)
            .sum::<usize>();
        Error::parse(offset + e.column().saturating_sub(1), e.to_string())
    })?;
    let mut terms = Vec::with_capacity(record.terms.len());
    for t in record.terms {
        let idx = MultiIndex::from_entries(t.index)?;
        let c = C::from_f64_parts(t.coeff[0], t.coeff[1])
            .ok_or_else(|| Error::InvalidArgument("non-finite coefficient".into()))?;
        terms.push((idx, c));
    }
    Ok(Element::from_terms(terms))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::element::ExactElement;

    fn eval(s: &str) -> String {
        parse_element::<Exact>(s).unwrap().to_string()
    }

    #[test]
    fn canonical_text() {
        assert_eq!(eval("e[2]*e[1]"), "(w^2)*e[1]*e[2]");
        assert_eq!(eval("inv(1 + e[1])"), "1 + (-1)*e[1] + e[1]^2");
        assert_eq!(eval("grade(0, conj(e[1])*e[1])"), "0");
        assert_eq!(eval("3/2 + i*e[3]^2"), "3/2 + (i)*e[3]^2");
        assert_eq!(eval("0.25*e[1]"), "1/4*e[1]");
        assert_eq!(eval("1e-2"), "1/100");
    }

    #[test]
    fn operators_and_functions() {
        assert_eq!(eval("-e[1] + e[1]"), "0");
        assert_eq!(eval("w^3"), "1");
        assert_eq!(eval("ω*ω"), "(w^2)");
        assert_eq!(eval("body(3 + e[1])"), "3");
        assert_eq!(eval("soul(3 + e[1])"), "e[1]");
        assert_eq!(eval("e[1]/2"), "1/2*e[1]");
        assert_eq!(eval("(1 + i)*w"), "((1 + i)*w)");
    }

    #[test]
    fn every_rendering_reparses() {
        for s in [
            "e[2]*e[1]",
            "(1 + i)*w + 2*e[1] - 3*i*e[2]^2",
            "1/3 + w*e[1]*e[2] + (2 + w)*e[3]",
            "-i*w^2*e[1]",
            "(1 + 2*i) + (3 - i)*w",
        ] {
            let z = parse_element::<Exact>(s).unwrap();
            let back = parse_element::<Exact>(&z.to_string()).unwrap();
            assert_eq!(back, z, "{s} -> {z}");
        }
    }

    #[test]
    fn parse_errors_carry_positions() {
        let err = parse_element::<Exact>("e[1] + * 2").unwrap_err();
        assert_eq!(err, Error::parse(7, "unexpected character '*'"));
        assert!(matches!(
            parse_element::<Exact>("e[0]"),
            Err(Error::Parse { position: 2, .. })
        ));
        assert!(matches!(
            parse_element::<Exact>("foo(1)"),
            Err(Error::Parse { position: 0, .. })
        ));
        assert!(matches!(
            parse_element::<Exact>("(1"),
            Err(Error::Parse { position: 2, .. })
        ));
        assert_eq!(parse_element::<Exact>("inv(e[1])"), Err(Error::NotInvertible));
    }

    #[test]
    fn float_text() {
        let z = parse_element::<Complex64>("e[2]*e[1] + 0.5").unwrap();
        let s = z.to_string();
        assert_eq!(s, "0.5 + (-0.5 - 0.8660254037844386*i)*e[1]*e[2]");
        let back = parse_element::<Complex64>(&s).unwrap();
        assert_eq!(back, z);
    }

    #[test]
    fn json_records() {
        let z: ExactElement = parse_element("1/2 + i*e[1] + e[1]*e[3]^2").unwrap();
        let js = to_json(&z);
        assert_eq!(
            js,
            r#"{"terms":[{"coeff":[0.5,0.0],"index":[]},{"coeff":[0.0,1.0],"index":[[1,1]]},{"coeff":[1.0,0.0],"index":[[1,1],[3,2]]}]}"#
        );
        assert_eq!(from_json::<Exact>(&js).unwrap(), z);
        assert!(from_json::<Exact>(r#"{"terms":[{"coeff":[1,0],"index":[[1,3]]}]}"#).is_err());
        assert!(matches!(
            from_json::<Exact>("{\"terms\": ["),
            Err(Error::Parse { .. })
        ));
    }
}
