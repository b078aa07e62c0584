use num_bigint::BigInt;

use crate::error::{Error, Result};
use crate::fieldlin::Field;
use crate::grassmann::{Algebra, Multivector};

/// Grammar accepted by `parse_expression`, for help texts.
pub const GRAMMAR: &str = "\
expr    := term (('+' | '-') term)*
term    := factor (('^' | '*') factor)*
factor  := literal | 'e'<k> | 'e{'<k>(','<k>)*'}' | '(' expr ')' | '[' expr ',' expr ']' | '-' factor
literal := <int> ('/' <int>)?
'^' and '*' are both the wedge product; it binds tighter than + and -.";

/// Parses and evaluates an expression in ℰ over `alg`.
pub fn parse_expression(text: &str, alg: Algebra) -> Result<Multivector> {
    let mut p = Parser { src: text.as_bytes(), pos: 0, alg };
    let v = p.expr()?;
    p.skip_ws();
    if p.pos < p.src.len() {
        return Err(p.error("unexpected trailing input"));
    }
    Ok(v)
}

/// "Q", "GF(p)" or "GF:p".
pub fn parse_field(text: &str) -> Result<Field> {
    let t = text.trim();
    if t == "Q" {
        return Ok(Field::Rational);
    }
    let digits = t
        .strip_prefix("GF(")
        .and_then(|r| r.strip_suffix(')'))
        .or_else(|| t.strip_prefix("GF:"))
        .ok_or_else(|| Error::InvalidArgument(format!("unknown field '{t}', expected Q, GF(p) or GF:p")))?;
    let p: u64 = digits
        .parse()
        .map_err(|_| Error::InvalidArgument(format!("bad characteristic '{digits}'")))?;
    Field::prime(p)
}

struct Parser<'a> {
    src: &'a [u8],
    pos: usize,
    alg: Algebra,
}

impl Parser<'_> {
    fn error(&self, message: &str) -> Error {
        Error::Syntax { pos: self.pos, message: message.to_string() }
    }

    fn skip_ws(&mut self) {
        while self.pos < self.src.len() && self.src[self.pos].is_ascii_whitespace() {
            self.pos += 1;
        }
    }

    fn peek(&mut self) -> Option<u8> {
        self.skip_ws();
        self.src.get(self.pos).copied()
    }

    fn expect(&mut self, c: u8) -> Result<()> {
        if self.peek() == Some(c) {
            self.pos += 1;
            Ok(())
        } else {
            Err(self.error(&format!("expected '{}'", c as char)))
        }
    }

    fn expr(&mut self) -> Result<Multivector> {
        let mut acc = self.term()?;
        loop {
            match self.peek() {
                Some(b'+') => {
                    self.pos += 1;
                    acc = &acc + &self.term()?;
                }
                Some(b'-') => {
                    self.pos += 1;
                    acc = &acc - &self.term()?;
                }
                _ => return Ok(acc),
            }
        }
    }

    fn term(&mut self) -> Result<Multivector> {
        let mut acc = self.factor()?;
        while let Some(b'^' | b'*') = self.peek() {
            self.pos += 1;
            acc = &acc * &self.factor()?;
        }
        Ok(acc)
    }

    fn factor(&mut self) -> Result<Multivector> {
        match self.peek() {
            Some(b'-') => {
                self.pos += 1;
                Ok(-self.factor()?)
            }
            Some(b'(') => {
                self.pos += 1;
                let v = self.expr()?;
                self.expect(b')')?;
                Ok(v)
            }
            Some(b'[') => {
                self.pos += 1;
                let a = self.expr()?;
                self.expect(b',')?;
                let b = self.expr()?;
                self.expect(b']')?;
                Ok(a.commutator(&b)?)
            }
            Some(b'e') => {
                self.pos += 1;
                self.monomial()
            }
            Some(c) if c.is_ascii_digit() => self.literal(),
            Some(_) => Err(self.error("expected a number, generator, '(', '[' or '-'")),
            None => Err(self.error("unexpected end of input")),
        }
    }

    fn integer(&mut self) -> Result<BigInt> {
        let start = self.pos;
        while self.pos < self.src.len() && self.src[self.pos].is_ascii_digit() {
            self.pos += 1;
        }
        if start == self.pos {
            return Err(self.error("expected digits"));
        }
        let s = std::str::from_utf8(&self.src[start..self.pos]).expect("ascii digits");
        Ok(s.parse().expect("digit string"))
    }

    fn index(&mut self) -> Result<usize> {
        let n = self.alg.n();
        let k: usize = self.integer()?.try_into().unwrap_or(usize::MAX);
        if k == 0 || k > n {
            return Err(Error::IndexOutOfRange { index: k, n });
        }
        Ok(k)
    }

    fn monomial(&mut self) -> Result<Multivector> {
        // No whitespace between 'e' and its index.
        if self.src.get(self.pos) == Some(&b'{') {
            self.pos += 1;
            let mut acc = Multivector::one(self.alg);
            loop {
                self.skip_ws();
                let k = self.index()?;
                acc = &acc * &Multivector::generator(self.alg, k)?;
                match self.peek() {
                    Some(b',') => self.pos += 1,
                    Some(b'}') => {
                        self.pos += 1;
                        return Ok(acc);
                    }
                    _ => return Err(self.error("expected ',' or '}'")),
                }
            }
        }
        let k = self.index()?;
        Multivector::generator(self.alg, k)
    }

    fn literal(&mut self) -> Result<Multivector> {
        let num = self.integer()?;
        let field = self.alg.field();
        let c = if self.peek() == Some(b'/') {
            self.pos += 1;
            self.skip_ws();
            let den = self.integer()?;
            field.ratio(&num, &den)?
        } else {
            field.big_int(&num)
        };
        Ok(Multivector::scalar(self.alg, c))
    }
}
