use super::{Monomial, PolyError, Polynomial, Registry};
use crate::exactmath::Rational;

#[derive(Debug, Clone, PartialEq)]
enum Token {
    Num(String),
    Name(String),
    Plus,
    Minus,
    Star,
    Slash,
    Caret,
}

fn tokenize(input: &str) -> Result<Vec<Token>, String> {
    let mut out = Vec::new();
    let mut chars = input.char_indices().peekable();
    while let Some(&(i, c)) = chars.peek() {
        match c {
            c if c.is_whitespace() => {
                chars.next();
            }
            '+' | '-' | '*' | '/' | '^' => {
                chars.next();
                out.push(match c {
                    '+' => Token::Plus,
                    '-' => Token::Minus,
                    '*' => Token::Star,
                    '/' => Token::Slash,
                    _ => Token::Caret,
                });
            }
            c if c.is_ascii_digit() => {
                let mut s = String::new();
                while let Some(&(_, d)) = chars.peek() {
                    if !d.is_ascii_digit() {
                        break;
                    }
                    s.push(d);
                    chars.next();
                }
                out.push(Token::Num(s));
            }
            c if c.is_ascii_alphabetic() || c == '_' => {
                let mut s = String::new();
                while let Some(&(_, d)) = chars.peek() {
                    if !(d.is_ascii_alphanumeric() || d == '_') {
                        break;
                    }
                    s.push(d);
                    chars.next();
                }
                out.push(Token::Name(s));
            }
            other => return Err(format!("unexpected character {other:?} at offset {i}")),
        }
    }
    Ok(out)
}

struct Parser<'a> {
    tokens: Vec<Token>,
    pos: usize,
    reg: &'a mut Registry,
}

impl Parser<'_> {
    fn peek(&self) -> Option<&Token> {
        self.tokens.get(self.pos)
    }

    fn bump(&mut self) -> Option<Token> {
        let t = self.tokens.get(self.pos).cloned();
        self.pos += 1;
        t
    }

    fn expect_num(&mut self) -> Result<String, String> {
        match self.bump() {
            Some(Token::Num(s)) => Ok(s),
            other => Err(format!("expected integer, found {other:?}")),
        }
    }

    fn coeff(&mut self) -> Result<Rational, String> {
        let num = self.expect_num()?;
        let lit = if self.peek() == Some(&Token::Slash) {
            self.bump();
            format!("{num}/{}", self.expect_num()?)
        } else {
            num
        };
        lit.parse().map_err(|e| format!("{e}"))
    }

    fn varpow(&mut self) -> Result<Monomial, String> {
        let name = match self.bump() {
            Some(Token::Name(n)) => n,
            other => return Err(format!("expected indeterminate, found {other:?}")),
        };
        let v = self.reg.var(&name);
        let mut e = 1;
        if self.peek() == Some(&Token::Caret) {
            self.bump();
            e = self
                .expect_num()?
                .parse::<u32>()
                .map_err(|e| e.to_string())?;
            if e == 0 {
                return Err("exponent must be positive".into());
            }
        }
        Ok(Monomial::from_powers([(v, e)]))
    }

    fn term(&mut self) -> Result<(Monomial, Rational), String> {
        let mut c = Rational::one();
        let mut m = Monomial::one();
        match self.peek() {
            Some(Token::Num(_)) => c = self.coeff()?,
            Some(Token::Name(_)) => m = self.varpow()?,
            other => return Err(format!("expected term, found {other:?}")),
        }
        while self.peek() == Some(&Token::Star) {
            self.bump();
            m = m.mul(&self.varpow()?);
        }
        Ok((m, c))
    }

    fn poly(&mut self) -> Result<Polynomial, String> {
        let mut out = Polynomial::zero();
        let mut negate = false;
        if self.peek() == Some(&Token::Minus) {
            self.bump();
            negate = true;
        }
        loop {
            let (m, c) = self.term()?;
            let c = if negate { -c } else { c };
            out = &out + &Polynomial::term(c, m);
            match self.bump() {
                None => return Ok(out),
                Some(Token::Plus) => negate = false,
                Some(Token::Minus) => negate = true,
                Some(t) => return Err(format!("unexpected token {t:?}")),
            }
        }
    }
}

/// Parse `poly := ['-'] term (('+'|'-') term)*`, creating indeterminates in
/// `reg` as their names appear.
pub fn parse_polynomial(input: &str, reg: &mut Registry) -> Result<Polynomial, PolyError> {
    let err = |reason: String| PolyError::Parse {
        input: input.to_string(),
        reason,
    };
    let tokens = tokenize(input).map_err(err)?;
    if tokens.is_empty() {
        return Err(err("empty input".into()));
    }
    let mut p = Parser { tokens, pos: 0, reg };
    p.poly().map_err(err)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parses_grammar_examples() {
        let mut reg = Registry::new();
        let p = parse_polynomial("2*a^2 - a", &mut reg).unwrap();
        assert_eq!(p.display(&reg).to_string(), "2*a^2 - a");
        let q = parse_polynomial(" -1/2*x*y^3 + 7 ", &mut reg).unwrap();
        assert_eq!(q.display(&reg).to_string(), "-1/2*x*y^3 + 7");
        let r = parse_polynomial("a - a + 0", &mut reg).unwrap();
        assert!(r.is_zero());
        assert_eq!(r.display(&reg).to_string(), "0");
    }

    #[test]
    fn rejects_malformed() {
        let mut reg = Registry::new();
        for s in ["", "a +", "2 a", "a^0", "*a", "a**b", "1/0", "a^-1", "(a)", "a/2"] {
            assert!(parse_polynomial(s, &mut reg).is_err(), "{s:?} accepted");
        }
    }
}
