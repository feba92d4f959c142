//! Text formats for polynomials and value tables.
//!
//! Polynomials: `q=<q> n=<n>: <c>*X<i>^<e>*... + ...`, terms in decreasing
//! graded-lex order, exponent 1 omitted, the constant term written as a
//! bare coefficient and the zero polynomial as `0`. The parser accepts
//! any term order, an omitted coefficient, repeated variables inside a
//! term and repeated terms, and normalizes the result.
//!
//! Value tables: a `q=<q> n=<n>` line followed by `q^n` whitespace
//! separated values in mixed-radix point order.

use std::fmt;

use super::poly::{EvalTable, Polynomial};
use super::ring::{Ring, DEFAULT_CAP};
use crate::error::{Error, Result};

impl fmt::Display for Polynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}: ", self.ring())?;
        let terms = self.terms();
        if terms.is_empty() {
            return f.write_str("0");
        }
        for (k, (m, c)) in terms.iter().enumerate() {
            if k > 0 {
                f.write_str(" + ")?;
            }
            if m.degree() == 0 {
                write!(f, "{c}")?;
            } else {
                write!(f, "{c}*{m}")?;
            }
        }
        Ok(())
    }
}

impl fmt::Display for EvalTable {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "{}", self.ring())?;
        for (k, v) in self.values().iter().enumerate() {
            if k > 0 {
                f.write_str(" ")?;
            }
            write!(f, "{v}")?;
        }
        writeln!(f)
    }
}

impl std::str::FromStr for Polynomial {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        parse_polynomial(s)
    }
}

pub fn parse_polynomial(s: &str) -> Result<Polynomial> {
    parse_polynomial_with_cap(s, DEFAULT_CAP)
}

/// Parses a polynomial, refusing rings with more than `cap` points.
pub fn parse_polynomial_with_cap(s: &str, cap: u64) -> Result<Polynomial> {
    let mut c = Cursor::new(s);
    let ring = c.header(cap)?;
    c.skip_ws();
    c.expect(b':')?;
    let mut terms: Vec<(Vec<u32>, u64)> = Vec::new();
    loop {
        c.skip_ws();
        terms.push(c.term(&ring)?);
        c.skip_ws();
        match c.peek() {
            Some(b'+') => c.pos += 1,
            None => break,
            Some(_) => return Err(c.error("expected '+' or end of input")),
        }
    }
    Polynomial::from_terms(ring, terms)
}

pub fn parse_eval_table(s: &str) -> Result<EvalTable> {
    parse_eval_table_with_cap(s, DEFAULT_CAP)
}

pub fn parse_eval_table_with_cap(s: &str, cap: u64) -> Result<EvalTable> {
    let mut c = Cursor::new(s);
    let ring = c.header(cap)?;
    let mut values = Vec::with_capacity(ring.size());
    loop {
        c.skip_ws();
        if c.peek().is_none() {
            break;
        }
        let at = c.pos;
        let v = c.integer()?;
        if v >= u64::from(ring.q()) {
            return Err(Error::parse(
                at,
                format!("value {v} is not below q={}", ring.q()),
            ));
        }
        if values.len() == ring.size() {
            return Err(Error::parse(at, "more values than points"));
        }
        values.push(v as u32);
    }
    EvalTable::new(ring, values)
}

/// Parses a comma separated list of non-negative integers, e.g. `1,0,2`.
pub fn parse_u32_list(s: &str) -> Result<Vec<u32>> {
    let s = s.trim();
    if s.is_empty() {
        return Ok(Vec::new());
    }
    let mut out = Vec::new();
    let mut offset = 0;
    for part in s.split(',') {
        let t = part.trim();
        let v = t
            .parse::<u32>()
            .map_err(|e| Error::parse(offset, format!("{t:?}: {e}")))?;
        out.push(v);
        offset += part.len() + 1;
    }
    Ok(out)
}

struct Cursor<'a> {
    s: &'a [u8],
    pos: usize,
}

impl<'a> Cursor<'a> {
    fn new(s: &'a str) -> Self {
        Cursor {
            s: s.as_bytes(),
            pos: 0,
        }
    }

    fn error(&self, msg: &str) -> Error {
        Error::parse(self.pos, msg)
    }

    fn peek(&self) -> Option<u8> {
        self.s.get(self.pos).copied()
    }

    fn skip_ws(&mut self) {
        while matches!(self.peek(), Some(b) if b.is_ascii_whitespace()) {
            self.pos += 1;
        }
    }

    fn expect(&mut self, b: u8) -> Result<()> {
        if self.peek() == Some(b) {
            self.pos += 1;
            Ok(())
        } else {
            Err(self.error(&format!("expected '{}'", b as char)))
        }
    }

    fn integer(&mut self) -> Result<u64> {
        let start = self.pos;
        while matches!(self.peek(), Some(b) if b.is_ascii_digit()) {
            self.pos += 1;
        }
        if start == self.pos {
            return Err(self.error("expected an integer"));
        }
        // digits only, so the slice is valid UTF-8
        std::str::from_utf8(&self.s[start..self.pos])
            .expect("ascii digits")
            .parse::<u64>()
            .map_err(|_| Error::parse(start, "integer out of range"))
    }

    fn header(&mut self, cap: u64) -> Result<Ring> {
        self.skip_ws();
        self.expect(b'q')?;
        self.skip_ws();
        self.expect(b'=')?;
        self.skip_ws();
        let at = self.pos;
        let q = self.integer()?;
        self.skip_ws();
        self.expect(b'n')?;
        self.skip_ws();
        self.expect(b'=')?;
        self.skip_ws();
        let n = self.integer()?;
        let n = usize::try_from(n).map_err(|_| Error::parse(at, "n out of range"))?;
        Ring::with_cap(q, n, cap).map_err(|e| Error::parse(at, e.to_string()))
    }

    fn term(&mut self, ring: &Ring) -> Result<(Vec<u32>, u64)> {
        let q = u64::from(ring.q());
        let mut exps = vec![0u64; ring.n()];
        let mut coeff = 1u64;
        loop {
            self.skip_ws();
            match self.peek() {
                Some(b'X') | Some(b'x') => {
                    self.pos += 1;
                    let at = self.pos;
                    let i = self.integer()?;
                    if i == 0 || i > ring.n() as u64 {
                        return Err(Error::parse(
                            at,
                            format!("variable X{i} not in X1..X{}", ring.n()),
                        ));
                    }
                    self.skip_ws();
                    let e = if self.peek() == Some(b'^') {
                        self.pos += 1;
                        self.skip_ws();
                        self.integer()?
                    } else {
                        1
                    };
                    let slot = &mut exps[(i - 1) as usize];
                    *slot = reduce_u64(slot.saturating_add(e), q);
                }
                Some(b) if b.is_ascii_digit() => {
                    let v = self.integer()? % q;
                    coeff = coeff * v % q;
                }
                _ => return Err(self.error("expected a coefficient or a variable")),
            }
            self.skip_ws();
            if self.peek() == Some(b'*') {
                self.pos += 1;
            } else {
                break;
            }
        }
        Ok((exps.into_iter().map(|e| e as u32).collect(), coeff))
    }
}

fn reduce_u64(e: u64, q: u64) -> u64 {
    if e < q {
        e
    } else {
        (e - 1) % (q - 1) + 1
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    #[test]
    fn display_is_decreasing_graded_lex() {
        let f = parse_polynomial("q=3 n=2: 1 + 2*X2 + X1*X2 + X1^2").unwrap();
        assert_eq!(f.to_string(), "q=3 n=2: 1*X1^2 + 1*X1*X2 + 2*X2 + 1");
        let z = parse_polynomial("q=2 n=3: 0").unwrap();
        assert!(z.is_zero());
        assert_eq!(z.to_string(), "q=2 n=3: 0");
    }

    #[test]
    fn parser_normalizes() {
        let f = parse_polynomial("q=2 n=2: X1*X1 + X1 + 3*X2^5").unwrap();
        // X1^2 = X1 cancels X1; 3 = 1 mod 2 and X2^5 = X2
        assert_eq!(f.to_string(), "q=2 n=2: 1*X2");
        let g = parse_polynomial("  q = 5 n = 1 :\n 2 * 3 * x1 ^ 2 ").unwrap();
        assert_eq!(g.to_string(), "q=5 n=1: 1*X1^2");
    }

    #[test]
    fn parser_errors() {
        for bad in [
            "",
            "q=4 n=1: 1",
            "q=2 n=1 1",
            "q=2 n=1: X2",
            "q=2 n=1: X0",
            "q=2 n=1: 1 +",
            "q=2 n=1: 1 1",
            "q=2 n=1: 99999999999999999999999",
            "q=2 n=40: 1",
        ] {
            assert!(parse_polynomial(bad).is_err(), "{bad:?}");
        }
    }

    #[test]
    fn eval_table_format() {
        let t = parse_eval_table("q=2 n=2\n0 1 1 0\n").unwrap();
        assert_eq!(t.values(), &[0, 1, 1, 0]);
        assert_eq!(t.to_string(), "q=2 n=2\n0 1 1 0\n");
        assert!(parse_eval_table("q=2 n=2\n0 1 1").is_err());
        assert!(parse_eval_table("q=2 n=2\n0 1 1 0 1").is_err());
        assert!(parse_eval_table("q=2 n=1\n0 2").is_err());
    }

    #[test]
    fn u32_lists() {
        assert_eq!(parse_u32_list("1, 0,2").unwrap(), vec![1, 0, 2]);
        assert_eq!(parse_u32_list("").unwrap(), Vec::<u32>::new());
        assert!(parse_u32_list("1,,2").is_err());
    }

    proptest! {
        #[test]
        fn printed_polynomials_parse_back(q_idx in 0usize..3, n in 0usize..4, seed in any::<u64>()) {
            use rand::SeedableRng;
            let q = [2u64, 3, 5][q_idx];
            let ring = Ring::new(q, n).unwrap();
            let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(seed);
            let f = crate::algebra::random_polynomial(ring, i64::from(ring.max_degree()), &mut rng).unwrap();
            let back = parse_polynomial(&f.to_string()).unwrap();
            prop_assert_eq!(&back, &f);
            let t = f.evaluate_all();
            prop_assert_eq!(parse_eval_table(&t.to_string()).unwrap(), t);
        }
    }
}
