use thiserror::Error;

use super::{SeqSpec, SpaceError, SpaceTerm};
use crate::ordinal::{Ordinal, OrdinalError, OrdinalParser};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum TermParseError {
    #[error("syntax error at position {pos}: {msg}")]
    Syntax { pos: usize, msg: String },
    #[error(transparent)]
    Invalid(#[from] SpaceError),
}

impl From<OrdinalError> for TermParseError {
    fn from(e: OrdinalError) -> Self {
        match e {
            OrdinalError::Syntax { pos, msg } => TermParseError::Syntax { pos, msg },
            other => TermParseError::Syntax { pos: 0, msg: other.to_string() },
        }
    }
}

/// Parses and validates a space term.
///
/// ```text
/// term  := atom ('(+)' atom)*
/// atom  := '1' | 'C' | 'N' | 'K(' ord ')' | 'Y(' ord ')' | 'Z(' ord ')'
///        | 'sum(' term (',' term)* ')' | 'sumw(' seq ')' | 'glue(' seq ')'
///        | 'attach(' term ')' | 'w*' atom | '(' term ')'
/// seq   := 'const:' term | 'K-along:' ord | 'wK-along:' ord
///        | 'prefix([' term (',' term)* '];' seq ')'
/// ```
pub fn parse_term(text: &str) -> Result<SpaceTerm, TermParseError> {
    let mut p = TermParser { src: text, pos: 0 };
    let t = p.term()?;
    p.skip_ws();
    if p.pos != text.len() {
        return Err(p.error("unexpected trailing input"));
    }
    t.validate()?;
    Ok(t)
}

struct TermParser<'a> {
    src: &'a str,
    pos: usize,
}

impl TermParser<'_> {
    fn error(&self, msg: &str) -> TermParseError {
        TermParseError::Syntax { pos: self.pos, msg: msg.to_string() }
    }

    fn skip_ws(&mut self) {
        let rest = &self.src[self.pos..];
        self.pos += rest.len() - rest.trim_start().len();
    }

    fn eat(&mut self, token: &str) -> bool {
        self.skip_ws();
        if self.src[self.pos..].starts_with(token) {
            self.pos += token.len();
            true
        } else {
            false
        }
    }

    fn expect(&mut self, token: &str) -> Result<(), TermParseError> {
        if self.eat(token) {
            Ok(())
        } else {
            Err(self.error(&format!("expected '{token}'")))
        }
    }

    fn ordinal(&mut self) -> Result<Ordinal, TermParseError> {
        let mut p = OrdinalParser::at(self.src, self.pos);
        let o = p.ordinal()?;
        self.pos = p.pos;
        Ok(o)
    }

    fn term(&mut self) -> Result<SpaceTerm, TermParseError> {
        let first = self.atom()?;
        let mut parts = vec![first];
        while self.eat("(+)") {
            parts.push(self.atom()?);
        }
        Ok(if parts.len() == 1 { parts.pop().unwrap() } else { SpaceTerm::SumFin(parts) })
    }

    fn list(&mut self, close: &str) -> Result<Vec<SpaceTerm>, TermParseError> {
        let mut items = vec![self.term()?];
        while self.eat(",") {
            items.push(self.term()?);
        }
        self.expect(close)?;
        Ok(items)
    }

    fn ordinal_arg(&mut self) -> Result<Ordinal, TermParseError> {
        self.expect("(")?;
        let o = self.ordinal()?;
        self.expect(")")?;
        Ok(o)
    }

    fn atom(&mut self) -> Result<SpaceTerm, TermParseError> {
        self.skip_ws();
        if self.eat("sumw(") {
            let spec = self.seq()?;
            self.expect(")")?;
            Ok(SpaceTerm::SumOmega(spec))
        } else if self.eat("sum(") {
            Ok(SpaceTerm::SumFin(self.list(")")?))
        } else if self.eat("glue(") {
            let spec = self.seq()?;
            self.expect(")")?;
            Ok(SpaceTerm::Glue(spec))
        } else if self.eat("attach(") {
            let inner = self.term()?;
            self.expect(")")?;
            Ok(SpaceTerm::AttachToCantor(Box::new(inner)))
        } else if self.eat("w*") {
            Ok(SpaceTerm::omega_times(self.atom()?))
        } else if self.eat("K") {
            Ok(SpaceTerm::K(self.ordinal_arg()?))
        } else if self.eat("Y") {
            Ok(SpaceTerm::Y(self.ordinal_arg()?))
        } else if self.eat("Z") {
            Ok(SpaceTerm::Z(self.ordinal_arg()?))
        } else if self.eat("1") {
            Ok(SpaceTerm::Point)
        } else if self.eat("C") {
            Ok(SpaceTerm::Cantor)
        } else if self.eat("N") {
            Ok(SpaceTerm::Baire)
        } else if self.eat("(") {
            let t = self.term()?;
            self.expect(")")?;
            Ok(t)
        } else if self.pos >= self.src.len() {
            Err(self.error("unexpected end of input"))
        } else {
            Err(self.error("expected a space term"))
        }
    }

    fn seq(&mut self) -> Result<SeqSpec, TermParseError> {
        if self.eat("const:") {
            Ok(SeqSpec::Constant(Box::new(self.term()?)))
        } else if self.eat("wK-along:") {
            Ok(SeqSpec::OmegaTimesKAlong(self.ordinal()?))
        } else if self.eat("K-along:") {
            Ok(SeqSpec::KAlong(self.ordinal()?))
        } else if self.eat("prefix(") {
            self.expect("[")?;
            let prefix = self.list("]")?;
            self.expect(";")?;
            let tail = self.seq()?;
            self.expect(")")?;
            Ok(SeqSpec::Prefixed(prefix, Box::new(tail)))
        } else {
            Err(self.error("expected 'const:', 'K-along:', 'wK-along:' or 'prefix('"))
        }
    }
}
