//! Tokenizer for `head:key=value,key=value` specification strings.

use crate::error::ParseError;

#[derive(Debug, Clone, PartialEq)]
pub(crate) struct Token<'a> {
    pub text: &'a str,
    /// 1-based character column within the full input.
    pub column: usize,
}

#[derive(Debug, Clone, PartialEq)]
pub(crate) struct Spec<'a> {
    pub input: &'a str,
    pub head: Option<Token<'a>>,
    pub pairs: Vec<(Token<'a>, Token<'a>)>,
}

fn column_of(input: &str, byte_offset: usize) -> usize {
    input[..byte_offset].chars().count() + 1
}

fn token<'a>(input: &'a str, start: usize, text: &'a str) -> Token<'a> {
    // trim while tracking the offset of the first retained byte
    let lead = text.len() - text.trim_start().len();
    Token {
        text: text.trim(),
        column: column_of(input, start + lead),
    }
}

impl<'a> Spec<'a> {
    pub fn error(&self, field: &str, tok: &Token<'_>, message: impl Into<String>) -> ParseError {
        ParseError {
            input: self.input.to_string(),
            field: field.to_string(),
            token: tok.text.to_string(),
            column: tok.column,
            message: message.into(),
        }
    }

    pub fn error_at_end(&self, field: &str, message: impl Into<String>) -> ParseError {
        ParseError {
            input: self.input.to_string(),
            field: field.to_string(),
            token: String::new(),
            column: self.input.chars().count() + 1,
            message: message.into(),
        }
    }

    /// Parses `input`. A leading `head:` is only recognised if the part
    /// before the first `:` contains no `=`; a bare word is a head alone.
    pub fn parse(input: &'a str) -> Result<Spec<'a>, ParseError> {
        let (head, body, body_start) = match input.find(':') {
            Some(i) if !input[..i].contains('=') => {
                (Some(token(input, 0, &input[..i])), &input[i + 1..], i + 1)
            }
            None if !input.contains('=') && !input.contains(',') => (Some(token(input, 0, input)), "", input.len()),
            _ => (None, input, 0),
        };

        let mut spec = Spec {
            input,
            head,
            pairs: Vec::new(),
        };
        if body.trim().is_empty() {
            return Ok(spec);
        }

        let mut offset = body_start;
        for part in body.split(',') {
            let part_tok = token(input, offset, part);
            match part.find('=') {
                Some(eq) => {
                    let key = token(input, offset, &part[..eq]);
                    let value = token(input, offset + eq + 1, &part[eq + 1..]);
                    if key.text.is_empty() {
                        return Err(spec.error("parameter", &part_tok, "missing parameter name before `=`"));
                    }
                    if spec.pairs.iter().any(|(k, _)| k.text == key.text) {
                        return Err(spec.error("parameter", &key, "duplicate parameter"));
                    }
                    spec.pairs.push((key, value));
                }
                None => {
                    return Err(spec.error("parameter", &part_tok, "expected `name=value`"));
                }
            }
            offset += part.len() + 1;
        }
        Ok(spec)
    }

    pub fn get(&self, key: &str) -> Option<&Token<'a>> {
        self.pairs.iter().find(|(k, _)| k.text == key).map(|(_, v)| v)
    }

    pub fn reject_unknown(&self, allowed: &[&str]) -> Result<(), ParseError> {
        for (k, _) in &self.pairs {
            if !allowed.contains(&k.text) {
                return Err(self.error(
                    "parameter",
                    k,
                    format!("unknown parameter (expected one of: {})", allowed.join(", ")),
                ));
            }
        }
        Ok(())
    }

    pub fn real(&self, key: &str) -> Result<f64, ParseError> {
        let tok = self
            .get(key)
            .ok_or_else(|| self.error_at_end(key, format!("missing required parameter `{key}`")))?;
        tok.text
            .parse::<f64>()
            .ok()
            .filter(|v| v.is_finite())
            .ok_or_else(|| self.error(key, tok, "expected a finite real number"))
    }

    pub fn integer(&self, key: &str) -> Result<u32, ParseError> {
        let tok = self
            .get(key)
            .ok_or_else(|| self.error_at_end(key, format!("missing required parameter `{key}`")))?;
        tok.text
            .parse::<u32>()
            .map_err(|_| self.error(key, tok, "expected a non-negative integer"))
    }
}
