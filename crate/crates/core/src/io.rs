//! Barcode file formats: a line-oriented TEXT grammar and a JSON schema,
//! both exact (numerals never pass through floating point).
//!
//! TEXT, one bar per line:
//!
//! ```text
//! # comment to end of line; blank lines ignored
//! (0,2) x (0,2)
//! (1,inf) x [3,4)
//! ```
//!
//! Each interval is `bracket, number, comma, number, bracket` with numbers
//! written as integers, exact decimals, fractions `p/q`, or `inf`/`-inf`.
//! Closed brackets are normalized to the open representation; the written
//! brackets are recorded on the bar and reproduced when the bar is
//! serialized back to TEXT. Canonical output uses open brackets,
//! lowest-terms rationals, ` x ` between axes, `\n` line endings and no
//! trailing whitespace.
//!
//! JSON mirrors the same data with explicit exact-rational strings:
//!
//! ```json
//! { "dim": 2, "bars": [ { "lower": ["0", "0"], "upper": ["1/2", "inf"] } ] }
//! ```

use serde::{Deserialize, Serialize};

use crate::barcode::Barcode;
use crate::error::{Error, Result};
use crate::ext_real::{parse_token, ExtReal};
use crate::rectangle::{AxisBrackets, Bracket, Rectangle};

/// Supported barcode encodings.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum Format {
    #[default]
    Text,
    Json,
}

pub fn parse_barcode(input: &str, format: Format) -> Result<Barcode> {
    match format {
        Format::Text => parse_text(input),
        Format::Json => parse_json(input),
    }
}

pub fn serialize_barcode(barcode: &Barcode, format: Format) -> String {
    match format {
        Format::Text => to_text(barcode),
        Format::Json => to_json(barcode),
    }
}

/// Parses a single rectangle literal such as `(0,2) x (0,2)`.
pub fn parse_rectangle_literal(literal: &str) -> Result<Rectangle> {
    let barcode = parse_text(literal)?;
    match barcode.len() {
        1 => Ok(barcode.bars()[0].clone()),
        n => Err(Error::Parse {
            line: 1,
            column: 1,
            message: format!("expected exactly one rectangle, found {n}"),
        }),
    }
}

pub fn parse_text(input: &str) -> Result<Barcode> {
    let mut barcode = Barcode::empty();
    for (index, raw_line) in input.lines().enumerate() {
        let line_no = index + 1;
        let content = match raw_line.find('#') {
            Some(pos) => &raw_line[..pos],
            None => raw_line,
        };
        if content.trim().is_empty() {
            continue;
        }
        let bar = LineParser::new(content, line_no).parse_bar()?;
        barcode.push(bar)?;
    }
    Ok(barcode)
}

pub fn to_text(barcode: &Barcode) -> String {
    let mut out = String::new();
    for bar in barcode.bars() {
        out.push_str(&bar_to_text(bar));
        out.push('\n');
    }
    out
}

/// One bar in TEXT form, without the trailing newline.
pub fn bar_to_text(bar: &Rectangle) -> String {
    let mut line = String::new();
    for (axis, (a, b)) in bar.lower().iter().zip(bar.upper()).enumerate() {
        if axis > 0 {
            line.push_str(" x ");
        }
        let (open, close) = match bar.display_brackets() {
            Some(brackets) => (
                if brackets[axis].0 == Bracket::Closed { '[' } else { '(' },
                if brackets[axis].1 == Bracket::Closed { ']' } else { ')' },
            ),
            None => ('(', ')'),
        };
        line.push(open);
        line.push_str(&a.to_string());
        line.push(',');
        line.push_str(&b.to_string());
        line.push(close);
    }
    line
}

#[derive(Serialize, Deserialize)]
struct BarcodeDoc {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    dim: Option<usize>,
    bars: Vec<BarDoc>,
}

#[derive(Serialize, Deserialize)]
struct BarDoc {
    lower: Vec<String>,
    upper: Vec<String>,
}

pub fn parse_json(input: &str) -> Result<Barcode> {
    let doc: BarcodeDoc = serde_json::from_str(input).map_err(|e| Error::Parse {
        line: e.line(),
        column: e.column(),
        message: e.to_string(),
    })?;
    let mut barcode = match doc.dim {
        Some(dim) => Barcode::with_dim(dim)?,
        None => Barcode::empty(),
    };
    for (index, bar) in doc.bars.iter().enumerate() {
        let parse_all = |tokens: &[String]| -> Result<Vec<ExtReal>> {
            tokens
                .iter()
                .map(|token| {
                    parse_token(token).map_err(|message| Error::Parse {
                        line: 1,
                        column: 1,
                        message: format!("bar {index}: {message}"),
                    })
                })
                .collect()
        };
        let rect = Rectangle::new(parse_all(&bar.lower)?, parse_all(&bar.upper)?)?;
        barcode.push(rect)?;
    }
    Ok(barcode)
}

pub fn to_json(barcode: &Barcode) -> String {
    let doc = BarcodeDoc {
        dim: barcode.dim(),
        bars: barcode
            .bars()
            .iter()
            .map(|bar| BarDoc {
                lower: bar.lower().iter().map(ExtReal::to_string).collect(),
                upper: bar.upper().iter().map(ExtReal::to_string).collect(),
            })
            .collect(),
    };
    let mut out = serde_json::to_string_pretty(&doc).expect("barcode doc serializes");
    out.push('\n');
    out
}

struct LineParser {
    chars: Vec<char>,
    pos: usize,
    line: usize,
}

impl LineParser {
    fn new(source: &str, line: usize) -> Self {
        LineParser {
            chars: source.chars().collect(),
            pos: 0,
            line,
        }
    }

    fn error(&self, message: impl Into<String>) -> Error {
        Error::Parse {
            line: self.line,
            column: self.pos + 1,
            message: message.into(),
        }
    }

    fn peek(&self) -> Option<char> {
        self.chars.get(self.pos).copied()
    }

    fn skip_ws(&mut self) {
        while matches!(self.peek(), Some(c) if c.is_whitespace()) {
            self.pos += 1;
        }
    }

    fn parse_bar(&mut self) -> Result<Rectangle> {
        let mut lower = Vec::new();
        let mut upper = Vec::new();
        let mut brackets = Vec::new();
        loop {
            let (a, b, bracket) = self.parse_interval()?;
            lower.push(a);
            upper.push(b);
            brackets.push(bracket);
            self.skip_ws();
            match self.peek() {
                None => break,
                Some('x') => {
                    self.pos += 1;
                    self.skip_ws();
                }
                Some(c) => {
                    return Err(self.error(format!(
                        "expected ` x ` between intervals or end of line, found `{c}`"
                    )))
                }
            }
        }
        Rectangle::with_brackets(lower, upper, brackets)
    }

    fn parse_interval(&mut self) -> Result<(ExtReal, ExtReal, AxisBrackets)> {
        self.skip_ws();
        let open = match self.peek() {
            Some('(') => Bracket::Open,
            Some('[') => Bracket::Closed,
            other => {
                return Err(self.error(match other {
                    Some(c) => format!("expected `(` or `[` to start an interval, found `{c}`"),
                    None => "expected `(` or `[` to start an interval".to_string(),
                }))
            }
        };
        self.pos += 1;
        let a = self.parse_number()?;
        self.skip_ws();
        match self.peek() {
            Some(',') => self.pos += 1,
            _ => return Err(self.error("expected `,` between interval endpoints")),
        }
        let b = self.parse_number()?;
        self.skip_ws();
        let close = match self.peek() {
            Some(')') => Bracket::Open,
            Some(']') => Bracket::Closed,
            other => {
                return Err(self.error(match other {
                    Some(c) => format!("expected `)` or `]` to close the interval, found `{c}`"),
                    None => "expected `)` or `]` to close the interval".to_string(),
                }))
            }
        };
        self.pos += 1;
        Ok((a, b, (open, close)))
    }

    fn parse_number(&mut self) -> Result<ExtReal> {
        self.skip_ws();
        let start = self.pos;
        while matches!(
            self.peek(),
            Some(c) if c.is_ascii_alphanumeric() || matches!(c, '+' | '-' | '.' | '/')
        ) {
            self.pos += 1;
        }
        let token: String = self.chars[start..self.pos].iter().collect();
        parse_token(&token).map_err(|message| Error::Parse {
            line: self.line,
            column: start + 1,
            message,
        })
    }
}
