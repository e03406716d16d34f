//! graph6 reader and writer (short size form only, `n <= 62`).

use std::io::BufRead;

use thiserror::Error;

use crate::graph::{pair_count, Graph};

pub const HEADER: &str = ">>graph6<<";

/// Largest order expressible with the one-byte size field.
pub const MAX_SHORT_ORDER: usize = 62;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Graph6Error {
    #[error("empty graph6 line")]
    Empty,
    #[error("bad size byte {0:#04x} (only 1 <= n <= 62 is supported)")]
    BadSizeByte(u8),
    #[error("payload truncated: need {expected} bytes, found {found}")]
    TruncatedBits { expected: usize, found: usize },
    #[error("byte {byte:#04x} at offset {offset} is outside the graph6 range 63..=126")]
    ByteOutOfRange { byte: u8, offset: usize },
    #[error("{found} trailing bytes after a {expected}-byte payload")]
    TrailingBytes { expected: usize, found: usize },
    #[error("non-zero padding bits in the final payload byte")]
    NonZeroPadding,
    #[error("malformed or misplaced header (only `>>graph6<<` on the first line is accepted)")]
    HeaderMismatch,
    #[error("graph has {0} vertices; the short graph6 form holds at most 62")]
    NTooLargeForSizeByte(usize),
}

/// Decodes one graph6 line. A leading `>>graph6<<` header and trailing
/// whitespace (including `\r`) are accepted.
pub fn parse_graph6(line: &str) -> Result<Graph, Graph6Error> {
    let line = line.trim_end();
    let body = if let Some(rest) = line.strip_prefix(HEADER) {
        rest
    } else if line.starts_with(">>") {
        return Err(Graph6Error::HeaderMismatch);
    } else {
        line
    };
    decode_body(body.as_bytes())
}

fn decode_body(bytes: &[u8]) -> Result<Graph, Graph6Error> {
    let (&size, payload) = bytes.split_first().ok_or(Graph6Error::Empty)?;
    if !(64..=63 + MAX_SHORT_ORDER as u8).contains(&size) {
        return Err(Graph6Error::BadSizeByte(size));
    }
    let n = (size - 63) as usize;
    let bits = pair_count(n);
    let expected = bits.div_ceil(6);
    if payload.len() < expected {
        return Err(Graph6Error::TruncatedBits { expected, found: payload.len() });
    }
    if payload.len() > expected {
        return Err(Graph6Error::TrailingBytes { expected, found: payload.len() - expected });
    }

    let mut g = Graph::empty(n).expect("1 <= n <= 62");
    for (offset, &byte) in payload.iter().enumerate() {
        if !(63..=126).contains(&byte) {
            return Err(Graph6Error::ByteOutOfRange { byte, offset: offset + 1 });
        }
        let chunk = byte - 63;
        for b in 0..6 {
            if chunk >> (5 - b) & 1 == 0 {
                continue;
            }
            let k = offset * 6 + b;
            if k >= bits {
                return Err(Graph6Error::NonZeroPadding);
            }
            g.set_pair(k);
        }
    }
    Ok(g)
}

/// Encodes `g` as a graph6 line without header or newline.
pub fn write_graph6(g: &Graph) -> Result<String, Graph6Error> {
    let n = g.n();
    if n > MAX_SHORT_ORDER {
        return Err(Graph6Error::NTooLargeForSizeByte(n));
    }
    let bits = pair_count(n);
    let mut out = Vec::with_capacity(1 + bits.div_ceil(6));
    out.push(n as u8 + 63);
    for start in (0..bits).step_by(6) {
        let mut chunk = 0u8;
        for b in 0..6 {
            let k = start + b;
            if k < bits && g.pair_bit(k) {
                chunk |= 1 << (5 - b);
            }
        }
        out.push(chunk + 63);
    }
    Ok(String::from_utf8(out).expect("graph6 bytes are ASCII"))
}

#[derive(Debug, Error)]
pub enum CorpusError {
    #[error("line {line}: {source}")]
    Decode {
        line: usize,
        #[source]
        source: Graph6Error,
    },
    #[error("line {line}: {source}")]
    Io {
        line: usize,
        #[source]
        source: std::io::Error,
    },
}

impl CorpusError {
    pub fn line(&self) -> usize {
        match self {
            CorpusError::Decode { line, .. } | CorpusError::Io { line, .. } => *line,
        }
    }
}

/// Line-oriented graph6 reader. Blank lines are skipped; decode errors carry
/// the 1-based line number and do not end the stream, so callers can choose
/// whether to abort or skip.
pub struct CorpusStream<R> {
    source: R,
    line_no: usize,
    count_so_far: usize,
    buf: String,
    done: bool,
}

pub fn stream_corpus<R: BufRead>(reader: R) -> CorpusStream<R> {
    CorpusStream { source: reader, line_no: 0, count_so_far: 0, buf: String::new(), done: false }
}

impl<R> CorpusStream<R> {
    /// Graphs successfully yielded so far.
    pub fn count_so_far(&self) -> usize {
        self.count_so_far
    }
}

impl<R: BufRead> Iterator for CorpusStream<R> {
    type Item = Result<(usize, Graph), CorpusError>;

    fn next(&mut self) -> Option<Self::Item> {
        while !self.done {
            self.buf.clear();
            self.line_no += 1;
            let line = self.line_no;
            match self.source.read_line(&mut self.buf) {
                Ok(0) => self.done = true,
                Ok(_) => {
                    let mut text = self.buf.trim_end();
                    if line == 1 {
                        text = text.strip_prefix(HEADER).unwrap_or(text);
                    }
                    if text.is_empty() {
                        continue;
                    }
                    let parsed = if text.starts_with(">>") {
                        Err(Graph6Error::HeaderMismatch)
                    } else {
                        decode_body(text.as_bytes())
                    };
                    return Some(match parsed {
                        Ok(g) => {
                            self.count_so_far += 1;
                            Ok((line, g))
                        }
                        Err(source) => Err(CorpusError::Decode { line, source }),
                    });
                }
                Err(source) => {
                    self.done = true;
                    return Some(Err(CorpusError::Io { line, source }));
                }
            }
        }
        None
    }
}
