//! graph6 encoding for graphs on 1..=62 vertices (single size byte).

use std::io::BufRead;

use crate::graph::Graph;
use crate::{Error, Result};

pub const MAX_ORDER: usize = 62;
const HEADER: &str = ">>graph6<<";

fn data_len(n: usize) -> usize {
    (n * (n - 1) / 2).div_ceil(6)
}

pub fn encode(g: &Graph) -> Result<String> {
    let n = g.n();
    if n > MAX_ORDER {
        return Err(Error::CapExceeded { n, limit: MAX_ORDER });
    }
    let mut out = Vec::with_capacity(1 + data_len(n));
    out.push(n as u8 + 63);
    let mut acc = 0u8;
    let mut filled = 0;
    for j in 1..n {
        for i in 0..j {
            acc = acc << 1 | u8::from(g.has_edge(i, j));
            filled += 1;
            if filled == 6 {
                out.push(acc + 63);
                acc = 0;
                filled = 0;
            }
        }
    }
    if filled > 0 {
        out.push((acc << (6 - filled)) + 63);
    }
    Ok(String::from_utf8(out).expect("graph6 bytes are ASCII"))
}

pub fn decode(s: &str) -> Result<Graph> {
    let bytes = s.strip_prefix(HEADER).unwrap_or(s).as_bytes();
    if let Some((offset, &byte)) = bytes.iter().enumerate().find(|(_, &b)| !(63..=126).contains(&b)) {
        return Err(Error::BadChar { offset, byte });
    }
    let Some(&first) = bytes.first() else {
        return Err(Error::BadLength { expected: 1, found: 0 });
    };
    let n = (first - 63) as usize;
    if n == 0 || n > MAX_ORDER {
        return Err(Error::CapExceeded { n, limit: MAX_ORDER });
    }
    let expected = data_len(n) + 1;
    if bytes.len() != expected {
        return Err(Error::BadLength { expected, found: bytes.len() });
    }
    let mut g = Graph::empty(n)?;
    let mut bit = 0usize;
    let data = &bytes[1..];
    for j in 1..n {
        for i in 0..j {
            let v = data[bit / 6] - 63;
            if v >> (5 - bit % 6) & 1 == 1 {
                g.add_edge(i, j);
            }
            bit += 1;
        }
    }
    if !bit.is_multiple_of(6) {
        let last = data[data.len() - 1] - 63;
        if last & ((1u8 << (6 - bit % 6)) - 1) != 0 {
            return Err(Error::BadPadding);
        }
    }
    Ok(g)
}

/// Decodes a stream with one graph per line. Blank lines are skipped.
pub fn read_stream<R: BufRead>(reader: R) -> impl Iterator<Item = Result<Graph>> {
    reader.lines().enumerate().filter_map(|(i, line)| {
        let line = match line {
            Ok(l) => l,
            Err(e) => return Some(Err(Error::Io(e))),
        };
        let t = line.trim_end_matches(['\r', '\n']);
        if t.is_empty() {
            return None;
        }
        Some(decode(t).map_err(|e| Error::Stream { line: i + 1, source: Box::new(e) }))
    })
}
