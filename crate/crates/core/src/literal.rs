//! Splitting helpers for the bracketed literal syntax `[(label, coeff), ...]`.

use crate::error::{Error, Result};

fn depth_delta(c: char) -> i32 {
    match c {
        '(' | '[' | '<' | '{' => 1,
        ')' | ']' | '>' | '}' => -1,
        _ => 0,
    }
}

/// Splits `s` at every occurrence of `sep` outside any bracket pair.
pub fn split_top_level(s: &str, sep: char) -> Vec<&str> {
    let mut parts = Vec::new();
    let mut depth = 0;
    let mut start = 0;
    for (i, c) in s.char_indices() {
        if c == sep && depth == 0 {
            parts.push(&s[start..i]);
            start = i + c.len_utf8();
        } else {
            depth += depth_delta(c);
        }
    }
    parts.push(&s[start..]);
    parts
}

/// Splits at the last top-level occurrence of `sep`.
pub fn rsplit_top_level(s: &str, sep: char) -> Option<(&str, &str)> {
    let mut depth = 0;
    let mut last = None;
    for (i, c) in s.char_indices() {
        if c == sep && depth == 0 {
            last = Some(i);
        } else {
            depth += depth_delta(c);
        }
    }
    last.map(|i| (&s[..i], &s[i + sep.len_utf8()..]))
}

/// Strips one matching pair of delimiters.
pub fn strip_delimiters(s: &str, open: char, close: char) -> Result<&str> {
    let t = s.trim();
    t.strip_prefix(open)
        .and_then(|r| r.strip_suffix(close))
        .ok_or_else(|| Error::Parse(format!("expected {open}...{close}, got {t:?}")))
}

/// Parses `[(a, b), (c, d)]` into its `(a, b)` pairs (untrimmed strings
/// trimmed on return). The pair separator is the last top-level comma.
pub fn parse_pairs(s: &str) -> Result<Vec<(String, String)>> {
    let body = strip_delimiters(s, '[', ']')?;
    if body.trim().is_empty() {
        return Ok(Vec::new());
    }
    split_top_level(body, ',')
        .into_iter()
        .map(|item| {
            let inner = strip_delimiters(item, '(', ')')?;
            let (a, b) = rsplit_top_level(inner, ',')
                .ok_or_else(|| Error::Parse(format!("expected (label, value), got {item:?}")))?;
            Ok((a.trim().to_string(), b.trim().to_string()))
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn nested_pairs() {
        let p = parse_pairs("[((12), 1/2), (E[1,2], -3), (<(123)|x1^2>, 1)]").unwrap();
        assert_eq!(p[0], ("(12)".into(), "1/2".into()));
        assert_eq!(p[1], ("E[1,2]".into(), "-3".into()));
        assert_eq!(p[2], ("<(123)|x1^2>".into(), "1".into()));
        assert!(parse_pairs("[]").unwrap().is_empty());
        assert!(parse_pairs("(1, 2)").is_err());
    }

    #[test]
    fn hecke_values_split() {
        let p = parse_pairs("[(id, [(x1, 1)]), ((23), [])]").unwrap();
        assert_eq!(p[0].1, "[(x1, 1)]");
        assert_eq!(p[1].0, "(23)");
    }
}
