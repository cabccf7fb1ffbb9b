//! The line-oriented element file format.
//!
//! ```text
//! # comments run to end of line
//! nv 2
//! blocks 3
//! D 0 : 0 , e
//! D 1 : 10 , e
//! D 2 : 11 , e
//! R 0 : 00 , e
//! R 1 : 01 , e
//! R 2 : 1 , e
//! map 0->0 ; 1->1 ; 2->2
//! twist 1 : (1 2)
//! ```
//!
//! `e` is the empty word. `map` sends domain labels to range labels and
//! must be a bijection. `twist` lines are optional (identity otherwise) and
//! use disjoint-cycle notation on 1-based axes. An optional `group <tag>`
//! line may appear in the header; it is informational only.
//!
//! Serialization is canonical: domain rows in lexicographic address order,
//! range rows likewise, map and twist lines in label order, LF endings.

use std::fmt::Write as _;

use crate::element::Element;
use crate::error::{Error, ParseError, Result};
use crate::pattern::Pattern;
use crate::perm::Perm;
use crate::word::{Address, Word};

fn strip_comment(line: &str) -> &str {
    match line.find('#') {
        Some(i) => &line[..i],
        None => line,
    }
}

fn perr(line: usize, reason: impl Into<String>) -> Error {
    Error::Parse(ParseError::new(line, reason))
}

fn parse_usize(tok: &str, line: usize, what: &str) -> Result<usize> {
    tok.trim()
        .parse::<usize>()
        .map_err(|_| perr(line, format!("expected {what}, found `{}`", tok.trim())))
}

fn parse_address(text: &str, arity: usize, line: usize) -> Result<Address> {
    let words = text
        .split(',')
        .map(|w| w.trim().parse::<Word>().map_err(|e| perr(line, e.reason)))
        .collect::<Result<Vec<Word>>>()?;
    if words.len() != arity {
        return Err(perr(line, format!("expected {arity} words, found {}", words.len())));
    }
    Ok(Address::new(words))
}

/// Parses disjoint-cycle notation over 1-based axes, e.g. `(1 2)(3 4)`.
pub fn parse_cycles(text: &str, arity: usize) -> std::result::Result<Perm, String> {
    let mut cycles = Vec::new();
    let mut rest = text.trim();
    if rest.is_empty() {
        return Err("empty permutation; write `()` for the identity".into());
    }
    while !rest.is_empty() {
        let inner_end = rest
            .strip_prefix('(')
            .and_then(|r| r.find(')'))
            .ok_or_else(|| format!("malformed cycle notation `{text}`"))?;
        let inner = &rest[1..=inner_end];
        let points = inner
            .split(|c: char| c == ',' || c.is_whitespace())
            .filter(|t| !t.is_empty())
            .map(|t| match t.parse::<usize>() {
                Ok(p) if p >= 1 && p <= arity => Ok(p - 1),
                _ => Err(format!("axis `{t}` out of range 1..={arity}")),
            })
            .collect::<std::result::Result<Vec<usize>, String>>()?;
        if !points.is_empty() {
            cycles.push(points);
        }
        rest = rest[inner_end + 2..].trim_start();
    }
    Perm::from_cycles(arity, &cycles).map_err(|e| e.to_string())
}

/// Parses and validates an element document.
pub fn parse_element(text: &str) -> Result<Element> {
    let mut arity: Option<usize> = None;
    let mut count: Option<(usize, usize)> = None;
    let mut dom: Vec<Option<Address>> = Vec::new();
    let mut ran: Vec<Option<Address>> = Vec::new();
    let mut map: Option<(usize, Vec<usize>)> = None;
    let mut twists: Vec<Option<Perm>> = Vec::new();
    let mut last_line = 0;

    for (idx, raw) in text.lines().enumerate() {
        let line = idx + 1;
        last_line = line;
        let body = strip_comment(raw).trim();
        if body.is_empty() {
            continue;
        }
        let (keyword, rest) = body.split_once(char::is_whitespace).unwrap_or((body, ""));
        let rest = rest.trim();
        match keyword {
            "nv" => {
                if arity.is_some() {
                    return Err(perr(line, "duplicate `nv` line"));
                }
                let n = parse_usize(rest, line, "arity")?;
                if n == 0 {
                    return Err(perr(line, "arity must be at least 1"));
                }
                arity = Some(n);
            }
            "group" => {
                if rest.is_empty() {
                    return Err(perr(line, "`group` needs a tag"));
                }
            }
            "blocks" => {
                if arity.is_none() {
                    return Err(perr(line, "`blocks` before `nv`"));
                }
                if count.is_some() {
                    return Err(perr(line, "duplicate `blocks` line"));
                }
                let m = parse_usize(rest, line, "block count")?;
                if m == 0 {
                    return Err(perr(line, "block count must be at least 1"));
                }
                count = Some((m, line));
                dom = vec![None; m];
                ran = vec![None; m];
                twists = vec![None; m];
            }
            "D" | "R" | "twist" => {
                let n = arity.ok_or_else(|| perr(line, format!("`{keyword}` before `nv`")))?;
                let (m, _) = count.ok_or_else(|| perr(line, format!("`{keyword}` before `blocks`")))?;
                let (label, value) = rest
                    .split_once(':')
                    .ok_or_else(|| perr(line, format!("expected `{keyword} <label> : ...`")))?;
                let label = parse_usize(label, line, "label")?;
                if label >= m {
                    return Err(perr(line, format!("label {label} out of range 0..{m}")));
                }
                match keyword {
                    "D" | "R" => {
                        let slot = if keyword == "D" { &mut dom[label] } else { &mut ran[label] };
                        if slot.is_some() {
                            return Err(perr(line, format!("duplicate {keyword} row for label {label}")));
                        }
                        *slot = Some(parse_address(value, n, line)?);
                    }
                    _ => {
                        if twists[label].is_some() {
                            return Err(perr(line, format!("duplicate twist for label {label}")));
                        }
                        twists[label] = Some(parse_cycles(value, n).map_err(|e| perr(line, e))?);
                    }
                }
            }
            "map" => {
                let (m, _) = count.ok_or_else(|| perr(line, "`map` before `blocks`"))?;
                if map.is_some() {
                    return Err(perr(line, "duplicate `map` line"));
                }
                let mut sigma: Vec<Option<usize>> = vec![None; m];
                for entry in rest.split(';').map(str::trim).filter(|s| !s.is_empty()) {
                    let (a, b) = entry
                        .split_once("->")
                        .ok_or_else(|| perr(line, format!("map entry `{entry}` must be `i->j`")))?;
                    let a = parse_usize(a, line, "label")?;
                    let b = parse_usize(b, line, "label")?;
                    if a >= m || b >= m {
                        return Err(perr(line, format!("map entry `{entry}` out of range 0..{m}")));
                    }
                    if sigma[a].is_some() {
                        return Err(perr(line, format!("label {a} mapped twice")));
                    }
                    sigma[a] = Some(b);
                }
                let sigma: Vec<usize> = sigma
                    .into_iter()
                    .enumerate()
                    .map(|(i, s)| s.ok_or_else(|| perr(line, format!("label {i} missing from map"))))
                    .collect::<Result<_>>()?;
                let mut hit = vec![false; m];
                for &j in &sigma {
                    if hit[j] {
                        return Err(perr(line, "non-bijective map"));
                    }
                    hit[j] = true;
                }
                map = Some((line, sigma));
            }
            other => return Err(perr(line, format!("unknown keyword `{other}`"))),
        }
    }

    let n = arity.ok_or_else(|| perr(last_line, "missing `nv` line"))?;
    let (_, count_line) = count.ok_or_else(|| perr(last_line, "missing `blocks` line"))?;
    let collect = |rows: Vec<Option<Address>>, tag: &str| -> Result<Vec<Address>> {
        rows.into_iter()
            .enumerate()
            .map(|(i, a)| a.ok_or_else(|| perr(count_line, format!("missing {tag} row for label {i}"))))
            .collect()
    };
    let dom = collect(dom, "D")?;
    let ran = collect(ran, "R")?;
    let (_, sigma) = map.ok_or_else(|| perr(last_line, "missing `map` line"))?;
    let twists = twists.into_iter().map(|t| t.unwrap_or_else(|| Perm::identity(n))).collect();
    let domain = Pattern::new(n, dom)?;
    let range = Pattern::new(n, ran)?;
    Element::new(domain, range, sigma, twists)
}

fn write_address(out: &mut String, a: &Address) {
    for (i, w) in a.words().iter().enumerate() {
        if i > 0 {
            out.push_str(" , ");
        }
        let _ = write!(out, "{w}");
    }
}

/// Canonical text for `e`; `parse_element(&serialize_element(e)) ==
/// e.canonical()`.
pub fn serialize_element(e: &Element) -> String {
    let c = e.canonical();
    let mut out = String::new();
    let _ = writeln!(out, "nv {}", c.arity());
    let _ = writeln!(out, "blocks {}", c.len());
    for (i, b) in c.domain().blocks().iter().enumerate() {
        let _ = write!(out, "D {i} : ");
        write_address(&mut out, b);
        out.push('\n');
    }
    for (i, b) in c.range().blocks().iter().enumerate() {
        let _ = write!(out, "R {i} : ");
        write_address(&mut out, b);
        out.push('\n');
    }
    out.push_str("map ");
    for (i, j) in c.sigma().iter().enumerate() {
        if i > 0 {
            out.push_str(" ; ");
        }
        let _ = write!(out, "{i}->{j}");
    }
    out.push('\n');
    for (i, t) in c.twists().iter().enumerate() {
        if !t.is_identity() {
            let _ = writeln!(out, "twist {i} : {t}");
        }
    }
    out
}

/// Plain block listing of a pattern, one address per line, used where
/// graphical output is not available.
pub fn pattern_listing(p: &Pattern) -> String {
    let mut out = String::new();
    for (i, b) in p.blocks().iter().enumerate() {
        let _ = write!(out, "{i} : ");
        write_address(&mut out, b);
        out.push('\n');
    }
    out
}
