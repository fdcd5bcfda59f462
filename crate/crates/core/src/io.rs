//! Text formats for frameworks, cuts and extension sets.
//!
//! ```text
//! bsaf 1
//! # comment
//! arg a
//! arg b
//! arg c
//! att a -> b
//! sup a b -> c
//! att -> c
//! ```
//!
//! A cut file is the line `cut` followed by one argument name per line.
//! Extension listings hold one extension per line as comma-separated names,
//! `{}` for the empty extension and `NONE` for an empty listing.

use std::collections::{BTreeSet, HashMap};

use crate::argset::ArgSet;
use crate::combined_split::PipelineTrace;
use crate::error::{Error, Result, SourceSpan};
use crate::framework::{is_valid_name, Framework, Link};
use crate::semantics::ExtensionSet;

pub const FRAMEWORK_HEADER: &str = "bsaf 1";
pub const CUT_HEADER: &str = "cut";

struct Token<'a> {
    text: &'a str,
    span: SourceSpan,
}

/// Splits `text` into lines of whitespace-separated tokens, dropping
/// comments and blank lines.
fn tokenize(text: &str) -> Vec<Vec<Token<'_>>> {
    let mut lines = Vec::new();
    for (li, raw) in text.lines().enumerate() {
        let line = raw.split('#').next().unwrap_or("");
        let mut tokens = Vec::new();
        let mut start = None;
        let ends = line
            .char_indices()
            .chain(std::iter::once((line.len(), ' ')));
        for (bi, ch) in ends {
            match (ch.is_whitespace(), start) {
                (false, None) => start = Some(bi),
                (true, Some(s)) => {
                    tokens.push(Token {
                        text: &line[s..bi],
                        span: SourceSpan {
                            line: li + 1,
                            column: line[..s].chars().count() + 1,
                        },
                    });
                    start = None;
                }
                _ => {}
            }
        }
        if !tokens.is_empty() {
            lines.push(tokens);
        }
    }
    lines
}

fn syntax(message: impl Into<String>, span: SourceSpan) -> Error {
    Error::Syntax {
        message: message.into(),
        span,
    }
}

fn start_of_text() -> SourceSpan {
    SourceSpan { line: 1, column: 1 }
}

fn check_name(tok: &Token<'_>) -> Result<()> {
    if tok.text.starts_with('*') {
        return Err(Error::ReservedName {
            name: tok.text.to_string(),
            span: tok.span,
        });
    }
    if !is_valid_name(tok.text) {
        return Err(syntax(
            format!("invalid argument name `{}`", tok.text),
            tok.span,
        ));
    }
    Ok(())
}

fn expect_header(lines: &[Vec<Token<'_>>], header: &str) -> Result<()> {
    let first = lines
        .first()
        .ok_or_else(|| syntax(format!("missing `{header}` header"), start_of_text()))?;
    let words: Vec<&str> = first.iter().map(|t| t.text).collect();
    if words.join(" ") != header {
        return Err(syntax(format!("expected `{header}` header"), first[0].span));
    }
    Ok(())
}

/// Parses the framework format. Links may mention arguments declared later
/// in the file.
pub fn parse_framework(text: &str) -> Result<Framework> {
    let lines = tokenize(text);
    expect_header(&lines, FRAMEWORK_HEADER)?;

    let mut names: Vec<String> = Vec::new();
    let mut declared: HashMap<&str, SourceSpan> = HashMap::new();
    type RawLink<'t, 'a> = (&'t [Token<'a>], &'t Token<'a>);
    let mut attacks: Vec<RawLink> = Vec::new();
    let mut supports: Vec<RawLink> = Vec::new();

    for line in &lines[1..] {
        let keyword = &line[0];
        match keyword.text {
            "arg" => {
                let [_, name] = line.as_slice() else {
                    return Err(syntax("expected `arg <name>`", keyword.span));
                };
                check_name(name)?;
                if declared.insert(name.text, name.span).is_some() {
                    return Err(Error::DuplicateArgument {
                        name: name.text.to_string(),
                        span: name.span,
                    });
                }
                names.push(name.text.to_string());
            }
            "att" | "sup" => {
                let arrow = line
                    .iter()
                    .position(|t| t.text == "->")
                    .ok_or_else(|| syntax("missing `->`", keyword.span))?;
                let tail = &line[1..arrow];
                let head = match &line[arrow + 1..] {
                    [head] => head,
                    [] => return Err(syntax("missing link head", line[arrow].span)),
                    [_, extra, ..] => {
                        return Err(syntax("a link has exactly one head", extra.span))
                    }
                };
                for t in tail.iter().chain([head]) {
                    check_name(t)?;
                }
                if keyword.text == "att" {
                    attacks.push((tail, head));
                } else {
                    supports.push((tail, head));
                }
            }
            other => {
                return Err(syntax(format!("unknown directive `{other}`"), keyword.span));
            }
        }
    }

    let resolve = |t: &Token<'_>| -> Result<String> {
        if declared.contains_key(t.text) {
            Ok(t.text.to_string())
        } else {
            Err(Error::UnknownArgument {
                name: t.text.to_string(),
                span: t.span,
            })
        }
    };
    let mut builder = Framework::builder().args(names.iter().cloned());
    for (tail, head) in attacks {
        let tail = tail.iter().map(resolve).collect::<Result<Vec<_>>>()?;
        builder = builder.attack(tail, resolve(head)?);
    }
    for (tail, head) in supports {
        let tail = tail.iter().map(resolve).collect::<Result<Vec<_>>>()?;
        builder = builder.support(tail, resolve(head)?);
    }
    builder.build()
}

fn write_link(out: &mut String, f: &Framework, keyword: &str, l: &Link) {
    out.push_str(keyword);
    for t in l.tail.iter() {
        out.push(' ');
        out.push_str(f.name(t));
    }
    out.push_str(" -> ");
    out.push_str(f.name(l.head));
    out.push('\n');
}

/// Canonical text: header, arguments in index order, then attacks and
/// supports, each sorted by head and then tail.
pub fn serialize_framework(f: &Framework) -> String {
    let mut out = String::new();
    out.push_str(FRAMEWORK_HEADER);
    out.push('\n');
    for a in f.args().iter() {
        out.push_str("arg ");
        out.push_str(f.name(a));
        out.push('\n');
    }
    for l in f.attacks() {
        write_link(&mut out, f, "att", l);
    }
    for l in f.supports() {
        write_link(&mut out, f, "sup", l);
    }
    out
}

/// Parses a cut of `f`. Duplicate names are allowed.
pub fn parse_cut(text: &str, f: &Framework) -> Result<ArgSet> {
    let lines = tokenize(text);
    expect_header(&lines, CUT_HEADER)?;
    let header_span = lines[0][0].span;
    let mut cut = ArgSet::new();
    for line in &lines[1..] {
        let [name] = line.as_slice() else {
            return Err(syntax("expected one argument name per line", line[1].span));
        };
        let id = f.id(name.text).ok_or_else(|| Error::UnknownArgument {
            name: name.text.to_string(),
            span: name.span,
        })?;
        cut.insert(id);
    }
    if cut.is_empty() {
        return Err(Error::EmptyCut { span: header_span });
    }
    if cut == *f.args() {
        return Err(Error::FullCut { span: header_span });
    }
    Ok(cut)
}

pub fn serialize_cut(f: &Framework, cut: &ArgSet) -> String {
    let mut out = String::from(CUT_HEADER);
    out.push('\n');
    for a in cut.iter() {
        out.push_str(f.name(a));
        out.push('\n');
    }
    out
}

/// Comma-separated names, or `{}` for the empty set.
pub fn format_extension(f: &Framework, e: &ArgSet) -> String {
    if e.is_empty() {
        "{}".to_string()
    } else {
        f.names_of(e).join(",")
    }
}

/// One extension per line in ascending order; `NONE` when there are none.
pub fn serialize_extensions(f: &Framework, exts: &ExtensionSet) -> String {
    if exts.is_empty() {
        return "NONE\n".to_string();
    }
    let mut out = String::new();
    for e in exts {
        out.push_str(&format_extension(f, e));
        out.push('\n');
    }
    out
}

/// Parses one extension written as `a,b`, `{a,b}` or `{}`.
pub fn parse_extension(text: &str, f: &Framework) -> Result<ArgSet> {
    parse_extension_at(text, f, start_of_text())
}

fn parse_extension_at(text: &str, f: &Framework, span: SourceSpan) -> Result<ArgSet> {
    let trimmed = text.trim();
    let inner = trimmed
        .strip_prefix('{')
        .and_then(|s| s.strip_suffix('}'))
        .unwrap_or(trimmed);
    inner
        .split(',')
        .map(str::trim)
        .filter(|s| !s.is_empty())
        .map(|name| {
            f.universe()
                .lookup(name)
                .filter(|&id| f.args().contains(id))
                .ok_or_else(|| Error::UnknownArgument {
                    name: name.to_string(),
                    span,
                })
        })
        .collect()
}

/// Inverse of [`serialize_extensions`].
pub fn parse_extensions(text: &str, f: &Framework) -> Result<ExtensionSet> {
    let lines = tokenize(text);
    if let [only] = lines.as_slice() {
        if only.len() == 1 && only[0].text == "NONE" {
            return Ok(BTreeSet::new());
        }
    }
    if lines.is_empty() {
        return Err(syntax("empty extension listing", start_of_text()));
    }
    lines
        .iter()
        .map(|line| {
            let joined: String = line.iter().map(|t| t.text).collect();
            parse_extension_at(&joined, f, line[0].span)
        })
        .collect()
}

/// One candidate cut per line, as comma-separated names.
pub fn serialize_cut_list(f: &Framework, cuts: &[ArgSet]) -> String {
    cuts.iter().map(|c| format_extension(f, c) + "\n").collect()
}

/// All stages of a pipeline run, each introduced by a `## <stage>` comment.
pub fn serialize_trace(trace: &PipelineTrace) -> String {
    let mut out = String::new();
    out.push_str("## hat_f2\n");
    out.push_str(&serialize_framework(&trace.hat_f2));
    out.push_str("## hat_r3\n");
    for l in &trace.hat_r3 {
        write_link(&mut out, &trace.hat_f2, "att", l);
    }
    for (name, frame) in [
        ("reduct", &trace.reduct),
        ("star", &trace.star),
        ("final", &trace.final_frame),
    ] {
        out.push_str("## ");
        out.push_str(name);
        out.push('\n');
        out.push_str(&serialize_framework(frame));
    }
    out
}
