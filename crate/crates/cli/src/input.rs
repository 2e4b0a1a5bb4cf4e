//! Line-oriented numeric input: one decimal literal per line, blank lines
//! ignored, anything else reported as malformed with its line number.

use std::io::BufRead;

/// Outcome of scanning one raw input line.
#[derive(Debug, Clone, PartialEq)]
pub enum Line {
    /// A finite numeric value.
    Value(f64),
    /// Empty or whitespace-only; skipped silently.
    Blank,
    /// Unparseable or non-finite content, reported but not consumed.
    Malformed(String),
}

/// Classifies one line.
pub fn classify(raw: &str) -> Line {
    let trimmed = raw.trim();
    if trimmed.is_empty() {
        return Line::Blank;
    }
    match trimmed.parse::<f64>() {
        Ok(value) if value.is_finite() => Line::Value(value),
        _ => Line::Malformed(trimmed.to_string()),
    }
}

/// Streams `(line_number, Line)` pairs from a reader; line numbers are 1-based.
pub fn lines<R: BufRead>(reader: R) -> impl Iterator<Item = std::io::Result<(usize, Line)>> {
    reader
        .lines()
        .enumerate()
        .map(|(index, result)| result.map(|raw| (index + 1, classify(&raw))))
}

/// Reads every value, invoking `on_malformed(line_number, content)` for bad
/// lines, and returns the number of malformed lines alongside the values.
pub fn read_all<R: BufRead>(
    reader: R,
    mut on_malformed: impl FnMut(usize, &str),
) -> std::io::Result<(Vec<f64>, usize)> {
    let mut values = Vec::new();
    let mut malformed = 0;
    for item in lines(reader) {
        let (number, line) = item?;
        match line {
            Line::Value(v) => values.push(v),
            Line::Blank => {}
            Line::Malformed(content) => {
                malformed += 1;
                on_malformed(number, &content);
            }
        }
    }
    Ok((values, malformed))
}
