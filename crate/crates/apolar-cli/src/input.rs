//! Argument decoding: forms, point lists, rationals, and @file indirection.

use apolar::forms::{parse_form, Form, Variance};
use apolar::scalar::{parse_scalar, Scalar};

use crate::CliError;

/// Values starting with `@` are read from the named file (trimmed).
pub fn resolve_at(value: &str) -> Result<String, CliError> {
    if let Some(path) = value.strip_prefix('@') {
        std::fs::read_to_string(path)
            .map(|s| s.trim().to_string())
            .map_err(|e| CliError::Usage(format!("cannot read {path}: {e}")))
    } else {
        Ok(value.to_string())
    }
}

/// Variance from the variable letters in the text: `x` is primal, `y` is
/// dual, mixing them is an error, and a constant defaults to primal.
pub fn detect_variance(text: &str) -> Result<Variance, CliError> {
    let has_x = text.contains('x');
    let has_y = text.contains('y');
    match (has_x, has_y) {
        (true, true) => Err(CliError::Usage(
            "form mixes primal (x) and dual (y) variables".to_string(),
        )),
        (false, true) => Ok(Variance::Dual),
        _ => Ok(Variance::Primal),
    }
}

/// Smallest arity covering every variable index in the text.
pub fn detect_nvars(text: &str) -> usize {
    let bytes = text.as_bytes();
    let mut max_index = 0usize;
    for (i, &b) in bytes.iter().enumerate() {
        if (b == b'x' || b == b'y') && i + 1 < bytes.len() && bytes[i + 1].is_ascii_digit() {
            max_index = max_index.max((bytes[i + 1] - b'0') as usize);
        }
    }
    max_index + 1
}

/// Parse a form in a known arity, with `@file` support and automatic
/// variance detection.
pub fn parse_form_in(value: &str, nvars: usize) -> Result<Form, CliError> {
    let text = resolve_at(value)?;
    let variance = detect_variance(&text)?;
    parse_form(&text, nvars, variance).map_err(|e| CliError::Usage(format!("--form: {e}")))
}

/// Parse a form argument, with `@file` support and automatic variance and
/// arity detection (overridable via --nvars).
pub fn parse_form_arg(value: &str, nvars: Option<usize>) -> Result<Form, CliError> {
    let text = resolve_at(value)?;
    let variance = detect_variance(&text)?;
    let nvars = nvars.unwrap_or_else(|| detect_nvars(&text));
    parse_form(&text, nvars, variance).map_err(|e| CliError::Usage(format!("--form: {e}")))
}

/// Common arity for a set of argument texts plus any point tuples: the
/// override if given, otherwise the maximum detected index + 1.
pub fn common_nvars(
    texts: &[&str],
    point_arity: Option<usize>,
    nvars: Option<usize>,
) -> Result<usize, CliError> {
    if let Some(n) = nvars {
        return Ok(n);
    }
    let mut best = point_arity.unwrap_or(1);
    for value in texts {
        let text = resolve_at(value)?;
        best = best.max(detect_nvars(&text));
    }
    Ok(best)
}

/// Semicolon-separated tuples of comma-separated rationals.
pub fn parse_points(value: &str) -> Result<Vec<Vec<Scalar>>, CliError> {
    let text = resolve_at(value)?;
    let mut points = Vec::new();
    for (i, tuple) in text.split(';').enumerate() {
        let tuple = tuple.trim();
        if tuple.is_empty() {
            return Err(CliError::Usage(format!("--points: tuple {} is empty", i + 1)));
        }
        let coords: Result<Vec<Scalar>, String> =
            tuple.split(',').map(|c| parse_scalar(c.trim())).collect();
        points.push(coords.map_err(|e| CliError::Usage(format!("--points: {e}")))?);
    }
    if points.is_empty() {
        return Err(CliError::Usage("--points: no points given".to_string()));
    }
    let arity = points[0].len();
    if points.iter().any(|p| p.len() != arity) {
        return Err(CliError::Usage(
            "--points: tuples have inconsistent arity".to_string(),
        ));
    }
    Ok(points)
}

/// Semicolon-separated rationals.
pub fn parse_scalars(value: &str, flag: &str) -> Result<Vec<Scalar>, CliError> {
    let text = resolve_at(value)?;
    text.split(';')
        .map(|s| parse_scalar(s.trim()).map_err(|e| CliError::Usage(format!("{flag}: {e}"))))
        .collect()
}

/// `--d` accepts a single degree, a comma list, or inclusive ranges like
/// `5..30`, combined freely.
pub fn parse_degree_list(value: &str) -> Result<Vec<i64>, CliError> {
    let mut out = Vec::new();
    for part in value.split(',') {
        let part = part.trim();
        if let Some((lo, hi)) = part.split_once("..") {
            let lo: i64 = lo
                .trim()
                .parse()
                .map_err(|_| CliError::Usage(format!("--d: invalid range start `{lo}`")))?;
            let hi: i64 = hi
                .trim()
                .parse()
                .map_err(|_| CliError::Usage(format!("--d: invalid range end `{hi}`")))?;
            if hi < lo {
                return Err(CliError::Usage(format!("--d: empty range {lo}..{hi}")));
            }
            out.extend(lo..=hi);
        } else {
            out.push(
                part.parse()
                    .map_err(|_| CliError::Usage(format!("--d: invalid degree `{part}`")))?,
            );
        }
    }
    if out.is_empty() {
        return Err(CliError::Usage("--d: no degrees given".to_string()));
    }
    Ok(out)
}
