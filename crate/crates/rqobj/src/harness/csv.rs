//! The artifact format: comma-separated values with `#`-prefixed comment
//! lines, `.` decimal points, and 17-significant-digit floats (exact
//! round-trip for doubles). Files contain no timestamps or absolute paths,
//! so identical configurations produce byte-identical output.

use std::io::Write;

use crate::Result;

/// One real number, formatted with full double precision.
pub fn fmt_float(x: f64) -> String {
    format!("{x:.16e}")
}

/// Writes `# key=value` comment lines, one per pair.
pub fn write_comments(w: &mut dyn Write, pairs: &[(&str, String)]) -> Result<()> {
    for (key, value) in pairs {
        writeln!(w, "# {key}={value}")?;
    }
    Ok(())
}

/// Writes the column-name line.
pub fn write_columns<S: AsRef<str>>(w: &mut dyn Write, names: &[S]) -> Result<()> {
    let mut line = String::new();
    for (i, name) in names.iter().enumerate() {
        if i > 0 {
            line.push(',');
        }
        line.push_str(name.as_ref());
    }
    writeln!(w, "{line}")?;
    Ok(())
}

/// Writes one data row of real values.
pub fn write_row(w: &mut dyn Write, values: &[f64]) -> Result<()> {
    let mut line = String::with_capacity(values.len() * 24);
    for (i, v) in values.iter().enumerate() {
        if i > 0 {
            line.push(',');
        }
        line.push_str(&fmt_float(*v));
    }
    writeln!(w, "{line}")?;
    Ok(())
}

/// Column names `<base>1..<base>d` for a real vector.
pub fn vector_columns(base: &str, d: usize) -> Vec<String> {
    (1..=d).map(|j| format!("{base}{j}")).collect()
}

/// Column names for a complex vector: `<base>j_re, <base>j_im` pairs.
pub fn complex_vector_columns(base: &str, d: usize) -> Vec<String> {
    let mut names = Vec::with_capacity(2 * d);
    for j in 1..=d {
        names.push(format!("{base}{j}_re"));
        names.push(format!("{base}{j}_im"));
    }
    names
}

/// Column names for a row-major complex matrix: `<base>_j_k_re/_im`.
pub fn complex_matrix_columns(base: &str, d: usize) -> Vec<String> {
    let mut names = Vec::with_capacity(2 * d * d);
    for j in 1..=d {
        for k in 1..=d {
            names.push(format!("{base}_{j}_{k}_re"));
            names.push(format!("{base}_{j}_{k}_im"));
        }
    }
    names
}

/// Flattens complex values into alternating re/im reals.
pub fn complex_to_reals(values: &[num_complex::Complex64]) -> Vec<f64> {
    let mut out = Vec::with_capacity(2 * values.len());
    for z in values {
        out.push(z.re);
        out.push(z.im);
    }
    out
}
