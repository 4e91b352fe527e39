//! Plain-text rendering with 6 significant digits.

use std::fmt::Write;

use cslab_core::{ComplexMatrix, C64};

/// Real number with 6 significant digits, trailing zeros trimmed.
pub fn fmt_real(x: f64) -> String {
    if x == 0.0 {
        return "0".to_string();
    }
    let mag = x.abs().log10().floor() as i32;
    if !(-4..6).contains(&mag) {
        let s = format!("{x:.5e}");
        let (mantissa, exp) = s.split_once('e').unwrap_or((&s, "0"));
        return format!("{}e{}", trim_zeros(mantissa), exp);
    }
    let decimals = (5 - mag).max(0) as usize;
    trim_zeros(&format!("{x:.decimals$}")).to_string()
}

fn trim_zeros(s: &str) -> &str {
    if s.contains('.') {
        s.trim_end_matches('0').trim_end_matches('.')
    } else {
        s
    }
}

pub fn fmt_complex(z: C64) -> String {
    let re = fmt_real(z.re);
    let im = fmt_real(z.im.abs());
    match (z.re == 0.0, z.im == 0.0) {
        (_, true) => re,
        (true, false) => format!("{}{}i", if z.im < 0.0 { "-" } else { "" }, im),
        (false, false) => format!("{}{}{}i", re, if z.im < 0.0 { "-" } else { "+" }, im),
    }
}

/// Right-aligned grid of entries.
pub fn fmt_matrix(m: &ComplexMatrix) -> String {
    let cells: Vec<Vec<String>> = (0..m.rows())
        .map(|i| (0..m.cols()).map(|j| fmt_complex(m.get(i, j))).collect())
        .collect();
    let width = cells.iter().flatten().map(String::len).max().unwrap_or(1);
    let mut out = String::new();
    for row in &cells {
        out.push_str("  [");
        for (j, c) in row.iter().enumerate() {
            if j > 0 {
                out.push_str("  ");
            }
            let _ = write!(out, "{c:>width$}");
        }
        out.push_str("]\n");
    }
    out
}

pub fn fmt_list(values: &[C64]) -> String {
    let parts: Vec<String> = values.iter().map(|&z| fmt_complex(z)).collect();
    format!("({})", parts.join(", "))
}
