//! Aligned plain-text tables.

use eulerian_core::convexity::ConvexityReport;

pub(crate) fn table(header: &[&str], rows: &[Vec<String>]) -> String {
    let mut widths: Vec<usize> = header.iter().map(|h| h.chars().count()).collect();
    for row in rows {
        for (w, cell) in widths.iter_mut().zip(row) {
            *w = (*w).max(cell.chars().count());
        }
    }
    let line = |cells: &mut dyn Iterator<Item = &str>| {
        let mut out = String::new();
        for (cell, w) in cells.zip(&widths) {
            out.push_str(cell);
            out.extend(std::iter::repeat_n(' ', w - cell.chars().count() + 2));
        }
        out.truncate(out.trim_end().len());
        out.push('\n');
        out
    };
    let mut out = line(&mut header.iter().copied());
    for row in rows {
        out.push_str(&line(&mut row.iter().map(String::as_str)));
    }
    out
}

pub(crate) fn report(r: &ConvexityReport) -> String {
    let (m_max, n_max) = r.checked_range();
    let mut out = format!(
        "verdict: {}  (checked up to m = {m_max}, n = {n_max})\n",
        if r.verdict() { "pass" } else { "FAIL" }
    );
    if !r.verdict() {
        let rows: Vec<Vec<String>> = r
            .witnesses()
            .iter()
            .map(|w| {
                let k = w.coeff_index.map_or_else(|| "-".to_string(), |k| k.to_string());
                vec![w.m.to_string(), w.n.to_string(), k]
            })
            .collect();
        out.push_str(&table(&["m", "n", "coeff"], &rows));
    }
    out
}
