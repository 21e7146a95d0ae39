//! Text renderings: aligned grids, CSV, verification reports.

use std::fmt::Write as _;

use lawson_core::bigraded::{DimEntry, LawsonTable, MorphicTable};
use lawson_core::verify::OracleReport;

fn bound(e: DimEntry) -> &'static str {
    if e.is_exact() {
        ""
    } else {
        "<="
    }
}

fn aligned(rows: &[Vec<String>], right: bool) -> String {
    let cols = rows.iter().map(Vec::len).max().unwrap_or(0);
    let widths: Vec<usize> = (0..cols)
        .map(|c| {
            rows.iter()
                .filter_map(|r| r.get(c))
                .map(String::len)
                .max()
                .unwrap_or(0)
        })
        .collect();
    let mut out = String::new();
    for r in rows {
        let line: Vec<String> = r
            .iter()
            .enumerate()
            .map(|(c, s)| {
                if right {
                    format!("{s:>w$}", w = widths[c])
                } else {
                    format!("{s:<w$}", w = widths[c])
                }
            })
            .collect();
        out.push_str(line.join("  ").trim_end());
        out.push('\n');
    }
    out
}

/// Rows `k` from `2m` down to `0`, columns `p` from `0` to `m`; blank where
/// `k < 2p`.
pub fn lawson_grid(title: &str, t: &LawsonTable) -> String {
    let m = i64::from(t.dim());
    let mut rows = vec![std::iter::once("k\\p".to_string())
        .chain((0..=m).map(|p| p.to_string()))
        .collect::<Vec<_>>()];
    for k in (0..=2 * m).rev() {
        let mut row = vec![k.to_string()];
        for p in 0..=m {
            row.push(if 2 * p > k {
                String::new()
            } else {
                t.lookup(p, k).to_string()
            });
        }
        rows.push(row);
    }
    format!("{title} (dim {m})\n{}", aligned(&rows, true))
}

pub fn lawson_csv(t: &LawsonTable) -> String {
    let mut out = String::from("p,k,dim,bound\n");
    for (b, e) in t.entries() {
        let _ = writeln!(out, "{},{},{},{}", b.p, b.k, e.value(), bound(e));
    }
    out
}

/// Rows `l` descending, columns `q` up to the first stable column.
pub fn morphic_grid(title: &str, t: &MorphicTable) -> String {
    let qmax = t.stable_from().max(0);
    let mut rows = vec![std::iter::once("l\\q".to_string())
        .chain((0..=qmax).map(|q| q.to_string()))
        .collect::<Vec<_>>()];
    for l in (0..=2 * qmax).rev() {
        let mut row = vec![l.to_string()];
        for q in 0..=qmax {
            row.push(if l > 2 * q {
                String::new()
            } else {
                t.lookup(q, l).to_string()
            });
        }
        rows.push(row);
    }
    format!(
        "{title} (morphic, dim {}, columns constant for q >= {qmax})\n{}",
        t.dim(),
        aligned(&rows, true)
    )
}

pub fn morphic_csv(t: &MorphicTable) -> String {
    let mut out = String::from("q,l,dim,bound\n");
    for (q, l, e) in t.entries() {
        let _ = writeln!(out, "{q},{l},{},{}", e.value(), bound(e));
    }
    out
}

pub fn reports_text(reports: &[OracleReport]) -> String {
    let mut rows = vec![vec![
        "status".to_string(),
        "suite".to_string(),
        "oracle".to_string(),
        "instance".to_string(),
    ]];
    let mut detail = String::new();
    for r in reports {
        rows.push(vec![
            if r.passed { "PASS" } else { "FAIL" }.to_string(),
            r.suite.clone(),
            r.oracle.clone(),
            r.instance.clone(),
        ]);
        if !r.passed {
            let _ = writeln!(
                detail,
                "FAIL {} {} [{}]\n  expected: {}\n  engine:   {}",
                r.suite, r.oracle, r.instance, r.expected, r.engine
            );
        }
    }
    let passed = reports.iter().filter(|r| r.passed).count();
    let mut out = aligned(&rows, false);
    out.push_str(&detail);
    let _ = writeln!(out, "{passed}/{} passed", reports.len());
    out
}

fn csv_field(s: &str) -> String {
    if s.contains([',', '"', '\n']) {
        format!("\"{}\"", s.replace('"', "\"\""))
    } else {
        s.to_string()
    }
}

pub fn reports_csv(reports: &[OracleReport]) -> String {
    let mut out = String::from("suite,oracle,instance,expected,engine,passed\n");
    for r in reports {
        let _ = writeln!(
            out,
            "{},{},{},{},{},{}",
            csv_field(&r.suite),
            csv_field(&r.oracle),
            csv_field(&r.instance),
            csv_field(&r.expected),
            csv_field(&r.engine),
            r.passed
        );
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use lawson_core::{builtin_atom, Builtin};

    #[test]
    fn grid_for_plane() {
        let g = lawson_grid("P2", builtin_atom(Builtin::ProjectiveSpace(2)).table());
        let expected = "\
P2 (dim 2)
k\\p  0  1  2
  4  1  1  1
  3  0  0
  2  1  1
  1  0
  0  1
";
        assert_eq!(g, expected);
    }

    #[test]
    fn csv_sorted_with_bounds() {
        let t = LawsonTable::new(
            2,
            [
                ((1, 2), DimEntry::AtMost(3)),
                ((0, 0), DimEntry::Exact(1)),
                ((0, 2), DimEntry::Exact(3)),
            ],
        )
        .unwrap();
        assert_eq!(lawson_csv(&t), "p,k,dim,bound\n0,0,1,\n0,2,3,\n1,2,3,<=\n");
    }
}
