//! Plain-text matrix files: one row per line, whitespace-separated floats,
//! blank lines between consecutive coefficients `A_0, A_1, ...`. Lines
//! starting with `#` are ignored.

use crate::error::{Error, Result};
use crate::format::fmt_float;
use crate::matrix::Matrix;

pub fn parse_matrices(text: &str) -> Result<Vec<Matrix>> {
    let mut out = Vec::new();
    // (first line number, rows)
    let mut block: Option<(usize, Vec<Vec<f64>>)> = None;
    let mut finish = |block: &mut Option<(usize, Vec<Vec<f64>>)>| -> Result<()> {
        if let Some((line, rows)) = block.take() {
            let m = Matrix::from_rows(&rows).map_err(|e| Error::Parse { line, message: e.to_string() })?;
            if let Some(first) = out.first().map(Matrix::dim) {
                if m.dim() != first {
                    return Err(Error::Parse {
                        line,
                        message: format!("matrix of size {} after one of size {first}", m.dim()),
                    });
                }
            }
            out.push(m);
        }
        Ok(())
    };
    for (idx, raw) in text.lines().enumerate() {
        let line = idx + 1;
        let content = raw.trim();
        if content.starts_with('#') {
            continue;
        }
        if content.is_empty() {
            finish(&mut block)?;
            continue;
        }
        let row = content
            .split_whitespace()
            .map(|tok| match tok.parse::<f64>() {
                Ok(v) if v.is_finite() => Ok(v),
                _ => Err(Error::Parse { line, message: format!("not a finite number: '{tok}'") }),
            })
            .collect::<Result<Vec<f64>>>()?;
        let (_, rows) = block.get_or_insert_with(|| (line, Vec::new()));
        if let Some(prev) = rows.first() {
            if prev.len() != row.len() {
                return Err(Error::Parse {
                    line,
                    message: format!("row has {} entries, expected {}", row.len(), prev.len()),
                });
            }
        }
        rows.push(row);
    }
    finish(&mut block)?;
    if out.is_empty() {
        return Err(Error::Parse { line: text.lines().count().max(1), message: "no matrices found".into() });
    }
    Ok(out)
}

pub fn write_matrices(matrices: &[Matrix], digits: usize) -> String {
    matrices
        .iter()
        .map(|m| {
            (0..m.dim())
                .map(|i| m.row(i).iter().map(|&v| fmt_float(v, digits)).collect::<Vec<_>>().join(" ") + "\n")
                .collect::<String>()
        })
        .collect::<Vec<_>>()
        .join("\n")
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn round_trip() {
        let text = "1 -1 2\n1 -2 1\n2 1 1\n\n2 1 3\n-2 1 2\n-3 2 1\n";
        let ms = parse_matrices(text).unwrap();
        assert_eq!(ms.len(), 2);
        assert_eq!(ms[1].get(2, 0), -3.0);
        assert_eq!(write_matrices(&ms, 12), text);
    }

    #[test]
    fn comments_and_extra_blank_lines() {
        let ms = parse_matrices("# A_0\n\n\n0 1\n0 0\n\n\n# A_1\n0 0\n1 0\n\n").unwrap();
        assert_eq!(ms.len(), 2);
    }

    #[test]
    fn errors_carry_line_numbers() {
        assert_eq!(
            parse_matrices("1 2\n3 x\n").unwrap_err(),
            Error::Parse { line: 2, message: "not a finite number: 'x'".into() }
        );
        assert!(matches!(parse_matrices("1 2\n3\n"), Err(Error::Parse { line: 2, .. })));
        assert!(matches!(parse_matrices("1 2\n3 4\n5 6\n"), Err(Error::Parse { line: 1, .. })));
        assert!(matches!(parse_matrices("1 2\n3 4\n\n1\n"), Err(Error::Parse { line: 4, .. })));
        assert!(parse_matrices("").is_err());
    }
}
