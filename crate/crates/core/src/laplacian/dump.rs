//! Plain-text matrix dumps.
//!
//! * dense: one row per line, entries separated by a single space;
//! * triplets: a `rows cols nnz` header followed by `i j value` lines
//!   (0-based) for every nonzero entry, row-major.

use std::io::{BufRead, Write};

use nalgebra::DMatrix;

use crate::error::{Error, Result};

pub fn write_dense<W: Write>(m: &DMatrix<f64>, mut out: W) -> Result<()> {
    for row in m.row_iter() {
        let line: Vec<String> = row.iter().map(|x| x.to_string()).collect();
        writeln!(out, "{}", line.join(" "))?;
    }
    Ok(())
}

pub fn read_dense<R: BufRead>(input: R) -> Result<DMatrix<f64>> {
    let mut rows: Vec<Vec<f64>> = Vec::new();
    for line in input.lines() {
        let line = line?;
        if line.trim().is_empty() {
            continue;
        }
        let row = line
            .split_whitespace()
            .map(|t| t.parse::<f64>().map_err(|e| Error::Parse(format!("{t:?}: {e}"))))
            .collect::<Result<Vec<_>>>()?;
        rows.push(row);
    }
    let ncols = rows.first().map_or(0, Vec::len);
    if rows.iter().any(|r| r.len() != ncols) {
        return Err(Error::Parse("ragged dense matrix".into()));
    }
    Ok(DMatrix::from_fn(rows.len(), ncols, |i, j| rows[i][j]))
}

pub fn write_triplets<W: Write>(m: &DMatrix<f64>, mut out: W) -> Result<()> {
    let nnz = m.iter().filter(|x| **x != 0.0).count();
    writeln!(out, "{} {} {}", m.nrows(), m.ncols(), nnz)?;
    for i in 0..m.nrows() {
        for j in 0..m.ncols() {
            let x = m[(i, j)];
            if x != 0.0 {
                writeln!(out, "{i} {j} {x}")?;
            }
        }
    }
    Ok(())
}

pub fn read_triplets<R: BufRead>(input: R) -> Result<DMatrix<f64>> {
    let mut lines = input.lines();
    let header = lines
        .next()
        .ok_or_else(|| Error::Parse("missing header".into()))??;
    let dims: Vec<usize> = header
        .split_whitespace()
        .map(|t| t.parse().map_err(|e| Error::Parse(format!("header {t:?}: {e}"))))
        .collect::<Result<_>>()?;
    let [rows, cols, nnz] = dims[..] else {
        return Err(Error::Parse("header must be `rows cols nnz`".into()));
    };
    let mut m = DMatrix::zeros(rows, cols);
    let mut count = 0;
    for line in lines {
        let line = line?;
        let parts: Vec<&str> = line.split_whitespace().collect();
        if parts.is_empty() {
            continue;
        }
        let [i, j, x] = parts[..] else {
            return Err(Error::Parse(format!("bad triplet {line:?}")));
        };
        let parse_idx = |t: &str, bound: usize| -> Result<usize> {
            let k: usize = t.parse().map_err(|e| Error::Parse(format!("{t:?}: {e}")))?;
            (k < bound)
                .then_some(k)
                .ok_or_else(|| Error::Parse(format!("index {k} out of range")))
        };
        let (i, j) = (parse_idx(i, rows)?, parse_idx(j, cols)?);
        m[(i, j)] = x.parse().map_err(|e| Error::Parse(format!("{x:?}: {e}")))?;
        count += 1;
    }
    if count != nnz {
        return Err(Error::Parse(format!("header says {nnz} entries, found {count}")));
    }
    Ok(m)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn dense_and_triplet_round_trip() {
        let m = DMatrix::from_row_slice(3, 3, &[2.0, -1.0, -1.0, -1.0, 1.0, 0.0, -1.0, 0.0, 1.0 / 3.0]);
        let mut buf = Vec::new();
        write_dense(&m, &mut buf).unwrap();
        assert_eq!(read_dense(buf.as_slice()).unwrap(), m);
        let mut buf = Vec::new();
        write_triplets(&m, &mut buf).unwrap();
        assert!(String::from_utf8_lossy(&buf).starts_with("3 3 7\n0 0 2\n"));
        assert_eq!(read_triplets(buf.as_slice()).unwrap(), m);
    }

    #[test]
    fn triplet_errors() {
        assert!(read_triplets("2 2 1\n5 0 1\n".as_bytes()).is_err());
        assert!(read_triplets("2 2 2\n0 0 1\n".as_bytes()).is_err());
        assert!(read_dense("1 2\n3\n".as_bytes()).is_err());
    }
}
