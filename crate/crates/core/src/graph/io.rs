//! Edge-list interchange format: UTF-8 CSV, one `a,b,length` record per
//! line, 0-based vertex indices, `#` starts a comment line.

use std::fs::File;
use std::io::{Read, Write};
use std::path::Path;

use super::MetrizedGraph;
use crate::error::{Error, Result};

pub fn read_edge_list<R: Read>(reader: R) -> Result<MetrizedGraph> {
    let mut csv = csv::ReaderBuilder::new()
        .has_headers(false)
        .comment(Some(b'#'))
        .trim(csv::Trim::All)
        .flexible(false)
        .from_reader(reader);
    let mut records = Vec::new();
    for (line, rec) in csv.records().enumerate() {
        let rec = rec.map_err(|e| Error::Parse(e.to_string()))?;
        if rec.len() != 3 {
            return Err(Error::Parse(format!(
                "record {}: expected 3 fields, found {}",
                line + 1,
                rec.len()
            )));
        }
        let field = |i: usize| rec.get(i).unwrap_or_default();
        let index = |i: usize| {
            field(i)
                .parse::<usize>()
                .map_err(|e| Error::Parse(format!("record {}: {:?}: {e}", line + 1, field(i))))
        };
        let length = field(2)
            .parse::<f64>()
            .map_err(|e| Error::Parse(format!("record {}: {:?}: {e}", line + 1, field(2))))?;
        records.push((index(0)?, index(1)?, length));
    }
    MetrizedGraph::from_edge_list(&records)
}

pub fn read_edge_list_file(path: impl AsRef<Path>) -> Result<MetrizedGraph> {
    read_edge_list(File::open(path)?)
}

/// Writes the graph with an optional `#` header comment. Lengths use Rust's
/// shortest round-trip float formatting.
pub fn write_edge_list<W: Write>(g: &MetrizedGraph, header: Option<&str>, mut out: W) -> Result<()> {
    if let Some(h) = header {
        for line in h.lines() {
            writeln!(out, "# {line}")?;
        }
    }
    for e in g.edges() {
        writeln!(out, "{},{},{}", e.a, e.b, e.length)?;
    }
    out.flush()?;
    Ok(())
}

pub fn write_edge_list_file(g: &MetrizedGraph, header: Option<&str>, path: impl AsRef<Path>) -> Result<()> {
    let file = std::io::BufWriter::new(File::create(path)?);
    write_edge_list(g, header, file)
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    #[test]
    fn parses_comments_and_whitespace() {
        let text = "# triangle\n0,1,1\n 1 , 2 , 0.5\n# mid comment\n2,0,2e0\n";
        let g = read_edge_list(text.as_bytes()).unwrap();
        assert_eq!(g.vertex_count(), 3);
        assert_eq!(g.edges()[1].length, 0.5);
    }

    #[test]
    fn reports_bad_records() {
        assert!(matches!(read_edge_list("0,1\n".as_bytes()), Err(Error::Parse(_))));
        assert!(matches!(read_edge_list("0,x,1\n".as_bytes()), Err(Error::Parse(_))));
        assert!(matches!(read_edge_list("0,-1,1\n".as_bytes()), Err(Error::Parse(_))));
        assert_eq!(read_edge_list("# nothing\n".as_bytes()), Err(Error::EmptyGraph));
        assert!(matches!(
            read_edge_list("0,1,-2\n".as_bytes()),
            Err(Error::NonPositiveLength { .. })
        ));
    }

    proptest! {
        #[test]
        fn round_trip_is_exact(lengths in proptest::collection::vec(1e-6f64..1e6, 1..30)) {
            let recs: Vec<_> = lengths.iter().enumerate().map(|(i, &l)| (i, i + 1, l)).collect();
            let g = MetrizedGraph::from_edge_list(&recs).unwrap();
            let mut buf = Vec::new();
            write_edge_list(&g, Some("path"), &mut buf).unwrap();
            let back = read_edge_list(buf.as_slice()).unwrap();
            prop_assert_eq!(back, g);
        }
    }
}
