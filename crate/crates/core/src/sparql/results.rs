use std::fmt::Write;

use super::ResultSet;
use crate::model::vocab::xsd;
use crate::model::Term;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ResultFormat {
    Json,
    Csv,
}

impl ResultFormat {
    pub fn media_type(self) -> &'static str {
        match self {
            ResultFormat::Json => "application/sparql-results+json",
            ResultFormat::Csv => "text/csv; charset=utf-8",
        }
    }
}

fn json_str(s: &str) -> String {
    serde_json::to_string(s).expect("string serializes")
}

fn json_value(out: &mut String, term: &Term) {
    match term {
        Term::Iri(iri) => write!(out, r#"{{"type":"uri","value":{}}}"#, json_str(iri.as_str())),
        Term::BlankNode(b) => write!(out, r#"{{"type":"bnode","value":{}}}"#, json_str(b.label())),
        Term::Literal(lit) => {
            write!(out, r#"{{"type":"literal","value":{}"#, json_str(lit.lexical())).unwrap();
            if let Some(lang) = lit.language() {
                write!(out, r#","xml:lang":{}"#, json_str(lang)).unwrap();
            } else if lit.datatype().as_str() != xsd::STRING {
                write!(out, r#","datatype":{}"#, json_str(lit.datatype().as_str())).unwrap();
            }
            write!(out, "}}")
        }
    }
    .unwrap();
}

fn csv_cell(term: &Term) -> String {
    match term {
        Term::Iri(iri) => iri.as_str().to_string(),
        Term::BlankNode(b) => format!("_:{}", b.label()),
        Term::Literal(lit) => lit.lexical().to_string(),
    }
}

/// Writes `rs` in SPARQL results JSON (compact, columns in `vars` order) or
/// CSV with CRLF row terminators.
pub fn serialize_results(rs: &ResultSet, format: ResultFormat) -> String {
    match format {
        ResultFormat::Json => {
            let vars: Vec<String> = rs.vars.iter().map(|v| json_str(v)).collect();
            let mut out = format!(r#"{{"head":{{"vars":[{}]}},"results":{{"bindings":["#, vars.join(","));
            for (n, row) in rs.rows.iter().enumerate() {
                out.push_str(if n == 0 { "{" } else { ",{" });
                for (k, (var, term)) in vars.iter().zip(row).enumerate() {
                    if k > 0 {
                        out.push(',');
                    }
                    out.push_str(var);
                    out.push(':');
                    json_value(&mut out, term);
                }
                out.push('}');
            }
            out.push_str("]}}");
            out
        }
        ResultFormat::Csv => {
            let mut w = csv::WriterBuilder::new().terminator(csv::Terminator::CRLF).from_writer(Vec::new());
            w.write_record(&rs.vars).expect("in-memory write");
            for row in &rs.rows {
                w.write_record(row.iter().map(csv_cell)).expect("in-memory write");
            }
            String::from_utf8(w.into_inner().expect("in-memory flush")).expect("csv output is utf-8")
        }
    }
}

/// Human-readable table with columns padded to the widest cell.
pub fn format_table(rs: &ResultSet) -> String {
    let cells: Vec<Vec<String>> = rs.rows.iter().map(|r| r.iter().map(Term::to_string).collect()).collect();
    let header: Vec<String> = rs.vars.iter().map(|v| format!("?{v}")).collect();
    let widths: Vec<usize> = (0..rs.vars.len())
        .map(|i| {
            cells
                .iter()
                .map(|r| r[i].chars().count())
                .chain([header[i].chars().count()])
                .max()
                .unwrap_or(0)
        })
        .collect();
    let line = |row: &[String]| -> String {
        let padded: Vec<String> = row.iter().zip(&widths).map(|(c, w)| format!("{c:<w$}")).collect();
        format!("{}\n", padded.join(" | ").trim_end())
    };
    let mut out = line(&header);
    let rule: Vec<String> = widths.iter().map(|w| "-".repeat(*w)).collect();
    out.push_str(&format!("{}\n", rule.join("-+-")));
    for r in &cells {
        out.push_str(&line(r));
    }
    writeln!(out, "({} row{})", cells.len(), if cells.len() == 1 { "" } else { "s" }).unwrap();
    out
}
