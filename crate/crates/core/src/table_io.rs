//! Serialization of `(n, value)` tables: CSV with an `n,value` header,
//! pretty-printed JSON, and an aligned plain-text form.

use serde::{Deserialize, Serialize};

use crate::dirichlet::ValueTable;
use crate::error::{Error, Result};
use crate::value::Value;

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Row {
    pub n: u64,
    pub value: Value,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct TableDoc {
    pub provenance: String,
    pub rows: Vec<Row>,
}

impl TableDoc {
    pub fn from_table(table: &ValueTable, lo: u64, hi: u64) -> Self {
        TableDoc {
            provenance: table.provenance().to_string(),
            rows: table.rows(lo, hi).map(|(n, v)| Row { n, value: v.clone() }).collect(),
        }
    }

    pub fn to_csv(&self) -> Result<String> {
        let mut w = csv::WriterBuilder::new().terminator(csv::Terminator::Any(b'\n')).from_writer(Vec::new());
        w.write_record(["n", "value"]).map_err(csv_err)?;
        for row in &self.rows {
            w.write_record([row.n.to_string(), row.value.to_string()]).map_err(csv_err)?;
        }
        let bytes = w.into_inner().map_err(|e| Error::Parse(e.to_string()))?;
        String::from_utf8(bytes).map_err(|e| Error::Parse(e.to_string()))
    }

    /// Parses CSV written by [`TableDoc::to_csv`]. CSV carries no provenance.
    pub fn from_csv(text: &str, provenance: impl Into<String>) -> Result<Self> {
        let mut r = csv::ReaderBuilder::new().from_reader(text.as_bytes());
        let header = r.headers().map_err(csv_err)?;
        if header != vec!["n", "value"] {
            return Err(Error::Parse(format!("expected header n,value, got {header:?}")));
        }
        let rows = r.deserialize::<Row>().collect::<std::result::Result<Vec<_>, _>>().map_err(csv_err)?;
        Ok(TableDoc { provenance: provenance.into(), rows })
    }

    pub fn to_json(&self) -> Result<String> {
        let mut s = serde_json::to_string_pretty(self).map_err(|e| Error::Parse(e.to_string()))?;
        s.push('\n');
        Ok(s)
    }

    pub fn from_json(text: &str) -> Result<Self> {
        serde_json::from_str(text).map_err(|e| Error::Parse(e.to_string()))
    }

    pub fn to_text(&self) -> String {
        let width = self.rows.iter().map(|r| r.n.to_string().len()).max().unwrap_or(1).max(1);
        let mut out = format!("{:>width$}  value\n", "n");
        for row in &self.rows {
            out.push_str(&format!("{:>width$}  {}\n", row.n, row.value));
        }
        out
    }
}

fn csv_err(e: csv::Error) -> Error {
    Error::Parse(e.to_string())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::function::{mobius, totient};
    use proptest::prelude::*;

    #[test]
    fn csv_layout() {
        let t = ValueTable::tabulate(&mobius(), 6).unwrap();
        let doc = TableDoc::from_table(&t, 1, 6);
        assert_eq!(doc.to_csv().unwrap(), "n,value\n1,1\n2,-1\n3,-1\n4,0\n5,-1\n6,1\n");
        assert_eq!(doc.to_text().lines().next(), Some("n  value"));
    }

    #[test]
    fn bad_inputs() {
        assert!(TableDoc::from_csv("a,b\n1,2\n", "").is_err());
        assert!(TableDoc::from_csv("n,value\n1,1/0\n", "").is_err());
        assert!(TableDoc::from_json("{}").is_err());
    }

    proptest! {
        #[test]
        fn emitted_tables_round_trip(
            lo in 1u64..50,
            len in 0u64..40,
            nums in proptest::collection::vec((-500i64..500, 1i64..50), 40),
        ) {
            let phi = ValueTable::tabulate(&totient(), lo + len).unwrap();
            let mut doc = TableDoc::from_table(&phi, lo, lo + len);
            for (row, (a, b)) in doc.rows.iter_mut().zip(&nums) {
                row.value = &row.value + &Value::ratio(*a, *b);
            }
            let csv = doc.to_csv().unwrap();
            let again = TableDoc::from_csv(&csv, doc.provenance.clone()).unwrap();
            prop_assert_eq!(&again, &doc);
            prop_assert_eq!(again.to_csv().unwrap(), csv);
            let json = doc.to_json().unwrap();
            prop_assert_eq!(TableDoc::from_json(&json).unwrap().to_json().unwrap(), json);
        }
    }
}
