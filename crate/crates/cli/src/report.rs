use std::io::Write;

use serde_json::{json, Map, Value};

#[derive(Debug, Clone, Copy, PartialEq, Eq, clap::ValueEnum)]
pub enum Format {
    Json,
    Csv,
}

#[derive(Debug, Clone)]
pub struct Table {
    pub name: String,
    pub columns: Vec<String>,
    pub rows: Vec<Vec<String>>,
}

/// Result of one command: the parameters it ran with, scalar results,
/// named invariant checks and optional tables.
#[derive(Debug, Clone)]
pub struct Report {
    pub command: String,
    params: Vec<(String, String)>,
    results: Vec<(String, String)>,
    checks: Vec<(String, bool)>,
    tables: Vec<Table>,
    /// Emit the tables as JSON lines, one row per line.
    json_lines: bool,
}

impl Report {
    pub fn new(command: &str) -> Self {
        Report {
            command: command.to_string(),
            params: Vec::new(),
            results: Vec::new(),
            checks: Vec::new(),
            tables: Vec::new(),
            json_lines: false,
        }
    }

    pub fn param(&mut self, key: &str, value: impl ToString) -> &mut Self {
        self.params.push((key.to_string(), value.to_string()));
        self
    }

    pub fn result(&mut self, key: &str, value: impl ToString) -> &mut Self {
        self.results.push((key.to_string(), value.to_string()));
        self
    }

    pub fn check(&mut self, name: &str, passed: bool) -> &mut Self {
        self.checks.push((name.to_string(), passed));
        self
    }

    pub fn table(&mut self, name: &str, columns: &[&str], rows: Vec<Vec<String>>) -> &mut Self {
        self.tables.push(Table {
            name: name.to_string(),
            columns: columns.iter().map(|c| c.to_string()).collect(),
            rows,
        });
        self
    }

    pub fn as_json_lines(&mut self) -> &mut Self {
        self.json_lines = true;
        self
    }

    pub fn failed_checks(&self) -> Vec<&str> {
        self.checks.iter().filter(|c| !c.1).map(|c| c.0.as_str()).collect()
    }

    fn pairs(items: &[(String, String)]) -> Value {
        Value::Object(
            items
                .iter()
                .map(|(k, v)| (k.clone(), Value::String(v.clone())))
                .collect(),
        )
    }

    fn header_json(&self) -> Map<String, Value> {
        let mut top = Map::new();
        top.insert("command".into(), json!(self.command));
        top.insert("params".into(), Self::pairs(&self.params));
        top.insert("results".into(), Self::pairs(&self.results));
        let checks: Map<String, Value> = self
            .checks
            .iter()
            .map(|(k, ok)| (k.clone(), json!(if *ok { "pass" } else { "fail" })))
            .collect();
        top.insert("checks".into(), Value::Object(checks));
        top
    }

    fn row_json(table: &Table, row: &[String]) -> Value {
        Value::Object(
            table
                .columns
                .iter()
                .zip(row)
                .map(|(c, v)| (c.clone(), Value::String(v.clone())))
                .collect(),
        )
    }

    pub fn to_json(&self) -> String {
        if self.json_lines {
            let mut out = serde_json::to_string(&Value::Object(self.header_json())).expect("json");
            out.push('\n');
            for table in &self.tables {
                for row in &table.rows {
                    let mut obj = Self::row_json(table, row);
                    obj.as_object_mut()
                        .expect("row object")
                        .insert("table".into(), json!(table.name));
                    out.push_str(&serde_json::to_string(&obj).expect("json"));
                    out.push('\n');
                }
            }
            return out;
        }
        let mut top = self.header_json();
        let tables: Map<String, Value> = self
            .tables
            .iter()
            .map(|t| {
                let rows = t.rows.iter().map(|r| Self::row_json(t, r)).collect();
                (t.name.clone(), Value::Array(rows))
            })
            .collect();
        top.insert("tables".into(), Value::Object(tables));
        let mut out = serde_json::to_string_pretty(&Value::Object(top)).expect("json");
        out.push('\n');
        out
    }

    /// `section,name,value` records, then each table as a `columns` row
    /// followed by `row` records.
    pub fn to_csv(&self) -> String {
        let mut w = csv::WriterBuilder::new().flexible(true).from_writer(Vec::new());
        let mut put = |record: Vec<String>| w.write_record(&record).expect("in-memory csv");
        put(vec!["section".into(), "name".into(), "value".into()]);
        put(vec!["command".into(), "command".into(), self.command.clone()]);
        for (k, v) in &self.params {
            put(vec!["param".into(), k.clone(), v.clone()]);
        }
        for (k, v) in &self.results {
            put(vec!["result".into(), k.clone(), v.clone()]);
        }
        for (k, ok) in &self.checks {
            put(vec![
                "check".into(),
                k.clone(),
                if *ok { "pass" } else { "fail" }.into(),
            ]);
        }
        for t in &self.tables {
            let mut header = vec!["columns".to_string(), t.name.clone()];
            header.extend(t.columns.iter().cloned());
            put(header);
            for row in &t.rows {
                let mut record = vec!["row".to_string(), t.name.clone()];
                record.extend(row.iter().cloned());
                put(record);
            }
        }
        String::from_utf8(w.into_inner().expect("flush")).expect("utf-8")
    }

    pub fn render(&self, format: Format) -> String {
        match format {
            Format::Json => self.to_json(),
            Format::Csv => self.to_csv(),
        }
    }

    pub fn write_to(&self, format: Format, out: &mut dyn Write) -> std::io::Result<()> {
        out.write_all(self.render(format).as_bytes())
    }
}
