use std::fmt::Write as _;
use std::time::Instant;

use serde::Serialize;
use serde_json::{Map, Value};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Status {
    Match,
    Mismatch,
    Skipped,
    Info,
}

impl Status {
    pub fn from_check(ok: bool) -> Self {
        if ok {
            Status::Match
        } else {
            Status::Mismatch
        }
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct Row {
    pub instance: String,
    #[serde(flatten)]
    pub values: Map<String, Value>,
    pub status: Status,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub note: Option<String>,
}

impl Row {
    pub fn new(instance: impl Into<String>, status: Status) -> Self {
        Self {
            instance: instance.into(),
            values: Map::new(),
            status,
            note: None,
        }
    }

    pub fn with(mut self, key: &str, value: impl Into<Value>) -> Self {
        self.values.insert(key.to_string(), value.into());
        self
    }

    pub fn note(mut self, note: impl Into<String>) -> Self {
        self.note = Some(note.into());
        self
    }
}

#[derive(Clone, Debug, Default, Serialize)]
pub struct Summary {
    pub matched: usize,
    pub mismatched: usize,
    pub skipped: usize,
    pub info: usize,
}

#[derive(Debug, Serialize)]
pub struct RunReport {
    pub command: String,
    pub ranges: Map<String, Value>,
    pub header: Vec<String>,
    pub rows: Vec<Row>,
    pub notes: Vec<String>,
    pub summary: Summary,
    pub wall_seconds: f64,
    #[serde(skip)]
    started: Option<Instant>,
}

impl RunReport {
    pub fn new(command: impl Into<String>) -> Self {
        Self {
            command: command.into(),
            ranges: Map::new(),
            header: Vec::new(),
            rows: Vec::new(),
            notes: Vec::new(),
            summary: Summary::default(),
            wall_seconds: 0.0,
            started: Some(Instant::now()),
        }
    }

    pub fn range(&mut self, key: &str, value: impl Into<Value>) {
        self.ranges.insert(key.to_string(), value.into());
    }

    pub fn push(&mut self, row: Row) {
        self.rows.push(row);
    }

    pub fn has_mismatch(&self) -> bool {
        self.rows.iter().any(|r| r.status == Status::Mismatch)
    }

    pub fn finish(&mut self) {
        let mut s = Summary::default();
        for r in &self.rows {
            match r.status {
                Status::Match => s.matched += 1,
                Status::Mismatch => s.mismatched += 1,
                Status::Skipped => s.skipped += 1,
                Status::Info => s.info += 1,
            }
        }
        self.summary = s;
        if let Some(t) = self.started {
            self.wall_seconds = t.elapsed().as_secs_f64();
        }
    }

    pub fn to_text(&self) -> String {
        let mut out = String::new();
        for h in &self.header {
            let _ = writeln!(out, "{h}");
        }
        for r in &self.rows {
            let mut line = r.instance.clone();
            for (k, v) in &r.values {
                let _ = write!(line, "  {k}={}", plain(v));
            }
            let status = match (r.status, &r.note) {
                (Status::Skipped, Some(n)) => format!("skipped: {n}"),
                (st, Some(n)) => format!("{}  ({n})", status_word(st)),
                (st, None) => status_word(st).to_string(),
            };
            let _ = writeln!(out, "{line}  {status}");
        }
        for n in &self.notes {
            let _ = writeln!(out, "{n}");
        }
        let s = &self.summary;
        let _ = writeln!(
            out,
            "summary match={} mismatch={} skipped={} info={} wall={:.3}s",
            s.matched, s.mismatched, s.skipped, s.info, self.wall_seconds
        );
        out
    }
}

fn status_word(s: Status) -> &'static str {
    match s {
        Status::Match => "match",
        Status::Mismatch => "MISMATCH",
        Status::Skipped => "skipped",
        Status::Info => "info",
    }
}

fn plain(v: &Value) -> String {
    match v {
        Value::String(s) => s.clone(),
        Value::Null => "-".into(),
        other => other.to_string(),
    }
}
