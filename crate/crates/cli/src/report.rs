use std::time::Duration;

use clap::ValueEnum;
use parthom_core::{Block, PartialPartition};
use serde_json::{Map, Value};

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, ValueEnum)]
pub enum Format {
    #[default]
    Text,
    Json,
}

/// Outcome of one command: echoed inputs, per-module results and an overall
/// verdict.
#[derive(Clone, Debug, PartialEq)]
pub struct Report {
    pub command: String,
    pub inputs: Value,
    pub results: Value,
    pub verified: bool,
    pub wall_time: Option<Duration>,
}

impl Report {
    pub fn new(command: &str, inputs: Value, results: Value, verified: bool) -> Self {
        Report { command: command.to_string(), inputs, results, verified, wall_time: None }
    }

    pub fn exit_code(&self) -> i32 {
        if self.verified {
            0
        } else {
            1
        }
    }

    pub fn to_json(&self) -> Value {
        let mut m = Map::new();
        m.insert("command".into(), Value::from(self.command.clone()));
        m.insert("inputs".into(), self.inputs.clone());
        m.insert("results".into(), self.results.clone());
        m.insert("verified".into(), Value::from(self.verified));
        if let Some(t) = self.wall_time {
            m.insert("wallTimeMs".into(), Value::from(t.as_millis() as u64));
        }
        Value::Object(m)
    }

    pub fn render(&self, format: Format) -> String {
        match format {
            Format::Json => {
                let mut s = serde_json::to_string_pretty(&self.to_json()).expect("serializable");
                s.push('\n');
                s
            }
            Format::Text => render_text(&self.to_json()),
        }
    }
}

/// Keys whose values are a single face given as a bitmask array.
const FACE_KEYS: &[&str] = &["F", "simplex", "witness"];
/// Keys whose values are lists of faces.
const FACE_LIST_KEYS: &[&str] = &["facets", "order", "restrictions"];

/// One `path: value` line per leaf. Faces are written in the brace-dropping
/// notation (`12,34`), so the text carries the same numbers as the JSON.
pub fn render_text(v: &Value) -> String {
    let mut out = String::new();
    walk(v, "", Ctx::Plain, &mut out);
    out
}

#[derive(Clone, Copy, PartialEq)]
enum Ctx {
    Plain,
    Face,
    FaceList,
    FaceMap,
    BlockKeys,
}

fn walk(v: &Value, path: &str, ctx: Ctx, out: &mut String) {
    match v {
        Value::Object(m) => {
            for (k, child) in m {
                let (label, child_ctx) = match ctx {
                    Ctx::FaceMap => (k.clone(), Ctx::FaceList),
                    Ctx::BlockKeys => (block_label(k), Ctx::Plain),
                    _ if FACE_KEYS.contains(&k.as_str()) => (k.clone(), Ctx::Face),
                    _ if FACE_LIST_KEYS.contains(&k.as_str()) => (k.clone(), Ctx::FaceList),
                    _ if k == "gamma" => (k.clone(), Ctx::FaceMap),
                    _ if k == "reps" => (k.clone(), Ctx::BlockKeys),
                    _ => (k.clone(), Ctx::Plain),
                };
                let p = if path.is_empty() { label } else { format!("{path}.{label}") };
                walk(child, &p, child_ctx, out);
            }
        }
        Value::Array(items) => {
            if ctx == Ctx::Face && items.iter().all(Value::is_u64) {
                line(out, path, &face_label(items));
            } else if ctx == Ctx::FaceList && !items.is_empty() && items.iter().all(Value::is_array) {
                let parts: Vec<String> = items
                    .iter()
                    .map(|x| face_label(x.as_array().expect("array")))
                    .collect();
                line(out, path, &parts.join(" | "));
            } else if items.iter().all(|x| !x.is_object() && !x.is_array()) {
                let parts: Vec<String> = items.iter().map(scalar).collect();
                line(out, path, &format!("[{}]", parts.join(", ")));
            } else {
                for (i, x) in items.iter().enumerate() {
                    walk(x, &format!("{path}[{i}]"), ctx, out);
                }
            }
        }
        other => line(out, path, &scalar(other)),
    }
}

fn line(out: &mut String, path: &str, value: &str) {
    out.push_str(path);
    out.push_str(": ");
    out.push_str(value);
    out.push('\n');
}

fn scalar(v: &Value) -> String {
    match v {
        Value::String(s) => s.clone(),
        other => other.to_string(),
    }
}

fn face_label(masks: &[Value]) -> String {
    let masks: Vec<u32> = masks.iter().filter_map(|m| m.as_u64()).map(|m| m as u32).collect();
    match PartialPartition::from_masks(&masks) {
        Ok(f) => f.to_string(),
        Err(_) => format!("{masks:?}"),
    }
}

fn block_label(key: &str) -> String {
    key.parse::<u32>()
        .ok()
        .and_then(|m| Block::from_bits(m).ok())
        .map(|b| b.to_string())
        .unwrap_or_else(|| key.to_string())
}
