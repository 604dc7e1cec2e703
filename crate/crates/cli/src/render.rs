use serde_json::Value;

/// Shortest round-trip representation, or `digits` significant digits in
/// scientific notation.
pub fn float(x: f64, digits: Option<u8>) -> String {
    if let Some(d) = digits {
        return format!("{:.*e}", (d - 1) as usize, x);
    }
    let a = x.abs();
    if x == 0.0 || (1e-3..1e16).contains(&a) || !x.is_finite() {
        format!("{x}")
    } else {
        format!("{x:e}")
    }
}

/// Ordered (key, value) pairs printed as `key=value` lines or a JSON object.
pub struct Record {
    fields: Vec<(String, Field)>,
}

pub enum Field {
    Num(f64),
    Int(u64),
    Bool(bool),
    Text(String),
    Missing,
}

impl Record {
    pub fn new() -> Self {
        Self { fields: Vec::new() }
    }

    pub fn push(&mut self, key: &str, v: Field) -> &mut Self {
        self.fields.push((key.to_string(), v));
        self
    }

    pub fn num(&mut self, key: &str, v: f64) -> &mut Self {
        self.push(key, Field::Num(v))
    }

    pub fn text(&mut self, key: &str, v: impl Into<String>) -> &mut Self {
        self.push(key, Field::Text(v.into()))
    }

    pub fn keys(&self) -> Vec<&str> {
        self.fields.iter().map(|f| f.0.as_str()).collect()
    }

    fn cell(v: &Field, digits: Option<u8>) -> String {
        match v {
            Field::Num(x) => float(*x, digits),
            Field::Int(i) => i.to_string(),
            Field::Bool(b) => b.to_string(),
            Field::Text(s) => s.clone(),
            Field::Missing => String::new(),
        }
    }

    pub fn key_value(&self, digits: Option<u8>) -> String {
        self.fields
            .iter()
            .map(|(k, v)| format!("{k}={}\n", Self::cell(v, digits)))
            .collect()
    }

    pub fn csv_row(&self, digits: Option<u8>) -> String {
        let cells: Vec<String> = self.fields.iter().map(|(_, v)| Self::cell(v, digits)).collect();
        format!("{}\n", cells.join(","))
    }

    pub fn json(&self) -> Value {
        let mut m = serde_json::Map::new();
        for (k, v) in &self.fields {
            let j = match v {
                Field::Num(x) => serde_json::Number::from_f64(*x).map(Value::Number).unwrap_or(Value::Null),
                Field::Int(i) => Value::from(*i),
                Field::Bool(b) => Value::Bool(*b),
                Field::Text(s) => Value::String(s.clone()),
                Field::Missing => Value::Null,
            };
            m.insert(k.clone(), j);
        }
        Value::Object(m)
    }
}

/// Header plus rows; every record must share the first record's keys.
pub fn csv(records: &[Record], digits: Option<u8>) -> String {
    let mut out = String::new();
    if let Some(first) = records.first() {
        out.push_str(&first.keys().join(","));
        out.push('\n');
    }
    for r in records {
        out.push_str(&r.csv_row(digits));
    }
    out
}

pub fn json_array(records: &[Record]) -> String {
    let v = Value::Array(records.iter().map(Record::json).collect());
    let mut s = serde_json::to_string_pretty(&v).expect("json values serialize");
    s.push('\n');
    s
}

pub fn json_object(record: &Record) -> String {
    let mut s = serde_json::to_string_pretty(&record.json()).expect("json values serialize");
    s.push('\n');
    s
}
