use serde_json::Value;

use crate::cmd::CliError;

pub fn error_object(e: &CliError) -> Value {
    serde_json::json!({ "error": { "code": e.code(), "message": e.message() } })
}

/// JSON mode prints the value compactly. Plain mode prints the command's
/// own template when it has one, otherwise `key: value` lines.
pub fn render(v: &Value, plain: Option<&str>, json: bool) -> String {
    if json {
        return v.to_string();
    }
    if let Some(s) = plain {
        return s.to_string();
    }
    match v {
        Value::Object(m) => m
            .iter()
            .map(|(k, v)| format!("{k}: {}", scalar(v)))
            .collect::<Vec<_>>()
            .join("\n"),
        other => scalar(other),
    }
}

fn scalar(v: &Value) -> String {
    match v {
        Value::String(s) => s.clone(),
        other => other.to_string(),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn plain_lines() {
        let v = serde_json::json!({"class": "good", "p": 7});
        assert_eq!(render(&v, None, false), "class: good\np: 7");
        assert_eq!(render(&v, None, true), r#"{"class":"good","p":7}"#);
    }
}
