// Copyright 2026 The qdm Developers
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//    http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

//! Plain-text rendering of an output document.

use serde_json::Value;

/// One `path: value` line per scalar leaf; short numeric arrays (complex
/// numbers, vectors) stay on one line.
pub fn table(doc: &Value) -> String {
    let mut lines = Vec::new();
    walk(doc, String::new(), &mut lines);
    lines.join("\n")
}

fn is_flat_numbers(items: &[Value]) -> bool {
    items.len() <= 4 && items.iter().all(Value::is_number)
}

fn walk(value: &Value, path: String, lines: &mut Vec<String>) {
    match value {
        Value::Object(map) => {
            for (key, v) in map {
                let child = if path.is_empty() {
                    key.clone()
                } else {
                    format!("{path}.{key}")
                };
                walk(v, child, lines);
            }
        }
        Value::Array(items) if !is_flat_numbers(items) => {
            for (k, v) in items.iter().enumerate() {
                walk(v, format!("{path}[{k}]"), lines);
            }
        }
        leaf => lines.push(format!("{path}: {leaf}")),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use serde_json::json;

    #[test]
    fn flattens_nested_documents() {
        let doc = json!({"a": {"b": 1, "c": [[0.5, 0.0], [1.0, -1.0]]}, "d": [1, 2, 3, 4, 5]});
        let text = table(&doc);
        assert_eq!(
            text,
            "a.b: 1\na.c[0]: [0.5,0.0]\na.c[1]: [1.0,-1.0]\nd[0]: 1\nd[1]: 2\nd[2]: 3\nd[3]: 4\nd[4]: 5"
        );
    }
}
