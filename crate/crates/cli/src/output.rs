use serde_json::{json, Map, Value};

use casimir_core::octonions::MultiplicationTable;

/// Header embedded in every JSON document the tool prints. It holds no
/// timing, so repeated runs print identical bytes.
pub fn manifest(command: &[String], seed: u64) -> Value {
    json!({
        "tool": "casimir",
        "version": env!("CARGO_PKG_VERSION"),
        "command": command.join(" "),
        "seed": seed,
        "octonion_fingerprint": MultiplicationTable::get().fingerprint(),
    })
}

pub fn document(manifest: Value, result: Value) -> Value {
    let mut doc = Map::new();
    doc.insert("manifest".into(), manifest);
    doc.insert("result".into(), result);
    Value::Object(doc)
}
