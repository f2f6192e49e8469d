use std::fs;
use std::path::Path;

use serde::de::DeserializeOwned;
use serde::Serialize;
use serde_json::Value;

use crate::{CliResult, Common, Failure};
use poset_lab::{Pairing, SCHEMA_VERSION};

/// Wrapper written around every output document.
#[derive(Serialize)]
pub struct Envelope<'a, C: Serialize, T: Serialize> {
    pub schema_version: u32,
    pub command: &'static str,
    pub config: &'a C,
    pub seed: u64,
    pub pairing: &'static str,
    pub data: T,
}

pub fn envelope<'a, C: Serialize, T: Serialize>(command: &'static str, config: &'a C, seed: u64, data: T) -> Envelope<'a, C, T> {
    Envelope { schema_version: SCHEMA_VERSION, command, config, seed, pairing: Pairing::Cantor.name(), data }
}

pub fn to_json<T: Serialize>(value: &T) -> String {
    let mut s = serde_json::to_string_pretty(value).expect("serializable output");
    s.push('\n');
    s
}

/// Reads a JSON file holding either an envelope (its `data` is taken) or the
/// bare document.
pub fn read_document<T: DeserializeOwned>(path: &Path) -> CliResult<T> {
    let text = fs::read_to_string(path).map_err(|e| Failure::Input(format!("{}: {e}", path.display())))?;
    let mut value: Value =
        serde_json::from_str(&text).map_err(|e| Failure::Input(format!("{}: {e}", path.display())))?;
    if value.get("schema_version").is_some() {
        if let Some(data) = value.get_mut("data") {
            value = data.take();
        }
    }
    serde_json::from_value(value).map_err(|e| Failure::Input(format!("{}: {e}", path.display())))
}

/// Collects named output files, then writes them to `--out` or prints the
/// primary one.
pub struct Outputs {
    files: Vec<(String, String)>,
    primary: usize,
}

impl Outputs {
    pub fn new() -> Self {
        Outputs { files: Vec::new(), primary: 0 }
    }

    pub fn add(&mut self, name: impl Into<String>, contents: String) {
        self.files.push((name.into(), contents));
    }

    pub fn add_primary(&mut self, name: impl Into<String>, contents: String) {
        self.primary = self.files.len();
        self.add(name, contents);
    }

    pub fn write(self, common: &Common) -> CliResult<()> {
        match &common.out {
            Some(dir) => {
                fs::create_dir_all(dir).map_err(|e| Failure::Input(format!("{}: {e}", dir.display())))?;
                for (name, contents) in &self.files {
                    let path = dir.join(name);
                    fs::write(&path, contents).map_err(|e| Failure::Input(format!("{}: {e}", path.display())))?;
                }
            }
            None => {
                if let Some((_, contents)) = self.files.get(self.primary) {
                    print!("{contents}");
                }
            }
        }
        Ok(())
    }
}
