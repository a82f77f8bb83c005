//! JSON report documents.
//!
//! A document is an envelope around a [`SearchReport`] or [`ClaimReport`].
//! Keys are emitted in struct order and parameter maps are sorted, so
//! identical inputs render to identical bytes. Timing and worker data live
//! in the optional `run` block, which reproducible output leaves out.

use std::fs;
use std::path::Path;

use serde::{Deserialize, Serialize};

use crate::search::{ClaimReport, SearchReport};
use crate::Result;

pub const SCHEMA_VERSION: &str = "1.0.0";

/// The published JSON schema for report documents.
pub const SCHEMA: &str = include_str!("../schema/report.schema.json");

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum Payload {
    Search(SearchReport),
    Claims(ClaimReport),
}

impl Payload {
    pub fn validate(&self) -> Result<()> {
        match self {
            Payload::Search(r) => r.validate(),
            Payload::Claims(r) => r.validate(),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct RunInfo {
    /// RFC 3339, UTC.
    pub timestamp: String,
    pub wall_time_seconds: f64,
    pub worker_count: usize,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct ReportDocument {
    pub schema_version: String,
    pub command: String,
    /// Invocation parameters that affect the payload.
    pub parameters: serde_json::Map<String, serde_json::Value>,
    pub payload: Payload,
    pub tool_version: String,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub run: Option<RunInfo>,
}

impl ReportDocument {
    pub fn new(command: &str, parameters: serde_json::Map<String, serde_json::Value>, payload: Payload) -> Self {
        ReportDocument {
            schema_version: SCHEMA_VERSION.into(),
            command: command.into(),
            parameters,
            payload,
            tool_version: env!("CARGO_PKG_VERSION").into(),
            run: None,
        }
    }

    /// Pretty JSON with a trailing newline, after validating the payload.
    pub fn render(&self) -> Result<String> {
        self.payload.validate()?;
        let mut s = serde_json::to_string_pretty(self)?;
        s.push('\n');
        Ok(s)
    }
}

pub fn write_report(doc: &ReportDocument, path: &Path) -> Result<()> {
    let text = doc.render()?;
    fs::write(path, text)?;
    Ok(())
}
