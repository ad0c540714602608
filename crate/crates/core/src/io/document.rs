//! Broadcast document format.
//!
//! A document is one JSON object on a single line, keys in fixed order:
//!
//! ```text
//! {"m":5,"n":1,"t":4,"r":2,"final":true,"towers":[[2,0]],"anchor":[2,0],"raw_count":1,"generator":"path","version":"0.1.0"}
//! ```
//!
//! Towers are sorted lexicographically. Metadata keys after `towers` are
//! optional and omitted when absent.

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::grid::{BroadcastParams, Coord, GridDims, TowerSet};

#[derive(Debug, Error)]
pub enum DocumentError {
    #[error("malformed document: {0}")]
    Syntax(#[from] serde_json::Error),
    #[error("invalid document: {0}")]
    Invalid(String),
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct BroadcastDocument {
    pub m: usize,
    pub n: usize,
    pub t: u32,
    pub r: u32,
    /// A final document claims to be a broadcast on the grid, so every tower
    /// must lie inside it.
    #[serde(rename = "final")]
    pub is_final: bool,
    pub towers: Vec<[i64; 2]>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub anchor: Option<[i64; 2]>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub raw_count: Option<usize>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub generator: Option<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub version: Option<String>,
}

impl BroadcastDocument {
    pub fn new(dims: GridDims, params: BroadcastParams, towers: &TowerSet, is_final: bool) -> Self {
        BroadcastDocument {
            m: dims.m(),
            n: dims.n(),
            t: params.t(),
            r: params.r(),
            is_final,
            towers: towers.iter().map(|c| [c.x, c.y]).collect(),
            anchor: None,
            raw_count: None,
            generator: None,
            version: None,
        }
    }

    pub fn with_generator(mut self, name: &str) -> Self {
        self.generator = Some(name.to_owned());
        self.version = Some(env!("CARGO_PKG_VERSION").to_owned());
        self
    }

    pub fn dims(&self) -> Result<GridDims, DocumentError> {
        GridDims::new(self.m, self.n).map_err(|e| DocumentError::Invalid(e.to_string()))
    }

    pub fn params(&self) -> Result<BroadcastParams, DocumentError> {
        BroadcastParams::new(self.t, self.r).map_err(|e| DocumentError::Invalid(e.to_string()))
    }

    pub fn tower_set(&self) -> TowerSet {
        self.towers.iter().map(|&[x, y]| Coord::new(x, y)).collect()
    }

    /// Checks the field invariants a parsed document must satisfy.
    pub fn validate(&self) -> Result<(), DocumentError> {
        let dims = self.dims()?;
        self.params()?;
        if self.towers.windows(2).any(|w| w[0] >= w[1]) {
            return Err(DocumentError::Invalid(
                "towers must be distinct and sorted lexicographically".into(),
            ));
        }
        if self.is_final {
            if let Some(&[x, y]) = self.towers.iter().find(|&&[x, y]| !dims.contains(Coord::new(x, y))) {
                return Err(DocumentError::Invalid(format!(
                    "final document has tower ({x},{y}) outside the {dims} grid"
                )));
            }
        }
        Ok(())
    }

    /// Single-line JSON followed by a newline.
    pub fn to_text(&self) -> String {
        let mut text = serde_json::to_string(self).expect("document serializes");
        text.push('\n');
        text
    }

    pub fn parse(text: &str) -> Result<Self, DocumentError> {
        let doc: BroadcastDocument = serde_json::from_str(text)?;
        doc.validate()?;
        Ok(doc)
    }
}

#[cfg(test)]
mod tests {
    use proptest::prelude::*;

    use super::*;

    fn centered_path() -> BroadcastDocument {
        let towers: TowerSet = [Coord::new(2, 0)].into_iter().collect();
        BroadcastDocument::new(
            GridDims::new(5, 1).unwrap(),
            BroadcastParams::new(4, 2).unwrap(),
            &towers,
            true,
        )
    }

    #[test]
    fn golden_text() {
        let mut doc = centered_path();
        assert_eq!(doc.to_text(), "{\"m\":5,\"n\":1,\"t\":4,\"r\":2,\"final\":true,\"towers\":[[2,0]]}\n");
        doc.anchor = Some([2, 0]);
        doc.raw_count = Some(1);
        doc.generator = Some("path".into());
        assert_eq!(
            doc.to_text(),
            "{\"m\":5,\"n\":1,\"t\":4,\"r\":2,\"final\":true,\"towers\":[[2,0]],\
             \"anchor\":[2,0],\"raw_count\":1,\"generator\":\"path\"}\n"
        );
    }

    #[test]
    fn rejects_bad_documents() {
        let text = centered_path().to_text();
        assert!(matches!(BroadcastDocument::parse(&text[..text.len() / 2]), Err(DocumentError::Syntax(_))));
        let cases = [
            r#"{"m":0,"n":1,"t":4,"r":2,"final":true,"towers":[]}"#,
            r#"{"m":5,"n":1,"t":0,"r":2,"final":true,"towers":[]}"#,
            r#"{"m":5,"n":1,"t":4,"r":2,"final":true,"towers":[[2,0],[1,0]]}"#,
            r#"{"m":5,"n":1,"t":4,"r":2,"final":true,"towers":[[2,0],[2,0]]}"#,
            r#"{"m":5,"n":1,"t":4,"r":2,"final":true,"towers":[[5,0]]}"#,
            r#"{"m":5,"n":1,"t":4,"r":2,"final":true,"towers":[],"colour":"red"}"#,
            r#"{"m":5,"n":1,"t":4,"r":2,"towers":[]}"#,
        ];
        for case in cases {
            assert!(BroadcastDocument::parse(case).is_err(), "{case}");
        }
        let draft = r#"{"m":5,"n":1,"t":4,"r":2,"final":false,"towers":[[-1,0]]}"#;
        assert!(BroadcastDocument::parse(draft).is_ok());
    }

    prop_compose! {
        fn documents()(
            m in 1usize..30, n in 1usize..30, t in 1u32..10, r in 1u32..5,
            raw in prop::collection::vec((0i64..30, 0i64..30), 0..20),
            anchor in prop::option::of((-5i64..5, -5i64..5)),
            raw_count in prop::option::of(0usize..50),
            generator in prop::option::of("[a-z\\- ]{0,12}"),
        ) -> BroadcastDocument {
            let towers: TowerSet = raw
                .into_iter()
                .map(|(x, y)| Coord::new(x % m as i64, y % n as i64))
                .collect();
            let mut doc = BroadcastDocument::new(
                GridDims::new(m, n).unwrap(),
                BroadcastParams::new(t, r).unwrap(),
                &towers,
                true,
            );
            doc.anchor = anchor.map(|(x, y)| [x, y]);
            doc.raw_count = raw_count;
            doc.generator = generator;
            doc
        }
    }

    proptest! {
        #[test]
        fn round_trip(doc in documents()) {
            let text = doc.to_text();
            prop_assert_eq!(text.matches('\n').count(), 1);
            prop_assert_eq!(BroadcastDocument::parse(&text).unwrap(), doc);
        }
    }
}
