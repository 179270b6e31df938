//! The six-rectangle example dataset and its schema.

use std::collections::BTreeMap;

use crate::algebra::{HedgeAlgebraConfig, HedgeSpec};
use crate::schema::{load_dataset, load_schema, Dataset, FuzzyClassSchema};

pub const RECTANGLE_SCHEMA_JSON: &str = include_str!("../fixtures/rectangle_schema.json");
pub const RECTANGLE_DATA_JSON: &str = include_str!("../fixtures/rectangle_data.json");

/// short/long with hedges More < Very and Possibly < Little.
pub fn rectangle_algebra_config() -> HedgeAlgebraConfig {
    HedgeAlgebraConfig {
        negative_generator: "short".into(),
        positive_generator: "long".into(),
        fm_neg: 0.6,
        fm_pos: 0.4,
        positive_hedges: vec![HedgeSpec::new("More", 0.25), HedgeSpec::new("Very", 0.35)],
        negative_hedges: vec![
            HedgeSpec::new("Possibly", 0.2),
            HedgeSpec::new("Little", 0.2),
        ],
        synonyms: BTreeMap::from([("less small".to_string(), "Little short".to_string())]),
    }
}

pub fn rectangle_schema() -> FuzzyClassSchema {
    load_schema(RECTANGLE_SCHEMA_JSON.as_bytes()).expect("bundled schema is valid")
}

pub fn rectangle_dataset() -> Dataset {
    load_dataset(RECTANGLE_DATA_JSON.as_bytes(), &rectangle_schema())
        .expect("bundled dataset is valid")
}
