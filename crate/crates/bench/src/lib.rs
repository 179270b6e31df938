//! Synthetic workloads for the benchmarks.

use hedgeql_core::fixtures::rectangle_schema;
use hedgeql_core::{AttrValue, Dataset, FuzzyObject, LinguisticValue, Polarity};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

pub const QUERY_1: &str =
    r#"select * from Rectangular where length = "little long" or width = "little short""#;
pub const QUERY_2: &str = r#"select * from Rectangular where area() = "less small""#;

/// `n` rectangles over the bundled schema. Each value is a crisp number in
/// `[0, 100]` or a term of length 1 to 3, with equal odds.
pub fn rectangles(n: usize, seed: u64) -> Dataset {
    let schema = rectangle_schema();
    let alg = schema.attributes[0].algebra.clone();
    let mut terms = Vec::new();
    for side in [Polarity::Negative, Polarity::Positive] {
        for k in 1..=3 {
            terms.extend(alg.terms_of_length(side, k));
        }
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let objects = (0..n)
        .map(|i| FuzzyObject {
            id: format!("r{i}"),
            values: (0..schema.attributes.len())
                .map(|_| {
                    if rng.random_bool(0.5) {
                        AttrValue::Crisp(rng.random_range(0.0..=100.0))
                    } else {
                        let t = terms[rng.random_range(0..terms.len())].clone();
                        AttrValue::Linguistic(LinguisticValue::Term(t))
                    }
                })
                .collect(),
        })
        .collect();
    Dataset::new(schema, objects).expect("generated values are in range")
}
