//! The toy ontology and four-resource dataset used throughout the docs and tests.
//!
//! ```text
//! Person
//! ├── Worker
//! │   ├── Employee
//! │   └── Freelance
//! └── Student
//! ```
//!
//! | resource | annotations           |
//! |----------|-----------------------|
//! | r1       | Worker, Student       |
//! | r2       | Employee              |
//! | r3       | Student               |
//! | r4       | Employee, Freelance   |

use std::sync::Arc;

use crate::corpus::Corpus;
use crate::taxonomy::Taxonomy;

pub const PERSON_TAXONOMY: &str =
    "Person\t-\nWorker\tPerson\nStudent\tPerson\nEmployee\tWorker\nFreelance\tWorker\n";

pub const RUNNING_EXAMPLE_CORPUS: &str = r#"{"id": "r1", "annotations": ["Worker", "Student"]}
{"id": "r2", "annotations": ["Employee"]}
{"id": "r3", "annotations": ["Student"]}
{"id": "r4", "annotations": ["Employee", "Freelance"]}
"#;

pub fn person_taxonomy() -> Arc<Taxonomy> {
    Arc::new(Taxonomy::parse_edge_list(PERSON_TAXONOMY).expect("fixture taxonomy is valid"))
}

pub fn running_example() -> (Arc<Taxonomy>, Corpus) {
    let t = person_taxonomy();
    let corpus =
        Corpus::parse_jsonl(RUNNING_EXAMPLE_CORPUS, t.clone()).expect("fixture corpus is valid");
    (t, corpus)
}
