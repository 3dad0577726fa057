//! Annotated resources and the extensional statistics derived from them.

use std::collections::{BTreeMap, HashMap};
use std::path::Path;
use std::sync::Arc;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::taxonomy::{Concept, Taxonomy};

/// Non-empty set of distinct concepts describing one resource. Order carries
/// no meaning but is preserved as given.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct AnnotationVector(Vec<Concept>);

fn first_duplicate(concepts: &[Concept]) -> Option<Concept> {
    concepts
        .iter()
        .enumerate()
        .find(|(i, c)| concepts[..*i].contains(c))
        .map(|(_, &c)| c)
}

impl AnnotationVector {
    pub fn from_concepts(concepts: Vec<Concept>) -> Result<Self> {
        if concepts.is_empty() {
            return Err(Error::EmptyVector);
        }
        if let Some(c) = first_duplicate(&concepts) {
            return Err(Error::DuplicateAnnotation {
                resource: String::new(),
                concept: format!("#{}", c.index()),
            });
        }
        Ok(AnnotationVector(concepts))
    }

    /// Resolves concept ids against `taxonomy`.
    pub fn from_ids<S: AsRef<str>>(taxonomy: &Taxonomy, ids: &[S]) -> Result<Self> {
        let concepts = ids
            .iter()
            .map(|id| taxonomy.resolve(id.as_ref()))
            .collect::<Result<Vec<_>>>()?;
        if let Some(c) = first_duplicate(&concepts) {
            return Err(Error::DuplicateAnnotation {
                resource: String::new(),
                concept: taxonomy.name(c).to_owned(),
            });
        }
        Self::from_concepts(concepts)
    }

    pub fn concepts(&self) -> &[Concept] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn contains(&self, c: Concept) -> bool {
        self.0.contains(&c)
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct Resource {
    pub id: String,
    pub annotations: AnnotationVector,
    pub meta: Option<BTreeMap<String, String>>,
}

/// On-disk record, one JSON object per line.
#[derive(Debug, Serialize, Deserialize)]
struct Record {
    id: String,
    annotations: Vec<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    meta: Option<BTreeMap<String, String>>,
}

#[derive(Debug, Clone)]
struct Stats {
    occurrences_plus: Vec<u64>,
    vectors_plus: Vec<u64>,
    total_occurrences: u64,
}

impl Stats {
    fn compute(taxonomy: &Taxonomy, resources: &[Resource]) -> Self {
        let n = taxonomy.len();
        let mut occurrences_plus = vec![0u64; n];
        let mut vectors_plus = vec![0u64; n];
        let mut total_occurrences = 0u64;
        // Last vector that touched each concept, so a vector counts once per ancestor.
        let mut stamp = vec![usize::MAX; n];
        for (v, r) in resources.iter().enumerate() {
            for &c in r.annotations.concepts() {
                occurrences_plus[c.index()] += 1;
                total_occurrences += 1;
                for a in taxonomy.ancestors_or_self(c) {
                    if stamp[a.index()] == v {
                        break;
                    }
                    stamp[a.index()] = v;
                    vectors_plus[a.index()] += 1;
                }
            }
        }
        // Children precede parents in reverse breadth-first order.
        for c in taxonomy.breadth_first().into_iter().rev() {
            if let Some(p) = taxonomy.parent(c) {
                occurrences_plus[p.index()] += occurrences_plus[c.index()];
            }
        }
        Stats {
            occurrences_plus,
            vectors_plus,
            total_occurrences,
        }
    }
}

/// A set of annotated resources bound to one taxonomy. Immutable; the
/// frequency statistics are computed once on construction.
#[derive(Debug, Clone)]
pub struct Corpus {
    taxonomy: Arc<Taxonomy>,
    resources: Vec<Resource>,
    index: HashMap<String, usize>,
    stats: Stats,
}

impl Corpus {
    pub fn new(taxonomy: Arc<Taxonomy>, resources: Vec<Resource>) -> Result<Self> {
        let mut index = HashMap::with_capacity(resources.len());
        for (i, r) in resources.iter().enumerate() {
            if index.insert(r.id.clone(), i).is_some() {
                return Err(Error::DuplicateResourceId(r.id.clone()));
            }
            if let Some(&c) = r
                .annotations
                .concepts()
                .iter()
                .find(|c| c.index() >= taxonomy.len())
            {
                return Err(Error::UnknownConcept {
                    concept: format!("#{}", c.index()),
                    resource: Some(r.id.clone()),
                });
            }
        }
        let stats = Stats::compute(&taxonomy, &resources);
        Ok(Corpus {
            taxonomy,
            resources,
            index,
            stats,
        })
    }

    pub fn parse_jsonl(text: &str, taxonomy: Arc<Taxonomy>) -> Result<Self> {
        let mut resources = Vec::new();
        for (lineno, line) in text.lines().enumerate() {
            if line.trim().is_empty() {
                continue;
            }
            let location = format!("line {}", lineno + 1);
            let record: Record =
                serde_json::from_str(line).map_err(|e| Error::parse(&location, e.to_string()))?;
            if record.annotations.is_empty() {
                return Err(Error::parse(
                    location,
                    format!("resource `{}` has no annotations", record.id),
                ));
            }
            let mut concepts = Vec::with_capacity(record.annotations.len());
            for id in &record.annotations {
                let c = taxonomy.get(id).ok_or_else(|| Error::UnknownConcept {
                    concept: id.clone(),
                    resource: Some(record.id.clone()),
                })?;
                if concepts.contains(&c) {
                    return Err(Error::DuplicateAnnotation {
                        resource: record.id.clone(),
                        concept: id.clone(),
                    });
                }
                concepts.push(c);
            }
            resources.push(Resource {
                id: record.id,
                annotations: AnnotationVector(concepts),
                meta: record.meta,
            });
        }
        if resources.is_empty() {
            return Err(Error::parse("corpus", "empty corpus"));
        }
        Self::new(taxonomy, resources)
    }

    pub fn load(path: impl AsRef<Path>, taxonomy: Arc<Taxonomy>) -> Result<Self> {
        let path = path.as_ref();
        let text = std::fs::read_to_string(path).map_err(|e| Error::io(path, e))?;
        Self::parse_jsonl(&text, taxonomy).map_err(|e| match e {
            Error::Parse { location, message } => Error::Parse {
                location: format!("{}:{location}", path.display()),
                message,
            },
            other => other,
        })
    }

    /// Canonical JSON-lines form: records sorted by id, annotation ids sorted.
    pub fn to_jsonl(&self) -> String {
        let mut records: Vec<Record> = self
            .resources
            .iter()
            .map(|r| {
                let mut annotations: Vec<String> = r
                    .annotations
                    .concepts()
                    .iter()
                    .map(|&c| self.taxonomy.name(c).to_owned())
                    .collect();
                annotations.sort_unstable();
                Record {
                    id: r.id.clone(),
                    annotations,
                    meta: r.meta.clone(),
                }
            })
            .collect();
        records.sort_by(|a, b| a.id.cmp(&b.id));
        let mut out = String::new();
        for r in &records {
            out.push_str(&serde_json::to_string(r).expect("records serialize"));
            out.push('\n');
        }
        out
    }

    pub fn taxonomy(&self) -> &Arc<Taxonomy> {
        &self.taxonomy
    }

    pub fn resources(&self) -> &[Resource] {
        &self.resources
    }

    pub fn len(&self) -> usize {
        self.resources.len()
    }

    pub fn is_empty(&self) -> bool {
        self.resources.is_empty()
    }

    pub fn position(&self, id: &str) -> Result<usize> {
        self.index
            .get(id)
            .copied()
            .ok_or_else(|| Error::UnknownResource(id.to_owned()))
    }

    pub fn resource(&self, id: &str) -> Result<&Resource> {
        Ok(&self.resources[self.position(id)?])
    }

    /// Total concept occurrences over all annotation vectors (N).
    pub fn total_occurrences(&self) -> u64 {
        self.stats.total_occurrences
    }

    /// n(c+): occurrences of `c` and of its descendants.
    pub fn occurrences_plus(&self, c: Concept) -> u64 {
        self.stats.occurrences_plus[c.index()]
    }

    /// |AV_c+|: number of vectors containing `c` or one of its descendants.
    pub fn vectors_containing_plus(&self, c: Concept) -> u64 {
        self.stats.vectors_plus[c.index()]
    }

    pub fn occurrences_plus_by_id(&self, id: &str) -> Result<u64> {
        Ok(self.occurrences_plus(self.taxonomy.resolve(id)?))
    }

    pub fn vectors_containing_plus_by_id(&self, id: &str) -> Result<u64> {
        Ok(self.vectors_containing_plus(self.taxonomy.resolve(id)?))
    }
}
