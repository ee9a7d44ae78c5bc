//! Built-in rings, addressable as `corpus:<id>`.

use std::path::Path;
use std::sync::Arc;

use qdual_core::functor::injective_hull_e;
use qdual_core::module::{free_module, regular_module, simple_module};
use qdual_core::{Module, Ring};

use crate::format::{parse_module, parse_ring, FormatError, RingLookup};

const R1: &str = "\
[ring]
name = r1
p = 2
dim = 1
unit = 1
mul 0 0 = 1
";

const R2: &str = "\
[ring]
name = r2
p = 2
dim = 2
# basis 1, w with w^2 = w + 1
unit = 1 0
mul 0 0 = 1 0
mul 0 1 = 0 1
mul 1 1 = 1 1
";

const R3: &str = "\
[ring]
name = r3
p = 2
dim = 2
# basis 1, x
unit = 1 0
mul 0 0 = 1 0
mul 0 1 = 0 1
mul 1 1 = 0 0
";

const R4: &str = "\
[ring]
name = r4
p = 3
dim = 3
# basis 1, x, x^2
unit = 1 0 0
mul 0 0 = 1 0 0
mul 0 1 = 0 1 0
mul 0 2 = 0 0 1
mul 1 1 = 0 0 1
mul 1 2 = 0 0 0
mul 2 2 = 0 0 0
";

const R5: &str = "\
[ring]
name = r5
p = 2
dim = 3
# basis 1, x, y with x^2 = xy = y^2 = 0
unit = 1 0 0
mul 0 0 = 1 0 0
mul 0 1 = 0 1 0
mul 0 2 = 0 0 1
mul 1 1 = 0 0 0
mul 1 2 = 0 0 0
mul 2 2 = 0 0 0
";

const R6: &str = "\
[ring]
name = r6
p = 2
dim = 4
# basis 1, x, y, xy with x^2 = y^2 = 0
unit = 1 0 0 0
mul 0 0 = 1 0 0 0
mul 0 1 = 0 1 0 0
mul 0 2 = 0 0 1 0
mul 0 3 = 0 0 0 1
mul 1 1 = 0 0 0 0
mul 1 2 = 0 0 0 1
mul 1 3 = 0 0 0 0
mul 2 2 = 0 0 0 0
mul 2 3 = 0 0 0 0
mul 3 3 = 0 0 0 0
";

const R7: &str = "\
[ring]
name = r7
p = 2
dim = 2
# two orthogonal idempotents
unit = 1 1
mul 0 0 = 1 0
mul 0 1 = 0 0
mul 1 1 = 0 1
";

const ENTRIES: [(&str, &str, &str); 7] = [
    ("r1", "F_2", R1),
    ("r2", "F_4", R2),
    ("r3", "F_2[x]/(x^2)", R3),
    ("r4", "F_3[x]/(x^3)", R4),
    ("r5", "F_2[x,y]/(x^2,xy,y^2)", R5),
    ("r6", "F_2[x,y]/(x^2,y^2)", R6),
    ("r7", "F_2 x F_2", R7),
];

/// Ring file text of a built-in, including the invalid `r7`.
pub fn corpus_text(id: &str) -> Option<&'static str> {
    ENTRIES.iter().find(|e| e.0 == id).map(|e| e.2)
}

/// `(id, description)` for every built-in.
pub fn corpus_ids() -> impl Iterator<Item = (&'static str, &'static str)> {
    ENTRIES.iter().map(|e| (e.0, e.1))
}

/// The valid built-in rings `r1`..`r6`.
pub fn builtin_corpus() -> Vec<Arc<Ring>> {
    ENTRIES
        .iter()
        .filter_map(|e| parse_ring(e.2).ok())
        .map(Arc::new)
        .collect()
}

pub fn corpus_ring(id: &str) -> Result<Ring, FormatError> {
    let text = corpus_text(id).ok_or_else(|| FormatError::UnknownRing(format!("corpus:{id}")))?;
    parse_ring(text)
}

#[derive(Debug, thiserror::Error)]
pub enum LoadError {
    #[error("{path}: {source}")]
    Io {
        path: String,
        source: std::io::Error,
    },
    #[error("{path}: {source}")]
    Format { path: String, source: FormatError },
}

fn read(path: &str) -> Result<String, LoadError> {
    std::fs::read_to_string(Path::new(path)).map_err(|source| LoadError::Io {
        path: path.to_string(),
        source,
    })
}

/// A ring from `corpus:<id>` or a ring file.
pub fn load_ring(spec: &str) -> Result<Ring, LoadError> {
    let result = match spec.strip_prefix("corpus:") {
        Some(id) => corpus_ring(id),
        None => parse_ring(&read(spec)?),
    };
    result.map_err(|source| LoadError::Format {
        path: spec.to_string(),
        source,
    })
}

struct WithCorpus<'a>(&'a Arc<Ring>);

impl RingLookup for WithCorpus<'_> {
    fn lookup(&self, id: &str) -> Option<Arc<Ring>> {
        let bare = id.strip_prefix("corpus:").unwrap_or(id);
        if bare == self.0.name() {
            return Some(self.0.clone());
        }
        corpus_text(bare)
            .and_then(|t| parse_ring(t).ok())
            .map(Arc::new)
    }
}

/// A module given as `R`, `E`, `k`, `0`, `R^n`, or a module file over `ring`.
pub fn load_module(spec: &str, ring: &Arc<Ring>) -> Result<Module, LoadError> {
    match spec {
        "R" => return Ok(regular_module(ring)),
        "E" => return Ok(injective_hull_e(ring)),
        "k" => return Ok(simple_module(ring)),
        "0" => return Ok(Module::zero(ring)),
        _ => {}
    }
    if let Some(n) = spec
        .strip_prefix("R^")
        .and_then(|n| n.parse::<usize>().ok())
    {
        return Ok(free_module(ring, n));
    }
    let wrap = |source| LoadError::Format {
        path: spec.to_string(),
        source,
    };
    let m = parse_module(&read(spec)?, &WithCorpus(ring)).map_err(wrap)?;
    if m.ring().as_ref() != ring.as_ref() {
        return Err(wrap(FormatError::UnknownRing(format!(
            "module ring `{}` differs from `{}`",
            m.ring().name(),
            ring.name()
        ))));
    }
    Ok(m)
}
