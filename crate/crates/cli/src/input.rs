use std::fs;
use std::path::Path;

use anyhow::{anyhow, bail, Context, Result};
use serde::de::DeserializeOwned;
use serde_json::Value;
use vcs_core::construct::builtin;
use vcs_core::{AccessStructure, Graph, Scheme, Subset};

pub fn read_json<T: DeserializeOwned>(path: &Path) -> Result<T> {
    let text = fs::read_to_string(path).with_context(|| format!("reading {}", path.display()))?;
    serde_json::from_str(&text).with_context(|| format!("parsing {}", path.display()))
}

/// An access-structure file, or a graph file read as its graph structure.
pub fn structure(path: &Path) -> Result<AccessStructure> {
    let value: Value = read_json(path)?;
    if value.get("minimal_qualified").is_some() {
        return serde_json::from_value(value).with_context(|| format!("parsing {}", path.display()));
    }
    if value.get("edges").is_some() {
        let g: Graph = serde_json::from_value(value).with_context(|| format!("parsing {}", path.display()))?;
        return Ok(AccessStructure::from_graph(&g)?);
    }
    bail!("{}: expected \"minimal_qualified\" or \"edges\"", path.display())
}

/// A graph file, or an access-structure file whose minimal sets are all pairs.
pub fn graph(path: &Path) -> Result<Graph> {
    let value: Value = read_json(path)?;
    if value.get("edges").is_some() {
        return serde_json::from_value(value).with_context(|| format!("parsing {}", path.display()));
    }
    let gamma = structure(path)?;
    gamma
        .to_graph()
        .ok_or_else(|| anyhow!("{}: access structure is not graph-based", path.display()))
}

/// `builtin:NAME` or a scheme file.
pub fn scheme(arg: &str) -> Result<Scheme> {
    match arg.strip_prefix("builtin:") {
        Some(name) => Ok(Scheme::Basis(builtin(name)?)),
        None => read_json(Path::new(arg)),
    }
}

/// A JSON list of participant lists, e.g. `[[1],[3]]`.
pub fn subsets(text: &str) -> Result<Vec<Subset>> {
    serde_json::from_str(text).with_context(|| format!("expected a list of participant lists, got {text}"))
}

/// A JSON participant list, e.g. `[1,2]`.
pub fn subset(text: &str) -> Result<Subset> {
    serde_json::from_str(text).with_context(|| format!("expected a participant list, got {text}"))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn temp(text: &str) -> tempfile::NamedTempFile {
        let f = tempfile::NamedTempFile::new().unwrap();
        fs::write(f.path(), text).unwrap();
        f
    }

    #[test]
    fn structure_accepts_both_formats() {
        let a = temp(r#"{"n": 3, "minimal_qualified": [[1,2],[2,3]]}"#);
        let g = temp(r#"{"vertices": 3, "edges": [[1,2],[2,3]]}"#);
        assert_eq!(structure(a.path()).unwrap(), structure(g.path()).unwrap());
        assert_eq!(graph(a.path()).unwrap(), graph(g.path()).unwrap());
        assert!(structure(temp(r#"{"n": 3}"#).path()).is_err());
    }

    #[test]
    fn non_graph_structure_is_not_a_graph() {
        let a = temp(r#"{"n": 3, "minimal_qualified": [[1,2,3]]}"#);
        assert!(graph(a.path()).is_err());
    }

    #[test]
    fn builtin_prefix_and_set_lists() {
        assert_eq!(scheme("builtin:P4-VCS2").unwrap().m(), 3);
        assert!(scheme("builtin:nope").is_err());
        assert_eq!(subsets("[[1],[3]]").unwrap().len(), 2);
        assert!(subsets("[[0]]").is_err());
        assert_eq!(subset("[2,3]").unwrap().to_vec(), vec![2, 3]);
    }
}
