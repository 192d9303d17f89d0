//! Graph sources: generator specs like `path:6` or `cartesian:path:2,path:3`,
//! or a path to an edge-list file.

use anyhow::{bail, Context, Result};
use markovpst::{Graph, ProductKind};

/// Resolves a graph source: a recognized generator spec is built directly
/// (products may come out disconnected; the walk rejects them later), any
/// other string is read as an edge-list file, which must be connected.
pub fn graph_from_source(source: &str) -> Result<Graph> {
    if let Some(g) = try_generator_spec(source)? {
        return Ok(g);
    }
    let text = std::fs::read_to_string(source)
        .with_context(|| format!("reading edge-list file '{source}'"))?;
    Graph::parse_edge_list(&text).with_context(|| format!("parsing edge-list file '{source}'"))
}

/// Parses a generator spec, returning `Ok(None)` for strings that do not
/// start with a known generator name (treated as file paths by the caller).
pub fn try_generator_spec(spec: &str) -> Result<Option<Graph>> {
    let Some((head, rest)) = spec.split_once(':') else {
        return Ok(None);
    };
    let kind = match head {
        "cartesian" => Some(ProductKind::Cartesian),
        "tensor" => Some(ProductKind::Tensor),
        _ => None,
    };
    if let Some(kind) = kind {
        let Some((left, right)) = rest.split_once(',') else {
            bail!("product spec '{spec}' needs two comma-separated factors, e.g. {head}:path:2,path:3");
        };
        let g1 = simple_generator(left)?;
        let g2 = simple_generator(right)?;
        return Ok(Some(Graph::product(&g1, &g2, kind)));
    }
    if matches!(head, "path" | "cycle" | "hypercube" | "star") {
        return simple_generator(spec).map(Some);
    }
    Ok(None)
}

fn simple_generator(spec: &str) -> Result<Graph> {
    let (head, rest) = spec
        .split_once(':')
        .with_context(|| format!("generator spec '{spec}' is missing its size, e.g. path:6"))?;
    let count: usize =
        rest.parse().with_context(|| format!("generator spec '{spec}' has a bad size '{rest}'"))?;
    let g = match head {
        "path" => Graph::path(count),
        "cycle" => Graph::cycle(count),
        "hypercube" => Graph::hypercube(count),
        "star" => Graph::star(count),
        other => bail!("unknown generator '{other}' in '{spec}' (product factors must be simple generators)"),
    };
    g.with_context(|| format!("building '{spec}'"))
}
