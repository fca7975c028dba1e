//! Hamiltonian-path search on the sector graph, guided by Warnsdorff's rule.
//!
//! Vertices are the sector ditstrings; two are adjacent when their Manhattan
//! distance is exactly 2. From the current vertex the search tries unvisited
//! neighbours in order of increasing unvisited degree, ties broken by the
//! [`Ditstring`] ordering, and backtracks on dead ends.

use std::collections::HashMap;

use super::{dimension, enumerate_sector, CompositionSpec, Ditstring, GrayCode};
use crate::error::{Error, Result};
use crate::limits::Limits;

struct SectorGraph {
    vertices: Vec<Ditstring>,
    // neighbour lists hold vertex indices in ascending order
    adjacency: Vec<Vec<usize>>,
}

impl SectorGraph {
    fn build(spec: &CompositionSpec) -> Self {
        let vertices = enumerate_sector(spec);
        let lookup: HashMap<&Ditstring, usize> = vertices.iter().enumerate().map(|(i, m)| (m, i)).collect();
        let two_s = spec.two_s() as u8;
        let adjacency = vertices
            .iter()
            .map(|m| {
                let mut out = Vec::new();
                let mut digits = m.digits().to_vec();
                for i in 0..digits.len() {
                    if digits[i] == two_s {
                        continue;
                    }
                    for j in 0..digits.len() {
                        if j == i || digits[j] == 0 {
                            continue;
                        }
                        digits[i] += 1;
                        digits[j] -= 1;
                        let probe = Ditstring::new(digits.clone());
                        out.push(lookup[&probe]);
                        digits[i] -= 1;
                        digits[j] += 1;
                    }
                }
                out.sort_unstable();
                out
            })
            .collect();
        SectorGraph { vertices, adjacency }
    }
}

/// Warnsdorff search from the lexicographically largest ditstring (or `start`),
/// under the default [`Limits`].
pub fn warnsdorff_gray_code(spec: &CompositionSpec, start: Option<&Ditstring>) -> Result<GrayCode> {
    warnsdorff_gray_code_with(spec, start, &Limits::default())
}

pub fn warnsdorff_gray_code_with(
    spec: &CompositionSpec,
    start: Option<&Ditstring>,
    limits: &Limits,
) -> Result<GrayCode> {
    spec.require_nonempty()?;
    let dim = dimension(spec);
    if dim > limits.max_dim {
        return Err(Error::DimensionCap { dim, cap: limits.max_dim });
    }
    let graph = SectorGraph::build(spec);
    let total = graph.vertices.len();
    let origin = match start {
        Some(m) => graph.vertices.binary_search(m).map_err(|_| Error::NotInSector(m.render(spec.two_s())))?,
        None => total - 1,
    };

    let mut visited = vec![false; total];
    let mut free_degree: Vec<usize> = graph.adjacency.iter().map(Vec::len).collect();
    let visit = |v: usize, visited: &mut Vec<bool>, free_degree: &mut Vec<usize>| {
        visited[v] = true;
        for &w in &graph.adjacency[v] {
            free_degree[w] -= 1;
        }
    };
    let unvisit = |v: usize, visited: &mut Vec<bool>, free_degree: &mut Vec<usize>| {
        visited[v] = false;
        for &w in &graph.adjacency[v] {
            free_degree[w] += 1;
        }
    };
    let candidates = |v: usize, visited: &[bool], free_degree: &[usize]| -> Vec<usize> {
        let mut c: Vec<usize> = graph.adjacency[v].iter().copied().filter(|&w| !visited[w]).collect();
        // stable sort keeps ascending vertex order among equal degrees;
        // reversed so the preferred candidate is popped first
        c.sort_by_key(|&w| free_degree[w]);
        c.reverse();
        c
    };

    let mut path = vec![origin];
    visit(origin, &mut visited, &mut free_degree);
    let mut frontier = vec![candidates(origin, &visited, &free_degree)];
    let mut steps: u64 = 0;

    while path.len() < total {
        steps += 1;
        if steps > limits.max_search_steps {
            return Err(Error::SearchFailure(format!(
                "gave up after {} expansions on {spec}",
                limits.max_search_steps
            )));
        }
        let options = frontier.last_mut().expect("frontier tracks the path");
        match options.pop() {
            Some(next) => {
                visit(next, &mut visited, &mut free_degree);
                path.push(next);
                let c = candidates(next, &visited, &free_degree);
                frontier.push(c);
            }
            None => {
                frontier.pop();
                let dead = path.pop().expect("path is non-empty");
                unvisit(dead, &mut visited, &mut free_degree);
                if path.is_empty() {
                    return Err(Error::SearchFailure(format!(
                        "no Hamiltonian path of {spec} starts at {}",
                        graph.vertices[origin].render(spec.two_s())
                    )));
                }
            }
        }
    }

    let entries = path.into_iter().map(|v| graph.vertices[v].clone()).collect();
    Ok(GrayCode::new(*spec, entries))
}
