//! Fewest crossing-decreasing inter-component Ω2 moves between two diagrams.
//!
//! States are diagrams up to rotation of base points and renumbering of
//! circles. Every enumerated move is an edge; negative Ω2 moves between
//! different circles cost 1 and all others cost 0, so the search is a 0-1
//! BFS. Only diagrams with at most `max_crossings` crossings are visited,
//! which makes "not found" an inconclusive answer rather than a proof of
//! unreachability.

use std::collections::{HashMap, VecDeque};

use serde::Serialize;

use crate::diagram::{canonical_form, EquivalenceMode, GaussDiagram};
use crate::moves::{apply, enumerate_sites, EnumerateOptions, MoveError, MoveSite, SiteAction};
use crate::par::{self, Execution};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum SearchStatus {
    Found,
    /// Every state within the crossing bound was visited without reaching
    /// the target.
    BoundExhausted,
    /// The state budget ran out first.
    BudgetExhausted,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct SearchResult {
    pub status: SearchStatus,
    pub reachable: bool,
    pub min_negative_omega2: Option<u64>,
    /// Moves taking the source to a diagram equivalent to the target.
    pub witness: Vec<MoveSite>,
    pub states_explored: usize,
    pub distinct_states: usize,
}

impl SearchResult {
    pub fn is_inconclusive(&self) -> bool {
        self.status != SearchStatus::Found
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct SearchLimits {
    pub max_crossings: usize,
    pub max_states: usize,
    pub exec: Execution,
}

impl SearchLimits {
    pub fn new(max_crossings: usize, max_states: usize) -> Self {
        SearchLimits {
            max_crossings,
            max_states,
            exec: Execution::default(),
        }
    }
}

pub fn edge_cost(site: &MoveSite) -> u64 {
    matches!(site.action, SiteAction::RemoveBigon { .. } if site.is_inter_component_omega2()) as u64
}

struct Node {
    /// Diagram actually reached along the parent chain.
    diagram: GaussDiagram,
    parent: Option<(usize, MoveSite)>,
    dist: u64,
    done: bool,
}

fn key(g: &GaussDiagram) -> GaussDiagram {
    canonical_form(g, EquivalenceMode::RotateAndPermute)
}

pub fn min_negative_omega2(
    source: &GaussDiagram,
    target: &GaussDiagram,
    limits: SearchLimits,
) -> SearchResult {
    let goal = key(target);
    let opts = EnumerateOptions::all(Some(limits.max_crossings));
    let mut index: HashMap<GaussDiagram, usize> = HashMap::new();
    let mut nodes = vec![Node {
        diagram: source.clone(),
        parent: None,
        dist: 0,
        done: false,
    }];
    index.insert(key(source), 0);
    let mut queue = VecDeque::from([0usize]);
    let mut explored = 0;
    let finish = |status, nodes: &[Node], explored, distinct, hit: Option<usize>| {
        let witness = hit.map(|i| path_to(nodes, i)).unwrap_or_default();
        SearchResult {
            status,
            reachable: hit.is_some(),
            min_negative_omega2: hit.map(|i| nodes[i].dist),
            witness,
            states_explored: explored,
            distinct_states: distinct,
        }
    };
    if source.crossing_count() > limits.max_crossings
        || target.crossing_count() > limits.max_crossings
    {
        return finish(SearchStatus::BoundExhausted, &nodes, 0, 1, None);
    }
    while let Some(u) = queue.pop_front() {
        if nodes[u].done {
            continue;
        }
        nodes[u].done = true;
        if index.get(&goal) == Some(&u) {
            return finish(SearchStatus::Found, &nodes, explored, index.len(), Some(u));
        }
        if explored >= limits.max_states {
            return finish(
                SearchStatus::BudgetExhausted,
                &nodes,
                explored,
                index.len(),
                None,
            );
        }
        explored += 1;
        let g = nodes[u].diagram.clone();
        let sites = enumerate_sites(&g, &opts);
        let next = par::map_vec(limits.exec, &sites, |s| {
            let h = apply(&g, s).expect("enumerated site applies");
            let k = key(&h);
            (h, k)
        });
        for (site, (h, k)) in sites.into_iter().zip(next) {
            let d = nodes[u].dist + edge_cost(&site);
            let v = match index.get(&k) {
                Some(&v) => {
                    if nodes[v].done || nodes[v].dist <= d {
                        continue;
                    }
                    v
                }
                None => {
                    nodes.push(Node {
                        diagram: h.clone(),
                        parent: None,
                        dist: d,
                        done: false,
                    });
                    index.insert(k, nodes.len() - 1);
                    nodes.len() - 1
                }
            };
            nodes[v].diagram = h;
            nodes[v].parent = Some((u, site));
            nodes[v].dist = d;
            if d == nodes[u].dist {
                queue.push_front(v);
            } else {
                queue.push_back(v);
            }
        }
    }
    finish(
        SearchStatus::BoundExhausted,
        &nodes,
        explored,
        index.len(),
        None,
    )
}

fn path_to(nodes: &[Node], mut i: usize) -> Vec<MoveSite> {
    let mut out = Vec::new();
    while let Some((p, site)) = nodes[i].parent {
        out.push(site);
        i = p;
    }
    out.reverse();
    out
}

/// Applies a witness to `source`.
pub fn replay(source: &GaussDiagram, witness: &[MoveSite]) -> Result<GaussDiagram, MoveError> {
    witness.iter().try_fold(source.clone(), |g, s| apply(&g, s))
}
