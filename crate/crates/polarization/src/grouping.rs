//! From individual members to a weighted society.
//!
//! A [`Chamber`] holds individually positioned members, each either
//! affiliated to a named union or independent. [`attach_independents`]
//! applies the nearest-neighborhood rule: an independent joins the union
//! that holds a quorum (default 2) among its nearest affiliated neighbors
//! (default 3, optionally restricted to a radius). [`aggregate`] then
//! collapses unions into society groups positioned at their members' mean
//! coordinates and weighted by seat share.
//!
//! Points the source procedure leaves open are resolved here as explicit
//! interpretations: the vicinity radius defaults to unbounded, neighbor
//! distances use the Euclidean metric unless configured otherwise,
//! distance ties break on ascending member id, and attachment runs as a
//! single pass against the original affiliations — it is not iterated to a
//! fixed point, so re-applying it may attach more members (never fewer).

use std::collections::{BTreeMap, HashSet};

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::metric::Metric;
use crate::society::{Group, Position, Society};

/// Label given to the residual cluster of unattached independents.
pub const INDEPENDENT_LABEL: &str = "Independent";

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub enum Affiliation {
    Union(String),
    Independent,
}

impl Affiliation {
    pub fn union(&self) -> Option<&str> {
        match self {
            Affiliation::Union(label) => Some(label),
            Affiliation::Independent => None,
        }
    }

    pub fn is_independent(&self) -> bool {
        matches!(self, Affiliation::Independent)
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Individual {
    pub id: String,
    pub position: Position,
    pub affiliation: Affiliation,
}

impl Individual {
    pub fn new(id: impl Into<String>, coords: Vec<f64>, affiliation: Affiliation) -> Self {
        Individual {
            id: id.into(),
            position: Position::new(coords),
            affiliation,
        }
    }
}

/// A validated roster of members: unique ids, positions of length `dim`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Chamber {
    dim: usize,
    members: Vec<Individual>,
}

impl Chamber {
    pub fn new(dim: usize, members: Vec<Individual>) -> Result<Self> {
        if dim == 0 {
            return Err(Error::InvalidChamber("dimensionality must be at least 1".into()));
        }
        if members.is_empty() {
            return Err(Error::InvalidChamber("chamber has no members".into()));
        }
        let mut seen = HashSet::new();
        for member in &members {
            if !seen.insert(member.id.as_str()) {
                return Err(Error::InvalidChamber(format!(
                    "duplicate member id '{}'",
                    member.id
                )));
            }
            if member.position.len() != dim {
                return Err(Error::InvalidChamber(format!(
                    "member '{}' has {} coordinates, expected {dim}",
                    member.id,
                    member.position.len()
                )));
            }
        }
        Ok(Chamber { dim, members })
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn members(&self) -> &[Individual] {
        &self.members
    }

    pub fn member(&self, id: &str) -> Option<&Individual> {
        self.members.iter().find(|m| m.id == id)
    }
}

/// Parameters of the nearest-neighborhood attachment rule.
#[derive(Debug, Clone, PartialEq)]
pub struct AttachmentConfig {
    pub neighbors: usize,
    pub quorum: usize,
    /// `None` means an unbounded vicinity.
    pub radius: Option<f64>,
    pub metric: Metric,
}

impl Default for AttachmentConfig {
    fn default() -> Self {
        AttachmentConfig {
            neighbors: 3,
            quorum: 2,
            radius: None,
            metric: Metric::Euclidean,
        }
    }
}

impl AttachmentConfig {
    pub fn new(
        neighbors: usize,
        quorum: usize,
        radius: Option<f64>,
        metric: Metric,
    ) -> Result<Self> {
        if neighbors == 0 {
            return Err(Error::InvalidParameter("neighbors must be at least 1".into()));
        }
        if quorum == 0 || quorum > neighbors {
            return Err(Error::InvalidParameter(format!(
                "quorum {quorum} must lie in 1..={neighbors}"
            )));
        }
        if let Some(r) = radius {
            if !(r > 0.0) {
                return Err(Error::InvalidParameter(format!(
                    "radius {r} must be positive"
                )));
            }
        }
        Ok(AttachmentConfig {
            neighbors,
            quorum,
            radius,
            metric,
        })
    }
}

/// Affiliated members nearest to `target_id`, as `(id, distance)` pairs.
///
/// At most `config.neighbors` candidates within `config.radius`, sorted by
/// distance with ties broken on ascending id. The target itself and
/// independents are never candidates.
pub fn nearest_neighbors(
    chamber: &Chamber,
    target_id: &str,
    config: &AttachmentConfig,
) -> Result<Vec<(String, f64)>> {
    let target = chamber
        .member(target_id)
        .ok_or_else(|| Error::UnknownMember(target_id.to_string()))?;
    let mut candidates: Vec<(&Individual, f64)> = chamber
        .members
        .iter()
        .filter(|m| m.id != target_id && !m.affiliation.is_independent())
        .map(|m| {
            let d = config
                .metric
                .eval(m.position.coords(), target.position.coords());
            (m, d)
        })
        .filter(|(_, d)| config.radius.is_none_or(|r| *d <= r))
        .collect();
    candidates.sort_by(|(a, da), (b, db)| da.total_cmp(db).then_with(|| a.id.cmp(&b.id)));
    candidates.truncate(config.neighbors);
    Ok(candidates
        .into_iter()
        .map(|(m, d)| (m.id.clone(), d))
        .collect())
}

/// Which union, if any, the target would be attached to.
fn quorum_union(chamber: &Chamber, target_id: &str, config: &AttachmentConfig) -> Option<String> {
    let neighbors = nearest_neighbors(chamber, target_id, config).ok()?;
    let mut counts: BTreeMap<&str, usize> = BTreeMap::new();
    for (id, _) in &neighbors {
        let union = chamber
            .member(id)
            .and_then(|m| m.affiliation.union())
            .expect("neighbors are affiliated members");
        *counts.entry(union).or_insert(0) += 1;
    }
    let mut winners = counts.iter().filter(|(_, &c)| c >= config.quorum);
    match (winners.next(), winners.next()) {
        // A quorum tie between two unions is treated as "no such union".
        (Some((union, _)), None) => Some((*union).to_string()),
        _ => None,
    }
}

/// One pass of the nearest-neighborhood rule over every independent.
///
/// Decisions are made against the original affiliations, so the order in
/// which independents are considered cannot matter and freshly attached
/// members do not recruit each other within the pass. Ids and positions
/// are preserved exactly.
pub fn attach_independents(chamber: &Chamber, config: &AttachmentConfig) -> Chamber {
    let members = chamber
        .members
        .iter()
        .map(|m| {
            if !m.affiliation.is_independent() {
                return m.clone();
            }
            match quorum_union(chamber, &m.id, config) {
                Some(union) => Individual {
                    id: m.id.clone(),
                    position: m.position.clone(),
                    affiliation: Affiliation::Union(union),
                },
                None => m.clone(),
            }
        })
        .collect();
    Chamber {
        dim: chamber.dim,
        members,
    }
}

/// Collapses the chamber into a society: one group per union, positioned
/// at the mean of its members' coordinates and weighted by seat share.
///
/// Remaining independents either form one extra group labeled
/// [`INDEPENDENT_LABEL`] (when `residual_cluster` is on) or make the call
/// fail. Groups are emitted in ascending label order, residual cluster
/// last, and members are averaged in id order, so the output does not
/// depend on roster order.
pub fn aggregate(chamber: &Chamber, residual_cluster: bool) -> Result<Society> {
    let mut unions: BTreeMap<&str, Vec<&Individual>> = BTreeMap::new();
    let mut independents: Vec<&Individual> = Vec::new();
    for m in &chamber.members {
        match &m.affiliation {
            Affiliation::Union(label) => unions.entry(label).or_default().push(m),
            Affiliation::Independent => independents.push(m),
        }
    }
    if !independents.is_empty() && !residual_cluster {
        return Err(Error::IndependentsRemain(independents.len()));
    }
    let total = chamber.members.len() as f64;
    let mut groups = Vec::with_capacity(unions.len() + 1);
    for (label, members) in unions {
        groups.push(make_group(label, members, chamber.dim, total));
    }
    if !independents.is_empty() {
        groups.push(make_group(INDEPENDENT_LABEL, independents, chamber.dim, total));
    }
    Ok(Society::new(chamber.dim, groups))
}

fn make_group(label: &str, mut members: Vec<&Individual>, dim: usize, total: f64) -> Group {
    members.sort_by(|a, b| a.id.cmp(&b.id));
    let count = members.len() as f64;
    let coords = (0..dim)
        .map(|j| members.iter().map(|m| m.position.coords()[j]).sum::<f64>() / count)
        .collect();
    Group {
        label: label.to_string(),
        weight: count / total,
        position: Position::new(coords),
    }
}
