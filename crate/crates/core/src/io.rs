//! Instance and assignment files. Players and edge endpoints are 1-based on
//! disk and 0-based in memory.

use std::fs;
use std::path::Path;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result, Violation};
use crate::generators::ReductionMetadata;
use crate::model::{Activity, Alternative, Assignment, Instance, PreferenceOrder, RawInstance};

#[derive(Debug, Serialize, Deserialize)]
struct InstanceFile {
    players: usize,
    activities: Vec<String>,
    edges: Vec<[usize; 2]>,
    preferences: Vec<Vec<Vec<(String, usize)>>>,
}

fn lookup(names: &[String], name: &str) -> Option<Activity> {
    if name == "void" {
        return Some(Activity::VOID);
    }
    names.iter().position(|x| x == name).map(|k| Activity(k + 1))
}

pub fn parse_instance(text: &str) -> Result<Instance> {
    let file: InstanceFile = serde_json::from_str(text).map_err(|e| Error::Parse(e.to_string()))?;
    let mut bad = Vec::new();
    if let Some(dup) = file.activities.iter().enumerate().find(|(k, x)| {
        *x == "void" || file.activities[..*k].contains(x)
    }) {
        bad.push(Violation::new(None, "activities", format!("reserved or duplicate name {:?}", dup.1)));
    }
    let mut edges = Vec::with_capacity(file.edges.len());
    for [u, v] in &file.edges {
        if *u == 0 || *v == 0 {
            bad.push(Violation::new(None, "edges", format!("endpoint 0 in ({u}, {v}); players are 1-based")));
        } else {
            edges.push((u - 1, v - 1));
        }
    }
    let mut preferences = Vec::with_capacity(file.preferences.len());
    for (i, tiers) in file.preferences.iter().enumerate() {
        let mut order = Vec::with_capacity(tiers.len());
        for tier in tiers {
            let mut t = Vec::with_capacity(tier.len());
            for (name, size) in tier {
                match lookup(&file.activities, name) {
                    Some(a) => t.push(Alternative::new(a, *size)),
                    None => bad.push(Violation::new(Some(i), "preferences", format!("unknown activity {name:?}"))),
                }
            }
            order.push(t);
        }
        preferences.push(PreferenceOrder::new(order));
    }
    if file.preferences.len() != file.players {
        bad.push(Violation::new(
            None,
            "preferences",
            format!("{} preference lists for {} players", file.preferences.len(), file.players),
        ));
    }
    if !bad.is_empty() {
        return Err(Error::Invalid(bad));
    }
    Instance::new(RawInstance { players: file.players, activities: file.activities, edges, preferences })
}

fn compact<T: Serialize>(v: &T) -> String {
    serde_json::to_string(v).expect("plain data serialises")
}

pub fn render_instance(inst: &Instance) -> String {
    let name = |a: Activity| inst.activity_name(a).to_string();
    let file = InstanceFile {
        players: inst.n(),
        activities: inst.activity_names().to_vec(),
        edges: inst.edges().iter().map(|&(u, v)| [u + 1, v + 1]).collect(),
        preferences: (0..inst.n())
            .map(|i| {
                inst.preferences(i)
                    .tiers
                    .iter()
                    .map(|t| t.iter().map(|x| (name(x.activity), x.size)).collect())
                    .collect()
            })
            .collect(),
    };
    // One preference list per line keeps files diffable.
    let prefs: Vec<String> = file.preferences.iter().map(|p| format!("    {}", compact(p))).collect();
    format!(
        "{{\n  \"players\": {},\n  \"activities\": {},\n  \"edges\": {},\n  \"preferences\": [\n{}\n  ]\n}}\n",
        file.players,
        compact(&file.activities),
        compact(&file.edges),
        prefs.join(",\n")
    )
}

pub fn parse_assignment(inst: &Instance, text: &str) -> Result<Assignment> {
    let names: Vec<String> = serde_json::from_str(text).map_err(|e| Error::Parse(e.to_string()))?;
    if names.len() != inst.n() {
        return Err(Error::Parse(format!("assignment lists {} players, instance has {}", names.len(), inst.n())));
    }
    let choice = names
        .iter()
        .enumerate()
        .map(|(i, name)| {
            lookup(inst.activity_names(), name)
                .ok_or_else(|| Error::Parse(format!("player {}: unknown activity {name:?}", i + 1)))
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(Assignment::new(choice))
}

pub fn render_assignment(inst: &Instance, pi: &Assignment) -> String {
    let names: Vec<&str> = pi.choice.iter().map(|&a| inst.activity_name(a)).collect();
    serde_json::to_string(&names).expect("assignment serialises")
}

pub fn render_metadata(meta: &ReductionMetadata) -> String {
    let mut s = serde_json::to_string_pretty(meta).expect("metadata serialises");
    s.push('\n');
    s
}

pub fn read_instance(path: &Path) -> Result<Instance> {
    parse_instance(&fs::read_to_string(path)?)
}

pub fn write_instance(path: &Path, inst: &Instance) -> Result<()> {
    Ok(fs::write(path, render_instance(inst))?)
}

pub fn read_assignment(inst: &Instance, path: &Path) -> Result<Assignment> {
    parse_assignment(inst, &fs::read_to_string(path)?)
}
