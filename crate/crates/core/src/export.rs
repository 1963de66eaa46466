//! Poset exporters: Hasse diagrams as DOT, full data as JSON.

use serde_json::json;

use crate::strata::StratumPoset;

/// DOT Hasse diagram: nodes labeled "<key>#<component>", edges are covering
/// relations, drawn from the smaller stratum up into the larger.
pub fn poset_dot(poset: &StratumPoset) -> String {
    let mut out = String::from("digraph strata {\n  rankdir=BT;\n");
    for (i, s) in poset.strata.iter().enumerate() {
        out.push_str(&format!(
            "  n{} [label=\"{}#{}\"];\n",
            i, s.key, s.component
        ));
    }
    for (a, b) in poset.covering_relations() {
        out.push_str(&format!("  n{a} -> n{b};\n"));
    }
    out.push_str("}\n");
    out
}

pub fn poset_json(poset: &StratumPoset) -> serde_json::Value {
    let strata: Vec<_> = poset
        .strata
        .iter()
        .map(|s| {
            json!({
                "key": s.key.to_string(),
                "component": s.component,
                "members": s.members,
                "orbit_classes": s.orbit_classes,
            })
        })
        .collect();
    json!({
        "strata": strata,
        "leq": poset.leq,
        "covering_relations": poset.covering_relations(),
        "frontier_ok": poset.frontier_ok,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scenario;
    use crate::strata::{frontier_poset, PartitionMode, StrataWhere};

    fn quotient_poset(reference: &str) -> StratumPoset {
        let action = scenario::build_action(&scenario::example(reference).unwrap())
            .unwrap()
            .regularize()
            .unwrap();
        let quotient = action.quotient().unwrap();
        frontier_poset(
            &action,
            &quotient,
            PartitionMode::ByIsomorphism,
            StrataWhere::Quotient,
        )
        .unwrap()
    }

    #[test]
    fn dot_lists_every_stratum_and_covering() {
        let poset = quotient_poset("rotation_sphere(5)");
        let dot = poset_dot(&poset);
        assert!(dot.starts_with("digraph"));
        assert_eq!(dot.matches("label=").count(), 3);
        assert_eq!(dot.matches(" -> ").count(), 2);
        assert!(dot.contains("Z5#0"));
        assert!(dot.contains("Z5#1"));
        assert!(dot.contains("1#0"));
    }

    #[test]
    fn json_mirrors_the_poset() {
        let poset = quotient_poset("dihedral_polygon(3)");
        let value = poset_json(&poset);
        assert_eq!(value["strata"].as_array().unwrap().len(), 3);
        assert_eq!(value["frontier_ok"], serde_json::Value::Bool(true));
        assert_eq!(value["leq"].as_array().unwrap().len(), 3);
    }
}
