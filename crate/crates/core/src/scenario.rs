//! Scenario files: one JSON document fully determines a transformation
//! groupoid. Generators act tautologically on vertices, so the group spec's
//! degree must equal the complex's vertex count.

use std::path::Path;

use serde::{Deserialize, Serialize};

use crate::action::{product_action, SimplicialAction};
use crate::complex::SimplicialComplex;
use crate::error::{Error, Result};
use crate::group;

#[derive(Debug, Clone, Serialize, Deserialize, PartialEq, Eq)]
pub struct Scenario {
    pub name: String,
    pub group: GroupSpec,
    pub complex: ComplexSpec,
}

#[derive(Debug, Clone, Serialize, Deserialize, PartialEq, Eq)]
pub struct GroupSpec {
    pub degree: usize,
    pub generators: Vec<Vec<usize>>,
    /// indices into `generators`; the named generators generate the normal
    /// subgroup of topologically trivial directions
    #[serde(skip_serializing_if = "Option::is_none")]
    pub component_subgroup: Option<Vec<usize>>,
}

#[derive(Debug, Clone, Serialize, Deserialize, PartialEq, Eq)]
pub struct ComplexSpec {
    pub vertex_count: usize,
    pub facets: Vec<Vec<usize>>,
}

pub fn scenario_from_str(text: &str) -> Result<Scenario> {
    Ok(serde_json::from_str(text)?)
}

pub fn load_scenario(path: &Path) -> Result<Scenario> {
    let text = std::fs::read_to_string(path)?;
    scenario_from_str(&text)
}

/// Builds the validated action of the generated permutation group on the
/// face-closure of the facets. The group is generated as a permutation group,
/// so it always acts faithfully; the faithful-image replacement the format
/// allows for is therefore a no-op here.
pub fn build_action(scenario: &Scenario) -> Result<SimplicialAction> {
    if scenario.group.degree != scenario.complex.vertex_count {
        return Err(Error::Validation {
            path: "group.degree".into(),
            message: format!(
                "degree {} must equal complex.vertex_count {}",
                scenario.group.degree, scenario.complex.vertex_count
            ),
        });
    }
    let (group, perms) =
        group::generate_permutation_group(scenario.group.degree, &scenario.group.generators)
            .map_err(|e| Error::Validation {
                path: "group.generators".into(),
                message: e.to_string(),
            })?;
    let group = match &scenario.group.component_subgroup {
        None => group,
        Some(indices) => {
            let mut seed = Vec::new();
            for &gi in indices {
                if gi >= scenario.group.generators.len() {
                    return Err(Error::UnknownElement(gi, scenario.group.generators.len()));
                }
                let elem = perms
                    .iter()
                    .position(|p| *p == scenario.group.generators[gi])
                    .ok_or_else(|| Error::Internal("generator not in element list".into()))?;
                seed.push(elem);
            }
            let sub = group::Subgroup::closure(group.clone(), &seed)?;
            group.with_component_subgroup(&sub.elements)?
        }
    };
    let complex = SimplicialComplex::from_facets(
        scenario.complex.vertex_count,
        &scenario.complex.facets,
    )
    .map_err(|e| Error::Validation {
        path: "complex.facets".into(),
        message: e.to_string(),
    })?;
    SimplicialAction::new(group, complex, perms).map_err(|e| match e {
        Error::NotSimplicial { index, simplex } => Error::Validation {
            path: "group.generators".into(),
            message: Error::NotSimplicial { index, simplex }.to_string(),
        },
        other => other,
    })
}

/// A scenario reproducing the given action on its current complex.
pub fn to_scenario(name: &str, action: &SimplicialAction) -> Scenario {
    let complex = action.complex();
    let facets = complex
        .maximal_simplices()
        .into_iter()
        .map(|s| complex.simplex(s).to_vec())
        .collect();
    let group = action.group();
    let generators: Vec<Vec<usize>> = group
        .generators()
        .iter()
        .map(|&g| action.vertex_map(g).to_vec())
        .collect();
    let mut spec = GroupSpec {
        degree: complex.vertex_count(),
        generators,
        component_subgroup: None,
    };
    if let Some(elements) = group.component_subgroup() {
        // emit each subgroup element as a generator so the index list can
        // name a generating set of the subgroup
        let mut indices = Vec::new();
        for &e in elements {
            let perm = action.vertex_map(e).to_vec();
            let gi = match spec.generators.iter().position(|p| *p == perm) {
                Some(gi) => gi,
                None => {
                    spec.generators.push(perm);
                    spec.generators.len() - 1
                }
            };
            indices.push(gi);
        }
        indices.sort_unstable();
        indices.dedup();
        spec.component_subgroup = Some(indices);
    }
    Scenario {
        name: name.to_string(),
        group: spec,
        complex: ComplexSpec {
            vertex_count: complex.vertex_count(),
            facets,
        },
    }
}

// ---------------------------------------------------------------------------
// Built-in examples
// ---------------------------------------------------------------------------

/// Suspension of an m-gon with the cyclic rotation: m+2 vertices, 2m
/// triangles, group Z/m. A finite model of the rotation action on the sphere.
pub fn rotation_sphere(m: usize) -> Result<Scenario> {
    if m < 3 {
        return Err(Error::Validation {
            path: "m".into(),
            message: "rotation_sphere needs m >= 3".into(),
        });
    }
    let north = m;
    let south = m + 1;
    let mut facets = Vec::with_capacity(2 * m);
    for i in 0..m {
        facets.push(vec![i, (i + 1) % m, north]);
        facets.push(vec![i, (i + 1) % m, south]);
    }
    let mut rot: Vec<usize> = (0..m).map(|i| (i + 1) % m).collect();
    rot.push(north);
    rot.push(south);
    Ok(Scenario {
        name: format!("rotation_sphere({m})"),
        group: GroupSpec {
            degree: m + 2,
            generators: vec![rot],
            component_subgroup: None,
        },
        complex: ComplexSpec {
            vertex_count: m + 2,
            facets,
        },
    })
}

/// Boundary of an m-gon with the dihedral group of order 2m.
pub fn dihedral_polygon(m: usize) -> Result<Scenario> {
    if m < 3 {
        return Err(Error::Validation {
            path: "m".into(),
            message: "dihedral_polygon needs m >= 3".into(),
        });
    }
    let facets = (0..m).map(|i| vec![i, (i + 1) % m]).collect();
    let rot: Vec<usize> = (0..m).map(|i| (i + 1) % m).collect();
    let refl: Vec<usize> = (0..m).map(|i| (m - i) % m).collect();
    Ok(Scenario {
        name: format!("dihedral_polygon({m})"),
        group: GroupSpec {
            degree: m,
            generators: vec![rot, refl],
            component_subgroup: None,
        },
        complex: ComplexSpec {
            vertex_count: m,
            facets,
        },
    })
}

/// The symmetric group on three letters permuting the triangle boundary.
pub fn symmetric_triangle() -> Scenario {
    Scenario {
        name: "symmetric_triangle".into(),
        group: GroupSpec {
            degree: 3,
            generators: vec![vec![1, 2, 0], vec![1, 0, 2]],
            component_subgroup: None,
        },
        complex: ComplexSpec {
            vertex_count: 3,
            facets: vec![vec![0, 1], vec![1, 2], vec![0, 2]],
        },
    }
}

/// Two disjoint squares with a dihedral group of order 8 acting freely; the
/// rotation subgroup preserves each square and is recorded as the
/// component subgroup, so π₀ of the group swaps the two components.
pub fn swapped_squares() -> Scenario {
    let facets = vec![
        vec![0, 1],
        vec![1, 2],
        vec![2, 3],
        vec![0, 3],
        vec![4, 5],
        vec![5, 6],
        vec![6, 7],
        vec![4, 7],
    ];
    // r rotates both squares (in opposite senses), s swaps them
    let r = vec![1, 2, 3, 0, 7, 4, 5, 6];
    let s = vec![4, 5, 6, 7, 0, 1, 2, 3];
    Scenario {
        name: "swapped_squares".into(),
        group: GroupSpec {
            degree: 8,
            generators: vec![r, s],
            component_subgroup: Some(vec![0]),
        },
        complex: ComplexSpec {
            vertex_count: 8,
            facets,
        },
    }
}

/// Product scenario: regularize both factors, form the equivariant staircase
/// product, and re-serialize it as a plain scenario.
pub fn product(a: &Scenario, b: &Scenario) -> Result<Scenario> {
    let action_a = build_action(a)?.regularize()?;
    let action_b = build_action(b)?.regularize()?;
    let prod = product_action(&action_a, &action_b)?;
    Ok(to_scenario(
        &format!("product({},{})", a.name, b.name),
        &prod,
    ))
}

/// Parses a builtin reference such as `rotation_sphere(5)` or
/// `product(rotation_sphere(3),rotation_sphere(4))`.
pub fn example(reference: &str) -> Result<Scenario> {
    let reference = reference.trim();
    let unknown = || Error::UnknownExample(reference.to_string());
    match reference {
        "symmetric_triangle" => return Ok(symmetric_triangle()),
        "swapped_squares" => return Ok(swapped_squares()),
        _ => {}
    }
    let (head, args) = match reference.split_once('(') {
        Some((head, rest)) if reference.ends_with(')') => {
            (head, &rest[..rest.len() - 1])
        }
        _ => return Err(unknown()),
    };
    match head {
        "rotation_sphere" => {
            let m: usize = args.trim().parse().map_err(|_| unknown())?;
            rotation_sphere(m)
        }
        "dihedral_polygon" => {
            let m: usize = args.trim().parse().map_err(|_| unknown())?;
            dihedral_polygon(m)
        }
        "product" => {
            let (left, right) = split_product_args(args).ok_or_else(unknown)?;
            product(&example(left)?, &example(right)?)
        }
        _ => Err(unknown()),
    }
}

/// Splits "a,b" at the top-level comma, respecting nested parentheses.
fn split_product_args(args: &str) -> Option<(&str, &str)> {
    let mut depth = 0usize;
    for (i, c) in args.char_indices() {
        match c {
            '(' => depth += 1,
            ')' => depth = depth.checked_sub(1)?,
            ',' if depth == 0 => return Some((&args[..i], &args[i + 1..])),
            _ => {}
        }
    }
    None
}

/// The references exercised by the built-in check suite.
pub fn builtin_suite() -> Vec<&'static str> {
    vec![
        "rotation_sphere(3)",
        "rotation_sphere(5)",
        "rotation_sphere(8)",
        "dihedral_polygon(3)",
        "dihedral_polygon(4)",
        "dihedral_polygon(5)",
        "symmetric_triangle",
        "swapped_squares",
        "product(rotation_sphere(3),rotation_sphere(4))",
    ]
}
