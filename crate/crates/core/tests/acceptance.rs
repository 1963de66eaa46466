//! One test per release criterion; each prints a single pass/fail line.

use std::time::{Duration, Instant};

use orbitcat::action::{product_action, SimplicialAction};
use orbitcat::checks::{simplex_face_poset, square_face_poset};
use orbitcat::group::{self, Group};
use orbitcat::level::{inner_autoequivalence, phi0_category};
use orbitcat::orbit_cat::{bold_phi0, compare_phi0, fixed_point_diagram, orbit_category};
use orbitcat::report::{reports_equal, Report};
use orbitcat::scenario::{self, builtin_suite};
use orbitcat::strata::{
    closure_decomposition, frontier_poset, posets_isomorphic, PartitionMode, StrataWhere,
};

fn regular(reference: &str) -> SimplicialAction {
    scenario::build_action(&scenario::example(reference).unwrap())
        .unwrap()
        .regularize()
        .unwrap()
}

fn criterion(number: usize, name: &str, body: impl FnOnce() -> Result<(), String>) {
    let outcome = body();
    match &outcome {
        Ok(()) => println!("ACCEPTANCE {number} {name}: PASS"),
        Err(reason) => println!("ACCEPTANCE {number} {name}: FAIL ({reason})"),
    }
    if let Err(reason) = outcome {
        panic!("criterion {number} ({name}) failed: {reason}");
    }
}

fn quotient_leq(reference: &str) -> Vec<Vec<bool>> {
    let action = regular(reference);
    let quotient = action.quotient().unwrap();
    frontier_poset(
        &action,
        &quotient,
        PartitionMode::ByIsomorphism,
        StrataWhere::Quotient,
    )
    .unwrap()
    .leq
}

#[test]
fn criterion_1_toric_prediction() {
    criterion(1, "toric stratum posets", || {
        let interval = simplex_face_poset(1);
        for m in [3usize, 5, 8] {
            let start = Instant::now();
            let leq = quotient_leq(&format!("rotation_sphere({m})"));
            if !posets_isomorphic(&leq, &interval) {
                return Err(format!("rotation_sphere({m}) poset is not an interval"));
            }
            if start.elapsed() >= Duration::from_secs(5) {
                return Err(format!("rotation_sphere({m}) took too long"));
            }
        }
        let start = Instant::now();
        let leq = quotient_leq("product(rotation_sphere(3),rotation_sphere(4))");
        if !posets_isomorphic(&leq, &square_face_poset()) {
            return Err("product poset is not the square face poset".into());
        }
        if start.elapsed() >= Duration::from_secs(5) {
            return Err("product took too long".into());
        }
        Ok(())
    });
}

#[test]
fn criterion_2_counting_identities() {
    criterion(2, "counting identities", || {
        let start = Instant::now();
        for reference in builtin_suite() {
            let action = regular(reference);
            if action.group().order() > 24 {
                continue;
            }
            let quotient = action.quotient().unwrap();
            let phi0 = phi0_category(&action).unwrap();
            for ki in 0..phi0.keys.len() {
                let report =
                    orbitcat::strata::check_prop43(&action, &quotient, &phi0, ki).unwrap();
                if !report.ok {
                    return Err(format!(
                        "{reference} H={}: {} vs {} objects, {} vs {} orbit classes",
                        report.h,
                        report.objects_lhs,
                        report.objects_rhs,
                        report.orbit_lhs,
                        report.orbit_rhs
                    ));
                }
            }
        }
        if start.elapsed() >= Duration::from_secs(60) {
            return Err("identity sweep took too long".into());
        }
        Ok(())
    });
}

#[test]
fn criterion_3_orbit_category_cross_construction() {
    criterion(3, "orbit category cross-construction", || {
        for reference in builtin_suite() {
            let action = regular(reference);
            let g: &Group = action.group();
            // the constructor itself errors if the fixed-coset and
            // transporter-class constructions disagree
            let cat = orbit_category(g).map_err(|e| e.to_string())?;
            for (i0, h0) in cat.lattice.subgroups.iter().enumerate() {
                for (i1, h1) in cat.lattice.subgroups.iter().enumerate() {
                    // |(G/H₁)^{H₀}|, counted directly on cosets
                    let fixed = cat.cosets[i1]
                        .iter()
                        .filter(|coset| {
                            h0.elements.iter().all(|&a| {
                                let moved = g.mul(a, coset[0]);
                                coset.binary_search(&moved).is_ok()
                            })
                        })
                        .count();
                    if cat.hom_sets[i0][i1].len() != fixed {
                        return Err(format!(
                            "{reference}: |Mor({:?},{:?})| = {} but |(G/H1)^H0| = {}",
                            h0.elements,
                            h1.elements,
                            cat.hom_sets[i0][i1].len(),
                            fixed
                        ));
                    }
                }
            }
        }
        Ok(())
    });
}

#[test]
fn criterion_4_inner_automorphism_equivalence() {
    criterion(4, "inner autoequivalences are natural", || {
        for reference in builtin_suite() {
            let action = regular(reference);
            let phi0 = phi0_category(&action).unwrap();
            for ki in 0..phi0.keys.len() {
                let h = &phi0.rep_groups[ki];
                for a in 0..h.order() {
                    inner_autoequivalence(&action, &phi0.levels[ki], a)
                        .map_err(|e| format!("{reference} key {ki} a={a}: {e}"))?;
                }
            }
        }
        Ok(())
    });
}

#[test]
fn criterion_5_pi0_laws() {
    criterion(5, "pi0 laws", || {
        // product bijection on the group side
        let sq = scenario::swapped_squares();
        let k1 = scenario::build_action(&sq).unwrap().group().clone();
        let k2 = k1.clone();
        let prod = group::direct_product(&k1, &k2).map_err(|e| e.to_string())?;
        let (p1, _) = group::group_pi0(&k1).map_err(|e| e.to_string())?;
        let (p2, _) = group::group_pi0(&k2).map_err(|e| e.to_string())?;
        let (pp, _) = group::group_pi0(&prod).map_err(|e| e.to_string())?;
        if pp.order() != p1.order() * p2.order() {
            return Err(format!(
                "|pi0(K1xK2)| = {} but |pi0K1|*|pi0K2| = {}",
                pp.order(),
                p1.order() * p2.order()
            ));
        }
        // groupoid law on the component-decorated example
        let action = regular("swapped_squares");
        let outcome = orbitcat::checks::run_checks(&sq).map_err(|e| e.to_string())?;
        let item = outcome
            .items
            .iter()
            .find(|i| i.name == "pi0-laws")
            .ok_or("pi0-laws item missing")?;
        if !item.pass {
            return Err(item.details.clone());
        }
        let side_a = action.pi0_transformation_groupoid().map_err(|e| e.to_string())?;
        if side_a.object_count() != 2 {
            return Err("expected two components".into());
        }
        Ok(())
    });
}

#[test]
fn criterion_6_frontier_condition() {
    criterion(6, "frontier condition", || {
        for reference in builtin_suite() {
            let action = regular(reference);
            let quotient = action.quotient().unwrap();
            for place in [StrataWhere::Quotient, StrataWhere::Source] {
                let poset = frontier_poset(
                    &action,
                    &quotient,
                    PartitionMode::ByIsomorphism,
                    place,
                )
                .map_err(|e| format!("{reference}: {e}"))?;
                if !poset.frontier_ok {
                    return Err(format!("{reference}: frontier violated ({place:?})"));
                }
                let keys: std::collections::BTreeSet<_> =
                    poset.strata.iter().map(|s| s.key.clone()).collect();
                for key in keys {
                    closure_decomposition(&poset, &key)
                        .map_err(|e| format!("{reference} {key}: {e}"))?;
                }
            }
        }
        Ok(())
    });
}

#[test]
fn criterion_7_comparison_functor() {
    criterion(7, "comparison functor", || {
        for reference in builtin_suite() {
            let action = regular(reference);
            let phi0 = phi0_category(&action).unwrap();
            let cat = orbit_category(action.group()).map_err(|e| e.to_string())?;
            let diagram = fixed_point_diagram(&action, &cat).map_err(|e| e.to_string())?;
            let bold = bold_phi0(&cat, &diagram).map_err(|e| e.to_string())?;
            let cmp = compare_phi0(&action, &phi0, &cat, &diagram, &bold)
                .map_err(|e| format!("{reference}: {e}"))?;
            if !cmp.functorial {
                return Err(format!("{reference}: kappa is not functorial"));
            }
            if !cmp.essentially_surjective {
                return Err(format!("{reference}: kappa is not essentially surjective"));
            }
            if reference == "rotation_sphere(5)" && !(cmp.object_surjective && cmp.object_injective)
            {
                return Err("kappa is not bijective on objects for rotation_sphere(5)".into());
            }
        }
        Ok(())
    });
}

#[test]
fn criterion_8_determinism() {
    criterion(8, "deterministic check reports", || {
        let bin = env!("CARGO_BIN_EXE_orbitcat");
        let mut reports = Vec::new();
        for _ in 0..2 {
            let out = std::process::Command::new(bin)
                .args(["check", "rotation_sphere(5)"])
                .output()
                .map_err(|e| e.to_string())?;
            if !out.status.success() {
                return Err(format!("check exited with {:?}", out.status.code()));
            }
            let report: Report = serde_json::from_slice(&out.stdout).map_err(|e| e.to_string())?;
            reports.push(report);
        }
        if !reports_equal(&reports[0], &reports[1]) {
            return Err("repeated runs differ beyond the timestamp".into());
        }
        Ok(())
    });
}

#[test]
fn product_action_inherits_regularity() {
    // supporting structural fact for criterion 1: the staircase product of
    // regular order-compatible factors is regular without extra subdivision
    let a = regular("rotation_sphere(3)");
    let b = regular("rotation_sphere(4)");
    let prod = product_action(&a, &b).unwrap();
    assert!(prod.is_regular());
}
