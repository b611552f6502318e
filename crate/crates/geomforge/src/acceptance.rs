//! The acceptance suite: every headline claim of the library bundled into
//! named criteria, each producing a deterministic report.  The criteria
//! are run by the `acceptance` integration test and by the command-line
//! `acceptance` subcommand; independent criteria may run in parallel, and
//! the report list is assembled in criterion order regardless.

use rayon::prelude::*;
use std::collections::BTreeSet;
use std::time::Instant;

use crate::constraints::{self, ZsigmondyOutcome};
use crate::field::Field;
use crate::groups::{self, MatrixGroup, SemilinearMap};
use crate::hexagon;
use crate::incidence::{self, NgonOutcome};
use crate::linear;
use crate::polar::{self, Kind, SectionRecognition};
use crate::report::Report;
use crate::showcase;
use crate::{Error, Result};

/// One acceptance criterion: a stable id, searchable tags, a short title,
/// an optional wall-clock budget, and the check itself.
pub struct Criterion {
    pub id: &'static str,
    pub tags: &'static [&'static str],
    pub title: &'static str,
    pub budget_ms: Option<u64>,
    run: fn() -> Result<Report>,
}

pub const CRITERIA: [Criterion; 13] = [
    Criterion {
        id: "c01",
        tags: &["hexagon"],
        title: "hexagon at q = 2: counts, polygon axioms, girth, balls",
        budget_ms: Some(5_000),
        run: c01_hexagon_q2,
    },
    Criterion {
        id: "c02",
        tags: &["hexagon"],
        title: "hexagon at q = 3: counts and all construction steps",
        budget_ms: Some(60_000),
        run: c02_hexagon_q3,
    },
    Criterion {
        id: "c03",
        tags: &["hexagon", "group"],
        title: "hexagon stabilizer at q = 2: order, hexagon count, rank, chain",
        budget_ms: Some(600_000),
        run: c03_stabilizer_structure,
    },
    Criterion {
        id: "c04",
        tags: &["hexagon", "group"],
        title: "hexagon stabilizer orbits on lines and planes",
        budget_ms: Some(600_000),
        run: c04_stabilizer_orbits,
    },
    Criterion {
        id: "c05",
        tags: &["polar"],
        title: "perp-difference counting identity across all six space types",
        budget_ms: Some(120_000),
        run: c05_counting_identities,
    },
    Criterion {
        id: "c06",
        tags: &["showcase", "group"],
        title: "degree-nine subgroup on a solid family of the binary quadric",
        budget_ms: Some(120_000),
        run: c06_a9_showcase,
    },
    Criterion {
        id: "c07",
        tags: &["showcase", "constraints"],
        title: "nonsingular-point stabilizer: rank four and the feasible split",
        budget_ms: None,
        run: c07_omega7_showcase,
    },
    Criterion {
        id: "c08",
        tags: &["group", "showcase"],
        title: "semilinear extension repairs antiflag transitivity",
        budget_ms: None,
        run: c08_semilinear,
    },
    Criterion {
        id: "c09",
        tags: &["group"],
        title: "antiflag transitivity equals the line-pair criterion",
        budget_ms: None,
        run: c09_criterion_equivalence,
    },
    Criterion {
        id: "c10",
        tags: &["polar"],
        title: "hyperplane sections are recognized and recovered",
        budget_ms: None,
        run: c10_section_recognition,
    },
    Criterion {
        id: "c11",
        tags: &["constraints"],
        title: "split elimination table and primitive divisor exceptions",
        budget_ms: None,
        run: c11_constraints,
    },
    Criterion {
        id: "c12",
        tags: &["polar"],
        title: "symplectic–orthogonal bijection in even characteristic",
        budget_ms: None,
        run: c12_sp_o_bijection,
    },
    Criterion {
        id: "c13",
        tags: &["property"],
        title: "property suites: field axioms, double perp, canonicality, determinism",
        budget_ms: None,
        run: c13_property_suites,
    },
];

/// Run one criterion, converting an error into a failing report and
/// appending the runtime-budget verdict when the criterion has one.
pub fn run_criterion(c: &Criterion) -> Report {
    let start = Instant::now();
    let mut report = match (c.run)() {
        Ok(r) => r,
        Err(e) => {
            let mut r = Report::new(format!("acceptance:{}", c.id));
            r.check_witness("completed", false, e.to_string());
            r
        }
    };
    let elapsed = start.elapsed().as_millis() as u64;
    if let Some(budget) = c.budget_ms {
        report.check_witness(
            "runtime_budget",
            elapsed <= budget,
            format!("took {elapsed} ms, budget {budget} ms"),
        );
    }
    report.param("title", c.title);
    report.finalize();
    report
}

/// Run the whole suite, or the subset matching a tag or criterion id.
/// Criteria run in parallel; the returned list is in criterion order.
pub fn run_suite(filter: Option<&str>) -> Vec<Report> {
    let selected: Vec<&Criterion> = CRITERIA
        .iter()
        .filter(|c| filter.is_none_or(|t| c.id == t || c.tags.contains(&t)))
        .collect();
    selected.par_iter().map(|c| run_criterion(c)).collect()
}

/// The criteria matching a tag or id, in suite order.
pub fn selected_criteria(filter: Option<&str>) -> Vec<&'static Criterion> {
    CRITERIA
        .iter()
        .filter(|c| filter.is_none_or(|t| c.id == t || c.tags.contains(&t)))
        .collect()
}

// ---------------------------------------------------------------------------

fn c01_hexagon_q2() -> Result<Report> {
    let mut r = Report::new("acceptance:c01");
    let m = hexagon::build_split_cayley(2)?;
    r.check_eq("point_count", 63, m.geometry.num_points() as u64);
    r.check_eq("line_count", 63, m.geometry.lines().len() as u64);
    match incidence::check_generalized_ngon(&m.geometry, false)? {
        NgonOutcome::Polygon { n, s, t } => {
            r.check_eq("gonality", 6, n as u64);
            r.check_eq("order_s", Some(2), s);
            r.check_eq("order_t", Some(2), t);
        }
        NgonOutcome::Violation { reason, .. } => {
            r.check_witness("gonality", false, reason);
        }
    }
    let levi = incidence::levi_adjacency(&m.geometry);
    r.check_eq("levi_girth", Some(12), incidence::graph_girth(&levi).map(|g| g as u64));
    // The ball of radius two around any point holds 1 + 6 + 24 = 31
    // points: the point, its collinear points, and those at distance two.
    let pg = incidence::point_graph(&m.geometry)?;
    let n = m.geometry.num_points();
    let ball_ok =
        (0..n).all(|x| (0..n).filter(|&y| pg.dist[x][y] <= 2).count() == 31);
    r.check("radius_two_ball_size_31", ball_ok);
    r.count("points", m.geometry.num_points());
    Ok(r)
}

fn c02_hexagon_q3() -> Result<Report> {
    let mut r = Report::new("acceptance:c02");
    let m = hexagon::build_split_cayley(3)?;
    r.check_eq("point_count", 364, m.geometry.num_points() as u64);
    r.check_eq("line_count", 364, m.geometry.lines().len() as u64);
    let steps = hexagon::verify_construction_steps(&m)?;
    r.check_eq("step_count", 7, steps.len() as u64);
    for v in &steps {
        r.check_witness(&format!("step_{}", v.step), v.pass, v.detail.clone());
    }
    Ok(r)
}

fn c03_stabilizer_structure() -> Result<Report> {
    let mut r = Report::new("acceptance:c03");
    let m = hexagon::build_split_cayley(2)?;
    let embedded = hexagon::hexagon_in_sp6(&m)?;
    r.check("lines_are_totally_isotropic", embedded.lines_are_ti);
    r.check("radius_two_ball_is_the_perp", embedded.polarity_holds);
    let stab = hexagon::sp6_stabilizer_q2(&embedded)?;
    let s = &stab.summary;
    r.check_eq("ambient_order", 1_451_520, s.ambient_order);
    // (q⁶ − 1)·q⁶·(q² − 1) at q = 2.
    r.check_eq("stabilizer_order", 63 * 64 * 3, s.order);
    r.check_eq("ordered_hexagon_count", 12_096, s.ordered_hexagons);
    r.check_eq("hexagon_fixers", 1, s.hexagon_fixers);
    r.check_eq("point_subdegrees", vec![1, 6, 24, 32], s.point_subdegrees.clone());
    let preset = groups::preset_group("hexagon_stabilizer_q2")?;
    let base = preset.domain_points().into_iter().next().ok_or(Error::ZeroVector)?;
    let chain = groups::invariant_chain(&preset, &base)?;
    r.check_eq("invariant_chain_dims", vec![1, 3, 5, 6], chain.dims.clone());
    r.check_eq("chain_perp_duality", Some(true), chain.perp_duality);
    r.count("stabilizer_order", s.order);
    Ok(r)
}

fn c04_stabilizer_orbits() -> Result<Report> {
    let mut r = Report::new("acceptance:c04");
    let m = hexagon::build_split_cayley(2)?;
    let embedded = hexagon::hexagon_in_sp6(&m)?;
    let stab = hexagon::sp6_stabilizer_q2(&embedded)?;
    let s = &stab.summary;
    r.check_eq("isotropic_line_count", 315, s.ti_lines);
    r.check_eq("isotropic_plane_count", 135, s.ti_planes);
    r.check_eq("line_orbit_sizes", vec![63, 252], s.line_orbit_sizes.clone());
    // 72 = q³(q³ + 1) at q = 2.
    r.check_eq("plane_orbit_sizes", vec![63, 72], s.plane_orbit_sizes.clone());
    r.check_eq("w_plane_orbit_size", 63, s.w_plane_orbit_size);
    Ok(r)
}

fn c05_counting_identities() -> Result<Report> {
    let mut r = Report::new("acceptance:c05");
    for rank in [2usize, 3] {
        for q in [2u64, 3] {
            let spaces: Vec<(String, polar::PolarSpace)> = vec![
                (format!("sp{}_q{q}", 2 * rank), polar::standard_space(Kind::Symplectic, 2 * rank, q)?),
                (format!("oplus{}_q{q}", 2 * rank), polar::standard_space(Kind::OrthPlus, 2 * rank, q)?),
                (format!("ominus{}_q{q}", 2 * rank + 2), polar::standard_space(Kind::OrthMinus, 2 * rank + 2, q)?),
                (format!("oodd{}_q{q}", 2 * rank + 1), polar::standard_space(Kind::OrthOdd, 2 * rank + 1, q)?),
                (format!("u{}_q0{q}", 2 * rank), polar::standard_space(Kind::Hermitian, 2 * rank, q)?),
                (format!("u{}_q0{q}", 2 * rank + 1), polar::standard_space(Kind::Hermitian, 2 * rank + 1, q)?),
            ];
            for (label, space) in spaces {
                if space.rank != rank {
                    r.check_witness(
                        &format!("{label}_rank"),
                        false,
                        format!("rank {} instead of {rank}", space.rank),
                    );
                    continue;
                }
                for i in 1..=space.rank {
                    let check = polar::verify_counting_identity(&space, i)?;
                    let witness = match &check.failure {
                        Some(fail) => format!(
                            "expected {}, counted {}",
                            check.expected, fail.actual
                        ),
                        None => String::new(),
                    };
                    r.check_witness(&format!("{label}_i{i}"), check.pass(), witness);
                }
            }
        }
    }
    Ok(r)
}

fn c06_a9_showcase() -> Result<Report> {
    let mut r = Report::new("acceptance:c06");
    let model = showcase::build_a9()?;
    let space = model.space();
    r.check("space_is_plus_type", space.kind == Kind::OrthPlus);
    r.check_eq("singular_points", 135, space.points.len() as u64);
    let report = showcase::verify_a9_antiflag_via_solids()?;
    r.check_eq("group_order", Some(181_440), report.group_order);
    r.check_eq("distinguished_points", 9, report.special_point_count);
    r.check("generators_dickson_zero", report.generators_dickson_zero);
    r.check_eq("solid_family_size", 135, report.subgroup.family_size);
    r.check("family_transitive", report.subgroup.family_transitive);
    r.check_eq("disjoint_ordered_pairs", 8640, report.subgroup.disjoint_ordered_pairs);
    r.check("disjoint_pairs_single_orbit", report.subgroup.disjoint_pairs_transitive);
    r.check_eq("pair_stabilizer_order", Some(21), report.subgroup.pair_stabilizer_order);
    r.check("ambient_family_transitive", report.ambient.family_transitive);
    r.check_eq("ambient_disjoint_pairs", 8640, report.ambient.disjoint_ordered_pairs);
    r.check("ambient_pairs_single_orbit", report.ambient.disjoint_pairs_transitive);
    r.check_eq("ambient_pair_stabilizer", Some(20_160), report.ambient.pair_stabilizer_order);
    Ok(r)
}

fn c07_omega7_showcase() -> Result<Report> {
    let mut r = Report::new("acceptance:c07");
    let report = showcase::verify_omega7_example()?;
    r.check_eq("ambient_order", Some(174_182_400), report.ambient_order);
    r.check("nonsingular_transitive", report.nonsingular_transitive);
    r.check_eq("ambient_subdegrees", vec![1, 64, 70], report.ambient_solid_subdegrees.clone());
    let g = &report.disjointness_graph;
    r.check_eq(
        "disjointness_graph",
        (64, 70, 28, 32),
        (g.k, g.l, g.lambda, g.mu),
    );
    r.check_eq("graph_eigenvalues", (4, -8), (g.r, g.s));
    r.check_eq("stabilizer_order", Some(1_451_520), report.stabilizer_order);
    r.check_eq("stabilizer_rank_four", 4, report.stabilizer_subdegrees.len() as u64);
    r.check_eq("stabilizer_subdegrees", vec![1, 14, 56, 64], report.stabilizer_subdegrees.clone());
    r.check_eq("split_j", 14, report.j);
    r.check_eq("split_jt", 8, report.jt);
    r.check("split_feasible", report.split.feasible);
    let realized = report
        .split
        .assignments
        .iter()
        .find(|a| a.pass)
        .map(|a| a.conditions)
        .unwrap_or([false; 4]);
    r.check_eq("split_conditions_all_pass", [true; 4], realized);
    r.check_eq("disjoint_ordered_pairs", 8640, report.disjoint_ordered_pairs);
    r.check("disjoint_pairs_transitive", report.disjoint_pairs_transitive);
    r.check_eq("pair_stabilizer_order", Some(168), report.pair_stabilizer_order);
    Ok(r)
}

fn c08_semilinear() -> Result<Report> {
    let mut r = Report::new("acceptance:c08");
    let report = showcase::verify_gamma_examples()?;
    r.check_eq("antiflag_total", 120, report.antiflag_total);
    r.check_eq("linear_orbit", 60, report.linear_antiflag_orbit);
    r.check("linear_not_transitive", !report.linear_antiflag_transitive);
    r.check_eq("extended_orbit", 120, report.extended_antiflag_orbit);
    r.check("extended_transitive", report.extended_antiflag_transitive);
    // Regularity: the extended group's order equals the antiflag count.
    r.check_eq("extended_regular", Some(120), report.extended_order);
    r.check_eq("block_size", 3, report.block_size);
    r.check_eq("block_count", 5, report.block_count);
    r.check("blocks_are_subspaces", report.blocks_are_subspaces);
    Ok(r)
}

fn c09_criterion_equivalence() -> Result<Report> {
    let mut r = Report::new("acceptance:c09");
    let mut entries: Vec<(String, MatrixGroup)> = Vec::new();
    for name in [
        "SL(4,2)",
        "Sp(6,2)",
        "SL2_4_semilinear",
        "hexagon_stabilizer_q2",
        "SU(4,2)",
        "A9_O8plus",
    ] {
        entries.push((name.to_string(), groups::preset_group(name)?));
    }
    let sl24 = groups::preset_group("SL(2,4)")?;
    entries.push(("SL(2,4)_blown_up".into(), groups::restrict_scalars_group(&sl24)?));
    // A reducible group: two transvections fixing the same point.
    let f = Field::new(2, 1)?;
    let rows = |m: [[u8; 3]; 3]| m.iter().map(|row| row.to_vec()).collect::<Vec<_>>();
    let gens = vec![
        SemilinearMap::new(&f, rows([[1, 0, 0], [1, 1, 0], [0, 0, 1]]), 0)?,
        SemilinearMap::new(&f, rows([[1, 0, 0], [0, 1, 0], [1, 0, 1]]), 0)?,
    ];
    entries.push((
        "reducible_point_fixing".into(),
        MatrixGroup::new(f, 3, "reducible_point_fixing", gens, None, None)?,
    ));

    r.check_eq("group_count_at_least_six", true, entries.len() >= 6);
    for (name, g) in &entries {
        let af = groups::antiflag_transitive_linear(g)?;
        let lc = groups::line_two_transitive_criterion(g)?;
        r.check_witness(
            &format!("equivalence_{name}"),
            af.transitive == lc.pass,
            format!("antiflag transitive = {}, line criterion = {}", af.transitive, lc.pass),
        );
        r.count(&format!("{name}_antiflag_orbit"), af.orbit);
    }
    Ok(r)
}

fn c10_section_recognition() -> Result<Report> {
    let mut r = Report::new("acceptance:c10");
    for (label, n) in [("oplus6_q2", 6usize), ("oplus8_q2", 8)] {
        let space = polar::standard_space(Kind::OrthPlus, n, 2)?;
        let mut all_recovered = true;
        let mut witness = String::new();
        for v in space.nonsingular_points() {
            let section = polar::perp_section(&space, &v);
            match polar::recognize_hyperplane_section(&space, &section)? {
                SectionRecognition::Recovered { v: got } if got == v => {}
                SectionRecognition::Recovered { .. } => {
                    all_recovered = false;
                    witness = "recovered a different vector".into();
                    break;
                }
                SectionRecognition::HypothesisViolated { .. } => {
                    all_recovered = false;
                    witness = "a solid meets the section badly".into();
                    break;
                }
                SectionRecognition::NoUniqueVector { candidates } => {
                    all_recovered = false;
                    witness = format!("{candidates} candidate vectors");
                    break;
                }
            }
        }
        r.check_witness(&format!("{label}_sections_recovered"), all_recovered, witness);
    }
    let (transversals, conics) = polar::grid_transversal_counts(4)?;
    r.check_eq("grid_q4_transversals", 120, transversals);
    r.check_eq("grid_q4_conics", 60, conics);
    Ok(r)
}

fn c11_constraints() -> Result<Report> {
    let mut r = Report::new("acceptance:c11");
    let rows = constraints::split_elimination(3, 20)?;
    r.check_eq("elimination_rows", 90, rows.len() as u64);
    r.check("elimination_table_empty", rows.iter().all(|row| !row.survives));

    let mut mersenne = BTreeSet::new();
    let mut sixty_four = BTreeSet::new();
    let mut congruences_ok = true;
    let mut divisibility_ok = true;
    for q in [2u64, 3, 4, 5, 7, 8, 9] {
        let (_, e) = polar::factor_prime_power(q).expect("prime powers");
        for k in 2..=12u32 {
            let z = constraints::zsigmondy(q, k)?;
            match z.outcome {
                ZsigmondyOutcome::Primitive(prime) => {
                    if prime % (e as u64 * k as u64) != 1 {
                        congruences_ok = false;
                    }
                    let pow = (0..k).fold(1u128, |acc, _| acc * q as u128) - 1;
                    if pow % prime as u128 != 0 {
                        divisibility_ok = false;
                    }
                }
                ZsigmondyOutcome::ExceptionMersenne => {
                    mersenne.insert((q, k));
                }
                ZsigmondyOutcome::ExceptionSixtyFour => {
                    sixty_four.insert((q, k));
                }
            }
        }
    }
    r.check_eq(
        "mersenne_exceptions",
        vec![(3, 2), (7, 2)],
        mersenne.into_iter().collect::<Vec<_>>(),
    );
    r.check_eq(
        "power_64_exceptions",
        vec![(2, 6), (4, 3), (8, 2)],
        sixty_four.into_iter().collect::<Vec<_>>(),
    );
    r.check("primitive_divisor_congruence", congruences_ok);
    r.check("primitive_divisor_divides", divisibility_ok);
    Ok(r)
}

fn c12_sp_o_bijection() -> Result<Report> {
    let mut r = Report::new("acceptance:c12");
    for (m, q) in [(2usize, 2u64), (3, 2), (2, 4)] {
        let label = format!("m{m}_q{q}");
        let bij = polar::sp_o_bijection_standard(m, q)?;
        r.check_eq(
            &format!("{label}_point_counts_match"),
            bij.odd.points.len() as u64,
            bij.sp.points.len() as u64,
        );
        let mut images: Vec<u32> = bij.point_map.clone();
        images.sort_unstable();
        let bijective = images == (0..bij.sp.points.len() as u32).collect::<Vec<_>>();
        r.check(&format!("{label}_point_map_bijective"), bijective);
        let sp_lines = polar::ts_subspaces(&bij.sp, 2).len() as u64;
        r.check_eq(&format!("{label}_line_count"), sp_lines, bij.line_count as u64);
    }
    Ok(r)
}

fn c13_property_suites() -> Result<Report> {
    let mut r = Report::new("acceptance:c13");

    // Field axioms, exhaustively for every prime power up to 81.
    let mut axioms_ok = true;
    let mut witness = String::new();
    'outer: for q in 2u64..=81 {
        let Some((p, e)) = polar::factor_prime_power(q) else { continue };
        let f = Field::new(p, e)?;
        let els: Vec<_> = (0..q as usize).map(|i| i as crate::field::El).collect();
        for &a in &els {
            for &b in &els {
                if f.add(a, b) != f.add(b, a) || f.mul(a, b) != f.mul(b, a) {
                    axioms_ok = false;
                    witness = format!("commutativity fails in GF({q})");
                    break 'outer;
                }
                for &c in &els {
                    let assoc = f.mul(f.mul(a, b), c) == f.mul(a, f.mul(b, c))
                        && f.add(f.add(a, b), c) == f.add(a, f.add(b, c));
                    let distrib = f.mul(a, f.add(b, c)) == f.add(f.mul(a, b), f.mul(a, c));
                    if !assoc || !distrib {
                        axioms_ok = false;
                        witness = format!("ring axioms fail in GF({q})");
                        break 'outer;
                    }
                }
            }
            if a != 0 {
                let inv = f.inv(a)?;
                if f.mul(a, inv) != f.one() {
                    axioms_ok = false;
                    witness = format!("inverse fails in GF({q})");
                    break 'outer;
                }
            }
        }
    }
    r.check_witness("field_axioms_exhaustive_to_81", axioms_ok, witness);

    // Double perp is the identity on every subspace of the rank-two
    // symplectic space over GF(3).
    let space = polar::standard_space(Kind::Symplectic, 4, 3)?;
    let f3 = &space.field;
    let mut double_perp_ok = true;
    let mut canonical_ok = true;
    for s in linear::all_subspaces(f3, 4) {
        let back = space.perp(&space.perp(&s));
        if back.key(f3) != s.key(f3) {
            double_perp_ok = false;
        }
        // Canonicality: rebuilding from transformed spanning rows gives
        // the same canonical form.
        if s.dim() > 0 {
            let mut rows = s.rows.clone();
            rows.reverse();
            let doubled: Vec<Vec<u8>> = rows
                .iter()
                .map(|row| row.iter().map(|&x| f3.mul(2, x)).collect())
                .collect();
            let rebuilt = linear::Subspace::from_rows(f3, doubled, 4);
            if rebuilt.key(f3) != s.key(f3) {
                canonical_ok = false;
            }
        }
    }
    r.check("double_perp_identity_sp4_3", double_perp_ok);
    r.check("subspace_canonical_form", canonical_ok);

    // Reports are byte-identical when the same computation runs on
    // thread pools of different sizes.
    let probe = |threads: usize| -> Result<String> {
        let pool = rayon::ThreadPoolBuilder::new()
            .num_threads(threads)
            .build()
            .map_err(|e| Error::BadParameter(e.to_string()))?;
        pool.install(|| {
            let rows: Vec<constraints::ZsigmondyResult> = [2u64, 3, 4, 5, 7, 8, 9]
                .par_iter()
                .flat_map_iter(|&q| (2..=12u32).map(move |k| constraints::zsigmondy(q, k)))
                .collect::<Result<Vec<_>>>()?;
            let mut probe_report = Report::new("probe");
            probe_report.count("row_count", rows.len());
            probe_report.count("rows", &rows);
            probe_report.finalize();
            Ok(probe_report.to_json())
        })
    };
    let single = probe(1)?;
    let quad = probe(4)?;
    r.check("reports_identical_across_thread_counts", single == quad);

    Ok(r)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn criteria_have_unique_ids_and_known_tags() {
        let ids: BTreeSet<_> = CRITERIA.iter().map(|c| c.id).collect();
        assert_eq!(ids.len(), CRITERIA.len());
        assert!(CRITERIA.iter().all(|c| !c.tags.is_empty()));
        assert_eq!(selected_criteria(Some("hexagon")).len(), 4);
        assert_eq!(selected_criteria(Some("c11")).len(), 1);
        assert_eq!(selected_criteria(None).len(), 13);
        assert!(selected_criteria(Some("nonexistent")).is_empty());
    }

    #[test]
    fn fast_criteria_pass_individually() {
        for id in ["c01", "c08", "c11", "c12"] {
            let c = CRITERIA.iter().find(|c| c.id == id).unwrap();
            let report = run_criterion(c);
            assert!(report.pass(), "{id} failed:\n{}", report.to_table());
        }
    }
}
