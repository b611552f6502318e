//! Worked end-to-end verifications combining the group machinery with the
//! geometry: the alternating group of degree nine sitting inside the
//! plus-type orthogonal group on an eight-dimensional binary space and
//! acting on one family of solids; the stabilizer of a nonsingular point
//! of that space, whose orbit data feeds the rank-four split conditions a
//! real example; the family-swapping behaviour of a single orthogonal
//! transvection; and the comparison of a blown-up linear group with its
//! semilinear extension on projective three-space.

use serde::Serialize;
use std::collections::BTreeSet;

use crate::constraints::{self, Rank3Params, Rank4Feasibility};
use crate::field::Field;
use crate::groups::{self, MatrixGroup, SemilinearMap};
use crate::incidence;
use crate::linear::{self, ProjPoint, Subspace};
use crate::polar::{self, PolarSpace};
use crate::{Error, Result};

// ---------------------------------------------------------------------------
// The alternating group of degree nine on the even-weight binary module
// ---------------------------------------------------------------------------

/// The degree-nine alternating group in its eight-dimensional orthogonal
/// representation over GF(2), together with the nine distinguished
/// singular points that realize the natural nine-point action inside the
/// quadric.
pub struct A9Model {
    pub group: MatrixGroup,
    /// The nine weight-eight vectors of the even-weight module: pairwise
    /// non-perpendicular singular points permuted like the letters.
    pub special_points: Vec<ProjPoint>,
}

impl A9Model {
    pub fn space(&self) -> &PolarSpace {
        self.group.space.as_ref().expect("the preset carries its quadratic space")
    }
}

/// Build the model and validate the distinguished points: there are nine
/// of them, each singular, each pair non-perpendicular, and they form a
/// single orbit under the group.
pub fn build_a9() -> Result<A9Model> {
    let group = groups::preset_group("A9_O8plus")?;
    let space = group.space.clone().ok_or_else(|| {
        Error::BadParameter("the preset is expected to carry its quadratic space".into())
    })?;
    let f = &group.field;
    // In the basis b₁, …, b₈ of the even-weight module (bᵢ = eᵢ + e₉),
    // the weight-eight vectors of the underlying nine-point set are the
    // all-ones coordinate vector and the eight vectors with a single zero.
    let mut special = Vec::with_capacity(9);
    for hole in 0..=8usize {
        let coords: Vec<u8> = (0..8).map(|i| u8::from(i + 1 != hole)).collect();
        special.push(linear::normalize(f, &coords)?);
    }
    for p in &special {
        if space.phi(&p.0) != Some(0) {
            return Err(Error::BadParameter(
                "a distinguished point is not singular".into(),
            ));
        }
    }
    for (i, p) in special.iter().enumerate() {
        for q in special.iter().skip(i + 1) {
            if space.bilinear(&p.0, &q.0) == 0 {
                return Err(Error::BadParameter(
                    "two distinguished points are perpendicular".into(),
                ));
            }
        }
    }
    let orbit = groups::point_orbit(&group, &special[0]);
    let orbit_keys: BTreeSet<&[u8]> = orbit.iter().map(|p| p.0.as_slice()).collect();
    let special_keys: BTreeSet<&[u8]> = special.iter().map(|p| p.0.as_slice()).collect();
    if orbit_keys != special_keys {
        return Err(Error::BadParameter(
            "the distinguished points do not form a single orbit".into(),
        ));
    }
    Ok(A9Model { group, special_points: special })
}

/// Outcome of the solid-family analysis for one group: transitivity on
/// the family, the count of ordered disjoint pairs, transitivity on those
/// pairs, and the pair-stabilizer order by the orbit–stabilizer theorem.
#[derive(Clone, Debug, Serialize)]
pub struct SolidPairCheck {
    pub family_size: u64,
    pub family_transitive: bool,
    pub disjoint_ordered_pairs: u64,
    pub disjoint_pairs_transitive: bool,
    pub pair_stabilizer_order: Option<u64>,
}

/// Analyze a group's action on one family of solids of its own quadratic
/// space: permutation images of the generators, orbit count, and the
/// orbit structure on ordered pairs of disjoint solids.
fn solid_pair_analysis(
    g: &MatrixGroup,
    space: &PolarSpace,
    family: &[Subspace],
) -> Result<SolidPairCheck> {
    let n = family.len();
    let perms = groups::subspace_permutations(&g.generators, &g.field, family)?;
    let orbits = groups::orbits_of_perms(&perms, n);
    let family_transitive = orbits.len() == 1;

    // Disjointness via the point-id sets of the solids.
    let ids: Vec<BTreeSet<u32>> = family
        .iter()
        .map(|s| space.point_ids_in(s).into_iter().collect())
        .collect();
    let disjoint = |a: usize, b: usize| ids[a].is_disjoint(&ids[b]);

    let classes = groups::pair_orbits(&perms, n);
    let mut class_of = vec![usize::MAX; n * n];
    for (c, orbit) in classes.iter().enumerate() {
        for &s in orbit {
            class_of[s as usize] = c;
        }
    }
    let mut disjoint_states = 0u64;
    let mut hit_classes = BTreeSet::new();
    for a in 0..n {
        for b in 0..n {
            if a != b && disjoint(a, b) {
                disjoint_states += 1;
                hit_classes.insert(class_of[a * n + b]);
            }
        }
    }
    let disjoint_pairs_transitive = disjoint_states > 0 && hit_classes.len() == 1;
    let pair_stabilizer_order = match (g.order, disjoint_pairs_transitive) {
        (Some(o), true) if disjoint_states > 0 && o % disjoint_states == 0 => {
            Some(o / disjoint_states)
        }
        _ => None,
    };
    Ok(SolidPairCheck {
        family_size: n as u64,
        family_transitive,
        disjoint_ordered_pairs: disjoint_states,
        disjoint_pairs_transitive,
        pair_stabilizer_order,
    })
}

/// The full verdict on the degree-nine example and its ambient baseline.
#[derive(Clone, Debug, Serialize)]
pub struct A9Report {
    pub group_order: Option<u64>,
    pub special_point_count: u64,
    pub generators_dickson_zero: bool,
    /// Index (0 or 1) of the solid family the subgroup is transitive on.
    pub transitive_family_index: usize,
    pub subgroup: SolidPairCheck,
    /// The same analysis for the full kernel group on the standard space.
    pub ambient: SolidPairCheck,
}

/// Verify the solid-family transitivity of the degree-nine subgroup: its
/// generators lie in the index-two kernel of the orthogonal group, it is
/// transitive on one family of 135 solids and on the 8640 ordered pairs
/// of disjoint solids in that family (pair stabilizer of order 21), and
/// the ambient kernel group passes the same checks with pair stabilizer
/// of order 20160.
pub fn verify_a9_antiflag_via_solids() -> Result<A9Report> {
    let model = build_a9()?;
    let g = &model.group;
    let space = model.space();

    let mut generators_dickson_zero = true;
    for gen in &g.generators {
        if !groups::dickson_in_omega(space, &gen.matrix)? {
            generators_dickson_zero = false;
        }
    }

    let (fam_a, fam_b) = polar::solid_families(space)?;
    // The subgroup preserves each family (its generators have Dickson
    // invariant zero); it is transitive on exactly one of them.
    let check_a = solid_pair_analysis(g, space, &fam_a)?;
    let (transitive_family_index, subgroup) = if check_a.family_transitive {
        (0, check_a)
    } else {
        let check_b = solid_pair_analysis(g, space, &fam_b)?;
        if !check_b.family_transitive {
            return Err(Error::BadParameter(
                "the subgroup is transitive on neither solid family".into(),
            ));
        }
        (1, check_b)
    };

    let ambient_group = groups::preset_group("Omega+(8,2)")?;
    let ambient_space = ambient_group.space.clone().ok_or_else(|| {
        Error::BadParameter("the kernel preset is expected to carry its space".into())
    })?;
    let (amb_fam, _) = polar::solid_families(&ambient_space)?;
    let ambient = solid_pair_analysis(&ambient_group, &ambient_space, &amb_fam)?;

    Ok(A9Report {
        group_order: g.order,
        special_point_count: model.special_points.len() as u64,
        generators_dickson_zero,
        transitive_family_index,
        subgroup,
        ambient,
    })
}

// ---------------------------------------------------------------------------
// The nonsingular-point stabilizer and the rank-four split conditions
// ---------------------------------------------------------------------------

/// Orbit data of the nonsingular-point stabilizer on one solid family,
/// matched against the rank-four feasibility conditions.
#[derive(Clone, Debug, Serialize)]
pub struct NonsingularStabilizerReport {
    pub ambient_order: Option<u64>,
    pub nonsingular_point_count: u64,
    pub nonsingular_transitive: bool,
    /// Suborbit sizes of the ambient group on the family: rank three.
    pub ambient_solid_subdegrees: Vec<u64>,
    /// Parameters of the disjointness graph on the family, with its
    /// integral eigenvalues.
    pub disjointness_graph: Rank3Params,
    pub stabilizer_order: Option<u64>,
    pub stabilizer_generator_count: u64,
    /// Suborbit sizes of the stabilizer on the family: rank four, with
    /// the middle suborbit split j + (l − j).
    pub stabilizer_subdegrees: Vec<u64>,
    /// Size of the smaller part of the split middle suborbit.
    pub j: u64,
    /// Common intersection count |Γ₁(x) ∩ Δ(y)| over y in the larger
    /// part, where Δ is the disjointness suborbit.
    pub jt: u64,
    /// The arithmetic split conditions evaluated at (j, jt).
    pub split: Rank4Feasibility,
    pub disjoint_ordered_pairs: u64,
    pub disjoint_pairs_transitive: bool,
    pub pair_stabilizer_order: Option<u64>,
}

/// Compute the real rank-four example: the stabilizer of a nonsingular
/// point in the kernel of the eight-dimensional plus-type orthogonal
/// group over GF(2), acting on one family of 135 solids with suborbits
/// 1 + 14 + 56 + 64, and feed its split data (j, jt) to the arithmetic
/// feasibility conditions.
pub fn verify_omega7_example() -> Result<NonsingularStabilizerReport> {
    let ambient = groups::preset_group("Omega+(8,2)")?;
    let space = ambient.space.clone().ok_or_else(|| {
        Error::BadParameter("the kernel preset is expected to carry its space".into())
    })?;
    let f = &ambient.field;

    let nonsingular = space.nonsingular_points();
    let nonsingular_orbits = groups::point_orbit_partition(&ambient, &nonsingular)?;
    let nonsingular_transitive = nonsingular_orbits.len() == 1;

    let (family, _) = polar::solid_families(&space)?;
    let n = family.len();

    // Rank three of the ambient group on the family.
    let ambient_perms = groups::subspace_permutations(&ambient.generators, f, &family)?;
    let ambient_classes = groups::pair_orbits(&ambient_perms, n);
    let ambient_solid_subdegrees = suborbit_sizes(&ambient_classes, n);

    // The disjointness graph on the family is strongly regular with
    // integral eigenvalues.
    let ids: Vec<BTreeSet<u32>> = family
        .iter()
        .map(|s| space.point_ids_in(s).into_iter().collect())
        .collect();
    let disjoint = |a: usize, b: usize| a != b && ids[a].is_disjoint(&ids[b]);
    let adjacency: Vec<Vec<u32>> = (0..n)
        .map(|a| (0..n).filter(|&b| disjoint(a, b)).map(|b| b as u32).collect())
        .collect();
    let (k, l, lambda, mu) = incidence::strongly_regular_parameters(&adjacency)?;
    let disjointness_graph = constraints::rank3_from_graph(k, l, lambda, mu)?;

    // The stabilizer of the first nonsingular point, with its Schreier
    // generating set trimmed down to a handful of matrices.
    let schreier = groups::schreier_stabilizer(&ambient, &nonsingular[0])?;
    let stab_order = schreier.order.ok_or_else(|| {
        Error::BadParameter("the stabilizer order should follow from orbit–stabilizer".into())
    })?;
    let stabilizer = groups::trim_generators(&schreier, stab_order)?;

    let stab_perms = groups::subspace_permutations(&stabilizer.generators, f, &family)?;
    let stab_classes = groups::pair_orbits(&stab_perms, n);
    let stabilizer_subdegrees = suborbit_sizes(&stab_classes, n);

    // Identify the suborbits of the base solid: the disjointness suborbit
    // Δ and the split middle pair Γ₁ (size j), Γ₂ (size l − j).
    let mut class_of = vec![usize::MAX; n * n];
    for (c, orbit) in stab_classes.iter().enumerate() {
        for &s in orbit {
            class_of[s as usize] = c;
        }
    }
    let mut by_class: std::collections::BTreeMap<usize, Vec<usize>> = Default::default();
    for b in 1..n {
        by_class.entry(class_of[b]).or_default().push(b);
    }
    let mut disjoint_classes: Vec<Vec<usize>> = Vec::new();
    let mut split_parts: Vec<Vec<usize>> = Vec::new();
    for (_, members) in by_class {
        let all_disjoint = members.iter().all(|&b| disjoint(0, b));
        let none_disjoint = members.iter().all(|&b| !disjoint(0, b));
        if all_disjoint {
            disjoint_classes.push(members);
        } else if none_disjoint {
            split_parts.push(members);
        } else {
            return Err(Error::BadParameter(
                "a suborbit mixes disjoint and meeting solids".into(),
            ));
        }
    }
    if disjoint_classes.len() != 1 {
        return Err(Error::BadParameter(format!(
            "expected a single suborbit of disjoint solids, found {}",
            disjoint_classes.len()
        )));
    }
    if split_parts.len() != 2 {
        return Err(Error::BadParameter(format!(
            "expected the meeting solids to split into two suborbits, found {}",
            split_parts.len()
        )));
    }
    split_parts.sort_by_key(Vec::len);
    let (gamma1, gamma2) = (&split_parts[0], &split_parts[1]);
    let j = gamma1.len() as u64;

    // jt := |Γ₁(x) ∩ Δ(y)| for y ∈ Γ₂(x); by the suborbit structure this
    // count does not depend on the choice of y.
    let mut jt_value: Option<u64> = None;
    for &y in gamma2 {
        let count = gamma1.iter().filter(|&&z| disjoint(z, y)).count() as u64;
        match jt_value {
            None => jt_value = Some(count),
            Some(prev) if prev == count => {}
            Some(prev) => {
                return Err(Error::BadParameter(format!(
                    "the intersection count is not constant: {prev} vs {count}"
                )));
            }
        }
    }
    let jt = jt_value.ok_or_else(|| {
        Error::BadParameter("the larger split part is empty".into())
    })?;

    let split = constraints::rank4_feasible(&disjointness_graph, j, jt)?;

    // Transitivity on ordered pairs of disjoint solids, under the
    // stabilizer.
    let mut disjoint_states = 0u64;
    let mut hit = BTreeSet::new();
    for a in 0..n {
        for b in 0..n {
            if disjoint(a, b) {
                disjoint_states += 1;
                hit.insert(class_of[a * n + b]);
            }
        }
    }
    let disjoint_pairs_transitive = hit.len() == 1;
    let pair_stabilizer_order = if disjoint_pairs_transitive && stab_order % disjoint_states == 0
    {
        Some(stab_order / disjoint_states)
    } else {
        None
    };

    Ok(NonsingularStabilizerReport {
        ambient_order: ambient.order,
        nonsingular_point_count: nonsingular.len() as u64,
        nonsingular_transitive,
        ambient_solid_subdegrees,
        disjointness_graph,
        stabilizer_order: Some(stab_order),
        stabilizer_generator_count: stabilizer.generators.len() as u64,
        stabilizer_subdegrees,
        j,
        jt,
        split,
        disjoint_ordered_pairs: disjoint_states,
        disjoint_pairs_transitive,
        pair_stabilizer_order,
    })
}

/// Suborbit sizes at state 0: sizes of the pair classes restricted to
/// pairs (0, b), in increasing order.
fn suborbit_sizes(classes: &[Vec<u32>], n: usize) -> Vec<u64> {
    let mut sizes = Vec::new();
    for orbit in classes {
        let count = orbit.iter().filter(|&&s| (s as usize) < n).count() as u64;
        if count > 0 {
            sizes.push(count);
        }
    }
    sizes.sort_unstable();
    sizes
}

// ---------------------------------------------------------------------------
// Family swap under a single transvection
// ---------------------------------------------------------------------------

/// Whether the kernel generators preserve the two solid families while a
/// single orthogonal transvection (Dickson invariant one) swaps them.
#[derive(Clone, Debug, Serialize)]
pub struct FamilySwapReport {
    pub generator_count: u64,
    pub generators_preserve_families: bool,
    pub transvection_swaps_families: bool,
    pub transvection_dickson_zero: bool,
}

/// On the standard eight-dimensional plus-type space over GF(2): every
/// kernel generator maps a solid to a solid of the same family, while a
/// single orthogonal transvection maps it into the other family.
pub fn verify_family_swap() -> Result<FamilySwapReport> {
    let g = groups::preset_group("Omega+(8,2)")?;
    let space = g.space.clone().ok_or_else(|| {
        Error::BadParameter("the kernel preset is expected to carry its space".into())
    })?;
    let f = &g.field;
    let (fam_a, fam_b) = polar::solid_families(&space)?;
    let keys_a: BTreeSet<Vec<u64>> = fam_a.iter().map(|s| s.key(f)).collect();
    let keys_b: BTreeSet<Vec<u64>> = fam_b.iter().map(|s| s.key(f)).collect();
    let probe = &fam_a[0];

    let mut generators_preserve_families = true;
    for gen in &g.generators {
        let img = gen.apply_subspace(f, probe).key(f);
        if keys_b.contains(&img) {
            generators_preserve_families = false;
        } else if !keys_a.contains(&img) {
            return Err(Error::BadParameter(
                "a generator image is not a solid of either family".into(),
            ));
        }
    }

    let w = &space.nonsingular_points()[0];
    let t = groups::orthogonal_transvection(&space, &w.0);
    let t_map = SemilinearMap::new(f, t, 0)?;
    let img = t_map.apply_subspace(f, probe).key(f);
    let transvection_swaps_families = keys_b.contains(&img);
    if !transvection_swaps_families && !keys_a.contains(&img) {
        return Err(Error::BadParameter(
            "the transvection image is not a solid of either family".into(),
        ));
    }
    let transvection_dickson_zero = groups::dickson_in_omega(&space, &t_map.matrix)?;

    Ok(FamilySwapReport {
        generator_count: g.generators.len() as u64,
        generators_preserve_families,
        transvection_swaps_families,
        transvection_dickson_zero,
    })
}

// ---------------------------------------------------------------------------
// Blow-up versus semilinear extension on projective three-space
// ---------------------------------------------------------------------------

/// Antiflag and line-pair behaviour of the blown-up two-dimensional
/// linear group over GF(4) on the fifteen points of projective
/// three-space over GF(2), against its extension by the field
/// automorphism.
#[derive(Clone, Debug, Serialize)]
pub struct SemilinearReport {
    pub antiflag_total: u64,
    pub linear_antiflag_orbit: u64,
    pub linear_antiflag_transitive: bool,
    pub linear_line_criterion: bool,
    pub extended_antiflag_orbit: u64,
    pub extended_antiflag_transitive: bool,
    pub extended_line_criterion: bool,
    pub extended_order: Option<u64>,
    /// The line pair criterion agrees with antiflag transitivity for
    /// both the linear and the extended group.
    pub criterion_matches_antiflag: bool,
    pub block_count: u64,
    pub block_size: u64,
    pub blocks_are_subspaces: bool,
}

/// The blown-up special linear group of degree two over GF(4) acts on
/// the fifteen points of projective three-space over GF(2) with antiflag
/// orbit of size 60 out of 120; adjoining the field automorphism makes
/// the action antiflag transitive.  The scalar blocks of size three are
/// the point sets of one-dimensional GF(4)-subspaces.
pub fn verify_gamma_examples() -> Result<SemilinearReport> {
    let sl = groups::preset_group("SL(2,4)")?;
    let blown = groups::restrict_scalars_group(&sl)?;
    let extended = groups::preset_group("SL2_4_semilinear")?;

    let linear_af = groups::antiflag_transitive_linear(&blown)?;
    let extended_af = groups::antiflag_transitive_linear(&extended)?;
    let linear_lc = groups::line_two_transitive_criterion(&blown)?;
    let extended_lc = groups::line_two_transitive_criterion(&extended)?;

    let f2 = Field::new(2, 1)?;
    let points = linear::all_points(&f2, 4);
    let (block_count, block_size, blocks_are_subspaces) =
        match groups::imprimitivity_blocks(&blown, &points)? {
            groups::BlocksOutcome::Primitive => (0, 0, false),
            groups::BlocksOutcome::Imprimitive { block, system_sizes, block_is_subspace } => {
                (system_sizes.len() as u64, block.len() as u64, block_is_subspace)
            }
        };

    let criterion_matches_antiflag = linear_lc.pass == linear_af.transitive
        && extended_lc.pass == extended_af.transitive;

    Ok(SemilinearReport {
        antiflag_total: linear_af.total,
        linear_antiflag_orbit: linear_af.orbit,
        linear_antiflag_transitive: linear_af.transitive,
        linear_line_criterion: linear_lc.pass,
        extended_antiflag_orbit: extended_af.orbit,
        extended_antiflag_transitive: extended_af.transitive,
        extended_line_criterion: extended_lc.pass,
        extended_order: extended.order,
        criterion_matches_antiflag,
        block_count,
        block_size,
        blocks_are_subspaces,
    })
}

// ---------------------------------------------------------------------------

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn degree_nine_model_has_the_nine_distinguished_points() {
        let model = build_a9().unwrap();
        assert_eq!(model.special_points.len(), 9);
        assert_eq!(model.group.order, Some(181_440));
    }

    #[test]
    fn degree_nine_subgroup_is_transitive_on_solids_and_disjoint_pairs() {
        let report = verify_a9_antiflag_via_solids().unwrap();
        assert_eq!(report.group_order, Some(181_440));
        assert_eq!(report.special_point_count, 9);
        assert!(report.generators_dickson_zero);

        assert_eq!(report.subgroup.family_size, 135);
        assert!(report.subgroup.family_transitive);
        assert_eq!(report.subgroup.disjoint_ordered_pairs, 8640);
        assert!(report.subgroup.disjoint_pairs_transitive);
        assert_eq!(report.subgroup.pair_stabilizer_order, Some(21));

        assert_eq!(report.ambient.family_size, 135);
        assert!(report.ambient.family_transitive);
        assert_eq!(report.ambient.disjoint_ordered_pairs, 8640);
        assert!(report.ambient.disjoint_pairs_transitive);
        assert_eq!(report.ambient.pair_stabilizer_order, Some(20160));
    }

    #[test]
    fn nonsingular_stabilizer_splits_the_middle_suborbit_feasibly() {
        let report = verify_omega7_example().unwrap();
        assert_eq!(report.ambient_order, Some(174_182_400));
        assert_eq!(report.nonsingular_point_count, 120);
        assert!(report.nonsingular_transitive);
        assert_eq!(report.ambient_solid_subdegrees, vec![1, 64, 70]);

        let g = &report.disjointness_graph;
        assert_eq!((g.k, g.l, g.lambda, g.mu), (64, 70, 28, 32));
        assert_eq!((g.r, g.s), (4, -8));

        assert_eq!(report.stabilizer_order, Some(1_451_520));
        assert!(report.stabilizer_generator_count <= 12);
        assert_eq!(report.stabilizer_subdegrees, vec![1, 14, 56, 64]);
        assert_eq!(report.j, 14);
        assert_eq!(report.jt, 8);
        assert!(report.split.feasible);
        // The feasible assignment splits on the negative eigenvalue.
        assert!(report.split.assignments[1].pass);
        assert_eq!(report.split.assignments[1].split_on, -8);
        assert_eq!(report.split.assignments[0].first_violation, Some(0));

        assert_eq!(report.disjoint_ordered_pairs, 8640);
        assert!(report.disjoint_pairs_transitive);
        assert_eq!(report.pair_stabilizer_order, Some(168));
    }

    #[test]
    fn one_transvection_swaps_the_solid_families() {
        let report = verify_family_swap().unwrap();
        assert!(report.generators_preserve_families);
        assert!(report.transvection_swaps_families);
        assert!(!report.transvection_dickson_zero);
    }

    #[test]
    fn semilinear_extension_separates_the_antiflag_count() {
        let report = verify_gamma_examples().unwrap();
        assert_eq!(report.antiflag_total, 120);
        assert_eq!(report.linear_antiflag_orbit, 60);
        assert!(!report.linear_antiflag_transitive);
        assert!(!report.linear_line_criterion);
        assert_eq!(report.extended_antiflag_orbit, 120);
        assert!(report.extended_antiflag_transitive);
        assert!(report.extended_line_criterion);
        assert_eq!(report.extended_order, Some(120));
        assert!(report.criterion_matches_antiflag);
        assert_eq!(report.block_count, 5);
        assert_eq!(report.block_size, 3);
        assert!(report.blocks_are_subspaces);
    }
}
