//! Vectors, canonical subspaces, and projective points over GF(q).
//!
//! Every subspace is stored as a reduced row echelon basis with strictly
//! increasing pivot columns, so equal subspaces are bit-identical and can
//! key hash maps directly. Projective points are vectors normalized so the
//! first nonzero coordinate is 1; the canonical point order is
//! lexicographic on normalized coordinates (element-index order), which is
//! also the order of the integer codes produced by [`code`].
//!
//! Coordinates are field-element indices (see [`crate::field::El`]); all
//! arithmetic goes through a [`Field`] context.

use crate::field::{El, Field};
use crate::{Error, Result};
use std::collections::HashMap;

pub type Row = Vec<El>;

/// Canonical subspace: RREF basis rows, pivots strictly increasing.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct Subspace {
    pub n: usize,
    pub rows: Vec<Row>,
}

/// Normalized projective point: first nonzero coordinate is 1.
#[derive(Clone, PartialEq, Eq, Hash, Debug, PartialOrd, Ord)]
pub struct ProjPoint(pub Row);

pub fn add_rows(f: &Field, a: &[El], b: &[El]) -> Row {
    a.iter().zip(b).map(|(&x, &y)| f.add(x, y)).collect()
}

pub fn scale_row(f: &Field, a: &[El], c: El) -> Row {
    a.iter().map(|&x| f.mul(x, c)).collect()
}

/// a + c·b, the elimination step.
pub fn add_scaled(f: &Field, a: &[El], b: &[El], c: El) -> Row {
    a.iter().zip(b).map(|(&x, &y)| f.add(x, f.mul(c, y))).collect()
}

pub fn dot(f: &Field, a: &[El], b: &[El]) -> El {
    a.iter().zip(b).fold(0, |acc, (&x, &y)| f.add(acc, f.mul(x, y)))
}

/// Scales a nonzero vector so its first nonzero coordinate is 1.
pub fn normalize(f: &Field, v: &[El]) -> Result<ProjPoint> {
    let lead = v.iter().position(|&c| c != 0).ok_or(Error::ZeroVector)?;
    let inv = f.inv(v[lead]).expect("leading coordinate nonzero");
    Ok(ProjPoint(scale_row(f, v, inv)))
}

/// Integer code of a coordinate vector: base-q digits, first coordinate
/// most significant, so code order equals lexicographic coordinate order.
pub fn code(f: &Field, v: &[El]) -> u64 {
    v.iter().fold(0, |acc, &c| acc * f.q() + c as u64)
}

pub fn decode(f: &Field, mut value: u64, n: usize) -> Row {
    let mut v = vec![0 as El; n];
    for i in (0..n).rev() {
        v[i] = (value % f.q()) as El;
        value /= f.q();
    }
    v
}

impl Subspace {
    /// Canonical zero subspace of the ambient space.
    pub fn zero(n: usize) -> Subspace {
        Subspace { n, rows: Vec::new() }
    }

    pub fn full(f: &Field, n: usize) -> Subspace {
        let mut rows = Vec::with_capacity(n);
        for i in 0..n {
            let mut row = vec![0 as El; n];
            row[i] = f.one();
            rows.push(row);
        }
        Subspace { n, rows }
    }

    /// Canonicalizes an arbitrary spanning set.
    pub fn from_rows(f: &Field, rows: Vec<Row>, n: usize) -> Subspace {
        Subspace { n, rows: rref(f, rows, n) }
    }

    pub fn dim(&self) -> usize {
        self.rows.len()
    }

    /// Membership test by reduction against the RREF basis.
    pub fn contains(&self, f: &Field, v: &[El]) -> bool {
        let mut v = v.to_vec();
        for row in &self.rows {
            let pivot = row.iter().position(|&c| c == f.one()).expect("RREF row");
            if v[pivot] != 0 {
                let c = f.neg(v[pivot]);
                v = add_scaled(f, &v, row, c);
            }
        }
        v.iter().all(|&c| c == 0)
    }

    pub fn contains_point(&self, f: &Field, p: &ProjPoint) -> bool {
        self.contains(f, &p.0)
    }

    pub fn is_subspace_of(&self, f: &Field, other: &Subspace) -> bool {
        self.rows.iter().all(|r| other.contains(f, r))
    }

    /// Canonical key: row codes in order.
    pub fn key(&self, f: &Field) -> Vec<u64> {
        self.rows.iter().map(|r| code(f, r)).collect()
    }
}

/// Reduced row echelon form; returns the canonical basis rows.
pub fn rref(f: &Field, mut rows: Vec<Row>, n: usize) -> Vec<Row> {
    debug_assert!(rows.iter().all(|r| r.len() == n));
    let mut out: Vec<Row> = Vec::new();
    let mut used = 0;
    for col in 0..n {
        let Some(found) = (used..rows.len()).find(|&i| rows[i][col] != 0) else {
            continue;
        };
        rows.swap(used, found);
        let inv = f.inv(rows[used][col]).expect("pivot nonzero");
        rows[used] = scale_row(f, &rows[used], inv);
        let pivot_row = rows[used].clone();
        for (i, row) in rows.iter_mut().enumerate() {
            if i != used && row[col] != 0 {
                let c = f.neg(row[col]);
                *row = add_scaled(f, row, &pivot_row, c);
            }
        }
        for row in &mut out {
            if row[col] != 0 {
                let c = f.neg(row[col]);
                *row = add_scaled(f, row, &pivot_row, c);
            }
        }
        out.push(pivot_row);
        used += 1;
        if used == rows.len() {
            break;
        }
    }
    out
}

/// Right null space {v : Σ_j rows[i][j]·v[j] = 0 for all i}.
pub fn kernel(f: &Field, rows: Vec<Row>, n: usize) -> Subspace {
    let reduced = rref(f, rows, n);
    let pivots: Vec<usize> = reduced
        .iter()
        .map(|row| row.iter().position(|&c| c != 0).expect("RREF row nonzero"))
        .collect();
    let mut basis = Vec::new();
    for j in 0..n {
        if pivots.contains(&j) {
            continue;
        }
        let mut v = vec![0 as El; n];
        v[j] = f.one();
        for (row, &pi) in reduced.iter().zip(&pivots) {
            v[pi] = f.neg(row[j]);
        }
        basis.push(v);
    }
    Subspace::from_rows(f, basis, n)
}

pub fn identity_matrix(f: &Field, n: usize) -> Vec<Row> {
    (0..n)
        .map(|i| {
            let mut row = vec![0 as El; n];
            row[i] = f.one();
            row
        })
        .collect()
}

/// Row vector times matrix: (v·M)ⱼ = Σᵢ vᵢ·M[i][j].
pub fn apply_row(f: &Field, v: &[El], m: &[Row]) -> Row {
    let n = m[0].len();
    let mut out = vec![0 as El; n];
    for (i, &vi) in v.iter().enumerate() {
        if vi == 0 {
            continue;
        }
        for (j, &mij) in m[i].iter().enumerate() {
            out[j] = f.add(out[j], f.mul(vi, mij));
        }
    }
    out
}

pub fn mat_mul(f: &Field, a: &[Row], b: &[Row]) -> Vec<Row> {
    a.iter().map(|row| apply_row(f, row, b)).collect()
}

/// Inverse by Gauss-Jordan on [A | I].
pub fn mat_inv(f: &Field, a: &[Row]) -> Result<Vec<Row>> {
    let n = a.len();
    let mut work: Vec<Row> = a
        .iter()
        .enumerate()
        .map(|(i, row)| {
            let mut wide = row.clone();
            wide.extend(std::iter::repeat(0 as El).take(n));
            wide[n + i] = f.one();
            wide
        })
        .collect();
    for col in 0..n {
        let pivot = (col..n)
            .find(|&r| work[r][col] != 0)
            .ok_or_else(|| Error::BadParameter("matrix is singular".into()))?;
        work.swap(col, pivot);
        let inv = f.inv(work[col][col]).expect("pivot nonzero");
        work[col] = scale_row(f, &work[col], inv);
        for r in 0..n {
            if r != col && work[r][col] != 0 {
                let c = f.neg(work[r][col]);
                work[r] = add_scaled(f, &work[r], &work[col], c);
            }
        }
    }
    Ok(work.into_iter().map(|row| row[n..].to_vec()).collect())
}

/// Join of two subspaces.
pub fn sum(f: &Field, a: &Subspace, b: &Subspace) -> Result<Subspace> {
    if a.n != b.n {
        return Err(Error::AmbientMismatch(a.n, b.n));
    }
    let rows: Vec<Row> = a.rows.iter().chain(&b.rows).cloned().collect();
    Ok(Subspace::from_rows(f, rows, a.n))
}

/// Span of a list of vectors.
pub fn span_of(f: &Field, vectors: &[Row], n: usize) -> Subspace {
    Subspace::from_rows(f, vectors.to_vec(), n)
}

/// Meet of two subspaces (Zassenhaus: RREF of [A|A; B|0], rows with zero
/// left block carry the intersection in their right block).
pub fn intersect(f: &Field, a: &Subspace, b: &Subspace) -> Result<Subspace> {
    if a.n != b.n {
        return Err(Error::AmbientMismatch(a.n, b.n));
    }
    let n = a.n;
    let mut wide: Vec<Row> = Vec::with_capacity(a.dim() + b.dim());
    for r in &a.rows {
        let mut w = r.clone();
        w.extend_from_slice(r);
        wide.push(w);
    }
    for r in &b.rows {
        let mut w = r.clone();
        w.extend(std::iter::repeat(0).take(n));
        wide.push(w);
    }
    let reduced = rref(f, wide, 2 * n);
    let rows: Vec<Row> = reduced
        .into_iter()
        .filter(|w| w[..n].iter().all(|&c| c == 0))
        .map(|w| w[n..].to_vec())
        .collect();
    Ok(Subspace::from_rows(f, rows, n))
}

/// All points of a subspace in canonical (lexicographic) order.
pub fn enumerate_points(f: &Field, s: &Subspace) -> Vec<ProjPoint> {
    let mut out = Vec::new();
    let k = s.dim();
    for lead in 0..k {
        // Combination c_lead = 1, later coefficients free: already
        // normalized because the RREF leading row starts with pivot 1.
        let free = k - lead - 1;
        let combos = f.q().pow(free as u32);
        for m in 0..combos {
            let mut v = s.rows[lead].clone();
            let mut rest = m;
            for j in (lead + 1)..k {
                let c = (rest % f.q()) as El;
                rest /= f.q();
                if c != 0 {
                    v = add_scaled(f, &v, &s.rows[j], c);
                }
            }
            out.push(ProjPoint(v));
        }
    }
    out.sort_by_key(|p| code(f, &p.0));
    out
}

/// All points of the full projective space PG(n−1, q), canonical order.
pub fn all_points(f: &Field, n: usize) -> Vec<ProjPoint> {
    enumerate_points(f, &Subspace::full(f, n))
}

/// Canonical point list plus a code→id map; point ids used across the
/// crate are positions in this enumeration.
pub struct PointIndex {
    pub points: Vec<ProjPoint>,
    map: HashMap<u64, u32>,
}

impl PointIndex {
    pub fn new(f: &Field, n: usize) -> PointIndex {
        Self::from_points(f, all_points(f, n))
    }

    pub fn from_points(f: &Field, points: Vec<ProjPoint>) -> PointIndex {
        let map = points.iter().enumerate().map(|(i, p)| (code(f, &p.0), i as u32)).collect();
        PointIndex { points, map }
    }

    pub fn len(&self) -> usize {
        self.points.len()
    }

    pub fn is_empty(&self) -> bool {
        self.points.is_empty()
    }

    pub fn id_of_code(&self, code: u64) -> Option<u32> {
        self.map.get(&code).copied()
    }

    pub fn id(&self, f: &Field, p: &ProjPoint) -> Option<u32> {
        self.id_of_code(code(f, &p.0))
    }
}

/// Hyperplanes as normalized dual vectors, canonical order. A point lies
/// on the hyperplane of dual vector a iff a·x = 0.
pub fn hyperplanes(f: &Field, n: usize) -> Vec<ProjPoint> {
    all_points(f, n)
}

pub fn on_hyperplane(f: &Field, point: &ProjPoint, dual: &ProjPoint) -> bool {
    dot(f, &point.0, &dual.0) == 0
}

/// Hyperplanes through a point, canonical order.
pub fn hyperplanes_through(f: &Field, n: usize, point: &ProjPoint) -> Vec<ProjPoint> {
    hyperplanes(f, n).into_iter().filter(|h| on_hyperplane(f, point, h)).collect()
}

/// All (point, hyperplane) pairs with the point off the hyperplane, as
/// (point id, hyperplane id) into the canonical enumerations.
pub fn antiflags(f: &Field, n: usize) -> Vec<(u32, u32)> {
    let points = all_points(f, n);
    let duals = hyperplanes(f, n);
    let mut out = Vec::new();
    for (i, p) in points.iter().enumerate() {
        for (j, h) in duals.iter().enumerate() {
            if !on_hyperplane(f, p, h) {
                out.push((i as u32, j as u32));
            }
        }
    }
    out
}

/// Every subspace of GF(q)^n, canonical order by (dim, row codes).
/// Level-by-level closure; intended for small spaces only.
pub fn all_subspaces(f: &Field, n: usize) -> Vec<Subspace> {
    let points = all_points(f, n);
    let mut by_level: Vec<Vec<Subspace>> = vec![vec![Subspace::zero(n)]];
    for k in 0..n {
        let mut next: HashMap<Vec<u64>, Subspace> = HashMap::new();
        for s in &by_level[k] {
            for p in &points {
                if !s.contains_point(f, p) {
                    let mut rows = s.rows.clone();
                    rows.push(p.0.clone());
                    let bigger = Subspace::from_rows(f, rows, n);
                    next.entry(bigger.key(f)).or_insert(bigger);
                }
            }
        }
        if next.is_empty() {
            break;
        }
        let mut level: Vec<Subspace> = next.into_values().collect();
        level.sort_by_key(|s| s.key(f));
        by_level.push(level);
    }
    by_level.into_iter().flatten().collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn gf(q: u64) -> Field {
        match q {
            2 => Field::new(2, 1).unwrap(),
            3 => Field::new(3, 1).unwrap(),
            4 => Field::new(2, 2).unwrap(),
            _ => panic!("unexpected field"),
        }
    }

    #[test]
    fn rref_identity_is_full_space() {
        let f = gf(2);
        let s = Subspace::full(&f, 3);
        let again = Subspace::from_rows(&f, s.rows.clone(), 3);
        assert_eq!(s, again);
        assert_eq!(s.dim(), 3);
    }

    #[test]
    fn rref_dependent_rows_drop_rank() {
        let f = gf(2);
        let rows = vec![vec![1, 1, 0], vec![0, 1, 1], vec![1, 0, 1]];
        let s = Subspace::from_rows(&f, rows, 3);
        assert_eq!(s.dim(), 2);
    }

    #[test]
    fn lattice_identities() {
        let f = gf(2);
        let a = Subspace::from_rows(&f, vec![vec![1, 0, 1, 1], vec![0, 1, 1, 0]], 4);
        assert_eq!(sum(&f, &a, &a).unwrap(), a);
        assert_eq!(intersect(&f, &a, &a).unwrap(), a);
    }

    #[test]
    fn sum_of_two_points_is_a_line() {
        let f = gf(2);
        let p = Subspace::from_rows(&f, vec![vec![1, 0, 0, 0]], 4);
        let q = Subspace::from_rows(&f, vec![vec![0, 1, 0, 1]], 4);
        let line = sum(&f, &p, &q).unwrap();
        assert_eq!(line.dim(), 2);
        assert_eq!(enumerate_points(&f, &line).len(), 3);
    }

    #[test]
    fn modular_law_exhaustive_gf2_dim4() {
        let f = gf(2);
        let subs = all_subspaces(&f, 4);
        assert_eq!(subs.len(), 67);
        for a in &subs {
            for b in &subs {
                let s = sum(&f, a, b).unwrap();
                let i = intersect(&f, a, b).unwrap();
                assert_eq!(a.dim() + b.dim(), s.dim() + i.dim());
                assert!(i.is_subspace_of(&f, a) && i.is_subspace_of(&f, b));
                assert!(a.is_subspace_of(&f, &s) && b.is_subspace_of(&f, &s));
            }
        }
    }

    #[test]
    fn point_counts() {
        let f2 = gf(2);
        assert_eq!(all_points(&f2, 3).len(), 7);
        assert_eq!(all_points(&f2, 4).len(), 15);
        let f4 = gf(4);
        let line = Subspace::from_rows(&f4, vec![vec![1, 0, 2], vec![0, 1, 3]], 3);
        assert_eq!(enumerate_points(&f4, &line).len(), 5);
    }

    #[test]
    fn point_enumeration_complete_and_sorted() {
        for q in [2, 3, 4] {
            let f = gf(q);
            for n in 1..=4usize {
                let pts = enumerate_points(&f, &Subspace::full(&f, n));
                let expect = (q.pow(n as u32) - 1) / (q - 1);
                assert_eq!(pts.len(), expect as usize);
                let codes: Vec<u64> = pts.iter().map(|p| code(&f, &p.0)).collect();
                let mut sorted = codes.clone();
                sorted.sort_unstable();
                sorted.dedup();
                assert_eq!(codes, sorted);
            }
        }
    }

    #[test]
    fn antiflag_counts() {
        let f = gf(2);
        assert_eq!(antiflags(&f, 4).len(), 120);
        assert_eq!(antiflags(&f, 3).len(), 28);
        // n = 2: each point misses exactly q hyperplanes.
        for q in [2, 3, 4] {
            let f = gf(q);
            let pts = all_points(&f, 2);
            for p in &pts {
                let missed =
                    hyperplanes(&f, 2).iter().filter(|h| !on_hyperplane(&f, p, h)).count();
                assert_eq!(missed as u64, q);
            }
        }
    }

    #[test]
    fn intersection_via_kernel_matches_membership() {
        let f = gf(3);
        let a = Subspace::from_rows(&f, vec![vec![1, 0, 2, 1], vec![0, 1, 1, 0]], 4);
        let b = Subspace::from_rows(&f, vec![vec![1, 1, 0, 1], vec![0, 0, 1, 2]], 4);
        let i = intersect(&f, &a, &b).unwrap();
        for p in enumerate_points(&f, &Subspace::full(&f, 4)) {
            let in_both = a.contains_point(&f, &p) && b.contains_point(&f, &p);
            assert_eq!(i.contains_point(&f, &p), in_both);
        }
    }
}
