//! Totally normal cellular stratified spaces, encoded combinatorially.
//!
//! The encoding is the face category: cells are objects, lifts of cell
//! structure maps are morphisms, and a dimension grading records cell
//! dimensions. Total normality is verified through necessary conditions
//! (dimension monotonicity, unique factorization of lifts, and — for closed
//! cells — purity, the diamond condition, and homological sphericity of
//! boundary posets).

use std::collections::BTreeMap;

use crate::category::{order_complex, poset_to_category, FiniteAcyclicCategory, Morphism};
use crate::delta::DeltaSet;
use crate::homology::delta_homology;
use crate::poset::{GradedPoset, Poset};
use crate::report::ValidationReport;
use crate::{Error, Result};

/// A finite acyclic category of cells and lifts, plus cell dimensions.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TotallyNormalCss {
    category: FiniteAcyclicCategory,
    dim: BTreeMap<String, usize>,
}

/// The boundary data of one cell λ: elements are the lifts `b : μ → λ`
/// (keyed by morphism id), ordered by factorization — `b_0 ≤ b_1` iff some
/// `c` satisfies `b_1 ∘ c = b_0`. Each element carries `dim μ`.
#[derive(Debug, Clone)]
pub struct BoundaryPoset {
    pub graded: GradedPoset,
    /// morphism id → source cell μ
    pub source: BTreeMap<String, String>,
}

impl TotallyNormalCss {
    pub fn new(
        category: FiniteAcyclicCategory,
        dim: BTreeMap<String, usize>,
    ) -> Result<TotallyNormalCss> {
        for o in category.objects() {
            if !dim.contains_key(o) {
                return Err(Error::Input(format!("cell {o:?} has no dimension")));
            }
        }
        for key in dim.keys() {
            if !category.objects().contains(key) {
                return Err(Error::Input(format!("dimension given for unknown cell {key:?}")));
            }
        }
        Ok(TotallyNormalCss { category, dim })
    }

    pub fn category(&self) -> &FiniteAcyclicCategory {
        &self.category
    }

    pub fn dim_map(&self) -> &BTreeMap<String, usize> {
        &self.dim
    }

    pub fn dim_of(&self, cell: &str) -> Option<usize> {
        self.dim.get(cell).copied()
    }

    pub fn max_dim(&self) -> usize {
        self.dim.values().copied().max().unwrap_or(0)
    }

    /// Cell count per dimension.
    pub fn cell_vector(&self) -> Vec<usize> {
        let mut f = vec![0usize; self.max_dim() + 1];
        for d in self.dim.values() {
            f[*d] += 1;
        }
        if self.dim.is_empty() {
            return vec![];
        }
        f
    }

    /// Σ_cells (−1)^dim.
    pub fn cell_euler_characteristic(&self) -> i64 {
        self.dim
            .values()
            .map(|&d| if d % 2 == 0 { 1i64 } else { -1i64 })
            .sum()
    }

    /// Validates the encoding. Always checked: the category axioms,
    /// dimension monotonicity of morphisms, unique factorization of lifts,
    /// and well-formedness of every boundary poset. With `closed_mode`, each
    /// n-cell's boundary poset must additionally look like a regular cell
    /// decomposition of S^{n-1}: maximal elements of dimension n−1 (purity),
    /// every (n−2)-element under exactly two (n−1)-elements (diamond), and
    /// the order complex must have the homology of S^{n-1}.
    pub fn validate(&self, closed_mode: bool) -> ValidationReport {
        let mut report = self.category.validate();
        if !report.is_empty() {
            return report;
        }
        for m in self.category.morphisms() {
            if self.dim[&m.src] >= self.dim[&m.dst] {
                report.push(
                    "dimension-monotonicity",
                    &m.id,
                    format!(
                        "lift {:?} goes from dim {} to dim {}",
                        m.id, self.dim[&m.src], self.dim[&m.dst]
                    ),
                );
            }
        }
        // Unique factorization: for lifts b0 : μ0 → λ and b1 : μ1 → λ, at
        // most one c : μ0 → μ1 satisfies b1 ∘ c = b0.
        for lambda in self.category.objects() {
            let incoming: Vec<&Morphism> = self
                .category
                .morphisms()
                .iter()
                .filter(|m| &m.dst == lambda)
                .collect();
            for b0 in &incoming {
                for b1 in &incoming {
                    if b0.src == b1.src {
                        continue;
                    }
                    let factors: Vec<String> = self
                        .category
                        .hom(&b0.src, &b1.src)
                        .into_iter()
                        .filter(|c| self.category.composite(&b1.id, c) == Some(&b0.id))
                        .collect();
                    if factors.len() > 1 {
                        report.push(
                            "unique-factorization",
                            lambda,
                            format!(
                                "{:?} ∘ c = {:?} for each c in {:?}",
                                b1.id, b0.id, factors
                            ),
                        );
                    }
                }
            }
        }
        if !report.is_empty() {
            return report.sorted();
        }
        for lambda in self.category.objects() {
            let bp = match self.boundary_poset(lambda) {
                Ok(bp) => bp,
                Err(e) => {
                    report.push("boundary-poset", lambda, format!("{e}"));
                    continue;
                }
            };
            if !closed_mode {
                continue;
            }
            let n = self.dim[lambda];
            if n == 0 {
                continue;
            }
            for m in bp.graded.poset.maximal_elements() {
                if bp.graded.dim_of(&m) != n - 1 {
                    report.push(
                        "purity",
                        lambda,
                        format!(
                            "maximal boundary element {:?} has dimension {}, expected {}",
                            m,
                            bp.graded.dim_of(&m),
                            n - 1
                        ),
                    );
                }
            }
            if n >= 2 {
                for e in bp.graded.poset.elements() {
                    if bp.graded.dim_of(e) != n - 2 {
                        continue;
                    }
                    let facets = bp
                        .graded
                        .poset
                        .above(e)
                        .into_iter()
                        .filter(|f| bp.graded.dim_of(f) == n - 1)
                        .count();
                    if facets != 2 {
                        report.push(
                            "diamond",
                            lambda,
                            format!(
                                "boundary element {:?} of dimension {} lies under {} facets",
                                e,
                                n - 2,
                                facets
                            ),
                        );
                    }
                }
            }
            match order_complex(&bp.graded.poset).and_then(|oc| delta_homology(&oc)) {
                Ok(h) => {
                    if !is_sphere_homology(&h.betti, &h.torsion, n - 1) {
                        report.push(
                            "sphericity",
                            lambda,
                            format!(
                                "boundary order complex has betti {:?}, expected S^{}",
                                h.betti,
                                n - 1
                            ),
                        );
                    }
                }
                Err(e) => report.push("sphericity", lambda, format!("{e}")),
            }
        }
        report.sorted()
    }

    fn require_valid(&self) -> Result<()> {
        self.validate(false).into_result()
    }

    /// Boundary poset of the cell λ.
    pub fn boundary_poset(&self, lambda: &str) -> Result<BoundaryPoset> {
        if !self.category.objects().contains(&lambda.to_string()) {
            return Err(Error::Input(format!("unknown cell {lambda:?}")));
        }
        let incoming: Vec<&Morphism> = self
            .category
            .morphisms()
            .iter()
            .filter(|m| m.dst == lambda)
            .collect();
        let elements: Vec<String> = incoming.iter().map(|m| m.id.clone()).collect();
        let mut pairs: Vec<(String, String)> = Vec::new();
        for b0 in &incoming {
            for b1 in &incoming {
                if b0.id == b1.id {
                    continue;
                }
                let factors = self
                    .category
                    .hom(&b0.src, &b1.src)
                    .into_iter()
                    .any(|c| self.category.composite(&b1.id, &c) == Some(&b0.id));
                if factors {
                    pairs.push((b0.id.clone(), b1.id.clone()));
                }
            }
        }
        let poset = Poset::new(&elements, &pairs)?;
        let mut dim = BTreeMap::new();
        let mut source = BTreeMap::new();
        for m in &incoming {
            dim.insert(m.id.clone(), self.dim[&m.src]);
            source.insert(m.id.clone(), m.src.clone());
        }
        Ok(BoundaryPoset {
            graded: GradedPoset::new(poset, dim)?,
            source,
        })
    }

    /// Barycentric subdivision: the Δ-set of nondegenerate chains of the
    /// face category (the classifying space, combinatorially).
    pub fn barycentric_subdivision(&self) -> Result<DeltaSet> {
        self.require_valid()?;
        self.category.nondegenerate_nerve()
    }
}

fn is_sphere_homology(betti: &[usize], torsion: &[Vec<num_bigint::BigInt>], dim: usize) -> bool {
    if torsion.iter().any(|t| !t.is_empty()) {
        return false;
    }
    let b = |i: usize| betti.get(i).copied().unwrap_or(0);
    if dim == 0 {
        return b(0) == 2 && (1..betti.len()).all(|i| b(i) == 0);
    }
    b(0) == 1
        && b(dim) == 1
        && (1..betti.len().max(dim + 1)).all(|i| i == dim || b(i) == 0)
}

/// The totally normal stratification carried by the realization of a Δ-set:
/// cells are the Δ-set cells, and the lifts `τ → σ` are the strictly
/// increasing maps `u : [m] → [n]` whose induced face composite sends σ
/// to τ. Composition is composition of injections.
pub fn css_of_deltaset(d: &DeltaSet) -> Result<TotallyNormalCss> {
    d.validate().into_result()?;
    let mut objects = Vec::new();
    let mut dim = BTreeMap::new();
    for (n, cells) in d.all_dims().iter().enumerate() {
        for id in cells {
            objects.push(id.clone());
            dim.insert(id.clone(), n);
        }
    }
    let mor_id = |sigma: &str, u: &[usize]| {
        let idx: Vec<String> = u.iter().map(|i| i.to_string()).collect();
        format!("{sigma}[{}]", idx.join(","))
    };
    // For σ of dimension n and an increasing proper u ⊂ {0..n}, apply the
    // missing face operators from the largest index down.
    let face_along = |sigma: &str, n: usize, u: &[usize]| -> String {
        let missing: Vec<usize> = (0..=n).filter(|i| !u.contains(i)).collect();
        let mut cur = sigma.to_string();
        for &c in missing.iter().rev() {
            cur = d.face(&cur, c).unwrap().to_string();
        }
        cur
    };
    let mut morphisms = Vec::new();
    let mut mor_data: Vec<(String, usize, Vec<usize>)> = Vec::new(); // (σ, n, u)
    for (n, cells) in d.all_dims().iter().enumerate() {
        if n == 0 {
            continue;
        }
        for sigma in cells {
            for u in proper_subsets(n) {
                let tau = face_along(sigma, n, &u);
                morphisms.push(Morphism {
                    id: mor_id(sigma, &u),
                    src: tau,
                    dst: sigma.clone(),
                });
                mor_data.push((sigma.clone(), n, u));
            }
        }
    }
    let mut compose = BTreeMap::new();
    // g : σ → ρ along v composed with f : τ → σ along u is τ → ρ along v∘u.
    for (rho, p, v) in &mor_data {
        // σ is the source of the morphism (ρ, v).
        let sigma = face_along(rho, *p, v);
        let n = v.len() - 1; // dim σ
        for (s2, _n2, u) in mor_data.iter().filter(|(s2, n2, _)| s2 == &sigma && *n2 == n) {
            debug_assert_eq!(s2, &sigma);
            let w: Vec<usize> = u.iter().map(|&i| v[i]).collect();
            compose.insert(
                (mor_id(rho, v), mor_id(&sigma, u)),
                mor_id(rho, &w),
            );
        }
    }
    let category = FiniteAcyclicCategory::new(objects, morphisms, compose)?;
    TotallyNormalCss::new(category, dim)
}

/// Nonempty proper subsets of {0, …, n} as sorted index vectors.
fn proper_subsets(n: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    for mask in 1u32..(1u32 << (n + 1)) - 1 {
        let subset: Vec<usize> = (0..=n).filter(|i| mask >> i & 1 == 1).collect();
        out.push(subset);
    }
    out.sort();
    out
}

/// A regular cellular stratified space from its graded face poset: exactly
/// one lift per strict pair, so the face category is the poset itself and
/// the subdivision is the order complex.
pub fn css_of_regular_poset(p: &Poset, dim: &BTreeMap<String, usize>) -> Result<TotallyNormalCss> {
    for (a, b) in p.strict_pairs() {
        let (da, db) = (
            dim.get(&a)
                .ok_or_else(|| Error::Input(format!("element {a:?} has no dimension")))?,
            dim.get(&b)
                .ok_or_else(|| Error::Input(format!("element {b:?} has no dimension")))?,
        );
        if da >= db {
            return Err(Error::Input(format!(
                "dimension must strictly increase along the order: {a:?} < {b:?} but dim {da} ≥ {db}"
            )));
        }
    }
    TotallyNormalCss::new(poset_to_category(p)?, dim.clone())
}

/// Built-in fixtures reproducing small stratified spaces used throughout the
/// tests: the minimal circle, the punctured torus and torus, the projective
/// plane, and an open n-cell with one boundary point.
pub fn fixture(name: &str) -> Result<TotallyNormalCss> {
    let m = |id: &str, src: &str, dst: &str| Morphism {
        id: id.into(),
        src: src.into(),
        dst: dst.into(),
    };
    let dims = |pairs: &[(&str, usize)]| -> BTreeMap<String, usize> {
        pairs.iter().map(|(k, v)| (k.to_string(), *v)).collect()
    };
    let compose_of = |entries: &[(&str, &str, &str)]| -> BTreeMap<(String, String), String> {
        entries
            .iter()
            .map(|(g, f, gf)| ((g.to_string(), f.to_string()), gf.to_string()))
            .collect()
    };
    match name {
        "circle_min" => {
            let cat = FiniteAcyclicCategory::new(
                vec!["e0".into(), "e1".into()],
                vec![m("b-", "e0", "e1"), m("b+", "e0", "e1")],
                BTreeMap::new(),
            )?;
            TotallyNormalCss::new(cat, dims(&[("e0", 0), ("e1", 1)]))
        }
        "interval_cell" => {
            let cat = FiniteAcyclicCategory::new(
                vec!["e0".into(), "en".into()],
                vec![m("b", "e0", "en")],
                BTreeMap::new(),
            )?;
            TotallyNormalCss::new(cat, dims(&[("e0", 0), ("en", 2)]))
        }
        "punctured_torus" => {
            let cat = FiniteAcyclicCategory::new(
                vec!["e01".into(), "e10".into(), "e11".into()],
                vec![
                    m("b01a", "e01", "e11"),
                    m("b01b", "e01", "e11"),
                    m("b10a", "e10", "e11"),
                    m("b10b", "e10", "e11"),
                ],
                BTreeMap::new(),
            )?;
            TotallyNormalCss::new(cat, dims(&[("e01", 1), ("e10", 1), ("e11", 2)]))
        }
        "torus" => {
            // The square domain of the 2-cell: b01a/b01b are the left/right
            // edges, b10a/b10b the bottom/top, k** the four corners.
            let cat = FiniteAcyclicCategory::new(
                vec!["e00".into(), "e01".into(), "e10".into(), "e11".into()],
                vec![
                    m("b01a", "e01", "e11"),
                    m("b01b", "e01", "e11"),
                    m("b10a", "e10", "e11"),
                    m("b10b", "e10", "e11"),
                    m("c01m", "e00", "e01"),
                    m("c01p", "e00", "e01"),
                    m("c10m", "e00", "e10"),
                    m("c10p", "e00", "e10"),
                    m("kmm", "e00", "e11"),
                    m("kmp", "e00", "e11"),
                    m("kpm", "e00", "e11"),
                    m("kpp", "e00", "e11"),
                ],
                compose_of(&[
                    ("b01a", "c01m", "kmm"),
                    ("b01a", "c01p", "kmp"),
                    ("b01b", "c01m", "kpm"),
                    ("b01b", "c01p", "kpp"),
                    ("b10a", "c10m", "kmm"),
                    ("b10a", "c10p", "kpm"),
                    ("b10b", "c10m", "kmp"),
                    ("b10b", "c10p", "kpp"),
                ]),
            )?;
            TotallyNormalCss::new(
                cat,
                dims(&[("e00", 0), ("e01", 1), ("e10", 1), ("e11", 2)]),
            )
        }
        "rp2" => {
            // Degree-2 attaching: the boundary circle of the 2-cell maps
            // twice around e1, splitting into two arcs t1, t2 and two
            // points p1, p2.
            let cat = FiniteAcyclicCategory::new(
                vec!["e0".into(), "e1".into(), "e2".into()],
                vec![
                    m("s-", "e0", "e1"),
                    m("s+", "e0", "e1"),
                    m("t1", "e1", "e2"),
                    m("t2", "e1", "e2"),
                    m("p1", "e0", "e2"),
                    m("p2", "e0", "e2"),
                ],
                compose_of(&[
                    ("t1", "s-", "p1"),
                    ("t1", "s+", "p2"),
                    ("t2", "s-", "p2"),
                    ("t2", "s+", "p1"),
                ]),
            )?;
            TotallyNormalCss::new(cat, dims(&[("e0", 0), ("e1", 1), ("e2", 2)]))
        }
        other => Err(Error::Input(format!("unknown fixture {other:?}"))),
    }
}

pub const FIXTURE_NAMES: [&str; 5] = [
    "circle_min",
    "interval_cell",
    "punctured_torus",
    "rp2",
    "torus",
];

#[cfg(test)]
mod tests {
    use super::*;
    use crate::homology::delta_homology;
    use crate::homology::HomologyResult;

    #[test]
    fn circle_fixture_closed_mode() {
        let s = fixture("circle_min").unwrap();
        assert!(s.validate(true).is_empty());
        let bp = s.boundary_poset("e1").unwrap();
        assert_eq!(bp.graded.poset.len(), 2);
        let oc = order_complex(&bp.graded.poset).unwrap();
        assert_eq!(oc.cell_counts(), vec![2]);
    }

    #[test]
    fn punctured_torus_modes() {
        let s = fixture("punctured_torus").unwrap();
        assert!(s.validate(false).is_empty());
        let closed = s.validate(true);
        assert!(closed.has_check("sphericity"));
        assert!(closed.names_cell("e11"));
    }

    #[test]
    fn torus_fixture_closed_mode() {
        let s = fixture("torus").unwrap();
        assert!(s.validate(true).is_empty());
        let bp = s.boundary_poset("e11").unwrap();
        assert_eq!(bp.graded.poset.len(), 8);
        let h = delta_homology(&order_complex(&bp.graded.poset).unwrap()).unwrap();
        assert_eq!(h, HomologyResult::from_parts(vec![1, 1], vec![vec![], vec![]]));
    }

    #[test]
    fn rp2_boundary_poset_is_square_circle() {
        let s = fixture("rp2").unwrap();
        assert!(s.validate(true).is_empty());
        let bp = s.boundary_poset("e2").unwrap();
        assert_eq!(bp.graded.poset.len(), 4);
        assert_eq!(bp.graded.f_vector(), vec![2, 2]);
        let h = delta_homology(&order_complex(&bp.graded.poset).unwrap()).unwrap();
        assert_eq!(h.betti, vec![1, 1]);
    }

    #[test]
    fn zero_cell_boundary_is_empty() {
        let s = fixture("rp2").unwrap();
        let bp = s.boundary_poset("e0").unwrap();
        assert!(bp.graded.poset.is_empty());
    }

    #[test]
    fn unique_factorization_violation_is_reported() {
        // Two distinct c's with b ∘ c = p.
        let cat = FiniteAcyclicCategory::new(
            vec!["a".into(), "m".into(), "z".into()],
            vec![
                Morphism {
                    id: "c1".into(),
                    src: "a".into(),
                    dst: "m".into(),
                },
                Morphism {
                    id: "c2".into(),
                    src: "a".into(),
                    dst: "m".into(),
                },
                Morphism {
                    id: "b".into(),
                    src: "m".into(),
                    dst: "z".into(),
                },
                Morphism {
                    id: "p".into(),
                    src: "a".into(),
                    dst: "z".into(),
                },
            ],
            [
                (("b".to_string(), "c1".to_string()), "p".to_string()),
                (("b".to_string(), "c2".to_string()), "p".to_string()),
            ]
            .into_iter()
            .collect(),
        )
        .unwrap();
        let s = TotallyNormalCss::new(
            cat,
            [("a", 0usize), ("m", 1), ("z", 2)]
                .into_iter()
                .map(|(k, v)| (k.to_string(), v))
                .collect(),
        )
        .unwrap();
        assert!(s.validate(false).has_check("unique-factorization"));
    }

    #[test]
    fn sd_of_fixtures() {
        let sd = fixture("circle_min").unwrap().barycentric_subdivision().unwrap();
        assert_eq!(sd.cell_counts(), vec![2, 2]);
        let sd = fixture("interval_cell").unwrap().barycentric_subdivision().unwrap();
        assert_eq!(sd.cell_counts(), vec![2, 1]);
        let sd = fixture("punctured_torus").unwrap().barycentric_subdivision().unwrap();
        assert_eq!(sd.cell_counts(), vec![3, 4]);
        let sd = fixture("torus").unwrap().barycentric_subdivision().unwrap();
        assert_eq!(sd.cell_counts(), vec![4, 12, 8]);
    }

    #[test]
    fn deltaset_round_trip_on_circle() {
        use std::collections::BTreeMap as Map;
        let mut faces = Map::new();
        faces.insert("e".to_string(), vec!["v".to_string(), "v".to_string()]);
        let circle = DeltaSet::new(vec![vec!["v".into()], vec!["e".into()]], faces);
        let css = css_of_deltaset(&circle).unwrap();
        assert!(css.validate(false).is_empty());
        assert_eq!(css.category().hom("v", "e").len(), 2);
        let sd = css.barycentric_subdivision().unwrap();
        assert_eq!(sd.cell_counts(), vec![2, 2]);
        let h = delta_homology(&sd).unwrap();
        assert_eq!(h.betti, vec![1, 1]);
    }

    #[test]
    fn regular_poset_route() {
        let p = Poset::new(&["a", "b"], &[("a", "b")]).unwrap();
        let dim: BTreeMap<String, usize> =
            [("a".to_string(), 0), ("b".to_string(), 1)].into_iter().collect();
        let css = css_of_regular_poset(&p, &dim).unwrap();
        assert_eq!(css.category().morphisms().len(), 1);
        let bad: BTreeMap<String, usize> =
            [("a".to_string(), 1), ("b".to_string(), 1)].into_iter().collect();
        assert!(css_of_regular_poset(&p, &bad).is_err());
    }
}
