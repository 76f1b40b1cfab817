//! Finite acyclic categories with explicit composition tables.
//!
//! Identities are implicit and never stored: the morphism list and the
//! composition table concern non-identity morphisms only, which matches the
//! nondegenerate nerve directly.

use std::collections::BTreeMap;

use crate::delta::DeltaSet;
use crate::poset::Poset;
use crate::report::ValidationReport;
use crate::{Error, Result};

/// A non-identity morphism.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord)]
pub struct Morphism {
    pub id: String,
    pub src: String,
    pub dst: String,
}

/// A finite category presented by objects, non-identity morphisms, and a
/// total composition table on composable non-identity pairs.
///
/// Construction rejects structurally broken data (duplicate ids, dangling
/// references); the categorical axioms are checked by [`validate`], which
/// reports every violation rather than failing fast.
///
/// [`validate`]: FiniteAcyclicCategory::validate
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FiniteAcyclicCategory {
    objects: Vec<String>,
    morphisms: Vec<Morphism>,
    /// (g, f) → g∘f, keyed by morphism ids, for pairs with src(g) = dst(f).
    compose: BTreeMap<(String, String), String>,
    mor_index: BTreeMap<String, usize>,
    /// Morphism ids leaving each object, sorted.
    by_src: BTreeMap<String, Vec<String>>,
}

impl FiniteAcyclicCategory {
    pub fn new(
        objects: Vec<String>,
        morphisms: Vec<Morphism>,
        compose: BTreeMap<(String, String), String>,
    ) -> Result<FiniteAcyclicCategory> {
        let mut objects = objects;
        objects.sort();
        for w in objects.windows(2) {
            if w[0] == w[1] {
                return Err(Error::Input(format!("duplicate object id {:?}", w[0])));
            }
        }
        let mut morphisms = morphisms;
        morphisms.sort_by(|a, b| a.id.cmp(&b.id));
        for w in morphisms.windows(2) {
            if w[0].id == w[1].id {
                return Err(Error::Input(format!("duplicate morphism id {:?}", w[0].id)));
            }
        }
        for m in &morphisms {
            if objects.contains(&m.id) {
                return Err(Error::Input(format!(
                    "id {:?} used for both an object and a morphism",
                    m.id
                )));
            }
            for end in [&m.src, &m.dst] {
                if !objects.contains(end) {
                    return Err(Error::Input(format!(
                        "morphism {:?} references unknown object {:?}",
                        m.id, end
                    )));
                }
            }
        }
        let mor_index: BTreeMap<String, usize> = morphisms
            .iter()
            .enumerate()
            .map(|(i, m)| (m.id.clone(), i))
            .collect();
        for ((g, f), gf) in &compose {
            for id in [g, f, gf] {
                if !mor_index.contains_key(id) {
                    return Err(Error::Input(format!(
                        "composition table references unknown morphism {id:?}"
                    )));
                }
            }
        }
        let mut by_src: BTreeMap<String, Vec<String>> =
            objects.iter().map(|o| (o.clone(), Vec::new())).collect();
        for m in &morphisms {
            by_src.get_mut(&m.src).unwrap().push(m.id.clone());
        }
        Ok(FiniteAcyclicCategory {
            objects,
            morphisms,
            compose,
            mor_index,
            by_src,
        })
    }

    pub fn objects(&self) -> &[String] {
        &self.objects
    }

    pub fn morphisms(&self) -> &[Morphism] {
        &self.morphisms
    }

    pub fn morphism(&self, id: &str) -> Option<&Morphism> {
        self.mor_index.get(id).map(|&i| &self.morphisms[i])
    }

    pub fn compose_table(&self) -> &BTreeMap<(String, String), String> {
        &self.compose
    }

    /// g∘f for composable non-identity morphisms, if tabulated.
    pub fn composite(&self, g: &str, f: &str) -> Option<&String> {
        self.compose.get(&(g.to_string(), f.to_string()))
    }

    /// Sorted ids of morphisms from `src` to `dst` (identities excluded).
    pub fn hom(&self, src: &str, dst: &str) -> Vec<String> {
        self.by_src
            .get(src)
            .map(|ms| {
                ms.iter()
                    .filter(|id| self.morphism(id).unwrap().dst == dst)
                    .cloned()
                    .collect()
            })
            .unwrap_or_default()
    }

    pub fn morphisms_from(&self, src: &str) -> &[String] {
        self.by_src.get(src).map(|v| v.as_slice()).unwrap_or(&[])
    }

    /// Checks the axioms of a finite acyclic category, reporting every
    /// violation: acyclicity (no morphisms both ways between distinct
    /// objects, no non-identity endomorphisms), totality and closure of the
    /// composition table, and associativity on all composable triples.
    pub fn validate(&self) -> ValidationReport {
        let mut report = ValidationReport::new();
        for m in &self.morphisms {
            if m.src == m.dst {
                report.push(
                    "acyclicity",
                    &m.id,
                    format!("non-identity endomorphism on object {:?}", m.src),
                );
            }
        }
        for (i, x) in self.objects.iter().enumerate() {
            for y in &self.objects[i + 1..] {
                if !self.hom(x, y).is_empty() && !self.hom(y, x).is_empty() {
                    report.push(
                        "acyclicity",
                        x,
                        format!("Hom({x:?},{y:?}) and Hom({y:?},{x:?}) both nonempty"),
                    );
                }
            }
        }
        // Composition: defined exactly on composable pairs, lands in the
        // stated hom set.
        for g in &self.morphisms {
            for f in &self.morphisms {
                let key = (g.id.clone(), f.id.clone());
                let composable = f.dst == g.src;
                match (composable, self.compose.get(&key)) {
                    (true, None) => report.push(
                        "composition-missing",
                        &g.id,
                        format!("no composite for {:?} ∘ {:?}", g.id, f.id),
                    ),
                    (true, Some(gf)) => {
                        let m = self.morphism(gf).unwrap();
                        if m.src != f.src || m.dst != g.dst {
                            report.push(
                                "composition-endpoints",
                                gf,
                                format!(
                                    "{:?} ∘ {:?} = {:?} should go {:?} → {:?}, goes {:?} → {:?}",
                                    g.id, f.id, gf, f.src, g.dst, m.src, m.dst
                                ),
                            );
                        }
                    }
                    (false, Some(_)) => report.push(
                        "composition-spurious",
                        &g.id,
                        format!("table entry for non-composable pair ({:?}, {:?})", g.id, f.id),
                    ),
                    (false, None) => {}
                }
            }
        }
        // Associativity on every composable triple h ∘ g ∘ f.
        for h in &self.morphisms {
            for g in &self.morphisms {
                if g.dst != h.src {
                    continue;
                }
                for f in &self.morphisms {
                    if f.dst != g.src {
                        continue;
                    }
                    let hg = self.composite(&h.id, &g.id);
                    let gf = self.composite(&g.id, &f.id);
                    if let (Some(hg), Some(gf)) = (hg, gf) {
                        let left = self.composite(hg, &f.id);
                        let right = self.composite(&h.id, gf);
                        if left != right || left.is_none() {
                            report.push(
                                "associativity",
                                &g.id,
                                format!(
                                    "({:?}∘{:?})∘{:?} = {:?} but {:?}∘({:?}∘{:?}) = {:?}",
                                    h.id, g.id, f.id, left, h.id, g.id, f.id, right
                                ),
                            );
                        }
                    }
                }
            }
        }
        report.sorted()
    }

    fn require_valid(&self) -> Result<()> {
        self.validate().into_result()
    }

    /// The underlying poset: `x ≤ y` iff `Hom(x, y) ≠ ∅` or `x = y`.
    pub fn underlying_poset(&self) -> Result<Poset> {
        self.require_valid()?;
        let pairs: Vec<(String, String)> = self
            .morphisms
            .iter()
            .map(|m| (m.src.clone(), m.dst.clone()))
            .collect();
        Poset::new(&self.objects, &pairs)
    }

    /// Nondegenerate nerve as a Δ-set: n-cells are composable chains of n
    /// non-identity morphisms, 0-cells are objects. Face operators drop an
    /// end of the chain or compose at an interior object.
    pub fn nondegenerate_nerve(&self) -> Result<DeltaSet> {
        self.require_valid()?;
        let mut cells: Vec<Vec<String>> = vec![self.objects.clone()];
        let mut faces: BTreeMap<String, Vec<String>> = BTreeMap::new();
        // Chains as morphism-id sequences, grown one morphism at a time.
        let mut current: Vec<Vec<&str>> = self
            .morphisms
            .iter()
            .map(|m| vec![m.id.as_str()])
            .collect();
        while !current.is_empty() {
            let n = current[0].len();
            let mut ids: Vec<String> = Vec::with_capacity(current.len());
            for chain in &current {
                let id = chain.join("|");
                let mut fs = Vec::with_capacity(n + 1);
                for i in 0..=n {
                    fs.push(self.chain_face(chain, i)?);
                }
                faces.insert(id.clone(), fs);
                ids.push(id);
            }
            ids.sort();
            cells.push(ids);
            let mut next: Vec<Vec<&str>> = Vec::new();
            for chain in &current {
                let last = self.morphism(chain[chain.len() - 1]).unwrap();
                for g in self.morphisms_from(&last.dst) {
                    let mut longer = chain.clone();
                    longer.push(g.as_str());
                    next.push(longer);
                }
            }
            current = next;
        }
        Ok(DeltaSet::new(cells, faces))
    }

    /// `d_i` of the chain `(f_1, …, f_n)`: drop the source object for
    /// `i = 0`, the target for `i = n`, otherwise compose `f_{i+1} ∘ f_i`.
    fn chain_face(&self, chain: &[&str], i: usize) -> Result<String> {
        let n = chain.len();
        if n == 1 {
            let m = self.morphism(chain[0]).unwrap();
            return Ok(if i == 0 { m.dst.clone() } else { m.src.clone() });
        }
        let parts: Vec<&str> = if i == 0 {
            chain[1..].to_vec()
        } else if i == n {
            chain[..n - 1].to_vec()
        } else {
            let composed = self.composite(chain[i], chain[i - 1]).ok_or_else(|| {
                Error::Internal(format!(
                    "missing composite {:?} ∘ {:?} in a validated category",
                    chain[i],
                    chain[i - 1]
                ))
            })?;
            let mut parts = chain[..i - 1].to_vec();
            parts.push(composed.as_str());
            parts.extend_from_slice(&chain[i + 1..]);
            parts
        };
        Ok(parts.join("|"))
    }
}

/// A composable chain of non-identity morphisms; length 0 chains are single
/// objects. Used when reasoning about nerve cells explicitly.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Chain {
    pub objects: Vec<String>,
    pub morphisms: Vec<String>,
}

impl Chain {
    /// Reconstructs the chain named by a nerve cell id.
    pub fn from_nerve_cell(cat: &FiniteAcyclicCategory, dim: usize, id: &str) -> Result<Chain> {
        if dim == 0 {
            if !cat.objects().contains(&id.to_string()) {
                return Err(Error::Input(format!("unknown object {id:?}")));
            }
            return Ok(Chain {
                objects: vec![id.to_string()],
                morphisms: vec![],
            });
        }
        let ids: Vec<&str> = id.split('|').collect();
        if ids.len() != dim {
            return Err(Error::Input(format!(
                "cell id {id:?} does not name a {dim}-chain"
            )));
        }
        let mut objects = Vec::with_capacity(dim + 1);
        let mut morphisms = Vec::with_capacity(dim);
        for (k, mid) in ids.iter().enumerate() {
            let m = cat
                .morphism(mid)
                .ok_or_else(|| Error::Input(format!("unknown morphism {mid:?}")))?;
            if k == 0 {
                objects.push(m.src.clone());
            } else if objects[k] != m.src {
                return Err(Error::Input(format!("chain {id:?} is not composable")));
            }
            objects.push(m.dst.clone());
            morphisms.push(m.id.clone());
        }
        Ok(Chain { objects, morphisms })
    }
}

/// The category freely generated by a poset: exactly one morphism `a → b`
/// per strict pair `a < b`, named `a<b`, with the forced composition.
pub fn poset_to_category(p: &Poset) -> Result<FiniteAcyclicCategory> {
    let mut morphisms = Vec::new();
    let mut compose = BTreeMap::new();
    let name = |a: &str, b: &str| format!("{a}<{b}");
    for (a, b) in p.strict_pairs() {
        morphisms.push(Morphism {
            id: name(&a, &b),
            src: a,
            dst: b,
        });
    }
    for (a, b) in p.strict_pairs() {
        for c in p.above(&b) {
            compose.insert((name(&b, &c), name(&a, &b)), name(&a, &c));
        }
    }
    FiniteAcyclicCategory::new(p.elements().to_vec(), morphisms, compose)
}

/// Order complex of a poset: the Δ-set whose n-cells are the strict chains
/// `a_0 < … < a_n`. Enumerated directly; agrees with the nondegenerate nerve
/// of `poset_to_category` (the two routes cross-check each other in tests).
pub fn order_complex(p: &Poset) -> Result<DeltaSet> {
    let mut cells: Vec<Vec<String>> = vec![p.elements().to_vec()];
    let mut faces: BTreeMap<String, Vec<String>> = BTreeMap::new();
    let mut current: Vec<Vec<String>> = p.elements().iter().map(|e| vec![e.clone()]).collect();
    loop {
        let mut next: Vec<Vec<String>> = Vec::new();
        for chain in &current {
            for b in p.above(chain.last().unwrap()) {
                let mut longer = chain.clone();
                longer.push(b);
                next.push(longer);
            }
        }
        if next.is_empty() {
            break;
        }
        let mut ids = Vec::with_capacity(next.len());
        for chain in &next {
            let id = chain.join("|");
            let mut fs = Vec::with_capacity(chain.len());
            for i in 0..chain.len() {
                let mut sub = chain.clone();
                sub.remove(i);
                fs.push(sub.join("|"));
            }
            faces.insert(id.clone(), fs);
            ids.push(id);
        }
        ids.sort();
        cells.push(ids);
        current = next;
    }
    Ok(DeltaSet::new(cells, faces))
}

#[cfg(test)]
mod tests {
    use super::*;

    pub(crate) fn circle_category() -> FiniteAcyclicCategory {
        FiniteAcyclicCategory::new(
            vec!["e0".into(), "e1".into()],
            vec![
                Morphism {
                    id: "b-".into(),
                    src: "e0".into(),
                    dst: "e1".into(),
                },
                Morphism {
                    id: "b+".into(),
                    src: "e0".into(),
                    dst: "e1".into(),
                },
            ],
            BTreeMap::new(),
        )
        .unwrap()
    }

    #[test]
    fn empty_and_circle_categories_are_valid() {
        let one = FiniteAcyclicCategory::new(vec!["x".into()], vec![], BTreeMap::new()).unwrap();
        assert!(one.validate().is_empty());
        assert!(circle_category().validate().is_empty());
    }

    #[test]
    fn two_way_morphisms_violate_acyclicity() {
        let c = FiniteAcyclicCategory::new(
            vec!["x".into(), "y".into()],
            vec![
                Morphism {
                    id: "f".into(),
                    src: "x".into(),
                    dst: "y".into(),
                },
                Morphism {
                    id: "g".into(),
                    src: "y".into(),
                    dst: "x".into(),
                },
            ],
            BTreeMap::new(),
        )
        .unwrap();
        let report = c.validate();
        assert!(report.has_check("acyclicity"));
        // f∘g and g∘f are composable endomorphism pairs with no table entry.
        assert!(report.has_check("composition-missing"));
    }

    #[test]
    fn underlying_poset_of_circle_is_chain() {
        let p = circle_category().underlying_poset().unwrap();
        assert!(p.lt("e0", "e1"));
        assert!(!p.lt("e1", "e0"));
    }

    #[test]
    fn discrete_category_gives_antichain() {
        let c = FiniteAcyclicCategory::new(
            vec!["a".into(), "b".into()],
            vec![],
            BTreeMap::new(),
        )
        .unwrap();
        assert!(c.underlying_poset().unwrap().strict_pairs().is_empty());
    }

    #[test]
    fn poset_to_category_counts() {
        // Face poset of the boundary of a triangle: 3 vertices, 3 edges.
        let elems = ["v0", "v1", "v2", "e01", "e02", "e12"];
        let pairs = [
            ("v0", "e01"),
            ("v1", "e01"),
            ("v0", "e02"),
            ("v2", "e02"),
            ("v1", "e12"),
            ("v2", "e12"),
        ];
        let p = Poset::new(&elems, &pairs).unwrap();
        let c = poset_to_category(&p).unwrap();
        assert_eq!(c.morphisms().len(), 12);
        assert!(c.validate().is_empty());
        assert_eq!(c.underlying_poset().unwrap(), p);
    }

    #[test]
    fn nerve_of_circle_counts() {
        let nerve = circle_category().nondegenerate_nerve().unwrap();
        assert_eq!(nerve.cell_counts(), vec![2, 2]);
    }

    #[test]
    fn nerve_of_single_morphism_is_1_simplex() {
        let c = FiniteAcyclicCategory::new(
            vec!["e0".into(), "en".into()],
            vec![Morphism {
                id: "b".into(),
                src: "e0".into(),
                dst: "en".into(),
            }],
            BTreeMap::new(),
        )
        .unwrap();
        assert_eq!(c.nondegenerate_nerve().unwrap().cell_counts(), vec![2, 1]);
    }

    #[test]
    fn order_complex_matches_nerve_route() {
        let p = Poset::new(&["a", "b", "c"], &[("a", "b"), ("b", "c")]).unwrap();
        let oc = order_complex(&p).unwrap();
        assert_eq!(oc.cell_counts(), vec![3, 3, 1]);
        let nerve = poset_to_category(&p).unwrap().nondegenerate_nerve().unwrap();
        assert_eq!(nerve.cell_counts(), oc.cell_counts());
    }
}
