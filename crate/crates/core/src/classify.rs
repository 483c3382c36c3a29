//! Enumeration of glued minimal polytopes, deduplication up to unimodular
//! equivalence, and the volume checks run on the results.

use std::collections::{BTreeMap, BTreeSet};

use itertools::Itertools;
use num_bigint::BigInt;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::arith::{bound_b, Rational};
use crate::bounds::BoundReport;
use crate::construct::{glue, reflexive_r, simplex_from_weights, GluingSpec, WeightSystem};
use crate::error::{Error, Result};
use crate::polytope::{equivalent, normal_form, PolytopeJson, RationalPolytope};

const DIM3_WEIGHTS: [[u64; 4]; 13] = [
    [1, 1, 1, 1],
    [1, 1, 1, 2],
    [1, 1, 1, 3],
    [1, 1, 2, 2],
    [1, 1, 2, 3],
    [1, 1, 2, 4],
    [1, 1, 3, 4],
    [1, 1, 3, 5],
    [1, 1, 4, 6],
    [1, 2, 3, 5],
    [1, 3, 4, 5],
    [2, 3, 5, 7],
    [3, 4, 5, 7],
];

const DIM2_WEIGHTS: [[u64; 3]; 2] = [[1, 1, 1], [1, 1, 2]];

/// Weights of the minimal canonical Fano simplices of dimension 1, 2 or 3.
pub fn minimal_simplex_weights(dim: usize) -> Result<Vec<WeightSystem>> {
    match dim {
        1 => Ok(vec![WeightSystem::new(vec![1, 1])?]),
        2 => DIM2_WEIGHTS.iter().map(|w| WeightSystem::new(w.to_vec())).collect(),
        3 => DIM3_WEIGHTS.iter().map(|w| WeightSystem::new(w.to_vec())).collect(),
        _ => Err(Error::ExternalData(format!(
            "minimal simplex weights in dimension {dim} are not bundled"
        ))),
    }
}

/// Kernel verdict on the simplex of one weight system.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct SimplexCheck {
    pub weights: WeightSystem,
    pub canonical: bool,
    pub minimal: bool,
}

pub fn check_simplex_weights(w: &WeightSystem) -> Result<SimplexCheck> {
    let s = simplex_from_weights(w)?;
    let canonical = s.is_canonical_fano();
    let minimal = canonical && s.is_minimal()?;
    Ok(SimplexCheck {
        weights: w.clone(),
        canonical,
        minimal,
    })
}

/// Checks every bundled weight system of dimension `dim` with the kernel
/// predicates; errors if any of them is not a minimal canonical simplex.
pub fn verify_bundled_weights(dim: usize) -> Result<Vec<SimplexCheck>> {
    let checks: Vec<SimplexCheck> = minimal_simplex_weights(dim)?
        .iter()
        .map(check_simplex_weights)
        .collect::<Result<_>>()?;
    if let Some(bad) = checks.iter().find(|c| !c.minimal) {
        return Err(Error::InvalidWeights(format!(
            "{} does not give a minimal canonical simplex",
            bad.weights
        )));
    }
    Ok(checks)
}

/// A family of decompositions: `t` simplices of fixed dimensions in a
/// `d`-dimensional quotient, with the weights allowed for each dimension.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ClassificationCase {
    pub name: String,
    pub d: usize,
    pub t: usize,
    pub dims: Vec<usize>,
    pub weights: BTreeMap<usize, Vec<WeightSystem>>,
}

impl ClassificationCase {
    /// A case over the bundled weight lists.
    pub fn new(name: impl Into<String>, d: usize, dims: Vec<usize>) -> Result<Self> {
        let mut weights = BTreeMap::new();
        for &k in &dims {
            if let std::collections::btree_map::Entry::Vacant(e) = weights.entry(k) {
                e.insert(minimal_simplex_weights(k)?);
            }
        }
        let case = ClassificationCase {
            name: name.into(),
            d,
            t: dims.len(),
            dims,
            weights,
        };
        case.validate()?;
        Ok(case)
    }

    pub fn dim4_three_triangles() -> Self {
        ClassificationCase::new("dim4-three-triangles", 4, vec![2, 2, 2]).expect("bundled case")
    }

    pub fn dim4_two_tetrahedra() -> Self {
        ClassificationCase::new("dim4-two-tetrahedra", 4, vec![3, 3]).expect("bundled case")
    }

    /// Named cases: the two above, or `d<d>-<d_1>-…-<d_t>` such as `d3-2-2`.
    pub fn named(name: &str) -> Result<Self> {
        match name {
            "dim4-three-triangles" => Ok(Self::dim4_three_triangles()),
            "dim4-two-tetrahedra" => Ok(Self::dim4_two_tetrahedra()),
            _ => {
                let mut parts = name.split('-');
                let d = parts
                    .next()
                    .and_then(|p| p.strip_prefix('d'))
                    .and_then(|p| p.parse().ok())
                    .ok_or_else(|| Error::Parse(format!("unknown case {name:?}")))?;
                let dims: Vec<usize> = parts
                    .map(|p| p.parse().map_err(|_| Error::Parse(format!("unknown case {name:?}"))))
                    .collect::<Result<_>>()?;
                ClassificationCase::new(name, d, dims)
            }
        }
    }

    fn validate(&self) -> Result<()> {
        if self.t < 2 {
            return Err(Error::InvalidSpec("a decomposition needs t ≥ 2".into()));
        }
        if self.dims.windows(2).any(|w| w[0] < w[1]) {
            return Err(Error::InvalidSpec("simplex dimensions must be non-increasing".into()));
        }
        if self.dims.iter().any(|&k| k == 0 || k + self.t > self.d + 1) {
            return Err(Error::ProfileViolation(format!(
                "each d_i must lie in [1, d − t + 1] = [1, {}]",
                (self.d + 1).saturating_sub(self.t)
            )));
        }
        if self.dims.iter().sum::<usize>() < self.d {
            return Err(Error::ProfileViolation("Σd_i must be at least d".into()));
        }
        if self.shared_profiles().is_empty() {
            return Err(Error::ProfileViolation("no admissible shared-vertex counts".into()));
        }
        Ok(())
    }

    /// Every `(r_1, …, r_t)` with `r_1 = 0`, `r_i < d_i` and `Σ r_i = Σ d_i − d`.
    pub fn shared_profiles(&self) -> Vec<Vec<usize>> {
        let r: usize = self.dims.iter().sum::<usize>().saturating_sub(self.d);
        let ranges: Vec<std::ops::Range<usize>> = self
            .dims
            .iter()
            .enumerate()
            .map(|(i, &k)| if i == 0 { 0..1 } else { 0..k })
            .collect();
        ranges
            .into_iter()
            .multi_cartesian_product()
            .filter(|v| v.iter().sum::<usize>() == r)
            .collect()
    }
}

type Class = Vec<(usize, usize)>;

/// Invariant of a spec under relabelling its simplices and permuting vertices
/// of equal weight: the lexicographically least relabelled description.
pub fn spec_key(spec: &GluingSpec) -> Vec<Vec<u64>> {
    let t = spec.t();
    let classes: Vec<Class> = spec.classes().into_iter().filter(|c| c.len() > 1).collect();
    let vertex_perms: Vec<Vec<Vec<usize>>> = spec
        .weights()
        .iter()
        .map(|w| weight_preserving_perms(w.weights()))
        .collect();
    let mut best: Option<Vec<Vec<u64>>> = None;
    for order in (0..t).permutations(t) {
        // order[new] = old
        let ws: Vec<Vec<u64>> = order.iter().map(|&o| spec.weights()[o].weights().to_vec()).collect();
        if best.as_ref().is_some_and(|b| ws.as_slice() > &b[..t]) {
            continue;
        }
        let mut pos = vec![0; t];
        for (new, &old) in order.iter().enumerate() {
            pos[old] = new;
        }
        for perms in order.iter().map(|&o| vertex_perms[o].iter()).multi_cartesian_product() {
            let mut encoded: Vec<Vec<u64>> = classes
                .iter()
                .map(|c| {
                    let mut m: Vec<(usize, usize)> = c
                        .iter()
                        .map(|&(s, v)| (pos[s], perms[pos[s]][v]))
                        .collect();
                    m.sort_unstable();
                    m.iter().flat_map(|&(s, v)| [s as u64, v as u64]).collect()
                })
                .collect();
            encoded.sort();
            let mut key = ws.clone();
            key.push(Vec::new());
            key.extend(encoded);
            if best.as_ref().is_none_or(|b| key < *b) {
                best = Some(key);
            }
        }
    }
    best.unwrap_or_default()
}

/// Permutations of vertex indices that preserve the (sorted) weights.
fn weight_preserving_perms(w: &[u64]) -> Vec<Vec<usize>> {
    let blocks: Vec<Vec<usize>> = (0..w.len())
        .chunk_by(|&i| w[i])
        .into_iter()
        .map(|(_, g)| g.collect())
        .collect();
    let per_block: Vec<Vec<Vec<usize>>> = blocks
        .iter()
        .map(|b| b.iter().copied().permutations(b.len()).collect())
        .collect();
    per_block
        .into_iter()
        .multi_cartesian_product()
        .map(|choice| {
            let mut perm = vec![0; w.len()];
            for (block, image) in blocks.iter().zip(choice) {
                for (&from, to) in block.iter().zip(image) {
                    perm[from] = to;
                }
            }
            perm
        })
        .collect()
}

/// All gluing specs of a case, one per equivalence class of [`spec_key`],
/// in key order.
pub fn enumerate_gluing_specs(case: &ClassificationCase) -> Result<Vec<GluingSpec>> {
    let choices: Vec<&Vec<WeightSystem>> = case.dims.iter().map(|k| &case.weights[k]).collect();
    let mut found: BTreeMap<Vec<Vec<u64>>, GluingSpec> = BTreeMap::new();
    for ws in choices.iter().map(|c| c.iter()).multi_cartesian_product() {
        let ws: Vec<WeightSystem> = ws.into_iter().cloned().collect();
        for profile in case.shared_profiles() {
            let mut acc = Vec::new();
            extend_matchings(&ws, &profile, 1, &[], &mut acc);
            for classes in acc {
                let Some(spec) = spec_from_classes(&ws, &classes)? else {
                    continue;
                };
                found.entry(spec_key(&spec)).or_insert(spec);
            }
        }
    }
    Ok(found.into_values().collect())
}

/// Identification classes built simplex by simplex: simplex `i` glues `r_i`
/// of its vertices to distinct vertices of the earlier simplices' union.
fn extend_matchings(
    ws: &[WeightSystem],
    profile: &[usize],
    i: usize,
    classes: &[BTreeSet<(usize, usize)>],
    out: &mut Vec<Vec<BTreeSet<(usize, usize)>>>,
) {
    if i == ws.len() {
        out.push(classes.to_vec());
        return;
    }
    // vertices of the union of simplices 0..i, one representative per class
    let mut targets: Vec<BTreeSet<(usize, usize)>> = classes.to_vec();
    for (s, w) in ws.iter().enumerate().take(i) {
        for v in 0..=w.dim() {
            if !classes.iter().any(|c| c.contains(&(s, v))) {
                targets.push(BTreeSet::from([(s, v)]));
            }
        }
    }
    let r = profile[i];
    for mine in (0..=ws[i].dim()).combinations(r) {
        for theirs in (0..targets.len()).permutations(r) {
            let mut next: Vec<BTreeSet<(usize, usize)>> = classes.to_vec();
            for (&v, &k) in mine.iter().zip(&theirs) {
                let mut merged = targets[k].clone();
                merged.insert((i, v));
                if let Some(pos) = next.iter().position(|c| c.is_subset(&merged)) {
                    next[pos] = merged;
                } else {
                    next.push(merged);
                }
            }
            extend_matchings(ws, profile, i + 1, &next, out);
        }
    }
}

fn spec_from_classes(ws: &[WeightSystem], classes: &[BTreeSet<(usize, usize)>]) -> Result<Option<GluingSpec>> {
    let mut matchings: BTreeMap<(usize, usize), BTreeSet<(usize, usize)>> = BTreeMap::new();
    for c in classes {
        for (&(i, a), &(j, b)) in c.iter().tuple_combinations() {
            matchings.entry((i, j)).or_default().insert((a, b));
        }
    }
    match GluingSpec::new(ws.to_vec(), matchings) {
        Ok(spec) => Ok(Some(spec)),
        Err(Error::InvalidSpec(_)) => Ok(None),
        Err(e) => Err(e),
    }
}

/// One equivalence class of classified polytopes. Volumes are normalised.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ClassEntry {
    pub normal_form: String,
    pub spec: GluingSpec,
    pub polytope: PolytopeJson,
    pub volume: String,
    pub dual_volume: String,
    pub bound: String,
    pub holds: bool,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ClassificationReport {
    pub case: String,
    pub d: usize,
    pub t: usize,
    pub dims: Vec<usize>,
    /// Specs after symmetry pruning.
    pub candidates: usize,
    /// Specs whose quotient has the expected dimension and profile.
    pub constructed: usize,
    /// Constructions that are minimal canonical Fano with `d + t` vertices.
    pub survivors: usize,
    pub classes: usize,
    pub entries: Vec<ClassEntry>,
    pub holds: bool,
}

#[derive(Debug, Clone, Serialize)]
struct ReportSummary<'a> {
    case: &'a str,
    d: usize,
    t: usize,
    dims: &'a [usize],
    candidates: usize,
    constructed: usize,
    survivors: usize,
    classes: usize,
    holds: bool,
}

impl ClassificationReport {
    /// A summary line followed by one line per class.
    pub fn to_json_lines(&self) -> String {
        let summary = ReportSummary {
            case: &self.case,
            d: self.d,
            t: self.t,
            dims: &self.dims,
            candidates: self.candidates,
            constructed: self.constructed,
            survivors: self.survivors,
            classes: self.classes,
            holds: self.holds,
        };
        let mut out = serde_json::to_string(&summary).expect("serialisable");
        out.push('\n');
        for e in &self.entries {
            out.push_str(&serde_json::to_string(e).expect("serialisable"));
            out.push('\n');
        }
        out
    }

    /// Inverse of [`Self::to_json_lines`].
    pub fn from_json_lines(text: &str) -> Result<Self> {
        #[derive(Deserialize)]
        struct Summary {
            case: String,
            d: usize,
            t: usize,
            dims: Vec<usize>,
            candidates: usize,
            constructed: usize,
            survivors: usize,
            classes: usize,
            holds: bool,
        }
        let mut lines = text.lines().filter(|l| !l.trim().is_empty());
        let head = lines.next().ok_or(Error::Empty)?;
        let s: Summary = serde_json::from_str(head).map_err(|e| Error::Parse(e.to_string()))?;
        let entries: Vec<ClassEntry> = lines
            .map(|l| serde_json::from_str(l).map_err(|e| Error::Parse(e.to_string())))
            .collect::<Result<_>>()?;
        if entries.len() != s.classes {
            return Err(Error::Parse(format!(
                "summary lists {} classes but {} entries follow",
                s.classes,
                entries.len()
            )));
        }
        Ok(ClassificationReport {
            case: s.case,
            d: s.d,
            t: s.t,
            dims: s.dims,
            candidates: s.candidates,
            constructed: s.constructed,
            survivors: s.survivors,
            classes: s.classes,
            entries,
            holds: s.holds,
        })
    }

    pub fn summary_table(&self) -> String {
        let mut out = format!(
            "case {}  d={} t={} dims={:?}\ncandidates {}  constructed {}  survivors {}  classes {}  {}\n",
            self.case,
            self.d,
            self.t,
            self.dims,
            self.candidates,
            self.constructed,
            self.survivors,
            self.classes,
            if self.holds { "PASS" } else { "FAIL" }
        );
        out.push_str(&format!("{:>4}  {:<28} {:>10} {:>14}  ok\n", "#", "weights", "Vol(P)", "Vol(P*)"));
        for (k, e) in self.entries.iter().enumerate() {
            let ws = e.spec.weights().iter().map(|w| w.to_string()).join(" ");
            out.push_str(&format!(
                "{:>4}  {:<28} {:>10} {:>14}  {}\n",
                k + 1,
                ws,
                e.volume,
                e.dual_volume,
                if e.holds { "yes" } else { "NO" }
            ));
        }
        out
    }
}

enum Outcome {
    Rejected,
    Constructed,
    Survivor(Box<(String, Vec<Vec<u64>>, GluingSpec, RationalPolytope)>),
}

fn process(spec: &GluingSpec, d: usize) -> Result<Outcome> {
    let glued = match glue(spec) {
        Ok(g) => g,
        Err(Error::DegenerateGluing(_) | Error::ProfileViolation(_)) => return Ok(Outcome::Rejected),
        Err(e) => return Err(e),
    };
    let p = glued.polytope;
    if p.ambient_dim() != d
        || !p.is_full_dim()
        || p.n_vertices() != d + spec.t()
        || !p.origin_interior()
        || !p.is_canonical_fano()
        || !p.is_minimal()?
    {
        return Ok(Outcome::Constructed);
    }
    let nf = normal_form(&p)?;
    Ok(Outcome::Survivor(Box::new((nf.as_str().to_owned(), spec_key(spec), spec.clone(), p))))
}

/// Glues every candidate of the case, keeps the minimal canonical Fano
/// polytopes with `d + t` vertices, and dedupes them by normal form. Each
/// class keeps the candidate with the least [`spec_key`], so the report does
/// not depend on `jobs`.
pub fn classify(case: &ClassificationCase, jobs: Option<usize>) -> Result<ClassificationReport> {
    let specs = enumerate_gluing_specs(case)?;
    let run = || -> Result<Vec<Outcome>> { specs.par_iter().map(|s| process(s, case.d)).collect() };
    let outcomes = match jobs {
        Some(k) => rayon::ThreadPoolBuilder::new()
            .num_threads(k.max(1))
            .build()
            .map_err(|e| Error::Precondition(e.to_string()))?
            .install(run)?,
        None => run()?,
    };
    let mut constructed = 0;
    let mut survivors = Vec::new();
    for o in outcomes {
        match o {
            Outcome::Rejected => {}
            Outcome::Constructed => constructed += 1,
            Outcome::Survivor(s) => {
                constructed += 1;
                survivors.push(*s);
            }
        }
    }
    let survivor_count = survivors.len();
    survivors.sort_by(|a, b| (&a.0, &a.1).cmp(&(&b.0, &b.1)));
    survivors.dedup_by(|a, b| a.0 == b.0);
    let bound = Rational::from_integer(bound_b(case.d)?);
    let entries: Vec<ClassEntry> = survivors
        .into_par_iter()
        .map(|(nf, _, spec, p)| {
            let dual_volume = p.dual()?.normalized_volume();
            Ok(ClassEntry {
                normal_form: nf,
                spec,
                polytope: p.to_json(),
                volume: p.normalized_volume().to_string(),
                holds: dual_volume < bound,
                dual_volume: dual_volume.to_string(),
                bound: bound.to_string(),
            })
        })
        .collect::<Result<_>>()?;
    Ok(ClassificationReport {
        case: case.name.clone(),
        d: case.d,
        t: case.t,
        dims: case.dims.clone(),
        candidates: specs.len(),
        constructed,
        survivors: survivor_count,
        classes: entries.len(),
        holds: entries.iter().all(|e| e.holds),
        entries,
    })
}

/// `35 · Vol(P′*) · 72 < 2(s_5 − 1)²` for each class `P′` of a
/// four-dimensional two-tetrahedra report and each three-dimensional weight
/// system of the third simplex.
pub fn staged_verify_dim5(report: &ClassificationReport) -> Result<Vec<BoundReport>> {
    if report.d != 4 || report.dims != [3, 3] {
        return Err(Error::Precondition(
            "staged check needs the four-dimensional two-tetrahedra report".into(),
        ));
    }
    let coefficient = Rational::from_integer(crate::arith::multinomial(&[4, 3]) * bound_b(3)?);
    let rhs = Rational::from_integer(bound_b(5)?);
    let third = minimal_simplex_weights(3)?;
    let mut out = Vec::with_capacity(report.entries.len() * third.len());
    for (k, e) in report.entries.iter().enumerate() {
        let vol = crate::arith::parse_rational(&e.dual_volume)?;
        let lhs = &coefficient * vol;
        for w in &third {
            out.push(BoundReport::strict(format!("class {} + {}", k + 1, w), &lhs, &rhs));
        }
    }
    Ok(out)
}

/// `Vol(P*)` against `2(s_d − 1)²` for one polytope.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct TheoremCheck {
    #[serde(rename = "case")]
    pub case_id: String,
    pub lhs: String,
    pub rhs: String,
    /// `lhs ≤ rhs`.
    pub holds: bool,
    pub equality: bool,
    /// Unimodularly equivalent to the dual of `R_(d)`.
    pub extremal: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub error: Option<String>,
}

fn theorem_check(case_id: String, p: &RationalPolytope) -> Result<TheoremCheck> {
    if !p.is_canonical_fano() {
        return Err(Error::NotCanonical);
    }
    let d = p.ambient_dim();
    let lhs = p.dual()?.normalized_volume();
    let rhs = Rational::from_integer(bound_b(d)?);
    let extremal = d >= 2 && lhs == rhs && equivalent(p, &reflexive_r(d)?.dual()?)?;
    Ok(TheoremCheck {
        case_id,
        holds: lhs <= rhs,
        equality: lhs == rhs,
        extremal,
        lhs: lhs.to_string(),
        rhs: rhs.to_string(),
        error: None,
    })
}

/// Per-polytope checks; failures become entries with `error` set and
/// `holds = false`.
pub fn verify_theorem(polytopes: &[RationalPolytope]) -> Vec<TheoremCheck> {
    polytopes
        .iter()
        .enumerate()
        .map(|(k, p)| {
            let id = format!("polytope {}", k + 1);
            theorem_check(id.clone(), p).unwrap_or_else(|e| TheoremCheck {
                case_id: id,
                lhs: String::new(),
                rhs: String::new(),
                holds: false,
                equality: false,
                extremal: false,
                error: Some(e.to_string()),
            })
        })
        .collect()
}

/// Lattice generated by the vertices has index one in `Z^d`.
pub fn vertices_generate_lattice(p: &RationalPolytope) -> Result<bool> {
    let verts: Vec<Vec<BigInt>> = p.integral_vertices().ok_or(Error::NotLattice)?;
    let l = crate::linalg::Sublattice::from_generators(p.ambient_dim(), &verts)?;
    if l.rank() != p.ambient_dim() {
        return Ok(false);
    }
    Ok(crate::linalg::lattice_index(&crate::linalg::Sublattice::full(p.ambient_dim()), &l)? == BigInt::from(1))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::polytope::{cross_polytope, from_i64};

    fn ws(v: &[u64]) -> WeightSystem {
        WeightSystem::new(v.to_vec()).unwrap()
    }

    #[test]
    fn bundled_weights() {
        assert_eq!(minimal_simplex_weights(1).unwrap(), vec![ws(&[1, 1])]);
        assert_eq!(minimal_simplex_weights(2).unwrap().len(), 2);
        assert_eq!(minimal_simplex_weights(3).unwrap().len(), 13);
        assert!(matches!(minimal_simplex_weights(4), Err(Error::ExternalData(_))));
        verify_bundled_weights(2).unwrap();
    }

    #[test]
    fn nonminimal_weight_system() {
        let c = check_simplex_weights(&ws(&[2, 2, 3, 5])).unwrap();
        assert!(c.canonical);
        assert!(!c.minimal);
    }

    #[test]
    fn case_profiles() {
        let c = ClassificationCase::dim4_three_triangles();
        assert_eq!(c.shared_profiles(), vec![vec![0, 1, 1]]);
        let c = ClassificationCase::dim4_two_tetrahedra();
        assert_eq!(c.shared_profiles(), vec![vec![0, 2]]);
        assert!(ClassificationCase::named("d3-2-2").is_ok());
        assert!(ClassificationCase::named("d4-4-1").is_err());
        assert!(ClassificationCase::named("nonsense").is_err());
    }

    #[test]
    fn spec_key_ignores_relabelling() {
        let a = GluingSpec::new(
            vec![ws(&[1, 1, 2]), ws(&[1, 1, 1])],
            BTreeMap::from([((0, 1), BTreeSet::from([(0, 2)]))]),
        )
        .unwrap();
        let b = GluingSpec::new(
            vec![ws(&[1, 1, 1]), ws(&[1, 1, 2])],
            BTreeMap::from([((0, 1), BTreeSet::from([(1, 1)]))]),
        )
        .unwrap();
        assert_eq!(spec_key(&a), spec_key(&b));
        let c = GluingSpec::new(
            vec![ws(&[1, 1, 1]), ws(&[1, 1, 2])],
            BTreeMap::from([((0, 1), BTreeSet::from([(1, 2)]))]),
        )
        .unwrap();
        assert_ne!(spec_key(&a), spec_key(&c));
    }

    #[test]
    fn two_triangle_specs() {
        let case = ClassificationCase::named("d3-2-2").unwrap();
        let specs = enumerate_gluing_specs(&case).unwrap();
        // pairs {A,A},{A,B},{B,B} with A = (1,1,1), B = (1,1,2): the shared
        // vertex has weight 1 or 2 in each triangle
        assert_eq!(specs.len(), 1 + 2 + 3);
    }

    #[test]
    fn three_triangles_force_one_shared_each() {
        let case = ClassificationCase::dim4_three_triangles();
        for s in enumerate_gluing_specs(&case).unwrap() {
            assert_eq!(s.shared_counts(), vec![0, 1, 1]);
        }
    }

    #[test]
    fn dim3_classification_is_stable_under_jobs() {
        let case = ClassificationCase::named("d3-2-2").unwrap();
        let a = classify(&case, Some(1)).unwrap();
        let b = classify(&case, Some(3)).unwrap();
        assert_eq!(a.to_json_lines(), b.to_json_lines());
        assert!(a.holds);
        assert!(a.classes >= 1 && a.classes <= a.survivors && a.survivors <= a.candidates);
        let back = ClassificationReport::from_json_lines(&a.to_json_lines()).unwrap();
        assert_eq!(back, a);
    }

    #[test]
    fn staged_rejects_other_reports() {
        let case = ClassificationCase::named("d3-2-2").unwrap();
        let r = classify(&case, None).unwrap();
        assert!(staged_verify_dim5(&r).is_err());
    }

    #[test]
    fn staged_threshold() {
        let mut r = ClassificationReport {
            case: "synthetic".into(),
            d: 4,
            t: 2,
            dims: vec![3, 3],
            candidates: 1,
            constructed: 1,
            survivors: 1,
            classes: 1,
            entries: vec![ClassEntry {
                normal_form: String::new(),
                spec: GluingSpec::single(ws(&[1, 1, 1, 1])),
                polytope: cross_polytope(4).to_json(),
                volume: "0".into(),
                // 6523272 / (35 · 72) = 2588.6…
                dual_volume: "2588".into(),
                bound: "3528".into(),
                holds: true,
            }],
            holds: true,
        };
        assert!(staged_verify_dim5(&r).unwrap().iter().all(|b| b.holds));
        r.entries[0].dual_volume = "2589".into();
        let out = staged_verify_dim5(&r).unwrap();
        assert_eq!(out.len(), 13);
        assert!(out.iter().all(|b| !b.holds));
    }

    #[test]
    fn theorem_checks() {
        let r4 = reflexive_r(4).unwrap().dual().unwrap();
        let p1113 = simplex_from_weights(&ws(&[1, 1, 1, 3])).unwrap();
        let octa = cross_polytope(4);
        let bad = from_i64(&[&[2, 0], &[0, 2], &[-2, -2]]).unwrap();
        let out = verify_theorem(&[r4, p1113, octa, bad]);
        assert!(out[0].equality && out[0].extremal);
        assert_eq!(out[1].lhs, "72");
        assert!(out[1].equality);
        assert!(out[2].holds && !out[2].equality);
        assert!(out[3].error.is_some() && !out[3].holds);
    }

    #[test]
    fn generating_vertices() {
        assert!(vertices_generate_lattice(&cross_polytope(3)).unwrap());
        let p = from_i64(&[&[1, 1], &[-1, 1], &[-1, -1], &[1, -1]]).unwrap();
        assert!(!vertices_generate_lattice(&p).unwrap());
    }
}
