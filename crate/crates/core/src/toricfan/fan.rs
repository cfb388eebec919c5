use std::collections::{BTreeMap, BTreeSet, HashMap};
use std::fmt;

use num_integer::Integer;
use serde::{Deserialize, Serialize};

use crate::exactalg::IntMatrix;

use super::ToricError;

pub type ConeId = usize;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Cone {
    pub id: String,
    /// Sorted ray indices.
    pub rays: Vec<usize>,
    /// ℚ-rank of the rays.
    pub dim: usize,
}

/// A rational fan with its face lattice.
///
/// Cones are sorted by `(dim, rays)`, so the zero cone is always index 0.
/// The face relation is inclusion of ray sets. Convexity and the
/// intersection axiom are not checked.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Fan {
    n: usize,
    rays: Vec<Vec<i64>>,
    cones: Vec<Cone>,
    simplicial: bool,
    /// `covers[σ]`: cones one dimension up having σ as a face.
    covers: Vec<Vec<ConeId>>,
    /// `facets[σ]`: faces one dimension down.
    facets: Vec<Vec<ConeId>>,
    warnings: Vec<String>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum FanIssue {
    RayLength { ray: usize, len: usize, expected: usize },
    ZeroRay { ray: usize },
    RayIndex { cone: String, index: usize },
    DuplicateId { id: String },
    DuplicateCone { first: String, second: String },
    NotIndependent { cone: String, rays: usize, rank: usize },
    UnknownFace { cone: String, face: String },
    FaceNotContained { cone: String, face: String },
    NotGraded { face: String, cone: String, gap: usize },
    Diamond { face: String, cone: String, between: usize },
}

impl fmt::Display for FanIssue {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            FanIssue::RayLength { ray, len, expected } => {
                write!(f, "ray {ray} has {len} coordinates, expected {expected}")
            }
            FanIssue::ZeroRay { ray } => write!(f, "ray {ray} is the zero vector"),
            FanIssue::RayIndex { cone, index } => write!(f, "cone {cone:?} refers to missing ray {index}"),
            FanIssue::DuplicateId { id } => write!(f, "cone id {id:?} is used twice"),
            FanIssue::DuplicateCone { first, second } => {
                write!(f, "cones {first:?} and {second:?} have the same rays")
            }
            FanIssue::NotIndependent { cone, rays, rank } => {
                write!(f, "simplicial cone {cone:?} has {rays} rays of rank {rank}")
            }
            FanIssue::UnknownFace { cone, face } => write!(f, "cone {cone:?} lists unknown face {face:?}"),
            FanIssue::FaceNotContained { cone, face } => {
                write!(f, "face {face:?} of cone {cone:?} is not a proper face by rays and dimension")
            }
            FanIssue::NotGraded { face, cone, gap } => write!(
                f,
                "grading violation: {cone:?} covers {face:?} but the dimensions differ by {gap}"
            ),
            FanIssue::Diamond { face, cone, between } => write!(
                f,
                "diamond property violation: {between} cones lie strictly between {face:?} and {cone:?}, expected 2"
            ),
        }
    }
}

/// Interchange form of a fan.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct FanDoc {
    pub lattice_rank: usize,
    pub rays: Vec<Vec<i64>>,
    #[serde(default)]
    pub simplicial: bool,
    pub cones: Vec<ConeDoc>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ConeDoc {
    pub id: String,
    pub rays: Vec<usize>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub faces: Option<Vec<String>>,
}

pub const ZERO_CONE_ID: &str = "zero";

fn ray_rank(rays: &[Vec<i64>], n: usize, idx: &[usize]) -> usize {
    if idx.is_empty() {
        return 0;
    }
    let rows: Vec<Vec<i64>> = idx.iter().map(|&i| rays[i].clone()).collect();
    IntMatrix::from_i64_rows(n, &rows).rank()
}

fn generated_id(rays: &[usize]) -> String {
    if rays.is_empty() {
        return ZERO_CONE_ID.to_string();
    }
    rays.iter().map(|r| format!("r{r}")).collect()
}

/// Parses and validates a fan document.
pub fn parse_fan(text: &str) -> Result<Fan, ToricError> {
    let doc: FanDoc = serde_json::from_str(text).map_err(|e| ToricError::Parse(e.to_string()))?;
    Fan::from_doc(&doc)
}

impl Fan {
    pub fn from_doc(doc: &FanDoc) -> Result<Fan, ToricError> {
        let n = doc.lattice_rank;
        let mut issues = Vec::new();
        let mut warnings = Vec::new();
        let mut rays = Vec::with_capacity(doc.rays.len());
        for (i, r) in doc.rays.iter().enumerate() {
            if r.len() != n {
                issues.push(FanIssue::RayLength { ray: i, len: r.len(), expected: n });
                rays.push(vec![0; n]);
                continue;
            }
            let g = r.iter().fold(0i64, |g, &x| g.gcd(&x));
            if g == 0 {
                issues.push(FanIssue::ZeroRay { ray: i });
                rays.push(r.clone());
                continue;
            }
            if g != 1 {
                let fixed: Vec<i64> = r.iter().map(|x| x / g).collect();
                warnings.push(format!("ray {i} {r:?} is not primitive; replaced by {fixed:?}"));
                rays.push(fixed);
            } else {
                rays.push(r.clone());
            }
        }
        if !issues.is_empty() {
            return Err(ToricError::Invalid(issues));
        }

        let mut specs: Vec<(String, Vec<usize>, Option<Vec<String>>)> = Vec::new();
        let mut ids = BTreeSet::new();
        for c in &doc.cones {
            if !ids.insert(c.id.clone()) {
                issues.push(FanIssue::DuplicateId { id: c.id.clone() });
            }
            for &r in &c.rays {
                if r >= rays.len() {
                    issues.push(FanIssue::RayIndex { cone: c.id.clone(), index: r });
                }
            }
            let mut rs = c.rays.clone();
            rs.sort_unstable();
            rs.dedup();
            specs.push((c.id.clone(), rs, c.faces.clone()));
        }
        if !issues.is_empty() {
            return Err(ToricError::Invalid(issues));
        }
        Self::build(n, rays, specs, doc.simplicial, warnings)
    }

    /// Builds and validates a fan from cone specifications `(id, rays, declared faces)`.
    pub(crate) fn build(
        n: usize,
        rays: Vec<Vec<i64>>,
        mut specs: Vec<(String, Vec<usize>, Option<Vec<String>>)>,
        simplicial: bool,
        warnings: Vec<String>,
    ) -> Result<Fan, ToricError> {
        let mut issues = Vec::new();
        if simplicial {
            let mut present: BTreeSet<Vec<usize>> = specs.iter().map(|s| s.1.clone()).collect();
            let mut extra = Vec::new();
            for (_, rs, _) in &specs {
                for mask in 0u64..(1u64 << rs.len()) {
                    let sub: Vec<usize> = (0..rs.len()).filter(|&i| mask >> i & 1 == 1).map(|i| rs[i]).collect();
                    if present.insert(sub.clone()) {
                        extra.push((generated_id(&sub), sub, None));
                    }
                }
            }
            specs.extend(extra);
        }
        if !specs.iter().any(|s| s.1.is_empty()) {
            specs.push((ZERO_CONE_ID.to_string(), Vec::new(), None));
        }
        let mut taken: BTreeSet<String> = BTreeSet::new();
        for s in &mut specs {
            while !taken.insert(s.0.clone()) {
                s.0.push('\'');
            }
        }

        let dims: Vec<usize> = specs.iter().map(|s| ray_rank(&rays, n, &s.1)).collect();
        let mut order: Vec<usize> = (0..specs.len()).collect();
        order.sort_by(|&a, &b| (dims[a], &specs[a].1).cmp(&(dims[b], &specs[b].1)));
        let cones: Vec<Cone> = order
            .iter()
            .map(|&i| Cone { id: specs[i].0.clone(), rays: specs[i].1.clone(), dim: dims[i] })
            .collect();
        let declared: Vec<Option<Vec<String>>> = order.iter().map(|&i| specs[i].2.clone()).collect();

        for w in cones.windows(2) {
            if w[0].rays == w[1].rays {
                issues.push(FanIssue::DuplicateCone { first: w[0].id.clone(), second: w[1].id.clone() });
            }
        }
        if simplicial {
            for c in &cones {
                if c.dim != c.rays.len() {
                    issues.push(FanIssue::NotIndependent { cone: c.id.clone(), rays: c.rays.len(), rank: c.dim });
                }
            }
        }
        if !issues.is_empty() {
            return Err(ToricError::Invalid(issues));
        }

        let by_id: HashMap<&str, usize> = cones.iter().enumerate().map(|(i, c)| (c.id.as_str(), i)).collect();
        let m = cones.len();
        let sets: Vec<BTreeSet<usize>> = cones.iter().map(|c| c.rays.iter().copied().collect()).collect();
        let below = |a: usize, b: usize| a != b && sets[a].is_subset(&sets[b]);
        for (i, faces) in declared.iter().enumerate() {
            for face in faces.iter().flatten() {
                match by_id.get(face.as_str()) {
                    None => issues.push(FanIssue::UnknownFace { cone: cones[i].id.clone(), face: face.clone() }),
                    Some(&j) if !below(j, i) || cones[j].dim >= cones[i].dim => issues.push(
                        FanIssue::FaceNotContained { cone: cones[i].id.clone(), face: face.clone() },
                    ),
                    Some(_) => {}
                }
            }
        }

        let mut covers = vec![Vec::new(); m];
        let mut facets = vec![Vec::new(); m];
        for hi in 0..m {
            let lower: Vec<usize> = (0..m).filter(|&lo| below(lo, hi)).collect();
            for &lo in &lower {
                if cones[lo].dim >= cones[hi].dim {
                    issues.push(FanIssue::NotGraded {
                        face: cones[lo].id.clone(),
                        cone: cones[hi].id.clone(),
                        gap: 0,
                    });
                    continue;
                }
                let between = lower.iter().filter(|&&mid| below(lo, mid)).count();
                let gap = cones[hi].dim - cones[lo].dim;
                if between == 0 {
                    if gap != 1 {
                        issues.push(FanIssue::NotGraded { face: cones[lo].id.clone(), cone: cones[hi].id.clone(), gap });
                    }
                    covers[lo].push(hi);
                    facets[hi].push(lo);
                }
                if gap == 2 && between != 2 {
                    issues.push(FanIssue::Diamond { face: cones[lo].id.clone(), cone: cones[hi].id.clone(), between });
                }
            }
        }
        if !issues.is_empty() {
            return Err(ToricError::Invalid(issues));
        }
        Ok(Fan { n, rays, cones, simplicial, covers, facets, warnings })
    }

    pub fn lattice_rank(&self) -> usize {
        self.n
    }

    pub fn rays(&self) -> &[Vec<i64>] {
        &self.rays
    }

    pub fn cones(&self) -> &[Cone] {
        &self.cones
    }

    pub fn cone(&self, c: ConeId) -> &Cone {
        &self.cones[c]
    }

    pub fn len(&self) -> usize {
        self.cones.len()
    }

    pub fn is_empty(&self) -> bool {
        self.cones.is_empty()
    }

    pub fn is_simplicial(&self) -> bool {
        self.simplicial || self.cones.iter().all(|c| c.dim == c.rays.len())
    }

    pub fn warnings(&self) -> &[String] {
        &self.warnings
    }

    pub fn cone_index(&self, id: &str) -> Result<ConeId, ToricError> {
        self.cones
            .iter()
            .position(|c| c.id == id)
            .ok_or_else(|| ToricError::UnknownCone(id.to_string()))
    }

    pub fn codim(&self, c: ConeId) -> usize {
        self.n - self.cones[c].dim
    }

    pub fn covers(&self, c: ConeId) -> &[ConeId] {
        &self.covers[c]
    }

    pub fn facets(&self, c: ConeId) -> &[ConeId] {
        &self.facets[c]
    }

    /// `τ ≤ σ` in the face lattice.
    pub fn is_face(&self, tau: ConeId, sigma: ConeId) -> bool {
        let s = &self.cones[sigma].rays;
        self.cones[tau].rays.iter().all(|r| s.binary_search(r).is_ok())
    }

    /// Cones ordered by codimension, then by lattice order.
    pub fn cones_of_codim(&self, k: usize) -> impl Iterator<Item = ConeId> + '_ {
        (0..self.cones.len()).filter(move |&c| self.codim(c) == k)
    }

    /// Number of cones in each codimension `0 ..= n`.
    pub fn f_vector(&self) -> Vec<usize> {
        (0..=self.n).map(|k| self.cones_of_codim(k).count()).collect()
    }

    pub fn to_doc(&self) -> FanDoc {
        FanDoc {
            lattice_rank: self.n,
            rays: self.rays.clone(),
            simplicial: self.simplicial,
            cones: self
                .cones
                .iter()
                .enumerate()
                .map(|(i, c)| ConeDoc {
                    id: c.id.clone(),
                    rays: c.rays.clone(),
                    faces: (!self.facets[i].is_empty())
                        .then(|| self.facets[i].iter().map(|&f| self.cones[f].id.clone()).collect()),
                })
                .collect(),
        }
    }
}

/// Product fan in `ℝ^{n₁+n₂}` with cones `σ₁ × σ₂`.
pub fn product_fan(f1: &Fan, f2: &Fan) -> Fan {
    let n = f1.n + f2.n;
    let mut rays: Vec<Vec<i64>> = f1
        .rays
        .iter()
        .map(|r| r.iter().copied().chain(std::iter::repeat_n(0, f2.n)).collect())
        .collect();
    rays.extend(f2.rays.iter().map(|r| std::iter::repeat_n(0, f1.n).chain(r.iter().copied()).collect()));
    let offset = f1.rays.len();
    let mut specs = Vec::new();
    for a in &f1.cones {
        for b in &f2.cones {
            let id = match (a.rays.is_empty(), b.rays.is_empty()) {
                (true, true) => ZERO_CONE_ID.to_string(),
                (false, true) => format!("{}*{}", a.id, ZERO_CONE_ID),
                _ => format!("{}*{}", a.id, b.id),
            };
            let rs: Vec<usize> = a.rays.iter().copied().chain(b.rays.iter().map(|r| r + offset)).collect();
            specs.push((id, rs, None));
        }
    }
    Fan::build(n, rays, specs, false, Vec::new()).expect("product of valid fans is valid")
}

fn simplicial_fan(n: usize, rays: Vec<Vec<i64>>, maximal: &[&[usize]]) -> Fan {
    let specs = maximal.iter().map(|rs| (generated_id(rs), rs.to_vec(), None)).collect();
    Fan::build(n, rays, specs, true, Vec::new()).expect("fixture fan is valid")
}

fn subsets_of_size(m: usize, size: usize) -> Vec<Vec<usize>> {
    (0u64..(1u64 << m))
        .filter(|mask| mask.count_ones() as usize == size)
        .map(|mask| (0..m).filter(|&i| mask >> i & 1 == 1).collect())
        .collect()
}

/// Projective space `ℙⁿ`: rays `e₁, …, eₙ, −Σeᵢ`, maximal cones all `n`-subsets.
pub fn projective_space(n: usize) -> Fan {
    let mut rays: Vec<Vec<i64>> = (0..n).map(|i| (0..n).map(|j| i64::from(i == j)).collect()).collect();
    rays.push(vec![-1; n]);
    let maximal = subsets_of_size(n + 1, n);
    let refs: Vec<&[usize]> = maximal.iter().map(Vec::as_slice).collect();
    simplicial_fan(n, rays, &refs)
}

/// The fan `{0}` in `ℝᵏ`, whose toric variety is the torus `(ℝ*)ᵏ`.
pub fn trivial_fan(k: usize) -> Fan {
    Fan::build(k, Vec::new(), Vec::new(), true, Vec::new()).expect("zero cone alone is valid")
}

/// Affine space `ℝⁿ`: the positive orthant and its faces.
pub fn affine_space(n: usize) -> Fan {
    let rays: Vec<Vec<i64>> = (0..n).map(|i| (0..n).map(|j| i64::from(i == j)).collect()).collect();
    let all: Vec<usize> = (0..n).collect();
    simplicial_fan(n, rays, &[&all])
}

/// Hirzebruch surface: rays `(1,0), (0,1), (−1,a), (0,−1)`, consecutive 2-cones.
pub fn hirzebruch(a: i64) -> Fan {
    let rays = vec![vec![1, 0], vec![0, 1], vec![-1, a], vec![0, -1]];
    simplicial_fan(2, rays, &[&[0, 1], &[1, 2], &[2, 3], &[0, 3]])
}

/// `ℙ²` blown up at the fixed point of the cone on `(1,0), (0,1)`; ray 3 is `(1,1)`.
pub fn blown_up_p2() -> Fan {
    let rays = vec![vec![1, 0], vec![0, 1], vec![-1, -1], vec![1, 1]];
    simplicial_fan(2, rays, &[&[0, 3], &[1, 3], &[1, 2], &[0, 2]])
}

/// Weighted projective plane `ℙ(1,1,2)`, singular at one fixed point.
pub fn weighted_p112() -> Fan {
    let rays = vec![vec![1, 0], vec![0, 1], vec![-1, -2]];
    simplicial_fan(2, rays, &[&[0, 1], &[1, 2], &[0, 2]])
}

/// The affine `A₁` surface singularity: the cone on `(1,0), (1,2)`.
pub fn a1_cone() -> Fan {
    simplicial_fan(2, vec![vec![1, 0], vec![1, 2]], &[&[0, 1]])
}

/// `ℙ²` with one 2-cone removed (a non-complete fan).
pub fn p2_minus_cone() -> Fan {
    let rays = vec![vec![1, 0], vec![0, 1], vec![-1, -1]];
    simplicial_fan(2, rays, &[&[0, 1], &[1, 2]])
}

/// Non-simplicial cone over a square in `ℝ³`, faces listed explicitly.
pub fn square_cone() -> Fan {
    let rays = vec![vec![1, 0, 1], vec![0, 1, 1], vec![-1, 0, 1], vec![0, -1, 1]];
    let mut specs: Vec<(String, Vec<usize>, Option<Vec<String>>)> = Vec::new();
    for r in 0..4 {
        specs.push((format!("r{r}"), vec![r], Some(vec![ZERO_CONE_ID.to_string()])));
    }
    let edges = [[0, 1], [1, 2], [2, 3], [0, 3]];
    for e in edges {
        specs.push((generated_id(&e), e.to_vec(), Some(vec![format!("r{}", e[0]), format!("r{}", e[1])])));
    }
    specs.push((
        "square".to_string(),
        vec![0, 1, 2, 3],
        Some(edges.iter().map(|e| generated_id(e)).collect()),
    ));
    specs.push((ZERO_CONE_ID.to_string(), Vec::new(), None));
    Fan::build(3, rays, specs, false, Vec::new()).expect("square cone is valid")
}

/// Named fixture fans.
///
/// `P n`, `trivial k`, `affine n`, `hirzebruch a`, `P1xP1`, `P112`, `A1`,
/// `P2-minus-cone`, `square-cone`.
pub fn standard_fan(name: &str, param: Option<i64>) -> Result<Fan, ToricError> {
    let size = |default: i64| -> Result<usize, ToricError> {
        let v = param.unwrap_or(default);
        usize::try_from(v)
            .ok()
            .filter(|&v| v <= 12)
            .ok_or_else(|| ToricError::UnknownFixture(format!("{name} with parameter {v}")))
    };
    Ok(match name {
        "P" => {
            let n = size(2)?;
            if n == 0 {
                return Err(ToricError::UnknownFixture("P with parameter 0".into()));
            }
            projective_space(n)
        }
        "trivial" => trivial_fan(size(1)?),
        "affine" => affine_space(size(1)?),
        "hirzebruch" => hirzebruch(param.unwrap_or(1)),
        "P1xP1" => product_fan(&projective_space(1), &projective_space(1)),
        "P112" => weighted_p112(),
        "A1" => a1_cone(),
        "P2-minus-cone" => p2_minus_cone(),
        "square-cone" => square_cone(),
        other => return Err(ToricError::UnknownFixture(other.to_string())),
    })
}

/// The shipped fan corpus, by name.
pub fn fan_corpus() -> BTreeMap<String, Fan> {
    let mut out = BTreeMap::new();
    for n in 1..=4 {
        out.insert(format!("P{n}"), projective_space(n));
    }
    for k in 1..=5 {
        out.insert(format!("trivial{k}"), trivial_fan(k));
    }
    for n in 1..=3 {
        out.insert(format!("affine{n}"), affine_space(n));
    }
    for a in 0..=3 {
        out.insert(format!("hirzebruch{a}"), hirzebruch(a));
    }
    out.insert("P1xP1".into(), product_fan(&projective_space(1), &projective_space(1)));
    out.insert("P112".into(), weighted_p112());
    out.insert("A1".into(), a1_cone());
    out.insert("P2-minus-cone".into(), p2_minus_cone());
    out.insert("square-cone".into(), square_cone());
    out
}

/// Corpus fans whose real toric variety is smooth and compact.
pub fn smooth_complete_names() -> Vec<&'static str> {
    vec!["P1", "P2", "P3", "P4", "P1xP1", "hirzebruch0", "hirzebruch1", "hirzebruch2", "hirzebruch3"]
}

#[cfg(test)]
mod tests {
    use super::*;

    const P1: &str = r#"{"lattice_rank":1,"rays":[[1],[-1]],"cones":[{"id":"o","rays":[]},{"id":"a","rays":[0]},{"id":"b","rays":[1]}]}"#;

    #[test]
    fn p1_document() {
        let f = parse_fan(P1).unwrap();
        assert_eq!(f.len(), 3);
        let dims: Vec<usize> = f.cones().iter().map(|c| c.dim).collect();
        assert_eq!(dims, vec![0, 1, 1]);
        assert_eq!(f.covers(0), &[1, 2]);
    }

    #[test]
    fn p2_has_seven_cones() {
        let doc = r#"{"lattice_rank":2,"rays":[[1,0],[0,1],[-1,-1]],"simplicial":true,
            "cones":[{"id":"a","rays":[0,1]},{"id":"b","rays":[1,2]},{"id":"c","rays":[0,2]}]}"#;
        let f = parse_fan(doc).unwrap();
        assert_eq!(f.len(), 7);
        assert_eq!(f.f_vector(), vec![3, 3, 1]);
        assert_eq!(f, projective_space(2).clone_with_ids(&f));
    }

    #[test]
    fn dependent_simplicial_cone_rejected() {
        let doc = r#"{"lattice_rank":2,"rays":[[1,0],[0,1],[1,1]],"simplicial":true,
            "cones":[{"id":"big","rays":[0,1,2]}]}"#;
        match parse_fan(doc) {
            Err(ToricError::Invalid(issues)) => {
                assert!(issues.iter().any(|i| matches!(i, FanIssue::NotIndependent { .. })))
            }
            other => panic!("expected invalid, got {other:?}"),
        }
    }

    #[test]
    fn missing_face_is_diamond_violation() {
        let doc = r#"{"lattice_rank":2,"rays":[[1,0],[0,1]],
            "cones":[{"id":"a","rays":[0]},{"id":"ab","rays":[0,1]}]}"#;
        match parse_fan(doc) {
            Err(ToricError::Invalid(issues)) => {
                assert!(issues.iter().any(|i| matches!(i, FanIssue::Diamond { .. })), "{issues:?}")
            }
            other => panic!("expected invalid, got {other:?}"),
        }
    }

    #[test]
    fn non_primitive_rays_fixed_with_warning() {
        let doc = r#"{"lattice_rank":1,"rays":[[2]],"cones":[{"id":"a","rays":[0]}]}"#;
        let f = parse_fan(doc).unwrap();
        assert_eq!(f.rays(), &[vec![1]]);
        assert_eq!(f.warnings().len(), 1);
    }

    #[test]
    fn parse_errors_carry_position() {
        let err = parse_fan("{\"lattice_rank\": 1,\n \"rays\": 3}").unwrap_err();
        let ToricError::Parse(msg) = err else { panic!() };
        assert!(msg.contains("line 2"), "{msg}");
    }

    #[test]
    fn fixture_shapes() {
        assert_eq!(projective_space(3).len(), 15);
        assert_eq!(trivial_fan(3).len(), 1);
        assert_eq!(hirzebruch(2).f_vector(), vec![4, 4, 1]);
        let p1p1 = product_fan(&projective_space(1), &projective_space(1));
        assert_eq!(p1p1.len(), 9);
        assert_eq!(square_cone().f_vector(), vec![1, 4, 4, 1]);
        assert!(!square_cone().is_simplicial());
        let unit = product_fan(&projective_space(2), &trivial_fan(0));
        assert_eq!(unit.f_vector(), projective_space(2).f_vector());
        assert!(standard_fan("nope", None).is_err());
    }

    #[test]
    fn document_round_trip() {
        for (_, f) in fan_corpus() {
            let back = Fan::from_doc(&f.to_doc()).unwrap();
            assert_eq!(back, f);
        }
    }

    impl Fan {
        fn clone_with_ids(&self, other: &Fan) -> Fan {
            let mut f = self.clone();
            for (c, o) in f.cones.iter_mut().zip(&other.cones) {
                c.id = o.id.clone();
            }
            f.simplicial = other.simplicial;
            f
        }
    }
}
