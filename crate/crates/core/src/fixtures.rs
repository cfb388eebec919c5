//! Hand-built models used by the tests, the `check` suites and the shipped
//! data files.

use std::collections::BTreeMap;

use crate::cubical::{CubicalDiagram, Hyperresolution};
use crate::euler::{circle_two_cells, CellComplex, CellMap};
use crate::exactalg::BitMatrix;
use crate::fcomplex::{ChainComplex, ChainMap, FilteredComplex};
use crate::toricfan::{
    blown_up_p2, projective_space, refinement_pushforward, toric_cell_complex, trivial_fan, Fan, ToricCellComplex,
};

/// The square `Ỹ → X̃, Ỹ → Y, X̃ → X, Y → X` for the blowup of `ℝP²` at a
/// point: `X̃` is a Klein bottle and the exceptional curve `Ỹ` a circle.
///
/// Masks: `∅ = X`, `{0} = X̃`, `{1} = Y`, `{0,1} = Ỹ`. The objects carry
/// their toric filtrations.
pub struct BlowupSquare {
    pub base: Fan,
    pub blown_up: Fan,
    pub diagram: CubicalDiagram,
}

pub fn klein_square() -> BlowupSquare {
    let base = projective_space(2);
    let blown_up = blown_up_p2();
    let coarse = toric_cell_complex(&base).expect("fixture fan");
    let fine = toric_cell_complex(&blown_up).expect("fixture fan");
    let chart = |f: &Fan, rays: &[usize]| (0..f.len()).find(|&c| f.cone(c).rays == rays).expect("cone exists");
    // r3 = (1,1) lies in the cone on r0, r1; every other cone keeps its rays
    let assignment: Vec<usize> = blown_up
        .cones()
        .iter()
        .map(|c| {
            if c.rays.contains(&3) {
                chart(&base, &[0, 1])
            } else {
                chart(&base, &c.rays)
            }
        })
        .collect();
    let push = refinement_pushforward(&blown_up, &fine, &base, &coarse, &assignment).expect("refinement");
    let point = chart(&base, &[0, 1]);
    let (y, y_in) = coarse.orbit_closure(&base, point);
    let (circle, circle_in) = fine.orbit_closure(&blown_up, chart(&blown_up, &[3]));
    let circle_to_point = restrict_map(&fine, &circle_in, &push, &coarse, &y_in, &circle, &y);
    let objects = BTreeMap::from([(0, coarse.filtration.clone()), (1, fine.filtration.clone()), (2, y), (3, circle)]);
    let maps = BTreeMap::from([((3, 1), circle_in), ((3, 2), circle_to_point), ((1, 0), push), ((2, 0), y_in)]);
    let diagram = CubicalDiagram::new(1, objects, maps).expect("blowup square commutes");
    BlowupSquare { base, blown_up, diagram }
}

/// `g` with `j ∘ g = f ∘ i`, for inclusions `i`, `j` of subcomplexes spanned by cells.
fn restrict_map(
    fine: &ToricCellComplex,
    i: &ChainMap,
    f: &ChainMap,
    coarse: &ToricCellComplex,
    j: &ChainMap,
    source: &FilteredComplex,
    target: &FilteredComplex,
) -> ChainMap {
    let (s, t) = (source.complex(), target.complex());
    let components = s
        .degrees()
        .map(|k| {
            let fi = f.component(k, &fine.complex, &coarse.complex).mul(&i.component(k, s, &fine.complex));
            let jk = j.component(k, t, &coarse.complex);
            // j is a coordinate inclusion: read off the rows it hits
            let mut m = BitMatrix::zeros(t.dim(k), s.dim(k));
            for r in 0..t.dim(k) {
                let row = (0..jk.rows()).find(|&x| jk.get(x, r)).expect("inclusion column");
                for c in 0..s.dim(k) {
                    m.set(r, c, fi.get(row, c));
                }
            }
            (k, m)
        })
        .collect();
    ChainMap { components }
}

/// `Y ⊂ ℙ¹` the two fixed points, with the complement `ℝ*`.
pub fn p1_boundary_inclusion() -> (CubicalDiagram, FilteredComplex) {
    let p1 = projective_space(1);
    let t = toric_cell_complex(&p1).expect("fixture fan");
    let sel = t.cells_where(|c| c != 0);
    let (y, inc) = crate::fcomplex::subcomplex(&t.filtration, &sel).expect("fixed points form a subcomplex");
    let diagram = CubicalDiagram::arrow(y, t.filtration.clone(), inc).expect("inclusion is filtered");
    let complement = toric_cell_complex(&trivial_fan(1)).expect("fixture fan").filtration;
    (diagram, complement)
}

fn points(n: usize) -> ChainComplex {
    ChainComplex::graded(0, vec![n])
}

/// Disjoint union of circles, each with one vertex and one loop.
fn loops(n: usize) -> ChainComplex {
    ChainComplex::new(0, vec![n, n], [(1, BitMatrix::zeros(n, n))]).expect("loops")
}

fn point_map(rows: usize, cols: usize, ones: &[(usize, usize)]) -> ChainMap {
    ChainMap { components: vec![(0, BitMatrix::from_entries(rows, cols, ones))] }
}

/// Two circles glued at a point: `X⁽⁰⁾ = S¹ ⊔ S¹`, `X⁽¹⁾` the double point.
pub fn wedge_of_circles() -> Hyperresolution {
    let faces = BTreeMap::from([((1, 0), point_map(2, 1, &[(0, 0)])), ((1, 1), point_map(2, 1, &[(1, 0)]))]);
    Hyperresolution::new(vec![loops(2), points(1)], faces).expect("wedge fixture")
}

/// Two circles meeting transversally in two points.
pub fn two_circles_two_points() -> Hyperresolution {
    let circle = |n: usize| {
        // n copies of the circle with two vertices and two edges
        let mut d = Vec::new();
        for c in 0..n {
            for e in 0..2 {
                d.push((2 * c, 2 * c + e));
                d.push((2 * c + 1, 2 * c + e));
            }
        }
        ChainComplex::new(0, vec![2 * n, 2 * n], [(1, BitMatrix::from_entries(2 * n, 2 * n, &d))]).expect("circles")
    };
    // double point p goes to vertex 0 of each circle, q to vertex 1
    let faces = BTreeMap::from([
        ((1, 0), point_map(4, 2, &[(0, 0), (1, 1)])),
        ((1, 1), point_map(4, 2, &[(2, 0), (3, 1)])),
    ]);
    Hyperresolution::new(vec![circle(2), points(2)], faces).expect("two circles fixture")
}

/// Three circles `a, b, c` through one common point: double points `ab, ac, bc`
/// and the triple point `abc`. The face `d_j` forgets the `j`-th branch.
pub fn triple_point() -> Hyperresolution {
    // level 1 order: ab, ac, bc; d_0 keeps the second letter, d_1 the first
    let faces = BTreeMap::from([
        ((1, 0), point_map(3, 3, &[(1, 0), (2, 1), (2, 2)])),
        ((1, 1), point_map(3, 3, &[(0, 0), (0, 1), (1, 2)])),
        ((2, 0), point_map(3, 1, &[(2, 0)])),
        ((2, 1), point_map(3, 1, &[(1, 0)])),
        ((2, 2), point_map(3, 1, &[(0, 0)])),
    ]);
    Hyperresolution::new(vec![loops(3), points(3), points(1)], faces).expect("triple point fixture")
}

/// Every hyperresolution fixture with its expected total Betti numbers.
pub fn hyperresolution_fixtures() -> Vec<(&'static str, Hyperresolution, Vec<usize>)> {
    vec![
        ("circle", Hyperresolution::new(vec![loops(1)], BTreeMap::new()).expect("circle"), vec![1, 1]),
        ("wedge", wedge_of_circles(), vec![1, 2]),
        ("two-circles-two-points", two_circles_two_points(), vec![1, 3]),
        ("triple-point", triple_point(), vec![1, 3, 0]),
    ]
}

/// The circle `ℝP¹` with the squaring map `(u:v) ↦ (u²:v²)`: both open arcs
/// fold onto the positive one and the two fixed points stay put.
pub fn circle_fold() -> (CellComplex, CellMap) {
    let c = circle_two_cells();
    let pos = c.find("+").expect("arc");
    let assignment = (0..c.len()).map(|x| if c.label(x) == "-" { pos } else { x }).collect();
    let f = CellMap::new(&c, &c, assignment).expect("fold is cellular");
    (c, f)
}

/// `(ℝP¹)ᵏ` and the map that is the identity on coordinates in `keep` (a
/// bitmask) and the fold elsewhere.
pub fn torus_fold(k: usize, keep: usize) -> (CellComplex, CellMap) {
    let (circle, fold) = circle_fold();
    let id = CellMap::identity(&circle);
    let factor = |i: usize| if keep >> i & 1 == 1 { &id } else { &fold };
    let mut x = circle.clone();
    let mut f = factor(k - 1).clone();
    // build right to left so each product has a single circle on the left
    for i in (0..k - 1).rev() {
        let p = circle.product(&x);
        f = factor(i).product(&f, (&circle, &circle), (&x, &x), (&p, &p)).expect("products of cellular maps");
        x = p;
    }
    (x, f)
}

/// Normal fan of the base polytope of the Fano matroid: a six-dimensional
/// projective toric variety whose spectral sequence does not collapse at
/// `Ẽ²`.
///
/// Vertices are the 28 bases of the Fano plane. Facets are `x_i ≥ 0`,
/// `x_i ≤ 1` and `x_L ≤ 2` for the seven lines `L`; every face is an
/// intersection of facets, and its normal cone is spanned by the inner
/// normals of the facets containing it, in `ℤ⁷ / ℤ(1, …, 1) ≅ ℤ⁶`.
pub fn fano_matroid_fan() -> Fan {
    use std::collections::BTreeSet;

    use crate::exactalg::IntMatrix;
    use crate::toricfan::{ConeDoc, FanDoc, ZERO_CONE_ID};

    const LINES: [[usize; 3]; 7] = [[0, 1, 2], [0, 3, 4], [0, 5, 6], [1, 3, 5], [1, 4, 6], [2, 3, 6], [2, 4, 5]];
    let mut vertices: Vec<[i64; 7]> = Vec::new();
    for a in 0..7 {
        for b in a + 1..7 {
            for c in b + 1..7 {
                if !LINES.contains(&[a, b, c]) {
                    let mut v = [0; 7];
                    for i in [a, b, c] {
                        v[i] = 1;
                    }
                    vertices.push(v);
                }
            }
        }
    }
    // ⟨u, x⟩ ≥ c with inner normal u
    let mut normals: Vec<([i64; 7], i64)> = Vec::new();
    for sign in [1, -1] {
        for i in 0..7 {
            let mut u = [0; 7];
            u[i] = sign;
            normals.push((u, if sign == 1 { 0 } else { -1 }));
        }
    }
    for line in &LINES {
        let mut u = [0; 7];
        for &i in line {
            u[i] = -1;
        }
        normals.push((u, -2));
    }
    let tight: Vec<BTreeSet<usize>> = normals
        .iter()
        .map(|(u, c)| {
            (0..vertices.len()).filter(|&v| vertices[v].iter().zip(u).map(|(x, y)| x * y).sum::<i64>() == *c).collect()
        })
        .collect();
    let full: BTreeSet<usize> = (0..vertices.len()).collect();
    let mut faces = BTreeSet::from([full.clone()]);
    let mut todo = vec![full];
    while let Some(f) = todo.pop() {
        for t in &tight {
            let g: BTreeSet<usize> = f.intersection(t).copied().collect();
            if !g.is_empty() && faces.insert(g.clone()) {
                todo.push(g);
            }
        }
    }
    debug_assert!(tight.iter().all(|t| {
        let v: Vec<usize> = t.iter().copied().collect();
        let rows: Vec<Vec<i64>> = v[1..].iter().map(|&w| (0..7).map(|i| vertices[w][i] - vertices[v[0]][i]).collect()).collect();
        IntMatrix::from_i64_rows(7, &rows).rank() == 5
    }));
    let rays = normals.iter().map(|(u, _)| (0..6).map(|j| u[j] - u[6]).collect()).collect();
    let cones = faces
        .iter()
        .map(|f| {
            let rays: Vec<usize> = (0..normals.len()).filter(|&k| f.is_subset(&tight[k])).collect();
            let id = if rays.is_empty() { ZERO_CONE_ID.to_string() } else { rays.iter().map(|r| format!("r{r}")).collect() };
            ConeDoc { id, rays, faces: None }
        })
        .collect();
    Fan::from_doc(&FanDoc { lattice_rank: 6, rays, simplicial: false, cones }).expect("normal fan of a polytope")
}

const BAD_FAN: &str = r#"{
  "lattice_rank": 2,
  "rays": [[1, 0], [0, 1]],
  "cones": [
    {"id": "a", "rays": [0]},
    {"id": "ab", "rays": [0, 1]}
  ]
}
"#;

fn pretty<T: serde::Serialize>(value: &T) -> String {
    let mut s = serde_json::to_string_pretty(value).expect("documents serialize");
    s.push('\n');
    s
}

/// Contents of the files shipped in the repository's `data/` directory.
pub fn data_files() -> Vec<(&'static str, String)> {
    use crate::cubical::{DiagramDoc, HyperresDoc};
    use crate::euler::{CellComplexDoc, FunctionDoc, MapDoc};
    use crate::fcomplex::doc::ComplexDoc;
    use crate::toricfan::{hirzebruch, square_cone, standard_fan};

    let fan = |f: Fan| pretty(&f.to_doc());
    let toric = |f: &Fan| pretty(&ComplexDoc::from_filtered(&toric_cell_complex(f).expect("fixture fan").filtration));
    let circle = ChainComplex::new(0, vec![2, 2], [(1, BitMatrix::from_entries(2, 2, &[(0, 0), (1, 0), (0, 1), (1, 1)]))])
        .expect("circle");
    let (p1_diagram, p1_complement) = p1_boundary_inclusion();
    let (torus, fold) = torus_fold(2, 0b01);
    let one = crate::euler::ConstructibleFunction::constant(&torus, 1);
    let (c1, f1) = circle_fold();
    vec![
        ("P2.fan", fan(projective_space(2))),
        ("P1xP1.fan", fan(standard_fan("P1xP1", None).expect("fixture"))),
        ("hirzebruch2.fan", fan(hirzebruch(2))),
        ("blown-up-P2.fan", fan(blown_up_p2())),
        ("square-cone.fan", fan(square_cone())),
        ("fano-matroid.fan", fan(fano_matroid_fan())),
        ("bad.fan", BAD_FAN.to_string()),
        ("circle.cx", pretty(&ComplexDoc::from_complex(&circle))),
        ("point.cx", pretty(&ComplexDoc::from_complex(&points(1)))),
        ("rp2.cx", toric(&projective_space(2))),
        ("klein.cx", toric(&blown_up_p2())),
        ("klein-square.diagram", pretty(&DiagramDoc::from_diagram(&klein_square().diagram))),
        ("p1-boundary.diagram", pretty(&DiagramDoc::from_diagram(&p1_diagram))),
        ("p1-complement.cx", pretty(&ComplexDoc::from_filtered(&p1_complement))),
        ("wedge.hyperres", pretty(&HyperresDoc::from_hyperresolution(&wedge_of_circles()))),
        ("two-circles.hyperres", pretty(&HyperresDoc::from_hyperresolution(&two_circles_two_points()))),
        ("triple-point.hyperres", pretty(&HyperresDoc::from_hyperresolution(&triple_point()))),
        ("circle.cells", pretty(&CellComplexDoc::from_complex(&c1))),
        ("circle-fold.map", pretty(&MapDoc::from_map(&c1, &c1, &f1))),
        ("torus2.cells", pretty(&CellComplexDoc::from_complex(&torus))),
        ("torus2-fold.map", pretty(&MapDoc::from_map(&torus, &torus, &fold))),
        ("torus2-one.fn", pretty(&FunctionDoc::from_function(&torus, &one))),
        (
            "triangle.sc",
            "{\n  \"vertices\": 3,\n  \"simplices\": [[0, 1], [1, 2], [0, 2]]\n}\n".to_string(),
        ),
    ]
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::cubical::{is_acyclic, simple_filtered, skeleton_filtration, square_sequence};
    use crate::euler::{pushforward_cf, ConstructibleFunction};

    #[test]
    fn fano_polytope_face_numbers() {
        let fan = fano_matroid_fan();
        assert_eq!(fan.f_vector(), vec![28, 126, 245, 238, 112, 21, 1]);
        let alternating: i64 = fan.f_vector().iter().enumerate().map(|(k, &f)| if k % 2 == 0 { f as i64 } else { -(f as i64) }).sum();
        assert_eq!(alternating, 1);
    }

    #[test]
    fn klein_square_dims() {
        let sq = klein_square();
        let rows = square_sequence(&sq.diagram).unwrap();
        let dims: Vec<[usize; 3]> = rows.iter().map(|r| r.dims).collect();
        assert_eq!(dims, vec![[1, 2, 1], [1, 2, 1], [0, 1, 1]]);
        assert!(rows.iter().all(|r| r.is_exact()), "{rows:?}");
        let canonical = sq.diagram.with_canonical_filtrations().unwrap();
        assert!(is_acyclic(&simple_filtered(&canonical).unwrap()).unwrap());
    }

    #[test]
    fn hyperresolution_bettis() {
        for (name, h, expected) in hyperresolution_fixtures() {
            let f = skeleton_filtration(&h).unwrap();
            let b: Vec<usize> = f.complex().bettis().into_iter().map(|(_, b)| b).collect();
            assert_eq!(b, expected, "{name}");
        }
    }

    #[test]
    fn fold_doubles_the_positive_arc() {
        let (c, f) = circle_fold();
        let g = pushforward_cf(&f, &c, &c, &ConstructibleFunction::constant(&c, 1)).unwrap();
        assert_eq!(g.get(c.find("+").unwrap()), 2);
        assert_eq!(g.get(c.find("-").unwrap()), 0);
        assert_eq!(g.get(c.find("0").unwrap()), 1);
    }

    #[test]
    fn torus_fold_has_product_labels() {
        let (x, f) = torus_fold(3, 0b010);
        assert_eq!(x.len(), 64);
        let c = x.find("-×-×-").unwrap();
        assert_eq!(x.label(f.assignment[c]), "+×-×+");
    }
}
