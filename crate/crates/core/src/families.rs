//! Concrete families of realizations: graph configurations (with momentum
//! quotients and the second Kirchhoff polynomial), wheels and whirls in
//! their standard coordinates, and seeded random/generic instances.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha20Rng;

use crate::config::{poly_det, Realization};
use crate::error::{Error, Result};
use crate::field::{FieldSpec, Scalar};
use crate::linalg::Matrix;
use crate::matroid::MatroidView;
use crate::poly::{Mono, MultiPoly, VarSet};

/// A finite multigraph with oriented, labelled edges.  Edge labels become
/// the polynomial variables of the graph configuration.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Graph {
    vertices: Vec<String>,
    /// (label, tail, head) with vertex indices.
    edges: Vec<(String, usize, usize)>,
}

impl Graph {
    pub fn new(vertices: Vec<String>, edges: Vec<(String, usize, usize)>) -> Result<Self> {
        if edges.is_empty() {
            return Err(Error::BadParameter("graph has no edges".into()));
        }
        for (i, v) in vertices.iter().enumerate() {
            if vertices[..i].contains(v) {
                return Err(Error::LabelCollision(v.clone()));
            }
        }
        for (l, t, h) in &edges {
            if *t >= vertices.len() || *h >= vertices.len() {
                return Err(Error::BadParameter(format!("edge {l} touches a missing vertex")));
            }
        }
        // Edge labels double as variables, so they must be distinct too.
        for (i, (l, _, _)) in edges.iter().enumerate() {
            if edges[..i].iter().any(|(m, _, _)| m == l) {
                return Err(Error::LabelCollision(l.clone()));
            }
        }
        Ok(Graph { vertices, edges })
    }

    pub fn vertices(&self) -> &[String] {
        &self.vertices
    }

    pub fn edges(&self) -> &[(String, usize, usize)] {
        &self.edges
    }

    pub fn edge_labels(&self) -> Vec<String> {
        self.edges.iter().map(|(l, _, _)| l.clone()).collect()
    }

    /// Vertex components under the edge relation, as sorted index lists.
    pub fn components(&self) -> Vec<Vec<usize>> {
        let mut parent: Vec<usize> = (0..self.vertices.len()).collect();
        fn find(parent: &mut Vec<usize>, mut x: usize) -> usize {
            while parent[x] != x {
                parent[x] = parent[parent[x]];
                x = parent[x];
            }
            x
        }
        for (_, t, h) in &self.edges {
            let (a, b) = (find(&mut parent, *t), find(&mut parent, *h));
            if a != b {
                parent[a] = b;
            }
        }
        let mut groups: Vec<Vec<usize>> = Vec::new();
        let mut root_of: Vec<Option<usize>> = vec![None; self.vertices.len()];
        for v in 0..self.vertices.len() {
            let r = find(&mut parent, v);
            match root_of[r] {
                Some(g) => groups[g].push(v),
                None => {
                    root_of[r] = Some(groups.len());
                    groups.push(vec![v]);
                }
            }
        }
        groups
    }

    pub fn is_connected(&self) -> bool {
        self.components().len() <= 1
    }

    /// Signed incidence row of one vertex: +1 on incoming edges, −1 on
    /// outgoing, 0 on loops.
    fn vertex_row(&self, field: FieldSpec, v: usize) -> Vec<Scalar> {
        self.edges
            .iter()
            .map(|(_, t, h)| {
                if t == h {
                    field.zero()
                } else if *h == v {
                    field.one()
                } else if *t == v {
                    -&field.one()
                } else {
                    field.zero()
                }
            })
            .collect()
    }

    /// The vertices whose rows the configuration keeps: all but the last
    /// vertex of each component.
    fn kept_vertices(&self) -> Vec<usize> {
        let components = self.components();
        let dropped: Vec<usize> = components.iter().map(|c| *c.last().unwrap()).collect();
        (0..self.vertices.len()).filter(|v| !dropped.contains(v)).collect()
    }

}

/// The graph configuration W_G: signed vertex rows with the last vertex of
/// each component dropped.  The matrix is totally unimodular, so ψ has unit
/// coefficients — one monomial per spanning forest.
pub fn graph_configuration(field: FieldSpec, g: &Graph) -> Result<Realization> {
    let rows: Vec<Vec<Scalar>> = g
        .kept_vertices()
        .into_iter()
        .map(|v| g.vertex_row(field, v))
        .collect();
    let matrix = if rows.is_empty() {
        Matrix::zero(field, 0, g.edges.len())
    } else {
        Matrix::from_rows(field, rows)?
    };
    Realization::new(matrix, g.edge_labels())
}

/// The covector of a momentum assignment, in the kept-row basis of the
/// graph configuration.  Momenta must sum to zero on every component and
/// not vanish identically.
pub fn momentum_covector(field: FieldSpec, g: &Graph, p: &[Scalar]) -> Result<Vec<Scalar>> {
    if p.len() != g.vertices.len() {
        return Err(Error::InvalidMomentum(format!(
            "{} momenta for {} vertices",
            p.len(),
            g.vertices.len()
        )));
    }
    for s in p {
        if s.field() != field {
            return Err(Error::FieldMismatch(field.to_string(), s.field().to_string()));
        }
    }
    if p.iter().all(Scalar::is_zero) {
        return Err(Error::InvalidMomentum("all momenta vanish".into()));
    }
    for c in g.components() {
        let mut sum = field.zero();
        for &v in &c {
            sum = &sum + &p[v];
        }
        if !sum.is_zero() {
            return Err(Error::InvalidMomentum("component momenta do not sum to zero".into()));
        }
    }
    // The configuration rows are the incidence rows of the kept vertices,
    // so φ(row_v) = p_v determines the covector; conservation makes the
    // value on each dropped row come out right automatically.
    Ok(g.kept_vertices().into_iter().map(|v| p[v].clone()).collect())
}

/// Kirchhoff polynomial: Σ_F x^F over spanning forests, computed purely
/// combinatorially (union–find acyclicity) as an oracle for ψ_{W_G}.
pub fn kirchhoff_polynomial(field: FieldSpec, g: &Graph) -> Result<MultiPoly> {
    let vars = VarSet::new(g.edge_labels())?;
    let n = g.edges.len();
    let rank = g.vertices.len() - g.components().len();
    let mut terms: Vec<(Mono, Scalar)> = Vec::new();
    for mask in 0u32..(1 << n) {
        if mask.count_ones() as usize != rank || !is_forest(g, mask) {
            continue;
        }
        let mono = (0..n).map(|e| (mask >> e & 1) as u32).collect();
        terms.push((mono, field.one()));
    }
    MultiPoly::from_terms(field, &vars, terms)
}

/// First Symanzik polynomial Σ_F x^{E∖F}: the Cremona image of the
/// Kirchhoff polynomial.
pub fn symanzik_polynomial(field: FieldSpec, g: &Graph) -> Result<MultiPoly> {
    let vars = VarSet::new(g.edge_labels())?;
    let n = g.edges.len();
    let rank = g.vertices.len() - g.components().len();
    let mut terms: Vec<(Mono, Scalar)> = Vec::new();
    for mask in 0u32..(1 << n) {
        if mask.count_ones() as usize != rank || !is_forest(g, mask) {
            continue;
        }
        let mono = (0..n).map(|e| 1 - (mask >> e & 1) as u32).collect();
        terms.push((mono, field.one()));
    }
    MultiPoly::from_terms(field, &vars, terms)
}

fn is_forest(g: &Graph, edge_mask: u32) -> bool {
    let mut parent: Vec<usize> = (0..g.vertices.len()).collect();
    fn find(parent: &mut Vec<usize>, mut x: usize) -> usize {
        while parent[x] != x {
            parent[x] = parent[parent[x]];
            x = parent[x];
        }
        x
    }
    for (e, (_, t, h)) in g.edges.iter().enumerate() {
        if edge_mask >> e & 1 == 0 {
            continue;
        }
        let (a, b) = (find(&mut parent, *t), find(&mut parent, *h));
        if a == b {
            return false;
        }
        parent[a] = b;
    }
    true
}

/// Second Kirchhoff polynomial of a connected graph with momenta p:
/// Σ over spanning 2-forests (T₁,T₂) of (Σ_{v∈T₁} p_v)²·x^{T₁⊔T₂}.
pub fn second_kirchhoff(field: FieldSpec, g: &Graph, p: &[Scalar]) -> Result<MultiPoly> {
    second_kirchhoff_variant(field, g, p, false)
}

/// Second Symanzik polynomial: the same sum with x^{E∖(T₁⊔T₂)}.
pub fn second_kirchhoff_cutset(field: FieldSpec, g: &Graph, p: &[Scalar]) -> Result<MultiPoly> {
    second_kirchhoff_variant(field, g, p, true)
}

fn second_kirchhoff_variant(
    field: FieldSpec,
    g: &Graph,
    p: &[Scalar],
    cutset: bool,
) -> Result<MultiPoly> {
    if !g.is_connected() {
        return Err(Error::Disconnected);
    }
    // Validates the momentum constraints.
    momentum_covector(field, g, p)?;
    let vars = VarSet::new(g.edge_labels())?;
    let n = g.edges.len();
    let nv = g.vertices.len();
    let mut terms: Vec<(Mono, Scalar)> = Vec::new();
    for mask in 0u32..(1 << n) {
        if mask.count_ones() as usize != nv - 2 || !is_forest(g, mask) {
            continue;
        }
        // The 2-forest splits the vertices into two blocks; sum p over the
        // block of vertex 0 (the sign cancels in the square).
        let mut parent: Vec<usize> = (0..nv).collect();
        fn find(parent: &mut Vec<usize>, mut x: usize) -> usize {
            while parent[x] != x {
                parent[x] = parent[parent[x]];
                x = parent[x];
            }
            x
        }
        for (e, (_, t, h)) in g.edges.iter().enumerate() {
            if mask >> e & 1 == 1 {
                let (a, b) = (find(&mut parent, *t), find(&mut parent, *h));
                parent[a] = b;
            }
        }
        let root0 = find(&mut parent, 0);
        let mut m = field.zero();
        for v in 0..nv {
            if find(&mut parent, v) == root0 {
                m = &m + &p[v];
            }
        }
        if m.is_zero() {
            continue;
        }
        let select = if cutset { !mask } else { mask };
        let mono = (0..n).map(|e| (select >> e & 1) as u32).collect();
        terms.push((mono, &m * &m));
    }
    MultiPoly::from_terms(field, &vars, terms)
}

/// Two vertices joined by k parallel edges; its matroid is U(1, k).
pub fn banana_graph(k: usize) -> Result<Graph> {
    if k == 0 {
        return Err(Error::BadParameter("need at least one edge".into()));
    }
    let vertices = vec!["u".to_string(), "v".to_string()];
    let edges = (1..=k).map(|i| (format!("x{i}"), 0, 1)).collect();
    Graph::new(vertices, edges)
}

/// The k-cycle; its matroid is U(k−1, k).
pub fn cycle_graph(k: usize) -> Result<Graph> {
    if k < 2 {
        return Err(Error::BadParameter("need at least two edges".into()));
    }
    let vertices = (1..=k).map(|i| format!("v{i}")).collect();
    let edges = (0..k).map(|i| (format!("x{}", i + 1), i, (i + 1) % k)).collect();
    Graph::new(vertices, edges)
}

/// The complete graph on k vertices, edges in lexicographic order.
pub fn complete_graph(k: usize) -> Result<Graph> {
    if k < 2 {
        return Err(Error::BadParameter("need at least two vertices".into()));
    }
    let vertices = (1..=k).map(|i| format!("v{i}")).collect();
    let mut edges = Vec::new();
    for i in 0..k {
        for j in (i + 1)..k {
            edges.push((format!("x{}", edges.len() + 1), i, j));
        }
    }
    Graph::new(vertices, edges)
}

/// Three parallel two-edge paths between a shared pair of endpoints; the
/// smallest graph whose matroid is the triangular prism matroid.
pub fn theta_graph() -> Graph {
    let vertices = (1..=5).map(|i| format!("v{i}")).collect();
    let edges = vec![
        ("x1".to_string(), 0, 3),
        ("x2".to_string(), 0, 4),
        ("x3".to_string(), 1, 3),
        ("x4".to_string(), 1, 4),
        ("x5".to_string(), 2, 3),
        ("x6".to_string(), 2, 4),
    ];
    Graph::new(vertices, edges).expect("fixed graph is valid")
}

/// The wheel graph with n rim vertices: hub last (so the configuration
/// keeps exactly the rim rows), spokes s_i from the hub to rim vertex i,
/// rim edges r_i from rim vertex i+1 (cyclically) to rim vertex i.
pub fn wheel_graph(n: usize) -> Result<Graph> {
    if n < 3 {
        return Err(Error::BadParameter("a wheel needs at least 3 rim vertices".into()));
    }
    let mut vertices: Vec<String> = (1..=n).map(|i| format!("v{i}")).collect();
    vertices.push("hub".into());
    let hub = n;
    let mut edges: Vec<(String, usize, usize)> = (0..n).map(|i| (format!("s{}", i + 1), hub, i)).collect();
    for i in 0..n {
        edges.push((format!("r{}", i + 1), (i + 1) % n, i));
    }
    Graph::new(vertices, edges)
}

/// The rank-n wheel (t = 1) or whirl (t ∉ {0, 1}) realization on columns
/// s1..sn, r1..rn, with rows
/// w¹ = s₁ + r₁ − t·r_n and wⁱ = s_i + r_i − r_{i−1} for i ≥ 2.
pub fn wheel_whirl_realization(field: FieldSpec, n: usize, t: &Scalar) -> Result<Realization> {
    if t.field() != field {
        return Err(Error::FieldMismatch(field.to_string(), t.field().to_string()));
    }
    if t.is_zero() {
        return Err(Error::BadParameter("wheel parameter t must be nonzero".into()));
    }
    let min = if t.is_one() { 3 } else { 2 };
    if n < min {
        return Err(Error::BadParameter(format!("need at least {min} rim elements")));
    }
    let mut rows = Vec::with_capacity(n);
    for i in 0..n {
        let mut row = vec![field.zero(); 2 * n];
        row[i] = field.one();
        row[n + i] = field.one();
        if i == 0 {
            row[2 * n - 1] = -t;
        } else {
            row[n + i - 1] = -&field.one();
        }
        rows.push(row);
    }
    let labels: Vec<String> = (1..=n)
        .map(|i| format!("s{i}"))
        .chain((1..=n).map(|i| format!("r{i}")))
        .collect();
    Realization::new(
        Matrix::from_rows(field, rows)?,
        labels,
    )
}

/// Recovers the parameter t from a realization in wheel/whirl shape, or
/// reports that the matrix is not in that shape.
pub fn wheel_parameter(w: &Realization) -> Result<Scalar> {
    let n2 = w.size();
    if n2 < 4 || n2 % 2 != 0 || w.rank() * 2 != n2 {
        return Err(Error::NotAWheelRealization);
    }
    let n = n2 / 2;
    let field = w.field();
    let t = -w.matrix().get(0, 2 * n - 1);
    if t.is_zero() {
        return Err(Error::NotAWheelRealization);
    }
    let reference = wheel_whirl_realization(field, n, &t)?;
    if w.matrix() != reference.matrix() {
        return Err(Error::NotAWheelRealization);
    }
    Ok(t)
}

/// The tridiagonal-with-corner coordinates for wheels and whirls: builds
/// the symmetric matrix Q_n over fresh variables z1..zn, y1..yn and checks
/// that substituting
///   z₁ ↦ x_{s₁}+x_{r₁}+t²·x_{r_n},  z_i ↦ x_{s_i}+x_{r_i}+x_{r_{i−1}},
///   y_i ↦ −x_{r_i} (i < n),         y_n ↦ −t·x_{r_n}
/// turns det Q_n into det Q_W exactly.
pub fn wheel_coordinate_change_check(w: &Realization) -> Result<()> {
    let t = wheel_parameter(w)?;
    let field = w.field();
    let n = w.size() / 2;
    let zy = VarSet::new(
        (1..=n)
            .map(|i| format!("z{i}"))
            .chain((1..=n).map(|i| format!("y{i}")))
            .collect::<Vec<_>>(),
    )?;
    let zero = MultiPoly::zero(field, &zy);
    let mut q: Vec<Vec<MultiPoly>> = vec![vec![zero; n]; n];
    for i in 0..n {
        q[i][i] = MultiPoly::var(field, &zy, i);
    }
    for i in 0..n.saturating_sub(1) {
        let y = MultiPoly::var(field, &zy, n + i);
        q[i][i + 1] = q[i][i + 1].add(&y)?;
        q[i + 1][i] = q[i + 1][i].add(&y)?;
    }
    let corner = MultiPoly::var(field, &zy, 2 * n - 1);
    q[0][n - 1] = q[0][n - 1].add(&corner)?;
    q[n - 1][0] = q[n - 1][0].add(&corner)?;
    let det_q = poly_det(field, &zy, &q)?;
    let x = |idx: usize| MultiPoly::var(field, w.vars(), idx);
    let t_sq = &t * &t;
    let mut images: Vec<MultiPoly> = Vec::with_capacity(2 * n);
    for i in 0..n {
        let mut z = x(i).add(&x(n + i))?;
        z = if i == 0 {
            z.add(&x(2 * n - 1).scale(&t_sq))?
        } else {
            z.add(&x(n + i - 1))?
        };
        images.push(z);
    }
    for i in 0..n {
        let y = if i + 1 < n {
            x(n + i).neg()
        } else {
            x(2 * n - 1).scale(&-&t)
        };
        images.push(y);
    }
    if det_q.substitute(&images)? != w.det_form()? {
        return Err(Error::IdentityFailed("wheel coordinate change".into()));
    }
    Ok(())
}

/// Basis generating polynomial Σ_B x^B of a matroid with unit coefficients.
pub fn matroid_basis_polynomial(
    field: FieldSpec,
    m: &MatroidView,
    vars: &VarSet,
) -> Result<MultiPoly> {
    if vars.len() != m.size() {
        return Err(Error::DimensionMismatch(format!(
            "{} variables for {} elements",
            vars.len(),
            m.size()
        )));
    }
    let terms = m
        .bases()
        .iter()
        .map(|&b| ((0..m.size()).map(|e| (b >> e & 1) as u32).collect(), field.one()))
        .collect();
    MultiPoly::from_terms(field, vars, terms)
}

const GENERIC_ATTEMPTS: usize = 64;

fn random_scalar(field: FieldSpec, rng: &mut ChaCha20Rng) -> Scalar {
    match field {
        FieldSpec::Q => field.from_i64(rng.gen_range(-999i64..=999)),
        FieldSpec::Fp(p) => field.from_i64(rng.gen_range(0..p as i64)),
    }
}

fn random_matrix(field: FieldSpec, r: usize, n: usize, rng: &mut ChaCha20Rng) -> Matrix {
    let rows = (0..r)
        .map(|_| (0..n).map(|_| random_scalar(field, rng)).collect())
        .collect();
    Matrix::from_rows(field, rows).expect("consistent row lengths")
}

/// A seeded realization of the uniform matroid U(r, n): every maximal minor
/// nonzero.  Fails with `GenericityFailure` when the field is too small.
pub fn generic_uniform(field: FieldSpec, r: usize, n: usize, seed: u64) -> Result<Realization> {
    if r == 0 || r > n {
        return Err(Error::BadParameter("need 0 < r ≤ n".into()));
    }
    let mut rng = ChaCha20Rng::seed_from_u64(seed);
    'attempt: for _ in 0..GENERIC_ATTEMPTS {
        let m = random_matrix(field, r, n, &mut rng);
        use itertools::Itertools;
        for cols in (0..n).combinations(r) {
            if m.col_submatrix(&cols).det()?.is_zero() {
                continue 'attempt;
            }
        }
        let labels = VarSet::numbered("x", n);
        return Realization::new(m, labels.labels().to_vec());
    }
    Err(Error::GenericityFailure(GENERIC_ATTEMPTS))
}

/// A seeded random realization of the given rank; the matroid is whatever
/// the random entries give (loops and parallel elements included).
pub fn random_realization(field: FieldSpec, r: usize, n: usize, seed: u64) -> Result<Realization> {
    if r == 0 || r > n {
        return Err(Error::BadParameter("need 0 < r ≤ n".into()));
    }
    let mut rng = ChaCha20Rng::seed_from_u64(seed);
    for _ in 0..GENERIC_ATTEMPTS {
        let m = random_matrix(field, r, n, &mut rng);
        if m.rank() == r {
            let labels = VarSet::numbered("x", n);
            return Realization::new(m, labels.labels().to_vec());
        }
    }
    Err(Error::GenericityFailure(GENERIC_ATTEMPTS))
}

/// A seeded random nonzero covector for quotient experiments.
pub fn random_covector(field: FieldSpec, r: usize, seed: u64) -> Vec<Scalar> {
    let mut rng = ChaCha20Rng::seed_from_u64(seed);
    loop {
        let phi: Vec<Scalar> = (0..r).map(|_| random_scalar(field, &mut rng)).collect();
        if phi.iter().any(|c| !c.is_zero()) {
            return phi;
        }
    }
}

/// A seeded random connected multigraph on 3–5 vertices: a random spanning
/// tree plus a few extra (non-loop) edges, labelled x1, x2, ….
pub fn random_connected_graph(seed: u64) -> Graph {
    let mut rng = ChaCha20Rng::seed_from_u64(seed);
    let nv = rng.gen_range(3usize..=5);
    let vertices: Vec<String> = (1..=nv).map(|i| format!("v{i}")).collect();
    let mut edges: Vec<(String, usize, usize)> = Vec::new();
    for v in 1..nv {
        let u = rng.gen_range(0..v);
        edges.push((format!("x{}", edges.len() + 1), u, v));
    }
    let extra = rng.gen_range(1usize..=3);
    for _ in 0..extra {
        loop {
            let a = rng.gen_range(0..nv);
            let b = rng.gen_range(0..nv);
            if a != b {
                edges.push((format!("x{}", edges.len() + 1), a, b));
                break;
            }
        }
    }
    Graph::new(vertices, edges).expect("construction is valid")
}

/// A seeded random zero-sum, not identically zero momentum assignment.
pub fn random_momentum(field: FieldSpec, nv: usize, seed: u64) -> Vec<Scalar> {
    let mut rng = ChaCha20Rng::seed_from_u64(seed);
    loop {
        let mut p: Vec<Scalar> = (0..nv - 1).map(|_| random_scalar(field, &mut rng)).collect();
        let sum = p.iter().fold(field.zero(), |acc, s| &acc + s);
        p.push(-&sum);
        if p.iter().any(|s| !s.is_zero()) {
            return p;
        }
    }
}
