//! Quivers, involutions, the bound quiver of an iquiver algebra, and the
//! Euler and Cartan forms.

use std::collections::{BTreeMap, HashMap};

use serde::{Deserialize, Serialize};
use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum QuiverError {
    #[error("unknown vertex `{0}`")]
    UnknownVertex(String),
    #[error("unknown arrow `{0}`")]
    UnknownArrow(String),
    #[error("duplicate vertex `{0}`")]
    DuplicateVertex(String),
    #[error("duplicate arrow label `{0}`")]
    DuplicateArrow(String),
    #[error("arrow `{0}` is a loop but loops are not allowed")]
    LoopNotAllowed(String),
    #[error("vertex map is not an involution at `{0}`")]
    NotInvolution(String),
    #[error("arrow `{0}` has no compatible image under the involution")]
    NoArrowImage(String),
    #[error("arrow `{0}` admits several images; supply arrow_tau explicitly")]
    AmbiguousArrowImage(String),
    #[error("invalid quiver description: {0}")]
    Parse(String),
}

pub type DimVector = Vec<i64>;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Arrow {
    pub source: usize,
    pub target: usize,
    pub label: String,
}

/// A finite quiver with string vertex ids. Vertices are stored in the order
/// given; arrows refer to vertex positions.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Quiver {
    pub vertices: Vec<String>,
    pub arrows: Vec<Arrow>,
    pub allow_loops: bool,
}

impl Quiver {
    pub fn new<S: AsRef<str>>(
        vertices: &[S],
        arrows: &[(S, S, S)],
        allow_loops: bool,
    ) -> Result<Self, QuiverError> {
        let vertices: Vec<String> = vertices.iter().map(|v| v.as_ref().to_string()).collect();
        let mut seen = HashMap::new();
        for (i, v) in vertices.iter().enumerate() {
            if seen.insert(v.clone(), i).is_some() {
                return Err(QuiverError::DuplicateVertex(v.clone()));
            }
        }
        let mut labels = HashMap::new();
        let mut out = Vec::new();
        for (s, t, l) in arrows {
            let source = *seen
                .get(s.as_ref())
                .ok_or_else(|| QuiverError::UnknownVertex(s.as_ref().to_string()))?;
            let target = *seen
                .get(t.as_ref())
                .ok_or_else(|| QuiverError::UnknownVertex(t.as_ref().to_string()))?;
            let label = l.as_ref().to_string();
            if labels.insert(label.clone(), ()).is_some() {
                return Err(QuiverError::DuplicateArrow(label));
            }
            if source == target && !allow_loops {
                return Err(QuiverError::LoopNotAllowed(label));
            }
            out.push(Arrow {
                source,
                target,
                label,
            });
        }
        Ok(Self {
            vertices,
            arrows: out,
            allow_loops,
        })
    }

    pub fn n_vertices(&self) -> usize {
        self.vertices.len()
    }

    pub fn vertex_index(&self, id: &str) -> Result<usize, QuiverError> {
        self.vertices
            .iter()
            .position(|v| v == id)
            .ok_or_else(|| QuiverError::UnknownVertex(id.to_string()))
    }

    pub fn arrow_index(&self, label: &str) -> Result<usize, QuiverError> {
        self.arrows
            .iter()
            .position(|a| a.label == label)
            .ok_or_else(|| QuiverError::UnknownArrow(label.to_string()))
    }

    /// Number of arrows `i -> j`.
    pub fn arrow_count(&self, i: usize, j: usize) -> i64 {
        self.arrows
            .iter()
            .filter(|a| a.source == i && a.target == j)
            .count() as i64
    }

    /// Linear quiver `1 -> 2 -> ... -> n`.
    pub fn linear_a(n: usize) -> Self {
        let vs: Vec<String> = (1..=n).map(|i| i.to_string()).collect();
        let arrows: Vec<(String, String, String)> = (1..n)
            .map(|i| (i.to_string(), (i + 1).to_string(), format!("a{i}")))
            .collect();
        Self::new(&vs, &arrows, false).unwrap()
    }

    /// Rank-two quiver with `a` arrows `1 -> 2` and `b` arrows `2 -> 1`.
    pub fn rank_two(a: usize, b: usize) -> Self {
        let mut arrows = Vec::new();
        for k in 0..a {
            arrows.push(("1".to_string(), "2".to_string(), format!("a{}", k + 1)));
        }
        for k in 0..b {
            arrows.push(("2".to_string(), "1".to_string(), format!("b{}", k + 1)));
        }
        Self::new(&["1".to_string(), "2".to_string()], &arrows, false).unwrap()
    }

    /// One vertex, no arrows.
    pub fn point() -> Self {
        Self::new::<&str>(&["1"], &[], false).unwrap()
    }

    /// One vertex with a single loop `a`.
    pub fn jordan() -> Self {
        Self::new(&["1"], &[("1", "1", "a")], true).unwrap()
    }

    /// The Kronecker quiver `1 => 2` with arrows `a`, `b`.
    pub fn kronecker() -> Self {
        Self::rank_two(2, 0)
    }

    pub fn form_data(&self) -> FormData {
        FormData::of(self)
    }

    /// Opposite quiver, same vertex and arrow order.
    pub fn opposite(&self) -> Self {
        Self {
            vertices: self.vertices.clone(),
            arrows: self
                .arrows
                .iter()
                .map(|a| Arrow {
                    source: a.target,
                    target: a.source,
                    label: a.label.clone(),
                })
                .collect(),
            allow_loops: self.allow_loops,
        }
    }
}

/// Euler matrix and symmetric Cartan matrix of a quiver.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FormData {
    pub euler_matrix: Vec<Vec<i64>>,
    pub cartan: Vec<Vec<i64>>,
}

impl FormData {
    pub fn of(q: &Quiver) -> Self {
        let n = q.n_vertices();
        let mut e = vec![vec![0i64; n]; n];
        for (i, row) in e.iter_mut().enumerate() {
            row[i] = 1;
        }
        for a in &q.arrows {
            e[a.source][a.target] -= 1;
        }
        let mut c = vec![vec![0i64; n]; n];
        for i in 0..n {
            for j in 0..n {
                c[i][j] = e[i][j] + e[j][i];
            }
        }
        Self {
            euler_matrix: e,
            cartan: c,
        }
    }

    pub fn n(&self) -> usize {
        self.euler_matrix.len()
    }

    /// `<a, b> = sum a_i b_i - sum over arrows i->j of a_i b_j`.
    pub fn euler_form(&self, a: &[i64], b: &[i64]) -> i64 {
        let n = self.n();
        let mut s = 0;
        for i in 0..n {
            if a[i] == 0 {
                continue;
            }
            for j in 0..n {
                s += a[i] * self.euler_matrix[i][j] * b[j];
            }
        }
        s
    }

    pub fn symmetrized_form(&self, a: &[i64], b: &[i64]) -> i64 {
        self.euler_form(a, b) + self.euler_form(b, a)
    }

    pub fn cartan_entry(&self, i: usize, j: usize) -> i64 {
        self.cartan[i][j]
    }
}

/// Which argument of the iquiver Euler form holds the torus class.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum TorusSide {
    /// `<K_alpha, m>`
    Left,
    /// `<m, K_alpha>`
    Right,
}

/// `<K_alpha, m> = <alpha, m>_Q` and `<m, K_alpha> = <m, tau(alpha)>_Q`.
pub fn lambda_euler_vs_torus(
    fd: &FormData,
    tau: &[usize],
    m: &[i64],
    alpha: &[i64],
    side: TorusSide,
) -> i64 {
    match side {
        TorusSide::Left => fd.euler_form(alpha, m),
        TorusSide::Right => fd.euler_form(m, &apply_tau(tau, alpha)),
    }
}

/// Permutes a vertex-indexed vector: `(tau a)_{tau i} = a_i`.
pub fn apply_tau(tau: &[usize], a: &[i64]) -> Vec<i64> {
    let mut out = vec![0; a.len()];
    for (i, x) in a.iter().enumerate() {
        out[tau[i]] += x;
    }
    out
}

/// A quiver with an involution on vertices and arrows.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct IQuiver {
    pub quiver: Quiver,
    pub tau: Vec<usize>,
    pub arrow_tau: Vec<usize>,
    /// Orbit representatives: the lexicographically least vertex id per orbit.
    pub reps: Vec<usize>,
}

impl IQuiver {
    pub fn n(&self) -> usize {
        self.quiver.n_vertices()
    }

    pub fn is_split_vertex(&self, i: usize) -> bool {
        self.tau[i] == i
    }

    pub fn is_split(&self) -> bool {
        (0..self.n()).all(|i| self.tau[i] == i)
    }

    /// Whether `i` is the chosen representative of its orbit.
    pub fn is_rep(&self, i: usize) -> bool {
        self.reps.contains(&i)
    }

    pub fn form_data(&self) -> FormData {
        self.quiver.form_data()
    }

    pub fn cartan(&self, i: usize, j: usize) -> i64 {
        self.form_data().cartan[i][j]
    }

    pub fn vertex_name(&self, i: usize) -> &str {
        &self.quiver.vertices[i]
    }

    /// `alpha + tau(alpha)`.
    pub fn torus_res(&self, alpha: &[i64]) -> Vec<i64> {
        let t = apply_tau(&self.tau, alpha);
        alpha.iter().zip(&t).map(|(a, b)| a + b).collect()
    }

    /// Split iquiver (`tau = Id`) on a quiver.
    pub fn split(quiver: Quiver) -> Self {
        let n = quiver.n_vertices();
        let tau: Vec<usize> = (0..n).collect();
        validate_iquiver(quiver, &tau, None).expect("identity involution is always valid")
    }

    /// Diagonal iquiver `Q` disjoint union `Q'` with the swap involution.
    /// Primed copies carry the suffix `'`.
    pub fn diagonal(q: &Quiver) -> Self {
        let n = q.n_vertices();
        let mut vs: Vec<String> = q.vertices.clone();
        vs.extend(q.vertices.iter().map(|v| format!("{v}'")));
        let mut arrows = Vec::new();
        for a in &q.arrows {
            arrows.push((q.vertices[a.source].clone(), q.vertices[a.target].clone(), a.label.clone()));
        }
        for a in &q.arrows {
            arrows.push((
                format!("{}'", q.vertices[a.source]),
                format!("{}'", q.vertices[a.target]),
                format!("{}'", a.label),
            ));
        }
        let quiver = Quiver::new(&vs, &arrows, q.allow_loops).expect("diagonal quiver");
        let tau: Vec<usize> = (0..2 * n).map(|i| if i < n { i + n } else { i - n }).collect();
        let m = q.arrows.len();
        let arrow_tau: Vec<usize> = (0..2 * m).map(|k| if k < m { k + m } else { k - m }).collect();
        validate_iquiver(quiver, &tau, Some(&arrow_tau)).expect("diagonal involution is valid")
    }
}

/// Checks an involution on vertices and extends it to arrows.
///
/// When `arrow_tau` is absent the arrow map is inferred: for an identity
/// vertex map it is the identity, otherwise each arrow must have exactly one
/// candidate image.
pub fn validate_iquiver(
    quiver: Quiver,
    tau: &[usize],
    arrow_tau: Option<&[usize]>,
) -> Result<IQuiver, QuiverError> {
    let n = quiver.n_vertices();
    if tau.len() != n {
        return Err(QuiverError::Parse("vertex map has wrong length".into()));
    }
    for i in 0..n {
        if tau[i] >= n || tau[tau[i]] != i {
            return Err(QuiverError::NotInvolution(quiver.vertices[i].clone()));
        }
    }
    let m = quiver.arrows.len();
    let at: Vec<usize> = match arrow_tau {
        Some(at) => {
            if at.len() != m {
                return Err(QuiverError::Parse("arrow map has wrong length".into()));
            }
            at.to_vec()
        }
        None if (0..n).all(|i| tau[i] == i) => (0..m).collect(),
        None => {
            let mut at = Vec::with_capacity(m);
            for a in &quiver.arrows {
                let cands: Vec<usize> = quiver
                    .arrows
                    .iter()
                    .enumerate()
                    .filter(|(_, b)| b.source == tau[a.source] && b.target == tau[a.target])
                    .map(|(k, _)| k)
                    .collect();
                match cands.len() {
                    0 => return Err(QuiverError::NoArrowImage(a.label.clone())),
                    1 => at.push(cands[0]),
                    _ => return Err(QuiverError::AmbiguousArrowImage(a.label.clone())),
                }
            }
            at
        }
    };
    for (k, a) in quiver.arrows.iter().enumerate() {
        let img = at[k];
        if img >= m {
            return Err(QuiverError::NoArrowImage(a.label.clone()));
        }
        let b = &quiver.arrows[img];
        if b.source != tau[a.source] || b.target != tau[a.target] {
            return Err(QuiverError::NoArrowImage(a.label.clone()));
        }
        if at[img] != k {
            return Err(QuiverError::NotInvolution(a.label.clone()));
        }
    }
    let mut reps = Vec::new();
    for i in 0..n {
        let j = tau[i];
        let rep = if quiver.vertices[i] <= quiver.vertices[j] { i } else { j };
        if rep == i {
            reps.push(i);
        }
    }
    Ok(IQuiver {
        quiver,
        tau: tau.to_vec(),
        arrow_tau: at,
        reps,
    })
}

/// A linear combination of paths in the bound quiver. Paths list arrows in
/// the order they are traversed.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Relation {
    pub terms: Vec<(i64, Vec<usize>)>,
}

/// A quiver with relations. For iquiver algebras `base` holds the iquiver
/// and `eps[i]` the arrow index of `eps_i : i -> tau(i)` in `qbar`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BoundQuiver {
    pub base: Option<IQuiver>,
    pub qbar: Quiver,
    pub relations: Vec<Relation>,
    pub eps: Vec<usize>,
}

impl BoundQuiver {
    /// The path algebra `kQ` with no relations.
    pub fn path_algebra(q: Quiver) -> Self {
        Self {
            base: None,
            qbar: q,
            relations: Vec::new(),
            eps: Vec::new(),
        }
    }

    pub fn n_vertices(&self) -> usize {
        self.qbar.n_vertices()
    }

    pub fn is_iquiver_algebra(&self) -> bool {
        self.base.is_some()
    }

    /// Indices of the arrows that come from the underlying quiver `Q`.
    pub fn q_arrows(&self) -> Vec<usize> {
        let e: Vec<usize> = self.eps.clone();
        (0..self.qbar.arrows.len()).filter(|k| !e.contains(k)).collect()
    }

    /// Directed cycles of the bound quiver's underlying graph are relevant
    /// for nilpotency; this reports whether any exist.
    pub fn has_oriented_cycle(&self) -> bool {
        let n = self.n_vertices();
        let mut state = vec![0u8; n];
        fn dfs(q: &Quiver, v: usize, state: &mut [u8]) -> bool {
            state[v] = 1;
            for a in &q.arrows {
                if a.source == v {
                    if state[a.target] == 1 {
                        return true;
                    }
                    if state[a.target] == 0 && dfs(q, a.target, state) {
                        return true;
                    }
                }
            }
            state[v] = 2;
            false
        }
        (0..n).any(|v| state[v] == 0 && dfs(&self.qbar, v, &mut state))
    }
}

/// The bound quiver of the iquiver algebra: `Q` plus `eps_i : i -> tau(i)`,
/// with nilpotent relations `eps_{tau i} eps_i = 0` and commutative relations
/// `eps_j alpha = tau(alpha) eps_i` for `alpha : i -> j`.
pub fn bound_quiver(iq: &IQuiver) -> BoundQuiver {
    let q = &iq.quiver;
    let n = q.n_vertices();
    let mut arrows: Vec<(String, String, String)> = q
        .arrows
        .iter()
        .map(|a| (q.vertices[a.source].clone(), q.vertices[a.target].clone(), a.label.clone()))
        .collect();
    let m = arrows.len();
    for i in 0..n {
        arrows.push((
            q.vertices[i].clone(),
            q.vertices[iq.tau[i]].clone(),
            format!("eps_{}", q.vertices[i]),
        ));
    }
    let allow_loops = q.allow_loops || (0..n).any(|i| iq.tau[i] == i);
    let qbar = Quiver::new(&q.vertices, &arrows, allow_loops).expect("bound quiver construction");
    let eps: Vec<usize> = (0..n).map(|i| m + i).collect();
    let mut relations = Vec::new();
    for i in 0..n {
        relations.push(Relation {
            terms: vec![(1, vec![eps[i], eps[iq.tau[i]]])],
        });
    }
    for (k, a) in q.arrows.iter().enumerate() {
        relations.push(Relation {
            terms: vec![
                (1, vec![k, eps[a.target]]),
                (-1, vec![eps[a.source], iq.arrow_tau[k]]),
            ],
        });
    }
    BoundQuiver {
        base: Some(iq.clone()),
        qbar,
        relations,
        eps,
    }
}

/// The double framed quiver with its relations, realized as the bound quiver
/// of the diagonal iquiver on `Q`.
pub fn double_framed(q: &Quiver) -> BoundQuiver {
    bound_quiver(&IQuiver::diagonal(q))
}

/// JSON description of an iquiver.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct IQuiverSpec {
    pub vertices: Vec<String>,
    #[serde(default)]
    pub arrows: Vec<ArrowSpec>,
    #[serde(default)]
    pub tau: Option<BTreeMap<String, String>>,
    #[serde(default)]
    pub arrow_tau: Option<BTreeMap<String, String>>,
    #[serde(default)]
    pub allow_loops: bool,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct ArrowSpec {
    pub from: String,
    pub to: String,
    pub label: String,
}

impl IQuiverSpec {
    pub fn build(&self) -> Result<IQuiver, QuiverError> {
        let arrows: Vec<(String, String, String)> = self
            .arrows
            .iter()
            .map(|a| (a.from.clone(), a.to.clone(), a.label.clone()))
            .collect();
        let quiver = Quiver::new(&self.vertices, &arrows, self.allow_loops)?;
        let n = quiver.n_vertices();
        let mut tau: Vec<usize> = (0..n).collect();
        if let Some(t) = &self.tau {
            for (k, v) in t {
                tau[quiver.vertex_index(k)?] = quiver.vertex_index(v)?;
            }
        }
        let at = match &self.arrow_tau {
            Some(map) => {
                let mut at: Vec<usize> = (0..quiver.arrows.len()).collect();
                for (k, v) in map {
                    at[quiver.arrow_index(k)?] = quiver.arrow_index(v)?;
                }
                Some(at)
            }
            None => None,
        };
        validate_iquiver(quiver, &tau, at.as_deref())
    }

    pub fn from_json(s: &str) -> Result<IQuiver, QuiverError> {
        let spec: IQuiverSpec =
            serde_json::from_str(s).map_err(|e| QuiverError::Parse(e.to_string()))?;
        spec.build()
    }
}
