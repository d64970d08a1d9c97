//! Extremal and illustrative graph families.

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::error::{Error, Result};
use crate::graph::{girth, Graph, Vertex};

pub fn complete(n: usize) -> Graph {
    let n32 = n as Vertex;
    Graph::from_edges(n, (0..n32).flat_map(|u| (u + 1..n32).map(move |v| (u, v))))
        .expect("ids in range")
}

pub fn cycle(n: usize) -> Result<Graph> {
    if n < 3 {
        return Err(Error::InvalidArgument(format!("cycle needs n >= 3, got {n}")));
    }
    Graph::from_edges(n, (0..n as Vertex).map(|i| (i, (i + 1) % n as Vertex)))
}

/// The Petersen graph: outer 5-cycle 0..5, inner pentagram 5..10.
pub fn petersen() -> Graph {
    let mut edges = Vec::with_capacity(15);
    for i in 0..5 {
        edges.push((i, (i + 1) % 5));
        edges.push((i, i + 5));
        edges.push((5 + i, 5 + (i + 2) % 5));
    }
    Graph::from_edges(10, edges).expect("ids in range")
}

/// Complete multipartite graph with `n / 3` parts of size three, followed by
/// `n % 3` isolated vertices. Part `j` is `{3j, 3j+1, 3j+2}`.
pub fn moon_moser(n: usize) -> Result<Graph> {
    if n < 3 {
        return Err(Error::InvalidArgument(format!(
            "Moon-Moser graph needs n >= 3, got {n}"
        )));
    }
    let core = (n / 3 * 3) as Vertex;
    let edges = (0..core).flat_map(|u| ((u / 3 + 1) * 3..core).map(move |v| (u, v)));
    Graph::from_edges(n, edges)
}

/// `n / (c + 2)` disjoint Moon–Moser graphs on `c + 2` vertices, padded with
/// isolated vertices up to `n`.
pub fn moon_moser_union(n: usize, c: usize) -> Result<Graph> {
    if c < 1 {
        return Err(Error::InvalidArgument("Moon-Moser union needs c >= 1".into()));
    }
    let block = c + 2;
    let unit = moon_moser(block)?;
    let mut edges = Vec::new();
    for b in 0..n / block {
        let off = (b * block) as Vertex;
        edges.extend(unit.edges().map(|(u, v)| (u + off, v + off)));
    }
    Graph::from_edges(n, edges)
}

/// `K_k` without the edge between its two highest-numbered vertices.
pub fn clique_minus_edge(k: usize) -> Result<Graph> {
    if k < 2 {
        return Err(Error::InvalidArgument(format!(
            "clique minus an edge needs k >= 2, got {k}"
        )));
    }
    let missing = ((k - 2) as Vertex, (k - 1) as Vertex);
    let edges = complete(k).edges().filter(|&e| e != missing).collect::<Vec<_>>();
    Graph::from_edges(k, edges)
}

pub fn is_prime(p: u64) -> bool {
    if p < 2 {
        return false;
    }
    let mut d = 2;
    while d * d <= p {
        if p.is_multiple_of(d) {
            return false;
        }
        d += 1;
    }
    true
}

/// Normalised homogeneous coordinates of PG(2, p): first non-zero entry 1.
fn projective_points(p: u64) -> Vec<[u64; 3]> {
    let mut pts = Vec::with_capacity((p * p + p + 1) as usize);
    for a in 0..p {
        for b in 0..p {
            pts.push([1, a, b]);
        }
    }
    for a in 0..p {
        pts.push([0, 1, a]);
    }
    pts.push([0, 0, 1]);
    pts
}

/// Point–line incidence graph of PG(2, p). Points take ids `0..N`, lines
/// `N..2N` with `N = p² + p + 1`; a point lies on a line iff their
/// coordinate dot product vanishes mod `p`.
pub fn projective_incidence(p: u64) -> Result<Graph> {
    if !is_prime(p) {
        return Err(Error::InvalidArgument(format!("{p} is not prime")));
    }
    let pts = projective_points(p);
    let count = pts.len();
    let mut edges = Vec::with_capacity(count * (p as usize + 1));
    for (i, x) in pts.iter().enumerate() {
        for (j, l) in pts.iter().enumerate() {
            let dot = (x[0] * l[0] + x[1] * l[1] + x[2] * l[2]) % p;
            if dot == 0 {
                edges.push((i as Vertex, (count + j) as Vertex));
            }
        }
    }
    Graph::from_edges(2 * count, edges)
}

/// Lower-bound blowup of a girth-5 base graph `h` for even `c >= 4`.
///
/// Each base vertex `x` becomes a clique `U_x` of `c/2` vertices with ids
/// `x*c/2 .. (x+1)*c/2`. For each base edge `(x, y)` the groups are joined by
/// a complete bipartite graph minus the matching pairing equal positions.
pub fn blowup(h: &Graph, c: usize) -> Result<Graph> {
    if !c.is_multiple_of(2) || c < 4 {
        return Err(Error::InvalidArgument(format!(
            "blowup needs an even c >= 4, got {c}"
        )));
    }
    if let Some(gh) = girth(h) {
        if gh < 5 {
            return Err(Error::Precondition(format!(
                "base graph has girth {gh}, the blowup needs girth at least 5"
            )));
        }
    }
    let half = (c / 2) as Vertex;
    let group = |x: Vertex, i: Vertex| x * half + i;
    let mut edges = Vec::new();
    for x in h.vertices() {
        for i in 0..half {
            for j in i + 1..half {
                edges.push((group(x, i), group(x, j)));
            }
        }
    }
    for (x, y) in h.edges() {
        for i in 0..half {
            for j in 0..half {
                if i != j {
                    edges.push((group(x, i), group(y, j)));
                }
            }
        }
    }
    Graph::from_edges(h.n() * half as usize, edges)
}

/// Exact maximal clique count of [`blowup`] when `h` has no
/// isolated vertices: each edge contributes `2^{c/2}` cliques, two of
/// which are the whole groups and are shared across edges.
pub fn blowup_clique_count(h: &Graph, c: usize) -> u64 {
    h.m() as u64 * ((1u64 << (c / 2)) - 2) + h.n() as u64
}

/// Random-order greedy girth-5 graph: every vertex pair is offered once in a
/// seeded shuffled order and kept iff the endpoints are at distance at least
/// four.
pub fn girth5_greedy(v: usize, seed: u64) -> Result<Graph> {
    if v < 5 {
        return Err(Error::InvalidArgument(format!(
            "girth-5 greedy needs v >= 5, got {v}"
        )));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let v32 = v as Vertex;
    let mut pairs: Vec<(Vertex, Vertex)> =
        (0..v32).flat_map(|a| (a + 1..v32).map(move |b| (a, b))).collect();
    pairs.shuffle(&mut rng);

    let mut adj: Vec<Vec<Vertex>> = vec![Vec::new(); v];
    let mut edges = Vec::new();
    for (a, b) in pairs {
        if !within_distance(&adj, a, b, 3) {
            adj[a as usize].push(b);
            adj[b as usize].push(a);
            edges.push((a, b));
        }
    }
    Graph::from_edges(v, edges)
}

fn within_distance(adj: &[Vec<Vertex>], a: Vertex, b: Vertex, limit: usize) -> bool {
    let mut frontier = vec![a];
    let mut seen = vec![a];
    for _ in 0..limit {
        let mut next = Vec::new();
        for &x in &frontier {
            for &y in &adj[x as usize] {
                if y == b {
                    return true;
                }
                if !seen.contains(&y) {
                    seen.push(y);
                    next.push(y);
                }
            }
        }
        frontier = next;
    }
    false
}

/// `G(n, p)` with a seeded ChaCha stream; pairs are drawn in ascending
/// lexicographic order.
pub fn erdos_renyi(n: usize, p: f64, seed: u64) -> Result<Graph> {
    if !(0.0..=1.0).contains(&p) {
        return Err(Error::InvalidArgument(format!(
            "edge probability {p} outside [0, 1]"
        )));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let n32 = n as Vertex;
    let mut edges = Vec::new();
    for u in 0..n32 {
        for v in u + 1..n32 {
            if rng.random_bool(p) {
                edges.push((u, v));
            }
        }
    }
    Graph::from_edges(n, edges)
}

/// Named girth-5 base graphs for the blowup.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum BaseGraph {
    C5,
    Petersen,
    Greedy { v: usize, seed: u64 },
}

impl BaseGraph {
    pub fn build(&self) -> Result<Graph> {
        match *self {
            BaseGraph::C5 => cycle(5),
            BaseGraph::Petersen => Ok(petersen()),
            BaseGraph::Greedy { v, seed } => girth5_greedy(v, seed),
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub enum GeneratorSpec {
    MoonMoser { n: usize },
    MoonMoserUnion { n: usize, c: usize },
    CliqueMinusEdge { k: usize },
    ProjectiveIncidence { p: u64 },
    Blowup { base: BaseGraph, c: usize },
    Girth5Greedy { v: usize, seed: u64 },
    ErdosRenyi { n: usize, p: f64, seed: u64 },
}

impl GeneratorSpec {
    pub fn build(&self) -> Result<Graph> {
        match self {
            GeneratorSpec::MoonMoser { n } => moon_moser(*n),
            GeneratorSpec::MoonMoserUnion { n, c } => moon_moser_union(*n, *c),
            GeneratorSpec::CliqueMinusEdge { k } => clique_minus_edge(*k),
            GeneratorSpec::ProjectiveIncidence { p } => projective_incidence(*p),
            GeneratorSpec::Blowup { base, c } => blowup(&base.build()?, *c),
            GeneratorSpec::Girth5Greedy { v, seed } => girth5_greedy(*v, *seed),
            GeneratorSpec::ErdosRenyi { n, p, seed } => erdos_renyi(*n, *p, *seed),
        }
    }

    pub fn family(&self) -> &'static str {
        match self {
            GeneratorSpec::MoonMoser { .. } => "moon_moser",
            GeneratorSpec::MoonMoserUnion { .. } => "moon_moser_union",
            GeneratorSpec::CliqueMinusEdge { .. } => "clique_minus_edge",
            GeneratorSpec::ProjectiveIncidence { .. } => "projective_incidence",
            GeneratorSpec::Blowup { .. } => "blowup",
            GeneratorSpec::Girth5Greedy { .. } => "girth5_greedy",
            GeneratorSpec::ErdosRenyi { .. } => "erdos_renyi",
        }
    }
}

impl std::fmt::Display for GeneratorSpec {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            GeneratorSpec::MoonMoser { n } => write!(f, "moon_moser n={n}"),
            GeneratorSpec::MoonMoserUnion { n, c } => write!(f, "moon_moser_union n={n} c={c}"),
            GeneratorSpec::CliqueMinusEdge { k } => write!(f, "clique_minus_edge k={k}"),
            GeneratorSpec::ProjectiveIncidence { p } => write!(f, "projective_incidence p={p}"),
            GeneratorSpec::Blowup { base, c } => {
                write!(f, "blowup base={base:?} c={c}")
            }
            GeneratorSpec::Girth5Greedy { v, seed } => write!(f, "girth5_greedy v={v} seed={seed}"),
            GeneratorSpec::ErdosRenyi { n, p, seed } => {
                write!(f, "erdos_renyi n={n} p={p} seed={seed}")
            }
        }
    }
}

/// Parameter documentation for `generate --describe`.
pub fn describe(family: &str) -> Option<&'static str> {
    Some(match family {
        "moon_moser" => {
            "moon_moser --n N (N >= 3)\n  complete multipartite graph with floor(N/3) parts of size 3, plus N mod 3 isolated vertices"
        }
        "moon_moser_union" => {
            "moon_moser_union --n N --c C (C >= 1)\n  floor(N/(C+2)) disjoint Moon-Moser graphs on C+2 vertices, remainder isolated"
        }
        "clique_minus_edge" => {
            "clique_minus_edge --k K (K >= 2)\n  K_K without the edge between its two highest-numbered vertices"
        }
        "projective_incidence" => {
            "projective_incidence --p P (P prime)\n  point-line incidence graph of PG(2,P): 2(P^2+P+1) vertices, every degree P+1"
        }
        "blowup" => {
            "blowup --c C (even, C >= 4) [--base c5|petersen|greedy] [--v V --seed S] [--base-file FILE]\n  each base vertex becomes a C/2-clique; base edges become K_{C/2,C/2} minus a perfect matching; base girth must be >= 5"
        }
        "girth5_greedy" => {
            "girth5_greedy --v V (V >= 5) --seed S\n  random-order greedy edge-maximal graph with girth at least 5"
        }
        "erdos_renyi" => "erdos_renyi --n N --p P (0 <= P <= 1) --seed S\n  each pair independently an edge with probability P",
        _ => return None,
    })
}

pub const FAMILIES: [&str; 7] = [
    "moon_moser",
    "moon_moser_union",
    "clique_minus_edge",
    "projective_incidence",
    "blowup",
    "girth5_greedy",
    "erdos_renyi",
];
