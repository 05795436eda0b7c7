//! Example network families and a seeded random generator.
//!
//! Inline specs (`family:params`) are parsed by [`from_spec`]:
//! `star:3`, `path:5`, `hexwheel:6`, `sunflower:5`, `double_sunflower:6`,
//! `wheatstone`, `triangle`, `glued`, `poset:a<b<c,d`,
//! `random:INTERIOR,BOUNDARY,DENSITY,SEED[,MAX_EDGES]`.

use std::collections::BTreeSet;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use super::{EdgeSpec, Network, NetworkError, NetworkSpec};

fn build(vertices: Vec<String>, boundary: Vec<String>, edges: Vec<(String, String, String)>) -> Result<Network, NetworkError> {
    Network::validate(&NetworkSpec {
        vertices,
        boundary,
        edges: edges.into_iter().map(|(u, v, l)| EdgeSpec::Labeled(u, v, l)).collect(),
        embedding: None,
    })
}

fn names(prefix: &str, n: usize) -> Vec<String> {
    (1..=n).map(|i| format!("{prefix}{i}")).collect()
}

fn bad(msg: impl Into<String>) -> NetworkError {
    NetworkError::BadParameter(msg.into())
}

/// Center `c` joined to boundary leaves `b1..bm` by edges `f1..fm`.
pub fn star(m: usize) -> Result<Network, NetworkError> {
    if m < 2 {
        return Err(bad("star needs m >= 2"));
    }
    let leaves = names("b", m);
    let mut vertices = vec!["c".to_string()];
    vertices.extend(leaves.iter().cloned());
    let edges = leaves.iter().enumerate().map(|(i, b)| ("c".into(), b.clone(), format!("f{}", i + 1))).collect();
    build(vertices, leaves, edges)
}

/// Path on `d` vertices `b1, i1, .., i(d-2), b2` with boundary at the ends
/// and edges `e1..e(d-1)` in path order. For `d = 3` the interior vertex is `i`.
pub fn path(d: usize) -> Result<Network, NetworkError> {
    if d < 3 {
        return Err(bad("path needs d >= 3"));
    }
    let inner = if d == 3 { vec!["i".to_string()] } else { names("i", d - 2) };
    let mut vertices = vec!["b1".to_string()];
    vertices.extend(inner);
    vertices.push("b2".into());
    let edges = vertices.windows(2).enumerate().map(|(i, w)| (w[0].clone(), w[1].clone(), format!("e{}", i + 1))).collect();
    build(vertices, vec!["b1".into(), "b2".into()], edges)
}

/// Boundary `a1, a3, a5`, interior `a2, a4`, and
/// `e1=a1a2, e2=a2a3, e3=a3a4, e4=a4a5, e5=a2a4`.
pub fn triangle() -> Network {
    let v = names("a", 5);
    let e = |a: usize, b: usize, l: usize| (format!("a{a}"), format!("a{b}"), format!("e{l}"));
    build(
        v,
        vec!["a1".into(), "a3".into(), "a5".into()],
        vec![e(1, 2, 1), e(2, 3, 2), e(3, 4, 3), e(4, 5, 4), e(2, 4, 5)],
    )
    .expect("fixed network")
}

/// Two copies of the 3-vertex path glued at both ends: `e1=b1i1, e2=i1b2, e3=b1i2, e4=i2b2`.
pub fn glued_double_path() -> Network {
    let e = |u: &str, v: &str, l: &str| (u.to_string(), v.to_string(), l.to_string());
    build(
        vec!["b1".into(), "i1".into(), "i2".into(), "b2".into()],
        vec!["b1".into(), "b2".into()],
        vec![e("b1", "i1", "e1"), e("i1", "b2", "e2"), e("b1", "i2", "e3"), e("i2", "b2", "e4")],
    )
    .expect("fixed network")
}

/// The two-terminal bridge: boundary `b1, b2`, interior `i1, i2`,
/// `e1=b1i1, e2=b1i2, e3=i1i2, e4=i1b2, e5=i2b2`.
pub fn wheatstone() -> Network {
    let e = |u: &str, v: &str, l: &str| (u.to_string(), v.to_string(), l.to_string());
    build(
        vec!["b1".into(), "b2".into(), "i1".into(), "i2".into()],
        vec!["b1".into(), "b2".into()],
        vec![e("b1", "i1", "e1"), e("b1", "i2", "e2"), e("i1", "i2", "e3"), e("i1", "b2", "e4"), e("i2", "b2", "e5")],
    )
    .expect("fixed network")
}

/// Interior cycle `c1..cm` (edges `e_s = c_s c_{s+1}`) with a pendant boundary
/// node `d_s` on each `c_s` (edge `p_s`).
pub fn hexwheel(m: usize) -> Result<Network, NetworkError> {
    if m < 3 {
        return Err(bad("hexwheel needs m >= 3"));
    }
    let (c, d) = (names("c", m), names("d", m));
    let mut edges = Vec::new();
    for s in 0..m {
        edges.push((c[s].clone(), c[(s + 1) % m].clone(), format!("e{}", s + 1)));
        edges.push((c[s].clone(), d[s].clone(), format!("p{}", s + 1)));
    }
    build(c.into_iter().chain(d.iter().cloned()).collect(), d, edges)
}

fn sunflower_edges(m: usize) -> (Vec<String>, Vec<String>, Vec<(String, String, String)>) {
    let (c, d) = (names("c", m), names("d", m));
    let mut edges = Vec::new();
    for s in 0..m {
        edges.push((c[s].clone(), c[(s + 1) % m].clone(), format!("e{}", s + 1)));
        // d_s sits between c_{s-1} (edge a_s) and c_s (edge b_s).
        edges.push((d[s].clone(), c[(s + m - 1) % m].clone(), format!("a{}", s + 1)));
        edges.push((d[s].clone(), c[s].clone(), format!("b{}", s + 1)));
    }
    (c, d, edges)
}

/// Interior cycle `c1..cm`; boundary `d_s` adjacent to `c_{s-1}` (edge `a_s`)
/// and `c_s` (edge `b_s`); cycle edges `e_s = c_s c_{s+1}`.
pub fn sunflower(m: usize) -> Result<Network, NetworkError> {
    if m < 3 {
        return Err(bad("sunflower needs m >= 3"));
    }
    let (c, d, edges) = sunflower_edges(m);
    build(c.into_iter().chain(d.iter().cloned()).collect(), d, edges)
}

/// A sunflower on even `m` plus the chord `h = c_{m/2} c_m`, which splits the
/// interior cycle into two equal arcs. This is the chord drawn for m = 4, 6, 8;
/// other even `m` follow the same rule by extrapolation.
pub fn double_sunflower(m: usize) -> Result<Network, NetworkError> {
    if m < 4 || m % 2 == 1 {
        return Err(bad("double_sunflower needs even m >= 4"));
    }
    let (c, d, mut edges) = sunflower_edges(m);
    edges.push((c[m / 2 - 1].clone(), c[m - 1].clone(), "h".into()));
    build(c.into_iter().chain(d.iter().cloned()).collect(), d, edges)
}

/// Hasse diagram of the poset generated by `relations` (pairs `a < b`) on
/// `elements`, with source `i` joined to the minima and sink `j` to the maxima.
/// Only cover relations become edges.
pub fn poset(elements: &[String], relations: &[(String, String)]) -> Result<Network, NetworkError> {
    if elements.is_empty() {
        return Err(bad("poset must be nonempty"));
    }
    if elements.iter().any(|e| e == "i" || e == "j") {
        return Err(bad("poset elements may not be named i or j"));
    }
    let n = elements.len();
    let pos = |x: &str| elements.iter().position(|e| e == x).ok_or_else(|| bad(format!("unknown poset element {x}")));
    let mut less = vec![vec![false; n]; n];
    for (a, b) in relations {
        less[pos(a)?][pos(b)?] = true;
    }
    for k in 0..n {
        for a in 0..n {
            for b in 0..n {
                if less[a][k] && less[k][b] {
                    less[a][b] = true;
                }
            }
        }
    }
    if (0..n).any(|a| less[a][a]) {
        return Err(bad("relations contain a cycle"));
    }
    let mut edges = Vec::new();
    for a in 0..n {
        for b in 0..n {
            let covers = less[a][b] && !(0..n).any(|k| less[a][k] && less[k][b]);
            if covers {
                edges.push((elements[a].clone(), elements[b].clone(), format!("{}<{}", elements[a], elements[b])));
            }
        }
    }
    for a in 0..n {
        if !(0..n).any(|k| less[k][a]) {
            edges.push(("i".into(), elements[a].clone(), format!("i<{}", elements[a])));
        }
        if !(0..n).any(|k| less[a][k]) {
            edges.push((elements[a].clone(), "j".into(), format!("{}<j", elements[a])));
        }
    }
    let mut vertices = elements.to_vec();
    vertices.push("i".into());
    vertices.push("j".into());
    build(vertices, vec!["i".into(), "j".into()], edges)
}

#[derive(Clone, Debug, PartialEq)]
pub struct RandomParams {
    pub interior: usize,
    pub boundary: usize,
    /// Inclusion probability of each admissible edge.
    pub density: f64,
    pub seed: u64,
    pub max_edges: usize,
}

const RANDOM_ATTEMPTS: usize = 100_000;

/// Random network on boundary `b1..bm` and interior `i1..in`. Admissible edges
/// (interior–interior and interior–boundary) are drawn independently; draws that
/// are disconnected or exceed `max_edges` are rejected and resampled.
pub fn random(p: &RandomParams) -> Result<Network, NetworkError> {
    if p.interior == 0 || p.boundary < 2 {
        return Err(bad("random needs interior >= 1 and boundary >= 2"));
    }
    if !(p.density > 0.0 && p.density <= 1.0) {
        return Err(bad("density must lie in (0, 1]"));
    }
    let (b, i) = (names("b", p.boundary), names("i", p.interior));
    let mut candidates = Vec::new();
    for x in 0..p.interior {
        for y in x + 1..p.interior {
            candidates.push((i[x].clone(), i[y].clone()));
        }
        for bd in &b {
            candidates.push((bd.clone(), i[x].clone()));
        }
    }
    let vertices: Vec<String> = b.iter().chain(i.iter()).cloned().collect();
    let mut rng = ChaCha8Rng::seed_from_u64(p.seed);
    for _ in 0..RANDOM_ATTEMPTS {
        let chosen: Vec<_> = candidates.iter().filter(|_| rng.random_bool(p.density)).collect();
        if chosen.len() > p.max_edges {
            continue;
        }
        let edges = chosen.iter().enumerate().map(|(k, (u, v))| (u.clone(), v.clone(), format!("e{}", k + 1))).collect();
        match build(vertices.clone(), b.clone(), edges) {
            Ok(net) => return Ok(net),
            Err(NetworkError::Disconnected) => continue,
            Err(e) => return Err(e),
        }
    }
    Err(bad("no admissible random network found; raise max_edges or density"))
}

fn parse_num<T: std::str::FromStr>(s: &str, what: &str) -> Result<T, NetworkError> {
    s.trim().parse().map_err(|_| bad(format!("cannot parse {what} from {s:?}")))
}

/// Parses an inline generator spec such as `star:3`.
pub fn from_spec(spec: &str) -> Result<Network, NetworkError> {
    let (family, params) = spec.split_once(':').unwrap_or((spec, ""));
    let int = |what| parse_num::<usize>(params, what);
    match family {
        "star" => star(int("m")?),
        "path" => path(int("d")?),
        "hexwheel" => hexwheel(int("m")?),
        "sunflower" => sunflower(int("m")?),
        "double_sunflower" => double_sunflower(int("m")?),
        "wheatstone" => Ok(wheatstone()),
        "triangle" => Ok(triangle()),
        "glued" => Ok(glued_double_path()),
        "poset" => {
            let mut elements = BTreeSet::new();
            let mut relations = Vec::new();
            for chain in params.split(',').filter(|c| !c.is_empty()) {
                let items: Vec<String> = chain.split('<').map(|s| s.trim().to_string()).collect();
                elements.extend(items.iter().cloned());
                for w in items.windows(2) {
                    relations.push((w[0].clone(), w[1].clone()));
                }
            }
            poset(&elements.into_iter().collect::<Vec<_>>(), &relations)
        }
        "random" => {
            let parts: Vec<&str> = params.split(',').collect();
            if parts.len() != 4 && parts.len() != 5 {
                return Err(bad("random:INTERIOR,BOUNDARY,DENSITY,SEED[,MAX_EDGES]"));
            }
            random(&RandomParams {
                interior: parse_num(parts[0], "interior")?,
                boundary: parse_num(parts[1], "boundary")?,
                density: parse_num(parts[2], "density")?,
                seed: parse_num(parts[3], "seed")?,
                max_edges: match parts.get(4) {
                    Some(s) => parse_num(s, "max_edges")?,
                    None => super::MAX_NETWORK_EDGES,
                },
            })
        }
        _ => Err(bad(format!("unknown family {family:?}"))),
    }
}

/// The fixed test corpus: named networks covering every family plus 25 seeded
/// random networks with at most 8 edges.
pub fn corpus() -> Vec<(String, Network)> {
    let mut out: Vec<(String, Network)> = Vec::new();
    for m in 3..=5 {
        out.push((format!("star:{m}"), star(m).unwrap()));
    }
    for d in 3..=5 {
        out.push((format!("path:{d}"), path(d).unwrap()));
    }
    out.push(("triangle".into(), triangle()));
    out.push(("wheatstone".into(), wheatstone()));
    for m in 3..=6 {
        out.push((format!("hexwheel:{m}"), hexwheel(m).unwrap()));
    }
    for m in 3..=5 {
        out.push((format!("sunflower:{m}"), sunflower(m).unwrap()));
    }
    out.push(("glued".into(), glued_double_path()));
    out.extend(random_corpus());
    out
}

/// The 25 seeded random members of [`corpus`].
pub fn random_corpus() -> Vec<(String, Network)> {
    (0..25u64)
        .map(|seed| {
            let interior = 1 + (seed % 3) as usize;
            let boundary = 2 + (seed / 3 % 3) as usize;
            let spec = format!("random:{interior},{boundary},0.6,{seed},8");
            let net = from_spec(&spec).expect("corpus parameters admit a network");
            (spec, net)
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn family_sizes() {
        let s = star(3).unwrap();
        assert_eq!((s.vertex_count(), s.edge_count()), (4, 3));
        let f = sunflower(5).unwrap();
        assert_eq!((f.vertex_count(), f.edge_count()), (10, 15));
        let h = hexwheel(6).unwrap();
        assert_eq!((h.vertex_count(), h.edge_count(), h.boundary_count()), (12, 12, 6));
        let d = double_sunflower(6).unwrap();
        assert_eq!(d.edge_count(), 19);
        let p = path(5).unwrap();
        assert_eq!(p.ground_labels(), ["e1", "e2", "e3", "e4", "eh"]);
    }

    #[test]
    fn poset_antichain() {
        let n = from_spec("poset:p,q").unwrap();
        let boundary: Vec<_> = n.boundary_vertices().map(|v| n.vertex_label(v)).collect();
        assert_eq!(boundary, ["i", "j"]);
        assert_eq!(n.interior_count(), 2);
        assert_eq!(n.edge_count(), 4);
    }

    #[test]
    fn poset_keeps_only_covers() {
        // a < b < c with the redundant a < c given explicitly.
        let els: Vec<String> = ["a", "b", "c"].iter().map(|s| s.to_string()).collect();
        let rel = vec![("a".into(), "b".into()), ("b".into(), "c".into()), ("a".into(), "c".into())];
        let n = poset(&els, &rel).unwrap();
        assert_eq!(n.edge_count(), 4);
        assert!(n.edge_index("a<c").is_none());
        let cyclic = vec![("a".into(), "b".into()), ("b".into(), "a".into())];
        assert!(poset(&els, &cyclic).is_err());
    }

    #[test]
    fn bad_parameters() {
        assert!(matches!(star(1), Err(NetworkError::BadParameter(_))));
        assert!(matches!(double_sunflower(5), Err(NetworkError::BadParameter(_))));
        assert!(from_spec("wheel:3").is_err());
        assert!(from_spec("star:x").is_err());
    }

    #[test]
    fn random_is_reproducible_and_valid() {
        let a = from_spec("random:3,3,0.5,7,10").unwrap();
        let b = from_spec("random:3,3,0.5,7,10").unwrap();
        assert_eq!(a, b);
        assert!(a.edge_count() <= 10);
        let corpus = corpus();
        assert_eq!(corpus.iter().filter(|(n, _)| n.starts_with("random")).count(), 25);
        assert!(random_corpus().iter().all(|(_, n)| n.edge_count() <= 8));
        for (_, n) in &corpus {
            assert_eq!(Network::validate(&n.to_spec()).as_ref(), Ok(n));
        }
    }
}
