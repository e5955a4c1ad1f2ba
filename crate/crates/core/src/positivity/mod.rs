//! Saturation, zero-in-cone certificates, the relation ≺ on signed δ's and its
//! negation-compatible extensions.

pub mod simplex;

use std::collections::{BTreeMap, BTreeSet, VecDeque};
use std::fmt;

use num_traits::{Signed, Zero};
use serde::{Deserialize, Serialize};

use crate::classical::{canonical_order, datum_for_order, parabolic_roots, root_spaces, ParabolicDatum, SignedOrder};
use crate::error::{Error, Result};
use crate::rational::{Rational, Vector};
use simplex::{zero_in_hull, Feasibility};

/// `Q_+ S ∩ R`, sorted.
pub fn saturate(rsh: &[Vector], s: &[Vector]) -> Vec<Vector> {
    let mut out: Vec<Vector> =
        rsh.iter().filter(|mu| s.iter().any(|nu| mu.ratio_to(nu).is_some_and(|r| r.is_positive()))).cloned().collect();
    out.sort();
    out.dedup();
    out
}

pub fn is_saturated(rsh: &[Vector], s: &[Vector]) -> bool {
    let mut sorted = s.to_vec();
    sorted.sort();
    sorted.dedup();
    saturate(rsh, s) == sorted
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ConeCertificate {
    /// Nonnegative coefficients in the order of the input set; they sum to 1.
    pub coefficients: Vec<(Vector, Rational)>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub enum ConeOutcome {
    ZeroInCone(ConeCertificate),
    /// φ with φ(ν) ≥ 1 on S and equality somewhere.
    Separated(Vec<Rational>),
}

impl ConeOutcome {
    pub fn is_feasible(&self) -> bool {
        matches!(self, ConeOutcome::ZeroInCone(_))
    }
}

pub fn pair(phi: &[Rational], v: &Vector) -> Rational {
    phi.iter().zip(&v.coords).map(|(a, b)| a * b).sum()
}

/// Exact decision of `0 ∈ Q_+ S \ {0}` through phase-I simplex.
pub fn zero_in_positive_span(s: &[Vector]) -> ConeOutcome {
    if s.is_empty() {
        return ConeOutcome::Separated(Vec::new());
    }
    let cols: Vec<Vec<Rational>> = s.iter().map(|v| v.coords.clone()).collect();
    match zero_in_hull(&cols) {
        Feasibility::Feasible(c) => {
            ConeOutcome::ZeroInCone(ConeCertificate { coefficients: s.iter().cloned().zip(c).collect() })
        }
        Feasibility::Infeasible(phi) => ConeOutcome::Separated(phi),
    }
}

/// A signed δ: (0-based part index, sign).
pub type Vertex = (usize, i8);

pub fn vertex_key(v: Vertex) -> (usize, bool) {
    (v.0, v.1 < 0)
}

pub fn vertex_name(v: Vertex) -> String {
    format!("{}d{}", if v.1 < 0 { "-" } else { "" }, v.0 + 1)
}

fn neg(v: Vertex) -> Vertex {
    (v.0, -v.1)
}

/// The relation ≺ on {±δ_i} (or {δ_i} for gl_n), each edge remembering one t-root forcing it.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SignedDigraph {
    pub k: usize,
    pub signed: bool,
    pub edges: BTreeMap<(Vertex, Vertex), Vector>,
}

impl SignedDigraph {
    pub fn vertices(&self) -> Vec<Vertex> {
        let mut vs: Vec<Vertex> =
            (0..self.k).flat_map(|i| if self.signed { vec![(i, 1), (i, -1)] } else { vec![(i, 1)] }).collect();
        vs.sort_by_key(|&v| vertex_key(v));
        vs
    }

    fn successors(&self, v: Vertex) -> Vec<Vertex> {
        let mut out: Vec<Vertex> =
            self.edges.range((v, (0, i8::MIN))..=(v, (usize::MAX, i8::MAX))).map(|((_, w), _)| *w).collect();
        out.sort_by_key(|&w| vertex_key(w));
        out
    }
}

/// Relation from S: `aδ_i ≺ −bδ_j` for `aδ_i + bδ_j ∈ S`, `aδ_i ≺ −aδ_i` whenever a positive
/// multiple of `aδ_i` (`aδ_i`, `2aδ_i`, …) is in S; for gl_n, `δ_i ≺ δ_j` for `δ_i − δ_j ∈ S`.
pub fn build_relation_for(k: usize, signed: bool, s: &[Vector]) -> Result<SignedDigraph> {
    let mut edges = BTreeMap::new();
    for nu in s {
        let support: Vec<(usize, i128)> = nu
            .coords
            .iter()
            .enumerate()
            .filter(|(_, c)| !c.is_zero())
            .map(|(i, c)| (i, if c.is_integer() { *c.numer() } else { 0 }))
            .collect();
        let bad = || Error::NotATRoot(nu.to_string());
        if nu.len() != k {
            return Err(bad());
        }
        match (signed, support.as_slice()) {
            (false, &[(i, a), (j, b)]) if a == -b && a.abs() == 1 => {
                let (hi, lo) = if a > 0 { (i, j) } else { (j, i) };
                edges.entry(((hi, 1), (lo, 1))).or_insert_with(|| nu.clone());
            }
            (true, &[(i, a), (j, b)]) if a.abs() == 1 && b.abs() == 1 => {
                let (vi, vj) = ((i, a as i8), (j, b as i8));
                edges.entry((vi, neg(vj))).or_insert_with(|| nu.clone());
                edges.entry((vj, neg(vi))).or_insert_with(|| nu.clone());
            }
            (true, &[(i, a)]) if a != 0 => {
                let v = (i, a.signum() as i8);
                edges.entry((v, neg(v))).or_insert_with(|| nu.clone());
            }
            _ => return Err(bad()),
        }
    }
    Ok(SignedDigraph { k, signed, edges })
}

pub fn build_relation(datum: &ParabolicDatum, s: &[Vector]) -> Result<SignedDigraph> {
    let rsh = crate::classical::t_root_system(datum);
    for nu in s {
        if rsh.index_of(nu).is_none() {
            return Err(Error::NotATRoot(nu.to_string()));
        }
    }
    build_relation_for(datum.k(), datum.is_signed(), s)
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct OrderWitness {
    /// The full order, earliest first.
    pub total_order: Vec<Vertex>,
    pub order: SignedOrder,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CycleCertificate {
    /// `v_1 ≺ v_2 ≺ … ≺ v_l ≺ v_1`, with the first vertex repeated at the end.
    pub cycle: Vec<Vertex>,
    /// t-root forcing each consecutive step.
    pub witnesses: Vec<Vector>,
}

impl CycleCertificate {
    pub fn len(&self) -> usize {
        self.cycle.len() - 1
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }
}

impl fmt::Display for CycleCertificate {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let names: Vec<String> = self.cycle.iter().map(|&v| vertex_name(v)).collect();
        f.write_str(&names.join(" < "))
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub enum OrderOutcome {
    Order(OrderWitness),
    Cycle(CycleCertificate),
}

/// Extends ≺ to a total order (negation-compatible when signed) or returns a shortest cycle.
pub fn extend_to_order(g: &SignedDigraph) -> OrderOutcome {
    let mut alive = vec![true; g.k];
    let mut first_half = Vec::new();
    let vertices = g.vertices();
    while first_half.len() < g.k {
        let is_source = |v: Vertex| !g.edges.keys().any(|&(u, w)| w == v && alive[u.0] && alive[w.0]);
        let Some(&s) = vertices.iter().find(|&&v| alive[v.0] && is_source(v)) else {
            return OrderOutcome::Cycle(shortest_cycle(g).expect("no source implies a cycle"));
        };
        alive[s.0] = false;
        first_half.push(s);
    }
    let mut total_order = first_half.clone();
    if g.signed {
        total_order.extend(first_half.iter().rev().map(|&v| neg(v)));
    }
    OrderOutcome::Order(OrderWitness { total_order, order: SignedOrder { first_half } })
}

/// Shortest directed cycle, searched from each vertex in order; ties go to the earliest start.
pub fn shortest_cycle(g: &SignedDigraph) -> Option<CycleCertificate> {
    let mut best: Option<Vec<Vertex>> = None;
    for start in g.vertices() {
        let mut parent: BTreeMap<Vertex, Vertex> = BTreeMap::new();
        let mut queue = VecDeque::from([start]);
        let mut seen = BTreeSet::from([start]);
        let mut found = None;
        'bfs: while let Some(v) = queue.pop_front() {
            for w in g.successors(v) {
                if w == start {
                    found = Some(v);
                    break 'bfs;
                }
                if seen.insert(w) {
                    parent.insert(w, v);
                    queue.push_back(w);
                }
            }
        }
        if let Some(last) = found {
            let mut path = vec![last];
            while let Some(&p) = parent.get(path.last().unwrap()) {
                path.push(p);
            }
            path.reverse();
            if path[0] != start {
                path.insert(0, start);
            }
            path.push(start);
            if best.as_ref().is_none_or(|b| path.len() < b.len()) {
                best = Some(path);
            }
        }
    }
    best.map(|cycle| {
        let witnesses = cycle.windows(2).map(|w| g.edges[&(w[0], w[1])].clone()).collect();
        CycleCertificate { cycle, witnesses }
    })
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ParabolicWitness {
    pub order: OrderWitness,
    /// The pair (Q, τ).
    pub parabolic: ParabolicDatum,
    pub roots: Vec<Vector>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub enum ContainmentOutcome {
    Contained(Box<ParabolicWitness>),
    Cycle(CycleCertificate),
}

/// A parabolic with reductive part s whose roots contain every ε-root projecting into S.
pub fn find_parabolic_containing(datum: &ParabolicDatum, s: &[Vector]) -> Result<ContainmentOutcome> {
    let g = build_relation(datum, s)?;
    match extend_to_order(&g) {
        OrderOutcome::Cycle(c) => Ok(ContainmentOutcome::Cycle(c)),
        OrderOutcome::Order(w) => {
            let q = datum_for_order(datum, &canonical_order(datum, w.order.clone()));
            let roots = parabolic_roots(&q);
            let spaces = root_spaces(datum);
            for nu in s {
                for alpha in spaces.get(nu).into_iter().flatten() {
                    if !roots.contains(alpha) {
                        return Err(Error::Internal(format!("root {alpha} over {nu} missing from the parabolic {q}")));
                    }
                }
            }
            Ok(ContainmentOutcome::Contained(Box::new(ParabolicWitness {
                order: w,
                parabolic: q,
                roots: roots.into_iter().collect(),
            })))
        }
    }
}

/// Axioms: `R = T ∪ −T`, `T ∩ −T = ∅`, and `μ, ν ∈ T, μ + ν ∈ R ⟹ μ + ν ∈ T` (μ = ν allowed).
pub fn check_positive_system(t: &[Vector], rsh: &[Vector]) -> bool {
    let tset: BTreeSet<&Vector> = t.iter().collect();
    let rset: BTreeSet<&Vector> = rsh.iter().collect();
    if !tset.iter().all(|v| rset.contains(v)) {
        return false;
    }
    for nu in rsh {
        let minus = -nu;
        if tset.contains(nu) == tset.contains(&minus) {
            return false;
        }
    }
    for a in t {
        for b in t {
            let sum = a + b;
            if rset.contains(&sum) && !tset.contains(&sum) {
                return false;
            }
        }
    }
    true
}

/// `{ν : φ(ν) > 0}`, or `None` if φ vanishes somewhere on R.
pub fn phi_cut(phi: &[Rational], rsh: &[Vector]) -> Option<Vec<Vector>> {
    let mut out = Vec::new();
    for nu in rsh {
        let x = pair(phi, nu);
        if x.is_zero() {
            return None;
        }
        if x.is_positive() {
            out.push(nu.clone());
        }
    }
    Some(out)
}

/// Whether T is cut out by some φ nonvanishing on R: decided by separating T ∪ −(R \ T) from 0.
pub fn is_phi_cut(t: &[Vector], rsh: &[Vector]) -> Option<Vec<Rational>> {
    let tset: BTreeSet<&Vector> = t.iter().collect();
    let signed: Vec<Vector> = rsh.iter().map(|nu| if tset.contains(nu) { nu.clone() } else { -nu }).collect();
    if signed.is_empty() {
        return t.is_empty().then(Vec::new);
    }
    match zero_in_positive_span(&signed) {
        ConeOutcome::Separated(phi) => (phi_cut(&phi, rsh)? == sorted(t)).then_some(phi),
        ConeOutcome::ZeroInCone(_) => None,
    }
}

fn sorted(t: &[Vector]) -> Vec<Vector> {
    let mut v = t.to_vec();
    v.sort();
    v
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::classical::{delta, t_root_system, ParabolicDatum};
    use crate::rational::{int, rat};
    use crate::roots::LieType;

    fn b2() -> ParabolicDatum {
        ParabolicDatum::with_positive_signs(LieType::B, 2, vec![vec![1, 2]], None).unwrap()
    }

    fn gl3() -> ParabolicDatum {
        ParabolicDatum::with_positive_signs(LieType::Gl, 3, vec![vec![1, 2], vec![3]], None).unwrap()
    }

    #[test]
    fn saturation_examples() {
        let r = t_root_system(&b2()).vectors();
        assert_eq!(saturate(&r, &[delta(1, &[(0, -1)])]), vec![delta(1, &[(0, -2)]), delta(1, &[(0, -1)])]);
        let r = t_root_system(&gl3()).vectors();
        let s = vec![delta(2, &[(0, 1), (1, -1)])];
        assert_eq!(saturate(&r, &s), s);
    }

    #[test]
    fn cone_examples() {
        let s = vec![delta(1, &[(0, -1)]), delta(1, &[(0, 2)])];
        match zero_in_positive_span(&s) {
            ConeOutcome::ZeroInCone(c) => {
                assert_eq!(c.coefficients.iter().map(|x| x.1).collect::<Vec<_>>(), vec![rat(2, 3), rat(1, 3)])
            }
            other => panic!("{other:?}"),
        }
        let s = vec![delta(2, &[(0, 1), (1, -1)])];
        match zero_in_positive_span(&s) {
            ConeOutcome::Separated(phi) => assert_eq!(pair(&phi, &s[0]), int(1)),
            other => panic!("{other:?}"),
        }
    }

    #[test]
    fn relation_examples() {
        let s = vec![delta(1, &[(0, -1)]), delta(1, &[(0, 2)])];
        let g = build_relation(&b2(), &s).unwrap();
        let edges: Vec<_> = g.edges.keys().copied().collect();
        assert_eq!(edges, vec![((0, -1), (0, 1)), ((0, 1), (0, -1))]);
        match extend_to_order(&g) {
            OrderOutcome::Cycle(c) => assert_eq!(c.len(), 2),
            other => panic!("{other:?}"),
        }
        let g = build_relation(&gl3(), &[delta(2, &[(0, 1), (1, -1)])]).unwrap();
        assert_eq!(g.edges.keys().copied().collect::<Vec<_>>(), vec![((0, 1), (1, 1))]);
        let both = [delta(2, &[(0, 1), (1, -1)]), delta(2, &[(0, -1), (1, 1)])];
        let g = build_relation(&gl3(), &both).unwrap();
        assert!(matches!(extend_to_order(&g), OrderOutcome::Cycle(c) if c.len() == 2));
    }

    #[test]
    fn signed_extension_example() {
        // a ≺ b and a ≺ −b on {±a, ±b}.
        let mut edges = BTreeMap::new();
        let dummy = delta(2, &[(0, 1)]);
        for (u, v) in [((0, 1), (1, 1)), ((0, 1), (1, -1)), ((1, -1), (0, -1)), ((1, 1), (0, -1))] {
            edges.insert((u, v), dummy.clone());
        }
        let g = SignedDigraph { k: 2, signed: true, edges };
        match extend_to_order(&g) {
            OrderOutcome::Order(w) => assert_eq!(w.total_order, vec![(0, 1), (1, 1), (1, -1), (0, -1)]),
            other => panic!("{other:?}"),
        }
    }

    #[test]
    fn containment_examples() {
        let s = vec![delta(2, &[(0, 1), (1, -1)])];
        match find_parabolic_containing(&gl3(), &s).unwrap() {
            ContainmentOutcome::Contained(w) => assert_eq!(w.parabolic.partition.parts, vec![vec![1, 2], vec![3]]),
            other => panic!("{other:?}"),
        }
        let s = vec![delta(1, &[(0, -1)]), delta(1, &[(0, 2)])];
        assert!(matches!(find_parabolic_containing(&b2(), &s).unwrap(), ContainmentOutcome::Cycle(_)));
        assert!(matches!(find_parabolic_containing(&b2(), &[]).unwrap(), ContainmentOutcome::Contained(_)));
    }

    #[test]
    fn positive_system_examples() {
        let r = t_root_system(&b2()).vectors();
        assert!(!check_positive_system(&r, &r));
        assert!(check_positive_system(&[delta(1, &[(0, 1)]), delta(1, &[(0, 2)])], &r));
        assert!(!check_positive_system(&[delta(1, &[(0, -1)]), delta(1, &[(0, 2)])], &r));
    }
}
