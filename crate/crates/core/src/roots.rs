//! Root systems of the simple types (plus `gl_n`), generated by reflection closure.
//!
//! Simple roots follow the Bourbaki numbering throughout:
//!
//! | type | realization | simple roots |
//! |------|-------------|--------------|
//! | `A_n` | ε-basis, n+1 coords | α_i = ε_i − ε_{i+1} |
//! | `gl_n` | ε-basis, n coords | α_i = ε_i − ε_{i+1}, i < n |
//! | `B_n` | ε-basis | α_i = ε_i − ε_{i+1}, α_n = ε_n |
//! | `C_n` | ε-basis | α_i = ε_i − ε_{i+1}, α_n = 2ε_n |
//! | `D_n` | ε-basis | α_i = ε_i − ε_{i+1}, α_n = ε_{n−1} + ε_n |
//! | `G_2` | simple roots | α_1 short, α_2 long |
//! | `F_4` | simple roots | α_1, α_2 long, α_3, α_4 short |
//! | `E_6..E_8` | simple roots | chain 1-3-4-5-..., α_2 attached to α_4 |
//!
//! `B_1`, `C_1`, `D_2` and `D_3` are accepted (short `A_1`, long `A_1`, `A_1 × A_1`, `A_3`)
//! because they occur as factors of reductive parts.

use std::collections::{BTreeSet, HashSet, VecDeque};
use std::fmt;
use std::str::FromStr;

use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::rational::{int, rat, BasisTag, Matrix, Rational, Vector};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum LieType {
    A,
    B,
    C,
    D,
    E6,
    E7,
    E8,
    F4,
    G2,
    /// `gl_n`, realized natively in n ε-coordinates.
    #[serde(rename = "gl")]
    Gl,
}

impl LieType {
    pub fn is_classical(self) -> bool {
        matches!(self, LieType::A | LieType::B | LieType::C | LieType::D | LieType::Gl)
    }

    pub fn name(self) -> &'static str {
        match self {
            LieType::A => "A",
            LieType::B => "B",
            LieType::C => "C",
            LieType::D => "D",
            LieType::E6 => "E6",
            LieType::E7 => "E7",
            LieType::E8 => "E8",
            LieType::F4 => "F4",
            LieType::G2 => "G2",
            LieType::Gl => "gl",
        }
    }

    /// Checks the (type, rank) combination. For `gl` the rank is n of `gl_n`.
    pub fn validate_rank(self, rank: usize) -> Result<()> {
        let ok = match self {
            LieType::A | LieType::B | LieType::C | LieType::Gl => rank >= 1,
            LieType::D => rank >= 2,
            LieType::E6 => rank == 6,
            LieType::E7 => rank == 7,
            LieType::E8 => rank == 8,
            LieType::F4 => rank == 4,
            LieType::G2 => rank == 2,
        };
        if ok {
            Ok(())
        } else {
            Err(Error::InvalidType(format!("{}{} is not a valid root system", self.name(), rank)))
        }
    }
}

impl FromStr for LieType {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        Ok(match s.trim() {
            "A" | "a" => LieType::A,
            "B" | "b" => LieType::B,
            "C" | "c" => LieType::C,
            "D" | "d" => LieType::D,
            "E6" | "e6" => LieType::E6,
            "E7" | "e7" => LieType::E7,
            "E8" | "e8" => LieType::E8,
            "F4" | "f4" => LieType::F4,
            "G2" | "g2" => LieType::G2,
            "gl" | "GL" | "Gl" => LieType::Gl,
            other => return Err(Error::InvalidType(format!("unknown Lie type {other:?}"))),
        })
    }
}

impl fmt::Display for LieType {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

/// Symmetric bilinear form on an ambient coordinate space.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Form {
    gram: Matrix,
}

impl Form {
    pub fn euclidean(n: usize) -> Self {
        Form { gram: Matrix::identity(n) }
    }

    pub fn from_gram(gram: Matrix) -> Self {
        Form { gram }
    }

    pub fn gram(&self) -> &Matrix {
        &self.gram
    }

    pub fn dim(&self) -> usize {
        self.gram.size()
    }

    pub fn eval(&self, u: &[Rational], v: &[Rational]) -> Rational {
        let mut acc = Rational::zero();
        for (i, ui) in u.iter().enumerate() {
            if ui.is_zero() {
                continue;
            }
            for (j, vj) in v.iter().enumerate() {
                let g = self.gram.rows[i][j];
                if !g.is_zero() && !vj.is_zero() {
                    acc += ui * g * vj;
                }
            }
        }
        acc
    }

    /// ⟨v, α∨⟩ = 2(v, α)/(α, α).
    pub fn coroot_pairing(&self, v: &[Rational], alpha: &[Rational]) -> Rational {
        int(2) * self.eval(v, alpha) / self.eval(alpha, alpha)
    }

    /// Reflection of `v` in the hyperplane orthogonal to `alpha`.
    pub fn reflect(&self, v: &[Rational], alpha: &[Rational]) -> Vec<Rational> {
        let c = self.coroot_pairing(v, alpha);
        v.iter().zip(alpha).map(|(x, a)| x - c * a).collect()
    }
}

/// Full root system of a simple (or `gl_n`) Lie algebra.
#[derive(Debug, Clone)]
pub struct RootSystem {
    pub lie_type: LieType,
    /// Semisimple rank; for `gl_n` this is n − 1.
    pub rank: usize,
    pub basis: BasisTag,
    pub form: Form,
    pub simple_roots: Vec<Vector>,
    pub positive_roots: Vec<Vector>,
    pub all_roots: Vec<Vector>,
    pub highest_root: Vector,
    /// Bourbaki convention: `cartan[i][j] = ⟨α_i, α_j∨⟩`.
    pub cartan_matrix: Vec<Vec<i64>>,
}

impl RootSystem {
    pub fn ambient_dim(&self) -> usize {
        self.form.dim()
    }

    /// dim g = |Δ| + dim h.
    pub fn algebra_dim(&self) -> usize {
        self.all_roots.len() + self.ambient_dim()
    }

    pub fn contains(&self, v: &Vector) -> bool {
        self.all_roots.binary_search(v).is_ok()
    }

    /// Coefficients of `v` in the simple roots. `v` must lie in their span.
    pub fn simple_root_coords(&self, v: &Vector) -> Vec<Rational> {
        simple_coords(&self.form, &self.simple_roots, v)
    }

    pub fn coroot_pairing(&self, v: &Vector, alpha: &Vector) -> Rational {
        self.form.coroot_pairing(&v.coords, &alpha.coords)
    }

    pub fn reflect(&self, v: &Vector, alpha: &Vector) -> Vector {
        Vector::new(self.form.reflect(&v.coords, &alpha.coords), v.basis)
    }

    /// Half-sum of positive roots.
    pub fn rho(&self) -> Vector {
        half_sum(&self.positive_roots, self.basis, self.ambient_dim())
    }
}

/// Coefficients of `v` in `simple`, solved through the Gram matrix of `simple`.
pub fn simple_coords(form: &Form, simple: &[Vector], v: &Vector) -> Vec<Rational> {
    let n = simple.len();
    if n == 0 {
        return Vec::new();
    }
    let gram = Matrix {
        rows: simple.iter().map(|a| simple.iter().map(|b| form.eval(&a.coords, &b.coords)).collect()).collect(),
    };
    let inv = gram.inverse().expect("simple roots are linearly independent");
    let rhs: Vec<Rational> = simple.iter().map(|a| form.eval(&v.coords, &a.coords)).collect();
    (0..n).map(|i| (0..n).map(|j| inv.rows[i][j] * rhs[j]).sum()).collect()
}

pub(crate) fn half_sum(vs: &[Vector], basis: BasisTag, dim: usize) -> Vector {
    let mut acc = Vector::zero(dim, basis);
    for v in vs {
        acc = &acc + v;
    }
    acc.scale(rat(1, 2))
}

fn eps(n: usize, terms: &[(usize, i128)]) -> Vector {
    let mut v = Vector::zero(n, BasisTag::Epsilon);
    for &(i, c) in terms {
        v.coords[i] += int(c);
    }
    v
}

fn classical_simple_roots(lie_type: LieType, rank: usize) -> (usize, Vec<Vector>) {
    let ambient = match lie_type {
        LieType::A => rank + 1,
        _ => rank,
    };
    let chain_len = match lie_type {
        LieType::A => rank,
        LieType::Gl => rank - 1,
        _ => rank - 1,
    };
    let mut simple: Vec<Vector> = (0..chain_len).map(|i| eps(ambient, &[(i, 1), (i + 1, -1)])).collect();
    match lie_type {
        LieType::B => simple.push(eps(ambient, &[(rank - 1, 1)])),
        LieType::C => simple.push(eps(ambient, &[(rank - 1, 2)])),
        LieType::D => simple.push(eps(ambient, &[(rank - 2, 1), (rank - 1, 1)])),
        _ => {}
    }
    (ambient, simple)
}

/// Gram matrix of the simple roots for the exceptional types (long roots have square length 2,
/// except `G_2` where the long root has square length 6).
fn exceptional_gram(lie_type: LieType) -> Matrix {
    let n = match lie_type {
        LieType::G2 => 2,
        LieType::F4 => 4,
        LieType::E6 => 6,
        LieType::E7 => 7,
        LieType::E8 => 8,
        _ => unreachable!(),
    };
    let mut g = vec![vec![Rational::zero(); n]; n];
    let mut bond = |i: usize, j: usize, v: Rational| {
        g[i - 1][j - 1] = v;
        g[j - 1][i - 1] = v;
    };
    match lie_type {
        LieType::G2 => {
            bond(1, 1, int(2));
            bond(2, 2, int(6));
            bond(1, 2, int(-3));
        }
        LieType::F4 => {
            bond(1, 1, int(2));
            bond(2, 2, int(2));
            bond(3, 3, int(1));
            bond(4, 4, int(1));
            bond(1, 2, int(-1));
            bond(2, 3, int(-1));
            bond(3, 4, rat(-1, 2));
        }
        _ => {
            for i in 1..=n {
                bond(i, i, int(2));
            }
            bond(1, 3, int(-1));
            bond(2, 4, int(-1));
            for i in 3..n {
                bond(i, i + 1, int(-1));
            }
        }
    }
    Matrix { rows: g }
}

/// Closure of the simple roots under the simple reflections.
fn reflection_closure(form: &Form, simple: &[Vector]) -> Vec<Vector> {
    let mut seen: HashSet<Vector> = simple.iter().cloned().collect();
    let mut queue: VecDeque<Vector> = simple.iter().cloned().collect();
    while let Some(v) = queue.pop_front() {
        for a in simple {
            let w = Vector::new(form.reflect(&v.coords, &a.coords), v.basis);
            if seen.insert(w.clone()) {
                queue.push_back(w);
            }
        }
    }
    let mut roots: Vec<Vector> = seen.into_iter().collect();
    roots.sort();
    roots
}

/// Builds a root system from simple roots and a form.
pub fn root_system_from_simple(lie_type: LieType, form: Form, simple: Vec<Vector>, basis: BasisTag) -> RootSystem {
    let rank = simple.len();
    let all_roots = if rank == 0 { Vec::new() } else { reflection_closure(&form, &simple) };
    let positive_roots: Vec<Vector> = all_roots
        .iter()
        .filter(|r| {
            let c = simple_coords(&form, &simple, r);
            c.iter().all(|x| !x.is_negative())
        })
        .cloned()
        .collect();
    let height = |r: &Vector| -> Rational { simple_coords(&form, &simple, r).iter().sum() };
    let highest_root =
        positive_roots.iter().max_by_key(|r| height(r)).cloned().unwrap_or_else(|| Vector::zero(form.dim(), basis));
    let cartan_matrix = simple
        .iter()
        .map(|ai| {
            simple
                .iter()
                .map(|aj| {
                    let c = form.coroot_pairing(&ai.coords, &aj.coords);
                    debug_assert!(c.is_integer());
                    *c.numer() as i64
                })
                .collect()
        })
        .collect();
    RootSystem {
        lie_type,
        rank,
        basis,
        form,
        simple_roots: simple,
        positive_roots,
        all_roots,
        highest_root,
        cartan_matrix,
    }
}

/// Generates the root system of the given type and rank. For `gl` the rank is n of `gl_n`.
pub fn generate_roots(lie_type: LieType, rank: usize) -> Result<RootSystem> {
    lie_type.validate_rank(rank)?;
    if lie_type.is_classical() {
        let (ambient, simple) = classical_simple_roots(lie_type, rank);
        Ok(root_system_from_simple(lie_type, Form::euclidean(ambient), simple, BasisTag::Epsilon))
    } else {
        let gram = exceptional_gram(lie_type);
        let simple = (0..rank).map(|i| Vector::unit(rank, i, BasisTag::SimpleRoot)).collect();
        Ok(root_system_from_simple(lie_type, Form::from_gram(gram), simple, BasisTag::SimpleRoot))
    }
}

/// Expected |Δ| for a type, from the closed-form counts.
pub fn expected_root_count(lie_type: LieType, rank: usize) -> usize {
    let n = rank;
    match lie_type {
        LieType::A => n * (n + 1),
        LieType::Gl => n * (n - 1),
        LieType::B | LieType::C => 2 * n * n,
        LieType::D => 2 * n * (n - 1),
        LieType::G2 => 12,
        LieType::F4 => 48,
        LieType::E6 => 72,
        LieType::E7 => 126,
        LieType::E8 => 240,
    }
}

/// Fundamental weights ω_i written in the simple-root basis: ⟨ω_i, α_j∨⟩ = δ_ij.
pub fn fundamental_weights(rs: &RootSystem) -> Result<Vec<Vec<Rational>>> {
    let n = rs.rank;
    let m = Matrix { rows: (0..n).map(|k| (0..n).map(|j| int(rs.cartan_matrix[k][j] as i128)).collect()).collect() };
    // ω_i = Σ_k c_ik α_k with Σ_k c_ik ⟨α_k, α_j∨⟩ = δ_ij, so C = M^{-1}.
    let inv = m.inverse().ok_or_else(|| Error::InvalidType(format!("singular Cartan matrix for {}", rs.lie_type)))?;
    Ok(inv.rows)
}

/// Product formula ∏_{α>0} (λ+ρ, α)/(ρ, α) for a dominant weight λ in the ambient coordinates.
pub fn weyl_dimension(rs: &RootSystem, highest_weight: &Vector) -> Result<u128> {
    weyl_dimension_for(&rs.form, &rs.simple_roots, &rs.positive_roots, highest_weight)
}

pub(crate) fn weyl_dimension_for(form: &Form, simple: &[Vector], positive: &[Vector], lambda: &Vector) -> Result<u128> {
    for a in simple {
        let c = form.coroot_pairing(&lambda.coords, &a.coords);
        if c.is_negative() || !c.is_integer() {
            return Err(Error::NotDominant(lambda.to_string()));
        }
    }
    let rho = half_sum(positive, lambda.basis, form.dim());
    let shifted = lambda + &rho;
    let mut dim = Rational::one();
    for a in positive {
        dim *= form.eval(&shifted.coords, &a.coords) / form.eval(&rho.coords, &a.coords);
    }
    debug_assert!(dim.is_integer());
    Ok(*dim.numer() as u128)
}

fn cartan_of(form: &Form, simple: &[&Vector]) -> Vec<Vec<i64>> {
    simple
        .iter()
        .map(|a| simple.iter().map(|b| *form.coroot_pairing(&a.coords, &b.coords).numer() as i64).collect())
        .collect()
}

/// All orderings `p` with `cartan(sub)[p[i]][p[j]] == cartan(target)[i][j]`.
fn matching_labelings(sub: &[Vec<i64>], target: &[Vec<i64>]) -> Vec<Vec<usize>> {
    fn extend(sub: &[Vec<i64>], target: &[Vec<i64>], p: &mut Vec<usize>, used: &mut [bool], out: &mut Vec<Vec<usize>>) {
        let i = p.len();
        if i == target.len() {
            out.push(p.clone());
            return;
        }
        for cand in 0..sub.len() {
            if used[cand] || sub[cand][cand] != target[i][i] {
                continue;
            }
            let ok = (0..i).all(|j| sub[cand][p[j]] == target[i][j] && sub[p[j]][cand] == target[j][i]);
            if ok {
                used[cand] = true;
                p.push(cand);
                extend(sub, target, p, used, out);
                p.pop();
                used[cand] = false;
            }
        }
    }
    let mut out = Vec::new();
    if sub.len() == target.len() {
        extend(sub, target, &mut Vec::new(), &mut vec![false; sub.len()], &mut out);
    }
    out
}

/// Identifies the Bourbaki type of a set of simple roots and returns every labeling
/// `(type, rank, order)` where `order[i]` indexes the input root playing the role of β_{i+1}.
pub fn identify_type(form: &Form, simple: &[Vector]) -> Vec<(LieType, usize, Vec<usize>)> {
    let refs: Vec<&Vector> = simple.iter().collect();
    let sub = cartan_of(form, &refs);
    let r = simple.len();
    let candidates = [
        LieType::A,
        LieType::B,
        LieType::C,
        LieType::D,
        LieType::E6,
        LieType::E7,
        LieType::E8,
        LieType::F4,
        LieType::G2,
    ];
    let mut out = Vec::new();
    for t in candidates {
        if t.validate_rank(r).is_err() || (t == LieType::D && r < 4) || (matches!(t, LieType::B | LieType::C) && r < 2)
        {
            continue;
        }
        let rs = generate_roots(t, r).expect("validated");
        for p in matching_labelings(&sub, &rs.cartan_matrix) {
            out.push((t, r, p));
        }
        if !out.is_empty() {
            break;
        }
    }
    out
}

/// Result of deleting the node adjacent to α_0 = −θ from the extended Dynkin diagram.
#[derive(Debug, Clone)]
pub struct AffineNodeSplit {
    /// ±α_0, the roots of the `A_1` subalgebra m.
    pub m_roots: [Vector; 2],
    /// 1-based Bourbaki index of the removed simple root of g.
    pub removed_node: usize,
    pub c_type: LieType,
    pub c_rank: usize,
    /// Simple roots β_1, … of c in c's Bourbaki labeling.
    pub c_simple_roots: Vec<Vector>,
    /// 1-based index (in c's labeling) of the simple root of c linked to the removed node.
    pub linked_index: usize,
}

pub fn extended_diagram_remove_adjacent(rs: &RootSystem) -> Result<AffineNodeSplit> {
    if !matches!(rs.lie_type, LieType::F4 | LieType::E6 | LieType::E7 | LieType::E8) {
        return Err(Error::Unsupported(format!(
            "affine-node construction is only defined here for F4, E6, E7, E8, not {}",
            rs.lie_type
        )));
    }
    let alpha0 = -&rs.highest_root;
    let adjacent: Vec<usize> =
        (0..rs.rank).filter(|&i| !rs.form.eval(&alpha0.coords, &rs.simple_roots[i].coords).is_zero()).collect();
    if adjacent.len() != 1 {
        return Err(Error::InvalidType(format!("α_0 has {} neighbours", adjacent.len())));
    }
    let removed = adjacent[0];
    let rest: Vec<usize> = (0..rs.rank).filter(|&i| i != removed).collect();
    let rest_roots: Vec<Vector> = rest.iter().map(|&i| rs.simple_roots[i].clone()).collect();
    let linked: BTreeSet<usize> = rest
        .iter()
        .enumerate()
        .filter(|(_, &i)| !rs.form.eval(&rs.simple_roots[i].coords, &rs.simple_roots[removed].coords).is_zero())
        .map(|(pos, _)| pos)
        .collect();
    let labelings = identify_type(&rs.form, &rest_roots);
    // Among diagram automorphisms of c, take the labeling giving the linked root the largest
    // index; ties go to the lexicographically first labeling.
    let (c_type, c_rank, order, linked_index) = labelings
        .into_iter()
        .map(|(t, r, p)| {
            let li = p.iter().position(|q| linked.contains(q)).expect("linked root present") + 1;
            (t, r, p, li)
        })
        .min_by(|a, b| b.3.cmp(&a.3).then_with(|| a.2.cmp(&b.2)))
        .ok_or_else(|| Error::InvalidType("could not identify the type of c".into()))?;
    Ok(AffineNodeSplit {
        m_roots: [alpha0.clone(), -&alpha0],
        removed_node: removed + 1,
        c_type,
        c_rank,
        c_simple_roots: order.iter().map(|&q| rest_roots[q].clone()).collect(),
        linked_index,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn e(n: usize, coords: &[i128]) -> Vector {
        assert_eq!(coords.len(), n);
        Vector::from_ints(coords.iter().copied(), BasisTag::Epsilon)
    }

    #[test]
    fn b2_roots() {
        let rs = generate_roots(LieType::B, 2).unwrap();
        let mut expected = vec![
            e(2, &[1, 1]),
            e(2, &[1, -1]),
            e(2, &[-1, 1]),
            e(2, &[-1, -1]),
            e(2, &[1, 0]),
            e(2, &[-1, 0]),
            e(2, &[0, 1]),
            e(2, &[0, -1]),
        ];
        expected.sort();
        assert_eq!(rs.all_roots, expected);
    }

    #[test]
    fn a1_roots() {
        let rs = generate_roots(LieType::A, 1).unwrap();
        assert_eq!(rs.all_roots.len(), 2);
        assert!(rs.contains(&e(2, &[1, -1])));
        assert!(rs.contains(&e(2, &[-1, 1])));
    }

    #[test]
    fn counts_match_closed_forms() {
        for t in [LieType::A, LieType::B, LieType::C, LieType::Gl] {
            for n in 1..=8 {
                let rs = generate_roots(t, n).unwrap();
                assert_eq!(rs.all_roots.len(), expected_root_count(t, n), "{t}{n}");
            }
        }
        for n in 2..=8 {
            assert_eq!(generate_roots(LieType::D, n).unwrap().all_roots.len(), 2 * n * (n - 1));
        }
        for (t, r, c) in [
            (LieType::G2, 2, 12),
            (LieType::F4, 4, 48),
            (LieType::E6, 6, 72),
            (LieType::E7, 7, 126),
            (LieType::E8, 8, 240),
        ] {
            assert_eq!(generate_roots(t, r).unwrap().all_roots.len(), c);
        }
    }

    #[test]
    fn invalid_combinations_rejected() {
        assert!(generate_roots(LieType::E6, 7).is_err());
        assert!(generate_roots(LieType::G2, 3).is_err());
        assert!(generate_roots(LieType::D, 1).is_err());
        assert!(generate_roots(LieType::A, 0).is_err());
        assert!("X9".parse::<LieType>().is_err());
    }

    #[test]
    fn closure_properties() {
        for (t, r) in
            [(LieType::B, 3), (LieType::C, 3), (LieType::D, 4), (LieType::G2, 2), (LieType::F4, 4), (LieType::E6, 6)]
        {
            let rs = generate_roots(t, r).unwrap();
            for a in &rs.all_roots {
                assert!(rs.contains(&-a));
                for b in &rs.all_roots {
                    assert!(rs.contains(&rs.reflect(a, b)), "{t}: s_b(a) not a root");
                }
            }
        }
    }

    #[test]
    fn highest_roots() {
        let expect = [
            (LieType::F4, vec![2, 3, 4, 2]),
            (LieType::E6, vec![1, 2, 2, 3, 2, 1]),
            (LieType::E7, vec![2, 2, 3, 4, 3, 2, 1]),
            (LieType::E8, vec![2, 3, 4, 6, 5, 4, 3, 2]),
            (LieType::G2, vec![3, 2]),
        ];
        for (t, coords) in expect {
            let rs = generate_roots(t, coords.len()).unwrap();
            assert_eq!(rs.highest_root, Vector::from_ints(coords.into_iter().map(i128::from), BasisTag::SimpleRoot));
        }
        let b3 = generate_roots(LieType::B, 3).unwrap();
        assert_eq!(b3.highest_root, e(3, &[1, 1, 0]));
    }

    #[test]
    fn fundamental_weights_examples() {
        let a1 = generate_roots(LieType::A, 1).unwrap();
        assert_eq!(fundamental_weights(&a1).unwrap(), vec![vec![rat(1, 2)]]);
        let c3 = generate_roots(LieType::C, 3).unwrap();
        assert_eq!(fundamental_weights(&c3).unwrap()[2], vec![int(1), int(2), rat(3, 2)]);
        let e7 = generate_roots(LieType::E7, 7).unwrap();
        let w = fundamental_weights(&e7).unwrap();
        assert!(w[6].iter().all(|q| q.is_positive()));
    }

    #[test]
    fn fundamental_weight_duality() {
        for (t, r) in
            [(LieType::B, 4), (LieType::C, 3), (LieType::D, 5), (LieType::G2, 2), (LieType::F4, 4), (LieType::E8, 8)]
        {
            let rs = generate_roots(t, r).unwrap();
            let ws = fundamental_weights(&rs).unwrap();
            for (i, w) in ws.iter().enumerate() {
                let mut v = Vector::zero(rs.ambient_dim(), rs.basis);
                for (k, c) in w.iter().enumerate() {
                    v = &v + &rs.simple_roots[k].scale(*c);
                }
                for (j, a) in rs.simple_roots.iter().enumerate() {
                    let expected = if i == j { Rational::one() } else { Rational::zero() };
                    assert_eq!(rs.coroot_pairing(&v, a), expected);
                }
            }
        }
    }

    fn weight(rs: &RootSystem, index: usize) -> Vector {
        let ws = fundamental_weights(rs).unwrap();
        let mut v = Vector::zero(rs.ambient_dim(), rs.basis);
        for (k, c) in ws[index].iter().enumerate() {
            v = &v + &rs.simple_roots[k].scale(*c);
        }
        v
    }

    #[test]
    fn weyl_dimension_examples() {
        let a1 = generate_roots(LieType::A, 1).unwrap();
        assert_eq!(weyl_dimension(&a1, &weight(&a1, 0)).unwrap(), 2);
        let c3 = generate_roots(LieType::C, 3).unwrap();
        assert_eq!(weyl_dimension(&c3, &weight(&c3, 2)).unwrap(), 14);
        let e7 = generate_roots(LieType::E7, 7).unwrap();
        assert_eq!(weyl_dimension(&e7, &weight(&e7, 6)).unwrap(), 56);
        assert_eq!(weyl_dimension(&e7, &Vector::zero(7, BasisTag::SimpleRoot)).unwrap(), 1);
        let bad = -&weight(&c3, 0);
        assert!(matches!(weyl_dimension(&c3, &bad), Err(Error::NotDominant(_))));
    }

    #[test]
    fn adjoint_dimension_from_highest_root() {
        for (t, r) in [
            (LieType::A, 3),
            (LieType::B, 3),
            (LieType::C, 3),
            (LieType::D, 4),
            (LieType::G2, 2),
            (LieType::F4, 4),
            (LieType::E6, 6),
        ] {
            let rs = generate_roots(t, r).unwrap();
            let dim = weyl_dimension(&rs, &rs.highest_root).unwrap() as usize;
            assert_eq!(dim, rs.all_roots.len() + rs.rank, "{t}{r}");
        }
    }

    #[test]
    fn affine_node_splits() {
        let cases = [
            (LieType::F4, 4, 1, LieType::C, 3, 3),
            (LieType::E6, 6, 2, LieType::A, 5, 3),
            (LieType::E7, 7, 1, LieType::D, 6, 6),
            (LieType::E8, 8, 8, LieType::E7, 7, 7),
        ];
        for (t, r, removed, ct, cr, linked) in cases {
            let rs = generate_roots(t, r).unwrap();
            let split = extended_diagram_remove_adjacent(&rs).unwrap();
            assert_eq!(split.removed_node, removed, "{t}");
            assert_eq!((split.c_type, split.c_rank), (ct, cr), "{t}");
            assert_eq!(split.linked_index, linked, "{t}");
        }
        let f4 = generate_roots(LieType::F4, 4).unwrap();
        let split = extended_diagram_remove_adjacent(&f4).unwrap();
        let unit = |i| Vector::unit(4, i, BasisTag::SimpleRoot);
        assert_eq!(split.c_simple_roots, vec![unit(3), unit(2), unit(1)]);
        assert!(extended_diagram_remove_adjacent(&generate_roots(LieType::B, 3).unwrap()).is_err());
    }
}
