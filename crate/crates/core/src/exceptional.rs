//! G2 Levi data and the affine-node construction for F4, E6, E7, E8.

use std::collections::BTreeMap;

use num_integer::Integer;
use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::invariants::{invariants_up_to_degree, DecompositionReport, DegreeEntry, GradedModule, ReductiveStructure};
use crate::positivity::{is_saturated, saturate, zero_in_positive_span, ConeOutcome};
use crate::rational::{int, BasisTag, Rational, Vector};
use crate::roots::{
    extended_diagram_remove_adjacent, fundamental_weights, generate_roots, root_system_from_simple, weyl_dimension,
    AffineNodeSplit, LieType, RootSystem,
};

fn g2() -> RootSystem {
    generate_roots(LieType::G2, 2).expect("G2 is valid")
}

/// Functional `w ↦ Σ f_i w_i` scaled to be primitive and integral on `roots`, positive on the
/// first root where it does not vanish.
fn primitive_on(f: Vec<Rational>, roots: &[Vector]) -> Vec<Rational> {
    let vals: Vec<Rational> = roots.iter().map(|r| r.coords.iter().zip(&f).map(|(a, b)| a * b).sum()).collect();
    let den = vals.iter().fold(1i128, |acc, v| acc.lcm(v.denom()));
    let num = vals.iter().fold(0i128, |acc, v| acc.gcd(&(v * int(den)).to_integer()));
    if num == 0 {
        return f;
    }
    let first = vals.iter().find(|v| !v.is_zero()).copied().unwrap_or_else(Rational::one);
    let scale = int(den) / int(num) * if first.is_negative() { int(-1) } else { int(1) };
    f.iter().map(|x| x * scale).collect()
}

/// A Levi subalgebra s of G2 with t = Z(s), graded by t.
#[derive(Debug, Clone)]
pub struct G2Levi {
    /// Positive root of s, or `None` for s = h.
    pub s_root: Option<Vector>,
    pub graded: GradedModule,
    pub t_dim: usize,
}

fn g2_levi_with(s_root: Option<Vector>, center: Vec<Vec<Rational>>) -> Result<G2Levi> {
    let rs = g2();
    let project = |a: &Vector| {
        Vector::new(center.iter().map(|f| f.iter().zip(&a.coords).map(|(x, y)| x * y).sum()).collect(), BasisTag::Delta)
    };
    let mut spaces: BTreeMap<Vector, Vec<Vector>> = BTreeMap::new();
    for a in &rs.all_roots {
        let nu = project(a);
        if !nu.is_zero() {
            spaces.entry(nu).or_default().push(a.clone());
        }
    }
    let simple = s_root.iter().cloned().collect();
    let st = ReductiveStructure::new(BasisTag::SimpleRoot, rs.form.clone(), simple, center.clone())?;
    Ok(G2Levi { s_root, graded: GradedModule::from_spaces(st, spaces)?, t_dim: center.len() })
}

/// s = h and the six rank-one Levi subalgebras with roots ±β (every β > 0 of G2).
pub fn g2_levis() -> Result<Vec<G2Levi>> {
    let rs = g2();
    let mut out = vec![g2_levi_with(None, vec![vec![int(1), int(0)], vec![int(0), int(1)]])?];
    let gram = rs.form.gram().clone();
    for beta in &rs.positive_roots {
        let gb: Vec<Rational> = (0..2).map(|i| (0..2).map(|j| gram.rows[i][j] * beta.coords[j]).sum()).collect();
        // γ ⊥ β under the form; the functional is w ↦ (w, γ).
        let gamma = [gb[1], -gb[0]];
        let f: Vec<Rational> = (0..2).map(|i| (0..2).map(|j| gram.rows[i][j] * gamma[j]).sum()).collect();
        let f = primitive_on(f, &rs.all_roots);
        out.push(g2_levi_with(Some(beta.clone()), vec![f])?);
    }
    Ok(out)
}

#[derive(Debug, Clone)]
pub struct G2Instance {
    pub s_roots: [Vector; 2],
    /// (ν, dim g^ν), sorted by ν.
    pub troots: Vec<(Vector, usize)>,
    /// Each root of G2 with the multiple of δ it projects to.
    pub weight_map: Vec<(Vector, i128)>,
    pub graded: GradedModule,
}

/// s ≅ gl_2 with roots ±α_2; δ is read off as the α_1-coefficient.
pub fn g2_instance() -> Result<G2Instance> {
    let rs = g2();
    let a2 = rs.simple_roots[1].clone();
    let levi = g2_levi_with(Some(a2.clone()), vec![vec![int(1), int(0)]])?;
    let troots = levi.graded.troots.iter().zip(&levi.graded.weights).map(|(nu, ws)| (nu.clone(), ws.len())).collect();
    let weight_map = rs.all_roots.iter().map(|a| (a.clone(), a.coords[0].to_integer())).collect();
    Ok(G2Instance { s_roots: [a2.clone(), -&a2], troots, weight_map, graded: levi.graded })
}

pub fn g2_delta(c: i128) -> Vector {
    Vector::from_ints([c], BasisTag::Delta)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Serialize, Deserialize)]
pub enum MTag {
    /// g^ν = tr_m ⊗ ν, ν a root of c.
    Trivial,
    /// g^ν = V ⊗ ν, ν a weight of U.
    Natural,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct AffineTRoot {
    /// Dynkin labels `(⟨α, β_1∨⟩, …)`.
    pub weight: Vector,
    pub tag: MTag,
    pub dim: usize,
}

#[derive(Debug, Clone)]
pub struct AffineNodeInstance {
    pub g_type: LieType,
    pub g: RootSystem,
    pub split: AffineNodeSplit,
    pub c: RootSystem,
    /// ω as Dynkin labels (a unit vector).
    pub u_highest_weight: Vector,
    /// ω = Σ q_i β_i.
    pub omega_in_beta: Vec<Rational>,
    pub troots: Vec<AffineTRoot>,
    pub dim_u: usize,
    pub dim_u_weyl: u128,
    pub graded: GradedModule,
}

impl AffineNodeInstance {
    pub fn rsh(&self) -> Vec<Vector> {
        self.troots.iter().map(|t| t.weight.clone()).collect()
    }

    pub fn supp_u(&self) -> Vec<Vector> {
        self.troots.iter().filter(|t| t.tag == MTag::Natural).map(|t| t.weight.clone()).collect()
    }

    pub fn dim_c(&self) -> usize {
        self.c.all_roots.len() + self.c.rank
    }

    /// `S = {−ω, β_1, …, β_{n−1}}` in Dynkin labels.
    pub fn counterexample_set(&self) -> Vec<Vector> {
        let mut s = vec![-&self.u_highest_weight];
        for row in &self.c.cartan_matrix {
            s.push(Vector::from_ints(row.iter().map(|&x| x as i128), BasisTag::FundamentalWeight));
        }
        s
    }
}

pub fn affine_node_instance(g_type: LieType) -> Result<AffineNodeInstance> {
    if !matches!(g_type, LieType::F4 | LieType::E6 | LieType::E7 | LieType::E8) {
        return Err(Error::Unsupported(format!("no affine-node construction for {g_type}")));
    }
    let g = generate_roots(
        g_type,
        match g_type {
            LieType::E6 => 6,
            LieType::E7 => 7,
            LieType::E8 => 8,
            _ => 4,
        },
    )?;
    let split = extended_diagram_remove_adjacent(&g)?;
    let c = root_system_from_simple(split.c_type, g.form.clone(), split.c_simple_roots.clone(), BasisTag::SimpleRoot);
    let r = c.rank;
    let labels = |a: &Vector| {
        Vector::new(
            split.c_simple_roots.iter().map(|b| g.form.coroot_pairing(&a.coords, &b.coords)).collect(),
            BasisTag::FundamentalWeight,
        )
    };
    let c_labels: std::collections::BTreeSet<Vector> = c.all_roots.iter().map(labels).collect();
    let mut spaces: BTreeMap<Vector, Vec<Vector>> = BTreeMap::new();
    for a in &g.all_roots {
        let nu = labels(a);
        if !nu.is_zero() {
            spaces.entry(nu).or_default().push(a.clone());
        }
    }
    let troots: Vec<AffineTRoot> = spaces
        .iter()
        .map(|(nu, alphas)| AffineTRoot {
            weight: nu.clone(),
            tag: if c_labels.contains(nu) { MTag::Trivial } else { MTag::Natural },
            dim: alphas.len(),
        })
        .collect();
    let omega_in_beta = fundamental_weights(&c)?[split.linked_index - 1].clone();
    let u_highest_weight = Vector::unit(r, split.linked_index - 1, BasisTag::FundamentalWeight);
    let mut omega = Vector::zero(g.rank, BasisTag::SimpleRoot);
    for (q, b) in omega_in_beta.iter().zip(&split.c_simple_roots) {
        omega = &omega + &b.scale(*q);
    }
    let dim_u_weyl = weyl_dimension(&c, &omega)?;
    let dim_u = troots.iter().filter(|t| t.tag == MTag::Natural).count();
    let center = split
        .c_simple_roots
        .iter()
        .map(|b| {
            let norm = g.form.eval(&b.coords, &b.coords);
            (0..g.rank)
                .map(|i| int(2) * g.form.eval(&Vector::unit(g.rank, i, BasisTag::SimpleRoot).coords, &b.coords) / norm)
                .collect()
        })
        .collect();
    let theta = g.highest_root.clone();
    let st = ReductiveStructure::new(BasisTag::SimpleRoot, g.form.clone(), vec![theta], center)?;
    let graded = GradedModule::from_spaces(st, spaces)?;
    Ok(AffineNodeInstance { g_type, g, split, c, u_highest_weight, omega_in_beta, troots, dim_u, dim_u_weyl, graded })
}

/// Outcome of the construction `S = {−ω, β_1, …, β_{n−1}}`.
#[derive(Debug, Clone)]
pub struct AffineCounterexample {
    pub instance: AffineNodeInstance,
    pub s: Vec<Vector>,
    pub saturated: bool,
    pub saturation: Vec<Vector>,
    pub cone: ConeOutcome,
    /// Invariants from the graded-piece argument: a piece `Sym^j g^{−ω} ⊗ ⊗ Sym^{i_a} g^{β_a}`
    /// carries an invariant only when j = 0 and its t-weight vanishes.
    pub invariants: DecompositionReport,
    /// Pieces of each degree whose t-weight vanishes.
    pub zero_weight_pieces: Vec<usize>,
    /// The same table from the generic engine.
    pub generic_invariants: DecompositionReport,
}

fn compositions(total: usize, parts: usize, f: &mut impl FnMut(&[usize])) {
    fn rec(left: usize, parts: usize, cur: &mut Vec<usize>, f: &mut impl FnMut(&[usize])) {
        if cur.len() + 1 == parts {
            cur.push(left);
            f(cur);
            cur.pop();
            return;
        }
        for c in 0..=left {
            cur.push(c);
            rec(left - c, parts, cur, f);
            cur.pop();
        }
    }
    if parts == 0 {
        if total == 0 {
            f(&[]);
        }
        return;
    }
    rec(total, parts, &mut Vec::with_capacity(parts), f);
}

pub fn paper_counterexample(g_type: LieType, max_degree: usize, cap: u128) -> Result<AffineCounterexample> {
    let instance = affine_node_instance(g_type)?;
    let s = instance.counterexample_set();
    let rsh = instance.rsh();
    let saturation = saturate(&rsh, &s);
    let saturated = is_saturated(&rsh, &s);
    let cone = zero_in_positive_span(&s);
    let r = instance.c.rank;
    let mut degrees = vec![DegreeEntry { k: 0, dim: 1 }];
    let mut zero_weight_pieces = vec![1];
    for k in 1..=max_degree {
        let (mut dim, mut zero) = (0u128, 0usize);
        compositions(k, r + 1, &mut |c: &[usize]| {
            let j = c[0];
            let weight = (0..r).all(|t| {
                let mut x = -(j as i128) * instance.u_highest_weight.coords[t].to_integer();
                for (a, &i) in c[1..].iter().enumerate() {
                    x += i as i128 * instance.c.cartan_matrix[a][t] as i128;
                }
                x == 0
            });
            if weight {
                zero += 1;
                if j == 0 {
                    dim += 1;
                }
            }
        });
        degrees.push(DegreeEntry { k, dim });
        zero_weight_pieces.push(zero);
    }
    let generic_invariants = invariants_up_to_degree(&instance.graded, &s, max_degree, cap)?;
    Ok(AffineCounterexample {
        instance,
        s,
        saturated,
        saturation,
        cone,
        invariants: DecompositionReport { degrees },
        zero_weight_pieces,
        generic_invariants,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::invariants::DEFAULT_MULTISET_CAP;
    use crate::rational::rat;

    #[test]
    fn g2_grading() {
        let g = g2_instance().unwrap();
        let dims: Vec<(i128, usize)> = g.troots.iter().map(|(v, d)| (v.coords[0].to_integer(), *d)).collect();
        assert_eq!(dims, vec![(-3, 2), (-2, 1), (-1, 2), (1, 2), (2, 1), (3, 2)]);
        let two: Vec<&Vector> = g.weight_map.iter().filter(|(_, c)| *c == 2).map(|(a, _)| a).collect();
        assert_eq!(two, vec![&Vector::from_ints([2, 1], BasisTag::SimpleRoot)]);
        for a in &g.s_roots {
            assert!(g.weight_map.iter().any(|(b, c)| b == a && *c == 0));
        }
    }

    #[test]
    fn g2_levis_are_proportional_or_cartan() {
        let levis = g2_levis().unwrap();
        assert_eq!(levis.len(), 7);
        for l in &levis {
            match &l.s_root {
                None => assert!(l.graded.weights.iter().all(|w| w.len() == 1)),
                Some(_) => assert!(l.graded.troots.iter().all(|v| v.ratio_to(&l.graded.troots[0]).is_some())),
            }
        }
    }

    #[test]
    fn affine_dimensions() {
        for (t, du, dg) in
            [(LieType::F4, 14, 52), (LieType::E6, 20, 78), (LieType::E7, 32, 133), (LieType::E8, 56, 248)]
        {
            let inst = affine_node_instance(t).unwrap();
            assert_eq!(inst.dim_u, du);
            assert_eq!(inst.dim_u_weyl, du as u128);
            assert_eq!(3 + inst.dim_c() + 2 * inst.dim_u, dg);
            assert_eq!(inst.g.algebra_dim(), dg);
            assert!(inst.omega_in_beta.iter().all(|q| q.is_positive()));
            let supp = inst.supp_u();
            assert!(supp.iter().all(|v| supp.contains(&-v)));
            assert!(inst.troots.iter().all(|t| t.dim == if t.tag == MTag::Natural { 2 } else { 1 }));
        }
    }

    #[test]
    fn f4_cone_certificate_is_proportional_to_q() {
        let ce = paper_counterexample(LieType::F4, 8, DEFAULT_MULTISET_CAP).unwrap();
        match &ce.cone {
            ConeOutcome::ZeroInCone(c) => {
                let c0 = c.coefficients[0].1;
                for (i, q) in ce.instance.omega_in_beta.iter().enumerate() {
                    assert_eq!(c.coefficients[i + 1].1, c0 * q);
                }
            }
            other => panic!("{other:?}"),
        }
        assert_eq!(ce.instance.omega_in_beta, vec![int(1), int(2), rat(3, 2)]);
        assert!(ce.invariants.all_zero_above_zero());
        assert_eq!(ce.invariants, ce.generic_invariants);
    }
}
