//! Weyl groups at desk scale, enumerated through the orbit of a regular weight.

use std::collections::hash_map::Entry;
use std::collections::{HashMap, VecDeque};

use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::rational::{Rational, Vector};
use crate::roots::{Form, LieType, RootSystem};

pub const DEFAULT_WEYL_CAP: u128 = 1_000_000;

/// Order of the Weyl group of a type, from the closed formulas.
pub fn weyl_order(lie_type: LieType, rank: usize) -> u128 {
    let fact = |n: usize| (1..=n as u128).product::<u128>();
    match lie_type {
        LieType::A => fact(rank + 1),
        LieType::Gl => fact(rank),
        LieType::B | LieType::C => (1u128 << rank) * fact(rank),
        LieType::D => (1u128 << (rank - 1)) * fact(rank),
        LieType::G2 => 12,
        LieType::F4 => 1152,
        LieType::E6 => 51_840,
        LieType::E7 => 2_903_040,
        LieType::E8 => 696_729_600,
    }
}

/// Elements of W as matrices acting on ambient coordinates (column convention `v ↦ M v`).
#[derive(Debug, Clone)]
pub struct WeylGroup {
    pub elements: Vec<Vec<Vec<Rational>>>,
    /// Determinant of each element, ±1.
    pub signs: Vec<i8>,
}

impl WeylGroup {
    pub fn order(&self) -> usize {
        self.elements.len()
    }

    pub fn apply(&self, index: usize, v: &[Rational]) -> Vec<Rational> {
        self.elements[index].iter().map(|row| row.iter().zip(v).map(|(a, b)| a * b).sum()).collect()
    }
}

fn reflection_matrix(form: &Form, alpha: &[Rational]) -> Vec<Vec<Rational>> {
    let n = alpha.len();
    // Columns are images of the unit vectors.
    let cols: Vec<Vec<Rational>> = (0..n)
        .map(|j| {
            let mut e = vec![Rational::zero(); n];
            e[j] = Rational::one();
            form.reflect(&e, alpha)
        })
        .collect();
    (0..n).map(|i| (0..n).map(|j| cols[j][i]).collect()).collect()
}

fn mat_mul(a: &[Vec<Rational>], b: &[Vec<Rational>]) -> Vec<Vec<Rational>> {
    let n = a.len();
    (0..n).map(|i| (0..n).map(|j| (0..n).map(|k| a[i][k] * b[k][j]).sum()).collect()).collect()
}

/// Enumerates the Weyl group of `rs`, refusing when its order exceeds `cap`.
pub fn weyl_group(rs: &RootSystem, cap: u128) -> Result<WeylGroup> {
    let order = weyl_order(rs.lie_type, if rs.lie_type == LieType::Gl { rs.rank + 1 } else { rs.rank });
    if order > cap {
        return Err(Error::CapExceeded {
            what: format!("Weyl group of {}{}", rs.lie_type, rs.rank),
            count: order,
            cap,
        });
    }
    let n = rs.ambient_dim();
    let rho = rs.rho();
    let gens: Vec<_> = rs.simple_roots.iter().map(|a| reflection_matrix(&rs.form, &a.coords)).collect();
    let identity: Vec<Vec<Rational>> =
        (0..n).map(|i| (0..n).map(|j| if i == j { Rational::one() } else { Rational::zero() }).collect()).collect();
    let mut index: HashMap<Vec<Rational>, usize> = HashMap::new();
    let mut group = WeylGroup { elements: vec![identity], signs: vec![1] };
    index.insert(rho.coords.clone(), 0);
    let mut queue = VecDeque::from([0usize]);
    while let Some(i) = queue.pop_front() {
        for g in &gens {
            let m = mat_mul(g, &group.elements[i]);
            let image = group_apply(&m, &rho.coords);
            if let Entry::Vacant(e) = index.entry(image) {
                e.insert(group.elements.len());
                group.signs.push(-group.signs[i]);
                group.elements.push(m);
                queue.push_back(group.elements.len() - 1);
            }
        }
    }
    Ok(group)
}

fn group_apply(m: &[Vec<Rational>], v: &[Rational]) -> Vec<Rational> {
    m.iter().map(|row| row.iter().zip(v).map(|(a, b)| a * b).sum()).collect()
}

/// The orbit {(wρ, sign w)} of the Weyl vector of the reflection group generated by `simple`.
///
/// ρ is regular, so the orbit is in bijection with W; the sign is the parity of the BFS depth.
pub fn rho_orbit(form: &Form, simple: &[Vector], rho: &Vector, cap: u128) -> Result<Vec<(Vec<Rational>, i8)>> {
    let mut seen: HashMap<Vec<Rational>, i8> = HashMap::new();
    seen.insert(rho.coords.clone(), 1);
    let mut order = vec![(rho.coords.clone(), 1i8)];
    let mut queue = VecDeque::from([0usize]);
    while let Some(i) = queue.pop_front() {
        let (v, s) = order[i].clone();
        for a in simple {
            let w = form.reflect(&v, &a.coords);
            if !seen.contains_key(&w) {
                seen.insert(w.clone(), -s);
                order.push((w, -s));
                if order.len() as u128 > cap {
                    return Err(Error::CapExceeded {
                        what: "Weyl group orbit".into(),
                        count: order.len() as u128,
                        cap,
                    });
                }
                queue.push_back(order.len() - 1);
            }
        }
    }
    Ok(order)
}
