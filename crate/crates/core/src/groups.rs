//! Finite matrix groups over cyclotomic fields and their complex reflections.

use std::collections::{HashMap, VecDeque};
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{ForgeError, Result};
use crate::scalars::ring::{invert_matrix, kernel, rank};
use crate::scalars::{parse_cyclotomic, CycNum, Ring};

/// Default bound on the number of enumerated elements.
pub const DEFAULT_GROUP_CAP: usize = 10_000;

/// Square matrix over a cyclotomic field, row major.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Matrix {
    rows: Vec<Vec<CycNum>>,
}

impl Matrix {
    pub fn new(rows: Vec<Vec<CycNum>>) -> Self {
        Matrix { rows }
    }

    pub fn identity(n: usize) -> Self {
        Self::from_fn(n, |i, j| if i == j { CycNum::one() } else { CycNum::zero() })
    }

    pub fn zero(n: usize) -> Self {
        Self::from_fn(n, |_, _| CycNum::zero())
    }

    pub fn from_fn(n: usize, f: impl Fn(usize, usize) -> CycNum) -> Self {
        Matrix { rows: (0..n).map(|i| (0..n).map(|j| f(i, j)).collect()).collect() }
    }

    pub fn diag(entries: &[CycNum]) -> Self {
        Self::from_fn(entries.len(), |i, j| if i == j { entries[i].clone() } else { CycNum::zero() })
    }

    /// Matrix with a single 1 at (i, j).
    pub fn unit(n: usize, i: usize, j: usize) -> Self {
        Self::from_fn(n, |a, b| if (a, b) == (i, j) { CycNum::one() } else { CycNum::zero() })
    }

    pub fn dim(&self) -> usize {
        self.rows.len()
    }

    pub fn rows(&self) -> &[Vec<CycNum>] {
        &self.rows
    }

    pub fn get(&self, i: usize, j: usize) -> &CycNum {
        &self.rows[i][j]
    }

    pub fn mul(&self, o: &Matrix) -> Matrix {
        let n = self.dim();
        Self::from_fn(n, |i, j| {
            (0..n).fold(CycNum::zero(), |acc, k| acc.add(&self.rows[i][k].mul(&o.rows[k][j])))
        })
    }

    pub fn add(&self, o: &Matrix) -> Matrix {
        Self::from_fn(self.dim(), |i, j| self.rows[i][j].add(&o.rows[i][j]))
    }

    pub fn sub(&self, o: &Matrix) -> Matrix {
        Self::from_fn(self.dim(), |i, j| self.rows[i][j].sub(&o.rows[i][j]))
    }

    pub fn scale(&self, c: &CycNum) -> Matrix {
        Self::from_fn(self.dim(), |i, j| self.rows[i][j].mul(c))
    }

    pub fn neg(&self) -> Matrix {
        Self::from_fn(self.dim(), |i, j| self.rows[i][j].neg())
    }

    pub fn transpose(&self) -> Matrix {
        Self::from_fn(self.dim(), |i, j| self.rows[j][i].clone())
    }

    pub fn commutator(&self, o: &Matrix) -> Matrix {
        self.mul(o).sub(&o.mul(self))
    }

    pub fn inverse(&self) -> Option<Matrix> {
        invert_matrix(&self.rows).map(Matrix::new)
    }

    pub fn apply(&self, v: &[CycNum]) -> Vec<CycNum> {
        self.rows
            .iter()
            .map(|row| row.iter().zip(v).fold(CycNum::zero(), |acc, (a, b)| acc.add(&a.mul(b))))
            .collect()
    }

    pub fn is_zero(&self) -> bool {
        self.rows.iter().flatten().all(CycNum::is_zero)
    }

    pub fn rank(&self) -> usize {
        rank(&self.rows)
    }

    /// Largest cyclotomic order among the entries (1 if all rational).
    pub fn cyclotomic_order(&self) -> u32 {
        self.rows.iter().flatten().map(CycNum::order).max().unwrap_or(1)
    }
}

impl fmt::Debug for Matrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let rows: Vec<String> = self
            .rows
            .iter()
            .map(|r| format!("[{}]", r.iter().map(|c| c.to_string()).collect::<Vec<_>>().join(", ")))
            .collect();
        write!(f, "[{}]", rows.join(", "))
    }
}

pub fn dot(a: &[CycNum], b: &[CycNum]) -> CycNum {
    a.iter().zip(b).fold(CycNum::zero(), |acc, (x, y)| acc.add(&x.mul(y)))
}

/// If `v = lambda * w` for a nonzero `w`, return lambda.
pub fn proportionality(v: &[CycNum], w: &[CycNum]) -> Option<CycNum> {
    let k = w.iter().position(|c| !c.is_zero())?;
    let lambda = v[k].mul(&w[k].try_inv()?);
    v.iter().zip(w).all(|(a, b)| a == &lambda.mul(b)).then_some(lambda)
}

/// Group configuration as accepted on the command line.
#[derive(Clone, Debug, Serialize, Deserialize, PartialEq)]
pub struct GroupSpec {
    pub cyclotomic_order: u32,
    pub dim: usize,
    pub generators: Vec<Vec<Vec<String>>>,
}

impl GroupSpec {
    pub fn matrices(&self) -> Result<Vec<Matrix>> {
        if self.cyclotomic_order == 0 {
            return Err(ForgeError::InvalidGroup("cyclotomic_order must be positive".into()));
        }
        self.generators
            .iter()
            .map(|g| {
                if g.len() != self.dim || g.iter().any(|r| r.len() != self.dim) {
                    return Err(ForgeError::InvalidGroup(format!(
                        "generator is not a {0}x{0} matrix",
                        self.dim
                    )));
                }
                let rows = g
                    .iter()
                    .map(|r| r.iter().map(|s| parse_cyclotomic(s, self.cyclotomic_order)).collect())
                    .collect::<Result<Vec<Vec<CycNum>>>>()?;
                Ok(Matrix::new(rows))
            })
            .collect()
    }

    pub fn build(&self, cap: usize) -> Result<Group> {
        Group::enumerate(&self.matrices()?, self.dim, self.cyclotomic_order, cap)
    }
}

/// Finite subgroup of GL(l) acting on h = column vectors.
///
/// The dual action on h* (and on coordinate functions) is by `(g^{-1})^T`.
#[derive(Clone)]
pub struct Group {
    dim: usize,
    cyclotomic_order: u32,
    elements: Vec<Matrix>,
    duals: Vec<Matrix>,
    index: HashMap<Matrix, usize>,
    table: Vec<u32>,
    inverses: Vec<usize>,
    generators: Vec<usize>,
}

impl Group {
    /// Closure of the generators under multiplication. Element 0 is the identity,
    /// the rest appear in breadth-first order over the generator list.
    pub fn enumerate(gens: &[Matrix], dim: usize, order: u32, cap: usize) -> Result<Group> {
        for (k, g) in gens.iter().enumerate() {
            if g.dim() != dim {
                return Err(ForgeError::InvalidGroup(format!("generator {} has wrong size", k + 1)));
            }
            if g.inverse().is_none() {
                return Err(ForgeError::InvalidGroup(format!("generator {} is not invertible", k + 1)));
            }
            let o = g.cyclotomic_order();
            if o != 1 && !order.is_multiple_of(o) {
                return Err(ForgeError::InvalidGroup(format!(
                    "generator {} has entries outside Q(zeta_{order})",
                    k + 1
                )));
            }
        }
        let id = Matrix::identity(dim);
        let mut elements = vec![id.clone()];
        let mut index = HashMap::from([(id, 0usize)]);
        let mut queue = VecDeque::from([0usize]);
        while let Some(i) = queue.pop_front() {
            for g in gens {
                let p = elements[i].mul(g);
                if !index.contains_key(&p) {
                    if elements.len() >= cap {
                        return Err(ForgeError::GroupTooLarge(cap));
                    }
                    index.insert(p.clone(), elements.len());
                    queue.push_back(elements.len());
                    elements.push(p);
                }
            }
        }
        let n = elements.len();
        let mut table = vec![0u32; n * n];
        for i in 0..n {
            for j in 0..n {
                table[i * n + j] = index[&elements[i].mul(&elements[j])] as u32;
            }
        }
        let inverses: Vec<usize> = (0..n).map(|i| (0..n).find(|&j| table[i * n + j] == 0).unwrap()).collect();
        let duals = (0..n).map(|i| elements[inverses[i]].transpose()).collect();
        let generators = gens.iter().map(|g| index[g]).collect();
        Ok(Group { dim, cyclotomic_order: order, elements, duals, index, table, inverses, generators })
    }

    /// Cyclic group generated by `diag(zeta_m)` on C^1.
    pub fn cyclic(m: u32) -> Group {
        let g = Matrix::diag(&[CycNum::root_of_unity(m, 1)]);
        Self::enumerate(&[g], 1, m, DEFAULT_GROUP_CAP).expect("cyclic group")
    }

    /// Symmetric group S_n by permutation matrices on C^n, generated by
    /// adjacent transpositions.
    pub fn symmetric(n: usize) -> Group {
        let gens: Vec<Matrix> = (0..n.saturating_sub(1))
            .map(|k| {
                Matrix::from_fn(n, |i, j| {
                    let pi = if i == k { k + 1 } else if i == k + 1 { k } else { i };
                    if pi == j {
                        CycNum::one()
                    } else {
                        CycNum::zero()
                    }
                })
            })
            .collect();
        Self::enumerate(&gens, n, 1, DEFAULT_GROUP_CAP).expect("symmetric group")
    }

    /// Group generated by a single diagonal matrix.
    pub fn diagonal(entries: &[CycNum], order: u32) -> Result<Group> {
        Self::enumerate(&[Matrix::diag(entries)], entries.len(), order, DEFAULT_GROUP_CAP)
    }

    /// Built-in groups by name: `Z<m>` (cyclic on C^1), `S<n>` (permutations of C^n).
    pub fn named(name: &str) -> Option<Group> {
        let (head, tail) = name.split_at(1);
        let k: u32 = tail.parse().ok()?;
        match head {
            "Z" | "z" if k >= 1 => Some(Self::cyclic(k)),
            "S" | "s" if k >= 1 => Some(Self::symmetric(k as usize)),
            _ => None,
        }
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn cyclotomic_order(&self) -> u32 {
        self.cyclotomic_order
    }

    pub fn order(&self) -> usize {
        self.elements.len()
    }

    pub fn identity(&self) -> usize {
        0
    }

    pub fn element(&self, i: usize) -> &Matrix {
        &self.elements[i]
    }

    pub fn elements(&self) -> &[Matrix] {
        &self.elements
    }

    /// `(g^{-1})^T`, the action of g on coordinates of h*.
    pub fn dual(&self, i: usize) -> &Matrix {
        &self.duals[i]
    }

    pub fn mul(&self, i: usize, j: usize) -> usize {
        self.table[i * self.order() + j] as usize
    }

    pub fn inv(&self, i: usize) -> usize {
        self.inverses[i]
    }

    pub fn conj(&self, g: usize, s: usize) -> usize {
        self.mul(self.mul(g, s), self.inv(g))
    }

    pub fn index_of(&self, m: &Matrix) -> Option<usize> {
        self.index.get(m).copied()
    }

    pub fn generators(&self) -> &[usize] {
        &self.generators
    }

    /// Indices of the elements of a subgroup, checking closure.
    pub fn subgroup_indices(&self, sub: &Group) -> Result<Vec<usize>> {
        let idx = sub
            .elements()
            .iter()
            .map(|m| {
                self.index_of(m)
                    .ok_or_else(|| ForgeError::InvalidGroup("subgroup element not in the group".into()))
            })
            .collect::<Result<Vec<_>>>()?;
        Ok(idx)
    }
}

impl fmt::Debug for Group {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Group(order {}, dim {})", self.order(), self.dim)
    }
}

/// A complex reflection with its eigen-data.
#[derive(Clone, Debug, PartialEq)]
pub struct ReflectionData {
    /// Index of s in the group.
    pub element: usize,
    /// Nontrivial eigenvalue of s on h*.
    pub lambda: CycNum,
    /// Nontrivial eigenvalue of s on h; equals `lambda^{-1}`.
    pub lambda_vee: CycNum,
    /// Root in h: `s * alpha_vee = lambda_vee * alpha_vee`.
    pub alpha_vee: Vec<CycNum>,
    /// Coroot in h*, vanishing on the fixed hyperplane, `(alpha, alpha_vee) = 2`.
    pub alpha: Vec<CycNum>,
    /// Conjugacy class, numbered from 0; the parameter is `c_{class + 1}`.
    pub class: usize,
}

fn first_nonzero_column(m: &Matrix) -> Option<Vec<CycNum>> {
    let n = m.dim();
    (0..n).map(|j| (0..n).map(|i| m.get(i, j).clone()).collect::<Vec<_>>()).find(|c| c.iter().any(|v| !v.is_zero()))
}

/// Scale so that the first nonzero coordinate is 1.
pub fn normalize_direction(v: &[CycNum]) -> Vec<CycNum> {
    match v.iter().find(|c| !c.is_zero()) {
        None => v.to_vec(),
        Some(lead) => {
            let inv = lead.try_inv().unwrap();
            v.iter().map(|c| c.mul(&inv)).collect()
        }
    }
}

/// Fix the scale of root and coroot: the root gets leading coordinate 1 and the
/// coroot is rescaled so the pairing is 2.
pub fn normalize_root_coroot(alpha_vee: &[CycNum], alpha: &[CycNum]) -> Result<(Vec<CycNum>, Vec<CycNum>)> {
    if alpha_vee.iter().all(CycNum::is_zero) || alpha.iter().all(CycNum::is_zero) {
        return Err(ForgeError::Invalid("zero eigenvector".into()));
    }
    let av = normalize_direction(alpha_vee);
    let pairing = dot(alpha, &av);
    let inv = pairing
        .try_inv()
        .ok_or_else(|| ForgeError::Invalid("root and coroot pair to zero".into()))?;
    let factor = CycNum::from_int(2).mul(&inv);
    Ok((alpha.iter().map(|c| c.mul(&factor)).collect(), av))
}

/// All complex reflections of the group with normalized root data and classes.
pub fn find_reflections(g: &Group) -> Vec<ReflectionData> {
    let n = g.dim();
    let id = Matrix::identity(n);
    let mut out: Vec<ReflectionData> = Vec::new();
    let mut class_of: HashMap<usize, usize> = HashMap::new();
    let mut classes = 0;
    for s in 0..g.order() {
        let m = g.element(s);
        let d = id.sub(m);
        if d.rank() != 1 {
            continue;
        }
        let raw_vee = first_nonzero_column(&d).unwrap();
        let dual_d = id.sub(g.dual(s));
        let raw = first_nonzero_column(&dual_d).unwrap();
        let (alpha, alpha_vee) = normalize_root_coroot(&raw_vee, &raw).expect("semisimple reflection");
        let lambda_vee = proportionality(&m.apply(&alpha_vee), &alpha_vee).expect("eigenvector");
        let lambda = proportionality(&g.dual(s).apply(&alpha), &alpha).expect("eigenvector");
        let class = *class_of.entry(s).or_insert_with(|| {
            let c = classes;
            classes += 1;
            c
        });
        for h in 0..g.order() {
            class_of.entry(g.conj(h, s)).or_insert(class);
        }
        out.push(ReflectionData { element: s, lambda, lambda_vee, alpha_vee, alpha, class });
    }
    out
}

pub fn num_classes(refl: &[ReflectionData]) -> usize {
    refl.iter().map(|r| r.class + 1).max().unwrap_or(0)
}

/// Basis of `{A : A h = h A for all h in H}` inside gl(l).
pub fn centralizer_lie_basis(h: &Group) -> Vec<Matrix> {
    let l = h.dim();
    let mut eqs: Vec<Vec<CycNum>> = Vec::new();
    // Unknown A_{ij} is variable i*l + j.
    for &gi in h.generators() {
        let m = h.element(gi);
        for i in 0..l {
            for j in 0..l {
                // (A m - m A)_{ij} = sum_k A_ik m_kj - m_ik A_kj
                let mut row = vec![CycNum::zero(); l * l];
                for k in 0..l {
                    row[i * l + k] = row[i * l + k].add(m.get(k, j));
                    row[k * l + j] = row[k * l + j].sub(m.get(i, k));
                }
                eqs.push(row);
            }
        }
    }
    kernel(&eqs, l * l)
        .into_iter()
        .map(|v| Matrix::from_fn(l, |i, j| v[i * l + j].clone()))
        .collect()
}

pub fn in_centralizer(h: &Group, a: &Matrix) -> bool {
    h.generators().iter().all(|&g| a.commutator(h.element(g)).is_zero())
}

/// `lambda_{A,s}`: eigenvalue of the infinitesimal dual action `-A^T` on the
/// coroot `alpha_s`.
pub fn lambda_a_s(a: &Matrix, r: &ReflectionData) -> Result<CycNum> {
    let v = a.transpose().neg().apply(&r.alpha);
    proportionality(&v, &r.alpha).ok_or(ForgeError::NotEigen(r.element))
}

/// Checks `A alpha_s^vee = -lambda_{A,s} alpha_s^vee`.
pub fn root_relation_holds(a: &Matrix, r: &ReflectionData) -> Result<bool> {
    let lam = lambda_a_s(a, r)?;
    let lhs = a.apply(&r.alpha_vee);
    let rhs: Vec<CycNum> = r.alpha_vee.iter().map(|c| c.mul(&lam).neg()).collect();
    Ok(lhs == rhs)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn m(rows: &[&[i64]]) -> Matrix {
        Matrix::new(rows.iter().map(|r| r.iter().map(|&v| CycNum::from_int(v)).collect()).collect())
    }

    #[test]
    fn orders() {
        assert_eq!(Group::cyclic(2).order(), 2);
        assert_eq!(Group::cyclic(4).order(), 4);
        assert_eq!(Group::symmetric(3).order(), 6);
        let minus = Group::enumerate(&[m(&[&[-1, 0], &[0, -1]])], 2, 1, 100).unwrap();
        assert_eq!(minus.order(), 2);
    }

    #[test]
    fn tables_are_consistent() {
        let g = Group::symmetric(3);
        for i in 0..g.order() {
            assert_eq!(g.mul(i, g.inv(i)), 0);
            for j in 0..g.order() {
                assert_eq!(g.element(g.mul(i, j)), &g.element(i).mul(g.element(j)));
            }
        }
    }

    #[test]
    fn infinite_generator_hits_cap() {
        let shear = m(&[&[1, 1], &[0, 1]]);
        assert_eq!(Group::enumerate(&[shear], 2, 1, 50).unwrap_err(), ForgeError::GroupTooLarge(50));
        let singular = m(&[&[1, 1], &[1, 1]]);
        assert!(Group::enumerate(&[singular], 2, 1, 50).is_err());
    }

    #[test]
    fn rank_one_reflection() {
        let r = find_reflections(&Group::cyclic(2));
        assert_eq!(r.len(), 1);
        assert_eq!(r[0].lambda, CycNum::from_int(-1));
        assert_eq!(r[0].alpha_vee, vec![CycNum::one()]);
        assert_eq!(r[0].alpha, vec![CycNum::from_int(2)]);
    }

    #[test]
    fn minus_identity_has_no_reflections() {
        let g = Group::enumerate(&[m(&[&[-1, 0], &[0, -1]])], 2, 1, 100).unwrap();
        assert!(find_reflections(&g).is_empty());
    }

    #[test]
    fn transpositions() {
        let g = Group::symmetric(3);
        let r = find_reflections(&g);
        assert_eq!(r.len(), 3);
        assert!(r.iter().all(|x| x.class == 0));
        let t12 = r.iter().find(|x| x.alpha_vee[2].is_zero()).unwrap();
        let v = |a: &[i64]| a.iter().map(|&x| CycNum::from_int(x)).collect::<Vec<_>>();
        assert_eq!(t12.alpha_vee, v(&[1, -1, 0]));
        assert_eq!(t12.alpha, v(&[1, -1, 0]));
        for x in &r {
            assert_eq!(dot(&x.alpha, &x.alpha_vee), CycNum::from_int(2));
        }
    }

    #[test]
    fn cyclic_three_has_two_classes() {
        let r = find_reflections(&Group::cyclic(3));
        assert_eq!(r.len(), 2);
        assert_eq!(num_classes(&r), 2);
        for x in &r {
            assert!(x.lambda.mul(&x.lambda_vee).is_one());
        }
    }

    #[test]
    fn normalization_is_scale_free() {
        let v = |a: &[i64]| a.iter().map(|&x| CycNum::from_int(x)).collect::<Vec<_>>();
        let (a1, v1) = normalize_root_coroot(&v(&[1, -1]), &v(&[1, -1])).unwrap();
        let (a2, v2) = normalize_root_coroot(&v(&[-3, 3]), &v(&[5, -5])).unwrap();
        assert_eq!((a1, v1), (a2, v2));
    }

    #[test]
    fn centralizer_dimensions() {
        let trivial = Group::enumerate(&[Matrix::identity(2)], 2, 1, 10).unwrap();
        assert_eq!(centralizer_lie_basis(&trivial).len(), 4);
        let d2 = Group::enumerate(&[m(&[&[-1, 0], &[0, 1]])], 2, 1, 10).unwrap();
        assert_eq!(centralizer_lie_basis(&d2).len(), 2);
        let d3 = Group::enumerate(&[m(&[&[-1, 0, 0], &[0, 1, 0], &[0, 0, 1]])], 3, 1, 10).unwrap();
        let basis = centralizer_lie_basis(&d3);
        assert_eq!(basis.len(), 5);
        assert!(basis.iter().all(|a| in_centralizer(&d3, a)));
    }
}
