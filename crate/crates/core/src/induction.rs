//! Turull and Puig induction for finite dimensional algebras.
//!
//! Groups are matrix groups enumerated by [`Group`]; a subgroup is a sorted
//! list of element indices. Left cosets `gH` and right cosets `Hg` are
//! represented by their smallest element index unless asked otherwise.

use std::collections::BTreeMap;
use std::sync::Arc;

use rand::Rng as _;
use serde::Serialize;

use crate::error::{ForgeError, Result};
use crate::groups::Group;
use crate::sampling::{small_int, TestRng};
use crate::scalars::ring::{determinant, kernel, rank};
use crate::scalars::{CycNum, Ring};

pub type Vector = Vec<CycNum>;

/// Image of every basis vector under a group element.
pub type ActionMatrix = Vec<Vector>;

/// Finite dimensional associative unital algebra by sparse structure
/// constants, with optional group action and interior structure.
#[derive(Clone, Debug)]
pub struct FinAlgebra {
    pub names: Vec<String>,
    /// `table[i][j]`: `e_i e_j` as sparse coordinates.
    table: Vec<Vec<Vec<(usize, CycNum)>>>,
    pub unit: Vector,
    /// Group element index -> action.
    pub action: Option<BTreeMap<usize, ActionMatrix>>,
    /// Group element index -> image of the group element.
    pub interior: Option<BTreeMap<usize, Vector>>,
}

fn sparse(v: &Vector) -> Vec<(usize, CycNum)> {
    v.iter().enumerate().filter(|(_, c)| !c.is_zero()).map(|(i, c)| (i, c.clone())).collect()
}

fn axpy(acc: &mut Vector, c: &CycNum, v: &Vector) {
    if c.is_zero() {
        return;
    }
    for (a, b) in acc.iter_mut().zip(v) {
        if !b.is_zero() {
            *a = a.add(&c.mul(b));
        }
    }
}

pub fn zeros(d: usize) -> Vector {
    vec![CycNum::zero(); d]
}

pub fn basis_vector(d: usize, i: usize) -> Vector {
    let mut v = zeros(d);
    v[i] = CycNum::one();
    v
}

impl FinAlgebra {
    /// Build from a product on basis indices.
    pub fn from_fn(names: Vec<String>, unit: Vector, prod: impl Fn(usize, usize) -> Vector) -> Self {
        let d = names.len();
        let table = (0..d).map(|i| (0..d).map(|j| sparse(&prod(i, j))).collect()).collect();
        FinAlgebra { names, table, unit, action: None, interior: None }
    }

    pub fn dim(&self) -> usize {
        self.names.len()
    }

    pub fn basis(&self, i: usize) -> Vector {
        basis_vector(self.dim(), i)
    }

    pub fn mul(&self, a: &Vector, b: &Vector) -> Vector {
        let d = self.dim();
        let mut out = zeros(d);
        for (i, ai) in a.iter().enumerate() {
            if ai.is_zero() {
                continue;
            }
            for (j, bj) in b.iter().enumerate() {
                if bj.is_zero() {
                    continue;
                }
                let c = ai.mul(bj);
                for (k, v) in &self.table[i][j] {
                    out[*k] = out[*k].add(&c.mul(v));
                }
            }
        }
        out
    }

    pub fn act(&self, g: usize, v: &Vector) -> Result<Vector> {
        let m = self
            .action
            .as_ref()
            .and_then(|a| a.get(&g))
            .ok_or_else(|| ForgeError::Invalid(format!("no action of group element {g}")))?;
        let mut out = zeros(self.dim());
        for (i, c) in v.iter().enumerate() {
            axpy(&mut out, c, &m[i]);
        }
        Ok(out)
    }

    pub fn interior_image(&self, g: usize) -> Result<&Vector> {
        self.interior
            .as_ref()
            .and_then(|m| m.get(&g))
            .ok_or_else(|| ForgeError::Invalid(format!("no interior image of group element {g}")))
    }

    /// `C[x]/(x^n)`.
    pub fn truncated_polynomials(n: usize) -> Self {
        let names = (0..n).map(|i| if i == 0 { "1".into() } else { format!("x^{i}") }).collect();
        Self::from_fn(names, basis_vector(n, 0), |i, j| if i + j < n { basis_vector(n, i + j) } else { zeros(n) })
    }

    /// `C`.
    pub fn scalars() -> Self {
        Self::truncated_polynomials(1)
    }

    /// `x -> det(h) x` for h in the subgroup; the trivial action on `C`.
    pub fn with_determinant_action(mut self, g: &Group, h: &[usize]) -> Self {
        let d = self.dim();
        let mut action = BTreeMap::new();
        for &e in h {
            let chi = determinant(g.element(e).rows());
            let m = (0..d).map(|i| {
                let mut v = zeros(d);
                v[i] = chi.pow(i as u32);
                v
            });
            action.insert(e, m.collect());
        }
        self.action = Some(action);
        self
    }

    /// Interior structure through the trivial character.
    pub fn with_trivial_interior(mut self, h: &[usize]) -> Self {
        self.interior = Some(h.iter().map(|&e| (e, self.unit.clone())).collect());
        self
    }

    /// `e_i e_j` for all basis pairs is associative.
    pub fn associativity_residual(&self, a: &Vector, b: &Vector, c: &Vector) -> Vector {
        let l = self.mul(&self.mul(a, b), c);
        let r = self.mul(a, &self.mul(b, c));
        l.iter().zip(&r).map(|(x, y)| x.sub(y)).collect()
    }

    /// Checks that the action is by algebra automorphisms and the interior map
    /// is multiplicative, on basis elements.
    pub fn structure_residuals(&self, g: &Group) -> Vec<String> {
        let d = self.dim();
        let mut out = Vec::new();
        if let Some(action) = &self.action {
            for &e in action.keys() {
                for i in 0..d {
                    for j in 0..d {
                        let (bi, bj) = (self.basis(i), self.basis(j));
                        let lhs = self.act(e, &self.mul(&bi, &bj)).unwrap();
                        let rhs = self.mul(&self.act(e, &bi).unwrap(), &self.act(e, &bj).unwrap());
                        if lhs != rhs {
                            out.push(format!("action of {e} on {}*{}", self.names[i], self.names[j]));
                        }
                    }
                }
            }
        }
        if let Some(int) = &self.interior {
            for (&a, va) in int {
                for (&b, vb) in int {
                    let ab = g.mul(a, b);
                    match int.get(&ab) {
                        Some(v) if *v == self.mul(va, vb) => {}
                        _ => out.push(format!("interior image of {a}*{b}")),
                    }
                }
            }
        }
        out
    }

    pub fn random_element(&self, rng: &mut TestRng, nonzero: usize) -> Vector {
        let d = self.dim();
        let mut v = zeros(d);
        for _ in 0..nonzero.max(1) {
            let i = rng.gen_range(0..d);
            v[i] = v[i].add(&CycNum::from_int(small_int(rng, 3)));
        }
        v
    }

    /// Left multiplication by `a` has a nontrivial kernel.
    pub fn is_zero_divisor(&self, a: &Vector) -> bool {
        let d = self.dim();
        let cols: Vec<Vector> = (0..d).map(|j| self.mul(a, &self.basis(j))).collect();
        let m: Vec<Vec<CycNum>> = (0..d).map(|i| (0..d).map(|j| cols[j][i].clone()).collect()).collect();
        !kernel(&m, d).is_empty()
    }
}

/// Subgroup generated by the given elements.
pub fn subgroup_generated(g: &Group, gens: &[usize]) -> Vec<usize> {
    let mut seen = vec![false; g.order()];
    seen[g.identity()] = true;
    let mut stack = vec![g.identity()];
    while let Some(x) = stack.pop() {
        for &s in gens {
            let y = g.mul(x, s);
            if !seen[y] {
                seen[y] = true;
                stack.push(y);
            }
        }
    }
    (0..g.order()).filter(|&i| seen[i]).collect()
}

/// Standard embeddings: `S_k` in `S_n` on the first k letters, `Z_k` in
/// `Z_n` for `k | n`, and `G` in itself.
pub fn standard_pair(g_name: &str, h_name: &str) -> Result<(Group, Vec<usize>)> {
    let g = Group::named(g_name).ok_or_else(|| ForgeError::InvalidGroup(format!("unknown group {g_name}")))?;
    let bad = || ForgeError::InvalidGroup(format!("{h_name} is not a standard subgroup of {g_name}"));
    let parse = |s: &str, p: char| s.strip_prefix(p).and_then(|n| n.parse::<usize>().ok());
    let h = if h_name == g_name {
        (0..g.order()).collect()
    } else if h_name == "1" {
        vec![g.identity()]
    } else if let (Some(n), Some(k)) = (parse(g_name, 'S'), parse(h_name, 'S')) {
        if k > n || k == 0 {
            return Err(bad());
        }
        subgroup_generated(&g, &g.generators()[..k - 1])
    } else if let (Some(n), Some(k)) = (parse(g_name, 'Z'), parse(h_name, 'Z')) {
        if k == 0 || n % k != 0 {
            return Err(bad());
        }
        let gen = g.generators()[0];
        let mut p = g.identity();
        for _ in 0..n / k {
            p = g.mul(p, gen);
        }
        subgroup_generated(&g, &[p])
    } else {
        return Err(bad());
    };
    Ok((g, h))
}

/// Which representative of each coset to use.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum RepChoice {
    Smallest,
    Largest,
}

/// Coset bookkeeping for `H <= G`.
#[derive(Clone, Debug)]
pub struct Cosets {
    pub group: Arc<Group>,
    pub h: Vec<usize>,
    in_h: Vec<bool>,
    /// Representatives of left cosets `rH`.
    pub left: Vec<usize>,
    /// `g = left[p] * h`: `(p, h)`.
    left_of: Vec<(usize, usize)>,
    /// Representatives of right cosets `Hr`.
    pub right: Vec<usize>,
    /// `g = h * right[p]`: `(h, p)`.
    right_of: Vec<(usize, usize)>,
}

impl Cosets {
    pub fn new(group: Arc<Group>, h: Vec<usize>, choice: RepChoice) -> Result<Self> {
        let n = group.order();
        let mut in_h = vec![false; n];
        for &x in &h {
            if x >= n {
                return Err(ForgeError::InvalidGroup("subgroup index out of range".into()));
            }
            in_h[x] = true;
        }
        let closed = h.iter().all(|&a| h.iter().all(|&b| in_h[group.mul(a, b)])) && in_h[group.identity()];
        if !closed {
            return Err(ForgeError::InvalidGroup("H is not a subgroup".into()));
        }
        let order: Vec<usize> = match choice {
            RepChoice::Smallest => (0..n).collect(),
            RepChoice::Largest => (0..n).rev().collect(),
        };
        let mut left = Vec::new();
        let mut left_of = vec![(usize::MAX, 0); n];
        let mut right = Vec::new();
        let mut right_of = vec![(0, usize::MAX); n];
        for &g in &order {
            if left_of[g].0 == usize::MAX {
                let p = left.len();
                left.push(g);
                for &x in &h {
                    left_of[group.mul(g, x)] = (p, x);
                }
            }
            if right_of[g].1 == usize::MAX {
                let p = right.len();
                right.push(g);
                for &x in &h {
                    right_of[group.mul(x, g)] = (x, p);
                }
            }
        }
        Ok(Cosets { group, h, in_h, left, left_of, right, right_of })
    }

    pub fn index(&self) -> usize {
        self.left.len()
    }

    pub fn in_h(&self, g: usize) -> bool {
        self.in_h[g]
    }
}

/// `CG ⊗_{CH} A` with basis `(left rep, a_i)`.
pub struct TurullInduced {
    pub cosets: Cosets,
    pub base: FinAlgebra,
    pub algebra: FinAlgebra,
}

/// `g ⊗ a` in Turull coordinates.
fn turull_vector(c: &Cosets, base: &FinAlgebra, g: usize, a: &Vector) -> Result<Vector> {
    let d = base.dim();
    let (p, h) = c.left_of[g];
    let ha = base.act(h, a)?;
    let mut out = zeros(c.index() * d);
    out[p * d..(p + 1) * d].clone_from_slice(&ha);
    Ok(out)
}

pub fn turull_induce(base: &FinAlgebra, group: Arc<Group>, h: Vec<usize>, choice: RepChoice) -> Result<TurullInduced> {
    if base.action.is_none() {
        return Err(ForgeError::Invalid("Turull induction needs an H-action".into()));
    }
    let cosets = Cosets::new(group.clone(), h, choice)?;
    let d = base.dim();
    let k = cosets.index();
    let names = (0..k * d).map(|i| format!("g{}⊗{}", cosets.left[i / d], base.names[i % d])).collect();
    let mut unit = zeros(k * d);
    for p in 0..k {
        unit[p * d..(p + 1) * d].clone_from_slice(&base.unit);
    }
    // (r1 ⊗ a1)(r2 ⊗ a2) = delta_{r1 r2} r1 ⊗ a1 a2
    let mut algebra = FinAlgebra::from_fn(names, unit, |i, j| {
        let (p1, i1) = (i / d, i % d);
        let (p2, j2) = (j / d, j % d);
        let mut out = zeros(k * d);
        if p1 == p2 {
            let prod = base.mul(&base.basis(i1), &base.basis(j2));
            out[p1 * d..(p1 + 1) * d].clone_from_slice(&prod);
        }
        out
    });
    // g (r ⊗ a) = (g r) ⊗ a
    let mut action = BTreeMap::new();
    for g in 0..group.order() {
        let m = (0..k * d)
            .map(|i| turull_vector(&cosets, base, group.mul(g, cosets.left[i / d]), &base.basis(i % d)))
            .collect::<Result<Vec<_>>>()?;
        action.insert(g, m);
    }
    algebra.action = Some(action);
    Ok(TurullInduced { cosets, base: base.clone(), algebra })
}

impl TurullInduced {
    pub fn element(&self, g: usize, a: &Vector) -> Result<Vector> {
        turull_vector(&self.cosets, &self.base, g, a)
    }
}

/// `CG ⊗_{CH} A ⊗_{CH} CG` with basis `(left rep, a_i, right rep)`.
pub struct PuigInduced {
    pub cosets: Cosets,
    pub base: FinAlgebra,
    pub algebra: FinAlgebra,
}

fn puig_vector(c: &Cosets, base: &FinAlgebra, g: usize, a: &Vector, g2: usize) -> Result<Vector> {
    let d = base.dim();
    let k = c.index();
    let (p, h) = c.left_of[g];
    let (h2, q) = c.right_of[g2];
    // g ⊗ a ⊗ g2 = r ⊗ h a h2 ⊗ r'
    let mid = base.mul(&base.mul(base.interior_image(h)?, a), base.interior_image(h2)?);
    let mut out = zeros(k * k * d);
    let off = (p * k + q) * d;
    out[off..off + d].clone_from_slice(&mid);
    Ok(out)
}

pub fn puig_induce(base: &FinAlgebra, group: Arc<Group>, h: Vec<usize>, choice: RepChoice) -> Result<PuigInduced> {
    if base.interior.is_none() {
        return Err(ForgeError::Invalid("Puig induction needs an interior structure".into()));
    }
    let cosets = Cosets::new(group.clone(), h, choice)?;
    let d = base.dim();
    let k = cosets.index();
    let split = |i: usize| (i / (k * d), (i / d) % k, i % d);
    let names = (0..k * k * d)
        .map(|i| {
            let (p, q, a) = split(i);
            format!("g{}⊗{}⊗g{}", cosets.left[p], base.names[a], cosets.right[q])
        })
        .collect();
    let mut unit = zeros(k * k * d);
    for &r in &cosets.left {
        let v = puig_vector(&cosets, base, r, &base.unit, group.inv(r))?;
        unit.iter_mut().zip(&v).for_each(|(u, x)| *u = u.add(x));
    }
    // (r1 ⊗ a1 ⊗ r1')(r2 ⊗ a2 ⊗ r2') = r1 ⊗ a1 (r1' r2) a2 ⊗ r2' if r1' r2 in H
    let table: Vec<Vec<Vector>> = (0..k * k * d)
        .map(|i| {
            (0..k * k * d)
                .map(|j| {
                    let (p1, q1, a1) = split(i);
                    let (p2, q2, a2) = split(j);
                    let mid = group.mul(cosets.right[q1], cosets.left[p2]);
                    let mut out = zeros(k * k * d);
                    if cosets.in_h(mid) {
                        let img = base.interior_image(mid).expect("checked interior");
                        let prod = base.mul(&base.mul(&base.basis(a1), img), &base.basis(a2));
                        let off = (p1 * k + q2) * d;
                        out[off..off + d].clone_from_slice(&prod);
                    }
                    out
                })
                .collect()
        })
        .collect();
    let mut algebra = FinAlgebra::from_fn(names, unit, |i, j| table[i][j].clone());
    // g -> sum_r g r ⊗ 1 ⊗ r^{-1}
    let mut interior = BTreeMap::new();
    for g in 0..group.order() {
        let mut v = zeros(k * k * d);
        for &r in &cosets.left {
            let w = puig_vector(&cosets, base, group.mul(g, r), &base.unit, group.inv(r))?;
            v.iter_mut().zip(&w).for_each(|(u, x)| *u = u.add(x));
        }
        interior.insert(g, v);
    }
    algebra.interior = Some(interior);
    Ok(PuigInduced { cosets, base: base.clone(), algebra })
}

impl PuigInduced {
    pub fn element(&self, g: usize, a: &Vector, g2: usize) -> Result<Vector> {
        puig_vector(&self.cosets, &self.base, g, a, g2)
    }
}

/// `B ⋊ K` for an algebra with an action of the listed group elements;
/// basis `b_i ⊗ k`, product `(a⊗g)(b⊗h) = a g(b) ⊗ gh`. Interior map
/// `g -> 1 ⊗ g`.
pub fn smash_product(b: &FinAlgebra, group: &Group, elems: &[usize]) -> Result<FinAlgebra> {
    let action = b.action.as_ref().ok_or_else(|| ForgeError::Invalid("smash product needs an action".into()))?;
    let d = b.dim();
    let n = elems.len();
    let pos: BTreeMap<usize, usize> = elems.iter().enumerate().map(|(i, &g)| (g, i)).collect();
    if elems.iter().any(|g| !action.contains_key(g)) {
        return Err(ForgeError::Invalid("action missing for some group element".into()));
    }
    let names = (0..d * n).map(|i| format!("{}⊗g{}", b.names[i / n], elems[i % n])).collect();
    let mut unit = zeros(d * n);
    let e = pos[&group.identity()];
    for i in 0..d {
        unit[i * n + e] = b.unit[i].clone();
    }
    let mut alg = FinAlgebra::from_fn(names, unit, |i, j| {
        let (bi, gi) = (i / n, elems[i % n]);
        let (bj, gj) = (j / n, elems[j % n]);
        let prod = b.mul(&b.basis(bi), &b.act(gi, &b.basis(bj)).expect("action"));
        let gg = pos[&group.mul(gi, gj)];
        let mut out = zeros(d * n);
        for (k, c) in prod.into_iter().enumerate() {
            out[k * n + gg] = c;
        }
        out
    });
    let mut interior = BTreeMap::new();
    for (p, &g) in elems.iter().enumerate() {
        let mut v = zeros(d * n);
        for i in 0..d {
            v[i * n + p] = b.unit[i].clone();
        }
        interior.insert(g, v);
    }
    alg.interior = Some(interior);
    Ok(alg)
}

#[derive(Clone, Debug, Serialize, PartialEq, Eq)]
pub struct SmashIsoReport {
    pub puig_dim: usize,
    pub smash_dim: usize,
    pub rank: usize,
    pub unit_preserved: bool,
    pub basis_pairs_checked: usize,
    pub random_pairs_checked: usize,
    pub failures: Vec<String>,
}

impl SmashIsoReport {
    pub fn passed(&self) -> bool {
        self.puig_dim == self.smash_dim && self.rank == self.puig_dim && self.unit_preserved && self.failures.is_empty()
    }
}

/// Compares `Ind^{Puig}(A ⋊ H)` with `Ind^{Turull}(A) ⋊ G` through
/// `g ⊗ (a h) ⊗ g' -> (g ⊗ a) ⋊ (g h g')`.
pub fn verify_smash_iso(a: &FinAlgebra, group: Arc<Group>, h: Vec<usize>, rng: &mut TestRng, pairs: usize) -> Result<SmashIsoReport> {
    let ah = smash_product(a, &group, &h)?;
    let puig = puig_induce(&ah, group.clone(), h.clone(), RepChoice::Smallest)?;
    let tur = turull_induce(a, group.clone(), h.clone(), RepChoice::Smallest)?;
    let all: Vec<usize> = (0..group.order()).collect();
    let target = smash_product(&tur.algebra, &group, &all)?;
    let d = a.dim();
    let nh = h.len();
    let n = group.order();
    let k = puig.cosets.index();
    let pd = puig.algebra.dim();
    let td = target.dim();
    // images of the Puig basis
    let mut images: Vec<Vector> = Vec::with_capacity(pd);
    for i in 0..pd {
        let (p, q, rest) = (i / (k * d * nh), (i / (d * nh)) % k, i % (d * nh));
        let (ai, hi) = (rest / nh, h[rest % nh]);
        let (r, r2) = (puig.cosets.left[p], puig.cosets.right[q]);
        let tv = tur.element(r, &a.basis(ai))?;
        let g = group.mul(group.mul(r, hi), r2);
        let mut out = zeros(td);
        for (j, c) in tv.into_iter().enumerate() {
            out[j * n + g] = c;
        }
        images.push(out);
    }
    let map = |v: &Vector| -> Vector {
        let mut out = zeros(td);
        for (i, c) in v.iter().enumerate() {
            axpy(&mut out, c, &images[i]);
        }
        out
    };
    let mut failures = Vec::new();
    let mut check = |x: &Vector, y: &Vector, label: String| {
        if map(&puig.algebra.mul(x, y)) != target.mul(&map(x), &map(y)) {
            failures.push(label);
        }
    };
    let basis_pairs = if pd <= 64 { pd * pd } else { 0 };
    if basis_pairs > 0 {
        for i in 0..pd {
            for j in 0..pd {
                check(&puig.algebra.basis(i), &puig.algebra.basis(j), format!("{} * {}", puig.algebra.names[i], puig.algebra.names[j]));
            }
        }
    }
    for t in 0..pairs {
        let x = puig.algebra.random_element(rng, 4);
        let y = puig.algebra.random_element(rng, 4);
        check(&x, &y, format!("random pair {t}"));
    }
    let m: Vec<Vec<CycNum>> = images.clone();
    Ok(SmashIsoReport {
        puig_dim: pd,
        smash_dim: td,
        rank: rank(&m),
        unit_preserved: map(&puig.algebra.unit) == target.unit,
        basis_pairs_checked: basis_pairs,
        random_pairs_checked: pairs,
        failures,
    })
}

/// Identification of the Turull algebras built from two representative
/// choices: bijective and multiplicative.
pub fn turull_rep_independence(base: &FinAlgebra, group: Arc<Group>, h: Vec<usize>) -> Result<bool> {
    let t1 = turull_induce(base, group.clone(), h.clone(), RepChoice::Smallest)?;
    let t2 = turull_induce(base, group, h, RepChoice::Largest)?;
    let d = base.dim();
    let images: Vec<Vector> = (0..t1.algebra.dim())
        .map(|i| t2.element(t1.cosets.left[i / d], &base.basis(i % d)))
        .collect::<Result<_>>()?;
    linear_iso_check(&t1.algebra, &t2.algebra, &images)
}

/// Same for Puig induction.
pub fn puig_rep_independence(base: &FinAlgebra, group: Arc<Group>, h: Vec<usize>) -> Result<bool> {
    let p1 = puig_induce(base, group.clone(), h.clone(), RepChoice::Smallest)?;
    let p2 = puig_induce(base, group, h, RepChoice::Largest)?;
    let d = base.dim();
    let k = p1.cosets.index();
    let images: Vec<Vector> = (0..p1.algebra.dim())
        .map(|i| {
            let (p, q, a) = (i / (k * d), (i / d) % k, i % d);
            p2.element(p1.cosets.left[p], &base.basis(a), p1.cosets.right[q])
        })
        .collect::<Result<_>>()?;
    linear_iso_check(&p1.algebra, &p2.algebra, &images)
}

fn linear_iso_check(src: &FinAlgebra, dst: &FinAlgebra, images: &[Vector]) -> Result<bool> {
    let map = |v: &Vector| {
        let mut out = zeros(dst.dim());
        for (i, c) in v.iter().enumerate() {
            axpy(&mut out, c, &images[i]);
        }
        out
    };
    let n = src.dim();
    for i in 0..n {
        for j in 0..n {
            let (a, b) = (src.basis(i), src.basis(j));
            if map(&src.mul(&a, &b)) != dst.mul(&images[i], &images[j]) {
                return Ok(false);
            }
        }
    }
    Ok(rank(images) == n && dst.dim() == n && map(&src.unit) == dst.unit)
}

/// Parse `C` or `C[x]/(x^n)`.
pub fn parse_algebra(spec: &str) -> Result<FinAlgebra> {
    let s: String = spec.chars().filter(|c| !c.is_whitespace()).collect();
    if s == "C" {
        return Ok(FinAlgebra::scalars());
    }
    let n = s
        .strip_prefix("C[x]/(x^")
        .and_then(|r| r.strip_suffix(')'))
        .and_then(|r| r.parse::<usize>().ok())
        .filter(|&n| n >= 1)
        .ok_or_else(|| ForgeError::Parse(format!("unsupported algebra '{spec}', expected C or C[x]/(x^n)")))?;
    Ok(FinAlgebra::truncated_polynomials(n))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::sampling::rng;

    fn pair(g: &str, h: &str) -> (Arc<Group>, Vec<usize>) {
        let (g, h) = standard_pair(g, h).unwrap();
        (Arc::new(g), h)
    }

    #[test]
    fn standard_subgroups() {
        assert_eq!(pair("S3", "S2").1.len(), 2);
        assert_eq!(pair("Z4", "Z2").1.len(), 2);
        assert_eq!(pair("S3", "S3").1.len(), 6);
        assert!(standard_pair("Z4", "Z3").is_err());
    }

    #[test]
    fn turull_of_scalars_is_diagonal() {
        let (g, h) = pair("S3", "S2");
        let a = FinAlgebra::scalars().with_determinant_action(&g, &h);
        let t = turull_induce(&a, g, h, RepChoice::Smallest).unwrap();
        assert_eq!(t.algebra.dim(), 3);
        for i in 0..3 {
            for j in 0..3 {
                let p = t.algebra.mul(&t.algebra.basis(i), &t.algebra.basis(j));
                let want = if i == j { t.algebra.basis(i) } else { zeros(3) };
                assert_eq!(p, want);
            }
        }
    }

    #[test]
    fn same_group_gives_back_the_algebra() {
        let (g, h) = pair("Z4", "Z4");
        let a = FinAlgebra::truncated_polynomials(3).with_determinant_action(&g, &h).with_trivial_interior(&h);
        let t = turull_induce(&a, g.clone(), h.clone(), RepChoice::Smallest).unwrap();
        assert_eq!(t.algebra.dim(), 3);
        let p = puig_induce(&a, g, h, RepChoice::Smallest).unwrap();
        assert_eq!(p.algebra.dim(), 3);
        for i in 0..3 {
            for j in 0..3 {
                assert_eq!(p.algebra.mul(&p.algebra.basis(i), &p.algebra.basis(j)), a.mul(&a.basis(i), &a.basis(j)));
            }
        }
    }

    #[test]
    fn puig_of_scalars_has_zero_divisors() {
        let (g, h) = pair("S3", "S2");
        let a = FinAlgebra::scalars().with_trivial_interior(&h);
        let p = puig_induce(&a, g.clone(), h, RepChoice::Smallest).unwrap();
        assert_eq!(p.algebra.dim(), 9);
        for i in 0..9 {
            assert!(p.algebra.is_zero_divisor(&p.algebra.basis(i)));
        }
        assert!(p.algebra.structure_residuals(&g).is_empty());
        let u = p.algebra.unit.clone();
        assert_eq!(p.algebra.mul(&u, &p.algebra.basis(4)), p.algebra.basis(4));
    }

    #[test]
    fn induced_products_are_associative() {
        let mut r = rng(2);
        for (gn, hn) in [("S3", "S2"), ("Z4", "Z2")] {
            let (g, h) = pair(gn, hn);
            let a = FinAlgebra::truncated_polynomials(3).with_determinant_action(&g, &h);
            assert!(a.structure_residuals(&g).is_empty());
            let ah = smash_product(&a, &g, &h).unwrap();
            let p = puig_induce(&ah, g.clone(), h.clone(), RepChoice::Smallest).unwrap();
            let t = turull_induce(&a, g.clone(), h, RepChoice::Smallest).unwrap();
            assert!(t.algebra.structure_residuals(&g).is_empty());
            assert!(p.algebra.structure_residuals(&g).is_empty());
            for _ in 0..20 {
                let (x, y, z) = (p.algebra.random_element(&mut r, 3), p.algebra.random_element(&mut r, 3), p.algebra.random_element(&mut r, 3));
                assert!(p.algebra.associativity_residual(&x, &y, &z).iter().all(CycNum::is_zero));
            }
        }
    }

    #[test]
    fn smash_iso_small() {
        let mut r = rng(7);
        for (gn, hn) in [("S3", "S2"), ("Z4", "Z2"), ("S3", "S3"), ("S3", "1")] {
            let (g, h) = pair(gn, hn);
            let a = FinAlgebra::scalars().with_determinant_action(&g, &h);
            let rep = verify_smash_iso(&a, g, h, &mut r, 5).unwrap();
            assert!(rep.passed(), "{gn}/{hn}: {rep:?}");
        }
    }

    #[test]
    fn representative_choice_does_not_matter() {
        let (g, h) = pair("S3", "S2");
        let a = FinAlgebra::truncated_polynomials(3).with_determinant_action(&g, &h);
        assert!(turull_rep_independence(&a, g.clone(), h.clone()).unwrap());
        let ah = smash_product(&a, &g, &h).unwrap();
        assert!(puig_rep_independence(&ah, g, h).unwrap());
    }

    #[test]
    fn parse_specs() {
        assert_eq!(parse_algebra("C[x]/(x^3)").unwrap().dim(), 3);
        assert_eq!(parse_algebra("C").unwrap().dim(), 1);
        assert!(parse_algebra("C[x]").is_err());
    }
}
