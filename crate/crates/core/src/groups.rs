//! Finite groups stored by their full multiplication table, together with
//! subgroups, left coset spaces and double cosets.
//!
//! Permutations compose right to left: `(στ)(i) = σ(τ(i))`, so
//! `(12)(23) = (123)`.

use std::collections::{BTreeSet, HashMap, VecDeque};
use std::fmt;
use std::sync::Arc;

use crate::error::{Error, Result};

/// Largest group order accepted by any constructor.
pub const MAX_ORDER: usize = 1024;

pub type GroupRef = Arc<FiniteGroup>;

#[derive(Clone, PartialEq, Eq)]
pub struct FiniteGroup {
    order: usize,
    table: Vec<usize>,
    inverses: Vec<usize>,
    names: Option<Vec<String>>,
    /// Images `0..degree` (zero-based) when the group is a permutation group.
    perms: Option<Vec<Vec<usize>>>,
    /// `(base order, factor count)` for groups built by [`FiniteGroup::power`].
    power_shape: Option<(usize, usize)>,
}

impl fmt::Debug for FiniteGroup {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "FiniteGroup(order {})", self.order)
    }
}

/// `N ⋊ K` with its structure maps.
#[derive(Clone, Debug)]
pub struct SemidirectProduct {
    pub group: GroupRef,
    pub embed_normal: Vec<usize>,
    pub embed_complement: Vec<usize>,
    pub projection: Vec<usize>,
}

impl SemidirectProduct {
    /// Index of the pair `(n, k)`.
    pub fn pair(&self, n: usize, k: usize) -> usize {
        self.group.mul(self.embed_normal[n], self.embed_complement[k])
    }
}

impl FiniteGroup {
    /// Builds a group from a raw table, checking every group axiom.
    pub fn from_table(rows: Vec<Vec<usize>>) -> Result<Self> {
        let n = rows.len();
        if n == 0 {
            return Err(Error::InvalidGroup("empty table".into()));
        }
        if n > MAX_ORDER {
            return Err(Error::GroupTooLarge(n));
        }
        for (i, r) in rows.iter().enumerate() {
            if r.len() != n {
                return Err(Error::InvalidGroup(format!("row {i} has length {}", r.len())));
            }
            if let Some(&x) = r.iter().find(|&&x| x >= n) {
                return Err(Error::InvalidGroup(format!("entry {x} out of range in row {i}")));
            }
        }
        for (i, row) in rows.iter().enumerate() {
            if rows[0][i] != i || row[0] != i {
                return Err(Error::InvalidGroup("element 0 is not a two-sided identity".into()));
            }
        }
        let table: Vec<usize> = rows.into_iter().flatten().collect();
        let mut inverses = vec![usize::MAX; n];
        for a in 0..n {
            match (0..n).find(|&b| table[a * n + b] == 0) {
                Some(b) if table[b * n + a] == 0 => inverses[a] = b,
                _ => return Err(Error::InvalidGroup(format!("element {a} has no inverse"))),
            }
        }
        for a in 0..n {
            for b in 0..n {
                let ab = table[a * n + b];
                for c in 0..n {
                    if table[ab * n + c] != table[a * n + table[b * n + c]] {
                        return Err(Error::InvalidGroup(format!(
                            "not associative at ({a}, {b}, {c})"
                        )));
                    }
                }
            }
        }
        Ok(FiniteGroup {
            order: n,
            table,
            inverses,
            names: None,
            perms: None,
            power_shape: None,
        })
    }

    fn from_mul(n: usize, mul: impl Fn(usize, usize) -> usize) -> Self {
        let mut table = vec![0; n * n];
        for a in 0..n {
            for b in 0..n {
                table[a * n + b] = mul(a, b);
            }
        }
        let mut inverses = vec![0; n];
        for a in 0..n {
            inverses[a] = (0..n).find(|&b| table[a * n + b] == 0).expect("group has inverses");
        }
        FiniteGroup {
            order: n,
            table,
            inverses,
            names: None,
            perms: None,
            power_shape: None,
        }
    }

    /// Closure of the given permutations of `0..degree`.
    pub fn permutation_group(degree: usize, generators: &[Vec<usize>]) -> Result<Self> {
        for g in generators {
            let mut seen = g.clone();
            seen.sort_unstable();
            if g.len() != degree || seen != (0..degree).collect::<Vec<_>>() {
                return Err(Error::InvalidGroup(format!("{g:?} is not a permutation of degree {degree}")));
            }
        }
        let id: Vec<usize> = (0..degree).collect();
        let mut seen: BTreeSet<Vec<usize>> = BTreeSet::from([id.clone()]);
        let mut queue = VecDeque::from([id]);
        while let Some(p) = queue.pop_front() {
            for g in generators {
                let q = compose(g, &p);
                if seen.insert(q.clone()) {
                    if seen.len() > MAX_ORDER {
                        return Err(Error::GroupTooLarge(seen.len()));
                    }
                    queue.push_back(q);
                }
            }
        }
        let mut perms: Vec<Vec<usize>> = seen.into_iter().collect();
        perms.sort_by_cached_key(|p| perm_sort_key(p));
        let index: HashMap<&[usize], usize> =
            perms.iter().enumerate().map(|(i, p)| (p.as_slice(), i)).collect();
        let mut g = FiniteGroup::from_mul(perms.len(), |a, b| index[compose(&perms[a], &perms[b]).as_slice()]);
        g.names = Some(perms.iter().map(|p| cycle_notation(p)).collect());
        g.perms = Some(perms);
        Ok(g)
    }

    pub fn symmetric(n: usize) -> Result<Self> {
        let mut gens = Vec::new();
        if n >= 2 {
            let mut swap: Vec<usize> = (0..n).collect();
            swap.swap(0, 1);
            gens.push(swap);
            gens.push((0..n).map(|i| (i + 1) % n).collect());
        }
        FiniteGroup::permutation_group(n.max(1), &gens)
    }

    pub fn cyclic(n: usize) -> Result<Self> {
        if n == 0 {
            return Err(Error::InvalidGroup("cyclic(0)".into()));
        }
        let gens = if n > 1 { vec![(0..n).map(|i| (i + 1) % n).collect()] } else { vec![] };
        FiniteGroup::permutation_group(n, &gens)
    }

    /// Symmetries of a regular `n`-gon, of order `2n`.
    pub fn dihedral(n: usize) -> Result<Self> {
        if n < 3 {
            return Err(Error::InvalidGroup(format!("dihedral({n}) needs n >= 3")));
        }
        let rotation = (0..n).map(|i| (i + 1) % n).collect();
        let reflection = (0..n).map(|i| (n - i) % n).collect();
        FiniteGroup::permutation_group(n, &[rotation, reflection])
    }

    /// `G1 × G2`, with `(a, b)` at index `a·|G2| + b`.
    pub fn direct_product(g1: &FiniteGroup, g2: &FiniteGroup) -> Result<Self> {
        let (n1, n2) = (g1.order, g2.order);
        if n1 * n2 > MAX_ORDER {
            return Err(Error::GroupTooLarge(n1 * n2));
        }
        let mut g = FiniteGroup::from_mul(n1 * n2, |x, y| {
            g1.mul(x / n2, y / n2) * n2 + g2.mul(x % n2, y % n2)
        });
        g.names = Some(
            (0..n1 * n2)
                .map(|x| format!("{}:{}", g1.name(x / n2), g2.name(x % n2)))
                .collect(),
        );
        Ok(g)
    }

    /// `L^m`; the first factor is the most significant digit of the index.
    pub fn power(base: &FiniteGroup, m: usize) -> Result<Self> {
        if m == 0 {
            return FiniteGroup::cyclic(1);
        }
        let mut g = base.clone();
        g.power_shape = None;
        for _ in 1..m {
            g = FiniteGroup::direct_product(&g, base)?;
        }
        g.power_shape = Some((base.order, m));
        Ok(g)
    }

    /// `N ⋊ K`, where `action[k]` is the automorphism of `N` (as an index
    /// permutation) attached to `k`. Product: `(n,k)(n',k') = (n·θ_k(n'), kk')`.
    pub fn semidirect(n: &FiniteGroup, k: &FiniteGroup, action: &[Vec<usize>]) -> Result<SemidirectProduct> {
        let (nn, nk) = (n.order, k.order);
        if action.len() != nk {
            return Err(Error::InvalidGroup("action must list one automorphism per element".into()));
        }
        for (ki, theta) in action.iter().enumerate() {
            if !n.is_automorphism(theta) {
                return Err(Error::InvalidGroup(format!(
                    "image of {} is not an automorphism",
                    k.name(ki)
                )));
            }
        }
        for a in 0..nk {
            for b in 0..nk {
                let ab = k.mul(a, b);
                if (0..nn).any(|x| action[ab][x] != action[a][action[b][x]]) {
                    return Err(Error::InvalidGroup(format!(
                        "action is not a homomorphism at ({}, {})",
                        k.name(a),
                        k.name(b)
                    )));
                }
            }
        }
        if nn * nk > MAX_ORDER {
            return Err(Error::GroupTooLarge(nn * nk));
        }
        let mut g = FiniteGroup::from_mul(nn * nk, |x, y| {
            let (n1, k1) = (x % nn, x / nn);
            let (n2, k2) = (y % nn, y / nn);
            k.mul(k1, k2) * nn + n.mul(n1, action[k1][n2])
        });
        g.names = Some(
            (0..nn * nk)
                .map(|x| format!("{};{}", n.name(x % nn), k.name(x / nn)))
                .collect(),
        );
        Ok(SemidirectProduct {
            group: Arc::new(g),
            embed_normal: (0..nn).collect(),
            embed_complement: (0..nk).map(|x| x * nn).collect(),
            projection: (0..nn * nk).map(|x| x / nn).collect(),
        })
    }

    pub fn order(&self) -> usize {
        self.order
    }

    pub fn identity(&self) -> usize {
        0
    }

    pub fn elements(&self) -> std::ops::Range<usize> {
        0..self.order
    }

    pub fn mul(&self, a: usize, b: usize) -> usize {
        self.table[a * self.order + b]
    }

    pub fn inv(&self, a: usize) -> usize {
        self.inverses[a]
    }

    /// `s a s⁻¹`.
    pub fn conj(&self, s: usize, a: usize) -> usize {
        self.mul(self.mul(s, a), self.inv(s))
    }

    pub fn element_order(&self, a: usize) -> usize {
        let mut x = a;
        let mut k = 1;
        while x != 0 {
            x = self.mul(x, a);
            k += 1;
        }
        k
    }

    pub fn is_abelian(&self) -> bool {
        self.elements().all(|a| self.elements().all(|b| self.mul(a, b) == self.mul(b, a)))
    }

    pub fn permutation(&self, a: usize) -> Option<&[usize]> {
        self.perms.as_ref().map(|p| p[a].as_slice())
    }

    pub fn degree(&self) -> Option<usize> {
        self.perms.as_ref().map(|p| p[0].len())
    }

    pub fn power_shape(&self) -> Option<(usize, usize)> {
        self.power_shape
    }

    pub fn name(&self, a: usize) -> String {
        match &self.names {
            Some(n) => n[a].clone(),
            None => a.to_string(),
        }
    }

    /// Resolves a printed element: its name, cycle notation for permutation
    /// groups, or a bare index.
    pub fn parse_element(&self, text: &str) -> Result<usize> {
        let s = text.trim();
        if let Some(names) = &self.names {
            let compact: String = s.chars().filter(|c| !c.is_whitespace()).collect();
            if let Some(i) = names
                .iter()
                .position(|n| n.chars().filter(|c| !c.is_whitespace()).collect::<String>() == compact)
            {
                return Ok(i);
            }
        }
        if let (Some(perms), Some(deg)) = (&self.perms, self.degree()) {
            if s == "id" || s == "()" || s.starts_with('(') {
                let p = parse_cycles(s, deg).ok_or_else(|| Error::UnknownElement(text.into()))?;
                return perms.iter().position(|q| *q == p).ok_or_else(|| Error::UnknownElement(text.into()));
            }
        }
        match s.parse::<usize>() {
            Ok(i) if i < self.order => Ok(i),
            _ => Err(Error::UnknownElement(text.into())),
        }
    }

    pub fn is_automorphism(&self, theta: &[usize]) -> bool {
        if theta.len() != self.order {
            return false;
        }
        let mut seen = vec![false; self.order];
        for &x in theta {
            if x >= self.order || seen[x] {
                return false;
            }
            seen[x] = true;
        }
        self.elements()
            .all(|a| self.elements().all(|b| theta[self.mul(a, b)] == self.mul(theta[a], theta[b])))
    }

    /// Automorphisms of `L^m` permuting the factors: `y[σ(i)] = x[i]`,
    /// one per element of the permutation group `k` of degree `m`.
    pub fn permute_factors(&self, k: &FiniteGroup) -> Result<Vec<Vec<usize>>> {
        let (base, m) = self
            .power_shape
            .ok_or_else(|| Error::Shape("permute_factors needs a group of the form L^m".into()))?;
        if k.degree() != Some(m) {
            return Err(Error::Shape(format!("permute_factors needs permutations of degree {m}")));
        }
        let digits = |mut x: usize| {
            let mut d = vec![0; m];
            for i in (0..m).rev() {
                d[i] = x % base;
                x /= base;
            }
            d
        };
        let undigits = |d: &[usize]| d.iter().fold(0, |acc, &v| acc * base + v);
        Ok(k.elements()
            .map(|s| {
                let sigma = k.permutation(s).expect("permutation group");
                self.elements()
                    .map(|x| {
                        let d = digits(x);
                        let mut y = vec![0; m];
                        for i in 0..m {
                            y[sigma[i]] = d[i];
                        }
                        undigits(&y)
                    })
                    .collect()
            })
            .collect())
    }

    /// Conjugation action of `self` on a normal subgroup, expressed on the
    /// indices of `n.as_group()`.
    pub fn conjugation_on(&self, n: &Subgroup) -> Result<Vec<Vec<usize>>> {
        if !n.is_normal() {
            return Err(Error::NotNormal(n.describe()));
        }
        Ok(self
            .elements()
            .map(|g| n.elements().iter().map(|&x| n.position(self.conj(g, x)).expect("normal")).collect())
            .collect())
    }

    /// Some isomorphism `self → other`, as an index map, if one exists.
    pub fn find_isomorphism(&self, other: &FiniteGroup) -> Option<Vec<usize>> {
        if self.order != other.order {
            return None;
        }
        let mut gens = Vec::new();
        let mut span = Subgroup::trivial_in(self);
        for a in self.elements() {
            if !span.contains(a) {
                gens.push(a);
                span = Subgroup::generated_in(self, &gens);
            }
        }
        let mut images = Vec::new();
        self.search_iso(other, &gens, &mut images)
    }

    fn search_iso(&self, other: &FiniteGroup, gens: &[usize], images: &mut Vec<usize>) -> Option<Vec<usize>> {
        if images.len() == gens.len() {
            return self.extend_hom(other, gens, images).filter(|m| {
                let mut seen = vec![false; other.order];
                m.iter().all(|&x| !std::mem::replace(&mut seen[x], true))
            });
        }
        let want = self.element_order(gens[images.len()]);
        for b in other.elements() {
            if other.element_order(b) == want {
                images.push(b);
                if let Some(m) = self.search_iso(other, gens, images) {
                    return Some(m);
                }
                images.pop();
            }
        }
        None
    }

    fn extend_hom(&self, other: &FiniteGroup, gens: &[usize], images: &[usize]) -> Option<Vec<usize>> {
        let mut map = vec![usize::MAX; self.order];
        map[0] = 0;
        let mut queue = VecDeque::from([0]);
        while let Some(x) = queue.pop_front() {
            for (&g, &im) in gens.iter().zip(images) {
                let y = self.mul(x, g);
                let my = other.mul(map[x], im);
                if map[y] == usize::MAX {
                    map[y] = my;
                    queue.push_back(y);
                } else if map[y] != my {
                    return None;
                }
            }
        }
        let hom = self
            .elements()
            .all(|a| self.elements().all(|b| map[self.mul(a, b)] == other.mul(map[a], map[b])));
        hom.then_some(map)
    }
}

/// `G/N` together with the projection `G → G/N`.
pub fn quotient(g: &GroupRef, n: &Subgroup) -> Result<(FiniteGroup, Vec<usize>)> {
    if !n.is_normal() {
        return Err(Error::NotNormal(n.describe()));
    }
    let cs = CosetSpace::new(n.clone());
    let proj: Vec<usize> = g.elements().map(|x| cs.coset_of(x)).collect();
    let reps = cs.reps().to_vec();
    let mut q = FiniteGroup::from_mul(cs.len(), |a, b| proj[g.mul(reps[a], reps[b])]);
    q.names = Some(reps.iter().map(|&r| format!("[{}]", g.name(r))).collect());
    Ok((q, proj))
}

fn compose(a: &[usize], b: &[usize]) -> Vec<usize> {
    b.iter().map(|&i| a[i]).collect()
}

fn perm_sort_key(p: &[usize]) -> (usize, usize, String) {
    let moved: Vec<usize> = (0..p.len()).filter(|&i| p[i] != i).collect();
    let span = match (moved.first(), moved.last()) {
        (Some(a), Some(b)) => b - a,
        _ => 0,
    };
    (moved.len(), span, cycle_notation(p))
}

/// Cycle notation with 1-based points; `id` for the identity.
pub fn cycle_notation(p: &[usize]) -> String {
    let wide = p.len() > 9;
    let mut out = String::new();
    let mut seen = vec![false; p.len()];
    for start in 0..p.len() {
        if seen[start] || p[start] == start {
            continue;
        }
        let mut cycle = Vec::new();
        let mut i = start;
        while !seen[i] {
            seen[i] = true;
            cycle.push((i + 1).to_string());
            i = p[i];
        }
        out.push('(');
        out.push_str(&cycle.join(if wide { " " } else { "" }));
        out.push(')');
    }
    if out.is_empty() {
        "id".into()
    } else {
        out
    }
}

/// Parses a product of cycles, composed right to left.
pub fn parse_cycles(s: &str, degree: usize) -> Option<Vec<usize>> {
    let s = s.trim();
    let mut result: Vec<usize> = (0..degree).collect();
    if s == "id" {
        return Some(result);
    }
    let mut rest = s;
    let mut cycles = Vec::new();
    while !rest.is_empty() {
        let body_end = rest.find(')')?;
        if !rest.starts_with('(') {
            return None;
        }
        let body = &rest[1..body_end];
        let points: Vec<usize> = if body.contains([' ', ',']) {
            body.split([' ', ','])
                .filter(|t| !t.is_empty())
                .map(|t| t.parse().ok())
                .collect::<Option<_>>()?
        } else {
            body.chars().map(|c| c.to_digit(10).map(|d| d as usize)).collect::<Option<_>>()?
        };
        if points.iter().any(|&x| x == 0 || x > degree) {
            return None;
        }
        cycles.push(points);
        rest = rest[body_end + 1..].trim_start();
    }
    for cycle in cycles.iter().rev() {
        let mut c: Vec<usize> = (0..degree).collect();
        for w in 0..cycle.len() {
            c[cycle[w] - 1] = cycle[(w + 1) % cycle.len()] - 1;
        }
        result = compose(&c, &result);
    }
    let mut check = result.clone();
    check.sort_unstable();
    (check == (0..degree).collect::<Vec<_>>()).then_some(result)
}

#[derive(Clone, PartialEq, Eq)]
pub struct Subgroup {
    parent: GroupRef,
    elements: Vec<usize>,
}

impl fmt::Debug for Subgroup {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Subgroup{}", self.describe())
    }
}

impl Subgroup {
    pub fn generated(parent: &GroupRef, gens: &[usize]) -> Result<Self> {
        if let Some(&g) = gens.iter().find(|&&g| g >= parent.order()) {
            return Err(Error::UnknownElement(g.to_string()));
        }
        Ok(Subgroup {
            parent: parent.clone(),
            elements: closure(parent, gens),
        })
    }

    fn generated_in(parent: &FiniteGroup, gens: &[usize]) -> Self {
        Subgroup {
            parent: Arc::new(parent.clone()),
            elements: closure(parent, gens),
        }
    }

    fn trivial_in(parent: &FiniteGroup) -> Self {
        Subgroup::generated_in(parent, &[])
    }

    pub fn trivial(parent: &GroupRef) -> Self {
        Subgroup {
            parent: parent.clone(),
            elements: vec![0],
        }
    }

    pub fn whole(parent: &GroupRef) -> Self {
        Subgroup {
            parent: parent.clone(),
            elements: parent.elements().collect(),
        }
    }

    /// Checks closure of an explicit element set.
    pub fn from_elements(parent: &GroupRef, elements: &[usize]) -> Result<Self> {
        let mut e: Vec<usize> = elements.to_vec();
        e.sort_unstable();
        e.dedup();
        let s = Subgroup {
            parent: parent.clone(),
            elements: e,
        };
        if !s.contains(0) || s.elements.iter().any(|&a| s.elements.iter().any(|&b| !s.contains(parent.mul(a, parent.inv(b))))) {
            return Err(Error::NotASubgroup(format!("{} is not a subgroup", s.describe())));
        }
        Ok(s)
    }

    pub fn parent(&self) -> &GroupRef {
        &self.parent
    }

    pub fn elements(&self) -> &[usize] {
        &self.elements
    }

    pub fn order(&self) -> usize {
        self.elements.len()
    }

    pub fn contains(&self, g: usize) -> bool {
        self.elements.binary_search(&g).is_ok()
    }

    /// Position of `g` in the sorted element list.
    pub fn position(&self, g: usize) -> Option<usize> {
        self.elements.binary_search(&g).ok()
    }

    pub fn is_subset_of(&self, other: &Subgroup) -> bool {
        self.elements.iter().all(|&g| other.contains(g))
    }

    pub fn intersection(&self, other: &Subgroup) -> Subgroup {
        Subgroup {
            parent: self.parent.clone(),
            elements: self.elements.iter().copied().filter(|&g| other.contains(g)).collect(),
        }
    }

    /// `s H s⁻¹`.
    pub fn conjugate(&self, s: usize) -> Subgroup {
        let mut e: Vec<usize> = self.elements.iter().map(|&h| self.parent.conj(s, h)).collect();
        e.sort_unstable();
        Subgroup {
            parent: self.parent.clone(),
            elements: e,
        }
    }

    pub fn is_normal(&self) -> bool {
        self.parent.elements().all(|s| self.conjugate(s) == *self)
    }

    /// The subgroup as a group in its own right, with its embedding.
    pub fn as_group(&self) -> (FiniteGroup, Vec<usize>) {
        let emb = self.elements.clone();
        let p = &self.parent;
        let mut g = FiniteGroup::from_mul(emb.len(), |a, b| self.position(p.mul(emb[a], emb[b])).expect("closed"));
        g.names = Some(emb.iter().map(|&x| p.name(x)).collect());
        if let Some(perms) = &p.perms {
            g.perms = Some(emb.iter().map(|&x| perms[x].clone()).collect());
        }
        (g, emb)
    }

    pub fn describe(&self) -> String {
        let names: Vec<String> = self.elements.iter().map(|&g| self.parent.name(g)).collect();
        format!("{{{}}}", names.join(", "))
    }
}

fn closure(g: &FiniteGroup, gens: &[usize]) -> Vec<usize> {
    let mut seen = vec![false; g.order()];
    seen[0] = true;
    let mut queue = VecDeque::from([0]);
    while let Some(x) = queue.pop_front() {
        for &s in gens {
            let y = g.mul(x, s);
            if !seen[y] {
                seen[y] = true;
                queue.push_back(y);
            }
        }
    }
    (0..g.order()).filter(|&i| seen[i]).collect()
}

/// An `H`-orbit on `G/H`, i.e. a double coset `HgH`.
#[derive(Clone, Debug)]
pub struct DoubleCoset {
    /// Smallest coset index in the orbit.
    pub rep: usize,
    pub cosets: Vec<usize>,
    /// `H ∩ gHg⁻¹` for `g` the representative of `rep`.
    pub stabilizer: Subgroup,
}

/// Left cosets `gH`, ordered by their smallest element.
#[derive(Clone, Debug)]
pub struct CosetSpace {
    subgroup: Subgroup,
    cosets: Vec<Vec<usize>>,
    coset_of: Vec<usize>,
    orbits: Vec<DoubleCoset>,
    orbit_of: Vec<usize>,
    /// `transversal[c]` is the smallest `h ∈ H` with `h · rep(orbit) = c`.
    transversal: Vec<usize>,
}

impl CosetSpace {
    pub fn new(subgroup: Subgroup) -> Self {
        let g = subgroup.parent().clone();
        let mut coset_of = vec![usize::MAX; g.order()];
        let mut cosets = Vec::new();
        for x in g.elements() {
            if coset_of[x] != usize::MAX {
                continue;
            }
            let mut c: Vec<usize> = subgroup.elements().iter().map(|&h| g.mul(x, h)).collect();
            c.sort_unstable();
            for &y in &c {
                coset_of[y] = cosets.len();
            }
            cosets.push(c);
        }
        let reps: Vec<usize> = cosets.iter().map(|c| c[0]).collect();
        let n = cosets.len();
        let mut orbit_of = vec![usize::MAX; n];
        let mut transversal = vec![0; n];
        let mut orbits = Vec::new();
        for c in 0..n {
            if orbit_of[c] != usize::MAX {
                continue;
            }
            let mut members = Vec::new();
            let mut stab = Vec::new();
            for &h in subgroup.elements() {
                let d = coset_of[g.mul(h, reps[c])];
                if d == c {
                    stab.push(h);
                }
                if orbit_of[d] == usize::MAX {
                    orbit_of[d] = orbits.len();
                    transversal[d] = h;
                    members.push(d);
                }
            }
            members.sort_unstable();
            orbits.push(DoubleCoset {
                rep: c,
                cosets: members,
                stabilizer: Subgroup {
                    parent: g.clone(),
                    elements: stab,
                },
            });
        }
        CosetSpace {
            subgroup,
            cosets,
            coset_of,
            orbits,
            orbit_of,
            transversal,
        }
    }

    pub fn group(&self) -> &GroupRef {
        self.subgroup.parent()
    }

    pub fn subgroup(&self) -> &Subgroup {
        &self.subgroup
    }

    pub fn len(&self) -> usize {
        self.cosets.len()
    }

    pub fn is_empty(&self) -> bool {
        self.cosets.is_empty()
    }

    pub fn cosets(&self) -> &[Vec<usize>] {
        &self.cosets
    }

    pub fn rep(&self, c: usize) -> usize {
        self.cosets[c][0]
    }

    pub fn reps(&self) -> Vec<usize> {
        self.cosets.iter().map(|c| c[0]).collect()
    }

    pub fn coset_of(&self, g: usize) -> usize {
        self.coset_of[g]
    }

    /// `g · c`.
    pub fn act(&self, g: usize, c: usize) -> usize {
        self.coset_of[self.group().mul(g, self.rep(c))]
    }

    pub fn orbits(&self) -> &[DoubleCoset] {
        &self.orbits
    }

    pub fn orbit_of(&self, c: usize) -> usize {
        self.orbit_of[c]
    }

    /// Some `h ∈ H` carrying the representative coset of `c`'s orbit to `c`.
    pub fn transversal(&self, c: usize) -> usize {
        self.transversal[c]
    }

    /// Printed form `gH` of a coset via its representative.
    pub fn coset_name(&self, c: usize) -> String {
        let r = self.rep(c);
        if r == 0 {
            "H".into()
        } else {
            format!("{}H", self.group().name(r))
        }
    }

    /// Resolves a coset given by any of its elements.
    pub fn parse_coset(&self, text: &str) -> Result<usize> {
        let t = text.trim();
        let t = t.strip_suffix('H').filter(|s| !s.is_empty()).unwrap_or(t);
        if t == "H" {
            return Ok(0);
        }
        Ok(self.coset_of(self.group().parse_element(t)?))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn s3() -> GroupRef {
        Arc::new(FiniteGroup::symmetric(3).unwrap())
    }

    fn el(g: &FiniteGroup, s: &str) -> usize {
        g.parse_element(s).unwrap()
    }

    #[test]
    fn s3_naming_and_convention() {
        let g = s3();
        let names: Vec<String> = g.elements().map(|i| g.name(i)).collect();
        assert_eq!(names, ["id", "(12)", "(23)", "(13)", "(123)", "(132)"]);
        assert_eq!(g.mul(el(&g, "(12)"), el(&g, "(23)")), el(&g, "(123)"));
        assert_eq!(g.mul(el(&g, "(13)"), el(&g, "(12)")), g.mul(el(&g, "(12)"), el(&g, "(23)")));
        assert_eq!(el(&g, "(1 2)"), 1);
        assert_eq!(el(&g, "(12)(23)"), el(&g, "(123)"));
    }

    #[test]
    fn small_groups() {
        assert_eq!(FiniteGroup::cyclic(1).unwrap().order(), 1);
        assert_eq!(FiniteGroup::dihedral(4).unwrap().order(), 8);
        assert_eq!(FiniteGroup::symmetric(4).unwrap().order(), 24);
        let z2 = FiniteGroup::cyclic(2).unwrap();
        let k = FiniteGroup::power(&z2, 3).unwrap();
        assert_eq!(k.order(), 8);
        assert!(k.is_abelian());
        let s3 = FiniteGroup::symmetric(3).unwrap();
        let act = k.permute_factors(&s3).unwrap();
        let w = FiniteGroup::semidirect(&k, &s3, &act).unwrap();
        assert_eq!(w.group.order(), 48);
    }

    #[test]
    fn bad_table_rejected() {
        assert!(FiniteGroup::from_table(vec![vec![0, 1], vec![1, 1]]).is_err());
        assert!(FiniteGroup::from_table(vec![vec![0, 1], vec![1, 0]]).is_ok());
        let z3 = FiniteGroup::cyclic(3).unwrap();
        let z2 = FiniteGroup::cyclic(2).unwrap();
        // the identity of Z2 must act trivially
        let bad = vec![vec![0, 2, 1], vec![0, 1, 2]];
        assert!(FiniteGroup::semidirect(&z3, &z2, &bad).is_err());
    }

    #[test]
    fn subgroups_and_normality() {
        let g = s3();
        let s2 = Subgroup::generated(&g, &[el(&g, "(12)")]).unwrap();
        assert_eq!(s2.elements(), &[0, 1]);
        assert_eq!(Subgroup::generated(&g, &[]).unwrap().order(), 1);
        let a3 = Subgroup::generated(&g, &[el(&g, "(123)")]).unwrap();
        assert_eq!(a3.order(), 3);
        assert!(a3.is_normal());
        assert!(!s2.is_normal());
        assert!(Subgroup::trivial(&g).is_normal());
        let c = s2.conjugate(el(&g, "(23)"));
        assert_eq!(c.elements(), &[0, el(&g, "(13)")]);
        assert_eq!(a3.conjugate(el(&g, "(12)")), a3);
    }

    #[test]
    fn s3_cosets_and_double_cosets() {
        let g = s3();
        let s2 = Subgroup::generated(&g, &[1]).unwrap();
        let cs = CosetSpace::new(s2);
        assert_eq!(cs.len(), 3);
        let reps: Vec<String> = cs.reps().iter().map(|&r| g.name(r)).collect();
        assert_eq!(reps, ["id", "(23)", "(13)"]);
        assert_eq!(cs.orbits().len(), 2);
        assert_eq!(cs.orbits()[1].rep, 1);
        assert_eq!(cs.orbits()[0].stabilizer.order(), 2);
        assert_eq!(cs.orbits()[1].stabilizer.order(), 1);
        assert_eq!(cs.act(el(&g, "(12)"), 1), 2);
    }

    #[test]
    fn quotient_s4_by_v4_is_s3() {
        let s4: GroupRef = Arc::new(FiniteGroup::symmetric(4).unwrap());
        let v4 = Subgroup::generated(&s4, &[el(&s4, "(12)(34)"), el(&s4, "(13)(24)")]).unwrap();
        assert_eq!(v4.order(), 4);
        let (q, proj) = quotient(&s4, &v4).unwrap();
        assert_eq!(q.order(), 6);
        for a in s4.elements() {
            for b in s4.elements() {
                assert_eq!(proj[s4.mul(a, b)], q.mul(proj[a], proj[b]));
            }
        }
        assert!(q.find_isomorphism(&FiniteGroup::symmetric(3).unwrap()).is_some());
        assert!(q.find_isomorphism(&FiniteGroup::cyclic(6).unwrap()).is_none());
    }

    #[test]
    fn quotient_by_trivial_is_isomorphic() {
        let g = s3();
        let (q, _) = quotient(&g, &Subgroup::trivial(&g)).unwrap();
        assert_eq!(q.order(), 6);
        assert!(quotient(&g, &Subgroup::generated(&g, &[1]).unwrap()).is_err());
    }

    #[test]
    fn stabilizer_law_exhaustive_small() {
        let s4: GroupRef = Arc::new(FiniteGroup::symmetric(4).unwrap());
        let d4 = Subgroup::generated(&s4, &[el(&s4, "(1234)"), el(&s4, "(13)")]).unwrap();
        assert_eq!(d4.order(), 8);
        let cs = CosetSpace::new(d4.clone());
        assert_eq!(cs.len() * d4.order(), 24);
        for c in 0..cs.len() {
            let g = cs.rep(c);
            let expected = d4.intersection(&d4.conjugate(g));
            for &h in d4.elements() {
                assert_eq!(cs.act(h, c) == c, expected.contains(h));
            }
        }
    }
}
