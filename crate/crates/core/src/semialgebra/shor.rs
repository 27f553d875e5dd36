//! Compilation of primary systems toward Shor normal form.
//!
//! Every polynomial becomes a hash-consed circuit of binary additions and
//! multiplications over the inputs and the constant 1. An equation `P = N`
//! between the positive and negative parts identifies two circuit nodes; a
//! strict inequality `P > N` becomes an order fact. Node classes are then
//! indexed along a linear extension of the derived order, so that every
//! constraint reads `x_i + x_j = x_k` or `x_i · x_j = x_k` with
//! `1 ≤ i ≤ j < k`.

use std::collections::{BTreeMap, BinaryHeap, HashMap};
use std::cmp::Reverse;

use num_bigint::BigInt;
use num_traits::{One, Signed};

use super::{evaluate_membership, PolynomialZ, SemialgebraicSystem};
use crate::error::{Error, Result};
use crate::numeric::{int, Rational};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum ShorOp {
    Add,
    Mul,
}

/// `x_i op x_j = x_k`, 1-based.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct ShorConstraint {
    pub i: usize,
    pub j: usize,
    pub k: usize,
    pub op: ShorOp,
}

impl ShorConstraint {
    pub fn holds(&self, x: &[Rational]) -> bool {
        let (a, b, c) = (&x[self.i - 1], &x[self.j - 1], &x[self.k - 1]);
        match self.op {
            ShorOp::Add => a + b == *c,
            ShorOp::Mul => a * b == *c,
        }
    }
}

/// Variables `x_1 .. x_n` with `x_1 = 1` and binary constraints.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ShorNormalForm {
    pub n: usize,
    pub constraints: Vec<ShorConstraint>,
}

impl ShorNormalForm {
    /// `1 ≤ i ≤ j < k ≤ n` for every constraint.
    pub fn index_discipline(&self) -> bool {
        self.constraints
            .iter()
            .all(|c| 1 <= c.i && c.i <= c.j && c.j < c.k && c.k <= self.n)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Completeness {
    /// The derived order is a total order on all variables.
    Total,
    Partial,
}

/// How each variable of the output is obtained from an original solution.
#[derive(Debug, Clone, PartialEq, Eq)]
enum Definition {
    One,
    Input(usize),
    Constant(BigInt),
    Node(ShorOp, usize, usize),
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ShorCompilation {
    pub normal_form: ShorNormalForm,
    /// Output index (1-based) of each original variable.
    pub var_map: Vec<usize>,
    pub completeness: Completeness,
    /// Covering pairs `(a, b)` of the derived order, meaning `x_a < x_b`.
    pub order: Vec<(usize, usize)>,
    /// Reasons the system has no solution with all variables above 0, if any.
    pub contradictions: Vec<String>,
    bounds: Vec<Option<Rational>>,
    /// Per output variable, the definitions usable to evaluate it.
    definitions: Vec<Vec<Definition>>,
}

impl ShorCompilation {
    pub fn feasible(&self) -> bool {
        self.contradictions.is_empty()
    }

    /// Number of variables plus number of constraints.
    pub fn size(&self) -> usize {
        self.normal_form.n + self.normal_form.constraints.len()
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
enum Node {
    One,
    Input(usize),
    Op(ShorOp, usize, usize),
}

struct Circuit {
    nodes: Vec<Node>,
    index: HashMap<Node, usize>,
}

impl Circuit {
    fn new(n_inputs: usize) -> Self {
        let mut c = Self {
            nodes: Vec::new(),
            index: HashMap::new(),
        };
        c.intern(Node::One);
        for v in 0..n_inputs {
            c.intern(Node::Input(v));
        }
        c
    }

    fn intern(&mut self, node: Node) -> usize {
        let node = match node {
            Node::Op(op, a, b) if a > b => Node::Op(op, b, a),
            n => n,
        };
        if let Some(&i) = self.index.get(&node) {
            return i;
        }
        self.nodes.push(node);
        self.index.insert(node, self.nodes.len() - 1);
        self.nodes.len() - 1
    }

    fn add(&mut self, a: usize, b: usize) -> usize {
        self.intern(Node::Op(ShorOp::Add, a, b))
    }

    fn mul(&mut self, a: usize, b: usize) -> usize {
        self.intern(Node::Op(ShorOp::Mul, a, b))
    }

    /// `c ≥ 1` from the constant 1 by doubling and adding.
    fn constant(&mut self, c: &BigInt) -> usize {
        debug_assert!(c.is_positive());
        let bits = c.bits();
        let mut acc = 0;
        for b in (0..bits - 1).rev() {
            acc = self.add(acc, acc);
            if c.bit(b) {
                acc = self.add(acc, 0);
            }
        }
        acc
    }

    fn power(&mut self, base: usize, e: u32) -> usize {
        let mut acc = base;
        for b in (0..31 - e.leading_zeros()).rev() {
            acc = self.mul(acc, acc);
            if e >> b & 1 == 1 {
                acc = self.mul(acc, base);
            }
        }
        acc
    }

    fn term(&mut self, m: &[u32], c: &BigInt) -> usize {
        let mut acc: Option<usize> = None;
        for (v, &e) in m.iter().enumerate() {
            if e > 0 {
                let p = self.power(1 + v, e);
                acc = Some(match acc {
                    Some(a) => self.mul(a, p),
                    None => p,
                });
            }
        }
        match acc {
            None => self.constant(c),
            Some(a) if c.is_one() => a,
            Some(a) => {
                let k = self.constant(c);
                self.mul(k, a)
            }
        }
    }

    /// Sum of the terms of a polynomial with non-negative coefficients.
    fn polynomial(&mut self, p: &PolynomialZ) -> Option<usize> {
        let mut acc: Option<usize> = None;
        for (m, c) in p.terms() {
            let t = self.term(m, c);
            acc = Some(match acc {
                Some(a) => self.add(a, t),
                None => t,
            });
        }
        acc
    }

    /// Value of a node built only from the constant 1.
    fn constant_value(&self, i: usize, memo: &mut HashMap<usize, Option<BigInt>>) -> Option<BigInt> {
        if let Some(v) = memo.get(&i) {
            return v.clone();
        }
        let v = match self.nodes[i] {
            Node::One => Some(BigInt::one()),
            Node::Input(_) => None,
            Node::Op(op, a, b) => match (self.constant_value(a, memo), self.constant_value(b, memo)) {
                (Some(x), Some(y)) => Some(if op == ShorOp::Add { x + y } else { x * y }),
                _ => None,
            },
        };
        memo.insert(i, v.clone());
        v
    }
}

struct UnionFind(Vec<usize>);

impl UnionFind {
    fn find(&mut self, a: usize) -> usize {
        let mut r = a;
        while self.0[r] != r {
            r = self.0[r];
        }
        let mut c = a;
        while self.0[c] != r {
            let next = self.0[c];
            self.0[c] = r;
            c = next;
        }
        r
    }

    fn union(&mut self, a: usize, b: usize) {
        let (ra, rb) = (self.find(a), self.find(b));
        if ra != rb {
            // the smaller id stays the representative
            let (lo, hi) = (ra.min(rb), ra.max(rb));
            self.0[hi] = lo;
        }
    }
}

/// Facts about the classes, closed under the structural rules.
struct Facts {
    n: usize,
    lt: Vec<Vec<bool>>,
    pos: Vec<bool>,
    ge1: Vec<bool>,
    gt1: Vec<bool>,
}

impl Facts {
    fn new(n: usize) -> Self {
        Self {
            n,
            lt: vec![vec![false; n]; n],
            pos: vec![false; n],
            ge1: vec![false; n],
            gt1: vec![false; n],
        }
    }

    fn less(&mut self, a: usize, b: usize) -> bool {
        !std::mem::replace(&mut self.lt[a][b], true)
    }

    fn set(flag: &mut [bool], i: usize) -> bool {
        !std::mem::replace(&mut flag[i], true)
    }

    /// Runs the rules to a fixpoint; `ops` are `(op, a, b, k)` over classes.
    fn close(&mut self, one: usize, ops: &[(ShorOp, usize, usize, usize)]) {
        loop {
            let mut changed = false;
            for i in 0..self.n {
                if self.gt1[i] {
                    changed |= Self::set(&mut self.ge1, i);
                    if i != one {
                        changed |= self.less(one, i);
                    }
                }
                if self.ge1[i] {
                    changed |= Self::set(&mut self.pos, i);
                }
            }
            for &(op, a, b, k) in ops {
                match op {
                    ShorOp::Add => {
                        if self.pos[a] && self.pos[b] {
                            changed |= self.less(a, k) | self.less(b, k) | Self::set(&mut self.pos, k);
                            if self.ge1[a] || self.ge1[b] {
                                changed |= Self::set(&mut self.gt1, k);
                            }
                        }
                    }
                    ShorOp::Mul => {
                        if self.pos[a] && self.pos[b] {
                            changed |= Self::set(&mut self.pos, k);
                        }
                        if self.gt1[a] && self.pos[b] {
                            changed |= self.less(b, k);
                        }
                        if self.gt1[b] && self.pos[a] {
                            changed |= self.less(a, k);
                        }
                        if self.gt1[a] && self.gt1[b] {
                            changed |= Self::set(&mut self.gt1, k);
                        }
                    }
                }
            }
            // transitive closure and propagation along <
            for m in 0..self.n {
                for a in 0..self.n {
                    if self.lt[a][m] {
                        for b in 0..self.n {
                            if self.lt[m][b] && !self.lt[a][b] {
                                self.lt[a][b] = true;
                                changed = true;
                            }
                        }
                    }
                }
            }
            for a in 0..self.n {
                for b in 0..self.n {
                    if self.lt[a][b] {
                        if self.pos[a] {
                            changed |= Self::set(&mut self.pos, b);
                        }
                        if self.ge1[a] {
                            changed |= Self::set(&mut self.gt1, b);
                        }
                    }
                }
            }
            if !changed {
                return;
            }
        }
    }
}

/// Compiles a primary system. `var_bounds[v]`, when present, is a known
/// lower bound `x_v > b` with `b > 1`.
pub fn shor_compile(sys: &SemialgebraicSystem, var_bounds: Option<&[Option<Rational>]>) -> Result<ShorCompilation> {
    if !sys.primary() {
        return Err(Error::NotPrimary(sys.nonstrict.len()));
    }
    sys.validate()?;
    let bounds: Vec<Option<Rational>> = match var_bounds {
        Some(b) if b.len() != sys.n_vars => {
            return Err(Error::DimensionMismatch(format!("{} bounds for {} variables", b.len(), sys.n_vars)))
        }
        Some(b) => b.to_vec(),
        None => vec![None; sys.n_vars],
    };
    if let Some(b) = bounds.iter().flatten().find(|b| **b <= int(1)) {
        return Err(Error::Precondition(format!("lower bound {b} is not above 1")));
    }

    let mut circuit = Circuit::new(sys.n_vars);
    let mut contradictions = Vec::new();
    let mut identify = Vec::new();
    let mut strict_facts = Vec::new();
    for (e, f) in sys.equations.iter().enumerate() {
        let (p, n) = f.split_signs();
        match (circuit.polynomial(&p), circuit.polynomial(&n)) {
            (Some(l), Some(r)) => identify.push((l, r)),
            (None, None) => {}
            _ => contradictions.push(format!("equation {} sets a positive expression to zero", e + 1)),
        }
    }
    for (s, g) in sys.strict.iter().enumerate() {
        let (p, n) = g.split_signs();
        match (circuit.polynomial(&p), circuit.polynomial(&n)) {
            (Some(l), Some(r)) => strict_facts.push((r, l)),
            (None, Some(_)) => {
                contradictions.push(format!("inequality {} asks a negative expression to be positive", s + 1))
            }
            _ => {}
        }
    }

    let n_nodes = circuit.nodes.len();
    let mut uf = UnionFind((0..n_nodes).collect());
    for &(a, b) in &identify {
        uf.union(a, b);
    }
    let roots: Vec<usize> = (0..n_nodes).map(|i| uf.find(i)).collect();
    let mut class_of_root: BTreeMap<usize, usize> = BTreeMap::new();
    for &r in &roots {
        let next = class_of_root.len();
        class_of_root.entry(r).or_insert(next);
    }
    let class: Vec<usize> = roots.iter().map(|r| class_of_root[r]).collect();
    let n_classes = class_of_root.len();
    let one = class[0];

    let mut ops = Vec::new();
    for (i, node) in circuit.nodes.iter().enumerate() {
        if let Node::Op(op, a, b) = *node {
            let (ca, cb, ck) = (class[a], class[b], class[i]);
            if ca == ck || cb == ck {
                contradictions.push("a node is identified with one of its own operands".to_string());
            }
            ops.push((op, ca.min(cb), ca.max(cb), ck));
        }
    }

    // facts
    let mut facts = Facts::new(n_classes);
    facts.ge1[one] = true;
    let mut memo = HashMap::new();
    let mut const_val: Vec<Option<BigInt>> = vec![None; n_classes];
    for i in 0..n_nodes {
        if let Some(v) = circuit.constant_value(i, &mut memo) {
            match &const_val[class[i]] {
                Some(w) if *w != v => contradictions.push(format!("constants {w} and {v} are identified")),
                _ => const_val[class[i]] = Some(v),
            }
        }
    }
    let consts: Vec<(usize, BigInt)> = const_val.iter().enumerate().filter_map(|(c, v)| v.clone().map(|v| (c, v))).collect();
    for (c, v) in &consts {
        if *v > BigInt::one() {
            facts.gt1[*c] = true;
        }
        for (d, w) in &consts {
            if v < w {
                facts.lt[*c][*d] = true;
            }
        }
    }
    for (v, b) in bounds.iter().enumerate() {
        if let Some(b) = b {
            let cv = class[1 + v];
            facts.gt1[cv] = true;
            for (c, w) in &consts {
                if Rational::from_integer(w.clone()) <= *b {
                    facts.lt[*c][cv] = true;
                }
            }
        }
    }
    for &(r, l) in &strict_facts {
        facts.lt[class[r]][class[l]] = true;
    }
    facts.close(one, &ops);
    for c in 0..n_classes {
        if facts.lt[c][c] {
            contradictions.push("the derived order has a cycle".to_string());
            break;
        }
    }
    if (0..n_classes).any(|c| facts.lt[c][one]) {
        contradictions.push("a variable is forced below 1".to_string());
    }

    // linear extension of structure and order, smallest class first
    let mut succ: Vec<Vec<usize>> = vec![Vec::new(); n_classes];
    for &(_, a, b, k) in &ops {
        for x in [a, b] {
            if x != k {
                succ[x].push(k);
            }
        }
    }
    for a in 0..n_classes {
        for b in 0..n_classes {
            if a != b && facts.lt[a][b] && b != one {
                succ[a].push(b);
            }
        }
    }
    let rank = topological(n_classes, &succ, one).unwrap_or_else(|| {
        contradictions.push("structure and order admit no common linear extension".to_string());
        let structural: Vec<Vec<usize>> = (0..n_classes)
            .map(|a| ops.iter().filter(|o| (o.1 == a || o.2 == a) && o.3 != a).map(|o| o.3).collect())
            .collect();
        topological(n_classes, &structural, one).unwrap_or_else(|| (0..n_classes).collect())
    });

    let idx = |c: usize| rank[c] + 1;
    let mut constraints: Vec<ShorConstraint> = ops
        .iter()
        .map(|&(op, a, b, k)| {
            let (i, j) = (idx(a).min(idx(b)), idx(a).max(idx(b)));
            ShorConstraint { i, j, k: idx(k), op }
        })
        .collect();
    constraints.sort();
    constraints.dedup();

    let mut definitions: Vec<Vec<Definition>> = vec![Vec::new(); n_classes];
    definitions[rank[one]].push(Definition::One);
    for v in 0..sys.n_vars {
        definitions[rank[class[1 + v]]].push(Definition::Input(v));
    }
    for (c, v) in &consts {
        definitions[rank[*c]].push(Definition::Constant(v.clone()));
    }
    for c in &constraints {
        definitions[c.k - 1].push(Definition::Node(c.op, c.i, c.j));
    }

    let total = (0..n_classes).all(|a| (0..n_classes).all(|b| a == b || facts.lt[a][b] || facts.lt[b][a]));
    let mut order = Vec::new();
    for a in 0..n_classes {
        for b in 0..n_classes {
            if facts.lt[a][b] && a != b && !(0..n_classes).any(|m| facts.lt[a][m] && facts.lt[m][b] && m != a && m != b) {
                order.push((idx(a), idx(b)));
            }
        }
    }
    order.sort();

    contradictions.sort();
    contradictions.dedup();
    Ok(ShorCompilation {
        normal_form: ShorNormalForm { n: n_classes, constraints },
        var_map: (0..sys.n_vars).map(|v| idx(class[1 + v])).collect(),
        completeness: if total && contradictions.is_empty() { Completeness::Total } else { Completeness::Partial },
        order,
        contradictions,
        bounds,
        definitions,
    })
}

/// Kahn's algorithm with `first` forced to the front; `None` on a cycle.
fn topological(n: usize, succ: &[Vec<usize>], first: usize) -> Option<Vec<usize>> {
    let mut indeg = vec![0usize; n];
    for s in succ {
        for &b in s {
            indeg[b] += 1;
        }
    }
    let mut rank = vec![usize::MAX; n];
    let mut heap: BinaryHeap<Reverse<usize>> = BinaryHeap::new();
    if indeg[first] != 0 {
        return None;
    }
    let mut next = 0;
    let mut visit = |v: usize, heap: &mut BinaryHeap<Reverse<usize>>, indeg: &mut Vec<usize>, rank: &mut Vec<usize>| {
        rank[v] = next;
        next += 1;
        for &b in &succ[v] {
            indeg[b] -= 1;
            if indeg[b] == 0 {
                heap.push(Reverse(b));
            }
        }
    };
    for v in 0..n {
        if v != first && indeg[v] == 0 {
            heap.push(Reverse(v));
        }
    }
    visit(first, &mut heap, &mut indeg, &mut rank);
    while let Some(Reverse(v)) = heap.pop() {
        visit(v, &mut heap, &mut indeg, &mut rank);
    }
    rank.iter().all(|&r| r != usize::MAX).then_some(rank)
}

/// Extends a solution of the original system to all output variables and
/// checks every constraint and order relation exactly.
pub fn shor_solution_transport(
    compiled: &ShorCompilation,
    sys: &SemialgebraicSystem,
    x: &[Rational],
) -> Result<Vec<Rational>> {
    if !evaluate_membership(sys, x)? {
        return Err(Error::Precondition("the point does not solve the system".into()));
    }
    for (v, b) in compiled.bounds.iter().enumerate() {
        if let Some(b) = b {
            if x[v] <= *b {
                return Err(Error::Precondition(format!("x{} violates its lower bound {b}", v + 1)));
            }
        }
    }
    let n = compiled.normal_form.n;
    let mut val: Vec<Option<Rational>> = vec![None; n];
    for k in 0..n {
        for def in &compiled.definitions[k] {
            let v = match def {
                Definition::One => int(1),
                Definition::Input(v) => x[*v].clone(),
                Definition::Constant(c) => Rational::from_integer(c.clone()),
                Definition::Node(op, i, j) => {
                    let (a, b) = (val[i - 1].as_ref(), val[j - 1].as_ref());
                    let (Some(a), Some(b)) = (a, b) else {
                        return Err(Error::Internal("operand evaluated after its result".into()));
                    };
                    match op {
                        ShorOp::Add => a + b,
                        ShorOp::Mul => a * b,
                    }
                }
            };
            match &val[k] {
                Some(w) if *w != v => {
                    return Err(Error::Precondition(format!("x{} has inconsistent values {w} and {v}", k + 1)))
                }
                _ => val[k] = Some(v),
            }
        }
    }
    let out: Vec<Rational> = val
        .into_iter()
        .enumerate()
        .map(|(k, v)| v.ok_or_else(|| Error::Internal(format!("x{} has no definition", k + 1))))
        .collect::<Result<_>>()?;
    if let Some(c) = compiled.normal_form.constraints.iter().find(|c| !c.holds(&out)) {
        return Err(Error::Internal(format!("transported values violate {c:?}")));
    }
    if let Some((a, b)) = compiled.order.iter().find(|(a, b)| out[a - 1] >= out[b - 1]) {
        return Err(Error::Internal(format!("transported values violate x{a} < x{b}")));
    }
    Ok(out)
}
