//! Weighted dual graphs of exceptional curve configurations.
//!
//! Vertices are curves weighted by self-intersection; edges carry the
//! intersection multiplicity of the two curves. Every exceptional curve is a
//! smooth rational curve, so adjunction fixes `K.E = -2 - E^2` and arithmetic
//! genera follow from the graph alone. On top of that sit the classical
//! contraction tools: negative definiteness, fundamental cycles, Artin's
//! rationality test, and Dynkin diagram recognition.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt::Write as _;

use num::rational::Ratio;
use num::Zero;

use crate::ade::{AdeFamily, AdeType};
use crate::divisor::{CurveId, QDivisor};
use crate::error::{Error, Result};
use crate::matrix::SymMatrix;
use crate::num::{int, rat, Scalar};

/// Dual graph of a curve configuration.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct DualGraph {
    weights: BTreeMap<CurveId, i64>,
    // Key is the ordered pair (min, max); multiplicity >= 1.
    edges: BTreeMap<(CurveId, CurveId), i64>,
}

/// Effective cycle supported on a dual graph: non-negative multiplicities,
/// at least one of them positive.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Cycle {
    mults: BTreeMap<CurveId, i64>,
}

impl Cycle {
    pub fn new<I, C>(entries: I) -> Result<Cycle>
    where
        I: IntoIterator<Item = (C, i64)>,
        C: Into<CurveId>,
    {
        let mut mults = BTreeMap::new();
        for (id, m) in entries {
            let id = id.into();
            if m < 0 {
                return Err(Error::NegativeMultiplicity(id));
            }
            if m > 0 {
                mults.insert(id, m);
            }
        }
        if mults.is_empty() {
            return Err(Error::EmptyCycle);
        }
        Ok(Cycle { mults })
    }

    pub fn multiplicity(&self, id: &CurveId) -> i64 {
        self.mults.get(id).copied().unwrap_or(0)
    }

    pub fn iter(&self) -> impl Iterator<Item = (&CurveId, i64)> {
        self.mults.iter().map(|(id, &m)| (id, m))
    }

    pub fn support(&self) -> impl Iterator<Item = &CurveId> {
        self.mults.keys()
    }
}

impl std::fmt::Display for Cycle {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        let parts: Vec<String> = self
            .mults
            .iter()
            .map(|(id, m)| if *m == 1 { id.to_string() } else { format!("{m} {id}") })
            .collect();
        f.write_str(&parts.join(" + "))
    }
}

fn pair_key(a: CurveId, b: CurveId) -> (CurveId, CurveId) {
    if a <= b {
        (a, b)
    } else {
        (b, a)
    }
}

impl DualGraph {
    pub fn new() -> DualGraph {
        DualGraph::default()
    }

    /// Adds a vertex; duplicate identifiers are rejected.
    pub fn add_curve<C: Into<CurveId>>(&mut self, id: C, self_intersection: i64) -> Result<()> {
        let id = id.into();
        if self.weights.contains_key(&id) {
            return Err(Error::DuplicateCurve(id));
        }
        self.weights.insert(id, self_intersection);
        Ok(())
    }

    /// Records that two distinct declared curves meet with the given
    /// multiplicity (>= 1). Each unordered pair may be declared once.
    pub fn add_meeting<C: Into<CurveId>>(&mut self, a: C, b: C, multiplicity: i64) -> Result<()> {
        let a = a.into();
        let b = b.into();
        if a == b {
            return Err(Error::SelfLoop(a));
        }
        for id in [&a, &b] {
            if !self.weights.contains_key(id) {
                return Err(Error::UnknownCurve(id.clone()));
            }
        }
        if multiplicity < 1 {
            return Err(Error::Parse {
                line: 0,
                message: format!("multiplicity of `{a}`.`{b}` must be >= 1"),
            });
        }
        let key = pair_key(a, b);
        if self.edges.contains_key(&key) {
            return Err(Error::DuplicateEdge(key.0, key.1));
        }
        self.edges.insert(key, multiplicity);
        Ok(())
    }

    pub fn len(&self) -> usize {
        self.weights.len()
    }

    pub fn is_empty(&self) -> bool {
        self.weights.is_empty()
    }

    pub fn curves(&self) -> impl Iterator<Item = &CurveId> {
        self.weights.keys()
    }

    pub fn contains(&self, id: &CurveId) -> bool {
        self.weights.contains_key(id)
    }

    pub fn weight(&self, id: &CurveId) -> Option<i64> {
        self.weights.get(id).copied()
    }

    pub fn edges(&self) -> impl Iterator<Item = (&CurveId, &CurveId, i64)> {
        self.edges.iter().map(|((a, b), &m)| (a, b, m))
    }

    /// Intersection number of two distinct curves (0 when they do not meet).
    pub fn multiplicity(&self, a: &CurveId, b: &CurveId) -> i64 {
        if a == b {
            return self.weight(a).unwrap_or(0);
        }
        self.edges
            .get(&pair_key(a.clone(), b.clone()))
            .copied()
            .unwrap_or(0)
    }

    /// `K.E = -2 - E^2` for the smooth rational curve `E` (adjunction).
    pub fn canonical_intersection(&self, id: &CurveId) -> Result<i64> {
        let w = self
            .weight(id)
            .ok_or_else(|| Error::UnknownCurve(id.clone()))?;
        Ok(-2 - w)
    }

    /// True when no vertex is a (-1)-curve, i.e. `K.E >= 0` everywhere and
    /// the configuration can sit inside a minimal resolution.
    pub fn is_minimal_configuration(&self) -> bool {
        self.weights.values().all(|&w| w <= -2)
    }

    /// Vertices in lexicographic order together with the intersection matrix.
    pub fn intersection_matrix<T: Scalar>(&self) -> (Vec<CurveId>, SymMatrix<T>) {
        let order: Vec<CurveId> = self.weights.keys().cloned().collect();
        let n = order.len();
        let mut rows = vec![vec![T::zero(); n]; n];
        for (i, a) in order.iter().enumerate() {
            rows[i][i] = int(self.weights[a]);
            for (j, b) in order.iter().enumerate().skip(i + 1) {
                let m = self.multiplicity(a, b);
                rows[i][j] = int(m);
                rows[j][i] = int(m);
            }
        }
        let matrix = SymMatrix::from_rows(rows).expect("constructed symmetric");
        (order, matrix)
    }

    /// Connected components as stand-alone graphs, ordered by their smallest
    /// curve identifier.
    pub fn components(&self) -> Vec<DualGraph> {
        let mut seen: BTreeSet<CurveId> = BTreeSet::new();
        let mut out = Vec::new();
        for start in self.weights.keys() {
            if seen.contains(start) {
                continue;
            }
            let mut stack = vec![start.clone()];
            let mut members = BTreeSet::new();
            while let Some(v) = stack.pop() {
                if !members.insert(v.clone()) {
                    continue;
                }
                for ((a, b), _) in &self.edges {
                    if a == &v && !members.contains(b) {
                        stack.push(b.clone());
                    } else if b == &v && !members.contains(a) {
                        stack.push(a.clone());
                    }
                }
            }
            let mut sub = DualGraph::new();
            for id in &members {
                sub.weights.insert(id.clone(), self.weights[id]);
            }
            for ((a, b), &m) in &self.edges {
                if members.contains(a) && members.contains(b) {
                    sub.edges.insert((a.clone(), b.clone()), m);
                }
            }
            seen.extend(members);
            out.push(sub);
        }
        out
    }

    pub fn is_connected(&self) -> bool {
        self.components().len() <= 1
    }

    /// True when every connected component is negative definite.
    pub fn is_negative_definite(&self) -> bool {
        self.components()
            .iter()
            .all(|c| c.intersection_matrix::<i64>().1.is_negative_definite())
    }

    fn degree(&self, id: &CurveId) -> usize {
        self.edges
            .keys()
            .filter(|(a, b)| a == id || b == id)
            .count()
    }

    fn neighbors<'a>(&'a self, id: &'a CurveId) -> impl Iterator<Item = &'a CurveId> {
        self.edges.keys().filter_map(move |(a, b)| {
            if a == id {
                Some(b)
            } else if b == id {
                Some(a)
            } else {
                None
            }
        })
    }

    /// Checks that `z` is supported on vertices of the graph.
    fn check_support(&self, z: &Cycle) -> Result<()> {
        for id in z.support() {
            if !self.contains(id) {
                return Err(Error::UnknownCurve(id.clone()));
            }
        }
        Ok(())
    }

    /// `Z.E_j` for a cycle `Z` and a vertex `j`.
    pub fn cycle_dot_curve(&self, z: &Cycle, j: &CurveId) -> Result<i64> {
        self.check_support(z)?;
        if !self.contains(j) {
            return Err(Error::UnknownCurve(j.clone()));
        }
        let mut acc = 0i64;
        for (i, m) in z.iter() {
            acc += m * self.multiplicity(i, j);
        }
        Ok(acc)
    }

    /// Self-intersection `Z.Z` of a cycle.
    pub fn cycle_self_intersection(&self, z: &Cycle) -> Result<i64> {
        self.check_support(z)?;
        let mut acc = 0i64;
        for (i, mi) in z.iter() {
            for (j, mj) in z.iter() {
                acc += mi * mj * self.multiplicity(i, j);
            }
        }
        Ok(acc)
    }

    /// `Z.K` via adjunction on each component curve.
    pub fn cycle_dot_canonical(&self, z: &Cycle) -> Result<i64> {
        self.check_support(z)?;
        let mut acc = 0i64;
        for (i, m) in z.iter() {
            acc += m * self.canonical_intersection(i)?;
        }
        Ok(acc)
    }

    /// Arithmetic genus `p_a(Z) = 1 + (Z^2 + Z.K) / 2` of a positive cycle.
    /// Integer-valued for integral cycles; returned as an exact rational.
    pub fn arithmetic_genus<T: Scalar>(&self, z: &Cycle) -> Result<Ratio<T>> {
        let z2 = self.cycle_self_intersection(z)?;
        let zk = self.cycle_dot_canonical(z)?;
        Ok(rat(2 + z2 + zk, 2))
    }

    /// Intersection pairing of two Q-divisors supported on the graph.
    pub fn q_pair<T: Scalar>(&self, a: &QDivisor<T>, b: &QDivisor<T>) -> Result<Ratio<T>> {
        for id in a.support().chain(b.support()) {
            if !self.contains(id) {
                return Err(Error::UnknownCurve(id.clone()));
            }
        }
        let mut acc: Ratio<T> = Ratio::zero();
        for (i, ai) in a.iter() {
            for (j, bj) in b.iter() {
                let m = self.multiplicity(i, j);
                if m != 0 {
                    acc = acc + ai.clone() * bj.clone() * Ratio::from_integer(int(m));
                }
            }
        }
        Ok(acc)
    }

    /// Fundamental cycle of a connected negative definite configuration.
    ///
    /// Computed by the incremental algorithm: start from the reduced cycle
    /// `Z = sum E_i` and, while some vertex has `Z.E_j > 0`, bump the
    /// multiplicity of the lexicographically smallest such vertex. The result
    /// is the unique minimal cycle with `Z >= sum E_i` and `Z.E_j <= 0`
    /// everywhere; the tie-break only affects the path taken.
    pub fn fundamental_cycle(&self) -> Result<Cycle> {
        if self.is_empty() || !self.is_connected() {
            return Err(Error::Disconnected);
        }
        let (order, matrix) = self.intersection_matrix::<i64>();
        if let Some((k, minor)) = matrix.offending_minor() {
            return Err(Error::NotNegativeDefinite {
                component: order[0].clone(),
                minor_index: k,
                minor: minor.to_string(),
            });
        }
        let mut mults: BTreeMap<CurveId, i64> =
            self.weights.keys().map(|id| (id.clone(), 1)).collect();
        loop {
            let mut bumped = false;
            for j in self.weights.keys() {
                let dot: i64 = mults
                    .iter()
                    .map(|(i, m)| m * self.multiplicity(i, j))
                    .sum();
                if dot > 0 {
                    *mults.get_mut(j).expect("vertex present") += 1;
                    bumped = true;
                    break; // restart scan from the smallest identifier
                }
            }
            if !bumped {
                return Cycle::new(mults);
            }
        }
    }

    /// Artin's contractibility test: every connected component is negative
    /// definite with fundamental cycle of arithmetic genus zero, so the
    /// configuration blows down to rational singular points.
    pub fn is_contractible_to_rational_point(&self) -> bool {
        self.components().iter().all(|c| {
            c.fundamental_cycle()
                .and_then(|z| c.arithmetic_genus::<i64>(&z))
                .map_or(false, |pa| pa.is_zero())
        })
    }

    /// Recognizes Dynkin configurations: a connected graph of (-2)-curves
    /// with simple edges shaped as a chain or an A/D/E fork. Anything else
    /// (other weights, multiple edges, cycles, wide forks) is not canonical
    /// and yields `None`.
    pub fn classify_ade(&self) -> Option<AdeType> {
        let n = self.len() as u32;
        if n == 0 || !self.is_connected() {
            return None;
        }
        if self.weights.values().any(|&w| w != -2) {
            return None;
        }
        if self.edges.values().any(|&m| m != 1) {
            return None;
        }
        if self.edges.len() as u32 != n - 1 {
            return None; // contains a cycle
        }
        let mut forks = Vec::new();
        for id in self.weights.keys() {
            match self.degree(id) {
                0 | 1 | 2 => {}
                3 => forks.push(id.clone()),
                _ => return None,
            }
        }
        match forks.len() {
            0 => AdeType::new(AdeFamily::A, n),
            1 => {
                let center = &forks[0];
                let mut legs: Vec<u32> = self
                    .neighbors(center)
                    .map(|first| {
                        let mut len = 1;
                        let mut prev = center.clone();
                        let mut cur = first.clone();
                        loop {
                            let next: Vec<CurveId> = self
                                .neighbors(&cur)
                                .filter(|v| **v != prev)
                                .cloned()
                                .collect();
                            match next.as_slice() {
                                [] => break,
                                [only] => {
                                    prev = cur;
                                    cur = only.clone();
                                    len += 1;
                                }
                                _ => unreachable!("degree checked above"),
                            }
                        }
                        len
                    })
                    .collect();
                legs.sort_unstable();
                match legs.as_slice() {
                    [1, 1, k] => AdeType::new(AdeFamily::D, k + 3),
                    [1, 2, 2] => AdeType::new(AdeFamily::E, 6),
                    [1, 2, 3] => AdeType::new(AdeFamily::E, 7),
                    [1, 2, 4] => AdeType::new(AdeFamily::E, 8),
                    _ => None,
                }
            }
            _ => None,
        }
    }

    /// Parses the line-oriented graph format:
    ///
    /// ```text
    /// # comment
    /// curve <id> <self-intersection>
    /// meet <id> <id> [<multiplicity>]
    /// ```
    pub fn parse(src: &str) -> Result<DualGraph> {
        let mut g = DualGraph::new();
        for (idx, raw) in src.lines().enumerate() {
            let line_no = idx + 1;
            let line = raw.split('#').next().unwrap_or("").trim();
            if line.is_empty() {
                continue;
            }
            let mut tokens = line.split_whitespace();
            let directive = tokens.next().expect("non-empty line");
            let at = |message: String| Error::Parse {
                line: line_no,
                message,
            };
            match directive {
                "curve" => {
                    let id = tokens
                        .next()
                        .ok_or_else(|| at("`curve` needs an identifier".into()))?;
                    let w: i64 = tokens
                        .next()
                        .ok_or_else(|| at(format!("`curve {id}` needs a self-intersection")))?
                        .parse()
                        .map_err(|_| at(format!("bad self-intersection for `{id}`")))?;
                    if tokens.next().is_some() {
                        return Err(at("trailing tokens after `curve`".into()));
                    }
                    g.add_curve(id, w).map_err(|e| at(e.to_string()))?;
                }
                "meet" => {
                    let a = tokens
                        .next()
                        .ok_or_else(|| at("`meet` needs two identifiers".into()))?;
                    let b = tokens
                        .next()
                        .ok_or_else(|| at("`meet` needs two identifiers".into()))?;
                    let mult = match tokens.next() {
                        Some(tok) => tok
                            .parse::<i64>()
                            .map_err(|_| at(format!("bad multiplicity `{tok}`")))?,
                        None => 1,
                    };
                    if tokens.next().is_some() {
                        return Err(at("trailing tokens after `meet`".into()));
                    }
                    g.add_meeting(a, b, mult).map_err(|e| at(e.to_string()))?;
                }
                other => {
                    return Err(at(format!("unknown directive `{other}`")));
                }
            }
        }
        Ok(g)
    }

    /// Emits the graph in the same format `parse` reads; parsing the output
    /// reproduces the graph exactly.
    pub fn to_graph_format(&self) -> String {
        let mut out = String::new();
        for (id, w) in &self.weights {
            writeln!(out, "curve {id} {w}").expect("string write");
        }
        for ((a, b), m) in &self.edges {
            if *m == 1 {
                writeln!(out, "meet {a} {b}").expect("string write");
            } else {
                writeln!(out, "meet {a} {b} {m}").expect("string write");
            }
        }
        out
    }
}

/// Builds the chain graph `ids[0] - ids[1] - ...` with the given weights.
pub fn chain<C: Into<CurveId> + Clone>(entries: &[(C, i64)]) -> DualGraph {
    let mut g = DualGraph::new();
    for (id, w) in entries {
        g.add_curve(id.clone(), *w).expect("fresh identifier");
    }
    for pair in entries.windows(2) {
        let a: CurveId = pair[0].0.clone().into();
        let b: CurveId = pair[1].0.clone().into();
        g.add_meeting(a, b, 1).expect("valid edge");
    }
    g
}
