//! Subgroups of `Z_L x Z_L` and their adjoint lattices.

use std::fmt;

use crate::error::{Error, Result};
use crate::tfcore::{symplectic, PhasePoint};

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum LatticeKind {
    /// `a Z_L x b Z_L` with `a | L` and `b | L`.
    Separable { a: usize, b: usize },
    /// The subgroup generated by the listed points.
    General { generators: Vec<PhasePoint> },
}

/// A subgroup of `Z_L x Z_L`, with its points enumerated in lexicographic
/// order (`k` ascending, then `l`).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Lattice {
    len: usize,
    kind: LatticeKind,
    points: Vec<PhasePoint>,
    member: Vec<bool>,
}

impl Lattice {
    pub fn separable(len: usize, a: usize, b: usize) -> Result<Self> {
        if len < 2 {
            return Err(Error::TooShort(len));
        }
        if a == 0 || b == 0 || !len.is_multiple_of(a) || !len.is_multiple_of(b) {
            return Err(Error::InvalidLattice(format!(
                "separable parameters a={a}, b={b} must divide L={len}"
            )));
        }
        let points = (0..len / a)
            .flat_map(|i| (0..len / b).map(move |j| PhasePoint::new(a * i, b * j)))
            .collect();
        Ok(Self::from_sorted(
            len,
            LatticeKind::Separable { a, b },
            points,
        ))
    }

    /// The whole phase space `Z_L x Z_L`.
    pub fn full(len: usize) -> Result<Self> {
        Self::separable(len, 1, 1)
    }

    /// The subgroup generated by `generators` (closure under addition mod L).
    /// A result that happens to be separable is reported as such.
    pub fn generated(len: usize, generators: &[PhasePoint]) -> Result<Self> {
        if len < 2 {
            return Err(Error::TooShort(len));
        }
        let generators: Vec<PhasePoint> = generators.iter().map(|g| g.reduce(len)).collect();
        let mut member = vec![false; len * len];
        member[0] = true;
        let mut frontier = vec![PhasePoint::ORIGIN];
        while let Some(z) = frontier.pop() {
            for g in &generators {
                let w = z.add(*g, len);
                let idx = w.k * len + w.l;
                if !member[idx] {
                    member[idx] = true;
                    frontier.push(w);
                }
            }
        }
        Ok(Self::from_membership(len, member, generators))
    }

    fn from_membership(len: usize, member: Vec<bool>, generators: Vec<PhasePoint>) -> Self {
        let points: Vec<PhasePoint> = member
            .iter()
            .enumerate()
            .filter(|(_, &m)| m)
            .map(|(i, _)| PhasePoint::new(i / len, i % len))
            .collect();
        let kind = detect_separable(len, &member, points.len())
            .unwrap_or(LatticeKind::General { generators });
        Self {
            len,
            kind,
            points,
            member,
        }
    }

    fn from_sorted(len: usize, kind: LatticeKind, points: Vec<PhasePoint>) -> Self {
        let mut member = vec![false; len * len];
        for p in &points {
            member[p.k * len + p.l] = true;
        }
        Self {
            len,
            kind,
            points,
            member,
        }
    }

    /// Parses `sep:a,b` or `gen:(k1,l1);(k2,l2);...`.
    pub fn parse(spec: &str, len: usize) -> Result<Self> {
        let spec = spec.trim();
        if let Some(rest) = spec.strip_prefix("sep:") {
            let (a, b) = rest
                .split_once(',')
                .ok_or_else(|| Error::Parse(format!("lattice '{spec}': expected sep:a,b")))?;
            let a = parse_usize(a, spec)?;
            let b = parse_usize(b, spec)?;
            Self::separable(len, a, b)
        } else if let Some(rest) = spec.strip_prefix("gen:") {
            let gens = rest
                .split(';')
                .filter(|s| !s.trim().is_empty())
                .map(|g| parse_point(g, len))
                .collect::<Result<Vec<_>>>()?;
            Self::generated(len, &gens)
        } else {
            Err(Error::Parse(format!(
                "lattice '{spec}': expected 'sep:a,b' or 'gen:(k1,l1);(k2,l2)'"
            )))
        }
    }

    pub fn len(&self) -> usize {
        self.len
    }

    pub fn kind(&self) -> &LatticeKind {
        &self.kind
    }

    pub fn points(&self) -> &[PhasePoint] {
        &self.points
    }

    /// Lexicographic enumeration, `card()` entries.
    pub fn enumerate(&self) -> impl Iterator<Item = PhasePoint> + '_ {
        self.points.iter().copied()
    }

    pub fn card(&self) -> usize {
        self.points.len()
    }

    pub fn is_empty(&self) -> bool {
        self.points.is_empty()
    }

    /// `card / L`, the finite counterpart of the lattice density.
    pub fn redundancy(&self) -> f64 {
        self.card() as f64 / self.len as f64
    }

    pub fn contains(&self, z: PhasePoint) -> bool {
        let z = z.reduce(self.len);
        self.member[z.k * self.len + z.l]
    }

    /// `{z : sigma(z, lambda) = 0 mod L for all lambda}`, the points whose
    /// time-frequency shifts commute with every `pi(lambda)`.
    pub fn adjoint(&self) -> Lattice {
        match self.kind {
            LatticeKind::Separable { a, b } => {
                Self::separable(self.len, self.len / b, self.len / a).expect("divisors of L")
            }
            LatticeKind::General { .. } => self.adjoint_brute_force(),
        }
    }

    /// Checks every `z` against every lattice point. Used for general
    /// lattices and as the reference for the separable closed form.
    pub fn adjoint_brute_force(&self) -> Lattice {
        let len = self.len;
        let member: Vec<bool> = (0..len * len)
            .map(|i| {
                let z = PhasePoint::new(i / len, i % len);
                self.points.iter().all(|&p| symplectic(z, p, len) == 0)
            })
            .collect();
        let gens = minimal_generators(len, &member);
        Self::from_membership(len, member, gens)
    }

    /// A lattice with the same points, forgetting any closed form.
    pub fn as_general(&self) -> Lattice {
        let gens = minimal_generators(self.len, &self.member);
        Self {
            len: self.len,
            kind: LatticeKind::General { generators: gens },
            points: self.points.clone(),
            member: self.member.clone(),
        }
    }

    /// Index of `z` in the enumeration, if present.
    pub fn index_of(&self, z: PhasePoint) -> Option<usize> {
        self.points.binary_search(&z.reduce(self.len)).ok()
    }
}

impl fmt::Display for Lattice {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match &self.kind {
            LatticeKind::Separable { a, b } => write!(f, "sep:{a},{b}"),
            LatticeKind::General { generators } => {
                write!(f, "gen:")?;
                for (i, g) in generators.iter().enumerate() {
                    if i > 0 {
                        write!(f, ";")?;
                    }
                    write!(f, "{g}")?;
                }
                Ok(())
            }
        }
    }
}

fn detect_separable(len: usize, member: &[bool], card: usize) -> Option<LatticeKind> {
    let a = (1..=len).find(|&k| k == len || member[k * len])?;
    let b = (1..=len).find(|&l| l == len || member[l])?;
    (card * a * b == len * len).then_some(LatticeKind::Separable { a, b })
}

/// Greedy generating set: add points not yet reached until the closure
/// covers the membership table.
fn minimal_generators(len: usize, member: &[bool]) -> Vec<PhasePoint> {
    let mut gens = Vec::new();
    let mut reached = vec![false; len * len];
    reached[0] = true;
    for i in 0..len * len {
        if member[i] && !reached[i] {
            gens.push(PhasePoint::new(i / len, i % len));
            let closure = Lattice::generated(len, &gens).expect("len >= 2");
            reached = closure.member;
        }
    }
    gens
}

fn parse_usize(s: &str, spec: &str) -> Result<usize> {
    s.trim()
        .parse()
        .map_err(|e| Error::Parse(format!("lattice '{spec}': bad integer '{s}': {e}")))
}

/// Parses `(k,l)` with possibly negative entries, reduced mod `len`.
pub fn parse_point(s: &str, len: usize) -> Result<PhasePoint> {
    let inner = s
        .trim()
        .strip_prefix('(')
        .and_then(|r| r.strip_suffix(')'))
        .ok_or_else(|| Error::Parse(format!("expected (k,l), found '{s}'")))?;
    let (k, l) = inner
        .split_once(',')
        .ok_or_else(|| Error::Parse(format!("expected (k,l), found '{s}'")))?;
    let k: i64 = k
        .trim()
        .parse()
        .map_err(|e| Error::Parse(format!("bad k in '{s}': {e}")))?;
    let l: i64 = l
        .trim()
        .parse()
        .map_err(|e| Error::Parse(format!("bad l in '{s}': {e}")))?;
    Ok(PhasePoint::wrap(k, l, len))
}
