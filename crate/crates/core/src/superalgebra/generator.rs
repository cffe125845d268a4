use std::collections::HashMap;
use std::fmt;

use serde::Serialize;

use crate::error::{Error, Result};

/// Z/2 grading.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub enum Parity {
    Even,
    Odd,
}

impl Parity {
    pub fn from_count(n: usize) -> Self {
        if n % 2 == 0 {
            Parity::Even
        } else {
            Parity::Odd
        }
    }

    pub fn is_odd(self) -> bool {
        self == Parity::Odd
    }

    /// Sum in Z/2.
    pub fn add(self, other: Parity) -> Parity {
        if self == other {
            Parity::Even
        } else {
            Parity::Odd
        }
    }

    pub fn as_int(self) -> i64 {
        match self {
            Parity::Even => 0,
            Parity::Odd => 1,
        }
    }
}

/// Index of a generator inside its [`GeneratorTable`].
///
/// Ids follow the global canonical order: coordinates, then antighosts,
/// then ghosts, then higher ghosts by level.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub struct GenId(pub u32);

impl GenId {
    pub fn index(self) -> usize {
        self.0 as usize
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub enum GeneratorKind {
    /// Phase-space coordinate z^λ.
    Coordinate { index: usize },
    /// Antighost P_a.
    Antighost { index: usize },
    /// Ghost η^a (level zero).
    Ghost { index: usize },
    /// Ghost of ghost η^{a_k}, level k ≥ 1.
    HigherGhost { level: usize, index: usize },
}

impl GeneratorKind {
    fn block(&self) -> (usize, usize) {
        match *self {
            GeneratorKind::Coordinate { .. } => (0, 0),
            GeneratorKind::Antighost { .. } => (1, 0),
            GeneratorKind::Ghost { .. } => (2, 0),
            GeneratorKind::HigherGhost { level, .. } => (3, level),
        }
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct Generator {
    pub name: String,
    pub kind: GeneratorKind,
    pub parity: Parity,
    pub pure_ghost: u32,
    pub anti_ghost: u32,
    pub aux: u32,
}

impl Generator {
    pub fn is_coordinate(&self) -> bool {
        matches!(self.kind, GeneratorKind::Coordinate { .. })
    }

    /// Ghost-number contribution, pure ghost minus antighost.
    pub fn ghost_number(&self) -> i64 {
        self.pure_ghost as i64 - self.anti_ghost as i64
    }
}

/// The declared generators of a graded algebra, in canonical order.
#[derive(Clone, Debug)]
pub struct GeneratorTable {
    gens: Vec<Generator>,
    by_name: HashMap<String, GenId>,
    coordinates: Vec<GenId>,
    antighosts: Vec<GenId>,
    ghosts: Vec<GenId>,
    higher: Vec<Vec<GenId>>,
}

impl GeneratorTable {
    pub fn builder() -> TableBuilder {
        TableBuilder::default()
    }

    /// Phase space R^{2n} with coordinates `x1..xn, p1..pn`, plus `m` ghost
    /// pairs named `P1..Pm` and `eta1..etam`.
    pub fn phase_space(n: usize, m: usize) -> Self {
        let mut b = Self::builder();
        for i in 1..=n {
            b = b.coordinate(format!("x{i}"));
        }
        for i in 1..=n {
            b = b.coordinate(format!("p{i}"));
        }
        for a in 1..=m {
            b = b.antighost(format!("P{a}"));
        }
        for a in 1..=m {
            b = b.ghost(format!("eta{a}"));
        }
        b.build().expect("standard names are unique")
    }

    pub fn len(&self) -> usize {
        self.gens.len()
    }

    pub fn is_empty(&self) -> bool {
        self.gens.is_empty()
    }

    pub fn get(&self, id: GenId) -> &Generator {
        &self.gens[id.index()]
    }

    pub fn try_get(&self, id: GenId) -> Result<&Generator> {
        self.gens
            .get(id.index())
            .ok_or_else(|| Error::UnknownGenerator(format!("#{}", id.0)))
    }

    pub fn lookup(&self, name: &str) -> Option<GenId> {
        self.by_name.get(name).copied()
    }

    pub fn name(&self, id: GenId) -> &str {
        &self.gens[id.index()].name
    }

    pub fn ids(&self) -> impl Iterator<Item = GenId> + '_ {
        (0..self.gens.len() as u32).map(GenId)
    }

    pub fn coordinates(&self) -> &[GenId] {
        &self.coordinates
    }

    pub fn antighosts(&self) -> &[GenId] {
        &self.antighosts
    }

    pub fn ghosts(&self) -> &[GenId] {
        &self.ghosts
    }

    /// Higher ghosts at `level` (1-based); empty when the level is absent.
    pub fn higher_ghosts(&self, level: usize) -> &[GenId] {
        level
            .checked_sub(1)
            .and_then(|l| self.higher.get(l))
            .map(Vec::as_slice)
            .unwrap_or(&[])
    }

    pub fn higher_levels(&self) -> usize {
        self.higher.len()
    }

    pub fn ghost(&self, a: usize) -> GenId {
        self.ghosts[a]
    }

    pub fn antighost(&self, a: usize) -> GenId {
        self.antighosts[a]
    }

    pub fn is_odd(&self, id: GenId) -> bool {
        self.get(id).parity.is_odd()
    }
}

struct Pending {
    name: String,
    kind: GeneratorKind,
    epsilon: u32,
}

#[derive(Default)]
pub struct TableBuilder {
    pending: Vec<Pending>,
    counts: HashMap<(usize, usize), usize>,
}

impl TableBuilder {
    fn push(mut self, name: String, make: impl FnOnce(usize) -> GeneratorKind, block: (usize, usize), epsilon: u32) -> Self {
        let slot = self.counts.entry(block).or_insert(0);
        let kind = make(*slot);
        *slot += 1;
        self.pending.push(Pending { name, kind, epsilon });
        self
    }

    pub fn coordinate(self, name: impl Into<String>) -> Self {
        self.push(name.into(), |index| GeneratorKind::Coordinate { index }, (0, 0), 0)
    }

    pub fn antighost(self, name: impl Into<String>) -> Self {
        self.push(name.into(), |index| GeneratorKind::Antighost { index }, (1, 0), 0)
    }

    pub fn ghost(self, name: impl Into<String>) -> Self {
        self.push(name.into(), |index| GeneratorKind::Ghost { index }, (2, 0), 0)
    }

    /// Ghost of ghost at `level ≥ 1` attached to a reducibility function of
    /// Grassmann parity `epsilon`.
    pub fn higher_ghost(self, name: impl Into<String>, level: usize, epsilon: u32) -> Self {
        assert!(level >= 1, "higher ghosts start at level 1");
        self.push(
            name.into(),
            move |index| GeneratorKind::HigherGhost { level, index },
            (3, level),
            epsilon,
        )
    }

    pub fn build(self) -> Result<GeneratorTable> {
        let mut pending = self.pending;
        // stable: keeps insertion order inside each block
        pending.sort_by_key(|p| p.kind.block());

        let mut gens = Vec::with_capacity(pending.len());
        let mut by_name = HashMap::new();
        let mut coordinates = Vec::new();
        let mut antighosts = Vec::new();
        let mut ghosts = Vec::new();
        let mut higher: Vec<Vec<GenId>> = Vec::new();

        for (i, p) in pending.into_iter().enumerate() {
            let id = GenId(i as u32);
            if by_name.insert(p.name.clone(), id).is_some() {
                return Err(Error::Invalid(format!("duplicate generator name `{}`", p.name)));
            }
            let (parity, pure_ghost, anti_ghost, aux) = match p.kind {
                GeneratorKind::Coordinate { .. } => {
                    coordinates.push(id);
                    (Parity::Even, 0, 0, 0)
                }
                GeneratorKind::Antighost { .. } => {
                    antighosts.push(id);
                    (Parity::Odd, 0, 1, 0)
                }
                GeneratorKind::Ghost { .. } => {
                    ghosts.push(id);
                    (Parity::Odd, 1, 0, 0)
                }
                GeneratorKind::HigherGhost { level, .. } => {
                    if higher.len() < level {
                        higher.resize(level, Vec::new());
                    }
                    higher[level - 1].push(id);
                    let parity = Parity::from_count((p.epsilon as usize + level + 1) % 2);
                    (parity, level as u32 + 1, 0, level as u32)
                }
            };
            gens.push(Generator {
                name: p.name,
                kind: p.kind,
                parity,
                pure_ghost,
                anti_ghost,
                aux,
            });
        }
        if higher.iter().any(Vec::is_empty) {
            return Err(Error::Invalid("higher-ghost levels must be contiguous".into()));
        }
        Ok(GeneratorTable {
            gens,
            by_name,
            coordinates,
            antighosts,
            ghosts,
            higher,
        })
    }
}

impl fmt::Display for GeneratorTable {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let names: Vec<&str> = self.gens.iter().map(|g| g.name.as_str()).collect();
        write!(f, "[{}]", names.join(", "))
    }
}
