//! JSON problem files.

use std::path::Path;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::reducible::ReducibilityData;
use crate::superalgebra::{GeneratorTable, SuperElement};
use crate::symplectic::{ConstraintSystem, PhaseSpace};

use super::parse_polynomial;

#[derive(Clone, Debug, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct PhaseSpaceDecl {
    pub n: usize,
    /// `2n` names, positions first then their momenta.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub coordinate_names: Option<Vec<String>>,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ReducibilityDecl {
    /// `Z[k−1][a_k][a_{k−1}]`
    #[serde(rename = "Z")]
    pub z: Vec<Vec<Vec<String>>>,
    /// `C[k−2][a_k][a_{k−2}][a_0]`
    #[serde(rename = "C", default)]
    pub c: Vec<Vec<Vec<Vec<String>>>>,
    /// `ε` per level including level 0; all even when omitted.
    #[serde(default)]
    pub parities: Option<Vec<Vec<u32>>>,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct RunSettings {
    #[serde(default = "default_max_order")]
    pub max_order: usize,
    #[serde(default = "default_bound")]
    pub z_degree_bound: u32,
    #[serde(default = "default_ghost_numbers")]
    pub ghost_numbers: Vec<i64>,
}

fn default_max_order() -> usize {
    3
}

fn default_bound() -> u32 {
    4
}

fn default_ghost_numbers() -> Vec<i64> {
    vec![0]
}

impl Default for RunSettings {
    fn default() -> Self {
        RunSettings {
            max_order: default_max_order(),
            z_degree_bound: default_bound(),
            ghost_numbers: default_ghost_numbers(),
        }
    }
}

#[derive(Clone, Debug, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ProblemFile {
    pub phase_space: PhaseSpaceDecl,
    pub constraints: Vec<String>,
    /// `structure_functions[a][b][c] = C^c_{ab}`.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub structure_functions: Option<Vec<Vec<Vec<String>>>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub reducibility: Option<ReducibilityDecl>,
    #[serde(default)]
    pub run: RunSettings,
}

impl ProblemFile {
    pub fn from_json(src: &str) -> Result<Self> {
        Ok(serde_json::from_str(src)?)
    }

    pub fn load(path: &Path) -> Result<Self> {
        Self::from_json(&std::fs::read_to_string(path)?)
    }

    fn coordinate_names(&self) -> Result<Vec<String>> {
        let n = self.phase_space.n;
        match &self.phase_space.coordinate_names {
            Some(names) if names.len() != 2 * n => Err(Error::Invalid(format!(
                "coordinate_names has {} entries, expected {}",
                names.len(),
                2 * n
            ))),
            Some(names) => Ok(names.clone()),
            None => Ok((1..=n).map(|i| format!("x{i}")).chain((1..=n).map(|i| format!("p{i}"))).collect()),
        }
    }

    /// The constraint system; structure functions are solved for at
    /// `bound` when the file leaves them out.
    pub fn system(&self, bound: u32) -> Result<ConstraintSystem> {
        let m = self.constraints.len();
        let mut b = GeneratorTable::builder();
        for name in self.coordinate_names()? {
            b = b.coordinate(name);
        }
        for a in 1..=m {
            b = b.antighost(format!("P{a}")).ghost(format!("eta{a}"));
        }
        let space = PhaseSpace::from_table(b.build()?)?;
        let t = space.table();
        let g = parse_all(&self.constraints, t)?;
        match &self.structure_functions {
            None => ConstraintSystem::with_solved_structure(space, g, bound),
            Some(c) => {
                let shape_ok = c.len() == m && c.iter().all(|r| r.len() == m && r.iter().all(|s| s.len() == m));
                if !shape_ok {
                    return Err(Error::Invalid(format!("structure_functions must be {m}x{m}x{m}")));
                }
                let c = c
                    .iter()
                    .map(|r| r.iter().map(|s| parse_all(s, t)).collect::<Result<Vec<_>>>())
                    .collect::<Result<Vec<_>>>()?;
                ConstraintSystem::new(space, g, c)
            }
        }
    }

    /// Reducibility data with its table (ghosts of ghosts included) and
    /// the constraints parsed over that table.
    pub fn reducibility(&self) -> Result<Option<(GeneratorTable, Vec<SuperElement>, ReducibilityData)>> {
        let Some(decl) = &self.reducibility else { return Ok(None) };
        let mut counts = vec![self.constraints.len()];
        counts.extend(decl.z.iter().map(Vec::len));
        let parities = decl
            .parities
            .clone()
            .unwrap_or_else(|| counts.iter().map(|&m| vec![0; m]).collect());
        let mut rd = ReducibilityData {
            counts,
            parities,
            ..Default::default()
        };
        rd.validate_counts()?;
        let t = rd.table_with_coordinates(&self.coordinate_names()?)?;
        rd.z = decl
            .z
            .iter()
            .map(|l| l.iter().map(|r| parse_all(r, &t)).collect::<Result<Vec<_>>>())
            .collect::<Result<_>>()?;
        rd.c = decl
            .c
            .iter()
            .map(|l| {
                l.iter()
                    .map(|r| r.iter().map(|s| parse_all(s, &t)).collect::<Result<Vec<_>>>())
                    .collect::<Result<Vec<_>>>()
            })
            .collect::<Result<_>>()?;
        rd.validate()?;
        let g = parse_all(&self.constraints, &t)?;
        Ok(Some((t, g, rd)))
    }
}

fn parse_all(src: &[String], t: &GeneratorTable) -> Result<Vec<SuperElement>> {
    src.iter().map(|s| parse_polynomial(s, t)).collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn so3_from_json() {
        let src = r#"{
            "phase_space": {"n": 3},
            "constraints": ["x2*p3 - x3*p2", "x3*p1 - x1*p3", "x1*p2 - x2*p1"]
        }"#;
        let cs = ProblemFile::from_json(src).unwrap().system(2).unwrap();
        assert!(cs.verify_first_class().passed());
        assert!(cs.has_constant_structure());
        let fx = crate::fixtures::so3();
        for a in 0..3 {
            for b in 0..3 {
                for c in 0..3 {
                    assert_eq!(cs.structure(a, b, c), fx.structure(a, b, c));
                }
            }
        }
    }

    #[test]
    fn custom_names_and_errors() {
        let src = r#"{"phase_space": {"n": 1, "coordinate_names": ["q", "k"]}, "constraints": ["k"],
                      "run": {"max_order": 1}}"#;
        let pf = ProblemFile::from_json(src).unwrap();
        assert_eq!(pf.run.z_degree_bound, 4);
        assert_eq!(pf.system(2).unwrap().table().name(pf.system(2).unwrap().table().coordinates()[0]), "q");
        let bad = r#"{"phase_space": {"n": 1}, "constraints": ["p1 +"]}"#;
        assert!(matches!(ProblemFile::from_json(bad).unwrap().system(2), Err(Error::Syntax { .. })));
        let bad = r#"{"phase_space": {"n": 1}, "constraints": ["p1"], "structure_functions": [[["0"], ["0"]]]}"#;
        assert!(matches!(ProblemFile::from_json(bad).unwrap().system(2), Err(Error::Invalid(_))));
        assert!(matches!(ProblemFile::from_json("{"), Err(Error::Json(_))));
        assert!(matches!(
            ProblemFile::from_json(r#"{"phase_space": {"n": 1}, "constraints": [], "extra": 1}"#),
            Err(Error::Json(_))
        ));
    }

    #[test]
    fn reducibility_block() {
        let src = r#"{"phase_space": {"n": 1}, "constraints": ["p1", "p1"],
                      "reducibility": {"Z": [[["1", "-1"]]]}}"#;
        let (t, g, rd) = ProblemFile::from_json(src).unwrap().reducibility().unwrap().unwrap();
        assert_eq!(rd.counts, vec![2, 1]);
        assert_eq!(t.name(t.higher_ghosts(1)[0]), "eta1_1");
        assert!(crate::reducible::verify_reducibility(&g, &rd).unwrap().passed());
    }
}
