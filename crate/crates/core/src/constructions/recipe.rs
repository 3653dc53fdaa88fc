use serde::{Deserialize, Serialize};

use super::{
    arithmetic_progression, base_power, delta_set_with_bounds, extend, BasePowerParams,
    SearchBounds,
};
use crate::error::{Error, Result};
use crate::setcore::IntSet;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum RecipeKind {
    /// A set given verbatim; `parameters` are its elements.
    Literal,
    /// `[k, start, step]`.
    Ap,
    /// `[b]`, provenance `[A]`: `A ∪ {b}`.
    Extension,
    /// `[m, n]`, provenance `[digit set]`.
    BasePower,
    /// `[x]` for the closed-form cases, `[x, max_diameter, max_k, budget]`
    /// when the set came from the bounded search.
    DeltaSet,
    /// `[m, n, t]`, provenance `[seed]`: the `t`-th one-point extension of
    /// the base-`m` power set of the seed.
    Theorem1Witness,
}

/// How a set was produced. Replaying a recipe recomputes the set from
/// scratch, including every verification step of the original run.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ConstructionRecipe {
    pub kind: RecipeKind,
    pub parameters: Vec<i64>,
    #[serde(default)]
    pub provenance: Vec<ConstructionRecipe>,
}

impl ConstructionRecipe {
    pub fn literal(set: &IntSet) -> Self {
        ConstructionRecipe {
            kind: RecipeKind::Literal,
            parameters: set.to_vec(),
            provenance: Vec::new(),
        }
    }

    pub fn new(
        kind: RecipeKind,
        parameters: Vec<i64>,
        provenance: Vec<ConstructionRecipe>,
    ) -> Self {
        ConstructionRecipe {
            kind,
            parameters,
            provenance,
        }
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string(self).expect("recipes always serialize")
    }

    pub fn from_json(text: &str) -> Result<Self> {
        serde_json::from_str(text).map_err(|e| Error::Recipe(e.to_string()))
    }

    fn params<const N: usize>(&self) -> Result<[i64; N]> {
        self.parameters.as_slice().try_into().map_err(|_| {
            Error::Recipe(format!(
                "{:?} expects {N} parameters, got {}",
                self.kind,
                self.parameters.len()
            ))
        })
    }

    fn parent(&self) -> Result<IntSet> {
        match self.provenance.as_slice() {
            [p] => p.replay(),
            _ => Err(Error::Recipe(format!(
                "{:?} expects exactly one parent recipe",
                self.kind
            ))),
        }
    }

    pub fn replay(&self) -> Result<IntSet> {
        match self.kind {
            RecipeKind::Literal => IntSet::new(&self.parameters),
            RecipeKind::Ap => {
                let [k, start, step] = self.params()?;
                arithmetic_progression(to_u32(k, "k")?, start, step)
            }
            RecipeKind::Extension => {
                let [b] = self.params()?;
                extend(&self.parent()?, b)
            }
            RecipeKind::BasePower => {
                let [m, n] = self.params()?;
                base_power(&BasePowerParams::new(self.parent()?, m, to_u32(n, "n")?)?)
            }
            RecipeKind::DeltaSet => match self.parameters.as_slice() {
                [x] => delta_set_with_bounds(*x, &SearchBounds::default()).map(|(s, _)| s),
                [x, max_diameter, max_k, budget] => {
                    let bounds = SearchBounds {
                        max_diameter: to_u32(*max_diameter, "max_diameter")?,
                        max_k: to_u32(*max_k, "max_k")?,
                        budget: u64::try_from(*budget)
                            .map_err(|_| Error::Recipe("negative budget".into()))?,
                        threads: 0,
                    };
                    delta_set_with_bounds(*x, &bounds).map(|(s, _)| s)
                }
                _ => Err(Error::Recipe("delta_set expects 1 or 4 parameters".into())),
            },
            RecipeKind::Theorem1Witness => {
                let [m, n, t] = self.params()?;
                let params = BasePowerParams::new(self.parent()?, m, to_u32(n, "n")?)?;
                let base = base_power(&params)?;
                let top = base.max_element().ok_or(Error::EmptySet)?;
                let b = top
                    .checked_mul(2)
                    .and_then(|v| v.checked_add(1 + t))
                    .ok_or(Error::Overflow("successor element"))?;
                extend(&base, b)
            }
        }
    }
}

fn to_u32(v: i64, name: &str) -> Result<u32> {
    u32::try_from(v).map_err(|_| Error::Recipe(format!("{name} out of range: {v}")))
}
