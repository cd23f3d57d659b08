//! Model-spec files: a flat JSON description of one item.
//!
//! ```json
//! { "family": "cumulative", "link": "logistic", "k": 2, "params": [-1.0, 1.0] }
//! ```
//!
//! `params` holds the thresholds or steps for the cumulative, sequential,
//! adjacent, multidim and pcmrs families; slopes `α_0..α_k` followed by
//! locations `β_0..β_k` for `bock`; `δ⁽¹⁾, δ⁽²⁾, δ⁽³⁾` for `ir-tree` (k = 3).
//! `multidim` adds `D` and a `k × D` matrix `weights`; `table` carries
//! `knots` and a row-per-knot probability `table` and leaves `params` empty.

use std::path::Path;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::links::Link;
use crate::models::{
    AdjacentModel, BockModel, CumulativeModel, Family, IrTreeModel, Model, MultidimAdjacentModel,
    SequentialModel, TabulatedModel,
};

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ModelSpec {
    pub family: Family,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub link: Option<String>,
    pub k: usize,
    #[serde(default)]
    pub params: Vec<f64>,
    #[serde(default, rename = "D", skip_serializing_if = "Option::is_none")]
    pub dims: Option<usize>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub weights: Option<Vec<Vec<f64>>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub knots: Option<Vec<f64>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub table: Option<Vec<Vec<f64>>>,
}

impl ModelSpec {
    fn link(&self) -> Result<Link> {
        match &self.link {
            Some(name) => name.parse(),
            None => Err(Error::Spec(format!("family `{}` needs a link", self.family))),
        }
    }

    fn params(&self, what: &'static str, expected: usize) -> Result<Vec<f64>> {
        if self.params.len() != expected {
            return Err(Error::ArityMismatch {
                what,
                expected,
                found: self.params.len(),
            });
        }
        Ok(self.params.clone())
    }

    /// Validates the description and builds the model.
    pub fn build(&self) -> Result<Model> {
        let k = self.k;
        if k == 0 {
            return Err(Error::InvalidParameter("k must be at least 1".into()));
        }
        let model = match self.family {
            Family::Cumulative => {
                CumulativeModel::new(self.params("params", k)?, self.link()?)?.into()
            }
            Family::Sequential => {
                SequentialModel::new(self.params("params", k)?, self.link()?)?.into()
            }
            Family::Adjacent => AdjacentModel::new(self.params("params", k)?, self.link()?)?.into(),
            Family::Bock => {
                let p = self.params("params (slopes then locations)", 2 * (k + 1))?;
                let (a, b) = p.split_at(k + 1);
                BockModel::new(a.to_vec(), b.to_vec())?.into()
            }
            Family::IrTree => {
                if k != 3 {
                    return Err(Error::InvalidParameter(format!(
                        "ir-tree has exactly four categories (k = 3), got k = {k}"
                    )));
                }
                let p = self.params("params", 3)?;
                IrTreeModel::new(p[0], p[1], p[2], self.link()?)?.into()
            }
            Family::Multidim => {
                self.logistic_only()?;
                let weights = self
                    .weights
                    .clone()
                    .ok_or_else(|| Error::Spec("multidim needs `weights`".into()))?;
                let model = MultidimAdjacentModel::new(weights, self.params("params", k)?)?;
                if let Some(d) = self.dims {
                    if d != model.dims() {
                        return Err(Error::ArityMismatch {
                            what: "weight columns (D)",
                            expected: d,
                            found: model.dims(),
                        });
                    }
                }
                model.into()
            }
            Family::Pcmrs => {
                self.logistic_only()?;
                MultidimAdjacentModel::pcmrs(self.params("params", k)?)?.into()
            }
            Family::Table => {
                let knots = self
                    .knots
                    .clone()
                    .ok_or_else(|| Error::Spec("table needs `knots`".into()))?;
                let table = self
                    .table
                    .clone()
                    .ok_or_else(|| Error::Spec("table needs `table`".into()))?;
                let model = TabulatedModel::new(knots, table)?;
                if model.k() != k {
                    return Err(Error::ArityMismatch {
                        what: "table columns",
                        expected: k + 1,
                        found: model.k() + 1,
                    });
                }
                model.into()
            }
        };
        Ok(model)
    }

    fn logistic_only(&self) -> Result<()> {
        match self.link.as_deref() {
            None | Some("logistic") => Ok(()),
            Some(other) => {
                other.parse::<Link>()?;
                Err(Error::InvalidParameter(format!(
                    "family `{}` is logistic by construction, got link `{other}`",
                    self.family
                )))
            }
        }
    }

    pub fn from_json(text: &str) -> Result<Self> {
        Ok(serde_json::from_str(text)?)
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("model spec serializes")
    }
}

impl From<&Model> for ModelSpec {
    fn from(model: &Model) -> Self {
        let link = model.link().map(|l| l.name().to_string());
        let mut spec = ModelSpec {
            family: model.family(),
            link,
            k: model.k(),
            params: Vec::new(),
            dims: None,
            weights: None,
            knots: None,
            table: None,
        };
        match model {
            Model::Cumulative(m) => spec.params = m.thresholds().to_vec(),
            Model::Sequential(m) => spec.params = m.steps().to_vec(),
            Model::Adjacent(m) => spec.params = m.thresholds().to_vec(),
            Model::Bock(m) => {
                spec.params = m.slopes().iter().chain(m.locations()).copied().collect();
            }
            Model::IrTree(m) => spec.params = m.params().to_vec(),
            Model::Multidim(m) => {
                spec.params = m.thresholds().to_vec();
                if !m.is_response_style() {
                    spec.dims = Some(m.dims());
                    spec.weights = Some(m.weights().to_vec());
                }
            }
            Model::Table(m) => {
                spec.knots = Some(m.knots().to_vec());
                spec.table = Some(m.table().to_vec());
            }
        }
        spec
    }
}

impl From<Model> for ModelSpec {
    fn from(model: Model) -> Self {
        ModelSpec::from(&model)
    }
}

impl TryFrom<ModelSpec> for Model {
    type Error = Error;

    fn try_from(spec: ModelSpec) -> Result<Self> {
        spec.build()
    }
}

impl Model {
    pub fn from_json(text: &str) -> Result<Self> {
        ModelSpec::from_json(text)?.build()
    }

    pub fn to_json(&self) -> String {
        ModelSpec::from(self).to_json()
    }

    pub fn load(path: impl AsRef<Path>) -> Result<Self> {
        let path = path.as_ref();
        let text = std::fs::read_to_string(path)
            .map_err(|e| Error::Io(format!("{}: {e}", path.display())))?;
        Self::from_json(&text)
    }
}
