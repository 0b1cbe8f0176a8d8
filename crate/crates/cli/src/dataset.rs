//! The JSON dataset format and its exact parser.
//!
//! Schema:
//!
//! ```json
//! {
//!   "half_dim": 2,
//!   "points": [
//!     {"label": "p0", "moment": "-2", "weights": [1, 2]},
//!     {"label": "p1", "moment": "-1", "weights": [-1, 1]},
//!     {"label": "p2", "moment": "0",  "weights": [-2, -1]}
//!   ],
//!   "classes": [
//!     {"name": "p1", "degree": 2, "restrictions": {"p0": "0", "p1": "-1", "p2": "-2"}}
//!   ]
//! }
//! ```
//!
//! Rationals are strings (`"p/q"` or an integer), never JSON numbers, so
//! reports and datasets round-trip byte-exactly. A class restriction is a
//! single coefficient per point; the `u`-power is implied by the class
//! degree. Labels absent from a restriction map are taken as zero. The
//! `classes` field is optional: a dataset without it is in minimal mode.

use hamfix::{
    format_rat, parse_rat, CanonicalBasis, ClassRestrictions, FixedPoint, FixedPointSet, Rat,
};
use serde::{Deserialize, Serialize};
use sha2::{Digest, Sha256};
use std::collections::{BTreeMap, BTreeSet};

#[derive(Serialize, Deserialize)]
struct DatasetJson {
    half_dim: usize,
    points: Vec<PointJson>,
    #[serde(skip_serializing_if = "Option::is_none")]
    classes: Option<Vec<ClassJson>>,
}

#[derive(Serialize, Deserialize)]
struct PointJson {
    label: String,
    moment: String,
    weights: Vec<i64>,
}

#[derive(Serialize, Deserialize)]
struct ClassJson {
    name: String,
    degree: usize,
    restrictions: BTreeMap<String, String>,
}

/// A named restriction tuple from a full-mode dataset.
#[derive(Clone, Debug)]
pub struct NamedClass {
    pub name: String,
    pub class: ClassRestrictions,
}

/// A parsed dataset: fixed-point data plus, in full mode, named classes.
#[derive(Clone, Debug)]
pub struct Dataset {
    pub fps: FixedPointSet,
    pub classes: Option<Vec<NamedClass>>,
}

impl Dataset {
    pub fn minimal(fps: FixedPointSet) -> Self {
        Self { fps, classes: None }
    }

    pub fn full(fps: FixedPointSet, basis: &CanonicalBasis) -> Self {
        let classes = fps
            .points()
            .iter()
            .map(|p| NamedClass {
                name: p.label.clone(),
                class: basis.class(&p.label).expect("one class per point").clone(),
            })
            .collect();
        Self {
            fps,
            classes: Some(classes),
        }
    }

    pub fn named_class(&self, name: &str) -> Option<&ClassRestrictions> {
        self.classes
            .as_ref()?
            .iter()
            .find(|c| c.name == name)
            .map(|c| &c.class)
    }

    /// Interprets the classes as a canonical basis: exactly one class per
    /// fixed point, named by the point's label.
    pub fn basis(&self) -> Result<CanonicalBasis, String> {
        let classes = self
            .classes
            .as_ref()
            .ok_or_else(|| "dataset has no classes (minimal mode); this command needs full mode".to_owned())?;
        let names: BTreeSet<&str> = classes.iter().map(|c| c.name.as_str()).collect();
        for p in self.fps.points() {
            if !names.contains(p.label.as_str()) {
                return Err(format!("no class named after fixed point `{}`", p.label));
            }
        }
        if names.len() != self.fps.points().len() || classes.len() != names.len() {
            return Err("canonical mode needs exactly one class per fixed point, named by its label".to_owned());
        }
        Ok(CanonicalBasis::new(
            classes
                .iter()
                .map(|c| (c.name.clone(), c.class.clone()))
                .collect(),
        ))
    }

    /// Canonical serialization; identical datasets serialize to identical
    /// bytes.
    pub fn to_json(&self) -> String {
        let points = self
            .fps
            .points()
            .iter()
            .map(|p| PointJson {
                label: p.label.clone(),
                moment: format_rat(&p.moment),
                weights: p.weights.clone(),
            })
            .collect();
        let classes = self.classes.as_ref().map(|classes| {
            classes
                .iter()
                .map(|c| ClassJson {
                    name: c.name.clone(),
                    degree: c.class.degree(),
                    restrictions: c
                        .class
                        .coefficients()
                        .iter()
                        .map(|(l, v)| (l.clone(), format_rat(v)))
                        .collect(),
                })
                .collect()
        });
        let doc = DatasetJson {
            half_dim: self.fps.half_dim(),
            points,
            classes,
        };
        let mut out = serde_json::to_string_pretty(&doc).expect("serializable");
        out.push('\n');
        out
    }

    /// SHA-256 of the canonical serialization.
    pub fn digest(&self) -> String {
        let mut hasher = Sha256::new();
        hasher.update(self.to_json().as_bytes());
        format!("sha256:{}", hex::encode(hasher.finalize()))
    }
}

/// Parses and type-checks a dataset document. Errors carry the JSON path
/// of the offending field.
pub fn parse_dataset(text: &str) -> Result<Dataset, String> {
    let doc: DatasetJson =
        serde_json::from_str(text).map_err(|e| format!("invalid dataset JSON: {e}"))?;
    let mut seen = BTreeSet::new();
    for (i, p) in doc.points.iter().enumerate() {
        if !seen.insert(p.label.as_str()) {
            return Err(format!("points[{i}].label: duplicate label `{}`", p.label));
        }
    }
    let mut points = Vec::with_capacity(doc.points.len());
    for (i, p) in doc.points.iter().enumerate() {
        let moment: Rat = parse_rat(&p.moment)
            .map_err(|_| format!("points[{i}].moment: malformed rational `{}`", p.moment))?;
        if p.weights.len() != doc.half_dim {
            return Err(format!(
                "points[{i}].weights: expected {} weights at `{}`, found {}",
                doc.half_dim,
                p.label,
                p.weights.len()
            ));
        }
        if let Some(j) = p.weights.iter().position(|&w| w == 0) {
            return Err(format!(
                "points[{i}].weights[{j}]: zero weight at `{}`",
                p.label
            ));
        }
        points.push(FixedPoint::new(p.label.clone(), moment, p.weights.clone()));
    }
    let fps = FixedPointSet::new(doc.half_dim, points);
    let labels = fps.label_set();

    let classes = match doc.classes {
        None => None,
        Some(raw) => {
            let mut out = Vec::with_capacity(raw.len());
            let mut names = BTreeSet::new();
            for (i, c) in raw.iter().enumerate() {
                if !names.insert(c.name.as_str()) {
                    return Err(format!("classes[{i}].name: duplicate class name `{}`", c.name));
                }
                if c.degree % 2 != 0 {
                    return Err(format!("classes[{i}].degree: odd degree {}", c.degree));
                }
                let mut coeffs: BTreeMap<String, Rat> = BTreeMap::new();
                for (label, value) in &c.restrictions {
                    if !labels.contains(label) {
                        return Err(format!(
                            "classes[{i}].restrictions.{label}: unknown label `{label}`"
                        ));
                    }
                    let v = parse_rat(value).map_err(|_| {
                        format!("classes[{i}].restrictions.{label}: malformed rational `{value}`")
                    })?;
                    coeffs.insert(label.clone(), v);
                }
                // absent labels are zero; store densely
                for l in &labels {
                    coeffs.entry(l.clone()).or_insert_with(|| hamfix::rat(0));
                }
                let class = ClassRestrictions::from_coefficients(c.degree, coeffs)
                    .map_err(|e| format!("classes[{i}]: {e}"))?;
                out.push(NamedClass {
                    name: c.name.clone(),
                    class,
                });
            }
            Some(out)
        }
    };
    Ok(Dataset { fps, classes })
}
