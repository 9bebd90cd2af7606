//! JSON forms of modules, signed sequences and census rows.

use std::collections::BTreeMap;
use std::sync::Arc;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::exceptional::{SignedObject, SignedSequence};
use crate::linalg::Matrix;
use crate::module::Representation;
use crate::quiver::Algebra;
use crate::strat::TableRow;
use crate::universe::Universe;

/// `{"dim_vector": [..], "arrows": {"a": [[..], ..], ..}}`; each arrow
/// matrix is `dim(target) × dim(source)`, row-major.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ModuleJson {
    pub dim_vector: Vec<usize>,
    pub arrows: BTreeMap<String, Vec<Vec<u32>>>,
}

impl ModuleJson {
    pub fn from_module(m: &Representation) -> Self {
        let arrows = m
            .algebra()
            .arrows()
            .iter()
            .zip(m.maps())
            .map(|(a, mat)| {
                let rows = (0..mat.rows())
                    .map(|r| (0..mat.cols()).map(|c| mat.get(r, c)).collect())
                    .collect();
                (a.name.clone(), rows)
            })
            .collect();
        ModuleJson {
            dim_vector: m.dims().to_vec(),
            arrows,
        }
    }

    pub fn to_module(&self, algebra: &Arc<Algebra>) -> Result<Representation> {
        let n = algebra.vertex_count();
        if self.dim_vector.len() != n {
            return Err(Error::InvalidModule(format!(
                "dimension vector has {} entries, algebra has {n} vertices",
                self.dim_vector.len()
            )));
        }
        for name in self.arrows.keys() {
            if algebra.quiver().arrow_index(name).is_none() {
                return Err(Error::InvalidModule(format!("unknown arrow `{name}`")));
            }
        }
        let f = algebra.field();
        let maps = algebra
            .arrows()
            .iter()
            .map(|a| {
                let (rows, cols) = (self.dim_vector[a.target], self.dim_vector[a.source]);
                match self.arrows.get(&a.name) {
                    None => Ok(Matrix::zeros(f, rows, cols)),
                    Some(data) => {
                        let shape_ok = data.len() == rows && data.iter().all(|r| r.len() == cols);
                        if !shape_ok {
                            return Err(Error::InvalidModule(format!(
                                "arrow `{}` needs a {rows}×{cols} matrix",
                                a.name
                            )));
                        }
                        let flat = data.iter().flatten().map(|&x| f.reduce(x as i64)).collect();
                        Ok(Matrix::new(f, rows, cols, flat))
                    }
                }
            })
            .collect::<Result<_>>()?;
        Representation::new(algebra.clone(), self.dim_vector.clone(), maps)
    }
}

pub fn module_to_json(m: &Representation) -> String {
    serde_json::to_string(&ModuleJson::from_module(m)).expect("module serializes")
}

pub fn module_from_json(algebra: &Arc<Algebra>, text: &str) -> Result<Representation> {
    let parsed: ModuleJson =
        serde_json::from_str(text).map_err(|e| Error::InvalidModule(format!("module JSON: {e}")))?;
    parsed.to_module(algebra)
}

/// One entry of a signed sequence; `shifted` marks a projective `P[1]`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct SignedEntryJson {
    pub module: ModuleJson,
    pub shifted: bool,
}

pub fn sequence_to_json(seq: &SignedSequence) -> Result<String> {
    let entries = seq
        .entries
        .iter()
        .map(|e| {
            if e.is_shifted() && !e.module.is_zero() {
                return Err(Error::Unsupported("entries with both a module and a shifted part".into()));
            }
            Ok(if e.is_shifted() {
                SignedEntryJson {
                    module: ModuleJson::from_module(&e.shifted),
                    shifted: true,
                }
            } else {
                SignedEntryJson {
                    module: ModuleJson::from_module(&e.module),
                    shifted: false,
                }
            })
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(serde_json::to_string_pretty(&entries).expect("sequence serializes"))
}

pub fn sequence_from_json(algebra: &Arc<Algebra>, text: &str) -> Result<SignedSequence> {
    let parsed: Vec<SignedEntryJson> =
        serde_json::from_str(text).map_err(|e| Error::InvalidModule(format!("sequence JSON: {e}")))?;
    let entries = parsed
        .iter()
        .map(|e| {
            let m = e.module.to_module(algebra)?;
            Ok(if e.shifted {
                SignedObject::shifted(m)
            } else {
                SignedObject::unshifted(m)
            })
        })
        .collect::<Result<_>>()?;
    Ok(SignedSequence { entries })
}

/// A census row with universe indices replaced by names.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct TableRowJson {
    pub module: Vec<String>,
    pub orders: Vec<Vec<String>>,
    pub delta_systems: Vec<Vec<String>>,
    pub tf_proper: Vec<bool>,
    pub count_orders: usize,
    pub count_ordered: usize,
    pub count_unordered: usize,
    pub count_tfepss: usize,
}

impl TableRowJson {
    pub fn from_row(row: &TableRow, universe: &Universe) -> Self {
        let names = |v: &[usize]| v.iter().map(|&i| universe.name(i).to_string()).collect::<Vec<_>>();
        TableRowJson {
            module: names(&row.module),
            orders: row.orders.iter().map(|o| names(o)).collect(),
            delta_systems: row.delta_systems.iter().map(|d| names(d)).collect(),
            tf_proper: row.tf_proper.clone(),
            count_orders: row.count_orders,
            count_ordered: row.count_ordered,
            count_unordered: row.count_unordered,
            count_tfepss: row.count_tfepss,
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::hom::is_isomorphic;
    use crate::module::tests::cyclic;

    #[test]
    fn module_roundtrip() {
        let a = cyclic();
        let p1 = Representation::projective(&a, 0).unwrap();
        let text = module_to_json(&p1);
        let back = module_from_json(&a, &text).unwrap();
        assert_eq!(back.maps(), p1.maps());
        let s = module_from_json(&a, r#"{"dim_vector":[1,0,0],"arrows":{}}"#).unwrap();
        assert!(is_isomorphic(&s, &Representation::simple(&a, 0).unwrap()).unwrap());
    }

    #[test]
    fn rejects_bad_modules() {
        let a = cyclic();
        assert!(module_from_json(&a, r#"{"dim_vector":[1,1],"arrows":{}}"#).is_err());
        assert!(module_from_json(&a, r#"{"dim_vector":[1,1,0],"arrows":{"a":[[1,1]]}}"#).is_err());
        assert!(module_from_json(&a, r#"{"dim_vector":[1,1,0],"arrows":{"z":[[1]]}}"#).is_err());
        // abc acts nonzero on this module, violating the relations
        let bad = r#"{"dim_vector":[1,1,1],"arrows":{"a":[[1]],"b":[[1]],"c":[[1]]}}"#;
        assert!(module_from_json(&a, bad).is_err());
    }

    #[test]
    fn sequence_roundtrip() {
        let a = cyclic();
        let seq = SignedSequence {
            entries: vec![
                SignedObject::unshifted(Representation::simple(&a, 0).unwrap()),
                SignedObject::shifted(Representation::projective(&a, 2).unwrap()),
            ],
        };
        let text = sequence_to_json(&seq).unwrap();
        let back = sequence_from_json(&a, &text).unwrap();
        assert!(back.isomorphic_to(&seq).unwrap());
        assert!(back.entries[1].is_shifted());
    }
}
