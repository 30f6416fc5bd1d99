use num_bigint::BigInt;
use serde::{Deserialize, Serialize};

use super::Family;
use crate::algebra::{alphabet, BaseRing, FreeAlgebra};
use crate::error::{Error, Result};

/// JSON form of a family, e.g. `{"kind": "scaled", "k": 2}`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "kebab-case", deny_unknown_fields)]
pub enum FamilyDescriptor {
    Regular {
        ring: BaseRing,
    },
    Double {
        ring: BaseRing,
    },
    Scaled {
        k: u64,
    },
    TensorFree {
        #[serde(rename = "A_gens")]
        a_gens: Vec<String>,
        #[serde(rename = "B_gens")]
        b_gens: Vec<String>,
    },
    HnnFree {
        gens: Vec<String>,
    },
}

/// Name of the extra generator of the `hnn-free` oracle ring.
pub(crate) const HNN_VARIABLE: &str = "x";

impl FamilyDescriptor {
    pub fn parse(json: &str) -> Result<Self> {
        serde_json::from_str(json).map_err(|e| Error::Schema(e.to_string()))
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string(self).expect("descriptor serializes")
    }

    pub fn build(&self) -> Result<Family> {
        Ok(match self {
            FamilyDescriptor::Regular { ring } => Family::Regular(*ring),
            FamilyDescriptor::Double { ring } => Family::Double(*ring),
            FamilyDescriptor::Scaled { k } => {
                if *k < 2 {
                    return Err(Error::Schema(format!("scaled family needs k >= 2, got {k}")));
                }
                Family::Scaled(BigInt::from(*k))
            }
            FamilyDescriptor::TensorFree { a_gens, b_gens } => {
                if let Some(g) = a_gens.iter().find(|g| b_gens.contains(g)) {
                    return Err(Error::Schema(format!("generator {g:?} appears in both A_gens and B_gens")));
                }
                Family::TensorFree {
                    left: FreeAlgebra::new(BaseRing::Q, alphabet(a_gens))?,
                    right: FreeAlgebra::new(BaseRing::Q, alphabet(b_gens))?,
                }
            }
            FamilyDescriptor::HnnFree { gens } => {
                if gens.iter().any(|g| g == HNN_VARIABLE) {
                    return Err(Error::Schema(format!("generator name {HNN_VARIABLE:?} is reserved")));
                }
                Family::HnnFree(FreeAlgebra::new(BaseRing::Q, alphabet(gens))?)
            }
        })
    }

    pub(super) fn of(family: &Family) -> Self {
        let names = |a: &FreeAlgebra| a.alphabet().iter().cloned().collect::<Vec<_>>();
        match family {
            Family::Regular(ring) => FamilyDescriptor::Regular { ring: *ring },
            Family::Double(ring) => FamilyDescriptor::Double { ring: *ring },
            Family::Scaled(k) => FamilyDescriptor::Scaled {
                k: u64::try_from(k).expect("scaled base fits in u64"),
            },
            Family::TensorFree { left, right } => FamilyDescriptor::TensorFree {
                a_gens: names(left),
                b_gens: names(right),
            },
            Family::HnnFree(a) => FamilyDescriptor::HnnFree { gens: names(a) },
        }
    }
}
