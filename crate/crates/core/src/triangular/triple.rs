//! Left `R`-modules as triples `(N_A, N_B, f)` with `f: M (x)_B N_B -> N_A`.
//!
//! Only families whose `A = B` is `Z` or `Q` and whose `M` has a finite
//! left `A`-basis are supported. `f` is stored as one `nB x nA` matrix per
//! basis element `mu`: row `j` holds the coordinates of `f(mu (x) n_j)`.

use std::collections::BTreeMap;
use std::sync::Arc;

use num_bigint::BigInt;
use num_traits::{ToPrimitive, Zero};
use rand::Rng;
use serde::{Deserialize, Serialize};

use super::TriElement;
use crate::algebra::matrix::{mat_mul, zeros};
use crate::algebra::presentation::{apply, block_diag, hstack};
use crate::algebra::{parse_scalar, Matrix, Presentation, Scalar, ScalarRing};
use crate::error::{Error, Result};
use crate::family::{BaseAlgebra, BimElement, Family, FamilyDescriptor, RingElement};

/// A finitely presented module over `Z` or `Q`.
pub type FpModule = Presentation<ScalarRing>;

#[derive(Clone, Debug, PartialEq)]
pub struct TripleModule {
    family: Arc<Family>,
    ring: ScalarRing,
    basis: Vec<BimElement>,
    na: FpModule,
    nb: FpModule,
    f: Vec<Matrix<Scalar>>,
}

/// The scalar ring `A = B` and the `A`-basis of `M`, when module triples are
/// supported for `family`.
pub(crate) fn module_data(family: &Family) -> Result<(ScalarRing, Vec<BimElement>)> {
    let unsupported = || Error::Unsupported(format!("module triples over {}", family.label()));
    let (BaseAlgebra::Scalar(a), BaseAlgebra::Scalar(b)) = (family.a_ring(), family.b_ring()) else {
        return Err(unsupported());
    };
    if a != b {
        return Err(unsupported());
    }
    Ok((a, family.basis().ok_or_else(unsupported)?))
}

impl TripleModule {
    /// Builds the triple, checking that `f` respects the relations of `N_B`.
    pub fn new(family: Arc<Family>, na: FpModule, nb: FpModule, f: Vec<Matrix<Scalar>>) -> Result<Self> {
        let (ring, basis) = module_data(&family)?;
        if *na.ring() != ring || *nb.ring() != ring {
            return Err(Error::Schema(format!("module presentations must be over {}", ring.0)));
        }
        if f.len() != basis.len() {
            return Err(Error::DimensionMismatch(format!("{} f-blocks for a basis of size {}", f.len(), basis.len())));
        }
        for (block, mu) in f.iter().zip(&basis) {
            if block.rows() != nb.gens() || block.cols() != na.gens() {
                return Err(Error::DimensionMismatch(format!(
                    "f-block for {} is {}x{}, expected {}x{}",
                    family.format_bim(mu),
                    block.rows(),
                    block.cols(),
                    nb.gens(),
                    na.gens()
                )));
            }
            for e in block.entries() {
                ring.0.check(e)?;
            }
        }
        for e in na.rels().entries().iter().chain(nb.rels().entries()) {
            ring.0.check(e)?;
        }
        let triple = TripleModule { family, ring, basis, na, nb, f };
        triple.check_well_defined()?;
        Ok(triple)
    }

    fn check_well_defined(&self) -> Result<()> {
        if self.nb.rels().rows() == 0 {
            return Ok(());
        }
        let target = self.na.reduce()?;
        for mu in &self.basis {
            for (i, rel) in self.nb.rels().row_vecs().into_iter().enumerate() {
                let image = self.f_apply(mu, &rel)?;
                if !target.is_zero(&image) {
                    return Err(Error::IllDefined(format!(
                        "f({} (x) relation {i} of N_B) is not zero in N_A",
                        self.family.format_bim(mu)
                    )));
                }
            }
        }
        Ok(())
    }

    pub fn family(&self) -> &Arc<Family> {
        &self.family
    }

    pub fn ring(&self) -> ScalarRing {
        self.ring
    }

    pub fn basis(&self) -> &[BimElement] {
        &self.basis
    }

    pub fn na(&self) -> &FpModule {
        &self.na
    }

    pub fn nb(&self) -> &FpModule {
        &self.nb
    }

    /// The block of `f` for the `i`-th basis element.
    pub fn f(&self, i: usize) -> &Matrix<Scalar> {
        &self.f[i]
    }

    pub fn f_blocks(&self) -> &[Matrix<Scalar>] {
        &self.f
    }

    fn coordinates(&self, m: &BimElement) -> Result<Vec<Scalar>> {
        self.family.check_m(m)?;
        Ok(self.family.coordinates(m).expect("families with a basis have coordinates"))
    }

    /// `f(m (x) y)` for `y` a coefficient vector over the generators of `N_B`.
    pub fn f_apply(&self, m: &BimElement, y: &[Scalar]) -> Result<Vec<Scalar>> {
        if y.len() != self.nb.gens() {
            return Err(Error::DimensionMismatch(format!("{} coordinates for N_B of rank {}", y.len(), self.nb.gens())));
        }
        let mut out = vec![Scalar::zero(); self.na.gens()];
        for (j, yj) in y.iter().enumerate() {
            let my = self.family.right_act(m, &RingElement::Scalar(yj.clone()))?;
            for (c, block) in self.coordinates(&my)?.iter().zip(&self.f) {
                for (o, x) in out.iter_mut().zip(block.row(j)) {
                    *o += c * x;
                }
            }
        }
        Ok(out)
    }

    /// `(a, m, b) * (x, y) = (a x + f(m (x) y), b y)` on representatives.
    pub fn triple_action(&self, r: &TriElement, x: &[Scalar], y: &[Scalar]) -> Result<(Vec<Scalar>, Vec<Scalar>)> {
        if x.len() != self.na.gens() {
            return Err(Error::DimensionMismatch(format!("{} coordinates for N_A of rank {}", x.len(), self.na.gens())));
        }
        let scalar = |e: &RingElement| e.as_scalar().cloned().ok_or(Error::FamilyMismatch);
        let (a, b) = (scalar(&r.a)?, scalar(&r.b)?);
        let fm = self.f_apply(&r.m, y)?;
        let nx = x.iter().zip(&fm).map(|(xi, fi)| &a * xi + fi).collect();
        let ny = y.iter().map(|yj| &b * yj).collect();
        Ok((nx, ny))
    }

    /// `N (+) N'`.
    pub fn direct_sum(&self, other: &TripleModule) -> Result<TripleModule> {
        if self.family != other.family {
            return Err(Error::FamilyMismatch);
        }
        let r = &self.ring;
        let sum = |x: &FpModule, y: &FpModule| {
            Presentation::new(*r, x.gens() + y.gens(), block_diag(r, x.rels(), y.rels()))
        };
        let f = self.f.iter().zip(&other.f).map(|(x, y)| block_diag(r, x, y)).collect();
        TripleModule::new(self.family.clone(), sum(&self.na, &other.na)?, sum(&self.nb, &other.nb)?, f)
    }

    /// A seeded random triple with at most `max_gens` generators per side and
    /// relation entries bounded by `max_entry`. Blocks of `f` are built as
    /// `C R_A + V E` (with `V` from the Smith form of `R_B` and `E` supported
    /// on its free part), so `f` is well defined by construction.
    pub fn random<G: Rng + ?Sized>(family: Arc<Family>, rng: &mut G, max_gens: usize, max_entry: i64) -> Result<Self> {
        let (ring, basis) = module_data(&family)?;
        let entry = |rng: &mut G, bound: i64| Scalar::from_integer(BigInt::from(rng.gen_range(-bound..=bound)));
        let module = |rng: &mut G| -> Result<FpModule> {
            let gens = rng.gen_range(0..=max_gens);
            let rels = rng.gen_range(0..=gens);
            let data = (0..rels * gens).map(|_| entry(rng, max_entry)).collect();
            Presentation::new(ring, gens, Matrix::new(rels, gens, data)?)
        };
        let (na, nb) = (module(rng)?, module(rng)?);
        let nb_smith = nb.reduce()?;
        let smith = nb_smith.smith();
        let mut f = Vec::with_capacity(basis.len());
        for _ in &basis {
            let c = Matrix::new(nb.gens(), na.rels().rows(), (0..nb.gens() * na.rels().rows()).map(|_| entry(rng, 1)).collect())?;
            let mut e = zeros(&ring, nb.gens(), na.gens());
            for i in smith.rank..nb.gens() {
                for j in 0..na.gens() {
                    e.set(i, j, entry(rng, max_entry));
                }
            }
            let ve = mat_mul(&ring, &smith.v, &e)?;
            let block = if na.rels().rows() == 0 {
                ve
            } else {
                let cr = mat_mul(&ring, &c, na.rels())?;
                Matrix::new(nb.gens(), na.gens(), cr.entries().iter().zip(ve.entries()).map(|(x, y)| x + y).collect())?
            };
            f.push(block);
        }
        TripleModule::new(family, na, nb, f)
    }

    /// Parses the JSON form
    /// `{"family": .., "NA": {"gens": n, "rels": [[..]]}, "NB": {..}, "f": {"<basis literal>": [[..]]}}`.
    /// Missing `f` blocks are zero.
    pub fn from_json(json: &str) -> Result<Self> {
        let spec: TripleJson = serde_json::from_str(json).map_err(|e| Error::Schema(e.to_string()))?;
        let family = Arc::new(spec.family.build()?);
        let (ring, basis) = module_data(&family)?;
        let na = spec.na.presentation(ring, "NA")?;
        let nb = spec.nb.presentation(ring, "NB")?;
        let mut blocks: Vec<Option<Matrix<Scalar>>> = vec![None; basis.len()];
        for (key, rows) in &spec.f {
            let mu = family.parse_bim(key).map_err(|e| Error::Schema(format!("f key {key:?}: {e}")))?;
            let Some(i) = basis.iter().position(|b| *b == mu) else {
                return Err(Error::Schema(format!("f key {key:?} is not a basis element of M")));
            };
            let rows = entries(ring, rows, &format!("f[{key}]"))?;
            blocks[i] = Some(Matrix::from_rows(na.gens(), rows).map_err(|e| Error::Schema(format!("f[{key}]: {e}")))?);
        }
        let f = blocks.into_iter().map(|b| b.unwrap_or_else(|| zeros(&ring, nb.gens(), na.gens()))).collect();
        TripleModule::new(family, na, nb, f)
    }

    pub fn to_json(&self) -> String {
        let f = self
            .basis
            .iter()
            .zip(&self.f)
            .map(|(mu, block)| (self.family.format_bim(mu), to_entries(block)))
            .collect();
        let spec = TripleJson {
            family: self.family.descriptor(),
            na: PresentationJson::of(&self.na),
            nb: PresentationJson::of(&self.nb),
            f,
        };
        serde_json::to_string(&spec).expect("triple serializes")
    }
}

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct TripleJson {
    family: FamilyDescriptor,
    #[serde(rename = "NA")]
    na: PresentationJson,
    #[serde(rename = "NB")]
    nb: PresentationJson,
    #[serde(default)]
    f: BTreeMap<String, Vec<Vec<Entry>>>,
}

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct PresentationJson {
    gens: usize,
    #[serde(default)]
    rels: Vec<Vec<Entry>>,
}

/// A matrix entry: a JSON integer, or a string such as `"-3/4"` for values
/// outside `i64` or in `Q`.
#[derive(Serialize, Deserialize)]
#[serde(untagged)]
enum Entry {
    Int(i64),
    Text(String),
}

impl PresentationJson {
    fn presentation(&self, ring: ScalarRing, name: &str) -> Result<FpModule> {
        let rows = entries(ring, &self.rels, name)?;
        let rels = Matrix::from_rows(self.gens, rows).map_err(|e| Error::Schema(format!("{name}: {e}")))?;
        Presentation::new(ring, self.gens, rels)
    }

    fn of(p: &FpModule) -> Self {
        PresentationJson { gens: p.gens(), rels: to_entries(p.rels()) }
    }
}

fn entries(ring: ScalarRing, rows: &[Vec<Entry>], name: &str) -> Result<Vec<Vec<Scalar>>> {
    rows.iter()
        .map(|row| {
            row.iter()
                .map(|e| {
                    let c = match e {
                        Entry::Int(n) => Scalar::from_integer(BigInt::from(*n)),
                        Entry::Text(t) => parse_scalar(t).ok_or_else(|| Error::Schema(format!("{name}: bad entry {t:?}")))?,
                    };
                    ring.0.check(&c).map_err(|e| Error::Schema(format!("{name}: {e}")))?;
                    Ok(c)
                })
                .collect()
        })
        .collect()
}

fn to_entries(m: &Matrix<Scalar>) -> Vec<Vec<Entry>> {
    m.row_vecs()
        .into_iter()
        .map(|row| {
            row.into_iter()
                .map(|c| match c.is_integer().then(|| c.to_integer().to_i64()).flatten() {
                    Some(n) => Entry::Int(n),
                    None => Entry::Text(c.to_string()),
                })
                .collect()
        })
        .collect()
}

/// `[I 0]`-style inclusion of the first `n` of `n + k` generators.
pub(crate) fn inclusion(ring: &ScalarRing, n: usize, k: usize, first: bool) -> Matrix<Scalar> {
    let id = crate::algebra::matrix::identity(ring, n);
    let z = zeros(ring, n, k);
    if first {
        hstack(&id, &z).expect("same row count")
    } else {
        hstack(&z, &id).expect("same row count")
    }
}

/// Apply a row-vector map.
pub(crate) fn image(ring: &ScalarRing, v: &[Scalar], m: &Matrix<Scalar>) -> Vec<Scalar> {
    apply(ring, v, m)
}
