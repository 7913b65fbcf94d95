//! Point configurations in the projective plane: the orbit construction over
//! cyclotomic layers, the two-parameter family T_{u,v}, general-position
//! checks over any field, and good-reduction certificates.

use num_traits::One as _;
use serde::{Deserialize, Serialize};

use crate::cyclo::{CycElt, CycField, Embedding};
use crate::error::{Error, Result};
use crate::fq::{FqElt, FqFieldInfo};
use crate::matrix::det_minors;
use crate::modular::{hensel_delta, mult_order};
use crate::rat::Rat;
use crate::scalar::Field;

/// Point of P^2, normalized so the last nonzero coordinate is 1.
#[derive(Clone, Debug, PartialEq)]
pub struct ProjPoint<F: Field> {
    coords: [F; 3],
}

impl<F: Field> ProjPoint<F> {
    pub fn new(x: F, y: F, z: F) -> Result<Self> {
        let coords = [x, y, z];
        let last = coords
            .iter()
            .rposition(|c| !c.is_zero())
            .ok_or_else(|| Error::InvalidArgument("projective point with all coordinates zero".into()))?;
        let inv = coords[last].inv();
        let normalized = coords.map(|c| c * inv.clone());
        Ok(ProjPoint { coords: normalized })
    }

    pub fn coords(&self) -> &[F; 3] {
        &self.coords
    }

    /// Canonical comparison key: the serialized normalized coordinates.
    pub fn sort_key(&self) -> String {
        format!("{}|{}|{}", self.coords[0], self.coords[1], self.coords[2])
    }

    /// Row of the conic matrix, monomials in graded-lex order.
    pub fn conic_row(&self) -> [F; 6] {
        let [x, y, z] = &self.coords;
        [
            x.clone() * x.clone(),
            x.clone() * y.clone(),
            x.clone() * z.clone(),
            y.clone() * y.clone(),
            y.clone() * z.clone(),
            z.clone() * z.clone(),
        ]
    }
}

/// Construction provenance of a configuration.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct LayerProvenance {
    pub layer: u32,
    pub delta: u64,
}

#[derive(Clone, Debug)]
pub struct PointConfig<F: Field> {
    pub degree: u8,
    pub points: Vec<ProjPoint<F>>,
    pub provenance: Option<LayerProvenance>,
}

impl<F: Field> PointConfig<F> {
    pub fn new(degree: u8, points: Vec<ProjPoint<F>>, provenance: Option<LayerProvenance>) -> Result<Self> {
        if degree != 3 && degree != 4 {
            return Err(Error::InvalidArgument(format!("unsupported degree {degree}")));
        }
        if points.len() != 9 - degree as usize {
            return Err(Error::InvalidArgument(format!(
                "degree {degree} requires {} points, got {}",
                9 - degree as usize,
                points.len()
            )));
        }
        Ok(PointConfig { degree, points, provenance })
    }
}

/// The six points T_{u,v}; u, v must be invertible.
pub fn t_uv<F: Field>(u: &F, v: &F) -> Result<Vec<ProjPoint<F>>> {
    if u.is_zero() || v.is_zero() {
        return Err(Error::InvalidArgument("T_{u,v} requires invertible u, v".into()));
    }
    let ui = u.inv();
    let vi = v.inv();
    Ok(vec![
        ProjPoint::new(u.clone() * u.clone(), u.clone(), F::one())?,
        ProjPoint::new(ui.clone() * ui.clone(), ui.clone(), F::one())?,
        ProjPoint::new(v.clone() * v.clone(), v.clone(), F::one())?,
        ProjPoint::new(vi.clone() * vi.clone(), vi.clone(), F::one())?,
        ProjPoint::new(F::one(), F::zero(), F::zero())?,
        ProjPoint::new(F::zero(), F::one(), F::zero())?,
    ])
}

/// f(u,v) = (u^4-1)(v^4-1)(u^2-v^2)(u^2v^2-1) and its nonvanishing verdict.
pub fn f_criterion<F: Field>(u: &F, v: &F) -> Result<(F, bool)> {
    if u.is_zero() || v.is_zero() {
        return Err(Error::InvalidArgument("criterion requires invertible u, v".into()));
    }
    let one = F::one();
    let u2 = u.clone() * u.clone();
    let v2 = v.clone() * v.clone();
    let value = (u2.clone() * u2.clone() - one.clone())
        * (v2.clone() * v2.clone() - one.clone())
        * (u2.clone() - v2.clone())
        * (u2 * v2 - one);
    let nonzero = !value.is_zero();
    Ok((value, nonzero))
}

/// The H-orbit of P = (zeta^2 : zeta : 1): exponent pairs
/// (2,1), (2d,d), (-2,-1), (-2d,-d) mod n.
pub fn build_orbit(cf: &CycField) -> Result<Vec<ProjPoint<CycElt>>> {
    let delta = hensel_delta(cf.layer())?.value as i64;
    let mut pts = Vec::with_capacity(4);
    for e in [1i64, delta, -1, -delta] {
        pts.push(ProjPoint::new(
            cf.zeta_power(2 * e),
            cf.zeta_power(e),
            cf.from_rat(Rat::one()),
        )?);
    }
    Ok(pts)
}

/// The blow-up configuration at a layer: the orbit plus (1:0:0), and for
/// degree 3 also (0:1:0).
pub fn config(cf: &CycField, degree: u8) -> Result<PointConfig<CycElt>> {
    let delta = hensel_delta(cf.layer())?.value;
    let mut points = build_orbit(cf)?;
    let zero = || cf.zero();
    let one = || cf.from_rat(Rat::one());
    points.push(ProjPoint::new(one(), zero(), zero())?);
    if degree == 3 {
        points.push(ProjPoint::new(zero(), one(), zero())?);
    }
    PointConfig::new(degree, points, Some(LayerProvenance { layer: cf.layer(), delta }))
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "lowercase")]
pub enum GPWitness {
    /// three collinear points (indices into the canonically sorted list)
    Line { indices: [usize; 3], determinant: String },
    /// all six points on a conic
    Conic { determinant: String },
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct GPReport {
    pub verdict: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub witness: Option<GPWitness>,
}

/// All C(n,3) line determinants, and for n = 6 the conic determinant.
/// Points are sorted canonically first so witness indices are stable.
///
/// General position for up to eight points would also exclude eight points
/// on a singular cubic; that clause is vacuous for the at-most-six-point
/// configurations handled here and is deliberately not evaluated.
pub fn check_general_position<F: Field>(points: &[ProjPoint<F>]) -> GPReport {
    let mut sorted: Vec<&ProjPoint<F>> = points.iter().collect();
    sorted.sort_by_key(|p| p.sort_key());
    let n = sorted.len();
    for i in 0..n {
        for j in i + 1..n {
            for k in j + 1..n {
                let m: Vec<Vec<F>> = [i, j, k]
                    .iter()
                    .map(|&ix| sorted[ix].coords().to_vec())
                    .collect();
                let d = det_minors(&m).expect("3x3");
                if d.is_zero() {
                    return GPReport {
                        verdict: false,
                        witness: Some(GPWitness::Line {
                            indices: [i, j, k],
                            determinant: d.to_string(),
                        }),
                    };
                }
            }
        }
    }
    if n == 6 {
        let m: Vec<Vec<F>> = sorted.iter().map(|p| p.conic_row().to_vec()).collect();
        let d = det_minors(&m).expect("6x6");
        if d.is_zero() {
            return GPReport {
                verdict: false,
                witness: Some(GPWitness::Conic { determinant: d.to_string() }),
            };
        }
    }
    GPReport { verdict: true, witness: None }
}

/// Serialized norm: "5^k" or "-5^k"; `k` present exactly when the value is a
/// signed power of five.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct NormEntry {
    pub mu: i64,
    pub norm: String,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub k: Option<u32>,
}

fn norm_entry(mu: i64, value: &Rat) -> NormEntry {
    match value.as_signed_power_of_five() {
        Some((sign, k)) => NormEntry {
            mu,
            norm: format!("{}5^{}", if sign < 0 { "-" } else { "" }, k),
            k: Some(k),
        },
        None => NormEntry { mu, norm: value.to_string(), k: None },
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct LineNormEntry {
    pub indices: [usize; 3],
    pub norm: String,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub k: Option<u32>,
}

/// Norms computed in Q(zeta_n), independent of the reduction prime: the four
/// elements zeta^mu - 1 for mu in {4, 4d, 2d-2, 2d+2}, every line
/// determinant, and for six points the conic determinant.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct NormSection {
    pub mu_norms: Vec<NormEntry>,
    pub line_det_norms: Vec<LineNormEntry>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub conic_norm: Option<NormEntry>,
}

impl NormSection {
    pub fn all_powers_of_five(&self) -> bool {
        self.mu_norms.iter().all(|e| e.k.is_some())
            && self.line_det_norms.iter().all(|e| e.k.is_some())
            && self.conic_norm.as_ref().map_or(true, |e| e.k.is_some())
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct EmbeddingRecord {
    pub field: FqFieldInfo,
    /// image of zeta, little-endian coefficients over F_q
    pub zeta_image: Vec<u64>,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct GoodReductionCertificate {
    pub layer: u32,
    pub degree: u8,
    pub prime: u64,
    pub residue_degree: u64,
    pub embedding: EmbeddingRecord,
    pub gp: GPReport,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub norms: Option<NormSection>,
    pub valid: bool,
}

/// Compute the norm section for a layer configuration.
pub fn norm_section(cf: &CycField, cfg: &PointConfig<CycElt>) -> Result<NormSection> {
    let delta = hensel_delta(cf.layer())?.value as i64;
    let one = CycElt::one();
    let mu_norms = [4i64, 4 * delta, 2 * delta - 2, 2 * delta + 2]
        .iter()
        .map(|&mu| {
            let value = cf.norm(&(cf.zeta_power(mu) - one.clone()));
            norm_entry(mu, &value)
        })
        .collect();

    let mut sorted: Vec<&ProjPoint<CycElt>> = cfg.points.iter().collect();
    sorted.sort_by_key(|p| p.sort_key());
    let n = sorted.len();
    let mut line_det_norms = Vec::new();
    for i in 0..n {
        for j in i + 1..n {
            for k in j + 1..n {
                let m: Vec<Vec<CycElt>> = [i, j, k]
                    .iter()
                    .map(|&ix| sorted[ix].coords().to_vec())
                    .collect();
                let d = det_minors(&m).expect("3x3");
                let value = cf.norm(&d);
                let e = norm_entry(0, &value);
                line_det_norms.push(LineNormEntry { indices: [i, j, k], norm: e.norm, k: e.k });
            }
        }
    }
    let conic_norm = if n == 6 {
        let m: Vec<Vec<CycElt>> = sorted.iter().map(|p| p.conic_row().to_vec()).collect();
        let d = det_minors(&m).expect("6x6");
        Some(norm_entry(0, &cf.norm(&d)))
    } else {
        None
    };
    Ok(NormSection { mu_norms, line_det_norms, conic_norm })
}

/// Embed the layer configuration into F_{q^d} and check general position
/// there; optionally attach the norm section. Valid iff the reduced points
/// are in general position and every recorded norm is a signed power of 5.
pub fn good_reduction_certificate(
    cf: &CycField,
    degree: u8,
    q: u64,
    seed: u64,
    max_residue_degree: u64,
    with_norms: bool,
) -> Result<GoodReductionCertificate> {
    let cfg = config(cf, degree)?;
    certificate_for_config(cf, &cfg, q, seed, max_residue_degree, with_norms)
}

/// Certificate for an explicitly supplied layer configuration (which may
/// have been loaded from a file rather than freshly constructed).
pub fn certificate_for_config(
    cf: &CycField,
    cfg: &PointConfig<CycElt>,
    q: u64,
    seed: u64,
    max_residue_degree: u64,
    with_norms: bool,
) -> Result<GoodReductionCertificate> {
    if q == 5 {
        return Err(Error::ExcludedPrime);
    }
    let d = mult_order(q, cf.conductor())?;
    if d > max_residue_degree {
        return Err(Error::ResidueDegreeCap { required: d, cap: max_residue_degree });
    }
    let emb = Embedding::new(cf, q, seed)?;
    certificate_with_embedding(cf, cfg, &emb, with_norms)
}

fn certificate_with_embedding(
    cf: &CycField,
    cfg: &PointConfig<CycElt>,
    emb: &Embedding,
    with_norms: bool,
) -> Result<GoodReductionCertificate> {
    let reduced: Vec<ProjPoint<FqElt>> = cfg
        .points
        .iter()
        .map(|p| {
            let [x, y, z] = p.coords();
            ProjPoint::new(emb.apply(x)?, emb.apply(y)?, emb.apply(z)?)
        })
        .collect::<Result<_>>()?;
    let gp = check_general_position(&reduced);
    let norms = if with_norms { Some(norm_section(cf, cfg)?) } else { None };
    let valid = gp.verdict && norms.as_ref().map_or(true, |n| n.all_powers_of_five());
    Ok(GoodReductionCertificate {
        layer: cf.layer(),
        degree: cfg.degree,
        prime: emb.q,
        residue_degree: emb.field.degree() as u64,
        embedding: EmbeddingRecord {
            field: emb.field.info(),
            zeta_image: emb.zeta_image.coeffs().expect("attached element").to_vec(),
        },
        gp,
        norms,
        valid,
    })
}

/// Re-run the checks of a serialized certificate with its recorded embedding
/// data; returns the recomputed verdict.
pub fn reverify_certificate(cert: &GoodReductionCertificate) -> Result<bool> {
    let cf = CycField::new(cert.layer)?;
    let emb = Embedding::from_recorded(cert.layer, &cert.embedding.field, cert.embedding.zeta_image.clone())?;
    let cfg = config(&cf, cert.degree)?;
    let recomputed = certificate_with_embedding(&cf, &cfg, &emb, cert.norms.is_some())?;
    Ok(recomputed.valid == cert.valid && recomputed.gp == cert.gp && recomputed.norms == cert.norms)
}
