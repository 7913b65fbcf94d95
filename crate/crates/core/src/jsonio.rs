//! JSON schemas for configurations and related documents.
//!
//! A configuration file looks like
//! `{"degree": 3, "layer": 1, "delta": 7, "field": {...}, "points": [...]}`
//! with cyclotomic coordinates as `{"layer": r, "coeffs": ["p/q", ...]}`
//! (little-endian in powers of zeta) and rational coordinates as plain
//! `"p/q"` strings.

use serde_json::{json, Value};

use crate::cyclo::{CycElt, CycField};
use crate::error::{Error, Result};
use crate::points::{LayerProvenance, PointConfig, ProjPoint};
use crate::rat::Rat;

pub enum AnyConfig {
    Cyclotomic(CycField, PointConfig<CycElt>),
    Rational(PointConfig<Rat>),
}

fn cyc_to_json(x: &CycElt, cf: &CycField) -> Value {
    let lifted = x.lifted(cf);
    json!({
        "layer": cf.layer(),
        "coeffs": lifted.coeffs().iter().map(|c| c.to_string()).collect::<Vec<_>>(),
    })
}

fn cyc_from_json(v: &Value, cf: &CycField) -> Result<CycElt> {
    let layer = v
        .get("layer")
        .and_then(Value::as_u64)
        .ok_or_else(|| Error::Parse("coordinate needs a layer".into()))?;
    if layer != cf.layer() as u64 {
        return Err(Error::Parse(format!(
            "coordinate layer {layer} does not match the configuration layer {}",
            cf.layer()
        )));
    }
    let coeffs = v
        .get("coeffs")
        .and_then(Value::as_array)
        .ok_or_else(|| Error::Parse("coordinate needs coeffs".into()))?;
    if coeffs.len() > cf.phi() {
        return Err(Error::Parse("too many coefficients".into()));
    }
    let parsed: Vec<Rat> = coeffs
        .iter()
        .map(|c| {
            c.as_str()
                .ok_or_else(|| Error::Parse("coefficients are strings".into()))?
                .parse()
        })
        .collect::<Result<_>>()?;
    cf.from_coeffs(parsed)
}

pub fn config_to_json(cf: &CycField, cfg: &PointConfig<CycElt>) -> Value {
    let delta = cfg.provenance.map(|p| p.delta);
    json!({
        "degree": cfg.degree,
        "layer": cf.layer(),
        "delta": delta,
        "field": {
            "type": "cyclotomic",
            "layer": cf.layer(),
            "conductor": cf.conductor(),
            "degree": cf.phi(),
        },
        "points": cfg
            .points
            .iter()
            .map(|p| {
                let [x, y, z] = p.coords();
                json!([cyc_to_json(x, cf), cyc_to_json(y, cf), cyc_to_json(z, cf)])
            })
            .collect::<Vec<_>>(),
    })
}

pub fn rational_config_to_json(cfg: &PointConfig<Rat>) -> Value {
    json!({
        "degree": cfg.degree,
        "field": {"type": "rational"},
        "points": cfg
            .points
            .iter()
            .map(|p| {
                let [x, y, z] = p.coords();
                json!([x.to_string(), y.to_string(), z.to_string()])
            })
            .collect::<Vec<_>>(),
    })
}

pub fn parse_config(v: &Value) -> Result<AnyConfig> {
    let degree = v
        .get("degree")
        .and_then(Value::as_u64)
        .ok_or_else(|| Error::Parse("configuration needs a degree".into()))? as u8;
    let field_type = v
        .pointer("/field/type")
        .and_then(Value::as_str)
        .ok_or_else(|| Error::Parse("configuration needs field.type".into()))?;
    let points = v
        .get("points")
        .and_then(Value::as_array)
        .ok_or_else(|| Error::Parse("configuration needs points".into()))?;
    fn coords_of(p: &Value) -> Result<[&Value; 3]> {
        let arr = p
            .as_array()
            .filter(|a| a.len() == 3)
            .ok_or_else(|| Error::Parse("points are coordinate triples".into()))?;
        Ok([&arr[0], &arr[1], &arr[2]])
    }
    match field_type {
        "cyclotomic" => {
            let layer = v
                .pointer("/field/layer")
                .or_else(|| v.get("layer"))
                .and_then(Value::as_u64)
                .ok_or_else(|| Error::Parse("cyclotomic configuration needs a layer".into()))?;
            let cf = CycField::new(layer as u32)?;
            let delta = v.get("delta").and_then(Value::as_u64);
            let mut pts = Vec::with_capacity(points.len());
            for p in points {
                let [x, y, z] = coords_of(p)?;
                pts.push(ProjPoint::new(
                    cyc_from_json(x, &cf)?,
                    cyc_from_json(y, &cf)?,
                    cyc_from_json(z, &cf)?,
                )?);
            }
            let provenance = delta.map(|d| LayerProvenance { layer: layer as u32, delta: d });
            Ok(AnyConfig::Cyclotomic(cf.clone(), PointConfig::new(degree, pts, provenance)?))
        }
        "rational" => {
            let mut pts = Vec::with_capacity(points.len());
            for p in points {
                let [x, y, z] = coords_of(p)?;
                let parse = |c: &Value| -> Result<Rat> {
                    c.as_str()
                        .ok_or_else(|| Error::Parse("rational coordinates are strings".into()))?
                        .parse()
                };
                pts.push(ProjPoint::new(parse(x)?, parse(y)?, parse(z)?)?);
            }
            Ok(AnyConfig::Rational(PointConfig::new(degree, pts, None)?))
        }
        other => Err(Error::Parse(format!("unknown field type {other:?}"))),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::points::{check_general_position, config};

    #[test]
    fn cyclotomic_round_trip() {
        let cf = CycField::new(1).unwrap();
        let cfg = config(&cf, 3).unwrap();
        let doc = config_to_json(&cf, &cfg);
        let parsed = parse_config(&doc).unwrap();
        match parsed {
            AnyConfig::Cyclotomic(cf2, cfg2) => {
                assert_eq!(cf2.layer(), 1);
                assert_eq!(cfg2.degree, 3);
                let keys: Vec<String> = cfg.points.iter().map(|p| p.sort_key()).collect();
                let keys2: Vec<String> = cfg2.points.iter().map(|p| p.sort_key()).collect();
                assert_eq!(keys, keys2);
                assert!(check_general_position(&cfg2.points).verdict);
            }
            _ => panic!("expected cyclotomic"),
        }
    }

    #[test]
    fn rational_round_trip() {
        let pts = crate::points::t_uv(&Rat::from_int(2), &Rat::from_int(3)).unwrap();
        let cfg = PointConfig::new(3, pts, None).unwrap();
        let doc = rational_config_to_json(&cfg);
        match parse_config(&doc).unwrap() {
            AnyConfig::Rational(cfg2) => {
                assert_eq!(cfg2.degree, 3);
                assert!(check_general_position(&cfg2.points).verdict);
            }
            _ => panic!("expected rational"),
        }
    }

    #[test]
    fn malformed_rejected() {
        assert!(parse_config(&serde_json::json!({"degree": 3})).is_err());
        assert!(parse_config(&serde_json::json!({
            "degree": 7, "field": {"type": "rational"}, "points": []
        }))
        .is_err());
    }
}
