//! JSON forms of systems, points, measures, sequences, ground sets and certificates.
//!
//! Scalars are written as exact strings (`"3/2"`, `"1/2+1/1*sqrt2"`), so a
//! value read back is bit-identical to the one written.
//!
//! ```
//! use momentcone::io;
//!
//! let a = io::read_system(r#"{"kind": "affine-monomial", "n": 1, "d": 2}"#).unwrap();
//! let mu = io::read_measure(
//!     r#"{"signed": false, "atoms": [{"mass": "1/2", "point": ["sqrt2"]}]}"#,
//!     a.chart(),
//! )
//! .unwrap();
//! let s = momentcone::momentmap::moments(&a, &mu).unwrap();
//! assert_eq!(s.to_strings(), ["1/2", "0/1+1/2*sqrt2", "1"]);
//! ```

use serde::de::DeserializeOwned;
use serde::{Deserialize, Serialize};

use crate::basis::{Chart, FunctionSystem, MonomialOrder, Point, SystemKind};
use crate::decompose::{Ambient, GroundSet, MembershipCertificate, Verdict};
use crate::error::{Error, Result};
use crate::exactla::Scalar;
use crate::momentmap::{AtomicMeasure, MomentSequence};

/// Pretty JSON with a trailing newline.
pub fn to_json<T: Serialize>(value: &T) -> String {
    let mut s = serde_json::to_string_pretty(value).expect("serializable");
    s.push('\n');
    s
}

pub fn from_json<T: DeserializeOwned>(text: &str) -> Result<T> {
    serde_json::from_str(text).map_err(|e| Error::Parse(e.to_string()))
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SystemJson {
    pub kind: SystemKind,
    pub n: usize,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub d: Option<u32>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub exponents: Option<Vec<Vec<u32>>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub order: Option<MonomialOrder>,
}

impl SystemJson {
    pub fn from_system(a: &FunctionSystem) -> Result<Self> {
        let exps = a
            .exponents()
            .ok_or_else(|| Error::InvalidInput("custom systems have no JSON form".into()))?;
        Ok(SystemJson {
            kind: a.kind(),
            n: a.n(),
            d: a.degree(),
            exponents: Some(exps.to_vec()),
            order: Some(a.order()),
        })
    }

    /// Builds the system. A standard order with `d` generates the exponents,
    /// which must then agree with any listed ones; otherwise the listed
    /// exponents are used as given.
    pub fn build(&self) -> Result<FunctionSystem> {
        let standard = match (
            self.kind,
            self.order.unwrap_or(MonomialOrder::Grlex),
            self.d,
        ) {
            (_, MonomialOrder::Given, _) | (_, _, None) => None,
            (SystemKind::AffineMonomial, MonomialOrder::Grlex, Some(d)) => {
                Some(FunctionSystem::affine(self.n, d)?)
            }
            (SystemKind::ProjectiveMonomial, order, Some(d)) => {
                Some(FunctionSystem::projective_ordered(self.n, d, order)?)
            }
            (SystemKind::Gapped1d, _, Some(d)) if self.exponents.is_none() => {
                Some(FunctionSystem::affine(1, d)?)
            }
            _ => None,
        };
        if let Some(sys) = standard {
            if let Some(e) = &self.exponents {
                if sys.exponents() != Some(e.as_slice()) {
                    return Err(Error::InvalidInput(
                        "exponents do not match the declared order".into(),
                    ));
                }
            }
            return Ok(sys);
        }
        let exps = self
            .exponents
            .clone()
            .ok_or_else(|| Error::InvalidInput("system needs `d` or `exponents`".into()))?;
        match self.kind {
            SystemKind::AffineMonomial => FunctionSystem::monomials(Chart::Affine, self.n, exps),
            SystemKind::ProjectiveMonomial => {
                FunctionSystem::monomials(Chart::Projective, self.n, exps)
            }
            SystemKind::Gapped1d => {
                let flat: Option<Vec<u32>> =
                    exps.iter().map(|e| (e.len() == 1).then(|| e[0])).collect();
                let flat = flat.ok_or_else(|| {
                    Error::InvalidInput("gapped exponents must have length 1".into())
                })?;
                FunctionSystem::gapped(&flat)
            }
            SystemKind::Custom => Err(Error::InvalidInput(
                "custom systems have no JSON form".into(),
            )),
        }
    }
}

pub fn read_system(text: &str) -> Result<FunctionSystem> {
    from_json::<SystemJson>(text)?.build()
}

pub fn write_system(a: &FunctionSystem) -> Result<String> {
    Ok(to_json(&SystemJson::from_system(a)?))
}

pub fn point_to_json(x: &Point) -> Vec<Scalar> {
    x.coords().to_vec()
}

pub fn point_from_json(chart: Chart, coords: Vec<Scalar>) -> Result<Point> {
    Point::new(chart, coords)
}

/// Parses `"1, -1/2, sqrt2"`, optionally wrapped in `()`, `[]` or `{}`.
pub fn parse_point(chart: Chart, text: &str) -> Result<Point> {
    let t = text.trim();
    let t = t
        .strip_prefix(['(', '[', '{'])
        .and_then(|u| u.strip_suffix([')', ']', '}']))
        .unwrap_or(t);
    let coords = t
        .split([',', ':'])
        .map(|c| c.trim().trim_matches('"').parse::<Scalar>())
        .collect::<Result<Vec<_>>>()?;
    if coords.is_empty() {
        return Err(Error::Parse("empty point".into()));
    }
    Point::new(chart, coords)
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct AtomJson {
    pub mass: Scalar,
    pub point: Vec<Scalar>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct MeasureJson {
    #[serde(default)]
    pub signed: bool,
    pub atoms: Vec<AtomJson>,
}

impl MeasureJson {
    pub fn from_measure(mu: &AtomicMeasure) -> Self {
        MeasureJson {
            signed: mu.is_signed(),
            atoms: mu
                .atoms()
                .iter()
                .map(|(c, x)| AtomJson {
                    mass: c.clone(),
                    point: point_to_json(x),
                })
                .collect(),
        }
    }

    /// Unsigned measures must have positive masses.
    pub fn build(&self, chart: Chart) -> Result<AtomicMeasure> {
        let atoms = self
            .atoms
            .iter()
            .map(|a| Ok((a.mass.clone(), Point::new(chart, a.point.clone())?)))
            .collect::<Result<Vec<_>>>()?;
        if self.signed {
            Ok(AtomicMeasure::signed(atoms))
        } else {
            AtomicMeasure::new(atoms)
        }
    }
}

pub fn read_measure(text: &str, chart: Chart) -> Result<AtomicMeasure> {
    from_json::<MeasureJson>(text)?.build(chart)
}

pub fn write_measure(mu: &AtomicMeasure) -> String {
    to_json(&MeasureJson::from_measure(mu))
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SequenceJson {
    pub values: Vec<Scalar>,
}

/// Accepts `{"values": [...]}` or a bare array.
pub fn read_sequence(text: &str, a: &FunctionSystem) -> Result<MomentSequence> {
    #[derive(Deserialize)]
    #[serde(untagged)]
    enum Either {
        Wrapped(SequenceJson),
        Bare(Vec<Scalar>),
    }
    let values = match from_json::<Either>(text)? {
        Either::Wrapped(s) => s.values,
        Either::Bare(v) => v,
    };
    MomentSequence::new(a, values)
}

pub fn write_sequence(s: &MomentSequence) -> String {
    to_json(&SequenceJson {
        values: s.values().to_vec(),
    })
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct GroundJson {
    pub points: Vec<Vec<Scalar>>,
    #[serde(default)]
    pub ambient: Ambient,
}

impl GroundJson {
    pub fn from_ground(x: &GroundSet) -> Self {
        GroundJson {
            points: x.points().iter().map(point_to_json).collect(),
            ambient: x.ambient(),
        }
    }

    pub fn build(&self, chart: Chart) -> Result<GroundSet> {
        let pts = self
            .points
            .iter()
            .map(|c| Point::new(chart, c.clone()))
            .collect::<Result<Vec<_>>>()?;
        Ok(GroundSet::new(pts)?.with_ambient(self.ambient))
    }
}

pub fn read_ground(text: &str, chart: Chart) -> Result<GroundSet> {
    from_json::<GroundJson>(text)?.build(chart)
}

pub fn write_ground(x: &GroundSet) -> String {
    to_json(&GroundJson::from_ground(x))
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CertificateJson {
    pub verdict: Verdict,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub measure: Option<MeasureJson>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub separator: Option<Vec<Scalar>>,
}

impl CertificateJson {
    pub fn from_certificate(c: &MembershipCertificate) -> Self {
        CertificateJson {
            verdict: c.verdict,
            measure: c.measure.as_ref().map(MeasureJson::from_measure),
            separator: c.separator.clone(),
        }
    }

    pub fn build(&self, chart: Chart) -> Result<MembershipCertificate> {
        Ok(MembershipCertificate {
            verdict: self.verdict,
            measure: self.measure.as_ref().map(|m| m.build(chart)).transpose()?,
            separator: self.separator.clone(),
        })
    }
}

/// Error body printed by the command line on failure.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ErrorJson {
    pub error: String,
    pub message: String,
}

impl From<&Error> for ErrorJson {
    fn from(e: &Error) -> Self {
        ErrorJson {
            error: e.kind().into(),
            message: e.to_string(),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn system_round_trip() {
        for a in [
            FunctionSystem::affine(2, 3).unwrap(),
            FunctionSystem::projective_ordered(2, 6, MonomialOrder::ListedB26).unwrap(),
            FunctionSystem::gapped(&[0, 1, 3, 7]).unwrap(),
        ] {
            let b = read_system(&write_system(&a).unwrap()).unwrap();
            assert_eq!(a.exponents(), b.exponents());
            assert_eq!(a.kind(), b.kind());
        }
    }

    #[test]
    fn short_system_forms() {
        let a = read_system(
            r#"{"kind": "projective-monomial", "n": 2, "d": 6, "order": "listed-b26"}"#,
        )
        .unwrap();
        assert_eq!(a.size(), 28);
        let g =
            read_system(r#"{"kind": "gapped-1d", "n": 1, "exponents": [[0], [2], [3]]}"#).unwrap();
        assert_eq!(g.size(), 3);
        assert!(read_system(r#"{"kind": "affine-monomial", "n": 2}"#).is_err());
    }

    #[test]
    fn mismatched_exponents_rejected() {
        let text = r#"{"kind": "affine-monomial", "n": 1, "d": 2, "order": "grlex", "exponents": [[0], [2], [1]]}"#;
        assert!(read_system(text).is_err());
    }

    #[test]
    fn points_parse() {
        let p = parse_point(Chart::Projective, "(2, 1, 2*sqrt2)").unwrap();
        assert_eq!(p.to_strings(), ["1", "1/2", "0/1+1/1*sqrt2"]);
        assert!(parse_point(Chart::Affine, "1, x").is_err());
    }

    #[test]
    fn measure_round_trip() {
        let mu = AtomicMeasure::signed(vec![
            (Scalar::ratio(-3, 2), Point::affine_i64(&[1, 2])),
            ("1/3+2/5*sqrt2".parse().unwrap(), Point::affine_i64(&[0, 0])),
        ]);
        let back = read_measure(&write_measure(&mu), Chart::Affine).unwrap();
        assert_eq!(back.atoms(), mu.atoms());
        assert!(back.is_signed());
    }

    #[test]
    fn unsigned_measure_rejects_negative_mass() {
        let text = r#"{"atoms": [{"mass": "-1", "point": ["0"]}]}"#;
        assert!(read_measure(text, Chart::Affine).is_err());
    }

    #[test]
    fn ground_ambient_defaults_to_discrete() {
        let x = read_ground(
            r#"{"points": [["1","1","0"], ["0","1","1"]]}"#,
            Chart::Projective,
        )
        .unwrap();
        assert_eq!(x.ambient(), Ambient::Discrete);
        let y = read_ground(
            &write_ground(&x.clone().with_ambient(Ambient::Open)),
            Chart::Projective,
        )
        .unwrap();
        assert_eq!(y.ambient(), Ambient::Open);
        assert_eq!(y.points(), x.points());
    }
}
