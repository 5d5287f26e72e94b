//! JSON file formats for models and morphisms.
//!
//! A scalar in Q(ζ_N) is an array of rational strings `"p/q"`, the coefficients
//! of 1, ζ_N, ζ_N², …; structure constants are sparse lists of index tuples
//! ending in a scalar.

use std::path::Path;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::hopf::{ModelData, QGModel};
use crate::linalg::Mat;
use crate::scalar::{Cyclo, Rational};
use crate::subgroups::QGMorphism;

type C = Cyclo;

pub type ScalarRepr = Vec<String>;

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ModelFile {
    pub name: String,
    /// Cyclotomic order N of the scalar field Q(ζ_N).
    pub field_order: u32,
    pub dimension: usize,
    pub basis: Vec<String>,
    pub unit: Vec<ScalarRepr>,
    /// `e_i e_j = Σ c e_k` as `[i, j, k, c]`.
    pub mult: Vec<(usize, usize, usize, ScalarRepr)>,
    /// `Δ(e_i) = Σ c e_j⊗e_k` as `[i, j, k, c]`.
    pub coprod: Vec<(usize, usize, usize, ScalarRepr)>,
    /// `ē_i = Σ c e_k` as `[i, k, c]`.
    pub invol: Vec<(usize, usize, ScalarRepr)>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub counit: Option<Vec<ScalarRepr>>,
    /// `S(e_i) = Σ c e_k` as `[i, k, c]`.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub antipode: Option<Vec<(usize, usize, ScalarRepr)>>,
    /// Whether a positive Haar integral is expected.
    pub positive: bool,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct MorphismFile {
    pub source: String,
    pub target: String,
    pub field_order: u32,
    /// `π(e_col) = Σ c f_row` as `[row, col, c]`.
    pub entries: Vec<(usize, usize, ScalarRepr)>,
}

fn fmt_err(field: &str, msg: impl std::fmt::Display) -> Error {
    Error::Format(format!("{field}: {msg}"))
}

pub fn encode_scalar(x: &C, n: u32) -> Result<ScalarRepr> {
    if n % x.order() != 0 {
        return Err(fmt_err("scalar", format!("{x} does not lie in Q(ζ_{n})")));
    }
    let mut c = x.coeffs_in(n);
    while c.last().is_some_and(Rational::is_zero) {
        c.pop();
    }
    Ok(c.iter().map(ToString::to_string).collect())
}

pub fn decode_scalar(s: &[String], n: u32, field: &str) -> Result<C> {
    if s.len() > n.max(1) as usize {
        return Err(fmt_err(field, format!("{} coefficients exceed the field order {n}", s.len())));
    }
    let coeffs = s.iter().map(|t| t.parse::<Rational>().map_err(|e| fmt_err(field, e))).collect::<Result<Vec<_>>>()?;
    Ok(C::from_powers(n, coeffs))
}

fn check_index(field: &str, k: usize, i: usize, bound: usize) -> Result<()> {
    if i >= bound {
        return Err(fmt_err(&format!("{field}[{k}]"), format!("index {i} out of range for dimension {bound}")));
    }
    Ok(())
}

impl ModelFile {
    pub fn from_model(m: &QGModel) -> Result<ModelFile> {
        let data = m.data();
        let n = data.order;
        let d = data.basis.len();
        let enc = |x: &C| encode_scalar(x, n);
        let mut mult = Vec::new();
        for col in 0..d * d {
            for k in 0..d {
                let c = &data.mult[(k, col)];
                if !c.is_zero() {
                    mult.push((col / d, col % d, k, enc(c)?));
                }
            }
        }
        let mut coprod = Vec::new();
        for i in 0..d {
            for row in 0..d * d {
                let c = &data.coprod[(row, i)];
                if !c.is_zero() {
                    coprod.push((i, row / d, row % d, enc(c)?));
                }
            }
        }
        let pairs = |m: &Mat<C>| -> Result<Vec<(usize, usize, ScalarRepr)>> {
            let mut out = Vec::new();
            for i in 0..d {
                for k in 0..d {
                    if !m[(k, i)].is_zero() {
                        out.push((i, k, enc(&m[(k, i)])?));
                    }
                }
            }
            Ok(out)
        };
        Ok(ModelFile {
            name: data.name.clone(),
            field_order: n,
            dimension: d,
            basis: data.basis.clone(),
            unit: data.unit.iter().map(enc).collect::<Result<_>>()?,
            mult,
            coprod,
            invol: pairs(&data.invol)?,
            counit: data.counit.as_ref().map(|e| e.iter().map(enc).collect::<Result<_>>()).transpose()?,
            antipode: data.antipode.as_ref().map(pairs).transpose()?,
            positive: data.positive,
        })
    }

    pub fn to_model(&self) -> Result<QGModel> {
        let n = self.field_order;
        if n == 0 {
            return Err(fmt_err("field_order", "must be positive"));
        }
        let d = self.dimension;
        if self.basis.len() != d {
            return Err(fmt_err("basis", format!("{} labels for dimension {d}", self.basis.len())));
        }
        let vector = |field: &str, v: &[ScalarRepr]| -> Result<Vec<C>> {
            if v.len() != d {
                return Err(fmt_err(field, format!("{} entries for dimension {d}", v.len())));
            }
            v.iter().enumerate().map(|(k, s)| decode_scalar(s, n, &format!("{field}[{k}]"))).collect()
        };
        let mut mult: Mat<C> = Mat::zeros(d, d * d);
        for (k, (i, j, t, c)) in self.mult.iter().enumerate() {
            for x in [i, j, t] {
                check_index("mult", k, *x, d)?;
            }
            let c = decode_scalar(c, n, &format!("mult[{k}]"))?;
            mult[(*t, i * d + j)] = mult[(*t, i * d + j)].add_ref(&c);
        }
        let mut coprod: Mat<C> = Mat::zeros(d * d, d);
        for (k, (i, a, b, c)) in self.coprod.iter().enumerate() {
            for x in [i, a, b] {
                check_index("coprod", k, *x, d)?;
            }
            let c = decode_scalar(c, n, &format!("coprod[{k}]"))?;
            coprod[(a * d + b, *i)] = coprod[(a * d + b, *i)].add_ref(&c);
        }
        let square = |field: &str, entries: &[(usize, usize, ScalarRepr)]| -> Result<Mat<C>> {
            let mut m: Mat<C> = Mat::zeros(d, d);
            for (k, (i, t, c)) in entries.iter().enumerate() {
                check_index(field, k, *i, d)?;
                check_index(field, k, *t, d)?;
                let c = decode_scalar(c, n, &format!("{field}[{k}]"))?;
                m[(*t, *i)] = m[(*t, *i)].add_ref(&c);
            }
            Ok(m)
        };
        QGModel::new(ModelData {
            name: self.name.clone(),
            basis: self.basis.clone(),
            order: n,
            unit: vector("unit", &self.unit)?,
            mult,
            invol: square("invol", &self.invol)?,
            coprod,
            counit: self.counit.as_ref().map(|e| vector("counit", e)).transpose()?,
            antipode: self.antipode.as_ref().map(|s| square("antipode", s)).transpose()?,
            positive: self.positive,
        })
    }
}

impl MorphismFile {
    pub fn from_morphism(source: &QGModel, target: &QGModel, mor: &QGMorphism) -> Result<MorphismFile> {
        let n = source.order().max(target.order());
        let mut entries = Vec::new();
        for r in 0..mor.pi.rows() {
            for c in 0..mor.pi.cols() {
                if !mor.pi[(r, c)].is_zero() {
                    entries.push((r, c, encode_scalar(&mor.pi[(r, c)], n)?));
                }
            }
        }
        Ok(MorphismFile { source: source.name().to_string(), target: target.name().to_string(), field_order: n, entries })
    }

    pub fn to_morphism(&self, source: &QGModel, target: &QGModel) -> Result<QGMorphism> {
        let (rows, cols) = (target.dim(), source.dim());
        let mut pi: Mat<C> = Mat::zeros(rows, cols);
        for (k, (r, c, x)) in self.entries.iter().enumerate() {
            check_index("entries", k, *r, rows)?;
            check_index("entries", k, *c, cols)?;
            pi[(*r, *c)] = decode_scalar(x, self.field_order.max(1), &format!("entries[{k}]"))?;
        }
        Ok(QGMorphism { pi })
    }
}

fn parse<T: for<'de> Deserialize<'de>>(text: &str, what: &str) -> Result<T> {
    serde_json::from_str(text).map_err(|e| Error::Format(format!("{what}: {e}")))
}

/// One line per top-level field, and one line per entry of a list of lists.
pub fn render<T: Serialize>(x: &T) -> Result<String> {
    let serde_json::Value::Object(fields) = serde_json::to_value(x)? else {
        return Ok(serde_json::to_string(x)?);
    };
    let mut out = String::from("{\n");
    for (k, (key, v)) in fields.iter().enumerate() {
        out += &format!("  {}: ", serde_json::to_string(key)?);
        match v {
            serde_json::Value::Array(items) if items.iter().any(|i| i.is_array()) => {
                out += "[\n";
                for (j, item) in items.iter().enumerate() {
                    out += &format!("    {}{}\n", serde_json::to_string(item)?, if j + 1 < items.len() { "," } else { "" });
                }
                out += "  ]";
            }
            _ => out += &serde_json::to_string(v)?,
        }
        out += if k + 1 < fields.len() { ",\n" } else { "\n" };
    }
    out.push('}');
    Ok(out)
}

pub fn parse_model(text: &str) -> Result<QGModel> {
    parse::<ModelFile>(text, "model")?.to_model()
}

pub fn emit_model(m: &QGModel) -> Result<String> {
    render(&ModelFile::from_model(m)?)
}

pub fn read_model(path: &Path) -> Result<QGModel> {
    parse_model(&std::fs::read_to_string(path)?)
}

pub fn write_model(m: &QGModel, path: &Path) -> Result<()> {
    std::fs::write(path, emit_model(m)? + "\n")?;
    Ok(())
}

pub fn parse_morphism(text: &str, source: &QGModel, target: &QGModel) -> Result<QGMorphism> {
    parse::<MorphismFile>(text, "morphism")?.to_morphism(source, target)
}

pub fn emit_morphism(source: &QGModel, target: &QGModel, mor: &QGMorphism) -> Result<String> {
    render(&MorphismFile::from_morphism(source, target, mor)?)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::models::{by_name, STANDARD};

    #[test]
    fn round_trip_every_standard_model() {
        for name in STANDARD {
            let m = by_name(name).unwrap();
            let text = emit_model(&m).unwrap();
            let back = parse_model(&text).unwrap();
            assert_eq!(back.data().mult, m.data().mult, "{name}");
            assert_eq!(back.data().coprod, m.data().coprod, "{name}");
            assert_eq!(back.data().invol, m.data().invol, "{name}");
            assert_eq!(emit_model(&back).unwrap(), text, "{name}");
        }
    }

    #[test]
    fn cyclotomic_scalar_encoding() {
        let z = C::root_of_unity(3, 2);
        let s = encode_scalar(&z, 3).unwrap();
        // ζ₃² = -1 - ζ₃
        assert_eq!(s, vec!["-1".to_string(), "-1".to_string()]);
        assert_eq!(decode_scalar(&s, 3, "x").unwrap(), z);
        assert!(encode_scalar(&z, 2).is_err());
    }

    #[test]
    fn errors_name_the_field() {
        let mut f = ModelFile::from_model(&by_name("c_z2").unwrap()).unwrap();
        f.mult[0].2 = 9;
        let err = f.to_model().unwrap_err().to_string();
        assert!(err.contains("mult[0]"), "{err}");
        let err = parse_model("{\"name\": 3}").unwrap_err().to_string();
        assert!(err.contains("line 1"), "{err}");
    }
}
