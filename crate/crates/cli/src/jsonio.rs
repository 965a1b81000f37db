//! JSON parsing with JSON-pointer diagnostics, and encoders for every
//! report payload.  Scalars on the wire: rationals as "p/q" strings,
//! prime-field elements as integers, quadratic elements as
//! {"a": "p/q", "b": "p/q", "d": n}.

use serde_json::{json, Map, Value};

use schur_forge::azumaya::{AzuRep, QuaternionRecognition, StructureConstantAlgebra};
use schur_forge::descent::{Cocycle, GaloisSetup, TwistedAlgebra};
use schur_forge::exactfield::{
    parse_rational, Field, PrimeField, PrimeFieldElem, QuadElem, QuadField, Rational, Rationals,
};
use schur_forge::linalg::Matrix;
use schur_forge::matrep::MatrixRep;
use schur_forge::ncpoly::{FreePresentation, NcPoly};
use schur_forge::quiverkit::{Quiver, QuiverRep};

/// Structured failure: a stable name, a human message, and a JSON pointer
/// when the failure is tied to a location in the input document.
#[derive(Debug, Clone)]
pub struct CliError {
    pub name: String,
    pub message: String,
    pub path: Option<String>,
}

impl CliError {
    pub fn schema(path: &str, message: &str) -> Self {
        CliError {
            name: "SchemaViolation".into(),
            message: message.into(),
            path: Some(path.into()),
        }
    }

    pub fn at(path: &str, err: schur_forge::Error) -> Self {
        CliError {
            name: err.name().into(),
            message: err.to_string(),
            path: Some(path.into()),
        }
    }

    /// 2 for bad input, 3 for exhausted search budgets.
    pub fn exit_code(&self) -> i32 {
        match self.name.as_str() {
            "BudgetExhausted" | "FactorizationTooLarge" => 3,
            _ => 2,
        }
    }
}

impl From<schur_forge::Error> for CliError {
    fn from(err: schur_forge::Error) -> Self {
        CliError {
            name: err.name().into(),
            message: err.to_string(),
            path: None,
        }
    }
}

pub fn get<'a>(v: &'a Value, key: &str, path: &str) -> Result<&'a Value, CliError> {
    v.get(key)
        .ok_or_else(|| CliError::schema(&format!("{path}/{key}"), "missing required field"))
}

pub fn as_array<'a>(v: &'a Value, path: &str) -> Result<&'a Vec<Value>, CliError> {
    v.as_array()
        .ok_or_else(|| CliError::schema(path, "expected an array"))
}

pub fn as_u64(v: &Value, path: &str) -> Result<u64, CliError> {
    v.as_u64()
        .ok_or_else(|| CliError::schema(path, "expected a nonnegative integer"))
}

pub fn as_i64(v: &Value, path: &str) -> Result<i64, CliError> {
    v.as_i64()
        .ok_or_else(|| CliError::schema(path, "expected an integer"))
}

pub fn as_usize(v: &Value, path: &str) -> Result<usize, CliError> {
    Ok(as_u64(v, path)? as usize)
}

pub fn as_str<'a>(v: &'a Value, path: &str) -> Result<&'a str, CliError> {
    v.as_str()
        .ok_or_else(|| CliError::schema(path, "expected a string"))
}

// ---------------------------------------------------------------------
// scalars

pub fn parse_rational_value(v: &Value, path: &str) -> Result<Rational, CliError> {
    match v {
        Value::String(s) => {
            parse_rational(s).map_err(|_| CliError::schema(path, "expected \"p/q\" or \"p\""))
        }
        Value::Number(n) => {
            let i = n
                .as_i64()
                .ok_or_else(|| CliError::schema(path, "expected an integer or \"p/q\""))?;
            Ok(Rational::from_integer(i.into()))
        }
        _ => Err(CliError::schema(path, "expected a rational scalar")),
    }
}

pub fn parse_quad_value(field: &QuadField, v: &Value, path: &str) -> Result<QuadElem, CliError> {
    match v {
        Value::Object(_) => {
            let a = parse_rational_value(get(v, "a", path)?, &format!("{path}/a"))?;
            let b = parse_rational_value(get(v, "b", path)?, &format!("{path}/b"))?;
            if let Some(dv) = v.get("d") {
                let d = as_i64(dv, &format!("{path}/d"))?;
                if d != field.d() {
                    return Err(CliError::schema(
                        &format!("{path}/d"),
                        &format!("element lives in Q(sqrt({})), not Q(sqrt({d}))", field.d()),
                    ));
                }
            }
            Ok(field.elem(a, b))
        }
        _ => Ok(field.embed(parse_rational_value(v, path)?)),
    }
}

pub fn parse_fp_value(
    field: &PrimeField,
    v: &Value,
    path: &str,
) -> Result<PrimeFieldElem, CliError> {
    let i = match v {
        Value::Number(_) => as_i64(v, path)?,
        Value::String(s) => s
            .trim()
            .parse::<i64>()
            .map_err(|_| CliError::schema(path, "expected an integer"))?,
        _ => return Err(CliError::schema(path, "expected an integer")),
    };
    Ok(field.elem(i))
}

pub fn encode_rational(x: &Rational) -> Value {
    json!(x.to_string())
}

pub fn encode_quad(x: &QuadElem) -> Value {
    json!({
        "a": x.a.to_string(),
        "b": x.b.to_string(),
        "d": x.d,
    })
}

/// Scalars that know their own wire form.
pub trait JsonScalar {
    fn encode(&self) -> Value;
}

impl JsonScalar for Rational {
    fn encode(&self) -> Value {
        encode_rational(self)
    }
}

impl JsonScalar for QuadElem {
    fn encode(&self) -> Value {
        encode_quad(self)
    }
}

impl JsonScalar for PrimeFieldElem {
    fn encode(&self) -> Value {
        json!(self.value)
    }
}

// ---------------------------------------------------------------------
// field descriptors

#[derive(Debug, Clone, Copy)]
pub enum FieldDesc {
    Rational,
    Quadratic(QuadField),
    Prime(PrimeField),
}

pub fn parse_field_desc(v: &Value, path: &str) -> Result<FieldDesc, CliError> {
    let kind = as_str(get(v, "kind", path)?, &format!("{path}/kind"))?;
    match kind {
        "rational" => Ok(FieldDesc::Rational),
        "quadratic" => {
            let d = as_i64(get(v, "d", path)?, &format!("{path}/d"))?;
            let f = QuadField::new(d).map_err(|e| CliError::at(&format!("{path}/d"), e))?;
            Ok(FieldDesc::Quadratic(f))
        }
        "prime" => {
            let p = as_u64(get(v, "p", path)?, &format!("{path}/p"))?;
            let f = PrimeField::new(p).map_err(|e| CliError::at(&format!("{path}/p"), e))?;
            Ok(FieldDesc::Prime(f))
        }
        other => Err(CliError::schema(
            &format!("{path}/kind"),
            &format!("unknown field kind {other:?}; expected rational, quadratic or prime"),
        )),
    }
}

pub fn encode_field_desc(desc: &FieldDesc) -> Value {
    match desc {
        FieldDesc::Rational => json!({"kind": "rational"}),
        FieldDesc::Quadratic(f) => json!({"kind": "quadratic", "d": f.d()}),
        FieldDesc::Prime(f) => json!({"kind": "prime", "p": f.modulus()}),
    }
}

// ---------------------------------------------------------------------
// matrices

pub fn parse_matrix<T>(
    v: &Value,
    path: &str,
    elem: &dyn Fn(&Value, &str) -> Result<T, CliError>,
) -> Result<Matrix<T>, CliError>
where
    T: Clone,
{
    let rows = as_array(v, path)?;
    let mut out = Vec::with_capacity(rows.len());
    for (r, row) in rows.iter().enumerate() {
        let rp = format!("{path}/{r}");
        let cells = as_array(row, &rp)?;
        let mut parsed = Vec::with_capacity(cells.len());
        for (c, cell) in cells.iter().enumerate() {
            parsed.push(elem(cell, &format!("{rp}/{c}"))?);
        }
        out.push(parsed);
    }
    Matrix::from_rows(out).map_err(|e| CliError::at(path, e))
}

pub fn encode_matrix<T: JsonScalar + Clone>(m: &Matrix<T>) -> Value {
    let mut rows = Vec::with_capacity(m.rows());
    for r in 0..m.rows() {
        rows.push(Value::Array(m.row(r).iter().map(|x| x.encode()).collect()));
    }
    Value::Array(rows)
}

// ---------------------------------------------------------------------
// presentations and polynomials

pub fn parse_poly(v: &Value, path: &str) -> Result<NcPoly, CliError> {
    let terms_v = get(v, "terms", path)?;
    let terms = as_array(terms_v, &format!("{path}/terms"))?;
    let mut parsed = Vec::with_capacity(terms.len());
    for (k, t) in terms.iter().enumerate() {
        let tp = format!("{path}/terms/{k}");
        let coeff = parse_rational_value(get(t, "coeff", &tp)?, &format!("{tp}/coeff"))?;
        let word_v = get(t, "word", &tp)?;
        let word = as_array(word_v, &format!("{tp}/word"))?
            .iter()
            .enumerate()
            .map(|(i, w)| as_usize(w, &format!("{tp}/word/{i}")))
            .collect::<Result<Vec<_>, _>>()?;
        parsed.push((coeff, word));
    }
    Ok(NcPoly::from_terms(parsed))
}

pub fn encode_poly(p: &NcPoly) -> Value {
    let terms: Vec<Value> = p
        .terms()
        .iter()
        .map(|(c, w)| json!({"coeff": c.to_string(), "word": w}))
        .collect();
    json!({ "terms": terms })
}

pub fn parse_presentation(v: &Value, path: &str) -> Result<FreePresentation, CliError> {
    let gens_v = get(v, "generators", path)?;
    let gens = as_array(gens_v, &format!("{path}/generators"))?
        .iter()
        .enumerate()
        .map(|(i, g)| {
            as_str(g, &format!("{path}/generators/{i}")).map(|s| s.to_string())
        })
        .collect::<Result<Vec<_>, _>>()?;
    let rels = match v.get("relations") {
        None => Vec::new(),
        Some(rv) => as_array(rv, &format!("{path}/relations"))?
            .iter()
            .enumerate()
            .map(|(i, r)| parse_poly(r, &format!("{path}/relations/{i}")))
            .collect::<Result<Vec<_>, _>>()?,
    };
    FreePresentation::new(gens, rels).map_err(|e| CliError::at(path, e))
}

pub fn encode_presentation(p: &FreePresentation) -> Value {
    json!({
        "generators": p.generators(),
        "relations": p.relations().iter().map(encode_poly).collect::<Vec<_>>(),
    })
}

// ---------------------------------------------------------------------
// matrix representations over any of the three fields

#[derive(Debug, Clone)]
pub enum AnyMatrixRep {
    Q(MatrixRep<Rationals>),
    Quad(MatrixRep<QuadField>),
    P(MatrixRep<PrimeField>),
}

/// Dispatch a generic computation over the concrete scalar field.
#[macro_export]
macro_rules! with_rep {
    ($any:expr, $r:ident => $body:expr) => {
        match $any {
            $crate::jsonio::AnyMatrixRep::Q($r) => $body,
            $crate::jsonio::AnyMatrixRep::Quad($r) => $body,
            $crate::jsonio::AnyMatrixRep::P($r) => $body,
        }
    };
}

fn parse_images<T: Clone>(
    pres: &FreePresentation,
    v: &Value,
    path: &str,
    elem: &dyn Fn(&Value, &str) -> Result<T, CliError>,
) -> Result<Vec<Matrix<T>>, CliError> {
    let obj = v
        .as_object()
        .ok_or_else(|| CliError::schema(path, "expected an object keyed by generator name"))?;
    for key in obj.keys() {
        if pres.generator_index(key).is_none() {
            return Err(CliError::schema(
                &format!("{path}/{key}"),
                "not a declared generator",
            ));
        }
    }
    let mut out = Vec::with_capacity(pres.num_generators());
    for name in pres.generators() {
        let mv = obj.get(name).ok_or_else(|| {
            CliError::schema(&format!("{path}/{name}"), "missing generator image")
        })?;
        out.push(parse_matrix(mv, &format!("{path}/{name}"), elem)?);
    }
    Ok(out)
}

pub fn parse_rep(v: &Value, path: &str) -> Result<AnyMatrixRep, CliError> {
    let pres = parse_presentation(get(v, "presentation", path)?, &format!("{path}/presentation"))?;
    let desc = parse_field_desc(get(v, "field", path)?, &format!("{path}/field"))?;
    let n = as_usize(get(v, "n", path)?, &format!("{path}/n"))?;
    let images_v = get(v, "images", path)?;
    let ipath = format!("{path}/images");
    match desc {
        FieldDesc::Rational => {
            let images = parse_images(&pres, images_v, &ipath, &parse_rational_value)?;
            MatrixRep::new(pres, Rationals, n, images)
                .map(AnyMatrixRep::Q)
                .map_err(|e| CliError::at(path, e))
        }
        FieldDesc::Quadratic(f) => {
            let images = parse_images(&pres, images_v, &ipath, &|v, p| {
                parse_quad_value(&f, v, p)
            })?;
            MatrixRep::new(pres, f, n, images)
                .map(AnyMatrixRep::Quad)
                .map_err(|e| CliError::at(path, e))
        }
        FieldDesc::Prime(f) => {
            let images = parse_images(&pres, images_v, &ipath, &|v, p| {
                parse_fp_value(&f, v, p)
            })?;
            MatrixRep::new(pres, f, n, images)
                .map(AnyMatrixRep::P)
                .map_err(|e| CliError::at(path, e))
        }
    }
}

pub fn parse_quad_rep(v: &Value, path: &str) -> Result<MatrixRep<QuadField>, CliError> {
    match parse_rep(v, path)? {
        AnyMatrixRep::Quad(rep) => Ok(rep),
        _ => Err(CliError::schema(
            &format!("{path}/field"),
            "this command needs a representation over a quadratic field",
        )),
    }
}

pub fn encode_rep<F: Field>(rep: &MatrixRep<F>, desc: &FieldDesc) -> Value
where
    F::Elem: JsonScalar,
{
    let mut images = Map::new();
    for (name, m) in rep.presentation().generators().iter().zip(rep.images()) {
        images.insert(name.clone(), encode_matrix(m));
    }
    json!({
        "presentation": encode_presentation(rep.presentation()),
        "field": encode_field_desc(desc),
        "n": rep.degree(),
        "images": Value::Object(images),
    })
}

// ---------------------------------------------------------------------
// quivers

pub fn parse_quiver(v: &Value, path: &str) -> Result<Quiver, CliError> {
    let vertices = as_usize(get(v, "vertices", path)?, &format!("{path}/vertices"))?;
    let arrows_v = get(v, "arrows", path)?;
    let arrows = as_array(arrows_v, &format!("{path}/arrows"))?
        .iter()
        .enumerate()
        .map(|(k, a)| {
            let ap = format!("{path}/arrows/{k}");
            let src = as_usize(get(a, "src", &ap)?, &format!("{ap}/src"))?;
            let dst = as_usize(get(a, "dst", &ap)?, &format!("{ap}/dst"))?;
            Ok((src, dst))
        })
        .collect::<Result<Vec<_>, CliError>>()?;
    Quiver::new(vertices, arrows).map_err(|e| CliError::at(path, e))
}

pub fn encode_quiver(q: &Quiver) -> Value {
    json!({
        "vertices": q.vertex_count(),
        "arrows": q
            .arrows()
            .iter()
            .map(|&(s, t)| json!({"src": s, "dst": t}))
            .collect::<Vec<_>>(),
    })
}

/// Quiver representations are currently accepted over the rationals only;
/// the matrix-representation form covers the other fields.
pub fn parse_quiver_rep(v: &Value, path: &str) -> Result<QuiverRep<Rationals>, CliError> {
    if let Some(fv) = v.get("field") {
        match parse_field_desc(fv, &format!("{path}/field"))? {
            FieldDesc::Rational => {}
            _ => {
                return Err(CliError::schema(
                    &format!("{path}/field"),
                    "quiver representations are accepted over the rationals",
                ))
            }
        }
    }
    let quiver = parse_quiver(get(v, "quiver", path)?, &format!("{path}/quiver"))?;
    let dims = as_array(get(v, "dims", path)?, &format!("{path}/dims"))?
        .iter()
        .enumerate()
        .map(|(i, d)| as_usize(d, &format!("{path}/dims/{i}")))
        .collect::<Result<Vec<_>, _>>()?;
    let maps_v = get(v, "maps", path)?;
    let maps = as_array(maps_v, &format!("{path}/maps"))?
        .iter()
        .enumerate()
        .map(|(k, m)| parse_matrix(m, &format!("{path}/maps/{k}"), &parse_rational_value))
        .collect::<Result<Vec<_>, _>>()?;
    QuiverRep::new(Rationals, quiver, dims, maps).map_err(|e| CliError::at(path, e))
}

// ---------------------------------------------------------------------
// structure-constant algebras, cocycles and descent payloads

pub fn encode_sca<F: Field>(alg: &StructureConstantAlgebra<F>) -> Value
where
    F::Elem: JsonScalar,
{
    let m = alg.dim();
    let mut constants = Vec::with_capacity(m);
    for i in 0..m {
        let mut plane = Vec::with_capacity(m);
        for j in 0..m {
            let mut line = Vec::with_capacity(m);
            for k in 0..m {
                line.push(alg.constant(i, j, k).encode());
            }
            plane.push(Value::Array(line));
        }
        constants.push(Value::Array(plane));
    }
    json!({
        "dim": m,
        "basis": alg.basis_names(),
        "constants": constants,
        "unit": alg.unit().iter().map(|x| x.encode()).collect::<Vec<_>>(),
    })
}

pub fn encode_azu_rep(rep: &AzuRep<Rationals>) -> Value {
    let mut images = Map::new();
    for (name, coords) in rep
        .presentation()
        .generators()
        .iter()
        .zip(rep.images())
    {
        images.insert(
            name.clone(),
            Value::Array(coords.iter().map(|x| x.encode()).collect()),
        );
    }
    json!({
        "presentation": encode_presentation(rep.presentation()),
        "algebra": encode_sca(rep.algebra()),
        "images": Value::Object(images),
    })
}

pub fn parse_cocycle(v: &Value, path: &str) -> Result<Cocycle, CliError> {
    let d = as_i64(get(v, "d", path)?, &format!("{path}/d"))?;
    let field = QuadField::new(d).map_err(|e| CliError::at(&format!("{path}/d"), e))?;
    let s = parse_matrix(get(v, "S", path)?, &format!("{path}/S"), &|v, p| {
        parse_quad_value(&field, v, p)
    })?;
    Cocycle::new(&GaloisSetup::new(field), s).map_err(|e| CliError::at(&format!("{path}/S"), e))
}

pub fn encode_cocycle(c: &Cocycle) -> Value {
    json!({
        "S": encode_matrix(c.matrix()),
        "d": c.d(),
        "lambda": c.lambda().to_string(),
    })
}

pub fn encode_quaternion_recognition(rec: &QuaternionRecognition) -> Value {
    json!({
        "a": rec.a.to_string(),
        "b": rec.b.to_string(),
        "basis": rec
            .basis_coords
            .iter()
            .map(|v| Value::Array(v.iter().map(|x| x.encode()).collect()))
            .collect::<Vec<_>>(),
    })
}

pub fn encode_twisted_algebra(t: &TwistedAlgebra) -> Value {
    json!({
        "d": t.d,
        "n": t.n,
        "algebra": encode_sca(&t.algebra),
        "basis_matrices": t.basis_mats.iter().map(encode_matrix).collect::<Vec<_>>(),
        "quaternion_form": t
            .quaternion
            .as_ref()
            .map(encode_quaternion_recognition)
            .unwrap_or(Value::Null),
    })
}
