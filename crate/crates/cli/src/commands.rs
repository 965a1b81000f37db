//! One function per CLI command; each returns the body merged into the
//! common report envelope.

use serde_json::{json, Map, Value};

use schur_forge::azumaya::quaternion_algebra;
use schur_forge::brauer::{
    self, geometric_origin_report, quadratic_origin_demo, DemoMode, OriginWitness, Place,
};
use schur_forge::descent::{
    descend_representation, solve_norm_equation, twist_representation,
};
use schur_forge::exactfield::QuadField;
use schur_forge::matrep::{
    commutant_basis, endomorphism_structure_constants, find_intertwiner, image_span_dim,
    is_absolutely_simple, Intertwiner,
};
use schur_forge::quiverkit::{quiver_to_matrep, right_ideal_dims_for_matrep};
use schur_forge::Error;

use crate::jsonio::{
    self, as_str, encode_azu_rep, encode_cocycle, encode_matrix, encode_quad,
    encode_quaternion_recognition, encode_rep, encode_sca, encode_twisted_algebra, get,
    parse_cocycle, parse_quad_value, parse_quiver_rep, parse_rational_value, parse_rep,
    AnyMatrixRep, CliError, FieldDesc,
};
use crate::{with_rep, JobSpec};

type Body = Map<String, Value>;

fn body(pairs: Vec<(&str, Value)>) -> Body {
    pairs.into_iter().map(|(k, v)| (k.to_string(), v)).collect()
}

fn input_rep(job: &JobSpec) -> Result<AnyMatrixRep, CliError> {
    parse_rep(get(&job.input, "rep", "")?, "/rep")
}

/// Representation input for `schur`: either a matrix representation or a
/// quiver representation (converted through the path algebra).  The
/// `--quiver` flag insists on the quiver form.
fn schur_input(job: &JobSpec) -> Result<AnyMatrixRep, CliError> {
    if job.quiver && job.input.get("quiver_rep").is_none() {
        return Err(CliError::schema(
            "/quiver_rep",
            "--quiver requires a quiver_rep input",
        ));
    }
    if job.input.get("quiver_rep").is_some() {
        let qr = parse_quiver_rep(get(&job.input, "quiver_rep", "")?, "/quiver_rep")?;
        let rep = quiver_to_matrep(&qr)?;
        Ok(AnyMatrixRep::Q(rep))
    } else {
        input_rep(job)
    }
}

pub fn schur(job: &JobSpec) -> Result<Body, CliError> {
    let any = schur_input(job)?;
    let (schur, dim) = with_rep!(&any, r => {
        let cb = commutant_basis(r);
        (cb.dim() == 1, cb.dim())
    });
    Ok(body(vec![
        ("schur", json!(schur)),
        ("commutant_dim", json!(dim)),
    ]))
}

pub fn endo(job: &JobSpec) -> Result<Body, CliError> {
    let any = input_rep(job)?;
    let alg = with_rep!(&any, r => encode_sca(&endomorphism_structure_constants(r)));
    Ok(body(vec![("algebra", alg)]))
}

pub fn simple(job: &JobSpec) -> Result<Body, CliError> {
    let any = input_rep(job)?;
    let (simple, span) = with_rep!(&any, r => (is_absolutely_simple(r), image_span_dim(r)));
    Ok(body(vec![
        ("absolutely_simple", json!(simple)),
        ("span_dim", json!(span)),
    ]))
}

pub fn intertwine(job: &JobSpec) -> Result<Body, CliError> {
    let a = parse_rep(get(&job.input, "rep1", "")?, "/rep1")?;
    let b = parse_rep(get(&job.input, "rep2", "")?, "/rep2")?;
    let outcome = match (&a, &b) {
        (AnyMatrixRep::Q(x), AnyMatrixRep::Q(y)) => {
            find_intertwiner(x, y, job.seed).map(|o| match o {
                Intertwiner::Found(s) => (true, Some(encode_matrix(&s)), None),
                Intertwiner::ProvablyNone => (false, None, None),
                Intertwiner::BudgetExhausted { space_dim } => (false, None, Some(space_dim)),
            })
        }
        (AnyMatrixRep::Quad(x), AnyMatrixRep::Quad(y)) => {
            find_intertwiner(x, y, job.seed).map(|o| match o {
                Intertwiner::Found(s) => (true, Some(encode_matrix(&s)), None),
                Intertwiner::ProvablyNone => (false, None, None),
                Intertwiner::BudgetExhausted { space_dim } => (false, None, Some(space_dim)),
            })
        }
        (AnyMatrixRep::P(x), AnyMatrixRep::P(y)) => {
            find_intertwiner(x, y, job.seed).map(|o| match o {
                Intertwiner::Found(s) => (true, Some(encode_matrix(&s)), None),
                Intertwiner::ProvablyNone => (false, None, None),
                Intertwiner::BudgetExhausted { space_dim } => (false, None, Some(space_dim)),
            })
        }
        _ => {
            return Err(CliError::schema(
                "/rep2/field",
                "both representations must live over the same field",
            ))
        }
    }?;
    match outcome {
        (true, Some(s), _) => Ok(body(vec![
            ("isomorphic", json!(true)),
            ("status", json!("found")),
            ("intertwiner", s),
        ])),
        (_, _, Some(space_dim)) => Err(Error::BudgetExhausted(format!(
            "no invertible intertwiner found in a solution space of dimension {space_dim}"
        ))
        .into()),
        _ => Ok(body(vec![
            ("isomorphic", json!(false)),
            ("status", json!("provably_none")),
            ("intertwiner", Value::Null),
        ])),
    }
}

pub fn quaternion(job: &JobSpec) -> Result<Body, CliError> {
    let a = parse_rational_value(get(&job.input, "a", "")?, "/a")?;
    let b = parse_rational_value(get(&job.input, "b", "")?, "/b")?;
    let h = quaternion_algebra(&a, &b)?;
    let mut nrd = Map::new();
    for (k, name) in ["1", "i", "j", "k"].iter().enumerate() {
        nrd.insert(
            name.to_string(),
            json!(h.reduced_norm(&h.sca().basis_elem(k)).to_string()),
        );
    }
    Ok(body(vec![
        ("quaternion", json!({"a": a.to_string(), "b": b.to_string()})),
        ("algebra", encode_sca(h.sca())),
        ("nrd_basis", Value::Object(nrd)),
    ]))
}

fn parse_place(v: &Value, path: &str) -> Result<Place, CliError> {
    match v {
        Value::String(s) if s == "inf" || s == "infinity" || s == "oo" => Ok(Place::Infinity),
        Value::String(s) => s
            .trim()
            .parse::<u64>()
            .map(Place::Prime)
            .map_err(|_| CliError::schema(path, "expected a prime or \"inf\"")),
        Value::Number(_) => Ok(Place::Prime(jsonio::as_u64(v, path)?)),
        _ => Err(CliError::schema(path, "expected a prime or \"inf\"")),
    }
}

fn encode_place(p: Place) -> Value {
    match p {
        Place::Infinity => json!("inf"),
        Place::Prime(q) => json!(q),
    }
}

pub fn hilbert(job: &JobSpec) -> Result<Body, CliError> {
    let a = parse_rational_value(get(&job.input, "a", "")?, "/a")?;
    let b = parse_rational_value(get(&job.input, "b", "")?, "/b")?;
    let place = parse_place(get(&job.input, "place", "")?, "/place")?;
    let symbol = brauer::hilbert_symbol(&a, &b, place, job.budget.factor_bound)?;
    Ok(body(vec![
        ("place", encode_place(place)),
        ("symbol", json!(symbol)),
    ]))
}

pub fn split(job: &JobSpec) -> Result<Body, CliError> {
    let a = parse_rational_value(get(&job.input, "a", "")?, "/a")?;
    let b = parse_rational_value(get(&job.input, "b", "")?, "/b")?;
    let places = brauer::ramified_places(&a, &b, job.budget.factor_bound)?;
    let ramified: Vec<Value> = places
        .entries
        .iter()
        .map(|&(p, s)| json!({"place": encode_place(p), "symbol": s}))
        .collect();
    Ok(body(vec![
        ("split", json!(places.entries.is_empty())),
        ("ramified", Value::Array(ramified)),
    ]))
}

pub fn origin(job: &JobSpec) -> Result<Body, CliError> {
    let rep = jsonio::parse_quad_rep(get(&job.input, "rep", "")?, "/rep")?;
    let report = geometric_origin_report(&rep, job.seed, &job.budget)?;
    let mut out = body(vec![
        ("lambda", json!(report.lambda.to_string())),
        (
            "class",
            json!({"a": report.class.a, "b": report.class.b}),
        ),
        ("origin", json!(report.origin)),
        ("cocycle", encode_cocycle(&report.cocycle)),
    ]);
    match &report.witness {
        OriginWitness::Descended(w) => {
            out.insert("descended_rep".into(), encode_rep(w, &FieldDesc::Rational));
        }
        OriginWitness::Twisted { algebra, rep } => {
            out.insert("twisted_algebra".into(), encode_twisted_algebra(algebra));
            out.insert("twisted_rep".into(), encode_azu_rep(rep));
        }
    }
    Ok(out)
}

pub fn twist(job: &JobSpec) -> Result<Body, CliError> {
    let rep = jsonio::parse_quad_rep(get(&job.input, "rep", "")?, "/rep")?;
    let cocycle = parse_cocycle(get(&job.input, "cocycle", "")?, "/cocycle")?;
    if cocycle.d() != rep.field().d() {
        return Err(CliError::schema(
            "/cocycle/d",
            "cocycle and representation live over different fields",
        ));
    }
    let (twisted, azu) = twist_representation(&rep, &cocycle)?;
    Ok(body(vec![
        ("lambda", json!(cocycle.lambda().to_string())),
        ("cocycle", encode_cocycle(&cocycle)),
        ("twisted_algebra", encode_twisted_algebra(&twisted)),
        ("twisted_rep", encode_azu_rep(&azu)),
        (
            "quaternion_form",
            twisted
                .quaternion
                .as_ref()
                .map(encode_quaternion_recognition)
                .unwrap_or(Value::Null),
        ),
    ]))
}

pub fn descend(job: &JobSpec) -> Result<Body, CliError> {
    let rep = jsonio::parse_quad_rep(get(&job.input, "rep", "")?, "/rep")?;
    let cocycle = parse_cocycle(get(&job.input, "cocycle", "")?, "/cocycle")?;
    if cocycle.d() != rep.field().d() {
        return Err(CliError::schema(
            "/cocycle/d",
            "cocycle and representation live over different fields",
        ));
    }
    let field = QuadField::new(cocycle.d()).expect("validated");
    let c = match job.input.get("c") {
        Some(cv) => parse_quad_value(&field, cv, "/c")?,
        None => {
            // solve the norm equation ourselves, after certifying that a
            // solution exists at all
            let d_class = cocycle.d();
            let lambda_class =
                schur_forge::exactfield::square_class(cocycle.lambda(), job.budget.factor_bound)?;
            if !brauer::is_split_int(d_class, lambda_class) {
                return Err(Error::NormMismatch.into());
            }
            solve_norm_equation(cocycle.d(), cocycle.lambda(), job.budget.norm_height)
                .ok_or_else(|| {
                    Error::BudgetExhausted(format!(
                        "norm equation N(c) = {} unsolved within height {}",
                        cocycle.lambda(),
                        job.budget.norm_height
                    ))
                })?
        }
    };
    let descended = descend_representation(&rep, &cocycle, &c, job.seed)?;
    Ok(body(vec![
        ("lambda", json!(cocycle.lambda().to_string())),
        ("c", encode_quad(&c)),
        ("descended_rep", encode_rep(&descended, &FieldDesc::Rational)),
    ]))
}

pub fn quiver2rep(job: &JobSpec) -> Result<Body, CliError> {
    let qr = parse_quiver_rep(get(&job.input, "quiver_rep", "")?, "/quiver_rep")?;
    let rep = quiver_to_matrep(&qr)?;
    let ideal_dims = right_ideal_dims_for_matrep(qr.quiver(), &rep)?;
    Ok(body(vec![
        ("quiver", jsonio::encode_quiver(qr.quiver())),
        ("rep", encode_rep(&rep, &FieldDesc::Rational)),
        ("dim_vector", json!(qr.dims())),
        ("right_ideal_dims", json!(ideal_dims)),
    ]))
}

pub fn demo_quadratic(job: &JobSpec) -> Result<Body, CliError> {
    let lambda = parse_rational_value(get(&job.input, "lambda", "")?, "/lambda")?;
    let mode = match as_str(get(&job.input, "mode", "")?, "/mode")? {
        "real-sign" => DemoMode::RealSign,
        "rational-square" => DemoMode::RationalSquare,
        other => {
            return Err(CliError::schema(
                "/mode",
                &format!("unknown mode {other:?}; expected real-sign or rational-square"),
            ))
        }
    };
    let origin = quadratic_origin_demo(&lambda, mode)?;
    let disc = &lambda * &lambda - schur_forge::exactfield::rat_int(4);
    Ok(body(vec![
        ("origin", json!(origin)),
        ("discriminant", json!(disc.to_string())),
    ]))
}
