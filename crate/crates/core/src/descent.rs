//! Galois twisting over quadratic extensions L = Q(sqrt(d)): cocycle
//! extraction from Galois-stable representations, the twisted algebra as
//! the fixed points of a semilinear action, twisted representations, and
//! effective descent when the obstruction class vanishes.

use num::Zero;

use crate::azumaya::{
    azu_rep_construct, recognize_quaternion, AzuRep, QuaternionRecognition,
    StructureConstantAlgebra,
};
use crate::exactfield::{Field, QuadElem, QuadField, Rational, Rationals};
use crate::linalg::{self, Matrix};
use crate::matrep::{commutant_basis, find_intertwiner, Intertwiner, MatrixRep};
use crate::rng::SplitMix64;
use crate::{Error, Result};

/// Retry budget for the randomized part of the effective Hilbert 90
/// construction.
pub const HILBERT90_TRIES: u32 = 64;

/// A quadratic Galois setup: base field Q, extension L = Q(sqrt(d)), and
/// the conjugation automorphism.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct GaloisSetup {
    ext: QuadField,
}

impl GaloisSetup {
    pub fn new(ext: QuadField) -> Self {
        GaloisSetup { ext }
    }

    pub fn extension(&self) -> &QuadField {
        &self.ext
    }

    pub fn d(&self) -> i64 {
        self.ext.d()
    }

    /// Entrywise Galois conjugation.
    pub fn sigma_matrix(&self, m: &Matrix<QuadElem>) -> Matrix<QuadElem> {
        m.map(|x| x.conjugate())
    }

    /// Entrywise embedding of a rational matrix into L.
    pub fn embed_matrix(&self, m: &Matrix<Rational>) -> Matrix<QuadElem> {
        m.map(|x| self.ext.embed(x.clone()))
    }

    /// The rational matrix equal to `m`, when all radical parts vanish.
    pub fn rational_matrix(&self, m: &Matrix<QuadElem>) -> Option<Matrix<Rational>> {
        let mut out = Vec::with_capacity(m.rows());
        for r in 0..m.rows() {
            let mut row = Vec::with_capacity(m.cols());
            for c in 0..m.cols() {
                row.push(m.at(r, c).rational_part()?);
            }
            out.push(row);
        }
        Some(Matrix::from_rows(out).expect("rectangular"))
    }

    /// Base change of a rational representation to L.
    pub fn extend_rep(&self, rep: &MatrixRep<Rationals>) -> Result<MatrixRep<QuadField>> {
        MatrixRep::new(
            rep.presentation().clone(),
            self.ext,
            rep.degree(),
            rep.images().iter().map(|m| self.embed_matrix(m)).collect(),
        )
    }
}

/// An invertible matrix S over L whose product with its conjugate is a
/// rational scalar:  S sigma(S) = lambda I.
#[derive(Clone, Debug, PartialEq)]
pub struct Cocycle {
    s: Matrix<QuadElem>,
    lambda: Rational,
    d: i64,
}

impl Cocycle {
    pub fn new(setup: &GaloisSetup, s: Matrix<QuadElem>) -> Result<Self> {
        let lambda = cocycle_scalar(setup, &s)?;
        Ok(Cocycle {
            s,
            lambda,
            d: setup.d(),
        })
    }

    pub fn matrix(&self) -> &Matrix<QuadElem> {
        &self.s
    }

    pub fn lambda(&self) -> &Rational {
        &self.lambda
    }

    pub fn d(&self) -> i64 {
        self.d
    }

    pub fn degree(&self) -> usize {
        self.s.rows()
    }

    pub fn setup(&self) -> GaloisSetup {
        GaloisSetup::new(QuadField::new(self.d).expect("stored d is valid"))
    }
}

/// The scalar lambda with S sigma(S) = lambda I; fails when the product is
/// not a rational scalar matrix or S is singular.
pub fn cocycle_scalar(setup: &GaloisSetup, s: &Matrix<QuadElem>) -> Result<Rational> {
    if !s.is_square() {
        return Err(Error::NotACocycle("matrix is not square".into()));
    }
    let field = setup.ext;
    if !linalg::is_invertible(&field, s) {
        return Err(Error::NotACocycle("matrix is singular".into()));
    }
    let n = s.rows();
    let prod = linalg::mul(&field, s, &setup.sigma_matrix(s));
    let lambda = prod
        .at(0, 0)
        .rational_part()
        .ok_or_else(|| Error::NotACocycle("S sigma(S) has an irrational diagonal".into()))?;
    let expected = linalg::scale(&field, &field.embed(lambda.clone()), &linalg::identity(&field, n));
    if prod != expected {
        return Err(Error::NotACocycle("S sigma(S) is not a scalar matrix".into()));
    }
    if lambda.is_zero() {
        return Err(Error::NotACocycle("scalar is zero".into()));
    }
    Ok(lambda)
}

/// Entrywise Galois conjugate of a representation; the relations have
/// rational coefficients, so the result is again a valid representation.
pub fn galois_translate(rep: &MatrixRep<QuadField>) -> MatrixRep<QuadField> {
    MatrixRep::new(
        rep.presentation().clone(),
        *rep.field(),
        rep.degree(),
        rep.images().iter().map(|m| m.map(|x| x.conjugate())).collect(),
    )
    .expect("conjugation preserves relations with rational coefficients")
}

/// The fixed-point algebra of the twisted semilinear action
/// x -> S sigma(x) S^{-1}, as a rational structure-constant algebra of
/// dimension n^2 together with its embedding back into Mat_n(L).
#[derive(Clone, Debug)]
pub struct TwistedAlgebra {
    pub d: i64,
    pub n: usize,
    pub algebra: StructureConstantAlgebra<Rationals>,
    /// Basis of the fixed algebra inside Mat_n(L); entry k is the image of
    /// the k-th algebra basis vector.
    pub basis_mats: Vec<Matrix<QuadElem>>,
    /// Quaternion parameters when the algebra is recognized as H(a, b)
    /// (degree 2); purely cosmetic, the raw table is always present.
    pub quaternion: Option<QuaternionRecognition>,
}

impl TwistedAlgebra {
    /// Inclusion into Mat_n(L): the matrix with the given coordinates.
    pub fn embed(&self, coords: &[Rational]) -> Matrix<QuadElem> {
        let field = QuadField::new(self.d).expect("valid d");
        let mut acc = linalg::zeros(&field, self.n, self.n);
        for (c, m) in coords.iter().zip(&self.basis_mats) {
            let cc = field.embed(c.clone());
            acc = linalg::add(&field, &acc, &linalg::scale(&field, &cc, m));
        }
        acc
    }

    /// Coordinates of a matrix lying in the fixed algebra.
    pub fn coords_of(&self, m: &Matrix<QuadElem>) -> Option<Vec<Rational>> {
        let cols = self.rational_coordinate_columns();
        let target = rational_coordinates(m);
        linalg::solve(&Rationals, &cols, &target)
    }

    fn rational_coordinate_columns(&self) -> Matrix<Rational> {
        let nn2 = 2 * self.n * self.n;
        Matrix::from_fn(nn2, self.basis_mats.len(), |r, c| {
            rational_coordinates(&self.basis_mats[c])[r].clone()
        })
    }
}

/// Mat_n(L) as a rational vector space of dimension 2 n^2: interleaved
/// rational and radical parts in row-major entry order.
fn rational_coordinates(m: &Matrix<QuadElem>) -> Vec<Rational> {
    let mut out = Vec::with_capacity(2 * m.rows() * m.cols());
    for e in m.entries() {
        out.push(e.a.clone());
        out.push(e.b.clone());
    }
    out
}

fn matrix_from_rational_coordinates(
    field: &QuadField,
    n: usize,
    coords: &[Rational],
) -> Matrix<QuadElem> {
    Matrix::from_fn(n, n, |r, c| {
        let base = 2 * (r * n + c);
        field.elem(coords[base].clone(), coords[base + 1].clone())
    })
}

/// Fixed points of x -> S sigma(x) S^{-1} inside Mat_n(L), computed as the
/// kernel of a rational-linear operator on the 2 n^2 dimensional
/// coordinate space.  The result always has rational dimension n^2 and
/// spans Mat_n(L) over L.
pub fn semilinear_fixed_algebra(cocycle: &Cocycle) -> Result<TwistedAlgebra> {
    let setup = cocycle.setup();
    let field = *setup.extension();
    let n = cocycle.degree();
    let s = cocycle.matrix();
    let sinv = linalg::inverse(&field, s)
        .ok_or_else(|| Error::NotACocycle("cocycle matrix is singular".into()))?;
    let dim_q = 2 * n * n;
    // columns: T applied to each rational basis vector of Mat_n(L)
    let mut sys = linalg::zeros(&Rationals, dim_q, dim_q);
    for col in 0..dim_q {
        let mut coords = vec![Rational::zero(); dim_q];
        coords[col] = Rationals.one();
        let x = matrix_from_rational_coordinates(&field, n, &coords);
        let tx = linalg::mul(&field, &linalg::mul(&field, s, &setup.sigma_matrix(&x)), &sinv);
        let diff = linalg::sub(&field, &tx, &x);
        for (r, v) in rational_coordinates(&diff).into_iter().enumerate() {
            sys.set(r, col, v);
        }
    }
    let kernel = linalg::kernel_basis(&Rationals, &sys);
    if kernel.len() != n * n {
        return Err(Error::Internal(format!(
            "fixed algebra has rational dimension {}, expected {}",
            kernel.len(),
            n * n
        )));
    }
    let basis_mats: Vec<Matrix<QuadElem>> = kernel
        .iter()
        .map(|v| matrix_from_rational_coordinates(&field, n, v))
        .collect();
    // the fixed algebra must span Mat_n(L) over L
    let over_l = Matrix::from_fn(n * n, n * n, |r, c| basis_mats[r].entries()[c].clone());
    if linalg::rank(&field, &over_l) != n * n {
        return Err(Error::Internal(
            "fixed algebra does not span the full matrix algebra over L".into(),
        ));
    }
    // structure constants over Q
    let coord_cols = Matrix::from_fn(dim_q, n * n, |r, c| kernel[c][r].clone());
    let mut constants = Vec::with_capacity(n * n * n * n * n * n);
    for i in 0..n * n {
        for j in 0..n * n {
            let prod = linalg::mul(&field, &basis_mats[i], &basis_mats[j]);
            let coords = linalg::solve(&Rationals, &coord_cols, &rational_coordinates(&prod))
                .ok_or_else(|| {
                    Error::Internal("fixed algebra is not closed under multiplication".into())
                })?;
            constants.extend(coords);
        }
    }
    let unit_coords = linalg::solve(
        &Rationals,
        &coord_cols,
        &rational_coordinates(&linalg::identity(&field, n)),
    )
    .ok_or_else(|| Error::Internal("identity not fixed by the twisted action".into()))?;
    let names = (0..n * n).map(|k| format!("u{k}")).collect();
    let algebra = StructureConstantAlgebra::new(Rationals, names, constants, unit_coords)?;
    let quaternion = if n == 2 {
        recognize_quaternion(&algebra, crate::exactfield::DEFAULT_TRIAL_BOUND)
    } else {
        None
    };
    Ok(TwistedAlgebra {
        d: cocycle.d(),
        n,
        algebra,
        basis_mats,
        quaternion,
    })
}

/// Re-express a representation fixed by the twisted action in the
/// rational basis of the fixed algebra.
pub fn twist_into(
    rep: &MatrixRep<QuadField>,
    cocycle: &Cocycle,
    twisted: &TwistedAlgebra,
) -> Result<AzuRep<Rationals>> {
    let setup = cocycle.setup();
    let field = *setup.extension();
    if rep.field().d() != cocycle.d() {
        return Err(Error::InvalidInput(
            "representation and cocycle live over different fields".into(),
        ));
    }
    if rep.degree() != cocycle.degree() {
        return Err(Error::DimensionMismatch(
            "representation degree differs from cocycle size".into(),
        ));
    }
    let s = cocycle.matrix();
    let sinv = linalg::inverse(&field, s)
        .ok_or_else(|| Error::NotACocycle("cocycle matrix is singular".into()))?;
    let mut images = Vec::with_capacity(rep.images().len());
    for (g, img) in rep.images().iter().enumerate() {
        let twisted_img = linalg::mul(
            &field,
            &linalg::mul(&field, s, &setup.sigma_matrix(img)),
            &sinv,
        );
        if &twisted_img != img {
            let name = rep.presentation().generators()[g].clone();
            return Err(Error::NotFixed(name));
        }
        let coords = twisted.coords_of(img).ok_or_else(|| {
            Error::Internal("fixed image has no coordinates in the fixed algebra".into())
        })?;
        images.push(coords);
    }
    azu_rep_construct(rep.presentation().clone(), twisted.algebra.clone(), images)
}

/// Construct the twisted algebra for the cocycle and re-express the
/// representation inside it.
pub fn twist_representation(
    rep: &MatrixRep<QuadField>,
    cocycle: &Cocycle,
) -> Result<(TwistedAlgebra, AzuRep<Rationals>)> {
    let twisted = semilinear_fixed_algebra(cocycle)?;
    let azu = twist_into(rep, cocycle, &twisted)?;
    Ok((twisted, azu))
}

/// For a Schur representation isomorphic to its Galois conjugate, extract
/// the intertwiner S with  S (sigma rho)(g) S^{-1} = rho(g)  and its
/// scalar; Schur-ness forces S sigma(S) to be scalar, which is verified
/// rather than assumed.
pub fn prepare_twist(rep: &MatrixRep<QuadField>, seed: u64) -> Result<Cocycle> {
    let setup = GaloisSetup::new(*rep.field());
    let conj = galois_translate(rep);
    let s = match find_intertwiner(rep, &conj, seed)? {
        Intertwiner::Found(s) => s,
        Intertwiner::ProvablyNone => return Err(Error::NotGaloisStable),
        Intertwiner::BudgetExhausted { space_dim } => {
            return Err(Error::BudgetExhausted(format!(
                "no invertible intertwiner with the conjugate found (solution space dimension {space_dim})"
            )))
        }
    };
    let commutant_dim = commutant_basis(rep).dim();
    if commutant_dim != 1 {
        return Err(Error::NotSchur(commutant_dim));
    }
    Cocycle::new(&setup, s)
}

/// Effective Hilbert 90: for S' with S' sigma(S') = I, produce invertible
/// P with sigma(P) = S'^{-1} P.  The ansatz P = M + S' sigma(M) satisfies
/// the identity for every M; seeded retries find an invertible one.
pub fn effective_hilbert90(
    setup: &GaloisSetup,
    s_prime: &Matrix<QuadElem>,
    seed: u64,
) -> Result<Matrix<QuadElem>> {
    let field = *setup.extension();
    let n = s_prime.rows();
    let prod = linalg::mul(&field, s_prime, &setup.sigma_matrix(s_prime));
    if prod != linalg::identity(&field, n) {
        return Err(Error::NotACocycle("S' sigma(S') is not the identity".into()));
    }
    let mut rng = SplitMix64::new(seed);
    for attempt in 0..HILBERT90_TRIES {
        let m = if attempt == 0 {
            linalg::identity(&field, n)
        } else {
            Matrix::from_fn(n, n, |_, _| {
                field.elem(
                    Rational::from_integer(rng.int_in(-3, 3).into()),
                    Rational::from_integer(rng.int_in(-3, 3).into()),
                )
            })
        };
        let p = linalg::add(
            &field,
            &m,
            &linalg::mul(&field, s_prime, &setup.sigma_matrix(&m)),
        );
        if linalg::is_invertible(&field, &p) {
            debug_assert_eq!(
                linalg::mul(&field, s_prime, &setup.sigma_matrix(&p)),
                p,
                "construction identity"
            );
            return Ok(p);
        }
    }
    Err(Error::BudgetExhausted(format!(
        "no invertible splitting found in {HILBERT90_TRIES} attempts"
    )))
}

/// Bounded search for c in L with N(c) = lambda, over c = (x + y sqrt(d))/q
/// with |x|, |y|, q up to the height.
pub fn solve_norm_equation(d: i64, lambda: &Rational, height: i64) -> Option<QuadElem> {
    use num::ToPrimitive;
    let field = QuadField::new(d).ok()?;
    for q in 1..=height {
        // lambda q^2 must be an integer
        let scaled = lambda * Rational::from_integer((q * q).into());
        if !scaled.is_integer() {
            continue;
        }
        let t = scaled.numer().to_i128()?;
        for y in 0..=height {
            let rhs = t + (d as i128) * (y as i128) * (y as i128);
            if rhs < 0 {
                continue;
            }
            let x = (rhs as f64).sqrt().round() as i128;
            for cand in [x - 1, x, x + 1] {
                if cand >= 0 && cand * cand == rhs && cand <= height as i128 {
                    let c = field.elem(
                        crate::exactfield::rat(cand as i64, q),
                        crate::exactfield::rat(y, q),
                    );
                    debug_assert_eq!(&c.norm(), lambda);
                    return Some(c);
                }
            }
        }
    }
    None
}

/// Effective descent: given the cocycle of a Galois-stable representation
/// and a norm solution N(c) = lambda, produce an isomorphic representation
/// with rational entries.
pub fn descend_representation(
    rep: &MatrixRep<QuadField>,
    cocycle: &Cocycle,
    scaling: &QuadElem,
    seed: u64,
) -> Result<MatrixRep<Rationals>> {
    let setup = cocycle.setup();
    let field = *setup.extension();
    if &scaling.norm() != cocycle.lambda() {
        return Err(Error::NormMismatch);
    }
    let s = cocycle.matrix();
    let sinv = linalg::inverse(&field, s)
        .ok_or_else(|| Error::NotACocycle("cocycle matrix is singular".into()))?;
    // the representation must be fixed by the twisted action
    for (g, img) in rep.images().iter().enumerate() {
        let t = linalg::mul(
            &field,
            &linalg::mul(&field, s, &setup.sigma_matrix(img)),
            &sinv,
        );
        if &t != img {
            return Err(Error::NotFixed(
                rep.presentation().generators()[g].clone(),
            ));
        }
    }
    let cinv = scaling
        .inv()
        .ok_or_else(|| Error::NotACocycle("norm solution is zero".into()))?;
    let s_prime = linalg::scale(&field, &cinv, s);
    let p = effective_hilbert90(&setup, &s_prime, seed)?;
    let pinv = linalg::inverse(&field, &p).expect("constructed invertible");
    let mut images = Vec::with_capacity(rep.images().len());
    for img in rep.images() {
        let conj = linalg::mul(&field, &linalg::mul(&field, &pinv, img), &p);
        let rational = setup.rational_matrix(&conj).ok_or_else(|| {
            Error::Internal("descended matrix has irrational entries".into())
        })?;
        images.push(rational);
    }
    MatrixRep::new(rep.presentation().clone(), Rationals, rep.degree(), images)
}
