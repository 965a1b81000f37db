//! Finite-dimensional algebras given by structure constants: quaternion
//! algebras H(a,b), splitting embeddings into 2x2 matrices over a
//! quadratic extension, representations valued in such algebras, regular
//! representations, and commutant/bicommutant computations inside a full
//! matrix algebra.

use crate::exactfield::{
    sqrt_rational, square_class, Field, QuadElem, QuadField, Rational, Rationals,
};
use crate::linalg::{self, EchelonSpan, Matrix};
use crate::matrep::{commutant_of_matrices, span_closure};
use crate::ncpoly::{AlgebraEval, FreePresentation};
use crate::{Error, Result};

/// Height limit of the isotropy search used as the independent
/// zero-divisor oracle.  By Holzer's bound any split conic with the
/// coefficient sizes used at desk scale has a point well below this.
pub const ZERO_DIVISOR_HEIGHT: i64 = 50;

/// Algebra of dimension m over F with basis b_0..b_{m-1}, multiplication
/// b_i b_j = sum_k c[i][j][k] b_k, and a designated unit.  Associativity
/// and the unit axioms are verified at construction.
#[derive(Clone, Debug, PartialEq)]
pub struct StructureConstantAlgebra<F: Field> {
    field: F,
    dim: usize,
    basis_names: Vec<String>,
    constants: Vec<F::Elem>, // index (i*dim + j)*dim + k
    unit: Vec<F::Elem>,
}

impl<F: Field> StructureConstantAlgebra<F> {
    pub fn new(
        field: F,
        basis_names: Vec<String>,
        constants: Vec<F::Elem>,
        unit: Vec<F::Elem>,
    ) -> Result<Self> {
        let dim = basis_names.len();
        if dim == 0 {
            return Err(Error::InvalidInput("algebra of dimension zero".into()));
        }
        if constants.len() != dim * dim * dim {
            return Err(Error::DimensionMismatch(format!(
                "{} structure constants for dimension {dim}",
                constants.len()
            )));
        }
        if unit.len() != dim {
            return Err(Error::DimensionMismatch("unit coordinate length".into()));
        }
        let alg = StructureConstantAlgebra {
            field,
            dim,
            basis_names,
            constants,
            unit,
        };
        alg.verify_associativity()?;
        alg.verify_unit()?;
        Ok(alg)
    }

    fn verify_associativity(&self) -> Result<()> {
        let f = &self.field;
        let m = self.dim;
        for i in 0..m {
            for j in 0..m {
                for k in 0..m {
                    // (b_i b_j) b_k via sum over t of c[i][j][t] c[t][k][.]
                    let mut lhs = vec![f.zero(); m];
                    for t in 0..m {
                        let cijt = self.constant(i, j, t);
                        if f.is_zero(cijt) {
                            continue;
                        }
                        for l in 0..m {
                            lhs[l] = f.add(&lhs[l], &f.mul(cijt, self.constant(t, k, l)));
                        }
                    }
                    let mut rhs = vec![f.zero(); m];
                    for t in 0..m {
                        let cjkt = self.constant(j, k, t);
                        if f.is_zero(cjkt) {
                            continue;
                        }
                        for l in 0..m {
                            rhs[l] = f.add(&rhs[l], &f.mul(self.constant(i, t, l), cjkt));
                        }
                    }
                    if lhs != rhs {
                        return Err(Error::NotAssociative(i, j, k));
                    }
                }
            }
        }
        Ok(())
    }

    fn verify_unit(&self) -> Result<()> {
        for k in 0..self.dim {
            let b = self.basis_elem(k);
            if self.mul_elems(&self.unit, &b) != b || self.mul_elems(&b, &self.unit) != b {
                return Err(Error::BadUnit);
            }
        }
        Ok(())
    }

    pub fn field(&self) -> &F {
        &self.field
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn basis_names(&self) -> &[String] {
        &self.basis_names
    }

    pub fn constant(&self, i: usize, j: usize, k: usize) -> &F::Elem {
        &self.constants[(i * self.dim + j) * self.dim + k]
    }

    pub fn constants(&self) -> &[F::Elem] {
        &self.constants
    }

    pub fn unit(&self) -> &[F::Elem] {
        &self.unit
    }

    pub fn zero_elem(&self) -> Vec<F::Elem> {
        vec![self.field.zero(); self.dim]
    }

    pub fn basis_elem(&self, k: usize) -> Vec<F::Elem> {
        let mut v = self.zero_elem();
        v[k] = self.field.one();
        v
    }

    pub fn add_elems(&self, x: &[F::Elem], y: &[F::Elem]) -> Vec<F::Elem> {
        x.iter()
            .zip(y)
            .map(|(a, b)| self.field.add(a, b))
            .collect()
    }

    pub fn scale_elem(&self, c: &F::Elem, x: &[F::Elem]) -> Vec<F::Elem> {
        x.iter().map(|a| self.field.mul(c, a)).collect()
    }

    pub fn mul_elems(&self, x: &[F::Elem], y: &[F::Elem]) -> Vec<F::Elem> {
        let f = &self.field;
        let m = self.dim;
        let mut out = vec![f.zero(); m];
        for i in 0..m {
            if f.is_zero(&x[i]) {
                continue;
            }
            for j in 0..m {
                if f.is_zero(&y[j]) {
                    continue;
                }
                let xy = f.mul(&x[i], &y[j]);
                for k in 0..m {
                    let c = self.constant(i, j, k);
                    if !f.is_zero(c) {
                        out[k] = f.add(&out[k], &f.mul(&xy, c));
                    }
                }
            }
        }
        out
    }

    pub fn is_zero_elem(&self, x: &[F::Elem]) -> bool {
        x.iter().all(|a| self.field.is_zero(a))
    }

    /// If x = lambda * 1, return lambda.
    pub fn as_scalar(&self, x: &[F::Elem]) -> Option<F::Elem> {
        let f = &self.field;
        let pivot = self.unit.iter().position(|u| !f.is_zero(u))?;
        let lambda = f.div(&x[pivot], &self.unit[pivot])?;
        let expected = self.scale_elem(&lambda, &self.unit);
        if expected == x {
            Some(lambda)
        } else {
            None
        }
    }

    /// Matrix of left multiplication by x in the algebra basis.
    pub fn left_mult_matrix(&self, x: &[F::Elem]) -> Matrix<F::Elem> {
        let f = &self.field;
        let m = self.dim;
        Matrix::from_fn(m, m, |l, t| {
            let mut acc = f.zero();
            for (i, xi) in x.iter().enumerate() {
                if !f.is_zero(xi) {
                    acc = f.add(&acc, &f.mul(xi, self.constant(i, t, l)));
                }
            }
            acc
        })
    }

    /// Matrix of right multiplication by x in the algebra basis.
    pub fn right_mult_matrix(&self, x: &[F::Elem]) -> Matrix<F::Elem> {
        let f = &self.field;
        let m = self.dim;
        Matrix::from_fn(m, m, |l, t| {
            let mut acc = f.zero();
            for (j, xj) in x.iter().enumerate() {
                if !f.is_zero(xj) {
                    acc = f.add(&acc, &f.mul(xj, self.constant(t, j, l)));
                }
            }
            acc
        })
    }
}

impl<F: Field> AlgebraEval for StructureConstantAlgebra<F> {
    type Elt = Vec<F::Elem>;

    fn one(&self) -> Vec<F::Elem> {
        self.unit.clone()
    }

    fn zero(&self) -> Vec<F::Elem> {
        self.zero_elem()
    }

    fn add(&self, a: &Vec<F::Elem>, b: &Vec<F::Elem>) -> Vec<F::Elem> {
        self.add_elems(a, b)
    }

    fn mul(&self, a: &Vec<F::Elem>, b: &Vec<F::Elem>) -> Vec<F::Elem> {
        self.mul_elems(a, b)
    }

    fn scale(&self, c: &Rational, x: &Vec<F::Elem>) -> Result<Vec<F::Elem>> {
        let c = self.field.from_rational(c)?;
        Ok(self.scale_elem(&c, x))
    }

    fn is_zero(&self, x: &Vec<F::Elem>) -> bool {
        self.is_zero_elem(x)
    }
}

/// Structure constants of a subalgebra of Mat_m given by a linearly
/// independent basis of matrices closed under multiplication.
pub fn sca_from_matrix_basis<F: Field>(
    field: &F,
    basis: &[Matrix<F::Elem>],
    name_prefix: &str,
) -> StructureConstantAlgebra<F> {
    let m = basis.len();
    assert!(m > 0, "empty basis");
    let nrows = basis[0].rows();
    let nn = nrows * basis[0].cols();
    let basis_cols = Matrix::from_fn(nn, m, |r, c| basis[c].entries()[r].clone());
    let mut constants = Vec::with_capacity(m * m * m);
    for i in 0..m {
        for j in 0..m {
            let prod = linalg::mul(field, &basis[i], &basis[j]);
            let coords = linalg::solve(field, &basis_cols, prod.entries())
                .expect("basis is closed under multiplication");
            constants.extend(coords);
        }
    }
    let unit = linalg::solve(field, &basis_cols, linalg::identity(field, nrows).entries())
        .expect("subalgebra is unital");
    let names = (0..m).map(|k| format!("{name_prefix}{k}")).collect();
    StructureConstantAlgebra::new(field.clone(), names, constants, unit)
        .expect("matrix subalgebra tables are associative and unital")
}

/// The full matrix algebra Mat_n as a structure-constant algebra in the
/// basis of matrix units E_rc (row-major order).
pub fn matrix_algebra_sca<F: Field>(field: &F, n: usize) -> StructureConstantAlgebra<F> {
    let m = n * n;
    let mut constants = vec![field.zero(); m * m * m];
    for r in 0..n {
        for c in 0..n {
            for r2 in 0..n {
                for c2 in 0..n {
                    // E_rc * E_r2c2 = delta(c, r2) E_r c2
                    if c == r2 {
                        let i = r * n + c;
                        let j = r2 * n + c2;
                        let k = r * n + c2;
                        constants[(i * m + j) * m + k] = field.one();
                    }
                }
            }
        }
    }
    let mut unit = vec![field.zero(); m];
    for r in 0..n {
        unit[r * n + r] = field.one();
    }
    let names = (0..n)
        .flat_map(|r| (0..n).map(move |c| format!("E{r}{c}")))
        .collect();
    StructureConstantAlgebra::new(field.clone(), names, constants, unit)
        .expect("matrix units multiply associatively")
}

/// Quaternion algebra H(a,b) over Q: basis 1, i, j, k with i^2 = a,
/// j^2 = b, ij = k = -ji.
#[derive(Clone, Debug, PartialEq)]
pub struct QuaternionAlgebra {
    a: Rational,
    b: Rational,
    sca: StructureConstantAlgebra<Rationals>,
}

/// Coordinates (x0, x1, x2, x3) with respect to the basis 1, i, j, k.
pub type QuatElem = Vec<Rational>;

pub fn quaternion_algebra(a: &Rational, b: &Rational) -> Result<QuaternionAlgebra> {
    use num::Zero;
    if a.is_zero() || b.is_zero() {
        return Err(Error::ZeroParameter);
    }
    let f = Rationals;
    let one = || f.one();
    let m = 4usize;
    let mut c = vec![f.zero(); m * m * m];
    let mut set = |i: usize, j: usize, k: usize, v: Rational| {
        c[(i * m + j) * m + k] = v;
    };
    let ab = a * b;
    // unity row and column
    for x in 0..4 {
        set(0, x, x, one());
        if x > 0 {
            set(x, 0, x, one());
        }
    }
    set(1, 1, 0, a.clone()); // i i = a
    set(1, 2, 3, one()); // i j = k
    set(1, 3, 2, a.clone()); // i k = a j
    set(2, 1, 3, -one()); // j i = -k
    set(2, 2, 0, b.clone()); // j j = b
    set(2, 3, 1, -b.clone()); // j k = -b i
    set(3, 1, 2, -a.clone()); // k i = -a j
    set(3, 2, 1, b.clone()); // k j = b i
    set(3, 3, 0, -ab); // k k = -a b
    let unit = vec![one(), f.zero(), f.zero(), f.zero()];
    let names = vec!["1".into(), "i".into(), "j".into(), "k".into()];
    let sca = StructureConstantAlgebra::new(f, names, c, unit)?;
    Ok(QuaternionAlgebra {
        a: a.clone(),
        b: b.clone(),
        sca,
    })
}

impl QuaternionAlgebra {
    pub fn params(&self) -> (&Rational, &Rational) {
        (&self.a, &self.b)
    }

    pub fn sca(&self) -> &StructureConstantAlgebra<Rationals> {
        &self.sca
    }

    pub fn elem(&self, x0: Rational, x1: Rational, x2: Rational, x3: Rational) -> QuatElem {
        vec![x0, x1, x2, x3]
    }

    pub fn one(&self) -> QuatElem {
        self.sca.basis_elem(0)
    }

    pub fn i(&self) -> QuatElem {
        self.sca.basis_elem(1)
    }

    pub fn j(&self) -> QuatElem {
        self.sca.basis_elem(2)
    }

    pub fn k(&self) -> QuatElem {
        self.sca.basis_elem(3)
    }

    pub fn mul(&self, x: &QuatElem, y: &QuatElem) -> QuatElem {
        self.sca.mul_elems(x, y)
    }

    pub fn conjugate(&self, x: &QuatElem) -> QuatElem {
        vec![x[0].clone(), -&x[1], -&x[2], -&x[3]]
    }

    pub fn reduced_trace(&self, x: &QuatElem) -> Rational {
        &x[0] + &x[0]
    }

    pub fn reduced_norm(&self, x: &QuatElem) -> Rational {
        reduced_norm(self, x)
    }

    /// x^{-1} = conj(x) / Nrd(x) when the norm is nonzero.
    pub fn inverse(&self, x: &QuatElem) -> Option<QuatElem> {
        use num::Zero;
        let n = self.reduced_norm(x);
        if n.is_zero() {
            return None;
        }
        let c = self.conjugate(x);
        Some(c.into_iter().map(|v| v / &n).collect())
    }
}

/// Nrd(x0 + x1 i + x2 j + x3 k) = x0^2 - a x1^2 - b x2^2 + ab x3^2.
pub fn reduced_norm(h: &QuaternionAlgebra, x: &QuatElem) -> Rational {
    let (a, b) = (&h.a, &h.b);
    let sq = |v: &Rational| v * v;
    &(&sq(&x[0]) - &(a * &sq(&x[1]))) - &(b * &sq(&x[2])) + (a * b) * sq(&x[3])
}

/// Splitting of H(a,b): an algebra embedding into 2x2 matrices, over
/// Q(sqrt(d)) where d is the square class of a, or over Q itself when a is
/// a square.
#[derive(Clone, Debug)]
pub enum SplitEmbedding {
    Quadratic {
        field: QuadField,
        units: [Matrix<QuadElem>; 4],
    },
    Rational {
        units: [Matrix<Rational>; 4],
    },
}

pub fn split_embedding(h: &QuaternionAlgebra, factor_bound: u64) -> Result<SplitEmbedding> {
    let (a, b) = h.params();
    let d = square_class(a, factor_bound)?;
    if d == 1 {
        // rational splitting: a = s^2
        let s = sqrt_rational(a).expect("square class 1 means a is a square");
        let f = Rationals;
        let mi = Matrix::from_rows(vec![vec![s.clone(), f.zero()], vec![f.zero(), -&s]])?;
        let mj = Matrix::from_rows(vec![vec![f.zero(), b.clone()], vec![f.one(), f.zero()]])?;
        let mk = linalg::mul(&f, &mi, &mj);
        let units = [linalg::identity(&f, 2), mi, mj, mk];
        verify_split(&f, &units, a, b);
        Ok(SplitEmbedding::Rational { units })
    } else {
        let field = QuadField::new_bounded(d, factor_bound)?;
        // a = s^2 d, i -> diag(s sqrt(d), -s sqrt(d))
        let s = sqrt_rational(&(a / Rational::from_integer(d.into())))
            .expect("a over its square class is a square");
        use num::Zero;
        let zero = field.zero();
        let mi = Matrix::from_rows(vec![
            vec![field.elem(Rational::zero(), s.clone()), zero.clone()],
            vec![zero.clone(), field.elem(Rational::zero(), -&s)],
        ])?;
        let mj = Matrix::from_rows(vec![
            vec![zero.clone(), field.embed(b.clone())],
            vec![field.one(), zero.clone()],
        ])?;
        let mk = linalg::mul(&field, &mi, &mj);
        let units = [linalg::identity(&field, 2), mi, mj, mk];
        verify_split(&field, &units, a, b);
        Ok(SplitEmbedding::Quadratic { field, units })
    }
}

fn verify_split<F: Field>(f: &F, units: &[Matrix<F::Elem>; 4], a: &Rational, b: &Rational) {
    let scal = |c: &Rational| {
        linalg::scale(
            f,
            &f.from_rational(c).expect("rational scalar embeds"),
            &linalg::identity(f, 2),
        )
    };
    assert_eq!(linalg::mul(f, &units[1], &units[1]), scal(a), "i^2 = a");
    assert_eq!(linalg::mul(f, &units[2], &units[2]), scal(b), "j^2 = b");
    let ij = linalg::mul(f, &units[1], &units[2]);
    let ji = linalg::mul(f, &units[2], &units[1]);
    assert_eq!(linalg::neg(f, &ij), ji, "ij = -ji");
}

impl SplitEmbedding {
    /// Image of a quaternion under the embedding, as a matrix over the
    /// splitting field (the quadratic case).
    pub fn embed_quad(&self, x: &QuatElem) -> Option<Matrix<QuadElem>> {
        match self {
            SplitEmbedding::Quadratic { field, units } => {
                let mut acc = linalg::zeros(field, 2, 2);
                for (c, u) in x.iter().zip(units.iter()) {
                    let cc = field.embed(c.clone());
                    acc = linalg::add(field, &acc, &linalg::scale(field, &cc, u));
                }
                Some(acc)
            }
            SplitEmbedding::Rational { .. } => None,
        }
    }

    /// Image of a quaternion in the rational splitting (when a is a
    /// square).
    pub fn embed_rational(&self, x: &QuatElem) -> Option<Matrix<Rational>> {
        match self {
            SplitEmbedding::Rational { units } => {
                let f = Rationals;
                let mut acc = linalg::zeros(&f, 2, 2);
                for (c, u) in x.iter().zip(units.iter()) {
                    acc = linalg::add(&f, &acc, &linalg::scale(&f, c, u));
                }
                Some(acc)
            }
            SplitEmbedding::Quadratic { .. } => None,
        }
    }

    /// Determinant of the embedded matrix, always a rational number.
    pub fn det(&self, x: &QuatElem) -> Rational {
        match self {
            SplitEmbedding::Quadratic { field, .. } => {
                let m = self.embed_quad(x).expect("quadratic variant");
                linalg::det(field, &m)
                    .rational_part()
                    .expect("determinant of an embedded quaternion is rational")
            }
            SplitEmbedding::Rational { .. } => {
                let m = self.embed_rational(x).expect("rational variant");
                linalg::det(&Rationals, &m)
            }
        }
    }
}

/// A representation of a presented algebra with values in a
/// structure-constant algebra.
#[derive(Clone, Debug, PartialEq)]
pub struct AzuRep<F: Field> {
    presentation: FreePresentation,
    algebra: StructureConstantAlgebra<F>,
    images: Vec<Vec<F::Elem>>,
}

impl<F: Field> AzuRep<F> {
    pub fn presentation(&self) -> &FreePresentation {
        &self.presentation
    }

    pub fn algebra(&self) -> &StructureConstantAlgebra<F> {
        &self.algebra
    }

    pub fn images(&self) -> &[Vec<F::Elem>] {
        &self.images
    }
}

/// Build a representation in a structure-constant algebra; fails loudly,
/// naming the first violated relation.
pub fn azu_rep_construct<F: Field>(
    presentation: FreePresentation,
    algebra: StructureConstantAlgebra<F>,
    images: Vec<Vec<F::Elem>>,
) -> Result<AzuRep<F>> {
    if images.len() != presentation.num_generators() {
        return Err(Error::DimensionMismatch(format!(
            "{} images for {} generators",
            images.len(),
            presentation.num_generators()
        )));
    }
    for (k, x) in images.iter().enumerate() {
        if x.len() != algebra.dim() {
            return Err(Error::DimensionMismatch(format!(
                "image {k} has {} coordinates, algebra has dimension {}",
                x.len(),
                algebra.dim()
            )));
        }
    }
    if let Some(k) = crate::ncpoly::first_violated_relation(&algebra, &presentation, &images)? {
        return Err(Error::RelationViolated {
            index: k,
            text: presentation.relations()[k].display_with(presentation.generators()),
        });
    }
    Ok(AzuRep {
        presentation,
        algebra,
        images,
    })
}

/// Dimension of the centralizer of the images inside the algebra.
pub fn azu_commutant_dim<F: Field>(rep: &AzuRep<F>) -> usize {
    let alg = &rep.algebra;
    let f = alg.field();
    let m = alg.dim();
    let gens = rep.images.len().max(1);
    let mut sys = linalg::zeros(f, gens * m, m);
    for (g, img) in rep.images.iter().enumerate() {
        let l = alg.left_mult_matrix(img);
        let r = alg.right_mult_matrix(img);
        for row in 0..m {
            for col in 0..m {
                // x commutes with img:  (R_img - L_img) x = 0
                let v = f.sub(r.at(row, col), l.at(row, col));
                sys.set(g * m + row, col, v);
            }
        }
    }
    m - linalg::rank(f, &sys)
}

/// Schur inside the algebra: the centralizer of the image is exactly the
/// scalars.
pub fn is_schur_azu<F: Field>(rep: &AzuRep<F>) -> bool {
    azu_commutant_dim(rep) == 1
}

/// A right ideal e*A presented by a basis of coordinate vectors.
#[derive(Clone, Debug)]
pub struct RightIdeal<F: Field> {
    pub dim: usize,
    pub basis: Vec<Vec<F::Elem>>,
}

/// Bases of the right ideals e_i * A for a partition of unity into
/// orthogonal idempotents; the dimensions always sum to dim A.
pub fn idempotent_right_ideals<F: Field>(
    alg: &StructureConstantAlgebra<F>,
    idempotents: &[Vec<F::Elem>],
) -> Result<Vec<RightIdeal<F>>> {
    let f = alg.field().clone();
    // orthogonality and idempotency
    for (i, ei) in idempotents.iter().enumerate() {
        for (j, ej) in idempotents.iter().enumerate() {
            let prod = alg.mul_elems(ei, ej);
            let expected = if i == j { ei.clone() } else { alg.zero_elem() };
            if prod != expected {
                return Err(Error::NotOrthogonalIdempotents(format!(
                    "e{i} * e{j} is not {}",
                    if i == j { "e_i" } else { "0" }
                )));
            }
        }
    }
    let mut total = alg.zero_elem();
    for e in idempotents {
        total = alg.add_elems(&total, e);
    }
    if total != alg.unit() {
        return Err(Error::NotOrthogonalIdempotents(
            "idempotents do not sum to one".into(),
        ));
    }
    let mut out = Vec::new();
    let mut total_dim = 0;
    for e in idempotents {
        let mut span = EchelonSpan::new(f.clone(), alg.dim());
        for k in 0..alg.dim() {
            span.insert(alg.mul_elems(e, &alg.basis_elem(k)));
        }
        total_dim += span.dim();
        out.push(RightIdeal {
            dim: span.dim(),
            basis: span.basis().to_vec(),
        });
    }
    debug_assert_eq!(total_dim, alg.dim());
    Ok(out)
}

/// Left regular representation A -> Mat_m, x -> L_x, an algebra
/// monomorphism sending the unit to the identity.
#[derive(Clone, Debug)]
pub struct RegularRep<F: Field> {
    /// Matrices of left multiplication by the basis elements.
    pub basis_matrices: Vec<Matrix<F::Elem>>,
}

pub fn regular_representation<F: Field>(alg: &StructureConstantAlgebra<F>) -> RegularRep<F> {
    RegularRep {
        basis_matrices: (0..alg.dim())
            .map(|k| alg.left_mult_matrix(&alg.basis_elem(k)))
            .collect(),
    }
}

impl<F: Field> RegularRep<F> {
    pub fn embed(&self, alg: &StructureConstantAlgebra<F>, x: &[F::Elem]) -> Matrix<F::Elem> {
        alg.left_mult_matrix(x)
    }
}

/// Centralizer of the subalgebra spanned by the given matrices inside
/// Mat_m, returned both as a structure-constant algebra and as the list of
/// its basis matrices.
pub fn commutant_algebra<F: Field>(
    field: &F,
    m: usize,
    mats: &[Matrix<F::Elem>],
) -> (StructureConstantAlgebra<F>, Vec<Matrix<F::Elem>>) {
    let basis = commutant_of_matrices(field, m, mats);
    let sca = sca_from_matrix_basis(field, &basis, "c");
    (sca, basis)
}

/// Double-centralizer test: the bicommutant of the span of `mats` equals
/// that span.
pub fn bicommutant_check<F: Field>(field: &F, m: usize, mats: &[Matrix<F::Elem>]) -> bool {
    let span = span_closure(field, m, mats);
    let c1 = commutant_of_matrices(field, m, mats);
    let c2 = commutant_of_matrices(field, m, &c1);
    if c2.len() != span.dim() {
        return false;
    }
    c2.iter().all(|b| span.contains(b.entries()))
}

/// Independent split oracle: search for a zero divisor of H(a,b) as a
/// nontrivial zero of the reduced norm form with x3 = 0, i.e. a point on
/// z^2 = a x^2 + b y^2, after square-class reduction.  Returns an actual
/// norm-zero element of H(a,b).
pub fn zero_divisor_search(
    a: &Rational,
    b: &Rational,
    height: i64,
    factor_bound: u64,
) -> Result<Option<QuatElem>> {
    use num::Zero;
    let a0 = square_class(a, factor_bound)?;
    let b0 = square_class(b, factor_bound)?;
    let sa = sqrt_rational(&(a / Rational::from_integer(a0.into()))).expect("square class");
    let sb = sqrt_rational(&(b / Rational::from_integer(b0.into()))).expect("square class");
    for x in 0..=height {
        for y in 0..=height {
            if x == 0 && y == 0 {
                continue;
            }
            let t = a0 * x * x + b0 * y * y;
            if t < 0 {
                continue;
            }
            let z = (t as f64).sqrt().round() as i64;
            for cand in [z - 1, z, z + 1] {
                if cand >= 0 && cand * cand == t {
                    // z^2 - a (x/sa)^2 - b (y/sb)^2 = z^2 - a0 x^2 - b0 y^2 = 0
                    let q = vec![
                        Rational::from_integer(cand.into()),
                        Rational::from_integer(x.into()) / &sa,
                        Rational::from_integer(y.into()) / &sb,
                        Rational::zero(),
                    ];
                    return Ok(Some(q));
                }
            }
        }
    }
    Ok(None)
}

/// Recognition of a 4-dimensional algebra as a quaternion algebra
/// H(a, b): returns squarefree parameters and the coordinates of a basis
/// (1, i, j, k) realizing the standard multiplication table, or None when
/// the algebra does not admit one within the deterministic search.
#[derive(Clone, Debug)]
pub struct QuaternionRecognition {
    pub a: Rational,
    pub b: Rational,
    /// Coordinates of 1, i, j, k in the algebra's own basis.
    pub basis_coords: [Vec<Rational>; 4],
}

fn scalar_square(alg: &StructureConstantAlgebra<Rationals>, x: &[Rational]) -> Option<Rational> {
    let sq = alg.mul_elems(x, x);
    alg.as_scalar(&sq)
}

/// Deterministic small-integer combinations, single vectors first.
fn combo_schedule(dim: usize) -> Vec<Vec<i64>> {
    let mut out = Vec::new();
    for k in 0..dim {
        let mut v = vec![0i64; dim];
        v[k] = 1;
        out.push(v);
    }
    let range = [-2i64, -1, 0, 1, 2];
    let mut stack = vec![vec![]];
    for _ in 0..dim {
        let mut next = Vec::new();
        for prefix in &stack {
            for &c in &range {
                let mut v = prefix.clone();
                v.push(c);
                next.push(v);
            }
        }
        stack = next;
    }
    for v in stack {
        if v.iter().any(|&c| c != 0) {
            out.push(v);
        }
    }
    out
}

pub fn recognize_quaternion(
    alg: &StructureConstantAlgebra<Rationals>,
    factor_bound: u64,
) -> Option<QuaternionRecognition> {
    use num::Zero;
    let f = Rationals;
    if alg.dim() != 4 {
        return None;
    }
    // reduced trace: tr(L_x) = 2 trd(x) on a quaternion algebra
    let half = crate::exactfield::rat(1, 2);
    let trace_row: Vec<Rational> = (0..4)
        .map(|k| {
            let l = alg.left_mult_matrix(&alg.basis_elem(k));
            let mut t = f.zero();
            for r in 0..4 {
                t = f.add(&t, l.at(r, r));
            }
            &t * &half
        })
        .collect();
    let trace_mat = Matrix::from_flat(1, 4, trace_row);
    let trace_free = linalg::kernel_basis(&f, &trace_mat);
    if trace_free.len() != 3 {
        return None;
    }
    // u in the trace-zero space with u^2 a nonzero scalar
    let find_aniso = |space: &[Vec<Rational>]| -> Option<(Vec<Rational>, Rational)> {
        for combo in combo_schedule(space.len()) {
            let mut x = alg.zero_elem();
            for (c, v) in combo.iter().zip(space) {
                if *c != 0 {
                    let cv = alg.scale_elem(&Rational::from_integer((*c).into()), v);
                    x = alg.add_elems(&x, &cv);
                }
            }
            if alg.is_zero_elem(&x) {
                continue;
            }
            if let Some(s) = scalar_square(alg, &x) {
                if !s.is_zero() {
                    return Some((x, s));
                }
            }
        }
        None
    };
    let (u, alpha) = find_aniso(&trace_free)?;
    // anti-commutant of u inside the trace-zero space
    let lu = alg.left_mult_matrix(&u);
    let ru = alg.right_mult_matrix(&u);
    let anti = linalg::add(&f, &lu, &ru);
    let mut sys_rows = Vec::new();
    for r in 0..4 {
        sys_rows.push(anti.row(r).to_vec());
    }
    sys_rows.push(trace_mat.row(0).to_vec());
    let sys = Matrix::from_rows(sys_rows).ok()?;
    let w_space = linalg::kernel_basis(&f, &sys);
    if w_space.is_empty() {
        return None;
    }
    let (w, beta) = find_aniso(&w_space)?;
    // normalize parameters to squarefree representatives
    let alpha0 = square_class(&alpha, factor_bound).ok()?;
    let beta0 = square_class(&beta, factor_bound).ok()?;
    let su = sqrt_rational(&(&alpha / Rational::from_integer(alpha0.into())))?;
    let sw = sqrt_rational(&(&beta / Rational::from_integer(beta0.into())))?;
    let u = alg.scale_elem(&su.recip(), &u);
    let w = alg.scale_elem(&sw.recip(), &w);
    let k = alg.mul_elems(&u, &w);
    let a = Rational::from_integer(alpha0.into());
    let b = Rational::from_integer(beta0.into());
    // verify the full Hamilton-style table in the new basis
    let one = alg.unit().to_vec();
    let neg = |x: &Vec<Rational>| alg.scale_elem(&-f.one(), x);
    let scal = |c: &Rational, x: &Vec<Rational>| alg.scale_elem(c, x);
    let checks = [
        (alg.mul_elems(&u, &u), scal(&a, &one)),
        (alg.mul_elems(&w, &w), scal(&b, &one)),
        (alg.mul_elems(&u, &w), k.clone()),
        (alg.mul_elems(&w, &u), neg(&k)),
        (alg.mul_elems(&u, &k), scal(&a, &w)),
        (alg.mul_elems(&k, &u), neg(&scal(&a, &w))),
        (alg.mul_elems(&w, &k), neg(&scal(&b, &u))),
        (alg.mul_elems(&k, &w), scal(&b, &u)),
        (alg.mul_elems(&k, &k), neg(&scal(&(&a * &b), &one))),
    ];
    if checks.iter().any(|(lhs, rhs)| lhs != rhs) {
        return None;
    }
    // the four elements must be a basis
    let mut span = EchelonSpan::new(f, 4);
    for v in [&one, &u, &w, &k] {
        span.insert(v.clone());
    }
    if span.dim() != 4 {
        return None;
    }
    Some(QuaternionRecognition {
        a,
        b,
        basis_coords: [one, u, w, k],
    })
}
