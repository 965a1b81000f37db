//! Matrix representations of a presented algebra: commutant bases, the
//! Schur test, span dimension of the image algebra, intertwiners and
//! isomorphism testing.  Everything reduces to exact kernel computations.

use crate::exactfield::Field;
use crate::linalg::{self, EchelonSpan, Matrix};
use crate::ncpoly::{FreePresentation, MatAlgebra};
use crate::rng::SplitMix64;
use crate::{Error, Result};

/// Number of randomized combinations tried when searching the intertwiner
/// space for an invertible element.
pub const INTERTWINER_TRIES: u32 = 32;

/// A validated representation of a presented algebra in Mat_n.
#[derive(Clone, Debug, PartialEq)]
pub struct MatrixRep<F: Field> {
    presentation: FreePresentation,
    field: F,
    n: usize,
    images: Vec<Matrix<F::Elem>>,
}

impl<F: Field> MatrixRep<F> {
    /// Validates shapes and relations; a value of this type always is an
    /// algebra homomorphism.
    pub fn new(
        presentation: FreePresentation,
        field: F,
        n: usize,
        images: Vec<Matrix<F::Elem>>,
    ) -> Result<Self> {
        if n == 0 {
            return Err(Error::DimensionMismatch("degree must be positive".into()));
        }
        if images.len() != presentation.num_generators() {
            return Err(Error::DimensionMismatch(format!(
                "{} images for {} generators",
                images.len(),
                presentation.num_generators()
            )));
        }
        let amb = MatAlgebra::new(field.clone(), n);
        amb.validate_assignment(&images)?;
        if let Some(k) = crate::ncpoly::first_violated_relation(&amb, &presentation, &images)? {
            return Err(Error::RelationViolated {
                index: k,
                text: presentation.relations()[k].display_with(presentation.generators()),
            });
        }
        Ok(MatrixRep {
            presentation,
            field,
            n,
            images,
        })
    }

    pub fn presentation(&self) -> &FreePresentation {
        &self.presentation
    }

    pub fn field(&self) -> &F {
        &self.field
    }

    pub fn degree(&self) -> usize {
        self.n
    }

    pub fn images(&self) -> &[Matrix<F::Elem>] {
        &self.images
    }

    pub fn image_of(&self, name: &str) -> Option<&Matrix<F::Elem>> {
        self.presentation
            .generator_index(name)
            .map(|i| &self.images[i])
    }
}

/// Basis of the commutant of a representation, always containing the
/// scalars.
#[derive(Clone, Debug)]
pub struct CommutantBasis<F: Field> {
    pub n: usize,
    pub basis: Vec<Matrix<F::Elem>>,
}

impl<F: Field> CommutantBasis<F> {
    pub fn dim(&self) -> usize {
        self.basis.len()
    }
}

/// The linear system whose kernel is the joint centralizer: one block of
/// n^2 equations per generator image, in the n^2 unknown entries of f,
/// expressing  f*A - A*f = 0.
fn centralizer_system<F: Field>(
    field: &F,
    n: usize,
    mats: &[Matrix<F::Elem>],
) -> Matrix<F::Elem> {
    let nn = n * n;
    let rows = mats.len().max(1) * nn;
    let mut sys = linalg::zeros(field, rows, nn);
    for (g, a) in mats.iter().enumerate() {
        for r in 0..n {
            for c in 0..n {
                let row = g * nn + r * n + c;
                // coefficient of f[r][s] is A[s][c]; of f[s][c] is -A[r][s]
                for s in 0..n {
                    let col1 = r * n + s;
                    let v1 = field.add(sys.at(row, col1), a.at(s, c));
                    sys.set(row, col1, v1);
                    let col2 = s * n + c;
                    let v2 = field.sub(sys.at(row, col2), a.at(r, s));
                    sys.set(row, col2, v2);
                }
            }
        }
    }
    sys
}

/// Basis of the joint centralizer of a set of n x n matrices.
pub fn commutant_of_matrices<F: Field>(
    field: &F,
    n: usize,
    mats: &[Matrix<F::Elem>],
) -> Vec<Matrix<F::Elem>> {
    let sys = centralizer_system(field, n, mats);
    linalg::kernel_basis(field, &sys)
        .into_iter()
        .map(|v| Matrix::from_flat(n, n, v))
        .collect()
}

/// Basis of {f : f rho(g) = rho(g) f for all generators g}.
pub fn commutant_basis<F: Field>(rep: &MatrixRep<F>) -> CommutantBasis<F> {
    CommutantBasis {
        n: rep.n,
        basis: commutant_of_matrices(&rep.field, rep.n, &rep.images),
    }
}

/// Rank of the commutant map; satisfies rank + dim(commutant) = n^2.
pub fn commutant_map_rank<F: Field>(rep: &MatrixRep<F>) -> usize {
    let sys = centralizer_system(&rep.field, rep.n, &rep.images);
    linalg::rank(&rep.field, &sys)
}

/// Schur means the commutant is exactly the scalars.
pub fn is_schur<F: Field>(rep: &MatrixRep<F>) -> bool {
    commutant_basis(rep).dim() == 1
}

/// Multiplication table of the commutant algebra End(rho) in the basis
/// produced by `commutant_basis`, with the unit expressed in that basis.
pub fn endomorphism_structure_constants<F: Field>(
    rep: &MatrixRep<F>,
) -> crate::azumaya::StructureConstantAlgebra<F> {
    let field = &rep.field;
    let cb = commutant_basis(rep);
    let nn = rep.n * rep.n;
    let m = cb.dim();
    // columns are the vectorized basis elements
    let basis_cols = Matrix::from_fn(nn, m, |r, c| cb.basis[c].entries()[r].clone());
    let mut constants = Vec::with_capacity(m * m * m);
    for i in 0..m {
        for j in 0..m {
            let prod = linalg::mul(field, &cb.basis[i], &cb.basis[j]);
            let coords = linalg::solve(field, &basis_cols, prod.entries())
                .expect("commutant is closed under multiplication");
            constants.extend(coords);
        }
    }
    let unit_coords = linalg::solve(
        field,
        &basis_cols,
        linalg::identity(field, rep.n).entries(),
    )
    .expect("commutant contains the identity");
    let names = (0..m).map(|k| format!("c{k}")).collect();
    crate::azumaya::StructureConstantAlgebra::new(field.clone(), names, constants, unit_coords)
        .expect("commutant multiplication table is associative and unital")
}

/// Echelonized span of all words in the given matrices (including the
/// empty word), closed under multiplication by the generators.
pub fn span_closure<F: Field>(
    field: &F,
    n: usize,
    mats: &[Matrix<F::Elem>],
) -> EchelonSpan<F> {
    let nn = n * n;
    let mut span = EchelonSpan::new(field.clone(), nn);
    span.insert(linalg::identity(field, n).entries().to_vec());
    let mut frontier: Vec<Matrix<F::Elem>> = vec![linalg::identity(field, n)];
    while !frontier.is_empty() {
        let mut next = Vec::new();
        for w in &frontier {
            for g in mats {
                let prod = linalg::mul(field, w, g);
                if span.insert(prod.entries().to_vec()) {
                    next.push(prod);
                }
            }
        }
        frontier = next;
    }
    span
}

/// Dimension of the unital subalgebra of Mat_n spanned by the generator
/// images.
pub fn image_span_dim<F: Field>(rep: &MatrixRep<F>) -> usize {
    span_closure(&rep.field, rep.n, &rep.images).dim()
}

/// Burnside criterion: the image algebra is all of Mat_n.
pub fn is_absolutely_simple<F: Field>(rep: &MatrixRep<F>) -> bool {
    image_span_dim(rep) == rep.n * rep.n
}

/// Outcome of the search for an invertible intertwiner.
#[derive(Clone, Debug, PartialEq)]
pub enum Intertwiner<F: Field> {
    /// An invertible S with  S rho'(g) = rho(g) S  for all generators.
    Found(Matrix<F::Elem>),
    /// The solution space is zero: provably no intertwiner at all.
    ProvablyNone,
    /// Nonzero solution space, but no invertible element was found within
    /// the randomized budget; distinguishes "unknown" from "provably none".
    BudgetExhausted { space_dim: usize },
}

fn compatible<F: Field>(a: &MatrixRep<F>, b: &MatrixRep<F>) -> Result<()> {
    if a.presentation != b.presentation {
        return Err(Error::InvalidInput(
            "representations have different presentations".into(),
        ));
    }
    if a.n != b.n {
        return Err(Error::DimensionMismatch(format!(
            "degrees differ: {} vs {}",
            a.n, b.n
        )));
    }
    if a.field != b.field {
        return Err(Error::InvalidInput(
            "representations live over different fields".into(),
        ));
    }
    Ok(())
}

/// Search the solution space of  S rho'(g) = rho(g) S  for an invertible
/// element: first every kernel basis vector, then seeded random
/// small-integer combinations.
pub fn find_intertwiner<F: Field>(
    rep: &MatrixRep<F>,
    other: &MatrixRep<F>,
    seed: u64,
) -> Result<Intertwiner<F>> {
    compatible(rep, other)?;
    let field = &rep.field;
    let n = rep.n;
    let nn = n * n;
    // row (g, r, c):  sum_s S[r][s] B[s][c] - A[r][s] S[s][c] = 0
    let rows = rep.images.len().max(1) * nn;
    let mut sys = linalg::zeros(field, rows, nn);
    for (g, (a, b)) in rep.images.iter().zip(&other.images).enumerate() {
        for r in 0..n {
            for c in 0..n {
                let row = g * nn + r * n + c;
                for s in 0..n {
                    let col1 = r * n + s;
                    let v1 = field.add(sys.at(row, col1), b.at(s, c));
                    sys.set(row, col1, v1);
                    let col2 = s * n + c;
                    let v2 = field.sub(sys.at(row, col2), a.at(r, s));
                    sys.set(row, col2, v2);
                }
            }
        }
    }
    let kernel = linalg::kernel_basis(field, &sys);
    if kernel.is_empty() {
        return Ok(Intertwiner::ProvablyNone);
    }
    let candidates: Vec<Matrix<F::Elem>> = kernel
        .iter()
        .map(|v| Matrix::from_flat(n, n, v.clone()))
        .collect();
    for cand in &candidates {
        if linalg::is_invertible(field, cand) {
            return Ok(Intertwiner::Found(cand.clone()));
        }
    }
    if candidates.len() == 1 {
        // every solution is a scalar multiple of the single basis vector
        return Ok(Intertwiner::ProvablyNone);
    }
    let mut rng = SplitMix64::new(seed);
    for _ in 0..INTERTWINER_TRIES {
        let mut acc = linalg::zeros(field, n, n);
        for cand in &candidates {
            let c = field.from_integer(rng.int_in(-4, 4));
            acc = linalg::add(field, &acc, &linalg::scale(field, &c, cand));
        }
        if linalg::is_invertible(field, &acc) {
            return Ok(Intertwiner::Found(acc));
        }
    }
    Ok(Intertwiner::BudgetExhausted {
        space_dim: candidates.len(),
    })
}

/// Whether the two representations are conjugate.  Budget exhaustion is
/// reported as an error rather than guessed either way.
pub fn are_isomorphic<F: Field>(
    rep: &MatrixRep<F>,
    other: &MatrixRep<F>,
    seed: u64,
) -> Result<bool> {
    match find_intertwiner(rep, other, seed)? {
        Intertwiner::Found(_) => Ok(true),
        Intertwiner::ProvablyNone => Ok(false),
        Intertwiner::BudgetExhausted { space_dim } => Err(Error::BudgetExhausted(format!(
            "no invertible intertwiner found in a solution space of dimension {space_dim}"
        ))),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactfield::{rat_int, PrimeField, QuadField, Rational, Rationals};

    fn qq() -> Rationals {
        Rationals
    }

    fn mat(rows: Vec<Vec<i64>>) -> Matrix<Rational> {
        Matrix::from_rows(
            rows.into_iter()
                .map(|r| r.into_iter().map(rat_int).collect())
                .collect(),
        )
        .unwrap()
    }

    fn free_rep(images: Vec<Matrix<Rational>>) -> MatrixRep<Rationals> {
        let names: Vec<String> = (0..images.len()).map(|i| format!("t{i}")).collect();
        let refs: Vec<&str> = names.iter().map(|s| s.as_str()).collect();
        let n = images[0].rows();
        MatrixRep::new(FreePresentation::free(&refs), qq(), n, images).unwrap()
    }

    #[test]
    fn commutant_of_identity_is_everything() {
        let rep = free_rep(vec![mat(vec![vec![1, 0], vec![0, 1]])]);
        assert_eq!(commutant_basis(&rep).dim(), 4);
        assert!(!is_schur(&rep));
    }

    #[test]
    fn commutant_of_nilpotent_jordan_block() {
        // hand-solved: f J = J f forces f = p I + q J
        let j = mat(vec![vec![0, 1], vec![0, 0]]);
        let rep = free_rep(vec![j.clone()]);
        let cb = commutant_basis(&rep);
        assert_eq!(cb.dim(), 2);
        let mut span = EchelonSpan::new(qq(), 4);
        span.insert(linalg::identity(&qq(), 2).entries().to_vec());
        span.insert(j.entries().to_vec());
        for b in &cb.basis {
            assert!(span.contains(b.entries()));
        }
        assert!(!is_schur(&rep));
    }

    #[test]
    fn diag_and_swap_are_schur() {
        let rep = free_rep(vec![
            mat(vec![vec![1, 0], vec![0, 2]]),
            mat(vec![vec![0, 1], vec![1, 0]]),
        ]);
        assert_eq!(commutant_basis(&rep).dim(), 1);
        assert!(is_schur(&rep));
        assert_eq!(image_span_dim(&rep), 4);
        assert!(is_absolutely_simple(&rep));
    }

    #[test]
    fn schur_in_degree_one_is_automatic() {
        let rep = free_rep(vec![Matrix::from_rows(vec![vec![rat_int(7)]]).unwrap()]);
        assert!(is_schur(&rep));
        assert!(is_absolutely_simple(&rep));
    }

    #[test]
    fn rank_identity_and_literal_commuting() {
        let samples = vec![
            free_rep(vec![mat(vec![vec![0, 1], vec![0, 0]])]),
            free_rep(vec![
                mat(vec![vec![1, 0], vec![0, 2]]),
                mat(vec![vec![0, 1], vec![1, 0]]),
            ]),
            free_rep(vec![mat(vec![
                vec![1, 1, 0],
                vec![0, 1, 1],
                vec![0, 0, 1],
            ])]),
        ];
        for rep in &samples {
            let cb = commutant_basis(rep);
            let nn = rep.degree() * rep.degree();
            assert_eq!(cb.dim() + commutant_map_rank(rep), nn);
            // contains identity
            let id = linalg::identity(rep.field(), rep.degree());
            let mut span = EchelonSpan::new(qq(), nn);
            for b in &cb.basis {
                span.insert(b.entries().to_vec());
            }
            assert!(span.contains(id.entries()));
            // every basis element literally commutes with every image
            for b in &cb.basis {
                for g in rep.images() {
                    assert_eq!(
                        linalg::mul(rep.field(), b, g),
                        linalg::mul(rep.field(), g, b)
                    );
                }
            }
        }
    }

    #[test]
    fn image_span_dims() {
        let rep = free_rep(vec![mat(vec![vec![0, 1], vec![0, 0]])]);
        assert_eq!(image_span_dim(&rep), 2);
        assert!(!is_absolutely_simple(&rep));
        let rep = free_rep(vec![mat(vec![vec![1, 0], vec![0, 1]])]);
        assert_eq!(image_span_dim(&rep), 1);
    }

    #[test]
    fn endomorphism_algebra_of_jordan_block() {
        // K[x]/(x^2): two-dimensional, with a nonzero nilpotent
        let rep = free_rep(vec![mat(vec![vec![0, 1], vec![0, 0]])]);
        let alg = endomorphism_structure_constants(&rep);
        assert_eq!(alg.dim(), 2);
        // some element in the basis squares to zero while being nonzero
        let nilpotent_exists = (0..2).any(|k| {
            let b = alg.basis_elem(k);
            let sq = alg.mul_elems(&b, &b);
            !alg.is_zero_elem(&b) && alg.is_zero_elem(&sq)
        });
        assert!(nilpotent_exists);

        // a Schur representation has the one-dimensional endomorphism algebra
        let rep = free_rep(vec![
            mat(vec![vec![1, 0], vec![0, 2]]),
            mat(vec![vec![0, 1], vec![1, 0]]),
        ]);
        assert_eq!(endomorphism_structure_constants(&rep).dim(), 1);

        // identity image: full matrix algebra
        let rep = free_rep(vec![mat(vec![vec![1, 0], vec![0, 1]])]);
        assert_eq!(endomorphism_structure_constants(&rep).dim(), 4);
    }

    #[test]
    fn intertwiner_of_rep_with_itself_is_scalar() {
        let rep = free_rep(vec![
            mat(vec![vec![1, 0], vec![0, 2]]),
            mat(vec![vec![0, 1], vec![1, 0]]),
        ]);
        match find_intertwiner(&rep, &rep, 1).unwrap() {
            Intertwiner::Found(s) => {
                // the solution space is one-dimensional, so s is scalar
                let id = linalg::identity(&qq(), 2);
                let c = s.at(0, 0).clone();
                assert_eq!(s, linalg::scale(&qq(), &c, &id));
            }
            other => panic!("expected intertwiner, got {other:?}"),
        }
    }

    #[test]
    fn intertwiner_recovers_conjugation() {
        let a = mat(vec![vec![1, 0], vec![0, 2]]);
        let b = mat(vec![vec![0, 1], vec![1, 0]]);
        let rep = free_rep(vec![a.clone(), b.clone()]);
        let c = mat(vec![vec![1, 1], vec![2, 3]]); // det 1
        let cinv = linalg::inverse(&qq(), &c).unwrap();
        let conj = |m: &Matrix<Rational>| linalg::mul(&qq(), &linalg::mul(&qq(), &c, m), &cinv);
        let rep2 = free_rep(vec![conj(&a), conj(&b)]);
        // solutions S satisfy S rho2 S^-1 = rho
        match find_intertwiner(&rep, &rep2, 7).unwrap() {
            Intertwiner::Found(s) => {
                let sinv = linalg::inverse(&qq(), &s).unwrap();
                for (g, h) in rep.images().iter().zip(rep2.images()) {
                    let lhs = linalg::mul(&qq(), &linalg::mul(&qq(), &s, h), &sinv);
                    assert_eq!(&lhs, g);
                }
            }
            other => panic!("expected intertwiner, got {other:?}"),
        }
        assert!(are_isomorphic(&rep, &rep2, 7).unwrap());
    }

    #[test]
    fn non_isomorphic_diagonals() {
        let rep = free_rep(vec![mat(vec![vec![1, 0], vec![0, 2]])]);
        let rep2 = free_rep(vec![mat(vec![vec![1, 0], vec![0, 3]])]);
        // independent check: conjugation preserves traces of powers, and
        // tr(t^2) differs (5 vs 10), so provably no intertwiner
        assert_eq!(find_intertwiner(&rep, &rep2, 0).unwrap(), Intertwiner::ProvablyNone);
        assert!(!are_isomorphic(&rep, &rep2, 0).unwrap());
    }

    #[test]
    fn isomorphism_is_an_equivalence_on_triples() {
        let base = [mat(vec![vec![1, 0], vec![0, 2]]),
            mat(vec![vec![0, 1], vec![1, 0]])];
        let conjugators = [
            mat(vec![vec![1, 0], vec![0, 1]]),
            mat(vec![vec![1, 1], vec![0, 1]]),
            mat(vec![vec![2, 1], vec![1, 1]]),
        ];
        let reps: Vec<_> = conjugators
            .iter()
            .map(|c| {
                let cinv = linalg::inverse(&qq(), c).unwrap();
                free_rep(
                    base.iter()
                        .map(|m| linalg::mul(&qq(), &linalg::mul(&qq(), c, m), &cinv))
                        .collect(),
                )
            })
            .collect();
        for x in &reps {
            assert!(are_isomorphic(x, x, 3).unwrap());
            for y in &reps {
                assert_eq!(
                    are_isomorphic(x, y, 4).unwrap(),
                    are_isomorphic(y, x, 5).unwrap()
                );
                for z in &reps {
                    if are_isomorphic(x, y, 6).unwrap() && are_isomorphic(y, z, 7).unwrap() {
                        assert!(are_isomorphic(x, z, 8).unwrap());
                    }
                }
            }
        }
    }

    #[test]
    fn is_schur_is_conjugation_invariant() {
        let mut rng = SplitMix64::new(99);
        for _ in 0..20 {
            let a = Matrix::from_fn(2, 2, |_, _| rat_int(rng.int_in(-3, 3)));
            let b = Matrix::from_fn(2, 2, |_, _| rat_int(rng.int_in(-3, 3)));
            let c = loop {
                let c = Matrix::from_fn(2, 2, |_, _| rat_int(rng.int_in(-3, 3)));
                if linalg::is_invertible(&qq(), &c) {
                    break c;
                }
            };
            let cinv = linalg::inverse(&qq(), &c).unwrap();
            let conj =
                |m: &Matrix<Rational>| linalg::mul(&qq(), &linalg::mul(&qq(), &c, m), &cinv);
            let rep = free_rep(vec![a.clone(), b.clone()]);
            let rep2 = free_rep(vec![conj(&a), conj(&b)]);
            assert_eq!(is_schur(&rep), is_schur(&rep2));
        }
    }

    #[test]
    fn commutant_matches_exhaustive_enumeration_over_small_prime_fields() {
        for p in [2u64, 3, 5] {
            let fp = PrimeField::new(p).unwrap();
            let pres = FreePresentation::free(&["t"]);
            let all_values: Vec<i64> = (0..p as i64).collect();
            for &a in &all_values {
                for &b in &all_values {
                    for &c in &all_values {
                        for &d in &all_values {
                            let t = Matrix::from_rows(vec![
                                vec![fp.elem(a), fp.elem(b)],
                                vec![fp.elem(c), fp.elem(d)],
                            ])
                            .unwrap();
                            let rep =
                                MatrixRep::new(pres.clone(), fp, 2, vec![t.clone()]).unwrap();
                            let cb = commutant_basis(&rep);
                            let mut span = EchelonSpan::new(fp, 4);
                            for v in &cb.basis {
                                span.insert(v.entries().to_vec());
                            }
                            // enumerate all p^4 matrices and count the commuting ones
                            let mut count: u64 = 0;
                            for &x in &all_values {
                                for &y in &all_values {
                                    for &z in &all_values {
                                        for &w in &all_values {
                                            let f = Matrix::from_rows(vec![
                                                vec![fp.elem(x), fp.elem(y)],
                                                vec![fp.elem(z), fp.elem(w)],
                                            ])
                                            .unwrap();
                                            if linalg::mul(&fp, &f, &t)
                                                == linalg::mul(&fp, &t, &f)
                                            {
                                                count += 1;
                                                assert!(span.contains(f.entries()));
                                            }
                                        }
                                    }
                                }
                            }
                            assert_eq!(count, p.pow(cb.dim() as u32));
                        }
                    }
                }
            }
        }
    }

    #[test]
    fn works_over_quadratic_fields() {
        let g = QuadField::new(-1).unwrap();
        let i = g.sqrt_d();
        let d = Matrix::from_rows(vec![
            vec![i.clone(), g.zero()],
            vec![g.zero(), i.neg()],
        ])
        .unwrap();
        let rot = Matrix::from_rows(vec![
            vec![g.zero(), g.one()],
            vec![g.one().neg(), g.zero()],
        ])
        .unwrap();
        let pres = FreePresentation::free(&["t0", "t1"]);
        let rep = MatrixRep::new(pres, g, 2, vec![d, rot]).unwrap();
        assert!(is_schur(&rep));
        assert!(is_absolutely_simple(&rep));
    }
}
