//! Noncommutative polynomials over the rationals, finitely presented
//! associative algebras, and evaluation of presentations in an arbitrary
//! unital algebra.  Coefficients live in Q and are mapped into the target
//! field at evaluation time, so one presentation serves every scalar field.

use std::collections::BTreeMap;
use std::fmt;

use crate::exactfield::{Field, Rational};
use crate::linalg::{self, Matrix};
use crate::quiverkit::Quiver;
use crate::{Error, Result};

/// A word is a sequence of generator indices; the empty word is the unit.
pub type Word = Vec<usize>;

/// Noncommutative polynomial: a canonical list of (coefficient, word)
/// terms, sorted by word length then lexicographically, with no zero
/// coefficients and no repeated words.
#[derive(Clone, PartialEq, Eq, Debug, Default)]
pub struct NcPoly {
    terms: Vec<(Rational, Word)>,
}

fn word_key(w: &Word) -> (usize, Word) {
    (w.len(), w.clone())
}

impl NcPoly {
    pub fn zero() -> Self {
        NcPoly { terms: Vec::new() }
    }

    pub fn one() -> Self {
        NcPoly::monomial(Rational::from_integer(1.into()), vec![])
    }

    pub fn generator(i: usize) -> Self {
        NcPoly::monomial(Rational::from_integer(1.into()), vec![i])
    }

    pub fn monomial(coeff: Rational, word: Word) -> Self {
        NcPoly::from_terms(vec![(coeff, word)])
    }

    pub fn from_terms(terms: Vec<(Rational, Word)>) -> Self {
        use num::Zero;
        let mut map: BTreeMap<(usize, Word), Rational> = BTreeMap::new();
        for (c, w) in terms {
            let entry = map.entry(word_key(&w)).or_insert_with(Rational::zero);
            *entry += c;
        }
        NcPoly {
            terms: map
                .into_iter()
                .filter(|(_, c)| !c.is_zero())
                .map(|((_, w), c)| (c, w))
                .collect(),
        }
    }

    pub fn terms(&self) -> &[(Rational, Word)] {
        &self.terms
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn add(&self, other: &NcPoly) -> NcPoly {
        let mut t = self.terms.clone();
        t.extend(other.terms.iter().cloned());
        NcPoly::from_terms(t)
    }

    pub fn neg(&self) -> NcPoly {
        NcPoly {
            terms: self.terms.iter().map(|(c, w)| (-c, w.clone())).collect(),
        }
    }

    pub fn sub(&self, other: &NcPoly) -> NcPoly {
        self.add(&other.neg())
    }

    pub fn scale(&self, c: &Rational) -> NcPoly {
        NcPoly::from_terms(
            self.terms
                .iter()
                .map(|(k, w)| (k * c, w.clone()))
                .collect(),
        )
    }

    /// Product by word concatenation.
    pub fn mul(&self, other: &NcPoly) -> NcPoly {
        let mut out = Vec::new();
        for (c1, w1) in &self.terms {
            for (c2, w2) in &other.terms {
                let mut w = w1.clone();
                w.extend_from_slice(w2);
                out.push((c1 * c2, w));
            }
        }
        NcPoly::from_terms(out)
    }

    /// Largest generator index appearing, if any.
    pub fn max_generator(&self) -> Option<usize> {
        self.terms
            .iter()
            .flat_map(|(_, w)| w.iter().copied())
            .max()
    }

    pub fn display_with(&self, names: &[String]) -> String {
        if self.is_zero() {
            return "0".into();
        }
        let mut out = String::new();
        for (k, (c, w)) in self.terms.iter().enumerate() {
            use num::One;
            let mono = if w.is_empty() {
                "1".to_string()
            } else {
                w.iter()
                    .map(|&i| names.get(i).cloned().unwrap_or_else(|| format!("g{i}")))
                    .collect::<Vec<_>>()
                    .join("*")
            };
            let lead = if c.is_one() && !w.is_empty() {
                mono.clone()
            } else if (-c).is_one() && !w.is_empty() {
                format!("-{mono}")
            } else if w.is_empty() {
                format!("{c}")
            } else {
                format!("{c}*{mono}")
            };
            if k == 0 {
                out.push_str(&lead);
            } else if let Some(rest) = lead.strip_prefix('-') {
                out.push_str(" - ");
                out.push_str(rest);
            } else {
                out.push_str(" + ");
                out.push_str(&lead);
            }
        }
        out
    }
}

impl fmt::Display for NcPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.display_with(&[]))
    }
}

/// Finitely presented associative algebra: named generators and a list of
/// relation polynomials that must evaluate to zero.
#[derive(Clone, PartialEq, Debug)]
pub struct FreePresentation {
    generators: Vec<String>,
    relations: Vec<NcPoly>,
}

impl FreePresentation {
    pub fn new(generators: Vec<String>, relations: Vec<NcPoly>) -> Result<Self> {
        let mut seen = std::collections::HashSet::new();
        for g in &generators {
            if !seen.insert(g.clone()) {
                return Err(Error::InvalidInput(format!(
                    "duplicate generator name {g:?}"
                )));
            }
        }
        for (k, r) in relations.iter().enumerate() {
            if let Some(m) = r.max_generator() {
                if m >= generators.len() {
                    return Err(Error::InvalidInput(format!(
                        "relation {k} uses generator index {m}, but only {} generators are declared",
                        generators.len()
                    )));
                }
            }
        }
        Ok(FreePresentation {
            generators,
            relations,
        })
    }

    /// Free algebra on the given generators.
    pub fn free(names: &[&str]) -> Self {
        FreePresentation {
            generators: names.iter().map(|s| s.to_string()).collect(),
            relations: Vec::new(),
        }
    }

    pub fn generators(&self) -> &[String] {
        &self.generators
    }

    pub fn relations(&self) -> &[NcPoly] {
        &self.relations
    }

    pub fn num_generators(&self) -> usize {
        self.generators.len()
    }

    pub fn generator_index(&self, name: &str) -> Option<usize> {
        self.generators.iter().position(|g| g == name)
    }
}

/// Ambient unital algebra in which polynomials can be evaluated.
pub trait AlgebraEval {
    type Elt: Clone + PartialEq;

    fn one(&self) -> Self::Elt;
    fn zero(&self) -> Self::Elt;
    fn add(&self, a: &Self::Elt, b: &Self::Elt) -> Self::Elt;
    fn mul(&self, a: &Self::Elt, b: &Self::Elt) -> Self::Elt;
    fn scale(&self, c: &Rational, x: &Self::Elt) -> Result<Self::Elt>;
    fn is_zero(&self, x: &Self::Elt) -> bool;
}

/// The full matrix algebra of size n over a field.
#[derive(Clone, Debug)]
pub struct MatAlgebra<F: Field> {
    pub field: F,
    pub n: usize,
}

impl<F: Field> MatAlgebra<F> {
    pub fn new(field: F, n: usize) -> Self {
        MatAlgebra { field, n }
    }

    /// All assignment values must be square of the right size.
    pub fn validate_assignment(&self, assign: &[Matrix<F::Elem>]) -> Result<()> {
        for (k, m) in assign.iter().enumerate() {
            if m.rows() != self.n || m.cols() != self.n {
                return Err(Error::DimensionMismatch(format!(
                    "assignment {k} is {}x{}, expected {}x{}",
                    m.rows(),
                    m.cols(),
                    self.n,
                    self.n
                )));
            }
        }
        Ok(())
    }
}

impl<F: Field> AlgebraEval for MatAlgebra<F> {
    type Elt = Matrix<F::Elem>;

    fn one(&self) -> Matrix<F::Elem> {
        linalg::identity(&self.field, self.n)
    }

    fn zero(&self) -> Matrix<F::Elem> {
        linalg::zeros(&self.field, self.n, self.n)
    }

    fn add(&self, a: &Matrix<F::Elem>, b: &Matrix<F::Elem>) -> Matrix<F::Elem> {
        linalg::add(&self.field, a, b)
    }

    fn mul(&self, a: &Matrix<F::Elem>, b: &Matrix<F::Elem>) -> Matrix<F::Elem> {
        linalg::mul(&self.field, a, b)
    }

    fn scale(&self, c: &Rational, x: &Matrix<F::Elem>) -> Result<Matrix<F::Elem>> {
        let c = self.field.from_rational(c)?;
        Ok(linalg::scale(&self.field, &c, x))
    }

    fn is_zero(&self, x: &Matrix<F::Elem>) -> bool {
        linalg::is_zero_matrix(&self.field, x)
    }
}

/// Value of `p` under the substitution generator i -> assign[i]; the empty
/// word evaluates to the ambient identity.
pub fn eval_poly<A: AlgebraEval>(ambient: &A, p: &NcPoly, assign: &[A::Elt]) -> Result<A::Elt> {
    if let Some(m) = p.max_generator() {
        if m >= assign.len() {
            return Err(Error::UnboundGenerator { index: m });
        }
    }
    let mut acc = ambient.zero();
    for (c, w) in p.terms() {
        let mut val = ambient.one();
        for &i in w {
            val = ambient.mul(&val, &assign[i]);
        }
        acc = ambient.add(&acc, &ambient.scale(c, &val)?);
    }
    Ok(acc)
}

/// Whether the assignment satisfies every relation of the presentation,
/// i.e. defines an algebra homomorphism from the presented algebra.
pub fn check_relations<A: AlgebraEval>(
    ambient: &A,
    pres: &FreePresentation,
    assign: &[A::Elt],
) -> Result<bool> {
    for r in pres.relations() {
        if !ambient.is_zero(&eval_poly(ambient, r, assign)?) {
            return Ok(false);
        }
    }
    Ok(true)
}

/// Index of the first violated relation, for diagnostic reports.
pub fn first_violated_relation<A: AlgebraEval>(
    ambient: &A,
    pres: &FreePresentation,
    assign: &[A::Elt],
) -> Result<Option<usize>> {
    for (k, r) in pres.relations().iter().enumerate() {
        if !ambient.is_zero(&eval_poly(ambient, r, assign)?) {
            return Ok(Some(k));
        }
    }
    Ok(None)
}

/// Path algebra of a quiver: generators e_i for vertices and f_k for
/// arrows, with the Kronecker-delta composition relations and the explicit
/// partition of unity  e_0 + ... + e_{v-1} = 1.
pub fn path_algebra(q: &Quiver) -> Result<FreePresentation> {
    let v = q.vertex_count();
    if v == 0 {
        return Err(Error::EmptyQuiver);
    }
    let arrows = q.arrows();
    let mut names: Vec<String> = (0..v).map(|i| format!("e{i}")).collect();
    names.extend((0..arrows.len()).map(|k| format!("f{k}")));
    let e = NcPoly::generator;
    let f = |k: usize| NcPoly::generator(v + k);

    let mut relations = Vec::new();
    // e_i e_j = delta_ij e_i
    for i in 0..v {
        for j in 0..v {
            let prod = e(i).mul(&e(j));
            relations.push(if i == j { prod.sub(&e(i)) } else { prod });
        }
    }
    // f_k e_i = delta_{source(k), i} f_k
    for (k, &(src, _)) in arrows.iter().enumerate() {
        for i in 0..v {
            let prod = f(k).mul(&e(i));
            relations.push(if src == i { prod.sub(&f(k)) } else { prod });
        }
    }
    // e_j f_k = delta_{j, target(k)} f_k
    for j in 0..v {
        for (k, &(_, dst)) in arrows.iter().enumerate() {
            let prod = e(j).mul(&f(k));
            relations.push(if j == dst { prod.sub(&f(k)) } else { prod });
        }
    }
    // sum of the vertex idempotents is the identity
    let mut total = NcPoly::zero();
    for i in 0..v {
        total = total.add(&e(i));
    }
    relations.push(total.sub(&NcPoly::one()));

    FreePresentation::new(names, relations)
}

/// Evaluate a polynomial on square matrices after validating shapes.
pub fn eval_in_matrices<F: Field>(
    field: &F,
    n: usize,
    p: &NcPoly,
    assign: &[Matrix<F::Elem>],
) -> Result<Matrix<F::Elem>> {
    let amb = MatAlgebra::new(field.clone(), n);
    amb.validate_assignment(assign)?;
    eval_poly(&amb, p, assign)
}
