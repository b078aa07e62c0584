use std::collections::{BTreeMap, BTreeSet};
use std::fmt;

use crate::error::{Error, Result};
use crate::fieldlin::Subspace;
use crate::grassmann::Algebra;

/// Symbolic shape of an Aut-stable subspace or subalgebra.
///
/// `A` is an even ladder ℰ_j ⊕ ℰ_{j+2} ⊕ ⋯; `B` adds the components indexed
/// by `s` to an even ladder starting at `i`; `C` adjoins the scalars to one of
/// the others. The subalgebra shapes mirror these with k built into
/// `SubalgA` and optional for `SubalgB`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum CanonicalForm {
    Zero,
    A { j: usize },
    B { j: usize, s: BTreeSet<usize>, i: usize },
    C(Box<CanonicalForm>),
    SubalgA { j: usize },
    SubalgB { j: usize, s: BTreeSet<usize>, i: usize, unital: bool },
}

/// Whether ℰ₀ is present, and which positive grades.
pub type GradeShape = (bool, BTreeSet<usize>);

fn set_str(s: &BTreeSet<usize>) -> String {
    let parts: Vec<String> = s.iter().map(|x| x.to_string()).collect();
    format!("{{{}}}", parts.join(","))
}

impl fmt::Display for CanonicalForm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            CanonicalForm::Zero => write!(f, "0"),
            CanonicalForm::A { j } => write!(f, "A(j={j})"),
            CanonicalForm::B { j, s, i } => write!(f, "B(j={j},S={},i={i})", set_str(s)),
            CanonicalForm::C(inner) => match inner.as_ref() {
                CanonicalForm::Zero => write!(f, "C(k)"),
                other => write!(f, "C(k + {other})"),
            },
            CanonicalForm::SubalgA { j } => write!(f, "SubalgA(j={j})"),
            CanonicalForm::SubalgB { j, s, i, unital } => {
                write!(f, "SubalgB(j={j},S={},i={i}", set_str(s))?;
                if *unital {
                    write!(f, ",unital")?;
                }
                write!(f, ")")
            }
        }
    }
}

fn ladder(start: usize, n: usize) -> impl Iterator<Item = usize> {
    (start..=n).step_by(2)
}

fn invalid(msg: String) -> Error {
    Error::InvalidForm(msg)
}

fn check_odd_part(j: usize, s: &BTreeSet<usize>, i: usize, n: usize) -> Result<()> {
    if j.is_multiple_of(2) || j > n {
        return Err(invalid(format!("j={j} must be odd and at most n={n}")));
    }
    if !s.contains(&j) {
        return Err(invalid(format!("S={} must contain j={j}", set_str(s))));
    }
    if s.iter().any(|&x| x < j || x > n) {
        return Err(invalid(format!("S={} must lie in {{{j},...,{n}}}", set_str(s))));
    }
    if i == 0 || i % 2 == 1 || i > j + 1 {
        return Err(invalid(format!("i={i} must be even with 0 < i <= j+1")));
    }
    Ok(())
}

fn check_even_start(j: usize, n: usize) -> Result<()> {
    if j == 0 || j % 2 == 1 || j > n {
        return Err(invalid(format!("j={j} must be even with 0 < j <= n={n}")));
    }
    Ok(())
}

/// {s + i | s ∈ S, s + i ≤ n} ⊆ S.
pub fn subalgebra_condition(s: &BTreeSet<usize>, i: usize, n: usize) -> bool {
    s.iter().map(|&x| x + i).filter(|&t| t <= n).all(|t| s.contains(&t))
}

impl CanonicalForm {
    /// Checks the parameter constraints for generator count `n`.
    pub fn validate(&self, n: usize) -> Result<()> {
        match self {
            CanonicalForm::Zero => Ok(()),
            CanonicalForm::A { j } | CanonicalForm::SubalgA { j } => check_even_start(*j, n),
            CanonicalForm::B { j, s, i } => check_odd_part(*j, s, *i, n),
            CanonicalForm::SubalgB { j, s, i, .. } => {
                check_odd_part(*j, s, *i, n)?;
                if !subalgebra_condition(s, *i, n) {
                    return Err(invalid(format!("S={} is not closed under adding i={i}", set_str(s))));
                }
                Ok(())
            }
            CanonicalForm::C(inner) => match inner.as_ref() {
                CanonicalForm::Zero | CanonicalForm::A { .. } | CanonicalForm::B { .. } => inner.validate(n),
                other => Err(invalid(format!("C cannot wrap {other}"))),
            },
        }
    }

    /// The components of the realization, without building it.
    pub fn shape(&self, n: usize) -> Result<GradeShape> {
        self.validate(n)?;
        Ok(self.shape_unchecked(n))
    }

    fn shape_unchecked(&self, n: usize) -> GradeShape {
        match self {
            CanonicalForm::Zero => (false, BTreeSet::new()),
            CanonicalForm::A { j } => (false, ladder(*j, n).collect()),
            CanonicalForm::SubalgA { j } => (true, ladder(*j, n).collect()),
            CanonicalForm::B { s, i, .. } => (false, s.iter().copied().chain(ladder(*i, n)).collect()),
            CanonicalForm::SubalgB { s, i, unital, .. } => (*unital, s.iter().copied().chain(ladder(*i, n)).collect()),
            CanonicalForm::C(inner) => (true, inner.shape_unchecked(n).1),
        }
    }

    pub fn is_subalgebra_form(&self) -> bool {
        matches!(self, CanonicalForm::SubalgA { .. } | CanonicalForm::SubalgB { .. })
    }
}

/// The explicit direct sum of graded components described by `form`.
pub fn realize(form: &CanonicalForm, alg: Algebra) -> Result<Subspace> {
    let (unit, grades) = form.shape(alg.n())?;
    Ok(Subspace::graded(alg, unit, grades))
}

/// The grade rules every automorphism-stable sum of components obeys: an odd
/// grade s forces s+1 (inner automorphisms), and any positive grade s forces
/// s+2 (parity-preserving shears), whenever the target grade exists.
pub fn is_grade_closed(n: usize, grades: &BTreeSet<usize>) -> bool {
    first_grade_violation(n, grades).is_none()
}

/// First (s, t) with s present, t forced by the rules above, and t missing.
pub fn first_grade_violation(n: usize, grades: &BTreeSet<usize>) -> Option<(usize, usize)> {
    for &s in grades {
        if s == 0 {
            continue;
        }
        if s % 2 == 1 && s < n && !grades.contains(&(s + 1)) {
            return Some((s, s + 1));
        }
        if s + 2 <= n && !grades.contains(&(s + 2)) {
            return Some((s, s + 2));
        }
    }
    None
}

/// Smallest rule-closed grade set containing `grades`.
pub fn grade_closure(n: usize, grades: &BTreeSet<usize>) -> BTreeSet<usize> {
    let mut out = grades.clone();
    while let Some((_, t)) = first_grade_violation(n, &out) {
        out.insert(t);
    }
    out
}

/// "k + E1 + E3" style description of a component sum.
pub fn describe_shape(shape: &GradeShape) -> String {
    let mut parts: Vec<String> = Vec::new();
    if shape.0 {
        parts.push("k".into());
    }
    parts.extend(shape.1.iter().map(|g| format!("E{g}")));
    if parts.is_empty() {
        "0".into()
    } else {
        parts.join(" + ")
    }
}

/// Every parameter tuple of the subspace shapes for `n`, in a fixed order:
/// Zero, the A ladders, the B tuples (j ascending, S by size then
/// lexicographically, i ascending), then all of those again under C.
pub fn subspace_candidates(n: usize) -> Vec<CanonicalForm> {
    let mut base = vec![CanonicalForm::Zero];
    base.extend((2..=n).step_by(2).map(|j| CanonicalForm::A { j }));
    for j in (1..=n).step_by(2) {
        for s in sets_containing(j, n) {
            for i in (2..=j + 1).step_by(2) {
                base.push(CanonicalForm::B { j, s: s.clone(), i });
            }
        }
    }
    let wrapped: Vec<CanonicalForm> = base.iter().map(|f| CanonicalForm::C(Box::new(f.clone()))).collect();
    base.extend(wrapped);
    base
}

/// Subalgebra shapes: the SubalgA ladders and every SubalgB tuple meeting the
/// additive condition on S, in the same order as `subspace_candidates`.
pub fn subalgebra_candidates(n: usize, unital: bool) -> Vec<CanonicalForm> {
    let mut out: Vec<CanonicalForm> = (2..=n).step_by(2).map(|j| CanonicalForm::SubalgA { j }).collect();
    for j in (1..=n).step_by(2) {
        for s in sets_containing(j, n) {
            for i in (2..=j + 1).step_by(2) {
                if subalgebra_condition(&s, i, n) {
                    out.push(CanonicalForm::SubalgB { j, s: s.clone(), i, unital });
                }
            }
        }
    }
    out
}

/// All S ⊆ {j..n} with j ∈ S, ordered by size and then lexicographically.
fn sets_containing(j: usize, n: usize) -> Vec<BTreeSet<usize>> {
    let rest: Vec<usize> = (j + 1..=n).collect();
    let mut sets: Vec<BTreeSet<usize>> = (0u64..1 << rest.len())
        .map(|bits| {
            let mut s = BTreeSet::from([j]);
            s.extend(rest.iter().enumerate().filter(|(k, _)| bits >> k & 1 == 1).map(|(_, &x)| x));
            s
        })
        .collect();
    sets.sort_by(|a, b| a.len().cmp(&b.len()).then_with(|| a.iter().cmp(b.iter())));
    sets
}

/// Groups candidate forms by realized shape, keeping the first form per shape.
pub fn dedupe_by_shape(n: usize, forms: Vec<CanonicalForm>) -> BTreeMap<GradeShape, CanonicalForm> {
    let mut out = BTreeMap::new();
    for f in forms {
        let shape = f.shape(n).expect("generated forms are valid");
        out.entry(shape).or_insert(f);
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fieldlin::Field;
    use crate::grassmann::Algebra;

    fn set(v: &[usize]) -> BTreeSet<usize> {
        v.iter().copied().collect()
    }

    #[test]
    fn realize_examples() {
        let a2 = Algebra::new(2, Field::Rational).unwrap();
        assert_eq!(realize(&CanonicalForm::A { j: 2 }, a2).unwrap().dim(), 1);
        let a3 = Algebra::new(3, Field::Rational).unwrap();
        let b = CanonicalForm::B { j: 1, s: set(&[1]), i: 2 };
        assert_eq!(realize(&b, a3).unwrap().dim(), 6);
        let c = CanonicalForm::C(Box::new(CanonicalForm::Zero));
        assert_eq!(realize(&c, a3).unwrap(), Subspace::graded(a3, true, []));
    }

    #[test]
    fn invalid_parameters() {
        assert!(CanonicalForm::A { j: 3 }.validate(4).is_err());
        assert!(CanonicalForm::B { j: 1, s: set(&[2]), i: 2 }.validate(3).is_err());
        assert!(CanonicalForm::B { j: 1, s: set(&[1]), i: 4 }.validate(3).is_err());
        assert!(CanonicalForm::B { j: 3, s: set(&[3]), i: 4 }.validate(3).is_ok());
        assert!(CanonicalForm::C(Box::new(CanonicalForm::SubalgA { j: 2 })).validate(3).is_err());
        assert!(CanonicalForm::SubalgB { j: 1, s: set(&[1]), i: 2, unital: false }.validate(3).is_err());
    }

    #[test]
    fn display() {
        assert_eq!(CanonicalForm::A { j: 2 }.to_string(), "A(j=2)");
        assert_eq!(CanonicalForm::B { j: 1, s: set(&[1]), i: 2 }.to_string(), "B(j=1,S={1},i=2)");
        assert_eq!(CanonicalForm::C(Box::new(CanonicalForm::A { j: 2 })).to_string(), "C(k + A(j=2))");
    }

    #[test]
    fn condition_examples() {
        assert!(!subalgebra_condition(&set(&[1]), 2, 3));
        assert!(subalgebra_condition(&set(&[1, 3]), 2, 3));
        assert!(subalgebra_condition(&set(&[3, 7]), 4, 9));
    }

    #[test]
    fn grade_rules() {
        assert!(is_grade_closed(3, &set(&[2, 3])));
        assert!(!is_grade_closed(3, &set(&[1, 2])));
        assert_eq!(first_grade_violation(3, &set(&[1, 2])), Some((1, 3)));
        assert_eq!(grade_closure(4, &set(&[1])), set(&[1, 2, 3, 4]));
        assert_eq!(grade_closure(5, &set(&[2])), set(&[2, 4]));
    }

    #[test]
    fn candidate_counts() {
        // n=3: six distinct candidate realizations without k (incl. 0), twelve with.
        assert_eq!(dedupe_by_shape(3, subspace_candidates(3)).len(), 12);
        assert_eq!(dedupe_by_shape(2, subspace_candidates(2)).len(), 6);
        assert_eq!(dedupe_by_shape(1, subspace_candidates(1)).len(), 4);
    }
}
