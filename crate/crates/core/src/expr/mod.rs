//! Text front end: expression parsing, canonical printing and the subspace
//! file format.

mod file;
mod format;
mod parse;

pub use file::SubspaceFile;
pub use format::format_multivector;
pub use parse::{parse_expression, parse_field, GRAMMAR};

#[cfg(test)]
mod tests {
    use super::*;
    use crate::error::Error;
    use crate::fieldlin::Field;
    use crate::grassmann::{Algebra, BasisMask, Multivector};

    fn q(n: usize) -> Algebra {
        Algebra::new(n, Field::Rational).unwrap()
    }

    fn e(a: Algebra, idx: &[usize]) -> Multivector {
        Multivector::basis(a, BasisMask::from_indices(idx))
    }

    #[test]
    fn parse_examples() {
        let a = q(2);
        assert_eq!(parse_expression("e2^e1", a).unwrap(), -e(a, &[1, 2]));
        assert_eq!(parse_expression("[e1,e2]", a).unwrap(), e(a, &[1, 2]).scale(&Field::Rational.int(2)));
        assert_eq!(parse_expression("1/2*(e1+e2)^(e1-e2)", a).unwrap(), -e(a, &[1, 2]));
        assert_eq!(parse_expression("e{2,1}", a).unwrap(), -e(a, &[1, 2]));
        assert_eq!(parse_expression("-e1 - -e1", a).unwrap(), Multivector::zero(a));
        assert_eq!(parse_expression("e1*e1", a).unwrap(), Multivector::zero(a));
    }

    #[test]
    fn precedence() {
        let a = q(3);
        let got = parse_expression("e1 + e2 ^ e3", a).unwrap();
        assert_eq!(got, &e(a, &[1]) + &e(a, &[2, 3]));
        let got = parse_expression("e1^e2 + [e1,e3]", a).unwrap();
        assert_eq!(got, &e(a, &[1, 2]) + &e(a, &[1, 3]).scale(&Field::Rational.int(2)));
    }

    #[test]
    fn parse_errors() {
        let a = q(2);
        assert!(matches!(parse_expression("e1 +", a), Err(Error::Syntax { pos: 4, .. })));
        assert!(matches!(parse_expression("e1 )", a), Err(Error::Syntax { pos: 3, .. })));
        assert_eq!(parse_expression("e3", a), Err(Error::IndexOutOfRange { index: 3, n: 2 }));
        assert_eq!(parse_expression("e0", a), Err(Error::IndexOutOfRange { index: 0, n: 2 }));
        assert_eq!(parse_expression("1/0", a), Err(Error::DivisionByZero));
        let g = Algebra::new(2, Field::prime(3).unwrap()).unwrap();
        assert_eq!(parse_expression("1/3", g), Err(Error::DivisionByZero));
    }

    #[test]
    fn format_examples() {
        let a = q(3);
        assert_eq!(format_multivector(&Multivector::zero(a)), "0");
        assert_eq!(format_multivector(&(&e(a, &[2]) * &e(a, &[1]))), "-e{1,2}");
        let x = parse_expression("1 + 2*e1 + e1^e3", a).unwrap();
        assert_eq!(format_multivector(&x), "1 + 2*e{1} + e{1,3}");
        let y = parse_expression("-1/2 - e1 + 3/4*e{2,3}", a).unwrap();
        assert_eq!(format_multivector(&y), "-1/2 - e{1} + 3/4*e{2,3}");
        let g = Algebra::new(2, Field::prime(3).unwrap()).unwrap();
        assert_eq!(format_multivector(&parse_expression("-e1", g).unwrap()), "2*e{1}");
    }

    #[test]
    fn fields() {
        assert_eq!(parse_field("Q").unwrap(), Field::Rational);
        assert_eq!(parse_field("GF(5)").unwrap(), Field::Prime(5));
        assert_eq!(parse_field("GF:7").unwrap(), Field::Prime(7));
        assert_eq!(parse_field("GF:2"), Err(Error::CharacteristicTwo));
        assert!(parse_field("R").is_err());
    }

    #[test]
    fn subspace_file_round_trip() {
        let text = "# example\nn=3 field=GF(5)\n\ne1 + e{2,3}\n# middle\n2*e2\n";
        let f = SubspaceFile::parse(text).unwrap();
        assert_eq!(f.alg, Algebra::new(3, Field::Prime(5)).unwrap());
        assert_eq!(f.vectors.len(), 2);
        assert_eq!(f.to_string(), "n=3 field=GF(5)\ne{1} + e{2,3}\n2*e{2}\n");
        assert_eq!(SubspaceFile::parse(&f.to_string()).unwrap(), f);
    }

    #[test]
    fn subspace_file_errors() {
        assert!(matches!(SubspaceFile::parse(""), Err(Error::SubspaceFile { line: 0, .. })));
        assert!(matches!(SubspaceFile::parse("n=2\ne1"), Err(Error::SubspaceFile { line: 1, .. })));
        assert!(matches!(SubspaceFile::parse("n=2 field=Q\ne1\ne5"), Err(Error::SubspaceFile { line: 3, .. })));
        assert!(matches!(SubspaceFile::parse("n=2 field=GF(2)"), Err(Error::SubspaceFile { line: 1, .. })));
    }
}
