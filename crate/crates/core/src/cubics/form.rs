use std::collections::BTreeMap;
use std::fmt::Write as _;

use crate::error::{Error, Result};
use crate::exact::{parse_rational, ExactRational, Field, Ring};

/// Exponents of `x`, `y`, `z`.
pub type Monomial = [u32; 3];

/// Homogeneous form in `x, y, z`. Every stored monomial has total degree
/// `degree` and a nonzero coefficient.
#[derive(Clone, Debug, PartialEq)]
pub struct TriForm<R> {
    degree: u32,
    terms: BTreeMap<Monomial, R>,
}

impl<R: Ring> TriForm<R> {
    pub fn zero(degree: u32) -> Self {
        Self {
            degree,
            terms: BTreeMap::new(),
        }
    }

    /// Sums repeated monomials; panics on a monomial of the wrong degree.
    pub fn from_terms(degree: u32, terms: impl IntoIterator<Item = (Monomial, R)>) -> Self {
        let mut f = Self::zero(degree);
        for (m, c) in terms {
            f.add_term(m, c);
        }
        f
    }

    fn add_term(&mut self, m: Monomial, c: R) {
        assert_eq!(m.iter().sum::<u32>(), self.degree, "monomial degree");
        if c.is_zero() {
            return;
        }
        let sum = match self.terms.remove(&m) {
            Some(old) => old.add(&c),
            None => c,
        };
        if !sum.is_zero() {
            self.terms.insert(m, sum);
        }
    }

    pub fn degree(&self) -> u32 {
        self.degree
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn coeff(&self, m: &Monomial) -> Option<&R> {
        self.terms.get(m)
    }

    /// Terms in graded lexicographic order with `x > y > z`.
    pub fn terms(&self) -> impl Iterator<Item = (&Monomial, &R)> {
        self.terms.iter().rev()
    }

    pub fn add(&self, other: &Self) -> Self {
        assert_eq!(self.degree, other.degree, "adding forms of different degree");
        let mut out = self.clone();
        for (m, c) in &other.terms {
            out.add_term(*m, c.clone());
        }
        out
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.add(&other.neg())
    }

    pub fn neg(&self) -> Self {
        Self {
            degree: self.degree,
            terms: self.terms.iter().map(|(m, c)| (*m, c.neg())).collect(),
        }
    }

    pub fn scale(&self, c: &R) -> Self {
        Self::from_terms(self.degree, self.terms.iter().map(|(m, a)| (*m, a.mul(c))))
    }

    pub fn mul(&self, other: &Self) -> Self {
        let mut out = Self::zero(self.degree + other.degree);
        for (m1, a) in &self.terms {
            for (m2, b) in &other.terms {
                out.add_term([m1[0] + m2[0], m1[1] + m2[1], m1[2] + m2[2]], a.mul(b));
            }
        }
        out
    }

    /// Partial derivative in variable `i` (0 = x, 1 = y, 2 = z).
    pub fn partial(&self, i: usize) -> Self {
        let degree = self.degree.saturating_sub(1);
        let mut out = Self::zero(degree);
        for (m, c) in &self.terms {
            if m[i] > 0 {
                let mut e = *m;
                e[i] -= 1;
                out.add_term(e, c.mul_int(m[i] as i64));
            }
        }
        out
    }

    pub fn eval(&self, p: &[R; 3]) -> R {
        let mut acc = p[0].zero_like();
        for (m, c) in &self.terms {
            let term = c.mul(&p[0].pow(m[0])).mul(&p[1].pow(m[1])).mul(&p[2].pow(m[2]));
            acc = acc.add(&term);
        }
        acc
    }

    /// `X -> f(A X)`: substitute `x_i -> sum_j A[i][j] x_j`.
    pub fn substitute_linear(&self, a: &[[R; 3]; 3]) -> Self {
        let lin: Vec<Self> = (0..3)
            .map(|i| {
                Self::from_terms(
                    1,
                    (0..3).map(|j| {
                        let mut e = [0; 3];
                        e[j] = 1;
                        (e, a[i][j].clone())
                    }),
                )
            })
            .collect();
        let one = a[0][0].one_like();
        let mut powers: Vec<Vec<Self>> = Vec::new();
        for l in &lin {
            let mut p = vec![Self::from_terms(0, [([0, 0, 0], one.clone())])];
            for k in 1..=self.degree as usize {
                let next = p[k - 1].mul(l);
                p.push(next);
            }
            powers.push(p);
        }
        let mut out = Self::zero(self.degree);
        for (m, c) in &self.terms {
            let t = powers[0][m[0] as usize]
                .mul(&powers[1][m[1] as usize])
                .mul(&powers[2][m[2] as usize])
                .scale(c);
            out = out.add(&t);
        }
        out
    }

    /// Whether `self = c * other` for some nonzero `c`, by cross-multiplying
    /// against a reference monomial. Valid over integral domains.
    pub fn proportional(&self, other: &Self) -> bool {
        if self.degree != other.degree {
            return false;
        }
        if self.is_zero() || other.is_zero() {
            return self.is_zero() && other.is_zero();
        }
        if self.terms.keys().ne(other.terms.keys()) {
            return false;
        }
        let (m0, a0) = self.terms.iter().next().unwrap();
        let b0 = &other.terms[m0];
        self.terms
            .iter()
            .all(|(m, a)| a.mul(b0) == other.terms[m].mul(a0))
    }
}

impl<R: Field> TriForm<R> {
    /// Scale so that the leading coefficient (graded lex) is one.
    pub fn normalized(&self) -> Self {
        match self.terms().next() {
            Some((_, c)) => {
                let inv = c.try_inv().expect("nonzero leading coefficient");
                self.scale(&inv)
            }
            None => self.clone(),
        }
    }
}

pub fn det3<R: Ring>(m: &[[R; 3]; 3]) -> R {
    let minor = |r1: usize, r2: usize, c1: usize, c2: usize| {
        m[r1][c1].mul(&m[r2][c2]).sub(&m[r1][c2].mul(&m[r2][c1]))
    };
    m[0][0]
        .mul(&minor(1, 2, 1, 2))
        .sub(&m[0][1].mul(&minor(1, 2, 0, 2)))
        .add(&m[0][2].mul(&minor(1, 2, 0, 1)))
}

/// Determinant of the matrix of second partial derivatives; degree
/// `3 (d - 2)` unless it vanishes.
pub fn hessian_form<R: Ring>(f: &TriForm<R>) -> TriForm<R> {
    assert!(f.degree() >= 2, "Hessian needs degree at least 2");
    let first: Vec<TriForm<R>> = (0..3).map(|i| f.partial(i)).collect();
    let h = |i: usize, j: usize| first[i].partial(j);
    let m = [
        [h(0, 0), h(0, 1), h(0, 2)],
        [h(1, 0), h(1, 1), h(1, 2)],
        [h(2, 0), h(2, 1), h(2, 2)],
    ];
    let minor = |r1: usize, r2: usize, c1: usize, c2: usize| {
        m[r1][c1].mul(&m[r2][c2]).sub(&m[r1][c2].mul(&m[r2][c1]))
    };
    m[0][0]
        .mul(&minor(1, 2, 1, 2))
        .sub(&m[0][1].mul(&minor(1, 2, 0, 2)))
        .add(&m[0][2].mul(&minor(1, 2, 0, 1)))
}

/// First polar `Q_0 f_x + Q_1 f_y + Q_2 f_z`.
pub fn polar<R: Ring>(f: &TriForm<R>, q: &[R; 3]) -> TriForm<R> {
    let mut out = TriForm::zero(f.degree().saturating_sub(1));
    for (i, qi) in q.iter().enumerate() {
        out = out.add(&f.partial(i).scale(qi));
    }
    out
}

/// Second partials of the polar conic of a cubic at `q`; twice its
/// symmetric matrix.
pub fn polar_conic_matrix<R: Ring>(f: &TriForm<R>, q: &[R; 3]) -> [[R; 3]; 3] {
    assert_eq!(f.degree(), 3, "polar conic of a cubic");
    let conic = polar(f, q);
    let entry = |i: usize, j: usize| -> R {
        let c = conic.partial(i).partial(j);
        c.coeff(&[0, 0, 0]).cloned().unwrap_or_else(|| q[0].zero_like())
    };
    [
        [entry(0, 0), entry(0, 1), entry(0, 2)],
        [entry(1, 0), entry(1, 1), entry(1, 2)],
        [entry(2, 0), entry(2, 1), entry(2, 2)],
    ]
}

pub fn polar_conic_degenerate<R: Ring>(f: &TriForm<R>, q: &[R; 3]) -> bool {
    det3(&polar_conic_matrix(f, q)).is_zero()
}

/// 3x3 matrices over `Q` acting on projective points.
#[derive(Clone, Debug, PartialEq)]
pub struct Mat3(pub [[ExactRational; 3]; 3]);

impl Mat3 {
    pub fn det(&self) -> ExactRational {
        det3(&self.0)
    }

    pub fn inverse(&self) -> Option<Mat3> {
        let d = self.det();
        let inv = d.try_inv()?;
        let m = &self.0;
        let cof = |r: usize, c: usize| {
            let rows: Vec<usize> = (0..3).filter(|&i| i != r).collect();
            let cols: Vec<usize> = (0..3).filter(|&j| j != c).collect();
            let v = &m[rows[0]][cols[0]] * &m[rows[1]][cols[1]]
                - &m[rows[0]][cols[1]] * &m[rows[1]][cols[0]];
            if (r + c).is_multiple_of(2) {
                v
            } else {
                -v
            }
        };
        // inverse = adjugate / det, adjugate = transpose of cofactors
        let out = std::array::from_fn(|i| std::array::from_fn(|j| cof(j, i) * &inv));
        Some(Mat3(out))
    }

    pub fn apply(&self, q: &[ExactRational; 3]) -> [ExactRational; 3] {
        std::array::from_fn(|i| (0..3).map(|j| &self.0[i][j] * &q[j]).sum())
    }
}

impl TriForm<ExactRational> {
    /// Sparse text, e.g. `1 * x^3 y^0 z^0 + -3 * x^1 y^1 z^1`, terms in
    /// graded lexicographic order; zero is `0`.
    pub fn to_text(&self) -> String {
        if self.is_zero() {
            return "0".into();
        }
        let mut s = String::new();
        for (k, (m, c)) in self.terms().enumerate() {
            if k > 0 {
                s.push_str(" + ");
            }
            write!(s, "{c} * x^{} y^{} z^{}", m[0], m[1], m[2]).unwrap();
        }
        s
    }

    /// Inverse of [`TriForm::to_text`]; the degree of `0` must be supplied.
    pub fn parse(s: &str, degree_if_zero: u32) -> Result<Self> {
        let s = s.trim();
        if s == "0" {
            return Ok(Self::zero(degree_if_zero));
        }
        let mut terms = Vec::new();
        for part in s.split(" + ") {
            let (c, mono) = part
                .split_once('*')
                .ok_or_else(|| Error::Parse(format!("missing '*' in term {part:?}")))?;
            let c = parse_rational(c.trim())?;
            let mut e = [0u32; 3];
            let mut seen = [false; 3];
            for tok in mono.split_whitespace() {
                let (v, k) = tok
                    .split_once('^')
                    .ok_or_else(|| Error::Parse(format!("bad monomial {tok:?}")))?;
                let i = match v {
                    "x" => 0,
                    "y" => 1,
                    "z" => 2,
                    _ => return Err(Error::Parse(format!("unknown variable {v:?}"))),
                };
                e[i] = k
                    .parse()
                    .map_err(|_| Error::Parse(format!("bad exponent {k:?}")))?;
                seen[i] = true;
            }
            if seen != [true; 3] {
                return Err(Error::Parse(format!("term {part:?} must list x, y and z")));
            }
            terms.push((e, c));
        }
        let degree = terms[0].0.iter().sum();
        if terms.iter().any(|(e, _)| e.iter().sum::<u32>() != degree) {
            return Err(Error::Parse("form is not homogeneous".into()));
        }
        Ok(Self::from_terms(degree, terms))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::{int, rat};

    fn fermat() -> TriForm<ExactRational> {
        TriForm::from_terms(3, [([3, 0, 0], int(1)), ([0, 3, 0], int(1)), ([0, 0, 3], int(1))])
    }

    #[test]
    fn polar_of_fermat() {
        let p = polar(&fermat(), &[int(1), int(0), int(0)]);
        assert_eq!(p, TriForm::from_terms(2, [([2, 0, 0], int(3))]));
    }

    #[test]
    fn hessian_of_cube_vanishes() {
        let f = TriForm::from_terms(3, [([3, 0, 0], int(1))]);
        assert!(hessian_form(&f).is_zero());
    }

    #[test]
    fn hessian_of_triangle() {
        let f = TriForm::from_terms(3, [([1, 1, 1], int(1))]);
        assert_eq!(hessian_form(&f), TriForm::from_terms(3, [([1, 1, 1], int(2))]));
    }

    #[test]
    fn hessian_of_weierstrass_a1_b0() {
        // y^2 z - x^3 - x z^2
        let f = TriForm::from_terms(3, [([0, 2, 1], int(1)), ([3, 0, 0], int(-1)), ([1, 0, 2], int(-1))]);
        let h = hessian_form(&f);
        let want = TriForm::from_terms(
            3,
            [([1, 2, 0], int(24)), ([0, 0, 3], int(-8)), ([2, 0, 1], int(24))],
        );
        assert_eq!(h, want);
        assert!(polar_conic_degenerate(&f, &[int(0), int(1), int(0)]));
        assert!(!polar_conic_degenerate(&f, &[int(1), int(1), int(1)]));
    }

    #[test]
    fn text_roundtrip() {
        let f = TriForm::from_terms(3, [([1, 1, 1], rat(-3, 2)), ([0, 3, 0], int(1))]);
        let s = f.to_text();
        assert_eq!(s, "-3/2 * x^1 y^1 z^1 + 1 * x^0 y^3 z^0");
        assert_eq!(TriForm::parse(&s, 3).unwrap(), f);
        assert!(TriForm::parse("1 * x^2 y^0 z^0 + 1 * x^0 y^0 z^1", 0).is_err());
    }

    #[test]
    fn matrix_inverse() {
        let a = Mat3([[int(2), int(1), int(0)], [int(0), int(1), int(3)], [int(1), int(0), int(1)]]);
        let inv = a.inverse().unwrap();
        let q = [int(1), rat(2, 3), int(-4)];
        assert_eq!(inv.apply(&a.apply(&q)), q);
    }
}
