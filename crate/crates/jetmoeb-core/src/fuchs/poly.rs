//! Sparse multivariate polynomials over the rationals, sized for running
//! the Riccati recursion symbolically in the variables X_1..X_{n+1}.

use std::collections::BTreeMap;
use std::fmt;

use serde::ser::SerializeStruct;
use serde::{Serialize, Serializer};

use crate::series::{format_rational, rat, rat_int, Coefficient, Rational};

/// Polynomial with rational coefficients; keys are exponent vectors of a
/// fixed length, kept in lexicographic order for deterministic output.
#[derive(Debug, Clone, PartialEq)]
pub(crate) struct MultiPoly {
    nvars: usize,
    terms: BTreeMap<Vec<u32>, Rational>,
}

impl MultiPoly {
    pub fn zero(nvars: usize) -> Self {
        MultiPoly {
            nvars,
            terms: BTreeMap::new(),
        }
    }

    /// The variable X_i (1-based), as a polynomial.
    pub fn var(i: usize, nvars: usize) -> Self {
        assert!(i >= 1 && i <= nvars, "variable index out of range");
        let mut exps = vec![0u32; nvars];
        exps[i - 1] = 1;
        let mut terms = BTreeMap::new();
        terms.insert(exps, rat(1, 1));
        MultiPoly { nvars, terms }
    }

    fn insert(&mut self, exps: Vec<u32>, coeff: Rational) {
        use num::Zero;
        use std::collections::btree_map::Entry;
        if Zero::is_zero(&coeff) {
            return;
        }
        match self.terms.entry(exps) {
            Entry::Occupied(mut o) => {
                let sum = o.get() + &coeff;
                if Zero::is_zero(&sum) {
                    o.remove();
                } else {
                    *o.get_mut() = sum;
                }
            }
            Entry::Vacant(v) => {
                v.insert(coeff);
            }
        }
    }

    pub fn add(&self, rhs: &Self) -> Self {
        assert_eq!(self.nvars, rhs.nvars);
        let mut out = self.clone();
        for (e, c) in &rhs.terms {
            out.insert(e.clone(), c.clone());
        }
        out
    }

    pub fn mul(&self, rhs: &Self) -> Self {
        assert_eq!(self.nvars, rhs.nvars);
        let mut out = MultiPoly::zero(self.nvars);
        for (ea, ca) in &self.terms {
            for (eb, cb) in &rhs.terms {
                let exps: Vec<u32> = ea.iter().zip(eb).map(|(x, y)| x + y).collect();
                out.insert(exps, ca * cb);
            }
        }
        out
    }

    pub fn scale(&self, s: &Rational) -> Self {
        use num::Zero;
        if Zero::is_zero(s) {
            return MultiPoly::zero(self.nvars);
        }
        MultiPoly {
            nvars: self.nvars,
            terms: self
                .terms
                .iter()
                .map(|(e, c)| (e.clone(), c * s))
                .collect(),
        }
    }

    /// Coefficient of the monomial with the given exponents (zero when
    /// absent).
    pub fn coeff(&self, exps: &[u32]) -> Rational {
        self.terms.get(exps).cloned().unwrap_or_else(|| rat_int(0))
    }

    /// Evaluates at the point args (args[i] substituted for X_{i+1}).
    pub fn eval<C: Coefficient>(&self, args: &[C]) -> C {
        assert_eq!(args.len(), self.nvars, "wrong number of arguments");
        let mut acc = C::zero();
        for (exps, coeff) in &self.terms {
            let mut term = C::from_rational(coeff);
            for (arg, &e) in args.iter().zip(exps) {
                for _ in 0..e {
                    term = term * arg.clone();
                }
            }
            acc = acc + term;
        }
        acc
    }

    /// Largest exponent of X_i over all monomials.
    pub fn degree_in(&self, i: usize) -> u32 {
        self.terms.keys().map(|e| e[i - 1]).max().unwrap_or(0)
    }
}

/// The obstruction polynomial P_n in the variables X_1..X_{n+1}, where X_k
/// stands for the Schwarzian coefficient alpha_{k-2}. Normalized so the
/// coefficient of X_{n+1} is 1.
#[derive(Debug, Clone, PartialEq)]
pub struct ObstructionPoly {
    pub(crate) n: usize,
    pub(crate) poly: MultiPoly,
}

impl ObstructionPoly {
    pub fn n(&self) -> usize {
        self.n
    }

    /// Number of formal variables (n + 1).
    pub fn nvars(&self) -> usize {
        self.poly.nvars
    }

    /// Monomials as (exponents, coefficient) in lexicographic order.
    pub fn monomials(&self) -> impl Iterator<Item = (&[u32], &Rational)> {
        self.poly.terms.iter().map(|(e, c)| (e.as_slice(), c))
    }

    /// Coefficient of a single monomial.
    pub fn coeff(&self, exps: &[u32]) -> Rational {
        self.poly.coeff(exps)
    }

    /// Largest exponent of X_i over all monomials (i is 1-based).
    pub fn degree_in(&self, i: usize) -> u32 {
        self.poly.degree_in(i)
    }

    /// Evaluates P_n at (alpha_{-1}, ..., alpha_{n-1}).
    pub fn eval<C: Coefficient>(&self, alphas: &[C]) -> C {
        self.poly.eval(alphas)
    }
}

impl fmt::Display for ObstructionPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        use num::One;
        if self.poly.terms.is_empty() {
            return write!(f, "0");
        }
        let mut first = true;
        for (exps, coeff) in &self.poly.terms {
            if !first {
                write!(f, " + ")?;
            }
            first = false;
            let is_constant = exps.iter().all(|&e| e == 0);
            if !One::is_one(coeff) || is_constant {
                write!(f, "{}", format_rational(coeff))?;
                if !is_constant {
                    write!(f, "*")?;
                }
            }
            let mut first_var = true;
            for (i, &e) in exps.iter().enumerate() {
                if e == 0 {
                    continue;
                }
                if !first_var {
                    write!(f, "*")?;
                }
                first_var = false;
                write!(f, "X{}", i + 1)?;
                if e > 1 {
                    write!(f, "^{}", e)?;
                }
            }
        }
        Ok(())
    }
}

impl Serialize for ObstructionPoly {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        #[derive(Serialize)]
        struct Monomial<'a> {
            exps: &'a [u32],
            coeff: String,
        }
        let monomials: Vec<Monomial<'_>> = self
            .monomials()
            .map(|(exps, coeff)| Monomial {
                exps,
                coeff: format_rational(coeff),
            })
            .collect();
        let mut st = serializer.serialize_struct("ObstructionPoly", 2)?;
        st.serialize_field("n", &self.n)?;
        st.serialize_field("monomials", &monomials)?;
        st.end()
    }
}
