//! Exact generating functions: integer polynomials in q, the factored
//! multivariate form of the P-partition generating function, its
//! one-variable specialization, and the product formula for the number
//! of linear extensions.
//!
//! The q-polynomial machinery uses the convention that the bracket of i
//! is 1 - q^i and the bracket factorial of m is the product of those for
//! i = 1..m. Specializing every x to q turns a denominator ideal J into
//! the bracket of |J| and a numerator ideal into q^|J|.

use num::bigint::Sign;
use num::{BigInt, BigRational, One, Signed, Zero};

use crate::bitset::ElemSet;
use crate::error::{Error, Result};
use crate::forest::{DescentData, PForest};
use crate::ideal_graph::IdealGraph;
use crate::mis::MaxIndSet;
use crate::poset::Poset;

/// Dense integer polynomial in q, lowest degree first, no trailing zeros.
#[derive(Clone, PartialEq, Eq)]
pub struct QPoly {
    coeffs: Vec<BigInt>,
}

impl QPoly {
    pub fn zero() -> QPoly {
        QPoly { coeffs: Vec::new() }
    }

    pub fn one() -> QPoly {
        QPoly::monomial(BigInt::one(), 0)
    }

    pub fn monomial(coeff: BigInt, degree: usize) -> QPoly {
        if coeff.is_zero() {
            return QPoly::zero();
        }
        let mut coeffs = vec![BigInt::zero(); degree + 1];
        coeffs[degree] = coeff;
        QPoly { coeffs }
    }

    pub fn from_coeffs(mut coeffs: Vec<BigInt>) -> QPoly {
        while coeffs.last().is_some_and(|c| c.is_zero()) {
            coeffs.pop();
        }
        QPoly { coeffs }
    }

    /// Coefficients lowest degree first; empty for the zero polynomial.
    pub fn coeffs(&self) -> &[BigInt] {
        &self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn add(&self, other: &QPoly) -> QPoly {
        let mut coeffs = vec![BigInt::zero(); self.coeffs.len().max(other.coeffs.len())];
        for (i, c) in self.coeffs.iter().enumerate() {
            coeffs[i] += c;
        }
        for (i, c) in other.coeffs.iter().enumerate() {
            coeffs[i] += c;
        }
        QPoly::from_coeffs(coeffs)
    }

    pub fn sub(&self, other: &QPoly) -> QPoly {
        let mut coeffs = vec![BigInt::zero(); self.coeffs.len().max(other.coeffs.len())];
        for (i, c) in self.coeffs.iter().enumerate() {
            coeffs[i] += c;
        }
        for (i, c) in other.coeffs.iter().enumerate() {
            coeffs[i] -= c;
        }
        QPoly::from_coeffs(coeffs)
    }

    pub fn mul(&self, other: &QPoly) -> QPoly {
        if self.is_zero() || other.is_zero() {
            return QPoly::zero();
        }
        let mut coeffs = vec![BigInt::zero(); self.coeffs.len() + other.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in other.coeffs.iter().enumerate() {
                coeffs[i + j] += a * b;
            }
        }
        QPoly::from_coeffs(coeffs)
    }

    /// Exact division; any nonzero remainder (including at an
    /// intermediate step) is a violated integrality guarantee.
    pub fn div_exact(&self, den: &QPoly) -> Result<QPoly> {
        if den.is_zero() {
            return Err(Error::TheoremViolation {
                check: "exact polynomial division",
                details: "division by the zero polynomial".to_string(),
            });
        }
        if self.is_zero() {
            return Ok(QPoly::zero());
        }
        let dd = den.coeffs.len() - 1;
        if self.coeffs.len() - 1 < dd {
            return Err(Error::TheoremViolation {
                check: "exact polynomial division",
                details: "numerator degree below denominator degree".to_string(),
            });
        }
        let lead = den.coeffs.last().unwrap();
        let mut rem = self.coeffs.clone();
        let mut quot = vec![BigInt::zero(); rem.len() - dd];
        for k in (0..quot.len()).rev() {
            let top = rem[k + dd].clone();
            if top.is_zero() {
                continue;
            }
            let (q, r) = num::Integer::div_rem(&top, lead);
            if !r.is_zero() {
                return Err(Error::TheoremViolation {
                    check: "exact polynomial division",
                    details: format!("leading coefficient {lead} does not divide {top}"),
                });
            }
            quot[k] = q.clone();
            for (j, c) in den.coeffs.iter().enumerate() {
                rem[k + j] -= &q * c;
            }
        }
        if rem.iter().any(|c| !c.is_zero()) {
            return Err(Error::TheoremViolation {
                check: "exact polynomial division",
                details: "nonzero remainder".to_string(),
            });
        }
        Ok(QPoly::from_coeffs(quot))
    }

    /// Value at q = 1, the coefficient sum.
    pub fn eval_one(&self) -> BigInt {
        self.coeffs.iter().sum()
    }
}

impl std::fmt::Display for QPoly {
    /// Lowest degree first: "1 + 2*q + 5*q^2". Zero terms are skipped;
    /// the zero polynomial prints as "0".
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for (i, c) in self.coeffs.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            if !first {
                write!(f, " {} ", if c.sign() == Sign::Minus { "-" } else { "+" })?;
            } else {
                if c.sign() == Sign::Minus {
                    write!(f, "-")?;
                }
                first = false;
            }
            let mag = c.abs();
            match (i, mag.is_one()) {
                (0, _) => write!(f, "{mag}")?,
                (1, true) => write!(f, "q")?,
                (1, false) => write!(f, "{mag}*q")?,
                (_, true) => write!(f, "q^{i}")?,
                (_, false) => write!(f, "{mag}*q^{i}")?,
            }
        }
        Ok(())
    }
}

impl std::fmt::Debug for QPoly {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        std::fmt::Display::fmt(self, f)
    }
}

/// 1 - q^i.
pub fn q_term(i: u32) -> QPoly {
    QPoly::one().sub(&QPoly::monomial(BigInt::one(), i as usize))
}

/// Product of 1 - q^i for i = 1..m.
pub fn q_term_factorial(m: u32) -> QPoly {
    let mut acc = QPoly::one();
    for i in 1..=m {
        acc = acc.mul(&q_term(i));
    }
    acc
}

pub fn factorial(n: u32) -> BigInt {
    let mut acc = BigInt::one();
    for i in 2..=n {
        acc *= BigInt::from(i);
    }
    acc
}

/// One summand of a component factor:
/// coefficient * prod of x^J over the numerator ideals,
/// divided by prod of (1 - x^J) over the denominator ideals.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GfTerm {
    pub coefficient: i64,
    pub numerator_ideals: Vec<ElemSet>,
    pub denominator_ideals: Vec<ElemSet>,
}

/// One component's factor: a sum of terms.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GfFactor {
    pub component: u32,
    pub terms: Vec<GfTerm>,
}

/// Product over components of term sums; the factored form of the
/// P-partition generating function.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FactoredGF {
    pub n: u32,
    pub factors: Vec<GfFactor>,
}

/// Builds the factored generating function from per-component maximum
/// independent sets and their descent data: each set contributes the
/// monomial of its descent-labeled members over its member brackets.
/// Requires natural labeling.
pub fn factored_fpx(
    p: &Poset,
    g: &IdealGraph,
    lists: &[Vec<MaxIndSet>],
    descents: &[Vec<DescentData>],
) -> Result<FactoredGF> {
    if !p.is_naturally_labeled() {
        return Err(Error::NotNaturallyLabeled);
    }
    assert_eq!(lists.len(), g.components().len());
    assert_eq!(descents.len(), lists.len());
    let mut factors = Vec::with_capacity(lists.len());
    for (r, (list, dds)) in lists.iter().zip(descents.iter()).enumerate() {
        assert_eq!(list.len(), dds.len(), "one descent table per maximum set");
        let terms: Vec<GfTerm> = list
            .iter()
            .zip(dds.iter())
            .map(|(mr, dd)| GfTerm {
                coefficient: 1,
                numerator_ideals: dd.ideals.iter().map(|j| j.members().clone()).collect(),
                denominator_ideals: mr
                    .members()
                    .iter()
                    .map(|&v| g.ideal(v).members().clone())
                    .collect(),
            })
            .collect();
        factors.push(GfFactor {
            component: r as u32,
            terms,
        });
    }
    Ok(FactoredGF { n: g.n(), factors })
}

/// Alternative factored form available when every vertex of the graph
/// has degree at most one: an isolated ideal J contributes 1/(1 - x^J),
/// an adjacent pair {Ja, Jb} contributes
/// (1 - x^Ja x^Jb) / ((1 - x^Ja)(1 - x^Jb)),
/// here encoded as two terms with coefficients 1 and -1.
pub fn fpx_duplication_path(p: &Poset, g: &IdealGraph) -> Result<FactoredGF> {
    if !p.is_naturally_labeled() {
        return Err(Error::NotNaturallyLabeled);
    }
    if !g.is_forest_with_duplications() {
        return Err(Error::NotForestWithDuplications);
    }
    let mut factors = Vec::new();
    for (r, comp) in g.components().iter().enumerate() {
        let terms = match comp.as_slice() {
            [v] => vec![GfTerm {
                coefficient: 1,
                numerator_ideals: vec![],
                denominator_ideals: vec![g.ideal(*v).members().clone()],
            }],
            [a, b] => {
                let pair = vec![g.ideal(*a).members().clone(), g.ideal(*b).members().clone()];
                vec![
                    GfTerm {
                        coefficient: 1,
                        numerator_ideals: vec![],
                        denominator_ideals: pair.clone(),
                    },
                    GfTerm {
                        coefficient: -1,
                        numerator_ideals: pair.clone(),
                        denominator_ideals: pair,
                    },
                ]
            }
            _ => unreachable!("degree <= 1 components have at most two vertices"),
        };
        factors.push(GfFactor {
            component: r as u32,
            terms,
        });
    }
    Ok(FactoredGF { n: g.n(), factors })
}

/// The generating-function term a single forest contributes: descents in
/// the numerator, all subtrees in the denominator.
pub fn forest_term(f: &PForest) -> GfTerm {
    GfTerm {
        coefficient: 1,
        numerator_ideals: f.descents().iter().map(|&i| f.subtree(i).clone()).collect(),
        denominator_ideals: (1..=f.n()).map(|i| f.subtree(i).clone()).collect(),
    }
}

/// Specializes every variable to q: the major-index generating function
/// over linear extensions. Each component factor is combined over the
/// product of its term denominators; the single final division by the
/// combined denominator must be exact.
pub fn fpq(gf: &FactoredGF) -> Result<QPoly> {
    let mut num_total = q_term_factorial(gf.n);
    let mut den_total = QPoly::one();
    for factor in &gf.factors {
        let mut num_r = QPoly::zero();
        let mut den_r = QPoly::one();
        for term in &factor.terms {
            let shift: usize = term
                .numerator_ideals
                .iter()
                .map(|j| j.len() as usize)
                .sum();
            let mut term_num = QPoly::monomial(BigInt::from(term.coefficient), shift);
            let mut term_den = QPoly::one();
            for j in &term.denominator_ideals {
                term_den = term_den.mul(&q_term(j.len()));
            }
            // num_r/den_r + term_num/term_den over the common denominator.
            term_num = term_num.mul(&den_r);
            num_r = num_r.mul(&term_den).add(&term_num);
            den_r = den_r.mul(&term_den);
        }
        num_total = num_total.mul(&num_r);
        den_total = den_total.mul(&den_r);
    }
    num_total.div_exact(&den_total)
}

/// Number of linear extensions via the product formula: n! times, for
/// each component, the sum over its maximum independent sets of the
/// reciprocal member-size product. The result must be an integer.
pub fn count_linear_extensions(g: &IdealGraph, lists: &[Vec<MaxIndSet>]) -> Result<BigInt> {
    assert_eq!(lists.len(), g.components().len());
    let mut acc = BigRational::from_integer(factorial(g.n()));
    for list in lists {
        let mut sum = BigRational::zero();
        for m in list {
            let mut denom = BigInt::one();
            for &v in m.members() {
                denom *= BigInt::from(g.ideal(v).len());
            }
            sum += BigRational::new(BigInt::one(), denom);
        }
        acc *= sum;
    }
    if !acc.is_integer() {
        return Err(Error::TheoremViolation {
            check: "extension count integrality",
            details: format!("product formula yielded non-integer {acc}"),
        });
    }
    Ok(acc.to_integer())
}

fn monomial_string(ideals: &[ElemSet], n: u32) -> String {
    let mut expo = vec![0u32; n as usize];
    for j in ideals {
        for e in j.elems() {
            expo[(e - 1) as usize] += 1;
        }
    }
    let parts: Vec<String> = expo
        .iter()
        .enumerate()
        .filter(|(_, &k)| k > 0)
        .map(|(i, &k)| {
            if k == 1 {
                format!("x{}", i + 1)
            } else {
                format!("x{}^{}", i + 1, k)
            }
        })
        .collect();
    if parts.is_empty() {
        "1".to_string()
    } else {
        parts.join(" ")
    }
}

fn denominator_string(ideals: &[ElemSet], n: u32) -> String {
    let factors: Vec<String> = ideals
        .iter()
        .map(|j| format!("(1 - {})", monomial_string(std::slice::from_ref(j), n)))
        .collect();
    if factors.len() == 1 {
        factors.into_iter().next().unwrap()
    } else {
        format!("({})", factors.join(""))
    }
}

/// Human-readable rendering of the factored form. A two-term factor of
/// the shape produced by `fpx_duplication_path` prints as
/// (1 - x^Ja x^Jb)/((1 - x^Ja)(1 - x^Jb)).
pub fn render_factored(gf: &FactoredGF) -> String {
    let n = gf.n;
    let mut factors = Vec::new();
    for factor in &gf.factors {
        if let [t1, t2] = factor.terms.as_slice() {
            let pair_form = t1.coefficient == 1
                && t1.numerator_ideals.is_empty()
                && t2.coefficient == -1
                && t2.numerator_ideals == t1.denominator_ideals
                && t2.denominator_ideals == t1.denominator_ideals;
            if pair_form {
                factors.push(format!(
                    "(1 - {})/{}",
                    monomial_string(&t1.denominator_ideals, n),
                    denominator_string(&t1.denominator_ideals, n)
                ));
                continue;
            }
        }
        let terms: Vec<String> = factor
            .terms
            .iter()
            .map(|t| {
                let num = monomial_string(&t.numerator_ideals, n);
                let signed = match t.coefficient {
                    1 => num,
                    -1 => format!("-{num}"),
                    c => format!("{c}*{num}"),
                };
                format!("{signed}/{}", denominator_string(&t.denominator_ideals, n))
            })
            .collect();
        if terms.len() == 1 {
            factors.push(terms.into_iter().next().unwrap());
        } else {
            factors.push(format!("({})", terms.join(" + ")));
        }
    }
    factors.join(" * ")
}
