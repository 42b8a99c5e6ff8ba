//! Truncated multivariate power series over the integers, used to
//! expand a factored generating function up to a total-degree bound and
//! compare it with brute-force coefficient counts.

use std::collections::BTreeMap;

use num::{BigInt, One, Zero};

use crate::bitset::ElemSet;
use crate::error::{Error, Result};
use crate::genfun::FactoredGF;

/// Polynomial in x1..xn truncated to total degree <= bound; only
/// nonzero coefficients are stored.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Series {
    n: u32,
    bound: u32,
    coeffs: BTreeMap<Vec<u16>, BigInt>,
}

impl Series {
    pub fn zero(n: u32, bound: u32) -> Series {
        Series {
            n,
            bound,
            coeffs: BTreeMap::new(),
        }
    }

    pub fn constant(n: u32, bound: u32, value: BigInt) -> Series {
        let mut s = Series::zero(n, bound);
        if !value.is_zero() {
            s.coeffs.insert(vec![0; n as usize], value);
        }
        s
    }

    pub fn n(&self) -> u32 {
        self.n
    }

    pub fn bound(&self) -> u32 {
        self.bound
    }

    pub fn coefficient(&self, expo: &[u16]) -> BigInt {
        self.coeffs.get(expo).cloned().unwrap_or_else(BigInt::zero)
    }

    pub fn terms(&self) -> impl Iterator<Item = (&[u16], &BigInt)> {
        self.coeffs.iter().map(|(e, c)| (e.as_slice(), c))
    }

    pub fn term_count(&self) -> usize {
        self.coeffs.len()
    }

    fn total_degree(expo: &[u16]) -> u32 {
        expo.iter().map(|&e| e as u32).sum()
    }

    /// Adds `delta` to the coefficient at `expo`, dropping the entry if
    /// it cancels to zero. Exponents past the degree bound are ignored.
    pub fn insert_add(&mut self, expo: Vec<u16>, delta: BigInt) {
        assert_eq!(expo.len(), self.n as usize);
        if delta.is_zero() || Series::total_degree(&expo) > self.bound {
            return;
        }
        match self.coeffs.entry(expo) {
            std::collections::btree_map::Entry::Vacant(v) => {
                v.insert(delta);
            }
            std::collections::btree_map::Entry::Occupied(mut o) => {
                *o.get_mut() += delta;
                if o.get().is_zero() {
                    o.remove();
                }
            }
        }
    }

    pub fn add_assign(&mut self, other: &Series) {
        assert_eq!(self.n, other.n);
        assert_eq!(self.bound, other.bound);
        for (e, c) in &other.coeffs {
            self.insert_add(e.clone(), c.clone());
        }
    }

    pub fn mul(&self, other: &Series, cap: usize) -> Result<Series> {
        assert_eq!(self.n, other.n);
        assert_eq!(self.bound, other.bound);
        let mut out = Series::zero(self.n, self.bound);
        for (ea, ca) in &self.coeffs {
            let da = Series::total_degree(ea);
            for (eb, cb) in &other.coeffs {
                if da + Series::total_degree(eb) > self.bound {
                    continue;
                }
                let expo: Vec<u16> = ea.iter().zip(eb.iter()).map(|(a, b)| a + b).collect();
                out.insert_add(expo, ca * cb);
                if out.coeffs.len() > cap {
                    return Err(Error::CapExceeded {
                        stage: "series expansion",
                        limit: cap as u64,
                        reached: out.coeffs.len() as u64,
                    });
                }
            }
        }
        Ok(out)
    }

    /// Multiplies by the geometric series of the monomial x^J, i.e. by
    /// 1/(1 - x^J), truncated at the degree bound.
    fn mul_geometric(&self, ideal: &ElemSet, cap: usize) -> Result<Series> {
        let step: Vec<u16> = (1..=self.n)
            .map(|i| u16::from(ideal.contains(i)))
            .collect();
        let step_deg = Series::total_degree(&step);
        assert!(step_deg > 0, "geometric factor needs a nonempty ideal");
        let mut out = Series::zero(self.n, self.bound);
        for (e, c) in &self.coeffs {
            let mut expo = e.clone();
            while Series::total_degree(&expo) <= self.bound {
                out.insert_add(expo.clone(), c.clone());
                if out.coeffs.len() > cap {
                    return Err(Error::CapExceeded {
                        stage: "series expansion",
                        limit: cap as u64,
                        reached: out.coeffs.len() as u64,
                    });
                }
                for (x, s) in expo.iter_mut().zip(step.iter()) {
                    *x += s;
                }
            }
        }
        Ok(out)
    }

    fn monomial_of(n: u32, bound: u32, ideals: &[ElemSet], coefficient: i64) -> Series {
        let mut expo = vec![0u16; n as usize];
        for j in ideals {
            for e in j.elems() {
                expo[(e - 1) as usize] += 1;
            }
        }
        let mut s = Series::zero(n, bound);
        s.insert_add(expo, BigInt::from(coefficient));
        s
    }
}

/// Expands a factored generating function into a series truncated at
/// total degree `bound`. `cap` bounds the number of stored monomials at
/// every intermediate step.
pub fn expand_factored(gf: &FactoredGF, bound: u32, cap: usize) -> Result<Series> {
    let mut acc = Series::constant(gf.n, bound, BigInt::one());
    for factor in &gf.factors {
        let mut sum = Series::zero(gf.n, bound);
        for term in &factor.terms {
            let mut t = Series::monomial_of(gf.n, bound, &term.numerator_ideals, term.coefficient);
            for j in &term.denominator_ideals {
                t = t.mul_geometric(j, cap)?;
            }
            sum.add_assign(&t);
        }
        acc = acc.mul(&sum, cap)?;
    }
    Ok(acc)
}
