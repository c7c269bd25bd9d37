//! High-precision checks of the binomial coefficient and binomial tail
//! inequalities.
//!
//! All quantities are evaluated with [`PRECISION_BITS`] bits of mantissa
//! (about 77 significant digits), so the verdicts are not exposed to
//! double-precision rounding near equality.

use std::cell::RefCell;
use std::fmt;

use astro_float::{BigFloat, Consts, RoundingMode};
use rayon::prelude::*;
use serde::Serialize;

use crate::error::{Error, Result};

pub const PRECISION_BITS: usize = 256;
const RM: RoundingMode = RoundingMode::ToEven;

thread_local! {
    static CONSTS: RefCell<Consts> = RefCell::new(Consts::new().expect("constant cache"));
}

fn big(x: u128) -> BigFloat {
    BigFloat::from_u128(x, PRECISION_BITS)
}

/// `p` read from its shortest decimal form, so `0.1` means one tenth
/// rather than the nearest double.
fn probability(p: f64) -> BigFloat {
    CONSTS.with(|cc| BigFloat::parse(&p.to_string(), astro_float::Radix::Dec, PRECISION_BITS, RM, &mut cc.borrow_mut()))
}

fn exp(x: &BigFloat) -> BigFloat {
    CONSTS.with(|cc| x.exp(PRECISION_BITS, RM, &mut cc.borrow_mut()))
}

fn add(a: &BigFloat, b: &BigFloat) -> BigFloat {
    a.add(b, PRECISION_BITS, RM)
}

fn mul(a: &BigFloat, b: &BigFloat) -> BigFloat {
    a.mul(b, PRECISION_BITS, RM)
}

fn div(a: &BigFloat, b: &BigFloat) -> BigFloat {
    a.div(b, PRECISION_BITS, RM)
}

fn pow(a: &BigFloat, k: usize) -> BigFloat {
    a.powi(k, PRECISION_BITS, RM)
}

/// Exact binomial coefficient; zero when `k > n`.
pub fn binomial(n: u64, k: u64) -> u128 {
    if k > n {
        return 0;
    }
    let k = k.min(n - k);
    let mut acc: u128 = 1;
    for i in 0..k {
        acc = acc * (n - i) as u128 / (i + 1) as u128;
    }
    acc
}

/// Largest `n` for which every `C(n, k)` fits in a `u128`.
pub const MAX_N: u64 = 120;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Inequality {
    /// `C(n,k) <= (en/k)^k`
    Coefficient,
    /// `C(n-l,k) / C(n,k) <= exp(-lk/n)`
    CoefficientRatio,
    /// `P(X >= k) <= (enp/k)^k`
    UpperTail,
    /// `P(X = k) <= (enp/(k(1-p)))^k exp(-np)`
    Point,
    /// `P(X <= k) <= (k+1) (enp/(k(1-p)))^k exp(-np)` for `k <= np`
    LowerTail,
}

impl fmt::Display for Inequality {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = match self {
            Inequality::Coefficient => "coefficient",
            Inequality::CoefficientRatio => "coefficient_ratio",
            Inequality::UpperTail => "upper_tail",
            Inequality::Point => "point",
            Inequality::LowerTail => "lower_tail",
        };
        f.write_str(s)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct BoundInputs {
    pub n: u64,
    pub k: u64,
    pub l: Option<u64>,
    pub p: Option<f64>,
}

#[derive(Debug, Clone)]
pub struct BoundCheck {
    pub inequality: Inequality,
    pub inputs: BoundInputs,
    pub lhs: BigFloat,
    pub rhs: BigFloat,
    pub holds: bool,
}

impl BoundCheck {
    fn new(inequality: Inequality, inputs: BoundInputs, lhs: BigFloat, rhs: BigFloat) -> Self {
        let holds = matches!(lhs.cmp(&rhs), Some(c) if c <= 0);
        BoundCheck {
            inequality,
            inputs,
            lhs,
            rhs,
            holds,
        }
    }

    /// Flat record with both sides rendered in decimal.
    pub fn row(&self) -> BoundRow {
        BoundRow {
            inequality: self.inequality.to_string(),
            n: self.inputs.n,
            k: self.inputs.k,
            l: self.inputs.l,
            p: self.inputs.p,
            lhs: render(&self.lhs),
            rhs: render(&self.rhs),
            holds: self.holds,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct BoundRow {
    pub inequality: String,
    pub n: u64,
    pub k: u64,
    pub l: Option<u64>,
    pub p: Option<f64>,
    pub lhs: String,
    pub rhs: String,
    pub holds: bool,
}

/// Decimal rendering at 128 bits (about 38 significant digits).
pub fn render(x: &BigFloat) -> String {
    if x.is_zero() {
        return "0".into();
    }
    let mut s = x.clone();
    s.set_precision(128, RM).expect("valid precision");
    let text = CONSTS.with(|cc| s.format(astro_float::Radix::Dec, RM, &mut cc.borrow_mut()));
    text.unwrap_or_else(|_| s.to_string()).replace(".e", "e")
}

/// Nearest `f64`, for summaries and tests.
pub fn to_f64(x: &BigFloat) -> f64 {
    render(x).parse().unwrap_or(f64::NAN)
}

fn check_n(n: u64) -> Result<()> {
    if n > MAX_N {
        return Err(Error::TooLarge {
            what: "binomial bounds",
            n: n as usize,
            limit: MAX_N as usize,
        });
    }
    Ok(())
}

/// `C(n,k) <= (en/k)^k`, for `1 <= k <= n`.
pub fn coeff_bound(n: u64, k: u64) -> Result<BoundCheck> {
    check_n(n)?;
    if !(1 <= k && k <= n) {
        return Err(Error::InvalidArgument(format!("need 1 <= k <= n, got n={n}, k={k}")));
    }
    let lhs = big(binomial(n, k));
    let base = mul(&exp(&big(1)), &div(&big(n as u128), &big(k as u128)));
    let rhs = pow(&base, k as usize);
    Ok(BoundCheck::new(
        Inequality::Coefficient,
        BoundInputs { n, k, l: None, p: None },
        lhs,
        rhs,
    ))
}

/// `C(n-l,k) / C(n,k) <= exp(-lk/n)`, for `1 <= l <= k <= n`.
pub fn coeff_ratio_bound(n: u64, k: u64, l: u64) -> Result<BoundCheck> {
    check_n(n)?;
    if !(1 <= l && l <= k && k <= n) {
        return Err(Error::InvalidArgument(format!(
            "need 1 <= l <= k <= n, got n={n}, k={k}, l={l}"
        )));
    }
    let lhs = div(&big(binomial(n - l, k)), &big(binomial(n, k)));
    let rhs = exp(&div(&big((l * k) as u128), &big(n as u128)).neg());
    Ok(BoundCheck::new(
        Inequality::CoefficientRatio,
        BoundInputs { n, k, l: Some(l), p: None },
        lhs,
        rhs,
    ))
}

fn check_p(p: f64) -> Result<()> {
    if !(p > 0.0 && p < 1.0) {
        return Err(Error::InvalidArgument(format!("need 0 < p < 1, got {p}")));
    }
    Ok(())
}

/// `P(X = i)` for `X ~ Bin(n, p)`, `i = 0..=n`.
pub fn binomial_pmf(n: u64, p: f64) -> Result<Vec<BigFloat>> {
    check_n(n)?;
    if !(0.0..=1.0).contains(&p) {
        return Err(Error::InvalidArgument(format!("need 0 <= p <= 1, got {p}")));
    }
    let pb = probability(p);
    let qb = big(1).sub(&pb, PRECISION_BITS, RM);
    Ok((0..=n)
        .map(|i| {
            let term = mul(&pow(&pb, i as usize), &pow(&qb, (n - i) as usize));
            mul(&big(binomial(n, i)), &term)
        })
        .collect())
}

fn sum<'a>(terms: impl Iterator<Item = &'a BigFloat>) -> BigFloat {
    terms.fold(big(0), |acc, t| add(&acc, t))
}

/// `(enp/(k(1-p)))^k · exp(-np)`.
fn point_rhs(n: u64, p: &BigFloat, k: u64) -> BigFloat {
    let np = mul(&big(n as u128), p);
    let one_minus = big(1).sub(p, PRECISION_BITS, RM);
    let base = div(
        &mul(&exp(&big(1)), &np),
        &mul(&big(k as u128), &one_minus),
    );
    mul(&pow(&base, k as usize), &exp(&np.neg()))
}

fn tail_checks(n: u64, p: f64, k: u64, pmf: &[BigFloat]) -> (BoundCheck, BoundCheck, Option<BoundCheck>) {
    let inputs = BoundInputs { n, k, l: None, p: Some(p) };
    let pb = probability(p);
    let np = mul(&big(n as u128), &pb);

    let upper = sum(pmf[k as usize..].iter());
    let base = div(&mul(&exp(&big(1)), &np), &big(k as u128));
    let first = BoundCheck::new(Inequality::UpperTail, inputs, upper, pow(&base, k as usize));

    let point = point_rhs(n, &pb, k);
    let second = BoundCheck::new(Inequality::Point, inputs, pmf[k as usize].clone(), point.clone());

    // k <= np, decided exactly on the BigFloat value of np
    let third = matches!(big(k as u128).cmp(&np), Some(c) if c <= 0).then(|| {
        let lower = sum(pmf[..=k as usize].iter());
        BoundCheck::new(Inequality::LowerTail, inputs, lower, mul(&big(k as u128 + 1), &point))
    });
    (first, second, third)
}

/// The three binomial inequalities for `X ~ Bin(n, p)`; the lower-tail
/// check is present iff `k <= np`.
pub fn binom_tail_bounds(n: u64, p: f64, k: u64) -> Result<(BoundCheck, BoundCheck, Option<BoundCheck>)> {
    check_n(n)?;
    check_p(p)?;
    if !(1 <= k && k <= n) {
        return Err(Error::InvalidArgument(format!("need 1 <= k <= n, got n={n}, k={k}")));
    }
    Ok(tail_checks(n, p, k, &binomial_pmf(n, p)?))
}

/// The sweep grid: `n = 1..=n_max`, every valid `k` and `l`, and
/// `p = j/p_denominator` for `j = 1..p_denominator`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct SweepGrid {
    pub n_max: u64,
    pub p_denominator: u64,
}

impl Default for SweepGrid {
    fn default() -> Self {
        SweepGrid {
            n_max: 60,
            p_denominator: 20,
        }
    }
}

impl SweepGrid {
    pub fn validate(&self) -> Result<()> {
        check_n(self.n_max)?;
        if self.n_max == 0 || self.p_denominator < 2 {
            return Err(Error::InvalidArgument(
                "sweep grid needs n_max >= 1 and p_denominator >= 2".into(),
            ));
        }
        Ok(())
    }

    pub fn p_values(&self) -> Vec<f64> {
        (1..self.p_denominator)
            .map(|j| j as f64 / self.p_denominator as f64)
            .collect()
    }
}

fn checks_for_n(n: u64, ps: &[f64]) -> Vec<BoundCheck> {
    let mut out = Vec::new();
    for k in 1..=n {
        out.push(coeff_bound(n, k).expect("valid grid point"));
        for l in 1..=k {
            out.push(coeff_ratio_bound(n, k, l).expect("valid grid point"));
        }
    }
    for &p in ps {
        let pmf = binomial_pmf(n, p).expect("valid grid point");
        for k in 1..=n {
            let (a, b, c) = tail_checks(n, p, k, &pmf);
            out.push(a);
            out.push(b);
            out.extend(c);
        }
    }
    out
}

/// Every check on the grid, ordered by `n`, then coefficient checks by
/// `(k, l)`, then binomial checks by `(p, k)`.
pub fn sweep(grid: &SweepGrid) -> Result<Vec<BoundCheck>> {
    grid.validate()?;
    let ps = grid.p_values();
    let per_n: Vec<Vec<BoundCheck>> = (1..=grid.n_max)
        .into_par_iter()
        .map(|n| checks_for_n(n, &ps))
        .collect();
    Ok(per_n.into_iter().flatten().collect())
}
