//! Exact sweeps of the numerical claims about isocanted f-vectors over a
//! range of dimensions. Each check reports per-dimension evidence and, on
//! failure, a counterexample.

use std::collections::BTreeMap;
use std::fmt;
use std::str::FromStr;

use num_bigint::{BigInt, BigUint};
use num_traits::{One, Signed, Zero};
use rayon::prelude::*;
use serde::Serialize;

use crate::combinatorics::{count_flags, flag_formula, isocanted_count};
use crate::error::{Error, Result};
use crate::rational::{binomial, factorial, pow2};

/// Largest `d` for which `check_flag` recounts chains on the face lattice.
pub const FLAG_CHAIN_BOUND: usize = 7;

/// Inclusive dimension range.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct DimRange {
    pub min: usize,
    pub max: usize,
}

impl DimRange {
    pub fn new(min: usize, max: usize) -> Result<Self> {
        if min > max {
            return Err(Error::InvalidRange(format!("{min}..{max} is empty")));
        }
        Ok(DimRange { min, max })
    }

    pub fn dims(&self) -> Vec<usize> {
        (self.min..=self.max).collect()
    }

    fn require_min(&self, min: usize, name: &str) -> Result<()> {
        if self.min < min {
            return Err(Error::InvalidRange(format!("{name} needs d >= {min}, got {}", self.min)));
        }
        Ok(())
    }

    fn clamp_min(&self, min: usize) -> Option<DimRange> {
        (self.max >= min).then(|| DimRange { min: self.min.max(min), max: self.max })
    }
}

impl Default for DimRange {
    fn default() -> Self {
        DimRange { min: 2, max: 60 }
    }
}

/// Accepts `a..b`, `a..=b` (both inclusive) or a single `d`.
impl FromStr for DimRange {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let parse = |t: &str| t.trim().parse::<usize>().map_err(|_| Error::Parse(format!("bad dimension {t:?}")));
        match s.split_once("..") {
            Some((lo, hi)) => DimRange::new(parse(lo)?, parse(hi.trim_start_matches('='))?),
            None => {
                let d = parse(s)?;
                DimRange::new(d, d)
            }
        }
    }
}

impl fmt::Display for DimRange {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}..{}", self.min, self.max)
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Status {
    Pass,
    Fail,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Witness {
    pub d: usize,
    pub passed: bool,
    pub evidence: BTreeMap<String, String>,
    pub counterexample: Option<String>,
}

impl Witness {
    fn new(d: usize) -> Self {
        Witness { d, passed: true, evidence: BTreeMap::new(), counterexample: None }
    }

    fn note(&mut self, key: &str, value: impl ToString) {
        self.evidence.insert(key.to_string(), value.to_string());
    }

    /// Records a failed condition; the first one becomes the counterexample.
    fn require(&mut self, ok: bool, what: impl FnOnce() -> String) {
        if !ok {
            self.passed = false;
            if self.counterexample.is_none() {
                self.counterexample = Some(what());
            }
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ConjectureReport {
    pub name: String,
    pub d_min: usize,
    pub d_max: usize,
    pub status: Status,
    pub witnesses: Vec<Witness>,
}

impl ConjectureReport {
    fn assemble(name: &str, range: DimRange, witnesses: Vec<Witness>) -> Self {
        let status = if witnesses.iter().all(|w| w.passed) { Status::Pass } else { Status::Fail };
        ConjectureReport { name: name.to_string(), d_min: range.min, d_max: range.max, status, witnesses }
    }

    pub fn passed(&self) -> bool {
        self.status == Status::Pass
    }

    pub fn failures(&self) -> impl Iterator<Item = &Witness> {
        self.witnesses.iter().filter(|w| !w.passed)
    }
}

fn sweep(name: &str, range: DimRange, check: impl Fn(usize) -> Witness + Sync + Send) -> ConjectureReport {
    let witnesses = range.dims().into_par_iter().map(check).collect();
    ConjectureReport::assemble(name, range, witnesses)
}

/// `I_{d,0..d-1}`.
fn proper_counts(d: usize) -> Vec<BigUint> {
    (0..d as i64).map(|k| isocanted_count(d, k)).collect()
}

fn join(v: &[BigUint]) -> String {
    v.iter().map(ToString::to_string).collect::<Vec<_>>().join(",")
}

/// `(d+1)d/2 <= 2^d - 1`, with equality exactly for `d = 0, 1, 2`.
pub fn check_extremes(range: DimRange) -> Result<ConjectureReport> {
    Ok(sweep("extremes", range, |d| {
        let mut w = Witness::new(d);
        let lhs = BigUint::from(d) * BigUint::from(d + 1) / 2u32;
        let rhs = pow2(d) - 1u32;
        w.note("lhs", &lhs);
        w.note("rhs", &rhs);
        w.note("equality", lhs == rhs);
        w.require(lhs <= rhs, || format!("{lhs} > {rhs}"));
        w.require((lhs == rhs) == (d <= 2), || format!("equality is {} at d={d}", lhs == rhs));
        w
    }))
}

/// Log-concavity of `I_{d,0..d-1}`, with the two ingredients of the usual
/// argument: the identity `(2^{m-1}-1)^2 - (2^m-1)(2^{m-2}-1) = 2^{m-2} > 0`
/// and log-concavity of the Pascal row.
pub fn check_log_concave(range: DimRange) -> Result<ConjectureReport> {
    range.require_min(2, "log_concave")?;
    Ok(sweep("log_concave", range, |d| {
        let mut w = Witness::new(d);
        let seq = proper_counts(d);
        let mut min_margin: Option<BigInt> = None;
        for k in 0..d.saturating_sub(2) {
            let lhs = BigInt::from(&seq[k + 1] * &seq[k + 1]);
            let rhs = BigInt::from(&seq[k] * &seq[k + 2]);
            let margin = &lhs - &rhs;
            w.require(!margin.is_negative(), || format!("k={k}: I^2={lhs} < {rhs}"));
            if min_margin.as_ref().is_none_or(|m| margin < *m) {
                min_margin = Some(margin);
            }
        }
        w.note("pairs_checked", d.saturating_sub(2));
        if let Some(m) = min_margin {
            w.note("min_margin", m);
        }
        for m in 3..=d {
            let t = |e: usize| BigInt::from(pow2(e)) - BigInt::one();
            let identity = t(m - 1) * t(m - 1) - t(m) * t(m - 2);
            let expected = BigInt::from(pow2(m - 2));
            w.require(identity == expected && identity.is_positive(), || {
                format!("m={m}: decomposition gives {identity}, expected {expected}")
            });
        }
        for k in 1..d {
            let c = |i| binomial(d + 1, i);
            w.require(c(k) * c(k) >= c(k - 1) * c(k + 1), || format!("Pascal row {} fails at k={k}", d + 1));
        }
        w
    }))
}

/// Non-decreasing then non-increasing.
fn peak_shape(seq: &[BigUint]) -> std::result::Result<usize, usize> {
    let mut k = 0;
    while k + 1 < seq.len() && seq[k + 1] >= seq[k] {
        k += 1;
    }
    let peak = k;
    while k + 1 < seq.len() {
        if seq[k + 1] > seq[k] {
            return Err(k + 1);
        }
        k += 1;
    }
    Ok(peak)
}

pub fn check_unimodal(range: DimRange) -> Result<ConjectureReport> {
    range.require_min(2, "unimodal")?;
    Ok(sweep("unimodal", range, |d| {
        let mut w = Witness::new(d);
        let seq = proper_counts(d);
        match peak_shape(&seq) {
            Ok(peak) => w.note("last_rise", peak),
            Err(k) => w.require(false, || format!("rises again at k={k}: {}", join(&seq))),
        }
        w
    }))
}

/// Smallest index of the maximum and whether it is shared with a neighbour.
fn argmax(seq: &[BigUint]) -> (usize, bool) {
    let max = seq.iter().max().expect("non-empty");
    let k = seq.iter().position(|v| v == max).expect("max is present");
    (k, seq.get(k + 1) == Some(max))
}

/// The claim that `I_{d,k}` peaks at `k = floor(d/3)`: `I_{d,floor(d/3)}` must
/// be a maximum, the peak must lie in `Z ∩ [(d-2)/3, d/3]`, and for every
/// step `I_{d,k+1} >= I_{d,k} <=> L >= R` with `L = 2^{d-k-1}(d-3k-1)`,
/// `R = d - 2k`.
pub fn check_argmax(range: DimRange) -> Result<ConjectureReport> {
    range.require_min(2, "argmax")?;
    Ok(sweep("argmax", range, |d| {
        let mut w = Witness::new(d);
        let seq = proper_counts(d);
        let claimed = d / 3;
        let (actual, tie) = argmax(&seq);
        w.note("claimed", claimed);
        w.note("argmax", actual);
        w.note("tie", tie);
        w.note("max", &seq[actual]);
        w.require(seq[claimed] == seq[actual], || {
            format!("I[{claimed}]={} < I[{actual}]={}", seq[claimed], seq[actual])
        });

        let in_interval = 3 * actual + 2 >= d && 3 * actual <= d;
        w.note("peak_in_bracket", in_interval);
        w.require(in_interval, || format!("peak {actual} outside [({d}-2)/3, {d}/3]"));

        let mut equivalence = true;
        for k in 0..d - 1 {
            let l = BigInt::from(pow2(d - k - 1)) * (d as i64 - 3 * k as i64 - 1);
            let r = BigInt::from(d as i64 - 2 * k as i64);
            let rising = seq[k + 1] >= seq[k];
            if rising != (l >= r) {
                equivalence = false;
                w.require(false, || format!("k={k}: rising={rising} but L={l}, R={r}"));
            }
        }
        w.note("lr_equivalence", equivalence);
        w
    }))
}

/// `I_{d,k} >= min(I_{d,0}, I_{d,d-1}) = I_{d,d-1} = (d+1)d`.
pub fn check_barany(range: DimRange) -> Result<ConjectureReport> {
    range.require_min(2, "barany")?;
    Ok(sweep("barany", range, |d| {
        let mut w = Witness::new(d);
        let seq = proper_counts(d);
        let bound = BigUint::from((d + 1) * d);
        let min = seq.iter().min().expect("non-empty");
        w.note("min", min);
        w.note("bound", &bound);
        w.require(*min >= bound, || format!("min entry {min} < {bound}"));
        w.require(seq[d - 1] == bound && seq[d - 1] <= seq[0], || {
            format!("I[d-1]={} I[0]={} bound={bound}", seq[d - 1], seq[0])
        });
        w
    }))
}

/// Stirling numbers of the second kind `S(n, k)` by the usual recurrence.
pub fn stirling2(n: usize, k: usize) -> BigUint {
    let mut row = vec![BigUint::zero(); k + 1];
    row[0] = BigUint::one();
    for m in 1..=n {
        for j in (1..=k.min(m)).rev() {
            row[j] = &row[j] * BigUint::from(j) + &row[j - 1];
        }
        row[0] = BigUint::zero();
    }
    row[k].clone()
}

/// `Σ_{k=0}^{d} I_{d,k} = 3^{d+1} - 2^{d+2} + 2 = 2S(d+2,3) + 1 > 3^d`.
pub fn check_3d(range: DimRange) -> Result<ConjectureReport> {
    range.require_min(2, "3d")?;
    Ok(sweep("3d", range, |d| {
        let mut w = Witness::new(d);
        let sum: BigUint = (0..=d as i64).map(|k| isocanted_count(d, k)).sum();
        let closed = BigUint::from(3u32).pow(d as u32 + 1) + 2u32 - pow2(d + 2);
        let stirling = stirling2(d + 2, 3) * 2u32 + 1u32;
        let three_d = BigUint::from(3u32).pow(d as u32);
        w.note("sum", &sum);
        w.note("stirling_form", &stirling);
        w.require(sum == closed, || format!("sum {sum} != {closed}"));
        w.require(closed == stirling, || format!("{closed} != 2S(d+2,3)+1 = {stirling}"));
        w.require(sum > three_d, || format!("sum {sum} <= 3^d = {three_d}"));
        w
    }))
}

/// The flag formula exceeds `2^d d!`, and for `d <= 7` equals the number of
/// maximal chains in the face lattice.
pub fn check_flag(range: DimRange) -> Result<ConjectureReport> {
    range.require_min(2, "flag")?;
    let mut report = sweep("flag", range, |d| {
        let mut w = Witness::new(d);
        let formula = flag_formula(d).expect("d >= 2");
        let lower = pow2(d) * factorial(d);
        w.note("formula", &formula);
        w.note("lower", &lower);
        w.require(formula > lower, || format!("formula {formula} <= 2^d d! = {lower}"));
        let lhs = (pow2(d - 1) - 1u32) * BigUint::from(d + 1);
        let rhs = if d >= 2 { pow2(d - 2) * BigUint::from(d) } else { BigUint::zero() };
        w.require(lhs > rhs, || format!("(2^(d-1)-1)(d+1) = {lhs} <= 2^(d-2) d = {rhs}"));
        w
    });
    // chain counts are heavier; done after the cheap sweep, in order
    for w in report.witnesses.iter_mut().filter(|w| w.d <= FLAG_CHAIN_BOUND) {
        let count = count_flags(w.d).expect("d within lattice bound");
        let chains = count.chains.expect("d within lattice bound");
        w.note("chains", &chains);
        w.note("chains_exceed_lower", chains > pow2(w.d) * factorial(w.d));
        let formula = count.formula;
        w.require(chains == formula, || format!("formula {formula} != chain count {chains}"));
    }
    report.status = if report.witnesses.iter().all(|w| w.passed) { Status::Pass } else { Status::Fail };
    Ok(report)
}

/// Integer polynomial, coefficients in increasing degree.
fn poly_mul(a: &[BigInt], b: &[BigInt]) -> Vec<BigInt> {
    let mut out = vec![BigInt::zero(); a.len() + b.len() - 1];
    for (i, x) in a.iter().enumerate() {
        for (j, y) in b.iter().enumerate() {
            out[i + j] += x * y;
        }
    }
    out
}

fn poly_add(a: &mut Vec<BigInt>, b: &[BigInt]) {
    if a.len() < b.len() {
        a.resize(b.len(), BigInt::zero());
    }
    for (x, y) in a.iter_mut().zip(b) {
        *x += y;
    }
}

/// Exact division by `1 + t`; `None` when there is a remainder.
fn div_one_plus_t(p: &[BigInt]) -> Option<Vec<BigInt>> {
    let n = p.len();
    if n < 2 {
        return p.iter().all(Zero::is_zero).then(Vec::new);
    }
    let mut q = vec![BigInt::zero(); n - 1];
    let mut carry = BigInt::zero();
    for i in 0..n - 1 {
        q[i] = &p[i] - &carry;
        carry = q[i].clone();
    }
    (p[n - 1] == carry).then_some(q)
}

/// Short cubical h-polynomial `Σ_j 2^j f_j t^j (1-t)^{d-1-j}` of the boundary.
pub fn short_cubical_h(d: usize, f: &[BigUint]) -> Vec<BigInt> {
    let mut h = vec![BigInt::zero(); d];
    let one_minus_t = [BigInt::one(), -BigInt::one()];
    for (j, fj) in f.iter().enumerate().take(d) {
        let mut term = vec![BigInt::zero(); j + 1];
        term[j] = BigInt::from(pow2(j) * fj);
        for _ in 0..d - 1 - j {
            term = poly_mul(&term, &one_minus_t);
        }
        poly_add(&mut h, &term);
    }
    h
}

/// Cubical h-vector `h^c_0..h^c_d` from
/// `(1+t) h^c(t) = 2^{d-1}(1 + t^{d+1}) + t h^{sc}(t)`.
pub fn cubical_h(d: usize, f: &[BigUint]) -> Result<Vec<BigInt>> {
    let mut num = vec![BigInt::zero(); d + 2];
    let c = BigInt::from(pow2(d - 1));
    num[0] += &c;
    num[d + 1] += &c;
    for (i, x) in short_cubical_h(d, f).into_iter().enumerate() {
        num[i + 1] += x;
    }
    div_one_plus_t(&num).ok_or_else(|| Error::InvalidRange(format!("cubical h-polynomial not divisible at d={d}")))
}

/// `g^c_i = h^c_i - h^c_{i-1}`.
pub fn cubical_g(d: usize, f: &[BigUint]) -> Result<Vec<BigInt>> {
    let h = cubical_h(d, f)?;
    Ok((0..h.len()).map(|i| if i == 0 { h[0].clone() } else { &h[i] - &h[i - 1] }).collect())
}

/// `g^c_{d,2} >= 0` for the isocanted polytope, with the values matched
/// against `2^d - 2d - 2`. Defined for `d >= 4`.
pub fn cubical_g2(range: DimRange) -> Result<ConjectureReport> {
    range.require_min(4, "cubical_g2")?;
    Ok(sweep("cubical_g2", range, |d| {
        let mut w = Witness::new(d);
        let f = proper_counts(d);
        match cubical_g(d, &f) {
            Ok(g) => {
                let g2 = g[2].clone();
                let reference = BigInt::from(pow2(d)) - 2 * d as i64 - 2;
                w.note("g2", &g2);
                w.note("reference", &reference);
                w.require(!g2.is_negative(), || format!("g2 = {g2} < 0"));
                w.require(g2 == reference, || format!("g2 = {g2} != 2^d-2d-2 = {reference}"));
                let h = cubical_h(d, &f).expect("just computed");
                let symmetric = (0..=d).all(|i| h[i] == h[d - i]);
                w.note("h_symmetric", symmetric);
                w.require(symmetric, || "cubical h-vector is not palindromic".into());
            }
            Err(e) => w.require(false, || e.to_string()),
        }
        w
    }))
}

pub const CHECK_NAMES: [&str; 8] =
    ["extremes", "log_concave", "unimodal", "argmax", "barany", "3d", "flag", "cubical_g2"];

/// Runs a check by name, clamping the range to the check's domain. `None`
/// when the clamped range is empty.
pub fn run_check(name: &str, range: DimRange) -> Result<Option<ConjectureReport>> {
    let min = match name {
        "extremes" => 0,
        "cubical_g2" => 4,
        n if CHECK_NAMES.contains(&n) => 2,
        other => return Err(Error::Parse(format!("unknown check {other:?}"))),
    };
    let Some(r) = range.clamp_min(min) else {
        return Ok(None);
    };
    let report = match name {
        "extremes" => check_extremes(r),
        "log_concave" => check_log_concave(r),
        "unimodal" => check_unimodal(r),
        "argmax" => check_argmax(r),
        "barany" => check_barany(r),
        "3d" => check_3d(r),
        "flag" => check_flag(r),
        _ => cubical_g2(r),
    }?;
    Ok(Some(report))
}

pub fn run_all(range: DimRange) -> Result<Vec<ConjectureReport>> {
    let mut out = Vec::new();
    for name in CHECK_NAMES {
        if let Some(r) = run_check(name, range)? {
            out.push(r);
        }
    }
    Ok(out)
}
