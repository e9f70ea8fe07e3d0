//! Sparse multivariate polynomials over exact Gaussian rationals or complex doubles.

use std::cmp::Ordering;
use std::collections::{BTreeMap, HashMap};
use std::fmt;
use std::sync::Arc;

use num_bigint::BigInt;
use num_complex::Complex64;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::{Deserialize, Serialize};
use thiserror::Error;

/// Absolute tolerance for FLOAT comparisons.
pub const FLOAT_TOL: f64 = 1e-9;
const FLOAT_DROP: f64 = 1e-13;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum PolyError {
    #[error("variable tables differ: {0:?} vs {1:?}")]
    TableMismatch(Vec<String>, Vec<String>),
    #[error("ring mismatch")]
    RingMismatch,
    #[error("unknown variable {0:?}")]
    UnknownVariable(String),
    #[error("missing assignment for variable {0:?}")]
    MissingAssignment(String),
    #[error("substitution image for {0:?} is not linear")]
    NotLinear(String),
    #[error("malformed polynomial json: {0}")]
    Json(String),
}

#[derive(Clone, Debug, PartialEq, Eq, Default)]
pub struct VarTable {
    names: Vec<String>,
    index: HashMap<String, usize>,
}

impl VarTable {
    pub fn new<S: AsRef<str>>(names: &[S]) -> Arc<VarTable> {
        let mut t = VarTable::default();
        for n in names {
            t.push(n.as_ref());
        }
        Arc::new(t)
    }

    pub fn empty() -> Arc<VarTable> {
        Arc::new(VarTable::default())
    }

    fn push(&mut self, name: &str) {
        if !self.index.contains_key(name) {
            self.index.insert(name.to_string(), self.names.len());
            self.names.push(name.to_string());
        }
    }

    pub fn len(&self) -> usize {
        self.names.len()
    }

    pub fn is_empty(&self) -> bool {
        self.names.is_empty()
    }

    pub fn names(&self) -> &[String] {
        &self.names
    }

    pub fn index_of(&self, name: &str) -> Option<usize> {
        self.index.get(name).copied()
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Ring {
    Exact,
    Float,
}

/// Exact complex rational.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct GaussRational {
    pub re: BigRational,
    pub im: BigRational,
}

impl GaussRational {
    pub fn zero() -> Self {
        GaussRational {
            re: BigRational::zero(),
            im: BigRational::zero(),
        }
    }

    pub fn is_zero(&self) -> bool {
        self.re.is_zero() && self.im.is_zero()
    }

    pub fn to_complex(&self) -> Complex64 {
        Complex64::new(
            self.re.to_f64().unwrap_or(f64::NAN),
            self.im.to_f64().unwrap_or(f64::NAN),
        )
    }
}

#[derive(Clone, Debug, PartialEq)]
pub enum Coefficient {
    Exact(GaussRational),
    Float(Complex64),
}

fn ratio(n: i64, d: i64) -> BigRational {
    BigRational::new(BigInt::from(n), BigInt::from(d))
}

impl Coefficient {
    pub fn zero(ring: Ring) -> Self {
        match ring {
            Ring::Exact => Coefficient::Exact(GaussRational::zero()),
            Ring::Float => Coefficient::Float(Complex64::new(0.0, 0.0)),
        }
    }

    pub fn one(ring: Ring) -> Self {
        Coefficient::from_int(ring, 1)
    }

    pub fn from_int(ring: Ring, v: i64) -> Self {
        Coefficient::from_ratio(ring, v, 1)
    }

    pub fn from_ratio(ring: Ring, n: i64, d: i64) -> Self {
        match ring {
            Ring::Exact => Coefficient::Exact(GaussRational {
                re: ratio(n, d),
                im: BigRational::zero(),
            }),
            Ring::Float => Coefficient::Float(Complex64::new(n as f64 / d as f64, 0.0)),
        }
    }

    pub fn from_bigint(v: BigInt) -> Self {
        Coefficient::Exact(GaussRational {
            re: BigRational::from_integer(v),
            im: BigRational::zero(),
        })
    }

    pub fn exact(re: BigRational, im: BigRational) -> Self {
        Coefficient::Exact(GaussRational { re, im })
    }

    pub fn gaussian(ring: Ring, re: i64, im: i64) -> Self {
        match ring {
            Ring::Exact => Coefficient::exact(ratio(re, 1), ratio(im, 1)),
            Ring::Float => Coefficient::Float(Complex64::new(re as f64, im as f64)),
        }
    }

    pub fn float(c: Complex64) -> Self {
        Coefficient::Float(c)
    }

    pub fn ring(&self) -> Ring {
        match self {
            Coefficient::Exact(_) => Ring::Exact,
            Coefficient::Float(_) => Ring::Float,
        }
    }

    pub fn is_zero(&self) -> bool {
        match self {
            Coefficient::Exact(g) => g.is_zero(),
            Coefficient::Float(c) => c.norm() <= FLOAT_DROP,
        }
    }

    pub fn is_one(&self) -> bool {
        match self {
            Coefficient::Exact(g) => g.re.is_one() && g.im.is_zero(),
            Coefficient::Float(c) => (c - Complex64::new(1.0, 0.0)).norm() <= FLOAT_TOL,
        }
    }

    pub fn to_complex(&self) -> Complex64 {
        match self {
            Coefficient::Exact(g) => g.to_complex(),
            Coefficient::Float(c) => *c,
        }
    }

    pub fn to_float(&self) -> Coefficient {
        Coefficient::Float(self.to_complex())
    }

    pub fn to_ring(&self, ring: Ring) -> Coefficient {
        match ring {
            Ring::Float => self.to_float(),
            Ring::Exact => self.clone(),
        }
    }

    /// Real integer value, if this is one.
    pub fn as_integer(&self) -> Option<BigInt> {
        match self {
            Coefficient::Exact(g) if g.im.is_zero() && g.re.is_integer() => Some(g.re.to_integer()),
            _ => None,
        }
    }

    pub fn add(&self, o: &Coefficient) -> Coefficient {
        match (self, o) {
            (Coefficient::Exact(a), Coefficient::Exact(b)) => {
                Coefficient::exact(&a.re + &b.re, &a.im + &b.im)
            }
            _ => Coefficient::Float(self.to_complex() + o.to_complex()),
        }
    }

    pub fn sub(&self, o: &Coefficient) -> Coefficient {
        self.add(&o.neg())
    }

    pub fn mul(&self, o: &Coefficient) -> Coefficient {
        match (self, o) {
            (Coefficient::Exact(a), Coefficient::Exact(b)) => {
                if a.im.is_zero() && b.im.is_zero() {
                    return Coefficient::exact(&a.re * &b.re, BigRational::zero());
                }
                Coefficient::exact(&a.re * &b.re - &a.im * &b.im, &a.re * &b.im + &a.im * &b.re)
            }
            _ => Coefficient::Float(self.to_complex() * o.to_complex()),
        }
    }

    pub fn neg(&self) -> Coefficient {
        match self {
            Coefficient::Exact(a) => Coefficient::exact(-a.re.clone(), -a.im.clone()),
            Coefficient::Float(c) => Coefficient::Float(-c),
        }
    }

    pub fn conj(&self) -> Coefficient {
        match self {
            Coefficient::Exact(a) => Coefficient::exact(a.re.clone(), -a.im.clone()),
            Coefficient::Float(c) => Coefficient::Float(c.conj()),
        }
    }

    /// Multiplicative inverse; panics on zero.
    pub fn inv(&self) -> Coefficient {
        match self {
            Coefficient::Exact(a) => {
                let d = &a.re * &a.re + &a.im * &a.im;
                assert!(!d.is_zero(), "inverse of zero");
                Coefficient::exact(&a.re / &d, -(&a.im / &d))
            }
            Coefficient::Float(c) => Coefficient::Float(1.0 / c),
        }
    }

    pub fn approx_eq(&self, o: &Coefficient, tol: f64) -> bool {
        match (self, o) {
            (Coefficient::Exact(a), Coefficient::Exact(b)) => a == b,
            _ => (self.to_complex() - o.to_complex()).norm() <= tol,
        }
    }
}

impl fmt::Display for Coefficient {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Coefficient::Exact(g) if g.im.is_zero() => write!(f, "{}", g.re),
            Coefficient::Exact(g) if g.re.is_zero() => write!(f, "{}i", g.im),
            Coefficient::Exact(g) => {
                let sign = if g.im.is_negative() { "-" } else { "+" };
                write!(f, "({}{}{}i)", g.re, sign, g.im.abs())
            }
            Coefficient::Float(c) if c.im.abs() <= FLOAT_DROP => write!(f, "{}", c.re),
            Coefficient::Float(c) => write!(f, "({}{:+}i)", c.re, c.im),
        }
    }
}

/// Exponent vector ordered by total degree, then lexicographically with higher powers
/// of earlier variables first.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Monomial(pub Vec<u16>);

impl Monomial {
    pub fn one(nvars: usize) -> Self {
        Monomial(vec![0; nvars])
    }

    pub fn degree(&self) -> u32 {
        self.0.iter().map(|&e| e as u32).sum()
    }

    fn mul(&self, o: &Monomial) -> Monomial {
        Monomial(self.0.iter().zip(&o.0).map(|(a, b)| a + b).collect())
    }
}

impl Ord for Monomial {
    fn cmp(&self, o: &Self) -> Ordering {
        self.degree()
            .cmp(&o.degree())
            .then_with(|| o.0.cmp(&self.0))
    }
}

impl PartialOrd for Monomial {
    fn partial_cmp(&self, o: &Self) -> Option<Ordering> {
        Some(self.cmp(o))
    }
}

#[derive(Clone, Debug)]
pub struct Polynomial {
    vars: Arc<VarTable>,
    ring: Ring,
    cap: Option<u32>,
    terms: BTreeMap<Monomial, Coefficient>,
}

impl PartialEq for Polynomial {
    fn eq(&self, o: &Self) -> bool {
        if self.ring != o.ring {
            return false;
        }
        if self.vars == o.vars {
            return self.terms == o.terms;
        }
        self.is_constant() && o.is_constant() && self.constant_term() == o.constant_term()
    }
}

impl Polynomial {
    pub fn zero(vars: &Arc<VarTable>, ring: Ring) -> Self {
        Polynomial {
            vars: vars.clone(),
            ring,
            cap: None,
            terms: BTreeMap::new(),
        }
    }

    pub fn constant(vars: &Arc<VarTable>, c: Coefficient) -> Self {
        let mut p = Polynomial::zero(vars, c.ring());
        p.add_term(Monomial::one(vars.len()), c);
        p
    }

    pub fn one(vars: &Arc<VarTable>, ring: Ring) -> Self {
        Polynomial::constant(vars, Coefficient::one(ring))
    }

    pub fn from_int(vars: &Arc<VarTable>, ring: Ring, v: i64) -> Self {
        Polynomial::constant(vars, Coefficient::from_int(ring, v))
    }

    pub fn var(vars: &Arc<VarTable>, ring: Ring, name: &str) -> Result<Self, PolyError> {
        let i = vars
            .index_of(name)
            .ok_or_else(|| PolyError::UnknownVariable(name.into()))?;
        let mut e = vec![0; vars.len()];
        e[i] = 1;
        let mut p = Polynomial::zero(vars, ring);
        p.add_term(Monomial(e), Coefficient::one(ring));
        Ok(p)
    }

    /// Term from (variable, exponent) pairs.
    pub fn monomial(
        vars: &Arc<VarTable>,
        c: Coefficient,
        powers: &[(&str, u16)],
    ) -> Result<Self, PolyError> {
        let mut e = vec![0; vars.len()];
        for (name, k) in powers {
            let i = vars
                .index_of(name)
                .ok_or_else(|| PolyError::UnknownVariable((*name).into()))?;
            e[i] += k;
        }
        let mut p = Polynomial::zero(vars, c.ring());
        p.add_term(Monomial(e), c);
        Ok(p)
    }

    pub fn vars(&self) -> &Arc<VarTable> {
        &self.vars
    }

    pub fn ring(&self) -> Ring {
        self.ring
    }

    pub fn cap(&self) -> Option<u32> {
        self.cap
    }

    pub fn with_cap(mut self, cap: Option<u32>) -> Self {
        self.cap = cap;
        if let Some(c) = cap {
            self.terms.retain(|m, _| m.degree() <= c);
        }
        self
    }

    pub fn truncate(&self, degree: u32) -> Self {
        let mut p = self.clone();
        p.terms.retain(|m, _| m.degree() <= degree);
        p
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Monomial, &Coefficient)> {
        self.terms.iter()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_constant(&self) -> bool {
        self.terms.keys().all(|m| m.degree() == 0)
    }

    pub fn degree(&self) -> Option<u32> {
        self.terms.keys().map(Monomial::degree).max()
    }

    pub fn constant_term(&self) -> Coefficient {
        self.terms
            .iter()
            .find(|(m, _)| m.degree() == 0)
            .map(|(_, c)| c.clone())
            .unwrap_or_else(|| Coefficient::zero(self.ring))
    }

    /// Adds `c` to the coefficient of `m`, dropping the term if it cancels.
    pub fn add_term(&mut self, m: Monomial, c: Coefficient) {
        debug_assert_eq!(m.0.len(), self.vars.len());
        if self.cap.is_some_and(|cap| m.degree() > cap) || c.is_zero() {
            return;
        }
        match self.terms.get_mut(&m) {
            Some(v) => {
                *v = v.add(&c);
                if v.is_zero() {
                    self.terms.remove(&m);
                }
            }
            None => {
                self.terms.insert(m, c);
            }
        }
    }

    /// Coefficient of the monomial given as (variable, exponent) pairs.
    pub fn coeff(&self, powers: &[(&str, u16)]) -> Coefficient {
        let mut e = vec![0u16; self.vars.len()];
        for (name, k) in powers {
            match self.vars.index_of(name) {
                Some(i) => e[i] += k,
                None if *k == 0 => {}
                None => return Coefficient::zero(self.ring),
            }
        }
        self.terms
            .get(&Monomial(e))
            .cloned()
            .unwrap_or_else(|| Coefficient::zero(self.ring))
    }

    /// Sum of coefficients of total degree `d`.
    pub fn degree_sum(&self, d: u32) -> Coefficient {
        self.terms
            .iter()
            .filter(|(m, _)| m.degree() == d)
            .fold(Coefficient::zero(self.ring), |acc, (_, c)| acc.add(c))
    }

    fn align(&self, o: &Polynomial) -> Result<Arc<VarTable>, PolyError> {
        if self.ring != o.ring {
            return Err(PolyError::RingMismatch);
        }
        if self.vars == o.vars {
            return Ok(self.vars.clone());
        }
        if o.is_constant() {
            return Ok(self.vars.clone());
        }
        if self.is_constant() {
            return Ok(o.vars.clone());
        }
        Err(PolyError::TableMismatch(
            self.vars.names.clone(),
            o.vars.names.clone(),
        ))
    }

    fn retabled(&self, vars: &Arc<VarTable>) -> Polynomial {
        if &self.vars == vars {
            return self.clone();
        }
        let mut p = Polynomial::zero(vars, self.ring).with_cap(self.cap);
        for c in self.terms.values() {
            p.add_term(Monomial::one(vars.len()), c.clone());
        }
        p
    }

    fn join_cap(&self, o: &Polynomial) -> Option<u32> {
        match (self.cap, o.cap) {
            (Some(a), Some(b)) => Some(a.min(b)),
            (a, b) => a.or(b),
        }
    }

    pub fn add(&self, o: &Polynomial) -> Result<Polynomial, PolyError> {
        let vars = self.align(o)?;
        let mut out = self.retabled(&vars).with_cap(self.join_cap(o));
        for (m, c) in o.retabled(&vars).terms {
            out.add_term(m, c);
        }
        Ok(out)
    }

    pub fn sub(&self, o: &Polynomial) -> Result<Polynomial, PolyError> {
        self.add(&o.neg())
    }

    pub fn neg(&self) -> Polynomial {
        let mut p = self.clone();
        for c in p.terms.values_mut() {
            *c = c.neg();
        }
        p
    }

    pub fn scale(&self, k: &Coefficient) -> Polynomial {
        let mut p = Polynomial::zero(&self.vars, self.ring).with_cap(self.cap);
        if self.ring == Ring::Float || k.ring() == Ring::Float {
            p.ring = Ring::Float;
        }
        for (m, c) in &self.terms {
            p.add_term(m.clone(), c.mul(k).to_ring(p.ring));
        }
        p
    }

    pub fn mul(&self, o: &Polynomial) -> Result<Polynomial, PolyError> {
        let vars = self.align(o)?;
        let (a, b) = (self.retabled(&vars), o.retabled(&vars));
        let cap = self.join_cap(o);
        let mut out = Polynomial::zero(&vars, self.ring).with_cap(cap);
        for (ma, ca) in &a.terms {
            for (mb, cb) in &b.terms {
                let m = ma.mul(mb);
                if cap.is_some_and(|c| m.degree() > c) {
                    continue;
                }
                out.add_term(m, ca.mul(cb));
            }
        }
        Ok(out)
    }

    pub fn pow(&self, k: u32) -> Polynomial {
        let mut acc = Polynomial::one(&self.vars, self.ring).with_cap(self.cap);
        let mut base = self.clone();
        let mut k = k;
        while k > 0 {
            if k & 1 == 1 {
                acc = acc.mul(&base).expect("same table");
            }
            k >>= 1;
            if k > 0 {
                base = base.mul(&base).expect("same table");
            }
        }
        acc
    }

    pub fn to_float(&self) -> Polynomial {
        let mut p = Polynomial::zero(&self.vars, Ring::Float).with_cap(self.cap);
        for (m, c) in &self.terms {
            p.add_term(m.clone(), c.to_float());
        }
        p
    }

    pub fn to_ring(&self, ring: Ring) -> Polynomial {
        match ring {
            Ring::Float => self.to_float(),
            Ring::Exact => self.clone(),
        }
    }

    pub fn conj(&self) -> Polynomial {
        let mut p = self.clone();
        for c in p.terms.values_mut() {
            *c = c.conj();
        }
        p
    }

    /// Re-expresses the polynomial over another table, renaming variables through `rename`
    /// (identity for unlisted names). Several sources may map to one target.
    pub fn remap(
        &self,
        target: &Arc<VarTable>,
        rename: &HashMap<String, String>,
    ) -> Result<Polynomial, PolyError> {
        let mut idx = Vec::with_capacity(self.vars.len());
        for name in &self.vars.names {
            let to = rename.get(name).unwrap_or(name);
            idx.push(
                target
                    .index_of(to)
                    .ok_or_else(|| PolyError::UnknownVariable(to.clone()))?,
            );
        }
        let mut p = Polynomial::zero(target, self.ring).with_cap(self.cap);
        for (m, c) in &self.terms {
            let mut e = vec![0u16; target.len()];
            for (i, &k) in m.0.iter().enumerate() {
                e[idx[i]] += k;
            }
            p.add_term(Monomial(e), c.clone());
        }
        Ok(p)
    }

    /// Replaces each mapped variable by a polynomial over `target`; unmapped variables must
    /// exist in `target` and are carried over by name.
    pub fn substitute(
        &self,
        target: &Arc<VarTable>,
        map: &HashMap<String, Polynomial>,
    ) -> Result<Polynomial, PolyError> {
        for k in map.keys() {
            if self.vars.index_of(k).is_none() {
                return Err(PolyError::UnknownVariable(k.clone()));
            }
        }
        let cap = self.cap;
        let mut images = Vec::with_capacity(self.vars.len());
        for name in &self.vars.names {
            let img = match map.get(name) {
                Some(p) => p.retabled(target).with_cap(cap),
                None => Polynomial::var(target, self.ring, name)?.with_cap(cap),
            };
            if img.ring != self.ring {
                return Err(PolyError::RingMismatch);
            }
            images.push(img);
        }
        let mut powers: Vec<Vec<Polynomial>> = images
            .iter()
            .map(|_| vec![Polynomial::one(target, self.ring).with_cap(cap)])
            .collect();
        let mut out = Polynomial::zero(target, self.ring).with_cap(cap);
        for (m, c) in &self.terms {
            let mut t = Polynomial::constant(target, c.clone()).with_cap(cap);
            for (i, &k) in m.0.iter().enumerate() {
                while powers[i].len() <= k as usize {
                    let next = powers[i].last().unwrap().mul(&images[i])?;
                    powers[i].push(next);
                }
                if k > 0 {
                    t = t.mul(&powers[i][k as usize])?;
                }
            }
            out = out.add(&t)?;
        }
        Ok(out)
    }

    /// `substitute` restricted to images of total degree at most one.
    pub fn substitute_linear(
        &self,
        target: &Arc<VarTable>,
        map: &HashMap<String, Polynomial>,
    ) -> Result<Polynomial, PolyError> {
        for (k, v) in map {
            if v.degree().unwrap_or(0) > 1 {
                return Err(PolyError::NotLinear(k.clone()));
            }
        }
        self.substitute(target, map)
    }

    pub fn evaluate(
        &self,
        assignment: &HashMap<String, Coefficient>,
    ) -> Result<Coefficient, PolyError> {
        let mut acc = Coefficient::zero(self.ring);
        for (m, c) in &self.terms {
            let mut t = c.clone();
            for (i, &k) in m.0.iter().enumerate() {
                if k == 0 {
                    continue;
                }
                let name = &self.vars.names[i];
                let v = assignment
                    .get(name)
                    .ok_or_else(|| PolyError::MissingAssignment(name.clone()))?;
                for _ in 0..k {
                    t = t.mul(v);
                }
            }
            acc = acc.add(&t);
        }
        Ok(acc)
    }

    /// Sets the listed variables to constants, keeping the table.
    pub fn partial_evaluate(&self, assignment: &HashMap<String, Coefficient>) -> Polynomial {
        let fixed: Vec<Option<&Coefficient>> =
            self.vars.names.iter().map(|n| assignment.get(n)).collect();
        let mut p = Polynomial::zero(&self.vars, self.ring).with_cap(self.cap);
        for (m, c) in &self.terms {
            let mut e = m.0.clone();
            let mut t = c.clone();
            for (i, v) in fixed.iter().enumerate() {
                if let Some(v) = v {
                    for _ in 0..e[i] {
                        t = t.mul(v);
                    }
                    e[i] = 0;
                }
            }
            p.add_term(Monomial(e), t.to_ring(self.ring));
        }
        p
    }

    pub fn approx_eq(&self, o: &Polynomial, tol: f64) -> bool {
        let Ok(d) = self.to_float().sub(&o.to_float()) else {
            return false;
        };
        d.terms.values().all(|c| c.to_complex().norm() <= tol)
    }

    pub fn to_json(&self) -> PolyJson {
        PolyJson {
            vars: self.vars.names.clone(),
            terms: self
                .terms
                .iter()
                .map(|(m, c)| TermJson {
                    exp: m.0.clone(),
                    coeff: CoeffJson::from(c),
                })
                .collect(),
        }
    }

    pub fn from_json(j: &PolyJson) -> Result<Polynomial, PolyError> {
        let vars = VarTable::new(&j.vars);
        let ring = match j.terms.first().map(|t| &t.coeff) {
            Some(CoeffJson::Float { .. }) => Ring::Float,
            _ => Ring::Exact,
        };
        let mut p = Polynomial::zero(&vars, ring);
        for t in &j.terms {
            if t.exp.len() != vars.len() {
                return Err(PolyError::Json("exponent length".into()));
            }
            p.add_term(Monomial(t.exp.clone()), t.coeff.to_coefficient()?);
        }
        Ok(p)
    }
}

impl fmt::Display for Polynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return f.write_str("0");
        }
        for (i, (m, c)) in self.terms.iter().enumerate() {
            let mut vars = Vec::new();
            for (j, &k) in m.0.iter().enumerate() {
                match k {
                    0 => {}
                    1 => vars.push(self.vars.names[j].clone()),
                    _ => vars.push(format!("{}^{}", self.vars.names[j], k)),
                }
            }
            let mut cs = c.to_string();
            let negative = cs.starts_with('-');
            if negative {
                cs.remove(0);
            }
            if i == 0 {
                if negative {
                    f.write_str("-")?;
                }
            } else {
                f.write_str(if negative { " - " } else { " + " })?;
            }
            if vars.is_empty() {
                f.write_str(&cs)?;
            } else {
                if cs != "1" {
                    write!(f, "{cs}*")?;
                }
                f.write_str(&vars.join("*"))?;
            }
        }
        Ok(())
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct PolyJson {
    pub vars: Vec<String>,
    pub terms: Vec<TermJson>,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct TermJson {
    pub exp: Vec<u16>,
    pub coeff: CoeffJson,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum CoeffJson {
    Exact {
        num: String,
        den: String,
        inum: String,
        iden: String,
    },
    Float {
        re: f64,
        im: f64,
    },
}

impl From<&Coefficient> for CoeffJson {
    fn from(c: &Coefficient) -> Self {
        match c {
            Coefficient::Exact(g) => CoeffJson::Exact {
                num: g.re.numer().to_string(),
                den: g.re.denom().to_string(),
                inum: g.im.numer().to_string(),
                iden: g.im.denom().to_string(),
            },
            Coefficient::Float(z) => CoeffJson::Float { re: z.re, im: z.im },
        }
    }
}

impl CoeffJson {
    pub fn to_coefficient(&self) -> Result<Coefficient, PolyError> {
        let big = |s: &str| {
            s.parse::<BigInt>()
                .map_err(|e| PolyError::Json(e.to_string()))
        };
        match self {
            CoeffJson::Exact {
                num,
                den,
                inum,
                iden,
            } => {
                let (d, id) = (big(den)?, big(iden)?);
                if d.is_zero() || id.is_zero() {
                    return Err(PolyError::Json("zero denominator".into()));
                }
                Ok(Coefficient::exact(
                    BigRational::new(big(num)?, d),
                    BigRational::new(big(inum)?, id),
                ))
            }
            CoeffJson::Float { re, im } => Ok(Coefficient::Float(Complex64::new(*re, *im))),
        }
    }
}
