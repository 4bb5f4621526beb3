//! Integer polynomials in one variable and in `(A, B)`.

use std::collections::BTreeMap;
use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::{Serialize, Serializer};

/// Dense univariate polynomial, coefficients in ascending degree.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Default)]
pub struct UniPoly {
    coeffs: Vec<BigInt>,
}

impl UniPoly {
    pub fn new(mut coeffs: Vec<BigInt>) -> Self {
        while coeffs.last().is_some_and(|c| c.is_zero()) {
            coeffs.pop();
        }
        UniPoly { coeffs }
    }

    pub fn from_i64(coeffs: &[i64]) -> Self {
        Self::new(coeffs.iter().map(|&c| BigInt::from(c)).collect())
    }

    pub fn zero() -> Self {
        UniPoly { coeffs: Vec::new() }
    }

    pub fn constant(c: impl Into<BigInt>) -> Self {
        Self::new(vec![c.into()])
    }

    /// `c·X^k`
    pub fn monomial(c: impl Into<BigInt>, k: usize) -> Self {
        let mut v = vec![BigInt::zero(); k + 1];
        v[k] = c.into();
        Self::new(v)
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// Degree, `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn coeffs(&self) -> &[BigInt] {
        &self.coeffs
    }

    pub fn coeff(&self, i: usize) -> BigInt {
        self.coeffs.get(i).cloned().unwrap_or_default()
    }

    pub fn leading(&self) -> BigInt {
        self.coeffs.last().cloned().unwrap_or_default()
    }

    pub fn eval(&self, x: &BigInt) -> BigInt {
        self.coeffs.iter().rev().fold(BigInt::zero(), |acc, c| acc * x + c)
    }

    pub fn eval_i64(&self, x: i64) -> BigInt {
        self.eval(&BigInt::from(x))
    }

    pub fn add(&self, o: &UniPoly) -> UniPoly {
        let n = self.coeffs.len().max(o.coeffs.len());
        UniPoly::new((0..n).map(|i| self.coeff(i) + o.coeff(i)).collect())
    }

    pub fn sub(&self, o: &UniPoly) -> UniPoly {
        let n = self.coeffs.len().max(o.coeffs.len());
        UniPoly::new((0..n).map(|i| self.coeff(i) - o.coeff(i)).collect())
    }

    pub fn mul(&self, o: &UniPoly) -> UniPoly {
        if self.is_zero() || o.is_zero() {
            return UniPoly::zero();
        }
        let mut v = vec![BigInt::zero(); self.coeffs.len() + o.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            for (j, b) in o.coeffs.iter().enumerate() {
                v[i + j] += a * b;
            }
        }
        UniPoly::new(v)
    }

    pub fn scale(&self, k: &BigInt) -> UniPoly {
        UniPoly::new(self.coeffs.iter().map(|c| c * k).collect())
    }

    /// gcd of the coefficients (non-negative).
    pub fn content(&self) -> BigInt {
        self.coeffs.iter().fold(BigInt::zero(), |g, c| g.gcd(c))
    }

    /// `self / k`, assuming `k` divides every coefficient.
    pub fn div_exact_scalar(&self, k: &BigInt) -> UniPoly {
        UniPoly::new(self.coeffs.iter().map(|c| c / k).collect())
    }

    /// Primitive part with positive leading coefficient.
    pub fn primitive(&self) -> UniPoly {
        if self.is_zero() {
            return UniPoly::zero();
        }
        let mut c = self.content();
        if self.leading().is_negative() {
            c = -c;
        }
        self.div_exact_scalar(&c)
    }

    /// Multiplicity of the root `0`.
    pub fn low_order(&self) -> usize {
        self.coeffs.iter().take_while(|c| c.is_zero()).count()
    }

    /// `self / X^k` for `k ≤ low_order()`.
    pub fn shift_down(&self, k: usize) -> UniPoly {
        UniPoly::new(self.coeffs[k.min(self.coeffs.len())..].to_vec())
    }

    /// Quotient and remainder by a monic divisor; exact over the integers.
    pub fn divrem_monic(&self, m: &UniPoly) -> (UniPoly, UniPoly) {
        let dm = m.degree().expect("division by zero polynomial");
        assert!(m.leading().is_one(), "divisor must be monic");
        let mut rem = self.coeffs.clone();
        if rem.len() <= dm {
            return (UniPoly::zero(), self.clone());
        }
        let mut quot = vec![BigInt::zero(); rem.len() - dm];
        for i in (dm..rem.len()).rev() {
            let c = std::mem::take(&mut rem[i]);
            if c.is_zero() {
                continue;
            }
            for j in 0..dm {
                rem[i - dm + j] -= &c * &m.coeffs[j];
            }
            quot[i - dm] = c;
        }
        rem.truncate(dm);
        (UniPoly::new(quot), UniPoly::new(rem))
    }

    /// Pseudo-remainder: `lc(m)^(deg self − deg m + 1) · self mod m`.
    pub fn pseudo_rem(&self, m: &UniPoly) -> UniPoly {
        let dm = m.degree().expect("division by zero polynomial");
        let lc = m.leading();
        let mut r = self.clone();
        while let Some(dr) = r.degree() {
            if dr < dm {
                break;
            }
            let t = UniPoly::monomial(r.leading(), dr - dm);
            r = r.scale(&lc).sub(&t.mul(m));
        }
        r
    }

    /// Greatest common divisor up to a unit, primitive with positive leading coefficient.
    pub fn gcd(&self, o: &UniPoly) -> UniPoly {
        let mut a = self.primitive();
        let mut b = o.primitive();
        if a.degree() < b.degree() {
            std::mem::swap(&mut a, &mut b);
        }
        while !b.is_zero() {
            let r = a.pseudo_rem(&b);
            a = b;
            b = r.primitive();
        }
        a
    }

    /// Exact division `self / m` over the integers, if it exists.
    pub fn div_exact(&self, m: &UniPoly) -> Option<UniPoly> {
        let dm = m.degree()?;
        let lc = m.leading();
        let mut rem = self.clone();
        let mut quot = UniPoly::zero();
        while let Some(dr) = rem.degree() {
            if dr < dm {
                return None;
            }
            let (c, r) = rem.leading().div_rem(&lc);
            if !r.is_zero() {
                return None;
            }
            let t = UniPoly::monomial(c, dr - dm);
            rem = rem.sub(&t.mul(m));
            quot = quot.add(&t);
        }
        Some(quot)
    }

    /// Resultant via the fraction-free (Bareiss) determinant of the Sylvester matrix.
    pub fn resultant(&self, o: &UniPoly) -> BigInt {
        let (Some(m), Some(n)) = (self.degree(), o.degree()) else {
            return BigInt::zero();
        };
        if m == 0 && n == 0 {
            return BigInt::one();
        }
        if m == 0 {
            return num_traits::pow(self.leading(), n);
        }
        if n == 0 {
            return num_traits::pow(o.leading(), m);
        }
        let size = m + n;
        let mut mat = vec![vec![BigInt::zero(); size]; size];
        for r in 0..n {
            for (i, c) in self.coeffs.iter().rev().enumerate() {
                mat[r][r + i] = c.clone();
            }
        }
        for r in 0..m {
            for (i, c) in o.coeffs.iter().rev().enumerate() {
                mat[n + r][r + i] = c.clone();
            }
        }
        bareiss_det(mat)
    }

    /// All integer roots, ascending, deduplicated.
    pub fn integer_roots(&self) -> Vec<BigInt> {
        assert!(!self.is_zero(), "integer roots of the zero polynomial");
        let k = self.low_order();
        let mut roots = Vec::new();
        if k > 0 {
            roots.push(BigInt::zero());
        }
        let red = self.shift_down(k);
        if red.degree().unwrap_or(0) > 0 {
            let c0 = red.coeff(0).abs();
            for dv in divisors(&c0) {
                for cand in [dv.clone(), -dv] {
                    if red.eval(&cand).is_zero() {
                        roots.push(cand);
                    }
                }
            }
        }
        roots.sort();
        roots.dedup();
        roots
    }

    /// Cauchy bound: every complex root has modulus `< 1 + max |c_i / c_n|`, rounded up.
    pub fn root_bound(&self) -> BigInt {
        let lc = self.leading().abs();
        let m = self.coeffs[..self.coeffs.len().saturating_sub(1)]
            .iter()
            .map(|c| c.abs())
            .max()
            .unwrap_or_default();
        BigInt::one() + m.div_ceil(&lc)
    }

    pub fn fmt_in(&self, var: &str) -> String {
        let terms: Vec<(BigInt, String)> = self
            .coeffs
            .iter()
            .enumerate()
            .rev()
            .filter(|(_, c)| !c.is_zero())
            .map(|(i, c)| (c.clone(), mono(var, i)))
            .collect();
        join_terms(&terms)
    }
}

fn mono(var: &str, e: usize) -> String {
    match e {
        0 => String::new(),
        1 => var.to_string(),
        _ => format!("{var}^{e}"),
    }
}

fn join_terms(terms: &[(BigInt, String)]) -> String {
    if terms.is_empty() {
        return "0".into();
    }
    let mut out = String::new();
    for (idx, (c, m)) in terms.iter().enumerate() {
        let neg = c.is_negative();
        if idx > 0 {
            out.push(if neg { '-' } else { '+' });
        } else if neg {
            out.push('-');
        }
        let mag = c.abs();
        if m.is_empty() {
            out.push_str(&mag.to_string());
        } else {
            if !mag.is_one() {
                out.push_str(&mag.to_string());
            }
            out.push_str(m);
        }
    }
    out
}

impl fmt::Display for UniPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.fmt_in("X"))
    }
}

fn bareiss_det(mut m: Vec<Vec<BigInt>>) -> BigInt {
    let n = m.len();
    let mut sign = BigInt::one();
    let mut prev = BigInt::one();
    for k in 0..n {
        if m[k][k].is_zero() {
            let Some(swap) = (k + 1..n).find(|&r| !m[r][k].is_zero()) else {
                return BigInt::zero();
            };
            m.swap(k, swap);
            sign = -sign;
        }
        for i in k + 1..n {
            for j in k + 1..n {
                let v = &m[i][j] * &m[k][k] - &m[i][k] * &m[k][j];
                m[i][j] = v / &prev;
            }
        }
        prev = m[k][k].clone();
    }
    sign * &m[n - 1][n - 1]
}

/// Positive divisors of `n > 0` (trial division). `divisors(0)` is empty.
pub fn divisors(n: &BigInt) -> Vec<BigInt> {
    let n = n.abs();
    if n.is_zero() {
        return Vec::new();
    }
    let mut factors: Vec<(BigInt, u32)> = Vec::new();
    let mut rest = n.clone();
    let mut p = BigInt::from(2);
    while &p * &p <= rest {
        let mut e = 0;
        while (&rest % &p).is_zero() {
            rest /= &p;
            e += 1;
        }
        if e > 0 {
            factors.push((p.clone(), e));
        }
        p += if p == BigInt::from(2) { 1 } else { 2 };
    }
    if !rest.is_one() {
        factors.push((rest, 1));
    }
    let mut divs = vec![BigInt::one()];
    for (p, e) in factors {
        let mut next = Vec::with_capacity(divs.len() * (e as usize + 1));
        for d in &divs {
            let mut pk = BigInt::one();
            for _ in 0..=e {
                next.push(d * &pk);
                pk *= &p;
            }
        }
        divs = next;
    }
    divs.sort();
    divs
}

/// Sparse polynomial `Σ c_ij A^i B^j`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Default)]
pub struct BivarPoly {
    terms: BTreeMap<(u32, u32), BigInt>,
}

impl BivarPoly {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn constant(c: impl Into<BigInt>) -> Self {
        Self::term(c, 0, 0)
    }

    /// `c·A^i·B^j`
    pub fn term(c: impl Into<BigInt>, i: u32, j: u32) -> Self {
        let mut p = Self::zero();
        p.add_term(c.into(), i, j);
        p
    }

    pub fn var_a() -> Self {
        Self::term(1, 1, 0)
    }

    pub fn var_b() -> Self {
        Self::term(1, 0, 1)
    }

    fn add_term(&mut self, c: BigInt, i: u32, j: u32) {
        if c.is_zero() {
            return;
        }
        let e = self.terms.entry((i, j)).or_default();
        *e += c;
        if e.is_zero() {
            self.terms.remove(&(i, j));
        }
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&(u32, u32), &BigInt)> {
        self.terms.iter()
    }

    pub fn coeff(&self, i: u32, j: u32) -> BigInt {
        self.terms.get(&(i, j)).cloned().unwrap_or_default()
    }

    pub fn add(&self, o: &BivarPoly) -> BivarPoly {
        let mut r = self.clone();
        for (&(i, j), c) in &o.terms {
            r.add_term(c.clone(), i, j);
        }
        r
    }

    pub fn sub(&self, o: &BivarPoly) -> BivarPoly {
        self.add(&o.scale(&BigInt::from(-1)))
    }

    pub fn scale(&self, k: &BigInt) -> BivarPoly {
        let mut r = BivarPoly::zero();
        for (&(i, j), c) in &self.terms {
            r.add_term(c * k, i, j);
        }
        r
    }

    pub fn mul(&self, o: &BivarPoly) -> BivarPoly {
        let mut r = BivarPoly::zero();
        for (&(i1, j1), c1) in &self.terms {
            for (&(i2, j2), c2) in &o.terms {
                r.add_term(c1 * c2, i1 + i2, j1 + j2);
            }
        }
        r
    }

    pub fn deg_a(&self) -> u32 {
        self.terms.keys().map(|k| k.0).max().unwrap_or(0)
    }

    /// Degree in `B`; `0` for the zero polynomial.
    pub fn deg_b(&self) -> u32 {
        self.terms.keys().map(|k| k.1).max().unwrap_or(0)
    }

    pub fn eval(&self, a: &BigInt, b: &BigInt) -> BigInt {
        let mut s = BigInt::zero();
        for (&(i, j), c) in &self.terms {
            s += c * num_traits::pow(a.clone(), i as usize) * num_traits::pow(b.clone(), j as usize);
        }
        s
    }

    pub fn eval_i64(&self, a: i64, b: i64) -> BigInt {
        self.eval(&BigInt::from(a), &BigInt::from(b))
    }

    /// Coefficients `e_j(A)` of `B^j`, `j = 0..=deg_b`.
    pub fn coeffs_in_b(&self) -> Vec<UniPoly> {
        let db = self.deg_b() as usize;
        let da = self.deg_a() as usize;
        let mut cols = vec![vec![BigInt::zero(); da + 1]; db + 1];
        for (&(i, j), c) in &self.terms {
            cols[j as usize][i as usize] = c.clone();
        }
        cols.into_iter().map(UniPoly::new).collect()
    }

    pub fn from_coeffs_in_b(cs: &[UniPoly]) -> BivarPoly {
        let mut r = BivarPoly::zero();
        for (j, p) in cs.iter().enumerate() {
            for (i, c) in p.coeffs().iter().enumerate() {
                r.add_term(c.clone(), i as u32, j as u32);
            }
        }
        r
    }

    /// Substitute `A = a`, leaving a polynomial in `B`.
    pub fn at_a(&self, a: &BigInt) -> UniPoly {
        UniPoly::new(self.coeffs_in_b().iter().map(|e| e.eval(a)).collect())
    }

    /// Largest `k` with `A^k` dividing every term.
    pub fn a_power_content(&self) -> u32 {
        self.terms.keys().map(|k| k.0).min().unwrap_or(0)
    }

    pub fn divide_by_a_power(&self, k: u32) -> BivarPoly {
        let mut terms = BTreeMap::new();
        for (&(i, j), c) in &self.terms {
            assert!(i >= k);
            terms.insert((i - k, j), c.clone());
        }
        BivarPoly { terms }
    }

    /// Same polynomial written as a polynomial in `B` with coefficients in `A`,
    /// e.g. `-6AB^2+(-8A^3+1)B-2A^5+A^2`.
    pub fn fmt_grouped_by_b(&self) -> String {
        let cs = self.coeffs_in_b();
        let mut out = String::new();
        for (j, e) in cs.iter().enumerate().rev() {
            if e.is_zero() {
                continue;
            }
            let nterms = e.coeffs().iter().filter(|c| !c.is_zero()).count();
            let body = e.fmt_in("A");
            let bm = mono("B", j);
            let piece = if bm.is_empty() {
                body
            } else if nterms > 1 {
                format!("({body}){bm}")
            } else if body == "1" {
                bm
            } else if body == "-1" {
                format!("-{bm}")
            } else {
                format!("{body}{bm}")
            };
            if !out.is_empty() && !piece.starts_with('-') {
                out.push('+');
            }
            out.push_str(&piece);
        }
        if out.is_empty() {
            "0".into()
        } else {
            out
        }
    }

    pub fn to_i64_terms(&self) -> Option<Vec<((u32, u32), i64)>> {
        self.terms.iter().map(|(k, c)| c.to_i64().map(|c| (*k, c))).collect()
    }
}

impl fmt::Display for BivarPoly {
    /// Terms by descending total degree, `A` before `B`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut keys: Vec<&(u32, u32)> = self.terms.keys().collect();
        keys.sort_by_key(|x| std::cmp::Reverse((x.0 + x.1, x.0)));
        let terms: Vec<(BigInt, String)> = keys
            .into_iter()
            .map(|k| (self.terms[k].clone(), format!("{}{}", mono("A", k.0 as usize), mono("B", k.1 as usize))))
            .collect();
        f.write_str(&join_terms(&terms))
    }
}

impl Serialize for BivarPoly {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        s.serialize_str(&self.to_string())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn monic_division() {
        // X³ + X − 2 = (X − 1)(X² + X + 2)
        let f = UniPoly::from_i64(&[-2, 1, 0, 1]);
        let (q, r) = f.divrem_monic(&UniPoly::from_i64(&[2, 1, 1]));
        assert!(r.is_zero());
        assert_eq!(q, UniPoly::from_i64(&[-1, 1]));
    }

    #[test]
    fn resultant_linear() {
        // Res(A, A³ + A − 2) = value at 0 up to sign.
        let a = UniPoly::from_i64(&[0, 1]);
        let f = UniPoly::from_i64(&[-2, 1, 0, 1]);
        assert_eq!(a.resultant(&f).abs(), BigInt::from(2));
        // Res of coprime quadratics equals the product formula.
        let g = UniPoly::from_i64(&[-1, 0, 1]); // roots ±1
        let h = UniPoly::from_i64(&[-4, 0, 1]); // roots ±2
        // Π (1−2)(1+2)(−1−2)(−1+2) = 9
        assert_eq!(g.resultant(&h), BigInt::from(9));
    }

    #[test]
    fn gcd_and_roots() {
        let f = UniPoly::from_i64(&[-2, 1, 1]); // (X+2)(X−1)
        let g = UniPoly::from_i64(&[-1, 1]).mul(&UniPoly::from_i64(&[3, 1]));
        assert_eq!(f.gcd(&g), UniPoly::from_i64(&[-1, 1]));
        assert_eq!(f.integer_roots(), vec![BigInt::from(-2), BigInt::from(1)]);
        let h = UniPoly::from_i64(&[0, 0, -4, 0, 1]); // X²(X²−4)
        assert_eq!(h.integer_roots(), vec![BigInt::from(-2), BigInt::from(0), BigInt::from(2)]);
    }

    #[test]
    fn divisor_listing() {
        let ds: Vec<i64> = divisors(&BigInt::from(36)).iter().map(|d| d.to_i64().unwrap()).collect();
        assert_eq!(ds, [1, 2, 3, 4, 6, 9, 12, 18, 36]);
        assert!(divisors(&BigInt::zero()).is_empty());
    }

    #[test]
    fn grouped_display() {
        let a = BivarPoly::var_a();
        let b = BivarPoly::var_b();
        let a2 = a.mul(&a);
        let e = BivarPoly::term(-6, 1, 2)
            .add(&BivarPoly::term(-8, 3, 1))
            .add(&b)
            .add(&BivarPoly::term(-2, 5, 0))
            .add(&a2);
        assert_eq!(e.fmt_grouped_by_b(), "-6AB^2+(-8A^3+1)B-2A^5+A^2");
        let f = BivarPoly::term(1, 3, 0).add(&BivarPoly::term(2, 1, 1)).add(&a).sub(&BivarPoly::constant(2));
        assert_eq!(f.to_string(), "A^3+2AB+A-2");
    }
}
