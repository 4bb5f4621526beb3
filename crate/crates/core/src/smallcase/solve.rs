//! Integer solutions of one case equation `E(A, B) = 0`, by `B`-degree.

use std::collections::BTreeSet;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use serde::Serialize;

use crate::error::SolveError;
use crate::poly::{divisors, BivarPoly, UniPoly};
use crate::smallcase::dominance::dominance_bound;
use crate::smallcase::{CaseEquation, DomainFilter};

/// One reasoning step, kept for reports.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case", tag = "step")]
pub enum Step {
    APowerContent { power: u32 },
    LeadingRoots { leading: String, roots: Vec<String> },
    /// `p(A) | Res(p, e0)` for the primitive part `p` of the `B` coefficient.
    Resultant { divisor: String, resultant: String, candidates: Vec<String> },
    GcdSplit { factor: String },
    Curve { b_of_a: String },
    SquareCompletion { discriminant: String, root: String, scale: String },
    /// `(|q| − 1)² < Δ' < (|q| + 1)²` for `|A| > a_cut` unless `ρ(A) = 0`.
    Squeeze {
        discriminant: String,
        reduced: String,
        q: String,
        rho: String,
        a_cut: String,
        extra: Vec<String>,
        squares_at: Vec<String>,
    },
    ConstantNonSquare { discriminant: String },
    /// `Δ'(A)` is never a square residue.
    NoSquareModulo { discriminant: String, modulus: u64 },
    NegativeDiscriminant { discriminant: String, a_cut: String },
    Dominance { a_cut: u64, ratios: Vec<String> },
}

/// Solutions before the domain filter.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct RawSolutions {
    pub points: BTreeSet<(BigInt, BigInt)>,
    /// `E(a, B) ≡ 0` in `B`.
    pub free_a: BTreeSet<BigInt>,
    /// `B = g(A)` for every `A`.
    pub curves: Vec<UniPoly>,
}

struct Ctx<'a> {
    eq: &'a CaseEquation,
    filter: &'a DomainFilter,
    steps: Vec<Step>,
    raw: RawSolutions,
    dominance_done: bool,
}

fn bi(n: i64) -> BigInt {
    BigInt::from(n)
}

impl Ctx<'_> {
    fn univariate(&mut self, e: &BivarPoly, a: &BigInt) {
        if a.is_zero() {
            return;
        }
        let p = e.at_a(a);
        if p.is_zero() {
            self.raw.free_a.insert(a.clone());
        } else {
            for b in p.integer_roots() {
                self.raw.points.insert((a.clone(), b));
            }
        }
    }

    fn solve(&mut self, e: &BivarPoly) -> Result<(), SolveError> {
        if e.is_zero() {
            return Err(SolveError::IdenticallyZero { equation: self.eq.to_string() });
        }
        let k = e.a_power_content();
        let e = if k > 0 {
            self.steps.push(Step::APowerContent { power: k });
            e.divide_by_a_power(k)
        } else {
            e.clone()
        };
        let cs = e.coeffs_in_b();
        let lead = cs.last().expect("non-zero polynomial").clone();
        let roots: Vec<BigInt> = lead.integer_roots().into_iter().filter(|r| !r.is_zero()).collect();
        if lead.degree().unwrap_or(0) > 0 {
            self.steps.push(Step::LeadingRoots {
                leading: lead.fmt_in("A"),
                roots: roots.iter().map(|r| r.to_string()).collect(),
            });
        }
        for r in &roots {
            self.univariate(&e, r);
        }
        match cs.len() - 1 {
            0 => Ok(()),
            1 => self.linear(&cs[1], &cs[0]),
            2 => self.quadratic(&e, &cs[2], &cs[1], &cs[0]),
            _ => self.dominance(),
        }
    }

    fn linear(&mut self, e1: &UniPoly, e0: &UniPoly) -> Result<(), SolveError> {
        if e1.degree() == Some(0) {
            let c = e1.coeff(0);
            if e0.is_zero() || (e0.content() % &c).is_zero() {
                let g = e0.div_exact_scalar(&c).scale(&bi(-1));
                self.steps.push(Step::Curve { b_of_a: g.fmt_in("A") });
                self.raw.curves.push(g);
                return Ok(());
            }
            return self.dominance();
        }
        let p = e1.primitive();
        let res = p.resultant(e0);
        if res.is_zero() {
            let g = if e0.is_zero() { p.clone() } else { p.gcd(e0) };
            self.steps.push(Step::GcdSplit { factor: g.fmt_in("A") });
            let reduced = BivarPoly::from_coeffs_in_b(&[
                e0.div_exact(&g).expect("gcd divides e0"),
                e1.div_exact(&g).expect("gcd divides e1"),
            ]);
            return self.solve(&reduced);
        }
        let cands = linear_candidates(&p, &res);
        self.steps.push(Step::Resultant {
            divisor: p.fmt_in("A"),
            resultant: res.to_string(),
            candidates: cands.iter().map(|c| c.to_string()).collect(),
        });
        for a in &cands {
            let d = e1.eval(a);
            if a.is_zero() || d.is_zero() {
                continue;
            }
            let (q, r) = (-e0.eval(a)).div_rem(&d);
            if r.is_zero() {
                self.raw.points.insert((a.clone(), q));
            }
        }
        Ok(())
    }

    fn quadratic(&mut self, e: &BivarPoly, e2: &UniPoly, e1: &UniPoly, e0: &UniPoly) -> Result<(), SolveError> {
        let disc = e1.mul(e1).sub(&e2.mul(e0).scale(&bi(4)));
        if let Some((scale, root)) = exact_sqrt(&disc) {
            self.steps.push(Step::SquareCompletion {
                discriminant: disc.fmt_in("A"),
                root: root.fmt_in("A"),
                scale: scale.to_string(),
            });
            // scale·(2 e2 B + e1) = ±root
            for sign in [1, -1] {
                let c0 = e1.scale(&scale).sub(&root.scale(&bi(sign)));
                let c1 = e2.scale(&(&scale * 2));
                self.solve(&BivarPoly::from_coeffs_in_b(&[c0, c1]))?;
            }
            return Ok(());
        }
        self.squeeze(e, &disc)
    }

    fn squeeze(&mut self, e: &BivarPoly, disc: &UniPoly) -> Result<(), SolveError> {
        // Δ = s² A^{2j} Δ'; squareness is unchanged for A ≠ 0.
        let content = disc.content();
        let sq = square_part(&content);
        let j = disc.low_order() / 2;
        let reduced = disc.div_exact_scalar(&(&sq * &sq)).shift_down(2 * j);
        let deg = reduced.degree().unwrap_or(0);
        let lc = reduced.leading();
        if deg == 0 {
            // Δ' is a non-square constant (squares were caught by exact completion).
            self.steps.push(Step::ConstantNonSquare { discriminant: disc.fmt_in("A") });
            return Ok(());
        }
        if deg.is_multiple_of(2) && lc.is_negative() {
            let cut = reduced.root_bound();
            self.steps.push(Step::NegativeDiscriminant { discriminant: disc.fmt_in("A"), a_cut: cut.to_string() });
            for a in symmetric(&cut) {
                if is_square(&disc.eval(&a)) {
                    self.univariate(e, &a);
                }
            }
            return Ok(());
        }
        let Some((lscale, q)) = approx_sqrt(&reduced) else {
            if let Some(m) = square_obstruction(&reduced) {
                self.steps.push(Step::NoSquareModulo { discriminant: disc.fmt_in("A"), modulus: m });
                return Ok(());
            }
            if self.filter.dominance_fallback {
                return self.dominance();
            }
            return Err(SolveError::SqueezeUnresolved {
                equation: self.eq.to_string(),
                discriminant: disc.fmt_in("A"),
            });
        };
        let scaled = reduced.scale(&(&lscale * &lscale));
        let rho = scaled.sub(&q.mul(&q));
        debug_assert!(!rho.is_zero());
        let holds = |a: &BigInt| {
            let qa = q.eval(a).abs() * 2 - 1;
            qa > rho.eval(a).abs()
        };
        let bound = squeeze_lower_bound(&q, &rho).root_bound();
        let mut a_cut = BigInt::zero();
        for a in symmetric(&bound) {
            if !holds(&a) && a.abs() > a_cut {
                a_cut = a.abs();
            }
        }
        let extra: Vec<BigInt> = rho.integer_roots().into_iter().filter(|r| r.abs() > a_cut).collect();
        let mut squares_at = Vec::new();
        for a in symmetric(&a_cut).into_iter().chain(extra.iter().cloned()) {
            if is_square(&disc.eval(&a)) {
                squares_at.push(a.to_string());
                self.univariate(e, &a);
            }
        }
        self.steps.push(Step::Squeeze {
            discriminant: disc.fmt_in("A"),
            reduced: reduced.fmt_in("A"),
            q: q.fmt_in("A"),
            rho: rho.fmt_in("A"),
            a_cut: a_cut.to_string(),
            extra: extra.iter().map(|r| r.to_string()).collect(),
            squares_at,
        });
        Ok(())
    }

    fn dominance(&mut self) -> Result<(), SolveError> {
        if self.dominance_done {
            return Ok(());
        }
        if !self.filter.dominant {
            return Err(SolveError::Unbounded { equation: self.eq.to_string() });
        }
        let terms = self.eq.nonzero_terms();
        let bound = dominance_bound(self.eq.kind, &terms).expect("two or more terms");
        self.dominance_done = true;
        self.steps.push(Step::Dominance { a_cut: bound.a_cut, ratios: bound.ratios.clone() });
        let e = self.eq.poly.clone();
        for a in symmetric(&BigInt::from(bound.a_cut)) {
            self.univariate(&e, &a);
        }
        Ok(())
    }
}

/// `1 ≤ |a| ≤ cut`, ascending.
fn symmetric(cut: &BigInt) -> Vec<BigInt> {
    let c = cut.to_string().parse::<i64>().expect("cutoff fits in i64");
    (-c..=c).filter(|&a| a != 0).map(BigInt::from).collect()
}

fn is_square(n: &BigInt) -> bool {
    !n.is_negative() && {
        let r = n.sqrt();
        &r * &r == *n
    }
}

/// Largest `s` with `s² | n`.
fn square_part(n: &BigInt) -> BigInt {
    let mut s = BigInt::one();
    let mut rest = n.abs();
    let mut d = BigInt::from(2);
    while &d * &d <= rest {
        let d2 = &d * &d;
        while (&rest % &d2).is_zero() {
            rest /= &d2;
            s *= &d;
        }
        while (&rest % &d).is_zero() {
            rest /= &d;
        }
        d += 1;
    }
    s
}

/// Smallest modulus `m ≤ OBSTRUCTION_MAX` for which `p(a) mod m` is never a square.
fn square_obstruction(p: &UniPoly) -> Option<u64> {
    (2..=OBSTRUCTION_MAX).find(|&m| {
        let mb = BigInt::from(m);
        let squares: BTreeSet<BigInt> = (0..m).map(|x| BigInt::from(x * x % m)).collect();
        (0..m).all(|a| !squares.contains(&p.eval(&BigInt::from(a)).mod_floor(&mb)))
    })
}

const OBSTRUCTION_MAX: u64 = 256;

/// Every integer `A` with `p(A) | r`, `r ≠ 0`.
pub fn linear_candidates(p: &UniPoly, r: &BigInt) -> Vec<BigInt> {
    let mut out = BTreeSet::new();
    for d in divisors(r) {
        for s in [d.clone(), -d] {
            let shifted = p.sub(&UniPoly::constant(s));
            if shifted.is_zero() {
                continue;
            }
            out.extend(shifted.integer_roots());
        }
    }
    out.into_iter().collect()
}

/// Rational square root of `Δ` truncated to the top half: `q` of degree `h` with
/// `Δ − q²` of degree `< h`, returned as `(L, L·q)` with integer coefficients.
fn approx_sqrt(delta: &UniPoly) -> Option<(BigInt, UniPoly)> {
    let deg = delta.degree()?;
    if deg % 2 == 1 {
        return None;
    }
    let lc = delta.leading();
    if !is_square(&lc) || lc.is_zero() {
        return None;
    }
    let h = deg / 2;
    let mut q = vec![BigRational::zero(); h + 1];
    q[h] = BigRational::from_integer(lc.sqrt());
    let two_top = &q[h] * BigInt::from(2);
    for i in 1..=h {
        let mut acc = BigRational::from_integer(delta.coeff(deg - i));
        for j in 1..i {
            acc -= &q[h - j] * &q[h - i + j];
        }
        q[h - i] = acc / &two_top;
    }
    let l = q.iter().fold(BigInt::one(), |acc, c| acc.lcm(c.denom()));
    let coeffs = q.iter().map(|c| (c * BigRational::from_integer(l.clone())).to_integer()).collect();
    Some((l, UniPoly::new(coeffs)))
}

/// `Δ = (root/scale)²` exactly.
fn exact_sqrt(delta: &UniPoly) -> Option<(BigInt, UniPoly)> {
    if delta.is_zero() {
        return Some((BigInt::one(), UniPoly::zero()));
    }
    let (l, q) = approx_sqrt(delta)?;
    (delta.scale(&(&l * &l)) == q.mul(&q)).then_some((l, q))
}

/// Polynomial in `x = |A|` bounding `2|q(A)| − 1 − |ρ(A)|` from below.
fn squeeze_lower_bound(q: &UniPoly, rho: &UniPoly) -> UniPoly {
    let h = q.degree().unwrap_or(0);
    let mut c: Vec<BigInt> = (0..=h)
        .map(|i| {
            let qi: BigInt = q.coeff(i).abs() * 2;
            let ri = rho.coeff(i).abs();
            if i == h {
                qi - ri
            } else {
                -qi - ri
            }
        })
        .collect();
    c[0] -= 1;
    UniPoly::new(c)
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct CaseSolution {
    pub equation: String,
    pub steps: Vec<Step>,
    #[serde(skip)]
    pub raw: RawSolutions,
}

/// Complete integer solution set of `E = 0` with `A ≠ 0`, before the domain filter.
///
/// Every reported point, free `A` and curve is re-substituted into `E`.
pub fn solve_case(eq: &CaseEquation, filter: &DomainFilter) -> Result<CaseSolution, SolveError> {
    let mut ctx = Ctx { eq, filter, steps: Vec::new(), raw: RawSolutions::default(), dominance_done: false };
    ctx.solve(&eq.poly)?;
    let e = &eq.poly;
    let mut raw = ctx.raw;
    raw.points.retain(|(a, b)| e.eval(a, b).is_zero());
    raw.free_a.retain(|a| e.at_a(a).is_zero());
    raw.curves.retain(|g| substitute_curve(e, g).is_zero());
    let free = raw.free_a.clone();
    raw.points.retain(|(a, _)| !free.contains(a));
    Ok(CaseSolution { equation: eq.to_string(), steps: ctx.steps, raw })
}

/// `E(A, g(A))` as a polynomial in `A`.
pub fn substitute_curve(e: &BivarPoly, g: &UniPoly) -> UniPoly {
    let mut acc = UniPoly::zero();
    let mut gp = UniPoly::constant(1);
    for c in e.coeffs_in_b() {
        acc = acc.add(&c.mul(&gp));
        gp = gp.mul(g);
    }
    acc
}
