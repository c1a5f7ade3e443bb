//! Period function on the center path: polar reduction, periodic solution
//! series, and the isochronicity constants of the period expansion.

use std::collections::BTreeMap;
use std::fmt;

use num_traits::Zero;

use crate::error::{Error, Result};
use crate::field::{Field, Gauss, Rational};
use crate::normalform::NormalForm3;
use crate::polysys::StatePoly;

/// Finite Fourier sum `Σ c_n e^{inθ}`.
#[derive(Clone, PartialEq)]
pub struct TrigPoly<T: Field> {
    coeffs: BTreeMap<i32, Gauss<T>>,
}

impl<T: Field> Default for TrigPoly<T> {
    fn default() -> Self {
        TrigPoly { coeffs: BTreeMap::new() }
    }
}

impl<T: Field> fmt::Debug for TrigPoly<T> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_map().entries(self.coeffs.iter()).finish()
    }
}

fn half<T: Field>() -> T {
    T::from_rational(&Rational::new(1.into(), 2.into()))
}

impl<T: Field> TrigPoly<T> {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn constant(c: T) -> Self {
        Self::harmonic(0, Gauss::real(c))
    }

    pub fn harmonic(n: i32, c: Gauss<T>) -> Self {
        let mut out = Self::zero();
        out.add_coeff(n, c);
        out
    }

    pub fn cos() -> Self {
        let h = Gauss::real(half());
        let mut out = Self::harmonic(1, h.clone());
        out.add_coeff(-1, h);
        out
    }

    pub fn sin() -> Self {
        // (e^{iθ} - e^{-iθ}) / (2i)
        let h: T = half();
        let mut out = Self::harmonic(1, Gauss::new(T::zero(), -h.clone()));
        out.add_coeff(-1, Gauss::new(T::zero(), h));
        out
    }

    fn add_coeff(&mut self, n: i32, c: Gauss<T>) {
        if c.is_zero() {
            return;
        }
        let slot = self.coeffs.entry(n).or_insert_with(Gauss::zero);
        slot.add_assign_ref(&c);
        if slot.is_zero() {
            self.coeffs.remove(&n);
        }
    }

    pub fn coeff(&self, n: i32) -> Gauss<T> {
        self.coeffs.get(&n).cloned().unwrap_or_else(Gauss::zero)
    }

    pub fn coeffs(&self) -> impl Iterator<Item = (&i32, &Gauss<T>)> {
        self.coeffs.iter()
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn approx_zero(&self, tol: f64) -> bool {
        self.coeffs.values().all(|c| c.approx_zero(tol))
    }

    /// Highest `|n|` with a nonzero coefficient.
    pub fn max_harmonic(&self) -> i32 {
        self.coeffs.keys().map(|n| n.abs()).max().unwrap_or(0)
    }

    /// Mean value over one period.
    pub fn mean(&self) -> T {
        self.coeff(0).re
    }

    /// `c_{-n} = conj(c_n)` for every `n`.
    pub fn is_real(&self, tol: f64) -> bool {
        let all: Vec<i32> = self.coeffs.keys().copied().collect();
        all.into_iter().all(|n| {
            let a = self.coeff(n);
            let b = self.coeff(-n).conj();
            let scale = 1.0 + a.magnitude().max(b.magnitude());
            (a - b).approx_zero(tol * scale)
        })
    }

    pub fn add(&self, other: &Self) -> Self {
        let mut out = self.clone();
        for (n, c) in &other.coeffs {
            out.add_coeff(*n, c.clone());
        }
        out
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.add(&other.neg())
    }

    pub fn neg(&self) -> Self {
        TrigPoly { coeffs: self.coeffs.iter().map(|(n, c)| (*n, -c.clone())).collect() }
    }

    pub fn scale(&self, k: &Gauss<T>) -> Self {
        let mut out = Self::zero();
        for (n, c) in &self.coeffs {
            out.add_coeff(*n, c.mul_ref(k));
        }
        out
    }

    pub fn scale_real(&self, k: &T) -> Self {
        self.scale(&Gauss::real(k.clone()))
    }

    pub fn mul(&self, other: &Self) -> Self {
        let mut out = Self::zero();
        for (n, a) in &self.coeffs {
            for (m, b) in &other.coeffs {
                out.add_coeff(n + m, a.mul_ref(b));
            }
        }
        out
    }

    pub fn pow(&self, k: u32) -> Self {
        let mut out = Self::constant(T::one());
        for _ in 0..k {
            out = out.mul(self);
        }
        out
    }

    pub fn derivative(&self) -> Self {
        let mut out = Self::zero();
        for (n, c) in &self.coeffs {
            out.add_coeff(*n, c.mul_i().scale(&T::from_i64(*n as i64)));
        }
        out
    }

    /// Periodic part of the antiderivative, normalized to vanish at `θ = 0`;
    /// the mean contributes `mean·θ`, which is returned separately.
    pub fn integrate(&self) -> (T, Self) {
        let mut out = Self::zero();
        let mut at_zero = Gauss::zero();
        for (n, c) in &self.coeffs {
            if *n == 0 {
                continue;
            }
            let k = c.mul_i().scale(&T::from_rational(&Rational::new((-1).into(), (*n).into())));
            at_zero.add_assign_ref(&k);
            out.add_coeff(*n, k);
        }
        out.add_coeff(0, -at_zero);
        (self.mean(), out)
    }

    /// The unique periodic solution of `y' = λy + g` (λ ≠ 0).
    pub fn solve_forced(&self, lambda: &T) -> Result<Self> {
        let mut out = Self::zero();
        for (n, c) in &self.coeffs {
            let den = Gauss::new(-lambda.clone(), T::from_i64(*n as i64));
            let inv = den.try_inv().ok_or(Error::DegenerateLambda)?;
            out.add_coeff(*n, c.mul_ref(&inv));
        }
        Ok(out)
    }

    pub fn map<U: Field, F: Fn(&T) -> U>(&self, f: F) -> TrigPoly<U> {
        let mut out = TrigPoly::zero();
        for (n, c) in &self.coeffs {
            out.add_coeff(*n, Gauss::new(f(&c.re), f(&c.im)));
        }
        out
    }
}

impl TrigPoly<f64> {
    /// Real part of the sum at `θ`.
    pub fn eval(&self, theta: f64) -> f64 {
        self.coeffs.iter().map(|(n, c)| c.re * (*n as f64 * theta).cos() - c.im * (*n as f64 * theta).sin()).sum()
    }
}

/// Truncated power series in `(ρ, ω)` with trigonometric coefficients; the
/// key is `(ρ-power, ω-power)` and terms above the total-degree bound are
/// dropped.
#[derive(Clone, Debug, PartialEq)]
pub struct RhoOmegaSeries<T: Field> {
    pub terms: BTreeMap<(u32, u32), TrigPoly<T>>,
    pub max_order: u32,
}

impl<T: Field> RhoOmegaSeries<T> {
    fn new(max_order: u32) -> Self {
        RhoOmegaSeries { terms: BTreeMap::new(), max_order }
    }

    fn add_term(&mut self, key: (u32, u32), c: &TrigPoly<T>) {
        if key.0 + key.1 > self.max_order || c.is_zero() {
            return;
        }
        let slot = self.terms.entry(key).or_default();
        *slot = slot.add(c);
        if slot.is_zero() {
            self.terms.remove(&key);
        }
    }

    fn add(&self, other: &Self) -> Self {
        let mut out = self.clone();
        for (k, c) in &other.terms {
            out.add_term(*k, c);
        }
        out
    }

    fn mul(&self, other: &Self) -> Self {
        let mut out = Self::new(self.max_order.min(other.max_order));
        for (a, x) in &self.terms {
            for (b, y) in &other.terms {
                let key = (a.0 + b.0, a.1 + b.1);
                if key.0 + key.1 <= out.max_order {
                    out.add_term(key, &x.mul(y));
                }
            }
        }
        out
    }

    fn shift(&self, rho: u32, omega: u32) -> Self {
        let mut out = Self::new(self.max_order);
        for (k, c) in &self.terms {
            out.add_term((k.0 + rho, k.1 + omega), c);
        }
        out
    }

    /// Lowest total degree carrying a nonzero term.
    pub fn order(&self) -> Option<u32> {
        self.terms.keys().map(|k| k.0 + k.1).min()
    }

    pub fn coeff(&self, rho: u32, omega: u32) -> TrigPoly<T> {
        self.terms.get(&(rho, omega)).cloned().unwrap_or_default()
    }
}

/// Quasi-cylindrical form `u = ρ cos θ`, `v = ρ sin θ`, `w = ρ ω` with `θ` as
/// the independent variable.
#[derive(Clone, Debug, PartialEq)]
pub struct PolarReduction<T: Field> {
    pub lambda: T,
    /// `dρ/dθ`.
    pub radial: RhoOmegaSeries<T>,
    /// `dω/dθ - λω`.
    pub omega: RhoOmegaSeries<T>,
    /// `dθ/dt - 1`.
    pub speed: RhoOmegaSeries<T>,
}

/// Polar reduction of the canonical-frame nonlinearity through total
/// `(ρ, ω)` order `order`.
pub fn polar_reduce<T: Field>(nf: &NormalForm3<T>, order: u32) -> PolarReduction<T> {
    let [p, q, r] = nf.canonical();
    let cos = TrigPoly::<T>::cos();
    let sin = TrigPoly::<T>::sin();
    let top = order + 1;
    // ρ^{j-1} ω^γ-coefficients of P/ρ, Q/ρ, R/ρ evaluated at (cos θ, sin θ, ω).
    let reduce = |s: &StatePoly<T>| {
        let mut out = RhoOmegaSeries::new(top);
        for (e, c) in s.terms() {
            let j = e[0] + e[1] + e[2];
            if j == 0 {
                continue;
            }
            let trig = cos.pow(e[0]).mul(&sin.pow(e[1])).scale_real(c);
            out.add_term((j - 1, e[2]), &trig);
        }
        out
    };
    let (pt, qt, rt) = (reduce(&p), reduce(&q), reduce(&r));
    let by = |s: &RhoOmegaSeries<T>, t: &TrigPoly<T>| {
        let mut out = RhoOmegaSeries::new(top);
        for (k, c) in &s.terms {
            out.add_term(*k, &c.mul(t));
        }
        out
    };
    let neg = |s: &RhoOmegaSeries<T>| {
        let mut out = RhoOmegaSeries::new(top);
        for (k, c) in &s.terms {
            out.add_term(*k, &c.neg());
        }
        out
    };
    // ρ̇/ρ = P̃cos + Q̃sin, θ̇ - 1 = Q̃cos - P̃sin, ω̇ - λω = R̃ - ω ρ̇/ρ.
    let a = by(&pt, &cos).add(&by(&qt, &sin));
    let speed = by(&qt, &cos).add(&neg(&by(&pt, &sin)));
    let c = rt.add(&neg(&a.shift(0, 1)));

    // 1/θ̇ = Σ (-speed)^k; speed has total order ≥ 1.
    let mut inv = RhoOmegaSeries::new(top);
    inv.add_term((0, 0), &TrigPoly::constant(T::one()));
    let minus = neg(&speed);
    let mut power = inv.clone();
    for _ in 0..top {
        power = power.mul(&minus);
        if power.terms.is_empty() {
            break;
        }
        inv = inv.add(&power);
    }

    let radial = a.mul(&inv).shift(1, 0);
    let mut lin = RhoOmegaSeries::new(top);
    lin.add_term((0, 1), &TrigPoly::constant(nf.lambda.clone()));
    let mut one = RhoOmegaSeries::new(top);
    one.add_term((0, 0), &TrigPoly::constant(T::one()));
    let inv_minus_one = inv.add(&neg(&one));
    let omega = c.mul(&inv).add(&lin.mul(&inv_minus_one));
    let mut speed = speed;
    speed.max_order = order;
    speed.terms.retain(|k, _| k.0 + k.1 <= order);
    PolarReduction { lambda: nf.lambda.clone(), radial, omega, speed }
}

/// Power series in `ρ₀` with trigonometric coefficients.
pub type Series<T> = Vec<TrigPoly<T>>;

fn series_mul<T: Field>(a: &Series<T>, b: &Series<T>, top: usize) -> Series<T> {
    let mut out = vec![TrigPoly::zero(); top + 1];
    for (i, x) in a.iter().enumerate().take(top + 1) {
        if x.is_zero() {
            continue;
        }
        for (j, y) in b.iter().enumerate().take(top + 1 - i) {
            if !y.is_zero() {
                out[i + j] = out[i + j].add(&x.mul(y));
            }
        }
    }
    out
}

/// Substitute `ρ = ρ₀ U`, `ω = W` into a `(ρ, ω)` series, through `ρ₀^top`.
fn substitute<T: Field>(s: &RhoOmegaSeries<T>, u: &Series<T>, w: &Series<T>, top: usize) -> Series<T> {
    let mut rho = vec![TrigPoly::zero(); top + 1];
    for (i, c) in u.iter().enumerate() {
        if i < top {
            rho[i + 1] = c.clone();
        }
    }
    let max_p = s.terms.keys().map(|k| k.0).max().unwrap_or(0) as usize;
    let max_q = s.terms.keys().map(|k| k.1).max().unwrap_or(0) as usize;
    let mut one = vec![TrigPoly::zero(); top + 1];
    one[0] = TrigPoly::constant(T::one());
    let mut rho_pow = vec![one.clone()];
    for p in 1..=max_p {
        rho_pow.push(series_mul(&rho_pow[p - 1], &rho, top));
    }
    let mut w_pow = vec![one];
    for q in 1..=max_q {
        w_pow.push(series_mul(&w_pow[q - 1], w, top));
    }
    let mut out = vec![TrigPoly::zero(); top + 1];
    for ((p, q), c) in &s.terms {
        let (p, q) = (*p as usize, *q as usize);
        if p + q > top {
            continue;
        }
        let term = series_mul(&rho_pow[p], &w_pow[q], top);
        for (k, t) in term.iter().enumerate() {
            if !t.is_zero() {
                out[k] = out[k].add(&t.mul(c));
            }
        }
    }
    out
}

/// Solution `ρ = ρ₀ Σ u_i ρ₀^i`, `ω = Σ v_i ρ₀^i` on the periodic path.
#[derive(Clone, Debug, PartialEq)]
pub struct PeriodicSeries<T: Field> {
    pub u: Series<T>,
    pub v: Series<T>,
}

/// Result of building the periodic series: either all requested orders, or
/// the first radial order whose forcing has nonzero mean.
#[derive(Clone, Debug, PartialEq)]
pub enum SeriesOutcome<T: Field> {
    Periodic(PeriodicSeries<T>),
    /// `ρ(2π) - ρ₀ = 2π·mean·ρ₀^order + …`; `partial` holds the orders
    /// below the obstruction.
    Obstructed { order: usize, mean: T, partial: PeriodicSeries<T> },
}

fn tol<T: Field>() -> f64 {
    if T::is_exact() {
        0.0
    } else {
        1e-11
    }
}

/// Build `u_0..u_m`, `v_0..v_m`, stopping at a secular radial term.
pub fn try_periodic_solution_series<T: Field>(nf: &NormalForm3<T>, m: usize) -> Result<SeriesOutcome<T>> {
    if nf.lambda.approx_zero(tol::<T>()) {
        return Err(Error::DegenerateLambda);
    }
    let red = polar_reduce(nf, m as u32 + 1);
    let mut u = vec![TrigPoly::constant(T::one())];
    let mut v = vec![TrigPoly::zero()];
    for n in 1..=m {
        let radial = substitute(&red.radial, &u, &v, n + 1);
        let h = &radial[n + 1];
        let mean = h.mean();
        let scale = 1.0 + h.coeffs().map(|(_, c)| c.magnitude()).fold(0.0, f64::max);
        if !mean.approx_zero(tol::<T>() * scale) {
            return Ok(SeriesOutcome::Obstructed { order: n + 1, mean, partial: PeriodicSeries { u, v } });
        }
        let (_, un) = h.integrate();
        let omega = substitute(&red.omega, &u, &v, n);
        let vn = omega[n].solve_forced(&nf.lambda)?;
        u.push(un);
        v.push(vn);
    }
    Ok(SeriesOutcome::Periodic(PeriodicSeries { u, v }))
}

/// Periodic-solution series through order `m`; a secular radial term is a
/// [`Error::FocusObstruction`].
pub fn periodic_solution_series<T: Field>(nf: &NormalForm3<T>, m: usize) -> Result<PeriodicSeries<T>> {
    match try_periodic_solution_series(nf, m)? {
        SeriesOutcome::Periodic(s) => Ok(s),
        SeriesOutcome::Obstructed { order, mean, .. } => {
            Err(Error::FocusObstruction { order, value: format!("2*pi*({mean:?})") })
        }
    }
}

/// `T(ρ₀) = 2π(1 + Σ T_k ρ₀^k)` for the positive minimal period.
#[derive(Clone, Debug, PartialEq)]
pub struct PeriodExpansion<T: Field> {
    /// `T₂, T₄, …, T_{2m}`.
    pub constants: Vec<T>,
    /// Means of `Ψ₁, Ψ₃, …, Ψ_{2m+1}`; zero on a center.
    pub odd: Vec<T>,
    /// `F_1, F_2, …`: `dθ/dt = 1 + Σ F_k ρ₀^k` on the periodic path.
    pub f: Series<T>,
    /// `Ψ_1, Ψ_2, …`: `dt/dθ = 1 + Σ Ψ_k ρ₀^k`.
    pub psi: Series<T>,
}

impl<T: Field> PeriodExpansion<T> {
    /// `Φ_k(θ) = ∫₀^θ Ψ_k`, returned as `(mean, periodic part)` so that
    /// `Φ_k(θ) = mean·θ + periodic(θ)`.
    pub fn phi(&self, k: usize) -> Option<(T, TrigPoly<T>)> {
        self.psi.get(k).map(TrigPoly::integrate)
    }

    pub fn is_isochronous(&self) -> bool {
        self.constants.iter().all(|t| t.approx_zero(tol::<T>()))
    }
}

pub fn isochronicity_constants<T: Field>(nf: &NormalForm3<T>, m: usize) -> Result<PeriodExpansion<T>> {
    let top = 2 * m + 1;
    let series = periodic_solution_series(nf, 2 * m)?;
    let red = polar_reduce(nf, top as u32);
    let f = substitute(&red.speed, &series.u, &series.v, top);
    // Ψ = 1/(1 + F) through ρ₀^top.
    let mut minus_f: Series<T> = f.iter().map(TrigPoly::neg).collect();
    minus_f[0] = TrigPoly::zero();
    let mut psi = vec![TrigPoly::zero(); top + 1];
    psi[0] = TrigPoly::constant(T::one());
    let mut power = psi.clone();
    for _ in 0..top {
        power = series_mul(&power, &minus_f, top);
        for (k, t) in power.iter().enumerate() {
            psi[k] = psi[k].add(t);
        }
    }
    let constants = (1..=m).map(|k| psi[2 * k].mean()).collect();
    let odd = (0..=m).map(|k| psi[2 * k + 1].mean()).collect();
    Ok(PeriodExpansion { constants, odd, f, psi })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::{int, rat};
    use crate::polysys::VectorField3;

    type P = StatePoly<Rational>;

    fn e1_center(d: i64) -> NormalForm3<Rational> {
        let (u, v, w) = (P::var(0), P::var(1), P::var(2));
        let d = int(d);
        let f = VectorField3::new([
            v.add(&v.mul(&w).scale(&d)),
            u.neg().sub(&u.mul(&w).scale(&d)),
            w.scale(&-(&d * &d)).add(&u.mul(&v).scale(&d)),
        ]);
        NormalForm3::from_field(f).unwrap()
    }

    #[test]
    fn trig_basics() {
        let c = TrigPoly::<Rational>::cos();
        let s = TrigPoly::<Rational>::sin();
        let one = c.mul(&c).add(&s.mul(&s));
        assert_eq!(one, TrigPoly::constant(int(1)));
        assert_eq!(c.derivative(), s.neg());
        assert!(s.is_real(0.0));
        let (mean, per) = c.integrate();
        assert_eq!(mean, int(0));
        assert_eq!(per, s);
        assert_eq!(c.mul(&c).mean(), rat(1, 2));
    }

    #[test]
    fn forced_solution_satisfies_equation() {
        let g = TrigPoly::<Rational>::cos().pow(3).add(&TrigPoly::constant(int(2)));
        let lambda = int(-3);
        let y = g.solve_forced(&lambda).unwrap();
        assert_eq!(y.derivative(), y.scale_real(&lambda).add(&g));
    }

    #[test]
    fn linear_normal_form_reduces_to_nothing() {
        let (u, v, w) = (P::var(0), P::var(1), P::var(2));
        let nf = NormalForm3::from_field(VectorField3::new([v.neg(), u, w.neg()])).unwrap();
        let red = polar_reduce(&nf, 4);
        assert!(red.radial.terms.is_empty() && red.omega.terms.is_empty() && red.speed.terms.is_empty());
    }

    #[test]
    fn radial_equation_starts_at_second_order() {
        let (u, v, w) = (P::var(0), P::var(1), P::var(2));
        let nf = NormalForm3::from_field(VectorField3::new([v.neg().add(&u.mul(&u)), u, w.neg()])).unwrap();
        assert_eq!(polar_reduce(&nf, 4).radial.order(), Some(2));
        // u² + v² is conserved on the center, so ρ stays constant.
        let red = polar_reduce(&e1_center(1), 4);
        assert!(red.radial.terms.is_empty());
        assert_eq!(red.omega.coeff(1, 0), TrigPoly::cos().mul(&TrigPoly::sin()));
        let s = periodic_solution_series(&e1_center(1), 3).unwrap();
        assert_eq!(s.u[0], TrigPoly::constant(int(1)));
        assert!(s.u[1..].iter().all(TrigPoly::is_zero));
        assert!(s.v[0].is_zero());
    }

    #[test]
    fn isochronicity_constants_of_the_center() {
        for (d, t4) in [(1, rat(1, 40)), (2, rat(1, 10))] {
            let e = isochronicity_constants(&e1_center(d), 2).unwrap();
            assert_eq!(e.constants[0], int(0));
            assert_eq!(e.constants[1], t4);
            assert!(e.odd.iter().all(|x| x == &int(0)));
            assert!(!e.is_isochronous());
        }
    }
}
