//! Hopf normal form: rotation block plus one real eigendirection.

use crate::error::{Error, Result};
use crate::field::{ExactSqrt, Field, Ordered};
use crate::polysys::{char_cubic, cross, hopf_test, HopfVerdict, Matrix3, StatePoly, VectorField3};

/// Sense of rotation of the linear block: `+1` for `u' = -v, v' = u`,
/// `-1` for `u' = v, v' = -u`.
pub type Orientation = i8;

#[derive(Clone, Debug, PartialEq)]
pub struct NormalTransform<T> {
    pub shift: [T; 3],
    pub linear: Matrix3<T>,
    pub time_scale: T,
}

#[derive(Clone, Debug, PartialEq)]
pub struct NormalForm3<T> {
    pub field: VectorField3<T>,
    pub lambda: T,
    pub orientation: Orientation,
    pub transform: Option<NormalTransform<T>>,
}

fn tolerance<T: Field>(tol: f64) -> f64 {
    if T::is_exact() {
        0.0
    } else {
        tol
    }
}

impl<T: Field> NormalForm3<T> {
    /// Validate that `field` already has the normal-form linear part.
    pub fn from_field(field: VectorField3<T>) -> Result<Self> {
        Self::validated(field, None, 1e-9)
    }

    fn validated(mut field: VectorField3<T>, transform: Option<NormalTransform<T>>, tol: f64) -> Result<Self> {
        let tol = tolerance::<T>(tol);
        let bad = |msg: String| Error::BadTransform(msg);
        for (i, comp) in field.comps.iter().enumerate() {
            if !comp.coeff(&[0, 0, 0]).approx_zero(tol) {
                return Err(bad(format!("component {i} has a constant term")));
            }
        }
        let m = field.linear_part();
        let orientation: Orientation = if (m[0][1].clone() + T::one()).approx_zero(tol) {
            1
        } else if (m[0][1].clone() - T::one()).approx_zero(tol) {
            -1
        } else {
            return Err(bad(format!("u-equation has v-coefficient {:?}, expected ±1", m[0][1])));
        };
        let o = T::from_i64(orientation as i64);
        let expect: Matrix3<T> = [
            [T::zero(), -o.clone(), T::zero()],
            [o, T::zero(), T::zero()],
            [T::zero(), T::zero(), m[2][2].clone()],
        ];
        for i in 0..3 {
            for j in 0..3 {
                if !(m[i][j].clone() - expect[i][j].clone()).approx_zero(tol) {
                    return Err(bad(format!("linear entry ({i},{j}) is {:?}, expected {:?}", m[i][j], expect[i][j])));
                }
            }
        }
        let lambda = m[2][2].clone();
        if lambda.approx_zero(tol) {
            return Err(Error::DegenerateLambda);
        }
        // Snap rounding noise in the linear block to the exact values.
        if !T::is_exact() {
            for i in 0..3 {
                let mut comp = field.comps[i].tail(2);
                for j in 0..3 {
                    let mut e = [0, 0, 0];
                    e[j] = 1;
                    comp.add_term(e, expect[i][j].clone());
                }
                field.comps[i] = comp;
            }
        }
        Ok(NormalForm3 { field, lambda, orientation, transform })
    }

    /// Nonlinear parts `(P, Q, R)` in the system's own frame.
    pub fn nonlinear(&self) -> [StatePoly<T>; 3] {
        std::array::from_fn(|i| self.field.comps[i].tail(2))
    }

    /// Nonlinear parts in the frame where the rotation is `u' = -v, v' = u`;
    /// for orientation `-1` this exchanges `u` and `v`.
    pub fn canonical(&self) -> [StatePoly<T>; 3] {
        let [p, q, r] = self.nonlinear();
        if self.orientation == 1 {
            [p, q, r]
        } else {
            [q.swap_vars(0, 1), p.swap_vars(0, 1), r.swap_vars(0, 1)]
        }
    }

    pub fn map<U: Field, F: Fn(&T) -> U>(&self, f: F) -> NormalForm3<U> {
        NormalForm3 {
            field: self.field.map(&f),
            lambda: f(&self.lambda),
            orientation: self.orientation,
            transform: self.transform.as_ref().map(|t| NormalTransform {
                shift: std::array::from_fn(|i| f(&t.shift[i])),
                linear: std::array::from_fn(|i| std::array::from_fn(|j| f(&t.linear[i][j]))),
                time_scale: f(&t.time_scale),
            }),
        }
    }

    /// `transform(original) - normal form`; zero when the stored transform
    /// reproduces the normal form.
    pub fn round_trip_residual(&self, original: &VectorField3<T>) -> Result<Option<VectorField3<T>>> {
        let Some(t) = &self.transform else { return Ok(None) };
        let g = original.transform(&t.shift, &t.linear, &t.time_scale)?;
        Ok(Some(g.sub(&self.field)))
    }
}

/// Normal form at `equilibrium` using a supplied linear change of coordinates
/// and time scale.
pub fn to_normal_form<T: Ordered + ExactSqrt>(
    f: &VectorField3<T>,
    equilibrium: &[T; 3],
    linear: &Matrix3<T>,
    time_scale: &T,
) -> Result<NormalForm3<T>> {
    let jac = f.jacobian_at(equilibrium);
    let report = hopf_test(&char_cubic(&jac), 1e-9);
    if report.verdict == HopfVerdict::NotHopf {
        return Err(Error::NotHopf(format!("residual {:?}, beta {:?}", report.residual, report.beta)));
    }
    let g = f.transform(equilibrium, linear, time_scale)?;
    let t = NormalTransform { shift: equilibrium.clone(), linear: linear.clone(), time_scale: time_scale.clone() };
    NormalForm3::validated(g, Some(t), 1e-9)
}

/// Normal form from numerically computed eigenvectors: with `J v = iω v`
/// and `J r = λ r`, the columns `(Im v, Re v, r)` and time scale `ω` give
/// the counter-clockwise rotation block.
pub fn numeric_normal_form(f: &VectorField3<f64>, equilibrium: &[f64; 3]) -> Result<NormalForm3<f64>> {
    let jac = f.jacobian_at(equilibrium);
    let cubic = char_cubic(&jac);
    let report = hopf_test(&cubic, 1e-9);
    if !report.is_hopf {
        return Err(Error::NotHopf(format!("residual {:e}, beta {:e}", report.residual, report.beta)));
    }
    let omega = report.beta.sqrt();
    let lambda = report.lambda3;

    // Complex null vector of J - iω.
    let re: Matrix3<f64> = jac;
    let im: Matrix3<f64> = std::array::from_fn(|i| std::array::from_fn(|j| if i == j { -omega } else { 0.0 }));
    let mut best: Option<([f64; 3], [f64; 3])> = None;
    let mut best_norm = 0.0;
    for (a, b) in [(0, 1), (0, 2), (1, 2)] {
        let (vr, vi) = complex_cross((&re[a], &im[a]), (&re[b], &im[b]));
        let n: f64 = (0..3).map(|k| vr[k] * vr[k] + vi[k] * vi[k]).sum();
        if n > best_norm {
            best_norm = n;
            best = Some((vr, vi));
        }
    }
    let (mut vr, mut vi) = best.ok_or_else(|| Error::BadTransform("no complex eigenvector".into()))?;
    // Scale so that the largest component becomes 1.
    let k = (0..3).max_by(|&a, &b| (vr[a].hypot(vi[a])).total_cmp(&vr[b].hypot(vi[b]))).unwrap_or(0);
    let (pr, pi) = (vr[k], vi[k]);
    let den = pr * pr + pi * pi;
    for j in 0..3 {
        let (a, b) = (vr[j], vi[j]);
        vr[j] = (a * pr + b * pi) / den;
        vi[j] = (b * pr - a * pi) / den;
    }

    let shifted: Matrix3<f64> = std::array::from_fn(|i| std::array::from_fn(|j| jac[i][j] - if i == j { lambda } else { 0.0 }));
    let mut r = [0.0; 3];
    let mut rn = 0.0;
    for (a, b) in [(0, 1), (0, 2), (1, 2)] {
        let c = cross(&shifted[a], &shifted[b]);
        let n = c.iter().map(|x| x * x).sum::<f64>();
        if n > rn {
            rn = n;
            r = c;
        }
    }
    if rn == 0.0 {
        return Err(Error::BadTransform("no real eigenvector".into()));
    }
    let rn = rn.sqrt();
    r.iter_mut().for_each(|x| *x /= rn);

    let linear: Matrix3<f64> = std::array::from_fn(|i| [vi[i], vr[i], r[i]]);
    let g = f.transform(equilibrium, &linear, &omega)?;
    let t = NormalTransform { shift: *equilibrium, linear, time_scale: omega };
    NormalForm3::validated(g, Some(t), 1e-8)
}

type CRow<'a> = (&'a [f64; 3], &'a [f64; 3]);

/// Bilinear cross product of two complex 3-vectors given as (re, im).
fn complex_cross(a: CRow<'_>, b: CRow<'_>) -> ([f64; 3], [f64; 3]) {
    let mut re = [0.0; 3];
    let mut im = [0.0; 3];
    for k in 0..3 {
        let (i, j) = ((k + 1) % 3, (k + 2) % 3);
        // a_i b_j - a_j b_i
        let (ar_i, ai_i, ar_j, ai_j) = (a.0[i], a.1[i], a.0[j], a.1[j]);
        let (br_i, bi_i, br_j, bi_j) = (b.0[i], b.1[i], b.0[j], b.1[j]);
        re[k] = (ar_i * br_j - ai_i * bi_j) - (ar_j * br_i - ai_j * bi_i);
        im[k] = (ar_i * bi_j + ai_i * br_j) - (ar_j * bi_i + ai_j * br_i);
    }
    (re, im)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::{int, Rational};

    #[test]
    fn rejects_wrong_linear_part() {
        let f = VectorField3::<Rational>::new([StatePoly::var(1).scale(&int(2)), StatePoly::var(0).neg(), StatePoly::var(2)]);
        assert!(matches!(NormalForm3::from_field(f), Err(Error::BadTransform(_))));
        let g = VectorField3::<Rational>::new([StatePoly::var(1), StatePoly::var(0).neg(), StatePoly::zero()]);
        assert_eq!(NormalForm3::from_field(g), Err(Error::DegenerateLambda));
    }

    #[test]
    fn canonical_swaps_clockwise_frame() {
        let u = StatePoly::<Rational>::var(0);
        let v = StatePoly::<Rational>::var(1);
        let w = StatePoly::<Rational>::var(2);
        let f = VectorField3::new([v.add(&u.mul(&w)), u.neg(), w.neg().add(&v.mul(&v))]);
        let nf = NormalForm3::from_field(f).unwrap();
        assert_eq!(nf.orientation, -1);
        let [p, q, r] = nf.canonical();
        assert!(p.is_zero());
        assert_eq!(q, v.mul(&w));
        assert_eq!(r, u.mul(&u));
    }
}
