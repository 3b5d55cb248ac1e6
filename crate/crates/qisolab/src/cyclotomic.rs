//! Exact arithmetic in cyclotomic fields.
//!
//! A [`CyclotomicScalar`] is an element of `Q(zeta_N)` stored in the power
//! basis `1, zeta, ..., zeta^(phi(N)-1)` modulo the `N`-th cyclotomic
//! polynomial `Phi_N`.  Working modulo `Phi_N` (rather than `x^N - 1`) makes
//! the representation a field with canonical equality: two scalars are equal
//! exactly when their coefficient vectors are, so relation residuals are
//! exactly zero or exactly nonzero.  No floating point is involved anywhere.
//!
//! Operands of different orders are lifted to the least common multiple of
//! the orders; the supported orders are `1..=MAX_ORDER`.
//!
//! ```
//! use qisolab::cyclotomic::CyclotomicScalar;
//!
//! // sqrt(2) lives in Q(zeta_8): (zeta_8 + zeta_8^7)^2 = 2.
//! let s = CyclotomicScalar::root_of_unity(8, 1).unwrap()
//!     + CyclotomicScalar::root_of_unity(8, 7).unwrap();
//! assert_eq!(&s * &s, CyclotomicScalar::from_int(2));
//! ```

use std::collections::HashMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};
use std::sync::{Arc, Mutex, OnceLock};

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, ToPrimitive, Zero};

use crate::rational::Rational;

/// Largest supported root-of-unity order.
pub const MAX_ORDER: u32 = 360;

/// Errors from exact scalar and matrix arithmetic.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum ArithError {
    /// Requested order is zero or exceeds [`MAX_ORDER`].
    UnsupportedOrder(u32),
    /// Combining two orders would exceed [`MAX_ORDER`].
    OrderOverflow(u32, u32),
    /// Matrix shapes are incompatible for the requested operation.
    ShapeMismatch {
        op: &'static str,
        lhs: (usize, usize),
        rhs: (usize, usize),
    },
}

impl fmt::Display for ArithError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ArithError::UnsupportedOrder(n) => {
                write!(f, "unsupported root-of-unity order {n}: must be in 1..={MAX_ORDER}")
            }
            ArithError::OrderOverflow(a, b) => write!(
                f,
                "lcm of orders {a} and {b} exceeds the supported maximum {MAX_ORDER}"
            ),
            ArithError::ShapeMismatch { op, lhs, rhs } => write!(
                f,
                "shape mismatch in {op}: {}x{} vs {}x{}",
                lhs.0, lhs.1, rhs.0, rhs.1
            ),
        }
    }
}

impl std::error::Error for ArithError {}

pub fn euler_phi(n: u32) -> usize {
    let mut result = n;
    let mut m = n;
    let mut p = 2;
    while p * p <= m {
        if m.is_multiple_of(p) {
            while m.is_multiple_of(p) {
                m /= p;
            }
            result -= result / p;
        }
        p += 1;
    }
    if m > 1 {
        result -= result / m;
    }
    result as usize
}

/// Coefficients of `Phi_N`, ascending degree, length `phi(N) + 1`, monic.
///
/// Computed by exact division: `x^N - 1 = prod_{d | N} Phi_d`, so dividing
/// `x^N - 1` by the cyclotomic polynomials of the proper divisors leaves
/// `Phi_N`.  Results are cached per order.
pub fn cyclotomic_polynomial(n: u32) -> Result<Arc<Vec<BigInt>>, ArithError> {
    if n == 0 || n > MAX_ORDER {
        return Err(ArithError::UnsupportedOrder(n));
    }
    static CACHE: OnceLock<Mutex<HashMap<u32, Arc<Vec<BigInt>>>>> = OnceLock::new();
    let cache = CACHE.get_or_init(|| Mutex::new(HashMap::new()));
    if let Some(hit) = cache.lock().unwrap().get(&n) {
        return Ok(hit.clone());
    }
    // x^n - 1
    let mut poly = vec![BigInt::zero(); n as usize + 1];
    poly[0] = BigInt::from(-1);
    poly[n as usize] = BigInt::one();
    for d in 1..n {
        if n.is_multiple_of(d) {
            let phi_d = cyclotomic_polynomial(d)?;
            poly = divide_exact(&poly, &phi_d);
        }
    }
    debug_assert_eq!(poly.len(), euler_phi(n) + 1);
    let arc = Arc::new(poly);
    cache.lock().unwrap().insert(n, arc.clone());
    Ok(arc)
}

/// Exact division of integer polynomials; `divisor` must be monic and divide
/// `dividend` exactly (guaranteed for cyclotomic factors of `x^n - 1`).
fn divide_exact(dividend: &[BigInt], divisor: &[BigInt]) -> Vec<BigInt> {
    let mut rem: Vec<BigInt> = dividend.to_vec();
    let dd = divisor.len() - 1;
    let mut quot = vec![BigInt::zero(); rem.len() - dd];
    for i in (dd..rem.len()).rev() {
        let c = std::mem::replace(&mut rem[i], BigInt::zero());
        if c.is_zero() {
            continue;
        }
        let qi = i - dd;
        for (j, dj) in divisor.iter().enumerate().take(dd) {
            let sub = dj * &c;
            rem[qi + j] -= sub;
        }
        quot[qi] = c;
    }
    debug_assert!(rem.iter().all(|c| c.is_zero()), "non-exact polynomial division");
    quot
}

/// An element of `Q(zeta_order)` in canonical power-basis form.
#[derive(Clone)]
pub struct CyclotomicScalar {
    order: u32,
    coeffs: Vec<Rational>,
}

impl CyclotomicScalar {
    pub fn zero() -> Self {
        CyclotomicScalar { order: 1, coeffs: vec![Rational::zero()] }
    }

    pub fn one() -> Self {
        CyclotomicScalar { order: 1, coeffs: vec![Rational::one()] }
    }

    pub fn from_int(n: i64) -> Self {
        CyclotomicScalar { order: 1, coeffs: vec![Rational::from_int(n)] }
    }

    pub fn from_rational(r: Rational) -> Self {
        CyclotomicScalar { order: 1, coeffs: vec![r] }
    }

    /// `zeta_n^k` (k taken modulo n; negative k allowed).
    pub fn root_of_unity(n: u32, k: i64) -> Result<Self, ArithError> {
        if n == 0 || n > MAX_ORDER {
            return Err(ArithError::UnsupportedOrder(n));
        }
        let k = k.rem_euclid(n as i64) as usize;
        let mut dense = vec![Rational::zero(); k + 1];
        dense[k] = Rational::one();
        Ok(CyclotomicScalar { order: n, coeffs: reduce_mod_phi(dense, n)? })
    }

    pub fn order(&self) -> u32 {
        self.order
    }

    pub fn coeffs(&self) -> &[Rational] {
        &self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(Rational::is_zero)
    }

    /// The rational part if the scalar is rational (all higher coefficients
    /// zero), else `None`.
    pub fn as_rational(&self) -> Option<&Rational> {
        if self.coeffs[1..].iter().all(Rational::is_zero) {
            Some(&self.coeffs[0])
        } else {
            None
        }
    }

    /// Re-expresses the scalar in `Q(zeta_target)`; `target` must be a
    /// multiple of the current order.
    pub fn lift(&self, target: u32) -> Result<Self, ArithError> {
        if target == 0 || target > MAX_ORDER {
            return Err(ArithError::UnsupportedOrder(target));
        }
        if target == self.order {
            return Ok(self.clone());
        }
        assert!(
            target.is_multiple_of(self.order),
            "lift target {target} is not a multiple of order {}",
            self.order
        );
        let step = (target / self.order) as usize;
        let mut dense = vec![Rational::zero(); (self.coeffs.len() - 1) * step + 1];
        for (j, c) in self.coeffs.iter().enumerate() {
            if !c.is_zero() {
                dense[j * step] = c.clone();
            }
        }
        Ok(CyclotomicScalar { order: target, coeffs: reduce_mod_phi(dense, target)? })
    }

    /// Lifts both operands to the lcm of their orders.
    pub fn unify(a: &Self, b: &Self) -> Result<(Self, Self), ArithError> {
        if a.order == b.order {
            return Ok((a.clone(), b.clone()));
        }
        let l = (a.order as u64).lcm(&(b.order as u64));
        if l > MAX_ORDER as u64 {
            return Err(ArithError::OrderOverflow(a.order, b.order));
        }
        Ok((a.lift(l as u32)?, b.lift(l as u32)?))
    }

    /// Complex conjugation: `zeta_N -> zeta_N^(N-1)`.  A ring involution.
    pub fn conjugate(&self) -> Self {
        let n = self.order as usize;
        if n == 1 {
            return self.clone();
        }
        let mut dense = vec![Rational::zero(); n];
        for (j, c) in self.coeffs.iter().enumerate() {
            if !c.is_zero() {
                let idx = (n - j) % n;
                dense[idx] = &dense[idx] + c;
            }
        }
        let coeffs = reduce_mod_phi(dense, self.order).expect("order already validated");
        CyclotomicScalar { order: self.order, coeffs }
    }

    pub fn scale(&self, r: &Rational) -> Self {
        CyclotomicScalar {
            order: self.order,
            coeffs: self.coeffs.iter().map(|c| c * r).collect(),
        }
    }

    /// `conj(self) * self`: the squared absolute value, a nonnegative real.
    pub fn abs_sq(&self) -> Self {
        &self.conjugate() * self
    }

    pub fn pow(&self, exp: u32) -> Self {
        let mut out = CyclotomicScalar::one();
        for _ in 0..exp {
            out = &out * self;
        }
        out
    }

    fn add_impl(&self, rhs: &Self) -> Self {
        let (a, b) = Self::unify(self, rhs).expect("incompatible scalar orders");
        CyclotomicScalar {
            order: a.order,
            coeffs: a.coeffs.iter().zip(&b.coeffs).map(|(x, y)| x + y).collect(),
        }
    }

    fn mul_impl(&self, rhs: &Self) -> Self {
        let (a, b) = Self::unify(self, rhs).expect("incompatible scalar orders");
        let mut dense = vec![Rational::zero(); a.coeffs.len() + b.coeffs.len() - 1];
        for (i, x) in a.coeffs.iter().enumerate() {
            if x.is_zero() {
                continue;
            }
            for (j, y) in b.coeffs.iter().enumerate() {
                if !y.is_zero() {
                    dense[i + j] = &dense[i + j] + &(x * y);
                }
            }
        }
        CyclotomicScalar {
            order: a.order,
            coeffs: reduce_mod_phi(dense, a.order).expect("order already validated"),
        }
    }
}

/// Reduces a dense polynomial in `zeta_n` to canonical length-`phi(n)` form,
/// first folding exponents with `zeta^n = 1`, then dividing by `Phi_n`.
fn reduce_mod_phi(dense: Vec<Rational>, n: u32) -> Result<Vec<Rational>, ArithError> {
    let phi = cyclotomic_polynomial(n)?;
    let deg = phi.len() - 1;
    let nn = n as usize;
    let mut folded = vec![Rational::zero(); nn.max(deg + 1)];
    for (j, c) in dense.into_iter().enumerate() {
        if !c.is_zero() {
            let idx = j % nn;
            folded[idx] = &folded[idx] + &c;
        }
    }
    // Synthetic division by the monic Phi_n; only the remainder is kept.
    for i in (deg..folded.len()).rev() {
        if folded[i].is_zero() {
            continue;
        }
        let c = std::mem::replace(&mut folded[i], Rational::zero());
        for (j, pj) in phi.iter().enumerate().take(deg) {
            if pj.is_zero() {
                continue;
            }
            let sub = &c * &Rational::from_bigint(pj.clone());
            folded[i - deg + j] = &folded[i - deg + j] - &sub;
        }
    }
    folded.truncate(deg);
    folded.resize(deg, Rational::zero());
    Ok(folded)
}

macro_rules! scalar_binop {
    ($trait:ident, $method:ident, $impl:ident) => {
        impl $trait<&CyclotomicScalar> for &CyclotomicScalar {
            type Output = CyclotomicScalar;
            fn $method(self, rhs: &CyclotomicScalar) -> CyclotomicScalar {
                self.$impl(rhs)
            }
        }

        impl $trait<CyclotomicScalar> for CyclotomicScalar {
            type Output = CyclotomicScalar;
            fn $method(self, rhs: CyclotomicScalar) -> CyclotomicScalar {
                (&self).$impl(&rhs)
            }
        }
    };
}

scalar_binop!(Add, add, add_impl);
scalar_binop!(Mul, mul, mul_impl);

impl Sub<&CyclotomicScalar> for &CyclotomicScalar {
    type Output = CyclotomicScalar;
    fn sub(self, rhs: &CyclotomicScalar) -> CyclotomicScalar {
        self.add_impl(&-rhs)
    }
}

impl Sub<CyclotomicScalar> for CyclotomicScalar {
    type Output = CyclotomicScalar;
    fn sub(self, rhs: CyclotomicScalar) -> CyclotomicScalar {
        (&self).sub(&rhs)
    }
}

impl Neg for &CyclotomicScalar {
    type Output = CyclotomicScalar;
    fn neg(self) -> CyclotomicScalar {
        CyclotomicScalar {
            order: self.order,
            coeffs: self.coeffs.iter().map(|c| -c).collect(),
        }
    }
}

impl Neg for CyclotomicScalar {
    type Output = CyclotomicScalar;
    fn neg(self) -> CyclotomicScalar {
        -&self
    }
}

impl PartialEq for CyclotomicScalar {
    fn eq(&self, other: &Self) -> bool {
        match Self::unify(self, other) {
            Ok((a, b)) => a.coeffs == b.coeffs,
            Err(_) => false,
        }
    }
}

impl Eq for CyclotomicScalar {}

impl fmt::Display for CyclotomicScalar {
    /// Canonical scalar literal: a signed sum of `c z(N,k)` terms with the
    /// rational part first, e.g. `1/2 + 1/2 z(8,1) - z(8,3)`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for (k, c) in self.coeffs.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            let mag = c.abs();
            if first {
                if c.is_negative() {
                    write!(f, "-")?;
                }
                first = false;
            } else if c.is_negative() {
                write!(f, " - ")?;
            } else {
                write!(f, " + ")?;
            }
            if k == 0 {
                write!(f, "{mag}")?;
            } else if mag.is_one() {
                write!(f, "z({},{})", self.order, k)?;
            } else {
                write!(f, "{mag} z({},{})", self.order, k)?;
            }
        }
        Ok(())
    }
}

impl fmt::Debug for CyclotomicScalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

/// `i` as an element of `Q(zeta_4)`.
pub fn imaginary_unit() -> CyclotomicScalar {
    CyclotomicScalar::root_of_unity(4, 1).expect("order 4 is supported")
}

/// `1/sqrt(2) = (zeta_8 + zeta_8^7) / 2`, an element of `Q(zeta_8)`.
pub fn inv_sqrt2() -> CyclotomicScalar {
    let s = CyclotomicScalar::root_of_unity(8, 1).unwrap()
        + CyclotomicScalar::root_of_unity(8, 7).unwrap();
    s.scale(&Rational::new(1, 2))
}

/// Converts a scalar to `f64` by evaluating the power basis numerically.
/// Only used for report annotations, never for equality decisions.
pub fn to_complex_f64(s: &CyclotomicScalar) -> (f64, f64) {
    let n = s.order() as f64;
    let mut re = 0.0;
    let mut im = 0.0;
    for (k, c) in s.coeffs().iter().enumerate() {
        if c.is_zero() {
            continue;
        }
        let theta = 2.0 * std::f64::consts::PI * (k as f64) / n;
        let v = c.numer().to_f64().unwrap_or(f64::NAN) / c.denom().to_f64().unwrap_or(f64::NAN);
        re += v * theta.cos();
        im += v * theta.sin();
    }
    (re, im)
}
