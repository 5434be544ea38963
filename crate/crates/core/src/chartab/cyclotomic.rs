use std::collections::HashMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};
use std::sync::{Arc, Mutex, OnceLock};

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};

/// Φ_n as ascending integer coefficients, memoized.
fn cyclotomic_polynomial(n: u32) -> Arc<Vec<BigInt>> {
    static CACHE: OnceLock<Mutex<HashMap<u32, Arc<Vec<BigInt>>>>> = OnceLock::new();
    let cache = CACHE.get_or_init(|| Mutex::new(HashMap::new()));
    if let Some(p) = cache.lock().expect("cache lock").get(&n) {
        return p.clone();
    }
    // x^n − 1 divided by Φ_d for every proper divisor d.
    let mut num = vec![BigInt::zero(); n as usize + 1];
    num[0] = -BigInt::one();
    num[n as usize] = BigInt::one();
    for d in (1..n).filter(|d| n % d == 0) {
        num = exact_divide(&num, &cyclotomic_polynomial(d));
    }
    let p = Arc::new(num);
    cache.lock().expect("cache lock").insert(n, p.clone());
    p
}

/// Quotient of polynomial division by a monic divisor with zero remainder.
fn exact_divide(num: &[BigInt], den: &[BigInt]) -> Vec<BigInt> {
    let mut rem = num.to_vec();
    let dd = den.len() - 1;
    let mut q = vec![BigInt::zero(); num.len() - dd];
    for i in (dd..num.len()).rev() {
        let c = std::mem::take(&mut rem[i]);
        if c.is_zero() {
            continue;
        }
        for (j, dj) in den.iter().enumerate().take(dd) {
            rem[i - dd + j] -= &c * dj;
        }
        q[i - dd] = c;
    }
    debug_assert!(rem.iter().all(Zero::is_zero));
    q
}

#[cfg(test)]
fn totient(n: u32) -> usize {
    let mut n = n;
    let mut phi = n;
    let mut p = 2;
    while p * p <= n {
        if n % p == 0 {
            while n % p == 0 {
                n /= p;
            }
            phi -= phi / p;
        }
        p += 1;
    }
    if n > 1 {
        phi -= phi / n;
    }
    phi as usize
}

/// An element of ℤ[ζ_n], stored by its coordinates in the power basis
/// 1, ζ, …, ζ^{φ(n)−1}. The coordinates are unique, so equality is
/// coordinate equality after lifting to a common conductor.
#[derive(Debug, Clone)]
pub struct Cyclotomic {
    conductor: u32,
    coeffs: Vec<BigInt>,
}

impl Cyclotomic {
    pub fn zero() -> Self {
        Cyclotomic::integer(0)
    }

    pub fn one() -> Self {
        Cyclotomic::integer(1)
    }

    pub fn integer(c: impl Into<BigInt>) -> Self {
        Cyclotomic { conductor: 1, coeffs: vec![c.into()] }
    }

    /// ζ_n^k.
    pub fn root_of_unity(n: u32, k: i64) -> Result<Self> {
        Cyclotomic::from_exponents(n, [(k, BigInt::one())])
    }

    /// Σ c_k ζ_n^k for arbitrary integer k.
    pub fn from_exponents(n: u32, terms: impl IntoIterator<Item = (i64, BigInt)>) -> Result<Self> {
        if n == 0 {
            return Err(Error::CyclotomicParse { input: "z(0)".into(), reason: "conductor must be positive".into() });
        }
        let mut raw = vec![BigInt::zero(); n as usize];
        for (k, c) in terms {
            raw[k.rem_euclid(n as i64) as usize] += c;
        }
        Ok(Cyclotomic::reduce(n, raw))
    }

    fn reduce(n: u32, mut raw: Vec<BigInt>) -> Self {
        let phi = cyclotomic_polynomial(n);
        let deg = phi.len() - 1;
        for i in (deg..raw.len()).rev() {
            let c = std::mem::take(&mut raw[i]);
            if c.is_zero() {
                continue;
            }
            for (j, pj) in phi.iter().enumerate().take(deg) {
                raw[i - deg + j] -= &c * pj;
            }
        }
        raw.resize(deg, BigInt::zero());
        Cyclotomic { conductor: n, coeffs: raw }
    }

    pub fn conductor(&self) -> u32 {
        self.conductor
    }

    /// Power-basis coordinates, length φ(conductor).
    pub fn coefficients(&self) -> &[BigInt] {
        &self.coeffs
    }

    /// Re-expresses the value over ℚ(ζ_m) for a multiple m of the conductor.
    pub fn lift(&self, m: u32) -> Self {
        assert!(m % self.conductor == 0, "lift target must be a multiple of the conductor");
        if m == self.conductor {
            return self.clone();
        }
        let step = (m / self.conductor) as usize;
        let mut raw = vec![BigInt::zero(); m as usize];
        for (k, c) in self.coeffs.iter().enumerate() {
            raw[k * step] += c;
        }
        Cyclotomic::reduce(m, raw)
    }

    fn common(&self, other: &Self) -> (Self, Self) {
        let m = self.conductor.lcm(&other.conductor);
        (self.lift(m), other.lift(m))
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(Zero::is_zero)
    }

    pub fn is_rational(&self) -> bool {
        self.coeffs.iter().skip(1).all(Zero::is_zero)
    }

    /// The value as an integer when it is rational.
    pub fn to_integer(&self) -> Option<BigInt> {
        self.is_rational().then(|| self.coeffs[0].clone())
    }

    /// Complex conjugation ζ ↦ ζ⁻¹.
    pub fn conj(&self) -> Self {
        let n = self.conductor as usize;
        let mut raw = vec![BigInt::zero(); n];
        for (k, c) in self.coeffs.iter().enumerate() {
            raw[(n - k) % n] += c;
        }
        Cyclotomic::reduce(self.conductor, raw)
    }

    pub fn scale(&self, s: &BigInt) -> Self {
        Cyclotomic { conductor: self.conductor, coeffs: self.coeffs.iter().map(|c| c * s).collect() }
    }

    /// Exact division by an integer; None unless every coordinate is divisible.
    pub fn div_exact(&self, s: &BigInt) -> Option<Self> {
        if s.is_zero() {
            return None;
        }
        let mut coeffs = Vec::with_capacity(self.coeffs.len());
        for c in &self.coeffs {
            let (q, r) = c.div_rem(s);
            if !r.is_zero() {
                return None;
            }
            coeffs.push(q);
        }
        Some(Cyclotomic { conductor: self.conductor, coeffs })
    }

    /// Replaces ζ by ζ^k (a Galois conjugate when gcd(k, n) = 1).
    pub fn power_map(&self, k: i64) -> Self {
        let n = self.conductor;
        let terms = self.coeffs.iter().enumerate().map(|(j, c)| (j as i64 * k, c.clone()));
        Cyclotomic::from_exponents(n, terms).expect("conductor is positive")
    }

    pub fn parse(input: &str) -> Result<Self> {
        let err = |reason: &str| Error::CyclotomicParse { input: input.to_string(), reason: reason.to_string() };
        let s: String = input.chars().filter(|c| !c.is_whitespace()).map(|c| if c == '−' { '-' } else { c }).collect();
        if s.is_empty() {
            return Err(err("empty value"));
        }
        let mut total = Cyclotomic::zero();
        let mut rest = s.as_str();
        let mut first = true;
        while !rest.is_empty() {
            let negative = match rest.as_bytes()[0] {
                b'+' => {
                    rest = &rest[1..];
                    false
                }
                b'-' => {
                    rest = &rest[1..];
                    true
                }
                _ if first => false,
                _ => return Err(err("expected '+' or '-' between terms")),
            };
            first = false;
            let end = rest.find(['+', '-']).unwrap_or(rest.len());
            let term = parse_term(&rest[..end]).map_err(|r| err(&r))?;
            total = if negative { &total - &term } else { &total + &term };
            rest = &rest[end..];
        }
        Ok(total)
    }
}

fn parse_term(term: &str) -> std::result::Result<Cyclotomic, String> {
    if term.is_empty() {
        return Err("empty term".into());
    }
    let (coeff, root) = match term.find("z(") {
        None => (term, None),
        Some(pos) => {
            let coeff = term[..pos].strip_suffix('*').unwrap_or(&term[..pos]);
            if pos > 0 && !term[..pos].ends_with('*') {
                return Err(format!("missing '*' in term '{term}'"));
            }
            (coeff, Some(&term[pos + 2..]))
        }
    };
    let c: BigInt = if coeff.is_empty() {
        if root.is_none() {
            return Err("empty term".into());
        }
        BigInt::one()
    } else {
        coeff.parse().map_err(|_| format!("bad integer '{coeff}'"))?
    };
    let Some(root) = root else {
        return Ok(Cyclotomic::integer(c));
    };
    let close = root.find(')').ok_or("missing ')'")?;
    let n: u32 = root[..close].parse().map_err(|_| format!("bad conductor '{}'", &root[..close]))?;
    if n == 0 {
        return Err("conductor must be positive".into());
    }
    let after = &root[close + 1..];
    let k: i64 = if after.is_empty() {
        1
    } else {
        let exp = after.strip_prefix('^').ok_or_else(|| format!("unexpected '{after}'"))?;
        exp.parse().map_err(|_| format!("bad exponent '{exp}'"))?
    };
    Cyclotomic::from_exponents(n, [(k, c)]).map_err(|e| e.to_string())
}

impl PartialEq for Cyclotomic {
    fn eq(&self, other: &Self) -> bool {
        if self.conductor == other.conductor {
            return self.coeffs == other.coeffs;
        }
        let (a, b) = self.common(other);
        a.coeffs == b.coeffs
    }
}

impl Eq for Cyclotomic {}

impl From<i64> for Cyclotomic {
    fn from(c: i64) -> Self {
        Cyclotomic::integer(c)
    }
}

impl<'a> Add<&'a Cyclotomic> for &'a Cyclotomic {
    type Output = Cyclotomic;
    fn add(self, rhs: &Cyclotomic) -> Cyclotomic {
        let (a, b) = self.common(rhs);
        let coeffs = a.coeffs.iter().zip(&b.coeffs).map(|(x, y)| x + y).collect();
        Cyclotomic { conductor: a.conductor, coeffs }
    }
}

impl<'a> Sub<&'a Cyclotomic> for &'a Cyclotomic {
    type Output = Cyclotomic;
    fn sub(self, rhs: &Cyclotomic) -> Cyclotomic {
        self + &(-rhs)
    }
}

impl Neg for &Cyclotomic {
    type Output = Cyclotomic;
    fn neg(self) -> Cyclotomic {
        Cyclotomic { conductor: self.conductor, coeffs: self.coeffs.iter().map(|c| -c).collect() }
    }
}

impl<'a> Mul<&'a Cyclotomic> for &'a Cyclotomic {
    type Output = Cyclotomic;
    fn mul(self, rhs: &Cyclotomic) -> Cyclotomic {
        let (a, b) = self.common(rhs);
        let mut raw = vec![BigInt::zero(); (a.coeffs.len() + b.coeffs.len()).saturating_sub(1).max(1)];
        for (i, x) in a.coeffs.iter().enumerate() {
            if x.is_zero() {
                continue;
            }
            for (j, y) in b.coeffs.iter().enumerate() {
                raw[i + j] += x * y;
            }
        }
        Cyclotomic::reduce(a.conductor, raw)
    }
}

impl fmt::Display for Cyclotomic {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut wrote = false;
        for (k, c) in self.coeffs.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            let sign = if c.is_negative() { "-" } else { "+" };
            let mag = c.abs();
            match (wrote, c.is_negative()) {
                (false, true) => write!(f, "-")?,
                (false, false) => {}
                (true, _) => write!(f, " {sign} ")?,
            }
            if k == 0 {
                write!(f, "{mag}")?;
            } else {
                write!(f, "{mag}*z({})^{k}", self.conductor)?;
            }
            wrote = true;
        }
        if !wrote {
            write!(f, "0")?;
        }
        Ok(())
    }
}
