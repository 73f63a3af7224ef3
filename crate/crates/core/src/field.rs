//! Dense-table model of F_{p^n}, n = 2m.
//!
//! Elements are packed base-p coefficient vectors in the power basis of a
//! root ψ of the modulus. The modulus is primitive, so ψ (packed as `p`)
//! generates the multiplicative group and the log/antilog tables give
//! constant-time multiplication and exponentiation.

use serde::Serialize;

use crate::error::{Error, Result};

/// Largest odd-characteristic order that gets a dense addition table.
const ADD_TABLE_MAX_ORDER: u32 = 1024;

/// Default cap on the field order p^n.
pub const DEFAULT_SIZE_CAP: u64 = 1 << 20;

/// A field element: packed base-p coefficients, `0` is zero.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
#[serde(transparent)]
pub struct Elem(pub u32);

impl Elem {
    pub const ZERO: Elem = Elem(0);
    pub const ONE: Elem = Elem(1);

    pub fn is_zero(self) -> bool {
        self.0 == 0
    }

    pub fn rep(self) -> usize {
        self.0 as usize
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct FieldParams {
    pub p: u32,
    pub m: u32,
    pub n: u32,
    /// Coefficients c_0..c_n of the monic primitive modulus (c_n = 1).
    pub modulus: Vec<u32>,
    pub order: u32,
}

/// JSON description of the field model.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct FieldDescription {
    pub p: u32,
    pub m: u32,
    pub n: u32,
    pub modulus: Vec<u32>,
    pub primitive_check: bool,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Field {
    params: FieldParams,
    /// Powers p^i for i in 0..=n.
    place: Vec<u32>,
    log: Vec<u32>,
    exp: Vec<u32>,
    trace: Vec<u8>,
    /// Dense addition table for small odd-characteristic fields.
    add_table: Option<Vec<u32>>,
}

pub fn is_prime(p: u64) -> bool {
    if p < 2 {
        return false;
    }
    let mut i = 2;
    while i * i <= p {
        if p.is_multiple_of(i) {
            return false;
        }
        i += 1;
    }
    true
}

/// Builds F_{p^{2m}} with the default size cap.
pub fn build_field(p: u32, m: u32) -> Result<Field> {
    build_field_with_cap(p, m, DEFAULT_SIZE_CAP)
}

pub fn build_field_with_cap(p: u32, m: u32, cap: u64) -> Result<Field> {
    if !is_prime(p as u64) {
        return Err(Error::NotPrime(p as u64));
    }
    if m == 0 {
        return Err(Error::FieldTooLarge { order: 0, cap });
    }
    let n = 2 * m;
    let order = (p as u128).checked_pow(n).unwrap_or(u128::MAX);
    if order > cap as u128 || order > u32::MAX as u128 {
        return Err(Error::FieldTooLarge {
            order: order.min(u64::MAX as u128) as u64,
            cap,
        });
    }
    let order = order as u32;
    let place: Vec<u32> = (0..=n).map(|i| p.pow(i)).collect();

    let (modulus, exp) =
        find_primitive(p, n, order, &place).ok_or(Error::ConstructionFailure { p, n })?;
    let mut log = vec![u32::MAX; order as usize];
    for (t, &e) in exp.iter().enumerate() {
        log[e as usize] = t as u32;
    }

    let mut field = Field {
        params: FieldParams {
            p,
            m,
            n,
            modulus,
            order,
        },
        place,
        log,
        exp,
        trace: Vec::new(),
        add_table: None,
    };
    field.trace = field.build_trace_table();
    if p != 2 && order <= ADD_TABLE_MAX_ORDER {
        let table = (0..order)
            .flat_map(|a| (0..order).map(move |b| add_packed(p, a, b)))
            .collect();
        field.add_table = Some(table);
    }
    Ok(field)
}

/// Returns the first primitive modulus in lexicographic order (constant term
/// varying fastest) together with its antilog table.
fn find_primitive(p: u32, n: u32, order: u32, place: &[u32]) -> Option<(Vec<u32>, Vec<u32>)> {
    let top_place = place[n as usize - 1];
    for idx in 0..order {
        let coeffs: Vec<u32> = (0..n).map(|i| (idx / place[i as usize]) % p).collect();
        if coeffs[0] == 0 {
            continue;
        }
        // reduction[t] = packed(-t * c_i mod p), the correction when the
        // shifted-out top digit is t.
        let reduction: Vec<u32> = (0..p)
            .map(|t| {
                coeffs
                    .iter()
                    .enumerate()
                    .map(|(i, &c)| ((p - (t * c) % p) % p) * place[i])
                    .sum()
            })
            .collect();
        let mul_x = |a: u32| -> u32 {
            let top = a / top_place;
            let shifted = (a % top_place) * p;
            add_packed(p, shifted, reduction[top as usize])
        };

        let group = (order - 1) as usize;
        let mut exp = Vec::with_capacity(group);
        let mut x = 1u32;
        let mut primitive = true;
        for t in 0..group {
            if t > 0 && x == 1 {
                primitive = false;
                break;
            }
            exp.push(x);
            x = mul_x(x);
        }
        if primitive && x == 1 {
            let mut modulus = coeffs;
            modulus.push(1);
            return Some((modulus, exp));
        }
    }
    None
}

fn add_packed(p: u32, a: u32, b: u32) -> u32 {
    if p == 2 {
        return a ^ b;
    }
    let (mut a, mut b) = (a, b);
    let mut out = 0;
    let mut place = 1;
    while a > 0 || b > 0 {
        out += ((a % p + b % p) % p) * place;
        a /= p;
        b /= p;
        place *= p;
    }
    out
}

impl Field {
    pub fn params(&self) -> &FieldParams {
        &self.params
    }

    pub fn p(&self) -> u32 {
        self.params.p
    }

    pub fn m(&self) -> u32 {
        self.params.m
    }

    pub fn n(&self) -> u32 {
        self.params.n
    }

    /// p^n.
    pub fn order(&self) -> u32 {
        self.params.order
    }

    /// p^n as usize, the length of every dense table indexed by element.
    pub fn size(&self) -> usize {
        self.params.order as usize
    }

    /// p^n - 1.
    pub fn group_order(&self) -> u64 {
        self.params.order as u64 - 1
    }

    /// p^m.
    pub fn subfield_order(&self) -> u64 {
        self.place[self.params.m as usize] as u64
    }

    pub fn describe(&self) -> FieldDescription {
        FieldDescription {
            p: self.params.p,
            m: self.params.m,
            n: self.params.n,
            modulus: self.params.modulus.clone(),
            primitive_check: true,
        }
    }

    pub fn elem(&self, rep: u32) -> Result<Elem> {
        if rep < self.params.order {
            Ok(Elem(rep))
        } else {
            Err(Error::BadElement(rep))
        }
    }

    pub fn elements(&self) -> impl Iterator<Item = Elem> + Clone {
        (0..self.params.order).map(Elem)
    }

    pub fn nonzero(&self) -> impl Iterator<Item = Elem> + Clone {
        (1..self.params.order).map(Elem)
    }

    /// The primitive element ψ.
    pub fn generator(&self) -> Elem {
        Elem(self.exp[1])
    }

    /// ψ^t for any integer t.
    pub fn psi_pow(&self, t: i64) -> Elem {
        let g = self.group_order() as i64;
        Elem(self.exp[t.rem_euclid(g) as usize])
    }

    /// Embeds an integer into the prime field.
    pub fn from_int(&self, k: i64) -> Elem {
        Elem(k.rem_euclid(self.params.p as i64) as u32)
    }

    #[inline]
    pub fn add(&self, a: Elem, b: Elem) -> Elem {
        if let Some(table) = &self.add_table {
            return Elem(table[a.rep() * self.size() + b.rep()]);
        }
        Elem(add_packed(self.params.p, a.0, b.0))
    }

    pub fn neg(&self, a: Elem) -> Elem {
        let p = self.params.p;
        if p == 2 {
            return a;
        }
        let mut x = a.0;
        let mut out = 0;
        let mut place = 1;
        while x > 0 {
            out += ((p - x % p) % p) * place;
            x /= p;
            place *= p;
        }
        Elem(out)
    }

    pub fn sub(&self, a: Elem, b: Elem) -> Elem {
        self.add(a, self.neg(b))
    }

    pub fn mul(&self, a: Elem, b: Elem) -> Elem {
        if a.0 == 0 || b.0 == 0 {
            return Elem::ZERO;
        }
        let g = self.group_order();
        let t = (self.log[a.rep()] as u64 + self.log[b.rep()] as u64) % g;
        Elem(self.exp[t as usize])
    }

    pub fn inv(&self, a: Elem) -> Option<Elem> {
        if a.is_zero() {
            return None;
        }
        let g = self.group_order();
        Some(Elem(
            self.exp[((g - self.log[a.rep()] as u64) % g) as usize],
        ))
    }

    /// a / b. Panics when `b` is zero.
    pub fn div(&self, a: Elem, b: Elem) -> Elem {
        let inv = self.inv(b).expect("division by zero");
        self.mul(a, inv)
    }

    /// x^e with 0^0 = 1.
    pub fn pow(&self, x: Elem, e: u64) -> Elem {
        if x.is_zero() {
            return if e == 0 { Elem::ONE } else { Elem::ZERO };
        }
        let g = self.group_order();
        let t = (self.log[x.rep()] as u64 * (e % g)) % g;
        Elem(self.exp[t as usize])
    }

    /// Absolute trace Tr^n_1(x) as an integer in [0, p).
    pub fn trace(&self, x: Elem) -> u32 {
        self.trace[x.rep()] as u32
    }

    /// Dense trace table indexed by element representation.
    pub fn trace_table(&self) -> &[u8] {
        &self.trace
    }

    pub fn discrete_log(&self, x: Elem) -> Result<u64> {
        if x.is_zero() {
            Err(Error::ZeroElement)
        } else {
            Ok(self.log[x.rep()] as u64)
        }
    }

    /// Log without the zero check, for hot loops that already excluded zero.
    pub(crate) fn log_unchecked(&self, x: Elem) -> u64 {
        debug_assert!(!x.is_zero());
        self.log[x.rep()] as u64
    }

    /// Membership in μ_e = {x : x^e = 1}.
    pub fn in_mu(&self, x: Elem, e: u64) -> Result<bool> {
        let g = self.group_order();
        if e == 0 || !g.is_multiple_of(e) {
            return Err(Error::BadOrder { e, group_order: g });
        }
        if x.is_zero() {
            return Ok(false);
        }
        Ok((self.log[x.rep()] as u64 * e).is_multiple_of(g))
    }

    /// x̄ = x^{p^m}.
    pub fn conj(&self, x: Elem) -> Elem {
        self.pow(x, self.subfield_order())
    }

    /// Whether x lies in F_{p^m}.
    pub fn in_subfield(&self, x: Elem) -> bool {
        self.conj(x) == x
    }

    /// Whether x lies in F_p (the constant polynomials).
    pub fn in_prime_field(&self, x: Elem) -> bool {
        x.0 < self.params.p
    }

    /// x^d for every element, indexed by representation.
    pub fn power_table(&self, d: u64) -> Vec<Elem> {
        self.elements().map(|x| self.pow(x, d)).collect()
    }

    fn build_trace_table(&self) -> Vec<u8> {
        let p = self.params.p;
        let n = self.params.n as usize;
        // Trace of each basis element θ^i, then extend linearly.
        let basis_trace: Vec<u32> = (0..n)
            .map(|i| {
                let theta_i = Elem(self.place[i]);
                let mut acc = Elem::ZERO;
                let mut y = theta_i;
                for _ in 0..n {
                    acc = self.add(acc, y);
                    y = self.pow(y, p as u64);
                }
                assert!(acc.0 < p, "trace left the prime field");
                acc.0
            })
            .collect();
        (0..self.params.order)
            .map(|x| {
                let t: u32 = (0..n)
                    .map(|i| ((x / self.place[i]) % p) * basis_trace[i])
                    .sum();
                (t % p) as u8
            })
            .collect()
    }
}
