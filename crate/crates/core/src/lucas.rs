//! Lucas sequences for `X² − aX − b`: `U_m = α^m + β^m`, `V_m = (α^m − β^m)/(α − β)`.

use num_integer::Integer;
use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{domain, Result};
use crate::exact::{jacobi, Int};
use crate::json::int;

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct LucasParams {
    #[serde(with = "int")]
    pub a: Int,
    #[serde(with = "int")]
    pub b: Int,
}

impl LucasParams {
    pub fn new(a: impl Into<Int>, b: impl Into<Int>) -> Self {
        Self { a: a.into(), b: b.into() }
    }

    /// `b = 1`, the unit case.
    pub fn unit(a: impl Into<Int>) -> Self {
        Self::new(a, 1)
    }

    fn is_unit(&self) -> bool {
        self.b.is_one()
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct LucasPair {
    pub m: i64,
    #[serde(with = "int")]
    pub u: Int,
    #[serde(with = "int")]
    pub v: Int,
}

/// `(U_k, V_k)` for `k = 0..=n`.
pub fn lucas_table(p: &LucasParams, n: usize) -> (Vec<Int>, Vec<Int>) {
    let mut u = Vec::with_capacity(n + 1);
    let mut v = Vec::with_capacity(n + 1);
    u.push(Int::from(2));
    v.push(Int::zero());
    if n >= 1 {
        u.push(p.a.clone());
        v.push(Int::one());
    }
    for k in 2..=n {
        u.push(&p.a * &u[k - 1] + &p.b * &u[k - 2]);
        v.push(&p.a * &v[k - 1] + &p.b * &v[k - 2]);
    }
    (u, v)
}

/// `(U_m, V_m)`. Negative `m` needs `b = 1` and uses
/// `U_{−m} = (−1)^m U_m`, `V_{−m} = (−1)^{m+1} V_m`.
pub fn lucas_uv(p: &LucasParams, m: i64) -> Result<LucasPair> {
    let n = m.unsigned_abs();
    if m < 0 && !p.is_unit() {
        return Err(domain("negative indices need b = 1"));
    }
    let (u, v) = lucas_pair_at(p, n);
    let (u, v) = if m < 0 {
        if n % 2 == 0 { (u, -v) } else { (-u, v) }
    } else {
        (u, v)
    };
    Ok(LucasPair { m, u, v })
}

fn lucas_pair_at(p: &LucasParams, n: u64) -> (Int, Int) {
    let (mut u0, mut u1) = (Int::from(2), p.a.clone());
    let (mut v0, mut v1) = (Int::zero(), Int::one());
    for _ in 0..n {
        let u2 = &p.a * &u1 + &p.b * &u0;
        let v2 = &p.a * &v1 + &p.b * &v0;
        (u0, u1) = (u1, u2);
        (v0, v1) = (v1, v2);
    }
    (u0, v0)
}

/// `gcd(V_m, V_n) = V_{gcd(m,n)}`.
pub fn gcd_index_identity(p: &LucasParams, m: u64, n: u64) -> bool {
    let vm = lucas_pair_at(p, m).1;
    let vn = lucas_pair_at(p, n).1;
    let vd = lucas_pair_at(p, m.gcd(&n)).1;
    vm.gcd(&vn) == vd.abs()
}

/// Jacobi symbol `(V_m / V_n)` for even `a > 0`, `b = 1`, odd coprime `m, n`.
pub fn jacobi_vv(p: &LucasParams, m: u64, n: u64) -> Result<i8> {
    if !p.is_unit() || !p.a.is_positive() || p.a.is_odd() {
        return Err(domain("jacobi_vv needs a even and positive with b = 1"));
    }
    if m % 2 == 0 || n % 2 == 0 || m.gcd(&n) != 1 {
        return Err(domain(format!("indices must be odd and coprime, got {m} and {n}")));
    }
    jacobi(&lucas_pair_at(p, m).1, &lucas_pair_at(p, n).1)
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct IdentityCheck {
    pub name: String,
    /// `None` when the identity does not apply to these parameters.
    pub holds: Option<bool>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct IdentityReport {
    pub params: LucasParams,
    pub m: u64,
    pub n: u64,
    pub k: u64,
    pub checks: Vec<IdentityCheck>,
}

impl IdentityReport {
    pub fn all_pass(&self) -> bool {
        self.checks.iter().all(|c| c.holds != Some(false))
    }
}

pub fn identity_suite(p: &LucasParams, m: u64, n: u64, k: u64) -> IdentityReport {
    let top = (m + n).max(2 * k * m).max(2 * m + 1).max(m + 1) as usize;
    let (u, v) = lucas_table(p, top);
    IdentityReport { params: p.clone(), m, n, k, checks: check_table(p, &u, &v, m as usize, n as usize, k as usize) }
}

/// Identity checks against a precomputed table covering every index used.
pub(crate) fn check_table(p: &LucasParams, u: &[Int], v: &[Int], m: usize, n: usize, k: usize) -> Vec<IdentityCheck> {
    let sign = |e: usize| if e % 2 == 0 { Int::one() } else { -Int::one() };
    let disc = &p.a * &p.a + 4;
    let unit = p.is_unit();
    let mut out = vec![IdentityCheck {
        name: "2V(m+n) = U(m)V(n) + U(n)V(m)".into(),
        holds: Some(&v[m + n] * 2 == &u[m] * &v[n] + &u[n] * &v[m]),
    }];
    out.push(IdentityCheck {
        name: "U(m)^2 - (a^2+4)V(m)^2 = 4(-1)^m".into(),
        holds: unit.then(|| &u[m] * &u[m] - &disc * &v[m] * &v[m] == sign(m) * 4),
    });
    let km = k * m;
    out.push(IdentityCheck {
        name: "U(2km) - 2(-1)^km = (a^2+4)V(km)^2".into(),
        holds: unit.then(|| &u[2 * km] - sign(km) * 2 == &disc * &v[km] * &v[km]),
    });
    out.push(IdentityCheck {
        name: "U(2km)/2 = (-1)^km mod V(m)".into(),
        holds: (unit && u[2 * km].is_even() && !v[m].is_zero()).then(|| {
            let half: Int = &u[2 * km] / 2;
            (half - sign(km)).mod_floor(&v[m].abs()).is_zero()
        }),
    });
    out.push(IdentityCheck {
        name: "V(2m+1) = V(m)^2 + V(m+1)^2".into(),
        holds: unit.then(|| v[2 * m + 1] == &v[m] * &v[m] + &v[m + 1] * &v[m + 1]),
    });
    out
}
