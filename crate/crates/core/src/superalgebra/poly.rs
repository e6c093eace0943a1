//! Free supercommutative polynomials, used to evaluate identities on generic
//! elements of the Grassmann envelope.

use std::collections::HashMap;
use std::fmt;

use arrayvec::ArrayVec;

use crate::error::{Error, Result};
use crate::scalar::{FieldDesc, Scalar};

use super::Parity;

/// Highest monomial degree the identity checker ever produces.
pub const DEGREE_BOUND: usize = 4;

/// A variable; the low bit of the id is its parity.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Var(u32);

impl Var {
    pub fn new(index: u32, parity: Parity) -> Var {
        Var(index * 2 + parity.bit() as u32)
    }

    pub fn index(self) -> u32 {
        self.0 / 2
    }

    pub fn parity(self) -> Parity {
        Parity::from_bit((self.0 & 1) as u8)
    }
}

/// A sorted product of variables; odd variables appear at most once.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Default)]
pub struct Monomial(ArrayVec<Var, DEGREE_BOUND>);

impl Monomial {
    pub fn one() -> Monomial {
        Monomial(ArrayVec::new())
    }

    pub fn vars(&self) -> &[Var] {
        &self.0
    }

    pub fn degree(&self) -> usize {
        self.0.len()
    }

    /// Product with its Koszul sign; `None` when an odd variable repeats.
    pub fn mul(&self, other: &Monomial) -> Result<Option<(Monomial, bool)>> {
        if self.0.len() + other.0.len() > DEGREE_BOUND {
            return Err(Error::DegreeBound(DEGREE_BOUND));
        }
        let mut negate = false;
        let mut out = ArrayVec::new();
        let (a, b) = (&self.0, &other.0);
        let (mut i, mut j) = (0, 0);
        // Odd factors of `a` still waiting when an odd factor of `b` moves past them.
        let mut odd_left_in_a = a.iter().filter(|v| v.parity().is_odd()).count();
        while i < a.len() || j < b.len() {
            let take_a = j == b.len() || (i < a.len() && a[i] <= b[j]);
            if take_a {
                if j < b.len() && a[i] == b[j] && a[i].parity().is_odd() {
                    return Ok(None);
                }
                if a[i].parity().is_odd() {
                    odd_left_in_a -= 1;
                }
                out.push(a[i]);
                i += 1;
            } else {
                if b[j].parity().is_odd() && odd_left_in_a % 2 == 1 {
                    negate = !negate;
                }
                out.push(b[j]);
                j += 1;
            }
        }
        Ok(Some((Monomial(out), negate)))
    }
}

/// A polynomial in free supercommutative variables.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FreeSuperPoly {
    field: FieldDesc,
    terms: HashMap<Monomial, Scalar>,
}

impl FreeSuperPoly {
    pub fn zero(field: FieldDesc) -> Self {
        FreeSuperPoly {
            field,
            terms: HashMap::new(),
        }
    }

    pub fn var(field: FieldDesc, v: Var) -> Self {
        let mut m = ArrayVec::new();
        m.push(v);
        let mut terms = HashMap::new();
        terms.insert(Monomial(m), field.one());
        FreeSuperPoly { field, terms }
    }

    pub fn field(&self) -> FieldDesc {
        self.field
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn coefficient(&self, m: &Monomial) -> Scalar {
        self.terms.get(m).cloned().unwrap_or_else(|| self.field.zero())
    }

    pub(crate) fn add_term(&mut self, m: Monomial, c: Scalar) {
        if c.is_zero() {
            return;
        }
        match self.terms.get_mut(&m) {
            Some(old) => {
                let s = &*old + &c;
                if s.is_zero() {
                    self.terms.remove(&m);
                } else {
                    *old = s;
                }
            }
            None => {
                self.terms.insert(m, c);
            }
        }
    }

    /// `self += c·other`.
    pub fn add_scaled(&mut self, other: &FreeSuperPoly, c: &Scalar) {
        if c.is_zero() {
            return;
        }
        for (m, s) in &other.terms {
            self.add_term(m.clone(), s * c);
        }
    }

    /// `self += c·(a·b)`.
    pub fn add_product(&mut self, a: &FreeSuperPoly, b: &FreeSuperPoly, c: &Scalar) -> Result<()> {
        if c.is_zero() {
            return Ok(());
        }
        for (ma, ca) in &a.terms {
            let cac = ca * c;
            for (mb, cb) in &b.terms {
                if let Some((m, negate)) = ma.mul(mb)? {
                    let t = &cac * cb;
                    self.add_term(m, if negate { -t } else { t });
                }
            }
        }
        Ok(())
    }

    pub fn mul(&self, other: &FreeSuperPoly) -> Result<FreeSuperPoly> {
        let mut out = FreeSuperPoly::zero(self.field);
        out.add_product(self, other, &self.field.one())?;
        Ok(out)
    }

    /// Nonzero terms in monomial order.
    pub fn sorted_terms(&self) -> Vec<(&Monomial, &Scalar)> {
        let mut v: Vec<_> = self.terms.iter().collect();
        v.sort_by(|a, b| a.0.cmp(b.0));
        v
    }

    /// Renders a monomial using a variable-naming function.
    pub fn format_monomial(m: &Monomial, name: impl Fn(Var) -> String) -> String {
        if m.0.is_empty() {
            return "1".into();
        }
        let mut parts: Vec<String> = Vec::new();
        let mut k = 0;
        while k < m.0.len() {
            let v = m.0[k];
            let mut e = 1;
            while k + e < m.0.len() && m.0[k + e] == v {
                e += 1;
            }
            parts.push(if e == 1 { name(v) } else { format!("{}^{}", name(v), e) });
            k += e;
        }
        parts.join("·")
    }
}

impl fmt::Display for FreeSuperPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let terms = self.sorted_terms();
        if terms.is_empty() {
            return f.write_str("0");
        }
        let parts: Vec<String> = terms
            .into_iter()
            .map(|(m, c)| {
                let mono = FreeSuperPoly::format_monomial(m, |v| {
                    format!("{}{}", if v.parity().is_odd() { "θ" } else { "t" }, v.index())
                });
                format!("{c}·{mono}")
            })
            .collect();
        f.write_str(&parts.join(" + "))
    }
}
