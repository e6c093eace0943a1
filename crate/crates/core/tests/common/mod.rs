//! Independent brute-force checkers and the small-algebra test corpus.
#![allow(dead_code)]

use superdelta::constructions::{
    b12, b42, full_matrix_algebra, grassmann, kantor_double, poisson_grassmann, truncated_poly,
    vector_bracket, Bracket,
};
use superdelta::superalgebra::{plus, tensor_super, Parity, SuperAlgebra};
use superdelta::{FieldDesc, Scalar};

pub fn fp(p: u64) -> FieldDesc {
    FieldDesc::prime(p).unwrap()
}

pub const Q: FieldDesc = FieldDesc::Rationals;

#[allow(clippy::needless_range_loop)]
fn mul(alg: &SuperAlgebra, a: &[Scalar], b: &[Scalar]) -> Vec<Scalar> {
    let n = alg.dim();
    let mut out = vec![alg.field().zero(); n];
    for i in 0..n {
        if a[i].is_zero() {
            continue;
        }
        for j in 0..n {
            if b[j].is_zero() {
                continue;
            }
            let c = &a[i] * &b[j];
            for (k, s) in alg.product(i, j) {
                out[*k] = &out[*k] + &(&c * s);
            }
        }
    }
    out
}

fn unit_vec(alg: &SuperAlgebra, i: usize) -> Vec<Scalar> {
    let mut v = vec![alg.field().zero(); alg.dim()];
    v[i] = alg.field().one();
    v
}

/// A pure tensor `θ_mask ⊗ v` in the Grassmann envelope, `v` homogeneous.
#[derive(Clone)]
struct Pure {
    mask: u64,
    v: Vec<Scalar>,
}

fn pure_mul(alg: &SuperAlgebra, a: &Pure, b: &Pure) -> Option<Pure> {
    if a.mask & b.mask != 0 {
        return None;
    }
    // Moving θ_b past v_a gives (-1)^{p(v_a)p(θ_b)}; p(v_a) = |θ_a| mod 2.
    let mut flips = (a.mask.count_ones() * b.mask.count_ones()) % 2;
    // Merging θ_a θ_b into ascending order.
    for j in 0..64 {
        if b.mask >> j & 1 == 1 {
            flips += (a.mask >> (j + 1)).count_ones();
        }
    }
    let mut v = mul(alg, &a.v, &b.v);
    if flips % 2 == 1 {
        v = v.iter().map(|x| -x).collect();
    }
    Some(Pure { mask: a.mask | b.mask, v })
}

fn acc(total: &mut [Scalar], t: Option<Pure>, sign: bool) {
    if let Some(t) = t {
        for (o, x) in total.iter_mut().zip(&t.v) {
            *o = if sign { &*o - x } else { &*o + x };
        }
    }
}

fn permutations(ms: &[usize]) -> Vec<Vec<usize>> {
    let mut out: Vec<Vec<usize>> = Vec::new();
    fn go(rest: &mut Vec<usize>, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if rest.is_empty() {
            if !out.contains(cur) {
                out.push(cur.clone());
            }
            return;
        }
        for i in 0..rest.len() {
            let x = rest.remove(i);
            cur.push(x);
            go(rest, cur, out);
            cur.pop();
            rest.insert(i, x);
        }
    }
    go(&mut ms.to_vec(), &mut Vec::new(), &mut out);
    out
}

/// Jordan superalgebra test through the Grassmann envelope, one
/// multihomogeneous component at a time.
///
/// `x = Σ λ_k θ_k e_k` (θ_k = 1 for even e_k) and `y = θ' e_l`; the
/// coefficient of `λ_{s1}λ_{s2}λ_{s3}` in `(x²y)x - x²(yx)` is summed over
/// the distinct orderings of the multiset `{s1,s2,s3}`.
pub fn brute_jordan(alg: &SuperAlgebra) -> bool {
    let n = alg.dim();
    let odd = |i: usize| alg.parity(i) == Parity::Odd;
    let term = |i: usize, gen: u64| Pure {
        mask: if odd(i) { 1 << gen } else { 0 },
        v: unit_vec(alg, i),
    };
    // Envelope commutativity on pure tensors of basis vectors.
    for i in 0..n {
        for j in 0..n {
            let a = term(i, 0);
            let b = term(j, 1);
            let mut d = vec![alg.field().zero(); n];
            acc(&mut d, pure_mul(alg, &a, &b), false);
            acc(&mut d, pure_mul(alg, &b, &a), true);
            if d.iter().any(|s| !s.is_zero()) {
                return false;
            }
        }
    }
    let y_gen = n as u64;
    for s1 in 0..n {
        for s2 in s1..n {
            for s3 in s2..n {
                let orders = permutations(&[s1, s2, s3]);
                for l in 0..n {
                    let y = term(l, y_gen);
                    let mut total = vec![alg.field().zero(); n];
                    for o in &orders {
                        let x1 = term(o[0], o[0] as u64);
                        let x2 = term(o[1], o[1] as u64);
                        let x3 = term(o[2], o[2] as u64);
                        let xx = pure_mul(alg, &x1, &x2);
                        let lhs = xx
                            .as_ref()
                            .and_then(|xx| pure_mul(alg, xx, &y))
                            .and_then(|t| pure_mul(alg, &t, &x3));
                        let rhs = xx
                            .as_ref()
                            .and_then(|xx| pure_mul(alg, &y, &x3).and_then(|yx| pure_mul(alg, xx, &yx)));
                        // Every surviving term carries the same Grassmann monomial.
                        acc(&mut total, lhs, false);
                        acc(&mut total, rhs, true);
                    }
                    if total.iter().any(|s| !s.is_zero()) {
                        return false;
                    }
                }
            }
        }
    }
    true
}

/// Counts δ-superderivations of the given parity by enumerating every
/// matrix over a prime field (only feasible for tiny dimensions).
pub fn brute_delta_count(alg: &SuperAlgebra, delta: &Scalar, parity: Option<Parity>) -> u64 {
    let n = alg.dim();
    let field = alg.field();
    let elems = field.elements().expect("finite field");
    let p = elems.len();
    let free: Vec<(usize, usize)> = (0..n)
        .flat_map(|r| (0..n).map(move |c| (r, c)))
        .filter(|&(r, c)| match parity {
            None => true,
            Some(q) => alg.parity(r) == alg.parity(c) + q,
        })
        .collect();
    let total = (p as u64).pow(free.len() as u32);
    let mut count = 0;
    for code in 0..total {
        let mut m = vec![vec![field.zero(); n]; n];
        let mut rest = code;
        for &(r, c) in &free {
            m[r][c] = elems[(rest % p as u64) as usize].clone();
            rest /= p as u64;
        }
        let ok = satisfies_delta(alg, &m, delta, parity);
        if ok {
            count += 1;
        }
    }
    count
}

/// Pointwise check of `φ(xy) = δ(φ(x)y + s·xφ(y))` on all basis pairs, with
/// `m` given row-major and `s = (-1)^{p(x)π}` (no sign when `parity` is None).
pub fn satisfies_delta(alg: &SuperAlgebra, m: &[Vec<Scalar>], delta: &Scalar, parity: Option<Parity>) -> bool {
    let n = alg.dim();
    let field = alg.field();
    let apply = |v: &[Scalar]| -> Vec<Scalar> {
        (0..n)
            .map(|r| (0..n).fold(field.zero(), |a, c| &a + &(&m[r][c] * &v[c])))
            .collect()
    };
    for i in 0..n {
        let ei = unit_vec(alg, i);
        let fi = apply(&ei);
        let negate = parity.is_some_and(|q| alg.parity(i).koszul(q));
        for j in 0..n {
            let ej = unit_vec(alg, j);
            let lhs = apply(&mul(alg, &ei, &ej));
            let a = mul(alg, &fi, &ej);
            let b = mul(alg, &ei, &apply(&ej));
            for k in 0..n {
                let inner = if negate { &a[k] - &b[k] } else { &a[k] + &b[k] };
                if lhs[k] != delta * &inner {
                    return false;
                }
            }
        }
    }
    true
}

/// Vector-type bracket of `∂₁` on `B(1)` over `𝔽_p`.
pub fn b1_vector(p: u64) -> (SuperAlgebra, Bracket) {
    let b = truncated_poly(1, p).unwrap();
    let br = vector_bracket(b.algebra(), &b.partial_derivative(1).unwrap()).unwrap();
    (b.into_algebra(), br)
}

/// `{a,b} = D(a)b + aD(b)` on `B(1)`: graded, but not super-skew.
pub fn b1_flipped(p: u64) -> (SuperAlgebra, Bracket) {
    let b = truncated_poly(1, p).unwrap();
    let g = b.algebra().clone();
    let d = b.partial_derivative(1).unwrap();
    let n = g.dim();
    let mut entries = Vec::new();
    for i in 0..n {
        let di = d.apply(&g.basis(i));
        for j in 0..n {
            let dj = d.apply(&g.basis(j));
            let l = g.multiply(&di, &g.basis(j)).unwrap();
            let r = g.multiply(&g.basis(i), &dj).unwrap();
            for k in 0..n {
                let c = &l.coords()[k] + &r.coords()[k];
                entries.push((i, j, k, c));
            }
        }
    }
    let br = Bracket::new(&g, entries).unwrap();
    (g, br)
}

/// Named algebras of dimension at most 6 used across the test suites.
pub fn small_corpus() -> Vec<(&'static str, SuperAlgebra)> {
    let mut out = vec![
        ("G(1) over Q", grassmann(1, Q)),
        ("G(2) over Q", grassmann(2, Q)),
        ("G(2) over F3", grassmann(2, fp(3))),
        ("B(1) over F3", truncated_poly(1, 3).unwrap().into_algebra()),
        ("B(1) over F5", truncated_poly(1, 5).unwrap().into_algebra()),
        ("M2 over Q", full_matrix_algebra(2, Q)),
        ("M2+ over Q", plus(&full_matrix_algebra(2, Q)).unwrap()),
        ("M2+ over F3", plus(&full_matrix_algebra(2, fp(3))).unwrap()),
        ("B(1,2) over F3", b12(fp(3)).unwrap().0),
        ("B(4,2) over F3", b42(fp(3)).unwrap().0),
        ("B(4,2)+ over F3", plus(&b42(fp(3)).unwrap().0).unwrap()),
        ("B(1,2)+ over F3", plus(&b12(fp(3)).unwrap().0).unwrap()),
        ("G(1)⊗B(1) over F3", tensor_super(&grassmann(1, fp(3)), &truncated_poly(1, 3).unwrap().into_algebra()).unwrap()),
    ];
    let (g, br) = b1_vector(3);
    out.push(("J(B(1),∂) over F3", kantor_double(&g, &br).unwrap()));
    let (g, br) = b1_flipped(3);
    out.push(("J(B(1),flipped) over F3", kantor_double(&g, &br).unwrap()));
    let br = poisson_grassmann(1, Q).unwrap();
    out.push(("J(G(1),Poisson) over Q", kantor_double(br.gamma(), &br).unwrap()));
    let br = poisson_grassmann(1, fp(5)).unwrap();
    out.push(("J(G(1),Poisson) over F5", kantor_double(br.gamma(), &br).unwrap()));
    out.retain(|(_, a)| a.dim() <= 6);
    out
}
