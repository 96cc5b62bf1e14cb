//! Finite-field arithmetic GF(p^m) for orthogonal-array construction.
//!
//! Elements are encoded as integers in `0..p^m`, read as base-`p` digit
//! vectors (coefficients of a polynomial over Z_p). Multiplication reduces
//! modulo a monic irreducible polynomial of degree `m` found by exhaustive
//! search; for the small field orders used here that search is instant.
//! Addition and multiplication tables are precomputed.

pub struct GaloisField {
    size: usize,
    add: Vec<u16>,
    mul: Vec<u16>,
}

/// Factor `q` as `p^m` with `p` prime, if possible.
pub fn prime_power(q: usize) -> Option<(usize, u32)> {
    if q < 2 {
        return None;
    }
    let mut p = 2;
    while p * p <= q {
        if q.is_multiple_of(p) {
            let mut n = q;
            let mut m = 0;
            while n.is_multiple_of(p) {
                n /= p;
                m += 1;
            }
            return (n == 1).then_some((p, m));
        }
        p += 1;
    }
    Some((q, 1)) // q itself is prime
}

/// Decompose `q` into its prime-power components, e.g. 12 -> [4, 3].
pub fn prime_power_parts(q: usize) -> Vec<usize> {
    let mut parts = Vec::new();
    let mut n = q;
    let mut p = 2;
    while p * p <= n {
        if n.is_multiple_of(p) {
            let mut part = 1;
            while n.is_multiple_of(p) {
                part *= p;
                n /= p;
            }
            parts.push(part);
        }
        p += 1;
    }
    if n > 1 {
        parts.push(n);
    }
    parts
}

// Polynomials over Z_p are encoded as digit vectors, least significant first.
fn poly_mul(a: &[usize], b: &[usize], p: usize) -> Vec<usize> {
    let mut out = vec![0usize; a.len() + b.len() - 1];
    for (i, &ai) in a.iter().enumerate() {
        for (j, &bj) in b.iter().enumerate() {
            out[i + j] = (out[i + j] + ai * bj) % p;
        }
    }
    out
}

fn poly_mod(mut a: Vec<usize>, modulus: &[usize], p: usize) -> Vec<usize> {
    let md = modulus.len() - 1;
    while a.len() > md {
        let lead = *a.last().unwrap();
        let shift = a.len() - modulus.len();
        if lead != 0 {
            for (i, &mi) in modulus.iter().enumerate() {
                let idx = shift + i;
                a[idx] = (a[idx] + p - (lead * mi) % p) % p;
            }
        }
        a.pop();
    }
    a
}

fn encode(digits: &[usize], p: usize) -> usize {
    digits.iter().rev().fold(0, |acc, &d| acc * p + d)
}

fn decode(mut v: usize, p: usize, m: u32) -> Vec<usize> {
    (0..m)
        .map(|_| {
            let d = v % p;
            v /= p;
            d
        })
        .collect()
}

/// Monic degree-`m` polynomial irreducible over Z_p, found by trial division.
fn find_irreducible(p: usize, m: u32) -> Vec<usize> {
    let q = p.pow(m);
    'cand: for tail in 0..q {
        let mut poly = decode(tail, p, m);
        poly.push(1); // monic
        for d in 1..=(m / 2) {
            let qd = p.pow(d);
            for dt in 0..qd {
                let mut div = decode(dt, p, d);
                div.push(1);
                if poly_divides(&div, &poly, p) {
                    continue 'cand;
                }
            }
        }
        return poly;
    }
    unreachable!("an irreducible polynomial of every degree exists over Z_p")
}

fn poly_divides(div: &[usize], poly: &[usize], p: usize) -> bool {
    poly_mod(poly.to_vec(), div, p).iter().all(|&c| c == 0)
}

impl GaloisField {
    /// Build GF(q). Returns `None` when `q` is not a prime power.
    pub fn new(q: usize) -> Option<GaloisField> {
        let (p, m) = prime_power(q)?;
        let irreducible = find_irreducible(p, m);
        let mut add = vec![0u16; q * q];
        let mut mul = vec![0u16; q * q];
        for a in 0..q {
            let da = decode(a, p, m);
            for b in 0..q {
                let db = decode(b, p, m);
                let sum: Vec<usize> = da.iter().zip(&db).map(|(&x, &y)| (x + y) % p).collect();
                add[a * q + b] = encode(&sum, p) as u16;
                let prod = poly_mod(poly_mul(&da, &db, p), &irreducible, p);
                mul[a * q + b] = encode(&prod, p) as u16;
            }
        }
        Some(GaloisField { size: q, add, mul })
    }

    pub fn add(&self, a: usize, b: usize) -> usize {
        self.add[a * self.size + b] as usize
    }

    pub fn mul(&self, a: usize, b: usize) -> usize {
        self.mul[a * self.size + b] as usize
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn prime_power_detection() {
        assert_eq!(prime_power(2), Some((2, 1)));
        assert_eq!(prime_power(9), Some((3, 2)));
        assert_eq!(prime_power(16), Some((2, 4)));
        assert_eq!(prime_power(12), None);
        assert_eq!(prime_power(1), None);
        assert_eq!(prime_power(13), Some((13, 1)));
    }

    #[test]
    fn parts_of_composites() {
        assert_eq!(prime_power_parts(12), vec![4, 3]);
        assert_eq!(prime_power_parts(360), vec![8, 9, 5]);
        assert_eq!(prime_power_parts(7), vec![7]);
    }

    fn check_field_axioms(q: usize) {
        let f = GaloisField::new(q).unwrap();
        // additive and multiplicative identities
        for a in 0..q {
            assert_eq!(f.add(a, 0), a);
            assert_eq!(f.mul(a, 1), a);
            assert_eq!(f.mul(a, 0), 0);
        }
        // every nonzero element has a multiplicative inverse
        for a in 1..q {
            assert!((1..q).any(|b| f.mul(a, b) == 1), "no inverse for {a} in GF({q})");
        }
        // commutativity and distributivity on all triples
        for a in 0..q {
            for b in 0..q {
                assert_eq!(f.add(a, b), f.add(b, a));
                assert_eq!(f.mul(a, b), f.mul(b, a));
                for c in 0..q {
                    assert_eq!(f.mul(a, f.add(b, c)), f.add(f.mul(a, b), f.mul(a, c)));
                }
            }
        }
    }

    #[test]
    fn field_axioms_hold_for_small_orders() {
        for q in [2, 3, 4, 5, 7, 8, 9, 11, 13] {
            check_field_axioms(q);
        }
    }

    #[test]
    fn gf4_is_not_z4() {
        let f = GaloisField::new(4).unwrap();
        // characteristic 2: x + x = 0 for all x
        for a in 0..4 {
            assert_eq!(f.add(a, a), 0);
        }
    }
}
