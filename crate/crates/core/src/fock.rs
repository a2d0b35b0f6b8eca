//! Occupation-vector bases of the Fock modules.
//!
//! Mode indices are 1-based, `1..=n` bosonic and `n+1..=n+m` fermionic.
//! Index 0 is the auxiliary bosonic index used by the gl extension.
//!
//! Basis order: ascending total degree `R = Σ r_i`, ties broken
//! lexicographically on `(r_1, ..., r_{n+m})`. The basis for cutoff `K` is
//! therefore a prefix of the basis for any cutoff `K' > K`.

use std::collections::HashMap;
use std::fmt;

use num_complex::Complex64;

use crate::error::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct ModeSignature {
    n: usize,
    m: usize,
}

impl ModeSignature {
    pub fn new(n: usize, m: usize) -> Result<Self> {
        if n + m == 0 {
            return Err(Error::Domain("need at least one mode (n + m >= 1)".into()));
        }
        Ok(Self { n, m })
    }

    /// Bosonic mode count.
    pub fn n(&self) -> usize {
        self.n
    }

    /// Fermionic mode count.
    pub fn m(&self) -> usize {
        self.m
    }

    pub fn modes(&self) -> usize {
        self.n + self.m
    }

    /// Grading of index `i ∈ [0; n+m]`: 0 for `i <= n`, 1 above.
    pub fn theta(&self, i: usize) -> u8 {
        u8::from(i > self.n)
    }

    pub fn is_fermionic(&self, i: usize) -> bool {
        self.theta(i) == 1
    }

    /// `(-1)^{θ_i}`.
    pub fn sign(&self, i: usize) -> f64 {
        if self.is_fermionic(i) {
            -1.0
        } else {
            1.0
        }
    }

    pub fn check_mode(&self, i: usize) -> Result<()> {
        if i == 0 || i > self.modes() {
            return Err(Error::IndexOutOfRange { index: i, lo: 1, hi: self.modes() });
        }
        Ok(())
    }

    pub fn check_index(&self, i: usize) -> Result<()> {
        if i > self.modes() {
            return Err(Error::IndexOutOfRange { index: i, lo: 0, hi: self.modes() });
        }
        Ok(())
    }
}

impl fmt::Display for ModeSignature {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({}|{})", self.n, self.m)
    }
}

/// Occupations `(r_1, ..., r_{n+m})`, stored 0-based.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct OccupationVector(Vec<u32>);

impl OccupationVector {
    pub fn new(sig: &ModeSignature, r: Vec<u32>) -> Result<Self> {
        if r.len() != sig.modes() {
            return Err(Error::ShapeMismatch(format!(
                "occupation vector has {} entries, signature {sig} needs {}",
                r.len(),
                sig.modes()
            )));
        }
        if let Some(k) = (sig.n()..sig.modes()).find(|&k| r[k] > 1) {
            return Err(Error::Domain(format!("fermionic mode {} occupied {} times", k + 1, r[k])));
        }
        Ok(Self(r))
    }

    pub fn vacuum(sig: &ModeSignature) -> Self {
        Self(vec![0; sig.modes()])
    }

    /// Occupation of mode `i` (1-based).
    pub fn get(&self, i: usize) -> u32 {
        self.0[i - 1]
    }

    pub fn as_slice(&self) -> &[u32] {
        &self.0
    }

    pub fn degree(&self) -> u32 {
        self.0.iter().sum()
    }

    /// `r_1 + ... + r_{i-1}`.
    pub fn prefix_degree(&self, i: usize) -> u32 {
        self.0[..i - 1].iter().sum()
    }

    /// `(-1)^{θ_1 r_1 + ... + θ_{i-1} r_{i-1}}`.
    pub fn prefix_sign(&self, sig: &ModeSignature, i: usize) -> f64 {
        let odd: u32 = self.0[..i - 1]
            .iter()
            .enumerate()
            .filter(|(k, _)| sig.is_fermionic(k + 1))
            .map(|(_, &r)| r)
            .sum();
        if odd.is_multiple_of(2) {
            1.0
        } else {
            -1.0
        }
    }

    /// Copy with mode `i` shifted by `delta`; `None` if it would go negative.
    pub fn shifted(&self, i: usize, delta: i32) -> Option<Self> {
        let v = self.0[i - 1] as i64 + delta as i64;
        if v < 0 {
            return None;
        }
        let mut r = self.0.clone();
        r[i - 1] = v as u32;
        Some(Self(r))
    }
}

impl fmt::Display for OccupationVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(")?;
        for (k, r) in self.0.iter().enumerate() {
            if k > 0 {
                write!(f, ",")?;
            }
            write!(f, "{r}")?;
        }
        write!(f, ")")
    }
}

/// Prefix data entering the Jacobson generator actions on mode `i`:
/// `(r_1 + ... + r_{i-1}, (-1)^{Σ_{j<i} θ_j r_j})`.
pub fn grading_data(sig: &ModeSignature, v: &OccupationVector, i: usize) -> Result<(u32, f64)> {
    sig.check_mode(i)?;
    if v.0.len() != sig.modes() {
        return Err(Error::ShapeMismatch("occupation vector length".into()));
    }
    Ok((v.prefix_degree(i), v.prefix_sign(sig, i)))
}

/// Streams the admissible occupation vectors with `Σ r <= cutoff` in
/// canonical order without building an index.
#[derive(Debug, Clone)]
pub struct Occupations {
    sig: ModeSignature,
    cutoff: u32,
    degree: u32,
    current: Option<Vec<u32>>,
}

impl Occupations {
    pub fn new(sig: ModeSignature, cutoff: u32) -> Self {
        Self { sig, cutoff, degree: 0, current: Some(vec![0; sig.modes()]) }
    }

    fn cap(&self, k: usize) -> u32 {
        if self.sig.is_fermionic(k + 1) {
            1
        } else {
            u32::MAX
        }
    }

    /// Lexicographically smallest admissible vector of degree `d`, if any.
    fn first_of_degree(&self, d: u32) -> Option<Vec<u32>> {
        let len = self.sig.modes();
        let mut r = vec![0u32; len];
        let mut left = d;
        for k in (0..len).rev() {
            let put = left.min(self.cap(k));
            r[k] = put;
            left -= put;
        }
        (left == 0).then_some(r)
    }

    /// Next vector of the same degree in lex order.
    fn next_same_degree(&self, r: &[u32]) -> Option<Vec<u32>> {
        let len = r.len();
        // find the rightmost position k that can be incremented while the
        // suffix k+1.. still carries at least one unit to give up
        for k in (0..len.saturating_sub(1)).rev() {
            let suffix: u32 = r[k + 1..].iter().sum();
            if suffix == 0 || r[k] >= self.cap(k) {
                continue;
            }
            let mut next = r.to_vec();
            next[k] += 1;
            let mut left = suffix - 1;
            // refill the suffix with the lexicographically smallest arrangement
            for j in (k + 1..len).rev() {
                let put = left.min(self.cap(j));
                next[j] = put;
                left -= put;
            }
            if left == 0 {
                return Some(next);
            }
        }
        None
    }
}

impl Iterator for Occupations {
    type Item = OccupationVector;

    fn next(&mut self) -> Option<Self::Item> {
        let out = self.current.take()?;
        let mut next = self.next_same_degree(&out);
        while next.is_none() && self.degree < self.cutoff {
            self.degree += 1;
            next = self.first_of_degree(self.degree);
            if next.is_none() {
                // no admissible vector of this degree means none above either
                self.degree = self.cutoff;
            }
        }
        self.current = next;
        Some(OccupationVector(out))
    }
}

/// Ordered basis of (a truncation of) the Fock module with label `p`.
#[derive(Debug, Clone)]
pub struct FockBasis {
    signature: ModeSignature,
    p: Complex64,
    cutoff: usize,
    vectors: Vec<OccupationVector>,
    degrees: Vec<u32>,
    index: HashMap<OccupationVector, usize>,
}

impl PartialEq for FockBasis {
    fn eq(&self, other: &Self) -> bool {
        self.signature == other.signature && self.cutoff == other.cutoff && self.p == other.p
    }
}

impl FockBasis {
    /// All admissible occupation vectors with `Σ r <= cutoff`.
    pub fn enumerate(signature: ModeSignature, p: Complex64, cutoff: usize) -> Self {
        let vectors: Vec<_> = Occupations::new(signature, cutoff as u32).collect();
        let degrees = vectors.iter().map(OccupationVector::degree).collect();
        let index = vectors.iter().cloned().enumerate().map(|(k, v)| (v, k)).collect();
        Self { signature, p, cutoff, vectors, degrees, index }
    }

    pub fn signature(&self) -> ModeSignature {
        self.signature
    }

    pub fn p(&self) -> Complex64 {
        self.p
    }

    pub fn cutoff(&self) -> usize {
        self.cutoff
    }

    pub fn len(&self) -> usize {
        self.vectors.len()
    }

    pub fn is_empty(&self) -> bool {
        self.vectors.is_empty()
    }

    pub fn vectors(&self) -> &[OccupationVector] {
        &self.vectors
    }

    /// Total degree of the basis vector at `rank`.
    pub fn degree(&self, rank: usize) -> u32 {
        self.degrees[rank]
    }

    pub fn rank(&self, v: &OccupationVector) -> Option<usize> {
        self.index.get(v).copied()
    }

    pub fn unrank(&self, k: usize) -> Option<&OccupationVector> {
        self.vectors.get(k)
    }

    /// Number of basis vectors with degree `<= d` (they form a prefix).
    pub fn prefix_len(&self, d: usize) -> usize {
        self.degrees.partition_point(|&r| (r as usize) <= d)
    }
}

pub fn enumerate_basis(sig: ModeSignature, p: Complex64, cutoff: usize) -> FockBasis {
    FockBasis::enumerate(sig, p, cutoff)
}

/// `dim W_p = Σ_{k=0}^{min(m,p)} C(m,k) C(p-k+n, n)`.
pub fn dimension(sig: &ModeSignature, p: u32) -> u64 {
    let (n, m) = (sig.n() as u64, sig.m() as u64);
    let p = p as u64;
    (0..=m.min(p)).map(|k| binomial(m, k) * binomial(p - k + n, n)).sum()
}

fn binomial(n: u64, k: u64) -> u64 {
    if k > n {
        return 0;
    }
    let k = k.min(n - k);
    (0..k).fold(1u64, |acc, j| acc * (n - j) / (j + 1))
}
