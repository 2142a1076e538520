//! Root-of-unity machinery: the membership character sum, the identity
//! that turns a whole-space extended enumerator into the enumerator of an
//! SC code, and its closed-form BLC Hamming instance.

use num_bigint::BigInt;
use num_traits::One;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::codes::{BlcSpec, CodeSpec, ScSpec, Word};
use crate::distances::DistanceKind;
use crate::error::{Error, Result};
use crate::exec::Execution;
use crate::oracle::{Enumerator, Method};
use crate::polynomial::{
    with_escalation, HpComplex, HpPoly, HpReal, HpScalar, IntPoly, Precision, RootTable,
    PIPELINE_TOLERANCE,
};

/// The exact root of unity `e(k/m)`, with `k` reduced into `[0, m)`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct UnitRoot {
    k: u64,
    m: u64,
}

impl UnitRoot {
    pub fn new(k: i64, m: u64) -> Self {
        assert!(m >= 1, "modulus must be positive");
        UnitRoot {
            k: (k as i128).rem_euclid(m as i128) as u64,
            m,
        }
    }

    pub fn one(m: u64) -> Self {
        UnitRoot { k: 0, m }
    }

    pub fn k(self) -> u64 {
        self.k
    }

    pub fn m(self) -> u64 {
        self.m
    }

    pub fn pow(self, e: i64) -> Self {
        UnitRoot {
            k: (self.k as i128 * e as i128).rem_euclid(self.m as i128) as u64,
            m: self.m,
        }
    }

    pub fn conj(self) -> Self {
        UnitRoot::new(-(self.k as i64), self.m)
    }

    /// Looks the value up in a table of matching modulus.
    pub fn value(self, table: &RootTable) -> &HpComplex {
        assert_eq!(table.modulus(), self.m, "root table of wrong modulus");
        table.get(self.k as i64)
    }
}

impl std::ops::Mul for UnitRoot {
    type Output = UnitRoot;

    fn mul(self, rhs: Self) -> Self {
        assert_eq!(self.m, rhs.m, "roots of different order");
        UnitRoot {
            k: (self.k + rhs.k) % self.m,
            m: self.m,
        }
    }
}

/// A closed form for `E([r]^n, rho; z, u, v)` evaluated at `u_i = e(j_i/m_i)`,
/// `v_i = e(k_i/m_i)`. `roots[i]` is the table for modulus `m_i`.
///
/// The identity requires the enumerator to have integer coefficients,
/// so that conjugating the roots conjugates the result.
pub trait WholeSpaceEnumerator: Sync {
    fn evaluate(
        &self,
        u: &[UnitRoot],
        v: &[UnitRoot],
        roots: &[RootTable],
        prec: Precision,
    ) -> Result<HpPoly<HpComplex>>;
}

impl<F> WholeSpaceEnumerator for F
where
    F: Fn(&[UnitRoot], &[UnitRoot], &[RootTable], Precision) -> Result<HpPoly<HpComplex>> + Sync,
{
    fn evaluate(
        &self,
        u: &[UnitRoot],
        v: &[UnitRoot],
        roots: &[RootTable],
        prec: Precision,
    ) -> Result<HpPoly<HpComplex>> {
        self(u, v, roots, prec)
    }
}

/// Binary Hamming whole space with the linear map `x -> sum h_i x_i`:
/// `prod_i (1 + (uv)^{h_i} + (u^{h_i} + v^{h_i}) z)`.
#[derive(Clone, Debug)]
pub struct BlcHammingWholeSpace {
    pub h: Vec<i64>,
}

impl WholeSpaceEnumerator for BlcHammingWholeSpace {
    fn evaluate(
        &self,
        u: &[UnitRoot],
        v: &[UnitRoot],
        roots: &[RootTable],
        prec: Precision,
    ) -> Result<HpPoly<HpComplex>> {
        if u.len() != 1 || v.len() != 1 || roots.len() != 1 {
            return Err(Error::Precondition(
                "BLC whole space takes one congruence".into(),
            ));
        }
        let table = &roots[0];
        let (u, v) = (u[0], v[0]);
        let mut acc = HpPoly::constant(HpComplex::one(prec), prec);
        for &h in &self.h {
            let uh = u.pow(h);
            let vh = v.pow(h);
            let c0 = HpComplex::one(prec).add((uh * vh).value(table), prec);
            let c1 = uh.value(table).add(vh.value(table), prec);
            acc = acc.mul_linear(&c0, &c1);
        }
        Ok(acc)
    }
}

/// The same product for arbitrary complex `u`, `v` on the unit circle.
pub fn blc_whole_space(
    h: &[i64],
    uroot: &HpComplex,
    vroot: &HpComplex,
    prec: Precision,
) -> HpPoly<HpComplex> {
    let uv = uroot.mul(vroot, prec);
    h.iter()
        .fold(HpPoly::constant(HpComplex::one(prec), prec), |acc, &hi| {
            let uh = uroot.powi(hi, prec);
            let vh = vroot.powi(hi, prec);
            let c0 = HpComplex::one(prec).add(&uv.powi(hi, prec), prec);
            acc.mul_linear(&c0, &uh.add(&vh, prec))
        })
}

/// `prod_i (1/m_i) sum_k e(k (rho_i(x) - a_i) / m_i)`: one for codewords,
/// zero otherwise.
pub fn membership_charsum(x: &Word, spec: &ScSpec, prec: Precision) -> Result<HpComplex> {
    if x.len() != spec.n() {
        return Err(Error::LengthMismatch {
            expected: spec.n(),
            got: x.len(),
        });
    }
    let mut acc = HpComplex::one(prec);
    for ((rho, &a), &m) in spec.rho().iter().zip(spec.a()).zip(spec.m()) {
        let table = RootTable::new(m, prec);
        let t = rho.residue(x, m)?;
        let shift = ((t + m - a) % m) as i64;
        let mut sum = HpComplex::zero(prec);
        for k in 0..m as i64 {
            sum = sum.add(table.get(k * shift), prec);
        }
        let inv = HpReal::from_i64(1, prec).div_int(m as i64, prec);
        acc = acc.mul(&sum.scale_real(&inv, prec), prec);
    }
    Ok(acc)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Default)]
pub enum SummationOrder {
    #[default]
    Forward,
    Reverse,
}

#[derive(Clone, Copy, Debug)]
pub struct SpectralOptions {
    /// Working precision; `None` picks `2n + 64` plus the bits of the grid size.
    pub precision: Option<Precision>,
    pub order: SummationOrder,
    /// Evaluate one of each conjugate pair of grid points.
    pub prune: bool,
    /// Refuse grids with more than `2^grid_guard_log2` points.
    pub grid_guard_log2: u32,
    pub exec: Execution,
}

impl Default for SpectralOptions {
    fn default() -> Self {
        SpectralOptions {
            precision: None,
            order: SummationOrder::Forward,
            prune: true,
            grid_guard_log2: 24,
            exec: Execution::default(),
        }
    }
}

/// Mixed-radix decoding of a flat grid index into `(j, k)` vectors.
struct Grid {
    moduli: Vec<u64>,
    size: u64,
}

impl Grid {
    fn new(moduli: &[u64], guard_log2: u32) -> Result<Self> {
        let mut size: u128 = 1;
        for &m in moduli {
            size = size.saturating_mul(m as u128 * m as u128);
        }
        if size > 1u128 << guard_log2 {
            return Err(Error::guard(
                "character-sum grid size",
                size,
                format!("2^{guard_log2}"),
            ));
        }
        Ok(Grid {
            moduli: moduli.to_vec(),
            size: size as u64,
        })
    }

    fn decode(&self, mut g: u64) -> (Vec<UnitRoot>, Vec<UnitRoot>) {
        let mut j = Vec::with_capacity(self.moduli.len());
        let mut k = Vec::with_capacity(self.moduli.len());
        for &m in &self.moduli {
            j.push(UnitRoot::new((g % m) as i64, m));
            g /= m;
            k.push(UnitRoot::new((g % m) as i64, m));
            g /= m;
        }
        (j, k)
    }

    fn encode(&self, j: &[UnitRoot], k: &[UnitRoot]) -> u64 {
        let mut g = 0;
        for i in (0..self.moduli.len()).rev() {
            let m = self.moduli[i];
            g = (g * m + k[i].k()) * m + j[i].k();
        }
        g
    }

    /// Index of the conjugate point `(-j, -k)`.
    fn partner(&self, g: u64) -> u64 {
        let (j, k) = self.decode(g);
        let jc: Vec<_> = j.iter().map(|r| r.conj()).collect();
        let kc: Vec<_> = k.iter().map(|r| r.conj()).collect();
        self.encode(&jc, &kc)
    }
}

/// Evaluates
/// `D(C; z) = (prod_i m_i^-2) sum_{j,k} prod_i e(-a_i (j_i + k_i)/m_i) E(z, e(j/m), e(k/m))`
/// and rounds the result to an integer polynomial.
pub fn theorem1_enumerator(
    spec: &ScSpec,
    ws: &dyn WholeSpaceEnumerator,
    opts: SpectralOptions,
) -> Result<IntPoly> {
    let grid = Grid::new(spec.m(), opts.grid_guard_log2)?;
    let start = opts.precision.unwrap_or_else(|| {
        Precision::for_degree(spec.n()).with_extra(64 - grid.size.leading_zeros())
    });
    with_escalation(start, |prec| theorem1_at(spec, ws, &grid, opts, prec))
}

fn theorem1_at(
    spec: &ScSpec,
    ws: &dyn WholeSpaceEnumerator,
    grid: &Grid,
    opts: SpectralOptions,
    prec: Precision,
) -> Result<IntPoly> {
    let tables: Vec<RootTable> = spec.m().iter().map(|&m| RootTable::new(m, prec)).collect();
    let two = HpComplex::from_f64(2.0, 0.0, prec);
    let term = |g: u64| -> Result<Option<HpPoly<HpComplex>>> {
        let mut factor = None;
        if opts.prune {
            match grid.partner(g).cmp(&g) {
                std::cmp::Ordering::Less => return Ok(None),
                std::cmp::Ordering::Equal => {}
                std::cmp::Ordering::Greater => factor = Some(&two),
            }
        }
        let (j, k) = grid.decode(g);
        let mut weight = HpComplex::one(prec);
        for (i, table) in tables.iter().enumerate() {
            let e = (j[i] * k[i]).pow(-(spec.a()[i] as i64));
            weight = weight.mul(e.value(table), prec);
        }
        let poly = ws.evaluate(&j, &k, &tables, prec)?.scale(&weight);
        if !opts.prune {
            return Ok(Some(poly));
        }
        // the partner term is the conjugate, so the pair sums to twice the real part
        let re = HpPoly::from_coeffs(
            poly.coeffs()
                .iter()
                .map(|c| HpComplex::new(c.re(), HpReal::zero(prec)))
                .collect(),
            prec,
        );
        Ok(Some(match factor {
            Some(f) => re.scale(f),
            None => re,
        }))
    };
    let mut terms = opts.exec.try_map(grid.size as usize, |g| term(g as u64))?;
    if opts.order == SummationOrder::Reverse {
        terms.reverse();
    }
    let mut sum = HpPoly::<HpComplex>::zero(prec);
    for t in terms.into_iter().flatten() {
        sum = sum.add(&t)?;
    }
    let rounded = sum.round_to_int_poly(PIPELINE_TOLERANCE)?;
    rounded.poly.div_exact(&BigInt::from(grid.size))
}

/// The enumerator of a BLC code via the closed-form whole space.
pub fn blc_hamming_enumerator(spec: &BlcSpec, opts: SpectralOptions) -> Result<Enumerator> {
    let ws = BlcHammingWholeSpace { h: spec.h.clone() };
    let poly = theorem1_enumerator(&spec.to_sc(), &ws, opts)?;
    Ok(Enumerator {
        poly,
        code: CodeSpec::Blc(spec.clone()),
        distance: DistanceKind::Hamming,
        method: Method::Spectral,
    })
}

/// Spectral enumerator for any code with a BLC view, keeping the original
/// code tag.
pub fn spectral_enumerator(code: &CodeSpec, opts: SpectralOptions) -> Result<Enumerator> {
    let blc = code.as_blc().ok_or_else(|| {
        Error::Unsupported(format!("{code} has no binary linear congruence view"))
    })?;
    Ok(blc_hamming_enumerator(&blc, opts)?.with_code(code.clone()))
}

/// Reproducible random BLC specs with `n <= 12`, `m <= 12` and weights
/// in `[-5, 5]`.
pub fn random_blc_corpus(count: usize, seed: u64) -> Vec<BlcSpec> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    (0..count)
        .map(|_| {
            let n = rng.gen_range(1..=12usize);
            let m = rng.gen_range(1..=12u64);
            let a = rng.gen_range(0..m);
            let h = (0..n).map(|_| rng.gen_range(-5..=5i64)).collect();
            BlcSpec::new(n, m, a, h).expect("valid by construction")
        })
        .collect()
}

/// Binomial whole-space enumerator `2^n (1+z)^n`, the `m = 1` answer.
pub fn whole_space_hamming(n: usize) -> IntPoly {
    IntPoly::from_i64s(&[1, 1])
        .pow(n as u32)
        .scale(&(BigInt::one() << n))
}

/// Distance of a charsum value from the exact indicator.
pub fn indicator_error(value: &HpComplex, member: bool) -> f64 {
    let (re, im) = value.to_f64();
    let target = if member { 1.0 } else { 0.0 };
    (re - target).abs().max(im.abs())
}
