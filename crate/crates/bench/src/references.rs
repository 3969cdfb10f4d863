//! Reference values for the benchmark experiments.
//!
//! Unit-square integrals come from separation of variables. Bubble mass
//! products use the double sine series directly; stiffness products sum
//! the inner index in closed form by solving the 1D problem for each sine
//! mode in `x`, so the slow `O(K^-3)` tail is paid over one index only.

use std::f64::consts::PI;

use curvquad::polyalg::MultiIndex;

/// Where a reference value comes from.
#[derive(Clone, Copy, Debug, PartialEq)]
pub enum Provenance {
    Exact,
    /// Truncated series with an upper bound on the discarded tail.
    Series { truncation: usize, tail_bound: f64 },
    /// No reference; convergence is judged by successive differences.
    None,
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct ReferenceValue {
    pub value: f64,
    pub provenance: Provenance,
}

impl ReferenceValue {
    pub fn exact(value: f64) -> Self {
        ReferenceValue { value, provenance: Provenance::Exact }
    }

    pub fn series(value: f64, truncation: usize, tail_bound: f64) -> Self {
        ReferenceValue { value, provenance: Provenance::Series { truncation, tail_bound } }
    }

    pub fn none() -> Self {
        ReferenceValue { value: f64::NAN, provenance: Provenance::None }
    }

    pub fn is_available(&self) -> bool {
        !matches!(self.provenance, Provenance::None)
    }
}

/// Mass and stiffness references for one pair.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct PairReference {
    pub l2: ReferenceValue,
    pub h1: ReferenceValue,
}

#[derive(Clone, Debug, PartialEq, thiserror::Error)]
pub enum ReferenceError {
    #[error("S(a, l) needs l >= 1, got l = {0}")]
    SineIndex(u32),
    #[error("Pac-Man references need 0 < nu <= mu < 1, got mu = {mu}, nu = {nu}")]
    PacmanRange { mu: f64, nu: f64 },
}

/// Compensated running sum.
#[derive(Clone, Copy, Debug, Default)]
struct Neumaier {
    sum: f64,
    comp: f64,
}

impl Neumaier {
    fn add(&mut self, x: f64) {
        let t = self.sum + x;
        if self.sum.abs() >= x.abs() {
            self.comp += (self.sum - t) + x;
        } else {
            self.comp += (x - t) + self.sum;
        }
        self.sum = t;
    }

    fn value(self) -> f64 {
        self.sum + self.comp
    }
}

fn factorial(a: u32) -> f64 {
    (1..=a).map(f64::from).product()
}

/// `a!/(a-2j)!`
fn falling(a: u32, j: u32) -> f64 {
    ((a - 2 * j + 1)..=a).map(f64::from).product()
}

/// `S_{a,ℓ} = ∫₀¹ t^a sin(ℓπt) dt` in closed form.
pub fn ref_s(a: u32, l: u32) -> Result<f64, ReferenceError> {
    if l == 0 {
        return Err(ReferenceError::SineIndex(l));
    }
    Ok(sine_moment(a, l))
}

fn sine_moment(a: u32, l: u32) -> f64 {
    let x = f64::from(l) * PI;
    let sign = |k: u32| if k.is_multiple_of(2) { 1.0 } else { -1.0 };
    let half = a / 2;
    let head: f64 = (0..=half).map(|j| sign(j) * falling(a, j) / x.powi(2 * j as i32 + 1)).sum();
    let tail = sign(half) * factorial(a) * (f64::from(a) - f64::from(2 * half) - 1.0) / x.powi(a as i32 + 1);
    -sign(l) * head - tail
}

fn sine_moments(a: u32, k_max: usize) -> Vec<f64> {
    (0..=k_max).map(|k| if k == 0 { 0.0 } else { sine_moment(a, k as u32) }).collect()
}

/// Truncation of the double series.
pub const DOUBLE_SERIES_TERMS: usize = 2000;
/// Truncation of the single-index series.
pub const SINGLE_SERIES_TERMS: usize = 300_000;

/// `|S_{a,k}| ≤ 2/(kπ)`, used in every tail bound.
fn sine_bound(k: f64) -> f64 {
    2.0 / (k * PI)
}

/// `∫_K v_α v_β` for the square bubbles `-Δv_α = x^α`, `v_α = 0` on the
/// boundary, by the double series truncated at `k, ℓ ≤ K`.
pub fn bubble_l2(alpha: MultiIndex, beta: MultiIndex) -> ReferenceValue {
    let k_max = DOUBLE_SERIES_TERMS;
    let (sa1, sa2) = (sine_moments(alpha.a1, k_max), sine_moments(alpha.a2, k_max));
    let (sb1, sb2) = (sine_moments(beta.a1, k_max), sine_moments(beta.a2, k_max));
    let mut acc = Neumaier::default();
    // smallest terms first
    for k in (1..=k_max).rev() {
        let sk = sa1[k] * sb1[k];
        if sk == 0.0 {
            continue;
        }
        let k2 = (k * k) as f64;
        let mut row = Neumaier::default();
        for l in (1..=k_max).rev() {
            let d = k2 + (l * l) as f64;
            row.add(sa2[l] * sb2[l] / (d * d));
        }
        acc.add(sk * row.value());
    }
    let value = 4.0 * acc.value() / PI.powi(4);
    // terms ≤ 4·(2/π)⁴/(π⁴ k²ℓ²(k²+ℓ²)²); the tail sums over k > K or ℓ > K
    let c = 4.0 * 16.0 / PI.powi(8);
    let kf = k_max as f64;
    let tail = 2.0 * c * (PI * PI / 6.0) / (5.0 * kf.powi(5));
    ReferenceValue::series(value, k_max, tail)
}

/// `∫_K ∇v_α·∇v_β` by the same double series. Converges slowly; kept as
/// a cross-check for [`bubble_h1`].
pub fn bubble_h1_double_series(alpha: MultiIndex, beta: MultiIndex, k_max: usize) -> f64 {
    let (sa1, sa2) = (sine_moments(alpha.a1, k_max), sine_moments(alpha.a2, k_max));
    let (sb1, sb2) = (sine_moments(beta.a1, k_max), sine_moments(beta.a2, k_max));
    let mut acc = Neumaier::default();
    for k in (1..=k_max).rev() {
        let k2 = (k * k) as f64;
        let mut row = Neumaier::default();
        for l in (1..=k_max).rev() {
            row.add(sa2[l] * sb2[l] / (k2 + (l * l) as f64));
        }
        acc.add(sa1[k] * sb1[k] * row.value());
    }
    4.0 * acc.value() / (PI * PI)
}

/// Moments of the boundary layers `sinh(κy)/sinh κ` and
/// `sinh(κ(1-y))/sinh κ` against `y^b`, for `b ≤ b_max`.
fn layer_moments(kappa: f64, b_max: u32) -> (Vec<f64>, Vec<f64>) {
    let q = (-kappa).exp();
    let n = b_max as usize + 1;
    // E_b = ∫ y^b e^{-κ(1-y)}, F_b = ∫ y^b e^{-κy}
    let mut e = vec![(1.0 - q) / kappa; n];
    let mut f = vec![(1.0 - q) / kappa; n];
    for b in 1..n {
        let bf = b as f64;
        e[b] = (1.0 - bf * e[b - 1]) / kappa;
        f[b] = (bf * f[b - 1] - q) / kappa;
    }
    let denom = 1.0 - q * q;
    let right: Vec<f64> = (0..n).map(|b| (e[b] - q * f[b]) / denom).collect();
    let left: Vec<f64> = (0..n).map(|b| (f[b] - q * e[b]) / denom).collect();
    (right, left)
}

/// `∫₀¹ Y(y) y^b dy` where `-Y'' + κ²Y = y^a`, `Y(0) = Y(1) = 0`.
fn mode_moment(a: u32, b: u32, kappa: f64) -> f64 {
    // particular solution Σ_j a!/(a-2j)! y^{a-2j} / κ^{2j+2}
    let mut poly_moment = 0.0;
    let mut at_one = 0.0;
    let mut at_zero = 0.0;
    for j in 0..=a / 2 {
        let c = falling(a, j) / kappa.powi(2 * j as i32 + 2);
        let deg = a - 2 * j;
        poly_moment += c / f64::from(deg + b + 1);
        at_one += c;
        if deg == 0 {
            at_zero = c;
        }
    }
    let (right, left) = layer_moments(kappa, b);
    poly_moment - at_one * right[b as usize] - at_zero * left[b as usize]
}

/// `∫_K ∇v_α·∇v_β = ∫_K v_α x^β`, expanding `v_α` in sines in `x` only
/// and solving each mode's ODE in `y` exactly.
pub fn bubble_h1(alpha: MultiIndex, beta: MultiIndex) -> ReferenceValue {
    let k_max = SINGLE_SERIES_TERMS;
    let mut acc = Neumaier::default();
    for k in (1..=k_max).rev() {
        let (sa, sb) = (sine_moment(alpha.a1, k as u32), sine_moment(beta.a1, k as u32));
        if sa == 0.0 || sb == 0.0 {
            continue;
        }
        let kappa = k as f64 * PI;
        acc.add(2.0 * sa * sb * mode_moment(alpha.a2, beta.a2, kappa));
    }
    // |mode_moment| ≤ 1/κ² by the maximum principle
    let kf = k_max as f64;
    let tail = 2.0 * sine_bound(1.0).powi(2) / (PI * PI) / (3.0 * kf.powi(3));
    ReferenceValue::series(acc.value(), k_max, tail)
}

pub fn bubble_pair(alpha: MultiIndex, beta: MultiIndex) -> PairReference {
    PairReference { l2: bubble_l2(alpha, beta), h1: bubble_h1(alpha, beta) }
}

/// Odd-mode sum `Σ_{k odd ≤ K} term(k, κ)` taken from the smallest terms.
fn odd_sum(k_max: usize, term: impl Fn(f64, f64) -> f64) -> f64 {
    let mut acc = Neumaier::default();
    for k in (1..=k_max).rev().filter(|k| k % 2 == 1) {
        let kf = k as f64;
        acc.add(term(kf, kf * PI));
    }
    acc.value()
}

/// `coth κ`, `1/sinh κ` without overflow.
fn coth_csch(kappa: f64) -> (f64, f64) {
    let q = (-2.0 * kappa).exp();
    ((1.0 + q) / (1.0 - q), 2.0 * (-kappa).exp() / (1.0 - q))
}

/// `Σ_{k odd} 1/(k²+a²)² = π/(8a³) (tanh(πa/2) - (πa/2) sech²(πa/2))`.
fn odd_inverse_square_sum(a: f64) -> f64 {
    let x = 0.5 * PI * a;
    let q = (-2.0 * x).exp();
    let tanh = (1.0 - q) / (1.0 + q);
    let sech2 = 4.0 * q / ((1.0 + q) * (1.0 + q));
    PI / (8.0 * a.powi(3)) * (tanh - x * sech2)
}

/// Sine coefficient of `y(1-y)` for odd `k`.
fn edge_coefficient(kappa: f64) -> f64 {
    8.0 / kappa.powi(3)
}

/// Pairs of the unit-square basis: vertex functions `v_j`, edge functions
/// `w_j` with trace `v_j v_{j+1}`, and the bubble `-Δw̃ = 1`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum SquarePair {
    VjVj,
    VjVjNext,
    VjVjPrev,
    VjVjOpposite,
    V0W1,
    V1W1,
    WjWj,
    BubbleBubble,
    VjBubble,
    WjBubble,
}

impl SquarePair {
    pub const ALL: [SquarePair; 10] = [
        SquarePair::VjVj,
        SquarePair::VjVjNext,
        SquarePair::VjVjPrev,
        SquarePair::VjVjOpposite,
        SquarePair::V0W1,
        SquarePair::V1W1,
        SquarePair::WjWj,
        SquarePair::BubbleBubble,
        SquarePair::VjBubble,
        SquarePair::WjBubble,
    ];
}

pub fn square_pair(pair: SquarePair) -> PairReference {
    let k_max = SINGLE_SERIES_TERMS;
    let kf = k_max as f64;
    let exact = |l2: f64, h1: f64| PairReference { l2: ReferenceValue::exact(l2), h1: ReferenceValue::exact(h1) };
    // ∫ (1-y) sin(κy) dy
    let vertex_moment = |k: f64| sine_moment(0, k as u32) - sine_moment(1, k as u32);
    match pair {
        SquarePair::VjVj => exact(1.0 / 9.0, 2.0 / 3.0),
        SquarePair::VjVjNext | SquarePair::VjVjPrev => exact(1.0 / 18.0, -1.0 / 6.0),
        SquarePair::VjVjOpposite => exact(1.0 / 36.0, -1.0 / 3.0),
        SquarePair::V0W1 => {
            // ∫ (1-x) sinh(κx)/sinh κ dx = 1/κ² - 1/(κ sinh κ)
            let l2 = odd_sum(k_max, |k, kappa| {
                let (_, csch) = coth_csch(kappa);
                edge_coefficient(kappa) * (1.0 / (kappa * kappa) - csch / kappa) * vertex_moment(k)
            });
            // terms ≤ 16/κ⁶
            let tail = 16.0 / (5.0 * PI.powi(6) * kf.powi(5));
            PairReference { l2: ReferenceValue::series(l2, k_max, tail), h1: ReferenceValue::exact(-1.0 / 12.0) }
        }
        SquarePair::V1W1 => {
            // ∫ x sinh(κx)/sinh κ dx = coth κ/κ - 1/κ²
            let l2 = odd_sum(k_max, |k, kappa| {
                let (coth, _) = coth_csch(kappa);
                edge_coefficient(kappa) * (coth / kappa - 1.0 / (kappa * kappa)) * vertex_moment(k)
            });
            // terms ≤ 16.2/κ⁵ since coth κ < 1.01
            let tail = 16.2 / (4.0 * PI.powi(5) * kf.powi(4));
            PairReference { l2: ReferenceValue::series(l2, k_max, tail), h1: ReferenceValue::exact(1.0 / 12.0) }
        }
        SquarePair::WjWj => {
            let l2 = odd_sum(k_max, |_, kappa| {
                let (coth, csch) = coth_csch(kappa);
                0.5 * edge_coefficient(kappa).powi(2) * (coth / (2.0 * kappa) - 0.5 * csch * csch)
            });
            let h1 = odd_sum(k_max, |_, kappa| {
                let (coth, _) = coth_csch(kappa);
                0.5 * edge_coefficient(kappa).powi(2) * kappa * coth
            });
            PairReference {
                l2: ReferenceValue::series(l2, k_max, 16.2 / (6.0 * PI.powi(7) * kf.powi(6))),
                h1: ReferenceValue::series(h1, k_max, 32.4 / (4.0 * PI.powi(5) * kf.powi(4))),
            }
        }
        SquarePair::BubbleBubble => bubble_pair(MultiIndex::new(0, 0), MultiIndex::new(0, 0)),
        SquarePair::VjBubble => {
            // Σ v_j = 1 and symmetry give ∫ v_j w̃ = ¼∫ w̃ = ¼∫|∇w̃|²
            let h = bubble_h1(MultiIndex::new(0, 0), MultiIndex::new(0, 0));
            let Provenance::Series { truncation, tail_bound } = h.provenance else { unreachable!() };
            PairReference { l2: ReferenceValue::series(0.25 * h.value, truncation, 0.25 * tail_bound), h1: ReferenceValue::exact(0.0) }
        }
        SquarePair::WjBubble => {
            // Σ_{ℓ odd} 64/(π⁸ ℓ⁴) Σ_{k odd} 1/(k²+ℓ²)², inner sum in closed form
            let c = 64.0 / PI.powi(8);
            let l2 = c * odd_sum(DOUBLE_SERIES_TERMS, |l, _| odd_inverse_square_sum(l) / l.powi(4));
            let tail = c * PI / (48.0 * (DOUBLE_SERIES_TERMS as f64).powi(6));
            PairReference { l2: ReferenceValue::series(l2, DOUBLE_SERIES_TERMS, tail), h1: ReferenceValue::exact(0.0) }
        }
    }
}

/// Pac-Man pairs on the sector `0 < θ < π/μ` of the unit disc with
/// `v1 = r^μ sin μθ`, `v2 = r^ν sin νθ` and the bubble
/// `v3 = (1 - r²) r² sin θ sin(θ - π/μ)`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum PacmanPair {
    V1V1,
    V1V2,
    V1V3,
    V2V3,
}

impl PacmanPair {
    pub const ALL: [PacmanPair; 4] = [PacmanPair::V1V1, PacmanPair::V1V2, PacmanPair::V1V3, PacmanPair::V2V3];
}

/// `∫ r^a sin(aθ) v3` over the sector.
fn pacman_bubble_moment(mu: f64, a: f64) -> f64 {
    let t = PI / mu;
    let (c, s) = (t.cos(), t.sin());
    (2.0 * a * s * (a * t).sin() - 4.0 * c * (1.0 - (a * t).cos())) / (a * (a + 4.0) * (a + 6.0) * (a * a - 4.0))
}

pub fn ref_pacman(mu: f64, nu: f64, pair: PacmanPair) -> Result<PairReference, ReferenceError> {
    if !(0.0 < nu && nu <= mu && mu < 1.0) {
        return Err(ReferenceError::PacmanRange { mu, nu });
    }
    let exact = |l2: f64, h1: f64| PairReference { l2: ReferenceValue::exact(l2), h1: ReferenceValue::exact(h1) };
    Ok(match pair {
        PacmanPair::V1V1 => exact(PI / (4.0 * mu * (mu + 1.0)), PI / 2.0),
        PacmanPair::V1V2 if nu == mu => exact(PI / (4.0 * mu * (mu + 1.0)), PI / 2.0),
        PacmanPair::V1V2 => {
            let s = (nu * PI / mu).sin();
            exact(mu * s / ((mu + nu + 2.0) * (mu * mu - nu * nu)), mu * nu * s / (mu * mu - nu * nu))
        }
        PacmanPair::V1V3 => exact(pacman_bubble_moment(mu, mu), 0.0),
        PacmanPair::V2V3 => exact(pacman_bubble_moment(mu, nu), 0.0),
    })
}
