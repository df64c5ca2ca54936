#include "jcwave/observables.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include <boost/math/statistics/linear_regression.hpp>
#include <boost/math/tools/minima.hpp>

#include "jcwave/analytic.hpp"
#include "jcwave/errors.hpp"
#include "jcwave/propagator.hpp"

namespace jcwave {

namespace {

constexpr double kPi = std::numbers::pi;
constexpr double kSqrt2 = std::numbers::sqrt2;
/// Half-width of the coherent-state support used in overlaps; exp(-81/2) ~ 3e-18.
constexpr double kCoherentSupport = 9.0;

void require_not_adiabatic(const WavePacket& psi, const char* what) {
  if (psi.basis() == Basis::adiabatic) {
    throw BasisError(std::string(what) + " needs a bare-basis packet; convert the adiabatic packet first");
  }
}

/// sum_k [(a+bz)|u|^2 + (a-bz)|d|^2 + 2 Re(conj(u)(bx - i by) d)].
double quadratic_form(const PotentialMatrix& m, const cplx* up, const cplx* down, std::size_t n) {
  double s = 0.0;
  for (std::size_t k = 0; k < n; ++k) {
    const double wu = std::norm(up[k]);
    const double wd = std::norm(down[k]);
    const cplx cross = std::conj(up[k]) * cplx{m.bx[k], -m.by[k]} * down[k];
    s += (m.a[k] + m.bz[k]) * wu + (m.a[k] - m.bz[k]) * wd + 2.0 * cross.real();
  }
  return s;
}

struct MomentumSums {
  double p1 = 0.0;
  double p2 = 0.0;
  double kinetic = 0.0;
};

/// Momentum-space moments from a raw forward transform in `plan`. With the unnormalized
/// transform, |phi_k|^2 dp = |buf_k|^2 dq / n.
MomentumSums momentum_sums(FftPlan& plan, const WavePacket& psi, const PotentialMatrix* kinetic) {
  const Grid& g = psi.grid();
  const std::size_t n = g.size();
  auto buf = plan.buffer();
  std::copy(psi.data().begin(), psi.data().end(), buf.begin());
  plan.forward();
  const auto p = g.p();
  const double w = g.dq() / static_cast<double>(n);
  MomentumSums s;
  for (std::size_t k = 0; k < n; ++k) {
    const double dens = std::norm(buf[k]) + std::norm(buf[n + k]);
    s.p1 += p[k] * dens;
    s.p2 += p[k] * p[k] * dens;
  }
  s.p1 *= w;
  s.p2 *= w;
  if (kinetic != nullptr) s.kinetic = w * quadratic_form(*kinetic, buf.data(), buf.data() + n, n);
  return s;
}

struct PositionSums {
  double norm = 0.0;
  double pp = 0.0;
  double mm = 0.0;
  cplx pm{};
  double q1 = 0.0;
  double q2 = 0.0;
};

PositionSums position_sums(const WavePacket& psi) {
  const auto q = psi.grid().q();
  const auto up = psi.up();
  const auto down = psi.down();
  PositionSums s;
  for (std::size_t k = 0; k < q.size(); ++k) {
    const double wu = std::norm(up[k]);
    const double wd = std::norm(down[k]);
    s.pp += wu;
    s.mm += wd;
    s.pm += up[k] * std::conj(down[k]);
    s.q1 += q[k] * (wu + wd);
    s.q2 += q[k] * q[k] * (wu + wd);
  }
  const double dq = psi.grid().dq();
  s.pp *= dq;
  s.mm *= dq;
  s.pm *= dq;
  s.q1 *= dq;
  s.q2 *= dq;
  s.norm = s.pp + s.mm;
  return s;
}

}  // namespace

double two_level_entropy(double rpp, double rmm, cplx rpm) noexcept {
  const double tr = rpp + rmm;
  const double det = rpp * rmm - std::norm(rpm);
  const double disc = std::sqrt(std::max(0.0, tr * tr - 4.0 * det));
  const double l1 = 0.5 * (tr + disc);
  const double l2 = l1 > 0.0 ? std::max(0.0, det) / l1 : 0.0;
  double s = 0.0;
  for (const double l : {l1, l2}) {
    if (l > 0.0) s -= l * std::log(l);
  }
  return s;
}

double inversion(const WavePacket& psi) {
  require_not_adiabatic(psi, "inversion");
  const double up = psi.up_norm();
  const double down = psi.down_norm();
  return (up - down) / (up + down);
}

QuadratureMoments quadrature_moments(const WavePacket& psi) {
  const PositionSums ps = position_sums(psi);
  FftPlan plan(psi.size(), 2);
  const MomentumSums ms = momentum_sums(plan, psi, nullptr);
  QuadratureMoments m;
  m.mean_q = ps.q1 / ps.norm;
  m.mean_p = ms.p1 / ps.norm;
  m.var_q = ps.q2 / ps.norm - m.mean_q * m.mean_q;
  m.var_p = ms.p2 / ps.norm - m.mean_p * m.mean_p;
  return m;
}

double entanglement_entropy(const WavePacket& psi) {
  require_not_adiabatic(psi, "entanglement_entropy");
  const PositionSums s = position_sums(psi);
  return two_level_entropy(s.pp / s.norm, s.mm / s.norm, s.pm / s.norm);
}

double excitation_number(const WavePacket& psi) {
  require_not_adiabatic(psi, "excitation_number");
  const PositionSums ps = position_sums(psi);
  FftPlan plan(psi.size(), 2);
  const MomentumSums ms = momentum_sums(plan, psi, nullptr);
  return (0.5 * (ps.q2 + ms.p2) + 0.5 * (ps.pp - ps.mm)) / ps.norm;
}

double energy(const ModelParams& params, const WavePacket& psi) {
  const Grid& g = psi.grid();
  const PotentialMatrix v = potential_part(params, g);
  const PotentialMatrix t = kinetic_part(params, g);
  FftPlan plan(psi.size(), 2);
  const MomentumSums ms = momentum_sums(plan, psi, &t);
  const double pot = g.dq() * quadratic_form(v, psi.up().data(), psi.down().data(), psi.size());
  return (pot + ms.kinetic) / psi.norm();
}

cplx autocorrelation(const WavePacket& initial, const WavePacket& psi) { return inner_product(initial, psi); }

double fidelity(const WavePacket& exact, const WavePacket& approx) {
  return std::sqrt(std::abs(inner_product(exact, approx)));
}

double fidelity(const WavePacket& exact, const WavePacket& approx, const ModelParams& params) {
  if (approx.basis() == Basis::adiabatic && exact.basis() == Basis::bare) {
    return fidelity(exact, from_adiabatic_basis(approx, params));
  }
  return fidelity(exact, approx);
}

double h_cor_expectation(const WavePacket& psi, const ModelParams& params) {
  if (psi.basis() != Basis::adiabatic) throw BasisError("h_cor_expectation needs an adiabatic packet");
  const Grid& g = psi.grid();
  const std::size_t n = g.size();
  // p applied to the lower channel via the transform.
  FftPlan plan(n, 1);
  auto buf = plan.buffer();
  std::copy(psi.down().begin(), psi.down().end(), buf.begin());
  plan.forward();
  const auto p = g.p();
  for (std::size_t k = 0; k < n; ++k) buf[k] *= p[k] / static_cast<double>(n);
  plan.backward();
  const auto q = g.q();
  cplx z{};
  for (std::size_t k = 0; k < n; ++k) {
    const cplx o_b = adiabatic_dtheta(q[k], params) * buf[k] -
                     cplx{0.0, 0.5} * adiabatic_d2theta(q[k], params) * psi.down()[k];
    z += std::conj(psi.up()[k]) * o_b;
  }
  z *= g.dq();
  return -2.0 * z.imag() / psi.norm();
}

ObservableEvaluator::ObservableEvaluator(const ModelParams& params, const WavePacket& initial)
    : params_(params),
      initial_(initial),
      potential_(potential_part(params, initial.grid())),
      kinetic_(kinetic_part(params, initial.grid())),
      plan_(initial.size(), 2) {
  require_not_adiabatic(initial, "ObservableEvaluator");
}

Record ObservableEvaluator::evaluate(double t, const WavePacket& psi) {
  require_compatible(initial_, psi);
  const PositionSums ps = position_sums(psi);
  const MomentumSums ms = momentum_sums(plan_, psi, &kinetic_);
  const double dq = psi.grid().dq();
  const double nrm = ps.norm;
  Record r;
  r.t = t;
  r.norm = nrm;
  r.inversion = (ps.pp - ps.mm) / nrm;
  r.mean_q = ps.q1 / nrm;
  r.mean_p = ms.p1 / nrm;
  r.var_q = ps.q2 / nrm - r.mean_q * r.mean_q;
  r.var_p = ms.p2 / nrm - r.mean_p * r.mean_p;
  r.entropy = two_level_entropy(ps.pp / nrm, ps.mm / nrm, ps.pm / nrm);
  r.autocorrelation = inner_product(initial_, psi);
  r.excitation = (0.5 * (ps.q2 + ms.p2) + 0.5 * (ps.pp - ps.mm)) / nrm;
  const double pot = dq * quadratic_form(potential_, psi.up().data(), psi.down().data(), psi.size());
  r.energy = (pot + ms.kinetic) / nrm;
  return r;
}

std::vector<double> fock_populations(const WavePacket& psi, unsigned n_max) {
  require_not_adiabatic(psi, "fock_populations");
  const Grid& g = psi.grid();
  if (n_max > max_resolved_fock(g)) throw ResolutionError("Fock projection beyond the grid resolution");
  const auto q = g.q();
  const std::size_t n = q.size();
  std::vector<double> prev(n), cur(n), next(n);
  for (std::size_t k = 0; k < n; ++k) cur[k] = std::exp(-0.5 * q[k] * q[k]) / std::sqrt(std::sqrt(kPi));
  std::vector<double> out(n_max + 1);
  for (unsigned level = 0; level <= n_max; ++level) {
    cplx su{}, sd{};
    for (std::size_t k = 0; k < n; ++k) {
      su += cur[k] * psi.up()[k];
      sd += cur[k] * psi.down()[k];
    }
    out[level] = (std::norm(su) + std::norm(sd)) * g.dq() * g.dq();
    const double a = std::sqrt(2.0 / (level + 1.0));
    const double b = std::sqrt(static_cast<double>(level) / (level + 1.0));
    for (std::size_t k = 0; k < n; ++k) next[k] = a * q[k] * cur[k] - b * prev[k];
    std::swap(prev, cur);
    std::swap(cur, next);
  }
  return out;
}

// ---------------------------------------------------------------- Q-function

AlphaLattice AlphaLattice::centered(double radius, std::size_t n) {
  if (!(radius > 0.0) || n < 2) throw ConfigError("alpha lattice needs radius > 0 and at least 2 points");
  return {-radius, radius, -radius, radius, n, n};
}

AlphaLattice default_alpha_lattice(const FieldStateSpec& field) {
  const double r = field.kind == FieldKind::coherent ? std::abs(field.nu)
                                                      : std::sqrt(static_cast<double>(field.n));
  return AlphaLattice::centered(r + 4.0);
}

double QFunctionFrame::max() const { return q.empty() ? 0.0 : *std::max_element(q.begin(), q.end()); }

double QFunctionFrame::integral() const {
  if (alpha_re.size() < 2 || alpha_im.size() < 2) return 0.0;
  double s = 0.0;
  for (const double v : q) s += v;
  return s * (alpha_re[1] - alpha_re[0]) * (alpha_im[1] - alpha_im[0]);
}

namespace {

void check_lattice(const Grid& g, double max_re, double max_im) {
  if (kSqrt2 * max_re + 5.0 >= g.q_max() || kSqrt2 * max_im + 5.0 >= g.p_nyquist()) {
    throw ResolutionError("Q-function lattice extends beyond what the grid resolves");
  }
}

/// Sum over the coherent-state support around x_c of conj(<q|alpha>) f(q), without dq.
struct SupportWindow {
  std::size_t lo = 0;
  std::size_t hi = 0;
};

SupportWindow support(const Grid& g, double center) {
  const double first = (center - kCoherentSupport - g.q_min()) / g.dq();
  const double last = (center + kCoherentSupport - g.q_min()) / g.dq();
  const auto n = static_cast<double>(g.size());
  SupportWindow w;
  w.lo = static_cast<std::size_t>(std::clamp(std::ceil(first), 0.0, n));
  w.hi = static_cast<std::size_t>(std::clamp(std::floor(last) + 1.0, 0.0, n));
  return w;
}

}  // namespace

double q_value(const WavePacket& psi, cplx alpha) {
  require_not_adiabatic(psi, "q_value");
  const Grid& g = psi.grid();
  check_lattice(g, std::abs(alpha.real()), std::abs(alpha.imag()));
  const double xc = kSqrt2 * alpha.real();
  const double kick = kSqrt2 * alpha.imag();
  const auto q = g.q();
  const SupportWindow w = support(g, xc);
  cplx su{}, sd{};
  for (std::size_t k = w.lo; k < w.hi; ++k) {
    const double x = q[k] - xc;
    const cplx c = std::polar(std::exp(-0.5 * x * x), -kick * x);
    su += c * psi.up()[k];
    sd += c * psi.down()[k];
  }
  return (std::norm(su) + std::norm(sd)) * g.dq() * g.dq() / (kPi * std::sqrt(kPi));
}

QFunctionFrame q_function(const WavePacket& psi, const AlphaLattice& lat, double t) {
  require_not_adiabatic(psi, "q_function");
  if (lat.n_re < 2 || lat.n_im < 2 || !(lat.re_max > lat.re_min) || !(lat.im_max > lat.im_min)) {
    throw ConfigError("alpha lattice must have at least 2x2 points and positive extent");
  }
  const Grid& g = psi.grid();
  check_lattice(g, std::max(std::abs(lat.re_min), std::abs(lat.re_max)),
                std::max(std::abs(lat.im_min), std::abs(lat.im_max)));
  QFunctionFrame f;
  f.t = t;
  f.alpha_re.resize(lat.n_re);
  f.alpha_im.resize(lat.n_im);
  for (std::size_t i = 0; i < lat.n_re; ++i) f.alpha_re[i] = lat.re_min + static_cast<double>(i) * lat.d_re();
  for (std::size_t j = 0; j < lat.n_im; ++j) f.alpha_im[j] = lat.im_min + static_cast<double>(j) * lat.d_im();
  f.q.resize(lat.n_re * lat.n_im);

  const auto q = g.q();
  const double scale = g.dq() * g.dq() / (kPi * std::sqrt(kPi));
  std::vector<cplx> wu, wd;
  for (std::size_t i = 0; i < lat.n_re; ++i) {
    const double xc = kSqrt2 * f.alpha_re[i];
    const SupportWindow w = support(g, xc);
    const std::size_t len = w.hi - w.lo;
    wu.resize(len);
    wd.resize(len);
    for (std::size_t k = 0; k < len; ++k) {
      const double x = q[w.lo + k] - xc;
      const double env = std::exp(-0.5 * x * x);
      wu[k] = env * psi.up()[w.lo + k];
      wd[k] = env * psi.down()[w.lo + k];
    }
    const double x0 = len > 0 ? q[w.lo] - xc : 0.0;
    for (std::size_t j = 0; j < lat.n_im; ++j) {
      const double kick = kSqrt2 * f.alpha_im[j];
      // exp(-i kick x) advanced by a constant factor per grid step.
      cplx z = std::polar(1.0, -kick * x0);
      const cplx step = std::polar(1.0, -kick * g.dq());
      cplx su{}, sd{};
      for (std::size_t k = 0; k < len; ++k) {
        su += z * wu[k];
        sd += z * wd[k];
        z *= step;
      }
      f.q[i * lat.n_im + j] = (std::norm(su) + std::norm(sd)) * scale;
    }
  }
  return f;
}

std::size_t count_blobs(const QFunctionFrame& frame, double fraction) {
  const std::size_t nr = frame.alpha_re.size();
  const std::size_t ni = frame.alpha_im.size();
  const double level = fraction * frame.max();
  std::vector<char> seen(frame.q.size(), 0);
  std::vector<std::size_t> stack;
  std::size_t blobs = 0;
  for (std::size_t start = 0; start < frame.q.size(); ++start) {
    if (seen[start] || frame.q[start] < level) continue;
    ++blobs;
    seen[start] = 1;
    stack.push_back(start);
    while (!stack.empty()) {
      const std::size_t idx = stack.back();
      stack.pop_back();
      const std::size_t i = idx / ni;
      const std::size_t j = idx % ni;
      auto visit = [&](std::size_t ii, std::size_t jj) {
        const std::size_t k = ii * ni + jj;
        if (!seen[k] && frame.q[k] >= level) {
          seen[k] = 1;
          stack.push_back(k);
        }
      };
      if (i > 0) visit(i - 1, j);
      if (i + 1 < nr) visit(i + 1, j);
      if (j > 0) visit(i, j - 1);
      if (j + 1 < ni) visit(i, j + 1);
    }
  }
  return blobs;
}

std::size_t count_local_maxima(const QFunctionFrame& frame, double fraction) {
  const std::size_t nr = frame.alpha_re.size();
  const std::size_t ni = frame.alpha_im.size();
  const double level = fraction * frame.max();
  std::size_t count = 0;
  for (std::size_t i = 1; i + 1 < nr; ++i) {
    for (std::size_t j = 1; j + 1 < ni; ++j) {
      const double v = frame.at(i, j);
      if (v < level) continue;
      bool is_max = true;
      for (int di = -1; di <= 1 && is_max; ++di) {
        for (int dj = -1; dj <= 1; ++dj) {
          if ((di != 0 || dj != 0) && frame.at(i + di, j + dj) >= v) {
            is_max = false;
            break;
          }
        }
      }
      if (is_max) ++count;
    }
  }
  return count;
}

RingProfile ring_profile(const WavePacket& psi, double r_lo, double r_hi, std::size_t n_angles) {
  if (!(r_hi > r_lo) || r_lo < 0.0 || n_angles < 2) throw ConfigError("invalid ring search interval");
  std::vector<double> radius(n_angles), height(n_angles);
  for (std::size_t j = 0; j < n_angles; ++j) {
    const double phase = 2.0 * kPi * static_cast<double>(j) / static_cast<double>(n_angles);
    auto neg_q = [&](double r) { return -q_value(psi, std::polar(r, phase)); };
    const auto [r, v] = boost::math::tools::brent_find_minima(neg_q, r_lo, r_hi, 40);
    radius[j] = r;
    height[j] = -v;
  }
  RingProfile prof;
  const auto mean = [](const std::vector<double>& v) {
    double s = 0.0;
    for (const double x : v) s += x;
    return s / static_cast<double>(v.size());
  };
  prof.mean_radius = mean(radius);
  const auto [rmin, rmax] = std::minmax_element(radius.begin(), radius.end());
  prof.radius_spread = *rmax - *rmin;
  const auto [hmin, hmax] = std::minmax_element(height.begin(), height.end());
  prof.height_variation = (*hmax - *hmin) / mean(height);
  return prof;
}

// ---------------------------------------------------------------- spectra

Spectrum spectrum(std::span<const double> times, std::span<const cplx> a, Window window) {
  if (times.size() != a.size()) throw DimensionError("times and autocorrelation lengths differ");
  const double tau = uniform_spacing(times);
  const std::size_t m = times.size();
  FftPlan plan(m, 1);
  auto buf = plan.buffer();
  for (std::size_t j = 0; j < m; ++j) {
    double w = 1.0;
    if (window == Window::hann) {
      w = 0.5 * (1.0 - std::cos(2.0 * kPi * static_cast<double>(j) / static_cast<double>(m - 1)));
    }
    buf[j] = w * a[j];
  }
  plan.backward();
  Spectrum s;
  s.epsilon.resize(m);
  s.power.resize(m);
  const double d_eps = 2.0 * kPi / (static_cast<double>(m) * tau);
  const std::size_t neg = m / 2;
  // Negative frequencies first so epsilon ascends.
  for (std::size_t i = 0; i < m; ++i) {
    const std::size_t k = (i + m - neg) % m;
    const double signed_k = k >= m - neg ? static_cast<double>(k) - static_cast<double>(m) : static_cast<double>(k);
    s.epsilon[i] = signed_k * d_eps;
    s.power[i] = tau * tau * std::norm(buf[k]);
  }
  return s;
}

Spectrum spectrum(const TimeSeries& series, Window window) {
  const auto t = series.times();
  const auto a = series.autocorrelation();
  return spectrum(t, a, window);
}

std::vector<SpectralPeak> find_peaks(const Spectrum& s, double threshold) {
  const auto& y = s.power;
  std::vector<SpectralPeak> peaks;
  if (y.size() < 3) return peaks;
  const double top = *std::max_element(y.begin(), y.end());
  double total = 0.0;
  for (const double v : y) total += v;
  const double bin = s.bin();
  for (std::size_t i = 1; i + 1 < y.size(); ++i) {
    if (!(y[i] > y[i - 1] && y[i] >= y[i + 1]) || y[i] < threshold * top) continue;
    const double den = y[i - 1] - 2.0 * y[i] + y[i + 1];
    const double delta = den != 0.0 ? 0.5 * (y[i - 1] - y[i + 1]) / den : 0.0;
    SpectralPeak pk;
    pk.epsilon = s.epsilon[i] + delta * bin;
    pk.power = y[i] - 0.25 * (y[i - 1] - y[i + 1]) * delta;
    std::size_t lo = i;
    while (lo > 0 && y[lo - 1] < y[lo]) --lo;
    std::size_t hi = i;
    while (hi + 1 < y.size() && y[hi + 1] < y[hi]) ++hi;
    double lobe = 0.0;
    for (std::size_t k = lo; k <= hi; ++k) lobe += y[k];
    pk.weight = total > 0.0 ? lobe / total : 0.0;
    peaks.push_back(pk);
  }
  std::sort(peaks.begin(), peaks.end(), [](const SpectralPeak& a, const SpectralPeak& b) { return a.power > b.power; });
  return peaks;
}

// ---------------------------------------------------------------- revivals

std::optional<double> revival_from_autocorrelation(std::span<const double> times,
                                                   std::span<const double> abs_a, double threshold) {
  if (times.size() != abs_a.size()) throw DimensionError("times and |A| lengths differ");
  uniform_spacing(times);
  std::vector<std::size_t> maxima;
  for (std::size_t i = 1; i + 1 < abs_a.size(); ++i) {
    if (abs_a[i] > abs_a[i - 1] && abs_a[i] > abs_a[i + 1] && abs_a[i] > threshold) maxima.push_back(i);
  }
  std::vector<double> ks, seps, mids;
  for (int k = 1;; ++k) {
    const double center = 2.0 * kPi * k;
    if (center + kPi > times.back()) break;
    std::vector<std::size_t> near;
    for (const std::size_t i : maxima) {
      if (std::abs(times[i] - center) < kPi) near.push_back(i);
    }
    if (near.size() < 2) continue;
    std::partial_sort(near.begin(), near.begin() + 2, near.end(),
                      [&](std::size_t a, std::size_t b) { return abs_a[a] > abs_a[b]; });
    const double t1 = std::min(times[near[0]], times[near[1]]);
    const double t2 = std::max(times[near[0]], times[near[1]]);
    // Past the half-way point the peaks pair up across periods; stop there.
    if (t2 - t1 >= kPi) {
      if (!ks.empty()) break;
      continue;
    }
    ks.push_back(k);
    seps.push_back(t2 - t1);
    mids.push_back(0.5 * (t1 + t2));
  }
  if (ks.size() < 2) return std::nullopt;
  using boost::math::statistics::simple_ordinary_least_squares;
  const auto [s0, s1] = simple_ordinary_least_squares(ks, seps);
  if (s1 == 0.0) return std::nullopt;
  const double k_star = (2.0 * kPi - s0) / s1;
  const auto [m0, m1] = simple_ordinary_least_squares(ks, mids);
  return m0 + m1 * k_star;
}

std::optional<double> revival_from_inversion(std::span<const double> times,
                                             std::span<const double> inversion, double t_after) {
  if (times.size() != inversion.size()) throw DimensionError("times and inversion lengths differ");
  const double tau = uniform_spacing(times);
  const auto w = static_cast<std::size_t>(std::llround(2.0 * kPi / tau));
  if (w < 2 || w >= times.size()) return std::nullopt;
  std::optional<double> best_t;
  double best = -1.0;
  for (std::size_t i = 0; i + w < times.size(); ++i) {
    const double center = times[i] + kPi;
    if (center <= t_after) continue;
    const auto [lo, hi] = std::minmax_element(inversion.begin() + static_cast<std::ptrdiff_t>(i),
                                              inversion.begin() + static_cast<std::ptrdiff_t>(i + w));
    const double swing = *hi - *lo;
    if (swing > best) {
      best = swing;
      best_t = center;
    }
  }
  return best_t;
}

std::optional<double> entropy_minimum_time(std::span<const double> times, std::span<const double> entropy,
                                           double t_lo, double t_hi) {
  if (times.size() != entropy.size()) throw DimensionError("times and entropy lengths differ");
  const double tau = uniform_spacing(times);
  const auto w = static_cast<std::size_t>(std::llround(2.0 * kPi / tau));
  if (w < 1 || w >= times.size()) return std::nullopt;
  double run = 0.0;
  for (std::size_t i = 0; i < w; ++i) run += entropy[i];
  std::optional<double> best_t;
  double best = 0.0;
  for (std::size_t i = 0;; ++i) {
    const double center = times[i] + kPi;
    const double avg = run / static_cast<double>(w);
    if (center >= t_lo && center <= t_hi && (!best_t || avg < best)) {
      best = avg;
      best_t = center;
    }
    if (i + w >= times.size()) break;
    run += entropy[i + w] - entropy[i];
  }
  return best_t;
}

}  // namespace jcwave
