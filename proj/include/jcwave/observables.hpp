#pragma once

#include <cstddef>
#include <optional>
#include <span>
#include <vector>

#include "jcwave/fft.hpp"
#include "jcwave/grid.hpp"
#include "jcwave/models.hpp"
#include "jcwave/states.hpp"
#include "jcwave/timeseries.hpp"

namespace jcwave {

/// Von Neumann entropy -sum l ln l of the 2x2 density matrix [[rpp, rpm], [conj(rpm), rmm]].
double two_level_entropy(double rpp, double rmm, cplx rpm) noexcept;

/// <sigma_z> = (|up|^2 - |down|^2)/|psi|^2. Throws BasisError for adiabatic packets.
double inversion(const WavePacket& psi);

/// First and second quadrature moments of the channel-traced field state.
struct QuadratureMoments {
  double mean_q = 0.0;
  double mean_p = 0.0;
  double var_q = 0.0;
  double var_p = 0.0;
};
QuadratureMoments quadrature_moments(const WavePacket& psi);

/// S = -Tr rho_A ln rho_A with the field traced out.
double entanglement_entropy(const WavePacket& psi);

/// <p^2/2 + q^2/2 + sz/2>.
double excitation_number(const WavePacket& psi);

/// <psi|H|psi> / <psi|psi>.
double energy(const ModelParams& params, const WavePacket& psi);

/// <initial|psi>.
cplx autocorrelation(const WavePacket& initial, const WavePacket& psi);

/// sqrt(|<exact|approx>|). Adiabatic packets are rotated to the bare basis first.
double fidelity(const WavePacket& exact, const WavePacket& approx, const ModelParams& params);
double fidelity(const WavePacket& exact, const WavePacket& approx);

/// Expectation of the neglected nonadiabatic coupling
///   H_cor = -sy (dphi p - (i/2) d2phi)
/// for a packet in the adiabatic basis of the Rabi model.
double h_cor_expectation(const WavePacket& adiabatic_psi, const ModelParams& params);

/// Computes every Record field except fidelity and h_cor with one shared FFT
/// workspace. Not thread-safe; create one per propagation.
class ObservableEvaluator {
 public:
  ObservableEvaluator(const ModelParams& params, const WavePacket& initial);

  Record evaluate(double t, const WavePacket& psi);

 private:
  ModelParams params_;
  WavePacket initial_;
  PotentialMatrix potential_;
  PotentialMatrix kinetic_;
  FftPlan plan_;
};

/// Probabilities of Fock levels 0..n_max summed over both channels.
std::vector<double> fock_populations(const WavePacket& psi, unsigned n_max);

// ---------------------------------------------------------------- Q-function

struct AlphaLattice {
  double re_min = -5.0;
  double re_max = 5.0;
  double im_min = -5.0;
  double im_max = 5.0;
  std::size_t n_re = 201;
  std::size_t n_im = 201;

  /// Square lattice |Re a|, |Im a| <= radius centred at the origin.
  static AlphaLattice centered(double radius, std::size_t n = 201);
  double d_re() const noexcept { return (re_max - re_min) / static_cast<double>(n_re - 1); }
  double d_im() const noexcept { return (im_max - im_min) / static_cast<double>(n_im - 1); }
};

/// Default lattice: radius |nu| + 4 for coherent states, sqrt(n) + 4 for Fock states.
AlphaLattice default_alpha_lattice(const FieldStateSpec& field);

struct QFunctionFrame {
  double t = 0.0;
  std::vector<double> alpha_re;
  std::vector<double> alpha_im;
  /// Row-major, index i_re * alpha_im.size() + i_im.
  std::vector<double> q;

  double at(std::size_t i_re, std::size_t i_im) const { return q[i_re * alpha_im.size() + i_im]; }
  double max() const;
  /// sum Q dRe dIm.
  double integral() const;
};

/// Q(a) = (|<a|psi_+>|^2 + |<a|psi_->|^2)/pi. Throws ResolutionError if the lattice
/// reaches outside what the grid resolves.
QFunctionFrame q_function(const WavePacket& psi, const AlphaLattice& lattice, double t = 0.0);
double q_value(const WavePacket& psi, cplx alpha);

/// Connected regions (4-neighbour) of Q >= fraction * max(Q).
std::size_t count_blobs(const QFunctionFrame& frame, double fraction = 0.2);
/// Strict local maxima (8-neighbour) with Q >= fraction * max(Q).
std::size_t count_local_maxima(const QFunctionFrame& frame, double fraction = 0.05);

/// Radial maximum of Q along n_angles rays.
struct RingProfile {
  double mean_radius = 0.0;
  double radius_spread = 0.0;
  /// (max - min)/mean of the ridge height over angle.
  double height_variation = 0.0;
};
RingProfile ring_profile(const WavePacket& psi, double r_lo, double r_hi, std::size_t n_angles = 72);

// ---------------------------------------------------------------- spectra

enum class Window { none, hann };

struct Spectrum {
  std::vector<double> epsilon;
  std::vector<double> power;
  double bin() const noexcept { return epsilon.size() > 1 ? epsilon[1] - epsilon[0] : 0.0; }
};

/// P(eps) = |tau sum_j w_j A_j exp(i eps t_j)|^2 on eps_k = 2 pi k / (M tau), ascending.
/// Throws DomainError if the samples are not uniform.
Spectrum spectrum(std::span<const double> times, std::span<const cplx> a, Window window = Window::hann);
Spectrum spectrum(const TimeSeries& series, Window window = Window::hann);

struct SpectralPeak {
  double epsilon = 0.0;
  double power = 0.0;
  /// Power of the peak's lobe divided by the total power.
  double weight = 0.0;
};

/// Local maxima above threshold * max(power), refined by a parabola through the
/// three top bins, sorted by descending power.
std::vector<SpectralPeak> find_peaks(const Spectrum& s, double threshold = 1e-3);

// ---------------------------------------------------------------- revivals

/// Revival time from |A(t)|. Near each t = 2 pi k the two largest local maxima of
/// |A| above `threshold` form a pair whose separation grows linearly in k. The
/// leading run of pairs with separation below pi is fitted and extrapolated to a
/// separation of 2 pi, where peaks of neighbouring periods merge. Returns nullopt
/// without two pairs.
std::optional<double> revival_from_autocorrelation(std::span<const double> times,
                                                   std::span<const double> abs_a,
                                                   double threshold = 0.02);

/// Revival time from the inversion envelope: argmax after t_after of the
/// peak-to-peak swing over a sliding window of length 2 pi.
std::optional<double> revival_from_inversion(std::span<const double> times,
                                             std::span<const double> inversion, double t_after);

/// Time of the minimum of the entropy averaged over a sliding 2 pi window, searched on [t_lo, t_hi].
std::optional<double> entropy_minimum_time(std::span<const double> times,
                                           std::span<const double> entropy, double t_lo, double t_hi);

}  // namespace jcwave
