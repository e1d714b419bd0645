#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "fedpower/matrix.hpp"
#include "fedpower/rng.hpp"

namespace fedpower {

// Channel-state information matrix: direct gains on the diagonal,
// interference coefficients off it. Always square with positive diagonal.
using CsiMatrix = Matrix;

// One fading realization: per-worker complex channel vectors to the n_R
// receive antennas, stored as separate real/imaginary parts.
struct RawChannel {
  int workers = 0;
  int antennas = 0;
  double noise_power = 1.0;          // sigma^2
  std::vector<double> re;            // workers x antennas, row-major
  std::vector<double> im;

  double real(int i, int a) const { return re[static_cast<std::size_t>(i) * antennas + a]; }
  double imag(int i, int a) const { return im[static_cast<std::size_t>(i) * antennas + a]; }
};

enum class Split { Train, Validation, Test };

std::string split_name(Split s);
Split split_from_name(const std::string& name);

struct ChannelGenParams {
  int workers = 8;
  int antennas = 10;
  double pathloss_spread = 100.0;  // log-uniform gain over [1/spread, 1]
  double noise_power = 1.0;        // sigma^2
};

// Ordered channel realizations with train/validation/test labels. Immutable
// after creation; shareable read-only across threads.
struct ChannelSet {
  std::uint64_t seed = 0;
  ChannelGenParams params;
  std::vector<double> split_fractions;  // train, validation, test
  std::vector<CsiMatrix> matrices;
  std::vector<Split> labels;

  std::vector<std::size_t> indices(Split s) const;
  std::size_t count(Split s) const { return indices(s).size(); }
};

// Rayleigh fading with a log-uniform pathloss gain per worker:
// h_i = sqrt(g_i) * v_i with v_i entries standard complex Gaussian
// (unit variance per complex entry) and g_i log-uniform on [1/spread, 1].
RawChannel sample_raw(int workers, int antennas, double pathloss_spread, double noise_power,
                      Rng& rng);

// alpha_i = |h_i|^2 / sigma^2 on the diagonal,
// beta_ij = |h_i^H h_j|^2 / (sigma^2 |h_i|^2) off it.
// Throws on a zero-norm channel vector.
CsiMatrix build_csi(const RawChannel& raw);

// Hhat = D^{-1/2} H D^{-1/2} with D = diag(H 1). Throws on a zero row sum.
Matrix normalize_adjacency(const CsiMatrix& h);

// Multiplies off-diagonal entries by factor; diagonal untouched.
CsiMatrix scale_interference(const CsiMatrix& h, double factor);

// Adds iid zero-mean Gaussian noise to every entry, clamping below at 1e-12
// so the normalization stays defined. Models imperfect channel estimation;
// the noisy copy is a policy input only, never the evaluation channel.
CsiMatrix add_estimation_noise(const CsiMatrix& h, double variance, Rng& rng);

// Deterministic set generation: channel k uses the child stream k of seed.
// Fractions must sum to 1; counts are rounded with the remainder going to
// the test split.
ChannelSet make_channel_set(std::size_t count, const ChannelGenParams& params, std::uint64_t seed,
                            const std::vector<double>& split_fractions = {1.0 / 3, 1.0 / 3,
                                                                          1.0 / 3});

std::string channel_set_to_json(const ChannelSet& set);
ChannelSet channel_set_from_json(const std::string& text);
void save_channel_set(const ChannelSet& set, const std::string& path);
ChannelSet load_channel_set(const std::string& path);

}  // namespace fedpower
