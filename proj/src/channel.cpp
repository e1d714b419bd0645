#include "fedpower/channel.hpp"

#include <cmath>
#include <fstream>
#include <stdexcept>

#include <nlohmann/json.hpp>

namespace fedpower {

using nlohmann::json;

std::string split_name(Split s) {
  switch (s) {
    case Split::Train: return "train";
    case Split::Validation: return "validation";
    case Split::Test: return "test";
  }
  return "unknown";
}

Split split_from_name(const std::string& name) {
  if (name == "train") return Split::Train;
  if (name == "validation" || name == "val") return Split::Validation;
  if (name == "test") return Split::Test;
  throw std::invalid_argument("unknown split name: " + name);
}

std::vector<std::size_t> ChannelSet::indices(Split s) const {
  std::vector<std::size_t> out;
  for (std::size_t i = 0; i < labels.size(); ++i)
    if (labels[i] == s) out.push_back(i);
  return out;
}

RawChannel sample_raw(int workers, int antennas, double pathloss_spread, double noise_power,
                      Rng& rng) {
  if (workers < 1 || antennas < 1)
    throw std::invalid_argument("sample_raw: workers and antennas must be >= 1");
  if (pathloss_spread < 1.0)
    throw std::invalid_argument("sample_raw: pathloss_spread must be >= 1");
  if (noise_power <= 0.0) throw std::invalid_argument("sample_raw: noise_power must be > 0");

  RawChannel raw;
  raw.workers = workers;
  raw.antennas = antennas;
  raw.noise_power = noise_power;
  raw.re.resize(static_cast<std::size_t>(workers) * antennas);
  raw.im.resize(raw.re.size());

  const double log_spread = std::log(pathloss_spread);
  for (int i = 0; i < workers; ++i) {
    // g_i log-uniform on [1/spread, 1]; spread 1 degenerates to g = 1.
    const double g = std::exp(-rng.uniform() * log_spread);
    const double scale = std::sqrt(g * 0.5);  // unit variance per complex entry
    for (int a = 0; a < antennas; ++a) {
      const std::size_t k = static_cast<std::size_t>(i) * antennas + a;
      raw.re[k] = scale * rng.normal();
      raw.im[k] = scale * rng.normal();
    }
  }
  return raw;
}

CsiMatrix build_csi(const RawChannel& raw) {
  const int L = raw.workers;
  const int nr = raw.antennas;
  std::vector<double> norm2(L, 0.0);
  for (int i = 0; i < L; ++i) {
    for (int a = 0; a < nr; ++a)
      norm2[i] += raw.real(i, a) * raw.real(i, a) + raw.imag(i, a) * raw.imag(i, a);
    if (norm2[i] <= 0.0)
      throw std::runtime_error("build_csi: degenerate zero-norm channel for worker " +
                               std::to_string(i));
  }

  CsiMatrix h(L, L);
  for (int i = 0; i < L; ++i) {
    h(i, i) = norm2[i] / raw.noise_power;
    for (int j = 0; j < L; ++j) {
      if (j == i) continue;
      // h_i^H h_j over the antenna index.
      double re = 0.0, im = 0.0;
      for (int a = 0; a < nr; ++a) {
        re += raw.real(i, a) * raw.real(j, a) + raw.imag(i, a) * raw.imag(j, a);
        im += raw.real(i, a) * raw.imag(j, a) - raw.imag(i, a) * raw.real(j, a);
      }
      h(i, j) = (re * re + im * im) / (raw.noise_power * norm2[i]);
    }
  }
  return h;
}

Matrix normalize_adjacency(const CsiMatrix& h) {
  if (h.rows() != h.cols()) throw std::invalid_argument("normalize_adjacency: non-square input");
  const std::size_t n = h.rows();
  std::vector<double> inv_sqrt(n);
  for (std::size_t i = 0; i < n; ++i) {
    double sum = 0.0;
    for (std::size_t j = 0; j < n; ++j) sum += h(i, j);
    if (sum <= 0.0)
      throw std::runtime_error("normalize_adjacency: zero row sum at row " + std::to_string(i));
    inv_sqrt[i] = 1.0 / std::sqrt(sum);
  }
  Matrix out(n, n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) out(i, j) = inv_sqrt[i] * h(i, j) * inv_sqrt[j];
  return out;
}

CsiMatrix scale_interference(const CsiMatrix& h, double factor) {
  if (factor <= 0.0) throw std::invalid_argument("scale_interference: factor must be > 0");
  CsiMatrix out = h;
  for (std::size_t i = 0; i < h.rows(); ++i)
    for (std::size_t j = 0; j < h.cols(); ++j)
      if (i != j) out(i, j) *= factor;
  return out;
}

CsiMatrix add_estimation_noise(const CsiMatrix& h, double variance, Rng& rng) {
  if (variance < 0.0) throw std::invalid_argument("add_estimation_noise: variance must be >= 0");
  if (variance == 0.0) return h;
  const double stddev = std::sqrt(variance);
  CsiMatrix out = h;
  for (std::size_t i = 0; i < out.size(); ++i) {
    out[i] += stddev * rng.normal();
    if (out[i] < 1e-12) out[i] = 1e-12;
  }
  return out;
}

ChannelSet make_channel_set(std::size_t count, const ChannelGenParams& params, std::uint64_t seed,
                            const std::vector<double>& split_fractions) {
  if (split_fractions.size() != 3)
    throw std::invalid_argument("make_channel_set: need 3 split fractions");
  double total = 0.0;
  for (double f : split_fractions) {
    if (f < 0.0) throw std::invalid_argument("make_channel_set: negative split fraction");
    total += f;
  }
  if (std::abs(total - 1.0) > 1e-9)
    throw std::invalid_argument("make_channel_set: split fractions must sum to 1");

  ChannelSet set;
  set.seed = seed;
  set.params = params;
  set.split_fractions = split_fractions;
  set.matrices.reserve(count);
  set.labels.reserve(count);

  const auto n_train = static_cast<std::size_t>(std::llround(split_fractions[0] * count));
  const auto n_val = static_cast<std::size_t>(std::llround(split_fractions[1] * count));

  Rng root(seed);
  for (std::size_t k = 0; k < count; ++k) {
    Rng stream = root.child(k);
    RawChannel raw = sample_raw(params.workers, params.antennas, params.pathloss_spread,
                                params.noise_power, stream);
    set.matrices.push_back(build_csi(raw));
    if (k < n_train)
      set.labels.push_back(Split::Train);
    else if (k < n_train + n_val)
      set.labels.push_back(Split::Validation);
    else
      set.labels.push_back(Split::Test);
  }
  return set;
}

std::string channel_set_to_json(const ChannelSet& set) {
  json j;
  j["seed"] = set.seed;
  j["L"] = set.params.workers;
  j["n_R"] = set.params.antennas;
  j["params"] = {{"pathloss_spread", set.params.pathloss_spread},
                 {"noise_power", set.params.noise_power}};
  j["splits"] = json::array();
  for (Split s : set.labels) j["splits"].push_back(split_name(s));
  j["split_fractions"] = set.split_fractions;
  j["matrices"] = json::array();
  for (const CsiMatrix& m : set.matrices) j["matrices"].push_back(m.data());
  return j.dump();
}

ChannelSet channel_set_from_json(const std::string& text) {
  json j = json::parse(text);
  ChannelSet set;
  set.seed = j.at("seed").get<std::uint64_t>();
  set.params.workers = j.at("L").get<int>();
  set.params.antennas = j.at("n_R").get<int>();
  set.params.pathloss_spread = j.at("params").at("pathloss_spread").get<double>();
  set.params.noise_power = j.at("params").at("noise_power").get<double>();
  if (j.contains("split_fractions"))
    set.split_fractions = j.at("split_fractions").get<std::vector<double>>();
  const std::size_t L = static_cast<std::size_t>(set.params.workers);
  for (const auto& name : j.at("splits")) set.labels.push_back(split_from_name(name));
  for (const auto& rows : j.at("matrices")) {
    auto data = rows.get<std::vector<double>>();
    if (data.size() != L * L)
      throw std::runtime_error("channel_set_from_json: matrix size does not match L");
    set.matrices.push_back(Matrix::from_rows(L, L, std::move(data)));
  }
  if (set.matrices.size() != set.labels.size())
    throw std::runtime_error("channel_set_from_json: splits and matrices disagree");
  return set;
}

void save_channel_set(const ChannelSet& set, const std::string& path) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot open for writing: " + path);
  out << channel_set_to_json(set);
  if (!out) throw std::runtime_error("write failed: " + path);
}

ChannelSet load_channel_set(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("cannot open channel file: " + path);
  std::string text((std::istreambuf_iterator<char>(in)), std::istreambuf_iterator<char>());
  return channel_set_from_json(text);
}

}  // namespace fedpower
