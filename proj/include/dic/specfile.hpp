#pragma once

#include <fstream>

#include <json.hpp>

#include "dic/noisy.hpp"

namespace dic {

// A spec file carries either a discrete core (full signal tables) or a
// Gaussian network section that induces one, plus optional per-receiver
// observation channels.
struct LoadedSpec {
  ChannelSpec core;
  std::array<ObservationChannel, 3> obs{ObservationChannel::identity(),
                                        ObservationChannel::identity(),
                                        ObservationChannel::identity()};
  bool has_obs = false;
};

namespace detail {

using json = nlohmann::json;

template <typename T, size_t N>
std::array<T, N> to_array(const json& j, const std::string& what) {
  if (!j.is_array() || j.size() != N)
    throw validation_error(what + ": expected an array of " + std::to_string(N));
  std::array<T, N> out{};
  for (size_t i = 0; i < N; ++i) out[i] = j[i].get<T>();
  return out;
}

inline ObservationChannel obs_from_json(const json& j) {
  std::string kind = j.at("kind").get<std::string>();
  if (kind == "identity") return ObservationChannel::identity();
  if (kind == "gaussian") return ObservationChannel::gaussian(j.at("sigma2").get<double>());
  if (kind == "discrete")
    return ObservationChannel::discrete(j.at("matrix").get<std::vector<std::vector<double>>>());
  throw validation_error("observation kind must be identity, discrete, or gaussian");
}

inline json obs_to_json(const ObservationChannel& o) {
  json j;
  switch (o.kind) {
    case ObservationChannel::Kind::identity: j["kind"] = "identity"; break;
    case ObservationChannel::Kind::gaussian:
      j["kind"] = "gaussian";
      j["sigma2"] = o.sigma2;
      break;
    default:
      j["kind"] = "discrete";
      j["matrix"] = o.matrix;
      break;
  }
  return j;
}

}  // namespace detail

namespace detail {

inline LoadedSpec spec_from_json_impl(const nlohmann::json& j) {
  using detail::to_array;
  LoadedSpec out;
  if (j.contains("gaussian")) {
    const auto& g = j["gaussian"];
    GaussianNetSpec net;
    net.name = j.value("name", std::string("gaussian-net"));
    auto alpha = g.at("alphabet");
    if (!alpha.is_array() || alpha.size() != 3)
      throw validation_error("gaussian.alphabet: expected 3 per-sender value lists");
    for (int l = 0; l < 3; ++l)
      net.alphabet[static_cast<size_t>(l)] = alpha[l].get<std::vector<double>>();
    auto gains = g.at("gains");
    if (!gains.is_array() || gains.size() != 3)
      throw validation_error("gaussian.gains: expected a 3x3 matrix, rows indexed by sender");
    for (int l = 0; l < 3; ++l) {
      auto row = to_array<double, 3>(gains[l], "gaussian.gains row");
      for (int k = 0; k < 3; ++k) net.g[l][k] = row[static_cast<size_t>(k)];
    }
    net.sigma2 = g.at("sigma2").get<double>();
    out.core = net.to_channel();
    out.obs = net.observations();
    out.has_obs = true;
    return out;
  }

  const auto& c = j.at("core");
  ChannelSpec& spec = out.core;
  spec.name = j.value("name", std::string("unnamed"));
  spec.nx = to_array<int, 3>(c.at("nx"), "core.nx");
  spec.ns = to_array<int, 3>(c.at("ns"), "core.ns");
  spec.ny = to_array<int, 3>(c.at("ny"), "core.ny");
  auto nloss = c.at("nloss");
  if (!nloss.is_array() || nloss.size() != 3)
    throw validation_error("core.nloss: expected 3 rows, one per sender");
  for (int l = 0; l < 3; ++l)
    spec.nloss[static_cast<size_t>(l)] = to_array<int, 3>(nloss[l], "core.nloss row");
  auto g = c.at("g");
  if (!g.is_array() || g.size() != 3) throw validation_error("core.g: expected 3 rows");
  for (int l = 0; l < 3; ++l) {
    if (!g[l].is_array() || g[l].size() != 3)
      throw validation_error("core.g: row " + std::to_string(l + 1) + " needs 3 tables");
    for (int k = 0; k < 3; ++k)
      spec.g[static_cast<size_t>(l)][static_cast<size_t>(k)] = g[l][k].get<std::vector<int>>();
  }
  for (int k = 0; k < 3; ++k) {
    spec.h[static_cast<size_t>(k)] = c.at("h")[k].get<std::vector<int>>();
    spec.f[static_cast<size_t>(k)] = c.at("f")[k].get<std::vector<int>>();
  }
  if (c.contains("yval"))
    for (int k = 0; k < 3; ++k)
      spec.yval[static_cast<size_t>(k)] = c["yval"][k].get<std::vector<double>>();
  validate_spec(spec);

  if (j.contains("observations")) {
    const auto& ob = j["observations"];
    if (!ob.is_array() || ob.size() != 3)
      throw validation_error("observations: expected 3 entries, one per receiver");
    for (int k = 0; k < 3; ++k) {
      out.obs[static_cast<size_t>(k)] = detail::obs_from_json(ob[k]);
      out.obs[static_cast<size_t>(k)].validate(spec.ny[k]);
    }
    out.has_obs = true;
  }
  return out;
}

}  // namespace detail

// Malformed documents surface as validation_error, never as raw json exceptions.
inline LoadedSpec spec_from_json(const nlohmann::json& j) {
  try {
    return detail::spec_from_json_impl(j);
  } catch (const nlohmann::json::exception& e) {
    throw validation_error(std::string("spec file: ") + e.what());
  }
}

inline nlohmann::json spec_to_json(const ChannelSpec& spec,
                                   const std::array<ObservationChannel, 3>* obs = nullptr) {
  nlohmann::json c;
  c["nx"] = spec.nx;
  c["nloss"] = spec.nloss;
  c["ns"] = spec.ns;
  c["ny"] = spec.ny;
  c["g"] = spec.g;
  c["h"] = spec.h;
  c["f"] = spec.f;
  bool any_yval = false;
  for (int k = 0; k < 3; ++k) any_yval = any_yval || !spec.yval[static_cast<size_t>(k)].empty();
  if (any_yval) c["yval"] = spec.yval;
  nlohmann::json j;
  j["name"] = spec.name;
  j["core"] = std::move(c);
  if (obs) {
    nlohmann::json ob = nlohmann::json::array();
    for (int k = 0; k < 3; ++k) ob.push_back(detail::obs_to_json((*obs)[static_cast<size_t>(k)]));
    j["observations"] = std::move(ob);
  }
  return j;
}

inline nlohmann::json gaussian_to_json(const GaussianNetSpec& net) {
  nlohmann::json g;
  g["alphabet"] = net.alphabet;
  nlohmann::json gains = nlohmann::json::array();
  for (int l = 0; l < 3; ++l) gains.push_back(std::array<double, 3>{
      net.g[l][0], net.g[l][1], net.g[l][2]});
  g["gains"] = std::move(gains);
  g["sigma2"] = net.sigma2;
  nlohmann::json j;
  j["name"] = net.name;
  j["gaussian"] = std::move(g);
  return j;
}

// Resolves a --spec argument: an existing .json path is loaded; otherwise
// the name is tried against the builtin channels, then the builtin Gaussian
// example.
inline LoadedSpec resolve_spec(const std::string& arg) {
  std::ifstream in(arg);
  if (in) {
    nlohmann::json j;
    try {
      in >> j;
    } catch (const std::exception& e) {
      throw validation_error(arg + ": " + e.what());
    }
    return spec_from_json(j);
  }
  if (arg == "gaussian-bpsk") {
    GaussianNetSpec net = builtin_gaussian_bpsk();
    LoadedSpec out;
    out.core = net.to_channel();
    out.obs = net.observations();
    out.has_obs = true;
    return out;
  }
  LoadedSpec out;
  out.core = builtin_channel(arg);  // throws usage_error for unknown names
  return out;
}

inline void save_json(const nlohmann::json& j, const std::string& path) {
  std::ofstream out(path);
  if (!out) throw usage_error("cannot write " + path);
  out << j.dump(2) << "\n";
}

}  // namespace dic
