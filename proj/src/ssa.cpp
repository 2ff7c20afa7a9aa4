#include "stl2vec/ssa.hpp"

#include <cmath>
#include <fstream>
#include <random>
#include <stdexcept>

#include <json.hpp>

#include "stl2vec/rng.hpp"

namespace stl2vec {

namespace {

void validate(const ReactionNetwork& net) {
  const std::size_t n = net.species.size();
  if (n == 0) throw std::invalid_argument("reaction network has no species");
  if (net.init.size() != n) {
    throw std::invalid_argument("initial state size does not match species count");
  }
  for (long c : net.init) {
    if (c < 0) throw std::invalid_argument("negative initial count");
  }
  for (const auto& r : net.reactions) {
    if (r.reactants.size() != n || r.products.size() != n) {
      throw std::invalid_argument("reaction stoichiometry size mismatch");
    }
    if (!(r.rate >= 0.0)) throw std::invalid_argument("negative reaction rate");
  }
  if (!(net.horizon > 0.0) || !(net.dt > 0.0)) {
    throw std::invalid_argument("horizon and dt must be positive");
  }
}

// rate * prod_s C(x_s, nu_s): the mass-action combinatorial factor
double propensity(const Reaction& r, const std::vector<long>& x) {
  double a = r.rate;
  for (std::size_t s = 0; s < x.size(); ++s) {
    long nu = r.reactants[s];
    for (long k = 0; k < nu; ++k) a *= static_cast<double>(x[s] - k) / static_cast<double>(k + 1);
  }
  return a > 0.0 ? a : 0.0;
}

}  // namespace

ReactionNetwork sirs_preset(double beta, double gamma, double omega,
                            long n_population, long i0, double horizon,
                            double dt) {
  ReactionNetwork net;
  net.species = {"S", "I", "R"};
  net.init = {n_population - i0, i0, 0};
  // infection S+I -> 2I has mass-action factor S*I, so rate beta/N gives
  // the density-dependent propensity beta*S*I/N
  net.reactions = {
      {{1, 1, 0}, {0, 2, 0}, beta / static_cast<double>(n_population)},
      {{0, 1, 0}, {0, 0, 1}, gamma},
      {{0, 0, 1}, {1, 0, 0}, omega},
  };
  net.horizon = horizon;
  net.dt = dt;
  return net;
}

ReactionNetwork immigration_preset(double rate, double horizon, double dt) {
  ReactionNetwork net;
  net.species = {"X"};
  net.init = {0};
  net.reactions = {{{0}, {1}, rate}};
  net.horizon = horizon;
  net.dt = dt;
  return net;
}

std::vector<Trajectory> simulate_ssa(const ReactionNetwork& net, std::size_t count,
                                     std::uint64_t seed) {
  validate(net);
  const std::size_t n = net.species.size();
  const std::size_t grid =
      static_cast<std::size_t>(std::floor(net.horizon / net.dt + 1e-9)) + 1;

  std::vector<Trajectory> out(count);
  for (std::size_t run = 0; run < count; ++run) {
    auto rng = substream_engine(seed, "ssa", run);
    std::uniform_real_distribution<double> unit(0.0, 1.0);

    Trajectory& tr = out[run];
    tr.t0 = 0.0;
    tr.dt = net.dt;
    tr.values.resize(static_cast<Eigen::Index>(grid), static_cast<Eigen::Index>(n));

    std::vector<long> x = net.init;
    double t = 0.0;
    std::size_t next_cell = 0;
    std::vector<double> a(net.reactions.size());
    while (next_cell < grid) {
      double total = 0.0;
      for (std::size_t j = 0; j < net.reactions.size(); ++j) {
        a[j] = propensity(net.reactions[j], x);
        total += a[j];
      }
      double t_next = total > 0.0
                          ? t + std::exponential_distribution<double>(total)(rng)
                          : std::numeric_limits<double>::infinity();
      // freeze the current state onto every grid cell the jump skips over
      // (state is right-continuous: a cell exactly at the jump gets the new state)
      while (next_cell < grid && static_cast<double>(next_cell) * net.dt < t_next) {
        for (std::size_t s = 0; s < n; ++s) {
          tr.values(static_cast<Eigen::Index>(next_cell), static_cast<Eigen::Index>(s)) =
              static_cast<double>(x[s]);
        }
        ++next_cell;
      }
      if (t_next > net.horizon || !std::isfinite(t_next)) break;
      double pick = unit(rng) * total;
      std::size_t j = 0;
      for (; j + 1 < a.size(); ++j) {
        if (pick < a[j]) break;
        pick -= a[j];
      }
      for (std::size_t s = 0; s < n; ++s) {
        x[s] += net.reactions[j].products[s] - net.reactions[j].reactants[s];
      }
      t = t_next;
    }
    // horizon reached with no further events: hold the final state
    for (; next_cell < grid; ++next_cell) {
      for (std::size_t s = 0; s < n; ++s) {
        tr.values(static_cast<Eigen::Index>(next_cell), static_cast<Eigen::Index>(s)) =
            static_cast<double>(x[s]);
      }
    }
  }
  return out;
}

ReactionNetwork load_network_json(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open network config: " + path);
  nlohmann::json j;
  in >> j;
  ReactionNetwork net;
  net.species = j.at("species").get<std::vector<std::string>>();
  net.init = j.at("init").get<std::vector<long>>();
  net.horizon = j.at("horizon").get<double>();
  net.dt = j.value("dt", 1.0);
  auto index_of = [&](const std::string& name) -> std::size_t {
    for (std::size_t s = 0; s < net.species.size(); ++s) {
      if (net.species[s] == name) return s;
    }
    throw std::runtime_error("unknown species '" + name + "' in " + path);
  };
  for (const auto& rj : j.at("reactions")) {
    Reaction r;
    r.reactants.assign(net.species.size(), 0);
    r.products.assign(net.species.size(), 0);
    for (auto& [name, nu] : rj.at("reactants").items()) {
      r.reactants[index_of(name)] = nu.get<long>();
    }
    for (auto& [name, nu] : rj.at("products").items()) {
      r.products[index_of(name)] = nu.get<long>();
    }
    r.rate = rj.at("rate").get<double>();
    net.reactions.push_back(std::move(r));
  }
  validate(net);
  return net;
}

void save_network_json(const std::string& path, const ReactionNetwork& net) {
  nlohmann::json j;
  j["species"] = net.species;
  j["init"] = net.init;
  j["horizon"] = net.horizon;
  j["dt"] = net.dt;
  j["reactions"] = nlohmann::json::array();
  for (const auto& r : net.reactions) {
    nlohmann::json rj;
    rj["rate"] = r.rate;
    rj["reactants"] = nlohmann::json::object();
    rj["products"] = nlohmann::json::object();
    for (std::size_t s = 0; s < net.species.size(); ++s) {
      if (r.reactants[s] != 0) rj["reactants"][net.species[s]] = r.reactants[s];
      if (r.products[s] != 0) rj["products"][net.species[s]] = r.products[s];
    }
    j["reactions"].push_back(std::move(rj));
  }
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot write network config: " + path);
  out << j.dump(2) << "\n";
}

}  // namespace stl2vec
