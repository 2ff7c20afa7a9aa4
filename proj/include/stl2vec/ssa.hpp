#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "stl2vec/trajectory.hpp"

namespace stl2vec {

/// Mass-action reaction: propensity = rate * prod_s C(count_s, reactant_s).
struct Reaction {
  std::vector<long> reactants;  // per-species stoichiometry consumed
  std::vector<long> products;   // per-species stoichiometry produced
  double rate = 0.0;
};

struct ReactionNetwork {
  std::vector<std::string> species;
  std::vector<long> init;
  std::vector<Reaction> reactions;
  double horizon = 0.0;
  double dt = 1.0;
};

/// SIRS epidemic with contact-rate scaling: infection beta*S*I/N,
/// recovery gamma*I, immunity loss omega*R.
ReactionNetwork sirs_preset(double beta = 0.3, double gamma = 0.15,
                            double omega = 0.05, long n_population = 100,
                            long i0 = 10, double horizon = 33.0, double dt = 1.0);

/// Pure immigration: empty set -> X at constant rate.
ReactionNetwork immigration_preset(double rate = 1.0, double horizon = 50.0,
                                   double dt = 1.0);

/// Gillespie direct method, states held piecewise-constant onto the uniform
/// output grid. Zero total propensity holds the state to the horizon.
/// Run i depends only on (seed, i).
std::vector<Trajectory> simulate_ssa(const ReactionNetwork& net, std::size_t count,
                                     std::uint64_t seed);

/// JSON round trip for network configs (species, init, reactions
/// [reactants, products, rate], horizon, dt).
ReactionNetwork load_network_json(const std::string& path);
void save_network_json(const std::string& path, const ReactionNetwork& net);

}  // namespace stl2vec
