#pragma once

#include <cstddef>
#include <optional>
#include <vector>

#include "pvosc/graph.hpp"
#include "pvosc/ifs.hpp"

namespace pvosc {

/// Two distinct words inducing the same map.
struct CollisionWitness {
  Word sigma;
  Word tau;
  GroupElement element;
};

/// Exhaustive search over words of weight <= max_weight, breadth first in
/// lexicographic order. Absence proves nothing beyond that weight.
std::optional<CollisionWitness> find_word_collision(const ScaledIFS& s, int max_weight,
                                                    std::size_t budget = 1'000'000);

/// The word pair spelled out by a witness. For a lasso, sigma/tau cover the
/// stem and cycle_sigma/cycle_tau one turn of the cycle.
struct ReplayResult {
  WitnessKind kind = WitnessKind::PathToZero;
  Word sigma;
  Word tau;
  Word cycle_sigma;
  Word cycle_tau;
  std::optional<CollisionWitness> collision;
  std::size_t steps_checked = 0;
};

/// Recomputes every state (p_beta, b_beta)^{-1} (q, c) (p_alpha, b_alpha)
/// from the labels and compares with the stored vertices. Throws
/// ReplayMismatch on any discrepancy.
ReplayResult replay_witness(const ScaledIFS& s, const DecisionGraph& g, const WitnessPath& w);

enum class Separation { Separated, Overlapping, Unknown };

const char* to_string(Separation s) noexcept;

struct SeparationResult {
  Separation status = Separation::Unknown;
  int depth = 0;  // depth at which the status was established
};

/// Compares first-letter cylinders of the convex hull of the attractor,
/// refined up to `depth` levels.
SeparationResult cylinder_separation(const ScaledIFS& s, int depth);

}  // namespace pvosc
