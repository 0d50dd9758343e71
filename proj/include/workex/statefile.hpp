#pragma once

#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "workex/state.hpp"

namespace workex {

// Flat key-value state description:
//
//   # qutrit
//   probs = 0.2, 0.2, 0.6
//   energies = 0, 1, 8
//   beta = 1.0          (optional; required by bath commands)
//   base_quantum = 1.0  (optional; inferred from the spacings otherwise)
//
// Lists split on commas and/or whitespace. Unknown keys are rejected.
struct StateSpec {
    std::vector<double> probs;
    std::vector<double> energies;
    std::optional<double> beta;
    std::optional<double> base_quantum;

    DiagonalState to_state() const { return DiagonalState(probs, energies); }
};

StateSpec parse_state_spec(std::istream& in);
StateSpec load_state_spec(const std::string& path);

}  // namespace workex
