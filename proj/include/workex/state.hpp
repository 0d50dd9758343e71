#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <vector>

namespace workex {

// Diagonal state of one copy: populations p_i over level energies nu_i.
// Construction sorts levels by energy ascending and renormalizes the
// populations once if their sum is within tolerance of 1.
class DiagonalState {
public:
    DiagonalState(std::vector<double> probs, std::vector<double> energies);

    int dim() const { return static_cast<int>(probs_.size()); }
    std::span<const double> probs() const { return probs_; }
    std::span<const double> energies() const { return energies_; }

    bool strictly_positive() const;

    // Populations sorted decreasing, energies unchanged.
    DiagonalState passive() const;

    // Gibbs populations exp(-beta nu_i)/Z on this spectrum, computed with the
    // spectrum shifted by its minimum so large beta cannot underflow the lot.
    std::vector<double> gibbs_populations(double beta) const;

    // ln sum_i exp(-beta nu_i) over the unshifted spectrum.
    double log_partition_function(double beta) const;

private:
    std::vector<double> probs_;
    std::vector<double> energies_;
};

// Integer representation of the spectrum: energies_i = nu_min + levels_i *
// quantum, needed for exact degenerate-energy grouping. The quantum is taken
// from the caller or inferred as the gcd of the level spacings at 1e-9
// precision; spectra without one are rejected as incommensurate.
struct EnergyLattice {
    double quantum = 0.0;
    std::vector<std::int64_t> levels;

    std::int64_t max_level() const;

    // Nearest lattice index of a work value; throws OffLattice when w is not
    // within tolerance of a multiple of the quantum.
    std::int64_t work_index(double w) const;
};

EnergyLattice energy_lattice(const DiagonalState& state,
                             std::optional<double> base_quantum = std::nullopt);

}  // namespace workex
