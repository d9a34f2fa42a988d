#pragma once

#include <array>
#include <cstdint>
#include <string_view>

#include "amgreuse/sequence.hpp"

namespace amgreuse {

/// Synthetic time-varying diffusion problem: a high-contrast Gaussian
/// coefficient blob travels across the unit square, so the 5-point system
/// matrix drifts from step to step while its sparsity pattern stays fixed.
struct DiffusionSequenceSpec {
    index_t grid_n = 64;       // unknowns form a grid_n x grid_n interior grid
    index_t steps = 25;
    double contrast = 10.0;    // coefficient ratio inside / outside the blob
    double blob_sigma = 0.0;   // Gaussian radius in grid units; <= 0 selects 0.2 * grid_n
    double path_speed = 0.25;  // blob displacement per step, grid units
    std::uint64_t seed = 42;   // RHS randomization
};

/// `slow` emulates a reuse-friendly drift (contrast 10, path_speed 0.25);
/// `fast` a reuse-hostile one (contrast 1000, path_speed 2.0). Throws on an
/// unknown name.
DiffusionSequenceSpec preset_spec(std::string_view name, index_t grid_n, index_t steps,
                                  std::uint64_t seed);

class DiffusionSequence final : public ProblemSequence {
  public:
    /// Validates the spec (grid_n >= 4, steps >= 1, contrast >= 1),
    /// resolves the default blob radius, and fixes the shared RHS.
    explicit DiffusionSequence(DiffusionSequenceSpec spec);

    std::size_t size() const override { return static_cast<std::size_t>(spec_.steps); }
    TimeStep step(std::size_t k) const override;

    /// Blob center at step k in grid units (diagonal path, reflecting at
    /// the walls).
    std::array<double, 2> blob_center(std::size_t k) const;

    const DiffusionSequenceSpec& spec() const { return spec_; }

  private:
    DiffusionSequenceSpec spec_;
    std::vector<double> rhs_;
};

} // namespace amgreuse
