#include "amgreuse/diffusion.hpp"

#include <cmath>
#include <random>
#include <sstream>
#include <stdexcept>

namespace amgreuse {

DiffusionSequenceSpec preset_spec(std::string_view name, index_t grid_n, index_t steps,
                                  std::uint64_t seed) {
    DiffusionSequenceSpec spec;
    spec.grid_n = grid_n;
    spec.steps = steps;
    spec.seed = seed;
    if (name == "slow") {
        spec.contrast = 10.0;
        spec.path_speed = 0.25;
    } else if (name == "fast") {
        spec.contrast = 1000.0;
        spec.path_speed = 2.0;
    } else {
        std::ostringstream os;
        os << "preset_spec: unknown preset '" << name << "' (expected 'slow' or 'fast')";
        throw std::invalid_argument(os.str());
    }
    return spec;
}

DiffusionSequence::DiffusionSequence(DiffusionSequenceSpec spec) : spec_(spec) {
    if (spec_.grid_n < 4) throw std::invalid_argument("DiffusionSequence: grid_n must be >= 4");
    if (spec_.steps < 1) throw std::invalid_argument("DiffusionSequence: steps must be >= 1");
    if (spec_.contrast < 1.0)
        throw std::invalid_argument("DiffusionSequence: contrast must be >= 1");
    if (spec_.blob_sigma <= 0.0) spec_.blob_sigma = 0.2 * static_cast<double>(spec_.grid_n);

    // Fixed positive RHS shared across all steps.
    std::mt19937_64 rng(spec_.seed);
    std::uniform_real_distribution<double> dist(0.1, 1.0);
    rhs_.resize(static_cast<std::size_t>(spec_.grid_n) * static_cast<std::size_t>(spec_.grid_n));
    for (double& v : rhs_) v = dist(rng);
}

std::array<double, 2> DiffusionSequence::blob_center(std::size_t k) const {
    const double limit = static_cast<double>(spec_.grid_n - 1);
    // Diagonal motion starting at the origin corner; fold (billiard
    // reflection) keeps each coordinate within [0, limit].
    const double travel = static_cast<double>(k) * spec_.path_speed / std::sqrt(2.0);
    double pos = std::fmod(travel, 2.0 * limit);
    if (pos > limit) pos = 2.0 * limit - pos;
    return {pos, pos};
}

TimeStep DiffusionSequence::step(std::size_t k) const {
    if (k >= size()) throw std::out_of_range("DiffusionSequence::step: index out of range");

    const index_t g = spec_.grid_n;
    const index_t n = g * g;
    const double h = 1.0 / static_cast<double>(g + 1);
    const double inv_h2 = 1.0 / (h * h);
    const auto [cx, cy] = blob_center(k);
    const double inv_sigma2 = 1.0 / (spec_.blob_sigma * spec_.blob_sigma);

    // Coefficient at node (ix, iy), grid-unit coordinates.
    std::vector<double> kappa(static_cast<std::size_t>(n));
    for (index_t iy = 0; iy < g; ++iy) {
        for (index_t ix = 0; ix < g; ++ix) {
            const double dx = static_cast<double>(ix) - cx;
            const double dy = static_cast<double>(iy) - cy;
            kappa[iy * g + ix] =
                1.0 + (spec_.contrast - 1.0) * std::exp(-(dx * dx + dy * dy) * inv_sigma2);
        }
    }

    auto harmonic = [](double a, double b) { return 2.0 * a * b / (a + b); };

    CsrMatrix A;
    A.nrows = n;
    A.ncols = n;
    A.row_ptr.reserve(static_cast<std::size_t>(n) + 1);
    A.col_idx.reserve(static_cast<std::size_t>(5 * n));
    A.values.reserve(static_cast<std::size_t>(5 * n));

    for (index_t iy = 0; iy < g; ++iy) {
        for (index_t ix = 0; ix < g; ++ix) {
            const index_t i = iy * g + ix;
            const double k0 = kappa[i];
            // Homogeneous Dirichlet walls: boundary faces take the one-sided
            // coefficient and contribute to the diagonal only.
            const double south = (iy > 0) ? harmonic(k0, kappa[i - g]) : k0;
            const double west = (ix > 0) ? harmonic(k0, kappa[i - 1]) : k0;
            const double east = (ix < g - 1) ? harmonic(k0, kappa[i + 1]) : k0;
            const double north = (iy < g - 1) ? harmonic(k0, kappa[i + g]) : k0;

            if (iy > 0) {
                A.col_idx.push_back(i - g);
                A.values.push_back(-south * inv_h2);
            }
            if (ix > 0) {
                A.col_idx.push_back(i - 1);
                A.values.push_back(-west * inv_h2);
            }
            A.col_idx.push_back(i);
            A.values.push_back((south + west + east + north) * inv_h2);
            if (ix < g - 1) {
                A.col_idx.push_back(i + 1);
                A.values.push_back(-east * inv_h2);
            }
            if (iy < g - 1) {
                A.col_idx.push_back(i + g);
                A.values.push_back(-north * inv_h2);
            }
            A.row_ptr.push_back(A.nnz());
        }
    }

    return TimeStep{std::move(A), rhs_};
}

} // namespace amgreuse
