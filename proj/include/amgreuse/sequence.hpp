#pragma once

#include <cstddef>
#include <vector>

#include "amgreuse/csr.hpp"

namespace amgreuse {

/// One linear system of a non-steady sequence.
struct TimeStep {
    CsrMatrix A;
    std::vector<double> rhs;
};

/// Ordered source of slowly varying linear systems. step(k) is pure and
/// deterministic, so a sequence can be replayed for several strategies.
class ProblemSequence {
  public:
    virtual ~ProblemSequence() = default;
    virtual std::size_t size() const = 0;
    virtual TimeStep step(std::size_t k) const = 0;
};

} // namespace amgreuse
