#pragma once

#include <filesystem>
#include <string>
#include <string_view>
#include <vector>

#include "amgreuse/sequence.hpp"

namespace amgreuse {

/// Read a Matrix Market coordinate file (`real` or `integer` field,
/// `general` or `symmetric` symmetry; symmetric storage is expanded).
/// Throws std::runtime_error with the offending line number on malformed
/// input, and an unsupported-format error for `complex`/`pattern` fields.
CsrMatrix mm_read(const std::filesystem::path& path);

/// Write in coordinate/general format with full 64-bit precision
/// (17 significant digits), so mm_read(mm_write(A)) == A exactly.
/// `comment` lines, if any, are emitted after the banner.
void mm_write(const std::filesystem::path& path, const CsrMatrix& A,
              std::string_view comment = {});

/// Dense vectors use the Matrix Market `array` format (n x 1).
std::vector<double> mm_read_vector(const std::filesystem::path& path);
void mm_write_vector(const std::filesystem::path& path, std::span<const double> v,
                     std::string_view comment = {});

/// Sequence stored as `step_%04d.mtx` plus optional `step_%04d.rhs.mtx`
/// files in one directory. Steps are read lazily in ascending index order.
class FileSequence final : public ProblemSequence {
  public:
    std::size_t size() const override { return matrix_paths_.size(); }
    TimeStep step(std::size_t k) const override;

  private:
    friend FileSequence read_sequence(const std::filesystem::path& dir);
    std::vector<std::filesystem::path> matrix_paths_;
    std::vector<std::filesystem::path> rhs_paths_; // empty path: RHS of ones
};

/// Scan a directory for a step sequence. Throws on an empty directory,
/// gaps in the numbering, or a matrix/RHS dimension inconsistency
/// (dimensions are checked when the step is read).
FileSequence read_sequence(const std::filesystem::path& dir);

} // namespace amgreuse
