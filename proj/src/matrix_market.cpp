#include "amgreuse/matrix_market.hpp"

#include <algorithm>
#include <cctype>
#include <cstdio>
#include <fstream>
#include <map>
#include <sstream>
#include <stdexcept>

namespace amgreuse {

namespace {

[[noreturn]] void parse_fail(const std::filesystem::path& path, std::size_t line_no,
                             const std::string& msg) {
    std::ostringstream os;
    os << path.string() << ":" << line_no << ": " << msg;
    throw std::runtime_error(os.str());
}

std::string lower(std::string s) {
    std::transform(s.begin(), s.end(), s.begin(),
                   [](unsigned char c) { return static_cast<char>(std::tolower(c)); });
    return s;
}

struct MmHeader {
    std::string object;
    std::string format;
    std::string field;
    std::string symmetry;
};

class MmReader {
  public:
    explicit MmReader(const std::filesystem::path& path) : path_(path), in_(path) {
        if (!in_) throw std::runtime_error("cannot open file: " + path.string());
        std::string banner;
        if (!std::getline(in_, banner)) parse_fail(path_, 1, "empty file");
        line_no_ = 1;
        std::istringstream hs(banner);
        std::string tag;
        hs >> tag >> header_.object >> header_.format >> header_.field >> header_.symmetry;
        if (lower(tag) != "%%matrixmarket") parse_fail(path_, 1, "missing MatrixMarket banner");
        header_.object = lower(header_.object);
        header_.format = lower(header_.format);
        header_.field = lower(header_.field);
        header_.symmetry = lower(header_.symmetry);
        if (header_.object != "matrix") parse_fail(path_, 1, "unsupported object: " + header_.object);
        if (header_.field == "complex" || header_.field == "pattern")
            parse_fail(path_, 1, "unsupported format: field '" + header_.field + "'");
        if (header_.field != "real" && header_.field != "integer")
            parse_fail(path_, 1, "unsupported field: " + header_.field);
        if (header_.symmetry != "general" && header_.symmetry != "symmetric")
            parse_fail(path_, 1, "unsupported symmetry: " + header_.symmetry);
    }

    const MmHeader& header() const { return header_; }
    std::size_t line_no() const { return line_no_; }

    /// Next non-comment, non-blank line. Comment lines are accepted (and
    /// skipped) anywhere.
    bool next_data_line(std::string& out) {
        std::string line;
        while (std::getline(in_, line)) {
            ++line_no_;
            const auto first = line.find_first_not_of(" \t\r");
            if (first == std::string::npos) continue;
            if (line[first] == '%') continue;
            out = line;
            return true;
        }
        return false;
    }

    [[noreturn]] void fail(const std::string& msg) { parse_fail(path_, line_no_, msg); }

  private:
    std::filesystem::path path_;
    std::ifstream in_;
    MmHeader header_;
    std::size_t line_no_ = 0;
};

double parse_value(MmReader& r, const std::string& token) {
    std::size_t pos = 0;
    double v = 0.0;
    try {
        v = std::stod(token, &pos);
    } catch (const std::exception&) {
        r.fail("non-numeric value '" + token + "'");
    }
    if (pos != token.size()) r.fail("non-numeric value '" + token + "'");
    return v;
}

} // namespace

CsrMatrix mm_read(const std::filesystem::path& path) {
    MmReader r(path);
    if (r.header().format != "coordinate")
        parse_fail(path, 1, "expected coordinate format, got " + r.header().format);
    const bool symmetric = r.header().symmetry == "symmetric";

    std::string line;
    if (!r.next_data_line(line)) r.fail("missing size line");
    index_t nrows = 0, ncols = 0, nnz = 0;
    {
        std::istringstream ss(line);
        if (!(ss >> nrows >> ncols >> nnz) || nrows < 0 || ncols < 0 || nnz < 0)
            r.fail("malformed size line '" + line + "'");
    }

    std::vector<Triplet> entries;
    entries.reserve(static_cast<std::size_t>(symmetric ? 2 * nnz : nnz));
    for (index_t k = 0; k < nnz; ++k) {
        if (!r.next_data_line(line)) r.fail("unexpected end of file: expected more entries");
        std::istringstream ss(line);
        index_t i = 0, j = 0;
        std::string vtok;
        if (!(ss >> i >> j >> vtok)) r.fail("malformed entry '" + line + "'");
        if (i < 1 || i > nrows || j < 1 || j > ncols) {
            std::ostringstream os;
            os << "index (" << i << ", " << j << ") out of declared bounds " << nrows << "x"
               << ncols;
            r.fail(os.str());
        }
        const double v = parse_value(r, vtok);
        entries.push_back(Triplet{i - 1, j - 1, v});
        if (symmetric && i != j) entries.push_back(Triplet{j - 1, i - 1, v});
    }
    return csr_from_triplets(nrows, ncols, entries);
}

void mm_write(const std::filesystem::path& path, const CsrMatrix& A, std::string_view comment) {
    std::ofstream out(path);
    if (!out) throw std::runtime_error("cannot open file for writing: " + path.string());
    out << "%%MatrixMarket matrix coordinate real general\n";
    if (!comment.empty()) {
        std::istringstream cs{std::string(comment)};
        std::string cline;
        while (std::getline(cs, cline)) out << "% " << cline << "\n";
    }
    out << A.nrows << " " << A.ncols << " " << A.nnz() << "\n";
    char buf[64];
    for (index_t i = 0; i < A.nrows; ++i) {
        for (index_t k = A.row_ptr[i]; k < A.row_ptr[i + 1]; ++k) {
            std::snprintf(buf, sizeof(buf), "%.17g", A.values[k]);
            out << (i + 1) << " " << (A.col_idx[k] + 1) << " " << buf << "\n";
        }
    }
    if (!out) throw std::runtime_error("write failed: " + path.string());
}

std::vector<double> mm_read_vector(const std::filesystem::path& path) {
    MmReader r(path);
    if (r.header().format != "array")
        parse_fail(path, 1, "expected array format, got " + r.header().format);
    if (r.header().symmetry != "general") parse_fail(path, 1, "vectors must be general");

    std::string line;
    if (!r.next_data_line(line)) r.fail("missing size line");
    index_t nrows = 0, ncols = 0;
    {
        std::istringstream ss(line);
        if (!(ss >> nrows >> ncols) || nrows < 0) r.fail("malformed size line '" + line + "'");
    }
    if (ncols != 1) r.fail("expected a single-column array");

    std::vector<double> v;
    v.reserve(static_cast<std::size_t>(nrows));
    for (index_t k = 0; k < nrows; ++k) {
        if (!r.next_data_line(line)) r.fail("unexpected end of file: expected more entries");
        std::istringstream ss(line);
        std::string vtok;
        if (!(ss >> vtok)) r.fail("malformed entry '" + line + "'");
        v.push_back(parse_value(r, vtok));
    }
    return v;
}

void mm_write_vector(const std::filesystem::path& path, std::span<const double> v,
                     std::string_view comment) {
    std::ofstream out(path);
    if (!out) throw std::runtime_error("cannot open file for writing: " + path.string());
    out << "%%MatrixMarket matrix array real general\n";
    if (!comment.empty()) {
        std::istringstream cs{std::string(comment)};
        std::string cline;
        while (std::getline(cs, cline)) out << "% " << cline << "\n";
    }
    out << v.size() << " 1\n";
    char buf[64];
    for (double x : v) {
        std::snprintf(buf, sizeof(buf), "%.17g", x);
        out << buf << "\n";
    }
    if (!out) throw std::runtime_error("write failed: " + path.string());
}

TimeStep FileSequence::step(std::size_t k) const {
    if (k >= size()) throw std::out_of_range("FileSequence::step: index out of range");
    TimeStep ts;
    ts.A = mm_read(matrix_paths_[k]);
    if (rhs_paths_[k].empty()) {
        ts.rhs.assign(static_cast<std::size_t>(ts.A.nrows), 1.0);
    } else {
        ts.rhs = mm_read_vector(rhs_paths_[k]);
        if (static_cast<index_t>(ts.rhs.size()) != ts.A.nrows) {
            std::ostringstream os;
            os << "step " << k << ": RHS length " << ts.rhs.size() << " does not match matrix size "
               << ts.A.nrows << " (" << rhs_paths_[k].string() << ")";
            throw std::runtime_error(os.str());
        }
    }
    return ts;
}

FileSequence read_sequence(const std::filesystem::path& dir) {
    if (!std::filesystem::is_directory(dir))
        throw std::runtime_error("read_sequence: not a directory: " + dir.string());

    std::map<long, std::filesystem::path> matrices;
    std::map<long, std::filesystem::path> rhs;
    for (const auto& entry : std::filesystem::directory_iterator(dir)) {
        if (!entry.is_regular_file()) continue;
        const std::string name = entry.path().filename().string();
        long idx = 0;
        char tail[16] = {0};
        if (std::sscanf(name.c_str(), "step_%4ld%15s", &idx, tail) == 2) {
            if (std::string_view(tail) == ".mtx")
                matrices[idx] = entry.path();
            else if (std::string_view(tail) == ".rhs.mtx")
                rhs[idx] = entry.path();
        }
    }
    if (matrices.empty())
        throw std::runtime_error("read_sequence: no step_NNNN.mtx files in " + dir.string());

    FileSequence seq;
    long expected = matrices.begin()->first;
    for (const auto& [idx, path] : matrices) {
        if (idx != expected) {
            std::ostringstream os;
            os << "read_sequence: gap in step numbering, expected step " << expected
               << " but found step " << idx;
            throw std::runtime_error(os.str());
        }
        ++expected;
        seq.matrix_paths_.push_back(path);
        auto it = rhs.find(idx);
        seq.rhs_paths_.push_back(it == rhs.end() ? std::filesystem::path{} : it->second);
    }
    return seq;
}

} // namespace amgreuse
