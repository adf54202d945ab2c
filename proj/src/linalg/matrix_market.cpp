#include "polyschwarz/linalg/matrix_market.hpp"

#include <algorithm>
#include <cctype>
#include <cstdio>
#include <fstream>
#include <sstream>
#include <string>

#include "polyschwarz/errors.hpp"

namespace polyschwarz::linalg {

namespace {

std::string lower(std::string s) {
    std::transform(s.begin(), s.end(), s.begin(),
                   [](unsigned char c) { return static_cast<char>(std::tolower(c)); });
    return s;
}

std::ifstream open_in(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) throw Error("cannot open " + path.string());
    return in;
}

std::ofstream open_out(const std::filesystem::path& path) {
    std::ofstream out(path);
    if (!out) throw Error("cannot write " + path.string());
    return out;
}

std::string format_real(double v) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

// Returns the banner line and leaves the stream at the size line.
std::string read_banner(std::ifstream& in, const std::filesystem::path& path) {
    std::string banner;
    if (!std::getline(in, banner) || banner.rfind("%%MatrixMarket", 0) != 0) {
        throw Error(path.string() + ": missing %%MatrixMarket banner");
    }
    return lower(banner);
}

std::string next_data_line(std::ifstream& in) {
    std::string line;
    while (std::getline(in, line)) {
        if (!line.empty() && line[0] != '%') return line;
    }
    throw Error("matrix market: unexpected end of file");
}

}  // namespace

void write_matrix_market(const std::filesystem::path& path, const CsrMatrix& a) {
    auto out = open_out(path);
    out << "%%MatrixMarket matrix coordinate real general\n";
    out << a.rows() << ' ' << a.cols() << ' ' << a.nnz() << '\n';
    for (Index i = 0; i < a.rows(); ++i) {
        auto cols = a.row_cols(i);
        auto vals = a.row_values(i);
        for (std::size_t p = 0; p < cols.size(); ++p) {
            out << i + 1 << ' ' << cols[p] + 1 << ' ' << format_real(vals[p]) << '\n';
        }
    }
}

CsrMatrix read_matrix_market(const std::filesystem::path& path) {
    auto in = open_in(path);
    const std::string banner = read_banner(in, path);
    if (banner.find("coordinate") == std::string::npos ||
        banner.find("real") == std::string::npos) {
        throw Error(path.string() + ": only coordinate real matrices are supported");
    }
    const bool symmetric = banner.find("symmetric") != std::string::npos;
    std::istringstream size_line(next_data_line(in));
    Index rows = 0, cols = 0, entries = 0;
    size_line >> rows >> cols >> entries;
    TripletBuffer t(rows, cols);
    for (Index k = 0; k < entries; ++k) {
        std::istringstream line(next_data_line(in));
        Index i = 0, j = 0;
        double v = 0.0;
        line >> i >> j >> v;
        t.add(i - 1, j - 1, v);
        if (symmetric && i != j) t.add(j - 1, i - 1, v);
    }
    return t.compact();
}

void write_vector_market(const std::filesystem::path& path, std::span<const double> v) {
    auto out = open_out(path);
    out << "%%MatrixMarket matrix array real general\n";
    out << v.size() << " 1\n";
    for (double x : v) out << format_real(x) << '\n';
}

std::vector<double> read_vector_market(const std::filesystem::path& path) {
    auto in = open_in(path);
    const std::string banner = read_banner(in, path);
    if (banner.find("array") == std::string::npos) {
        throw Error(path.string() + ": expected array format");
    }
    std::istringstream size_line(next_data_line(in));
    Index rows = 0, cols = 0;
    size_line >> rows >> cols;
    if (cols != 1) throw Error(path.string() + ": expected a single column");
    std::vector<double> v(rows);
    for (Index i = 0; i < rows; ++i) v[i] = std::stod(next_data_line(in));
    return v;
}

}  // namespace polyschwarz::linalg
