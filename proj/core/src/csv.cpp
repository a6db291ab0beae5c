#include "stiknn/csv.hpp"

#include <charconv>
#include <cstdio>
#include <fstream>
#include <sstream>
#include <vector>

#include "stiknn/errors.hpp"

namespace stiknn {

namespace {

std::vector<std::string> split_fields(const std::string& line) {
    std::vector<std::string> fields;
    size_t start = 0;
    while (true) {
        const size_t comma = line.find(',', start);
        if (comma == std::string::npos) {
            fields.push_back(line.substr(start));
            return fields;
        }
        fields.push_back(line.substr(start, comma - start));
        start = comma + 1;
    }
}

[[noreturn]] void fail_at(const std::string& path, int line_no, const std::string& message) {
    throw IoError(path + ":" + std::to_string(line_no) + ": " + message);
}

double parse_double(const std::string& token, const std::string& path, int line_no) {
    double value = 0.0;
    const char* begin = token.data();
    const char* end = begin + token.size();
    const auto [ptr, ec] = std::from_chars(begin, end, value);
    if (ec != std::errc() || ptr != end)
        fail_at(path, line_no, "non-numeric feature value '" + token + "'");
    return value;
}

std::string format_shortest(double value) {
    char buf[32];
    const auto [ptr, ec] = std::to_chars(buf, buf + sizeof buf, value);
    return std::string(buf, ptr);
}

std::string format_17g(double value) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", value);
    return buf;
}

// Lines with trailing \r stripped; the final line may lack a newline.
std::vector<std::string> read_lines(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw IoError(path + ": cannot open for reading");
    std::vector<std::string> lines;
    std::string line;
    while (std::getline(in, line)) {
        if (!line.empty() && line.back() == '\r') line.pop_back();
        lines.push_back(line);
    }
    return lines;
}

}  // namespace

Dataset read_dataset_csv(const std::string& path, DatasetRole role) {
    const std::vector<std::string> lines = read_lines(path);
    if (lines.empty()) throw IoError(path + ": empty file");

    const std::vector<std::string> header = split_fields(lines[0]);
    if (header.size() < 2 || header.back() != "label")
        fail_at(path, 1, "missing label column (header must end with 'label')");
    const int dim = static_cast<int>(header.size()) - 1;

    std::vector<double> features;
    std::vector<std::string> labels;
    for (size_t row = 1; row < lines.size(); ++row) {
        const int line_no = static_cast<int>(row) + 1;
        if (lines[row].empty() && row + 1 == lines.size()) break;  // trailing newline
        const std::vector<std::string> fields = split_fields(lines[row]);
        if (static_cast<int>(fields.size()) != dim + 1)
            fail_at(path, line_no,
                    "ragged row: expected " + std::to_string(dim + 1) + " fields, got " +
                        std::to_string(fields.size()));
        for (int d = 0; d < dim; ++d)
            features.push_back(parse_double(fields[d], path, line_no));
        labels.push_back(fields.back());
    }
    if (labels.empty()) throw IoError(path + ": no data rows");
    return Dataset(dim, std::move(features), labels, role);
}

void write_dataset_csv(const Dataset& dataset, const std::string& path) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw IoError(path + ": cannot open for writing");
    for (int d = 1; d <= dataset.dim(); ++d) out << 'x' << d << ',';
    out << "label\n";
    for (int i = 0; i < dataset.size(); ++i) {
        for (int d = 0; d < dataset.dim(); ++d)
            out << format_shortest(dataset.feature(i, d)) << ',';
        out << dataset.label_of(i) << '\n';
    }
    if (!out) throw IoError(path + ": write failed");
}

SquareMatrix read_matrix_csv(const std::string& path) {
    const std::vector<std::string> lines = read_lines(path);
    std::vector<std::vector<double>> rows;
    for (size_t row = 0; row < lines.size(); ++row) {
        const int line_no = static_cast<int>(row) + 1;
        if (lines[row].empty() && row + 1 == lines.size()) break;
        const std::vector<std::string> fields = split_fields(lines[row]);
        std::vector<double> values;
        values.reserve(fields.size());
        for (const auto& f : fields) values.push_back(parse_double(f, path, line_no));
        rows.push_back(std::move(values));
    }
    if (rows.empty()) throw IoError(path + ": empty matrix");
    const int n = static_cast<int>(rows.size());
    SquareMatrix m(n);
    for (int i = 0; i < n; ++i) {
        if (static_cast<int>(rows[i].size()) != n)
            fail_at(path, i + 1, "matrix is not square: row has " +
                                     std::to_string(rows[i].size()) + " of " + std::to_string(n) +
                                     " columns");
        for (int j = 0; j < n; ++j) m.at(i, j) = rows[i][j];
    }
    return m;
}

void write_matrix_csv(const SquareMatrix& matrix, const std::string& path) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw IoError(path + ": cannot open for writing");
    for (int i = 0; i < matrix.n(); ++i) {
        for (int j = 0; j < matrix.n(); ++j) {
            if (j) out << ',';
            out << format_17g(matrix.at(i, j));
        }
        out << '\n';
    }
    if (!out) throw IoError(path + ": write failed");
}

}  // namespace stiknn
