#include "frex/csv.hpp"

#include <cstdio>
#include <stdexcept>

namespace frex::csv {

std::string format_double(double v) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

Writer::Writer(const std::string& path, const std::string& schema,
               const std::vector<std::string>& columns)
    : out_(path), columns_(columns.size()) {
    if (!out_) throw std::runtime_error("csv: cannot open " + path);
    out_ << "# schema=" << schema << " version=1\n";
    for (std::size_t i = 0; i < columns.size(); ++i)
        out_ << columns[i] << (i + 1 < columns.size() ? "," : "\n");
}

void Writer::row(std::span<const double> values) {
    if (values.size() != columns_) throw std::invalid_argument("csv: column count mismatch");
    for (std::size_t i = 0; i < values.size(); ++i)
        out_ << format_double(values[i]) << (i + 1 < values.size() ? "," : "\n");
}

void Writer::row(const std::vector<std::string>& cells) {
    if (cells.size() != columns_) throw std::invalid_argument("csv: column count mismatch");
    for (std::size_t i = 0; i < cells.size(); ++i)
        out_ << cells[i] << (i + 1 < cells.size() ? "," : "\n");
}

}  // namespace frex::csv
