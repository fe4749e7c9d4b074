#pragma once

#include <fstream>
#include <span>
#include <string>
#include <vector>

namespace frex::csv {

/// Formats with 17 significant digits, '.' decimal separator.
std::string format_double(double v);

/// Plain CSV with a versioned schema comment on the first line.
class Writer {
public:
    Writer(const std::string& path, const std::string& schema,
           const std::vector<std::string>& columns);

    void row(std::span<const double> values);
    void row(std::initializer_list<double> values) {
        row(std::span<const double>(values.begin(), values.size()));
    }
    void row(const std::vector<std::string>& cells);

private:
    std::ofstream out_;
    std::size_t columns_ = 0;
};

}  // namespace frex::csv
