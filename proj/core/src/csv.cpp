#include "coexsim/csv.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>

namespace coexsim {

std::string format_number(double v) {
    if (v == 0.0) {
        return "0";
    }
    if (!std::isfinite(v)) {
        return v > 0 ? "inf" : (v < 0 ? "-inf" : "nan");
    }
    const double mag = std::abs(v);
    const int exponent = static_cast<int>(std::floor(std::log10(mag)));
    if (exponent >= 6) {
        // Round to 6 significant digits, keep fixed notation.
        const double scale = std::pow(10.0, exponent - 5);
        v = std::round(v / scale) * scale;
    }
    const int decimals = std::clamp(5 - exponent, 0, 17);
    char buf[64];
    const auto res = std::to_chars(buf, buf + sizeof(buf), v,
                                   std::chars_format::fixed, decimals);
    std::string s(buf, res.ptr);
    // Trim trailing fractional zeros; keep at least one digit.
    if (s.find('.') != std::string::npos) {
        size_t last = s.find_last_not_of('0');
        if (s[last] == '.') {
            --last;
        }
        s.erase(last + 1);
    }
    return s;
}

CsvFile::CsvFile(const std::filesystem::path& path) : out_(path, std::ios::binary) {}

void CsvFile::comment(const std::string& text) {
    out_ << "# " << text << "\n";
}

void CsvFile::header(const std::vector<std::string>& names) {
    row(names);
}

void CsvFile::row(const std::vector<std::string>& fields) {
    for (size_t i = 0; i < fields.size(); ++i) {
        if (i > 0) {
            out_ << ",";
        }
        out_ << fields[i];
    }
    out_ << "\n";
}

std::string csv_field(double v) {
    return format_number(v);
}

std::string csv_field(const std::string& s) {
    return s;
}

}  // namespace coexsim
