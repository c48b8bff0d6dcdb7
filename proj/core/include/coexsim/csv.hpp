#pragma once

#include <filesystem>
#include <fstream>
#include <string>
#include <vector>

namespace coexsim {

// Fixed-notation numeric formatting with 6 significant digits, locale-free.
std::string format_number(double v);

class CsvFile {
public:
    explicit CsvFile(const std::filesystem::path& path);

    void comment(const std::string& text);           // "# text"
    void header(const std::vector<std::string>& names);
    void row(const std::vector<std::string>& fields);

    bool good() const { return out_.good(); }

private:
    std::ofstream out_;
};

std::string csv_field(double v);
std::string csv_field(const std::string& s);

}  // namespace coexsim
