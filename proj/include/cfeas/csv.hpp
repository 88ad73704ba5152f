#pragma once

#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace cfeas
{

/// Builds RFC-4180 CSV text (CRLF line ends, quoting only where needed).
/// Numbers use the shortest round-trip representation, so equal inputs give
/// byte-identical output.
class CsvWriter
{
public:
    explicit CsvWriter(std::vector<std::string> header);

    CsvWriter& field(std::string_view text);
    CsvWriter& field(double value);
    CsvWriter& field(long long value);
    CsvWriter& field(std::optional<double> value);  // empty when absent
    void end_row();

    [[nodiscard]] const std::string& str() const { return out_; }

private:
    void separator();

    std::string out_;
    std::size_t columns_;
    std::size_t current_{0};
};

std::string csv_escape(std::string_view text);

}  // namespace cfeas
