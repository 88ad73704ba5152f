#include "cfeas/csv.hpp"
#include "cfeas/point.hpp"

#include <fmt/format.h>

namespace cfeas
{

std::string csv_escape(std::string_view text)
{
    if (text.find_first_of(",\"\r\n") == std::string_view::npos) {
        return std::string(text);
    }
    std::string out = "\"";
    for (char c : text) {
        if (c == '"') {
            out += '"';
        }
        out += c;
    }
    out += '"';
    return out;
}

CsvWriter::CsvWriter(std::vector<std::string> header) : columns_(header.size())
{
    for (const auto& h : header) {
        field(h);
    }
    end_row();
}

void CsvWriter::separator()
{
    if (current_ > 0) {
        out_ += ',';
    }
    ++current_;
}

CsvWriter& CsvWriter::field(std::string_view text)
{
    separator();
    out_ += csv_escape(text);
    return *this;
}

CsvWriter& CsvWriter::field(double value)
{
    separator();
    out_ += fmt::format("{}", value);
    return *this;
}

CsvWriter& CsvWriter::field(long long value)
{
    separator();
    out_ += fmt::format("{}", value);
    return *this;
}

CsvWriter& CsvWriter::field(std::optional<double> value)
{
    if (value) {
        return field(*value);
    }
    separator();
    return *this;
}

void CsvWriter::end_row()
{
    if (current_ != columns_) {
        throw Error(fmt::format("csv: row has {} fields, header has {}", current_, columns_));
    }
    out_ += "\r\n";
    current_ = 0;
}

}  // namespace cfeas
