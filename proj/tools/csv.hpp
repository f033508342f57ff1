#pragma once
// RFC-4180 output: CRLF line ends, quoting only when needed, numbers in the
// shortest round-trip form (locale independent).

#include <charconv>
#include <optional>
#include <ostream>
#include <string>
#include <vector>

namespace igsrelay::cli {

inline std::string csv_field(const std::string& s) {
    if (s.find_first_of(",\"\r\n") == std::string::npos) {
        return s;
    }
    std::string q = "\"";
    for (char ch : s) {
        if (ch == '"') {
            q += '"';
        }
        q += ch;
    }
    return q + '"';
}

inline std::string csv_number(double v) {
    char buf[64];
    const auto res = std::to_chars(buf, buf + sizeof buf, v);
    return std::string(buf, res.ptr);
}

/// Empty cell when absent.
inline std::string csv_number(const std::optional<double>& v) { return v ? csv_number(*v) : std::string(); }

inline void csv_row(std::ostream& os, const std::vector<std::string>& cells) {
    for (std::size_t i = 0; i < cells.size(); ++i) {
        if (i) {
            os << ',';
        }
        os << csv_field(cells[i]);
    }
    os << "\r\n";
}

} // namespace igsrelay::cli
