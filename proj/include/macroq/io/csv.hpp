#pragma once

#include <charconv>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <optional>
#include <sstream>
#include <string>
#include <string_view>
#include <system_error>
#include <vector>

namespace macroq::io {

/// Shortest decimal representation that parses back to the same double.
inline std::string format_double(double v) {
    if (std::isnan(v)) {
        return "nan";
    }
    if (std::isinf(v)) {
        return v > 0 ? "inf" : "-inf";
    }
    char buf[64];
    const auto res = std::to_chars(buf, buf + sizeof buf, v);
    return std::string(buf, res.ptr);
}

/// Infinite (nullopt) values print as "inf".
inline std::string format_optional(const std::optional<double>& v) {
    return v ? format_double(*v) : std::string("inf");
}

inline std::string csv_escape(std::string_view field) {
    if (field.find_first_of(",\"\n") == std::string_view::npos) {
        return std::string(field);
    }
    std::string out = "\"";
    for (char c : field) {
        if (c == '"') {
            out += '"';
        }
        out += c;
    }
    out += '"';
    return out;
}

class CsvWriter {
public:
    void row(const std::vector<std::string>& fields) {
        for (std::size_t i = 0; i < fields.size(); ++i) {
            if (i != 0) {
                buffer_ << ',';
            }
            buffer_ << csv_escape(fields[i]);
        }
        buffer_ << '\n';
    }

    std::string str() const { return buffer_.str(); }

private:
    std::ostringstream buffer_;
};

/// Writes to a sibling temporary file and renames it over the target.
inline void write_file_atomic(const std::filesystem::path& path, std::string_view contents) {
    auto tmp = path;
    tmp += ".tmp";
    {
        std::ofstream f(tmp, std::ios::binary | std::ios::trunc);
        if (!f) {
            throw std::system_error(std::make_error_code(std::errc::io_error), "cannot write " + tmp.string());
        }
        f.write(contents.data(), static_cast<std::streamsize>(contents.size()));
        if (!f) {
            throw std::system_error(std::make_error_code(std::errc::io_error), "write failed: " + tmp.string());
        }
    }
    std::filesystem::rename(tmp, path);
}

} // namespace macroq::io
