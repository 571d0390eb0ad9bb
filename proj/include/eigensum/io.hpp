#pragma once

#include <string>
#include <vector>

#include <nlohmann/json_fwd.hpp>

namespace eigensum::io {

/// Atomic file write: temp file in the target directory, then rename.
void write_file_atomic(const std::string& path, const std::string& content);

/// RFC-4180 CSV: header row, CRLF line endings, fields quoted when needed.
class Csv {
public:
    explicit Csv(std::vector<std::string> header);
    void add_row(const std::vector<std::string>& fields);
    std::string str() const;

    static std::string num(double v);

private:
    std::size_t columns_;
    std::string body_;
};

/// JSON serialized with a stable field order and a trailing newline.
std::string dump_json(const nlohmann::json& j);

}  // namespace eigensum::io
