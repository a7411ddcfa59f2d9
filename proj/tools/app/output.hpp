#pragma once

#include <filesystem>
#include <string>
#include <vector>

#include "config.hpp"

namespace syndyn::app {

/// Shortest round-trip decimal; "nan", "inf", "-inf" for non-finite values.
std::string format_number(double v);

struct Table {
    std::vector<std::string> header;
    std::vector<std::vector<std::string>> rows;

    void add(std::vector<std::string> row);
    /// RFC 4180 with CRLF line ends.
    std::string csv() const;
};

struct Series {
    std::string name;
    std::vector<double> x;
    std::vector<double> y;
};

struct LineChart {
    std::string title;
    std::string x_label;
    std::string y_label;
    bool log_x = false;
    std::vector<Series> series;

    std::string svg() const;
};

/// Git blob SHA-1 ("blob <size>\0" + content), lowercase hex.
std::string git_blob_sha1(const std::string &content);

/// Writes a file by temp-file and rename. Throws IoError.
void write_atomic(const std::filesystem::path &path, const std::string &content);

struct OutputFile {
    std::string name;
    std::string content;
};

/// Creates <root>/<12 hex>/ keyed on the canonical input, writes every file and
/// then manifest.json. Returns the run directory.
std::filesystem::path write_run(const std::filesystem::path &root, const nlohmann::json &inputs,
                                const std::vector<OutputFile> &files, const std::string &version);

}  // namespace syndyn::app
