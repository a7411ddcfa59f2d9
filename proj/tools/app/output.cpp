#include "output.hpp"

#include <openssl/evp.h>

#include <algorithm>
#include <array>
#include <charconv>
#include <chrono>
#include <cmath>
#include <ctime>
#include <fstream>
#include <sstream>

namespace syndyn::app {

std::string format_number(double v) {
    if (std::isnan(v)) {
        return "nan";
    }
    if (std::isinf(v)) {
        return v > 0 ? "inf" : "-inf";
    }
    std::array<char, 32> buf{};
    auto res = std::to_chars(buf.data(), buf.data() + buf.size(), v);
    return std::string(buf.data(), res.ptr);
}

void Table::add(std::vector<std::string> row) {
    if (row.size() != header.size()) {
        throw std::logic_error("table row width mismatch");
    }
    rows.push_back(std::move(row));
}

namespace {

std::string csv_field(const std::string &s) {
    if (s.find_first_of(",\"\r\n") == std::string::npos) {
        return s;
    }
    std::string out = "\"";
    for (char c : s) {
        if (c == '"') {
            out += '"';
        }
        out += c;
    }
    return out + "\"";
}

std::string xml_escape(const std::string &s) {
    std::string out;
    for (char c : s) {
        switch (c) {
            case '<': out += "&lt;"; break;
            case '>': out += "&gt;"; break;
            case '&': out += "&amp;"; break;
            case '"': out += "&quot;"; break;
            default: out += c;
        }
    }
    return out;
}

std::string fixed(double v, int digits = 2) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.*f", digits, v);
    return buf;
}

std::string tick(double v) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.4g", v);
    return buf;
}

}  // namespace

std::string Table::csv() const {
    std::string out;
    auto line = [&](const std::vector<std::string> &cells) {
        for (size_t i = 0; i < cells.size(); i++) {
            out += (i ? "," : "") + csv_field(cells[i]);
        }
        out += "\r\n";
    };
    line(header);
    for (const auto &r : rows) {
        line(r);
    }
    return out;
}

std::string LineChart::svg() const {
    const double W = 640, H = 420, L = 70, R = 150, T = 40, B = 50;
    double x0 = INFINITY, x1 = -INFINITY, y0 = INFINITY, y1 = -INFINITY;
    auto fx = [&](double x) { return log_x ? std::log10(x) : x; };
    for (const auto &s : series) {
        for (size_t i = 0; i < s.x.size(); i++) {
            if (!std::isfinite(s.y[i]) || (log_x && s.x[i] <= 0)) {
                continue;
            }
            x0 = std::min(x0, fx(s.x[i]));
            x1 = std::max(x1, fx(s.x[i]));
            y0 = std::min(y0, s.y[i]);
            y1 = std::max(y1, s.y[i]);
        }
    }
    if (!(x0 < x1)) {
        x0 = std::isfinite(x0) ? x0 - 1 : 0;
        x1 = x0 + 2;
    }
    if (!(y0 < y1)) {
        y0 = std::isfinite(y0) ? y0 - 1 : 0;
        y1 = y0 + 2;
    }
    auto px = [&](double x) { return L + (fx(x) - x0) / (x1 - x0) * (W - L - R); };
    auto py = [&](double y) { return H - B - (y - y0) / (y1 - y0) * (H - T - B); };

    static const char *colors[] = {"#1f77b4", "#d62728", "#2ca02c", "#ff7f0e", "#9467bd", "#8c564b", "#17becf"};
    std::ostringstream o;
    o << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << W << "\" height=\"" << H << "\" font-family=\"sans-serif\" font-size=\"12\">\n";
    o << "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";
    o << "<text x=\"" << W / 2 << "\" y=\"20\" text-anchor=\"middle\" font-size=\"14\">" << xml_escape(title) << "</text>\n";
    o << "<rect x=\"" << L << "\" y=\"" << T << "\" width=\"" << W - L - R << "\" height=\"" << H - T - B
      << "\" fill=\"none\" stroke=\"black\"/>\n";
    for (int k = 0; k <= 4; k++) {
        double xv = x0 + (x1 - x0) * k / 4, yv = y0 + (y1 - y0) * k / 4;
        double xp = L + (W - L - R) * k / 4, yp = H - B - (H - T - B) * k / 4;
        o << "<text x=\"" << fixed(xp) << "\" y=\"" << H - B + 16 << "\" text-anchor=\"middle\">"
          << tick(log_x ? std::pow(10.0, xv) : xv) << "</text>\n";
        o << "<text x=\"" << L - 6 << "\" y=\"" << fixed(yp + 4) << "\" text-anchor=\"end\">" << tick(yv) << "</text>\n";
    }
    o << "<text x=\"" << (L + W - R) / 2 << "\" y=\"" << H - 12 << "\" text-anchor=\"middle\">" << xml_escape(x_label)
      << "</text>\n";
    o << "<text x=\"16\" y=\"" << (T + H - B) / 2 << "\" text-anchor=\"middle\" transform=\"rotate(-90 16 "
      << (T + H - B) / 2 << ")\">" << xml_escape(y_label) << "</text>\n";
    for (size_t k = 0; k < series.size(); k++) {
        const auto &s = series[k];
        const char *c = colors[k % 7];
        o << "<polyline fill=\"none\" stroke=\"" << c << "\" stroke-width=\"1.5\" points=\"";
        bool first = true;
        for (size_t i = 0; i < s.x.size(); i++) {
            if (!std::isfinite(s.y[i]) || (log_x && s.x[i] <= 0)) {
                continue;
            }
            o << (first ? "" : " ") << fixed(px(s.x[i])) << "," << fixed(py(s.y[i]));
            first = false;
        }
        o << "\"/>\n";
        double ly = T + 14 + 18 * double(k);
        o << "<line x1=\"" << W - R + 10 << "\" y1=\"" << ly - 4 << "\" x2=\"" << W - R + 30 << "\" y2=\"" << ly - 4
          << "\" stroke=\"" << c << "\" stroke-width=\"2\"/>\n";
        o << "<text x=\"" << W - R + 34 << "\" y=\"" << ly << "\">" << xml_escape(s.name) << "</text>\n";
    }
    o << "</svg>\n";
    return o.str();
}

std::string git_blob_sha1(const std::string &content) {
    std::string header = "blob " + std::to_string(content.size());
    header.push_back('\0');
    unsigned char md[EVP_MAX_MD_SIZE];
    unsigned int len = 0;
    EVP_MD_CTX *ctx = EVP_MD_CTX_new();
    if (!ctx || EVP_DigestInit_ex(ctx, EVP_sha1(), nullptr) != 1 ||
        EVP_DigestUpdate(ctx, header.data(), header.size()) != 1 ||
        EVP_DigestUpdate(ctx, content.data(), content.size()) != 1 || EVP_DigestFinal_ex(ctx, md, &len) != 1) {
        EVP_MD_CTX_free(ctx);
        throw std::runtime_error("SHA-1 digest failed");
    }
    EVP_MD_CTX_free(ctx);
    static const char *hex = "0123456789abcdef";
    std::string out;
    for (unsigned i = 0; i < len; i++) {
        out += hex[md[i] >> 4];
        out += hex[md[i] & 15];
    }
    return out;
}

void write_atomic(const std::filesystem::path &path, const std::string &content) {
    auto tmp = path;
    tmp += ".tmp";
    {
        std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
        if (!out) {
            throw IoError("cannot open " + tmp.string() + " for writing");
        }
        out << content;
        out.flush();
        if (!out) {
            throw IoError("write failed for " + tmp.string());
        }
    }
    std::error_code ec;
    std::filesystem::rename(tmp, path, ec);
    if (ec) {
        throw IoError("cannot rename " + tmp.string() + ": " + ec.message());
    }
}

std::filesystem::path write_run(const std::filesystem::path &root, const nlohmann::json &inputs,
                                const std::vector<OutputFile> &files, const std::string &version) {
    std::string canonical = inputs.dump();
    std::string hash = git_blob_sha1(canonical);
    auto dir = root / hash.substr(0, 12);
    std::error_code ec;
    std::filesystem::create_directories(dir, ec);
    if (ec) {
        throw IoError("cannot create " + dir.string() + ": " + ec.message());
    }
    nlohmann::json listing = nlohmann::json::array();
    for (const auto &f : files) {
        write_atomic(dir / f.name, f.content);
        listing.push_back({{"name", f.name}, {"bytes", f.content.size()}, {"sha1", git_blob_sha1(f.content)}});
    }
    auto now = std::chrono::system_clock::to_time_t(std::chrono::system_clock::now());
    char stamp[32];
    std::tm tm{};
    gmtime_r(&now, &tm);
    std::strftime(stamp, sizeof stamp, "%Y-%m-%dT%H:%M:%SZ", &tm);
    nlohmann::json manifest = {{"tool", "syndyn"},       {"version", version}, {"timestamp", stamp},
                               {"input_hash", hash},     {"inputs", inputs},   {"files", listing}};
    write_atomic(dir / "manifest.json", manifest.dump(2) + "\n");
    return dir;
}

}  // namespace syndyn::app
