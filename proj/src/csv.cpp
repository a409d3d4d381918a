#include "ftsclust/csv.hpp"

#include <charconv>
#include <cmath>
#include <cstdlib>
#include <cstdio>
#include <fstream>
#include <nlohmann/json.hpp>
#include <string>
#include <system_error>

#include "ftsclust/errors.hpp"

namespace ftsclust {

namespace {

double parse_field(const std::string& field, const std::filesystem::path& path,
                   std::size_t row, std::size_t col) {
    const char* begin = field.data();
    const char* end = begin + field.size();
    while (begin != end && (*begin == ' ' || *begin == '\t')) ++begin;
    while (end != begin && (*(end - 1) == ' ' || *(end - 1) == '\t' || *(end - 1) == '\r')) --end;
    double value = 0.0;
    auto [ptr, ec] = std::from_chars(begin, end, value);
    if (ec == std::errc::result_out_of_range && ptr == end && begin != end) {
        // libstdc++ flags subnormal results as out of range; strtod returns
        // the correctly rounded value, so accept it when it stays finite.
        const std::string text(begin, end);
        char* tail = nullptr;
        const double v = std::strtod(text.c_str(), &tail);
        if (tail == text.c_str() + text.size() && std::isfinite(v)) return v;
        throw ParseError(path.string() + ": row " + std::to_string(row) + ", column " +
                         std::to_string(col) + ": '" + field + "' is outside double range");
    }
    if (ec != std::errc() || ptr != end || begin == end) {
        throw ParseError(path.string() + ": row " + std::to_string(row) + ", column " +
                         std::to_string(col) + ": cannot parse '" + field + "' as a number");
    }
    return value;
}

}  // namespace

FunctionalTimeSeries load_csv(const std::filesystem::path& path, bool header) {
    std::ifstream in(path);
    if (!in) throw ParseError("cannot open " + path.string());
    std::vector<std::vector<double>> rows;
    std::string line;
    std::size_t lineno = 0;
    std::size_t width = 0;
    while (std::getline(in, line)) {
        ++lineno;
        if (header && lineno == 1) continue;
        if (line.empty() || line == "\r") continue;
        std::vector<double> row;
        std::size_t start = 0;
        std::size_t col = 0;
        while (true) {
            std::size_t comma = line.find(',', start);
            std::string field = line.substr(start, comma == std::string::npos
                                                       ? std::string::npos
                                                       : comma - start);
            ++col;
            row.push_back(parse_field(field, path, lineno, col));
            if (comma == std::string::npos) break;
            start = comma + 1;
        }
        if (width == 0) {
            width = row.size();
        } else if (row.size() != width) {
            throw ParseError(path.string() + ": row " + std::to_string(lineno) + " has " +
                             std::to_string(row.size()) + " columns, expected " +
                             std::to_string(width));
        }
        rows.push_back(std::move(row));
    }
    if (rows.empty()) throw ParseError(path.string() + ": no data rows");
    if (width < 2) throw ParseError(path.string() + ": need at least 2 columns per curve");
    Eigen::MatrixXd values(static_cast<Eigen::Index>(rows.size()),
                           static_cast<Eigen::Index>(width));
    for (std::size_t t = 0; t < rows.size(); ++t) {
        for (std::size_t j = 0; j < width; ++j) {
            values(static_cast<Eigen::Index>(t), static_cast<Eigen::Index>(j)) = rows[t][j];
        }
    }
    return FunctionalTimeSeries(std::move(values), Grid::uniform(width));
}

void save_csv(const FunctionalTimeSeries& x, const std::filesystem::path& path, bool header) {
    std::ofstream out(path);
    if (!out) throw Error("cannot write " + path.string());
    char buf[40];
    if (header) {
        for (std::size_t j = 0; j < x.grid_size(); ++j) {
            if (j) out << ',';
            out << 'u' << j;
        }
        out << '\n';
    }
    for (Eigen::Index t = 0; t < x.values().rows(); ++t) {
        for (Eigen::Index j = 0; j < x.values().cols(); ++j) {
            if (j) out << ',';
            std::snprintf(buf, sizeof buf, "%.17g", x.values()(t, j));
            out << buf;
        }
        out << '\n';
    }
    if (!out) throw Error("write failed for " + path.string());
}

Manifest load_manifest(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) throw ParseError("cannot open " + path.string());
    nlohmann::json doc;
    try {
        doc = nlohmann::json::parse(in);
    } catch (const nlohmann::json::parse_error& e) {
        throw ParseError(path.string() + ": " + e.what());
    }
    if (!doc.is_object() || !doc.contains("series") || !doc["series"].is_array()) {
        throw ParseError(path.string() + ": expected an object with a 'series' array");
    }
    Manifest manifest;
    const auto base = path.has_parent_path() ? path.parent_path() : std::filesystem::path(".");
    for (const auto& item : doc["series"]) {
        if (!item.is_object() || !item.contains("id") || !item.contains("path")) {
            throw ParseError(path.string() + ": each series entry needs 'id' and 'path'");
        }
        ManifestEntry entry;
        entry.id = item["id"].get<std::string>();
        std::filesystem::path rel = item["path"].get<std::string>();
        entry.path = rel.is_absolute() ? rel : base / rel;
        if (item.contains("label") && !item["label"].is_null()) {
            entry.label = item["label"].is_string() ? item["label"].get<std::string>()
                                                    : item["label"].dump();
        }
        manifest.series.push_back(std::move(entry));
    }
    return manifest;
}

void save_manifest(const Manifest& manifest, const std::filesystem::path& path) {
    nlohmann::ordered_json doc;
    doc["series"] = nlohmann::ordered_json::array();
    const auto base = path.has_parent_path() ? path.parent_path() : std::filesystem::path(".");
    for (const auto& entry : manifest.series) {
        nlohmann::ordered_json item;
        item["id"] = entry.id;
        std::error_code ec;
        auto rel = std::filesystem::relative(entry.path, base, ec);
        item["path"] = (ec || rel.empty()) ? entry.path.string() : rel.string();
        if (entry.label) item["label"] = *entry.label;
        doc["series"].push_back(std::move(item));
    }
    std::ofstream out(path);
    if (!out) throw Error("cannot write " + path.string());
    out << doc.dump(2) << '\n';
}

Collection load_collection(const std::filesystem::path& manifest_path, bool header) {
    Manifest manifest = load_manifest(manifest_path);
    Collection collection;
    for (const auto& entry : manifest.series) {
        collection.ids.push_back(entry.id);
        collection.series.push_back(load_csv(entry.path, header));
        collection.labels.push_back(entry.label);
    }
    if (collection.series.empty()) {
        throw ParseError(manifest_path.string() + ": manifest names no series");
    }
    return collection;
}

}  // namespace ftsclust
