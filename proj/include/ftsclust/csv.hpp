#pragma once

#include <filesystem>
#include <optional>
#include <string>
#include <vector>

#include "ftsclust/fts.hpp"

namespace ftsclust {

// Curves-as-rows CSV, no header unless asked. The grid is implicit: p equally
// spaced points on [0, 1].
FunctionalTimeSeries load_csv(const std::filesystem::path& path, bool header = false);
void save_csv(const FunctionalTimeSeries& x, const std::filesystem::path& path,
              bool header = false);

struct ManifestEntry {
    std::string id;
    std::filesystem::path path;  // resolved against the manifest's directory
    std::optional<std::string> label;
};

struct Manifest {
    std::vector<ManifestEntry> series;
};

Manifest load_manifest(const std::filesystem::path& path);
void save_manifest(const Manifest& manifest, const std::filesystem::path& path);

struct Collection {
    std::vector<std::string> ids;
    std::vector<FunctionalTimeSeries> series;
    std::vector<std::optional<std::string>> labels;
};

// Loads every series a manifest names. Grids may differ in size (lengths too);
// consumers that need a shared grid check for themselves.
Collection load_collection(const std::filesystem::path& manifest_path, bool header = false);

}  // namespace ftsclust
