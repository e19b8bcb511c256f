#pragma once

#include "freearr/arrangement.hpp"
#include "freearr/io.hpp"
#include "freearr/verify.hpp"

#include <filesystem>
#include <map>
#include <optional>
#include <string>
#include <tuple>
#include <unordered_map>
#include <vector>

namespace freearr {

struct CatalogEntry {
    Arrangement arrangement;
    FreenessCertificate certificate;
    std::string hash;
    std::string seed_hash;  // empty for seeds and constructions
    std::string source;     // "seed", "two-pencil", "point-pairs", "pool", "multi-point", "beam"
    std::optional<long> delta_b2_target;
    std::optional<double> saito;

    int n() const { return static_cast<int>(arrangement.size()); }
};

using CellKey = std::tuple<int, int, int>;  // (n, d1, d2)

/// Certified arrangements deduplicated by exact line-set hash, in insertion order.
class Catalog {
public:
    /// False (and no change) if an arrangement with the same hash is already present.
    bool add(CatalogEntry entry);
    bool contains(const std::string& hash) const { return by_hash_.count(hash) != 0; }

    const std::vector<CatalogEntry>& entries() const noexcept { return entries_; }
    std::size_t size() const noexcept { return entries_.size(); }
    bool empty() const noexcept { return entries_.empty(); }
    std::map<CellKey, std::vector<std::size_t>> cells() const;

    /// One JSON file per entry under dir/entries/, plus dir/index.json keyed "n,d1,d2".
    void save(const std::filesystem::path& dir) const;
    static Catalog load(const std::filesystem::path& dir);

    Json index_json() const;

private:
    std::vector<CatalogEntry> entries_;
    std::unordered_map<std::string, std::size_t> by_hash_;
};

Json catalog_entry_to_json(const CatalogEntry& entry);
CatalogEntry catalog_entry_from_json(const Json& doc);

}  // namespace freearr
