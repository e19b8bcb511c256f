#include "freearr/catalog.hpp"

#include "freearr/errors.hpp"

#include <algorithm>

namespace freearr {

bool Catalog::add(CatalogEntry entry) {
    if (entry.hash.empty()) entry.hash = arrangement_hash(entry.arrangement);
    if (by_hash_.count(entry.hash)) return false;
    by_hash_.emplace(entry.hash, entries_.size());
    entries_.push_back(std::move(entry));
    return true;
}

std::map<CellKey, std::vector<std::size_t>> Catalog::cells() const {
    std::map<CellKey, std::vector<std::size_t>> out;
    for (std::size_t i = 0; i < entries_.size(); ++i) {
        const auto& e = entries_[i];
        out[{e.n(), e.certificate.d1, e.certificate.d2}].push_back(i);
    }
    return out;
}

Json Catalog::index_json() const {
    Json cells_json = Json::object();
    for (const auto& [key, indices] : cells()) {
        const auto& [n, d1, d2] = key;
        Json hashes = Json::array();
        for (std::size_t i : indices) hashes.push_back(entries_[i].hash);
        cells_json[std::to_string(n) + "," + std::to_string(d1) + "," + std::to_string(d2)] = std::move(hashes);
    }
    Json out;
    out["entries"] = entries_.size();
    out["cells"] = std::move(cells_json);
    return out;
}

void Catalog::save(const std::filesystem::path& dir) const {
    std::filesystem::create_directories(dir / "entries");
    for (const auto& entry : entries_) write_json_file(catalog_entry_to_json(entry), dir / "entries" / (entry.hash + ".json"));
    write_json_file(index_json(), dir / "index.json");
}

Catalog Catalog::load(const std::filesystem::path& dir) {
    Catalog out;
    const auto entries_dir = dir / "entries";
    if (!std::filesystem::exists(entries_dir)) return out;
    std::vector<std::filesystem::path> files;
    for (const auto& item : std::filesystem::directory_iterator(entries_dir)) {
        if (item.path().extension() == ".json") files.push_back(item.path());
    }
    std::sort(files.begin(), files.end());
    for (const auto& file : files) out.add(catalog_entry_from_json(read_json_file(file)));
    return out;
}

Json catalog_entry_to_json(const CatalogEntry& entry) {
    Json provenance;
    provenance["source"] = entry.source;
    provenance["seed_hash"] = entry.seed_hash.empty() ? Json(nullptr) : Json(entry.seed_hash);
    provenance["delta_b2_target"] = entry.delta_b2_target ? Json(*entry.delta_b2_target) : Json(nullptr);
    provenance["saito"] = entry.saito ? Json(*entry.saito) : Json(nullptr);

    Json out;
    out["hash"] = entry.hash;
    out["n"] = entry.n();
    out["exponents"] = {entry.certificate.d1, entry.certificate.d2};
    out["arrangement"] = arrangement_to_json(entry.arrangement);
    out["certificate"] = certificate_to_json(entry.certificate);
    out["provenance"] = std::move(provenance);
    return out;
}

CatalogEntry catalog_entry_from_json(const Json& doc) {
    try {
        Arrangement arrangement = arrangement_from_json(doc.at("arrangement"));
        CatalogEntry entry{std::move(arrangement), certificate_from_json(doc.at("certificate")), "", "", "", {}, {}};
        entry.hash = arrangement_hash(entry.arrangement);
        if (doc.contains("hash") && doc.at("hash").get<std::string>() != entry.hash) {
            throw ParseError("catalog entry hash does not match its arrangement");
        }
        const Json& prov = doc.at("provenance");
        entry.source = prov.value("source", "");
        if (prov.contains("seed_hash") && !prov.at("seed_hash").is_null()) entry.seed_hash = prov.at("seed_hash").get<std::string>();
        if (prov.contains("delta_b2_target") && !prov.at("delta_b2_target").is_null()) {
            entry.delta_b2_target = prov.at("delta_b2_target").get<long>();
        }
        if (prov.contains("saito") && !prov.at("saito").is_null()) entry.saito = prov.at("saito").get<double>();
        return entry;
    } catch (const nlohmann::json::exception& e) {
        throw ParseError(std::string("bad catalog entry: ") + e.what());
    }
}

}  // namespace freearr
