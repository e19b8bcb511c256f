#include "cli.hpp"

#include "freearr/freearr.hpp"

#include <CLI11.hpp>

#include <algorithm>
#include <chrono>
#include <cmath>
#include <filesystem>
#include <iostream>
#include <optional>
#include <sstream>

namespace freearr::cli {

namespace fs = std::filesystem;

namespace {

// Raised for bad flag values discovered after CLI11 has parsed the command line.
class UsageError : public Error {
public:
    using Error::Error;
};

// Domain failure that still has a JSON payload to print.
struct Outcome {
    Json result;
    int code = kSuccess;
};

ExponentPair parse_exponents(const std::string& text) {
    std::istringstream in(text);
    int d1 = 0, d2 = 0;
    char comma = 0;
    if (!(in >> d1 >> comma >> d2) || comma != ',' || !in.eof()) {
        throw UsageError("--exponents expects d1,d2, got \"" + text + "\"");
    }
    if (d1 < 0 || d2 < 0) throw UsageError("exponents must be nonnegative");
    return {d1, d2};
}

unsigned parse_sources(const std::string& text) {
    unsigned mask = 0;
    std::istringstream in(text);
    std::string item;
    while (std::getline(in, item, ',')) {
        if (item == "point-pairs") mask |= kPointPairs;
        else if (item == "pool") mask |= kPool;
        else if (item == "multi-point") mask |= kMultiPoint;
        else if (item == "all") mask |= kAllSources;
        else throw UsageError("unknown candidate source \"" + item + "\"");
    }
    return mask;
}

// Everything a subcommand may read from flags or from --config. Flags win over the file.
struct Flags {
    std::optional<std::string> config;
    std::vector<std::string> exponents;
    std::optional<int> als_iters, als_restarts;
    std::optional<std::uint64_t> seed;
    std::optional<unsigned> threads;
    std::optional<int> pool_bound;
    std::optional<std::size_t> beam;
    std::optional<double> prefilter;
    std::optional<long> delta_b2;
    std::optional<std::string> sources;
    std::optional<std::string> step;
    std::optional<std::string> kernel;
    std::optional<std::string> out;
    bool no_als_hint = false;
    bool audit = false;
    std::optional<int> n_max;
    std::optional<std::size_t> max_seeds;
};

struct Settings {
    ALSConfig als;
    RewardWeights weights;
    ScoreConfig scores;
    ExtensionConfig extension;
    int beam_pool_bound = 1;
    std::size_t beam_width = 4;
    int n_max = 9;
    std::size_t max_seeds = 16;
    bool als_hint = true;
    unsigned threads = 0;
};

KernelMethod parse_kernel(const std::string& name) {
    if (name == "exact") return KernelMethod::exact;
    if (name == "svd") return KernelMethod::svd;
    throw UsageError("unknown kernel method \"" + name + "\" (exact or svd)");
}

HalfStep parse_step(const std::string& name) {
    if (name == "angular") return HalfStep::angular;
    if (name == "tls") return HalfStep::total_least_squares;
    throw UsageError("unknown ALS step \"" + name + "\" (angular or tls)");
}

void apply_config_file(const fs::path& path, Settings& s) {
    const Json doc = read_json_file(path);
    try {
        if (doc.contains("als")) {
            const Json& a = doc.at("als");
            s.als.iterations = a.value("iterations", s.als.iterations);
            s.als.restarts = a.value("restarts", s.als.restarts);
            s.als.seed = a.value("seed", s.als.seed);
            s.als.zero_guard = a.value("zero_guard", s.als.zero_guard);
            if (a.contains("step")) s.als.step = parse_step(a.at("step").get<std::string>());
            if (a.contains("kernel")) s.als.kernel = parse_kernel(a.at("kernel").get<std::string>());
        }
        if (doc.contains("weights")) {
            const Json& w = doc.at("weights");
            s.weights.comb = w.value("comb", s.weights.comb);
            s.weights.alg = w.value("alg", s.weights.alg);
            s.weights.feas = w.value("feas", s.weights.feas);
            s.weights.b2 = w.value("b2", s.weights.b2);
            s.weights.intersect = w.value("intersect", s.weights.intersect);
            s.weights.pen = w.value("pen", s.weights.pen);
            s.weights.mult = w.value("mult", s.weights.mult);
            s.weights.free = w.value("free", s.weights.free);
        }
        if (doc.contains("delta_max")) s.scores.delta_max = doc.at("delta_max").get<double>();
        s.scores.exact_cutoff = doc.value("exact_cutoff", s.scores.exact_cutoff);
        s.beam_pool_bound = doc.value("beam_pool_bound", s.beam_pool_bound);
        s.beam_width = doc.value("beam_width", s.beam_width);
        s.extension.pool_bound = doc.value("pool_bound", s.extension.pool_bound);
        s.extension.prefilter_threshold = doc.value("prefilter_threshold", s.extension.prefilter_threshold);
        if (doc.contains("sources")) s.extension.sources = parse_sources(doc.at("sources").get<std::string>());
        s.n_max = doc.value("n_max", s.n_max);
        s.max_seeds = doc.value("max_seeds_per_level", s.max_seeds);
        s.threads = doc.value("threads", s.threads);
    } catch (const nlohmann::json::exception& e) {
        throw ParseError(path.string() + ": " + e.what());
    }
}

Settings resolve(const Flags& f) {
    Settings s;
    if (f.config) apply_config_file(*f.config, s);
    if (f.als_iters) s.als.iterations = *f.als_iters;
    if (f.als_restarts) s.als.restarts = *f.als_restarts;
    if (f.seed) s.als.seed = *f.seed;
    if (f.step) s.als.step = parse_step(*f.step);
    if (f.kernel) s.als.kernel = parse_kernel(*f.kernel);
    if (f.threads) s.threads = *f.threads;
    if (f.pool_bound) {
        s.extension.pool_bound = *f.pool_bound;
        s.beam_pool_bound = *f.pool_bound;
    }
    if (f.beam) s.beam_width = *f.beam;
    if (f.prefilter) s.extension.prefilter_threshold = *f.prefilter;
    if (f.delta_b2) s.extension.delta_b2_target = *f.delta_b2;
    if (f.sources) s.extension.sources = parse_sources(*f.sources);
    if (f.n_max) s.n_max = *f.n_max;
    if (f.max_seeds) s.max_seeds = *f.max_seeds;
    s.als_hint = !f.no_als_hint;

    s.als.threads = s.threads;
    s.scores.als = s.als;
    s.extension.als = s.als;
    s.extension.threads = s.threads;
    s.extension.verify.als = s.als;
    s.extension.verify.als_hint = s.als_hint;
    s.extension.verify.threads = s.threads;
    if (s.threads) set_default_threads(s.threads);

    try {
        s.als.validate();
        s.weights.validate();
        s.scores.validate();
        s.extension.validate();
    } catch (const Error& e) {
        throw UsageError(e.what());
    }
    if (s.beam_width < 1) throw UsageError("--beam must be at least 1");
    return s;
}

VerifyOptions verify_options(const Settings& s) {
    VerifyOptions v;
    v.als = s.als;
    v.als_hint = s.als_hint;
    v.threads = s.threads;
    return v;
}

std::optional<ExponentPair> single_exponents(const Flags& f) {
    if (f.exponents.empty()) return std::nullopt;
    if (f.exponents.size() > 1) throw UsageError("--exponents given more than once");
    return parse_exponents(f.exponents.front());
}

Json lines_json(const Arrangement& a) { return arrangement_to_json(a).at("lines"); }

Json multiplicities_json(const LatticeSummary& s) {
    Json t = Json::object();
    for (const auto& [m, count] : s.t) t[std::to_string(m)] = count;
    return t;
}

Json timings_json(const SaitoTimings& t) {
    return {{"matrices", t.matrices_ms}, {"kernels", t.kernels_ms}, {"tensor", t.tensor_ms},
            {"als", t.als_ms},           {"total", t.total_ms}};
}

Json saito_json(const SaitoEvaluation& e) {
    Json out;
    out["exponents"] = {e.d1, e.d2};
    out["saito"] = e.loss();
    out["status"] = to_string(e.als.status);
    out["restart_losses"] = e.als.restart_losses;
    out["best_restart"] = e.als.best_restart;
    out["euler_flag"] = e.als.euler_flag;
    out["kernel_dimensions"] = {e.k1, e.k2};
    out["kernel_sources"] = {e.kernel_source1, e.kernel_source2};
    out["dense_tensor"] = e.dense_tensor;
    out["timings_ms"] = timings_json(e.timings);
    return out;
}

Json proof_json(const NotFreeProof& p) {
    return {{"exponents", {p.d1, p.d2}},
            {"kernel_dimensions", {p.k1, p.k2}},
            {"quotient_dimensions", {p.quotient1, p.quotient2}},
            {"pairs_checked", p.pairs_checked}};
}

Json catalog_summary(const Catalog& catalog) {
    Json entries = Json::array();
    for (const auto& e : catalog.entries()) {
        entries.push_back({{"hash", e.hash},
                           {"n", e.n()},
                           {"exponents", {e.certificate.d1, e.certificate.d2}},
                           {"source", e.source},
                           {"seed_hash", e.seed_hash.empty() ? Json(nullptr) : Json(e.seed_hash)},
                           {"lines", lines_json(e.arrangement)}});
    }
    Json out;
    out["index"] = catalog.index_json();
    out["entries"] = std::move(entries);
    return out;
}

std::vector<Arrangement> load_seed_paths(const std::vector<std::string>& paths) {
    std::vector<fs::path> files;
    for (const auto& p : paths) {
        if (fs::is_directory(p)) {
            std::vector<fs::path> inside;
            for (const auto& item : fs::directory_iterator(p)) {
                if (item.is_regular_file() && item.path().extension() == ".json") inside.push_back(item.path());
            }
            std::sort(inside.begin(), inside.end());
            files.insert(files.end(), inside.begin(), inside.end());
        } else {
            files.emplace_back(p);
        }
    }
    std::vector<Arrangement> out;
    for (const auto& file : files) out.push_back(load_arrangement(file));
    return out;
}


Outcome cmd_invariants(const Arrangement& a) {
    const LatticeSummary& s = a.summary();
    const long n = static_cast<long>(a.size());
    const ExponentCheck check = candidate_exponents(a);
    const CharPoly chi = characteristic_polynomial(a);
    Json r;
    r["n"] = n;
    r["lines"] = lines_json(a);
    r["points"] = s.points.size();
    r["t"] = multiplicities_json(s);
    r["b2"] = s.b2;
    r["discriminant"] = check.discriminant;
    r["exponent_status"] = to_string(check.status);
    r["exponents"] = check ? Json{check.exponents->d1, check.exponents->d2} : Json(nullptr);
    r["tjurina"] = tjurina(a);
    r["characteristic_polynomial"] = chi.cubic;
    r["reduced_polynomial"] = chi.quadratic;
    return {r, kSuccess};
}

Outcome cmd_saito(const Arrangement& a, const std::optional<ExponentPair>& exps, const Settings& s) {
    try {
        const SaitoEvaluation e = exps ? saito_functional(a, exps->first, exps->second, s.als) : saito_functional(a, s.als);
        return {saito_json(e), kSuccess};
    } catch (const NoCandidateExponents& e) {
        const ExponentCheck check = candidate_exponents(a);
        return {{{"reason", e.what()}, {"discriminant", check.discriminant}, {"exponent_status", to_string(check.status)}},
                kDomainFailure};
    }
}

Outcome cmd_verify(const Arrangement& a, const std::optional<ExponentPair>& exps, const Settings& s,
                   const std::optional<std::string>& out_dir) {
    const VerifyOptions options = verify_options(s);
    const VerificationOutcome v = exps ? verify_free(a, exps->first, exps->second, options) : verify_free(a, options);
    Json r;
    r["status"] = to_string(v.status);
    if (!v.reason.empty()) r["reason"] = v.reason;
    if (v.certified()) {
        r["witness"] = v.witness;
        if (v.als_loss >= 0) r["als_loss"] = v.als_loss;
        const Json cert = certificate_to_json(*v.certificate);
        if (out_dir) {
            const fs::path path = fs::path(*out_dir) / (v.certificate->arrangement_hash + ".certificate.json");
            write_json_file(cert, path);
            r["certificate_file"] = path.string();
        }
        r["certificate"] = cert;
        return {r, kSuccess};
    }
    if (v.status == VerificationStatus::not_free_at_exponents) r["proof"] = proof_json(v.proof);
    return {r, kDomainFailure};
}

Outcome cmd_check(const Arrangement& a, const FreenessCertificate& cert) {
    const CertificateCheck c = check_certificate(a, cert);
    Json r;
    r["ok"] = c.ok;
    r["exponents"] = {cert.d1, cert.d2};
    if (!c.ok) r["failure"] = c.failure;
    return {r, c.ok ? kSuccess : kDomainFailure};
}

Outcome cmd_construct(int d1, int d2, const Settings& s, const std::optional<std::string>& out_dir) {
    if (d1 < 1 || d2 < d1) throw UsageError("construct needs 1 <= d1 <= d2");
    const Arrangement a = supersolvable_two_pencil(d1, d2);
    const VerificationOutcome v = verify_free(a, d1, d2, verify_options(s));
    Json r;
    r["n"] = a.size();
    r["exponents"] = {d1, d2};
    r["lines"] = lines_json(a);
    r["b2"] = a.summary().b2;
    r["status"] = to_string(v.status);
    if (!v.certified()) {
        r["reason"] = v.reason;
        return {r, kDomainFailure};
    }
    r["certificate"] = certificate_to_json(*v.certificate);
    if (out_dir) {
        Catalog catalog;
        catalog.add(CatalogEntry{a, *v.certificate, arrangement_hash(a), "", "two-pencil", {}, {}});
        catalog.save(*out_dir);
    }
    return {r, kSuccess};
}

Outcome cmd_extend(const Arrangement& seed, int d1p, int d2p, const Settings& s, bool audit,
                   const std::optional<std::string>& out_dir) {
    if (d1p + d2p != static_cast<int>(seed.size()) || d1p < 1 || d2p < 1) {
        throw UsageError("extension exponents must be positive with d1' + d2' = n(seed) = " + std::to_string(seed.size()));
    }
    const VerificationOutcome seed_check = verify_free(seed, verify_options(s));
    if (!seed_check.certified()) {
        Json r;
        r["reason"] = "seed does not certify: " + std::string(to_string(seed_check.status));
        if (!seed_check.reason.empty()) r["detail"] = seed_check.reason;
        return {r, kDomainFailure};
    }
    ExtensionConfig cfg = s.extension;
    cfg.audit_rejected = audit;
    const ExtensionReport report = bootstrap_extend(seed, d1p, d2p, cfg);

    Catalog catalog;
    for (const auto& d : report.discoveries) catalog.add(d);
    if (out_dir) catalog.save(*out_dir);

    Json r;
    r["seed_exponents"] = {seed_check.certificate->d1, seed_check.certificate->d2};
    r["target_exponents"] = {std::min(d1p, d2p), std::max(d1p, d2p)};
    r["delta_b2_target"] = report.delta_b2_target;
    r["candidates"] = report.candidates;
    r["survivors"] = report.survivors;
    r["discoveries"] = catalog_summary(catalog);
    r["findings"] = report.findings;
    return {r, kSuccess};
}

Outcome cmd_search(int n, const std::optional<ExponentPair>& exps, const Settings& s,
                   const std::optional<std::string>& out_dir) {
    if (n < 1) throw UsageError("search needs n >= 1");
    if (exps && exps->first + exps->second != n - 1) throw UsageError("target exponents must satisfy d1 + d2 = n - 1");
    BeamConfig cfg;
    cfg.n = n;
    cfg.targets = exps;
    cfg.weights = s.weights;
    cfg.scores = s.scores;
    cfg.pool_bound = s.beam_pool_bound;
    cfg.beam_width = s.beam_width;
    cfg.seed = s.als.seed;
    cfg.threads = s.threads;
    const std::vector<BeamEntry> beam = beam_search_build(cfg);

    Json entries = Json::array();
    Catalog catalog;
    for (const auto& e : beam) {
        Json j;
        j["hash"] = arrangement_hash(e.arrangement);
        j["lines"] = lines_json(e.arrangement);
        j["cumulative_reward"] = e.cumulative_reward;
        j["sigma_alg"] = e.alg.value;
        j["tier"] = e.alg.tier;
        j["status"] = to_string(e.status);
        Json totals = Json::array();
        for (const auto& step : e.trace) totals.push_back(step.total);
        j["step_rewards"] = std::move(totals);
        if (e.certificate) {
            j["exponents"] = {e.certificate->d1, e.certificate->d2};
            catalog.add(CatalogEntry{e.arrangement, *e.certificate, "", "", "beam", {}, e.alg.saito});
        }
        entries.push_back(std::move(j));
    }
    if (out_dir) catalog.save(*out_dir);
    Json r;
    r["n"] = n;
    r["targets"] = exps ? Json{exps->first, exps->second} : Json(nullptr);
    r["beam"] = std::move(entries);
    r["certified"] = catalog.size();
    return {r, kSuccess};
}

Outcome cmd_cascade(const std::vector<std::string>& paths, const std::vector<std::string>& exponent_texts,
                    const Settings& s, const std::optional<std::string>& out_dir) {
    CascadeConfig cfg;
    cfg.n_max = s.n_max;
    cfg.extension = s.extension;
    cfg.max_seeds_per_level = s.max_seeds;
    for (const auto& t : exponent_texts) cfg.targets.push_back(parse_exponents(t));
    const CascadeReport report = cascade(load_seed_paths(paths), cfg);
    if (out_dir) report.catalog.save(*out_dir);

    Json levels = Json::object();
    for (const auto& [n, count] : report.discoveries_per_level) levels[std::to_string(n)] = count;
    Json r;
    r["n_max"] = cfg.n_max;
    r["catalog"] = catalog_summary(report.catalog);
    r["discoveries_per_level"] = std::move(levels);
    r["findings"] = report.findings;
    return {r, kSuccess};
}

Outcome cmd_survey(const std::vector<std::string>& files, const std::optional<ExponentPair>& exps, const Settings& s) {
    Json rows = Json::array();
    int code = kSuccess;
    std::optional<std::map<int, long>> profile;
    bool same_profile = true;
    double lo = INFINITY, hi = -INFINITY;
    for (const auto& file : files) {
        const Arrangement a = load_arrangement(file);
        Json row;
        row["file"] = file;
        row["hash"] = arrangement_hash(a);
        row["n"] = a.size();
        row["t"] = multiplicities_json(a.summary());
        if (!profile) profile = a.summary().t;
        else same_profile = same_profile && *profile == a.summary().t;
        try {
            const SaitoEvaluation e =
                exps ? saito_functional(a, exps->first, exps->second, s.als) : saito_functional(a, s.als);
            row["exponents"] = {e.d1, e.d2};
            row["saito"] = e.loss();
            row["total_ms"] = e.timings.total_ms;
            lo = std::min(lo, e.loss());
            hi = std::max(hi, e.loss());
        } catch (const NoCandidateExponents& e) {
            row["error"] = e.what();
            code = kDomainFailure;
        } catch (const DegreeMismatch& e) {
            row["error"] = e.what();
            code = kDomainFailure;
        }
        rows.push_back(std::move(row));
    }
    Json r;
    r["rows"] = std::move(rows);
    r["same_profile"] = same_profile;
    r["saito_spread"] = hi >= lo ? Json(hi - lo) : Json(nullptr);
    return {r, code};
}

void add_als_flags(CLI::App* sub, Flags& f) {
    sub->add_option("--als-iters", f.als_iters, "ALS iterations per restart");
    sub->add_option("--als-restarts", f.als_restarts, "random restarts");
    sub->add_option("--als-step", f.step, "half-step rule: angular or tls");
    sub->add_option("--kernel", f.kernel, "null basis: exact (default) or svd");
}

void add_extension_flags(CLI::App* sub, Flags& f) {
    sub->add_option("--pool-bound", f.pool_bound, "max |coefficient| of pool lines");
    sub->add_option("--prefilter-threshold", f.prefilter, "discard candidates with a larger Saito functional");
    sub->add_option("--delta-b2", f.delta_b2, "required change of b2 (default: implied by the target exponents)");
    sub->add_option("--sources", f.sources, "comma list of point-pairs, pool, multi-point, all");
    sub->add_flag("--audit", f.audit, "also verify prefilter rejects and report any that certify");
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
    CLI::App app{"Invariants, Saito functional, exact freeness certificates and search for plane line arrangements",
                 "freearr"};
    app.require_subcommand(1);
    Flags f;
    app.add_option("--config", f.config, "JSON file with weights, pool bound, thresholds and beam width")
        ->check(CLI::ExistingFile);
    app.add_option("--seed", f.seed, "seed for every random choice");
    app.add_option("--threads", f.threads, "worker cap (0 = hardware concurrency)");
    app.add_option("--out", f.out, "output directory");
    app.fallthrough();

    std::string file, second_file;
    std::vector<std::string> files;
    int d1 = 0, d2 = 0, n = 0, degree = 0;

    auto* inv = app.add_subcommand("invariants", "intersection lattice and candidate exponents");
    inv->add_option("file", file)->required();

    auto* saito = app.add_subcommand("saito", "Saito functional at the candidate or given exponents");
    saito->add_option("file", file)->required();
    saito->add_option("--exponents", f.exponents, "d1,d2");
    add_als_flags(saito, f);

    auto* verify = app.add_subcommand("verify", "exact freeness certificate");
    verify->add_option("file", file)->required();
    verify->add_option("--exponents", f.exponents, "d1,d2");
    verify->add_flag("--no-als-hint", f.no_als_hint, "scan kernel pairs without the ALS witness");
    add_als_flags(verify, f);

    auto* check = app.add_subcommand("check", "re-check a certificate against an arrangement");
    check->add_option("arrangement", file)->required();
    check->add_option("certificate", second_file)->required();

    auto* construct = app.add_subcommand("construct", "certified two-pencil arrangement with exponents (d1, d2)");
    construct->add_option("d1", d1)->required();
    construct->add_option("d2", d2)->required();

    auto* extend = app.add_subcommand("extend", "bootstrap a free seed by one line toward (d1', d2')");
    extend->add_option("seed", file)->required();
    extend->add_option("d1", d1)->required();
    extend->add_option("d2", d2)->required();
    add_extension_flags(extend, f);
    add_als_flags(extend, f);

    auto* search = app.add_subcommand("search", "deterministic beam search over the candidate pool");
    search->add_option("n", n)->required();
    search->add_option("--exponents", f.exponents, "target d1,d2");
    search->add_option("--beam", f.beam, "beam width");
    search->add_option("--pool-bound", f.pool_bound, "max |coefficient| of pool lines");
    add_als_flags(search, f);

    auto* casc = app.add_subcommand("cascade", "level-by-level extension of certified seeds");
    casc->add_option("seeds", files, "seed files or directories of *.json");
    casc->add_option("--exponents", f.exponents, "target d1,d2 (repeatable; default all admissible)");
    casc->add_option("--n-max", f.n_max, "stop at this many lines");
    casc->add_option("--max-seeds", f.max_seeds, "frontier cap per level (0 = unbounded)");
    add_extension_flags(casc, f);
    add_als_flags(casc, f);

    auto* survey = app.add_subcommand("survey", "Saito functional over several realizations");
    survey->add_option("files", files)->required();
    survey->add_option("--exponents", f.exponents, "d1,d2");
    add_als_flags(survey, f);

    auto* dump = app.add_subcommand("dump-matrix", "derivation matrix as plain-text integers");
    dump->add_option("file", file)->required();
    dump->add_option("--degree", degree)->required();

    try {
        std::vector<std::string> reversed(args.rbegin(), args.rend());
        app.parse(reversed);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e, out, err);
        return code == 0 ? kSuccess : kUsageError;
    }

    CLI::App* sub = app.get_subcommands().front();
    const std::string command = sub->get_name();
    Json envelope;
    envelope["command"] = command;
    envelope["input_hash"] = nullptr;
    try {
        const Settings s = resolve(f);
        Outcome o;
        if (command == "dump-matrix") {
            if (degree < 0) throw UsageError("--degree must be nonnegative");
            derivation_matrix(load_arrangement(file), degree).write_text(out);
            return kSuccess;
        } else if (command == "construct") {
            o = cmd_construct(d1, d2, s, f.out);
        } else if (command == "search") {
            o = cmd_search(n, single_exponents(f), s, f.out);
        } else if (command == "cascade") {
            o = cmd_cascade(files, f.exponents, s, f.out);
        } else if (command == "survey") {
            o = cmd_survey(files, single_exponents(f), s);
        } else {
            const Arrangement a = load_arrangement(file);
            envelope["input_hash"] = arrangement_hash(a);
            if (command == "invariants") o = cmd_invariants(a);
            else if (command == "saito") o = cmd_saito(a, single_exponents(f), s);
            else if (command == "verify") o = cmd_verify(a, single_exponents(f), s, f.out);
            else if (command == "check") o = cmd_check(a, load_certificate(second_file));
            else if (command == "extend") o = cmd_extend(a, d1, d2, s, f.audit, f.out);
        }
        envelope["exit_code"] = o.code;
        envelope["result"] = std::move(o.result);
        out << envelope.dump(2) << '\n';
        return o.code;
    } catch (const UsageError& e) {
        err << "usage error: " << e.what() << '\n';
        return kUsageError;
    } catch (const ParseError& e) {
        err << "parse error: " << e.what() << '\n';
        return kUsageError;
    } catch (const ZeroForm& e) {
        err << "parse error: " << e.what() << '\n';
        return kUsageError;
    } catch (const DuplicateLine& e) {
        err << "parse error: " << e.what() << '\n';
        return kUsageError;
    } catch (const DegreeMismatch& e) {
        err << "usage error: " << e.what() << '\n';
        return kUsageError;
    } catch (const Error& e) {
        err << "error: " << e.what() << '\n';
        return kDomainFailure;
    } catch (const std::exception& e) {
        err << "error: " << e.what() << '\n';
        return kDomainFailure;
    }
}

}  // namespace freearr::cli
