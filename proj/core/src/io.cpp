#include "freearr/io.hpp"

#include "freearr/errors.hpp"
#include "freearr/monomial.hpp"

#include <fstream>
#include <sstream>

namespace freearr {

namespace {

Rational rational_from_json(const Json& value) {
    if (value.is_string()) return parse_rational(value.get<std::string>());
    if (value.is_number_integer()) return Rational(Integer(value.dump()));
    throw ParseError("expected an integer or a \"p/q\" string, got " + value.dump());
}

Exponent parse_key(const std::string& key, int degree) {
    Exponent e{};
    std::istringstream in(key);
    char comma1 = 0, comma2 = 0;
    if (!(in >> e[0] >> comma1 >> e[1] >> comma2 >> e[2]) || comma1 != ',' || comma2 != ',' || !in.eof()) {
        throw ParseError("bad monomial key \"" + key + "\"");
    }
    if (e[0] < 0 || e[1] < 0 || e[2] < 0 || e[0] + e[1] + e[2] != degree) {
        throw ParseError("monomial key \"" + key + "\" is not of degree " + std::to_string(degree));
    }
    return e;
}

template <class F>
auto wrap_json(F&& body) -> decltype(body()) {
    try {
        return body();
    } catch (const nlohmann::json::exception& e) {
        throw ParseError(e.what());
    }
}

}  // namespace

Arrangement arrangement_from_json(const Json& doc) {
    return wrap_json([&] {
        if (!doc.is_object() || !doc.contains("lines") || !doc.at("lines").is_array()) {
            throw ParseError("arrangement file must be an object with a \"lines\" array");
        }
        std::vector<Line> lines;
        for (const auto& entry : doc.at("lines")) {
            if (!entry.is_array() || entry.size() != 3) throw ParseError("each line needs exactly three coefficients");
            lines.push_back(
                canonicalize_line(rational_from_json(entry[0]), rational_from_json(entry[1]), rational_from_json(entry[2])));
        }
        if (lines.empty()) throw ParseError("arrangement has no lines");
        return build_arrangement(std::move(lines));
    });
}

Json arrangement_to_json(const Arrangement& arrangement) {
    Json lines = Json::array();
    for (const Line& line : arrangement.lines()) {
        lines.push_back({line.a().get_str(), line.b().get_str(), line.c().get_str()});
    }
    Json doc;
    doc["lines"] = std::move(lines);
    return doc;
}

Arrangement parse_arrangement(const std::string& text) {
    Json doc;
    try {
        doc = Json::parse(text);
    } catch (const nlohmann::json::exception& e) {
        throw ParseError(std::string("invalid JSON: ") + e.what());
    }
    return arrangement_from_json(doc);
}

Arrangement load_arrangement(const std::filesystem::path& path) { return arrangement_from_json(read_json_file(path)); }

void save_arrangement(const Arrangement& arrangement, const std::filesystem::path& path) {
    write_json_file(arrangement_to_json(arrangement), path);
}

Json form_to_json(const RationalVector& coeffs, int degree) {
    const MonomialBasis basis(degree);
    if (coeffs.size() != basis.size()) throw Error("coefficient vector does not match its degree");
    Json out = Json::object();
    for (std::size_t m = 0; m < basis.size(); ++m) {
        if (coeffs[m] != 0) out[monomial_key(basis[m])] = format_rational(coeffs[m]);
    }
    return out;
}

RationalVector form_from_json(const Json& doc, int degree) {
    return wrap_json([&] {
        if (!doc.is_object()) throw ParseError("polynomial must be an object keyed by \"i,j,k\"");
        RationalVector out(monomial_count(degree), Rational(0));
        for (const auto& [key, value] : doc.items()) out[monomial_index(parse_key(key, degree))] = rational_from_json(value);
        return out;
    });
}

Json derivation_to_json(const Derivation& theta) {
    Json out;
    out["degree"] = theta.degree;
    out["f"] = form_to_json(theta.component(0), theta.degree);
    out["g"] = form_to_json(theta.component(1), theta.degree);
    out["h"] = form_to_json(theta.component(2), theta.degree);
    return out;
}

Derivation derivation_from_json(const Json& doc) {
    return wrap_json([&] {
        Derivation theta;
        theta.degree = doc.at("degree").get<int>();
        if (theta.degree < 0) throw ParseError("negative derivation degree");
        for (const char* name : {"f", "g", "h"}) {
            const RationalVector part = form_from_json(doc.at(name), theta.degree);
            theta.coeffs.insert(theta.coeffs.end(), part.begin(), part.end());
        }
        return theta;
    });
}

Json certificate_to_json(const FreenessCertificate& cert) {
    Json out;
    out["format"] = kCertificateFormat;
    out["arrangement_hash"] = cert.arrangement_hash;
    out["exponents"] = {cert.d1, cert.d2};
    out["theta1"] = derivation_to_json(cert.theta1);
    out["theta2"] = derivation_to_json(cert.theta2);
    out["c"] = format_rational(cert.c);
    out["determinant"] = form_to_json(cert.determinant, cert.d1 + cert.d2 + 1);
    return out;
}

FreenessCertificate certificate_from_json(const Json& doc) {
    return wrap_json([&] {
        if (!doc.is_object() || doc.value("format", "") != kCertificateFormat) {
            throw ParseError(std::string("not a certificate (expected format \"") + kCertificateFormat + "\")");
        }
        FreenessCertificate cert;
        cert.arrangement_hash = doc.at("arrangement_hash").get<std::string>();
        const auto& exps = doc.at("exponents");
        if (!exps.is_array() || exps.size() != 2) throw ParseError("exponents must be a pair");
        cert.d1 = exps[0].get<int>();
        cert.d2 = exps[1].get<int>();
        cert.theta1 = derivation_from_json(doc.at("theta1"));
        cert.theta2 = derivation_from_json(doc.at("theta2"));
        cert.c = rational_from_json(doc.at("c"));
        if (doc.contains("determinant")) cert.determinant = form_from_json(doc.at("determinant"), cert.d1 + cert.d2 + 1);
        return cert;
    });
}

FreenessCertificate load_certificate(const std::filesystem::path& path) {
    return certificate_from_json(read_json_file(path));
}

void save_certificate(const FreenessCertificate& certificate, const std::filesystem::path& path) {
    write_json_file(certificate_to_json(certificate), path);
}

Json read_json_file(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) throw ParseError("cannot open " + path.string());
    try {
        return Json::parse(in);
    } catch (const nlohmann::json::exception& e) {
        throw ParseError(path.string() + ": " + e.what());
    }
}

void write_json_file(const Json& doc, const std::filesystem::path& path) {
    if (path.has_parent_path()) std::filesystem::create_directories(path.parent_path());
    std::ofstream out(path);
    if (!out) throw Error("cannot write " + path.string());
    out << doc.dump(2) << '\n';
}

}  // namespace freearr
